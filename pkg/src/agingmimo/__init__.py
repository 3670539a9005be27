"""Root directory for agingmimo.

Channel aging under non-isotropic scattering in multi-cell massive MIMO vehicular
networks: space-time correlation, aged channel estimation, MR/MMSE combining and
block length optimization.

isort:skip_file

"""

from agingmimo.utils.errors import *
from agingmimo.utils import constants
from agingmimo.utils.special import *
from agingmimo.utils.linalg import *
from agingmimo.utils import linalg
from agingmimo.utils import quadrature
from agingmimo.utils.seeding import *
from agingmimo.utils import seeding
from agingmimo.correlation.vonmises import *
from agingmimo.correlation.stcc import *
from agingmimo.correlation.legacy import *
from agingmimo.channel.largescale import *
from agingmimo.channel.aging import *
from agingmimo.training.pilots import *
from agingmimo.training.estimation import *
from agingmimo.training.nmse import *
from agingmimo.receiver.combining import *
from agingmimo.receiver.spectralefficiency import *
from agingmimo.scenarios.layout import *
from agingmimo.scenarios.drop import *
from agingmimo.sweep.points import *
from agingmimo.sweep.ase import *
from agingmimo.sweep.models import *
from agingmimo.sweep.coherence import *
