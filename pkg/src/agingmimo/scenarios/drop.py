"""Random network drops: VUE placement, association, pilots and link statistics.

A drop fixes everything that stays constant over many channel realizations:
positions and directions of the VUEs, shadowing, serving BSs, pilots, as well as
the spatial correlation matrices of all VUE-BS links. Channel realizations and
training noise are drawn per realization.

Link quantities are indexed [l, k] (BS first).

"""

from __future__ import annotations

import copy
from typing import Literal, Optional
from warnings import warn

import numpy as np

import agingmimo


def _lane_positions(
    length: float, density: float, v: float, rng: np.random.Generator
) -> np.ndarray:
    """Arc lengths of vehicles on a circular lane with a minimum time headway."""
    min_gap = agingmimo.constants.MIN_HEADWAY_SECONDS * v
    mean_gap = 1.0 / density
    if min_gap > mean_gap:
        raise agingmimo.InfeasibleDensity(
            f"Minimum headway {min_gap:.1f} m exceeds mean headway {mean_gap:.1f} m."
        )
    positions = [0.0]
    s = min_gap + rng.exponential(mean_gap - min_gap)
    while s <= length - min_gap:
        positions.append(s)
        s += min_gap + rng.exponential(mean_gap - min_gap)
    return np.mod(np.array(positions) + rng.uniform(0.0, length), length)


def drop_vues(
    layout: agingmimo.NetworkLayout,
    density: float,
    v: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Place VUEs on all lanes.

    Headways are 2.5 v plus an exponential variable, such that the mean headway is
    1 / density.

    Args:
        layout (NetworkLayout): layout
        density (float): vehicles per m and lane
        v (float): speed in m/s
        rng (np.random.Generator): generator

    Returns:
        tuple: positions (K, 3), directions of travel (K,), lane indices (K,)

    Raises:
        InfeasibleDensity: if 2.5 v exceeds 1 / density

    """
    if not density > 0:
        raise agingmimo.ConfigError(f"Density must be positive, got {density}.")
    if not v >= 0:
        raise agingmimo.DomainError(f"Speed must be non-negative, got {v}.")

    positions, gammas, lane_ids = [], [], []
    for i, lane in enumerate(layout.lanes):
        s = _lane_positions(lane.length, density, v, rng)
        positions.append(lane.position(s))
        gammas.append(np.full(s.size, lane.gamma))
        lane_ids.append(np.full(s.size, i))

    horizontal = np.concatenate(positions) if positions else np.zeros((0, 2))
    heights = np.full((horizontal.shape[0], 1), agingmimo.constants.VUE_HEIGHT)
    return (
        np.hstack([horizontal, heights]),
        np.concatenate(gammas),
        np.concatenate(lane_ids).astype(int),
    )


def associate(gain_db: np.ndarray) -> np.ndarray:
    """Serving BS of each VUE, maximizing the gain including shadowing.

    Args:
        gain_db (np.ndarray): gains with shape (L, K)

    Returns:
        np.ndarray: BS index per VUE; ties go to the lowest index

    """
    return np.argmax(gain_db, axis=0)


class NetworkDrop:
    """Statistics of one network drop."""

    def __init__(
        self,
        layout: agingmimo.NetworkLayout,
        array: agingmimo.ArrayGeometry,
        vue_positions: np.ndarray,
        vue_gamma: np.ndarray,
        shadow_db: np.ndarray,
        pilots: agingmimo.PilotAssignment,
        kappa_T: float,
        kappa_R: float,
        v: float,
        Ts: float,
        power: float,
        noise_power: float,
        R0: np.ndarray,
        lane_ids: Optional[np.ndarray] = None,
        non_aging: bool = False,
        legacy: bool = False,
    ) -> None:
        # ! ---- Geometry

        self.layout = layout
        """NetworkLayout: deployment."""

        self.array = array
        """ArrayGeometry: BS array and carrier."""

        self.vue_positions = vue_positions
        """np.ndarray: VUE positions, shape (K, 3)."""

        self.vue_gamma = vue_gamma
        """np.ndarray: directions of travel, shape (K,)."""

        self.lane_ids = (
            np.zeros(vue_gamma.size, dtype=int) if lane_ids is None else lane_ids
        )
        """np.ndarray: lane of each VUE."""

        self.v = float(v)
        """float: speed of all VUEs in m/s."""

        bs = layout.bs_positions[:, None, :]
        vue = vue_positions[None, :, :]
        self.distance = agingmimo.wrap_distance(layout, bs, vue)
        """np.ndarray: 3D distances, shape (L, K)."""

        phi_c, theta_c = agingmimo.central_angles(bs, vue, layout)

        self.phi_c = phi_c
        """np.ndarray: mean AoD of all links, shape (L, K)."""

        self.theta_c = theta_c
        """np.ndarray: mean AoA of all links, shape (L, K)."""

        # ! ---- Large-scale fading and association

        self.shadow_db = shadow_db
        """np.ndarray: shadowing in dB, shape (L, K)."""

        self.gain_db = agingmimo.gain_db(self.distance, shadow_db)
        """np.ndarray: gains in dB, shape (L, K)."""

        self.gain = agingmimo.db_to_linear(self.gain_db)
        """np.ndarray: linear gains, shape (L, K)."""

        self.serving = associate(self.gain_db)
        """np.ndarray: serving BS per VUE."""

        # ! ---- Training and transmission

        self.pilots = pilots
        """PilotAssignment: pilots of the VUEs."""

        self.Ts = float(Ts)
        """float: symbol period in s."""

        self.powers = np.full(self.K, float(power))
        """np.ndarray: transmit powers in W."""

        self.noise_power = float(noise_power)
        """float: noise variance in W."""

        # ! ---- Correlation

        self.kappa_T = float(kappa_T)
        """float: AoD concentration."""

        self.kappa_R = float(kappa_R)
        """float: AoA concentration."""

        self.R0 = R0
        """np.ndarray: spatial correlation matrices, shape (L, K, M, M)."""

        self.sqrt_R0 = agingmimo.hermitian_psd_sqrt(R0)
        """np.ndarray: Hermitian square roots of R0."""

        self.non_aging = non_aging
        """bool: flag replacing the temporal correlation by one."""

        self.legacy = legacy
        """bool: flag for the legacy temporal correlation (motion along gamma = 0)."""

        self.h0: Optional[np.ndarray] = None
        """np.ndarray, optional: channels at the training reference, shape (L, K, M)."""

    @property
    def K(self) -> int:
        return self.vue_positions.shape[0]

    @property
    def L(self) -> int:
        return self.layout.L

    @property
    def M(self) -> int:
        return self.array.M

    @property
    def T(self) -> int:
        return self.pilots.T

    def covariances(self) -> np.ndarray:
        """Channel covariances G R_0 of all links, shape (L, K, M, M)."""
        return self.gain[..., None, None] * self.R0

    def profile(self, k: int, l: int) -> agingmimo.AngularProfile:
        """Angular statistics of the link between VUE k and BS l."""
        return agingmimo.AngularProfile(
            self.kappa_T,
            self.kappa_R,
            self.phi_c[l, k],
            self.theta_c[l, k],
            gamma=0.0 if self.legacy else self.vue_gamma[k],
            alpha=self.layout.bs_orientation[l],
        )

    def temporal_correlation(self, symbols: np.ndarray) -> np.ndarray:
        """rho_{l,k}[n] for the given symbol indices, shape (L, K, len(symbols))."""
        symbols = np.asarray(symbols)
        if self.non_aging:
            return np.ones((self.L, self.K, symbols.size), dtype=complex)
        gamma = np.zeros(self.K) if self.legacy else self.vue_gamma
        a = agingmimo.doppler_argument(self.v, self.array, self.Ts * symbols)
        offset = gamma[None, :] - self.phi_c
        rho = agingmimo.von_mises_characteristic(
            self.kappa_T, a[None, None, :], offset[..., None]
        )
        return np.broadcast_to(rho, (self.L, self.K, symbols.size)).astype(complex)

    def link(self, k: int, l: int, C: Optional[int] = None) -> agingmimo.LinkState:
        """LinkState of VUE k at BS l, with temporal correlation over C symbols.

        Args:
            k (int): VUE index
            l (int): BS index
            C (int, optional): number of symbols, defaults to T + 1

        Returns:
            LinkState: link, carrying h[0] if a realization has been drawn

        """
        C = self.T + 1 if C is None else C
        rho = self.temporal_correlation(np.arange(C))[l, k]
        return agingmimo.LinkState(
            self.profile(k, l),
            agingmimo.LargeScale(self.distance[l, k], self.shadow_db[l, k]),
            agingmimo.SpatialMatrix(self.R0[l, k]),
            rho,
            None if self.h0 is None else self.h0[l, k],
            np.sqrt(self.gain[l, k]) * self.sqrt_R0[l, k],
        )

    def nmse(self, k: int, n: int) -> tuple[float, float]:
        """NMSE of VUE k at its serving BS at data symbol n, and its bound.

        Args:
            k (int): VUE index
            n (int): data symbol index

        Returns:
            tuple: NMSE with pilot contamination and the contamination-free bound

        """
        l = int(self.serving[k])
        rho_n = self.temporal_correlation(np.array([n]))[l, k, 0]

        def snr(j: int) -> float:
            return agingmimo.training_snr(
                self.powers[j], self.T, self.gain[l, j], self.noise_power
            )

        contaminators = [(snr(j), self.R0[l, j]) for j in self.pilots.contaminators(k)]
        return (
            agingmimo.nmse(rho_n, snr(k), self.R0[l, k], contaminators),
            agingmimo.nmse_npc_bound(rho_n, snr(k), self.R0[l, k]),
        )

    def draw_channels(self, seeds: agingmimo.SeedTree, key: tuple) -> np.ndarray:
        """Channels h[0] of all links; link (k, l) draws from (STAGE_CHANNEL, *key, l, k).

        Args:
            seeds (SeedTree): seed tree
            key (tuple): prefix identifying drop and realization

        Returns:
            np.ndarray: channels with shape (L, K, M)

        """
        h0 = np.zeros((self.L, self.K, self.M), dtype=complex)
        for l in range(self.L):
            for k in range(self.K):
                rng = seeds.rng(agingmimo.seeding.STAGE_CHANNEL, *key, l, k)
                w = agingmimo.complex_normal(rng, self.M)
                h0[l, k] = np.sqrt(self.gain[l, k]) * (self.sqrt_R0[l, k] @ w)
        return h0

    def realize(self, seeds: agingmimo.SeedTree, key: tuple) -> NetworkDrop:
        """Shallow copy of the drop carrying a fresh channel realization."""
        realization = copy.copy(self)
        realization.h0 = self.draw_channels(seeds, key)
        return realization

    def to_dict(self) -> dict:
        """Layout and drop summary suitable for JSON output."""
        return {
            "layout": self.layout.to_dict(),
            "vues": [
                {
                    "id": k,
                    "position": self.vue_positions[k].tolist(),
                    "gamma": float(self.vue_gamma[k]),
                    "lane": int(self.lane_ids[k]),
                    "serving_bs": int(self.serving[k]),
                    "pilot": int(self.pilots.pilot_of[k]),
                    "gain_db": self.gain_db[:, k].tolist(),
                }
                for k in range(self.K)
            ],
        }


def generate_drop(
    layout: agingmimo.NetworkLayout,
    array: agingmimo.ArrayGeometry,
    sigma_T_deg: float,
    sigma_R_deg: float,
    v: float,
    density: float,
    rng: np.random.Generator,
    Ts: float = agingmimo.constants.SYMBOL_PERIOD,
    T: int = agingmimo.constants.PILOT_LENGTH,
    power: float = agingmimo.constants.TRANSMIT_POWER,
    noise_power: float = 1e-16,
    correlation_model: Literal["vonmises", "legacy"] = "vonmises",
    non_aging: bool = False,
) -> NetworkDrop:
    """Random drop of a scenario.

    VUE positions, shadowing and pilots are drawn from rng in this order.

    Args:
        layout (NetworkLayout): layout
        array (ArrayGeometry): BS array and carrier
        sigma_T_deg (float): AoD spread in degrees
        sigma_R_deg (float): AoA spread in degrees (window half-width for the
            legacy model)
        v (float): speed in m/s
        density (float): vehicles per m and lane
        rng (np.random.Generator): generator
        Ts (float): symbol period in s
        T (int): number of pilots
        power (float): transmit power in W
        noise_power (float): noise variance in W
        correlation_model (str): "vonmises" or "legacy"
        non_aging (bool): flag replacing the temporal correlation by one

    Returns:
        NetworkDrop: drop

    """
    positions, gammas, lane_ids = drop_vues(layout, density, v, rng)
    K = positions.shape[0]
    if K == 0:
        warn("Drop without any VUE.")

    shadow_db = agingmimo.draw_shadowing(rng, (layout.L, K))
    pilots = agingmimo.assign_pilots(K, T, rng)

    bs = layout.bs_positions[:, None, :]
    _, theta_c = agingmimo.central_angles(bs, positions[None, :, :], layout)
    alpha = layout.bs_orientation[:, None]
    if correlation_model == "vonmises":
        R0 = agingmimo.spatial_matrices(
            agingmimo.sigma_to_kappa(sigma_R_deg), theta_c, alpha, array
        )
    elif correlation_model == "legacy":
        R0 = agingmimo.legacy_spatial_matrices(theta_c, sigma_R_deg, array)
    else:
        raise agingmimo.ConfigError(f"Unknown correlation model {correlation_model}.")

    return NetworkDrop(
        layout,
        array,
        positions,
        gammas,
        shadow_db,
        pilots,
        agingmimo.sigma_to_kappa(sigma_T_deg),
        agingmimo.sigma_to_kappa(sigma_R_deg),
        v,
        Ts,
        power,
        noise_power,
        R0,
        lane_ids=lane_ids,
        non_aging=non_aging,
        legacy=correlation_model == "legacy",
    )


def layout_dump(drop: NetworkDrop) -> dict:
    """JSON-serializable description of layout, VUEs and associations."""
    return drop.to_dict()
