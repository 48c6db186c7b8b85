"""Brute-force validator for the closed-form channel model.

Transfer amplitudes come from a numerical solve of the frequency-domain
Langevin system ``V = M1 V + M2 V_in + M3 V_i``.  Squeezers are applied as
Bogoliubov maps on explicit coefficient vectors: a mode is a mapping from
``(port, dagger)`` to a complex amplitude, where ``dagger`` marks a creation
operator.  Nothing here uses the closed-form expressions from
:mod:`eotransducer.physics` or :mod:`eotransducer.channel`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from .capacity import CapacityResult, q_lb
from .channel import (
    DEFAULT_RDP_TOL,
    ChannelDescriptor,
    ChannelKind,
    PortOccupations,
    SpecialChannel,
    SqueezerPair,
    classify,
)
from .errors import NumericalError
from .physics import EOParams

Term = Tuple[str, bool]
Mode = Dict[Term, complex]

PORTS = ("S_in", "P0", "A0", "E_m", "E_a")


@dataclass(frozen=True)
class SystemMatrices:
    M1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray


@dataclass(frozen=True)
class MomentSet:
    """Second moments of the composed output mode with the signal in vacuum.

    ``normal`` is the noise part of ``<out^dag out>``, ``antinormal`` the noise
    part of ``<out out^dag>``; ``quadrature`` the added quadrature variance.
    """

    signal_transfer: float
    normal: float
    antinormal: float
    quadrature: float
    port_magnitudes: Dict[Term, float] = field(default_factory=dict)

    def bogoliubov_sum(self) -> float:
        return (self.signal_transfer
                + sum(v for (_, dag), v in self.port_magnitudes.items() if not dag)
                - sum(v for (_, dag), v in self.port_magnitudes.items() if dag))


def system_matrices(params: EOParams, detuning: float) -> SystemMatrices:
    kappa_m = params.kappa_m_c + params.kappa_m_i
    kappa_a = params.kappa_a_c + params.kappa_a_i
    dm = -1j * detuning + kappa_m / 2
    da = -1j * detuning + kappa_a / 2
    M1 = np.array([[0, 1j * params.g / dm], [1j * params.g / da, 0]], dtype=complex)
    M2 = np.diag([math.sqrt(params.kappa_m_c) / dm, math.sqrt(params.kappa_a_c) / da]).astype(complex)
    M3 = np.diag([math.sqrt(params.kappa_m_i) / dm, math.sqrt(params.kappa_a_i) / da]).astype(complex)
    return SystemMatrices(M1, M2, M3)


def numeric_transfer(params: EOParams, detuning: float) -> Dict[str, complex]:
    """Amplitudes from ``S_in``, ``P_in``, ``E_m``, ``E_a`` to the microwave output."""
    mats = system_matrices(params, detuning)
    lhs = np.eye(2) - mats.M1
    # columns: P_in, S_in, E_m, E_a
    drive = np.hstack([mats.M2, mats.M3])
    try:
        modes = np.linalg.solve(lhs, drive)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular Langevin system at detuning {detuning}") from exc
    out = math.sqrt(params.kappa_m_c) * modes[0]
    out[0] -= 1.0
    return {"P_in": complex(out[0]), "S_in": complex(out[1]),
            "E_m": complex(out[2]), "E_a": complex(out[3])}


def _add(*scaled: Tuple[complex, Mode]) -> Mode:
    res: Mode = {}
    for coef, mode in scaled:
        for key, amp in mode.items():
            res[key] = res.get(key, 0j) + coef * amp
    return res


def _dagger(mode: Mode) -> Mode:
    return {(port, not dag): amp.conjugate() for (port, dag), amp in mode.items()}


def squeeze_compose_numeric(
    amplitudes: Dict[str, complex],
    squeezers: SqueezerPair,
    occupations: PortOccupations,
    phase_lock: bool = True,
) -> MomentSet:
    """Propagate the output mode through S(G), the EO scattering and S^dag(G')."""
    G, Gp = squeezers.G, squeezers.G_prime
    P0: Mode = {("P0", False): 1 + 0j}
    A0_dag: Mode = {("A0", True): 1 + 0j}
    # two-mode squeezer
    P_in = _add((math.sqrt(G), P0), (math.sqrt(G - 1), A0_dag))
    A_dag = _add((math.sqrt(G - 1), P0), (math.sqrt(G), A0_dag))
    # EO scattering into the converted output
    S_out = _add(
        (amplitudes["S_in"], {("S_in", False): 1 + 0j}),
        (amplitudes["P_in"], P_in),
        (amplitudes["E_m"], {("E_m", False): 1 + 0j}),
        (amplitudes["E_a"], {("E_a", False): 1 + 0j}),
    )
    # anti-squeezer; its phase follows the probe reflection so the two probe
    # paths interfere as on resonance
    phi = cmath.phase(amplitudes["P_in"]) if phase_lock and amplitudes["P_in"] != 0 else 0.0
    A_dag_rot = {k: cmath.exp(1j * phi) * v for k, v in A_dag.items()}
    final = _add((math.sqrt(Gp), S_out), (-math.sqrt(Gp - 1), A_dag_rot))

    occ = {"P0": occupations.N_P0, "A0": occupations.N_A0,
           "E_m": occupations.N_Em, "E_a": occupations.N_Ea}
    mags = {k: abs(v) ** 2 for k, v in final.items()}
    signal = mags.pop(("S_in", False), 0.0)
    mags.pop(("S_in", True), None)
    normal = antinormal = quadrature = 0.0
    for (port, dag), m in mags.items():
        n = occ[port]
        normal += m * (n + 1.0 if dag else n)
        antinormal += m * (n if dag else n + 1.0)
        quadrature += m * (2.0 * n + 1.0)
    return MomentSet(signal, normal, antinormal, quadrature, mags)


def channel_from_moments(moments: MomentSet, tolerance: float = DEFAULT_RDP_TOL) -> ChannelDescriptor:
    tau = moments.signal_transfer
    kind = classify(tau, tolerance)
    if kind is ChannelKind.RANDOM_DISPLACEMENT:
        return ChannelDescriptor(kind, SpecialChannel.NONE, tau, None, moments.quadrature, tolerance)
    if kind is ChannelKind.GENERALIZED_LOSS:
        N_e = moments.normal / (1.0 - tau)
    else:
        N_e = moments.antinormal / (tau - 1.0)
    return ChannelDescriptor(kind, SpecialChannel.NONE, tau, N_e, None, tolerance)


def oracle_channel(params: EOParams, detuning: float, squeezers: SqueezerPair,
                   occupations: Optional[PortOccupations] = None,
                   tolerance: float = DEFAULT_RDP_TOL) -> ChannelDescriptor:
    if occupations is None:
        occupations = PortOccupations.thermal(params)
    amps = numeric_transfer(params, detuning)
    return channel_from_moments(squeeze_compose_numeric(amps, squeezers, occupations), tolerance)


def oracle_capacity(params: EOParams, detuning: float, squeezers: SqueezerPair,
                    temperature: Optional[float] = None,
                    occupations: Optional[PortOccupations] = None,
                    tolerance: float = DEFAULT_RDP_TOL) -> CapacityResult:
    if temperature is not None:
        params = params.with_temperature(temperature)
    return q_lb(oracle_channel(params, detuning, squeezers, occupations, tolerance))
