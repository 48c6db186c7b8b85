"""Entanglement-assisted channel: squeezer, EO conversion, anti-squeezer.

A two-mode squeezer ``S(G)`` entangles a probe ``P0`` with an ancilla ``A0``;
the squeezed probe drives the EO converter and the converted output is
anti-squeezed together with the ancilla by ``S^dagger(G')``.  The final output
is

    out = s * S_in + c_P * P0 + c_A * A0^dagger + l_m * E_m + l_a * E_a

with real coefficients.  Phases of the bare transfer amplitudes are dropped:
this is the response obtained when the anti-squeezer phase is locked to the
probe reflection phase, and it leaves every single-mode Gaussian-channel
figure of merit unchanged.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import BranchError, DomainError
from .physics import EOParams, TransferCoefficients, thermal_occupation

DEFAULT_RDP_TOL = 1e-9
# |tau - 1| below this is "near the boundary"; sigma2 is filled in for diagnostics
NEAR_BOUNDARY = 1e-6
SPECIAL_TOL = 1e-9


class ChannelKind(str, enum.Enum):
    GENERALIZED_LOSS = "GeneralizedLoss"
    GENERALIZED_AMPLIFICATION = "GeneralizedAmplification"
    RANDOM_DISPLACEMENT = "RandomDisplacement"


class SpecialChannel(str, enum.Enum):
    PURE_LOSS = "PureLoss"
    THERMAL_LOSS = "ThermalLoss"
    PURE_AMPLIFICATION = "PureAmplification"
    THERMAL_AMPLIFICATION = "ThermalAmplification"
    NONE = "None"


@dataclass(frozen=True)
class SqueezerPair:
    G: float = 1.0
    G_prime: float = 1.0

    def __post_init__(self):
        if not (self.G >= 1.0 and self.G_prime >= 1.0):
            raise DomainError(f"squeezer gains must be >= 1, got G={self.G}, G'={self.G_prime}")

    @classmethod
    def from_db(cls, G_db: float, G_prime: float) -> "SqueezerPair":
        return cls(gain_from_db(G_db), G_prime)


@dataclass(frozen=True)
class PortOccupations:
    """Mean photon numbers of the probe, ancilla and both loss baths."""

    N_P0: float = 0.0
    N_A0: float = 0.0
    N_Em: float = 0.0
    N_Ea: float = 0.0

    def __post_init__(self):
        if min(self.N_P0, self.N_A0, self.N_Em, self.N_Ea) < 0:
            raise DomainError("occupations must be non-negative")

    @classmethod
    def thermal(cls, params: EOParams, thermal_probe: bool = False) -> "PortOccupations":
        """Loss baths at the device temperature; probe and ancilla in vacuum.

        With ``thermal_probe`` the probe and ancilla carry the microwave bath
        occupation as well.
        """
        return cls.at_temperature(params.temperature, params.omega_m, params.omega_o, thermal_probe)

    @classmethod
    def at_temperature(cls, temperature, omega_m, omega_o, thermal_probe=False) -> "PortOccupations":
        N_m = thermal_occupation(omega_m, temperature)
        N_a = thermal_occupation(omega_o, temperature)
        N_probe = N_m if thermal_probe else 0.0
        return cls(N_P0=N_probe, N_A0=N_probe, N_Em=N_m, N_Ea=N_a)


@dataclass(frozen=True)
class NoiseCoefficients:
    s: float
    c_P: float
    c_A: float
    l_m: float
    l_a: float

    @property
    def tau(self) -> float:
        return self.s**2

    def commutator_residual(self) -> float:
        """``c_P^2 - c_A^2 + l_m^2 + l_a^2 - (1 - tau)``; zero for a valid map."""
        return self.c_P**2 - self.c_A**2 + self.l_m**2 + self.l_a**2 - (1.0 - self.tau)


@dataclass(frozen=True)
class ChannelDescriptor:
    kind: ChannelKind
    special: SpecialChannel
    tau: float
    N_e: Optional[float]
    sigma2: Optional[float]
    tolerance: float = DEFAULT_RDP_TOL


def gain_from_db(value_db: float) -> float:
    if value_db < 0:
        raise DomainError(f"squeezing in dB must be >= 0, got {value_db}")
    return 10.0 ** (value_db / 10.0)


def compose(transfer: TransferCoefficients, squeezers: SqueezerPair) -> NoiseCoefficients:
    G, Gp = squeezers.G, squeezers.G_prime
    kP = transfer.kappa_P
    return NoiseCoefficients(
        s=math.sqrt(transfer.eta * Gp),
        c_P=math.sqrt(G * Gp * kP) - math.sqrt((G - 1.0) * (Gp - 1.0)),
        c_A=math.sqrt((G - 1.0) * Gp * kP) - math.sqrt(G * (Gp - 1.0)),
        l_m=math.sqrt(transfer.kappa_Em * Gp),
        l_a=math.sqrt(transfer.kappa_Ea * Gp),
    )


def classify(tau: float, tolerance: float = DEFAULT_RDP_TOL) -> ChannelKind:
    if abs(tau - 1.0) <= tolerance:
        return ChannelKind.RANDOM_DISPLACEMENT
    if tau < 1.0:
        return ChannelKind.GENERALIZED_LOSS
    return ChannelKind.GENERALIZED_AMPLIFICATION


def added_noise(coeffs: NoiseCoefficients, occupations: PortOccupations,
                tolerance: float = DEFAULT_RDP_TOL) -> float:
    """Occupation of the effective environment mode of a GL or GA channel.

    GL: ``out = sqrt(tau) S + sqrt(1 - tau) e`` and ``N_e = <e^dag e>``.
    GA: ``out = sqrt(tau) S + sqrt(tau - 1) e^dag``, again ``N_e = <e^dag e>``,
    which for the amplifier is the anti-normally ordered noise moment divided
    by ``tau - 1``.
    """
    tau = coeffs.tau
    if abs(tau - 1.0) <= tolerance:
        raise BranchError(f"tau={tau!r} is on the RDP locus; use rdp_sigma2")
    o = occupations
    cP2, cA2, lm2, la2 = coeffs.c_P**2, coeffs.c_A**2, coeffs.l_m**2, coeffs.l_a**2
    if tau < 1.0:
        normal = cP2 * o.N_P0 + cA2 * (o.N_A0 + 1.0) + lm2 * o.N_Em + la2 * o.N_Ea
        return normal / (1.0 - tau)
    anti = cP2 * (o.N_P0 + 1.0) + cA2 * o.N_A0 + lm2 * (o.N_Em + 1.0) + la2 * (o.N_Ea + 1.0)
    return anti / (tau - 1.0)


def quadrature_noise(coeffs: NoiseCoefficients, occupations: PortOccupations) -> float:
    """Added quadrature variance in shot-noise units (vacuum variance = 1)."""
    o = occupations
    return (
        coeffs.c_P**2 * (2.0 * o.N_P0 + 1.0)
        + coeffs.c_A**2 * (2.0 * o.N_A0 + 1.0)
        + coeffs.l_m**2 * (2.0 * o.N_Em + 1.0)
        + coeffs.l_a**2 * (2.0 * o.N_Ea + 1.0)
    )


def rdp_sigma2(coeffs: NoiseCoefficients, occupations: PortOccupations,
               tolerance: float = DEFAULT_RDP_TOL) -> float:
    """Displacement-noise variance of the random displacement channel.

    Measured in shot-noise units, i.e. twice the added photon number.  This is
    the normalisation for which ``log2(2 / (e sigma2))`` is the common limit of
    the loss and amplifier capacity bounds as ``tau -> 1``.
    """
    if abs(coeffs.tau - 1.0) > tolerance:
        raise BranchError(f"tau={coeffs.tau!r} is not on the RDP locus")
    return quadrature_noise(coeffs, occupations)


def gprime_pure_loss(G: float, kappa_P: float) -> float:
    """Anti-squeezer gain that removes the ancilla from the output."""
    if G < 1.0 or not 0.0 <= kappa_P <= 1.0:
        raise DomainError(f"need G >= 1 and kappa_P in [0, 1], got G={G}, kappa_P={kappa_P}")
    den = G * (1.0 - kappa_P) + kappa_P
    if den <= 0:
        raise DomainError("pure-loss condition has a non-positive denominator")
    return G / den


def gprime_pure_amp(G: float, kappa_P: float) -> float:
    """Anti-squeezer gain that removes the probe from the output."""
    den = G * (1.0 - kappa_P) - 1.0
    if not den > 0:
        raise DomainError(f"pure-amplification condition unreachable: G(1-kappa_P) = {G * (1 - kappa_P)} <= 1")
    return (G - 1.0) / den


def g_pure_loss(G_prime: float, kappa_P: float) -> Optional[float]:
    """Squeezer gain G that makes ``G_prime`` the pure-loss setting, if any."""
    den = 1.0 - G_prime * (1.0 - kappa_P)
    if den <= 0:
        return None
    G = G_prime * kappa_P / den
    return G if G >= 1.0 else None


def g_pure_amp(G_prime: float, kappa_P: float) -> Optional[float]:
    """Squeezer gain G that makes ``G_prime`` the pure-amplification setting, if any."""
    den = G_prime * (1.0 - kappa_P) - 1.0
    if den <= 0:
        return None
    G = (G_prime - 1.0) / den
    return G if G >= 1.0 else None


def describe(coeffs: NoiseCoefficients, occupations: PortOccupations,
             tolerance: float = DEFAULT_RDP_TOL) -> ChannelDescriptor:
    tau = coeffs.tau
    kind = classify(tau, tolerance)
    if kind is ChannelKind.RANDOM_DISPLACEMENT:
        return ChannelDescriptor(kind, SpecialChannel.NONE, tau, None,
                                 rdp_sigma2(coeffs, occupations, tolerance), tolerance)
    N_e = added_noise(coeffs, occupations, tolerance)
    sigma2 = quadrature_noise(coeffs, occupations) if abs(tau - 1.0) < NEAR_BOUNDARY else None
    special = SpecialChannel.NONE
    if kind is ChannelKind.GENERALIZED_LOSS and abs(coeffs.c_A) <= SPECIAL_TOL:
        o = occupations
        pure = (o.N_P0 == 0.0 and (coeffs.l_m == 0.0 or o.N_Em == 0.0)
                and (coeffs.l_a == 0.0 or o.N_Ea == 0.0))
        special = SpecialChannel.PURE_LOSS if pure else SpecialChannel.THERMAL_LOSS
    elif kind is ChannelKind.GENERALIZED_AMPLIFICATION and abs(coeffs.c_P) <= SPECIAL_TOL:
        pure = occupations.N_A0 == 0.0 and coeffs.l_m == 0.0 and coeffs.l_a == 0.0
        special = SpecialChannel.PURE_AMPLIFICATION if pure else SpecialChannel.THERMAL_AMPLIFICATION
    return ChannelDescriptor(kind, special, tau, N_e, sigma2, tolerance)
