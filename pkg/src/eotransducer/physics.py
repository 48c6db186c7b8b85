"""Steady-state frequency response of a bare cavity electro-optic transducer.

The microwave mode ``m`` and optical mode ``a`` exchange excitations through a
beam-splitter coupling of strength ``g``.  Solving the Langevin equations in
the frequency domain gives the converted microwave output as a linear
combination of four input ports::

    out = t_S * S_in + t_P * P_in + t_Em * E_m + t_Ea * E_a

where ``S_in`` is the optical signal, ``P_in`` the microwave probe and
``E_m``/``E_a`` the intrinsic-loss baths of the two modes.  All frequencies are
angular (rad/s).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """Exact SI (2019 redefinition) values; both are fixed by definition."""

    hbar: float = 1.054571817e-34  # J s
    k_B: float = 1.380649e-23  # J / K


CONSTANTS = PhysicalConstants()

# Reference frequencies used when nothing else is configured.
DEFAULT_OMEGA_M = TWO_PI * 10e9
DEFAULT_OMEGA_O = TWO_PI * 300e12


@dataclass(frozen=True)
class EOParams:
    """Physical parameters of the electro-optic system.

    Rates are angular (rad/s); ``temperature`` is the bath temperature in K.
    """

    g: float
    kappa_m_c: float
    kappa_m_i: float
    kappa_a_c: float
    kappa_a_i: float
    omega_m: float = DEFAULT_OMEGA_M
    omega_o: float = DEFAULT_OMEGA_O
    temperature: float = 0.0

    def __post_init__(self):
        rates = (self.g, self.kappa_m_c, self.kappa_m_i, self.kappa_a_c, self.kappa_a_i)
        if any(not math.isfinite(r) or r < 0 for r in rates):
            raise DomainError(f"rates must be finite and non-negative, got {rates}")
        if self.kappa_m_c + self.kappa_m_i <= 0 or self.kappa_a_c + self.kappa_a_i <= 0:
            raise DomainError("total loss rate of each mode must be positive")
        if self.omega_m <= 0 or self.omega_o <= 0:
            raise DomainError("resonance frequencies must be positive")
        if not self.temperature >= 0:
            raise DomainError(f"temperature must be >= 0, got {self.temperature}")

    @classmethod
    def from_dimensionless(
        cls,
        cooperativity: float,
        zeta_m: float,
        zeta_a: float,
        kappa: float = TWO_PI * 1e6,
        omega_m: float = DEFAULT_OMEGA_M,
        omega_o: float = DEFAULT_OMEGA_O,
        temperature: float = 0.0,
    ) -> "EOParams":
        """Build parameters with ``kappa_m = kappa_a = kappa``."""
        if cooperativity < 0:
            raise DomainError("cooperativity must be >= 0")
        for z in (zeta_m, zeta_a):
            if not 0.0 <= z <= 1.0:
                raise DomainError(f"coupling ratio {z} outside [0, 1]")
        return cls(
            g=0.5 * kappa * math.sqrt(cooperativity),
            kappa_m_c=zeta_m * kappa,
            kappa_m_i=(1.0 - zeta_m) * kappa,
            kappa_a_c=zeta_a * kappa,
            kappa_a_i=(1.0 - zeta_a) * kappa,
            omega_m=omega_m,
            omega_o=omega_o,
            temperature=temperature,
        )

    def with_temperature(self, temperature: float) -> "EOParams":
        return EOParams(
            self.g, self.kappa_m_c, self.kappa_m_i, self.kappa_a_c, self.kappa_a_i,
            self.omega_m, self.omega_o, temperature,
        )


@dataclass(frozen=True)
class DerivedEOQuantities:
    kappa_m: float
    kappa_a: float
    C_g: float
    zeta_m: float
    zeta_a: float
    N_m: float
    N_a: float


@dataclass(frozen=True)
class TransferCoefficients:
    """Scattering amplitudes into the converted output at one detuning.

    ``eta``, ``kappa_P``, ``kappa_Em`` and ``kappa_Ea`` are the squared
    magnitudes of the corresponding amplitudes and sum to one.
    """

    detuning: float
    t_S: complex
    t_P: complex
    t_Em: complex
    t_Ea: complex
    eta: float
    kappa_P: float
    kappa_Em: float
    kappa_Ea: float

    @property
    def kappa_E(self) -> float:
        return self.kappa_Em + self.kappa_Ea

    @classmethod
    def from_amplitudes(cls, detuning, t_S, t_P, t_Em, t_Ea) -> "TransferCoefficients":
        return cls(
            detuning, t_S, t_P, t_Em, t_Ea,
            abs(t_S) ** 2, abs(t_P) ** 2, abs(t_Em) ** 2, abs(t_Ea) ** 2,
        )

    @classmethod
    def resonant(cls, eta: float, zeta_m: float = 1.0, zeta_a: float = 1.0) -> "TransferCoefficients":
        """On-resonance coefficients for a prescribed efficiency.

        The cooperativity is taken as the smaller root of
        ``4 C zeta_m zeta_a / (1 + C)^2 = eta`` (under-coupled side).  ``eta``
        is stored exactly as given and ``kappa_P`` closes the row sum, so with
        ``zeta = 1`` one gets ``kappa_P == 1 - eta`` bit for bit.
        """
        C = cooperativity_for_eta(eta, zeta_m, zeta_a)
        # probe amplitude on resonance: 2 zeta_m / (1 + C) - 1, real
        t_P = 2.0 * zeta_m / (1.0 + C) - 1.0
        t_Em = 2.0 * math.sqrt(zeta_m * (1.0 - zeta_m)) / (1.0 + C)
        amp_Ea = 2.0 * math.sqrt(C * zeta_m * (1.0 - zeta_a)) / (1.0 + C)
        kappa_Em = t_Em**2
        kappa_Ea = amp_Ea**2
        kappa_P = 1.0 - eta - kappa_Em - kappa_Ea
        return cls(
            0.0, 1j * math.sqrt(eta), complex(t_P), complex(t_Em), 1j * amp_Ea,
            eta, kappa_P, kappa_Em, kappa_Ea,
        )


def thermal_occupation(frequency: float, temperature: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Bose-Einstein occupation of a mode at angular ``frequency`` (rad/s)."""
    if not frequency > 0:
        raise DomainError(f"frequency must be positive, got {frequency}")
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 0.0
    x = constants.hbar * frequency / (constants.k_B * temperature)
    if x > 50.0:
        # 1/expm1(x) == exp(-x) to double precision here; avoids overflow
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def derived_quantities(params: EOParams) -> DerivedEOQuantities:
    kappa_m = params.kappa_m_c + params.kappa_m_i
    kappa_a = params.kappa_a_c + params.kappa_a_i
    if kappa_m <= 0 or kappa_a <= 0:
        raise DomainError("zero total loss rate")
    return DerivedEOQuantities(
        kappa_m=kappa_m,
        kappa_a=kappa_a,
        C_g=4.0 * params.g**2 / (kappa_m * kappa_a),
        zeta_m=params.kappa_m_c / kappa_m,
        zeta_a=params.kappa_a_c / kappa_a,
        N_m=thermal_occupation(params.omega_m, params.temperature),
        N_a=thermal_occupation(params.omega_o, params.temperature),
    )


def transfer_coefficients(params: EOParams, detuning: float) -> TransferCoefficients:
    """Closed-form amplitudes from every input port to the converted output."""
    kappa_m = params.kappa_m_c + params.kappa_m_i
    kappa_a = params.kappa_a_c + params.kappa_a_i
    A = complex(kappa_m / 2.0, -detuning)
    B = complex(kappa_a / 2.0, -detuning)
    D = A * B + params.g**2
    g = params.g
    t_S = 1j * g * math.sqrt(params.kappa_m_c * params.kappa_a_c) / D
    t_P = params.kappa_m_c * B / D - 1.0
    t_Em = math.sqrt(params.kappa_m_c * params.kappa_m_i) * B / D
    t_Ea = 1j * g * math.sqrt(params.kappa_m_c * params.kappa_a_i) / D
    return TransferCoefficients.from_amplitudes(detuning, t_S, t_P, t_Em, t_Ea)


def kappa_p_explicit(params: EOParams, detuning: float) -> float:
    """Probe reflectivity written as a single rational function of ``detuning``."""
    kappa_m = params.kappa_m_c + params.kappa_m_i
    kappa_a = params.kappa_a_c + params.kappa_a_i
    w = detuning
    num = complex(
        w**2 + params.kappa_m_c * kappa_a / 2.0 - kappa_m * kappa_a / 4.0 - params.g**2,
        ((kappa_m + kappa_a) / 2.0 - params.kappa_m_c) * w,
    )
    den =complex(kappa_m / 2.0, -w) * complex(kappa_a / 2.0, -w) + params.g**2
    return abs(num / den) ** 2


def eta_resonant(C_g: float, zeta_m: float, zeta_a: float) -> float:
    return 4.0 * C_g / (1.0 + C_g) ** 2 * zeta_m * zeta_a


def kappa_p_resonant(C_g: float, zeta_m: float) -> float:
    return (2.0 * zeta_m / (1.0 + C_g) - 1.0) ** 2


def cooperativity_for_eta(eta: float, zeta_m: float = 1.0, zeta_a: float = 1.0) -> float:
    """Smaller cooperativity root of ``eta_resonant(C, zeta_m, zeta_a) == eta``."""
    zz = zeta_m * zeta_a
    if not 0.0 <= eta <= zz:
        raise DomainError(f"eta={eta} unreachable with zeta_m*zeta_a={zz}")
    if eta == 0.0:
        return 0.0
    r = eta / zz  # 4C/(1+C)^2 = r  ->  C^2 + (2 - 4/r) C + 1 = 0
    b = 4.0 / r - 2.0
    disc = max(b * b - 4.0, 0.0)
    # product of roots is 1; take the small one without cancellation
    return 2.0 / (b + math.sqrt(disc))
