"""Squeezing-assisted microwave-optical transduction: channel model and capacity bounds."""

from .capacity import Branch, CapacityResult, g_func, q_lb, q_lb_loss_amp, q_lb_rdp
from .channel import (
    ChannelDescriptor,
    ChannelKind,
    NoiseCoefficients,
    PortOccupations,
    SpecialChannel,
    SqueezerPair,
    added_noise,
    classify,
    compose,
    describe,
    g_pure_amp,
    g_pure_loss,
    gain_from_db,
    gprime_pure_amp,
    gprime_pure_loss,
    quadrature_noise,
    rdp_sigma2,
)
from .errors import (
    BranchError,
    ConfigError,
    ContractError,
    DomainError,
    NumericalError,
    TransducerError,
)
from .oracle import oracle_capacity, oracle_channel
from .physics import (
    CONSTANTS,
    EOParams,
    TransferCoefficients,
    cooperativity_for_eta,
    derived_quantities,
    eta_resonant,
    kappa_p_resonant,
    thermal_occupation,
    transfer_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "Branch", "CapacityResult", "g_func", "q_lb", "q_lb_loss_amp", "q_lb_rdp",
    "ChannelDescriptor", "ChannelKind", "NoiseCoefficients", "PortOccupations",
    "SpecialChannel", "SqueezerPair", "added_noise", "classify", "compose", "describe",
    "g_pure_amp", "g_pure_loss", "gain_from_db", "gprime_pure_amp", "gprime_pure_loss",
    "quadrature_noise", "rdp_sigma2",
    "BranchError", "ConfigError", "ContractError", "DomainError", "NumericalError", "TransducerError",
    "oracle_capacity", "oracle_channel",
    "CONSTANTS", "EOParams", "TransferCoefficients", "cooperativity_for_eta", "derived_quantities",
    "eta_resonant", "kappa_p_resonant", "thermal_occupation", "transfer_coefficients",
]
