"""Quantum-capacity lower bounds for single-mode Gaussian channels."""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

from .channel import NEAR_BOUNDARY, ChannelDescriptor, ChannelKind
from .errors import BranchError, ContractError, DomainError

logger = logging.getLogger(__name__)

LOG2E = math.log2(math.e)
# disagreement (bits) between a branch formula and the RDP limit that triggers a warning
CONTINUITY_WARN_BITS = 1e-3


class Branch(str, enum.Enum):
    LOSS = "Loss"
    AMPLIFICATION = "Amplification"
    RDP = "RDP"


@dataclass(frozen=True)
class CapacityResult:
    """Clamped lower bound ``q_lb`` and the unclamped value ``raw``."""

    q_lb: float
    branch: Branch
    clamped: bool
    raw: float


def _result(raw: float, branch: Branch) -> CapacityResult:
    if raw > 0:
        return CapacityResult(raw, branch, False, raw)
    return CapacityResult(0.0, branch, raw < 0, raw)


def g_func(n: float) -> float:
    """Entropy (bits) of a thermal state with mean photon number ``n``."""
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    if n == 0:
        return 0.0
    if n < 1e-12:
        # (n+1)log2(n+1) - n log2 n = n (log2 e - log2 n) + O(n^2)
        return n * (LOG2E - math.log2(n))
    return (n + 1.0) * math.log2(n + 1.0) - n * math.log2(n)


def q_lb_loss_amp(tau: float, N_e: float) -> CapacityResult:
    if tau < 0:
        raise DomainError(f"tau must be >= 0, got {tau}")
    if tau == 1.0:
        raise BranchError("tau == 1 belongs to the RDP branch")
    branch = Branch.LOSS if tau < 1.0 else Branch.AMPLIFICATION
    if tau == 0.0:
        return CapacityResult(0.0, branch, True, -math.inf)
    raw = math.log2(tau) - math.log2(abs(1.0 - tau)) - g_func(N_e)
    return _result(raw, branch)


def q_lb_rdp(sigma2: float) -> CapacityResult:
    if not sigma2 > 0:
        raise DomainError(f"sigma2 must be > 0, got {sigma2}")
    raw = 1.0 - math.log2(math.e * sigma2)
    return _result(raw, Branch.RDP)


def q_lb(channel: ChannelDescriptor) -> CapacityResult:
    """Dispatch to the bound matching the channel kind.

    A noiseless identity channel (``sigma2 == 0`` on the RDP locus) gets an
    infinite bound.
    """
    if channel.kind is ChannelKind.RANDOM_DISPLACEMENT:
        if channel.sigma2 is None:
            raise ContractError("RDP descriptor without sigma2")
        if channel.sigma2 == 0.0:
            return CapacityResult(math.inf, Branch.RDP, False, math.inf)
        return q_lb_rdp(channel.sigma2)
    if channel.N_e is None:
        raise ContractError(f"{channel.kind.value} descriptor without N_e")
    if abs(channel.tau - 1.0) <= channel.tolerance:
        raise ContractError(f"tau={channel.tau!r} inside the RDP tolerance but kind is {channel.kind.value}")
    expected = Branch.LOSS if channel.kind is ChannelKind.GENERALIZED_LOSS else Branch.AMPLIFICATION
    res = q_lb_loss_amp(channel.tau, channel.N_e)
    if res.branch is not expected:
        raise ContractError(f"kind {channel.kind.value} inconsistent with tau={channel.tau!r}")
    if abs(channel.tau - 1.0) < NEAR_BOUNDARY and channel.sigma2:
        limit = q_lb_rdp(channel.sigma2)
        if abs(res.raw - limit.raw) > CONTINUITY_WARN_BITS:
            logger.warning(
                "branch value %.6g and RDP limit %.6g disagree near tau=1 (tau=%r)",
                res.raw, limit.raw, channel.tau,
            )
    return res
