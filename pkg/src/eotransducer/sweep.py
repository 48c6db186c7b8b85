"""Parameter sweeps over the transducer model and CSV emission.

Every runner returns a :class:`Table`; rows are ordered by grid index.  Each
row is re-checked against the transfer normalisation and the commutator
identity before it is accepted.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from .capacity import CapacityResult, q_lb
from .channel import (
    DEFAULT_RDP_TOL,
    ChannelDescriptor,
    NoiseCoefficients,
    PortOccupations,
    SqueezerPair,
    compose,
    describe,
    g_pure_amp,
    g_pure_loss,
    gain_from_db,
    gprime_pure_amp,
    gprime_pure_loss,
)
from .config import AxisSpec, SweepConfig
from .errors import DomainError, NumericalError
from .oracle import oracle_channel
from .physics import EOParams, TransferCoefficients, eta_resonant, transfer_coefficients

SCHEMA_VERSION = 1
NORMALIZATION_TOL = 1e-12
COMMUTATOR_TOL = 1e-10
ORACLE_REL_TOL = 1e-9
ORACLE_BITS_TOL = 1e-9

RESULT_COLUMNS = ("eta", "kappa_P", "kappa_E", "tau", "kind", "special", "N_e", "sigma2", "q_lb", "clamped")


@dataclass
class Table:
    mode: str
    columns: Tuple[str, ...]
    rows: List[Dict[str, object]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([r[name] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# eotransducer-sweep schema={SCHEMA_VERSION} mode={self.mode}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(row.get(c)) for c in self.columns])
        return buf.getvalue()


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.16e}"
    return str(value)


@dataclass(frozen=True)
class PointResult:
    transfer: TransferCoefficients
    squeezers: SqueezerPair
    coeffs: NoiseCoefficients
    channel: ChannelDescriptor
    capacity: CapacityResult


def evaluate(transfer: TransferCoefficients, squeezers: SqueezerPair,
             occupations: PortOccupations, tolerance: float) -> PointResult:
    coeffs = compose(transfer, squeezers)
    channel = describe(coeffs, occupations, tolerance)
    return PointResult(transfer, squeezers, coeffs, channel, q_lb(channel))


def check_invariants(point: PointResult) -> None:
    tr = point.transfer
    total = tr.eta + tr.kappa_P + tr.kappa_Em + tr.kappa_Ea
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NumericalError(f"transfer row sum {total!r} != 1")
    c = point.coeffs
    scale = max(1.0, c.c_P**2, c.c_A**2, c.tau)
    if abs(c.commutator_residual()) > COMMUTATOR_TOL * scale:
        raise NumericalError(f"commutator residual {c.commutator_residual()!r} at {point.squeezers}")


def result_fields(point: PointResult) -> Dict[str, object]:
    ch, cap, tr = point.channel, point.capacity, point.transfer
    return {
        "eta": tr.eta, "kappa_P": tr.kappa_P, "kappa_E": tr.kappa_E, "tau": ch.tau,
        "kind": ch.kind.value, "special": ch.special.value,
        "N_e": ch.N_e, "sigma2": ch.sigma2 if ch.kind.value == "RandomDisplacement" else None,
        "q_lb": cap.q_lb, "clamped": cap.clamped,
    }


def cross_check(point: PointResult, params: EOParams, detuning: float,
                occupations: PortOccupations, tolerance: float) -> None:
    """Compare a row against the moment-propagation oracle; raise on mismatch."""
    od = oracle_channel(params, detuning, point.squeezers, occupations, tolerance)
    ch = point.channel

    def close(a, b, tol):
        if a is None or b is None:
            return a is b
        return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300) or abs(a - b) < 1e-15

    oq = q_lb(od)
    ok = (od.kind is ch.kind and close(od.tau, ch.tau, ORACLE_REL_TOL)
          and close(od.N_e, ch.N_e, ORACLE_REL_TOL) and close(od.sigma2, ch.sigma2, ORACLE_REL_TOL)
          and (oq.q_lb == point.capacity.q_lb or abs(oq.q_lb - point.capacity.q_lb) <= ORACLE_BITS_TOL))
    if not ok:
        raise NumericalError(f"oracle disagreement at {point.squeezers}, detuning {detuning}: "
                             f"analytic {ch}, oracle {od}")


class _Runner:
    def __init__(self, cfg: SweepConfig):
        self.cfg = cfg
        self.tol = cfg.rdp_tol

    def occupations(self, params: EOParams) -> PortOccupations:
        return PortOccupations.thermal(params, self.cfg.thermal_probe)

    def point(self, transfer, squeezers, params, occupations) -> PointResult:
        pt = evaluate(transfer, squeezers, occupations, self.tol)
        check_invariants(pt)
        if self.cfg.oracle:
            cross_check(pt, params, transfer.detuning, occupations, self.tol)
        return pt


def _gain_axis(axis: AxisSpec) -> List[Tuple[Optional[float], float]]:
    """(dB value or None, linear gain) pairs along a gain axis."""
    if axis.spacing == "db":
        return [(float(d), gain_from_db(float(d))) for d in np.linspace(axis.min, axis.max, axis.points)]
    return [(10.0 * math.log10(v), float(v)) for v in axis.values()]


def run_resonant(cfg: SweepConfig) -> Table:
    """Bare-channel efficiency and capacity against cooperativity on resonance."""
    run = _Runner(cfg)
    columns = ("C_g", "zeta_m", "zeta_a", "T") + RESULT_COLUMNS
    table = Table("resonant", columns)
    bare = SqueezerPair(1.0, 1.0)
    for zeta in cfg.zetas:
        for T in cfg.temperatures:
            for C in cfg.axis("C_g").values():
                params = EOParams.from_dimensionless(float(C), zeta, zeta, cfg.system.kappa,
                                                     cfg.system.omega_m, cfg.system.omega_o, T)
                tr = transfer_coefficients(params, 0.0)
                pt = run.point(tr, bare, params, run.occupations(params))
                table.rows.append({"C_g": float(C), "zeta_m": zeta, "zeta_a": zeta, "T": T,
                                   **result_fields(pt)})
    return table


def _fixed_system(cfg: SweepConfig):
    params = cfg.system.params()
    return cfg.system.resonant_transfer(), params


def run_gg_grid(cfg: SweepConfig) -> Table:
    """Capacity over the (G, G') plane at a fixed bare channel."""
    run = _Runner(cfg)
    tr, params = _fixed_system(cfg)
    occ = run.occupations(params)
    table = Table("grid", ("G_db", "G", "G_prime") + RESULT_COLUMNS)
    for G_db, G in _gain_axis(cfg.axis("G")):
        for Gp in cfg.axis("G_prime").values():
            pt = run.point(tr, SqueezerPair(G, float(Gp)), params, occ)
            table.rows.append({"G_db": G_db, "G": G, "G_prime": float(Gp), **result_fields(pt)})
    return table


def special_gprimes(G: float, transfer: TransferCoefficients) -> List[Tuple[str, float]]:
    """Pure-loss, RDP and pure-amplification anti-squeezer settings at fixed G."""
    marks = [("PL/TL", gprime_pure_loss(G, transfer.kappa_P))]
    if transfer.eta > 0:
        marks.append(("RDP", 1.0 / transfer.eta))
    try:
        marks.append(("PA/TA", gprime_pure_amp(G, transfer.kappa_P)))
    except DomainError:
        pass
    return marks


def special_gains(G_prime: float, transfer: TransferCoefficients) -> List[Tuple[str, float]]:
    """Squeezer gains at which a fixed G' realises the pure-loss or pure-amplification channel."""
    marks = []
    G = g_pure_loss(G_prime, transfer.kappa_P)
    if G is not None:
        marks.append(("PL/TL", G))
    G = g_pure_amp(G_prime, transfer.kappa_P)
    if G is not None:
        marks.append(("PA/TA", G))
    return marks


def _merge(values: Iterable[float], marks: Sequence[Tuple[str, float]],
           rel_tol: float = 1e-12) -> List[Tuple[float, str]]:
    """Grid values plus marked points; a marker replaces any grid value it rounds onto."""
    merged = {float(v): "" for v in values
              if not any(math.isclose(v, m, rel_tol=rel_tol) for _, m in marks)}
    for name, v in marks:
        merged[float(v)] = name
    return sorted(merged.items())


def run_slices(cfg: SweepConfig) -> Table:
    """Capacity along G' at fixed G, or along G at fixed G'.

    The special settings (pure loss, RDP, pure amplification) are inserted
    into the axis and tagged in the ``marker`` column.
    """
    run = _Runner(cfg)
    tr, params = _fixed_system(cfg)
    occ = run.occupations(params)
    table = Table("slice", ("G_db", "G", "G_prime", "marker") + RESULT_COLUMNS)
    if cfg.slice_G_db is not None:
        G = gain_from_db(cfg.slice_G_db)
        axis = cfg.axis("G_prime")
        lo, hi = float(axis.values()[0]), float(axis.values()[-1])
        marks = [(n, v) for n, v in special_gprimes(G, tr) if lo <= v <= hi]
        for Gp, marker in _merge(axis.values(), marks):
            pt = run.point(tr, SqueezerPair(G, Gp), params, occ)
            table.rows.append({"G_db": cfg.slice_G_db, "G": G, "G_prime": Gp, "marker": marker,
                               **result_fields(pt)})
    else:
        Gp = cfg.slice_G_prime
        axis = cfg.axis("G")
        pairs = _gain_axis(axis)
        lo, hi = pairs[0][1], pairs[-1][1]
        marks = [(n, v) for n, v in special_gains(Gp, tr) if lo <= v <= hi]
        for G, marker in _merge((g for _, g in pairs), marks):
            pt = run.point(tr, SqueezerPair(G, Gp), params, occ)
            table.rows.append({"G_db": 10.0 * math.log10(G), "G": G, "G_prime": Gp, "marker": marker,
                               **result_fields(pt)})
    return table


def positive_bandwidth(omegas: Sequence[float], q: Sequence[float]) -> float:
    """Measure of ``{omega : q(omega) > 0}`` by grid counting (uniform grid)."""
    omegas = np.asarray(omegas, dtype=float)
    step = (omegas[-1] - omegas[0]) / (len(omegas) - 1)
    return float(np.count_nonzero(np.asarray(q) > 0) * step)


def run_bandwidth(cfg: SweepConfig) -> Table:
    """Capacity spectra of the bare converter and the assisted pure-loss channel."""
    run = _Runner(cfg)
    s = cfg.system
    columns = ("C_g", "variant", "omega", "G_db", "G", "G_prime") + RESULT_COLUMNS + ("bandwidth",)
    table = Table("bandwidth", columns)
    omegas = cfg.axis("omega").values()
    G = gain_from_db(cfg.bandwidth_G_db)
    for C in cfg.cooperativities:
        params = s.params(cooperativity=C)
        occ = run.occupations(params)
        for variant in ("bare", "assisted"):
            rows = []
            for w in omegas:
                tr = transfer_coefficients(params, float(w) * s.kappa)
                if variant == "bare":
                    sq = SqueezerPair(1.0, 1.0)
                elif cfg.bandwidth_G_prime is None:
                    sq = SqueezerPair(G, gprime_pure_loss(G, min(tr.kappa_P, 1.0)))
                else:
                    sq = SqueezerPair(G, cfg.bandwidth_G_prime)
                pt = run.point(tr, sq, params, occ)
                rows.append({"C_g": C, "variant": variant, "omega": float(w),
                             "G_db": 10.0 * math.log10(sq.G), "G": sq.G, "G_prime": sq.G_prime,
                             **result_fields(pt)})
            width = positive_bandwidth(omegas, [r["q_lb"] for r in rows])
            for r in rows:
                r["bandwidth"] = width
            table.rows.extend(rows)
    return table


def find_crossings(f: Callable[[float], float], xs: Sequence[float], xtol: float = 1e-13
                   ) -> List[Tuple[float, str]]:
    """Roots of ``f`` between grid points where ``f > 0`` switches on or off.

    Returns ``(root, direction)`` with direction ``'up'`` when ``f`` becomes
    positive with increasing ``x`` and ``'down'`` otherwise.
    """
    vals = [f(x) for x in xs]
    out = []
    for (x0, f0), (x1, f1) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if (f0 > 0) == (f1 > 0):
            continue
        if f0 == 0.0:
            root = x0
        elif f1 == 0.0:
            root = x1
        else:
            root = bisect(f, x0, x1, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=400)
        out.append((float(root), "up" if f1 > 0 else "down"))
    return out


def run_boundary(cfg: SweepConfig) -> Table:
    """Zero crossings of the capacity bound in G' for every G column."""
    run = _Runner(cfg)
    tr, params = _fixed_system(cfg)
    occ = run.occupations(params)
    table = Table("boundary", ("G_db", "G", "branch", "G_prime", "q_raw", "status"))
    gps = [float(v) for v in cfg.axis("G_prime").values()]
    for G_db, G in _gain_axis(cfg.axis("G")):
        def raw(Gp, G=G):
            return run.point(tr, SqueezerPair(G, Gp), params, occ).capacity.raw

        crossings = find_crossings(raw, gps)
        if not crossings:
            table.rows.append({"G_db": G_db, "G": G, "branch": "none", "G_prime": None,
                               "q_raw": None, "status": "no_sign_change"})
            continue
        for Gp, direction in crossings:
            q = raw(Gp)
            status = "ok" if abs(q) < cfg.boundary_tol else "tolerance_not_met"
            table.rows.append({"G_db": G_db, "G": G, "branch": "lower" if direction == "up" else "upper",
                               "G_prime": Gp, "q_raw": q, "status": status})
    return table


def resonant_threshold(zeta_m: float = 1.0, zeta_a: float = 1.0, temperature: float = 0.0,
                       cmin: float = 1e-3, cmax: float = 1e3, points: int = 401,
                       thermal_probe: bool = False) -> List[Tuple[float, str]]:
    """Cooperativities at which the bare resonant capacity bound changes sign."""
    def raw(C):
        params = EOParams.from_dimensionless(C, zeta_m, zeta_a, temperature=temperature)
        tr = transfer_coefficients(params, 0.0)
        occ = PortOccupations.thermal(params, thermal_probe)
        return evaluate(tr, SqueezerPair(), occ, DEFAULT_RDP_TOL).capacity.raw

    return find_crossings(raw, list(np.geomspace(cmin, cmax, points)), xtol=1e-14)


def analytic_threshold(zeta_m: float = 1.0, zeta_a: float = 1.0) -> Tuple[float, float]:
    """Roots of ``eta_resonant(C) = 1/2``; empty window gives ``(nan, nan)``."""
    z = zeta_m * zeta_a
    b = 8.0 * z - 2.0  # C^2 - b C + 1 = 0
    disc = b * b - 4.0
    if disc < 0 or b <= 0:
        return (math.nan, math.nan)
    r = math.sqrt(disc)
    hi = (b + r) / 2.0
    return (1.0 / hi, hi)


def random_draw_check(draws: int = 1000, seed: int = 0, tolerance: float = 1e-9) -> Table:
    """Analytic vs oracle pipelines on random parameter draws."""
    from .oracle import numeric_transfer, squeeze_compose_numeric

    rng = np.random.default_rng(seed)
    cols = ("draw", "C_g", "zeta_m", "zeta_a", "omega", "G", "G_prime", "T",
            "err_eta", "err_kappa_P", "err_kappa_Em", "err_kappa_Ea", "err_cP2", "err_cA2",
            "err_N_e", "err_q_bits", "pass")
    table = Table("oracle-check", cols)

    def rel(a, b):
        if a is None or b is None:
            return 0.0 if a is b else math.inf
        d = abs(a - b)
        return 0.0 if d == 0 else d / max(abs(a), abs(b))

    for i in range(draws):
        C = float(10 ** rng.uniform(-2, 1))
        zm, za = (float(x) for x in rng.uniform(0.5, 1.0, 2))
        w = float(rng.uniform(-5, 5))
        G, Gp = (float(x) for x in 10 ** rng.uniform(0, 3, 2))
        T = float(rng.choice([0.0, 0.01, 0.3]))
        params = EOParams.from_dimensionless(C, zm, za, temperature=T)
        kappa = params.kappa_m_c + params.kappa_m_i
        sq = SqueezerPair(G, Gp)
        occ = PortOccupations.thermal(params)
        tr = transfer_coefficients(params, w * kappa)
        pt = evaluate(tr, sq, occ, tolerance)
        amps = numeric_transfer(params, w * kappa)
        mom = squeeze_compose_numeric(amps, sq, occ)
        od = oracle_channel(params, w * kappa, sq, occ, tolerance)
        oq = q_lb(od)
        errs = {
            "err_eta": rel(tr.eta, abs(amps["S_in"]) ** 2),
            "err_kappa_P": rel(tr.kappa_P, abs(amps["P_in"]) ** 2),
            "err_kappa_Em": rel(tr.kappa_Em, abs(amps["E_m"]) ** 2),
            "err_kappa_Ea": rel(tr.kappa_Ea, abs(amps["E_a"]) ** 2),
            "err_cP2": rel(pt.coeffs.c_P**2, mom.port_magnitudes[("P0", False)]),
            "err_cA2": rel(pt.coeffs.c_A**2, mom.port_magnitudes[("A0", True)]),
            "err_N_e": rel(pt.channel.N_e, od.N_e) if pt.channel.N_e is not None
            else rel(pt.channel.sigma2, od.sigma2),
            "err_q_bits": abs(pt.capacity.q_lb - oq.q_lb),
        }
        ok = all(v <= tolerance for k, v in errs.items() if k != "err_q_bits") and errs["err_q_bits"] <= tolerance
        table.rows.append({"draw": i, "C_g": C, "zeta_m": zm, "zeta_a": za, "omega": w,
                           "G": G, "G_prime": Gp, "T": T, **errs, "pass": ok})
    return table


RUNNERS = {
    "resonant": run_resonant,
    "grid": run_gg_grid,
    "slice": run_slices,
    "bandwidth": run_bandwidth,
    "boundary": run_boundary,
    "oracle-check": lambda cfg: random_draw_check(cfg.draws, cfg.seed, ORACLE_REL_TOL),
}


def run(cfg: SweepConfig) -> Table:
    return RUNNERS[cfg.validate().mode](cfg)
