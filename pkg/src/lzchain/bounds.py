"""Explicit redundancy terms and evaluators for the finite-n LZ / entropy bounds.

Every evaluator returns a :class:`BoundReport` whose right-hand side is the
sum of its named, signed terms. Terms that have no closed form are either
measured on the input (conditional-coder redundancy, LZ78-coder redundancy)
or, for the chain lower bound and the reverse conditional sandwich, reported
as the slack a true term would need to absorb ("reported-slack" mode).
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence as _Seq, Tuple, Union

from . import condlz, lz78
from .empirical import CapExceededError, block_entropy, pair_entropies
from .seqcore import PairedSequence, Sequence, check_divides, partition

TABLE_CAP = 1 << 22
TOL = 1e-9
_LN2 = math.log(2.0)


@dataclass
class BoundReport:
    theorem: str
    direction: str  # "ge": lhs >= rhs, "le": lhs <= rhs
    lhs: float
    rhs: float
    terms: Dict[str, float]
    params: Dict[str, int]
    holds: bool
    slack: float
    mode: str = "strict"
    strict_holds: Optional[bool] = None
    required_slack: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self, digits: int = 12) -> dict:
        d = asdict(self)
        for key in ("lhs", "rhs", "slack", "required_slack"):
            if d[key] is not None:
                d[key] = _round(d[key], digits)
        d["terms"] = {k: _round(v, digits) for k, v in self.terms.items()}
        return d


def _round(v: float, digits: int = 12) -> float:
    return float(f"{v:.{digits}g}")


def _build(theorem: str, direction: str, lhs: float, terms: Dict[str, float],
           params: Dict[str, int], notes: Optional[List[str]] = None) -> BoundReport:
    rhs = math.fsum(terms.values())
    slack = lhs - rhs if direction == "ge" else rhs - lhs
    ok = slack >= -TOL
    return BoundReport(theorem, direction, lhs, rhs, terms, params, ok, slack,
                       "strict", ok, None, list(notes or []))


def _reported_slack(theorem: str, direction: str, lhs: float, terms: Dict[str, float],
                    params: Dict[str, int], term_name: str,
                    notes: Optional[List[str]] = None) -> BoundReport:
    """Strict check with the unknown term at 0, then absorb any deficit into it."""
    strict = _build(theorem, direction, lhs, terms, params)
    need = max(0.0, -strict.slack)
    sign = -1.0 if direction == "ge" else 1.0
    full = dict(terms)
    full[term_name] = sign * need
    rep = _build(theorem, direction, lhs, full, params, notes)
    rep.mode = "reported_slack"
    rep.strict_holds = strict.holds
    rep.required_slack = need
    return rep


def reports_to_json(reports: Iterable[BoundReport], digits: int = 12) -> str:
    return json.dumps([r.to_dict(digits) for r in reports], indent=2, sort_keys=False)


CSV_FIXED = ("theorem", "direction", "mode", "holds", "strict_holds",
             "lhs", "rhs", "slack", "required_slack")


def reports_to_csv(reports: _Seq[BoundReport], digits: int = 12) -> str:
    """Flat CSV: fixed columns, then ``param:<name>`` and ``term:<name>`` columns."""
    params: List[str] = []
    terms: List[str] = []
    for r in reports:
        params += [p for p in r.params if p not in params]
        terms += [t for t in r.terms if t not in terms]
    header = list(CSV_FIXED) + [f"param:{p}" for p in params] + [f"term:{t}" for t in terms]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    fmt = lambda v: "" if v is None else (f"{v:.{digits}g}" if isinstance(v, float) else str(v))
    for r in reports:
        row = [r.theorem, r.direction, r.mode, r.holds, r.strict_holds,
               r.lhs, r.rhs, r.slack, r.required_slack]
        row = [fmt(v) for v in row]
        row += [fmt(r.params.get(p)) for p in params]
        row += [fmt(r.terms.get(t)) for t in terms]
        w.writerow(row)
    return buf.getvalue()


# -- redundancy terms -----------------------------------------------------


def _log2(v: Union[int, float]) -> float:
    # math.log2 accepts arbitrarily large ints
    return math.log2(v)


def _log2_1p_exp2(t: float) -> float:
    """``log2(1 + 2**t)`` without overflow."""
    if t > 0:
        return t + math.log1p(2.0 ** -t) / _LN2
    return math.log1p(2.0 ** t) / _LN2


def delta(l: int, s: Union[int, float], alpha: int) -> float:
    """``(1/l) log2(s^2 [1 + log2(1 + alpha^l / s)])``, evaluated in the log domain."""
    if l < 1 or s < 1 or alpha < 1:
        raise ValueError("delta needs l, s, alpha >= 1")
    inner = _log2_1p_exp2(l * _log2(alpha) - _log2(s))
    return (2.0 * _log2(s) + math.log2(1.0 + inner)) / l


def _max_distinct(m: int, alpha: int) -> int:
    """Most distinct nonempty words over ``alpha`` symbols with total length <= m."""
    count, ln, left = 0, 1, m
    while left >= ln:
        take = min(alpha ** ln if alpha > 1 else 1, left // ln)
        count += take
        left -= take * ln
        ln += 1
    return count


@lru_cache(maxsize=4096)
def max_phrase_count(n: int, alpha: int) -> int:
    """Largest phrase count an incremental parse of a length-``n`` sequence can have.

    All phrases but the last are distinct, so at most the ``n - 1`` symbols
    before the final phrase are spent on distinct words; shortest words first
    maximizes their number.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if alpha < 1:
        raise ValueError("alpha must be positive")
    return 1 + _max_distinct(n - 1, alpha)


def epsilon1(n: int, alpha: int) -> float:
    """Uniform ``eps1(n)`` with ``LZ bits <= c log c + n eps1`` for every length-``n`` input.

    ``(c+1) log2(2 alpha (c+1)) - c log2 c`` increases with ``c``, so the
    maximum over feasible ``c`` sits at :func:`max_phrase_count`.
    """
    c = max_phrase_count(n, alpha)
    return (lz78.code_length_bound(c, alpha) - lz78.xlogx(c)) / n


def zl_lower_bound(c: int, n: int, s: Union[int, float]) -> float:
    """``((c+s^2)/n) log2((c+s^2)/(4s^2)) + 2s^2/n``, the s-state compressibility lower bound."""
    return _zl_scaled(c, s) / n


def _zl_scaled(c: int, s: Union[int, float]) -> float:
    # (c+s^2) log2((c+s^2)/(4 s^2)) + 2 s^2 = (c+s^2) log2(1 + c/s^2) - 2c
    r_log = math.log(c) - 2.0 * math.log(s)
    if r_log > 0:
        s2 = math.exp(2.0 * math.log(s))
        return (c + s2) * math.log1p(c / s2) / _LN2 - 2.0 * c
    r = math.exp(r_log)
    factor = (1.0 + 1.0 / r) * math.log1p(r) if r > 0 else 1.0
    return c * factor / _LN2 - 2.0 * c


def epsilon2(n: int, s: Union[int, float], alpha: int) -> float:
    """Uniform ``eps2(n, s)`` with ``rho_s >= c log c / n - eps2`` for length-``n`` inputs.

    The gap ``c log c - n * zl_lower_bound`` increases with ``c``; it is
    evaluated at the largest feasible phrase count and clamped at zero.
    """
    if n < 1 or s < 1:
        raise ValueError("n and s must be positive")
    c = max_phrase_count(n, alpha)
    return max(0.0, (lz78.xlogx(c) - _zl_scaled(c, s)) / n)


# -- measured redundancies ------------------------------------------------


@lru_cache(maxsize=4096)
def measured_lz_redundancy(x: Sequence, q: int) -> float:
    """Max over ``q``-blocks of (LZ78 coder bits - c log c)/q, clamped at 0."""
    check_divides(len(x), q, "q")
    worst = 0.0
    for a, b in partition(len(x), q):
        blk = x[a:b]
        worst = max(worst, (lz78.encoded_length(blk) - lz78.xlogx(lz78.phrase_count(blk.symbols))) / q)
    return worst


def measured_cond_redundancy(p: PairedSequence, q: int) -> float:
    """Max over ``q``-blocks of the conditional coder's per-symbol redundancy, clamped at 0."""
    return max(0.0, max(condlz.block_cond_redundancy(p, q)))


# -- cap and parameter checks ---------------------------------------------


def fits(base: int, exp: int, cap: int = TABLE_CAP) -> bool:
    """``base**exp <= cap`` without forming the power."""
    return base <= 1 or exp * math.log2(base) <= math.log2(cap) + 1e-12


def _cap(base: int, exp: int, what: str, cap: int = TABLE_CAP) -> None:
    if not fits(base, exp, cap):
        raise CapExceededError(f"{what} = {base}^{exp} table cells exceeds the cap {cap}")


def _positive(**kw) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def _window(n: int, d: int, name: str) -> None:
    if d > n:
        raise ValueError(f"{name}={d} exceeds n={n}")


# -- single-sequence theorems ---------------------------------------------


def verify_lower(x: Sequence, k: int, l: int, cap: int = TABLE_CAP) -> BoundReport:
    """Block LZ complexity >= cyclic block entropy minus explicit redundancy."""
    _positive(k=k, l=l)
    n, a = len(x), x.alpha
    check_divides(n, k)
    _window(n, l, "l")
    _cap(a, l, "alpha^l", cap)
    lhs = lz78.block_average_complexity(x, k)
    terms = {
        "entropy": block_entropy(x, l, "csw") / l,
        "delta": -delta(l, a ** k, a),
        "edge": -l * math.log2(a) / n if a > 1 else 0.0,
        "continuity": -(float(a) ** l / n) * math.log2(n / l),
        "epsilon1": -epsilon1(k, a),
    }
    return _build("lb", "ge", lhs, terms, dict(n=n, k=k, l=l, alpha=a))


def verify_lower_nob(x: Sequence, k: int, l: int, cap: int = TABLE_CAP) -> BoundReport:
    _positive(k=k, l=l)
    n, a = len(x), x.alpha
    check_divides(n, k)
    check_divides(n, l, "l")
    _cap(a, l, "alpha^l", cap)
    lhs = lz78.block_average_complexity(x, k)
    terms = {
        "entropy": block_entropy(x, l, "nob") / l,
        "delta": -delta(l, a ** k, a),
        "epsilon1": -epsilon1(k, a),
    }
    return _build("lb-nob", "ge", lhs, terms, dict(n=n, k=k, l=l, alpha=a))


def verify_upper(x: Sequence, k: int, m: int, cap: int = TABLE_CAP) -> BoundReport:
    """Block LZ complexity <= cyclic block entropy plus explicit redundancy."""
    _positive(k=k, m=m)
    n, a = len(x), x.alpha
    check_divides(n, k)
    _window(n, m, "m")
    _cap(a, m + 1, "alpha^(m+1)", cap)
    lhs = lz78.block_average_complexity(x, k)
    terms = {
        "entropy": block_entropy(x, m, "csw") / m,
        "one_over_m": 1.0 / m,
        "continuity": 2.0 * (m + 1) * float(a) ** (m + 1) / n * math.log2(n / m),
        "epsilon2": epsilon2(k, a ** (2 * m), a),
    }
    return _build("ub", "le", lhs, terms, dict(n=n, k=k, m=m, alpha=a))


def verify_upper_nob(x: Sequence, k: int, m: int, cap: int = TABLE_CAP) -> BoundReport:
    _positive(k=k, m=m)
    n, a = len(x), x.alpha
    check_divides(n, k)
    check_divides(n, m, "m")
    _cap(a, m, "alpha^m", cap)
    lhs = lz78.block_average_complexity(x, k)
    terms = {
        "entropy": block_entropy(x, m, "nob") / m,
        "one_over_m": 1.0 / m,
        "epsilon2": epsilon2(k, a ** (2 * m), a),
    }
    return _build("ub-nob", "le", lhs, terms, dict(n=n, k=k, m=m, alpha=a))


# -- paired-sequence bounds -----------------------------------------------


def _joint_block_complexity(p: PairedSequence, k: int) -> float:
    return lz78.block_average_complexity(p.product(), k)


def cond_sandwich(p: PairedSequence, q: int, m: int, p_ord: Optional[int] = None,
                  eps3: Optional[float] = None,
                  cap: int = TABLE_CAP) -> Tuple[BoundReport, BoundReport]:
    """Conditional entropy vs block conditional LZ complexity, both directions.

    Forward: ``H_nob(Y^m|X^m)/m <= q-block avg rho(y|x) + eps3(q) + Delta_m(a^q b^q, b)``
    with ``eps3`` the measured conditional-coder redundancy (or ``eps3``).
    Reverse: ``q-block avg rho(y|x) <= H_nob(Y^p|X^p)/p + 1/p + eps4`` in
    reported-slack mode.
    """
    p_ord = m if p_ord is None else p_ord
    _positive(q=q, m=m, p=p_ord)
    n, a, b = len(p), p.alpha, p.beta
    check_divides(n, q, "q")
    check_divides(n, m, "m")
    check_divides(n, p_ord, "p")
    _cap(a * b, max(m, p_ord), "(alpha beta)^m", cap)
    cond_avg = condlz.block_average_cond_complexity(p, q)
    e3 = measured_cond_redundancy(p, q) if eps3 is None else eps3
    params = dict(n=n, q=q, m=m, alpha=a, beta=b)
    fwd = _build("cond-fwd", "le", pair_entropies(p, m, "nob")[1] / m, {
        "cond_complexity": cond_avg,
        "epsilon3": e3,
        "delta": delta(m, (a * b) ** q, b),
    }, params, ["epsilon3 measured" if eps3 is None else "epsilon3 supplied"])
    rev = _reported_slack("cond-rev", "le", cond_avg, {
        "cond_entropy": pair_entropies(p, p_ord, "nob")[1] / p_ord,
        "one_over_p": 1.0 / p_ord,
    }, dict(n=n, q=q, p=p_ord, alpha=a, beta=b), "epsilon4")
    return fwd, rev


def verify_chain_upper(p: PairedSequence, k: int, q: int, m: int,
                       eps3: Optional[float] = None, cap: int = TABLE_CAP) -> BoundReport:
    """Joint block complexity <= marginal + conditional ``q``-block complexity + redundancy.

    The x-side LZ redundancy at block length ``q`` enters as a measured term
    next to the measured conditional redundancy.
    """
    _positive(k=k, q=q, m=m)
    n, a, b = len(p), p.alpha, p.beta
    check_divides(n, k)
    check_divides(n, q, "q")
    _cap(a * b, m, "(alpha beta)^m", cap)
    lhs = _joint_block_complexity(p, k)
    e3 = measured_cond_redundancy(p, q) if eps3 is None else eps3
    terms = {
        "x_complexity": lz78.block_average_complexity(p.x, q),
        "cond_complexity": condlz.block_average_cond_complexity(p, q),
        "delta_x": delta(m, a ** q, a),
        "epsilon1_q": measured_lz_redundancy(p.x, q),
        "epsilon3": e3,
        "delta_y": delta(m, (a * b) ** q, b),
        "one_over_m": 1.0 / m,
        "epsilon2": epsilon2(k, (a * b) ** m, a * b),
    }
    notes = ["epsilon1_q and epsilon3 measured on the input's q-blocks"]
    return _build("chain-upper", "le", lhs, terms, dict(n=n, k=k, q=q, m=m, alpha=a, beta=b), notes)


def verify_chain_lower(p: PairedSequence, k: int, r: int, p_ord: int,
                       cap: int = TABLE_CAP) -> BoundReport:
    """Joint block complexity >= ``r``-block decomposition minus redundancy (reported-slack)."""
    _positive(k=k, r=r, p=p_ord)
    n, a, b = len(p), p.alpha, p.beta
    check_divides(n, k)
    check_divides(n, r, "r")
    _cap(a * b, p_ord, "(alpha beta)^p", cap)
    lhs = _joint_block_complexity(p, k)
    terms = {
        "x_complexity": lz78.block_average_complexity(p.x, r),
        "cond_complexity": condlz.block_average_cond_complexity(p, r),
        "two_over_p": -2.0 / p_ord,
        "epsilon2": -epsilon2(r, a ** p_ord, a),
        "delta": -delta(p_ord, (a * b) ** k, a * b),
        "epsilon1": -epsilon1(k, a * b),
    }
    return _reported_slack("chain-lower", "ge", lhs, terms,
                           dict(n=n, k=k, r=r, p=p_ord, alpha=a, beta=b), "epsilon4")


def rho_plus_minus(p: PairedSequence, k: int) -> Tuple[float, float]:
    """Block averages of the max and min of the three chain decompositions."""
    n = len(p)
    check_divides(n, k)
    hi = lo = 0.0
    q = p.swap()
    for a, b in partition(n, k):
        blk, rev = p[a:b], q[a:b]
        vals = (
            lz78.complexity(blk.product()),
            lz78.complexity(blk.x) + condlz.cond_complexity(blk),
            lz78.complexity(blk.y) + condlz.cond_complexity(rev),
        )
        hi += max(vals)
        lo += min(vals)
    blocks = n // k
    return hi / blocks, lo / blocks


def chain_gap(p: PairedSequence, k: int) -> float:
    """``rho_k(x) + rho_k(y|x) - rho_k(x,y)``; the one-sided chain relation keeps this near or above 0."""
    return (lz78.block_average_complexity(p.x, k)
            + condlz.block_average_cond_complexity(p, k)
            - _joint_block_complexity(p, k))


# -- oscillating-pair demonstration ---------------------------------------


@dataclass
class OscillationResult:
    k: int
    boundaries: Tuple[int, ...]
    x: Tuple[float, ...]
    cond: Tuple[float, ...]
    joint: Tuple[float, ...]

    @property
    def gap(self) -> float:
        """max R_x + max R_{y|x} - max R_xy over the segment-end prefixes."""
        return max(self.x) + max(self.cond) - max(self.joint)


def oscillation_gap(p: PairedSequence, k: int, boundaries: _Seq[int]) -> OscillationResult:
    """Block-averaged complexities at each prefix end; the finite stand-in for the limsups."""
    xs, cs, js = [], [], []
    for end in boundaries:
        check_divides(end, k)
        pre = p[:end]
        xs.append(lz78.block_average_complexity(pre.x, k))
        cs.append(condlz.block_average_cond_complexity(pre, k))
        js.append(_joint_block_complexity(pre, k))
    return OscillationResult(k, tuple(boundaries), tuple(xs), tuple(cs), tuple(js))


# -- sweeps ---------------------------------------------------------------

SEQUENCE_THEOREMS = {
    "lb": (verify_lower, ("k", "l")),
    "lb-nob": (verify_lower_nob, ("k", "l")),
    "ub": (verify_upper, ("k", "m")),
    "ub-nob": (verify_upper_nob, ("k", "m")),
}
PAIR_THEOREMS = {
    "chain-upper": (verify_chain_upper, ("k", "q", "m")),
    "chain-lower": (verify_chain_lower, ("k", "r", "p")),
}


class SweepError(Exception):
    """One or more grid points could not be evaluated; carries every failure."""

    def __init__(self, errors: List[Tuple[dict, str]], result: "SweepResult"):
        self.errors = errors
        self.result = result
        lines = "; ".join(f"{pt}: {msg}" for pt, msg in errors[:5])
        more = f" (+{len(errors) - 5} more)" if len(errors) > 5 else ""
        super().__init__(f"{len(errors)} grid point(s) failed: {lines}{more}")


@dataclass
class SweepResult:
    reports: List[BoundReport]
    diagnostics: Dict[str, list]
    errors: List[Tuple[dict, str]] = field(default_factory=list)


def evaluate_point(target: Union[Sequence, PairedSequence], point: dict) -> BoundReport:
    name = point["theorem"]
    table = PAIR_THEOREMS if isinstance(target, PairedSequence) else SEQUENCE_THEOREMS
    if name not in table:
        kind = "paired" if isinstance(target, PairedSequence) else "single"
        raise ValueError(f"theorem {name!r} does not apply to a {kind} sequence")
    fn, keys = table[name]
    missing = [key for key in keys if key not in point]
    if missing:
        raise ValueError(f"grid point for {name} is missing {missing}")
    return fn(target, *(int(point[key]) for key in keys))


def _safe_point(args):
    target, point = args
    try:
        return evaluate_point(target, point), None
    except (ValueError, ArithmeticError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _ladder(limit: int, start: int = 1, factor: int = 4) -> List[int]:
    out, v = [], start
    while v <= limit:
        out.append(v)
        v *= factor
    return out


def default_grid(n: int, alpha: int, beta: Optional[int] = None, cap: int = TABLE_CAP,
                 factor: int = 4) -> List[dict]:
    """Factor-``factor`` ladders for every parameter, filtered by divisibility and caps."""
    ks = [k for k in _ladder(n, factor) if n % k == 0]
    ds = [d for d in _ladder(n) if n % d == 0]
    grid: List[dict] = []
    if beta is None:
        for k in ks:
            for l in ds:
                if fits(alpha, l, cap):
                    grid.append({"theorem": "lb", "k": k, "l": l})
                    grid.append({"theorem": "lb-nob", "k": k, "l": l})
            for m in ds:
                if fits(alpha, m + 1, cap):
                    grid.append({"theorem": "ub", "k": k, "m": m})
                    grid.append({"theorem": "ub-nob", "k": k, "m": m})
        return grid
    ab = alpha * beta
    for k in ks:
        for q in ks:
            for m in ds:
                if fits(ab, m, cap):
                    grid.append({"theorem": "chain-upper", "k": k, "q": q, "m": m})
        for r in ks:
            for p_ord in ds:
                if fits(ab, p_ord, cap):
                    grid.append({"theorem": "chain-lower", "k": k, "r": r, "p": p_ord})
    return grid


def diagnostics(target: Union[Sequence, PairedSequence], ks: _Seq[int], ds: _Seq[int]) -> Dict[str, list]:
    """Convergence series: rho_k, H_csw(X^d)/d with the doubling check, and pair gaps."""
    x = target.x if isinstance(target, PairedSequence) else target
    n = len(x)
    out: Dict[str, list] = {
        "rho_k": [(k, lz78.block_average_complexity(x, k)) for k in ks if n % k == 0],
    }
    hd = []
    for d in ds:
        if d > n or not fits(x.alpha, d):
            continue
        h = block_entropy(x, d, "csw") / d
        entry = {"d": d, "h_per_symbol": h}
        if 2 * d <= n and fits(x.alpha, 2 * d, TABLE_CAP):
            h2 = block_entropy(x, 2 * d, "csw") / (2 * d)
            entry["doubling_ok"] = h2 <= h + TOL
        hd.append(entry)
    out["h_csw_per_symbol"] = hd
    if isinstance(target, PairedSequence):
        gaps = []
        chain = []
        for k in ks:
            if n % k:
                continue
            hi, lo = rho_plus_minus(target, k)
            gaps.append({"k": k, "rho_plus": hi, "rho_minus": lo, "gap": hi - lo})
            chain.append({"k": k, "gap": chain_gap(target, k)})
        out["rho_pm_gap"] = gaps
        out["one_sided_chain_gap"] = chain
    return out


def sweep(target: Union[Sequence, PairedSequence], grid: Optional[_Seq[dict]] = None,
          jobs: int = 1, raise_errors: bool = True, with_diagnostics: bool = True) -> SweepResult:
    """Evaluate every grid point in order; failures are collected, not short-circuited."""
    if grid is None:
        beta = target.beta if isinstance(target, PairedSequence) else None
        alpha = target.alpha
        grid = default_grid(len(target), alpha, beta)
    grid = list(grid)
    args = [(target, pt) for pt in grid]
    if jobs > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_safe_point, args))
    else:
        results = [_safe_point(a) for a in args]
    reports = [r for r, _ in results if r is not None]
    errors = [(pt, err) for pt, (_, err) in zip(grid, results) if err is not None]
    diag: Dict[str, list] = {}
    if with_diagnostics and grid:
        ks = sorted({int(pt["k"]) for pt in grid if "k" in pt})
        ds = sorted({int(pt[key]) for pt in grid for key in ("l", "m", "p") if key in pt})
        diag = diagnostics(target, ks, ds)
    result = SweepResult(reports, diag, errors)
    if errors and raise_errors:
        raise SweepError(errors, result)
    return result
