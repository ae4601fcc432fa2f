"""Empirical distributions of d-blocks and the information measures they induce.

Four window schemes are supported:

``nob``
    non-overlapping blocks ``x[id:id+d]``, weight ``d/n`` each (needs ``d | n``)
``sw``
    sliding windows ``x[i:i+d]`` for ``i = 0..n-d``, weight ``1/(n-d+1)``
``csw``
    cyclic sliding windows starting at every position, indices taken mod ``n``,
    weight ``1/n``
``tilde_sw``
    windows *ending* at every position ``i = 0..n-1``, weight ``1/n``. Indices
    below 0 are filled from ``context`` when one is given, otherwise cyclically
    (in which case the multiset of windows is the ``csw`` one).

Blocks are packed into base-``alpha`` integers, first symbol most significant.
Tables store integer counts; probabilities are ``count / total``.
"""

from __future__ import annotations

import io
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Hashable, Optional, Sequence as _Seq, Tuple

from .seqcore import PairedSequence, Sequence, require_nonempty

KINDS = ("nob", "sw", "csw", "tilde_sw")
MAX_PACKED_BITS = 62
NONNEG_TOL = 1e-12


class CapExceededError(ValueError):
    """A table or enumeration would exceed its configured size cap."""


@dataclass(frozen=True)
class EmpiricalDist:
    kind: str
    d: int
    n: int
    counts: Dict[Hashable, int]
    total: int
    alpha: int
    with_state: bool = False
    # component sizes for two-component keys (state count or alpha**d, ...)
    radix: Tuple[int, ...] = ()

    @property
    def table(self) -> Dict[Hashable, float]:
        t = self.total
        return {k: c / t for k, c in self.counts.items()}


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


def _check_d(n: int, d: int, alpha: int, kind: str) -> None:
    require_nonempty(n)
    if d < 1:
        raise ValueError(f"window length must be positive, got {d}")
    if d > n:
        raise ValueError(f"window length d={d} exceeds n={n}")
    if kind == "nob" and n % d:
        raise ValueError(f"nob needs d | n, got d={d}, n={n}")
    if d * math.log2(max(alpha, 2)) > MAX_PACKED_BITS:
        raise CapExceededError(f"alpha**d = {alpha}**{d} does not fit in {MAX_PACKED_BITS} bits")


def _extended(sym: _Seq[int], d: int, kind: str, context: Optional[_Seq[int]] = None):
    """``(ext, starts, shift)``: windows are ``ext[s:s+d]``; original start is ``s - shift``."""
    n = len(sym)
    sym = tuple(sym)
    if kind == "nob":
        return sym, range(0, n, d), 0
    if kind == "sw":
        return sym, range(0, n - d + 1), 0
    if kind == "csw":
        return sym + sym[: d - 1], range(0, n), 0
    # tilde_sw: window ending at position i covers i-d+1 .. i
    if context is not None:
        if len(context) < d - 1:
            raise ValueError(f"context needs at least d-1={d - 1} symbols")
        head = tuple(context[len(context) - (d - 1):]) if d > 1 else ()
    else:
        head = sym[n - (d - 1):] if d > 1 else ()
    return head + sym, range(0, n), d - 1


def _packed_windows(sym: _Seq[int], d: int, alpha: int, kind: str,
                    context: Optional[_Seq[int]] = None):
    """Yield ``(original_start mod n, packed_key)`` for every window."""
    n = len(sym)
    ext, starts, shift = _extended(sym, d, kind, context)
    if kind == "nob":
        for s in starts:
            key = 0
            for v in ext[s:s + d]:
                key = key * alpha + v
            yield s, key
        return
    top = alpha ** (d - 1)
    key = 0
    for v in ext[: d - 1]:
        key = key * alpha + v
    for s in starts:
        key = (key % top) * alpha + ext[s + d - 1]
        yield (s - shift) % n, key


def _counts(sym, d, alpha, kind, context=None) -> Counter:
    return Counter(k for _, k in _packed_windows(sym, d, alpha, kind, context))


def dist(x: Sequence, d: int, kind: str, context: Optional[_Seq[int]] = None) -> EmpiricalDist:
    """Empirical distribution of ``d``-blocks of ``x`` under window scheme ``kind``."""
    _check_kind(kind)
    n = len(x)
    _check_d(n, d, x.alpha, kind)
    counts = _counts(x.symbols, d, x.alpha, kind, context)
    total = sum(counts.values())
    return EmpiricalDist(kind, d, n, dict(counts), total, x.alpha, False, (x.alpha ** d,))


def dist_with_state(x: Sequence, z: _Seq[int], d: int, kind: str, states: Optional[int] = None) -> EmpiricalDist:
    """Joint distribution of (state at window start, d-block)."""
    _check_kind(kind)
    n = len(x)
    if len(z) != n:
        raise ValueError(f"state sequence length {len(z)} != sequence length {n}")
    _check_d(n, d, x.alpha, kind)
    counts: Counter = Counter()
    for s, key in _packed_windows(x.symbols, d, x.alpha, kind):
        counts[(z[s], key)] += 1
    total = sum(counts.values())
    nstates = states if states is not None else (max(z) + 1 if len(z) else 1)
    return EmpiricalDist(kind, d, n, dict(counts), total, x.alpha, True, (nstates, x.alpha ** d))


def pair_dist(p: PairedSequence, d: int, kind: str) -> EmpiricalDist:
    """Distribution over (x-block, y-block) from windows of the paired sequence."""
    _check_kind(kind)
    n = len(p)
    alpha, beta = p.alpha, p.beta
    _check_d(n, d, alpha * beta, kind)
    wx = _packed_windows(p.x.symbols, d, alpha, kind)
    wy = _packed_windows(p.y.symbols, d, beta, kind)
    counts = Counter((kx, ky) for (_, kx), (_, ky) in zip(wx, wy))
    total = sum(counts.values())
    return EmpiricalDist(kind, d, n, dict(counts), total, alpha * beta, False, (alpha ** d, beta ** d))


def split(dist_: EmpiricalDist, at: int) -> EmpiricalDist:
    """Re-key a single-component block distribution as (first ``at`` symbols, rest)."""
    if dist_.with_state or len(dist_.radix) != 1:
        raise ValueError("split applies to single-component block distributions")
    if not 0 < at < dist_.d:
        raise ValueError(f"split point must be in 1..d-1, got {at}")
    low = dist_.alpha ** (dist_.d - at)
    counts: Counter = Counter()
    for key, c in dist_.counts.items():
        counts[divmod(key, low)] += c
    return EmpiricalDist(dist_.kind, dist_.d, dist_.n, dict(counts), dist_.total,
                         dist_.alpha, False, (dist_.alpha ** at, low))


def marginal(dist_: EmpiricalDist, component: int) -> EmpiricalDist:
    """Marginal of a two-component table (0 = first component, 1 = second)."""
    _require_pair(dist_)
    counts: Counter = Counter()
    for key, c in dist_.counts.items():
        counts[key[component]] += c
    return EmpiricalDist(dist_.kind, dist_.d, dist_.n, dict(counts), dist_.total,
                         dist_.alpha, False, (dist_.radix[component],))


def _require_pair(dist_: EmpiricalDist) -> None:
    if len(dist_.radix) != 2:
        raise ValueError("operation needs a two-component distribution")


def _entropy_counts(counts, total: int) -> float:
    if total <= 0 or not counts:
        raise ValueError("entropy of an empty table is undefined")
    s = 0.0
    for c in counts:
        if c > 1:
            s += c * math.log2(c)
    return max(math.log2(total) - s / total, 0.0)


def entropy(dist_: EmpiricalDist) -> float:
    """Shannon entropy in bits (joint entropy for two-component tables)."""
    return _entropy_counts(dist_.counts.values(), dist_.total)


def cond_entropy(joint: EmpiricalDist) -> float:
    """``H(B|A) = H(A,B) - H(A)`` for a table keyed by ``(a, b)``."""
    _require_pair(joint)
    h = entropy(joint) - entropy(marginal(joint, 0))
    if h < -NONNEG_TOL:
        raise ArithmeticError(f"negative conditional entropy {h}")
    return max(h, 0.0)


def mutual_information(joint: EmpiricalDist) -> float:
    _require_pair(joint)
    i = entropy(marginal(joint, 0)) + entropy(marginal(joint, 1)) - entropy(joint)
    if i < -NONNEG_TOL:
        raise ArithmeticError(f"negative mutual information {i}")
    return max(i, 0.0)


def entropy_continuity_bound(n: int, d: int, alpha: int) -> float:
    """``(d alpha^d / n) log2(n/d)``: bound on ``|H_sw(X^d) - H_csw(X^d)|`` for ``n > d``.

    At ``n == d`` the expression is 0 although the two entropies can differ
    (``"01"``, ``d = 2``), so callers should only rely on it for ``n > d``.
    """
    if d > n:
        raise ValueError(f"d={d} exceeds n={n}")
    return d * float(alpha) ** d / n * math.log2(n / d)


# -- cached entropies used by the bound evaluators -------------------------


@lru_cache(maxsize=8192)
def block_entropy(x: Sequence, d: int, kind: str) -> float:
    return entropy(dist(x, d, kind))


@lru_cache(maxsize=8192)
def pair_entropies(p: PairedSequence, d: int, kind: str) -> Tuple[float, float, float]:
    """``(H(X^d), H(Y^d|X^d), H(X^d, Y^d))`` under window scheme ``kind``."""
    j = pair_dist(p, d, kind)
    hx = entropy(marginal(j, 0))
    hxy = entropy(j)
    return hx, max(hxy - hx, 0.0), hxy


def to_csv(dist_: EmpiricalDist) -> str:
    """``key,probability`` rows; two-component keys are written as ``a|b``."""
    buf = io.StringIO()
    buf.write("key,probability\n")
    for key in sorted(dist_.counts, key=lambda k: k if isinstance(k, tuple) else (k,)):
        label = "|".join(map(str, key)) if isinstance(key, tuple) else str(key)
        buf.write(f"{label},{dist_.counts[key] / dist_.total:.12g}\n")
    return buf.getvalue()
