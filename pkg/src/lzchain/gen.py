"""Deterministic, seedable sequence generators.

Randomness comes from SplitMix64 (64-bit state, public algorithm), so every
generated sequence is identical across platforms and Python versions. A
uniform draw is the top 53 bits of one output scaled into [0, 1).
"""

from __future__ import annotations

import bisect
import math
from typing import List, Optional, Sequence as _Seq, Tuple

import numpy as np

from .seqcore import BINARY, Alphabet, PairedSequence, Sequence

_MASK = (1 << 64) - 1
PROB_TOL = 1e-9


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bit(self) -> int:
        return self.next_u64() >> 63


def _check_probs(probs: _Seq[float], size: int, what: str = "probs") -> Tuple[float, ...]:
    probs = tuple(float(v) for v in probs)
    if len(probs) != size:
        raise ValueError(f"{what} has {len(probs)} entries, expected {size}")
    if any(v < 0 or math.isnan(v) for v in probs):
        raise ValueError(f"{what} must be nonnegative")
    if abs(sum(probs) - 1.0) > PROB_TOL:
        raise ValueError(f"{what} must sum to 1, got {sum(probs)!r}")
    return probs


class _Sampler:
    """Inverse-CDF sampling that never returns a zero-probability symbol."""

    def __init__(self, probs: Tuple[float, ...]):
        self.cum = list(np.cumsum(probs))
        self.last = max(i for i, v in enumerate(probs) if v > 0)
        self.probs = probs

    def draw(self, u: float) -> int:
        i = min(bisect.bisect_right(self.cum, u), self.last)
        while self.probs[i] == 0:  # only reachable through rounding at a boundary
            i += 1
        return i


def _alphabet(alpha: int) -> Alphabet:
    if alpha == 2:
        return BINARY
    if alpha <= 10:
        return Alphabet(alpha, tuple(str(i) for i in range(alpha)))
    return Alphabet(alpha)


def iid(alpha: int, n: int, probs: Optional[_Seq[float]] = None, seed: int = 0) -> Sequence:
    """``n`` independent draws from ``probs`` (uniform when omitted)."""
    if probs is None:
        probs = [1.0 / alpha] * alpha
    sampler = _Sampler(_check_probs(probs, alpha))
    rng = SplitMix64(seed)
    return Sequence(_alphabet(alpha), tuple(sampler.draw(rng.random()) for _ in range(n)))


def stationary(transition: _Seq[_Seq[float]]) -> np.ndarray:
    """A stationary distribution of the chain (least-squares solution of pi P = pi, sum 1)."""
    p = np.asarray(transition, dtype=float)
    a = p.shape[0]
    system = np.vstack([p.T - np.eye(a), np.ones((1, a))])
    rhs = np.zeros(a + 1)
    rhs[-1] = 1.0
    pi, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def _check_transition(transition, alpha: int) -> List[Tuple[float, ...]]:
    if len(transition) != alpha:
        raise ValueError(f"transition needs {alpha} rows")
    return [_check_probs(row, alpha, f"transition row {i}") for i, row in enumerate(transition)]


def markov(alpha: int, n: int, transition: _Seq[_Seq[float]], seed: int = 0,
           initial: Optional[int] = None) -> Sequence:
    """First-order Markov chain sample; the first symbol is drawn from the stationary law."""
    rows = _check_transition(transition, alpha)
    rng = SplitMix64(seed)
    samplers = [_Sampler(r) for r in rows]
    if n == 0:
        return Sequence(_alphabet(alpha), ())
    if initial is None:
        cur = _Sampler(tuple(stationary(rows))).draw(rng.random())
    else:
        cur = initial
    out = [cur]
    for _ in range(n - 1):
        cur = samplers[cur].draw(rng.random())
        out.append(cur)
    return Sequence(_alphabet(alpha), tuple(out))


def markov_entropy_rate(transition: _Seq[_Seq[float]]) -> float:
    """``sum_i pi_i H(P_i)`` in bits."""
    p = np.asarray(transition, dtype=float)
    pi = stationary(p)
    with np.errstate(divide="ignore", invalid="ignore"):
        row_h = -np.where(p > 0, p * np.log2(p), 0.0).sum(axis=1)
    return float(pi @ row_h)


def periodic(pattern: str | _Seq[int], n: int, alphabet: Optional[Alphabet] = None) -> Sequence:
    """``pattern`` repeated and truncated to length ``n``.

    A string pattern is mapped through ``alphabet`` (default: its sorted
    distinct characters); an integer pattern needs ``alphabet``.
    """
    if len(pattern) == 0:
        raise ValueError("pattern must be nonempty")
    if isinstance(pattern, str):
        alphabet = alphabet or Alphabet.from_glyphs("".join(sorted(set(pattern))))
        sym = alphabet.encode(pattern)
    else:
        if alphabet is None:
            raise ValueError("integer patterns need an explicit alphabet")
        sym = tuple(pattern)
    reps = -(-n // len(sym))
    return Sequence(alphabet, (sym * reps)[:n])


def check_dominance(segment_lengths: _Seq[int], factor: float) -> None:
    total = 0
    for i, ln in enumerate(segment_lengths):
        if ln < 1:
            raise ValueError("segment lengths must be positive")
        if i and ln < factor * total:
            raise ValueError(
                f"segment {i} has length {ln} < {factor} x preceding total {total}")
        if i and ln <= segment_lengths[i - 1]:
            raise ValueError("segment lengths must be strictly increasing")
        total += ln


def dominant_segments(n: int, factor: float = 4, count: int = 2) -> Tuple[int, ...]:
    """``count`` segment lengths summing to ``n`` with each >= ``factor`` x the preceding total."""
    # shares 1, f, f(1+f), f(1+f)^2, ...: each equals factor * running sum
    shares = [1.0]
    for _ in range(count - 1):
        shares.append(factor * sum(shares))
    unit = n / sum(shares)
    lengths = [max(1, int(unit * s)) for s in shares[:-1]]
    lengths.append(n - sum(lengths))
    check_dominance(lengths, factor)
    return tuple(lengths)


def oscillating_pair(segment_lengths: _Seq[int], seed: int = 0, factor: float = 4) -> PairedSequence:
    """Binary pair alternating between 'x silent, y random' and 'x random, y copies x'.

    Even-indexed segments: ``x`` is all zeros and ``y`` is fair coin flips.
    Odd-indexed segments: ``x`` is fair coin flips and ``y`` equals ``x``.
    """
    check_dominance(segment_lengths, factor)
    rng = SplitMix64(seed)
    xs: List[int] = []
    ys: List[int] = []
    for i, ln in enumerate(segment_lengths):
        if i % 2 == 0:
            xs.extend([0] * ln)
            ys.extend(rng.bit() for _ in range(ln))
        else:
            flips = [rng.bit() for _ in range(ln)]
            xs.extend(flips)
            ys.extend(flips)
    return PairedSequence(Sequence(BINARY, xs), Sequence(BINARY, ys))


def segment_ends(segment_lengths: _Seq[int]) -> Tuple[int, ...]:
    return tuple(np.cumsum(segment_lengths).tolist())


# -- built-in corpus ------------------------------------------------------

TWO_STATE_CHAIN = ((0.9, 0.1), (0.3, 0.7))
PERIODIC_PATTERNS = {2: "01", 3: "011", 6: "010011"}


def corpus(n_values: _Seq[int] = (256, 1024, 4096), seed: int = 1) -> List[Tuple[str, Sequence]]:
    """Named single sequences: constant, periodic, iid fair/biased, Markov, oscillating x and y."""
    out: List[Tuple[str, Sequence]] = []
    for n in n_values:
        out.append((f"constant-{n}", periodic("0", n, BINARY)))
        for period, pat in PERIODIC_PATTERNS.items():
            out.append((f"periodic{period}-{n}", periodic(pat, n, BINARY)))
        out.append((f"iid-fair-{n}", iid(2, n, (0.5, 0.5), seed)))
        out.append((f"iid-biased-{n}", iid(2, n, (0.85, 0.15), seed + 1)))
        out.append((f"markov-{n}", markov(2, n, TWO_STATE_CHAIN, seed + 2)))
        osc = oscillating_pair(dominant_segments(n), seed + 3)
        out.append((f"oscillating-x-{n}", osc.x))
        out.append((f"oscillating-y-{n}", osc.y))
    return out


def corpus_pairs(n_values: _Seq[int] = (256, 1024, 4096), seed: int = 1) -> List[Tuple[str, PairedSequence]]:
    """Named pairs: identical, independent, constant, oscillating, noisy copy of a Markov chain."""
    out: List[Tuple[str, PairedSequence]] = []
    for n in n_values:
        x = iid(2, n, (0.5, 0.5), seed)
        out.append((f"identical-{n}", PairedSequence(x, x)))
        out.append((f"independent-{n}", PairedSequence(x, iid(2, n, (0.5, 0.5), seed + 10))))
        c = periodic("0", n, BINARY)
        out.append((f"constant-{n}", PairedSequence(c, c)))
        out.append((f"oscillating-{n}", oscillating_pair(dominant_segments(n), seed + 3)))
        m = markov(2, n, TWO_STATE_CHAIN, seed + 2)
        noise = iid(2, n, (0.9, 0.1), seed + 11)
        noisy = Sequence(BINARY, tuple(a ^ b for a, b in zip(m.symbols, noise.symbols)))
        out.append((f"markov-noisy-{n}", PairedSequence(m, noisy)))
    return out

