"""Finite-state encoders: simulation, losslessness, Kraft sums, tiny-instance compressibility.

An encoder is the table pair ``f[z][a]`` (output bit string, possibly empty)
and ``g[z][a]`` (next state). Conditional encoders are ordinary encoders over
the product alphabet, symbol ``x*beta + y``; their losslessness is checked
given the x-segment.

Information losslessness is checked exhaustively for every input segment
up to a finite ``horizon`` (default ``2 * states``). For the Kraft sum at
block length ``l`` the check is exact whenever ``horizon >= l``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence as _Seq, Tuple

import numpy as np

from .empirical import CapExceededError
from .seqcore import Alphabet, PairedSequence, Sequence

DEFAULT_IL_CAP = 1 << 20
DEFAULT_SEARCH_CAP = 2_000_000


@dataclass(frozen=True)
class FiniteStateEncoder:
    input_alphabet: Alphabet
    states: int
    initial_state: int
    output: Tuple[Tuple[str, ...], ...]
    next_state: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "output", tuple(tuple(r) for r in self.output))
        object.__setattr__(self, "next_state", tuple(tuple(r) for r in self.next_state))
        a = self.input_alphabet.size
        if self.states < 1:
            raise ValueError("an encoder needs at least one state")
        if not 0 <= self.initial_state < self.states:
            raise ValueError(f"initial state {self.initial_state} out of range")
        if len(self.output) != self.states or len(self.next_state) != self.states:
            raise ValueError("output and next-state tables need one row per state")
        for row_f, row_g in zip(self.output, self.next_state):
            if len(row_f) != a or len(row_g) != a:
                raise ValueError("tables must be total over states x symbols")
            if any(set(u) - {"0", "1"} for u in row_f):
                raise ValueError("outputs must be binary strings")
            if any(not 0 <= z < self.states for z in row_g):
                raise ValueError("next state out of range")

    @property
    def alpha(self) -> int:
        return self.input_alphabet.size


@dataclass(frozen=True)
class RunTrace:
    outputs: str
    total_bits: int
    states_visited: Tuple[int, ...]


def run(e: FiniteStateEncoder, x: Sequence) -> RunTrace:
    if x.alpha != e.alpha:
        raise ValueError(f"sequence alphabet size {x.alpha} != encoder alphabet size {e.alpha}")
    z = e.initial_state
    states = [z]
    out = []
    for a in x.symbols:
        out.append(e.output[z][a])
        z = e.next_state[z][a]
        states.append(z)
    bits = "".join(out)
    return RunTrace(bits, len(bits), tuple(states))


def compression_ratio(e: FiniteStateEncoder, x: Sequence) -> float:
    if len(x) == 0:
        raise ValueError("compression ratio of an empty sequence is undefined")
    return run(e, x).total_bits / len(x)


def _check_horizon(alpha: int, horizon: int, cap: int) -> None:
    if horizon < 1:
        raise ValueError("horizon must be positive")
    if alpha ** horizon > cap:
        raise CapExceededError(f"{alpha}**{horizon} segments exceed the enumeration cap {cap}")


def is_information_lossless(e: FiniteStateEncoder, horizon: Optional[int] = None,
                            cap: int = DEFAULT_IL_CAP) -> bool:
    """True iff (start state, output, final state) determines every segment up to ``horizon``."""
    horizon = 2 * e.states if horizon is None else horizon
    _check_horizon(e.alpha, horizon, cap)
    return _lossless(e.output, e.next_state, e.alpha, e.alpha, horizon)


def is_conditionally_lossless(e: FiniteStateEncoder, beta: int, horizon: Optional[int] = None,
                              cap: int = DEFAULT_IL_CAP) -> bool:
    """Losslessness given side information: (state, output, final state, x-segment) determines y."""
    if e.alpha % beta:
        raise ValueError(f"encoder alphabet {e.alpha} is not a product with beta={beta}")
    horizon = 2 * e.states if horizon is None else horizon
    _check_horizon(e.alpha, horizon, cap)
    return _lossless(e.output, e.next_state, e.alpha, beta, horizon)


def _lossless(f, g, size: int, beta: int, horizon: int) -> bool:
    # symbols are x*beta + y and the x-part is known to the decoder;
    # beta == size means there is no side information.
    # Level-by-level over all start states so most encoders fail at short lengths;
    # a collision at length L persists at every longer length
    alpha_x = size // beta
    levels = [[(0, "", z)] for z in range(len(f))]
    for _ in range(horizon):
        for zi, cur in enumerate(levels):
            nxt = []
            for xk, out, st in cur:
                fr, gr = f[st], g[st]
                for sym in range(size):
                    nxt.append((xk * alpha_x + sym // beta, out + fr[sym], gr[sym]))
            if len(set(nxt)) != len(nxt):
                return False
            levels[zi] = nxt
    return True


def kraft_sum(e: FiniteStateEncoder, z: int, l: int) -> Fraction:
    """Exact ``sum over w^l of 2^-(bits emitted on w^l from state z)``."""
    if l < 1:
        raise ValueError("block length must be positive")
    if not 0 <= z < e.states:
        raise ValueError(f"state {z} out of range")
    # K_j(state) = sum_a 2^-|f(state,a)| K_{j-1}(g(state,a)), K_0 = 1
    k = [Fraction(1)] * e.states
    for _ in range(l):
        k = [sum((Fraction(1, 1 << len(e.output[st][a])) * k[e.next_state[st][a]]
                  for a in range(e.alpha)), Fraction(0))
             for st in range(e.states)]
    return k[z]


def kraft_bound(s: int, alpha: int, l: int) -> float:
    """``s (1 + log2(1 + alpha^l / s))``, the generalized Kraft bound for IL encoders."""
    return s * (1.0 + math.log2(1.0 + alpha ** l / s))


def kraft_sum_cond(e: FiniteStateEncoder, beta: int, z: int, xseg: _Seq[int]) -> Fraction:
    """``sum over y^l of 2^-L[f(z, x^l, y^l)]`` for a fixed x-segment."""
    k = {z: Fraction(1)}
    for a in xseg:
        nk: dict = {}
        for st, w in k.items():
            for b in range(beta):
                sym = a * beta + b
                t = e.next_state[st][sym]
                nk[t] = nk.get(t, Fraction(0)) + w / (1 << len(e.output[st][sym]))
        k = nk
    return sum(k.values(), Fraction(0))


# -- enumeration and brute-force compressibility --------------------------


def output_menu(max_output_bits: int) -> Tuple[str, ...]:
    """All binary strings of length 0..max_output_bits, shortest first."""
    return tuple("".join(bits) for ln in range(max_output_bits + 1)
                 for bits in itertools.product("01", repeat=ln))


def search_space_size(s: int, alpha: int, max_output_bits: int) -> int:
    cells = s * alpha
    return len(output_menu(max_output_bits)) ** cells * s ** cells


def enumerate_encoders(s: int, alpha: int, max_output_bits: int,
                       cap: int = DEFAULT_SEARCH_CAP) -> Iterator[FiniteStateEncoder]:
    """Every encoder with ``s`` states, initial state 0, outputs from the menu."""
    size = search_space_size(s, alpha, max_output_bits)
    if size > cap:
        raise CapExceededError(f"{size} candidate encoders exceed the search cap {cap}")
    menu = output_menu(max_output_bits)
    alphabet = Alphabet(alpha)
    cells = s * alpha
    for outs in itertools.product(menu, repeat=cells):
        f = tuple(outs[i * alpha:(i + 1) * alpha] for i in range(s))
        for nxt in itertools.product(range(s), repeat=cells):
            g = tuple(nxt[i * alpha:(i + 1) * alpha] for i in range(s))
            yield FiniteStateEncoder(alphabet, s, 0, f, g)


@lru_cache(maxsize=32)
def lossless_tables(s: int, size: int, beta: int, max_output_bits: int, horizon: int,
                    cap: int = DEFAULT_SEARCH_CAP) -> Tuple[np.ndarray, np.ndarray]:
    """Output-length and next-state tables of every enumerated lossless encoder.

    ``beta`` is the size of the part to be recovered: ``beta == size`` means
    plain losslessness, a proper factor means losslessness given x.
    Encoders with identical (length table, next-state table) are merged,
    since the ratio depends on nothing else.
    """
    size_total = search_space_size(s, size, max_output_bits)
    if size_total > cap:
        raise CapExceededError(f"{size_total} candidate encoders exceed the search cap {cap}")
    menu = output_menu(max_output_bits)
    cells = s * size
    g_all = [tuple(nxt[i * size:(i + 1) * size] for i in range(s))
             for nxt in itertools.product(range(s), repeat=cells)]
    seen = set()
    lens: List[Tuple[int, ...]] = []
    nexts: List[Tuple[int, ...]] = []
    for outs in itertools.product(menu, repeat=cells):
        f = tuple(outs[i * size:(i + 1) * size] for i in range(s))
        ln = tuple(len(u) for u in outs)
        for g in g_all:
            flat_g = tuple(itertools.chain.from_iterable(g))
            key = (ln, flat_g)
            if key in seen:
                continue
            if _lossless(f, g, size, beta, horizon):
                seen.add(key)
                lens.append(ln)
                nexts.append(flat_g)
    shape = (len(lens), s, size)
    return (np.array(lens, dtype=np.int64).reshape(shape),
            np.array(nexts, dtype=np.int64).reshape(shape))


def min_bits(lens: np.ndarray, nexts: np.ndarray, inputs: np.ndarray) -> np.ndarray:
    """Minimum total output bits over all encoders, for each row of ``inputs``."""
    inputs = np.atleast_2d(inputs)
    n_enc = lens.shape[0]
    m, n = inputs.shape
    idx = np.arange(n_enc)[:, None]
    state = np.zeros((n_enc, m), dtype=np.int64)
    bits = np.zeros((n_enc, m), dtype=np.int64)
    for t in range(n):
        a = inputs[:, t][None, :]
        bits += lens[idx, state, a]
        state = nexts[idx, state, a]
    return bits.min(axis=0)


def brute_force_rho_s(x: Sequence, s: int, max_output_bits: int = 2,
                      horizon: Optional[int] = None, cap: int = DEFAULT_SEARCH_CAP) -> float:
    """Minimum ratio over every enumerated encoder with ``s`` states that passes the IL check.

    The enumeration is finite, so the value bounds the true ``s``-state
    compressibility from above.
    """
    if len(x) == 0:
        raise ValueError("empty sequence")
    horizon = 2 * s if horizon is None else horizon
    lens, nexts = lossless_tables(s, x.alpha, x.alpha, max_output_bits, horizon, cap)
    if lens.shape[0] == 0:
        raise ValueError("no lossless encoder in the enumerated class")
    return float(min_bits(lens, nexts, np.array([x.symbols]))[0]) / len(x)


# -- conditional variants -------------------------------------------------


def run_cond(e: FiniteStateEncoder, p: PairedSequence) -> RunTrace:
    return run(e, p.product())


def ratio_cond(e: FiniteStateEncoder, p: PairedSequence) -> float:
    return compression_ratio(e, p.product())


def brute_force_rho_s_cond(p: PairedSequence, s: int, max_output_bits: int = 2,
                           horizon: Optional[int] = None, cap: int = DEFAULT_SEARCH_CAP) -> float:
    """Conditional analogue of :func:`brute_force_rho_s` (side information ``x`` at both ends)."""
    if len(p) == 0:
        raise ValueError("empty sequence")
    horizon = 2 * s if horizon is None else horizon
    size = p.alpha * p.beta
    lens, nexts = lossless_tables(s, size, p.beta, max_output_bits, horizon, cap)
    if lens.shape[0] == 0:
        raise ValueError("no conditionally lossless encoder in the enumerated class")
    return float(min_bits(lens, nexts, np.array([p.product().symbols]))[0]) / len(p)


# -- JSON encoder files ---------------------------------------------------


def encoder_to_dict(e: FiniteStateEncoder) -> dict:
    d = {
        "alphabet_size": e.alpha,
        "states": e.states,
        "initial": e.initial_state,
        "f": [list(r) for r in e.output],
        "g": [list(r) for r in e.next_state],
    }
    if e.input_alphabet.symbol_names is not None:
        d["symbols"] = list(e.input_alphabet.symbol_names)
    return d


def encoder_from_dict(d: dict) -> FiniteStateEncoder:
    names = d.get("symbols")
    size = int(d.get("alphabet_size", len(d["f"][0])))
    return FiniteStateEncoder(
        Alphabet(size, tuple(names) if names else None),
        int(d["states"]),
        int(d.get("initial", 0)),
        d["f"],
        d["g"],
    )


def load_encoder(path) -> FiniteStateEncoder:
    with open(path, encoding="utf-8") as fh:
        return encoder_from_dict(json.load(fh))


def dump_encoder(e: FiniteStateEncoder, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(encoder_to_dict(e), fh, indent=2)
