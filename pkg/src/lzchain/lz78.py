"""LZ78 incremental parsing and the LZ complexity built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence as _Seq, Tuple

from .seqcore import Sequence, check_divides, partition, require_nonempty


@dataclass(frozen=True)
class ParseResult:
    """Phrases of an incremental parse, as ``(start, length)`` ranges."""

    phrases: Tuple[Tuple[int, int], ...]
    last_complete: bool

    @property
    def c(self) -> int:
        return len(self.phrases)

    def phrase_symbols(self, symbols: _Seq[int]) -> List[Tuple[int, ...]]:
        return [tuple(symbols[s:s + ln]) for s, ln in self.phrases]


def xlogx(c: int) -> float:
    """``c * log2(c)`` with the convention 0 log 0 = 1 log 1 = 0."""
    return c * math.log2(c) if c > 1 else 0.0


def parse_symbols(symbols: _Seq[int]) -> ParseResult:
    n = len(symbols)
    require_nonempty(n)
    children: List[dict] = [{}]
    phrases = []
    node = 0
    start = 0
    for i, s in enumerate(symbols):
        nxt = children[node].get(s)
        if nxt is None:
            children.append({})
            children[node][s] = len(children) - 1
            phrases.append((start, i + 1 - start))
            node = 0
            start = i + 1
        else:
            node = nxt
    last_complete = True
    if start < n:
        phrases.append((start, n - start))
        last_complete = False
    return ParseResult(tuple(phrases), last_complete)


def parse(x: Sequence) -> ParseResult:
    """Incremental (LZ78) parse of ``x``.

    Each phrase is the shortest prefix of the remaining input that is not
    already a phrase; the final phrase may repeat an earlier one and is
    counted in ``c``.
    """
    return parse_symbols(x.symbols)


def phrase_count(symbols: _Seq[int]) -> int:
    """``c(x^n)`` without materializing the phrase list."""
    require_nonempty(len(symbols))
    children = [{}]
    node = 0
    c = 0
    for s in symbols:
        nxt = children[node].get(s)
        if nxt is None:
            children.append({})
            children[node][s] = len(children) - 1
            c += 1
            node = 0
        else:
            node = nxt
    return c + (node != 0)


def complexity(x: Sequence) -> float:
    """Normalized LZ complexity ``c log2 c / n``."""
    return xlogx(phrase_count(x.symbols)) / len(x)


def code_length_bound(c: int, alpha: int) -> float:
    """Upper bound ``(c+1) log2(2 alpha (c+1))`` on the LZ78 code length in bits."""
    if c < 1 or alpha < 1:
        raise ValueError("c and alpha must be positive")
    return (c + 1) * math.log2(2 * alpha * (c + 1))


@lru_cache(maxsize=4096)
def block_counts(x: Sequence, k: int) -> Tuple[int, ...]:
    """Phrase counts of the ``k``-blocks of ``x``, parser reset per block."""
    check_divides(len(x), k)
    sym = x.symbols
    return tuple(phrase_count(sym[a:b]) for a, b in partition(len(x), k))


def block_average_complexity(x: Sequence, k: int) -> float:
    """``(1/n) sum_i c_i log2 c_i`` over the ``k``-blocks of ``x``."""
    return sum(xlogx(c) for c in block_counts(x, k)) / len(x)


# -- a concrete LZ78 coder ------------------------------------------------
# Phrase j (1-based) is sent as its predecessor's index in 0..j-1 using
# ceil(log2 j) bits, then the innovation symbol in ceil(log2 alpha) bits.
# A repeated final phrase is sent the same way; the decoder stops at n.


def _width(m: int) -> int:
    return (m - 1).bit_length()


def encode(x: Sequence) -> str:
    sym = x.symbols
    res = parse_symbols(sym)
    sym_bits = _width(x.alpha)
    index_of = {}  # trie node -> phrase number
    children = [{}]
    out = []
    for j, (start, ln) in enumerate(res.phrases, 1):
        node = 0
        for s in sym[start:start + ln - 1]:
            node = children[node][s]
        pred = index_of.get(node, 0)
        last = sym[start + ln - 1]
        if last not in children[node]:
            children.append({})
            children[node][last] = len(children) - 1
            index_of[len(children) - 1] = j
        w = _width(j)
        if w:
            out.append(format(pred, f"0{w}b"))
        if sym_bits:
            out.append(format(last, f"0{sym_bits}b"))
    return "".join(out)


def decode(bits: str, n: int, alpha: int) -> Tuple[int, ...]:
    sym_bits = _width(alpha)
    phrases: List[Tuple[int, ...]] = [()]
    out: List[int] = []
    pos = 0
    j = 1
    while len(out) < n:
        if pos >= len(bits) and (_width(j) or sym_bits):
            raise ValueError("bit string ended early")
        w = _width(j)
        pred = int(bits[pos:pos + w], 2) if w else 0
        pos += w
        s = int(bits[pos:pos + sym_bits], 2) if sym_bits else 0
        pos += sym_bits
        phrase = phrases[pred] + (s,)
        phrases.append(phrase)
        out.extend(phrase)
        j += 1
    if pos != len(bits) or len(out) != n:
        raise ValueError("bit string does not decode to exactly n symbols")
    return tuple(out)


def encoded_length(x: Sequence) -> int:
    """Length in bits of :func:`encode` output, computed from phrase count."""
    c = phrase_count(x.symbols)
    return sum(_width(j) for j in range(1, c + 1)) + c * _width(x.alpha)
