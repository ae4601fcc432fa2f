"""Joint incremental parsing of sequence pairs and conditional LZ complexity.

The pair is parsed over the product alphabet. Each joint phrase is then
grouped by its x-projection; the group sizes ``c_l`` give the conditional
complexity ``(1/n) sum_l c_l log2 c_l``.

The conditional coder below is decodable by a receiver that already holds
``x``. Phrase ``j`` starting at position ``t`` is sent as

* the index of its predecessor among the *candidates*: the empty phrase plus
  every earlier joint phrase whose x-projection matches ``x`` from ``t`` on
  and still fits before the end, using ``ceil(log2 N)`` bits for ``N``
  candidates;
* the innovation y-symbol, using ``ceil(log2 beta)`` bits.

Predecessors of equal x-projection form exactly the group of that
projection, so the leading cost is the group-indexing term; the remainder
(boundary information the decoder cannot infer from ``x``) is reported as the
measured redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .lz78 import ParseResult, _width, parse_symbols, xlogx
from .seqcore import PairedSequence, Sequence, check_divides, partition, require_nonempty


@dataclass(frozen=True)
class JointParseResult:
    joint: ParseResult
    x_phrases: Tuple[Tuple[int, ...], ...]
    cond_counts: Tuple[int, ...]

    @property
    def c_joint(self) -> int:
        return self.joint.c

    @property
    def c_x(self) -> int:
        return len(self.x_phrases)


def _joint_parse_xy(xs, ys, beta) -> JointParseResult:
    require_nonempty(len(xs))
    joint = parse_symbols([a * beta + b for a, b in zip(xs, ys)])
    counts: Dict[Tuple[int, ...], int] = {}
    for start, ln in joint.phrases:
        key = tuple(xs[start:start + ln])
        counts[key] = counts.get(key, 0) + 1
    # dicts keep first-appearance order, which is the x(1), x(2), ... order
    return JointParseResult(joint, tuple(counts), tuple(counts.values()))


def joint_parse(p: PairedSequence) -> JointParseResult:
    return _joint_parse_xy(p.x.symbols, p.y.symbols, p.beta)


def cond_complexity(p: PairedSequence) -> float:
    """``rho_LZ(y|x) = (1/n) sum_l c_l log2 c_l``."""
    res = joint_parse(p)
    return sum(xlogx(c) for c in res.cond_counts) / len(p)


@lru_cache(maxsize=4096)
def _block_cond_sums(p: PairedSequence, k: int) -> Tuple[float, ...]:
    check_divides(len(p), k)
    xs, ys, beta = p.x.symbols, p.y.symbols, p.beta
    out = []
    for a, b in partition(len(p), k):
        res = _joint_parse_xy(xs[a:b], ys[a:b], beta)
        out.append(sum(xlogx(c) for c in res.cond_counts))
    return tuple(out)


def block_average_cond_complexity(p: PairedSequence, k: int) -> float:
    """``(k/n) sum_i rho_LZ(y_block_i | x_block_i)`` with the parser reset per block."""
    return sum(_block_cond_sums(p, k)) / len(p)


# -- conditional coder ----------------------------------------------------


class _JointTrie:
    """Joint phrase trie; edges keyed by product symbol ``x*beta + y``."""

    def __init__(self, beta: int):
        self.beta = beta
        self.children: List[Dict[int, int]] = [{}]
        self.depth = [0]

    def add(self, node: int, sym: int) -> int:
        child = self.children[node].get(sym)
        if child is None:
            self.children.append({})
            self.depth.append(self.depth[node] + 1)
            child = len(self.children) - 1
            self.children[node][sym] = child
        return child

    def candidates(self, xs, t: int) -> List[int]:
        """Nodes whose x-path equals ``xs[t:t+depth]`` with ``depth <= n-1-t``.

        Ordered by depth, then by creation order; node 0 is the empty phrase.
        """
        n = len(xs)
        beta = self.beta
        out = [0]
        frontier = [0]
        pos = t
        while frontier and pos < n - 1:
            base = xs[pos] * beta
            nxt = []
            for node in frontier:
                ch = self.children[node]
                for yv in range(beta):
                    c = ch.get(base + yv)
                    if c is not None:
                        nxt.append(c)
            nxt.sort()
            out.extend(nxt)
            frontier = nxt
            pos += 1
        return out


def cond_encode(p: PairedSequence) -> str:
    """Bit string describing ``y`` to a decoder that knows ``x``."""
    xs, ys, beta = p.x.symbols, p.y.symbols, p.beta
    require_nonempty(len(xs))
    prod = [a * beta + b for a, b in zip(xs, ys)]
    res = parse_symbols(prod)
    trie = _JointTrie(beta)
    sym_bits = _width(beta)
    out = []
    for start, ln in res.phrases:
        cands = trie.candidates(xs, start)
        node = 0
        for s in prod[start:start + ln - 1]:
            node = trie.children[node][s]
        w = _width(len(cands))
        if w:
            out.append(format(cands.index(node), f"0{w}b"))
        if sym_bits:
            out.append(format(ys[start + ln - 1], f"0{sym_bits}b"))
        trie.add(node, prod[start + ln - 1])
    return "".join(out)


def cond_decode(bits: str, x: Sequence, beta: int) -> Tuple[int, ...]:
    """Inverse of :func:`cond_encode` given the side information ``x``."""
    xs = x.symbols
    n = len(xs)
    trie = _JointTrie(beta)
    sym_bits = _width(beta)
    # y-part of the phrase ending at each trie node
    ypart: Dict[int, Tuple[int, ...]] = {0: ()}
    ys: List[int] = []
    pos = 0
    while len(ys) < n:
        t = len(ys)
        cands = trie.candidates(xs, t)
        w = _width(len(cands))
        if pos + w + sym_bits > len(bits):
            raise ValueError("bit string ended early")
        idx = int(bits[pos:pos + w], 2) if w else 0
        pos += w
        if idx >= len(cands):
            raise ValueError("candidate index out of range")
        node = cands[idx]
        yv = int(bits[pos:pos + sym_bits], 2) if sym_bits else 0
        pos += sym_bits
        if yv >= beta:
            raise ValueError("innovation symbol out of range")
        phrase_y = ypart[node] + (yv,)
        end = t + len(phrase_y)
        child = trie.add(node, xs[end - 1] * beta + yv)
        ypart[child] = phrase_y
        ys.extend(phrase_y)
    if pos != len(bits):
        raise ValueError("trailing bits after the last phrase")
    return tuple(ys)


def cond_code_length(p: PairedSequence) -> int:
    return len(cond_encode(p))


def cond_redundancy(p: PairedSequence) -> float:
    """Measured per-symbol redundancy ``cond_code_length/n - rho_LZ(y|x)``."""
    return cond_code_length(p) / len(p) - cond_complexity(p)


@lru_cache(maxsize=4096)
def block_cond_redundancy(p: PairedSequence, k: int) -> Tuple[float, ...]:
    """Per-block measured redundancy of the conditional coder at block length ``k``."""
    check_divides(len(p), k)
    return tuple(cond_redundancy(p[a:b]) for a, b in partition(len(p), k))
