"""Alphabets, sequences, paired sequences and block partitions.

Symbols are dense integer indices into a declared alphabet. The declared
size (not the set of symbols that happen to occur) is what every bound in
this package is a function of.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence as _Seq, Tuple


@dataclass(frozen=True)
class Alphabet:
    size: int
    symbol_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.size}")
        if self.symbol_names is not None:
            names = tuple(self.symbol_names)
            object.__setattr__(self, "symbol_names", names)
            if len(names) != self.size:
                raise ValueError(
                    f"{len(names)} symbol names given for alphabet of size {self.size}"
                )
            if len(set(names)) != len(names):
                raise ValueError("symbol names must be distinct")

    @classmethod
    def from_glyphs(cls, glyphs: str) -> "Alphabet":
        """Alphabet whose i-th symbol is displayed as ``glyphs[i]``."""
        return cls(len(glyphs), tuple(glyphs))

    def glyph(self, index: int) -> str:
        if self.symbol_names is None:
            return str(index)
        return self.symbol_names[index]

    def encode(self, text: str) -> Tuple[int, ...]:
        if self.symbol_names is None:
            raise ValueError("alphabet has no glyphs; cannot map text to symbols")
        lookup = {g: i for i, g in enumerate(self.symbol_names)}
        try:
            return tuple(lookup[ch] for ch in text)
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} is not in the declared alphabet") from None

    def decode(self, symbols: Iterable[int]) -> str:
        if self.symbol_names is not None and all(len(g) == 1 for g in self.symbol_names):
            return "".join(self.symbol_names[s] for s in symbols)
        return " ".join(self.glyph(s) for s in symbols)


BINARY = Alphabet(2, ("0", "1"))


@dataclass(frozen=True)
class Sequence:
    alphabet: Alphabet
    symbols: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        size = self.alphabet.size
        for s in symbols:
            if not 0 <= s < size:
                raise ValueError(f"symbol index {s} outside alphabet of size {size}")

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | str) -> "Sequence":
        if isinstance(alphabet, str):
            alphabet = Alphabet.from_glyphs(alphabet)
        return cls(alphabet, alphabet.encode(text))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Sequence(self.alphabet, self.symbols[item])
        return self.symbols[item]

    @property
    def alpha(self) -> int:
        return self.alphabet.size

    def text(self) -> str:
        return self.alphabet.decode(self.symbols)

    def __repr__(self) -> str:
        body = self.text() if len(self) <= 40 else self.text()[:37] + "..."
        return f"Sequence({body!r}, alpha={self.alpha})"


@dataclass(frozen=True)
class PairedSequence:
    x: Sequence
    y: Sequence

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError(f"length mismatch: len(x)={len(self.x)}, len(y)={len(self.y)}")

    def __len__(self) -> int:
        return len(self.x)

    @property
    def alpha(self) -> int:
        return self.x.alpha

    @property
    def beta(self) -> int:
        return self.y.alpha

    def product(self) -> Sequence:
        """The pair as one sequence over the product alphabet: symbol ``x*beta + y``."""
        beta = self.beta
        return Sequence(
            Alphabet(self.alpha * beta),
            tuple(a * beta + b for a, b in zip(self.x.symbols, self.y.symbols)),
        )

    def swap(self) -> "PairedSequence":
        return PairedSequence(self.y, self.x)

    def __getitem__(self, item: slice) -> "PairedSequence":
        return PairedSequence(self.x[item], self.y[item])


def pair(x: Sequence, y: Sequence) -> PairedSequence:
    return PairedSequence(x, y)


def unpair(product: Sequence, x_alphabet: Alphabet, y_alphabet: Alphabet) -> PairedSequence:
    """Inverse of :meth:`PairedSequence.product`."""
    beta = y_alphabet.size
    if product.alpha != x_alphabet.size * beta:
        raise ValueError("product alphabet size does not match alpha*beta")
    xs = tuple(s // beta for s in product.symbols)
    ys = tuple(s % beta for s in product.symbols)
    return PairedSequence(Sequence(x_alphabet, xs), Sequence(y_alphabet, ys))


@dataclass(frozen=True)
class BlockPartition:
    n: int
    k: int
    blocks: Tuple[Tuple[int, int], ...]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def partition(n: int, k: int) -> BlockPartition:
    """Split ``range(n)`` into consecutive half-open blocks of length ``k``."""
    if k < 1 or n < 1:
        raise ValueError(f"n and k must be positive, got n={n}, k={k}")
    if n % k:
        raise ValueError(f"block length {k} does not divide n={n}")
    return BlockPartition(n, k, tuple((i, i + k) for i in range(0, n, k)))


def check_divides(n: int, k: int, what: str = "k") -> None:
    if k < 1:
        raise ValueError(f"{what} must be a positive integer, got {k}")
    if n % k:
        raise ValueError(f"{what}={k} does not divide n={n}")


def require_nonempty(n: int) -> None:
    if n < 1:
        raise ValueError("operation requires a nonempty sequence")


# -- file formats ---------------------------------------------------------

_HEADER = "alphabet:"


def dumps_text(seq: Sequence) -> str:
    names = seq.alphabet.symbol_names
    if names is None or any(len(g) != 1 for g in names):
        raise ValueError("text format needs an alphabet of single-character glyphs")
    return f"{_HEADER} {''.join(names)}\n{seq.text()}\n"


def loads_text(text: str) -> Sequence:
    header, _, body = text.partition("\n")
    if not header.startswith(_HEADER):
        raise ValueError(f"sequence file must start with '{_HEADER} <glyphs>'")
    glyphs = header[len(_HEADER):]
    # exactly one separating space after the colon; the rest is the glyph list
    if glyphs.startswith(" "):
        glyphs = glyphs[1:]
    glyphs = glyphs.rstrip("\r")
    alphabet = Alphabet.from_glyphs(glyphs)
    drop = {"\n", "\r"} - set(glyphs)
    if " " not in glyphs:
        drop.add(" ")
    if "\t" not in glyphs:
        drop.add("\t")
    body = "".join(ch for ch in body if ch not in drop)
    return Sequence(alphabet, alphabet.encode(body))


def _sidecar(path: str | os.PathLike) -> str:
    return os.fspath(path) + ".json"


def write_sequence(seq: Sequence, path: str | os.PathLike, binary: bool = False) -> None:
    """Write ``seq`` as text (header + stream) or as bytes with a JSON sidecar."""
    if not binary:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_text(seq))
        return
    if seq.alpha > 256:
        raise ValueError("binary format holds at most 256 symbols")
    with open(path, "wb") as fh:
        fh.write(bytes(seq.symbols))
    descriptor = {"size": seq.alpha}
    if seq.alphabet.symbol_names is not None:
        descriptor["symbols"] = list(seq.alphabet.symbol_names)
    with open(_sidecar(path), "w", encoding="utf-8") as fh:
        json.dump(descriptor, fh)


def read_sequence(path: str | os.PathLike) -> Sequence:
    """Read a sequence file; a ``<path>.json`` sidecar selects the binary format."""
    sidecar = _sidecar(path)
    if os.path.exists(sidecar):
        with open(sidecar, encoding="utf-8") as fh:
            descriptor = json.load(fh)
        names = descriptor.get("symbols")
        alphabet = Alphabet(int(descriptor["size"]), tuple(names) if names else None)
        with open(path, "rb") as fh:
            return Sequence(alphabet, tuple(fh.read()))
    with open(path, encoding="utf-8") as fh:
        return loads_text(fh.read())

