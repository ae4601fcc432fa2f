"""LZ78 and conditional LZ complexity, empirical entropies, finite-state encoders, and finite-n bounds."""

from .seqcore import Alphabet, BINARY, PairedSequence, Sequence, pair, partition, unpair
from .lz78 import ParseResult, block_average_complexity, complexity, parse
from .condlz import block_average_cond_complexity, cond_complexity, joint_parse
from .empirical import EmpiricalDist, CapExceededError, dist, entropy
from .fse import FiniteStateEncoder, run, compression_ratio
from .bounds import BoundReport

__all__ = [
    "Alphabet", "BINARY", "PairedSequence", "Sequence", "pair", "partition", "unpair",
    "ParseResult", "block_average_complexity", "complexity", "parse",
    "block_average_cond_complexity", "cond_complexity", "joint_parse",
    "EmpiricalDist", "CapExceededError", "dist", "entropy",
    "FiniteStateEncoder", "run", "compression_ratio",
    "BoundReport",
]
