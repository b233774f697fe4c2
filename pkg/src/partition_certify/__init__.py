"""Certified explicit bounds for the partition function p(n).

Modules
-------
balls         ball arithmetic with rigorous rounding and adaptive comparison
exact         exact p(n) by two independent algorithms
ring          exact arithmetic in Q[pi, 1/pi, sqrt 6]
coefficients  expansion coefficients g(t) and their building blocks
closed_forms  closed forms of the inner sums and the telescoping certificate
bounds        explicit bound constants and the certified sandwich
lemmas        range-certified checks of the auxiliary inequalities
cli           command-line front end
"""

from .balls import RealBall, Tri, adaptive_decide, certify_cmp
from .bounds import BoundPair, corollary4_bounds, main_bounds
from .coefficients import g, omega
from .exact import PartitionTable, p_dp_oracle, p_pentagonal_table
from .report import VerificationReport
from .ring import RingElem

__all__ = [
    "BoundPair",
    "PartitionTable",
    "RealBall",
    "RingElem",
    "Tri",
    "VerificationReport",
    "adaptive_decide",
    "certify_cmp",
    "corollary4_bounds",
    "g",
    "main_bounds",
    "omega",
    "p_dp_oracle",
    "p_pentagonal_table",
]

__version__ = "0.1.0"
