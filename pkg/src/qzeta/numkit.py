"""Scalar kernel: principal-branch powers, q-numbers, binomials, Bernoulli numbers."""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BranchCut, CountTooLarge, QZetaInputError

MAX_BERNOULLI = 60


def as_complex(x, name="value"):
    """Coerce to ``complex`` and reject non-finite parts."""
    c = complex(x)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise QZetaInputError(f"{name} must be finite, got {c!r}")
    return c


@dataclass(frozen=True)
class QParam:
    """Jackson deformation parameter, strictly greater than one."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q) or q <= 1.0:
            raise QZetaInputError(f"q must exceed 1, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def log_q(self):
        return math.log(self.q)

    @classmethod
    def of(cls, q):
        return q if isinstance(q, cls) else cls(q)


def q_number(w, q):
    """``[w]_q = (q**w - 1)/(q - 1)`` for complex ``w``.

    Integer ``w`` uses exact float powers; otherwise ``q**w - 1`` goes through
    ``expm1`` so small ``w`` keeps its relative accuracy.
    """
    qp = QParam.of(q)
    w = as_complex(w, "w")
    x = w * qp.log_q
    if w.imag == 0.0 and w.real.is_integer() and abs(w.real) <= 1024:
        num = complex(qp.q ** int(w.real) - 1.0)
    elif x.imag == 0.0:
        num = complex(math.expm1(x.real))
    else:
        # exp(x) - 1 = expm1(re)·e^{i im} + (e^{i im} - 1)
        rot = cmath.exp(1j * x.imag)
        num = math.expm1(x.real) * rot + (rot - 1.0)
    return num / (qp.q - 1.0)


def gen_binom(alpha, l):
    """Generalized binomial coefficient ``binom(alpha, l)`` by running product."""
    if l < 0:
        raise QZetaInputError(f"l must be nonnegative, got {l}")
    alpha = as_complex(alpha, "alpha")
    out = 1.0 + 0j
    for j in range(l):
        out *= (alpha - j) / (j + 1)
    return out


def binom_series(alpha, count):
    """``[binom(alpha, 0), ..., binom(alpha, count-1)]`` sharing one running product."""
    alpha = as_complex(alpha, "alpha")
    out = []
    c = 1.0 + 0j
    for j in range(count):
        out.append(c)
        c *= (alpha - j) / (j + 1)
    return out


def principal_log(base):
    base = complex(base)
    if base.imag == 0.0 and base.real < 0.0:
        return complex(math.log(-base.real), math.pi)
    return cmath.log(base)


def cpow(base, expo):
    """``exp(expo * Log(base))`` on the principal branch.

    Raises :class:`BranchCut` for bases on the closed non-positive real axis.
    """
    base = as_complex(base, "base")
    expo = as_complex(expo, "expo")
    if base.imag == 0.0 and base.real <= 0.0:
        raise BranchCut(f"base {base!r} lies on the non-positive real axis")
    return cmath.exp(expo * cmath.log(base))


@lru_cache(maxsize=None)
def _bernoulli_exact(count):
    # Akiyama–Tanigawa yields B1 = +1/2; flipped below.
    out = []
    a = [Fraction(0)] * count
    for m in range(count):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if count > 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli_numbers(count):
    """B_0 .. B_{count-1} as floats, with B_1 = -1/2."""
    if count < 1:
        raise QZetaInputError("count must be positive")
    if count > MAX_BERNOULLI:
        raise CountTooLarge(f"count={count} exceeds {MAX_BERNOULLI}")
    return [float(b) for b in _bernoulli_exact(count)]
