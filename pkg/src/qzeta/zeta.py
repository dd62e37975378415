"""Evaluators for multiple Hurwitz-Lerch and Lipschitz-Lerch zeta functions.

Both k-fold sums are symmetric in their indices, so they are evaluated as a
single series over the index total ``n`` weighted by the number of
compositions of ``n``::

    Phi_k(z, s, a) = sum_{n>=0} C(n+k-1, k-1) z^n (n+a)^-s
    Li_k(z, s)     = sum_{n>=k} C(n-1, k-1)   z^n n^-s

Every evaluator returns a :class:`SeriesValue` carrying a truncation bound
and a separate floating-point rounding estimate.  The literal nested sums
(:func:`phi_nested`, :func:`li_nested`) are kept as oracles.
"""

import math
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import (
    InvalidRegion,
    NotConverged,
    PoleAtOne,
    QZetaInputError,
    UnsupportedDomain,
    ZeroZ,
)
from .numkit import as_complex, bernoulli_numbers, principal_log

EPS = np.finfo(float).eps
UNIT_CIRCLE_TOL = 1e-12
INTEGER_TOL = 1e-12
DEFAULT_MAX_TERMS = 10**7
DEFAULT_MAX_L_TERMS = 200

EM_TERMS = 12


@dataclass(frozen=True)
class SeriesConfig:
    abs_tol: float = 1e-13
    max_terms: int = DEFAULT_MAX_TERMS
    max_l_terms: int = DEFAULT_MAX_L_TERMS

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise QZetaInputError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_terms < 1 or self.max_l_terms < 1:
            raise QZetaInputError("term caps must be at least 1")


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series.

    ``tail_bound`` bounds the omitted tail; ``round_bound`` estimates the
    floating-point error of the retained partial sum.  ``error_bound`` is
    their sum and is what cross-path comparisons should budget against.
    """

    value: complex
    terms_used: int
    tail_bound: float
    converged: bool
    round_bound: float = field(default=0.0)

    @property
    def error_bound(self):
        return self.tail_bound + self.round_bound


def _dist_to_nonpos_int(a):
    nearest = min(0.0, float(round(a.real)))
    return abs(a - nearest)


def region_of(k, z, s):
    """Return ``"disk"`` or ``"circle"``; raise :class:`InvalidRegion` otherwise."""
    if k < 1:
        raise InvalidRegion("k>=1 required")
    r = abs(z)
    if r < 1.0 - UNIT_CIRCLE_TOL:
        return "disk"
    if abs(r - 1.0) <= UNIT_CIRCLE_TOL:
        if s.real > k:
            return "circle"
        raise InvalidRegion("Re(s)>k required when |z|=1")
    raise InvalidRegion("|z|<=1 required")


@dataclass(frozen=True)
class ZetaParams:
    k: int
    z: complex
    s: complex
    a: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "k", int(self.k))
        for name in ("z", "s", "a"):
            object.__setattr__(self, name, as_complex(getattr(self, name), name))
        if _dist_to_nonpos_int(self.a) <= INTEGER_TOL:
            raise InvalidRegion("a must avoid the nonpositive integers")
        region_of(self.k, self.z, self.s)

    @property
    def region(self):
        return region_of(self.k, self.z, self.s)


# -- term machinery ---------------------------------------------------------


def _log_base(x):
    """Principal log of an array of complex bases; negative reals get +i*pi."""
    out = np.log(x.astype(complex))
    neg = (x.imag == 0) & (x.real < 0)
    if np.any(neg):
        out[neg] = np.log(-x.real[neg]) + 1j * np.pi
    return out


def _weights(n, k, w0):
    """``C(n + w0, k-1)`` as floats; ``w0 = k-1`` for Phi, ``-1`` for Li."""
    w = np.ones(n.shape, dtype=float)
    for j in range(1, k):
        w *= (n + (w0 + 1 - j)) / j
    return w


class _Terms:
    """Terms ``C(n+w0, k-1) z^n (n+shift)^-s`` evaluated in vectorized chunks."""

    def __init__(self, k, z, s, shift, w0):
        self.k, self.z, self.s, self.shift, self.w0 = k, z, s, shift, w0
        self.log_z = complex(np.log(complex(z))) if z != 0 else None

    def chunk(self, n):
        logb = _log_base(n + self.shift)
        expo = -self.s * logb
        if self.log_z is not None:
            expo = expo + n * self.log_z
        t = _weights(n, self.k, self.w0) * np.exp(expo)
        # relative error of each term from exp/log argument size
        rel = EPS * (4.0 + self.k + np.abs(expo))
        return t, rel


def _round_estimate(abs_sum, weighted_rel, count):
    return float(weighted_rel + EPS * (math.log2(max(count, 2)) + 1.0) * abs_sum)


def _disk_ratio_bound(n, k, absz, s, shift, w0):
    """Upper bound on ``|t_{m+1}/t_m|`` valid for every ``m >= n``."""
    x = n + shift.real
    if x <= 0.5:
        return math.inf
    ratio = absz * (n + w0 + 1) / (n + w0 + 2 - k)
    if s.real < 0:
        ratio *= (1.0 + 1.0 / x) ** (-s.real)
    if shift.imag != 0.0 and s.imag != 0.0:
        ratio *= math.exp(abs(s.imag) * abs(shift.imag) / (x * x))
    return ratio


def _sum_disk(k, z, s, shift, w0, start, cfg):
    absz = abs(z)
    r_target = 0.5 * (1.0 + absz)
    terms = _Terms(k, z, s, shift, w0)
    total = 0j
    abs_sum = 0.0
    rel_sum = 0.0
    n0 = start
    chunk = 64
    while True:
        stop = min(n0 + chunk, start + cfg.max_terms)
        if stop <= n0:
            raise NotConverged(
                f"series did not converge within {cfg.max_terms} terms",
                terms_used=cfg.max_terms,
            )
        n = np.arange(n0, stop, dtype=float)
        t, rel = terms.chunk(n)
        at = np.abs(t)
        # earliest index where the geometric domination certifies the tail
        for i in range(len(n)):
            rb = _disk_ratio_bound(n0 + i, k, absz, s, shift, w0)
            if rb <= r_target:
                tail = at[i] * rb / (1.0 - rb)
                if tail < cfg.abs_tol:
                    keep = i + 1
                    total += t[:keep].sum()
                    abs_sum += at[:keep].sum()
                    rel_sum += float((at[:keep] * rel[:keep]).sum())
                    used = n0 + keep - start
                    return SeriesValue(
                        complex(total),
                        used,
                        float(tail),
                        True,
                        _round_estimate(abs_sum, rel_sum, used),
                    )
        total += t.sum()
        abs_sum += at.sum()
        rel_sum += float((at * rel).sum())
        n0 = stop
        chunk = min(chunk * 2, 1 << 16)


def _circle_tail(N, k, z, s, shift):
    """Bound on ``|sum_{n>N} t_n|`` for ``|z| = 1``, ``Re(s) > k``."""
    sigma = s.real
    Y = N - abs(shift)
    if Y <= k + 1 or Y < 2 * abs(shift.imag):
        return math.inf
    c1 = (1.0 + (abs(shift) + k) / Y) ** (k - 1)
    E = math.exp(abs(s.imag) * 0.5 * math.pi * abs(shift.imag) / Y)
    c0 = c1 * E / math.factorial(k - 1)
    bound = c0 * Y ** (k - sigma) / (sigma - k)
    gap = abs(1.0 - z)
    if gap > UNIT_CIRCLE_TOL:
        # summation by parts against bounded partial sums of z^n
        K = (k - 1) * Y / (Y - k) + abs(s)
        tv = c0 * K * Y ** (k - 1 - sigma) / (sigma - k + 1)
        bound = min(bound, 2.0 / gap * tv)
    return bound


def _sum_circle(k, z, s, shift, w0, start, cfg):
    n_lo = max(start, int(math.ceil(abs(shift) + 2 * abs(shift.imag) + k + 2)))
    tail = _circle_tail(n_lo, k, z, s, shift)
    n_hi = n_lo
    while tail >= cfg.abs_tol:
        n_hi *= 2
        if n_hi - start > 4 * cfg.max_terms:
            break
        tail = _circle_tail(n_hi, k, z, s, shift)
    if tail >= cfg.abs_tol or n_hi - start + 1 > cfg.max_terms:
        raise NotConverged(
            f"|z|=1 series needs more than {cfg.max_terms} terms",
            terms_used=cfg.max_terms,
            tail_bound=tail,
        )
    while n_hi - n_lo > 1:
        mid = (n_lo + n_hi) // 2
        if _circle_tail(mid, k, z, s, shift) < cfg.abs_tol:
            n_hi = mid
        else:
            n_lo = mid
    N = n_hi
    tail = _circle_tail(N, k, z, s, shift)

    terms = _Terms(k, z, s, shift, w0)
    total = 0j
    abs_sum = 0.0
    rel_sum = 0.0
    step = 1 << 16
    for lo in range(start, N + 1, step):
        n = np.arange(lo, min(lo + step, N + 1), dtype=float)
        t, rel = terms.chunk(n)
        at = np.abs(t)
        total += t.sum()
        abs_sum += at.sum()
        rel_sum += float((at * rel).sum())
    used = N - start + 1
    return SeriesValue(complex(total), used, float(tail), True, _round_estimate(abs_sum, rel_sum, used))


def _weighted_series(k, z, s, shift, w0, start, cfg):
    if region_of(k, z, s) == "disk":
        return _sum_disk(k, z, s, shift, w0, start, cfg)
    return _sum_circle(k, z, s, shift, w0, start, cfg)


def _power(base, s):
    return complex(np.exp(-s * principal_log(base)))


# -- public evaluators ------------------------------------------------------


def phi_collapsed(p, cfg=None):
    """Phi_k(z, s, a) via the composition-weighted single series."""
    return phi_series(p.k, p.z, p.s, p.a, cfg)


def phi_series(k, z, s, a, cfg=None):
    """Unvalidated core of :func:`phi_collapsed`.

    Used on Jackson nodes ``a = q^-n``, which may sit closer to 0 than the
    :class:`ZetaParams` guard allows while still being valid.
    """
    cfg = cfg or SeriesConfig()
    if z == 0:
        v = _power(a, s)
        return SeriesValue(v, 1, 0.0, True, 4 * EPS * abs(v))
    return _weighted_series(k, z, s, a, k - 1, 0, cfg)


def phi(k, z, s, a, cfg=None):
    return phi_collapsed(ZetaParams(k, z, s, a), cfg)


def li(k, z, s, cfg=None):
    """Li_k(z, s) via the composition-weighted single series starting at n = k."""
    cfg = cfg or SeriesConfig()
    z = as_complex(z, "z")
    s = as_complex(s, "s")
    region_of(k, z, s)
    if z == 0:
        return SeriesValue(0j, 0, 0.0, True)
    return _weighted_series(k, z, s, 0j, -1, k, cfg)


def _nested_cutoff(k, z, s, shift, w0, start, cfg):
    """Smallest M with ``sum_{n > M} |t_n| < abs_tol`` for the collapsed magnitudes."""
    absz = abs(z)
    if absz >= 1.0 - UNIT_CIRCLE_TOL:
        raise InvalidRegion("nested oracle requires |z|<1")
    mags = []
    terms = _Terms(k, z, s, shift, w0)
    n = start
    while True:
        t, _ = terms.chunk(np.array([float(n)]))
        mags.append(abs(t[0]))
        rb = _disk_ratio_bound(n, k, absz, s, shift, w0)
        if rb <= 0.5 * (1 + absz) and mags[-1] * rb / (1 - rb) < 1e-3 * cfg.abs_tol:
            remainder = mags[-1] * rb / (1 - rb)
            break
        n += 1
        if n - start > 10**6:
            raise NotConverged("nested oracle cutoff search did not terminate")
    suffix = remainder
    M = n
    for idx in range(len(mags) - 1, -1, -1):
        if suffix + mags[idx] >= cfg.abs_tol:
            break
        suffix += mags[idx]
        M = start + idx - 1
    return max(M, start), suffix


def _nested_sum(k, z, s, shift, lo, M, cfg):
    """Literal sum over the cube ``lo <= m_i <= M``."""
    if (M - lo + 1) ** k > cfg.max_terms:
        raise NotConverged(f"nested cube of side {M - lo + 1} exceeds max_terms")
    # per-total lookup; every tuple is still visited individually
    tot = np.arange(0, k * M + 1, dtype=float)
    vals = np.zeros(tot.shape, dtype=complex)
    ok = tot >= k * lo
    expo = -s * _log_base(tot[ok] + shift) + tot[ok] * complex(np.log(complex(z)))
    vals[ok] = np.exp(expo)
    idx = np.arange(lo, M + 1)
    total = 0j
    abs_sum = 0.0
    if k <= 3:
        grid = sum(np.ix_(*([idx] * k)))
        sel = vals[grid]
        total = complex(sel.sum())
        abs_sum = float(np.abs(sel).sum())
    else:
        inner = sum(np.ix_(*([idx] * (k - 1))))
        for m1 in idx:
            sel = vals[inner + m1]
            total += complex(sel.sum())
            abs_sum += float(np.abs(sel).sum())
    count = (M - lo + 1) ** k
    rel = EPS * (4.0 + float(np.max(np.abs(expo))))
    return total, count, abs_sum * rel + EPS * (math.log2(max(count, 2)) + k) * abs_sum


def phi_nested(p, cfg=None):
    """Literal k-fold sum for Phi_k, each index truncated at the same M (oracle)."""
    cfg = cfg or SeriesConfig()
    if p.k > 4:
        raise InvalidRegion("nested oracle supports k<=4")
    if abs(p.z) >= 1.0 - UNIT_CIRCLE_TOL:
        raise InvalidRegion("nested oracle requires |z|<1")
    if p.z == 0:
        v = _power(p.a, p.s)
        return SeriesValue(v, 1, 0.0, True, 4 * EPS * abs(v))
    M, tail = _nested_cutoff(p.k, p.z, p.s, p.a, p.k - 1, 0, cfg)
    total, count, rb = _nested_sum(p.k, p.z, p.s, p.a, 0, M, cfg)
    return SeriesValue(total, count, float(tail), True, float(rb))


def li_nested(k, z, s, cfg=None):
    """Literal k-fold sum for Li_k over positive indices (oracle)."""
    cfg = cfg or SeriesConfig()
    z = as_complex(z, "z")
    s = as_complex(s, "s")
    if k > 4:
        raise InvalidRegion("nested oracle supports k<=4")
    if abs(z) >= 1.0 - UNIT_CIRCLE_TOL:
        raise InvalidRegion("nested oracle requires |z|<1")
    if z == 0:
        return SeriesValue(0j, 0, 0.0, True)
    M, tail = _nested_cutoff(k, z, s, 0j, -1, k, cfg)
    total, count, rb = _nested_sum(k, z, s, 0j, 1, M, cfg)
    return SeriesValue(total, count, float(tail), True, float(rb))


def hurwitz_zeta(s, a, cfg=None):
    """Hurwitz zeta continued to ``s != 1`` by Euler–Maclaurin summation."""
    s = as_complex(s, "s")
    a = as_complex(a, "a")
    if abs(s - 1) <= 1e-10:
        raise PoleAtOne("s = 1 is the pole of the Hurwitz zeta function")
    if a.real <= 0:
        raise UnsupportedDomain("Re(a)>0 required")
    cfg = cfg or SeriesConfig()
    N = int(math.ceil(max(10.0, abs(s), 2 * abs(s.imag))))
    n = np.arange(N, dtype=float)
    head = np.exp(-s * np.log(n + a))
    x = N + a
    logx = complex(np.log(x))
    xs = complex(np.exp(-s * logx))
    value = complex(head.sum()) + x * xs / (s - 1) + 0.5 * xs
    abs_sum = float(np.abs(head).sum()) + abs(x * xs / (s - 1)) + 0.5 * abs(xs)
    B = bernoulli_numbers(2 * EM_TERMS + 3)
    rising = s  # (s)_{2j-1}
    xpow = xs / x  # x^{-s-1}
    fact = 2.0  # (2j)!
    for j in range(1, EM_TERMS + 1):
        corr = B[2 * j] / fact * rising * xpow
        value += corr
        abs_sum += abs(corr)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow /= x * x
        fact *= (2 * j + 1) * (2 * j + 2)
    j = EM_TERMS + 1
    omitted = abs(B[2 * j] / fact * rising * xpow)
    sigma = s.real + 2 * j - 1
    if sigma > 0:
        omitted *= abs(s + 2 * j - 1) / sigma
    rb = EPS * (N + 4 + abs(s) * abs(logx)) * abs_sum
    return SeriesValue(value, N + EM_TERMS, float(omitted), omitted <= cfg.abs_tol, float(rb))


def riemann_zeta(s, cfg=None):
    return hurwitz_zeta(s, 1.0, cfg)


def theorem1_weights(k):
    """Binomial weights ``C(k, r)`` of ``Phi_{k-r}`` for ``r = 0..k-1``."""
    return [comb(k, r) for r in range(k)]


def theorem1_rhs(p, cfg=None):
    """Order reduction: ``a^-s + sum_r C(k,r) z^(k-r) Phi_{k-r}(z, s, a + k - r)``."""
    cfg = cfg or SeriesConfig()
    if p.z == 0:
        raise ZeroZ("z != 0 required")
    head = _power(p.a, p.s)
    value = head
    tail = 0.0
    rnd = 4 * EPS * abs(head)
    used = 1
    ok = True
    for r, w in enumerate(theorem1_weights(p.k)):
        j = p.k - r
        sub = phi_collapsed(ZetaParams(j, p.z, p.s, p.a + j), cfg)
        factor = w * p.z**j
        value += factor * sub.value
        tail += abs(factor) * sub.tail_bound
        rnd += abs(factor) * sub.round_bound + 4 * EPS * abs(factor * sub.value)
        used += sub.terms_used
        ok = ok and sub.converged
    return SeriesValue(value, used, float(tail), ok, float(rnd))
