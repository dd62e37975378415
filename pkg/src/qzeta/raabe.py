"""Raabe-type Jackson-integral identities, evaluated side by side.

Each identity has a left side computed as a Jackson sum over values of the
multiple Hurwitz-Lerch zeta function, and a right side computed as a series
in ``l`` over Lipschitz-Lerch (or Riemann) zeta values.  The two paths share
no code beyond the scalar kernel and the collapsed-series engine.

Identity tags:

``RA1``      integral of Phi_k(z, s, a)
``RA2``      integral of Phi_k(z, s, k - a)
``RA3``      integral of Phi_k(z, s, k + a), checked against the alternating
             series shared with ``RA2``
``LEMMA31``  integral of Phi_{k-r}(z, s, a + k - r)
``THM12``    order reduction of Phi_k into lower orders
``COR_RA1W`` integral of zeta(s, a)
``COR_RA2W`` integral of zeta(s, 1 - a)

The ``k + a`` integral actually equals the *non-alternating* series, i.e. the
``LEMMA31`` right side at ``r = 0``; :func:`rhs_ra3_corrected` evaluates it.
"""

import enum
from dataclasses import dataclass
from math import comb

from .errors import InvalidRegion, NotConverged, RegionViolation, ZeroZ, ZetaPoleInSeries
from .numkit import QParam, as_complex, binom_series, q_number
from .qint import JacksonConfig, jackson_integral, jackson_power_integral
from .zeta import (
    EPS,
    SeriesConfig,
    SeriesValue,
    ZetaParams,
    hurwitz_zeta,
    li,
    phi_collapsed,
    phi_series,
    region_of,
    riemann_zeta,
    theorem1_rhs,
)

POLE_TOL = 1e-10
CONSECUTIVE_SMALL = 3


class IdentityId(str, enum.Enum):
    RA1 = "ra1"
    RA2 = "ra2"
    RA3 = "ra3"
    LEMMA31 = "lemma31"
    THM12 = "thm12"
    COR_RA1W = "cor_ra1w"
    COR_RA2W = "cor_ra2w"

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown identity {text!r}")


# -- region checks ----------------------------------------------------------


def _check_disk_re_lt_one(k, z, s):
    if k < 1:
        raise RegionViolation("k>=1 required")
    if not abs(z) < 1:
        raise RegionViolation("|z|<1 required")
    if not s.real < 1:
        raise RegionViolation("Re(s)<1 required")


def _check_zeta_region(k, z, s):
    if z == 0:
        raise ZeroZ("z != 0 required")
    try:
        region_of(k, z, s)
    except InvalidRegion as exc:
        raise RegionViolation(str(exc)) from exc


def _check_q_pole(s, q):
    if abs(q_number(1 - s, q)) <= 1e-12:
        raise RegionViolation("[1-s]_q != 0 required")


# -- right-hand sides -------------------------------------------------------


def _l_series(coeff, value_at, q, cfg):
    """``sum_l coeff(l) * value_at(l) / [l+1]_q`` with the three-small-terms rule.

    ``value_at`` returns a :class:`SeriesValue`; its error bounds are carried.
    """
    total = 0j
    err = 0.0
    terms = 0
    small = 0
    prev = None
    est = 0.0
    for l in range(cfg.max_l_terms):
        c = coeff(l)
        if c == 0:
            term, sv_err = 0j, 0.0
            terms += 1
        else:
            sv = value_at(l)
            w = c / q_number(l + 1, q)
            term = w * sv.value
            sv_err = abs(w) * sv.error_bound + 4 * EPS * abs(term)
            terms += sv.terms_used
        total += term
        err += sv_err
        mag = abs(term)
        est = mag
        if prev and mag:
            rho = mag / prev
            if rho < 1:
                est = mag * rho / (1 - rho)
        prev = mag
        small = small + 1 if mag < cfg.abs_tol and est < cfg.abs_tol else 0
        if small >= CONSECUTIVE_SMALL:
            return SeriesValue(total, terms, float(est), True, float(err))
    raise NotConverged(f"l-series did not converge within {cfg.max_l_terms} terms", terms_used=terms)


def _li_l_series(j, z, s, q, cfg, alternating):
    coeffs = binom_series(-s, cfg.max_l_terms)
    sign = (lambda l: -1.0 if l % 2 else 1.0) if alternating else (lambda l: 1.0)
    return _l_series(
        lambda l: sign(l) * coeffs[l],
        lambda l: li(j, z, s + l, cfg),
        q,
        cfg,
    )


def _scaled(sv, factor):
    return SeriesValue(
        sv.value * factor,
        sv.terms_used,
        sv.tail_bound * abs(factor),
        sv.converged,
        sv.round_bound * abs(factor) + 4 * EPS * abs(sv.value * factor),
    )


def rhs_ra1(k, z, s, q, cfg=None):
    """``1/[1-s]_q + sum_r C(k,r) sum_l binom(-s,l) Li_{k-r}(z, s+l)/[l+1]_q``."""
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    _check_disk_re_lt_one(k, z, s)
    _check_q_pole(s, q)
    head = jackson_power_integral(s, q)
    value, tail, rnd, used = head, 0.0, 4 * EPS * abs(head), 1
    for r in range(k):
        sub = _li_l_series(k - r, z, s, q, cfg, alternating=False)
        w = comb(k, r)
        value += w * sub.value
        tail += w * sub.tail_bound
        rnd += w * sub.round_bound
        used += sub.terms_used
    return SeriesValue(value, used, tail, True, rnd)


def rhs_ra23(k, z, s, q, cfg=None):
    """``z^-k sum_l (-1)^l binom(-s,l) Li_k(z, s+l)/[l+1]_q`` (shared by RA2 and RA3)."""
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    _check_zeta_region(k, z, s)
    return _scaled(_li_l_series(k, z, s, q, cfg, alternating=True), z ** (-k))


def rhs_lemma31(k, r, z, s, q, cfg=None):
    """``z^-(k-r) sum_l binom(-s,l) Li_{k-r}(z, s+l)/[l+1]_q``."""
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    if not 0 <= r < k:
        raise RegionViolation("0<=r<k required")
    _check_zeta_region(k - r, z, s)
    j = k - r
    return _scaled(_li_l_series(j, z, s, q, cfg, alternating=False), z ** (-j))


def rhs_ra3_corrected(k, z, s, q, cfg=None):
    """Right side that the ``k + a`` integral actually equals (no alternating sign)."""
    return rhs_lemma31(k, 0, z, s, q, cfg)


# -- left-hand sides --------------------------------------------------------


def _jackson_of_phi(order, z, s, q, shift, cfg):
    """Jackson integral of ``a -> Phi_order(z, s, shift(a))``."""
    jcfg = JacksonConfig(q, cfg.abs_tol)
    region_of(order, z, s)
    return jackson_integral(lambda a: phi_series(order, z, s, complex(shift(a)), cfg), jcfg)


def lhs_ra1(k, z, s, q, cfg=None):
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    _check_disk_re_lt_one(k, z, s)
    return _jackson_of_phi(k, z, s, q, lambda a: a, cfg)


def lhs_ra2(k, z, s, q, cfg=None):
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    _check_zeta_region(k, z, s)
    return _jackson_of_phi(k, z, s, q, lambda a: k - a, cfg)


def lhs_ra3(k, z, s, q, cfg=None):
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    _check_zeta_region(k, z, s)
    return _jackson_of_phi(k, z, s, q, lambda a: k + a, cfg)


def lhs_lemma31(k, r, z, s, q, cfg=None):
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    if not 0 <= r < k:
        raise RegionViolation("0<=r<k required")
    _check_zeta_region(k - r, z, s)
    j = k - r
    return _jackson_of_phi(j, z, s, q, lambda a: a + j, cfg)


# -- corollary (z = 1, k = 1) -----------------------------------------------


def _check_zeta_poles(s, cfg):
    for l in range(cfg.max_l_terms):
        if abs(s + l - 1) <= POLE_TOL:
            raise ZetaPoleInSeries(f"zeta(s+l) hits its pole at l={l}")


def lhs_cor(which, s, q, cfg=None):
    cfg = cfg or SeriesConfig()
    s, q = as_complex(s), QParam.of(q)
    arg = (lambda a: a) if which == IdentityId.COR_RA1W else (lambda a: 1.0 - a)
    return jackson_integral(lambda a: hurwitz_zeta(s, arg(a), cfg), JacksonConfig(q, cfg.abs_tol))


def rhs_cor(which, s, q, cfg=None):
    cfg = cfg or SeriesConfig()
    s, q = as_complex(s), QParam.of(q)
    coeffs = binom_series(-s, cfg.max_l_terms)
    alternating = which == IdentityId.COR_RA2W
    series = _l_series(
        lambda l: (-1.0 if alternating and l % 2 else 1.0) * coeffs[l],
        lambda l: riemann_zeta(s + l, cfg),
        q,
        cfg,
    )
    if which == IdentityId.COR_RA1W:
        head = jackson_power_integral(s, q)
        return SeriesValue(
            head + series.value,
            series.terms_used + 1,
            series.tail_bound,
            series.converged,
            series.round_bound + 4 * EPS * abs(head),
        )
    return series


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    identity: IdentityId
    k: int
    z: complex
    s: complex
    a: complex | None
    q: float | None
    r: int | None
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    lhs_tail: float
    rhs_tail: float
    tolerance: float
    passed: bool
    lhs_terms: int
    rhs_terms: int

    @property
    def rhs_shared(self):
        return self.identity in (IdentityId.RA2, IdentityId.RA3)


def _report(identity, k, z, s, a, q, r, lhs, rhs, tolerance):
    res = abs(lhs.value - rhs.value)
    scale = max(abs(lhs.value), abs(rhs.value))
    tol = max(float(tolerance), lhs.error_bound + rhs.error_bound)
    return VerificationReport(
        identity=identity,
        k=k,
        z=z,
        s=s,
        a=a,
        q=q,
        r=r,
        lhs=lhs.value,
        rhs=rhs.value,
        abs_residual=float(res),
        rel_residual=float(res / scale) if scale > 0 else 0.0,
        lhs_tail=float(lhs.error_bound),
        rhs_tail=float(rhs.error_bound),
        tolerance=tol,
        passed=bool(res <= tol),
        lhs_terms=lhs.terms_used,
        rhs_terms=rhs.terms_used,
    )


def verify(identity, k=1, z=0.0, s=0.0, q=2.0, *, a=None, r=None, cfg=None, tolerance=1e-9):
    """Evaluate both sides of ``identity`` and compare.

    ``a`` is used only by ``THM12`` and ``r`` only by ``LEMMA31``; the
    corollary identities ignore ``k`` and ``z``.
    """
    identity = IdentityId.parse(identity) if not isinstance(identity, IdentityId) else identity
    cfg = cfg or SeriesConfig()
    if identity in (IdentityId.COR_RA1W, IdentityId.COR_RA2W):
        return verify_corollary(identity, s, q, cfg=cfg, tolerance=tolerance)
    k = int(k)
    if k < 1:
        raise RegionViolation("k>=1 required")
    z, s = as_complex(z, "z"), as_complex(s, "s")

    if identity == IdentityId.THM12:
        if a is None:
            raise RegionViolation("a is required for thm12")
        a = as_complex(a, "a")
        if z == 0:
            raise RegionViolation("z != 0 required")
        try:
            p = ZetaParams(k, z, s, a)
        except InvalidRegion as exc:
            raise RegionViolation(str(exc)) from exc
        lhs = phi_collapsed(p, cfg)
        rhs = theorem1_rhs(p, cfg)
        return _report(identity, k, z, s, a, None, None, lhs, rhs, tolerance)

    try:
        qp = QParam.of(q)
    except ValueError as exc:
        raise RegionViolation(str(exc)) from exc

    if identity == IdentityId.RA1:
        _check_disk_re_lt_one(k, z, s)
        _check_q_pole(s, qp)
        lhs, rhs = lhs_ra1(k, z, s, qp, cfg), rhs_ra1(k, z, s, qp, cfg)
    elif identity in (IdentityId.RA2, IdentityId.RA3):
        if z == 0:
            raise RegionViolation("z != 0 required")
        _check_zeta_region(k, z, s)
        side = lhs_ra2 if identity == IdentityId.RA2 else lhs_ra3
        lhs, rhs = side(k, z, s, qp, cfg), rhs_ra23(k, z, s, qp, cfg)
    elif identity == IdentityId.LEMMA31:
        if r is None:
            raise RegionViolation("r is required for lemma31")
        r = int(r)
        if not 0 <= r < k:
            raise RegionViolation("0<=r<k required")
        if z == 0:
            raise RegionViolation("z != 0 required")
        _check_zeta_region(k - r, z, s)
        lhs, rhs = lhs_lemma31(k, r, z, s, qp, cfg), rhs_lemma31(k, r, z, s, qp, cfg)
    else:  # pragma: no cover
        raise ValueError(identity)
    return _report(identity, k, z, s, None, qp.q, r, lhs, rhs, tolerance)


def verify_corollary(which, s, q=2.0, *, cfg=None, tolerance=1e-9):
    which = IdentityId.parse(which) if not isinstance(which, IdentityId) else which
    if which not in (IdentityId.COR_RA1W, IdentityId.COR_RA2W):
        raise ValueError(f"{which} is not a corollary identity")
    cfg = cfg or SeriesConfig()
    s = as_complex(s, "s")
    try:
        qp = QParam.of(q)
    except ValueError as exc:
        raise RegionViolation(str(exc)) from exc
    if which == IdentityId.COR_RA1W and not s.real < 1:
        raise RegionViolation("Re(s)<1 required")
    if abs(s - 1) <= POLE_TOL:
        raise RegionViolation("s != 1 required")
    _check_zeta_poles(s, cfg)
    if which == IdentityId.COR_RA1W:
        _check_q_pole(s, qp)
    lhs, rhs = lhs_cor(which, s, qp, cfg), rhs_cor(which, s, qp, cfg)
    return _report(which, 1, 1 + 0j, s, None, qp.q, None, lhs, rhs, tolerance)


def rhs_ra1_assembled(k, z, s, q, cfg=None):
    """RA1 right side rebuilt from the shifted-integral left sides ``lhs_lemma31``."""
    cfg = cfg or SeriesConfig()
    z, s, q = as_complex(z), as_complex(s), QParam.of(q)
    head = jackson_power_integral(s, q)
    value, err = head, 0.0
    for r in range(k):
        j = k - r
        sub = lhs_lemma31(k, r, z, s, q, cfg)
        value += comb(k, r) * z**j * sub.value
        err += comb(k, r) * abs(z) ** j * sub.error_bound
    return SeriesValue(value, 0, err, True, 0.0)
