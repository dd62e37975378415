"""Jackson q-integral over [0, 1] for q > 1."""

import math
from dataclasses import dataclass

from .errors import Divergent, IntegrandFailure, NotConverged, QPole, QZetaError, QZetaInputError
from .numkit import QParam, as_complex, q_number
from .zeta import EPS, SeriesValue

CONSECUTIVE_SMALL = 3


@dataclass(frozen=True)
class JacksonConfig:
    q: QParam
    abs_tol: float = 1e-13
    max_points: int = 4000

    def __post_init__(self):
        object.__setattr__(self, "q", QParam.of(self.q))
        if not self.abs_tol > 0:
            raise QZetaInputError("abs_tol must be positive")
        if self.max_points < 1:
            raise QZetaInputError("max_points must be at least 1")


def jackson_integral(f, cfg):
    """``(q-1) * sum_{n>=1} f(q^-n) q^-n``, summed lazily node by node.

    ``f`` may return a number or a :class:`SeriesValue`; in the latter case the
    integrand's own error bounds are propagated into the result.

    Truncation happens once the tail estimate stays below ``abs_tol`` for three
    consecutive nodes.  The estimate is the larger of ``|f(x) x| q`` and a
    geometric extrapolation from the ratio of successive terms, which matters
    for integrands that grow like ``a^-s`` near zero.
    """
    if not isinstance(cfg, JacksonConfig):
        cfg = JacksonConfig(cfg)
    q = cfg.q.q
    scale = q - 1.0
    re_parts, im_parts = [], []
    abs_sum = 0.0
    node_err = 0.0
    prev = None
    small = 0
    for n in range(1, cfg.max_points + 1):
        x = q ** (-n)
        try:
            fx = f(x)
        except QZetaError:
            raise
        except Exception as exc:
            raise IntegrandFailure(n, x, exc) from exc
        if isinstance(fx, SeriesValue):
            node_err += scale * x * fx.error_bound
            fx = fx.value
        fx = complex(fx)
        if not (math.isfinite(fx.real) and math.isfinite(fx.imag)):
            raise IntegrandFailure(n, x, ValueError(f"non-finite value {fx!r}"))
        term = scale * x * fx
        re_parts.append(term.real)
        im_parts.append(term.imag)
        mag = abs(term)
        abs_sum += mag
        est = abs(fx) * x * scale / (1.0 - 1.0 / q)
        if prev:
            rho = mag / prev
            if rho < 1.0:
                est = max(est, mag * rho / (1.0 - rho))
        prev = mag
        small = small + 1 if est < cfg.abs_tol else 0
        if small >= CONSECUTIVE_SMALL:
            value = complex(math.fsum(re_parts), math.fsum(im_parts))
            return SeriesValue(value, n, float(est + node_err), True, float(4 * EPS * abs_sum))
    raise NotConverged(
        f"Jackson sum did not converge within {cfg.max_points} nodes", terms_used=cfg.max_points
    )


def jackson_power_integral(s, q):
    """Closed form of the Jackson integral of ``a^-s``: ``1/[1-s]_q``."""
    s = as_complex(s, "s")
    qp = QParam.of(q)
    if s.real >= 1.0:
        raise Divergent("Re(s)<1 required for the integral of a^-s")
    denom = q_number(1.0 - s, qp)
    if abs(denom) <= 1e-12:
        raise QPole(f"[1-s]_q vanishes at s={s!r}, q={qp.q}")
    return 1.0 / denom
