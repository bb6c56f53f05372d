"""
Upper and lower linear-sieve functions F(s) and f(s).

Both are evaluated from their piecewise closed forms: F on (0, 7] and f on
(0, 8]. The higher branches contain single and double integrals, which are
computed with :func:`sievekit.quadrature.integrate`. Inner integrals use a
tolerance ten times tighter than the outer one.
"""

import math
from dataclasses import dataclass
from enum import Enum

from sievekit.errors import DomainError
from sievekit.quadrature import DEFAULT_CONFIG, integrate

__all__ = [
    "EULER_GAMMA",
    "Branch",
    "SieveFunctionValue",
    "eval_F",
    "eval_f",
    "dde_residual",
]

EULER_GAMMA = 0.5772156649015329
E_GAMMA = math.exp(EULER_GAMMA)

F_MAX = 7.0
f_MAX = 8.0
BREAKPOINTS = (2.0, 3.0, 4.0, 5.0, 6.0, 7.0)


class Branch(Enum):
    """Piecewise formula used for an evaluation."""

    F1 = "F1"  # 0 < s <= 3
    F2 = "F2"  # 3 <= s <= 5
    F3 = "F3"  # 5 <= s <= 7
    f0 = "f0"  # 0 < s <= 2
    f1 = "f1"  # 2 <= s <= 4
    f2 = "f2"  # 4 <= s <= 6
    f3 = "f3"  # 6 <= s <= 8


_F_RANGES = {1: (0.0, 3.0), 2: (3.0, 5.0), 3: (5.0, 7.0)}
_f_RANGES = {0: (0.0, 2.0), 1: (2.0, 4.0), 2: (4.0, 6.0), 3: (6.0, 8.0)}


@dataclass(frozen=True)
class SieveFunctionValue:
    s: float
    value: float
    error_bound: float
    branch: Branch


def _log_ratio(t):
    # log(t - 1) / t; vanishes at t = 2
    return math.log(t - 1.0) / t


def _inner_log(x, cfg):
    """∫_2^x log(t-1)/t dt."""
    return integrate(_log_ratio, 2.0, x, cfg)


def _F_double(s, cfg):
    """∫_2^{s-3} log(t-1)/t ∫_{t+2}^{s-1} log((u-1)/(t+1))/u du dt."""
    inner_cfg = cfg.tightened()

    def outer(t):
        c = t + 1.0
        v, e = integrate(lambda u: math.log((u - 1.0) / c) / u,
                         t + 2.0, s - 1.0, inner_cfg)
        w = _log_ratio(t)
        return w * v, abs(w) * e

    return integrate(outer, 2.0, s - 3.0, cfg)


def _f_nested(s, cfg):
    """∫_3^{s-1} (1/t) ∫_2^{t-1} log(u-1)/u du dt."""
    inner_cfg = cfg.tightened()

    def outer(t):
        v, e = _inner_log(t - 1.0, inner_cfg)
        return v / t, e / t

    return integrate(outer, 3.0, s - 1.0, cfg)


def _f_correction(s, cfg, printed=False):
    """∫_2^{s-4} log(t-1)/t ∫_{t+2}^{s-2} log((u-1)/(t+1)) log((s-1)/(u+1))/u du dt.

    The kernel log((s-1)/(u+1)) is what (sf(s))' = F(s-1) forces. The
    commonly printed log(s/(u+2)) gives a derivative off by a factor
    (s-1)/s; ``printed=True`` selects it for comparison only.
    """
    inner_cfg = cfg.tightened()
    num, shift = (s, 2.0) if printed else (s - 1.0, 1.0)

    def outer(t):
        c = t + 1.0
        v, e = integrate(
            lambda u: math.log((u - 1.0) / c) * math.log(num / (u + shift)) / u,
            t + 2.0, s - 2.0, inner_cfg,
        )
        w = _log_ratio(t)
        return w * v, abs(w) * e

    return integrate(outer, 2.0, s - 4.0, cfg)


def _pick(s, ranges, branch, name):
    if branch is None:
        # lower branch owns each breakpoint
        for k in sorted(ranges):
            lo, hi = ranges[k]
            if s <= hi:
                return k
    if branch not in ranges:
        raise DomainError(f"{name} has no branch {branch!r}")
    lo, hi = ranges[branch]
    if not (lo <= s <= hi) or s <= 0:
        raise DomainError(f"branch {branch} of {name} covers [{lo}, {hi}], got s={s}")
    return branch


def eval_F(s, cfg=DEFAULT_CONFIG, *, branch=None, gamma=EULER_GAMMA):
    """Upper sieve function F(s) for 0 < s <= 7.

    `branch` (1, 2 or 3) forces a particular closed form, which must cover
    `s`; by default the lowest applicable branch is used. `gamma` exists as a
    fault-injection hook for the verification pipeline.
    """
    s = float(s)
    if not (0.0 < s <= F_MAX):
        raise DomainError(f"F(s) is defined for 0 < s <= 7, got s={s}")
    k = _pick(s, _F_RANGES, branch, "F")
    pre = 2.0 * math.exp(gamma) / s
    bracket, err = 1.0, 0.0
    if k >= 2:
        v, e = _inner_log(s - 1.0, cfg)
        bracket += v
        err += e
    if k == 3:
        v, e = _F_double(s, cfg)
        bracket += v
        err += e
    return SieveFunctionValue(s, pre * bracket, pre * err, Branch(f"F{k}"))


def eval_f(s, cfg=DEFAULT_CONFIG, *, branch=None, gamma=EULER_GAMMA,
           printed_kernel=False):
    """Lower sieve function f(s) for 0 < s <= 8; identically 0 on (0, 2].

    `branch` and `gamma` behave as in :func:`eval_F`. `printed_kernel`
    switches the 6 <= s <= 8 correction term to the printed variant that does
    not satisfy the delay equation (see ``_f_correction``).
    """
    s = float(s)
    if not (0.0 < s <= f_MAX):
        raise DomainError(f"f(s) is defined for 0 < s <= 8, got s={s}")
    k = _pick(s, _f_RANGES, branch, "f")
    if k == 0:
        return SieveFunctionValue(s, 0.0, 0.0, Branch.f0)
    pre = 2.0 * math.exp(gamma) / s
    bracket, err = math.log(s - 1.0), 0.0
    if k >= 2:
        v, e = _f_nested(s, cfg)
        bracket += v
        err += e
    if k == 3:
        v, e = _f_correction(s, cfg, printed_kernel)
        bracket += v
        err += e
    return SieveFunctionValue(s, pre * bracket, pre * err, Branch(f"f{k}"))


def dde_residual(s, h=1e-4, cfg=DEFAULT_CONFIG):
    """Largest defect of the delay system at `s`, by central differences.

    Checks ``(sF(s))' = f(s-1)`` when ``s + h <= 7`` and
    ``(sf(s))' = F(s-1)`` when ``s + h <= 8``. Both identities hold for
    ``s > 2``.
    """
    s = float(s)
    h = float(h)
    if not (0.0 < h <= 1e-3):
        raise DomainError(f"step h must satisfy 0 < h <= 1e-3, got {h}")
    if s - 2.0 * h <= 2.0:
        raise DomainError(f"the delay system is checked for s > 2 + 2h, got s={s}")
    if s + h > f_MAX:
        raise DomainError(f"s + h must not exceed 8, got s={s}")
    near = [b for b in BREAKPOINTS if abs(s - b) < 2.0 * h]
    if near:
        raise DomainError(f"s={s} is within 2h of breakpoint {near[0]}")

    residuals = []
    if s + h <= F_MAX:
        d = ((s + h) * eval_F(s + h, cfg).value
             - (s - h) * eval_F(s - h, cfg).value) / (2.0 * h)
        residuals.append(abs(d - eval_f(s - 1.0, cfg).value))
    d = ((s + h) * eval_f(s + h, cfg).value
         - (s - h) * eval_f(s - h, cfg).value) / (2.0 * h)
    residuals.append(abs(d - eval_F(s - 1.0, cfg).value))
    return max(residuals)
