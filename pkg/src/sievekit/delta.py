"""
Δ constants of the weighted P₃ sieve, their margins, thresholds and the
resulting main-term lower bounds.

Two regimes are covered. In the small-primes regime p runs up to N**theta.
In the short-interval regime p lies within N**kappa of N/2. Each regime has
a pair (delta_a, delta_b), and the lower bound is positive exactly when the
margin ``delta_a - delta_b / 2`` is.

The sieving limit is z = N**(1/lam) with lam = 11.99 by default, and the
default constants are the literal decimal ones. Any other lam uses formulas
in which 5.995 becomes lam/2 and 11.99 becomes lam. The short-interval
formulas are the small-primes ones evaluated at theta = 2*kappa - 1. These
generalized formulas need ``exploratory=True``.
"""

import math
from dataclasses import dataclass
from enum import Enum

from sievekit.errors import BracketError, DomainError
from sievekit.quadrature import DEFAULT_CONFIG, integrate

__all__ = [
    "PAPER_LAMBDA",
    "Mode",
    "DeltaParams",
    "DeltaReport",
    "ThresholdResult",
    "delta_pair",
    "margin",
    "find_threshold",
    "main_term_bound",
]

PAPER_LAMBDA = 11.99
THEOREM_THETA = 0.838
THEOREM_KAPPA = 0.919
MARGIN_CLAIM = 0.0009

BRACKETS = {"small_primes": (0.70, 1.0), "short_interval": (0.86, 1.0)}
BISECT_WIDTH = 1e-7
BISECT_MAX_ITER = 50


class Mode(str, Enum):
    FULL = "full"
    SMALL_PRIMES = "small_primes"
    SHORT_INTERVAL = "short_interval"

    @classmethod
    def parse(cls, text):
        """Accept ``small-primes``, ``small_primes`` and member names."""
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown mode {text!r}") from None


@dataclass(frozen=True)
class DeltaParams:
    """Regime, exponent (theta or kappa) and sieve level lam."""

    mode: Mode
    param: float
    lam: float = PAPER_LAMBDA
    exploratory: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        object.__setattr__(self, "param", float(self.param))
        object.__setattr__(self, "lam", float(self.lam))
        x = self.param
        if self.mode is Mode.SMALL_PRIMES:
            if not (2.0 / 3.0 < x <= 1.0):
                raise DomainError(f"theta must satisfy 2/3 < theta <= 1, got {x}")
        elif self.mode is Mode.SHORT_INTERVAL:
            if not (5.0 / 6.0 < x <= 1.0):
                raise DomainError(f"kappa must satisfy 5/6 < kappa <= 1, got {x}")
        else:
            raise DomainError("Δ constants are defined for small_primes or short_interval")
        if not (9.0 <= self.lam <= 16.0):
            raise DomainError(f"lambda must lie in [9, 16], got {self.lam}")
        if self.lam != PAPER_LAMBDA and not self.exploratory:
            raise DomainError(
                f"lambda={self.lam} differs from {PAPER_LAMBDA}; "
                "the generalized formulas require exploratory=True"
            )
        if self.mode is Mode.SHORT_INTERVAL and not self._shifts()[0] > 1.0:
            raise DomainError("11.99*kappa - 6.995 must exceed 1")

    def _shifts(self):
        """(a, upper, head_b): the recurring shifted constants.

        ``a`` is 5.995θ-1 (resp. 11.99κ-6.995), ``upper`` the integral's
        upper limit, and ``head_b`` the leading logarithm of delta_b.
        """
        x = self.param
        if self.lam == PAPER_LAMBDA:
            if self.mode is Mode.SMALL_PRIMES:
                return (5.995 * x - 1.0, 5.995 * x - 2.0,
                        math.log((11.99 * x - 2.0) / (3.0 * x - 2.0)))
            return (11.99 * x - 6.995, 11.99 * x - 7.995,
                    math.log((23.98 * x - 13.99) / (6.0 * x - 5.0)))
        theta = x if self.mode is Mode.SMALL_PRIMES else 2.0 * x - 1.0
        half = 0.5 * self.lam * theta
        return (half - 1.0, half - 2.0,
                math.log((self.lam * theta - 2.0) / (3.0 * theta - 2.0)))


@dataclass(frozen=True)
class DeltaReport:
    params: DeltaParams
    delta_a: float
    delta_b: float
    margin: float
    error_bound: float


@dataclass(frozen=True)
class ThresholdResult:
    mode: Mode
    threshold: float
    margin_at_threshold: float
    iterations: int
    bracket_width: float


def _log_weight(s):
    return math.log(s - 1.0) / s


def delta_pair(params, cfg=DEFAULT_CONFIG):
    """Compute (Δ₁, Δ₂) or (Δ₃, Δ₄) for `params` and their margin.

    Integrals whose upper limit does not exceed 2 vanish. `error_bound`
    bounds the error of `margin` (quadrature error of delta_a plus half
    that of delta_b).
    """
    a, upper, head_b = params._shifts()

    va, ea = integrate(lambda s: _log_weight(s) * math.log(a / (s + 1.0)),
                       2.0, upper, cfg)
    vb, eb = integrate(lambda s: _log_weight(s) * math.log(a * (a - s) / (s + 1.0)),
                       2.0, upper, cfg)
    delta_a = math.log(a) + va
    delta_b = head_b + vb
    return DeltaReport(params, delta_a, delta_b, delta_a - 0.5 * delta_b,
                       ea + 0.5 * eb)


def margin(mode, param, lam=PAPER_LAMBDA, cfg=DEFAULT_CONFIG, *, exploratory=False):
    """Shortcut for ``delta_pair(DeltaParams(...)).margin``."""
    return delta_pair(DeltaParams(mode, param, lam, exploratory), cfg).margin


def find_threshold(mode, lam=PAPER_LAMBDA, cfg=DEFAULT_CONFIG, *,
                   exploratory=False, bracket=None):
    """Locate the exponent where the margin changes sign, by bisection.

    The default brackets are [0.70, 1.0] for theta and [0.86, 1.0] for kappa.
    Bisection stops once the bracket is at most 1e-7 wide, or after 50
    halvings. The returned threshold is the midpoint of the final bracket.
    """
    mode = Mode.parse(mode)
    if mode is Mode.FULL:
        raise DomainError("thresholds exist for small_primes or short_interval only")
    lo, hi = bracket if bracket is not None else BRACKETS[mode.value]

    def g(x):
        return margin(mode, x, lam, cfg, exploratory=exploratory)

    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo < 0.0 < g_hi):
        raise BracketError(
            f"margin does not change sign on [{lo}, {hi}]: "
            f"margin({lo})={g_lo:.3e}, margin({hi})={g_hi:.3e}"
        )
    iterations = 0
    while hi - lo > BISECT_WIDTH and iterations < BISECT_MAX_ITER:
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        iterations += 1
        if g_mid == 0.0:
            lo = hi = mid
            break
        if g_mid < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return ThresholdResult(mode, root, g(root), iterations, hi - lo)


def main_term_bound(N, params, C_N, cfg=DEFAULT_CONFIG):
    """Main term of the lower bound for the count of p with N - p a P₃.

    Small primes: ``8/θ² · margin · C_N · N**θ / log(N)²``.
    Short interval: ``16/(2κ-1) · margin · C_N · N**κ / log(N)²``.
    The o(1) factors are dropped.
    """
    N = int(N)
    if N < 4 or N % 2:
        raise DomainError(f"N must be an even integer >= 4, got {N}")
    if not C_N > 0:
        raise DomainError(f"C(N) must be positive, got {C_N}")
    m = delta_pair(params, cfg).margin
    x = params.param
    logn2 = math.log(N) ** 2
    if params.mode is Mode.SMALL_PRIMES:
        return 8.0 / (x * x) * m * C_N * N ** x / logn2
    return 16.0 / (2.0 * x - 1.0) * m * C_N * N ** x / logn2
