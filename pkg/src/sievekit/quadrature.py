"""
Adaptive Gauss-Kronrod quadrature with certified error estimates.

Every integral in the package goes through :func:`integrate`. Each panel is
evaluated with the 15-point Kronrod rule and the embedded 7-point Gauss rule;
the difference of the two is taken as the panel's error. Panels that miss
their share of the tolerance are bisected, and the tolerance is split evenly
between the halves, so the accepted error estimates sum to at most the
requested tolerance.

Integrands may return either a float or a ``(value, error)`` pair. The second
form is used for nested integrals: the inner integral's own error bound is
propagated through the outer rule's (positive) weights and added to the
outer panel's error.
"""

from dataclasses import dataclass, replace

from sievekit.errors import DomainError, NonConvergenceError

__all__ = ["QuadratureConfig", "DEFAULT_CONFIG", "integrate"]

# Kronrod abscissae on [-1, 1], positive half, descending; Gauss nodes are the
# odd-indexed entries.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and recursion cap for one integral evaluation.

    Parameters
    ----------
    abs_tol : float
        Absolute error target.
    rel_tol : float
        Relative error target; the effective target is
        ``max(abs_tol, rel_tol * |value|)``.
    max_depth : int
        Maximum bisection depth of any panel.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.max_depth < 10:
            raise DomainError("max_depth must be at least 10")

    def tightened(self, factor=10.0):
        """Return a copy with both tolerances divided by `factor`."""
        return replace(self, abs_tol=self.abs_tol / factor,
                       rel_tol=self.rel_tol / factor)


DEFAULT_CONFIG = QuadratureConfig()


def _split(y):
    if isinstance(y, tuple):
        return y[0], y[1]
    return y, 0.0


def _gk15(func, a, b):
    """One Gauss-Kronrod panel: (kronrod, |kronrod - gauss|, propagated)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc, ec = _split(func(center))
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    prop = ec * _WGK[7]
    for j in range(7):
        dx = half * _XGK[j]
        f1, e1 = _split(func(center - dx))
        f2, e2 = _split(func(center + dx))
        resk += _WGK[j] * (f1 + f2)
        prop += _WGK[j] * (e1 + e2)
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    return resk * half, abs((resk - resg) * half), prop * abs(half)


def integrate(func, a, b, cfg=DEFAULT_CONFIG):
    """Integrate `func` over [a, b].

    Parameters
    ----------
    func : callable
        ``func(x)`` returning a float, or a ``(value, error)`` pair when the
        integrand is itself only known to within a bound.
    a, b : float
        Integration limits. If ``b <= a`` the integral is exactly zero.
    cfg : QuadratureConfig

    Returns
    -------
    value : float
    error : float
        Bound on ``|value - true integral|``: the sum of the accepted
        Kronrod-minus-Gauss differences plus propagated integrand error.

    Raises
    ------
    NonConvergenceError
        If a panel at `cfg.max_depth` still misses its tolerance, or the final
        error exceeds ``max(abs_tol, rel_tol * |value|)``.
    """
    if not b > a:
        return 0.0, 0.0

    whole, diff, prop = _gk15(func, a, b)
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(whole))
    if diff + prop <= tol:
        total, err = whole, diff + prop
    else:
        total, err = _refine(func, a, b, tol, 1, cfg.max_depth)

    if err > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        raise NonConvergenceError(
            f"integral over [{a}, {b}] has error estimate {err:.3e}, "
            f"target {max(cfg.abs_tol, cfg.rel_tol * abs(total)):.3e}"
        )
    return total, err


def _refine(func, a, b, tol, depth, max_depth):
    mid = 0.5 * (a + b)
    total = 0.0
    err = 0.0
    for lo, hi in ((a, mid), (mid, b)):
        value, diff, prop = _gk15(func, lo, hi)
        if diff + prop <= 0.5 * tol:
            total += value
            err += diff + prop
        elif depth >= max_depth:
            raise NonConvergenceError(
                f"adaptive depth {max_depth} exhausted on [{lo}, {hi}]"
            )
        else:
            v, e = _refine(func, lo, hi, 0.5 * tol, depth + 1, max_depth)
            total += v
            err += e
    return total, err
