"""Product quadrature for the kernel ``x**(alpha - 1)`` on uniform grids.

Two rules are provided, both exact for the kernel itself because the
kernel is integrated analytically against a piecewise interpolant of the
smooth factor:

* rectangle rule -- piecewise-constant interpolant, coefficients
  ``(j + 1)**a - j**a`` with overall scale ``h**a / a``;
* trapezoid rule -- piecewise-linear interpolant, coefficient 1 at the
  origin, centred second differences of ``j**(a + 1)`` inside, and a
  closing coefficient at the final node, with scale ``h**a / (a * (a + 1))``.

Coefficients only depend on their own index, never on the grid length,
which is what lets the solvers in :mod:`confrac.solvers` update running
sums instead of re-summing history.

Large indices need care: the naive second difference subtracts three
nearly equal numbers of size ``j**(a + 1)`` and loses roughly ``j**2``
units in the last place.  Past ``_SERIES_CUTOFF`` the differences are
evaluated with binomial series in ``1/j`` whose terms are all positive,
so no cancellation occurs anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Alpha, AlphaLike, as_alpha
from .errors import DomainError

#: index above which coefficients switch to the cancellation-free series
_SERIES_CUTOFF = 128

#: hard bound on series length; terms shrink by >= _SERIES_CUTOFF**-2 per
#: step, so ~10 terms already reach double precision
_SERIES_MAX_TERMS = 60


def gamma(x: float) -> float:
    """Euler's Gamma function for real x > 0 (thin wrapper over the C library)."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma requires x > 0, got {x!r}")
    return math.gamma(x)


def rectangle_coefficient(j: int, alpha: AlphaLike) -> float:
    """Coefficient ``(j + 1)**a - j**a`` of the product rectangle rule.

    Adjacent powers of consecutive integers differ by less than a factor
    of two, so by Sterbenz's lemma the subtraction itself is exact; no
    stabilised path is needed.
    """
    if j < 0:
        raise ValueError(f"coefficient index must be non-negative, got {j}")
    a = as_alpha(alpha).value
    return (j + 1.0) ** a - float(j) ** a


def trapezoid_coefficient(j: int, alpha: AlphaLike) -> float:
    """Interior coefficient of the product trapezoid rule.

    Equals 1 at j = 0 and ``(j-1)**(a+1) - 2*j**(a+1) + (j+1)**(a+1)``
    for j >= 1.
    """
    if j < 0:
        raise ValueError(f"coefficient index must be non-negative, got {j}")
    a = as_alpha(alpha).value
    if j == 0:
        return 1.0
    return _second_difference(j, a + 1.0)


def trapezoid_tail_coefficient(n: int, alpha: AlphaLike) -> float:
    """Closing coefficient of the product trapezoid rule on n + 1 panels.

    Equals ``(a+1)*(n+1)**a + n**(a+1) - (n+1)**(a+1)``; for n = 0 this
    reduces to a.  The same quantity is the weight the reflected-kernel
    (Caputo) trapezoid rule assigns to its first node, so the Caputo
    solver reuses this function.
    """
    if n < 0:
        raise ValueError(f"panel index must be non-negative, got {n}")
    a = as_alpha(alpha).value
    beta = a + 1.0
    m = n + 1.0
    if n + 1 < _SERIES_CUTOFF or a == 1.0:
        # exact in integer arithmetic when a == 1 (beta == 2), any n
        return beta * m**a + float(n) ** beta - m**beta
    # m**beta * ((1 - u)**beta - 1 + beta*u) with u = 1/m, expanded as
    # sum_{k>=2} C(beta, k) (-u)**k; for beta in (1, 2) the signs of the
    # binomials alternate against (-u)**k, so every term is positive.
    u = 1.0 / m
    binom = beta * (beta - 1.0) / 2.0  # C(beta, 2)
    power = u * u
    total = binom * power
    k = 2
    while k < _SERIES_MAX_TERMS:
        binom *= (beta - k) / (k + 1.0)
        power *= -u
        term = binom * power
        if total + term == total:
            break
        total += term
        k += 1
    return m**beta * total


def _second_difference(j: int, beta: float) -> float:
    """``(j-1)**beta - 2*j**beta + (j+1)**beta`` for j >= 1, beta in (1, 2]."""
    if j < _SERIES_CUTOFF or beta == 2.0:
        # exact in integer arithmetic when beta == 2; safe below the
        # cutoff where at most ~j**2 ulps cancel
        return (j - 1.0) ** beta - 2.0 * float(j) ** beta + (j + 1.0) ** beta
    # j**beta * ((1-u)**beta + (1+u)**beta - 2) with u = 1/j; odd powers
    # cancel, leaving 2 * sum_{k>=1} C(beta, 2k) u**(2k), all terms
    # positive for beta in (1, 2).
    u = 1.0 / j
    u2 = u * u
    binom = beta * (beta - 1.0) / 2.0  # C(beta, 2)
    power = u2
    total = binom * power
    k = 1
    while k < _SERIES_MAX_TERMS:
        binom *= (beta - 2 * k) * (beta - 2 * k - 1.0) / ((2 * k + 1.0) * (2 * k + 2.0))
        power *= u2
        term = binom * power
        if total + term == total:
            break
        total += term
        k += 1
    return 2.0 * float(j) ** beta * total


@dataclass(frozen=True)
class QuadratureWeights:
    """Coefficient sequence plus the h-dependent scale of one product rule."""

    alpha: Alpha
    coefficients: np.ndarray
    rule: str  # "rectangle" or "trapezoid"

    def __post_init__(self):
        if self.rule not in ("rectangle", "trapezoid"):
            raise ValueError(f"unknown rule {self.rule!r}")
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must form a non-empty 1-d sequence")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def count(self) -> int:
        return int(self.coefficients.size)

    def scale(self, h: float) -> float:
        """Common factor multiplying the weighted sample sum for step h."""
        if not h > 0.0:
            raise ValueError(f"step must be positive, got {h!r}")
        a = self.alpha.value
        if self.rule == "rectangle":
            return h**a / a
        return h**a / (a * (a + 1.0))


def rectangle_weights(n: int, alpha: AlphaLike) -> QuadratureWeights:
    """Rectangle-rule coefficients for nodes 0 .. n (n + 1 of them)."""
    if n < 0:
        raise ValueError(f"panel index must be non-negative, got {n}")
    alpha = as_alpha(alpha)
    coeffs = np.array([rectangle_coefficient(j, alpha) for j in range(n + 1)])
    return QuadratureWeights(alpha=alpha, coefficients=coeffs, rule="rectangle")


def trapezoid_weights(n: int, alpha: AlphaLike) -> QuadratureWeights:
    """Trapezoid-rule coefficients for nodes 0 .. n + 1 (n + 2 of them)."""
    if n < 0:
        raise ValueError(f"panel index must be non-negative, got {n}")
    alpha = as_alpha(alpha)
    coeffs = np.empty(n + 2)
    for j in range(n + 1):
        coeffs[j] = trapezoid_coefficient(j, alpha)
    coeffs[n + 1] = trapezoid_tail_coefficient(n, alpha)
    return QuadratureWeights(alpha=alpha, coefficients=coeffs, rule="trapezoid")


def _checked_samples(samples: Sequence[float], expected: str) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"samples must form a non-empty 1-d sequence ({expected})")
    return arr


def integrate_rectangle(
    samples: Sequence[float],
    h: float,
    alpha: AlphaLike,
    weights: QuadratureWeights | None = None,
) -> float:
    """Rectangle-rule value of ``integral x**(a-1) g``, g sampled at nodes 0 .. n.

    ``samples[j]`` is g at node j*h.  A precomputed ``weights`` object may
    be passed to amortise coefficient generation; its length and rule must
    match the samples.
    """
    arr = _checked_samples(samples, "one per node")
    if weights is None:
        weights = rectangle_weights(arr.size - 1, alpha)
    elif weights.rule != "rectangle":
        raise ValueError(f"expected rectangle weights, got {weights.rule!r}")
    if weights.count != arr.size:
        raise ValueError(
            f"weight/sample length mismatch: {weights.count} coefficients "
            f"for {arr.size} samples"
        )
    return weights.scale(float(h)) * float(np.dot(weights.coefficients, arr))


def integrate_trapezoid(
    samples: Sequence[float],
    h: float,
    alpha: AlphaLike,
    weights: QuadratureWeights | None = None,
) -> float:
    """Trapezoid-rule value of ``integral x**(a-1) g``, g sampled at nodes 0 .. n+1.

    Needs at least two samples (one panel).  Exact whenever g is linear.
    """
    arr = _checked_samples(samples, "one per node, at least two")
    if arr.size < 2:
        raise ValueError("trapezoid rule needs at least two samples")
    if weights is None:
        weights = trapezoid_weights(arr.size - 2, alpha)
    elif weights.rule != "trapezoid":
        raise ValueError(f"expected trapezoid weights, got {weights.rule!r}")
    if weights.count != arr.size:
        raise ValueError(
            f"weight/sample length mismatch: {weights.count} coefficients "
            f"for {arr.size} samples"
        )
    return weights.scale(float(h)) * float(np.dot(weights.coefficients, arr))
