"""Built-in example problems, error metrics, and convergence-order probes.

Each :class:`NamedProblem` bundles a right-hand-side family parameterised
by the fractional order, its closed-form solution where one exists, and an
optional domain limit (a horizon beyond which the exact solution blows
up).  ``problem(alpha, horizon)`` instantiates a concrete
:class:`~confrac.solvers.InitialValueProblem`; the domain guard runs there,
before any solver step executes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Alpha, AlphaLike, as_alpha
from .errors import DomainError, OrderUndefinedError
from .solvers import (
    CaputoProblem,
    InitialValueProblem,
    SolutionTrace,
    solve_caputo_pc,
    solve_classical_pc,
    solve_conformable_pc,
)

#: endpoint errors at or below this are rounding-floor noise; no order exists
DEGENERATE_ERROR_FLOOR = 1e-14

#: denominator floor for relative errors (exact solutions may vanish)
REL_ERROR_FLOOR = 1e-300

#: solver identifiers accepted by :func:`solve_named`
METHODS = ("classical", "conformable", "caputo")


def _checked_time(t: float) -> float:
    t = float(t)
    if t < 0.0:
        raise DomainError(f"exact solutions are defined for t >= 0, got {t!r}")
    return t


def exact_expkernel(t: float, alpha: AlphaLike) -> float:
    """exp(t**a / a), the eigenfunction of the conformable derivative."""
    a = as_alpha(alpha).value
    t = _checked_time(t)
    return math.exp(t**a / a)


def exact_example1(t: float, alpha: AlphaLike) -> float:
    """exp(t**(a+1) / (a+1)), closed form for the linearly forced problem."""
    a = as_alpha(alpha).value
    t = _checked_time(t)
    return math.exp(t ** (a + 1.0) / (a + 1.0))


def example2_domain_limit(alpha: AlphaLike) -> float:
    """Horizon (a*pi/2)**(1/a) where tan(t**a / a) first diverges."""
    a = as_alpha(alpha).value
    return (a * math.pi / 2.0) ** (1.0 / a)


def exact_example2(t: float, alpha: AlphaLike) -> float:
    """tan(t**a / a); only defined left of the vertical asymptote."""
    a = as_alpha(alpha).value
    t = _checked_time(t)
    limit = example2_domain_limit(a)
    if t >= limit:
        raise DomainError(
            f"t = {t!r} lies at or beyond the asymptote t = {limit:.6g}"
        )
    return math.tan(t**a / a)


def exact_example3(t: float, alpha: AlphaLike) -> float:
    """1 / (1 + t**a), closed form for the quadratic-decay problem."""
    a = as_alpha(alpha).value
    t = _checked_time(t)
    return 1.0 / (1.0 + t**a)


@dataclass(frozen=True)
class NamedProblem:
    """A registry entry: right-hand-side family plus metadata.

    ``family(t, y, a)`` is the right-hand side with the fractional order
    exposed; :meth:`problem` closes it over a concrete order.  ``exact``
    maps (t, alpha) to the closed-form solution when one is known, and
    ``domain_limit`` maps alpha to the supremum of admissible horizons.
    """

    id: str
    description: str
    equation: str
    solution: str
    y0: float
    family: Callable[[float, float, float], float]
    exact: Callable[[float, AlphaLike], float] | None = None
    domain_limit: Callable[[AlphaLike], float] | None = None
    domain_note: str | None = None

    def default_horizon(self, alpha: AlphaLike) -> float:
        """Horizon used when the caller supplies none.

        Problems without a domain limit default to 2; limited problems
        default to 1/2 at order 0.5 and clamp to 80% of the limit
        elsewhere, keeping default runs away from the asymptote.
        """
        if self.domain_limit is None:
            return 2.0
        a = as_alpha(alpha).value
        if a == 0.5:
            return 0.5
        return 0.8 * self.domain_limit(a)

    def _checked_horizon(self, alpha: Alpha, horizon: float | None) -> float:
        if horizon is None:
            horizon = self.default_horizon(alpha)
        horizon = float(horizon)
        if self.domain_limit is not None:
            limit = self.domain_limit(alpha)
            if horizon >= limit:
                raise DomainError(
                    f"horizon {horizon!r} reaches the domain limit "
                    f"{limit:.6g} of problem {self.id!r}"
                )
        return horizon

    def problem(
        self, alpha: AlphaLike, horizon: float | None = None
    ) -> InitialValueProblem:
        """Concrete conformable problem at the given order and horizon."""
        alpha = as_alpha(alpha)
        horizon = self._checked_horizon(alpha, horizon)
        a = alpha.value
        family = self.family
        return InitialValueProblem(
            rhs=lambda t, y: family(t, y, a),
            y0=self.y0,
            horizon=horizon,
            order=alpha,
        )

    def caputo_problem(
        self, alpha: AlphaLike, horizon: float | None = None
    ) -> CaputoProblem:
        """Same right-hand side read as a Caputo problem."""
        alpha = as_alpha(alpha)
        horizon = self._checked_horizon(alpha, horizon)
        a = alpha.value
        family = self.family
        return CaputoProblem(
            rhs=lambda t, y: family(t, y, a),
            y0=self.y0,
            horizon=horizon,
            order=alpha,
        )


_REGISTRY: tuple[NamedProblem, ...] = (
    NamedProblem(
        id="expkernel",
        description="growth matched to the exponential kernel",
        equation="T_a y = y",
        solution="y(t) = exp(t^a/a)",
        y0=1.0,
        family=lambda t, y, a: y,
        exact=exact_expkernel,
    ),
    NamedProblem(
        id="example1",
        description="linearly forced growth",
        equation="T_a y = t*y",
        solution="y(t) = exp(t^(a+1)/(a+1))",
        y0=1.0,
        family=lambda t, y, a: t * y,
        exact=exact_example1,
    ),
    NamedProblem(
        id="example2",
        description="tangent growth with a vertical asymptote",
        equation="T_a y = 1 + y^2",
        solution="y(t) = tan(t^a/a)",
        y0=0.0,
        family=lambda t, y, a: 1.0 + y * y,
        exact=exact_example2,
        domain_limit=example2_domain_limit,
        domain_note="domain limit (a*pi/2)^(1/a)",
    ),
    NamedProblem(
        id="example3",
        description="quadratic decay",
        equation="T_a y = -a*y^2",
        solution="y(t) = 1/(1 + t^a)",
        y0=1.0,
        family=lambda t, y, a: -a * y * y,
        exact=exact_example3,
    ),
)


def builtin_problems() -> tuple[NamedProblem, ...]:
    """The four built-in problems, in registry order."""
    return _REGISTRY


def get_problem(problem_id: str) -> NamedProblem:
    """Look a built-in problem up by id."""
    for named in _REGISTRY:
        if named.id == problem_id:
            return named
    known = ", ".join(p.id for p in _REGISTRY)
    raise ValueError(f"unknown problem {problem_id!r}; available: {known}")


def solve_named(
    named: NamedProblem,
    method: str,
    alpha: AlphaLike,
    h: float,
    horizon: float | None = None,
    corrector_iterations: int = 1,
) -> SolutionTrace:
    """Dispatch one solver run on a registry problem."""
    alpha = as_alpha(alpha)
    if method == "classical":
        return solve_classical_pc(
            named.problem(alpha, horizon), h, corrector_iterations
        )
    if method == "conformable":
        return solve_conformable_pc(
            named.problem(alpha, horizon), h, corrector_iterations
        )
    if method == "caputo":
        return solve_caputo_pc(
            named.caputo_problem(alpha, horizon), h, corrector_iterations
        )
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@dataclass(frozen=True)
class ErrorReport:
    """Absolute/relative error summary of one trace against an exact solution."""

    max_abs_error: float
    endpoint_abs_error: float
    endpoint_rel_error: float
    node_count: int


def error_report(
    trace: SolutionTrace,
    exact: Callable[[float, AlphaLike], float],
    alpha: AlphaLike,
) -> ErrorReport:
    """Compare a trace with an exact solution sampled on its grid.

    The endpoint relative error divides by |exact| at the final node,
    floored at ``REL_ERROR_FLOOR`` so exact zeros cannot blow the ratio up.
    """
    alpha = as_alpha(alpha)
    times = trace.times()
    reference = np.array([exact(float(t), alpha) for t in times])
    abs_err = np.abs(trace.values - reference)
    denom = max(abs(float(reference[-1])), REL_ERROR_FLOOR)
    return ErrorReport(
        max_abs_error=float(abs_err.max()),
        endpoint_abs_error=float(abs_err[-1]),
        endpoint_rel_error=float(abs_err[-1]) / denom,
        node_count=trace.grid.node_count,
    )


def refinement_errors(
    named: NamedProblem,
    method: str,
    alpha: AlphaLike,
    tau: float | None,
    h0: float,
    levels: int,
    corrector_iterations: int = 1,
) -> list[tuple[float, float]]:
    """Endpoint absolute errors at steps h0, h0/2, ..., h0/2**(levels-1).

    Returns (h, error) pairs in refinement order.  Halving keeps every
    refined grid commensurate whenever the first one is.
    """
    if levels < 2:
        raise ValueError(f"refinement needs at least 2 levels, got {levels}")
    if named.exact is None:
        raise ValueError(f"problem {named.id!r} has no exact solution")
    alpha = as_alpha(alpha)
    pairs = []
    for level in range(levels):
        h = h0 / 2.0**level
        trace = solve_named(named, method, alpha, h, tau, corrector_iterations)
        endpoint_t = trace.grid.node(trace.grid.node_count - 1)
        err = abs(trace.endpoint - named.exact(endpoint_t, alpha))
        pairs.append((h, err))
    return pairs


def empirical_order(
    named: NamedProblem,
    method: str,
    alpha: AlphaLike,
    tau: float | None,
    h0: float,
    levels: int,
    corrector_iterations: int = 1,
) -> list[float]:
    """Observed orders p_i = log2(e_i / e_{i+1}) under step halving.

    Raises :class:`OrderUndefinedError` when any endpoint error sits at or
    below ``DEGENERATE_ERROR_FLOOR`` -- schemes that integrate a problem
    exactly leave nothing but rounding noise to measure.
    """
    pairs = refinement_errors(
        named, method, alpha, tau, h0, levels, corrector_iterations
    )
    errors = [err for _, err in pairs]
    if any(err <= DEGENERATE_ERROR_FLOOR for err in errors):
        raise OrderUndefinedError(
            f"endpoint errors reached the rounding floor "
            f"({min(errors):.3g}); order is undefined"
        )
    return [math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1)]
