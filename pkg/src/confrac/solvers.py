"""Predictor-corrector time steppers for first-order and fractional problems.

Three schemes over a shared problem/trace model:

* :func:`solve_classical_pc` -- forward-Euler predictor with a trapezoid
  corrector pass, for ordinary (order-1) problems.
* :func:`solve_conformable_pc` -- product rectangle predictor plus product
  trapezoid corrector against the kernel ``x**(a-1)``.  Because those
  coefficients depend only on their own index, the whole history enters
  through two running accumulators and one step costs O(1).
* :func:`solve_caputo_pc` -- the Adams-Bashforth-Moulton scheme for the
  Caputo derivative of order in (0, 1].  Its weights depend on the
  distance to the current node, so one step costs O(n).

All solvers apply the corrector as a fixed number of PECE passes
(``corrector_iterations``, default 1) and abort with :class:`BlowUpError`
as soon as an iterate leaves ``[-BLOWUP_LIMIT, BLOWUP_LIMIT]`` or goes
non-finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Alpha, AlphaLike, UniformGrid, as_alpha, make_grid
from .errors import BlowUpError, DomainError
from .quadrature import (
    gamma,
    rectangle_coefficient,
    trapezoid_coefficient,
    trapezoid_tail_coefficient,
)

#: a right-hand side f(t, y)
RightHandSide = Callable[[float, float], float]

#: iterates beyond this magnitude are treated as blow-up
BLOWUP_LIMIT = 1e12


@dataclass(frozen=True)
class InitialValueProblem:
    """``T_a y = rhs(t, y)`` on [0, horizon] with ``y(0) = y0``.

    ``order`` is the order of the conformable derivative ``T_a``; with
    ``order == 1`` this is a plain first-order ODE.
    """

    rhs: RightHandSide
    y0: float
    horizon: float
    order: Alpha

    def __post_init__(self):
        if not math.isfinite(self.y0):
            raise DomainError(f"initial value must be finite, got {self.y0!r}")
        if not self.horizon > 0.0:
            raise DomainError(f"horizon must be positive, got {self.horizon!r}")


@dataclass(frozen=True)
class CaputoProblem:
    """``D_a y = rhs(t, y)`` (Caputo) on [0, horizon] with ``y(0) = y0``.

    Restricted to order in (0, 1], where the single initial value fixes
    the solution's Taylor head.
    """

    rhs: RightHandSide
    y0: float
    horizon: float
    order: Alpha

    def __post_init__(self):
        if not math.isfinite(self.y0):
            raise DomainError(f"initial value must be finite, got {self.y0!r}")
        if not self.horizon > 0.0:
            raise DomainError(f"horizon must be positive, got {self.horizon!r}")


@dataclass(frozen=True)
class SolutionTrace:
    """Per-node output of one solver run.

    ``values[j]`` approximates y at node j; ``predictors[j - 1]`` holds the
    predicted (pre-correction) value at node j when the scheme produces
    one.
    """

    grid: UniformGrid
    values: np.ndarray
    predictors: np.ndarray | None
    method: str

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.node_count,):
            raise ValueError(
                f"expected {self.grid.node_count} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("trace contains non-finite values")
        object.__setattr__(self, "values", values)
        if self.predictors is not None:
            preds = np.asarray(self.predictors, dtype=float)
            if preds.shape != (self.grid.node_count - 1,):
                raise ValueError(
                    f"expected {self.grid.node_count - 1} predictor values, "
                    f"got shape {preds.shape}"
                )
            object.__setattr__(self, "predictors", preds)

    def times(self) -> np.ndarray:
        return self.grid.nodes()

    @property
    def endpoint(self) -> float:
        return float(self.values[-1])


def _guard(step_index: int, value: float) -> float:
    if not math.isfinite(value) or abs(value) > BLOWUP_LIMIT:
        raise BlowUpError(step_index, value)
    return value


def _checked_iterations(corrector_iterations: int) -> int:
    if corrector_iterations < 1:
        raise ValueError(
            f"corrector needs at least one pass, got {corrector_iterations}"
        )
    return corrector_iterations


def solve_classical_pc(
    problem: InitialValueProblem,
    h: float,
    corrector_iterations: int = 1,
) -> SolutionTrace:
    """Euler-predictor / trapezoid-corrector run over the whole grid.

    Only defined for ``problem.order == 1``; fractional orders belong to
    :func:`solve_conformable_pc`.
    """
    if problem.order.value != 1.0:
        raise DomainError(
            f"classical scheme requires order 1, got {problem.order.value!r}"
        )
    iterations = _checked_iterations(corrector_iterations)
    grid = make_grid(problem.horizon, h)
    rhs = problem.rhs
    values = np.empty(grid.node_count)
    predictors = np.empty(grid.node_count - 1)
    values[0] = problem.y0
    y = problem.y0
    for step in range(1, grid.node_count):
        t_prev = grid.node(step - 1)
        t_next = grid.node(step)
        f_prev = rhs(t_prev, y)
        predicted = _guard(step, y + h * f_prev)
        corrected = predicted
        for _ in range(iterations):
            corrected = _guard(step, y + 0.5 * h * (f_prev + rhs(t_next, corrected)))
        values[step] = corrected
        predictors[step - 1] = predicted
        y = corrected
    return SolutionTrace(grid=grid, values=values, predictors=predictors,
                         method="classical")


@dataclass(frozen=True)
class ConformablePcState:
    """Running sums that carry the conformable scheme's whole history.

    After absorbing nodes 0 .. i, ``predictor_accumulator`` already equals
    the predicted value at node i + 1 (initial value plus the scaled
    rectangle-weighted sum of past slopes) and ``corrector_history`` holds
    the initial value plus the scaled trapezoid-weighted sum of the same
    slopes -- everything the corrector needs except its closing term.
    """

    predictor_accumulator: float
    corrector_history: float
    step_index: int


def initial_conformable_state(
    problem: InitialValueProblem,
    grid: UniformGrid,
) -> ConformablePcState:
    """State after absorbing the initial node only."""
    a = problem.order.value
    cte1 = grid.step**a / a
    cte2 = cte1 / (a + 1.0)
    f0 = problem.rhs(0.0, problem.y0)
    # rectangle and trapezoid coefficients at index 0 are both 1
    return ConformablePcState(
        predictor_accumulator=problem.y0 + cte1 * f0,
        corrector_history=problem.y0 + cte2 * f0,
        step_index=0,
    )


def conformable_step(
    state: ConformablePcState,
    problem: InitialValueProblem,
    grid: UniformGrid,
    step_index: int,
    corrector_iterations: int = 1,
) -> tuple[ConformablePcState, float, float]:
    """Advance the conformable scheme to ``step_index``.

    Returns ``(new_state, corrected, predicted)`` where ``corrected``
    approximates y at node ``step_index``.  The slope stored in the new
    state is evaluated at the corrected value, so predictor and corrector
    share one history.
    """
    if step_index != state.step_index + 1:
        raise ValueError(
            f"state has absorbed node {state.step_index}; "
            f"cannot produce node {step_index}"
        )
    if step_index >= grid.node_count:
        raise ValueError(
            f"node {step_index} lies outside the grid "
            f"(last node is {grid.node_count - 1})"
        )
    iterations = _checked_iterations(corrector_iterations)
    a = problem.order.value
    cte1 = grid.step**a / a
    cte2 = cte1 / (a + 1.0)
    t_next = grid.node(step_index)
    tail = trapezoid_tail_coefficient(step_index - 1, a)
    predicted = _guard(step_index, state.predictor_accumulator)
    corrected = predicted
    for _ in range(iterations):
        corrected = _guard(
            step_index,
            state.corrector_history + cte2 * tail * problem.rhs(t_next, corrected),
        )
    f_next = problem.rhs(t_next, corrected)
    new_state = ConformablePcState(
        predictor_accumulator=state.predictor_accumulator
        + cte1 * rectangle_coefficient(step_index, a) * f_next,
        corrector_history=state.corrector_history
        + cte2 * trapezoid_coefficient(step_index, a) * f_next,
        step_index=step_index,
    )
    return new_state, corrected, predicted


def solve_conformable_pc(
    problem: InitialValueProblem,
    h: float,
    corrector_iterations: int = 1,
) -> SolutionTrace:
    """Product rectangle/trapezoid predictor-corrector run, O(1) per step."""
    grid = make_grid(problem.horizon, h)
    values = np.empty(grid.node_count)
    predictors = np.empty(grid.node_count - 1)
    values[0] = problem.y0
    state = initial_conformable_state(problem, grid)
    for step in range(1, grid.node_count):
        state, corrected, predicted = conformable_step(
            state, problem, grid, step, corrector_iterations
        )
        values[step] = corrected
        predictors[step - 1] = predicted
    return SolutionTrace(grid=grid, values=values, predictors=predictors,
                         method="conformable")


def solve_conformable_pc_direct(
    problem: InitialValueProblem,
    h: float,
    corrector_iterations: int = 1,
) -> SolutionTrace:
    """Reference variant of :func:`solve_conformable_pc` without accumulators.

    Re-sums the full weighted history at every step (O(n) per step).  Kept
    as an independent route for cross-checking the accumulator algebra;
    results agree with the fast path to rounding.
    """
    iterations = _checked_iterations(corrector_iterations)
    grid = make_grid(problem.horizon, h)
    a = problem.order.value
    cte1 = grid.step**a / a
    cte2 = cte1 / (a + 1.0)
    rhs = problem.rhs
    panels = grid.panel_count
    w = np.array([rectangle_coefficient(j, a) for j in range(panels)])
    c = np.array([trapezoid_coefficient(j, a) for j in range(panels)])
    slopes = np.empty(panels)
    slopes[0] = rhs(0.0, problem.y0)
    values = np.empty(grid.node_count)
    predictors = np.empty(panels)
    values[0] = problem.y0
    for step in range(1, grid.node_count):
        t_next = grid.node(step)
        hist = slopes[:step]
        predicted = _guard(
            step, problem.y0 + cte1 * float(np.dot(w[:step], hist))
        )
        partial = problem.y0 + cte2 * float(np.dot(c[:step], hist))
        tail = cte2 * trapezoid_tail_coefficient(step - 1, a)
        corrected = predicted
        for _ in range(iterations):
            corrected = _guard(step, partial + tail * rhs(t_next, corrected))
        values[step] = corrected
        predictors[step - 1] = predicted
        if step < panels:
            slopes[step] = rhs(t_next, corrected)
    return SolutionTrace(grid=grid, values=values, predictors=predictors,
                         method="conformable")


def _caputo_kernels(panels: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    # k**a and k**(a+1) tables shared by every step's reversed-weight dot
    p = np.arange(panels + 1, dtype=float) ** a
    q = np.arange(panels + 2, dtype=float) ** (a + 1.0)
    predictor_kernel = p[1:] - p[:-1]  # (k+1)**a - k**a, k = 0 .. n
    interior_kernel = q[:-2] - 2.0 * q[1:-1] + q[2:]  # second differences
    return predictor_kernel, interior_kernel


def caputo_weights(n: int, alpha: AlphaLike) -> tuple[np.ndarray, np.ndarray]:
    """Weight vectors the Caputo scheme applies when producing node n + 1.

    ``predictor[j]`` multiplies the slope at node j in the predictor sum
    (scale ``h**a / gamma(a + 1)``); ``corrector[j]`` multiplies it in the
    corrector sum (scale ``h**a / gamma(a + 2)``), the final entry being
    the closing weight on the slope at the predicted value.  At order 1
    these collapse to the cumulative left-rectangle and trapezoid weights.
    """
    if n < 0:
        raise ValueError(f"panel index must be non-negative, got {n}")
    a = as_alpha(alpha).value
    predictor_kernel, interior_kernel = _caputo_kernels(n + 1, a)
    predictor = predictor_kernel[: n + 1][::-1].copy()
    corrector = np.empty(n + 2)
    corrector[0] = trapezoid_tail_coefficient(n, a)
    if n >= 1:
        corrector[1 : n + 1] = interior_kernel[:n][::-1]
    corrector[n + 1] = 1.0
    return predictor, corrector


def solve_caputo_pc(
    problem: CaputoProblem,
    h: float,
    corrector_iterations: int = 1,
) -> SolutionTrace:
    """Adams-Bashforth-Moulton run for a Caputo problem of order in (0, 1].

    Fractional rectangle predictor, fractional trapezoid corrector; the
    per-step weighted sums are evaluated as vector products against
    precomputed power tables.
    """
    iterations = _checked_iterations(corrector_iterations)
    grid = make_grid(problem.horizon, h)
    a = problem.order.value
    rhs = problem.rhs
    panels = grid.panel_count
    predictor_kernel, interior_kernel = _caputo_kernels(panels, a)
    predictor_scale = h**a / gamma(a + 1.0)
    corrector_scale = h**a / gamma(a + 2.0)
    slopes = np.empty(panels)
    slopes[0] = rhs(0.0, problem.y0)
    values = np.empty(grid.node_count)
    predictors = np.empty(panels)
    values[0] = problem.y0
    for step in range(1, grid.node_count):
        n = step - 1
        t_next = grid.node(step)
        hist = slopes[:step]
        predicted = _guard(
            step,
            problem.y0
            + predictor_scale * float(np.dot(predictor_kernel[:step][::-1], hist)),
        )
        # weight of the oldest slope mirrors the conformable closing weight
        head = trapezoid_tail_coefficient(n, a) * slopes[0]
        if n >= 1:
            head += float(np.dot(interior_kernel[:n][::-1], slopes[1:step]))
        corrected = predicted
        for _ in range(iterations):
            corrected = _guard(
                step,
                problem.y0
                + corrector_scale * (head + rhs(t_next, corrected)),
            )
        values[step] = corrected
        predictors[step - 1] = predicted
        if step < panels:
            slopes[step] = rhs(t_next, corrected)
    return SolutionTrace(grid=grid, values=values, predictors=predictors,
                         method="caputo")
