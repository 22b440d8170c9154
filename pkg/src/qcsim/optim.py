"""Classical optimizers and gradient strategies.

Optimizers minimize F: R^n -> R given an ObjectiveFunction; gradient
strategies turn a parameterized circuit + observable into the batch of
circuit executions whose expectations combine into dF/dx.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .backend import StatevectorAccelerator, expectation
from .errors import OptimizationError
from .ir import CompositeInstruction, evaluate
from .pauli import PauliOperator, PauliTerm, observe
from .registry import HeterogeneousMap, as_het_map

FD_DEFAULT_STEP = 1e-4
SHIFT = math.pi / 2.0
GRADIENT_STRATEGIES = ("central", "forward", "backward", "parameter-shift")


@dataclass
class ObjectiveFunction:
    """Callable F(x, grad_out) -> value; grad_out is filled only when
    provides_gradient is true."""

    function: Callable[[np.ndarray, np.ndarray], float]
    dimension: int
    provides_gradient: bool = False

    def __call__(self, x: np.ndarray, grad_out: np.ndarray) -> float:
        value = self.function(np.asarray(x, dtype=float), grad_out)
        if math.isnan(value):
            raise OptimizationError(f"objective returned NaN at x={list(x)}")
        return value

    def value(self, x: np.ndarray) -> float:
        return self(x, np.empty(0))


@dataclass
class OptimizerResult:
    opt_val: float
    opt_params: list[float]
    iterations: int
    converged: bool


def _read_common_options(options: HeterogeneousMap, dimension: int):
    max_iter = options.get_or("max-iterations", "int", 500)
    tolerance = options.get_or("tolerance", "real", 1e-8)
    x0 = np.asarray(
        options.get_or("initial-point", "real-list", [0.0] * dimension), dtype=float
    )
    if x0.size != dimension:
        raise OptimizationError(
            f"initial-point has {x0.size} entries, objective dimension is {dimension}"
        )
    lower = options.get_or("lower-bounds", "real-list", None)
    upper = options.get_or("upper-bounds", "real-list", None)
    bounds = None
    if lower is not None or upper is not None:
        lo = np.asarray(lower if lower is not None else [-np.inf] * dimension)
        hi = np.asarray(upper if upper is not None else [np.inf] * dimension)
        if lo.size != dimension or hi.size != dimension:
            raise OptimizationError("bounds length does not match dimension")
        bounds = (lo, hi)
    return max_iter, tolerance, x0, bounds


def _clip(x: np.ndarray, bounds) -> np.ndarray:
    if bounds is None:
        return x
    return np.clip(x, bounds[0], bounds[1])


class NelderMead:
    """Derivative-free simplex descent with deterministic initialization."""

    simplex_step = 0.1

    def name(self) -> str:
        return "nelder-mead"

    def optimize(
        self, f: ObjectiveFunction, options: "HeterogeneousMap | dict | None" = None
    ) -> OptimizerResult:
        options = as_het_map(options)
        max_iter, tolerance, x0, bounds = _read_common_options(options, f.dimension)
        n = f.dimension
        points = [_clip(x0, bounds)]
        for i in range(n):
            vertex = x0.copy()
            vertex[i] += self.simplex_step
            points.append(_clip(vertex, bounds))
        values = [f.value(p) for p in points]

        iterations = 0
        converged = False
        while iterations < max_iter:
            order = np.argsort(values, kind="stable")
            points = [points[i] for i in order]
            values = [values[i] for i in order]
            if abs(values[-1] - values[0]) < tolerance:
                converged = True
                break
            iterations += 1
            centroid = np.mean(points[:-1], axis=0)

            reflected = _clip(centroid + (centroid - points[-1]), bounds)
            f_reflected = f.value(reflected)
            if values[0] <= f_reflected < values[-2]:
                points[-1], values[-1] = reflected, f_reflected
                continue
            if f_reflected < values[0]:
                expanded = _clip(centroid + 2.0 * (centroid - points[-1]), bounds)
                f_expanded = f.value(expanded)
                if f_expanded < f_reflected:
                    points[-1], values[-1] = expanded, f_expanded
                else:
                    points[-1], values[-1] = reflected, f_reflected
                continue
            contracted = _clip(centroid + 0.5 * (points[-1] - centroid), bounds)
            f_contracted = f.value(contracted)
            if f_contracted < values[-1]:
                points[-1], values[-1] = contracted, f_contracted
                continue
            # shrink toward the best vertex
            for i in range(1, len(points)):
                points[i] = _clip(points[0] + 0.5 * (points[i] - points[0]), bounds)
                values[i] = f.value(points[i])

        best = int(np.argmin(values))
        return OptimizerResult(
            opt_val=float(values[best]),
            opt_params=[float(v) for v in points[best]],
            iterations=iterations,
            converged=converged,
        )


class GradientDescent:
    """Steepest descent with Armijo backtracking line search."""

    armijo_c = 1e-4
    initial_step = 1.0
    min_step = 1e-14

    def name(self) -> str:
        return "gradient-descent"

    def _gradient(self, f: ObjectiveFunction, x: np.ndarray, fx: float) -> np.ndarray:
        if f.provides_gradient:
            grad = np.zeros(f.dimension)
            f(x, grad)
            return grad
        # internal central-difference fallback
        grad = np.zeros(f.dimension)
        for i in range(f.dimension):
            step = np.zeros(f.dimension)
            step[i] = FD_DEFAULT_STEP
            grad[i] = (f.value(x + step) - f.value(x - step)) / (2 * FD_DEFAULT_STEP)
        return grad

    def optimize(
        self, f: ObjectiveFunction, options: "HeterogeneousMap | dict | None" = None
    ) -> OptimizerResult:
        options = as_het_map(options)
        max_iter, tolerance, x, bounds = _read_common_options(options, f.dimension)
        x = _clip(x, bounds)
        fx = f.value(x)
        iterations = 0
        converged = False
        while iterations < max_iter:
            iterations += 1
            grad = self._gradient(f, x, fx)
            norm_sq = float(np.dot(grad, grad))
            if norm_sq == 0.0:
                converged = True
                break
            step = self.initial_step
            while step > self.min_step:
                candidate = _clip(x - step * grad, bounds)
                f_candidate = f.value(candidate)
                if f_candidate <= fx - self.armijo_c * step * norm_sq:
                    break
                step *= 0.5
            else:
                converged = True
                break
            if abs(fx - f_candidate) < tolerance:
                x, fx = candidate, f_candidate
                converged = True
                break
            x, fx = candidate, f_candidate
        return OptimizerResult(
            opt_val=float(fx),
            opt_params=[float(v) for v in x],
            iterations=iterations,
            converged=converged,
        )


def optimize(
    optimizer_name: str,
    options: "HeterogeneousMap | dict | None",
    f: ObjectiveFunction,
) -> OptimizerResult:
    """Registry-backed entry point mirroring the service lookup pattern."""
    from .registry import ServiceKind, get_service

    optimizer = get_service(ServiceKind.OPTIMIZER, optimizer_name)
    return optimizer.optimize(f, options)


@dataclass(frozen=True)
class GradientCircuit:
    """One executable entry of a GradientRequest.

    ``term`` is None for finite-difference entries (the circuit's full
    observable expectation is requested); for parameter-shift entries the
    circuit is already measured and the coefficient-weighted expectation
    of ``term`` is requested.
    """

    circuit: CompositeInstruction
    parameter_index: int
    role: str  # "base", "plus", "minus"
    term: PauliTerm | None = None


@dataclass
class GradientRequest:
    strategy: str
    step: float
    dimension: int
    entries: list[GradientCircuit] = field(default_factory=list)

    @property
    def circuits(self) -> list[CompositeInstruction]:
        return [entry.circuit for entry in self.entries]


def gradient_executions(
    strategy: str,
    circuit: CompositeInstruction,
    x: Sequence[float],
    obs: PauliOperator,
    step: float = FD_DEFAULT_STEP,
) -> GradientRequest:
    """Circuits whose expectations combine into the gradient at x.

    Finite differences shift the variable vector by +-step; the
    parameter-shift rule emits, per (parameter, non-identity term) pair,
    two measured circuits at +-pi/2 (exact for the exp_pauli rotation
    convention).
    """
    if strategy not in GRADIENT_STRATEGIES:
        raise ValueError(
            f"unknown gradient strategy '{strategy}'; choose from {GRADIENT_STRATEGIES}"
        )
    x = np.asarray(x, dtype=float)
    if x.size != len(circuit.variables):
        raise ValueError(
            f"circuit has {len(circuit.variables)} variables, got {x.size} values"
        )
    request = GradientRequest(
        strategy=strategy,
        step=SHIFT if strategy == "parameter-shift" else step,
        dimension=x.size,
    )

    def shifted(i: int, delta: float) -> CompositeInstruction:
        shifted_x = x.copy()
        shifted_x[i] += delta
        return evaluate(circuit, shifted_x)

    if strategy in ("forward", "backward"):
        request.entries.append(GradientCircuit(evaluate(circuit, x), -1, "base"))
    for i in range(x.size):
        if strategy == "central":
            request.entries.append(GradientCircuit(shifted(i, +step), i, "plus"))
            request.entries.append(GradientCircuit(shifted(i, -step), i, "minus"))
        elif strategy == "forward":
            request.entries.append(GradientCircuit(shifted(i, +step), i, "plus"))
        elif strategy == "backward":
            request.entries.append(GradientCircuit(shifted(i, -step), i, "minus"))
        else:
            for sign, role in ((+SHIFT, "plus"), (-SHIFT, "minus")):
                for term, measured in observe(obs, shifted(i, sign)):
                    request.entries.append(GradientCircuit(measured, i, role, term))
    return request


def compute_gradient(request: GradientRequest, expectations: Sequence[float]) -> np.ndarray:
    """Combine per-circuit expectations into the gradient vector."""
    if len(expectations) != len(request.entries):
        raise ValueError(
            f"{len(request.entries)} circuits but {len(expectations)} expectations"
        )
    grad = np.zeros(request.dimension)
    h = request.step
    base = 0.0
    for entry, value in zip(request.entries, expectations):
        if entry.role == "base":
            base = value
    for entry, value in zip(request.entries, expectations):
        if entry.role == "base":
            continue
        sign = 1.0 if entry.role == "plus" else -1.0
        if request.strategy == "central":
            grad[entry.parameter_index] += sign * value / (2.0 * h)
        elif request.strategy == "forward":
            grad[entry.parameter_index] += (value - base) / h if sign > 0 else 0.0
        elif request.strategy == "backward":
            grad[entry.parameter_index] += (base - value) / h if sign < 0 else 0.0
        else:
            grad[entry.parameter_index] += sign * value / 2.0
    return grad


def evaluate_gradient(
    strategy: str,
    circuit: CompositeInstruction,
    x: Sequence[float],
    obs: PauliOperator,
    accelerator: StatevectorAccelerator,
    step: float = FD_DEFAULT_STEP,
) -> np.ndarray:
    """Build, execute, and combine a gradient request."""
    request = gradient_executions(strategy, circuit, x, obs, step=step)
    n = max(circuit.max_qubit() + 1, obs.n_qubits(), 1)
    expectations = []
    for entry in request.entries:
        if entry.term is None:
            expectations.append(expectation(obs, entry.circuit, accelerator))
        else:
            parity = accelerator.execute_and_reduce(entry.circuit, entry.term, n)
            expectations.append(entry.term.coefficient.real * parity)
    return compute_gradient(request, expectations)
