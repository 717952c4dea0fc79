"""Shared RK4 integrator for flows on graded coefficient vectors."""

from __future__ import annotations

from .graded import GradedVector


def _to_float(v: GradedVector) -> GradedVector:
    return GradedVector(v.space, {lab: float(c) for lab, c in v.coeffs.items()})


def rk4_path(rhs, y0: GradedVector, steps: int, t_final: float = 1.0):
    """Classic fixed-step RK4; returns [(t_i, y_i)] including both endpoints.

    The state is converted to floats up front so exact scalars never leak
    into the integrator.
    """
    h = t_final / steps
    y = _to_float(y0)
    path = [(0.0, y)]
    t = 0.0
    for _ in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + k1.scaled(h / 2))
        k3 = rhs(t + h / 2, y + k2.scaled(h / 2))
        k4 = rhs(t + h, y + k3.scaled(h))
        y = y + (k1 + k2.scaled(2.0) + k3.scaled(2.0) + k4).scaled(h / 6)
        t += h
        path.append((t, _to_float(y)))
    return path


def piecewise_constant(controls, t_final: float = 1.0):
    """Path t -> controls[floor(t / t_final * len)] with right-end clamping."""
    n = len(controls)
    if n == 0:
        raise ValueError("empty control list")

    def path(t: float):
        idx = min(int(t / t_final * n), n - 1)
        return controls[idx]

    return path
