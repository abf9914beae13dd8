"""Reaction-term families and hypothesis checkers.

Three built-in families are provided:

* power_product:        F = c * u**a * v**b (a gradient system),
* gradient_homogeneous: F = c * u**(2(1+alpha)) * h(v/u), the equality
  family of the Euler-type condition,
* absorption:           f1 = v**p - a*u**r, f2 = u**q - b*v**s (no potential).

Hypothesis checks are sampling-based: the conditions are global in (u, v),
so each checker evaluates the relevant slack on a log-uniform grid over a
declared box and reports the worst point.  A report never proves a
hypothesis; it states the box that was sampled.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    BadExponent,
    EvalAtZeroU,
    NegativeInitialData,
    NotGradientSystem,
)
from .functionals import discrete_gradient_energy
from .geometry import Mesh, boundary_integral, interior_integral

# relative slack below which a sampled inequality is considered violated
HOLD_TOL = 1e-9

DEFAULT_BOX = ((1e-3, 1e3), (1e-3, 1e3))
DEFAULT_SAMPLES = 64

# classifier outcomes for the absorption system
BLOWUP_EXISTS = "blowup_exists"
ALL_GLOBAL = "all_global"
ALL_GLOBAL_BOUNDED = "all_global_bounded"
THRESHOLD_BLOWUP_SMALL_AB = "threshold_blowup_small_ab"
THRESHOLD_GLOBAL_BOUNDED = "threshold_global_bounded"
THRESHOLD_GLOBAL = "threshold_global"


@dataclass(frozen=True)
class ShapeFunction:
    """One-argument shape function with its derivative, for homogeneous F."""

    name: str
    value: Callable
    derivative: Callable


def shape_power(m: float) -> ShapeFunction:
    return ShapeFunction(
        name=f"w^{m:g}",
        value=lambda w: w**m,
        derivative=lambda w: m * w ** (m - 1.0),
    )


def shape_constant(value: float = 1.0) -> ShapeFunction:
    return ShapeFunction(
        name=f"constant {value:g}",
        value=lambda w: np.full_like(np.asarray(w, dtype=float), value),
        derivative=lambda w: np.zeros_like(np.asarray(w, dtype=float)),
    )


def shape_exp_decay() -> ShapeFunction:
    return ShapeFunction(
        name="exp(-w)",
        value=lambda w: np.exp(-np.asarray(w, dtype=float)),
        derivative=lambda w: -np.exp(-np.asarray(w, dtype=float)),
    )


SHAPE_CATALOG = {
    "constant": lambda params: shape_constant(float(params.get("value", 1.0))),
    "power": lambda params: shape_power(float(params["m"])),
    "exp_decay": lambda params: shape_exp_decay(),
}


@dataclass(frozen=True)
class Nonlinearity:
    """Reaction terms f1, f2 and, for gradient systems, their potential F."""

    family: str
    params: dict
    f1: Callable
    f2: Callable
    F: Optional[Callable] = None

    @property
    def has_potential(self) -> bool:
        return self.F is not None

    def require_potential(self, op: str):
        if self.F is None:
            raise NotGradientSystem(f"{op} requires a gradient system (no F available)")


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of a sampled hypothesis check.

    margin is the smallest scaled slack found; the hypothesis is reported
    as holding iff margin >= -HOLD_TOL.  witness is the worst sample point
    when violated (for the integral conditions H2/H3 it is the (lhs, rhs)
    pair instead of a point).
    """

    hypothesis: str
    holds: bool
    margin: float
    witness: Optional[tuple]
    description: str


def make_power_product(c: float, a_exp: float, b_exp: float) -> Nonlinearity:
    """F = c * u**a * v**b with partial-derivative reaction terms."""
    if c <= 0:
        raise BadExponent("coefficient c must be positive")
    if a_exp < 1 or b_exp < 1:
        raise BadExponent("exponents must be >= 1 for continuity at 0")
    a, b = float(a_exp), float(b_exp)

    def F(u, v):
        return c * u**a * v**b

    def f1(u, v):
        return c * a * u ** (a - 1.0) * v**b

    def f2(u, v):
        return c * b * u**a * v ** (b - 1.0)

    return Nonlinearity(
        family="power_product",
        params={"c": c, "a_exp": a, "b_exp": b},
        f1=f1, f2=f2, F=F,
    )


def make_gradient_homogeneous(c: float, alpha: float, h: ShapeFunction) -> Nonlinearity:
    """F = c * u**(2(1+alpha)) * h(v/u); the Euler identity
    u*f1 + v*f2 = 2(1+alpha)*F holds identically for this family."""
    if alpha <= 0:
        raise BadExponent("alpha must be positive")
    m = 2.0 * (1.0 + alpha)

    def _check_u(u):
        if np.any(np.asarray(u) <= 0):
            raise EvalAtZeroU("homogeneous family requires u > 0")

    def F(u, v):
        _check_u(u)
        u = np.asarray(u, dtype=float)
        return c * u**m * h.value(v / u)

    def f1(u, v):
        _check_u(u)
        u = np.asarray(u, dtype=float)
        w = v / u
        return c * u ** (m - 1.0) * (m * h.value(w) - w * h.derivative(w))

    def f2(u, v):
        _check_u(u)
        u = np.asarray(u, dtype=float)
        return c * u ** (m - 1.0) * h.derivative(v / u)

    return Nonlinearity(
        family="gradient_homogeneous",
        params={"c": c, "alpha": alpha, "h": h.name},
        f1=f1, f2=f2, F=F,
    )


def make_absorption(p: float, q: float, r: float, s: float, a: float, b: float) -> Nonlinearity:
    """f1 = v**p - a*u**r, f2 = u**q - b*v**s; no potential exists."""
    if min(p, q, r, s) < 1:
        raise BadExponent("exponents must be >= 1")
    if a <= 0 or b <= 0:
        raise BadExponent("absorption coefficients must be positive")

    def f1(u, v):
        return v**p - a * u**r

    def f2(u, v):
        return u**q - b * v**s

    return Nonlinearity(
        family="absorption",
        params={"p": p, "q": q, "r": r, "s": s, "a": a, "b": b},
        f1=f1, f2=f2, F=None,
    )


def _log_grid(box, samples_per_axis):
    (ulo, uhi), (vlo, vhi) = box
    if min(ulo, vlo) <= 0:
        raise ValueError("sample box must lie in (0, inf)^2")
    uu = np.geomspace(ulo, uhi, samples_per_axis)
    vv = np.geomspace(vlo, vhi, samples_per_axis)
    U, V = np.meshgrid(uu, vv, indexing="ij")
    return U, V


def _sampled_report(name, slack, scale, U, V, description) -> HypothesisReport:
    rel = slack / scale
    idx = int(np.argmin(rel))
    margin = float(rel.ravel()[idx])
    holds = margin >= -HOLD_TOL
    witness = None
    if not holds:
        witness = (float(U.ravel()[idx]), float(V.ravel()[idx]))
    return HypothesisReport(
        hypothesis=name, holds=holds, margin=margin,
        witness=witness, description=description,
    )


def check_H1(nl: Nonlinearity, alpha: float, box=DEFAULT_BOX,
             samples_per_axis: int = DEFAULT_SAMPLES) -> HypothesisReport:
    """Sampled check of u*f1 + v*f2 >= 2(1+alpha)*F on the declared box."""
    nl.require_potential("check_H1")
    U, V = _log_grid(box, samples_per_axis)
    lhs = U * nl.f1(U, V) + V * nl.f2(U, V)
    rhs = 2.0 * (1.0 + alpha) * nl.F(U, V)
    scale = np.abs(U * nl.f1(U, V)) + np.abs(V * nl.f2(U, V)) + np.abs(rhs) + 1e-300
    desc = (f"slack of u*f1+v*f2 - 2(1+alpha)*F at alpha={alpha:g} on "
            f"log-uniform box {box}, {samples_per_axis}^2 samples")
    return _sampled_report("H1", lhs - rhs, scale, U, V, desc)


def _energy_condition(name, lhs, rhs, description) -> HypothesisReport:
    scale = abs(lhs) + abs(rhs) + 1e-300
    margin = (lhs - rhs) / scale
    holds = margin >= -HOLD_TOL
    witness = None if holds else (lhs, rhs)
    return HypothesisReport(
        hypothesis=name, holds=holds, margin=margin,
        witness=witness, description=description,
    )


def check_H2_H3(nl: Nonlinearity, g1, g2, mesh: Mesh, gamma1: float, gamma2: float):
    """Check the initial-data energy conditions with mesh quadrature.

    Each condition compares 2*int F(g1, g2) dx against
    gamma_i * int_bdry g_i^2 ds + int |grad g_i|^2 dx.
    """
    nl.require_potential("check_H2_H3")
    g1 = np.asarray(g1, dtype=float).ravel()
    g2 = np.asarray(g2, dtype=float).ravel()
    if np.min(g1) < 0 or np.min(g2) < 0:
        raise NegativeInitialData("initial data must be nonnegative")
    if np.max(g1) == 0 and np.max(g2) == 0:
        raise NegativeInitialData("initial data must not completely vanish")

    lhs = 2.0 * interior_integral(mesh, nl.F(g1, g2))
    reports = []
    for name, g, gamma in (("H2", g1, gamma1), ("H3", g2, gamma2)):
        bdry = boundary_integral(mesh, mesh.boundary_values(g) ** 2)
        grad = discrete_gradient_energy(g, mesh)
        rhs = gamma * bdry + grad
        desc = (f"2*intF={lhs:.12g} vs gamma*bdry+grad={rhs:.12g} "
                f"(gamma={gamma:g}) on {mesh.cells_per_axis} mesh")
        reports.append(_energy_condition(name, lhs, rhs, desc))
    return tuple(reports)


def check_A2_A3(nl: Nonlinearity, k1: float, k2: float, p: float,
                box=DEFAULT_BOX, samples_per_axis: int = DEFAULT_SAMPLES):
    """Sampled check of f1 <= k1*u**(p+1) and f2 <= k2*v**(p+1)."""
    U, V = _log_grid(box, samples_per_axis)
    desc = (f"p={p:g} on log-uniform box {box}, {samples_per_axis}^2 samples")
    reports = []
    for name, k, bound, f in (
        ("A2", k1, U ** (p + 1.0), nl.f1),
        ("A3", k2, V ** (p + 1.0), nl.f2),
    ):
        slack = k * bound - f(U, V)
        scale = k * bound + np.abs(f(U, V)) + 1e-300
        reports.append(_sampled_report(name, slack, scale, U, V, f"k={k:g}, " + desc))
    return tuple(reports)


def check_A2prime(nl: Nonlinearity, k1: float, k2: float, p: float,
                  box=DEFAULT_BOX, samples_per_axis: int = DEFAULT_SAMPLES) -> HypothesisReport:
    """Sampled check of u**(2p-1)*f1 + v**(2p-1)*f2 <= k1*u**(3p) + k2*v**(3p),
    with the diagonal u = v added to the sample set (worst line for the
    built-in polynomial families)."""
    U, V = _log_grid(box, samples_per_axis)
    diag = np.geomspace(box[0][0], box[0][1], samples_per_axis * 4)
    U = np.concatenate([U.ravel(), diag])
    V = np.concatenate([V.ravel(), diag])
    lhs = U ** (2.0 * p - 1.0) * nl.f1(U, V) + V ** (2.0 * p - 1.0) * nl.f2(U, V)
    rhs = k1 * U ** (3.0 * p) + k2 * V ** (3.0 * p)
    scale = np.abs(lhs) + np.abs(rhs) + 1e-300
    desc = (f"k1={k1:g}, k2={k2:g}, p={p:g} on log-uniform box {box} "
            f"({samples_per_axis}^2 samples plus diagonal)")
    return _sampled_report("A2prime", rhs - lhs, scale, U, V, desc)


def classify_absorption(p: float, q: float, r: float, s: float,
                        a: float, b: float) -> str:
    """Case split for the cooperative absorption system: blow-up existence,
    globality, or the threshold sub-cases."""
    if min(a, b) <= 0:
        raise ValueError("a, b must be positive")
    crit = max(r, 1.0) * max(s, 1.0)
    pq = p * q
    if pq > crit:
        return BLOWUP_EXISTS
    if pq < crit:
        return ALL_GLOBAL_BOUNDED if (r >= 1 and s >= 1) else ALL_GLOBAL
    # threshold pq == max(r,1)*max(s,1)
    if r <= 1 or s <= 1:
        return THRESHOLD_GLOBAL
    if a**q * b**r >= 1:
        return THRESHOLD_GLOBAL_BOUNDED
    return THRESHOLD_BLOWUP_SMALL_AB
