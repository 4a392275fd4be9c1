"""Numerical verification of the generalized Cauchy-Pompeiu machinery.

Each ``check_*`` function (and :func:`cauchy`, :func:`cauchy_pompeiu`)
returns a :class:`VerificationReport` comparing a quadrature result with a
reference value.  References are direct evaluations or closed forms wherever
one exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import ZERO, AlgebraParams, ElComplex, inv, make_params, mul
from .calculus import (
    Kernel,
    Product,
    SmoothNonHolo,
    TestFunction,
    TildePower,
    cr_apply,
)
from .errors import EllipticityViolation, NotHolomorphic, PoleOutsideDomain
from .quadrature import (
    AlgEllipse,
    Circle,
    Curve,
    Disk,
    QuadratureSpec,
    StarDomain,
    area_integral,
    contour_integral,
    reciprocal_distance_integral,
    singular_area_integral,
)

__all__ = [
    "VerificationReport",
    "CHECKS",
    "check_winding",
    "check_deformation",
    "check_green_gauss",
    "check_vanishing_limit",
    "check_schmidt",
    "boundary_defect",
    "cauchy_pompeiu",
    "cauchy",
    "run_checks",
    "sweep",
]

PROVENANCES = ("closed-form", "paper-constant", "self-convergence", "cross-quadrature")

CHECKS = (
    "winding",
    "deformation",
    "vanishing-limit",
    "schmidt",
    "green-gauss",
    "cauchy",
    "cauchy-pompeiu",
)

DEFAULT_SPEC = QuadratureSpec(512, 64)
DEFAULT_ZETA = ElComplex(0.2, 0.1)


def _euclid(z: ElComplex) -> float:
    return float(math.hypot(float(z.re), float(z.im)))


@dataclass
class VerificationReport:
    check: str
    alpha: float | None
    beta: float | None
    computed: ElComplex | float | None
    reference: ElComplex | float | None
    abs_error: float
    tolerance: float
    n_theta: int
    n_r: int
    provenance: str = "closed-form"
    reason: str | None = None
    detail: dict = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        self.passed = bool(self.reason is None and self.abs_error <= self.tolerance)

    @classmethod
    def compare(cls, check, p, computed, reference, tolerance, spec, **kw):
        if isinstance(computed, ElComplex):
            err = _euclid(computed - reference)
        else:
            err = abs(float(computed) - float(reference))
        return cls(check, p.alpha, p.beta, computed, reference, err, tolerance,
                   spec.n_theta, spec.n_r, **kw)

    def fail(self, reason: str):
        self.reason = reason
        self.passed = False
        return self

    def to_json(self) -> dict:
        def enc(v):
            if v is None:
                return None
            if isinstance(v, ElComplex):
                return v.to_json()
            return {"re": float(v), "im": 0.0}

        out = {
            "check": self.check,
            "alpha": self.alpha,
            "beta": self.beta,
            "computed": enc(self.computed),
            "reference": enc(self.reference),
            "abs_error": self.abs_error if math.isfinite(self.abs_error) else None,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "n_theta": self.n_theta,
            "n_r": self.n_r,
            "provenance": self.provenance,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        return out


def _kernel_times(f: TestFunction, zeta: ElComplex):
    return Product(f, Kernel(zeta))


def _two_pi_i_hat_inv(p: AlgebraParams, scale: float) -> ElComplex:
    return inv(p.i_hat * scale, p)


# -- winding constant ----------------------------------------------------------

def check_winding(p: AlgebraParams, eps: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC,
                  zeta: ElComplex = ZERO, tolerance: float = 1e-9) -> VerificationReport:
    """Kernel winding integral over the Euclidean circle against ``2 pi i_hat``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    computed = contour_integral(Kernel(zeta), Circle(zeta, eps), spec, p)
    return VerificationReport.compare(
        "winding", p, computed, p.i_hat * (2.0 * math.pi), tolerance, spec,
        provenance="paper-constant", detail={"eps": eps},
    )


def check_deformation(p: AlgebraParams, eps: float = 0.5, spec: QuadratureSpec = DEFAULT_SPEC,
                      zeta: ElComplex = ZERO, eps_ellipse: float | None = None,
                      tolerance: float = 1e-9) -> VerificationReport:
    """Circle of radius ``eps`` vs. an enclosing (alpha, beta)-ellipse.

    The ellipse radius defaults to ``2*eps/k1``; the circle is confirmed to
    lie inside it before either integral is taken.
    """
    if eps_ellipse is None:
        eps_ellipse = 2.0 * eps / p.k1
    circle = Circle(zeta, eps)
    ellipse = AlgEllipse(zeta, eps_ellipse, p)
    t = np.linspace(0.0, 2.0 * np.pi, 1024, endpoint=False)
    inside = ellipse.contains(circle.point(t))
    on_circle = contour_integral(Kernel(zeta), circle, spec, p)
    on_ellipse = contour_integral(Kernel(zeta), ellipse, spec, p)
    rep = VerificationReport.compare(
        "deformation", p, on_circle, on_ellipse, tolerance, spec,
        provenance="cross-quadrature", detail={"eps": eps, "eps_ellipse": eps_ellipse},
    )
    if not inside:
        rep.fail("circle not enclosed by ellipse")
    return rep


def check_green_gauss(g: TestFunction, d: StarDomain, p: AlgebraParams,
                      spec: QuadratureSpec = DEFAULT_SPEC, tolerance: float = 1e-8) -> VerificationReport:
    """``area integral of dbar g`` against half the ``dz~`` boundary integral."""
    area = area_integral(lambda z, q: cr_apply(g.jet(z, q), q), d, spec, p)
    boundary = contour_integral(g, d.boundary(), spec, p) * 0.5
    return VerificationReport.compare(
        "green-gauss", p, area, boundary, tolerance, spec,
        provenance="cross-quadrature", detail={"function": g.to_json()},
    )


# -- vanishing limit ------------------------------------------------------------

def boundary_defect(f: TestFunction, zeta: ElComplex, eps: float, spec: QuadratureSpec,
                    p: AlgebraParams) -> ElComplex:
    """``closed integral (f(z) - f(zeta)) / (z - zeta)~ dz~`` on ``|z - zeta| = eps``."""
    f0 = f(zeta, p)
    k = Kernel(zeta)
    return contour_integral(lambda z, q: mul(f(z, q) - f0, k(z, q), q), Circle(zeta, eps), spec, p)


def _sampled_sup(f, zeta, eps, p, n):
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    diff = f(Circle(zeta, eps).point(t), p) - f(zeta, p)
    return float(np.max(np.hypot(diff.re, diff.im)))


def check_vanishing_limit(f: TestFunction, zeta: ElComplex, p: AlgebraParams,
                          eps_sequence: Sequence[float] = (1e-1, 1e-2, 1e-3),
                          spec: QuadratureSpec = DEFAULT_SPEC) -> list[VerificationReport]:
    """Boundary defect along a decreasing sequence of radii.

    Each defect must stay under ``2 pi (k2/k1**2) L eps (1 + 1e-3)`` with
    ``L = sup |f(z) - f(zeta)| / eps`` sampled on the circle, and must not
    grow from one radius to the next beyond roundoff.
    """
    eps_sequence = [float(e) for e in eps_sequence]
    if any(e <= 0 for e in eps_sequence) or any(b >= a for a, b in zip(eps_sequence, eps_sequence[1:])):
        raise ValueError("eps_sequence must be positive and strictly decreasing")
    const = 2.0 * math.pi * p.k2 / p.k1**2
    slack = 1e-13 * (1.0 + _euclid(f(zeta, p)))
    reports = []
    prev = math.inf
    for eps in eps_sequence:
        defect = _euclid(boundary_defect(f, zeta, eps, spec, p))
        lip = _sampled_sup(f, zeta, eps, p, max(spec.n_theta, 4096)) / eps
        bound = const * lip * eps * (1.0 + 1e-3)
        rep = VerificationReport(
            "vanishing-limit", p.alpha, p.beta, defect, 0.0, defect, max(bound, slack),
            spec.n_theta, spec.n_r, provenance="paper-constant",
            detail={"eps": eps, "lipschitz": lip, "function": f.to_json()},
        )
        if defect > prev + slack:
            rep.fail("defect increased as eps decreased")
        prev = defect
        reports.append(rep)
    return reports


# -- Schmidt bound --------------------------------------------------------------

def check_schmidt(d: StarDomain, zeta: ElComplex, spec: QuadratureSpec = DEFAULT_SPEC,
                  p: AlgebraParams | None = None, slack: float = 1e-6) -> VerificationReport:
    """``area integral of 1/|z - zeta|`` against ``2 pi sqrt(area / pi)``.

    ``abs_error`` is the amount by which the bound is exceeded (0 when it
    holds); ``detail['gap']`` is the signed ``reference - computed``.
    """
    computed = reciprocal_distance_integral(d, zeta, spec)
    bound = 2.0 * math.pi * math.sqrt(d.area / math.pi)
    return VerificationReport(
        "schmidt", None if p is None else p.alpha, None if p is None else p.beta,
        computed, bound, max(0.0, computed - bound), slack, spec.n_theta, spec.n_r,
        provenance="paper-constant", detail={"gap": bound - computed, "zeta": zeta.to_json()},
    )


# -- reconstruction formulas -----------------------------------------------------

def cauchy_pompeiu(f: TestFunction, d: StarDomain, zeta: ElComplex, p: AlgebraParams,
                   spec: QuadratureSpec = DEFAULT_SPEC, tolerance: float = 1e-6) -> VerificationReport:
    """Reconstruct ``f(zeta)`` from boundary values and the dbar area term."""
    if not d.contains(zeta):
        raise PoleOutsideDomain(f"{zeta!r} is not strictly inside {d!r}")
    boundary = contour_integral(_kernel_times(f, zeta), d.boundary(), spec, p)
    area = singular_area_integral(lambda z, q: cr_apply(f.jet(z, q), q), d, zeta, spec, p)
    computed = (mul(_two_pi_i_hat_inv(p, 2.0 * math.pi), boundary, p)
                - mul(_two_pi_i_hat_inv(p, math.pi), area, p))
    return VerificationReport.compare(
        "cauchy-pompeiu", p, computed, f(zeta, p), tolerance, spec,
        detail={"function": f.to_json(), "zeta": zeta.to_json(),
                "boundary_term": boundary.to_json(), "area_term": area.to_json()},
    )


def _require_holomorphic(f: TestFunction, c: Curve, p: AlgebraParams, n: int = 100):
    z = c.interior_samples(n)
    j = f.jet(z, p)
    r = cr_apply(j, p)
    scale = 1.0 + float(np.max(np.hypot(j.dx.re, j.dx.im)) + np.max(np.hypot(j.dy.re, j.dy.im)))
    worst = float(np.max(np.hypot(r.re, r.im)))
    if worst > 1e-10 * scale:
        raise NotHolomorphic(f"{f!r} has |dbar f| up to {worst:.3e} for alpha={p.alpha}, beta={p.beta}")


def cauchy(f: TestFunction, c: Curve, zeta: ElComplex, p: AlgebraParams,
           spec: QuadratureSpec = DEFAULT_SPEC, tolerance: float = 1e-8) -> VerificationReport:
    """Reconstruct a holomorphic ``f(zeta)`` from its boundary values alone.

    Holomorphy is checked by sampling dbar f inside ``c``, not trusted.
    """
    if not c.contains(zeta):
        raise PoleOutsideDomain(f"{zeta!r} is not strictly inside {c!r}")
    _require_holomorphic(f, c, p)
    boundary = contour_integral(_kernel_times(f, zeta), c, spec, p)
    computed = mul(_two_pi_i_hat_inv(p, 2.0 * math.pi), boundary, p)
    return VerificationReport.compare(
        "cauchy", p, computed, f(zeta, p), tolerance, spec,
        detail={"function": f.to_json(), "zeta": zeta.to_json()},
    )


# -- drivers ----------------------------------------------------------------------

def run_checks(p: AlgebraParams, checks: Iterable[str] = CHECKS, spec: QuadratureSpec = DEFAULT_SPEC,
               function: TestFunction | None = None, zeta: ElComplex = DEFAULT_ZETA,
               domain: StarDomain | None = None) -> list[VerificationReport]:
    """Run the named checks at one parameter point with default test objects.

    ``function`` feeds cauchy-pompeiu (and cauchy, when holomorphic);
    ``domain`` defaults to the unit disk.
    """
    checks = list(checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {CHECKS}")
    d = Disk(1.0) if domain is None else domain
    f = SmoothNonHolo("z") if function is None else function
    out: list[VerificationReport] = []
    for name in CHECKS:
        if name not in checks:
            continue
        if name == "winding":
            out.append(check_winding(p, 1.0, spec))
        elif name == "deformation":
            out.append(check_deformation(p, 0.5, spec))
        elif name == "vanishing-limit":
            out.extend(check_vanishing_limit(SmoothNonHolo("x2_plus_iy"), zeta, p, spec=spec))
        elif name == "schmidt":
            out.append(check_schmidt(d, d.center, spec, p))
            out.append(check_schmidt(d, zeta, spec, p))
        elif name == "green-gauss":
            out.append(check_green_gauss(SmoothNonHolo("x2_plus_iy"), d, p, spec))
        elif name == "cauchy":
            g = f if f.holomorphic is True else TildePower(3)
            out.append(cauchy(g, d.boundary(), zeta, p, spec))
        elif name == "cauchy-pompeiu":
            out.append(cauchy_pompeiu(f, d, zeta, p, spec))
    return out


def sweep(params_grid: Iterable[tuple[float, float]], checks: Iterable[str] = CHECKS,
          spec: QuadratureSpec = DEFAULT_SPEC, **kw) -> list[VerificationReport]:
    """:func:`run_checks` over a grid; non-elliptic points become failed rows."""
    checks = list(checks)
    out = []
    for alpha, beta in params_grid:
        try:
            p = make_params(alpha, beta)
        except EllipticityViolation:
            rep = VerificationReport("ellipticity", float(alpha), float(beta), None, None,
                                     math.inf, 0.0, spec.n_theta, spec.n_r, reason="ellipticity")
            out.append(rep)
            continue
        out.extend(run_checks(p, checks, spec, **kw))
    return out
