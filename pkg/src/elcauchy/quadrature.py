"""Contour and area quadrature against the line element dz~ = dy - i dx.

Closed contours use the periodic trapezoid rule, which is spectrally
accurate for smooth periodic integrands.  Areas use a tensor polar grid
(trapezoid in angle, Gauss-Legendre in radius).  For the weakly singular
kernel ``1/(z - zeta)~`` the polar grid is centred on ``zeta`` itself: the
kernel is ``O(1/r)`` and the Jacobian ``r`` cancels it, leaving a smooth
integrand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels
from .algebra import AlgebraParams, ElComplex, norm, tilde, untilde
from .errors import NotStarShaped, PoleOutsideDomain

__all__ = [
    "QuadratureSpec",
    "Curve",
    "Circle",
    "AlgEllipse",
    "StarCurve",
    "alg_ellipse_curve",
    "StarDomain",
    "Disk",
    "AlgEllipseDisk",
    "contour_integral",
    "area_integral",
    "singular_area_integral",
    "reciprocal_distance_integral",
    "periodic_trapezoid",
    "gauss_legendre_01",
]

Evaluable = Callable[[ElComplex, AlgebraParams], ElComplex]

MAX_NODES = 2**20


@dataclass(frozen=True)
class QuadratureSpec:
    n_theta: int = 512
    n_r: int = 64

    def __post_init__(self):
        if int(self.n_theta) != self.n_theta or not 8 <= self.n_theta <= MAX_NODES:
            raise ValueError(f"n_theta must be an integer in [8, 2**20], got {self.n_theta!r}")
        if int(self.n_r) != self.n_r or not 4 <= self.n_r <= MAX_NODES:
            raise ValueError(f"n_r must be an integer in [4, 2**20], got {self.n_r!r}")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.n_theta, 2 * self.n_r)


def _angles(n):
    return 2.0 * np.pi * np.arange(n) / n


@lru_cache(maxsize=32)
def gauss_legendre_01(n: int):
    """Gauss-Legendre nodes and weights on [0, 1] (read-only arrays)."""
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def periodic_trapezoid(h: Callable[[np.ndarray], np.ndarray], n: int) -> float:
    """``integral_0^{2pi} h(t) dt`` by the n-point periodic trapezoid rule."""
    t = _angles(n)
    return float((2.0 * np.pi / n) * np.sum(h(t)))


# -- curves -------------------------------------------------------------------

class Curve:
    """Closed, counterclockwise, 2pi-periodic parametrised curve."""

    center: ElComplex

    def point(self, t) -> ElComplex:
        raise NotImplementedError

    def velocity(self, t) -> ElComplex:
        raise NotImplementedError

    def contains(self, z: ElComplex) -> bool:
        """Strict interior test."""
        raise NotImplementedError

    def interior_samples(self, n: int, seed: int = 0) -> ElComplex:
        """``n`` points strictly inside, scattered along rays from the center."""
        rng = np.random.default_rng(seed)
        t = rng.uniform(0.0, 2.0 * np.pi, n)
        s = rng.uniform(0.0, 0.9, n)
        b = self.point(t)
        return ElComplex(self.center.re + s * (b.re - self.center.re),
                         self.center.im + s * (b.im - self.center.im))


@dataclass(frozen=True)
class Circle(Curve):
    center: ElComplex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def point(self, t):
        return ElComplex(self.center.re + self.radius * np.cos(t),
                         self.center.im + self.radius * np.sin(t))

    def velocity(self, t):
        return ElComplex(-self.radius * np.sin(t), self.radius * np.cos(t))

    def contains(self, z):
        return bool(np.all(np.hypot(z.re - self.center.re, z.im - self.center.im) < self.radius))


@dataclass(frozen=True)
class AlgEllipse(Curve):
    """The level set ``norm((z - center)~, params) = eps``.

    Traced as ``(z - center)~ = eps (cos t + i_hat sin t)``, which is
    counterclockwise in the (x, y) plane.
    """

    center: ElComplex
    eps: float
    params: AlgebraParams

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    def _unit(self, c, s):
        ih = self.params.i_hat
        return ElComplex(c + ih.re * s, ih.im * s)

    def point(self, t):
        w = untilde(self._unit(np.cos(t), np.sin(t)) * self.eps)
        return self.center + w

    def velocity(self, t):
        return untilde(self._unit(-np.sin(t), np.cos(t)) * self.eps)

    def contains(self, z):
        return bool(np.all(norm(tilde(z - self.center), self.params) < self.eps))


def alg_ellipse_curve(center: ElComplex, eps: float, p: AlgebraParams) -> AlgEllipse:
    return AlgEllipse(center, eps, p)


class StarCurve(Curve):
    """Boundary ``center + rho(t) (cos t, sin t)`` of a general star domain."""

    def __init__(self, domain: "StarDomain"):
        self.domain = domain
        self.center = domain.center

    def point(self, t):
        r = self.domain.rho(t)
        return ElComplex(self.center.re + r * np.cos(t), self.center.im + r * np.sin(t))

    def velocity(self, t):
        r = self.domain.rho(t)
        dr = self.domain.drho(t)
        c, s = np.cos(t), np.sin(t)
        return ElComplex(dr * c - r * s, dr * s + r * c)

    def contains(self, z):
        return self.domain.contains(z)


# -- domains ------------------------------------------------------------------

class StarDomain:
    """``{center + r(cos t, sin t) : 0 <= r < rho(t)}``.

    ``rho`` and its derivative ``drho`` are vectorised callables of the
    angle.  Subclasses with closed-form boundaries override the geometry.
    """

    def __init__(self, center: ElComplex, rho: Callable, drho: Callable | None = None,
                 rho_min_samples: int = 4096):
        self.center = center
        self._rho = rho
        self._drho = drho
        r = np.asarray(rho(_angles(rho_min_samples)), dtype=float)
        if not np.all(np.isfinite(r)) or np.min(r) <= 0:
            raise ValueError("rho must be finite and strictly positive")
        self._rmax = float(np.max(r))

    def rho(self, t):
        return np.asarray(self._rho(t), dtype=float)

    def drho(self, t):
        if self._drho is None:
            raise NotImplementedError("this star domain was built without drho")
        return np.asarray(self._drho(t), dtype=float)

    @property
    def area(self) -> float:
        # 0.5 * integral of rho^2; the integrand is smooth and periodic
        return 0.5 * periodic_trapezoid(lambda t: self.rho(t) ** 2, 4096)

    def boundary(self) -> Curve:
        return StarCurve(self)

    def contains(self, z: ElComplex) -> bool:
        dx = np.asarray(z.re - self.center.re, dtype=float)
        dy = np.asarray(z.im - self.center.im, dtype=float)
        r = np.hypot(dx, dy)
        return bool(np.all(r < self.rho(np.arctan2(dy, dx))))

    def ray_exit(self, origin: ElComplex, theta: np.ndarray) -> np.ndarray:
        """Distance from ``origin`` to the boundary along each direction.

        Raises NotStarShaped when some ray leaves the domain and re-enters.
        """
        theta = np.asarray(theta, dtype=float)
        d = math.hypot(origin.re - self.center.re, origin.im - self.center.im)
        if d == 0.0:
            return self.rho(theta)
        reach = 2.0 * (self._rmax + d)
        n_march = 2048
        s = np.linspace(0.0, reach, n_march + 1)[1:]
        c, sn = np.cos(theta)[:, None], np.sin(theta)[:, None]
        px = origin.re + s[None, :] * c - self.center.re
        py = origin.im + s[None, :] * sn - self.center.im
        inside = np.hypot(px, py) < self.rho(np.arctan2(py, px))
        # once outside, a ray must stay outside
        first_out = np.argmin(inside, axis=1)
        if np.any(inside[:, -1]):
            raise NotStarShaped("ray does not leave the domain")
        reenter = np.array([inside[k, first_out[k]:].any() for k in range(len(theta))])
        if np.any(reenter):
            raise NotStarShaped("domain is not star-shaped about the given point")
        lo = np.where(first_out > 0, s[np.maximum(first_out - 1, 0)], 0.0)
        hi = s[first_out]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            mx = origin.re + mid * np.cos(theta) - self.center.re
            my = origin.im + mid * np.sin(theta) - self.center.im
            ins = np.hypot(mx, my) < self.rho(np.arctan2(my, mx))
            lo = np.where(ins, mid, lo)
            hi = np.where(ins, hi, mid)
        return 0.5 * (lo + hi)


class _QuadraticDomain(StarDomain):
    """``{z : v^T M v < R^2}`` with ``v = z - center``, M positive definite."""

    def __init__(self, center: ElComplex, radius: float, m: np.ndarray):
        if not radius > 0:
            raise ValueError("radius must be positive")
        self.center = center
        self.radius = float(radius)
        self._m = np.asarray(m, dtype=float)

    def _q(self, vx, vy):
        m = self._m
        return m[0, 0] * vx * vx + 2.0 * m[0, 1] * vx * vy + m[1, 1] * vy * vy

    def rho(self, t):
        return self.radius / np.sqrt(self._q(np.cos(t), np.sin(t)))

    def drho(self, t):
        c, s = np.cos(t), np.sin(t)
        m = self._m
        q = self._q(c, s)
        dq = 2.0 * ((m[1, 1] - m[0, 0]) * c * s + m[0, 1] * (c * c - s * s))
        return -0.5 * self.radius * dq / q**1.5

    @property
    def area(self) -> float:
        return math.pi * self.radius**2 / math.sqrt(np.linalg.det(self._m))

    def contains(self, z):
        return bool(np.all(self._q(z.re - self.center.re, z.im - self.center.im) < self.radius**2))

    def ray_exit(self, origin, theta):
        # convex, so star-shaped about every interior point
        theta = np.asarray(theta, dtype=float)
        dx, dy = origin.re - self.center.re, origin.im - self.center.im
        ux, uy = np.cos(theta), np.sin(theta)
        m = self._m
        a = self._q(ux, uy)
        b = m[0, 0] * dx * ux + m[0, 1] * (dx * uy + dy * ux) + m[1, 1] * dy * uy
        c = self._q(dx, dy) - self.radius**2
        return (-b + np.sqrt(b * b - a * c)) / a


class Disk(_QuadraticDomain):
    def __init__(self, radius: float, center: ElComplex = ElComplex(0.0, 0.0)):
        super().__init__(center, radius, np.eye(2))

    @property
    def area(self):
        return math.pi * self.radius**2

    def rho(self, t):
        return np.full(np.shape(t), self.radius)

    def drho(self, t):
        return np.zeros(np.shape(t))

    def boundary(self):
        return Circle(self.center, self.radius)

    def __repr__(self):
        return f"Disk(radius={self.radius!r}, center={self.center!r})"


class AlgEllipseDisk(_QuadraticDomain):
    """``{z : norm((z - center)~, params) < radius}``; bounded by an AlgEllipse."""

    def __init__(self, radius: float, params: AlgebraParams, center: ElComplex = ElComplex(0.0, 0.0)):
        # norm((x, y)~)^2 = alpha x^2 + beta x y + y^2
        m = np.array([[params.alpha, 0.5 * params.beta], [0.5 * params.beta, 1.0]])
        super().__init__(center, radius, m)
        self.params = params

    def boundary(self):
        return AlgEllipse(self.center, self.radius, self.params)

    def __repr__(self):
        return f"AlgEllipseDisk(radius={self.radius!r}, alpha={self.params.alpha!r}, beta={self.params.beta!r})"


# -- integrals ----------------------------------------------------------------

def contour_integral(f: Evaluable, c: Curve, spec: QuadratureSpec, p: AlgebraParams) -> ElComplex:
    """``closed integral f(z) dz~`` over ``c`` by the periodic trapezoid rule."""
    n = spec.n_theta
    t = _angles(n)
    fz = f(c.point(t), p)
    dz = tilde(c.velocity(t))
    w = np.full(n, 2.0 * np.pi / n)
    re, im = _kernels.weighted_product_sum(fz.re, fz.im, dz.re, dz.im, w, p.alpha, p.beta)
    return ElComplex(re, im)


def _polar_grid(rho_values, theta, spec):
    # returns (r, weights) of shape (n_theta, n_r); weights omit the Jacobian r
    x, wx = gauss_legendre_01(spec.n_r)
    rho_values = np.asarray(rho_values, dtype=float)[:, None]
    r = rho_values * x[None, :]
    w = (2.0 * np.pi / spec.n_theta) * rho_values * wx[None, :]
    return r, w


def area_integral(g: Evaluable, d: StarDomain, spec: QuadratureSpec, p: AlgebraParams) -> ElComplex:
    """``double integral g dx dy`` over ``d`` in polar coordinates about ``d.center``."""
    theta = _angles(spec.n_theta)
    r, w = _polar_grid(d.rho(theta), theta, spec)
    c, s = np.cos(theta)[:, None], np.sin(theta)[:, None]
    z = ElComplex(d.center.re + r * c, d.center.im + r * s)
    gz = g(z, p)
    one = np.ones_like(r)
    re, im = _kernels.weighted_product_sum(gz.re, gz.im, one, 0.0 * one, w * r, p.alpha, p.beta)
    return ElComplex(re, im)


def _check_pole(d: StarDomain, zeta: ElComplex):
    if not d.contains(zeta):
        raise PoleOutsideDomain(f"{zeta!r} is not strictly inside {d!r}")


def singular_area_integral(g: Evaluable, d: StarDomain, zeta: ElComplex, spec: QuadratureSpec,
                           p: AlgebraParams) -> ElComplex:
    """``double integral g(z) / (z - zeta)~ dx dy`` over ``d``.

    The polar grid is centred at ``zeta``; ``d`` must be star-shaped about it.
    """
    _check_pole(d, zeta)
    theta = _angles(spec.n_theta)
    rho = d.ray_exit(zeta, theta)
    r, w = _polar_grid(rho, theta, spec)
    c, s = np.cos(theta)[:, None], np.sin(theta)[:, None]
    z = ElComplex(zeta.re + r * c, zeta.im + r * s)
    gz = g(z, p)
    # 1/(r u)~ = (1/r) (u~)^-1 and the 1/r cancels the polar Jacobian
    ure = np.broadcast_to(c, r.shape)
    uim = np.broadcast_to(s, r.shape)
    re, im = _kernels.tilde_kernel_sum(gz.re, gz.im, ure, uim, w, p.alpha, p.beta)
    return ElComplex(re, im)


def reciprocal_distance_integral(d: StarDomain, zeta: ElComplex, spec: QuadratureSpec) -> float:
    """``double integral 1/|z - zeta| dx dy`` over ``d``, polar about ``zeta``."""
    _check_pole(d, zeta)
    theta = _angles(spec.n_theta)
    rho = d.ray_exit(zeta, theta)
    r, w = _polar_grid(rho, theta, spec)
    # integrand (1/r) times Jacobian r
    return float(np.sum(w * (r / r)))
