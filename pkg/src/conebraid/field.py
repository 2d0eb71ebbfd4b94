"""Field data for the free massless scalar field in momentum space.

A field vector is a finite real-linear combination of translated radial
atoms.  Each atom stores a radial momentum profile, the channel it feeds
(the "g" channel enters as i omega^{-3/2} g~, the "h" channel as
omega^{-1/2} h~), and an accumulated spacetime translation offset.  The
one-particle wave function is

    f~(p) = i omega^{-3/2} g~(p) + omega^{-1/2} h~(p),    omega = |p|,

with the Fourier convention f~(p) = (2 pi)^{-3/2} integral e^{-i p.x} f d^3x.
Spatial translation by a multiplies both channels by e^{-i p.a}; time
translation mixes them like the free evolution, g~ -> cos(omega a0) g~ +
omega sin(omega a0) h~ and h~ -> cos(omega a0) h~ - omega^{-1} sin(omega a0) g~,
which is exactly f~ -> e^{i omega a0} f~.

The two bilinear forms are

    (x, y)      = integral conj(f~_x) f~_y d^3p            (scalar product)
    sigma(x, y) = integral omega^{-2} (g~_x(-p) h~_y(p) - g~_y(-p) h~_x(p)) d^3p

and sigma = -Im (x, y) whenever both sides are defined.  Charge is carried
analytically: q = (2 pi)^{3/2} g~(0), evaluated from the profile's closed
form at construction and never extrapolated from grid samples.

Every bilinear form has two evaluation routes.  The grid route samples both
vectors on the momentum grid and applies the grid quadrature literally; it
is exact only while the angular rule resolves the translation phases.  The
radial route integrates the exact angular average (the phase pair
e^{i p.(d_A - d_B)} averages to sinc(r |d_A - d_B|)), which stays accurate
at arbitrary translation radius; it is the default.  Tests assert the two
routes agree wherever the grid resolves the integrand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from .errors import ConfigError, DomainError, UsageError
from .quadrature import (
    MomentumGrid,
    TWO_PI_32,
    composite_legendre_unit,
    gauss_legendre_unit,
    radial_fourier,
)

TEST = "test"
CHARGE = "charge"

# Radial-route rule sizing: at least BASE nodes, OVERSAMPLE nodes per
# oscillation wavelength of the fastest sinc/trig factor over (0, r_max].
# Beyond SINGLE_MAX nodes the rule switches to composite fixed-order panels,
# whose construction cost stays linear in the node count.
RADIAL_RULE_BASE = 192
RADIAL_RULE_OVERSAMPLE = 10.0
RADIAL_RULE_SINGLE_MAX = 2048
RADIAL_RULE_PANEL_ORDER = 64

_BUMPS: dict[str, tuple[object, float, int]] = {}


def register_bump(name: str, profile_fn, support_radius: float, panels: int = 240) -> None:
    """Register a compactly supported radial position profile under a name.

    The profile enters field vectors through its radial Fourier transform;
    registering the callable once keeps atoms hashable and reproducible.
    Re-registering a name with a different support raises.
    """
    if support_radius <= 0:
        raise ConfigError("bump support radius must be positive")
    if name in _BUMPS and _BUMPS[name][1:] != (float(support_radius), panels):
        raise ConfigError(f"bump {name!r} already registered with different parameters")
    _BUMPS[name] = (profile_fn, float(support_radius), panels)


@dataclass(frozen=True)
class Profile:
    """Radial momentum profile of an atom.

    kind "gauss" is exp(-r^2 w^2 / 2); kind "gauss2" is r^2 exp(-r^2 w^2 / 2)
    (chargeless in the g channel); kind "bump" is the radial Fourier
    transform of a registered position profile.
    """

    kind: str
    width: float = 0.0
    name: str = ""

    def momentum_values(self, r: np.ndarray) -> np.ndarray:
        if self.kind == "gauss":
            return np.exp(-0.5 * (self.width * r) ** 2)
        if self.kind == "gauss2":
            return r**2 * np.exp(-0.5 * (self.width * r) ** 2)
        if self.kind == "bump":
            fn, radius, panels = _BUMPS[self.name]
            return radial_fourier(fn, radius, r, panels=panels)
        raise ConfigError(f"unknown profile kind {self.kind!r}")

    def value_at_zero(self) -> float:
        if self.kind == "gauss":
            return 1.0
        if self.kind == "gauss2":
            return 0.0
        if self.kind == "bump":
            fn, radius, panels = _BUMPS[self.name]
            return float(radial_fourier(fn, radius, 0.0, panels=panels))
        raise ConfigError(f"unknown profile kind {self.kind!r}")


@dataclass(frozen=True)
class Atom:
    profile: Profile
    channel: str  # "g" or "h"
    offset: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def charge_factor(self) -> float:
        """(2 pi)^{3/2} g~(0) of the unit-coefficient atom; time offsets keep it."""
        if self.channel != "g":
            return 0.0
        q = TWO_PI_32 * self.profile.value_at_zero()
        return 0.0 if abs(q) < 1e-12 else q

    def sort_key(self):
        return (self.profile.kind, self.profile.width, self.profile.name, self.channel, self.offset)


def _canonical_terms(items) -> tuple[tuple[float, Atom], ...]:
    merged: dict[Atom, float] = {}
    for coeff, atom in items:
        merged[atom] = merged.get(atom, 0.0) + coeff
    kept = [(c, a) for a, c in merged.items() if c != 0.0]
    kept.sort(key=lambda t: t[1].sort_key())
    return tuple(kept)


@dataclass(frozen=True, eq=False)
class FieldVector:
    """Immutable finite combination of translated radial atoms on a grid."""

    grid: MomentumGrid
    terms: tuple[tuple[float, Atom], ...]
    klass: str
    charge: float

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def samples(self) -> tuple[np.ndarray, np.ndarray]:
        """(g~, h~) sampled on the grid nodes, flat complex arrays."""
        g = np.zeros(self.grid.n_nodes, dtype=complex)
        h = np.zeros(self.grid.n_nodes, dtype=complex)
        pts = self.grid.points()
        r = np.repeat(self.grid.radial_nodes, self.grid.n_angular)
        for coeff, atom in self.terms:
            G, H = _channel_factors(atom, r)
            d = np.asarray(atom.offset[1:])
            phase = np.exp(-1j * (pts @ d)) if d.any() else 1.0
            g += coeff * phase * G
            h += coeff * phase * H
        return g, h

    @property
    def g_samples(self) -> np.ndarray:
        return self.samples[0]

    @property
    def h_samples(self) -> np.ndarray:
        return self.samples[1]


def _make(grid, items, klass, charge) -> FieldVector:
    terms = _canonical_terms(items)
    if not terms:
        return FieldVector(grid=grid, terms=(), klass=TEST, charge=0.0)
    return FieldVector(grid=grid, terms=terms, klass=klass, charge=charge)


def zero_vector(grid: MomentumGrid) -> FieldVector:
    return FieldVector(grid=grid, terms=(), klass=TEST, charge=0.0)


def make_charge_vector(grid: MomentumGrid, q: float = 1.0, width: float = 1.0) -> FieldVector:
    """Gaussian g-channel vector of total charge q and momentum width 1/width."""
    if width <= 0:
        raise ConfigError("width must be positive")
    if q == 0.0:
        return zero_vector(grid)
    atom = Atom(Profile("gauss", width=float(width)), "g")
    return _make(grid, [(q / TWO_PI_32, atom)], CHARGE, float(q))


def make_test_vector(
    grid: MomentumGrid,
    amplitude: float = 1.0,
    width: float = 1.0,
    channel: str = "h",
) -> FieldVector:
    """Chargeless Gaussian vector.

    The h channel uses the plain Gaussian; a g-channel request uses the
    r^2-damped Gaussian so the zero-momentum value (the charge) vanishes.
    """
    if width <= 0:
        raise ConfigError("width must be positive")
    if channel not in ("g", "h"):
        raise ConfigError(f"channel must be 'g' or 'h', got {channel!r}")
    if amplitude == 0.0:
        return zero_vector(grid)
    kind = "gauss" if channel == "h" else "gauss2"
    atom = Atom(Profile(kind, width=float(width)), channel)
    return _make(grid, [(float(amplitude), atom)], TEST, 0.0)


def make_bump_vector(
    grid: MomentumGrid,
    name: str,
    profile_fn,
    support_radius: float,
    channel: str = "g",
    amplitude: float = 1.0,
    panels: int = 240,
) -> FieldVector:
    """Vector from a compactly supported radial position profile.

    The charge is the profile's own integral (4 pi int r^2 f dr times the
    amplitude), computed by the panel rule at construction; the vector is
    test class exactly when that charge vanishes.
    """
    if channel not in ("g", "h"):
        raise ConfigError(f"channel must be 'g' or 'h', got {channel!r}")
    register_bump(name, profile_fn, support_radius, panels=panels)
    atom = Atom(Profile("bump", name=name), channel)
    q = amplitude * atom.charge_factor()
    klass = TEST if q == 0.0 else CHARGE
    return _make(grid, [(float(amplitude), atom)], klass, q)


def add(x: FieldVector, y: FieldVector) -> FieldVector:
    """Sum of two vectors on the same grid.

    The class bookkeeping is conservative: the sum is test class only when
    both operands are, or when the terms cancel exactly to the zero vector.
    Chargeless differences of equivalent charge vectors are produced by the
    dedicated intertwiner_label path instead.
    """
    _require_same_grid(x, y)
    terms = _canonical_terms(list(x.terms) + list(y.terms))
    if not terms:
        return zero_vector(x.grid)
    klass = TEST if (x.klass == TEST and y.klass == TEST) else CHARGE
    return FieldVector(grid=x.grid, terms=terms, klass=klass, charge=x.charge + y.charge)


def scale(c: float, x: FieldVector) -> FieldVector:
    if isinstance(c, complex):
        raise UsageError("field vectors form a real linear space; scale by a real number")
    c = float(c)
    if not math.isfinite(c):
        raise UsageError("scale factor must be finite")
    if c == 0.0 or x.is_zero:
        return zero_vector(x.grid)
    terms = tuple((c * coeff, atom) for coeff, atom in x.terms)
    return FieldVector(grid=x.grid, terms=terms, klass=x.klass, charge=c * x.charge)


def negate(x: FieldVector) -> FieldVector:
    return scale(-1.0, x)


def subtract(x: FieldVector, y: FieldVector) -> FieldVector:
    return add(x, negate(y))


def intertwiner_label(source: FieldVector, target: FieldVector) -> FieldVector:
    """target - source, marked test class; requires exactly equal charges."""
    _require_same_grid(source, target)
    if target.charge != source.charge:
        raise DomainError(
            f"intertwiner label needs equal charges, got {source.charge} and {target.charge}"
        )
    diff = subtract(target, source)
    if diff.is_zero:
        return diff
    return FieldVector(grid=diff.grid, terms=diff.terms, klass=TEST, charge=0.0)


def translate(x: FieldVector, a) -> FieldVector:
    """Translate by the spacetime vector a = (a0, a1, a2, a3).

    Hermitian symmetry of the samples and the charge are preserved; for
    a0 != 0 the zero-momentum limit of the mixed g channel is again g~(0),
    so the analytic charge carries over.
    """
    a = tuple(float(c) for c in a)
    if len(a) != 4:
        raise UsageError("translation must be a 4-vector (a0, a1, a2, a3)")
    if not all(math.isfinite(c) for c in a):
        raise UsageError("translation components must be finite")
    if all(c == 0.0 for c in a):
        return x
    terms = tuple(
        (coeff, Atom(atom.profile, atom.channel, tuple(o + s for o, s in zip(atom.offset, a))))
        for coeff, atom in x.terms
    )
    return FieldVector(grid=x.grid, terms=terms, klass=x.klass, charge=x.charge)


def _require_same_grid(x: FieldVector, y: FieldVector) -> None:
    if x.grid is not y.grid:
        raise UsageError("operands live on different grids")


def _channel_factors(atom: Atom, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real radial factors (G, H) with g~ = e^{-i p.d} G and h~ = e^{-i p.d} H."""
    phi = atom.profile.momentum_values(r)
    t = atom.offset[0]
    if t == 0.0:
        zero = np.zeros_like(phi)
        return (phi, zero) if atom.channel == "g" else (zero, phi)
    c = np.cos(r * t)
    if atom.channel == "g":
        # g -> cos(omega t) g,  h -> -omega^{-1} sin(omega t) g
        return c * phi, -t * np.sinc(r * t / np.pi) * phi
    # h -> cos(omega t) h,  g -> omega sin(omega t) h
    return r * np.sin(r * t) * phi, c * phi


def _pair_list(x: FieldVector, y: FieldVector):
    pairs = []
    for cx, ax in x.terms:
        for cy, ay in y.terms:
            dx = ax.offset[1:]
            dy = ay.offset[1:]
            delta = math.dist(dx, dy)
            pairs.append((cx * cy, ax, ay, delta))
    return pairs


def _radial_rule_for(pairs, grid: MomentumGrid) -> tuple[np.ndarray, np.ndarray]:
    mu = 0.0
    for _, ax, ay, delta in pairs:
        mu = max(mu, delta + abs(ax.offset[0]) + abs(ay.offset[0]))
    n = max(RADIAL_RULE_BASE, int(np.ceil(RADIAL_RULE_OVERSAMPLE * mu * grid.r_max / (2.0 * np.pi))))
    n = ((n + 31) // 32) * 32
    if n <= RADIAL_RULE_SINGLE_MAX:
        nodes, weights = gauss_legendre_unit(n)
    else:
        panels = -(-n // RADIAL_RULE_PANEL_ORDER)
        nodes, weights = composite_legendre_unit(panels, RADIAL_RULE_PANEL_ORDER)
    return grid.r_max * nodes, grid.r_max * weights


def symplectic(x: FieldVector, y: FieldVector) -> float:
    """sigma(x, y) by the exact-angular radial route.

    Bilinear and antisymmetric; agrees with -Im scalar_product on test
    vectors.  Defined for every class (the omega^{-2} kernel is integrable
    in three dimensions).
    """
    _require_same_grid(x, y)
    pairs = _pair_list(x, y)
    if not pairs:
        return 0.0
    r, w = _radial_rule_for(pairs, x.grid)
    acc = np.zeros_like(r)
    for c, ax, ay, delta in pairs:
        gx, hx = _channel_factors(ax, r)
        gy, hy = _channel_factors(ay, r)
        kern = gx * hy - gy * hx
        if not kern.any():
            continue
        acc += (c * kern) * np.sinc(r * (delta / np.pi))
    return 4.0 * np.pi * float(np.dot(w, acc))


def scalar_product(x: FieldVector, y: FieldVector) -> complex:
    """(x, y) by the exact-angular radial route; test class only."""
    _require_same_grid(x, y)
    for v, side in ((x, "left"), (y, "right")):
        if v.klass != TEST:
            raise DomainError(f"scalar product undefined for charge-class {side} operand")
    pairs = _pair_list(x, y)
    if not pairs:
        return 0.0 + 0.0j
    r, w = _radial_rule_for(pairs, x.grid)
    re = np.zeros_like(r)
    im = np.zeros_like(r)
    for c, ax, ay, delta in pairs:
        gx, hx = _channel_factors(ax, r)
        gy, hy = _channel_factors(ay, r)
        sinc = np.sinc(r * (delta / np.pi))
        re += (c * sinc) * (gx * gy / r + r * hx * hy)
        im += (c * sinc) * (hx * gy - gx * hy)
    return complex(4.0 * np.pi * np.dot(w, re), 4.0 * np.pi * np.dot(w, im))


def vacuum_exponent(x: FieldVector) -> float:
    """(x, x)/4, the vacuum damping exponent of the Weyl operator at x."""
    val = scalar_product(x, x)
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise DomainError(f"(x, x) should be real, got imaginary part {val.imag}")
    if val.real < 0:
        raise DomainError(f"(x, x) should be nonnegative, got {val.real}")
    return 0.25 * val.real


def symplectic_on_grid(x: FieldVector, y: FieldVector) -> float:
    """sigma(x, y) by literal grid quadrature of the sampled integrand.

    Valid only while the angular rule resolves the translation phases; kept
    as the cross-check route and for raw-sample work.
    """
    from .quadrature import integrate, reflect_samples

    _require_same_grid(x, y)
    gx, hx = x.samples
    gy, hy = y.samples
    r2 = np.repeat(x.grid.radial_nodes, x.grid.n_angular) ** 2
    integrand = (reflect_samples(x.grid, gx) * hy - reflect_samples(x.grid, gy) * hx) / r2
    val = integrate(x.grid, integrand)
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise DomainError(f"grid sigma has imaginary residue {val.imag}")
    return val.real


def scalar_product_on_grid(x: FieldVector, y: FieldVector) -> complex:
    """(x, y) by literal grid quadrature; test class only."""
    from .quadrature import integrate

    _require_same_grid(x, y)
    for v, side in ((x, "left"), (y, "right")):
        if v.klass != TEST:
            raise DomainError(f"scalar product undefined for charge-class {side} operand")
    gx, hx = x.samples
    gy, hy = y.samples
    r = np.repeat(x.grid.radial_nodes, x.grid.n_angular)
    integrand = (
        np.conj(gx) * gy / r**3
        + np.conj(hx) * hy / r
        + 1j * (np.conj(hx) * gy - np.conj(gx) * hy) / r**2
    )
    return integrate(x.grid, integrand)


def hermitian_defect(x: FieldVector) -> float:
    """max |c~(-p) - conj c~(p)| over both channels; zero for real field data."""
    from .quadrature import reflect_samples

    g, h = x.samples
    dg = np.abs(reflect_samples(x.grid, g) - np.conj(g))
    dh = np.abs(reflect_samples(x.grid, h) - np.conj(h))
    return float(max(dg.max(initial=0.0), dh.max(initial=0.0)))
