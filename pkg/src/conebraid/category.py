"""Charge automorphisms, intertwiners, braiding, and cone asymptotics.

Objects are charge automorphisms gamma(W(f)) = e^{i sigma(gamma, f)} W(f),
labeled by their field data; the label charge separates inequivalent
objects, and hom-sets between equal charges are one dimensional, spanned by
the Weyl generator of the data difference.  Arrow composition and the
tensor product follow the Weyl cocycle,

    compose:  coeff_S coeff_R e^{+i sigma(y_S, y_R)/2}
    tensor:   coeff_R coeff_S e^{i sigma(gamma_R, y_S)} e^{+i sigma(y_R, y_S)/2}

with y the arrow labels and gamma_R the source data of the left factor
(the tensor product of arrows is R times the source automorphism applied
to S).  Everything is scalar: the object monoid is abelian, so braiding
arrows are pure phases on a zero label.

The asymptotic braiding transports each charge along a spacelike cone, the
second charge along the opposite cone, and evaluates the transported
exchange through the categorical operations; the closed-form phase

    exp(i [sigma(gamma, delta_b - delta) - sigma(delta_b, gamma_a - gamma)])

is asserted against the categorical value at every radius as an internal
consistency check (both sides use the same symplectic evaluator, so the
assertion guards the category algebra, not the quadrature).  Residual
helpers quantify the finite-radius deviations: implementation defect of a
translated charge on a fixed observable, commutator decay of transported
intertwiner labels, ordering defect of transported tensor products, and
cone independence of the extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InternalError, UsageError
from .field import (
    FieldVector,
    add,
    intertwiner_label,
    negate,
    symplectic,
    translate,
    zero_vector,
)
from .weyl import WeylElement, commutator_norm, label_id, weyl, weyl_mul


@dataclass(frozen=True)
class ConeSpec:
    """Open spacelike cone of spatial directions with a translation profile.

    Translations at a given radius move by radius times the axis, with an
    optional time component kappa * radius**beta; beta < 1 keeps the path
    asymptotically spacelike.
    """

    axis: tuple[float, float, float]
    half_angle: float
    time_slope: float = 0.0
    time_exponent: float = 0.0

    def __post_init__(self):
        ax = np.asarray(self.axis, dtype=float)
        norm = float(np.linalg.norm(ax))
        if not np.isfinite(norm) or norm == 0.0:
            raise ConfigError("cone axis must be a nonzero finite vector")
        object.__setattr__(self, "axis", tuple(ax / norm))
        if not (0.0 < self.half_angle < math.pi / 2.0):
            raise ConfigError("cone half angle must lie in (0, pi/2)")
        if self.time_slope < 0.0:
            raise ConfigError("cone time slope must be nonnegative")
        if not (0.0 <= self.time_exponent < 1.0):
            raise ConfigError("cone time exponent must lie in [0, 1)")

    def direction(self) -> np.ndarray:
        return np.asarray(self.axis)

    def opposite(self) -> "ConeSpec":
        ax = tuple(-c for c in self.axis)
        return ConeSpec(ax, self.half_angle, self.time_slope, self.time_exponent)

    def translation(self, radius: float) -> tuple[float, float, float, float]:
        if radius <= 0:
            raise ConfigError("cone translation radius must be positive")
        a0 = self.time_slope * radius**self.time_exponent if self.time_slope else 0.0
        return (a0, radius * self.axis[0], radius * self.axis[1], radius * self.axis[2])

    def contains_direction(self, vec3) -> bool:
        v = np.asarray(vec3, dtype=float)
        n = np.linalg.norm(v)
        if n == 0.0:
            return False
        cosang = float(np.dot(v / n, self.direction()))
        return math.acos(min(1.0, max(-1.0, cosang))) < self.half_angle

    def axis_angle_to(self, other: "ConeSpec") -> float:
        cosang = float(np.dot(self.direction(), other.direction()))
        return math.acos(min(1.0, max(-1.0, cosang)))

    def overlaps(self, other: "ConeSpec") -> bool:
        return self.axis_angle_to(other) < self.half_angle + other.half_angle


@dataclass(frozen=True, eq=False)
class ChargeAutomorphism:
    data: FieldVector
    name: str = ""

    @property
    def charge(self) -> float:
        return self.data.charge

    @property
    def grid(self):
        return self.data.grid

    @property
    def key(self):
        return label_id(self.data)


@dataclass(frozen=True, eq=False)
class Intertwiner:
    source: ChargeAutomorphism
    target: ChargeAutomorphism
    coeff: complex
    label: FieldVector

    def as_weyl(self) -> WeylElement:
        return weyl(self.label, self.coeff)


def make_object(data: FieldVector, name: str = "") -> ChargeAutomorphism:
    return ChargeAutomorphism(data=data, name=name)


def zero_object(grid) -> ChargeAutomorphism:
    return ChargeAutomorphism(data=zero_vector(grid), name="iota")


def translate_object(obj: ChargeAutomorphism, a) -> ChargeAutomorphism:
    return ChargeAutomorphism(data=translate(obj.data, a), name=obj.name)


def same_object(a: ChargeAutomorphism, b: ChargeAutomorphism) -> bool:
    return a.key == b.key


def hom_basis(source: ChargeAutomorphism, target: ChargeAutomorphism):
    """Unit basis arrow of the hom-set, or None when the charges differ."""
    if source.charge != target.charge:
        return None
    return Intertwiner(
        source=source,
        target=target,
        coeff=1.0 + 0.0j,
        label=intertwiner_label(source.data, target.data),
    )


def identity(obj: ChargeAutomorphism) -> Intertwiner:
    return hom_basis(obj, obj)


def rephase(r: Intertwiner, z: complex) -> Intertwiner:
    if abs(abs(z) - 1.0) > 1e-12:
        raise UsageError("rephase factor must have unit modulus")
    return Intertwiner(source=r.source, target=r.target, coeff=z * r.coeff, label=r.label)


def compose(s: Intertwiner, r: Intertwiner) -> Intertwiner:
    """s after r; the coefficient picks up the cocycle of the label product."""
    if not same_object(r.target, s.source):
        raise UsageError("compose needs target of the right factor = source of the left")
    coeff = s.coeff * r.coeff * np.exp(0.5j * symplectic(s.label, r.label))
    return Intertwiner(source=r.source, target=s.target, coeff=coeff, label=add(s.label, r.label))


def star_mor(r: Intertwiner) -> Intertwiner:
    return Intertwiner(
        source=r.target, target=r.source, coeff=np.conj(r.coeff), label=negate(r.label)
    )


def tensor_obj(a: ChargeAutomorphism, b: ChargeAutomorphism) -> ChargeAutomorphism:
    name = f"{a.name}*{b.name}" if a.name or b.name else ""
    return ChargeAutomorphism(data=add(a.data, b.data), name=name)


def tensor_mor(r: Intertwiner, s: Intertwiner) -> Intertwiner:
    """r tensor s = r composed with the source automorphism of r applied to s."""
    coeff = (
        r.coeff
        * s.coeff
        * np.exp(1j * symplectic(r.source.data, s.label))
        * np.exp(0.5j * symplectic(r.label, s.label))
    )
    return Intertwiner(
        source=tensor_obj(r.source, s.source),
        target=tensor_obj(r.target, s.target),
        coeff=coeff,
        label=add(r.label, s.label),
    )


def auto_action(obj: ChargeAutomorphism, a: WeylElement) -> WeylElement:
    terms = tuple(
        (c * np.exp(1j * symplectic(obj.data, x)), x) for c, x in a.terms
    )
    return WeylElement(grid=a.grid, terms=terms)


def intertwiner_relation_residual(r: Intertwiner, f: FieldVector) -> float:
    """Coefficient distance of W(y) rho(W(f)) vs rho'(W(f)) W(y); zero in exact arithmetic."""
    lhs = weyl_mul(r.as_weyl(), auto_action(r.source, weyl(f)))
    rhs = weyl_mul(auto_action(r.target, weyl(f)), r.as_weyl())
    keys = {label_id(x) for _, x in lhs.terms} | {label_id(x) for _, x in rhs.terms}
    out = 0.0
    for _, x in lhs.terms:
        out = max(out, abs(lhs.coeff_of(x) - rhs.coeff_of(x)))
    if len(lhs.terms) != len(rhs.terms) or len(keys) != len(lhs.terms):
        return float("inf")
    return out


def braiding_exact(a: ChargeAutomorphism, b: ChargeAutomorphism) -> Intertwiner:
    """The limit braiding: a pure phase e^{-i sigma(a, b)} on the zero label."""
    coeff = np.exp(-1j * symplectic(a.data, b.data))
    return Intertwiner(
        source=tensor_obj(a, b),
        target=tensor_obj(b, a),
        coeff=coeff,
        label=zero_vector(a.grid),
    )


@dataclass(frozen=True)
class BraidingRun:
    radii: tuple[float, ...]
    phases: tuple[complex, ...]
    limit_estimate: complex


def braiding_asymptotic(
    a: ChargeAutomorphism,
    b: ChargeAutomorphism,
    cone: ConeSpec,
    radii,
    rng: np.random.Generator | None = None,
) -> BraidingRun:
    """Braiding via transported exchange at each radius along the cone.

    The first charge is moved to radius r along the cone axis, the second
    to the exact antipode; the exchange is evaluated through star, tensor,
    and composition of the transport arrows.  Passing an rng re-draws the
    free phase of every transporter; the result is invariant because each
    transporter meets its own star.
    """
    radii = [float(r) for r in radii]
    if len(radii) < 3 or any(r2 <= r1 for r1, r2 in zip(radii, radii[1:])):
        raise UsageError("radii must be strictly increasing with at least 3 entries")
    phases = []
    for radius in radii:
        ta = cone.translation(radius)
        tb = tuple(-c for c in ta)
        a_far = translate_object(a, ta)
        b_far = translate_object(b, tb)
        u = hom_basis(a, a_far)
        v = hom_basis(b, b_far)
        if rng is not None:
            u = rephase(u, np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
            v = rephase(v, np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        eps = compose(star_mor(tensor_mor(v, u)), tensor_mor(u, v))
        if not eps.label.is_zero:
            raise InternalError("asymptotic braiding must have zero label")
        closed = np.exp(
            1j
            * (
                symplectic(a.data, v.label)
                - symplectic(b_far.data, u.label)
            )
        )
        if abs(eps.coeff - closed) > 1e-12:
            raise InternalError(
                f"categorical braiding phase deviates from closed form by {abs(eps.coeff - closed)}"
            )
        phases.append(complex(eps.coeff))
    return BraidingRun(radii=tuple(radii), phases=tuple(phases), limit_estimate=phases[-1])


def cone_homotopy(
    a: ChargeAutomorphism,
    b: ChargeAutomorphism,
    chain,
    radii,
) -> list[complex]:
    """Limit braiding phase for each cone along a chain of overlapping cones.

    Consecutive cones must overlap (axis angle below the sum of the half
    angles) so the chain is a genuine path of admissible directions.
    """
    chain = list(chain)
    if not chain:
        raise ConfigError("cone chain must be nonempty")
    for first, second in zip(chain, chain[1:]):
        if not first.overlaps(second):
            raise ConfigError(
                "consecutive cones do not overlap: axis angle "
                f"{first.axis_angle_to(second):.4f} exceeds {first.half_angle + second.half_angle:.4f}"
            )
    return [braiding_asymptotic(a, b, cone, radii).limit_estimate for cone in chain]


def implementation_residual(obj: ChargeAutomorphism, a, f: FieldVector) -> float:
    """Norm of U_a* W(f) U_a - rho(W(f)), reduced to |e^{i sigma(rho_a, f)} - 1|."""
    moved = translate(obj.data, a)
    return float(abs(np.exp(1j * symplectic(moved, f)) - 1.0))


def abelianness_residual(x: FieldVector, y: FieldVector) -> float:
    """Commutator norm of the Weyl generators of two chargeless labels."""
    for v, side in ((x, "first"), (y, "second")):
        if v.charge != 0.0:
            raise UsageError(f"{side} label must be chargeless")
    return commutator_norm(x, y)


def transported_arrow(r: Intertwiner, cone: ConeSpec, radius: float) -> Intertwiner:
    """U' r U* with U, U' the transporters of source and target along the cone."""
    ta = cone.translation(radius)
    u = hom_basis(r.source, translate_object(r.source, ta))
    u_prime = hom_basis(r.target, translate_object(r.target, ta))
    return compose(u_prime, compose(r, star_mor(u)))


def tensor_abelianness_residual(
    r: Intertwiner,
    s: Intertwiner,
    cone_u: ConeSpec,
    cone_v: ConeSpec,
    radius: float,
) -> float:
    """Coefficient distance of the two tensor orderings after transport."""
    r_far = transported_arrow(r, cone_u, radius)
    s_far = transported_arrow(s, cone_v, radius)
    rs = tensor_mor(r_far, s_far)
    sr = tensor_mor(s_far, r_far)
    if label_id(rs.label) != label_id(sr.label):
        raise InternalError("tensor orderings produced different labels")
    return float(abs(rs.coeff - sr.coeff))


def extension_residual(
    obj: ChargeAutomorphism,
    s: Intertwiner,
    cone1: ConeSpec,
    cone2: ConeSpec,
    radius: float,
) -> float:
    """Cone dependence of the extended action, |e^{-i sigma(rho_a1, y)} - e^{-i sigma(rho_a2, y)}|."""
    moved1 = translate(obj.data, cone1.translation(radius))
    moved2 = translate(obj.data, cone2.translation(radius))
    p1 = np.exp(-1j * symplectic(moved1, s.label))
    p2 = np.exp(-1j * symplectic(moved2, s.label))
    return float(abs(p1 - p2))


def hexagon_residuals(
    a: ChargeAutomorphism, b: ChargeAutomorphism, c: ChargeAutomorphism
) -> tuple[float, float]:
    """Coefficient distances of the two hexagon identities; zero by bilinearity."""
    lhs1 = braiding_exact(tensor_obj(a, b), c)
    rhs1 = compose(
        tensor_mor(braiding_exact(a, c), identity(b)),
        tensor_mor(identity(a), braiding_exact(b, c)),
    )
    lhs2 = braiding_exact(a, tensor_obj(b, c))
    rhs2 = compose(
        tensor_mor(identity(b), braiding_exact(a, c)),
        tensor_mor(braiding_exact(a, b), identity(c)),
    )
    return float(abs(lhs1.coeff - rhs1.coeff)), float(abs(lhs2.coeff - rhs2.coeff))


def naturality_residual(r: Intertwiner, s: Intertwiner) -> float:
    """Coefficient distance of eps(target) (r x s) vs (s x r) eps(source)."""
    lhs = compose(braiding_exact(r.target, s.target), tensor_mor(r, s))
    rhs = compose(tensor_mor(s, r), braiding_exact(r.source, s.source))
    if label_id(lhs.label) != label_id(rhs.label):
        raise InternalError("naturality sides produced different labels")
    return float(abs(lhs.coeff - rhs.coeff))
