"""Bounded-sequence quotient machinery over small normed *-algebras.

A sequence element is a pure generator n -> algebra element together with
a caller-certified norm bound; pointwise add, multiply, and star descend
to the quotient by null sequences.  The asymptotic norm is replaced by a
declared finite surrogate: a TailPolicy fixes a window start N0, a sample
count K, and a tolerance tau, and limsup_norm takes the maximum sampled
norm over K indices strictly beyond N0: half consecutive (so alternating
patterns are seen by both parities), half geometrically spaced (so slow
tails are probed far out).  is_null means that surrogate falls below tau;
every report carries the policy so the finite nature of the check stays
visible.

Two algebra instantiations are provided: dense complex matrices up to
dimension 8 under the spectral norm, and single Weyl phase generators
(coefficient times a field label) whose product twists by the symplectic
cocycle.  Polar unitarization maps an almost-unitary matrix sequence to
its entrywise polar factor, substituting the identity where the entry is
numerically singular; the output is entrywise unitary and null-close to
the input whenever the precondition holds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError
from .field import FieldVector, add as vec_add, negate as vec_negate, symplectic, zero_vector
from .weyl import label_id

MATRIX_DIM_MAX = 8
POLAR_SINGULAR_CUTOFF = 1e-8


class MatrixAlgebra:
    """Dense complex (dim x dim) matrices with the spectral norm."""

    def __init__(self, dim: int):
        if not (1 <= dim <= MATRIX_DIM_MAX):
            raise UsageError(f"matrix dimension must lie in [1, {MATRIX_DIM_MAX}]")
        self.dim = dim

    def unit(self):
        return np.eye(self.dim, dtype=complex)

    def zero(self):
        return np.zeros((self.dim, self.dim), dtype=complex)

    def coerce(self, a):
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.dim, self.dim):
            raise UsageError(f"expected a {self.dim}x{self.dim} matrix, got shape {a.shape}")
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a @ b

    def star(self, a):
        return a.conj().T

    def scale(self, c, a):
        return c * a

    def norm(self, a) -> float:
        return float(np.linalg.norm(a, 2))

    def polar(self, a):
        """Polar factor by SVD and the smallest singular value of the input."""
        u, s, vh = np.linalg.svd(a)
        return u @ vh, float(s.min())

    def unitarity_defect(self, a) -> float:
        return self.norm(self.star(a) @ a - self.unit())


class WeylPhaseAlgebra:
    """Single Weyl phase generators (coefficient, field label).

    The product twists by the symplectic cocycle; addition is defined only
    between equal labels (general sums live in the full Weyl layer, not
    here).  The norm of a single generator is the coefficient modulus.
    """

    def __init__(self, grid):
        self.grid = grid

    def element(self, coeff: complex, label: FieldVector):
        if label.grid is not self.grid:
            raise UsageError("label lives on a different grid")
        return (complex(coeff), label)

    def unit(self):
        return (1.0 + 0.0j, zero_vector(self.grid))

    def zero(self):
        return (0.0 + 0.0j, zero_vector(self.grid))

    def add(self, a, b):
        if label_id(a[1]) != label_id(b[1]):
            raise UsageError("phase-algebra addition requires equal labels")
        return (a[0] + b[0], a[1])

    def sub(self, a, b):
        if label_id(a[1]) != label_id(b[1]):
            raise UsageError("phase-algebra subtraction requires equal labels")
        return (a[0] - b[0], a[1])

    def mul(self, a, b):
        phase = np.exp(0.5j * symplectic(a[1], b[1]))
        return (a[0] * b[0] * phase, vec_add(a[1], b[1]))

    def star(self, a):
        return (np.conj(a[0]), vec_negate(a[1]))

    def scale(self, c, a):
        return (c * a[0], a[1])

    def norm(self, a) -> float:
        return float(abs(a[0]))

    def polar(self, a):
        mod = abs(a[0])
        if mod < POLAR_SINGULAR_CUTOFF:
            return self.unit(), float(mod)
        return (a[0] / mod, a[1]), float(mod)

    def unitarity_defect(self, a) -> float:
        return abs(abs(a[0]) - 1.0)


@dataclass(frozen=True)
class TailPolicy:
    """Finite surrogate for tail behavior: K samples strictly beyond N0."""

    window_start: int = 32
    sample_count: int = 16
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.window_start < 1:
            raise UsageError("window_start must be at least 1")
        if self.sample_count < 8:
            raise UsageError("sample_count must be at least 8")
        if not (self.tolerance > 0.0):
            raise UsageError("tolerance must be positive")

    def samples(self) -> tuple[int, ...]:
        near = self.sample_count - self.sample_count // 2
        out = [self.window_start + 1 + k for k in range(near)]
        for j in range(1, self.sample_count // 2 + 1):
            out.append(self.window_start * 2**j)
        return tuple(sorted(set(out)))


class SequenceElement:
    """Pure generator with a certified norm bound; evaluations are memoized."""

    def __init__(self, algebra, generator, bound: float):
        if not (bound >= 0.0 and np.isfinite(bound)):
            raise UsageError("bound must be a finite nonnegative real")
        self.algebra = algebra
        self.generator = generator
        self.bound = float(bound)
        self._memo: dict[int, object] = {}

    def at(self, n: int):
        if n < 1:
            raise UsageError("sequence indices start at 1")
        if n not in self._memo:
            value = self.generator(n)
            norm = self.algebra.norm(value)
            if norm > self.bound * (1.0 + 1e-9) + 1e-12:
                raise UsageError(
                    f"generator breaks its certified bound at n={n}: {norm} > {self.bound}"
                )
            self._memo[n] = value
        return self._memo[n]


def constant(algebra, value, bound: float | None = None) -> SequenceElement:
    if bound is None:
        bound = algebra.norm(value)
    return SequenceElement(algebra, lambda n: value, bound)


def seq_add(s: SequenceElement, t: SequenceElement) -> SequenceElement:
    _same_algebra(s, t)
    return SequenceElement(s.algebra, lambda n: s.algebra.add(s.at(n), t.at(n)), s.bound + t.bound)


def seq_sub(s: SequenceElement, t: SequenceElement) -> SequenceElement:
    _same_algebra(s, t)
    return SequenceElement(s.algebra, lambda n: s.algebra.sub(s.at(n), t.at(n)), s.bound + t.bound)


def seq_mul(s: SequenceElement, t: SequenceElement) -> SequenceElement:
    _same_algebra(s, t)
    return SequenceElement(s.algebra, lambda n: s.algebra.mul(s.at(n), t.at(n)), s.bound * t.bound)


def seq_star(s: SequenceElement) -> SequenceElement:
    return SequenceElement(s.algebra, lambda n: s.algebra.star(s.at(n)), s.bound)


def limsup_norm(s: SequenceElement, policy: TailPolicy) -> float:
    return max(s.algebra.norm(s.at(n)) for n in policy.samples())


def is_null(s: SequenceElement, policy: TailPolicy) -> bool:
    return limsup_norm(s, policy) < policy.tolerance


def equivalent(s: SequenceElement, t: SequenceElement, policy: TailPolicy) -> bool:
    return is_null(seq_sub(s, t), policy)


def subsequence(s: SequenceElement, index_map) -> SequenceElement:
    """Reindex by a strictly increasing map; monotonicity is checked lazily
    across every pair of indices the new element actually evaluates."""
    seen: dict[int, int] = {}

    def gen(n: int):
        m = int(index_map(n))
        if m < 1:
            raise UsageError("index map must produce indices >= 1")
        for k, mk in seen.items():
            if (k < n and mk >= m) or (k > n and mk <= m) or (k == n and mk != m):
                raise UsageError("index map is not strictly increasing")
        seen[n] = m
        return s.at(m)

    return SequenceElement(s.algebra, gen, s.bound)


def random_increasing_map(rng: np.random.Generator, max_step: int = 4):
    """Random strictly increasing map with memoized prefix, steps in [1, max_step]."""
    prefix = [0]

    def index_map(n: int) -> int:
        while len(prefix) <= n:
            prefix.append(prefix[-1] + int(rng.integers(1, max_step + 1)))
        return prefix[n]

    return index_map


def stability_probe(
    s: SequenceElement,
    member_fn,
    policy: TailPolicy,
    rng: np.random.Generator,
    n_maps: int = 8,
) -> tuple[bool, int]:
    """Re-test membership under n_maps random subsequences.

    Returns (all subsequences still satisfy member_fn, n_maps).  A finite
    probe of the subsequence-closure property, never a proof; the count is
    returned so reports can state the probe cardinality.
    """
    for _ in range(n_maps):
        sub = subsequence(s, random_increasing_map(rng))
        if not member_fn(sub, policy):
            return False, n_maps
    return True, n_maps


def polar_unitarize(s: SequenceElement, policy: TailPolicy) -> SequenceElement:
    """Entrywise polar factor of an almost-unitary sequence.

    Entries with smallest singular value below the cutoff are replaced by
    the identity.  Requires is_null(s* s - 1) and is_null(s s* - 1) under
    the policy; the output is entrywise unitary and null-close to s.
    """
    alg = s.algebra
    one = constant(alg, alg.unit())
    for defect in (seq_sub(seq_mul(seq_star(s), s), one), seq_sub(seq_mul(s, seq_star(s)), one)):
        if not is_null(defect, policy):
            raise DomainError("polar unitarization needs an almost-unitary input sequence")

    def gen(n: int):
        u, smallest = alg.polar(s.at(n))
        if smallest < POLAR_SINGULAR_CUTOFF:
            return alg.unit()
        return u

    return SequenceElement(alg, gen, 1.0)


def adjoint_morphism(u: SequenceElement, value, tol: float = 1e-10) -> SequenceElement:
    """n -> u(n)* value u(n); entries of u must be unitary within tol."""
    alg = u.algebra
    value_norm = alg.norm(value)

    def gen(n: int):
        un = u.at(n)
        if alg.unitarity_defect(un) > tol:
            raise DomainError(f"adjoint morphism needs unitary entries, defect at n={n}")
        return alg.mul(alg.mul(alg.star(un), value), un)

    return SequenceElement(alg, gen, value_norm)


def _same_algebra(s: SequenceElement, t: SequenceElement) -> None:
    if s.algebra is not t.algebra:
        raise UsageError("sequence elements live over different algebras")
