"""Finite combinations of Weyl generators over the field symplectic space.

Generators multiply with the phase cocycle

    W(x) W(y) = e^{+i sigma(x, y)/2} W(x + y),

so W(x)* = W(-x), each generator is unitary, and the exchange relation
W(x) W(y) = e^{+i sigma(x, y)} W(y) W(x) holds.  Elements are finite
complex combinations of generators; products expand term by term with the
cocycle phase evaluated by the field-layer symplectic form.

Generator labels are identified up to a 1e-9 quantization of coefficients
and offsets, which absorbs float noise from translation arithmetic while
keeping genuinely distinct labels apart.

The vacuum functional is quasi-free, omega(W(x)) = e^{-(x, x)/4}; it is
only evaluated on test-class labels (the exponent diverges otherwise, and
the field layer raises).  Gram matrices of generator families under this
functional are positive semidefinite, which the tests assert directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .field import FieldVector, add, negate, subtract, symplectic, vacuum_exponent, zero_vector
from .quadrature import MomentumGrid

QUANT = 1e-9
COEFF_EPS = 1e-14
GRAM_MAX_LABELS = 16


def _qi(v: float) -> int:
    return int(round(v / QUANT))


def label_id(vec: FieldVector) -> tuple:
    """Hashable identity of a field vector, stable under float jitter below QUANT."""
    out = []
    for coeff, atom in vec.terms:
        key = (
            atom.profile.kind,
            _qi(atom.profile.width),
            atom.profile.name,
            atom.channel,
            tuple(_qi(c) for c in atom.offset),
        )
        out.append((key, _qi(coeff)))
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class WeylElement:
    grid: MomentumGrid
    terms: tuple[tuple[complex, FieldVector], ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff_of(self, label: FieldVector) -> complex:
        key = label_id(label)
        for c, x in self.terms:
            if label_id(x) == key:
                return c
        return 0.0 + 0.0j


def _canonical(grid, items) -> WeylElement:
    merged: dict[tuple, tuple[complex, FieldVector]] = {}
    for c, x in items:
        key = label_id(x)
        if key in merged:
            prev_c, prev_x = merged[key]
            merged[key] = (prev_c + c, prev_x)
        else:
            merged[key] = (complex(c), x)
    kept = [(c, x) for key, (c, x) in sorted(merged.items()) if abs(c) > COEFF_EPS]
    return WeylElement(grid=grid, terms=tuple(kept))


def weyl(label: FieldVector, coeff: complex = 1.0) -> WeylElement:
    return _canonical(label.grid, [(coeff, label)])


def weyl_unit(grid: MomentumGrid) -> WeylElement:
    return weyl(zero_vector(grid))


def weyl_add(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_grid(a, b)
    return _canonical(a.grid, list(a.terms) + list(b.terms))


def weyl_scale(c: complex, a: WeylElement) -> WeylElement:
    return _canonical(a.grid, [(c * ca, x) for ca, x in a.terms])


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_grid(a, b)
    items = []
    for ca, x in a.terms:
        for cb, y in b.terms:
            phase = np.exp(0.5j * symplectic(x, y))
            items.append((ca * cb * phase, add(x, y)))
    return _canonical(a.grid, items)


def star(a: WeylElement) -> WeylElement:
    return _canonical(a.grid, [(np.conj(c), negate(x)) for c, x in a.terms])


def conjugate(u: WeylElement, a: WeylElement) -> WeylElement:
    """u* a u, the adjoint action of the (unitary) element u."""
    return weyl_mul(weyl_mul(star(u), a), u)


def commutator_norm(x: FieldVector, y: FieldVector) -> float:
    """Norm of [W(x), W(y)]; equals |e^{i sigma(x, y)} - 1|."""
    return float(abs(np.exp(1j * symplectic(x, y)) - 1.0))


def vacuum_state(a: WeylElement) -> complex:
    """Quasi-free vacuum expectation; every label must be test class."""
    total = 0.0 + 0.0j
    for c, x in a.terms:
        total += c * np.exp(-vacuum_exponent(x))
    return total


def gram_matrix(labels) -> np.ndarray:
    """Vacuum gram matrix G[k, l] = omega(W(x_k)* W(x_l)) of generator labels."""
    labels = list(labels)
    if not labels:
        return np.zeros((0, 0), dtype=complex)
    if len(labels) > GRAM_MAX_LABELS:
        raise UsageError(f"gram matrix limited to {GRAM_MAX_LABELS} labels")
    n = len(labels)
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(k, n):
            diff = subtract(labels[l], labels[k])
            val = np.exp(-0.5j * symplectic(labels[k], labels[l])) * np.exp(
                -vacuum_exponent(diff)
            )
            out[k, l] = val
            out[l, k] = np.conj(val)
    return out


def _same_grid(a: WeylElement, b: WeylElement) -> None:
    if a.grid is not b.grid:
        raise UsageError("operands live on different grids")
