"""Deterministic quadrature over momentum space.

Momentum integrals are evaluated on a product grid: Gauss-Legendre nodes in
the radial coordinate on (0, r_max] crossed with an inversion-symmetric
angular rule.  The origin is never a node, so integrands with integrable
|p|^-k singularities can be sampled directly.  A one dimensional panel rule
provides radial Fourier transforms of compactly supported position profiles.

All constructions are pure functions of their arguments; grids built from
equal parameters are bit-identical.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._angular import SUPPORTED_ORDERS, angular_rule, antipode_index
from .errors import ConfigError, UsageError

TWO_PI_32 = (2.0 * np.pi) ** 1.5  # (2 pi)^{3/2}, the Fourier normalisation


@lru_cache(maxsize=256)
def gauss_legendre_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped from [-1, 1] to [0, 1]."""
    if n < 1:
        raise ConfigError("Gauss-Legendre rule needs at least one node")
    x, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=64)
def composite_legendre_unit(panels: int, order: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on [0, 1] with equal-width panels.

    Single-rule construction is quadratic in the node count, so highly
    oscillatory integrands (large spatial separations) use stacked cached
    fixed-order panels instead; construction stays linear in panels * order.
    """
    if panels < 1 or order < 2:
        raise ConfigError("composite rule needs at least one panel of order >= 2")
    base_nodes, base_weights = gauss_legendre_unit(order)
    width = 1.0 / panels
    starts = width * np.arange(panels)
    nodes = (starts[:, None] + width * base_nodes[None, :]).reshape(-1)
    weights = np.broadcast_to(width * base_weights, (panels, order)).reshape(-1).copy()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@dataclass(frozen=True, eq=False)
class MomentumGrid:
    """Product quadrature grid over momentum space.

    Attributes
    ----------
    n_radial, n_angular, r_max : grid parameters as requested.
    radial_nodes, radial_weights : (n_radial,) arrays, nodes in (0, r_max).
    angular_nodes : (n_angular, 3) unit vectors, closed under inversion.
    angular_weights : (n_angular,) positive weights summing to 4*pi.
    antipode : (n_angular,) index array, angular_nodes[antipode[j]] = -nodes[j].
    checksum : short hex digest of all nodes and weights.
    """

    n_radial: int
    n_angular: int
    r_max: float
    radial_nodes: np.ndarray = field(repr=False)
    radial_weights: np.ndarray = field(repr=False)
    angular_nodes: np.ndarray = field(repr=False)
    angular_weights: np.ndarray = field(repr=False)
    antipode: np.ndarray = field(repr=False)
    checksum: str = field(repr=True)

    @property
    def n_nodes(self) -> int:
        return self.n_radial * self.n_angular

    def points(self) -> np.ndarray:
        """All grid points as a (n_radial * n_angular, 3) array, radial major."""
        return (self.radial_nodes[:, None, None] * self.angular_nodes[None, :, :]).reshape(-1, 3)

    def node_measure(self) -> np.ndarray:
        """Flat weights w_i * r_i^2 * v_j matching ``points`` ordering."""
        return (self.radial_weights * self.radial_nodes**2)[:, None] @ self.angular_weights[None, :]


def build_grid(n_radial: int, n_angular: int, r_max: float) -> MomentumGrid:
    """Build the momentum-space quadrature grid.

    Parameters
    ----------
    n_radial : int
        Number of radial Gauss-Legendre nodes, at least 4.
    n_angular : int
        Size of the angular rule; must name a supported inversion-symmetric
        design (see ``conebraid._angular.SUPPORTED_ORDERS``).
    r_max : float
        Radial cutoff; nodes lie strictly inside (0, r_max).
    """
    if n_radial < 4:
        raise ConfigError(f"n_radial must be >= 4, got {n_radial}")
    if not np.isfinite(r_max) or r_max <= 0.0:
        raise ConfigError(f"r_max must be positive and finite, got {r_max}")
    if n_angular not in SUPPORTED_ORDERS:
        raise ConfigError(
            f"n_angular={n_angular} is not a supported angular rule size "
            f"{SUPPORTED_ORDERS}"
        )
    unit_nodes, unit_weights = gauss_legendre_unit(n_radial)
    radial_nodes = r_max * unit_nodes
    radial_weights = r_max * unit_weights
    ang_nodes, ang_weights = angular_rule(n_angular)
    pair = antipode_index(ang_nodes)

    digest = hashlib.sha256()
    for arr in (radial_nodes, radial_weights, ang_nodes, ang_weights):
        digest.update(np.ascontiguousarray(arr).tobytes())
    for arr in (radial_nodes, radial_weights, ang_nodes, ang_weights):
        arr.setflags(write=False)
    return MomentumGrid(
        n_radial=n_radial,
        n_angular=n_angular,
        r_max=float(r_max),
        radial_nodes=radial_nodes,
        radial_weights=radial_weights,
        angular_nodes=ang_nodes,
        angular_weights=ang_weights,
        antipode=pair,
        checksum=digest.hexdigest()[:16],
    )


def integrate(grid: MomentumGrid, samples: np.ndarray) -> complex:
    """Integrate node samples over momentum space.

    ``samples`` must be indexed exactly by the grid nodes, either flat of
    length ``grid.n_nodes`` (radial major) or shaped
    ``(n_radial, n_angular)``.  Returns sum_ij w_i r_i^2 v_j samples_ij.
    """
    s = np.asarray(samples)
    if s.shape == (grid.n_radial, grid.n_angular):
        s = s.reshape(-1)
    elif s.shape != (grid.n_nodes,):
        raise UsageError(
            f"samples shape {s.shape} does not match grid "
            f"({grid.n_radial} x {grid.n_angular})"
        )
    return complex(np.dot(grid.node_measure().reshape(-1), s))


def reflect_samples(grid: MomentumGrid, samples: np.ndarray) -> np.ndarray:
    """Samples of p -> s(-p) given samples of s, using the exact node pairing."""
    s = np.asarray(samples)
    flat = s.reshape(grid.n_radial, grid.n_angular)
    return flat[:, grid.antipode].reshape(s.shape)


def radial_panel_rule(support_radius: float, panels: int = 240, order: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on [0, support_radius]."""
    if support_radius <= 0.0:
        raise ConfigError(f"support radius must be positive, got {support_radius}")
    if panels < 200:
        raise ConfigError(f"at least 200 panels required, got {panels}")
    base_nodes, base_weights = gauss_legendre_unit(order)
    width = support_radius / panels
    starts = width * np.arange(panels)
    nodes = (starts[:, None] + width * base_nodes[None, :]).reshape(-1)
    weights = np.broadcast_to(width * base_weights, (panels, order)).reshape(-1)
    return nodes, weights.copy()


def radial_fourier(
    profile,
    support_radius: float,
    momenta: np.ndarray,
    panels: int = 240,
) -> np.ndarray:
    """Momentum-space transform of a radial position profile.

    Computes f~(p) = (2 pi)^{-3/2} * 4 pi * integral_0^R r^2 sinc(p r) f(r) dr
    for the convention f~(p) = (2 pi)^{-3/2} integral e^{-i p.x} f(|x|) d^3x,
    evaluated at the requested momentum magnitudes.  The p -> 0 limit is the
    sinc limit and is handled exactly.
    """
    p = np.atleast_1d(np.asarray(momenta, dtype=float))
    r, w = radial_panel_rule(support_radius, panels=panels)
    fr = np.asarray(profile(r), dtype=float)
    if fr.shape != r.shape:
        raise UsageError("profile must return one value per radius")
    # sinc(p r) = sin(p r)/(p r); np.sinc works in units of pi.
    kernel = np.sinc(np.outer(p, r) / np.pi)
    base = (w * r**2 * fr)[None, :]
    out = 4.0 * np.pi / TWO_PI_32 * np.sum(kernel * base, axis=1)
    if np.isscalar(momenta) or np.ndim(momenta) == 0:
        return out[0]
    return out
