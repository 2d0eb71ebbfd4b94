"""Named check suites over a run configuration.

Each suite turns a RunConfig into a flat list of report rows, one per
(check, radius); checks without a radius schedule leave the radius cell
empty.  Row counts are computed up front from config shape alone, so the
plan can be printed before any numerics run and asserted afterwards.  All
randomness flows from the configured seed, which keeps emitted reports
byte stable.
"""

from __future__ import annotations

import math
import time

import numpy as np

from . import category as cat
from . import field as fld
from . import seqalg as sa
from .config import ChargeCfg, RunConfig
from .errors import ConfigError, InternalError
from .quadrature import MomentumGrid, build_grid
from .report import CheckRow, Report
from .weyl import gram_matrix, weyl, weyl_mul

SUITE_NAMES = ("laws", "braiding", "homotopy", "decay", "seqalg", "all")

_LAW_CHECKS = (
    "laws/hexagon_left",
    "laws/hexagon_right",
    "laws/naturality",
    "laws/interchange",
    "laws/compose_associativity",
    "laws/compose_units",
    "laws/star_isometry",
    "laws/braiding_symmetry",
    "laws/weyl_exchange",
    "laws/weyl_associativity",
    "laws/intertwiner_relation",
    "laws/auto_action_homomorphism",
    "laws/gram_psd",
)
_BRAIDING_CHECKS = (
    "braiding/limit_vs_exact",
    "braiding/categorical_vs_closed_form",
    "braiding/rephase_invariance",
)
_DECAY_CHECKS = (
    "decay/implementation",
    "decay/implementation_transported",
    "decay/abelianness",
    "decay/tensor_ordering",
    "decay/extension",
)
_SEQALG_CHECKS = (
    "seqalg/polar_unitarity",
    "seqalg/polar_null_distance",
    "seqalg/polar_singular_fallback",
    "seqalg/subsequence_stability",
    "seqalg/subsequence_converse",
    "seqalg/null_ideal",
    "seqalg/adjoint_constant",
    "seqalg/adjoint_center",
    "seqalg/adjoint_alternating",
)

_SMOOTH_BUMP_POWER = 2


def _bump_shape_fn(shape: str, support_radius: float):
    if shape == "indicator":
        return lambda r: np.ones_like(np.asarray(r, dtype=float))
    # smooth: (1 - (r/R)^2)^2 inside the support, C^1 at the boundary
    return lambda r: (1.0 - (np.asarray(r, dtype=float) / support_radius) ** 2) ** _SMOOTH_BUMP_POWER


def vector_from_charge_cfg(grid: MomentumGrid, cfg: ChargeCfg) -> fld.FieldVector:
    if cfg.profile == "gaussian-momentum":
        if cfg.channel == "g":
            if cfg.q == 0.0:
                return fld.make_test_vector(grid, amplitude=1.0, width=cfg.s, channel="g")
            return fld.make_charge_vector(grid, q=cfg.q, width=cfg.s)
        return fld.make_test_vector(grid, amplitude=cfg.q, width=cfg.s, channel="h")
    name = f"{cfg.shape}-{cfg.support_radius!r}"
    return fld.make_bump_vector(
        grid,
        name,
        _bump_shape_fn(cfg.shape, cfg.support_radius),
        cfg.support_radius,
        channel=cfg.channel,
        amplitude=cfg.q,
    )


class RunContext:
    """Materialized configuration: grid, field vectors, objects, cone."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.grid = build_grid(config.grid.n_radial, config.grid.n_angular, config.grid.r_max)
        self.vectors = {c.name: vector_from_charge_cfg(self.grid, c) for c in config.charges}
        self.objects = {
            name: cat.make_object(vec, name=name) for name, vec in self.vectors.items()
        }
        self.cone = cat.ConeSpec(
            config.cone.axis,
            config.half_angle_rad(),
            config.cone.time_slope,
            config.cone.time_exponent,
        )

    def charge_pairs(self):
        names = list(self.objects)
        return [(names[i], names[j]) for i in range(len(names)) for j in range(i + 1, len(names))]

    def homotopy_chain(self):
        """Cones rotated in a fixed plane through the configured axis."""
        axis0 = self.cone.direction()
        probe = np.array([1.0, 0.0, 0.0])
        if abs(float(np.dot(axis0, probe))) > 0.9:
            probe = np.array([0.0, 1.0, 0.0])
        ortho = probe - float(np.dot(probe, axis0)) * axis0
        ortho /= np.linalg.norm(ortho)
        step = math.radians(self.config.homotopy.step_deg)
        chain = []
        for k in range(self.config.homotopy.steps + 1):
            ax = math.cos(k * step) * axis0 + math.sin(k * step) * ortho
            chain.append(
                cat.ConeSpec(
                    tuple(ax),
                    self.cone.half_angle,
                    self.cone.time_slope,
                    self.cone.time_exponent,
                )
            )
        return chain

    def tail_policy(self) -> sa.TailPolicy:
        tp = self.config.tail_policy
        return sa.TailPolicy(tp.window_start, tp.sample_count, tp.tolerance)


def plan_counts(config: RunConfig, suite: str) -> list[tuple[str, int]]:
    """(label, row count) per sub-suite, computable without running numerics."""
    if suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {suite!r}; choose one of {', '.join(SUITE_NAMES)}")
    n_charges = len(config.charges)
    n_pairs = n_charges * (n_charges - 1) // 2
    n_radii = len(config.radii)
    n_cones = config.homotopy.steps + 1
    counts = {
        "laws": len(_LAW_CHECKS),
        "braiding": len(_BRAIDING_CHECKS) * n_radii * n_pairs,
        "homotopy": (n_cones + 1) * n_pairs,
        "decay": len(_DECAY_CHECKS) * n_radii * n_pairs,
        "seqalg": len(_SEQALG_CHECKS),
    }
    if suite == "all":
        return [(name, counts[name]) for name in ("laws", "braiding", "homotopy", "decay", "seqalg")]
    return [(suite, counts[suite])]


def planned_rows(config: RunConfig, suite: str) -> int:
    return sum(n for _, n in plan_counts(config, suite))


def _row(check_id, charge_pair, cone_id, radius, value, residual, threshold) -> CheckRow:
    residual = float(residual)
    return CheckRow(
        check_id=check_id,
        charge_pair=charge_pair,
        cone_id=cone_id,
        radius=radius,
        value=complex(value),
        residual=residual,
        threshold=float(threshold),
        passed=bool(residual <= threshold),
    )


def _random_object(ctx: RunContext, rng: np.random.Generator) -> cat.ChargeAutomorphism:
    base = ctx.vectors[rng.choice(list(ctx.vectors))]
    factor = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
    shift = (
        float(rng.uniform(-1.0, 1.0)),
        float(rng.uniform(-3.0, 3.0)),
        float(rng.uniform(-3.0, 3.0)),
        float(rng.uniform(-3.0, 3.0)),
    )
    return cat.make_object(fld.translate(fld.scale(factor, base), shift))


def _random_arrow(ctx: RunContext, rng: np.random.Generator, obj=None) -> cat.Intertwiner:
    if obj is None:
        obj = _random_object(ctx, rng)
    shift = (
        float(rng.uniform(-1.0, 1.0)),
        float(rng.uniform(-2.0, 2.0)),
        float(rng.uniform(-2.0, 2.0)),
        float(rng.uniform(-2.0, 2.0)),
    )
    arrow = cat.hom_basis(obj, cat.translate_object(obj, shift))
    return cat.rephase(arrow, np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))


def _coeff_distance(u, v, label: fld.FieldVector) -> float:
    return float(abs(u.coeff_of(label) - v.coeff_of(label)))


def run_laws(ctx: RunContext, rng: np.random.Generator) -> list[CheckRow]:
    thr = ctx.config.thresholds
    worst = {check: 0.0 for check in _LAW_CHECKS}

    def bump(check: str, value: float) -> None:
        worst[check] = max(worst[check], float(value))

    for _ in range(ctx.config.law_samples):
        a_obj = _random_object(ctx, rng)
        b_obj = _random_object(ctx, rng)
        c_obj = _random_object(ctx, rng)
        hex_left, hex_right = cat.hexagon_residuals(a_obj, b_obj, c_obj)
        bump("laws/hexagon_left", hex_left)
        bump("laws/hexagon_right", hex_right)

        r = _random_arrow(ctx, rng, a_obj)
        s = _random_arrow(ctx, rng, b_obj)
        bump("laws/naturality", cat.naturality_residual(r, s))

        r2 = _random_arrow(ctx, rng, r.target)
        s2 = _random_arrow(ctx, rng, s.target)
        lhs = cat.tensor_mor(cat.compose(r2, r), cat.compose(s2, s))
        rhs = cat.compose(cat.tensor_mor(r2, s2), cat.tensor_mor(r, s))
        bump("laws/interchange", abs(lhs.coeff - rhs.coeff))

        r3 = _random_arrow(ctx, rng, r2.target)
        left = cat.compose(cat.compose(r3, r2), r)
        right = cat.compose(r3, cat.compose(r2, r))
        bump("laws/compose_associativity", abs(left.coeff - right.coeff))
        bump(
            "laws/compose_units",
            abs(cat.compose(cat.identity(r.target), r).coeff - r.coeff),
        )
        bump(
            "laws/star_isometry",
            abs(cat.compose(cat.star_mor(r), r).coeff - abs(r.coeff) ** 2),
        )

        round_trip = cat.compose(
            cat.braiding_exact(b_obj, a_obj), cat.braiding_exact(a_obj, b_obj)
        )
        bump("laws/braiding_symmetry", abs(round_trip.coeff - 1.0))

        x, y, z = a_obj.data, b_obj.data, c_obj.data
        wx, wy, wz = weyl(x), weyl(y), weyl(z)
        phase = np.exp(1j * fld.symplectic(x, y))
        bump(
            "laws/weyl_exchange",
            _coeff_distance(weyl_mul(wx, wy), weyl_mul(weyl(y, phase), wx), fld.add(x, y)),
        )
        xyz = fld.add(fld.add(x, y), z)
        bump(
            "laws/weyl_associativity",
            _coeff_distance(
                weyl_mul(weyl_mul(wx, wy), wz), weyl_mul(wx, weyl_mul(wy, wz)), xyz
            ),
        )

        f = fld.intertwiner_label(c_obj.data, fld.translate(c_obj.data, (0.0, 1.0, -0.5, 0.5)))
        bump("laws/intertwiner_relation", cat.intertwiner_relation_residual(r, f))

        u, v = weyl(f), r.as_weyl()
        lhs_w = cat.auto_action(a_obj, weyl_mul(u, v))
        rhs_w = weyl_mul(cat.auto_action(a_obj, u), cat.auto_action(a_obj, v))
        bump(
            "laws/auto_action_homomorphism",
            _coeff_distance(lhs_w, rhs_w, fld.add(f, r.label)),
        )

    labels = []
    for _ in range(8):
        width = float(rng.uniform(0.6, 1.6))
        amp = float(rng.uniform(0.2, 1.5))
        chan = str(rng.choice(["g", "h"]))
        vec = fld.make_test_vector(ctx.grid, amplitude=amp, width=width, channel=chan)
        shift = (0.0, float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)))
        labels.append(fld.translate(vec, shift))
    eigs = np.linalg.eigvalsh(gram_matrix(labels))
    min_eig = float(eigs.min())

    rows = []
    for check in _LAW_CHECKS:
        if check == "laws/gram_psd":
            rows.append(_row(check, "", "", None, min_eig, max(0.0, -min_eig), thr.gram))
        else:
            rows.append(_row(check, "", "", None, worst[check], worst[check], thr.laws))
    return rows


def run_braiding(ctx: RunContext, rng: np.random.Generator) -> list[CheckRow]:
    thr = ctx.config.thresholds
    radii = ctx.config.radii
    rows = []
    for name_a, name_b in ctx.charge_pairs():
        pair = f"{name_a}:{name_b}"
        a_obj, b_obj = ctx.objects[name_a], ctx.objects[name_b]
        exact = cat.braiding_exact(a_obj, b_obj).coeff
        plain = cat.braiding_asymptotic(a_obj, b_obj, ctx.cone, radii)
        redrawn = cat.braiding_asymptotic(a_obj, b_obj, ctx.cone, radii, rng=rng)
        for radius, phase, phase_r in zip(radii, plain.phases, redrawn.phases):
            ta = ctx.cone.translation(radius)
            tb = tuple(-c for c in ta)
            u_lab = fld.intertwiner_label(a_obj.data, fld.translate(a_obj.data, ta))
            v_lab = fld.intertwiner_label(b_obj.data, fld.translate(b_obj.data, tb))
            closed = np.exp(
                1j
                * (
                    fld.symplectic(a_obj.data, v_lab)
                    - fld.symplectic(fld.translate(b_obj.data, tb), u_lab)
                )
            )
            rows.append(
                _row("braiding/limit_vs_exact", pair, "", radius, phase, abs(phase - exact), thr.braiding)
            )
            rows.append(
                _row(
                    "braiding/categorical_vs_closed_form",
                    pair,
                    "",
                    radius,
                    phase - closed,
                    abs(phase - closed),
                    thr.laws,
                )
            )
            rows.append(
                _row(
                    "braiding/rephase_invariance",
                    pair,
                    "",
                    radius,
                    phase - phase_r,
                    abs(phase - phase_r),
                    thr.laws,
                )
            )
    return rows


def run_homotopy(ctx: RunContext) -> list[CheckRow]:
    thr = ctx.config.thresholds
    radii = ctx.config.radii
    chain = ctx.homotopy_chain()
    rows = []
    for name_a, name_b in ctx.charge_pairs():
        pair = f"{name_a}:{name_b}"
        a_obj, b_obj = ctx.objects[name_a], ctx.objects[name_b]
        exact = cat.braiding_exact(a_obj, b_obj).coeff
        limits = cat.cone_homotopy(a_obj, b_obj, chain, radii)
        for k, limit in enumerate(limits):
            rows.append(
                _row(
                    "homotopy/limit_vs_exact",
                    pair,
                    f"cone{k:02d}",
                    radii[-1],
                    limit,
                    abs(limit - exact),
                    thr.homotopy,
                )
            )
        spread = max(
            (abs(p - q) for i, p in enumerate(limits) for q in limits[i + 1 :]),
            default=0.0,
        )
        rows.append(
            _row("homotopy/mutual_spread", pair, "", radii[-1], spread, spread, thr.homotopy)
        )
    return rows


def run_decay(ctx: RunContext) -> list[CheckRow]:
    thr = ctx.config.thresholds
    off = ctx.config.transporter_offset
    cone_u = ctx.cone
    cone_v = ctx.cone.opposite()
    shift_u = (0.0,) + tuple(off * c for c in cone_u.axis)
    shift_v = (0.0,) + tuple(off * c for c in cone_v.axis)
    rows = []
    for name_a, name_b in ctx.charge_pairs():
        pair = f"{name_a}:{name_b}"
        a_obj, b_obj = ctx.objects[name_a], ctx.objects[name_b]
        r = cat.hom_basis(a_obj, cat.translate_object(a_obj, shift_u))
        s = cat.hom_basis(b_obj, cat.translate_object(b_obj, shift_v))
        s_plus = cat.hom_basis(b_obj, cat.translate_object(b_obj, shift_u))
        for radius in ctx.config.radii:
            ta = cone_u.translation(radius)
            impl = cat.implementation_residual(a_obj, ta, b_obj.data)
            rows.append(_row("decay/implementation", pair, "", radius, impl, impl, thr.decay))
            impl_t = cat.implementation_residual(a_obj, ta, s.label)
            rows.append(
                _row("decay/implementation_transported", pair, "", radius, impl_t, impl_t, thr.decay)
            )
            x_far = cat.transported_arrow(r, cone_u, radius).label
            y_far = cat.transported_arrow(s, cone_v, radius).label
            abel = cat.abelianness_residual(x_far, y_far)
            rows.append(_row("decay/abelianness", pair, "", radius, abel, abel, thr.decay))
            tens = cat.tensor_abelianness_residual(r, s, cone_u, cone_v, radius)
            rows.append(_row("decay/tensor_ordering", pair, "", radius, tens, tens, thr.decay))
            ext = cat.extension_residual(a_obj, s_plus, cone_u, cone_v, radius)
            rows.append(_row("decay/extension", pair, "", radius, ext, ext, thr.extension))
    return rows


def run_seqalg(ctx: RunContext, rng: np.random.Generator) -> list[CheckRow]:
    thr = ctx.config.thresholds
    policy = ctx.tail_policy()
    alg = sa.MatrixAlgebra(2)
    eye = np.eye(2, dtype=complex)

    q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    p = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    p = p / alg.norm(p)
    a_val = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))

    rows = []
    drift = sa.SequenceElement(alg, lambda n: q + 0.5**n * p, 2.0)
    unit = sa.polar_unitarize(drift, policy)
    defect = max(alg.unitarity_defect(unit.at(n)) for n in policy.samples())
    rows.append(_row("seqalg/polar_unitarity", "", "", None, defect, defect, thr.laws))

    dist = sa.limsup_norm(sa.seq_sub(unit, drift), policy)
    rows.append(_row("seqalg/polar_null_distance", "", "", None, dist, dist, policy.tolerance))

    gappy = sa.SequenceElement(alg, lambda n: np.zeros((2, 2), dtype=complex) if n < 8 else q, 1.0)
    fallback = sa.polar_unitarize(gappy, policy)
    fb_res = alg.norm(fallback.at(5) - eye)
    rows.append(_row("seqalg/polar_singular_fallback", "", "", None, fb_res, fb_res, thr.laws))

    member = lambda t, pol: sa.equivalent(t, sa.constant(alg, q), pol)
    ok, n_maps = sa.stability_probe(drift, member, policy, rng)
    rows.append(
        _row("seqalg/subsequence_stability", "", "", None, complex(n_maps), 0.0 if ok else 1.0, 0.5)
    )

    b_val = q + np.array([[0.0, 0.0], [0.0, 1.0]])
    alt = sa.SequenceElement(alg, lambda n: q if n % 2 == 0 else b_val, alg.norm(b_val) + 1.0)
    even = sa.subsequence(alt, lambda n: 2 * n)
    odd = sa.subsequence(alt, lambda n: 2 * n + 1)
    gap = sa.limsup_norm(sa.seq_sub(even, odd), policy)
    separated = not sa.equivalent(even, odd, policy)
    rows.append(
        _row("seqalg/subsequence_converse", "", "", None, gap, 0.0 if separated else 1.0, 0.5)
    )

    null_s = sa.SequenceElement(alg, lambda n: 0.5**n * p, 1.0)
    ideal = max(
        sa.limsup_norm(sa.seq_mul(null_s, alt), policy),
        sa.limsup_norm(sa.seq_mul(alt, null_s), policy),
    )
    rows.append(_row("seqalg/null_ideal", "", "", None, ideal, ideal, policy.tolerance))

    adj = sa.adjoint_morphism(unit, a_val)
    target = q.conj().T @ a_val @ q
    adj_res = max(alg.norm(adj.at(n) - target) for n in policy.samples())
    rows.append(_row("seqalg/adjoint_constant", "", "", None, adj_res, adj_res, policy.tolerance))

    center = sa.SequenceElement(alg, lambda n: np.exp(1j * n) * eye, 1.0)
    cen_res = max(
        alg.norm(sa.adjoint_morphism(center, a_val).at(n) - a_val) for n in policy.samples()
    )
    rows.append(_row("seqalg/adjoint_center", "", "", None, cen_res, cen_res, thr.laws))

    rot = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    u_alt = sa.SequenceElement(alg, lambda n: q if n % 2 == 0 else rot @ q, 1.0)
    adj_alt = sa.adjoint_morphism(u_alt, a_val)
    adj_even = sa.subsequence(adj_alt, lambda n: 2 * n)
    adj_odd = sa.subsequence(adj_alt, lambda n: 2 * n + 1)
    adj_gap = sa.limsup_norm(sa.seq_sub(adj_even, adj_odd), policy)
    unstable = not sa.equivalent(adj_even, adj_odd, policy)
    rows.append(
        _row("seqalg/adjoint_alternating", "", "", None, adj_gap, 0.0 if unstable else 1.0, 0.5)
    )
    return rows


def run_suite(config: RunConfig, suite: str, seed: int | None = None) -> Report:
    """Run a named suite and assemble the report; row count must match the plan."""
    plan = plan_counts(config, suite)
    expected = sum(n for _, n in plan)
    effective_seed = config.seed if seed is None else int(seed)
    started = time.perf_counter()
    ctx = RunContext(config)
    rows: list[CheckRow] = []
    parts = [name for name, _ in plan]
    if "laws" in parts:
        rows.extend(run_laws(ctx, np.random.default_rng(effective_seed)))
    if "braiding" in parts:
        rows.extend(run_braiding(ctx, np.random.default_rng(effective_seed + 1)))
    if "homotopy" in parts:
        rows.extend(run_homotopy(ctx))
    if "decay" in parts:
        rows.extend(run_decay(ctx))
    if "seqalg" in parts:
        rows.extend(run_seqalg(ctx, np.random.default_rng(effective_seed + 2)))
    if len(rows) != expected:
        raise InternalError(f"suite {suite!r} produced {len(rows)} rows, planned {expected}")
    return Report(
        suite=suite,
        config_digest=config.digest(),
        grid_checksum=ctx.grid.checksum,
        seed=effective_seed,
        rows=rows,
        wall_time_s=time.perf_counter() - started,
    )
