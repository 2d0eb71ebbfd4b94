"""Acceptance gate: one test per release criterion, one printed verdict line each.

Each test computes its quantities from scratch at the stated tolerances and
asserts the criterion exactly as stated; a failing criterion is reported,
not weakened.  Verdict lines go to stdout so a verbose run shows one line
per criterion next to the pytest outcome.
"""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import quad

import conebraid.category as C
import conebraid.field as F
import conebraid.seqalg as SA
from conebraid.config import load_config
from conebraid.suites import RunContext, run_suite
from conebraid.weyl import commutator_norm, gram_matrix

ROOT = Path(__file__).resolve().parent.parent
CONFIG_PATH = ROOT / "configs" / "default.json"

HALF_ANGLE = math.radians(30.0)
RADII = (10.0, 20.0, 30.0, 40.0)


def verdict(num: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def ctx():
    return RunContext(load_config(CONFIG_PATH))


@pytest.fixture(scope="module")
def pair(ctx):
    return ctx.objects["gamma"], ctx.objects["delta"]


def test_criterion_01_symplectic_oracle(pair):
    started = time.perf_counter()
    gamma, delta = pair
    q = c = s = t = 1.0
    closed = q * c / math.sqrt(s * s + t * t)
    # independent 1-D oracle: (2 pi)^{-3/2} 4 pi int exp(-(s^2+t^2) r^2 / 2) dr
    oracle = (2.0 * math.pi) ** -1.5 * 4.0 * math.pi * quad(
        lambda r: math.exp(-0.5 * (s * s + t * t) * r * r), 0.0, np.inf
    )[0]
    value = F.symplectic(gamma.data, delta.data)
    elapsed = time.perf_counter() - started
    ok = (
        abs(closed - 1.0 / math.sqrt(2.0)) < 1e-12
        and abs(oracle - closed) < 1e-9
        and abs(value - closed) < 1e-6
        and elapsed < 1.0
    )
    verdict(1, ok, f"symplectic value {value:.10f} vs closed form {closed:.10f} in {elapsed:.3f}s")


def test_criterion_02_exact_braiding_phase(pair):
    gamma, delta = pair
    sigma = F.symplectic(gamma.data, delta.data)
    coeff = C.braiding_exact(gamma, delta).coeff
    dev = abs(coeff - np.exp(-1j * sigma))
    verdict(2, dev <= 1e-12, f"braiding coefficient deviates from e^(-i sigma) by {dev:.3e}")


def test_criterion_03_braiding_limit_convergence(ctx, pair):
    started = time.perf_counter()
    gamma, delta = pair
    exact = C.braiding_exact(gamma, delta).coeff
    run = C.braiding_asymptotic(gamma, delta, ctx.cone, RADII)
    res = [abs(p - exact) for p in run.phases]
    elapsed = time.perf_counter() - started
    ok = res[-1] < 1e-3 and res[-1] < res[0] and elapsed < 60.0
    verdict(
        3,
        ok,
        f"limit residual {res[-1]:.6f} at R=40 (R=10: {res[0]:.6f}, "
        f"target 1e-3) in {elapsed:.1f}s",
    )


def test_criterion_04_cone_rotation_chain(ctx, pair):
    gamma, delta = pair
    exact = C.braiding_exact(gamma, delta).coeff
    limits = C.cone_homotopy(gamma, delta, ctx.homotopy_chain(), RADII)
    spread = max(
        (abs(p - q) for i, p in enumerate(limits) for q in limits[i + 1 :]), default=0.0
    )
    worst = max(abs(p - exact) for p in limits)
    ok = spread <= 1e-3 and worst <= 1e-3
    verdict(
        4,
        ok,
        f"7-cone chain mutual spread {spread:.3e}, worst deviation from exact {worst:.6f}",
    )


def test_criterion_05_coherence_suite(ctx):
    report = run_suite(ctx.config, "laws", seed=0)
    identity_rows = [r for r in report.rows if r.check_id != "laws/gram_psd"]
    worst = max(r.residual for r in identity_rows)
    ok = ctx.config.law_samples >= 100 and worst <= 1e-12
    verdict(
        5,
        ok,
        f"max identity residual {worst:.3e} over {ctx.config.law_samples} seeded samples",
    )


def _decay_triple(ctx, pair, radius):
    gamma, delta = pair
    cone_u = ctx.cone
    cone_v = ctx.cone.opposite()
    off = ctx.config.transporter_offset
    shift_u = (0.0,) + tuple(off * a for a in cone_u.axis)
    shift_v = (0.0,) + tuple(off * a for a in cone_v.axis)
    r = C.hom_basis(gamma, C.translate_object(gamma, shift_u))
    s = C.hom_basis(delta, C.translate_object(delta, shift_v))
    impl = C.implementation_residual(gamma, cone_u.translation(radius), delta.data)
    abel = C.abelianness_residual(
        C.transported_arrow(r, cone_u, radius).label,
        C.transported_arrow(s, cone_v, radius).label,
    )
    tens = C.tensor_abelianness_residual(r, s, cone_u, cone_v, radius)
    return impl, abel, tens


def test_criterion_06_localization_decay(ctx, pair):
    near = _decay_triple(ctx, pair, 10.0)
    far = _decay_triple(ctx, pair, 40.0)
    ok = all(f < 1e-2 for f in far) and all(f < n for f, n in zip(far, near))
    verdict(
        6,
        ok,
        "implementation/abelianness/tensor residuals at R=40: "
        f"{far[0]:.4f}/{far[1]:.2e}/{far[2]:.2e} (R=10: {near[0]:.4f}/{near[1]:.2e}/{near[2]:.2e})",
    )


def test_criterion_07_extension_independence(ctx, pair):
    gamma, delta = pair
    off = ctx.config.transporter_offset
    shift = (0.0,) + tuple(off * a for a in ctx.cone.axis)
    s_plus = C.hom_basis(delta, C.translate_object(delta, shift))
    res = C.extension_residual(gamma, s_plus, ctx.cone, ctx.cone.opposite(), 40.0)
    verdict(7, res < 1e-2, f"opposite-cone extension residual {res:.4e} at R=40")


def test_criterion_08_weyl_model_validity(ctx, pair):
    gamma, delta = pair
    shift = (0.0, 0.0, 0.0, 2.0)
    r = C.hom_basis(gamma, C.translate_object(gamma, shift))
    f = F.intertwiner_label(delta.data, F.translate(delta.data, (0.0, 1.0, 0.0, -1.0)))
    rel = max(
        C.intertwiner_relation_residual(r, f),
        C.intertwiner_relation_residual(C.braiding_exact(gamma, delta), f),
    )

    rng = np.random.default_rng(0)
    labels = []
    for _ in range(8):
        vec = F.make_test_vector(
            ctx.grid,
            amplitude=float(rng.uniform(0.2, 1.5)),
            width=float(rng.uniform(0.6, 1.6)),
            channel=str(rng.choice(["g", "h"])),
        )
        labels.append(F.translate(vec, (0.0, *rng.uniform(-2.0, 2.0, size=3))))
    min_eig = float(np.linalg.eigvalsh(gram_matrix(labels)).min())

    x = delta.data
    y = F.translate(gamma.data, (0.0, 0.0, 0.0, 1.0))
    y = F.scale(math.pi / F.symplectic(x, y), y)
    comm = commutator_norm(x, y)

    ok = rel <= 1e-12 and min_eig >= -1e-10 and abs(comm - 2.0) <= 1e-10
    verdict(
        8,
        ok,
        f"intertwiner relation {rel:.2e}, gram min eigenvalue {min_eig:.2e}, "
        f"pi-commutator norm {comm:.12f}",
    )


def test_criterion_09_sequence_algebra_corpus():
    alg = SA.MatrixAlgebra(2)
    policy = SA.TailPolicy()
    assert (policy.window_start, policy.sample_count, policy.tolerance) == (32, 16, 1e-6)
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    p = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    p /= alg.norm(p)

    drift = SA.SequenceElement(alg, lambda n: q + 0.5**n * p, 2.0)
    unit = SA.polar_unitarize(drift, policy)
    defect = max(alg.unitarity_defect(unit.at(n)) for n in policy.samples())
    null_ok = SA.is_null(SA.seq_sub(unit, drift), policy)

    member = lambda t, pol: SA.equivalent(t, SA.constant(alg, q), pol)
    forward_ok, n_maps = SA.stability_probe(drift, member, policy, rng)

    b = q + np.array([[0.0, 0.0], [0.0, 1.0]])
    alt = SA.SequenceElement(alg, lambda n: q if n % 2 == 0 else b, alg.norm(b) + 1.0)
    even = SA.subsequence(alt, lambda n: 2 * n)
    odd = SA.subsequence(alt, lambda n: 2 * n + 1)
    converse_ok = not SA.equivalent(even, odd, policy)

    ok = defect <= 1e-12 and null_ok and forward_ok and converse_ok
    verdict(
        9,
        ok,
        f"polar defect {defect:.2e}, null distance {null_ok}, "
        f"stability over {n_maps} maps {forward_ok}, converse separation {converse_ok}",
    )


def test_criterion_10_byte_identical_reruns(tmp_path):
    outputs = []
    for sub in ("a", "b"):
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "conebraid",
                "verify",
                "--config",
                str(CONFIG_PATH),
                "--seed",
                "0",
                "--out",
                str(tmp_path / sub),
            ],
            cwd=ROOT,
            capture_output=True,
            text=True,
        )
        assert proc.returncode in (0, 1), proc.stderr
        outputs.append((tmp_path / sub / "all_report.csv").read_bytes())
    ok = outputs[0] == outputs[1] and len(outputs[0]) > 0
    verdict(10, ok, f"two seeded runs emit identical CSV ({len(outputs[0])} bytes)")
