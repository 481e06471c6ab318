"""Per-root self checks for every documented property of the library.

Each check is a small randomized or exact verification of one property
from a module's contract (scalar identities, category axioms, diagram
moves, invariance of the surgery invariant, dimension identities).  The
CLI ``selftest`` subcommand runs all of them for a given root order and
reports one PASS/FAIL line per property.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import diagram as dg
from . import invariant as iv
from . import repcat as rc
from . import tqftdim as td
from .errors import NonGenericError
from .qscalar import RootParams


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _assert(cond: bool, detail: str) -> None:
    if not cond:
        raise AssertionError(detail)


def _generic(rng: np.random.Generator, lo: float = 0.08, hi: float = 1.92) -> float:
    while True:
        v = float(rng.uniform(lo, hi))
        if abs(v - round(v)) > 0.05:
            return v


# ----------------------------------------------------------------------
# scalar layer
# ----------------------------------------------------------------------


def check_qnum_odd_and_sine(ctx: RootParams, rng) -> None:
    for _ in range(20):
        x = complex(rng.uniform(-5, 5), rng.uniform(-1, 1))
        a, b = ctx.q_num(x), ctx.q_num(-x)
        _assert(abs(a + b) <= ctx.tol * (1 + abs(a)), f"oddness fails at {x}")
    for _ in range(20):
        x = float(rng.uniform(-5, 5))
        err = abs(ctx.q_num(x) - 2j * np.sin(np.pi * x / ctx.r))
        _assert(err <= 1e-9, f"sine form fails at {x}: {err:.2e}")


def check_mdim_periodicity(ctx: RootParams, rng) -> None:
    for _ in range(20):
        a = _generic(rng)
        k = int(rng.integers(-3, 4))
        err = abs(ctx.mdim(a + 2 * ctx.r * k) - ctx.mdim(a))
        _assert(err <= 1e-8, f"period fails at {a}+2r·{k}: {err:.2e}")


def check_mdim_defining_relation(ctx: RootParams, rng) -> None:
    sign = (-1) ** (ctx.r - 1)
    for _ in range(20):
        a = _generic(rng)
        err = abs(ctx.mdim(a) * ctx.q_num(ctx.r * a) - sign * ctx.r * ctx.q_num(a))
        _assert(err <= 1e-7, f"relation fails at {a}: {err:.2e}")


def check_constants_coupling(ctx: RootParams, rng) -> None:
    err1 = abs(ctx.delta - ctx.lam * ctx.delta_plus)
    err2 = abs(1 / ctx.delta - ctx.lam * ctx.delta_minus)
    _assert(max(err1, err2) <= 1e-9, f"delta/lambda coupling: {err1:.2e} {err2:.2e}")


def check_weight_set_shape(ctx: RootParams, rng) -> None:
    h = ctx.h_r_set()
    _assert(len(h) == ctx.r, f"|H_r| = {len(h)} != r")
    _assert(max(h) - min(h) == 2 * (ctx.r - 1), "H_r span != 2(r-1)")


# ----------------------------------------------------------------------
# representation layer
# ----------------------------------------------------------------------


def check_module_relations(ctx: RootParams, rng) -> None:
    a = rc.make_valpha(ctx, _generic(rng))
    b = rc.make_valpha(ctx, _generic(rng))
    for mod in (a, b, rc.tensor(a, b), rc.dual(a), rc.tensor(rc.dual(b), a)):
        res = rc.relations_residual(mod)
        _assert(res < 1e-10, f"relations residual {res:.2e} on {mod.label}")


def check_yang_baxter(ctx: RootParams, rng) -> None:
    mods = [rc.make_valpha(ctx, _generic(rng)) for _ in range(3)]
    a, b, c = mods
    ia, ib, ic = (np.eye(m.dim) for m in mods)
    r_ab = rc.braiding(a, b).matrix
    r_ac = rc.braiding(a, c).matrix
    r_bc = rc.braiding(b, c).matrix
    lhs = np.kron(r_bc, ia) @ np.kron(ib, r_ac) @ np.kron(r_ab, ic)
    rhs = np.kron(ic, r_ab) @ np.kron(r_ac, ib) @ np.kron(ia, r_bc)
    err = np.abs(lhs - rhs).max()
    _assert(err < 1e-8, f"YBE residual {err:.2e}")


def check_twist_scalar_and_ribbon(ctx: RootParams, rng) -> None:
    a = rc.make_valpha(ctx, _generic(rng))
    b = rc.make_valpha(ctx, _generic(rng))
    sa = rc.twist_scalar_of(a)
    _assert(abs(sa - rc.twist_scalar(ctx, a.label[1])) < 1e-9, "twist scalar drift")
    t_ab = rc.twist(rc.tensor(a, b)).matrix
    ribbon = (
        rc.braiding(b, a).matrix
        @ rc.braiding(a, b).matrix
        @ np.kron(rc.twist(a).matrix, rc.twist(b).matrix)
    )
    err = np.abs(t_ab - ribbon).max()
    _assert(err < 1e-8, f"ribbon compatibility residual {err:.2e}")


def check_degree_additivity(ctx: RootParams, rng) -> None:
    a = rc.make_valpha(ctx, _generic(rng))
    b = rc.make_valpha(ctx, _generic(rng))
    t = rc.tensor(a, b)
    _assert(
        ctx.is_congruent_mod2(t.degree, a.degree + b.degree),
        "degree not additive under tensor",
    )
    _assert(
        ctx.is_congruent_mod2(rc.dual(a).degree, -a.degree),
        "degree not negated under dual",
    )


def check_hom_dimension_support(ctx: RootParams, rng) -> None:
    for _ in range(20):
        a = _generic(rng)
        shift = int(rng.integers(-3, 4))
        offset = rng.choice([0.0, 2 * ctx.rprime * shift, float(rng.uniform(0.1, 0.9))])
        h = rc.hom_dimension(ctx, a, a + offset)
        _assert(len(h) <= 1, f"hom supported in {len(h)} degrees")


# ----------------------------------------------------------------------
# diagram layer
# ----------------------------------------------------------------------


def check_reidemeister_two(ctx: RootParams, rng) -> None:
    a = rc.make_valpha(ctx, _generic(rng))
    up = dg.Strand("K", True)
    wiggle = dg.SlicedDiagram((dg.Braid(0, 1), dg.Braid(0, -1)), (up, up))
    m = dg.evaluate(wiggle, {"K": a}, ctx).matrix
    err = np.abs(m - np.eye(a.dim * a.dim)).max()
    _assert(err < 1e-10, f"RII residual {err:.2e}")


def check_reidemeister_three(ctx: RootParams, rng) -> None:
    mods = {"K": rc.make_valpha(ctx, _generic(rng))}
    word1 = [(0, 1), (1, 1), (0, 1)]
    word2 = [(1, 1), (0, 1), (1, 1)]
    d1 = dg.braid_closure(word1, 3)
    d2 = dg.braid_closure(word2, 3)
    v1 = dg.evaluate(d1, mods, ctx).matrix[0, 0]
    v2 = dg.evaluate(d2, mods, ctx).matrix[0, 0]
    _assert(abs(v1 - v2) < 1e-9 * (1 + abs(v1)), f"RIII residual {abs(v1 - v2):.2e}")


def check_coupon_slide(ctx: RootParams, rng) -> None:
    a = rc.make_valpha(ctx, _generic(rng))
    mat = rng.normal(size=(a.dim, a.dim)) + 1j * rng.normal(size=(a.dim, a.dim))
    up = dg.Strand("K", True)
    coupon = dg.Coupon(0, (up,), (up,), mat)
    source = (up, up)
    early = dg.SlicedDiagram((coupon, dg.Id(), dg.Braid(0, 1)), source)
    late = dg.SlicedDiagram((dg.Id(), coupon, dg.Braid(0, 1)), source)
    v1 = dg.evaluate(early, {"K": a}, ctx).matrix
    v2 = dg.evaluate(late, {"K": a}, ctx).matrix
    err = np.abs(v1 - v2).max()
    _assert(err < 1e-10 * max(1.0, np.abs(v1).max()), f"coupon slide {err:.2e}")


def check_closed_scalar(ctx: RootParams, rng) -> None:
    d = dg.clasp_diagram(2)
    m = dg.evaluate(d, {"A": _generic(rng), "B": _generic(rng)}, ctx).matrix
    _assert(m.shape == (1, 1), f"closed diagram shape {m.shape}")


def check_functoriality_monoidality(ctx: RootParams, rng) -> None:
    a = rc.make_valpha(ctx, _generic(rng))
    up = dg.Strand("K", True)
    first = dg.SlicedDiagram((dg.Braid(0, 1),), (up, up))
    second = dg.SlicedDiagram((dg.Braid(0, -1),), (up, up))
    both = dg.SlicedDiagram((dg.Braid(0, 1), dg.Braid(0, -1)), (up, up))
    m1 = dg.evaluate(first, {"K": a}, ctx).matrix
    m2 = dg.evaluate(second, {"K": a}, ctx).matrix
    mb = dg.evaluate(both, {"K": a}, ctx).matrix
    err = np.abs(mb - m2 @ m1).max()
    _assert(err < 1e-10, f"vertical functoriality {err:.2e}")
    pair = dg.SlicedDiagram((dg.Braid(0, 1), dg.Braid(2, 1)), (up, up, up, up))
    mp = dg.evaluate(pair, {"K": a}, ctx).matrix
    err = np.abs(mp - np.kron(m1, m1)).max()
    _assert(err < 1e-10, f"horizontal monoidality {err:.2e}")


# ----------------------------------------------------------------------
# surgery-invariant layer
# ----------------------------------------------------------------------


def check_fprime_cut_independence(ctx: RootParams, rng) -> None:
    a, b = _generic(rng), _generic(rng)
    colors = {"A": a, "B": b}
    # two slicings of the same Hopf link, each cut component outermost
    vb = iv.f_prime(dg.clasp_diagram(1, "A", "B"), colors, ctx, cut_component="B")
    va = iv.f_prime(dg.clasp_diagram(1, "B", "A"), colors, ctx, cut_component="A")
    _assert(abs(va - vb) < 1e-9 * (1 + abs(va)), f"cut choice residual {abs(va-vb):.2e}")


def check_z_lift_shift(ctx: RootParams, rng) -> None:
    beta = _generic(rng)
    z0 = iv.z_invariant(iv.s1_x_s2_presentation(ctx, beta)).z
    z1 = iv.z_invariant(iv.s1_x_s2_presentation(ctx, beta + 2)).z
    _assert(abs(z0 - z1) < 1e-8 * (1 + abs(z0)), f"lift shift residual {abs(z0-z1):.2e}")


def _parallel_compatible_meridian(rng, framing: int) -> float:
    # the class must vanish on the preferred parallel: framing · c ≡ 0 mod 2
    choices = [
        2 * k / framing
        for k in range(1, 3 * abs(framing))
        if (2 * k) % (2 * abs(framing))  # skip integral values
    ]
    return float(rng.choice(choices))


def check_z_handle_slide(ctx: RootParams, rng) -> None:
    f = (3, 5)
    sp0 = iv.standard_two_component(
        ctx,
        0,
        f,
        tuple(_parallel_compatible_meridian(rng, fi) for fi in f),
    )
    sp1 = iv.handle_slide(sp0, "L1", "L2")
    z0, z1 = iv.z_invariant(sp0).z, iv.z_invariant(sp1).z
    _assert(abs(z0 - z1) < 1e-8 * (1 + abs(z0)), f"slide residual {abs(z0-z1):.2e}")
    sp2 = iv.handle_slide(sp1, "L1", "L2", reverse=True)
    _assert(
        sp2.framings == sp0.framings
        and all(
            abs(sp2.meridian_values[k] - sp0.meridian_values[k]) < 1e-12
            for k in sp0.meridian_values
        ),
        "slide round trip drifted",
    )


def check_z_two_forms(ctx: RootParams, rng) -> None:
    res = iv.z_invariant(
        iv.lens_unknot_presentation(ctx, -3, _parallel_compatible_meridian(rng, -3))
    )
    _assert(
        abs(res.z - res.z_via_betti) < 1e-9 * (1 + abs(res.z)),
        f"two normalization routes differ by {abs(res.z - res.z_via_betti):.2e}",
    )


def check_framing_twist(ctx: RootParams, rng) -> None:
    a = _generic(rng)
    d = dg.unknot_diagram("K")
    v0 = iv.f_prime(d, {"K": a}, ctx, framings={"K": 0})
    v1 = iv.f_prime(d, {"K": a}, ctx, framings={"K": 1})
    err = abs(v1 - rc.twist_scalar(ctx, a) * v0)
    _assert(err < 1e-9 * (1 + abs(v0)), f"framing twist residual {err:.2e}")


# ----------------------------------------------------------------------
# dimension layer
# ----------------------------------------------------------------------


def check_verlinde_identity(ctx: RootParams, rng) -> None:
    for genus in (1, 2):
        graph = td.random_generic_graph(ctx, rng, genus)
        gd = td.graded_dimension(graph)
        for _ in range(5):
            beta = _generic(rng)
            v = td.verlinde(ctx, genus, beta)
            err = abs(gd.evaluate_at(ctx, beta) - v) / (1 + abs(v))
            _assert(err < 1e-8, f"genus {genus} identity residual {err:.2e}")


def check_surgery_verlinde(ctx: RootParams, rng) -> None:
    beta = _generic(rng)
    z = iv.z_invariant(iv.s1_x_s2_presentation(ctx, beta)).z
    v = td.verlinde(ctx, 0, beta)
    _assert(abs(z - v) < 1e-9 * (1 + abs(v)), f"surgery/Verlinde gap {abs(z-v):.2e}")


def check_coloring_counts(ctx: RootParams, rng) -> None:
    graph = td.random_generic_graph(ctx, rng, 2)
    gd = td.graded_dimension(graph)
    total = sum(gd.coefficients.values())
    expect = ctx.r ** 3 if ctx.r % 2 else ctx.r ** 3 // 2
    _assert(total == expect, f"genus-2 count {total} != {expect}")


def check_hh0_matches_enumeration(ctx: RootParams, rng) -> None:
    for _ in range(3):
        genus = int(rng.integers(1, 4))
        legs = int(rng.integers(0, 3))
        if legs == 1 and ctx.r % 2 == 0:
            legs = 2
        graph = td.random_generic_graph(ctx, rng, genus, legs)
        a = td.graded_dimension(graph)
        b = td.hh0_dimension_generic(graph)
        _assert(
            a.coefficients == b.coefficients,
            f"paths disagree on genus {genus}, {legs} legs",
        )


def check_triple_admissible_shape(ctx: RootParams, rng) -> None:
    for _ in range(40):
        a, b = _generic(rng), _generic(rng)
        c = float(rng.integers(-2, 3)) - a - b + (ctx.r - 1) + 2 * int(rng.integers(-1, 2))
        ks = td.triple_admissible(ctx, a, b, c)
        if ctx.r % 2:
            _assert(len(ks) <= 1, f"odd r returned {len(ks)} degrees")
        else:
            _assert(len(ks) in (0, 2), f"even r returned {len(ks)} degrees")
            if ks:
                lo, hi = min(ks), max(ks)
                _assert(hi == lo + 1, "even-r degrees not consecutive")


def check_graph_independence(ctx: RootParams, rng) -> None:
    t1 = td.graded_dimension(td.theta_graph(ctx, _generic(rng), _generic(rng)))
    t2 = td.graded_dimension(td.theta_graph(ctx, _generic(rng), _generic(rng)))
    _assert(t1.coefficients == t2.coefficients, "theta histograms differ")
    try:
        td.graded_dimension(td.dumbbell_graph(ctx, _generic(rng), _generic(rng)))
    except NonGenericError:
        pass
    else:
        raise AssertionError("dumbbell bridge should be non-generic")


CHECKS: list[tuple[str, Callable]] = [
    ("qscalar: q_num oddness and sine form", check_qnum_odd_and_sine),
    ("qscalar: modified dimension periodicity", check_mdim_periodicity),
    ("qscalar: modified dimension defining relation", check_mdim_defining_relation),
    ("qscalar: delta/lambda/Gauss-sum coupling", check_constants_coupling),
    ("qscalar: weight set size and span", check_weight_set_shape),
    ("repcat: defining relations on modules", check_module_relations),
    ("repcat: Yang-Baxter equation", check_yang_baxter),
    ("repcat: twist scalars and ribbon compatibility", check_twist_scalar_and_ribbon),
    ("repcat: degree additivity", check_degree_additivity),
    ("repcat: hom dimension support", check_hom_dimension_support),
    ("diagram: Reidemeister II", check_reidemeister_two),
    ("diagram: Reidemeister III", check_reidemeister_three),
    ("diagram: coupon slides past identity", check_coupon_slide),
    ("diagram: closed diagrams are scalar", check_closed_scalar),
    ("diagram: functoriality and monoidality", check_functoriality_monoidality),
    ("invariant: cut-choice independence", check_fprime_cut_independence),
    ("invariant: lift-shift invariance", check_z_lift_shift),
    ("invariant: handle-slide invariance", check_z_handle_slide),
    ("invariant: two normalization routes agree", check_z_two_forms),
    ("invariant: framing changes twist the value", check_framing_twist),
    ("tqftdim: Verlinde identity", check_verlinde_identity),
    ("tqftdim: surgery/Verlinde consistency", check_surgery_verlinde),
    ("tqftdim: coloring counts", check_coloring_counts),
    ("tqftdim: Hochschild route matches enumeration", check_hh0_matches_enumeration),
    ("tqftdim: admissible degree counts", check_triple_admissible_shape),
    ("tqftdim: graph independence and bridge rejection", check_graph_independence),
]


def run_selftest(r: int, seed: int = 0) -> list[CheckResult]:
    """Run every property check for the given root order."""
    ctx = RootParams(r)
    results = []
    for name, fn in CHECKS:
        rng = np.random.default_rng(seed + zlib.crc32(name.encode()) % 100000)
        try:
            fn(ctx, rng)
            results.append(CheckResult(name, True))
        except AssertionError as exc:
            results.append(CheckResult(name, False, str(exc)))
        except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
