"""Whole-library acceptance sweep.

Thirteen numbered checks, each printing one verdict line directly to the
terminal (bypassing capture) with its wall-clock time.  A check fails if an
assertion inside it fails or if it exceeds its time budget.  Every check
rebuilds what it needs from scratch so the reported time is self-contained.
"""

import contextlib
import io
import itertools
import time

import numpy as np
import pytest

from finact.actions import all_set_actions, classify, image_analysis
from finact.affine import (
    chasles_translation_witness,
    chasles_vector_witness,
    identity_preserving_assignments,
    negation_witness,
    parallelogram_witness,
    translation_space,
)
from finact.carriers import compose, finite_set
from finact.deformation import evaluate, is_flat, is_torsion_free, scan
from finact.fields import (
    automorphism_field,
    induced_action,
    left_multiplication_field,
    verify_field,
)
from finact.groups import (
    as_vector_group,
    catalog_group,
    elementary_abelian,
    group_automorphisms,
    is_abelian,
    is_isomorphic,
)
from finact.kernel import FLAG_BITS, scan_a1a2_n3
from finact.malcev import (
    check_identities,
    count_malcev,
    from_group,
    from_space,
    phi_is_isomorphism,
    psi_is_isomorphism,
    recovered_group,
)
from finact.workbench import catalog
from finact.workbench.cli import main
from finact.workbench.formats import parse_field_text, parse_text
from finact.workbench.mine import mine


@pytest.fixture
def criterion(capsys):
    """Time a block, print 'criterion N: PASS/FAIL (X.XXs)', enforce bound."""

    @contextlib.contextmanager
    def run(n, bound=None):
        t0 = time.monotonic()
        try:
            yield
        except BaseException:
            run.say(f"criterion {n}: FAIL ({time.monotonic() - t0:.2f}s)")
            raise
        elapsed = time.monotonic() - t0
        ok = bound is None or elapsed < bound
        run.say(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s)")
        assert ok, f"criterion {n} took {elapsed:.2f}s, budget {bound}s"

    def say(line):
        # capture off, so the verdict reaches the terminal in any pytest mode
        with capsys.disabled():
            print(line, flush=True)

    run.say = say
    return run


def catalog_action(name):
    kind, obj = parse_text(catalog.text(name))
    assert kind == "action"
    return obj


def test_criterion_01_collapse_example(criterion):
    with criterion(1, bound=1.0):
        rep = classify(catalog_action("collapse"))
        assert rep.flags["closed_group_covariant"]
        assert rep.image_is_group
        assert rep.image_identity_is_identity_map is False
        assert not rep.flags["unital_set"]
        assert not rep.flags["reversible"]
        assert not rep.flags["monoidal"]


def test_criterion_02_c8_on_q_example(criterion):
    with criterion(2, bound=1.0):
        act = catalog_action("c8_on_q")
        rep = classify(act)
        for flag in ("unital_group", "closed_set", "regular", "premonoidal"):
            assert rep.flags[flag], flag
        assert not rep.flags["monoidal"]
        img = image_analysis(act)
        assert img.is_group and img.group.order == 8
        assert not is_abelian(img.group)
        assert is_isomorphic(img.group, catalog_group("Q")).isomorphic
        assert not is_isomorphic(img.group, catalog_group("C8")).isomorphic


def action_universes():
    dom2 = finite_set("G", ["g0", "g1"])
    car3 = finite_set("X", ["x0", "x1", "x2"])
    dom3 = finite_set("G", ["g0", "g1", "g2"])
    car2 = finite_set("X", ["x0", "x1"])
    return ((dom2, car3, 729), (dom3, car2, 64))


def has_two_sided_inverse(images):
    # brute force over every candidate inverse table
    n = len(images)
    for cand in itertools.product(range(n), repeat=n):
        if all(cand[images[x]] == x for x in range(n)) and all(
            images[cand[y]] == y for y in range(n)
        ):
            return True
    return False


def test_criterion_03_reversibility_routes_agree(criterion):
    with criterion(3, bound=5.0):
        for dom, car, expected in action_universes():
            n = len(car)
            total = 0
            for action in all_set_actions(dom, car):
                total += 1
                rev = True
                for m in action.maps:
                    r1 = has_two_sided_inverse(m.images)
                    r2 = all(
                        sum(1 for x in range(n) if m.images[x] == y) == 1
                        for y in range(n)
                    )
                    r3 = len(set(m.images)) == n
                    assert r1 == r2 == r3, m.images
                    rev = rev and r1
                assert rev == classify(action).flags["reversible"]
            assert total == expected


def test_criterion_04_free_action_lemmas(criterion):
    with criterion(4):
        free_counts = []
        for dom, car, _ in action_universes():
            n = len(car)
            frees = 0
            for action in all_set_actions(dom, car):
                rep = classify(action)
                if not rep.flags["free"]:
                    continue
                frees += 1
                assert rep.flags["injective_as_function"]
                maps = action.maps
                for i, mi in enumerate(maps):
                    for mj in maps[i + 1 :]:
                        # distinct translations of a free action disagree everywhere
                        assert all(mi.images[x] != mj.images[x] for x in range(n))
                if rep.flags["unital_set"]:
                    for m in maps:
                        if any(m.images[x] == x for x in range(n)):
                            assert m.is_identity
            free_counts.append(frees)
        assert free_counts == [216, 0]


def affine_sample():
    bases = [
        (2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1),
        (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3),
    ]
    spaces = []
    for p, k in bases:
        V = elementary_abelian(p, k)
        spaces.append(translation_space(V, V.base))
    for p, k in ((2, 2), (3, 2)):
        V = elementary_abelian(p, k)
        for auto in group_automorphisms(V.base):
            if len(spaces) >= 50:
                break
            spaces.append(translation_space(V, V.base, auto))
    return spaces


def test_criterion_05_affine_laws(criterion):
    with criterion(5, bound=30.0):
        spaces = affine_sample()
        assert len(spaces) == 50
        for s in spaces:
            assert s.kind == "affine"
            assert chasles_vector_witness(s) is None
            assert chasles_translation_witness(s) is None
            assert parallelogram_witness(s) is None
            assert negation_witness(s) is None
            assert all(v.zero for _, v in scan(s, "torsion0"))
            assert is_torsion_free(s)


def preaffine_family():
    V8 = elementary_abelian(2, 3)
    Q = catalog_group("Q")
    return V8, Q, list(identity_preserving_assignments(V8, Q))


def test_criterion_06_strictly_preaffine_family(criterion):
    with criterion(6, bound=60.0):
        V8, Q, assignments = preaffine_family()
        assert len(assignments) == 5040
        sampled = []
        for i, a in enumerate(assignments):
            sp = translation_space(V8, Q, a)
            assert sp.kind == "strictly_preaffine"
            if i % 50 == 0:
                sampled.append((a, sp))
        assert len(sampled) >= 100
        for a, sp in sampled:
            values = {}
            nonzero = 0
            for args, val in scan(sp, "torsion1"):
                values[args] = val
                if not val.zero:
                    nonzero += 1
                _, u, v = args
                au, av = a[V8.index(u)], a[V8.index(v)]
                # oracle: the torsion vector names the group commutator [au, av]
                com = Q.mul(Q.mul(Q.mul(au, av), Q.inv(au)), Q.inv(av))
                assert val.vector == V8.label(a.index(com))
            assert nonzero > 0
            for (x, u, v), val in values.items():
                swapped = values[(x, v, u)]
                assert V8.neg(V8.index(val.vector)) == V8.index(swapped.vector)


def automorphism_fields():
    V3 = elementary_abelian(3, 1)
    V22 = elementary_abelian(2, 2)
    autos3 = list(group_automorphisms(V3.base))
    autos22 = list(group_automorphisms(V22.base))
    fields = [automorphism_field(V3, c) for c in itertools.product(autos3, repeat=3)]
    for combo in itertools.islice(itertools.product(autos22, repeat=4), 16):
        fields.append(automorphism_field(V22, combo))
    return V3, V22, autos3, autos22, fields


def test_criterion_07_multiaffine_identities(criterion):
    with criterion(7, bound=30.0):
        V3, V22, autos3, autos22, fields = automorphism_fields()
        assert len(fields) >= 20
        for f in fields:
            assert f.pointwise_kind == "monoidal"
            n, nv = f.order, f.vectors.order
            for p in range(n):
                for v in range(nv):
                    t = f.vec_to_image[p][v]
                    assert f.image_to_vec[p][t] == v
                    assert (
                        f.common_image[t].images
                        == f.point_spaces[p].action.maps[v].images
                    )
                    assert f.pullback_idx(v, p, p) == v
            for q in range(n):
                for p in range(n):
                    for v in range(nv):
                        w = f.pullback_idx(v, q, p)
                        assert (
                            f.point_spaces[p].action.maps[w].images
                            == f.point_spaces[q].action.maps[v].images
                        )
            for r in range(n):
                for q in range(n):
                    for p in range(n):
                        for v in range(nv):
                            assert f.pullback_idx(
                                f.pullback_idx(v, r, q), q, p
                            ) == f.pullback_idx(v, r, p)
        for V, autos in ((V3, autos3), (V22, autos22)):
            for a in autos:
                const = automorphism_field(V, [a] * V.order)
                assert all(v.zero for _, v in scan(const, "torsion1_field"))
                assert all(v.zero for _, v in scan(const, "curvature0"))
        tw = automorphism_field(V3, [(0, 1, 2), (0, 2, 1), (0, 1, 2)])
        val = evaluate(tw, "torsion1_field", ("0", "1", "2"))
        # mod-3 oracle for the twisted field: scale u, v by the per-point factor
        e = (1, 2, 1)
        x, u, v = 0, 1, 2
        y = (x + e[x] * u) % 3
        z = (x + e[x] * v) % 3
        t = (y + e[y] * v) % 3
        t2 = (z + e[z] * u) % 3
        m = (e[t] * (t2 - t)) % 3  # 1 and 2 are self-inverse mod 3
        assert m == 1
        assert val.vector == str(m) and val.base == str(t)


def mined_premonoidal_field():
    result = mine("premonoidal_fields", {"filter": "nonzero_curvature0"}, limit=1)
    assert result.matched >= 1
    parsed = parse_field_text(result.structures[0][1])
    field = verify_field(
        as_vector_group(parsed.group), parsed.carrier, parsed.point_actions
    )
    return parsed, field


def skew_premonoidal_field():
    V22 = elementary_abelian(2, 2)
    return left_multiplication_field(
        V22,
        catalog_group("Z4"),
        [(0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 3, 2)],
    )


def test_criterion_08_curvature_laws_and_witness(criterion):
    with criterion(8, bound=120.0):
        *_, fields = automorphism_fields()
        skew = skew_premonoidal_field()
        parsed, mined_field = mined_premonoidal_field()
        assert mined_field.pointwise_kind == "premonoidal"
        for f in fields + [skew, mined_field]:
            zero_v = f.vectors.label(f.vectors.zero)
            multiaffine = f.pointwise_kind == "monoidal"
            for args, val in scan(f, "curvature0"):
                _, _, u, v = args
                if multiaffine:
                    # pointwise-monoidal fields are flat outright
                    assert val.zero, args
                elif zero_v in (u, v):
                    assert val.zero, args
            for args, val in scan(f, "curvature1"):
                x, w, u, v = args
                if u == v or zero_v in (u, v):
                    assert val.zero, args
                swapped = evaluate(f, "curvature1", (x, w, v, u))
                assert compose(val.translation, swapped.translation).is_identity

        witness = None
        for args, val in scan(mined_field, "curvature0"):
            if not val.zero:
                witness = (args, val)
                break
        assert witness is not None
        (ax, aw, au, av), want = witness

        # direct oracle straight off the parsed tables
        g = parsed.group
        raw = [[m.images for m in act.maps] for act in parsed.point_actions]
        nv = g.order
        lab = parsed.carrier.elements

        def apply(p, vec, pt):
            return raw[p][vec][pt]

        def div(p, a, b):
            hits = [m for m in range(nv) if raw[p][m][a] == b]
            assert len(hits) == 1
            return hits[0]

        def pull(v, q, p):
            hits = [m for m in range(nv) if raw[p][m] == raw[q][v]]
            assert len(hits) == 1
            return hits[0]

        x, w, u, v = lab.index(ax), g.index(aw), g.index(au), g.index(av)
        r = apply(x, w, x)
        s = apply(r, u, r)
        t = apply(s, v, s)
        rhs = apply(r, g.mul(u, pull(v, s, r)), r)
        got = div(t, t, rhs)
        assert g.label(got) == want.vector and lab[t] == want.base
        criterion.say(
            f"criterion 8 witness: curvature0{(ax, aw, au, av)} = "
            f"{want.vector} at {want.base}, oracle {g.label(got)} at {lab[t]}"
        )


def test_criterion_09_drift_zero_law(criterion):
    with criterion(9, bound=10.0):
        *_, fields = automorphism_fields()
        _, mined_field = mined_premonoidal_field()
        tw = automorphism_field(
            elementary_abelian(3, 1), [(0, 1, 2), (0, 2, 1), (0, 1, 2)]
        )
        for f in fields + [skew_premonoidal_field(), mined_field, tw]:
            zl = f.vectors.label(f.vectors.zero)
            vecs = [f.vectors.label(i) for i in range(f.vectors.order)]
            for x in f.carrier.elements:
                for p in f.carrier.elements:
                    for v in vecs:
                        assert evaluate(f, "drift", (x, p, zl, v)).zero


def test_criterion_10_ternary_table_theorem(criterion):
    with criterion(10, bound=60.0):
        arr = scan_a1a2_n3()
        assert arr.shape == (531441,)
        assoc = (arr & FLAG_BITS["associative"]) > 0
        both = ((arr & FLAG_BITS["a3"]) > 0) & ((arr & FLAG_BITS["a4"]) > 0)
        assert bool(np.array_equal(assoc, both))
        assert count_malcev(2) == 4


def test_criterion_11_heap_round_trip(criterion):
    with criterion(11, bound=30.0):
        names = [
            "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
            "Z2^2", "Z2^3", "C8", "Q", "S3", "D4",
        ]
        for name in names:
            G = catalog_group(name)
            s = from_group(G)
            for e in G.carrier.elements:
                assert is_isomorphic(recovered_group(s, e), G).isomorphic, (name, e)
                assert phi_is_isomorphism(s, e)
                for e2 in G.carrier.elements:
                    assert psi_is_isomorphism(s, e, e2)


def test_criterion_12_deformation_malcev_bridges(criterion):
    with criterion(12, bound=30.0):
        spaces = affine_sample()[:10]
        V8, Q, assignments = preaffine_family()
        spaces += [translation_space(V8, Q, a) for a in assignments[::50][:10]]
        tw = automorphism_field(
            elementary_abelian(3, 1), [(0, 1, 2), (0, 2, 1), (0, 1, 2)]
        )
        _, mined_field = mined_premonoidal_field()
        for f in (tw, mined_field, skew_premonoidal_field()):
            spaces.append(induced_action(f))
        for s in spaces:
            flags = check_identities(from_space(s)).flags
            assert is_torsion_free(s) == flags["commutative"]
            assert is_flat(s) == flags["a4"]


DETERMINISM_COMMANDS = [
    ["classify", "catalog:collapse", "--exhaustive"],
    ["classify", "catalog:c8_on_q", "--variance", "contravariant"],
    ["affine", "catalog:q_space"],
    ["affine", "catalog:z3_regular", "--exhaustive"],
    ["field", "catalog:z3_twist", "--exhaustive"],
    ["deform", "catalog:z3_twist", "--measure", "torsion1_field", "--exhaustive"],
    ["deform", "catalog:q_space", "--measure", "torsion1", "--at", "1", "001", "010"],
    ["malcev", "catalog:q_heap", "--exhaustive"],
    ["mine", "malcev", "--n", "2"],
    ["mine", "preaffine_bijections", "--filter", "torsion_free", "--limit", "2"],
    ["convert", "catalog:Z3", "--to", "action"],
    ["convert", "catalog:z2_heap", "--to", "group"],
    ["convert", "catalog:c8_on_q", "--to", "group"],
    ["catalog"],
    ["catalog", "Z2"],
]


def run_determinism_pass():
    outputs = []
    for argv in DETERMINISM_COMMANDS:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            rc = main(argv)
        assert rc == 0, argv
        out = buf.getvalue().encode()
        assert out, argv
        outputs.append(out)
    return outputs


def test_criterion_13_cli_determinism(criterion):
    with criterion(13):
        first = run_determinism_pass()
        second = run_determinism_pass()
        for argv, a, b in zip(DETERMINISM_COMMANDS, first, second):
            assert a == b, argv
