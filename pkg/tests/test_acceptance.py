"""Acceptance suite: every exit criterion, timed, one pass/fail line each."""

import random
from contextlib import contextmanager
from time import perf_counter

from starcells import (
    IDENTITY,
    ConstraintTier,
    OneMorphism,
    Side,
    build_star_algebra,
    cell_structure,
    classify,
    count_set_partitions,
    decompose,
    enumerate_total_matrices,
    flor_normal_form,
    left_cell_representation,
    left_cell_subcategory,
    right_cell_representation,
    right_cell_subcategory,
)
from starcells.bimodule_2cat import composition_table
from starcells.cli import main
from starcells.matrix_solver import mat_mul, mat_scale, mat_transpose, matrix_rank
from starcells.verification import (
    GOLDEN,
    random_composable_word,
    random_nonneg_idempotent,
    random_order_reduce,
)

PF = ConstraintTier.PROJECTIVE_FUNCTOR


@contextmanager
def criterion(num, label, budget_seconds):
    start = perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {num} ({label}): FAIL")
        raise
    elapsed = perf_counter() - start
    assert elapsed < budget_seconds, (
        f"criterion {num} exceeded its {budget_seconds}s budget ({elapsed:.2f}s)"
    )
    print(f"criterion {num} ({label}): PASS [{elapsed:.2f}s]")


def test_criterion_1_algebra_golden_values():
    with criterion(1, "algebra golden values", 1.0):
        for n in range(1, 9):
            alg = build_star_algebra(n)
            assert alg.dimension == 4 * n + 2
            assert alg.projective_structure(0) == [(0,), tuple(range(1, n + 1)), (0,)]
            for v in range(1, n + 1):
                assert alg.projective_structure(v) == [(v,), (0,), (v,)]
            assert alg.is_self_injective()


def test_criterion_2_composition():
    with criterion(2, "composition tables", 1.0):
        table = composition_table(left_cell_subcategory(build_star_algebra(1)))
        assert table[(0, 0), (0, 0)] == OneMorphism.of((0, 0), 2)
        assert table[(0, 0), (1, 0)] == OneMorphism.of((0, 0), 1)
        assert table[(1, 0), (0, 0)] == OneMorphism.of((1, 0), 2)
        assert table[(1, 0), (1, 0)] == OneMorphism.of((1, 0), 1)
        for n in range(1, 7):
            alg = build_star_algebra(n)
            left = left_cell_subcategory(alg)
            total = OneMorphism({(i, 0): 1 for i in range(n + 1)})
            assert left.compose(total, total) == (n + 2) * total
            right = right_cell_subcategory(alg)
            for i in range(n + 1):
                for j in range(n + 1):
                    expect = OneMorphism.of((0, j), 2 if i == 0 else 1)
                    assert right.compose_labels((0, i), (0, j)) == expect


def test_criterion_3_cells():
    with criterion(3, "cell structure", 1.0):
        for n in range(1, 7):
            alg = build_star_algebra(n)
            cs = cell_structure(left_cell_subcategory(alg))
            nonid = [c for c in cs.left_cells if IDENTITY not in c]
            assert len(nonid) == 1 and len(nonid[0]) == n + 1
            rights = [c for c in cs.right_cells if IDENTITY not in c]
            assert len(rights) == n + 1 and all(len(c) == 1 for c in rights)
            cs_r = cell_structure(right_cell_subcategory(alg))
            assert all(len(c) == 1 for c in cs_r.left_cells)


def test_criterion_4_n1_classification():
    with criterion(4, "one-leaf classification", 1.0):
        got = enumerate_total_matrices(1)
        assert set(got) == {
            ((3,),),
            ((2, 1), (2, 1)),
            ((2, 2), (1, 1)),
            ((1, 1, 1), (1, 1, 1), (1, 1, 1)),
        }
        fams = decompose(((2, 1), (2, 1)), 1, PF)
        assert len(fams) == 1
        assert fams[0].matrices == (((2, 1), (0, 0)), ((0, 0), (2, 1)))
        assert decompose(((3,),), 1, PF) == []
        assert decompose(((2, 2), (1, 1)), 1, PF) == []


def _is_leading_row_shape(fam):
    rows = []
    for m in fam.matrices:
        nz = [k for k, row in enumerate(m) if any(row)]
        if len(nz) != 1:
            return False
        row = m[nz[0]]
        if row[0] != 2 or any(x != 1 for x in row[1:]):
            return False
        rows.append(nz[0])
    return rows[0] == 0 and set(rows[1:]) == set(range(1, fam.r))


def _is_flat_split_shape(fam):
    # the excluded alternative: leading summand row (2, 2, ..., 2), others all 1
    m0 = fam.matrices[0]
    nz = [k for k, row in enumerate(m0) if any(row)]
    if len(nz) != 1 or any(x != 2 for x in m0[nz[0]]):
        return False
    for m in fam.matrices[1:]:
        rows = [k for k, row in enumerate(m) if any(row)]
        if len(rows) != 1 or any(x != 1 for x in m[rows[0]]):
            return False
    return fam.r > 1


def test_criterion_5_general_classification():
    with criterion(5, "general classification", 60.0):
        expected_counts = {2: 2, 3: 5, 4: 15, 5: 52}
        for n in range(2, 6):
            report = classify(n, Side.LEFT, PF)
            assert report.count_up_to_perm == expected_counts[n]
            assert report.oracle_count == count_set_partitions(n) == expected_counts[n]
            for fam in report.families:
                assert _is_leading_row_shape(fam)
                assert not _is_flat_split_shape(fam)
                assert set(fam.phi) == set(range(2, fam.r + 1))


def test_criterion_6_right_cell():
    with criterion(6, "right-hand classification", 1.0):
        for n in range(1, 7):
            report = classify(n, Side.RIGHT, PF)
            assert report.count_up_to_perm == 1
            fam = report.families[0]
            assert fam.r == 1
            assert fam.matrices == (((2,),),) + (((1,),),) * n
            fam.validate(side=Side.RIGHT)


def test_criterion_7_cell_representations():
    with criterion(7, "cell 2-representations", 5.0):
        rep = left_cell_representation(1)
        assert rep.cartan == ((2, 1), (1, 1))
        family = decompose(((2, 1), (2, 1)), 1, PF)[0]
        assert (rep.action["F(0,0)"], rep.action["F(1,0)"]) == family.matrices
        for n in range(1, 7):
            assert right_cell_representation(n).cartan == ((2,),)


def test_criterion_8_property_suites():
    with criterion(8, "property suites", 30.0):
        rng = random.Random(0)
        for _ in range(1000):
            m = random_nonneg_idempotent(rng)
            form = flor_normal_form(m)
            assert form.reassemble() == m
            assert all(matrix_rank(b) == 1 for b in form.j_blocks)
        for n in range(1, 5):
            alg = build_star_algebra(n)
            for x in alg.basis:
                for y in alg.basis:
                    xy = alg.multiply(x, y)
                    for z in alg.basis:
                        assert alg.multiply(xy, z) == alg.multiply(x, alg.multiply(y, z))
        for n in range(1, 5):
            alg = build_star_algebra(n)
            for _ in range(250):
                word = random_composable_word(alg, rng)
                if not word:
                    continue
                assert random_order_reduce(alg.rewrite_rules, word, rng) == alg.reduce_word(word)
        reps = [left_cell_representation(n) for n in range(1, 5)]
        reps += [right_cell_representation(n) for n in range(1, 5)]
        for rep in reps:
            cm = mat_mul(rep.cartan, rep.action["F(0,0)"])
            assert cm == mat_transpose(cm)
        for n in range(1, 5):
            category = left_cell_subcategory(build_star_algebra(n))
            rep = left_cell_representation(n)
            for f in category.nonidentity_labels():
                for g in category.nonidentity_labels():
                    composite = category.compose_labels(f, g)
                    got = mat_mul(rep.action_matrix(f), rep.action_matrix(g))
                    expect = None
                    for label, c in composite.mult.items():
                        part = mat_scale(c, rep.action_matrix(label))
                        expect = part if expect is None else tuple(
                            tuple(x + y for x, y in zip(r1, r2))
                            for r1, r2 in zip(expect, part)
                        )
                    assert got == expect


def test_criterion_9_verify_aggregates_and_mutations_flip(capsys, monkeypatch):
    with criterion(9, "verification harness and mutation tests", 120.0):
        assert main(["verify"]) == 0
        capsys.readouterr()
        for key, value in list(GOLDEN.items()):
            monkeypatch.setitem(GOLDEN, key, ("__mutated__", value))
            assert main(["verify"]) == 1, f"mutating {key} did not flip the exit code"
            monkeypatch.setitem(GOLDEN, key, value)
            capsys.readouterr()
        assert main(["verify"]) == 0
