"""Verdict checks for the proved inequalities, plus the seeded suites."""

from fractions import Fraction

import pytest

from sumsetlab.groups import GroupContext, Homomorphism, PointSet
from sumsetlab.laws import (
    InstanceRejected,
    check_bm_corollary,
    check_compression_shrinks,
    check_freiman,
    check_independence_beta,
    check_petridis_instance,
    check_plunnecke,
    check_quasicube_beta,
    check_trivial_lower_bounds,
    check_two_point,
    petridis_qualify,
    run_suite,
)
from sumsetlab.search import SearchConfig

Z1 = GroupContext(1)
Z2 = GroupContext(2)
F = Fraction


def ps(ctx, pts):
    return PointSet.of(ctx, pts)


class TestQuasicubeBeta:
    def test_square(self):
        V = ps(Z2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        cfg = SearchConfig(box=((-1, 2), (-1, 2)), max_cardinality=4)
        v = check_quasicube_beta(V, cfg)
        assert v.holds and v.margin == 0

    def test_singleton(self):
        v = check_quasicube_beta(
            ps(Z1, [(4,)]), SearchConfig(box=((-1, 2),), max_cardinality=3)
        )
        assert v.holds

    def test_trapezoid(self):
        V = ps(Z2, [(0, 0), (1, 0), (0, 1), (3, 1)])
        cfg = SearchConfig(box=((-1, 2), (-1, 2)), max_cardinality=4)
        v = check_quasicube_beta(V, cfg)
        assert v.holds

    def test_requires_exact_config(self):
        with pytest.raises(ValueError):
            check_quasicube_beta(
                ps(Z1, [(0,)]),
                SearchConfig(box=((0, 1),), max_cardinality=2, p=F(3)),
            )


class TestPetridisPlunnecke:
    def test_petridis_example(self):
        X = ps(Z1, [(0,)])
        Y = ps(Z1, [(0,), (1,)])
        v = check_petridis_instance(X, Y, Y)
        assert v.holds and v.margin == 1  # 3*1 <= 2*2

    def test_petridis_trivial(self):
        X = ps(Z1, [(0,)])
        v = check_petridis_instance(X, X, X)
        assert v.holds and v.margin == 0

    def test_petridis_rejects_nonminimal(self):
        X = ps(Z1, [(0,), (1,), (5,)])
        Y = ps(Z1, [(0,), (1,)])
        with pytest.raises(InstanceRejected):
            check_petridis_instance(X, Y, Y)

    def test_qualify_produces_minimal(self):
        X = ps(Z1, [(0,), (1,), (5,)])
        Y = ps(Z1, [(0,), (1,)])
        Xq = petridis_qualify(X, Y)
        assert check_petridis_instance(Xq, Y, Y).holds

    def test_plunnecke_example(self):
        X = ps(Z1, [(i,) for i in range(5)])
        Y = ps(Z1, [(0,), (1,)])
        v = check_plunnecke(X, Y, 2)
        assert v.holds and v.margin == 5  # 180 - 175

    def test_plunnecke_singleton_y(self):
        X = ps(Z1, [(0,), (3,)])
        v = check_plunnecke(X, ps(Z1, [(0,)]), 3)
        assert v.holds and "witness_size=2" in v.note


class TestBmCorollary:
    def test_square_equality(self):
        U = ps(Z2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        A = ps(Z2, [(x, y) for x in range(3) for y in range(3)])
        v = check_bm_corollary(U, A, A)
        assert v.holds and v.margin == 0 and v.note == "exact"

    def test_singleton_pairs(self):
        U = ps(Z1, [(0,), (1,)])
        A = ps(Z1, [(0,)])
        assert check_bm_corollary(U, A, A).holds

    def test_dim_zero_rejected(self):
        with pytest.raises(ValueError):
            check_bm_corollary(ps(Z1, [(0,)]), ps(Z1, [(0,)]), ps(Z1, [(0,)]))


class TestCompression:
    def test_example(self):
        A = ps(Z2, [(0, 0), (0, 1)])
        B = ps(Z2, [(0, 0), (1, 2)])
        h = Homomorphism.drop_free_coordinate(Z2, 1)
        assert check_compression_shrinks(A, B, h).holds


class TestTrivialBounds:
    def test_two_point(self):
        U = ps(Z1, [(0,), (1,)])
        v = check_trivial_lower_bounds(U, SearchConfig(box=((-2, 3),), max_cardinality=4))
        assert v.holds and v.margin == 0  # both bounds attained

    def test_torsion_coset_degenerate(self):
        ctx = GroupContext(0, (2,))
        U = ps(ctx, [(0,), (1,)])
        v = check_trivial_lower_bounds(U, SearchConfig(box=(), max_cardinality=2))
        assert v.holds and "degenerate" in v.note

    def test_gap_two(self):
        U = ps(Z1, [(0,), (3,)])
        v = check_trivial_lower_bounds(U, SearchConfig(box=((-2, 5),), max_cardinality=4))
        assert v.holds


class TestIndependence:
    def test_scaled_windows(self):
        cfg = SearchConfig(box=((-2, 3),), max_cardinality=4)
        for m in (1, 2, 3):
            v = check_independence_beta(ps(Z1, [(0,), (1,)]), m, cfg)
            assert v.holds and v.margin == 0


class TestFreiman:
    def test_triangle_equality(self):
        v = check_freiman(ps(Z2, [(0, 0), (1, 0), (0, 1)]))
        assert v.holds and v.margin == 0  # 6 >= 6

    def test_singleton(self):
        v = check_freiman(ps(Z1, [(0,)]))
        assert v.holds and v.margin == 0


class TestTwoPoint:
    def test_small_grid(self):
        v = check_two_point([0.0, 0.5, 1.0], [2.0, 3.0], r_max=4, descent_starts=0)
        assert v.holds
        assert v.margin >= -1e-9


FAST_SUITES = [
    "rearrangement",
    "compression",
    "beta_gamma",
    "independence",
    "chains",
    "trivial_freiman",
    "two_point",
    "petridis_plunnecke",
]


@pytest.mark.parametrize("name", FAST_SUITES)
def test_suite_green(name):
    verdicts = run_suite(name)
    bad = [v for v in verdicts if not v.holds]
    assert not bad, bad[:3]
    assert verdicts  # nonempty


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("no_such_suite")


def test_verdict_serialization():
    v = run_suite("independence")[0]
    doc = v.to_json_dict()
    assert doc["holds"] is True
    assert set(doc) == {"law", "holds", "margin", "inputs", "counterexample", "note"}
