import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from antilattices.config import ContractViolation, ShapeError, WellDefinednessError
from antilattices.core import direct_product, flat_class, left_zero, make_flat, make_op_table, right_zero
from antilattices.enumeration import all_rectangular_tables, find_nonregular_witness
from antilattices.relations import (
    Partition,
    all_partitions,
    congruence_violation,
    greens_D,
    greens_L,
    greens_R,
    is_congruence,
    is_congruence_double,
    partition_join,
    projection_is_homomorphism,
    quotient,
    relations_compose,
)
from oracles import naive_green, naive_is_congruence, set_partitions


def grid():
    return direct_product(make_flat(2, "LL"), make_flat(2, "RR"))


class TestPartition:
    def test_normalized(self):
        p = Partition.from_labels([5, 5, 2, 7, 2])
        assert p.class_of == (0, 0, 1, 2, 1)
        assert p == Partition.from_classes(5, [[2, 4], [3], [0, 1]])

    def test_json(self):
        p = Partition.from_labels([1, 0, 1])
        assert p.to_json() == {"n": 3, "classes": [[0, 2], [1]]}
        assert Partition.from_json(p.to_json()) == p

    def test_bad_classes(self):
        with pytest.raises(ShapeError):
            Partition.from_classes(3, [[0, 1]])
        with pytest.raises(ShapeError):
            Partition.from_classes(2, [[0, 1], [1]])

    @pytest.mark.parametrize("n", range(0, 7))
    def test_all_partitions_counts_bell(self, n):
        ours = list(all_partitions(n))
        assert len(ours) == len(set(ours))
        reference = {Partition.from_classes(n, blocks) for blocks in set_partitions(list(range(n)))}
        assert set(ours) == reference


class TestGreens:
    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_zero_tables(self, n):
        assert greens_L(left_zero(n)) == Partition.universal(n)
        assert greens_R(left_zero(n)) == Partition.identity(n)
        assert greens_L(right_zero(n)) == Partition.identity(n)
        assert greens_R(right_zero(n)) == Partition.universal(n)

    def test_grid_rows_and_columns(self):
        # element i*2 + j sits in row i, column j
        t = grid().join
        assert greens_R(t).classes() == [[0, 1], [2, 3]]
        assert greens_L(t).classes() == [[0, 2], [1, 3]]
        assert greens_D(t) == Partition.universal(4)

    def test_non_band_rejected(self):
        with pytest.raises(ContractViolation):
            greens_L(make_op_table(2, [[1, 0], [0, 1]]))

    def test_match_loops_on_all_bands(self, band_tables):
        for n in range(1, 5):
            for a in band_tables[n]:
                t = make_op_table(n, a)
                for fn, kind in ((greens_L, "L"), (greens_R, "R"), (greens_D, "D")):
                    assert fn(t) == Partition.from_labels(naive_green(a, kind))

    def test_d_is_join_of_l_and_r(self, band_tables):
        for n in range(1, 6):
            for a in band_tables[n]:
                t = make_op_table(n, a)
                assert greens_D(t) == partition_join(greens_L(t), greens_R(t))


class TestJoinCompose:
    def test_join_examples(self):
        p = Partition.from_labels([0, 0, 1, 2])
        assert partition_join(Partition.identity(4), p) == p
        t = grid().join
        assert partition_join(greens_R(t), greens_L(t)) == Partition.universal(4)

    def test_size_mismatch(self):
        with pytest.raises(ShapeError):
            partition_join(Partition.identity(2), Partition.identity(3))
        with pytest.raises(ShapeError):
            relations_compose(Partition.identity(2), Partition.identity(3))

    def test_compose_identity(self):
        q = Partition.from_labels([0, 1, 0, 1])
        assert relations_compose(Partition.identity(4), q) == q.pairs()

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=6), st.data())
    def test_compose_by_definition(self, labels, data):
        p = Partition.from_labels(labels)
        q = Partition.from_labels(data.draw(st.lists(st.integers(0, 3), min_size=len(labels), max_size=len(labels))))
        n = p.n
        expected = {
            (x, z) for x in range(n) for z in range(n) if any(p.related(x, y) and q.related(y, z) for y in range(n))
        }
        assert relations_compose(p, q) == expected
        # the join contains the composite
        assert expected <= partition_join(p, q).pairs()

    def test_l_and_r_commute_on_rectangular(self):
        for n in range(1, 7):
            for t in all_rectangular_tables(n):
                L, R, D = greens_L(t), greens_R(t), greens_D(t)
                assert relations_compose(L, R) == relations_compose(R, L) == D.pairs()

    def test_l_and_r_commute_with_every_congruence(self):
        for n in range(1, 6):
            for t in all_rectangular_tables(n):
                L, R = greens_L(t), greens_R(t)
                for theta in all_partitions(n):
                    if not is_congruence(theta, t):
                        continue
                    for G in (L, R):
                        joined = partition_join(G, theta).pairs()
                        assert relations_compose(G, theta) == relations_compose(theta, G) == joined


class TestCongruence:
    def test_trivial_partitions(self):
        for t in all_rectangular_tables(4):
            assert is_congruence(Partition.identity(4), t)
            assert is_congruence(Partition.universal(4), t)

    def test_green_relations_are_congruences_of_their_band(self):
        for n in range(1, 7):
            for t in all_rectangular_tables(n):
                assert is_congruence(greens_L(t), t) and is_congruence(greens_R(t), t)

    def test_skew_lattice_l_join_is_congruence(self):
        A = direct_product(make_flat(2, "LR"), make_flat(3, "RL"))
        assert is_congruence_double(greens_L(A.join), A)

    def test_witness_breaks_a_green_relation(self):
        w = find_nonregular_witness(4)
        A = w.algebra
        assert not all(
            is_congruence_double(p, A) for p in (greens_L(A.join), greens_R(A.join), greens_L(A.meet), greens_R(A.meet))
        )

    def test_scan_matches_loops(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            n = int(rng.integers(1, 6))
            t = make_op_table(n, rng.integers(0, n, size=(n, n)))
            p = Partition.from_labels(rng.integers(0, 3, size=n).tolist())
            expected = naive_is_congruence(list(p.class_of), t.table.tolist())
            assert is_congruence(p, t) == expected
            assert (congruence_violation(p, t) is None) == expected

    def test_violation_is_genuine(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            n = int(rng.integers(2, 6))
            t = make_op_table(n, rng.integers(0, n, size=(n, n)))
            p = Partition.from_labels(rng.integers(0, 2, size=n).tolist())
            bad = congruence_violation(p, t)
            if bad is None:
                continue
            x, y, z, side = bad
            assert p.related(x, y)
            if side == "right":
                assert not p.related(int(t(x, z)), int(t(y, z)))
            else:
                assert not p.related(int(t(z, x)), int(t(z, y)))

    def test_size_mismatch(self):
        with pytest.raises(ShapeError):
            is_congruence(Partition.identity(2), left_zero(3))


class TestQuotient:
    def test_identity_and_universal(self):
        A = grid()
        assert quotient(A, Partition.identity(4)) == A
        Q = quotient(A, Partition.universal(4))
        assert Q.n == 1

    def test_flat_quotient(self):
        A = grid()
        theta = partition_join(greens_R(A.join), greens_R(A.meet))
        Q = quotient(A, theta)
        assert Q.n == 2 and str(flat_class(Q)) == "LL"

    def test_not_a_congruence(self):
        A = find_nonregular_witness(4).algebra
        p = greens_R(A.join)
        with pytest.raises(WellDefinednessError) as info:
            quotient(A, p)
        x, y, z, side = info.value.triple
        assert p.related(x, y)

    def test_projection_is_homomorphism(self):
        A = direct_product(make_flat(2, "LL"), make_flat(3, "RL"))
        for theta in all_partitions(A.n):
            if is_congruence_double(theta, A):
                Q = quotient(A, theta)
                assert Q.n == theta.num_classes
                assert projection_is_homomorphism(A, theta, Q)


def test_antilattice_reducts_are_single_d_class():
    for n in range(1, 7):
        for t in all_rectangular_tables(n):
            assert greens_D(t) == Partition.universal(n)


@pytest.mark.slow
def test_quasilattices_share_d(band_tables):
    from antilattices.core import DoubleAlgebra, is_quasilattice

    checked = 0
    for n in range(1, 5):
        tables = [make_op_table(n, a) for a in band_tables[n]]
        ds = [greens_D(t) for t in tables]
        for i, s in enumerate(tables):
            for k, t in enumerate(tables):
                if is_quasilattice(DoubleAlgebra(s, t)):
                    checked += 1
                    assert ds[i] == ds[k]
    assert checked > 0
