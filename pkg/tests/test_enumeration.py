from math import factorial

import numpy as np
import pytest

from antilattices.config import CapacityError
from antilattices.core import is_rectangular, make_flat
from antilattices.counting import congruence_count, rho, subalgebra_count
from antilattices.enumeration import (
    all_rectangular_tables,
    congruences_bruteforce,
    count_rectangular_by_shape,
    count_subalgebras_bruteforce,
    enumerate_antilattices,
    find_nonregular_witness,
    regular_antilattices,
    subalgebras_bruteforce,
)
from antilattices.relations import Partition, greens_L, greens_R
from antilattices.structure import canonical_product, is_regular, signature
from oracles import all_band_tables, naive_closed_subsets, naive_is_congruence, naive_is_rectangular


class TestRectangularTables:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 2), (4, 8), (5, 2), (6, 122)])
    def test_counts(self, n, count):
        assert len(all_rectangular_tables(n)) == count

    def test_matches_band_search(self, band_tables):
        for n in range(1, 6):
            ours = {t.table.tobytes() for t in all_rectangular_tables(n)}
            ref = {np.array(a, dtype=np.int64).tobytes() for a in band_tables[n] if naive_is_rectangular(a)}
            assert ours == ref

    def test_by_shape(self):
        shapes = count_rectangular_by_shape(6)
        assert shapes == {(1, 6): 1, (2, 3): 60, (3, 2): 60, (6, 1): 1}
        for (a, b), c in shapes.items():
            assert c == factorial(6) // (factorial(a) * factorial(b))

    def test_all_rectangular(self):
        assert all(is_rectangular(t) for t in all_rectangular_tables(8))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            all_rectangular_tables(9)
        with pytest.raises(CapacityError):
            enumerate_antilattices(5, max_order=4)


class TestCensus:
    @pytest.mark.parametrize("n,labeled", [(1, 1), (2, 4), (3, 4), (4, 40), (5, 4), (6, 724)])
    def test_counts(self, n, labeled):
        r = enumerate_antilattices(n)
        assert r.regular_up_to_iso == rho(n)
        assert r.regular_labeled == labeled
        assert r.total_antilattices == len(all_rectangular_tables(n)) ** 2
        assert sum(r.signatures.values()) == labeled

    def test_regular_list_matches_census(self, regular_upto6):
        for n, algebras in regular_upto6.items():
            assert len(algebras) == enumerate_antilattices(n).regular_labeled
            assert all(is_regular(A) for A in algebras)

    def test_signature_buckets(self, regular_upto6):
        for n in (4, 6):
            r = enumerate_antilattices(n)
            counts = {}
            for A in regular_upto6[n]:
                s = signature(A)
                counts[s] = counts.get(s, 0) + 1
            assert counts == r.signatures

    def test_jobs_agree(self):
        one = enumerate_antilattices(4, jobs=1)
        two = enumerate_antilattices(4, jobs=2)
        assert one.to_json() == two.to_json()

    def test_json(self):
        data = enumerate_antilattices(2).to_json()
        assert data["regular_up_to_iso"] == 4 and data["nonregular_witness"] is None
        assert [s["sig"] for s in data["signatures"]] == [[1, 1, 1, 2], [1, 1, 2, 1], [1, 2, 1, 1], [2, 1, 1, 1]]


class TestWitness:
    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_none_at_small_or_prime_orders(self, n):
        assert find_nonregular_witness(n) is None

    def test_order_four(self):
        w = find_nonregular_witness(4)
        A, cert = w.algebra, w.certificate
        assert not is_regular(A)
        rel = {"L(join)": greens_L(A.join), "R(join)": greens_R(A.join),
               "L(meet)": greens_L(A.meet), "R(meet)": greens_R(A.meet)}[cert["relation"]]
        op = A.join if cert["operation"] == "join" else A.meet
        assert not naive_is_congruence(list(rel.class_of), op.table.tolist())
        x, y, z = cert["triple"]
        assert rel.related(x, y)
        if cert["side"] == "right":
            assert not rel.related(int(op(x, z)), int(op(y, z)))
        else:
            assert not rel.related(int(op(z, x)), int(op(z, y)))

    def test_census_reports_same_witness(self):
        r = enumerate_antilattices(4)
        assert r.nonregular_witness == find_nonregular_witness(4).algebra


class TestBruteForce:
    def test_subalgebra_examples(self):
        assert count_subalgebras_bruteforce(make_flat(3, "LL")) == 8
        assert subalgebras_bruteforce(make_flat(1, "LL")) == [(), (0,)]
        A = canonical_product((2, 2, 1, 1))
        assert count_subalgebras_bruteforce(A) == subalgebra_count((2, 2, 1, 1)) == 10

    def test_subalgebras_match_loops(self):
        rng = np.random.default_rng(2)
        algebras = regular_antilattices(4) + [find_nonregular_witness(4).algebra]
        for i in rng.choice(len(algebras), 15, replace=False).tolist():
            A = algebras[i]
            subs = subalgebras_bruteforce(A)
            assert len(set(subs)) == len(subs) == naive_closed_subsets(A)
            for s in subs:
                assert all(int(A.join(x, y)) in s and int(A.meet(x, y)) in s for x in s for y in s)

    def test_congruence_examples(self):
        assert len(congruences_bruteforce(make_flat(4, "RL"))) == 15
        A = canonical_product((2, 2, 1, 1))
        congs = congruences_bruteforce(A)
        assert len(congs) == congruence_count((2, 2, 1, 1)) == 4
        assert Partition.identity(4) in congs and Partition.universal(4) in congs

    def test_congruences_match_loops(self):
        A = find_nonregular_witness(4).algebra
        from antilattices.relations import all_partitions

        expected = [
            p for p in all_partitions(4)
            if naive_is_congruence(list(p.class_of), A.join.table.tolist())
            and naive_is_congruence(list(p.class_of), A.meet.table.tolist())
        ]
        assert congruences_bruteforce(A) == expected

    def test_capacity(self):
        with pytest.raises(CapacityError):
            congruences_bruteforce(make_flat(9, "LL"))
        with pytest.raises(CapacityError):
            count_subalgebras_bruteforce(make_flat(17, "LL"))


def test_band_oracle_counts():
    # labeled idempotent semigroups
    assert [len(all_band_tables(n)) for n in range(1, 4)] == [1, 4, 35]
