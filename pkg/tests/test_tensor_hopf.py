"""Truncated tensor algebra: product, exp/log, Hopf predicates, expansions."""

import random
from fractions import Fraction

import pytest

from lietrees.free_lie import LieSeries, lyndon_basis
from lietrees.tensor_hopf import (ExpansionMap, FreeGroupWord, TensorSeries,
                                  basis_expansion, check_expansion, coproduct,
                                  embed_lie, evaluate_expansion, exp, inv_unit,
                                  is_grouplike, is_primitive, log,
                                  magnus_expansion, mul, project_lie)

F = Fraction


def rand_lie(rng, genus, n):
    coords = {}
    for d in range(1, n + 1):
        basis = lyndon_basis(genus, d)
        w = basis[rng.randrange(len(basis))]
        c = F(rng.randint(-2, 2), rng.randint(1, 3))
        if c:
            coords[w] = c
    return LieSeries(genus, n, coords)


def rand_tensor(rng, genus, n, unit=False):
    coords = {(): F(1)} if unit else {}
    for _ in range(4):
        d = rng.randint(1, n)
        w = tuple(rng.randrange(2 * genus) for _ in range(d))
        c = F(rng.randint(-2, 2), rng.randint(1, 2))
        if c:
            coords[w] = coords.get(w, 0) + c
    return TensorSeries(genus, n, {w: c for w, c in coords.items() if c})


class TestProduct:
    def test_unit(self):
        rng = random.Random(1)
        x = rand_tensor(rng, 2, 4)
        one = TensorSeries.one(2, 4)
        assert mul(one, x) == x
        assert mul(x, one) == x

    def test_concatenation(self):
        a = TensorSeries.gen(1, 3, 0)
        b = TensorSeries.gen(1, 3, 1)
        assert mul(a, b).coords == {(0, 1): F(1)}

    def test_associativity(self):
        rng = random.Random(2)
        for _ in range(10):
            genus, n = rng.randint(1, 2), rng.randint(2, 4)
            x, y, z = (rand_tensor(rng, genus, n) for _ in range(3))
            assert mul(mul(x, y), z) == mul(x, mul(y, z))

    def test_truncation_drops_overflow(self):
        a = TensorSeries(1, 2, {(0, 1): F(1)})
        assert mul(a, a).coords == {}


class TestExpLog:
    def test_exp_needs_zero_constant(self):
        with pytest.raises(ValueError):
            exp(TensorSeries.one(1, 3))

    def test_log_needs_unit_constant(self):
        with pytest.raises(ValueError):
            log(TensorSeries.gen(1, 3, 0))

    def test_round_trips(self):
        rng = random.Random(3)
        for _ in range(10):
            genus, n = rng.randint(1, 2), rng.randint(2, 5)
            x = rand_tensor(rng, genus, n)
            assert log(exp(x)) == x
            u = rand_tensor(rng, genus, n, unit=True)
            assert exp(log(u)) == u

    def test_exp_of_letter(self):
        e = exp(TensorSeries.gen(1, 3, 0))
        assert e.coords == {(): F(1), (0,): F(1), (0, 0): F(1, 2),
                            (0, 0, 0): F(1, 6)}


class TestInverse:
    def test_geometric_series(self):
        rng = random.Random(4)
        for _ in range(8):
            genus, n = rng.randint(1, 2), rng.randint(2, 4)
            u = rand_tensor(rng, genus, n, unit=True)
            assert mul(u, inv_unit(u)) == TensorSeries.one(genus, n)
            assert mul(inv_unit(u), u) == TensorSeries.one(genus, n)

    def test_requires_unit(self):
        with pytest.raises(ValueError):
            inv_unit(TensorSeries.zero(1, 3))


class TestHopfStructure:
    def test_letters_are_primitive(self):
        d = coproduct(TensorSeries.gen(2, 3, 2))
        assert d == {((2,), ()): F(1), ((), (2,)): F(1)}

    def test_coproduct_splits_subsets(self):
        d = coproduct(TensorSeries(1, 3, {(0, 1): F(1)}))
        assert d == {((0, 1), ()): F(1), ((), (0, 1)): F(1),
                     ((0,), (1,)): F(1), ((1,), (0,)): F(1)}

    def test_embedded_lie_is_primitive(self):
        rng = random.Random(5)
        for _ in range(8):
            genus, n = rng.randint(1, 2), rng.randint(2, 5)
            assert is_primitive(embed_lie(rand_lie(rng, genus, n)))

    def test_products_are_not_primitive(self):
        x = TensorSeries.gen(1, 4, 0)
        assert not is_primitive(mul(x, x))

    def test_exponentials_are_grouplike(self):
        rng = random.Random(6)
        for _ in range(8):
            genus, n = rng.randint(1, 2), rng.randint(2, 5)
            assert is_grouplike(exp(embed_lie(rand_lie(rng, genus, n))))

    def test_one_plus_letter_is_not_grouplike(self):
        x = TensorSeries.one(1, 4) + TensorSeries.gen(1, 4, 0)
        assert not is_grouplike(x)

    def test_projection_inverts_embedding(self):
        rng = random.Random(7)
        for _ in range(10):
            genus, n = rng.randint(1, 2), rng.randint(2, 6)
            x = rand_lie(rng, genus, n)
            assert project_lie(embed_lie(x)) == x

    def test_projection_rejects_non_primitive(self):
        x = TensorSeries.gen(1, 4, 0)
        with pytest.raises(ValueError):
            project_lie(mul(x, x))


class TestFreeGroupWords:
    def test_free_reduction(self):
        g = FreeGroupWord.gen
        w = g(1, 0) * g(1, 0, -1)
        assert w == FreeGroupWord.identity(1)

    def test_inverse(self):
        g = FreeGroupWord.gen
        w = g(2, 0) * g(2, 3, -1) * g(2, 1)
        assert w * w.inverse() == FreeGroupWord.identity(2)
        assert w.inverse().letters == ((1, -1), (3, 1), (0, -1))

    def test_commutator_of_commuting_is_trivial(self):
        g = FreeGroupWord.gen(1, 0)
        assert FreeGroupWord.commutator(g, g) == FreeGroupWord.identity(1)

    def test_letters_stay_reduced(self):
        g = FreeGroupWord.gen
        sq = g(1, 0) * g(1, 0)
        assert sq.letters == ((0, 1), (0, 1))
        assert (sq * g(1, 0, -1)).letters == ((0, 1),)
        with pytest.raises(ValueError):
            FreeGroupWord(1, ((0, 2),))


class TestExpansions:
    def test_evaluation_is_a_monoid_map(self):
        rng = random.Random(8)
        theta = basis_expansion(2, 4)
        gens = [FreeGroupWord.gen(2, l, e) for l in range(4) for e in (1, -1)]
        for _ in range(6):
            w1 = gens[rng.randrange(len(gens))] * gens[rng.randrange(len(gens))]
            w2 = gens[rng.randrange(len(gens))]
            lhs = evaluate_expansion(theta, w1 * w2)
            rhs = mul(evaluate_expansion(theta, w1), evaluate_expansion(theta, w2))
            assert lhs == rhs

    def test_inverse_images_multiply_to_one(self):
        theta = basis_expansion(1, 5)
        prod = mul(theta.image(0), theta.image(0, -1))
        assert prod == TensorSeries.one(1, 5)

    def test_magnus_is_expansion_but_not_grouplike(self):
        rep = check_expansion(magnus_expansion(2, 4))
        assert rep.is_expansion
        assert not rep.is_grouplike

    def test_basis_expansion_is_grouplike(self):
        rep = check_expansion(basis_expansion(2, 4))
        assert rep.is_expansion
        assert rep.is_grouplike

    def test_truncation(self):
        theta = basis_expansion(1, 5)
        cut = theta.truncated(3)
        assert cut.max_degree == 3
        assert cut.image(0) == theta.image(0).truncated(3)
