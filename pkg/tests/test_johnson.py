"""Filtered automorphisms, derivations, window tensors, the obstruction map."""

import random
from fractions import Fraction

import pytest

from lietrees.free_lie import LieSeries, gen_count, lyndon_basis
from lietrees.jacobi import HLieTensor, eta, random_tree
from lietrees.johnson import (Derivation, LieAutomorphism, apply_aut,
                              apply_der, compose_aut, derivation_from_tensor,
                              exp_der, identity_aut, invert_aut,
                              is_omega_fixing, johnson_k, kernel_check,
                              log_aut, morita_mk, random_ic_element,
                              tau_bracket_check, tau_to_trees, tau_truncated)
from lietrees.koszul import capital_phi
from lietrees.symplectic import omega

F = Fraction


def rand_series(genus, lo, hi, rng, cap):
    coords = {}
    for d in range(lo, hi + 1):
        for w in lyndon_basis(genus, d):
            if rng.random() < 0.4:
                coords[w] = F(rng.randint(-4, 4))
    return LieSeries(genus, cap, coords)


def rand_aut(genus, cap, rng, lo=2):
    images = {}
    for letter in range(gen_count(genus)):
        dev = rand_series(genus, lo, cap, rng, cap)
        images[letter] = LieSeries.gen(genus, cap, letter) + dev
    return LieAutomorphism(genus, cap, images)


def rand_derivation(genus, cap, rng, lo=2):
    return Derivation(genus, cap, {
        letter: rand_series(genus, lo, cap, rng, cap)
        for letter in range(gen_count(genus))})


class TestAutomorphisms:
    def test_identity(self):
        psi = identity_aut(2, 4)
        x = rand_series(2, 1, 4, random.Random(0), 4)
        assert apply_aut(psi, x) == x

    def test_validation(self):
        images = {0: LieSeries.gen(1, 3, 1), 1: LieSeries.gen(1, 3, 1)}
        with pytest.raises(ValueError):
            LieAutomorphism(1, 3, images)

    def test_bracket_homomorphism(self):
        rng = random.Random(4)
        psi = rand_aut(2, 5, rng)
        for _ in range(5):
            x = rand_series(2, 1, 2, rng, 5)
            y = rand_series(2, 1, 2, rng, 5)
            assert apply_aut(psi, x.bracket(y)) == \
                apply_aut(psi, x).bracket(apply_aut(psi, y))

    def test_compose_then_invert(self):
        rng = random.Random(9)
        psi = rand_aut(2, 4, rng)
        phi = rand_aut(2, 4, rng)
        chained = compose_aut(psi, phi)
        x = rand_series(2, 1, 2, rng, 4)
        assert apply_aut(chained, x) == apply_aut(psi, apply_aut(phi, x))
        inv = invert_aut(psi)
        assert compose_aut(inv, psi) == identity_aut(2, 4)
        assert compose_aut(psi, inv) == identity_aut(2, 4)

    def test_truncation(self):
        psi = rand_aut(1, 5, random.Random(3))
        assert psi.truncated(3).max_degree == 3
        assert psi.truncated(3).image_of(0) == psi.image_of(0).truncated(3)


class TestDerivations:
    def test_degree_raising_enforced(self):
        with pytest.raises(ValueError):
            Derivation(1, 3, {0: LieSeries.gen(1, 3, 1)})

    def test_leibniz(self):
        rng = random.Random(6)
        delta = rand_derivation(2, 5, rng)
        for _ in range(5):
            x = rand_series(2, 1, 2, rng, 5)
            y = rand_series(2, 1, 2, rng, 5)
            lhs = apply_der(delta, x.bracket(y))
            rhs = apply_der(delta, x).bracket(y) + x.bracket(apply_der(delta, y))
            assert lhs == rhs

    def test_exp_log_round_trip(self):
        rng = random.Random(2)
        delta = rand_derivation(2, 4, rng)
        assert log_aut(exp_der(delta)) == delta
        psi = rand_aut(2, 4, rng)
        assert exp_der(log_aut(psi)) == psi

    def test_exp_of_zero(self):
        zero = Derivation(2, 4, {n: LieSeries(2, 4, {}) for n in range(4)})
        assert exp_der(zero) == identity_aut(2, 4)


class TestTensorDerivations:
    def test_contraction_is_omega_image(self):
        rng = random.Random(7)
        t = eta(random_tree(2, 2, rng))
        delta = derivation_from_tensor(t, 6)
        got = apply_der(delta, omega(2, 6))
        assert got == t.bracket_contraction().truncated(6)

    def test_window_recovery(self):
        for genus, k, seed in ((2, 1, 0), (2, 2, 3), (3, 1, 5)):
            t = eta(random_tree(genus, k, random.Random(seed)))
            assert not t.is_zero()
            psi = exp_der(derivation_from_tensor(t, 2 * k))
            assert tau_truncated(psi, k) == t
            assert johnson_k(psi, k) == t.graded_part(k)

    def test_bracket_kernel_detection(self):
        t = eta(random_tree(2, 1, random.Random(1)))
        psi = exp_der(derivation_from_tensor(t, 2))
        assert tau_bracket_check(psi, 1)
        values = {n: LieSeries(2, 2, {}) for n in range(4)}
        values[0] = LieSeries(2, 2, {(0, 1): F(1)})
        assert not tau_bracket_check(exp_der(Derivation(2, 2, values)), 1)


class TestWindowTensor:
    def test_additive_on_composition(self):
        for genus, k, s1, s2 in ((2, 1, 0, 1), (2, 2, 2, 3)):
            psi = random_ic_element(genus, k, s1, 2 * k)
            phi = random_ic_element(genus, k, s2, 2 * k)
            lhs = tau_truncated(compose_aut(psi, phi), k)
            assert lhs == tau_truncated(psi, k) + tau_truncated(phi, k)

    def test_inverse_negates(self):
        psi = random_ic_element(2, 1, 4, 2)
        assert tau_truncated(invert_aut(psi), 1) == -tau_truncated(psi, 1)

    def test_requires_enough_degrees(self):
        psi = identity_aut(2, 3)
        with pytest.raises(ValueError):
            tau_truncated(psi, 2)


class TestKernelCheck:
    def test_identity_in_every_level(self):
        assert kernel_check(identity_aut(2, 4), 2)
        assert kernel_check(identity_aut(2, 2), 1)

    def test_detects_window_content(self):
        psi = random_ic_element(2, 1, 2, 2)
        assert not kernel_check(psi, 1)

    def test_passes_deep_elements(self):
        t = eta(random_tree(2, 2, random.Random(0)))
        psi = exp_der(derivation_from_tensor(t, 4))   # deviations start at 3
        assert psi != identity_aut(2, 4)
        assert kernel_check(psi, 1)

    def test_rejects_shallow_elements(self):
        psi = random_ic_element(2, 1, 3, 2)
        with pytest.raises(ValueError):
            kernel_check(psi, 2)


class TestRandomElements:
    def test_deterministic(self):
        a = random_ic_element(2, 2, 11, 4)
        b = random_ic_element(2, 2, 11, 4)
        assert a == b

    def test_distinct_seeds_differ(self):
        assert random_ic_element(2, 1, 0, 2) != random_ic_element(2, 1, 1, 2)

    def test_fixes_omega(self):
        for seed in range(5):
            psi = random_ic_element(2, 2, seed, 4)
            assert is_omega_fixing(psi)
            assert apply_aut(psi, omega(2, 4)) == omega(2, 4)

    def test_deviation_window(self):
        psi = random_ic_element(2, 2, 1, 5)
        for letter in range(4):
            md = psi.deviation(letter).min_degree()
            assert md is None or md >= 3

    def test_precondition(self):
        with pytest.raises(ValueError):
            random_ic_element(2, 2, 0, 3)


class TestTreeLift:
    def test_round_trip_through_eta(self):
        psi = random_ic_element(2, 2, 6, 4)
        combo = tau_to_trees(psi, 2)
        assert eta(combo) == tau_truncated(psi, 2)


class TestObstruction:
    def test_identity_maps_to_zero(self):
        assert morita_mk(identity_aut(2, 2), 1).is_zero()

    def test_additive(self):
        psi = random_ic_element(2, 1, 0, 2)
        phi = random_ic_element(2, 1, 1, 2)
        both = compose_aut(psi, phi)
        assert morita_mk(both, 1) == morita_mk(psi, 1) + morita_mk(phi, 1)

    def test_tree_formula(self):
        for genus, k, seed in ((2, 1, 0), (2, 1, 7), (2, 2, 1)):
            psi = random_ic_element(genus, k, seed, 2 * k)
            lhs = -morita_mk(psi, k)
            rhs = capital_phi(tau_to_trees(psi, k), k)
            assert lhs == rhs

    def test_rejects_shallow_elements(self):
        psi = random_ic_element(2, 1, 5, 4)
        with pytest.raises(ValueError):
            morita_mk(psi, 2)

    def test_requires_enough_degrees(self):
        psi = random_ic_element(2, 2, 0, 4).truncated(3)
        with pytest.raises(ValueError):
            morita_mk(psi, 2)
