"""
Tests for Lyndon bases and roots in free nilpotent quotients.
"""

import pytest

from vk.core.freegroup import magnus, parse_word
from vk.core.nilpotent import (
    RootCertificate,
    RootFailure,
    central_commutator_check,
    commutator_power_expansion,
    immersion_boundary_word,
    is_lyndon,
    kth_root_mod_gamma,
    lie_decompose,
    lyndon_words,
    obstruction_depth,
    power_center_check,
    power_subgroup_moduli,
    proposition42_witness,
    proposition42_word,
    same_in_quotient,
    standard_factorization,
    vanishes_modulo_powers,
    verify_root,
    witt_count,
)
from vk.entities.words import FreeWord
from vk.exceptions import InputError, InvariantViolation
from vk.utils.seeding import derive_rng


@pytest.mark.parametrize("d, expected", [(1, 2), (2, 1), (3, 2), (4, 3), (5, 6), (6, 9)])
def test_witt_count_two_generators(d, expected):
    """Test the number of Lyndon words on two letters."""
    assert witt_count(2, d) == expected
    assert len(lyndon_words(2, d)) == expected


def test_lyndon_words_and_bracketing():
    """Test Lyndon words, their factorisation and bracket text."""
    assert is_lyndon((0, 0, 1))
    assert not is_lyndon((0, 1, 0))
    assert not is_lyndon(())
    assert lyndon_words(2, 3).names() == ["aab", "abb"]
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert [e.text for e in lyndon_words(2, 3).elements] == ["[a,[a,b]]", "[[a,b],b]"]
    assert len(lyndon_words(3, 2)) == witt_count(3, 2) == 3
    with pytest.raises(InputError):
        lyndon_words(2, 0)


def test_basic_commutators_live_in_their_degree():
    """Test that each basic commutator of degree d lies in gamma_d and not deeper."""
    for element in lyndon_words(2, 4).elements:
        series = magnus(element.word, 5)
        assert series.lowest_nonconstant_degree() == 4
        assert series.homogeneous_part(4) == element.lie_polynomial()


def test_lie_decompose():
    """Test coordinates of a commutator and rejection of non-Lie elements."""
    level = lyndon_words(2, 2)
    component = magnus(parse_word("[a,b]^3"), 2).homogeneous_part(2)
    assert lie_decompose(level, component) == [3]
    with pytest.raises(InvariantViolation):
        lie_decompose(level, {(0, 1): 1})
    with pytest.raises(InputError):
        lie_decompose(level, {(0,): 1})


def test_root_found_and_verified():
    """Test a square root of a^2 b^2 modulo gamma_2 and its certificate."""
    result = kth_root_mod_gamma("a^2 b^2", 2, 1)
    assert isinstance(result, RootCertificate)
    assert result.verified
    assert verify_root("a^2 b^2", result.root_text, 2, 1)
    data = result.to_dict()
    assert data["kind"] == "root"
    assert data["root"] == result.root_text


def test_root_failure_reports_level():
    """Test that a b has no square root modulo gamma_2."""
    result = kth_root_mod_gamma("a b", 2, 3)
    assert isinstance(result, RootFailure)
    assert result.level == 1
    assert result.coordinates == {"a": 1, "b": 1}
    assert result.to_dict()["kind"] == "failure"


def test_root_order_independent_of_factor_order():
    """Test that reversing each level's factors still gives a valid root."""
    word = proposition42_word(3, 3)
    forward = kth_root_mod_gamma(word, 3, 3)
    backward = kth_root_mod_gamma(word, 3, 3, reverse_order=True)
    assert forward.verified and backward.verified
    assert same_in_quotient(forward.root_text, backward.root_text, 3)


def test_root_argument_checks():
    """Test invalid orders and classes."""
    with pytest.raises(InputError):
        kth_root_mod_gamma("a", 1, 2)
    with pytest.raises(InputError):
        kth_root_mod_gamma("a", 2, 0)


@pytest.mark.parametrize("r, s, k, depth", [(1, 1, 3, 1), (2, 2, 2, 2), (3, 3, 3, 3), (1, 1, 5, 1)])
def test_obstruction_depth(r, s, k, depth):
    """Test the first class without a k-th root of a^r b^s."""
    result = obstruction_depth(r, s, k, 6)
    assert result.conclusive
    assert result.depth == depth
    assert result.failure.level == depth


def test_obstruction_depth_inconclusive():
    """Test that a genuine power has no finite depth."""
    result = obstruction_depth(2, 4, 2, 1)
    assert not result.conclusive
    assert result.to_dict()["failure"] is None
    with pytest.raises(InputError):
        obstruction_depth(0, 1, 2, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_proposition42_witness(p, n):
    """Test that a^p b^(p^(2^(n-1))) is a p-th power modulo gamma_{n+1}."""
    certificate = proposition42_witness(p, n)
    assert certificate.verified
    assert verify_root(proposition42_word(p, n), certificate.root_text, p, n)


def test_proposition42_witness_class_four():
    """Test the witness for p = 3 in class 4."""
    assert proposition42_witness(3, 4).verified


@pytest.mark.parametrize("n", [1, 2, 3])
def test_immersion_boundary_word(n):
    """Test that the corrected boundary word dies in F / gamma_{n+1}."""
    word = immersion_boundary_word(3, n)
    assert word.trivial
    assert word.to_dict()["root"]["verified"]
    with pytest.raises(InputError):
        immersion_boundary_word(4, n)


def test_commutator_power_expansion():
    """Test the expansion of [x, y^m] in the free group."""
    x, y = parse_word("a b"), parse_word("[a,B] b")
    for m in (1, 2, 3, 5):
        assert commutator_power_expansion(x, y, m)


def test_central_commutator_check():
    """Test [x, y^p] = [x, y]^p modulo gamma_{n+1} for deep enough x and y."""
    check = central_commutator_check(parse_word("[a,b]"), parse_word("a"), 3, 3)
    assert check.holds
    assert (check.depth_x, check.depth_y) == (2, 1)
    with pytest.raises(InputError):
        central_commutator_check(parse_word("a"), parse_word("b"), 3, 3)


@pytest.mark.parametrize("n, p, i", [(2, 2, 0), (3, 2, 0), (3, 3, 0), (3, 2, 1), (3, 3, 1), (4, 2, 1), (4, 2, 2), (4, 3, 2)])
def test_power_center_check_on_random_words(random_word, n, p, i):
    """Test that deep enough powers are central modulo the power subgroups."""
    rng = derive_rng(n * 100 + p * 10 + i, "tests.power_center")
    for _ in range(5):
        x = random_word(rng, 3)
        for _ in range(n - i - 2):
            x = x.commutator(random_word(rng, 3))
        y = random_word(rng, 4)
        check = power_center_check(x, y, p, n, i)
        assert check.holds
        assert check.exponent == p ** (2 ** (i + 1) - 1)


def test_power_center_check_needs_the_full_exponent():
    """Test that a single p-th power is not central one step up."""
    a, b = FreeWord.generators(2)
    assert power_center_check(b, a, 2, 3, 1).holds
    assert not power_center_check(b, a, 2, 3, 1, exponent=2).holds
    assert not power_center_check(b, a, 3, 3, 1, exponent=3).holds


def test_power_center_check_errors():
    """Test argument validation and the depth requirement on x."""
    a, b = FreeWord.generators(2)
    with pytest.raises(InputError):
        power_center_check(a, b, 2, 3, 2)
    with pytest.raises(InputError):
        power_center_check(a, b, 1, 3, 0)
    with pytest.raises(InputError):
        power_center_check(a, b, 2, 4, 1)


def test_power_subgroup_moduli():
    """Test the coefficient moduli and the series test built on them."""
    assert power_subgroup_moduli(4, 2, 1) == {3: 4, 4: 2}
    assert power_subgroup_moduli(3, 3, 2) == {1: 81, 2: 9, 3: 3}
    assert vanishes_modulo_powers(magnus(parse_word("a^4"), 2), 2, 2, 1)
    assert not vanishes_modulo_powers(magnus(parse_word("a^2"), 2), 2, 2, 1)
    assert not vanishes_modulo_powers(magnus(parse_word("[a,b]"), 3), 3, 2, 0)


@pytest.mark.parametrize("text, k, level", [("a b", 2, 1), ("a^2 b^2", 2, 2), ("a^3 b^3", 3, 3)])
def test_root_failure_persists_in_higher_classes(text, k, level):
    """Test that a root failing at some class fails at every larger class at the same level."""
    for n in range(level, 5):
        result = kth_root_mod_gamma(text, k, n)
        assert isinstance(result, RootFailure)
        assert result.level == level


def test_root_failure_is_monotone_on_random_words(random_word):
    """Test that once a square root fails, it keeps failing at the same level."""
    rng = derive_rng(0, "tests.root_failure")
    for _ in range(10):
        word = random_word(rng, 6)
        failed = None
        for n in range(1, 5):
            result = kth_root_mod_gamma(word, 2, n)
            if failed is not None:
                assert isinstance(result, RootFailure)
                assert result.level == failed
            elif isinstance(result, RootFailure):
                failed = result.level
