"""
Tests for the word grammar, free group operations and Magnus expansions.
"""

import pytest

from vk.core.freegroup import (
    commutator,
    cyclic_reduce,
    invert,
    is_kth_power,
    lcs_depth,
    magnus,
    magnus_of_text,
    modified_boundary_word,
    multiply,
    naive_boundary_word,
    parse_word,
    power,
    remark1_identity,
    remark2_identity,
    substitute,
    trivial_in_gamma_quotient,
)
from vk.entities.words import FreeWord
from vk.exceptions import InputError, WordSyntaxError
from vk.utils.seeding import derive_rng


def test_parse_letters_and_inverses():
    """Test lowercase generators and uppercase inverses."""
    word = parse_word("a b A c")
    assert word.rank == 3
    assert word.to_text() == "a b a^-1 c"
    assert parse_word("a A").is_empty()
    assert parse_word("1").to_text() == "1"


def test_parse_powers_groups_and_commutators():
    """Test exponents, parentheses and brackets."""
    assert parse_word("(ab)^2") == parse_word("a b a b")
    assert parse_word("a^-3") == parse_word("A A A")
    assert parse_word("[a,b]") == parse_word("a b A B")
    assert parse_word("a^0 b") == parse_word("b")


@pytest.mark.parametrize("text", ["a^", "(a b", "[a b]", "a ^ x", "", "a,b"])
def test_parse_errors(text):
    """Test that malformed words raise with a position."""
    with pytest.raises(WordSyntaxError):
        parse_word(text)


def test_parse_rank_checks():
    """Test explicit generator counts."""
    assert parse_word("a", rank=3).rank == 3
    assert parse_word("a").rank == 2
    with pytest.raises(InputError):
        parse_word("c", rank=2)


def test_group_operations():
    """Test products, inverses, powers and commutators."""
    a, b = FreeWord.generators(2)
    assert multiply(a, invert(a)).is_empty()
    assert power(a * b, -1) == invert(b) * invert(a)
    assert commutator(a, b) == parse_word("[a,b]")
    assert cyclic_reduce(parse_word("b a B")) == a
    assert substitute(parse_word("a b"), [b, a]) == parse_word("b a")
    assert parse_word("a^3 B").exponent_sums() == [3, -1]


def test_magnus_expansion():
    """Test Magnus coefficients of generators and commutators."""
    series = magnus(parse_word("a"), 3)
    assert series.to_dict() == {"1": 1, "a": 1}
    inverse = magnus(parse_word("A"), 3).to_dict()
    assert inverse == {"1": 1, "a": -1, "aa": 1, "aaa": -1}
    bracket = magnus(parse_word("[a,b]"), 2).to_dict()
    assert bracket == {"1": 1, "ab": 1, "ba": -1}
    with pytest.raises(InputError):
        magnus(parse_word("a"), 0)


def test_magnus_of_text_matches_expansion():
    """Test lazy evaluation of powers agrees with the expanded word."""
    text = "(ab)^-5 [a^2, B]^3 a^7"
    assert magnus_of_text(text, 4) == magnus(parse_word(text), 4)


def test_lower_central_series_depth():
    """Test depths of generators and iterated commutators."""
    assert lcs_depth(parse_word("a"), 4) == 1
    assert lcs_depth(parse_word("[a,b]"), 4) == 2
    assert lcs_depth(parse_word("[[a,b],a]"), 4) == 3
    assert lcs_depth(parse_word("1"), 4) is None
    assert trivial_in_gamma_quotient(parse_word("[a,b]"), 2)
    assert not trivial_in_gamma_quotient(parse_word("[a,b]"), 3)
    assert trivial_in_gamma_quotient(parse_word("a"), 1)


def test_is_kth_power():
    """Test brute-force roots in the free group."""
    word = parse_word("B (ab)^3 b")
    root = is_kth_power(word, 3)
    assert root is not None
    assert root ** 3 == word
    assert is_kth_power(parse_word("a^3 b^3"), 3) is None
    assert is_kth_power(parse_word("a^2 b^2"), 2) is None
    assert is_kth_power(parse_word("1"), 5).is_empty()
    with pytest.raises(InputError):
        is_kth_power(parse_word("a"), 1)


def test_conjugates_multiply_to_a_cube():
    """Test three conjugates of a and three of b forming a conjugated cube."""
    product_, cube = remark1_identity()
    assert product_ == cube


def test_cube_times_commutators_identity():
    """Test a^3 b^3 as a cube times three commutators."""
    assert remark2_identity().is_empty()


def test_boundary_words_modulo_gamma3():
    """Test that the corrected boundary word dies in F / gamma_3 and the naive one does not."""
    naive = naive_boundary_word(3)
    assert lcs_depth(naive, 4) == 2
    assert not trivial_in_gamma_quotient(naive, 3)
    assert trivial_in_gamma_quotient(modified_boundary_word(), 3)


@pytest.mark.parametrize("text, depth", [("a b", 1), ("[a,b]", 2), ("[[a,b],a]", 3), ("[[[a,b],b],a]", 4)])
def test_power_substitution_preserves_depth(text, depth):
    """Test that a -> a^3, b -> b^5 keeps the lower central series depth."""
    a, b = FreeWord.generators(2)
    word = parse_word(text)
    image = substitute(word, [power(a, 3), power(b, 5)])
    assert lcs_depth(word, 5) == depth
    assert lcs_depth(image, 5) == depth


def test_commutator_depth_adds(random_word):
    """Test that [u, v] lies at least as deep as the sum of the depths of u and v."""
    rng = derive_rng(0, "tests.lcs")
    for _ in range(30):
        u = random_word(rng, 4)
        v = random_word(rng, 4)
        if rng.integers(2):
            u = commutator(u, random_word(rng, 3))
        du, dv = lcs_depth(u, 6), lcs_depth(v, 6)
        depth = lcs_depth(commutator(u, v), 6)
        if depth is not None:
            assert du is not None and dv is not None
            assert depth >= du + dv
