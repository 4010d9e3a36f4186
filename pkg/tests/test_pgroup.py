"""
Tests for the wreath-type p-groups and non-power certificates.
"""

from itertools import product

import pytest

from vk.core.freegroup import parse_word
from vk.core.pgroup import (
    certify_not_kth_power,
    certify_not_pth_power,
    eval_word,
    group_order,
    is_pth_power_exhaustive,
    iterated_commutator,
    nilpotency_class_bound,
    theta,
    verify_baumslag,
)
from vk.entities.wreath import WreathElement
from vk.exceptions import BudgetExceeded, InputError


def _all_elements(p, j):
    length, modulus = p ** j, p ** (j + 1)
    for vec in product(range(p), repeat=length):
        for shift in range(modulus):
            yield WreathElement(p, j, vec, shift)


def test_group_law():
    """Test associativity, inverses and powers of wreath elements."""
    elements = list(_all_elements(2, 1))
    assert len(elements) == group_order(2, 1) == 16
    for x, y, z in product(elements[::3], repeat=3):
        assert (x * y) * z == x * (y * z)
    for x in elements:
        assert (x * x.inverse()).is_identity()
        assert x ** 5 == x * x * x * x * x
        assert x ** -2 == (x * x).inverse()


def test_element_validation():
    """Test parameter and vector-length checks."""
    with pytest.raises(InputError):
        WreathElement(1, 0)
    with pytest.raises(InputError):
        WreathElement(3, 1, [1, 0])
    with pytest.raises(InputError):
        WreathElement(3, 1) * WreathElement(3, 0)


def test_class_bound():
    """Test that left-normed commutators one longer than the class bound vanish."""
    elements = list(_all_elements(2, 1))
    bound = nilpotency_class_bound(2, 1)
    for triple in product(elements, repeat=bound + 1):
        assert iterated_commutator(triple).is_identity()


@pytest.mark.parametrize("r, s, k, order", [(1, 1, 3, 9), (3, 3, 3, 243), (1, 1, 5, 25), (2, 2, 2, 16)])
def test_certify_not_kth_power(r, s, k, order):
    """Test certificates and the orders of the groups they use."""
    certificate = certify_not_kth_power(r, s, k)
    assert certificate.order == order
    assert certificate.enumerated == order
    assert certificate.image.shift == 0
    assert certificate.image.vec.any()
    assert is_pth_power_exhaustive(certificate.image).root is None


def test_certificate_with_unequal_valuations():
    """Test a^3 b^9 for p = 3, where the group has j = 2."""
    certificate = certify_not_pth_power(3, 3, 9)
    assert certificate.parameters.group_j == 2
    assert certificate.order == 3 ** 12
    assert certificate.enumerated == certificate.order


def test_swapped_theta():
    """Test that the roles of a and b are exchanged when r carries more factors of p."""
    params = theta(3, 9, 3)
    assert params.swapped
    assert (params.i, params.j) == (2, 1)
    image = eval_word(parse_word("a^9 b^3"), [params.image_a, params.image_b])
    assert image.shift == 0 and image.vec.any()


def test_composite_k_uses_smallest_prime():
    """Test that k = 6 is certified through p = 2."""
    certificate = certify_not_kth_power(1, 1, 6)
    assert certificate.p == 2
    assert certificate.k == 6


def test_the_identity_is_a_power():
    """Test that the search finds a root when one exists."""
    identity = WreathElement.identity(3, 1)
    search = is_pth_power_exhaustive(identity)
    assert search.root is not None
    assert search.root ** 3 == identity
    assert search.rejected + search.power_evaluations == search.enumerated


def test_search_counts_every_element_of_a_non_power():
    """Test that rejected shifts and evaluated rows add up to the group order."""
    certificate = certify_not_kth_power(3, 3, 3)
    search = is_pth_power_exhaustive(certificate.image)
    assert search.root is None
    assert search.rejected > 0
    assert search.power_evaluations > 0
    assert search.rejected + search.power_evaluations == group_order(3, 1)
    assert search.enumerated == certificate.enumerated


def test_budget_and_argument_checks():
    """Test the enumeration budget and invalid arguments."""
    with pytest.raises(BudgetExceeded):
        certify_not_kth_power(3, 3, 3, max_order=100)
    with pytest.raises(InputError):
        theta(4, 1, 1)
    with pytest.raises(InputError):
        theta(3, 0, 1)
    with pytest.raises(InputError):
        certify_not_kth_power(1, 1, 1)
    with pytest.raises(InputError):
        eval_word(parse_word("a b"), [WreathElement.identity(3, 0)])


def test_verify_baumslag():
    """Test re-verification and tampering."""
    data = certify_not_kth_power(3, 3, 3).to_dict()
    assert verify_baumslag(data)
    assert not verify_baumslag(dict(data, enumerated=1))
    assert not verify_baumslag(dict(data, k=4))
    with pytest.raises(InputError):
        verify_baumslag({"r": 1})
