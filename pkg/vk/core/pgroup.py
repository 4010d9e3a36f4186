"""
P-group module for explicit non-power witnesses.

For ``a^r b^s`` and a prime ``p`` the word is mapped into
``G = (Z/p)^(p^j) semidirect Z/p^(j+1)``; the image is not a ``p``-th power
there, which an exhaustive search over ``G`` confirms.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, multiplicity, primefactors

from vk.config import Config
from vk.entities.words import FreeWord
from vk.entities.wreath import WreathElement
from vk.exceptions import BudgetExceeded, InputError, InvariantViolation
from vk.utils.logger import get_logger

logger = get_logger(__name__)

CERTIFICATE_VERSION = 1
CHUNK_ROWS = 1 << 15


def multiply(g: WreathElement, h: WreathElement) -> WreathElement:
    return g * h


def power(g: WreathElement, m: int) -> WreathElement:
    if m < 0:
        raise InputError(f"power expects m >= 0, got {m}")
    return g ** m


def group_order(p: int, j: int) -> int:
    """``p^(p^j + j + 1)``."""
    return p ** (p ** j + j + 1)


@dataclass
class ThetaParameters:
    """Factorisation ``r = p^i m``, ``s = p^j n`` and the generator images."""

    p: int
    r: int
    s: int
    i: int
    j: int
    m: int
    n: int
    swapped: bool
    image_a: WreathElement
    image_b: WreathElement

    @property
    def group_j(self) -> int:
        """Exponent ``j`` of the group, the larger of the two valuations."""
        return self.image_a.j

    @property
    def order(self) -> int:
        return group_order(self.p, self.group_j)

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "r": self.r,
            "s": self.s,
            "i": self.i,
            "j": self.j,
            "m": self.m,
            "n": self.n,
            "swapped": self.swapped,
            "image_a": self.image_a.to_dict(),
            "image_b": self.image_b.to_dict(),
        }


def theta(p: int, r: int, s: int) -> ThetaParameters:
    """
    Build the homomorphism on the generators.

    With ``i <= j`` it sends ``a`` to ``((1, 0, ..., 0), -p^(j-i) n)`` and
    ``b`` to ``((0, ..., 0), m)``. When ``i > j`` the roles of ``a`` and
    ``b`` are exchanged.

    Args:
        p: Prime.
        r: Exponent of ``a``, nonzero.
        s: Exponent of ``b``, nonzero.

    Returns:
        ThetaParameters: The factorisation and both images.
    """
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    if r == 0 or s == 0:
        raise InputError("Exponents r and s must be nonzero")
    i = int(multiplicity(p, abs(r)))
    j = int(multiplicity(p, abs(s)))
    m = r // p ** i
    n = s // p ** j
    swapped = i > j
    if swapped:
        # b carries the basis vector, a only shifts
        image_b = WreathElement.basis(p, i, 0, -p ** (i - j) * m)
        image_a = WreathElement(p, i, None, n)
    else:
        image_a = WreathElement.basis(p, j, 0, -p ** (j - i) * n)
        image_b = WreathElement(p, j, None, m)
    return ThetaParameters(p, r, s, i, j, m, n, swapped, image_a, image_b)


def eval_word(word: FreeWord, assignment: Sequence[WreathElement]) -> WreathElement:
    """Evaluate ``word`` with generator ``g`` sent to ``assignment[g]``."""
    if not assignment:
        raise InputError("Empty assignment")
    if len(assignment) < word.rank:
        raise InputError(f"Assignment covers {len(assignment)} generators, word needs {word.rank}")
    first = assignment[0]
    result = WreathElement.identity(first.p, first.j)
    for gen, exponent in word.syllables:
        result = result * assignment[gen] ** exponent
    return result


@dataclass
class PowerSearch:
    """Outcome of an exhaustive ``p``-th root search."""

    enumerated: int
    power_evaluations: int
    root: Optional[WreathElement]
    rejected: int = 0


def _vectors(p: int, length: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start .. stop-1`` of all vectors in lexicographic order."""
    idx = np.arange(start, stop, dtype=np.int64)
    weights = p ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // weights[None, :]) % p


def is_pth_power_exhaustive(g: WreathElement, max_order: Optional[int] = None) -> PowerSearch:
    """
    Search every ``h`` in the group for ``h^p = g``.

    ``(u, k)^p = (sum_t sigma^(t k) u, p k)``, so shifts with ``p k`` different
    from the target shift are rejected as a block and the rest are checked
    with vectorised powers. Elements are visited lexicographically on
    ``(vec, shift)``; the first root in that order is returned.

    Raises:
        BudgetExceeded: If the group is larger than ``max_order``.
    """
    p, j = g.p, g.j
    order = g.order_of_group
    budget = max_order if max_order is not None else Config().get("pgroup.max_order")
    if order > budget:
        raise BudgetExceeded(f"Group of order {order} exceeds the enumeration budget {budget}; try a smaller prime")

    length = g.length
    modulus = g.modulus
    count_vectors = p ** length
    shifts = [k for k in range(modulus) if (p * k) % modulus == g.shift]
    target = g.vec
    best: Optional[Tuple[int, int]] = None
    evaluations = 0
    rejected = (modulus - len(shifts)) * count_vectors

    for k in shifts:
        for start in range(0, count_vectors, CHUNK_ROWS):
            stop = min(start + CHUNK_ROWS, count_vectors)
            block = _vectors(p, length, start, stop)
            total = np.zeros_like(block)
            for t in range(p):
                total += np.roll(block, (t * k) % length, axis=1)
            evaluations += stop - start
            hits = np.flatnonzero(np.all(total % p == target[None, :], axis=1))
            if hits.size:
                candidate = (start + int(hits[0]), k)
                if best is None or candidate < best:
                    best = candidate
                break

    root = None
    if best is not None:
        root = WreathElement(p, j, _vectors(p, length, best[0], best[0] + 1)[0], best[1])
        if root ** p != g:
            raise InvariantViolation(f"Vectorised power disagrees with multiplication for {root}")
    enumerated = rejected + evaluations
    logger.debug(f"Searched {enumerated} of {order} elements, {evaluations} power evaluations")
    return PowerSearch(enumerated, evaluations, root, rejected)


@dataclass
class BaumslagCertificate:
    """``theta(a^r b^s)`` is not a ``p``-th power, hence ``a^r b^s`` is not a ``k``-th power."""

    r: int
    s: int
    k: int
    p: int
    parameters: ThetaParameters
    image: WreathElement
    enumerated: int
    power_evaluations: int
    version: int = CERTIFICATE_VERSION
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.parameters.order

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": "baumslag",
            "version": self.version,
            "r": self.r,
            "s": self.s,
            "k": self.k,
            "p": self.p,
            "group": {"p": self.p, "j": self.parameters.group_j, "order": self.order},
            "theta": self.parameters.to_dict(),
            "image": self.image.to_dict(),
            "enumerated": self.enumerated,
            "power_evaluations": self.power_evaluations,
        }


def certify_not_pth_power(p: int, r: int, s: int, k: Optional[int] = None,
                          max_order: Optional[int] = None) -> BaumslagCertificate:
    """Certificate for one prime ``p``."""
    params = theta(p, r, s)
    word = FreeWord([(0, r), (1, s)])
    image = eval_word(word, [params.image_a, params.image_b])
    if image.shift != 0 or not image.vec.any():
        raise InvariantViolation(f"theta(a^{r} b^{s}) = {image} is not a nonzero vector with shift 0")
    search = is_pth_power_exhaustive(image, max_order)
    if search.root is not None:
        raise InvariantViolation(f"theta(a^{r} b^{s}) has the {p}-th root {search.root}")
    if search.enumerated != params.order:
        raise InvariantViolation(f"Enumerated {search.enumerated} elements of a group of order {params.order}")
    logger.info(f"a^{r} b^{s} is not a {p}-th power: group of order {params.order}")
    return BaumslagCertificate(r, s, k if k is not None else p, p, params, image,
                               search.enumerated, search.power_evaluations)


def certify_not_kth_power(r: int, s: int, k: int, max_order: Optional[int] = None) -> BaumslagCertificate:
    """
    Certify that ``a^r b^s`` is not a ``k``-th power in any free nilpotent quotient of large class.

    A ``k``-th power is a ``p``-th power for every prime ``p`` dividing
    ``k``; the smallest such prime gives the smallest group.
    """
    if r == 0 or s == 0:
        raise InputError("Exponents r and s must be nonzero")
    if k < 2:
        raise InputError(f"k must be at least 2, got {k}")
    p = min(primefactors(k))
    return certify_not_pth_power(p, r, s, k, max_order)


def verify_baumslag(data: Dict[str, object], max_order: Optional[int] = None) -> bool:
    """Re-run a serialised certificate and compare its claims."""
    try:
        r, s, k, p = (int(data[key]) for key in ("r", "s", "k", "p"))  # type: ignore[call-overload]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed Baumslag certificate: {e}") from e
    if k % p:
        return False
    try:
        fresh = certify_not_pth_power(p, r, s, k, max_order)
    except InvariantViolation:
        return False
    return fresh.to_dict() == data


def nilpotency_class_bound(p: int, j: int) -> int:
    """Class of ``(Z/p)^(p^j) semidirect Z/p^(j+1)``: at most ``p^j``, and at least 1."""
    return max(1, p ** j)


def iterated_commutator(elements: Sequence[WreathElement]) -> WreathElement:
    """Left-normed ``[[x1, x2], x3], ...``."""
    result = elements[0]
    for x in elements[1:]:
        result = result.commutator(x)
    return result
