"""
Nilpotent module for constructive k-th roots in free nilpotent quotients.

Words are taken modulo ``gamma_{n+1}`` of the free group, so ``class n``
means the quotient ``F / gamma_{n+1}``. Each level ``gamma_d / gamma_{d+1}``
is coordinatised by basic commutators indexed by Lyndon words.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import divisors, mobius

from vk.core.freegroup import magnus, magnus_of_text
from vk.entities.words import GENERATOR_NAMES, FreeWord, MagnusSeries, Monomial
from vk.exceptions import InputError, InvariantViolation
from vk.utils.logger import get_logger

logger = get_logger(__name__)

LieElement = Dict[Monomial, int]


# ---------------------------------------------------------------------------
# Lyndon basis
# ---------------------------------------------------------------------------

def witt_count(g: int, d: int) -> int:
    """Number of Lyndon words of length ``d`` over ``g`` letters."""
    return sum(int(mobius(e)) * g ** (d // e) for e in divisors(d)) // d


def is_lyndon(word: Sequence[int]) -> bool:
    """A nonempty word strictly smaller than each of its proper suffixes."""
    w = tuple(word)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def _duval(g: int, d: int) -> List[Tuple[int, ...]]:
    """All Lyndon words of length at most ``d`` in lexicographic order."""
    words: List[Tuple[int, ...]] = []
    w = [-1]
    while w:
        w[-1] += 1
        words.append(tuple(w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == g - 1:
            w.pop()
    return words


def standard_factorization(word: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split a Lyndon word as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    w = tuple(word)
    if len(w) < 2:
        raise InputError(f"Standard factorization needs length >= 2, got {w}")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise InvariantViolation(f"No Lyndon suffix found for {w}")


def lie_bracket(p: LieElement, q: LieElement) -> LieElement:
    """``pq - qp`` for homogeneous noncommutative polynomials."""
    result: LieElement = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            result[m1 + m2] = result.get(m1 + m2, 0) + c1 * c2
            result[m2 + m1] = result.get(m2 + m1, 0) - c1 * c2
    return {m: c for m, c in result.items() if c}


@dataclass(frozen=True)
class BasicCommutator:
    """A Lyndon word with its bracketing as text, group word and Lie polynomial."""

    letters: Tuple[int, ...]
    text: str
    word: FreeWord
    polynomial: Tuple[Tuple[Monomial, int], ...]

    @property
    def degree(self) -> int:
        return len(self.letters)

    @property
    def name(self) -> str:
        return "".join(GENERATOR_NAMES[g] for g in self.letters)

    def lie_polynomial(self) -> LieElement:
        return dict(self.polynomial)

    def series(self, degree: int) -> MagnusSeries:
        return _bracket_series(self.letters, self.word.rank, degree)


@lru_cache(maxsize=None)
def basic_commutator(letters: Tuple[int, ...], rank: int) -> BasicCommutator:
    """Standard bracketing of a Lyndon word."""
    if not is_lyndon(letters):
        raise InputError(f"{letters} is not a Lyndon word")
    if len(letters) == 1:
        g = letters[0]
        return BasicCommutator(letters, GENERATOR_NAMES[g], FreeWord.generator(g, rank), (((g,), 1),))
    u, v = standard_factorization(letters)
    left, right = basic_commutator(u, rank), basic_commutator(v, rank)
    polynomial = lie_bracket(left.lie_polynomial(), right.lie_polynomial())
    return BasicCommutator(
        letters,
        f"[{left.text},{right.text}]",
        left.word.commutator(right.word),
        tuple(sorted(polynomial.items())),
    )


@lru_cache(maxsize=None)
def _bracket_series(letters: Tuple[int, ...], rank: int, degree: int) -> MagnusSeries:
    if len(letters) == 1:
        return MagnusSeries.of_syllable(letters[0], 1, degree, rank)
    u, v = standard_factorization(letters)
    x = _bracket_series(u, rank, degree)
    y = _bracket_series(v, rank, degree)
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class LyndonBasisLevel:
    """Basic commutators of one degree, sorted lexicographically."""

    degree: int
    rank: int
    elements: Tuple[BasicCommutator, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def names(self) -> List[str]:
        return [e.name for e in self.elements]


@lru_cache(maxsize=None)
def lyndon_words(g: int, d: int) -> LyndonBasisLevel:
    """
    Basis of ``gamma_d / gamma_{d+1}`` of the free group on ``g`` generators.

    Args:
        g: Number of generators.
        d: Degree.

    Returns:
        LyndonBasisLevel: Lyndon words of length ``d`` with their bracketings.
    """
    if d < 1:
        raise InputError(f"Degree must be at least 1, got {d}")
    if not 1 <= g <= len(GENERATOR_NAMES):
        raise InputError(f"Unsupported generator count {g}")
    words = [w for w in _duval(g, d) if len(w) == d]
    if len(words) != witt_count(g, d):
        raise InvariantViolation(f"Found {len(words)} Lyndon words of length {d}, expected {witt_count(g, d)}")
    return LyndonBasisLevel(d, g, tuple(basic_commutator(w, g) for w in words))


def lie_decompose(level: LyndonBasisLevel, component: LieElement) -> List[int]:
    """
    Coordinates of a homogeneous Lie element in the basic commutator basis.

    The Lie polynomial of a Lyndon word ``w`` is ``w`` plus lexicographically
    larger monomials, so back-substitution in increasing order is exact.

    Args:
        level: Basis of the component's degree.
        component: Degree-``d`` coefficients, e.g. a Magnus homogeneous part.

    Returns:
        List[int]: One coordinate per basis element.

    Raises:
        InvariantViolation: If the component is not a Lie element.
    """
    residual = {m: c for m, c in component.items() if c}
    for m in residual:
        if len(m) != level.degree:
            raise InputError(f"Monomial {m} has degree {len(m)}, expected {level.degree}")
    coordinates: List[int] = []
    for element in level.elements:
        c = residual.get(element.letters, 0)
        coordinates.append(c)
        if c:
            for m, coeff in element.polynomial:
                value = residual.get(m, 0) - c * coeff
                if value:
                    residual[m] = value
                else:
                    residual.pop(m, None)
    if residual:
        raise InvariantViolation(f"Degree-{level.degree} component is not a Lie element: {residual}")
    return coordinates


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

@dataclass
class LevelRecord:
    degree: int
    coordinates: Dict[str, int]

    def to_dict(self) -> Dict[str, object]:
        return {"degree": self.degree, "coordinates": dict(self.coordinates)}


def _factor_text(text: str, exponent: int) -> str:
    return f"({text})^{exponent}"


@dataclass
class RootCertificate:
    """A word ``w`` with ``w^k = x`` modulo ``gamma_{n+1}``."""

    word: str
    k: int
    n: int
    factors: List[Tuple[str, int]]
    levels: List[LevelRecord] = field(default_factory=list)
    verified: bool = False

    succeeded = True

    @property
    def root_text(self) -> str:
        """The root in word syntax, one ``(commutator)^exponent`` per factor."""
        parts = [_factor_text(t, e) for t, e in self.factors if e]
        return " ".join(parts) if parts else "1"

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": "root",
            "word": self.word,
            "k": self.k,
            "n": self.n,
            "root": self.root_text,
            "factors": [[t, e] for t, e in self.factors],
            "levels": [lv.to_dict() for lv in self.levels],
            "verified": self.verified,
        }


@dataclass
class RootFailure:
    """No ``k``-th root exists modulo ``gamma_{level+1}``."""

    word: str
    k: int
    n: int
    level: int
    coordinates: Dict[str, int]

    succeeded = False

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": "failure",
            "word": self.word,
            "k": self.k,
            "n": self.n,
            "level": self.level,
            "coordinates": dict(self.coordinates),
        }


RootResult = Union[RootCertificate, RootFailure]


def _target(x: Union[FreeWord, str], degree: int) -> Tuple[str, MagnusSeries]:
    if isinstance(x, FreeWord):
        return x.to_text(), magnus(x, degree)
    return x, magnus_of_text(x, degree)


def kth_root_mod_gamma(x: Union[FreeWord, str], k: int, n: int, reverse_order: bool = False) -> RootResult:
    """
    Find ``w`` with ``w^k = x`` in ``F / gamma_{n+1}``, level by level.

    Starting from the abelian root, each level ``d`` looks at the discrepancy
    ``w^-k x``, which lies in ``gamma_d``, and decomposes its degree-``d``
    Magnus part. Roots in torsion-free nilpotent groups are unique, so a
    coordinate not divisible by ``k`` means no root exists at class ``d``.

    Args:
        x: Word, or word text evaluated without expanding powers.
        k: Root order, at least 2.
        n: Nilpotency class, at least 1.
        reverse_order: Append the factors of each level in reverse order.

    Returns:
        RootCertificate or RootFailure.
    """
    if k < 2:
        raise InputError(f"Root order must be at least 2, got {k}")
    if n < 1:
        raise InputError(f"Nilpotency class must be at least 1, got {n}")
    text, target = _target(x, n)
    rank = target.rank

    factors: List[Tuple[BasicCommutator, int]] = []
    levels: List[LevelRecord] = []
    root = MagnusSeries.one(n, rank)

    for d in range(1, n + 1):
        level = lyndon_words(rank, d)
        discrepancy = root.inverse() ** k * target
        if not discrepancy.is_one_below(d):
            raise InvariantViolation(f"Discrepancy of {text!r} left gamma_{d} after lifting")
        coordinates = lie_decompose(level, discrepancy.homogeneous_part(d))
        named = {e.text: c for e, c in zip(level.elements, coordinates) if c}
        if any(c % k for c in coordinates):
            logger.info(f"{text!r} has no {k}-th root modulo gamma_{d + 1}")
            return RootFailure(text, k, n, d, named)
        levels.append(LevelRecord(d, named))
        step = [(e, c // k) for e, c in zip(level.elements, coordinates) if c]
        if reverse_order:
            step.reverse()
        for element, exponent in step:
            factors.append((element, exponent))
            root = root * element.series(n) ** exponent
        logger.debug(f"Level {d}: {len(step)} factors")

    certificate = RootCertificate(text, k, n, [(e.text, c) for e, c in factors], levels)
    certificate.verified = verify_certificate(certificate)
    if not certificate.verified:
        raise InvariantViolation(f"Root of {text!r} failed re-verification")
    return certificate


def verify_root(word: str, root: str, k: int, n: int) -> bool:
    """Check ``root^k = word`` in ``F / gamma_{n+1}`` from the texts alone."""
    target = magnus_of_text(word, n)
    series = magnus_of_text(root, n, target.rank)
    return (series ** k * target.inverse()).is_one_below(n + 1)


def verify_certificate(certificate: RootCertificate) -> bool:
    """Re-parse the root text and check ``w^k x^-1`` through degree ``n``."""
    return verify_root(certificate.word, certificate.root_text, certificate.k, certificate.n)


def same_in_quotient(u: Union[FreeWord, str], v: Union[FreeWord, str], n: int) -> bool:
    """True when ``u`` and ``v`` agree in ``F / gamma_{n+1}``."""
    _, su = _target(u, n)
    _, sv = _target(v, n)
    return (su * sv.inverse()).is_one_below(n + 1)


def proposition42_word(p: int, n: int) -> str:
    """``a^p b^(p^(2^(n-1)))``."""
    return f"a^{p} b^{p ** (2 ** (n - 1))}"


def proposition42_witness(p: int, n: int) -> RootCertificate:
    """
    Root of ``a^p b^(p^(2^(n-1)))`` modulo ``gamma_{n+1}``.

    Such a root exists in every class-``n`` nilpotent group, so a failure
    here is an internal error.
    """
    if p < 2 or n < 1:
        raise InputError(f"Need p >= 2 and n >= 1, got p={p}, n={n}")
    result = kth_root_mod_gamma(proposition42_word(p, n), p, n)
    if not isinstance(result, RootCertificate):
        raise InvariantViolation(f"No {p}-th root of {proposition42_word(p, n)} at level {result.level}")
    return result


@dataclass
class BoundaryWord:
    """``w^k a^k b^K`` with ``w`` the inverse root, and its triviality checks."""

    k: int
    n: int
    text: str
    root: RootCertificate
    trivial: bool
    trivial_next_class: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "n": self.n,
            "word": self.text,
            "root": self.root.to_dict(),
            "trivial": self.trivial,
            "trivial_next_class": self.trivial_next_class,
        }


def boundary_word_text(root_text: str, k: int, n: int) -> str:
    """``(root)^-k a^k b^(k^(2^(n-1)))`` in word syntax."""
    return f"({root_text})^-{k} {proposition42_word(k, n)}"


def immersion_boundary_word(k: int, n: int) -> BoundaryWord:
    """
    Boundary word of the disk attached along ``alpha^k`` and ``beta``.

    With ``r`` the root of ``a^k b^(k^(2^(n-1)))``, the singular circle is
    sent to ``r^-1`` so that ``(r^-1)^k a^k b^K`` dies in ``F / gamma_{n+1}``.
    Also reports whether the same word dies one class further.
    """
    if k < 3 or k % 2 == 0:
        raise InputError(f"Boundary words are built for odd k >= 3, got {k}")
    root = proposition42_witness(k, n)
    text = boundary_word_text(root.root_text, k, n)
    trivial = magnus_of_text(text, n).is_one_below(n + 1)
    if not trivial:
        raise InvariantViolation(f"Boundary word for k={k}, n={n} survives in F / gamma_{n + 1}")
    trivial_next = magnus_of_text(text, n + 1).is_one_below(n + 2)
    return BoundaryWord(k, n, text, root, trivial, trivial_next)


@dataclass
class DepthResult:
    r: int
    s: int
    k: int
    max_class: int
    depth: Optional[int]
    failure: Optional[RootFailure]

    @property
    def conclusive(self) -> bool:
        return self.depth is not None

    def to_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "s": self.s,
            "k": self.k,
            "max_class": self.max_class,
            "depth": self.depth,
            "failure": self.failure.to_dict() if self.failure else None,
        }


def obstruction_depth(r: int, s: int, k: int, max_class: int) -> DepthResult:
    """Smallest class ``n <= max_class`` in which ``a^r b^s`` has no ``k``-th root."""
    if r == 0 or s == 0:
        raise InputError("Exponents r and s must be nonzero")
    if k < 2:
        raise InputError(f"Root order must be at least 2, got {k}")
    if max_class < 1:
        raise InputError(f"max_class must be at least 1, got {max_class}")
    word = f"a^{r} b^{s}"
    for n in range(1, max_class + 1):
        result = kth_root_mod_gamma(word, k, n)
        if isinstance(result, RootFailure):
            return DepthResult(r, s, k, max_class, n, result)
    logger.info(f"{word} has a {k}-th root in every class up to {max_class}")
    return DepthResult(r, s, k, max_class, None, None)


# ---------------------------------------------------------------------------
# Commutators with powers
# ---------------------------------------------------------------------------

def commutator_power_expansion(x: FreeWord, y: FreeWord, m: int) -> bool:
    """Check ``[x, y^m] = ([x,y] y)^m y^-m`` in the free group."""
    return x.commutator(y ** m) == (x.commutator(y) * y) ** m * y ** (-m)


@dataclass
class CentralCommutatorCheck:
    depth_x: Optional[int]
    depth_y: Optional[int]
    p: int
    n: int
    holds: bool


def central_commutator_check(x: FreeWord, y: FreeWord, p: int, n: int) -> CentralCommutatorCheck:
    """
    For ``x`` in ``gamma_i`` and ``y`` in ``gamma_j`` with ``i + j >= n``,
    check ``[x, y^p] = [x, y]^p`` modulo ``gamma_{n+1}``.

    So ``gamma_i`` commutes with the ``p``-th powers of ``gamma_{n-i}`` once
    the ``p``-th powers of ``gamma_n`` are factored out.
    """
    depth_x = magnus(x, n).lowest_nonconstant_degree()
    depth_y = magnus(y, n).lowest_nonconstant_degree()
    if depth_x is not None and depth_y is not None and depth_x + depth_y < n:
        raise InputError(f"Need depths summing to at least {n}, got {depth_x} + {depth_y}")
    if not commutator_power_expansion(x, y, p):
        raise InvariantViolation("Commutator power expansion failed in the free group")
    holds = same_in_quotient(x.commutator(y ** p), x.commutator(y) ** p, n)
    return CentralCommutatorCheck(depth_x, depth_y, p, n, holds)



def power_subgroup_moduli(n: int, p: int, i: int) -> Dict[int, int]:
    """
    Coefficient moduli that kill ``gamma_n^p gamma_{n-1}^(p^2) ... gamma_{n-i}^(p^(2^i))``.

    Degree ``d`` coefficients are taken modulo ``p^(2^(n-d))`` for
    ``n - i <= d <= n``; lower degrees are kept exactly. The moduli shrink
    with the degree, so they cut out a two-sided ideal of the truncated
    series ring and every listed power subgroup maps into ``1 + ideal``.
    """
    return {d: p ** (2 ** (n - d)) for d in range(max(1, n - i), n + 1)}


def vanishes_modulo_powers(series: MagnusSeries, n: int, p: int, i: int) -> bool:
    """True when ``series`` is 1 modulo ``gamma_{n+1}`` and the power subgroups above."""
    moduli = power_subgroup_moduli(n, p, i)
    for monomial, c in series.coefficients.items():
        if not monomial:
            if c != 1:
                return False
            continue
        modulus = moduli.get(len(monomial))
        if modulus is None or c % modulus:
            return False
    return True


@dataclass
class PowerCenterCheck:
    n: int
    p: int
    i: int
    exponent: int
    depth_x: Optional[int]
    holds: bool


def power_center_check(x: FreeWord, y: FreeWord, p: int, n: int, i: int,
                       exponent: Optional[int] = None) -> PowerCenterCheck:
    """
    Check that ``[y, x^e]`` dies in ``F / gamma_{n+1}`` once the power
    subgroups ``gamma_{n-l}^(p^(2^l))``, ``l <= i``, are factored out.

    ``x`` must lie in ``gamma_{n-i-1}``; the default exponent is
    ``p^(2^(i+1) - 1)``, for which ``gamma_{n-i-1}^e`` is central there.
    The commutator is expanded as ``([y,x] x)^e x^-e``.
    """
    if p < 2 or i < 0 or n - i - 1 < 1:
        raise InputError(f"Need p >= 2 and 0 <= i <= n - 2, got p={p}, n={n}, i={i}")
    e = exponent if exponent is not None else p ** (2 ** (i + 1) - 1)
    mx = magnus(x, n)
    depth_x = mx.lowest_nonconstant_degree()
    if depth_x is not None and depth_x < n - i - 1:
        raise InputError(f"x must lie in gamma_{n - i - 1}, its depth is {depth_x}")
    my = magnus(y, n)
    driven = (magnus(y.commutator(x), n) * mx) ** e * mx ** (-e)
    direct = my * mx ** e * my.inverse() * mx ** (-e)
    if driven != direct:
        raise InvariantViolation("Commutator power expansion disagrees with the direct commutator")
    return PowerCenterCheck(n, p, i, e, depth_x, vanishes_modulo_powers(direct, n, p, i))
