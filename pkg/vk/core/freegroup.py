"""
Free-group words: parsing, reduction, Magnus expansion and lower central series tests.

Word grammar (whitespace is ignored)::

    expr   := term+
    term   := atom ('^' integer)?
    atom   := letter | '1' | '(' expr ')' | '[' expr ',' expr ']'

Lowercase letters are generators, uppercase letters their inverses, and
``[u,v] = u v u^-1 v^-1``. The lower central series is indexed with
``gamma_1 = F`` and ``gamma_{i+1} = [F, gamma_i]``.
"""

from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Sequence

import pyparsing as pp

from vk.entities.words import GENERATOR_NAMES, FreeWord, MagnusSeries
from vk.exceptions import InputError, WordSyntaxError
from vk.utils.logger import get_logger

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# Expression tree
# ---------------------------------------------------------------------------

class WordExpression:
    """Parsed word expression, evaluated lazily as a word or a Magnus series."""

    def word(self, rank: int) -> FreeWord:
        raise NotImplementedError

    def series(self, degree: int, rank: int) -> MagnusSeries:
        raise NotImplementedError

    def max_generator(self) -> int:
        raise NotImplementedError


@dataclass
class _Letter(WordExpression):
    index: int
    sign: int

    def word(self, rank: int) -> FreeWord:
        return FreeWord([(self.index, self.sign)], rank)

    def series(self, degree: int, rank: int) -> MagnusSeries:
        return MagnusSeries.of_syllable(self.index, self.sign, degree, rank)

    def max_generator(self) -> int:
        return self.index


@dataclass
class _One(WordExpression):
    def word(self, rank: int) -> FreeWord:
        return FreeWord.identity(rank)

    def series(self, degree: int, rank: int) -> MagnusSeries:
        return MagnusSeries.one(degree, rank)

    def max_generator(self) -> int:
        return -1


@dataclass
class _Product(WordExpression):
    factors: List[WordExpression]

    def word(self, rank: int) -> FreeWord:
        result = FreeWord.identity(rank)
        for f in self.factors:
            result = result * f.word(rank)
        return result

    def series(self, degree: int, rank: int) -> MagnusSeries:
        result = MagnusSeries.one(degree, rank)
        for f in self.factors:
            result = result * f.series(degree, rank)
        return result

    def max_generator(self) -> int:
        return max(f.max_generator() for f in self.factors)


@dataclass
class _Power(WordExpression):
    base: WordExpression
    exponent: int

    def word(self, rank: int) -> FreeWord:
        if isinstance(self.base, _Letter):
            return FreeWord([(self.base.index, self.base.sign * self.exponent)], rank)
        return self.base.word(rank) ** self.exponent

    def series(self, degree: int, rank: int) -> MagnusSeries:
        if isinstance(self.base, _Letter):
            return MagnusSeries.of_syllable(self.base.index, self.base.sign * self.exponent, degree, rank)
        return self.base.series(degree, rank) ** self.exponent

    def max_generator(self) -> int:
        return self.base.max_generator()


@dataclass
class _Commutator(WordExpression):
    left: WordExpression
    right: WordExpression

    def word(self, rank: int) -> FreeWord:
        return self.left.word(rank).commutator(self.right.word(rank))

    def series(self, degree: int, rank: int) -> MagnusSeries:
        u = self.left.series(degree, rank)
        v = self.right.series(degree, rank)
        return u * v * u.inverse() * v.inverse()

    def max_generator(self) -> int:
        return max(self.left.max_generator(), self.right.max_generator())


def _letter_action(tokens: pp.ParseResults) -> List[WordExpression]:
    ch = tokens[0]
    index = GENERATOR_NAMES.index(ch.lower())
    return [_Letter(index, 1 if ch.islower() else -1)]


def _term_action(tokens: pp.ParseResults) -> List[WordExpression]:
    if len(tokens) == 1:
        return [tokens[0]]
    return [_Power(tokens[0], tokens[1])]


def _build_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    letter = pp.Char(pp.alphas).set_parse_action(_letter_action)
    one = pp.Literal("1").set_parse_action(lambda: [_One()])
    integer = pp.Regex(r"[+-]?\s*\d+").set_parse_action(lambda t: [int(t[0].replace(" ", ""))])
    group = pp.Suppress("(") + expr + pp.Suppress(")")
    commutator = (pp.Suppress("[") + expr + pp.Suppress(",") + expr + pp.Suppress("]")).set_parse_action(
        lambda t: [_Commutator(t[0], t[1])]
    )
    atom = letter | one | group | commutator
    term = (atom + pp.Optional(pp.Suppress("^") + integer)).set_parse_action(_term_action)
    expr <<= pp.OneOrMore(term).set_parse_action(lambda t: [_Product(list(t))])
    return expr


_GRAMMAR = _build_grammar()


def parse_expression(text: str) -> WordExpression:
    """
    Parse a word expression without expanding it.

    Raises:
        WordSyntaxError: On malformed input, with the failing position.
    """
    try:
        return _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise WordSyntaxError(f"Cannot parse word {text!r}: {e.msg}", e.loc) from e


def _resolve_rank(expression: WordExpression, rank: Optional[int]) -> int:
    needed = expression.max_generator() + 1
    if rank is None:
        return max(2, needed)
    if needed > rank:
        raise InputError(f"Word uses {needed} generators but only {rank} were requested")
    return rank


def parse_word(text: str, rank: Optional[int] = None) -> FreeWord:
    """
    Parse and reduce a word.

    Args:
        text: Word in the grammar above, e.g. ``"(ab)^-3 a^3 b^3"``.
        rank: Generator count; defaults to the letters used (at least 2).

    Returns:
        FreeWord: The freely reduced word.
    """
    expression = parse_expression(text)
    return expression.word(_resolve_rank(expression, rank))


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------

def reduce(word: FreeWord) -> FreeWord:
    return FreeWord(word.syllables, word.rank)


def cyclic_reduce(word: FreeWord) -> FreeWord:
    return word.cyclic_reduce()


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v


def invert(word: FreeWord) -> FreeWord:
    return word.inverse()


def power(word: FreeWord, n: int) -> FreeWord:
    return word ** n


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return u.commutator(v)


def substitute(word: FreeWord, images: Sequence[FreeWord]) -> FreeWord:
    """Apply the endomorphism sending generator ``i`` to ``images[i]``."""
    return word.substitute(images)


# ---------------------------------------------------------------------------
# Magnus expansion and the lower central series
# ---------------------------------------------------------------------------

def magnus(word: FreeWord, degree: int) -> MagnusSeries:
    """
    Magnus expansion ``g -> 1 + t_g`` truncated above ``degree``.

    Each syllable ``g^e`` expands to ``(1 + t_g)^e`` directly, so large
    exponents cost nothing extra.
    """
    if degree < 1:
        raise InputError(f"Magnus truncation degree must be at least 1, got {degree}")
    result = MagnusSeries.one(degree, word.rank)
    for gen, exponent in word.syllables:
        result = result * MagnusSeries.of_syllable(gen, exponent, degree, word.rank)
    return result


def magnus_of_text(text: str, degree: int, rank: Optional[int] = None) -> MagnusSeries:
    """Magnus expansion of a parsed expression, evaluated without expanding powers."""
    expression = parse_expression(text)
    return expression.series(degree, _resolve_rank(expression, rank))


def trivial_in_gamma_quotient(word: FreeWord, n: int) -> bool:
    """True when ``word`` lies in gamma_n, i.e. is trivial in ``F / gamma_n``."""
    if n < 1:
        raise InputError(f"Nilpotent quotient index must be at least 1, got {n}")
    if n == 1:
        return True
    return magnus(word, n - 1).is_one_below(n)


def lcs_depth(word: FreeWord, max_degree: int) -> Optional[int]:
    """
    Largest ``n`` with ``word`` in gamma_n, or None when it exceeds ``max_degree``.

    This is the lowest nonzero degree of ``magnus(word) - 1``.
    """
    if max_degree < 1:
        raise InputError(f"max_degree must be at least 1, got {max_degree}")
    return magnus(word, max_degree).lowest_nonconstant_degree()


# ---------------------------------------------------------------------------
# Powers in the free group
# ---------------------------------------------------------------------------

def _reduced_words(length: int, rank: int) -> Iterator[FreeWord]:
    letters = [(g, s) for g in range(rank) for s in (1, -1)]
    for choice in product(letters, repeat=length):
        if any(a[0] == b[0] and a[1] == -b[1] for a, b in zip(choice, choice[1:])):
            continue
        yield FreeWord(choice, rank)


def _split_conjugator(word: FreeWord):
    """Write ``word = c u c^-1`` with ``u`` cyclically reduced."""
    letters = list(word.letters())
    peel = 0
    while peel < len(letters) - 1 - peel:
        first, last = letters[peel], letters[len(letters) - 1 - peel]
        if first[0] == last[0] and first[1] == -last[1]:
            peel += 1
        else:
            break
    conjugator = FreeWord(letters[:peel], word.rank)
    core = FreeWord(letters[peel:len(letters) - peel], word.rank)
    return conjugator, core


def is_kth_power(word: FreeWord, k: int) -> Optional[FreeWord]:
    """
    Brute-force root search in the free group.

    Writes ``word = c u c^-1`` with ``u`` cyclically reduced; a ``k``-th root
    of ``u`` must be cyclically reduced of length ``|u| / k``, and every
    reduced word of that length is tried.

    Returns:
        Optional[FreeWord]: A root ``x`` with ``x^k == word``, or None.
    """
    if k < 2:
        raise InputError(f"Power test needs k >= 2, got {k}")
    if word.is_empty():
        return FreeWord.identity(word.rank)
    conjugator, core = _split_conjugator(word)
    n = core.length()
    if n % k:
        return None
    for candidate in _reduced_words(n // k, word.rank):
        if candidate ** k == core:
            root = candidate.conjugate(conjugator)
            logger.debug(f"Found root {root} of {word}")
            return root
    return None


# ---------------------------------------------------------------------------
# Identities used in the construction
# ---------------------------------------------------------------------------

def remark1_identity() -> tuple:
    """
    Three conjugates of ``a`` times three conjugates of ``b`` that form a cube.

    Returns:
        tuple: ``(product, conjugated_cube)``, equal as reduced words.
    """
    product_ = parse_word("(a (B a b) (B a b)) ((a b A) (a^2 b a^-2) (a b A))")
    cube = parse_word("(a B a) (a b)^3 (a B a)^-1")
    return product_, cube


def remark2_identity() -> FreeWord:
    """``a^3 b^3`` times the inverse of its factorisation as a cube times three commutators."""
    return parse_word("a^3 b^3 ((ab)^3 (ab)^-1 ([(ab)^-1,[B,a]] [B,a] [b^-2,a]) (ab))^-1")


def naive_boundary_word(k: int = 3) -> FreeWord:
    """``(ab)^-k a^k b^k``, nontrivial in ``F / gamma_3``."""
    return parse_word(f"(ab)^-{k} a^{k} b^{k}")


def modified_boundary_word() -> FreeWord:
    """The boundary word after changing the map on the singular circle; trivial in ``F / gamma_3``."""
    return parse_word("((ab)^-1 [B,a]^-1)^3 a^3 b^3")
