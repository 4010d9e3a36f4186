"""
FreeWord and MagnusSeries - Elements of free groups and their Magnus expansions.
"""

from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from vk.exceptions import InputError

GENERATOR_NAMES = "abcdefghijklmnopqrstuvwxyz"

Syllable = Tuple[int, int]
Monomial = Tuple[int, ...]


def _reduce_syllables(syllables: Sequence[Syllable]) -> List[Syllable]:
    word: List[Syllable] = []
    for gen, power in syllables:
        if not power:
            continue
        if word and word[-1][0] == gen:
            merged = word[-1][1] + power
            if merged:
                word[-1] = (gen, merged)
            else:
                word.pop()
        else:
            word.append((gen, power))
    return word


class FreeWord:
    """
    A reduced word in the free group on ``rank`` generators.

    Stored in syllable form ``((g1, e1), (g2, e2), ...)`` with adjacent
    generators distinct and no zero exponents, so large powers stay compact.
    """

    __slots__ = ("syllables", "rank")

    def __init__(self, syllables: Sequence[Syllable] = (), rank: int = 2):
        if not 1 <= rank <= len(GENERATOR_NAMES):
            raise InputError(f"Unsupported generator count {rank}")
        for gen, _ in syllables:
            if not 0 <= gen < rank:
                raise InputError(f"Generator index {gen} outside rank {rank}")
        self.syllables: Tuple[Syllable, ...] = tuple(_reduce_syllables(syllables))
        self.rank = rank

    @classmethod
    def identity(cls, rank: int = 2) -> "FreeWord":
        return cls((), rank)

    @classmethod
    def generator(cls, index: int, rank: int = 2) -> "FreeWord":
        return cls(((index, 1),), rank)

    @classmethod
    def generators(cls, rank: int = 2) -> List["FreeWord"]:
        return [cls.generator(i, rank) for i in range(rank)]

    @classmethod
    def from_letters(cls, letters: Sequence[Syllable], rank: int = 2) -> "FreeWord":
        """Build from single letters ``(gen, +-1)``."""
        return cls(letters, rank)

    def _check(self, other: "FreeWord") -> None:
        if self.rank != other.rank:
            raise InputError(f"Words over {self.rank} and {other.rank} generators do not mix")

    def is_empty(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> Iterator[Syllable]:
        for gen, power in self.syllables:
            sign = 1 if power > 0 else -1
            for _ in range(abs(power)):
                yield (gen, sign)

    def exponent_sums(self) -> List[int]:
        sums = [0] * self.rank
        for gen, power in self.syllables:
            sums[gen] += power
        return sums

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        self._check(other)
        return FreeWord(self.syllables + other.syllables, self.rank)

    def inverse(self) -> "FreeWord":
        return FreeWord([(g, -e) for g, e in reversed(self.syllables)], self.rank)

    def __invert__(self) -> "FreeWord":
        return self.inverse()

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inverse() ** (-n)
        result = FreeWord.identity(self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def commutator(self, other: "FreeWord") -> "FreeWord":
        """``[self, other] = self other self^-1 other^-1``."""
        return self * other * self.inverse() * other.inverse()

    def conjugate(self, by: "FreeWord") -> "FreeWord":
        """``by self by^-1``."""
        return by * self * by.inverse()

    def cyclic_reduce(self) -> "FreeWord":
        """Cancel letters between the two ends of the word."""
        syl = list(self.syllables)
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            gen = syl[0][0]
            merged = syl[0][1] + syl[-1][1]
            inner = syl[1:-1]
            if merged:
                # keep the merged syllable at the front; the result is a cyclic conjugate
                syl = [(gen, merged)] + inner
                break
            syl = inner
        return FreeWord(syl, self.rank)

    def substitute(self, images: Sequence["FreeWord"]) -> "FreeWord":
        """Apply the endomorphism sending generator ``i`` to ``images[i]``."""
        if len(images) != self.rank:
            raise InputError(f"Need {self.rank} images, got {len(images)}")
        target_rank = images[0].rank if images else self.rank
        result = FreeWord.identity(target_rank)
        for gen, power in self.syllables:
            result = result * images[gen] ** power
        return result

    def to_text(self) -> str:
        """Render in the word grammar, e.g. ``a^3 B c``."""
        if not self.syllables:
            return "1"
        parts = []
        for gen, power in self.syllables:
            name = GENERATOR_NAMES[gen]
            parts.append(name if power == 1 else f"{name}^{power}")
        return " ".join(parts)

    def to_dict(self) -> Dict[str, object]:
        return {"rank": self.rank, "syllables": [list(s) for s in self.syllables], "text": self.to_text()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.rank == other.rank and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash((self.rank, self.syllables))

    def __len__(self) -> int:
        return self.length()

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"FreeWord({self.to_text()!r}, rank={self.rank})"


def binomial(e: int, i: int) -> int:
    """Generalised binomial coefficient ``e (e-1) ... (e-i+1) / i!`` for any integer ``e``."""
    numerator = 1
    for j in range(i):
        numerator *= e - j
    return numerator // factorial(i)


class MagnusSeries:
    """
    Truncated noncommutative power series with integer coefficients.

    Monomials are tuples of generator indices; the empty tuple is the
    constant term. Everything of degree above ``degree`` is discarded.
    """

    __slots__ = ("degree", "rank", "coefficients")

    def __init__(self, degree: int, rank: int = 2, coefficients: Optional[Dict[Monomial, int]] = None):
        if degree < 0:
            raise InputError(f"Truncation degree must be nonnegative, got {degree}")
        self.degree = degree
        self.rank = rank
        self.coefficients: Dict[Monomial, int] = {
            m: c for m, c in (coefficients or {}).items() if c and len(m) <= degree
        }

    @classmethod
    def one(cls, degree: int, rank: int = 2) -> "MagnusSeries":
        return cls(degree, rank, {(): 1})

    @classmethod
    def of_syllable(cls, gen: int, power: int, degree: int, rank: int = 2) -> "MagnusSeries":
        """Image of ``g^power``, namely ``(1 + t_g)^power``."""
        return cls(degree, rank, {(gen,) * i: binomial(power, i) for i in range(degree + 1)})

    def _check(self, other: "MagnusSeries") -> None:
        if (self.degree, self.rank) != (other.degree, other.rank):
            raise InputError("Magnus series with different truncation or rank")

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        self._check(other)
        product: Dict[Monomial, int] = {}
        for m1, c1 in self.coefficients.items():
            room = self.degree - len(m1)
            for m2, c2 in other.coefficients.items():
                if len(m2) <= room:
                    key = m1 + m2
                    product[key] = product.get(key, 0) + c1 * c2
        return MagnusSeries(self.degree, self.rank, product)

    def __add__(self, other: "MagnusSeries") -> "MagnusSeries":
        self._check(other)
        total = dict(self.coefficients)
        for m, c in other.coefficients.items():
            total[m] = total.get(m, 0) + c
        return MagnusSeries(self.degree, self.rank, total)

    def __neg__(self) -> "MagnusSeries":
        return MagnusSeries(self.degree, self.rank, {m: -c for m, c in self.coefficients.items()})

    def __sub__(self, other: "MagnusSeries") -> "MagnusSeries":
        return self + (-other)

    def __pow__(self, n: int) -> "MagnusSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = MagnusSeries.one(self.degree, self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "MagnusSeries":
        """Inverse of a series with constant term 1, via the geometric series."""
        if self.coefficients.get((), 0) != 1:
            raise InputError("Only series with constant term 1 are inverted")
        x = self - MagnusSeries.one(self.degree, self.rank)
        minus_x = -x
        term = MagnusSeries.one(self.degree, self.rank)
        total = MagnusSeries.one(self.degree, self.rank)
        for _ in range(self.degree):
            term = term * minus_x
            total = total + term
        return total

    def homogeneous_part(self, d: int) -> Dict[Monomial, int]:
        return {m: c for m, c in self.coefficients.items() if len(m) == d}

    def lowest_nonconstant_degree(self) -> Optional[int]:
        """Lowest degree ``d >= 1`` with a nonzero coefficient, or None."""
        degrees = [len(m) for m in self.coefficients if m]
        return min(degrees) if degrees else None

    def is_one_below(self, n: int) -> bool:
        """True when all coefficients of degree 1 .. n-1 vanish."""
        return all(not m or len(m) >= n for m in self.coefficients)

    def to_dict(self) -> Dict[str, int]:
        return {
            "".join(GENERATOR_NAMES[g] for g in m) or "1": c
            for m, c in sorted(self.coefficients.items(), key=lambda item: (len(item[0]), item[0]))
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.degree, self.rank, self.coefficients) == (other.degree, other.rank, other.coefficients)

    def __repr__(self) -> str:
        return f"MagnusSeries(degree={self.degree}, terms={len(self.coefficients)})"
