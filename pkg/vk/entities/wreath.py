"""
WreathElement - Elements of (Z/p)^(p^j) semidirect Z/p^(j+1).
"""

from typing import Dict, Optional, Sequence

import numpy as np

from vk.exceptions import InputError


class WreathElement:
    """
    Pair ``(vec, shift)`` with the shift acting by cyclic rotation.

    Multiplication is ``(v, k)(u, m) = (v + sigma^k u, k + m)`` where
    ``sigma`` moves coordinate ``i`` to ``i + 1``. Shifts that are multiples
    of ``p^j`` act trivially.
    """

    __slots__ = ("p", "j", "vec", "shift")

    def __init__(self, p: int, j: int, vec: Optional[Sequence[int]] = None, shift: int = 0):
        if p < 2 or j < 0:
            raise InputError(f"Invalid wreath parameters p={p}, j={j}")
        self.p = p
        self.j = j
        length = p ** j
        if vec is None:
            arr = np.zeros(length, dtype=np.int64)
        else:
            arr = np.asarray(vec, dtype=np.int64) % p
            if arr.shape != (length,):
                raise InputError(f"Vector must have length {length}, got {arr.shape}")
        arr.setflags(write=False)
        self.vec = arr
        self.shift = int(shift) % p ** (j + 1)

    @classmethod
    def identity(cls, p: int, j: int) -> "WreathElement":
        return cls(p, j)

    @classmethod
    def basis(cls, p: int, j: int, index: int = 0, shift: int = 0) -> "WreathElement":
        """``(e_index, shift)``."""
        vec = np.zeros(p ** j, dtype=np.int64)
        vec[index] = 1
        return cls(p, j, vec, shift)

    @property
    def length(self) -> int:
        return self.p ** self.j

    @property
    def modulus(self) -> int:
        return self.p ** (self.j + 1)

    @property
    def order_of_group(self) -> int:
        return self.p ** (self.length + self.j + 1)

    def _check(self, other: "WreathElement") -> None:
        if (self.p, self.j) != (other.p, other.j):
            raise InputError(f"Cannot combine elements for (p, j) = {(self.p, self.j)} and {(other.p, other.j)}")

    def rotate(self, vec: np.ndarray, times: int) -> np.ndarray:
        """``sigma^times`` applied to a vector."""
        return np.roll(vec, times % self.length)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        self._check(other)
        return WreathElement(self.p, self.j, self.vec + self.rotate(other.vec, self.shift), self.shift + other.shift)

    def inverse(self) -> "WreathElement":
        return WreathElement(self.p, self.j, -self.rotate(self.vec, -self.shift), -self.shift)

    def __pow__(self, m: int) -> "WreathElement":
        if m < 0:
            return self.inverse() ** (-m)
        result = WreathElement.identity(self.p, self.j)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def commutator(self, other: "WreathElement") -> "WreathElement":
        return self * other * self.inverse() * other.inverse()

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.vec.any()

    def to_dict(self) -> Dict[str, object]:
        return {"vec": [int(x) for x in self.vec], "shift": self.shift}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WreathElement):
            return NotImplemented
        return (self.p, self.j, self.shift) == (other.p, other.j, other.shift) and np.array_equal(self.vec, other.vec)

    def __hash__(self) -> int:
        return hash((self.p, self.j, self.shift, tuple(int(x) for x in self.vec)))

    def __repr__(self) -> str:
        return f"WreathElement(p={self.p}, j={self.j}, vec={self.to_dict()['vec']}, shift={self.shift})"

