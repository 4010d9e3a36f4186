"""
Exact integer, rational and GF(2) linear algebra.

All arithmetic uses Python integers and ``fractions.Fraction``; nothing here
touches floating point. Sparse matrices are stored column-wise because every
consumer (finger-move lattices, boundary maps) generates them column by
column.
"""

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from vk.exceptions import ChainComplexError, DimensionMismatch, InputError, InvariantViolation
from vk.utils.logger import get_logger

logger = get_logger(__name__)

SparseVector = Dict[int, int]


class IntMatrix:
    """
    Sparse integer matrix with fixed dimensions.

    Entries are kept as ``{col: {row: value}}`` with no stored zeros.
    """

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, entries: Optional[Dict[Tuple[int, int], int]] = None):
        if nrows < 0 or ncols < 0:
            raise DimensionMismatch(f"Invalid shape ({nrows}, {ncols})")
        self.nrows = nrows
        self.ncols = ncols
        self._cols: Dict[int, SparseVector] = {}
        for (i, j), value in (entries or {}).items():
            self._set(i, j, value)

    def _set(self, i: int, j: int, value: int) -> None:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise DimensionMismatch(f"Entry ({i}, {j}) outside shape ({self.nrows}, {self.ncols})")
        col = self._cols.setdefault(j, {})
        if value:
            col[i] = int(value)
        else:
            col.pop(i, None)
            if not col:
                del self._cols[j]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        """Build from a list of rows."""
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        matrix = cls(nrows, ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("Ragged dense matrix")
            for j, value in enumerate(row):
                if value:
                    matrix._set(i, j, value)
        return matrix

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[SparseVector]) -> "IntMatrix":
        """Build from sparse columns given as ``{row: value}`` maps."""
        matrix = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, value in col.items():
                if value:
                    matrix._set(i, j, value)
        return matrix

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): v for j, col in self._cols.items() for i, v in col.items()}

    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    def get(self, i: int, j: int) -> int:
        return self._cols.get(j, {}).get(i, 0)

    def column(self, j: int) -> SparseVector:
        """Return a copy of column ``j`` as a sparse map."""
        return dict(self._cols.get(j, {}))

    def columns(self) -> List[SparseVector]:
        return [self.column(j) for j in range(self.ncols)]

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in self._cols.items():
            for i, v in col.items():
                dense[i][j] = v
        return dense

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def matvec(self, x: Sequence[int]) -> List[int]:
        """Exact product ``M x``."""
        if len(x) != self.ncols:
            raise DimensionMismatch(f"Vector of length {len(x)} for {self.ncols} columns")
        out = [0] * self.nrows
        for j, col in self._cols.items():
            xj = x[j]
            if xj:
                for i, v in col.items():
                    out[i] += v * xj
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        result: Dict[Tuple[int, int], int] = {}
        for j, col in other._cols.items():
            for k, b in col.items():
                for i, a in self._cols.get(k, {}).items():
                    result[(i, j)] = result.get((i, j), 0) + a * b
        return IntMatrix(self.nrows, other.ncols, {key: v for key, v in result.items() if v})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# Rational helpers
# ---------------------------------------------------------------------------

def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix by Gaussian elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("Determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                factor = a[r][c] / a[c][c]
                for k in range(c, n):
                    a[r][k] -= factor * a[c][k]
    return det


def det3(m: Sequence[Sequence]):
    """Cofactor expansion; integer input gives an integer."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def det4(m: Sequence[Sequence]):
    """Determinant of a 4x4 matrix by expansion along the first row."""
    if len(m) != 4 or any(len(row) != 4 for row in m):
        raise DimensionMismatch("det4 expects a 4x4 matrix")
    total = 0
    for c in range(4):
        if m[0][c]:
            minor = [[row[k] for k in range(4) if k != c] for row in m[1:]]
            total += (-1) ** c * m[0][c] * det3(minor)
    return total


def solve_linear_rational(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """
    Solve the square system ``a x = b`` exactly.

    Returns:
        Optional[List[Fraction]]: The unique solution, or None when ``a`` is singular.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise DimensionMismatch("solve_linear_rational expects a square system")
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _smith_dense(a: List[List[int]], m: int, n: int) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(target: int, source: int, q: int) -> None:
        # row_target += q * row_source
        ra, rs = a[target], a[source]
        for c in range(n):
            if rs[c]:
                ra[c] += q * rs[c]
        ua, us = u[target], u[source]
        for c in range(m):
            if us[c]:
                ua[c] += q * us[c]

    def add_col(target: int, source: int, q: int) -> None:
        for row in a:
            if row[source]:
                row[target] += q * row[source]
        for row in v:
            if row[source]:
                row[target] += q * row[source]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                if row[j] and (best is None or abs(row[j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
                    if abs(row[j]) == 1:
                        break
            if best is not None and abs(a[best[0]][best[1]]) == 1:
                break
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                small = None
                for i in range(t + 1, m):
                    if a[i][t] and (small is None or abs(a[i][t]) < abs(small[2])):
                        small = ("r", i, a[i][t])
                for j in range(t + 1, n):
                    if a[t][j] and (small is None or abs(a[t][j]) < abs(small[2])):
                        small = ("c", j, a[t][j])
                if small[0] == "r":
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[1])
                continue
            pivot = a[t][t]
            offender = next(
                (i for i in range(t + 1, m) if any(a[i][j] % pivot for j in range(t + 1, n))),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def smith_normal_form(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form with unimodular transforms.

    Args:
        matrix: Integer matrix ``M``.

    Returns:
        Tuple[IntMatrix, IntMatrix, IntMatrix]: ``(U, D, V)`` with ``U M V = D``,
        ``D`` diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    m, n = matrix.shape
    u, d, v = _smith_dense(matrix.to_dense(), m, n)
    return IntMatrix.from_dense(u, m), IntMatrix.from_dense(d, n), IntMatrix.from_dense(v, n)


def invariant_factors(matrix: IntMatrix) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _ = smith_normal_form(matrix)
    return [d.get(i, i) for i in range(min(d.shape)) if d.get(i, i)]


# ---------------------------------------------------------------------------
# Lattice membership
# ---------------------------------------------------------------------------

@dataclass
class MembershipCertificate:
    """
    Dual witness that a vector lies outside a column lattice.

    ``functional . column == 0 (mod modulus)`` for every column while
    ``functional . target != 0 (mod modulus)``; a modulus of 0 means exact
    equality over the integers.
    """

    functional: Dict[int, int]
    modulus: int

    def check(self, matrix: IntMatrix, target: Sequence[int]) -> bool:
        def pair(vec: Dict[int, int]) -> int:
            return sum(self.functional.get(i, 0) * v for i, v in vec.items())

        def vanishes(value: int) -> bool:
            return value % self.modulus == 0 if self.modulus else value == 0

        if any(not vanishes(pair(matrix.column(j))) for j in range(matrix.ncols)):
            return False
        return not vanishes(pair({i: v for i, v in enumerate(target) if v}))


@dataclass
class MembershipResult:
    """Outcome of a lattice membership query."""

    solution: Optional[List[int]] = None
    certificate: Optional[MembershipCertificate] = None

    @property
    def member(self) -> bool:
        return self.solution is not None


@dataclass
class _Eliminated:
    """A column after elimination: ``vector = M[:, origin] - sum(q * pivot_t)``."""

    vector: SparseVector
    origin: int
    history: List[Tuple[int, int]] = field(default_factory=list)
    row: int = -1


def _axpy(target: SparseVector, source: SparseVector, q: int, modulus: Optional[int]) -> None:
    # target += q * source
    for key, value in source.items():
        new = target.get(key, 0) + q * value
        if modulus:
            new %= modulus
        if new:
            target[key] = new
        else:
            target.pop(key, None)


class IntegerLattice:
    """
    Lattice spanned by the columns of an integer matrix, over ZZ or GF(2).

    Columns are eliminated left to right using unit pivots (finger-move
    matrices are +-1 sparse, so almost every column contributes one), each
    pivot placed in the sparsest available row. Columns left without a unit
    entry form a small residual block handled by dense Smith normal form.
    Each eliminated column records which pivots were subtracted from it, so
    solutions are mapped back to the input columns by back-substitution.
    """

    def __init__(self, matrix: IntMatrix, modulus: Optional[int] = None):
        if modulus not in (None, 2):
            raise InputError("IntegerLattice supports modulus None or 2")
        self.matrix = matrix
        self.modulus = modulus
        self._pivots: List[_Eliminated] = []
        self._pivot_index: Dict[int, int] = {}
        self._residuals: List[_Eliminated] = []
        self._row_counts: Dict[int, int] = {}
        for j in range(matrix.ncols):
            for i in matrix.column(j):
                self._row_counts[i] = self._row_counts.get(i, 0) + 1

        order = sorted(range(matrix.ncols), key=lambda j: (len(matrix.column(j)), j))
        for j in order:
            self._add_column(j)
        self._settle_residuals()
        self._residual_rows, self._residual_snf = self._build_residual_system()
        logger.debug(
            f"Lattice on {matrix.shape}: {len(self._pivots)} unit pivots, "
            f"{len(self._residuals)} residual columns"
        )

    @property
    def rank_lower_bound(self) -> int:
        return len(self._pivots)

    def _normalize(self, vec: SparseVector) -> SparseVector:
        if self.modulus:
            return {i: v % self.modulus for i, v in vec.items() if v % self.modulus}
        return {i: v for i, v in vec.items() if v}

    def _reduce(self, vec: SparseVector) -> List[Tuple[int, int]]:
        """Clear every pivot row of ``vec`` in place; return the (pivot, multiplier) pairs used."""
        used: List[Tuple[int, int]] = []
        heap = [self._pivot_index[i] for i in vec if i in self._pivot_index]
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            t = heapq.heappop(heap)
            queued.discard(t)
            pivot = self._pivots[t]
            value = vec.get(pivot.row, 0)
            if not value:
                continue
            # pivot entries are units, so this quotient is exact
            q = value * pivot.vector[pivot.row]
            if self.modulus:
                q %= self.modulus
            _axpy(vec, pivot.vector, -q, self.modulus)
            used.append((t, q))
            for i in pivot.vector:
                u = self._pivot_index.get(i)
                if u is not None and u > t and u not in queued and vec.get(i):
                    heapq.heappush(heap, u)
                    queued.add(u)
        return used

    def _choose_pivot_row(self, vec: SparseVector) -> Optional[int]:
        units = [i for i, v in vec.items() if v in (1, -1)]
        if not units:
            return None
        return min(units, key=lambda i: (self._row_counts.get(i, 0), i))

    def _place(self, item: _Eliminated) -> bool:
        """Install ``item`` as a pivot if it has a unit entry; report success."""
        row = self._choose_pivot_row(item.vector)
        if row is None:
            return False
        item.row = row
        self._pivot_index[row] = len(self._pivots)
        self._pivots.append(item)
        return True

    def _add_column(self, j: int) -> None:
        item = _Eliminated(vector=self._normalize(self.matrix.column(j)), origin=j)
        item.history.extend(self._reduce(item.vector))
        if item.vector and not self._place(item):
            self._residuals.append(item)

    def _settle_residuals(self) -> None:
        changed = True
        while changed and self._residuals:
            changed = False
            pending, self._residuals = self._residuals, []
            for item in pending:
                item.history.extend(self._reduce(item.vector))
                if not item.vector:
                    continue
                if self._place(item):
                    changed = True
                else:
                    self._residuals.append(item)

    def _build_residual_system(self):
        rows = sorted({i for item in self._residuals for i in item.vector})
        if not rows:
            return rows, None
        position = {r: k for k, r in enumerate(rows)}
        entries = {
            (position[i], j): v
            for j, item in enumerate(self._residuals)
            for i, v in item.vector.items()
        }
        return rows, smith_normal_form(IntMatrix(len(rows), len(self._residuals), entries))

    def _pull_back(self, functional: Dict[int, int]) -> Dict[int, int]:
        """Extend a functional on non-pivot rows so it annihilates every pivot vector."""
        y = dict(functional)
        for pivot in reversed(self._pivots):
            total = sum(y.get(i, 0) * v for i, v in pivot.vector.items() if i != pivot.row)
            value = -total * pivot.vector[pivot.row]
            if self.modulus:
                value %= self.modulus
            if value:
                y[pivot.row] = value
        return y

    def _to_columns(self, pivot_coeffs: Dict[int, int], residual_coeffs: Sequence[int]) -> List[int]:
        """Rewrite a combination of pivots and residuals as one of the input columns."""
        alpha = dict(pivot_coeffs)
        x = [0] * self.matrix.ncols

        def expand(item: _Eliminated, coeff: int) -> None:
            x[item.origin] += coeff
            for u, q in item.history:
                alpha[u] = alpha.get(u, 0) - coeff * q

        for item, coeff in zip(self._residuals, residual_coeffs):
            if coeff:
                expand(item, coeff)
        for t in range(len(self._pivots) - 1, -1, -1):
            coeff = alpha.get(t, 0)
            if self.modulus:
                coeff %= self.modulus
            if coeff:
                expand(self._pivots[t], coeff)
        if self.modulus:
            x = [value % self.modulus for value in x]
        return x

    def solve(self, target: Sequence[int]) -> MembershipResult:
        """
        Decide whether ``target`` lies in the column lattice.

        Returns:
            MembershipResult: A verified solution ``x`` with ``M x = target``
            (mod 2 for the GF(2) lattice) or a dual certificate.
        """
        if len(target) != self.matrix.nrows:
            raise DimensionMismatch(
                f"Target of length {len(target)} for a matrix with {self.matrix.nrows} rows"
            )
        vec = self._normalize({i: int(v) for i, v in enumerate(target)})
        pivot_coeffs: Dict[int, int] = {}
        for t, q in self._reduce(vec):
            pivot_coeffs[t] = pivot_coeffs.get(t, 0) + q

        residual_coeffs = [0] * len(self._residuals)
        if vec:
            rows = self._residual_rows
            outside = sorted(set(vec) - set(rows))
            if outside:
                return MembershipResult(
                    certificate=MembershipCertificate(
                        self._pull_back({outside[0]: 1}), self.modulus or 0
                    )
                )
            u, d, v = self._residual_snf
            position = {r: k for k, r in enumerate(rows)}
            rhs = [0] * len(rows)
            for i, value in vec.items():
                rhs[position[i]] = value
            y = u.matvec(rhs)
            z = [0] * d.ncols
            for k, yk in enumerate(y):
                dk = d.get(k, k) if k < d.ncols else 0
                if (dk and yk % dk) or (not dk and yk):
                    row_u = {rows[c]: val for (r, c), val in u.entries.items() if r == k}
                    return MembershipResult(
                        certificate=MembershipCertificate(self._pull_back(row_u), dk)
                    )
                if dk:
                    z[k] = yk // dk
            residual_coeffs = v.matvec(z)

        solution = self._to_columns(pivot_coeffs, residual_coeffs)
        check = self.matrix.matvec(solution)
        expected = [int(e) for e in target]
        if self.modulus:
            check = [c % self.modulus for c in check]
            expected = [e % self.modulus for e in expected]
        if check != expected:
            raise InvariantViolation("Lattice solution failed exact verification")
        return MembershipResult(solution=solution)


def integer_membership(matrix: IntMatrix, target: Sequence[int]) -> Optional[List[int]]:
    """Integer solution of ``M x = target`` or None when none exists."""
    return IntegerLattice(matrix).solve(target).solution


def mod2_membership(matrix: IntMatrix, target: Sequence[int]) -> Optional[List[int]]:
    """GF(2) solution of ``M x = target`` or None when none exists."""
    return IntegerLattice(matrix, modulus=2).solve(target).solution


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------

@dataclass
class HomologyGroups:
    """Integral homology in degrees 0, 1, 2 as Betti numbers plus torsion."""

    betti: List[int]
    torsion: List[List[int]] = field(default_factory=lambda: [[], [], []])

    def describe(self, degree: int) -> str:
        parts = []
        if self.betti[degree]:
            parts.append("Z" if self.betti[degree] == 1 else f"Z^{self.betti[degree]}")
        parts.extend(f"Z/{t}" for t in self.torsion[degree])
        return " + ".join(parts) if parts else "0"


def homology_via_snf(boundary1: IntMatrix, boundary2: IntMatrix) -> HomologyGroups:
    """
    Homology of the chain complex ``C2 -> C1 -> C0``.

    Args:
        boundary1: Matrix of the boundary map from edges to vertices.
        boundary2: Matrix of the boundary map from triangles to edges.

    Returns:
        HomologyGroups: Betti numbers and torsion coefficients for H0, H1, H2.
    """
    if boundary1.ncols != boundary2.nrows:
        raise DimensionMismatch("Boundary matrices are not composable")
    if (boundary1 @ boundary2).nnz():
        raise ChainComplexError("Boundary maps do not compose to zero")
    f1 = invariant_factors(boundary1)
    f2 = invariant_factors(boundary2)
    n0, n1, n2 = boundary1.nrows, boundary1.ncols, boundary2.ncols
    r1, r2 = len(f1), len(f2)
    return HomologyGroups(
        betti=[n0 - r1, n1 - r1 - r2, n2 - r2],
        torsion=[[d for d in f1 if d > 1], [d for d in f2 if d > 1], []],
    )
