"""Congruences in Z^n: Smith normal form and the groups Z^n / Z^n M

Two integral vectors u, v are congruent modulo a nonsingular matrix M when
u - v lies in the lattice spanned by the rows of M. The quotient is a finite
Abelian group, and the Smith normal form S = U M V exhibits it as a product of
cyclic groups: x -> x V (mod S) is an isomorphism onto Z_d1 x ... x Z_dn.
"""

# Standard Library Imports
import itertools
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

# Third Party Imports
import sympy
from sympy.utilities.iterables import partitions

# Module Imports
from mixed_abelian_cayley.errors import SingularMatrixException

logger = logging.getLogger(__name__)


### INTEGER MATRICES ###


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of arbitrary-precision integers"""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(entry) for entry in row) for row in self.rows)
        for row in rows:
            if len(row) != len(rows):
                raise ValueError(
                    f"Matrix must be square, got a row of length {len(row)} in a {len(rows)}-row matrix."
                )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def block_diagonal(cls, first: "IntMatrix", second: "IntMatrix") -> "IntMatrix":
        n = first.n + second.n
        rows = [[0] * n for _ in range(n)]
        for i, row in enumerate(first.rows):
            rows[i][: first.n] = row
        for i, row in enumerate(second.rows):
            rows[first.n + i][first.n :] = row
        return cls(tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: int) -> tuple[int, ...]:
        return self.rows[index]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError(f"Cannot multiply a {self.n}x{self.n} by a {other.n}x{other.n} matrix.")
        columns = list(zip(*other.rows))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, column)) for column in columns)
                for row in self.rows
            )
        )

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.n, self.n, [entry for row in self.rows for entry in row])

    def det(self) -> int:
        if self.n == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))

    def is_diagonal(self) -> bool:
        return all(
            entry == 0 for i, row in enumerate(self.rows) for j, entry in enumerate(row) if i != j
        )

    def with_row_scaled(self, index: int, alpha: int) -> "IntMatrix":
        return IntMatrix(
            tuple(
                tuple(alpha * entry for entry in row) if i == index else row
                for i, row in enumerate(self.rows)
            )
        )

    def with_row(self, index: int, row: Sequence[int]) -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(row) if i == index else old for i, old in enumerate(self.rows))
        )

    def __str__(self) -> str:
        return format_matrix(self)


def format_matrix(matrix: IntMatrix) -> str:
    """Matrix file text: `n` then n rows of n whitespace separated integers"""
    width = max((len(str(entry)) for row in matrix.rows for entry in row), default=1)
    lines = [str(matrix.n)]
    lines += [" ".join(f"{entry:>{width}d}" for entry in row) for row in matrix.rows]
    return "\n".join(lines)


def parse_matrix(text: str) -> IntMatrix:
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("Matrix text is empty.")
    if len(lines[0]) != 1:
        raise ValueError(f"First matrix line must hold the dimension only, got {lines[0]}.")
    n = int(lines[0][0])
    if n < 0 or len(lines) - 1 != n:
        raise ValueError(f"Expected {n} matrix rows, got {len(lines) - 1}.")
    return IntMatrix(tuple(tuple(int(entry) for entry in row) for row in lines[1:]))


def read_matrix_file(path: Union[str, Path]) -> IntMatrix:
    return parse_matrix(Path(path).read_text())


### SMITH NORMAL FORM ###


@dataclass(frozen=True)
class SmithDecomposition:
    """S = U M V with U, V unimodular and diag(S) a nonnegative divisibility chain"""

    M: IntMatrix
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(self.S.n))

    def identity_holds(self) -> bool:
        return self.U @ self.M @ self.V == self.S

    def is_unimodular(self) -> bool:
        return abs(self.U.det()) == 1 and abs(self.V.det()) == 1

    def is_divisibility_chain(self) -> bool:
        diagonal = self.diagonal
        if any(entry < 0 for entry in diagonal) or not self.S.is_diagonal():
            return False
        # 0 is divisible by everything, and only 0 is divisible by 0
        return all(
            diagonal[i + 1] == 0 if diagonal[i] == 0 else diagonal[i + 1] % diagonal[i] == 0
            for i in range(len(diagonal) - 1)
        )


def _min_nonzero_entry(A: list[list[int]], start: int) -> Optional[tuple[int, int]]:
    best = None
    for i in range(start, len(A)):
        for j in range(start, len(A)):
            if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form by gcd elimination, pivoting on the smallest nonzero entry

    Row operations are mirrored on U and column operations on V, so U M V = S
    holds throughout. A pivot that does not divide the rest of its submatrix
    pulls the offending row in and the elimination repeats.

    Args:
        M (IntMatrix): Any square integer matrix

    Returns:
        SmithDecomposition: The decomposition with nonnegative diagonal
    """
    n = M.n
    A = [list(row) for row in M.rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(target: int, source: int, factor: int):
        A[target] = [a - factor * b for a, b in zip(A[target], A[source])]
        U[target] = [a - factor * b for a, b in zip(U[target], U[source])]

    def add_column(target: int, source: int, factor: int):
        for matrix in (A, V):
            for row in matrix:
                row[target] -= factor * row[source]

    for t in range(n):
        while True:
            pivot = _min_nonzero_entry(A, t)
            if pivot is None:
                break
            i, j = pivot
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
            for matrix in (A, V):
                for row in matrix:
                    row[t], row[j] = row[j], row[t]

            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, A[i][t] // A[t][t])
            for j in range(t + 1, n):
                if A[t][j]:
                    add_column(j, t, A[t][j] // A[t][t])
            if any(A[i][t] for i in range(t + 1, n)) or any(A[t][j] for j in range(t + 1, n)):
                continue

            # Divisibility repair
            offending = next(
                (
                    i
                    for i in range(t + 1, n)
                    for j in range(t + 1, n)
                    if A[i][j] % A[t][t]
                ),
                None,
            )
            if offending is None:
                break
            add_row(t, offending, -1)

    for t in range(n):
        if A[t][t] < 0:
            A[t] = [-entry for entry in A[t]]
            U[t] = [-entry for entry in U[t]]

    decomposition = SmithDecomposition(
        M=M,
        U=IntMatrix(tuple(map(tuple, U))),
        S=IntMatrix(tuple(map(tuple, A))),
        V=IntMatrix(tuple(map(tuple, V))),
    )
    logger.debug("Smith normal form of %s: diag%s", M.rows, decomposition.diagonal)
    return decomposition


### FINITE ABELIAN GROUPS ###


@dataclass(frozen=True, order=True)
class GroupElement:
    """Residue vector of a finite Abelian group in invariant-factor coordinates"""

    coords: tuple[int, ...]

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return ",".join(str(coord) for coord in self.coords)


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z_d1 x ... x Z_dr with every d_i >= 2 and d_i dividing d_(i+1)"""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(factor) for factor in self.invariant_factors)
        if any(factor < 2 for factor in factors):
            raise ValueError(f"Invariant factors must be at least 2, got {factors}.")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValueError(f"Invariant factors {factors} do not form a divisibility chain.")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse `Z4xZ12` (or `Z1` for the trivial group)"""
        text = text.strip()
        factors = []
        for part in text.split("x"):
            if not part.startswith("Z") or not part[1:].isdigit():
                raise ValueError(f"Cannot parse group {text!r}; expected e.g. 'Z4xZ12'.")
            factors.append(int(part[1:]))
        if factors == [1]:
            return cls(())
        return cls(tuple(factors))

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "Z1"
        return "x".join(f"Z{factor}" for factor in self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    @property
    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    ### ELEMENTS ###

    def element(self, coords: Union[Iterable[int], int]) -> GroupElement:
        """Reduced element from integer coordinates (an int is accepted for cyclic groups)"""
        coords = (coords,) if isinstance(coords, int) else tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(f"Expected {self.rank} coordinates for {self}, got {coords}.")
        return GroupElement(
            tuple(coord % factor for coord, factor in zip(coords, self.invariant_factors))
        )

    def contains(self, g: GroupElement) -> bool:
        return len(g.coords) == self.rank and all(
            0 <= coord < factor for coord, factor in zip(g.coords, self.invariant_factors)
        )

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.element(a + b for a, b in zip(g.coords, h.coords))

    def negate(self, g: GroupElement) -> GroupElement:
        return self.element(-a for a in g.coords)

    def scalar_mul(self, g: GroupElement, q: int) -> GroupElement:
        return self.element(q * a for a in g.coords)

    def element_order(self, g: GroupElement) -> int:
        return math.lcm(
            *(factor // math.gcd(coord, factor) for coord, factor in zip(g.coords, self.invariant_factors))
        )

    def index(self, g: GroupElement) -> int:
        """Dense mixed-radix index, first coordinate most significant"""
        index = 0
        for coord, factor in zip(g.coords, self.invariant_factors):
            index = index * factor + coord
        return index

    def element_at(self, index: int) -> GroupElement:
        coords = []
        for factor in reversed(self.invariant_factors):
            index, coord = divmod(index, factor)
            coords.append(coord)
        return GroupElement(tuple(reversed(coords)))

    def elements(self) -> Iterator[GroupElement]:
        """All elements, in dense index order"""
        for coords in itertools.product(*(range(factor) for factor in self.invariant_factors)):
            yield GroupElement(coords)

    def elements_of_order(self, order: int) -> tuple[GroupElement, ...]:
        return tuple(g for g in self.elements() if self.element_order(g) == order)

    def units(self) -> tuple[int, ...]:
        """Residues prime to the exponent; multiplication by them permutes each cyclic group"""
        return tuple(u for u in range(1, self.exponent + 1) if math.gcd(u, self.exponent) == 1)


def element_order(g: GroupElement, G: AbelianGroup) -> int:
    """Least q >= 1 with q g = 0, the lcm of d_i / gcd(g_i, d_i)"""
    return G.element_order(g)


### GROUPS FROM MATRICES ###


def group_from_matrix(M: IntMatrix) -> tuple[AbelianGroup, tuple[GroupElement, ...]]:
    """Present Z^n / Z^n M in invariant-factor form

    Args:
        M (IntMatrix): Nonsingular integer matrix whose rows span the lattice

    Returns:
        AbelianGroup: The quotient group, trivial factors dropped
        tuple[GroupElement, ...]: Image of each unit vector e_i (row i of V reduced modulo S)
    """
    if M.det() == 0:
        raise SingularMatrixException(f"Matrix {M.rows} is singular; Z^n/Z^nM is infinite.")
    decomposition = smith_normal_form(M)
    diagonal = decomposition.diagonal
    kept = [j for j, entry in enumerate(diagonal) if entry != 1]
    group = AbelianGroup(tuple(diagonal[j] for j in kept))
    images = tuple(
        group.element(decomposition.V[i][j] for j in kept) for i in range(M.n)
    )
    return group, images


def map_vector(
    images: Sequence[GroupElement], x: Sequence[int], G: AbelianGroup
) -> GroupElement:
    """Image of the integral vector x, the sum of x_i times the image of e_i"""
    if len(images) != len(x):
        raise ValueError(f"Vector {tuple(x)} does not match {len(images)} unit-vector images.")
    result = G.zero
    for coefficient, image in zip(x, images):
        result = G.add(result, G.scalar_mul(image, coefficient))
    return result


def group_from_cyclic_factors(
    moduli: Sequence[int],
) -> tuple[AbelianGroup, tuple[GroupElement, ...]]:
    """Z_m1 x ... x Z_mn in invariant-factor form, with the images of the unit residues"""
    if any(modulus < 1 for modulus in moduli):
        raise ValueError(f"Cyclic factors must be positive, got {tuple(moduli)}.")
    return group_from_matrix(IntMatrix.diagonal(tuple(moduli)))


def enumerate_abelian_groups(N: int) -> list[AbelianGroup]:
    """One invariant-factor chain per isomorphism class of Abelian groups of order N

    Every prime power p^a dividing N contributes one Z_p^(a_i) per part a_i of a
    partition of a; chains are sorted lexicographically.
    """
    if N < 1:
        raise ValueError(f"Group order must be positive, got {N}.")
    per_prime = []
    for p, a in sorted(sympy.factorint(N).items()):
        options = []
        for partition in partitions(a):
            parts = sorted(
                (size for size, multiplicity in partition.items() for _ in range(multiplicity)),
                reverse=True,
            )
            options.append(tuple(p**part for part in parts))
        per_prime.append(options)

    groups = []
    for choice in itertools.product(*per_prime):
        rank = max((len(powers) for powers in choice), default=0)
        # position 0 collects the largest prime power of every prime
        largest_first = [
            math.prod(powers[position] for powers in choice if position < len(powers))
            for position in range(rank)
        ]
        groups.append(AbelianGroup(tuple(reversed(largest_first))))
    return sorted(groups, key=lambda group: group.invariant_factors)
