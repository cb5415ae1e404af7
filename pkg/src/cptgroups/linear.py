"""Exact matrix arithmetic for the concrete group realizations.

Everything here is integer, Gaussian-integer or rational. There is no floating
point anywhere: equality of group elements is structural equality of entries.

The covering maps follow the adjoint construction. For a 2x2 matrix ``A``
the rotation has entries ``R[j][k] = 1/2 tr(s_j A s_k A^dagger)`` (s = Pauli
matrices), and the Lorentz image uses the same formula with ``s_0 = I``
included.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussInt",
    "Matrix",
    "SemidirectElem",
    "NotExact",
    "NotUnitary",
    "KindMismatch",
    "I_UNIT",
    "ETA",
    "PARITY",
    "TIME_REVERSAL",
    "pauli",
    "identity",
    "diag",
    "rat4",
    "phi",
    "phi_tilde",
    "phi_double",
    "block_embed",
    "zero_translation",
    "semidirect_product",
    "is_su2",
    "is_rotation",
    "is_lorentz",
]


class NotExact(ArithmeticError):
    """A covering-map entry did not come out as an exact integer."""


class NotUnitary(ValueError):
    """Input to a covering map is not unitary with determinant one."""


class KindMismatch(TypeError):
    """Semidirect elements over different carriers were multiplied."""


@dataclass(frozen=True)
class GaussInt:
    """Gaussian integer ``re + im*i``."""

    re: int
    im: int = 0

    @classmethod
    def coerce(cls, x: Union[int, "GaussInt"]) -> "GaussInt":
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GaussInt")

    def __add__(self, other):
        if isinstance(other, (int, GaussInt)):
            o = GaussInt.coerce(other)
            return GaussInt(self.re + o.re, self.im + o.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (int, GaussInt)):
            return self + (-GaussInt.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, GaussInt)):
            return GaussInt.coerce(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, GaussInt)):
            o = GaussInt.coerce(other)
            return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        # equal to int when real, so that hash(GaussInt(3)) == hash(3)
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"

    def __repr__(self) -> str:
        return f"GaussInt({self.re}, {self.im})"


I_UNIT = GaussInt(0, 1)


def _conj(x):
    return x.conjugate() if isinstance(x, GaussInt) else x


def _normalize(x):
    # real Gaussian integers collapse to int so that equality/hash are uniform
    if isinstance(x, GaussInt) and x.im == 0:
        return x.re
    return x


@dataclass(frozen=True)
class Matrix:
    """Square matrix with exact entries (int, GaussInt or Fraction).

    Entries are normalized on construction: a GaussInt with zero imaginary part
    is stored as a plain int, so ``Matrix`` equality does not depend on how an
    entry was produced.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(_normalize(x) for x in row) for row in self.rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "Matrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"shape mismatch {self.n} vs {other.n}")
        cols = list(zip(*other.rows))
        return Matrix(
            tuple(
                tuple(reduce(operator.add, (a * b for a, b in zip(row, col))) for col in cols)
                for row in self.rows
            )
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def apply(self, v: Sequence) -> tuple:
        return tuple(reduce(operator.add, (a * b for a, b in zip(row, v))) for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows)))

    def dagger(self) -> "Matrix":
        return Matrix(tuple(tuple(_conj(x) for x in col) for col in zip(*self.rows)))

    def trace(self):
        return reduce(operator.add, (self.rows[i][i] for i in range(self.n)))

    def det(self):
        if self.n == 1:
            return self.rows[0][0]
        total = 0
        for j, a in enumerate(self.rows[0]):
            if a == 0:
                continue
            minor = Matrix(tuple(row[:j] + row[j + 1 :] for row in self.rows[1:]))
            term = a * minor.det()
            total = total + term if j % 2 == 0 else total - term
        return _normalize(total)

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j)

    def __str__(self) -> str:
        if self.is_diagonal():
            return "diag(" + ",".join(str(self.rows[i][i]) for i in range(self.n)) + ")"
        return "[" + ", ".join("[" + ",".join(str(x) for x in row) + "]" for row in self.rows) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self})"


def identity(n: int) -> Matrix:
    return Matrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def diag(*entries) -> Matrix:
    n = len(entries)
    return Matrix(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))


_i = I_UNIT
_PAULI = {
    1: Matrix(((0, 1), (1, 0))),
    2: Matrix(((0, -_i), (_i, 0))),
    3: Matrix(((1, 0), (0, -1))),
}


def pauli(k: int) -> Matrix:
    """Pauli matrix ``s_k`` for k in {1, 2, 3}."""
    try:
        return _PAULI[k]
    except KeyError:
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {k!r}") from None


ETA = diag(1, -1, -1, -1)
PARITY = diag(1, -1, -1, -1)
TIME_REVERSAL = diag(-1, 1, 1, 1)


def is_su2(a: Matrix) -> bool:
    return a.n == 2 and a @ a.dagger() == identity(2) and a.det() == 1


def is_rotation(r: Matrix) -> bool:
    return r.n == 3 and r @ r.transpose() == identity(3) and r.det() == 1


def is_lorentz(m: Matrix) -> bool:
    return m.n == 4 and m.transpose() @ ETA @ m == ETA


def _half_integer(value) -> int:
    value = GaussInt.coerce(value) if not isinstance(value, GaussInt) else value
    if value.im != 0 or value.re % 2:
        raise NotExact(f"1/2 * {value} is not an integer")
    return value.re // 2


def _adjoint_entries(a: Matrix, basis: Sequence[Matrix]) -> Matrix:
    ad = a.dagger()
    return Matrix(
        tuple(
            tuple(_half_integer((sj @ a @ sk @ ad).trace()) for sk in basis)
            for sj in basis
        )
    )


def _require_su2(a: Matrix) -> None:
    if not is_su2(a):
        raise NotUnitary(f"{a} is not unitary with determinant 1")


def phi(a: Matrix) -> Matrix:
    """Rotation covered by ``a`` under the double cover SU(2) -> SO(3)."""
    _require_su2(a)
    r = _adjoint_entries(a, [_PAULI[1], _PAULI[2], _PAULI[3]])
    assert is_rotation(r), r
    return r


def phi_tilde(a: Matrix) -> Matrix:
    """Lorentz matrix covered by ``a``; only unitary inputs are accepted.

    Computed with the 4x4 trace formula including ``s_0 = I``, not by embedding
    ``phi(a)``, so the two constructions can be cross-checked.
    """
    _require_su2(a)
    m = _adjoint_entries(a, [identity(2), _PAULI[1], _PAULI[2], _PAULI[3]])
    assert is_lorentz(m), m
    return m


def block_embed(r: Matrix) -> Matrix:
    """``R -> [[1, 0], [0, R]]`` from 3x3 rotations into 4x4 Lorentz matrices."""
    if r.n != 3:
        raise ValueError("block_embed expects a 3x3 matrix")
    rows = [(1, 0, 0, 0)] + [(0,) + tuple(row) for row in r.rows]
    return Matrix(tuple(rows))


def rat4(*xs) -> tuple:
    if len(xs) != 4:
        raise ValueError("a translation has four components")
    return tuple(Fraction(x) for x in xs)


ZERO4 = rat4(0, 0, 0, 0)


@dataclass(frozen=True)
class SemidirectElem:
    """Element ``(a, A)`` of R^4 x| G with ``(a,A)(b,B) = (a + act(A) b, AB)``.

    ``part`` is either a 4x4 Lorentz matrix (acting on itself) or a 2x2
    SU(2) matrix (acting through ``phi_tilde``).
    """

    translation: tuple
    part: Matrix

    def __post_init__(self):
        object.__setattr__(self, "translation", tuple(Fraction(x) for x in self.translation))
        if len(self.translation) != 4:
            raise ValueError("translation must have four components")
        if self.part.n not in (2, 4):
            raise ValueError("part must be 2x2 or 4x4")

    @property
    def kind(self) -> str:
        return "covering" if self.part.n == 2 else "poincare"

    def act(self) -> Matrix:
        return phi_tilde(self.part) if self.part.n == 2 else self.part

    def __mul__(self, other: "SemidirectElem") -> "SemidirectElem":
        return semidirect_product(self, other)

    def inverse(self) -> "SemidirectElem":
        if self.part.n == 2:
            inv = self.part.dagger()
        else:
            # Lorentz inverse: eta M^T eta
            inv = ETA @ self.part.transpose() @ ETA
        moved = SemidirectElem(ZERO4, inv).act().apply(self.translation)
        return SemidirectElem(tuple(-x for x in moved), inv)

    def __str__(self) -> str:
        t = self.translation
        tr = "0" if all(x == 0 for x in t) else "(" + ",".join(str(x) for x in t) + ")"
        return f"({tr}, {self.part})"


def semidirect_product(x: SemidirectElem, y: SemidirectElem) -> SemidirectElem:
    if x.kind != y.kind:
        raise KindMismatch(f"cannot multiply {x.kind} by {y.kind} element")
    moved = x.act().apply(y.translation)
    return SemidirectElem(tuple(a + b for a, b in zip(x.translation, moved)), x.part @ y.part)


def zero_translation(part: Matrix) -> SemidirectElem:
    return SemidirectElem(ZERO4, part)


def phi_double(x: SemidirectElem) -> SemidirectElem:
    """Covering map of the semidirect products: ``(a, A) -> (a, phi_tilde(A))``."""
    if x.part.n != 2:
        raise KindMismatch("phi_double expects an element with a 2x2 part")
    return SemidirectElem(x.translation, phi_tilde(x.part))
