"""Real multivector arithmetic for Cl(3,0).

Coefficients are stored in the fixed basis order

    1, e1, e2, e3, e23, e31, e12, e123

The three bivector slots hold the components of the dual vector ``t`` such
that the bivector equals ``i t = t1 e23 + t2 e31 + t3 e12`` with
``i = e123``.  A space vector and a time vector are therefore both plain
three-component arrays and converting between them is a copy.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArgumentError, NonFiniteError, VectorDivisionError

__all__ = [
    "BASIS",
    "BASIS_NAMES",
    "E1",
    "E12",
    "E123",
    "E2",
    "E23",
    "E3",
    "E31",
    "I",
    "ONE",
    "DEFAULT_ATOL",
    "Multivector",
    "PRODUCT_TABLE",
    "as_vec3",
    "dot",
    "geometric_product",
    "grade",
    "reverse",
    "star",
    "vector",
    "vector_inverse",
    "wedge",
]

BASIS_NAMES = ("1", "e1", "e2", "e3", "e23", "e31", "e12", "e123")
DEFAULT_ATOL = 1e-12

# (sign, bitmask) of each stored basis element relative to the canonical
# ascending-index blade; e31 = e3 e1 = -e1 e3.
_STORAGE = (
    (1, 0b000),
    (1, 0b001),
    (1, 0b010),
    (1, 0b100),
    (1, 0b110),
    (-1, 0b101),
    (1, 0b011),
    (1, 0b111),
)
_GRADE_OF_SLOT = np.array([0, 1, 1, 1, 2, 2, 2, 3])


def _canonical_sign(a: int, b: int) -> int:
    """Sign picked up by reordering the product of two canonical blades."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _build_product_table() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mask_to_slot = {mask: (slot, sgn) for slot, (sgn, mask) in enumerate(_STORAGE)}
    index = np.zeros((8, 8), dtype=np.int64)
    sign = np.zeros((8, 8), dtype=np.float64)
    for i, (si, mi) in enumerate(_STORAGE):
        for j, (sj, mj) in enumerate(_STORAGE):
            # Euclidean signature: every generator squares to +1.
            slot, sk = mask_to_slot[mi ^ mj]
            index[i, j] = slot
            sign[i, j] = si * sj * sk * _canonical_sign(mi, mj)
    tensor = np.zeros((8, 8, 8))
    for i in range(8):
        for j in range(8):
            tensor[index[i, j], i, j] = sign[i, j]
    return index, sign, tensor


_PRODUCT_INDEX, _PRODUCT_SIGN, _PRODUCT_TENSOR = _build_product_table()
_PRODUCT_INDEX.setflags(write=False)
_PRODUCT_SIGN.setflags(write=False)
_PRODUCT_TENSOR.setflags(write=False)

#: ``PRODUCT_TABLE[i][j] == (k, s)`` means ``basis[i] * basis[j] == s * basis[k]``.
PRODUCT_TABLE = tuple(
    tuple((int(_PRODUCT_INDEX[i, j]), int(_PRODUCT_SIGN[i, j])) for j in range(8))
    for i in range(8)
)


def _checked(coeffs: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(coeffs)):
        raise NonFiniteError(f"{what} produced non-finite coefficients: {coeffs.tolist()}")
    return coeffs


class Multivector:
    """Immutable element of Cl(3,0).

    >>> e1 = Multivector(v=(1, 0, 0))
    >>> (e1 * e1).s
    1.0
    """

    __slots__ = ("_c",)

    def __init__(
        self,
        s: float = 0.0,
        v: Sequence[float] = (0.0, 0.0, 0.0),
        b: Sequence[float] = (0.0, 0.0, 0.0),
        p: float = 0.0,
    ) -> None:
        c = np.empty(8)
        c[0] = s
        c[1:4] = v
        c[4:7] = b
        c[7] = p
        self._set(_checked(c, "construction"))

    def _set(self, coeffs: np.ndarray) -> None:
        coeffs.setflags(write=False)
        object.__setattr__(self, "_c", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[float]) -> "Multivector":
        c = np.array(coeffs, dtype=np.float64).reshape(-1)
        if c.shape != (8,):
            raise ArgumentError(f"expected 8 coefficients, got {c.size}")
        out = cls.__new__(cls)
        out._set(_checked(c, "construction"))
        return out

    @classmethod
    def _wrap(cls, coeffs: np.ndarray, what: str) -> "Multivector":
        out = cls.__new__(cls)
        out._set(_checked(coeffs, what))
        return out

    # -- component access -------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        """Read-only view of the 8 coefficients in basis order."""
        return self._c

    @property
    def s(self) -> float:
        return float(self._c[0])

    @property
    def v(self) -> np.ndarray:
        return self._c[1:4].copy()

    @property
    def b(self) -> np.ndarray:
        """Dual components ``t`` of the bivector part ``i t``."""
        return self._c[4:7].copy()

    @property
    def p(self) -> float:
        return float(self._c[7])

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Multivector._wrap(self._c + other._c, "addition")

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Multivector._wrap(self._c - other._c, "subtraction")

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Multivector._wrap(other._c - self._c, "subtraction")

    def __neg__(self):
        return Multivector._wrap(-self._c, "negation")

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector._wrap(self._c * float(other), "scaling")
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector._wrap(self._c * float(other), "scaling")
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            if other == 0:
                raise ZeroDivisionError("division of a multivector by zero")
            return Multivector._wrap(self._c / float(other), "division")
        return NotImplemented

    def __invert__(self):
        return reverse(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(tuple(self._c.tolist()))

    def __repr__(self):
        terms = [
            f"{c:+.6g}{'' if name == '1' else '*' + name}"
            for c, name in zip(self._c, BASIS_NAMES)
            if c != 0.0
        ]
        return "Multivector(" + (" ".join(terms) if terms else "0") + ")"

    # -- conveniences ------------------------------------------------------
    def grade(self, k: int) -> "Multivector":
        return grade(self, k)

    def grades(self, atol: float = DEFAULT_ATOL) -> set[int]:
        """Grades holding at least one coefficient larger than ``atol``."""
        present = np.abs(self._c) > atol
        return {int(g) for g in _GRADE_OF_SLOT[present]}

    def reverse(self) -> "Multivector":
        return reverse(self)

    def star(self) -> "Multivector":
        return star(self)

    def norm(self) -> float:
        """Square root of the scalar part of ``M * ~M``."""
        return float(np.sqrt(np.dot(self._c, self._c)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c)))

    def isclose(self, other, atol: float = DEFAULT_ATOL) -> bool:
        other = _coerce(other)
        return bool(np.all(np.abs(self._c - other._c) <= atol))

    def is_vector(self, atol: float = 0.0) -> bool:
        return self.grades(atol) <= {1}

    # -- serialisation -----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "v": [float(x) for x in self._c[1:4]],
            "b": [float(x) for x in self._c[4:7]],
            "p": self.p,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Multivector":
        if not isinstance(data, Mapping):
            raise ArgumentError("multivector JSON must be an object")
        unknown = set(data) - {"s", "v", "b", "p"}
        if unknown:
            raise ArgumentError(f"unknown multivector field(s): {sorted(unknown)}")
        s = _scalar_field(data, "s")
        p = _scalar_field(data, "p")
        v = _triple_field(data, "v")
        b = _triple_field(data, "b")
        return cls(s, v, b, p)

    def to_csv_row(self) -> list[float]:
        return [float(x) for x in self._c]

    @classmethod
    def from_csv_row(cls, row: Sequence) -> "Multivector":
        if len(row) != 8:
            raise ArgumentError(f"CSV multivector row needs 8 fields, got {len(row)}")
        try:
            return cls.from_coeffs([float(x) for x in row])
        except ValueError as exc:
            raise ArgumentError(f"non-numeric CSV multivector field: {exc}") from None


def _scalar_field(data: Mapping, key: str) -> float:
    value = data.get(key, 0.0)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ArgumentError(f"field '{key}' must be a number")
    return float(value)


def _triple_field(data: Mapping, key: str) -> list[float]:
    value = data.get(key, [0.0, 0.0, 0.0])
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ArgumentError(f"field '{key}' must be a list of 3 numbers")
    for x in value:
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ArgumentError(f"field '{key}' must be a list of 3 numbers")
    return [float(x) for x in value]


def _coerce(x) -> Multivector | None:
    if isinstance(x, Multivector):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Multivector(float(x))
    return None


def vector(x: Sequence[float]) -> Multivector:
    """Grade-1 multivector with components ``x``."""
    return Multivector(v=as_vec3(x))


def as_vec3(x) -> np.ndarray:
    """Coerce a length-3 sequence or a grade-1 multivector to a float array."""
    if isinstance(x, Multivector):
        if x.grades(0.0) - {1}:
            raise ArgumentError(f"expected a grade-1 vector, got grades {sorted(x.grades(0.0))}")
        return x.v
    arr = np.asarray(x, dtype=np.float64).reshape(-1)
    if arr.shape != (3,):
        raise ArgumentError(f"expected 3 vector components, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("vector components must be finite")
    return arr


def geometric_product(u: Multivector, v: Multivector) -> Multivector:
    coeffs = np.einsum("kij,i,j->k", _PRODUCT_TENSOR, u._c, v._c)
    return Multivector._wrap(coeffs, "geometric product")


def grade(M: Multivector, k: int) -> Multivector:
    """Grade-``k`` part of ``M``."""
    if k not in (0, 1, 2, 3) or isinstance(k, bool):
        raise ArgumentError(f"grade must be one of 0, 1, 2, 3; got {k!r}")
    return Multivector._wrap(np.where(_GRADE_OF_SLOT == k, M._c, 0.0), "grade projection")


_REVERSE_SIGNS = np.array([1, 1, 1, 1, -1, -1, -1, -1], dtype=np.float64)
_STAR_SIGNS = np.array([1, -1, -1, -1, 1, 1, 1, -1], dtype=np.float64)


def reverse(M: Multivector) -> Multivector:
    return Multivector._wrap(M._c * _REVERSE_SIGNS, "reversion")


def star(M: Multivector) -> Multivector:
    """Grade involution: negates the vector and trivector parts."""
    return Multivector._wrap(M._c * _STAR_SIGNS, "star involution")


def _require_vector(x: Multivector, name: str) -> None:
    if not isinstance(x, Multivector) or x.grades(0.0) - {1}:
        raise ArgumentError(f"{name} must be a grade-1 multivector")


def dot(u: Multivector, v: Multivector) -> float:
    """Symmetric part ``(uv + vu) / 2`` of the product of two vectors."""
    _require_vector(u, "u")
    _require_vector(v, "v")
    return (geometric_product(u, v) + geometric_product(v, u)).s / 2.0


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Antisymmetric part ``(uv - vu) / 2`` of the product of two vectors."""
    _require_vector(u, "u")
    _require_vector(v, "v")
    return (geometric_product(u, v) - geometric_product(v, u)) / 2.0


def vector_inverse(v: Multivector) -> Multivector:
    _require_vector(v, "v")
    sq = float(np.dot(v._c[1:4], v._c[1:4]))
    if sq == 0.0:
        raise VectorDivisionError("the zero vector has no inverse")
    return v / sq


def _blade(index: int) -> Multivector:
    c = np.zeros(8)
    c[index] = 1.0
    return Multivector.from_coeffs(c)


ONE, E1, E2, E3, E23, E31, E12, E123 = (_blade(k) for k in range(8))
I = E123
BASIS = (ONE, E1, E2, E3, E23, E31, E12, E123)
