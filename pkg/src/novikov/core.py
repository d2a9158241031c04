"""Finite-dimensional exact containers: bases, dense tensors, bilinear forms,
and polynomials in one or two integer band variables.

Tensors are plain numpy arrays with ``dtype=object`` holding exact scalars
(see :mod:`novikov.fields`).  All values are treated as immutable once built;
helpers always return fresh arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DegenerateForm, DegreeCapExceeded, ShapeMismatch
from .fields import Field, Scalar

# ---------------------------------------------------------------------------
# bases


@dataclass(frozen=True)
class Basis:
    """Ordered list of distinct basis-element names."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("basis must have dimension >= 1")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def dual(self) -> "Basis":
        return Basis(tuple(n + "*" for n in self.names))

    def concat(self, other: "Basis") -> "Basis":
        return Basis(self.names + other.names)

    def tensor(self, other: "Basis") -> "Basis":
        return Basis(tuple(f"{a}.{b}" for a in self.names for b in other.names))

    @staticmethod
    def standard(n: int, prefix: str = "e") -> "Basis":
        return Basis(tuple(f"{prefix}{i + 1}" for i in range(n)))


# ---------------------------------------------------------------------------
# dense exact tensors


def zeros(field: Field, shape: int | tuple[int, ...]) -> np.ndarray:
    if isinstance(shape, int):
        shape = (shape,)
    arr = np.empty(shape, dtype=object)
    arr[...] = field.zero
    return arr


def tensor(field: Field, data) -> np.ndarray:
    """Build an exact tensor from nested sequences, coercing every entry."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = field.scalar(arr[idx])
    return out


def basis_vector(field: Field, n: int, i: int) -> np.ndarray:
    v = zeros(field, n)
    v[i] = field.one
    return v


def is_zero(arr: np.ndarray) -> bool:
    return all(not bool(x) for x in arr.flat)


def arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.flat, b.flat))


def contract(spec: str, *arrays: np.ndarray) -> np.ndarray:
    """einsum over exact object arrays."""
    return np.einsum(spec, *arrays)


def tensor_contract(t: np.ndarray, slot: int, v: np.ndarray) -> np.ndarray:
    """Contract slot ``slot`` of ``t`` against the vector ``v``; the output
    shape drops the contracted slot."""
    if not (0 <= slot < t.ndim):
        raise ShapeMismatch(f"slot {slot} out of range for ndim {t.ndim}")
    if v.ndim != 1 or t.shape[slot] != v.shape[0]:
        raise ShapeMismatch(f"cannot contract slot of size {t.shape[slot]} with vector of size {v.shape}")
    return np.tensordot(t, v, axes=([slot], [0]))


def format_array(field: Field, arr) -> str:
    if not isinstance(arr, np.ndarray):
        return field.format(arr)
    if arr.ndim == 0:
        return field.format(arr[()])
    return "[" + ", ".join(format_array(field, arr[i]) for i in range(arr.shape[0])) + "]"


# ---------------------------------------------------------------------------
# exact linear algebra (fields only, so plain Gaussian elimination is exact)


def det(field: Field, m: np.ndarray) -> Scalar:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeMismatch("determinant needs a square matrix")
    work = m.copy()
    sign = field.one
    result = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col]), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            sign = -sign
        piv = work[col, col]
        result = result * piv
        for r in range(col + 1, n):
            if work[r, col]:
                factor = work[r, col] / piv
                work[r, col:] = work[r, col:] - factor * work[col, col:]
    return sign * result


def inverse(field: Field, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeMismatch("inverse needs a square matrix")
    work = m.copy()
    out = zeros(field, (n, n))
    for i in range(n):
        out[i, i] = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col]), None)
        if pivot is None:
            raise DegenerateForm("matrix is singular")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            out[[col, pivot]] = out[[pivot, col]]
        piv = work[col, col]
        work[col] = work[col] / piv
        out[col] = out[col] / piv
        for r in range(n):
            if r != col and work[r, col]:
                factor = work[r, col]
                work[r] = work[r] - factor * work[col]
                out[r] = out[r] - factor * out[col]
    return out


def solve(field: Field, m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return inverse(field, m) @ rhs


# ---------------------------------------------------------------------------
# bilinear forms


@dataclass(frozen=True)
class BilinearForm:
    """An n x n exact Gram matrix ``matrix[i, j] = form(e_i, e_j)``."""

    field: Field
    matrix: np.ndarray

    def __post_init__(self):
        n = self.matrix.shape[0]
        if self.matrix.shape != (n, n):
            raise ShapeMismatch("bilinear form matrix must be square")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def value(self, x: np.ndarray, y: np.ndarray) -> Scalar:
        out = contract("i,ij,j->", x, self.matrix, y)
        return out[()] if isinstance(out, np.ndarray) else out

    @cached_property
    def symmetric(self) -> bool:
        return arrays_equal(self.matrix, self.matrix.T)

    @cached_property
    def skewsymmetric(self) -> bool:
        return is_zero(self.matrix + self.matrix.T)

    @cached_property
    def nondegenerate(self) -> bool:
        return bool(det(self.field, self.matrix))


# ---------------------------------------------------------------------------
# band polynomials
#
# A BandPoly is a polynomial in one variable u (or two variables u, v) that
# stand for integer Laurent slot degrees.  Coefficients are exact tensors of
# one fixed shape.  The degree cap guards against runaway symbolic blowup:
# every formula in scope produces coefficient degree <= 2.

DEFAULT_DEGREE_CAP = 8
_degree_cap = DEFAULT_DEGREE_CAP


def set_degree_cap(cap: int) -> None:
    global _degree_cap
    if cap < 1:
        raise ValueError("degree cap must be >= 1")
    _degree_cap = cap


def get_degree_cap() -> int:
    return _degree_cap


Monomial = tuple[int, ...]


def _int_poly_mul(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c != 0}


@dataclass(frozen=True)
class BandPoly:
    """Tensor-valued polynomial in 1 or 2 integer band variables."""

    field: Field
    nvars: int
    shape: tuple[int, ...]
    coeffs: dict[Monomial, np.ndarray] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, arr in self.coeffs.items():
            if len(mono) != self.nvars:
                raise ShapeMismatch(f"monomial {mono} has wrong arity for nvars={self.nvars}")
            if arr.shape != self.shape:
                raise ShapeMismatch(f"coefficient shape {arr.shape} != {self.shape}")
            if sum(mono) > _degree_cap:
                raise DegreeCapExceeded(f"monomial {mono} exceeds degree cap {_degree_cap}")
            if not is_zero(arr):
                clean[mono] = arr
        object.__setattr__(self, "coeffs", clean)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(field: Field, nvars: int, shape: tuple[int, ...]) -> "BandPoly":
        return BandPoly(field, nvars, shape, {})

    @staticmethod
    def const(field: Field, nvars: int, arr: np.ndarray) -> "BandPoly":
        return BandPoly(field, nvars, arr.shape, {(0,) * nvars: arr})

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=0)

    # -- ring-ish operations -------------------------------------------------

    def _check_compatible(self, other: "BandPoly") -> None:
        if self.nvars != other.nvars or self.shape != other.shape or self.field != other.field:
            raise ShapeMismatch("band polynomials are incompatible")

    def __add__(self, other: "BandPoly") -> "BandPoly":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for m, arr in other.coeffs.items():
            out[m] = out[m] + arr if m in out else arr
        return BandPoly(self.field, self.nvars, self.shape, out)

    def __neg__(self) -> "BandPoly":
        return BandPoly(self.field, self.nvars, self.shape, {m: -a for m, a in self.coeffs.items()})

    def __sub__(self, other: "BandPoly") -> "BandPoly":
        return self + (-other)

    def scale(self, s: Scalar) -> "BandPoly":
        return BandPoly(self.field, self.nvars, self.shape, {m: s * a for m, a in self.coeffs.items()})

    def times_int_poly(self, poly: Mapping[Monomial, int]) -> "BandPoly":
        """Multiply by a scalar polynomial with integer coefficients (e.g. the
        affine degree weights produced by Laurent products)."""
        out: dict[Monomial, np.ndarray] = {}
        for mp, cp in poly.items():
            if cp == 0:
                continue
            s = self.field.from_int(cp)
            for mv, arr in self.coeffs.items():
                m = tuple(x + y for x, y in zip(mp, mv))
                term = s * arr
                out[m] = out[m] + term if m in out else term
        return BandPoly(self.field, self.nvars, self.shape, out)

    def map_values(self, fn: Callable[[np.ndarray], np.ndarray], shape: tuple[int, ...]) -> "BandPoly":
        return BandPoly(self.field, self.nvars, shape, {m: fn(a) for m, a in self.coeffs.items()})

    def combine(
        self,
        other: "BandPoly",
        fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
        shape: tuple[int, ...],
        nvars: int | None = None,
    ) -> "BandPoly":
        """Bilinear combination: sum over coefficient pairs with exponents added."""
        nv = self.nvars if nvars is None else nvars
        if other.nvars != self.nvars:
            raise ShapeMismatch("cannot combine polynomials with different arities")
        out: dict[Monomial, np.ndarray] = {}
        for m1, a1 in self.coeffs.items():
            for m2, a2 in other.coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                term = fn(a1, a2)
                out[m] = out[m] + term if m in out else term
        return BandPoly(self.field, nv, shape, out)

    # -- substitution / evaluation -------------------------------------------

    def substitute(self, subs: Sequence[Mapping[Monomial, int]], nvars_out: int) -> "BandPoly":
        """Substitute each variable by an integer-coefficient polynomial in the
        output variables (affine maps in practice).  ``subs[i]`` replaces the
        i-th input variable; monomial keys have arity ``nvars_out``."""
        if len(subs) != self.nvars:
            raise ShapeMismatch("need one substitution per variable")
        one: dict[Monomial, int] = {(0,) * nvars_out: 1}
        out: dict[Monomial, np.ndarray] = {}
        for mono, arr in self.coeffs.items():
            poly = one
            for var, exp in enumerate(mono):
                for _ in range(exp):
                    poly = _int_poly_mul(poly, subs[var])
            for m, c in poly.items():
                term = self.field.from_int(c) * arr
                out[m] = out[m] + term if m in out else term
        return BandPoly(self.field, nvars_out, self.shape, out)

    def evaluate(self, point: Sequence[int]) -> np.ndarray:
        if len(point) != self.nvars:
            raise ShapeMismatch("evaluation point has wrong arity")
        out = zeros(self.field, self.shape)
        for mono, arr in self.coeffs.items():
            k = 1
            for var, exp in enumerate(mono):
                k *= point[var] ** exp
            out = out + self.field.from_int(k) * arr
        return out


def affine(nvars: int, const: int = 0, **var_coeffs: int) -> dict[Monomial, int]:
    """Integer affine polynomial ``const + u*u_coeff + v*v_coeff`` as a
    monomial dict; variables are named ``u`` and ``v``."""
    order = ("u", "v")[:nvars]
    out: dict[Monomial, int] = {}
    if const:
        out[(0,) * nvars] = const
    for name, coeff in var_coeffs.items():
        if name not in order:
            raise ValueError(f"unknown variable {name!r} for nvars={nvars}")
        if coeff:
            mono = tuple(1 if v == name else 0 for v in order)
            out[mono] = out.get(mono, 0) + coeff
    return out
