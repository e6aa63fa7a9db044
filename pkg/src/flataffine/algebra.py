"""Lie algebras, bilinear products and the pointwise checks on them.

A Lie algebra is stored as structure constants ``c[(i, j, k)]`` meaning
``[e_i, e_j] = sum_k c^k_ij e_k``, kept only for ``i < j``.  A product table
stores ``p[(i, j, k)]`` meaning ``e_i . e_j = sum_k p^k_ij e_k``.  All
coefficients are exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import linalg
from .linalg import Matrix, Vector, to_scalar

Dense3 = list[list[list[Fraction]]]


class DimensionMismatch(ValueError):
    pass


def _check_labels(basis: Sequence[str]) -> tuple[str, ...]:
    basis = tuple(str(b) for b in basis)
    if not basis:
        raise ValueError("basis must be non-empty")
    if len(set(basis)) != len(basis):
        raise ValueError(f"basis labels must be distinct: {basis}")
    return basis


def _index(basis: tuple[str, ...], key: int | str) -> int:
    if isinstance(key, str):
        try:
            return basis.index(key)
        except ValueError:
            raise KeyError(f"unknown basis label {key!r}") from None
    if not 0 <= key < len(basis):
        raise IndexError(f"basis index {key} out of range for dim {len(basis)}")
    return key


@dataclass(frozen=True)
class StructureConstants:
    """Lie bracket on a labelled basis; antisymmetry is enforced at construction."""

    basis: tuple[str, ...]
    entries: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        basis = _check_labels(self.basis)
        n = len(basis)
        canon: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), c in dict(self.entries).items():
            c = to_scalar(c)
            for idx in (i, j, k):
                if not 0 <= idx < n:
                    raise DimensionMismatch(f"entry {(i, j, k)} out of range for dim {n}")
            if c == 0:
                continue
            if i == j:
                raise ValueError(f"[e{i}, e{i}] must vanish, got coefficient {c}")
            key, val = ((i, j, k), c) if i < j else ((j, i, k), -c)
            if key in canon and canon[key] != val:
                raise ValueError(f"inconsistent antisymmetric entries for {key}")
            canon[key] = val
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "entries", dict(sorted(canon.items())))

    @classmethod
    def from_brackets(cls, basis: Sequence[str], brackets: Mapping, name: str = "") -> "StructureConstants":
        """Build from ``{(x, y): {z: coeff}}`` keyed by labels or indices."""
        basis = _check_labels(basis)
        entries = {}
        for (x, y), out in brackets.items():
            i, j = _index(basis, x), _index(basis, y)
            for z, c in out.items():
                entries[(i, j, _index(basis, z))] = to_scalar(c)
        return cls(basis, entries, name)

    @classmethod
    def abelian(cls, n_or_basis: int | Sequence[str], name: str = "") -> "StructureConstants":
        basis = [f"e{i}" for i in range(n_or_basis)] if isinstance(n_or_basis, int) else n_or_basis
        return cls(tuple(basis), {}, name or f"abelian{len(basis)}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, key: int | str) -> int:
        return _index(self.basis, key)

    @cached_property
    def dense(self) -> Dense3:
        n = self.dim
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.entries.items():
            c[i][j][k] = v
            c[j][i][k] = -v
        return c

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        """Bracket of two coordinate vectors."""
        n = self.dim
        out = [Fraction(0)] * n
        c = self.dense
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                w = x[i] * y[j]
                for k in range(n):
                    if c[i][j][k]:
                        out[k] += w * c[i][j][k]
        return out

    def ad(self, i: int | str) -> Matrix:
        """Matrix of ad_{e_i}: column j holds [e_i, e_j]."""
        i = self.index(i)
        n = self.dim
        return [[self.dense[i][j][k] for j in range(n)] for k in range(n)]

    def reordered(self, labels: Sequence[str]) -> "StructureConstants":
        """Same algebra with the basis permuted into the order of `labels`."""
        if sorted(labels) != sorted(self.basis):
            raise ValueError("reordering must be a permutation of the basis")
        pos = {lab: n for n, lab in enumerate(labels)}
        m = [pos[lab] for lab in self.basis]
        return StructureConstants(
            tuple(labels), {(m[i], m[j], m[k]): v for (i, j, k), v in self.entries.items()}, self.name
        )

    def relabeled(self, labels: Sequence[str]) -> "StructureConstants":
        return StructureConstants(tuple(labels), self.entries, self.name)

    def same_as(self, other: "StructureConstants") -> bool:
        """Equal brackets after aligning bases by label."""
        if sorted(self.basis) != sorted(other.basis):
            return False
        return self.reordered(other.basis).entries == other.entries

    def __str__(self):
        parts = []
        for (i, j, k), v in self.entries.items():
            parts.append(f"[{self.basis[i]},{self.basis[j]}] += {linalg.format_scalar(v)} {self.basis[k]}")
        return f"{self.name or 'Lie algebra'}({', '.join(self.basis)}): " + ("; ".join(parts) or "abelian")


@dataclass(frozen=True)
class ProductTable:
    basis: tuple[str, ...]
    entries: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        basis = _check_labels(self.basis)
        n = len(basis)
        clean = {}
        for (i, j, k), c in dict(self.entries).items():
            c = to_scalar(c)
            for idx in (i, j, k):
                if not 0 <= idx < n:
                    raise DimensionMismatch(f"entry {(i, j, k)} out of range for dim {n}")
            if c != 0:
                clean[(i, j, k)] = c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_products(cls, basis: Sequence[str], products: Mapping, name: str = "") -> "ProductTable":
        """Build from ``{(x, y): {z: coeff}}`` keyed by labels or indices."""
        basis = _check_labels(basis)
        entries: dict[tuple[int, int, int], Fraction] = {}
        for (x, y), out in products.items():
            i, j = _index(basis, x), _index(basis, y)
            for z, c in out.items():
                key = (i, j, _index(basis, z))
                entries[key] = entries.get(key, Fraction(0)) + to_scalar(c)
        return cls(basis, entries, name)

    @classmethod
    def from_dense(cls, basis: Sequence[str], p: Dense3, name: str = "") -> "ProductTable":
        n = len(basis)
        entries = {
            (i, j, k): p[i][j][k] for i in range(n) for j in range(n) for k in range(n) if p[i][j][k] != 0
        }
        return cls(tuple(basis), entries, name)

    @classmethod
    def zero(cls, n_or_basis: int | Sequence[str], name: str = "") -> "ProductTable":
        basis = [f"e{i}" for i in range(n_or_basis)] if isinstance(n_or_basis, int) else n_or_basis
        return cls(tuple(basis), {}, name or "zero")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, key: int | str) -> int:
        return _index(self.basis, key)

    @cached_property
    def dense(self) -> Dense3:
        n = self.dim
        p = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.entries.items():
            p[i][j][k] = v
        return p

    def product(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        p = self.dense
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                w = x[i] * y[j]
                for k in range(n):
                    if p[i][j][k]:
                        out[k] += w * p[i][j][k]
        return out

    def basis_product(self, i: int | str, j: int | str) -> Vector:
        i, j = self.index(i), self.index(j)
        return list(self.dense[i][j])

    def reordered(self, labels: Sequence[str]) -> "ProductTable":
        if sorted(labels) != sorted(self.basis):
            raise ValueError("reordering must be a permutation of the basis")
        pos = {lab: n for n, lab in enumerate(labels)}
        m = [pos[lab] for lab in self.basis]
        return ProductTable(tuple(labels), {(m[i], m[j], m[k]): v for (i, j, k), v in self.entries.items()}, self.name)

    def relabeled(self, labels: Sequence[str]) -> "ProductTable":
        return ProductTable(tuple(labels), self.entries, self.name)

    def same_as(self, other: "ProductTable") -> bool:
        if sorted(self.basis) != sorted(other.basis):
            return False
        return self.reordered(other.basis).entries == other.entries

    def as_float_array(self):
        import numpy as np

        n = self.dim
        arr = np.zeros((n, n, n))
        for (i, j, k), v in self.entries.items():
            arr[i, j, k] = float(v)
        return arr

    def __str__(self):
        rows = []
        for i, j in itertools.product(range(self.dim), repeat=2):
            vec = self.dense[i][j]
            if any(vec):
                rows.append(f"{self.basis[i]}.{self.basis[j]} = {format_vector(vec, self.basis)}")
        return f"{self.name or 'product'}: " + ("; ".join(rows) or "zero")


def format_vector(vec: Sequence[Fraction], basis: Sequence[str]) -> str:
    terms = []
    for c, lab in zip(vec, basis):
        if c == 0:
            continue
        if c == 1:
            terms.append(lab)
        elif c == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{linalg.format_scalar(c)}*{lab}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


SYMMETRY_FLAGS = ("symmetric", "antisymmetric", "none")


@dataclass(frozen=True)
class BilinearForm:
    """Matrix ``m[i][j] = f(e_i, e_j)`` with a declared symmetry flag."""

    matrix: tuple[tuple[Fraction, ...], ...]
    symmetry: str = "none"
    basis: tuple[str, ...] | None = None

    def __post_init__(self):
        m = tuple(tuple(to_scalar(x) for x in row) for row in self.matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise DimensionMismatch("bilinear form matrix must be square")
        if self.symmetry not in SYMMETRY_FLAGS:
            raise ValueError(f"symmetry flag must be one of {SYMMETRY_FLAGS}")
        for i in range(n):
            for j in range(n):
                if self.symmetry == "symmetric" and m[i][j] != m[j][i]:
                    raise ValueError("form declared symmetric is not")
                if self.symmetry == "antisymmetric" and m[i][j] != -m[j][i]:
                    raise ValueError("form declared antisymmetric is not")
        if self.basis is not None and len(self.basis) != n:
            raise DimensionMismatch("basis length does not match form size")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], object], symmetry: str = "none",
                     basis: Sequence[str] | None = None) -> "BilinearForm":
        """Entries for (i, j); with a symmetry flag the mirrored entry is filled in."""
        m = linalg.zeros(n, n)
        for (i, j), c in entries.items():
            c = to_scalar(c)
            m[i][j] = c
            if symmetry == "symmetric":
                m[j][i] = c
            elif symmetry == "antisymmetric":
                m[j][i] = -c
        return cls(tuple(map(tuple, m)), symmetry, tuple(basis) if basis else None)

    @classmethod
    def elementary(cls, n: int, combo: Mapping[tuple[int, int], object]) -> "BilinearForm":
        """Linear combination of elementary matrices E_ij with 1-based indices."""
        m = linalg.zeros(n, n)
        for (i, j), c in combo.items():
            m[i - 1][j - 1] += to_scalar(c)
        return cls(tuple(map(tuple, m)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((x[i] * self.matrix[i][j] * y[j] for i in range(self.dim) for j in range(self.dim)
                    if x[i] and y[j]), Fraction(0))

    def flat(self) -> Vector:
        return [x for row in self.matrix for x in row]

    def is_nondegenerate(self) -> bool:
        return linalg.rank(self.rows()) == self.dim


@dataclass
class CheckReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _same_dim(*objs):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimensions differ: {sorted(dims)}")


def check_jacobi(lie: StructureConstants) -> CheckReport:
    """Exact Jacobi identity over all basis triples; violations carry (i, j, k, l, residual)."""
    n = lie.dim
    c = lie.dense
    # support of each bracket, so the inner sums skip zero structure constants
    nz = [[[m for m in range(n) if c[i][j][m]] for j in range(n)] for i in range(n)]
    violations = []
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            s = Fraction(0)
            for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
                for m in nz[a][b]:
                    if c[m][d][l]:
                        s += c[a][b][m] * c[m][d][l]
            if s != 0:
                violations.append((i, j, k, l, s))
    return CheckReport(not violations, violations)


def associator(P: ProductTable, i: int, j: int, k: int) -> Vector:
    """(e_i e_j) e_k - e_i (e_j e_k)."""
    n = P.dim
    p = P.dense
    out = [Fraction(0)] * n
    for m in range(n):
        a, b = p[i][j][m], p[j][k][m]
        for l in range(n):
            out[l] += a * p[m][k][l] - b * p[i][m][l]
    return out


def is_left_symmetric(P: ProductTable) -> CheckReport:
    """Associator symmetric in its first two slots, every basis triple; violations are (i, j, k, residual)."""
    n = P.dim
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                a = associator(P, i, j, k)
                b = associator(P, j, i, k)
                r = [x - y for x, y in zip(a, b)]
                if any(r):
                    violations.append((i, j, k, r))
    return CheckReport(not violations, violations)


def commutator_bracket(P: ProductTable) -> StructureConstants:
    n = P.dim
    p = P.dense
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = p[i][j][k] - p[j][i][k]
                if v:
                    entries[(i, j, k)] = v
    return StructureConstants(P.basis, entries, f"[,] of {P.name}" if P.name else "")


def is_compatible(P: ProductTable, lie: StructureConstants) -> bool:
    _same_dim(P, lie)
    return commutator_bracket(P).entries == lie.entries


def left_mult(P: ProductTable, i: int | str) -> Matrix:
    """L_{e_i}: column j is e_i . e_j."""
    i = P.index(i)
    n = P.dim
    return [[P.dense[i][j][k] for j in range(n)] for k in range(n)]


def right_mult(P: ProductTable, i: int | str) -> Matrix:
    """R_{e_i}: column j is e_j . e_i."""
    i = P.index(i)
    n = P.dim
    return [[P.dense[j][i][k] for j in range(n)] for k in range(n)]


def _combination(mats: Sequence[Matrix], coeffs: Sequence[Fraction]) -> Matrix:
    n = len(mats[0])
    out = linalg.zeros(n, n)
    for m, c in zip(mats, coeffs):
        if c:
            out = linalg.add(out, linalg.scale(c, m))
    return out


def operator_relations_check(P: ProductTable, lie: StructureConstants) -> bool:
    """[L_x, L_y] = L_[x,y] for the operators of a product written in compatible form.

    The relations only characterise flat torsion-free products once the left
    multiplications are parametrised compatibly with the bracket, so the torsion
    condition L_x y - L_y x = [x, y] is part of the check.
    """
    _same_dim(P, lie)
    if not is_compatible(P, lie):
        return False
    n = P.dim
    Ls = [left_mult(P, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            target = _combination(Ls, lie.dense[i][j])
            if linalg.commutator(Ls[i], Ls[j]) != target:
                return False
    return True


def torsion(P: ProductTable, lie: StructureConstants) -> Dense3:
    """T[i][j][k]: e_k-component of e_i e_j - e_j e_i - [e_i, e_j]."""
    _same_dim(P, lie)
    n = P.dim
    p, c = P.dense, lie.dense
    return [[[p[i][j][k] - p[j][i][k] - c[i][j][k] for k in range(n)] for j in range(n)] for i in range(n)]


def curvature(P: ProductTable, lie: StructureConstants) -> list[Dense3]:
    """R[i][j][k][l]: e_l-component of e_i(e_j e_k) - e_j(e_i e_k) - [e_i, e_j] e_k."""
    _same_dim(P, lie)
    n = P.dim
    Ls = [left_mult(P, i) for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            Rij = linalg.sub(linalg.commutator(Ls[i], Ls[j]), _combination(Ls, lie.dense[i][j]))
            # Rij[l][k] -> R[i][j][k][l]
            row.append([[Rij[l][k] for l in range(n)] for k in range(n)])
        out.append(row)
    return out


def tensor_is_zero(t) -> bool:
    if isinstance(t, list):
        return all(tensor_is_zero(x) for x in t)
    return t == 0


def is_flat(P: ProductTable, lie: StructureConstants) -> bool:
    return tensor_is_zero(curvature(P, lie))


def is_torsion_free(P: ProductTable, lie: StructureConstants) -> bool:
    return tensor_is_zero(torsion(P, lie))


def completeness_trace_check(P: ProductTable) -> bool:
    """All right multiplications trace-free (sufficient for geodesic completeness)."""
    return all(linalg.trace(right_mult(P, i)) == 0 for i in range(P.dim))


def right_traces(P: ProductTable) -> list[Fraction]:
    return [linalg.trace(right_mult(P, i)) for i in range(P.dim)]


def is_unimodular(lie: StructureConstants) -> bool:
    return all(linalg.trace(lie.ad(i)) == 0 for i in range(lie.dim))


def unit(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v
