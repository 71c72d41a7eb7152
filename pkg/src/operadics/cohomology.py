"""Exact cohomology of a binary multiplication via coboundary matrices.

Given exact structure constants for a degree-2 multiplication mu on a
d-dimensional module, the coboundary f -> [f, mu] restricts to a linear map
from degree-n operations (d**(n+1) coefficients) to degree-(n+1) operations.
This module builds those matrices on the elementary basis, computes exact
ranks by fraction-free (Bareiss) elimination, and solves preimage problems
by rational Gauss-Jordan elimination.  Cohomology dimensions follow the
usual convention that nothing maps into degree 0:

    dim H^n = dim Ker(d | C^n) - rank(d | C^(n-1)),   rank(d | C^(-1)) = 0.

The complex only makes sense when mu is associative (the coboundary squares
to the action of the associator tensor); betti_table refuses non-associative
input, while coboundary_matrix merely warns, since the matrix itself is
still well defined.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .braces import mu_squared
from .coboundary import coboundary
from .errors import (
    DegreeMismatchError,
    NotAssociativeError,
    ParseError,
    SizeCapError,
)
from .multiop import ENDO, SIZE_CAP, MultiOp, is_zero, op_norm
from .scalars import format_exact, parse_exact


@dataclass(frozen=True)
class AlgebraSpec:
    """A named binary multiplication given by exact structure constants."""

    name: str
    dim: int
    mu: MultiOp

    @classmethod
    def from_structure_constants(cls, name: str, dim: int, values) -> "AlgebraSpec":
        return cls(name, dim, MultiOp(dim, 2, ENDO, _exact_array(values)))

    def is_associative(self) -> bool:
        return is_zero(mu_squared(self.mu))


@dataclass(frozen=True)
class CoboundaryMatrix:
    """The coboundary C^n -> C^(n+1) on the elementary basis.

    entries[r][c] is the coefficient of basis element r of the target in the
    coboundary of basis element c of the source.
    """

    n: int
    rows: int
    cols: int
    entries: tuple


@dataclass(frozen=True)
class BettiTable:
    """Per-degree dimensions of the coboundary complex, degrees 0..n_max."""

    name: str
    dim: int
    n_max: int
    dims: tuple[int, ...]
    ranks: tuple[int, ...]
    kernels: tuple[int, ...]
    betti: tuple[int, ...]


def _exact_array(values) -> np.ndarray:
    """Normalize parsed scalars: integral Fractions become plain ints."""
    out = []
    for v in values:
        if isinstance(v, Fraction) and v.denominator == 1:
            out.append(int(v))
        elif isinstance(v, (int, Fraction)):
            out.append(v)
        else:
            raise ParseError(f"exact scalar expected, got {type(v).__name__}")
    dtype = object if any(isinstance(v, Fraction) for v in out) else np.int64
    return np.array(out, dtype=dtype)


def algebra_from_json(text: str) -> AlgebraSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("algebra file must contain a JSON object")
    try:
        name = doc["name"]
        dim = doc["dim"]
        raw = doc["mu"]
    except KeyError as exc:
        raise ParseError(f"algebra file is missing key {exc}") from None
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("'dim' must be a positive integer")
    if not isinstance(raw, list) or len(raw) != dim**3:
        raise ParseError(f"'mu' must list {dim**3} scalars for dim {dim}")
    values = [parse_exact(s) if isinstance(s, str) else _exact_int(s) for s in raw]
    return AlgebraSpec.from_structure_constants(name, dim, values)


def _exact_int(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"exact scalar expected, got {value!r}")
    return value


def algebra_to_json(spec: AlgebraSpec) -> str:
    doc = {
        "name": spec.name,
        "dim": spec.dim,
        "mu": [format_exact(v) for v in spec.mu.coeffs.tolist()],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_algebra(path) -> AlgebraSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return algebra_from_json(text)


def save_algebra(spec: AlgebraSpec, path) -> None:
    Path(path).write_text(algebra_to_json(spec))


def basis_op(dim: int, degree: int, index: int, variance: str = ENDO) -> MultiOp:
    size = dim ** (degree + 1)
    data = np.zeros(size, dtype=np.int64)
    data[index] = 1
    return MultiOp(dim, degree, variance, data)


def coboundary_matrix(spec: AlgebraSpec, n: int) -> CoboundaryMatrix:
    """Matrix of the coboundary on degree-n operations, exact entries."""
    if n < 0:
        raise DegreeMismatchError(f"cochain degree must be >= 0, got {n}")
    if not spec.is_associative():
        warnings.warn(
            f"mu of {spec.name!r} is not associative; the matrix is still "
            "well defined but its cohomology is not",
            stacklevel=2,
        )
    d = spec.dim
    rows = d ** (n + 2)
    cols = d ** (n + 1)
    if rows > SIZE_CAP:
        raise SizeCapError(f"coboundary target needs {rows} coefficients")
    columns = []
    for c in range(cols):
        image = coboundary(spec.mu, basis_op(d, n, c))
        columns.append(image.coeffs.tolist())
    entries = tuple(tuple(columns[c][r] for c in range(cols)) for r in range(rows))
    return CoboundaryMatrix(n=n, rows=rows, cols=cols, entries=entries)


def _entry_rows(matrix) -> list[list]:
    if isinstance(matrix, CoboundaryMatrix):
        return [list(row) for row in matrix.entries]
    return [list(row) for row in matrix]


def _clear_denominators(rows: list[list]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        mult = 1
        for x in fracs:
            mult = mult * x.denominator // math.gcd(mult, x.denominator)
        out.append([int(x * mult) for x in fracs])
    return out


def exact_rank(matrix) -> int:
    """Rank of an exact matrix by fraction-free (Bareiss) elimination.

    Denominators are cleared per row first, so the elimination runs on
    integers; every division in the update is exact by the Sylvester
    identity, which the divmod below double-checks.
    """
    m = _clear_denominators(_entry_rows(matrix))
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot_row = m[rank]
        pivot = pivot_row[col]
        for r in range(rank + 1, nrows):
            cur = m[r]
            factor = cur[col]
            for c in range(col + 1, ncols):
                quot, rem = divmod(cur[c] * pivot - factor * pivot_row[c], prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination drifted")
                cur[c] = quot
            cur[col] = 0
        prev = pivot
        rank += 1
    return rank


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form over the rationals."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        lead = rows[r]
        for k in range(nrows):
            if k != r and rows[k][c] != 0:
                factor = rows[k][c]
                rows[k] = [x - factor * y for x, y in zip(rows[k], lead)]
        pivots.append(c)
        r += 1
    return rows, pivots


def solve_linear(matrix, rhs):
    """One exact solution x of M x = rhs, or None if inconsistent."""
    rows = _entry_rows(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(rhs[k])] for k, row in enumerate(rows)
    ]
    ncols = len(rows[0]) if rows else 0
    reduced, pivots = _rref(aug)
    for k in range(len(pivots), len(reduced)):
        if reduced[k][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row_idx, col in enumerate(pivots):
        if col == ncols:
            return None
        x[col] = reduced[row_idx][-1]
    return x


def nullspace(matrix) -> list[list[Fraction]]:
    """Basis of the exact kernel, one vector per free column."""
    rows = [[Fraction(x) for x in row] for row in _entry_rows(matrix)]
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = _rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row_idx, col in enumerate(pivots):
            vec[col] = -reduced[row_idx][free]
        basis.append(vec)
    return basis


def default_n_max(dim: int) -> int:
    """Largest cochain degree tabulated by default, sized to stay quick."""
    if dim <= 2:
        return 4
    if dim == 3:
        return 3
    return 2


def _require_associative(spec: AlgebraSpec):
    square = mu_squared(spec.mu)
    if not is_zero(square):
        raise NotAssociativeError(
            f"mu of {spec.name!r} is not associative: "
            f"op_norm(mu.mu) = {op_norm(square)}"
        )


def betti_table(spec: AlgebraSpec, n_max: int | None = None) -> BettiTable:
    """Exact cohomology dimensions of an associative multiplication."""
    _require_associative(spec)
    if n_max is None:
        n_max = default_n_max(spec.dim)
    if n_max < 0:
        raise DegreeMismatchError(f"n_max must be >= 0, got {n_max}")
    if spec.dim ** (n_max + 2) > SIZE_CAP:
        raise SizeCapError(
            f"dim {spec.dim} with n_max {n_max} exceeds the coefficient cap"
        )
    dims = []
    ranks = []
    kernels = []
    betti = []
    prev_rank = 0
    for n in range(n_max + 1):
        dim_n = spec.dim ** (n + 1)
        rank_n = exact_rank(coboundary_matrix(spec, n))
        kernel_n = dim_n - rank_n
        dims.append(dim_n)
        ranks.append(rank_n)
        kernels.append(kernel_n)
        betti.append(kernel_n - prev_rank)
        prev_rank = rank_n
    return BettiTable(
        name=spec.name,
        dim=spec.dim,
        n_max=n_max,
        dims=tuple(dims),
        ranks=tuple(ranks),
        kernels=tuple(kernels),
        betti=tuple(betti),
    )


def is_coboundary(spec: AlgebraSpec, f: MultiOp):
    """A preimage g with coboundary(mu, g) = f, or None if f is not exact.

    Only degrees >= 1 are meaningful: nothing maps into degree 0.
    """
    _require_associative(spec)
    if f.degree < 1:
        raise DegreeMismatchError("degree-0 operations have no preimage degree")
    matrix = coboundary_matrix(spec, f.degree - 1)
    solution = solve_linear(matrix, [Fraction(x) for x in f.coeffs.tolist()])
    if solution is None:
        return None
    return MultiOp(spec.dim, f.degree - 1, f.variance, _exact_array(solution))


def cocycle_basis(spec: AlgebraSpec, degree: int) -> list[MultiOp]:
    """Integer basis of the kernel of the coboundary in the given degree."""
    _require_associative(spec)
    vectors = nullspace(coboundary_matrix(spec, degree))
    basis = []
    for vec in vectors:
        mult = 1
        for x in vec:
            mult = mult * x.denominator // math.gcd(mult, x.denominator)
        basis.append(
            MultiOp(spec.dim, degree, ENDO, _exact_array([x * mult for x in vec]))
        )
    return basis


def random_cocycle(rng, spec: AlgebraSpec, degree: int, basis=None) -> MultiOp:
    """Random integer combination of kernel basis vectors (a cocycle)."""
    if basis is None:
        basis = cocycle_basis(spec, degree)
    out = MultiOp(spec.dim, degree, ENDO, np.zeros(spec.dim ** (degree + 1), np.int64))
    for b in basis:
        out = out + rng.randint(-3, 3) * b
    return out


def complex_property(spec: AlgebraSpec, n: int) -> bool:
    """rank(d|C^(n-1)) + rank(d|C^n) <= dim C^n, the image-inside-kernel check."""
    rank_prev = exact_rank(coboundary_matrix(spec, n - 1)) if n >= 1 else 0
    rank_n = exact_rank(coboundary_matrix(spec, n))
    return rank_prev + rank_n <= spec.dim ** (n + 1)
