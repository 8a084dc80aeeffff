"""Orbit-reduced transfer matrices and exact full-matrix operations.

The full transfer matrix of a section configuration has rows and columns
indexed by subset masks; entry (S, T) counts covers of the complement of
S | T and is zero when S and T intersect.  Folding columns over the mask
orbits of a group that preserves the matrix gives the quotient

    q[a][b] = sum over T in orbit b of entry(rep_a, T)

which keeps the spectral radius of the full matrix and is self-adjoint
under the orbit-size weighted inner product: w_a * q[a][b] = w_b * q[b][a].
Quotient entries are assembled exactly in Python integers by enumerating
the submasks of each representative's complement.

Full-matrix operations never materialize the 2^n x 2^n integer matrix:
matrix-vector products walk the complement submasks of every row, which
costs 3^n integer operations, so traces and boundary quadratic forms stay
exact at small n.  A float64 sparse form of the full matrix is available
for cross-checking the quotient's spectral bracket.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .lattice import CapacityError
from .matchcount import CoverTable
from .symmetry import OrbitSpace

MAX_FULL_MATRIX_POINTS = 14
_FLOAT_EXACT_LIMIT = 1 << 53


@dataclass
class QuotientMatrix:
    """Orbit-folded transfer matrix with exact int64 entries and orbit weights."""

    dims: tuple[int, ...]
    kind: str
    dimer_only: bool
    entries: np.ndarray   # int64, shape (size, size)
    weights: np.ndarray   # int64, orbit cardinalities

    @property
    def size(self) -> int:
        return len(self.weights)

    def to_dense(self) -> np.ndarray:
        """Entries as float64; exact because entries are checked below 2^53."""
        return self.entries.astype(np.float64)

    def weight_vector(self) -> np.ndarray:
        return self.weights.astype(np.float64)


def build_quotient(table: CoverTable, orbits: OrbitSpace) -> QuotientMatrix:
    """Fold the full transfer matrix of `table` over mask orbits.

    The orbits must come from a group of automorphisms of the table's
    matrix; the rigid motions of the section torus qualify for the torus
    kind, which is the kind spectral radii are computed from.
    """
    if orbits.n != table.shape.n:
        raise ValueError("orbit space and cover table disagree on point count")
    counts = table.counts
    orbit_of = orbits.orbit_of
    full = table.full
    size = orbits.size
    entries = np.zeros((size, size), dtype=np.int64)
    for a, rep in enumerate(orbits.reps):
        comp = full ^ rep
        row = [0] * size
        sub = comp
        while True:
            row[orbit_of[sub]] += counts[comp ^ sub]
            if sub == 0:
                break
            sub = (sub - 1) & comp
        if max(row) >= _FLOAT_EXACT_LIMIT:
            raise CapacityError("quotient entry exceeds exact float64 range")
        entries[a] = row
    return QuotientMatrix(
        dims=table.shape.dims,
        kind=table.kind.value,
        dimer_only=table.dimer_only,
        entries=entries,
        weights=np.asarray(orbits.sizes, dtype=np.int64),
    )


def weighted_symmetry_ok(qm: QuotientMatrix) -> bool:
    """Exact check of w_a * q[a][b] == w_b * q[b][a] over all pairs."""
    w = [int(x) for x in qm.weights]
    e = qm.entries
    for a in range(qm.size):
        for b in range(a + 1, qm.size):
            if w[a] * int(e[a, b]) != w[b] * int(e[b, a]):
                return False
    return True


def matvec_exact(table: CoverTable, x: list[int]) -> list[int]:
    """Exact product of the full transfer matrix with an integer vector."""
    counts = table.counts
    full = table.full
    y = [0] * (full + 1)
    for i in range(full + 1):
        comp = full ^ i
        acc = 0
        sub = comp
        while True:
            xv = x[sub]
            if xv:
                acc += counts[comp ^ sub] * xv
            if sub == 0:
                break
            sub = (sub - 1) & comp
        y[i] = acc
    return y


def full_trace_power(table: CoverTable, q: int, orbits: OrbitSpace | None = None) -> int:
    """Exact trace of the q-th power of the full transfer matrix.

    With an orbit space supplied, only one diagonal entry per orbit is
    computed and weighted by the orbit size; the diagonal of a power is
    constant on orbits because the group conjugates the matrix to itself.
    """
    n = table.shape.n
    if n > MAX_FULL_MATRIX_POINTS:
        raise CapacityError(
            f"{n} points exceed the {MAX_FULL_MATRIX_POINTS}-point full-matrix limit"
        )
    if q < 0:
        raise ValueError("power must be nonnegative")
    if q == 0:
        return 1 << n
    if orbits is not None:
        pairs = zip(orbits.reps, orbits.sizes)
    else:
        pairs = ((i, 1) for i in range(1 << n))
    total = 0
    for rep, weight in pairs:
        x = [0] * (1 << n)
        x[rep] = 1
        for _ in range(q):
            x = matvec_exact(table, x)
        total += weight * x[rep]
    return total


def quadratic_form_count(table: CoverTable, exponent: int) -> int:
    """Exact x^T M^(exponent-2) x with boundary vector x[s] = entry(s, 0).

    The boundary vector closes both ends of a stack of `exponent` layers
    with no dimer leaving through the stacking direction, so the result
    counts covers of the section extended by a tiled layer direction.
    """
    n = table.shape.n
    if n > MAX_FULL_MATRIX_POINTS:
        raise CapacityError(
            f"{n} points exceed the {MAX_FULL_MATRIX_POINTS}-point full-matrix limit"
        )
    if exponent < 2:
        raise ValueError("quadratic form needs at least two layers")
    x = table.empty_column()
    v = x
    for _ in range(exponent - 2):
        v = matvec_exact(table, v)
    return sum(a * b for a, b in zip(x, v))


def full_matrix_sparse(table: CoverTable) -> sparse.csr_matrix:
    """Full transfer matrix as float64 CSR, for spectral cross-checks."""
    n = table.shape.n
    if n > MAX_FULL_MATRIX_POINTS:
        raise CapacityError(
            f"{n} points exceed the {MAX_FULL_MATRIX_POINTS}-point full-matrix limit"
        )
    counts = table.counts
    full = table.full
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for i in range(full + 1):
        comp = full ^ i
        sub = comp
        while True:
            c = counts[comp ^ sub]
            if c:
                if c >= _FLOAT_EXACT_LIMIT:
                    raise CapacityError("entry exceeds exact float64 range")
                rows.append(i)
                cols.append(sub)
                data.append(float(c))
            if sub == 0:
                break
            sub = (sub - 1) & comp
    mat = sparse.coo_matrix(
        (data, (rows, cols)), shape=(full + 1, full + 1), dtype=np.float64
    )
    return mat.tocsr()
