"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  All
routines are deterministic: row/column scans go in index order, so pivot
choices depend only on the input matrix, never on hashing or timing.

numpy is used purely as an exact integer container with vectorized
arithmetic; there is no floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FieldScalar", "PrimeField", "QuotientMap"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldScalar:
    """A residue in F_p.  Mostly documentation; hot paths use raw ints."""

    value: int
    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "FieldScalar") -> None:
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __add__(self, other: "FieldScalar") -> "FieldScalar":
        self._check(other)
        return FieldScalar(self.value + other.value, self.p)

    def __sub__(self, other: "FieldScalar") -> "FieldScalar":
        self._check(other)
        return FieldScalar(self.value - other.value, self.p)

    def __mul__(self, other: "FieldScalar") -> "FieldScalar":
        self._check(other)
        return FieldScalar(self.value * other.value, self.p)

    def inverse(self) -> "FieldScalar":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldScalar(pow(self.value, self.p - 2, self.p), self.p)


class QuotientMap:
    """Presentation of span(Z)/span(B).

    Attributes:
        dimension: dim span(Z) - dim span(B).
        projection: (dimension x n) matrix; sends any vector of span(Z) to
            its coordinates in the quotient and every vector of span(B) to 0.
            Its behaviour outside span(Z) is unspecified.
        representatives: (n x dimension) matrix of vectors in span(Z) whose
            classes form a basis of the quotient; projection @ representatives
            is the identity.
    """

    def __init__(self, dimension: int, projection: np.ndarray,
                 representatives: np.ndarray):
        self.dimension = dimension
        self.projection = projection
        self.representatives = representatives

    def __iter__(self):
        # allows `dim, proj = quotient_map(...)` unpacking
        return iter((self.dimension, self.projection))


class PrimeField:
    """F_p together with exact matrix routines.

    Args:
        p: the characteristic; must be prime.
    """

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p >= 1 << 25:
            # keeps n * (p-1)^2 far below int64 overflow in matmul
            raise ValueError(f"characteristic {p} too large for exact int64 arithmetic")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # -- array plumbing ----------------------------------------------------

    def normalize(self, M) -> np.ndarray:
        """Coerce to an int64 array with entries reduced into [0, p)."""
        A = np.asarray(M, dtype=np.int64)
        if A.ndim != 2:
            raise ValueError(f"expected a matrix, got ndim={A.ndim}")
        return A % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        assert A.shape[1] == B.shape[0], (A.shape, B.shape)
        return (A @ B) % self.p

    def inv_scalar(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    # -- elimination -------------------------------------------------------

    def rref(self, M) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form.

        Returns:
            (R, pivots) where R is the fully reduced form of M and pivots
            lists the pivot column indices in increasing order.
        """
        A = self.normalize(M).copy()
        rows, cols = A.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
            A[r] = A[r] * self.inv_scalar(int(A[r, c])) % self.p
            col = A[:, c].copy()
            col[r] = 0
            # vectorized elimination of every other row at once
            A = (A - np.outer(col, A[r])) % self.p
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, M) -> int:
        return len(self.rref(M)[1])

    def kernel_basis(self, M) -> np.ndarray:
        """Basis of the right null space, one column per free variable.

        The basis is the standard rref one: kernel vector j has a 1 in the
        j-th free column and is supported on pivot columns otherwise, so the
        result is deterministic and in column-index order.
        """
        A = self.normalize(M)
        cols = A.shape[1]
        R, pivots = self.rref(A)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        K = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            K[fc, j] = 1
            for i, pc in enumerate(pivots):
                K[pc, j] = (-R[i, fc]) % self.p
        return K

    def solve_in_span(self, B, v) -> np.ndarray | None:
        """Coefficients x with B @ x = v, or None when v is not in span(B)."""
        B = self.normalize(B)
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1) % self.p
        if B.shape[0] != v.shape[0]:
            raise ValueError("ambient dimensions differ")
        R, pivots = self.rref(np.hstack([B, v]))
        if pivots and pivots[-1] == B.shape[1]:
            return None
        x = np.zeros(B.shape[1], dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = R[i, B.shape[1]]
        return x

    def column_space_basis(self, M) -> np.ndarray:
        """The pivot columns of M (leftmost independent subset)."""
        A = self.normalize(M)
        _, pivots = self.rref(A)
        return A[:, pivots]

    def quotient_map(self, Z, B) -> QuotientMap:
        """Present the quotient span(Z)/span(B).

        Args:
            Z: matrix whose columns span the ambient subspace.
            B: matrix whose columns span the subspace to kill.

        Raises:
            ValueError: if span(B) is not contained in span(Z).
        """
        Z = self.normalize(Z)
        B = self.normalize(B)
        if Z.shape[0] != B.shape[0]:
            raise ValueError("ambient dimensions differ")
        n = Z.shape[0]
        M = np.hstack([B, Z])
        _, pivots = self.rref(M)
        # containment is exactly rank([B Z]) == rank(Z)
        if len(pivots) != self.rank(Z):
            raise ValueError("span(B) is not contained in span(Z)")
        b_sel = [c for c in pivots if c < B.shape[1]]
        z_sel = [c - B.shape[1] for c in pivots if c >= B.shape[1]]
        reps = Z[:, z_sel]
        dim = len(z_sel)
        W = np.hstack([B[:, b_sel], reps])
        # extend W to a basis of the ambient space by identity columns
        _, piv2 = self.rref(np.hstack([W, self.identity(n)]))
        extra = [c - W.shape[1] for c in piv2 if c >= W.shape[1]]
        G = np.hstack([W, self.identity(n)[:, extra]])
        assert G.shape == (n, n)
        R3, piv3 = self.rref(np.hstack([G, self.identity(n)]))
        assert piv3 == list(range(n)), "basis extension failed"
        Ginv = R3[:, n:]
        proj = Ginv[len(b_sel):len(b_sel) + dim, :]
        assert np.array_equal(self.matmul(proj, reps), self.identity(dim))
        if B.shape[1]:
            assert not self.matmul(proj, B).any()
        return QuotientMap(dim, proj, reps)
