"""Z2-graded linear algebra over dense complex matrices.

A :class:`GradedSpace` assigns a parity bit to every basis vector; a
:class:`SuperMatrix` is a dense complex matrix between two graded spaces.
The graded tensor product :func:`graded_kron` inserts Koszul signs so that
ordinary multiplication of the flattened matrices reproduces the product
rule of graded operators,

    (X (x) Y)(X' (x) Y') = (-1)^{p(X') p(Y)} (XX') (x) (YY'),

for homogeneous factors.  The sign convention is fixed once, entrywise:

    (A (x) B)[(i,k),(j,l)] = A[i,j] * B[k,l] * (-1)^{p(k)(p(i)+p(j))}

where p(i), p(j) are the row/column parities of the A factor and p(k) is
the row parity of the B factor.  Every other module builds on this choice;
do not mix flattenings.

All values are immutable after construction and all operations are pure.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EVEN = 0
ODD = 1

_PARITY_NAMES = {0: 0, 1: 1, "even": 0, "odd": 1}


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional Z2-graded vector space: one parity bit per basis vector."""

    dim: int
    parity: tuple[int, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("graded space must have positive dimension")
        parity = tuple(_PARITY_NAMES[p] for p in self.parity)
        object.__setattr__(self, "parity", parity)
        if len(parity) != self.dim:
            raise ValueError("parity list length must equal dim")

    def tensor(self, other: "GradedSpace") -> "GradedSpace":
        """Tensor product space, basis ordered row-major, parities added mod 2."""
        par = tuple(
            (p + q) % 2 for p in self.parity for q in other.parity
        )
        return GradedSpace(self.dim * other.dim, par)

    @property
    def parity_array(self) -> np.ndarray:
        return np.asarray(self.parity, dtype=int)


#: The standard (1|1)-dimensional space, basis (even, odd).
C11 = GradedSpace(2, (EVEN, ODD))


@dataclass(frozen=True, eq=False)
class SuperMatrix:
    """Dense complex matrix between graded spaces, optionally of declared parity.

    ``parity`` is the Z2-degree of the operator when homogeneous; ``None``
    means undeclared (it can still be inferred from the entry pattern).
    """

    space_out: GradedSpace
    space_in: GradedSpace
    m: np.ndarray
    parity: int | None = None

    def __post_init__(self):
        arr = np.array(self.m, dtype=np.complex128)
        if arr.shape != (self.space_out.dim, self.space_in.dim):
            raise ValueError(
                f"entry block {arr.shape} does not match spaces "
                f"({self.space_out.dim}, {self.space_in.dim})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "m", arr)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.space_in != other.space_out:
            raise ValueError("matmul: input space of left factor must match output of right")
        par = None
        if self.parity is not None and other.parity is not None:
            par = (self.parity + other.parity) % 2
        return SuperMatrix(self.space_out, other.space_in, self.m @ other.m, par)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_same_spaces(other)
        par = self.parity if self.parity == other.parity else None
        return SuperMatrix(self.space_out, self.space_in, self.m + other.m, par)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_same_spaces(other)
        par = self.parity if self.parity == other.parity else None
        return SuperMatrix(self.space_out, self.space_in, self.m - other.m, par)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.space_out, self.space_in, -self.m, self.parity)

    def __mul__(self, scalar) -> "SuperMatrix":
        return SuperMatrix(self.space_out, self.space_in, self.m * complex(scalar), self.parity)

    __rmul__ = __mul__

    def _check_same_spaces(self, other: "SuperMatrix"):
        if self.space_out != other.space_out or self.space_in != other.space_in:
            raise ValueError("operands live on different graded spaces")

    # -- parity -------------------------------------------------------------

    def inferred_parity(self, tol: float = 0.0) -> int:
        """Parity read off from the nonzero entry pattern.

        Raises if entries of both parities exceed ``tol``; a zero matrix
        counts as even.
        """
        if self.parity is not None:
            return self.parity
        po = self.space_out.parity_array
        pi = self.space_in.parity_array
        pat = (po[:, None] + pi[None, :]) % 2
        amp = np.abs(self.m)
        even_amp = amp[pat == 0].max(initial=0.0)
        odd_amp = amp[pat == 1].max(initial=0.0)
        if even_amp > tol and odd_amp > tol:
            raise ValueError("matrix is not parity-homogeneous")
        return ODD if odd_amp > tol else EVEN

    def with_parity(self, parity: int | None) -> "SuperMatrix":
        return SuperMatrix(self.space_out, self.space_in, self.m, parity)

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        entries = [[float(z.real), float(z.imag)] for z in self.m.reshape(-1)]
        return {
            "rows": self.space_out.dim,
            "cols": self.space_in.dim,
            "parity_out": list(self.space_out.parity),
            "parity_in": list(self.space_in.parity),
            "entries": entries,
        }

    @staticmethod
    def from_dict(d: dict) -> "SuperMatrix":
        rows, cols = int(d["rows"]), int(d["cols"])
        out = GradedSpace(rows, tuple(d["parity_out"]))
        inn = GradedSpace(cols, tuple(d["parity_in"]))
        flat = np.array([complex(re, im) for re, im in d["entries"]], dtype=np.complex128)
        return SuperMatrix(out, inn, flat.reshape(rows, cols))


# -- constructors -----------------------------------------------------------


def unit(space_out: GradedSpace, space_in: GradedSpace, i: int, j: int) -> SuperMatrix:
    """Matrix unit with a single 1 at row ``i``, column ``j`` (0-based)."""
    m = np.zeros((space_out.dim, space_in.dim), dtype=np.complex128)
    m[i, j] = 1.0
    par = (space_out.parity[i] + space_in.parity[j]) % 2
    return SuperMatrix(space_out, space_in, m, par)


def identity(space: GradedSpace) -> SuperMatrix:
    return SuperMatrix(space, space, np.eye(space.dim, dtype=np.complex128), EVEN)


def zeros(space_out: GradedSpace, space_in: GradedSpace, parity: int | None = EVEN) -> SuperMatrix:
    m = np.zeros((space_out.dim, space_in.dim), dtype=np.complex128)
    return SuperMatrix(space_out, space_in, m, parity)


def from_array(arr, space_out: GradedSpace, space_in: GradedSpace | None = None,
               parity: int | None = None) -> SuperMatrix:
    return SuperMatrix(space_out, space_in or space_out, np.asarray(arr), parity)


# -- graded operations ------------------------------------------------------


def graded_kron(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """Graded Kronecker product with the entrywise Koszul sign.

    The sign ``(-1)^{p(k)(p(i)+p(j))}`` depends only on entry positions, so
    the formula applies verbatim to non-homogeneous matrices (each entry
    belongs to a unique homogeneous component).
    """
    po_a = a.space_out.parity_array
    pi_a = a.space_in.parity_array
    po_b = b.space_out.parity_array
    expo = po_b[None, :, None] * (po_a[:, None, None] + pi_a[None, None, :])
    sign = np.where(expo % 2 == 0, 1.0, -1.0)  # (i, k, j)
    block = np.kron(a.m, b.m).reshape(
        a.space_out.dim, b.space_out.dim, a.space_in.dim, b.space_in.dim
    )
    block = block * sign[:, :, :, None]
    out = a.space_out.tensor(b.space_out)
    inn = a.space_in.tensor(b.space_in)
    par = None
    if a.parity is not None and b.parity is not None:
        par = (a.parity + b.parity) % 2
    return SuperMatrix(out, inn, block.reshape(out.dim, inn.dim), par)


def graded_perm(v: GradedSpace, w: GradedSpace) -> SuperMatrix:
    """Graded permutation P: v (x) w -> w (x) v, P(x (x) y) = (-1)^{p(x)p(y)} y (x) x."""
    if v.dim != w.dim:
        raise ValueError("graded permutation needs equal-dimensional spaces")
    out = w.tensor(v)
    inn = v.tensor(w)
    m = np.zeros((out.dim, inn.dim), dtype=np.complex128)
    for c in range(v.dim):
        for d in range(w.dim):
            sign = -1.0 if v.parity[c] * w.parity[d] else 1.0
            m[d * v.dim + c, c * w.dim + d] = sign
    return SuperMatrix(out, inn, m, EVEN)


def graded_comm(a: SuperMatrix, b: SuperMatrix,
                parity_a: int | None = None, parity_b: int | None = None) -> SuperMatrix:
    """Graded commutator ab - (-1)^{p(a)p(b)} ba (an anticommutator for two odds)."""
    pa = parity_a if parity_a is not None else a.inferred_parity(tol=0.0)
    pb = parity_b if parity_b is not None else b.inferred_parity(tol=0.0)
    sign = -1.0 if pa * pb else 1.0
    return a @ b - sign * (b @ a)


def max_abs(x) -> float:
    """Largest entry magnitude of a SuperMatrix or array."""
    arr = x.m if isinstance(x, SuperMatrix) else np.asarray(x)
    if arr.size == 0:
        return 0.0
    return float(np.abs(arr).max())
