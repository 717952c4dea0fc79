"""Chain complexes of exact rational matrices and their cohomology."""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .graded import StructuralError
from .linalg import Mat, Vec, ZERO


class ChainComplex:
    """Finite complex d_i: C^{degrees[i]} -> C^{degrees[i+1]}.

    ``dims[i]`` is the dimension at ``degrees[i]``; ``maps[i]`` is the matrix
    of the differential out of slot i (dims[i+1] x dims[i] rows-by-columns).
    Construction rejects data with d∘d != 0.
    """

    def __init__(self, degrees: list[int], dims: list[int], maps: list[Mat]):
        if len(degrees) != len(dims):
            raise StructuralError("degrees and dims differ in length")
        if sorted(set(degrees)) != list(degrees):
            raise StructuralError("degrees must be strictly increasing and distinct")
        if len(maps) != max(len(dims) - 1, 0):
            raise StructuralError("expected one map per consecutive degree pair")
        for i, m in enumerate(maps):
            if len(m) != dims[i + 1] or any(len(row) != dims[i] for row in m):
                raise StructuralError(
                    f"map {i} has wrong shape, expected {dims[i+1]}x{dims[i]}"
                )
        for i in range(len(maps) - 1):
            if dims[i] and dims[i + 1] and dims[i + 2]:
                comp = linalg.matmul(maps[i + 1], maps[i])
                if not linalg.is_zero_matrix(comp):
                    raise StructuralError(
                        f"d∘d != 0 between degrees {degrees[i]} and {degrees[i+2]}"
                    )
        self.degrees = list(degrees)
        self.dims = list(dims)
        self.maps = [linalg.copy_matrix(m) for m in maps]

    def slot(self, degree: int) -> int:
        try:
            return self.degrees.index(degree)
        except ValueError:
            raise StructuralError(f"degree {degree} not present") from None

    def outgoing(self, slot: int) -> Mat | None:
        if slot < len(self.maps):
            return self.maps[slot]
        return None

    def incoming(self, slot: int) -> Mat | None:
        if slot >= 1:
            return self.maps[slot - 1]
        return None


def cohomology(complex_: ChainComplex, degree: int) -> tuple[int, list[Vec], Mat]:
    """Cohomology at one degree: dimension, representatives, projection.

    Representatives span a complement of the image inside the kernel.  The
    projection matrix sends kernel coordinates (in the returned kernel basis
    ordering image-basis-first) to cohomology coordinates; concretely it maps
    ambient cycles by solving against [image | representatives].
    """
    slot = complex_.slot(degree)
    n = complex_.dims[slot]
    if n == 0:
        return 0, [], []
    out = complex_.outgoing(slot)
    if out is not None and complex_.dims[slot + 1] > 0:
        kernel = linalg.kernel_basis(out)
    else:
        kernel = [
            [Fraction(1) if i == j else ZERO for i in range(n)] for j in range(n)
        ]
    inc = complex_.incoming(slot)
    image: list[Vec] = []
    if inc is not None and complex_.dims[slot - 1] > 0:
        image = linalg.column_space_basis(inc)
    # extend the image basis to a basis of the kernel; the added vectors
    # are the cohomology representatives (first-kernel-columns rule)
    chosen = list(image)
    reps: list[Vec] = []
    current = linalg.rank(linalg.columns_matrix(chosen, n)) if chosen else 0
    for v in kernel:
        trial = linalg.columns_matrix(chosen + [v], n)
        r = linalg.rank(trial)
        if r > current:
            chosen.append(v)
            reps.append(v)
            current = r
    h_dim = len(reps)
    # projection: cycle -> coordinates on representatives modulo image
    basis = linalg.columns_matrix(image + reps, n)
    projection: Mat = []
    if h_dim:
        rows = [[] for _ in range(h_dim)]
        for v in kernel:
            sol = linalg.solve(basis, v)
            if sol is None:
                raise StructuralError("kernel vector escaped image+representative span")
            for i in range(h_dim):
                rows[i].append(sol[len(image) + i])
        projection = rows
    return h_dim, reps, projection


def betti_numbers(complex_: ChainComplex) -> dict[int, int]:
    return {d: cohomology(complex_, d)[0] for d in complex_.degrees}
