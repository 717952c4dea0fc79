"""Differential graded Lie algebras with invariant bilinear forms.

Conventions, fixed once and validated on the shipped examples:

    antisymmetry   [x,y] = -(-1)^{|x||y|} [y,x]
    Leibniz        d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
    Jacobi         [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    d-skewness     (dx,y) + (-1)^{|x|} (x,dy) = 0
    invariance     ([x,y],z) = (x,[y,z])

The even and odd parts are orthogonal; the form restricts symmetrically to
the even part and skew-symmetrically to the odd part.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .complexes import ChainComplex, cohomology
from .graded import (
    EVEN,
    ODD,
    GradedSpace,
    GradedVector,
    InputError,
    StructureTensor,
    apply_tensor,
)
from .integrate import rk4_path
from .linalg import Mat, ZERO
from .validation import ValidationReport


class BilinearForm:
    """Even bilinear form stored as a full matrix over the basis."""

    def __init__(self, space: GradedSpace, entries: dict[tuple[str, str], Fraction] | Mat):
        self.space = space
        n = space.dim
        if isinstance(entries, dict):
            m = linalg.zeros(n, n)
            for (a, b), c in entries.items():
                m[space.index[a]][space.index[b]] = Fraction(c)
        else:
            m = linalg.copy_matrix(entries)
        self.matrix = m

    def value(self, u: GradedVector, v: GradedVector):
        total = ZERO
        for la, ca in u.coeffs.items():
            row = self.matrix[self.space.index[la]]
            for lb, cb in v.coeffs.items():
                c = row[self.space.index[lb]]
                if c != 0:
                    total = total + ca * cb * c
        return total

    def block(self, rows: list[int], cols: list[int]) -> Mat:
        return [[self.matrix[i][j] for j in cols] for i in rows]


class DglAlgebra:
    """Graded space + differential + bracket + optional bilinear form.

    Construction checks dimensional consistency only; axioms are checked by
    validate_dgla / validate_form.  Instances are immutable by convention.
    """

    def __init__(
        self,
        space: GradedSpace,
        d: StructureTensor,
        bracket: StructureTensor,
        form: BilinearForm | None = None,
        name: str = "",
        metadata: dict | None = None,
    ):
        if d.arity != 1 or d.space != space or d.output_space != space:
            raise InputError("d must be an arity-1 endomorphism tensor of the space")
        if bracket.arity != 2 or bracket.space != space or bracket.output_space != space:
            raise InputError("bracket must be an arity-2 tensor on the space")
        if d.shift is not None and d.shift % 2 != 1:
            raise InputError("differential must have odd shift")
        if bracket.shift is not None and bracket.shift % 2 != 0:
            raise InputError("bracket must have even shift")
        if form is not None and form.space != space:
            raise InputError("form lives on a different space")
        self.space = space
        self.d = d
        self.bracket = bracket
        self.form = form
        self.name = name
        self.metadata = metadata or {}

    # -- basic evaluation ------------------------------------------------

    def diff(self, v: GradedVector) -> GradedVector:
        return apply_tensor(self.d, [v])

    def brk(self, u: GradedVector, v: GradedVector) -> GradedVector:
        return apply_tensor(self.bracket, [u, v])

    def basis_vector(self, label: str) -> GradedVector:
        return self.space.basis_vector(label)

    def even_indices(self) -> list[int]:
        return self.space.indices_of_parity(EVEN)

    def odd_indices(self) -> list[int]:
        return self.space.indices_of_parity(ODD)

    def even_labels(self) -> list[str]:
        return [self.space.labels[i] for i in self.even_indices()]

    def odd_labels(self) -> list[str]:
        return [self.space.labels[i] for i in self.odd_indices()]

    def d_matrix(self, from_parity: int) -> Mat:
        """Matrix of d restricted to one parity block (rows: other parity)."""
        src = self.space.indices_of_parity(from_parity)
        dst = self.space.indices_of_parity(1 - from_parity)
        cols = []
        for i in src:
            col = self.d.output_column((i,))
            cols.append([col[j] for j in dst])
        return [[cols[c][r] for c in range(len(src))] for r in range(len(dst))]

    def ad_matrix(self, a: GradedVector, domain: list[int], codomain: list[int]) -> Mat:
        """Matrix of y -> [a, y] between index blocks."""
        cols = []
        for i in domain:
            out = self.brk(a, GradedVector(self.space, {self.space.labels[i]: Fraction(1)}))
            coords = out.coords()
            cols.append([coords[j] for j in codomain])
        return [[cols[c][r] for c in range(len(domain))] for r in range(len(codomain))]


def _require_exact(g: DglAlgebra) -> None:
    if not (g.d.is_exact() and g.bracket.is_exact()):
        raise InputError("axiom validation requires exact rational data")


def validate_dgla(g: DglAlgebra) -> ValidationReport:
    """Check d²=0, graded Leibniz, graded Jacobi, and bracket antisymmetry.

    Exhaustive over basis tuples; each failing check reports its first
    offending tuple.
    """
    _require_exact(g)
    report = ValidationReport()
    space = g.space
    n = space.dim
    labels = space.labels

    witness = None
    try:
        g.bracket.validate_symmetry()
    except Exception as exc:  # noqa: BLE001 - report, not raise
        witness = {"detail": str(exc)}
    report.add("bracket_antisymmetry", witness is None, witness)

    witness = None
    for i in range(n):
        v = space.basis_vector(labels[i])
        ddv = g.diff(g.diff(v))
        if not ddv.is_zero():
            witness = {"basis": labels[i], "value": repr(ddv)}
            break
    report.add("d_squared_zero", witness is None, witness)

    witness = None
    for i in range(n):
        x = space.basis_vector(labels[i])
        px = space.parities[i]
        for j in range(n):
            y = space.basis_vector(labels[j])
            lhs = g.diff(g.brk(x, y))
            rhs = g.brk(g.diff(x), y) + g.brk(x, g.diff(y)).scaled(Fraction((-1) ** px))
            if lhs != rhs:
                witness = {"pair": (labels[i], labels[j]), "lhs": repr(lhs), "rhs": repr(rhs)}
                break
        if witness:
            break
    report.add("leibniz", witness is None, witness)

    witness = None
    for i in range(n):
        x = space.basis_vector(labels[i])
        px = space.parities[i]
        for j in range(n):
            y = space.basis_vector(labels[j])
            py = space.parities[j]
            sign = Fraction((-1) ** (px * py))
            for k in range(n):
                z = space.basis_vector(labels[k])
                lhs = g.brk(x, g.brk(y, z))
                rhs = g.brk(g.brk(x, y), z) + g.brk(y, g.brk(x, z)).scaled(sign)
                if lhs != rhs:
                    witness = {"triple": (labels[i], labels[j], labels[k])}
                    break
            if witness:
                break
        if witness:
            break
    report.add("jacobi", witness is None, witness)
    return report


def validate_form(g: DglAlgebra) -> ValidationReport:
    """Check block orthogonality, symmetry types, d-skewness, invariance."""
    _require_exact(g)
    if g.form is None:
        raise InputError("algebra carries no bilinear form")
    report = ValidationReport()
    space = g.space
    n = space.dim
    B = g.form.matrix
    par = space.parities
    labels = space.labels

    witness = None
    for i in range(n):
        for j in range(n):
            if par[i] != par[j] and B[i][j] != 0:
                witness = {"pair": (labels[i], labels[j]), "value": str(B[i][j])}
                break
        if witness:
            break
    report.add("block_orthogonality", witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            if par[i] == EVEN == par[j] and B[i][j] != B[j][i]:
                witness = {"pair": (labels[i], labels[j])}
                break
        if witness:
            break
    report.add("even_block_symmetric", witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            if par[i] == ODD == par[j] and B[i][j] != -B[j][i]:
                witness = {"pair": (labels[i], labels[j])}
                break
        if witness:
            break
    report.add("odd_block_antisymmetric", witness is None, witness)

    witness = None
    for i in range(n):
        x = space.basis_vector(labels[i])
        dx = g.diff(x)
        sign = Fraction((-1) ** par[i])
        for j in range(n):
            y = space.basis_vector(labels[j])
            val = g.form.value(dx, y) + sign * g.form.value(x, g.diff(y))
            if val != 0:
                witness = {"pair": (labels[i], labels[j]), "value": str(val)}
                break
        if witness:
            break
    report.add("d_skewness", witness is None, witness)

    witness = None
    for i, j, k in itertools.product(range(n), repeat=3):
        x = space.basis_vector(labels[i])
        y = space.basis_vector(labels[j])
        z = space.basis_vector(labels[k])
        lhs = g.form.value(g.brk(x, y), z)
        rhs = g.form.value(x, g.brk(y, z))
        if lhs != rhs:
            witness = {"triple": (labels[i], labels[j], labels[k]), "lhs": str(lhs), "rhs": str(rhs)}
            break
    report.add("invariance", witness is None, witness)
    return report


# -- nondegeneracy on cohomology ------------------------------------------


class DualComplexPair:
    """A two-parity complex, its dual, and the pairing map kappa.

    kappa sends x to beta(x, -); with the dual differential
    d*(phi) = -(-1)^{|phi|} phi∘d it is a chain map whenever d-skewness
    holds.  Matrices act between parity blocks.
    """

    def __init__(self, g: DglAlgebra):
        if g.form is None:
            raise InputError("kappa needs a bilinear form")
        self.even = g.even_indices()
        self.odd = g.odd_indices()
        self.d_even = g.d_matrix(EVEN)   # even -> odd block matrix
        self.d_odd = g.d_matrix(ODD)     # odd -> even
        # kappa restricted to blocks: beta pairs even with even, odd with odd
        self.kappa_even = g.form.block(self.even, self.even)
        self.kappa_odd = g.form.block(self.odd, self.odd)

    def kappa_block(self, parity: int) -> Mat:
        return self.kappa_even if parity == EVEN else self.kappa_odd

    def dual_d_matrix(self, from_parity: int) -> Mat:
        # d* : (E_p)* -> (E_{p+1})* given by -(-1)^p (d_{p})^T acting on the
        # dual block; as a matrix over dual bases this is the transpose of
        # the incoming differential with the parity sign.
        sign = Fraction((-1) ** (from_parity + 1))
        incoming = self.d_odd if from_parity == EVEN else self.d_even
        return linalg.scale(linalg.transpose(incoming), sign)

    def chain_map_defect(self) -> Mat | None:
        """Zero iff kappa∘d = d*∘kappa on both parities; returns a defect."""
        for parity in (EVEN, ODD):
            d_block = self.d_even if parity == EVEN else self.d_odd
            target = self.kappa_block(1 - parity)
            lhs = linalg.matmul(target, d_block) if d_block else []
            rhs = linalg.matmul(self.dual_d_matrix(parity), self.kappa_block(parity))
            diff = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(lhs, rhs)]
            if not linalg.is_zero_matrix(diff):
                return diff
        return None


def parity_cohomology(g: DglAlgebra, parity: int) -> tuple[int, list[list[Fraction]]]:
    """Cohomology of one parity block of (G, d): dim and representatives.

    Representatives are coordinate vectors over the block's index list.
    """
    out = g.d_matrix(parity)
    inc = g.d_matrix(1 - parity)
    block = g.space.indices_of_parity(parity)
    n = len(block)
    other = g.space.dim - n
    degrees = [0, 1, 2]
    dims = [other, n, other]
    maps = [inc, out]
    cx = ChainComplex(degrees, dims, maps)
    dim, reps, _ = cohomology(cx, 1)
    return dim, reps


def check_nondegenerate_on_cohomology(g: DglAlgebra) -> dict:
    """Decide whether the form induces an isomorphism on cohomology.

    Returns {"nondegenerate": bool, "witness": coords-or-None,
    "by_parity": {...}}.  The witness is a cohomology class paired
    trivially against every class of its parity.
    """
    if g.form is None:
        raise InputError("nondegeneracy needs a bilinear form")
    result = {"nondegenerate": True, "witness": None, "by_parity": {}}
    for parity in (EVEN, ODD):
        dim, reps = parity_cohomology(g, parity)
        block = g.space.indices_of_parity(parity)
        beta = g.form.block(block, block)
        # pairing matrix of the descended form on cohomology classes
        pairing = [
            [
                sum(
                    (reps[i][a] * beta[a][b] * reps[j][b] for a in range(len(block)) for b in range(len(block))),
                    ZERO,
                )
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        r = linalg.rank(pairing) if dim else 0
        result["by_parity"][parity] = {"h_dim": dim, "pairing_rank": r}
        if r < dim:
            kern = linalg.kernel_basis(pairing)
            class_coords = kern[0]
            ambient = [ZERO] * len(block)
            for cidx, c in enumerate(class_coords):
                for a in range(len(block)):
                    ambient[a] += c * reps[cidx][a]
            labels = [g.space.labels[i] for i in block]
            witness = {lab: str(c) for lab, c in zip(labels, ambient) if c != 0}
            result["nondegenerate"] = False
            if result["witness"] is None:
                result["witness"] = {"parity": parity, "class": witness}
    return result


# -- adjoint flows ----------------------------------------------------------


def adjoint_orbit_flow(
    g: DglAlgebra,
    b0: GradedVector,
    a_path,
    steps: int,
    t_final: float = 1.0,
) -> list[tuple[float, GradedVector]]:
    """Integrate b' = [a(t), b] by RK4 from an even starting point.

    ``a_path`` maps t to an even GradedVector (piecewise-constant paths are
    the usual callers).  Returns the sampled trajectory including both
    endpoints.  Float mode: coefficients become floats immediately.
    """
    if steps <= 0:
        raise InputError("step count must be positive")
    if not b0.has_parity(EVEN):
        raise InputError("starting point must be even")

    def rhs(t: float, b: GradedVector) -> GradedVector:
        return g.brk(a_path(t), b)

    return rk4_path(rhs, b0, steps, t_final)


def constant_path(a: GradedVector):
    return lambda t: a
