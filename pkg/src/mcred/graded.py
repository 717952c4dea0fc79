"""Graded vector spaces, Koszul signs, and structure tensors.

Scalars are exact rationals (fractions.Fraction) everywhere except the flow
integrators and the Newton solver, which work on floats.  Axiom validators
refuse float data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import ZERO

EVEN = 0
ODD = 1


class InputError(ValueError):
    """Bad arguments or malformed data supplied by the caller."""


class StructuralError(ValueError):
    """Data that parses but violates a structural invariant."""


def koszul_sign(destinations: list[int], parities: list[int]) -> Fraction:
    """Sign picked up by reordering graded elements.

    ``destinations[i]`` is the 1-based target slot of element ``i``.  The
    sign is the product of -1 over every pair of odd elements whose relative
    order is reversed; even elements move for free.
    """
    k = len(destinations)
    if len(parities) != k:
        raise InputError("koszul_sign: permutation and parity lists differ in length")
    if sorted(destinations) != list(range(1, k + 1)):
        raise InputError("koszul_sign: not a permutation of 1..k")
    sign = 1
    for i in range(k):
        for j in range(i + 1, k):
            if destinations[i] > destinations[j] and parities[i] == ODD and parities[j] == ODD:
                sign = -sign
    return Fraction(sign)


def perm_sign(perm: tuple[int, ...]) -> int:
    """Ordinary signature of a permutation given in one-line notation (0-based)."""
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def graded_perm_sign(perm: tuple[int, ...], parities: list[int], antisymmetric: bool) -> int:
    """Sign relating t(x_{perm[0]}, ..) to t(x_0, ..) for a symmetric or
    graded-antisymmetric tensor.

    ``perm`` is the argument order in one-line notation: position i holds the
    original argument perm[i].  The Koszul part counts inverted odd pairs in
    the result order; antisymmetric tensors pick up the plain signature too.
    """
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                if antisymmetric:
                    sign = -sign
                if parities[perm[i]] == ODD and parities[perm[j]] == ODD:
                    sign = -sign
    return sign


@dataclass(frozen=True)
class Grading:
    """Z or Z/2 grading; parity of degree i is always i mod 2."""

    kind: str  # "z" or "z2"

    def __post_init__(self):
        if self.kind not in ("z", "z2"):
            raise InputError(f"unknown grading kind {self.kind!r}")

    def parity(self, degree: int) -> int:
        return degree % 2


class GradedSpace:
    """Finite-dimensional graded vector space with a named ordered basis."""

    def __init__(self, grading: Grading, components: list[tuple[int, list[str]]]):
        self.grading = grading
        seen_degrees = set()
        labels: list[str] = []
        degree_of: dict[str, int] = {}
        for degree, basis in components:
            if degree in seen_degrees:
                raise InputError(f"duplicate degree {degree}")
            if grading.kind == "z2" and degree not in (0, 1):
                raise InputError("z2 grading admits degrees 0 and 1 only")
            seen_degrees.add(degree)
            for label in basis:
                if label in degree_of:
                    raise InputError(f"duplicate basis label {label!r}")
                degree_of[label] = degree
                labels.append(label)
        self.components = [(d, list(b)) for d, b in components]
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.degree_of = degree_of
        self.degrees = [degree_of[lab] for lab in labels]
        self.parities = [grading.parity(d) for d in self.degrees]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def parity_of(self, label: str) -> int:
        return self.grading.parity(self.degree_of[label])

    def indices_of_parity(self, parity: int) -> list[int]:
        return [i for i, p in enumerate(self.parities) if p == parity]

    def indices_of_degree(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def basis_vector(self, label: str) -> "GradedVector":
        return GradedVector(self, {label: Fraction(1)})

    def zero_vector(self) -> "GradedVector":
        return GradedVector(self, {})

    def vector(self, coeffs: dict[str, Fraction]) -> "GradedVector":
        return GradedVector(self, dict(coeffs))

    def from_coords(self, coords) -> "GradedVector":
        if len(coords) != self.dim:
            raise InputError("coordinate list has wrong length")
        return GradedVector(self, {lab: c for lab, c in zip(self.labels, coords) if c != 0})

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.grading == other.grading
            and self.components == other.components
        )

    def __repr__(self):
        parts = ", ".join(f"{d}:{'|'.join(b)}" for d, b in self.components)
        return f"GradedSpace({self.grading.kind}; {parts})"


class GradedVector:
    """Vector with named coordinates; exact or float depending on context."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: GradedSpace, coeffs: dict):
        for label in coeffs:
            if label not in space.index:
                raise InputError(f"label {label!r} does not belong to the space")
        self.space = space
        self.coeffs = {lab: c for lab, c in coeffs.items() if c != 0}

    def __getitem__(self, label: str):
        return self.coeffs.get(label, ZERO)

    def coords(self) -> list:
        return [self.coeffs.get(lab, ZERO) for lab in self.space.labels]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.coeffs.values())

    def degree(self) -> int | None:
        """Common degree of the support, or None when mixed or zero."""
        degs = {self.space.degree_of[lab] for lab in self.coeffs}
        if len(degs) == 1:
            return degs.pop()
        return None

    def parity(self) -> int | None:
        pars = {self.space.parity_of(lab) for lab in self.coeffs}
        if len(pars) == 1:
            return pars.pop()
        return None

    def has_parity(self, parity: int) -> bool:
        return all(self.space.parity_of(lab) == parity for lab in self.coeffs)

    def restrict_parity(self, parity: int) -> "GradedVector":
        return GradedVector(
            self.space,
            {lab: c for lab, c in self.coeffs.items() if self.space.parity_of(lab) == parity},
        )

    def restrict_degree(self, degree: int) -> "GradedVector":
        return GradedVector(
            self.space,
            {lab: c for lab, c in self.coeffs.items() if self.space.degree_of[lab] == degree},
        )

    def __add__(self, other: "GradedVector") -> "GradedVector":
        if other.space is not self.space and other.space != self.space:
            raise InputError("vectors live in different spaces")
        out = dict(self.coeffs)
        for lab, c in other.coeffs.items():
            out[lab] = out.get(lab, ZERO) + c
        return GradedVector(self.space, out)

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + other.scaled(Fraction(-1))

    def scaled(self, c) -> "GradedVector":
        return GradedVector(self.space, {lab: c * x for lab, x in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, GradedVector)
            and self.space == other.space
            and self.coeffs == other.coeffs
        )

    def norm_inf(self) -> float:
        return max((abs(float(c)) for c in self.coeffs.values()), default=0.0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{lab}" for lab, c in sorted(self.coeffs.items()))


class StructureTensor:
    """Dense multilinear map between graded spaces with declared symmetry.

    Coefficients are stored flat, indexed by input tuple and output basis
    index.  Symmetry ("none", "antisymmetric", "symmetric") is verified at
    construction by exhaustive tuple comparison; "antisymmetric" means graded
    antisymmetry with Koszul signs.
    """

    def __init__(
        self,
        arity: int,
        space: GradedSpace,
        output_space: GradedSpace,
        shift: int | None,
        symmetry: str,
        entries: dict | None = None,
        check: bool = True,
    ):
        if arity < 1:
            raise InputError("arity must be at least 1")
        if symmetry not in ("none", "antisymmetric", "symmetric"):
            raise InputError(f"unknown symmetry {symmetry!r}")
        self.arity = arity
        self.space = space
        self.output_space = output_space
        self.shift = shift
        self.symmetry = symmetry
        n, m = space.dim, output_space.dim
        self._n, self._m = n, m
        self.coeffs: list[Fraction] = [ZERO] * (n**arity * m)
        if entries:
            for key, value in entries.items():
                ins, out = key
                self._set(tuple(space.index[l] for l in ins), output_space.index[out], value)
        if check:
            self.validate_symmetry()
            if shift is not None:
                self.validate_degrees()

    def _flat(self, idx: tuple[int, ...], out: int) -> int:
        pos = 0
        for i in idx:
            pos = pos * self._n + i
        return pos * self._m + out

    def _set(self, idx: tuple[int, ...], out: int, value) -> None:
        self.coeffs[self._flat(idx, out)] = value

    def coefficient(self, idx: tuple[int, ...], out: int):
        return self.coeffs[self._flat(idx, out)]

    def set_symmetrized(self, labels: tuple[str, ...], out_label: str, value) -> None:
        """Set one entry and propagate it over all permutations per symmetry."""
        idx = tuple(self.space.index[l] for l in labels)
        out = self.output_space.index[out_label]
        parities = [self.space.parities[i] for i in idx]
        if self.symmetry == "none":
            self._set(idx, out, value)
            return
        anti = self.symmetry == "antisymmetric"
        seen = set()
        for perm in itertools.permutations(range(self.arity)):
            target = tuple(idx[p] for p in perm)
            if target in seen:
                continue
            seen.add(target)
            sign = graded_perm_sign(perm, parities, anti)
            self._set(target, out, sign * value)

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.coeffs)

    def output_column(self, idx: tuple[int, ...]) -> list:
        base = 0
        for i in idx:
            base = base * self._n + i
        base *= self._m
        return self.coeffs[base : base + self._m]

    def validate_symmetry(self) -> None:
        if self.symmetry == "none":
            return
        anti = self.symmetry == "antisymmetric"
        n = self._n
        for idx in itertools.product(range(n), repeat=self.arity):
            col = self.output_column(idx)
            parities = [self.space.parities[i] for i in idx]
            for perm in itertools.permutations(range(self.arity)):
                target = tuple(idx[p] for p in perm)
                sign = graded_perm_sign(perm, parities, anti)
                tcol = self.output_column(target)
                for out in range(self._m):
                    if tcol[out] != sign * col[out]:
                        raise StructuralError(
                            f"symmetry violated at inputs {idx} vs {target}, output {out}"
                        )

    def validate_degrees(self) -> None:
        if self.space.grading.kind == "z" and self.output_space.grading.kind == "z":
            for idx in itertools.product(range(self._n), repeat=self.arity):
                want = sum(self.space.degrees[i] for i in idx) + self.shift
                col = self.output_column(idx)
                for out, c in enumerate(col):
                    if c != 0 and self.output_space.degrees[out] != want:
                        raise StructuralError(
                            f"entry {idx}->{out} violates degree shift {self.shift}"
                        )
        else:
            for idx in itertools.product(range(self._n), repeat=self.arity):
                want = (sum(self.space.parities[i] for i in idx) + self.shift) % 2
                col = self.output_column(idx)
                for out, c in enumerate(col):
                    if c != 0 and self.output_space.parities[out] != want:
                        raise StructuralError(
                            f"entry {idx}->{out} violates parity shift {self.shift}"
                        )

    def apply_indices(self, vectors: list[list]) -> list:
        """Evaluate on coordinate lists, returning output coordinates."""
        n, m, k = self._n, self._m, self.arity
        out = [ZERO] * m
        supports = [[i for i, c in enumerate(v) if c != 0] for v in vectors]
        for idx in itertools.product(*supports):
            factor = vectors[0][idx[0]]
            for slot in range(1, k):
                factor = factor * vectors[slot][idx[slot]]
            col = self.output_column(idx)
            for j in range(m):
                c = col[j]
                if c != 0:
                    out[j] = out[j] + c * factor
        return out

    def apply(self, args: list[GradedVector]) -> GradedVector:
        return apply_tensor(self, args)

    def mutated(self, labels: tuple[str, ...], out_label: str, delta) -> "StructureTensor":
        """Copy with a single raw entry perturbed; symmetry NOT restored."""
        t = StructureTensor(
            self.arity, self.space, self.output_space, self.shift, self.symmetry, check=False
        )
        t.coeffs = list(self.coeffs)
        idx = tuple(self.space.index[l] for l in labels)
        out = self.output_space.index[out_label]
        t.coeffs[t._flat(idx, out)] = t.coeffs[t._flat(idx, out)] + delta
        return t


def apply_tensor(t: StructureTensor, args: list[GradedVector]) -> GradedVector:
    """Multilinear evaluation of a structure tensor on graded vectors."""
    if len(args) != t.arity:
        raise InputError(f"expected {t.arity} arguments, got {len(args)}")
    for v in args:
        if v.space != t.space:
            raise InputError("argument lives in the wrong space")
    coords = t.apply_indices([v.coords() for v in args])
    out = {lab: c for lab, c in zip(t.output_space.labels, coords) if c != 0}
    return GradedVector(t.output_space, out)


def zero_tensor(
    arity: int, space: GradedSpace, output_space: GradedSpace, shift: int | None, symmetry: str
) -> StructureTensor:
    return StructureTensor(arity, space, output_space, shift, symmetry, check=False)
