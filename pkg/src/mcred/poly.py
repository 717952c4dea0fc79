"""Multivariate polynomials with exact rational coefficients.

Terms are keyed by exponent tuples over a fixed ordered variable list.
Coefficients may also be Polynomial instances themselves when a symbolic
computation needs polynomials in auxiliary variables; only +, *, and zero
tests are used in that mode.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: tuple[str, ...], terms: dict | None = None):
        self.variables = tuple(variables)
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != len(self.variables):
                    raise ValueError("exponent tuple length mismatch")
                if coeff != 0:
                    self.terms[tuple(exps)] = self.terms.get(tuple(exps), Fraction(0)) + coeff
            self.terms = {e: c for e, c in self.terms.items() if c != 0}

    @classmethod
    def zero(cls, variables) -> "Polynomial":
        return cls(tuple(variables))

    @classmethod
    def constant(cls, variables, c) -> "Polynomial":
        v = tuple(variables)
        return cls(v, {tuple([0] * len(v)): Fraction(c)})

    @classmethod
    def variable(cls, variables, name: str) -> "Polynomial":
        v = tuple(variables)
        exps = [0] * len(v)
        exps[v.index(name)] = 1
        return cls(v, {tuple(exps): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if other == 0:
            return not self.terms
        const = tuple([0] * len(self.variables))
        return set(self.terms) == {const} and self.terms[const] == other

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.variables, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.variables, other)
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if other == 0:
                return Polynomial.zero(self.variables)
            return Polynomial(
                self.variables, {e: c * other for e, c in self.terms.items()}
            )
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def homogeneous_component(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.variables, {e: c for e, c in self.terms.items() if sum(e) == degree}
        )

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        return {
            d: self.homogeneous_component(d)
            for d in sorted({sum(e) for e in self.terms})
        }

    def partial(self, var: str) -> "Polynomial":
        i = self.variables.index(var)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                newe = list(e)
                newe[i] -= 1
                out[tuple(newe)] = out.get(tuple(newe), Fraction(0)) + c * e[i]
        return Polynomial(self.variables, out)

    def evaluate(self, values: list):
        """Evaluate on scalars (or other ring elements supporting + and *)."""
        if len(values) != len(self.variables):
            raise ValueError("wrong number of values")
        total = Fraction(0)
        first = True
        for e, c in self.terms.items():
            term = c
            for v, exp in zip(values, e):
                for _ in range(exp):
                    term = term * v
            total = term if first else total + term
            first = False
        if first:
            return Fraction(0)
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.variables, e)
                if k
            )
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)


def parse_terms(variables, term_list) -> Polynomial:
    """Build from [(exponent list, coefficient), ...]."""
    return Polynomial(
        tuple(variables), {tuple(e): Fraction(c) for e, c in term_list}
    )


def polarize_values(f: Polynomial, vectors: list[list[Fraction]]) -> Fraction:
    """Symmetric multilinear form of a homogeneous f, one evaluation.

    Inclusion-exclusion polarization:
        M(y1..yi) = (1/i!) sum over nonempty S of (-1)^{i-|S|} f(sum_S yj).
    """
    if not f.is_homogeneous():
        raise ValueError("polarization needs a homogeneous polynomial")
    i = f.total_degree()
    if len(vectors) != i:
        raise ValueError(f"degree {i} polynomial polarizes to arity {i}")
    if i == 0:
        return Fraction(0)
    nvars = len(f.variables)
    total = Fraction(0)
    for r in range(1, i + 1):
        sign = Fraction((-1) ** (i - r))
        for subset in itertools.combinations(range(i), r):
            point = [Fraction(0)] * nvars
            for s in subset:
                for t in range(nvars):
                    point[t] += vectors[s][t]
            total += sign * f.evaluate(point)
    return total / Fraction(__import__("math").factorial(i))
