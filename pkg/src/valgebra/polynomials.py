"""Sparse multivariate polynomials over Fractions and exact integration.

Monomial integrals over simplices use barycentric substitution and the
Dirichlet integral, so every polytope integral in the package is an exact
rational number.  No quadrature anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .geometry import Polytope, as_scalar, triangulation


class Polynomial:
    """Polynomial with Fraction coefficients, stored sparsely by exponent."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.num_vars = num_vars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in (terms or {}).items():
            coef = as_scalar(coef)
            if coef == 0:
                continue
            if len(exp) != num_vars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {num_vars} variables")
            clean[tuple(exp)] = coef
        self.terms = clean

    @staticmethod
    def constant(num_vars: int, c) -> "Polynomial":
        c = as_scalar(c)
        if c == 0:
            return Polynomial(num_vars)
        return Polynomial(num_vars, {tuple(0 for _ in range(num_vars)): c})

    @staticmethod
    def variable(num_vars: int, i: int) -> "Polynomial":
        exp = tuple(1 if j == i else 0 for j in range(num_vars))
        return Polynomial(num_vars, {exp: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def coefficient(self, exp: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for exp, coef in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coef
        return Polynomial(self.num_vars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = as_scalar(c)
        return Polynomial(self.num_vars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.num_vars, out)

    def power(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval(self, x) -> Fraction:
        x = [as_scalar(c) for c in x]
        if len(x) != self.num_vars:
            raise ValueError("evaluation point dimension mismatch")
        total = Fraction(0)
        for exp, coef in self.terms.items():
            v = coef
            for xi, e in zip(x, exp):
                if e:
                    v *= xi ** e
            total += v
        return total

    def substitute(self, replacements: list["Polynomial"]) -> "Polynomial":
        """Substitute variable i by replacements[i] (all over the same vars)."""
        if len(replacements) != self.num_vars:
            raise ValueError("needs one replacement per variable")
        m = replacements[0].num_vars if replacements else 0
        out = Polynomial(m)
        pow_cache: dict[tuple[int, int], Polynomial] = {}
        for exp, coef in self.terms.items():
            term = Polynomial.constant(m, coef)
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    p = pow_cache.get(key)
                    if p is None:
                        p = replacements[i].power(e)
                        pow_cache[key] = p
                    term = term * p
            out = out + term
        return out

    def external_product(self, other: "Polynomial") -> "Polynomial":
        """f(x) g(y) over the concatenated variable blocks."""
        m, n = self.num_vars, other.num_vars
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = c1 * c2
        return Polynomial(m + n, out)

    def reflect_variables(self) -> "Polynomial":
        """The polynomial x -> f(-x)."""
        return Polynomial(
            self.num_vars,
            {e: (c if sum(e) % 2 == 0 else -c) for e, c in self.terms.items()},
        )

    def shift(self, x) -> "Polynomial":
        """The polynomial y -> f(y + x)."""
        x = [as_scalar(c) for c in x]
        reps = [Polynomial.variable(self.num_vars, i) + Polynomial.constant(self.num_vars, x[i]) for i in range(self.num_vars)]
        return self.substitute(reps)

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        bits = []
        for exp, coef in sorted(self.terms.items()):
            mono = "*".join(f"x{i}^{e}" for i, e in enumerate(exp) if e) or "1"
            bits.append(f"{coef}*{mono}")
        return "Polynomial(" + " + ".join(bits) + ")"


def poly_eval(f: Polynomial, x) -> Fraction:
    return f.eval(x)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_external_product(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.external_product(g)


def _dirichlet_monomial(exp: tuple[int, ...]) -> Fraction:
    """Integral of u^exp over the standard simplex in len(exp) variables."""
    n = len(exp)
    num = 1
    for e in exp:
        num *= factorial(e)
    return Fraction(num, factorial(n + sum(exp)))


def integrate_simplex(vertices, f: Polynomial) -> Fraction:
    """Exact integral of f over the simplex with the given n+1 vertices."""
    verts = [tuple(as_scalar(c) for c in v) for v in vertices]
    n = len(verts[0]) if verts else 0
    if len(verts) != n + 1:
        raise ValueError("a simplex in dimension n needs exactly n+1 vertices")
    if f.num_vars != n:
        raise ValueError("density variable count must match the dimension")
    base = verts[0]
    cols = [tuple(v[i] - base[i] for i in range(n)) for v in verts[1:]]
    det = _fraction_det([[cols[j][i] for j in range(n)] for i in range(n)])
    if det == 0:
        return Fraction(0)
    # x_i = base_i + sum_j cols[j][i] * u_j
    reps = []
    for i in range(n):
        p = Polynomial.constant(n, base[i])
        for j in range(n):
            if cols[j][i]:
                p = p + Polynomial.variable(n, j).scale(cols[j][i])
        reps.append(p)
    g = f.substitute(reps)
    total = Fraction(0)
    for exp, coef in g.terms.items():
        total += coef * _dirichlet_monomial(exp)
    return abs(det) * total


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                fct = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= fct * m[col][c]
    return det


def integrate(P: Polytope, f: Polynomial) -> Fraction:
    """Exact integral of the polynomial density f over the polytope."""
    if f.num_vars != P.dim:
        raise ValueError("density variable count must match the ambient dimension")
    total = Fraction(0)
    for simplex in triangulation(P):
        total += integrate_simplex(simplex, f)
    return total


def integrate_points(points, n: int, f: Polynomial) -> Fraction:
    """Integral of f over the hull of raw candidate points."""
    from .hull import hull_data

    pts = [tuple(as_scalar(c) for c in p) for p in points]
    data = hull_data(pts, n)
    if data is None:
        return Fraction(0)
    total = Fraction(0)
    for s in data.fan_triangulation():
        verts = [tuple(Fraction(c, data.scale) for c in data.points[i]) for i in s]
        total += integrate_simplex(verts, f)
    return total
