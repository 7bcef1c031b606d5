"""Exact multivariate polynomials and rational functions over Q.

A polynomial is an ordered tuple of variable names plus a map from exponent
vectors (one non-negative integer per variable) to nonzero Fraction
coefficients.  Everything is canonical on construction (zero coefficients
dropped) and treated as immutable: all operations build new objects, so
values can be shared freely between threads.

The text format is what `parse_poly` reads and `str()` writes: integer or
a/b coefficients, `*` for products, `^` or `**` for powers, terms printed in
graded-lexicographic order (largest first) with respect to the declared
variable order.  Round-tripping text -> value -> text is the identity on
canonical text.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]
Entry = Union[Fraction, "Polynomial", "RationalFunction"]


class PolynomialError(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise PolynomialError(f"not an exact scalar: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _gl_key(exp: tuple) -> tuple:
    # graded lex: compare total degree, then the exponent vector itself
    return (sum(exp), exp)


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolynomialError(f"duplicate variables: {variables}")
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise PolynomialError(f"exponent arity {len(exp)} != {len(variables)} variables")
            if any(e < 0 for e in exp):
                raise PolynomialError(f"negative exponent in {exp}")
            c = _as_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value, variables: Sequence[str] = ()) -> "Polynomial":
        v = _as_fraction(value)
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: v} if v else {})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "Polynomial":
        return cls(variables, {})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError(f"not a constant: {self}")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def effective_variables(self) -> tuple:
        used = [False] * len(self.variables)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def leading_term(self) -> tuple:
        """(exponent, coefficient) of the graded-lex largest term."""
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading term")
        exp = max(self.terms, key=_gl_key)
        return exp, self.terms[exp]

    def content(self) -> Fraction:
        """gcd of the coefficients as a positive rational (0 for the zero poly)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    # -- variable plumbing ---------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over the given variable tuple (a superset of the
        effective variables)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        new_terms = {}
        for exp, coeff in self.terms.items():
            new_exp = [0] * len(variables)
            for v, e in zip(self.variables, exp):
                if e:
                    if v not in pos:
                        raise PolynomialError(f"variable {v} not in target {variables}")
                    new_exp[pos[v]] = e
            new_terms[tuple(new_exp)] = coeff
        return Polynomial(variables, new_terms)

    @staticmethod
    def _union_vars(a: "Polynomial", b: "Polynomial") -> tuple:
        return a.variables + tuple(v for v in b.variables if v not in a.variables)

    def _aligned(self, other) -> tuple:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return None, None
        if self.variables == other.variables:
            return self, other
        union = Polynomial._union_vars(self, other)
        return self.with_variables(union), other.with_variables(union)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return Polynomial(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return Polynomial(self.variables, {e: k * c for e, k in self.terms.items()})
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                terms[exp] = terms.get(exp, Fraction(0)) + c1 * c2
        return Polynomial(a.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (1 / c)
        if isinstance(other, Polynomial) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolynomialError(f"polynomial power must be a non-negative integer, got {n!r}")
        result = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, RationalFunction):
            return other == self
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    __hash__ = None  # mutable-dict backed; use text form as a key if needed

    # -- evaluation / substitution ----------------------------------------

    def eval(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a full rational point (every effective variable bound)."""
        vals = []
        for v in self.variables:
            if v in point:
                vals.append(_as_fraction(point[v]))
            else:
                vals.append(None)
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = coeff
            for val, e in zip(vals, exp):
                if e:
                    if val is None:
                        missing = [v for v, x in zip(self.variables, vals) if x is None]
                        raise PolynomialError(f"unbound variables {missing} in evaluation")
                    term *= val ** e
            total += term
        return total

    def substitute(self, mapping: Mapping[str, Entry]) -> "Polynomial":
        """Substitute polynomials/scalars for variables; unmentioned variables
        stay themselves."""
        base = {}
        for v in self.variables:
            repl = mapping.get(v, Polynomial.variable(v))
            if isinstance(repl, (int, Fraction)):
                repl = Polynomial.constant(repl)
            base[v] = repl
        total = Polynomial.zero()
        for exp, coeff in self.terms.items():
            term = Polynomial.constant(coeff)
            for v, e in zip(self.variables, exp):
                if e:
                    term = term * base[v] ** e
            total = total + term
        return total

    def shifted(self, offsets: Mapping[str, int]) -> "Polynomial":
        """p(..., v + offsets[v], ...), keeping the same variable tuple."""
        mapping = {
            v: Polynomial((v,), {(1,): Fraction(1), (0,): Fraction(offsets[v])})
            for v in self.variables
            if offsets.get(v)
        }
        if not mapping:
            return self
        return self.substitute(mapping).with_variables(self.variables)

    # -- univariate helpers ------------------------------------------------

    def sole_variable(self):
        eff = self.effective_variables()
        if len(eff) > 1:
            raise PolynomialError(f"expected at most one variable, got {eff}")
        return eff[0] if eff else None

    def univariate_coefficients(self, var: str) -> list:
        """Ascending coefficient list in `var`; other variables must be absent."""
        eff = self.effective_variables()
        if any(v != var for v in eff):
            raise PolynomialError(f"{self} is not univariate in {var}")
        if var not in self.variables:
            return [self.constant_value()] if self.terms else []
        i = self.variables.index(var)
        deg = self.degree_in(var)
        coeffs = [Fraction(0)] * (deg + 1)
        for exp, c in self.terms.items():
            coeffs[exp[i]] = c
        return coeffs

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=_gl_key, reverse=True):
            coeff = self.terms[exp]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exp)
                if e
            )
            if not mono:
                body = format_rational(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(coeff))}*{mono}"
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


# ---------------------------------------------------------------------------
# parsing


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def _from_node(node) -> Polynomial:
    if isinstance(node, ast.Expression):
        return _from_node(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return Polynomial.constant(node.value)
        raise PolynomialError(f"non-integer literal {node.value!r}")
    if isinstance(node, ast.Name):
        return Polynomial.variable(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _from_node(node.operand)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        left = _from_node(node.left)
        right = _from_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant():
                raise PolynomialError("division only by constants in polynomial text")
            return left / right.constant_value()
        if isinstance(node.op, ast.Pow):
            if not right.is_constant():
                raise PolynomialError("exponent must be a constant")
            e = right.constant_value()
            if e.denominator != 1 or e < 0:
                raise PolynomialError(f"exponent must be a non-negative integer, got {e}")
            return left ** int(e)
    raise PolynomialError(f"unsupported syntax: {ast.dump(node)}")


def parse_poly(text: str, variables: Sequence[str] = None) -> Polynomial:
    """Parse polynomial text like "(i-1)*(2*n-3)" or "x^2 - 1/2".

    If `variables` is given the result is expressed over exactly that tuple
    (which must cover all names in the text); otherwise the variables are the
    names in the text, sorted alphabetically.
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as e:
        raise PolynomialError(f"cannot parse polynomial {text!r}: {e}") from None
    p = _from_node(tree)
    if variables is not None:
        return p.with_variables(tuple(variables))
    return p.with_variables(tuple(sorted(p.effective_variables())))


def parse_entry(text: str):
    """Parse a matrix-entry string into a Fraction (no variables) or Polynomial."""
    p = parse_poly(text)
    if p.is_constant():
        return p.constant_value()
    return p


def entry_text(x) -> str:
    if isinstance(x, (int, Fraction)):
        return format_rational(_as_fraction(x))
    return str(x)


# ---------------------------------------------------------------------------
# univariate division / gcd (used to keep rational functions reduced)


def poly_divmod(a: Polynomial, b: Polynomial, var: str) -> tuple:
    """Univariate long division: a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ac = a.univariate_coefficients(var)
    bc = b.univariate_coefficients(var)
    while bc and not bc[-1]:
        bc.pop()
    q = [Fraction(0)] * max(0, len(ac) - len(bc) + 1)
    rem = list(ac)
    db = len(bc) - 1
    lead = bc[-1]
    while len(rem) - 1 >= db and any(rem):
        dr = len(rem) - 1
        while dr >= 0 and not rem[dr]:
            dr -= 1
        if dr < db:
            break
        factor = rem[dr] / lead
        q[dr - db] = factor
        for k in range(db + 1):
            rem[dr - db + k] -= factor * bc[k]
        rem = rem[: dr + 1]
    def build(coeffs):
        return Polynomial((var,), {(i,): c for i, c in enumerate(coeffs) if c})
    return build(q), build(rem)


def poly_exact_divide(num: Polynomial, den: Polynomial):
    """num / den when den divides num exactly (any number of variables),
    else None.  Leading terms are taken in graded-lex order, which divides
    at every step iff the division is exact."""
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    union = Polynomial._union_vars(num, den)
    num = num.with_variables(union)
    den = den.with_variables(union)
    d_exp, d_coeff = den.leading_term()
    quotient = {}
    rem = num
    while not rem.is_zero():
        r_exp, r_coeff = rem.leading_term()
        t_exp = tuple(r - d for r, d in zip(r_exp, d_exp))
        if any(e < 0 for e in t_exp):
            return None
        t_coeff = r_coeff / d_coeff
        quotient[t_exp] = t_coeff
        rem = rem - Polynomial(union, {t_exp: t_coeff}) * den
    return Polynomial(union, quotient)


def poly_gcd(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Monic univariate gcd by the Euclidean algorithm."""
    while not b.is_zero():
        _, r = poly_divmod(a, b, var)
        a, b = b, r
    if a.is_zero():
        return a
    _, lead = a.leading_term()
    return a / lead


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient of polynomials, reduced by content and (univariate) gcd.

    The denominator is kept primitive with positive leading coefficient, and
    is never zero.  Multivariate quotients are reduced by content only;
    equality still compares exactly by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if isinstance(num, (int, Fraction)):
            num = Polynomial.constant(num)
        if isinstance(den, (int, Fraction)):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial.zero(), Polynomial.constant(1)
        else:
            union = Polynomial._union_vars(num, den)
            num = num.with_variables(union)
            den = den.with_variables(union)
            eff = set(num.effective_variables()) | set(den.effective_variables())
            if len(eff) == 1 and not den.is_constant():
                var = next(iter(eff))
                g = poly_gcd(num, den, var)
                if g.total_degree() > 0:
                    num, _ = poly_divmod(num, g, var)
                    den, _ = poly_divmod(den, g, var)
                    num = num.with_variables(union)
                    den = den.with_variables(union)
            elif not den.is_constant():
                q = poly_exact_divide(num, den)
                if q is not None:
                    num, den = q.with_variables(union), Polynomial.constant(1, union)
            scale = den.content()
            if den.leading_term()[1] < 0:
                scale = -scale
            num = num / scale
            den = den / scale
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def lift(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return cls(x, Polynomial.constant(1))
        return cls(Polynomial.constant(_as_fraction(x)), Polynomial.constant(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_polynomial(self) -> Polynomial:
        """Exact conversion back to a polynomial; raises if the quotient is not one."""
        if self.den.is_constant():
            return self.num / self.den.constant_value()
        q = poly_exact_divide(self.num, self.den)
        if q is not None:
            return q
        raise PolynomialError(f"not a polynomial: ({self.num})/({self.den})")

    def __add__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction.lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction.lift(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


# ---------------------------------------------------------------------------
# small domain helpers shared by the matrix code


def domain_zero_like(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if isinstance(x, Polynomial):
        return Polynomial.zero(x.variables)
    if isinstance(x, RationalFunction):
        return RationalFunction.lift(Fraction(0))
    raise PolynomialError(f"unknown entry domain: {type(x)}")


def domain_one_like(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    if isinstance(x, Polynomial):
        return Polynomial.constant(1, x.variables)
    if isinstance(x, RationalFunction):
        return RationalFunction.lift(Fraction(1))
    raise PolynomialError(f"unknown entry domain: {type(x)}")


def is_zero_entry(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
