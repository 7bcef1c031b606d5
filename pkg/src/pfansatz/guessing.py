"""P-finite recurrence guessing over exact sequence tables.

An operator is a finite set of integer shift vectors with polynomial
coefficients in the index variables; it annihilates a table when the residual
sum_t coeff_t(p) * data(p + shift_t) vanishes at every admissible point p.

Guessing builds one linear equation per base point with one unknown per
(shift, coefficient-monomial) pair, takes an exact nullspace, and confirms
every candidate on a disjoint validation window before reporting it.  The
windows are derived deterministically unless the caller pins them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .linalg import nullspace, solve_linear
from .poly import Polynomial, format_rational, parse_poly

Point = Tuple[int, ...]


class GuessingError(ValueError):
    pass


class UnderdeterminedData(GuessingError):
    """Too few usable equations for the requested operator class."""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"underdetermined: {available} usable equations for {needed} required"
        )


class DegenerateData(GuessingError):
    """Every usable equation is trivial (all sampled values are zero)."""

    def __init__(self):
        super().__init__("degenerate data: all sampled values are zero")


class CoverageError(GuessingError):
    pass


# ---------------------------------------------------------------------------
# tables


class Table:
    """Exact values on an explicit finite set of integer points."""

    __slots__ = ("arity", "values")

    def __init__(self, arity: int, values: Dict[Point, Fraction]):
        vals = {}
        for p, v in values.items():
            p = tuple(int(c) for c in p)
            if len(p) != arity:
                raise ValueError(f"point {p} has arity {len(p)}, expected {arity}")
            vals[p] = Fraction(v)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Table is immutable")

    @classmethod
    def from_sequence(cls, data: Sequence, start: int = 0) -> "Table":
        return cls(1, {(start + k,): Fraction(v) for k, v in enumerate(data)})

    def get(self, point: Point) -> Optional[Fraction]:
        return self.values.get(tuple(point))

    def points(self) -> List[Point]:
        return sorted(self.values)

    def __len__(self):
        return len(self.values)

    def __contains__(self, point):
        return tuple(point) in self.values


def table_to_json_dict(table: Table) -> dict:
    return {
        "arity": table.arity,
        "values": [
            {"point": list(p), "value": format_rational(v)}
            for p, v in sorted(table.values.items())
        ],
    }


def table_from_json_dict(data: dict) -> Table:
    if not isinstance(data, dict) or "arity" not in data or "values" not in data:
        raise ValueError("table JSON must be an object with 'arity' and 'values'")
    arity = int(data["arity"])
    values: Dict[Point, Fraction] = {}
    for row in data["values"]:
        if isinstance(row, dict):
            point, value = row["point"], row["value"]
        else:  # also accept the compact [point..., value] row form
            point, value = row[:-1], row[-1]
        key = tuple(int(c) for c in point)
        if key in values:
            raise ValueError(f"duplicate point {key} in table JSON")
        values[key] = Fraction(str(value))
    return Table(arity, values)


# ---------------------------------------------------------------------------
# operators


def _monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    out.sort(key=lambda e: (sum(e), e))
    return out


@dataclass(frozen=True)
class RecurrenceOperator:
    """Normalized shift operator: integer coefficients with overall content 1,
    and the graded-lex leading coefficient of the lexicographically largest
    shift positive.  Terms are sorted by shift."""

    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Point, Polynomial], ...]

    @classmethod
    def make(cls, variables: Sequence[str], terms) -> "RecurrenceOperator":
        variables = tuple(variables)
        if isinstance(terms, dict):
            terms = terms.items()
        merged: Dict[Point, Polynomial] = {}
        for shift, coeff in terms:
            shift = tuple(int(s) for s in shift)
            if len(shift) != len(variables):
                raise ValueError(f"shift {shift} arity != variables {variables}")
            if isinstance(coeff, str):
                coeff = parse_poly(coeff, variables)
            elif isinstance(coeff, (int, Fraction)):
                coeff = Polynomial.constant(coeff, variables)
            else:
                coeff = coeff.with_variables(variables)
            merged[shift] = merged.get(shift, Polynomial.zero(variables)) + coeff
        merged = {s: c for s, c in merged.items() if not c.is_zero()}
        if not merged:
            raise ValueError("zero operator")
        # scale to integer coefficients with content 1
        from math import gcd, lcm

        den = 1
        num = 0
        for c in merged.values():
            for q in c.terms.values():
                den = lcm(den, q.denominator)
                num = gcd(num, q.numerator)
        scale = Fraction(den, num if num else 1)
        lead_shift = max(merged)
        if merged[lead_shift].leading_term()[1] * scale < 0:
            scale = -scale
        merged = {s: c * scale for s, c in merged.items()}
        return cls(variables, tuple(sorted(merged.items(), key=lambda t: t[0])))

    # -- structure ------------------------------------------------------

    def shifts(self) -> Tuple[Point, ...]:
        return tuple(s for s, _ in self.terms)

    def order_span(self) -> Tuple[int, ...]:
        shifts = self.shifts()
        return tuple(
            max(s[k] for s in shifts) - min(s[k] for s in shifts)
            for k in range(len(self.variables))
        )

    def coefficient_degree(self) -> int:
        return max(c.total_degree() for _, c in self.terms)

    def leading_coefficient(self) -> Polynomial:
        return max(self.terms, key=lambda t: t[0])[1]

    def translated(self, offset: Point) -> "RecurrenceOperator":
        """The operator pre-composed with the shift by `offset` (its residual at
        p equals this operator's residual at p + offset)."""
        off = dict(zip(self.variables, offset))
        return RecurrenceOperator.make(
            self.variables,
            [
                (tuple(s + o for s, o in zip(shift, offset)), coeff.shifted(off))
                for shift, coeff in self.terms
            ],
        )

    # -- application -----------------------------------------------------

    def residual_at(self, table: Table, point: Point):
        total = Fraction(0)
        binding = dict(zip(self.variables, point))
        for shift, coeff in self.terms:
            q = tuple(p + s for p, s in zip(point, shift))
            v = table.get(q)
            if v is None:
                return None
            total += coeff.eval(binding) * v
        return total

    def admissible_points(self, table: Table) -> List[Point]:
        pts = set(table.values)
        shifts = self.shifts()
        cands = {tuple(q - s for q, s in zip(p, shift)) for p in pts for shift in shifts}
        return sorted(
            p
            for p in cands
            if all(tuple(a + b for a, b in zip(p, s)) in pts for s in shifts)
        )

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [
                {"shift": list(shift), "coeff": str(coeff)} for shift, coeff in self.terms
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "RecurrenceOperator":
        try:
            variables = tuple(str(v) for v in data["vars"])
            terms = [(tuple(t["shift"]), str(t["coeff"])) for t in data["terms"]]
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed operator object: {e}") from None
        return cls.make(variables, terms)

    @classmethod
    def from_json(cls, text: str) -> "RecurrenceOperator":
        return cls.from_json_dict(json.loads(text))

    def __str__(self):
        parts = []
        for shift, coeff in sorted(self.terms, key=lambda t: t[0], reverse=True):
            mono = "*".join(
                f"S_{v}^{s}" if s != 1 else f"S_{v}"
                for v, s in zip(self.variables, shift)
                if s
            )
            parts.append(f"({coeff})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def apply_operator(
    operator: RecurrenceOperator,
    table: Union[Table, Sequence],
    points: Optional[Iterable[Point]] = None,
) -> Dict[Point, Fraction]:
    """Residuals of the operator over the table.

    With explicit `points`, every shifted index must be present (CoverageError
    otherwise); by default the maximal admissible point set is used, and it
    must be non-empty.
    """
    if not isinstance(table, Table):
        table = Table.from_sequence(table)
    if points is None:
        pts = operator.admissible_points(table)
        if not pts:
            raise CoverageError("no point has full data coverage for this support")
    else:
        pts = [tuple(p) for p in points]
    out = {}
    for p in pts:
        r = operator.residual_at(table, p)
        if r is None:
            raise CoverageError(f"missing data around point {p}")
        out[p] = r
    return out


# ---------------------------------------------------------------------------
# guessing


@dataclass(frozen=True)
class GuessSpec:
    """Operator class bounds plus window policy.

    Exactly one of `support` (explicit shift vectors) or `orders` (rectangle:
    all shifts 0..orders[k] in variable k) must be given.  Windows are derived
    deterministically when not pinned: usable (non-trivial) equations sorted by
    base point; the data window takes the first min(#unknowns + extra_equations,
    3/4 of them) and validation takes every remaining admissible point.
    """

    degree: int
    support: Optional[Tuple[Point, ...]] = None
    orders: Optional[Tuple[int, ...]] = None
    margin: int = 10
    extra_equations: int = 25
    data_points: Optional[Tuple[Point, ...]] = None
    validation_points: Optional[Tuple[Point, ...]] = None

    def effective_support(self, arity: int) -> Tuple[Point, ...]:
        if (self.support is None) == (self.orders is None):
            raise ValueError("exactly one of support/orders must be set")
        if self.support is not None:
            supp = tuple(sorted(tuple(int(c) for c in s) for s in self.support))
            if any(len(s) != arity for s in supp):
                raise ValueError(f"support arity mismatch: {supp}")
            if len(set(supp)) != len(supp):
                raise ValueError("duplicate support shifts")
            return supp
        orders = tuple(int(o) for o in self.orders)
        if len(orders) != arity or any(o < 0 for o in orders):
            raise ValueError(f"bad orders {self.orders} for arity {arity}")
        return tuple(sorted(product(*(range(o + 1) for o in orders))))


@dataclass(frozen=True)
class GuessResult:
    operators: Tuple[RecurrenceOperator, ...]
    variables: Tuple[str, ...]
    support: Tuple[Point, ...]
    degree: int
    unknowns: int
    data_window: Tuple[Point, ...]
    validation_window: Tuple[Point, ...]
    margin: int
    rejected_by_validation: int
    reduced_away: int

    def __iter__(self):
        return iter(self.operators)

    def __len__(self):
        return len(self.operators)

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.variables),
            "support": [list(s) for s in self.support],
            "degree": self.degree,
            "unknowns": self.unknowns,
            "data_window": {
                "size": len(self.data_window),
                "first": list(self.data_window[0]) if self.data_window else None,
                "last": list(self.data_window[-1]) if self.data_window else None,
            },
            "validation_window_size": len(self.validation_window),
            "margin": self.margin,
            "rejected_by_validation": self.rejected_by_validation,
            "reduced_away": self.reduced_away,
            "operators": [op.to_json_dict() for op in self.operators],
        }


def _sort_key(op: RecurrenceOperator):
    return (
        sum(op.order_span()),
        op.coefficient_degree(),
        len(op.terms),
        str(op),
    )


def _operator_from_vector(
    variables: Tuple[str, ...],
    support: Tuple[Point, ...],
    monomials: List[Tuple[int, ...]],
    vec: Sequence[Fraction],
) -> Optional[RecurrenceOperator]:
    terms = {}
    idx = 0
    for s in support:
        coeff_terms = {}
        for m in monomials:
            if vec[idx]:
                coeff_terms[m] = vec[idx]
            idx += 1
        if coeff_terms:
            terms[s] = Polynomial(variables, coeff_terms)
    if not terms:
        return None
    return RecurrenceOperator.make(variables, terms)


def guess_from_table(
    table: Table, spec: GuessSpec, variables: Sequence[str], reduce_consequences: bool = True
) -> GuessResult:
    variables = tuple(variables)
    if len(variables) != table.arity:
        raise ValueError("variable count must match table arity")
    support = spec.effective_support(table.arity)
    monomials = _monomials(table.arity, spec.degree)
    unknowns = len(support) * len(monomials)

    def build_row(p: Point) -> List[Fraction]:
        row = []
        shifted_vals = []
        for s in support:
            v = table.get(tuple(a + b for a, b in zip(p, s)))
            if v is None:
                raise CoverageError(f"missing data around point {p}")
            shifted_vals.append(v)
        powers = {}
        for m in monomials:
            pm = Fraction(1)
            for base, e in zip(p, m):
                if e:
                    pm *= Fraction(base) ** e
            powers[m] = pm
        for v in shifted_vals:
            for m in monomials:
                row.append(powers[m] * v)
        return row

    if spec.data_points is not None:
        data_pts = [tuple(p) for p in spec.data_points]
        val_pts = [tuple(p) for p in (spec.validation_points or ())]
        if set(data_pts) & set(val_pts):
            raise ValueError("data and validation windows must be disjoint")
        rows = [build_row(p) for p in data_pts]
        usable_rows = [(p, r) for p, r in zip(data_pts, rows) if any(r)]
        if not usable_rows:
            raise DegenerateData()
        if len(usable_rows) < unknowns + spec.margin:
            raise UnderdeterminedData(unknowns + spec.margin, len(usable_rows))
        data_window = tuple(p for p, _ in usable_rows)
        matrix = [r for _, r in usable_rows]
        validation_window = tuple(val_pts)
    else:
        probe = RecurrenceOperator.make(
            variables, {s: Polynomial.constant(1, variables) for s in support}
        )
        admissible = probe.admissible_points(table)
        usable = []
        for p in admissible:
            r = build_row(p)
            if any(r):
                usable.append((p, r))
        if not usable:
            raise DegenerateData()
        cap = min(unknowns + spec.extra_equations, (3 * len(usable)) // 4)
        if cap < unknowns + spec.margin:
            raise UnderdeterminedData(unknowns + spec.margin, cap)
        data_window = tuple(p for p, _ in usable[:cap])
        matrix = [r for _, r in usable[:cap]]
        taken = set(data_window)
        validation_window = tuple(p for p in admissible if p not in taken)

    kernel = nullspace(matrix)
    candidates = []
    for vec in kernel:
        op = _operator_from_vector(variables, support, monomials, vec)
        if op is not None:
            candidates.append(op)

    validated = []
    rejected = 0
    for op in candidates:
        residuals = (op.residual_at(table, p) for p in validation_window)
        if all(r == 0 for r in residuals):
            validated.append(op)
        else:
            rejected += 1
    if rejected:
        # fall back to the kernel of the full system: operators that vanish on
        # every admissible point, hence on both windows
        all_rows = matrix + [build_row(p) for p in validation_window]
        full = [r for r in all_rows if any(r)]
        validated = []
        for vec in nullspace(full):
            op = _operator_from_vector(variables, support, monomials, vec)
            if op is not None:
                validated.append(op)

    validated.sort(key=_sort_key)
    reduced_away = 0
    if reduce_consequences and len(validated) > 1:
        kept: List[RecurrenceOperator] = []
        support_set = set(support)
        for op in validated:
            if any(
                _is_consequence(op, base, support_set, spec.degree, variables, monomials)
                for base in kept
            ):
                reduced_away += 1
            else:
                kept.append(op)
        validated = kept

    return GuessResult(
        operators=tuple(validated),
        variables=variables,
        support=support,
        degree=spec.degree,
        unknowns=unknowns,
        data_window=data_window,
        validation_window=validation_window,
        margin=spec.margin,
        rejected_by_validation=rejected,
        reduced_away=reduced_away,
    )


def _vectorize(
    op: RecurrenceOperator,
    support: Tuple[Point, ...],
    monomials: List[Tuple[int, ...]],
) -> Optional[List[Fraction]]:
    index = {(s, m): k for k, (s, m) in enumerate((s, m) for s in support for m in monomials)}
    vec = [Fraction(0)] * len(index)
    for shift, coeff in op.terms:
        aligned = coeff.with_variables(op.variables)
        for exp, q in aligned.terms.items():
            key = (shift, exp)
            if key not in index:
                return None
            vec[index[key]] = q
    return vec


def _is_consequence(
    op: RecurrenceOperator,
    base: RecurrenceOperator,
    support_set: set,
    degree: int,
    variables: Tuple[str, ...],
    monomials: List[Tuple[int, ...]],
) -> bool:
    """True iff `op` is a linear combination of translate-and-multiply images
    q(vars) * S^v * base that stay inside the support/degree bounds."""
    support = tuple(sorted(support_set))
    target = _vectorize(op, support, monomials)
    if target is None:
        return False
    base_shifts = base.shifts()
    base_deg = base.coefficient_degree()
    offsets = {
        tuple(a - b for a, b in zip(s, base_shifts[0])) for s in support_set
    }
    gens = []
    for off in sorted(offsets):
        if not all(tuple(a + b for a, b in zip(s, off)) in support_set for s in base_shifts):
            continue
        translated = base.translated(off)
        for m in _monomials(len(variables), degree - base_deg):
            mono = Polynomial(variables, {m: Fraction(1)})
            scaled = RecurrenceOperator.make(
                variables, [(s, c * mono) for s, c in translated.terms]
            )
            v = _vectorize(scaled, support, monomials)
            if v is not None:
                gens.append(v)
    if not gens:
        return False
    matrix = [[g[k] for g in gens] for k in range(len(target))]
    return solve_linear(matrix, target) is not None


def guess_univariate(data, spec: GuessSpec, variable: str = "n") -> GuessResult:
    """Guess operators for a one-dimensional sequence (list or Table)."""
    table = data if isinstance(data, Table) else Table.from_sequence(data)
    return guess_from_table(table, spec, (variable,), reduce_consequences=True)


def guess_bivariate(table: Table, spec: GuessSpec, variables=("n", "i")) -> GuessResult:
    """Guess operators for a two-dimensional table, dropping operators that are
    data-level consequences of smaller ones already found."""
    return guess_from_table(table, spec, tuple(variables), reduce_consequences=True)


# ---------------------------------------------------------------------------
# integer roots and leading-coefficient analysis


def _int_divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_roots(p: Polynomial) -> List[int]:
    """All integer roots of a univariate polynomial (errors on the zero
    polynomial; a nonzero constant has none)."""
    if p.is_zero():
        raise ValueError("zero polynomial has every integer as a root")
    var = p.sole_variable()
    if var is None:
        return []
    coeffs = p.univariate_coefficients(var)
    from math import lcm

    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    low = 0
    while ints[low] == 0:
        low += 1
    roots = set()
    if low > 0:
        roots.add(0)
    constant = ints[low]
    for d in _int_divisors(constant):
        for cand in (d, -d):
            if sum(c * cand ** k for k, c in enumerate(ints[low:])) == 0:
                roots.add(cand)
    return sorted(roots)


_RELATIONS = (">=", "<=", "==", "!=", ">", "<")


@dataclass(frozen=True)
class Constraint:
    poly: Polynomial  # lhs - rhs, compared against 0
    relation: str

    def satisfied(self, point: Dict[str, int]) -> bool:
        v = self.poly.eval(point)
        return {
            ">=": v >= 0,
            ">": v > 0,
            "<=": v <= 0,
            "<": v < 0,
            "==": v == 0,
            "!=": v != 0,
        }[self.relation]


@dataclass(frozen=True)
class Region:
    """Conjunction of linear (or polynomial) inequality constraints."""

    constraints: Tuple[Constraint, ...]
    text: str

    @classmethod
    def parse(cls, text: str) -> "Region":
        constraints = []
        for piece in text.split(" and "):
            piece = piece.strip()
            if not piece:
                continue
            for rel in _RELATIONS:
                if rel in piece:
                    lhs, rhs = piece.split(rel, 1)
                    constraints.append(
                        Constraint(parse_poly(lhs) - parse_poly(rhs), rel)
                    )
                    break
            else:
                raise ValueError(f"no relation found in constraint {piece!r}")
        return cls(tuple(constraints), text)

    def satisfied(self, point: Dict[str, int]) -> bool:
        return all(c.satisfied(point) for c in self.constraints)

    def partially_satisfied(self, point: Dict[str, int]) -> bool:
        """Check only the constraints whose variables are all bound."""
        for c in self.constraints:
            if set(c.poly.effective_variables()) <= set(point):
                if not c.satisfied(point):
                    return False
        return True


@dataclass(frozen=True)
class LeadingReport:
    """Where the leading coefficient of an operator vanishes on a region."""

    leading_shift: Point
    leading_coefficient: str
    mode: str  # "exact" or "window"
    vanishing: Tuple[Dict[str, int], ...]
    boundary: Tuple[dict, ...]
    window: Optional[dict]
    region: str

    @property
    def clear(self) -> bool:
        return not self.vanishing and not self.boundary

    def to_json_dict(self) -> dict:
        return {
            "leading_shift": list(self.leading_shift),
            "leading_coefficient": self.leading_coefficient,
            "mode": self.mode,
            "vanishing": [dict(sorted(v.items())) for v in self.vanishing],
            "boundary": list(self.boundary),
            "window": self.window,
            "region": self.region,
            "clear": self.clear,
        }


def leading_nonvanishing(
    op: RecurrenceOperator,
    region: Union[Region, str],
    window: Optional[Dict[str, Tuple[int, int]]] = None,
) -> LeadingReport:
    """Analyze where the leading coefficient vanishes inside the region.

    One effective variable: exact (integer roots filtered by the region).
    More: every integer point of the window box inside the region is tested,
    plus exact root-finding on each region boundary line where a variable can
    be isolated with unit coefficient; the verdict is window-bounded.
    """
    if isinstance(region, str):
        region = Region.parse(region)
    lead_shift = max(op.shifts())
    lead = op.leading_coefficient()
    eff = lead.effective_variables()
    if len(eff) <= 1:
        hits = []
        if len(eff) == 1:
            var = eff[0]
            for r in integer_roots(lead):
                point = {var: r}
                if region.partially_satisfied(point):
                    hits.append(point)
        return LeadingReport(
            lead_shift, str(lead), "exact", tuple(hits), (), None, region.text
        )
    if window is None:
        raise ValueError("a finite window is required for multivariate leading coefficients")
    names = sorted(window)
    ranges = [range(window[v][0], window[v][1] + 1) for v in names]
    hits = []
    for combo in product(*ranges):
        point = dict(zip(names, combo))
        if region.satisfied(point) and lead.eval(point) == 0:
            hits.append(point)
    boundary = []
    for c in region.constraints:
        if c.relation == "!=":
            continue
        line = c.poly
        for var in line.effective_variables():
            if line.degree_in(var) != 1:
                continue
            vi = line.variables.index(var)
            # isolate var when it appears linearly with constant coefficient +-1
            cv = Fraction(0)
            rest_terms = {}
            ok = True
            for exp, q in line.terms.items():
                if exp[vi] == 1 and all(e == 0 for k, e in enumerate(exp) if k != vi):
                    cv = q
                elif exp[vi] == 0:
                    rest_terms[exp] = q
                else:
                    ok = False
                    break
            if not ok or cv not in (1, -1):
                continue
            rest = Polynomial(line.variables, rest_terms)
            expr = rest / (-cv)  # var == expr on the boundary line
            restricted = lead.substitute({var: expr})
            r_eff = restricted.effective_variables()
            if restricted.is_zero():
                boundary.append(
                    {"line": f"{var} == {expr}", "identically_zero": True}
                )
                continue
            if len(r_eff) != 1:
                continue
            other = r_eff[0]
            for root in integer_roots(restricted):
                val = expr.eval({other: root})
                if val.denominator != 1:
                    continue
                point = {other: root, var: int(val)}
                if region.satisfied(point):
                    boundary.append({"line": f"{var} == {expr}", "point": dict(sorted(point.items()))})
            break
    return LeadingReport(
        lead_shift,
        str(lead),
        "window",
        tuple(hits),
        tuple(boundary),
        {v: list(window[v]) for v in sorted(window)},
        region.text,
    )
