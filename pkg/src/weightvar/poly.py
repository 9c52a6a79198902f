"""Sparse multivariate polynomials over exact rationals, plus the exact
rank computations the graded dimension counts rest on.

Variables are the simple-root coordinates of t*: exponent tuples of fixed
length l map to nonzero Fractions. All grading downstream is in
half-degrees (a cohomological degree-2d class carries polynomials of total
degree d); odd cohomology never exists here so it is never represented.

Rank is computed fraction-free: rows are scaled to integers and reduced by
cross-multiplication with gcd-normalized multipliers, so no rational
division ever happens during elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from math import gcd

from .errors import DimensionMismatch, NonExactDivision


def _grlex_key(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Q]):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Q(c)})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def linear_form(cls, coords) -> "Polynomial":
        """The element of t* with the given simple-root coordinates, viewed
        as a degree-1 polynomial."""
        coords = tuple(Q(c) for c in coords)
        n = len(coords)
        return cls(n, {tuple(1 if j == i else 0 for j in range(n)): c
                       for i, c in enumerate(coords) if c != 0})

    @classmethod
    def monomial(cls, exp: tuple[int, ...], coeff=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): Q(coeff)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self) -> tuple[tuple[int, ...], Q]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficient(self, exp: tuple[int, ...]) -> Q:
        return self.terms.get(tuple(exp), Q(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Q]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]),
                      reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Q(0)) + c
        return Polynomial(self.nvars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Q(0)) - c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict[tuple[int, ...], Q] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Q(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    def scale(self, c) -> "Polynomial":
        c = Q(c)
        return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def key(self) -> tuple:
        """Canonical hashable form, stable across processes."""
        return tuple((e, c.numerator, c.denominator)
                     for e, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Polynomial({self.as_string()})"

    def as_string(self, var: str = "a") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"{var}{i + 1}" + (f"^{p}" if p > 1 else "")
                       for i, p in enumerate(e) if p > 0]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # -- substitution -------------------------------------------------------

    def apply_matrix(self, matrix) -> "Polynomial":
        """Substitute variable i by the linear form in column i of `matrix`
        (the image of the i-th simple root under a linear map) and expand.
        Realizes the Weyl action on S(t*)."""
        return LinearSubstitution(matrix)(self)

    # -- exact division ------------------------------------------------------

    def divide_exact(self, q: "Polynomial") -> "Polynomial":
        """Return r with self = q * r, raising NonExactDivision otherwise."""
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        out: dict[tuple[int, ...], Q] = {}
        rem = self
        qe, qc = q.leading()
        while not rem.is_zero():
            re, rc = rem.leading()
            exp = tuple(a - b for a, b in zip(re, qe))
            if any(x < 0 for x in exp):
                raise NonExactDivision(
                    f"{self.as_string()} is not divisible by {q.as_string()}")
            coeff = rc / qc
            out[exp] = out.get(exp, Q(0)) + coeff
            rem = rem - q * Polynomial.monomial(exp, coeff)
            if not rem.is_zero() and _grlex_key(rem.leading()[0]) >= _grlex_key(re):
                raise NonExactDivision("division did not reduce")  # unreachable
        return Polynomial(self.nvars, out)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: list[dict]) -> "Polynomial":
        terms = {}
        for t in data:
            exp = tuple(int(x) for x in t["exp"])
            if len(exp) != nvars:
                raise DimensionMismatch("exponent length mismatch in JSON")
            terms[exp] = Q(int(t["num"]), int(t["den"]))
        return cls(nvars, terms)


class LinearSubstitution:
    """Variable substitution by linear forms with a persistent power cache.

    The Weyl action applies the same matrix to thousands of polynomials, so
    powers of the image forms are memoized across calls; build one instance
    per matrix and reuse it.
    """

    def __init__(self, matrix):
        n = len(matrix)
        self.nvars = n
        self._powers: list[list[Polynomial]] = [
            [Polynomial.one(n),
             Polynomial.linear_form(tuple(matrix[r][i] for r in range(n)))]
            for i in range(n)]

    def __call__(self, p: Polynomial) -> Polynomial:
        n = self.nvars
        if p.nvars != n:
            raise DimensionMismatch("matrix size does not match variables")
        powers = self._powers
        out = Polynomial.zero(n)
        for e, c in p.terms.items():
            term = Polynomial.constant(n, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * powers[i][1])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    return p.divide_exact(q)


def monomial_basis(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for first in range(remaining, -1, -1):
            rec(prefix + (first,), remaining - first, slots - 1)

    rec((), degree, nvars)
    return out


# -- exact rank ---------------------------------------------------------------


def _int_row(values: dict[int, Q]) -> dict[int, int]:
    """Scale a sparse rational row to coprime integers (sign-normalized)."""
    if not values:
        return {}
    denom = 1
    for v in values.values():
        denom = denom * v.denominator // gcd(denom, v.denominator)
    row = {c: int(v * denom) for c, v in values.items() if v != 0}
    if not row:
        return {}
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    return {c: v // g for c, v in row.items()}


class IncrementalRank:
    """Echelon accumulator over Q using fraction-free integer row ops.

    Rows arrive as sparse {column: value} maps; add_row reports whether the
    row enlarged the span. Insertion order does not affect the final rank.
    """

    def __init__(self) -> None:
        self._pivots: dict[int, dict[int, int]] = {}
        self._seen: set[tuple] = set()

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def pivot_rows(self) -> list[dict[int, int]]:
        """The stored echelon rows (integer, gcd-normalized)."""
        return [dict(r) for r in self._pivots.values()]

    def add_row(self, values: dict[int, Q]) -> bool:
        row = _int_row({c: Q(v) for c, v in values.items() if v != 0})
        if not row:
            return False
        sig = tuple(sorted(row.items()))
        if sig in self._seen:
            return False
        self._seen.add(sig)
        while row:
            lead = min(row)
            piv = self._pivots.get(lead)
            if piv is None:
                self._pivots[lead] = row
                return True
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {c: v * a for c, v in row.items()}
            for c, v in piv.items():
                nv = new.get(c, 0) - v * b
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {c: v // g for c, v in new.items()} if g else {}
        return False


class ModularRank:
    """Echelon accumulator over F_p used as a one-sided certificate.

    Reductions mod p can only lose rank, and integer rows that stay
    independent mod p are independent over Q; so reaching a known upper
    bound certifies the exact rank with machine-word arithmetic. Anything
    short of the bound proves nothing and callers must fall back to the
    exact eliminator.
    """

    PRIME = (1 << 31) - 1

    def __init__(self, p: int = PRIME) -> None:
        self.p = p
        self._pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def pivot_rows(self) -> list[dict[int, int]]:
        """The stored echelon rows over F_p."""
        return [dict(r) for r in self._pivots.values()]

    def add_modular_row(self, row: dict[int, int]) -> bool:
        """Insert a row whose values are already reduced mod p."""
        return self._reduce({c: v for c, v in row.items() if v % self.p})

    def add_row(self, values: dict[int, Q]) -> bool:
        p = self.p
        ints = _int_row({c: Q(v) for c, v in values.items() if v != 0})
        row = {}
        for c, v in ints.items():
            m = v % p
            if m:
                row[c] = m
        return self._reduce(row)

    def _reduce(self, row: dict[int, int]) -> bool:
        p = self.p
        while row:
            lead = min(row)
            piv = self._pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], p - 2, p)
                self._pivots[lead] = {c: (v * inv) % p for c, v in row.items()}
                return True
            f = row[lead]
            new = {}
            for c, v in row.items():
                pv = piv.get(c)
                nv = (v - f * pv) % p if pv else v
                if nv:
                    new[c] = nv
            for c, pv in piv.items():
                if c not in row:
                    nv = (-f * pv) % p
                    if nv:
                        new[c] = nv
            row = new
        return False


@dataclass(frozen=True)
class RationalMatrix:
    """Dense exact-rational matrix; only rank queries are needed."""

    rows: tuple[tuple[Q, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        out = tuple(tuple(Q(v) for v in row) for row in rows)
        if out and any(len(r) != len(out[0]) for r in out):
            raise DimensionMismatch("ragged matrix rows")
        return cls(out)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def rank_over_Q(m: RationalMatrix) -> int:
    """Exact rank, independent of row order."""
    acc = IncrementalRank()
    for row in m.rows:
        acc.add_row({c: v for c, v in enumerate(row) if v != 0})
    return acc.rank
