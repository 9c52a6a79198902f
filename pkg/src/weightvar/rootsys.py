"""Finite root systems of types A-G over exact rationals.

Every vector lives in the simple-root basis: a TVector is a tuple of
Fractions of length `rank`, and the i-th simple root is the i-th unit
vector. Roots then have integer coordinates, which keeps the subword
products downstream exact and compact.

The invariant inner product is G = D * C (Cartan matrix times a positive
diagonal), normalized so long roots have squared norm 2. Downstream
comparisons are invariant under rescaling G; `RootSystem.rescaled` exists
so tests can assert that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterator

from .errors import DimensionMismatch, InvalidRank, RankLimitExceeded

TVector = tuple[Q, ...]

DEFAULT_MAX_RANK = 5

# positive-root counts per (type, rank), used as a generation cross-check
_POSITIVE_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}


def vadd(x: TVector, y: TVector) -> TVector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: TVector, y: TVector) -> TVector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c: Q, x: TVector) -> TVector:
    return tuple(c * a for a in x)


def vzero(rank: int) -> TVector:
    return (Q(0),) * rank


def as_tvector(coords, rank: int) -> TVector:
    v = tuple(Q(c) for c in coords)
    if len(v) != rank:
        raise DimensionMismatch(f"expected {rank} coordinates, got {len(v)}")
    return v


def _cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    """Integer Cartan matrix, rows indexed by the pairing coroot:
    C[i][j] = 2<a_i, a_j> / <a_i, a_i>, so s_i(a_j) = a_j - C[i][j] a_i."""
    l = rank
    chain_pairs = [(i, i + 1) for i in range(l - 1)]
    if type_label == "A":
        if l < 1:
            raise InvalidRank("A_l requires l >= 1")
        edges = {(i, j): -1 for i, j in chain_pairs}
        edges.update({(j, i): -1 for i, j in chain_pairs})
    elif type_label in ("B", "C"):
        if l < 2:
            raise InvalidRank(f"{type_label}_l requires l >= 2")
        edges = {(i, j): -1 for i, j in chain_pairs}
        edges.update({(j, i): -1 for i, j in chain_pairs})
        if type_label == "B":
            edges[(l - 1, l - 2)] = -2  # a_{l} short
        else:
            edges[(l - 2, l - 1)] = -2  # a_{l} long
    elif type_label == "D":
        if l < 3:
            raise InvalidRank("D_l requires l >= 3")
        pairs = [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
        edges = {}
        for i, j in pairs:
            edges[(i, j)] = edges[(j, i)] = -1
    elif type_label == "E":
        if l not in (6, 7, 8):
            raise InvalidRank("E_l requires l in {6, 7, 8}")
        pairs = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3), (5, 6), (6, 7)][: l - 1]
        edges = {}
        for i, j in pairs:
            edges[(i, j)] = edges[(j, i)] = -1
    elif type_label == "F":
        if l != 4:
            raise InvalidRank("F_l requires l = 4")
        edges = {(0, 1): -1, (1, 0): -1, (1, 2): -1, (2, 1): -2,
                 (2, 3): -1, (3, 2): -1}
    elif type_label == "G":
        if l != 2:
            raise InvalidRank("G_l requires l = 2")
        edges = {(0, 1): -3, (1, 0): -1}
    else:
        raise InvalidRank(f"unknown type label {type_label!r}")
    return [[2 if i == j else edges.get((i, j), 0) for j in range(l)]
            for i in range(l)]


def _root_lengths(cartan: list[list[int]]) -> list[Q]:
    """Half squared norms d_i with max d_i = 1 (long roots norm^2 = 2),
    from d_i C[i][j] = d_j C[j][i] propagated over the Dynkin graph."""
    l = len(cartan)
    d: list[Q | None] = [None] * l
    d[0] = Q(1)
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(l):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                frontier.append(j)
    if any(x is None for x in d):
        raise InvalidRank("Dynkin diagram is not connected")
    top = max(d)  # type: ignore[type-var]
    return [x / top for x in d]  # type: ignore[operator]


def _invert(matrix: list[list[Q]]) -> list[list[Q]]:
    """Gauss-Jordan inverse over exact rationals."""
    n = len(matrix)
    aug = [row[:] + [Q(1) if i == j else Q(0) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Q(1) / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class RootSystem:
    """Immutable Cartan data of a finite root system.

    cartan[i][j] = 2<a_i,a_j>/<a_i,a_i>; gram[i][j] = <a_i,a_j>;
    positive_roots and fundamental_weights are in simple-root coordinates.
    """

    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Q, ...], ...]
    positive_roots: tuple[TVector, ...]
    fundamental_weights: tuple[TVector, ...]

    def _check_dim(self, x: TVector) -> None:
        if len(x) != self.rank:
            raise DimensionMismatch(
                f"vector has {len(x)} coordinates, rank is {self.rank}")

    def inner(self, x: TVector, y: TVector) -> Q:
        """Invariant inner product <x, y> in simple-root coordinates."""
        self._check_dim(x)
        self._check_dim(y)
        return sum((xi * sum(g * yj for g, yj in zip(row, y))
                    for xi, row in zip(x, self.gram)), Q(0))

    def norm2(self, x: TVector) -> Q:
        return self.inner(x, x)

    def chamber_coefficients(self, x: TVector) -> tuple[Q, ...]:
        """Coefficients (r_1..r_l) with x = sum r_j lambda_j; all r_j >= 0
        iff x lies in the closed fundamental chamber. Equals cartan @ x."""
        self._check_dim(x)
        return tuple(sum((Q(c) * xj for c, xj in zip(row, x)), Q(0))
                     for row in self.cartan)

    def simple_root(self, i: int) -> TVector:
        return tuple(Q(1) if j == i else Q(0) for j in range(self.rank))

    def simple_reflection_matrix(self, i: int) -> tuple[tuple[Q, ...], ...]:
        """Matrix of s_i on t* in simple-root coordinates (acts on columns:
        column j is the image of a_j)."""
        l = self.rank
        return tuple(
            tuple(Q((1 if r == c else 0) - (self.cartan[i][c] if r == i else 0))
                  for c in range(l))
            for r in range(l))

    def reflect(self, i: int, x: TVector) -> TVector:
        """Simple reflection s_i(x) = x - <x, a_i^v> a_i."""
        self._check_dim(x)
        coeff = sum((Q(c) * xj for c, xj in zip(self.cartan[i], x)), Q(0))
        return tuple(xj - coeff * (Q(1) if k == i else Q(0))
                     for k, xj in enumerate(x))

    def is_positive_root(self, x: TVector) -> bool:
        return x in self._positive_set()

    def _positive_set(self) -> frozenset[TVector]:
        cached = getattr(self, "_pos_cache", None)
        if cached is None:
            cached = frozenset(self.positive_roots)
            object.__setattr__(self, "_pos_cache", cached)
        return cached

    def rescaled(self, c: Q | int) -> "RootSystem":
        """Copy with the inner product scaled by c > 0. Deliberately skips
        the long-root normalization; used to assert scale invariance."""
        c = Q(c)
        if c <= 0:
            raise ValueError("inner-product scale must be positive")
        gram = tuple(tuple(c * g for g in row) for row in self.gram)
        return RootSystem(self.type_label, self.rank, self.cartan, gram,
                          self.positive_roots, self.fundamental_weights)

    def to_json(self) -> dict:
        from .serialize import poly_free_vector, rational_str
        return {
            "type": self.type_label,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "gram": [[rational_str(g) for g in row] for row in self.gram],
            "positive_roots": [poly_free_vector(r) for r in self.positive_roots],
            "fundamental_weights": [poly_free_vector(w)
                                    for w in self.fundamental_weights],
        }


def _generate_roots(rs_cartan: list[list[int]], rank: int) -> list[TVector]:
    """All roots: closure of the simple roots under simple reflections."""
    simple = [tuple(Q(1) if j == i else Q(0) for j in range(rank))
              for i in range(rank)]

    def reflect(i: int, x: TVector) -> TVector:
        coeff = sum((Q(c) * xj for c, xj in zip(rs_cartan[i], x)), Q(0))
        return tuple(xj - (coeff if k == i else 0) for k, xj in enumerate(x))

    seen: set[TVector] = set(simple)
    frontier = list(simple)
    while frontier:
        x = frontier.pop()
        for i in range(rank):
            y = reflect(i, x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


def build_root_system(type_label: str, rank: int,
                      max_rank: int = DEFAULT_MAX_RANK) -> RootSystem:
    """Construct the root system of the given finite type.

    Raises InvalidRank for impossible (type, rank) pairs and
    RankLimitExceeded above the enumeration guard (default 5): Weyl-group
    squared enumeration downstream is intractable past that at desk scale.
    """
    type_label = type_label.upper()
    cartan = _cartan_matrix(type_label, rank)
    if rank > max_rank:
        raise RankLimitExceeded(
            f"rank {rank} exceeds the configured maximum {max_rank}")
    d = _root_lengths(cartan)
    gram = [[d[i] * cartan[i][j] for j in range(rank)] for i in range(rank)]

    # fundamental weights are the columns of the inverse Cartan matrix
    cinv = _invert([[Q(c) for c in row] for row in cartan])
    weights = [tuple(cinv[k][i] for k in range(rank)) for i in range(rank)]

    all_roots = _generate_roots(cartan, rank)
    positive = [r for r in all_roots if all(c >= 0 for c in r)]

    expected = _POSITIVE_COUNTS[type_label](rank)
    if len(positive) != expected or len(all_roots) != 2 * expected:
        raise AssertionError(
            f"root generation for {type_label}{rank} produced "
            f"{len(positive)} positive roots, expected {expected}")
    for r in positive:
        if not all(c.denominator == 1 and c >= 0 for c in r):
            raise AssertionError(f"positive root {r} is not a nonnegative "
                                 "integer combination of simple roots")

    rs = RootSystem(
        type_label=type_label,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        gram=tuple(tuple(row) for row in gram),
        positive_roots=tuple(positive),
        fundamental_weights=tuple(weights),
    )
    _validate(rs)
    return rs


def _validate(rs: RootSystem) -> None:
    l = rs.rank
    # gram symmetric, G = D*C with positive D, long roots norm^2 = 2
    for i in range(l):
        for j in range(l):
            assert rs.gram[i][j] == rs.gram[j][i], "gram not symmetric"
    assert max(rs.gram[i][i] for i in range(l)) == 2, "long root norm^2 != 2"
    # positive definite: leading principal minors
    m = [list(row) for row in rs.gram]
    for k in range(1, l + 1):
        assert _det([row[:k] for row in m[:k]]) > 0, "gram not positive definite"
    # weights dual to coroots
    for i in range(l):
        for j in range(l):
            alpha = rs.simple_root(j)
            pairing = 2 * rs.inner(rs.fundamental_weights[i], alpha) / rs.gram[j][j]
            assert pairing == (1 if i == j else 0), "weight/coroot duality failed"


def _det(m: list[list[Q]]) -> Q:
    n = len(m)
    m = [row[:] for row in m]
    det = Q(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Q(1) / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def roots_iter(rs: RootSystem) -> Iterator[TVector]:
    """All roots, negatives included, in a deterministic order."""
    for r in rs.positive_roots:
        yield r
    for r in rs.positive_roots:
        yield vscale(Q(-1), r)
