"""Sparse linear combinations of diagrams with exact coefficients.

Elements live at a fixed rank in one of two modes: generic, where
coefficients are polynomials or rational functions in the parameter x,
and specialized, where the parameter is a fixed rational n.  The
product of two diagrams is x^r (or n^r) times their composition, r
counting the components removed from the middle row.

>>> from partalg.algebra import diagram_element, multiply
>>> from partalg.diagrams import make_diagram
>>> p1 = diagram_element(make_diagram(2, [[1], [-1]]))
>>> print(multiply(p1, p1))
(x)*{{1},{-1}}
"""

from __future__ import annotations

from fractions import Fraction

from .diagrams import (
    Diagram,
    columns,
    compose,
    enumerate_diagrams,
    generator,
    identity_diagram,
    propagating_number,
)
from .errors import (
    InvalidTarget,
    ModeMismatch,
    NonHalfIntegerRank,
    NonIntegerRank,
    RankMismatch,
)
from .scalars import (
    Poly,
    RatFunc,
    Scalar,
    parse_rational,
    rational_str,
    scalar_from_json,
    scalar_is_zero,
    scalar_to_json,
)

__all__ = [
    "AlgebraElement",
    "element",
    "diagram_element",
    "generator_element",
    "one",
    "zero",
    "multiply",
    "embed",
    "to_orbit_basis",
    "from_orbit_basis",
    "orbit_element",
    "mobius_coefficient",
    "refinements",
    "coarsenings",
    "eps_down",
    "eps_up",
    "eps_one",
    "trace",
    "closure_components",
    "specialize",
    "ideal_basis",
    "as_scalar",
]

Mode = Fraction | None  # None is the generic parameter x


def _norm_coeff(value, mode: Mode):
    if mode is None:
        if isinstance(value, RatFunc):
            return value.num if value.den == Poly.const(1) else value
        if isinstance(value, Poly):
            return value
        return Poly.const(Fraction(value))
    if isinstance(value, (Poly, RatFunc)):
        raise ModeMismatch("specialized element cannot hold symbolic coefficients")
    return Fraction(value)


class AlgebraElement:
    """Linear combination of same-rank diagrams.  Treat as immutable."""

    __slots__ = ("double_rank", "mode", "terms")

    def __init__(self, double_rank: int, terms, mode: Mode = None):
        cleaned: dict[Diagram, Scalar] = {}
        for d, c in terms.items() if isinstance(terms, dict) else terms:
            if d.double_rank != double_rank:
                raise RankMismatch("term rank differs from element rank")
            c = _norm_coeff(c, mode)
            if not scalar_is_zero(c):
                prev = cleaned.get(d)
                total = c if prev is None else _norm_coeff(prev + c, mode)
                if scalar_is_zero(total):
                    cleaned.pop(d, None)
                else:
                    cleaned[d] = total
        self.double_rank = double_rank
        self.mode = mode
        self.terms = cleaned

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, d: Diagram):
        zero = Fraction(0) if self.mode is not None else Poly(())
        return self.terms.get(d, zero)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.double_rank == other.double_rank
            and self.mode == other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.double_rank, self.mode, frozenset(self.terms.items())))

    def _check_compatible(self, other: AlgebraElement) -> None:
        if self.double_rank != other.double_rank:
            raise RankMismatch("element ranks differ")
        if self.mode != other.mode:
            raise ModeMismatch("element modes differ")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check_compatible(other)
        merged = dict(self.terms)
        for d, c in other.terms.items():
            merged[d] = merged.get(d, 0) + c
        return AlgebraElement(self.double_rank, merged, self.mode)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(
            self.double_rank, {d: -c for d, c in self.terms.items()}, self.mode
        )

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> AlgebraElement:
        return AlgebraElement(
            self.double_rank,
            {d: c * value for d, c in self.terms.items()},
            self.mode,
        )

    def sorted_terms(self) -> list[tuple[Diagram, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: item[0].blocks)

    def to_json(self) -> dict:
        mode = "generic" if self.mode is None else {"n": rational_str(self.mode)}
        return {
            "double_rank": self.double_rank,
            "mode": mode,
            "terms": [
                {"diagram": d.to_json(), "coeff": scalar_to_json(c)}
                for d, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(data) -> AlgebraElement:
        mode = None if data["mode"] == "generic" else parse_rational(data["mode"]["n"])
        terms = [
            (Diagram.from_json(t["diagram"]), scalar_from_json(t["coeff"]))
            for t in data["terms"]
        ]
        return AlgebraElement(int(data["double_rank"]), terms, mode)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.sorted_terms():
            blocks = ",".join(
                "{" + ",".join(str(v) for v in b) + "}" for b in d.blocks
            )
            parts.append(f"({c})*{{{blocks}}}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<AlgebraElement rank {Fraction(self.double_rank, 2)}: {self}>"


def element(double_rank: int, terms, mode: Mode = None) -> AlgebraElement:
    return AlgebraElement(double_rank, terms, mode)


def diagram_element(d: Diagram, coeff=1, mode: Mode = None) -> AlgebraElement:
    return AlgebraElement(d.double_rank, {d: coeff}, mode)


def generator_element(kind: str, index, double_rank: int, mode: Mode = None) -> AlgebraElement:
    return diagram_element(generator(kind, index, double_rank), mode=mode)


def one(double_rank: int, mode: Mode = None) -> AlgebraElement:
    return diagram_element(identity_diagram(double_rank), mode=mode)


def zero(double_rank: int, mode: Mode = None) -> AlgebraElement:
    return AlgebraElement(double_rank, {}, mode)


def _param_power(mode: Mode, r: int):
    if mode is None:
        return Poly.x() ** r
    return mode**r


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of d1 d2 = x^r (d1 composed over d2)."""
    a._check_compatible(b)
    out: dict[Diagram, Scalar] = {}
    for d1, c1 in a.terms.items():
        for d2, c2 in b.terms.items():
            d, r = compose(d1, d2)
            contrib = c1 * c2 * _param_power(a.mode, r)
            out[d] = out.get(d, 0) + contrib
    return AlgebraElement(a.double_rank, out, a.mode)


def embed(a: AlgebraElement, target_double_rank: int) -> AlgebraElement:
    """Inclusion along the tower, in half-rank steps.

    Integer to half adds the through-strand on the new column; half to
    integer reinterprets the same diagrams one level up.
    """
    if target_double_rank < a.double_rank:
        raise InvalidTarget("cannot embed downward")
    result = a
    while result.double_rank < target_double_rank:
        dr = result.double_rank
        if dr % 2 == 0:
            new_col = columns(dr) + 1
            terms = {
                Diagram(dr + 1, d.blocks + ((new_col, -new_col),)): c
                for d, c in result.terms.items()
            }
        else:
            terms = {Diagram(dr + 1, d.blocks): c for d, c in result.terms.items()}
        result = AlgebraElement(dr + 1, terms, result.mode)
    return result


def refinements(d: Diagram) -> list[Diagram]:
    """All diagrams below d in the coarsening order (blocks split)."""

    def splits(block: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
        items = list(block)
        if not items:
            return [[]]
        first, rest = items[0], items[1:]
        out = []
        for part in splits(tuple(rest)):
            for i in range(len(part)):
                out.append(part[:i] + [part[i] + (first,)] + part[i + 1 :])
            out.append(part + [(first,)])
        return out

    results = [[]]
    for block in d.blocks:
        results = [acc + split for acc in results for split in splits(block)]
    return [Diagram(d.double_rank, blocks) for blocks in results]


def coarsenings(d: Diagram) -> list[Diagram]:
    """All diagrams above d in the coarsening order (blocks merged)."""
    groupings: list[list[tuple[int, ...]]] = [[]]
    for block in d.blocks:
        nxt = []
        for acc in groupings:
            for i in range(len(acc)):
                nxt.append(acc[:i] + [acc[i] + block] + acc[i + 1 :])
            nxt.append(acc + [block])
        groupings = nxt
    return [Diagram(d.double_rank, blocks) for blocks in groupings]


def mobius_coefficient(finer: Diagram, coarser: Diagram) -> int:
    """Mobius function of the refinement interval [finer, coarser]."""
    owner = {v: i for i, b in enumerate(coarser.blocks) for v in b}
    counts = [0] * len(coarser.blocks)
    for block in finer.blocks:
        tops = {owner[v] for v in block}
        if len(tops) != 1:
            raise RankMismatch("diagrams are not nested")
        counts[tops.pop()] += 1
    out = 1
    for m in counts:
        sign = -1 if (m - 1) % 2 else 1
        fact = 1
        for j in range(1, m):
            fact *= j
        out *= sign * fact
    return out


def to_orbit_basis(a: AlgebraElement) -> dict[Diagram, Scalar]:
    """Coefficients of a on the orbit basis: each diagram is the sum of
    the orbit elements of all its coarsenings, so that the orbit element
    of d captures labelings whose equality pattern is exactly d."""
    out: dict[Diagram, Scalar] = {}
    for d, c in a.terms.items():
        for coarser in coarsenings(d):
            out[coarser] = out.get(coarser, 0) + c
    return {d: c for d, c in out.items() if not scalar_is_zero(_norm_coeff(c, a.mode))}


def from_orbit_basis(
    coeffs, double_rank: int, mode: Mode = None
) -> AlgebraElement:
    """Element with the given orbit-basis coefficients."""
    terms: dict[Diagram, Scalar] = {}
    items = coeffs.items() if isinstance(coeffs, dict) else coeffs
    for d, c in items:
        for coarser in coarsenings(d):
            terms[coarser] = terms.get(coarser, 0) + c * mobius_coefficient(d, coarser)
    return AlgebraElement(double_rank, terms, mode)


def orbit_element(d: Diagram, mode: Mode = None) -> AlgebraElement:
    """The orbit basis element of d as a diagram combination."""
    return from_orbit_basis({d: 1}, d.double_rank, mode)


def eps_down(a: AlgebraElement) -> AlgebraElement:
    """Halves the rank by merging the blocks of the last column's
    endpoints; linear, no parameter factor."""
    if a.double_rank % 2 == 1:
        raise NonIntegerRank("lowering by a half step needs an integer rank")
    if a.double_rank == 0:
        raise InvalidTarget("rank 0 has no lower level")
    k2 = columns(a.double_rank)
    out: dict[Diagram, Scalar] = {}
    for d, c in a.terms.items():
        top = d.block_of(k2)
        bot = d.block_of(-k2)
        if top is bot:
            blocks = d.blocks
        else:
            blocks = tuple(b for b in d.blocks if b is not top and b is not bot)
            blocks += (top + bot,)
        nd = Diagram(a.double_rank - 1, blocks)
        out[nd] = out.get(nd, 0) + c
    return AlgebraElement(a.double_rank - 1, out, a.mode)


def eps_up(a: AlgebraElement) -> AlgebraElement:
    """Lowers a half-integer rank by deleting the constraint column; a
    term picks up a factor of the parameter exactly when its constraint
    block is the bare pair, which the deletion destroys."""
    if a.double_rank % 2 == 0:
        raise NonHalfIntegerRank("deleting the last column needs a half-integer rank")
    k2 = columns(a.double_rank)
    out: dict[Diagram, Scalar] = {}
    for d, c in a.terms.items():
        blocks = []
        destroyed = True
        for b in d.blocks:
            kept = tuple(v for v in b if v not in (k2, -k2))
            if kept:
                blocks.append(kept)
            if len(kept) != len(b) and kept:
                destroyed = False
        nd = Diagram(a.double_rank - 1, blocks)
        contrib = c * _param_power(a.mode, 1) if destroyed else c
        out[nd] = out.get(nd, 0) + contrib
    return AlgebraElement(a.double_rank - 1, out, a.mode)


def eps_one(a: AlgebraElement) -> AlgebraElement:
    """Full-step conditional expectation: merge then delete."""
    if a.double_rank % 2 == 1:
        raise NonIntegerRank("full step needs an integer rank")
    return eps_up(eps_down(a))


def closure_components(d: Diagram) -> int:
    """Components of d after joining each top vertex to its bottom twin."""
    k2 = columns(d.double_rank)
    parent = list(range(2 * k2))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    def node(v: int) -> int:
        return v - 1 if v > 0 else k2 + (-v) - 1

    for block in d.blocks:
        for v in block[1:]:
            union(node(block[0]), node(v))
    for i in range(1, k2 + 1):
        union(node(i), node(-i))
    return len({find(t) for t in range(2 * k2)})


def trace(a: AlgebraElement) -> Scalar:
    """tr(d) = parameter^(closure components), extended linearly."""
    total = Fraction(0) if a.mode is not None else Poly(())
    for d, c in a.terms.items():
        total = total + c * _param_power(a.mode, closure_components(d))
    return total


def specialize(a: AlgebraElement, n) -> AlgebraElement:
    """Evaluates generic coefficients at x = n."""
    if a.mode is not None:
        raise ModeMismatch("element is already specialized")
    point = parse_rational(n)
    terms = {}
    for d, c in a.terms.items():
        terms[d] = c(point) if isinstance(c, (Poly, RatFunc)) else Fraction(c)
    return AlgebraElement(a.double_rank, terms, point)


def ideal_basis(double_rank: int, *, max_double_rank: int = 8) -> list[Diagram]:
    """Diagrams with propagating number below the column count; they
    span the ideal complementing the permutation quotient."""
    k2 = columns(double_rank)
    return [
        d
        for d in enumerate_diagrams(double_rank, max_double_rank=max_double_rank)
        if propagating_number(d) < k2
    ]


def as_scalar(a: AlgebraElement) -> Scalar:
    """Reads a rank-0 element as a scalar."""
    if a.double_rank != 0:
        raise RankMismatch("only rank 0 elements are scalars")
    if not a.terms:
        return Fraction(0) if a.mode is not None else Poly(())
    return next(iter(a.terms.values()))
