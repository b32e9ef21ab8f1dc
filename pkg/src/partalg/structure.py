"""Structural analysis of the diagram algebras along the tower.

Two trace forms drive everything here.  The diagram trace closes a
diagram up and counts components; the regular trace reads the diagonal
of left multiplication on the diagram basis.  Gram matrices of either
form, with exact determinants, give semisimplicity verdicts; per-vertex
character polynomials in the parameter give the trace weights level by
level, and their ratios along branching-graph edges normalize a
recursive construction of matrix units.  On top of those sit the
basic-construction model of the proper ideal, radical bases at the
first degenerate level, cell modules with their rank checks, and the
averaging map onto the center.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebra import (
    AlgebraElement,
    closure_components,
    diagram_element,
    embed,
    eps_down,
    eps_up,
    generator_element,
    ideal_basis,
    multiply,
    one,
    specialize,
    zero,
)
from .combinatorics import (
    BratteliGraph,
    boxes_added,
    boxes_removed,
    build_bratteli,
    counting,
    hooks_and_contents,
)
from .diagrams import (
    Diagram,
    compose,
    enumerate_diagrams,
    identity_diagram,
    propagating_number,
)
from .errors import (
    BadParams,
    BadShape,
    DegenerateForm,
    DenominatorVanishes,
    LimitExceeded,
    ModeMismatch,
    NonIntegerRank,
    NotSemisimple,
    OutOfScopeDepth,
    PartalgError,
    VertexNotFound,
)
from .linalg import bareiss_det, invert, rank as matrix_rank
from .scalars import Poly, RatFunc, Scalar
from .symgroup import sym_matrix_units, young_elements

__all__ = [
    "GramReport",
    "CharacterPolynomial",
    "TowerUnitSystem",
    "regular_trace",
    "gram",
    "semisimple_verdict",
    "char_poly",
    "char_decomposition_check",
    "eps_ratio",
    "basic_construction_iso",
    "matrix_units",
    "radical_basis",
    "specht",
    "symmetrize",
]

MAX_GRAM_SIDE = 203


@lru_cache(maxsize=None)
def _basis(double_rank: int) -> tuple[Diagram, ...]:
    return tuple(
        sorted(enumerate_diagrams(double_rank), key=lambda d: d.blocks)
    )


@lru_cache(maxsize=None)
def _graph(double_rank: int) -> BratteliGraph:
    return build_bratteli("abstract", double_rank)


def _p_index(double_rank: int) -> Fraction:
    # the generator that collapses the newest column pair at this level
    t = double_rank
    return Fraction(t, 2) if t % 2 else Fraction(t // 2)


@dataclass(frozen=True)
class CharacterPolynomial:
    """Trace weight of one branching-graph vertex, as a polynomial in
    the parameter; the half flag selects the half-level variant."""

    mu: tuple[int, ...]
    half: bool
    poly: Poly


def char_poly(mu, half: bool = False) -> CharacterPolynomial:
    """Weight polynomial of the vertex mu.

    Integer levels: (prod of inverse hooks) * prod_{j=1..|mu|}
    (x - |mu| - (mu_j - j)), degree |mu|.  Half levels carry an extra
    leading factor x and shift each root up by one, degree |mu| + 1.
    The empty vertex gives the constants 1 and x.
    """
    parts = tuple(int(v) for v in mu)
    hooks, _ = hooks_and_contents(parts)
    m = sum(parts)
    shift = 1 if half else 0
    poly = Poly.x() if half else Poly.const(1)
    for j in range(1, m + 1):
        mu_j = parts[j - 1] if j <= len(parts) else 0
        poly = poly * (Poly.x() - Poly.const(m + shift + mu_j - j))
    denom = 1
    for h in hooks:
        denom *= h
    return CharacterPolynomial(parts, bool(half), poly * Fraction(1, denom))


def _weight(double_level: int, vertex) -> Poly:
    return char_poly(vertex, half=bool(double_level % 2)).poly


def regular_trace(a: AlgebraElement) -> Scalar:
    """Trace of left multiplication by a on the diagram basis."""
    total = Fraction(0) if a.mode is not None else Poly(())
    for d in _basis(a.double_rank):
        total = total + multiply(a, diagram_element(d, 1, a.mode)).coeff(d)
    return total


@dataclass(frozen=True)
class GramReport:
    double_rank: int
    n: Fraction | None
    trace_kind: str
    diagrams: tuple[Diagram, ...]
    matrix: tuple[tuple[Scalar, ...], ...]
    det: Scalar | None


def _diagram_trace_value(d: Diagram, mode) -> Scalar:
    r = closure_components(d)
    return Poly.x() ** r if mode is None else mode**r


@lru_cache(maxsize=None)
def _regular_diagonal(double_rank: int) -> dict[Diagram, Poly]:
    """d -> generic regular trace of d, tabulated once per rank."""
    basis = _basis(double_rank)
    table: dict[Diagram, Poly] = {}
    for d in basis:
        total = Poly(())
        for e in basis:
            out, r = compose(d, e)
            if out == e:
                total = total + Poly.x() ** r
        table[d] = total
    return table


def gram(
    double_rank: int,
    n=None,
    trace_kind: str = "regular",
    *,
    want_det: bool = True,
) -> GramReport:
    """Gram matrix of the chosen trace form on the diagram basis.

    Entries are exact: polynomials in generic mode, rationals at a
    numeric parameter.  The determinant uses fraction-free elimination;
    generic determinants are limited to double rank 4, numeric ones to
    matrices of side at most 203.
    """
    if trace_kind not in ("regular", "diagram"):
        raise BadParams(f"unknown trace kind {trace_kind!r}")
    side = counting("bell", double_rank)
    if side > MAX_GRAM_SIDE:
        raise LimitExceeded(f"Gram side {side} exceeds {MAX_GRAM_SIDE}")
    if want_det and n is None and double_rank > 4:
        raise LimitExceeded("generic determinants stop at double rank 4")
    mode = None if n is None else Fraction(n)
    basis = _basis(double_rank)
    if trace_kind == "regular":
        diag = _regular_diagonal(double_rank)

        def entry(a: Diagram, b: Diagram) -> Scalar:
            d, r = compose(a, b)
            value = diag[d]
            if mode is None:
                return Poly.x() ** r * value
            return mode**r * value(mode)

    else:

        def entry(a: Diagram, b: Diagram) -> Scalar:
            d, r = compose(a, b)
            base = _diagram_trace_value(d, mode)
            return (Poly.x() ** r if mode is None else mode**r) * base

    matrix = tuple(tuple(entry(a, b) for b in basis) for a in basis)
    det: Scalar | None = None
    if want_det:
        if mode is None:
            det = bareiss_det([list(row) for row in matrix])
        else:
            # integer parameters give integer entries; eliminate over Z
            if all(v.denominator == 1 for row in matrix for v in row):
                det = Fraction(bareiss_det([[int(v) for v in row] for row in matrix]))
            else:
                det = bareiss_det([list(row) for row in matrix])
    return GramReport(double_rank, mode, trace_kind, basis, matrix, det)


def semisimple_verdict(double_rank: int, n: int) -> dict:
    """Compares the parameter-range criterion with the exact
    regular-trace Gram determinant; returns both routes."""
    if int(n) != n or n < 2:
        raise BadParams("verdict needs an integer parameter n >= 2")
    if double_rank > 6:
        raise LimitExceeded("Gram route stops at double rank 6")
    by_theorem = double_rank <= int(n) + 1
    det = gram(double_rank, int(n), "regular").det
    by_gram = det != 0
    return {
        "double_rank": double_rank,
        "n": int(n),
        "verdict": by_gram,
        "by_theorem": by_theorem,
        "by_gram": by_gram,
        "gram_det": det,
    }


def eps_ratio(double_level: int, mu, lam, n=None) -> Scalar:
    """Weight ratio across a vertex pair between consecutive levels:
    weight of lam at double_level over weight of mu one level below.

    The pair must be equal or one box apart (either direction; the
    branching graph only ever removes toward half levels and adds back,
    but the ratio is meaningful both ways).  Generic mode returns a
    reduced rational function, collapsed to a polynomial when the
    denominator divides out.
    """
    t = int(double_level)
    if t < 1:
        raise BadParams("ratios start at double level 1")
    mu = tuple(int(v) for v in mu)
    lam = tuple(int(v) for v in lam)
    if sum(mu) > (t - 1) // 2:
        raise VertexNotFound(f"{mu} not at level {t - 1}/2")
    if sum(lam) > t // 2:
        raise VertexNotFound(f"{lam} not at level {t}/2")
    if lam != mu and lam not in boxes_added(mu) and lam not in boxes_removed(mu):
        raise BadParams(f"{mu} and {lam} differ by more than one box")
    num = _weight(t, lam)
    den = _weight(t - 1, mu)
    if n is None:
        ratio = RatFunc(num, den)
        return ratio.num if ratio.den == Poly.const(1) else ratio
    point = Fraction(n)
    den_value = den(point)
    if den_value == 0:
        raise DenominatorVanishes(
            f"weight of {mu} at level {(t - 1)}/2 vanishes at n = {n}"
        )
    return num(point) / den_value


class TowerUnitSystem:
    """Complete system of matrix units for the diagram algebra at one
    tower level, indexed by (vertex, P, Q) with P, Q root-to-vertex
    walks in the branching graph."""

    __slots__ = ("double_rank", "n", "index", "units")

    def __init__(self, double_rank: int, n: Fraction, units: dict):
        self.double_rank = double_rank
        self.n = n
        self.index = sorted(units)
        self.units = units

    def unit(self, vertex, p, q) -> AlgebraElement:
        return self.units[(tuple(vertex), p, q)]

    def diagonal_index(self) -> list[tuple]:
        return [key for key in self.index if key[1] == key[2]]

    def identity_sum(self) -> AlgebraElement:
        total = zero(self.double_rank, self.n)
        for key in self.diagonal_index():
            total = total + self.units[key]
        return total

    def central_idempotent(self) -> AlgebraElement:
        """Sum of the diagonal units below the top layer; projects onto
        the proper ideal."""
        top = self.double_rank // 2
        total = zero(self.double_rank, self.n)
        for key in self.diagonal_index():
            if sum(key[0]) < top:
                total = total + self.units[key]
        return total


def _tableau_walk(tableau, double_rank: int) -> tuple:
    """The branching-graph walk of a standard tableau: stay on the way
    down to each half level, add the next box on the way back up."""
    m = sum(len(row) for row in tableau)
    chain = []
    for i in range(m + 1):
        rows = tuple(sum(1 for v in row if v <= i) for row in tableau)
        chain.append(tuple(r for r in rows if r))
    walk: list[tuple] = []
    for i in range(m):
        walk.append(chain[i])
        walk.append(chain[i])
    walk.append(chain[m])
    if double_rank % 2:
        walk.append(chain[m])
    return tuple(walk)


@lru_cache(maxsize=None)
def _build_units(t: int, n: Fraction) -> TowerUnitSystem:
    graph = _graph(t)
    if t >= 2:
        for vertex in graph.levels[t - 1]:
            if _weight(t - 1, vertex)(n) == 0:
                raise NotSemisimple(
                    f"weight of {vertex} at level {t - 1}/2 vanishes at n = {n}"
                )
        prev = _build_units(t - 1, n)
    units: dict = {}
    if t >= 2:
        p_elem = generator_element("p", _p_index(t), t, n)
        for mu in graph.levels[t - 2]:
            den = _weight(t - 2, mu)(n)
            walk_t = min(graph.paths(t - 2, mu))
            paths = graph.paths(t, mu)
            lifted = {}
            for p in paths:
                tau = p[-2]
                left = embed(prev.unit(tau, p[:-1], walk_t + (tau,)), t)
                lifted[p] = multiply(left, p_elem)
            for q in paths:
                gamma = q[-2]
                right = embed(prev.unit(gamma, walk_t + (gamma,), q[:-1]), t)
                ratio = _weight(t - 1, gamma)(n) / den
                for p in paths:
                    units[(mu, p, q)] = multiply(lifted[p], right).scale(
                        1 / ratio
                    )
    complement = one(t, n)
    for key, u in units.items():
        if key[1] == key[2]:
            complement = complement - u
    sym = sym_matrix_units(t // 2, n)
    for (shape, ptab, qtab), u in sym.units.items():
        key = (shape, _tableau_walk(ptab, t), _tableau_walk(qtab, t))
        units[key] = multiply(complement, embed(u, t))
    return TowerUnitSystem(t, n, units)


def matrix_units(double_rank: int, n) -> TowerUnitSystem:
    """Matrix units at rank double_rank/2, parameter n.

    Units over the proper ideal come from the level below: conjugate
    the collapse generator by lower units along each pair of walks,
    then divide by the weight ratio of the column walk's half-level
    vertex (rational normalization, no square roots).  The top layer
    multiplies symmetric-group units by the complement of the ideal's
    central idempotent.  Vanishing lower weights make the division
    impossible, which is exactly the non-semisimple boundary.
    """
    if not 0 <= double_rank <= 4:
        raise LimitExceeded("matrix units stop at double rank 4")
    return _build_units(double_rank, Fraction(n))


def char_decomposition_check(double_rank: int, n) -> dict:
    """Expands every basis diagram in the matrix-unit basis and checks
    that the diagram trace equals the weight-by-multiplicity sum of the
    block characters."""
    if not 0 <= double_rank <= 4:
        raise LimitExceeded("decomposition check stops at double rank 4")
    point = Fraction(n)
    system = matrix_units(double_rank, point)
    basis = _basis(double_rank)
    keys = system.index
    table = [
        [system.units[key].coeff(d) for key in keys] for d in basis
    ]
    try:
        inverse = invert(table)
    except ValueError:
        raise NotSemisimple("matrix units do not span the algebra") from None
    vertices = tuple(_graph(double_rank).levels[double_rank])
    weights = {v: _weight(double_rank, v)(point) for v in vertices}
    diagonal_rows = {
        v: [j for j, key in enumerate(keys) if key[0] == v and key[1] == key[2]]
        for v in vertices
    }
    failures = []
    identity_multiplicities: dict[tuple, Fraction] = {}
    identity = identity_diagram(double_rank)
    for i, d in enumerate(basis):
        chi = {
            v: sum(inverse[j][i] for j in rows)
            for v, rows in diagonal_rows.items()
        }
        combined = sum(weights[v] * chi[v] for v in vertices)
        if combined != point ** closure_components(d):
            failures.append(d.blocks)
        if d == identity:
            identity_multiplicities = dict(chi)
    return {
        "double_rank": double_rank,
        "n": point,
        "weights": weights,
        "identity_multiplicities": identity_multiplicities,
        "checked": len(basis),
        "failures": failures,
        "ok": not failures,
    }


def basic_construction_iso(
    double_rank: int, n, *, quadruples: int = 50, seed: int = 0
) -> dict:
    """Model of the proper ideal as a sandwich of the level below.

    Verifies that (b1, b2) -> b1 p b2 from pairs over the half-level
    basis lands in the ideal span with the right dimension, factors
    every ideal diagram exactly, respects moving middle factors across
    the collapse generator, and transports the sandwich product rule
    through the half-step conditional expectation on sampled
    quadruples.
    """
    if not 2 <= double_rank <= 5:
        raise LimitExceeded("basic construction checks run at double ranks 2..5")
    point = Fraction(n)
    t = double_rank
    half_basis = _basis(t - 1)
    hb = [diagram_element(d, 1, point) for d in half_basis]
    eb = [embed(a, t) for a in hb]
    p_elem = generator_element("p", _p_index(t), t, point)
    p_diag = next(iter(p_elem.terms))
    basis = _basis(t)
    position = {d: i for i, d in enumerate(basis)}

    products = [[multiply(multiply(a, p_elem), b) for b in eb] for a in eb]
    rows = []
    for row in products:
        for u in row:
            vec = [Fraction(0)] * len(basis)
            for d, c in u.terms.items():
                vec[position[d]] = c
            rows.append(vec)
    span_rank = matrix_rank(rows)
    ideal = ideal_basis(t)
    expected = counting("bell", t) - factorial(t // 2)

    embedded_diagram = [next(iter(a.terms)) for a in eb]
    found: dict[Diagram, tuple[int, int]] = {}
    for i, di in enumerate(embedded_diagram):
        first, r1 = compose(di, p_diag)
        for j, dj in enumerate(embedded_diagram):
            out, r2 = compose(first, dj)
            if r1 + r2 == 0 and out not in found:
                found[out] = (i, j)
    factored_all = all(d in found for d in ideal)

    lower = [
        embed(diagram_element(d, 1, point), t - 1) for d in _basis(t - 2)
    ]
    rng = random.Random(seed)
    triples = [
        (i, a, j)
        for i in range(len(hb))
        for a in range(len(lower))
        for j in range(len(hb))
    ]
    if len(triples) > 1200:
        triples = [
            (
                rng.randrange(len(hb)),
                rng.randrange(len(lower)),
                rng.randrange(len(hb)),
            )
            for _ in range(200)
        ]
    moved_ok = 0
    for i, a, j in triples:
        lhs = multiply(multiply(embed(multiply(hb[i], lower[a]), t), p_elem), eb[j])
        rhs = multiply(eb[i], multiply(p_elem, embed(multiply(lower[a], hb[j]), t)))
        if lhs == rhs:
            moved_ok += 1

    contract = eps_up if t % 2 == 0 else eps_down
    rule_ok = 0
    for _ in range(quadruples):
        i1, i2, i3, i4 = (rng.randrange(len(hb)) for _ in range(4))
        lhs = multiply(products[i1][i2], products[i3][i4])
        middle = contract(multiply(hb[i2], hb[i3]))
        rhs = multiply(
            multiply(eb[i1], p_elem),
            embed(multiply(embed(middle, t - 1), hb[i4]), t),
        )
        if lhs == rhs:
            rule_ok += 1

    ok = (
        span_rank == expected == len(ideal)
        and factored_all
        and moved_ok == len(triples)
        and rule_ok == quadruples
    )
    return {
        "double_rank": t,
        "n": point,
        "ideal_dimension": len(ideal),
        "expected_dimension": expected,
        "span_rank": span_rank,
        "surjective": span_rank == len(ideal),
        "factored_all": factored_all,
        "well_defined_checked": len(triples),
        "well_defined_ok": moved_ok == len(triples),
        "product_rule_checked": quadruples,
        "product_rule_ok": rule_ok == quadruples,
        "ok": ok,
    }


def radical_basis(double_rank: int, n) -> list[AlgebraElement]:
    """Basis of the radical at the first level where a weight vanishes.

    Requires every weight strictly below the previous level to be
    nonzero, so the lower floors are semisimple and their units exist;
    the un-normalized sandwich elements whose row or column weight
    ratio vanishes then span the radical.  The span is validated
    nilpotent before it is returned.
    """
    if not 2 <= double_rank <= 4:
        raise LimitExceeded("radical basis stops at double rank 4")
    point = Fraction(n)
    t = double_rank
    graph = _graph(t)
    for s in range(1, t - 1):
        for vertex in graph.levels[s]:
            if _weight(s, vertex)(point) == 0:
                raise OutOfScopeDepth(
                    f"weight of {vertex} already vanishes at level {s}/2"
                )
    prev = _build_units(t - 1, point)
    p_elem = generator_element("p", _p_index(t), t, point)
    out: list[AlgebraElement] = []
    for mu in graph.levels[t - 2]:
        walk_t = min(graph.paths(t - 2, mu))
        paths = graph.paths(t, mu)
        for p in paths:
            for q in paths:
                tau, gamma = p[-2], q[-2]
                if (
                    _weight(t - 1, tau)(point) != 0
                    and _weight(t - 1, gamma)(point) != 0
                ):
                    continue
                left = embed(prev.unit(tau, p[:-1], walk_t + (tau,)), t)
                right = embed(prev.unit(gamma, walk_t + (gamma,), q[:-1]), t)
                out.append(multiply(multiply(left, p_elem), right))
    if not out:
        return out
    basis = _basis(t)
    position = {d: i for i, d in enumerate(basis)}

    def independent(elements: list[AlgebraElement]) -> list[AlgebraElement]:
        kept: list[AlgebraElement] = []
        echelon: list[list[Fraction]] = []
        for u in elements:
            vec = [Fraction(0)] * len(basis)
            for d, c in u.terms.items():
                vec[position[d]] = c
            for row in echelon:
                lead = next(i for i, v in enumerate(row) if v)
                if vec[lead]:
                    f = vec[lead] / row[lead]
                    vec = [a - f * b for a, b in zip(vec, row)]
            if any(vec):
                kept.append(u)
                echelon.append(vec)
        return kept

    current = independent(out)
    for _ in range(len(out) + 1):
        if not current:
            return out
        current = independent(
            [multiply(u, r) for u in current for r in out]
        )
    raise PartalgError("radical span failed nilpotency validation")


def specht(double_rank: int, lam, witness_n: int | None = None) -> dict:
    """Cell module of the vertex lam: rank of the right multiplication
    image modulo low-propagating diagrams, against the walk count."""
    if double_rank % 2:
        raise NonIntegerRank("cell modules are built at integer ranks")
    if double_rank > 4:
        raise LimitExceeded("cell modules stop at double rank 4")
    ell = double_rank // 2
    try:
        parts = tuple(int(v) for v in lam)
        hooks_and_contents(parts)
    except PartalgError as exc:
        raise BadShape(str(exc)) from None
    m = sum(parts)
    if m > ell:
        raise BadShape(f"{parts} has more than {ell} boxes")
    witness = 2 * ell if witness_n is None else int(witness_n)
    point = Fraction(witness)
    _, _, _, product = young_elements(parts, m)
    e = embed(product, double_rank)
    for j in range(m + 1, ell + 1):
        e = multiply(e, generator_element("p", j, double_rank))
    e = specialize(e, point)
    basis = _basis(double_rank)
    coords = [d for d in basis if propagating_number(d) >= m]
    position = {d: i for i, d in enumerate(coords)}

    def quotient_vector(u: AlgebraElement) -> list[Fraction]:
        vec = [Fraction(0)] * len(coords)
        for d, c in u.terms.items():
            i = position.get(d)
            if i is not None:
                vec[i] = c
        return vec

    rows = [
        quotient_vector(multiply(diagram_element(b, 1, point), e))
        for b in basis
    ]
    image_rank = matrix_rank(rows)
    walks = _graph(double_rank).path_count(double_rank, parts)
    psi_nonzero = any(quotient_vector(e))
    return {
        "double_rank": double_rank,
        "lam": parts,
        "witness_n": witness,
        "rank": image_rank,
        "path_count": walks,
        "psi_nonzero": psi_nonzero,
        "ok": image_rank == walks and psi_nonzero,
    }


def symmetrize(
    a: AlgebraElement,
    double_rank: int,
    n,
    basis: Sequence[AlgebraElement] | None = None,
) -> AlgebraElement:
    """Averages a over the algebra: sum of b a b* with b* the dual
    basis of the regular trace form.  The result is central; it does
    not depend on the basis choice, which the optional argument lets
    tests exercise."""
    point = Fraction(n)
    if a.double_rank != double_rank:
        raise BadParams("element rank differs from the requested rank")
    if counting("bell", double_rank) > 52:
        raise LimitExceeded("averaging stops at double rank 5")
    if a.mode is None:
        a = specialize(a, point)
    elif a.mode != point:
        raise ModeMismatch("element is specialized at a different parameter")
    if basis is None:
        basis = [diagram_element(d, 1, point) for d in _basis(double_rank)]
    else:
        basis = list(basis)
    table = [
        [regular_trace(multiply(u, v)) for v in basis] for u in basis
    ]
    try:
        inverse = invert(table)
    except ValueError:
        raise DegenerateForm(
            f"regular trace form is degenerate at n = {n}"
        ) from None
    out = zero(double_rank, point)
    for j, b in enumerate(basis):
        dual = zero(double_rank, point)
        for i, c in enumerate(basis):
            dual = dual + c.scale(inverse[i][j])
        out = out + multiply(multiply(b, a), dual)
    return out
