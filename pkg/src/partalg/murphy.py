"""Central elements and the commuting family built from column collapses.

The building blocks are diagrams that collapse a chosen set of columns
into one block (``b_s``) and the splittings of that block into a top
and bottom part (``d_i``).  Signed half-sums of the splittings give
``p_s`` and ``p_tilde_s``; these assemble into the central element
``Z`` and the commuting family ``M`` indexed by half-integer ranks.

``verify_murphy`` packages the runnable checks: generic pairwise
commutation, centrality of ``Z``, the tensor-action identity relating
``Z`` to the sum of transposition actions on labelings, and the joint
spectra of the family on labelings compared with box-content
predictions read off walks in the concrete branching graph.  The
additive offsets at the two lowest ranks are measured, not assumed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .algebra import (
    AlgebraElement,
    diagram_element,
    element,
    embed,
    multiply,
    one,
    specialize,
)
from .combinatorics import build_bratteli, syt_dimension
from .diagrams import Diagram, columns, enumerate_diagrams, generator
from .errors import BadParams, BadSubset, LimitExceeded
from .linalg import rank as matrix_rank
from .scalars import Poly
from .tensor import EndoMatrix, phi, sym_tensor_matrix

__all__ = [
    "MAX_DOUBLE_RANK",
    "b_s",
    "d_i",
    "p_s",
    "p_tilde_s",
    "Z",
    "M",
    "murphy_family",
    "kappa_tensor_matrix",
    "verify_murphy",
]

MAX_DOUBLE_RANK = 7


def _check_columns(double_rank: int, subset) -> tuple[int, ...]:
    cols = columns(double_rank)
    try:
        s = tuple(sorted({int(v) for v in subset}))
    except (TypeError, ValueError) as exc:
        raise BadSubset(f"bad column set {subset!r}") from exc
    if not s:
        raise BadSubset("column set is empty")
    if s[0] < 1 or s[-1] > cols:
        raise BadSubset(f"columns must lie in 1..{cols}")
    return s


def _strands(double_rank: int, skip) -> list[list[int]]:
    return [[m, -m] for m in range(1, columns(double_rank) + 1) if m not in skip]


def b_s(double_rank: int, subset) -> Diagram:
    """Diagram collapsing the chosen columns into a single block."""
    s = _check_columns(double_rank, subset)
    merged = [v for m in s for v in (m, -m)]
    return Diagram(double_rank, [merged] + _strands(double_rank, set(s)))


def d_i(double_rank: int, subset, chosen) -> Diagram:
    """Split the collapsed block of ``b_s`` into a chosen part and its
    complement.

    ``chosen`` lists signed vertices: positive for top rows, negative
    for bottom rows, drawn from the collapsed columns.  Both parts
    must be nonempty.
    """
    s = _check_columns(double_rank, subset)
    full = frozenset(v for m in s for v in (m, -m))
    try:
        inside = frozenset(int(v) for v in chosen)
    except (TypeError, ValueError) as exc:
        raise BadSubset(f"bad vertex set {chosen!r}") from exc
    if not inside <= full:
        raise BadSubset("split must use vertices of the collapsed columns")
    if not inside or inside == full:
        raise BadSubset("split must be proper and nonempty")
    comp = full - inside
    if double_rank % 2 == 1:
        cols = columns(double_rank)
        pair = {cols, -cols}
        if cols in s and not (pair <= inside or pair <= comp):
            raise BadSubset("last column pair must stay on one side")
    return Diagram(
        double_rank, [sorted(inside), sorted(comp)] + _strands(double_rank, set(s))
    )


def _split_sign(s: tuple[int, ...], inside: frozenset[int]) -> int:
    whole = sum(
        1 for m in s if (m in inside) == (-m in inside)
    )
    return -1 if whole % 2 else 1


def _half_sum(double_rank: int, s: tuple[int, ...], admissible) -> AlgebraElement:
    acc: dict[Diagram, Fraction] = {}
    vertices = [v for m in s for v in (m, -m)]
    full = frozenset(vertices)
    for r in range(1, len(vertices)):
        for picked in combinations(vertices, r):
            inside = frozenset(picked)
            if not admissible(inside, full - inside):
                continue
            d = d_i(double_rank, s, inside)
            c = Fraction(_split_sign(s, inside), 2)
            acc[d] = acc.get(d, Fraction(0)) + c
    return element(double_rank, acc)


def p_s(double_rank: int, subset) -> AlgebraElement:
    """Signed half-sum of the proper splits of the collapsed block,
    leaving out the splits that merely drop one column.  Generic
    coefficients; every diagram ends up with an integer weight because
    a split and its complement give the same diagram.
    """
    s = _check_columns(double_rank, subset)
    if double_rank % 2 == 1 and columns(double_rank) in s:
        raise BadSubset("last column of a half rank needs the pinned variant")
    pairs = [frozenset({m, -m}) for m in s]

    def admissible(inside, comp):
        return inside not in pairs and comp not in pairs

    return _half_sum(double_rank, s, admissible)


def p_tilde_s(double_rank: int, subset) -> AlgebraElement:
    """Variant of ``p_s`` for half ranks whose subset contains the last
    column: splits must keep the last column pair on one side, and the
    splits that merely drop one of the other columns are left out.  The
    split cutting off the last column pair itself stays in.
    """
    if double_rank % 2 == 0:
        raise BadSubset("pinned variant is defined at half ranks only")
    s = _check_columns(double_rank, subset)
    cols = columns(double_rank)
    if cols not in s:
        raise BadSubset("subset must contain the last column")
    pair = frozenset({cols, -cols})
    pairs = [frozenset({m, -m}) for m in s if m != cols]

    def admissible(inside, comp):
        if not (pair <= inside or pair <= comp):
            return False
        return inside not in pairs and comp not in pairs

    return _half_sum(double_rank, s, admissible)


def _pinned_difference_sum(double_rank: int) -> AlgebraElement:
    """Diagram expansion of the swaps that move the dropped label
    through the pinned column, summed over all labels.

    Each slot independently picks one of five roles: strand, paired on
    the moving label, paired on the pinned label, or crossing in either
    direction.  A choice placing the moving label somewhere contributes
    the split diagram minus the merged one, signed by the number of
    paired picks; a choice avoiding it entirely contributes one diagram
    weighted by the free range of that label.  Specializing the result
    and applying the tensor action reproduces that operator sum at
    every dimension, so the half rank central element can be built from
    it without any case analysis.
    """
    k = double_rank // 2
    cols = k + 1
    free = Poly.x() - Poly.const(1)
    acc: dict[Diagram, Poly] = {}

    def bump(d: Diagram, c: Poly) -> None:
        acc[d] = acc.get(d, Poly.const(Fraction(0))) + c

    for assign in product(range(5), repeat=k):
        moving: list[int] = []
        pinned: list[int] = [cols, -cols]
        strands: list[list[int]] = []
        sign = 1
        for slot, role in zip(range(1, k + 1), assign):
            if role == 0:
                strands.append([slot, -slot])
            elif role == 1:
                moving += [slot, -slot]
                sign = -sign
            elif role == 2:
                pinned += [slot, -slot]
                sign = -sign
            elif role == 3:
                moving.append(slot)
                pinned.append(-slot)
            else:
                moving.append(-slot)
                pinned.append(slot)
        if not moving:
            bump(Diagram(double_rank, [pinned] + strands), free * sign)
            continue
        unit = Poly.const(Fraction(sign))
        bump(Diagram(double_rank, [moving, pinned] + strands), unit)
        bump(Diagram(double_rank, [moving + pinned] + strands), -unit)
    return element(double_rank, {d: c for d, c in acc.items() if c})


def _check_rank(double_rank: int) -> None:
    if double_rank < 0:
        raise BadParams("double rank must be nonnegative")
    if double_rank > MAX_DOUBLE_RANK:
        raise LimitExceeded(
            f"double rank {double_rank} exceeds cap {MAX_DOUBLE_RANK}"
        )


def Z(double_rank: int) -> AlgebraElement:
    """Central element at the given rank, with generic coefficients.

    Ranks 0 and 1/2 are set to the identity.  At integer rank the
    element is a constant plus the ``p_s`` over all nonempty column
    sets plus weighted collapses; at half rank it extends the element
    one half step down by the pinned difference sum, shifted so its
    tensor action matches the next dimension down.
    """
    _check_rank(double_rank)
    if double_rank <= 1:
        return one(double_rank)
    x = Poly.x()
    if double_rank % 2 == 0:
        k = double_rank // 2
        total = one(double_rank).scale(Poly.const(Fraction(k * (k - 1), 2)))
        for m in range(1, k + 1):
            for s in combinations(range(1, k + 1), m):
                total = total + p_s(double_rank, s)
                if m >= 2:
                    coeff = (x - Poly.const(k - m)) * Fraction(-1 if m % 2 else 1)
                    total = total + diagram_element(b_s(double_rank, s)).scale(coeff)
        return total
    k = double_rank // 2
    total = one(double_rank).scale(Poly.const(k) + x - Poly.const(k + 1))
    total = total + embed(Z(2 * k), double_rank)
    return total - _pinned_difference_sum(double_rank)


def M(double_rank: int) -> AlgebraElement:
    """Member of the commuting family: the difference of consecutive
    central elements, with the two lowest ranks set to the identity."""
    _check_rank(double_rank)
    if double_rank <= 1:
        return one(double_rank)
    return Z(double_rank) - embed(Z(double_rank - 1), double_rank)


def murphy_family(double_rank: int) -> list[tuple[Fraction, AlgebraElement]]:
    """All family members up to the given rank, embedded at that rank,
    as (rank, element) pairs."""
    _check_rank(double_rank)
    return [
        (Fraction(r, 2), embed(M(r), double_rank))
        for r in range(1, double_rank + 1)
    ]


def _transposition_images(a: int, b: int, n: int) -> tuple[int, ...]:
    imgs = list(range(1, n + 1))
    imgs[a - 1], imgs[b - 1] = imgs[b - 1], imgs[a - 1]
    return tuple(imgs)


def kappa_tensor_matrix(
    n: int, slots: int, *, fixed_last: bool = False, max_side: int = 81
) -> EndoMatrix:
    """Sum of all transposition actions on labelings, applied to every
    slot at once.  ``fixed_last`` keeps only transpositions avoiding
    the largest label."""
    top = n - 1 if fixed_last else n
    total = EndoMatrix.zero(n, slots)
    for a in range(1, top + 1):
        for b in range(a + 1, top + 1):
            total = total + sym_tensor_matrix(
                _transposition_images(a, b, n), n, slots, max_side=max_side
            )
    return total


def _generator_diagrams(double_rank: int) -> list[Diagram]:
    cols = columns(double_rank)
    top = cols - (1 if double_rank % 2 else 0)
    out = []
    for i in range(1, top):
        out.append(generator("s", i, double_rank))
        out.append(generator("e", i, double_rank))
    for j in range(1, top + 1):
        out.append(generator("p", j, double_rank))
    for i in range(1, cols):
        out.append(generator("p", Fraction(2 * i + 1, 2), double_rank))
    return out


def _shifted_rows(m: EndoMatrix, t) -> list[list[Fraction]]:
    t = Fraction(t)
    return [
        [v - t if i == j else v for j, v in enumerate(row)]
        for i, row in enumerate(m.rows)
    ]


def _nullity(m: EndoMatrix, t) -> int:
    return m.side - matrix_rank(_shifted_rows(m, t))


def _joint_nullity(mats: Sequence[EndoMatrix], values: Sequence[Fraction]) -> int:
    stacked: list[list[Fraction]] = []
    for m, t in zip(mats, values):
        stacked.extend(_shifted_rows(m, t))
    return mats[0].side - matrix_rank(stacked)


def _measured_spectrum(m: EndoMatrix, window: range) -> dict[int, int]:
    found: dict[int, int] = {}
    for t in window:
        nu = _nullity(m, t)
        if nu:
            found[t] = nu
    return found


def _added_box(smaller, larger) -> tuple[int, int]:
    for r in range(len(larger)):
        before = smaller[r] if r < len(smaller) else 0
        if larger[r] == before + 1:
            return r + 1, larger[r]
    raise BadParams(f"{larger} does not extend {smaller}")


def _step_value(prev, cur, n: int) -> int:
    """Predicted family eigenvalue for one walk step, by the content of
    the moved box; first-row moves give the size-based branch."""
    if sum(cur) > sum(prev):
        row, col = _added_box(prev, cur)
        if row == 1:
            return n - sum(cur[1:])
        return (col - row) + 1
    row, col = _added_box(cur, prev)
    if row == 1:
        return sum(prev[1:])
    return n - 1 - (col - row)


def _predicted_boundary(n: int) -> dict[int, int]:
    graph = build_bratteli("concrete", 2, n)
    out: dict[int, int] = {}
    for vertex in graph.levels[2]:
        value = _step_value(graph.levels[1][0], vertex, n)
        out[value] = out.get(value, 0) + (
            syt_dimension(vertex) * graph.path_count(2, vertex)
        )
    return out


def _boundary_offset(n: int, measured: dict[int, int]) -> int | None:
    predicted = _predicted_boundary(n)
    if len(measured) != len(predicted):
        return None
    pairs = list(zip(sorted(measured.items()), sorted(predicted.items())))
    deltas = {mv - pv for (mv, mm), (pv, pm) in pairs}
    if len(deltas) != 1:
        return None
    if any(mm != pm for (mv, mm), (pv, pm) in pairs):
        return None
    return deltas.pop()


def _spectra_report(double_rank: int, n: int, max_side: int) -> dict:
    slots = double_rank // 2
    side = n**slots
    family = murphy_family(double_rank)
    mats = {
        rank: phi(specialize(elem, n), n, max_side=max_side)
        for rank, elem in family
    }

    half_spec = _measured_spectrum(mats[Fraction(1, 2)], range(0, 3))
    offset_half = (
        1 - 0 if half_spec == {1: side} else None
    )

    boundary = phi(specialize(M(2), n), n, max_side=max_side)
    window = range(-(n + double_rank), 2 * n + double_rank + 1)
    measured_boundary = _measured_spectrum(boundary, window)
    complete = sum(measured_boundary.values()) == n
    offset_one = _boundary_offset(n, measured_boundary) if complete else None

    report = {
        "n": n,
        "side": side,
        "offset_half": offset_half,
        "offset_one": offset_one,
        "boundary_complete": complete,
        "tuples": [],
        "ok": False,
    }
    if offset_half is None or offset_one is None:
        return report

    graph = build_bratteli("concrete", double_rank, n)
    predicted: dict[tuple[int, ...], int] = {}
    for vertex in graph.levels[double_rank]:
        for walk in graph.paths(double_rank, vertex):
            values = []
            for r in range(2, double_rank + 1):
                value = _step_value(walk[r - 1], walk[r], n)
                if r == 2:
                    value += offset_one
                values.append(value)
            key = tuple(values)
            predicted[key] = predicted.get(key, 0) + syt_dimension(vertex)

    ranks = [Fraction(r, 2) for r in range(2, double_rank + 1)]
    stack = [mats[r] for r in ranks]
    total = 0
    all_match = True
    for key in sorted(predicted):
        dim = _joint_nullity(stack, key)
        total += dim
        match = dim == predicted[key]
        all_match = all_match and match
        report["tuples"].append(
            {
                "values": list(key),
                "predicted": predicted[key],
                "measured": dim,
                "ok": match,
            }
        )
    report["ok"] = all_match and total == side
    return report


def verify_murphy(
    double_rank: int, n_witnesses: Sequence[int], *, max_side: int = 81
) -> dict:
    """Run the family checks at the given rank and return a report.

    Covers pairwise commutation with generic coefficients, centrality
    of the central element at every rank up to the given one
    (exhaustive through rank 2, generators beyond), the tensor-action
    identity against transposition sums for each witness, and the
    joint spectra of the family on labelings against box-content
    predictions with measured boundary offsets.
    """
    if double_rank < 2:
        raise BadParams("need double rank at least 2")
    if double_rank > 6:
        raise LimitExceeded("family checks are capped at double rank 6")

    family = murphy_family(double_rank)
    commuting = {"pairs": 0, "failures": []}
    for (ra, ma), (rb, mb) in combinations(family, 2):
        commuting["pairs"] += 1
        if multiply(ma, mb) != multiply(mb, ma):
            commuting["failures"].append(f"[M_{ra}, M_{rb}]")

    centrality = {"checked": 0, "failures": []}
    for r in range(2, double_rank + 1):
        z = Z(r)
        others = (
            list(enumerate_diagrams(r)) if r <= 4 else _generator_diagrams(r)
        )
        for d in others:
            g = diagram_element(d)
            centrality["checked"] += 1
            if multiply(z, g) != multiply(g, z):
                centrality["failures"].append(f"[Z at {Fraction(r, 2)}, {d.blocks}]")

    tensor_identity = []
    spectra = []
    for n in n_witnesses:
        for r in range(2, double_rank + 1):
            slots = r // 2
            if n**slots > max_side:
                continue
            mat = phi(specialize(Z(r), n), n, max_side=max_side)
            if r % 2 == 0:
                shift = Fraction(slots * n - n * (n - 1) // 2)
                expected = kappa_tensor_matrix(n, slots, max_side=max_side)
            else:
                shift = Fraction((slots + 1) * n - 1 - n * (n - 1) // 2)
                expected = kappa_tensor_matrix(
                    n, slots, fixed_last=True, max_side=max_side
                )
            expected = expected + EndoMatrix.identity(n, slots).scale(shift)
            tensor_identity.append(
                {"n": n, "double_rank": r, "ok": mat == expected}
            )
        if n ** (double_rank // 2) <= max_side:
            spectra.append(_spectra_report(double_rank, n, max_side))

    ok = (
        not commuting["failures"]
        and not centrality["failures"]
        and all(item["ok"] for item in tensor_identity)
        and all(item["ok"] for item in spectra)
        and bool(tensor_identity)
    )
    return {
        "double_rank": double_rank,
        "witnesses": list(n_witnesses),
        "commuting": commuting,
        "centrality": centrality,
        "tensor_identity": tensor_identity,
        "spectra": spectra,
        "ok": ok,
    }
