"""Set-partition diagrams and their monoid.

A diagram of rank k (k a nonnegative half-integer, stored as
double_rank = 2k) is a set partition of {1,...,K, -1,...,-K} with
K = ceil(k); positive vertices form the top row, negative the bottom.
Half-integer ranks are the sub-monoid of rank K diagrams whose block
structure joins K and -K.

>>> from partalg.diagrams import make_diagram, compose, propagating_number
>>> d = make_diagram(2, [[1, -1]])
>>> propagating_number(d)
1
>>> p = make_diagram(2, [[1], [-1]])
>>> compose(p, p)           # the lone middle component is removed
(Diagram(2, ((1,), (-1,))), 1)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import (
    HalfIntegerConstraintViolated,
    IndexOutOfRange,
    LimitExceeded,
    NonIntegerRank,
    NotAPartition,
    RankMismatch,
    VertexOutOfRange,
)

__all__ = [
    "Diagram",
    "make_diagram",
    "identity_diagram",
    "columns",
    "vertex_universe",
    "compose",
    "propagating_number",
    "is_planar",
    "classify",
    "generator",
    "enumerate_diagrams",
    "flip",
    "coarsens",
    "factorize",
    "evaluate_word",
    "permutation_diagram",
    "perm_word",
    "planar_to_tl",
    "presentation_relations",
    "verify_presentation",
    "token_str",
    "parse_token",
    "diagram_dot",
]


def columns(double_rank: int) -> int:
    """Number of columns K = ceil(k) for rank k = double_rank/2."""
    return (double_rank + 1) // 2


def vertex_universe(double_rank: int) -> tuple[int, ...]:
    k2 = columns(double_rank)
    return tuple(range(1, k2 + 1)) + tuple(range(-1, -k2 - 1, -1))


def _vkey(v: int) -> tuple[int, int]:
    # column first, top before bottom within a column
    return (abs(v), 0 if v > 0 else 1)


class Diagram:
    """Canonical set-partition diagram; immutable and hashable."""

    __slots__ = ("double_rank", "blocks", "_hash")

    def __init__(self, double_rank: int, blocks):
        k2 = columns(double_rank)
        seen: set[int] = set()
        canon = []
        for block in blocks:
            part = tuple(sorted(block, key=_vkey))
            if not part:
                raise NotAPartition("empty block")
            for v in part:
                if not isinstance(v, int) or v == 0 or abs(v) > k2:
                    raise VertexOutOfRange(f"vertex {v} outside rank {Fraction(double_rank, 2)}")
                if v in seen:
                    raise NotAPartition(f"vertex {v} appears twice")
                seen.add(v)
            canon.append(part)
        if len(seen) != 2 * k2:
            missing = sorted(set(vertex_universe(double_rank)) - seen, key=_vkey)
            raise NotAPartition(f"vertices {missing} not covered")
        if double_rank % 2 == 1 and k2 > 0:
            if not any(k2 in b and -k2 in b for b in canon):
                raise HalfIntegerConstraintViolated(
                    f"half-integer rank requires {k2} and {-k2} in one block"
                )
        canon.sort(key=lambda b: _vkey(b[0]))
        object.__setattr__(self, "double_rank", double_rank)
        object.__setattr__(self, "blocks", tuple(canon))
        object.__setattr__(self, "_hash", hash((double_rank, self.blocks)))

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Diagram)
            and self.double_rank == other.double_rank
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return self._hash

    def block_of(self, v: int) -> tuple[int, ...]:
        for b in self.blocks:
            if v in b:
                return b
        raise VertexOutOfRange(f"vertex {v} not in diagram")

    def to_json(self) -> dict:
        return {"double_rank": self.double_rank, "blocks": [list(b) for b in self.blocks]}

    @staticmethod
    def from_json(data) -> Diagram:
        return Diagram(int(data["double_rank"]), data["blocks"])

    def __repr__(self) -> str:
        return f"Diagram({self.double_rank}, {self.blocks})"


def make_diagram(double_rank: int, blocks) -> Diagram:
    """Builds and canonicalizes a diagram from raw vertex lists."""
    return Diagram(double_rank, blocks)


def identity_diagram(double_rank: int) -> Diagram:
    k2 = columns(double_rank)
    return Diagram(double_rank, [[i, -i] for i in range(1, k2 + 1)])


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def compose(d1: Diagram, d2: Diagram) -> tuple[Diagram, int]:
    """Stacks d1 above d2.

    Returns (d1 d2, removed) where removed counts the connected
    components of the stacked picture that touch neither the top rim of
    d1 nor the bottom rim of d2.  Results are memoized; products of the
    same pair dominate whole-algebra computations.
    """
    if d1.double_rank != d2.double_rank:
        raise RankMismatch(f"ranks {d1.double_rank}/2 and {d2.double_rank}/2 differ")
    return _compose_cached(d1, d2)


@lru_cache(maxsize=1 << 18)
def _compose_cached(d1: Diagram, d2: Diagram) -> tuple[Diagram, int]:
    k2 = columns(d1.double_rank)
    # node ids: top 0..k2-1, middle k2..2k2-1, bottom 2k2..3k2-1
    uf = _UnionFind(3 * k2)
    for block in d1.blocks:
        first = None
        for v in block:
            node = v - 1 if v > 0 else k2 + (-v) - 1
            if first is None:
                first = node
            else:
                uf.union(first, node)
    for block in d2.blocks:
        first = None
        for v in block:
            node = k2 + v - 1 if v > 0 else 2 * k2 + (-v) - 1
            if first is None:
                first = node
            else:
                uf.union(first, node)
    groups: dict[int, list[int]] = {}
    for node in range(3 * k2):
        groups.setdefault(uf.find(node), []).append(node)
    blocks = []
    removed = 0
    for members in groups.values():
        rim = [m for m in members if m < k2 or m >= 2 * k2]
        if not rim:
            removed += 1
            continue
        blocks.append([m + 1 if m < k2 else -(m - 2 * k2 + 1) for m in rim])
    return Diagram(d1.double_rank, blocks), removed


def propagating_number(d: Diagram) -> int:
    count = 0
    for block in d.blocks:
        if any(v > 0 for v in block) and any(v < 0 for v in block):
            count += 1
    return count


def _cycle_positions(d: Diagram) -> list[list[int]]:
    # boundary cycle 1,...,K,K',...,1'
    k2 = columns(d.double_rank)
    out = []
    for block in d.blocks:
        out.append(sorted(v - 1 if v > 0 else 2 * k2 + v for v in block))
    return out


def is_planar(d: Diagram) -> bool:
    """True iff no two blocks interleave on the boundary cycle."""
    pos = _cycle_positions(d)
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            merged = sorted((p, 0) for p in pos[i]) + sorted((p, 1) for p in pos[j])
            merged.sort()
            changes = 0
            n = len(merged)
            for t in range(n):
                if merged[t][1] != merged[(t + 1) % n][1]:
                    changes += 1
            if changes >= 4:
                return False
    return True


def classify(d: Diagram) -> dict[str, bool]:
    """Membership flags for the permutation, ideal, planar, pairing,
    and planar-pairing sub-monoids."""
    k2 = columns(d.double_rank)
    pn = propagating_number(d)
    planar = is_planar(d)
    pairs = all(len(b) == 2 for b in d.blocks)
    return {
        "in_S": pn == k2,
        "in_I": pn < k2,
        "in_P": planar,
        "in_B": pairs,
        "in_T": planar and pairs,
    }


def _gen_index(index) -> Fraction:
    idx = Fraction(index)
    if idx.denominator not in (1, 2):
        raise IndexOutOfRange(f"index {index} is not a half-integer")
    return idx


def generator(kind: str, index, double_rank: int) -> Diagram:
    """The named generator diagram at the given rank.

    kind "s": adjacent transposition, integer index i, swaps columns
    i, i+1.  kind "e": joins columns i, i+1 within each row.  kind "p"
    with integer index j: isolates column j; with half-integer index
    i+1/2: merges columns i, i+1 across both rows.  Index ranges are
    exactly those for which the displayed diagram exists and respects
    the half-integer constraint block.
    """
    k2 = columns(double_rank)
    half = double_rank % 2 == 1
    idx = _gen_index(index)

    def strands(skip):
        return [[m, -m] for m in range(1, k2 + 1) if m not in skip]
    if kind == "s":
        if idx.denominator != 1 or not 1 <= idx <= k2 - 1 - (1 if half else 0):
            raise IndexOutOfRange(f"s_{index} undefined at rank {Fraction(double_rank, 2)}")
        i = int(idx)
        return Diagram(double_rank, [[i, -(i + 1)], [i + 1, -i]] + strands({i, i + 1}))
    if kind == "e":
        if idx.denominator != 1 or not 1 <= idx <= k2 - 1 - (1 if half else 0):
            raise IndexOutOfRange(f"e_{index} undefined at rank {Fraction(double_rank, 2)}")
        i = int(idx)
        return Diagram(double_rank, [[i, i + 1], [-i, -(i + 1)]] + strands({i, i + 1}))
    if kind == "p":
        if idx.denominator == 1:
            j = int(idx)
            if not 1 <= j <= k2 - (1 if half else 0):
                raise IndexOutOfRange(f"p_{index} undefined at rank {Fraction(double_rank, 2)}")
            return Diagram(double_rank, [[j], [-j]] + strands({j}))
        i = int(idx - Fraction(1, 2))
        if not 1 <= i <= k2 - 1:
            raise IndexOutOfRange(f"p_{index} undefined at rank {Fraction(double_rank, 2)}")
        return Diagram(double_rank, [[i, i + 1, -i, -(i + 1)]] + strands({i, i + 1}))
    raise IndexOutOfRange(f"unknown generator kind {kind!r}")


Token = tuple[str, Fraction]


def token_str(token: Token) -> str:
    kind, idx = token
    return f"{kind}_{idx}"


def parse_token(text: str) -> Token:
    kind, _, idx = text.partition("_")
    if kind not in ("s", "e", "p") or not idx:
        raise IndexOutOfRange(f"bad generator token {text!r}")
    return (kind, Fraction(idx))


def evaluate_word(word: Sequence[Token], double_rank: int) -> Diagram:
    """Monoid product of generator tokens, top to bottom; removed
    components are ignored."""
    result = identity_diagram(double_rank)
    for kind, idx in word:
        result, _ = compose(result, generator(kind, idx, double_rank))
    return result


def enumerate_diagrams(double_rank: int, *, max_double_rank: int = 8) -> Iterator[Diagram]:
    """All diagrams of the rank, in restricted-growth-string order.

    Strings run over the vertex sequence 1,...,K,-1,...,-K; for
    half-integer rank, strings placing K and -K apart are skipped.
    """
    if double_rank > max_double_rank:
        raise LimitExceeded(
            f"double rank {double_rank} above limit {max_double_rank}"
        )
    verts = vertex_universe(double_rank)
    n = len(verts)
    if n == 0:
        yield Diagram(0, [])
        return
    half = double_rank % 2 == 1
    k2 = columns(double_rank)

    def rg(prefix: list[int], top: int) -> Iterator[list[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for label in range(top + 2):
            yield from rg(prefix + [label], max(top, label))

    for string in rg([], -1):
        if half and string[k2 - 1] != string[2 * k2 - 1]:
            continue
        groups: dict[int, list[int]] = {}
        for v, label in zip(verts, string):
            groups.setdefault(label, []).append(v)
        yield Diagram(double_rank, list(groups.values()))


def flip(d: Diagram) -> Diagram:
    """Top-bottom mirror: negates every vertex.  An involution."""
    return Diagram(d.double_rank, [[-v for v in b] for b in d.blocks])


def coarsens(d1: Diagram, d2: Diagram) -> bool:
    """True iff every block of d1 lies inside a block of d2."""
    if d1.double_rank != d2.double_rank:
        raise RankMismatch("ranks differ")
    owner = {v: i for i, b in enumerate(d2.blocks) for v in b}
    return all(len({owner[v] for v in b}) == 1 for b in d1.blocks)


def permutation_diagram(images: Sequence[int], double_rank: int) -> Diagram:
    """Diagram of the permutation sending top i to bottom images[i-1]."""
    return Diagram(double_rank, [[i, -images[i - 1]] for i in range(1, len(images) + 1)])


def perm_word(images: Sequence[int]) -> list[Token]:
    """Adjacent-transposition word whose top-down evaluation is the
    permutation diagram of images (bubble sort emission order)."""
    arr = list(images)
    word: list[Token] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(("s", Fraction(i + 1)))
                changed = True
    return word


def factorize(d: Diagram) -> list[Token]:
    """A generator word whose monoid evaluation equals d.

    Layout: blocks in canonical order get consecutive top columns and
    consecutive bottom columns, yielding permutations sigma1, sigma2
    around a planar core; the core is emitted as merge run, break run,
    propagating permutation, break run, merge run.  The word is
    deterministic but not length-minimal.
    """
    if d.double_rank % 2 == 1:
        raise NonIntegerRank("factorization needs an integer rank")
    k = d.double_rank // 2
    if k == 0:
        return []
    c1: dict[int, int] = {}
    c2: dict[int, int] = {}
    col = 1
    for block in d.blocks:
        for v in block:
            if v > 0:
                c1[v] = col
                col += 1
    col = 1
    for block in d.blocks:
        for v in block:
            if v < 0:
                c2[-v] = col
                col += 1
    sigma1 = [c1[i] for i in range(1, k + 1)]
    sigma2 = [0] * k
    for v, c in c2.items():
        sigma2[c - 1] = v

    merges_top: list[int] = []
    merges_bot: list[int] = []
    su: list[int] = []
    sl: list[int] = []
    for block in d.blocks:
        top = sorted(c1[v] for v in block if v > 0)
        bot = sorted(c2[-v] for v in block if v < 0)
        if top:
            merges_top.extend(range(top[0], top[-1]))
        if bot:
            merges_bot.extend(range(bot[0], bot[-1]))
        if top and bot:
            su.append(top[0])
            sl.append(bot[0])
    breaks_top = [j for j in range(1, k + 1) if j not in su]
    breaks_bot = [j for j in range(1, k + 1) if j not in sl]
    tau = [0] * k
    for a, b in zip(su, sl):
        tau[a - 1] = b
    for a, b in zip(breaks_top, breaks_bot):
        tau[a - 1] = b

    half = Fraction(1, 2)
    word = perm_word(sigma1)
    word += [("p", i + half) for i in sorted(merges_top)]
    word += [("p", Fraction(j)) for j in breaks_top]
    word += perm_word(tau)
    word += [("p", Fraction(j)) for j in breaks_bot]
    word += [("p", i + half) for i in sorted(merges_bot)]
    word += perm_word(sigma2)
    return word


def planar_to_tl(d: Diagram) -> Diagram:
    """Doubles a planar diagram into a planar pairing of twice the rank.

    Each column splits into a left and right boundary point; every
    block, read around the boundary cycle, contributes one strand from
    each member's outgoing side to the next member's incoming side.
    The map is a monoid isomorphism onto its image.
    """
    k2 = columns(d.double_rank)

    def outgoing(v: int) -> int:
        return 2 * v if v > 0 else -(2 * (-v) - 1)

    def incoming(v: int) -> int:
        return 2 * v - 1 if v > 0 else -(2 * (-v))

    def cyclic(v: int) -> int:
        return v - 1 if v > 0 else 2 * k2 + v

    blocks = []
    for block in d.blocks:
        ring = sorted(block, key=cyclic)
        for t, v in enumerate(ring):
            w = ring[(t + 1) % len(ring)]
            blocks.append([outgoing(v), incoming(w)])
    return Diagram(4 * k2, blocks)


def _p_indices(double_rank: int) -> list[Fraction]:
    k2 = columns(double_rank)
    half = double_rank % 2 == 1
    top_j = k2 - (1 if half else 0)
    out = [Fraction(j) for j in range(1, top_j + 1)]
    out += [Fraction(2 * i + 1, 2) for i in range(1, k2)]
    return sorted(out)


def presentation_relations(double_rank: int) -> list[tuple[str, list[Token], list[Token]]]:
    """Defining and derived relation instances at the given rank.

    Each entry is (name, left word, right word); both sides must agree
    under monoid evaluation.  Covers idempotents and sandwich rules for
    the join and break families, symmetric-group relations, the seven
    mixed rules, and four consequences used downstream.
    """
    k2 = columns(double_rank)
    half = double_rank % 2 == 1
    s_max = k2 - 1 - (1 if half else 0)
    ps = _p_indices(double_rank)
    hf = Fraction(1, 2)
    rels: list[tuple[str, list[Token], list[Token]]] = []

    def s(i) -> Token:
        return ("s", Fraction(i))

    def e(i) -> Token:
        return ("e", Fraction(i))

    def p(a) -> Token:
        return ("p", Fraction(a))

    for i in range(1, s_max + 1):
        rels.append((f"e_{i} idempotent", [e(i), e(i)], [e(i)]))
        rels.append((f"s_{i} involution", [s(i), s(i)], []))
        if i + 1 <= s_max:
            rels.append((f"e sandwich {i},{i + 1}", [e(i), e(i + 1), e(i)], [e(i)]))
            rels.append((f"e sandwich {i + 1},{i}", [e(i + 1), e(i), e(i + 1)], [e(i + 1)]))
            rels.append((f"braid {i}", [s(i), s(i + 1), s(i)], [s(i + 1), s(i), s(i + 1)]))
        for j in range(i + 2, s_max + 1):
            rels.append((f"e far {i},{j}", [e(i), e(j)], [e(j), e(i)]))
            rels.append((f"s far {i},{j}", [s(i), s(j)], [s(j), s(i)]))
    for a in ps:
        rels.append((f"p_{a} idempotent", [p(a), p(a)], [p(a)]))
        for b in ps:
            if abs(a - b) == hf:
                rels.append((f"p sandwich {a},{b}", [p(a), p(b), p(a)], [p(a)]))
            elif a < b:
                rels.append((f"p commute {a},{b}", [p(a), p(b)], [p(b), p(a)]))
    for i in range(1, s_max + 1):
        fi = Fraction(i)
        if fi + 1 in ps:
            rels.append((f"absorb left {i}", [s(i), p(i), p(i + 1)], [p(i), p(i + 1)]))
            rels.append((f"absorb right {i}", [p(i), p(i + 1), s(i)], [p(i), p(i + 1)]))
            rels.append((f"conjugate {i}", [s(i), p(i), s(i)], [p(i + 1)]))
            rels.append((f"push left {i}", [p(i), s(i), p(i)], [p(i + 1), p(i)]))
            rels.append((f"merge to cross {i}", [p(i), p(fi + hf), p(i + 1)], [p(i), s(i)]))
            rels.append((f"cross to merge {i}", [p(i + 1), p(fi + hf), p(i)], [s(i), p(i)]))
        if fi + hf in ps:
            rels.append((f"fix left {i}", [s(i), p(fi + hf)], [p(fi + hf)]))
            rels.append((f"fix right {i}", [p(fi + hf), s(i)], [p(fi + hf)]))
        if i + 1 <= s_max and fi + Fraction(3, 2) in ps:
            rels.append(
                (
                    f"shift merge {i}",
                    [s(i), s(i + 1), p(fi + hf), s(i + 1), s(i)],
                    [p(fi + Fraction(3, 2))],
                )
            )
        if i >= 2 and fi + hf in ps:
            rels.append(
                (
                    f"double merge {i}",
                    [p(fi + hf), s(i - 1), p(fi + hf)],
                    [p(fi + hf), p(fi - hf)],
                )
            )
        for a in ps:
            if a not in (fi - hf, fi, fi + hf, fi + 1, fi + Fraction(3, 2)):
                rels.append((f"s_{i} past p_{a}", [s(i), p(a)], [p(a), s(i)]))
    return rels


def verify_presentation(double_rank: int) -> list[str]:
    """Names of relation instances that fail under monoid evaluation."""
    failures = []
    for name, lhs, rhs in presentation_relations(double_rank):
        if evaluate_word(lhs, double_rank) != evaluate_word(rhs, double_rank):
            failures.append(name)
    return failures


def diagram_dot(d: Diagram) -> str:
    """Plain edge-list rendering of the diagram's block graph."""
    lines = ["graph diagram {"]
    for block in d.blocks:
        if len(block) == 1:
            lines.append(f'  "{block[0]}";')
        else:
            for a, b in zip(block, block[1:]):
                lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines)
