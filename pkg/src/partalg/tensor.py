"""Diagram actions on tensor powers of the natural module.

A rank-k diagram acts on the k-fold tensor power of an n-dimensional
space: the matrix coefficient between a top labeling and a bottom
labeling is 1 exactly when equal labels sit on every block.  Half ranks
act on the subspace whose extra slot is pinned to the last basis
vector.  Everything is exact rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .algebra import AlgebraElement, multiply
from .combinatorics import build_bratteli, syt_dimension
from .diagrams import Diagram, columns, enumerate_diagrams
from .errors import BadParams, LimitExceeded, PartalgError, RankMismatch
from .linalg import rank as matrix_rank

__all__ = [
    "EndoMatrix",
    "phi",
    "phi_orbit",
    "sym_tensor_matrix",
    "endo_eps",
    "restrict_last",
    "homomorphism_check",
    "commutant_dims",
    "bimodule_dimension_check",
]

MAX_SIDE = 81


class EndoMatrix:
    """Endomorphism of the slots-fold tensor power of an n-space.

    Rows are indexed by top (input) labelings, columns by bottom
    (output) labelings, both enumerated big-endian with the first slot
    most significant; with that layout the matrix product of two
    diagram actions stacks the diagrams top to bottom.
    """

    __slots__ = ("n", "slots", "rows")

    def __init__(self, n: int, slots: int, rows):
        self.n = n
        self.slots = slots
        self.rows = [[Fraction(v) for v in row] for row in rows]
        side = n**slots
        if len(self.rows) != side or any(len(r) != side for r in self.rows):
            raise BadParams("matrix side must be n**slots")

    @property
    def side(self) -> int:
        return self.n**self.slots

    @staticmethod
    def zero(n: int, slots: int) -> EndoMatrix:
        side = n**slots
        return EndoMatrix(n, slots, [[0] * side for _ in range(side)])

    @staticmethod
    def identity(n: int, slots: int) -> EndoMatrix:
        side = n**slots
        return EndoMatrix(
            n, slots, [[1 if i == j else 0 for j in range(side)] for i in range(side)]
        )

    def _check(self, other: EndoMatrix) -> None:
        if self.n != other.n or self.slots != other.slots:
            raise RankMismatch("endomorphism shapes differ")

    def __add__(self, other: EndoMatrix) -> EndoMatrix:
        self._check(other)
        return EndoMatrix(
            self.n,
            self.slots,
            [
                [a + b for a, b in zip(row_a, row_b)]
                for row_a, row_b in zip(self.rows, other.rows)
            ],
        )

    def scale(self, value) -> EndoMatrix:
        value = Fraction(value)
        return EndoMatrix(
            self.n, self.slots, [[value * v for v in row] for row in self.rows]
        )

    def __sub__(self, other: EndoMatrix) -> EndoMatrix:
        return self + other.scale(-1)

    def __matmul__(self, other: EndoMatrix) -> EndoMatrix:
        # row-sparse accumulation; diagram actions have few nonzero entries
        self._check(other)
        side = self.side
        out = [[Fraction(0)] * side for _ in range(side)]
        sparse_other = [
            [(j, v) for j, v in enumerate(row) if v] for row in other.rows
        ]
        for i, row in enumerate(self.rows):
            target = out[i]
            for t, a in enumerate(row):
                if a:
                    for j, b in sparse_other[t]:
                        target[j] += a * b
        return EndoMatrix(self.n, self.slots, out)

    def trace(self) -> Fraction:
        return sum(self.rows[i][i] for i in range(self.side))

    def is_zero(self) -> bool:
        return all(not v for row in self.rows for v in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EndoMatrix)
            and self.n == other.n
            and self.slots == other.slots
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.slots, tuple(tuple(r) for r in self.rows)))

    def flat(self) -> list[Fraction]:
        return [v for row in self.rows for v in row]

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"<EndoMatrix n={self.n} slots={self.slots}>"


def _labelings(n: int, slots: int):
    return list(product(range(1, n + 1), repeat=slots))


def _action_shape(double_rank: int, n: int, max_side: int):
    if n < 1:
        raise BadParams("need at least one basis vector")
    k2 = columns(double_rank)
    slots = double_rank // 2
    pinned = k2 if double_rank % 2 == 1 else None
    if n**slots > max_side:
        raise LimitExceeded(f"side {n}**{slots} exceeds cap {max_side}")
    return slots, pinned


def _block_labels_equal(d: Diagram, top, bot, pinned, n) -> bool:
    for block in d.blocks:
        first = None
        for v in block:
            if pinned is not None and abs(v) == pinned:
                label = n
            elif v > 0:
                label = top[v - 1]
            else:
                label = bot[-v - 1]
            if first is None:
                first = label
            elif label != first:
                return False
    return True


def phi(b: Diagram | AlgebraElement, n: int, *, max_side: int = MAX_SIDE) -> EndoMatrix:
    """Matrix of the diagram action; linear over specialized elements."""
    if isinstance(b, AlgebraElement):
        if b.mode != Fraction(n):
            raise BadParams("element must be specialized at the same n")
        out = EndoMatrix.zero(n, _action_shape(b.double_rank, n, max_side)[0])
        for d, c in b.terms.items():
            out = out + phi(d, n, max_side=max_side).scale(c)
        return out
    slots, pinned = _action_shape(b.double_rank, n, max_side)
    labels = _labelings(n, slots)
    rows = [
        [1 if _block_labels_equal(b, top, bot, pinned, n) else 0 for bot in labels]
        for top in labels
    ]
    return EndoMatrix(n, slots, rows)


def phi_orbit(d: Diagram, n: int, *, max_side: int = MAX_SIDE) -> EndoMatrix:
    """Action of the orbit element of d: entry 1 only when the label
    pattern matches the blocks of d exactly."""
    slots, pinned = _action_shape(d.double_rank, n, max_side)
    labels = _labelings(n, slots)

    def pattern_matches(top, bot) -> bool:
        def label(v):
            if pinned is not None and abs(v) == pinned:
                return n
            return top[v - 1] if v > 0 else bot[-v - 1]

        block_values = []
        for block in d.blocks:
            values = {label(v) for v in block}
            if len(values) != 1:
                return False
            block_values.append(values.pop())
        return len(set(block_values)) == len(block_values)

    rows = [
        [1 if pattern_matches(top, bot) else 0 for bot in labels] for top in labels
    ]
    return EndoMatrix(n, slots, rows)


def sym_tensor_matrix(images, n: int, slots: int, *, max_side: int = MAX_SIDE) -> EndoMatrix:
    """Diagonal permutation action: relabels every tensor slot."""
    if sorted(images) != list(range(1, n + 1)):
        raise BadParams("images must be a bijection of 1..n")
    if n**slots > max_side:
        raise LimitExceeded(f"side {n}**{slots} exceeds cap {max_side}")
    labels = _labelings(n, slots)
    position = {lab: t for t, lab in enumerate(labels)}
    side = len(labels)
    rows = [[0] * side for _ in range(side)]
    for t, lab in enumerate(labels):
        image = tuple(images[v - 1] for v in lab)
        rows[t][position[image]] = 1
    return EndoMatrix(n, slots, rows)


def endo_eps(b: EndoMatrix, which: str) -> EndoMatrix:
    """Index operations on the last tensor slot: "down" keeps entries
    whose last top and bottom labels agree, "up" sums both last labels
    out, "one" contracts them against each other."""
    if b.slots < 1:
        raise BadParams("no tensor slot to operate on")
    n, slots = b.n, b.slots
    outer = n ** (slots - 1)
    if which == "down":
        rows = [
            [
                b.rows[i][j] if i % n == j % n else Fraction(0)
                for j in range(b.side)
            ]
            for i in range(b.side)
        ]
        return EndoMatrix(n, slots, rows)
    if which in ("up", "one"):
        rows = []
        for i in range(outer):
            row = []
            for j in range(outer):
                if which == "up":
                    total = sum(
                        b.rows[i * n + a][j * n + c]
                        for a in range(n)
                        for c in range(n)
                    )
                else:
                    total = sum(b.rows[i * n + a][j * n + a] for a in range(n))
                row.append(total)
            rows.append(row)
        return EndoMatrix(n, slots - 1, rows)
    raise BadParams(f"unknown direction {which!r}")


def restrict_last(b: EndoMatrix, value: int | None = None) -> EndoMatrix:
    """Compression to labelings whose last slot carries the given basis
    index (default: the last one)."""
    if b.slots < 1:
        raise BadParams("no tensor slot to restrict")
    pin = (b.n if value is None else value) - 1
    if not 0 <= pin < b.n:
        raise BadParams("pinned value out of range")
    n, outer = b.n, b.n ** (b.slots - 1)
    rows = [
        [b.rows[i * n + pin][j * n + pin] for j in range(outer)] for i in range(outer)
    ]
    return EndoMatrix(n, b.slots - 1, rows)


def homomorphism_check(
    n: int,
    double_rank: int,
    samples: int | None = None,
    *,
    seed: int = 0,
    max_side: int = MAX_SIDE,
) -> dict:
    """Compares the action of every product with the product of the
    actions; exhaustive over basis pairs unless a sample count is given."""
    basis = list(enumerate_diagrams(double_rank))
    if samples is None:
        pairs = [(a, b) for a in basis for b in basis]
    else:
        import random

        rng = random.Random(seed)
        pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(samples)]
    matrices = {d: phi(d, n, max_side=max_side) for d in basis}
    mode = Fraction(n)
    failures = []
    for d1, d2 in pairs:
        product_element = multiply(
            AlgebraElement(double_rank, {d1: 1}, mode),
            AlgebraElement(double_rank, {d2: 1}, mode),
        )
        if phi(product_element, n, max_side=max_side) != matrices[d1] @ matrices[d2]:
            failures.append((d1, d2))
    return {"pairs": len(pairs), "failures": failures}


def commutant_dims(
    n: int, double_rank: int, *, max_side: int = MAX_SIDE
) -> tuple[int, int, list[Diagram]]:
    """Rank of the span of the diagram actions, the kernel dimension,
    and the diagrams whose orbit elements span the kernel (those with
    more than n blocks; each is checked to act by zero)."""
    basis = list(enumerate_diagrams(double_rank))
    vectors = [phi(d, n, max_side=max_side).flat() for d in basis]
    image_rank = matrix_rank(vectors)
    kernel_dim = len(basis) - image_rank
    witnesses = [d for d in basis if len(d.blocks) > n]
    for d in witnesses:
        if not phi_orbit(d, n, max_side=max_side).is_zero():
            raise PartalgError("orbit element with many blocks acts nonzero")
    return image_rank, kernel_dim, witnesses


def bimodule_dimension_check(
    n: int, double_rank: int, *, max_side: int = MAX_SIDE
) -> dict:
    """Dimension bookkeeping for the joint symmetric-group/diagram
    action: weighted path counts against the tensor dimension and
    squared path counts against the image rank."""
    graph = build_bratteli("concrete", double_rank, n)
    level = graph.levels[double_rank]
    weighted = 0
    squared = 0
    for shape in level:
        paths = graph.path_count(double_rank, shape)
        weighted += syt_dimension(shape) * paths
        squared += paths * paths
    image_rank, kernel_dim, _ = commutant_dims(n, double_rank, max_side=max_side)
    slots = double_rank // 2
    return {
        "tensor_dim": n**slots,
        "weighted_paths": weighted,
        "squared_paths": squared,
        "image_rank": image_rank,
        "kernel_dim": kernel_dim,
    }
