"""Symmetric group machinery inside the diagram tower.

Permutations, the sum-of-transpositions central element, Young
symmetrizers, and exact rational matrix units for the group algebra,
built by interpolating the commuting family X_i = sum of (j i), j < i,
at its integer content eigenvalues.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .algebra import AlgebraElement, Mode, diagram_element, multiply, one, zero
from .diagrams import permutation_diagram
from .errors import DegenerateEigenvalues, SizeMismatch

__all__ = [
    "Permutation",
    "MatrixUnitSystem",
    "transposition",
    "kappa",
    "standard_tableaux_of",
    "row_reading_tableau",
    "column_reading_tableau",
    "young_elements",
    "sym_matrix_units",
]


class Permutation:
    """Bijection of {1..size} stored in one-line form."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise SizeMismatch("images are not a bijection of 1..size")
        self.images = images

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """(self * other)(i) = other(self(i)): apply self first, matching
        the top-down diagram product."""
        if self.size != other.size:
            raise SizeMismatch("permutation sizes differ")
        return Permutation(tuple(other.images[v - 1] for v in self.images))

    def inverse(self) -> Permutation:
        out = [0] * self.size
        for i, v in enumerate(self.images, start=1):
            out[v - 1] = i
        return Permutation(out)

    def sign(self) -> int:
        seen = [False] * self.size
        sign = 1
        for start in range(1, self.size + 1):
            if seen[start - 1]:
                continue
            length = 0
            v = start
            while not seen[v - 1]:
                seen[v - 1] = True
                v = self.images[v - 1]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum."""
        seen = [False] * self.size
        out = []
        for start in range(1, self.size + 1):
            if seen[start - 1]:
                continue
            cycle = []
            v = start
            while not seen[v - 1]:
                seen[v - 1] = True
                cycle.append(v)
                v = self.images[v - 1]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def to_element(self, mode: Mode = None) -> AlgebraElement:
        return diagram_element(
            permutation_diagram(self.images, 2 * self.size), mode=mode
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    @staticmethod
    def identity(size: int) -> Permutation:
        return Permutation(range(1, size + 1))

    @staticmethod
    def from_cycles(size: int, cycles) -> Permutation:
        images = list(range(1, size + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return Permutation(images)


def transposition(a: int, b: int, size: int) -> Permutation:
    images = list(range(1, size + 1))
    images[a - 1], images[b - 1] = b, a
    return Permutation(images)


def kappa(n: int, mode: Mode = None) -> AlgebraElement:
    """Sum of all transpositions of S_n; central in the group algebra."""
    total = zero(2 * n, mode)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            total = total + transposition(a, b, n).to_element(mode)
    return total


def standard_tableaux_of(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Standard fillings of the shape, as row tuples, sorted."""
    size = sum(shape)

    def grow(rows: tuple[tuple[int, ...], ...], value: int):
        if value > size:
            yield rows
            return
        for r in range(len(shape)):
            filled = len(rows[r]) if r < len(rows) else 0
            if r == 0:
                above = shape[0]
            else:
                above = len(rows[r - 1]) if r - 1 < len(rows) else 0
            if filled < shape[r] and filled < above:
                grown = list(rows)
                while len(grown) <= r:
                    grown.append(())
                grown[r] = grown[r] + (value,)
                yield from grow(tuple(grown), value + 1)

    return sorted(grow((), 1))


def row_reading_tableau(shape: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    rows, next_value = [], 1
    for length in shape:
        rows.append(tuple(range(next_value, next_value + length)))
        next_value += length
    return tuple(rows)


def column_reading_tableau(shape: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    rows = [[0] * length for length in shape]
    next_value = 1
    for j in range(shape[0]):
        for i in range(len(shape)):
            if j < shape[i]:
                rows[i][j] = next_value
                next_value += 1
    return tuple(tuple(r) for r in rows)


def _segments(shape: tuple[int, ...]) -> list[range]:
    out, start = [], 1
    for length in shape:
        out.append(range(start, start + length))
        start += length
    return out


def _subgroup_sum(shape: tuple[int, ...], size: int, signed: bool, mode: Mode) -> AlgebraElement:
    """Sum over the parabolic subgroup permuting consecutive segments,
    with signs when requested."""
    total = zero(2 * size, mode)
    segments = _segments(shape)
    for choice in product(*(permutations(seg) for seg in segments)):
        images = list(range(1, size + 1))
        for seg, perm in zip(segments, choice):
            for slot, value in zip(seg, perm):
                images[slot - 1] = value
        w = Permutation(images)
        coeff = w.sign() if signed else 1
        total = total + w.to_element(mode).scale(coeff)
    return total


def _conjugate(shape: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(
        sum(1 for length in shape if length > j) for j in range(shape[0])
    ) if shape else ()


def _checked_shape(shape, size: int) -> tuple[int, ...]:
    shape = tuple(int(v) for v in shape)
    if sum(shape) != size:
        raise SizeMismatch("shape size differs from the group rank")
    if any(a < b for a, b in zip(shape, shape[1:])) or any(v <= 0 for v in shape):
        raise SizeMismatch("not a partition")
    return shape


def reading_word_permutation(shape, size: int) -> Permutation:
    """The permutation carrying the row reading tableau entrywise to
    the column reading tableau."""
    shape = _checked_shape(shape, size)
    images = [0] * size
    for r_row, c_row in zip(row_reading_tableau(shape), column_reading_tableau(shape)):
        for r, c in zip(r_row, c_row):
            images[r - 1] = c
    return Permutation(images)


def young_elements(shape, size: int, mode: Mode = None):
    """Row-sum, signed column-sum, the reading-word permutation, and
    the quasi-idempotent built from them.

    Returns (row_part, signed_part, tau, product) where the product is
    row_part * tau * signed_part * tau^{-1}.
    """
    shape = _checked_shape(shape, size)
    row_part = _subgroup_sum(shape, size, signed=False, mode=mode)
    signed_part = _subgroup_sum(_conjugate(shape), size, signed=True, mode=mode)
    tau = reading_word_permutation(shape, size)
    conjugated = multiply(
        multiply(tau.to_element(mode), signed_part), tau.inverse().to_element(mode)
    )
    return row_part, signed_part, tau, multiply(row_part, conjugated)


class MatrixUnitSystem:
    """Complete system of matrix units, indexed by (shape, P, Q) with
    P, Q standard tableaux of the shape."""

    __slots__ = ("size", "mode", "index", "units")

    def __init__(self, size: int, mode: Mode, units: dict):
        self.size = size
        self.mode = mode
        self.index = sorted(units)
        self.units = units

    def unit(self, shape, p, q) -> AlgebraElement:
        return self.units[(tuple(shape), p, q)]

    def diagonal_index(self) -> list[tuple]:
        return [key for key in self.index if key[1] == key[2]]

    def identity_sum(self) -> AlgebraElement:
        total = zero(2 * self.size, self.mode)
        for key in self.diagonal_index():
            total = total + self.units[key]
        return total


def _contents(tableau: tuple[tuple[int, ...], ...], size: int) -> tuple[int, ...]:
    out = [0] * size
    for i, row in enumerate(tableau):
        for j, value in enumerate(row):
            out[value - 1] = j - i
    return tuple(out)


def _jm_element(i: int, size: int, mode: Mode) -> AlgebraElement:
    total = zero(2 * size, mode)
    for j in range(1, i):
        total = total + transposition(j, i, size).to_element(mode)
    return total


@lru_cache(maxsize=None)
def sym_matrix_units(size: int, mode: Mode = None) -> MatrixUnitSystem:
    """Matrix units for the group algebra of S_size, size <= 4.

    Diagonal units come from interpolating each X_i at the content of i;
    off-diagonal units are conjugates through the first tableau of each
    shape, with the left factor rescaled to make the products exact.
    """
    from .combinatorics import partitions_of

    shapes = [tuple(p) for p in partitions_of(size)]
    tableaux = {shape: standard_tableaux_of(shape) for shape in shapes}
    all_tabs = [t for shape in shapes for t in tableaux[shape]]
    content_vectors = {t: _contents(t, size) for t in all_tabs}
    if len(set(content_vectors.values())) != len(all_tabs):
        raise DegenerateEigenvalues("content vectors collide")
    spectrum = [
        sorted({content_vectors[t][i] for t in all_tabs}) for i in range(size)
    ]

    jm = [_jm_element(i, size, mode) for i in range(1, size + 1)]
    identity = one(2 * size, mode)

    def diagonal_unit(tableau) -> AlgebraElement:
        out = identity
        target = content_vectors[tableau]
        for i in range(size):
            for c in spectrum[i]:
                if c == target[i]:
                    continue
                shifted = jm[i] - identity.scale(c)
                out = multiply(out, shifted).scale(Fraction(1, target[i] - c))
        return out

    def tableau_map(src, dst) -> Permutation:
        images = [0] * size
        for s_row, d_row in zip(src, dst):
            for s, d in zip(s_row, d_row):
                images[s - 1] = d
        return Permutation(images)

    units: dict = {}
    group = [Permutation(p) for p in permutations(range(1, size + 1))]
    for shape in shapes:
        tabs = tableaux[shape]
        diag = {t: diagonal_unit(t) for t in tabs}
        base = tabs[0]
        units[(shape, base, base)] = diag[base]
        to_base: dict = {}
        from_base: dict = {}
        for t in tabs[1:]:
            units[(shape, t, t)] = diag[t]
            candidates = [tableau_map(t, base)] + group
            for sigma in candidates:
                u = multiply(multiply(diag[base], sigma.to_element(mode)), diag[t])
                if u.is_zero():
                    continue
                v = multiply(
                    multiply(diag[t], sigma.inverse().to_element(mode)), diag[base]
                )
                uv = multiply(u, v)
                if uv.is_zero():
                    continue
                gamma = _unit_ratio(uv, diag[base])
                from_base[t] = u.scale(Fraction(1) / gamma)
                to_base[t] = v
                break
            else:
                raise DegenerateEigenvalues("no connecting group element found")
        for p in tabs[1:]:
            units[(shape, p, base)] = to_base[p]
            units[(shape, base, p)] = from_base[p]
        for p in tabs[1:]:
            for q in tabs[1:]:
                if p != q:
                    units[(shape, p, q)] = multiply(to_base[p], from_base[q])
    return MatrixUnitSystem(size, mode, units)


def _unit_ratio(multiple: AlgebraElement, unit: AlgebraElement) -> Fraction:
    """The rational c with multiple = c * unit; both nonzero with
    constant coefficients."""
    d, coeff = next(iter(unit.terms.items()))
    found = multiple.terms.get(d)
    if found is None:
        raise DegenerateEigenvalues("product is not a multiple of the unit")
    ratio = _constant_value(found) / _constant_value(coeff)
    if multiple != unit.scale(ratio):
        raise DegenerateEigenvalues("product is not a multiple of the unit")
    return ratio


def _constant_value(coeff) -> Fraction:
    from .scalars import Poly

    if isinstance(coeff, Poly):
        return coeff.const_value()
    return Fraction(coeff)
