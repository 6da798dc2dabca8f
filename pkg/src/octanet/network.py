"""Wire networks of elementary chip matrices attached to a stepped surface.

A chip is a 2x2 block (lower or upper triangular with unit diagonal after
scaling) embedded into an identity matrix.  Chips carry their denominator
separately so all arithmetic stays in the exact Laurent ring: a sequence of
chips represents

    product(true matrices) = cleared_product / (product of denominators).

Minors of the true product divide out as (det of cleared submatrix) / denom^m.
Solution formulas only ever need entries or minors multiplied by data values,
and those combinations are exact divisions by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .laurent import (
    LaurentPoly,
    NotDivisible,
    VarTable,
    lp_canonical_text,
    lp_div_exact,
    lp_parse_canonical,
    lp_subst_zero,
)
from .surface import InitialData, ShadowDomain, SteppedSurface, SurfaceError

Matrix = List[List[LaurentPoly]]


class NetworkError(Exception):
    pass


class NotUnit(NetworkError):
    """True (divided) entries were requested but a denominator is not a unit."""


class TooLarge(NetworkError):
    """Path enumeration limits exceeded."""


class TheoremViolation(NetworkError):
    """A structural guarantee failed; the inputs or the build are inconsistent."""


# -- matrices over the Laurent ring -------------------------------------------


def mat_identity(n: int) -> Matrix:
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, mid, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = LaurentPoly.zero()
            for t in range(mid):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_scale(a: Matrix, c: LaurentPoly) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        if any(x != y for x, y in zip(ra, rb)):
            return False
    return True


def poly_det(m: Matrix) -> LaurentPoly:
    """Fraction-free determinant; all interior divisions are exact."""
    n = len(m)
    if n == 0:
        return LaurentPoly.one()
    a = [row[:] for row in m]
    sign = 1
    prev = LaurentPoly.one()
    for col in range(n - 1):
        if a[col][col].is_zero():
            for s in range(col + 1, n):
                if not a[s][col].is_zero():
                    a[col], a[s] = a[s], a[col]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                num = a[i][j] * a[col][col] - a[i][col] * a[col][j]
                a[i][j] = lp_div_exact(num, prev)
        prev = a[col][col]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


# -- chips ---------------------------------------------------------------------


@dataclass(frozen=True)
class Chip:
    """Elementary crossing on wires (wire, wire+1) with three data arguments."""

    kind: str  # "U" or "V"
    wire: int
    args: Tuple[LaurentPoly, LaurentPoly, LaurentPoly]

    def denom(self) -> LaurentPoly:
        a, b, c = self.args
        return b if self.kind == "U" else c

    def block(self) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        """Cleared 2x2 block (row-major) on wires (wire, wire+1)."""
        a, b, c = self.args
        if self.kind == "U":
            return (b, LaurentPoly.zero(), c, a)
        return (b, a, LaurentPoly.zero(), c)

    def inverse(self) -> "Chip":
        a, b, c = self.args
        if self.kind == "U":
            return Chip("U", self.wire, (b, a, -c))
        return Chip("V", self.wire, (-a, c, b))

    def text(self, table: VarTable) -> str:
        return "%s%d(%s;%s;%s)" % (
            self.kind,
            self.wire,
            lp_canonical_text(self.args[0], table),
            lp_canonical_text(self.args[1], table),
            lp_canonical_text(self.args[2], table),
        )


def chip_U(wire: int, a, b, c) -> Chip:
    return Chip("U", wire, (_lp(a), _lp(b), _lp(c)))


def chip_V(wire: int, a, b, c) -> Chip:
    return Chip("V", wire, (_lp(a), _lp(b), _lp(c)))


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


class ChipSequence:
    """A word of chips on wires [min_wire, max_wire]; the word order is the
    left-to-right matrix product order."""

    def __init__(self, chips: Sequence[Chip], min_wire: int, max_wire: int):
        for ch in chips:
            if not (min_wire <= ch.wire and ch.wire + 1 <= max_wire):
                raise NetworkError(
                    "chip on wires (%d,%d) outside [%d,%d]"
                    % (ch.wire, ch.wire + 1, min_wire, max_wire)
                )
        self.chips = list(chips)
        self.min_wire = min_wire
        self.max_wire = max_wire
        self._cleared: Optional[Tuple[Matrix, LaurentPoly]] = None

    @property
    def dim(self) -> int:
        return self.max_wire - self.min_wire + 1

    def local(self, wire: int) -> int:
        """0-based matrix index of a wire."""
        if not (self.min_wire <= wire <= self.max_wire):
            raise NetworkError("wire %d outside [%d,%d]" % (wire, self.min_wire, self.max_wire))
        return wire - self.min_wire

    def times(self, other: "ChipSequence") -> "ChipSequence":
        if (self.min_wire, self.max_wire) != (other.min_wire, other.max_wire):
            raise NetworkError("wire ranges differ")
        return ChipSequence(self.chips + other.chips, self.min_wire, self.max_wire)

    def cleared(self) -> Tuple[Matrix, LaurentPoly]:
        """(product of cleared chip matrices, product of denominators)."""
        if self._cleared is None:
            n = self.dim
            mat = mat_identity(n)
            denom = LaurentPoly.one()
            for ch in self.chips:
                mat = _mul_chip(mat, ch, self.min_wire)
                denom = denom * ch.denom()
            self._cleared = (mat, denom)
        return self._cleared

    def denominator(self) -> LaurentPoly:
        return self.cleared()[1]

    def entry_times(self, row_wire: int, col_wire: int, extra=1) -> LaurentPoly:
        """Exact value of  entry(row, col) * extra  of the true product."""
        mat, denom = self.cleared()
        num = mat[self.local(row_wire)][self.local(col_wire)] * _lp(extra)
        return lp_div_exact(num, denom)

    def minor_times(
        self,
        row_wires: Sequence[int],
        col_wires: Sequence[int],
        extra=1,
        extra_denom=1,
    ) -> LaurentPoly:
        """Exact value of  minor(rows, cols) * extra / extra_denom."""
        if len(row_wires) != len(col_wires):
            raise NetworkError("minor needs equally many rows and columns")
        mat, denom = self.cleared()
        sub = [[mat[self.local(r)][self.local(c)] for c in col_wires] for r in row_wires]
        num = poly_det(sub) * _lp(extra)
        den = denom ** len(row_wires) * _lp(extra_denom)
        return lp_div_exact(num, den)

    def true_matrix(self) -> Matrix:
        """Entrywise exact division; fails with NotDivisible when an entry is
        not a Laurent polynomial."""
        mat, denom = self.cleared()
        return [[lp_div_exact(x, denom) for x in row] for row in mat]

    def word_text(self, table: VarTable) -> str:
        return " ".join(ch.text(table) for ch in self.chips)

    def equals_true(self, other: "ChipSequence") -> bool:
        """Equality of the true products, checked by cross-multiplication."""
        if (self.min_wire, self.max_wire) != (other.min_wire, other.max_wire):
            return False
        ma, da = self.cleared()
        mb, db = other.cleared()
        return mat_eq(mat_scale(ma, db), mat_scale(mb, da))

    def matrix_equals(self, target: Matrix) -> bool:
        """True product == target (a plain Laurent matrix), cross-multiplied."""
        ma, da = self.cleared()
        return mat_eq(ma, mat_scale(target, da))


def _mul_chip(mat: Matrix, ch: Chip, min_wire: int) -> Matrix:
    """mat := mat * cleared(chip); the chip only mixes two columns."""
    n = len(mat)
    p = ch.wire - min_wire
    m11, m12, m21, m22 = ch.block()
    denom = ch.denom()
    out = [row[:] for row in mat]
    for i in range(n):
        for j in range(n):
            if j == p:
                out[i][j] = mat[i][p] * m11 + mat[i][p + 1] * m21
            elif j == p + 1:
                out[i][j] = mat[i][p] * m12 + mat[i][p + 1] * m22
            else:
                out[i][j] = mat[i][j] * denom
    return out


# -- decomposition of a surface region into chips -------------------------------


def _data_value(surface: SteppedSurface, data: InitialData, x: int, y: int) -> LaurentPoly:
    if surface.is_virtual(x, y) or not surface.in_system(x, y):
        return LaurentPoly.one()
    return data.value(x, y)


def chip_arg_points(surface: SteppedSurface, x: int, y: int):
    """Chip kind and the three surface points carrying its arguments.

    The apex argument lives across the square the chip shares with its row
    neighbor; which corner it sits on follows the square's diagonal, the same
    diagonal that fixes the stacking order.  The commonly quoted form (apex at
    (x-1, y) for V, (x+1, y-1) for U) is the generic diagonal only.
    """
    k_here = surface.height(x, y)
    k_left = surface.height(x, y - 1)
    if k_left == k_here - 1:
        if _stack_premultiplies(surface, x + 1, y):
            apex = (x + 1, y)
        else:
            apex = (x + 1, y - 1)
        return "U", ((x, y - 1), (x, y), apex)
    if k_left == k_here + 1:
        if _stack_premultiplies(surface, x, y):
            apex = (x - 1, y - 1)
        else:
            apex = (x - 1, y)
        return "V", (apex, (x, y - 1), (x, y))
    raise SurfaceError("surface is not stepped at (%d,%d)" % (x, y))


def surface_chip(surface: SteppedSurface, data: InitialData, x: int, y: int) -> Chip:
    """The crossing the surface shape dictates at column step (y-1 -> y), row x."""
    kind, pts = chip_arg_points(surface, x, y)
    args = tuple(_data_value(surface, data, px, py) for (px, py) in pts)
    return Chip(kind, x, args)


def _stack_premultiplies(surface: SteppedSurface, x: int, y: int) -> bool:
    """Whether the chip at (x, y) goes to the left of the chips below it in
    the same column.  Ties (both heights equal on the anti-diagonal) resolve
    to the right, matching the northwest-to-southeast reading order."""
    if surface.is_virtual(x - 1, y) or not surface.in_system(x - 1, y):
        return False
    try:
        cond = (
            surface.height(x, y) == surface.height(x - 1, y - 1)
            and surface.height(x - 1, y) != surface.height(x, y - 1)
        )
    except SurfaceError:
        return False
    return cond


def column_word(
    surface: SteppedSurface,
    data: InitialData,
    y: int,
    rows: Iterable[int],
    include=None,
) -> List[Chip]:
    """Chips of one column transition, stacked by the surface shape."""
    word: List[Chip] = []
    for x in sorted(rows):
        if include is not None and not include(x, y):
            continue
        ch = surface_chip(surface, data, x, y)
        if _stack_premultiplies(surface, x, y):
            word.insert(0, ch)
        else:
            word.append(ch)
    return word


def uv_decompose(
    surface: SteppedSurface, data: InitialData, j0: int, j1: int
) -> ChipSequence:
    """The full wall-to-wall network carrying columns (j0, j1].

    Only row-wall systems have a finite wire set; the wires are 1..r+1.
    """
    if surface.kind not in ("Ar",):
        raise SurfaceError("full decomposition needs a row-walled system")
    r = surface.r
    chips: List[Chip] = []
    for j in range(j0 + 1, j1 + 1):
        chips.extend(column_word(surface, data, j, range(1, r + 1)))
    return ChipSequence(chips, 1, r + 1)


def shadow_chip_columns(
    surface: SteppedSurface, dom: ShadowDomain
) -> Dict[int, List[int]]:
    """Column steps of the chips a shadow domain supports, keyed by row.

    A chip is supported exactly when all three of its data arguments lie in
    the domain (or on a virtual wall).  Apexes reach into neighbor rows, so a
    row's chip run can stop short of the row's own easternmost or westernmost
    domain point; the run ends are what the straight-through chip weights
    telescope to.
    """
    pts = dom.points

    def available(x, y):
        if surface.is_virtual(x, y) or not surface.in_system(x, y):
            return True
        return (x, y) in pts

    xs = [x for (x, _) in pts]
    ys = [y for (_, y) in pts]
    cols: Dict[int, List[int]] = {}
    for y in range(min(ys), max(ys) + 1):
        for x in range(min(xs), max(xs) + 1):
            if surface.is_virtual(x, y) or not surface.in_system(x, y):
                continue
            try:
                _, need = chip_arg_points(surface, x, y)
            except SurfaceError:
                continue
            if all(available(*p) for p in need):
                cols.setdefault(x, []).append(y)
    return cols


def shadow_network(
    surface: SteppedSurface, data: InitialData, dom: ShadowDomain
) -> ChipSequence:
    """The sub-network a shadow domain supports; see shadow_chip_columns."""
    cols = shadow_chip_columns(surface, dom)
    if not cols:
        raise NetworkError("shadow domain supports no chips")
    chips: List[Chip] = []
    all_ys = [y for ys in cols.values() for y in ys]
    for y in range(min(all_ys), max(all_ys) + 1):
        rows = [x for x in sorted(cols) if y in cols[x]]
        chips.extend(column_word(surface, data, y, rows))
    wires = set()
    for ch in chips:
        wires.add(ch.wire)
        wires.add(ch.wire + 1)
    lo, hi = min(wires), max(wires)
    if wires != set(range(lo, hi + 1)):
        raise NetworkError("shadow network wires are not contiguous")
    return ChipSequence(chips, lo, hi)


def parse_word(text: str, table: VarTable, min_wire=None, max_wire=None) -> ChipSequence:
    """Inverse of ChipSequence.word_text."""
    chips: List[Chip] = []
    pos = 0
    n = len(text)
    while pos < n:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        kind = text[pos]
        if kind not in ("U", "V"):
            raise NetworkError("bad chip word at offset %d" % pos)
        pos += 1
        start = pos
        while pos < n and (text[pos].isdigit() or text[pos] == "-"):
            pos += 1
        wire = int(text[start:pos])
        if pos >= n or text[pos] != "(":
            raise NetworkError("expected '(' at offset %d" % pos)
        pos += 1
        depth, start = 1, pos
        while pos < n and depth:
            if text[pos] == "(":
                depth += 1
            elif text[pos] == ")":
                depth -= 1
            pos += 1
        if depth:
            raise NetworkError("unbalanced parentheses in chip word")
        inner = text[start : pos - 1]
        parts = inner.split(";")
        if len(parts) != 3:
            raise NetworkError("chip needs exactly three arguments")
        args = tuple(lp_parse_canonical(p.strip(), table) for p in parts)
        chips.append(Chip(kind, wire, args))
    if not chips:
        raise NetworkError("empty chip word")
    lo = min(ch.wire for ch in chips) if min_wire is None else min_wire
    hi = max(ch.wire + 1 for ch in chips) if max_wire is None else max_wire
    return ChipSequence(chips, lo, hi)


# -- twist and reflection matrices ----------------------------------------------


def pq_matrices(r: int) -> Tuple[Matrix, Matrix]:
    """(antidiagonal reflection with row signs, diagonal sign flip), both
    involutions of the (r+1)-wire network."""
    n = r + 1
    zero = LaurentPoly.zero()
    P = [[zero for _ in range(n)] for _ in range(n)]
    S = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        j = r + 2 - i
        P[i - 1][j - 1] = LaurentPoly.const((-1) ** (((r - 1) * (i - 1)) % 2))
        S[i - 1][i - 1] = LaurentPoly.const((-1) ** ((i - 1) % 2))
    return P, S


def conjugate_by(mat: Matrix, seq: ChipSequence) -> Tuple[Matrix, LaurentPoly]:
    """mat * cleared(seq) * mat, keeping the denominator alongside."""
    m, d = seq.cleared()
    return mat_mul(mat_mul(mat, m), mat), d


# -- regularized wall networks ---------------------------------------------------


def regularized_left_network(r: int, j: int, table: VarTable) -> Tuple[ChipSequence, List[int]]:
    """Network crossing j columns into the left vanishing block, with the block
    replaced by its regularizing signed monomials.  Returns the sequence and
    the variable ids that tend to zero."""
    from .surface import Window, build_regularized_data

    if not (1 <= j <= r + 1):
        raise NetworkError("left network needs 1 <= j <= r+1")
    window = Window(1, r, -j, 0)
    surf, data, reg_vids = build_regularized_data(r, None, "plus", window, table)
    return uv_decompose(surf, data, -j, 0), reg_vids


def regularized_right_network(
    r: int, ell: int, j: int, table: VarTable
) -> Tuple[ChipSequence, List[int]]:
    """Mirror image crossing the right vanishing block from the wall column."""
    from .surface import Window, build_regularized_data

    if not (1 <= j <= r + 1):
        raise NetworkError("right network needs 1 <= j <= r+1")
    window = Window(1, r, ell + 1, ell + 1 + j)
    surf, data, reg_vids = build_regularized_data(r, ell, "minus", window, table)
    return uv_decompose(surf, data, ell + 1, ell + 1 + j), reg_vids


def polynomial_matrix(seq: ChipSequence) -> Matrix:
    """True matrix of a regularized network; every entry must divide out
    cleanly, otherwise the structural guarantee is violated."""
    try:
        return seq.true_matrix()
    except NotDivisible as e:
        raise TheoremViolation("network entry is not polynomial: %s" % e) from e


def matrix_limit_zero(mat: Matrix, vids: Iterable[int]) -> Matrix:
    """Entrywise limit sending the listed variables to zero."""
    vids = list(vids)
    return [[lp_subst_zero(x, vids) for x in row] for row in mat]


# -- lattice path view -----------------------------------------------------------


MAX_LGV_PATHS = 6
MAX_LGV_LAYERS = 40


@dataclass
class PathGraph:
    """Layered digraph of a chip word: one layer per chip, wires as nodes.

    Edges carry the true (divided) weights; building this view requires unit
    denominators.  Within a layer only the chip's two wires deviate from the
    straight-through edge.
    """

    min_wire: int
    max_wire: int
    layers: List[Dict[Tuple[int, int], LaurentPoly]]


def path_graph(seq: ChipSequence) -> PathGraph:
    layers: List[Dict[Tuple[int, int], LaurentPoly]] = []
    one = LaurentPoly.one()
    for ch in seq.chips:
        d = ch.denom()
        if not d.is_unit():
            raise NotUnit("chip denominator %r is not a unit" % d)
        dinv = d ** -1
        a, b, c = ch.args
        w = ch.wire
        edges: Dict[Tuple[int, int], LaurentPoly] = {}
        for x in range(seq.min_wire, seq.max_wire + 1):
            if x not in (w, w + 1):
                edges[(x, x)] = one
        if ch.kind == "U":
            edges[(w, w)] = one
            edges[(w + 1, w)] = c * dinv
            edges[(w + 1, w + 1)] = a * dinv
        else:
            edges[(w, w)] = b * dinv
            edges[(w, w + 1)] = a * dinv
            edges[(w + 1, w + 1)] = one
        layers.append(edges)
    return PathGraph(seq.min_wire, seq.max_wire, layers)


def lgv_minor(seq: ChipSequence, sources: Sequence[int], sinks: Sequence[int]) -> LaurentPoly:
    """Minor of the true product as a sum over vertex-disjoint path families.

    Every chip is triangular on its wire pair, so families never cross and the
    determinant reduces to the plain disjoint-family sum.  Computed with
    cleared weights; one exact division at the end.
    """
    m = len(sources)
    if m != len(sinks):
        raise NetworkError("source and sink counts differ")
    if m > MAX_LGV_PATHS:
        raise TooLarge("%d paths exceed the limit of %d" % (m, MAX_LGV_PATHS))
    if len(seq.chips) > MAX_LGV_LAYERS:
        raise TooLarge(
            "%d layers exceed the limit of %d" % (len(seq.chips), MAX_LGV_LAYERS)
        )
    if m == 0:
        return LaurentPoly.one()
    for w in list(sources) + list(sinks):
        seq.local(w)  # range check
    zero = LaurentPoly.zero()
    states: Dict[Tuple[int, ...], LaurentPoly] = {tuple(sorted(sources)): LaurentPoly.one()}
    for ch in seq.chips:
        a, b, c = ch.args
        w = ch.wire
        # cleared edge weights: straight-through wires pick up the denominator
        if ch.kind == "U":
            moves = {w: ((w, b),), w + 1: ((w, c), (w + 1, a))}
        else:
            moves = {w: ((w, b), (w + 1, a)), w + 1: ((w + 1, c),)}
        denom = ch.denom()
        nxt: Dict[Tuple[int, ...], LaurentPoly] = {}
        for occ, weight in states.items():
            options: List[List[Tuple[int, LaurentPoly]]] = []
            for x in occ:
                if x in moves:
                    options.append(list(moves[x]))
                else:
                    options.append([(x, denom)])
            # occupied wires advance independently; collisions are discarded
            def rec(idx, targets, acc):
                if idx == len(options):
                    key = tuple(sorted(targets))
                    nxt[key] = nxt.get(key, zero) + acc
                    return
                for (tgt, wt) in options[idx]:
                    if tgt in targets:
                        continue
                    rec(idx + 1, targets + [tgt], acc * wt)

            rec(0, [], weight)
        states = {k: v for k, v in nxt.items() if not v.is_zero()}
    total = states.get(tuple(sorted(sinks)), zero)
    denom_all = seq.denominator() ** m
    return lp_div_exact(total, denom_all)
