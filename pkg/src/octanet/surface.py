"""Stepped height surfaces carrying initial data for the octahedron recurrence.

A stepped surface assigns a height k_{i,j} to each lattice point with
i+j+k_{i,j} even and |height difference| = 1 between lattice neighbors.
Initial data assigns a value to every surface point.  Wall-type systems
freeze virtual rows (i = 0 and i = r+1) and, for column walls, virtual
columns (j = 0 and j = ell+1) to the constant 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .laurent import LaurentPoly, VarTable, lp_div_exact

Point = Tuple[int, int]

KINDS = ("Ainf", "Ar", "RightHalf", "LeftHalf", "Restricted")


class SurfaceError(Exception):
    pass


class OutOfWindow(SurfaceError):
    """A computation needed a surface point outside the stored window."""


class NotMutable(SurfaceError):
    pass


class CornerAmbiguity(SurfaceError):
    """Shadow boundary corners could not be read off consistently."""


@dataclass(frozen=True)
class Window:
    imin: int
    imax: int
    jmin: int
    jmax: int

    def contains(self, i: int, j: int) -> bool:
        return self.imin <= i <= self.imax and self.jmin <= j <= self.jmax

    def grow(self, margin: int) -> "Window":
        return Window(
            self.imin - margin, self.imax + margin, self.jmin - margin, self.jmax + margin
        )


class SteppedSurface:
    def __init__(
        self,
        kind: str,
        window: Window,
        heights: Dict[Point, int],
        r: Optional[int] = None,
        ell: Optional[int] = None,
    ):
        if kind not in KINDS:
            raise SurfaceError("unknown surface kind %r" % kind)
        if kind != "Ainf" and r is None:
            raise SurfaceError("kind %r needs r" % kind)
        if kind in ("LeftHalf", "Restricted") and ell is None:
            raise SurfaceError("kind %r needs ell" % kind)
        self.kind = kind
        self.window = window
        self.heights = heights
        self.r = r
        self.ell = ell

    # -- legality ------------------------------------------------------------

    def row_is_virtual(self, i: int) -> bool:
        return self.kind != "Ainf" and i in (0, self.r + 1)

    def col_is_virtual(self, j: int) -> bool:
        if self.kind == "RightHalf":
            return j == 0
        if self.kind == "LeftHalf":
            return j == self.ell + 1
        if self.kind == "Restricted":
            return j in (0, self.ell + 1)
        return False

    def is_virtual(self, i: int, j: int) -> bool:
        return self.row_is_virtual(i) or self.col_is_virtual(j)

    def row_in_system(self, i: int) -> bool:
        if self.kind == "Ainf":
            return True
        return 0 <= i <= self.r + 1

    def col_in_system(self, j: int) -> bool:
        if self.kind == "RightHalf":
            return j >= 0
        if self.kind == "LeftHalf":
            return j <= self.ell + 1
        if self.kind == "Restricted":
            return 0 <= j <= self.ell + 1
        return True

    def in_system(self, i: int, j: int) -> bool:
        return self.row_in_system(i) and self.col_in_system(j)

    # -- access ----------------------------------------------------------------

    def height(self, i: int, j: int) -> int:
        try:
            return self.heights[(i, j)]
        except KeyError:
            raise OutOfWindow("no height stored at (%d,%d)" % (i, j))

    def real_points(self):
        return self.heights.keys()

    def copy(self) -> "SteppedSurface":
        return SteppedSurface(self.kind, self.window, dict(self.heights), self.r, self.ell)

    def reflected(self) -> "SteppedSurface":
        """The surface with all heights negated (used for below-surface queries)."""
        return SteppedSurface(
            self.kind, self.window, {p: -k for p, k in self.heights.items()}, self.r, self.ell
        )


class InitialData:
    """Values on the real surface points; virtual walls are implicit 1."""

    def __init__(self, table: VarTable, values: Dict[Point, LaurentPoly]):
        self.table = table
        self.values = values

    def value(self, i: int, j: int) -> LaurentPoly:
        try:
            return self.values[(i, j)]
        except KeyError:
            raise OutOfWindow("no data stored at (%d,%d)" % (i, j))

    def copy(self) -> "InitialData":
        return InitialData(self.table, dict(self.values))

    def is_unit_or_zero(self) -> bool:
        """True when every stored value is 0 or a Laurent unit (no regularization needed
        for division-free formulas; zeros still need it for network crossings)."""
        return all(v.is_zero() or v.is_unit() for v in self.values.values())

    def has_zero(self) -> bool:
        return any(v.is_zero() for v in self.values.values())


def _legal_points(kind, window, r, ell):
    for i in range(window.imin, window.imax + 1):
        for j in range(window.jmin, window.jmax + 1):
            if kind != "Ainf" and not (1 <= i <= r):
                continue
            if kind == "RightHalf" and j < 1:
                continue
            if kind == "LeftHalf" and j > ell:
                continue
            if kind == "Restricted" and not (1 <= j <= ell):
                continue
            yield (i, j)


def flat_surface(
    kind: str,
    window: Window,
    r: Optional[int] = None,
    ell: Optional[int] = None,
    offset: int = 0,
) -> SteppedSurface:
    """The fundamental surface k_{i,j} = (i+j) mod 2, shifted by an even offset."""
    if offset % 2:
        raise SurfaceError("offset must be even to preserve parity")
    heights = {(i, j): (i + j) % 2 + offset for (i, j) in _legal_points(kind, window, r, ell)}
    return SteppedSurface(kind, window, heights, r, ell)


def generic_data(surface: SteppedSurface, table: VarTable) -> InitialData:
    """Free variables t[i,j] at every real surface point."""
    values = {(i, j): table.poly("t[%d,%d]" % (i, j)) for (i, j) in surface.real_points()}
    return InitialData(table, values)


def validate(surface: SteppedSurface) -> List[str]:
    """Report parity and unit-step violations (empty report means valid)."""
    findings = []
    for (i, j), k in sorted(surface.heights.items()):
        if (i + j + k) % 2:
            findings.append("parity violation at (%d,%d): height %d" % (i, j, k))
        for (x, y) in ((i + 1, j), (i, j + 1)):
            if (x, y) in surface.heights:
                if abs(surface.heights[(x, y)] - k) != 1:
                    findings.append(
                        "step violation between (%d,%d) and (%d,%d): %d vs %d"
                        % (i, j, x, y, k, surface.heights[(x, y)])
                    )
    return findings


def mutate(
    surface: SteppedSurface, data: InitialData, i: int, j: int
) -> Tuple[SteppedSurface, InitialData]:
    """Flip the surface at (i,j) across its four equal-height neighbors.

    The value update is the exchange relation: new*old = left*right + down*up,
    an exact division.  Virtual wall neighbors count as value 1 with no height
    constraint.
    """
    if (i, j) not in surface.heights:
        if not surface.in_system(i, j) or surface.is_virtual(i, j):
            raise NotMutable("(%d,%d) is not a real surface point" % (i, j))
        raise OutOfWindow("mutation site (%d,%d) outside window" % (i, j))
    k = surface.heights[(i, j)]
    nbr_heights = []
    for (x, y) in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
        if surface.is_virtual(x, y) or not surface.in_system(x, y):
            continue
        if (x, y) not in surface.heights:
            raise OutOfWindow("mutation neighbor (%d,%d) outside window" % (x, y))
        nbr_heights.append(surface.heights[(x, y)])
    if not nbr_heights or len(set(nbr_heights)) != 1:
        raise NotMutable("neighbors of (%d,%d) are not at equal height" % (i, j))
    h = nbr_heights[0]
    if abs(k - h) != 1:
        raise NotMutable("site (%d,%d) not adjacent to its neighbor plane" % (i, j))

    def val(x, y):
        if surface.is_virtual(x, y) or not surface.in_system(x, y):
            return LaurentPoly.one()
        return data.value(x, y)

    horiz = val(i, j - 1) * val(i, j + 1)
    vert = val(i - 1, j) * val(i + 1, j)
    new_value = lp_div_exact(horiz + vert, data.value(i, j))

    new_surface = surface.copy()
    new_surface.heights[(i, j)] = 2 * h - k
    new_data = data.copy()
    new_data.values[(i, j)] = new_value
    return new_surface, new_data


def projection(surface: SteppedSurface, j: int, k: int) -> Tuple[int, int]:
    """Column interval (j0, j1) seen from (1, j, k) looking down at row 1.

    j0 is the largest column with k - j = k_{1,j0} - j0, j1 the smallest with
    k + j = k_{1,j1} + j1; both level sets are hit walking away from j because
    the height profile has unit steps.
    """
    if k < surface.height(1, j):
        raise SurfaceError("projection expects a point on or above the surface")
    target_left = k - j
    jj = j
    while True:
        if surface.height(1, jj) - jj == target_left:
            j0 = jj
            break
        jj -= 1
        if jj < surface.window.jmin:
            raise OutOfWindow("projection ran past the left window edge")
    target_right = k + j
    jj = j
    while True:
        if surface.height(1, jj) + jj == target_right:
            j1 = jj
            break
        jj += 1
        if jj > surface.window.jmax:
            raise OutOfWindow("projection ran past the right window edge")
    return j0, j1


@dataclass
class ShadowDomain:
    """The surface region a value at (i,j,k) actually depends on.

    points maps surface points to heights.  Corner lists hold one point per
    domain row from the shallowest row down to the query row i: left corners
    are the westernmost points of those rows, right corners the easternmost.
    The closed-form prefactor multiplies every right corner and divides by
    every left corner except the last (the query row's own west end); on an
    untruncated domain the shallowest row is a single point, so its entry
    cancels between the two lists.
    """

    query: Tuple[int, int, int]
    points: Dict[Point, int]
    left_corners: List[Point] = field(default_factory=list)
    right_corners: List[Point] = field(default_factory=list)
    kappa: int = 0

    def rows(self) -> Tuple[int, int]:
        xs = [x for (x, _) in self.points]
        return min(xs), max(xs)


def shadow(surface: SteppedSurface, i: int, j: int, k: int) -> ShadowDomain:
    """Dependency region of (i,j,k): surface points reachable by downward
    recursion steps that stay strictly above the surface until they land."""
    if k < surface.height(i, j):
        raise SurfaceError("shadow expects a point on or above the surface")
    if (k - surface.height(i, j)) % 2:
        # odd offsets never land back on the surface
        raise SurfaceError("(%d,%d,%d) is off the height lattice" % (i, j, k))
    points: Dict[Point, int] = {}
    seen = set()
    stack = [(i, j, k)]
    while stack:
        (x, y, z) = stack.pop()
        if (x, y, z) in seen:
            continue
        seen.add((x, y, z))
        if surface.is_virtual(x, y) or not surface.in_system(x, y):
            continue
        h = surface.height(x, y)
        if z == h:
            points[(x, y)] = h
            continue
        stack.append((x, y, z - 2))
        for (nx, ny) in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
            stack.append((nx, ny, z - 1))

    spans: Dict[int, List[int]] = {}
    for (x, y) in points:
        spans.setdefault(x, []).append(y)
    crows = sorted(a for a in spans if a <= i)
    if not crows or crows != list(range(crows[0], i + 1)):
        raise CornerAmbiguity(
            "shadow of (%d,%d,%d) has gaps in rows %s" % (i, j, k, crows)
        )
    left = [(a, min(spans[a])) for a in crows]
    right = [(a, max(spans[a])) for a in crows]
    return ShadowDomain(
        query=(i, j, k),
        points=points,
        left_corners=left,
        right_corners=right,
        kappa=len(crows),
    )


# -- symmetric data families -------------------------------------------------


def _family_resolver(r: int, ell: Optional[int], family: str, table: VarTable):
    """Return value(i, j) implementing the reflection/vanishing pattern."""

    def free(i, j):
        return table.poly("t[%d,%d]" % (i, j))

    def sign(i):
        return LaurentPoly.const((-1) ** ((r * i) % 2))

    if family == "plus":

        def value(i, j):
            if j >= 1:
                return free(i, j)
            if j == 0:
                return LaurentPoly.one()
            if -r <= j <= -1:
                return LaurentPoly.zero()
            # mirror across the left wall block, picking up the parity sign
            return sign(r + 1 - i) * value(r + 1 - i, -r - 1 - j)

        return value

    if family == "minus":
        if ell is None:
            raise SurfaceError("family 'minus' needs ell")

        def value(i, j):
            if j <= ell:
                return free(i, j)
            if j == ell + 1:
                return LaurentPoly.one()
            if ell + 2 <= j <= ell + r + 1:
                return LaurentPoly.zero()
            return sign(r + 1 - i) * value(r + 1 - i, 2 * ell + r + 3 - j)

        return value

    if family == "restricted":
        if ell is None:
            raise SurfaceError("family 'restricted' needs ell")
        period = 2 * (r + ell + 2)

        def value(i, j):
            j = (j + r + 1) % period - r - 1
            if j == -r - 1:
                return sign(r + 1 - i) * LaurentPoly.one()
            if -r <= j <= -1:
                return LaurentPoly.zero()
            if j == 0 or j == ell + 1:
                return LaurentPoly.one()
            if 1 <= j <= ell:
                return free(i, j)
            if ell + 2 <= j <= ell + r + 1:
                return LaurentPoly.zero()
            # j in [ell+r+2, 2*ell+r+2]: mirror across the right wall block
            return sign(r + 1 - i) * value(r + 1 - i, 2 * ell + r + 3 - j)

        return value

    raise SurfaceError("unknown family %r" % family)


def build_symmetric_data(
    r: int,
    ell: Optional[int],
    family: str,
    window: Window,
    table: VarTable,
) -> Tuple[SteppedSurface, InitialData]:
    """Data on the flat surface of the full-column A_r system whose built-in
    reflections and vanishing blocks make wall boundaries emerge."""
    surf = flat_surface("Ar", window, r=r)
    value = _family_resolver(r, ell, family, table)
    values = {(i, j): value(i, j) for (i, j) in surf.real_points()}
    return surf, InitialData(table, values)


# -- regularized vanishing blocks ---------------------------------------------


def regularized_array(r: int, table: VarTable, prefix: str = "a") -> Dict[Point, LaurentPoly]:
    """Signed-monomial array replacing a vanishing block left of the wall.

    Defined on i in [0, r+1], j in [-r-1, 0]: ones on the frame rows and on
    column 0, free variables on column -1, and the degenerate exchange
    relation value(i-1,j)*value(i+1,j) + value(i,j-1)*value(i,j+1) = 0
    propagating leftwards.  Every entry is a signed monomial.
    """
    vals: Dict[Point, LaurentPoly] = {}
    for i in range(0, r + 2):
        vals[(i, 0)] = LaurentPoly.one()
    for i in range(0, r + 2):
        if i in (0, r + 1):
            vals[(i, -1)] = LaurentPoly.one()
        else:
            vals[(i, -1)] = table.poly("%s[%d]" % (prefix, i))
    for j in range(1, r + 1):
        vals[(0, -j - 1)] = LaurentPoly.one()
        vals[(r + 1, -j - 1)] = LaurentPoly.one()
        for i in range(1, r + 1):
            num = -(vals[(i - 1, -j)] * vals[(i + 1, -j)])
            vals[(i, -j - 1)] = lp_div_exact(num, vals[(i, -j + 1)])
    return vals


def regularized_reflected(
    r: int, ell: int, table: VarTable, prefix: str = "b"
) -> Dict[Point, LaurentPoly]:
    """The same array mirrored to the right wall block, columns [ell+1, ell+r+2]."""
    base = regularized_array(r, table, prefix=prefix)
    out: Dict[Point, LaurentPoly] = {}
    for (i, mj), v in base.items():
        j = mj + ell + r + 2
        out[(i, j)] = LaurentPoly.const((-1) ** ((r * i) % 2)) * v
    return out


def build_regularized_data(
    r: int,
    ell: Optional[int],
    family: str,
    window: Window,
    table: VarTable,
) -> Tuple[SteppedSurface, InitialData, List[int]]:
    """Symmetric family data with every vanishing block replaced by the
    regularizing signed monomials; returns the variable ids to send to zero."""
    surf, data = build_symmetric_data(r, ell, family, window, table)
    aplus = regularized_array(r, table, prefix="a") if family in ("plus", "restricted") else {}
    bminus = (
        regularized_reflected(r, ell, table, prefix="b")
        if family in ("minus", "restricted")
        else {}
    )
    period = 2 * (r + ell + 2) if family == "restricted" else None

    def patched(i, j):
        if family == "plus":
            if -r <= j <= -1:
                return aplus[(i, j)]
            return None
        if family == "minus":
            if ell + 2 <= j <= ell + r + 1:
                return bminus[(i, j)]
            return None
        jr = (j + r + 1) % period - r - 1
        if -r <= jr <= -1:
            return aplus[(i, jr)]
        if ell + 2 <= jr <= ell + r + 1:
            return bminus[(i, jr)]
        return None

    values = dict(data.values)
    reg_vids = set()
    for arr in (aplus, bminus):
        for v in arr.values():
            reg_vids |= v.variables()
    for (i, j) in list(values):
        p = patched(i, j)
        if p is not None:
            values[(i, j)] = p
    return surf, InitialData(table, values), sorted(reg_vids)
