"""The octahedron recurrence on a stepped surface, plus its closed-form solvers.

Values live on lattice points (i, j, k) with i+j+k even.  Above the surface

    T(i,j,k) * T(i,j,k-2) = T(i,j+1,k-1)*T(i,j-1,k-1) + T(i+1,j,k-1)*T(i-1,j,k-1)

with T = data on the surface, T = 1 on virtual walls (all k), and below-surface
values defined by running the same recursion downwards (equivalently: on the
height-negated surface).  Every division in the recursion is exact in the
Laurent ring of the surface data; a failed division is a hard error because it
falsifies the Laurent property the whole construction is built on.
"""

from __future__ import annotations

import warnings
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import (
    DivideByZero,
    LaurentPoly,
    NotDivisible,
    lp_div_exact,
    lp_subst_zero,
)
from .network import (
    ChipSequence,
    chip_U,
    chip_V,
    poly_det,
    shadow_chip_columns,
    shadow_network,
    uv_decompose,
)
from .surface import (
    CornerAmbiguity,
    InitialData,
    OutOfWindow,
    SteppedSurface,
    SurfaceError,
    projection,
    shadow,
)


class CornerMismatchWarning(UserWarning):
    """The pictorial corner reading (row extremes of the shadow) disagrees
    with the telescoping reading (chip-run ends).  The returned value uses
    the telescoping corners, which the construction actually proves."""


class TSystemError(Exception):
    pass


class LaurentViolation(TSystemError):
    """An exact division inside the recurrence failed.  Never expected on
    honest inputs; treated as a fatal sentinel."""


class NeedsRegularization(TSystemError):
    """The recursion divided by a vanishing value; re-solve with the
    regularized data family and take the limit."""


def period_length(r: int, ell: int) -> int:
    return 2 * (r + ell + 2)


def half_twist(r: int, ell: int, i: int, j: int) -> Tuple[int, int]:
    return (r + 1 - i, ell + 1 - j)


class TSystemOracle:
    """Memoized downward recursion; the ground truth every formula is tested
    against.  reg_vids lists regularization variables sent to zero in value()."""

    def __init__(self, surface: SteppedSurface, data: InitialData, reg_vids: Sequence[int] = ()):
        self.surface = surface
        self.data = data
        self.reg_vids = list(reg_vids)
        self._memo: Dict[Tuple[int, int, int], LaurentPoly] = {}
        self._mirror_oracle: Optional["TSystemOracle"] = None

    def _mirror(self) -> "TSystemOracle":
        if self._mirror_oracle is None:
            m = TSystemOracle(self.surface.reflected(), self.data, self.reg_vids)
            m._mirror_oracle = self
            self._mirror_oracle = m
        return self._mirror_oracle

    def raw_value(self, i: int, j: int, k: int) -> LaurentPoly:
        """Value before the regularization limit."""
        s = self.surface
        if s.is_virtual(i, j):
            return LaurentPoly.one()
        if not s.in_system(i, j):
            raise SurfaceError("(%d,%d) is outside the system" % (i, j))
        if (i + j + k) % 2:
            raise SurfaceError("parity: i+j+k must be even at (%d,%d,%d)" % (i, j, k))
        key = (i, j, k)
        if key in self._memo:
            return self._memo[key]
        h = s.height(i, j)
        if k == h:
            v = self.data.value(i, j)
        elif k < h:
            v = self._mirror().raw_value(i, j, -k)
        else:
            below = self.raw_value(i, j, k - 2)
            if below.is_zero():
                raise NeedsRegularization(
                    "vanishing divisor under (%d,%d,%d)" % (i, j, k)
                )
            num = self.raw_value(i, j + 1, k - 1) * self.raw_value(i, j - 1, k - 1) + self.raw_value(
                i + 1, j, k - 1
            ) * self.raw_value(i - 1, j, k - 1)
            try:
                v = lp_div_exact(num, below)
            except NotDivisible as e:
                raise LaurentViolation(
                    "recurrence division failed at (%d,%d,%d)" % (i, j, k)
                ) from e
            except DivideByZero:
                raise NeedsRegularization(
                    "vanishing divisor under (%d,%d,%d)" % (i, j, k)
                )
        self._memo[key] = v
        return v

    def value(self, i: int, j: int, k: int) -> LaurentPoly:
        v = self.raw_value(i, j, k)
        if self.reg_vids:
            v = lp_subst_zero(v, self.reg_vids)
        return v


# -- closed-form routes ----------------------------------------------------------


def _row1_value(surface: SteppedSurface, data: InitialData, j: int, k: int) -> LaurentPoly:
    """Row-1 value by the wall-to-wall network, reflecting below-surface queries."""
    if surface.col_is_virtual(j):
        return LaurentPoly.one()
    if not surface.col_in_system(j):
        raise SurfaceError("column %d is outside the system" % j)
    h = surface.height(1, j)
    if k == h:
        return data.value(1, j)
    if k < h:
        return _row1_value(surface.reflected(), data, j, -k)
    j0, j1 = projection(surface, j, k)
    corner = data.value(1, j1)
    if j0 == j1:
        return corner
    seq = uv_decompose(surface, data, j0, j1)
    return seq.entry_times(1, 1, corner)


def solve_t1_network(surface: SteppedSurface, data: InitialData, j: int, k: int) -> LaurentPoly:
    """Row-1 solution: top-left transfer entry times the right landing value."""
    if surface.kind != "Ar":
        raise SurfaceError("network route needs a row-walled system")
    return _row1_value(surface, data, j, k)


def solve_wronskian(
    surface: SteppedSurface, data: InitialData, i: int, j: int, k: int
) -> LaurentPoly:
    """Row-i solution as an i x i determinant in row-1 solutions."""
    if surface.kind != "Ar":
        raise SurfaceError("determinant route needs a row-walled system")
    if surface.row_is_virtual(i):
        return LaurentPoly.one()
    if not surface.row_in_system(i):
        raise SurfaceError("row %d is outside the system" % i)
    mat = [
        [
            _row1_value(surface, data, j + a - b, k + a + b - i - 1)
            for b in range(1, i + 1)
        ]
        for a in range(1, i + 1)
    ]
    return poly_det(mat)


def _is_canonical_flat(surface: SteppedSurface) -> Optional[int]:
    """The even offset when heights follow (i+j) mod 2 + offset, else None."""
    offset = None
    for (x, y), h in surface.heights.items():
        o = h - (x + y) % 2
        if offset is None:
            offset = o
        elif o != offset:
            return None
    if offset is None or offset % 2:
        return None
    return offset


def solve_flat_minor(
    surface: SteppedSurface, data: InitialData, i: int, j: int, k: int
) -> LaurentPoly:
    """Closed form on the fundamental flat surface, no shadow machinery.

    The supporting chips fill the diamond |x-i| <= d-2-max(j-y, y-j-1) over
    columns [j-d+2, j+d-1] (d = height above the surface offset), the kept
    minor is the principal (d-1) x (d-1) block, and the boundary data enters
    as an explicit monomial prefactor.
    """
    offset = _is_canonical_flat(surface)
    if offset is None:
        raise SurfaceError("flat route needs the fundamental flat surface")
    d = k - offset
    if d < (i + j) % 2:
        raise SurfaceError("flat route expects a point above the surface")
    if d == (i + j) % 2:
        return data.value(i, j)
    # arg rows span [i-d+1, i+d-1]; walls must not cut into them
    if surface.kind != "Ainf":
        if i - d + 1 < 1 or i + d - 1 > surface.r:
            raise SurfaceError("flat route needs the diamond clear of the walls")
    chips = []
    for y in range(j - d + 2, j + d):
        half = d - 2 - max(j - y, y - j - 1)
        for x in range(i - half, i + half + 1):
            if (x + y) % 2 == 1:
                chips.append(
                    chip_U(x, data.value(x, y - 1), data.value(x, y), data.value(x + 1, y - 1))
                )
            else:
                chips.append(
                    chip_V(x, data.value(x - 1, y), data.value(x, y - 1), data.value(x, y))
                )
    seq = ChipSequence(chips, i - d + 2, i + d - 1)
    minor_wires = [i - d + 2 + t for t in range(d - 1)]
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for a in range(1, d - 1):
        den = den * data.value(i + a - d + 1, j - a)
    for b in range(1, d):
        num = num * data.value(i + b - d + 1, j + b)
    return seq.minor_times(minor_wires, minor_wires, extra=num, extra_denom=den)


def solve_general_minor(
    surface: SteppedSurface, data: InitialData, i: int, j: int, k: int
) -> LaurentPoly:
    """Minor formula over the shadow sub-network, for any stepped surface
    without column walls (truncated rows are fine).

    The kept wires run from the shallowest chip-bearing row down to the query
    row.  Per row, the straight-through weights of the supported chips
    telescope to a ratio of the data at the run's two ends; the run ends are
    the corners the prefactor needs.  On most shadows they coincide with the
    row extremes exposed on ShadowDomain (the pictorial reading); when an
    apex falls outside the domain and clips a run short, the two readings
    split and the pictorial one is merely advisory.
    """
    if surface.kind not in ("Ainf", "Ar"):
        raise SurfaceError("minor route does not support column walls")
    if surface.is_virtual(i, j):
        return LaurentPoly.one()
    h = surface.height(i, j)
    if k == h:
        return data.value(i, j)
    if k < h:
        return solve_general_minor(surface.reflected(), data, i, j, -k)
    dom = shadow(surface, i, j, k)
    seq = shadow_network(surface, data, dom)
    runs = shadow_chip_columns(surface, dom)
    w0 = seq.min_wire
    wires = list(range(w0, i + 1))
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for a in wires:
        run = sorted(runs.get(a, ()))
        if not run:
            raise CornerAmbiguity(
                "row %d carries the minor at (%d,%d,%d) but supports no chips"
                % (a, i, j, k)
            )
        if run != list(range(run[0], run[-1] + 1)):
            raise CornerAmbiguity(
                "chip run on row %d has gaps at (%d,%d,%d): %s" % (a, i, j, k, run)
            )
        if a < i:
            den = den * data.value(a, run[0] - 1)
        num = num * data.value(a, run[-1])
    _check_corner_readings(data, dom, num, den, i, j, k)
    return seq.minor_times(wires, wires, extra=num, extra_denom=den)


def _check_corner_readings(
    data: InitialData,
    dom,
    num: LaurentPoly,
    den: LaurentPoly,
    i: int,
    j: int,
    k: int,
) -> None:
    """Compare the telescoping prefactor against the pictorial one."""
    geo_num = LaurentPoly.one()
    geo_den = LaurentPoly.one()
    for (x, y) in dom.left_corners[:-1]:
        geo_den = geo_den * data.value(x, y)
    for (x, y) in dom.right_corners:
        geo_num = geo_num * data.value(x, y)
    if num * geo_den != geo_num * den:
        warnings.warn(
            "corner readings disagree at (%d,%d,%d); using chip-run corners"
            % (i, j, k),
            CornerMismatchWarning,
            stacklevel=3,
        )


METHODS = ("oracle", "t1-network", "wronskian", "flat-minor", "general-minor")


class SolveResult:
    """Value plus how it was obtained.  The value must never depend on the
    method; everything else here is bookkeeping for reports and the CLI."""

    __slots__ = ("value", "method", "stats")

    def __init__(self, value: LaurentPoly, method: str, stats: Dict[str, object]):
        self.value = value
        self.method = method
        self.stats = stats

    def __repr__(self) -> str:
        return "SolveResult(method=%r, terms=%d)" % (self.method, self.value.num_terms())


def solve(
    surface: SteppedSurface,
    data: InitialData,
    i: int,
    j: int,
    k: int,
    method: str = "oracle",
    reg_vids: Sequence[int] = (),
) -> SolveResult:
    w = surface.window
    stats: Dict[str, object] = {
        "window": (w.imin, w.imax, w.jmin, w.jmax),
        "terms": 0,
    }
    if method == "oracle":
        oracle = TSystemOracle(surface, data, reg_vids)
        value = oracle.value(i, j, k)
        stats["memo"] = len(oracle._memo)
    elif method == "t1-network":
        if i != 1:
            raise SurfaceError("t1-network solves row 1 only; use wronskian")
        value = solve_t1_network(surface, data, j, k)
    elif method == "wronskian":
        value = solve_wronskian(surface, data, i, j, k)
    elif method == "flat-minor":
        value = solve_flat_minor(surface, data, i, j, k)
    elif method == "general-minor":
        value = solve_general_minor(surface, data, i, j, k)
    else:
        raise ValueError("unknown method %r" % method)
    stats["terms"] = value.num_terms()
    return SolveResult(value, method, stats)


def applicable_methods(surface: SteppedSurface, i: int, j: int, k: int) -> List[str]:
    """Routes expected to work for this query, besides the oracle."""
    out = ["oracle"]
    if surface.kind == "Ar":
        if i == 1:
            out.append("t1-network")
        out.append("wronskian")
    if surface.kind in ("Ainf", "Ar"):
        offset = _is_canonical_flat(surface)
        if offset is not None and k >= surface.height(i, j):
            d = k - offset
            clear = surface.kind == "Ainf" or (i - d + 1 >= 1 and i + d - 1 <= surface.r)
            if clear:
                out.append("flat-minor")
        out.append("general-minor")
    return out
