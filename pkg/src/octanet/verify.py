"""Machine checks for the engine's headline properties.

Five suites: the chip-identity battery, orbit periodicity with the half twist,
coefficient positivity, cross-method agreement, and wall emergence from
regularized data.  Each case carries a behavior tag in its description;
COVERAGE maps every tag to the suite that owns it, and the test suite enforces
that the mapping is total.
"""

from __future__ import annotations

import random
import warnings
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .laurent import LaurentPoly, VarTable, lp_div_exact, lp_subst_zero
from .network import (
    ChipSequence,
    TooLarge,
    chip_U,
    chip_V,
    lgv_minor,
    mat_eq,
    mat_identity,
    mat_mul,
    mat_scale,
    matrix_limit_zero,
    polynomial_matrix,
    poly_det,
    pq_matrices,
    regularized_left_network,
    regularized_right_network,
    uv_decompose,
)
from .surface import (
    NotMutable,
    Window,
    build_regularized_data,
    build_symmetric_data,
    flat_surface,
    generic_data,
    mutate,
    regularized_reflected,
)
from .tsystem import (
    CornerMismatchWarning,
    LaurentViolation,
    NeedsRegularization,
    TSystemOracle,
    applicable_methods,
    half_twist,
    period_length,
    solve,
    solve_general_minor,
)


class Case:
    __slots__ = ("description", "expected", "got", "ok")

    def __init__(self, description: str, expected: str, got: str, ok: bool):
        self.description = description
        self.expected = expected
        self.got = got
        self.ok = ok


class Report:
    """One suite run.  fail count 0 iff ok; text() for humans, record() for machines."""

    def __init__(self, suite: str):
        self.suite = suite
        self.cases: List[Case] = []

    def add(self, description: str, expected: str, got: str, ok: bool) -> None:
        self.cases.append(Case(description, expected, got, ok))

    def check(self, description: str, ok: bool, expected: str = "holds") -> None:
        self.add(description, expected, expected if ok else "violated", ok)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.ok)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.ok)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def text(self) -> str:
        lines = ["suite: %s" % self.suite]
        for c in self.cases:
            if c.ok:
                lines.append("  PASS %s" % c.description)
            else:
                lines.append(
                    "  FAIL %s (expected %s, got %s)" % (c.description, c.expected, c.got)
                )
        lines.append("summary: %d passed, %d failed" % (self.passed, self.failed))
        return "\n".join(lines)

    def record(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failed": self.failed,
            "cases": [
                {
                    "description": c.description,
                    "expected": c.expected,
                    "got": c.got,
                    "ok": c.ok,
                }
                for c in self.cases
            ],
        }


# -- identity battery -----------------------------------------------------------------


def _seq1(chip, hi):
    return ChipSequence([chip], 1, hi)


def _conj_equals(mat, seq_in, seq_out) -> bool:
    m, d = seq_in.cleared()
    tm, td = seq_out.cleared()
    lhs = mat_mul(mat_mul(mat, m), mat)
    return mat_eq(mat_scale(lhs, td), mat_scale(tm, d))


def _sandwich_is(mat, left_seq, right_seq) -> bool:
    lm, ld = left_seq.cleared()
    rm, rd = right_seq.cleared()
    return mat_eq(mat_mul(mat_mul(lm, mat), rm), mat_scale(mat, ld * rd))


def check_identities(r_max: int = 5) -> Report:
    """Chip exchange rules, reflection conjugations, collapse rules, and the
    regularized wall-crossing battery, each verified symbolically."""
    if r_max > 6:
        raise TooLarge("identity battery capped at r=6")
    rep = Report("identities")
    tb = VarTable()
    a, b, c, d, u, w, lam = (tb.poly(n) for n in ("a", "b", "c", "d", "u", "v", "lam"))

    lhs = ChipSequence([chip_U(1, a, b, c), chip_V(2, b, c, d)], 1, 3)
    rhs = ChipSequence([chip_V(2, a, c, d), chip_U(1, a, b, d)], 1, 3)
    rep.check("chip-exchange-raise: U then V trades the shared argument", lhs.equals_true(rhs))

    lhs = ChipSequence([chip_V(1, a, b, c), chip_U(2, d, u, w)], 1, 3)
    rhs = ChipSequence([chip_U(2, d, u, w), chip_V(1, a, b, c)], 1, 3)
    rep.check("chip-exchange-commute: V and U on disjoint pairs commute", lhs.equals_true(rhs))

    bp = lp_div_exact(u * w + a * c, b)
    lhs = ChipSequence([chip_U(1, a, b, u), chip_V(1, w, b, c)], 1, 2)
    rhs = ChipSequence([chip_V(1, w, a, bp), chip_U(1, bp, c, u)], 1, 2)
    bad = ChipSequence([chip_V(1, w, a, bp + 1), chip_U(1, bp + 1, c, u)], 1, 2)
    rep.check(
        "chip-exchange-mutation: same-wire exchange holds iff bb' = uv + ac",
        lhs.equals_true(rhs) and not lhs.equals_true(bad),
    )

    ok = _seq1(chip_U(1, a, b, c), 2).equals_true(
        _seq1(chip_U(1, lam * a, lam * b, lam * c), 2)
    ) and _seq1(chip_V(1, a, b, c), 2).equals_true(
        _seq1(chip_V(1, lam * a, lam * b, lam * c), 2)
    )
    rep.check("projective-rescale: chip arguments are projective", ok)

    ok = True
    for ch in (chip_U(1, a, b, c), chip_V(1, a, b, c)):
        pair = ChipSequence([ch, ch.inverse()], 1, 2)
        ok = ok and pair.matrix_equals(mat_identity(2))
    rep.check("chip-inverses: U(b,a,-c) and V(-a,c,b) invert", ok)

    for r in range(1, r_max + 1):
        P, S = pq_matrices(r)
        n = r + 1
        sign = LaurentPoly.const((-1) ** (r % 2))
        ok = (
            mat_eq(mat_mul(P, P), mat_identity(n))
            and mat_eq(mat_mul(S, S), mat_identity(n))
            and mat_eq(mat_mul(S, P), mat_scale(mat_mul(P, S), sign))
        )
        rep.check("reflection-matrices: involutions and the sign swap, r=%d" % r, ok)

        wires = range(1, r + 1) if r <= 3 else (1, r)
        csign = LaurentPoly.const((-1) ** ((r - 1) % 2))
        ok = True
        for i in wires:
            ok = ok and _conj_equals(
                S, _seq1(chip_U(i, a, b, c), n), _seq1(chip_U(i, a, b, -c), n)
            )
            ok = ok and _conj_equals(
                S, _seq1(chip_V(i, a, b, c), n), _seq1(chip_V(i, a, -b, -c), n)
            )
            ok = ok and _conj_equals(
                P,
                _seq1(chip_U(i, a, b, c), n),
                _seq1(chip_V(r + 1 - i, csign * c, a, b), n),
            )
            ok = ok and _conj_equals(
                P,
                _seq1(chip_V(i, a, b, c), n),
                _seq1(chip_U(r + 1 - i, b, c, csign * a), n),
            )
        rep.check("conjugation-rules: sign and reflection conjugation, r=%d" % r, ok)

        ok = True
        for i in wires:
            ok = ok and _sandwich_is(
                P,
                _seq1(chip_V(r + 1 - i, sign * c, b, a), n),
                _seq1(chip_U(i, a, b, c), n),
            )
            ok = ok and _sandwich_is(
                P,
                _seq1(chip_U(r + 1 - i, c, b, sign * a), n),
                _seq1(chip_V(i, a, b, c), n),
            )
        rep.check("wall-collapse: reflected chips absorb, r=%d" % r, ok)

    P1, _ = pq_matrices(1)
    ok = _sandwich_is(P1, _seq1(chip_U(1, -b, -a, 1), 2), _seq1(chip_V(1, 1, a, b), 2))
    ok = ok and _sandwich_is(P1, _seq1(chip_V(1, 1, -b, -a), 2), _seq1(chip_U(1, a, b, 1), 2))
    rep.check("wall-collapse: two-wire special case", ok)

    for r in range(1, min(r_max, 5) + 1):
        tbr = VarTable()
        mats = {}
        ok_poly = True
        for j in range(1, r + 2):
            seq, vids = regularized_left_network(r, j, tbr)
            mat = polynomial_matrix(seq)
            mats[j] = (mat, vids)
            ok_poly = ok_poly and not any(
                x.has_negative_exponents() for row in mat for x in row
            )
        rep.check("regularized-crossing-polynomial: entries stay polynomial, r=%d" % r, ok_poly)

        full, vids = mats[r + 1]
        det = poly_det(full)
        want = LaurentPoly.const((-1) ** ((r * (r + 1) * (r + 2) // 2) % 2))
        rep.add(
            "regularized-crossing-det: determinant is a pure sign, r=%d" % r,
            str(want),
            str(det),
            det == want,
        )

        P, _ = pq_matrices(r)
        rep.check(
            "regularized-crossing-limit: full crossing tends to the reflection, r=%d" % r,
            mat_eq(matrix_limit_zero(full, vids), P),
        )

        ok_row = True
        for j in range(1, r + 1):
            lim = matrix_limit_zero(mats[j][0], mats[j][1])
            hit = 2 * (j // 2) + 1
            for col in range(1, r + 2):
                want_one = col == hit
                got = lim[0][col - 1]
                ok_row = ok_row and (got.is_one() if want_one else got.is_zero())
        rep.check("regularized-crossing-row: partial crossings land row 1 by parity, r=%d" % r, ok_row)

        avars = {i: tbr.poly("a[%d]" % i) for i in range(1, r + 1)}
        s, eps = divmod(r, 2)
        if eps == 0:
            lchips = [chip_U(2 * i, 1, 1, avars[2 * (s - i) + 1]) for i in range(1, s + 1)]
        else:
            lchips = [
                chip_U(2 * i + 1, -1, -1, avars[2 * (s - i) + 1]) for i in range(0, s + 1)
            ]
        rchips = [chip_U(2 * i, 1, 1, -avars[2 * i]) for i in range(1, s + 1)]
        acc = [list(row) for row in full]
        denom = LaurentPoly.one()
        if lchips:
            lm, ld = ChipSequence(lchips, 1, r + 1).cleared()
            acc = mat_mul(lm, acc)
            denom = denom * ld
        if rchips:
            rm, rd = ChipSequence(rchips, 1, r + 1).cleared()
            acc = mat_mul(acc, rm)
            denom = denom * rd
        rep.check(
            "regularized-crossing-factored: augmented crossing collapses to the reflection, r=%d" % r,
            mat_eq(acc, mat_scale(P, denom)),
        )

    for r in range(1, min(r_max, 3) + 1):
        for ell in (2, 3):
            tbr = VarTable()
            P, _ = pq_matrices(r)
            seq, vids = regularized_right_network(r, ell, r + 1, tbr)
            lim = matrix_limit_zero(seq.true_matrix(), vids)
            sign = LaurentPoly.const((-1) ** (r % 2))
            rep.check(
                "reflected-crossing-limit: mirrored full crossing, r=%d ell=%d" % (r, ell),
                mat_eq(lim, mat_scale(P, sign)),
            )
            ok_col = True
            barr = regularized_reflected(r, ell, tbr)
            for j in range(1, r + 1):
                seq, vids = regularized_right_network(r, ell, j, tbr)
                mat = seq.true_matrix()
                pref = barr[(1, ell + 1 + j)]
                if ell % 2 == 0:
                    hit = 2 * ((j + 1) // 2)
                else:
                    hit = 2 * (j // 2) + 1
                for row in range(1, r + 2):
                    val = lp_subst_zero(mat[row - 1][0] * pref, vids)
                    ok_col = ok_col and (val.is_one() if row == hit else val.is_zero())
            rep.check(
                "reflected-crossing-row: mirrored partial crossings land column 1, r=%d ell=%d"
                % (r, ell),
                ok_col,
            )
    return rep


# -- periodicity ------------------------------------------------------------------------


class _FractionOracle:
    """The same downward recursion over exact rationals; an independent
    implementation used for seeded smoke checks at sizes where symbols blow up."""

    def __init__(self, r: int, ell: int, data: Dict[Tuple[int, int], Fraction]):
        self.r = r
        self.ell = ell
        self.data = data
        self._memo: Dict[Tuple[int, int, int, int], Fraction] = {}

    def _height(self, i: int, j: int, flip: int) -> int:
        return flip * ((i + j) % 2)

    def value(self, i: int, j: int, k: int, flip: int = 1) -> Fraction:
        if i in (0, self.r + 1) or j in (0, self.ell + 1):
            return Fraction(1)
        if not (1 <= i <= self.r and 1 <= j <= self.ell):
            raise ValueError("(%d,%d) outside the restricted system" % (i, j))
        key = (i, j, k, flip)
        if key in self._memo:
            return self._memo[key]
        h = self._height(i, j, flip)
        if k == h:
            v = self.data[(i, j)]
        elif k < h:
            v = self.value(i, j, -k, -flip)
        else:
            num = self.value(i, j + 1, k - 1, flip) * self.value(
                i, j - 1, k - 1, flip
            ) + self.value(i + 1, j, k - 1, flip) * self.value(i - 1, j, k - 1, flip)
            v = num / self.value(i, j, k - 2, flip)
        self._memo[key] = v
        return v


def check_periodicity(
    r: int,
    ell: int,
    mode: str = "auto",
    k_span: Optional[int] = None,
    seed: int = 0,
) -> Report:
    """The restricted orbit closes after N = 2(r+ell+2) steps of k, with the
    half-period twist (i,j) -> (r+1-i, ell+1-j) in between."""
    n = period_length(r, ell)
    span = n if k_span is None else k_span
    if span < n:
        raise ValueError("k_span must cover one period (%d)" % n)
    if mode == "auto":
        mode = "symbolic" if r * ell <= 6 else "rational"
    rep = Report("periodicity[r=%d,ell=%d,%s]" % (r, ell, mode))
    if mode == "symbolic":
        if r * ell > 6:
            raise TooLarge("symbolic periodicity capped at r*ell <= 6")
        tb = VarTable()
        s = flat_surface("Restricted", Window(1, r, 1, ell), r=r, ell=ell)
        d = generic_data(s, tb)
        o = TSystemOracle(s, d)
        value = o.value
        label = ""
    else:
        rng = random.Random(seed)
        data = {
            (i, j): Fraction(rng.randint(1, 9))
            for i in range(1, r + 1)
            for j in range(1, ell + 1)
        }
        o = _FractionOracle(r, ell, data)
        value = o.value
        label = " (rational smoke)"

    minimal = None
    for i in range(1, r + 1):
        for j in range(1, ell + 1):
            h = (i + j) % 2
            ok = True
            for base in range(h - 2, h + span - n + 1, 2):
                ok = ok and value(i, j, base + n) == value(i, j, base)
            rep.check(
                "periodicity: N=%d closes the k-orbit at (%d,%d)%s" % (n, i, j, label), ok
            )
            ii, jj = half_twist(r, ell, i, j)
            hh = (ii + jj) % 2
            ok = True
            for base in (hh, hh + 2):
                ok = ok and value(i, j, base + n // 2) == value(ii, jj, base)
            rep.check(
                "half-period-twist: N/2 plus the point reflection at (%d,%d)%s"
                % (i, j, label),
                ok,
            )
            if minimal is None:
                for p in range(2, n + 1, 2):
                    if all(
                        value(i, j, h + m + p) == value(i, j, h + m)
                        for m in range(0, n, 2)
                    ):
                        minimal = p
                        break
    rep.add(
        "periodicity: minimal k-period divides N%s" % label,
        "divisor of %d" % n,
        str(minimal),
        minimal is not None and n % minimal == 0,
    )
    return rep


# -- positivity ---------------------------------------------------------------------------


def _positive(poly: LaurentPoly) -> bool:
    return bool(poly.terms) and all(c > 0 for c in poly.terms.values())


def check_positivity(seed: int = 0) -> Report:
    """Every solved value is a Laurent polynomial with positive coefficients."""
    rep = Report("positivity")
    rng = random.Random(seed)

    tb = VarTable()
    s = flat_surface("Ainf", Window(-3, 8, -6, 6))
    d = generic_data(s, tb)
    v = TSystemOracle(s, d).value(3, 0, 3)
    rep.add(
        "positivity: the frozen height-3 value is 8 unit-coefficient terms",
        "8 terms, all +1",
        "%d terms, coeffs %s" % (v.num_terms(), sorted(set(v.terms.values()))),
        v.num_terms() == 8 and set(v.terms.values()) == {1},
    )

    tb = VarTable()
    s = flat_surface("Restricted", Window(1, 1, -1, 4), r=1, ell=2)
    o = TSystemOracle(s, generic_data(s, tb))
    ok = all(_positive(o.value(1, 1 + (k % 2), k)) for k in range(0, 12))
    rep.check("positivity: the smallest restricted orbit stays positive", ok)

    tb = VarTable()
    s = flat_surface("Ainf", Window(-6, 9, -8, 8))
    d = generic_data(s, tb)
    sweep_ok = True
    alarm_ok = True
    for trial in range(6):
        s2, d2 = s, d
        for _ in range(rng.randint(0, 2)):
            mi, mj = rng.randint(1, 3), rng.randint(-1, 1)
            try:
                s2, d2 = mutate(s2, d2, mi, mj)
            except NotMutable:
                pass
        qi, qj = rng.randint(1, 3), rng.randint(-1, 1)
        # parity pins the step to even; depth 2 keeps mutated windows tame
        qk = s2.height(qi, qj) + 2
        try:
            val = TSystemOracle(s2, d2).value(qi, qj, qk)
        except LaurentViolation:
            alarm_ok = False
            continue
        sweep_ok = sweep_ok and _positive(val)
    rep.check("positivity: seeded mutated-surface sweep stays positive", sweep_ok)
    rep.check("laurent-property: recursion divisions stay exact across the sweep", alarm_ok)
    return rep


# -- cross-method agreement ------------------------------------------------------------------


def _agree(surface, data, i, j, k) -> Tuple[bool, List[str]]:
    methods = applicable_methods(surface, i, j, k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CornerMismatchWarning)
        vals = [solve(surface, data, i, j, k, method=m).value for m in methods]
    return all(v == vals[0] for v in vals), methods


def check_equivalence(
    seed: int = 0,
    flat_count: int = 30,
    mutated_count: int = 15,
    truncated_count: int = 5,
) -> Report:
    """All applicable solution routes agree symbolically on sampled queries,
    and the path-counting view agrees with the determinant."""
    if flat_count + mutated_count + truncated_count > 300:
        raise TooLarge("equivalence sweep capped at 300 queries")
    rep = Report("equivalence")
    rng = random.Random(seed)

    tb = VarTable()
    surfaces = {r: flat_surface("Ar", Window(1, r, -9, 9), r=r) for r in (1, 2, 3)}
    datas = {r: generic_data(surfaces[r], tb) for r in (1, 2, 3)}
    ainf = flat_surface("Ainf", Window(-6, 10, -9, 9))
    ainf_d = generic_data(ainf, tb)

    # pinned queries so each headline route shows up whatever the seed does
    pinned = [
        (surfaces[1], datas[1], 1, 0, 3, "projection-solution"),
        (surfaces[3], datas[3], 2, 0, 2, "wronskian-determinant"),
        (ainf, ainf_d, 3, 0, 3, "shadow-minor-flat"),
    ]
    for (srf, dat, qi, qj, qk, tag) in pinned:
        ok, methods = _agree(srf, dat, qi, qj, qk)
        rep.check(
            "%s: routes %s agree at (%d,%d,%d) [flat %s]"
            % (tag, "/".join(methods), qi, qj, qk, srf.kind),
            ok,
        )

    for idx in range(max(0, flat_count - len(pinned))):
        pick = rng.randint(0, 3)
        if pick == 3:
            srf, dat = ainf, ainf_d
            qi = rng.randint(1, 4)
            tag = "shadow-minor-flat"
            steps = (1, 2)  # depth > 3 on the unbounded system is a term blowup
        else:
            r = pick + 1
            srf, dat = surfaces[r], datas[r]
            qi = rng.randint(1, r)
            tag = "projection-solution" if qi == 1 else "wronskian-determinant"
            steps = (1, 2, 3)
        qj = rng.randint(-2, 2)
        h = srf.height(qi, qj)
        qk = h + rng.choice(steps)
        if (qi + qj + qk) % 2:
            qk += 1
        ok, methods = _agree(srf, dat, qi, qj, qk)
        rep.check(
            "%s: routes %s agree at (%d,%d,%d) [flat %s]"
            % (tag, "/".join(methods), qi, qj, qk, srf.kind),
            ok,
        )

    for idx in range(mutated_count):
        use_ar = rng.random() < 0.5
        if use_ar:
            r = rng.randint(2, 3)
            srf, dat = surfaces[r], datas[r]
            rows = (1, r)
        else:
            srf, dat = ainf, ainf_d
            rows = (1, 4)
        nmut = rng.randint(1, 3)
        done = 0
        while done < nmut:
            mi, mj = rng.randint(rows[0], rows[1]), rng.randint(-2, 2)
            try:
                srf, dat = mutate(srf, dat, mi, mj)
                done += 1
            except NotMutable:
                continue
        qi = rng.randint(rows[0], rows[1])
        qj = rng.randint(-1, 1)
        qk = srf.height(qi, qj) + 2
        ok, methods = _agree(srf, dat, qi, qj, qk)
        rep.check(
            "shadow-minor-general: routes %s agree at (%d,%d,%d) [%d mutations]"
            % ("/".join(methods), qi, qj, qk, nmut),
            ok,
        )

    fixed = [(5, 2, 2, 4), (2, 2, 0, 4), (3, 3, 0, 5), (2, 1, 0, 5), (4, 2, 1, 5)]
    for (r, qi, qj, qk) in fixed[:truncated_count]:
        tb2 = VarTable()
        srf = flat_surface("Ar", Window(1, r, -9, 9), r=r)
        dat = generic_data(srf, tb2)
        ok, methods = _agree(srf, dat, qi, qj, qk)
        rep.check(
            "shadow-minor-general: routes %s agree at (%d,%d,%d) [truncated rows, r=%d]"
            % ("/".join(methods), qi, qj, qk, r),
            ok,
        )

    s = surfaces[2]
    d = datas[2]
    seq = uv_decompose(s, d, -1, 2)
    ok = True
    for rows_cols in ([1], [2], [1, 2], [2, 3], [1, 2, 3]):
        ok = ok and lgv_minor(seq, rows_cols, rows_cols) == seq.minor_times(
            rows_cols, rows_cols
        )
    ok = ok and lgv_minor(seq, [1, 2], [2, 3]) == seq.minor_times([1, 2], [2, 3])
    rep.check("lgv-minor: path partition functions equal the minors", ok)
    return rep


# -- wall emergence ------------------------------------------------------------------------


def check_boundary_emergence(r: int, ell: int, k_max: int = 6) -> Report:
    """Regularized symmetric data on the wall-free solver reproduces the
    restricted system: boundary columns become 1, the strips beyond them 0,
    and interior values match the restricted oracle, in the a -> 0 limit."""
    if r + ell > 7:
        raise TooLarge("emergence suite capped at r+ell <= 7")
    rep = Report("boundary-emergence[r=%d,ell=%d]" % (r, ell))
    tb = VarTable()
    margin = r + ell + k_max + 4
    win = Window(1, r, -margin, margin)
    s, d, vids = build_regularized_data(r, ell, "restricted", win, tb)

    rs = flat_surface("Restricted", Window(1, r, -1, ell + 2), r=r, ell=ell)
    ro = TSystemOracle(rs, generic_data(rs, tb))

    rows = sorted({1, r})
    for i in rows:
        for (j, want) in [(0, "one"), (ell + 1, "one")] + [
            (-jj, "zero") for jj in range(1, r + 1)
        ] + [(ell + 1 + jj, "zero") for jj in range(1, r + 1)]:
            ok = True
            h = s.height(i, j)
            for dk in range(2, k_max + 1, 2):
                lim = lp_subst_zero(solve_general_minor(s, d, i, j, h + dk), vids)
                ok = ok and (lim.is_one() if want == "one" else lim.is_zero())
            rep.check(
                "boundary-emergence: column %d behaves as %s at row %d" % (j, want, i), ok
            )

    for i in range(1, r + 1):
        for j in range(1, ell + 1):
            h = s.height(i, j)
            ok = True
            for dk in range(2, k_max + 1, 2):
                lim = lp_subst_zero(solve_general_minor(s, d, i, j, h + dk), vids)
                ok = ok and lim == ro.value(i, j, h + dk)
            rep.check(
                "equivalence-wall-vs-symmetric: interior (%d,%d) matches the restricted oracle"
                % (i, j),
                ok,
            )

    raised = False
    try:
        plain_s, plain_d = build_symmetric_data(r, ell, "restricted", win, VarTable())
        TSystemOracle(plain_s, plain_d).value(1, -1, plain_s.height(1, -1) + 2)
    except NeedsRegularization:
        raised = True
    rep.check("boundary-emergence: raw zeros are refused with the dedicated error", raised)
    return rep


# -- registry ---------------------------------------------------------------------------------


SUITES: Dict[str, Callable[..., Report]] = {
    "identities": check_identities,
    "periodicity": check_periodicity,
    "positivity": check_positivity,
    "equivalence": check_equivalence,
    "boundary-emergence": check_boundary_emergence,
}

# behavior tag -> owning suite; tests enforce that every tag shows up in a
# case description produced by that suite
COVERAGE: Dict[str, str] = {
    "chip-exchange-raise": "identities",
    "chip-exchange-commute": "identities",
    "chip-exchange-mutation": "identities",
    "projective-rescale": "identities",
    "chip-inverses": "identities",
    "reflection-matrices": "identities",
    "conjugation-rules": "identities",
    "wall-collapse": "identities",
    "regularized-crossing-polynomial": "identities",
    "regularized-crossing-det": "identities",
    "regularized-crossing-row": "identities",
    "regularized-crossing-factored": "identities",
    "regularized-crossing-limit": "identities",
    "reflected-crossing-limit": "identities",
    "reflected-crossing-row": "identities",
    "periodicity": "periodicity",
    "half-period-twist": "periodicity",
    "positivity": "positivity",
    "laurent-property": "positivity",
    "projection-solution": "equivalence",
    "wronskian-determinant": "equivalence",
    "shadow-minor-flat": "equivalence",
    "shadow-minor-general": "equivalence",
    "lgv-minor": "equivalence",
    "boundary-emergence": "boundary-emergence",
    "equivalence-wall-vs-symmetric": "boundary-emergence",
}


def run_suite(name: str, **kwargs) -> Report:
    if name not in SUITES:
        raise ValueError("unknown suite %r (have: %s)" % (name, ", ".join(sorted(SUITES))))
    return SUITES[name](**kwargs)
