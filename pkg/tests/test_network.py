"""Chip algebra: exchange identities, wall reflection/collapse behavior,
regularized block networks, and the lattice-path view."""

import pytest

from octanet.laurent import (
    LaurentPoly,
    VarTable,
    lp_div_exact,
    lp_subst_zero,
)
from octanet.network import (
    Chip,
    ChipSequence,
    NetworkError,
    NotUnit,
    TooLarge,
    chip_U,
    chip_V,
    lgv_minor,
    mat_eq,
    mat_identity,
    mat_mul,
    mat_scale,
    matrix_limit_zero,
    parse_word,
    path_graph,
    poly_det,
    polynomial_matrix,
    pq_matrices,
    regularized_left_network,
    regularized_right_network,
    shadow_chip_columns,
    shadow_network,
    surface_chip,
    uv_decompose,
)
from octanet.surface import (
    Window,
    build_symmetric_data,
    flat_surface,
    generic_data,
    mutate,
    regularized_reflected,
    shadow,
)


@pytest.fixture()
def tb():
    return VarTable()


def t(tb, i, j):
    return tb.poly("t[%d,%d]" % (i, j))


def v(tb, name):
    return tb.poly(name)


def seq1(chip, lo=1, hi=2):
    return ChipSequence([chip], lo, hi)


def chips_product_equals(chips_a, chips_b, lo, hi):
    return ChipSequence(chips_a, lo, hi).equals_true(ChipSequence(chips_b, lo, hi))


# -- single chips -------------------------------------------------------------------


def test_chip_blocks_and_denominators(tb):
    a, b, c = (v(tb, n) for n in "abc")
    u = chip_U(1, a, b, c)
    assert u.block() == (b, LaurentPoly.zero(), c, a)
    assert u.denom() == b
    w = chip_V(1, a, b, c)
    assert w.block() == (b, a, LaurentPoly.zero(), c)
    assert w.denom() == c


def test_chip_inverse_is_two_sided(tb):
    a, b, c = (v(tb, n) for n in "abc")
    for ch in (chip_U(1, a, b, c), chip_V(1, a, b, c)):
        fwd = ChipSequence([ch, ch.inverse()], 1, 2)
        bwd = ChipSequence([ch.inverse(), ch], 1, 2)
        assert fwd.matrix_equals(mat_identity(2))
        assert bwd.matrix_equals(mat_identity(2))


def test_chip_arguments_are_projective(tb):
    # scaling all three arguments leaves the true matrix unchanged
    a, b, c, lam = (v(tb, n) for n in ("a", "b", "c", "lam"))
    assert seq1(chip_U(1, a, b, c)).equals_true(
        seq1(chip_U(1, lam * a, lam * b, lam * c))
    )
    assert seq1(chip_V(1, a, b, c)).equals_true(
        seq1(chip_V(1, lam * a, lam * b, lam * c))
    )


def test_true_matrix_divides_out(tb):
    a, b = v(tb, "a"), v(tb, "b")
    m = seq1(chip_U(1, a * b, b, a)).true_matrix()
    assert m[0][0].is_one()
    assert m[1][1] == a
    assert m[1][0] == lp_div_exact(a, b)


# -- exchange identities -----------------------------------------------------------


def test_adjacent_uv_exchange(tb):
    # U on the lower pair slides through V on the upper pair, trading one arg
    a, b, c, d = (v(tb, n) for n in "abcd")
    lhs = [chip_U(1, a, b, c), chip_V(2, b, c, d)]
    rhs = [chip_V(2, a, c, d), chip_U(1, a, b, d)]
    assert chips_product_equals(lhs, rhs, 1, 3)


def test_disjoint_vu_commute(tb):
    a, b, c, d, e, f = (v(tb, n) for n in "abcdef")
    lhs = [chip_V(1, a, b, c), chip_U(2, d, e, f)]
    rhs = [chip_U(2, d, e, f), chip_V(1, a, b, c)]
    assert chips_product_equals(lhs, rhs, 1, 3)


def test_same_wire_exchange_needs_the_relation(tb):
    # U(a,b,u)V(v,b,c) == V(v,a,b')U(b',c,u) exactly when b b' == uv + ac
    a, b, c, u, w = (v(tb, n) for n in ("a", "b", "c", "u", "w"))
    bp = lp_div_exact(u * w + a * c, b)
    lhs = [chip_U(1, a, b, u), chip_V(1, w, b, c)]
    rhs = [chip_V(1, w, a, bp), chip_U(1, bp, c, u)]
    assert chips_product_equals(lhs, rhs, 1, 2)
    # converse: perturbing the exchanged value breaks equality
    bad = [chip_V(1, w, a, bp + 1), chip_U(1, bp + 1, c, u)]
    assert not chips_product_equals(lhs, bad, 1, 2)


def test_same_wire_exchange_with_polynomial_args(tb):
    a = t(tb, 1, 1) + 1
    c = t(tb, 1, 2) + t(tb, 1, 3)
    u, w = t(tb, 2, 1), t(tb, 2, 2)
    b = t(tb, 3, 1)
    bp = lp_div_exact(u * w + a * c, b)
    lhs = [chip_U(1, a, b, u), chip_V(1, w, b, c)]
    rhs = [chip_V(1, w, a, bp), chip_U(1, bp, c, u)]
    assert chips_product_equals(lhs, rhs, 1, 2)


def test_diamond_with_vanishing_cross_terms(tb):
    # when ac + uv == 0 the diamond entries collapse to three monomial ratios
    a, b, c, u = (v(tb, n) for n in ("a", "b", "c", "u"))
    w = -lp_div_exact(a * c, u)  # forces ac + uv == 0
    uv = ChipSequence([chip_U(1, a, b, w), chip_V(1, u, b, c)], 1, 2)
    m = uv.true_matrix()
    assert m[0][0] == lp_div_exact(b, c)
    assert m[0][1] == lp_div_exact(u, c)
    assert m[1][0] == lp_div_exact(w, c)
    assert m[1][1].is_zero()
    vu = ChipSequence([chip_V(1, u, a, b), chip_U(1, b, c, w)], 1, 2)
    m = vu.true_matrix()
    assert m[0][0].is_zero()
    assert m[0][1] == lp_div_exact(u, c)
    assert m[1][0] == lp_div_exact(w, c)
    assert m[1][1] == lp_div_exact(b, c)


# -- reflection and sign matrices ----------------------------------------------------


def test_reflection_matrix_involution():
    for r in (1, 2, 3, 4):
        P, S = pq_matrices(r)
        n = r + 1
        assert mat_eq(mat_mul(P, P), mat_identity(n))
        assert mat_eq(mat_mul(S, S), mat_identity(n))
        # S and P commute up to the parity of the wire count
        sign = LaurentPoly.const((-1) ** (r % 2))
        assert mat_eq(mat_mul(S, P), mat_scale(mat_mul(P, S), sign))


def test_reflection_matrix_entries():
    P, _ = pq_matrices(3)
    for i in range(4):
        for j in range(4):
            if i + j == 3:
                assert P[i][j] == LaurentPoly.const((-1) ** ((2 * i) % 2))
            else:
                assert P[i][j].is_zero()
    P, _ = pq_matrices(2)
    assert P[0][2].is_one()
    assert P[1][1] == LaurentPoly.const(-1)
    assert P[2][0].is_one()


def test_sign_conjugation_flips_apex(tb):
    a, b, c = (v(tb, n) for n in "abc")
    for r in (2, 3):
        _, S = pq_matrices(r)
        for i in range(1, r + 1):
            for mk, flip in (
                (chip_U, chip_U(i, a, b, -c)),
                (chip_V, chip_V(i, a, -b, -c)),
            ):
                ch = seq1(mk(i, a, b, c), 1, r + 1)
                m, d = ch.cleared()
                target, dt = seq1(flip, 1, r + 1).cleared()
                lhs = mat_mul(mat_mul(S, m), S)
                assert mat_eq(mat_scale(lhs, dt), mat_scale(target, d))


def test_reflection_conjugates_u_to_v(tb):
    a, b, c = (v(tb, n) for n in "abc")
    for r in (2, 3):
        P, _ = pq_matrices(r)
        sign = LaurentPoly.const((-1) ** ((r - 1) % 2))
        for i in range(1, r + 1):
            m, d = seq1(chip_U(i, a, b, c), 1, r + 1).cleared()
            tm, td = seq1(chip_V(r + 1 - i, sign * c, a, b), 1, r + 1).cleared()
            assert mat_eq(mat_scale(mat_mul(mat_mul(P, m), P), td), mat_scale(tm, d))
            m, d = seq1(chip_V(i, a, b, c), 1, r + 1).cleared()
            tm, td = seq1(chip_U(r + 1 - i, b, c, sign * a), 1, r + 1).cleared()
            assert mat_eq(mat_scale(mat_mul(mat_mul(P, m), P), td), mat_scale(tm, d))


def test_collapse_across_reflection_generic(tb):
    # V(+-c,b,a) P U(a,b,c) == P and U(c,b,+-a) P V(a,b,c) == P
    a = t(tb, 1, 1) + t(tb, 1, 2)
    b, c = t(tb, 2, 1), t(tb, 2, 2) + 1
    for r in (1, 2, 3):
        P, _ = pq_matrices(r)
        sign = LaurentPoly.const((-1) ** (r % 2))
        for i in range(1, r + 1):
            mv, dv = seq1(chip_V(r + 1 - i, sign * c, b, a), 1, r + 1).cleared()
            mu, du = seq1(chip_U(i, a, b, c), 1, r + 1).cleared()
            prod = mat_mul(mat_mul(mv, P), mu)
            assert mat_eq(prod, mat_scale(P, dv * du))
            mu, du = seq1(chip_U(r + 1 - i, c, b, sign * a), 1, r + 1).cleared()
            mv, dv = seq1(chip_V(i, a, b, c), 1, r + 1).cleared()
            prod = mat_mul(mat_mul(mu, P), mv)
            assert mat_eq(prod, mat_scale(P, dv * du))


def test_collapse_with_reflected_wall_data(tb):
    # the symmetric data family supplies exactly the collapsing arguments
    for r in (2, 3):
        _, d = build_symmetric_data(r, None, "plus", Window(1, r, -12, 12), tb)

        def val(i, j):
            if i == 0 or i == r + 1:
                return LaurentPoly.one()
            return d.value(i, j)

        P, _ = pq_matrices(r)
        for i in range(1, r + 1):
            for j in (1, 2, 3):
                vc = chip_V(
                    r + 1 - i,
                    val(r - i, -r - j),
                    val(r + 1 - i, -r - 1 - j),
                    val(r + 1 - i, -r - j),
                )
                uc = chip_U(i, val(i, j - 1), val(i, j), val(i + 1, j - 1))
                mv, dv = seq1(vc, 1, r + 1).cleared()
                mu, du = seq1(uc, 1, r + 1).cleared()
                assert mat_eq(mat_mul(mat_mul(mv, P), mu), mat_scale(P, dv * du))
                uc = chip_U(
                    r + 1 - i,
                    val(r + 1 - i, -r - 1 - j),
                    val(r + 1 - i, -r - j),
                    val(r + 2 - i, -r - 1 - j),
                )
                vc = chip_V(i, val(i - 1, j), val(i, j - 1), val(i, j))
                mu, du = seq1(uc, 1, r + 1).cleared()
                mv, dv = seq1(vc, 1, r + 1).cleared()
                assert mat_eq(mat_mul(mat_mul(mu, P), mv), mat_scale(P, dv * du))


def test_two_wire_collapse_and_epsilon_limit(tb):
    # the two-wire specializations U(a,b,1), V(1,a,b) collapse pairwise,
    # and V(-1,e)U(e,1) tends to the bare swap as e -> 0
    a = t(tb, 1, 1) + 1
    b = t(tb, 1, 2)
    P, _ = pq_matrices(1)
    mu, du = seq1(chip_U(1, -b, -a, 1)).cleared()
    mv, dv = seq1(chip_V(1, 1, a, b)).cleared()
    assert mat_eq(mat_mul(mat_mul(mu, P), mv), mat_scale(P, du * dv))
    mv, dv = seq1(chip_V(1, 1, -b, -a)).cleared()
    mu, du = seq1(chip_U(1, a, b, 1)).cleared()
    assert mat_eq(mat_mul(mat_mul(mv, P), mu), mat_scale(P, du * dv))
    eps = v(tb, "eps")
    pair = ChipSequence([chip_V(1, 1, -1, eps), chip_U(1, eps, 1, 1)], 1, 2)
    true = pair.true_matrix()
    evid = eps.variables().pop()
    lim = [[lp_subst_zero(x, [evid]) for x in row] for row in true]
    assert mat_eq(lim, P)


# -- regularized block networks ------------------------------------------------------


def test_left_block_network_is_polynomial():
    for r in (1, 2, 3, 4):
        for j in range(1, r + 2):
            seq, vids = regularized_left_network(r, j, VarTable())
            mat = polynomial_matrix(seq)
            for row in mat:
                for x in row:
                    assert not x.has_negative_exponents()


def test_left_block_network_determinant():
    for r in (1, 2, 3, 4):
        seq, _ = regularized_left_network(r, r + 1, VarTable())
        det = poly_det(polynomial_matrix(seq))
        assert det == LaurentPoly.const((-1) ** ((r * (r + 1) * (r + 2) // 2) % 2))


def test_left_block_network_limit_is_reflection():
    for r in (1, 2, 3, 4):
        P, _ = pq_matrices(r)
        seq, vids = regularized_left_network(r, r + 1, VarTable())
        lim = matrix_limit_zero(polynomial_matrix(seq), vids)
        assert mat_eq(lim, P)


def test_left_block_partial_crossing_row_one():
    # crossing j columns lands wire 1 on wire 2*floor(j/2)+1, the rest vanish
    for r in (3, 4):
        for j in range(1, r + 1):
            seq, vids = regularized_left_network(r, j, VarTable())
            lim = matrix_limit_zero(polynomial_matrix(seq), vids)
            hit = 2 * (j // 2) + 1
            for col in range(1, r + 2):
                if col == hit:
                    assert lim[0][col - 1].is_one()
                else:
                    assert lim[0][col - 1].is_zero()


def test_right_block_network_limit_is_signed_reflection():
    for r in (1, 2, 3):
        for ell in (2, 3):
            tb2 = VarTable()
            P, _ = pq_matrices(r)
            seq, vids = regularized_right_network(r, ell, r + 1, tb2)
            lim = matrix_limit_zero(seq.true_matrix(), vids)
            assert mat_eq(lim, mat_scale(P, LaurentPoly.const((-1) ** (r % 2))))


def test_right_block_partial_crossing_column_one():
    # the single surviving first-column entry sits at a parity shifted by ell
    for r in (2, 3):
        for ell in (2, 3):
            tb2 = VarTable()
            for j in range(1, r + 1):
                seq, vids = regularized_right_network(r, ell, j, tb2)
                mat = seq.true_matrix()
                barr = regularized_reflected(r, ell, tb2)
                pref = barr[(1, ell + 1 + j)]
                if ell % 2 == 0:
                    hit = 2 * ((j + 1) // 2)
                else:
                    hit = 2 * (j // 2) + 1
                for row in range(1, r + 2):
                    val = lp_subst_zero(mat[row - 1][0] * pref, vids)
                    if row == hit:
                        assert val.is_one()
                    else:
                        assert val.is_zero()


def test_block_network_bounds():
    with pytest.raises(NetworkError):
        regularized_left_network(2, 0, VarTable())
    with pytest.raises(NetworkError):
        regularized_left_network(2, 4, VarTable())


# -- surface networks -----------------------------------------------------------------


def test_full_decomposition_needs_row_walls(tb):
    s = flat_surface("Ainf", Window(1, 3, -3, 3))
    d = generic_data(s, tb)
    with pytest.raises(Exception):
        uv_decompose(s, d, -1, 1)


def test_flat_column_chip_kinds(tb):
    # along one column transition the chip kind alternates with the row
    s = flat_surface("Ar", Window(1, 3, -3, 3), r=3)
    d = generic_data(s, tb)
    seq = uv_decompose(s, d, 0, 1)
    kinds = {(ch.wire): ch.kind for ch in seq.chips}
    assert kinds == {1: "V", 2: "U", 3: "V"}


def test_thirteen_point_network_matrix_entries(tb):
    # the 8-chip diamond network of the height-3 query, entry by entry
    s = flat_surface("Ainf", Window(-2, 8, -6, 6))
    d = generic_data(s, tb)
    dom = shadow(s, 3, 0, 3)
    seq = shadow_network(s, d, dom)
    assert (seq.min_wire, seq.max_wire) == (2, 5)
    assert len(seq.chips) == 8
    assert sorted(ch.kind for ch in seq.chips) == ["U"] * 4 + ["V"] * 4
    a, b, c, dd = t(tb, 1, 0), t(tb, 2, -1), t(tb, 2, 0), t(tb, 2, 1)
    e, f, g, h, i_ = (t(tb, 3, y) for y in (-2, -1, 0, 1, 2))
    k, l, m, n = t(tb, 4, -1), t(tb, 4, 0), t(tb, 4, 1), t(tb, 5, 0)
    assert seq.entry_times(2, 2) == lp_div_exact(b * dd + a * g, c * dd)
    assert seq.entry_times(2, 3) == lp_div_exact(a * (g * i_ + dd * m), dd * h * i_)
    assert seq.entry_times(3, 2) == lp_div_exact(e * g + b * k, dd * f)
    assert seq.entry_times(3, 3) == lp_div_exact(
        c * (g * i_ + dd * m) * (e * g + b * k), dd * f * g * h * i_
    ) + lp_div_exact(b * (g * n + m * k), g * i_ * l)


def test_shadow_chip_run_clips_at_missing_apex(tb):
    # the row-1 chip run stops one short of the domain's east extreme because
    # the next chip would reach for a point outside the domain
    s = flat_surface("Ainf", Window(-2, 6, -6, 6))
    d = generic_data(s, tb)
    s2, d2 = mutate(s, d, 2, 1)
    dom = shadow(s2, 2, -1, 3)
    runs = shadow_chip_columns(s2, dom)
    row1_pts = sorted(y for (x, y) in dom.points if x == 1)
    assert row1_pts[-1] == 1
    assert max(runs[1]) == 0


def test_chip_word_round_trip(tb):
    s = flat_surface("Ar", Window(1, 2, -2, 2), r=2)
    d = generic_data(s, tb)
    seq = uv_decompose(s, d, -1, 1)
    text = seq.word_text(tb)
    back = parse_word(text, tb)
    assert (back.min_wire, back.max_wire) == (seq.min_wire, seq.max_wire)
    assert back.equals_true(seq)


def test_parse_word_rejects_malformed(tb):
    with pytest.raises(NetworkError):
        parse_word("X1(1;1;1)", tb)
    with pytest.raises(NetworkError):
        parse_word("U1(1;1)", tb)
    with pytest.raises(NetworkError):
        parse_word("U1(1;1;1", tb)
    with pytest.raises(NetworkError):
        parse_word("   ", tb)


def test_chip_sequence_wire_bounds(tb):
    with pytest.raises(NetworkError):
        ChipSequence([chip_U(3, 1, 1, 1)], 1, 3)
    seq = ChipSequence([chip_U(1, 1, 1, 1)], 1, 3)
    with pytest.raises(NetworkError):
        seq.local(4)


def test_minor_times_exactness(tb):
    s = flat_surface("Ar", Window(1, 2, -3, 3), r=2)
    d = generic_data(s, tb)
    seq = uv_decompose(s, d, -1, 2)
    mat = seq.true_matrix()
    want = poly_det([[mat[0][0], mat[0][1]], [mat[1][0], mat[1][1]]])
    assert seq.minor_times([1, 2], [1, 2]) == want
    extra = t(tb, 1, 1)
    assert seq.minor_times([1, 2], [1, 2], extra=extra) == want * extra


# -- lattice path view ----------------------------------------------------------------


def test_lgv_agrees_with_determinant(tb):
    s = flat_surface("Ar", Window(1, 2, -3, 3), r=2)
    d = generic_data(s, tb)
    seq = uv_decompose(s, d, -1, 2)
    for rows in ([1], [2], [3], [1, 2], [2, 3], [1, 3], [1, 2, 3]):
        assert lgv_minor(seq, rows, rows) == seq.minor_times(rows, rows)
    assert lgv_minor(seq, [1, 2], [2, 3]) == seq.minor_times([1, 2], [2, 3])


def test_lgv_single_entries(tb):
    s = flat_surface("Ar", Window(1, 3, -2, 2), r=3)
    d = generic_data(s, tb)
    seq = uv_decompose(s, d, 0, 2)
    for a in (1, 2, 3, 4):
        for b in (1, 2, 3, 4):
            assert lgv_minor(seq, [a], [b]) == seq.entry_times(a, b)


def test_lgv_guards(tb):
    s = flat_surface("Ar", Window(1, 2, -3, 3), r=2)
    d = generic_data(s, tb)
    seq = uv_decompose(s, d, -1, 2)
    with pytest.raises(TooLarge):
        lgv_minor(seq, list(range(1, 8)), list(range(1, 8)))
    with pytest.raises(NetworkError):
        lgv_minor(seq, [1, 2], [1])


def test_path_graph_needs_unit_denominators(tb):
    bad = ChipSequence([chip_U(1, 1, t(tb, 1, 1) + 1, 1)], 1, 2)
    with pytest.raises(NotUnit):
        path_graph(bad)
    good = ChipSequence([chip_U(1, 1, t(tb, 1, 1), 1)], 1, 2)
    pg = path_graph(good)
    assert len(pg.layers) == 1
