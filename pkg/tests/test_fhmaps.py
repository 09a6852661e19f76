"""Power-map layer: generators, alpha matrices, omega, minors, phi, term data."""

import random
from fractions import Fraction
from math import comb

import pytest

from bfsyz.exactalg import rank
from bfsyz.fhmaps import (
    fh_rank_report,
    foulkes_howe,
    hw_triple_report,
    ix_kernel_ideal,
    maximal_minors,
    minors_generate_check,
    omega_matrix,
    phi_matrix,
    phi_syzygy_check,
    power_generators,
    power_ideal,
    skew_normalizable,
    sr_wr_terms,
)
from bfsyz.polyring import MultiPoly, PolyRing
from bfsyz.sl2rep import BinaryForm


# ---------------------------------------------------------------------------
# power generators


def test_power_generators_2_2_pinned():
    pg = power_generators(2, 2)
    assert pg.d == 4
    expect = ["c0^2", "2*c0*c1", "2*c0*c2 + c1^2", "2*c1*c2", "c2^2"]
    assert [str(p) for p in pg.polys] == expect


def test_power_generators_2_1_pinned():
    pg = power_generators(2, 1)
    assert [str(p) for p in pg.polys] == ["c0^2", "2*c0*c1", "c1^2"]


def test_power_generators_a1_are_variables():
    pg = power_generators(1, 3)
    for j, p in enumerate(pg.polys):
        assert p == pg.ring.variable(j)


def test_power_generators_expand_identity():
    rng = random.Random(6)
    for a, b in [(2, 2), (3, 2), (2, 3), (4, 1)]:
        pg = power_generators(a, b)
        c = [rng.randint(-5, 5) for _ in range(b + 1)]
        g = BinaryForm(b, c)
        lhs = g.power(a)
        rhs = [p.evaluate(c) for p in pg.polys]
        assert list(lhs.coeffs) == rhs
        assert pg.polys[0] == pg.ring.variable(0) ** a
        assert pg.polys[-1] == pg.ring.variable(b) ** a
        for j, p in enumerate(pg.polys):
            assert p.homogeneous_degree == a
            assert p.weight() == 2 * j - a * b


# ---------------------------------------------------------------------------
# alpha matrices


def test_fh_degree_one_is_inclusion():
    fh = foulkes_howe(2, 2, 1)
    assert fh.matrix.shape == (6, 5)
    assert rank(fh.matrix, "exact") == 5  # full column rank d+1
    fh = foulkes_howe(2, 3, 1)
    assert fh.matrix.shape == (10, 7)
    assert rank(fh.matrix, "exact") == 7


def test_fh_degree_zero_identity():
    fh = foulkes_howe(3, 2, 0)
    assert fh.matrix.shape == (1, 1)
    assert fh.matrix.entries == {(0, 0): 1}


def test_fh_2_2_shapes_and_ranks():
    fh2 = foulkes_howe(2, 2, 2)
    assert fh2.matrix.shape == (15, 15)
    assert rank(fh2.matrix, "exact") == 15
    fh3 = foulkes_howe(2, 2, 3)
    assert fh3.matrix.shape == (28, 35)
    assert rank(fh3.matrix, "exact") == 28


def test_fh_multiplicativity():
    # column(beta + delta_j) = P_j * column(beta), sampled over (2, 2)
    rng = random.Random(10)
    pg = power_generators(2, 2)
    fh2 = foulkes_howe(2, 2, 2)
    fh3 = foulkes_howe(2, 2, 3)

    def column_poly(fh, colno, degree):
        terms = {}
        for (r, c), v in fh.matrix.entries.items():
            if c == colno:
                terms[fh.row_basis[r]] = v
        return MultiPoly(pg.ring, terms)

    col3_index = {m: i for i, m in enumerate(fh3.col_basis)}
    for _ in range(10):
        beta = rng.choice(fh2.col_basis)
        j = rng.randrange(5)
        lifted = list(beta)
        lifted[j] += 1
        lhs = column_poly(fh3, col3_index[tuple(lifted)], 6)
        rhs = pg.polys[j] * column_poly(fh2, fh2.col_basis.index(beta), 4)
        assert lhs == rhs


def test_fh_cache_roundtrip(tmp_path):
    cold = foulkes_howe(2, 2, 2, cache=str(tmp_path))
    assert (tmp_path / "fh-a2-b2-k2.mat").exists()
    warm = foulkes_howe(2, 2, 2, cache=str(tmp_path))
    assert warm.matrix == cold.matrix


def test_fh_rank_report_bijective_cases():
    r = fh_rank_report(2, 3, 3)
    assert (r["source_dim"], r["target_dim"], r["rank"]) == (84, 84, 84)
    assert r["injective"] and r["surjective"] and r["maximal_rank"]
    r = fh_rank_report(3, 2, 2)
    assert (r["source_dim"], r["target_dim"], r["rank"]) == (28, 28, 28)
    assert r["maximal_rank"] and r["status"] == "ok"


def test_fh_rank_report_2_4_4():
    r = fh_rank_report(2, 4, 4)
    assert r["source_dim"] == r["target_dim"] == r["rank"] == 495
    assert r["injective"] and r["surjective"]


def test_fh_rank_report_modular_mode():
    r = fh_rank_report(2, 2, 2, mode="modular", rng=random.Random(3))
    assert r["rank"] == 15 and r["mode"] == "modular"
    assert len(r["primes"]) == 2


def test_fh_maximal_rank_small_grid():
    for a in (1, 2):
        for b in (1, 2, 3):
            for k in range(b + 2):
                r = fh_rank_report(a, b, k)
                assert r["maximal_rank"], (a, b, k)
                if k <= b:
                    assert r["injective"], (a, b, k)
                if k >= b:
                    assert r["surjective"], (a, b, k)


def test_fh_validation():
    with pytest.raises(ValueError):
        foulkes_howe(0, 2, 1)
    with pytest.raises(ValueError):
        fh_rank_report(2, 2, -1)


# ---------------------------------------------------------------------------
# omega matrix and maximal minors


def test_omega_2_1_is_the_conic():
    m = omega_matrix(2, 1)
    assert (m.nrows, m.ncols) == (2, 2)
    minors = maximal_minors(m)
    assert len(minors) == 1
    z = m.ring
    conic = 4 * (z.variable(0) * z.variable(2)) - z.variable(1) * z.variable(1)
    assert minors[0] == conic


def test_omega_closed_form():
    # entry (r, j) = (d*j - i*b) * z_i with i = r - j + 1
    for a, b in [(2, 2), (3, 2), (2, 3)]:
        d = a * b
        m = omega_matrix(a, b)
        assert (m.nrows, m.ncols) == (d + b - 1, b + 1)
        for r in range(m.nrows):
            for j in range(m.ncols):
                i = r - j + 1
                entry = m.entry(r, j)
                if 0 <= i <= d and d * j - i * b != 0:
                    assert entry == (d * j - i * b) * m.ring.variable(i)
                else:
                    assert entry.is_zero()


def test_omega_rank_drop_on_powers():
    rng = random.Random(14)
    for a, b in [(2, 2), (3, 2), (2, 3)]:
        m = omega_matrix(a, b)
        pg = power_generators(a, b)
        for _ in range(10):
            c = [rng.randint(-6, 6) for _ in range(b + 1)]
            point = [p.evaluate(c) for p in pg.polys]
            assert rank(m.evaluate(point), "exact") <= b
        hits = 0
        for _ in range(10):
            pt = [rng.randint(-1000, 1000) for _ in range(a * b + 1)]
            if rank(m.evaluate(pt), "exact") == b + 1:
                hits += 1
        assert hits == 10  # genericity at this seed


def test_minors_count_and_degree():
    minors = maximal_minors(omega_matrix(2, 2))
    assert len(minors) == comb(5, 3) == 10
    assert all(p.homogeneous_degree == 3 for p in minors if not p.is_zero())


def test_minors_vanish_on_power_substitution():
    for a, b in [(2, 2), (2, 3)]:
        pg = power_generators(a, b)
        for minor in maximal_minors(omega_matrix(a, b)):
            assert minor.evaluate(pg.polys).is_zero()


def test_minors_generate_check_values():
    rep = minors_generate_check(2, 2)
    assert rep["span_dim"] == rep["kernel_dim"] == 7
    assert rep["contained"] and rep["equal"] and rep["status"] == "ok"
    rep = minors_generate_check(3, 2)
    assert rep["span_dim"] == rep["kernel_dim"] == 29
    assert rep["equal"]


# ---------------------------------------------------------------------------
# phi


def test_phi_hilbert_burch_shape():
    for a in (1, 2, 3):
        phi = phi_matrix(a, 1)
        assert (phi.nrows, phi.ncols) == (a + 1, a)
        assert phi_syzygy_check(phi)


def test_phi_2_3_kernel_dimension():
    phi = phi_matrix(2, 3)
    assert (phi.nrows, phi.ncols) == (7, 8)
    assert phi_syzygy_check(phi)
    assert list(phi.col_weights) == sorted(phi.col_weights)
    assert len(set(phi.col_weights)) == 8


def test_phi_entries_are_linear():
    phi = phi_matrix(2, 2)
    for poly in phi.entries.values():
        assert poly.homogeneous_degree == 1


def test_phi_skew_normalizable_b2():
    for a in (2, 3):
        phi = phi_matrix(a, 2)
        assert (phi.nrows, phi.ncols) == (2 * a + 1, 2 * a + 1)
        assert skew_normalizable(phi)
    with pytest.raises(ValueError):
        skew_normalizable(phi_matrix(2, 1))


# ---------------------------------------------------------------------------
# term tables


def test_sr_terms_r1():
    t = sr_wr_terms(2, 3, 1)
    assert [(tp.i, tp.twist, tp.s_dim) for tp in t.terms] == [(0, 0, 7), (1, -1, 8)]
    assert t.char_match is None  # r != b-1


def test_sr_wr_char_match_at_top():
    assert sr_wr_terms(2, 3, 2).char_match == (True, True, True)
    assert sr_wr_terms(1, 4, 3).char_match == (True, True, True, True)
    assert sr_wr_terms(3, 2, 1).char_match == (True, True)


# ---------------------------------------------------------------------------
# highest weight triple and the kernel ideal


def test_hw_triple_report():
    rep = hw_triple_report()
    assert rep["triple"] == [Fraction(1), Fraction(-1, 3), Fraction(4, 3)]
    assert rep["reference"] == [Fraction(1), Fraction(1, 4), Fraction(1, 2)]
    assert rep["differs"]


def test_ix_kernel_ideal_2_2():
    ix = ix_kernel_ideal(2, 2)
    assert len(ix.generators) == 7
    assert all(g.homogeneous_degree == 3 for g in ix.generators)
    assert ix.graded_piece(3).ncols == 7
    # generated in degree b+1: the degree-4 piece already fills ker(alpha_4)
    assert ix.graded_piece(4).ncols == comb(8, 4) - comb(10, 2)


def test_minor_span_inside_ix_ideal():
    ix = ix_kernel_ideal(2, 2)
    ring = ix.ring
    index = ring.monomial_index(3)
    piece = ix.graded_piece(3)
    from bfsyz.exactalg.matrix import exact_rank_rows

    base_rows = piece.transpose().to_rows()
    for minor in maximal_minors(omega_matrix(2, 2)):
        row = [0] * ring.dimension(3)
        for exp, coeff in minor.terms.items():
            row[index[exp]] = coeff
        assert exact_rank_rows(base_rows + [row], ring.dimension(3)) == piece.ncols


def test_power_ideal_matches_generators():
    ideal = power_ideal(2, 2)
    assert len(ideal.generators) == 5
    assert ideal.graded_piece(2).ncols == 5
