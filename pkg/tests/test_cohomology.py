"""The quadratic complexes: coboundaries, rank tables, the two cocycles,
the dethad identity and the characteristic-p lift."""

import itertools
import random
from fractions import Fraction

import pytest

from polycoh.cohomology import (QuadraticCochain, bockstein_lift,
                                coboundary_matrix, coboundary_pairing,
                                complex_ranks, dethad, edge_scalar_product,
                                face_cocycle, face_cocycle_spans_kernel,
                                flatten_gram, heptagon_cocycle,
                                heptagon_cocycle_gram, local_face_coefficient,
                                nontriviality_check,
                                normalize_first_three_columns, sym2_matrix,
                                unflatten_gram, vertex_sign)
from polycoh.coloring import (Coloring, all_simplex_vectors, faces,
                              input_values, restrict, simplex_vector)
from polycoh.fields import QQ
from polycoh.linalg import Matrix, det, inverse, rank, solve
from polycoh.polygon import (ParameterMatrix, minor_det,
                             sample_generic_parameters, slot_scheme)

from test_linalg import cofactor_det


# --- signs and coefficients -------------------------------------------------


def test_vertex_sign_examples():
    assert vertex_sign(3, 7, 1) == 1
    assert vertex_sign(3, 7, 6) == -1
    assert vertex_sign(3, 2, 3) == -1


def test_vertex_sign_alternates_over_simplex_vertices():
    for n in (2, 3):
        for p in range(1, 2 * n + 2):
            others = [i for i in range(1, 2 * n + 2) if i != p]
            signs = [vertex_sign(n, p, i) for i in others]
            assert signs == [(-1) ** k for k in range(2 * n)]


def test_vertex_sign_rejects_own_label():
    with pytest.raises(ValueError):
        vertex_sign(3, 4, 4)


def test_local_coefficient_is_product_over_face_edges(hepta):
    # ten factors for the heptagon: all pairs from the five labels of the face
    expected = Fraction(1)
    for (a, b) in itertools.combinations((2, 3, 4, 5, 6), 2):
        expected *= minor_det(hepta, a, b, 7)
    assert local_face_coefficient(hepta, 1, 7) == expected
    assert len(list(itertools.combinations((2, 3, 4, 5, 6), 2))) == 10


def test_local_coefficient_pentagon_oracle(penta):
    # three factors for the pentagon
    labels = [x for x in range(1, 6) if x not in (2, 4)]
    expected = Fraction(1)
    for (a, b) in itertools.combinations(labels, 2):
        expected *= minor_det(penta, a, b, 4)
    assert local_face_coefficient(penta, 2, 4) == expected
    assert len(list(itertools.combinations(labels, 2))) == 3


def test_face_cocycle_coefficients_nonzero(hepta):
    coeffs = face_cocycle(hepta).face_coefficients
    assert len(coeffs) == 21
    assert all(v != 0 for v in coeffs.values())


def test_face_cocycle_restriction_proportional_to_local_products(hepta):
    # On each simplex p the global coefficients are a common multiple of
    # the local minor products, so every per-simplex statement about the
    # local formula transfers verbatim.
    coeffs = face_cocycle(hepta).face_coefficients
    for p in range(1, 8):
        ratios = set()
        for i in range(1, 8):
            if i == p:
                continue
            f = (i, p) if i < p else (p, i)
            ratios.add(coeffs[f] / local_face_coefficient(hepta, i, p))
        assert len(ratios) == 1


def test_face_cocycle_gluing_identity(hepta):
    # The same face coefficient arises from either of its two simplices:
    # scale(b) * local(a, b) == scale(a) * local(b, a).  This identity is
    # what makes the face cochain well defined.
    from polycoh.cohomology import _label_scale
    for (a, b) in ((1, 2), (3, 7), (4, 5)):
        lhs = _label_scale(hepta, b) * local_face_coefficient(hepta, a, b)
        rhs = _label_scale(hepta, a) * local_face_coefficient(hepta, b, a)
        assert lhs == rhs


# --- the low pairing --------------------------------------------------------


def test_pairing_disjoint_edges_cancels_in_two_terms(hepta):
    x = simplex_vector(hepta, (1, 2))
    y = simplex_vector(hepta, (3, 4))
    # exactly two nonvanishing summands, at i = 5 and i = 6
    nonzero = [i for i in range(1, 7)
               if x[(i, 7)] * y[(i, 7)] != 0]
    assert nonzero == [5, 6]
    assert coboundary_pairing(hepta, 7, x, y) == 0


def test_pairing_zero_colorings(hepta):
    zero = Coloring(3, {f: Fraction(0) for f in faces(3)})
    assert coboundary_pairing(hepta, 3, zero, zero) == 0


def test_pairing_vanishes_on_permitted_pairs(hepta):
    rng = random.Random(5)
    pool = all_simplex_vectors(hepta)

    def random_permitted():
        total = None
        for _, vec in pool:
            s = vec.scaled(Fraction(rng.randint(-4, 4)))
            total = s if total is None else total.plus(s)
        return total

    for _ in range(3):
        x, y = random_permitted(), random_permitted()
        for p in range(1, 8):
            assert coboundary_pairing(hepta, p, x, y) == 0


def test_pairing_nonzero_on_non_permitted(hepta):
    values = {f: Fraction(0) for f in faces(3)}
    values[(1, 3)] = Fraction(1)
    c = Coloring(3, values)
    assert coboundary_pairing(hepta, 3, c, c) != 0


# --- coboundary matrices ----------------------------------------------------


def test_coboundary_shapes(hepta, hepta_scheme):
    low = coboundary_matrix(hepta, hepta_scheme, "low")
    high = coboundary_matrix(hepta, hepta_scheme, "high")
    assert (low.rows, low.cols) == (42, 21)
    assert (high.rows, high.cols) == (21, 42)


@pytest.mark.parametrize("n,bound", [(2, 8), (3, 10)])
def test_delta_delta_zero(n, bound):
    M = sample_generic_parameters(n, QQ, seed=6, bound=bound)
    scheme = slot_scheme(n)
    low = coboundary_matrix(M, scheme, "low")
    high = coboundary_matrix(M, scheme, "high")
    assert (high * low).is_zero()


def test_face_cocycle_in_kernel_of_canonical_low(hepta, hepta_scheme):
    low = coboundary_matrix(hepta, hepta_scheme, "low")
    vec = face_cocycle(hepta).flatten()
    assert all(x == 0 for x in low.matvec(vec))


@pytest.mark.parametrize("n,bound", [(2, 8), (3, 10), (4, 6), (5, 4)])
def test_face_cocycle_spans_kernel_every_n(n, bound):
    M = sample_generic_parameters(n, QQ, seed=8, bound=bound)
    spans, ker_dim = face_cocycle_spans_kernel(M)
    assert spans and ker_dim == 1


def test_rank_tables_match_expected_all_n():
    expected = {2: ((10, 15, 6), 9, 6, 0), 3: ((21, 42, 21), 20, 21, 1),
                4: ((36, 90, 55), 35, 55, 0), 5: ((55, 165, 120), 54, 111, 0)}
    bounds = {2: 8, 3: 10, 4: 6, 5: 4}
    for n, (dims, rl, rh, mid) in expected.items():
        M = sample_generic_parameters(n, QQ, seed=1, bound=bounds[n])
        rt = complex_ranks(M)
        assert rt.dims == dims
        assert (rt.rank_low, rt.rank_high) == (rl, rh)
        assert rt.middle_cohomology_dim == mid


@pytest.mark.parametrize("n", [2, 3])
def test_fast_and_canonical_ranks_agree(n):
    M = sample_generic_parameters(n, QQ, seed=4)
    fast = complex_ranks(M, method="fast")
    canon = complex_ranks(M, method="canonical")
    assert (fast.rank_low, fast.rank_high) == \
        (canon.rank_low, canon.rank_high)


def test_rank_table_invariance_over_seeds():
    for n, bound, seeds in ((2, 8, range(10)), (3, 10, range(10))):
        mids = set()
        for seed in seeds:
            M = sample_generic_parameters(n, QQ, seed=seed, bound=bound)
            mids.add(complex_ranks(M).middle_cohomology_dim)
        assert len(mids) == 1


def test_gram_flattening_round_trip():
    g = Matrix.from_rows([[2, 3, 5], [3, 7, 11], [5, 11, 13]], QQ)
    flat = flatten_gram(g)
    assert flat == [Fraction(x) for x in (2, 6, 10, 7, 22, 13)]
    assert unflatten_gram(flat, 3, QQ) == g


# --- the heptagon middle cocycle ---------------------------------------------


def test_sym2_matrix_det_oracle(hepta):
    m = sym2_matrix(hepta, 4)
    assert (m.rows, m.cols) == (6, 6)
    assert det(m) == cofactor_det([list(r) for r in m.entries])


def test_sym2_column_scaling(hepta):
    # scaling a parameter column by t scales the matching column by t^2
    t = Fraction(3)
    scaled_entries = tuple(
        tuple(t * v if c == 1 else v for c, v in enumerate(row))
        for row in hepta.entries)
    scaled = ParameterMatrix(n=3, field=QQ, entries=scaled_entries)
    before = sym2_matrix(hepta, 7)
    after = sym2_matrix(scaled, 7)
    for r in range(6):
        for c in range(6):
            factor = t * t if c == 1 else 1
            assert after[r, c] == factor * before[r, c]


def test_edge_product_index_collapse(hepta):
    # equal edges make one cross term vanish and the other a squared minor
    val = edge_scalar_product(hepta, 7, (1, 2), (1, 2))
    d127 = minor_det(hepta, 1, 2, 7)
    assert val == det(sym2_matrix(hepta, 7)) * (-(d127 * d127))


def test_edge_product_symmetries(hepta):
    a = edge_scalar_product(hepta, 5, (1, 2), (3, 4))
    assert a == edge_scalar_product(hepta, 5, (2, 1), (3, 4))
    assert a == edge_scalar_product(hepta, 5, (3, 4), (1, 2))


def test_edge_product_zero_for_edges_through_simplex(hepta):
    assert edge_scalar_product(hepta, 7, (1, 7), (2, 3)) == 0


def test_alternating_sum_vanishes_all_edge_pairs(hepta):
    edges = list(itertools.combinations(range(1, 8), 2))
    pairs = list(itertools.combinations_with_replacement(range(21), 2))
    assert len(pairs) == 231
    for a, b in pairs:
        total = sum((((-1) ** p) * edge_scalar_product(
            hepta, p, edges[a], edges[b]) for p in range(1, 8)),
            start=Fraction(0))
        assert total == 0


def test_three_disjoint_edge_products_distinct(hepta):
    vals = {edge_scalar_product(hepta, 7, (1, 2), (3, 4)),
            edge_scalar_product(hepta, 7, (1, 3), (2, 4)),
            edge_scalar_product(hepta, 7, (1, 4), (2, 3))}
    assert len(vals) == 3


def _gram_from_triple(M, scheme, p, triple):
    """Independent change-of-basis oracle for the Gram on simplex p."""
    rows = [input_values(simplex_vector(M, e), p, scheme) for e in triple]
    B = Matrix(rows, QQ)
    G = Matrix([[edge_scalar_product(M, p, triple[a], triple[b])
                 for b in range(3)] for a in range(3)], QQ)
    Bi = inverse(B)
    return Bi * G * Bi.transpose()


def test_gram_independent_of_edge_triple(hepta, hepta_scheme):
    for p in (1, 7):
        default = heptagon_cocycle_gram(hepta, p, hepta_scheme)
        pool = [e for e in itertools.combinations(range(1, 8), 2)
                if p not in e]
        found = 0
        for triple in itertools.combinations(pool, 3):
            rows = [input_values(simplex_vector(hepta, e), p, hepta_scheme)
                    for e in triple]
            if rank(Matrix(rows, QQ)) < 3:
                continue
            assert _gram_from_triple(hepta, hepta_scheme, p, triple) == default
            found += 1
            if found >= 8:
                break
        assert found >= 2


def test_gram_reproduces_products_on_all_edge_pairs(hepta, hepta_scheme):
    for p in (2, 7):
        G = heptagon_cocycle_gram(hepta, p, hepta_scheme)
        pool = [e for e in itertools.combinations(range(1, 8), 2)
                if p not in e]
        assert len(pool) == 15
        coords = {e: input_values(simplex_vector(hepta, e), p, hepta_scheme)
                  for e in pool}
        npairs = 0
        for e1, e2 in itertools.combinations_with_replacement(pool, 2):
            x, y = coords[e1], coords[e2]
            val = sum((x[r] * G[r, c] * y[c]
                       for r in range(3) for c in range(3)),
                      start=Fraction(0))
            assert val == edge_scalar_product(hepta, p, e1, e2)
            npairs += 1
        assert npairs == 120  # 105 distinct pairs + 15 diagonal


def test_middle_cocycle_in_kernel_of_high(hepta, hepta_scheme):
    vec = heptagon_cocycle(hepta, hepta_scheme).flatten()
    high = coboundary_matrix(hepta, hepta_scheme, "high")
    assert all(v == 0 for v in high.matvec(vec))


def test_middle_cocycle_nontrivial(hepta, hepta_scheme):
    verdict = nontriviality_check(hepta, hepta_scheme)
    assert verdict.nontrivial
    assert verdict.preimage is None
    assert len(set(verdict.witness_products)) == 3


def test_middle_cocycle_scale_covariance(hepta, hepta_scheme):
    vec = heptagon_cocycle(hepta, hepta_scheme).flatten()
    scaled = [Fraction(-7, 3) * v for v in vec]
    high = coboundary_matrix(hepta, hepta_scheme, "high")
    assert all(v == 0 for v in high.matvec(scaled))
    assert nontriviality_check(hepta, hepta_scheme, cochain=scaled).nontrivial


def test_coboundaries_classified_trivial(hepta, hepta_scheme):
    low = coboundary_matrix(hepta, hepta_scheme, "low")
    rng = random.Random(13)
    c4 = [Fraction(rng.randint(-9, 9)) for _ in range(21)]
    image = low.matvec(c4)
    verdict = nontriviality_check(hepta, hepta_scheme, cochain=image)
    assert not verdict.nontrivial
    assert low.matvec(verdict.preimage) == image


def test_kernel_high_splits_as_image_plus_cocycle(hepta, hepta_scheme):
    low = coboundary_matrix(hepta, hepta_scheme, "low")
    high = coboundary_matrix(hepta, hepta_scheme, "high")
    vec = heptagon_cocycle(hepta, hepta_scheme).flatten()
    rank_low, rank_high = rank(low), rank(high)
    assert (rank_low, rank_high) == (20, 21)
    kernel_dim = high.cols - rank_high       # 21
    augmented = low.augment(Matrix([[v] for v in vec], QQ))
    assert rank(augmented) == rank_low + 1   # cocycle escapes the image
    assert kernel_dim == rank_low + 1        # 21 = 20 + 1


def test_lambda_weighted_consistency(hepta, hepta_scheme):
    # Three-term dependences transfer to the scalar products: for edges
    # i-j1, i-j2, i-j3 and the dependence obtained by adjoining i-p, the
    # weighted products against any fixed edge vanish.
    from polycoh.coloring import edge_vector_dependence
    p = 7
    i, js = 1, (2, 3, 4)
    lams = edge_vector_dependence(hepta, i, (*js, p))
    for other in ((2, 3), (5, 6), (3, 6)):
        total = sum(
            (lams[a] * edge_scalar_product(hepta, p, (i, j), other)
             for a, j in enumerate(js)), start=Fraction(0))
        assert total == 0


# --- dethad -----------------------------------------------------------------


def test_dethad_identity_matrix():
    assert dethad(Matrix.identity(3, QQ)) == 0


def test_dethad_all_ones():
    assert dethad(Matrix.from_rows([[1] * 3] * 3, QQ)) == 0


def test_dethad_equals_minus_sym2_det():
    for seed in range(6):
        M = sample_generic_parameters(3, QQ, seed=seed)
        Mn = normalize_first_three_columns(M)
        assert minor_det(Mn, 1, 2, 3) == 1
        block = Matrix([[Mn.entries[r][c] for c in range(3, 6)]
                        for r in range(3)], QQ)
        assert det(sym2_matrix(Mn, 7)) == -dethad(block)


def test_dethad_requires_3x3():
    with pytest.raises(ValueError):
        dethad(Matrix.identity(4, QQ))


# --- the characteristic-p lift ------------------------------------------------


@pytest.fixture(scope="module")
def int_hepta():
    return sample_generic_parameters(3, QQ, seed=0, bound=9)


def test_lift_divisible_and_cocycle(int_hepta):
    res = bockstein_lift(int_hepta, prime=3, k=1, l=1, trials=12, seed=0)
    assert res.divisible
    assert res.counterexample is None
    assert res.cocycle_mod_p
    assert res.reduced_cochain is not None


def test_lift_reduced_cochain_values(int_hepta, hepta_scheme):
    res = bockstein_lift(int_hepta, prime=5, k=1, l=1, trials=6, seed=1)
    assert res.divisible
    from polycoh.cohomology import random_integer_permitted
    rng = random.Random(99)
    x = random_integer_permitted(int_hepta, rng)
    y = random_integer_permitted(int_hepta, rng)
    vals = [res.reduced_cochain(p, x, y) for p in range(1, 8)]
    assert all(0 <= v < 5 for v in vals)
    alt = sum(((-1) ** (p - 1)) * v for p, v in enumerate(vals, start=1))
    assert alt % 5 == 0


def test_lift_produces_nonzero_mod_5_cochain():
    # A parameter matrix whose reduction mod 5 has as few vanishing minors
    # as possible (six columns on a conic over F_5 plus a seventh point),
    # lifted to integers that stay generic over the rationals.
    M = ParameterMatrix.from_json(
        '{"n": 3, "field": "Q", "entries": ['
        '["1", "1", "1", "1", "6", "0", "-5"], '
        '["0", "1", "2", "3", "4", "0", "1"], '
        '["0", "1", "4", "4", "1", "1", "0"]]}')
    res = bockstein_lift(M, prime=5, k=1, l=2, trials=10, seed=0)
    assert res.divisible and res.cocycle_mod_p
    assert res.nonzero_mod_p


def test_lift_rejects_even_prime(int_hepta):
    with pytest.raises(ValueError):
        bockstein_lift(int_hepta, prime=2)
    with pytest.raises(ValueError):
        bockstein_lift(int_hepta, prime=9)
