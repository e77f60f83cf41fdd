"""Quadratic cochain complexes on the boundary of the polygon move.

For the (2n+1)-gon there are three consecutive spaces of quadratic cochains:

* degree 2n-2: one coefficient per face (a multiple of the squared color);
* degree 2n-1: one symmetric n x n Gram matrix per simplex, written in the
  simplex's input-face coordinates;
* degree 2n:   one symmetric N x N Gram matrix on the globally permitted
  colorings, written in bottom-face coordinates (N = n(n+1)/2).

The two coboundary operators between them are assembled in
:func:`coboundary_matrix`; quadratic forms are flattened to vectors by their
polynomial coefficients (diagonal entries once, each off-diagonal pair as a
single doubled coefficient), which is faithful because the characteristic is
never 2.

The distinguished degree-(2n-2) cocycle is built in :func:`face_cocycle`:
restricted to any single simplex p its coefficients are proportional to the
products of the minors d(i1,i2,p) over the edges of each face, and a
per-label normalization glues these local descriptions into one well-defined
face cochain.  It spans the kernel of the low coboundary for every n.  For
the heptagon only, the middle dimension also carries a nontrivial cocycle,
built from a scalar product of edge vectors (:func:`edge_scalar_product`)
whose weight is the determinant of the symmetric-square matrix of the
parameters (:func:`sym2_matrix`).

Rank computations route through :func:`complex_ranks`, which by default
rewrites both operators in integer simplex-vector bases (an invertible
change of basis on every block, hence rank-neutral) so that the fraction-free
eliminations run on integers of moderate size even for the hendecagon.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .coloring import (Coloring, all_simplex_vectors, faces, global_basis,
                       independent_simplex_vectors, simplex_vector)
from .fields import QQ, Rationals, is_prime
from .linalg import Matrix, det, inverse, kernel_basis, rank, solve
from .polygon import (GenericityError, ParameterMatrix, SlotScheme,
                      minor_det, slot_scheme, transition_matrix)

Face = Tuple[int, int]


def vertex_sign(n: int, p: int, i: int) -> int:
    """Alternating sign of vertex i within the ordered vertex list of
    simplex p: +1 on the first, third, ... element of {1..2n+1} minus p.

    >>> vertex_sign(3, 7, 1), vertex_sign(3, 7, 6), vertex_sign(3, 2, 3)
    (1, -1, -1)
    """
    if i == p:
        raise ValueError(f"vertex {i} does not belong to simplex {p}")
    if not (1 <= i <= 2 * n + 1 and 1 <= p <= 2 * n + 1):
        raise ValueError("labels out of range")
    return 1 if ((i - 1) if i < p else i) % 2 == 0 else -1


# ---------------------------------------------------------------------------
# The degree-(2n-2) cocycle


def local_face_coefficient(M: ParameterMatrix, i: int, p: int):
    """The minor product attached to face {i, p} inside simplex p.

    One factor d(i1, i2, p) per edge {i1, i2} of the face, i1 < i2 running
    over the labels other than i and p; C(2n-1, 2) factors in all.
    """
    if i == p:
        raise ValueError("face labels must be distinct")
    val = M.field.one
    rest = [x for x in range(1, M.labels + 1) if x not in (i, p)]
    for i1, i2 in itertools.combinations(rest, 2):
        val = val * minor_det(M, i1, i2, p)
    return val


def _label_scale(M: ParameterMatrix, p: int):
    """Product of all sorted-triple minors avoiding label p."""
    val = M.field.one
    rest = [x for x in range(1, M.labels + 1) if x != p]
    for t in itertools.combinations(rest, 3):
        val = val * minor_det(M, *t)
    return val


@dataclass(frozen=True)
class QuadraticCochain:
    """A quadratic cochain of one of the three relevant degrees.

    Exactly one payload is populated: ``face_coefficients`` for degree
    2n-2, ``simplex_grams`` (label -> symmetric Matrix in input
    coordinates) for degree 2n-1, ``global_gram`` for degree 2n.
    """

    n: int
    degree: int
    face_coefficients: Optional[Dict[Face, object]] = None
    simplex_grams: Optional[Dict[int, Matrix]] = None
    global_gram: Optional[Matrix] = None

    def __post_init__(self):
        lo, mid, hi = 2 * self.n - 2, 2 * self.n - 1, 2 * self.n
        if self.degree == lo:
            assert self.face_coefficients is not None
        elif self.degree == mid:
            assert self.simplex_grams is not None
            for g in self.simplex_grams.values():
                assert g == g.transpose(), "Gram matrices must be symmetric"
        elif self.degree == hi:
            assert self.global_gram is not None
            assert self.global_gram == self.global_gram.transpose()
        else:
            raise ValueError(f"degree {self.degree} outside {lo}..{hi}")

    def flatten(self) -> list:
        """Coefficient vector in the canonical coordinates of its degree."""
        if self.face_coefficients is not None:
            return [self.face_coefficients[f] for f in faces(self.n)]
        if self.simplex_grams is not None:
            out = []
            for p in sorted(self.simplex_grams):
                out.extend(flatten_gram(self.simplex_grams[p]))
            return out
        return flatten_gram(self.global_gram)


def flatten_gram(g: Matrix) -> list:
    """Upper-triangle polynomial coefficients of a symmetric Gram matrix."""
    out = []
    for s in range(g.rows):
        for t in range(s, g.cols):
            out.append(g[s, t] if s == t else 2 * g[s, t])
    return out


def unflatten_gram(coeffs: Sequence, k: int, fld) -> Matrix:
    """Inverse of :func:`flatten_gram`; divides off-diagonal terms by two."""
    g = [[fld.zero] * k for _ in range(k)]
    idx = 0
    two = fld(2)
    for s in range(k):
        for t in range(s, k):
            if s == t:
                g[s][s] = coeffs[idx]
            else:
                g[s][t] = coeffs[idx] / two
                g[t][s] = g[s][t]
            idx += 1
    return Matrix(g, fld)


def face_cocycle(M: ParameterMatrix) -> QuadraticCochain:
    """The distinguished degree-(2n-2) cocycle.

    The coefficient of face {a, b} is the local minor product of the face
    inside simplex b, times the product of all triple minors avoiding b.
    The extra factor is exactly what makes the two local descriptions of
    each face (from its two simplices) coincide, so the result is a single
    well-defined face cochain; it spans the kernel of the low coboundary.
    """
    scales = {p: _label_scale(M, p) for p in range(1, M.labels + 1)}
    coeffs = {}
    for (a, b) in faces(M.n):
        coeffs[(a, b)] = scales[b] * local_face_coefficient(M, a, b)
    return QuadraticCochain(n=M.n, degree=2 * M.n - 2,
                            face_coefficients=coeffs)


def coboundary_pairing(M: ParameterMatrix, p: int, x: Coloring, y: Coloring):
    """The symmetric pairing of two colorings on simplex p induced by the
    local face coefficients: sum over i != p of
    sign(i) * coefficient({i,p}) * x({i,p}) * y({i,p}).

    Vanishes whenever the restrictions of x and y to simplex p are
    permitted.
    """
    total = M.field.zero
    for i in range(1, M.labels + 1):
        if i == p:
            continue
        term = (local_face_coefficient(M, i, p)
                * x[(i, p)] * y[(i, p)])
        total = total + vertex_sign(M.n, p, i) * term
    return total


# ---------------------------------------------------------------------------
# Coboundary operators


def _input_functionals(M: ParameterMatrix, p: int, scheme: SlotScheme):
    """For each companion i of simplex p, the linear functional giving the
    face value x({i,p}) in input coordinates."""
    tm = transition_matrix(M, p, scheme)
    zero, one = M.field.zero, M.field.one
    n = M.n
    functionals = {}
    for k, i in enumerate(tm.input_companions):
        v = [zero] * n
        v[k] = one
        functionals[i] = v
    for idx, l in enumerate(tm.output_companions):
        functionals[l] = [tm.matrix[k, idx] for k in range(n)]
    return functionals


def coboundary_matrix(M: ParameterMatrix, scheme: Optional[SlotScheme] = None,
                      level: str = "low") -> Matrix:
    """Matrix of one coboundary operator in canonical coordinates.

    level="low": from face coefficients (columns, lexicographic) to
    per-simplex Gram coefficients (rows; simplices ascending, upper
    triangle row-major within each block).  The Gram of the image on
    simplex p is the signed sum of rank-one squares of the face
    functionals.

    level="high": from per-simplex Gram coefficients (columns) to the
    global Gram coefficients in bottom-face coordinates (rows).  Each
    simplex Gram is pulled back along the restriction map read off the
    propagated global basis and added with the alternating sign of its
    label.

    The composition high . low is exactly zero.
    """
    scheme = scheme or slot_scheme(M.n)
    n = M.n
    fld = M.field
    flist = faces(n)
    findex = {f: i for i, f in enumerate(flist)}
    T = n * (n + 1) // 2

    if level == "low":
        rows = []
        for p in range(1, 2 * n + 2):
            functionals = _input_functionals(M, p, scheme)
            for s in range(n):
                for t in range(s, n):
                    row = [fld.zero] * len(flist)
                    for i, v in functionals.items():
                        coeff = v[s] * v[t]
                        if s != t:
                            coeff = 2 * coeff
                        face = (i, p) if i < p else (p, i)
                        row[findex[face]] = row[findex[face]] + \
                            vertex_sign(n, p, i) * coeff
                    rows.append(row)
        return Matrix(rows, fld)

    if level == "high":
        gb = global_basis(M, scheme)
        N = scheme.size
        half = fld.one / fld(2)
        cols: List[list] = []
        for p in range(1, 2 * n + 2):
            ins = scheme.inputs(p)
            # restriction map: bottom coordinates -> input coordinates of p
            R = [[gb[j][(min(i, p), max(i, p))] for j in range(N)]
                 for i in ins]
            sign = 1 if (p - 1) % 2 == 0 else -1
            for s in range(n):
                for t in range(s, n):
                    # pull back the unit form x_s x_t along R
                    if s == t:
                        P = [[R[s][i] * R[s][j] for j in range(N)]
                             for i in range(N)]
                    else:
                        P = [[(R[s][i] * R[t][j] + R[t][i] * R[s][j]) * half
                              for j in range(N)] for i in range(N)]
                    flat = []
                    for i in range(N):
                        for j in range(i, N):
                            flat.append(sign * (P[i][j] if i == j
                                                else 2 * P[i][j]))
                    cols.append(flat)
        rows = [[cols[c][r] for c in range(len(cols))]
                for r in range(N * (N + 1) // 2)]
        return Matrix(rows, fld)

    raise ValueError(f"level must be 'low' or 'high', not {level!r}")


# ---------------------------------------------------------------------------
# Rank tables


@dataclass(frozen=True)
class RankTable:
    """Dimensions and coboundary ranks of one polygon's quadratic complex."""

    n: int
    dims: Tuple[int, int, int]
    rank_low: int
    rank_high: int

    @property
    def middle_cohomology_dim(self) -> int:
        return self.dims[1] - self.rank_low - self.rank_high

    def __post_init__(self):
        assert self.middle_cohomology_dim >= 0


def _per_simplex_integer_bases(M: ParameterMatrix, scheme: SlotScheme):
    """For each simplex, n simplex vectors with independent restrictions.

    Simplex vectors take polynomial values in the parameters, so for
    integer parameters these bases keep every matrix entry an integer.
    """
    pool = all_simplex_vectors(M)
    out = {}
    for p in range(1, 2 * M.n + 2):
        ins = scheme.inputs(p)
        chosen = []
        rows: List[list] = []
        for S, vec in pool:
            if p in S:
                continue
            coords = [vec[(i, p)] for i in ins]
            cand = rows + [coords]
            if rank(Matrix(cand, M.field)) == len(cand):
                chosen.append(vec)
                rows.append(coords)
            if len(chosen) == M.n:
                break
        if len(chosen) != M.n:
            raise GenericityError(
                f"restricted simplex vectors span only {len(chosen)} of "
                f"{M.n} dimensions on simplex {p}")
        out[p] = chosen
    return out


def _fast_low_matrix(M: ParameterMatrix, scheme: SlotScheme,
                     bases: Dict[int, List[Coloring]]) -> Matrix:
    """The low coboundary with each simplex block rewritten in its
    simplex-vector basis; same rank and same kernel as the canonical one."""
    n, fld = M.n, M.field
    flist = faces(n)
    findex = {f: i for i, f in enumerate(flist)}
    rows = []
    for p in range(1, 2 * n + 2):
        B = bases[p]
        for s in range(n):
            for t in range(s, n):
                row = [fld.zero] * len(flist)
                for i in range(1, 2 * n + 2):
                    if i == p:
                        continue
                    u = (i, p) if i < p else (p, i)
                    coeff = B[s][u] * B[t][u]
                    if s != t:
                        coeff = 2 * coeff
                    row[findex[u]] = vertex_sign(n, p, i) * coeff
                rows.append(row)
    return Matrix(rows, fld)


def _fast_high_rows(M: ParameterMatrix, scheme: SlotScheme,
                    gens: List[Coloring]) -> Matrix:
    """Rows spanning the image of the high coboundary, written in the
    simplex-vector basis of the global space; the row span has the same
    dimension as the canonical operator's column span."""
    n, fld = M.n, M.field
    N = scheme.size
    rows = []
    for p in range(1, 2 * n + 2):
        ins = scheme.inputs(p)
        R = [[gens[j][(min(i, p), max(i, p))] for j in range(N)]
             for i in ins]
        for a in range(n):
            for b in range(a, n):
                P = [[R[a][i] * R[b][j] + R[b][i] * R[a][j]
                      for j in range(N)] for i in range(N)]
                flat = []
                for i in range(N):
                    for j in range(i, N):
                        flat.append(P[i][j] if i == j else 2 * P[i][j])
                rows.append(flat)
    return Matrix(rows, fld)


def complex_ranks(M: ParameterMatrix, scheme: Optional[SlotScheme] = None,
                  method: str = "fast") -> RankTable:
    """Exact ranks of both coboundary operators and the middle cohomology
    dimension.

    method="fast" (default) computes the ranks after invertible per-block
    changes of basis that keep all entries polynomial in the parameters;
    method="canonical" ranks the matrices of :func:`coboundary_matrix`
    directly.  Both agree, which the test suite checks on the smaller
    polygons.
    """
    scheme = scheme or slot_scheme(M.n)
    n = M.n
    dims = (n * (2 * n + 1),
            (2 * n + 1) * n * (n + 1) // 2,
            scheme.size * (scheme.size + 1) // 2)
    if method == "canonical":
        low = coboundary_matrix(M, scheme, "low")
        high = coboundary_matrix(M, scheme, "high")
        return RankTable(n=n, dims=dims, rank_low=rank(low),
                         rank_high=rank(high))
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    bases = _per_simplex_integer_bases(M, scheme)
    gens = [vec for _, vec in independent_simplex_vectors(M, scheme)]
    low = _fast_low_matrix(M, scheme, bases)
    high = _fast_high_rows(M, scheme, gens)
    return RankTable(n=n, dims=dims, rank_low=rank(low),
                     rank_high=rank(high))


def face_cocycle_spans_kernel(M: ParameterMatrix,
                              scheme: Optional[SlotScheme] = None
                              ) -> Tuple[bool, int]:
    """Check that the distinguished face cochain is annihilated by the low
    coboundary and that the kernel is one-dimensional.

    Returns (spans, kernel_dimension).  Uses the basis-changed low matrix,
    whose kernel is identical to the canonical one since the source
    coordinates (face coefficients) are untouched.
    """
    scheme = scheme or slot_scheme(M.n)
    bases = _per_simplex_integer_bases(M, scheme)
    low = _fast_low_matrix(M, scheme, bases)
    vec = face_cocycle(M).flatten()
    zero = M.field.zero
    in_kernel = all(x == zero for x in low.matvec(vec))
    ker_dim = low.cols - rank(low)
    nonzero = any(x != zero for x in vec)
    return (in_kernel and nonzero and ker_dim == 1, ker_dim)


# ---------------------------------------------------------------------------
# The heptagon middle-dimension cocycle


def sym2_matrix(M: ParameterMatrix, p: int) -> Matrix:
    """The 6x6 matrix of quadratic row monomials at the columns other
    than p (heptagon only).

    Rows are the squares and pairwise products of the three parameter rows
    (r0^2, r1^2, r2^2, r0 r1, r0 r2, r1 r2); columns run over the labels
    1..7 except p, ascending.
    """
    if M.n != 3:
        raise ValueError("the symmetric-square matrix is a heptagon object")
    others = [x for x in range(1, 8) if x != p]
    r0, r1, r2 = M.entries
    rows = []
    for f in ((lambda a, b, c: a * a), (lambda a, b, c: b * b),
              (lambda a, b, c: c * c), (lambda a, b, c: a * b),
              (lambda a, b, c: a * c), (lambda a, b, c: b * c)):
        rows.append([f(r0[i - 1], r1[i - 1], r2[i - 1]) for i in others])
    return Matrix(rows, M.field)


def edge_scalar_product(M: ParameterMatrix, p: int,
                        edge1: Sequence[int], edge2: Sequence[int]):
    """The scalar product of two edge vectors on heptagon simplex p:
    det(sym2) * (d(i,k,p) d(j,l,p) + d(i,l,p) d(j,k,p)).

    Symmetric in each edge and under swapping the edges; an edge through p
    gives zero because each term contains a repeated-label minor.
    """
    i, j = sorted(edge1)
    k, l = sorted(edge2)
    weight = det(sym2_matrix(M, p))
    cross = (minor_det(M, i, k, p) * minor_det(M, j, l, p)
             + minor_det(M, i, l, p) * minor_det(M, j, k, p))
    return weight * cross


def heptagon_cocycle_gram(M: ParameterMatrix, p: int,
                          scheme: Optional[SlotScheme] = None) -> Matrix:
    """Gram matrix, in input coordinates, of the middle cocycle on
    heptagon simplex p.

    Picks the lexicographically first three edges of the simplex whose
    restricted edge vectors are independent, forms their pairwise scalar
    products and changes basis to input coordinates.  The result does not
    depend on the chosen triple (a consistency the tests verify against
    every other independent triple).
    """
    if M.n != 3:
        raise ValueError("the middle cocycle is a heptagon object")
    scheme = scheme or slot_scheme(M.n)
    ins = scheme.inputs(p)
    vertex_pool = [x for x in range(1, 8) if x != p]
    chosen = []
    rows: List[list] = []
    for e in itertools.combinations(vertex_pool, 2):
        coords = [simplex_vector(M, e)[(i, p)] for i in ins]
        cand = rows + [coords]
        if rank(Matrix(cand, M.field)) == len(cand):
            chosen.append(e)
            rows.append(coords)
        if len(chosen) == 3:
            break
    if len(chosen) != 3:
        raise GenericityError(
            f"no independent edge triple on simplex {p}")
    B = Matrix(rows, M.field)
    G = Matrix([[edge_scalar_product(M, p, chosen[a], chosen[b])
                 for b in range(3)] for a in range(3)], M.field)
    Binv = inverse(B)
    return Binv * G * Binv.transpose()


def heptagon_cocycle(M: ParameterMatrix,
                     scheme: Optional[SlotScheme] = None) -> QuadraticCochain:
    """The nontrivial middle cocycle of the heptagon as a quadratic
    cochain (one 3x3 Gram per simplex, input coordinates)."""
    scheme = scheme or slot_scheme(M.n)
    grams = {p: heptagon_cocycle_gram(M, p, scheme) for p in range(1, 8)}
    return QuadraticCochain(n=3, degree=5, simplex_grams=grams)


@dataclass(frozen=True)
class CocycleVerdict:
    """Whether a middle cochain is a coboundary.

    For a trivial cochain ``preimage`` holds face coefficients mapping onto
    it; for the heptagon cocycle the three pairwise distinct scalar
    products of disjoint edge pairs on simplex 7 witness nontriviality.
    """

    nontrivial: bool
    preimage: Optional[list] = None
    witness_products: Optional[tuple] = None


def nontriviality_check(M: ParameterMatrix,
                        scheme: Optional[SlotScheme] = None,
                        cochain: Optional[Sequence] = None) -> CocycleVerdict:
    """Decide whether a degree-(2n-1) cochain is a coboundary of a face
    cochain; defaults to the heptagon middle cocycle.

    Solves the low coboundary system exactly: a solution is returned as
    the preimage, no solution means the cochain is nontrivial in
    cohomology (once it is known to be a cocycle).
    """
    scheme = scheme or slot_scheme(M.n)
    witness = None
    if cochain is None:
        cochain = heptagon_cocycle(M, scheme).flatten()
        witness = (edge_scalar_product(M, 7, (1, 2), (3, 4)),
                   edge_scalar_product(M, 7, (1, 3), (2, 4)),
                   edge_scalar_product(M, 7, (1, 4), (2, 3)))
    low = coboundary_matrix(M, scheme, "low")
    pre = solve(low, list(cochain))
    if pre is None:
        return CocycleVerdict(nontrivial=True, witness_products=witness)
    return CocycleVerdict(nontrivial=False, preimage=pre,
                          witness_products=witness)


# ---------------------------------------------------------------------------
# dethad


def dethad(B: Matrix):
    """The six-term polynomial on 3x3 matrices from the theory of
    alternating matrix--Hadamard inversion.

    With rows (a, b, c) and columns (0, 1, 2) of B:

        - a0 b0 a1 c1 b2 c2 + a0 c0 a1 b1 b2 c2 + a0 b0 b1 c1 a2 c2
        - b0 c0 a1 b1 a2 c2 - a0 c0 b1 c1 a2 b2 + b0 c0 a1 c1 a2 b2

    Vanishes on the identity (each monomial has a zero factor) and on the
    all-ones matrix (the signs cancel).
    """
    if B.rows != 3 or B.cols != 3:
        raise ValueError("dethad is defined on 3x3 matrices")
    a, b, c = B.entries
    ab = [a[j] * b[j] for j in range(3)]
    ac = [a[j] * c[j] for j in range(3)]
    bc = [b[j] * c[j] for j in range(3)]
    return (- ab[0] * ac[1] * bc[2] + ac[0] * ab[1] * bc[2]
            + ab[0] * bc[1] * ac[2] - bc[0] * ab[1] * ac[2]
            - ac[0] * bc[1] * ab[2] + bc[0] * ac[1] * ab[2])


def normalize_first_three_columns(M: ParameterMatrix) -> ParameterMatrix:
    """Row-transform M so that its first three columns become the identity.

    Leaves the polygon data unchanged up to an overall scaling of all
    minors, since every minor is multiplied by the same determinant.
    """
    first = Matrix([[M.entries[r][c] for c in range(3)] for r in range(3)],
                   M.field)
    T = inverse(first)
    new_rows = []
    for r in range(3):
        new_rows.append(tuple(
            sum((T[r, k] * M.entries[k][c] for k in range(3)),
                start=M.field.zero)
            for c in range(M.labels)))
    return ParameterMatrix(n=M.n, field=M.field, entries=tuple(new_rows))


# ---------------------------------------------------------------------------
# Characteristic-p lift of the face cocycle


@dataclass
class BocksteinResult:
    """Outcome of the four-step characteristic-p lift.

    divisible:        every tested coboundary value of the powered cochain
                      was divisible by the prime;
    counterexample:   (trial, simplex, value) for the first failure;
    cocycle_mod_p:    the divided/reduced cochain's own coboundary vanished
                      mod p on all tested global pairs;
    nonzero_mod_p:    some tested value of the reduced cochain was nonzero;
    reduced_cochain:  evaluator (p, x, y) -> int in [0, prime) taking two
                      integer colorings whose restrictions to simplex p are
                      permitted.
    """

    prime: int
    k: int
    l: int
    trials: int
    divisible: bool
    counterexample: Optional[Tuple[int, int, int]]
    cocycle_mod_p: bool
    nonzero_mod_p: bool
    reduced_cochain: Optional[Callable[[int, Coloring, Coloring], int]]


def _integer_coloring_values(c: Coloring) -> Dict[Face, int]:
    out = {}
    for f, v in c.values.items():
        frac = Fraction(v)
        if frac.denominator != 1:
            raise ValueError("integer coloring expected")
        out[f] = frac.numerator
    return out


def random_integer_permitted(M: ParameterMatrix, rng: random.Random,
                             coeff_bound: int = 9) -> Coloring:
    """A random integer permitted coloring: an integer combination of all
    simplex vectors with coefficients in [-coeff_bound, coeff_bound]."""
    total = None
    for _, vec in all_simplex_vectors(M):
        c = M.field(rng.randint(-coeff_bound, coeff_bound))
        scaled = vec.scaled(c)
        total = scaled if total is None else total.plus(scaled)
    return total


def bockstein_lift(M: ParameterMatrix, scheme: Optional[SlotScheme] = None,
                   prime: int = 3, k: int = 1, l: int = 1,
                   trials: int = 50, seed: int = 0) -> BocksteinResult:
    """Lift the polarized face cocycle to a characteristic-p cochain.

    Steps: polarize the face cocycle into c_u x_u y_u; raise the colorings
    to powers prime**k and prime**l; take the coboundary on each simplex at
    integer permitted colorings and check divisibility by the prime;
    divide and reduce.  The reduced degree-(2n-1) cochain is then itself
    checked to be a cocycle mod p on the tested pairs (as it must, the
    integral coboundary of a coboundary being zero).

    A divisibility failure is reported as data, not raised: it would
    falsify the underlying claim rather than indicate a bug.
    """
    if prime == 2 or not prime % 2:
        raise ValueError("the lift needs an odd prime")
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if not isinstance(M.field, Rationals):
        raise ValueError("integer (rational) parameters required")
    scheme = scheme or slot_scheme(M.n)
    n = M.n
    coeffs = {f: _as_int(v)
              for f, v in face_cocycle(M).face_coefficients.items()}
    # The cocycle is canonical only up to scale; use its primitive integer
    # representative so reduction mod the prime is not vacuously zero.
    content = 0
    for v in coeffs.values():
        content = gcd(content, v)
    if content > 1:
        coeffs = {f: v // content for f, v in coeffs.items()}
    pk, pl = prime ** k, prime ** l
    rng = random.Random(f"{seed}/{prime}/{k}/{l}")

    def powered_coboundary(p: int, xv: Dict[Face, int],
                           yv: Dict[Face, int]) -> int:
        total = 0
        for i in range(1, 2 * n + 2):
            if i == p:
                continue
            f = (i, p) if i < p else (p, i)
            total += (vertex_sign(n, p, i) * coeffs[f]
                      * pow(xv[f], pk) * pow(yv[f], pl))
        return total

    def reduced(p: int, x: Coloring, y: Coloring) -> int:
        xv, yv = _integer_coloring_values(x), _integer_coloring_values(y)
        v = powered_coboundary(p, xv, yv)
        if v % prime:
            raise ArithmeticError(
                f"powered coboundary not divisible by {prime} on simplex {p}")
        return (v // prime) % prime

    divisible = True
    counterexample = None
    cocycle_ok = True
    nonzero = False
    for trial in range(trials):
        x = random_integer_permitted(M, rng)
        y = random_integer_permitted(M, rng)
        xv, yv = _integer_coloring_values(x), _integer_coloring_values(y)
        halves = {}
        for p in range(1, 2 * n + 2):
            v = powered_coboundary(p, xv, yv)
            if v % prime:
                divisible = False
                counterexample = (trial, p, v % prime)
                break
            halves[p] = (v // prime) % prime
        if not divisible:
            break
        if any(halves.values()):
            nonzero = True
        alt = sum(((1 if (p - 1) % 2 == 0 else -1) * halves[p])
                  for p in range(1, 2 * n + 2))
        if alt % prime:
            cocycle_ok = False
    return BocksteinResult(
        prime=prime, k=k, l=l, trials=trials, divisible=divisible,
        counterexample=counterexample,
        cocycle_mod_p=divisible and cocycle_ok,
        nonzero_mod_p=nonzero,
        reduced_cochain=reduced if divisible else None)


def _as_int(v) -> int:
    frac = Fraction(v)
    if frac.denominator != 1:
        raise ValueError(f"expected an integer value, got {v}")
    return frac.numerator
