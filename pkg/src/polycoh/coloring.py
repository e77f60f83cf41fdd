"""Colorings of the faces of a polygon move and their permitted subspaces.

A coloring assigns one field element to every one of the n(2n+1) faces.
A coloring is *permitted* for simplex p when the values on its output faces
equal the values on its input faces multiplied by the transition matrix of
p, and globally permitted when this holds for every simplex.  The globally
permitted colorings form a space of dimension N = n(n+1)/2, parametrized by
the values on the bottom faces.

Two constructions of that space are provided and cross-checked against each
other in the test suite:

* :func:`global_basis` propagates unit bottom values through the slot
  timelines (the graph description);
* :func:`simplex_vector` builds, for each set S of n-1 vertex labels, the
  coloring whose value on face {l, m} is the product over t in S of the
  signed minors (-1)**(l+m) d(t, l, m) (zero when S meets {l, m}).  For the
  heptagon these are the edge vectors e_ij; their span coincides with the
  propagated space.

Face values are always indexed by the sorted pair (a, b).  For an even
number of minor factors the per-factor sign cancels and the plain products
already give permitted colorings; for an odd number (pentagon, enneagon)
the sign is required, as the validation tests demonstrate by exhibiting
simplices where the unsigned products leave the permitted subspace.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Matrix, rank
from .polygon import (GenericityError, ParameterMatrix, SlotScheme,
                      minor_det, slot_scheme, transition_matrix)

Face = Tuple[int, int]


def faces(n: int) -> List[Face]:
    """All n(2n+1) faces as sorted pairs, in lexicographic order."""
    return list(itertools.combinations(range(1, 2 * n + 2), 2))


@dataclass(frozen=True)
class Coloring:
    """A total assignment of field values to the faces of the move."""

    n: int
    values: Dict[Face, object]

    def __post_init__(self):
        expected = faces(self.n)
        if sorted(self.values.keys()) != expected:
            raise ValueError("coloring must assign a value to every face")

    def __getitem__(self, face: Face):
        a, b = face
        return self.values[(a, b) if a < b else (b, a)]

    def vector(self) -> list:
        """Values in lexicographic face order."""
        return [self.values[f] for f in faces(self.n)]

    def to_json(self, fld) -> str:
        return json.dumps({f"{a},{b}": fld.format(v)
                           for (a, b), v in sorted(self.values.items())})

    @classmethod
    def from_json(cls, n: int, text: str, fld) -> "Coloring":
        data = json.loads(text)
        values = {}
        for key, sv in data.items():
            a, b = (int(x) for x in key.split(","))
            values[(a, b) if a < b else (b, a)] = fld(sv)
        return cls(n=n, values=values)

    @classmethod
    def from_vector(cls, n: int, vec: Sequence) -> "Coloring":
        return cls(n=n, values=dict(zip(faces(n), vec)))

    def scaled(self, c) -> "Coloring":
        return Coloring(self.n, {f: c * v for f, v in self.values.items()})

    def plus(self, other: "Coloring") -> "Coloring":
        return Coloring(self.n, {f: v + other.values[f]
                                 for f, v in self.values.items()})


def simplex_vector(M: ParameterMatrix, S: Sequence[int]) -> Coloring:
    """The permitted coloring generated by a set S of n-1 vertex labels.

    Its value on face {l, m} (l < m) is the product over t in S of the
    signed minors (-1)**(l+m) d(t, l, m), and zero whenever S meets
    {l, m}.  For n = 3 the generators S are edges and these are the
    classical edge vectors; the per-factor sign then cancels, but for an
    odd number of factors (n even) it is exactly what makes the coloring
    permitted on every simplex rather than only on some.
    """
    S = sorted(S)
    if len(set(S)) != M.n - 1:
        raise ValueError(f"generator must have {M.n - 1} distinct labels, "
                         f"got {S}")
    if not all(1 <= t <= M.labels for t in S):
        raise ValueError(f"generator labels out of range: {S}")
    zero, one = M.field.zero, M.field.one
    values = {}
    for (l, m) in faces(M.n):
        if any(t == l or t == m for t in S):
            values[(l, m)] = zero
        else:
            v = one
            for t in S:
                v = v * minor_det(M, t, l, m)
            if (l + m) % 2 and (M.n - 1) % 2:
                v = -v
            values[(l, m)] = v
    return Coloring(n=M.n, values=values)


def restrict(c: Coloring, p: int) -> list:
    """Values of c on the 2n faces {i, p}, companions i ascending."""
    return [c[(i, p)] for i in range(1, 2 * c.n + 2) if i != p]


def input_values(c: Coloring, p: int, scheme: SlotScheme) -> list:
    """Values of c on the input faces of simplex p, companions ascending."""
    return [c[(i, p)] for i in scheme.inputs(p)]


@dataclass(frozen=True)
class PermittedSubspace:
    """Basis of the permitted colorings of one simplex.

    Basis vector k has the k-th unit vector as its input-face values and
    the k-th row of the transition matrix as its output-face values; the
    ``restrictions`` store each basis vector over all 2n faces of the
    simplex, companions ascending (the layout produced by ``restrict``).
    """

    p: int
    input_companions: Tuple[int, ...]
    restrictions: Tuple[Tuple[object, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.restrictions)


def permitted_basis(M: ParameterMatrix, p: int,
                    scheme: Optional[SlotScheme] = None) -> PermittedSubspace:
    """The graph-of-the-transition-matrix basis of simplex p's permitted
    colorings; its dimension is exactly n."""
    scheme = scheme or slot_scheme(M.n)
    tm = transition_matrix(M, p, scheme)
    ins, outs = tm.input_companions, tm.output_companions
    companions = [i for i in range(1, 2 * M.n + 2) if i != p]
    zero, one = M.field.zero, M.field.one
    rows = []
    for k in range(M.n):
        vals = {}
        for idx, i in enumerate(ins):
            vals[i] = one if idx == k else zero
        for idx, l in enumerate(outs):
            vals[l] = tm.matrix[k, idx]
        rows.append(tuple(vals[i] for i in companions))
    return PermittedSubspace(p=p, input_companions=ins,
                             restrictions=tuple(rows))


def is_permitted_at(M: ParameterMatrix, c: Coloring, p: int,
                    scheme: SlotScheme) -> bool:
    """Does the restriction of c to simplex p lie in its permitted space?"""
    tm = transition_matrix(M, p, scheme)
    xin = [c[(i, p)] for i in tm.input_companions]
    expected = Matrix([xin], M.field) * tm.matrix
    return all(c[(l, p)] == expected[0, idx]
               for idx, l in enumerate(tm.output_companions))


def is_permitted(M: ParameterMatrix, c: Coloring,
                 scheme: Optional[SlotScheme] = None) -> bool:
    """True iff c restricts to a permitted coloring of every simplex."""
    scheme = scheme or slot_scheme(M.n)
    return all(is_permitted_at(M, c, p, scheme)
               for p in range(1, 2 * M.n + 2))


def global_basis(M: ParameterMatrix,
                 scheme: Optional[SlotScheme] = None) -> List[Coloring]:
    """Basis of the globally permitted colorings, one per slot.

    Basis element s puts value one on the bottom face of slot s and zero
    on the other bottoms, then acquires its remaining face values by
    propagation: the lhs matrices (odd labels, ascending) fill in the
    lhs-internal and top faces, the rhs matrices (even labels, descending)
    the rhs-internal faces.  The polygon relation guarantees that the top
    values recomputed through the rhs agree.
    """
    scheme = scheme or slot_scheme(M.n)
    n = M.n
    N = scheme.size
    zero, one = M.field.zero, M.field.one
    tms = {p: transition_matrix(M, p, scheme) for p in range(1, 2 * n + 2)}
    basis = []
    for s0 in range(N):
        values: Dict[Face, object] = {}
        start = {}
        for idx, s in enumerate(scheme.slots):
            v = one if idx == s0 else zero
            start[s] = v
            values[scheme.timelines[s]["bottom"]] = v
        for side_labels in (range(1, 2 * n + 2, 2),        # lhs, ascending
                            range(2 * n, 1, -2)):          # rhs, descending
            cur = dict(start)
            for p in side_labels:
                tm = tms[p]
                apps = scheme.applications[p]
                xin = {sa.in_companion: cur[sa.slot] for sa in apps}
                xvec = [xin[i] for i in tm.input_companions]
                out = Matrix([xvec], M.field) * tm.matrix
                for sa in apps:
                    val = out[0, tm.output_companions.index(sa.out_companion)]
                    cur[sa.slot] = val
                    values[_sorted_face(sa.out_companion, p)] = val
        basis.append(Coloring(n=n, values=values))
    return basis


def _sorted_face(a: int, b: int) -> Face:
    return (a, b) if a < b else (b, a)


def all_simplex_vectors(M: ParameterMatrix) -> List[Tuple[Tuple[int, ...], Coloring]]:
    """All (generator, simplex vector) pairs, generators lexicographic."""
    return [(S, simplex_vector(M, S))
            for S in itertools.combinations(range(1, M.labels + 1), M.n - 1)]


def independent_simplex_vectors(M: ParameterMatrix,
                                scheme: Optional[SlotScheme] = None
                                ) -> List[Tuple[Tuple[int, ...], Coloring]]:
    """A deterministic basis of the permitted space made of simplex vectors.

    Greedily keeps the lexicographically first N generators whose colorings
    are linearly independent.  Raises GenericityError if the vectors fail
    to span (which would defeat the rank computations downstream).
    """
    scheme = scheme or slot_scheme(M.n)
    N = scheme.size
    chosen = []
    rows: List[list] = []
    for S, vec in all_simplex_vectors(M):
        cand = rows + [vec.vector()]
        if rank(Matrix(cand, M.field)) == len(cand):
            chosen.append((S, vec))
            rows.append(vec.vector())
        if len(chosen) == N:
            return chosen
    raise GenericityError(
        f"simplex vectors span only {len(chosen)} of {N} dimensions")


def edge_vector_dependence(M: ParameterMatrix, i: int,
                           others: Sequence[int]) -> list:
    """Coefficients of the unique dependence among four concurrent edge
    vectors (heptagon only).

    For pairwise distinct labels i, j, k, l, m the edge vectors e_{ij},
    e_{ik}, e_{il}, e_{im} span a 3-dimensional space; the returned four
    coefficients annihilate them, are unique up to scale, and are
    normalized so the first nonzero one equals one.
    """
    if M.n != 3:
        raise ValueError("edge-vector dependences are a heptagon feature")
    j, k, l, m = others
    if len({i, j, k, l, m}) != 5:
        raise ValueError("labels must be pairwise distinct")
    from .linalg import kernel_basis
    cols = [simplex_vector(M, (i, o)).vector() for o in (j, k, l, m)]
    mat = Matrix(list(zip(*cols)), M.field)
    ker = kernel_basis(mat)
    if len(ker) != 1:
        raise GenericityError(
            f"expected a one-dimensional dependence space, got {len(ker)}")
    return ker[0]
