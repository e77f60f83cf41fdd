"""Construction and exact verification of the odd polygon relations.

A (2n+1)-gon relation (n = 2 pentagon, 3 heptagon, 4 enneagon,
5 hendecagon) is an equality of two products of matrices acting in a direct
sum of N = n(n+1)/2 copies of an exact field.  The matrices are attached to
the 2n+1 simplices of the corresponding Pachner move: the odd-numbered
simplices multiply on the left-hand side (ascending), the even-numbered
ones on the right-hand side (descending).  All matrices act on row vectors
from the right, so the leftmost factor of each product acts first.

Labels and faces
----------------
Simplices and vertices share the labels 1..2n+1; simplex p is the one *not*
containing vertex p, and the codimension-1 face shared by simplices a and b
is the unordered pair {a, b}.  Each simplex p carries 2n faces {i, p}; n of
them are inputs of its transition matrix and n are outputs.

Slots and timelines
-------------------
The N tensor positions ("slots") of the relation are the pairs {p, q} of odd
labels, ordered lexicographically.  A slot carries a sequence of faces as
the products are applied:

    bottom {p, q-1}  ->  {p, q}  ->  [{p+1, q-1} on the rhs, if q > p+2]
                     ->  top {p+1, q}

On the lhs the transitions are effected by the odd matrices p then q; on
the rhs by the even matrices q-1 then p+1 (a single matrix when q = p+2).
Every one of the n(2n+1) faces appears in exactly one timeline position:
(odd,odd) pairs are lhs-internal, (even,even) pairs rhs-internal,
odd-below-even pairs are bottoms and even-below-odd pairs are tops.

All entries of the transition matrices are ratios of 3x3 minors of a generic
3x(2n+1) parameter matrix; the relation then holds identically, which this
module verifies entry by entry in exact arithmetic.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .fields import QQ, Rationals, field_from_name
from .linalg import Matrix

MIN_RANK = 2
MAX_RANK = 5


class GenericityError(ValueError):
    """A parameter matrix failed the all-minors-nonzero requirement."""


def _check_rank(n: int) -> None:
    if not (MIN_RANK <= n <= MAX_RANK):
        raise ValueError(f"polygon rank n={n} outside supported range "
                         f"{MIN_RANK}..{MAX_RANK}")


@dataclass(frozen=True)
class ParameterMatrix:
    """A generic 3 x (2n+1) matrix of field elements, columns labelled 1..2n+1.

    Every triple of pairwise distinct columns must have nonzero determinant;
    :func:`sample_generic_parameters` produces such matrices, and
    :func:`is_generic` re-checks the property for imported ones.
    """

    n: int
    field: object
    entries: Tuple[Tuple[object, ...], ...]  # 3 rows, 2n+1 columns

    def __post_init__(self):
        _check_rank(self.n)
        if len(self.entries) != 3 or any(len(r) != self.labels
                                         for r in self.entries):
            raise ValueError(f"expected a 3x{self.labels} entry grid")

    @property
    def labels(self) -> int:
        return 2 * self.n + 1

    def column(self, i: int) -> Tuple[object, object, object]:
        """Column with label i (1-based)."""
        return (self.entries[0][i - 1], self.entries[1][i - 1],
                self.entries[2][i - 1])

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "field": self.field.name,
            "entries": [[self.field.format(x) for x in row]
                        for row in self.entries],
        })

    @classmethod
    def from_json(cls, text: str) -> "ParameterMatrix":
        data = json.loads(text)
        fld = field_from_name(data["field"])
        entries = tuple(tuple(fld(x) for x in row) for row in data["entries"])
        return cls(n=data["n"], field=fld, entries=entries)


def minor_det(M: ParameterMatrix, i: int, j: int, k: int):
    """Determinant of columns (i, j, k) of M, in the written order.

    Fully antisymmetric in its arguments; repeated labels give exact zero.
    """
    if len({i, j, k}) < 3:
        return M.field.zero
    (a1, b1, c1) = M.column(i)
    (a2, b2, c2) = M.column(j)
    (a3, b3, c3) = M.column(k)
    return (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1)
            + a3 * (b1 * c2 - b2 * c1))


def is_generic(M: ParameterMatrix) -> Tuple[bool, Optional[Tuple[int, int, int]]]:
    """Check that all column-triple minors are nonzero.

    Returns (True, None) or (False, first vanishing triple).
    """
    zero = M.field.zero
    for t in itertools.combinations(range(1, M.labels + 1), 3):
        if minor_det(M, *t) == zero:
            return False, t
    return True, None


def sample_generic_parameters(n: int, fld=QQ, seed: int = 0,
                              bound: int = 10,
                              max_draws: int = 1000) -> ParameterMatrix:
    """Draw a generic parameter matrix from a seeded deterministic generator.

    Rational entries are uniform integers in [-bound, bound]; prime-field
    entries are uniform over the field.  Draws are repeated until all
    minors are nonzero; identical (n, field, seed, bound) give identical
    output.  Raises GenericityError naming a vanishing minor if the budget
    is exhausted (which happens for fields too small to support a generic
    configuration).
    """
    _check_rank(n)
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rng = random.Random(f"{seed}/{n}/{fld.name}/{bound}")
    labels = 2 * n + 1
    last_witness = None
    for _ in range(max_draws):
        if isinstance(fld, Rationals):
            entries = tuple(
                tuple(Fraction(rng.randint(-bound, bound))
                      for _ in range(labels))
                for _ in range(3))
        else:
            entries = tuple(
                tuple(fld(rng.randrange(fld.q)) for _ in range(labels))
                for _ in range(3))
        M = ParameterMatrix(n=n, field=fld, entries=entries)
        ok, witness = is_generic(M)
        if ok:
            return M
        last_witness = witness
    raise GenericityError(
        f"no generic 3x{labels} matrix over {fld.name} found in "
        f"{max_draws} draws; last vanishing minor d_{last_witness}")


# ---------------------------------------------------------------------------
# Slot scheme


@dataclass(frozen=True)
class SlotApplication:
    """One action of a transition matrix on one slot.

    ``in_face`` is the face the slot carries just before the matrix acts
    and ``out_face`` the face it carries right after; both contain the
    matrix label p.
    """

    slot: Tuple[int, int]
    in_companion: int
    out_companion: int


@dataclass(frozen=True)
class SlotScheme:
    """The combinatorial wiring of the (2n+1)-gon relation.

    ``slots`` are the odd-label pairs in lexicographic order.  For each
    simplex label p, ``applications[p]`` lists the slots its matrix acts
    on together with the face companions consumed and produced there.
    """

    n: int
    slots: Tuple[Tuple[int, int], ...]
    timelines: Dict[Tuple[int, int], dict]
    applications: Dict[int, Tuple[SlotApplication, ...]]

    @property
    def size(self) -> int:
        return len(self.slots)

    def slot_index(self, slot: Tuple[int, int]) -> int:
        return self.slots.index(tuple(sorted(slot)))

    def inputs(self, p: int) -> List[int]:
        """Input companions of simplex p, ascending."""
        return sorted(i for i in range(1, 2 * self.n + 2)
                      if (i % 2 == 1 and i < p) or (i % 2 == 0 and i > p))

    def outputs(self, p: int) -> List[int]:
        """Output companions of simplex p, ascending."""
        return sorted(l for l in range(1, 2 * self.n + 2)
                      if (l % 2 == 0 and l < p) or (l % 2 == 1 and l > p))

    def bottom_faces(self) -> List[Tuple[int, int]]:
        """Bottom faces in slot order; the global coordinate system."""
        return [self.timelines[s]["bottom"] for s in self.slots]


def _face(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a < b else (b, a)


def slot_scheme(n: int) -> SlotScheme:
    """Build (and internally cross-check) the slot scheme for rank n."""
    _check_rank(n)
    odd = list(range(1, 2 * n + 2, 2))
    even = list(range(2, 2 * n + 2, 2))
    slots = tuple(itertools.combinations(odd, 2))

    timelines = {}
    for p, q in slots:
        timelines[(p, q)] = {
            "bottom": _face(p, q - 1),
            "lhs_internal": _face(p, q),
            "rhs_internal": _face(p + 1, q - 1) if q > p + 2 else None,
            "top": _face(p + 1, q),
        }

    applications: Dict[int, Tuple[SlotApplication, ...]] = {}
    for p in odd:
        apps = []
        for s in slots:
            if p not in s:
                continue
            a, b = s
            if p == a:            # first lhs matrix on this slot
                apps.append(SlotApplication(s, b - 1, b))
            else:                 # second lhs matrix on this slot
                apps.append(SlotApplication(s, a, a + 1))
        applications[p] = tuple(apps)
    for p in even:
        apps = []
        for s in slots:
            a, b = s
            if b == p + 1:        # first rhs matrix on this slot
                apps.append(SlotApplication(s, a, a + 1 if b > a + 2 else b))
            elif a == p - 1:      # second rhs matrix on this slot
                apps.append(SlotApplication(s, b - 1, b))
        applications[p] = tuple(apps)

    scheme = SlotScheme(n=n, slots=slots, timelines=timelines,
                        applications=applications)

    # Sanity: the timelines partition the full face set.
    seen = []
    for tl in timelines.values():
        seen.extend(f for f in tl.values() if f is not None)
    all_faces = list(itertools.combinations(range(1, 2 * n + 2), 2))
    assert sorted(seen) == all_faces, "timelines do not partition the faces"
    # Sanity: each matrix consumes exactly its input companions and
    # produces exactly its output companions.
    for p in odd + even:
        apps = applications[p]
        assert sorted(a.in_companion for a in apps) == scheme.inputs(p)
        assert sorted(a.out_companion for a in apps) == scheme.outputs(p)
    return scheme


# ---------------------------------------------------------------------------
# Transition matrices and the relation


@dataclass(frozen=True)
class TransitionMatrix:
    """The n x n matrix attached to simplex p.

    Rows are indexed by the input faces {i, p} (input companions i
    ascending), columns by the output faces {l, p} (output companions l
    ascending).
    """

    p: int
    input_companions: Tuple[int, ...]
    output_companions: Tuple[int, ...]
    matrix: Matrix

    def entry(self, i: int, l: int):
        """Entry for input face {i, p} and output face {l, p}."""
        return self.matrix[self.input_companions.index(i),
                           self.output_companions.index(l)]


def transition_matrix(M: ParameterMatrix, p: int,
                      scheme: Optional[SlotScheme] = None) -> TransitionMatrix:
    """Build the transition matrix of simplex p from the parameter minors.

    The entry for input face {i,p} and output face {l,p} is the product
    over the other input companions j of d(j,l,p) / d(i,j,p), each minor
    taken in the written argument order.  A vanishing denominator (only
    possible for non-generic parameters) raises GenericityError.
    """
    scheme = scheme or slot_scheme(M.n)
    ins = scheme.inputs(p)
    outs = scheme.outputs(p)
    zero = M.field.zero
    rows = []
    for i in ins:
        row = []
        for l in outs:
            val = M.field.one
            for j in ins:
                if j == i:
                    continue
                den = minor_det(M, i, j, p)
                if den == zero:
                    raise GenericityError(
                        f"vanishing minor d_({i},{j},{p}) while building "
                        f"the transition matrix of simplex {p}")
                val = val * minor_det(M, j, l, p) / den
            row.append(val)
        rows.append(row)
    return TransitionMatrix(p=p, input_companions=tuple(ins),
                            output_companions=tuple(outs),
                            matrix=Matrix(rows, M.field))


def embedded_matrix(M: ParameterMatrix, p: int, scheme: SlotScheme,
                    tamper: Optional[Tuple[int, int, int]] = None) -> Matrix:
    """Embed the transition matrix of simplex p into the N x N slot space.

    The embedded matrix acts as the identity away from the slots of p; on
    them, entry (slot s -> slot t) is the transition entry from the face
    slot s carries when p acts to the face slot t carries afterwards.
    ``tamper`` = (row, col, delta) adds delta to one entry of the n x n
    matrix before embedding, for negative controls.
    """
    tm = transition_matrix(M, p, scheme)
    A = [list(row) for row in tm.matrix.entries]
    if tamper is not None:
        r, c, delta = tamper
        A[r][c] = A[r][c] + M.field(delta)
    N = scheme.size
    one, zero = M.field.one, M.field.zero
    E = [[one if r == c else zero for c in range(N)] for r in range(N)]
    apps = scheme.applications[p]
    for sa in apps:
        r = scheme.slot_index(sa.slot)
        for ta in apps:
            c = scheme.slot_index(ta.slot)
            E[r][c] = A[tm.input_companions.index(sa.in_companion)][
                tm.output_companions.index(ta.out_companion)]
    return Matrix(E, M.field)


def side_product(M: ParameterMatrix, scheme: SlotScheme, side: str,
                 tamper: Optional[Tuple[int, int, int, int]] = None) -> Matrix:
    """The full N x N product of one side of the relation.

    ``side`` is "lhs" (odd labels ascending) or "rhs" (even labels
    descending); the leftmost factor acts first on row vectors.
    """
    if side == "lhs":
        ps = list(range(1, 2 * M.n + 2, 2))
    elif side == "rhs":
        ps = list(range(2 * M.n, 1, -2))
    else:
        raise ValueError(f"side must be 'lhs' or 'rhs', not {side!r}")
    prod = None
    for p in ps:
        t = None
        if tamper is not None and tamper[0] == p:
            t = tamper[1:]
        E = embedded_matrix(M, p, scheme, tamper=t)
        prod = E if prod is None else prod * E
    return prod


@dataclass(frozen=True)
class RelationVerdict:
    """Outcome of a polygon relation check; witness is the first differing
    entry (row, col, lhs value, rhs value) when the relation fails."""

    holds: bool
    witness: Optional[Tuple[int, int, object, object]] = None

    def __bool__(self):
        return self.holds


def verify_polygon_relation(M: ParameterMatrix,
                            scheme: Optional[SlotScheme] = None,
                            tamper: Optional[Tuple[int, int, int, int]] = None
                            ) -> RelationVerdict:
    """Exact entrywise comparison of the two sides of the relation.

    ``tamper`` = (p, row, col, delta) perturbs one entry of the matrix of
    simplex p before embedding, turning the identity false; used as a
    negative control.
    """
    scheme = scheme or slot_scheme(M.n)
    lhs = side_product(M, scheme, "lhs", tamper=tamper)
    rhs = side_product(M, scheme, "rhs", tamper=tamper)
    if lhs == rhs:
        return RelationVerdict(holds=True)
    for r in range(lhs.rows):
        for c in range(lhs.cols):
            if lhs[r, c] != rhs[r, c]:
                return RelationVerdict(
                    holds=False, witness=(r, c, lhs[r, c], rhs[r, c]))
    raise AssertionError("unreachable: matrices differ but no entry does")
