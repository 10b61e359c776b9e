"""Structural classification of ternary matrices.

Detects the four full shapes, factors rank-one matrices into signed
permutations around an all-ones core, finds block-diagonal (well-settled)
structure, and places matrices in the Class I / II / III hierarchy of
sums of disjoint rank-one terms.  All constructions are deterministic:
ties are broken by lowest original index, and sign ambiguity is resolved
by forcing the first nonzero entry of each representative vector to +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .matrices import (
    DomainError,
    IntMatrix,
    SignedPermutation,
    TernaryMatrix,
    exact_rank,
)

TYPE_I = "TypeI"
TYPE_II = "TypeII"
TYPE_III = "TypeIII"
TYPE_IV = "TypeIV"

STRUCTURES = ("S1", "S2", "S3", "S4")


@dataclass(frozen=True)
class FullForm:
    """One of the four full shapes: a +-1 block, then an optional opposite
    block, then an optional zero block, in that fixed column order."""

    kind: str
    sign: int
    widths: tuple[int, int, int]

    def __post_init__(self):
        if self.kind not in (TYPE_I, TYPE_II, TYPE_III, TYPE_IV):
            raise DomainError(f"unknown full kind {self.kind!r}")
        if self.sign not in (-1, 1):
            raise DomainError(f"sign must be +-1, got {self.sign}")
        n1, n2, n3 = self.widths
        ok = {
            TYPE_I: n1 >= 1 and n2 == 0 and n3 == 0,
            TYPE_II: n1 >= 1 and n2 >= 1 and n3 == 0,
            TYPE_III: n1 >= 1 and n2 == 0 and n3 >= 1,
            TYPE_IV: n1 >= 1 and n2 >= 1 and n3 >= 1,
        }[self.kind]
        if not ok:
            raise DomainError(f"widths {self.widths} do not fit {self.kind}")

    @property
    def total_width(self) -> int:
        return sum(self.widths)

    def materialize(self, m: int) -> TernaryMatrix:
        n1, n2, n3 = self.widths
        row = (self.sign,) * n1 + (-self.sign,) * n2 + (0,) * n3
        return TernaryMatrix.from_rows([row] * m)

    def to_json(self) -> dict:
        return {"kind": self.kind, "sign": self.sign, "widths": list(self.widths)}


def full_form(a: TernaryMatrix) -> Optional[FullForm]:
    """Detect a full shape in literal column order; None if it is not one."""
    rows = a.row_tuples()
    first = rows[0]
    if any(r != first for r in rows[1:]):
        return None
    sign = first[0]
    if sign == 0:
        return None
    n = a.cols
    n1 = 0
    while n1 < n and first[n1] == sign:
        n1 += 1
    n2 = 0
    while n1 + n2 < n and first[n1 + n2] == -sign:
        n2 += 1
    n3 = 0
    while n1 + n2 + n3 < n and first[n1 + n2 + n3] == 0:
        n3 += 1
    if n1 + n2 + n3 != n:
        return None
    kind = {
        (False, False): TYPE_I,
        (True, False): TYPE_II,
        (False, True): TYPE_III,
        (True, True): TYPE_IV,
    }[(n2 > 0, n3 > 0)]
    return FullForm(kind, sign, (n1, n2, n3))


def _row_classes(rows):
    """Group nonzero rows into +- equality classes.

    Returns (classes, zero_rows) where classes is a list of
    (representative, [(row_index, sign), ...]) in first-appearance order and
    each representative has its first nonzero entry equal to +1.
    """
    classes: list[tuple[tuple[int, ...], list[tuple[int, int]]]] = []
    zero_rows: list[int] = []
    for i, r in enumerate(rows):
        lead = next((e for e in r if e), 0)
        if lead == 0:
            zero_rows.append(i)
            continue
        if lead > 0:
            rep, sign = r, 1
        else:
            rep, sign = tuple(-e for e in r), -1
        for existing, members in classes:
            if existing == rep:
                members.append((i, sign))
                break
        else:
            classes.append((rep, [(i, sign)]))
    return classes, zero_rows


@dataclass(frozen=True)
class RankOneFactorization:
    """Signed-permutation factorization of a rank-one ternary matrix.

    The factors satisfy P1 @ D1 @ core @ D2 @ P2 = A, where ``p1[t]`` is the
    row of A receiving core row t (scaled by ``d1[t]``) and ``p2[t]`` is the
    column of A receiving core column t (scaled by ``d2[t]``).  The core is
    an all-ones block, padded right by zero columns and below by zero rows.
    """

    p1: tuple[int, ...]
    d1: tuple[int, ...]
    core: TernaryMatrix
    d2: tuple[int, ...]
    p2: tuple[int, ...]
    core_form: FullForm
    zero_row_count: int

    def u_factor(self) -> SignedPermutation:
        """P1 @ D1 as a single signed permutation."""
        return SignedPermutation(self.p1, self.d1)

    def v_factor(self) -> SignedPermutation:
        """D2 @ P2 as a single signed permutation."""
        k = len(self.p2)
        perm = [0] * k
        signs = [1] * k
        for t, (c, s) in enumerate(zip(self.p2, self.d2)):
            perm[c] = t
            signs[c] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def reassemble(self) -> TernaryMatrix:
        m, n = len(self.p1), len(self.p2)
        ent = [[0] * n for _ in range(m)]
        core_rows = self.core.row_tuples()
        for t, row in enumerate(core_rows):
            target = ent[self.p1[t]]
            rs = self.d1[t]
            for c, val in enumerate(row):
                target[self.p2[c]] = rs * self.d2[c] * val
        return TernaryMatrix.from_rows(ent)

    def to_json(self) -> dict:
        return {
            "p1": list(self.p1),
            "d1": list(self.d1),
            "core": self.core.to_lists(),
            "d2": list(self.d2),
            "p2": list(self.p2),
            "core_form": self.core_form.to_json(),
            "zero_row_count": self.zero_row_count,
        }


def rank_one_factorize(a: TernaryMatrix) -> RankOneFactorization:
    """Factor a rank-one ternary matrix as P1 @ D1 @ core @ D2 @ P2.

    Deterministic tie-breaking: the first nonzero row is the sign reference,
    zero rows sink to the bottom preserving order, support columns come
    first preserving order, and D2 makes the core's nonzero block all +1.
    """
    if exact_rank(a) != 1:
        raise DomainError("rank-one factorization requires a rank-1 matrix")
    rows = a.row_tuples()
    classes, zero_rows = _row_classes(rows)
    rep, members = classes[0]

    p1 = tuple(i for i, _ in members) + tuple(zero_rows)
    d1 = tuple(s for _, s in members) + (1,) * len(zero_rows)

    support = [j for j, e in enumerate(rep) if e]
    zero_cols = [j for j, e in enumerate(rep) if not e]
    p2 = tuple(support + zero_cols)
    d2 = tuple(rep[j] for j in support) + (1,) * len(zero_cols)

    m, n = a.rows, a.cols
    k = len(zero_rows)
    s = len(support)
    core_row = (1,) * s + (0,) * (n - s)
    core = TernaryMatrix.from_rows([core_row] * (m - k) + [(0,) * n] * k)
    if n == s:
        form = FullForm(TYPE_I, 1, (s, 0, 0))
    else:
        form = FullForm(TYPE_III, 1, (s, 0, n - s))
    return RankOneFactorization(p1, d1, core, d2, p2, form, k)


@dataclass(frozen=True)
class GwsBlock:
    row_span: tuple[int, int]
    col_span: tuple[int, int]
    matrix: TernaryMatrix

    def to_json(self) -> dict:
        return {
            "row_span": list(self.row_span),
            "col_span": list(self.col_span),
            "matrix": self.matrix.to_lists(),
        }


@dataclass(frozen=True)
class GwsDecomposition:
    """Permutations carrying A to block-diagonal form with rank-one blocks.

    ``row_perm[i]`` is the original row appearing at position i after the
    permutation (likewise for columns).  Zero rows and columns occupy a
    dedicated trailing block after the listed rank-one blocks.
    """

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    blocks: tuple[GwsBlock, ...]

    def permuted(self, a: TernaryMatrix) -> TernaryMatrix:
        rows = a.row_tuples()
        return TernaryMatrix.from_rows(
            tuple(rows[r][c] for c in self.col_perm) for r in self.row_perm
        )

    def to_json(self) -> dict:
        return {
            "row_perm": list(self.row_perm),
            "col_perm": list(self.col_perm),
            "blocks": [b.to_json() for b in self.blocks],
        }


def _support_components(a: TernaryMatrix):
    """Connected components of the bipartite row/column support graph.

    Returns (components, zero_rows, zero_cols); each component is a pair of
    sorted row and column index lists, ordered by smallest row index.
    """
    rows = a.row_tuples()
    m, n = a.rows, a.cols
    parent = list(range(m + n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for i in range(m):
        for j in range(n):
            if rows[i][j]:
                union(i, m + j)

    groups: dict[int, tuple[list[int], list[int]]] = {}
    for i in range(m):
        if any(rows[i]):
            groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(n):
        if any(rows[i][j] for i in range(m)):
            groups.setdefault(find(m + j), ([], []))[1].append(j)

    components = sorted(groups.values(), key=lambda g: g[0][0])
    zero_rows = [i for i in range(m) if not any(rows[i])]
    zero_cols = [j for j in range(n) if not any(rows[i][j] for i in range(m))]
    return components, zero_rows, zero_cols


def gws_detect(a: TernaryMatrix) -> Optional[GwsDecomposition]:
    """Block-diagonal form with rank-one blocks, or None.

    Succeeds exactly when every connected component of the support graph
    induces a rank-one submatrix; zero rows and columns are parked in a
    trailing zero block.
    """
    components, zero_rows, zero_cols = _support_components(a)
    rows = a.row_tuples()
    row_perm: list[int] = []
    col_perm: list[int] = []
    blocks: list[GwsBlock] = []
    for comp_rows, comp_cols in components:
        sub = TernaryMatrix.from_rows(
            tuple(rows[r][c] for c in comp_cols) for r in comp_rows
        )
        if exact_rank(sub) > 1:
            return None
        blocks.append(
            GwsBlock(
                (len(row_perm), len(row_perm) + len(comp_rows)),
                (len(col_perm), len(col_perm) + len(comp_cols)),
                sub,
            )
        )
        row_perm.extend(comp_rows)
        col_perm.extend(comp_cols)
    row_perm.extend(zero_rows)
    col_perm.extend(zero_cols)
    return GwsDecomposition(tuple(row_perm), tuple(col_perm), tuple(blocks))


def _ws_from_decomposition(a: TernaryMatrix, dec: Optional[GwsDecomposition]) -> bool:
    if dec is None:
        return False
    total_block_rows = sum(b.row_span[1] - b.row_span[0] for b in dec.blocks)
    if total_block_rows != a.rows:
        return False
    for b in dec.blocks:
        rs = b.matrix.row_tuples()
        if any(r != rs[0] for r in rs[1:]):
            return False
    return True


def ws_detect(a: TernaryMatrix) -> bool:
    """True when A is permutation-equivalent to a block diagonal of full blocks.

    Needs every rank-one block to have literally identical rows (signs are
    not available under plain permutations) and no zero rows; zero columns
    can always be absorbed as a block's trailing zero columns.
    """
    return _ws_from_decomposition(a, gws_detect(a))


@dataclass(frozen=True)
class ClassReport:
    """Rank, structural flags, and the rank-one terms witnessing Class II.

    ``terms`` holds pairs (u_i, v_i) of ternary columns with disjointly
    supported u_i and sum of outer products equal to A; it is empty when the
    row-wise grouping fails.  ``is_class_II_columnwise`` reports the same
    test on the transpose.
    """

    rank: int
    full_form: Optional[FullForm]
    is_rank_one: bool
    is_well_settled: bool
    is_generalized_well_settled: bool
    is_class_I: bool
    is_class_II: bool
    is_class_III: bool
    is_class_II_columnwise: bool
    terms: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    s_structure: Optional[str]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "full_form": self.full_form.to_json() if self.full_form else None,
            "is_rank_one": self.is_rank_one,
            "is_well_settled": self.is_well_settled,
            "is_generalized_well_settled": self.is_generalized_well_settled,
            "is_class_I": self.is_class_I,
            "is_class_II": self.is_class_II,
            "is_class_III": self.is_class_III,
            "is_class_II_columnwise": self.is_class_II_columnwise,
            "terms": [[list(u), list(v)] for u, v in self.terms],
            "s_structure": self.s_structure,
        }


def _class_terms(a: TernaryMatrix, rank: int):
    """Row-wise Class II witness terms, or None when the grouping fails."""
    classes, _ = _row_classes(a.row_tuples())
    if len(classes) != rank:
        return None
    terms = []
    for rep, members in classes:
        u = [0] * a.rows
        for idx, sign in members:
            u[idx] = sign
        terms.append((tuple(u), rep))
    return tuple(terms)


def _structure_from_reps(reps: Sequence[tuple[int, ...]]) -> Optional[str]:
    """Canonical rank-two layout of a pair of orthogonal representatives."""
    v1, v2 = reps
    both_zero = a_only = b_only = agree = disagree = 0
    for x, y in zip(v1, v2):
        if x == 0 and y == 0:
            both_zero += 1
        elif y == 0:
            a_only += 1
        elif x == 0:
            b_only += 1
        elif x == y:
            agree += 1
        else:
            disagree += 1
    if both_zero:
        return None
    if agree or disagree:
        if a_only == 0 and b_only == 0:
            return "S1"
        if a_only and b_only:
            return "S3"
        return "S2"
    return "S4"


def class_membership(a: TernaryMatrix) -> ClassReport:
    """Detect the full shape, settledness, and Class I/II/III membership.

    A is Class II row-wise when its nonzero rows group into exactly rank(A)
    classes of +- equal rows; Class III additionally needs orthogonal class
    representatives, Class I disjointly supported ones.  The column-wise
    reading is reported as a separate flag.
    """
    rank = exact_rank(a)
    terms = _class_terms(a, rank)
    col_terms = _class_terms(a.transpose(), rank)
    is_class_ii = terms is not None
    is_class_iii = False
    is_class_i = False
    s_structure = None
    if is_class_ii:
        reps = [v for _, v in terms]
        is_class_iii = all(
            sum(x * y for x, y in zip(reps[i], reps[j])) == 0
            for i in range(len(reps))
            for j in range(i + 1, len(reps))
        )
        is_class_i = all(
            all(x == 0 or y == 0 for x, y in zip(reps[i], reps[j]))
            for i in range(len(reps))
            for j in range(i + 1, len(reps))
        )
        if is_class_iii and rank == 2:
            s_structure = _structure_from_reps(reps)
    dec = gws_detect(a)
    return ClassReport(
        rank=rank,
        full_form=full_form(a),
        is_rank_one=rank == 1,
        is_well_settled=_ws_from_decomposition(a, dec),
        is_generalized_well_settled=dec is not None,
        is_class_I=is_class_i,
        is_class_II=is_class_ii,
        is_class_III=is_class_iii,
        is_class_II_columnwise=col_terms is not None,
        terms=terms if terms is not None else (),
        s_structure=s_structure,
    )


def rank2_class3_structure(a: TernaryMatrix) -> Optional[str]:
    """Which of the four canonical rank-two layouts A matches, signs and
    permutations removed; None when the rank is not 2 or a fully zero
    column falls outside every canonical layout."""
    report = class_membership(a)
    if not report.is_class_III:
        raise DomainError("structure detection requires a Class III matrix")
    if report.rank != 2:
        return None
    return _structure_from_reps([v for _, v in report.terms])


@dataclass(frozen=True)
class UwDecomposition:
    """A = U @ W with U a signed permutation and W made of constant-row
    blocks; ``row_block_sizes`` lists the block heights in W, last one the
    zero block when A has zero rows."""

    u: SignedPermutation
    w: TernaryMatrix
    row_block_sizes: tuple[int, ...]

    def reassemble(self) -> IntMatrix:
        return self.u.apply_left(self.w)

    def to_json(self) -> dict:
        return {
            "u": self.u.to_json(),
            "w": self.w.to_lists(),
            "row_block_sizes": list(self.row_block_sizes),
        }


def uw_decompose(a: TernaryMatrix) -> UwDecomposition:
    """Split a row-wise Class II matrix as a signed permutation times a
    stack of constant-row blocks, zero rows parked in a trailing block."""
    rank = exact_rank(a)
    terms = _class_terms(a, rank)
    if terms is None:
        raise DomainError("UW decomposition requires a row-wise Class II matrix")
    classes, zero_rows = _row_classes(a.row_tuples())
    w_rows: list[tuple[int, ...]] = []
    perm: list[int] = []
    signs: list[int] = []
    sizes: list[int] = []
    for rep, members in classes:
        sizes.append(len(members))
        for idx, sign in members:
            perm.append(idx)
            signs.append(sign)
            w_rows.append(rep)
    if zero_rows:
        sizes.append(len(zero_rows))
        for idx in zero_rows:
            perm.append(idx)
            signs.append(1)
            w_rows.append((0,) * a.cols)
    u = SignedPermutation(tuple(perm), tuple(signs))
    return UwDecomposition(u, TernaryMatrix.from_rows(w_rows), tuple(sizes))
