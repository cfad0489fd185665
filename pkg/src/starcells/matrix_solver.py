"""Exact-integer classification of total action matrices and their splittings.

The search space: non-negative integer matrices M with M^2 = (n+2) M that
are irreducible.  Every such M is strictly positive of rank one with trace
n + 2, so the enumeration runs over primitive rank-one factorisations.
Splitting M into n + 1 summands is an exhaustive backtracking search over
row assignments, pruned by the constraint tiers:

  C1  pairwise products M_i M_j = a_j M_i with a_0 = 2 and a_j = 1 otherwise;
  C2  diagonal budget: the 0th summand carries a single diagonal 2, every
      other summand a single diagonal 1, all remaining diagonal entries 0;
  C3  no summand has a zero column;
  C4  (projective-functor tier only) each later summand carries a 2 in the
      column of the 0th summand's diagonal 2.

A non-negative matrix with a single nonzero diagonal entry a, no zero
column and square equal to a times itself is exactly a matrix with one
strictly positive row whose diagonal entry is a; the backtracking therefore
assigns rows first and splits shared rows afterwards, which is equivalent
to the raw entrywise search but far smaller.

Counting is up to simultaneous row and column permutation.  All arithmetic
is exact; nothing here uses floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg

Matrix = tuple[tuple[int, ...], ...]


class ConstraintTier(str, Enum):
    COMBINATORIAL = "combinatorial"
    PROJECTIVE_FUNCTOR = "projective-functor"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


# -- small exact matrix helpers -------------------------------------------


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(r) == k for r in a), "shape mismatch"
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_trace(a) -> int:
    return sum(a[i][i] for i in range(len(a)))


def mat_transpose(a):
    return tuple(zip(*a))


def mat_flat(a) -> tuple:
    return tuple(x for row in a for x in row)


def mat_sum(mats: Sequence[Matrix]) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = mat_add(out, m)
    return out


def matrix_rank(a) -> int:
    return linalg.rank([[Fraction(x) for x in row] for row in a])


def is_irreducible(a) -> bool:
    """Strong connectivity of the digraph of positive entries."""
    r = len(a)
    for start in range(r):
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if a[i][j] > 0 and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != r:
            return False
    return True


def permute_matrix(a, perm: Sequence[int]):
    """Simultaneous row/column reordering; ``perm[new] = old``."""
    return tuple(tuple(a[pi][pj] for pj in perm) for pi in perm)


def canonical_matrix(a: Matrix) -> Matrix:
    """Lexicographically greatest representative under simultaneous permutation."""
    r = len(a)
    best = None
    for perm in itertools.permutations(range(r)):
        cand = permute_matrix(a, perm)
        if best is None or mat_flat(cand) > mat_flat(best):
            best = cand
    return best


def is_quasi_idempotent(m) -> Optional[Fraction]:
    """The scalar in M^2 = scalar * M, if one exists; None when nilpotent."""
    r = len(m)
    if any(len(row) != r for row in m):
        raise ValueError("matrix must be square")
    if not any(x for row in m for x in row):
        raise ValueError("zero matrix is degenerate, not quasi-idempotent")
    m2 = mat_mul(m, m)
    if not any(x for row in m2 for x in row):
        return None
    i, j = next((i, j) for i in range(r) for j in range(r) if m[i][j])
    lam = Fraction(m2[i][j], m[i][j])
    expect = tuple(tuple(lam * x for x in row) for row in m)
    if tuple(tuple(Fraction(x) for x in row) for row in m2) != expect:
        return None
    return lam


# -- Flor normal form ------------------------------------------------------


def _frac_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _frac_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


@dataclass(frozen=True)
class FlorForm:
    """Block decomposition of a non-negative idempotent matrix.

    ``permutation[new] = original index``; the reordered matrix is

        [[0, A J, A J B],
         [0,   J,   J B],
         [0,   0,     0]]

    with J the block diagonal of the rank-one idempotent core blocks.  The
    stored A and B are read off the original matrix (so A equals the
    classical A times J, which reassembles identically).
    """

    size: int
    permutation: tuple[int, ...]
    j_blocks: tuple[tuple[tuple[Fraction, ...], ...], ...]
    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Fraction, ...], ...]

    @property
    def core_rank(self) -> int:
        return len(self.j_blocks)

    def j_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        dims = [len(b) for b in self.j_blocks]
        c = sum(dims)
        out = [[Fraction(0)] * c for _ in range(c)]
        at = 0
        for blk in self.j_blocks:
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    out[at + i][at + j] = x
            at += len(blk)
        return tuple(tuple(r) for r in out)

    def reassemble(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.size
        t = len(self.A)
        j = self.j_matrix()
        c = len(j)
        z = n - t - c
        blocks = [[Fraction(0)] * n for _ in range(n)]
        aj = self.A            # already equals (classical A) @ J
        ajb = _frac_mul(self.A, self.B) if t and z else ()
        jb = self.B            # already equals J @ (classical B)
        for i in range(t):
            for k in range(c):
                blocks[i][t + k] = aj[i][k]
            for k in range(z):
                blocks[i][t + c + k] = ajb[i][k] if ajb else Fraction(0)
        for i in range(c):
            for k in range(c):
                blocks[t + i][t + k] = j[i][k]
            for k in range(z):
                blocks[t + i][t + c + k] = jb[i][k]
        out = [[Fraction(0)] * n for _ in range(n)]
        for new_i, old_i in enumerate(self.permutation):
            for new_j, old_j in enumerate(self.permutation):
                out[old_i][old_j] = blocks[new_i][new_j]
        return tuple(tuple(r) for r in out)


def flor_normal_form(m) -> FlorForm:
    """Decompose a non-negative rational idempotent matrix.

    Core indices are those with a positive diagonal entry, grouped into
    rank-one blocks by mutual positivity; the off-core rows and columns are
    read off exactly.  Non-idempotent input is rejected with the first
    witness entry of M^2 - M.
    """
    m = _frac_matrix(m)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if any(x < 0 for row in m for x in row):
        raise ValueError("matrix must be non-negative")
    m2 = _frac_mul(m, m)
    for i in range(n):
        for j in range(n):
            if m2[i][j] != m[i][j]:
                raise ValueError(
                    f"matrix is not idempotent: (M*M - M)[{i}][{j}] = {m2[i][j] - m[i][j]}"
                )
    core = [i for i in range(n) if m[i][i] > 0]
    col_zero = {j for j in range(n) if all(m[i][j] == 0 for i in range(n))}
    row_zero = {i for i in range(n) if all(x == 0 for x in m[i])}
    top = [i for i in range(n) if i not in core and i not in row_zero]
    bottom = [i for i in range(n) if i not in core and i in row_zero]
    if any(i not in col_zero for i in top):
        raise ValueError("off-core index with both a nonzero row and a nonzero column")
    # group the core by mutual positivity
    blocks: list[list[int]] = []
    for i in core:
        for blk in blocks:
            if m[i][blk[0]] > 0 and m[blk[0]][i] > 0:
                blk.append(i)
                break
        else:
            blocks.append([i])
    core_order = [i for blk in blocks for i in blk]
    for bi, blk in enumerate(blocks):
        for bj, other in enumerate(blocks):
            if bi != bj and any(m[i][j] != 0 for i in blk for j in other):
                raise ValueError("core does not split into diagonal blocks")
    j_blocks = []
    for blk in blocks:
        sub = tuple(tuple(m[i][j] for j in blk) for i in blk)
        if linalg.rank(sub) != 1:
            raise ValueError("core block is not of rank one")
        j_blocks.append(sub)
    a = tuple(tuple(m[i][j] for j in core_order) for i in top)
    b = tuple(tuple(m[i][j] for j in bottom) for i in core_order)
    form = FlorForm(
        size=n,
        permutation=tuple(top + core_order + bottom),
        j_blocks=tuple(j_blocks),
        A=a,
        B=b,
    )
    if form.reassemble() != m:
        raise ValueError("decomposition failed to reassemble; input is not in range")
    return form


# -- enumeration of total matrices ----------------------------------------


def _positive_vectors(length: int, total_bound: int):
    """Positive integer vectors of the given length with entry sum <= bound."""
    if length == 0:
        yield ()
        return
    for first in range(1, total_bound - length + 2):
        for rest in _positive_vectors(length - 1, total_bound - first):
            yield (first,) + rest


def _weight_solutions(v: Sequence[int], target: int):
    """Positive integer w with sum(v[i] * w[i]) == target."""
    if not v:
        if target == 0:
            yield ()
        return
    head, tail = v[0], v[1:]
    min_tail = sum(tail)
    w0 = 1
    while head * w0 + min_tail <= target:
        for rest in _weight_solutions(tail, target - head * w0):
            yield (w0,) + rest
        w0 += 1


def enumerate_total_matrices(n: int, r_max: Optional[int] = None) -> list[Matrix]:
    """All irreducible non-negative integer M with M^2 = (n+2) M.

    Such matrices are strictly positive of rank one with trace n + 2, hence
    products v w^T with positive v, w and w . v = n + 2; the size is capped
    by the trace.  Output is canonical under simultaneous permutation.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    t = n + 2
    if r_max is None:
        r_max = t
    found: set[Matrix] = set()
    for r in range(1, min(r_max, t) + 1):
        for v in _positive_vectors(r, t):
            if math.gcd(*v) != 1:
                continue
            for w in _weight_solutions(v, t):
                m = tuple(tuple(vi * wj for wj in w) for vi in v)
                found.add(canonical_matrix(m))
    return sorted(found, key=lambda m: (len(m), tuple(-x for x in mat_flat(m))))


# -- decomposition into summands -------------------------------------------


@dataclass(frozen=True)
class SolutionFamily:
    """A splitting M = M_0 + ... + M_n together with the row assignment.

    ``matrices`` lists the summands in generator order; ``phi[i - 1]`` is
    the 1-based row carrying the ith summand.  Families produced by the
    solver are canonical: the 0th summand's row is first and the ordering
    maximises the flattened tuple (total, M_0, ..., M_n).
    """

    n: int
    r: int
    matrices: tuple[Matrix, ...]
    phi: tuple[int, ...]
    canonical: bool = True

    @property
    def total(self) -> Matrix:
        return mat_sum(self.matrices)

    def phi_map(self) -> dict[int, int]:
        return {i + 1: row for i, row in enumerate(self.phi)}

    def validate(self, side: Side = Side.LEFT) -> None:
        m = self.total
        lam = is_quasi_idempotent(m)
        if lam != self.n + 2:
            raise ValueError("total matrix is not quasi-idempotent with the right scalar")
        coeff = [2] + [1] * self.n
        for i, a in enumerate(self.matrices):
            for j, b in enumerate(self.matrices):
                if side == Side.LEFT:
                    expected = mat_scale(coeff[j], a)
                else:
                    expected = mat_scale(coeff[i], b)
                if mat_mul(a, b) != expected:
                    raise ValueError(f"product constraint fails at pair ({i}, {j})")

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "M": [list(row) for row in self.total],
            "M_i": [[list(row) for row in m] for m in self.matrices],
            "phi": {str(i): row for i, row in self.phi_map().items()},
        }

    @classmethod
    def from_json(cls, n: int, doc: dict) -> "SolutionFamily":
        mats = tuple(mat(m) for m in doc["M_i"])
        phi = tuple(doc["phi"][str(i)] for i in range(1, n + 1))
        fam = cls(n=n, r=doc["r"], matrices=mats, phi=phi)
        if [list(row) for row in fam.total] != doc["M"]:
            raise ValueError("family does not reassemble to the stored total matrix")
        return fam


def _single_nonzero_row(m: Matrix) -> int:
    rows = [i for i, row in enumerate(m) if any(row)]
    if len(rows) != 1:
        raise ValueError("summand does not have a single nonzero row")
    return rows[0]


def canonicalize_family(mats: Sequence[Matrix]) -> tuple[Matrix, ...]:
    """Canonical representative of a family under simultaneous permutation.

    The 0th summand's row is pinned to position 0; among those orderings the
    flattened tuple (total, M_0, ..., M_n) is maximised.  Pinning keeps the
    leading summand in block-triangular shape, which is the form the
    left-hand classification is stated in.
    """
    mats = tuple(mat(m) for m in mats)
    total = mat_sum(mats)
    d0 = _single_nonzero_row(mats[0])
    others = [k for k in range(len(total)) if k != d0]
    best = None
    best_key = None
    for rest in itertools.permutations(others):
        perm = (d0,) + rest
        cand = tuple(permute_matrix(m, perm) for m in mats)
        key = mat_flat(permute_matrix(total, perm)) + tuple(
            x for m in cand for x in mat_flat(m)
        )
        if best_key is None or key > best_key:
            best_key = key
            best = cand
    return best


def _compositions_positive(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions_positive(total - first, parts - 1):
            yield (first,) + rest


def _row_assignments(n: int, counts: Sequence[int]):
    """All maps {1..n} -> rows with the prescribed fibre sizes."""
    slots = [k for k, c in enumerate(counts) for _ in range(c)]
    return set(itertools.permutations(slots))


def _validate_total(m: Matrix, n: int) -> None:
    r = len(m)
    if any(len(row) != r for row in m):
        raise ValueError("matrix must be square")
    if any(x <= 0 for row in m for x in row):
        raise ValueError("total matrix must be strictly positive")
    if mat_mul(m, m) != mat_scale(n + 2, m):
        raise ValueError("total matrix must satisfy M^2 = (n+2) M")


def decompose(m, n: int, tier: ConstraintTier = ConstraintTier.PROJECTIVE_FUNCTOR) -> list[SolutionFamily]:
    """All splittings of a total matrix into n + 1 summands at the given tier.

    Exhaustive over the constraint set: a summand with a single diagonal
    entry a, no zero column and square a times itself is exactly a single
    strictly positive row with diagonal entry a, so the search assigns rows,
    splits shared rows entrywise, and then checks every pairwise product.
    The empty list is a legitimate outcome.
    """
    m = mat(m)
    tier = ConstraintTier(tier)
    _validate_total(m, n)
    r = len(m)
    diag = [m[k][k] for k in range(r)]
    found: dict[tuple[Matrix, ...], SolutionFamily] = {}
    for d0 in range(r):
        if diag[d0] < 2:
            continue
        counts = [diag[k] - (2 if k == d0 else 0) for k in range(r)]
        if any(c < 0 for c in counts) or sum(counts) != n:
            continue
        if any(counts[k] == 0 for k in range(r) if k != d0):
            continue  # an unowned row would force a zero row in the sum
        for phi in _row_assignments(n, counts):
            for mats in _assemble(m, n, r, d0, phi):
                if not _products_ok(mats, n):
                    continue
                if tier is ConstraintTier.PROJECTIVE_FUNCTOR:
                    if any(mats[i][phi[i - 1]][d0] != 2 for i in range(1, n + 1)):
                        continue
                canon = canonicalize_family(mats)
                if canon not in found:
                    fam = SolutionFamily(
                        n=n,
                        r=r,
                        matrices=canon,
                        phi=tuple(_single_nonzero_row(canon[i]) + 1 for i in range(1, n + 1)),
                    )
                    found[canon] = fam
    return sorted(found.values(), key=_family_sort_key)


def _family_sort_key(fam: SolutionFamily):
    return (fam.r,) + tuple(mat_flat(m) for m in (fam.total,) + fam.matrices)


def _assemble(m: Matrix, n: int, r: int, d0: int, phi: Sequence[int]):
    """Yield summand tuples for a fixed diagonal assignment.

    Summand 0 owns row d0 with diagonal entry 2; summand i >= 1 owns row
    phi[i-1] with diagonal entry 1.  Rows shared by several summands are
    split into strictly positive integer parts column by column.
    """
    owners: dict[int, list[int]] = {k: [] for k in range(r)}
    owners[d0].append(0)
    for i, row in enumerate(phi, start=1):
        owners[row].append(i)
    per_row_options: list[list[dict[int, tuple[int, ...]]]] = []
    rows_order = list(range(r))
    for k in rows_order:
        who = owners[k]
        fixed = {idx: (2 if idx == 0 else 1) for idx in who}
        col_opts: list[list[tuple[int, ...]]] = []
        for j in range(r):
            if j == k:
                parts = tuple(fixed[idx] for idx in who)
                if sum(parts) != m[k][j]:
                    col_opts = []
                    break
                col_opts.append([parts])
            else:
                col_opts.append(list(_compositions_positive(m[k][j], len(who))))
        if not col_opts:
            return
        options = []
        for combo in itertools.product(*col_opts):
            options.append({idx: tuple(combo[j][t] for j in range(r)) for t, idx in enumerate(who)})
        per_row_options.append(options)
    for chosen in itertools.product(*per_row_options):
        rows_by_summand: dict[int, tuple[int, tuple[int, ...]]] = {}
        for k, alloc in zip(rows_order, chosen):
            for idx, vec in alloc.items():
                rows_by_summand[idx] = (k, vec)
        mats = []
        for idx in range(n + 1):
            k, vec = rows_by_summand[idx]
            rows = [[0] * r for _ in range(r)]
            rows[k] = list(vec)
            mats.append(mat(rows))
        yield tuple(mats)


def _products_ok(mats: Sequence[Matrix], n: int) -> bool:
    coeff = [2] + [1] * n
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            if mat_mul(a, b) != mat_scale(coeff[j], a):
                return False
    return True


# -- set partitions (independent counting oracle) ---------------------------


def iter_set_partitions(n: int):
    """Explicit enumeration of the partitions of {1..n} as block tuples."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        yield ()
        return
    for rest in iter_set_partitions(n - 1):
        yield rest + ((n,),)
        for k in range(len(rest)):
            yield rest[:k] + (rest[k] + (n,),) + rest[k + 1:]


def count_set_partitions(n: int) -> int:
    return sum(1 for _ in iter_set_partitions(n))


# -- full classification ----------------------------------------------------


@dataclass
class ClassificationReport:
    """Matrix families for one side and tier, counted up to permutation.

    The count is a count of matrix families, not of equivalence classes of
    2-representations; the degenerate case in which every non-identity
    generator acts by zero is excluded by construction and reported
    separately in the documentation.
    """

    n: int
    side: Side
    tier: ConstraintTier
    families: tuple[SolutionFamily, ...]
    count_up_to_perm: int
    oracle_count: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "side": self.side.value,
            "tier": self.tier.value,
            "families": [f.to_json() for f in self.families],
            "count": self.count_up_to_perm,
            "oracle_count": self.oracle_count,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ClassificationReport":
        n = doc["n"]
        fams = tuple(SolutionFamily.from_json(n, f) for f in doc["families"])
        return cls(
            n=n,
            side=Side(doc["side"]),
            tier=ConstraintTier(doc["tier"]),
            families=fams,
            count_up_to_perm=doc["count"],
            oracle_count=doc["oracle_count"],
        )


def classify(n: int, side: Side = Side.LEFT,
             tier: ConstraintTier = ConstraintTier.PROJECTIVE_FUNCTOR,
             r_max: Optional[int] = None) -> ClassificationReport:
    """Classify the admissible families of action matrices for one side."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    side = Side(side)
    tier = ConstraintTier(tier)
    families: list[SolutionFamily] = []
    if side is Side.LEFT:
        for m in enumerate_total_matrices(n, r_max):
            families.extend(decompose(m, n, tier))
        oracle = count_set_partitions(n)
    else:
        # Right-hand composition scales by the left factor: the leading
        # summand is confined to a single row and its products drag every
        # other summand into that row, so a strictly positive irreducible
        # total matrix only exists in size one.  The size cap is that filter.
        cap = 1 if r_max is None else min(r_max, 1)
        for m in enumerate_total_matrices(n, cap):
            mats = (((2,),),) + tuple((((1,),),) * n)
            fam = SolutionFamily(n=n, r=1, matrices=mats, phi=(1,) * n)
            fam.validate(side=Side.RIGHT)
            families.append(fam)
        oracle = 1
    families.sort(key=_family_sort_key)
    return ClassificationReport(
        n=n,
        side=side,
        tier=tier,
        families=tuple(families),
        count_up_to_perm=len(families),
        oracle_count=oracle,
    )
