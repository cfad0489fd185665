"""Shared fixtures and independent oracles.

Everything in here is deliberately separate from the package
implementation: the word-congruence oracle only knows the defining
relations and closes them under replacement in both directions; the
matrix oracles enumerate raw bounded data and filter by the definitions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from starcells import build_star_algebra

ZERO = "__zero__"


# -- word congruence oracle ---------------------------------------------------


def star_arrow_map(n):
    arrows = {}
    for i in range(1, n + 1):
        arrows[f"a{i}"] = (0, i)
        arrows[f"b{i}"] = (i, 0)
    return arrows


def star_defining_relations(n):
    """Minimal defining relations in traversal order; rhs None means zero."""
    if n == 1:
        return [(("b1", "a1", "b1"), None), (("a1", "b1", "a1"), None)]
    rels = []
    for i in range(2, n + 1):
        rels.append(((f"a{i}", f"b{i}"), ("a1", "b1")))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                rels.append(((f"b{i}", f"a{j}"), None))
    return rels


class WordOracle:
    """Congruence classes of composable words under the defining relations."""

    def __init__(self, n, max_len=6):
        self.n = n
        arrows = star_arrow_map(n)
        words = []
        cur = [(name,) for name in arrows]
        while cur:
            words.extend(cur)
            nxt = []
            for w in cur:
                if len(w) >= max_len:
                    continue
                tgt = arrows[w[-1]][1]
                for name, (s, _t) in arrows.items():
                    if s == tgt:
                        nxt.append(w + (name,))
            cur = nxt
        trivials = [("e", v) for v in range(n + 1)]
        self._parent = {}
        for node in [ZERO] + trivials + words:
            self._parent[node] = node
        rels = star_defining_relations(n)
        for w in words:
            for pos in range(len(w)):
                for lhs, rhs in rels:
                    if w[pos:pos + len(lhs)] == lhs:
                        if rhs is None:
                            self._union(w, ZERO)
                        else:
                            self._union(w, w[:pos] + rhs + w[pos + len(lhs):])
                    if rhs is not None and w[pos:pos + len(rhs)] == rhs:
                        self._union(w, w[:pos] + lhs + w[pos + len(rhs):])
        zero_root = self._find(ZERO)
        classes = {}
        for node in trivials + words:
            root = self._find(node)
            if root != zero_root:
                classes.setdefault(root, []).append(node)
        self.classes = list(classes.values())
        for cls in self.classes:
            lens = {0 if node[0] == "e" else len(node) for node in cls}
            assert len(lens) == 1, "congruence mixed lengths"
        for w in words:
            if len(w) >= 3:
                assert self._find(w) == zero_root, f"long word {w} did not vanish"
        self._arrows = arrows

    def _find(self, x):
        while self._parent[x] != x:
            self._parent[x] = self._parent[self._parent[x]]
            x = self._parent[x]
        return x

    def _union(self, x, y):
        rx, ry = self._find(x), self._find(y)
        if rx != ry:
            self._parent[rx] = ry

    def _endpoints(self, node):
        if node[0] == "e":
            return (node[1], node[1])
        return (self._arrows[node[0]][0], self._arrows[node[-1]][1])

    @property
    def dimension(self):
        return len(self.classes)

    def hom(self, src, tgt):
        return sum(1 for cls in self.classes if self._endpoints(cls[0]) == (src, tgt))

    def cartan(self):
        order = range(self.n + 1)
        return tuple(tuple(self.hom(i, j) for i in order) for j in order)

    def loewy(self, v):
        by_len = {}
        for cls in self.classes:
            node = cls[0]
            src, tgt = self._endpoints(node)
            if src != v:
                continue
            length = 0 if node[0] == "e" else len(node)
            by_len.setdefault(length, []).append(tgt)
        return [tuple(sorted(by_len[k])) for k in sorted(by_len)]


@pytest.fixture(scope="session")
def word_oracle():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = WordOracle(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def algebras():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_star_algebra(n)
        return cache[n]

    return get


# -- matrix oracles -----------------------------------------------------------


def bell_triangle(n):
    """Bell numbers via the triangle recurrence (no enumeration)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def frac_rank(rows):
    rows = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            continue
        rows.remove(piv)
        piv = [x / piv[col] for x in piv]
        rows = [[a - r[col] * b for a, b in zip(r, piv)] for r in rows]
        rows = [r for r in rows if any(r)]
        rank += 1
    return rank


def mmul(a, b):
    k = len(b)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(len(b[0])))
        for i in range(len(a))
    )


def mscale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def perm_matrix(a, perm):
    return tuple(tuple(a[pi][pj] for pj in perm) for pi in perm)


def flat(a):
    return tuple(x for row in a for x in row)


def local_canonical(a):
    return max(
        (perm_matrix(a, p) for p in itertools.permutations(range(len(a)))),
        key=flat,
    )


def local_canonical_family(mats):
    """Mirror convention: leading summand's row pinned first, key maximised."""
    total = mats[0]
    for m in mats[1:]:
        total = tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(total, m))
    d0 = next(k for k, row in enumerate(mats[0]) if any(row))
    others = [k for k in range(len(total)) if k != d0]
    best, best_key = None, None
    for rest in itertools.permutations(others):
        perm = (d0,) + rest
        cand = tuple(perm_matrix(m, perm) for m in mats)
        key = flat(perm_matrix(total, perm)) + tuple(x for m in cand for x in flat(m))
        if best_key is None or key > best_key:
            best, best_key = cand, key
    return best


def brute_force_total_matrices(n):
    """All bounded positive rank-one factorisations, canonicalised locally."""
    t = n + 2
    found = set()
    for r in range(1, t + 1):
        for v in itertools.product(range(1, t + 1), repeat=r):
            for w in itertools.product(range(1, t + 1), repeat=r):
                if sum(a * b for a, b in zip(v, w)) != t:
                    continue
                m = tuple(tuple(a * b for b in w) for a in v)
                found.add(local_canonical(m))
    return found


def brute_force_decompose(m, n, tier):
    """Entrywise splitting filtered by the raw constraint definitions."""
    r = len(m)
    cells = [(i, j) for i in range(r) for j in range(r)]

    def splits(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in splits(total - first, parts - 1):
                yield (first,) + rest

    out = set()
    for combo in itertools.product(*[list(splits(m[i][j], n + 1)) for (i, j) in cells]):
        mats = []
        for k in range(n + 1):
            rows = [[0] * r for _ in range(r)]
            for (i, j), parts in zip(cells, combo):
                rows[i][j] = parts[k]
            mats.append(tuple(tuple(row) for row in rows))
        if not all(any(x for row in mm for x in row) for mm in mats):
            continue
        diag0 = [mats[0][k][k] for k in range(r)]
        if sorted(diag0) != [0] * (r - 1) + [2]:
            continue
        if any(sorted(mm[k][k] for k in range(r)) != [0] * (r - 1) + [1] for mm in mats[1:]):
            continue
        if any(all(mm[i][j] == 0 for i in range(r)) for mm in mats for j in range(r)):
            continue
        coeff = [2] + [1] * n
        if any(
            mmul(mats[i], mats[j]) != mscale(coeff[j], mats[i])
            for i in range(n + 1) for j in range(n + 1)
        ):
            continue
        rows_nonzero = [[k for k, row in enumerate(mm) if any(row)] for mm in mats]
        assert all(len(rs) == 1 for rs in rows_nonzero), "constraints failed to force single rows"
        if tier == "projective-functor":
            col = diag0.index(2)
            if any(mats[i][rows_nonzero[i][0]][col] != 2 for i in range(1, n + 1)):
                continue
        out.add(local_canonical_family(mats))
    return out
