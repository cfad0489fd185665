"""Finite dimensional quiver algebras with exact rational arithmetic.

The central construction is a family of star algebras: take the double
quiver of the star with hub 0 and leaves 1..n (arrows ``a_i: 0 -> i`` and
``b_i: i -> 0``); for n > 1 identify all leaf round trips through the hub
(all b_i * a_i are equal) and kill the mixed products (a_j * b_i = 0 for
i != j), while for n = 1 the two length-three round trips vanish instead.
The quotient is a basic, weakly symmetric, self-injective algebra of
dimension 4n + 2 whose basis is a closed set of irreducible paths.

Products compose right to left: ``p * q`` means "first q, then p", so
b1 * a1 is a path that starts and ends at the hub. Arrow sequences, by
contrast, are always stored in traversal order (first arrow applied comes
first); the word for b1 * a1 is ("a1", "b1").

Relations are realised as a word rewriting system.  The rule set shipped
for the star algebras includes the length-three consequences of the
defining relations, which makes naive leftmost rewriting confluent without
any critical-pair completion; generic presentations passed to
:class:`PathAlgebra` are oriented by shortlex and used as-is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import nullspace

ZERO_PATH = "zero-path"
PATH_EQUALITY = "path-equality"

Word = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


class Quiver:
    """Finite directed multigraph with named arrows."""

    def __init__(self, vertices: Iterable[int], arrows: Iterable[Arrow]):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise ValueError(f"arrow {a.name!r} has an endpoint outside the vertex set")
        self.arrow_map = {a.name: a for a in self.arrows}

    def word_endpoints(self, word: Sequence[str]) -> tuple[int, int]:
        """(source, target) of a traversal-order word; rejects bad input."""
        if not word:
            raise ValueError("empty word has no endpoints; use a trivial path instead")
        arrows = []
        for name in word:
            if name not in self.arrow_map:
                raise ValueError(f"unknown arrow {name!r}")
            arrows.append(self.arrow_map[name])
        for x, y in zip(arrows, arrows[1:]):
            if x.tgt != y.src:
                raise ValueError(f"word is not composable at {x.name!r} -> {y.name!r}")
        return arrows[0].src, arrows[-1].tgt

    def to_dot(self) -> str:
        lines = ["digraph quiver {", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a in self.arrows:
            lines.append(f'  "{a.src}" -> "{a.tgt}" [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Relation:
    """A defining relation, with both sides in traversal order.

    ``zero-path`` declares lhs = 0; ``path-equality`` declares lhs = rhs.
    """

    kind: str
    lhs: Word
    rhs: Optional[Word] = None

    def __post_init__(self):
        if self.kind not in (ZERO_PATH, PATH_EQUALITY):
            raise ValueError(f"unknown relation kind {self.kind!r}")
        if self.kind == PATH_EQUALITY and self.rhs is None:
            raise ValueError("path-equality needs a right hand side")
        if self.kind == ZERO_PATH and self.rhs is not None:
            raise ValueError("zero-path must not carry a right hand side")


@dataclass(frozen=True)
class NormalPath:
    """An irreducible path: a basis element of the algebra."""

    arrows: Word
    source: int
    target: int

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e{self.source}"
        return "*".join(reversed(self.arrows))

    __repr__ = __str__


class AlgebraElement:
    """Sparse rational linear combination of basis paths."""

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[NormalPath, Fraction] = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[p] = c

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return AlgebraElement(out)

    def __rmul__(self, scalar) -> "AlgebraElement":
        s = Fraction(scalar)
        return AlgebraElement({p: s * c for p, c in self.terms.items()})

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for p, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), str(t[0]))):
            bits.append(str(p) if c == 1 else f"{c}*{p}")
        return " + ".join(bits)


def _orient(relations: Sequence[Relation]) -> tuple[tuple[Word, Optional[Word]], ...]:
    """Turn relations into rewrite rules, larger side (shortlex) first."""
    rules = []
    for rel in relations:
        if rel.kind == ZERO_PATH:
            rules.append((tuple(rel.lhs), None))
        else:
            a, b = tuple(rel.lhs), tuple(rel.rhs)
            if (len(a), a) < (len(b), b):
                a, b = b, a
            if a != b:
                rules.append((a, b))
    rules = sorted(set(rules), key=lambda r: (len(r[0]), r[0]))
    return tuple(rules)


class PathAlgebra:
    """Quotient of a path algebra presented by a terminating rewriting system.

    The basis is the set of irreducible composable words (one trivial path
    per vertex); the multiplication table is precomputed.  A product of two
    basis paths is always zero or a single basis path because every rewrite
    rule maps a word to a word.
    """

    def __init__(self, quiver: Quiver, relations: Iterable[Relation] = (),
                 max_length: int = 32, max_dim: int = 20000):
        self.quiver = quiver
        self.relations = tuple(relations)
        for rel in self.relations:
            self._validate_relation(rel)
        self.rewrite_rules = _orient(self.relations)
        self.length_graded = all(
            rhs is None or len(rhs) == len(lhs) for lhs, rhs in self.rewrite_rules
        )
        self._build_basis(max_length, max_dim)
        self._build_mult()

    # -- construction ---------------------------------------------------

    def _validate_relation(self, rel: Relation) -> None:
        lsrc, ltgt = self.quiver.word_endpoints(rel.lhs)
        if rel.kind == PATH_EQUALITY:
            rsrc, rtgt = self.quiver.word_endpoints(rel.rhs)
            if (lsrc, ltgt) != (rsrc, rtgt):
                raise ValueError("path-equality sides have different endpoints")

    def _irreducible(self, word: Word) -> bool:
        for pos in range(len(word)):
            for lhs, _ in self.rewrite_rules:
                if word[pos:pos + len(lhs)] == lhs:
                    return False
        return True

    def _build_basis(self, max_length: int, max_dim: int) -> None:
        paths = [NormalPath((), v, v) for v in self.quiver.vertices]
        frontier = list(paths)
        while frontier:
            nxt = []
            for p in frontier:
                for a in self.quiver.arrows:
                    if a.src != p.target:
                        continue
                    word = p.arrows + (a.name,)
                    if not self._irreducible(word):
                        continue
                    q = NormalPath(word, p.source, a.tgt)
                    paths.append(q)
                    nxt.append(q)
                    if len(word) > max_length or len(paths) > max_dim:
                        raise ValueError(
                            "algebra is not finite dimensional within the configured bounds"
                        )
            frontier = nxt
        self.basis = tuple(sorted(paths, key=lambda p: (len(p), p.source, p.target, p.arrows)))
        self._index = {p: k for k, p in enumerate(self.basis)}
        self._word_index = {p.arrows: p for p in self.basis if p.arrows}
        self._by_st: dict[tuple[int, int], list[NormalPath]] = {}
        for p in self.basis:
            self._by_st.setdefault((p.source, p.target), []).append(p)

    def _build_mult(self) -> None:
        # product p*q = "first q, then p"; table maps index pairs to an index
        self._prod: dict[tuple[int, int], int] = {}
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                if q.target != p.source:
                    continue
                word = q.arrows + p.arrows
                red = self.reduce_word(word)
                if red is None:
                    continue
                r = self._word_index[red] if red else NormalPath((), q.source, q.source)
                self._prod[(i, j)] = self._index[r]

    # -- rewriting ------------------------------------------------------

    def reduce_word(self, word: Sequence[str]) -> Optional[Word]:
        """Deterministic normal form of a composable word; None means zero."""
        word = tuple(word)
        changed = True
        while changed:
            changed = False
            for pos in range(len(word)):
                for lhs, rhs in self.rewrite_rules:
                    if word[pos:pos + len(lhs)] == lhs:
                        if rhs is None:
                            return None
                        word = word[:pos] + rhs + word[pos + len(lhs):]
                        changed = True
                        break
                if changed:
                    break
        return word

    def normal_form(self, raw: Sequence[str]) -> AlgebraElement:
        """Residue class of a raw traversal-order arrow sequence."""
        src, tgt = self.quiver.word_endpoints(raw)
        red = self.reduce_word(tuple(raw))
        if red is None:
            return AlgebraElement()
        if not red:
            return AlgebraElement({NormalPath((), src, src): Fraction(1)})
        return AlgebraElement({self._word_index[red]: Fraction(1)})

    # -- algebra structure ----------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def idempotent(self, v: int) -> NormalPath:
        self._check_vertex(v)
        return NormalPath((), v, v)

    def one(self) -> AlgebraElement:
        return AlgebraElement({self.idempotent(v): Fraction(1) for v in self.quiver.vertices})

    def path_product(self, p: NormalPath, q: NormalPath) -> Optional[NormalPath]:
        """p * q (first q, then p); None encodes the zero product."""
        k = self._prod.get((self._index[p], self._index[q]))
        return None if k is None else self.basis[k]

    def multiply(self, x, y) -> AlgebraElement:
        x = self._promote(x)
        y = self._promote(y)
        out: dict[NormalPath, Fraction] = {}
        for p, cp in x.terms.items():
            for q, cq in y.terms.items():
                r = self.path_product(p, q)
                if r is not None:
                    out[r] = out.get(r, Fraction(0)) + cp * cq
        return AlgebraElement(out)

    def _promote(self, x) -> AlgebraElement:
        if isinstance(x, AlgebraElement):
            return x
        if isinstance(x, NormalPath):
            return AlgebraElement({x: Fraction(1)})
        raise TypeError(f"cannot promote {type(x).__name__} to an algebra element")

    def paths_between(self, src: int, tgt: int) -> tuple[NormalPath, ...]:
        self._check_vertex(src)
        self._check_vertex(tgt)
        return tuple(self._by_st.get((src, tgt), ()))

    def hom_dim(self, i: int, j: int) -> int:
        """dim of the (j, i) idempotent slice: basis paths from i to j."""
        return len(self.paths_between(i, j))

    def _check_vertex(self, v: int) -> None:
        if v not in set(self.quiver.vertices):
            raise ValueError(f"unknown vertex {v!r}")

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        order = sorted(self.quiver.vertices)
        return tuple(
            tuple(self.hom_dim(i, j) for i in order)
            for j in order
        )

    def projective_structure(self, v: int) -> list[tuple[int, ...]]:
        """Loewy layers of the projective at ``v`` as sorted target multisets."""
        self._check_vertex(v)
        if not self.length_graded:
            raise ValueError(
                "path-length grading does not match the radical filtration "
                "for this presentation"
            )
        paths = [p for p in self.basis if p.source == v]
        depth = max(len(p) for p in paths)
        layers = []
        for k in range(depth + 1):
            layer = tuple(sorted(p.target for p in paths if len(p) == k))
            if not layer:
                raise ValueError("gap in the path-length grading")
            layers.append(layer)
        return layers

    def _socle(self, v: int) -> list:
        """Basis of the socle of the projective at ``v`` (exact nullspace)."""
        proj = [p for p in self.basis if p.source == v]
        rows = []
        for a in self.quiver.arrows:
            apath = NormalPath((a.name,), a.src, a.tgt)
            apath = self.basis[self._index[apath]]
            for bi, b in enumerate(self.basis):
                row = [Fraction(0)] * len(proj)
                hit = False
                for ci, p in enumerate(proj):
                    r = self.path_product(apath, p)
                    if r is b:
                        row[ci] = Fraction(1)
                        hit = True
                if hit:
                    rows.append(row)
        return nullspace(rows, width=len(proj)), proj

    def is_self_injective(self) -> bool:
        """Simple-socle check: top -> socle must be a bijection on simples.

        Sufficient for basic algebras of the kind built here; not a general
        self-injectivity test.
        """
        socle_targets = []
        for v in sorted(self.quiver.vertices):
            kernel, proj = self._socle(v)
            if len(kernel) != 1:
                return False
            vec = kernel[0]
            targets = {proj[k].target for k, c in enumerate(vec) if c}
            if len(targets) != 1:
                return False
            socle_targets.append(targets.pop())
        return len(set(socle_targets)) == len(self.quiver.vertices)


# -- star algebras -------------------------------------------------------


def star_quiver(n: int) -> Quiver:
    """Double quiver of the star with hub 0 and leaves 1..n."""
    if n < 1:
        raise ValueError("the star needs at least one leaf")
    arrows = []
    for i in range(1, n + 1):
        arrows.append(Arrow(f"a{i}", 0, i))
        arrows.append(Arrow(f"b{i}", i, 0))
    return Quiver(range(n + 1), arrows)


def star_relations(n: int) -> tuple[Relation, ...]:
    """Defining relations of the star algebra, traversal order.

    For n > 1 the list also carries the length-three zero consequences
    (a_1 b_1 a_i = 0 and b_i a_1 b_1 = 0 after collapsing the round trips),
    so that the shortlex-oriented rule set is confluent as it stands.
    """
    if n < 1:
        raise ValueError("the star needs at least one leaf")
    if n == 1:
        return (
            Relation(ZERO_PATH, ("b1", "a1", "b1")),
            Relation(ZERO_PATH, ("a1", "b1", "a1")),
        )
    rels = []
    for i in range(2, n + 1):
        rels.append(Relation(PATH_EQUALITY, (f"a{i}", f"b{i}"), ("a1", "b1")))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                rels.append(Relation(ZERO_PATH, (f"b{i}", f"a{j}")))
    for i in range(1, n + 1):
        rels.append(Relation(ZERO_PATH, ("a1", "b1", f"a{i}")))
        rels.append(Relation(ZERO_PATH, (f"b{i}", "a1", "b1")))
    return tuple(rels)


def build_star_algebra(n: int) -> PathAlgebra:
    """The star algebra on n leaves; dimension 4n + 2."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    return PathAlgebra(star_quiver(n), star_relations(n))


# -- serialization -------------------------------------------------------


def quiver_to_json(quiver: Quiver, relations: Sequence[Relation] = ()) -> dict:
    return {
        "vertices": list(quiver.vertices),
        "arrows": [{"id": a.name, "src": a.src, "tgt": a.tgt} for a in quiver.arrows],
        "relations": [
            {"kind": r.kind, "lhs": list(r.lhs),
             "rhs": None if r.rhs is None else list(r.rhs)}
            for r in relations
        ],
    }


def quiver_from_json(doc: dict) -> tuple[Quiver, tuple[Relation, ...]]:
    quiver = Quiver(
        doc["vertices"],
        [Arrow(a["id"], a["src"], a["tgt"]) for a in doc["arrows"]],
    )
    relations = tuple(
        Relation(r["kind"], tuple(r["lhs"]),
                 None if r.get("rhs") is None else tuple(r["rhs"]))
        for r in doc.get("relations", ())
    )
    return quiver, relations


def algebra_to_json(algebra: PathAlgebra) -> dict:
    return quiver_to_json(algebra.quiver, algebra.relations)


def algebra_from_json(doc: dict) -> PathAlgebra:
    quiver, relations = quiver_from_json(doc)
    return PathAlgebra(quiver, relations)
