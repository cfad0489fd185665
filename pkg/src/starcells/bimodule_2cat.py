"""Composition of projective-bimodule endofunctor labels and cell structure.

A 1-morphism is tracked as an integer multiplicity vector over the
indecomposables ``Id`` and ``F(i, j)``.  The composition rule is

    F(i, j) o F(k, l)  =  F(i, l) ^ (dim of the hom slice from k to j),

with ``Id`` as the unit; this is all the split Grothendieck data the cell
structure and the classification need.  Cells are the strongly connected
components of the summand preorders.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Union

from .quiver_algebra import PathAlgebra

IDENTITY = "Id"
Label = Union[str, tuple[int, int]]


def label_str(label: Label) -> str:
    if label == IDENTITY:
        return IDENTITY
    i, j = label
    return f"F({i},{j})"


def parse_label(text: str) -> Label:
    if text == IDENTITY:
        return IDENTITY
    if text.startswith("F(") and text.endswith(")"):
        i, j = text[2:-1].split(",")
        return (int(i), int(j))
    raise ValueError(f"cannot parse 1-morphism label {text!r}")


def label_key(label: Label):
    if label == IDENTITY:
        return (0, 0, 0)
    return (1, label[0], label[1])


class OneMorphism:
    """Formal non-negative multiset of indecomposable 1-morphisms."""

    def __init__(self, mult: Optional[dict] = None):
        self.mult: dict[Label, int] = {}
        for label, c in (mult or {}).items():
            if not isinstance(c, int) or c < 0:
                raise ValueError("multiplicities must be non-negative integers")
            if c:
                self.mult[label] = c

    @classmethod
    def of(cls, label: Label, mult: int = 1) -> "OneMorphism":
        return cls({label: mult})

    @classmethod
    def zero(cls) -> "OneMorphism":
        return cls()

    @property
    def is_zero(self) -> bool:
        return not self.mult

    def support(self) -> tuple[Label, ...]:
        return tuple(sorted(self.mult, key=label_key))

    def multiplicity(self, label: Label) -> int:
        return self.mult.get(label, 0)

    def __add__(self, other: "OneMorphism") -> "OneMorphism":
        out = dict(self.mult)
        for label, c in other.mult.items():
            out[label] = out.get(label, 0) + c
        return OneMorphism(out)

    def __rmul__(self, scalar: int) -> "OneMorphism":
        if not isinstance(scalar, int) or scalar < 0:
            raise ValueError("scalars are non-negative integers")
        return OneMorphism({label: scalar * c for label, c in self.mult.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, OneMorphism) and self.mult == other.mult

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for label in self.support():
            c = self.mult[label]
            bits.append(label_str(label) if c == 1 else f"{c}*{label_str(label)}")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {label_str(label): c for label, c in sorted(self.mult.items(), key=lambda t: label_key(t[0]))}

    @classmethod
    def from_json(cls, doc: dict) -> "OneMorphism":
        return cls({parse_label(k): v for k, v in doc.items()})


class TwoSubcategory:
    """Additive 2-subcategory given by a summand-closed set of labels."""

    def __init__(self, algebra: PathAlgebra, indecomposables: Iterable[Label], name: str = ""):
        self.algebra = algebra
        self.indecomposables = frozenset(indecomposables) | {IDENTITY}
        self.name = name
        vertices = set(algebra.quiver.vertices)
        for label in self.indecomposables:
            if label == IDENTITY:
                continue
            i, j = label
            if i not in vertices or j not in vertices:
                raise ValueError(f"label {label_str(label)} refers to unknown vertices")
        for f, g in product(self.labels_sorted(), repeat=2):
            got = set(self.compose_labels(f, g).support())
            if not got <= self.indecomposables:
                raise ValueError("label set is not closed under composition summands")

    def labels_sorted(self) -> tuple[Label, ...]:
        return tuple(sorted(self.indecomposables, key=label_key))

    def nonidentity_labels(self) -> tuple[Label, ...]:
        return tuple(l for l in self.labels_sorted() if l != IDENTITY)

    def compose_labels(self, f: Label, g: Label) -> OneMorphism:
        if f == IDENTITY:
            return OneMorphism.of(g)
        if g == IDENTITY:
            return OneMorphism.of(f)
        (i, _j), (_k, l) = f, g
        mult = self.algebra.hom_dim(g[0], f[1])
        if mult == 0:
            return OneMorphism.zero()
        return OneMorphism.of((i, l), mult)

    def compose(self, first, second) -> OneMorphism:
        """Composition ``first o second``, extended bilinearly."""
        first = self._promote(first)
        second = self._promote(second)
        for m in (first, second):
            if not set(m.support()) <= self.indecomposables:
                raise ValueError("1-morphism is not supported on this subcategory")
        out = OneMorphism.zero()
        for f, cf in first.mult.items():
            for g, cg in second.mult.items():
                out = out + (cf * cg) * self.compose_labels(f, g)
        return out

    def _promote(self, x) -> OneMorphism:
        if isinstance(x, OneMorphism):
            return x
        return OneMorphism.of(x)


def subcategory_closure(algebra: PathAlgebra, generators: Iterable[Label], name: str = "") -> TwoSubcategory:
    """Smallest summand-closed label set containing Id and the generators."""
    labels = {IDENTITY} | set(generators)
    hom = algebra.hom_dim
    changed = True
    while changed:
        changed = False
        for f, g in list(product(labels, repeat=2)):
            if f == IDENTITY or g == IDENTITY:
                continue
            if hom(g[0], f[1]) and (f[0], g[1]) not in labels:
                labels.add((f[0], g[1]))
                changed = True
    return TwoSubcategory(algebra, labels, name)


def left_cell_subcategory(algebra: PathAlgebra) -> TwoSubcategory:
    n = max(algebra.quiver.vertices)
    return subcategory_closure(algebra, [(i, 0) for i in range(n + 1)], name=f"C{n}")


def right_cell_subcategory(algebra: PathAlgebra) -> TwoSubcategory:
    n = max(algebra.quiver.vertices)
    return subcategory_closure(algebra, [(0, j) for j in range(n + 1)], name=f"Cr{n}")


def full_projective_subcategory(algebra: PathAlgebra) -> TwoSubcategory:
    n = max(algebra.quiver.vertices)
    labels = [(i, j) for i in range(n + 1) for j in range(n + 1)]
    return subcategory_closure(algebra, labels, name=f"CLambda{n}")


@dataclass(frozen=True)
class CellStructure:
    """Left/right/two-sided cells plus the order on two-sided cells.

    ``order`` lists strict pairs (a, b) meaning two-sided cell a lies above
    cell b; ``idempotent`` flags, per two-sided cell, whether some member is
    a summand of a composition of two members.
    """

    left_cells: tuple[tuple[Label, ...], ...]
    right_cells: tuple[tuple[Label, ...], ...]
    twosided_cells: tuple[tuple[Label, ...], ...]
    order: tuple[tuple[int, int], ...]
    idempotent: tuple[bool, ...]

    def to_json(self) -> dict:
        def enc(cells):
            return [[label_str(l) for l in cell] for cell in cells]
        return {
            "left_cells": enc(self.left_cells),
            "right_cells": enc(self.right_cells),
            "twosided_cells": enc(self.twosided_cells),
            "order": [list(p) for p in self.order],
            "idempotent": list(self.idempotent),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CellStructure":
        def dec(cells):
            return tuple(tuple(parse_label(l) for l in cell) for cell in cells)
        return cls(
            left_cells=dec(doc["left_cells"]),
            right_cells=dec(doc["right_cells"]),
            twosided_cells=dec(doc["twosided_cells"]),
            order=tuple(tuple(p) for p in doc["order"]),
            idempotent=tuple(doc["idempotent"]),
        )

    def hasse_dot(self) -> str:
        above = set(self.order)
        covers = []
        for a, b in above:
            if any((a, c) in above and (c, b) in above for c in range(len(self.twosided_cells))):
                continue
            covers.append((a, b))
        lines = ["digraph cells {"]
        for k, cell in enumerate(self.twosided_cells):
            text = ", ".join(label_str(l) for l in cell)
            lines.append(f'  c{k} [label="{text}"];')
        for a, b in sorted(covers):
            lines.append(f"  c{a} -> c{b};")
        lines.append("}")
        return "\n".join(lines)


def _reachability(labels, edges) -> dict:
    reach = {g: set(fs) | {g} for g, fs in edges.items()}
    changed = True
    while changed:
        changed = False
        for g in labels:
            new = set()
            for f in reach[g]:
                new |= reach[f]
            if not new <= reach[g]:
                reach[g] |= new
                changed = True
    return reach


def _cells_from_reach(labels, reach):
    cells = []
    seen = set()
    for g in labels:
        if g in seen:
            continue
        cell = tuple(sorted((f for f in labels if f in reach[g] and g in reach[f]), key=label_key))
        cells.append(cell)
        seen.update(cell)
    return tuple(sorted(cells, key=lambda c: label_key(c[0])))


def cell_structure(category: TwoSubcategory) -> CellStructure:
    labels = category.labels_sorted()
    left_edges: dict[Label, set[Label]] = {g: set() for g in labels}
    right_edges: dict[Label, set[Label]] = {g: set() for g in labels}
    two_edges: dict[Label, set[Label]] = {g: set() for g in labels}
    for g in labels:
        for h in labels:
            left_edges[g].update(category.compose_labels(h, g).support())
            right_edges[g].update(category.compose_labels(g, h).support())
            for mid in category.compose_labels(h, g).support():
                for h2 in labels:
                    two_edges[g].update(category.compose_labels(mid, h2).support())
    reach_l = _reachability(labels, left_edges)
    reach_r = _reachability(labels, right_edges)
    reach_j = _reachability(labels, two_edges)
    left = _cells_from_reach(labels, reach_l)
    right = _cells_from_reach(labels, reach_r)
    two = _cells_from_reach(labels, reach_j)
    order = []
    for a, ca in enumerate(two):
        for b, cb in enumerate(two):
            if a != b and ca[0] in reach_j[cb[0]] and cb[0] not in reach_j[ca[0]]:
                order.append((a, b))
    idem = []
    for cell in two:
        members = set(cell)
        flag = any(
            bool(set(category.compose_labels(g, h).support()) & members)
            for g in cell for h in cell
        )
        idem.append(flag)
    return CellStructure(left, right, two, tuple(sorted(order)), tuple(idem))


def composition_table(category: TwoSubcategory) -> dict[tuple[Label, Label], OneMorphism]:
    """Full pairwise composition of the non-identity indecomposables."""
    labels = category.nonidentity_labels()
    return {(f, g): category.compose_labels(f, g) for f in labels for g in labels}


def table_to_json(table: dict[tuple[Label, Label], OneMorphism]) -> dict:
    entries = []
    for (f, g), result in sorted(table.items(), key=lambda t: (label_key(t[0][0]), label_key(t[0][1]))):
        entries.append({"left": label_str(f), "right": label_str(g), "result": result.to_json()})
    return {"entries": entries}


def table_from_json(doc: dict) -> dict[tuple[Label, Label], OneMorphism]:
    out = {}
    for e in doc["entries"]:
        out[(parse_label(e["left"]), parse_label(e["right"]))] = OneMorphism.from_json(e["result"])
    return out
