"""Concrete cell 2-representations with exact hom-space data.

Objects are the indecomposable 1-morphisms lying above a chosen left cell;
the hom space from F(i, j) to F(k, l) is realised through its tensor-pair
basis, one pair (p, q) for each basis path p from k to i and q from j to l.
Composing two pairs multiplies the path sides (in opposite orders), and a
generator acts on a hom space through right multiplication on a
multiplicity space of paths.  Because every product of basis paths is zero
or again a basis path, all structure constants are 0 or 1 and every
2-morphism is a finite exact-rational vector.

The maximal invariant ideal is found by closing each basis vector under
two-sided composition and under all generator actions, keeping exactly the
vectors whose closure avoids every identity morphism; the quotient hom
dimensions form the Cartan matrix of the representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .bimodule_2cat import IDENTITY, Label, TwoSubcategory, label_key, label_str, parse_label
from .linalg import SpanBasis, inverse
from .matrix_solver import Matrix, mat

SpaceKey = tuple[int, int]


class CellSubrep:
    """Sub-2-representation spanned by the objects above a left cell."""

    def __init__(self, category: TwoSubcategory, cell: Iterable[Label]):
        cell = tuple(sorted(set(cell), key=label_key))
        if not cell:
            raise ValueError("cell must be nonempty")
        if IDENTITY in cell:
            raise ValueError("cell 2-representations are attached to non-identity cells")
        if not set(cell) <= category.indecomposables:
            raise ValueError("cell is not contained in the subcategory")
        self.category = category
        self.algebra = category.algebra
        self.cell = cell
        self.objects = self._objects_above(cell)
        self._oidx = {label: k for k, label in enumerate(self.objects)}
        self.generators = category.nonidentity_labels()
        self._hom: dict[SpaceKey, tuple] = {}
        self._hom_pos: dict[SpaceKey, dict] = {}
        for a in range(len(self.objects)):
            for b in range(len(self.objects)):
                basis = self._build_hom_basis(a, b)
                self._hom[(a, b)] = basis
                self._hom_pos[(a, b)] = {pq: k for k, pq in enumerate(basis)}
        self._mult_basis_cache: dict[tuple[int, int], tuple] = {}

    def _objects_above(self, cell) -> tuple[Label, ...]:
        labels = set(cell)
        changed = True
        while changed:
            changed = False
            for h in self.category.labels_sorted():
                for x in list(labels):
                    for f in self.category.compose_labels(h, x).support():
                        if f not in labels:
                            labels.add(f)
                            changed = True
        return tuple(sorted(labels, key=label_key))

    # -- hom spaces -------------------------------------------------------

    def _build_hom_basis(self, a: int, b: int) -> tuple:
        (ia, ja), (ib, jb) = self.objects[a], self.objects[b]
        ps = self.algebra.paths_between(ib, ia)
        qs = self.algebra.paths_between(ja, jb)
        return tuple((p, q) for p in ps for q in qs)

    def hom_basis(self, a: int, b: int) -> tuple:
        return self._hom[(a, b)]

    def hom_dim_matrix(self) -> Matrix:
        k = len(self.objects)
        return mat([[len(self._hom[(a, b)]) for b in range(k)] for a in range(k)])

    def identity_index(self, a: int) -> int:
        ia, ja = self.objects[a]
        pair = (self.algebra.idempotent(ia), self.algebra.idempotent(ja))
        return self._hom_pos[(a, a)][pair]

    def compose_indices(self, a: int, b: int, c: int, idx_ab: int, idx_bc: int) -> Optional[int]:
        """Index of the composite (a -> b -> c); None when it vanishes."""
        p1, q1 = self._hom[(a, b)][idx_ab]
        p2, q2 = self._hom[(b, c)][idx_bc]
        p = self.algebra.path_product(p1, p2)
        if p is None:
            return None
        q = self.algebra.path_product(q2, q1)
        if q is None:
            return None
        return self._hom_pos[(a, c)][(p, q)]

    # -- generator actions --------------------------------------------------

    def mult_basis(self, g: Label, a: int) -> tuple:
        """Multiplicity space of object ``a`` under the generator: g_h-to-i_a paths."""
        gh = g[1]
        ia = self.objects[a][0]
        key = (gh, a)
        if key not in self._mult_basis_cache:
            self._mult_basis_cache[key] = self.algebra.paths_between(ia, gh)
        return self._mult_basis_cache[key]

    def action_target(self, g: Label, a: int) -> int:
        """Object index of the unique summand type of g composed with object a."""
        gi = g[0]
        ja = self.objects[a][1]
        return self._oidx[(gi, ja)]

    def action_object_matrix(self, g: Label) -> Matrix:
        """Multiplicities of the generator acting on objects (rows = output)."""
        if g == IDENTITY:
            k = len(self.objects)
            return mat([[1 if i == j else 0 for j in range(k)] for i in range(k)])
        k = len(self.objects)
        rows = [[0] * k for _ in range(k)]
        for y in range(k):
            rows[self.action_target(g, y)][y] = len(self.mult_basis(g, y))
        return mat(rows)

    def action_entries(self, g: Label, a: int, b: int, idx: int):
        """Generator action on one hom-basis vector, as sparse matrix entries.

        Returns (target space, (rows, cols), entries) where each entry is a
        triple (t, s, basis index) with unit coefficient.
        """
        p, q = self._hom[(a, b)][idx]
        wa = self.mult_basis(g, a)
        wb = self.mult_basis(g, b)
        wb_pos = {m: t for t, m in enumerate(wb)}
        a2 = self.action_target(g, a)
        b2 = self.action_target(g, b)
        e_g = self.algebra.idempotent(g[0])
        pos = self._hom_pos[(a2, b2)][(e_g, q)]
        entries = []
        for s, mpath in enumerate(wa):
            res = self.algebra.path_product(mpath, p)
            if res is None:
                continue
            entries.append((wb_pos[res], s, pos))
        return (a2, b2), (len(wb), len(wa)), entries


def principal_cell_subrep(category: TwoSubcategory, cell: Iterable[Label]) -> CellSubrep:
    """Objects, hom bases and action data of the sub-2-representation."""
    return CellSubrep(category, cell)


# -- invariant ideals -------------------------------------------------------


@dataclass
class InvariantIdeal:
    """Per-hom-space bases of the maximal invariant ideal."""

    spaces: dict[SpaceKey, tuple]
    dims: Matrix

    def dim(self, a: int, b: int) -> int:
        return len(self.spaces.get((a, b), ()))


def _vector_neighbors(sub: CellSubrep, space: SpaceKey, vec: Sequence[Fraction]):
    """All one-step consequences of a vector under composition and actions."""
    a, b = space
    nz = [(k, c) for k, c in enumerate(vec) if c]
    k_objects = len(sub.objects)
    out = []
    for c in range(k_objects):
        target = sub.hom_basis(a, c)
        if target:
            for j2 in range(len(sub.hom_basis(b, c))):
                acc = [Fraction(0)] * len(target)
                hit = False
                for k, coeff in nz:
                    t = sub.compose_indices(a, b, c, k, j2)
                    if t is not None:
                        acc[t] += coeff
                        hit = True
                if hit and any(acc):
                    out.append(((a, c), tuple(acc)))
        target = sub.hom_basis(c, b)
        if target:
            for j2 in range(len(sub.hom_basis(c, a))):
                acc = [Fraction(0)] * len(target)
                hit = False
                for k, coeff in nz:
                    t = sub.compose_indices(c, a, b, j2, k)
                    if t is not None:
                        acc[t] += coeff
                        hit = True
                if hit and any(acc):
                    out.append(((c, b), tuple(acc)))
    for g in sub.generators:
        cells: dict[tuple[int, int], list] = {}
        tspace = None
        for k, coeff in nz:
            tspace, _shape, entries = sub.action_entries(g, a, b, k)
            for t, s, pos in entries:
                cells.setdefault((t, s), []).append((pos, coeff))
        if tspace is None:
            continue
        width = len(sub.hom_basis(*tspace))
        for parts in cells.values():
            acc = [Fraction(0)] * width
            for pos, coeff in parts:
                acc[pos] += coeff
            if any(acc):
                out.append((tspace, tuple(acc)))
    return out


def _invariant_closure(sub: CellSubrep, seeds) -> dict[SpaceKey, SpanBasis]:
    spans: dict[SpaceKey, SpanBasis] = {}
    for key, basis in sub._hom.items():
        spans[key] = SpanBasis(len(basis))
    stack = list(seeds)
    while stack:
        space, vec = stack.pop()
        if not spans[space].add(vec):
            continue
        stack.extend(_vector_neighbors(sub, space, vec))
    return spans


def _contains_identity(sub: CellSubrep, spans: dict[SpaceKey, SpanBasis]) -> bool:
    for a in range(len(sub.objects)):
        space = (a, a)
        sb = spans[space]
        if sb.dim == 0:
            continue
        unit = [Fraction(0)] * sb.width
        unit[sub.identity_index(a)] = Fraction(1)
        if sb.contains(unit):
            return True
    return False


def closure_of(sub: CellSubrep, space: SpaceKey, vec) -> dict[SpaceKey, SpanBasis]:
    """Invariant closure of a single vector (exposed for the test suite)."""
    return _invariant_closure(sub, [(space, tuple(Fraction(x) for x in vec))])


def maximal_invariant_ideal(sub: CellSubrep) -> InvariantIdeal:
    """Span of every hom-basis vector whose invariant closure avoids the identities.

    The output re-closes to itself by construction; it is rejected (which
    cannot happen for the categories built here) if the sum of the retained
    closures stops being proper.
    """
    kept = []
    for space, basis in sub._hom.items():
        for k in range(len(basis)):
            unit = [Fraction(0)] * len(basis)
            unit[k] = Fraction(1)
            spans = _invariant_closure(sub, [(space, tuple(unit))])
            if not _contains_identity(sub, spans):
                kept.append((space, tuple(unit)))
    spans = _invariant_closure(sub, kept)
    if _contains_identity(sub, spans):
        raise ValueError("no proper maximal invariant ideal exists")
    k = len(sub.objects)
    dims = mat([[spans[(a, b)].dim for b in range(k)] for a in range(k)])
    return InvariantIdeal(
        spaces={key: sb.basis_rows() for key, sb in spans.items() if sb.dim},
        dims=dims,
    )


# -- the quotient -----------------------------------------------------------


@dataclass
class CellRepresentation:
    """Action matrices and hom dimensions of a cell 2-representation.

    ``hom_dims_raw[a][b]`` is the dimension of the hom space from object a
    to object b before the quotient; ``cartan`` equals the quotient
    dimensions.  Values are immutable after construction by convention.
    """

    objects: tuple[str, ...]
    generators: tuple[str, ...]
    action: dict[str, Matrix]
    hom_dims_raw: Matrix
    hom_dims_quotient: Matrix
    cartan: Matrix

    def action_matrix(self, label) -> Matrix:
        name = label if isinstance(label, str) else label_str(label)
        if name == IDENTITY:
            k = len(self.objects)
            return mat([[1 if i == j else 0 for j in range(k)] for i in range(k)])
        return self.action[name]

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "action": {name: [list(row) for row in m] for name, m in sorted(self.action.items())},
            "cartan": [list(row) for row in self.cartan],
            "hom_raw": [list(row) for row in self.hom_dims_raw],
            "hom_quotient": [list(row) for row in self.hom_dims_quotient],
            "family": None,  # reserved for a future explicit family construction
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CellRepresentation":
        action = {name: mat(m) for name, m in doc["action"].items()}
        return cls(
            objects=tuple(doc["objects"]),
            generators=tuple(sorted(action, key=lambda s: label_key(parse_label(s)))),
            action=action,
            hom_dims_raw=mat(doc["hom_raw"]),
            hom_dims_quotient=mat(doc["hom_quotient"]),
            cartan=mat(doc["cartan"]),
        )


def cell_2rep(category: TwoSubcategory, cell: Iterable[Label]) -> CellRepresentation:
    """Quotient of the cell subrepresentation by its maximal invariant ideal."""
    sub = CellSubrep(category, cell)
    ideal = maximal_invariant_ideal(sub)
    raw = sub.hom_dim_matrix()
    quotient = mat([
        [raw[a][b] - ideal.dims[a][b] for b in range(len(sub.objects))]
        for a in range(len(sub.objects))
    ])
    action = {label_str(g): sub.action_object_matrix(g) for g in sub.generators}
    return CellRepresentation(
        objects=tuple(label_str(x) for x in sub.objects),
        generators=tuple(label_str(g) for g in sub.generators),
        action=action,
        hom_dims_raw=raw,
        hom_dims_quotient=quotient,
        cartan=quotient,
    )


def simples_action_matrix(rep: CellRepresentation, label) -> tuple[tuple[Fraction, ...], ...]:
    """Action matrix in the basis of simples: conjugate by the Cartan matrix."""
    c = [[Fraction(x) for x in row] for row in rep.cartan]
    try:
        c_inv = inverse(c)
    except ValueError:
        raise ValueError("Cartan matrix is singular; no basis change to simples") from None
    m = rep.action_matrix(label)
    k = len(c)
    cm = [[sum(Fraction(c[i][t]) * m[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    return tuple(
        tuple(sum(cm[i][t] * c_inv[t][j] for t in range(k)) for j in range(k))
        for i in range(k)
    )


# -- convenience constructors ------------------------------------------------


def left_cell_representation(n: int) -> CellRepresentation:
    """Cell 2-representation of the left-cell subcategory on n + 1 objects."""
    from .bimodule_2cat import cell_structure, left_cell_subcategory
    from .quiver_algebra import build_star_algebra

    category = left_cell_subcategory(build_star_algebra(n))
    cells = cell_structure(category).left_cells
    cell = next(c for c in cells if IDENTITY not in c)
    return cell_2rep(category, cell)


def right_cell_representation(n: int) -> CellRepresentation:
    """Rank-one cell 2-representation attached to the hub generator."""
    from .bimodule_2cat import subcategory_closure
    from .quiver_algebra import build_star_algebra

    algebra = build_star_algebra(n)
    category = subcategory_closure(algebra, [(0, 0)], name=f"D{n}")
    return cell_2rep(category, [(0, 0)])
