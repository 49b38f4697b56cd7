"""Tree-shaped Jacobi diagrams with leaves colored by the 2g generators.

A diagram is a finite tree whose vertices have valence 1 or 3, with a
cyclic order of edges at every trivalent vertex and a generator letter
at every leaf.  Diagrams are considered up to AS (reversing one cyclic
order negates the diagram) and IHX; multilinearity never arises because
leaves carry single letters by construction.

Storage uses a planted normal form: one leaf is distinguished as the
root and the rest of the tree is a nested pair structure read off in
cyclic order.  Construction canonicalizes over all root choices and
child orderings, folding AS signs into coefficients, so that equal
labeled graphs get equal keys.  Semantic equality (modulo IHX) is
decided through the eta map, which is injective on diagram classes.

comm turns a rooted tree into an iterated bracket, fission sends a tree
to a sum of wedge triples over its trivalent vertices, and eta pairs
each leaf color with the bracket of the rest.  eta_inverse solves back
onto caterpillar (left-normed) trees with exact linear algebra; the
caterpillar family's completeness is certified at runtime against the
rank-computed dimension of the bracket-map kernel.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .exact_linalg import BlockSolver, rank_of_columns
from .free_lie import (LieSeries, Word, bracket_basis, gen_count,
                       letter_label, lyndon_basis, parse_letter, witt_dim)

Plant = int | tuple
ONE = Fraction(1)


def _validate_plant(plant: Plant, n: int) -> None:
    if isinstance(plant, int):
        if not 0 <= plant < n:
            raise ValueError(f"leaf color {plant} out of range")
        return
    if not (isinstance(plant, tuple) and len(plant) == 2):
        raise ValueError("plant nodes must be (left, right) pairs")
    _validate_plant(plant[0], n)
    _validate_plant(plant[1], n)


def _plant_key(plant: Plant) -> str:
    if isinstance(plant, int):
        return f"{plant:03d}"
    return f"({_plant_key(plant[0])} {_plant_key(plant[1])})"


def _canon_plant(plant: Plant) -> tuple[Plant, int] | None:
    """Sort children by key, tracking the AS sign; None when degenerate."""
    if isinstance(plant, int):
        return plant, 1
    left = _canon_plant(plant[0])
    if left is None:
        return None
    right = _canon_plant(plant[1])
    if right is None:
        return None
    lp, ls = left
    rp, rs = right
    lk, rk = _plant_key(lp), _plant_key(rp)
    if lk == rk:
        return None
    if lk < rk:
        return (lp, rp), ls * rs
    return (rp, lp), -ls * rs


def _graph_of(root_color: int, plant: Plant):
    """Adjacency with cyclic order: internal nodes store (parent, left, right)."""
    kinds: list[str] = []
    colors: list[int | None] = []
    nbrs: list[list[int]] = []

    def new_node(kind: str, color: int | None) -> int:
        kinds.append(kind)
        colors.append(color)
        nbrs.append([])
        return len(kinds) - 1

    def attach(parent: int, sub: Plant) -> int:
        if isinstance(sub, int):
            i = new_node("leaf", sub)
            nbrs[i].append(parent)
            return i
        i = new_node("int", None)
        nbrs[i].append(parent)
        li = attach(i, sub[0])
        ri = attach(i, sub[1])
        nbrs[i].extend((li, ri))
        return i

    root = new_node("leaf", root_color)
    top = attach(root, plant)
    nbrs[root].append(top)
    return kinds, colors, [tuple(x) for x in nbrs]


def _encode(graph, start: int, frm: int) -> Plant:
    """Planted structure of the subtree entered at `start` from `frm`."""
    kinds, colors, nbrs = graph

    def enc(v: int, prev: int) -> Plant:
        if kinds[v] == "leaf":
            return colors[v]
        nb = nbrs[v]
        i = nb.index(prev)
        return (enc(nb[(i + 1) % 3], v), enc(nb[(i + 2) % 3], v))

    return enc(start, frm)


class TreeDiagram:
    """Canonical representative of a colored tree diagram."""

    __slots__ = ("genus", "root_color", "plant", "_gr")

    def __init__(self, genus: int, root_color: int, plant: Plant):
        self.genus = genus
        self.root_color = root_color
        self.plant = plant
        self._gr = None

    @classmethod
    def build(cls, genus: int, root_color: int,
              plant: Plant) -> tuple["TreeDiagram | None", int]:
        """Canonicalize; returns (diagram, sign) with input = sign * diagram.

        Returns (None, 1) when the diagram is forced to zero by AS.
        """
        n = gen_count(genus)
        if not 0 <= root_color < n:
            raise ValueError(f"leaf color {root_color} out of range")
        _validate_plant(plant, n)
        graph = _graph_of(root_color, plant)
        kinds, colors, nbrs = graph
        best_key = None
        best = None
        signs: set[int] = set()
        for v in range(len(kinds)):
            if kinds[v] != "leaf":
                continue
            raw = _encode(graph, nbrs[v][0], v)
            canon = _canon_plant(raw)
            if canon is None:
                return None, 1
            cp, s = canon
            key = f"{colors[v]:03d}:{_plant_key(cp)}"
            if best_key is None or key < best_key:
                best_key = key
                best = (colors[v], cp)
                signs = {s}
            elif key == best_key:
                signs.add(s)
        if len(signs) == 2:
            return None, 1
        tree = cls(genus, best[0], best[1])
        return tree, signs.pop()

    @property
    def key(self) -> str:
        return f"{self.root_color:03d}:{_plant_key(self.plant)}"

    def graph(self):
        if self._gr is None:
            self._gr = _graph_of(self.root_color, self.plant)
        return self._gr

    @property
    def degree(self) -> int:
        """Internal degree: the number of trivalent vertices."""
        kinds = self.graph()[0]
        return sum(1 for k in kinds if k == "int")

    def leaf_ids(self) -> list[int]:
        kinds = self.graph()[0]
        return [v for v in range(len(kinds)) if kinds[v] == "leaf"]

    def color_of(self, v: int) -> int:
        kinds, colors, _ = self.graph()
        if kinds[v] != "leaf":
            raise ValueError(f"vertex {v} is not a leaf")
        return colors[v]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TreeDiagram) and self.genus == other.genus
                and self.key == other.key)

    def __hash__(self) -> int:
        return hash((self.genus, self.key))

    def __repr__(self) -> str:
        return tree_text(self)


def _nested_series(genus: int, nested: Plant, cap: int) -> LieSeries:
    if isinstance(nested, int):
        return LieSeries.gen(genus, cap, nested)
    return _nested_series(genus, nested[0], cap).bracket(
        _nested_series(genus, nested[1], cap))


def comm(t: TreeDiagram, root: int) -> LieSeries:
    """Iterated bracket of t rooted at the leaf `root` (its color excluded)."""
    kinds, _, nbrs = t.graph()
    if root < 0 or root >= len(kinds) or kinds[root] != "leaf":
        raise ValueError(f"vertex {root} is not a leaf")
    nested = _encode(t.graph(), nbrs[root][0], root)
    cap = len(t.leaf_ids()) - 1
    return _nested_series(t.genus, nested, cap)


class TreeCombo:
    """Rational combination of canonical diagrams; keys are canonical strings."""

    __slots__ = ("genus", "terms")

    def __init__(self, genus: int,
                 terms: Mapping[str, tuple[TreeDiagram, Fraction]] | None = None):
        self.genus = genus
        self.terms = {k: (t, c) for k, (t, c) in (terms or {}).items() if c}

    @classmethod
    def zero(cls, genus: int) -> "TreeCombo":
        return cls(genus)

    @classmethod
    def from_terms(cls, genus: int,
                   raw: Iterable[tuple[Fraction, int, Plant]]) -> "TreeCombo":
        acc: dict[str, tuple[TreeDiagram, Fraction]] = {}
        for coeff, root_color, plant in raw:
            tree, sign = TreeDiagram.build(genus, root_color, plant)
            if tree is None:
                continue
            c = Fraction(coeff) * sign
            if tree.key in acc:
                c += acc[tree.key][1]
            if c:
                acc[tree.key] = (tree, c)
            else:
                acc.pop(tree.key, None)
        return cls(genus, acc)

    @classmethod
    def single(cls, tree: TreeDiagram, coeff=ONE) -> "TreeCombo":
        c = Fraction(coeff)
        if not c:
            return cls(tree.genus)
        return cls(tree.genus, {tree.key: (tree, c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> list[int]:
        return sorted({t.degree for t, _ in self.terms.values()})

    def graded_part(self, d: int) -> "TreeCombo":
        return TreeCombo(self.genus, {k: (t, c) for k, (t, c) in self.terms.items()
                                      if t.degree == d})

    def __add__(self, other: "TreeCombo") -> "TreeCombo":
        if self.genus != other.genus:
            raise ValueError("mismatched genus")
        acc = dict(self.terms)
        for k, (t, c) in other.terms.items():
            nc = acc[k][1] + c if k in acc else c
            if nc:
                acc[k] = (t, nc)
            else:
                acc.pop(k, None)
        return TreeCombo(self.genus, acc)

    def __neg__(self) -> "TreeCombo":
        return TreeCombo(self.genus,
                         {k: (t, -c) for k, (t, c) in self.terms.items()})

    def __sub__(self, other: "TreeCombo") -> "TreeCombo":
        return self + (-other)

    def __rmul__(self, scalar) -> "TreeCombo":
        s = Fraction(scalar)
        return TreeCombo(self.genus,
                         {k: (t, c * s) for k, (t, c) in self.terms.items()} if s else {})

    __mul__ = __rmul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeCombo):
            return NotImplemented
        return tree_equal(self, other)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"({c})*{tree_text(t)}"
                for _, (t, c) in sorted(self.terms.items())]
        return " + ".join(bits)


class HLieTensor:
    """Element of H tensor L, keyed by (letter, Lyndon word), graded by
    tree degree = bracket length minus 1."""

    __slots__ = ("genus", "coords")

    def __init__(self, genus: int,
                 coords: Mapping[tuple[int, Word], Fraction] | None = None):
        n = gen_count(genus)
        clean: dict[tuple[int, Word], Fraction] = {}
        for (h, w), c in (coords or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if not 0 <= h < n or any(not 0 <= x < n for x in w):
                raise ValueError("letter out of range")
            clean[(h, w)] = c
        self.genus = genus
        self.coords = clean

    @classmethod
    def zero(cls, genus: int) -> "HLieTensor":
        return cls(genus)

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, HLieTensor) and self.genus == other.genus
                and self.coords == other.coords)

    def __add__(self, other: "HLieTensor") -> "HLieTensor":
        if self.genus != other.genus:
            raise ValueError("mismatched genus")
        acc = dict(self.coords)
        for k, c in other.coords.items():
            nv = acc.get(k, 0) + c
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
        return HLieTensor(self.genus, acc)

    def __neg__(self) -> "HLieTensor":
        return HLieTensor(self.genus, {k: -c for k, c in self.coords.items()})

    def __sub__(self, other: "HLieTensor") -> "HLieTensor":
        return self + (-other)

    def __rmul__(self, scalar) -> "HLieTensor":
        s = Fraction(scalar)
        return HLieTensor(self.genus,
                          {k: c * s for k, c in self.coords.items()} if s else {})

    __mul__ = __rmul__

    def degrees(self) -> list[int]:
        return sorted({len(w) - 1 for _, w in self.coords})

    def graded_part(self, d: int) -> "HLieTensor":
        return HLieTensor(self.genus, {(h, w): c for (h, w), c in self.coords.items()
                                       if len(w) - 1 == d})

    def bracket_contraction(self) -> LieSeries:
        """Image under (h, u) -> [h, u]; zero exactly on the D subspaces."""
        cap = max((len(w) + 1 for _, w in self.coords), default=1)
        acc: dict[Word, Fraction] = {}
        for (h, w), c in self.coords.items():
            for u, cu in bracket_basis((h,), w).items():
                nv = acc.get(u, 0) + c * cu
                if nv:
                    acc[u] = nv
                else:
                    del acc[u]
        return LieSeries(self.genus, cap, acc)

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        bits = []
        for (h, w), c in sorted(self.coords.items(),
                                key=lambda t: (len(t[0][1]), t[0])):
            word = ".".join(letter_label(x) for x in w)
            bits.append(f"({c})*{letter_label(h)}(x){word}")
        return " + ".join(bits)


def fission(c: TreeCombo, nilpotency_class: int | None = None):
    """Sum over trivalent vertices of the wedge of the three rooted-subtree
    brackets, read in the cyclic order at the vertex."""
    from . import koszul
    degs = c.degrees()
    if not degs:
        if nilpotency_class is None:
            nilpotency_class = 1
        return koszul.WedgeChain(c.genus, nilpotency_class, 3)
    if degs[0] < 1:
        raise ValueError("fission needs internal degree >= 1 (no struts)")
    if nilpotency_class is None:
        nilpotency_class = degs[-1] + 1
    terms = []
    for _, (tree, coeff) in sorted(c.terms.items()):
        kinds, _, nbrs = tree.graph()
        nleaves = len(tree.leaf_ids())
        for v in range(len(kinds)):
            if kinds[v] != "int":
                continue
            vals = [_nested_series(tree.genus, _encode(tree.graph(), u, v),
                                   nleaves)
                    for u in nbrs[v]]
            for w0, c0 in vals[0].coords.items():
                for w1, c1 in vals[1].coords.items():
                    for w2, c2 in vals[2].coords.items():
                        terms.append(((w0, w1, w2), coeff * c0 * c1 * c2))
    return koszul.wedge_chain_from_terms(c.genus, nilpotency_class, 3, terms)


def eta(c: TreeCombo) -> HLieTensor:
    """Sum over leaves of color tensor bracket-of-the-rest."""
    acc: dict[tuple[int, Word], Fraction] = {}
    for _, (tree, coeff) in c.terms.items():
        graph = tree.graph()
        kinds, colors, nbrs = graph
        cap = len(tree.leaf_ids()) - 1
        for v in range(len(kinds)):
            if kinds[v] != "leaf":
                continue
            val = _nested_series(tree.genus, _encode(graph, nbrs[v][0], v), cap)
            for w, cw in val.coords.items():
                k = (colors[v], w)
                nv = acc.get(k, 0) + coeff * cw
                if nv:
                    acc[k] = nv
                else:
                    del acc[k]
    return HLieTensor(c.genus, acc)


def tree_equal(x: TreeCombo, y: TreeCombo) -> bool:
    """Semantic equality modulo AS/IHX, decided through eta."""
    if x.genus != y.genus:
        raise ValueError("mismatched genus")
    return eta(x) == eta(y)


def _weight_of(letters: Iterable[int], genus: int) -> tuple[int, ...]:
    counts = [0] * gen_count(genus)
    for x in letters:
        counts[x] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def tree_space_dim(genus: int, d: int) -> int:
    """dim of ker([-,-]: H (x) L_{d+1} -> L_{d+2}), computed by rank."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    n = gen_count(genus)
    basis = lyndon_basis(genus, d + 1)
    by_weight: dict[tuple[int, ...], list[dict]] = {}
    total_cols = 0
    for h in range(n):
        for w in basis:
            total_cols += 1
            col = dict(bracket_basis((h,), w))
            mu = _weight_of((h,) + w, genus)
            by_weight.setdefault(mu, []).append(col)
    rank = sum(rank_of_columns(cols) for cols in by_weight.values())
    return total_cols - rank


def _caterpillar(colors: tuple[int, ...]) -> tuple[int, Plant]:
    plant: Plant = colors[1]
    for x in colors[2:]:
        plant = (plant, x)
    return colors[0], plant


@lru_cache(maxsize=None)
def _eta_solvers(genus: int, d: int):
    """Per-weight solvers for eta on caterpillar trees of degree d.

    Completeness of the caterpillar family is certified by comparing the
    total achieved rank with tree_space_dim.
    """
    n = gen_count(genus)
    columns: dict[tuple[int, ...], list[tuple[tuple[int, ...], dict]]] = {}
    for colors in product(range(n), repeat=d + 2):
        root, plant = _caterpillar(colors)
        combo = TreeCombo.from_terms(genus, [(ONE, root, plant)])
        col = eta(combo).coords
        mu = _weight_of(colors, genus)
        columns.setdefault(mu, []).append((colors, dict(col)))
    rows_by_weight: dict[tuple[int, ...], list] = {}
    for h in range(n):
        for w in lyndon_basis(genus, d + 1):
            mu = _weight_of((h,) + w, genus)
            rows_by_weight.setdefault(mu, []).append((h, w))
    solvers = {}
    total_rank = 0
    for mu, cols in sorted(columns.items()):
        row_keys = sorted(rows_by_weight.get(mu, []))
        if not row_keys:
            continue
        solver = BlockSolver(row_keys, [c for _, c in cols])
        total_rank += solver.rank
        solvers[mu] = (solver, [colors for colors, _ in cols])
    if total_rank != tree_space_dim(genus, d):
        raise RuntimeError(
            f"caterpillar family does not span tree space at degree {d}")
    return solvers


def eta_inverse(x: HLieTensor, d: int) -> TreeCombo:
    """Preimage of x under eta, on caterpillar trees.

    x must be homogeneous of tree degree d and lie in the bracket kernel.
    """
    if any(len(w) - 1 != d for _, w in x.coords):
        raise ValueError(f"input not homogeneous of tree degree {d}")
    if not x.bracket_contraction().is_zero():
        raise ValueError("input not in the bracket kernel")
    if x.is_zero():
        return TreeCombo.zero(x.genus)
    solvers = _eta_solvers(x.genus, d)
    blocks: dict[tuple[int, ...], dict] = {}
    for (h, w), c in x.coords.items():
        mu = _weight_of((h,) + w, x.genus)
        blocks.setdefault(mu, {})[(h, w)] = c
    raw = []
    for mu, rhs in sorted(blocks.items()):
        if mu not in solvers:
            raise RuntimeError("kernel element outside the certified span")
        solver, color_list = solvers[mu]
        sol = solver.solve(rhs)
        if sol is None:
            raise RuntimeError("kernel element outside the certified span")
        for colors, coeff in zip(color_list, sol):
            if coeff:
                root, plant = _caterpillar(colors)
                raw.append((coeff, root, plant))
    return TreeCombo.from_terms(x.genus, raw)


def ihx_combination(genus: int, g: int, h: int, k: int, l: int) -> TreeCombo:
    """The IHX relator on four colors: eta-trivial, and its fission is the
    Koszul boundary of the wedge of the colors."""
    return TreeCombo.from_terms(genus, [
        (ONE, g, (k, (h, l))),
        (-ONE, g, (h, (k, l))),
        (-ONE, g, (l, (h, k))),
    ])


def random_tree(genus: int, degree: int, rng) -> TreeCombo:
    """One random canonical diagram of the given internal degree.

    Prefers a diagram with nonzero eta image; at small genus and degree
    the relations can kill every candidate, in which case the first
    nonzero canonical diagram (or the zero combination) is returned.
    """

    def rand_plant(m: int) -> Plant:
        if m == 1:
            return rng.randrange(gen_count(genus))
        i = rng.randint(1, m - 1)
        return (rand_plant(i), rand_plant(m - i))

    fallback = None
    for _ in range(600):
        root = rng.randrange(gen_count(genus))
        combo = TreeCombo.from_terms(genus, [(ONE, root, rand_plant(degree + 1))])
        if not combo:
            continue
        if not eta(combo).is_zero():
            return combo
        if fallback is None:
            fallback = combo
    return fallback if fallback is not None else TreeCombo.zero(genus)


# ---------------------------------------------------------------------------
# text form: "(root (sub sub))", written order = cyclic order


def tree_text(t: TreeDiagram) -> str:
    def plant_text(p: Plant) -> str:
        if isinstance(p, int):
            return letter_label(p)
        return f"({plant_text(p[0])} {plant_text(p[1])})"

    return f"({letter_label(t.root_color)} {plant_text(t.plant)})"


def parse_tree_text(text: str, genus: int) -> tuple[int, Plant]:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Plant:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            left = parse()
            right = parse()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("unbalanced parentheses in tree expression")
            pos += 1
            return (left, right)
        if tok == ")":
            raise ValueError("unexpected ')' in tree expression")
        return parse_letter(tok, genus)

    node = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in tree expression")
    if isinstance(node, int):
        raise ValueError("a tree needs at least two leaves")
    root, plant = node
    if not isinstance(root, int):
        raise ValueError("the first entry must be the root leaf color")
    return root, plant
