"""Koszul complex of the free nilpotent Lie algebra L/L_{>k}.

Chains are wedge powers of the truncated free Lie algebra over the
Lyndon basis, with monomials kept sorted (basis order: length, then
word) and signs normalized.  The boundary takes each pair of wedge
factors to their bracket.  Everything is computed blockwise: monomials
split by their total letter count vector (weight), brackets preserve
weights, and each weight block is small even when the degree block is
not.  Homology dimensions come from exact ranks, canonical H3
coordinates from echelonized kernel/image bases fixed per block, and
repeated boundary solves reuse cached elimination transforms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .exact_linalg import (BlockSolver, MatrixQ, _eliminate, echelon_reduce,
                           kernel_basis, rank_of_columns)
from .free_lie import Word, bracket_basis, gen_count, letter_label, lyndon_basis

ONE = Fraction(1)
Monomial = tuple[Word, ...]


def _wkey(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def _normalize(words: Iterable[Word]) -> tuple[Monomial | None, int]:
    """Sort wedge factors by basis order; sign = permutation parity."""
    lst = list(words)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and _wkey(lst[j]) < _wkey(lst[j - 1]):
            lst[j], lst[j - 1] = lst[j - 1], lst[j]
            sign = -sign
            j -= 1
    for i in range(1, len(lst)):
        if lst[i] == lst[i - 1]:
            return None, 1
    return tuple(lst), sign


class WedgeChain:
    """Element of Lambda^n(L/L_{>k}); coords on sorted wedge monomials."""

    __slots__ = ("genus", "nilpotency_class", "arity", "coords")

    def __init__(self, genus: int, nilpotency_class: int, arity: int,
                 coords: Mapping[Monomial, Fraction] | None = None):
        if nilpotency_class < 1 or arity < 0:
            raise ValueError("bad context")
        self.genus = genus
        self.nilpotency_class = nilpotency_class
        self.arity = arity
        clean: dict[Monomial, Fraction] = {}
        for mon, c in (coords or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if len(mon) != arity:
                raise ValueError("monomial arity mismatch")
            if any(len(w) > nilpotency_class for w in mon):
                raise ValueError("wedge factor above the nilpotency class")
            clean[mon] = c
        self.coords = clean

    @classmethod
    def zero(cls, genus: int, nilpotency_class: int, arity: int) -> "WedgeChain":
        return cls(genus, nilpotency_class, arity)

    def _check(self, other: "WedgeChain") -> None:
        if (self.genus != other.genus or self.arity != other.arity
                or self.nilpotency_class != other.nilpotency_class):
            raise ValueError("mismatched wedge context")

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, WedgeChain) and self.genus == other.genus
                and self.nilpotency_class == other.nilpotency_class
                and self.arity == other.arity and self.coords == other.coords)

    def __add__(self, other: "WedgeChain") -> "WedgeChain":
        self._check(other)
        acc = dict(self.coords)
        for mon, c in other.coords.items():
            nv = acc.get(mon, 0) + c
            if nv:
                acc[mon] = nv
            else:
                acc.pop(mon, None)
        return WedgeChain(self.genus, self.nilpotency_class, self.arity, acc)

    def __neg__(self) -> "WedgeChain":
        return WedgeChain(self.genus, self.nilpotency_class, self.arity,
                          {m: -c for m, c in self.coords.items()})

    def __sub__(self, other: "WedgeChain") -> "WedgeChain":
        return self + (-other)

    def __rmul__(self, scalar) -> "WedgeChain":
        s = Fraction(scalar)
        return WedgeChain(self.genus, self.nilpotency_class, self.arity,
                          {m: c * s for m, c in self.coords.items()} if s else {})

    __mul__ = __rmul__

    def degrees(self) -> list[int]:
        return sorted({sum(len(w) for w in m) for m in self.coords})

    def graded_part(self, d: int) -> "WedgeChain":
        return WedgeChain(self.genus, self.nilpotency_class, self.arity,
                          {m: c for m, c in self.coords.items()
                           if sum(len(w) for w in m) == d})

    def reduced_to(self, k: int) -> "WedgeChain":
        """Reduction modulo L_{>k}: drop monomials with a long factor."""
        return WedgeChain(self.genus, k, self.arity,
                          {m: c for m, c in self.coords.items()
                           if all(len(w) <= k for w in m)})

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        bits = []
        for mon, c in sorted(self.coords.items(),
                             key=lambda t: tuple(_wkey(w) for w in t[0])):
            mtxt = " ^ ".join(".".join(letter_label(x) for x in w) for w in mon)
            bits.append(f"({c})*{mtxt}")
        return " + ".join(bits)


def wedge_chain_from_terms(genus: int, nilpotency_class: int, arity: int,
                           terms: Iterable[tuple[Monomial, Fraction]]) -> WedgeChain:
    """Build a chain from unnormalized monomials, folding signs and
    dropping factors above the nilpotency class."""
    acc: dict[Monomial, Fraction] = {}
    for mon, c in terms:
        if len(mon) != arity:
            raise ValueError("monomial arity mismatch")
        if not c or any(len(w) > nilpotency_class for w in mon):
            continue
        norm, sign = _normalize(mon)
        if norm is None:
            continue
        nv = acc.get(norm, 0) + Fraction(c) * sign
        if nv:
            acc[norm] = nv
        else:
            del acc[norm]
    return WedgeChain(genus, nilpotency_class, arity, acc)


@lru_cache(maxsize=None)
def _monomial_boundary(genus: int, k: int,
                       mon: Monomial) -> Mapping[Monomial, Fraction]:
    """Boundary of a single wedge monomial, over normalized monomials."""
    acc: dict[Monomial, Fraction] = {}
    n = len(mon)
    for p in range(n):
        for q in range(p + 1, n):
            sign = -1 if (p + q) % 2 else 1
            rest = mon[:p] + mon[p + 1:q] + mon[q + 1:]
            for u, cu in bracket_basis(mon[p], mon[q]).items():
                if len(u) > k:
                    continue
                norm, s2 = _normalize((u,) + rest)
                if norm is None:
                    continue
                nv = acc.get(norm, 0) + cu * sign * s2
                if nv:
                    acc[norm] = nv
                else:
                    del acc[norm]
    return acc


def boundary(c: WedgeChain) -> WedgeChain:
    """Koszul boundary: sum over factor pairs of bracket wedge rest, with
    the (-1)^(i+j) sign of the displayed convention."""
    if c.arity < 1:
        raise ValueError("boundary needs arity >= 1")
    acc: dict[Monomial, Fraction] = {}
    for mon, coeff in c.coords.items():
        for norm, v in _monomial_boundary(c.genus, c.nilpotency_class, mon).items():
            nv = acc.get(norm, 0) + coeff * v
            if nv:
                acc[norm] = nv
            else:
                acc.pop(norm, None)
    return WedgeChain(c.genus, c.nilpotency_class, c.arity - 1, acc)


# ---------------------------------------------------------------------------
# weight-blocked bases


def _word_weight(w: Word, genus: int) -> tuple[int, ...]:
    counts = [0] * gen_count(genus)
    for x in w:
        counts[x] += 1
    return tuple(counts)


def _monomial_weight(mon: Monomial, genus: int) -> tuple[int, ...]:
    counts = [0] * gen_count(genus)
    for w in mon:
        for x in w:
            counts[x] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def _graded_basis(genus: int, k: int) -> list[Word]:
    out: list[Word] = []
    for d in range(1, k + 1):
        out.extend(lyndon_basis(genus, d))
    return out


@lru_cache(maxsize=None)
def _weights_of_degree(genus: int, d: int) -> list[tuple[int, ...]]:
    n = gen_count(genus)

    def rec(slots: int, remaining: int):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining + 1):
            for rest in rec(slots - 1, remaining - first):
                yield (first,) + rest

    return sorted(rec(n, d))


@lru_cache(maxsize=None)
def _monomials(genus: int, k: int, arity: int,
               mu: tuple[int, ...]) -> list[Monomial]:
    """Sorted wedge monomials of the exact letter-count vector mu."""
    basis = _graded_basis(genus, k)
    weights = [_word_weight(w, genus) for w in basis]
    out: list[Monomial] = []

    def rec(start: int, remaining: tuple[int, ...], chosen: list[Word]):
        if len(chosen) == arity:
            if not any(remaining):
                out.append(tuple(chosen))
            return
        slots = arity - len(chosen)
        if sum(remaining) < slots:
            return
        for i in range(start, len(basis)):
            wt = weights[i]
            if all(a <= b for a, b in zip(wt, remaining)):
                chosen.append(basis[i])
                rec(i + 1, tuple(b - a for a, b in zip(wt, remaining)), chosen)
                chosen.pop()

    rec(0, mu, [])
    return out


@lru_cache(maxsize=None)
def _block_rank(genus: int, k: int, arity: int, mu: tuple[int, ...]) -> int:
    """Rank of the boundary restricted to the (arity, mu) block."""
    mons = _monomials(genus, k, arity, mu)
    if not mons or arity < 2:
        return 0
    target_index: dict[Monomial, int] = {}
    rows: list[dict[int, Fraction]] = []
    row_of: dict[Monomial, dict[int, Fraction]] = {}
    for j, mon in enumerate(mons):
        for tgt, v in _monomial_boundary(genus, k, mon).items():
            if tgt not in row_of:
                row_of[tgt] = {}
                rows.append(row_of[tgt])
            row_of[tgt][j] = v
    rank, _ = _eliminate(rows, len(mons))
    return rank


def homology_dims(genus: int, k: int, n: int) -> dict[int, int]:
    """Nonzero dimensions of H_n(L/L_{>k}) per total degree."""
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    out: dict[int, int] = {}
    for d in range(n, n * k + 1):
        dim = 0
        rank_n = 0
        rank_up = 0
        for mu in _weights_of_degree(genus, d):
            dim += len(_monomials(genus, k, n, mu))
            rank_n += _block_rank(genus, k, n, mu)
            rank_up += _block_rank(genus, k, n + 1, mu)
        h = dim - rank_n - rank_up
        if h:
            out[d] = h
    return out


# ---------------------------------------------------------------------------
# canonical H3 coordinates


def _reduce_dense(v: list[Fraction], basis: list[list[Fraction]],
                  pivots: list[int]) -> list[Fraction]:
    for bvec, p in zip(basis, pivots):
        f = v[p]
        if f:
            for j, bj in enumerate(bvec):
                if bj:
                    v[j] -= f * bj
    return v


@lru_cache(maxsize=None)
def _h3_structure(genus: int, k: int, mu: tuple[int, ...]):
    """(monomial index, im-d4 echelon, quotient echelon) for one block."""
    mon3 = _monomials(genus, k, 3, mu)
    if not mon3:
        return None
    index = {m: i for i, m in enumerate(mon3)}
    length = len(mon3)
    mon4 = _monomials(genus, k, 4, mu)
    im_vecs = []
    for m in mon4:
        v = [Fraction(0)] * length
        for tgt, c in _monomial_boundary(genus, k, m).items():
            v[index[tgt]] = c
        im_vecs.append(v)
    im_basis, im_pivots = echelon_reduce(im_vecs, length)

    mon2 = _monomials(genus, k, 2, mu)
    idx2 = {m: i for i, m in enumerate(mon2)}
    rows: list[dict[int, Fraction]] = [dict() for _ in mon2]
    for j, m in enumerate(mon3):
        for tgt, c in _monomial_boundary(genus, k, m).items():
            rows[idx2[tgt]][j] = c
    entries = {}
    for i, r in enumerate(rows):
        for j, v in r.items():
            entries[(i, j)] = v
    ker = kernel_basis(MatrixQ(len(mon2), length, entries))
    reduced = [_reduce_dense(list(v), im_basis, im_pivots) for v in ker]
    q_basis, q_pivots = echelon_reduce(reduced, length)
    return index, (im_basis, im_pivots), (q_basis, q_pivots)


@lru_cache(maxsize=None)
def _quotient_layout(genus: int, k: int, d: int):
    """Offsets of each weight block inside the degree-d H3 coordinates."""
    layout = []
    offset = 0
    for mu in _weights_of_degree(genus, d):
        st = _h3_structure(genus, k, mu)
        dim = len(st[2][0]) if st else 0
        if dim:
            layout.append((mu, dim, offset))
            offset += dim
    return layout, offset


class HomologyClass:
    """Canonical H3 coordinates, graded by total degree."""

    __slots__ = ("genus", "nilpotency_class", "parts")

    def __init__(self, genus: int, nilpotency_class: int,
                 parts: Mapping[int, tuple] | None = None):
        self.genus = genus
        self.nilpotency_class = nilpotency_class
        self.parts = {d: tuple(t) for d, t in (parts or {}).items()
                      if any(t)}

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def _check(self, other: "HomologyClass") -> None:
        if (self.genus != other.genus
                or self.nilpotency_class != other.nilpotency_class):
            raise ValueError("mismatched homology context")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, HomologyClass) and self.genus == other.genus
                and self.nilpotency_class == other.nilpotency_class
                and self.parts == other.parts)

    def _merge(self, other: "HomologyClass", sign: int) -> "HomologyClass":
        self._check(other)
        parts: dict[int, tuple] = {}
        for d in sorted(set(self.parts) | set(other.parts)):
            x = self.parts.get(d)
            y = other.parts.get(d)
            if x is None:
                x = (Fraction(0),) * len(y)
            if y is None:
                y = (Fraction(0),) * len(x)
            if len(x) != len(y):
                raise ValueError("inconsistent coordinate layouts")
            parts[d] = tuple(a + sign * b for a, b in zip(x, y))
        return HomologyClass(self.genus, self.nilpotency_class, parts)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return self._merge(other, 1)

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self._merge(other, -1)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.genus, self.nilpotency_class,
                             {d: tuple(-c for c in t)
                              for d, t in self.parts.items()})

    def __repr__(self) -> str:
        if not self.parts:
            return "0"
        bits = [f"deg {d}: ({', '.join(str(c) for c in t)})"
                for d, t in sorted(self.parts.items())]
        return "; ".join(bits)


def class_of(z: WedgeChain, n: int = 3) -> HomologyClass:
    """Canonical coordinates of a 3-cycle in ker/im."""
    if z.arity != n or n != 3:
        raise ValueError("class_of handles arity-3 chains")
    if not boundary(z).is_zero():
        raise ValueError("input chain is not a cycle")
    genus, k = z.genus, z.nilpotency_class
    blocks: dict[tuple[int, ...], dict[Monomial, Fraction]] = {}
    for mon, c in z.coords.items():
        mu = _monomial_weight(mon, genus)
        blocks.setdefault(mu, {})[mon] = c
    per_degree: dict[int, dict[tuple[int, ...], tuple]] = {}
    for mu, coords in blocks.items():
        st = _h3_structure(genus, k, mu)
        if st is None:
            raise RuntimeError("cycle monomial outside the enumerated basis")
        index, (im_basis, im_pivots), (q_basis, q_pivots) = st
        v = [Fraction(0)] * len(index)
        for mon, c in coords.items():
            v[index[mon]] = c
        v = _reduce_dense(v, im_basis, im_pivots)
        coeffs = []
        for qvec, p in zip(q_basis, q_pivots):
            c = v[p]
            coeffs.append(c)
            if c:
                for j, qj in enumerate(qvec):
                    if qj:
                        v[j] -= c * qj
        if any(v):
            raise RuntimeError("cycle reduction left a nonzero remainder")
        if any(coeffs):
            per_degree.setdefault(sum(mu), {})[mu] = tuple(coeffs)
    parts: dict[int, tuple] = {}
    for d, by_mu in per_degree.items():
        layout, total = _quotient_layout(genus, k, d)
        vec = [Fraction(0)] * total
        for mu, dim, offset in layout:
            t = by_mu.get(mu)
            if t:
                vec[offset:offset + dim] = list(t)
        parts[d] = tuple(vec)
    return HomologyClass(genus, k, parts)


@lru_cache(maxsize=None)
def _d3_solver(genus: int, k: int, mu: tuple[int, ...]):
    mon3 = _monomials(genus, k, 3, mu)
    if not mon3:
        return None
    mon2 = _monomials(genus, k, 2, mu)
    cols = [dict(_monomial_boundary(genus, k, m)) for m in mon3]
    return BlockSolver(mon2, cols), mon3


def solve_boundary3(z: WedgeChain) -> WedgeChain:
    """Some t with boundary(t) = z for an arity-2 cycle z; cached per block."""
    if z.arity != 2:
        raise ValueError("solve_boundary3 takes arity-2 chains")
    genus, k = z.genus, z.nilpotency_class
    blocks: dict[tuple[int, ...], dict[Monomial, Fraction]] = {}
    for mon, c in z.coords.items():
        mu = _monomial_weight(mon, genus)
        blocks.setdefault(mu, {})[mon] = c
    acc: dict[Monomial, Fraction] = {}
    for mu, rhs in sorted(blocks.items()):
        pack = _d3_solver(genus, k, mu)
        if pack is None:
            raise RuntimeError("2-cycle block admits no 3-chains")
        solver, mon3 = pack
        sol = solver.solve(rhs)
        if sol is None:
            raise RuntimeError("2-cycle is not a 3-boundary")
        for m, c in zip(mon3, sol):
            if c:
                acc[m] = c
    return WedgeChain(genus, k, 3, acc)


def capital_phi(c, k: int) -> HomologyClass:
    """H3 class of the reduced fission of a tree combination.

    Degrees below k are rejected; degrees 2k and above are allowed and
    land in the zero class.
    """
    from .jacobi import TreeCombo, fission
    if not isinstance(c, TreeCombo):
        raise TypeError("capital_phi takes a TreeCombo")
    degs = c.degrees()
    if degs and degs[0] < k:
        raise ValueError(f"tree degree {degs[0]} below the class bound {k}")
    if not degs:
        return HomologyClass(c.genus, k)
    z = fission(c, nilpotency_class=k)
    return class_of(z)


def phi_matrix_rank(genus: int, k: int) -> int:
    """Rank of capital_phi on the caterpillar spanning family of degrees
    [k, 2k)."""
    from .jacobi import TreeCombo, _caterpillar
    n = gen_count(genus)
    seen: set[str] = set()
    columns = []
    for d in range(k, 2 * k):
        for colors in product(range(n), repeat=d + 2):
            root, plant = _caterpillar(colors)
            combo = TreeCombo.from_terms(genus, [(ONE, root, plant)])
            if not combo:
                continue
            key = next(iter(combo.terms))
            if key in seen:
                continue
            seen.add(key)
            cls = capital_phi(combo, k)
            col = {(d2, i): v for d2, t in cls.parts.items()
                   for i, v in enumerate(t) if v}
            columns.append(col)
    return rank_of_columns(columns)
