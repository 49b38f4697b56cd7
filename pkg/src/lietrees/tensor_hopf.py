"""Truncated tensor algebra on H with its Hopf structure.

Words over the 2g letters with rational coefficients, product by
concatenation, everything above the truncation degree discarded.  The
coproduct declares every generator primitive and is extended
multiplicatively, so a word splits as the sum over all ways of dividing
its letter positions into two subsequences.  Under this structure the
primitive part is exactly the image of the free Lie algebra, which is
what makes this module an independent oracle for `free_lie`: embed_lie
expands canonical bracketings by pure tensor arithmetic, and project_lie
comes back through the Dynkin idempotent (left-bracketing map over n).

Also hosts free group words and expansions (multiplicative maps from the
surface group into the unit group of the tensor algebra).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, NamedTuple

from .free_lie import (LieSeries, Word, bracket_basis, gen_count,
                       letter_label, std_factorization)

ONE = Fraction(1)


def _merge(acc: dict, terms: Mapping, factor: Fraction) -> None:
    for k, c in terms.items():
        nv = acc.get(k, 0) + c * factor
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class TensorSeries:
    """Element of T(H) truncated above max_degree; coords word -> Fraction."""

    __slots__ = ("genus", "max_degree", "coords")

    def __init__(self, genus: int, max_degree: int,
                 coords: Mapping[Word, Fraction] | None = None):
        if genus < 0 or max_degree < 1:
            raise ValueError("bad context")
        self.genus = genus
        self.max_degree = max_degree
        n = gen_count(genus)
        clean: dict[Word, Fraction] = {}
        for w, c in (coords or {}).items():
            c = Fraction(c)
            if not c or len(w) > max_degree:
                continue
            if any(not 0 <= x < n for x in w):
                raise ValueError(f"letter out of range in word {w}")
            clean[w] = c
        self.coords = clean

    @classmethod
    def zero(cls, genus: int, max_degree: int) -> "TensorSeries":
        return cls(genus, max_degree)

    @classmethod
    def one(cls, genus: int, max_degree: int) -> "TensorSeries":
        return cls(genus, max_degree, {(): ONE})

    @classmethod
    def gen(cls, genus: int, max_degree: int, letter: int) -> "TensorSeries":
        return cls(genus, max_degree, {(letter,): ONE})

    def _check(self, other: "TensorSeries") -> None:
        if self.genus != other.genus or self.max_degree != other.max_degree:
            raise ValueError("mismatched context (genus or truncation degree)")

    def __bool__(self) -> bool:
        return bool(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TensorSeries) and self.genus == other.genus
                and self.max_degree == other.max_degree
                and self.coords == other.coords)

    def __add__(self, other: "TensorSeries") -> "TensorSeries":
        self._check(other)
        out = dict(self.coords)
        _merge(out, other.coords, ONE)
        return TensorSeries(self.genus, self.max_degree, out)

    def __sub__(self, other: "TensorSeries") -> "TensorSeries":
        self._check(other)
        out = dict(self.coords)
        _merge(out, other.coords, -ONE)
        return TensorSeries(self.genus, self.max_degree, out)

    def __neg__(self) -> "TensorSeries":
        return TensorSeries(self.genus, self.max_degree,
                            {w: -c for w, c in self.coords.items()})

    def __rmul__(self, scalar) -> "TensorSeries":
        s = Fraction(scalar)
        return TensorSeries(self.genus, self.max_degree,
                            {w: c * s for w, c in self.coords.items()})

    __mul__ = __rmul__

    def constant_term(self) -> Fraction:
        return self.coords.get((), Fraction(0))

    def graded_part(self, d: int) -> "TensorSeries":
        return TensorSeries(self.genus, self.max_degree,
                            {w: c for w, c in self.coords.items() if len(w) == d})

    def min_degree(self) -> int | None:
        return min((len(w) for w in self.coords), default=None)

    def truncated(self, n: int) -> "TensorSeries":
        return TensorSeries(self.genus, n,
                            {w: c for w, c in self.coords.items() if len(w) <= n})

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        bits = []
        for w, c in sorted(self.coords.items(), key=lambda t: (len(t[0]), t[0])):
            label = ".".join(letter_label(x) for x in w) if w else "1"
            bits.append(f"({c})*{label}")
        return " + ".join(bits)


def mul(x: TensorSeries, y: TensorSeries) -> TensorSeries:
    """Concatenation product, truncated."""
    x._check(y)
    n = x.max_degree
    out: dict[Word, Fraction] = {}
    by_len: dict[int, list[tuple[Word, Fraction]]] = {}
    for w, c in y.coords.items():
        by_len.setdefault(len(w), []).append((w, c))
    for wu, cu in x.coords.items():
        room = n - len(wu)
        if room < 0:
            continue
        for ly, terms in by_len.items():
            if ly > room:
                continue
            for wv, cv in terms:
                k = wu + wv
                nv = out.get(k, 0) + cu * cv
                if nv:
                    out[k] = nv
                else:
                    del out[k]
    return TensorSeries(x.genus, x.max_degree, out)


def exp(x: TensorSeries) -> TensorSeries:
    if x.constant_term():
        raise ValueError("exp needs a zero constant term")
    acc = TensorSeries.one(x.genus, x.max_degree)
    term = TensorSeries.one(x.genus, x.max_degree)
    for k in range(1, x.max_degree + 1):
        term = Fraction(1, k) * mul(term, x)
        if term.is_zero():
            break
        acc = acc + term
    return acc


def log(x: TensorSeries) -> TensorSeries:
    if x.constant_term() != 1:
        raise ValueError("log needs constant term 1")
    u = x - TensorSeries.one(x.genus, x.max_degree)
    acc = TensorSeries.zero(x.genus, x.max_degree)
    power = TensorSeries.one(x.genus, x.max_degree)
    for k in range(1, x.max_degree + 1):
        power = mul(power, u)
        if power.is_zero():
            break
        acc = acc + Fraction((-1) ** (k + 1), k) * power
    return acc


def inv_unit(x: TensorSeries) -> TensorSeries:
    """Inverse of 1 + u as the truncated geometric series in u."""
    if x.constant_term() != 1:
        raise ValueError("inverse needs constant term 1")
    u = x - TensorSeries.one(x.genus, x.max_degree)
    acc = TensorSeries.one(x.genus, x.max_degree)
    power = TensorSeries.one(x.genus, x.max_degree)
    sign = 1
    for _ in range(x.max_degree):
        power = mul(power, u)
        sign = -sign
        if power.is_zero():
            break
        acc = acc + Fraction(sign) * power
    return acc


# ---------------------------------------------------------------------------
# coproduct predicates


def coproduct(x: TensorSeries) -> dict[tuple[Word, Word], Fraction]:
    """All (left word, right word) components of the coproduct."""
    out: dict[tuple[Word, Word], Fraction] = {}
    for w, c in x.coords.items():
        m = len(w)
        idx = range(m)
        for r in range(m + 1):
            for left in combinations(idx, r):
                left_set = set(left)
                wl = tuple(w[i] for i in left)
                wr = tuple(w[i] for i in idx if i not in left_set)
                nv = out.get((wl, wr), 0) + c
                if nv:
                    out[(wl, wr)] = nv
                else:
                    del out[(wl, wr)]
    return out


def is_grouplike(x: TensorSeries) -> bool:
    """Coproduct of x equals x (x) x, compared below the truncation degree."""
    if x.constant_term() != 1:
        return False
    n = x.max_degree
    target: dict[tuple[Word, Word], Fraction] = {}
    for wu, cu in x.coords.items():
        for wv, cv in x.coords.items():
            if len(wu) + len(wv) > n:
                continue
            k = (wu, wv)
            nv = target.get(k, 0) + cu * cv
            if nv:
                target[k] = nv
            else:
                del target[k]
    return coproduct(x) == target


def is_primitive(x: TensorSeries) -> bool:
    target: dict[tuple[Word, Word], Fraction] = {}
    for w, c in x.coords.items():
        for k in ((w, ()), ((), w)):
            nv = target.get(k, 0) + c
            if nv:
                target[k] = nv
            else:
                del target[k]
    return coproduct(x) == target


# ---------------------------------------------------------------------------
# Lie embedding and projection


@lru_cache(maxsize=None)
def _embed_word(w: Word) -> Mapping[Word, Fraction]:
    """Tensor expansion of the canonical bracketing of a Lyndon word."""
    if len(w) == 1:
        return {w: ONE}
    u, v = std_factorization(w)
    eu, ev = _embed_word(u), _embed_word(v)
    out: dict[Word, Fraction] = {}
    for wu, cu in eu.items():
        for wv, cv in ev.items():
            _merge(out, {wu + wv: cu * cv}, ONE)
            _merge(out, {wv + wu: cu * cv}, -ONE)
    return out


def embed_lie(x: LieSeries) -> TensorSeries:
    out: dict[Word, Fraction] = {}
    for w, c in x.coords.items():
        _merge(out, _embed_word(w), c)
    return TensorSeries(x.genus, x.max_degree, out)


@lru_cache(maxsize=None)
def _left_normed(w: Word) -> Mapping[Word, Fraction]:
    """Lyndon coordinates of the left-normed bracket of the letters of w."""
    if len(w) == 1:
        return {w: ONE}
    prev = _left_normed(w[:-1])
    out: dict[Word, Fraction] = {}
    last = (w[-1],)
    for u, c in prev.items():
        _merge(out, bracket_basis(u, last), c)
    return out


def project_lie(x: TensorSeries) -> LieSeries:
    """Inverse of embed_lie on primitive elements (Dynkin idempotent).

    Each degree-n word contributes its left-normed bracketing divided
    by n; on primitive input this recovers the Lie element exactly.
    """
    if not is_primitive(x):
        raise ValueError("project_lie needs a primitive element")
    out: dict[Word, Fraction] = {}
    for w, c in x.coords.items():
        _merge(out, _left_normed(w), c / len(w))
    return LieSeries(x.genus, x.max_degree, out)


# ---------------------------------------------------------------------------
# free group words and expansions


class FreeGroupWord:
    """Freely reduced word in the 2g generators of the surface group."""

    __slots__ = ("genus", "letters")

    def __init__(self, genus: int,
                 letters: tuple[tuple[int, int], ...] = ()):
        n = gen_count(genus)
        stack: list[tuple[int, int]] = []
        for letter, e in letters:
            if not 0 <= letter < n or e not in (1, -1):
                raise ValueError("bad free group letter")
            if stack and stack[-1][0] == letter and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((letter, e))
        self.genus = genus
        self.letters = tuple(stack)

    @classmethod
    def identity(cls, genus: int) -> "FreeGroupWord":
        return cls(genus)

    @classmethod
    def gen(cls, genus: int, letter: int, e: int = 1) -> "FreeGroupWord":
        return cls(genus, ((letter, e),))

    def __mul__(self, other: "FreeGroupWord") -> "FreeGroupWord":
        if self.genus != other.genus:
            raise ValueError("mismatched genus")
        return FreeGroupWord(self.genus, self.letters + other.letters)

    def inverse(self) -> "FreeGroupWord":
        return FreeGroupWord(self.genus,
                             tuple((l, -e) for l, e in reversed(self.letters)))

    @classmethod
    def commutator(cls, x: "FreeGroupWord", y: "FreeGroupWord") -> "FreeGroupWord":
        return x * y * x.inverse() * y.inverse()

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FreeGroupWord) and self.genus == other.genus
                and self.letters == other.letters)

    def __hash__(self) -> int:
        return hash((self.genus, self.letters))

    def __repr__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(letter_label(l) + ("" if e == 1 else "^-1")
                        for l, e in self.letters)


class ExpansionMap:
    """Images of the positive generators under a candidate expansion.

    The container itself does not enforce the expansion axioms; use
    check_expansion (or symplectic.verify_symplectic) to validate.
    """

    __slots__ = ("genus", "max_degree", "images", "_inverses")

    def __init__(self, genus: int, max_degree: int,
                 images: Mapping[int, TensorSeries]):
        n = gen_count(genus)
        if sorted(images) != list(range(n)):
            raise ValueError("need exactly one image per generator")
        for s in images.values():
            if s.genus != genus or s.max_degree != max_degree:
                raise ValueError("image context mismatch")
        self.genus = genus
        self.max_degree = max_degree
        self.images = dict(images)
        self._inverses: dict[int, TensorSeries] = {}

    def image(self, letter: int, e: int = 1) -> TensorSeries:
        if e == 1:
            return self.images[letter]
        inv = self._inverses.get(letter)
        if inv is None:
            inv = inv_unit(self.images[letter])
            self._inverses[letter] = inv
        return inv

    def truncated(self, n: int) -> "ExpansionMap":
        return ExpansionMap(self.genus, n,
                            {l: s.truncated(n) for l, s in self.images.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ExpansionMap) and self.genus == other.genus
                and self.max_degree == other.max_degree
                and self.images == other.images)


def evaluate_expansion(theta: ExpansionMap, w: FreeGroupWord) -> TensorSeries:
    if theta.genus != w.genus:
        raise ValueError("mismatched genus")
    acc = TensorSeries.one(theta.genus, theta.max_degree)
    for letter, e in w.letters:
        acc = mul(acc, theta.image(letter, e))
    return acc


class ExpansionReport(NamedTuple):
    is_expansion: bool
    is_grouplike: bool


def check_expansion(theta: ExpansionMap) -> ExpansionReport:
    """Normalization (1 + generator + higher) and group-likeness of all images."""
    ok_exp = True
    for letter, s in theta.images.items():
        if s.constant_term() != 1:
            ok_exp = False
            break
        for m in range(gen_count(theta.genus)):
            want = ONE if m == letter else Fraction(0)
            if s.coords.get((m,), Fraction(0)) != want:
                ok_exp = False
                break
        if not ok_exp:
            break
    ok_gl = all(is_grouplike(s) for s in theta.images.values())
    return ExpansionReport(ok_exp, ok_gl)


def magnus_expansion(genus: int, max_degree: int) -> ExpansionMap:
    """Every generator goes to 1 + letter (an expansion, not group-like)."""
    return ExpansionMap(genus, max_degree, {
        l: TensorSeries.one(genus, max_degree) + TensorSeries.gen(genus, max_degree, l)
        for l in range(gen_count(genus))})


def basis_expansion(genus: int, max_degree: int) -> ExpansionMap:
    """Every generator goes to exp(letter); group-like but not symplectic."""
    return ExpansionMap(genus, max_degree, {
        l: exp(TensorSeries.gen(genus, max_degree, l))
        for l in range(gen_count(genus))})
