"""Free Lie algebra on the 2g-dimensional symplectic vector space H.

Elements live in the quotient by degrees above a truncation bound N and
are stored as rational coordinates on the Lyndon basis.  The alphabet is
a1 < b1 < a2 < b2 < ... < bg (this order is normative and fixes all
Lyndon data, including the serialized form).  A basis element is a
Lyndon word; its bracketing is the canonical one induced by the standard
factorization and is never stored.

Bracket rewriting is the classical recursive collection on the Lyndon
(Hall) family.  The tensor-algebra round trip in `tensor_hopf` is kept
deliberately independent of it and serves as the oracle in the tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

Word = tuple[int, ...]

# ---------------------------------------------------------------------------
# generators


def gen_count(genus: int) -> int:
    return 2 * genus


def a_letter(i: int) -> int:
    """Letter index of a_i (1-based i)."""
    return 2 * (i - 1)


def b_letter(i: int) -> int:
    return 2 * (i - 1) + 1


def letter_label(letter: int) -> str:
    kind = "a" if letter % 2 == 0 else "b"
    return f"{kind}{letter // 2 + 1}"


def parse_letter(name: str, genus: int) -> int:
    kind, idx = name[:1], name[1:]
    if kind not in ("a", "b") or not idx.isdigit():
        raise ValueError(f"bad generator name {name!r}")
    i = int(idx)
    if not 1 <= i <= genus:
        raise ValueError(f"generator {name!r} out of range for genus {genus}")
    return a_letter(i) if kind == "a" else b_letter(i)


# ---------------------------------------------------------------------------
# Lyndon words


def is_lyndon(w: Word) -> bool:
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def _lyndon_words(alphabet: int, degree: int) -> tuple[Word, ...]:
    """All Lyndon words of exactly this length, in lexicographic order (Duval)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == degree:
            out.append(tuple(w))
        while len(w) < degree:
            w.append(w[-m])
        while w and w[-1] == alphabet - 1:
            w.pop()
    return tuple(sorted(out))


def lyndon_basis(genus: int, degree: int) -> list[Word]:
    """Ordered Lyndon-word basis of the degree-d graded piece."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    return list(_lyndon_words(gen_count(genus), degree))


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    if n == 1:
        return 1
    out, d, left = 1, 2, n
    while d * d <= left:
        if left % d == 0:
            left //= d
            if left % d == 0:
                return 0
            out = -out
        d += 1
    if left > 1:
        out = -out
    return out


def witt_dim(alphabet_size: int, degree: int) -> int:
    """Number of Lyndon words of the given length (necklace-counting formula)."""
    if alphabet_size < 1 or degree < 1:
        raise ValueError("alphabet size and degree must be >= 1")
    total = 0
    for e in range(1, degree + 1):
        if degree % e == 0:
            total += _mobius(e) * alphabet_size ** (degree // e)
    return total // degree


@lru_cache(maxsize=None)
def std_factorization(w: Word) -> tuple[Word, Word]:
    """Standard factorization w = u·v, v the lexicographically least proper suffix."""
    if len(w) < 2:
        raise ValueError("letters have no factorization")
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


def bracket_string(w: Word) -> str:
    """Human-readable bracketing of a basis word, e.g. [a1,[a1,b1]]."""
    if len(w) == 1:
        return letter_label(w[0])
    u, v = std_factorization(w)
    return f"[{bracket_string(u)},{bracket_string(v)}]"


def _letter_weight(w: Word, genus: int) -> tuple[int, ...]:
    counts = [0] * gen_count(genus)
    for c in w:
        counts[c] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# bracket rewriting on the Lyndon basis

_BRACKET_CACHE: dict[tuple[Word, Word], dict[Word, Fraction]] = {}


def _merge(acc: dict[Word, Fraction], terms: Mapping[Word, Fraction],
           factor: Fraction) -> None:
    for w, c in terms.items():
        nv = acc.get(w, 0) + c * factor
        if nv:
            acc[w] = nv
        else:
            acc.pop(w, None)


def bracket_basis(u: Word, v: Word) -> dict[Word, Fraction]:
    """Expansion of the bracket of two basis elements on the Lyndon basis.

    Classical collection: for u < v, either u·v is again a standard
    factorization (giving a single basis word) or the Jacobi identity is
    applied to the standard factors of u.  Terminates for any Hall
    family; results are cached globally (they do not depend on genus or
    truncation).
    """
    if u == v:
        return {}
    if v < u:
        return {w: -c for w, c in bracket_basis(v, u).items()}
    key = (u, v)
    hit = _BRACKET_CACHE.get(key)
    if hit is not None:
        return hit
    if len(u) == 1 or std_factorization(u)[1] >= v:
        result = {u + v: Fraction(1)}
    else:
        u1, u2 = std_factorization(u)
        # [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
        result: dict[Word, Fraction] = {}
        for w, c in bracket_basis(u2, v).items():
            _merge(result, bracket_basis(u1, w), c)
        for w, c in bracket_basis(u1, v).items():
            _merge(result, bracket_basis(u2, w), -c)
    _BRACKET_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# series


class LieSeries:
    """Element of the free Lie algebra truncated above max_degree.

    coords maps Lyndon words to nonzero rational coefficients.  Values
    are immutable by convention; all operations return fresh series.
    """

    __slots__ = ("genus", "max_degree", "coords")

    def __init__(self, genus: int, max_degree: int,
                 coords: Mapping[Word, Fraction] | None = None):
        if genus < 0 or max_degree < 1:
            raise ValueError("bad context")
        self.genus = genus
        self.max_degree = max_degree
        clean: dict[Word, Fraction] = {}
        n = gen_count(genus)
        for w, c in (coords or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if len(w) > max_degree:
                continue
            if any(not 0 <= x < n for x in w) or not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word over {n} letters")
            clean[w] = c
        self.coords = clean

    # -- constructors

    @classmethod
    def zero(cls, genus: int, max_degree: int) -> "LieSeries":
        return cls(genus, max_degree)

    @classmethod
    def gen(cls, genus: int, max_degree: int, letter: int) -> "LieSeries":
        return cls(genus, max_degree, {(letter,): Fraction(1)})

    # -- basic protocol

    def _check(self, other: "LieSeries") -> None:
        if self.genus != other.genus or self.max_degree != other.max_degree:
            raise ValueError("mismatched context (genus or truncation degree)")

    def __bool__(self) -> bool:
        return bool(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LieSeries) and self.genus == other.genus
                and self.max_degree == other.max_degree
                and self.coords == other.coords)

    def __add__(self, other: "LieSeries") -> "LieSeries":
        self._check(other)
        out = dict(self.coords)
        _merge(out, other.coords, Fraction(1))
        return LieSeries(self.genus, self.max_degree, out)

    def __sub__(self, other: "LieSeries") -> "LieSeries":
        self._check(other)
        out = dict(self.coords)
        _merge(out, other.coords, Fraction(-1))
        return LieSeries(self.genus, self.max_degree, out)

    def __neg__(self) -> "LieSeries":
        return LieSeries(self.genus, self.max_degree,
                         {w: -c for w, c in self.coords.items()})

    def __rmul__(self, scalar) -> "LieSeries":
        s = Fraction(scalar)
        return LieSeries(self.genus, self.max_degree,
                         {w: c * s for w, c in self.coords.items()})

    __mul__ = __rmul__

    def bracket(self, other: "LieSeries") -> "LieSeries":
        self._check(other)
        out: dict[Word, Fraction] = {}
        n = self.max_degree
        for wu, cu in self.coords.items():
            for wv, cv in other.coords.items():
                if len(wu) + len(wv) > n:
                    continue
                _merge(out, bracket_basis(wu, wv), cu * cv)
        return LieSeries(self.genus, self.max_degree, out)

    # -- structure helpers

    def degrees(self) -> list[int]:
        return sorted({len(w) for w in self.coords})

    def min_degree(self) -> int | None:
        return min((len(w) for w in self.coords), default=None)

    def graded_part(self, d: int) -> "LieSeries":
        return LieSeries(self.genus, self.max_degree,
                         {w: c for w, c in self.coords.items() if len(w) == d})

    def truncated(self, n: int) -> "LieSeries":
        """Same element in the quotient by degrees above n (n may differ from N)."""
        return LieSeries(self.genus, n,
                         {w: c for w, c in self.coords.items() if len(w) <= n})

    def terms(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(sorted(self.coords.items(), key=lambda t: (len(t[0]), t[0])))

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        bits = [f"({c})*{bracket_string(w)}" for w, c in self.terms()]
        return " + ".join(bits)


def bracket(x: LieSeries, y: LieSeries) -> LieSeries:
    return x.bracket(y)


def bch(x: LieSeries, y: LieSeries) -> LieSeries:
    """log(exp(x)·exp(y)) on the Lie side, truncated.

    Computed by transporting to the tensor algebra, multiplying
    exponentials, taking log and projecting back to the Lyndon basis.
    """
    x._check(y)
    from . import tensor_hopf as th

    p = th.mul(th.exp(th.embed_lie(x)), th.exp(th.embed_lie(y)))
    return th.project_lie(th.log(p))
