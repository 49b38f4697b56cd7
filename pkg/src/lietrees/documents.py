"""Exchange documents for series, expansions, automorphisms and trees.

The three series-like formats are JSON objects with explicit genus and
truncation degree; coefficients are exact rational strings and words
are lists of generator names, so documents round-trip exactly.  Tree
combinations use a plain text format, one coefficient and one
parenthesized tree per line.  All validation errors raise
DocumentError with a message naming the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .free_lie import (LieSeries, Word, gen_count, is_lyndon, letter_label,
                       parse_letter)
from .jacobi import TreeCombo, parse_tree_text, tree_text
from .johnson import LieAutomorphism
from .tensor_hopf import ExpansionMap, TensorSeries


class DocumentError(ValueError):
    """Malformed exchange document; the message names the bad field."""


def _require_int(doc: Any, field: str, minimum: int) -> int:
    v = doc.get(field)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise DocumentError(f"{field}: expected an integer >= {minimum}")
    return v


def _parse_coeff(raw: Any, where: str) -> Fraction:
    if not isinstance(raw, str):
        raise DocumentError(f"{where}: coefficient must be a rational string")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: bad rational {raw!r}") from None


def _parse_word(raw: Any, genus: int, where: str) -> Word:
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: word must be a list of generator names")
    letters = []
    for i, name in enumerate(raw):
        if not isinstance(name, str):
            raise DocumentError(f"{where}[{i}]: generator name must be a string")
        try:
            letters.append(parse_letter(name, genus))
        except ValueError:
            raise DocumentError(f"{where}[{i}]: unknown generator {name!r}") from None
    return tuple(letters)


def _terms_payload(coords, keyfn) -> list[dict]:
    out = []
    for w, c in sorted(coords.items(), key=keyfn):
        out.append({"coefficient": str(c),
                    "word": [letter_label(x) for x in w]})
    return out


# ---------------------------------------------------------------------------
# LieSeries documents


def lie_series_to_doc(x: LieSeries) -> dict:
    return {"genus": x.genus, "max_degree": x.max_degree,
            "terms": _terms_payload(x.coords, lambda t: (len(t[0]), t[0]))}


def _series_terms_from_doc(raw: Any, genus: int, max_degree: int,
                           where: str, lyndon: bool) -> dict[Word, Fraction]:
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: expected a list of terms")
    coords: dict[Word, Fraction] = {}
    for i, term in enumerate(raw):
        spot = f"{where}[{i}]"
        if not isinstance(term, dict):
            raise DocumentError(f"{spot}: term must be an object")
        extra = set(term) - {"coefficient", "word"}
        if extra:
            raise DocumentError(f"{spot}.{sorted(extra)[0]}: unknown field")
        c = _parse_coeff(term.get("coefficient"), f"{spot}.coefficient")
        w = _parse_word(term.get("word"), genus, f"{spot}.word")
        if lyndon and not w:
            raise DocumentError(f"{spot}.word: empty word is not a Lyndon word")
        if lyndon and not is_lyndon(w):
            raise DocumentError(f"{spot}.word: not a Lyndon word")
        if len(w) > max_degree:
            raise DocumentError(f"{spot}.word: degree above max_degree")
        if w in coords:
            raise DocumentError(f"{spot}.word: duplicate word")
        if c:
            coords[w] = c
    return coords


def lie_series_from_doc(doc: Any) -> LieSeries:
    if not isinstance(doc, dict):
        raise DocumentError("document: expected an object")
    extra = set(doc) - {"genus", "max_degree", "terms"}
    if extra:
        raise DocumentError(f"{sorted(extra)[0]}: unknown field")
    genus = _require_int(doc, "genus", 0)
    n = _require_int(doc, "max_degree", 1)
    coords = _series_terms_from_doc(doc.get("terms"), genus, n, "terms", True)
    return LieSeries(genus, n, coords)


# ---------------------------------------------------------------------------
# Expansion documents


def expansion_to_doc(theta: ExpansionMap) -> dict:
    images = {}
    for letter in range(gen_count(theta.genus)):
        s = theta.images[letter]
        images[letter_label(letter)] = _terms_payload(
            s.coords, lambda t: (len(t[0]), t[0]))
    return {"genus": theta.genus, "max_degree": theta.max_degree,
            "images": images}


def _images_from_doc(doc: Any, lyndon: bool):
    if not isinstance(doc, dict):
        raise DocumentError("document: expected an object")
    extra = set(doc) - {"genus", "max_degree", "images"}
    if extra:
        raise DocumentError(f"{sorted(extra)[0]}: unknown field")
    genus = _require_int(doc, "genus", 1)
    n = _require_int(doc, "max_degree", 1)
    raw = doc.get("images")
    if not isinstance(raw, dict):
        raise DocumentError("images: expected an object keyed by generator")
    expected = {letter_label(l): l for l in range(gen_count(genus))}
    extra_keys = set(raw) - set(expected)
    if extra_keys:
        raise DocumentError(f"images.{sorted(extra_keys)[0]}: unknown generator")
    out = {}
    for name, letter in expected.items():
        if name not in raw:
            raise DocumentError(f"images.{name}: missing generator image")
        out[letter] = _series_terms_from_doc(raw[name], genus, n,
                                             f"images.{name}", lyndon)
    return genus, n, out


def expansion_from_doc(doc: Any) -> ExpansionMap:
    genus, n, raw = _images_from_doc(doc, lyndon=False)
    return ExpansionMap(genus, n,
                        {l: TensorSeries(genus, n, coords)
                         for l, coords in raw.items()})


# ---------------------------------------------------------------------------
# Automorphism documents


def automorphism_to_doc(psi: LieAutomorphism) -> dict:
    images = {}
    for letter in range(gen_count(psi.genus)):
        s = psi.images[letter]
        images[letter_label(letter)] = _terms_payload(
            s.coords, lambda t: (len(t[0]), t[0]))
    return {"genus": psi.genus, "max_degree": psi.max_degree,
            "images": images}


def automorphism_from_doc(doc: Any) -> LieAutomorphism:
    genus, n, raw = _images_from_doc(doc, lyndon=True)
    images = {}
    for letter, coords in raw.items():
        name = letter_label(letter)
        if coords.get((letter,)) != 1 or any(
                len(w) == 1 and w != (letter,) for w in coords):
            raise DocumentError(
                f"images.{name}: degree-1 part must be exactly {name}")
        images[letter] = LieSeries(genus, n, coords)
    return LieAutomorphism(genus, n, images)


# ---------------------------------------------------------------------------
# JSON and tree text fronts


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"document: invalid JSON ({e.msg} at line {e.lineno})") \
            from None


def tree_combo_to_text(c: TreeCombo) -> str:
    lines = []
    for key in sorted(c.terms):
        tree, coeff = c.terms[key]
        lines.append(f"{coeff} {tree_text(tree)}")
    return "\n".join(lines) + ("\n" if lines else "")


def tree_combo_from_text(text: str, genus: int) -> TreeCombo:
    terms = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if "(" in head:
            raise DocumentError(f"line {lineno}: missing coefficient")
        coeff = _parse_coeff(head, f"line {lineno}: coefficient")
        if not rest.strip():
            raise DocumentError(f"line {lineno}: missing tree expression")
        try:
            root, plant = parse_tree_text(rest, genus)
        except ValueError as e:
            raise DocumentError(f"line {lineno}: {e}") from None
        terms.append((coeff, root, plant))
    return TreeCombo.from_terms(genus, terms)
