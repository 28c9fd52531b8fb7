"""Text and JSON forms of trace elements.

Text grammar: terms ``coeff * (c y c l e s)[w,o,r,d]`` joined by ``+``/``-``.
The coefficient is optional; a Laurent coefficient with several terms is
written in parentheses, e.g. ``(q^-1 + 2) * (0)(1 2)[1,1]``.  A bare scalar
term such as ``3`` or ``q^-1`` stands for that multiple of the unit ``(0)``.
"""
from __future__ import annotations

import re

from .perm import Perm
from .scalar import LaurentScalar
from .trace_algebra import TraceElement

_LABEL = re.compile(r"^((?:\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+)(?:\[\s*([\d\s,]*)\])?$")


class ParseError(ValueError):
    pass


def _split_top(text: str, seps: str) -> list[tuple[str, str]]:
    """Split at separators outside brackets; the sign before each piece is kept."""
    out = []
    depth = 0
    cur = ""
    sign = "+"
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if depth == 0 and ch in seps and not (i > 0 and text[i - 1] == "^"):
            if cur.strip():
                out.append((sign, cur.strip()))
                sign = ch
            elif ch == "-":
                sign = "-" if sign == "+" else "+"
            cur = ""
            continue
        cur += ch
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    if cur.strip():
        out.append((sign, cur.strip()))
    return out


def parse_label(text: str) -> tuple[Perm, tuple[int, ...]]:
    m = _LABEL.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse basis label {text!r}")
    cyc, word_s = m.group(1), m.group(2)
    word = tuple(int(x) for x in re.split(r"[\s,]+", word_s.strip()) if x) if word_s else ()
    try:
        perm = Perm.parse(cyc, len(word) if word_s is not None else None)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if perm.n != len(word):
        raise ParseError(f"label {text!r}: permutation of degree {perm.n} needs a word of length {perm.n}")
    if any(x < 1 for x in word):
        raise ParseError("word letters start at 1")
    return perm, word


def parse_element(text: str, basis: str = "T") -> TraceElement:
    text = text.strip()
    if not text:
        raise ParseError("empty element")
    terms: dict = {}
    for sign, piece in _split_top(text, "+-"):
        parts = _split_top_star(piece)
        if len(parts) == 1 and not _LABEL.match(piece):
            # a bare scalar is a multiple of the unit (0)
            parts = [piece, "(0)"]
        if len(parts) == 1:
            coeff = LaurentScalar.const(1)
            label = parts[0]
        else:
            cs = parts[0].strip()
            if cs.startswith("(") and cs.endswith(")"):
                cs = cs[1:-1]
            try:
                coeff = LaurentScalar.parse(cs)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            label = parts[1]
        key = parse_label(label)
        if sign == "-":
            coeff = -coeff
        terms[key] = terms.get(key, LaurentScalar.const(0)) + coeff
    return TraceElement(terms, basis)


def _split_top_star(piece: str) -> list[str]:
    depth = 0
    for i in range(len(piece) - 1, -1, -1):
        ch = piece[i]
        if ch in ")]":
            depth += 1
        elif ch in "([":
            depth -= 1
        elif ch == "*" and depth == 0:
            return [piece[:i], piece[i + 1:]]
    return [piece]


def format_label(perm: Perm, word) -> str:
    s = perm.to_text()
    if word:
        s += "[" + ",".join(map(str, word)) + "]"
    return s


def _sort_key(item):
    (p, w), _ = item
    return (-p.n, p.images, w)


def format_element(x: TraceElement) -> str:
    """Deterministic text: higher degree first, then permutation and word order."""
    if not x.terms:
        return "0"
    out = []
    for (p, w), c in sorted(x.terms.items(), key=_sort_key):
        label = format_label(p, w)
        neg = False
        if c.is_monomial():
            ((e, v),) = c.terms.items()
            if v < 0:
                neg, c = True, -c
            if c == 1:
                body = label
            elif e == 0:
                body = f"{c} * {label}"
            else:
                body = f"{c.to_text()} * {label}"
        else:
            body = f"({c.to_text()}) * {label}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def element_to_json(x: TraceElement) -> dict:
    return {
        "basis": x.basis,
        "terms": [{"perm": p.to_json(), "word": list(w), "coeff": c.to_json()}
                  for (p, w), c in sorted(x.terms.items(), key=_sort_key)],
    }


def element_from_json(data: dict) -> TraceElement:
    return TraceElement({(Perm.from_json(t["perm"]), tuple(t["word"])): LaurentScalar.from_json(t["coeff"])
                         for t in data["terms"]}, data.get("basis", "I"))
