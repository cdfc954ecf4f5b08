"""Text forms for polynomials.

Three readers are provided:

* canonical: comma-separated element tokens, ascending
  (``"t^20,t^19,1"`` is t^20 + t^19 x + x^2);
* concatenated: the coefficient strings printed in the code tables
  (``"1t^3t^7t1"``, ``"t^{16}t^{17}t^{23}2t^{22}1"``). Unbraced exponents such
  as ``t^51`` can split several ways; every split is enumerated and anything
  other than exactly one admissible reading raises ``AmbiguousNotation``;
* algebraic: ``"x^2 + t^{19}x + t^{20}"``.
"""

from __future__ import annotations

import re

from .galois import GF
from .ring_rl import RlRing
from .skew import SkewPoly, SkewRing

__all__ = [
    "NotationError",
    "AmbiguousNotation",
    "parse_canonical",
    "parse_concatenated",
    "parse_table_notation",
    "parse_expression",
    "parse_poly",
    "format_poly",
    "format_expression",
    "format_element",
]


class NotationError(ValueError):
    pass


class AmbiguousNotation(NotationError):
    def __init__(self, text: str, span: tuple[int, int], readings: list[list[str]]) -> None:
        self.text = text
        self.span = span
        self.readings = readings
        shown = "; ".join(",".join(r) for r in readings[:4])
        super().__init__(
            f"ambiguous coefficient string {text!r} at [{span[0]}:{span[1]}] "
            f"({text[span[0]:span[1]]!r}): readings {shown}"
        )


def parse_canonical(S: SkewRing, text: str) -> SkewPoly:
    F = S.field
    toks = [t for t in text.split(",")]
    if any(not t.strip() for t in toks):
        raise NotationError(f"empty token in {text!r}")
    coeffs = [F.parse(t) for t in toks]
    return _lift(S, coeffs)


def _lift(S: SkewRing, coeffs: list[int]) -> SkewPoly:
    if isinstance(S.base, RlRing):
        return S.poly(tuple(S.base.scalar(c) for c in coeffs))
    return S.poly(tuple(coeffs))


def _tokenizations(text: str, F: GF):
    """Yield (tokens, spans) for every admissible reading of a concatenated string."""
    maxexp = F.q - 2

    def rec(i: int):
        if i == len(text):
            yield [], []
            return
        ch = text[i]
        if ch == "t":
            if text.startswith("t^{", i):
                j = text.index("}", i)
                tok = "t^" + text[i + 3:j]
                if int(text[i + 3:j]) > maxexp:
                    return
                for rest, spans in rec(j + 1):
                    yield [tok] + rest, [(i, j + 1)] + spans
                return
            if text.startswith("t^", i):
                j = i + 2
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i + 2:
                    raise NotationError(f"dangling exponent at {i} in {text!r}")
                for cut in range(i + 3, j + 1):
                    exp = int(text[i + 2:cut])
                    if exp > maxexp:
                        break
                    for rest, spans in rec(cut):
                        yield ["t^" + text[i + 2:cut]] + rest, [(i, cut)] + spans
                return
            for rest, spans in rec(i + 1):
                yield ["t"] + rest, [(i, i + 1)] + spans
            return
        if ch.isdigit():
            if int(ch) >= F.p:
                return
            for rest, spans in rec(i + 1):
                yield [ch] + rest, [(i, i + 1)] + spans
            return
        raise NotationError(f"unexpected character {ch!r} at {i} in {text!r}")

    yield from rec(0)


def parse_concatenated(
    S: SkewRing, text: str, degree: int | None = None, monic: bool = False
) -> SkewPoly:
    text = text.replace(" ", "")
    F = S.field
    readings = []
    for toks, spans in _tokenizations(text, F):
        if degree is not None and len(toks) != degree + 1:
            continue
        if monic and toks[-1] != "1":
            continue
        readings.append((toks, spans))
    if not readings:
        raise NotationError(f"no admissible reading of {text!r} over F_{F.q}")
    if len(readings) > 1:
        # report the first span where the readings disagree
        a, b = readings[0][1], readings[1][1]
        k = next((k for k, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)) - 1)
        span = (min(a[k][0], b[k][0]), max(a[k][1], b[k][1]))
        raise AmbiguousNotation(text, span, [r[0] for r in readings])
    return _lift(S, [F.parse(t) for t in readings[0][0]])


def parse_table_notation(
    S: SkewRing, text: str, degree: int | None = None, monic: bool = False
) -> SkewPoly:
    """Canonical form when the text contains a comma, otherwise the concatenated form."""
    text = text.strip()
    if not text:
        raise NotationError("empty polynomial")
    if "," in text:
        return parse_canonical(S, text)
    if text == "0":
        return S.zero()
    return parse_concatenated(S, text, degree=degree, monic=monic)


_TERM_RE = re.compile(
    r"""^(?P<coef>(?:t(?:\^\{?\d+\}?)?)|\d+)?
        (?P<x>x(?:\^\{?(?P<exp>\d+)\}?)?)?$""",
    re.X,
)


def parse_expression(S: SkewRing, text: str) -> SkewPoly:
    """Algebraic form, e.g. ``x^9 + t^2x^8 + t^{2}x^7 + 1`` (terms may repeat; they add)."""
    F = S.field
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise NotationError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    parts = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in parts) != s:
        raise NotationError(f"cannot parse {text!r}")
    coeffs: dict[int, int] = {}
    for sign, body in parts:
        m = _TERM_RE.match(body)
        if not m or not body:
            raise NotationError(f"bad term {body!r} in {text!r}")
        coef = m.group("coef")
        c = F.parse(coef) if coef else 1
        if m.group("x"):
            e = int(m.group("exp")) if m.group("exp") else 1
        else:
            if not coef:
                raise NotationError(f"bad term {body!r}")
            e = 0
        if sign == "-":
            c = F.neg(c)
        coeffs[e] = F.add(coeffs.get(e, 0), c)
    deg = max(coeffs)
    return _lift(S, [coeffs.get(i, 0) for i in range(deg + 1)])


def parse_poly(S: SkewRing, text: str, **kw) -> SkewPoly:
    """Dispatch on shape: algebraic if it mentions x, else table/canonical notation."""
    if "x" in text:
        return parse_expression(S, text)
    return parse_table_notation(S, text, **kw)


def format_element(base, a) -> str:
    if isinstance(base, RlRing):
        return "(" + ";".join(base.field.format(c) for c in a) + ")"
    return base.format(a)


def format_poly(f: SkewPoly) -> str:
    """Canonical text form; the zero polynomial is ``"0"``."""
    if f.is_zero():
        return "0"
    return ",".join(format_element(f.ring.base, c) for c in f.coeffs)


def format_expression(f: SkewPoly) -> str:
    if f.is_zero():
        return "0"
    B = f.ring.base
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if B.is_zero(c):
            continue
        tok = format_element(B, c)
        xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(tok)
        elif c == B.one:
            terms.append(xs)
        else:
            terms.append(tok + xs)
    return " + ".join(terms)
