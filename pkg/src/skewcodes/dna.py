"""F_4 <-> nucleotide correspondence and reversible / DNA code checks.

1 -> A, t^2 -> T, 0 -> G, t -> C. Watson-Crick complement is x -> x + t.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .codec import LinearCode
from .galois import GF
from .skew import SkewPoly, all_one_poly, reverse_poly

__all__ = [
    "DnaError",
    "f4_to_dna",
    "dna_to_f4",
    "complement",
    "reverse_complement_poly",
    "is_palindromic",
    "is_td_palindromic",
    "is_reversible",
    "is_complement_closed",
    "is_dna_code",
    "reversibility_hypotheses",
    "DnaTable",
    "emit_dna_table",
    "set_digest",
]

_COMPLEMENT = str.maketrans("ATGC", "TACG")


class DnaError(ValueError):
    pass


def _check_f4(F: GF) -> None:
    if F.q != 4:
        raise DnaError(f"DNA correspondence needs F_4, got F_{F.q}")


def _letters(F: GF) -> dict[int, str]:
    _check_f4(F)
    return {0: "G", 1: "A", F.t_pow(1): "C", F.t_pow(2): "T"}


def f4_to_dna(v, F: GF) -> str:
    table = _letters(F)
    try:
        return "".join(table[int(x)] for x in v)
    except KeyError as exc:
        raise DnaError(f"{exc.args[0]} is not an element of F_4") from None


def dna_to_f4(word: str, F: GF) -> tuple[int, ...]:
    inverse = {b: a for a, b in _letters(F).items()}
    try:
        return tuple(inverse[ch] for ch in word)
    except KeyError as exc:
        raise DnaError(f"illegal base {exc.args[0]!r}") from None


def complement(x, F: GF | None = None):
    """Add t coordinatewise; on strings this is A<->T, G<->C."""
    if isinstance(x, str):
        if set(x) - set("ATGC"):
            raise DnaError(f"illegal base in {x!r}")
        return x.translate(_COMPLEMENT)
    if F is None:
        raise DnaError("complementing a vector needs the field")
    _check_f4(F)
    t = F.t_pow(1)
    return tuple(F.add(int(a), t) for a in x)


def reverse_complement_poly(a: SkewPoly, n: int) -> SkewPoly:
    """a^rc = a^r + t * (1 + x + ... + x^n), checked against reverse-then-complement."""
    S = a.ring
    F = S.field
    _check_f4(F)
    t = F.t_pow(1)
    via_formula = reverse_poly(a, n) + all_one_poly(S, n).scale_left(t)
    direct = S.poly(complement(tuple(reversed(a.padded(n + 1))), F))
    if via_formula != direct:
        raise AssertionError("reverse-complement identity failed")
    return via_formula


def is_palindromic(g: SkewPoly) -> bool:
    """g_i = g_(m-i) for i in 1..m."""
    m = g.degree
    return all(g.coeff(i) == g.coeff(m - i) for i in range(1, m + 1))


def is_td_palindromic(g: SkewPoly) -> bool:
    """g_i = theta(g_(m-i)) - delta(g_(m-i+1)) for i in 1..m; indices beyond m read as 0."""
    S = g.ring
    B = S.base
    m = g.degree
    return all(
        g.coeff(i) == B.sub(S.sigma(g.coeff(m - i)), S.delta(g.coeff(m - i + 1)))
        for i in range(1, m + 1)
    )


def is_reversible(code: LinearCode) -> bool:
    """Reversal is linear, so checking the generator rows suffices."""
    return all(code.contains(row[::-1]) for row in code.G)


def is_complement_closed(code: LinearCode) -> bool:
    """c + t*1 is in C for all c in C  <=>  the all-t vector is a codeword."""
    _check_f4(code.field)
    return code.contains(np.full(code.n, code.field.t_pow(1), dtype=np.int32))


def is_dna_code(code: LinearCode) -> bool:
    return is_reversible(code) and is_complement_closed(code)


def reversibility_hypotheses(g: SkewPoly, code: LinearCode) -> str | None:
    """Name of the sufficient condition for reversibility that g satisfies, if any.

    ``"odd"``: deg g odd, n even, g palindromic and delta(g) in C.
    ``"even"``: deg g even, n even, g (theta,delta)-palindromic and
    (sum g_i x^(m-i)) x in C.
    """
    n = code.n
    m = g.degree
    if n % 2:
        return None
    S = g.ring
    if m % 2 == 1:
        dg = g.map_coeffs(S.delta)
        if is_palindromic(g) and code.contains(dg.padded(n)):
            return "odd"
    elif g.is_monic():
        shifted = (S.base.zero,) + tuple(reversed(g.coeffs))
        if is_td_palindromic(g) and len(shifted) <= n and code.contains(
            shifted + (S.base.zero,) * (n - len(shifted))
        ):
            return "even"
    return None


def set_digest(words) -> str:
    """Order-independent digest: sha256 of the sorted, de-duplicated words joined by newlines."""
    return hashlib.sha256("\n".join(sorted(set(words))).encode()).hexdigest()


@dataclass
class DnaTable:
    words: list[str]
    digest: str

    def as_text(self) -> str:
        return "".join(w + "\n" for w in self.words)

    def as_fasta(self) -> str:
        return "".join(f">cw{i}\n{w}\n" for i, w in enumerate(self.words))


def emit_dna_table(code: LinearCode, limit: int = 1 << 16) -> DnaTable:
    words = sorted(f4_to_dna(c, code.field) for c in code.codewords(limit))
    return DnaTable(words, set_digest(words))
