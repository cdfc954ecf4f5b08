"""Table reproduction, divisor search and factorization checks.

Every command returns a plain dict that serialises to the JSON report format
in ``report.schema.json``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np
import yaml

from .codec import (
    CodeError,
    classify,
    code_from_generator,
    gray_image,
    gray_matrix_check,
    min_distance,
    rl_code_build,
)
from .config import Config
from .dna import complement, dna_to_f4, emit_dna_table, f4_to_dna, is_complement_closed, is_reversible
from .dna import reversibility_hypotheses, set_digest
from .galois import GF, field_from_order, format_modulus
from .notation import AmbiguousNotation, format_poly, parse_table_notation, parse_poly
from .skew import SkewRing, enumerate_right_divisors, right_divide

PASS, FAIL, FLAGGED = "PASS", "FAIL", "FLAGGED"
FIXTURE_SETS = ("table1", "table2", "table3", "table4", "table5", "examples")
ROW_KINDS = ("code", "rl", "factor", "dna_table")


class FixtureError(ValueError):
    pass


class CursorError(ValueError):
    pass


# -- fixtures ---------------------------------------------------------


def fixture_path(name: str) -> Path:
    """Resolve a bundled fixture set by name, or pass a file path through."""
    p = Path(name)
    if p.suffix in (".yaml", ".yml") and p.exists():
        return p
    if name in FIXTURE_SETS:
        return Path(str(resources.files("skewcodes") / "fixtures" / f"{name}.yaml"))
    raise FixtureError(f"no fixture set or file named {name!r}")


def load_fixtures(name: str) -> list[dict]:
    data = yaml.safe_load(fixture_path(name).read_text()) or {}
    defaults = data.get("defaults", {})
    rows = []
    for raw in data.get("rows") or []:
        row = {**defaults, **raw}
        _validate_row(row)
        rows.append(row)
    return rows


def _validate_row(row: dict) -> None:
    rid = row.get("id", "<no id>")
    for key in ("id", "kind", "q", "n", "alpha", "g"):
        if key not in row:
            raise FixtureError(f"{rid}: missing key {key!r}")
    if row["kind"] not in ROW_KINDS:
        raise FixtureError(f"{rid}: unknown kind {row['kind']!r}")
    if not isinstance(row["alpha"], list) or not row["alpha"]:
        raise FixtureError(f"{rid}: alpha must be a non-empty list of tokens")
    if row["kind"] in ("code", "rl") and len(row.get("expected", [])) != 3:
        raise FixtureError(f"{rid}: expected must be [n, k, d]")
    if row["kind"] == "rl" and (not isinstance(row["g"], list) or len(row["g"]) < 2):
        raise FixtureError(f"{rid}: an rl row needs at least two generators")
    if row["kind"] == "factor" and "cofactor" not in row:
        raise FixtureError(f"{rid}: factor row needs a cofactor")
    if row["kind"] == "dna_table" and not row.get("words"):
        raise FixtureError(f"{rid}: dna_table row needs words")


# -- helpers ----------------------------------------------------------


def _fields(row: dict, cfg: Config) -> list[GF]:
    q = row["q"]
    mods = row.get("moduli") or [cfg.modulus(q)]
    return [field_from_order(q, tuple(m) if m is not None else None) for m in mods]


def _field_info(F: GF) -> dict:
    return {"q": F.q, "p": F.p, "m": F.m, "modulus": format_modulus(F.modulus)}


def gray_candidates(F: GF, l: int, extra=()) -> list[dict]:
    """Published matrices first, then identity, [[1,1],[1,-1]] (odd p) and [[1,t],[t,1]]."""
    cands = []
    for e in extra:
        cands.append({"name": e["name"], "N": [[F.parse(str(x)) for x in r] for r in e["N"]],
                      "beta": e.get("beta")})
    cands.append({"name": "I", "N": np.eye(l, dtype=int).tolist()})
    if l == 2 and F.p != 2:
        cands.append({"name": "H", "N": [[1, 1], [1, F.neg(1)]]})
    if l == 2:
        t = F.t_pow(1)
        if F.add(1, F.mul(t, t)) != 0:
            cands.append({"name": "1t", "N": [[1, t], [t, 1]]})
    out = []
    for c in cands:
        for coords in ("v", "crt"):
            try:
                gm = gray_matrix_check(F, c["N"], coords, c["name"])
            except CodeError:
                continue
            out.append({"gray": gm, "stated_beta": c.get("beta")})
    return out


def _matrix_text(F: GF, N) -> list[list[str]]:
    return [[F.format(int(x)) for x in r] for r in N]


def _distance(code, cfg: Config):
    return min_distance(code, budget=cfg.distance_nodes, enum_limit=cfg.enum_limit,
                        workers=cfg.workers)


def _compare(row: dict, n: int, k: int, dres) -> dict:
    exp_n, exp_k, exp_d = row["expected"]
    out = {"n": n, "k": k, "d": dres.d, "exact": dres.exact,
           "nk_match": (n, k) == (exp_n, exp_k), "d_match": dres.exact and dres.d == exp_d}
    if dres.exact:
        out["classification"] = classify(n, k, dres.d)
    label = row.get("classification")
    out["label_match"] = label is None or out.get("classification") == label
    return out


def _parse_generator(S: SkewRing, text: str, printed: str | None, notes: list[str]):
    g = parse_poly(S, text)
    if printed is not None:
        try:
            h = parse_table_notation(S, printed, degree=g.degree, monic=True)
        except AmbiguousNotation as exc:
            notes.append(f"printed string ambiguous: {exc}")
        else:
            if h != g:
                raise FixtureError(f"transcription {text!r} disagrees with printed {printed!r}")
    return g


def _alpha_token(F: GF, tok) -> int:
    return F.parse(str(tok))


def _status(attempts: list[dict], consistent: bool, needs_dna: bool) -> str:
    full = [a for a in attempts if a.get("match")]
    if full:
        return PASS
    if not consistent:
        return FLAGGED
    nk = [a for a in attempts if a.get("nk_match")]
    if nk and any(not a.get("d_match") or not a.get("label_match") for a in nk):
        if not needs_dna or any(a.get("dna_match", True) for a in nk):
            return FLAGGED
    return FAIL


# -- row verification -------------------------------------------------


def _dna_checks(row: dict, code, g) -> dict:
    want = row.get("dna") or {}
    got = {}
    if "reversible" in want:
        got["reversible"] = is_reversible(code)
        got["hypothesis"] = reversibility_hypotheses(g, code)
        if got["hypothesis"] and not got["reversible"]:
            got["hypothesis_counterexample"] = True
    if "complement_closed" in want:
        got["complement_closed"] = is_complement_closed(code)
    got["dna_match"] = all(got[key] == val for key, val in want.items())
    return got


def verify_code_row(row: dict, cfg: Config) -> dict:
    notes: list[str] = []
    attempts = []
    best = None
    consistent = True
    for F in _fields(row, cfg):
        for tok in row["alpha"]:
            S = SkewRing.inner(F, alpha=_alpha_token(F, tok))
            g = _parse_generator(S, row["g"], row.get("printed"), notes)
            consistent = row["expected"][1] == row["n"] - g.degree
            att = {"modulus": format_modulus(F.modulus), "alpha": str(tok), "gray": None}
            attempts.append(att)
            try:
                cc = code_from_generator(g, row["n"])
            except CodeError as exc:
                att.update(divides=False, error=str(exc))
                continue
            att["divides"] = True
            dres = _distance(cc.code, cfg)
            att.update(_compare(row, cc.code.n, cc.k, dres))
            if row.get("dna"):
                att.update(_dna_checks(row, cc.code, g))
            att["match"] = (att["nk_match"] and att["d_match"] and att["label_match"]
                            and att.get("dna_match", True))
            rec = {"field": F, "alpha": str(tok), "g": g, "att": att, "gray": None}
            if att["match"]:
                best = rec
                break
            if best is None or (att["nk_match"] and not best["att"]["nk_match"]):
                best = rec
        if best is not None and best["att"]["match"]:
            break
    if not consistent:
        notes.append(f"printed k={row['expected'][1]} differs from n - deg g")
    status = _status(attempts, consistent, bool(row.get("dna")))
    return _row_record(row, status, best, attempts, notes)


def verify_rl_row(row: dict, cfg: Config) -> dict:
    notes: list[str] = []
    attempts = []
    best = None
    l = len(row["g"])
    printed = row.get("printed") or [None] * l
    consistent = True
    done = False
    for F in _fields(row, cfg):
        cands = gray_candidates(F, l, row.get("gray", []))
        for tok in row["alpha"]:
            S = SkewRing.inner(F, alpha=_alpha_token(F, tok))
            gs = [_parse_generator(S, t, p, notes) for t, p in zip(row["g"], printed)]
            consistent = row["expected"][1] == l * row["n"] - sum(g.degree for g in gs)
            try:
                rc = rl_code_build(gs, row["n"], S)
            except CodeError as exc:
                attempts.append({"modulus": format_modulus(F.modulus), "alpha": str(tok),
                                 "gray": None, "divides": False, "error": str(exc)})
                continue
            for cand in cands:
                gm = cand["gray"]
                att = {"modulus": format_modulus(F.modulus), "alpha": str(tok),
                       "gray": f"{gm.name}/{gm.coords}", "divides": True,
                       "beta": F.format(gm.beta)}
                if cand["stated_beta"] is not None:
                    att["beta_match"] = F.parse(str(cand["stated_beta"])) == gm.beta
                attempts.append(att)
                image = gray_image(rc, gm)
                dres = _distance(image, cfg)
                att.update(_compare(row, image.n, image.k, dres))
                att["match"] = att["nk_match"] and att["d_match"] and att["label_match"]
                rec = {"field": F, "alpha": str(tok), "g": gs, "att": att, "gray": gm}
                if att["match"]:
                    best, done = rec, True
                    break
                if best is None or (att["nk_match"] and not best["att"]["nk_match"]):
                    best = rec
            if done:
                break
        if done:
            break
    if not consistent:
        notes.append(f"printed k={row['expected'][1]} differs from l*n - sum deg g_i")
    status = _status(attempts, consistent, False)
    if status != PASS:
        ds = sorted({a["d"] for a in attempts if "d" in a})
        notes.append(f"distance {row['expected'][2]} not reproduced; computed d values {ds}")
    return _row_record(row, status, best, attempts, notes)


def verify_factor_row(row: dict, cfg: Config) -> dict:
    notes: list[str] = []
    attempts = []
    best = None
    for F in _fields(row, cfg):
        for tok in row["alpha"]:
            S = SkewRing.inner(F, alpha=_alpha_token(F, tok))
            res = factor_check(S, row["g"], row["cofactor"], row["n"])
            att = {"modulus": format_modulus(F.modulus), "alpha": str(tok), "gray": None, **res}
            att["match"] = res["product_equal"] and res["remainder_zero"]
            attempts.append(att)
            if att["match"]:
                best = {"field": F, "alpha": str(tok), "g": parse_poly(S, row["g"]), "att": att,
                        "gray": None}
                break
        if best:
            break
    status = PASS if best else FAIL
    return _row_record(row, status, best, attempts, notes)


def verify_dna_table_row(row: dict, cfg: Config) -> dict:
    notes: list[str] = []
    attempts = []
    best = None
    printed = [str(w) for w in row["words"]]
    n = row["n"]
    malformed = sorted(w for w in printed if len(w) != n)
    wellformed = {w for w in printed if len(w) == n}
    status = FAIL
    for F in _fields(row, cfg):
        for tok in row["alpha"]:
            S = SkewRing.inner(F, alpha=_alpha_token(F, tok))
            g = parse_poly(S, row["g"])
            att = {"modulus": format_modulus(F.modulus), "alpha": str(tok), "gray": None}
            attempts.append(att)
            try:
                cc = code_from_generator(g, n)
            except CodeError as exc:
                att.update(divides=False, error=str(exc))
                continue
            table = emit_dna_table(cc.code, limit=cfg.enum_limit)
            computed = set(table.words)
            missing = sorted(computed - wellformed)
            extra = sorted(wellformed - computed)
            explained = len(missing) == len(malformed) and all(
                any(m.startswith(w) or w in m for m in missing) for w in malformed)
            att.update(
                divides=True, n=n, k=cc.k, words=len(computed), digest=table.digest,
                printed_digest=set_digest(printed), malformed=malformed, missing=missing,
                extra=extra, reversible=is_reversible(cc.code),
                complement_closed=is_complement_closed(cc.code),
            )
            att["match"] = not extra and not missing and not malformed
            att["match_modulo_malformed"] = not extra and explained
            if att["match"] or att["match_modulo_malformed"]:
                best = {"field": F, "alpha": str(tok), "g": g, "att": att, "gray": None}
                status = PASS if att["match"] else FLAGGED
                break
        if best:
            break
    if malformed:
        notes.append(f"malformed printed entries: {malformed}")
    return _row_record(row, status, best, attempts, notes)


_VERIFIERS = {
    "code": verify_code_row,
    "rl": verify_rl_row,
    "factor": verify_factor_row,
    "dna_table": verify_dna_table_row,
}


def _row_record(row, status, best, attempts, notes) -> dict:
    rec = {
        "id": row["id"],
        "kind": row["kind"],
        "status": status,
        "expected": row.get("expected"),
        "alpha_candidates": [str(a) for a in row["alpha"]],
        "attempts": attempts,
        "notes": notes,
    }
    if best is None:
        rec.update(field={"q": row["q"]}, n=row["n"], k=None, d=None, exact=None,
                   classification=None, generators=None, delta=None, gray=None)
        return rec
    F, att = best["field"], best["att"]
    gs = best["g"] if isinstance(best["g"], list) else [best["g"]]
    gm = best["gray"]
    rec.update(
        field=_field_info(F),
        n=att.get("n", row["n"]),
        k=att.get("k"),
        d=att.get("d"),
        exact=att.get("exact"),
        classification=att.get("classification"),
        generators=[format_poly(g) for g in gs],
        delta=f"alpha={best['alpha']}",
        gray=None if gm is None else {"name": gm.name, "coords": gm.coords,
                                      "N": _matrix_text(F, gm.N), "beta": F.format(gm.beta)},
    )
    stated = row["alpha"][0]
    if str(best["alpha"]) != str(stated) and len(row["alpha"]) > 1:
        notes.append(f"reproduced with alpha={best['alpha']}, not the first candidate {stated}")
    return rec


def verify_row(row: dict, cfg: Config) -> dict:
    t0 = time.perf_counter()
    rec = _VERIFIERS[row["kind"]](row, cfg)
    rec["wall_time"] = round(time.perf_counter() - t0, 4)
    return rec


def cmd_verify(rows: list[dict], cfg: Config | None = None, source: str = "") -> dict:
    cfg = cfg or Config()
    records = [verify_row(r, cfg) for r in rows]
    summary = {s: sum(1 for r in records if r["status"] == s) for s in (PASS, FAIL, FLAGGED)}
    return {"command": "verify", "source": source, "summary": summary, "rows": records}


# -- factor check -----------------------------------------------------


def factor_check(S: SkewRing, g_text: str, cofactor_text: str, n: int) -> dict:
    """cofactor * g against x^n - 1, and independently the right remainder of x^n - 1 by g."""
    g = parse_poly(S, g_text)
    h = parse_poly(S, cofactor_text)
    target = S.x_n_minus_1(n)
    prod = h * g
    quo, rem = right_divide(target, g)
    return {
        "product": format_poly(prod),
        "product_equal": prod == target,
        "remainder": format_poly(rem),
        "remainder_zero": rem.is_zero(),
        "quotient_equals_cofactor": quo == h,
    }


def cmd_factor_check(q: int, n: int, g: str, cofactor: str, alpha: str, cfg: Config | None = None,
                     e: int = 1) -> dict:
    cfg = cfg or Config()
    F = field_from_order(q, cfg.modulus(q))
    S = SkewRing.inner(F, alpha=F.parse(alpha), e=e)
    res = factor_check(S, g, cofactor, n)
    return {"command": "factor-check", "field": _field_info(F), "n": n,
            "delta": f"alpha={alpha}", **res}


# -- search -----------------------------------------------------------


@dataclass
class Cursor:
    alpha_index: int = 0
    degree: int = 0
    index: int = 0

    def __str__(self) -> str:
        return f"{self.alpha_index}:{self.degree}:{self.index}"

    @classmethod
    def parse(cls, text: str | None) -> "Cursor":
        if not text:
            return cls()
        try:
            a, d, i = (int(x) for x in text.split(":"))
        except ValueError:
            raise CursorError(f"bad resume cursor {text!r}; expected alpha:degree:index") from None
        return cls(a, d, i)


@dataclass
class Frontier:
    entries: list[dict] = field(default_factory=list)

    def offer(self, entry: dict) -> None:
        k, d = entry["k"], entry["d"]
        for e in self.entries:
            if e["k"] >= k and e["d"] >= d:
                return
        self.entries = [e for e in self.entries if not (k >= e["k"] and d >= e["d"])]
        self.entries.append(entry)
        self.entries.sort(key=lambda e: (-e["k"], -e["d"]))


def cmd_search(
    q: int,
    n: int,
    degrees: range,
    alphas: list[str],
    l: int = 1,
    budget: int | None = None,
    resume: str | None = None,
    target_d: int | None = None,
    cfg: Config | None = None,
    keep_all: bool = False,
) -> dict:
    """Stream monic right divisors in lexicographic order and keep the (k, d) frontier."""
    cfg = cfg or Config()
    F = field_from_order(q, cfg.modulus(q))
    cur = Cursor.parse(resume)
    remaining = budget if budget is not None else cfg.search_candidates
    frontier = Frontier()
    scanned = 0
    complete = True
    next_cursor = None
    found = 0
    per_alpha: dict[str, list] = {}
    codes: list[dict] = []
    for ai, tok in enumerate(alphas):
        if ai < cur.alpha_index:
            continue
        S = SkewRing.inner(F, alpha=F.parse(tok))
        divs = per_alpha.setdefault(tok, [])
        for deg in degrees:
            if (ai, deg) < (cur.alpha_index, cur.degree):
                continue
            start = cur.index if (ai, deg) == (cur.alpha_index, cur.degree) else 0
            scan = enumerate_right_divisors(S, n, deg, budget=remaining, start=start)
            scanned += scan.scanned
            if remaining is not None:
                remaining -= scan.scanned
            for g in scan.divisors:
                found += 1
                divs.append(g)
                if l == 1:
                    cc = code_from_generator(g, n, check_divisor=False)
                    dres = _distance(cc.code, cfg)
                    entry = {"k": cc.k, "d": dres.d, "exact": dres.exact, "n": n,
                             "generators": [format_poly(g)], "delta": f"alpha={tok}"}
                    if keep_all:
                        codes.append(entry)
                    if target_d is None or dres.d >= target_d:
                        frontier.offer(entry)
            if not scan.complete:
                complete = False
                next_cursor = str(Cursor(ai, deg, scan.next_cursor))
                break
        if not complete:
            break
        if l > 1:
            _combine(F, S, tok, divs, n, l, frontier, target_d, cfg)
    out = {
        "command": "search",
        "field": _field_info(F),
        "n": n,
        "l": l,
        "degrees": [degrees.start, degrees.stop - 1] if len(degrees) else [],
        "alphas": list(alphas),
        "scanned": scanned,
        "divisors_found": found,
        "complete": complete,
        "next_cursor": next_cursor,
        "frontier": frontier.entries,
    }
    if keep_all:
        out["codes"] = codes
    return out


def _combine(F, S, tok, divs, n, l, frontier, target_d, cfg) -> None:
    cands = gray_candidates(F, l)
    for combo in itertools.combinations_with_replacement(range(len(divs)), l):
        gs = [divs[i] for i in combo]
        rc = rl_code_build(gs, n, S)
        for cand in cands:
            image = gray_image(rc, cand["gray"])
            dres = _distance(image, cfg)
            if target_d is None or dres.d >= target_d:
                frontier.offer({"k": image.k, "d": dres.d, "exact": dres.exact, "n": image.n,
                                "generators": [format_poly(g) for g in gs],
                                "delta": f"alpha={tok}",
                                "gray": f"{cand['gray'].name}/{cand['gray'].coords}"})


# -- single-code commands ---------------------------------------------


def code_info(q: int, n: int, g: str, alpha: str, cfg: Config | None = None, e: int = 1) -> dict:
    cfg = cfg or Config()
    F = field_from_order(q, cfg.modulus(q))
    S = SkewRing.inner(F, alpha=F.parse(alpha), e=e)
    cc = code_from_generator(parse_poly(S, g), n)
    dres = _distance(cc.code, cfg)
    return {
        "command": "code-info",
        "field": _field_info(F),
        "n": n,
        "k": cc.k,
        "d": dres.d,
        "exact": dres.exact,
        "status": dres.status,
        "classification": classify(n, cc.k, dres.d) if dres.exact else None,
        "generators": [format_poly(cc.g)],
        "delta": f"alpha={alpha}",
        "method": dres.method,
        "witness": list(dres.witness) if dres.witness else None,
    }


def read_matrix(F: GF, text: str) -> list[list[int]]:
    """One row per line; entries separated by commas or whitespace; # comments."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([F.parse(tok) for tok in line.replace(",", " ").split()])
    return rows


def gray_info(q: int, N_text: str, l: int, coords: str = "v", cfg: Config | None = None) -> dict:
    cfg = cfg or Config()
    F = field_from_order(q, cfg.modulus(q))
    N = read_matrix(F, N_text)
    if len(N) != l:
        raise CodeError(f"matrix has {len(N)} rows, expected l={l}")
    gm = gray_matrix_check(F, N, coords)
    return {"command": "gray", "field": _field_info(F), "l": l, "coords": coords,
            "N": _matrix_text(F, gm.N), "beta": F.format(gm.beta)}


def dna_info(n: int, g: str, alpha: str, cfg: Config | None = None) -> tuple[dict, object]:
    cfg = cfg or Config()
    F = field_from_order(4, cfg.modulus(4))
    S = SkewRing.inner(F, alpha=F.parse(alpha))
    cc = code_from_generator(parse_poly(S, g), n)
    table = emit_dna_table(cc.code, limit=cfg.enum_limit)
    for w in table.words:
        if f4_to_dna(dna_to_f4(w, F), F) != w or complement(complement(w)) != w:
            raise AssertionError(f"round trip failed on {w}")
    rep = {
        "command": "dna",
        "field": _field_info(F),
        "n": n,
        "k": cc.k,
        "delta": f"alpha={alpha}",
        "generators": [format_poly(cc.g)],
        "reversible": is_reversible(cc.code),
        "complement_closed": is_complement_closed(cc.code),
        "words": len(table.words),
        "digest": table.digest,
    }
    rep["dna_code"] = rep["reversible"] and rep["complement_closed"]
    return rep, table


# -- report I/O -------------------------------------------------------


def report_schema() -> dict:
    return json.loads((resources.files("skewcodes") / "report.schema.json").read_text())


def validate_report(report: dict) -> None:
    jsonschema.validate(report, report_schema())


def dump_report(report: dict) -> str:
    validate_report(report)
    return json.dumps(report, indent=2) + "\n"


def strip_times(report: dict) -> dict:
    """Copy without wall_time fields, for determinism comparisons."""
    out = json.loads(json.dumps(report))
    for r in out.get("rows", []):
        r.pop("wall_time", None)
    return out


CSV_COLUMNS = ["id", "status", "q", "modulus", "n", "k", "d", "exact", "classification",
               "delta", "gray", "wall_time"]


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.get("rows", []):
        gray = r.get("gray")
        w.writerow([
            r["id"], r["status"], r["field"].get("q"), r["field"].get("modulus", ""),
            r["n"], r.get("k"), r.get("d"), r.get("exact"), r.get("classification") or "",
            r.get("delta") or "", f"{gray['name']}/{gray['coords']}" if gray else "",
            r.get("wall_time"),
        ])
    return buf.getvalue()
