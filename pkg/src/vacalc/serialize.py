"""JSON encodings, the state mini-grammar, and fixture loading.

Rationals are written as canonical strings (``str(Fraction)``) and every
object is emitted with sorted keys so identical inputs give identical bytes.

State grammar (whitespace is ignored)::

    state   := term (('+' | '-') term)*
    term    := [coef ['*']] word '|0>'
    coef    := integer ['/' integer]
    word    := gen*
    gen     := label '(' integer ')' | 'J[' label ']' '(' integer ')'

Words are applied to the vacuum right to left, so annihilation modes are
allowed and ``b(1)b(-1)|0>`` parses to ``|0>``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Mapping

from .bicharacter import Bicharacter, TableBicharacter
from .laurent import LaurentPoly
from .pbw import AFFINE, AlgebraFamily, FamilyError, State, TensorState, apply_word
from .singular import Ring, SingularFn, format_singular


class ParseError(ValueError):
    """Malformed state text or fixture."""


# scalars and polynomials


def frac_str(c) -> str:
    if isinstance(c, SingularFn):
        return format_singular(c)
    return str(Fraction(c))


def laurent_to_json(p: LaurentPoly) -> dict:
    terms = [{"exps": dict(mono), "coef": str(c)} for mono, c in sorted(p.items())]
    return {"terms": terms}


def laurent_from_json(obj: Mapping) -> LaurentPoly:
    try:
        terms = {}
        for t in obj["terms"]:
            key = tuple(sorted((str(v), int(e)) for v, e in t["exps"].items() if int(e)))
            terms[key] = terms.get(key, 0) + Fraction(t["coef"])
        return LaurentPoly(terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad Laurent polynomial: {exc}") from None


def ring_to_json(ring: Ring) -> dict:
    return {"mode": ring.mode, "t": None if ring.t is None else str(ring.t)}


def ring_from_json(obj: Mapping | None) -> Ring:
    if not obj:
        return Ring()
    t = obj.get("t", "0")
    return Ring(obj.get("mode", "additive"), None if t is None else Fraction(t))


def singular_to_json(fn: SingularFn) -> dict:
    return {
        "num": laurent_to_json(fn.num),
        "den": [{"i": i, "j": j, "shift": str(c), "power": p} for (i, j, c), p in fn.den],
        "ring": ring_to_json(fn.ring),
    }


def singular_from_json(obj: Mapping, ring: Ring | None = None) -> SingularFn:
    ring = ring or ring_from_json(obj.get("ring"))
    try:
        num = laurent_from_json(obj["num"]) if "num" in obj else LaurentPoly.constant(Fraction(obj.get("coef", "1")))
        den = [((int(d["i"]), int(d["j"]), Fraction(d.get("shift", "0"))), int(d.get("power", 1)))
               for d in obj.get("den", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad singular value: {exc}") from None
    return SingularFn(num, den, ring)


# states


def state_to_json(s: State) -> dict:
    fam = s.family
    return {"terms": [{"monomial": fam.mono_str(m), "coef": frac_str(c)} for m, c in s.sorted_items()]}


def tensor_to_json(t: TensorState) -> dict:
    fam = t.family
    rows = []
    for k, c in sorted(t.terms.items()):
        rows.append({"slots": [fam.mono_str(m) for m in k], "coef": frac_str(c)})
    return {"points": list(t.points), "terms": rows}


_TOKEN = re.compile(r"J\[(?P<jlab>[A-Za-z_][A-Za-z0-9_]*)\]\((?P<jmode>[+-]?\d+)\)"
                    r"|(?P<lab>[A-Za-z_][A-Za-z0-9_]*)\((?P<mode>[+-]?\d+)\)")
_COEF = re.compile(r"(?P<num>\d+)(?:/(?P<den>\d+))?\*?")


def parse_state(text: str, family: AlgebraFamily) -> State:
    """Parse the mini-grammar into a straightened state of ``family``."""
    src = "".join(text.split())
    if not src:
        raise ParseError("empty state")
    pos = 0
    total = State(family, {})
    first = True
    while pos < len(src):
        sign = 1
        if src[pos] in "+-":
            sign = -1 if src[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at position {pos} in {text!r}")
        first = False
        coef = Fraction(sign)
        m = _COEF.match(src, pos)
        if m and not src.startswith("|0>", pos):
            coef *= Fraction(int(m["num"]), int(m["den"] or 1))
            pos = m.end()
        word = []
        while True:
            t = _TOKEN.match(src, pos)
            if not t:
                break
            if t["jlab"] is not None:
                if family.kind != AFFINE:
                    raise ParseError(f"J[...] generators need an affine family, got {family.kind}")
                label, mode = t["jlab"], int(t["jmode"])
            else:
                if family.kind == AFFINE:
                    raise ParseError("affine generators are written J[label](n)")
                label, mode = t["lab"], int(t["mode"])
            try:
                word.append(family.gen(label, mode))
            except (FamilyError, KeyError, ValueError) as exc:
                raise ParseError(f"unknown generator {t.group(0)!r}: {exc}") from None
            pos = t.end()
        if not src.startswith("|0>", pos):
            raise ParseError(f"expected '|0>' at position {pos} in {text!r}")
        pos += 3
        total = total + apply_word(word, State.vacuum(family)) * coef
    return total


# OPE results and reports


def ope_to_json(res) -> dict:
    out = {
        "principal": {str(p): state_to_json(s) for p, s in sorted(res.principal.items())},
        "regular": [{"i": i, "j": j, "state": state_to_json(s)} for (i, j), s in sorted(res.regular.items())],
        "truncation": res.truncation,
    }
    if res.defect:
        out["defect"] = [{"m": m, "j": j, "state": state_to_json(s)} for (m, j), s in sorted(res.defect.items())]
    return out


def to_jsonable(obj: Any) -> Any:
    """Best-effort conversion of checker witnesses into JSON values."""
    from .vertex import OpeResult

    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, SingularFn):
        return format_singular(obj)
    if isinstance(obj, LaurentPoly):
        return laurent_to_json(obj)
    if isinstance(obj, State):
        return state_to_json(obj)
    if isinstance(obj, TensorState):
        return tensor_to_json(obj)
    if isinstance(obj, OpeResult):
        return ope_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# fixtures


def family_from_json(obj: Mapping) -> AlgebraFamily:
    try:
        kind = obj["kind"]
        level = Fraction(str(obj.get("level", obj.get("central_charge", "1"))))
        if kind == "virasoro":
            return AlgebraFamily.virasoro(level)
        if kind == "heisenberg":
            return AlgebraFamily.heisenberg(level)
        labels = list(obj["labels"])
        idx = {lab: i for i, lab in enumerate(labels)}
        brackets: Dict = {}
        for row in obj.get("brackets", []):
            key = (idx[row["a"]], idx[row["b"]])
            brackets[key] = {idx[k]: Fraction(str(v)) for k, v in row["result"].items()}
        form = [[Fraction(str(v)) for v in r] for r in obj["form"]]
        return AlgebraFamily(kind, labels, brackets, form, level, obj.get("name"))
    except FamilyError as exc:
        raise ParseError(f"invalid family: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed family fixture: {exc!r}") from None


def family_to_json(fam: AlgebraFamily) -> dict:
    if fam.kind == "virasoro":
        return {"kind": "virasoro", "central_charge": str(fam.level)}
    if fam.kind == "heisenberg":
        return {"kind": "heisenberg", "level": str(fam.level)}
    rows = []
    for (i, j), res in sorted(fam.brackets.items()):
        rows.append({"a": fam.labels[i], "b": fam.labels[j],
                     "result": {fam.labels[k]: str(v) for k, v in sorted(res.items())}})
    return {"kind": fam.kind, "name": fam.name, "labels": list(fam.labels), "brackets": rows,
            "form": [[str(v) for v in r] for r in fam.form], "level": str(fam.level)}


def bicharacter_from_json(obj: Mapping, family: AlgebraFamily) -> TableBicharacter:
    """Table bicharacter; an optional "level" re-levels the family first."""
    ring = ring_from_json(obj.get("ring"))
    fam = family
    if "level" in obj:
        fam = family.with_level(Fraction(str(obj["level"])))
    if "family" in obj and obj["family"] != fam.kind and obj["family"] != fam.name:
        raise ParseError(f"bicharacter is for {obj['family']!r}, family is {fam.name!r}")
    try:
        table = {}
        for row in obj["table"]:
            table[(row["a"], row["b"])] = singular_from_json(row["value"], ring)
        return TableBicharacter(fam, table, ring, obj.get("name", "table"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed bicharacter fixture: {exc!r}") from None


def bicharacter_to_json(r: TableBicharacter) -> dict:
    fam = r.family
    rows = []
    for (i, j), v in sorted(r.table.items()):
        rows.append({"a": fam.labels[i], "b": fam.labels[j], "value": singular_to_json(v)})
    return {"family": fam.name, "name": r.name, "level": str(fam.level),
            "ring": ring_to_json(r.ring), "table": rows}


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from None


__all__ = [
    "ParseError", "frac_str", "laurent_to_json", "laurent_from_json", "ring_to_json",
    "ring_from_json", "singular_to_json", "singular_from_json", "state_to_json",
    "tensor_to_json", "parse_state", "ope_to_json", "to_jsonable", "dumps", "family_from_json",
    "family_to_json", "bicharacter_from_json", "bicharacter_to_json", "load_json",
]
