"""JSON text forms for every value the CLI reads or writes.

Floats are written with 17 significant digits so that output is byte-stable
and re-parses to the identical double.
"""
from __future__ import annotations

import json
import math
from typing import Any

from .classifier import ClassificationReport, TranscriptMap
from .errors import FormatError
from .families import FamilySpec, FormI, FormII, FormIII, FormIV, TildeVariant
from .families import make_form_i, make_form_ii, make_form_iii, make_form_iv
from .herm import BDBDecomposition, Herm2, InvolutionParam, Unitary2
from .scalar import EtaTable, MultiplicativeModel, ScalarJtpHom
from .verifier import PropertyResult, VerificationReport


# -- emitter -----------------------------------------------------------------

def _num(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _numeric(obj: Any) -> bool:
    """Numbers, or lists nested from numbers; such arrays are written on one line."""
    if isinstance(obj, (list, tuple)):
        return all(_numeric(v) for v in obj)
    return isinstance(obj, (int, float)) and not isinstance(obj, bool)


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Serialize plain JSON data (dict/list/str/bool/int/float/None)."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if _numeric(obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}") from None


# -- field helpers -----------------------------------------------------------

def _need(d: Any, key: str, kind=dict):
    if not isinstance(d, dict):
        raise FormatError(f"expected an object, got {type(d).__name__}")
    if key not in d:
        raise FormatError(f"missing field {key!r}")
    return d[key]


def _real(v: Any, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"{what} must be a number")
    return float(v)


def _sign(v: Any, what: str = "sign") -> int:
    if v not in (-1, 1) or isinstance(v, bool):
        raise FormatError(f"{what} must be -1 or 1")
    return int(v)


def complex_to_json(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def complex_from_json(v: Any) -> complex:
    if not isinstance(v, list) or len(v) != 2:
        raise FormatError("a complex number is written [re, im]")
    return complex(_real(v[0], "re"), _real(v[1], "im"))


# -- matrices ----------------------------------------------------------------

def matrix_to_json(A: Herm2) -> dict:
    return {"a": float(A.a), "c": float(A.c), "b": complex_to_json(A.b)}


def matrix_from_json(d: Any) -> Herm2:
    a = _real(_need(d, "a"), "a")
    c = _real(_need(d, "c"), "c")
    b = complex_from_json(d.get("b", [0.0, 0.0]))
    try:
        return Herm2(a, c, b)
    except ValueError as e:
        raise FormatError(str(e)) from None


def unitary_to_json(U: Unitary2) -> dict:
    return {"rows": [[complex_to_json(U.u00), complex_to_json(U.u01)],
                     [complex_to_json(U.u10), complex_to_json(U.u11)]]}


def unitary_from_json(d: Any) -> Unitary2:
    rows = _need(d, "rows")
    if not isinstance(rows, list) or len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
        raise FormatError("unitary rows must be a 2x2 array of [re, im] pairs")
    return Unitary2(*(complex_from_json(z) for r in rows for z in r))


# -- scalar maps -------------------------------------------------------------

def mult_to_json(m: MultiplicativeModel) -> dict:
    d: dict = {"variant": m.variant}
    if m.p is not None:
        d["p"] = float(m.p)
    if m.domain == "nonzero":
        d["neg_sign"] = m.neg_sign
    d["domain"] = m.domain
    return d


def mult_from_json(d: Any) -> MultiplicativeModel:
    variant = _need(d, "variant")
    p = d.get("p")
    try:
        return MultiplicativeModel(variant, None if p is None else _real(p, "p"),
                                   d.get("domain", "nonneg"), _sign(d.get("neg_sign", 1), "neg_sign"))
    except ValueError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from None


def eta_to_json(t: EtaTable) -> dict:
    return {"eta0": t.eta0, "eta1": t.eta1, "eta2": t.eta2}


def eta_from_json(d: Any) -> EtaTable:
    return EtaTable(*(_sign(_need(d, k), k) for k in ("eta0", "eta1", "eta2")))


def hom_to_json(h: ScalarJtpHom) -> dict:
    return {"psi": mult_to_json(h.psi), "eta": eta_to_json(h.eta)}


def hom_from_json(d: Any) -> ScalarJtpHom:
    psi = mult_from_json(_need(d, "psi"))
    eta = eta_from_json(d["eta"]) if "eta" in d else EtaTable()
    try:
        return ScalarJtpHom(psi, eta)
    except ValueError as e:
        raise FormatError(str(e)) from None


# -- map specs ---------------------------------------------------------------

_FORM_TAGS = {FormI: "i", FormII: "ii", FormIII: "iii", FormIV: "iv"}


def spec_to_json(spec: FamilySpec) -> dict:
    d: dict = {"form": _FORM_TAGS[type(spec)]}
    if not isinstance(spec, FormI):
        d["sign"] = spec.sign
    d["U"] = unitary_to_json(spec.U)
    if isinstance(spec, FormI):
        d["hom1"] = hom_to_json(spec.hom1)
        d["hom2"] = hom_to_json(spec.hom2)
    if isinstance(spec, FormIV):
        d["beta"] = mult_to_json(spec.beta)
        d["tilde"] = spec.tilde.value
    return d


def spec_from_json(d: Any) -> FamilySpec:
    """Parse a map-spec; schema problems raise FormatError, bad parameters PreconditionError."""
    form = _need(d, "form")
    U = unitary_from_json(d["U"]) if "U" in d else Unitary2.identity()
    if form == "i":
        return make_form_i(U, hom_from_json(_need(d, "hom1")), hom_from_json(_need(d, "hom2")))
    sign = _sign(d.get("sign", 1))
    if form == "ii":
        return make_form_ii(sign, U)
    if form == "iii":
        return make_form_iii(sign, U)
    if form == "iv":
        try:
            tilde = TildeVariant(d.get("tilde", "A"))
        except ValueError:
            raise FormatError(f"unknown tilde variant {d.get('tilde')!r}") from None
        beta = mult_from_json(d["beta"]) if "beta" in d else MultiplicativeModel("one", None, "nonzero")
        return make_form_iv(sign, U, beta, tilde)
    raise FormatError(f"unknown form {form!r}")


# -- transcripts and reports -------------------------------------------------

def transcript_to_json(t: TranscriptMap) -> list:
    return [{"in": matrix_to_json(A), "out": matrix_to_json(X)} for A, X in t.pairs()]


def transcript_from_json(v: Any) -> TranscriptMap:
    if not isinstance(v, list):
        raise FormatError("a transcript is a list of {\"in\", \"out\"} objects")
    return TranscriptMap((matrix_from_json(_need(e, "in")), matrix_from_json(_need(e, "out"))) for e in v)


def classification_to_json(r: ClassificationReport) -> dict:
    return {"branch_path": list(r.branch_path), "fitted": spec_to_json(r.fitted),
            "fit_residual": float(r.fit_residual), "gauge_note": r.gauge_note}


def classification_from_json(d: Any) -> ClassificationReport:
    path = _need(d, "branch_path")
    if not isinstance(path, list) or not all(isinstance(s, str) for s in path):
        raise FormatError("branch_path must be a list of strings")
    return ClassificationReport(path, spec_from_json(_need(d, "fitted")), str(_need(d, "gauge_note")),
                                _real(_need(d, "fit_residual"), "fit_residual"))


def verification_to_json(r: VerificationReport) -> dict:
    d: dict = {"n": r.n_samples, "max_residual": float(r.max_residual)}
    if r.witness is not None:
        d["witness"] = {"A": matrix_to_json(r.witness[0]), "B": matrix_to_json(r.witness[1])}
    d["properties"] = [{"name": p.name, "pass": bool(p.passed), "deviation": float(p.deviation)}
                       for p in r.property_results]
    d["pass"] = bool(r.passed)
    d["note"] = r.note
    return d


def verification_from_json(d: Any) -> VerificationReport:
    w = d.get("witness") if isinstance(d, dict) else None
    witness = None if w is None else (matrix_from_json(_need(w, "A")), matrix_from_json(_need(w, "B")))
    props = [PropertyResult(str(_need(p, "name")), bool(_need(p, "pass")), _real(_need(p, "deviation"), "deviation"))
             for p in _need(d, "properties")]
    passed = bool(d.get("pass", all(p.passed for p in props)))
    report = VerificationReport(int(_need(d, "n")), _real(_need(d, "max_residual"), "max_residual"),
                                witness, props, passed)
    if "note" in d:
        report.note = str(d["note"])
    return report


def bdb_to_json(r: BDBDecomposition) -> dict:
    return {"B": matrix_to_json(r.B), "lambda1": float(r.lambda1), "lambda2": float(r.lambda2)}


def bdb_from_json(d: Any) -> BDBDecomposition:
    return BDBDecomposition(matrix_from_json(_need(d, "B")), _real(_need(d, "lambda1"), "lambda1"),
                            _real(_need(d, "lambda2"), "lambda2"))


def involution_param_to_json(p: InvolutionParam) -> dict:
    d: dict = {"kind": p.kind, "sign": p.sign}
    if p.kind == "branch":
        d["a"] = complex_to_json(p.a)
    return d


def involution_param_from_json(d: Any) -> InvolutionParam:
    kind = _need(d, "kind")
    if kind not in ("branch", "scalar"):
        raise FormatError(f"unknown involution kind {kind!r}")
    a = complex_from_json(d["a"]) if "a" in d else 0j
    return InvolutionParam(kind, _sign(_need(d, "sign")), a)
