"""Presentation layer: letter aliases, text/LaTeX polynomials, JSON documents.

The machine schema keys variables as "form:index" so it works for any number
of forms; the letter aliases x, y, u, v, w cover the first five forms and are
presentation only.  JSON serialization is deterministic and round-trips
byte-identically through parse_document / render_json.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Tuple

from .forms import FormSpec, Polynomial, Variable
from .genset import GeneratingSet, GeneratorRecord, RunStrategy

FORM_LETTERS = "xyuvw"


def render_letters(v: Variable) -> str:
    form, index = v
    if form < len(FORM_LETTERS):
        return f"{FORM_LETTERS[form]}_{index}"
    return f"x{form}_{index}"


def _sorted_monomials(p: Polynomial) -> List[tuple]:
    # graded-lex descending, the same order component_monomials produces
    return sorted(p.terms, key=lambda m: (sum(m), m), reverse=True)


def _variable_powers(spec: FormSpec, mono: tuple) -> List[Tuple[Variable, int]]:
    return [(spec.variable_at(slot), e) for slot, e in enumerate(mono) if e]


def render_poly_text(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    spec = p.spec
    parts = []
    for mono, coeff in ((m, p.terms[m]) for m in _sorted_monomials(p)):
        factors = []
        for var, e in _variable_powers(spec, mono):
            name = render_letters(var)
            factors.append(name if e == 1 else f"{name}^{e}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


def _latex_coeff(mag: Fraction) -> str:
    if mag.denominator == 1:
        return str(mag.numerator)
    return f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"


def render_poly_latex(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    spec = p.spec
    parts = []
    for mono, coeff in ((m, p.terms[m]) for m in _sorted_monomials(p)):
        factors = []
        for var, e in _variable_powers(spec, mono):
            form, index = var
            base = (f"{FORM_LETTERS[form]}_{{{index}}}" if form < len(FORM_LETTERS)
                    else f"x{form}_{{{index}}}")
            factors.append(base if e == 1 else f"{base}^{{{e}}}")
        mag = abs(coeff)
        body = "".join(factors)
        if mag != 1 or not body:
            body = _latex_coeff(mag) + ("\\," if body else "") + body
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


def render_series_factors(factors) -> str:
    parts = []
    for a, mult in factors:
        base = f"(1 - t^{a})" if a > 1 else "(1 - t)"
        parts.append(base if mult == 1 else f"{base}^{mult}")
    return "".join(parts) if parts else "1"


def render_series_poly(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        term = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if k > 0 and mag != 1:
            term = f"{mag}*{term}"
        elif k == 0:
            term = str(mag)
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {term}")
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# JSON document


def _term_entries(spec: FormSpec, p: Polynomial) -> List[dict]:
    entries = []
    for mono in _sorted_monomials(p):
        exps = {}
        for var, e in _variable_powers(spec, mono):
            exps[f"{var[0]}:{var[1]}"] = e
        entries.append({"coeff": str(p.terms[mono]), "exponents": exps})
    return entries


def build_document(gset: GeneratingSet) -> dict:
    counts = gset.degree_counts
    return {
        "schema": 1,
        "degrees": list(gset.spec.degrees),
        "mode": gset.mode,
        "strategy": gset.strategy.value,
        "cap_used": gset.cap_used,
        "beta": gset.beta,
        "counts": {str(d): counts[d] for d in sorted(counts)},
        "generators": [
            {
                "multidegree": list(r.multidegree),
                "order": r.order,
                "total_degree": r.total_degree,
                "terms": _term_entries(gset.spec, r.polynomial),
            }
            for r in gset.records
        ],
    }


def render_json(gset: GeneratingSet) -> str:
    return json.dumps(build_document(gset), indent=2) + "\n"


def parse_document(text: str) -> GeneratingSet:
    """Rebuild a GeneratingSet from its JSON document (cell evidence is not
    part of the schema and comes back empty)."""
    doc = json.loads(text)
    if doc.get("schema") != 1:
        raise ValueError(f"unsupported document schema: {doc.get('schema')!r}")
    spec = FormSpec(tuple(doc["degrees"]))
    records = []
    for entry in doc["generators"]:
        terms: Dict[tuple, Fraction] = {}
        for term in entry["terms"]:
            mono = [0] * spec.nvars
            for key, e in term["exponents"].items():
                form_s, idx_s = key.split(":")
                mono[spec.slot(Variable(int(form_s), int(idx_s)))] = e
            terms[tuple(mono)] = Fraction(term["coeff"])
        records.append(GeneratorRecord(Polynomial(spec, terms),
                                       tuple(entry["multidegree"]),
                                       entry["order"], entry["total_degree"]))
    return GeneratingSet(spec, doc["mode"], RunStrategy(doc["strategy"]),
                         doc["cap_used"], doc["beta"], tuple(records), ())
