"""Command implementations; each returns an OutputRecord."""

from fractions import Fraction
from typing import List, Optional, Sequence

from app.errors import ContractViolation
from app.fusion.ranks import (
    nonvanishing_criterion, rank, rank_1t, rank_by_reflection, rank_closed_form, reflection_terms,
)
from app.fusion.verlinde import verlinde_rank_numeric
from app.divisors.classes import FCurve, SymDivisor
from app.divisors.cb import (
    CLOSED_FORM_TAGS, cb_divisor_class, closed_form_class, degree_4pt, genus_of, intersect_cb_fcurve, tag_level,
)
from app.nefcone.faces import nef_face_report
from app.nefcone.logcan import log_canonical_feasibility
from app.pullbacks.maps import FLAG, HYPERELLIPTIC, GDivisor, flag_pullback, h_pullback
from app.pullbacks.flag import f_divisor_check, verify_flag_program
from app.cli.records import OutputRecord


def _coefficients(divisor: SymDivisor) -> dict:
    return {f"B{i}": c for i, c in divisor.as_dict().items()}


def rank_command(level: int, weights: Sequence[int]) -> OutputRecord:
    return OutputRecord(
        "rank",
        inputs={"level": level, "weights": list(weights)},
        outputs={"rank": rank(level, weights)},
        verdicts={"nonvanishing": nonvanishing_criterion(level, weights)},
        citations=["factorization and propagation", "fusion rules for sl2"],
    )


def rank_table_command(level: int, max_j: int) -> OutputRecord:
    """r_level(j, t) for 0 <= j <= max_j by all four algorithms."""
    table = []
    agree = True
    for j in range(max_j + 1):
        for t in range(level + 1):
            recurrence = rank_1t(level, j, t)
            closed = rank_closed_form(level, j, t)
            reflected = rank_by_reflection(level, j, t)
            numeric = verlinde_rank_numeric(level, [1] * j + [t]) if (j + t) % 2 == 0 else 0
            same = recurrence == closed == reflected == numeric
            agree = agree and same
            table.append({"j": j, "t": t, "recurrence": recurrence, "closed_form": closed,
                          "reflection": reflected, "verlinde": numeric, "agree": same})
    return OutputRecord(
        "rank-table",
        inputs={"level": level, "max_j": max_j},
        outputs={"table": table},
        verdicts={"all algorithms agree": agree},
        citations=["Pascal recurrence", "binomial closed form", "reflection of r_inf", "Verlinde formula"],
    )


def reflect_command(level: int, j: int, t: int) -> OutputRecord:
    terms = reflection_terms(level, j, t)
    expression = " ".join(f"{'+' if sign > 0 else '-'} {value}" for sign, _, value in terms).lstrip("+ ")
    return OutputRecord(
        "reflect",
        inputs={"level": level, "j": j, "t": t},
        outputs={"terms": [{"sign": s, "column": c, "r_inf": v} for s, c, v in terms],
                 "expression": expression or "0",
                 "rank": rank_by_reflection(level, j, t)},
        citations=["alternating sum of reflections across marked columns"],
    )


def deg4_command(level: int, mu: Sequence[int]) -> OutputRecord:
    return OutputRecord(
        "deg4",
        inputs={"level": level, "mu": list(mu)},
        outputs={"degree": degree_4pt(level, mu), "rank": rank(level, mu)},
        citations=["four-point degree via Casimir scalars"],
    )


def intersect_command(level: int, n: int, parts: Sequence[int]) -> OutputRecord:
    curve = FCurve(tuple(parts))
    value = intersect_cb_fcurve(level, n, curve)
    verdicts = {}
    if n % 2:
        verdicts["odd n gives the zero divisor"] = value == 0
    return OutputRecord(
        "intersect",
        inputs={"level": level, "n": n, "fcurve": curve.label()},
        outputs={"intersection": value},
        verdicts=verdicts,
        citations=["restriction to the symmetric F-curve"],
    )


def tag_for_level(level: int, g: int) -> str:
    """First closed-form tag naming ``level`` at genus g."""
    for tag in CLOSED_FORM_TAGS:
        try:
            if tag_level(tag, g) == level:
                return tag
        except ContractViolation:
            continue
    raise ContractViolation("closed-form-tag", f"No closed formula for level {level} at g={g}")


def class_command(level: int, n: int, closed_form: bool = False, tag: Optional[str] = None) -> OutputRecord:
    divisor = cb_divisor_class(level, n)
    outputs = {"coefficients": _coefficients(divisor)}
    verdicts = {}
    if divisor.diagnostic:
        outputs["diagnostic"] = divisor.diagnostic
    if closed_form or tag:
        tag = tag or tag_for_level(level, genus_of(n))
        if tag_level(tag, genus_of(n)) != level:
            raise ContractViolation("closed-form-tag", f"Tag {tag} does not name level {level} at n={n}")
        closed = closed_form_class(tag, n)
        outputs["closed_form_tag"] = tag
        outputs["closed_form"] = _coefficients(closed)
        verdicts["closed form matches"] = closed == divisor
    return OutputRecord("class", inputs={"level": level, "n": n}, outputs=outputs, verdicts=verdicts,
                        citations=["reduced class formula"])


def nef_face_command(level: int, n: int) -> OutputRecord:
    report = nef_face_report(cb_divisor_class(level, n))
    outputs = {"claim": report.claim(), "rho": report.rho, "dimension": report.dimension,
               "zero_curves": [c.label() for c in report.zero_curves]}
    if report.witness is not None:
        outputs["witness"] = report.witness.label()
        outputs["witness_value"] = report.witness_value
    return OutputRecord(
        "nef-face",
        inputs={"level": level, "n": n},
        outputs=outputs,
        verdicts={"F-nef": report.f_nef, "extremal ray": report.extremal},
        citations=["vanishing F-curves span the face"],
    )


def logcan_command(level: int, n: int) -> OutputRecord:
    cert = log_canonical_feasibility(cb_divisor_class(level, n))
    outputs = {"u_interval": list(cert.u_interval), "c_interval": list(cert.c_interval)}
    if cert.feasible:
        outputs.update({"witness_u": cert.witness_u, "witness_c": cert.witness_c,
                        "witness_b": {f"b{i}": v for i, v in cert.witness_b.items()}})
    else:
        outputs.update({"blocking": list(cert.blocking), "reason": cert.reason})
    return OutputRecord(
        "logcan",
        inputs={"level": level, "n": n},
        outputs=outputs,
        verdicts={"symmetrically log canonical": cert.feasible},
        citations=["u*D = K + sum b_i B_i with 0 <= b_i <= 1"],
    )


def _gdivisor(context: str, genus_h: int, a: Fraction, b: List[Fraction]) -> GDivisor:
    return GDivisor(genus_h, a, dict(enumerate(b)), context)


def pullback_command(kind: str, genus_h: int, a: Fraction, b: List[Fraction]) -> OutputRecord:
    if kind == "h":
        divisor = h_pullback(_gdivisor(HYPERELLIPTIC, genus_h, a, b))
    elif kind == "flag":
        divisor = flag_pullback(_gdivisor(FLAG, genus_h, a, b))
    else:
        raise ContractViolation("pullback-kind", f"Unknown pullback {kind!r}")
    return OutputRecord(
        f"pullback {kind}",
        inputs={"h": genus_h, "a": a, "b": b},
        outputs={"n": divisor.n, "coefficients": _coefficients(divisor)},
        citations=["hyperelliptic pullback" if kind == "h" else "flag pullback"],
    )


def fdiv_check_command(genus_h: int, a: Fraction, b: List[Fraction]) -> OutputRecord:
    report = f_divisor_check(_gdivisor(FLAG, genus_h, a, b))
    return OutputRecord(
        "fdiv-check",
        inputs={"h": genus_h, "a": a, "b": b},
        outputs={"witnesses": {f"({c})": list(w) for c, w in report.witnesses.items()}},
        verdicts={f"condition ({c})": report.passed[c] for c in sorted(report.passed)},
        citations=["F-divisor inequalities (1)-(5)"],
    )


def flag_program_command(tag: str, g: int, a=None, b=None, d=None) -> OutputRecord:
    report = verify_flag_program(tag, g, a, b, d)
    verdicts = {"pullback is a positive multiple of the class": report.pullback_matches,
                "d found": report.d is not None}
    if report.checks is not None:
        verdicts.update({f"condition ({c})": report.checks.passed[c] for c in sorted(report.checks.passed)})
    return OutputRecord(
        "flag-program",
        inputs={"tag": tag, "g": g},
        outputs={"level": report.level, "a": report.a, "b": report.b, "d": report.d,
                 "displayed_c": report.displayed_c, "scale": report.scale, "d_searched": report.d_searched},
        verdicts=verdicts,
        citations=["flag pullback of c D + d script_D"],
    )
