"""Reproduction suite: every numeric claim checked and reported with its citation."""

import random
import sys
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, TextIO, Tuple

from app.errors import ConformalBlocksError
from app.fusion.ranks import (
    nonvanishing_criterion, rank, rank_1t, rank_by_reflection, rank_closed_form, rank_infinity,
    rank_infinity_table, reflection_terms, three_point_rank,
)
from app.fusion.verlinde import verlinde_rank_numeric
from app.divisors.classes import FCurve, fcurves, psi_dot
from app.divisors.cb import (
    CLOSED_FORM_TAGS, cb_divisor_class, closed_form_class, degree_4pt, intersect_cb_fcurve, tag_applies,
    tag_level,
)
from app.nefcone.linalg import C3_RELATIONS, cb_basis_matrix, combination_row, curve_family, independence_rank
from app.nefcone.faces import nef_face_report
from app.nefcone.logcan import check_log_canonical_scale, log_canonical_feasibility
from app.pullbacks.maps import hyperelliptic_scalar, satake_identity_holds
from app.pullbacks.flag import FLAG_TAGS, verify_flag_program
from app.cli.records import OutputRecord

# rows F_{1,1,i}, columns level 1..7, at n = 16
N16_TABLE = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 32, 0, 0, 0, 0, 0],
    [1, 0, 55, 0, 0, 0, 0],
    [0, 32, 0, 40, 0, 0, 0],
    [1, 0, 63, 0, 19, 0, 0],
    [0, 32, 0, 52, 0, 6, 0],
    [1, 0, 64, 0, 25, 0, 1],
]

R_INF_ROW_15 = [0, 1430, 0, 2002, 0, 1638, 0, 910, 0, 350, 0, 90, 0, 14, 0, 1]


class ClaimChecker:
    """Counts passed claims and collects the failing ones.

    Progress lines go to ``stream`` (stdout by default); ``to_record`` packs the
    run into an OutputRecord with one verdict per claim.
    """

    def __init__(self, max_n: int = 16, seed: int = 2011, stream: Optional[TextIO] = None) -> None:
        self.max_n = max_n
        self.rng = random.Random(seed)
        self.stream = stream
        self.checks_passed = 0
        self.checks_total = 0
        self.issues: List[str] = []
        self.notes: List[str] = []
        self.results: Dict[str, bool] = {}
        self.citations: List[str] = []

    def _emit(self, text: str) -> None:
        print(text, file=self.stream or sys.stdout)

    def check(self, name: str, condition: bool, citation: str = "", error_msg: str = "") -> bool:
        """Run a check and track results."""
        self.checks_total += 1
        cite = f" [{citation}]" if citation else ""
        key = f"{name}{cite}"
        while key in self.results:
            key += "'"
        self.results[key] = bool(condition)
        if citation and citation not in self.citations:
            self.citations.append(citation)
        if condition:
            self._emit(f"✅ PASS {key}")
            self.checks_passed += 1
            return True
        self._emit(f"❌ FAIL {key}" + (f": {error_msg}" if error_msg else ""))
        self.issues.append(f"{name}: {error_msg}" if error_msg else name)
        return False

    def note(self, text: str) -> None:
        self._emit(f"   ⚠️  {text}")
        self.notes.append(text)

    def to_record(self) -> OutputRecord:
        """The finished run as a ``verify-paper`` record."""
        return OutputRecord(
            "verify-paper",
            inputs={"max_n": self.max_n},
            outputs={
                "passed": self.checks_passed,
                "total": self.checks_total,
                "failing": list(self.issues),
                "notes": list(self.notes),
            },
            verdicts=dict(self.results),
            citations=list(self.citations),
        )

    def run_all_checks(self) -> bool:
        """Run every claim group; True iff nothing failed."""
        self._emit("🔍 Reproducing numeric claims...\n")
        groups = [
            ("n=16 intersection table", self.check_n16_table),
            ("r_3(15,3) and r_inf", self.check_377),
            ("four-way rank agreement", self.check_rank_agreement),
            ("F-curve corollaries", self.check_corollaries),
            ("class formulas", self.check_class_formulas),
            ("independent curve families", self.check_independence),
            ("extremal faces", self.check_faces),
            ("log canonical verdicts", self.check_log_canonical),
            ("hyperelliptic pullbacks", self.check_hyperelliptic),
            ("flag pullbacks", self.check_flag_program),
            ("rank properties", self.check_rank_properties),
        ]
        for title, group in groups:
            self._emit(f"\n📋 {title}:")
            try:
                group()
            except ConformalBlocksError as e:
                self.check(f"{title} raised no error", False, error_msg=str(e))

        self._emit(f"\n📊 Results: {self.checks_passed}/{self.checks_total} claims passed")
        if self.issues:
            self._emit("\n🔧 Failing claims:")
            for issue in self.issues:
                self._emit(f"   • {issue}")
            return False
        self._emit("\n🎉 All claims reproduced.")
        return True

    def check_n16_table(self) -> None:
        report = cb_basis_matrix(16)
        for i, row in enumerate(N16_TABLE, start=1):
            got = [report.entry(level, i) for level in range(1, 8)]
            self.check(f"D_l . F_(1,1,{i}) at n=16", got == row, "n=16 table", f"got {got}, expected {row}")
        self.check("n=16 matrix lower triangular with nonzero diagonal", report.ok, "basis corollary")

    def check_377(self) -> None:
        values = {
            "recurrence": rank_1t(3, 15, 3),
            "closed form": rank_closed_form(3, 15, 3),
            "reflection": rank_by_reflection(3, 15, 3),
            "Verlinde": verlinde_rank_numeric(3, [1] * 15 + [3]),
            "factorization": rank(3, [1] * 15 + [3]),
        }
        for name, value in values.items():
            self.check(f"r_3(15,3) = 377 by {name}", value == 377, "rank example", f"got {value}")
        terms = [sign * value for sign, _, value in reflection_terms(3, 15, 3)]
        self.check("reflection terms 2002 - 1638 + 14 - 1", terms == [2002, -1638, 14, -1], "rank example",
                   f"got {terms}")
        row = [rank_infinity(15, t) for t in range(16)]
        self.check("r_inf row 15", row == R_INF_ROW_15, "r_inf table", f"got {row}")
        self.check("r_inf closed formula matches its recurrence up to j=20",
                   rank_infinity_table(20) == [[rank_infinity(j, t) for t in range(j + 1)] for j in range(21)],
                   "r_inf definition")
        for level in range(1, 7):
            ok = all(rank_1t(level, k, k) == 1 for k in range(1, level + 1))
            ok = ok and all(rank_1t(level, k, k - 2) == k - 1 for k in range(2, level + 2))
            ok = ok and rank_1t(level, level + 2, level) == level
            self.check(f"r_{level}(k,k)=1, r_{level}(k,k-2)=k-1, r_{level}(l+2,l)=l", ok, "ranks lemma")
        self.note("the ranks lemma labels the third statement r_l(l, l+2); the proved form r_l(l+2, l) is checked")

    def check_rank_agreement(self) -> None:
        disagreements: List[Tuple[int, int, int]] = []
        for level in range(1, 7):
            for j in range(21):
                for t in range(level + 1):
                    values = {rank_1t(level, j, t), rank_closed_form(level, j, t), rank_by_reflection(level, j, t)}
                    if (j + t) % 2 == 0:
                        values.add(verlinde_rank_numeric(level, [1] * j + [t]))
                    if len(values) != 1:
                        disagreements.append((level, j, t))
        self.check("recurrence = closed form = reflection = Verlinde for l <= 6, j <= 20",
                   not disagreements, "closed form proposition", f"disagree at {disagreements[:5]}")

    def _even_range(self, lo: int) -> range:
        return range(lo, self.max_n + 1, 2)

    def check_corollaries(self) -> None:
        for n in self._even_range(8):
            g = n // 2 - 1
            bad = []
            for curve in fcurves(n):
                a, b, c, d = curve.parts
                odd = (a * b * c * d) % 2 == 1
                if intersect_cb_fcurve(1, n, curve) != (1 if odd else 0):
                    bad.append((1, curve.label()))
                if intersect_cb_fcurve(2, n, curve) != (0 if odd else 2 ** (g - 2)):
                    bad.append((2, curve.label()))
            for i in range(1, g + 1):
                curve = FCurve.with_tail(n, 1, 1, i)
                if intersect_cb_fcurve(g - 1, n, curve) != (g - 1 if i == g - 1 else 0):
                    bad.append((g - 1, curve.label()))
                if intersect_cb_fcurve(g, n, curve) != (1 if i == g else 0):
                    bad.append((g, curve.label()))
            self.check(f"levels 1, 2, g-1, g on F-curves at n={n}", not bad, "corollaries 1, 2, g-1, g",
                       f"mismatches {bad[:4]}")
            zero_ok = all(
                intersect_cb_fcurve(level, n, FCurve.with_tail(n, 1, 1, i)) == 0
                for level in range(1, g + 1) for i in range(1, g + 1)
                if i < level or (i - level) % 2
            )
            self.check(f"vanishing below the diagonal and off parity at n={n}", zero_ok, "vanishing corollary")
            classes = {level: cb_divisor_class(level, n) for level in range(1, g + 1)}
            consistent = all(
                classes[level].dot(curve) == intersect_cb_fcurve(level, n, curve)
                for level in classes for curve in fcurves(n)
            )
            self.check(f"class . F = restriction formula at n={n}", consistent, "reduced class formula")

    def check_class_formulas(self) -> None:
        for n in range(4, self.max_n + 3, 2):
            g = n // 2 - 1
            for tag in CLOSED_FORM_TAGS:
                if not tag_applies(tag, g):
                    continue
                level = tag_level(tag, g)
                same = closed_form_class(tag, n) == cb_divisor_class(level, n)
                self.check(f"closed form tag {tag} at n={n}", same, "extremal divisor formulas")
        self.note("the level g formula is checked with coefficient (k-1)k/(2(n-1)); the displayed factor 2 "
                  "would give D_g . F_(1,1,g) = 4 against the corollary value 1")

    def check_independence(self) -> None:
        for n in range(6, self.max_n + 5):
            g = (n - 2) // 2
            expected = {"C1": g, "C2": g - 1}
            if n % 2 == 0:
                expected["C3"] = g - 1
            for label, rank_expected in expected.items():
                family = curve_family(label, n)
                got = independence_rank(family.curves, n)
                independent = label != "C3" or g % 2 == 0 or n == 8
                self.check(f"{label} at n={n} has rank {rank_expected}", got == rank_expected and
                           (got == len(family)) == independent, "three curve families",
                           f"got {got} of {len(family)}")
                if label == "C3" and not independent:
                    self.note(f"C3 at n={n} has {len(family)} curves of rank {got}: 2k-1 independent "
                              "curves holds for g even only")
            if n == 8:
                self.note("at n=8 F_(3,3,1) and F_(1,1,3) are the same class, so C3 has 2 curves, not 3")
        for n, relation in C3_RELATIONS.items():
            if n > self.max_n + 4:
                continue
            members = set(curve_family("C3", n).curves)
            row = combination_row(relation, n)
            self.check(f"C3 relation at n={n} vanishes on every B_i", set(relation) <= members and not any(row),
                       "three curve families", f"got {row}")
        for n in self._even_range(8):
            k = (n // 2) // 2
            psi_values = sorted({psi_dot(FCurve.with_tail(n, 1, 1, 2 * i + 1)) for i in range(1, k)})
            if psi_values:
                self.note(f"Psi . F_(1,1,odd>1) at n={n} is {', '.join(str(v) for v in psi_values)}")

    def check_faces(self) -> None:
        for n in self._even_range(6):
            g = n // 2 - 1
            for level in sorted({1, 2, g - 1, g} - {0}):
                report = nef_face_report(cb_divisor_class(level, n))
                self.check(f"D_{level} at n={n} spans an extremal ray (rho={report.rho})", report.extremal,
                           "extremality theorem", report.claim())

    def check_log_canonical(self) -> None:
        for n in range(6, 21, 2):
            g = n // 2 - 1
            expected = {1: n <= 10, 2: True, g - 1: n <= 14, g: n <= 12}
            for level, verdict in expected.items():
                cert = log_canonical_feasibility(cb_divisor_class(level, n))
                self.check(f"D_{level} at n={n} log canonical = {verdict}", cert.feasible == verdict,
                           "log canonical proposition", cert.reason)
                if cert.feasible:
                    self.check(f"D_{level} at n={n} witness rebuilds the class",
                               check_log_canonical_scale(cb_divisor_class(level, n), cert.witness_u),
                               "log canonical definition")
            u = Fraction(8, 3 * 2 ** (g - 1))
            self.check(f"8/(3*2^(g-1)) D_2 = K + 2/3 even + odd at n={n}",
                       check_log_canonical_scale(cb_divisor_class(2, n), u), "log canonical proposition")

    def check_hyperelliptic(self) -> None:
        for g in range(3, 11):
            self.check(f"2 h*(lambda) = D_1 at g={g}", satake_identity_holds(g), "Satake theorem")
            scalar = hyperelliptic_scalar(g)
            self.check(f"D_2 parallel to h*(12 lambda - delta_0) at g={g} (scalar {scalar})",
                       scalar is not None and scalar > 0, "hyperelliptic theorem")
            if scalar is not None and scalar != Fraction(1, 2):
                self.note(f"g={g}: D_2 = {scalar} h*(12 lambda - delta_0), displayed scalar is 1/2")
        self.note("hyperelliptic pullback summed over 2 <= k <= g+1 with b_((k-1)/2) for odd k; "
                  "printed range is 2 <= k <= floor(g/2)")

    def check_flag_program(self) -> None:
        for g in range(3, 8):
            for tag in FLAG_TAGS:
                report = verify_flag_program(tag, g)
                self.check(f"tag {tag} at g={g}: f*(cD + dD) proportional to D_{report.level}, F-divisor",
                           report.ok, "flag pullback proposition",
                           f"scale={report.scale}, failed={report.checks.failed() if report.checks else None}")
                if report.scale is not None and report.scale != report.displayed_c:
                    self.note(f"tag {tag} g={g}: exact scale {report.scale}, displayed c = {report.displayed_c}, "
                              f"d = {report.d}")

    def check_rank_properties(self) -> None:
        mismatches = []
        for level in range(1, 5):
            for n in range(1, 9):
                for weights in combinations_with_replacement(range(level + 1), n):
                    if nonvanishing_criterion(level, weights) != (rank(level, weights) > 0):
                        mismatches.append((level, weights))
        self.check("nonvanishing criterion iff rank > 0 for n <= 8, l <= 4", not mismatches,
                   "nonvanishing lemma", f"{mismatches[:3]}")

        table_ok, degree_ok = True, True
        for level in range(1, 7):
            for m1 in range(level + 1):
                for m2 in range(level + 1):
                    if m1 == m2:
                        expected = 1 if m1 in (0, level) else 2
                    else:
                        expected = 1 if abs(m1 - m2) == 2 else 0
                    table_ok &= rank(level, (m1, m2, 1, 1)) == expected
                    degree_ok &= degree_4pt(level, (m1, m2, 1, 1)) == int(m1 == m2 == level)
        self.check("rank of (mu1, mu2, 1, 1) for l <= 6", table_ok, "mu rank lemma")
        self.check("degree of (mu1, mu2, 1, 1) for l <= 6", degree_ok, "mu degree lemma")

        factorization_ok, permutation_ok = True, True
        for _ in range(200):
            level = self.rng.randint(1, 5)
            weights = [self.rng.randint(0, level) for _ in range(self.rng.randint(4, 9))]
            cut = self.rng.randint(2, len(weights) - 2)
            mu, nu = weights[:cut], weights[cut:]
            split = sum(rank(level, mu + [a]) * rank(level, nu + [a]) for a in range(level + 1))
            factorization_ok &= split == rank(level, weights)
            shuffled = weights[:]
            self.rng.shuffle(shuffled)
            permutation_ok &= rank(level, shuffled) == rank(level, weights)
            permutation_ok &= rank(level, weights + [0]) == rank(level, weights)
        self.check("factorization identity on 200 random splits", factorization_ok, "factorization")
        self.check("permutation invariance and propagation on 200 random vectors", permutation_ok, "propagation")
        self.check("three-point rule symmetric", all(
            three_point_rank(4, a, b, c) == three_point_rank(4, c, a, b)
            for a in range(5) for b in range(5) for c in range(5)), "fusion rules")


def run_claims(max_n: int = 16, stream: Optional[TextIO] = None) -> Tuple[bool, ClaimChecker]:
    checker = ClaimChecker(max_n, stream=stream)
    return checker.run_all_checks(), checker
