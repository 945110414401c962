"""Per-case analysis and the versioned JSON report document."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cases import CaseSpec
from .center import (BETA_WORDS, CenterData, NotInCorootLattice, beta_word_check,
                     center_data, delta_e, reflection_word_check)
from .cohomology import (K_CAP, cyclic_invariant, is_cocycle, lemma1_sweep, lemma3_extend,
                         minimal_level, solution_classes, solve_coboundary,
                         u_obstruction, verify_rtc)

SCHEMA = "gerbe-levels/1"
CHECKS = ("delta_e", "lemma1", "lemma2", "reflection_words", "rtc")


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unrat(s: str) -> Fraction:
    return Fraction(s)


def _pair_key(group, args) -> str:
    return ",".join(group.name(a) for a in args)


def _phase_table(cochain) -> dict[str, Fraction]:
    return {_pair_key(cochain.group, k): v for k, v in cochain.table.items()}


@dataclass
class ReportDocument:
    """Everything computed for one case; serializes to JSON without loss."""

    case: CaseSpec
    theta: dict[str, list[Fraction]] = field(default_factory=dict)
    node_permutations: dict[str, list[int]] = field(default_factory=dict)
    e_table: dict[str, list[Fraction]] = field(default_factory=dict)
    u_tables: dict[int, dict[str, Fraction]] = field(default_factory=dict)
    k_min: int | None = None
    level: int | None = None
    solvable: bool | None = None
    u_solution: dict[str, Fraction] | None = None
    solution_class_count: int | None = None
    class_representatives: list[dict[str, Fraction]] = field(default_factory=list)
    certificate: dict[str, Any] | None = None
    verification: dict[str, bool] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    schema_version: str = SCHEMA

    def to_dict(self) -> dict:
        def vecs(d):
            return {k: [rat(x) for x in v] for k, v in d.items()}

        def phases(d):
            return None if d is None else {k: rat(v) for k, v in d.items()}

        cert = None
        if self.certificate is not None:
            cert = {k: (rat(v) if isinstance(v, Fraction) else v)
                    for k, v in self.certificate.items()}
        return {
            "schema_version": self.schema_version,
            "case": self.case.to_dict(),
            "theta": vecs(self.theta),
            "node_permutations": {k: list(v) for k, v in self.node_permutations.items()},
            "e_table": vecs(self.e_table),
            "u_tables": {str(k): phases(v) for k, v in self.u_tables.items()},
            "k_min": self.k_min,
            "level": self.level,
            "solvable": self.solvable,
            "u_solution": phases(self.u_solution),
            "solution_class_count": self.solution_class_count,
            "class_representatives": [phases(r) for r in self.class_representatives],
            "certificate": cert,
            "verification": dict(self.verification),
            "diagnostics": list(self.diagnostics),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        if d.get("schema_version") != SCHEMA:
            raise ValueError(f"unsupported schema {d.get('schema_version')!r}")

        def vecs(x):
            return {k: [unrat(s) for s in v] for k, v in x.items()}

        def phases(x):
            return None if x is None else {k: unrat(v) for k, v in x.items()}

        cert = d["certificate"]
        if cert is not None:
            cert = {k: (unrat(v) if k == "invariant" else v) for k, v in cert.items()}
        return cls(
            case=CaseSpec.from_dict(d["case"]),
            theta=vecs(d["theta"]),
            node_permutations={k: list(v) for k, v in d["node_permutations"].items()},
            e_table=vecs(d["e_table"]),
            u_tables={int(k): phases(v) for k, v in d["u_tables"].items()},
            k_min=d["k_min"],
            level=d["level"],
            solvable=d["solvable"],
            u_solution=phases(d["u_solution"]),
            solution_class_count=d["solution_class_count"],
            class_representatives=[phases(r) for r in d["class_representatives"]],
            certificate=cert,
            verification=dict(d["verification"]),
            diagnostics=list(d["diagnostics"]),
            notes=list(d["notes"]),
            schema_version=d["schema_version"],
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


def _skeleton(spec: CaseSpec) -> tuple[ReportDocument, CenterData]:
    rs = spec.root_system()
    group = spec.group()
    cd = center_data(rs, group)
    act = cd.action
    doc = ReportDocument(CaseSpec(spec.family, spec.rank, group.label))
    for z in group.elements:
        name = group.name(z)
        doc.theta[name] = list(act.theta[z])
        doc.node_permutations[name] = list(act.node_perm[z])
    doc.e_table = {_pair_key(group, k): list(v) for k, v in cd.e.items()}
    return doc, cd


def _fill_levels(doc: ReportDocument, cd: CenterData, k_max: int):
    rep = minimal_level(cd, k_max)
    doc.k_min = doc.level = rep.k_min
    doc.solvable = True
    for k in rep.trivial_at:
        doc.u_tables[k] = _phase_table(u_obstruction(cd, k))
    doc.u_solution = _phase_table(rep.solution)
    doc.solution_class_count = rep.solution_class_count
    doc.class_representatives = [_phase_table(r) for r in rep.class_representatives]
    if all(v == 0 for v in doc.u_tables[1].values()) and cd.group.order > 1:
        doc.notes.append("trivial cocycle")
    return rep


def levels_report(spec: CaseSpec, k_max: int = K_CAP) -> ReportDocument:
    """Minimal level, chosen solution and class count for one case."""
    doc, cd = _skeleton(spec)
    _fill_levels(doc, cd, k_max)
    return doc


def solve_report(spec: CaseSpec, k: int) -> ReportDocument:
    """Solve ``delta u = U`` at one level; absence of a solution is a normal outcome."""
    if k < 1:
        raise ValueError("level must be a positive integer")
    doc, cd = _skeleton(spec)
    U = u_obstruction(cd, k)
    doc.level = k
    doc.u_tables[k] = _phase_table(U)
    res = solve_coboundary(cd.group, U)
    doc.solvable = res.solvable
    if res.solvable:
        doc.u_solution = _phase_table(res.solution)
        count, reps = solution_classes(cd, k)
        doc.solution_class_count = count
        doc.class_representatives = [_phase_table(r) for r in reps]
        if k == 1 and U.is_zero() and cd.group.order > 1:
            doc.notes.append("trivial cocycle")
    else:
        cert = {"modulus": res.modulus,
                "reason": f"delta u = U is inconsistent over (1/{res.modulus})Z/Z"}
        if cd.group.is_cyclic:
            cert["invariant"] = cyclic_invariant(U)
            cert["reason"] += "; sum_a U(g, g^a, g) is nonzero"
        doc.certificate = cert
    return doc


def verify_report(spec: CaseSpec, k_max: int = K_CAP) -> ReportDocument:
    """Run every consistency check for one case and record pass/fail flags."""
    doc, cd = _skeleton(spec)
    rep = _fill_levels(doc, cd, k_max)
    act, g = cd.action, cd.group
    flags, diag = doc.verification, doc.diagnostics

    try:
        delta_e(act, cd.e, check=True)
        flags["delta_e"] = True
    except NotInCorootLattice as exc:
        flags["delta_e"] = False
        diag.append(f"delta_e: {exc}")

    ok = True
    for k in (1, 2, 3):
        try:
            U = u_obstruction(cd, k, check_forms=True)
        except AssertionError as exc:
            ok = False
            diag.append(f"lemma2: k={k}: {exc}")
            break
        if not is_cocycle(U):
            ok = False
            diag.append(f"lemma2: U at k={k} is not a cocycle")
            break
    flags["lemma2"] = ok

    ok, where = lemma1_sweep(cd)
    flags["lemma1"] = ok
    if not ok:
        diag.append(f"lemma1: {where}")

    bad = [g.name(z) for z in g.elements if not reflection_word_check(act, z)]
    if act.rs.family in BETA_WORDS and g.order > 1 and not beta_word_check(act):
        bad.append("beta words")
    flags["reflection_words"] = not bad
    if bad:
        diag.append(f"reflection_words: mismatch for {', '.join(bad)}")

    family = lemma3_extend(cd, rep.k_min, rep.solution)
    ok, where = verify_rtc(cd, rep.k_min, family)
    flags["rtc"] = ok
    if not ok:
        diag.append(f"rtc: first counterexample {where}")
    return doc


def passed(doc: ReportDocument) -> bool:
    return all(doc.verification.get(c, False) for c in CHECKS)
