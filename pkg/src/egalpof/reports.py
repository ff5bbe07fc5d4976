"""Desk-scale report over the built-in families.

Emits one row per (construction, property) pair at fixed exact parameters.
Every row is recomputed by the brute-force solver and, where the family has
a closed form, checked against it during emission; a mismatch raises
CrossCheckError instead of producing a wrong report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .construct import gen_thm1, gen_thm4, gen_thm5, gen_thm7
from .errors import CrossCheckError
from .model import ExtendedValue, Instance, extended_ratio
from .solve import Objective, PropertyFilter, max_welfare


@dataclass(frozen=True)
class ReportRow:
    family: str
    n: int
    m: int
    params: str
    prop: str
    mew: Fraction
    mew_p: Fraction
    pof: ExtendedValue


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise CrossCheckError(message)


def _row(inst: Instance, family: str, params: str, prop: PropertyFilter) -> ReportRow:
    mew = max_welfare(inst, Objective.EGALITARIAN, PropertyFilter.NONE).value
    mew_p = max_welfare(inst, Objective.EGALITARIAN, prop).value
    return ReportRow(
        family=family,
        n=inst.n,
        m=inst.m,
        params=params,
        prop=prop.value,
        mew=mew,
        mew_p=mew_p,
        pof=extended_ratio(mew, mew_p),
    )


def build_report() -> list[ReportRow]:
    rows: list[ReportRow] = []

    eps = Fraction(1, 100)
    for m in range(3, 9):
        inst = gen_thm1(3, m, eps)
        for prop in (PropertyFilter.EF1, PropertyFilter.BALANCED, PropertyFilter.ROUND_ROBIN):
            row = _row(inst, "thm1", f"eps={eps}", prop)
            _check(row.mew == (m - 2) * eps**2, f"thm1 m={m}: unexpected mew {row.mew}")
            if prop is PropertyFilter.EF1:
                expected = -(-(m - 1) // 2) * eps**2
                _check(row.mew_p == expected, f"thm1 m={m}: unexpected mew_ef1 {row.mew_p}")
            elif prop is PropertyFilter.BALANCED:
                expected = -(-m // 3) * eps**2
                _check(row.mew_p == expected, f"thm1 m={m}: unexpected mew_ba {row.mew_p}")
            else:
                ba = next(r for r in rows if r.m == m and r.prop == "ba")
                _check(row.mew_p <= ba.mew_p, f"thm1 m={m}: mew_rr exceeds mew_ba")
            rows.append(row)

    for eps in (Fraction(1, 100), Fraction(1, 1000)):
        row = _row(gen_thm4(eps), "thm4", f"eps={eps}", PropertyFilter.MAX_UTILITARIAN)
        _check(row.pof == Fraction(1, 4) / eps, f"thm4 eps={eps}: unexpected pof {row.pof}")
        rows.append(row)

    x, y = Fraction(3, 2), Fraction(2, 5)
    row = _row(gen_thm5(x, y), "thm5", f"x={x};y={y}", PropertyFilter.MAX_NASH)
    _check(row.pof == x, f"thm5: unexpected pof {row.pof}")
    rows.append(row)

    for eps in (Fraction(1, 10), Fraction(1, 20)):
        row = _row(gen_thm7(eps), "thm7", f"eps={eps}", PropertyFilter.MAX_NASH)
        _check(row.pof == 1 / eps, f"thm7 eps={eps}: unexpected pof {row.pof}")
        rows.append(row)

    return rows


def render_csv(rows: list[ReportRow]) -> str:
    lines = ["family,n,m,params,property,mew,mew_p,pof"]
    for r in rows:
        lines.append(
            f"{r.family},{r.n},{r.m},{r.params},{r.prop},{r.mew},{r.mew_p},{r.pof}"
        )
    return "\n".join(lines) + "\n"


def render_markdown(rows: list[ReportRow]) -> str:
    lines = [
        "| family | n | m | params | property | mew | mew_p | pof |",
        "| --- | --- | --- | --- | --- | --- | --- | --- |",
    ]
    for r in rows:
        lines.append(
            f"| {r.family} | {r.n} | {r.m} | {r.params} | {r.prop} "
            f"| {r.mew} | {r.mew_p} | {r.pof} |"
        )
    return "\n".join(lines) + "\n"
