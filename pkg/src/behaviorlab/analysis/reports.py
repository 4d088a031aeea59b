"""Report builders: machine-readable dicts plus plain-text tables."""

from __future__ import annotations

from ..model.taxonomy import MAJORS, MINORS_BY_CODE
from .agreement import CategoryAgreement
from .alignment import AlignmentResult
from .completeness import CompletenessAudit
from .contingency import ChiSquareResult, ContingencyTable2x2, OddsRatioResult
from .frequency import FrequencyTable


def comparison_table(result_a: AlignmentResult, result_b: AlignmentResult) -> ContingencyTable2x2:
    """Method-comparison table: correct vs missing-or-incorrect per method."""
    return ContingencyTable2x2(
        a=result_a.correct,
        b=result_a.missing_or_incorrect,
        c=result_b.correct,
        d=result_b.missing_or_incorrect,
    )


def alignment_report(
    name_a: str,
    result_a: AlignmentResult,
    name_b: str,
    result_b: AlignmentResult,
    chi: ChiSquareResult,
    ors: OddsRatioResult,
) -> tuple[dict, str]:
    def row(name: str, r: AlignmentResult) -> dict:
        denom = r.reference_count or 1
        return {
            "method": name,
            "correct": r.correct,
            "correct_percent": round(100.0 * r.correct / denom, 1),
            "missing": r.missing,
            "incorrect": r.incorrect,
            "missing_or_incorrect": r.missing_or_incorrect,
            "reference_count": r.reference_count,
        }

    machine = {
        "report": "alignment",
        "methods": [row(name_a, result_a), row(name_b, result_b)],
        "chi_square": {"chi2": chi.chi2, "df": chi.df, "p_value": chi.p_value},
        "odds_ratio": {
            "or_correct": ors.or_correct,
            "or_missing_incorrect": ors.or_missing_incorrect,
            "haldane_corrected": ors.haldane_corrected,
        },
    }

    lines = [
        "Collection accuracy vs reference log",
        "",
        f"{'method':<14} {'correct':>8} {'%':>6} {'missing':>8} {'incorrect':>10} {'miss/inc':>9}",
    ]
    for m in machine["methods"]:
        lines.append(
            f"{m['method']:<14} {m['correct']:>8} {m['correct_percent']:>6.1f} "
            f"{m['missing']:>8} {m['incorrect']:>10} {m['missing_or_incorrect']:>9}"
        )
    p = chi.p_value
    p_text = "< .001" if p < 0.001 else f"= {p:.3f}"
    lines.append("")
    lines.append(f"chi-square = {chi.chi2:.2f}, df = {chi.df}, p {p_text}")
    lines.append(
        f"odds ratio (correct) = {ors.or_correct:.2f}; "
        f"(missing/incorrect) = {ors.or_missing_incorrect:.2f}"
        + ("  [Haldane-corrected]" if ors.haldane_corrected else "")
    )
    return machine, "\n".join(lines) + "\n"


def completeness_report(audit: CompletenessAudit) -> tuple[dict, str]:
    machine = {
        "report": "completeness",
        "total_records": audit.total_records,
        "per_type": {
            code: {"count": t.count, "percent": round(t.percent, 1)}
            for code, t in audit.per_type.items()
        },
        "per_source": {
            source: {
                "mean_count": round(s.mean_count, 1),
                "mean_percent": round(s.mean_percent, 1),
            }
            for source, s in audit.per_source.items()
        },
    }

    lines = [
        f"Transmission completeness over {audit.total_records} records",
        "",
        f"{'type':<6} {'count':>6} {'%':>6}",
    ]
    for code, t in audit.per_type.items():
        lines.append(f"{code:<6} {t.count:>6} {t.percent:>6.1f}")
    lines.append("")
    lines.append(f"{'source':<9} {'mean':>7} {'%':>6}")
    for source, s in audit.per_source.items():
        lines.append(f"{source:<9} {s.mean_count:>7.1f} {s.mean_percent:>6.1f}")
    return machine, "\n".join(lines) + "\n"


def agreement_report(rows: tuple[CategoryAgreement, ...]) -> tuple[dict, str]:
    machine = {
        "report": "kappa",
        "categories": [
            {
                "category": r.category,
                "label": r.label,
                "kind": r.kind,
                "kappa": r.kappa,
                "p_value": r.p_value,
                "bucket": r.bucket,
            }
            for r in rows
        ],
    }
    lines = ["Inter-rater agreement per category", "", f"{'category':<10} {'kappa':>8} {'bucket':<17} {'p':>8}"]
    for r in rows:
        indent = "" if r.kind == "major" else "  "
        kappa = "-" if r.kappa is None else f"{r.kappa:.2f}"
        p = "-" if r.p_value is None else ("< .001" if r.p_value < 0.001 else f"{r.p_value:.3f}")
        lines.append(f"{indent + r.category:<10} {kappa:>8} {r.bucket:<17} {p:>8}")
    return machine, "\n".join(lines) + "\n"


def frequency_report(table: FrequencyTable) -> tuple[dict, str]:
    machine = {
        "report": "frequency",
        "grand_total": table.grand_total,
        "majors": {
            code: {"count": c.count, "percent": round(c.percent, 1)}
            for code, c in table.majors.items()
        },
        "minors": {
            code: {"count": c.count, "percent": round(c.percent, 1)}
            for code, c in table.minors.items()
        },
    }
    lines = [
        f"Movement frequencies (grand total {table.grand_total})",
        "",
        f"{'category':<42} {'n':>5} {'%':>6}",
    ]
    for major in MAJORS:
        cell = table.majors[major.code]
        lines.append(f"{major.code + '. ' + major.label:<42} {cell.count:>5} {cell.percent:>6.1f}")
        for minor_code in major.minors:
            mc = table.minors[minor_code]
            label = MINORS_BY_CODE[minor_code].label
            lines.append(f"  {minor_code + ' ' + label:<40} {mc.count:>5} {mc.percent:>6.1f}")
    return machine, "\n".join(lines) + "\n"
