//! Plain-text reports: the partition-line summary table, confusion matrices
//! and regression diagnostics.

use std::fmt::Write as _;

use crate::empirical::{Evaluation, PhraseSelectionFunction, SideCount};
use crate::fitting::{FitReport, PhraseRegressions, RegressionResult};
use crate::phrase::{Direction, Phrase};

fn count_cell((_, wrong, total): SideCount) -> String {
    if total == 0 {
        return format!("{wrong} (-)");
    }
    format!("{wrong} ({:.0}%)", 100.0 * wrong as f64 / total as f64)
}

/// Partition-line summary: one row pair per boundary with slope, intercept
/// and the above/below wrong-side counts.
pub fn misclassification_table(
    evaluation: &Evaluation,
    lines: Option<&PhraseSelectionFunction>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>7} {:>10}   {:<14} {:<14}",
        "Phrase", "Slope", "Intercept", "Above", "Below"
    );
    for m in &evaluation.per_boundary {
        let (slope, intercept) = match lines {
            Some(psf) => {
                let l = psf.line(m.boundary);
                (format!("{:.2}", l.slope), format!("{:.1}", l.intercept))
            }
            None => (String::new(), String::new()),
        };
        let below = m.below();
        let above = m.above();
        let _ = writeln!(
            out,
            "{:<20} {:>7} {:>10}   {:<14} {:<14}",
            below.0.token(),
            slope,
            intercept,
            "",
            count_cell(below)
        );
        let _ = writeln!(
            out,
            "{:<20} {:>7} {:>10}   {:<14} {:<14}",
            above.0.token(),
            "",
            "",
            count_cell(above),
            ""
        );
    }
    out
}

pub fn confusion_matrix(evaluation: &Evaluation) -> String {
    let short = |p: Phrase| -> String {
        let sign = if p.direction() == Some(Direction::More) {
            '+'
        } else {
            '-'
        };
        format!("{sign}{}", p.level())
    };
    let mut out = String::new();
    let _ = write!(out, "{:<18}", "recorded \\ chosen");
    for p in Phrase::RESPONSES {
        let _ = write!(out, "{:>6}", short(p));
    }
    out.push('\n');
    for (row, p) in Phrase::RESPONSES.iter().enumerate() {
        let _ = write!(out, "{:<18}", p.token());
        for c in evaluation.confusion[row] {
            let _ = write!(out, "{c:>6}");
        }
        out.push('\n');
    }
    out
}

pub fn evaluation_report(
    evaluation: &Evaluation,
    lines: Option<&PhraseSelectionFunction>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Accuracy: {:.4} ({} of {} responses)\n",
        evaluation.accuracy, evaluation.correct, evaluation.total
    );
    out.push_str(&confusion_matrix(evaluation));
    out.push('\n');
    out.push_str("Wrong-side counts per boundary\n");
    out.push_str(&misclassification_table(evaluation, lines));
    out
}

fn coefficient_line(label: &str, r: &RegressionResult) -> String {
    let names = ["a", "b", "c"];
    let mut s = format!("{label:<34}");
    for (j, coef) in r.coefficients.iter().enumerate() {
        let t = r.t_stats[j].map_or("-".to_string(), |t| format!("{t:.2}"));
        let star = if r.significant_at_05[j] { "*" } else { "" };
        let _ = write!(s, " {}={coef:.4} (t={t}){star}", names[j]);
    }
    let _ = write!(s, "  rss={:.3} n={}", r.residual_sum_squares, r.n);
    s
}

pub fn regression_report(regressions: &PhraseRegressions) -> String {
    let mut out = String::from(
        "Per-phrase quadratic regression p2 = a + b p1 + c p1^2 (* significant at 0.05)\n",
    );
    for (phrase, r) in &regressions.fitted {
        out.push_str(&coefficient_line(phrase.token(), r));
        out.push('\n');
    }
    for (phrase, n) in &regressions.skipped {
        let _ = writeln!(out, "{:<34} skipped ({n} records)", phrase.token());
    }
    out
}

/// Human-readable fit report.
pub fn fit_report(report: &FitReport, diagnostics: Option<&PhraseRegressions>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Partition line fit: {} responses, {} diagonal bands\n",
        report.evaluation.total, report.band_count
    );
    out.push_str(&misclassification_table(
        &report.evaluation,
        Some(&report.fitted),
    ));
    out.push('\n');
    let less: Vec<String> = report
        .fitted
        .lines()
        .filter(|l| l.boundary.side == Direction::Less)
        .map(|l| format!("{:.1}", l.prior_axis_intercept()))
        .collect();
    let _ = writeln!(
        out,
        "Prior-axis intercepts of the less-side lines: {}",
        less.join(", ")
    );
    let _ = writeln!(
        out,
        "Overall agreement: {:.1}% ({} of {})",
        100.0 * report.overall_accuracy(),
        report.evaluation.correct,
        report.evaluation.total
    );
    out.push('\n');
    out.push_str("Partition points per boundary\n");
    for b in &report.boundaries {
        let _ = writeln!(
            out,
            "{:<34} {:>3} points",
            b.boundary.label(),
            b.points.len()
        );
    }
    if let Some(regressions) = diagnostics {
        out.push_str("\nLinear vs quadratic refit of partition points\n");
        for b in &report.boundaries {
            out.push_str(&coefficient_line(&b.boundary.label(), &b.linear));
            out.push('\n');
            if let Some(q) = &b.quadratic {
                out.push_str(&coefficient_line("", q));
                out.push('\n');
            }
        }
        out.push('\n');
        out.push_str(&regression_report(regressions));
    }
    out
}
