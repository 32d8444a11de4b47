//! Fitting a line-based phrase selection function to labeled responses.
//!
//! For each of the six adjacent phrase pairs, partition points are located
//! in diagonal bands ([`find_partition_points`]) and a least-squares line is
//! fitted through them ([`ols_fit`]). The six lines form the fitted
//! [`PhraseSelectionFunction`], which is then scored against the input.

mod ols;
mod partition;

pub use ols::{ols_fit, t_critical, RegressionResult, ALPHA};
pub use partition::{best_split, find_partition_points, split_errors, PartitionPoint, Split};

use crate::empirical::{
    evaluate_accuracy, Evaluation, PartitionLine, PhraseSelectionFunction, ResponseDataset,
};
use crate::error::{Error, Result};
use crate::phrase::{Boundary, Phrase};

pub const DEFAULT_BAND_COUNT: usize = 20;

/// The fit for one boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryFit {
    pub boundary: Boundary,
    pub points: Vec<PartitionPoint>,
    pub linear: RegressionResult,
    /// Diagnostic quadratic refit of the same points, when there are enough
    /// of them. The fitted function always uses the linear term only.
    pub quadratic: Option<RegressionResult>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub band_count: usize,
    pub fitted: PhraseSelectionFunction,
    /// In [`Boundary::ALL`] order.
    pub boundaries: Vec<BoundaryFit>,
    /// The fitted function scored against the data it was fitted to.
    pub evaluation: Evaluation,
}

impl FitReport {
    pub fn overall_accuracy(&self) -> f64 {
        self.evaluation.accuracy
    }
}

pub fn fit_selection_function(dataset: &ResponseDataset, band_count: usize) -> Result<FitReport> {
    let mut boundaries = Vec::with_capacity(6);
    let mut lines = Vec::with_capacity(6);
    for boundary in Boundary::ALL {
        let points = partition::partition_points(dataset, boundary, band_count)?;
        let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|p| (p.p1, p.p2)).unzip();
        let linear = ols_fit(&xs, &ys, 1).map_err(|e| Error::DegenerateFit {
            boundary,
            reason: e.to_string(),
        })?;
        let line =
            PartitionLine::new(boundary, linear.slope(), linear.intercept()).map_err(|_| {
                Error::DegenerateFit {
                    boundary,
                    reason: format!("fitted slope {} is not positive", linear.slope()),
                }
            })?;
        let quadratic = if points.len() > 3 {
            ols_fit(&xs, &ys, 2).ok()
        } else {
            None
        };
        lines.push(line);
        boundaries.push(BoundaryFit {
            boundary,
            points,
            linear,
            quadratic,
        });
    }
    let fitted = PhraseSelectionFunction::from_lines(lines).map_err(|e| match e {
        Error::InvalidLines(msg) => Error::InconsistentFit(msg),
        other => other,
    })?;
    let evaluation = evaluate_accuracy(&fitted, dataset)?;
    Ok(FitReport {
        band_count,
        fitted,
        boundaries,
        evaluation,
    })
}

/// Minimum records for a per-phrase quadratic regression.
pub const MIN_PHRASE_RECORDS: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct PhraseRegressions {
    /// Quadratic fits of posterior on prior, in [`Phrase::RESPONSES`] order.
    pub fitted: Vec<(Phrase, RegressionResult)>,
    /// Phrases left out, with their record counts.
    pub skipped: Vec<(Phrase, usize)>,
}

impl PhraseRegressions {
    /// Phrases whose second-order term is significant at [`ALPHA`].
    pub fn significant_quadratic(&self) -> Vec<Phrase> {
        self.fitted
            .iter()
            .filter(|(_, r)| r.significant_at_05.get(2).copied().unwrap_or(false))
            .map(|(p, _)| *p)
            .collect()
    }
}

/// Regress `p2 = a + b p1 + c p1^2` within each phrase's records.
pub fn per_phrase_regression(dataset: &ResponseDataset) -> PhraseRegressions {
    let mut out = PhraseRegressions {
        fitted: Vec::new(),
        skipped: Vec::new(),
    };
    for phrase in Phrase::RESPONSES {
        let (xs, ys): (Vec<f64>, Vec<f64>) = dataset
            .iter()
            .filter(|r| r.phrase() == phrase)
            .map(|r| (r.pair().p1(), r.pair().p2()))
            .unzip();
        if xs.len() < MIN_PHRASE_RECORDS {
            out.skipped.push((phrase, xs.len()));
            continue;
        }
        match ols_fit(&xs, &ys, 2) {
            Ok(r) => out.fitted.push((phrase, r)),
            Err(_) => out.skipped.push((phrase, xs.len())),
        }
    }
    out
}
