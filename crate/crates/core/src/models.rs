//! The three hypothesis families as ready-made classifiers.
//!
//! | model | boundary shape            | score held constant |
//! |-------|---------------------------|---------------------|
//! | H1    | `p2 = c * p1`             | probability ratio   |
//! | H2    | `p2 = p1 + c`             | difference          |
//! | H3    | `p1 (1 - p2) = c (1 - p1) p2` | odds ratio      |
//!
//! Default constants are illustrative, not measured: H2 uses the "more"-side
//! intercepts of the empirical line function (9.4, 18, 32) so it resembles
//! it, while H1 (1.5, 2.5, 4) and H3 (2, 5, 20) use round values that keep
//! all four phrases reachable on each side. Override them freely.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classifier::PhraseClassifier;
use crate::error::{Error, Result};
use crate::phrase::{Boundary, Phrase, ProbabilityPct, UpdatePair};
use crate::thresholds::{Family, ScoreThresholds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypothesisName {
    H1,
    H2,
    H3,
}

impl HypothesisName {
    pub const ALL: [HypothesisName; 3] =
        [HypothesisName::H1, HypothesisName::H2, HypothesisName::H3];

    pub fn family(self) -> Family {
        match self {
            HypothesisName::H1 => Family::Ratio,
            HypothesisName::H2 => Family::Difference,
            HypothesisName::H3 => Family::OddsRatio,
        }
    }

    pub fn from_family(family: Family) -> Self {
        match family {
            Family::Ratio => HypothesisName::H1,
            Family::Difference => HypothesisName::H2,
            Family::OddsRatio => HypothesisName::H3,
        }
    }

    pub fn default_more_thresholds(self) -> [f64; 3] {
        match self {
            HypothesisName::H1 => [1.5, 2.5, 4.0],
            HypothesisName::H2 => [9.4, 18.0, 32.0],
            HypothesisName::H3 => [2.0, 5.0, 20.0],
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            HypothesisName::H1 => "constant probability ratio",
            HypothesisName::H2 => "constant probability difference",
            HypothesisName::H3 => "constant odds ratio",
        }
    }
}

impl fmt::Display for HypothesisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for HypothesisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(HypothesisName::H1),
            "h2" => Ok(HypothesisName::H2),
            "h3" => Ok(HypothesisName::H3),
            _ => Err(Error::InvalidParameter(format!("unknown hypothesis `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypothesisModel {
    name: HypothesisName,
    thresholds: ScoreThresholds,
}

impl HypothesisModel {
    pub fn name(&self) -> HypothesisName {
        self.name
    }

    pub fn thresholds(&self) -> &ScoreThresholds {
        &self.thresholds
    }

    /// The model with its documented default constants, mirrored.
    pub fn default_for(name: HypothesisName) -> Self {
        make_model(name, name.default_more_thresholds(), None)
            .expect("default thresholds are valid")
    }

    /// Wrap existing thresholds, naming the model after their family.
    pub fn from_thresholds(thresholds: ScoreThresholds) -> Self {
        Self {
            name: HypothesisName::from_family(thresholds.family()),
            thresholds,
        }
    }
}

/// Build a hypothesis model. Omitted less-side thresholds are mirrored from
/// the more side (negated for H2, reciprocals for H1 and H3).
pub fn make_model(
    name: HypothesisName,
    more: [f64; 3],
    less: Option<[f64; 3]>,
) -> Result<HypothesisModel> {
    let family = name.family();
    let thresholds = match less {
        Some(less) => ScoreThresholds::new(family, more, less)?,
        None => ScoreThresholds::mirrored(family, more)?,
    };
    Ok(HypothesisModel { name, thresholds })
}

/// Posterior on `boundary` at prior `p1`, clamped to [0, 100].
pub fn boundary_curve(model: &HypothesisModel, boundary: Boundary, p1: ProbabilityPct) -> f64 {
    threshold_curve(model.thresholds(), boundary, p1.value()).clamp(0.0, 100.0)
}

/// Unclamped boundary posterior for any threshold function.
pub(crate) fn threshold_curve(th: &ScoreThresholds, boundary: Boundary, p1: f64) -> f64 {
    let c = th.threshold(boundary);
    match th.family() {
        Family::Ratio => c * p1,
        Family::Difference => p1 + c,
        Family::OddsRatio => {
            let q = p1 / 100.0;
            100.0 * c * q / (1.0 - q + c * q)
        }
    }
}

impl PhraseClassifier for HypothesisModel {
    fn classify(&self, pair: UpdatePair) -> Result<Phrase> {
        self.thresholds.classify(pair)
    }

    fn is_beyond(&self, boundary: Boundary, pair: UpdatePair) -> Result<bool> {
        self.thresholds.is_beyond(boundary, pair)
    }
}
