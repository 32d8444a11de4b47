//! Score-threshold classification.
//!
//! Each hypothesis family holds one scalar score constant along a partition
//! boundary: the probability ratio `p2 / p1`, the difference `p2 - p1`, or
//! the odds ratio `odds(p2) / odds(p1)` with `odds(p) = p / (100 - p)`.
//! Classifying an update is then a matter of comparing the score with three
//! thresholds on the side the probability moved.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classifier::PhraseClassifier;
use crate::error::{Error, Result};
use crate::phrase::{Boundary, Direction, Phrase, UpdatePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ratio,
    Difference,
    OddsRatio,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Ratio, Family::Difference, Family::OddsRatio];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ratio => "ratio",
            Family::Difference => "difference",
            Family::OddsRatio => "odds_ratio",
        }
    }

    /// The score value of "no change".
    pub fn neutral(self) -> f64 {
        match self {
            Family::Difference => 0.0,
            Family::Ratio | Family::OddsRatio => 1.0,
        }
    }

    /// Reflect a "more"-side threshold to the "less" side (and back).
    pub fn mirror_threshold(self, t: f64) -> f64 {
        match self {
            Family::Difference => -t,
            Family::Ratio | Family::OddsRatio => 1.0 / t,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown score family `{s}`")))
    }
}

/// The score each family holds constant along a boundary.
///
/// Degenerate 0 % / 100 % inputs follow the limit rules: an unbounded score
/// is `f64::INFINITY`, which compares above every finite threshold. `0/0`
/// and `inf/inf` forms are reported as [`Error::IndeterminateScore`].
pub fn score(family: Family, pair: UpdatePair) -> Result<f64> {
    let (p1, p2) = (pair.p1(), pair.p2());
    let indeterminate = || Error::IndeterminateScore {
        family,
        prior: p1,
        posterior: p2,
    };
    match family {
        Family::Difference => Ok(p2 - p1),
        Family::Ratio => {
            if p1 > 0.0 {
                Ok(p2 / p1)
            } else if p2 > 0.0 {
                Ok(f64::INFINITY)
            } else {
                Err(indeterminate())
            }
        }
        Family::OddsRatio => {
            if (p1 == 0.0 && p2 == 0.0) || (p1 == 100.0 && p2 == 100.0) {
                Err(indeterminate())
            } else if p2 == 100.0 || p1 == 0.0 {
                Ok(f64::INFINITY)
            } else if p2 == 0.0 || p1 == 100.0 {
                Ok(0.0)
            } else {
                Ok(odds(p2) / odds(p1))
            }
        }
    }
}

#[inline]
pub(crate) fn odds(p: f64) -> f64 {
    p / (100.0 - p)
}

/// Three boundaries per side for one score family.
///
/// `more` holds the little/somewhat, somewhat/quite and quite/great
/// thresholds in ascending order; `less` holds the same boundaries on the
/// decreasing side, in descending order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScoreThresholds {
    family: Family,
    more: [f64; 3],
    less: [f64; 3],
}

impl ScoreThresholds {
    pub fn new(family: Family, more: [f64; 3], less: [f64; 3]) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidThresholds(msg));
        if more.iter().chain(&less).any(|t| !t.is_finite()) {
            return bad("thresholds must be finite".into());
        }
        if !more.windows(2).all(|w| w[0] < w[1]) {
            return bad(format!(
                "more-side thresholds {more:?} must be strictly ascending"
            ));
        }
        if !less.windows(2).all(|w| w[0] > w[1]) {
            return bad(format!(
                "less-side thresholds {less:?} must be strictly descending"
            ));
        }
        match family {
            Family::Difference => {
                if more[0] <= 0.0 || less[0] >= 0.0 {
                    return bad(format!(
                        "difference thresholds need more > 0 and less < 0, got {more:?} / {less:?}"
                    ));
                }
            }
            Family::Ratio | Family::OddsRatio => {
                if more[0] <= 1.0 || less[0] >= 1.0 || less[2] <= 0.0 {
                    return bad(format!(
                        "{family} thresholds need more > 1 and less in (0, 1), got {more:?} / {less:?}"
                    ));
                }
            }
        }
        Ok(Self { family, more, less })
    }

    /// Less-side thresholds are the mirror image of `more`, which makes the
    /// classifier symmetric under swapping prior and posterior.
    pub fn mirrored(family: Family, more: [f64; 3]) -> Result<Self> {
        let less = more.map(|t| family.mirror_threshold(t));
        Self::new(family, more, less)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn more(&self) -> [f64; 3] {
        self.more
    }

    pub fn less(&self) -> [f64; 3] {
        self.less
    }

    pub fn threshold(&self, boundary: Boundary) -> f64 {
        match boundary.side {
            Direction::More => self.more[boundary.slot()],
            Direction::Less => self.less[boundary.slot()],
        }
    }

    /// Map a score to a phrase on a known side, extreme boundary first.
    /// Ties resolve to the stronger phrase.
    pub fn classify_score(&self, side: Direction, s: f64) -> Phrase {
        let level = match side {
            Direction::More => 1 + self.more.iter().take_while(|&&t| s >= t).count(),
            Direction::Less => 1 + self.less.iter().take_while(|&&t| s <= t).count(),
        };
        // Thresholds are strictly ordered, so counting from the inner end is
        // the same as testing from the extreme inward.
        Phrase::on_side(side, level as u8).expect("level in 1..=4")
    }
}

impl<'de> Deserialize<'de> for ScoreThresholds {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            family: Family,
            more: [f64; 3],
            less: [f64; 3],
        }
        let raw = Raw::deserialize(d)?;
        ScoreThresholds::new(raw.family, raw.more, raw.less).map_err(serde::de::Error::custom)
    }
}

/// Classify an update with a score-threshold function.
///
/// Exactly equal prior and posterior give [`Phrase::EquallyLikely`] without
/// consulting the score.
pub fn classify_by_thresholds(th: &ScoreThresholds, pair: UpdatePair) -> Result<Phrase> {
    let Some(side) = pair.direction() else {
        return Ok(Phrase::EquallyLikely);
    };
    let s = score(th.family, pair)?;
    Ok(th.classify_score(side, s))
}

impl PhraseClassifier for ScoreThresholds {
    fn classify(&self, pair: UpdatePair) -> Result<Phrase> {
        classify_by_thresholds(self, pair)
    }

    fn is_beyond(&self, boundary: Boundary, pair: UpdatePair) -> Result<bool> {
        let s = score(self.family, pair)?;
        let t = self.threshold(boundary);
        Ok(match boundary.side {
            Direction::More => s >= t,
            Direction::Less => s <= t,
        })
    }
}
