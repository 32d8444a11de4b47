//! Odds-form Bayes updates and one-sentence explanations of them.

use crate::classifier::{Classifier, PhraseClassifier};
use crate::empirical::Interval;
use crate::error::{Error, Result};
use crate::phrase::{Phrase, ProbabilityPct, UpdatePair};

/// Posterior after multiplying the prior odds by `likelihood_ratio`.
///
/// Priors of 0 % and 100 % are absorbing for any finite ratio.
pub fn bayes_update(prior: ProbabilityPct, likelihood_ratio: f64) -> Result<ProbabilityPct> {
    if !(likelihood_ratio.is_finite() && likelihood_ratio > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "likelihood ratio must be a positive finite number, got {likelihood_ratio}"
        )));
    }
    let p = prior.value();
    if p == 0.0 || p == 100.0 {
        return Ok(prior);
    }
    let odds = p / (100.0 - p) * likelihood_ratio;
    let posterior = if odds.is_infinite() {
        100.0
    } else {
        100.0 * odds / (1.0 + odds)
    };
    ProbabilityPct::new(posterior.clamp(0.0, 100.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Explanation {
    pub sentence: String,
    pub phrase: Phrase,
    pub pair: UpdatePair,
    /// Posteriors that would earn the same phrase at this prior; only for
    /// line-based classifiers and only when numbers were requested.
    pub numeric_range: Option<Interval>,
}

const NO_CHANGE: &str = "about as likely as before";

/// "In light of the evidence, `name` is `phrase`."
pub fn explain_update(
    proposition: &str,
    pair: UpdatePair,
    classifier: &Classifier,
    include_numbers: bool,
) -> Result<Explanation> {
    let phrase = classifier.classify(pair)?;
    let wording = match phrase {
        Phrase::EquallyLikely => NO_CHANGE,
        p => p.display(),
    };
    let mut sentence = format!("In light of the evidence, {proposition} is {wording}.");
    let mut numeric_range = None;
    if include_numbers {
        sentence.push_str(&format!(" ({}% → {}%)", pair.prior, pair.posterior));
        if let (Some(psf), true) = (classifier.as_lines(), phrase != Phrase::EquallyLikely) {
            numeric_range = Some(psf.phrase_region(phrase, pair.p1())?);
        }
    }
    Ok(Explanation {
        sentence,
        phrase,
        pair,
        numeric_range,
    })
}
