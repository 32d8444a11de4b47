use crate::empirical::PhraseSelectionFunction;
use crate::error::Result;
use crate::models::HypothesisModel;
use crate::phrase::{Boundary, Phrase, UpdatePair};
use crate::thresholds::ScoreThresholds;

/// A total phrase selection function over the (prior, posterior) square.
pub trait PhraseClassifier {
    fn classify(&self, pair: UpdatePair) -> Result<Phrase>;

    /// Whether `pair` lies on the outer (farther from the diagonal) side of
    /// `boundary`. A point exactly on the boundary counts as outer.
    fn is_beyond(&self, boundary: Boundary, pair: UpdatePair) -> Result<bool>;
}

impl<C: PhraseClassifier + ?Sized> PhraseClassifier for &C {
    fn classify(&self, pair: UpdatePair) -> Result<Phrase> {
        (**self).classify(pair)
    }

    fn is_beyond(&self, boundary: Boundary, pair: UpdatePair) -> Result<bool> {
        (**self).is_beyond(boundary, pair)
    }
}

/// Either kind of selection function, for callers that pick one at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum Classifier {
    Lines(PhraseSelectionFunction),
    Thresholds(ScoreThresholds),
}

impl Classifier {
    pub fn as_lines(&self) -> Option<&PhraseSelectionFunction> {
        match self {
            Classifier::Lines(psf) => Some(psf),
            Classifier::Thresholds(_) => None,
        }
    }
}

impl From<PhraseSelectionFunction> for Classifier {
    fn from(psf: PhraseSelectionFunction) -> Self {
        Classifier::Lines(psf)
    }
}

impl From<ScoreThresholds> for Classifier {
    fn from(th: ScoreThresholds) -> Self {
        Classifier::Thresholds(th)
    }
}

impl From<HypothesisModel> for Classifier {
    fn from(model: HypothesisModel) -> Self {
        Classifier::Thresholds(*model.thresholds())
    }
}

impl PhraseClassifier for Classifier {
    fn classify(&self, pair: UpdatePair) -> Result<Phrase> {
        match self {
            Classifier::Lines(psf) => PhraseClassifier::classify(psf, pair),
            Classifier::Thresholds(th) => th.classify(pair),
        }
    }

    fn is_beyond(&self, boundary: Boundary, pair: UpdatePair) -> Result<bool> {
        match self {
            Classifier::Lines(psf) => psf.is_beyond(boundary, pair),
            Classifier::Thresholds(th) => th.is_beyond(boundary, pair),
        }
    }
}
