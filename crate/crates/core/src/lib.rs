//! Relative probability phrases for explaining probability updates.
//!
//! A *phrase selection function* maps a probability update (prior `p1`,
//! posterior `p2`, both in percentage points) to one of eight phrases such
//! as "quite a bit more likely", plus "equally likely" for no change. This
//! crate provides:
//!
//! - the empirically fitted line-based function ([`table1_function`]) and
//!   the three hypothesis families (constant ratio, difference, odds ratio);
//! - a fitting pipeline that recovers partition lines from labeled
//!   responses ([`fitting`]);
//! - questionnaire generation and synthetic respondents ([`experiment`]);
//! - Bayes updates with one-sentence explanations ([`explain`]);
//! - CSV/JSON formats, SVG figures and text reports ([`io`]).
//!
//! ```
//! use probphrase::{table1_function, UpdatePair, Phrase};
//!
//! let f = table1_function();
//! let update = UpdatePair::new(50.0, 5.0).unwrap();
//! assert_eq!(f.classify(update), Phrase::GreatDealLess);
//! ```

pub mod classifier;
pub mod empirical;
pub mod error;
pub mod experiment;
pub mod explain;
pub mod fitting;
pub mod io;
pub mod models;
pub mod phrase;
pub mod thresholds;

pub use classifier::{Classifier, PhraseClassifier};
pub use empirical::{
    evaluate_accuracy, table1_function, Evaluation, Interval, PartitionLine,
    PhraseSelectionFunction, ResponseDataset, ResponseRecord,
};
pub use error::{Error, Result};
pub use experiment::{generate_tasks, simulate_responses, NoiseModel, TaskSheet};
pub use explain::{bayes_update, explain_update, Explanation};
pub use fitting::{fit_selection_function, FitReport};
pub use models::{boundary_curve, make_model, HypothesisModel, HypothesisName};
pub use phrase::{Boundary, Direction, Phrase, ProbabilityPct, UpdatePair};
pub use thresholds::{classify_by_thresholds, score, Family, ScoreThresholds};
