//! Questionnaire task generation and synthetic respondents.
//!
//! Tasks are drawn from the integer grid `1..=98` on both axes, excluding
//! the diagonal: `98 * 98 - 98 = 9506` possible (prior, posterior) pairs.
//! Each sheet holds equally many increasing and decreasing updates, drawn
//! without replacement and presented in random order.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::classifier::{Classifier, PhraseClassifier};
use crate::empirical::{ResponseDataset, ResponseRecord};
use crate::error::{Error, Result};
use crate::phrase::{Phrase, UpdatePair};
use crate::thresholds::score;

pub const GRID_MIN: u32 = 1;
pub const GRID_MAX: u32 = 98;
pub const DEFAULT_TASKS_PER_SUBJECT: usize = 40;

fn grid_span() -> usize {
    (GRID_MAX - GRID_MIN + 1) as usize
}

/// Number of distinct off-diagonal task pairs.
pub fn universe_size() -> usize {
    grid_span() * grid_span() - grid_span()
}

/// Increasing pairs `(p1, p2)` with `p1 < p2`, in lexicographic order.
fn increasing_pairs() -> Vec<(u32, u32)> {
    (GRID_MIN..=GRID_MAX)
        .flat_map(|a| (a + 1..=GRID_MAX).map(move |b| (a, b)))
        .collect()
}

/// Every possible task pair, increasing and decreasing.
pub fn pair_universe() -> Vec<UpdatePair> {
    (GRID_MIN..=GRID_MAX)
        .flat_map(|a| {
            (GRID_MIN..=GRID_MAX)
                .filter(move |&b| b != a)
                .map(move |b| (a, b))
        })
        .map(|(a, b)| UpdatePair::new(a as f64, b as f64).expect("grid values are valid"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaskSheet {
    subject_id: String,
    tasks: Vec<UpdatePair>,
}

impl TaskSheet {
    pub fn new(subject_id: impl Into<String>, tasks: Vec<UpdatePair>) -> Result<Self> {
        let subject_id = subject_id.into();
        let bad = |msg: String| {
            Err(Error::InvalidParameter(format!(
                "task sheet {subject_id}: {msg}"
            )))
        };
        let mut seen = HashSet::with_capacity(tasks.len());
        let mut increasing = 0;
        for t in &tasks {
            let on_grid =
                |v: f64| v.fract() == 0.0 && (GRID_MIN as f64..=GRID_MAX as f64).contains(&v);
            if !on_grid(t.p1()) || !on_grid(t.p2()) {
                return bad(format!(
                    "pair ({}, {}) is off the {GRID_MIN}..{GRID_MAX} grid",
                    t.p1(),
                    t.p2()
                ));
            }
            if t.p1() == t.p2() {
                return bad(format!("pair ({}, {}) has no change", t.p1(), t.p2()));
            }
            if !seen.insert((t.p1() as u32, t.p2() as u32)) {
                return bad(format!("duplicate pair ({}, {})", t.p1(), t.p2()));
            }
            increasing += usize::from(t.p2() > t.p1());
        }
        if 2 * increasing != tasks.len() {
            return bad(format!(
                "{increasing} of {} tasks increase, need exactly half",
                tasks.len()
            ));
        }
        Ok(Self { subject_id, tasks })
    }

    pub fn subject_id(&self) -> &str {
        &self.subject_id
    }

    pub fn tasks(&self) -> &[UpdatePair] {
        &self.tasks
    }
}

fn subject_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Subject ids are `s001`, `s002`, ...
pub fn subject_id(index: usize) -> String {
    format!("s{:03}", index + 1)
}

/// One sheet per subject, each seeded from `seed` and the subject index.
pub fn generate_tasks(
    n_subjects: usize,
    tasks_per_subject: usize,
    seed: u64,
) -> Result<Vec<TaskSheet>> {
    if tasks_per_subject == 0 || !tasks_per_subject.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "tasks per subject must be a positive even number, got {tasks_per_subject}"
        )));
    }
    if tasks_per_subject > universe_size() {
        return Err(Error::InvalidParameter(format!(
            "tasks per subject cannot exceed {} distinct pairs, got {tasks_per_subject}",
            universe_size()
        )));
    }
    let up = increasing_pairs();
    let half = tasks_per_subject / 2;
    (0..n_subjects)
        .map(|i| {
            let mut rng = subject_rng(seed, i as u64);
            let mut tasks: Vec<UpdatePair> = Vec::with_capacity(tasks_per_subject);
            for idx in index::sample(&mut rng, up.len(), half) {
                let (a, b) = up[idx];
                tasks.push(UpdatePair::new(a as f64, b as f64)?);
            }
            for idx in index::sample(&mut rng, up.len(), half) {
                let (a, b) = up[idx];
                tasks.push(UpdatePair::new(b as f64, a as f64)?);
            }
            tasks.shuffle(&mut rng);
            TaskSheet::new(subject_id(i), tasks)
        })
        .collect()
}

/// How synthetic respondents deviate from the ground-truth classifier.
/// Direction never flips: "more" stays "more".
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    None,
    /// Gaussian noise with standard deviation `sigma` (score units) added to
    /// the score before thresholding. Threshold classifiers only.
    ScoreGaussian {
        sigma: f64,
    },
    /// With probability `epsilon`, move one step to an adjacent phrase on the
    /// same side.
    AdjacentFlip {
        epsilon: f64,
    },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::None => Ok(()),
            NoiseModel::ScoreGaussian { sigma } if sigma.is_finite() && sigma >= 0.0 => Ok(()),
            NoiseModel::AdjacentFlip { epsilon } if (0.0..=1.0).contains(&epsilon) => Ok(()),
            other => Err(Error::InvalidParameter(format!(
                "invalid noise model {other:?}"
            ))),
        }
    }
}

/// One step toward the diagonal or away from it, staying on the same side.
fn adjacent_step<R: Rng>(phrase: Phrase, rng: &mut R) -> Phrase {
    let dir = phrase
        .direction()
        .expect("response phrases are directional");
    let level = match phrase.level() {
        1 => 2,
        4 => 3,
        l if rng.gen_bool(0.5) => l - 1,
        l => l + 1,
    };
    Phrase::on_side(dir, level).expect("level stays in 1..=4")
}

/// Label every task on every sheet with a synthetic response.
pub fn simulate_responses(
    sheets: &[TaskSheet],
    ground_truth: &Classifier,
    noise: NoiseModel,
    seed: u64,
) -> Result<ResponseDataset> {
    noise.validate()?;
    let gaussian = match (noise, ground_truth) {
        (NoiseModel::ScoreGaussian { sigma }, Classifier::Thresholds(th)) => {
            Some((th, Normal::new(0.0, sigma).expect("sigma validated")))
        }
        (NoiseModel::ScoreGaussian { .. }, Classifier::Lines(_)) => {
            return Err(Error::InvalidParameter(
                "score noise needs a threshold classifier; use adjacent-flip noise for line functions".into(),
            ))
        }
        _ => None,
    };
    let mut rng = subject_rng(seed, u64::MAX);
    let mut records = Vec::with_capacity(sheets.iter().map(|s| s.tasks.len()).sum());
    for sheet in sheets {
        for &pair in &sheet.tasks {
            let phrase = match (noise, &gaussian) {
                (NoiseModel::ScoreGaussian { .. }, Some((th, normal))) => {
                    let dir = pair.direction().ok_or_else(|| {
                        Error::InvalidRecord(format!(
                            "task ({}, {}) has no change",
                            pair.p1(),
                            pair.p2()
                        ))
                    })?;
                    let s = score(th.family(), pair)? + normal.sample(&mut rng);
                    th.classify_score(dir, s)
                }
                (NoiseModel::AdjacentFlip { epsilon }, _) => {
                    let clean = ground_truth.classify(pair)?;
                    if clean.direction().is_some() && rng.gen_bool(epsilon) {
                        adjacent_step(clean, &mut rng)
                    } else {
                        clean
                    }
                }
                _ => ground_truth.classify(pair)?,
            };
            records.push(ResponseRecord::new(sheet.subject_id.clone(), pair, phrase)?);
        }
    }
    Ok(ResponseDataset::new(records))
}
