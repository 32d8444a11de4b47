//! Line-based phrase selection functions, response datasets, and accuracy
//! evaluation.
//!
//! A [`PhraseSelectionFunction`] is six straight partition lines
//! `p2 = slope * p1 + intercept`, three above the diagonal and three below.
//! [`table1_function`] returns the empirically fitted lines for the eight
//! phrases.

use std::fmt;

use crate::classifier::PhraseClassifier;
use crate::error::{Error, Result};
use crate::phrase::{Boundary, Direction, Phrase, UpdatePair};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionLine {
    pub boundary: Boundary,
    pub slope: f64,
    pub intercept: f64,
}

impl PartitionLine {
    pub fn new(boundary: Boundary, slope: f64, intercept: f64) -> Result<Self> {
        if !slope.is_finite() || !intercept.is_finite() {
            return Err(Error::InvalidLines(format!(
                "{boundary}: non-finite coefficients"
            )));
        }
        if slope <= 0.0 {
            return Err(Error::InvalidLines(format!(
                "{boundary}: slope {slope} must be positive"
            )));
        }
        Ok(Self {
            boundary,
            slope,
            intercept,
        })
    }

    #[inline]
    pub fn height(&self, p1: f64) -> f64 {
        self.slope * p1 + self.intercept
    }

    /// Where the line meets `p2 = 0`.
    pub fn prior_axis_intercept(&self) -> f64 {
        -self.intercept / self.slope
    }
}

/// Six partition lines, each side ordered little/somewhat, somewhat/quite,
/// quite/great.
#[derive(Clone, Debug, PartialEq)]
pub struct PhraseSelectionFunction {
    more: [PartitionLine; 3],
    less: [PartitionLine; 3],
}

impl PhraseSelectionFunction {
    pub fn new(more: [PartitionLine; 3], less: [PartitionLine; 3]) -> Result<Self> {
        for (side, lines) in [(Direction::More, &more), (Direction::Less, &less)] {
            for (slot, line) in lines.iter().enumerate() {
                let expected = Boundary::new(side, slot as u8 + 1);
                if line.boundary != expected {
                    return Err(Error::InvalidLines(format!(
                        "line for {} found in the {expected} position",
                        line.boundary
                    )));
                }
                // Re-run the per-line checks; fields are public.
                PartitionLine::new(line.boundary, line.slope, line.intercept)?;
            }
        }
        let at_center = |lines: &[PartitionLine; 3]| lines.map(|l| l.height(50.0));
        let (up, down) = (at_center(&more), at_center(&less));
        if !up.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidLines(format!(
                "more-side boundaries must ascend at p1 = 50, got {up:?}"
            )));
        }
        if !down.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidLines(format!(
                "less-side boundaries must descend at p1 = 50, got {down:?}"
            )));
        }
        Ok(Self { more, less })
    }

    /// Assemble from six lines given in any order, one per boundary.
    pub fn from_lines(lines: impl IntoIterator<Item = PartitionLine>) -> Result<Self> {
        let mut more: [Option<PartitionLine>; 3] = [None; 3];
        let mut less: [Option<PartitionLine>; 3] = [None; 3];
        for line in lines {
            let slot = match line.boundary.side {
                Direction::More => &mut more[line.boundary.slot()],
                Direction::Less => &mut less[line.boundary.slot()],
            };
            if slot.replace(line).is_some() {
                return Err(Error::InvalidLines(format!(
                    "duplicate line for {}",
                    line.boundary
                )));
            }
        }
        let unpack =
            |side: [Option<PartitionLine>; 3], dir: Direction| -> Result<[PartitionLine; 3]> {
                let mut out = [PartitionLine {
                    boundary: Boundary::new(dir, 1),
                    slope: 1.0,
                    intercept: 0.0,
                }; 3];
                for (i, line) in side.into_iter().enumerate() {
                    out[i] = line.ok_or_else(|| {
                        Error::InvalidLines(format!(
                            "missing line for {}",
                            Boundary::new(dir, i as u8 + 1)
                        ))
                    })?;
                }
                Ok(out)
            };
        Self::new(
            unpack(more, Direction::More)?,
            unpack(less, Direction::Less)?,
        )
    }

    pub fn line(&self, boundary: Boundary) -> &PartitionLine {
        match boundary.side {
            Direction::More => &self.more[boundary.slot()],
            Direction::Less => &self.less[boundary.slot()],
        }
    }

    /// All six lines in [`Boundary::ALL`] order.
    pub fn lines(&self) -> impl Iterator<Item = &PartitionLine> + '_ {
        Boundary::ALL.into_iter().map(|b| self.line(b))
    }

    fn heights(&self, side: Direction, p1: f64) -> [f64; 3] {
        match side {
            Direction::More => self.more.map(|l| l.height(p1)),
            Direction::Less => self.less.map(|l| l.height(p1)),
        }
    }

    pub fn classify(&self, pair: UpdatePair) -> Phrase {
        let Some(side) = pair.direction() else {
            return Phrase::EquallyLikely;
        };
        let p2 = pair.p2();
        let ys = self.heights(side, pair.p1());
        // Extreme boundary first, so lines that cross outside the square
        // cannot produce contradictory regions.
        let level = (1..=3)
            .rev()
            .find(|&k| match side {
                Direction::More => p2 >= ys[k - 1],
                Direction::Less => p2 <= ys[k - 1],
            })
            .map_or(1, |k| k + 1);
        Phrase::on_side(side, level as u8).expect("level in 1..=4")
    }

    /// Posterior values at prior `p1` that classify as `phrase`, clamped to
    /// [0, 100]. The result may be empty.
    pub fn phrase_region(&self, phrase: Phrase, p1: f64) -> Result<Interval> {
        let Some(side) = phrase.direction() else {
            return Err(Error::InvalidParameter(
                "\"equally likely\" covers only the diagonal p2 = p1, not an interval".into(),
            ));
        };
        let k = phrase.level() as usize;
        let ys = self.heights(side, p1);
        let interval = match side {
            Direction::More => {
                let (lo, lo_closed) = match k {
                    1 => (p1, false),
                    _ if ys[k - 2] > p1 => (ys[k - 2], true),
                    _ => (p1, false),
                };
                let (hi, hi_closed) = match ys[k - 1..].iter().copied().reduce(f64::min) {
                    Some(u) if u <= 100.0 => (u, false),
                    _ => (100.0, true),
                };
                Interval::new(lo, hi, lo_closed, hi_closed)
            }
            Direction::Less => {
                let (hi, hi_closed) = match k {
                    1 => (p1, false),
                    _ if ys[k - 2] < p1 => (ys[k - 2], true),
                    _ => (p1, false),
                };
                let (lo, lo_closed) = match ys[k - 1..].iter().copied().reduce(f64::max) {
                    Some(l) if l >= 0.0 => (l, false),
                    _ => (0.0, true),
                };
                Interval::new(lo, hi, lo_closed, hi_closed)
            }
        };
        Ok(interval)
    }
}

impl PhraseClassifier for PhraseSelectionFunction {
    fn classify(&self, pair: UpdatePair) -> Result<Phrase> {
        Ok(PhraseSelectionFunction::classify(self, pair))
    }

    fn is_beyond(&self, boundary: Boundary, pair: UpdatePair) -> Result<bool> {
        let y = self.line(boundary).height(pair.p1());
        Ok(match boundary.side {
            Direction::More => pair.p2() >= y,
            Direction::Less => pair.p2() <= y,
        })
    }
}

/// The empirically fitted partition lines for the eight phrases.
pub fn table1_function() -> PhraseSelectionFunction {
    let line = |index, slope, intercept| {
        PartitionLine::new(Boundary::from_index(index).unwrap(), slope, intercept).unwrap()
    };
    PhraseSelectionFunction::new(
        [line(1, 0.98, 9.4), line(2, 1.05, 18.0), line(3, 1.01, 32.0)],
        [
            line(-1, 0.96, -6.0),
            line(-2, 0.94, -15.8),
            line(-3, 0.55, -10.0),
        ],
    )
    .expect("empirical lines are well ordered")
}

/// A range of posterior probabilities; empty when nothing satisfies both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Self {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("(empty)");
        }
        let trim = |v: f64| {
            let s = format!("{v:.1}");
            s.strip_suffix(".0").map(str::to_owned).unwrap_or(s)
        };
        write!(
            f,
            "{}{}%, {}%{}",
            if self.lo_closed { '[' } else { '(' },
            trim(self.lo),
            trim(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// One labeled response: a respondent chose `phrase` for `pair`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseRecord {
    subject_id: String,
    pair: UpdatePair,
    phrase: Phrase,
}

impl ResponseRecord {
    pub fn new(subject_id: impl Into<String>, pair: UpdatePair, phrase: Phrase) -> Result<Self> {
        let Some(dir) = phrase.direction() else {
            return Err(Error::InvalidRecord(
                "\"equally_likely\" is not a response phrase".into(),
            ));
        };
        if pair.direction() != Some(dir) {
            return Err(Error::InvalidRecord(format!(
                "phrase {phrase} does not match update {} -> {}",
                pair.p1(),
                pair.p2()
            )));
        }
        Ok(Self {
            subject_id: subject_id.into(),
            pair,
            phrase,
        })
    }

    pub fn subject_id(&self) -> &str {
        &self.subject_id
    }

    pub fn pair(&self) -> UpdatePair {
        self.pair
    }

    pub fn phrase(&self) -> Phrase {
        self.phrase
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResponseDataset {
    records: Vec<ResponseRecord>,
}

impl ResponseDataset {
    pub fn new(records: Vec<ResponseRecord>) -> Self {
        Self { records }
    }

    pub fn records(&self) -> &[ResponseRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn push(&mut self, record: ResponseRecord) {
        self.records.push(record);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ResponseRecord> {
        self.records.iter()
    }

    pub fn count(&self, phrase: Phrase) -> usize {
        self.records.iter().filter(|r| r.phrase == phrase).count()
    }
}

impl FromIterator<ResponseRecord> for ResponseDataset {
    fn from_iter<I: IntoIterator<Item = ResponseRecord>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ResponseDataset {
    type Item = &'a ResponseRecord;
    type IntoIter = std::slice::Iter<'a, ResponseRecord>;

    fn into_iter(self) -> Self::IntoIter {
        self.records.iter()
    }
}

/// Wrong-side counts for one partition boundary.
///
/// Only records labeled with one of the boundary's two phrases take part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryMisclassification {
    pub boundary: Boundary,
    pub inner_total: usize,
    /// Inner-phrase records on or beyond the boundary.
    pub inner_wrong: usize,
    pub outer_total: usize,
    /// Outer-phrase records short of the boundary.
    pub outer_wrong: usize,
}

/// `(phrase, wrong, total)` for one column of the above/below report.
pub type SideCount = (Phrase, usize, usize);

impl BoundaryMisclassification {
    /// Records of the phrase whose region lies below the line, found above it.
    pub fn above(&self) -> SideCount {
        match self.boundary.side {
            Direction::More => (self.boundary.inner(), self.inner_wrong, self.inner_total),
            Direction::Less => (self.boundary.outer(), self.outer_wrong, self.outer_total),
        }
    }

    /// Records of the phrase whose region lies above the line, found below it.
    pub fn below(&self) -> SideCount {
        match self.boundary.side {
            Direction::More => (self.boundary.outer(), self.outer_wrong, self.outer_total),
            Direction::Less => (self.boundary.inner(), self.inner_wrong, self.inner_total),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    /// Rows: recorded phrase; columns: classified phrase; both in
    /// [`Phrase::RESPONSES`] order.
    pub confusion: [[usize; 8]; 8],
    /// In [`Boundary::ALL`] order.
    pub per_boundary: Vec<BoundaryMisclassification>,
}

/// Score a classifier against labeled responses.
pub fn evaluate_accuracy<C: PhraseClassifier + ?Sized>(
    classifier: &C,
    dataset: &ResponseDataset,
) -> Result<Evaluation> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut confusion = [[0usize; 8]; 8];
    let mut correct = 0;
    for record in dataset {
        let got = classifier.classify(record.pair)?;
        if got == record.phrase {
            correct += 1;
        }
        let row = record
            .phrase
            .response_slot()
            .expect("records carry response phrases");
        // Records never sit on the diagonal, so the classifier never answers
        // "equally likely" here.
        let col = got.response_slot().expect("directional pair");
        confusion[row][col] += 1;
    }

    let mut per_boundary = Vec::with_capacity(6);
    for boundary in Boundary::ALL {
        let mut m = BoundaryMisclassification {
            boundary,
            inner_total: 0,
            inner_wrong: 0,
            outer_total: 0,
            outer_wrong: 0,
        };
        for record in dataset {
            if record.phrase == boundary.inner() {
                m.inner_total += 1;
                m.inner_wrong += usize::from(classifier.is_beyond(boundary, record.pair)?);
            } else if record.phrase == boundary.outer() {
                m.outer_total += 1;
                m.outer_wrong += usize::from(!classifier.is_beyond(boundary, record.pair)?);
            }
        }
        per_boundary.push(m);
    }

    let total = dataset.len();
    Ok(Evaluation {
        total,
        correct,
        accuracy: correct as f64 / total as f64,
        confusion,
        per_boundary,
    })
}
