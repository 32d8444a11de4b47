//! Domain values: probabilities in percentage points, update pairs, and the
//! nine-level relative probability phrase scale.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A probability in percentage points, `0 <= value <= 100`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ProbabilityPct(f64);

impl ProbabilityPct {
    pub const ZERO: ProbabilityPct = ProbabilityPct(0.0);
    pub const CERTAIN: ProbabilityPct = ProbabilityPct(100.0);

    pub fn new(value: f64) -> Result<Self> {
        Self::checked("probability", value)
    }

    /// Like [`new`](Self::new), naming the value as `what` in the error.
    pub fn checked(what: &'static str, value: f64) -> Result<Self> {
        if (0.0..=100.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::OutOfRange { what, value })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Self {
        Self(100.0 - self.0)
    }
}

impl<'de> Deserialize<'de> for ProbabilityPct {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        ProbabilityPct::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ProbabilityPct {
    /// One decimal place with trailing zeros trimmed: `5`, `12.5`, `33.3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{:.1}", self.0);
        let s = s.strip_suffix(".0").unwrap_or(&s);
        f.write_str(s)
    }
}

/// A probability update from `prior` (p1) to `posterior` (p2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpdatePair {
    pub prior: ProbabilityPct,
    pub posterior: ProbabilityPct,
}

impl UpdatePair {
    pub fn new(prior: f64, posterior: f64) -> Result<Self> {
        Ok(Self {
            prior: ProbabilityPct::checked("prior", prior)?,
            posterior: ProbabilityPct::checked("posterior", posterior)?,
        })
    }

    #[inline]
    pub fn p1(&self) -> f64 {
        self.prior.value()
    }

    #[inline]
    pub fn p2(&self) -> f64 {
        self.posterior.value()
    }

    /// `None` when prior and posterior are exactly equal.
    pub fn direction(&self) -> Option<Direction> {
        if self.p2() > self.p1() {
            Some(Direction::More)
        } else if self.p2() < self.p1() {
            Some(Direction::Less)
        } else {
            None
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            prior: self.posterior,
            posterior: self.prior,
        }
    }

    pub fn complemented(&self) -> Self {
        Self {
            prior: self.prior.complement(),
            posterior: self.posterior.complement(),
        }
    }
}

/// Which way the probability moved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Less,
    More,
}

impl Direction {
    pub fn sign(self) -> i8 {
        match self {
            Direction::Less => -1,
            Direction::More => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Less => Direction::More,
            Direction::More => Direction::Less,
        }
    }
}

/// Ordered relative probability phrase scale, index -4 ..= +4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Phrase {
    GreatDealLess = -4,
    QuiteABitLess = -3,
    SomewhatLess = -2,
    LittleLess = -1,
    EquallyLikely = 0,
    LittleMore = 1,
    SomewhatMore = 2,
    QuiteABitMore = 3,
    GreatDealMore = 4,
}

impl Phrase {
    /// All nine phrases in index order.
    pub const ALL: [Phrase; 9] = [
        Phrase::GreatDealLess,
        Phrase::QuiteABitLess,
        Phrase::SomewhatLess,
        Phrase::LittleLess,
        Phrase::EquallyLikely,
        Phrase::LittleMore,
        Phrase::SomewhatMore,
        Phrase::QuiteABitMore,
        Phrase::GreatDealMore,
    ];

    /// The eight directional phrases offered to respondents, in index order.
    pub const RESPONSES: [Phrase; 8] = [
        Phrase::GreatDealLess,
        Phrase::QuiteABitLess,
        Phrase::SomewhatLess,
        Phrase::LittleLess,
        Phrase::LittleMore,
        Phrase::SomewhatMore,
        Phrase::QuiteABitMore,
        Phrase::GreatDealMore,
    ];

    #[inline]
    pub fn index(self) -> i8 {
        self as i8
    }

    pub fn from_index(index: i8) -> Option<Phrase> {
        if (-4..=4).contains(&index) {
            Some(Self::ALL[(index + 4) as usize])
        } else {
            None
        }
    }

    /// Build the phrase at `level` (1..=4) on the given side.
    pub fn on_side(direction: Direction, level: u8) -> Option<Phrase> {
        if !(1..=4).contains(&level) {
            return None;
        }
        Self::from_index(direction.sign() * level as i8)
    }

    /// Strength on its side: 0 for "equally likely", 1 ..= 4 otherwise.
    pub fn level(self) -> u8 {
        self.index().unsigned_abs()
    }

    pub fn direction(self) -> Option<Direction> {
        match self.index().signum() {
            1 => Some(Direction::More),
            -1 => Some(Direction::Less),
            _ => None,
        }
    }

    /// Position of a directional phrase in [`Phrase::RESPONSES`]; used for
    /// confusion-matrix indexing.
    pub fn response_slot(self) -> Option<usize> {
        Self::RESPONSES.iter().position(|&p| p == self)
    }

    /// The same strength on the opposite side.
    pub fn mirror(self) -> Phrase {
        Self::from_index(-self.index()).expect("negated index is in range")
    }

    pub fn token(self) -> &'static str {
        match self {
            Phrase::GreatDealLess => "great_deal_less",
            Phrase::QuiteABitLess => "quite_a_bit_less",
            Phrase::SomewhatLess => "somewhat_less",
            Phrase::LittleLess => "little_less",
            Phrase::EquallyLikely => "equally_likely",
            Phrase::LittleMore => "little_more",
            Phrase::SomewhatMore => "somewhat_more",
            Phrase::QuiteABitMore => "quite_a_bit_more",
            Phrase::GreatDealMore => "great_deal_more",
        }
    }

    pub fn display(self) -> &'static str {
        match self {
            Phrase::GreatDealLess => "a great deal less likely",
            Phrase::QuiteABitLess => "quite a bit less likely",
            Phrase::SomewhatLess => "somewhat less likely",
            Phrase::LittleLess => "a little less likely",
            Phrase::EquallyLikely => "equally likely",
            Phrase::LittleMore => "a little more likely",
            Phrase::SomewhatMore => "somewhat more likely",
            Phrase::QuiteABitMore => "quite a bit more likely",
            Phrase::GreatDealMore => "a great deal more likely",
        }
    }
}

impl fmt::Display for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Phrase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Phrase::ALL
            .iter()
            .copied()
            .find(|p| p.token() == s)
            .ok_or_else(|| Error::UnknownPhrase(s.to_string()))
    }
}

/// One of the six boundaries between adjacent phrases on the same side.
///
/// `level` 1 separates little/somewhat, 2 somewhat/quite a bit, 3 quite a
/// bit/great deal. "A little more" and "a little less" are not adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Boundary {
    pub side: Direction,
    pub level: u8,
}

impl Boundary {
    /// Report order: the "more" side from the extreme inward, then the "less"
    /// side from the diagonal outward.
    pub const ALL: [Boundary; 6] = [
        Boundary::new(Direction::More, 3),
        Boundary::new(Direction::More, 2),
        Boundary::new(Direction::More, 1),
        Boundary::new(Direction::Less, 1),
        Boundary::new(Direction::Less, 2),
        Boundary::new(Direction::Less, 3),
    ];

    pub const fn new(side: Direction, level: u8) -> Self {
        Self { side, level }
    }

    /// Signed index in `{±1, ±2, ±3}`.
    pub fn from_index(index: i8) -> Option<Self> {
        let level = index.unsigned_abs();
        if !(1..=3).contains(&level) {
            return None;
        }
        let side = if index > 0 {
            Direction::More
        } else {
            Direction::Less
        };
        Some(Self::new(side, level))
    }

    pub fn index(self) -> i8 {
        self.side.sign() * self.level as i8
    }

    /// Zero-based slot within its side (0 = little/somewhat).
    pub(crate) fn slot(self) -> usize {
        debug_assert!((1..=3).contains(&self.level));
        (self.level - 1) as usize
    }

    /// The phrase nearer the diagonal.
    pub fn inner(self) -> Phrase {
        Phrase::on_side(self.side, self.level).expect("level in 1..=3")
    }

    /// The phrase farther from the diagonal.
    pub fn outer(self) -> Phrase {
        Phrase::on_side(self.side, self.level + 1).expect("level in 1..=3")
    }

    /// The boundary separating two adjacent phrases, in either order.
    pub fn between(a: Phrase, b: Phrase) -> Option<Self> {
        let (da, db) = (a.direction()?, b.direction()?);
        if da != db || a.level().abs_diff(b.level()) != 1 {
            return None;
        }
        Some(Self::new(da, a.level().min(b.level())))
    }

    pub fn label(self) -> String {
        format!("{}/{}", self.inner().token(), self.outer().token())
    }

    pub fn from_label(label: &str) -> Option<Self> {
        let (a, b) = label.split_once('/')?;
        let (a, b) = (a.parse().ok()?, b.parse().ok()?);
        let boundary = Self::between(a, b)?;
        (boundary.inner() == a).then_some(boundary)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_token_bijection() {
        let expected = [
            (-4, "great_deal_less"),
            (-3, "quite_a_bit_less"),
            (-2, "somewhat_less"),
            (-1, "little_less"),
            (0, "equally_likely"),
            (1, "little_more"),
            (2, "somewhat_more"),
            (3, "quite_a_bit_more"),
            (4, "great_deal_more"),
        ];
        for (index, token) in expected {
            let p = Phrase::from_index(index).unwrap();
            assert_eq!(p.index(), index);
            assert_eq!(p.token(), token);
            assert_eq!(token.parse::<Phrase>().unwrap(), p);
        }
        assert!(Phrase::from_index(5).is_none());
        assert!("great_deal_mroe".parse::<Phrase>().is_err());
    }

    #[test]
    fn display_strings() {
        assert_eq!(Phrase::GreatDealLess.display(), "a great deal less likely");
        assert_eq!(Phrase::LittleMore.display(), "a little more likely");
        assert_eq!(Phrase::QuiteABitMore.display(), "quite a bit more likely");
        assert_eq!(Phrase::EquallyLikely.display(), "equally likely");
    }

    #[test]
    fn mirror_negates_index() {
        for p in Phrase::ALL {
            assert_eq!(p.mirror().index(), -p.index());
        }
    }

    #[test]
    fn probability_range_is_checked() {
        assert!(ProbabilityPct::new(0.0).is_ok());
        assert!(ProbabilityPct::new(100.0).is_ok());
        assert!(ProbabilityPct::new(-0.1).is_err());
        assert!(ProbabilityPct::new(100.5).is_err());
        assert!(ProbabilityPct::new(f64::NAN).is_err());
        assert!(UpdatePair::new(105.0, 5.0).is_err());
    }

    #[test]
    fn percent_formatting_trims_zeros() {
        let fmt = |v| ProbabilityPct::new(v).unwrap().to_string();
        assert_eq!(fmt(5.0), "5");
        assert_eq!(fmt(12.5), "12.5");
        assert_eq!(fmt(100.0 / 3.0), "33.3");
        assert_eq!(fmt(74.96), "75");
    }

    #[test]
    fn boundaries_and_adjacency() {
        let b = Boundary::between(Phrase::GreatDealMore, Phrase::QuiteABitMore).unwrap();
        assert_eq!(b.index(), 3);
        assert_eq!(b.label(), "quite_a_bit_more/great_deal_more");
        assert_eq!(Boundary::from_label(&b.label()), Some(b));
        // Not adjacent across the "equally likely" gap.
        assert!(Boundary::between(Phrase::LittleMore, Phrase::LittleLess).is_none());
        assert!(Boundary::between(Phrase::LittleMore, Phrase::QuiteABitMore).is_none());
        for i in [-3i8, -2, -1, 1, 2, 3] {
            assert_eq!(Boundary::from_index(i).unwrap().index(), i);
        }
        assert!(Boundary::from_index(0).is_none());
        assert!(Boundary::from_label("great_deal_more/quite_a_bit_more").is_none());
    }
}
