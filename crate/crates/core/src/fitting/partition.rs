//! Partition-point search in diagonal bands.
//!
//! Coordinates are rotated to `s = p1 + p2` (position along the diagonal,
//! 0..200) and `d = p2 - p1` (signed offset from it). The `s` axis is cut
//! into equal-width bands; inside each band the offset that best separates
//! two adjacent phrases becomes one partition point.

use crate::empirical::ResponseDataset;
use crate::error::{Error, Result};
use crate::phrase::{Boundary, Phrase};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionPoint {
    pub band_index: usize,
    /// Not clamped: points from corner bands may fall slightly outside the
    /// square.
    pub p1: f64,
    pub p2: f64,
    pub misclassified: usize,
}

/// Best split of one band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Split {
    /// Threshold on `|d|`.
    pub at: f64,
    pub misclassified: usize,
}

/// Count points on the wrong side of `at`: inner-phrase points at or beyond
/// it, and outer-phrase points short of it.
pub fn split_errors(points: &[(f64, bool)], at: f64) -> usize {
    points
        .iter()
        .filter(|&&(u, outer)| if outer { u < at } else { u >= at })
        .count()
}

/// Minimum-misclassification threshold on `|d|` for `(|d|, is_outer)` points.
///
/// Candidates are midpoints between consecutive distinct values; the first
/// (smallest) candidate wins ties. When all values coincide the only
/// candidate is that value. Returns `None` for an empty slice.
pub fn best_split(points: &[(f64, bool)]) -> Option<Split> {
    if points.is_empty() {
        return None;
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    let inner_total = sorted.iter().filter(|p| !p.1).count();
    let mut best: Option<Split> = None;
    // Errors for a split just above the values swept so far.
    let mut inner_after = inner_total;
    let mut outer_before = 0;
    let mut i = 0;
    while i < sorted.len() {
        let value = sorted[i].0;
        while i < sorted.len() && sorted[i].0 == value {
            if sorted[i].1 {
                outer_before += 1;
            } else {
                inner_after -= 1;
            }
            i += 1;
        }
        let Some(&(next, _)) = sorted.get(i) else {
            break;
        };
        let candidate = Split {
            at: 0.5 * (value + next),
            misclassified: inner_after + outer_before,
        };
        if best.is_none_or(|b| candidate.misclassified < b.misclassified) {
            best = Some(candidate);
        }
    }
    best.or_else(|| {
        let at = sorted[0].0;
        Some(Split {
            at,
            misclassified: split_errors(&sorted, at),
        })
    })
}

/// Partition points between adjacent phrases `a` and `b`, one per band that
/// holds at least one response of each.
pub fn find_partition_points(
    dataset: &ResponseDataset,
    a: Phrase,
    b: Phrase,
    band_count: usize,
) -> Result<Vec<PartitionPoint>> {
    let boundary = Boundary::between(a, b).ok_or_else(|| {
        Error::InvalidParameter(format!("{a} and {b} are not adjacent phrases on one side"))
    })?;
    partition_points(dataset, boundary, band_count)
}

pub(crate) fn partition_points(
    dataset: &ResponseDataset,
    boundary: Boundary,
    band_count: usize,
) -> Result<Vec<PartitionPoint>> {
    if band_count < 2 {
        return Err(Error::InvalidParameter(format!(
            "band count must be at least 2, got {band_count}"
        )));
    }
    let width = 200.0 / band_count as f64;
    let (inner, outer) = (boundary.inner(), boundary.outer());

    let mut bands: Vec<Vec<(f64, bool)>> = vec![Vec::new(); band_count];
    for record in dataset {
        let phrase = record.phrase();
        if phrase != inner && phrase != outer {
            continue;
        }
        let pair = record.pair();
        let s = pair.p1() + pair.p2();
        let band = ((s / width) as usize).min(band_count - 1);
        bands[band].push(((pair.p2() - pair.p1()).abs(), phrase == outer));
    }

    let sign = boundary.side.sign() as f64;
    let points: Vec<PartitionPoint> = bands
        .iter()
        .enumerate()
        .filter(|(_, pts)| pts.iter().any(|p| p.1) && pts.iter().any(|p| !p.1))
        .map(|(band_index, pts)| {
            let split = best_split(pts).expect("band is non-empty");
            let center = (band_index as f64 + 0.5) * width;
            let (p1, p2) = from_rotated(center, sign * split.at);
            PartitionPoint {
                band_index,
                p1,
                p2,
                misclassified: split.misclassified,
            }
        })
        .collect();

    if points.len() < 2 {
        return Err(Error::Underdetermined {
            boundary,
            usable_bands: points.len(),
        });
    }
    Ok(points)
}

/// `(p1, p2)` for diagonal position `s` and signed offset `d`.
#[inline]
pub(crate) fn from_rotated(s: f64, d: f64) -> (f64, f64) {
    (0.5 * (s - d), 0.5 * (s + d))
}
