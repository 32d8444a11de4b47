//! Plain SVG figures of the (prior, posterior) square.
//!
//! The plot area is a 100 x 100 unit square in percentage points, drawn into
//! a 600 x 600 pixel image with room for axis labels. Prior runs left to
//! right, posterior bottom to top.

use std::fmt::Write as _;

use crate::classifier::{Classifier, PhraseClassifier};
use crate::empirical::ResponseDataset;
use crate::fitting::PartitionPoint;
use crate::models::threshold_curve;
use crate::phrase::{Boundary, Phrase, UpdatePair};

pub const SIZE_PX: u32 = 600;
const VIEW_MIN_X: f64 = -14.0;
const VIEW_MIN_Y: f64 = -8.0;
const VIEW_SPAN: f64 = 120.0;
/// 2 px at the default scale of 5 px per unit.
const POINT_RADIUS: f64 = 0.4;
const REGION_CELL: f64 = 2.0;

pub fn phrase_color(phrase: Phrase) -> &'static str {
    match phrase {
        Phrase::GreatDealLess => "#b2182b",
        Phrase::QuiteABitLess => "#d6604d",
        Phrase::SomewhatLess => "#f4a582",
        Phrase::LittleLess => "#e9b9a4",
        Phrase::EquallyLikely => "#ffffff",
        Phrase::LittleMore => "#a9cbe0",
        Phrase::SomewhatMore => "#92c5de",
        Phrase::QuiteABitMore => "#4393c3",
        Phrase::GreatDealMore => "#2166ac",
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Screen coordinates for a point of the square.
fn xy(p1: f64, p2: f64) -> (String, String) {
    (num(p1), num(100.0 - p2))
}

/// Sample `f` over the prior axis and clip the curve to the square.
/// Returns disjoint polyline pieces.
pub fn clip_curve(f: impl Fn(f64) -> f64, step: f64) -> Vec<Vec<(f64, f64)>> {
    let n = (100.0 / step).round() as usize;
    let inside = |y: f64| (0.0..=100.0).contains(&y);
    let mut pieces: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let x = (i as f64 * step).min(100.0);
        let y = f(x);
        if let Some((px, py)) = prev {
            // Where the segment from prev crosses a horizontal edge.
            let cross = |edge: f64| px + (x - px) * (edge - py) / (y - py);
            match (inside(py), inside(y)) {
                (true, false) => {
                    let edge = if y > 100.0 { 100.0 } else { 0.0 };
                    current.push((cross(edge), edge));
                    pieces.push(std::mem::take(&mut current));
                }
                (false, true) => {
                    let edge = if py > 100.0 { 100.0 } else { 0.0 };
                    current.push((cross(edge), edge));
                }
                (false, false) if (py < 0.0) != (y < 0.0) => {
                    // Jumped across the whole square in one step.
                    let (enter, exit) = if py < 0.0 { (0.0, 100.0) } else { (100.0, 0.0) };
                    pieces.push(vec![(cross(enter), enter), (cross(exit), exit)]);
                }
                _ => {}
            }
        }
        if inside(y) {
            current.push((x, y));
        }
        prev = Some((x, y));
    }
    if current.len() > 1 {
        pieces.push(current);
    }
    pieces.retain(|p| p.len() > 1);
    pieces
}

/// Boundary curve pieces for any classifier.
pub fn boundary_pieces(classifier: &Classifier, boundary: Boundary) -> Vec<Vec<(f64, f64)>> {
    match classifier {
        Classifier::Lines(psf) => {
            let line = *psf.line(boundary);
            clip_curve(|x| line.height(x), 100.0)
        }
        Classifier::Thresholds(th) => clip_curve(|x| threshold_curve(th, boundary, x), 0.5),
    }
}

/// Builder for one figure.
#[derive(Debug, Default)]
pub struct Figure {
    title: String,
    body: String,
}

impl Figure {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            body: String::new(),
        }
    }

    /// Shade each region of the square by the phrase the classifier selects.
    pub fn regions<C: PhraseClassifier + ?Sized>(mut self, classifier: &C) -> Self {
        self.body
            .push_str("<g class=\"regions\" fill-opacity=\"0.35\">\n");
        let cells = (100.0 / REGION_CELL) as usize;
        for i in 0..cells {
            for j in 0..cells {
                let (x0, y0) = (i as f64 * REGION_CELL, j as f64 * REGION_CELL);
                let center = UpdatePair::new(x0 + REGION_CELL / 2.0, y0 + REGION_CELL / 2.0)
                    .expect("cell centers lie in the square");
                let Ok(phrase) = classifier.classify(center) else {
                    continue;
                };
                if phrase == Phrase::EquallyLikely {
                    continue;
                }
                let (x, y) = xy(x0, y0 + REGION_CELL);
                let _ = writeln!(
                    self.body,
                    "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{w}\" fill=\"{}\"/>",
                    phrase_color(phrase),
                    w = num(REGION_CELL)
                );
            }
        }
        self.body.push_str("</g>\n");
        self
    }

    /// One polyline per boundary.
    pub fn boundaries(mut self, classifier: &Classifier, stroke: &str) -> Self {
        let _ = writeln!(
            self.body,
            "<g class=\"boundaries\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"0.5\">"
        );
        for boundary in Boundary::ALL {
            for piece in boundary_pieces(classifier, boundary) {
                let pts: Vec<String> = piece
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = xy(a, b);
                        format!("{x},{y}")
                    })
                    .collect();
                let _ = writeln!(
                    self.body,
                    "<polyline data-boundary=\"{}\" points=\"{}\"/>",
                    boundary.label(),
                    pts.join(" ")
                );
            }
        }
        self.body.push_str("</g>\n");
        self
    }

    /// Responses as small circles colored by their recorded phrase.
    pub fn points(mut self, dataset: &ResponseDataset) -> Self {
        self.body
            .push_str("<g class=\"responses\" stroke=\"#333\" stroke-width=\"0.08\">\n");
        for r in dataset {
            let (x, y) = xy(r.pair().p1(), r.pair().p2());
            let _ = writeln!(
                self.body,
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{}\"/>",
                num(POINT_RADIUS),
                phrase_color(r.phrase())
            );
        }
        self.body.push_str("</g>\n");
        self
    }

    /// Partition points as small crosses.
    pub fn partition_points(mut self, points: &[PartitionPoint]) -> Self {
        self.body
            .push_str("<g class=\"partition-points\" stroke=\"#000\" stroke-width=\"0.25\">\n");
        let arm = 0.8;
        for p in points {
            let (x0, y0) = xy(p.p1 - arm, p.p2 - arm);
            let (x1, y1) = xy(p.p1 + arm, p.p2 + arm);
            let (x2, y2) = xy(p.p1 - arm, p.p2 + arm);
            let (x3, y3) = xy(p.p1 + arm, p.p2 - arm);
            let _ = writeln!(
                self.body,
                "<path d=\"M{x0} {y0}L{x1} {y1}M{x2} {y2}L{x3} {y3}\"/>"
            );
        }
        self.body.push_str("</g>\n");
        self
    }

    pub fn finish(self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE_PX}\" height=\"{SIZE_PX}\" viewBox=\"{} {} {} {}\" font-family=\"sans-serif\">",
            num(VIEW_MIN_X),
            num(VIEW_MIN_Y),
            num(VIEW_SPAN),
            num(VIEW_SPAN)
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        out.push_str("<rect x=\"0\" y=\"0\" width=\"100\" height=\"100\" fill=\"#fff\"/>\n");
        out.push_str(&self.body);
        out.push_str(
            "<line x1=\"0\" y1=\"100\" x2=\"100\" y2=\"0\" stroke=\"#888\" stroke-width=\"0.2\" stroke-dasharray=\"1 1\"/>\n",
        );
        out.push_str("<rect x=\"0\" y=\"0\" width=\"100\" height=\"100\" fill=\"none\" stroke=\"#000\" stroke-width=\"0.3\"/>\n");
        out.push_str("<g class=\"axes\" font-size=\"2.6\" fill=\"#000\">\n");
        for t in (0..=100).step_by(10) {
            let v = t as f64;
            let _ = writeln!(
                out,
                "<line x1=\"{v}\" y1=\"100\" x2=\"{v}\" y2=\"101.2\" stroke=\"#000\" stroke-width=\"0.2\"/>\
                 <text x=\"{v}\" y=\"104\" text-anchor=\"middle\">{t}%</text>"
            );
            let y = num(100.0 - v);
            let _ = writeln!(
                out,
                "<line x1=\"-1.2\" y1=\"{y}\" x2=\"0\" y2=\"{y}\" stroke=\"#000\" stroke-width=\"0.2\"/>\
                 <text x=\"-1.8\" y=\"{y}\" dy=\"0.9\" text-anchor=\"end\">{t}%</text>"
            );
        }
        out.push_str("<text x=\"50\" y=\"109\" text-anchor=\"middle\">prior p1</text>\n");
        out.push_str(
            "<text x=\"-11\" y=\"50\" text-anchor=\"middle\" transform=\"rotate(-90 -11 50)\">posterior p2</text>\n",
        );
        let _ = writeln!(
            out,
            "<text x=\"50\" y=\"-3\" text-anchor=\"middle\" font-size=\"3.2\">{}</text>",
            escape(&self.title)
        );
        out.push_str("</g>\n</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Regions and boundaries of a selection function, in the style of the
/// hypothesis diagrams.
pub fn render_classifier(classifier: &Classifier, title: &str) -> String {
    Figure::new(title)
        .regions(classifier)
        .boundaries(classifier, "#000")
        .finish()
}

/// Responses, partition points and fitted lines.
pub fn render_fit(
    dataset: &ResponseDataset,
    fitted: &Classifier,
    points: &[PartitionPoint],
    title: &str,
) -> String {
    Figure::new(title)
        .points(dataset)
        .partition_points(points)
        .boundaries(fitted, "#000")
        .finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::table1_function;
    use crate::models::{HypothesisModel, HypothesisName};

    #[test]
    fn clipping_stops_at_the_edges() {
        let pieces = clip_curve(|x| 2.0 * x, 100.0);
        assert_eq!(pieces, vec![vec![(0.0, 0.0), (50.0, 100.0)]]);
        let pieces = clip_curve(|x| x - 150.0, 100.0);
        assert!(pieces.is_empty());
        let pieces = clip_curve(|x| 2.0 * x - 50.0, 100.0);
        assert_eq!(pieces, vec![vec![(25.0, 0.0), (75.0, 100.0)]]);
        let pieces = clip_curve(|x| 0.55 * x - 10.0, 100.0);
        let first = pieces[0][0];
        assert!((first.0 - 10.0 / 0.55).abs() < 1e-9 && first.1 == 0.0);
    }

    #[test]
    fn figure_structure() {
        let t1 = Classifier::from(table1_function());
        let svg = render_classifier(&t1, "Lines <a> & b");
        assert!(svg
            .starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\""));
        assert!(svg.contains("Lines &lt;a&gt; &amp; b"));
        assert_eq!(svg.matches("<polyline").count(), 6);
        assert!(svg.contains("100%"));
        assert!(svg.trim_end().ends_with("</svg>"));

        let h3 = Classifier::from(HypothesisModel::default_for(HypothesisName::H3));
        let svg = render_classifier(&h3, "H3");
        assert_eq!(svg.matches("<polyline").count(), 6);
        // Curves meet the corners.
        assert!(svg.contains("points=\"0,100 "));
    }
}
