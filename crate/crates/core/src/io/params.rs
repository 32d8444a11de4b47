//! JSON parameter documents.
//!
//! ```json
//! {"kind": "lines",
//!  "lines": [{"boundary": "quite_a_bit_more/great_deal_more", "slope": 1.01, "intercept": 32.0}, ...],
//!  "metadata": {"source": "table1"}}
//!
//! {"kind": "thresholds", "family": "difference",
//!  "more": [9.4, 18.0, 32.0], "less": [-9.4, -18.0, -32.0],
//!  "metadata": {"source": "h2 defaults", "created": "2024-01-01T00:00:00Z"}}
//! ```
//!
//! Loading re-validates every invariant of the function it describes.

use serde::{Deserialize, Serialize};

use crate::classifier::Classifier;
use crate::empirical::{PartitionLine, PhraseSelectionFunction};
use crate::error::{Error, Result};
use crate::phrase::Boundary;
use crate::thresholds::{Family, ScoreThresholds};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    /// Free-form creation timestamp, set only when the caller supplies one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParameterDocument {
    pub classifier: Classifier,
    pub metadata: Metadata,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    boundary: String,
    slope: f64,
    intercept: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawDocument {
    Lines {
        lines: Vec<RawLine>,
        #[serde(default)]
        metadata: Metadata,
    },
    Thresholds {
        family: Family,
        more: [f64; 3],
        less: [f64; 3],
        #[serde(default)]
        metadata: Metadata,
    },
}

impl ParameterDocument {
    pub fn new(classifier: impl Into<Classifier>, metadata: Metadata) -> Self {
        Self {
            classifier: classifier.into(),
            metadata,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let metadata = self.metadata.clone();
        let raw = match &self.classifier {
            Classifier::Lines(psf) => RawDocument::Lines {
                lines: psf
                    .lines()
                    .map(|l| RawLine {
                        boundary: l.boundary.label(),
                        slope: l.slope,
                        intercept: l.intercept,
                    })
                    .collect(),
                metadata,
            },
            Classifier::Thresholds(th) => RawDocument::Thresholds {
                family: th.family(),
                more: th.more(),
                less: th.less(),
                metadata,
            },
        };
        let mut text = serde_json::to_string_pretty(&raw)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)?;
        match raw {
            RawDocument::Lines { lines, metadata } => {
                if lines.len() != 6 {
                    return Err(Error::InvalidLines(format!(
                        "expected 6 lines, found {}",
                        lines.len()
                    )));
                }
                let lines = lines
                    .into_iter()
                    .map(|l| {
                        let boundary = Boundary::from_label(&l.boundary).ok_or_else(|| {
                            Error::InvalidLines(format!("unknown boundary label `{}`", l.boundary))
                        })?;
                        PartitionLine::new(boundary, l.slope, l.intercept)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self {
                    classifier: PhraseSelectionFunction::from_lines(lines)?.into(),
                    metadata,
                })
            }
            RawDocument::Thresholds {
                family,
                more,
                less,
                metadata,
            } => Ok(Self {
                classifier: ScoreThresholds::new(family, more, less)?.into(),
                metadata,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::table1_function;
    use crate::models::{HypothesisModel, HypothesisName};

    #[test]
    fn table1_document() {
        let doc = ParameterDocument::new(
            table1_function(),
            Metadata {
                source: Some("table1".into()),
                created: None,
            },
        );
        let text = doc.to_json().unwrap();
        assert!(text.contains("\"kind\": \"lines\""));
        assert!(text.contains("\"boundary\": \"quite_a_bit_more/great_deal_more\""));
        assert!(!text.contains("created"));
        assert_eq!(ParameterDocument::from_json(&text).unwrap(), doc);
    }

    #[test]
    fn thresholds_document() {
        let doc = ParameterDocument::new(
            HypothesisModel::default_for(HypothesisName::H1),
            Metadata::default(),
        );
        let text = doc.to_json().unwrap();
        assert!(text.contains("\"family\": \"ratio\""));
        assert_eq!(ParameterDocument::from_json(&text).unwrap(), doc);
    }

    #[test]
    fn loading_revalidates() {
        let bad_order = r#"{"kind":"thresholds","family":"difference","more":[18,9.4,32],"less":[-9.4,-18,-32]}"#;
        assert!(matches!(
            ParameterDocument::from_json(bad_order),
            Err(Error::InvalidThresholds(_))
        ));
        let bad_family = r#"{"kind":"thresholds","family":"log","more":[1,2,3],"less":[-1,-2,-3]}"#;
        assert!(matches!(
            ParameterDocument::from_json(bad_family),
            Err(Error::Json(_))
        ));
        let bad_kind = r#"{"kind":"curves"}"#;
        assert!(ParameterDocument::from_json(bad_kind).is_err());

        let table1 = ParameterDocument::new(table1_function(), Metadata::default())
            .to_json()
            .unwrap();
        let negative_slope = table1.replacen("\"slope\": 1.01", "\"slope\": -1.01", 1);
        assert!(matches!(
            ParameterDocument::from_json(&negative_slope),
            Err(Error::InvalidLines(_))
        ));
        let bad_label = table1.replacen(
            "quite_a_bit_more/great_deal_more",
            "great_deal_more/quite_a_bit_more",
            1,
        );
        assert!(matches!(
            ParameterDocument::from_json(&bad_label),
            Err(Error::InvalidLines(_))
        ));
    }
}
