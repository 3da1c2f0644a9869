use std::io::Read;
use std::path::Path;

use graded_zeta::exact::WeightSeq;
use graded_zeta::hilbert::{BettiTable, HilbertSeries};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// JSON description of a graded module.
///
/// ```json
/// {"weights": [2, 3], "numerator": [1, 0, 0, 0, 0, 0, -1]}
/// {"weights": [1, 1, 1], "betti": [[0, 0, 1], [1, 2, 1]], "shift": 1}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecDoc {
    pub weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<(usize, u64, u64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_degrees: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterate: Option<usize>,
}

/// A parsed spec: the final series, and the resolution when the module is
/// exactly the one it resolves.
#[derive(Debug, Clone)]
pub struct Module {
    pub doc: ModuleSpecDoc,
    pub series: HilbertSeries,
    pub betti: Option<BettiTable>,
}

impl ModuleSpecDoc {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = if path == Path::new("-") {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("reading {}: {e}", path.display())))?
        };
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("module spec: {e}")))
    }

    pub fn build(&self) -> Result<Module, CliError> {
        let parse = |msg: String| CliError::Parse(msg);
        let weights = WeightSeq::from_signed(&self.weights).map_err(|e| parse(e.to_string()))?;
        let (mut series, mut betti) = match (&self.numerator, &self.betti) {
            (Some(h), None) => (HilbertSeries::new(weights, h.clone()), None),
            (None, Some(entries)) => {
                let table = BettiTable::new(entries.clone()).map_err(|e| parse(e.to_string()))?;
                (HilbertSeries::from_betti(weights, &table), Some(table))
            }
            _ => {
                return Err(parse(
                    "exactly one of `numerator` and `betti` is required".into(),
                ))
            }
        };
        if let Some(k) = self.shift.filter(|&k| k > 0) {
            series = series.shift(k);
            betti = None;
        }
        for &d in self.regular_degrees.iter().flatten() {
            if d <= 0 {
                return Err(parse(format!("regular degrees must be positive, got {d}")));
            }
            series = series.regular_quotient(d as usize);
            betti = None;
        }
        if let Some(i) = self.iterate.filter(|&i| i > 0) {
            series = series.iterate(i);
            betti = None;
        }
        Ok(Module {
            doc: self.clone(),
            series,
            betti,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let doc =
            ModuleSpecDoc::parse(r#"{"weights":[2,3],"numerator":[1,0,0,0,0,0,-1]}"#).unwrap();
        let module = doc.build().unwrap();
        assert_eq!(module.series.expand(4).values, vec![1, 0, 1, 1, 1]);
        assert!(module.betti.is_none());
    }

    #[test]
    fn betti_table_kept_only_without_modifiers() {
        let plain = ModuleSpecDoc::parse(r#"{"weights":[2,3],"betti":[[0,0,1],[1,6,1]]}"#).unwrap();
        assert!(plain.build().unwrap().betti.is_some());
        let shifted =
            ModuleSpecDoc::parse(r#"{"weights":[2,3],"betti":[[0,0,1],[1,6,1]],"shift":2}"#)
                .unwrap();
        let module = shifted.build().unwrap();
        assert!(module.betti.is_none());
        assert_eq!(module.series.expand(3).values, vec![0, 0, 1, 0]);
    }

    #[test]
    fn modifiers_compose() {
        let doc = ModuleSpecDoc::parse(
            r#"{"weights":[1,1,1],"numerator":[1],"regular_degrees":[2,3],"iterate":1}"#,
        )
        .unwrap();
        let series = doc.build().unwrap().series;
        assert_eq!(series.weights().len(), 4);
        // K[x,y,z]/(f_2, f_3) has H = 1, 3, 5, 6, 6, …; iterating sums it
        assert_eq!(series.expand(4).values, vec![1, 4, 9, 15, 21]);
    }

    #[test]
    fn rejects_bad_documents() {
        for text in [
            r#"{"weights":[2,3]}"#,
            r#"{"weights":[2,3],"numerator":[1],"betti":[[0,0,1]]}"#,
            r#"{"weights":[0,3],"numerator":[1]}"#,
            r#"{"weights":[1],"numerator":[1],"regular_degrees":[0]}"#,
            r#"{"weights":[1],"numerator":[1],"colour":"red"}"#,
            r#"{"weights":[1],"betti":[[0,0,0]]}"#,
        ] {
            let result = ModuleSpecDoc::parse(text).and_then(|d| d.build());
            assert!(matches!(result, Err(CliError::Parse(_))), "{text}");
        }
    }
}
