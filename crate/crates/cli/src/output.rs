use graded_zeta::exact::{RatPolynomial, Rational};
use serde::Serialize;
use serde_json::{Map, Value};

/// Output document. Everything under `exact` is a string that parses back
/// to the same rational or polynomial (or an array/object of such strings);
/// everything under `numeric` is a decimal string with 17 significant digits.
#[derive(Debug, Serialize)]
pub struct ResultDoc {
    pub operation: &'static str,
    pub input: Value,
    pub exact: Map<String, Value>,
    pub numeric: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
    pub notes: Vec<String>,
}

impl ResultDoc {
    pub fn new(operation: &'static str, input: Value) -> Self {
        Self {
            operation,
            input,
            exact: Map::new(),
            numeric: Map::new(),
            tolerance: None,
            status: None,
            notes: Vec::new(),
        }
    }

    pub fn exact(&mut self, key: &str, value: Value) -> &mut Self {
        self.exact.insert(key.to_string(), value);
        self
    }

    pub fn numeric(&mut self, key: &str, x: f64) -> &mut Self {
        self.numeric
            .insert(key.to_string(), Value::String(decimal(x)));
        self
    }

    pub fn tolerance(&mut self, tol: f64) -> &mut Self {
        self.tolerance = Some(decimal(tol));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn decimal(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rationals<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(qs.into_iter().map(rational).collect())
}

pub fn poly_in_w(p: &RatPolynomial) -> Value {
    Value::String(p.display_in("w"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_round_trip() {
        for x in [0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 0.0] {
            assert_eq!(decimal(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(decimal(1.5), "1.5000000000000000e0");
    }
}
