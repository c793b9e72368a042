use serde::Serialize;

use crate::surface_group::HomologyVector;

/// An exact integer count or a real weighted sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CountValue {
    Int(u64),
    Real(f64),
}

impl CountValue {
    pub fn as_f64(self) -> f64 {
        match self {
            CountValue::Int(n) => n as f64,
            CountValue::Real(v) => v,
        }
    }
}

impl std::fmt::Display for CountValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CountValue::Int(n) => write!(f, "{n}"),
            CountValue::Real(v) => write!(f, "{v:?}"),
        }
    }
}

/// One output row: `(function, beta, x1, x2, value, complete)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub function: String,
    pub beta: Option<HomologyVector>,
    pub x1: f64,
    pub x2: Option<f64>,
    pub value: CountValue,
    pub complete: bool,
}

impl CountRow {
    pub const CSV_HEADER: &'static str = "function,beta,x1,x2,value,complete";

    /// CSV line; β is quoted since it contains commas.
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{:?},{},{},{}",
            self.function,
            self.beta.as_ref().map(|b| format!("\"{b}\"")).unwrap_or_default(),
            self.x1,
            self.x2.map(|x| format!("{x:?}")).unwrap_or_default(),
            self.value,
            self.complete
        )
    }
}
