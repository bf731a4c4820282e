//! Named curve fixtures shipped in `fixtures/`, or TOML files of the same shape.

use std::path::Path;

use serde::Deserialize;
use sigcalc::ecurve::{FpCurve, FpPoint};

use crate::report::{Failure, EXIT_PRECONDITION};

const F7L13: &str = include_str!("../fixtures/f7l13.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct CurveFixture {
    pub name: String,
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub ell: u64,
    #[serde(rename = "Q")]
    pub q: [u64; 2],
    /// Absent means R̃ = O.
    #[serde(rename = "R")]
    pub r: Option<[u64; 2]>,
}

impl CurveFixture {
    pub fn load(name_or_path: &str) -> Result<Self, Failure> {
        let text = match name_or_path {
            "f7l13" => F7L13.to_string(),
            path if Path::new(path).exists() => std::fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_PRECONDITION, format!("reading {path}: {e}")))?,
            other => return Err(Failure::new(EXIT_PRECONDITION, format!("unknown fixture {other:?}"))),
        };
        toml::from_str(&text).map_err(|e| Failure::new(EXIT_PRECONDITION, format!("fixture {name_or_path}: {e}")))
    }

    pub fn curve(&self) -> Result<FpCurve, Failure> {
        Ok(FpCurve::new(self.p, self.a, self.b)?)
    }

    pub fn points(&self) -> (FpPoint, FpPoint) {
        let q = FpPoint::affine(self.q[0], self.q[1]);
        let r = self.r.map_or(FpPoint::Infinity, |[x, y]| FpPoint::affine(x, y));
        (q, r)
    }
}
