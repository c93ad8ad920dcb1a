//! OEIS b-files and the sequence derived from the constant-term polynomials.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::{CheckId, CheckRecord, GridPoint, Value};
use crate::exactnum::integer;
use crate::{Error, Result};

const BUNDLED_A005148: &str = include_str!("../../data/b005148.txt");

/// Parsed `index value` pairs of an OEIS b-file, in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BFile {
    pub terms: Vec<(i64, BigInt)>,
}

impl BFile {
    /// Lines of `index value`; `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Ingestion(format!("line {}: expected `index value`, got {raw:?}", lineno + 1));
            let mut fields = line.split_whitespace();
            let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad());
            };
            let index = index.parse::<i64>().map_err(|_| bad())?;
            let value = BigInt::from_str(value).map_err(|_| bad())?;
            if terms.last().is_some_and(|(prev, _)| *prev >= index) {
                return Err(Error::Ingestion(format!("line {}: indices must increase", lineno + 1)));
            }
            terms.push((index, value));
        }
        Ok(Self { terms })
    }

    /// The A005148 snapshot shipped with the crate.
    pub fn bundled_a005148() -> Self {
        Self::parse(BUNDLED_A005148).expect("bundled b-file is well formed")
    }

    /// File index of the first term equal to 1.
    fn anchor(&self) -> Result<usize> {
        self.terms
            .iter()
            .position(|(_, v)| v.is_one())
            .ok_or_else(|| Error::Ingestion("b-file has no term equal to 1 to anchor a_1".into()))
    }

    /// The term matched to `a_k`, counting from the first term equal to 1.
    pub fn aligned_term(&self, k: u32) -> Result<BigInt> {
        let at = self.anchor()? + k as usize - 1;
        self.terms
            .get(at)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Ingestion(format!("b-file does not cover a_{k}")))
    }
}

/// A sequence read off the interpolated polynomials, `a_1, a_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSequence {
    pub name: String,
    pub terms: Vec<(u32, BigInt)>,
    /// Conjecture violations met while deriving (e.g. a non-integral term).
    pub findings: Vec<String>,
}

impl DerivedSequence {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            terms: Vec::new(),
            findings: Vec::new(),
        }
    }

    /// The listing with `a_0 = 0` prepended (not an OEIS term).
    pub fn display_terms(&self) -> Vec<BigInt> {
        std::iter::once(BigInt::from(0))
            .chain(self.terms.iter().map(|(_, v)| v.clone()))
            .collect()
    }
}

/// Per-index equality records; `a_1` is matched to the first b-file term 1.
pub fn verify_against_bfile(seq: &DerivedSequence, bfile: &BFile) -> Result<Vec<CheckRecord>> {
    if seq.terms.is_empty() {
        return Ok(Vec::new());
    }
    seq.terms
        .iter()
        .map(|(k, a)| {
            let reference = bfile.aligned_term(*k)?;
            Ok(CheckRecord::new(
                CheckId::A005148,
                GridPoint::k(*k),
                Value::Exact(integer(a.clone())),
                Value::Exact(integer(reference)),
            ))
        })
        .collect()
}
