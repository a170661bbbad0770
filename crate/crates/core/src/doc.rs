//! JSON documents for states, root multisets, maps and canonical forms.
//!
//! ```text
//! state      {"n": 3, "dicke": [[re, im], …]}            n + 1 entries
//! roots      {"n": 3, "roots": [[re, im], …], "at_infinity": 1}
//! matrix     {"matrix": [[re, im], [re, im], [re, im], [re, im]]}   row-major
//! canonical  {"n": 4, "partition": [1, 1, 1, 1], "params": [θ, φ], "state": {…}}
//! ```
//!
//! Floats are written with 17 significant digits, which round-trips every
//! `f64`, so writing is deterministic and reading back is exact.

use std::io;

use num_complex::Complex64 as C64;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};

use crate::canonical::CanonicalForm;
use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::symstate::{RootMultiset, SymmetricState};

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub n: usize,
    pub dicke: Vec<[f64; 2]>,
}

impl StateDocument {
    pub fn from_state(s: &SymmetricState) -> Self {
        StateDocument { n: s.n(), dicke: s.amplitudes().iter().copied().map(pair).collect() }
    }

    /// Validates the shape and normalizes; already normalized input is kept verbatim.
    pub fn to_state(&self) -> Result<SymmetricState> {
        if self.n == 0 {
            return Err(format_err("\"n\" must be at least 1"));
        }
        if self.dicke.len() != self.n + 1 {
            return Err(format_err(format!(
                "\"dicke\" has {} entries, expected n + 1 = {}",
                self.dicke.len(),
                self.n + 1
            )));
        }
        let amps: Vec<C64> = self.dicke.iter().copied().map(complex).collect();
        Ok(SymmetricState::new(amps.clone())?.keep_if_normalized(&amps))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDocument {
    pub n: usize,
    pub roots: Vec<[f64; 2]>,
    pub at_infinity: usize,
}

impl RootDocument {
    pub fn from_roots(r: &RootMultiset) -> Self {
        RootDocument {
            n: r.n(),
            roots: r.finite_roots().iter().copied().map(pair).collect(),
            at_infinity: r.infinity_count(),
        }
    }

    pub fn to_roots(&self) -> Result<RootMultiset> {
        if self.roots.len() + self.at_infinity != self.n {
            return Err(format_err(format!(
                "{} finite roots and {} at infinity do not add up to n = {}",
                self.roots.len(),
                self.at_infinity,
                self.n
            )));
        }
        RootMultiset::new(self.roots.iter().copied().map(complex).collect(), self.at_infinity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub matrix: [[f64; 2]; 4],
}

impl MatrixDocument {
    pub fn from_map(m: &MoebiusMap) -> Self {
        MatrixDocument { matrix: m.entries().map(pair) }
    }

    /// The entries as given, before determinant normalization.
    pub fn entries(&self) -> [C64; 4] {
        self.matrix.map(complex)
    }

    /// The normalized map; already normalized entries are kept verbatim.
    pub fn to_map(&self) -> Result<MoebiusMap> {
        MoebiusMap::from_normalized_entries(self.entries())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalDocument {
    pub n: usize,
    pub partition: Vec<usize>,
    pub params: Vec<f64>,
    pub state: StateDocument,
}

impl CanonicalDocument {
    pub fn from_form(c: &CanonicalForm) -> Self {
        CanonicalDocument {
            n: c.n,
            partition: c.label.partition().to_vec(),
            params: c.params.clone(),
            state: StateDocument::from_state(&c.state),
        }
    }
}

/// Compact JSON with every float in `{:.16e}` notation.
struct FixedFloats;

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        CompactFormatter.begin_array_value(w, first)
    }
}

/// Serializes `value` deterministically.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloats);
    for_nonfinite(value)?;
    value.serialize(&mut ser).map_err(|e| format_err(e.to_string()))?;
    String::from_utf8(out).map_err(|e| format_err(e.to_string()))
}

/// JSON has no representation for NaN or infinities.
fn for_nonfinite<T: Serialize>(value: &T) -> Result<()> {
    let v = serde_json::to_value(value).map_err(|e| format_err(e.to_string()))?;
    fn walk(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Null => false,
            serde_json::Value::Array(a) => a.iter().all(walk),
            serde_json::Value::Object(o) => o.values().all(walk),
            _ => true,
        }
    }
    if walk(&v) {
        Ok(())
    } else {
        Err(format_err("non-finite number cannot be written as JSON"))
    }
}

/// Parses a document, rejecting unknown fields and malformed shapes.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| format_err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symstate::{dicke, majorana_roots};

    #[test]
    fn state_document_layout() {
        let json = to_json(&StateDocument::from_state(&dicke(1, 1).unwrap())).unwrap();
        assert_eq!(
            json,
            r#"{"n":1,"dicke":[[0.0000000000000000e0,0.0000000000000000e0],[1.0000000000000000e0,0.0000000000000000e0]]}"#
        );
    }

    #[test]
    fn state_round_trip_is_exact() {
        let s = SymmetricState::new(vec![
            C64::new(0.3, 0.0),
            C64::new(-0.1, 0.7),
            C64::new(1.0 / 3.0, -0.2),
        ])
        .unwrap();
        let json = to_json(&StateDocument::from_state(&s)).unwrap();
        let back = from_json::<StateDocument>(&json).unwrap().to_state().unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&StateDocument::from_state(&back)).unwrap(), json);
    }

    #[test]
    fn roots_round_trip() {
        let s = SymmetricState::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        let r = majorana_roots(&s).unwrap();
        let doc = RootDocument::from_roots(&r);
        assert_eq!((doc.n, doc.at_infinity), (3, 2));
        let back = from_json::<RootDocument>(&to_json(&doc).unwrap()).unwrap();
        assert_eq!(back.to_roots().unwrap(), r);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let short = StateDocument { n: 3, dicke: vec![[1.0, 0.0]; 3] };
        assert!(matches!(short.to_state(), Err(Error::Format(_))));
        let bad = RootDocument { n: 3, roots: vec![[0.0, 0.0]], at_infinity: 1 };
        assert!(matches!(bad.to_roots(), Err(Error::Format(_))));
        assert!(from_json::<StateDocument>(r#"{"n":1,"dicke":[[1,0],[0,0]],"x":1}"#).is_err());
        assert!(from_json::<MatrixDocument>(r#"{"matrix":[[1,0],[0,0],[0,0]]}"#).is_err());
        let singular = MatrixDocument { matrix: [[1.0, 0.0], [2.0, 0.0], [2.0, 0.0], [4.0, 0.0]] };
        assert!(singular.to_map().is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = MoebiusMap::from_entries([C64::new(2.0, 1.0), C64::new(0.0, -1.0), C64::new(1.0, 0.0), C64::new(3.0, 0.0)]).unwrap();
        let back = from_json::<MatrixDocument>(&to_json(&MatrixDocument::from_map(&m)).unwrap()).unwrap();
        assert_eq!(back.to_map().unwrap().entries(), m.entries());
    }

    #[test]
    fn integers_accepted_as_floats() {
        let doc: StateDocument = from_json(r#"{"n":1,"dicke":[[1,0],[1,0]]}"#).unwrap();
        let s = doc.to_state().unwrap();
        assert!((s.amplitudes()[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn nonfinite_values_refused() {
        let doc = MatrixDocument { matrix: [[f64::NAN, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]] };
        assert!(to_json(&doc).is_err());
    }
}
