//! JSON encodings of algebras and of the tables extracted from them.
//!
//! Scalars are written with [`Field::format`] and read back with
//! [`Field::parse`], so files stay readable for extension fields.

use exlie_field::{Field, FieldDescriptor};
use exlie_linalg::SparseVec;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::LieAlgebra;
use crate::roots::CartanType;
use crate::{ExlieError, Result};

/// `(i, j, [(k, scalar), ...])` for `[b_i, b_j] = sum scalar * b_k`.
pub type BracketEntry = (usize, usize, Vec<(usize, String)>);

/// The algebra file format. Only brackets `[b_i, b_j]` with `i < j` are
/// stored, each as a list of `(k, scalar)` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    /// Cartan type of a Chevalley basis, when the table came from one.
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub cartan_type: Option<String>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraJson {
    pub fn descriptor(&self) -> Result<FieldDescriptor> {
        Ok(self.field.parse::<FieldDescriptor>()?)
    }
}

pub fn encode_algebra<F: Field>(l: &LieAlgebra<F>) -> AlgebraJson {
    let f = l.field();
    let desc = f.descriptor();
    let n = l.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = l.basis_bracket(i, j);
            if !v.is_empty() {
                brackets.push((i, j, v.iter().map(|(k, c)| (*k, f.format(c))).collect()));
            }
        }
    }
    AlgebraJson {
        field: desc.spec(),
        modulus: desc.modulus_string(),
        cartan_type: l.cartan_type().map(|t| t.to_string()),
        dim: n,
        labels: l.labels().to_vec(),
        brackets,
    }
}

/// Rebuilds the algebra over `f`, which must match the recorded field.
/// A recorded Cartan type is reattached after comparing the tables.
pub fn decode_algebra<F: Field>(f: F, json: &AlgebraJson) -> Result<LieAlgebra<F>> {
    let desc = json.descriptor()?;
    if f.descriptor().spec() != desc.spec() {
        return Err(ExlieError::Invalid(format!("file is over {} but the field is {}", desc.spec(), f.descriptor())));
    }
    if let (Some(recorded), Some(actual)) = (&json.modulus, f.descriptor().modulus_string()) {
        if *recorded != actual {
            return Err(ExlieError::Invalid(format!("modulus {recorded} differs from {actual}")));
        }
    }
    if json.labels.len() != json.dim {
        return Err(ExlieError::Dimension(format!("{} labels for dim {}", json.labels.len(), json.dim)));
    }
    let brackets = json
        .brackets
        .iter()
        .map(|(i, j, terms)| {
            let entries = terms.iter().map(|(k, c)| Ok((*k, f.parse(c)?))).collect::<Result<Vec<_>>>()?;
            Ok((*i, *j, SparseVec::from_unsorted(&f, entries)))
        })
        .collect::<Result<Vec<_>>>()?;
    let l = LieAlgebra::from_brackets(f, json.labels.clone(), brackets)?;
    match &json.cartan_type {
        Some(t) => l.with_chevalley_type(t.parse::<CartanType>()?),
        None => Ok(l),
    }
}

pub fn scalar<F: Field>(f: &F, a: &F::Elem) -> Value {
    Value::String(f.format(a))
}

pub fn vector<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|a| scalar(f, a)).collect())
}

pub fn matrix<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> Value {
    Value::Array(rows.iter().map(|r| vector(f, r)).collect())
}

pub fn tensor<F: Field>(f: &F, t: &[Vec<Vec<F::Elem>>]) -> Value {
    Value::Array(t.iter().map(|m| matrix(f, m)).collect())
}

pub fn sparse<F: Field>(f: &F, v: &SparseVec<F::Elem>) -> Value {
    Value::Array(v.iter().map(|(k, c)| json!([k, f.format(c)])).collect())
}

/// Parses a comma- or whitespace-separated coordinate list.
pub fn parse_coords<F: Field>(f: &F, text: &str) -> Result<Vec<F::Elem>> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| Ok(f.parse(s)?)).collect()
}
