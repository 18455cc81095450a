//! JSON documents. Every document is an envelope
//! `{"schema": "uqgl21/1", "kind": ..., "data": ...}`; see `docs/json-schema.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fullrep::{
    classify, HighestWeight, Normalization, ReducedBasisVector, Representation, TypicalityClass,
    TypicalityReport,
};
use crate::generator::{Generator, Parity};
use crate::gzrep::GzPattern;
use crate::linalg::Matrix;
use crate::module::{BasisKind, Module};
use crate::qarith::DeformationParameter;

pub const SCHEMA: &str = "uqgl21/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    pub kind: String,
    pub data: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(kind: &str, data: T) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            kind: kind.to_string(),
            data,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Parses an envelope and checks its schema and kind.
pub fn open<T: for<'de> Deserialize<'de>>(json: &str, kind: &str) -> Result<T> {
    let env: Envelope<serde_json::Value> = serde_json::from_str(json)?;
    if env.schema != SCHEMA {
        return Err(Error::Domain(format!("unsupported schema {:?}", env.schema)));
    }
    if env.kind != kind {
        return Err(Error::Domain(format!("expected a {kind} document, found {:?}", env.kind)));
    }
    Ok(serde_json::from_value(env.data)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub weight: HighestWeight,
    pub q: DeformationParameter,
    pub normalization: Normalization,
    pub classification: TypicalityReport,
    pub factor_of: Option<TypicalityClass>,
    pub basis_kind: BasisKind,
    pub dim: usize,
    pub subspace_dims: [usize; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub index: usize,
    pub k: usize,
    pub parity: Parity,
    /// `[[m13, m23, m33], [m12, m22, m32], [m11, 0, m31]]`
    pub pattern: [[f64; 3]; 3],
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationDump {
    pub metadata: Metadata,
    pub basis: Vec<BasisLabel>,
    /// Row-major; entry `[r][c]` is the coefficient of basis vector `r` in
    /// the image of basis vector `c`.
    pub matrices: BTreeMap<Generator, Vec<Vec<f64>>>,
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<f64>], n: usize, g: Generator) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Domain(format!("matrix {g} is not {n} x {n}")));
    }
    Ok(Matrix::from_fn(n, n, |r, c| rows[r][c]))
}

impl RepresentationDump {
    pub fn from_representation(rep: &Representation) -> Self {
        let hw = &rep.weight;
        Self {
            metadata: Metadata {
                weight: *hw,
                q: rep.q,
                normalization: rep.normalization,
                classification: rep.classification.clone(),
                factor_of: rep.factor_of,
                basis_kind: rep.module.kind(),
                dim: rep.dim(),
                subspace_dims: rep.subspace_dims(),
            },
            basis: rep
                .basis
                .iter()
                .enumerate()
                .map(|(index, v)| BasisLabel {
                    index,
                    k: v.k,
                    parity: v.parity(),
                    pattern: v.rows(hw),
                    label: v.label(hw),
                })
                .collect(),
            matrices: Generator::ALL
                .iter()
                .map(|&g| (g, matrix_rows(rep.matrix(g))))
                .collect(),
        }
    }

    /// Rebuilds the representation, checking that the document is
    /// self-consistent.
    pub fn into_representation(self) -> Result<Representation> {
        let md = self.metadata;
        md.weight.validate()?;
        let q = DeformationParameter::new(md.q.value(), md.q.mode())?;
        let normalization =
            Normalization::new(md.normalization.a1, md.normalization.a2, md.normalization.a3)?;
        let classification = classify(&md.weight, &q)?;
        if classification.class != md.classification.class {
            return Err(Error::Consistency(format!(
                "document says {:?}, weight is {:?}",
                md.classification.class, classification.class
            )));
        }
        let n = self.basis.len();
        if n != md.dim {
            return Err(Error::Domain(format!("{n} basis labels for dimension {}", md.dim)));
        }
        let mut basis = Vec::with_capacity(n);
        for (i, b) in self.basis.iter().enumerate() {
            if b.index != i || b.k > 3 {
                return Err(Error::Domain(format!("bad basis label at position {i}")));
            }
            let [_, middle, bottom] = b.pattern;
            let v = ReducedBasisVector {
                k: b.k,
                pattern: GzPattern {
                    m12: middle[0] as i64,
                    m22: middle[1] as i64,
                    m11: bottom[0] as i64,
                    m31: middle[2],
                },
            };
            if v.rows(&md.weight) != b.pattern || !v.pattern.is_valid() {
                return Err(Error::Domain(format!("inconsistent pattern at position {i}")));
            }
            basis.push(v);
        }
        let mut module = Module::new(
            q,
            md.basis_kind,
            basis.iter().map(|v| v.parity()).collect(),
            basis.iter().map(|v| v.label(&md.weight)).collect(),
        );
        for g in Generator::ALL {
            let rows = self
                .matrices
                .get(&g)
                .ok_or_else(|| Error::Domain(format!("matrix {g} missing")))?;
            module.insert(g, matrix_from_rows(rows, n, g)?);
        }
        module.check_finite()?;
        Ok(Representation {
            weight: md.weight,
            q,
            normalization,
            basis,
            classification,
            factor_of: md.factor_of,
            module,
        })
    }
}

pub fn representation_to_json(rep: &Representation) -> Result<String> {
    Envelope::new("representation", RepresentationDump::from_representation(rep)).to_json()
}

pub fn representation_from_json(json: &str) -> Result<Representation> {
    open::<RepresentationDump>(json, "representation")?.into_representation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fullrep::{build_representation, factor_representation};
    use crate::verify::{run_suite, SuiteOptions};

    fn rep(a: i64, b: i64, c: f64) -> Representation {
        build_representation(
            &HighestWeight::new(a, b, c).unwrap(),
            &DeformationParameter::generic(std::f64::consts::E).unwrap(),
            &Normalization::new(0.7, -1.3, 2.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for r in [rep(3, 1, std::f64::consts::PI), factor_representation(&rep(2, 0, -3.0)).unwrap()] {
            let json = representation_to_json(&r).unwrap();
            let back = representation_from_json(&json).unwrap();
            assert_eq!(back.basis, r.basis);
            for g in Generator::ALL {
                assert_eq!(back.matrix(g), r.matrix(g), "{g}");
            }
            let opts = SuiteOptions::default();
            assert_eq!(run_suite(&back, &opts).unwrap(), run_suite(&r, &opts).unwrap());
        }
    }

    #[test]
    fn rejects_wrong_kind_and_shape() {
        let json = representation_to_json(&rep(1, 0, 0.5)).unwrap();
        assert!(open::<RepresentationDump>(&json, "report").is_err());
        let mut doc: RepresentationDump = open(&json, "representation").unwrap();
        doc.matrices.get_mut(&Generator::E12).unwrap().pop();
        assert!(doc.into_representation().is_err());
    }

    #[test]
    fn wrong_classification_is_inconsistent() {
        let json = representation_to_json(&rep(1, 0, 0.5)).unwrap();
        let mut doc: RepresentationDump = open(&json, "representation").unwrap();
        doc.metadata.classification.class = TypicalityClass::NontypicalClass1;
        assert!(matches!(doc.into_representation(), Err(Error::Consistency(_))));
    }
}
