//! Typical / non-typical classification and factor modules.
//!
//! The two typicality brackets are `[l13 + l33 + 3] = [m13 + m33 + 1]` and
//! `[l23 + l33 + 3] = [m23 + m33]`; they are exactly the factors that appear
//! in the `E23` matrix elements. For generic q a bracket vanishes iff its
//! argument does, so the zero test is done on the argument.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::BasisKind;
use crate::qarith::DeformationParameter;

use super::{HighestWeight, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypicalityClass {
    #[serde(rename = "typical")]
    Typical,
    /// `m33 = -m13 - 1`
    #[serde(rename = "nontypical-class-1")]
    NontypicalClass1,
    /// `m33 = -m23`
    #[serde(rename = "nontypical-class-2")]
    NontypicalClass2,
}

impl TypicalityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TypicalityClass::Typical => "typical",
            TypicalityClass::NontypicalClass1 => "nontypical-class-1",
            TypicalityClass::NontypicalClass2 => "nontypical-class-2",
        }
    }

    /// Subspaces `V_k` spanning the maximal invariant subspace.
    pub fn invariant_subspaces(self) -> &'static [usize] {
        match self {
            TypicalityClass::Typical => &[],
            TypicalityClass::NontypicalClass1 => &[2, 3],
            TypicalityClass::NontypicalClass2 => &[1, 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypicalityReport {
    pub class: TypicalityClass,
    /// `(l13 + l33 + 3, l23 + l33 + 3)`
    pub bracket_arguments: (f64, f64),
    /// The brackets of those arguments.
    pub bracket_values: (f64, f64),
    /// `k` labels of the invariant subspace, empty when typical.
    pub invariant_subspace_indices: Vec<usize>,
}

pub fn classify(hw: &HighestWeight, q: &DeformationParameter) -> Result<TypicalityReport> {
    hw.validate()?;
    let first = hw.m13 as f64 + hw.m33 + 1.0;
    let second = hw.m23 as f64 + hw.m33;
    let class = match (first == 0.0, second == 0.0) {
        (false, false) => TypicalityClass::Typical,
        (true, false) => TypicalityClass::NontypicalClass1,
        (false, true) => TypicalityClass::NontypicalClass2,
        (true, true) => {
            return Err(Error::Domain(format!(
                "{hw}: both typicality brackets vanish, outside the classification"
            )))
        }
    };
    Ok(TypicalityReport {
        class,
        bracket_arguments: (first, second),
        bracket_values: (q.bracket(first), q.bracket(second)),
        invariant_subspace_indices: class.invariant_subspaces().to_vec(),
    })
}

/// The factor module `W / I` of a non-typical representation: every matrix
/// restricted to the basis vectors outside the invariant subspace.
pub fn factor_representation(rep: &Representation) -> Result<Representation> {
    if rep.is_factor() {
        return Err(Error::Domain("representation is already a factor module".into()));
    }
    let class = rep.classification.class;
    if class == TypicalityClass::Typical {
        return Err(Error::Domain(format!(
            "{} is typical and has no proper invariant subspace",
            rep.weight
        )));
    }
    let dropped = class.invariant_subspaces();
    let keep: Vec<usize> = (0..rep.dim())
        .filter(|&i| !dropped.contains(&rep.basis[i].k))
        .collect();
    Ok(Representation {
        weight: rep.weight,
        q: rep.q,
        normalization: rep.normalization,
        basis: keep.iter().map(|&i| rep.basis[i]).collect(),
        classification: rep.classification.clone(),
        factor_of: Some(class),
        module: rep.module.restrict(&keep, BasisKind::Factor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fullrep::{build_representation, Normalization};
    use crate::generator::Generator;

    fn q(v: f64) -> DeformationParameter {
        DeformationParameter::generic(v).unwrap()
    }

    fn hw(a: i64, b: i64, c: f64) -> HighestWeight {
        HighestWeight::new(a, b, c).unwrap()
    }

    #[test]
    fn examples() {
        let c = |h| classify(&h, &q(1.7)).unwrap();
        let r = c(hw(1, 0, -2.0));
        assert_eq!(r.class, TypicalityClass::NontypicalClass1);
        assert_eq!(r.invariant_subspace_indices, vec![2, 3]);
        assert_eq!(r.bracket_values.0, 0.0);
        let r = c(hw(1, 0, 0.0));
        assert_eq!(r.class, TypicalityClass::NontypicalClass2);
        assert_eq!(r.invariant_subspace_indices, vec![1, 3]);
        let r = c(hw(1, 0, 5.0));
        assert_eq!(r.class, TypicalityClass::Typical);
        assert!(r.bracket_values.0 != 0.0 && r.bracket_values.1 != 0.0);
        assert_eq!(c(hw(2, 0, -2.5)).class, TypicalityClass::Typical);
    }

    #[test]
    fn both_brackets_vanishing_is_rejected() {
        // only reachable with a non-dominant weight, m13 = m23 - 1
        let h = HighestWeight { m13: -1, m23: 0, m33: 0.0 };
        assert!(classify(&h, &q(1.7)).is_err());
    }

    #[test]
    fn class_one_factor() {
        let rep = build_representation(&hw(1, 0, -2.0), &q(1.7), &Normalization::default()).unwrap();
        let f = factor_representation(&rep).unwrap();
        assert_eq!(f.dim(), 5);
        assert_eq!(f.subspace_dims(), [2, 3, 0, 0]);
        // E32 (m)_1 = 0 and E23 (m)_1 carries [l23 - l13]
        let e32 = f.matrix(Generator::E32);
        for c in 2..5 {
            assert_eq!(e32.column(c).amax(), 0.0);
        }
        let qq = q(1.7);
        let e23 = f.matrix(Generator::E23);
        // (m)_1 with m11 = 1 -> (m) with m11 = 1: ([l11 - l23]/[2l+1])^{1/2} [l23 - l13]
        let expect = (qq.bracket(2.0) / qq.bracket(2.0)).sqrt() * qq.bracket(-2.0);
        assert!((e23[(0, 2)] - expect).abs() < 1e-12);
        assert!(factor_representation(&f).is_err());
    }

    #[test]
    fn class_two_factor() {
        let qq = q(1.7);
        let a = Normalization::new(1.0, 0.6, 1.0).unwrap();
        let rep = build_representation(&hw(1, 0, 0.0), &qq, &a).unwrap();
        let f = factor_representation(&rep).unwrap();
        assert_eq!(f.dim(), 3);
        assert_eq!(f.subspace_dims(), [2, 0, 1, 0]);
        // E23 (m)_2 = a2 ([l13 - l11]/[2l])^{1/2} [2l+1] (m); here m11 = 0, l = 1/2
        let e23 = f.matrix(Generator::E23);
        let expect = 0.6 * (qq.bracket(1.0) / qq.bracket(1.0)).sqrt() * qq.bracket(2.0);
        assert!((e23[(1, 2)] - expect).abs() < 1e-12);
        let e32 = f.matrix(Generator::E32);
        assert_eq!(e32.column(2).amax(), 0.0);
    }

    #[test]
    fn trivial_factor() {
        let rep = build_representation(&hw(0, 0, 0.0), &q(0.5), &Normalization::default()).unwrap();
        assert_eq!(rep.classification.class, TypicalityClass::NontypicalClass2);
        let f = factor_representation(&rep).unwrap();
        assert_eq!(f.dim(), 1);
        for g in [Generator::E23, Generator::E32, Generator::E13, Generator::E31] {
            assert_eq!(f.matrix(g).amax(), 0.0);
        }
    }

    #[test]
    fn typical_has_no_factor() {
        let rep = build_representation(&hw(1, 0, 5.0), &q(0.5), &Normalization::default()).unwrap();
        assert!(matches!(factor_representation(&rep), Err(Error::Domain(_))));
    }
}
