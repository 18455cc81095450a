//! Gel'fand-Zetlin patterns of U_q[gl(2) + gl(1)] and the action of the even
//! generators on them.
//!
//! A pattern `[m12 m22; m11 | m31]` has integer gl(2) labels with
//! `m22 <= m11 <= m12` and a real gl(1) label `m31 = m32`. Patterns of one
//! module are ordered by `m11` descending, so the highest-weight vector sits
//! at index 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Generator, Parity};
use crate::linalg::{Matrix, Vector};
use crate::module::{BasisKind, Module};
use crate::qarith::DeformationParameter;

/// Highest weight `[m12, m22, m32]` of an even-subalgebra module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvenHighestWeight {
    pub m12: i64,
    pub m22: i64,
    pub m32: f64,
}

impl EvenHighestWeight {
    pub fn new(m12: i64, m22: i64, m32: f64) -> Result<Self> {
        let hw = Self { m12, m22, m32 };
        hw.validate()?;
        Ok(hw)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m12 < self.m22 {
            return Err(Error::Domain(format!(
                "weight [{}, {}, {}] is not dominant: m12 - m22 must be a nonnegative integer",
                self.m12, self.m22, self.m32
            )));
        }
        if !self.m32.is_finite() {
            return Err(Error::Domain("gl(1) label must be finite".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        (self.m12 - self.m22 + 1).max(0) as usize
    }

    pub fn pattern(&self, m11: i64) -> GzPattern {
        GzPattern {
            m12: self.m12,
            m22: self.m22,
            m11,
            m31: self.m32,
        }
    }
}

/// A Gel'fand-Zetlin basis vector of the even subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GzPattern {
    pub m12: i64,
    pub m22: i64,
    pub m11: i64,
    pub m31: f64,
}

impl GzPattern {
    pub fn is_valid(&self) -> bool {
        self.m22 <= self.m11 && self.m11 <= self.m12
    }

    pub fn signature(&self) -> EvenHighestWeight {
        EvenHighestWeight {
            m12: self.m12,
            m22: self.m22,
            m32: self.m31,
        }
    }

    pub fn shifted(&self, by: i64) -> GzPattern {
        GzPattern {
            m11: self.m11 + by,
            ..*self
        }
    }

    pub fn l_shift(&self) -> LShift {
        LShift::of(self)
    }

    /// Eigenvalues of `(E11, E22, E33)`.
    pub fn weight(&self) -> [f64; 3] {
        let l = self.l_shift();
        [l.l11 + 1.0, l.l12 + l.l22 - l.l11 + 2.0, l.l31 + 1.0]
    }

    /// Action of an even generator: the image as a list of
    /// `(pattern, coefficient)`, with out-of-range patterns dropped.
    pub fn even_action(
        &self,
        g: Generator,
        q: &DeformationParameter,
    ) -> Result<Vec<(GzPattern, f64)>> {
        let l = self.l_shift();
        let w = self.weight();
        let image = match g {
            Generator::E11 => vec![(*self, w[0])],
            Generator::E22 => vec![(*self, w[1])],
            Generator::E33 => vec![(*self, w[2])],
            Generator::E12 => vec![(
                self.shifted(1),
                sqrt_product(q.bracket(l.l12 - l.l11), q.bracket(l.l11 - l.l22)),
            )],
            Generator::E21 => vec![(
                self.shifted(-1),
                sqrt_product(
                    q.bracket(l.l12 - l.l11 + 1.0),
                    q.bracket(l.l11 - l.l22 - 1.0),
                ),
            )],
            other => {
                return Err(Error::Domain(format!(
                    "{other} is not a generator of the even subalgebra"
                )))
            }
        };
        Ok(image
            .into_iter()
            .filter(|(p, c)| p.is_valid() && *c != 0.0)
            .collect())
    }
}

impl fmt::Display for GzPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} | {}]", self.m12, self.m22, self.m11, self.m31)
    }
}

/// `sqrt(a * b)` for products of brackets of nonnegative integers, clamping the
/// rounding-level negatives that appear when one factor vanishes.
pub(crate) fn sqrt_product(a: f64, b: f64) -> f64 {
    (a * b).max(0.0).sqrt()
}

/// Shifted labels `l_ij = m_ij - (i - 2 delta_{i3})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LShift {
    pub l12: f64,
    pub l22: f64,
    pub l11: f64,
    pub l31: f64,
    pub l32: f64,
}

impl LShift {
    pub fn of(p: &GzPattern) -> Self {
        Self {
            l12: (p.m12 - 1) as f64,
            l22: (p.m22 - 2) as f64,
            l11: (p.m11 - 1) as f64,
            l31: p.m31 - 1.0,
            l32: p.m31 - 1.0,
        }
    }
}

pub fn enumerate_patterns(hw: &EvenHighestWeight) -> Result<Vec<GzPattern>> {
    hw.validate()?;
    Ok((hw.m22..=hw.m12).rev().map(|m11| hw.pattern(m11)).collect())
}

/// Matrix of an even generator over [`enumerate_patterns`]; entry `(r, c)` is
/// the coefficient of pattern `r` in `g` applied to pattern `c`.
pub fn even_generator_matrix(
    g: Generator,
    hw: &EvenHighestWeight,
    q: &DeformationParameter,
) -> Result<Matrix> {
    let patterns = enumerate_patterns(hw)?;
    let mut m = Matrix::zeros(patterns.len(), patterns.len());
    for (c, p) in patterns.iter().enumerate() {
        for (img, coeff) in p.even_action(g, q)? {
            let r = index_of(hw, img.m11);
            m[(r, c)] += coeff;
        }
    }
    Ok(m)
}

fn index_of(hw: &EvenHighestWeight, m11: i64) -> usize {
    (hw.m12 - m11) as usize
}

/// The even module `V([m12, m22, m32])` with all five even generators.
pub fn even_module(hw: &EvenHighestWeight, q: &DeformationParameter) -> Result<Module> {
    let patterns = enumerate_patterns(hw)?;
    let mut module = Module::new(
        *q,
        BasisKind::Even,
        vec![Parity::Even; patterns.len()],
        patterns.iter().map(|p| p.to_string()).collect(),
    );
    for g in Generator::EVEN {
        module.insert(g, even_generator_matrix(g, hw, q)?);
    }
    Ok(module)
}

/// Outcome of rebuilding each basis vector from the highest-weight vector by
/// normalized powers of `E21`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoweringReport {
    pub max_deviation: f64,
    pub per_pattern: Vec<(i64, f64)>,
}

impl LoweringReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation < tol
    }
}

/// Applies `([m11-m22]! / ([m12-m22]! [m12-m11]!))^(1/2) E21^(m12-m11)` to the
/// highest-weight vector and compares with the unit vector of each pattern.
pub fn lowering_chain(hw: &EvenHighestWeight, q: &DeformationParameter) -> Result<LoweringReport> {
    let patterns = enumerate_patterns(hw)?;
    let e21 = even_generator_matrix(Generator::E21, hw, q)?;
    let n = patterns.len();
    let mut v = Vector::zeros(n);
    v[0] = 1.0;
    let mut per_pattern = Vec::with_capacity(n);
    let mut max_deviation: f64 = 0.0;
    for (steps, p) in patterns.iter().enumerate() {
        if steps > 0 {
            v = &e21 * v;
        }
        let norm = (q.factorial(p.m11 - hw.m22)?
            / (q.factorial(hw.m12 - hw.m22)? * q.factorial(hw.m12 - p.m11)?))
        .sqrt();
        let mut target = Vector::zeros(n);
        target[steps] = 1.0;
        let dev = (&v * norm - target).amax();
        max_deviation = max_deviation.max(dev);
        per_pattern.push((p.m11, dev));
    }
    Ok(LoweringReport {
        max_deviation,
        per_pattern,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: f64) -> DeformationParameter {
        DeformationParameter::generic(v).unwrap()
    }

    fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
        a * b - b * a
    }

    #[test]
    fn pattern_counts() {
        let hw = EvenHighestWeight::new(1, 0, 0.0).unwrap();
        let ps = enumerate_patterns(&hw).unwrap();
        assert_eq!(ps.iter().map(|p| p.m11).collect::<Vec<_>>(), vec![1, 0]);
        assert_eq!(enumerate_patterns(&EvenHighestWeight::new(5, 5, 0.0).unwrap()).unwrap().len(), 1);
        assert_eq!(enumerate_patterns(&EvenHighestWeight::new(3, 0, 2.0).unwrap()).unwrap().len(), 4);
        assert!(EvenHighestWeight::new(0, 1, 0.0).is_err());
        let bad = EvenHighestWeight { m12: 0, m22: 2, m32: 0.0 };
        assert!(matches!(enumerate_patterns(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn cartan_and_raising_examples() {
        let hw = EvenHighestWeight::new(1, 0, 0.0).unwrap();
        let e11 = even_generator_matrix(Generator::E11, &hw, &q(1.7)).unwrap();
        assert_eq!(e11, Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        for qv in [0.5, 1.7, 3.0] {
            let e12 = even_generator_matrix(Generator::E12, &hw, &q(qv)).unwrap();
            // highest-weight column is annihilated
            assert_eq!(e12.column(0).amax(), 0.0);
            assert!((e12[(0, 1)] - 1.0).abs() < 1e-14);
        }
        assert!(even_generator_matrix(Generator::E23, &hw, &q(1.7)).is_err());
    }

    #[test]
    fn highest_weight_eigenvalues() {
        let hw = EvenHighestWeight::new(4, -1, 2.5).unwrap();
        let m = even_module(&hw, &q(1.3)).unwrap();
        assert_eq!(m.weights()[0], [4.0, -1.0, 2.5]);
    }

    #[test]
    fn lowering_examples() {
        for (m12, m22) in [(1, 0), (2, 0), (0, 0), (5, -2)] {
            let hw = EvenHighestWeight::new(m12, m22, 0.0).unwrap();
            let r = lowering_chain(&hw, &q(1.7)).unwrap();
            assert!(r.passes(1e-12), "{hw:?}: {}", r.max_deviation);
        }
        // [2,0,0]: one lowering of the top vector is a multiple of the middle pattern,
        // with the factor read off the E21 matrix column
        let hw = EvenHighestWeight::new(2, 0, 0.0).unwrap();
        let qq = q(0.5);
        let e21 = even_generator_matrix(Generator::E21, &hw, &qq).unwrap();
        let norm = (qq.factorial(1).unwrap() / (qq.factorial(2).unwrap() * qq.factorial(1).unwrap())).sqrt();
        assert!((e21[(1, 0)] * norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gl2_relations_small_grid() {
        for d in 0..=10 {
            for qv in [0.5, 1.7] {
                let hw = EvenHighestWeight::new(d - 3, -3, 0.25).unwrap();
                let qq = q(qv);
                let m = even_module(&hw, &qq).unwrap();
                let e11 = m.matrix(Generator::E11).unwrap();
                let e22 = m.matrix(Generator::E22).unwrap();
                let e33 = m.matrix(Generator::E33).unwrap();
                let e12 = m.matrix(Generator::E12).unwrap();
                let e21 = m.matrix(Generator::E21).unwrap();
                let h1 = m.q_bracket(crate::module::Cartan::H1);
                assert!((commutator(e12, e21) - h1).amax() < 1e-9);
                assert!(commutator(e11, e22).amax() == 0.0);
                assert!(commutator(e22, e33).amax() == 0.0);
                assert!((commutator(e11, e12) - e12).amax() < 1e-12);
                assert!((commutator(e22, e12) + e12).amax() < 1e-12);
                assert!((commutator(e11, e21) + e21).amax() < 1e-12);
                assert!((commutator(e22, e21) - e21).amax() < 1e-12);
                assert!(commutator(e33, e12).amax() == 0.0);
                assert_eq!(e21, &e12.transpose());
            }
        }
    }

    proptest! {
        #[test]
        fn lowering_transposes_raising(m22 in -5i64..5, d in 0i64..9, qv in 0.2f64..3.0, m32 in -4.0f64..4.0) {
            prop_assume!((qv - 1.0).abs() > 1e-3);
            let hw = EvenHighestWeight::new(m22 + d, m22, m32).unwrap();
            let qq = q(qv);
            let e12 = even_generator_matrix(Generator::E12, &hw, &qq).unwrap();
            let e21 = even_generator_matrix(Generator::E21, &hw, &qq).unwrap();
            prop_assert!((e21 - e12.transpose()).amax() <= 1e-12 * (1.0 + e12.amax()));
            prop_assert_eq!(enumerate_patterns(&hw).unwrap().len() as i64, d + 1);
        }
    }
}
