//! The reduced (quasi-GZ) basis of `W = V0 + V1 + V2 + V3` and the full
//! generator matrices in that basis.
//!
//! Each `V_k` is an irreducible even module with signature
//!
//! | k | signature                     | dimension |
//! |---|-------------------------------|-----------|
//! | 0 | `[m13,   m23,   m33]`         | `2l + 1`  |
//! | 1 | `[m13,   m23-1, m33+1]`       | `2l + 2`  |
//! | 2 | `[m13-1, m23,   m33+1]`       | `2l`      |
//! | 3 | `[m13-1, m23-1, m33+2]`       | `2l + 1`  |
//!
//! with `l = (m13 - m23) / 2`. Even generators act inside each `V_k`; the odd
//! generators `E23`, `E32`, `E13`, `E31` move between them with the closed-form
//! coefficients below. `V2` is empty when `l = 0`, and none of the coefficients
//! that carry `[2l]` in a denominator are ever evaluated in that case.

mod basis_change;
mod classify;
mod irreducible;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Generator, Parity};
use crate::gzrep::{sqrt_product, EvenHighestWeight, GzPattern};
use crate::linalg::Matrix;
use crate::module::{BasisKind, Module};
use crate::qarith::DeformationParameter;

pub use basis_change::{basis_change, BasisChange};
pub use classify::{classify, factor_representation, TypicalityClass, TypicalityReport};
pub use irreducible::{irreducibility_test, InvariantSubspace, IrreducibilityReport};

/// Signature `[m13, m23, m33]` of an induced module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighestWeight {
    pub m13: i64,
    pub m23: i64,
    pub m33: f64,
}

impl HighestWeight {
    pub fn new(m13: i64, m23: i64, m33: f64) -> Result<Self> {
        let hw = Self { m13, m23, m33 };
        hw.validate()?;
        Ok(hw)
    }

    pub fn validate(&self) -> Result<()> {
        self.even().validate()
    }

    /// The same labels read as an even highest weight (signature of `V0`).
    pub fn even(&self) -> EvenHighestWeight {
        EvenHighestWeight {
            m12: self.m13,
            m22: self.m23,
            m32: self.m33,
        }
    }

    /// `2l = m13 - m23`.
    pub fn two_l(&self) -> i64 {
        self.m13 - self.m23
    }

    /// Signature of `V_k`.
    pub fn subspace_signature(&self, k: usize) -> EvenHighestWeight {
        let (d1, d2, d3) = match k {
            0 => (0, 0, 0.0),
            1 => (0, -1, 1.0),
            2 => (-1, 0, 1.0),
            3 => (-1, -1, 2.0),
            _ => panic!("subspace index {k} out of range"),
        };
        EvenHighestWeight {
            m12: self.m13 + d1,
            m22: self.m23 + d2,
            m32: self.m33 + d3,
        }
    }

    /// `(2l+1, 2l+2, 2l, 2l+1)`.
    pub fn subspace_dims(&self) -> [usize; 4] {
        let t = self.two_l() as usize;
        [t + 1, t + 2, t, t + 1]
    }

    pub fn dim(&self) -> usize {
        self.subspace_dims().iter().sum()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.m13, self.m23, self.m33)
    }
}

/// The free constants `(a1, a2, a3)` fixing the scale of the highest-weight
/// vectors of `V1`, `V2`, `V3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Default for Normalization {
    fn default() -> Self {
        Self {
            a1: 1.0,
            a2: 1.0,
            a3: 1.0,
        }
    }
}

impl Normalization {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        for (name, a) in [("a1", a1), ("a2", a2), ("a3", a3)] {
            if a == 0.0 || !a.is_finite() {
                return Err(Error::Config(format!(
                    "normalization constant {name} must be finite and nonzero, got {a}"
                )));
            }
        }
        Ok(Self { a1, a2, a3 })
    }
}

/// A vector `(m)_k` of `V_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedBasisVector {
    pub k: usize,
    pub pattern: GzPattern,
}

impl ReducedBasisVector {
    pub fn parity(&self) -> Parity {
        Parity::from_bit((self.k == 1 || self.k == 2) as u8)
    }

    /// Three-row quasi-GZ pattern `[[m13 m23 m33] [m12 m22 m32] [m11 0 m31]]`.
    pub fn rows(&self, hw: &HighestWeight) -> [[f64; 3]; 3] {
        let p = &self.pattern;
        [
            [hw.m13 as f64, hw.m23 as f64, hw.m33],
            [p.m12 as f64, p.m22 as f64, p.m31],
            [p.m11 as f64, 0.0, p.m31],
        ]
    }

    pub fn label(&self, hw: &HighestWeight) -> String {
        let p = &self.pattern;
        format!(
            "k={} [{} {} {}; {} {} {}; {} 0 {}]",
            self.k, hw.m13, hw.m23, hw.m33, p.m12, p.m22, p.m31, p.m11, p.m31
        )
    }
}

/// Ordered by `k`, then `m11` descending.
pub fn enumerate_reduced_basis(hw: &HighestWeight) -> Result<Vec<ReducedBasisVector>> {
    hw.validate()?;
    let mut out = Vec::with_capacity(hw.dim());
    for k in 0..4 {
        let sig = hw.subspace_signature(k);
        for m11 in (sig.m22..=sig.m12).rev() {
            out.push(ReducedBasisVector {
                k,
                pattern: sig.pattern(m11),
            });
        }
    }
    Ok(out)
}

/// Position of `(k, m11)` in [`enumerate_reduced_basis`].
pub(crate) fn reduced_index(hw: &HighestWeight, k: usize, m11: i64) -> Option<usize> {
    let sig = hw.subspace_signature(k);
    if m11 < sig.m22 || m11 > sig.m12 {
        return None;
    }
    let dims = hw.subspace_dims();
    let offset: usize = dims[..k].iter().sum();
    Some(offset + (sig.m12 - m11) as usize)
}

/// A built module in the reduced basis with its metadata.
#[derive(Debug, Clone)]
pub struct Representation {
    pub weight: HighestWeight,
    pub q: DeformationParameter,
    pub normalization: Normalization,
    pub basis: Vec<ReducedBasisVector>,
    pub classification: TypicalityReport,
    /// Set when this is the factor module by the invariant subspace of that class.
    pub factor_of: Option<TypicalityClass>,
    pub module: Module,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, g: Generator) -> &Matrix {
        self.module
            .matrix(g)
            .expect("representations carry all nine generators")
    }

    /// Dimensions of the `V_k` present in this basis.
    pub fn subspace_dims(&self) -> [usize; 4] {
        let mut dims = [0; 4];
        for v in &self.basis {
            dims[v.k] += 1;
        }
        dims
    }

    /// Basis indices belonging to any of the listed subspaces.
    pub fn indices_of(&self, ks: &[usize]) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, v)| ks.contains(&v.k))
            .map(|(i, _)| i)
            .collect()
    }

    /// Subspace labels `k` touched by a set of basis indices.
    pub fn subspaces_of(&self, indices: &[usize]) -> Vec<usize> {
        let mut ks: Vec<usize> = indices.iter().map(|&i| self.basis[i].k).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn is_factor(&self) -> bool {
        self.factor_of.is_some()
    }
}

/// Coefficient table of one odd generator move `(m)_from -> (m')_to`.
struct OddCoefficients<'a> {
    hw: &'a HighestWeight,
    q: &'a DeformationParameter,
    a: &'a Normalization,
}

impl OddCoefficients<'_> {
    fn br(&self, x: f64) -> f64 {
        self.q.bracket(x)
    }

    fn qp(&self, x: f64) -> f64 {
        self.q.pow(x)
    }

    /// `([x] / [y])^(1/2)`
    fn ratio_root(&self, x: f64, y: f64) -> f64 {
        (self.br(x) / self.br(y)).max(0.0).sqrt()
    }

    /// Every `(target, source, coefficient)` for generator `g`, for a source
    /// vector `(k, m11)`. Coefficients are evaluated only when the target
    /// vector exists.
    fn images(&self, g: Generator, k: usize, m11: i64) -> Vec<((usize, i64), f64)> {
        let hw = self.hw;
        let a = self.a;
        let l13 = (hw.m13 - 1) as f64;
        let l23 = (hw.m23 - 2) as f64;
        let l33 = hw.m33 - 1.0;
        let l11 = (m11 - 1) as f64;
        let two_l = hw.two_l() as f64;
        let c13 = self.br(l13 + l33 + 3.0);
        let c23 = self.br(l23 + l33 + 3.0);
        let q = self.qp(1.0);
        let exists = |k: usize, m: i64| reduced_index(hw, k, m).is_some();

        let mut out: Vec<((usize, i64), f64)> = Vec::new();
        let mut push = |target: (usize, i64), f: &dyn Fn() -> f64| {
            if exists(target.0, target.1) {
                out.push((target, f()));
            }
        };
        match (g, k) {
            (Generator::E23, 1) => push((0, m11), &|| {
                a.a1 * self.ratio_root(l11 - l23, two_l + 1.0) * c23
            }),
            (Generator::E23, 2) => push((0, m11), &|| {
                a.a2 * self.ratio_root(l13 - l11, two_l) * c13
            }),
            (Generator::E23, 3) => {
                push((1, m11), &|| {
                    a.a3 / (a.a1 * q) * self.ratio_root(l13 - l11, two_l + 1.0) * c13
                });
                push((2, m11), &|| {
                    -a.a3 / (a.a2 * q)
                        * sqrt_product(self.br(l11 - l23), self.br(two_l))
                        * c23
                        / self.br(two_l + 1.0)
                });
            }
            (Generator::E32, 0) => {
                push((1, m11), &|| self.ratio_root(l11 - l23, two_l + 1.0) / a.a1);
                push((2, m11), &|| {
                    sqrt_product(self.br(l13 - l11), self.br(two_l))
                        / (a.a2 * self.br(two_l + 1.0))
                });
            }
            (Generator::E32, 1) => push((3, m11), &|| {
                a.a1 * q / a.a3 * self.ratio_root(l13 - l11, two_l + 1.0)
            }),
            (Generator::E32, 2) => push((3, m11), &|| {
                -a.a2 * q / a.a3 * self.ratio_root(l11 - l23, two_l)
            }),
            (Generator::E31, 0) => {
                push((1, m11 - 1), &|| {
                    -self.qp(l11 - l23 - 1.0) / a.a1
                        * self.ratio_root(l13 - l11 + 1.0, two_l + 1.0)
                });
                push((2, m11 - 1), &|| {
                    self.qp(l11 - l13 - 1.0) / a.a2
                        * sqrt_product(self.br(l11 - l23 - 1.0), self.br(two_l))
                        / self.br(two_l + 1.0)
                });
            }
            (Generator::E31, 1) => push((3, m11 - 1), &|| {
                a.a1 / a.a3 * self.qp(l11 - l13) * self.ratio_root(l11 - l23, two_l + 1.0)
            }),
            (Generator::E31, 2) => push((3, m11 - 1), &|| {
                a.a2 / a.a3 * self.qp(l11 - l23) * self.ratio_root(l13 - l11, two_l)
            }),
            (Generator::E13, 1) => push((0, m11 + 1), &|| {
                -a.a1 * self.qp(l23 - l11 - 1.0) * self.ratio_root(l13 - l11, two_l + 1.0) * c23
            }),
            (Generator::E13, 2) => push((0, m11 + 1), &|| {
                a.a2 * self.qp(l13 - l11 - 1.0) * self.ratio_root(l11 - l23, two_l) * c13
            }),
            (Generator::E13, 3) => {
                push((1, m11 + 1), &|| {
                    a.a3 * self.qp(l13 - l11 - 2.0) / a.a1
                        * self.ratio_root(l11 - l23 + 1.0, two_l + 1.0)
                        * c13
                });
                push((2, m11 + 1), &|| {
                    a.a3 * self.qp(l23 - l11 - 2.0) / a.a2
                        * sqrt_product(self.br(l13 - l11 - 1.0), self.br(two_l))
                        * c23
                        / self.br(two_l + 1.0)
                });
            }
            _ => {}
        }
        out
    }
}

/// All nine generator matrices in the reduced basis.
pub fn build_representation(
    hw: &HighestWeight,
    q: &DeformationParameter,
    normalization: &Normalization,
) -> Result<Representation> {
    let basis = enumerate_reduced_basis(hw)?;
    let classification = classify(hw, q)?;
    let n = basis.len();
    let mut module = Module::new(
        *q,
        BasisKind::Reduced,
        basis.iter().map(|v| v.parity()).collect(),
        basis.iter().map(|v| v.label(hw)).collect(),
    );

    for g in Generator::EVEN {
        let mut m = Matrix::zeros(n, n);
        for (c, v) in basis.iter().enumerate() {
            for (img, coeff) in v.pattern.even_action(g, q)? {
                let r = reduced_index(hw, v.k, img.m11)
                    .ok_or_else(|| Error::Consistency(format!("{g} left V{}", v.k)))?;
                m[(r, c)] += coeff;
            }
        }
        module.insert(g, m);
    }

    let table = OddCoefficients {
        hw,
        q,
        a: normalization,
    };
    for g in [Generator::E23, Generator::E32, Generator::E13, Generator::E31] {
        let mut m = Matrix::zeros(n, n);
        for (c, v) in basis.iter().enumerate() {
            for ((k, m11), coeff) in table.images(g, v.k, v.pattern.m11) {
                let r = reduced_index(hw, k, m11).expect("target existence checked");
                m[(r, c)] += coeff;
            }
        }
        module.insert(g, m);
    }
    module
        .check_finite()
        .map_err(|e| Error::Numeric(format!("building {hw} at q = {}: {e}", q.value())))?;

    Ok(Representation {
        weight: *hw,
        q: *q,
        normalization: *normalization,
        basis,
        classification,
        factor_of: None,
        module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn q(v: f64) -> DeformationParameter {
        DeformationParameter::generic(v).unwrap()
    }

    fn hw(a: i64, b: i64, c: f64) -> HighestWeight {
        HighestWeight::new(a, b, c).unwrap()
    }

    fn anticommutator(a: &Matrix, b: &Matrix) -> Matrix {
        a * b + b * a
    }

    #[test]
    fn reduced_dimensions() {
        let dims = |h: HighestWeight| {
            let b = enumerate_reduced_basis(&h).unwrap();
            let mut d = [0; 4];
            for v in &b {
                d[v.k] += 1;
            }
            (d, b.len())
        };
        assert_eq!(dims(hw(2, 0, 5.0)), ([3, 4, 2, 3], 12));
        assert_eq!(dims(hw(0, 0, 1.5)), ([1, 2, 0, 1], 4));
        assert_eq!(dims(hw(1, 0, 0.0)).1, 8);
        assert!(HighestWeight::new(0, 1, 0.0).is_err());
    }

    #[test]
    fn ordering_and_rows() {
        let h = hw(1, 0, 0.0);
        let b = enumerate_reduced_basis(&h).unwrap();
        assert_eq!((b[0].k, b[0].pattern.m11), (0, 1));
        assert_eq!((b[2].k, b[2].pattern.m11), (1, 1));
        assert_eq!((b[4].k, b[4].pattern.m11), (1, -1));
        assert_eq!(b[7].rows(&h), [[1.0, 0.0, 0.0], [0.0, -1.0, 2.0], [-1.0, 0.0, 2.0]]);
        for (i, v) in b.iter().enumerate() {
            assert_eq!(reduced_index(&h, v.k, v.pattern.m11), Some(i));
        }
    }

    #[test]
    fn l_zero_example() {
        // [0,0,c]: E32 (m)_0 has only a V1 component with coefficient 1
        let r = build_representation(&hw(0, 0, 0.7), &q(1.7), &Normalization::default()).unwrap();
        let e32 = r.matrix(Generator::E32);
        assert_eq!(r.dim(), 4);
        assert!((e32[(1, 0)] - 1.0).abs() < 1e-14);
        assert_eq!(e32[(2, 0)], 0.0);
        assert_eq!(e32[(3, 0)], 0.0);
    }

    #[test]
    fn odd_anticommutator_on_small_weight() {
        let r = build_representation(&hw(1, 0, 0.0), &q(0.5), &Normalization::default()).unwrap();
        let lhs = anticommutator(r.matrix(Generator::E23), r.matrix(Generator::E32));
        let rhs = r.module.q_bracket(crate::module::Cartan::H2);
        assert!((lhs - rhs).amax() < 1e-9);
        let e23 = r.matrix(Generator::E23);
        assert_eq!((e23 * e23).amax(), 0.0);
    }

    #[test]
    fn selection_rules() {
        let h = hw(3, 1, 0.4);
        let r = build_representation(&h, &q(1.7), &Normalization::new(1.3, -0.7, 2.1).unwrap())
            .unwrap();
        let k = |i: usize| r.basis[i].k;
        let allowed = |g: Generator, from: usize, to: usize| -> bool {
            match g {
                Generator::E32 | Generator::E31 => {
                    matches!((from, to), (0, 1) | (0, 2) | (1, 3) | (2, 3))
                }
                Generator::E23 | Generator::E13 => {
                    matches!((from, to), (1, 0) | (2, 0) | (3, 1) | (3, 2))
                }
                _ => from == to,
            }
        };
        for g in Generator::ALL {
            let m = r.matrix(g);
            for c in 0..r.dim() {
                for row in 0..r.dim() {
                    if m[(row, c)] != 0.0 {
                        assert!(allowed(g, k(c), k(row)), "{g}: V{} -> V{}", k(c), k(row));
                    }
                }
            }
        }
    }

    #[test]
    fn representation_is_real_and_finite() {
        for m33 in [-5.0, 0.0, std::f64::consts::PI] {
            let r = build_representation(&hw(4, 0, m33), &q(std::f64::consts::E), &Normalization::default())
                .unwrap();
            r.module.check_finite().unwrap();
        }
    }
}
