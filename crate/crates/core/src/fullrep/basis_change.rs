//! Change of basis between the reduced basis `(m)_k` and the induced basis
//! `|theta1, theta2; (m)>`.

use crate::error::{Error, Result};
use crate::gzrep::sqrt_product;
use crate::induced::{enumerate_induced_basis, ThetaVector};
use crate::linalg::{difference, worst_entry, Deviation, Matrix};
use crate::qarith::DeformationParameter;

use super::{enumerate_reduced_basis, reduced_index, HighestWeight, Normalization};

#[derive(Debug, Clone)]
pub struct BasisChange {
    /// Column `j` holds the induced coordinates of reduced vector `j`.
    pub reduced_to_induced: Matrix,
    /// Column `j` holds the reduced coordinates of induced vector `j`.
    pub induced_to_reduced: Matrix,
}

impl BasisChange {
    /// Worst deviation of either product from the identity.
    pub fn inversion_deviation(&self) -> Deviation {
        let n = self.reduced_to_induced.nrows();
        let id = Matrix::identity(n, n);
        let a = &self.induced_to_reduced * &self.reduced_to_induced;
        let b = &self.reduced_to_induced * &self.induced_to_reduced;
        difference(&a, &id).max(difference(&b, &id))
    }

    /// Conjugates an induced-basis operator into the reduced basis.
    pub fn to_reduced(&self, induced: &Matrix) -> Matrix {
        &self.induced_to_reduced * induced * &self.reduced_to_induced
    }

    /// Compares `reduced` with the conjugate of `induced`, restricted to the
    /// reduced basis positions `keep`. Entries are judged against the
    /// magnitude of the triple product, as for any other matrix identity.
    /// `induced_size` and `reduced_size` are the entrywise magnitudes of the
    /// terms that produced each side (see `Module::magnitude`).
    pub fn route_deviation(
        &self,
        induced: &Matrix,
        induced_size: &Matrix,
        reduced: &Matrix,
        reduced_size: &Matrix,
        keep: &[usize],
    ) -> Deviation {
        let conj = self.to_reduced(induced);
        let bound = self.induced_to_reduced.abs() * induced_size * self.reduced_to_induced.abs();
        let n = keep.len();
        let value = Matrix::from_fn(n, n, |r, c| reduced[(r, c)] - conj[(keep[r], keep[c])]);
        let magnitude =
            Matrix::from_fn(n, n, |r, c| reduced_size[(r, c)] + bound[(keep[r], keep[c])]);
        worst_entry(&value, &magnitude)
    }
}

fn induced_index(hw: &HighestWeight, theta: ThetaVector, m11: i64) -> Option<usize> {
    if m11 < hw.m23 || m11 > hw.m13 {
        return None;
    }
    let dim_v = (hw.m13 - hw.m23 + 1) as usize;
    Some(theta.block() * dim_v + (hw.m13 - m11) as usize)
}

pub fn basis_change(
    hw: &HighestWeight,
    q: &DeformationParameter,
    a: &Normalization,
) -> Result<BasisChange> {
    let reduced = enumerate_reduced_basis(hw)?;
    let induced = enumerate_induced_basis(hw)?;
    if reduced.len() != induced.len() {
        return Err(Error::Consistency(format!(
            "reduced ({}) and induced ({}) dimensions differ",
            reduced.len(),
            induced.len()
        )));
    }
    let n = reduced.len();
    let br = |x: f64| q.bracket(x);
    let root = |x: f64, y: f64| (br(x) / br(y)).max(0.0).sqrt();
    let l13 = (hw.m13 - 1) as f64;
    let l23 = (hw.m23 - 2) as f64;
    let two_l = hw.two_l() as f64;
    let t00 = ThetaVector::new(0, 0);
    let t01 = ThetaVector::new(0, 1);
    let t10 = ThetaVector::new(1, 0);
    let t11 = ThetaVector::new(1, 1);

    let mut forward = Matrix::zeros(n, n);
    for (c, v) in reduced.iter().enumerate() {
        let m11 = v.pattern.m11;
        let l11 = (m11 - 1) as f64;
        let mut put = |theta: ThetaVector, m: i64, f: &dyn Fn() -> f64| {
            if let Some(r) = induced_index(hw, theta, m) {
                forward[(r, c)] += f();
            }
        };
        match v.k {
            0 => put(t00, m11, &|| 1.0),
            1 => {
                put(t10, m11 + 1, &|| -a.a1 * root(l13 - l11, two_l + 1.0));
                put(t01, m11, &|| a.a1 * q.pow(l11 - l13) * root(l11 - l23, two_l + 1.0));
            }
            2 => {
                put(t10, m11 + 1, &|| a.a2 * root(l11 - l23, two_l));
                put(t01, m11, &|| a.a2 * q.pow(l11 - l23) * root(l13 - l11, two_l));
            }
            _ => put(t11, m11 + 1, &|| a.a3),
        }
    }

    let mut backward = Matrix::zeros(n, n);
    for (c, v) in induced.iter().enumerate() {
        let m11 = v.pattern.m11;
        let l11 = (m11 - 1) as f64;
        let mut put = |k: usize, m: i64, f: &dyn Fn() -> f64| {
            if let Some(r) = reduced_index(hw, k, m) {
                backward[(r, c)] += f();
            }
        };
        match (v.theta.theta1, v.theta.theta2) {
            (0, 0) => put(0, m11, &|| 1.0),
            (1, 0) => {
                put(1, m11 - 1, &|| {
                    -q.pow(l11 - l23 - 1.0) / a.a1 * root(l13 - l11 + 1.0, two_l + 1.0)
                });
                put(2, m11 - 1, &|| {
                    q.pow(l11 - l13 - 1.0) / a.a2 * sqrt_product(br(l11 - l23 - 1.0), br(two_l))
                        / br(two_l + 1.0)
                });
            }
            (0, 1) => {
                put(1, m11, &|| root(l11 - l23, two_l + 1.0) / a.a1);
                put(2, m11, &|| {
                    sqrt_product(br(l13 - l11), br(two_l)) / (a.a2 * br(two_l + 1.0))
                });
            }
            _ => put(3, m11 - 1, &|| 1.0 / a.a3),
        }
    }

    Ok(BasisChange {
        reduced_to_induced: forward,
        induced_to_reduced: backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> DeformationParameter {
        DeformationParameter::generic(v).unwrap()
    }

    #[test]
    fn v0_and_v3_columns() {
        let hw = HighestWeight::new(1, 0, 0.0).unwrap();
        let bc = basis_change(&hw, &q(1.7), &Normalization::default()).unwrap();
        let f = &bc.reduced_to_induced;
        // (m)_0 = |0,0;(m)>
        assert_eq!(f[(0, 0)], 1.0);
        assert_eq!(f[(1, 1)], 1.0);
        // (m)_3 with m11 = 0 is |1,1;(m)^{+11}>, the m11 = 1 vector of the (1,1) block
        assert_eq!(f.column(6).iter().filter(|x| **x != 0.0).count(), 1);
        assert_eq!(f[(6, 6)], 1.0);
        assert_eq!(f[(7, 7)], 1.0);
    }

    #[test]
    fn mutual_inverses() {
        for (hw, qv) in [((1, 0, 0.0), 1.7), ((0, 0, 2.0), 0.5), ((4, 1, -0.3), 2.2)] {
            let hw = HighestWeight::new(hw.0, hw.1, hw.2).unwrap();
            let a = Normalization::new(1.3, -0.7, 2.1).unwrap();
            let bc = basis_change(&hw, &q(qv), &a).unwrap();
            assert!(bc.inversion_deviation().value < 1e-9);
        }
    }

    #[test]
    fn block_structure() {
        let hw = HighestWeight::new(3, 0, 1.0).unwrap();
        let bc = basis_change(&hw, &q(1.7), &Normalization::default()).unwrap();
        let reduced = enumerate_reduced_basis(&hw).unwrap();
        let induced = enumerate_induced_basis(&hw).unwrap();
        for (c, v) in reduced.iter().enumerate() {
            for (r, w) in induced.iter().enumerate() {
                if bc.reduced_to_induced[(r, c)] != 0.0 {
                    let ok = match v.k {
                        0 => w.theta == ThetaVector::new(0, 0),
                        3 => w.theta == ThetaVector::new(1, 1),
                        _ => w.theta.theta1 + w.theta.theta2 == 1,
                    };
                    assert!(ok, "V{} couples to {}", v.k, w.theta);
                }
            }
        }
    }
}
