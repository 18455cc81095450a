//! A finite-dimensional graded module given by one dense matrix per generator.
//!
//! Every basis built in this crate diagonalizes the Cartan generators, so the
//! Cartan elements `H1 = E11 - E22`, `H2 = E22 + E33`, their q-exponentials and
//! their brackets are all read off the diagonals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Generator, Parity};
use crate::linalg::{self, Matrix};
use crate::qarith::DeformationParameter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// Quasi-GZ basis adapted to `W = V0 + V1 + V2 + V3`.
    Reduced,
    /// `|theta1, theta2; (m)>` basis.
    Induced,
    /// Reduced basis of a factor module `W / I`.
    Factor,
    /// Product basis of a tensor product.
    Tensor,
    /// Module of the even subalgebra only.
    Even,
}

/// Cartan element index for `H1` or `H2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cartan {
    H1,
    H2,
}

#[derive(Debug, Clone)]
pub struct Module {
    q: DeformationParameter,
    kind: BasisKind,
    parity: Vec<Parity>,
    labels: Vec<String>,
    matrices: BTreeMap<Generator, Matrix>,
}

impl Module {
    pub fn new(
        q: DeformationParameter,
        kind: BasisKind,
        parity: Vec<Parity>,
        labels: Vec<String>,
    ) -> Self {
        assert_eq!(parity.len(), labels.len());
        Self {
            q,
            kind,
            parity,
            labels,
            matrices: BTreeMap::new(),
        }
    }

    /// The one-dimensional even module on which every generator acts as the
    /// counit does (as zero).
    pub fn trivial(q: DeformationParameter) -> Self {
        let mut m = Self::new(q, BasisKind::Even, vec![Parity::Even], vec!["1".into()]);
        for g in Generator::ALL {
            m.insert(g, Matrix::zeros(1, 1));
        }
        m
    }

    pub fn q(&self) -> DeformationParameter {
        self.q
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn insert(&mut self, g: Generator, m: Matrix) {
        assert_eq!(m.shape(), (self.dim(), self.dim()), "{g} has wrong shape");
        self.matrices.insert(g, m);
    }

    pub fn matrix(&self, g: Generator) -> Option<&Matrix> {
        self.matrices.get(&g)
    }

    pub fn require(&self, g: Generator) -> Result<&Matrix> {
        self.matrix(g)
            .ok_or_else(|| Error::Domain(format!("module carries no matrix for {g}")))
    }

    pub fn matrix_mut(&mut self, g: Generator) -> Option<&mut Matrix> {
        self.matrices.get_mut(&g)
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.matrices.keys().copied()
    }

    pub fn has_odd_part(&self) -> bool {
        [Generator::E23, Generator::E32]
            .iter()
            .all(|g| self.matrices.contains_key(g))
    }

    fn cartan_diag(&self, g: Generator) -> Vec<f64> {
        match self.matrix(g) {
            Some(m) => m.diagonal().iter().copied().collect(),
            None => vec![0.0; self.dim()],
        }
    }

    /// `(E11, E22, E33)` eigenvalues of every basis vector.
    pub fn weights(&self) -> Vec<[f64; 3]> {
        let a = self.cartan_diag(Generator::E11);
        let b = self.cartan_diag(Generator::E22);
        let c = self.cartan_diag(Generator::E33);
        (0..self.dim()).map(|i| [a[i], b[i], c[i]]).collect()
    }

    /// Eigenvalues of `H1` or `H2` on the basis.
    pub fn cartan_eigenvalues(&self, h: Cartan) -> Vec<f64> {
        let e11 = self.cartan_diag(Generator::E11);
        let e22 = self.cartan_diag(Generator::E22);
        let e33 = self.cartan_diag(Generator::E33);
        (0..self.dim())
            .map(|i| match h {
                Cartan::H1 => e11[i] - e22[i],
                Cartan::H2 => e22[i] + e33[i],
            })
            .collect()
    }

    /// `H` as a matrix.
    pub fn cartan(&self, h: Cartan) -> Matrix {
        linalg::diag(&self.cartan_eigenvalues(h))
    }

    /// `q^(power * H + shift)`.
    pub fn q_exp(&self, h: Cartan, power: f64, shift: f64) -> Matrix {
        let d: Vec<f64> = self
            .cartan_eigenvalues(h)
            .into_iter()
            .map(|x| self.q.pow(power * x + shift))
            .collect();
        linalg::diag(&d)
    }

    /// `[H]`.
    pub fn q_bracket(&self, h: Cartan) -> Matrix {
        let d: Vec<f64> = self
            .cartan_eigenvalues(h)
            .into_iter()
            .map(|x| self.q.bracket(x))
            .collect();
        linalg::diag(&d)
    }

    /// Diagonal grading operator `(-1)^deg`.
    pub fn grading(&self) -> Matrix {
        let d: Vec<f64> = self
            .parity
            .iter()
            .map(|p| if p.is_odd() { -1.0 } else { 1.0 })
            .collect();
        linalg::diag(&d)
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.dim(), self.dim())
    }

    /// Adds `E13 = [E12, E23]_{q^-1}` and `E31 = -[E21, E32]_{q^-1}` computed
    /// from the Chevalley matrices.
    pub fn derive_composites(&mut self) -> Result<()> {
        let (e13, e31) = self.composites_from_definition()?;
        self.insert(Generator::E13, e13);
        self.insert(Generator::E31, e31);
        Ok(())
    }

    pub fn composites_from_definition(&self) -> Result<(Matrix, Matrix)> {
        let qi = 1.0 / self.q.pow(1.0);
        let e12 = self.require(Generator::E12)?;
        let e21 = self.require(Generator::E21)?;
        let e23 = self.require(Generator::E23)?;
        let e32 = self.require(Generator::E32)?;
        let e13 = e12 * e23 - (e23 * e12) * qi;
        let e31 = -(e21 * e32 - (e32 * e21) * qi);
        Ok((e13, e31))
    }

    /// Entrywise size of the terms that produce the matrix of `g`: `|M|` for
    /// Chevalley generators, the absolute products of the defining
    /// combination for `E13` and `E31`.
    pub fn magnitude(&self, g: Generator) -> Result<Matrix> {
        let own = self.require(g)?.abs();
        let pair = match g {
            Generator::E13 => (Generator::E12, Generator::E23),
            Generator::E31 => (Generator::E21, Generator::E32),
            _ => return Ok(own),
        };
        let (Some(x), Some(y)) = (self.matrix(pair.0), self.matrix(pair.1)) else {
            return Ok(own);
        };
        let (x, y) = (x.abs(), y.abs());
        let qi = 1.0 / self.q.pow(1.0);
        Ok((&x * &y + (&y * &x) * qi).zip_map(&own, f64::max))
    }

    /// Submodule or factor matrices obtained by keeping only `keep` rows and
    /// columns, in the given order.
    pub fn restrict(&self, keep: &[usize], kind: BasisKind) -> Module {
        let mut out = Module::new(
            self.q,
            kind,
            keep.iter().map(|&i| self.parity[i]).collect(),
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
        );
        for (g, m) in &self.matrices {
            let r = Matrix::from_fn(keep.len(), keep.len(), |a, b| m[(keep[a], keep[b])]);
            out.insert(*g, r);
        }
        out
    }

    pub fn check_finite(&self) -> Result<()> {
        for (g, m) in &self.matrices {
            if !linalg::is_finite(m) {
                return Err(Error::Numeric(format!("non-finite entry in {g}")));
            }
        }
        Ok(())
    }
}
