//! Dense-matrix helpers: Kronecker products, relation residuals with a
//! magnitude-aware deviation measure, and tolerance-banded null spaces.

use nalgebra::{DMatrix, DVector};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Entries whose term magnitude exceeds this are compared relatively.
pub const LARGE_ENTRY: f64 = 1e3;

/// Singular values in `(tol, RANK_BAND * tol)` cannot be decided either way.
pub const RANK_BAND: f64 = 100.0;

pub fn diag(values: &[f64]) -> Matrix {
    Matrix::from_diagonal(&Vector::from_column_slice(values))
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// Largest deviation found in a residual, with its location.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Deviation {
    pub value: f64,
    pub row: usize,
    pub col: usize,
}

impl Deviation {
    pub fn max(self, other: Deviation) -> Deviation {
        if other.value > self.value || other.value.is_nan() {
            other
        } else {
            self
        }
    }
}

/// One summand `coeff * F1 * F2 * ... * Fk` of a matrix identity written as
/// `sum of terms = 0`.
pub struct Term<'a> {
    pub coeff: f64,
    pub factors: Vec<&'a Matrix>,
}

impl<'a> Term<'a> {
    pub fn new(coeff: f64, factors: Vec<&'a Matrix>) -> Self {
        Self { coeff, factors }
    }

    pub fn plus(factors: Vec<&'a Matrix>) -> Self {
        Self::new(1.0, factors)
    }

    pub fn minus(factors: Vec<&'a Matrix>) -> Self {
        Self::new(-1.0, factors)
    }
}

/// Evaluates `sum of terms` and measures how far it is from zero.
///
/// Each entry is compared absolutely while the magnitude of the summands that
/// produced it (the same products with every factor replaced by its entrywise
/// absolute value) stays below [`LARGE_ENTRY`], relatively above that.
pub fn residual(terms: &[Term<'_>]) -> Deviation {
    let (rows, cols) = match terms.first() {
        Some(t) => shape(t),
        None => return Deviation::default(),
    };
    let mut value = Matrix::zeros(rows, cols);
    let mut magnitude = Matrix::zeros(rows, cols);
    for term in terms {
        if term.coeff == 0.0 {
            continue;
        }
        let (p, a) = product(term);
        value += p * term.coeff;
        magnitude += a * term.coeff.abs();
    }
    worst_entry(&value, &magnitude)
}

/// Deviation between two matrices of equal shape.
pub fn difference(lhs: &Matrix, rhs: &Matrix) -> Deviation {
    residual(&[Term::plus(vec![lhs]), Term::minus(vec![rhs])])
}

fn shape(term: &Term<'_>) -> (usize, usize) {
    let first = term.factors.first().expect("term without factors");
    let last = term.factors.last().unwrap();
    (first.nrows(), last.ncols())
}

fn product(term: &Term<'_>) -> (Matrix, Matrix) {
    let mut it = term.factors.iter();
    let first = it.next().expect("term without factors");
    let mut p = (*first).clone();
    let mut a = first.abs();
    for f in it {
        p = &p * *f;
        a = &a * f.abs();
    }
    (p, a)
}

/// Worst entry of `value`, measured against `magnitude` as in [`residual`].
pub fn worst_entry(value: &Matrix, magnitude: &Matrix) -> Deviation {
    let mut worst = Deviation::default();
    for c in 0..value.ncols() {
        for r in 0..value.nrows() {
            let v = value[(r, c)].abs();
            let m = magnitude[(r, c)];
            let d = if m > LARGE_ENTRY { v / m } else { v };
            worst = worst.max(Deviation {
                value: d,
                row: r,
                col: c,
            });
        }
    }
    worst
}

/// Null space of a matrix together with a flag telling whether some singular
/// value fell inside the undecidable band.
#[derive(Debug, Clone)]
pub struct NullSpace {
    pub basis: Vec<Vector>,
    pub inconclusive: bool,
}

/// Null space of `a` by SVD. With `t = tol * max(1, s_max)`, a singular value
/// `s` counts as zero when `s <= t`; values in `(t, RANK_BAND * t)` are
/// counted as nonzero but flag the decision as inconclusive.
pub fn null_space(a: &Matrix, tol: f64) -> NullSpace {
    let n = a.ncols();
    if n == 0 {
        return NullSpace {
            basis: vec![],
            inconclusive: false,
        };
    }
    let padded;
    let a = if a.nrows() < n {
        padded = a.clone().resize_vertically(n, 0.0);
        &padded
    } else {
        a
    };
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let s_max = svd.singular_values.max();
    let t = tol * s_max.max(1.0);
    let mut basis = Vec::new();
    let mut inconclusive = false;
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= t {
            basis.push(v_t.row(i).transpose());
        } else if s < RANK_BAND * t {
            inconclusive = true;
        }
    }
    NullSpace {
        basis,
        inconclusive,
    }
}

/// True when every entry is finite.
pub fn is_finite(m: &Matrix) -> bool {
    m.iter().all(|x| x.is_finite())
}
