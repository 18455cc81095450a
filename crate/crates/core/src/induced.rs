//! The induced module `W = T (x) V` in the basis
//! `|theta1, theta2; (m)> = (E31)^theta1 (E32)^theta2 (x) (m)`.
//!
//! The action of the Weyl-Chevalley generators is assembled term by term from
//! the commutation rule that pushes `E_ij` through `(E31)^theta1 (E32)^theta2`.
//! `E13` and `E31` are then obtained from their defining q-commutators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fullrep::HighestWeight;
use crate::generator::{Generator, Parity};
use crate::gzrep::{enumerate_patterns, EvenHighestWeight, GzPattern};
use crate::linalg::{residual, Deviation, Matrix, Term};
use crate::module::{BasisKind, Cartan, Module};
use crate::qarith::DeformationParameter;

/// Exponents of `(E31)^theta1 (E32)^theta2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaVector {
    pub theta1: u8,
    pub theta2: u8,
}

impl ThetaVector {
    pub const ALL: [ThetaVector; 4] = [
        ThetaVector::new(0, 0),
        ThetaVector::new(0, 1),
        ThetaVector::new(1, 0),
        ThetaVector::new(1, 1),
    ];

    pub const fn new(theta1: u8, theta2: u8) -> Self {
        Self { theta1, theta2 }
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.theta1 + self.theta2)
    }

    /// Position in the lexicographic order of [`ThetaVector::ALL`].
    pub fn block(self) -> usize {
        (2 * self.theta1 + self.theta2) as usize
    }

    /// Exponent `theta_k`, with `theta_3 = theta_2`.
    fn component(self, k: usize) -> f64 {
        match k {
            1 => self.theta1 as f64,
            _ => self.theta2 as f64,
        }
    }

    /// The GZ pattern `(mu)` of T identified with this vector, so that
    /// `|theta1, theta2> = sign() * (mu)`.
    pub fn pattern(self) -> GzPattern {
        let t1 = self.theta1 as i64;
        let t2 = self.theta2 as i64;
        let flip = if (1 - t1) * (1 - t2) == 0 { 1 } else { -1 };
        GzPattern {
            m12: -t1 * t2,
            m22: -(1 + flip) / 2,
            m11: -t1,
            m31: (t1 + t2) as f64,
        }
    }

    /// `(-1)^(theta1 (theta2 + 1))`.
    pub fn sign(self) -> f64 {
        if self.theta1 * (self.theta2 + 1) % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// The irreducible summand of T containing this vector.
    pub fn sector(self) -> ThetaSector {
        match self.theta1 + self.theta2 {
            0 => ThetaSector::T0,
            1 => ThetaSector::T1,
            _ => ThetaSector::T2,
        }
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.theta1, self.theta2)
    }
}

/// The three irreducible even submodules `T0 + T1 + T2` of T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaSector {
    T0,
    T1,
    T2,
}

impl ThetaSector {
    pub const ALL: [ThetaSector; 3] = [ThetaSector::T0, ThetaSector::T1, ThetaSector::T2];

    pub fn signature(self) -> EvenHighestWeight {
        match self {
            ThetaSector::T0 => EvenHighestWeight { m12: 0, m22: 0, m32: 0.0 },
            ThetaSector::T1 => EvenHighestWeight { m12: 0, m22: -1, m32: 1.0 },
            ThetaSector::T2 => EvenHighestWeight { m12: -1, m22: -1, m32: 2.0 },
        }
    }

    /// Basis of the sector, highest weight first.
    pub fn basis(self) -> Vec<ThetaVector> {
        match self {
            ThetaSector::T0 => vec![ThetaVector::new(0, 0)],
            ThetaSector::T1 => vec![ThetaVector::new(0, 1), ThetaVector::new(1, 0)],
            ThetaSector::T2 => vec![ThetaVector::new(1, 1)],
        }
    }
}

/// Even-subalgebra action on T in the theta basis:
/// `E_ij |theta> = -theta_i (1 - theta_j) |1-theta1, 1-theta2>` for `i != j`,
/// `E_ii |theta> = -theta_i |theta>` for `i = 1, 2`,
/// `E33 |theta> = (theta1 + theta2) |theta>`.
pub fn theta_even_action(g: Generator, t: ThetaVector) -> Result<Vec<(ThetaVector, f64)>> {
    let t1 = t.theta1 as f64;
    let t2 = t.theta2 as f64;
    let flipped = ThetaVector::new(1 - t.theta1, 1 - t.theta2);
    let out = match g {
        Generator::E11 => vec![(t, -t1)],
        Generator::E22 => vec![(t, -t2)],
        Generator::E33 => vec![(t, t1 + t2)],
        Generator::E12 => vec![(flipped, -t1 * (1.0 - t2))],
        Generator::E21 => vec![(flipped, -t2 * (1.0 - t1))],
        other => {
            return Err(Error::Domain(format!(
                "{other} does not act on T through the even subalgebra"
            )))
        }
    };
    Ok(out.into_iter().filter(|(_, c)| *c != 0.0).collect())
}

/// The even module `T_i` in the theta basis.
pub fn theta_module(sector: ThetaSector, q: &DeformationParameter) -> Result<Module> {
    let basis = sector.basis();
    let mut module = Module::new(
        *q,
        BasisKind::Even,
        basis.iter().map(|t| t.parity()).collect(),
        basis.iter().map(|t| t.to_string()).collect(),
    );
    for g in Generator::EVEN {
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (c, t) in basis.iter().enumerate() {
            for (img, coeff) in theta_even_action(g, *t)? {
                let r = basis
                    .iter()
                    .position(|b| *b == img)
                    .ok_or_else(|| Error::Consistency(format!("{g} leaves sector {sector:?}")))?;
                m[(r, c)] += coeff;
            }
        }
        module.insert(g, m);
    }
    Ok(module)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InducedBasisVector {
    pub theta: ThetaVector,
    pub pattern: GzPattern,
}

impl fmt::Display for InducedBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}; {}>", self.theta.theta1, self.theta.theta2, self.pattern)
    }
}

/// Lexicographic in theta, then `m11` descending.
pub fn enumerate_induced_basis(hw: &HighestWeight) -> Result<Vec<InducedBasisVector>> {
    let patterns = enumerate_patterns(&hw.even())?;
    Ok(ThetaVector::ALL
        .iter()
        .flat_map(|&theta| {
            patterns
                .iter()
                .map(move |&pattern| InducedBasisVector { theta, pattern })
        })
        .collect())
}

fn induced_index(hw: &HighestWeight, v: &InducedBasisVector) -> Option<usize> {
    if !v.pattern.is_valid() {
        return None;
    }
    let dim_v = (hw.m13 - hw.m23 + 1) as usize;
    Some(v.theta.block() * dim_v + (hw.m13 - v.pattern.m11) as usize)
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn minus_one_pow(e: f64) -> f64 {
    if (e.round() as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Image of one induced basis vector under a Weyl-Chevalley generator.
fn induced_image(
    g: Generator,
    v: &InducedBasisVector,
    q: &DeformationParameter,
) -> Result<Vec<(InducedBasisVector, f64)>> {
    if !g.is_chevalley() {
        return Err(Error::Domain(format!(
            "{g} is not a Weyl-Chevalley generator; use the q-commutator definition"
        )));
    }
    let (i, j) = g.indices();
    let theta = v.theta;
    let (t1, t2) = (theta.theta1 as f64, theta.theta2 as f64);
    let p = v.pattern;
    let w = p.weight();
    let h1 = w[0] - w[1];
    let h2 = w[1] + w[2];
    let odd_up = delta(i, 2) * delta(j, 3);
    let odd_down = delta(i, 3) * delta(j, 2);
    let mut out = Vec::new();

    // twisted pass-through term
    let lead = (1.0 - odd_up)
        * q.pow((odd_down + delta(i, 2) * delta(j, 1)) * t1 - delta(i, 2) * delta(j, 1) * t2)
        * minus_one_pow(odd_up * (t1 + t2) + odd_down * t1);
    if lead != 0.0 {
        let new_t2 = theta.theta2 + odd_down as u8;
        if new_t2 <= 1 {
            let target = ThetaVector::new(theta.theta1, new_t2);
            let images = if g.parity() == Parity::Even {
                p.even_action(g, q)?
            } else {
                vec![(p, 1.0)]
            };
            for (img, c) in images {
                out.push((InducedBasisVector { theta: target, pattern: img }, lead * c));
            }
        }
    }

    // Cartan shift from the weights of E31, E32
    let shift = delta(i, 1) * delta(j, 1) * t1 + delta(i, 2) * delta(j, 2) * t2
        - delta(i, 3) * delta(j, 3) * (t1 + t2);
    if shift != 0.0 {
        out.push((*v, -shift));
    }

    // even generators acting on T
    let flip = theta.component(i) * (1.0 - theta.component(j));
    if i != j && flip != 0.0 {
        let exp = if (i, j) == (1, 2) { h1 } else { 0.0 };
        let target = ThetaVector::new(1 - theta.theta1, 1 - theta.theta2);
        out.push((InducedBasisVector { theta: target, pattern: p }, -flip * q.pow(exp)));
    }

    if odd_up != 0.0 {
        let damp = q.pow(-1.0 - h2);
        if theta.theta1 == 1 {
            let t = ThetaVector::new(0, theta.theta2);
            for (img, c) in p.even_action(Generator::E21, q)? {
                out.push((
                    InducedBasisVector { theta: t, pattern: img },
                    damp * q.pow(-t2) * c,
                ));
            }
            if theta.theta2 == 1 {
                out.push((
                    InducedBasisVector { theta: ThetaVector::new(1, 0), pattern: p },
                    -damp,
                ));
            }
        }
        if theta.theta2 == 1 {
            out.push((
                InducedBasisVector { theta: ThetaVector::new(theta.theta1, 0), pattern: p },
                minus_one_pow(t1) * q.bracket(h2),
            ));
        }
    }
    Ok(out)
}

/// Matrix of a Weyl-Chevalley generator over [`enumerate_induced_basis`].
pub fn induced_action(g: Generator, hw: &HighestWeight, q: &DeformationParameter) -> Result<Matrix> {
    let basis = enumerate_induced_basis(hw)?;
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (c, v) in basis.iter().enumerate() {
        for (img, coeff) in induced_image(g, v, q)? {
            if let Some(r) = induced_index(hw, &img) {
                m[(r, c)] += coeff;
            }
        }
    }
    Ok(m)
}

/// The induced module with all nine generators; `E13`, `E31` come from their
/// q-commutator definitions.
pub fn induced_module(hw: &HighestWeight, q: &DeformationParameter) -> Result<Module> {
    let basis = enumerate_induced_basis(hw)?;
    let mut module = Module::new(
        *q,
        BasisKind::Induced,
        basis.iter().map(|v| v.theta.parity()).collect(),
        basis.iter().map(|v| v.to_string()).collect(),
    );
    for g in Generator::CHEVALLEY {
        module.insert(g, induced_action(g, hw, q)?);
    }
    module.derive_composites()?;
    module.check_finite()?;
    Ok(module)
}

/// One checked instance of a pushing identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PushingCheck {
    pub relation: String,
    pub generator: Generator,
    pub theta: ThetaVector,
    pub deviation: f64,
    pub row: usize,
    pub col: usize,
}

struct PendingCheck {
    relation: String,
    generator: Generator,
    theta: ThetaVector,
    deviation: Deviation,
}

impl From<PendingCheck> for PushingCheck {
    fn from(p: PendingCheck) -> Self {
        Self {
            relation: p.relation,
            generator: p.generator,
            theta: p.theta,
            deviation: p.deviation.value,
            row: p.deviation.row,
            col: p.deviation.col,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PushingReport {
    pub checks: Vec<PushingCheck>,
}

impl PushingReport {
    pub fn max_deviation(&self, relation: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.relation == relation)
            .map(|c| c.deviation)
            .fold(0.0, f64::max)
    }
}

/// Operator identities moving `E_ij` to the right of
/// `(E31)^theta1 (E32)^theta2`, checked on any module carrying all nine
/// generators. Left sides are matrix products; right sides are assembled from
/// the formula's terms.
pub fn verify_pushing_relations(module: &Module) -> Result<PushingReport> {
    let q = module.q();
    let id = module.identity();
    let e31 = module.require(Generator::E31)?;
    let e32 = module.require(Generator::E32)?;
    let e21 = module.require(Generator::E21)?;
    let e23 = module.require(Generator::E23)?;
    let br_h2 = module.q_bracket(Cartan::H2);
    let damp = module.q_exp(Cartan::H2, -1.0, -1.0);
    let k1 = module.q_exp(Cartan::H1, 1.0, 0.0);
    let pow31 = |t: u8| if t == 1 { e31 } else { &id };
    let pow32 = |t: u8| if t == 1 { e32 } else { &id };

    let mut checks = Vec::new();
    for theta in ThetaVector::ALL {
        let (a, b) = (theta.theta1, theta.theta2);
        let (t1, t2) = (a as f64, b as f64);

        // E32 line
        let mut terms = vec![Term::plus(vec![e32, pow31(a), pow32(b)])];
        if b == 0 {
            terms.push(Term::new(-(-q.pow(1.0)).powi(a as i32), vec![pow31(a), e32]));
        }
        checks.push(PendingCheck {
            relation: "odd-pushing".into(),
            generator: Generator::E32,
            theta,
            deviation: residual(&terms),
        }.into());

        // E23 line
        let mut terms = vec![
            Term::plus(vec![e23, pow31(a), pow32(b)]),
            Term::new(-minus_one_pow(t1 + t2), vec![pow31(a), pow32(b), e23]),
        ];
        if b == 1 {
            terms.push(Term::new(-minus_one_pow(t1), vec![pow31(a), &br_h2]));
        }
        if a == 1 && b == 1 {
            terms.push(Term::plus(vec![e31, &damp]));
        }
        if a == 1 {
            terms.push(Term::new(-q.pow(-t2), vec![pow32(b), e21, &damp]));
        }
        checks.push(PendingCheck {
            relation: "odd-pushing".into(),
            generator: Generator::E23,
            theta,
            deviation: residual(&terms),
        }.into());

        for g in Generator::CHEVALLEY {
            let (i, j) = g.indices();
            let e = module.require(g)?;
            let odd_up = delta(i, 2) * delta(j, 3);
            let odd_down = delta(i, 3) * delta(j, 2);
            let twist = q.pow((odd_down + delta(i, 2) * delta(j, 1)) * t1 - delta(i, 2) * delta(j, 1) * t2)
                * minus_one_pow(odd_up * (t1 + t2) + odd_down * t1);
            let shift = delta(i, 1) * delta(j, 1) * t1 + delta(i, 2) * delta(j, 2) * t2
                - delta(i, 3) * delta(j, 3) * (t1 + t2);
            let flip = theta.component(i) * (1.0 - theta.component(j));
            let mut terms = vec![
                Term::plus(vec![e, pow31(a), pow32(b)]),
                Term::new(-twist, vec![pow31(a), pow32(b), e]),
                Term::new(shift, vec![pow31(a), pow32(b)]),
            ];
            if flip != 0.0 {
                let tail = if (i, j) == (1, 2) { &k1 } else { &id };
                terms.push(Term::new(flip, vec![pow31(1 - a), pow32(1 - b), tail]));
            }
            if odd_up != 0.0 {
                if a == 1 {
                    terms.push(Term::new(-q.pow(-t2), vec![pow32(b), e21, &damp]));
                    if b == 1 {
                        terms.push(Term::plus(vec![e31, &damp]));
                    }
                }
                if b == 1 {
                    terms.push(Term::new(-minus_one_pow(t1), vec![pow31(a), &br_h2]));
                }
            }
            checks.push(PendingCheck {
                relation: "general-pushing".into(),
                generator: g,
                theta,
                deviation: residual(&terms),
            }.into());
        }
    }
    Ok(PushingReport { checks })
}

/// Largest deviation among all pushing checks together with its location.
pub fn worst_pushing(report: &PushingReport) -> Deviation {
    report
        .checks
        .iter()
        .map(|c| Deviation { value: c.deviation, row: c.row, col: c.col })
        .fold(Deviation::default(), Deviation::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fullrep::HighestWeight;

    fn q(v: f64) -> DeformationParameter {
        DeformationParameter::generic(v).unwrap()
    }

    fn hw(a: i64, b: i64, c: f64) -> HighestWeight {
        HighestWeight::new(a, b, c).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(enumerate_induced_basis(&hw(1, 0, 0.0)).unwrap().len(), 8);
        assert_eq!(enumerate_induced_basis(&hw(0, 0, 2.0)).unwrap().len(), 4);
        assert_eq!(enumerate_induced_basis(&hw(3, 1, 0.0)).unwrap().len(), 12);
        let b = enumerate_induced_basis(&hw(1, 0, 0.0)).unwrap();
        assert_eq!(b[2].theta, ThetaVector::new(0, 1));
        assert_eq!(b[3].pattern.m11, 0);
    }

    #[test]
    fn theta_patterns_and_signs() {
        let t = |a, b| ThetaVector::new(a, b);
        let p = t(0, 0).pattern();
        assert_eq!((p.m12, p.m22, p.m11, p.m31), (0, 0, 0, 0.0));
        let p = t(1, 0).pattern();
        assert_eq!((p.m12, p.m22, p.m11, p.m31), (0, -1, -1, 1.0));
        assert_eq!(t(1, 0).sign(), -1.0);
        let p = t(0, 1).pattern();
        assert_eq!((p.m12, p.m22, p.m11, p.m31), (0, -1, 0, 1.0));
        assert_eq!(t(0, 1).sign(), 1.0);
        let p = t(1, 1).pattern();
        assert_eq!((p.m12, p.m22, p.m11, p.m31), (-1, -1, -1, 2.0));
        assert_eq!(t(1, 1).sign(), 1.0);
        // T-basis weights from the theta action agree with the pattern weights
        for tv in ThetaVector::ALL {
            let w = tv.pattern().weight();
            let e11 = theta_even_action(Generator::E11, tv).unwrap();
            let e11 = e11.first().map(|x| x.1).unwrap_or(0.0);
            assert_eq!(e11, w[0], "{tv}");
        }
    }

    #[test]
    fn sector_signatures() {
        let qq = q(1.7);
        for s in ThetaSector::ALL {
            let m = theta_module(s, &qq).unwrap();
            let sig = s.signature();
            assert_eq!(m.weights()[0], [sig.m12 as f64, sig.m22 as f64, sig.m32]);
            let e12 = m.matrix(Generator::E12).unwrap();
            assert_eq!(e12.column(0).amax(), 0.0);
        }
    }

    #[test]
    fn odd_action_examples() {
        let h = hw(1, 0, 0.3);
        let qq = q(1.7);
        let e23 = induced_action(Generator::E23, &h, &qq).unwrap();
        let e32 = induced_action(Generator::E32, &h, &qq).unwrap();
        // (0,0) block: columns 0, 1
        for c in 0..2 {
            assert_eq!(e23.column(c).amax(), 0.0);
            assert_eq!(e32[(2 + c, c)], 1.0);
        }
        // |1,0;(m)> -> -q |1,1;(m)>
        for c in 4..6 {
            assert!((e32[(c + 2, c)] + 1.7).abs() < 1e-15);
        }
        assert!(induced_action(Generator::E13, &h, &qq).is_err());
    }

    #[test]
    fn e33_eigenvalues_include_both_thetas() {
        let h = hw(2, 0, 0.5);
        let e33 = induced_action(Generator::E33, &h, &q(0.5)).unwrap();
        for (i, v) in enumerate_induced_basis(&h).unwrap().iter().enumerate() {
            let expect = 0.5 + (v.theta.theta1 + v.theta.theta2) as f64;
            assert_eq!(e33[(i, i)], expect);
        }
    }

    #[test]
    fn pushing_relations_hold_on_induced_module() {
        for (h, qv) in [(hw(1, 0, 0.0), 1.7), (hw(2, 0, 3.0), 0.5), (hw(3, 1, -0.4), 2.5)] {
            let m = induced_module(&h, &q(qv)).unwrap();
            let r = verify_pushing_relations(&m).unwrap();
            assert!(worst_pushing(&r).value < 1e-9, "{h:?}: {:?}", worst_pushing(&r));
        }
    }
}
