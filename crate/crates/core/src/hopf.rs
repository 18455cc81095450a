//! Hopf structure: coproduct, antipode and counit on the Weyl-Chevalley
//! generators, graded tensor products of modules, the quantum adjoint action,
//! and Clebsch-Gordan decomposition of `T_i (x) V`.
//!
//! Tensor products use the sign rule `(x (x) y)(v (x) w) = (-1)^(|y||v|) xv (x) yw`,
//! so a coproduct term `x (x) y` becomes the matrix `kron(x G^|y|, y)` with
//! `G = (-1)^deg` the grading operator of the left factor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fullrep::{basis_change, reduced_index, HighestWeight, Normalization};
use crate::generator::{Generator, Parity};
use crate::gzrep::{even_module, EvenHighestWeight};
use crate::induced::{theta_module, ThetaSector};
use crate::linalg::{difference, kron, null_space, residual, Deviation, Matrix, Term, Vector};
use crate::module::{BasisKind, Cartan, Module};
use crate::qarith::DeformationParameter;

/// A factor of an algebra word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    Gen(Generator),
    /// `q^(power * H)`
    K(Cartan, f64),
}

impl Factor {
    fn parity(self) -> Parity {
        match self {
            Factor::Gen(g) => g.parity(),
            Factor::K(..) => Parity::Even,
        }
    }
}

/// Product of factors, read left to right; the empty word is 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Word(pub Vec<Factor>);

impl Word {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn of(factors: &[Factor]) -> Self {
        Self(factors.to_vec())
    }

    pub fn parity(&self) -> Parity {
        self.0
            .iter()
            .fold(Parity::Even, |p, f| p.plus(f.parity()))
    }

    /// Matrix of the word on a module.
    pub fn evaluate(&self, module: &Module) -> Result<Matrix> {
        let mut out = module.identity();
        for f in &self.0 {
            let m = match *f {
                Factor::Gen(g) => module.require(g)?.clone(),
                Factor::K(h, p) => module.q_exp(h, p, 0.0),
            };
            out *= m;
        }
        Ok(out)
    }

    /// `S(w)` as a signed word: `S` reverses products and picks up
    /// `(-1)^(|x||y|)` for every pair of odd factors swapped.
    pub fn antipode(&self) -> Result<(f64, Word)> {
        let mut coeff = 1.0;
        let mut out = Vec::new();
        let mut odd_seen = 0u32;
        for f in self.0.iter().rev() {
            if f.parity().is_odd() {
                odd_seen += 1;
            }
            let (c, w) = antipode_factor(*f)?;
            coeff *= c;
            out.extend(w.0);
        }
        // reversing k odd factors costs (-1)^(k(k-1)/2)
        if (odd_seen * odd_seen.saturating_sub(1) / 2) % 2 == 1 {
            coeff = -coeff;
        }
        Ok((coeff, Word(out)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|x| match x {
                Factor::Gen(g) => g.to_string(),
                Factor::K(h, p) => format!("q^({p}{h:?})"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One summand `sign * left (x) right` of a coproduct.
#[derive(Debug, Clone, PartialEq)]
pub struct CoproductTerm {
    pub left: Word,
    pub right: Word,
    pub sign: f64,
}

impl CoproductTerm {
    fn new(left: &[Factor], right: &[Factor]) -> Self {
        Self {
            left: Word::of(left),
            right: Word::of(right),
            sign: 1.0,
        }
    }
}

use Factor::{Gen, K};

/// `Delta(g)` for the Cartan and Weyl-Chevalley generators. No coproduct is
/// assumed for `E13`, `E31`.
pub fn coproduct(g: Generator) -> Result<Vec<CoproductTerm>> {
    let t = CoproductTerm::new;
    Ok(match g {
        Generator::E11 | Generator::E22 | Generator::E33 => {
            vec![t(&[Gen(g)], &[]), t(&[], &[Gen(g)])]
        }
        Generator::E12 => vec![t(&[Gen(g)], &[K(Cartan::H1, 1.0)]), t(&[], &[Gen(g)])],
        Generator::E21 => vec![t(&[Gen(g)], &[]), t(&[K(Cartan::H1, -1.0)], &[Gen(g)])],
        Generator::E23 => vec![t(&[Gen(g)], &[K(Cartan::H2, 1.0)]), t(&[], &[Gen(g)])],
        Generator::E32 => vec![t(&[Gen(g)], &[]), t(&[K(Cartan::H2, -1.0)], &[Gen(g)])],
        Generator::E13 | Generator::E31 => {
            return Err(Error::Domain(format!("no coproduct is defined for {g}")))
        }
    })
}

fn antipode_factor(f: Factor) -> Result<(f64, Word)> {
    Ok(match f {
        Factor::K(h, p) => (1.0, Word::of(&[K(h, -p)])),
        Factor::Gen(g) => antipode(g)?,
    })
}

/// `S(g) = coeff * word`.
pub fn antipode(g: Generator) -> Result<(f64, Word)> {
    Ok(match g {
        Generator::E11 | Generator::E22 | Generator::E33 => (-1.0, Word::of(&[Gen(g)])),
        Generator::E12 => (-1.0, Word::of(&[Gen(g), K(Cartan::H1, -1.0)])),
        Generator::E21 => (-1.0, Word::of(&[K(Cartan::H1, 1.0), Gen(g)])),
        Generator::E23 => (-1.0, Word::of(&[Gen(g), K(Cartan::H2, -1.0)])),
        Generator::E32 => (-1.0, Word::of(&[K(Cartan::H2, 1.0), Gen(g)])),
        Generator::E13 | Generator::E31 => {
            return Err(Error::Domain(format!("no antipode is defined for {g}")))
        }
    })
}

/// Matrix of `S(g)` on a module.
pub fn antipode_matrix(g: Generator, module: &Module) -> Result<Matrix> {
    let (c, w) = antipode(g)?;
    Ok(w.evaluate(module)? * c)
}

/// `epsilon(g)`: zero on every generator.
pub fn counit(_g: Generator) -> f64 {
    0.0
}

fn signed_left(left: &Matrix, grading: &Matrix, right_parity: Parity) -> Matrix {
    if right_parity.is_odd() {
        left * grading
    } else {
        left.clone()
    }
}

/// The graded tensor product `A (x) B`. Generators are included when their
/// coproduct can be evaluated on both factors; `E13`, `E31` are then derived
/// from their q-commutator definitions if the odd part is present.
pub fn tensor_representation(a: &Module, b: &Module) -> Result<Module> {
    let mut out = tensor_chevalley(a, b)?;
    if [Generator::E12, Generator::E21].iter().all(|g| out.matrix(*g).is_some())
        && out.has_odd_part()
    {
        out.derive_composites()?;
    }
    out.check_finite()?;
    Ok(out)
}

/// Tensor product carrying only the Cartan and Weyl-Chevalley generators.
fn tensor_chevalley(a: &Module, b: &Module) -> Result<Module> {
    if a.q() != b.q() {
        return Err(Error::Domain(format!(
            "tensor factors use different deformation parameters ({} vs {})",
            a.q().value(),
            b.q().value()
        )));
    }
    let parity: Vec<Parity> = a
        .parity()
        .iter()
        .flat_map(|pa| b.parity().iter().map(move |pb| pa.plus(*pb)))
        .collect();
    let labels: Vec<String> = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("{la} (x) {lb}")))
        .collect();
    let mut out = Module::new(a.q(), BasisKind::Tensor, parity, labels);
    let grading = a.grading();
    for g in Generator::CHEVALLEY {
        if a.matrix(g).is_none() || b.matrix(g).is_none() {
            continue;
        }
        let mut m = Matrix::zeros(out.dim(), out.dim());
        for term in coproduct(g)? {
            let l = term.left.evaluate(a)?;
            let r = term.right.evaluate(b)?;
            m += kron(&signed_left(&l, &grading, term.right.parity()), &r) * term.sign;
        }
        out.insert(g, m);
    }
    Ok(out)
}

/// Name and largest deviation of one Hopf-axiom family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub generator: Generator,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfReport {
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn max_deviation(&self, axiom: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.axiom == axiom)
            .map(|c| c.deviation)
            .fold(0.0, f64::max)
    }

    pub fn worst(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }
}

/// Cartan and Weyl-Chevalley generators carried by a module.
fn hopf_generators(module: &Module) -> Vec<Generator> {
    Generator::CHEVALLEY
        .iter()
        .copied()
        .filter(|g| module.matrix(*g).is_some())
        .collect()
}

/// `(Delta (x) id) Delta = (id (x) Delta) Delta` on `A (x) A (x) A`.
pub fn check_coassociativity(a: &Module) -> Result<HopfReport> {
    check_coassociativity_of(a, a, a)
}

/// `(Delta (x) id) Delta = (id (x) Delta) Delta` on `A (x) B (x) C`: the two
/// bracketings of the triple product must give the same matrices.
pub fn check_coassociativity_of(a: &Module, b: &Module, c: &Module) -> Result<HopfReport> {
    let left = tensor_chevalley(&tensor_chevalley(a, b)?, c)?;
    let right = tensor_chevalley(a, &tensor_chevalley(b, c)?)?;
    let checks = hopf_generators(&left)
        .into_iter()
        .map(|g| {
            Ok(AxiomCheck {
                axiom: "coassociativity".into(),
                generator: g,
                deviation: difference(left.require(g)?, right.require(g)?).value,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HopfReport { checks })
}

/// `(epsilon (x) id) Delta = id = (id (x) epsilon) Delta`, realized by
/// tensoring with the trivial one-dimensional module on either side.
pub fn check_counit(a: &Module) -> Result<HopfReport> {
    let one = Module::trivial(a.q());
    let left = tensor_representation(&one, a)?;
    let right = tensor_representation(a, &one)?;
    let mut checks = Vec::new();
    for g in hopf_generators(a) {
        let m = a.require(g)?;
        let d = difference(left.require(g)?, m).max(difference(right.require(g)?, m));
        checks.push(AxiomCheck {
            axiom: "counit".into(),
            generator: g,
            deviation: d.value,
        });
    }
    Ok(HopfReport { checks })
}

/// `mu (S (x) id) Delta(g) = epsilon(g) 1 = mu (id (x) S) Delta(g)` on a module.
pub fn check_antipode(a: &Module) -> Result<HopfReport> {
    let mut checks = Vec::new();
    let id = a.identity();
    for g in hopf_generators(a) {
        let mut worst = Deviation::default();
        for side in [0, 1] {
            let mut mats: Vec<(f64, Matrix, Matrix)> = Vec::new();
            for term in coproduct(g)? {
                let (x, y) = if side == 0 {
                    let (c, s) = term.left.antipode()?;
                    (s.evaluate(a)? * c, term.right.evaluate(a)?)
                } else {
                    let (c, s) = term.right.antipode()?;
                    (term.left.evaluate(a)?, s.evaluate(a)? * c)
                };
                mats.push((term.sign, x, y));
            }
            let mut terms: Vec<Term> = mats
                .iter()
                .map(|(s, x, y)| Term::new(*s, vec![x, y]))
                .collect();
            terms.push(Term::new(-counit(g), vec![&id]));
            worst = worst.max(residual(&terms));
        }
        checks.push(AxiomCheck {
            axiom: "antipode".into(),
            generator: g,
            deviation: worst.value,
        });
    }
    Ok(HopfReport { checks })
}

/// The summands of `ad_q(x)`: pairs `(c, x1, S(x2))` such that
/// `ad_q(x)(y) = sum c (-1)^(|x2||y|) x1 y S(x2)`; the grading sign is folded
/// into `c` for the given parity of `y`.
fn adjoint_parts(x: Generator, y_parity: Parity, module: &Module) -> Result<Vec<(f64, Matrix, Matrix)>> {
    coproduct(x)?
        .into_iter()
        .map(|term| {
            let x1 = term.left.evaluate(module)?;
            let (c, s) = term.right.antipode()?;
            let sign = term.right.parity().sign_with(y_parity);
            Ok((c * sign * term.sign, x1, s.evaluate(module)?))
        })
        .collect()
}

/// `ad_q(x)(y) = sum (-1)^(|x2||y|) x1 y S(x2)` for a generator `x` with a
/// coproduct and a homogeneous operator `y` of parity `y_parity`.
pub fn adjoint_action(x: Generator, y: &Matrix, y_parity: Parity, module: &Module) -> Result<Matrix> {
    let mut out = Matrix::zeros(module.dim(), module.dim());
    for (c, x1, sx2) in adjoint_parts(x, y_parity, module)? {
        out += (&x1 * y * sx2) * c;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjointReport {
    /// `E13` from the adjoint action against the module's `E13`.
    pub e13: f64,
    /// `E31` from the adjoint action against the module's `E31`.
    pub e31: f64,
    /// Adjoint forms against the q-commutator definitions, computed
    /// independently from the Chevalley matrices.
    pub against_definition: f64,
}

impl AdjointReport {
    pub fn worst(&self) -> f64 {
        self.e13.max(self.e31).max(self.against_definition)
    }
}

/// Operands of the two adjoint forms:
/// `E13 = ad_q(E12)(E23 q^H2) q^(H1 - H2)` and `E31 = -ad_q(E21)(E32)`.
struct AdjointForms {
    y13: Matrix,
    tail: Matrix,
    parts13: Vec<(f64, Matrix, Matrix)>,
    parts31: Vec<(f64, Matrix, Matrix)>,
}

impl AdjointForms {
    fn new(module: &Module) -> Result<Self> {
        Ok(Self {
            y13: module.require(Generator::E23)? * module.q_exp(Cartan::H2, 1.0, 0.0),
            tail: module.q_exp(Cartan::H1, 1.0, 0.0) * module.q_exp(Cartan::H2, -1.0, 0.0),
            parts13: adjoint_parts(Generator::E12, Parity::Odd, module)?,
            parts31: adjoint_parts(Generator::E21, Parity::Odd, module)?,
        })
    }

    fn e13_terms(&self) -> Vec<Term<'_>> {
        self.parts13
            .iter()
            .map(|(c, x1, sx2)| Term::new(*c, vec![x1, &self.y13, sx2, &self.tail]))
            .collect()
    }

    fn e31_terms<'a>(&'a self, e32: &'a Matrix) -> Vec<Term<'a>> {
        self.parts31
            .iter()
            .map(|(c, x1, sx2)| Term::new(-*c, vec![x1, e32, sx2]))
            .collect()
    }
}

/// `(E13, E31)` computed through the adjoint action.
pub fn adjoint_composites(module: &Module) -> Result<(Matrix, Matrix)> {
    let f = AdjointForms::new(module)?;
    let e13 = adjoint_action(Generator::E12, &f.y13, Parity::Odd, module)? * &f.tail;
    let e31 = -adjoint_action(Generator::E21, module.require(Generator::E32)?, Parity::Odd, module)?;
    Ok((e13, e31))
}

/// Each comparison is a residual over the summands of both sides, so
/// entries are judged against the size of the products that built them.
fn joined<'a>(mut terms: Vec<Term<'a>>, rest: Vec<Term<'a>>) -> f64 {
    terms.extend(rest);
    residual(&terms).value
}

pub fn adjoint_check(module: &Module) -> Result<AdjointReport> {
    let f = AdjointForms::new(module)?;
    let e12 = module.require(Generator::E12)?;
    let e21 = module.require(Generator::E21)?;
    let e23 = module.require(Generator::E23)?;
    let e32 = module.require(Generator::E32)?;
    let qi = 1.0 / module.q().pow(1.0);
    let e13 = joined(f.e13_terms(), vec![Term::minus(vec![module.require(Generator::E13)?])]);
    let e31 = joined(f.e31_terms(e32), vec![Term::minus(vec![module.require(Generator::E31)?])]);
    let d13 = joined(
        f.e13_terms(),
        vec![Term::minus(vec![e12, e23]), Term::new(qi, vec![e23, e12])],
    );
    let d31 = joined(
        f.e31_terms(e32),
        vec![Term::plus(vec![e21, e32]), Term::new(-qi, vec![e32, e21])],
    );
    Ok(AdjointReport {
        e13,
        e31,
        against_definition: d13.max(d31),
    })
}

/// Deviation of the adjoint forms from the undeformed commutators
/// `e13 = [e12, e23]`, `e31 = [e32, e21]`, evaluated on the same matrices.
pub fn adjoint_classical_deviation(module: &Module) -> Result<f64> {
    let (e13, e31) = adjoint_composites(module)?;
    let e12 = module.require(Generator::E12)?;
    let e21 = module.require(Generator::E21)?;
    let e23 = module.require(Generator::E23)?;
    let e32 = module.require(Generator::E32)?;
    let c13 = e12 * e23 - e23 * e12;
    let c31 = e32 * e21 - e21 * e32;
    Ok(difference(&e13, &c13).value.max(difference(&e31, &c31).value))
}

/// One highest-weight vector of `T_i (x) V`.
#[derive(Debug, Clone)]
pub struct CgComponent {
    pub signature: EvenHighestWeight,
    /// Coordinates in the product basis `theta (x) (m)`, unit norm.
    pub vector: Vector,
}

#[derive(Debug, Clone)]
pub struct CgDecomposition {
    pub sector: ThetaSector,
    pub tensor: Module,
    pub components: Vec<CgComponent>,
}

/// Signatures of the summands of `T_i (x) V([m12, m22, m32])`.
pub fn predicted_signatures(sector: ThetaSector, hw: &EvenHighestWeight) -> Vec<EvenHighestWeight> {
    let mu = sector.signature();
    let n = (mu.m12 - mu.m22).min(hw.m12 - hw.m22);
    (0..=n)
        .map(|i| EvenHighestWeight {
            m12: mu.m12 + hw.m12 - i,
            m22: mu.m22 + hw.m22 + i,
            m32: mu.m32 + hw.m32,
        })
        .collect()
}

/// Highest-weight vectors of `T_i (x) V`: per weight space, the kernel of
/// `E12`. Their number and weights must match [`predicted_signatures`].
pub fn cg_decompose(
    sector: ThetaSector,
    hw: &EvenHighestWeight,
    q: &DeformationParameter,
    tol: f64,
) -> Result<CgDecomposition> {
    hw.validate()?;
    let t = theta_module(sector, q)?;
    let v = even_module(hw, q)?;
    let tensor = tensor_representation(&t, &v)?;
    let e12 = tensor.require(Generator::E12)?;
    let weights = tensor.weights();

    let mut spaces: Vec<([f64; 3], Vec<usize>)> = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        match spaces.iter_mut().find(|(x, _)| x == w) {
            Some((_, idx)) => idx.push(i),
            None => spaces.push((*w, vec![i])),
        }
    }
    let mut components = Vec::new();
    for (w, idx) in &spaces {
        let sub = Matrix::from_fn(e12.nrows(), idx.len(), |r, c| e12[(r, idx[c])]);
        let ns = null_space(&sub, tol);
        if ns.inconclusive {
            return Err(Error::Consistency(format!(
                "rank of E12 on weight {w:?} of {sector:?} (x) {hw:?} is undecidable at tolerance {tol}"
            )));
        }
        for b in ns.basis {
            let mut full = Vector::zeros(tensor.dim());
            for (c, &i) in idx.iter().enumerate() {
                full[i] = b[c];
            }
            components.push(CgComponent {
                signature: EvenHighestWeight {
                    m12: w[0].round() as i64,
                    m22: w[1].round() as i64,
                    m32: w[2],
                },
                vector: full,
            });
        }
    }
    components.sort_by_key(|c| std::cmp::Reverse(c.signature.m12));

    let predicted = predicted_signatures(sector, hw);
    let found: Vec<EvenHighestWeight> = components.iter().map(|c| c.signature).collect();
    if found != predicted {
        return Err(Error::Consistency(format!(
            "{sector:?} (x) {hw:?}: highest weights {found:?}, expected {predicted:?}"
        )));
    }
    Ok(CgDecomposition {
        sector,
        tensor,
        components,
    })
}

/// Largest deviation, per subspace `V_k`, between the basis-change columns
/// and the vectors obtained from the CG highest-weight vectors by rescaling
/// and lowering with the normalized powers of `E21`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CgConsistency {
    pub per_subspace: [f64; 4],
}

impl CgConsistency {
    pub fn max_deviation(&self) -> f64 {
        self.per_subspace.iter().copied().fold(0.0, f64::max)
    }
}

pub fn cg_consistency(
    hw: &HighestWeight,
    q: &DeformationParameter,
    a: &Normalization,
    tol: f64,
) -> Result<CgConsistency> {
    let bc = basis_change(hw, q, a)?;
    let b = &bc.reduced_to_induced;
    let dim_v = (hw.two_l() + 1) as usize;
    let mut per_subspace = [0.0; 4];
    for sector in ThetaSector::ALL {
        let dec = cg_decompose(sector, &hw.even(), q, tol)?;
        let blocks: Vec<usize> = sector.basis().iter().map(|t| t.block()).collect();
        let to_induced = |i: usize| blocks[i / dim_v] * dim_v + i % dim_v;
        let e21 = dec.tensor.require(Generator::E21)?;
        for comp in &dec.components {
            let sig = comp.signature;
            let k = match (sector, sig.m12 == hw.m13) {
                (ThetaSector::T0, _) => 0,
                (ThetaSector::T1, true) => 1,
                (ThetaSector::T1, false) => 2,
                (ThetaSector::T2, _) => 3,
            };
            let col = |m11: i64| -> Result<Vector> {
                let c = reduced_index(hw, k, m11)
                    .ok_or_else(|| Error::Consistency(format!("no vector ({k}, {m11})")))?;
                Ok(Vector::from_fn(comp.vector.len(), |i, _| b[(to_induced(i), c)]))
            };
            // fix the free scale on the largest component of the closed form
            let top = col(sig.m12)?;
            let pivot = top.iamax();
            if comp.vector[pivot].abs() <= tol {
                per_subspace[k] = f64::INFINITY;
                continue;
            }
            let mut v = &comp.vector * (top[pivot] / comp.vector[pivot]);
            let mut power = Vector::clone(&v);
            for m11 in (sig.m22..=sig.m12).rev() {
                let depth = sig.m12 - m11;
                if depth > 0 {
                    power = e21 * &power;
                    let norm = (q.factorial(m11 - sig.m22)?
                        / (q.factorial(sig.m12 - sig.m22)? * q.factorial(depth)?))
                    .sqrt();
                    v = &power * norm;
                }
                let expected = col(m11)?;
                let d = difference(
                    &Matrix::from_column_slice(v.len(), 1, v.as_slice()),
                    &Matrix::from_column_slice(expected.len(), 1, expected.as_slice()),
                );
                per_subspace[k] = f64::max(per_subspace[k], d.value);
            }
        }
    }
    Ok(CgConsistency { per_subspace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fullrep::build_representation;

    fn q(v: f64) -> DeformationParameter {
        DeformationParameter::generic(v).unwrap()
    }

    fn rep(a: i64, b: i64, c: f64, qv: f64) -> Module {
        build_representation(
            &HighestWeight::new(a, b, c).unwrap(),
            &q(qv),
            &Normalization::default(),
        )
        .unwrap()
        .module
    }

    #[test]
    fn coproduct_has_two_terms() {
        for g in Generator::CHEVALLEY {
            assert_eq!(coproduct(g).unwrap().len(), 2);
        }
        assert!(coproduct(Generator::E13).is_err());
        assert!(antipode(Generator::E31).is_err());
    }

    #[test]
    fn antipode_of_words() {
        // S(E23 E32) = -S(E32) S(E23)
        let w = Word::of(&[Gen(Generator::E23), Gen(Generator::E32)]);
        let (c, s) = w.antipode().unwrap();
        assert_eq!(c, -1.0);
        assert_eq!(s.0.len(), 4);
        let (c, s) = Word::of(&[K(Cartan::H2, -1.0)]).antipode().unwrap();
        assert_eq!((c, s), (1.0, Word::of(&[K(Cartan::H2, 1.0)])));
    }

    #[test]
    fn antipode_matrices() {
        let m = rep(1, 0, 5.0, 1.7);
        let s = antipode_matrix(Generator::E11, &m).unwrap();
        assert_eq!(s, -m.require(Generator::E11).unwrap());
        let s = antipode_matrix(Generator::E32, &m).unwrap();
        let expect = -(m.q_exp(Cartan::H2, 1.0, 0.0) * m.require(Generator::E32).unwrap());
        assert!(difference(&s, &expect).value < 1e-12);
    }

    #[test]
    fn tensor_basics() {
        let a = rep(1, 0, 5.0, 1.7);
        let t = tensor_representation(&a, &a).unwrap();
        assert_eq!(t.dim(), 64);
        let w = t.weights();
        let wa = a.weights();
        for i in 0..8 {
            for j in 0..8 {
                for c in 0..3 {
                    assert!((w[i * 8 + j][c] - wa[i][c] - wa[j][c]).abs() < 1e-12);
                }
            }
        }
        let other = rep(1, 0, 5.0, 0.5);
        assert!(matches!(tensor_representation(&a, &other), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_shift_of_e33() {
        let t1 = theta_module(ThetaSector::T1, &q(1.7)).unwrap();
        let v = even_module(&EvenHighestWeight::new(1, 0, 0.0).unwrap(), &q(1.7)).unwrap();
        let t = tensor_representation(&t1, &v).unwrap();
        for w in t.weights() {
            assert_eq!(w[2], 1.0);
        }
    }

    #[test]
    fn tensor_square_satisfies_relations() {
        let a = rep(1, 0, 5.0, 1.7);
        let t = tensor_representation(&a, &a).unwrap();
        let e23 = t.require(Generator::E23).unwrap();
        let e32 = t.require(Generator::E32).unwrap();
        let lhs = e23 * e32 + e32 * e23;
        assert!(difference(&lhs, &t.q_bracket(Cartan::H2)).value < 1e-9);
        let e12 = t.require(Generator::E12).unwrap();
        let e21 = t.require(Generator::E21).unwrap();
        let lhs = e12 * e21 - e21 * e12;
        assert!(difference(&lhs, &t.q_bracket(Cartan::H1)).value < 1e-9);
    }

    #[test]
    fn hopf_axioms_small() {
        let a = rep(0, 0, 0.7, 1.7);
        assert!(check_coassociativity(&a).unwrap().worst() < 1e-9);
        assert!(check_counit(&a).unwrap().worst() < 1e-12);
        assert!(check_antipode(&a).unwrap().worst() < 1e-9);
    }

    #[test]
    fn adjoint_on_typical() {
        let r = adjoint_check(&rep(1, 0, 5.0, 1.7)).unwrap();
        assert!(r.worst() < 1e-9, "{r:?}");
        let r = adjoint_check(&rep(2, 0, 3.0, 0.5)).unwrap();
        assert!(r.worst() < 1e-9, "{r:?}");
    }

    #[test]
    fn cg_signatures() {
        let hw = EvenHighestWeight::new(1, 0, 0.0).unwrap();
        let d = cg_decompose(ThetaSector::T1, &hw, &q(1.7), 1e-9).unwrap();
        let sigs: Vec<_> = d.components.iter().map(|c| (c.signature.m12, c.signature.m22)).collect();
        assert_eq!(sigs, vec![(1, -1), (0, 0)]);
        assert!(d.components.iter().all(|c| c.signature.m32 == 1.0));
        let d = cg_decompose(ThetaSector::T0, &hw, &q(1.7), 1e-9).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].signature, hw);
    }

    #[test]
    fn cg_matches_basis_change() {
        let a = Normalization::new(1.0, 1.0, 1.0).unwrap();
        for (hw, qv) in [((1, 0, 0.0), 1.7), ((2, 0, 3.0), 0.5), ((3, 1, -1.5), std::f64::consts::E)] {
            let hw = HighestWeight::new(hw.0, hw.1, hw.2).unwrap();
            let c = cg_consistency(&hw, &q(qv), &a, 1e-9).unwrap();
            assert!(c.max_deviation() < 1e-9, "{hw}: {c:?}");
        }
    }
}
