//! Numerical irreducibility test by subspace closure.
//!
//! Every basis we build is a weight basis and every generator maps weight
//! spaces to weight spaces, so closures are tracked one weight space at a
//! time. That keeps all rank decisions relative to vectors of comparable
//! scale even when matrix entries span many orders of magnitude.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::generator::Generator;
use crate::linalg::{null_space, Matrix, Vector, RANK_BAND};
use crate::module::Module;

/// A proper invariant subspace found by closure, identified by the basis
/// indices its vectors touch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSubspace {
    pub dim: usize,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub dim: usize,
    pub irreducible: bool,
    /// Some rank decision fell inside the undecidable band.
    pub inconclusive: bool,
    /// Vectors annihilated by `E12` and `E23`.
    pub singular_vector_count: usize,
    /// Dimension of the submodule generated by the first singular vector.
    pub top_closure_dim: usize,
    /// Distinct proper closures of single basis vectors.
    pub proper_subspaces: Vec<InvariantSubspace>,
    /// Union of the supports of `proper_subspaces`.
    pub union_support: Vec<usize>,
}

struct WeightSpaces {
    /// basis indices of each weight space
    members: Vec<Vec<usize>>,
    /// weight space of each basis index
    owner: Vec<usize>,
}

impl WeightSpaces {
    fn new(module: &Module) -> Self {
        let mut ids: HashMap<[u64; 3], usize> = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut owner = Vec::with_capacity(module.dim());
        for (i, w) in module.weights().iter().enumerate() {
            // + 0.0 folds -0.0 into 0.0
            let key = w.map(|x| (x + 0.0).to_bits());
            let id = *ids.entry(key).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[id].push(i);
            owner.push(id);
        }
        Self { members, owner }
    }
}

/// Powers of two `d` such that the similarity `D^-1 M D` spreads entry
/// magnitudes evenly (Osborne iteration on the sum of the normalized
/// generator matrices). Diagonal similarities leave invariant subspaces and
/// their supports unchanged, but keep vectors built by closure from
/// becoming nearly parallel only because of scale differences between basis
/// vectors. Powers of two make the rescaling exact.
fn balancing(matrices: &[&Matrix], n: usize) -> Vec<f64> {
    let mut b = Matrix::zeros(n, n);
    for m in matrices {
        let top = m.amax();
        if top > 0.0 {
            b += m.abs() / top;
        }
    }
    let mut d = vec![1.0; n];
    for _ in 0..100 {
        let mut changed = false;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += b[(j, i)] * d[i] / d[j];
                    row += b[(i, j)] * d[j] / d[i];
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let f = 2f64.powi(((row / col).log2() / 2.0).round() as i32);
            if f != 1.0 {
                d[i] *= f;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}

fn balanced(module: &Module) -> Vec<Matrix> {
    let raw: Vec<&Matrix> = Generator::ALL
        .iter()
        .filter_map(|&g| module.matrix(g))
        .collect();
    let d = balancing(&raw, module.dim());
    raw.iter()
        .map(|m| Matrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)] * d[c] / d[r]))
        .collect()
}

struct Closure<'a> {
    spaces: &'a WeightSpaces,
    matrices: &'a [Matrix],
    abs: Vec<Matrix>,
    tol: f64,
    inconclusive: bool,
}

impl<'a> Closure<'a> {
    fn new(matrices: &'a [Matrix], spaces: &'a WeightSpaces, tol: f64) -> Self {
        let abs = matrices.iter().map(|m| m.abs()).collect();
        Self {
            spaces,
            matrices,
            abs,
            tol,
            inconclusive: false,
        }
    }

    /// Echelon bases, per weight space, of the submodule generated by
    /// `start` (a vector supported on weight space `wid`).
    fn generate(&mut self, wid: usize, start: Vector) -> HashMap<usize, Vec<(usize, Vector)>> {
        let total: usize = self.spaces.owner.len();
        let mut span: HashMap<usize, Vec<(usize, Vector)>> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut dim = 0;
        let bound = start.abs();
        if let Some(v) = self.admit(&mut span, wid, start, bound) {
            dim += 1;
            queue.push_back((wid, v));
        }
        while let Some((src, v)) = queue.pop_front() {
            if dim == total {
                break;
            }
            let cols = &self.spaces.members[src];
            for gi in 0..self.matrices.len() {
                let m = &self.matrices[gi];
                let a = &self.abs[gi];
                // image split by target weight space
                let mut images: HashMap<usize, (Vec<f64>, Vec<f64>)> = HashMap::new();
                for (c, &j) in cols.iter().enumerate() {
                    let x = v[c];
                    if x == 0.0 {
                        continue;
                    }
                    for r in 0..m.nrows() {
                        let e = m[(r, j)];
                        if e == 0.0 {
                            continue;
                        }
                        let t = self.spaces.owner[r];
                        let pos = self.spaces.members[t].iter().position(|&i| i == r).unwrap();
                        let len = self.spaces.members[t].len();
                        let entry = images
                            .entry(t)
                            .or_insert_with(|| (vec![0.0; len], vec![0.0; len]));
                        entry.0[pos] += e * x;
                        entry.1[pos] += a[(r, j)] * x.abs();
                    }
                }
                for (t, (w, bound)) in images {
                    let w = Vector::from_vec(w);
                    let bound = Vector::from_vec(bound);
                    if let Some(nv) = self.admit(&mut span, t, w, bound) {
                        dim += 1;
                        queue.push_back((t, nv));
                    }
                }
            }
        }
        span
    }

    /// Reduces `w` against the current span of weight space `t` and adds
    /// the remainder if it is significant. Each span keeps its vectors in
    /// reduced echelon form (a pivot entry equal to 1, zero at the other
    /// pivots), so reduction is plain elimination and never mixes scales the
    /// way an orthogonal projection would.
    ///
    /// `bound` holds, per component, the magnitude the entry of `w` was summed
    /// from. A component counts as zero when it is below `tol` times the
    /// magnitude of the terms that produced it.
    fn admit(
        &mut self,
        span: &mut HashMap<usize, Vec<(usize, Vector)>>,
        t: usize,
        w: Vector,
        bound: Vector,
    ) -> Option<Vector> {
        let basis = span.entry(t).or_default();
        let mut r = w;
        let mut mag = bound;
        for (p, b) in basis.iter() {
            let c = r[*p];
            if c != 0.0 {
                r -= b * c;
                mag += b.abs() * c.abs();
                r[*p] = 0.0;
            }
        }
        let mut pivot: Option<(usize, f64)> = None;
        for i in 0..r.len() {
            let x = r[i].abs();
            if x == 0.0 {
                continue;
            }
            let rel = x / mag[i];
            if rel <= self.tol {
                r[i] = 0.0;
                continue;
            }
            if rel < RANK_BAND * self.tol {
                self.inconclusive = true;
            }
            if pivot.is_none_or(|(_, best)| rel > best) {
                pivot = Some((i, rel));
            }
        }
        let (p, _) = pivot?;
        let v = &r / r[p];
        for (_, b) in basis.iter_mut() {
            let c = b[p];
            if c != 0.0 {
                *b -= &v * c;
                b[p] = 0.0;
            }
        }
        basis.push((p, v.clone()));
        Some(v)
    }

    fn support(&self, span: &HashMap<usize, Vec<(usize, Vector)>>) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for (t, vs) in span {
            for (_, v) in vs {
                for (c, &i) in self.spaces.members[*t].iter().enumerate() {
                    if v[c] != 0.0 {
                        out.insert(i);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

fn dimension(span: &HashMap<usize, Vec<(usize, Vector)>>) -> usize {
    span.values().map(Vec::len).sum()
}

/// Scales the rows, then the columns, of `a` to unit maximum (powers of two,
/// zero lines untouched) and returns the column factors `c`: a null vector
/// `x` of the scaled matrix gives the null vector `c .* x` of the original.
fn equilibrate(a: &mut Matrix) -> Vector {
    let pow2 = |m: f64| if m > 0.0 { (-m.log2().round()).exp2() } else { 1.0 };
    for r in 0..a.nrows() {
        let f = pow2(a.row(r).amax());
        a.row_mut(r).scale_mut(f);
    }
    let mut c = Vector::zeros(a.ncols());
    for j in 0..a.ncols() {
        c[j] = pow2(a.column(j).amax());
        a.column_mut(j).scale_mut(c[j]);
    }
    c
}

/// Singular vectors: per weight space, the common kernel of `E12` and `E23`.
fn singular_vectors(
    module: &Module,
    matrices: &[Matrix],
    spaces: &WeightSpaces,
    tol: f64,
) -> (Vec<(usize, Vector)>, bool) {
    let present: Vec<Generator> = Generator::ALL
        .iter()
        .copied()
        .filter(|&g| module.matrix(g).is_some())
        .collect();
    let raising: Vec<&Matrix> = [Generator::E12, Generator::E23]
        .iter()
        .filter_map(|g| present.iter().position(|p| p == g).map(|i| &matrices[i]))
        .collect();
    let n = module.dim();
    let mut out = Vec::new();
    let mut inconclusive = false;
    for (t, cols) in spaces.members.iter().enumerate() {
        let mut stacked = Matrix::zeros(n * raising.len(), cols.len());
        for (k, m) in raising.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                for r in 0..n {
                    stacked[(k * n + r, c)] = m[(r, j)];
                }
            }
        }
        // Row and column scaling leave the rank alone; equilibrating first
        // keeps the singular values from reflecting basis-vector scales.
        let col_scale = equilibrate(&mut stacked);
        let ns = null_space(&stacked, tol);
        inconclusive |= ns.inconclusive;
        out.extend(ns.basis.into_iter().map(|v| (t, v.component_mul(&col_scale))));
    }
    (out, inconclusive)
}

/// Decides irreducibility of a module carrying the generator matrices.
///
/// The module is irreducible iff it has exactly one singular vector and that
/// vector generates everything. Independently, the closure of every basis
/// vector is computed and each proper one is reported by its support.
pub fn irreducibility_test(module: &Module, tol: f64) -> IrreducibilityReport {
    let n = module.dim();
    let spaces = WeightSpaces::new(module);
    let matrices = balanced(module);
    let (singular, mut inconclusive) = singular_vectors(module, &matrices, &spaces, tol);
    let mut closure = Closure::new(&matrices, &spaces, tol);

    let top_closure_dim = match singular.first() {
        Some((t, v)) => dimension(&closure.generate(*t, v.clone())),
        None => 0,
    };

    let mut proper: Vec<InvariantSubspace> = Vec::new();
    let mut union = BTreeSet::new();
    for i in 0..n {
        let t = spaces.owner[i];
        let pos = spaces.members[t].iter().position(|&j| j == i).unwrap();
        let mut e = Vector::zeros(spaces.members[t].len());
        e[pos] = 1.0;
        let span = closure.generate(t, e);
        let d = dimension(&span);
        if d < n {
            let support = closure.support(&span);
            union.extend(support.iter().copied());
            let s = InvariantSubspace { dim: d, support };
            if !proper.contains(&s) {
                proper.push(s);
            }
        }
    }
    inconclusive |= closure.inconclusive;
    proper.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.support.cmp(&b.support)));

    IrreducibilityReport {
        dim: n,
        irreducible: n > 0 && singular.len() == 1 && top_closure_dim == n && proper.is_empty(),
        inconclusive,
        singular_vector_count: singular.len(),
        top_closure_dim,
        proper_subspaces: proper,
        union_support: union.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fullrep::{build_representation, factor_representation, HighestWeight, Normalization};
    use crate::qarith::DeformationParameter;

    fn rep(a: i64, b: i64, c: f64, q: f64) -> crate::fullrep::Representation {
        build_representation(
            &HighestWeight::new(a, b, c).unwrap(),
            &DeformationParameter::generic(q).unwrap(),
            &Normalization::default(),
        )
        .unwrap()
    }

    #[test]
    fn typical_is_irreducible() {
        let r = rep(1, 0, 5.0, 1.7);
        let t = irreducibility_test(&r.module, 1e-9);
        assert!(t.irreducible && !t.inconclusive, "{t:?}");
        assert_eq!(t.singular_vector_count, 1);
        assert_eq!(t.top_closure_dim, 8);
        assert!(t.union_support.is_empty());
    }

    #[test]
    fn class_one_support() {
        let r = rep(1, 0, -2.0, 1.7);
        let t = irreducibility_test(&r.module, 1e-9);
        assert!(!t.irreducible);
        assert_eq!(t.union_support, r.indices_of(&[2, 3]));
        assert_eq!(t.singular_vector_count, 2);
        let f = factor_representation(&r).unwrap();
        assert!(irreducibility_test(&f.module, 1e-9).irreducible);
    }

    #[test]
    fn class_two_support() {
        let r = rep(1, 0, 0.0, 1.7);
        let t = irreducibility_test(&r.module, 1e-9);
        assert!(!t.irreducible);
        assert_eq!(t.union_support, r.indices_of(&[1, 3]));
        let f = factor_representation(&r).unwrap();
        assert!(irreducibility_test(&f.module, 1e-9).irreducible);
    }

    #[test]
    fn large_weight_typical() {
        let r = rep(10, 0, std::f64::consts::PI, std::f64::consts::E);
        let t = irreducibility_test(&r.module, 1e-9);
        assert!(t.irreducible && !t.inconclusive, "{t:?}");
    }

    #[test]
    fn one_dimensional() {
        let r = rep(0, 0, 0.0, 0.5);
        let f = factor_representation(&r).unwrap();
        let t = irreducibility_test(&f.module, 1e-9);
        assert!(t.irreducible);
        assert_eq!(t.dim, 1);
    }
}
