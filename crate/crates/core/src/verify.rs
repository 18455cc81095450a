//! The relation catalog, evaluated as matrix identities on a built module.
//!
//! Commutators are used between two generators unless both are odd, in which
//! case the anticommutator is used. Every check records its largest deviation
//! (see [`crate::linalg::residual`]) and where it occurred.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fullrep::{
    basis_change, build_representation, HighestWeight, Normalization, Representation,
    TypicalityClass,
};
use crate::generator::Generator;
use crate::hopf::{adjoint_check, check_antipode, check_counit};
use crate::induced::{induced_module, verify_pushing_relations};
use crate::linalg::{difference, residual, Deviation, Matrix, Term};
use crate::module::{BasisKind, Cartan, Module};
use crate::qarith::{DeformationMode, DeformationParameter};

/// Default comparison tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relation identifiers, in report order.
pub const CATALOG: [&str; 17] = [
    "cartan-commute",
    "cartan-raising",
    "cartan-lowering",
    "even-bracket",
    "odd-anticommutator",
    "mixed-commute",
    "cartan-definition",
    "odd-nilpotent",
    "serre",
    "composite-definition",
    "adjoint-form",
    "odd-pushing",
    "general-pushing",
    "antipode",
    "counit",
    "basis-change-inversion",
    "route-equality",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub max_deviation: f64,
    pub pass: bool,
    /// False when the check has no meaning for this module (for example the
    /// basis change of a tensor product); such checks always pass.
    pub applicable: bool,
    /// Matrix entry where the largest deviation occurred.
    pub row: Option<usize>,
    pub col: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationContext {
    pub weight: Option<HighestWeight>,
    pub q: f64,
    pub mode: DeformationMode,
    pub normalization: Option<Normalization>,
    pub basis: BasisKind,
    pub factor_of: Option<TypicalityClass>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub tolerance: f64,
    pub context: VerificationContext,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Largest deviation over the applicable checks.
    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.applicable)
            .map(|c| c.max_deviation)
            .fold(0.0, |a, b| if b.is_nan() { b } else { a.max(b) })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.applicable, c.pass) {
                (false, _) => "n/a ",
                (true, true) => "pass",
                (true, false) => "FAIL",
            };
            write!(f, "{status} {:<24} {:.3e}", c.id, c.max_deviation)?;
            if let (false, Some(r), Some(col)) = (c.pass, c.row, c.col) {
                write!(f, " at ({r}, {col})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub tolerance: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Collects the deviation of each catalog entry.
struct Collector {
    tolerance: f64,
    checks: Vec<Check>,
}

impl Collector {
    fn record(&mut self, id: &str, d: Option<Deviation>) {
        let (value, row, col, applicable) = match d {
            Some(d) => (d.value, Some(d.row), Some(d.col), true),
            None => (0.0, None, None, false),
        };
        self.checks.push(Check {
            id: id.to_string(),
            max_deviation: value,
            pass: !applicable || value < self.tolerance,
            applicable,
            row,
            col,
        });
    }
}

fn scalar(value: f64) -> Deviation {
    Deviation {
        value,
        row: 0,
        col: 0,
    }
}

/// Relations that involve only the generator matrices of one module.
fn algebra_checks(m: &Module, out: &mut Collector) -> Result<()> {
    let q = m.q();
    let e = |g: Generator| m.require(g);
    let e11 = e(Generator::E11)?;
    let e22 = e(Generator::E22)?;
    let e33 = e(Generator::E33)?;
    let e12 = e(Generator::E12)?;
    let e21 = e(Generator::E21)?;
    let e23 = e(Generator::E23)?;
    let e32 = e(Generator::E32)?;
    let e13 = e(Generator::E13)?;
    let e31 = e(Generator::E31)?;
    let cartan = [e11, e22, e33];
    let raising = [e12, e23];
    let lowering = [e21, e32];

    let mut d = Deviation::default();
    for a in &cartan {
        for b in &cartan {
            d = d.max(residual(&[Term::plus(vec![a, b]), Term::minus(vec![b, a])]));
        }
    }
    out.record("cartan-commute", Some(d));

    let mut up = Deviation::default();
    let mut down = Deviation::default();
    for (i, h) in cartan.iter().enumerate() {
        for j in 0..2 {
            let c = delta(i, j) - delta(i, j + 1);
            up = up.max(residual(&[
                Term::plus(vec![h, raising[j]]),
                Term::minus(vec![raising[j], h]),
                Term::new(-c, vec![raising[j]]),
            ]));
            down = down.max(residual(&[
                Term::plus(vec![h, lowering[j]]),
                Term::minus(vec![lowering[j], h]),
                Term::new(c, vec![lowering[j]]),
            ]));
        }
    }
    out.record("cartan-raising", Some(up));
    out.record("cartan-lowering", Some(down));

    let h1 = m.q_bracket(Cartan::H1);
    let h2 = m.q_bracket(Cartan::H2);
    out.record(
        "even-bracket",
        Some(residual(&[
            Term::plus(vec![e12, e21]),
            Term::minus(vec![e21, e12]),
            Term::minus(vec![&h1]),
        ])),
    );
    out.record(
        "odd-anticommutator",
        Some(residual(&[
            Term::plus(vec![e23, e32]),
            Term::plus(vec![e32, e23]),
            Term::minus(vec![&h2]),
        ])),
    );
    out.record(
        "mixed-commute",
        Some(
            residual(&[Term::plus(vec![e12, e32]), Term::minus(vec![e32, e12])]).max(residual(&[
                Term::plus(vec![e21, e23]),
                Term::minus(vec![e23, e21]),
            ])),
        ),
    );

    // the Cartan matrices must be diagonal for q^H to be read off diagonals
    let mut cd = Deviation::default();
    for c in &cartan {
        let diag = Matrix::from_diagonal(&c.diagonal());
        cd = cd.max(difference(c, &diag));
    }
    let sum1 = e11 - e22;
    let sum2 = e22 + e33;
    cd = cd
        .max(difference(&m.cartan(Cartan::H1), &sum1))
        .max(difference(&m.cartan(Cartan::H2), &sum2));
    out.record("cartan-definition", Some(cd));

    out.record(
        "odd-nilpotent",
        Some(residual(&[Term::plus(vec![e23, e23])]).max(residual(&[Term::plus(vec![e32, e32])]))),
    );

    let qv = q.pow(1.0);
    out.record(
        "serre",
        Some(
            residual(&[Term::plus(vec![e12, e13]), Term::new(-qv, vec![e13, e12])]).max(residual(
                &[Term::plus(vec![e21, e31]), Term::new(-qv, vec![e31, e21])],
            )),
        ),
    );

    let qi = 1.0 / qv;
    let def = residual(&[
        Term::plus(vec![e12, e23]),
        Term::new(-qi, vec![e23, e12]),
        Term::minus(vec![e13]),
    ])
    .max(residual(&[
        Term::plus(vec![e21, e32]),
        Term::new(-qi, vec![e32, e21]),
        Term::plus(vec![e31]),
    ]))
    .max(residual(&[Term::plus(vec![e13, e13])]))
    .max(residual(&[Term::plus(vec![e31, e31])]));
    out.record("composite-definition", Some(def));

    out.record("adjoint-form", Some(scalar(adjoint_check(m)?.worst())));

    let push = verify_pushing_relations(m)?;
    for id in ["odd-pushing", "general-pushing"] {
        let worst = push
            .checks
            .iter()
            .filter(|c| c.relation == id)
            .map(|c| Deviation {
                value: c.deviation,
                row: c.row,
                col: c.col,
            })
            .fold(Deviation::default(), Deviation::max);
        out.record(id, Some(worst));
    }

    out.record("antipode", Some(scalar(check_antipode(m)?.worst())));
    out.record("counit", Some(scalar(check_counit(m)?.worst())));
    Ok(())
}

/// Runs the algebra, Hopf and pushing checks on an arbitrary module carrying
/// all nine generators. The basis-change checks are marked not applicable.
pub fn run_suite_module(
    module: &Module,
    context: VerificationContext,
    options: &SuiteOptions,
) -> Result<VerificationReport> {
    let mut out = Collector {
        tolerance: options.tolerance,
        checks: Vec::new(),
    };
    algebra_checks(module, &mut out)?;
    out.record("basis-change-inversion", None);
    out.record("route-equality", None);
    Ok(VerificationReport {
        checks: out.checks,
        tolerance: options.tolerance,
        context,
    })
}

/// The full catalog on a representation in the reduced basis or on one of
/// its factor modules. Route equality compares the representation's own
/// matrices (restricted for factor modules) with the conjugated induced-basis
/// matrices.
pub fn run_suite(rep: &Representation, options: &SuiteOptions) -> Result<VerificationReport> {
    let context = VerificationContext {
        weight: Some(rep.weight),
        q: rep.q.value(),
        mode: rep.q.mode(),
        normalization: Some(rep.normalization),
        basis: rep.module.kind(),
        factor_of: rep.factor_of,
        dim: rep.dim(),
    };
    let mut out = Collector {
        tolerance: options.tolerance,
        checks: Vec::new(),
    };
    algebra_checks(&rep.module, &mut out)?;

    let bc = basis_change(&rep.weight, &rep.q, &rep.normalization)?;
    out.record("basis-change-inversion", Some(bc.inversion_deviation()));

    let full = build_representation(&rep.weight, &rep.q, &rep.normalization)?;
    let keep: Vec<usize> = rep
        .basis
        .iter()
        .map(|v| full.basis.iter().position(|w| w == v))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            crate::error::Error::Consistency("representation basis is not a subset of the reduced basis".into())
        })?;
    let induced = induced_module(&rep.weight, &rep.q)?;
    let mut d = Deviation::default();
    for g in Generator::ALL {
        d = d.max(bc.route_deviation(
            induced.require(g)?,
            &induced.magnitude(g)?,
            rep.module.require(g)?,
            &rep.module.magnitude(g)?,
            &keep,
        ));
    }
    out.record("route-equality", Some(d));

    Ok(VerificationReport {
        checks: out.checks,
        tolerance: options.tolerance,
        context,
    })
}

/// Per-generator comparison of the two construction routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteReport {
    pub per_generator: Vec<(Generator, f64)>,
    pub inversion: f64,
}

impl RouteReport {
    pub fn max_deviation(&self) -> f64 {
        self.per_generator
            .iter()
            .map(|(_, d)| *d)
            .fold(self.inversion, f64::max)
    }
}

/// Builds both routes independently and compares every generator.
pub fn route_equality(
    hw: &HighestWeight,
    q: &DeformationParameter,
    a: &Normalization,
) -> Result<RouteReport> {
    let reduced = build_representation(hw, q, a)?;
    let induced = induced_module(hw, q)?;
    let bc = basis_change(hw, q, a)?;
    let all: Vec<usize> = (0..reduced.dim()).collect();
    let per_generator = Generator::ALL
        .iter()
        .map(|&g| {
            let d = bc.route_deviation(
                induced.require(g)?,
                &induced.magnitude(g)?,
                reduced.matrix(g),
                &reduced.module.magnitude(g)?,
                &all,
            );
            Ok((g, d.value))
        })
        .collect::<Result<_>>()?;
    Ok(RouteReport {
        per_generator,
        inversion: bc.inversion_deviation().value,
    })
}
