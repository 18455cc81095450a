use std::fs;

use serde::Serialize;

use uqgl21::dump::{matrix_rows, representation_from_json, representation_to_json, Envelope};
use uqgl21::fullrep::{IrreducibilityReport, TypicalityReport};
use uqgl21::hopf::{check_antipode, check_coassociativity_of, check_counit, tensor_representation, HopfReport};
use uqgl21::linalg::Matrix;
use uqgl21::scan::{scan, ScanRow, ScanSpec};
use uqgl21::verify::{run_suite_module, RouteReport, VerificationContext};
use uqgl21::{
    build_representation, classify, factor_representation, irreducibility_test, route_equality,
    run_suite, BasisKind, Generator, HighestWeight, Parity, Representation,
    SuiteOptions, TypicalityClass, VerificationReport,
};

use crate::args::{
    parse_generator, parse_int_list, parse_real_list, parse_weight, BuildArgs, CommonArgs,
    DumpArgs, Format, ScanArgs, TensorArgs, VerifyArgs,
};
use crate::error::{CliError, Result};

/// What a command produced: the document to write and the verdict.
pub struct Outcome {
    pub document: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(document: String) -> Self {
        Self {
            document,
            passed: true,
        }
    }
}

fn json_only(common: &CommonArgs) -> Result<()> {
    if common.format == Format::Csv {
        return Err(CliError::Input(
            "csv output is available for a single matrix only (build or tensor with --generator)".into(),
        ));
    }
    Ok(())
}

fn envelope<T: Serialize>(kind: &str, data: T) -> Result<String> {
    Ok(Envelope::new(kind, data).to_json()?)
}

pub fn csv(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format!("{:?}", m[(r, c)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn representation(common: &CommonArgs, factor: bool) -> Result<Representation> {
    let rep = build_representation(&common.weight()?, &common.q()?, &common.normalization()?)?;
    Ok(if factor { factor_representation(&rep)? } else { rep })
}

fn load(path: &std::path::Path) -> Result<Representation> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(representation_from_json(&text)?)
}

fn single_matrix(common: &CommonArgs, generator: &Option<String>, pick: impl Fn(Generator) -> Result<Matrix>) -> Result<Option<Outcome>> {
    match (common.format, generator) {
        (Format::Csv, None) => Err(CliError::Input("csv output needs --generator".into())),
        (Format::Csv, Some(g)) => Ok(Some(Outcome::pass(csv(&pick(parse_generator(g)?)?)))),
        (Format::Json, Some(g)) => {
            let g = parse_generator(g)?;
            let m = pick(g)?;
            Ok(Some(Outcome::pass(envelope(
                "matrix",
                MatrixDoc {
                    generator: g,
                    rows: matrix_rows(&m),
                },
            )?)))
        }
        (Format::Json, None) => Ok(None),
    }
}

#[derive(Serialize)]
struct MatrixDoc {
    generator: Generator,
    rows: Vec<Vec<f64>>,
}

pub fn build(args: &BuildArgs) -> Result<Outcome> {
    let rep = representation(&args.common, args.factor)?;
    if let Some(out) = single_matrix(&args.common, &args.generator, |g| Ok(rep.matrix(g).clone()))? {
        return Ok(out);
    }
    Ok(Outcome::pass(representation_to_json(&rep)?))
}

#[derive(Serialize)]
struct VerifyDoc {
    report: VerificationReport,
    route: RouteReport,
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    json_only(&args.common)?;
    let rep = match &args.input {
        Some(path) => load(path)?,
        None => representation(&args.common, args.factor)?,
    };
    let options = SuiteOptions {
        tolerance: args.common.tolerance()?,
    };
    let report = run_suite(&rep, &options)?;
    let route = route_equality(&rep.weight, &rep.q, &rep.normalization)?;
    let passed = report.passed() && route.max_deviation() < options.tolerance;
    Ok(Outcome {
        document: envelope("verification", VerifyDoc { report, route })?,
        passed,
    })
}

#[derive(Serialize)]
struct ClassifyDoc {
    weight: HighestWeight,
    classification: TypicalityReport,
    subspace_dims: [usize; 4],
    /// Basis indices of the invariant subspace predicted by the class.
    invariant_indices: Vec<usize>,
    closure: IrreducibilityReport,
    factor_closure: Option<IrreducibilityReport>,
}

pub fn classify_cmd(common: &CommonArgs) -> Result<Outcome> {
    json_only(common)?;
    let hw = common.weight()?;
    let q = common.q()?;
    let tol = common.tolerance()?;
    let classification = classify(&hw, &q)?;
    let rep = build_representation(&hw, &q, &common.normalization()?)?;
    let closure = irreducibility_test(&rep.module, tol);
    let factor_closure = match classification.class.invariant_subspaces() {
        [] => None,
        _ => Some(irreducibility_test(&factor_representation(&rep)?.module, tol)),
    };
    let invariant_indices = rep.indices_of(classification.class.invariant_subspaces());
    Ok(Outcome::pass(envelope(
        "classification",
        ClassifyDoc {
            weight: hw,
            subspace_dims: rep.subspace_dims(),
            invariant_indices,
            classification,
            closure,
            factor_closure,
        },
    )?))
}

/// Largest tensor dimension for which the triple-product coassociativity
/// check is run.
const COASSOCIATIVITY_MAX_DIM: usize = 1024;

#[derive(Serialize)]
struct TensorDoc {
    left: HighestWeight,
    right: HighestWeight,
    dim: usize,
    parity: Vec<Parity>,
    labels: Vec<String>,
    report: VerificationReport,
    /// `null` when the triple product is too large.
    coassociativity: Option<HopfReport>,
    counit: HopfReport,
    antipode: HopfReport,
    matrices: std::collections::BTreeMap<Generator, Vec<Vec<f64>>>,
}

pub fn tensor(args: &TensorArgs) -> Result<Outcome> {
    let common = &args.common;
    let left_hw = common.weight()?;
    let right_hw = match &args.with {
        Some(w) => parse_weight(w)?,
        None => left_hw,
    };
    let q = common.q()?;
    let a = common.normalization()?;
    let left = build_representation(&left_hw, &q, &a)?.module;
    let right = build_representation(&right_hw, &q, &a)?.module;
    let t = tensor_representation(&left, &right)?;
    if let Some(out) = single_matrix(common, &args.generator, |g| Ok(t.require(g)?.clone()))? {
        return Ok(out);
    }
    let tol = common.tolerance()?;
    let context = VerificationContext {
        weight: None,
        q: q.value(),
        mode: q.mode(),
        normalization: Some(a),
        basis: BasisKind::Tensor,
        factor_of: None,
        dim: t.dim(),
    };
    let report = run_suite_module(&t, context, &SuiteOptions { tolerance: tol })?;
    let coassociativity = if left.dim() * right.dim() * right.dim() <= COASSOCIATIVITY_MAX_DIM {
        Some(check_coassociativity_of(&left, &right, &right)?)
    } else {
        None
    };
    let counit = check_counit(&t)?;
    let antipode = check_antipode(&t)?;
    let passed = report.passed()
        && coassociativity.as_ref().is_none_or(|r| r.worst() < tol)
        && counit.worst() < tol
        && antipode.worst() < tol;
    let matrices = Generator::ALL
        .iter()
        .filter_map(|&g| t.matrix(g).map(|m| (g, matrix_rows(m))))
        .collect();
    Ok(Outcome {
        document: envelope(
            "tensor",
            TensorDoc {
                left: left_hw,
                right: right_hw,
                dim: t.dim(),
                parity: t.parity().to_vec(),
                labels: t.labels().to_vec(),
                report,
                coassociativity,
                counit,
                antipode,
                matrices,
            },
        )?,
        passed,
    })
}

#[derive(Serialize)]
struct ScanDoc {
    cells: usize,
    passed: usize,
    rows: Vec<ScanRow>,
}

pub fn scan_cmd(args: &ScanArgs) -> Result<Outcome> {
    let common = &args.common;
    json_only(common)?;
    let m23 = parse_int_list(&args.m23, "m23")?;
    let m33 = parse_real_list(&args.m33, "m33")?;
    let qs = match &args.qs {
        Some(s) => parse_real_list(s, "q")?,
        None => vec![common.q],
    };
    let mut qs = qs.into_iter().map(|v| common.q_at(v)).collect::<Result<Vec<_>>>()?;
    qs.dedup();
    let tol = common.tolerance()?;
    let norms = [common.normalization()?];
    let mut spec = match (&args.m13, &args.span) {
        (_, Some(span)) => {
            let span = parse_int_list(span, "span")?;
            let mut spec = ScanSpec::grid(&[], &[], &m33, &qs, &norms, tol);
            for &b in &m23 {
                for &s in &span {
                    let one = ScanSpec::grid(&[b + s], &[b], &m33, &qs, &norms, tol);
                    spec.cells.extend(one.cells);
                }
            }
            spec
        }
        (Some(m13), None) => ScanSpec::grid(&parse_int_list(m13, "m13")?, &m23, &m33, &qs, &norms, tol),
        (None, None) => {
            let hw = common.weight()?;
            ScanSpec::grid(&[hw.m13], &m23, &m33, &qs, &norms, tol)
        }
    };
    spec.irreducibility = args.irreducibility;
    let rows = scan(&spec);
    // typical cells must come out irreducible, non-typical ones reducible
    let closure_ok = |r: &ScanRow| match (r.class, r.irreducible) {
        (Some(c), Some(irr)) => irr == (c == TypicalityClass::Typical),
        _ => true,
    };
    let all = rows.iter().all(|r| {
        r.pass && closure_ok(r) && r.factor_pass != Some(false) && r.factor_irreducible != Some(false)
    });
    let passed_count = rows.iter().filter(|r| r.pass).count();
    Ok(Outcome {
        document: envelope(
            "scan",
            ScanDoc {
                cells: rows.len(),
                passed: passed_count,
                rows,
            },
        )?,
        passed: all,
    })
}

/// Writes the representation document; the verdict requires that the
/// reloaded document verifies with an identical report.
pub fn dump(args: &DumpArgs) -> Result<Outcome> {
    json_only(&args.common)?;
    let rep = match &args.input {
        Some(path) => load(path)?,
        None => representation(&args.common, args.factor)?,
    };
    let options = SuiteOptions {
        tolerance: args.common.tolerance()?,
    };
    let json = representation_to_json(&rep)?;
    let back = representation_from_json(&json)?;
    let before = run_suite(&rep, &options)?;
    let after = run_suite(&back, &options)?;
    let text = |r: &VerificationReport| serde_json::to_string(r).map_err(uqgl21::Error::from);
    let identical = text(&before)? == text(&after)?;
    if !identical {
        eprintln!("reloaded document verifies differently:\n{before}\n{after}");
    }
    eprint!("{after}");
    Ok(Outcome {
        passed: identical && after.passed(),
        document: json,
    })
}
