//! Grid scans: build, classify and verify every (weight, q, normalization)
//! cell. Cells are independent, so with the `parallel` feature they are
//! evaluated on the rayon pool; [`scan_sequential`] is always available.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::fullrep::{
    build_representation, factor_representation, irreducibility_test, HighestWeight,
    Normalization, TypicalityClass,
};
use crate::qarith::{DeformationMode, DeformationParameter};
use crate::verify::{run_suite, SuiteOptions};

/// One grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub weight: HighestWeight,
    pub q: DeformationParameter,
    pub normalization: Normalization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub cells: Vec<ScanCell>,
    pub tolerance: f64,
    /// Also run the closure test, and verify the factor module of each
    /// non-typical cell.
    pub irreducibility: bool,
}

impl ScanSpec {
    /// Cartesian grid. Weights with `m13 < m23` are skipped.
    pub fn grid(
        m13: &[i64],
        m23: &[i64],
        m33: &[f64],
        q: &[DeformationParameter],
        normalizations: &[Normalization],
        tolerance: f64,
    ) -> Self {
        let mut cells = Vec::new();
        for &a in m13 {
            for &b in m23 {
                if a < b {
                    continue;
                }
                for &c in m33 {
                    for &qv in q {
                        for &n in normalizations {
                            cells.push(ScanCell {
                                weight: HighestWeight { m13: a, m23: b, m33: c },
                                q: qv,
                                normalization: n,
                            });
                        }
                    }
                }
            }
        }
        Self {
            cells,
            tolerance,
            irreducibility: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub weight: HighestWeight,
    pub q: f64,
    pub mode: DeformationMode,
    pub normalization: Normalization,
    pub dim: usize,
    pub subspace_dims: [usize; 4],
    pub class: Option<TypicalityClass>,
    pub pass: bool,
    pub max_deviation: f64,
    /// Catalog ids that failed.
    pub failed: Vec<String>,
    /// Closure verdict on the full module (when requested).
    pub irreducible: Option<bool>,
    /// Factor module suite and closure verdict (non-typical cells, when requested).
    pub factor_pass: Option<bool>,
    pub factor_irreducible: Option<bool>,
    /// Set when the cell could not be built at all.
    pub error: Option<String>,
}

fn evaluate(cell: &ScanCell, spec: &ScanSpec) -> Result<ScanRow> {
    let options = SuiteOptions {
        tolerance: spec.tolerance,
    };
    let rep = build_representation(&cell.weight, &cell.q, &cell.normalization)?;
    let report = run_suite(&rep, &options)?;
    let mut row = ScanRow {
        weight: cell.weight,
        q: cell.q.value(),
        mode: cell.q.mode(),
        normalization: cell.normalization,
        dim: rep.dim(),
        subspace_dims: rep.subspace_dims(),
        class: Some(rep.classification.class),
        pass: report.passed(),
        max_deviation: report.max_deviation(),
        failed: report.failures().map(|c| c.id.clone()).collect(),
        irreducible: None,
        factor_pass: None,
        factor_irreducible: None,
        error: None,
    };
    if spec.irreducibility {
        let t = irreducibility_test(&rep.module, spec.tolerance);
        row.irreducible = (!t.inconclusive).then_some(t.irreducible);
        if rep.classification.class != TypicalityClass::Typical {
            let f = factor_representation(&rep)?;
            row.factor_pass = Some(run_suite(&f, &options)?.passed());
            let t = irreducibility_test(&f.module, spec.tolerance);
            row.factor_irreducible = (!t.inconclusive).then_some(t.irreducible);
        }
    }
    Ok(row)
}

fn evaluate_cell(cell: &ScanCell, spec: &ScanSpec) -> ScanRow {
    evaluate(cell, spec).unwrap_or_else(|e| ScanRow {
        weight: cell.weight,
        q: cell.q.value(),
        mode: cell.q.mode(),
        normalization: cell.normalization,
        dim: 0,
        subspace_dims: [0; 4],
        class: None,
        pass: false,
        max_deviation: f64::NAN,
        failed: Vec::new(),
        irreducible: None,
        factor_pass: None,
        factor_irreducible: None,
        error: Some(e.to_string()),
    })
}

/// Evaluates every cell on the current thread, in order.
pub fn scan_sequential(spec: &ScanSpec) -> Vec<ScanRow> {
    spec.cells.iter().map(|c| evaluate_cell(c, spec)).collect()
}

/// Evaluates the cells concurrently; rows come back in cell order.
#[cfg(feature = "parallel")]
pub fn scan_parallel(spec: &ScanSpec) -> Vec<ScanRow> {
    spec.cells.par_iter().map(|c| evaluate_cell(c, spec)).collect()
}

/// [`scan_parallel`] when the `parallel` feature is enabled, otherwise
/// [`scan_sequential`]. A failing cell never aborts the scan.
pub fn scan(spec: &ScanSpec) -> Vec<ScanRow> {
    #[cfg(feature = "parallel")]
    {
        scan_parallel(spec)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_sequential(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> ScanSpec {
        let q = [DeformationParameter::generic(0.5).unwrap()];
        ScanSpec::grid(&[0, 1, 2], &[0, 1], &[-2.0, 0.0, 1.5], &q, &[Normalization::default()], 1e-9)
    }

    #[test]
    fn grid_skips_non_dominant() {
        let s = small_spec();
        assert_eq!(s.cells.len(), 5 * 3);
        assert!(s.cells.iter().all(|c| c.weight.m13 >= c.weight.m23));
    }

    #[test]
    fn empty_grid() {
        let s = ScanSpec::grid(&[], &[0], &[0.0], &[], &[], 1e-9);
        assert!(scan(&s).is_empty());
    }

    #[test]
    fn rows_in_cell_order_and_passing() {
        let s = small_spec();
        let rows = scan(&s);
        assert_eq!(rows.len(), s.cells.len());
        for (row, cell) in rows.iter().zip(&s.cells) {
            assert_eq!(row.weight, cell.weight);
            assert!(row.pass, "{row:?}");
        }
        assert_eq!(rows, scan_sequential(&s));
    }

    #[test]
    fn failures_are_rows() {
        let mut s = small_spec();
        s.cells.push(ScanCell {
            weight: HighestWeight { m13: 0, m23: 1, m33: 0.0 },
            q: DeformationParameter::generic(0.5).unwrap(),
            normalization: Normalization::default(),
        });
        let rows = scan(&s);
        let last = rows.last().unwrap();
        assert!(!last.pass && last.error.is_some());
        assert!(rows[..rows.len() - 1].iter().all(|r| r.pass));
    }
}
