//! Finite-dimensional representations of the quantum superalgebra
//! U_q[gl(2/1)], built in bases adapted to its even subalgebra
//! U_q[gl(2) + gl(1)].
//!
//! ```
//! use uqgl21::{build_representation, run_suite, DeformationParameter, HighestWeight,
//!              Normalization, SuiteOptions};
//!
//! let hw = HighestWeight::new(1, 0, 5.0)?;
//! let q = DeformationParameter::generic(1.7)?;
//! let rep = build_representation(&hw, &q, &Normalization::default())?;
//! assert_eq!(rep.dim(), 8);
//! assert!(run_suite(&rep, &SuiteOptions::default())?.passed());
//! # Ok::<(), uqgl21::Error>(())
//! ```

pub mod dump;
pub mod error;
pub mod fullrep;
pub mod generator;
pub mod gzrep;
pub mod hopf;
pub mod induced;
pub mod linalg;
pub mod module;
pub mod qarith;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
pub use fullrep::{
    basis_change, build_representation, classify, enumerate_reduced_basis, factor_representation,
    irreducibility_test, HighestWeight, Normalization, Representation, TypicalityClass,
};
pub use generator::{Generator, Parity};
pub use module::{BasisKind, Module};
pub use qarith::{q_factorial, q_number, DeformationMode, DeformationParameter};
pub use verify::{route_equality, run_suite, SuiteOptions, VerificationReport};
