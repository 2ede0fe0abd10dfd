//! Exact field extensions `K ⊂ L` over ℚ, 𝔽_p and 𝔽_p(t): classification,
//! the composite ring `K + XL[X]`, tensor-algebra separability checks and a
//! harness that runs the characterization statements over a catalog.

pub mod classify;
pub mod cli;
pub mod composite;
pub mod error;
pub mod exactfields;
pub mod harness;
pub mod linalg;
pub mod magid;
pub mod towers;
pub mod unipoly;

pub use error::{Error, Result};
pub use exactfields::{BaseField, Field, FieldElem, Value};
pub use unipoly::Poly;
