//! Finite graded and bigraded categories over finite monoidal bases.

pub mod bifunctor;
pub mod bigraded;
pub mod builtins;
pub mod duoidal;
pub mod envelope;
pub mod error;
pub mod fincat;
pub mod format;
pub mod funcat;
pub mod graded;
pub mod modules;
pub mod monoidal;
mod par;
pub mod report;

pub use bigraded::{BigradedCat, Square};
pub use error::{Error, Result};
pub use fincat::{FinCat, FinFunctor, FinPresheaf, MorIx, ObjIx};
pub use graded::{check_graded, Elem, ElemIx, GradedCat, GradedFunctor, GradedTables, Limits};
pub use monoidal::{FinMonCat, OpmonFunctor};
pub use report::{CheckReport, Violation};
