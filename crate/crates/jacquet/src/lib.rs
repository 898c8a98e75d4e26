//! Exact-arithmetic computations around partial Jacquet functors: root data,
//! split Lie algebras, weight modules, quotient towers, filtrations, and
//! multigraded Rees deformations of monomial ideals.

pub mod cli;
pub mod error;
pub mod filtration;
pub mod jacquet;
pub mod lie;
pub mod linalg;
pub mod module;
pub mod pbw;
pub mod rees;
pub mod report;
pub mod roots;
pub mod symbolic;

pub use error::{Error, Result};
pub use linalg::{q, qr, Q};
