//! Order-of-magnitude influence diagrams.
//!
//! Values `⟨σ, n⟩` stand for quantities of size about `ε^n` with sign `σ`.
//! The crate provides the value and set calculus, a diagram model, an exact
//! numeric solver, conversion from numbers to orders of magnitude, a
//! qualitative solver and a policy-quality experiment harness.

pub mod bench;
pub mod convert;
pub mod diagram;
pub mod elimination;
pub mod error;
pub mod exact;
pub mod factor;
pub mod oom;
pub mod oom_set;
pub mod oom_solver;
pub mod oracle;
pub mod policy;

pub use diagram::{Diagram, InfluenceDiagram, LoadOptions, OomInfluenceDiagram, VarKind, Variable};
pub use error::{DiagramError, OomError, Result};
pub use oom::{OomValue, Order, Sign};
pub use oom_set::OomSet;
pub use policy::{Policy, PolicySet};
