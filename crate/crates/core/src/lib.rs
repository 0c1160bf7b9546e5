//! Multifraction reduction over gcd-monoids built from finite posets
//! (interval monoids) and from homogeneous presentations, with mechanical
//! certification or refutation of semi-convergence of reduction.

pub mod budget;
pub mod homotopy;
pub mod interval;
pub mod monoid;
pub mod multifraction;
pub mod poset;
pub mod presented;
pub mod report;
pub mod zigzag;

pub use budget::Budgets;
pub use interval::{IMElement, IntervalMonoid};
pub use monoid::{MonoidError, MonoidHandle};
pub use multifraction::Multifraction;
pub use poset::{IntervalRef, Poset, StdPoset};
pub use presented::{Presentation, PresentedMonoid};
