//! Exact computations on finite-dimensional Lie superalgebras: structure constants over
//! ℚ(i), degenerations checked by `t → 0` limits over ℚ(i)(t), degeneration invariants,
//! second cohomology, and the degeneration graph of the (2,2)-dimensional variety.

pub mod catalog;
pub mod cohomology;
pub mod degeneration;
pub mod exactnum;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod superalg;
