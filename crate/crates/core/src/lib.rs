//! Loop-space decompositions, homotopy groups and rational homotopy of the
//! sphere bundles `S^2 -> M -> N` of rank-3 vector bundles over simply
//! connected closed 4-manifolds `N`.

pub mod linalg;
pub mod loops;
pub mod manifold;
pub mod cli;
pub mod pitables;
pub mod rational;
pub mod series;
