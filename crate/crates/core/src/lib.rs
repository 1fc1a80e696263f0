//! Exact machinery for turning directed Hamiltonicity into the solvability
//! of a single bounded polynomial system, plus the numeric tooling used to
//! probe that construction: trigonometric polynomials with rational
//! coefficients, arbitrary-precision evaluation, grid/pattern search,
//! interval pruning, and a pulse-timing laboratory over Q(sqrt 2).

pub mod corpus;
pub mod graph;
pub mod report;
pub mod solver;
pub mod pulse;
pub mod quad;
pub mod rat;
pub mod real;
pub mod reduction;
pub mod trig;
