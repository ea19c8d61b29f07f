//! Coxeter systems given as decorated Dynkin diagrams: normal closures of
//! standard parabolic subgroups, exact multi-variable growth series, and
//! f-polynomials of the nerves of right-angled closures.

pub mod classify;
pub mod cli;
pub mod closure;
pub mod diagram;
pub mod fixtures;
pub mod growth;
pub mod nerve;
pub mod numeric;
pub mod series;
pub mod words;
