//! Finite-window tiling problems as CNF: an embedded CDCL solver, the
//! encoding, enumeration, forced values and DIMACS interchange.

pub mod count;
pub mod dimacs;
pub mod encode;
pub mod solver;

pub use count::{count_exact, count_tables};
pub use dimacs::{export_dimacs, import_solution, parse_dimacs};
pub use encode::{
    count, dump_solution, encode, enumerate, enumerate_projected, feasible_tiles, forced_values, parse_solution, solve, validate,
    CnfInstance,
};
pub use solver::{Lit, SolveResult, Solver};
