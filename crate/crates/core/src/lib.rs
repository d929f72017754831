//! Multi-semantics world-view solver for epistemic logic programs.
//!
//! The crate parses and grounds epistemic logic programs, evaluates
//! here-and-there and KD45/S5 satisfaction over finite structures, computes
//! world views under the G94, G11, K15, S16, F15 and C19 semantics as well
//! as the M85/S92 autoepistemic fixpoints, and ships a property laboratory
//! (constraint monotonicity, epistemic splitting, foundedness, supra-ASP,
//! supra-S5, epistemic tightness) with a brute-force oracle and a
//! reproducible random-program generator for differential testing.

pub mod ast;
pub mod belief;
pub mod ground;
pub mod ht;
pub mod model;
pub mod parser;
pub mod reduct;
pub mod rewrite;

pub use ast::{Atom, BodyLit, Formula, Lit, Modality, ObjLit, Program, Rule, SubjLit, Term, Theory};
pub use model::{Interpretation, Universe, World, WorldView};
pub use parser::{parse_program, ParseError};
