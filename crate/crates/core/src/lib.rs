//! Navigational homomorphisms between regular graph patterns.
//!
//! A regular graph pattern (RGP) is a digraph whose arcs carry regular
//! expressions. An n-homomorphism `P → Q` maps the vertices of `P` to those of
//! `Q` so that every arc `(x, y)` of `P` labelled `E` is witnessed by a walk
//! `W` of `Q` from `f(x)` to `f(y)` with `L(label(W)) ⊆ L(E)`.
//!
//! * [`regex`]: expressions, automata, inclusion and universality.
//! * [`rgp`]: the pattern model, its JSON/DOT formats and structural predicates.
//! * [`walk`]: witness-walk search for one label over a target.
//! * [`nhom`]: the general decision procedure, certificates and n-cores.
//! * [`unary`]: polynomial solvers for patterns labelled `a` / `a+`.
//! * [`testkit`]: reduction gadgets, brute-force oracles, fixtures and generators.

mod csp;
pub mod nhom;
pub mod regex;
pub mod rgp;
pub mod testkit;
pub mod unary;
pub mod walk;

pub use nhom::{n_hom, verify_n_hom, Budget, NHomomorphism, Solver, SolveError};
pub use regex::{parse_regex, Alphabet, Regex, Word};
pub use rgp::{Rgp, Walk};
