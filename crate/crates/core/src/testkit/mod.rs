//! Fixtures, hardness gadgets, a brute-force oracle and seeded generators
//! for testing the solvers against independent code.

pub mod derivative;
pub mod fixtures;
mod gadgets;
mod generate;
mod oracle;

pub use gadgets::{all_a_lift, gadget_inclusion, gadget_ncore, gadget_universality, GadgetError, GadgetPair};
pub use generate::{random_path_template, random_regex, random_rgp, random_unary_pattern, seeded};
pub use oracle::{oracle_n_hom, oracle_walks, GoodPairs, OracleBudget, OracleError};
