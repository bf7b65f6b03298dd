//! Tableau prover for dependently typed higher-order logic.

pub mod checker;
pub mod corpus;
pub mod cli;
pub mod erasure;
pub mod problem;
pub mod prover;
pub mod term;
pub mod tableau;
pub mod tptp;
pub mod typing;
