//! Differential testing of AST mapping algorithms.
//!
//! Node mappings from several algorithms are refined into statement and
//! token mappings, compared pairwise, and every disagreement is judged with
//! statement measures (NIT, PM) and token measures (TYPE, STMT, VAL, LLCS).

pub mod ast;
pub mod error;
pub mod harness;
pub mod judge;
pub mod mappers;
pub mod refine;
pub mod tokenizer;

pub use error::{Error, Result, SchemaError, SyntaxError};
