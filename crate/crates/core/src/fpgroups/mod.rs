//! Finitely presented groups: words and presentations, the native and
//! computer-algebra presentation formats, Todd–Coxeter coset enumeration
//! over the trivial subgroup and abelianization.

mod abelian;
mod enumerate;
mod namemap;
mod parse;
mod word;

pub use abelian::{abelianization, smith_invariants, AbelianInvariants};
pub use enumerate::{
    index_of_normal_closure, todd_coxeter, todd_coxeter_with_progress, ClosedTable, EnumOutcome, EnumResult,
    EnumStats, EnumerationLimits, Strategy, DEFAULT_MAX_COSETS,
};
pub use namemap::{Binding, BindingCheck, MatrixSource, NameMap};
pub use parse::{load_presentation, parse_presentation, read_presentation, Format, ParseOptions, ParsedPresentation};
pub use word::{free_reduce, normal_closure_quotient, truncate_presentation, Letter, Presentation, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FpError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("truncation to {k} relators out of range (presentation has {count})")]
    TruncationOutOfRange { k: usize, count: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("name map: {0}")]
    NameMap(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for FpError {
    fn from(e: std::io::Error) -> Self {
        FpError::Io(e.to_string())
    }
}
