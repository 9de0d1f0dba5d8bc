//! Exact computations with ADR algebras of semilocal modules over bound quiver
//! algebras: presentations, modules, the radical-layer stratification, the
//! endomorphism algebra, rejective chains and quasi-hereditary checks. All
//! arithmetic is over a prime field.

pub mod adr;
pub mod basic;
pub mod chain;
pub mod files;
pub mod fuzz;
pub mod linalg;
pub mod module;
pub mod presentation;
pub mod qh;
pub mod report;

pub use adr::{AdrError, AdrModule, Chain, StratTable};
pub use basic::{BasicAlgebra, BasicError, RightBModule};
pub use chain::{
    find_rejective_chain, verify_rejective_chain, verify_total_left_chain, ChainError, ChainReport,
    DEFAULT_SEARCH_BOUND,
};
pub use files::{parse_module_file, FileError};
pub use linalg::{Matrix, Prime, Span};
pub use module::{Module, ModuleError, Morphism};
pub use presentation::{parse_presentation, Presentation, PresentationError, DEFAULT_CAP};
pub use qh::{
    check_left_strongly_qh, check_strongly_qh, four_conditions_suite, OrderSpec, QhError, FourConditionsReport, DEFAULT_GLDIM_CAP,
};
