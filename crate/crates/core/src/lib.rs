//! Computational tools for local embeddings of finite subsets of groups
//! into finite groups.
//!
//! * [`words`]: free group words, word length and closed balls
//! * [`groups`]: group backends (cyclic, symmetric, Cayley tables, products,
//!   finitely generated abelian, free)
//! * [`partial`]: partial multiplication tables and local-embedding checks
//! * [`search`]: backtracking search for local embeddings into finite targets
//! * [`abelian`]: explicit mod-m witnesses for abelian subsets
//! * [`fpgroups`]: finite presentations, induced homomorphisms and ball images
//! * [`cli`]: the `lef` command line

pub mod abelian;
pub mod cli;
pub mod error;
pub mod fpgroups;
pub mod groups;
pub mod partial;
pub mod perm;
pub mod search;
pub mod words;

pub use error::{Error, Result};
pub use groups::{Element, Group, GroupSpec, IndexedGroup};
pub use partial::{Assignment, PartialGroupTable, VerificationReport};
pub use words::{Alphabet, Letter, ReducedWord, Sign};

/// Version tag carried by every JSON artifact.
pub const SCHEMA: &str = "lefkit/1";

pub(crate) fn check_schema(tag: Option<&str>) -> Result<()> {
    match tag {
        None | Some(SCHEMA) => Ok(()),
        Some(other) => Err(Error::InvalidInput(format!(
            "unsupported schema `{other}`, expected `{SCHEMA}`"
        ))),
    }
}
