//! Words, presentations and the integer linear algebra behind abelianization.

mod presentation;
mod snf;
mod tietze;
mod word;

pub use presentation::{abelianization, evaluate_word, Abelianization, Generator, Presentation};
pub use snf::{smith_diagonal, smith_normal_form, IntMatrix, SmithForm};
pub use tietze::tietze_simplify;
pub use word::{cyclic_reduce, free_reduce, is_commutator_relator, Word, WordDisplay};
