//! Sparse exterior algebra over the fixed 7-dimensional dual space
//! spanned by `e^1..e^7`.

mod form;
mod index;
mod parse;

pub use form::{KForm, Vector};
pub use index::MultiIndex;
pub use parse::{parse_form, parse_form_of_degree};

pub use crate::metric::inner_product;
