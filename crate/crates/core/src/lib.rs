pub mod bits;
pub mod check;
pub mod classify;
pub mod elements;
pub mod error;
pub mod ideals;
pub mod localize;
pub mod mult_set;
pub mod ring;
pub mod ring_spec;
pub mod search;
pub mod transfer;
pub mod verify;

pub use bits::{ElemSet, MAX_ELEMENTS};
pub use check::Outcome;
pub use elements::{Analysis, ElementSets, Property, Witness};
pub use error::{Error, Result};
pub use mult_set::MultiplicativeSet;
pub use ring::{Elem, FiniteRing, Ideal, RingHom};
