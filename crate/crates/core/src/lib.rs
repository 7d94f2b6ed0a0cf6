#![no_std]

extern crate alloc;

pub mod arith;
pub mod bitset;
pub mod descriptor;
pub mod element;
pub mod error;
pub mod module;
pub mod multiplication;
pub mod predicates;
pub mod ring;
pub mod theorems;
pub mod witness;

pub use descriptor::{ModuleSpec, RingSpec};
pub use element::Element;
pub use error::{Error, Result};
pub use module::{Module, ModuleHom, Submodule};
pub use ring::{Ideal, Ring, Verdict};
pub use witness::Witness;
