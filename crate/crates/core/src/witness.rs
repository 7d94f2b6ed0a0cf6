use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::element::join;
use crate::module::{Module, Submodule};
use crate::ring::{Ideal, Ring};

/// Named values that certify a violated condition, e.g. `a=2 b=2 m=1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness(pub Vec<(String, String)>);

impl Witness {
    pub fn new() -> Self {
        Witness(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    /// Appends every entry of `other`, prefixing keys with `prefix`.
    pub fn extend(mut self, prefix: &str, other: &Witness) -> Self {
        for (k, v) in &other.0 {
            self.0.push((alloc::format!("{prefix}{k}"), v.clone()));
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Renders an effective scalar of `m`.
pub(crate) fn scalar(m: &Module, r: usize) -> String {
    m.scalar_label(r).to_string()
}

pub(crate) fn element(m: &Module, x: usize) -> String {
    m.element(x).to_string()
}

/// Renders an ideal of the effective ring by generators, e.g. `(2)`.
pub(crate) fn eff_ideal(m: &Module, set: &BitSet) -> String {
    render_ideal(m.eff_ring(), set)
}

pub(crate) fn render_ideal(r: &Ring, set: &BitSet) -> String {
    alloc::format!("({})", join(&Ideal::from_set(r, set.clone()).generators()))
}

pub(crate) fn submodule(m: &Module, set: &BitSet) -> String {
    Submodule::from_set(m, set.clone()).to_string()
}
