use alloc::vec::Vec;
use core::fmt;

/// Canonical element of a ring or module: an integer or a tuple of elements.
///
/// The derived order is lexicographic and matches the carrier index order of
/// every structure in this crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Int(u64),
    Tuple(Vec<Element>),
}

impl Element {
    pub fn tuple(parts: impl IntoIterator<Item = Element>) -> Self {
        Element::Tuple(parts.into_iter().collect())
    }

    pub fn as_int(&self) -> Option<u64> {
        match self {
            Element::Int(v) => Some(*v),
            Element::Tuple(_) => None,
        }
    }
}

impl From<u64> for Element {
    fn from(v: u64) -> Self {
        Element::Int(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Tuple(parts) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Formats a list of elements as a comma-separated generator list.
pub fn join(elems: &[Element]) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::new();
    for (i, e) in elems.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{e}");
    }
    s
}
