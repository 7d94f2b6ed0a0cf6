//! Construction descriptors for rings and modules.
//!
//! Every ring and module remembers the descriptor it was built from, and the
//! `Display` impls print the textual instance grammar understood by the
//! `wcprime` front end.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::element::{join, Element};
use crate::error::Result;
use crate::module::Module;
use crate::ring::{Ideal, Ring};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingSpec {
    Zn(u64),
    Product(Vec<RingSpec>),
    Quotient(Box<RingSpec>, Vec<Element>),
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleSpec {
    /// `R/I` for the ideal generated by the listed elements.
    Cyclic {
        ring: RingSpec,
        ideal: Vec<Element>,
    },
    /// `Z_{d1} + ... + Z_{dk}` with integer scalars.
    Abelian(Vec<u64>),
    DirectSum(Vec<ModuleSpec>),
    /// Componentwise module over a product ring.
    OverProduct {
        ring: RingSpec,
        parts: Vec<ModuleSpec>,
    },
    Quotient {
        module: Box<ModuleSpec>,
        gens: Vec<Element>,
    },
    Free {
        ring: RingSpec,
        rank: usize,
    },
    /// A submodule regarded as a module in its own right.
    Sub {
        module: Box<ModuleSpec>,
        gens: Vec<Element>,
    },
    /// Localization at the multiplicative set generated by `gens`.
    Localized {
        module: Box<ModuleSpec>,
        gens: Vec<Element>,
    },
}

impl RingSpec {
    pub fn build(&self) -> Result<Ring> {
        match self {
            RingSpec::Zn(n) => Ring::zn(*n),
            RingSpec::Integers => Ok(Ring::integers()),
            RingSpec::Product(fs) => {
                let rings = fs.iter().map(RingSpec::build).collect::<Result<Vec<_>>>()?;
                Ring::product(&rings)
            }
            RingSpec::Quotient(base, gens) => {
                let base = base.build()?;
                let ideal = Ideal::from_generators(&base, gens)?;
                Ok(Ring::quotient(&base, &ideal)?.0)
            }
        }
    }
}

impl ModuleSpec {
    pub fn build(&self) -> Result<Module> {
        Module::from_spec(self)
    }

    /// Ring descriptor of the scalar ring of the module this builds.
    pub fn scalar_ring(&self) -> RingSpec {
        match self {
            ModuleSpec::Cyclic { ring, .. } | ModuleSpec::OverProduct { ring, .. } | ModuleSpec::Free { ring, .. } => {
                ring.clone()
            }
            ModuleSpec::Abelian(_) => RingSpec::Integers,
            ModuleSpec::DirectSum(parts) => parts.first().map(ModuleSpec::scalar_ring).unwrap_or(RingSpec::Integers),
            ModuleSpec::Quotient { module, .. } | ModuleSpec::Sub { module, .. } => module.scalar_ring(),
            ModuleSpec::Localized { module, .. } => module.scalar_ring(),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(n) => write!(f, "Z{n}"),
            RingSpec::Integers => f.write_str("ZZ"),
            RingSpec::Product(fs) => {
                f.write_str("prod(")?;
                for (i, r) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{r}")?;
                }
                f.write_str(")")
            }
            RingSpec::Quotient(base, gens) => write!(f, "quot({base};{})", join(gens)),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, ms: &[ModuleSpec]| -> fmt::Result {
            for (i, m) in ms.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{m}")?;
            }
            Ok(())
        };
        match self {
            ModuleSpec::Cyclic { ring, ideal } => write!(f, "cyc({ring};{})", join(ideal)),
            ModuleSpec::Abelian(ds) => {
                f.write_str("ab(")?;
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_str(")")
            }
            ModuleSpec::DirectSum(parts) => {
                f.write_str("dsum(")?;
                list(f, parts)?;
                f.write_str(")")
            }
            ModuleSpec::OverProduct { ring, parts } => {
                write!(f, "pmod({ring};")?;
                list(f, parts)?;
                f.write_str(")")
            }
            ModuleSpec::Quotient { module, gens } => write!(f, "qmod({module};{})", join(gens)),
            ModuleSpec::Free { ring, rank } => write!(f, "free({ring};{rank})"),
            ModuleSpec::Sub { module, gens } => write!(f, "smod({module};{})", join(gens)),
            ModuleSpec::Localized { module, gens } => write!(f, "loc({module};{})", join(gens)),
        }
    }
}
