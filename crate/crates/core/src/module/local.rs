use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use super::{Module, Submodule};
use crate::bitset::BitSet;
use crate::descriptor::ModuleSpec;
use crate::error::{Error, Result};
use crate::ring::{localize_ring, Localization, MultiplicativeSet};

/// `S⁻¹M` as `M/K_M` over `S⁻¹R`, with the canonical map `M → S⁻¹M`.
#[derive(Clone, Debug)]
pub struct ModuleLocalization {
    pub module: Module,
    pub ring: Localization,
    pub map: Vec<usize>,
    /// `K_M = { m : sm = 0 for some s ∈ S }`.
    pub kernel: Submodule,
}

impl ModuleLocalization {
    /// `S⁻¹N`, the image of `N`.
    pub fn transport(&self, n: &Submodule) -> Result<Submodule> {
        if n.module() != self.kernel.module() {
            return Err(Error::InvalidSubmodule(format!("{n} is not in the localized module")));
        }
        Ok(Submodule::from_set(&self.module, self.transport_set(n.set())))
    }

    pub(crate) fn transport_set(&self, n: &BitSet) -> BitSet {
        BitSet::from_indices(self.module.order(), n.iter().map(|x| self.map[x]))
    }
}

pub(crate) fn localize(m: &Module, s: &MultiplicativeSet) -> Result<ModuleLocalization> {
    let r = m.scalars();
    if r.is_integers() {
        return Err(Error::Unsupported("localizing modules over the integers".into()));
    }
    if s.ring() != r {
        return Err(Error::RingMismatch);
    }
    let ring = localize_ring(s);
    let members = s.members();
    let n = m.order();
    let kernel = BitSet::from_indices(n, (0..n).filter(|&x| members.iter().any(|&t| m.act_raw(t, x) == 0)));
    let reps: Vec<usize> =
        ring.ring.elements().iter().map(|e| r.index_of(e).expect("localized labels are ring labels")).collect();
    let spec = ModuleSpec::Localized { module: Box::new(m.spec().clone()), gens: s.generators().to_vec() };
    let (module, map) = m.quotient_over(&kernel, spec, ring.ring.clone(), Some(&reps));
    Ok(ModuleLocalization { module, ring, map, kernel: Submodule::from_set(m, kernel) })
}
