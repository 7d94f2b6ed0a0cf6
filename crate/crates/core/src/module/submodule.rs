use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::Module;
use crate::bitset::BitSet;
use crate::element::{join, Element};
use crate::error::{Error, Result};
use crate::ring::Ideal;

/// A submodule, stored as its element set plus a generating list.
#[derive(Clone)]
pub struct Submodule {
    module: Module,
    set: BitSet,
    gens: Vec<usize>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set && self.module == other.module
    }
}

impl Eq for Submodule {}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.module)
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sub({})", join(&self.generators()))
    }
}

/// Least single generator of `set`, else a greedy generating list.
fn canonical_generators(m: &Module, set: &BitSet) -> Vec<usize> {
    if set.len() == 1 {
        return Vec::new();
    }
    if let Some(g) = set.iter().find(|&g| m.cyclic_set(g) == *set) {
        return alloc::vec![g];
    }
    let mut acc = BitSet::from_indices(m.order(), [0]);
    let mut gens = Vec::new();
    for x in set.iter() {
        if !acc.contains(x) {
            acc = m.set_sum(&acc, &m.cyclic_set(x));
            gens.push(x);
        }
    }
    gens
}

impl Submodule {
    /// Wraps a set already known to be a submodule.
    pub(crate) fn from_set(module: &Module, set: BitSet) -> Submodule {
        let gens = canonical_generators(module, &set);
        Submodule { module: module.clone(), set, gens }
    }

    pub(crate) fn with_generators(module: &Module, set: BitSet, gens: Vec<usize>) -> Submodule {
        Submodule { module: module.clone(), set, gens }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn set(&self) -> &BitSet {
        &self.set
    }

    pub fn elements(&self) -> Vec<usize> {
        self.set.to_vec()
    }

    pub fn labels(&self) -> Vec<Element> {
        self.set.iter().map(|x| self.module.element(x).clone()).collect()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub fn generators(&self) -> Vec<Element> {
        self.gens.iter().map(|&g| self.module.element(g).clone()).collect()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_zero(&self) -> bool {
        self.set.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.set.len() == self.module.order()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn contains_element(&self, e: &Element) -> Result<bool> {
        Ok(self.set.contains(self.module.index_of(e)?))
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn canonical_cmp(&self, other: &Submodule) -> Ordering {
        self.set.canonical_cmp(&other.set)
    }

    fn same_module(&self, other: &Submodule) -> Result<()> {
        if self.module == other.module {
            Ok(())
        } else {
            Err(Error::InvalidSubmodule(format!("{other} lives in a different module")))
        }
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_module(other)?;
        Ok(Submodule::from_set(&self.module, self.module.set_sum(&self.set, &other.set)))
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        self.same_module(other)?;
        Ok(Submodule::from_set(&self.module, self.set.intersection(&other.set)))
    }

    /// `(N :_R K)` for `K` a submodule.
    pub fn colon(&self, k: &Submodule) -> Result<Ideal> {
        self.same_module(k)?;
        Ok(self.module.lift_ideal(&colon_eff(&self.module, &self.set, &k.set)))
    }

    /// `(N :_R m)`; `Ann_R(m)` when `N = 0`.
    pub fn colon_element(&self, m: &Element) -> Result<Ideal> {
        let x = self.module.index_of(m)?;
        Ok(self.module.lift_ideal(&colon_eff(&self.module, &self.set, &BitSet::from_indices(self.module.order(), [x]))))
    }

    /// `(N :_M a) = { m : am ∈ N }`.
    pub fn colon_module(&self, a: &Element) -> Result<Submodule> {
        let r = self.module.scalar_index(a)?;
        Ok(Submodule::from_set(&self.module, colon_module_eff(&self.module, &self.set, r)))
    }

    /// `(N :_M ab)`.
    pub fn colon_module_pair(&self, a: &Element, b: &Element) -> Result<Submodule> {
        let (r, s) = (self.module.scalar_index(a)?, self.module.scalar_index(b)?);
        let ab = self.module.eff_ring().mul(r, s);
        Ok(Submodule::from_set(&self.module, colon_module_eff(&self.module, &self.set, ab)))
    }

    /// `I·N`, the submodule generated by all `r n`.
    pub fn scaled_by(&self, ideal: &Ideal) -> Result<Submodule> {
        let i = self.module.lower_ideal(ideal)?;
        Ok(Submodule::from_set(&self.module, act_set(&self.module, &i, &self.set)))
    }
}

/// `{ r : r·K ⊆ N }` over the effective scalars.
pub(crate) fn colon_eff(m: &Module, n: &BitSet, k: &BitSet) -> BitSet {
    let e = m.eff_order();
    let ks = k.to_vec();
    BitSet::from_indices(
        e,
        (0..e).filter(|&r| {
            let row = m.act_row(r);
            ks.iter().all(|&x| n.contains(row[x] as usize))
        }),
    )
}

/// `{ x : r·x ∈ N }`.
pub(crate) fn colon_module_eff(m: &Module, n: &BitSet, r: usize) -> BitSet {
    let row = m.act_row(r);
    BitSet::from_indices(m.order(), (0..m.order()).filter(|&x| n.contains(row[x] as usize)))
}

/// `I·X` for an effective ideal `I` and a subset `X` closed under the action.
pub(crate) fn act_set(m: &Module, i: &BitSet, x: &BitSet) -> BitSet {
    let xs = x.to_vec();
    let mut prods = BTreeSet::new();
    for r in i.iter() {
        let row = m.act_row(r);
        for &y in &xs {
            prods.insert(row[y] as usize);
        }
    }
    let prods: Vec<usize> = prods.into_iter().collect();
    m.span(&prods)
}

/// All submodules: cyclic submodules closed under sums, in canonical order.
pub(crate) fn lattice(m: &Module) -> Vec<BitSet> {
    let n = m.order();
    let cyclic: BTreeSet<BitSet> = (0..n).map(|x| m.cyclic_set(x)).collect();
    let mut seen = cyclic.clone();
    seen.insert(BitSet::from_indices(n, [0]));
    let mut queue: Vec<BitSet> = seen.iter().cloned().collect();
    while let Some(s) = queue.pop() {
        for c in &cyclic {
            if c.is_subset(&s) {
                continue;
            }
            let t = m.set_sum(&s, c);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut all: Vec<BitSet> = seen.into_iter().collect();
    all.sort_by(|a, b| a.canonical_cmp(b));
    all
}
