//! Multiplication modules: detection, products of submodules, the
//! M-radical, nilpotent submodules and `Nil(M)`.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::module::submodule::{act_set, colon_eff};
use crate::module::{Module, Submodule, ENUMERATION_BOUND};
use crate::predicates::classify_set;
use crate::ring::Verdict;

fn require_enumerable(m: &Module) -> Result<()> {
    if m.order() > ENUMERATION_BOUND {
        return Err(Error::TooLarge { size: m.order(), bound: ENUMERATION_BOUND });
    }
    Ok(())
}

/// `(N:M)M` as a set.
pub(crate) fn colon_times_module(m: &Module, n: &BitSet) -> BitSet {
    let whole = BitSet::full(m.order());
    act_set(m, &colon_eff(m, n, &whole), &whole)
}

/// Whether `N = (N:M)M` for every submodule `N`; on failure, the least
/// submodule where it breaks.
pub fn is_multiplication(m: &Module) -> Result<Verdict<Submodule>> {
    if m.is_degenerate() {
        return Err(Error::NotApplicable("zero module".into()));
    }
    require_enumerable(m)?;
    Ok(match multiplication_witness(m) {
        None => Verdict::Holds,
        Some(s) => Verdict::Fails(Submodule::from_set(m, s)),
    })
}

pub(crate) fn multiplication_witness(m: &Module) -> Option<BitSet> {
    m.lattice().iter().find(|n| colon_times_module(m, n) != **n).cloned()
}

fn require_multiplication(m: &Module) -> Result<()> {
    require_enumerable(m)?;
    if m.is_degenerate() || multiplication_witness(m).is_none() {
        Ok(())
    } else {
        Err(Error::NotMultiplicationModule)
    }
}

pub(crate) fn product_set(m: &Module, n: &BitSet, k: &BitSet) -> BitSet {
    let whole = BitSet::full(m.order());
    let r = m.eff_ring();
    let (i, j) = (colon_eff(m, n, &whole), colon_eff(m, k, &whole));
    let prods: Vec<usize> = i.iter().flat_map(|a| j.iter().map(move |b| r.mul(a, b))).collect();
    act_set(m, &r.span(&prods), &whole)
}

/// `NK = (N:M)(K:M)M` in a multiplication module.
pub fn submodule_product(n: &Submodule, k: &Submodule) -> Result<Submodule> {
    let m = n.module();
    if k.module() != m {
        return Err(Error::InvalidSubmodule("submodules of different modules".into()));
    }
    require_multiplication(m)?;
    Ok(Submodule::from_set(m, product_set(m, n.set(), k.set())))
}

pub(crate) fn element_product_set(m: &Module, k: &BitSet, x: usize) -> BitSet {
    let colon = colon_eff(m, k, &BitSet::full(m.order()));
    BitSet::from_indices(m.order(), colon.iter().map(|r| m.act(r, x)))
}

/// `Km = (K:M)m` in a multiplication module.
pub fn element_product(k: &Submodule, x: &crate::element::Element) -> Result<Submodule> {
    let m = k.module();
    let x = m.index_of(x)?;
    require_multiplication(m)?;
    Ok(Submodule::from_set(m, element_product_set(m, k.set(), x)))
}

/// Whether `I₁I₂M` is the same for every pair of ideals with `N = I₁M`
/// and `K = I₂M`.
pub fn presentation_independence_check(n: &Submodule, k: &Submodule) -> Result<bool> {
    let m = n.module();
    require_multiplication(m)?;
    Ok(presentation_independent_set(m, n.set(), k.set()))
}

pub(crate) fn presentation_independent_set(m: &Module, n: &BitSet, k: &BitSet) -> bool {
    let whole = BitSet::full(m.order());
    let r = m.eff_ring();
    let ideals = r.ideal_sets();
    let presents = |t: &BitSet| -> Vec<&BitSet> { ideals.iter().filter(|i| act_set(m, i, &whole) == *t).collect() };
    let canonical = product_set(m, n, k);
    for i in presents(n) {
        for j in presents(k) {
            let prods: Vec<usize> = i.iter().flat_map(|a| j.iter().map(move |b| r.mul(a, b))).collect();
            if act_set(m, &r.span(&prods), &whole) != canonical {
                return false;
            }
        }
    }
    true
}

/// `M-rad(N)` with the primes that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MRadicalResult {
    pub submodule: Submodule,
    pub witness_primes: Vec<Submodule>,
    pub is_whole_module: bool,
}

/// All prime submodules, as sets, in canonical order.
pub(crate) fn prime_sets(m: &Module) -> Vec<BitSet> {
    let full = m.order();
    m.lattice().iter().filter(|s| s.len() < full && classify_set(m, s).is_prime()).cloned().collect()
}

pub(crate) fn m_radical_set(m: &Module, primes: &[BitSet], n: &BitSet) -> BitSet {
    primes.iter().filter(|p| n.is_subset(p)).fold(BitSet::full(m.order()), |acc, p| acc.intersection(p))
}

/// Intersection of the prime submodules containing `N`, or `M` if there
/// are none.
pub fn m_radical(n: &Submodule) -> Result<MRadicalResult> {
    if n.is_whole() {
        return Err(Error::NotProper);
    }
    let m = n.module();
    require_enumerable(m)?;
    let primes: Vec<BitSet> = prime_sets(m).into_iter().filter(|p| n.set().is_subset(p)).collect();
    let set = m_radical_set(m, &primes, n.set());
    Ok(MRadicalResult {
        is_whole_module: primes.is_empty(),
        witness_primes: primes.into_iter().map(|p| Submodule::from_set(m, p)).collect(),
        submodule: Submodule::from_set(m, set),
    })
}

pub(crate) fn radical_formula_set(m: &Module, n: &BitSet) -> BitSet {
    let whole = BitSet::full(m.order());
    let rad = m.eff_ring().radical_of(&colon_eff(m, n, &whole));
    act_set(m, &rad, &whole)
}

/// `√(N:M)·M`, which equals `M-rad(N)` on multiplication modules.
pub fn radical_formula(n: &Submodule) -> Submodule {
    Submodule::from_set(n.module(), radical_formula_set(n.module(), n.set()))
}

/// Least `k ≥ 1` with `(N:M)^k N = 0`, if any.
pub fn is_nilpotent_submodule(n: &Submodule) -> (bool, Option<usize>) {
    match nilpotency_index(n.module(), n.set()) {
        Some(k) => (true, Some(k)),
        None => (false, None),
    }
}

pub(crate) fn nilpotency_index(m: &Module, n: &BitSet) -> Option<usize> {
    let j = colon_eff(m, n, &BitSet::full(m.order()));
    let mut cur = n.clone();
    let mut k = 0;
    loop {
        let next = act_set(m, &j, &cur);
        k += 1;
        if next.len() == 1 {
            return Some(k);
        }
        // J^k N is descending, so an unchanged step means it is stuck.
        if next == cur {
            return None;
        }
        cur = next;
    }
}

/// `{ m : Rm is nilpotent }` and, when it is closed, the submodule it forms.
pub fn nil_set(m: &Module) -> (Vec<crate::element::Element>, Option<Submodule>) {
    let set = nil_raw(m);
    let labels = set.iter().map(|x| m.element(x).clone()).collect();
    let sub = m.submodule_from_set(set).ok();
    (labels, sub)
}

pub(crate) fn nil_raw(m: &Module) -> BitSet {
    BitSet::from_indices(m.order(), (0..m.order()).filter(|&x| nilpotency_index(m, &m.cyclic_set(x)).is_some()))
}
