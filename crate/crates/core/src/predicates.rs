//! Decision procedures for the six submodule classes, classical triple-zeros,
//! and the characterization conditions of weakly classical prime submodules.
//!
//! Scans run over effective scalars (see [`crate::module`]) in index order,
//! so the first witness found is the least one.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::module::submodule::{act_set, colon_eff};
use crate::module::{Module, Submodule};
use crate::ring::{Ideal, Verdict};
use crate::witness::{self, Witness};

/// The six class flags of a proper submodule, each with the least violating
/// witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    /// Witness `(a, m)`: `am ∈ N`, `m ∉ N`, `a ∉ (N:M)`.
    pub prime: Verdict<(Element, Element)>,
    /// As `prime`, with `am ≠ 0`.
    pub weakly_prime: Verdict<(Element, Element)>,
    /// Witness `(a, b, m)`: `abm ∈ N`, `am ∉ N`, `bm ∉ N`.
    pub classical_prime: Verdict<(Element, Element, Element)>,
    /// As `classical_prime`, with `abm ≠ 0`.
    pub weakly_classical_prime: Verdict<(Element, Element, Element)>,
    /// As `classical_prime`, with also `ab ∉ (N:M)`.
    pub two_absorbing: Verdict<(Element, Element, Element)>,
    pub weakly_two_absorbing: Verdict<(Element, Element, Element)>,
}

/// Index-level classification used by the sweeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Flags {
    pub prime: Option<(usize, usize)>,
    pub weakly_prime: Option<(usize, usize)>,
    pub classical: Option<(usize, usize, usize)>,
    pub wcp: Option<(usize, usize, usize)>,
    pub two_abs: Option<(usize, usize, usize)>,
    pub weak_two_abs: Option<(usize, usize, usize)>,
}

impl Flags {
    pub fn is_prime(&self) -> bool {
        self.prime.is_none()
    }

    pub fn is_weakly_prime(&self) -> bool {
        self.weakly_prime.is_none()
    }

    pub fn is_classical(&self) -> bool {
        self.classical.is_none()
    }

    pub fn is_wcp(&self) -> bool {
        self.wcp.is_none()
    }

    pub fn is_weak_two_abs(&self) -> bool {
        self.weak_two_abs.is_none()
    }
}

/// Classifies the submodule with element set `n` (assumed proper).
pub(crate) fn classify_set(m: &Module, n: &BitSet) -> Flags {
    let k = m.eff_order();
    let size = m.order();
    let r = m.eff_ring();
    let colon = colon_eff(m, n, &BitSet::full(size));
    let mut f = Flags::default();
    for a in 0..k {
        let row_a = m.act_row(a);
        for (x, &ax) in row_a.iter().enumerate() {
            let ax = ax as usize;
            if n.contains(ax) && !n.contains(x) && !colon.contains(a) {
                f.prime.get_or_insert((a, x));
                if ax != 0 {
                    f.weakly_prime.get_or_insert((a, x));
                }
            }
        }
    }
    for a in 0..k {
        let row_a = m.act_row(a);
        for b in 0..k {
            let ab = r.mul(a, b);
            let row_b = m.act_row(b);
            let row_ab = m.act_row(ab);
            let ab_in = colon.contains(ab);
            for x in 0..size {
                let abx = row_ab[x] as usize;
                if !n.contains(abx) || n.contains(row_a[x] as usize) || n.contains(row_b[x] as usize) {
                    continue;
                }
                f.classical.get_or_insert((a, b, x));
                if abx != 0 {
                    f.wcp.get_or_insert((a, b, x));
                }
                if !ab_in {
                    f.two_abs.get_or_insert((a, b, x));
                    if abx != 0 {
                        f.weak_two_abs.get_or_insert((a, b, x));
                    }
                }
            }
        }
    }
    f
}

/// Only the weakly classical prime flag, with early exit.
pub(crate) fn wcp_witness(m: &Module, n: &BitSet) -> Option<(usize, usize, usize)> {
    let k = m.eff_order();
    let r = m.eff_ring();
    for a in 0..k {
        let row_a = m.act_row(a);
        for b in 0..k {
            let row_b = m.act_row(b);
            let row_ab = m.act_row(r.mul(a, b));
            for x in 0..m.order() {
                let abx = row_ab[x] as usize;
                if abx != 0 && n.contains(abx) && !n.contains(row_a[x] as usize) && !n.contains(row_b[x] as usize) {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

pub(crate) fn is_wcp_set(m: &Module, n: &BitSet) -> bool {
    n.len() < m.order() && wcp_witness(m, n).is_none()
}

fn require_proper(n: &Submodule) -> Result<()> {
    if n.module().is_degenerate() {
        return Err(Error::NotApplicable("the zero module has no proper submodules".into()));
    }
    if n.is_whole() {
        return Err(Error::NotProper);
    }
    Ok(())
}

pub fn classify(n: &Submodule) -> Result<ClassificationReport> {
    require_proper(n)?;
    let m = n.module();
    let f = classify_set(m, n.set());
    let s = |a: usize| m.scalar_label(a);
    let e = |x: usize| m.element(x).clone();
    let pair = |w: Option<(usize, usize)>| match w {
        None => Verdict::Holds,
        Some((a, x)) => Verdict::Fails((s(a), e(x))),
    };
    let triple = |w: Option<(usize, usize, usize)>| match w {
        None => Verdict::Holds,
        Some((a, b, x)) => Verdict::Fails((s(a), s(b), e(x))),
    };
    Ok(ClassificationReport {
        prime: pair(f.prime),
        weakly_prime: pair(f.weakly_prime),
        classical_prime: triple(f.classical),
        weakly_classical_prime: triple(f.wcp),
        two_absorbing: triple(f.two_abs),
        weakly_two_absorbing: triple(f.weak_two_abs),
    })
}

impl ClassificationReport {
    /// Flags in the order prime, weakly prime, classical prime, weakly
    /// classical prime, 2-absorbing, weakly 2-absorbing.
    pub fn flags(&self) -> [bool; 6] {
        [
            self.prime.holds(),
            self.weakly_prime.holds(),
            self.classical_prime.holds(),
            self.weakly_classical_prime.holds(),
            self.two_absorbing.holds(),
            self.weakly_two_absorbing.holds(),
        ]
    }

    /// Names of the implications between classes that this report breaks.
    pub fn ladder_violations(&self) -> Vec<&'static str> {
        let [p, wp, cp, wcp, ta, wta] = self.flags();
        let mut out = Vec::new();
        let mut check = |ok: bool, name| {
            if !ok {
                out.push(name);
            }
        };
        check(!p || wp, "prime => weakly prime");
        check(!p || cp, "prime => classical prime");
        check(!cp || wcp, "classical prime => weakly classical prime");
        check(!wp || wcp, "weakly prime => weakly classical prime");
        check(!wcp || wta, "weakly classical prime => weakly 2-absorbing");
        check(!ta || wta, "2-absorbing => weakly 2-absorbing");
        check(!cp || ta, "classical prime => 2-absorbing");
        out
    }

    /// Re-checks every witness against the defining condition.
    pub fn revalidate(&self, n: &Submodule) -> Result<bool> {
        let m = n.module();
        let colon = n.colon(&m.whole())?;
        let lower = m.lower_ideal(&colon)?;
        let inn = |x: usize| n.contains(x);
        let pair_ok = |v: &Verdict<(Element, Element)>, weak: bool| -> Result<bool> {
            let Some((a, x)) = v.witness() else { return Ok(true) };
            let (a, x) = (m.scalar_index(a)?, m.index_of(x)?);
            let ax = m.act(a, x);
            Ok(inn(ax) && !inn(x) && !lower.contains(a) && (!weak || ax != 0))
        };
        let triple_ok = |v: &Verdict<(Element, Element, Element)>, weak: bool, abs: bool| -> Result<bool> {
            let Some((a, b, x)) = v.witness() else { return Ok(true) };
            let (a, b, x) = (m.scalar_index(a)?, m.scalar_index(b)?, m.index_of(x)?);
            let ab = m.eff_ring().mul(a, b);
            let abx = m.act(ab, x);
            Ok(inn(abx)
                && !inn(m.act(a, x))
                && !inn(m.act(b, x))
                && (!weak || abx != 0)
                && (!abs || !lower.contains(ab)))
        };
        Ok(pair_ok(&self.prime, false)?
            && pair_ok(&self.weakly_prime, true)?
            && triple_ok(&self.classical_prime, false, false)?
            && triple_ok(&self.weakly_classical_prime, true, false)?
            && triple_ok(&self.two_absorbing, false, true)?
            && triple_ok(&self.weakly_two_absorbing, true, true)?)
    }
}

/// A classical triple-zero `(a, b, m)`: `abm = 0`, `am ∉ N`, `bm ∉ N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TripleZero {
    pub a: Element,
    pub b: Element,
    pub m: Element,
}

pub(crate) fn triple_zeros_set(m: &Module, n: &BitSet) -> Vec<(usize, usize, usize)> {
    let k = m.eff_order();
    let r = m.eff_ring();
    let mut out = Vec::new();
    for a in 0..k {
        let row_a = m.act_row(a);
        for b in 0..k {
            let row_b = m.act_row(b);
            let row_ab = m.act_row(r.mul(a, b));
            for x in 0..m.order() {
                if row_ab[x] == 0 && !n.contains(row_a[x] as usize) && !n.contains(row_b[x] as usize) {
                    out.push((a, b, x));
                }
            }
        }
    }
    out
}

/// All classical triple-zeros of a weakly classical prime submodule, with
/// scalars listed by their least representatives modulo `Ann(M)`.
pub fn classical_triple_zeros(n: &Submodule) -> Result<Vec<TripleZero>> {
    require_proper(n)?;
    let m = n.module();
    if !is_wcp_set(m, n.set()) {
        return Err(Error::NotWeaklyClassicalPrime);
    }
    Ok(triple_zeros_set(m, n.set())
        .into_iter()
        .map(|(a, b, x)| TripleZero { a: m.scalar_label(a), b: m.scalar_label(b), m: m.element(x).clone() })
        .collect())
}

/// Whether no `(a, b, k) ∈ I × J × K` is a classical triple-zero of `N`.
pub fn is_free_triple_zero(n: &Submodule, i: &Ideal, j: &Ideal, k: &Submodule) -> Result<bool> {
    require_proper(n)?;
    let m = n.module();
    let (iset, jset) = (m.lower_ideal(i)?, m.lower_ideal(j)?);
    let ij = Ideal::from_set(m.eff_ring(), iset.clone()).product(&Ideal::from_set(m.eff_ring(), jset.clone()))?;
    if !act_set(m, ij.set(), k.set()).is_subset(n.set()) {
        return Err(Error::HypothesisFailed("IJK is not contained in N".into()));
    }
    if !is_wcp_set(m, n.set()) {
        return Err(Error::NotWeaklyClassicalPrime);
    }
    Ok(free_triple_zero_set(m, n.set(), &iset, &jset, k.set()))
}

pub(crate) fn free_triple_zero_set(m: &Module, n: &BitSet, i: &BitSet, j: &BitSet, k: &BitSet) -> bool {
    let r = m.eff_ring();
    for a in i.iter() {
        for b in j.iter() {
            let ab = r.mul(a, b);
            for x in k.iter() {
                if m.act(ab, x) == 0 && !n.contains(m.act(a, x)) && !n.contains(m.act(b, x)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Truth values of a list of numbered conditions, with a witness for each
/// failing one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conditions {
    pub holds: Vec<bool>,
    pub witnesses: Vec<Option<Witness>>,
}

impl Conditions {
    fn new() -> Self {
        Conditions { holds: Vec::new(), witnesses: Vec::new() }
    }

    fn push(&mut self, w: Option<Witness>) {
        self.holds.push(w.is_none());
        self.witnesses.push(w);
    }

    /// Condition `(i)`, numbered from 1.
    pub fn get(&self, i: usize) -> bool {
        self.holds[i - 1]
    }

    pub fn all_equal(&self) -> bool {
        self.holds.windows(2).all(|w| w[0] == w[1])
    }
}

/// Per-element colon data shared by the condition scans.
pub(crate) struct ColonTable {
    /// `(N :_R x)` for every element `x`.
    pub n: Vec<BitSet>,
    /// `(0 :_R x)`.
    pub zero: Vec<BitSet>,
}

impl ColonTable {
    pub fn new(m: &Module, n: &BitSet) -> Self {
        let k = m.eff_order();
        let size = m.order();
        let mut cn = alloc::vec![BitSet::new(k); size];
        let mut cz = alloc::vec![BitSet::new(k); size];
        for r in 0..k {
            let row = m.act_row(r);
            for x in 0..size {
                let y = row[x] as usize;
                if n.contains(y) {
                    cn[x].insert(r);
                }
                if y == 0 {
                    cz[x].insert(r);
                }
            }
        }
        ColonTable { n: cn, zero: cz }
    }

    /// `(N :_R X)` and `(0 :_R X)` for a set `X`.
    pub fn of_set(&self, k: usize, x: &BitSet) -> (BitSet, BitSet) {
        let mut a = BitSet::full(k);
        let mut b = BitSet::full(k);
        for y in x.iter() {
            a = a.intersection(&self.n[y]);
            b = b.intersection(&self.zero[y]);
        }
        (a, b)
    }
}

/// `{ r·x : r ∈ I }`.
fn ideal_times(m: &Module, i: &BitSet, x: usize) -> BitSet {
    BitSet::from_indices(m.order(), i.iter().map(|r| m.act(r, x)))
}

/// Ideals of the effective ring and their pairwise products.
pub(crate) struct IdealTable {
    pub ideals: Vec<BitSet>,
    pub products: Vec<Vec<usize>>,
}

impl IdealTable {
    pub fn new(m: &Module) -> Self {
        let r = m.eff_ring();
        let ideals: Vec<BitSet> = r.ideal_sets().to_vec();
        let index = |s: &BitSet| ideals.iter().position(|t| t == s).expect("products of ideals are ideals");
        let products = ideals
            .iter()
            .map(|a| {
                ideals
                    .iter()
                    .map(|b| {
                        let prods: Vec<usize> = a.iter().flat_map(|x| b.iter().map(move |y| r.mul(x, y))).collect();
                        index(&r.span(&prods))
                    })
                    .collect()
            })
            .collect();
        IdealTable { ideals, products }
    }
}

/// The seven equivalent characterizations of weakly classical prime
/// submodules, each evaluated by its own scan.
pub fn main_conditions(n: &Submodule) -> Result<Conditions> {
    require_proper(n)?;
    Ok(main_conditions_set(n.module(), n.set(), &IdealTable::new(n.module())))
}

pub(crate) fn main_conditions_set(m: &Module, n: &BitSet, ideals: &IdealTable) -> Conditions {
    let k = m.eff_order();
    let size = m.order();
    let r = m.eff_ring();
    let ct = ColonTable::new(m, n);
    let sc = |a: usize| witness::scalar(m, a);
    let el = |x: usize| witness::element(m, x);
    let id = |s: &BitSet| witness::eff_ideal(m, s);
    let mut out = Conditions::new();

    // (1)
    out.push(wcp_witness(m, n).map(|(a, b, x)| Witness::new().with("a", sc(a)).with("b", sc(b)).with("m", el(x))));

    // (2) (N:_M ab) = (0:_M ab) ∪ (N:_M a) ∪ (N:_M b)
    let w2 = (|| {
        for a in 0..k {
            for b in 0..k {
                let ab = r.mul(a, b);
                for x in 0..size {
                    let abx = m.act(ab, x);
                    if n.contains(abx) && abx != 0 && !n.contains(m.act(a, x)) && !n.contains(m.act(b, x)) {
                        return Some(Witness::new().with("a", sc(a)).with("b", sc(b)).with("m", el(x)));
                    }
                }
            }
        }
        None
    })();
    out.push(w2);

    // (3) am ∉ N ⇒ (N:_R am) = (0:_R am) ∪ (N:_R m)
    let w3 = (|| {
        for a in 0..k {
            for x in 0..size {
                let ax = m.act(a, x);
                if n.contains(ax) {
                    continue;
                }
                let union = ct.zero[ax].union(&ct.n[x]);
                if let Some(s) = ct.n[ax].iter().find(|&s| !union.contains(s)) {
                    return Some(Witness::new().with("a", sc(a)).with("m", el(x)).with("r", sc(s)));
                }
            }
        }
        None
    })();
    out.push(w3);

    // (4) am ∉ N ⇒ (N:_R am) = (0:_R am) or (N:_R am) = (N:_R m)
    let w4 = (|| {
        for a in 0..k {
            for x in 0..size {
                let ax = m.act(a, x);
                if !n.contains(ax) && ct.n[ax] != ct.zero[ax] && ct.n[ax] != ct.n[x] {
                    return Some(Witness::new().with("a", sc(a)).with("m", el(x)));
                }
            }
        }
        None
    })();
    out.push(w4);

    // (5) 0 ≠ aIm ⊆ N ⇒ am ∈ N or Im ⊆ N
    let w5 = (|| {
        for a in 0..k {
            for i in &ideals.ideals {
                for x in 0..size {
                    let im = ideal_times(m, i, x);
                    let aim = BitSet::from_indices(size, im.iter().map(|y| m.act(a, y)));
                    if aim.len() > 1 && aim.is_subset(n) && !n.contains(m.act(a, x)) && !im.is_subset(n) {
                        return Some(Witness::new().with("a", sc(a)).with("I", id(i)).with("m", el(x)));
                    }
                }
            }
        }
        None
    })();
    out.push(w5);

    // (6) Im ⊄ N ⇒ (N:_R Im) = (0:_R Im) or (N:_R Im) = (N:_R m)
    let w6 = (|| {
        for i in &ideals.ideals {
            for x in 0..size {
                let im = ideal_times(m, i, x);
                if im.is_subset(n) {
                    continue;
                }
                let (cn, cz) = ct.of_set(k, &im);
                if cn != cz && cn != ct.n[x] {
                    return Some(Witness::new().with("I", id(i)).with("m", el(x)));
                }
            }
        }
        None
    })();
    out.push(w6);

    // (7) 0 ≠ IJm ⊆ N ⇒ Im ⊆ N or Jm ⊆ N
    let w7 = (|| {
        for (ii, i) in ideals.ideals.iter().enumerate() {
            for (ji, j) in ideals.ideals.iter().enumerate() {
                let ij = &ideals.ideals[ideals.products[ii][ji]];
                for x in 0..size {
                    let ijm = ideal_times(m, ij, x);
                    if ijm.len() > 1
                        && ijm.is_subset(n)
                        && !ideal_times(m, i, x).is_subset(n)
                        && !ideal_times(m, j, x).is_subset(n)
                    {
                        return Some(Witness::new().with("I", id(i)).with("J", id(j)).with("m", el(x)));
                    }
                }
            }
        }
        None
    })();
    out.push(w7);
    out
}

/// The seven conditions quantifying over submodules `L` in place of
/// elements. Their equivalence is only claimed over um-rings.
pub fn main2_conditions(n: &Submodule) -> Result<Conditions> {
    require_proper(n)?;
    let m = n.module();
    if m.order() > crate::module::ENUMERATION_BOUND {
        return Err(Error::TooLarge { size: m.order(), bound: crate::module::ENUMERATION_BOUND });
    }
    Ok(main2_conditions_set(m, n.set(), &IdealTable::new(m), m.lattice()))
}

pub(crate) fn main2_conditions_set(m: &Module, n: &BitSet, ideals: &IdealTable, lattice: &[BitSet]) -> Conditions {
    let k = m.eff_order();
    let size = m.order();
    let r = m.eff_ring();
    let ct = ColonTable::new(m, n);
    let sc = |a: usize| witness::scalar(m, a);
    let id = |s: &BitSet| witness::eff_ideal(m, s);
    let sub = |s: &BitSet| witness::submodule(m, s);
    let scale = |a: usize, l: &BitSet| BitSet::from_indices(size, l.iter().map(|y| m.act(a, y)));
    let ideal_on = |i: &BitSet, l: &BitSet| act_set(m, i, l);
    let mut out = Conditions::new();

    out.push(
        wcp_witness(m, n)
            .map(|(a, b, x)| Witness::new().with("a", sc(a)).with("b", sc(b)).with("m", witness::element(m, x))),
    );

    // (2) (N:_M ab) equals one of (0:_M ab), (N:_M a), (N:_M b)
    let colon_m = |t: &BitSet, a: usize| BitSet::from_indices(size, (0..size).filter(|&x| t.contains(m.act(a, x))));
    let zero = BitSet::from_indices(size, [0]);
    let w2 = (|| {
        for a in 0..k {
            for b in 0..k {
                let ab = r.mul(a, b);
                let lhs = colon_m(n, ab);
                if lhs != colon_m(&zero, ab) && lhs != colon_m(n, a) && lhs != colon_m(n, b) {
                    return Some(Witness::new().with("a", sc(a)).with("b", sc(b)));
                }
            }
        }
        None
    })();
    out.push(w2);

    // (3) 0 ≠ abL ⊆ N ⇒ aL ⊆ N or bL ⊆ N
    let w3 = (|| {
        for a in 0..k {
            for b in 0..k {
                let ab = r.mul(a, b);
                for l in lattice {
                    let abl = scale(ab, l);
                    if abl.len() > 1 && abl.is_subset(n) && !scale(a, l).is_subset(n) && !scale(b, l).is_subset(n) {
                        return Some(Witness::new().with("a", sc(a)).with("b", sc(b)).with("L", sub(l)));
                    }
                }
            }
        }
        None
    })();
    out.push(w3);

    // (4) aL ⊄ N ⇒ (N:_R aL) = (0:_R aL) or (N:_R aL) = (N:_R L)
    let w4 = (|| {
        for a in 0..k {
            for l in lattice {
                let al = scale(a, l);
                if al.is_subset(n) {
                    continue;
                }
                let (cn, cz) = ct.of_set(k, &al);
                let (cl, _) = ct.of_set(k, l);
                if cn != cz && cn != cl {
                    return Some(Witness::new().with("a", sc(a)).with("L", sub(l)));
                }
            }
        }
        None
    })();
    out.push(w4);

    // (5) 0 ≠ aIL ⊆ N ⇒ aL ⊆ N or IL ⊆ N
    let w5 = (|| {
        for a in 0..k {
            for i in &ideals.ideals {
                for l in lattice {
                    let il = ideal_on(i, l);
                    let ail = scale(a, &il);
                    if ail.len() > 1 && ail.is_subset(n) && !scale(a, l).is_subset(n) && !il.is_subset(n) {
                        return Some(Witness::new().with("a", sc(a)).with("I", id(i)).with("L", sub(l)));
                    }
                }
            }
        }
        None
    })();
    out.push(w5);

    // (6) IL ⊄ N ⇒ (N:_R IL) = (0:_R IL) or (N:_R IL) = (N:_R L)
    let w6 = (|| {
        for i in &ideals.ideals {
            for l in lattice {
                let il = ideal_on(i, l);
                if il.is_subset(n) {
                    continue;
                }
                let (cn, cz) = ct.of_set(k, &il);
                let (cl, _) = ct.of_set(k, l);
                if cn != cz && cn != cl {
                    return Some(Witness::new().with("I", id(i)).with("L", sub(l)));
                }
            }
        }
        None
    })();
    out.push(w6);

    // (7) 0 ≠ IJL ⊆ N ⇒ IL ⊆ N or JL ⊆ N
    let w7 = (|| {
        for l in lattice {
            let il: Vec<BitSet> = ideals.ideals.iter().map(|i| ideal_on(i, l)).collect();
            for ii in 0..ideals.ideals.len() {
                for ji in 0..ideals.ideals.len() {
                    let ijl = &il[ideals.products[ii][ji]];
                    if ijl.len() > 1 && ijl.is_subset(n) && !il[ii].is_subset(n) && !il[ji].is_subset(n) {
                        return Some(
                            Witness::new()
                                .with("I", id(&ideals.ideals[ii]))
                                .with("J", id(&ideals.ideals[ji]))
                                .with("L", sub(l)),
                        );
                    }
                }
            }
        }
        None
    })();
    out.push(w7);
    out
}

#[cfg(test)]
mod tests;
