//! Finite commutative rings with explicit tables, and the symbolic integers.

mod ideal;
mod local;

pub use ideal::{Ideal, IdealOp};
pub use local::{localize_ring, Localization, MultiplicativeSet};

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::descriptor::RingSpec;
use crate::element::Element;
use crate::error::{Error, Result};

/// Largest carrier (ring or module) that gets explicit tables.
pub const MAX_CARRIER: usize = 2048;

/// Outcome of a decision procedure that reports a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A commutative ring with identity. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

struct RingData {
    spec: RingSpec,
    tables: Option<Tables>,
    factors: Vec<Ring>,
}

struct Tables {
    labels: Vec<Element>,
    lookup: BTreeMap<Element, u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: usize,
    /// All ideals, in canonical order.
    ideals: Vec<BitSet>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

/// Adds the subgroup `b` to the subgroup `a` (both given as sets), coset by coset.
pub(crate) fn subgroup_sum(a: &BitSet, b: &BitSet, add: impl Fn(usize, usize) -> usize) -> BitSet {
    let base: Vec<usize> = a.to_vec();
    let mut out = a.clone();
    for y in b.iter() {
        if out.contains(y) {
            continue;
        }
        for &x in &base {
            out.insert(add(x, y));
        }
    }
    out
}

impl Ring {
    /// `Z/nZ` with canonical elements `0..n`.
    pub fn zn(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("Z{n}: modulus must be at least 2")));
        }
        if n as usize > MAX_CARRIER {
            return Err(Error::TooLarge { size: n as usize, bound: MAX_CARRIER });
        }
        let labels = (0..n).map(Element::Int).collect();
        Ok(Self::from_fn(
            RingSpec::Zn(n),
            labels,
            |a, b| (a + b) % n as usize,
            |a, b| (a * b) % n as usize,
            1,
            Vec::new(),
        ))
    }

    /// The symbolic ring of integers. It has no tables.
    pub fn integers() -> Ring {
        Ring(Arc::new(RingData { spec: RingSpec::Integers, tables: None, factors: Vec::new() }))
    }

    /// Componentwise product of two or three finite rings.
    pub fn product(factors: &[Ring]) -> Result<Ring> {
        if !(2..=3).contains(&factors.len()) {
            return Err(Error::InvalidParameter(format!("a product takes 2 or 3 factors, got {}", factors.len())));
        }
        if factors.iter().any(|r| r.is_integers()) {
            return Err(Error::Unsupported("products with the integers as a factor".into()));
        }
        let sizes: Vec<usize> = factors.iter().map(|r| r.order()).collect();
        let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        let total = match total {
            Some(t) if t <= MAX_CARRIER => t,
            _ => return Err(Error::TooLarge { size: usize::MAX, bound: MAX_CARRIER }),
        };
        let decode = |mut x: usize| {
            let mut parts = [0usize; 3];
            for i in (0..sizes.len()).rev() {
                parts[i] = x % sizes[i];
                x /= sizes[i];
            }
            parts
        };
        let encode = |parts: &[usize; 3]| {
            let mut x = 0;
            for i in 0..sizes.len() {
                x = x * sizes[i] + parts[i];
            }
            x
        };
        let labels = (0..total)
            .map(|x| {
                let p = decode(x);
                Element::tuple((0..sizes.len()).map(|i| factors[i].element(p[i]).clone()))
            })
            .collect();
        let combine = |op: &dyn Fn(&Ring, usize, usize) -> usize, a: usize, b: usize| {
            let (pa, pb) = (decode(a), decode(b));
            let mut out = [0usize; 3];
            for i in 0..sizes.len() {
                out[i] = op(&factors[i], pa[i], pb[i]);
            }
            encode(&out)
        };
        let one = encode(&{
            let mut p = [0usize; 3];
            for (i, f) in factors.iter().enumerate() {
                p[i] = f.one();
            }
            p
        });
        let spec = RingSpec::Product(factors.iter().map(|r| r.spec().clone()).collect());
        Ok(Self::from_fn(
            spec,
            labels,
            |a, b| combine(&|r, x, y| r.add(x, y), a, b),
            |a, b| combine(&|r, x, y| r.mul(x, y), a, b),
            one,
            factors.to_vec(),
        ))
    }

    /// `R/I` together with the surjection sending each element to its coset
    /// representative (the least element of the coset).
    pub fn quotient(base: &Ring, ideal: &Ideal) -> Result<(Ring, Vec<usize>)> {
        if base.is_integers() {
            return Err(Error::Unsupported("quotients of the integers".into()));
        }
        if ideal.ring() != base {
            return Err(Error::RingMismatch);
        }
        if ideal.is_whole() {
            return Err(Error::InvalidParameter("quotient by the whole ring".into()));
        }
        Ok(Self::quotient_unchecked(base, ideal.set()))
    }

    /// Like [`Ring::quotient`] but allows the whole ring, giving the zero ring.
    pub(crate) fn quotient_unchecked(base: &Ring, ideal: &BitSet) -> (Ring, Vec<usize>) {
        let n = base.order();
        let members = ideal.to_vec();
        let mut map = alloc::vec![usize::MAX; n];
        let mut reps = Vec::new();
        for r in 0..n {
            if map[r] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(r);
            for &i in &members {
                map[base.add(r, i)] = class;
            }
        }
        if ideal.len() == 1 {
            // Quotient by zero: keep the base ring itself.
            return (base.clone(), (0..n).collect());
        }
        let labels = reps.iter().map(|&r| base.element(r).clone()).collect();
        let gens = Ideal::from_set(base, ideal.clone()).generators();
        let spec = RingSpec::Quotient(Box::new(base.spec().clone()), gens);
        let ring = Self::from_fn(
            spec,
            labels,
            |a, b| map[base.add(reps[a], reps[b])],
            |a, b| map[base.mul(reps[a], reps[b])],
            map[base.one()],
            Vec::new(),
        );
        (ring, map)
    }

    fn from_fn(
        spec: RingSpec,
        labels: Vec<Element>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        one: usize,
        factors: Vec<Ring>,
    ) -> Ring {
        let n = labels.len();
        let mut add_t = Vec::with_capacity(n * n);
        let mut mul_t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add_t.push(add(a, b) as u16);
                mul_t.push(mul(a, b) as u16);
            }
        }
        let mut neg = alloc::vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if add_t[a * n + b] == 0 {
                    neg[a] = b as u16;
                    break;
                }
            }
        }
        let lookup = labels.iter().enumerate().map(|(i, e)| (e.clone(), i as u16)).collect();
        let mut tables = Tables { labels, lookup, add: add_t, mul: mul_t, neg, one, ideals: Vec::new() };
        tables.ideals = ideal_lattice(&tables);
        Ring(Arc::new(RingData { spec, tables: Some(tables), factors }))
    }

    fn t(&self) -> &Tables {
        self.0.tables.as_ref().expect("the symbolic integers have no tables")
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn is_integers(&self) -> bool {
        self.0.tables.is_none()
    }

    /// Number of elements; `None` for the integers.
    pub fn size(&self) -> Option<usize> {
        self.0.tables.as_ref().map(|t| t.labels.len())
    }

    /// Number of elements of a finite ring (0 for the integers).
    pub fn order(&self) -> usize {
        self.size().unwrap_or(0)
    }

    /// The zero ring, which arises from degenerate quotients and localizations.
    pub fn is_degenerate(&self) -> bool {
        self.size() == Some(1)
    }

    pub fn factors(&self) -> &[Ring] {
        &self.0.factors
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let t = self.t();
        t.add[a * t.labels.len() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let t = self.t();
        t.mul[a * t.labels.len() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.t().neg[a] as usize
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.t().one
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.t().labels[i]
    }

    pub fn elements(&self) -> &[Element] {
        self.0.tables.as_ref().map(|t| t.labels.as_slice()).unwrap_or(&[])
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        match &self.0.tables {
            Some(t) => t
                .lookup
                .get(e)
                .map(|&i| i as usize)
                .ok_or_else(|| Error::ElementNotFound(format!("{e} in {}", self.0.spec))),
            None => Err(Error::Unsupported("the integers have no element indices".into())),
        }
    }

    /// `x^k` by repeated multiplication.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, x))
    }

    /// The principal ideal `Rx` as a set.
    pub fn principal_set(&self, x: usize) -> BitSet {
        let n = self.order();
        BitSet::from_indices(n, (0..n).map(|r| self.mul(r, x)))
    }

    /// Smallest ideal containing the given element indices.
    pub fn span(&self, gens: &[usize]) -> BitSet {
        let n = self.order();
        let mut acc = BitSet::from_indices(n, [0]);
        for &g in gens {
            if !acc.contains(g) {
                acc = subgroup_sum(&acc, &self.principal_set(g), |a, b| self.add(a, b));
            }
        }
        acc
    }

    pub(crate) fn ideal_sets(&self) -> &[BitSet] {
        self.0.tables.as_ref().map(|t| t.ideals.as_slice()).unwrap_or(&[])
    }

    /// Every ideal of a finite ring, in canonical order (empty for the integers).
    pub fn ideals(&self) -> Vec<Ideal> {
        self.ideal_sets().iter().map(|s| Ideal::from_set(self, s.clone())).collect()
    }

    /// True iff every ideal is principal. The integers are a principal ideal domain.
    pub fn is_principal_ring(&self) -> bool {
        if self.is_integers() {
            return true;
        }
        let n = self.order();
        let principal: BTreeSet<BitSet> = (0..n).map(|x| self.principal_set(x)).collect();
        self.ideal_sets().iter().all(|i| principal.contains(i))
    }

    /// Nilpotent elements, as a set.
    pub fn nilradical(&self) -> BitSet {
        self.radical_of(&BitSet::from_indices(self.order(), [0]))
    }

    pub(crate) fn radical_of(&self, ideal: &BitSet) -> BitSet {
        let n = self.order();
        BitSet::from_indices(
            n,
            (0..n).filter(|&r| {
                let mut x = r;
                for _ in 0..=n {
                    if ideal.contains(x) {
                        return true;
                    }
                    x = self.mul(x, r);
                }
                false
            }),
        )
    }
}

fn ideal_lattice(t: &Tables) -> Vec<BitSet> {
    let n = t.labels.len();
    let add = |a: usize, b: usize| t.add[a * n + b] as usize;
    let principal: BTreeSet<BitSet> =
        (0..n).map(|x| BitSet::from_indices(n, (0..n).map(|r| t.mul[r * n + x] as usize))).collect();
    let mut seen: BTreeSet<BitSet> = principal.clone();
    seen.insert(BitSet::from_indices(n, [0]));
    let mut queue: Vec<BitSet> = seen.iter().cloned().collect();
    while let Some(i) = queue.pop() {
        for p in &principal {
            if p.is_subset(&i) {
                continue;
            }
            let s = subgroup_sum(&i, p, add);
            if seen.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    let mut all: Vec<BitSet> = seen.into_iter().collect();
    all.sort_by(|a, b| a.canonical_cmp(b));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(n: u64) -> Ring {
        Ring::zn(n).unwrap()
    }

    #[test]
    fn zn_arithmetic() {
        let r = z(4);
        assert_eq!(r.order(), 4);
        assert_eq!(r.mul(2, 2), 0);
        let r = z(12);
        assert_eq!(r.order(), 12);
        assert_eq!(r.mul(4, 3), 0);
        assert!(matches!(Ring::zn(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn products() {
        let r = Ring::product(&[z(2), z(3)]).unwrap();
        assert_eq!(r.order(), 6);
        let a = r.index_of(&Element::tuple([1.into(), 0.into()])).unwrap();
        let b = r.index_of(&Element::tuple([0.into(), 1.into()])).unwrap();
        assert_eq!(r.mul(a, b), r.zero());
        assert_eq!(r.element(r.one()), &Element::tuple([1.into(), 1.into()]));
        let r3 = Ring::product(&[z(2), z(3), z(5)]).unwrap();
        assert_eq!(r3.order(), 30);
        assert!(matches!(Ring::product(&[z(2), Ring::integers()]), Err(Error::Unsupported(_))));
        assert!(matches!(Ring::product(&[z(2)]), Err(Error::InvalidParameter(_))));
        // Carrier order is lexicographic.
        assert!(r3.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn quotients() {
        let r = z(12);
        let i = Ideal::from_generators(&r, &[Element::Int(4)]).unwrap();
        let (q, map) = Ring::quotient(&r, &i).unwrap();
        // Coset oracle: residues mod 4.
        assert_eq!(q.order(), 4);
        for (x, &mx) in map.iter().enumerate() {
            assert_eq!(q.element(mx), &Element::Int(x as u64 % 4));
        }
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(map[r.mul(a, b)], q.mul(map[a], map[b]));
                assert_eq!(map[r.add(a, b)], q.add(map[a], map[b]));
            }
        }
        let zero = Ideal::zero(&z(6));
        let (q6, _) = Ring::quotient(&z(6), &zero).unwrap();
        assert_eq!(q6.order(), 6);
        let whole = Ideal::whole(&z(4));
        assert!(matches!(Ring::quotient(&z(4), &whole), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn ideal_lattice_of_z12_is_divisor_lattice() {
        let r = z(12);
        assert_eq!(r.ideals().len(), 6);
        assert!(r.is_principal_ring());
        let r = Ring::product(&[z(2), z(2)]).unwrap();
        assert_eq!(r.ideals().len(), 4);
        assert!(r.is_principal_ring());
        assert!(z(4).is_principal_ring());
        assert!(Ring::integers().is_principal_ring());
    }

    #[test]
    fn span_matches_closure_oracle() {
        // Closure fixpoint: keep adding sums and ring multiples until stable.
        let r = z(12);
        let mut set = [false; 12];
        set[8] = true;
        set[0] = true;
        loop {
            let mut changed = false;
            for a in 0..12 {
                for b in 0..12 {
                    if set[a] && set[b] && !set[(a + b) % 12] {
                        set[(a + b) % 12] = true;
                        changed = true;
                    }
                    if set[a] && !set[(a * b) % 12] {
                        set[(a * b) % 12] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let oracle: Vec<usize> = (0..12).filter(|&i| set[i]).collect();
        assert_eq!(oracle, vec![0, 4, 8]);
        assert_eq!(r.span(&[8]).to_vec(), oracle);
    }
}
