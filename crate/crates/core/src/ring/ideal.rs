use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{subgroup_sum, Ring, Verdict};
use crate::arith::{gcd, is_prime, lcm};
use crate::bitset::BitSet;
use crate::element::Element;
use crate::error::{Error, Result};

/// An ideal of a finite ring (explicit element set) or of the integers (`dZ`).
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Set(BitSet),
    /// `dZ` with `d >= 0`.
    Principal(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
}

impl Ideal {
    pub fn from_generators(ring: &Ring, gens: &[Element]) -> Result<Ideal> {
        if ring.is_integers() {
            let mut d = 0;
            for g in gens {
                let v = g.as_int().ok_or_else(|| Error::ElementNotFound(format!("{g} is not an integer")))?;
                d = gcd(d, v);
            }
            return Ok(Ideal::multiples(d));
        }
        let idx = gens.iter().map(|g| ring.index_of(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_set(ring, ring.span(&idx)))
    }

    /// `dZ` in the integers.
    pub fn multiples(d: u64) -> Ideal {
        Ideal { ring: Ring::integers(), repr: Repr::Principal(d) }
    }

    pub(crate) fn from_set(ring: &Ring, set: BitSet) -> Ideal {
        Ideal { ring: ring.clone(), repr: Repr::Set(set) }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        if ring.is_integers() {
            Ideal::multiples(0)
        } else {
            Ideal::from_set(ring, BitSet::from_indices(ring.order(), [0]))
        }
    }

    pub fn whole(ring: &Ring) -> Ideal {
        if ring.is_integers() {
            Ideal::multiples(1)
        } else {
            Ideal::from_set(ring, BitSet::full(ring.order()))
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Generator `d` of an integer ideal `dZ`.
    pub fn integer_generator(&self) -> Option<u64> {
        match self.repr {
            Repr::Principal(d) => Some(d),
            Repr::Set(_) => None,
        }
    }

    pub(crate) fn set(&self) -> &BitSet {
        match &self.repr {
            Repr::Set(s) => s,
            Repr::Principal(_) => panic!("integer ideals have no element set"),
        }
    }

    /// Sorted element indices (finite rings only).
    pub fn elements(&self) -> Vec<usize> {
        match &self.repr {
            Repr::Set(s) => s.to_vec(),
            Repr::Principal(_) => Vec::new(),
        }
    }

    pub fn labels(&self) -> Vec<Element> {
        self.elements().into_iter().map(|i| self.ring.element(i).clone()).collect()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set().contains(x)
    }

    pub fn contains_integer(&self, v: u64) -> bool {
        match self.repr {
            Repr::Principal(0) => v == 0,
            Repr::Principal(d) => v.is_multiple_of(d),
            Repr::Set(_) => false,
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match &self.repr {
            Repr::Set(s) => Some(s.len()),
            Repr::Principal(_) => None,
        }
    }

    pub fn is_whole(&self) -> bool {
        match &self.repr {
            Repr::Set(s) => s.len() == self.ring.order(),
            Repr::Principal(d) => *d == 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Set(s) => s.len() == 1,
            Repr::Principal(d) => *d == 0,
        }
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Set(a), Repr::Set(b)) => a.is_subset(b),
            (Repr::Principal(a), Repr::Principal(b)) => other.contains_integer(*a) || *b == 1,
            _ => false,
        }
    }

    /// A short generating list: a single generator when the ideal is principal.
    pub fn generators(&self) -> Vec<Element> {
        match &self.repr {
            Repr::Principal(d) => alloc::vec![Element::Int(*d)],
            Repr::Set(s) => {
                let r = &self.ring;
                if let Some(g) = s.iter().find(|&x| r.principal_set(x) == *s) {
                    return alloc::vec![r.element(g).clone()];
                }
                let mut acc = BitSet::from_indices(r.order(), [0]);
                let mut gens = Vec::new();
                for x in s.iter() {
                    if !acc.contains(x) {
                        acc = subgroup_sum(&acc, &r.principal_set(x), |a, b| r.add(a, b));
                        gens.push(r.element(x).clone());
                    }
                }
                gens
            }
        }
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn arith(&self, op: IdealOp, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        if let (Repr::Principal(a), Repr::Principal(b)) = (&self.repr, &other.repr) {
            let d = match op {
                IdealOp::Sum => gcd(*a, *b),
                IdealOp::Product => a * b,
                IdealOp::Intersection => lcm(*a, *b),
            };
            return Ok(Ideal::multiples(d));
        }
        let r = &self.ring;
        let (a, b) = (self.set(), other.set());
        let set = match op {
            IdealOp::Sum => subgroup_sum(a, b, |x, y| r.add(x, y)),
            IdealOp::Intersection => a.intersection(b),
            IdealOp::Product => {
                let prods: Vec<usize> = a.iter().flat_map(|x| b.iter().map(move |y| r.mul(x, y))).collect();
                let mut uniq = prods;
                uniq.sort_unstable();
                uniq.dedup();
                r.span(&uniq)
            }
        };
        Ok(Ideal::from_set(r, set))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.arith(IdealOp::Sum, other)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.arith(IdealOp::Product, other)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.arith(IdealOp::Intersection, other)
    }

    /// `(self : other) = { r : r * other ⊆ self }`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        if let (Repr::Principal(d), Repr::Principal(e)) = (&self.repr, &other.repr) {
            let q = match (*d, *e) {
                (_, 0) => 1,
                (0, _) => 0,
                (d, e) => d / gcd(d, e),
            };
            return Ok(Ideal::multiples(q));
        }
        let r = &self.ring;
        let (i, j) = (self.set(), other.set());
        let n = r.order();
        let set = BitSet::from_indices(n, (0..n).filter(|&x| j.iter().all(|y| i.contains(r.mul(x, y)))));
        Ok(Ideal::from_set(r, set))
    }

    /// `{ r : r^k ∈ I for some k }`.
    pub fn radical(&self) -> Result<Ideal> {
        if self.ring.is_integers() {
            return Err(Error::Unsupported("radicals of integer ideals".into()));
        }
        Ok(Ideal::from_set(&self.ring, self.ring.radical_of(self.set())))
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_whole() {
            Err(Error::NotProper)
        } else {
            Ok(())
        }
    }

    /// Prime test; the witness is the first pair `a, b ∉ I` with `ab ∈ I`.
    pub fn is_prime(&self) -> Result<Verdict<(Element, Element)>> {
        self.require_proper()?;
        match self.repr {
            Repr::Principal(d) => Ok(integer_prime_verdict(d)),
            Repr::Set(_) => Ok(self.scan(false)),
        }
    }

    /// Weakly prime test: only products `0 ≠ ab ∈ I` are constrained.
    pub fn is_weakly_prime(&self) -> Result<Verdict<(Element, Element)>> {
        self.require_proper()?;
        match self.repr {
            Repr::Principal(d) => Ok(integer_prime_verdict(d)),
            Repr::Set(_) => Ok(self.scan(true)),
        }
    }

    fn scan(&self, weak: bool) -> Verdict<(Element, Element)> {
        let r = &self.ring;
        let s = self.set();
        let n = r.order();
        for a in (0..n).filter(|&a| !s.contains(a)) {
            for b in (0..n).filter(|&b| !s.contains(b)) {
                let ab = r.mul(a, b);
                if s.contains(ab) && !(weak && ab == 0) {
                    return Verdict::Fails((r.element(a).clone(), r.element(b).clone()));
                }
            }
        }
        Verdict::Holds
    }
}

/// `dZ` (d ≠ 1) is prime, and weakly prime, exactly when d = 0 or d is prime.
fn integer_prime_verdict(d: u64) -> Verdict<(Element, Element)> {
    if d == 0 || is_prime(d) {
        return Verdict::Holds;
    }
    let p = (2..=d).find(|p| d.is_multiple_of(*p)).unwrap_or(d);
    Verdict::Fails((Element::Int(p), Element::Int(d / p)))
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Principal(d) => write!(f, "{d}Z"),
            Repr::Set(_) => {
                let gens: Vec<String> = self.generators().iter().map(|g| format!("{g}")).collect();
                write!(f, "({})", gens.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(n: u64) -> Ring {
        Ring::zn(n).unwrap()
    }

    fn ideal(r: &Ring, gens: &[u64]) -> Ideal {
        let g: Vec<Element> = gens.iter().map(|&v| Element::Int(v)).collect();
        Ideal::from_generators(r, &g).unwrap()
    }

    fn ints(i: &Ideal) -> Vec<u64> {
        i.labels().iter().map(|e| e.as_int().unwrap()).collect()
    }

    #[test]
    fn generators_and_closure() {
        let r = z(12);
        assert_eq!(ints(&ideal(&r, &[8])), vec![0, 4, 8]);
        assert_eq!(ints(&ideal(&z(7), &[])), vec![0]);
        let zz = Ring::integers();
        let i = Ideal::from_generators(&zz, &[Element::Int(6), Element::Int(4)]).unwrap();
        assert_eq!(i.integer_generator(), Some(2));
    }

    #[test]
    fn arithmetic_in_z12() {
        let r = z(12);
        let (two, three, six) = (ideal(&r, &[2]), ideal(&r, &[3]), ideal(&r, &[6]));
        assert_eq!(two.product(&three).unwrap(), six);
        assert_eq!(two.intersection(&three).unwrap(), six);
        assert_eq!(two.sum(&Ideal::zero(&r)).unwrap(), two);
        assert!(matches!(two.sum(&Ideal::zero(&z(6))), Err(Error::RingMismatch)));
    }

    #[test]
    fn colon_ideals() {
        let r = z(12);
        assert_eq!(ideal(&r, &[4]).colon(&ideal(&r, &[2])).unwrap(), ideal(&r, &[2]));
        assert!(ideal(&r, &[4]).colon(&Ideal::zero(&r)).unwrap().is_whole());
        assert_eq!(ideal(&r, &[4]).colon(&Ideal::whole(&r)).unwrap(), ideal(&r, &[4]));
        assert_eq!(Ideal::multiples(4).colon(&Ideal::multiples(2)).unwrap(), Ideal::multiples(2));
    }

    #[test]
    fn radicals() {
        let r = z(12);
        assert_eq!(ideal(&r, &[4]).radical().unwrap(), ideal(&r, &[2]));
        assert!(Ideal::whole(&r).radical().unwrap().is_whole());
        assert_eq!(Ideal::zero(&z(4)).radical().unwrap(), ideal(&z(4), &[2]));
        assert!(matches!(Ideal::multiples(4).radical(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn prime_and_weakly_prime() {
        assert!(ideal(&z(6), &[2]).is_prime().unwrap().holds());
        assert_eq!(ideal(&z(12), &[4]).is_prime().unwrap(), Verdict::Fails((Element::Int(2), Element::Int(2))));
        assert!(Ideal::multiples(0).is_prime().unwrap().holds());
        assert_eq!(Ideal::multiples(4).is_weakly_prime().unwrap(), Verdict::Fails((Element::Int(2), Element::Int(2))));
        assert!(Ideal::zero(&z(4)).is_weakly_prime().unwrap().holds());
        assert!(matches!(Ideal::whole(&z(4)).is_prime(), Err(Error::NotProper)));
        assert!(matches!(Ideal::multiples(1).is_weakly_prime(), Err(Error::NotProper)));
    }

    #[test]
    fn zero_ideal_of_z6_is_weakly_prime_not_prime() {
        assert!(Ideal::zero(&z(6)).is_weakly_prime().unwrap().holds());
        // But it is not prime: 2 * 3 = 0.
        assert_eq!(Ideal::zero(&z(6)).is_prime().unwrap(), Verdict::Fails((Element::Int(2), Element::Int(3))));
    }

    #[test]
    fn integer_shortcut_agrees_with_brute_force() {
        for d in 0..=30u64 {
            if d == 1 {
                continue;
            }
            let bound = (d * d).max(4);
            let mut brute = true;
            for a in 1..=bound {
                for b in 1..=bound {
                    let ab = a * b;
                    let in_ideal = if d == 0 { ab == 0 } else { ab % d == 0 };
                    let a_in = d != 0 && a % d == 0;
                    let b_in = d != 0 && b % d == 0;
                    if ab != 0 && in_ideal && !a_in && !b_in {
                        brute = false;
                    }
                }
            }
            let shortcut = Ideal::multiples(d).is_weakly_prime().unwrap().holds();
            assert_eq!(brute, shortcut, "d = {d}");
        }
    }
}
