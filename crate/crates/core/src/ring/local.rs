use alloc::vec::Vec;

use super::{Ideal, Ring};
use crate::bitset::BitSet;
use crate::element::Element;
use crate::error::{Error, Result};

/// A multiplicatively closed subset of a finite ring containing 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeSet {
    ring: Ring,
    gens: Vec<Element>,
    set: BitSet,
}

impl MultiplicativeSet {
    /// The smallest multiplicative set containing `gens`.
    pub fn generated(ring: &Ring, gens: &[Element]) -> Result<MultiplicativeSet> {
        if ring.is_integers() {
            return Err(Error::Unsupported("localizing the integers".into()));
        }
        let idx = gens.iter().map(|g| ring.index_of(g)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(ring, &idx))
    }

    pub(crate) fn from_indices(ring: &Ring, gens: &[usize]) -> MultiplicativeSet {
        let mut set = BitSet::from_indices(ring.order(), [ring.one()]);
        let mut frontier = alloc::vec![ring.one()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = ring.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let gens = gens.iter().map(|&g| ring.element(g).clone()).collect();
        MultiplicativeSet { ring: ring.clone(), gens, set }
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn contains_zero(&self) -> bool {
        self.set.contains(0)
    }

    pub fn members(&self) -> Vec<usize> {
        self.set.to_vec()
    }
}

/// `S⁻¹R` for a finite ring, realised as `R/K` with `K` the `S`-torsion ideal.
#[derive(Clone, Debug)]
pub struct Localization {
    pub ring: Ring,
    /// Canonical map `R → S⁻¹R`, by element index.
    pub map: Vec<usize>,
    pub kernel: Ideal,
    /// True when `0 ∈ S`, so the localization is the zero ring.
    pub degenerate: bool,
}

pub fn localize_ring(s: &MultiplicativeSet) -> Localization {
    let r = &s.ring;
    let n = r.order();
    let members = s.members();
    let kernel = BitSet::from_indices(n, (0..n).filter(|&x| members.iter().any(|&t| r.mul(t, x) == 0)));
    let (ring, map) = Ring::quotient_unchecked(r, &kernel);
    Localization { ring, map, kernel: Ideal::from_set(r, kernel), degenerate: s.contains_zero() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localize_z12_at_powers_of_two() {
        let r = Ring::zn(12).unwrap();
        let s = MultiplicativeSet::generated(&r, &[Element::Int(2)]).unwrap();
        assert_eq!(s.members(), alloc::vec![1, 2, 4, 8]);
        let l = localize_ring(&s);
        // Z12 = Z4 x Z3; inverting 2 kills the Z4 part.
        assert_eq!(l.ring.order(), 3);
        assert!(!l.degenerate);
        assert_eq!(l.kernel.elements(), alloc::vec![0, 3, 6, 9]);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(l.map[r.mul(a, b)], l.ring.mul(l.map[a], l.map[b]));
            }
        }
        // Elements of S become units.
        for t in s.members() {
            let u = l.map[t];
            assert!((0..3).any(|v| l.ring.mul(u, v) == l.ring.one()));
        }
    }

    #[test]
    fn zero_in_s_gives_zero_ring() {
        let r = Ring::zn(4).unwrap();
        let s = MultiplicativeSet::generated(&r, &[Element::Int(2)]).unwrap();
        let l = localize_ring(&s);
        assert!(l.degenerate);
        assert!(l.ring.is_degenerate());
    }

    #[test]
    fn units_localize_trivially() {
        let r = Ring::zn(9).unwrap();
        let s = MultiplicativeSet::generated(&r, &[Element::Int(2)]).unwrap();
        assert_eq!(localize_ring(&s).ring.order(), 9);
    }
}
