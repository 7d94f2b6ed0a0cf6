use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::ring::Ring;

fn int(v: u64) -> Element {
    Element::Int(v)
}

fn z(n: u64) -> Ring {
    Ring::zn(n).unwrap()
}

fn over_itself(n: u64) -> Module {
    let r = z(n);
    Module::cyclic(&r, &Ideal::zero(&r)).unwrap()
}

/// Scalars as labels: ring elements, or `0..2e` for integer scalars so the
/// oracle does not rely on reduction modulo the exponent.
fn scalars(m: &Module) -> Vec<Element> {
    if m.scalars().is_integers() {
        (0..2 * m.exponent()).map(int).collect()
    } else {
        m.scalars().elements().to_vec()
    }
}

struct Oracle {
    m: Module,
    n: Vec<bool>,
    rs: Vec<Element>,
}

impl Oracle {
    fn new(s: &Submodule) -> Self {
        let m = s.module().clone();
        let n = (0..m.order()).map(|x| s.contains(x)).collect();
        Oracle { rs: scalars(&m), m, n }
    }

    fn act(&self, a: &Element, x: usize) -> usize {
        self.m.index_of(&self.m.act_scalar(a, self.m.element(x)).unwrap()).unwrap()
    }

    fn times(&self, a: &Element, b: &Element, x: usize) -> usize {
        self.act(a, self.act(b, x))
    }

    fn in_colon(&self, a: &Element) -> bool {
        (0..self.m.order()).all(|x| self.n[self.act(a, x)])
    }

    /// `[prime, weakly prime, classical, wcp, 2-abs, weakly 2-abs]`.
    fn flags(&self) -> [bool; 6] {
        let mut f = [true; 6];
        for a in &self.rs {
            for x in 0..self.m.order() {
                let ax = self.act(a, x);
                if self.n[ax] && !self.n[x] && !self.in_colon(a) {
                    f[0] = false;
                    if ax != 0 {
                        f[1] = false;
                    }
                }
            }
            for b in &self.rs {
                for x in 0..self.m.order() {
                    let abx = self.times(a, b, x);
                    if !self.n[abx] || self.n[self.act(a, x)] || self.n[self.act(b, x)] {
                        continue;
                    }
                    f[2] = false;
                    if abx != 0 {
                        f[3] = false;
                    }
                    let ab_in = (0..self.m.order()).all(|y| self.n[self.times(a, b, y)]);
                    if !ab_in {
                        f[4] = false;
                        if abx != 0 {
                            f[5] = false;
                        }
                    }
                }
            }
        }
        f
    }
}

fn proper_submodules(m: &Module) -> Vec<Submodule> {
    m.enumerate_submodules().unwrap().into_iter().filter(|s| s.is_proper()).collect()
}

fn sample_modules() -> Vec<Module> {
    let mut out = vec![
        Module::abelian(&[4]).unwrap(),
        Module::abelian(&[8]).unwrap(),
        Module::abelian(&[2, 3]).unwrap(),
        Module::abelian(&[2, 4]).unwrap(),
        Module::abelian(&[2, 2]).unwrap(),
        Module::abelian(&[12]).unwrap(),
        over_itself(8),
        over_itself(12),
        Module::free(&z(4), 2).unwrap(),
    ];
    let r = Ring::product(&[z(2), z(4)]).unwrap();
    out.push(Module::cyclic(&r, &Ideal::zero(&r)).unwrap());
    let r = z(8);
    let q = Module::cyclic(&r, &Ideal::from_generators(&r, &[int(4)]).unwrap()).unwrap();
    out.push(Module::direct_sum(&[q, over_itself(8)]).unwrap());
    out
}

#[test]
fn zero_of_z4_is_wcp_not_classical_prime() {
    let m = Module::abelian(&[4]).unwrap();
    let rep = classify(&m.zero_submodule()).unwrap();
    assert!(rep.weakly_classical_prime.holds());
    assert_eq!(rep.classical_prime, Verdict::Fails((int(2), int(2), int(1))));
    assert!(rep.weakly_prime.holds());
    assert!(!rep.prime.holds());
}

#[test]
fn four_z8_is_not_wcp() {
    let m = Module::abelian(&[8]).unwrap();
    let n = m.submodule(&[int(4)]).unwrap();
    let rep = classify(&n).unwrap();
    assert_eq!(rep.weakly_classical_prime, Verdict::Fails((int(2), int(2), int(1))));
}

#[test]
fn zero_of_z2_plus_z3_is_wcp_not_classical() {
    let m = Module::abelian(&[2, 3]).unwrap();
    let rep = classify(&m.zero_submodule()).unwrap();
    assert!(rep.weakly_classical_prime.holds());
    let one = Element::tuple([int(1), int(1)]);
    assert_eq!(rep.classical_prime, Verdict::Fails((int(2), int(3), one)));
}

#[test]
fn whole_and_degenerate_are_rejected() {
    let m = Module::abelian(&[4]).unwrap();
    assert_eq!(classify(&m.whole()), Err(Error::NotProper));
    let zero = Module::abelian(&[]).unwrap();
    assert!(matches!(classify(&zero.zero_submodule()), Err(Error::NotApplicable(_))));
}

#[test]
fn classification_matches_oracle() {
    for m in sample_modules() {
        for n in proper_submodules(&m) {
            let rep = classify(&n).unwrap();
            assert_eq!(rep.flags(), Oracle::new(&n).flags(), "{n:?}");
            assert!(rep.ladder_violations().is_empty(), "{n:?}");
            assert!(rep.revalidate(&n).unwrap(), "{n:?}");
        }
    }
}

#[test]
fn triple_zeros_of_z4() {
    let m = Module::abelian(&[4]).unwrap();
    let tz = classical_triple_zeros(&m.zero_submodule()).unwrap();
    assert!(tz.contains(&TripleZero { a: int(2), b: int(2), m: int(1) }));
    for t in &tz {
        let bm = m.act_scalar(&t.b, &t.m).unwrap();
        assert_eq!(m.act_scalar(&t.a, &bm).unwrap(), int(0));
        assert_ne!(m.act_scalar(&t.a, &t.m).unwrap(), int(0));
    }
    let m8 = Module::abelian(&[8]).unwrap();
    let n = m8.submodule(&[int(4)]).unwrap();
    assert_eq!(classical_triple_zeros(&n), Err(Error::NotWeaklyClassicalPrime));
}

#[test]
fn free_triple_zero_checks_hypothesis() {
    let r = z(4);
    let m = over_itself(4);
    let n = m.zero_submodule();
    let two = Ideal::from_generators(&r, &[int(2)]).unwrap();
    assert!(!is_free_triple_zero(&n, &two, &two, &m.whole()).unwrap());
    let whole = Ideal::whole(&r);
    assert!(matches!(is_free_triple_zero(&n, &whole, &whole, &m.whole()), Err(Error::HypothesisFailed(_))));
    // Ideals meeting no triple-zero.
    let zero = Ideal::zero(&r);
    assert!(is_free_triple_zero(&n, &zero, &whole, &m.whole()).unwrap());
}

#[test]
fn two_z8_satisfies_all_main_conditions() {
    let m = over_itself(8);
    let n = m.submodule(&[int(2)]).unwrap();
    let c = main_conditions(&n).unwrap();
    assert_eq!(c.holds, vec![true; 7]);
}

#[test]
fn main_conditions_agree_with_wcp() {
    for m in sample_modules() {
        for n in proper_submodules(&m) {
            let wcp = Oracle::new(&n).flags()[3];
            let c = main_conditions(&n).unwrap();
            assert_eq!(c.holds, vec![wcp; 7], "{n:?}");
            if !wcp {
                assert!(c.witnesses.iter().all(Option::is_some));
            }
        }
    }
}

#[test]
fn main2_first_condition_is_wcp() {
    for m in sample_modules() {
        for n in proper_submodules(&m) {
            let c = main2_conditions(&n).unwrap();
            assert_eq!(c.get(1), Oracle::new(&n).flags()[3]);
            // Element conditions are the cyclic case of the submodule ones.
            if c.get(3) {
                assert!(c.get(1));
            }
            if c.get(7) {
                assert!(main_conditions(&n).unwrap().get(7));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_abelian_classification(ds in prop::collection::vec(2u64..7, 1..3), pick in 0usize..64) {
        let m = Module::abelian(&ds).unwrap();
        prop_assume!(m.order() <= 36);
        let subs = proper_submodules(&m);
        let n = &subs[pick % subs.len()];
        let rep = classify(n).unwrap();
        prop_assert_eq!(rep.flags(), Oracle::new(n).flags());
        prop_assert!(rep.ladder_violations().is_empty());
        prop_assert!(rep.revalidate(n).unwrap());
    }

    #[test]
    fn random_cyclic_ring_modules(n in 2u64..17, d in 0u64..17, pick in 0usize..64) {
        let r = z(n);
        let m = Module::cyclic(&r, &Ideal::from_generators(&r, &[int(d % n)]).unwrap()).unwrap();
        prop_assume!(!m.is_degenerate());
        let subs = proper_submodules(&m);
        let s = &subs[pick % subs.len()];
        let c = main_conditions(s).unwrap();
        prop_assert!(c.all_equal());
        prop_assert_eq!(c.get(1), Oracle::new(s).flags()[3]);
    }
}
