use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::ring::MultiplicativeSet;

fn z(n: u64) -> Ring {
    Ring::zn(n).unwrap()
}

fn int(v: u64) -> Element {
    Element::Int(v)
}

fn pair(a: u64, b: u64) -> Element {
    Element::tuple([int(a), int(b)])
}

fn over_itself(n: u64) -> Module {
    let r = z(n);
    Module::cyclic(&r, &Ideal::zero(&r)).unwrap()
}

fn ints(s: &Submodule) -> Vec<u64> {
    s.labels().iter().map(|e| e.as_int().unwrap()).collect()
}

#[test]
fn cyclic_modules() {
    let m = over_itself(4);
    assert_eq!(m.order(), 4);
    assert!(m.is_cyclic());
    let r = z(12);
    let m = Module::cyclic(&r, &Ideal::from_generators(&r, &[int(4)]).unwrap()).unwrap();
    assert_eq!(m.order(), 4);
    // Coset oracle: r·(x + 4Z12) is rx mod 4.
    for a in 0..12u64 {
        for x in 0..4u64 {
            assert_eq!(m.act_scalar(&int(a), &int(x)).unwrap(), int((a * x) % 4));
        }
    }
    let z2 = z(2);
    assert!(Module::cyclic(&z2, &Ideal::whole(&z2)).unwrap().is_degenerate());
}

#[test]
fn abelian_modules() {
    let m = Module::abelian(&[8]).unwrap();
    assert_eq!((m.order(), m.exponent()), (8, 8));
    assert!(m.scalars().is_integers());
    assert_eq!(Module::abelian(&[2, 3]).unwrap().exponent(), 6);
    assert_eq!(Module::abelian(&[4, 2]).unwrap().exponent(), 4);
    assert!(Module::abelian(&[]).unwrap().is_degenerate());
}

#[test]
fn integer_action_depends_on_residue_only() {
    let m = Module::abelian(&[4, 6]).unwrap();
    let e = m.exponent();
    for x in 0..m.order() {
        let mut acc = 0;
        for a in 0..3 * e {
            assert_eq!(m.act((a % e) as usize, x), acc);
            acc = m.add(acc, x);
        }
    }
}

#[test]
fn direct_sums_and_products() {
    let r = z(4);
    let a = over_itself(4);
    let b = Module::cyclic(&r, &Ideal::from_generators(&r, &[int(2)]).unwrap()).unwrap();
    let s = Module::direct_sum(&[a.clone(), b]).unwrap();
    assert_eq!(s.order(), 8);
    assert_eq!(s.act_scalar(&int(3), &pair(1, 1)).unwrap(), pair(3, 1));
    assert_eq!(Module::direct_sum(core::slice::from_ref(&a)).unwrap(), a);
    assert!(matches!(Module::direct_sum(&[a, over_itself(3)]), Err(Error::RingMismatch)));

    let p = Ring::product(&[z(2), z(3)]).unwrap();
    let m = Module::over_product(&p, &[over_itself(2), over_itself(3)]).unwrap();
    assert_eq!(m.order(), 6);
    assert_eq!(m.act_scalar(&pair(1, 0), &pair(1, 2)).unwrap(), pair(1, 0));
    let p3 = Ring::product(&[z(2), z(3), z(5)]).unwrap();
    let m3 = Module::over_product(&p3, &[over_itself(2), over_itself(3), over_itself(5)]).unwrap();
    assert_eq!(m3.order(), 30);
    assert!(m3.flags(None).faithful);
    assert!(Module::over_product(&p, &[over_itself(2), over_itself(3), over_itself(5)]).is_err());
}

#[test]
fn free_modules() {
    let r = z(4);
    assert_eq!(Module::free(&r, 2).unwrap().order(), 16);
    assert_eq!(Module::free(&r, 1).unwrap().order(), 4);
    assert!(Module::free(&r, 0).unwrap().is_degenerate());
}

#[test]
fn quotients() {
    let m = Module::abelian(&[8]).unwrap();
    let l = m.submodule(&[int(4)]).unwrap();
    let (q, p) = m.quotient(&l).unwrap();
    assert_eq!(q.order(), 4);
    assert!(p.is_surjective());
    assert_eq!(ints(&p.kernel()), vec![0, 4]);
    let (q0, _) = m.quotient(&m.zero_submodule()).unwrap();
    assert_eq!(q0.order(), 8);
    assert!(m.quotient(&m.whole()).unwrap().0.is_degenerate());
}

#[test]
fn submodule_generation() {
    let m = Module::abelian(&[8]).unwrap();
    assert_eq!(ints(&m.submodule(&[int(4)]).unwrap()), vec![0, 4]);
    assert!(m.submodule(&[]).unwrap().is_zero());
    let v = Module::free(&z(2), 2).unwrap();
    let l = v.submodule(&[pair(1, 0)]).unwrap();
    assert_eq!(l.labels(), vec![pair(0, 0), pair(1, 0)]);
}

#[test]
fn enumeration() {
    assert_eq!(over_itself(12).enumerate_submodules().unwrap().len(), 6);
    assert_eq!(Module::free(&z(2), 2).unwrap().enumerate_submodules().unwrap().len(), 5);
    assert_eq!(Module::abelian(&[]).unwrap().enumerate_submodules().unwrap().len(), 1);
    let big = Module::free(&z(5), 3).unwrap();
    assert!(matches!(big.enumerate_submodules(), Err(Error::TooLarge { .. })));
    assert!(big.enumerate_submodules_bounded(125).is_ok());
}

#[test]
fn lattice_closed_under_sum_and_intersection() {
    for m in [Module::abelian(&[2, 4]).unwrap(), Module::free(&z(4), 2).unwrap(), over_itself(12)] {
        let subs = m.enumerate_submodules().unwrap();
        for a in &subs {
            for b in &subs {
                assert!(subs.contains(&a.sum(b).unwrap()));
                assert!(subs.contains(&a.intersection(b).unwrap()));
            }
        }
    }
}

#[test]
fn colon_ideals() {
    let m = over_itself(12);
    let n = m.submodule(&[int(4)]).unwrap();
    let r = z(12);
    assert_eq!(n.colon(&m.whole()).unwrap(), Ideal::from_generators(&r, &[int(4)]).unwrap());
    assert!(n.colon(&m.zero_submodule()).unwrap().is_whole());
    let z4 = Module::abelian(&[4]).unwrap();
    assert_eq!(z4.zero_submodule().colon(&z4.whole()).unwrap(), Ideal::multiples(4));
    assert_eq!(z4.annihilator(), Ideal::multiples(4));
    assert_eq!(z4.zero_submodule().colon_element(&int(2)).unwrap(), Ideal::multiples(2));
}

#[test]
fn colon_submodules() {
    let m = over_itself(12);
    let n = m.submodule(&[int(4)]).unwrap();
    assert_eq!(ints(&n.colon_module(&int(2)).unwrap()), vec![0, 2, 4, 6, 8, 10]);
    assert_eq!(n.colon_module(&int(1)).unwrap(), n);
    assert!(n.colon_module(&int(0)).unwrap().is_whole());
    assert_eq!(n.colon_module_pair(&int(2), &int(2)).unwrap(), m.submodule(&[int(1)]).unwrap());
}

#[test]
fn colon_duality() {
    let m = Module::abelian(&[2, 4]).unwrap();
    for n in m.enumerate_submodules().unwrap() {
        for a in 0..m.exponent() {
            let col = n.colon_module(&int(a)).unwrap();
            assert!(n.is_subset(&col));
            for x in m.elements() {
                let lhs = n.colon_element(&x).unwrap().contains_integer(a);
                assert_eq!(lhs, col.contains_element(&x).unwrap());
            }
        }
    }
}

#[test]
fn ideal_action() {
    let m = over_itself(12);
    let r = z(12);
    let two = Ideal::from_generators(&r, &[int(2)]).unwrap();
    assert_eq!(m.whole().scaled_by(&two).unwrap(), m.submodule(&[int(2)]).unwrap());
    assert!(m.zero_submodule().scaled_by(&two).unwrap().is_zero());
    let z8 = Module::abelian(&[8]).unwrap();
    let s = z8.submodule(&[int(2)]).unwrap().scaled_by(&Ideal::multiples(2)).unwrap();
    assert_eq!(ints(&s), vec![0, 4]);
}

#[test]
fn flags() {
    let f = over_itself(4).flags(None);
    assert!(f.faithful && f.cyclic && !f.torsion_free);
    let f = Module::free(&z(2), 2).unwrap().flags(None);
    assert!(f.faithful && !f.cyclic);
    let f = Module::abelian(&[]).unwrap().flags(None);
    assert!(f.torsion_free && f.degenerate);
    assert!(over_itself(5).flags(None).torsion_free);
    let z4 = Module::abelian(&[4]).unwrap();
    let f = z4.flags(Some(&z4.submodule(&[int(2)]).unwrap()));
    assert!(!f.faithful);
    assert_eq!(f.annihilator, Ideal::multiples(4));
    assert_eq!(f.zero_divisors.to_vec(), vec![0, 2]);
    assert_eq!(f.quotient_zero_divisors.unwrap().to_vec(), vec![0, 2]);
}

#[test]
fn homomorphisms() {
    let z8 = Module::abelian(&[8]).unwrap();
    let two = z8.submodule(&[int(2)]).unwrap();
    let inc = ModuleHom::inclusion(&two);
    assert!(inc.is_injective());
    let image = inc.image(&inc.source().whole()).unwrap();
    assert_eq!(ints(&image), vec![0, 2, 4, 6]);

    let four = z8.submodule(&[int(4)]).unwrap();
    let p = ModuleHom::projection(&z8, &four).unwrap();
    assert!(p.is_surjective());
    assert_eq!(ints(&p.preimage(&p.target().zero_submodule()).unwrap()), vec![0, 4]);
    let id = ModuleHom::identity(&z8);
    assert_eq!(id.image(&four).unwrap(), four);

    let z4 = over_itself(4);
    let ok = ModuleHom::new(&z4, &z4, &[(int(1), int(2))]).unwrap();
    assert_eq!(ok.apply(3), 2);
    let bad = ModuleHom::new(&z4, &z4, &[(int(1), int(2)), (int(2), int(1))]);
    assert!(matches!(bad, Err(Error::NotAHomomorphism(_))));
}

#[test]
fn hom_image_preimage_laws() {
    let m = Module::abelian(&[2, 4]).unwrap();
    for l in m.enumerate_submodules().unwrap() {
        let p = ModuleHom::projection(&m, &l).unwrap();
        let q = p.target().clone();
        for n2 in q.enumerate_submodules().unwrap() {
            let pre = p.preimage(&n2).unwrap();
            assert!(p.image(&pre).unwrap().is_subset(&n2));
        }
        for n in m.enumerate_submodules().unwrap().into_iter().filter(|n| l.is_subset(n)) {
            assert_eq!(p.preimage(&p.image(&n).unwrap()).unwrap(), n);
        }
    }
}

#[test]
fn localization() {
    let m = over_itself(6);
    let s = MultiplicativeSet::generated(&z(6), &[int(3)]).unwrap();
    let loc = m.localize(&s).unwrap();
    assert_eq!(loc.module.order(), 2);
    assert_eq!(loc.ring.ring.order(), 2);
    assert_eq!(loc.ring.kernel.elements(), vec![0, 2, 4]);
    assert_eq!(loc.module.order() * loc.kernel.len(), m.order());

    let one = MultiplicativeSet::generated(&z(6), &[]).unwrap();
    assert_eq!(m.localize(&one).unwrap().module.order(), 6);

    let z4 = over_itself(4);
    let s0 = MultiplicativeSet::generated(&z(4), &[int(2)]).unwrap();
    let loc = z4.localize(&s0).unwrap();
    assert!(loc.module.is_degenerate() && loc.ring.degenerate);
}

#[test]
fn localization_size_identity() {
    let r = Ring::product(&[z(4), z(3)]).unwrap();
    let m = Module::free(&r, 1).unwrap();
    for s in 0..r.order() {
        let set = MultiplicativeSet::from_indices(&r, &[s]);
        let loc = m.localize(&set).unwrap();
        assert_eq!(loc.module.order() * loc.kernel.len(), m.order());
        for (x, &y) in loc.map.iter().enumerate() {
            for t in 0..r.order() {
                let ty = loc.module.act(loc.module.eff_map()[loc.ring.map[t]], y);
                assert_eq!(loc.map[m.act_raw(t, x)], ty);
            }
        }
    }
}

#[test]
fn specs_rebuild_identically() {
    let specs = [
        ModuleSpec::Abelian(vec![2, 4]),
        ModuleSpec::Cyclic { ring: crate::RingSpec::Zn(12), ideal: vec![int(8)] },
        ModuleSpec::Free { ring: crate::RingSpec::Zn(3), rank: 2 },
        ModuleSpec::Quotient { module: Box::new(ModuleSpec::Abelian(vec![8])), gens: vec![int(4)] },
        ModuleSpec::Sub { module: Box::new(ModuleSpec::Abelian(vec![8])), gens: vec![int(2)] },
        ModuleSpec::Localized {
            module: Box::new(ModuleSpec::Cyclic { ring: crate::RingSpec::Zn(6), ideal: vec![] }),
            gens: vec![int(3)],
        },
    ];
    for spec in specs {
        let a = spec.build().unwrap();
        let b = spec.build().unwrap();
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a, b);
        a.validate().unwrap();
    }
}
