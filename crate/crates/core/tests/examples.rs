use wcprime_core::multiplication::{is_multiplication, m_radical, radical_formula};
use wcprime_core::predicates::{classical_triple_zeros, classify};
use wcprime_core::ring::MultiplicativeSet;
use wcprime_core::theorems::{
    generate_modules, search_counterexample, verify_theorem, Bounds, Goal, Instance, Status, TheoremId,
};
use wcprime_core::{Element, Module, ModuleSpec, Ring, RingSpec, Submodule};

fn int(v: u64) -> Element {
    Element::Int(v)
}

fn sub(m: &Module, gens: &[Element]) -> Submodule {
    m.submodule(gens).unwrap()
}

/// Weakly classical primeness straight from the definition. Scalars act
/// through the effective ring, and `abm` is computed as `a(bm)`.
fn wcp_oracle(m: &Module, n: &Submodule) -> bool {
    let k = m.eff_order();
    for a in 0..k {
        for b in 0..k {
            for x in 0..m.order() {
                let abx = m.act(a, m.act(b, x));
                if abx != 0 && n.contains(abx) && !n.contains(m.act(a, x)) && !n.contains(m.act(b, x)) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn zero_in_z4_over_integers() {
    let m = Module::abelian(&[4]).unwrap();
    let n = m.zero_submodule();
    let r = classify(&n).unwrap();
    assert!(r.weakly_classical_prime.holds());
    assert_eq!(r.classical_prime.witness(), Some(&(int(2), int(2), int(1))));
    let colon = n.colon(&m.whole()).unwrap();
    assert_eq!(colon.integer_generator(), Some(4));
    assert!(!colon.is_weakly_prime().unwrap().holds());
    assert!(classical_triple_zeros(&n)
        .unwrap()
        .iter()
        .any(|t| (t.a.clone(), t.b.clone(), t.m.clone()) == (int(2), int(2), int(1))));
}

#[test]
fn four_z8_is_not_wcp() {
    let m = Module::abelian(&[8]).unwrap();
    let n = sub(&m, &[int(4)]);
    let r = classify(&n).unwrap();
    assert_eq!(r.weakly_classical_prime.witness(), Some(&(int(2), int(2), int(1))));
    assert!(!wcp_oracle(&m, &n));
}

#[test]
fn zero_in_z2_plus_z3() {
    let m = Module::abelian(&[2, 3]).unwrap();
    let r = classify(&m.zero_submodule()).unwrap();
    assert!(r.weakly_classical_prime.holds());
    assert!(!r.classical_prime.holds());
    // 6 kills (1,1) while 2(1,1) and 3(1,1) are nonzero.
    let six = m.act_scalar(&int(6), &Element::tuple([int(1), int(1)])).unwrap();
    assert_eq!(six, m.element(0).clone());
}

#[test]
fn classification_matches_definition_over_the_sweep() {
    let bounds = Bounds::default();
    let mut seen = 0;
    for spec in generate_modules(&bounds) {
        let m = spec.build().unwrap();
        for n in m.enumerate_submodules().unwrap().into_iter().filter(Submodule::is_proper) {
            let r = classify(&n).unwrap();
            assert_eq!(r.weakly_classical_prime.holds(), wcp_oracle(&m, &n), "{spec} {n}");
            assert!(r.revalidate(&n).unwrap());
            seen += 1;
        }
    }
    assert_eq!(seen, wcprime_core::theorems::generate_instances(&bounds).len());
}

#[test]
fn m_radical_formula_on_multiplication_modules() {
    let bounds = Bounds { ringmax: 12, modmax: 24, arity: 2, targeted: 64 };
    for spec in generate_modules(&bounds) {
        let m = spec.build().unwrap();
        if !is_multiplication(&m).unwrap().holds() {
            continue;
        }
        for n in m.enumerate_submodules().unwrap().into_iter().filter(Submodule::is_proper) {
            assert_eq!(m_radical(&n).unwrap().submodule, radical_formula(&n), "{spec} {n}");
        }
    }
}

#[test]
fn localization_sizes() {
    let bounds = Bounds { ringmax: 12, modmax: 24, arity: 2, targeted: 64 };
    for spec in generate_modules(&bounds) {
        let m = spec.build().unwrap();
        if m.scalars().is_integers() {
            continue;
        }
        for s in m.scalars().elements() {
            let set = MultiplicativeSet::generated(m.scalars(), std::slice::from_ref(s)).unwrap();
            let loc = m.localize(&set).unwrap();
            let members: Vec<usize> =
                set.members().iter().map(|&i| m.scalar_index(m.scalars().element(i)).unwrap()).collect();
            let kernel = (0..m.order()).filter(|&x| members.iter().any(|&t| m.act(t, x) == 0)).count();
            assert_eq!(loc.kernel.len(), kernel, "{spec} s={s}");
            assert_eq!(loc.module.order() * kernel, m.order(), "{spec} s={s}");
        }
    }
}

#[test]
fn spec_examples_for_checks() {
    let z4 = ModuleSpec::Cyclic { ring: RingSpec::Zn(4), ideal: vec![int(0)] };
    let out = verify_theorem(&Instance::new(z4, vec![]), TheoremId::T_T2).unwrap();
    assert_eq!(out.status, Status::Pass);
    let r = Ring::product(&[Ring::zn(2).unwrap(), Ring::zn(3).unwrap(), Ring::zn(5).unwrap()]).unwrap();
    assert_eq!(r.order(), 30);
}

#[test]
fn search_results() {
    let b = Bounds::default();
    let show = |g| {
        let r = search_counterexample(g, &b);
        r.found.map(|(i, w)| format!("{i} :: {w}"))
    };
    assert_eq!(show(Goal::WCP_NOT_CP).unwrap(), "ring=ZZ; mod=ab(4); sub=sub() :: a=2 b=2 m=1");
    assert_eq!(show(Goal::WCP_NOT_WP).unwrap(), "ring=ZZ; mod=ab(2,6); sub=sub((0,3)) :: a=3 m=(0,1)");
    assert_eq!(show(Goal::PROD3_CONVERSE).unwrap(), "ring=ZZ; mod=ab(2,12); sub=sub((0,3)) :: a=2 b=3 m=(1,1)");
    assert_eq!(
        show(Goal::PRODUCT2_CONVERSE).unwrap(),
        "ring=prod(Z2,Z4); mod=pmod(prod(Z2,Z4);cyc(Z2;0),cyc(Z4;0)); sub=sub((0,2)) :: a=(0,1) b=(1,2) m=(1,1)"
    );
    let tiny = Bounds { ringmax: 2, modmax: 4, arity: 2, targeted: 64 };
    assert!(search_counterexample(Goal::PROD3_CONVERSE, &tiny).found.is_none());
}

/// The frozen search witnesses, rechecked from the definitions.
#[test]
fn search_witnesses_hold() {
    let m = Module::abelian(&[2, 6]).unwrap();
    let n = sub(&m, &[Element::tuple([int(0), int(3)])]);
    assert!(wcp_oracle(&m, &n));
    let x = Element::tuple([int(0), int(1)]);
    let three_x = m.act_scalar(&int(3), &x).unwrap();
    assert!(n.contains_element(&three_x).unwrap() && three_x != m.element(0).clone());
    assert!(!n.contains_element(&x).unwrap());
    assert!(!n.colon(&m.whole()).unwrap().contains_integer(3));

    let m = Module::abelian(&[2, 12]).unwrap();
    let n = sub(&m, &[Element::tuple([int(0), int(3)])]);
    assert!(!wcp_oracle(&m, &n));
    for (comp, gens) in [(2u64, vec![]), (12, vec![int(3)])] {
        let c = Module::abelian(&[comp]).unwrap();
        assert!(wcp_oracle(&c, &sub(&c, &gens)));
    }
}
