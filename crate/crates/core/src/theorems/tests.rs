use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::descriptor::RingSpec;

fn int(v: u64) -> Element {
    Element::Int(v)
}

fn zero_ideal(n: u64) -> ModuleSpec {
    ModuleSpec::Cyclic { ring: RingSpec::Zn(n), ideal: vec![int(0)] }
}

fn small() -> Bounds {
    Bounds { ringmax: 6, modmax: 12, arity: 2, targeted: 64 }
}

#[test]
fn t2_on_z4() {
    let inst = Instance::new(zero_ideal(4), vec![int(0)]);
    assert_eq!(verify_theorem(&inst, TheoremId::T_T2).unwrap().status, Status::Pass);
    assert_eq!(verify_theorem(&inst, TheoremId::T_T1).unwrap().status, Status::Pass);
}

#[test]
fn product3_hypothesis_fails() {
    let ring = RingSpec::Product(vec![RingSpec::Zn(2), RingSpec::Zn(3), RingSpec::Zn(5)]);
    let module = ModuleSpec::OverProduct { ring, parts: vec![zero_ideal(2), zero_ideal(3), zero_ideal(5)] };
    let n = Element::Tuple(vec![int(1), int(0), int(0)]);
    let out = verify_theorem(&Instance::new(module, vec![n]), TheoremId::T_PRODUCT3).unwrap();
    assert!(matches!(out.status, Status::NotApplicable(_)), "{out:?}");
}

#[test]
fn errors() {
    let whole = Instance::new(zero_ideal(4), vec![int(1)]);
    assert_eq!(verify_theorem(&whole, TheoremId::T_MAIN), Err(Error::NotProper));
    assert!(matches!("T_NOPE".parse::<TheoremId>(), Err(Error::UnknownTheorem(_))));
    assert!(matches!("NOPE".parse::<Goal>(), Err(Error::UnknownGoal(_))));
    let ids = parse_theorem_filter("T_T2,T_MAIN").unwrap();
    assert_eq!(ids, vec![TheoremId::T_MAIN, TheoremId::T_T2]);
    assert_eq!(parse_theorem_filter("all").unwrap().len(), 29);
}

#[test]
fn instance_display() {
    let inst = Instance::new(zero_ideal(12), vec![int(8)]);
    assert_eq!(inst.to_string(), "ring=Z12; mod=cyc(Z12;0); sub=sub(8)");
}

#[test]
fn search_goals() {
    let r = search_counterexample(Goal::WCP_NOT_CP, &Bounds::default());
    let (inst, w) = r.found.unwrap();
    assert_eq!(inst.module, ModuleSpec::Abelian(vec![4]));
    assert_eq!(inst.to_string(), "ring=ZZ; mod=ab(4); sub=sub()");
    assert_eq!(w.to_string(), "a=2 b=2 m=1");
    let tiny = Bounds { ringmax: 2, modmax: 4, arity: 2, targeted: 64 };
    assert!(search_counterexample(Goal::PROD3_CONVERSE, &tiny).found.is_none());
}

#[test]
fn small_sweep_has_no_failures() {
    let report = run_suite(&small(), TheoremId::ALL);
    for t in &report.theorems {
        assert_eq!(t.fail, 0, "{} {:?}", t.id, t.witnesses);
        assert_eq!(
            t.pass + t.fail + t.na + usize::from(t.mode == Mode::Observe) * (t.observed_true + t.observed_false),
            t.instances
        );
    }
    assert!(!report.any_fail());
    assert_eq!(report.instances, generate_instances(&small()).len());
}

#[test]
fn empty_bounds() {
    let b = Bounds { ringmax: 0, ..Bounds::default() };
    let r = run_suite(&b, TheoremId::ALL);
    assert_eq!(r.instances, 0);
    assert!(r.theorems.iter().all(|t| t.vacuous));
}

#[test]
fn outcomes_replay() {
    for spec in generate_modules(&small()).iter().step_by(7) {
        for (inst, outs) in check_module(spec, TheoremId::ALL, &small()).unwrap() {
            for o in outs {
                assert!(replay(&inst, &o).unwrap(), "{inst} {}", o.id);
            }
        }
    }
}

/// Condition (2) of the characterization, straight from the definition:
/// `(N:_M ab) = (0:_M ab) ∪ (N:_M a) ∪ (N:_M b)` for all `a, b`.
fn condition_two_oracle(m: &Module, n: &Submodule) -> bool {
    let k = m.eff_order();
    let r = m.eff_ring();
    let inside = |x: usize| n.set().contains(x);
    (0..k).all(|a| {
        (0..k).all(|b| {
            let ab = r.mul(a, b);
            (0..m.order()).all(|x| {
                let lhs = inside(m.act(ab, x));
                let rhs = m.act(ab, x) == 0 || inside(m.act(a, x)) || inside(m.act(b, x));
                lhs == rhs
            })
        })
    })
}

#[test]
fn classify_agrees_with_condition_two() {
    for spec in generate_modules(&small()) {
        let m = spec.build().unwrap();
        for n in m.enumerate_submodules().unwrap().into_iter().filter(|n| n.is_proper()) {
            let wcp = crate::predicates::classify(&n).unwrap().weakly_classical_prime.holds();
            assert_eq!(wcp, condition_two_oracle(&m, &n), "{spec} {n}");
        }
    }
}

#[test]
fn observe_checks_never_fail() {
    let report = run_suite(&small(), &[TheoremId::T_FAITH, TheoremId::T_MAIN2]);
    let faith = report.theorem(TheoremId::T_FAITH).unwrap();
    assert_eq!(faith.mode, Mode::Observe);
    assert_eq!(faith.pass + faith.fail, 0);
    let _: Vec<_> = report.gallery.iter().map(|g| g.theorem).collect();
}
