use proptest::prelude::*;

use wcprime::parse_instance;
use wcprime_core::theorems::{generate_instances, Bounds, Instance};
use wcprime_core::{Element, ModuleSpec, RingSpec};

fn element() -> impl Strategy<Value = Element> {
    let leaf = (0u64..100).prop_map(Element::Int);
    leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 1..4).prop_map(Element::Tuple))
}

fn gens() -> impl Strategy<Value = Vec<Element>> {
    prop::collection::vec(element(), 0..3)
}

fn ring() -> impl Strategy<Value = RingSpec> {
    let leaf = prop_oneof![(0u64..40).prop_map(RingSpec::Zn), Just(RingSpec::Integers)];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(RingSpec::Product),
            (inner, gens()).prop_map(|(r, g)| RingSpec::Quotient(Box::new(r), g)),
        ]
    })
}

fn module() -> impl Strategy<Value = ModuleSpec> {
    let leaf = prop_oneof![
        (ring(), gens()).prop_map(|(ring, ideal)| ModuleSpec::Cyclic { ring, ideal }),
        prop::collection::vec(1u64..50, 0..4).prop_map(ModuleSpec::Abelian),
        (ring(), 0usize..5).prop_map(|(ring, rank)| ModuleSpec::Free { ring, rank }),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(ModuleSpec::DirectSum),
            (ring(), prop::collection::vec(inner.clone(), 0..3))
                .prop_map(|(ring, parts)| ModuleSpec::OverProduct { ring, parts }),
            (inner.clone(), gens()).prop_map(|(m, gens)| ModuleSpec::Quotient { module: Box::new(m), gens }),
            (inner.clone(), gens()).prop_map(|(m, gens)| ModuleSpec::Sub { module: Box::new(m), gens }),
            (inner, gens()).prop_map(|(m, gens)| ModuleSpec::Localized { module: Box::new(m), gens }),
        ]
    })
}

fn instance() -> impl Strategy<Value = Instance> {
    (ring(), module(), prop::collection::vec(gens(), 0..3), prop::option::of(gens()))
        .prop_map(|(ring, module, subs, mset)| Instance { ring, module, subs, mset })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(inst in instance()) {
        let text = inst.to_string();
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn garbage_never_panics(text in "[a-zZ0-9(),;= \\n]{0,40}") {
        if let Err(e) = parse_instance(&text) {
            prop_assert!(e.line >= 1 && e.col >= 1);
            prop_assert!(e.line <= text.lines().count().max(1) + 1);
            prop_assert!(!e.expected.is_empty());
        }
    }
}

#[test]
fn generated_instances_round_trip() {
    let bounds = Bounds { ringmax: 9, modmax: 16, arity: 3, targeted: 64 };
    for inst in generate_instances(&bounds) {
        let back = parse_instance(&inst.to_string()).unwrap();
        assert_eq!(back, inst);
        let m = back.build_module().unwrap();
        assert_eq!(back.submodule(&m).unwrap(), inst.submodule(&inst.build_module().unwrap()).unwrap());
    }
}
