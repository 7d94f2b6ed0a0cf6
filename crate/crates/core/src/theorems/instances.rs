use alloc::vec;
use alloc::vec::Vec;

use super::{generators, Bounds, Instance};
use crate::descriptor::{ModuleSpec, RingSpec};

/// Factors allowed in product rings.
const PRODUCT_FACTORS: [u64; 6] = [2, 3, 4, 5, 8, 9];

/// Invariant-factor lists `d1 | d2 | ...` with every `di > 1` and product at
/// most `max`, ordered by product and then lexicographically.
fn invariant_factors(max: usize) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = last.max(2);
        while product * d <= max {
            if d % last == 0 {
                prefix.push(d);
                extend(prefix, product * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max as u64, &mut out);
    out.sort_by_key(|ds| (ds.iter().product::<u64>(), ds.clone()));
    out
}

/// Nonzero cyclic modules `Z_n / I` in ideal order, with their orders.
fn cyclic_quotients(n: u64, modmax: usize) -> Vec<(ModuleSpec, usize)> {
    let Ok(r) = RingSpec::Zn(n).build() else { return Vec::new() };
    r.ideals()
        .iter()
        .filter(|i| !i.is_whole())
        .map(|i| {
            let size = r.order() / i.set().len();
            (ModuleSpec::Cyclic { ring: RingSpec::Zn(n), ideal: i.generators() }, size)
        })
        .filter(|(_, size)| *size <= modmax)
        .collect()
}

/// Multisets of `k` factors, nondecreasing.
fn multisets(factors: &[u64], k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &f) in factors.iter().enumerate() {
        for mut rest in multisets(&factors[i..], k - 1) {
            rest.insert(0, f);
            out.push(rest);
        }
    }
    out
}

/// Every module of the sweep, in canonical order and without duplicates.
pub fn generate_modules(bounds: &Bounds) -> Vec<ModuleSpec> {
    if bounds.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<ModuleSpec> = invariant_factors(bounds.modmax).into_iter().map(ModuleSpec::Abelian).collect();
    for n in 2..=bounds.ringmax as u64 {
        let cyc = cyclic_quotients(n, bounds.modmax);
        out.extend(cyc.iter().map(|(s, _)| s.clone()));
        for i in 0..cyc.len() {
            for j in i..cyc.len() {
                if cyc[i].1 * cyc[j].1 <= bounds.modmax {
                    out.push(ModuleSpec::DirectSum(vec![cyc[i].0.clone(), cyc[j].0.clone()]));
                }
            }
        }
    }
    let allowed: Vec<u64> = PRODUCT_FACTORS.iter().copied().filter(|&f| f as usize <= bounds.ringmax).collect();
    for k in 2..=bounds.arity {
        for fs in multisets(&allowed, k) {
            let ring = RingSpec::Product(fs.iter().map(|&f| RingSpec::Zn(f)).collect());
            let comps: Vec<Vec<(ModuleSpec, usize)>> = fs.iter().map(|&f| cyclic_quotients(f, bounds.modmax)).collect();
            let mut choice: Vec<(Vec<ModuleSpec>, usize)> = vec![(Vec::new(), 1)];
            for c in &comps {
                choice = choice
                    .into_iter()
                    .flat_map(|(parts, size)| {
                        c.iter().filter(move |(_, s)| size * s <= bounds.modmax).map(move |(p, s)| {
                            let mut parts = parts.clone();
                            parts.push(p.clone());
                            (parts, size * s)
                        })
                    })
                    .collect();
            }
            out.extend(choice.into_iter().map(|(parts, _)| ModuleSpec::OverProduct { ring: ring.clone(), parts }));
        }
    }
    out.retain(|s| s.build().is_ok_and(|m| !m.is_degenerate()));
    out
}

/// One instance per proper submodule, in canonical submodule order.
pub fn instances_of(spec: &ModuleSpec) -> Vec<Instance> {
    let Ok(m) = spec.build() else { return Vec::new() };
    m.lattice().iter().filter(|s| s.len() < m.order()).map(|s| Instance::new(spec.clone(), generators(&m, s))).collect()
}

pub fn generate_instances(bounds: &Bounds) -> Vec<Instance> {
    generate_modules(bounds).iter().flat_map(instances_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;

    #[test]
    fn invariant_factor_lists() {
        let ds = invariant_factors(8);
        let want: Vec<Vec<u64>> =
            vec![vec![2], vec![3], vec![2, 2], vec![4], vec![5], vec![6], vec![7], vec![2, 2, 2], vec![2, 4], vec![8]];
        assert_eq!(ds, want);
        assert!(invariant_factors(36).contains(&vec![2, 2, 2]));
        assert!(!invariant_factors(36).contains(&vec![2, 3]));
    }

    #[test]
    fn small_bounds() {
        let b = Bounds { ringmax: 4, modmax: 4, arity: 2, targeted: 64 };
        let names: Vec<_> = generate_modules(&b).iter().map(|s| s.to_string()).collect();
        assert!(names.contains(&"cyc(Z4;0)".to_string()));
        assert!(names.contains(&"cyc(Z3;0)".to_string()));
        assert!(names.contains(&"dsum(cyc(Z2;0),cyc(Z2;0))".to_string()));
        assert!(!names.iter().any(|n| n.contains("Z5")));
        assert!(generate_modules(&Bounds { ringmax: 0, ..b }).is_empty());
    }

    #[test]
    fn default_bounds() {
        let mods = generate_modules(&Bounds::default());
        let r = RingSpec::Product(vec![RingSpec::Zn(2), RingSpec::Zn(3), RingSpec::Zn(5)]);
        let zero = |n| ModuleSpec::Cyclic { ring: RingSpec::Zn(n), ideal: vec![crate::Element::Int(0)] };
        let over_itself = ModuleSpec::OverProduct { ring: r, parts: vec![zero(2), zero(3), zero(5)] };
        assert!(mods.contains(&over_itself));
        let set: BTreeSet<_> = mods.iter().collect();
        assert_eq!(set.len(), mods.len());
        assert!(mods.iter().all(|s| s.build().unwrap().order() <= 36));
    }

    #[test]
    fn instances_are_distinct_and_rebuild() {
        let b = Bounds { ringmax: 6, modmax: 12, arity: 2, targeted: 64 };
        let insts = generate_instances(&b);
        let set: BTreeSet<_> = insts.iter().collect();
        assert_eq!(set.len(), insts.len());
        for i in insts.iter().take(200) {
            let m = i.build_module().unwrap();
            assert!(!i.submodule(&m).unwrap().is_whole());
        }
    }
}
