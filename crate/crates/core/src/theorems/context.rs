use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::bitset::BitSet;
use crate::descriptor::ModuleSpec;
use crate::module::submodule::{act_set, colon_eff};
use crate::module::Module;
use crate::multiplication::{multiplication_witness, nil_raw, prime_sets, product_set};
use crate::predicates::{classify_set, Flags, IdealTable};
use crate::ring::MultiplicativeSet;

/// A module realised as a quotient or a submodule of the context module,
/// with the index map between them.
pub(crate) struct Derived {
    pub module: Module,
    /// For quotients: element of `M` to coset. For submodules: local index
    /// to element of `M`.
    pub map: Vec<usize>,
}

/// `S⁻¹M` for `S` generated by one effective scalar.
pub(crate) struct Local {
    /// Effective scalar generating `S`.
    pub s: usize,
    /// `S` inside the effective ring.
    pub set: BitSet,
    pub module: Module,
    pub map: Vec<usize>,
    pub kernel_len: usize,
}

/// `M = A × B`, read off the tuple carrier: element `x` has components
/// `x / sizes.1` and `x % sizes.1`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Split {
    pub sizes: (usize, usize),
}

impl Split {
    pub fn comp(&self, side: usize, x: usize) -> usize {
        if side == 0 {
            x / self.sizes.1
        } else {
            x % self.sizes.1
        }
    }

    pub fn size(&self, side: usize) -> usize {
        if side == 0 {
            self.sizes.0
        } else {
            self.sizes.1
        }
    }

    /// The element with component `c` on `side` and zero elsewhere.
    pub fn embed(&self, side: usize, c: usize) -> usize {
        if side == 0 {
            c * self.sizes.1
        } else {
            c
        }
    }

    /// Projection of a set onto one side.
    pub fn project(&self, side: usize, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.size(side), set.iter().map(|x| self.comp(side, x)))
    }

    /// Whether `set` is the product of its projections.
    pub fn is_product(&self, set: &BitSet) -> bool {
        set.len() == self.project(0, set).len() * self.project(1, set).len()
    }
}

/// Everything about one module that the checks share across its
/// submodules.
pub(crate) struct ModuleContext {
    pub m: Module,
    pub lattice: Vec<BitSet>,
    pub index: BTreeMap<BitSet, usize>,
    /// Classification of every proper submodule; `None` for `M` itself.
    pub flags: Vec<Option<Flags>>,
    /// `(N:M)` in the effective ring for every submodule.
    pub colon: Vec<BitSet>,
    pub ideals: IdealTable,
    /// Whether each effective ideal lifts to a weakly prime ideal of `R`.
    pub lifted_weakly_prime: Vec<bool>,
    /// `(0:_R x)` per element, effective.
    pub ann: Vec<BitSet>,
    pub multiplication: bool,
    pub faithful: bool,
    pub principal: bool,
    pub cyclic: bool,
    pub torsion_free: bool,
    /// Two-way split for direct sums and product-ring modules.
    pub split: Option<Split>,
    /// Component sizes of product-ring modules.
    pub factors: Vec<usize>,
    quotients: OnceBox<Vec<Derived>>,
    submodules: OnceBox<Vec<Derived>>,
    locals: OnceBox<Vec<Local>>,
    primes: OnceBox<Vec<BitSet>>,
    nil: OnceBox<BitSet>,
    products: OnceBox<Vec<Vec<usize>>>,
    powers: OnceBox<Vec<(usize, Module)>>,
    all_ideals_weakly_prime: OnceBox<bool>,
    /// Largest order allowed for `M^k`.
    pub power_bound: usize,
}

fn split_of(m: &Module) -> (Option<Split>, Vec<usize>) {
    let sizes = |parts: &[ModuleSpec]| -> Option<Vec<usize>> {
        parts.iter().map(|p| p.build().ok().map(|q| q.order())).collect()
    };
    let (parts, product) = match m.spec() {
        ModuleSpec::Abelian(ds) if ds.len() >= 2 => (Some(ds.iter().map(|&d| d as usize).collect()), false),
        ModuleSpec::DirectSum(ps) => (sizes(ps), false),
        ModuleSpec::OverProduct { parts, .. } => (sizes(parts), true),
        _ => (None, false),
    };
    match parts {
        Some(p) if p.len() >= 2 => {
            let rest: usize = p[1..].iter().product();
            let split = Some(Split { sizes: (p[0], rest) });
            (split, if product { p } else { Vec::new() })
        }
        _ => (None, Vec::new()),
    }
}

impl ModuleContext {
    pub fn new(m: &Module, power_bound: usize) -> ModuleContext {
        let lattice: Vec<BitSet> = m.lattice().to_vec();
        let index = lattice.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let full = m.order();
        let whole = BitSet::full(full);
        let flags = lattice.iter().map(|s| (s.len() < full).then(|| classify_set(m, s))).collect();
        let colon = lattice.iter().map(|s| colon_eff(m, s, &whole)).collect();
        let ideals = IdealTable::new(m);
        let lifted_weakly_prime = ideals
            .ideals
            .iter()
            .map(|i| {
                let lifted = m.lift_ideal(i);
                !lifted.is_whole() && lifted.is_weakly_prime().map(|v| v.holds()).unwrap_or(false)
            })
            .collect();
        let k = m.eff_order();
        let ann: Vec<BitSet> =
            (0..full).map(|x| BitSet::from_indices(k, (0..k).filter(|&r| m.act(r, x) == 0))).collect();
        let faithful = !m.scalars().is_integers() && k == m.scalars().order();
        let torsion_free = faithful && (1..full).all(|x| ann[x].len() == 1);
        let (split, factors) = split_of(m);
        ModuleContext {
            multiplication: multiplication_witness(m).is_none(),
            principal: m.scalars().is_principal_ring(),
            cyclic: m.is_cyclic(),
            m: m.clone(),
            lattice,
            index,
            flags,
            colon,
            ideals,
            lifted_weakly_prime,
            ann,
            faithful,
            torsion_free,
            split,
            factors,
            quotients: OnceBox::new(),
            submodules: OnceBox::new(),
            locals: OnceBox::new(),
            primes: OnceBox::new(),
            nil: OnceBox::new(),
            products: OnceBox::new(),
            powers: OnceBox::new(),
            all_ideals_weakly_prime: OnceBox::new(),
            power_bound,
        }
    }

    pub fn order(&self) -> usize {
        self.m.order()
    }

    pub fn flags(&self, i: usize) -> &Flags {
        self.flags[i].as_ref().expect("classification of a proper submodule")
    }

    pub fn lattice_index(&self, s: &BitSet) -> usize {
        self.index[s]
    }

    pub fn ideal_index(&self, s: &BitSet) -> usize {
        self.ideals.ideals.iter().position(|t| t == s).expect("colon sets are ideals")
    }

    /// Whether the ideal `(X :_R Y)`, given in effective form, lifts to a
    /// weakly prime ideal of `R`.
    pub fn weakly_prime_ideal(&self, set: &BitSet) -> bool {
        self.lifted_weakly_prime[self.ideal_index(set)]
    }

    /// `M/L` for every submodule `L`, in lattice order.
    pub fn quotients(&self) -> &[Derived] {
        self.quotients.get_or_init(|| {
            Box::new(
                self.lattice
                    .iter()
                    .map(|l| {
                        let spec = ModuleSpec::Quotient {
                            module: Box::new(self.m.spec().clone()),
                            gens: crate::module::Submodule::from_set(&self.m, l.clone()).generators(),
                        };
                        let (module, map) = self.m.quotient_with_spec(l, spec);
                        Derived { module, map }
                    })
                    .collect(),
            )
        })
    }

    /// Every submodule as a module in its own right, in lattice order.
    pub fn submodules(&self) -> &[Derived] {
        self.submodules.get_or_init(|| {
            Box::new(
                self.lattice
                    .iter()
                    .map(|l| {
                        let module = Module::from_submodule(&crate::module::Submodule::from_set(&self.m, l.clone()));
                        Derived { module, map: l.to_vec() }
                    })
                    .collect(),
            )
        })
    }

    /// `S⁻¹M` for `S = {1, s, s², ...}`, one entry per distinct `S`.
    pub fn locals(&self) -> &[Local] {
        self.locals.get_or_init(|| Box::new(self.build_locals()))
    }

    fn build_locals(&self) -> Vec<Local> {
        let m = &self.m;
        let r = m.eff_ring();
        let n = m.order();
        let mut seen: Vec<BitSet> = Vec::new();
        let mut out = Vec::new();
        for s in 0..m.eff_order() {
            let set = MultiplicativeSet::from_indices(r, &[s]);
            let members = BitSet::from_indices(r.order(), set.members());
            if seen.contains(&members) {
                continue;
            }
            seen.push(members.clone());
            let kernel = BitSet::from_indices(n, (0..n).filter(|&x| members.iter().any(|t| m.act(t, x) == 0)));
            let (module, map) = if m.scalars().is_integers() {
                let spec =
                    ModuleSpec::Localized { module: Box::new(m.spec().clone()), gens: alloc::vec![m.scalar_label(s)] };
                m.quotient_with_spec(&kernel, spec)
            } else {
                let full = m.scalars();
                let rep = full.index_of(&m.scalar_label(s)).expect("representatives are ring elements");
                let loc = m.localize(&MultiplicativeSet::from_indices(full, &[rep])).expect("finite scalars localize");
                debug_assert_eq!(*loc.kernel.set(), kernel);
                (loc.module, loc.map)
            };
            out.push(Local { s, set: members, module, map, kernel_len: kernel.len() });
        }
        out
    }

    pub fn prime_sets(&self) -> &[BitSet] {
        self.primes.get_or_init(|| Box::new(prime_sets(&self.m)))
    }

    pub fn nil(&self) -> &BitSet {
        self.nil.get_or_init(|| Box::new(nil_raw(&self.m)))
    }

    /// `NK` for every pair of submodules (multiplication modules only).
    pub fn product(&self, i: usize, j: usize) -> usize {
        let table = self.products.get_or_init(|| {
            let t = self
                .lattice
                .iter()
                .map(|a| self.lattice.iter().map(|b| self.index[&product_set(&self.m, a, b)]).collect())
                .collect();
            Box::new(t)
        });
        table[i][j]
    }

    /// `I·X` for an effective ideal and a submodule.
    pub fn ideal_on(&self, i: &BitSet, x: &BitSet) -> BitSet {
        act_set(&self.m, i, x)
    }

    /// `M^k = R^k ⊗ M` for `k = 2, 3` within the power bound.
    pub fn powers(&self) -> &[(usize, Module)] {
        self.powers.get_or_init(|| {
            let mut out = Vec::new();
            for k in 2..=3usize {
                let fits = self.order().checked_pow(k as u32).is_some_and(|s| s <= self.power_bound);
                if fits {
                    let parts = alloc::vec![self.m.clone(); k];
                    out.push((k, Module::direct_sum(&parts).expect("equal scalars")));
                }
            }
            Box::new(out)
        })
    }

    /// Whether every proper ideal of `R` is weakly prime.
    pub fn all_ideals_weakly_prime(&self) -> bool {
        *self.all_ideals_weakly_prime.get_or_init(|| {
            let r = self.m.scalars();
            let ok = !r.is_integers()
                && r.ideals().iter().filter(|i| !i.is_whole()).all(|i| i.is_weakly_prime().is_ok_and(|v| v.holds()));
            Box::new(ok)
        })
    }
}
