//! Finite modules with explicit tables.
//!
//! Every module stores its action through the *effective* scalar ring
//! `R/Ann(M)` (for integer scalars: `Z/eZ` with `e` the exponent). All
//! quantifier scans in the crate run over effective scalars; the labels of
//! effective scalars are the least elements of their classes in `R`.

mod hom;
mod local;
pub(crate) mod submodule;

pub use hom::ModuleHom;
pub use local::ModuleLocalization;
pub use submodule::Submodule;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::arith::{gcd, lcm};
use crate::bitset::BitSet;
use crate::descriptor::ModuleSpec;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::ring::{subgroup_sum, Ideal, MultiplicativeSet, Ring, MAX_CARRIER};

/// Default bound on module size for submodule enumeration.
pub const ENUMERATION_BOUND: usize = 64;

/// A finite unitary module. Cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

struct ModuleData {
    spec: ModuleSpec,
    scalars: Ring,
    labels: Vec<Element>,
    lookup: BTreeMap<Element, u16>,
    add: Vec<u16>,
    neg: Vec<u16>,
    exponent: u64,
    /// `R/Ann(M)`.
    eff: Ring,
    /// Scalar index in `R` to effective index (finite scalars only).
    eff_of: Vec<usize>,
    /// Effective scalar index to its least representative in `R`.
    eff_rep: Vec<usize>,
    /// `act[r * n + m]` for effective `r`.
    act: Vec<u16>,
    generators: Vec<usize>,
    lattice: OnceBox<Vec<BitSet>>,
}

/// Structural flags of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFlags {
    pub faithful: bool,
    pub torsion_free: bool,
    pub cyclic: bool,
    pub degenerate: bool,
    /// `Ann_R(M)`.
    pub annihilator: Ideal,
    /// `Z_R(M)`, as effective scalar indices.
    pub zero_divisors: BitSet,
    /// `Z_R(M/N)` when a submodule was supplied.
    pub quotient_zero_divisors: Option<BitSet>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({})", self.0.spec)
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Module {}

/// The scalar action handed to [`assemble`]: finite scalars act through a
/// function of the scalar index, integers through repeated addition.
enum Action<'a> {
    Ring(&'a dyn Fn(usize, usize) -> usize),
    Integers,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_CARRIER {
        Err(Error::TooLarge { size: n, bound: MAX_CARRIER })
    } else {
        Ok(())
    }
}

fn assemble(
    spec: ModuleSpec,
    scalars: Ring,
    labels: Vec<Element>,
    add: impl Fn(usize, usize) -> usize,
    action: Action<'_>,
) -> Module {
    let n = labels.len();
    let mut add_t = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add_t.push(add(a, b) as u16);
        }
    }
    let mut neg = alloc::vec![0u16; n];
    for a in 0..n {
        neg[a] = (0..n).find(|&b| add_t[a * n + b] == 0).unwrap_or(0) as u16;
    }
    let mut exponent = 1u64;
    for m in 0..n {
        let (mut x, mut k) = (m, 1u64);
        while x != 0 {
            x = add_t[x * n + m] as usize;
            k += 1;
        }
        let order = k;
        exponent = lcm(exponent, order);
    }
    let (eff, eff_of, eff_rep, act) = match action {
        Action::Ring(f) => {
            let s = scalars.order();
            let raw: Vec<usize> = (0..s).flat_map(|r| (0..n).map(move |m| (r, m))).map(|(r, m)| f(r, m)).collect();
            let ann = BitSet::from_indices(s, (0..s).filter(|&r| raw[r * n..(r + 1) * n].iter().all(|&x| x == 0)));
            let (eff, eff_of) = Ring::quotient_unchecked(&scalars, &ann);
            let mut eff_rep = alloc::vec![usize::MAX; eff.order()];
            for r in 0..s {
                if eff_rep[eff_of[r]] == usize::MAX {
                    eff_rep[eff_of[r]] = r;
                }
            }
            let act = eff_rep.iter().flat_map(|&r| raw[r * n..(r + 1) * n].iter().map(|&x| x as u16)).collect();
            (eff, eff_of, eff_rep, act)
        }
        Action::Integers => {
            let eff = if exponent >= 2 {
                Ring::zn(exponent).expect("exponent is bounded by the module size")
            } else {
                let z2 = Ring::zn(2).expect("Z2");
                Ring::quotient_unchecked(&z2, &BitSet::full(2)).0
            };
            let e = exponent as usize;
            let mut act = alloc::vec![0u16; e * n];
            for a in 1..e {
                for m in 0..n {
                    act[a * n + m] = add_t[act[(a - 1) * n + m] as usize * n + m];
                }
            }
            (eff, Vec::new(), (0..e).collect(), act)
        }
    };
    let lookup = labels.iter().enumerate().map(|(i, e)| (e.clone(), i as u16)).collect();
    let mut data = ModuleData {
        spec,
        scalars,
        labels,
        lookup,
        add: add_t,
        neg,
        exponent,
        eff,
        eff_of,
        eff_rep,
        act,
        generators: Vec::new(),
        lattice: OnceBox::new(),
    };
    data.generators = greedy_generators(&data);
    let module = Module(Arc::new(data));
    if cfg!(debug_assertions) && n * n * module.eff_order() <= 200_000 {
        if let Err(e) = module.validate() {
            panic!("constructed an invalid module {}: {e}", module.spec());
        }
    }
    module
}

fn greedy_generators(d: &ModuleData) -> Vec<usize> {
    let n = d.labels.len();
    let r = d.eff.order();
    let cyc = |m: usize| BitSet::from_indices(n, (0..r).map(|a| d.act[a * n + m] as usize));
    if let Some(m) = (0..n).find(|&m| cyc(m).len() == n) {
        return if n == 1 { Vec::new() } else { alloc::vec![m] };
    }
    let mut span = BitSet::from_indices(n, [0]);
    let mut gens = Vec::new();
    for m in 0..n {
        if !span.contains(m) {
            span = subgroup_sum(&span, &cyc(m), |x, y| d.add[x * n + y] as usize);
            gens.push(m);
        }
    }
    gens
}

impl Module {
    /// The cyclic module `R/I`.
    pub fn cyclic(ring: &Ring, ideal: &Ideal) -> Result<Module> {
        if ring.is_integers() {
            return Err(Error::Unsupported("cyclic modules over the integers; use ab(..)".into()));
        }
        if ideal.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let (q, map) = Ring::quotient_unchecked(ring, ideal.set());
        let labels = q.elements();
        let spec = ModuleSpec::Cyclic { ring: ring.spec().clone(), ideal: ideal.generators() };
        let act = |r: usize, x: usize| q.mul(map[r], x);
        Ok(assemble(spec, ring.clone(), labels.to_vec(), |a, b| q.add(a, b), Action::Ring(&act)))
    }

    /// `Z_{d1} ⊕ ... ⊕ Z_{dk}` over the integers.
    pub fn abelian(ds: &[u64]) -> Result<Module> {
        if ds.contains(&0) {
            return Err(Error::InvalidParameter("invariant factors must be positive".into()));
        }
        let total = ds.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
        let n = total.ok_or(Error::TooLarge { size: usize::MAX, bound: MAX_CARRIER })?;
        check_size(n)?;
        let ds: Vec<usize> = ds.iter().map(|&d| d as usize).collect();
        let decode = |mut x: usize| {
            let mut parts = alloc::vec![0usize; ds.len()];
            for i in (0..ds.len()).rev() {
                parts[i] = x % ds[i];
                x /= ds[i];
            }
            parts
        };
        let labels = (0..n)
            .map(|x| {
                let p = decode(x);
                if ds.len() == 1 {
                    Element::Int(p[0] as u64)
                } else {
                    Element::tuple(p.into_iter().map(|v| Element::Int(v as u64)))
                }
            })
            .collect();
        let add = |a: usize, b: usize| {
            let (pa, pb) = (decode(a), decode(b));
            (0..ds.len()).fold(0, |x, i| x * ds[i] + (pa[i] + pb[i]) % ds[i])
        };
        let spec = ModuleSpec::Abelian(ds.iter().map(|&d| d as u64).collect());
        Ok(assemble(spec, Ring::integers(), labels, add, Action::Integers))
    }

    /// Componentwise direct sum over one scalar ring.
    pub fn direct_sum(parts: &[Module]) -> Result<Module> {
        match parts {
            [] => Err(Error::InvalidParameter("a direct sum needs at least one summand".into())),
            [m] => Ok(m.clone()),
            _ => {
                let scalars = parts[0].scalars().clone();
                if parts.iter().any(|m| *m.scalars() != scalars) {
                    return Err(Error::RingMismatch);
                }
                let spec = ModuleSpec::DirectSum(parts.iter().map(|m| m.spec().clone()).collect());
                Self::tuple_module(spec, scalars, parts, |_, r| r)
            }
        }
    }

    /// `M_1 × ... × M_k` over `R_1 × ... × R_k`, acting componentwise.
    pub fn over_product(ring: &Ring, parts: &[Module]) -> Result<Module> {
        let factors = ring.factors();
        if factors.is_empty() {
            return Err(Error::InvalidParameter(format!("{ring} is not a product ring")));
        }
        if factors.len() != parts.len() {
            return Err(Error::InvalidParameter(format!(
                "{ring} has {} factors but {} modules were given",
                factors.len(),
                parts.len()
            )));
        }
        if factors.iter().zip(parts).any(|(r, m)| r != m.scalars()) {
            return Err(Error::RingMismatch);
        }
        // Component indices of every ring element.
        let comps: Vec<Vec<usize>> = ring
            .elements()
            .iter()
            .map(|e| match e {
                Element::Tuple(xs) => xs
                    .iter()
                    .zip(factors)
                    .map(|(x, f)| f.index_of(x).expect("product labels are factor labels"))
                    .collect(),
                Element::Int(_) => unreachable!("product ring labels are tuples"),
            })
            .collect();
        let spec = ModuleSpec::OverProduct {
            ring: ring.spec().clone(),
            parts: parts.iter().map(|m| m.spec().clone()).collect(),
        };
        Self::tuple_module(spec, ring.clone(), parts, |i, r| comps[r][i])
    }

    /// Tuple carrier over `parts`; `scalar(i, r)` is the scalar by which
    /// `r` acts on component `i`, as an index into that part's ring.
    fn tuple_module(
        spec: ModuleSpec,
        scalars: Ring,
        parts: &[Module],
        scalar: impl Fn(usize, usize) -> usize,
    ) -> Result<Module> {
        let sizes: Vec<usize> = parts.iter().map(|m| m.order()).collect();
        let n = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        let n = n.ok_or(Error::TooLarge { size: usize::MAX, bound: MAX_CARRIER })?;
        check_size(n)?;
        let k = parts.len();
        let decode = |mut x: usize| {
            let mut p = alloc::vec![0usize; k];
            for i in (0..k).rev() {
                p[i] = x % sizes[i];
                x /= sizes[i];
            }
            p
        };
        let encode = |p: &[usize]| (0..k).fold(0, |x, i| x * sizes[i] + p[i]);
        let labels =
            (0..n).map(|x| Element::tuple(decode(x).iter().zip(parts).map(|(&c, m)| m.element(c).clone()))).collect();
        let add = |a: usize, b: usize| {
            let (pa, pb) = (decode(a), decode(b));
            let p: Vec<usize> = (0..k).map(|i| parts[i].add(pa[i], pb[i])).collect();
            encode(&p)
        };
        if scalars.is_integers() {
            return Ok(assemble(spec, scalars, labels, add, Action::Integers));
        }
        let act = |r: usize, x: usize| {
            let px = decode(x);
            let p: Vec<usize> = (0..k).map(|i| parts[i].act_raw(scalar(i, r), px[i])).collect();
            encode(&p)
        };
        Ok(assemble(spec, scalars, labels, add, Action::Ring(&act)))
    }

    /// `R^k` over `R`.
    pub fn free(ring: &Ring, rank: usize) -> Result<Module> {
        if ring.is_integers() {
            return Err(Error::Unsupported("free modules over the integers".into()));
        }
        let spec = ModuleSpec::Free { ring: ring.spec().clone(), rank };
        let r = Module::cyclic(ring, &Ideal::zero(ring))?;
        if rank == 0 {
            let act = |_: usize, _: usize| 0;
            return Ok(assemble(spec, ring.clone(), alloc::vec![Element::Int(0)], |_, _| 0, Action::Ring(&act)));
        }
        let parts = alloc::vec![r; rank];
        if rank == 1 {
            let m = &parts[0];
            let act = |s: usize, x: usize| m.act_raw(s, x);
            return Ok(assemble(spec, ring.clone(), m.elements(), |a, b| m.add(a, b), Action::Ring(&act)));
        }
        Self::tuple_module(spec, ring.clone(), &parts, |_, s| s)
    }

    /// `M/L` with the canonical projection. Cosets are labelled by their
    /// least element.
    pub fn quotient(&self, l: &Submodule) -> Result<(Module, ModuleHom)> {
        if l.module() != self {
            return Err(Error::InvalidSubmodule(format!("{l} is not a submodule of {self}")));
        }
        let spec = ModuleSpec::Quotient { module: Box::new(self.spec().clone()), gens: l.generators() };
        let (q, map) = self.quotient_over(l.set(), spec, self.scalars().clone(), None);
        let proj = ModuleHom::trusted(self, &q, map);
        Ok((q, proj))
    }

    pub(crate) fn quotient_with_spec(&self, l: &BitSet, spec: ModuleSpec) -> (Module, Vec<usize>) {
        self.quotient_over(l, spec, self.scalars().clone(), None)
    }

    /// Coset module `M/L`; with `ring_map = Some((ring, reps))` the scalars are
    /// `ring` and scalar `s` acts through the `R`-element `reps[s]`.
    pub(crate) fn quotient_over(
        &self,
        l: &BitSet,
        spec: ModuleSpec,
        scalars: Ring,
        ring_reps: Option<&[usize]>,
    ) -> (Module, Vec<usize>) {
        let n = self.order();
        let members = l.to_vec();
        let mut map = alloc::vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if map[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for &y in &members {
                map[self.add(x, y)] = class;
            }
        }
        let labels = reps.iter().map(|&x| self.element(x).clone()).collect();
        let add = |a: usize, b: usize| map[self.add(reps[a], reps[b])];
        let q = if scalars.is_integers() {
            assemble(spec, scalars, labels, add, Action::Integers)
        } else {
            let act = |r: usize, x: usize| {
                let r = ring_reps.map_or(r, |rr| rr[r]);
                map[self.act_raw(r, reps[x])]
            };
            assemble(spec, scalars, labels, add, Action::Ring(&act))
        };
        (q, map)
    }

    /// A submodule regarded as a module.
    pub fn from_submodule(n: &Submodule) -> Module {
        let m = n.module();
        let spec = ModuleSpec::Sub { module: Box::new(m.spec().clone()), gens: n.generators() };
        Self::sub_with_spec(m, n.set(), spec)
    }

    fn sub_with_spec(m: &Module, set: &BitSet, spec: ModuleSpec) -> Module {
        let members = set.to_vec();
        let mut local = alloc::vec![usize::MAX; m.order()];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let labels = members.iter().map(|&x| m.element(x).clone()).collect();
        let add = |a: usize, b: usize| local[m.add(members[a], members[b])];
        if m.scalars().is_integers() {
            return assemble(spec, m.scalars().clone(), labels, add, Action::Integers);
        }
        let act = |r: usize, x: usize| local[m.act_raw(r, members[x])];
        assemble(spec, m.scalars().clone(), labels, add, Action::Ring(&act))
    }

    /// `S⁻¹M`, realised as `M/K_M` over `S⁻¹R = R/K_R`.
    pub fn localize(&self, s: &MultiplicativeSet) -> Result<ModuleLocalization> {
        local::localize(self, s)
    }

    pub fn from_spec(spec: &ModuleSpec) -> Result<Module> {
        match spec {
            ModuleSpec::Cyclic { ring, ideal } => {
                let r = ring.build()?;
                Module::cyclic(&r, &Ideal::from_generators(&r, ideal)?)
            }
            ModuleSpec::Abelian(ds) => Module::abelian(ds),
            ModuleSpec::DirectSum(parts) => {
                let ms = parts.iter().map(Module::from_spec).collect::<Result<Vec<_>>>()?;
                Module::direct_sum(&ms)
            }
            ModuleSpec::OverProduct { ring, parts } => {
                let r = ring.build()?;
                let ms = parts.iter().map(Module::from_spec).collect::<Result<Vec<_>>>()?;
                Module::over_product(&r, &ms)
            }
            ModuleSpec::Quotient { module, gens } => {
                let m = Module::from_spec(module)?;
                let l = m.submodule(gens)?;
                Ok(m.quotient_with_spec(l.set(), spec.clone()).0)
            }
            ModuleSpec::Free { ring, rank } => Module::free(&ring.build()?, *rank),
            ModuleSpec::Sub { module, gens } => {
                let m = Module::from_spec(module)?;
                let n = m.submodule(gens)?;
                Ok(Self::sub_with_spec(&m, n.set(), spec.clone()))
            }
            ModuleSpec::Localized { module, gens } => {
                let m = Module::from_spec(module)?;
                let s = MultiplicativeSet::generated(m.scalars(), gens)?;
                Ok(m.localize(&s)?.module)
            }
        }
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.0.spec
    }

    /// The scalar ring `R` the module was built over.
    pub fn scalars(&self) -> &Ring {
        &self.0.scalars
    }

    /// `R/Ann(M)`; its elements index the scalars in all scans.
    pub fn eff_ring(&self) -> &Ring {
        &self.0.eff
    }

    #[inline]
    pub fn eff_order(&self) -> usize {
        self.0.eff.order()
    }

    pub fn order(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.order() == 1
    }

    /// Least `e ≥ 1` with `e·m = 0` for all `m`.
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.0.labels[i]
    }

    pub fn elements(&self) -> Vec<Element> {
        self.0.labels.clone()
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.0
            .lookup
            .get(e)
            .map(|&i| i as usize)
            .ok_or_else(|| Error::ElementNotFound(format!("{e} is not an element of {self}")))
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.0.add[a * self.order() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.0.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Action of the effective scalar `r`.
    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.0.act[r * self.order() + m] as usize
    }

    /// Row of the action table for the effective scalar `r`.
    #[inline]
    pub(crate) fn act_row(&self, r: usize) -> &[u16] {
        let n = self.order();
        &self.0.act[r * n..(r + 1) * n]
    }

    /// Action of a scalar given by its index in the original finite ring.
    #[inline]
    pub(crate) fn act_raw(&self, r: usize, m: usize) -> usize {
        self.act(self.0.eff_of[r], m)
    }

    /// Effective index of a scalar of `R`.
    pub fn scalar_index(&self, e: &Element) -> Result<usize> {
        if self.scalars().is_integers() {
            let a = e.as_int().ok_or_else(|| Error::ElementNotFound(format!("{e} is not an integer")))?;
            Ok((a % self.exponent()) as usize)
        } else {
            Ok(self.0.eff_of[self.scalars().index_of(e)?])
        }
    }

    /// Label in `R` of an effective scalar (its least representative).
    pub fn scalar_label(&self, r: usize) -> Element {
        if self.scalars().is_integers() {
            Element::Int(r as u64)
        } else {
            self.scalars().element(self.0.eff_rep[r]).clone()
        }
    }

    /// Map from indices of `R` to effective indices (finite scalars only).
    #[cfg(test)]
    pub(crate) fn eff_map(&self) -> &[usize] {
        &self.0.eff_of
    }

    pub fn act_scalar(&self, a: &Element, m: &Element) -> Result<Element> {
        let r = self.scalar_index(a)?;
        let x = self.index_of(m)?;
        Ok(self.element(self.act(r, x)).clone())
    }

    /// A generating set, chosen greedily in carrier order (a single
    /// generator when the module is cyclic).
    pub fn generator_indices(&self) -> &[usize] {
        &self.0.generators
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.generators.len() <= 1
    }

    /// `Rm` as a set.
    pub(crate) fn cyclic_set(&self, m: usize) -> BitSet {
        BitSet::from_indices(self.order(), self.column(m))
    }

    /// `{ r·m : r effective }`.
    pub(crate) fn column(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.order();
        (0..self.eff_order()).map(move |r| self.0.act[r * n + m] as usize)
    }

    /// Lifts an ideal of the effective ring to the ideal of `R` it comes from.
    pub fn lift_ideal(&self, set: &BitSet) -> Ideal {
        if self.scalars().is_integers() {
            let d = set.iter().fold(self.exponent(), |d, a| gcd(d, a as u64));
            Ideal::multiples(d)
        } else {
            let r = self.scalars();
            let eff_of = &self.0.eff_of;
            Ideal::from_set(r, BitSet::from_indices(r.order(), (0..r.order()).filter(|&x| set.contains(eff_of[x]))))
        }
    }

    /// Image of an ideal of `R` in the effective ring.
    pub fn lower_ideal(&self, ideal: &Ideal) -> Result<BitSet> {
        if ideal.ring() != self.scalars() {
            return Err(Error::RingMismatch);
        }
        let k = self.eff_order();
        if let Some(d) = ideal.integer_generator() {
            let g = gcd(d, self.exponent());
            return Ok(BitSet::from_indices(k, (0..k).filter(|&a| (a as u64).is_multiple_of(g))));
        }
        Ok(BitSet::from_indices(k, ideal.elements().into_iter().map(|x| self.0.eff_of[x])))
    }

    /// `Ann_R(M)`.
    pub fn annihilator(&self) -> Ideal {
        self.lift_ideal(&BitSet::from_indices(self.eff_order(), [0]))
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::from_set(self, BitSet::from_indices(self.order(), [0]))
    }

    pub fn whole(&self) -> Submodule {
        Submodule::from_set(self, BitSet::full(self.order()))
    }

    /// The submodule generated by `gens`.
    pub fn submodule(&self, gens: &[Element]) -> Result<Submodule> {
        let idx = gens.iter().map(|g| self.index_of(g)).collect::<Result<Vec<_>>>()?;
        Ok(self.submodule_from_indices(&idx))
    }

    pub fn submodule_from_indices(&self, gens: &[usize]) -> Submodule {
        Submodule::with_generators(self, self.span(gens), gens.to_vec())
    }

    /// Closure of `gens` under addition and the action.
    pub(crate) fn span(&self, gens: &[usize]) -> BitSet {
        let mut acc = BitSet::from_indices(self.order(), [0]);
        for &g in gens {
            if !acc.contains(g) {
                acc = self.set_sum(&acc, &self.cyclic_set(g));
            }
        }
        acc
    }

    pub(crate) fn set_sum(&self, a: &BitSet, b: &BitSet) -> BitSet {
        subgroup_sum(a, b, |x, y| self.add(x, y))
    }

    /// Checks that a set is a submodule.
    pub fn submodule_from_set(&self, set: BitSet) -> Result<Submodule> {
        if set.capacity() != self.order() || !set.contains(0) {
            return Err(Error::InvalidSubmodule("set does not contain zero".into()));
        }
        for x in set.iter() {
            if set.iter().any(|y| !set.contains(self.add(x, y))) || self.column(x).any(|y| !set.contains(y)) {
                return Err(Error::InvalidSubmodule(format!("not closed at {}", self.element(x))));
            }
        }
        Ok(Submodule::from_set(self, set))
    }

    /// All submodules in canonical order (size, then members).
    pub fn enumerate_submodules(&self) -> Result<Vec<Submodule>> {
        self.enumerate_submodules_bounded(ENUMERATION_BOUND)
    }

    pub fn enumerate_submodules_bounded(&self, bound: usize) -> Result<Vec<Submodule>> {
        if self.order() > bound {
            return Err(Error::TooLarge { size: self.order(), bound });
        }
        Ok(self.lattice().iter().map(|s| Submodule::from_set(self, s.clone())).collect())
    }

    /// The submodule lattice as sets, computed once per module.
    pub(crate) fn lattice(&self) -> &[BitSet] {
        self.0.lattice.get_or_init(|| Box::new(submodule::lattice(self)))
    }

    /// `{ r : r·m = 0 for some m ∈ X \ Y }` for the effective scalars, i.e.
    /// `Z_R(M)` when `X = M, Y = 0`.
    fn zero_divisor_set(&self, outside: impl Fn(usize) -> bool, target: &BitSet) -> BitSet {
        let k = self.eff_order();
        BitSet::from_indices(
            k,
            (0..k).filter(|&r| (0..self.order()).any(|m| outside(m) && target.contains(self.act(r, m)))),
        )
    }

    pub fn flags(&self, n: Option<&Submodule>) -> ModuleFlags {
        let zero = BitSet::from_indices(self.order(), [0]);
        let annihilator = self.annihilator();
        let faithful = annihilator.is_zero();
        let zero_divisors = self.zero_divisor_set(|m| m != 0, &zero);
        // Torsion-free: `r m = 0` forces `r = 0` in R or `m = 0`. A nonzero
        // annihilator element of any nonzero `m` breaks it, in R itself.
        let torsion_free =
            self.is_degenerate() || (faithful && zero_divisors.len() == 1 && !self.scalars().is_integers());
        let quotient_zero_divisors = n.map(|n| self.zero_divisor_set(|m| !n.set().contains(m), n.set()));
        ModuleFlags {
            faithful,
            torsion_free,
            cyclic: self.is_cyclic(),
            degenerate: self.is_degenerate(),
            annihilator,
            zero_divisors,
            quotient_zero_divisors,
        }
    }

    /// Exhaustively re-checks the group and module axioms.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        let k = self.eff_order();
        let bad = |what: &str| Err(Error::InvalidParameter(format!("{}: {what}", self.spec())));
        for a in 0..n {
            if self.add(a, 0) != a || self.add(a, self.neg(a)) != 0 {
                return bad("additive identity or inverse");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return bad("addition is not commutative");
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return bad("addition is not associative");
                    }
                }
            }
        }
        let r = self.eff_ring();
        for m in 0..n {
            if self.act(r.one(), m) != m && !self.is_degenerate() {
                return bad("1m != m");
            }
            for x in 0..k {
                for y in 0..k {
                    if self.act(r.add(x, y), m) != self.add(self.act(x, m), self.act(y, m)) {
                        return bad("(a+b)m != am+bm");
                    }
                    if self.act(r.mul(x, y), m) != self.act(x, self.act(y, m)) {
                        return bad("(ab)m != a(bm)");
                    }
                }
                for m2 in 0..n {
                    if self.act(x, self.add(m, m2)) != self.add(self.act(x, m), self.act(x, m2)) {
                        return bad("a(m+m') != am+am'");
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
