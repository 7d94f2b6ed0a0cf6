//! The theorem harness: instance generation, one check per theorem,
//! suite aggregation and counterexample search.
//!
//! Checks come in two modes. `Assert` checks may fail; `Observe` checks
//! record a truth value for claims whose hypotheses cannot hold over finite
//! rings and never fail. Some asserted theorems also carry an observation
//! for their unprovable directions.

mod checks;
mod context;
mod instances;
mod report;
mod search;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::descriptor::{ModuleSpec, RingSpec};
use crate::element::{join, Element};
use crate::error::{Error, Result};
use crate::module::{Module, Submodule};
use crate::witness::Witness;

pub use instances::{generate_instances, generate_modules, instances_of};
pub use report::{aggregate, GalleryEntry, SuiteReport, TheoremSummary, WitnessEntry, WITNESS_CAP};
pub use search::{search_counterexample, Goal, SearchResult};

pub(crate) use context::ModuleContext;

macro_rules! theorem_ids {
    ($($id:ident => $name:literal, $mode:ident;)*) => {
        /// Identifiers of the machine-checked statements.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[allow(non_camel_case_types)]
        pub enum TheoremId {
            $($id,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$id,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$id => $name,)*
                }
            }

            pub fn mode(self) -> Mode {
                match self {
                    $(TheoremId::$id => Mode::$mode,)*
                }
            }
        }
    };
}

theorem_ids! {
    T_COLON => "T_COLON", Assert;
    T_TORSIONFREE => "T_TORSIONFREE", Assert;
    T_HOM => "T_HOM", Assert;
    T_QUOT => "T_QUOT", Assert;
    T_TOWER => "T_TOWER", Assert;
    T_LOC => "T_LOC", Assert;
    T_REL => "T_REL", Assert;
    T_CYCLIC => "T_CYCLIC", Assert;
    T_LE1 => "T_LE1", Assert;
    T_FREE3 => "T_FREE3", Assert;
    T_MAIN => "T_MAIN", Assert;
    T_T1 => "T_T1", Assert;
    T_T2 => "T_T2", Assert;
    T_NCUBE => "T_NCUBE", Assert;
    T_NIL => "T_NIL", Assert;
    T_IDEAL => "T_IDEAL", Assert;
    T_MULTPROP => "T_MULTPROP", Assert;
    T_MAIN2 => "T_MAIN2", Assert;
    T_FAITH => "T_FAITH", Observe;
    T_NRABM => "T_NRABM", Assert;
    T_FMULT => "T_FMULT", Assert;
    T_FGFM => "T_FGFM", Assert;
    T_PROD1 => "T_PROD1", Assert;
    T_CLPROD => "T_CLPROD", Assert;
    T_PROD3 => "T_PROD3", Assert;
    T_PRODUCT1 => "T_PRODUCT1", Assert;
    T_PRODUCT2 => "T_PRODUCT2", Assert;
    T_PRODUCT3 => "T_PRODUCT3", Assert;
    T_FLATFREE => "T_FLATFREE", Assert;
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL.iter().copied().find(|t| t.as_str() == s).ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list of ids.
pub fn parse_theorem_filter(s: &str) -> Result<Vec<TheoremId>> {
    if s == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut ids = s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<TheoremId>>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Assert,
    Observe,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Assert => "ASSERT",
            Mode::Observe => "OBSERVE",
        }
    }
}

/// Truth value of an observed claim, with a witness when it is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Witness),
    NotApplicable(String),
    Observed(Observation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: TheoremId,
    pub mode: Mode,
    pub status: Status,
    /// Observed directions of an asserted theorem, when any applied.
    pub observation: Option<Observation>,
}

impl CheckOutcome {
    pub fn is_fail(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }

    /// The observation of this outcome, whether it is the status itself or
    /// attached to an asserted check.
    pub fn observed(&self) -> Option<&Observation> {
        match &self.status {
            Status::Observed(o) => Some(o),
            _ => self.observation.as_ref(),
        }
    }
}

/// Generation bounds. A zero bound generates nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    /// Largest `n` for `Z_n`, and largest product factor.
    pub ringmax: usize,
    /// Largest module order.
    pub modmax: usize,
    /// Largest number of product factors.
    pub arity: usize,
    /// Largest module order for derived modules such as `M^k`.
    pub targeted: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { ringmax: 16, modmax: 36, arity: 3, targeted: 64 }
    }
}

impl Bounds {
    pub fn is_empty(&self) -> bool {
        self.ringmax == 0 || self.modmax == 0
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ringmax={},modmax={},arity={}", self.ringmax, self.modmax, self.arity)
    }
}

/// A module with one or more submodules and an optional multiplicative set,
/// all given by descriptors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instance {
    pub ring: RingSpec,
    pub module: ModuleSpec,
    pub subs: Vec<Vec<Element>>,
    pub mset: Option<Vec<Element>>,
}

impl Instance {
    pub fn new(module: ModuleSpec, sub: Vec<Element>) -> Instance {
        Instance { ring: module.scalar_ring(), module, subs: alloc::vec![sub], mset: None }
    }

    pub fn build_module(&self) -> Result<Module> {
        let m = self.module.build()?;
        if m.scalars().spec() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(m)
    }

    /// The first submodule of the instance.
    pub fn submodule(&self, m: &Module) -> Result<Submodule> {
        let gens = self.subs.first().ok_or_else(|| Error::InvalidParameter("no submodule given".into()))?;
        m.submodule(gens)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring={}; mod={}", self.ring, self.module)?;
        for s in &self.subs {
            write!(f, "; sub=sub({})", join(s))?;
        }
        if let Some(s) = &self.mset {
            write!(f, "; mset=mset({})", join(s))?;
        }
        Ok(())
    }
}

/// Canonical generators of a submodule given as a set; `{0}` has none.
pub(crate) fn generators(m: &Module, set: &crate::bitset::BitSet) -> Vec<Element> {
    Submodule::from_set(m, set.clone()).generators()
}

/// Runs one check on one instance.
pub fn verify_theorem(instance: &Instance, id: TheoremId) -> Result<CheckOutcome> {
    let m = instance.build_module()?;
    let n = instance.submodule(&m)?;
    if m.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if n.is_whole() {
        return Err(Error::NotProper);
    }
    let ctx = ModuleContext::new(&m, Bounds::default().targeted);
    Ok(checks::run(&ctx, ctx.lattice_index(n.set()), id))
}

/// Outcomes of the selected checks on every proper submodule of a module,
/// in canonical submodule order.
pub fn check_module(
    spec: &ModuleSpec,
    ids: &[TheoremId],
    bounds: &Bounds,
) -> Result<Vec<(Instance, Vec<CheckOutcome>)>> {
    let m = spec.build()?;
    if m.is_degenerate() {
        return Ok(Vec::new());
    }
    let ctx = ModuleContext::new(&m, bounds.targeted);
    Ok((0..ctx.lattice.len())
        .filter(|&i| ctx.lattice[i].len() < m.order())
        .map(|i| {
            let inst = Instance::new(spec.clone(), generators(&m, &ctx.lattice[i]));
            let outs = ids.iter().map(|&id| checks::run(&ctx, i, id)).collect();
            (inst, outs)
        })
        .collect())
}

/// Runs the selected checks over every generated instance, sequentially.
pub fn run_suite(bounds: &Bounds, ids: &[TheoremId]) -> SuiteReport {
    let modules = generate_modules(bounds);
    let results = modules.iter().map(|spec| check_module(spec, ids, bounds).unwrap_or_default());
    aggregate(bounds, ids, results)
}

/// Rebuilds an instance from its descriptors and checks that the recorded
/// outcome is reproduced exactly.
pub fn replay(instance: &Instance, outcome: &CheckOutcome) -> Result<bool> {
    Ok(verify_theorem(instance, outcome.id)? == *outcome)
}

#[cfg(test)]
mod tests;
