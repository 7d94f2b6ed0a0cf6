use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Bounds, CheckOutcome, Instance, Mode, Status, TheoremId};
use crate::witness::Witness;

/// Most witnesses kept per theorem, for failures and for the gallery
/// separately. Counts are never capped.
pub const WITNESS_CAP: usize = 10;

/// A failing instance of an asserted check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub instance: String,
    pub witness: Witness,
}

/// An observed-false instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalleryEntry {
    pub theorem: TheoremId,
    pub instance: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremSummary {
    pub id: TheoremId,
    pub mode: Mode,
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
    pub na: usize,
    pub observed_true: usize,
    pub observed_false: usize,
    /// No instance met the hypotheses.
    pub vacuous: bool,
    pub witnesses: Vec<WitnessEntry>,
}

impl TheoremSummary {
    fn new(id: TheoremId) -> Self {
        TheoremSummary {
            id,
            mode: id.mode(),
            instances: 0,
            pass: 0,
            fail: 0,
            na: 0,
            observed_true: 0,
            observed_false: 0,
            vacuous: true,
            witnesses: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub bounds: Bounds,
    pub modules: usize,
    pub instances: usize,
    pub theorems: Vec<TheoremSummary>,
    pub gallery: Vec<GalleryEntry>,
}

impl SuiteReport {
    pub fn any_fail(&self) -> bool {
        self.theorems.iter().any(|t| t.fail > 0)
    }

    pub fn theorem(&self, id: TheoremId) -> Option<&TheoremSummary> {
        self.theorems.iter().find(|t| t.id == id)
    }
}

/// Folds per-module results, in canonical order, into a report.
pub fn aggregate<I>(bounds: &Bounds, ids: &[TheoremId], results: I) -> SuiteReport
where
    I: IntoIterator<Item = Vec<(Instance, Vec<CheckOutcome>)>>,
{
    let mut theorems: Vec<TheoremSummary> = ids.iter().map(|&id| TheoremSummary::new(id)).collect();
    let mut gallery: Vec<GalleryEntry> = Vec::new();
    let mut shown = alloc::vec![0usize; ids.len()];
    let (mut modules, mut instances) = (0, 0);
    for module in results {
        modules += 1;
        for (inst, outcomes) in module {
            instances += 1;
            for (k, out) in outcomes.iter().enumerate() {
                let t = &mut theorems[k];
                t.instances += 1;
                match &out.status {
                    Status::Pass => t.pass += 1,
                    Status::Fail(w) => {
                        t.fail += 1;
                        if t.witnesses.len() < WITNESS_CAP {
                            t.witnesses.push(WitnessEntry { instance: inst.to_string(), witness: w.clone() });
                        }
                    }
                    Status::NotApplicable(_) => t.na += 1,
                    Status::Observed(_) => {}
                }
                if let Some(o) = out.observed() {
                    if o.holds {
                        t.observed_true += 1;
                    } else {
                        t.observed_false += 1;
                        if shown[k] < WITNESS_CAP {
                            shown[k] += 1;
                            gallery.push(GalleryEntry {
                                theorem: out.id,
                                instance: inst.to_string(),
                                witness: o.witness.clone().unwrap_or_default(),
                            });
                        }
                    }
                }
            }
        }
    }
    for t in &mut theorems {
        t.vacuous = match t.mode {
            Mode::Assert => t.pass + t.fail == 0,
            Mode::Observe => t.observed_true + t.observed_false == 0,
        };
    }
    gallery.sort_by_key(|g| g.theorem);
    SuiteReport { bounds: *bounds, modules, instances, theorems, gallery }
}
