use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use super::checks::{prod3_converse, product2_converse};
use super::context::ModuleContext;
use super::{generate_modules, generators, Bounds, Instance};
use crate::error::{Error, Result};
use crate::witness::{self, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum Goal {
    /// Weakly classical prime but not classical prime.
    WCP_NOT_CP,
    /// Weakly classical prime but not weakly prime.
    WCP_NOT_WP,
    /// A product of weakly classical prime components that is not weakly
    /// classical prime.
    PROD3_CONVERSE,
    /// A product of weakly prime components over a product ring that is not
    /// weakly classical prime.
    PRODUCT2_CONVERSE,
}

impl Goal {
    pub const ALL: &'static [Goal] =
        &[Goal::WCP_NOT_CP, Goal::WCP_NOT_WP, Goal::PROD3_CONVERSE, Goal::PRODUCT2_CONVERSE];

    pub fn as_str(self) -> &'static str {
        match self {
            Goal::WCP_NOT_CP => "WCP_NOT_CP",
            Goal::WCP_NOT_WP => "WCP_NOT_WP",
            Goal::PROD3_CONVERSE => "PROD3_CONVERSE",
            Goal::PRODUCT2_CONVERSE => "PRODUCT2_CONVERSE",
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Goal> {
        Goal::ALL.iter().copied().find(|g| g.as_str() == s).ok_or_else(|| Error::UnknownGoal(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub goal: Goal,
    /// First instance in canonical order reaching the goal.
    pub found: Option<(Instance, Witness)>,
    /// Instances examined, including the one found.
    pub examined: usize,
}

fn probe(goal: Goal, ctx: &ModuleContext, ni: usize) -> Option<Witness> {
    let m = &ctx.m;
    let f = ctx.flags(ni);
    match goal {
        Goal::WCP_NOT_CP => {
            let (a, b, x) = f.classical.filter(|_| f.is_wcp())?;
            Some(
                Witness::new()
                    .with("a", witness::scalar(m, a))
                    .with("b", witness::scalar(m, b))
                    .with("m", witness::element(m, x)),
            )
        }
        Goal::WCP_NOT_WP => {
            let (a, x) = f.weakly_prime.filter(|_| f.is_wcp())?;
            Some(Witness::new().with("a", witness::scalar(m, a)).with("m", witness::element(m, x)))
        }
        Goal::PROD3_CONVERSE => prod3_converse(ctx, ni),
        Goal::PRODUCT2_CONVERSE => product2_converse(ctx, ni),
    }
}

/// Scans the sweep in canonical order for the first instance reaching the
/// goal.
pub fn search_counterexample(goal: Goal, bounds: &Bounds) -> SearchResult {
    let mut examined = 0;
    for spec in generate_modules(bounds) {
        let Ok(m) = spec.build() else { continue };
        let ctx = ModuleContext::new(&m, bounds.targeted);
        for ni in 0..ctx.lattice.len() {
            if ctx.lattice[ni].len() == m.order() {
                continue;
            }
            examined += 1;
            if let Some(w) = probe(goal, &ctx, ni) {
                let inst = Instance::new(spec.clone(), generators(&m, &ctx.lattice[ni]));
                return SearchResult { goal, found: Some((inst, w)), examined };
            }
        }
    }
    SearchResult { goal, found: None, examined }
}
