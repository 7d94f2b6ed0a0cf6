//! Parallel sweep over generated modules.
//!
//! Modules are checked independently on a rayon pool and the results are
//! merged back in canonical order, so the report does not depend on the
//! number of workers.

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use wcprime_core::theorems::{aggregate, check_module, generate_modules, Bounds, SuiteReport, TheoremId};

pub fn run_suite_parallel(bounds: &Bounds, ids: &[TheoremId], workers: usize) -> SuiteReport {
    let modules = generate_modules(bounds);
    let pool = ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let results: Vec<_> =
        pool.install(|| modules.par_iter().map(|spec| check_module(spec, ids, bounds).unwrap_or_default()).collect());
    aggregate(bounds, ids, results)
}
