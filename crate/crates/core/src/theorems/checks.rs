use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::context::{ModuleContext, Split};
use super::{CheckOutcome, Mode, Observation, Status, TheoremId};
use crate::bitset::BitSet;
use crate::module::Module;
use crate::multiplication::{element_product_set, m_radical_set, nilpotency_index};
use crate::predicates::{
    main2_conditions_set, main_conditions_set, triple_zeros_set, wcp_witness, ColonTable, Conditions,
};
use crate::witness::{self, Witness};

/// Accumulates the parts of one check. A part whose hypothesis does not
/// hold is skipped.
struct Eval {
    applied: bool,
    fail: Option<Witness>,
    observed: Option<Observation>,
    reason: Option<String>,
}

impl Eval {
    fn new() -> Eval {
        Eval { applied: false, fail: None, observed: None, reason: None }
    }

    fn na(reason: &str) -> Eval {
        let mut e = Eval::new();
        e.reason = Some(reason.into());
        e
    }

    /// Records an asserted part; `violation` is `None` when it holds.
    fn assert(&mut self, applies: bool, violation: Option<Witness>) {
        if applies {
            self.applied = true;
            if self.fail.is_none() {
                self.fail = violation;
            }
        }
    }

    fn observe(&mut self, applies: bool, violation: Option<Witness>) {
        if !applies {
            return;
        }
        let o = self.observed.get_or_insert(Observation { holds: true, witness: None });
        if o.holds {
            if let Some(w) = violation {
                o.holds = false;
                o.witness = Some(w);
            }
        }
    }

    fn because(mut self, reason: &str) -> Eval {
        if self.reason.is_none() {
            self.reason = Some(reason.into());
        }
        self
    }

    fn finish(self, id: TheoremId) -> CheckOutcome {
        let reason = || self.reason.clone().unwrap_or_else(|| "hypotheses not met".into());
        let (status, observation) = match id.mode() {
            Mode::Observe => match self.observed.clone() {
                Some(o) => (Status::Observed(o), None),
                None => (Status::NotApplicable(reason()), None),
            },
            Mode::Assert => {
                let status = match (&self.fail, self.applied) {
                    (Some(w), _) => Status::Fail(w.clone()),
                    (None, true) => Status::Pass,
                    (None, false) => Status::NotApplicable(reason()),
                };
                (status, self.observed.clone())
            }
        };
        CheckOutcome { id, mode: id.mode(), status, observation }
    }
}

fn check(ok: bool, w: impl FnOnce() -> Witness) -> Option<Witness> {
    if ok {
        None
    } else {
        Some(w())
    }
}

fn part(name: &str) -> Witness {
    Witness::new().with("part", name)
}

fn triple(m: &Module, (a, b, x): (usize, usize, usize)) -> Witness {
    Witness::new().with("a", witness::scalar(m, a)).with("b", witness::scalar(m, b)).with("m", witness::element(m, x))
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn conditions_string(c: &Conditions) -> String {
    c.holds.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub(crate) fn run(ctx: &ModuleContext, ni: usize, id: TheoremId) -> CheckOutcome {
    let eval = match id {
        TheoremId::T_COLON => colon(ctx, ni),
        TheoremId::T_TORSIONFREE => torsion_free(ctx, ni),
        TheoremId::T_HOM => hom(ctx, ni),
        TheoremId::T_QUOT => quot(ctx, ni),
        TheoremId::T_TOWER => tower(ctx, ni),
        TheoremId::T_LOC => loc(ctx, ni),
        TheoremId::T_REL => rel(ctx, ni),
        TheoremId::T_CYCLIC => cyclic(ctx, ni),
        TheoremId::T_LE1 => le1(ctx, ni),
        TheoremId::T_FREE3 => free3(ctx, ni),
        TheoremId::T_MAIN => main(ctx, ni),
        TheoremId::T_T1 => t1(ctx, ni),
        TheoremId::T_T2 => t2(ctx, ni),
        TheoremId::T_NCUBE => ncube(ctx, ni),
        TheoremId::T_NIL => nil(ctx, ni),
        TheoremId::T_IDEAL => ideal(ctx, ni),
        TheoremId::T_MULTPROP => multprop(ctx, ni),
        TheoremId::T_MAIN2 => main2(ctx, ni),
        TheoremId::T_FAITH => faith(ctx, ni),
        TheoremId::T_NRABM => nrabm(ctx, ni),
        TheoremId::T_FMULT => fmult(ctx, ni),
        TheoremId::T_FGFM => fgfm(ctx, ni),
        TheoremId::T_PROD1 => prod1(ctx, ni),
        TheoremId::T_CLPROD => clprod(ctx, ni),
        TheoremId::T_PROD3 => prod3(ctx, ni),
        TheoremId::T_PRODUCT1 => product1(ctx, ni),
        TheoremId::T_PRODUCT2 => product2(ctx, ni),
        TheoremId::T_PRODUCT3 => product3(ctx, ni),
        TheoremId::T_FLATFREE => flatfree(ctx, ni),
    };
    eval.finish(id)
}

/// Elements outside `N` whose colon ideal is not weakly prime in `R`.
fn bad_colon(ctx: &ModuleContext, ct: &ColonTable, n: &BitSet, only: impl Fn(usize) -> bool) -> Option<usize> {
    (0..ctx.order()).filter(|&x| !n.contains(x) && only(x)).find(|&x| !ctx.weakly_prime_ideal(&ct.n[x]))
}

fn colon(ctx: &ModuleContext, ni: usize) -> Eval {
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let wcp = ctx.flags(ni).is_wcp();
    let ct = ColonTable::new(m, n);
    let mut e = Eval::new();
    let regular = |x: usize| ctx.faithful && ctx.ann[x].len() == 1;
    let has_regular = (0..ctx.order()).any(|x| !n.contains(x) && regular(x));
    if wcp && has_regular {
        let bad = bad_colon(ctx, &ct, n, regular);
        e.assert(true, bad.map(|x| part("1").with("m", witness::element(m, x))));
    }
    if bad_colon(ctx, &ct, n, |_| true).is_none() {
        e.assert(
            true,
            check(wcp, || part("2").extend("", &wcp_witness(m, n).map(|t| triple(m, t)).unwrap_or_default())),
        );
    }
    e
}

fn torsion_free(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.torsion_free {
        return Eval::na("module is not torsion-free");
    }
    let n = &ctx.lattice[ni];
    let ct = ColonTable::new(&ctx.m, n);
    let wcp = ctx.flags(ni).is_wcp();
    let colons = bad_colon(ctx, &ct, n, |_| true).is_none();
    let mut e = Eval::new();
    e.assert(
        true,
        check(wcp == colons, || Witness::new().with("wcp", flag(wcp)).with("colons_weakly_prime", flag(colons))),
    );
    e
}

/// `N` pushed into `M/L`.
fn image(map: &[usize], order: usize, n: &BitSet) -> BitSet {
    BitSet::from_indices(order, n.iter().map(|x| map[x]))
}

fn quotient_part(ctx: &ModuleContext, ni: usize, e: &mut Eval, strict: bool, name: &str) {
    let n = &ctx.lattice[ni];
    for (li, l) in ctx.lattice.iter().enumerate() {
        if !l.is_subset(n) || (strict && l == n) {
            continue;
        }
        let q = &ctx.quotients()[li];
        let img = image(&q.map, q.module.order(), n);
        let bad = wcp_witness(&q.module, &img);
        e.assert(
            true,
            bad.map(|t| part(name).with("L", witness::submodule(&ctx.m, l)).extend("", &triple(&q.module, t))),
        );
        if e.fail.is_some() {
            return;
        }
    }
}

fn hom(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.flags(ni).is_wcp() {
        return Eval::na("N is not weakly classical prime");
    }
    let n = &ctx.lattice[ni];
    let mut e = Eval::new();
    for (li, l) in ctx.lattice.iter().enumerate() {
        let inter = n.intersection(l);
        if inter == *l {
            continue;
        }
        let sub = &ctx.submodules()[li];
        let local = BitSet::from_indices(sub.module.order(), (0..sub.map.len()).filter(|&i| n.contains(sub.map[i])));
        let bad = wcp_witness(&sub.module, &local);
        e.assert(
            true,
            bad.map(|t| part("1").with("L", witness::submodule(&ctx.m, l)).extend("", &triple(&sub.module, t))),
        );
        if e.fail.is_some() {
            return e;
        }
    }
    quotient_part(ctx, ni, &mut e, false, "2");
    e
}

fn quot(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.flags(ni).is_wcp() {
        return Eval::na("N is not weakly classical prime");
    }
    let mut e = Eval::new();
    quotient_part(ctx, ni, &mut e, true, "quotient");
    e.because("N has no proper submodule")
}

fn tower(ctx: &ModuleContext, ni: usize) -> Eval {
    let n = &ctx.lattice[ni];
    let wcp = ctx.flags(ni).is_wcp();
    let mut e = Eval::new();
    for (ki, k) in ctx.lattice.iter().enumerate() {
        if !k.is_subset(n) || k == n || !ctx.flags(ki).is_wcp() {
            continue;
        }
        let q = &ctx.quotients()[ki];
        if wcp_witness(&q.module, &image(&q.map, q.module.order(), n)).is_some() {
            continue;
        }
        e.assert(true, check(wcp, || Witness::new().with("K", witness::submodule(&ctx.m, k))));
        if e.fail.is_some() {
            break;
        }
    }
    e
}

fn loc(ctx: &ModuleContext, ni: usize) -> Eval {
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let k = m.eff_order();
    let wcp = ctx.flags(ni).is_wcp();
    let zd_n = BitSet::from_indices(k, (0..k).filter(|&r| n.iter().any(|x| x != 0 && m.act(r, x) == 0)));
    let zd_q = BitSet::from_indices(
        k,
        (0..k).filter(|&r| (0..ctx.order()).any(|x| !n.contains(x) && n.contains(m.act(r, x)))),
    );
    let mut e = Eval::new();
    for l in ctx.locals() {
        let img = image(&l.map, l.module.order(), n);
        let sw = |name: &str| part(name).with("s", witness::scalar(m, l.s));
        let p1 = wcp && l.set.intersection(&ctx.colon[ni]).is_empty();
        let local_wcp = img.len() < l.module.order() && wcp_witness(&l.module, &img).is_none();
        let p2 = local_wcp && l.set.intersection(&zd_n).is_empty() && l.set.intersection(&zd_q).is_empty();
        if p1 {
            e.assert(true, check(local_wcp, || sw("1")));
        }
        if p2 {
            e.assert(true, check(wcp, || sw("2")));
        }
        if p1 || p2 {
            let size_ok = l.module.order() * l.kernel_len == ctx.order();
            e.assert(true, check(size_ok, || sw("size")));
        }
    }
    e
}

fn rel(ctx: &ModuleContext, ni: usize) -> Eval {
    let f = ctx.flags(ni);
    let mut e = Eval::new();
    e.assert(f.is_weakly_prime(), check(f.is_wcp(), || part("weakly prime")));
    e.assert(f.is_wcp(), check(f.is_weak_two_abs(), || part("weakly 2-absorbing")));
    let converse = f.is_weak_two_abs() && ctx.weakly_prime_ideal(&ctx.colon[ni]);
    e.assert(converse, check(f.is_wcp(), || part("converse")));
    e
}

fn cyclic(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.cyclic {
        return Eval::na("module is not cyclic");
    }
    let f = ctx.flags(ni);
    let mut e = Eval::new();
    e.assert(
        true,
        check(f.is_weakly_prime() == f.is_wcp(), || {
            Witness::new().with("weakly_prime", flag(f.is_weakly_prime())).with("wcp", flag(f.is_wcp()))
        }),
    );
    e
}

/// Classical triple-zeros of `N` grouped by `(a, b)`: entry `a * k + b`
/// holds the elements `m`.
fn triple_zero_table(ctx: &ModuleContext, n: &BitSet) -> Vec<BitSet> {
    let k = ctx.m.eff_order();
    let mut t = alloc::vec![BitSet::new(ctx.order()); k * k];
    for (a, b, x) in triple_zeros_set(&ctx.m, n) {
        t[a * k + b].insert(x);
    }
    t
}

/// `r·L ⊆ N` for every effective scalar `r` and submodule `L`.
fn scalar_into(ctx: &ModuleContext, n: &BitSet) -> Vec<Vec<bool>> {
    (0..ctx.m.eff_order())
        .map(|r| {
            let row = ctx.m.act_row(r);
            ctx.lattice.iter().map(|l| l.iter().all(|x| n.contains(row[x] as usize))).collect()
        })
        .collect()
}

fn le1(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.flags(ni).is_wcp() {
        return Eval::na("N is not weakly classical prime");
    }
    let m = &ctx.m;
    let r = m.eff_ring();
    let k = m.eff_order();
    let n = &ctx.lattice[ni];
    let tz = triple_zero_table(ctx, n);
    let into = scalar_into(ctx, n);
    let mut e = Eval::new();
    for a in 0..k {
        for b in 0..k {
            let ab = r.mul(a, b);
            for (li, l) in ctx.lattice.iter().enumerate() {
                if !into[ab][li] || !l.intersection(&tz[a * k + b]).is_empty() {
                    continue;
                }
                e.assert(
                    true,
                    check(into[a][li] || into[b][li], || {
                        Witness::new()
                            .with("a", witness::scalar(m, a))
                            .with("b", witness::scalar(m, b))
                            .with("K", witness::submodule(m, l))
                    }),
                );
                if e.fail.is_some() {
                    return e;
                }
            }
        }
    }
    e
}

fn free3(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.flags(ni).is_wcp() {
        return Eval::na("N is not weakly classical prime");
    }
    let m = &ctx.m;
    let k = m.eff_order();
    let n = &ctx.lattice[ni];
    let ideals = &ctx.ideals;
    let tz = triple_zero_table(ctx, n);
    let into: Vec<Vec<bool>> =
        ideals.ideals.iter().map(|i| ctx.lattice.iter().map(|l| ctx.ideal_on(i, l).is_subset(n)).collect()).collect();
    let mut e = Eval::new();
    for (ii, i) in ideals.ideals.iter().enumerate() {
        for (ji, j) in ideals.ideals.iter().enumerate() {
            let ij = ideals.products[ii][ji];
            let mut zeros = BitSet::new(ctx.order());
            for a in i.iter() {
                for b in j.iter() {
                    zeros = zeros.union(&tz[a * k + b]);
                }
            }
            for (li, l) in ctx.lattice.iter().enumerate() {
                if !into[ij][li] || !l.intersection(&zeros).is_empty() {
                    continue;
                }
                e.assert(
                    true,
                    check(into[ii][li] || into[ji][li], || {
                        Witness::new()
                            .with("I", witness::eff_ideal(m, i))
                            .with("J", witness::eff_ideal(m, j))
                            .with("K", witness::submodule(m, l))
                    }),
                );
                if e.fail.is_some() {
                    return e;
                }
            }
        }
    }
    e
}

fn first_witness(c: &Conditions) -> Witness {
    let w = Witness::new().with("conditions", conditions_string(c));
    match c.witnesses.iter().position(Option::is_some) {
        Some(i) => w.with("first", i + 1).extend("", c.witnesses[i].as_ref().unwrap()),
        None => w,
    }
}

fn main(ctx: &ModuleContext, ni: usize) -> Eval {
    let c = main_conditions_set(&ctx.m, &ctx.lattice[ni], &ctx.ideals);
    let mut e = Eval::new();
    let ok = c.all_equal() && c.get(1) == ctx.flags(ni).is_wcp();
    e.assert(true, check(ok, || first_witness(&c)));
    e
}

fn wcp_not_classical(ctx: &ModuleContext, ni: usize) -> bool {
    let f = ctx.flags(ni);
    f.is_wcp() && !f.is_classical()
}

fn t1(ctx: &ModuleContext, ni: usize) -> Eval {
    if !wcp_not_classical(ctx, ni) {
        return Eval::na("N has no classical triple-zero");
    }
    let m = &ctx.m;
    let r = m.eff_ring();
    let k = m.eff_order();
    let n = &ctx.lattice[ni];
    let j = &ctx.colon[ni];
    let kills_n = |c: usize| n.iter().all(|y| m.act(c, y) == 0);
    // a·(N:M)·N = 0 and a·(N:M)·x = 0, tabulated per scalar and element.
    let a_j_n: Vec<bool> = (0..k).map(|a| j.iter().all(|t| kills_n(r.mul(a, t)))).collect();
    let a_j_x: Vec<Vec<bool>> =
        (0..k).map(|a| (0..ctx.order()).map(|x| j.iter().all(|t| m.act(r.mul(a, t), x) == 0)).collect()).collect();
    let jj: Vec<usize> = j.iter().flat_map(|s| j.iter().map(move |t| r.mul(s, t))).collect();
    let mut e = Eval::new();
    for (a, b, x) in triple_zeros_set(m, n) {
        let results =
            [kills_n(r.mul(a, b)), a_j_x[a][x], a_j_x[b][x], jj.iter().all(|&c| m.act(c, x) == 0), a_j_n[a], a_j_n[b]];
        let bad = results.iter().position(|ok| !ok);
        e.assert(true, bad.map(|i| part(&format!("{}", i + 1)).extend("", &triple(m, (a, b, x)))));
        if e.fail.is_some() {
            break;
        }
    }
    e
}

/// `(N:M)^2 N` as a set.
fn colon_sq_n(ctx: &ModuleContext, ni: usize) -> BitSet {
    let r = ctx.m.eff_ring();
    let j = &ctx.colon[ni];
    let jj: Vec<usize> = j.iter().flat_map(|s| j.iter().map(move |t| r.mul(s, t))).collect();
    ctx.ideal_on(&r.span(&jj), &ctx.lattice[ni])
}

fn t2(ctx: &ModuleContext, ni: usize) -> Eval {
    if !wcp_not_classical(ctx, ni) {
        return Eval::na("N is not weakly classical prime or is classical prime");
    }
    let mut e = Eval::new();
    let sq = colon_sq_n(ctx, ni);
    e.assert(true, check(sq.len() == 1, || part("square").with("J2N", witness::submodule(&ctx.m, &sq))));
    let nilpotent = nilpotency_index(&ctx.m, &ctx.lattice[ni]).is_some();
    e.assert(true, check(nilpotent, || part("nilpotent")));
    e
}

fn ncube(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.multiplication {
        return Eval::na("module is not a multiplication module");
    }
    if !wcp_not_classical(ctx, ni) {
        return Eval::na("N is not weakly classical prime or is classical prime");
    }
    let cube = ctx.product(ctx.product(ni, ni), ni);
    let mut e = Eval::new();
    e.assert(
        true,
        check(ctx.lattice[cube].len() == 1, || {
            Witness::new().with("N3", witness::submodule(&ctx.m, &ctx.lattice[cube]))
        }),
    );
    e
}

fn nil(ctx: &ModuleContext, ni: usize) -> Eval {
    if !wcp_not_classical(ctx, ni) {
        return Eval::na("N is not weakly classical prime or is classical prime");
    }
    let m = &ctx.m;
    let r = m.eff_ring();
    let mut e = Eval::new();
    let rad = r.radical_of(&ctx.colon[ni]);
    e.assert(true, check(rad == r.nilradical(), || part("1").with("rad", witness::eff_ideal(m, &rad))));
    if ctx.multiplication {
        let primes = ctx.prime_sets();
        let mrad = m_radical_set(m, primes, &ctx.lattice[ni]);
        let mrad0 = m_radical_set(m, primes, &ctx.lattice[0]);
        e.assert(true, check(mrad == mrad0, || part("2").with("mrad", witness::submodule(m, &mrad))));
        if ctx.faithful {
            e.assert(true, check(mrad == *ctx.nil(), || part("nil").with("mrad", witness::submodule(m, &mrad))));
        }
    }
    e
}

/// Whether `M` is `R` itself, up to the choice of generator.
fn regular_generator(ctx: &ModuleContext) -> Option<usize> {
    let m = &ctx.m;
    (ctx.faithful && ctx.cyclic && m.order() == m.scalars().order())
        .then(|| m.generator_indices().first().copied())
        .flatten()
}

fn ideal(ctx: &ModuleContext, ni: usize) -> Eval {
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let wcp = ctx.flags(ni).is_wcp();
    let mut e = Eval::new();
    if let Some(g) = regular_generator(ctx) {
        let i = BitSet::from_indices(m.eff_order(), (0..m.eff_order()).filter(|&r| n.contains(m.act(r, g))));
        let wp = ctx.weakly_prime_ideal(&i);
        e.assert(
            true,
            check(wcp == wp, || Witness::new().with("I", witness::eff_ideal(m, &i)).with("weakly_prime", flag(wp))),
        );
    }
    if ctx.all_ideals_weakly_prime() {
        e.observe(
            true,
            check(wcp, || part("2").extend("", &wcp_witness(m, n).map(|t| triple(m, t)).unwrap_or_default())),
        );
    }
    e.because("module is not R and R has a proper ideal that is not weakly prime")
}

fn multprop(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.multiplication {
        return Eval::na("module is not a multiplication module");
    }
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let size = ctx.order();
    // For every submodule L and element x: (Lx ⊆ N, Lx ≠ 0).
    let lx: Vec<Vec<(bool, bool)>> = ctx
        .lattice
        .iter()
        .map(|l| {
            (0..size)
                .map(|x| {
                    let s = element_product_set(m, l, x);
                    (s.is_subset(n), s.len() > 1)
                })
                .collect()
        })
        .collect();
    let mut cond = None;
    'outer: for i in 0..ctx.lattice.len() {
        for j in 0..ctx.lattice.len() {
            let p = ctx.product(i, j);
            for (x, &(inside, nonzero)) in lx[p].iter().enumerate() {
                if inside && nonzero && !lx[i][x].0 && !lx[j][x].0 {
                    cond = Some((i, j, x));
                    break 'outer;
                }
            }
        }
    }
    let wcp = ctx.flags(ni).is_wcp();
    let mut e = Eval::new();
    e.assert(
        true,
        check(wcp == cond.is_none(), || {
            let w = Witness::new().with("wcp", flag(wcp));
            match cond {
                Some((i, j, x)) => w
                    .with("N1", witness::submodule(m, &ctx.lattice[i]))
                    .with("N2", witness::submodule(m, &ctx.lattice[j]))
                    .with("m", witness::element(m, x)),
                None => w,
            }
        }),
    );
    e
}

fn main2(ctx: &ModuleContext, ni: usize) -> Eval {
    let c = main2_conditions_set(&ctx.m, &ctx.lattice[ni], &ctx.ideals, &ctx.lattice);
    let mut e = Eval::new();
    for (from, to) in [(7, 5), (5, 3), (6, 4), (2, 1)] {
        e.assert(c.get(from), check(c.get(to), || part(&format!("({from})=>({to})")).extend("", &first_witness(&c))));
    }
    e.observe(true, check(c.all_equal(), || first_witness(&c)));
    e
}

fn faith(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.flags(ni).is_wcp() {
        return Eval::na("N is not weakly classical prime");
    }
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let zero = &ctx.lattice[0];
    let mut e = Eval::new();
    for l in &ctx.lattice {
        let faithful = ctx.faithful && crate::module::submodule::colon_eff(m, zero, l).len() == 1;
        if !faithful || l.is_subset(n) {
            continue;
        }
        let c = crate::module::submodule::colon_eff(m, n, l);
        e.observe(true, check(ctx.weakly_prime_ideal(&c), || Witness::new().with("L", witness::submodule(m, l))));
    }
    e.because("no faithful submodule outside N")
}

fn nrabm(ctx: &ModuleContext, ni: usize) -> Eval {
    if !ctx.flags(ni).is_wcp() {
        return Eval::na("N is not weakly classical prime");
    }
    let m = &ctx.m;
    let r = m.eff_ring();
    let k = m.eff_order();
    let ct = ColonTable::new(m, &ctx.lattice[ni]);
    let mut union_bad = None;
    let mut one_bad = None;
    for a in 0..k {
        for b in 0..k {
            let ab = r.mul(a, b);
            for x in 0..ctx.order() {
                let (abx, ax, bx) = (m.act(ab, x), m.act(a, x), m.act(b, x));
                let lhs = &ct.n[abx];
                let parts = [&ct.zero[abx], &ct.n[ax], &ct.n[bx]];
                if union_bad.is_none() && *lhs != parts[0].union(parts[1]).union(parts[2]) {
                    union_bad = Some((a, b, x));
                }
                if one_bad.is_none() && !parts.contains(&lhs) {
                    one_bad = Some((a, b, x));
                }
            }
        }
    }
    let mut e = Eval::new();
    e.assert(true, union_bad.map(|t| part("1").extend("", &triple(m, t))));
    let v = one_bad.map(|t| part("2").extend("", &triple(m, t)));
    if ctx.principal {
        e.assert(true, v);
    } else {
        e.observe(true, v);
    }
    e
}

fn fmult(ctx: &ModuleContext, ni: usize) -> Eval {
    if !(ctx.multiplication && ctx.faithful) {
        return Eval::na("module is not a faithful multiplication module");
    }
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let f = ctx.flags(ni);
    let len = ctx.lattice.len();
    let inside = |i: usize| ctx.lattice[i].is_subset(n);
    let nonzero = |i: usize| ctx.lattice[i].len() > 1;
    let sub = |i: usize| witness::submodule(m, &ctx.lattice[i]);
    let mut c2 = None;
    'c2: for i in 0..len {
        for j in 0..len {
            let ij = ctx.product(i, j);
            for l in 0..len {
                let p = ctx.product(ij, l);
                if nonzero(p) && inside(p) && !inside(ctx.product(i, l)) && !inside(ctx.product(j, l)) {
                    c2 = Some(Witness::new().with("N1", sub(i)).with("N2", sub(j)).with("N3", sub(l)));
                    break 'c2;
                }
            }
        }
    }
    let mut c3 = None;
    'c3: for i in 0..len {
        for j in 0..len {
            let p = ctx.product(i, j);
            if nonzero(p) && inside(p) && !inside(i) && !inside(j) {
                c3 = Some(Witness::new().with("N1", sub(i)).with("N2", sub(j)));
                break 'c3;
            }
        }
    }
    let (c1, c4, c5) = (f.is_wcp(), f.is_weakly_prime(), ctx.weakly_prime_ideal(&ctx.colon[ni]));
    let mut e = Eval::new();
    e.assert(c2.is_none(), c3.clone().map(|w| part("(2)=>(3)").extend("", &w)));
    e.assert(c3.is_none(), check(c4, || part("(3)=>(4)")));
    e.assert(c4, check(c1, || part("(4)=>(1)")));
    e.assert(c5, check(c4, || part("(5)=>(4)")));
    e.observe(c1, c2.map(|w| part("(1)=>(2)").extend("", &w)));
    e.observe(c1, check(c5, || part("(1)=>(5)")));
    e
}

fn fgfm(ctx: &ModuleContext, ni: usize) -> Eval {
    if !(ctx.multiplication && ctx.faithful) {
        return Eval::na("module is not a faithful multiplication module");
    }
    let n = &ctx.lattice[ni];
    let whole = BitSet::full(ctx.order());
    let c1 = ctx.flags(ni).is_wcp();
    let c2 = ctx.weakly_prime_ideal(&ctx.colon[ni]);
    let c3 =
        ctx.ideals.ideals.iter().enumerate().any(|(i, s)| ctx.lifted_weakly_prime[i] && ctx.ideal_on(s, &whole) == *n);
    let w = || Witness::new().with("wcp", flag(c1)).with("colon_weakly_prime", flag(c2)).with("IM", flag(c3));
    let mut e = Eval::new();
    e.assert(true, check(c2 == c3, w));
    e.observe(true, check(c1 == c2, w));
    e
}

/// Scans `N_A ⊆ M_A` through the elements of `M` supported on `side`.
/// Requires `N` to be a product, so `x ∈ N` iff its component is in `N_A`.
struct Side<'a> {
    ctx: &'a ModuleContext,
    n: &'a BitSet,
    elems: Vec<usize>,
}

impl<'a> Side<'a> {
    fn new(ctx: &'a ModuleContext, split: &Split, side: usize, n: &'a BitSet) -> Side<'a> {
        let elems = (0..split.size(side)).map(|c| split.embed(side, c)).collect();
        Side { ctx, n, elems }
    }

    fn is_zero(&self) -> bool {
        self.elems.len() == 1
    }

    fn is_proper(&self) -> bool {
        self.elems.iter().any(|&x| !self.n.contains(x))
    }

    /// First `(a, b, x)` breaking (weakly) classical primeness.
    fn classical(&self, weak: bool) -> Option<(usize, usize, usize)> {
        let m = &self.ctx.m;
        let r = m.eff_ring();
        let k = m.eff_order();
        for a in 0..k {
            for b in 0..k {
                let ab = r.mul(a, b);
                for &x in &self.elems {
                    let abx = m.act(ab, x);
                    if self.n.contains(abx)
                        && (!weak || abx != 0)
                        && !self.n.contains(m.act(a, x))
                        && !self.n.contains(m.act(b, x))
                    {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }

    fn weakly_prime(&self) -> Option<(usize, usize)> {
        let m = &self.ctx.m;
        for a in 0..m.eff_order() {
            let in_colon = self.elems.iter().all(|&x| self.n.contains(m.act(a, x)));
            if in_colon {
                continue;
            }
            for &x in &self.elems {
                let ax = m.act(a, x);
                if ax != 0 && self.n.contains(ax) && !self.n.contains(x) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    /// `r` kills every element of this side.
    fn killed_by(&self, r: usize) -> bool {
        self.elems.iter().all(|&x| self.ctx.m.act(r, x) == 0)
    }
}

/// Sides `A` for which `N = N_A × M_B` with `N_A` proper.
fn full_on_other(split: &Split, n: &BitSet) -> Vec<usize> {
    if !split.is_product(n) {
        return Vec::new();
    }
    (0..2)
        .filter(|&side| {
            let other = 1 - side;
            split.project(other, n).len() == split.size(other) && split.project(side, n).len() < split.size(side)
        })
        .collect()
}

fn prod1(ctx: &ModuleContext, ni: usize) -> Eval {
    let Some(split) = ctx.split else { return Eval::na("module is not a direct product") };
    let m = &ctx.m;
    let n = &ctx.lattice[ni];
    let r = m.eff_ring();
    let wcp = ctx.flags(ni).is_wcp();
    let mut e = Eval::new();
    for side in full_on_other(&split, n) {
        let a_side = Side::new(ctx, &split, side, n);
        let b_side = Side::new(ctx, &split, 1 - side, n);
        let component = a_side.classical(true).is_none();
        let mut annihilates = None;
        'scan: for s1 in 0..m.eff_order() {
            for s2 in 0..m.eff_order() {
                let rs = r.mul(s1, s2);
                for &x in &a_side.elems {
                    if m.act(rs, x) == 0
                        && !n.contains(m.act(s1, x))
                        && !n.contains(m.act(s2, x))
                        && !b_side.killed_by(rs)
                    {
                        annihilates = Some((s1, s2, x));
                        break 'scan;
                    }
                }
            }
        }
        let cond2 = component && annihilates.is_none();
        e.assert(
            true,
            check(wcp == cond2, || {
                Witness::new().with("side", side).with("wcp", flag(wcp)).with("component_wcp", flag(component))
            }),
        );
    }
    e.because("N is not of the form N1 x M2")
}

fn clprod(ctx: &ModuleContext, ni: usize) -> Eval {
    let Some(split) = ctx.split else { return Eval::na("module is not a direct product") };
    let n = &ctx.lattice[ni];
    let cp = ctx.flags(ni).is_classical();
    let mut e = Eval::new();
    for side in full_on_other(&split, n) {
        let comp = Side::new(ctx, &split, side, n).classical(false).is_none();
        e.assert(true, check(cp == comp, || Witness::new().with("side", side).with("classical", flag(cp))));
    }
    e.because("N is not of the form N1 x M2")
}

fn prod3(ctx: &ModuleContext, ni: usize) -> Eval {
    let Some(split) = ctx.split else { return Eval::na("module is not a direct product") };
    let n = &ctx.lattice[ni];
    if !split.is_product(n) {
        return Eval::na("N is not a product of submodules");
    }
    let sides = [Side::new(ctx, &split, 0, n), Side::new(ctx, &split, 1, n)];
    if !sides.iter().all(Side::is_proper) {
        return Eval::na("a component of N is not proper");
    }
    let f = ctx.flags(ni);
    let mut e = Eval::new();
    for (i, s) in sides.iter().enumerate() {
        let w = s.classical(true);
        e.assert(f.is_wcp(), w.map(|t| part("weakly").with("side", i).extend("", &triple(&ctx.m, t))));
        let c = s.classical(false);
        e.assert(f.is_classical(), c.map(|t| part("classical").with("side", i).extend("", &triple(&ctx.m, t))));
    }
    e
}

fn product1(ctx: &ModuleContext, ni: usize) -> Eval {
    let (Some(split), false) = (ctx.split, ctx.factors.is_empty()) else {
        return Eval::na("module is not over a product ring");
    };
    let n = &ctx.lattice[ni];
    let f = ctx.flags(ni);
    let mut e = Eval::new();
    for side in full_on_other(&split, n) {
        if Side::new(ctx, &split, 1 - side, n).is_zero() {
            e = e.because("the full component is zero");
            continue;
        }
        let c1 = Side::new(ctx, &split, side, n).classical(false).is_none();
        let (c2, c3) = (f.is_classical(), f.is_wcp());
        e.assert(
            true,
            check(c1 == c2 && c2 == c3, || {
                Witness::new()
                    .with("side", side)
                    .with("component_classical", flag(c1))
                    .with("classical", flag(c2))
                    .with("wcp", flag(c3))
            }),
        );
    }
    e.because("N is not of the form N1 x M2")
}

fn product2(ctx: &ModuleContext, ni: usize) -> Eval {
    let (Some(split), 2) = (ctx.split, ctx.factors.len()) else {
        return Eval::na("module is not over a product of two rings");
    };
    let n = &ctx.lattice[ni];
    let sides = [Side::new(ctx, &split, 0, n), Side::new(ctx, &split, 1, n)];
    if !sides.iter().all(Side::is_proper) {
        return Eval::na("a component of N is not proper");
    }
    let wcp = ctx.flags(ni).is_wcp();
    let mut e = Eval::new();
    for (i, s) in sides.iter().enumerate() {
        let w = s.weakly_prime().map(|(a, x)| {
            Witness::new().with("side", i).with("a", witness::scalar(&ctx.m, a)).with("m", witness::element(&ctx.m, x))
        });
        e.assert(wcp, w);
    }
    e.because("N is not weakly classical prime")
}

fn product3(ctx: &ModuleContext, ni: usize) -> Eval {
    if ctx.factors.len() != 3 {
        return Eval::na("module is not over a product of three rings");
    }
    if ctx.factors.contains(&1) {
        return Eval::na("a component module is zero");
    }
    let f = ctx.flags(ni);
    let zero = ctx.lattice[ni].len() == 1;
    let mut e = Eval::new();
    e.assert(
        f.is_wcp(),
        check(zero || f.is_classical(), || f.classical.map(|t| triple(&ctx.m, t)).unwrap_or_default()),
    );
    e.because("N is not weakly classical prime")
}

fn flatfree(ctx: &ModuleContext, ni: usize) -> Eval {
    let n = &ctx.lattice[ni];
    let size = ctx.order();
    let wcp = ctx.flags(ni).is_wcp();
    let mut e = Eval::new();
    for (k, mk) in ctx.powers() {
        // Tuples with every component in N; components are base-|M| digits.
        let nk = BitSet::from_indices(
            mk.order(),
            (0..mk.order()).filter(|&x| {
                let mut y = x;
                (0..*k).all(|_| {
                    let c = y % size;
                    y /= size;
                    n.contains(c)
                })
            }),
        );
        let power_wcp = wcp_witness(mk, &nk);
        let kw = || Witness::new().with("k", k);
        e.assert(power_wcp.is_none(), check(wcp, || kw().with("direction", "reverse")));
        e.observe(wcp, power_wcp.map(|t| kw().with("direction", "forward").extend("", &triple(mk, t))));
    }
    e.because("M^k exceeds the size bound")
}

/// `N = N_1 × N_2` with both components proper and weakly classical prime
/// while `N` is not.
pub(crate) fn prod3_converse(ctx: &ModuleContext, ni: usize) -> Option<Witness> {
    let split = ctx.split?;
    let n = &ctx.lattice[ni];
    if !split.is_product(n) || ctx.flags(ni).is_wcp() {
        return None;
    }
    let sides = [Side::new(ctx, &split, 0, n), Side::new(ctx, &split, 1, n)];
    let ok = sides.iter().all(|s| s.is_proper() && s.classical(true).is_none());
    ok.then(|| ctx.flags(ni).wcp.map(|t| triple(&ctx.m, t)).unwrap_or_default())
}

/// Two-factor product-ring module with `N = N_1 × N_2`, both components
/// proper and weakly prime, and `N` not weakly classical prime.
pub(crate) fn product2_converse(ctx: &ModuleContext, ni: usize) -> Option<Witness> {
    let split = ctx.split?;
    let n = &ctx.lattice[ni];
    if ctx.factors.len() != 2 || !split.is_product(n) || ctx.flags(ni).is_wcp() {
        return None;
    }
    let sides = [Side::new(ctx, &split, 0, n), Side::new(ctx, &split, 1, n)];
    let ok = sides.iter().all(|s| s.is_proper() && s.weakly_prime().is_none());
    ok.then(|| ctx.flags(ni).wcp.map(|t| triple(&ctx.m, t)).unwrap_or_default())
}
