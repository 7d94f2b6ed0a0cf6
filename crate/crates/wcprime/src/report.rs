//! JSON and markdown renderings. JSON objects use sorted keys, so equal
//! inputs give byte-identical output.

use serde_json::{json, Value};

use wcprime_core::predicates::{classify, ClassificationReport};
use wcprime_core::ring::Verdict;
use wcprime_core::theorems::{CheckOutcome, Instance, SearchResult, Status, SuiteReport};
use wcprime_core::{Module, Result, Submodule};

fn verdict<W>(v: &Verdict<W>, show: impl Fn(&W) -> String) -> Value {
    json!({ "holds": v.holds(), "witness": v.witness().map(show) })
}

fn pair(w: &(wcprime_core::Element, wcprime_core::Element)) -> String {
    format!("a={} m={}", w.0, w.1)
}

fn triple(w: &(wcprime_core::Element, wcprime_core::Element, wcprime_core::Element)) -> String {
    format!("a={} b={} m={}", w.0, w.1, w.2)
}

const CLASS_NAMES: [&str; 6] =
    ["prime", "weakly_prime", "classical_prime", "weakly_classical_prime", "two_absorbing", "weakly_two_absorbing"];

fn class_values(r: &ClassificationReport) -> [Value; 6] {
    [
        verdict(&r.prime, pair),
        verdict(&r.weakly_prime, pair),
        verdict(&r.classical_prime, triple),
        verdict(&r.weakly_classical_prime, triple),
        verdict(&r.two_absorbing, triple),
        verdict(&r.weakly_two_absorbing, triple),
    ]
}

/// Classification of one submodule with its colon ideal and the module's
/// annihilator.
pub fn classify_json(instance: &Instance, m: &Module, n: &Submodule) -> Result<Value> {
    let r = classify(n)?;
    let mut flags = serde_json::Map::new();
    for (name, v) in CLASS_NAMES.iter().zip(class_values(&r)) {
        flags.insert(name.to_string(), v);
    }
    let colon = n.colon(&m.whole())?;
    let colon_weakly_prime = !colon.is_whole() && colon.is_weakly_prime()?.holds();
    Ok(json!({
        "instance": instance.to_string(),
        "module_order": m.order(),
        "submodule": n.to_string(),
        "submodule_order": n.len(),
        "colon": colon.to_string(),
        "colon_weakly_prime": colon_weakly_prime,
        "annihilator": m.annihilator().to_string(),
        "classes": flags,
        "ladder_violations": r.ladder_violations(),
    }))
}

pub fn classify_md(v: &Value) -> String {
    let mut s = format!("# {}\n\n", v["instance"].as_str().unwrap_or(""));
    s += &format!("- submodule: {}\n", v["submodule"].as_str().unwrap_or(""));
    s += &format!("- (N:M) = {}, weakly prime: {}\n", v["colon"].as_str().unwrap_or(""), v["colon_weakly_prime"]);
    s += &format!("- Ann(M) = {}\n\n", v["annihilator"].as_str().unwrap_or(""));
    s += "| class | holds | witness |\n|---|---|---|\n";
    for name in CLASS_NAMES {
        let c = &v["classes"][name];
        s += &format!("| {} | {} | {} |\n", name, c["holds"], c["witness"].as_str().unwrap_or("-"));
    }
    s
}

fn status_parts(s: &Status) -> (&'static str, Option<String>, Option<String>) {
    match s {
        Status::Pass => ("PASS", None, None),
        Status::Fail(w) => ("FAIL", None, Some(w.to_string())),
        Status::NotApplicable(r) => ("NA", Some(r.clone()), None),
        Status::Observed(o) => {
            let tag = if o.holds { "OBSERVED_TRUE" } else { "OBSERVED_FALSE" };
            (tag, None, o.witness.as_ref().map(|w| w.to_string()))
        }
    }
}

fn outcome_json(o: &CheckOutcome) -> Value {
    let (status, reason, witness) = status_parts(&o.status);
    let observation = o
        .observation
        .as_ref()
        .map(|ob| json!({ "holds": ob.holds, "witness": ob.witness.as_ref().map(|w| w.to_string()) }));
    json!({
        "id": o.id.as_str(),
        "mode": o.mode.as_str(),
        "status": status,
        "reason": reason,
        "witness": witness,
        "observation": observation,
    })
}

/// Outcomes of the selected checks on a single instance.
pub fn instance_json(instance: &Instance, outcomes: &[CheckOutcome]) -> Value {
    json!({
        "instance": instance.to_string(),
        "outcomes": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
    })
}

pub fn instance_md(instance: &Instance, outcomes: &[CheckOutcome]) -> String {
    let mut s = format!("# {instance}\n\n| theorem | mode | status | detail |\n|---|---|---|---|\n");
    for o in outcomes {
        let (status, reason, witness) = status_parts(&o.status);
        let detail = reason.or(witness).unwrap_or_default();
        s += &format!("| {} | {} | {} | {} |\n", o.id, o.mode.as_str(), status, detail);
    }
    s
}

pub fn suite_json(r: &SuiteReport) -> Value {
    let theorems: Vec<Value> = r
        .theorems
        .iter()
        .map(|t| {
            json!({
                "id": t.id.as_str(),
                "mode": t.mode.as_str(),
                "instances": t.instances,
                "pass": t.pass,
                "fail": t.fail,
                "na": t.na,
                "observed_true": t.observed_true,
                "observed_false": t.observed_false,
                "vacuous": t.vacuous,
                "witnesses": t.witnesses.iter().map(|w| json!({ "instance": w.instance, "witness": w.witness.to_string() })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let gallery: Vec<Value> = r
        .gallery
        .iter()
        .map(|g| json!({ "theorem": g.theorem.as_str(), "instance": g.instance, "witness": g.witness.to_string() }))
        .collect();
    let b = &r.bounds;
    json!({
        "bounds": { "ringmax": b.ringmax, "modmax": b.modmax, "arity": b.arity, "targeted": b.targeted },
        "modules": r.modules,
        "instances": r.instances,
        "theorems": theorems,
        "gallery": gallery,
    })
}

pub fn suite_md(r: &SuiteReport) -> String {
    let mut s = format!(
        "# Suite report\n\nBounds: {}, targeted={}. Modules: {}. Instances: {}.\n\n",
        r.bounds, r.bounds.targeted, r.modules, r.instances
    );
    s += "| theorem | mode | pass | fail | na | observed true | observed false | vacuous |\n";
    s += "|---|---|---|---|---|---|---|---|\n";
    for t in &r.theorems {
        s += &format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
            t.id,
            t.mode.as_str(),
            t.pass,
            t.fail,
            t.na,
            t.observed_true,
            t.observed_false,
            if t.vacuous { "yes" } else { "no" }
        );
    }
    let failures: Vec<_> = r.theorems.iter().flat_map(|t| t.witnesses.iter().map(move |w| (t.id, w))).collect();
    if !failures.is_empty() {
        s += "\n## Failures\n\n";
        for (id, w) in failures {
            s += &format!("- {id}: `{}` with {}\n", w.instance, w.witness);
        }
    }
    s += "\n## Gallery\n\n";
    if r.gallery.is_empty() {
        s += "No observed-false instances.\n";
    }
    for g in &r.gallery {
        s += &format!("- {}: `{}` with {}\n", g.theorem, g.instance, g.witness);
    }
    s
}

pub fn search_json(r: &SearchResult) -> Value {
    let (instance, witness) = match &r.found {
        Some((i, w)) => (Some(i.to_string()), Some(w.to_string())),
        None => (None, None),
    };
    json!({
        "goal": r.goal.as_str(),
        "found": r.found.is_some(),
        "instance": instance,
        "witness": witness,
        "examined": r.examined,
    })
}

pub fn search_md(r: &SearchResult) -> String {
    match &r.found {
        Some((i, w)) => format!("# {}\n\nFound `{i}` with {w} after {} instances.\n", r.goal, r.examined),
        None => format!("# {}\n\nNot found in {} instances.\n", r.goal, r.examined),
    }
}

/// Every submodule of a module, in canonical order.
pub fn submodules_json(instance: &Instance, m: &Module) -> Result<Value> {
    let subs = m.enumerate_submodules()?;
    let list: Vec<Value> = subs
        .iter()
        .map(|n| {
            json!({
                "submodule": n.to_string(),
                "order": n.len(),
                "elements": n.labels().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "ring": instance.ring.to_string(),
        "module": instance.module.to_string(),
        "order": m.order(),
        "submodules": list,
    }))
}

pub fn submodules_md(v: &Value) -> String {
    let mut s = format!(
        "# {} over {}\n\n| submodule | order |\n|---|---|\n",
        v["module"].as_str().unwrap_or(""),
        v["ring"].as_str().unwrap_or("")
    );
    for n in v["submodules"].as_array().into_iter().flatten() {
        s += &format!("| {} | {} |\n", n["submodule"].as_str().unwrap_or(""), n["order"]);
    }
    s
}

/// Modules of a sweep with their instance counts.
pub fn modules_json(bounds: &wcprime_core::theorems::Bounds) -> Value {
    let modules: Vec<Value> = wcprime_core::theorems::generate_modules(bounds)
        .iter()
        .map(|spec| {
            let n = wcprime_core::theorems::instances_of(spec).len();
            json!({ "ring": spec.scalar_ring().to_string(), "module": spec.to_string(), "instances": n })
        })
        .collect();
    let total: u64 = modules.iter().filter_map(|m| m["instances"].as_u64()).sum();
    json!({ "modules": modules, "instances": total })
}

pub fn modules_md(v: &Value) -> String {
    let mut s = format!(
        "# Generated modules\n\nInstances: {}.\n\n| ring | module | instances |\n|---|---|---|\n",
        v["instances"]
    );
    for m in v["modules"].as_array().into_iter().flatten() {
        s += &format!(
            "| {} | {} | {} |\n",
            m["ring"].as_str().unwrap_or(""),
            m["module"].as_str().unwrap_or(""),
            m["instances"]
        );
    }
    s
}
