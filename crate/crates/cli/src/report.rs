use cayrep::atlas::{d2_expected_order, d2_order_bound};
use cayrep::autgroup::KStructure;
use cayrep::gbase::{GBase, Section4Report, SweepEntry};
use cayrep::suites::SuiteReport;
use cayrep::{AutResult, CayleyGraph, Error, IndexedGroup};
use serde_json::{json, Value};

fn cycles(g: &IndexedGroup, xs: &[u32]) -> Vec<String> {
    xs.iter().map(|&x| g.element(x).to_string()).collect()
}

pub fn error(e: &Error, exact: bool) -> Value {
    let kind = match e {
        Error::DegreeMismatch { .. } => "degree-mismatch",
        Error::CapExceeded { .. } | Error::ElementCapExceeded { .. } => "cap-exceeded",
        Error::InvalidSpec(_) => "invalid-spec",
        Error::Parse(_) => "parse",
        Error::OrbitMismatch => "orbit-mismatch",
        Error::NotIsomorphism(_) => "not-isomorphism",
        Error::IdentityInConnection => "identity-in-connection",
        Error::NotNormal => "not-normal",
        Error::NotRegular => "not-regular",
        Error::NotAlmostSimple(_) => "not-almost-simple",
        Error::NoSuchInvolution => "no-such-involution",
        Error::BudgetExceeded(_) => "budget-exceeded",
        Error::UnsupportedGroup(_) => "unsupported-group",
        Error::NotEvenInvolution => "not-even-involution",
        Error::NotOdd => "not-odd",
        Error::BadPartition => "bad-partition",
        Error::Inconsistent(_) => "inconsistent",
    };
    let mut doc = json!({ "error": { "kind": kind, "message": e.to_string() } });
    if !exact {
        doc["exact"] = json!(false);
    }
    doc
}

pub fn group_info(spec: &str, g: &IndexedGroup) -> Value {
    let aut = g.automorphisms();
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| {
            json!({
                "representative": g.element(c.representative()).to_string(),
                "size": c.len(),
                "element_order": c.element_order,
                "cycle_type": c.cycle_type,
            })
        })
        .collect();
    json!({
        "command": "group info",
        "group": spec,
        "order": g.order(),
        "degree": g.defining_degree(),
        "generators": cycles(g, g.generators()),
        "simple": g.is_simple(),
        "socle_order": g.socle().len(),
        "socle_index": g.socle_index(),
        "aut_order": aut.len(),
        "inner_automorphisms": aut.inner_count(),
        "out_order": g.out_order(),
        "d2_order": d2_expected_order(g).to_string(),
        "d2_bound": d2_order_bound(g.order()),
        "classes": classes,
    })
}

pub fn k_object(k: &AutResult) -> Value {
    let mut v = match &k.structure {
        KStructure::Chain(c) => json!({ "order": c.order().to_string() }),
        KStructure::Wreath(w) => json!({ "wreath": w.summary() }),
        KStructure::Symmetric { degree } => json!({ "symmetric": { "degree": degree, "order": format!("{degree}!") } }),
    };
    v["strategy"] = json!(k.strategy.name());
    v["generators"] = json!(k.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    v["exact"] = json!(k.exact);
    v["certificates"] = json!(k.certificates);
    v
}

pub fn autgroup(spec: &str, gamma: &CayleyGraph, k: &AutResult) -> Value {
    json!({
        "command": "autgroup",
        "group": spec,
        "connection_size": gamma.connection().len(),
        "inverse_closed": gamma.is_inverse_closed(),
        "k": k_object(k),
        "exact": k.exact,
    })
}

pub fn reps(spec: &str, gamma: &CayleyGraph, base: &GBase) -> Value {
    let g = gamma.group();
    let classes: Vec<Value> = base
        .classes
        .iter()
        .map(|c| {
            json!({
                "label": c.representative.label,
                "connection": cycles(g, &c.connection),
                "subgroup_generators": c.representative.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "generator_images": cycles(g, &c.representative.images),
                "equivalent_to_input": c.equivalent_to_input,
                "members": c.members.iter().map(|m| m.label.clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "command": "reps",
        "group": spec,
        "connection_size": gamma.connection().len(),
        "b": base.b(),
        "route": base.route,
        "candidates": base.candidates,
        "note": base.note,
        "classes": classes,
        "separations": base.separations,
        "k": k_object(&base.k),
        "exact": true,
    })
}

pub fn theorem_simple(spec: &str, g: &IndexedGroup, directed_only: bool, entries: &[SweepEntry]) -> Value {
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            let mut v = json!(e);
            v["class_representatives"] = json!(e
                .classes
                .iter()
                .map(|&c| g.element(g.classes()[c].representative()).to_string())
                .collect::<Vec<_>>());
            v
        })
        .collect();
    let cap_holds = entries
        .iter()
        .all(|e| e.b <= 2 && (!e.inverse_closed || e.b == 1));
    let conjugators = entries
        .iter()
        .all(|e| e.strategy == "complete-empty" || !e.inverse_closed || e.g_l_conjugator_valid);
    json!({
        "command": "verify theorem-simple",
        "group": spec,
        "directed_only": directed_only,
        "unions": entries.len(),
        "max_b": entries.iter().map(|e| e.b).max().unwrap_or(0),
        "entries": rows,
        "passed": cap_holds && conjugators,
    })
}

pub fn section4(r: &Section4Report) -> Value {
    let mut v = json!(r);
    v["command"] = json!("verify section4");
    v
}

pub fn lemmas(seed: u64, suites: &[SuiteReport]) -> Value {
    json!({
        "command": "verify lemmas",
        "seed": seed,
        "suites": suites,
        "passed": suites.iter().all(|s| s.ok()),
    })
}
