//! Regular subgroups of `K = aut(Γ)` isomorphic to `G`, up to conjugacy in `K`.

mod conjugacy;
mod enumerate;
mod regular;
mod section4;
mod socle;

use itertools::Itertools;
use serde::Serialize;

use crate::atlas::IndexedGroup;
use crate::autgroup::{aut_group, classify_type, AutResult, TypeKind};
use crate::budget::Budget;
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

pub use conjugacy::{are_conjugate_regular, conjugacy_test, ConjugacyOutcome, Membership, Prepared};
pub use enumerate::{reg_enumerate_small, EnumerationStats};
pub use regular::{find_isomorphism, RegSubgroup, ELEMENTWISE_LIMIT};
pub use section4::{formula_check, ht_subgroup, tau, verify_section4, FormulaCheck, HtReport, PairReport, Section4Report};
pub use socle::{normalizer_in_wreath, normalizer_semiregular, reg_via_socle, SocleStats, MAX_ORBITS};

/// How candidates were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `K = sym(G)`: every regular subgroup is conjugate to `G_r`.
    FullSymmetric,
    /// `G` simple: `Reg(K,G)` is `{G_l, G_r}`.
    Simple,
    Closure,
    Socle,
}

#[derive(Clone, Debug)]
pub struct ClassMember {
    pub label: String,
    /// Conjugates the member onto the class representative.
    pub conjugator: Perm,
}

#[derive(Clone, Debug)]
pub struct GBaseClass {
    pub representative: RegSubgroup,
    /// Connection set of the associated representation, sorted.
    pub connection: Vec<u32>,
    pub members: Vec<ClassMember>,
    pub equivalent_to_input: bool,
}

/// Automorphisms of `G` scanned to separate two representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub first: usize,
    pub second: usize,
    pub scanned: usize,
    pub matched: usize,
}

#[derive(Clone, Debug)]
pub struct GBase {
    pub k: AutResult,
    pub route: Route,
    pub classes: Vec<GBaseClass>,
    pub separations: Vec<Separation>,
    pub candidates: usize,
    pub note: String,
}

impl GBase {
    pub fn b(&self) -> usize {
        self.classes.len()
    }
}

/// The G-base of a central Cayley graph over a simple or almost simple group.
pub fn g_base(gamma: &CayleyGraph, budget: &Budget) -> Result<GBase> {
    let k = aut_group(gamma, budget)?;
    g_base_with(gamma, k, budget)
}

/// As [`g_base`] with `K` already computed.
pub fn g_base_with(gamma: &CayleyGraph, k: AutResult, budget: &Budget) -> Result<GBase> {
    let g = gamma.group();
    if !k.exact {
        return Err(Error::BudgetExceeded(format!(
            "automorphism group not determined: {}",
            k.certificates.note.as_deref().unwrap_or("search budget exhausted")
        )));
    }
    if !g.is_almost_simple() {
        return Err(Error::UnsupportedGroup(format!("{} is not almost simple", g.name())));
    }
    if g.socle_index() > 4 {
        return Err(Error::UnsupportedGroup(format!(
            "socle index {} exceeds 4",
            g.socle_index()
        )));
    }
    let (route, candidates, note) = candidates(gamma, &k, budget)?;
    let base = classify(gamma, k, route, candidates, note, budget)?;
    if g.is_simple() && base.route != Route::FullSymmetric {
        let cap = if gamma.is_inverse_closed() { 1 } else { 2 };
        if base.b() > cap {
            return Err(Error::Inconsistent(format!(
                "simple group with b = {} above {cap}",
                base.b()
            )));
        }
    }
    Ok(base)
}

/// Candidate regular subgroups covering every class, before classification.
pub fn candidates(gamma: &CayleyGraph, k: &AutResult, budget: &Budget) -> Result<(Route, Vec<RegSubgroup>, String)> {
    let g = gamma.group();
    let gr = RegSubgroup::right_regular(g);
    let gl = RegSubgroup::left_regular(g);
    if k.is_symmetric_group() {
        return Ok((Route::FullSymmetric, vec![gr], "K is the full symmetric group".into()));
    }
    if g.is_simple() {
        return Ok((Route::Simple, vec![gr, gl], String::new()));
    }
    let tag = classify_type(k, g)?;
    let mut found = match tag.kind {
        TypeKind::NormalType => {
            let chain = k
                .chain()
                .ok_or_else(|| Error::Inconsistent("normal type without a chain".into()))?;
            let (subs, stats) = reg_enumerate_small(chain, g, budget)?;
            let note = format!(
                "{} elements, {} fixed-point-free, {} tuples",
                stats.elements, stats.fixed_point_free, stats.tuples_tested
            );
            (Route::Closure, subs, note)
        }
        TypeKind::SymmetricType => {
            let w = k
                .wreath()
                .ok_or_else(|| Error::Inconsistent("symmetric type without a wreath certificate".into()))?;
            let mgroup = normalizer_in_wreath(g, g.socle(), w)?;
            let (subs, stats) = reg_via_socle(&mgroup, g, budget)?;
            let note = format!(
                "|M| = {}, |M/S_r| = {}, {} complements, {} regular",
                mgroup.order(),
                stats.quotient_order,
                stats.complements_tested,
                stats.regular
            );
            (Route::Socle, subs, note)
        }
    };
    for h in found.1.iter_mut() {
        if h.same_group(g, &gr) {
            h.label = "G_r".into();
        } else if h.same_group(g, &gl) {
            h.label = "G_l".into();
        }
    }
    if !found.1.iter().any(|h| h.label == "G_r") {
        found.1.insert(0, gr);
    }
    if !found.1.iter().any(|h| h.label == "G_l") {
        found.1.push(gl);
    }
    Ok(found)
}

/// Splits candidates into `K`-classes in the given order.
pub fn classify(
    gamma: &CayleyGraph,
    k: AutResult,
    route: Route,
    candidates: Vec<RegSubgroup>,
    note: String,
    budget: &Budget,
) -> Result<GBase> {
    let g = gamma.group();
    let total = candidates.len();
    let deadline = budget.deadline();
    let oracle = Membership::K(&k);
    for h in &candidates {
        if !h.generators().iter().all(|p| k.contains(p)) {
            return Err(Error::Inconsistent(format!("{} is not inside K", h.label)));
        }
    }
    let prepared: Vec<Prepared> = candidates
        .iter()
        .map(|h| Prepared::new(gamma, h))
        .collect::<Result<_>>()?;

    // first member of each class, then members
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..candidates.len() {
        deadline.check("conjugacy classification")?;
        let home = groups.iter().position(|cls| {
            let j = cls[0];
            conjugacy_test(&oracle, g, &candidates[i], &prepared[i], &candidates[j], &prepared[j])
                .conjugator
                .is_some()
        });
        match home {
            Some(c) => groups[c].push(i),
            None => groups.push(vec![i]),
        }
    }

    let rank = |i: usize| (prepared[i].connection().to_vec(), candidates[i].label != "G_r", i);
    let mut classes = Vec::new();
    for members in &groups {
        let rep = *members.iter().min_by_key(|&&i| rank(i)).expect("nonempty class");
        let mut out = Vec::new();
        for &i in members {
            let c = conjugacy_test(&oracle, g, &candidates[i], &prepared[i], &candidates[rep], &prepared[rep])
                .conjugator
                .ok_or_else(|| Error::Inconsistent("class members not conjugate to representative".into()))?;
            out.push(ClassMember {
                label: candidates[i].label.clone(),
                conjugator: c,
            });
        }
        classes.push(GBaseClass {
            representative: candidates[rep].clone(),
            connection: prepared[rep].connection().to_vec(),
            equivalent_to_input: members.iter().any(|&i| candidates[i].label == "G_r"),
            members: out,
        });
    }
    classes.sort_by(|a, b| {
        (!a.equivalent_to_input, &a.connection).cmp(&(!b.equivalent_to_input, &b.connection))
    });

    let mut separations = Vec::new();
    for (i, j) in (0..classes.len()).tuple_combinations() {
        let (a, b) = (&classes[i].representative, &classes[j].representative);
        let out = conjugacy_test(&oracle, g, a, &Prepared::new(gamma, a)?, b, &Prepared::new(gamma, b)?);
        if out.conjugator.is_some() {
            return Err(Error::Inconsistent("representatives are conjugate".into()));
        }
        separations.push(Separation {
            first: i,
            second: j,
            scanned: out.scanned,
            matched: out.matched,
        });
    }
    Ok(GBase {
        k,
        route,
        classes,
        separations,
        candidates: total,
        note,
    })
}

/// Conjugacy by running through the elements of `K`; a cross-check of the
/// automorphism scan for small `K`.
pub fn conjugate_by_enumeration(
    k: &PermGroup,
    g: &IndexedGroup,
    h1: &RegSubgroup,
    h2: &RegSubgroup,
    cap: u128,
) -> Result<Option<Perm>> {
    for c in k.elements(cap)? {
        let ci = c.inverse();
        if h1
            .generators()
            .iter()
            .all(|p| h2.contains(g, &ci.then(p).then(&c)))
        {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// One connection set of a class-union sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    /// Indices into `g.classes()`.
    pub classes: Vec<usize>,
    pub size: usize,
    pub inverse_closed: bool,
    pub b: usize,
    pub k_order: String,
    pub strategy: String,
    /// The `G_l -> G_r` conjugator was found and checked on generators.
    pub g_l_conjugator_valid: bool,
}

/// Every nonempty proper union of nontrivial classes of a simple group,
/// or only those that are not inverse-closed.
pub fn sweep_class_unions(g: &IndexedGroup, directed_only: bool, budget: &Budget) -> Result<Vec<SweepEntry>> {
    if !g.is_simple() {
        return Err(Error::UnsupportedGroup(format!("{} is not simple", g.name())));
    }
    let nontrivial: Vec<usize> = (0..g.classes().len())
        .filter(|&c| g.classes()[c].representative() != 0)
        .collect();
    let c = nontrivial.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << c) - 1 {
        let chosen: Vec<usize> = (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| nontrivial[i]).collect();
        let mut x: Vec<u32> = chosen.iter().flat_map(|&i| g.classes()[i].members.iter().copied()).collect();
        x.sort_unstable();
        let gamma = CayleyGraph::new(g, &x)?;
        if directed_only && gamma.is_inverse_closed() {
            continue;
        }
        let base = g_base(&gamma, budget)?;
        let gr = RegSubgroup::right_regular(g);
        let gl = RegSubgroup::left_regular(g);
        let g_l_conjugator_valid = base
            .classes
            .iter()
            .flat_map(|cls| cls.members.iter().map(move |m| (cls, m)))
            .find(|(_, m)| m.label == "G_l")
            .map(|(cls, m)| {
                // conjugator from G_l to the representative, which is G_r here
                cls.representative.same_group(g, &gr) && {
                    let ci = m.conjugator.inverse();
                    gl.generators()
                        .iter()
                        .all(|p| gr.contains(g, &ci.then(p).then(&m.conjugator)))
                }
            })
            .unwrap_or(false);
        out.push(SweepEntry {
            classes: chosen,
            size: x.len(),
            inverse_closed: gamma.is_inverse_closed(),
            b: base.b(),
            k_order: base.k.order().to_string(),
            strategy: base.k.strategy.name().to_string(),
            g_l_conjugator_valid,
        });
    }
    Ok(out)
}
