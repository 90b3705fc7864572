//! Regular subgroups `H_t = <t_l x_r> A_r` of `D(2, sym m)` built from even
//! involutions `t` and a fixed odd `x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::conjugacy::{conjugacy_test, Membership, Prepared};
use super::regular::RegSubgroup;
use crate::atlas::{inversion_perm, left_mult, left_right, right_mult, GroupSpec, IndexedGroup};
use crate::budget::Budget;
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

pub const FORMULA_SEED: u64 = 0x5eed_4a43;
const PARITY_SEED: u64 = 0x5eed_9a21;
const FORMULA_SAMPLES: usize = 100;
/// Odd elements checked per `H_t` when the parity check is sampled.
const PARITY_SAMPLES: usize = 64;
const EXHAUSTIVE_PARITY_MAX_M: usize = 6;

/// `t_l x_r`.
pub fn tau(g: &IndexedGroup, t: u32, x: u32) -> Perm {
    left_right(g, t, x)
}

/// `H_t` with `tau_t -> x_r` and `a_r -> a_r` for the generators of the socle.
pub fn ht_subgroup(g: &IndexedGroup, t: u32, x: u32) -> Result<RegSubgroup> {
    if t == 0 || g.element_order(t) != 2 || !g.in_socle(t) {
        return Err(Error::NotEvenInvolution);
    }
    if g.in_socle(x) {
        return Err(Error::NotOdd);
    }
    let socle_gens = g.subgroup_generators(g.socle());
    let mut gens = vec![tau(g, t, x)];
    gens.extend(socle_gens.iter().map(|&a| right_mult(g, a)));
    let mut images = vec![x];
    images.extend_from_slice(&socle_gens);
    let group = PermGroup::new(g.order(), gens)?;
    RegSubgroup::new(g, group, images, &format!("H_t[{}]", g.element(t)))
}

/// No element `t_l g_r` with `g` odd fixes a point: `t y g = y` never holds.
fn parity_invariant(g: &IndexedGroup, t: u32, odd: &[u32]) -> bool {
    let n = g.order() as u32;
    odd.iter()
        .all(|&h| (0..n).all(|y| g.mult(g.mult(t, y), h) != y))
}

#[derive(Clone, Debug, Serialize)]
pub struct HtReport {
    pub t: String,
    pub cycle_type: Vec<usize>,
    pub order: u128,
    pub regular: bool,
    /// The parity map is an isomorphism onto `sym m`.
    pub witness: bool,
    pub parity_invariant: bool,
    pub parity_exhaustive: bool,
    pub distinct_from_g_r: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub first: String,
    pub second: String,
    pub conjugate: bool,
    pub automorphisms_scanned: usize,
    pub connection_matches: usize,
    /// Expected from the algebra: conjugate iff `t` and `t'` are related by
    /// an automorphism of `G`, never when one side is `G_r`.
    pub predicted_conjugate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaCheck {
    pub samples: usize,
    /// `(tau_t)^k` equals `(u^-1 t u)_l (z^-1 x z)_r` for `e = 0` and
    /// `(u^-1 x u)_l (z^-1 t z)_r` for `e = 1`.
    pub matches: usize,
    /// Matches of the form `(u t u^-1)_l (z^-1 x z)_r` among the `e = 0` samples.
    pub alternative_form_matches: usize,
    pub alternative_form_samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section4Report {
    pub m: usize,
    pub x: String,
    /// Size of the connection set used for the conjugacy scan.
    pub connection_size: usize,
    pub subgroups: Vec<HtReport>,
    /// `tau_y` lies in `H_t` only for `y = t`.
    pub distinct_subgroups: bool,
    pub pairs: Vec<PairReport>,
    pub formula: FormulaCheck,
    /// Observed `|aut(Γ)|` for the transposition graph, computed for `m <= 6`.
    pub graph_aut_order: Option<String>,
    pub count: usize,
    pub bound: usize,
    pub passed: bool,
}

/// Builds `H_t` for one `t` per class of involutions in `alt m`, checks
/// regularity and the parity witness, and tests pairwise conjugacy in
/// `D(2, sym m)` by scanning `aut(G)`.
pub fn verify_section4(m: usize, budget: &Budget) -> Result<Section4Report> {
    if !(5..=8).contains(&m) {
        return Err(Error::UnsupportedGroup(format!("section 4 check needs 5 <= m <= 8, got {m}")));
    }
    let deadline = budget.deadline();
    let g = IndexedGroup::build(&GroupSpec::Sym(m))?;
    let n = g.order();
    let x = g
        .index_of(&Perm::from_cycles(m, &[&[0, 1]])?)
        .expect("transposition");
    let ts: Vec<u32> = g
        .classes()
        .iter()
        .filter(|c| c.element_order == 2 && g.in_socle(c.representative()))
        .map(|c| {
            *c.members
                .iter()
                .min_by_key(|&&t| g.element(t).cycles())
                .expect("nonempty class")
        })
        .collect();

    let odd: Vec<u32> = (0..n as u32).filter(|&h| !g.in_socle(h)).collect();
    let exhaustive = m <= EXHAUSTIVE_PARITY_MAX_M;
    let parity_sample: Vec<u32> = if exhaustive {
        odd.clone()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PARITY_SEED);
        (0..PARITY_SAMPLES).map(|_| odd[rng.gen_range(0..odd.len())]).collect()
    };

    let gr = RegSubgroup::right_regular(&g);
    let mut hts = Vec::new();
    let mut reports = Vec::new();
    for &t in &ts {
        deadline.check("section 4 subgroups")?;
        let h = ht_subgroup(&g, t, x)?;
        let tau_t = tau(&g, t, x);
        reports.push(HtReport {
            t: g.element(t).to_string(),
            cycle_type: g.element(t).cycle_type(),
            order: h.group.order(),
            regular: h.group.is_regular(),
            witness: true,
            parity_invariant: parity_invariant(&g, t, &parity_sample),
            parity_exhaustive: exhaustive,
            distinct_from_g_r: !gr.contains(&g, &tau_t),
        });
        hts.push((t, h));
    }
    let distinct_subgroups = hts.iter().all(|(t, h)| {
        ts.iter()
            .filter(|&&y| y != *t)
            .all(|&y| !h.contains(&g, &tau(&g, y, x)))
    });

    // transpositions closed under aut(G); for m != 6 just the transpositions
    let aut = g.automorphisms();
    let mut conn: Vec<u32> = (0..aut.len()).map(|i| aut.apply(&g, i, x)).collect();
    conn = g.normal_subset_closure(&conn);
    let gamma = CayleyGraph::new(&g, &conn)?;

    let mut subs: Vec<(Option<u32>, &RegSubgroup)> = vec![(None, &gr)];
    subs.extend(hts.iter().map(|(t, h)| (Some(*t), h)));
    let prepared: Vec<Prepared> = subs
        .iter()
        .map(|(_, h)| Prepared::new(&gamma, h))
        .collect::<Result<_>>()?;
    let aut_orbit_of = |t: u32| -> Vec<u32> {
        let mut o: Vec<u32> = (0..aut.len()).map(|i| aut.apply(&g, i, t)).collect();
        o.sort_unstable();
        o.dedup();
        o
    };
    let mut pairs = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            deadline.check("section 4 conjugacy")?;
            let out = conjugacy_test(&Membership::D2, &g, subs[i].1, &prepared[i], subs[j].1, &prepared[j]);
            let predicted = match (subs[i].0, subs[j].0) {
                (Some(a), Some(b)) => aut_orbit_of(a).binary_search(&b).is_ok(),
                _ => false,
            };
            pairs.push(PairReport {
                first: subs[i].1.label.clone(),
                second: subs[j].1.label.clone(),
                conjugate: out.conjugator.is_some(),
                automorphisms_scanned: out.scanned,
                connection_matches: out.matched,
                predicted_conjugate: predicted,
            });
        }
    }

    let formula = formula_check(&g, ts[0], x);
    let graph_aut_order = if m <= 6 {
        let tg = crate::cayley::transposition_graph(&g)?;
        Some(crate::autgroup::aut_group(&tg, budget)?.order().to_string())
    } else {
        None
    };

    let mut conjugate = vec![vec![false; subs.len()]; subs.len()];
    let s = subs.len();
    let index_pairs = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j)));
    for ((i, j), p) in index_pairs.zip(&pairs) {
        conjugate[i][j] = p.conjugate;
    }
    let count = (1..subs.len())
        .filter(|&j| (0..j).all(|i| !conjugate[i][j]))
        .count();
    let bound = m / 4;
    let passed = reports
        .iter()
        .all(|r| r.order == n as u128 && r.regular && r.witness && r.parity_invariant && r.distinct_from_g_r)
        && distinct_subgroups
        && pairs.iter().all(|p| p.conjugate == p.predicted_conjugate)
        && formula.matches == formula.samples
        && count >= bound;
    Ok(Section4Report {
        m,
        x: g.element(x).to_string(),
        connection_size: conn.len(),
        subgroups: reports,
        distinct_subgroups,
        pairs,
        formula,
        graph_aut_order,
        count,
        bound,
        passed,
    })
}

/// `(tau_t)^k` for `k = sigma^e u_l z_r` against the closed forms.
pub fn formula_check(g: &IndexedGroup, t: u32, x: u32) -> FormulaCheck {
    let n = g.order() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(FORMULA_SEED);
    let sigma = inversion_perm(g);
    let tau_t = tau(g, t, x);
    let conj = |a: u32, b: u32| g.conj(a, b);
    let mut check = FormulaCheck {
        samples: FORMULA_SAMPLES,
        matches: 0,
        alternative_form_matches: 0,
        alternative_form_samples: 0,
    };
    for _ in 0..FORMULA_SAMPLES {
        let u = rng.gen_range(0..n);
        let z = rng.gen_range(0..n);
        let e = rng.gen_bool(0.5);
        let mut k = left_mult(g, u).then(&right_mult(g, z));
        if e {
            k = sigma.then(&k);
        }
        let got = k.inverse().then(&tau_t).then(&k);
        let expected = if e {
            left_right(g, conj(x, u), conj(t, z))
        } else {
            left_right(g, conj(t, u), conj(x, z))
        };
        if got == expected {
            check.matches += 1;
        }
        if !e {
            check.alternative_form_samples += 1;
            if got == left_right(g, g.mult(g.mult(u, t), g.inv(u)), conj(x, z)) {
                check.alternative_form_matches += 1;
            }
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ht_preconditions() {
        let g = IndexedGroup::build(&GroupSpec::Sym(5)).unwrap();
        let x = g.index_of(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()).unwrap();
        let t = g.index_of(&Perm::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()).unwrap();
        assert!(matches!(ht_subgroup(&g, 0, x), Err(Error::NotEvenInvolution)));
        assert!(matches!(ht_subgroup(&g, x, x), Err(Error::NotEvenInvolution)));
        assert!(matches!(ht_subgroup(&g, t, t), Err(Error::NotOdd)));
        let h = ht_subgroup(&g, t, x).unwrap();
        assert!(h.group.is_regular());
        assert_eq!(h.group.order(), 120);
        assert_eq!(h.label, "H_t[(1 2)(3 4)]");
    }

    #[test]
    fn m5_report() {
        let r = verify_section4(5, &Budget::default()).unwrap();
        assert_eq!(r.subgroups.len(), 1);
        assert_eq!(r.count, 1);
        assert_eq!(r.bound, 1);
        assert_eq!(r.formula.matches, 100);
        assert_eq!(r.graph_aut_order.as_deref(), Some("28800"));
        assert!(r.pairs.iter().all(|p| p.automorphisms_scanned == 120 && !p.conjugate));
        assert!(r.passed);
    }
}
