//! Seeded property suites over small groups.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atlas::{diagonal_subgroup, fgs_involution, inversion_perm, left_mult, GroupSpec, IndexedGroup};
use crate::cayley::CayleyGraph;
use crate::error::Result;
use crate::perm_core::{conjugator_from_isomorphism, Perm, PermGroup};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.into(),
            cases: 0,
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.cases > 0 && self.passed == self.cases
    }
}

fn cyclic(k: usize) -> GroupSpec {
    let c: Vec<u32> = (0..k as u32).collect();
    GroupSpec::Raw {
        degree: k,
        generators: vec![Perm::from_cycles(k, &[&c]).expect("cycle")],
    }
}

/// `q` acting on `orbits` copies of itself, each copy relabelled by a
/// random bijection onto its block of points; generators are the images of
/// `elems` (indices of `q`).
fn semiregular_copy(q: &IndexedGroup, elems: &[u32], layout: &[Vec<u32>]) -> Vec<Perm> {
    let k = q.order();
    let n = k * layout.len();
    elems
        .iter()
        .map(|&s| {
            let mut images = vec![0u32; n];
            for block in layout {
                for a in 0..k as u32 {
                    images[block[a as usize] as usize] = block[q.mult(a, s) as usize];
                }
            }
            Perm::from_images(images).expect("bijection")
        })
        .collect()
}

/// Semiregular pairs `K`, `M` on at most 120 points with an isomorphism
/// given by an automorphism of the abstract group; the conjugator must
/// realize it on every generator.
pub fn conjugator_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<IndexedGroup> = [
        cyclic(2),
        cyclic(5),
        cyclic(12),
        "sym:3".parse()?,
        "alt:4".parse()?,
        "sym:4".parse()?,
        "alt:5".parse()?,
    ]
    .iter()
    .map(IndexedGroup::build)
    .collect::<Result<_>>()?;
    let mut report = SuiteReport::new("conjugator");
    for case in 0..cases {
        let q = &pool[rng.gen_range(0..pool.len())];
        let k = q.order();
        let orbits = rng.gen_range(1..=(120 / k).min(6));
        let n = k * orbits;
        let layout = |rng: &mut ChaCha8Rng| -> Vec<Vec<u32>> {
            let mut pts: Vec<u32> = (0..n as u32).collect();
            pts.shuffle(rng);
            pts.chunks(k).map(|c| c.to_vec()).collect()
        };
        let aut = q.automorphisms();
        let alpha = rng.gen_range(0..aut.len());
        let gens = q.generators().to_vec();
        let moved: Vec<u32> = gens.iter().map(|&s| aut.apply(q, alpha, s)).collect();
        let kg = PermGroup::new(n, semiregular_copy(q, &gens, &layout(&mut rng)))?;
        let mg = PermGroup::new(n, semiregular_copy(q, &moved, &layout(&mut rng)))?;
        let images = mg.generators().to_vec();
        let ok = conjugator_from_isomorphism(&kg, &mg, &images)
            .map(|x| {
                kg.generators()
                    .iter()
                    .zip(&images)
                    .all(|(g, f)| g.conjugate_by(&x) == *f)
            })
            .unwrap_or(false);
        report.record(ok, || format!("case {case}: {} on {n} points", q.name()));
    }
    Ok(report)
}

/// Random unions of nontrivial classes: `G_l` acts by automorphisms, and
/// `sigma` does exactly when `X = X^-1`.
pub fn centrality_suite(seed: u64, per_group: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("centrality");
    for name in ["sym:5", "alt:5"] {
        let g = IndexedGroup::build(&name.parse()?)?;
        let classes: Vec<&[u32]> = g
            .classes()
            .iter()
            .filter(|c| c.representative() != 0)
            .map(|c| c.members.as_slice())
            .collect();
        let sigma = inversion_perm(&g);
        for case in 0..per_group {
            let mask = rng.gen_range(1u32..(1 << classes.len()));
            let mut x: Vec<u32> = (0..classes.len())
                .filter(|&i| mask >> i & 1 == 1)
                .flat_map(|i| classes[i].iter().copied())
                .collect();
            x.sort_unstable();
            let gamma = CayleyGraph::new(&g, &x)?;
            let left_ok = g
                .generators()
                .iter()
                .map(|&s| gamma.is_automorphism(&left_mult(&g, s)))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            let sigma_ok = gamma.is_automorphism(&sigma)? == gamma.is_inverse_closed();
            report.record(left_ok && sigma_ok, || format!("{name} case {case}"));
        }
    }
    Ok(report)
}

/// Involutions with `aut(G) = C(t) Inn(G)` exist.
pub fn involution_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("involution");
    for name in ["alt:5", "alt:6", "psl2:7", "psl2:11"] {
        let g = IndexedGroup::build(&name.parse()?)?;
        let ok = fgs_involution(&g).is_ok();
        report.record(ok, || name.to_string());
    }
    Ok(report)
}

/// Diagonal subgroups `{g_l (g^tau)_r}` fix a point, so are not semiregular.
pub fn diagonal_suite(seed: u64, per_group: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("diagonal");
    for name in ["alt:5", "psl2:7"] {
        let g = IndexedGroup::build(&name.parse()?)?;
        let aut = g.automorphisms();
        for _ in 0..per_group {
            let tau = rng.gen_range(0..aut.len());
            let ok = !diagonal_subgroup(&g, tau).is_semiregular();
            report.record(ok, || format!("{name} automorphism {tau}"));
        }
    }
    Ok(report)
}

pub fn all_suites(seed: u64) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        conjugator_suite(seed, 100)?,
        centrality_suite(seed, 20)?,
        involution_suite()?,
        diagonal_suite(seed, 20)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs() {
        assert!(conjugator_suite(1, 10).unwrap().ok());
        assert!(centrality_suite(1, 3).unwrap().ok());
        assert!(diagonal_suite(1, 3).unwrap().ok());
    }
}
