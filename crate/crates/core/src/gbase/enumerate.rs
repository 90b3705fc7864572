use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::regular::{group_pair_profile, pair_profile, RegSubgroup};
use crate::atlas::IndexedGroup;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

/// Generator positions and the generators found from one starting image.
type Found = (Vec<usize>, Vec<Perm>);

/// Statistics of a closure enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub elements: u64,
    pub fixed_point_free: u64,
    pub tuples_tested: u64,
}

/// All regular subgroups of `k` isomorphic to `G`, by closing generator
/// tuples of fixed-point-free elements whose orders and pairwise word
/// orders match the canonical generators of `G`.
pub fn reg_enumerate_small(
    k: &PermGroup,
    g: &IndexedGroup,
    budget: &Budget,
) -> Result<(Vec<RegSubgroup>, EnumerationStats)> {
    let n = g.order();
    if k.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: k.degree(),
        });
    }
    if k.order() > budget.element_cap as u128 {
        return Err(Error::CapExceeded {
            cap: budget.element_cap as u128,
        });
    }
    let deadline = budget.deadline();
    let all: Vec<Perm> = k.elements(budget.element_cap as u128)?.collect();
    let fpf: Vec<Perm> = all
        .iter()
        .filter(|p| !p.is_identity() && !p.has_fixed_point())
        .cloned()
        .collect();
    let gens = g.generators();
    let orders: Vec<u64> = fpf.iter().map(|p| p.order()).collect();
    let by_position: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..fpf.len()).filter(|&i| orders[i] == g.element_order(s)).collect())
        .collect();
    let profiles: Vec<Vec<[u64; 5]>> = (0..gens.len())
        .map(|j| (0..j).map(|i| group_pair_profile(g, gens[i], gens[j])).collect())
        .collect();
    let tested = AtomicU64::new(0);
    let cap = budget.seed_pair_cap;

    let ctx = Ctx {
        g,
        fpf: &fpf,
        by_position: &by_position,
        profiles: &profiles,
        tested: &tested,
        cap,
    };
    let per_first: Vec<Result<Vec<Found>>> = by_position[0]
        .par_iter()
        .map(|&a| {
            deadline.check("regular subgroup enumeration")?;
            let mut found: Vec<(Vec<usize>, Vec<Perm>)> = Vec::new();
            let mut chosen = vec![a];
            ctx.extend(&mut chosen, &mut found)?;
            Ok(found)
        })
        .collect();

    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut out = Vec::new();
    for r in per_first {
        for (tuple, elements) in r? {
            if !seen.insert(elements) {
                continue;
            }
            let group = PermGroup::new(n, tuple.iter().map(|&i| fpf[i].clone()).collect())?;
            out.push(RegSubgroup::new(g, group, gens.to_vec(), "closure")?);
        }
    }
    let stats = EnumerationStats {
        elements: all.len() as u64,
        fixed_point_free: fpf.len() as u64,
        tuples_tested: tested.load(Ordering::Relaxed),
    };
    Ok((out, stats))
}

struct Ctx<'a> {
    g: &'a IndexedGroup,
    fpf: &'a [Perm],
    by_position: &'a [Vec<usize>],
    profiles: &'a [Vec<[u64; 5]>],
    tested: &'a AtomicU64,
    cap: u64,
}

impl Ctx<'_> {
    fn extend(&self, chosen: &mut Vec<usize>, found: &mut Vec<(Vec<usize>, Vec<Perm>)>) -> Result<()> {
        let j = chosen.len();
        if j == self.by_position.len() {
            if self.tested.fetch_add(1, Ordering::Relaxed) >= self.cap {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} generator tuples",
                    self.cap
                )));
            }
            let covered = found.iter().any(|(_, els)| {
                chosen
                    .iter()
                    .all(|&c| els.binary_search(&self.fpf[c]).is_ok())
            });
            if covered {
                return Ok(());
            }
            let seed: Vec<&Perm> = chosen.iter().map(|&c| &self.fpf[c]).collect();
            if let Some(els) = regular_closure(&seed, self.g.order()) {
                let group = PermGroup::new(self.g.order(), seed.into_iter().cloned().collect())?;
                if RegSubgroup::new(self.g, group, self.g.generators().to_vec(), "closure").is_ok() {
                    found.push((chosen.clone(), els));
                }
            }
            return Ok(());
        }
        for &c in &self.by_position[j] {
            let fits = chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| pair_profile(&self.fpf[a], &self.fpf[c]) == self.profiles[j][i]);
            if !fits {
                continue;
            }
            chosen.push(c);
            self.extend(chosen, found)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// Sorted elements of `<seed>` if it has exactly `n` elements, none of
/// which except the identity fixes a point.
fn regular_closure(seed: &[&Perm], n: usize) -> Option<Vec<Perm>> {
    let degree = seed[0].degree();
    let id = Perm::identity(degree);
    let mut set: HashSet<Perm> = HashSet::new();
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in seed {
            let y = x.then(s);
            if set.contains(&y) {
                continue;
            }
            if !y.is_identity() && y.has_fixed_point() {
                return None;
            }
            set.insert(y.clone());
            if set.len() > n {
                return None;
            }
            frontier.push(y);
        }
    }
    if set.len() != n {
        return None;
    }
    let mut v: Vec<Perm> = set.into_iter().collect();
    v.sort();
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::d2_group;

    #[test]
    fn sym3_in_d2() {
        let g = IndexedGroup::build(&"sym:3".parse().unwrap()).unwrap();
        let k = d2_group(&g);
        let (subs, stats) = reg_enumerate_small(&k, &g, &Budget::default()).unwrap();
        assert!(stats.fixed_point_free > 0);
        let gr = RegSubgroup::right_regular(&g);
        let gl = RegSubgroup::left_regular(&g);
        assert!(subs.iter().any(|h| h.same_group(&g, &gr)));
        assert!(subs.iter().any(|h| h.same_group(&g, &gl)));
        for h in &subs {
            assert!(h.group.is_regular());
            for p in h.generators() {
                assert!(k.contains(p).unwrap());
            }
        }
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i + 1..] {
                assert!(!a.same_group(&g, b));
            }
        }
    }

    #[test]
    fn tuple_budget() {
        let g = IndexedGroup::build(&"sym:3".parse().unwrap()).unwrap();
        let k = d2_group(&g);
        let tight = Budget {
            seed_pair_cap: 1,
            ..Budget::default()
        };
        assert!(matches!(
            reg_enumerate_small(&k, &g, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
