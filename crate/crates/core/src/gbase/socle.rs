use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::regular::{find_isomorphism, RegSubgroup};
use crate::atlas::{right_mult, IndexedGroup};
use crate::autgroup::WreathCertificate;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::perm_core::{BlockPartition, Perm, PermGroup};

/// Largest number of `S_r`-orbits handled.
pub const MAX_ORBITS: usize = 6;

/// `G` as the disjoint union of the cosets `c_j S` of a normal subgroup.
struct Frame<'a> {
    g: &'a IndexedGroup,
    s: Vec<u32>,
    cosets: BlockPartition,
    reps: Vec<u32>,
}

impl<'a> Frame<'a> {
    fn new(g: &'a IndexedGroup, s: &[u32]) -> Result<Frame<'a>> {
        let mut s = s.to_vec();
        s.sort_unstable();
        if !g.is_normal_subset(&s) || g.subgroup_closure(&s).len() != s.len() {
            return Err(Error::Inconsistent("expected a normal subgroup".into()));
        }
        let cosets = g.right_cosets(&s);
        let reps = cosets.cells().iter().map(|c| c[0]).collect();
        Ok(Frame { g, s, cosets, reps })
    }

    fn m(&self) -> usize {
        self.reps.len()
    }

    /// `(j, s)` with `y = c_j s`.
    fn split(&self, y: u32) -> (usize, u32) {
        let j = self.cosets.cell_of(y);
        (j, self.g.mult(self.g.inv(self.reps[j]), y))
    }

    fn join(&self, j: usize, s: u32) -> u32 {
        self.g.mult(self.reps[j], s)
    }

    fn perm(&self, f: impl Fn(usize, u32) -> (usize, u32)) -> Perm {
        let images = (0..self.g.order() as u32)
            .map(|y| {
                let (j, s) = self.split(y);
                let (k, t) = f(j, s);
                self.join(k, t)
            })
            .collect();
        Perm::from_images(images).expect("orbit-wise bijection")
    }

    /// Left translations of each orbit by the generators of `S`.
    fn translations(&self) -> Vec<Perm> {
        let sgens = self.g.subgroup_generators(&self.s);
        let mut out = Vec::new();
        for j in 0..self.m() {
            for &t in &sgens {
                let ti = self.g.inv(t);
                out.push(self.perm(|k, s| if k == j { (k, self.g.mult(ti, s)) } else { (k, s) }));
            }
        }
        out
    }

    /// `c_j s -> c_j s^alpha` for generators `alpha` of `aut(S)`, and `|aut(S)|`.
    fn diagonal(&self) -> Result<(Vec<Perm>, usize)> {
        if self.m() == 1 {
            let aut = self.g.automorphisms();
            let gens = aut.generating_set(self.g).into_iter().map(|i| aut.vertex_perm(self.g, i)).collect();
            return Ok((gens, aut.len()));
        }
        let sg = IndexedGroup::build(&self.g.subgroup_spec(&self.s))?;
        let to_local: HashMap<u32, u32> = self
            .s
            .iter()
            .map(|&x| (x, sg.index_of(self.g.element(x)).expect("same elements")))
            .collect();
        let to_global: HashMap<u32, u32> = to_local.iter().map(|(&a, &b)| (b, a)).collect();
        let aut = sg.automorphisms();
        let gens = aut
            .generating_set(&sg)
            .into_iter()
            .map(|i| {
                let table = aut.table(&sg, i);
                self.perm(|j, s| (j, to_global[&table[to_local[&s] as usize]]))
            })
            .collect();
        Ok((gens, aut.len()))
    }

    fn orbit_perm(&self, pi: &[usize]) -> Perm {
        self.perm(|j, s| (pi[j], s))
    }

    /// Membership in `S_r`: `p(y) = y * p(0)` with `p(0)` in `S`.
    fn in_s_right(&self, p: &Perm) -> bool {
        let w = p.apply(0);
        self.s.binary_search(&w).is_ok() && (0..self.g.order() as u32).all(|y| p.apply(y) == self.g.mult(y, w))
    }

    fn normalizes(&self, p: &Perm) -> bool {
        let pi = p.inverse();
        self.g
            .subgroup_generators(&self.s)
            .iter()
            .all(|&t| self.in_s_right(&pi.then(&right_mult(self.g, t)).then(p)))
    }

    fn build(&self, allowed: &[Vec<usize>]) -> Result<PermGroup> {
        let n = self.g.order();
        let mut gens = self.translations();
        let (diag, aut_order) = self.diagonal()?;
        gens.extend(diag);
        gens.extend(allowed.iter().filter(|pi| pi.iter().enumerate().any(|(i, &j)| i != j)).map(|pi| self.orbit_perm(pi)));
        if let Some(bad) = gens.iter().position(|p| !self.normalizes(p)) {
            return Err(Error::Inconsistent(format!("generator {bad} does not normalize S_r")));
        }
        let group = PermGroup::new(n, gens)?;
        let expected = (self.s.len() as u128).pow(self.m() as u32) * allowed.len() as u128 * aut_order as u128;
        if group.order() != expected {
            return Err(Error::Inconsistent(format!(
                "normalizer order {} differs from {expected}",
                group.order()
            )));
        }
        Ok(group)
    }
}

fn orbit_permutations(m: usize) -> Result<Vec<Vec<usize>>> {
    if m > MAX_ORBITS {
        return Err(Error::BudgetExceeded(format!("{m} orbits, at most {MAX_ORBITS} supported")));
    }
    Ok((0..m).permutations(m).collect())
}

/// `N_sym(G)(S_r)` for a normal subgroup `S` of `G`, of order
/// `|S|^m m! |aut(S)|` with `m` the index.
pub fn normalizer_semiregular(g: &IndexedGroup, s: &[u32]) -> Result<PermGroup> {
    let frame = Frame::new(g, s)?;
    frame.build(&orbit_permutations(frame.m())?)
}

/// `N_sym(G)(S_r) ∩ K` for `K` the wreath product of the certificate,
/// whose blocks are unions of `S`-cosets.
pub fn normalizer_in_wreath(g: &IndexedGroup, s: &[u32], w: &WreathCertificate) -> Result<PermGroup> {
    let frame = Frame::new(g, s)?;
    let allowed: Vec<Vec<usize>> = orbit_permutations(frame.m())?
        .into_iter()
        .filter(|pi| w.contains(&frame.orbit_perm(pi)))
        .collect();
    frame.build(&allowed)
}

/// Counters of the socle route.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SocleStats {
    pub quotient_order: u64,
    pub complements_tested: u64,
    pub regular: u64,
}

/// Regular subgroups of `m_group` containing `S_r` (`S` the socle of `G`)
/// and isomorphic to `G`, from the subgroups of `M/S_r` meeting every
/// `S_r`-orbit once at `0`.
pub fn reg_via_socle(m_group: &PermGroup, g: &IndexedGroup, budget: &Budget) -> Result<(Vec<RegSubgroup>, SocleStats)> {
    let frame = Frame::new(g, g.socle())?;
    let n = g.order();
    let m = frame.m();
    let deadline = budget.deadline();
    let based = PermGroup::with_base(n, m_group.generators().to_vec(), vec![0])?;
    let quotient_order = based.order() / frame.s.len() as u128;
    if quotient_order > budget.element_cap as u128 {
        return Err(Error::CapExceeded {
            cap: budget.element_cap as u128,
        });
    }
    let stab_gens: Vec<Perm> = based
        .strong_generators()
        .iter()
        .filter(|p| p.apply(0) == 0)
        .cloned()
        .collect();
    let stab = PermGroup::new(n, stab_gens)?;
    let stab_elements: Vec<Perm> = stab.elements(budget.element_cap as u128)?.collect();
    let mut reps: Vec<Perm> = Vec::new();
    let mut cell: Vec<usize> = Vec::new();
    for (j, &c) in frame.reps.iter().enumerate() {
        let Some(u) = based.transversal_element(0, c) else {
            continue;
        };
        for z in &stab_elements {
            reps.push(z.then(&u));
            cell.push(j);
        }
    }
    let index: HashMap<Perm, usize> = reps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let canonical = |p: &Perm| -> usize {
        let y = p.apply(0);
        let (j, s) = frame.split(y);
        let _ = j;
        let fix = g.inv(s);
        let q = Perm::from_images((0..n as u32).map(|a| g.mult(p.apply(a), fix)).collect()).expect("bijection");
        index[&q]
    };
    let mult = |a: usize, b: usize| canonical(&reps[a].then(&reps[b]));
    let identity = canonical(&Perm::identity(n));

    let mut profile: Vec<u64> = frame
        .reps
        .iter()
        .map(|&c| {
            let mut k = 1;
            let mut x = c;
            while !g.in_socle(x) {
                x = g.mult(x, c);
                k += 1;
            }
            k
        })
        .collect();
    profile.sort_unstable();

    let mut stats = SocleStats {
        quotient_order: quotient_order as u64,
        ..SocleStats::default()
    };
    let mut subgroups: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(gens) = stack.pop() {
        deadline.check("socle route")?;
        let Some(q) = quotient_closure(&gens, identity, m, &cell, &mult) else {
            continue;
        };
        if q.len() == m {
            let mut orders: Vec<u64> = q
                .iter()
                .map(|&x| {
                    let mut k = 1;
                    let mut y = x;
                    while y != identity {
                        y = mult(y, x);
                        k += 1;
                    }
                    k
                })
                .collect();
            orders.sort_unstable();
            if orders == profile {
                subgroups.insert(q);
            }
            continue;
        }
        let covered: Vec<bool> = (0..m).map(|j| q.iter().any(|&x| cell[x] == j)).collect();
        let j = covered.iter().position(|&c| !c).expect("incomplete");
        for r in (0..reps.len()).filter(|&r| cell[r] == j) {
            let mut next = gens.clone();
            next.push(r);
            stack.push(next);
        }
    }

    let sgens: Vec<Perm> = g
        .subgroup_generators(&frame.s)
        .into_iter()
        .map(|t| right_mult(g, t))
        .collect();
    let mut out: Vec<RegSubgroup> = Vec::new();
    for q in &subgroups {
        stats.complements_tested += 1;
        let mut gens = sgens.clone();
        gens.extend(q.iter().filter(|&&x| x != identity).map(|&x| reps[x].clone()));
        let h = PermGroup::new(n, gens)?;
        if h.order() != n as u128 || !h.is_regular() {
            continue;
        }
        stats.regular += 1;
        if let Some(r) = find_isomorphism(g, &h, "socle")? {
            if !out.iter().any(|o| o.same_group(g, &r)) {
                out.push(r);
            }
        }
    }
    Ok((out, stats))
}

/// Sorted closure in the quotient, or `None` once two elements send `0`
/// into the same `S_r`-orbit or the size passes `m`.
fn quotient_closure(
    gens: &[usize],
    identity: usize,
    m: usize,
    cell: &[usize],
    mult: &impl Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let mut set = vec![identity];
    let mut used = vec![false; m];
    used[cell[identity]] = true;
    let mut i = 0;
    while i < set.len() {
        for &r in gens {
            let y = mult(set[i], r);
            if set.contains(&y) {
                continue;
            }
            if std::mem::replace(&mut used[cell[y]], true) {
                return None;
            }
            set.push(y);
        }
        i += 1;
    }
    set.sort_unstable();
    Some(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::aut_group;
    use crate::cayley::{named_set, CayleyGraph, NamedSet};

    #[test]
    fn normalizer_of_alt5_in_sym5() {
        let g = IndexedGroup::build(&"sym:5".parse().unwrap()).unwrap();
        let n = normalizer_semiregular(&g, g.socle()).unwrap();
        assert_eq!(n.order(), 864_000);
        let whole: Vec<u32> = (0..120).collect();
        assert_eq!(normalizer_semiregular(&g, &whole).unwrap().order(), 120 * 120);
    }

    #[test]
    fn socle_route_for_odd_permutations() {
        let g = IndexedGroup::build(&"sym:5".parse().unwrap()).unwrap();
        let gamma = CayleyGraph::new(&g, &named_set(&g, NamedSet::Odd)).unwrap();
        let k = aut_group(&gamma, &Budget::default()).unwrap();
        let w = k.wreath().unwrap();
        let mgroup = normalizer_in_wreath(&g, g.socle(), w).unwrap();
        assert_eq!(mgroup.order(), 864_000);
        let (subs, stats) = reg_via_socle(&mgroup, &g, &Budget::default()).unwrap();
        assert_eq!(stats.quotient_order, 14_400);
        let gr = RegSubgroup::right_regular(&g);
        assert!(subs.iter().any(|h| h.same_group(&g, &gr)));
        for h in &subs {
            assert!(h.generators().iter().all(|p| k.contains(p)));
        }
    }
}
