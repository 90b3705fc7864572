use rayon::prelude::*;

use super::regular::RegSubgroup;
use crate::atlas::IndexedGroup;
use crate::autgroup::AutResult;
use crate::cayley::{CayleyGraph, Representation};
use crate::error::Result;
use crate::perm_core::Perm;

/// Membership in the group conjugators must lie in.
#[derive(Clone, Copy, Debug)]
pub enum Membership<'a> {
    K(&'a AutResult),
    /// `D(2,G)`, decided from the decomposition `sigma^e phi w_r`.
    D2,
}

impl Membership<'_> {
    /// `map` is evaluated lazily so that failing candidates stay cheap.
    pub fn contains_map(&self, g: &IndexedGroup, map: &(dyn Fn(u32) -> u32 + Sync)) -> bool {
        let n = g.order();
        match self {
            Membership::K(k) => match Perm::from_images((0..n as u32).map(map).collect()) {
                Ok(p) => k.contains(&p),
                Err(_) => false,
            },
            Membership::D2 => d2_contains_lazy(g, map),
        }
    }

    pub fn contains(&self, g: &IndexedGroup, p: &Perm) -> bool {
        p.degree() == g.order() && self.contains_map(g, &|x| p.apply(x))
    }
}

/// `k = sigma^e phi w_r`: with `q(x) = k(sigma^e x) = phi(x) w`, read `phi`
/// off the generators, look it up, then compare along the word tree and
/// stop at the first mismatch.
fn d2_contains_lazy(g: &IndexedGroup, k: &(dyn Fn(u32) -> u32 + Sync)) -> bool {
    let aut = g.automorphisms();
    let n = g.order();
    for e in 0..2u8 {
        let q = |x: u32| if e == 1 { k(g.inv(x)) } else { k(x) };
        let w = q(0);
        let wi = g.inv(w);
        let imgs: Vec<u32> = g.generators().iter().map(|&s| g.mult(q(s), wi)).collect();
        let Some(_) = aut.index_of(&imgs) else {
            continue;
        };
        let tree = g.word_tree();
        let mut table = vec![0u32; n];
        let mut hit = vec![false; n];
        hit[0] = true;
        let ok = g.word_order().iter().skip(1).all(|&x| {
            let (p, j) = tree[x as usize];
            let y = g.mult(table[p as usize], imgs[j as usize]);
            table[x as usize] = y;
            let fresh = !std::mem::replace(&mut hit[y as usize], true);
            fresh && g.mult(y, w) == q(x)
        });
        if ok {
            return true;
        }
    }
    false
}

/// Associated representation plus the inverse of `f_0`.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub rep: Representation,
    pub f0_inv: Vec<u32>,
}

impl Prepared {
    pub fn new(gamma: &CayleyGraph, h: &RegSubgroup) -> Result<Prepared> {
        let rep = gamma.associated_representation(&h.group, &h.images)?;
        let f0_inv = h.f0_inverse();
        Ok(Prepared { rep, f0_inv })
    }

    pub fn connection(&self) -> &[u32] {
        &self.rep.connection
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyOutcome {
    pub conjugator: Option<Perm>,
    /// Automorphisms of `G` examined.
    pub scanned: usize,
    /// Of those, how many carried `X_1` onto `X_2`.
    pub matched: usize,
}

/// A conjugator in the oracle's group taking `h1` to `h2`, searched over
/// the automorphisms `phi` of `G` with `X_1^phi = X_2` as
/// `f_{0,1} phi f_{0,2}^-1`.
pub fn are_conjugate_regular(
    oracle: &Membership,
    gamma: &CayleyGraph,
    h1: &RegSubgroup,
    h2: &RegSubgroup,
) -> Result<Option<Perm>> {
    let p1 = Prepared::new(gamma, h1)?;
    let p2 = Prepared::new(gamma, h2)?;
    Ok(conjugacy_test(oracle, gamma.group(), h1, &p1, h2, &p2).conjugator)
}

pub fn conjugacy_test(
    oracle: &Membership,
    g: &IndexedGroup,
    h1: &RegSubgroup,
    p1: &Prepared,
    h2: &RegSubgroup,
    p2: &Prepared,
) -> ConjugacyOutcome {
    let aut = g.automorphisms();
    let n = g.order();
    let x1 = p1.connection();
    let mut target = vec![false; n];
    for &x in p2.connection() {
        target[x as usize] = true;
    }
    let f01 = h1.f0();
    let f02_inv = &p2.f0_inv;
    let matching: Vec<usize> = (0..aut.len())
        .into_par_iter()
        .filter(|&i| x1.len() == p2.connection().len() && x1.iter().all(|&x| target[aut.apply(g, i, x) as usize]))
        .collect();
    let found = matching.par_iter().find_first(|&&i| {
        let map = |a: u32| f02_inv[aut.apply(g, i, f01[a as usize]) as usize];
        oracle.contains_map(g, &map)
    });
    let conjugator = found.and_then(|&i| {
        let table = aut.table(g, i);
        let images = (0..n).map(|a| f02_inv[table[f01[a] as usize] as usize]).collect();
        let c = Perm::from_images(images).ok()?;
        let cinv = c.inverse();
        let ok = h1
            .generators()
            .iter()
            .all(|p| h2.contains(g, &cinv.then(p).then(&c)));
        ok.then_some(c)
    });
    ConjugacyOutcome {
        conjugator,
        scanned: aut.len(),
        matched: matching.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{d2_group, inversion_perm};
    use crate::autgroup::aut_group;
    use crate::budget::Budget;
    use crate::cayley::{named_set, NamedSet};

    #[test]
    fn right_regular_with_itself_and_left() {
        let g = IndexedGroup::build(&"alt:5".parse().unwrap()).unwrap();
        let x = named_set(&g, NamedSet::Involutions);
        let gamma = CayleyGraph::new(&g, &x).unwrap();
        let k = aut_group(&gamma, &Budget::default()).unwrap();
        let oracle = Membership::K(&k);
        let gr = RegSubgroup::right_regular(&g);
        let gl = RegSubgroup::left_regular(&g);
        let id = are_conjugate_regular(&oracle, &gamma, &gr, &gr).unwrap().unwrap();
        assert!(id.is_identity());
        let c = are_conjugate_regular(&oracle, &gamma, &gl, &gr).unwrap().unwrap();
        assert!(k.contains(&c));
        assert_eq!(c, inversion_perm(&g));
        assert!(are_conjugate_regular(&Membership::D2, &gamma, &gl, &gr).unwrap().is_some());
    }

    #[test]
    fn lazy_d2_membership_matches_chain() {
        let g = IndexedGroup::build(&"sym:4".parse().unwrap()).unwrap();
        let d2 = d2_group(&g);
        for p in d2.elements(10_000).unwrap().step_by(7) {
            assert!(Membership::D2.contains(&g, &p));
        }
        let mut img: Vec<u32> = (0..24).collect();
        img.swap(5, 6);
        let bad = Perm::from_images(img).unwrap();
        assert!(!Membership::D2.contains(&g, &bad));
    }
}
