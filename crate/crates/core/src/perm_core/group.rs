use std::collections::HashSet;
use std::sync::OnceLock;

use super::chain::{Chain, ElementIter};
use super::partition::BlockPartition;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A permutation group given by generators, with a stabilizer chain built on first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    base_prefix: Vec<u32>,
    chain: OnceLock<Chain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_prefix: self.base_prefix.clone(),
            chain,
        }
    }
}

impl PermGroup {
    /// Group generated by `generators` on `degree` points. The chain is built lazily.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            base_prefix: Vec::new(),
            chain: OnceLock::new(),
        })
    }

    /// Like [`PermGroup::new`] but the chain's base starts with `prefix`.
    pub fn with_base(degree: usize, generators: Vec<Perm>, prefix: Vec<u32>) -> Result<Self> {
        let mut g = PermGroup::new(degree, generators)?;
        g.base_prefix = prefix;
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &Chain {
        self.chain
            .get_or_init(|| Chain::build(self.degree, &self.generators, &self.base_prefix))
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain().base()
    }

    /// Sizes of the basic orbits along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels().iter().map(|l| l.orbit.len()).collect()
    }

    /// Orbit of the `level`-th base point under the pointwise stabilizer of the earlier ones.
    pub fn basic_orbit(&self, level: usize) -> &[u32] {
        &self.chain().levels()[level].orbit
    }

    /// The element of the stored transversal taking the `level`-th base
    /// point to `point`, if `point` lies in that basic orbit.
    pub fn transversal_element(&self, level: usize, point: u32) -> Option<Perm> {
        let chain = self.chain();
        (level < chain.levels().len() && chain.in_orbit(level, point))
            .then(|| chain.transversal(level, point))
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.chain().strong_generators()
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    /// Every element exactly once, ordered lexicographically by transversal indices.
    pub fn elements(&self, cap: u128) -> Result<impl Iterator<Item = Perm>> {
        if self.order() > cap {
            return Err(Error::CapExceeded { cap });
        }
        Ok(ElementIter::new(self.chain()))
    }

    pub fn orbits(&self) -> BlockPartition {
        orbits(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().num_cells() <= 1
    }

    /// Semiregular iff every orbit has size equal to the group order.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits()
            .cells()
            .iter()
            .all(|c| c.len() as u128 == order)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.is_semiregular()
    }

    /// True iff every generator maps each cell onto a cell.
    pub fn is_block_partition(&self, part: &BlockPartition) -> Result<bool> {
        if part.degree() != self.degree {
            return Err(Error::BadPartition);
        }
        Ok(self
            .generators
            .iter()
            .all(|g| part.is_preserved_by(g)))
    }
}

/// Orbits of the group generated by `generators` on `{0..n-1}`.
pub fn orbits(generators: &[Perm], n: usize) -> BlockPartition {
    let mut cell_of = vec![u32::MAX; n];
    let mut cells: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if cell_of[start] != u32::MAX {
            continue;
        }
        let id = cells.len() as u32;
        let mut cell = vec![start as u32];
        cell_of[start] = id;
        let mut i = 0;
        while i < cell.len() {
            let p = cell[i];
            for g in generators {
                let q = g.apply(p);
                if cell_of[q as usize] == u32::MAX {
                    cell_of[q as usize] = id;
                    cell.push(q);
                }
            }
            i += 1;
        }
        cell.sort_unstable();
        cells.push(cell);
    }
    BlockPartition::from_cells(n, cells).expect("orbits partition the points")
}

/// All products of `seed`, or `CapExceeded` once the partial closure passes `cap`.
pub fn subgroup_closure(degree: usize, seed: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for s in seed {
            let p = out[i].then(s);
            if seen.insert(p.clone()) {
                out.push(p);
                if out.len() > cap {
                    return Err(Error::CapExceeded { cap: cap as u128 });
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn sym5() -> PermGroup {
        PermGroup::new(5, vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap()
    }

    fn alt5() -> PermGroup {
        PermGroup::new(5, vec![p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)]).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(sym5().order(), 120);
        assert_eq!(PermGroup::trivial(4).order(), 1);
        // closure oracle
        let closure = subgroup_closure(5, alt5().generators(), 1000).unwrap();
        assert_eq!(closure.len(), 60);
        assert_eq!(alt5().order(), 60);
    }

    #[test]
    fn mismatched_degree() {
        assert!(matches!(
            PermGroup::new(5, vec![p("(1 2)", 4)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn membership() {
        assert!(sym5().contains(&p("(1 2)", 5)).unwrap());
        assert!(!alt5().contains(&p("(1 2)", 5)).unwrap());
        assert!(alt5().contains(&Perm::identity(5)).unwrap());
        assert!(alt5().contains(&p("(1 2)", 4)).is_err());
    }

    #[test]
    fn enumeration() {
        let s3 = PermGroup::new(3, vec![p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap();
        let els: Vec<_> = s3.elements(10).unwrap().collect();
        assert_eq!(els.len(), 6);
        assert_eq!(els.iter().collect::<HashSet<_>>().len(), 6);
        assert!(matches!(sym5().elements(100), Err(Error::CapExceeded { .. })));
        let again: Vec<_> = s3.elements(10).unwrap().collect();
        assert_eq!(els, again);
    }

    #[test]
    fn orbit_examples() {
        let o = orbits(&[p("(1 2)", 4)], 4);
        assert_eq!(o.cells(), &[vec![0, 1], vec![2], vec![3]]);
        let o = orbits(&[], 3);
        assert_eq!(o.num_cells(), 3);
        let o = orbits(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)], 4);
        assert_eq!(o.cells(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn regularity() {
        let v4 = PermGroup::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        assert!(v4.is_regular());
        let t = PermGroup::new(3, vec![p("(1 2)", 3)]).unwrap();
        assert!(!t.is_semiregular());
        let c3 = PermGroup::new(3, vec![p("(1 2 3)", 3)]).unwrap();
        assert!(c3.is_regular());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(subgroup_closure(2, &[p("(1 2)", 2)], 10).unwrap().len(), 2);
        assert_eq!(
            subgroup_closure(3, &[p("(1 2 3)", 3), p("(1 2)", 3)], 10).unwrap().len(),
            6
        );
        assert_eq!(subgroup_closure(3, &[], 10).unwrap().len(), 1);
        assert!(subgroup_closure(5, sym5().generators(), 50).is_err());
    }

    #[test]
    fn block_examples() {
        let c4 = PermGroup::new(4, vec![p("(1 2 3 4)", 4)]).unwrap();
        let part = BlockPartition::from_cells(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(c4.is_block_partition(&part).unwrap());
        assert!(c4.is_block_partition(&BlockPartition::singletons(4)).unwrap());
        let s4 = PermGroup::new(4, vec![p("(1 2)", 4), p("(2 3)", 4), p("(3 4)", 4)]).unwrap();
        let part = BlockPartition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!s4.is_block_partition(&part).unwrap());
    }

    #[test]
    fn base_prefix_is_respected() {
        let g = PermGroup::with_base(5, sym5().generators().to_vec(), vec![3, 1]).unwrap();
        assert_eq!(&g.base()[..2], &[3, 1]);
        assert_eq!(g.order(), 120);
    }

    #[test]
    fn random_construction_on_large_degree() {
        // Right regular action of C_6000 x C_2: degree 12000 triggers the random route.
        let n = 12000u32;
        let shift = Perm::from_images((0..n).map(|i| (i + 2) % n).collect()).unwrap();
        let swap = Perm::from_images((0..n).map(|i| i ^ 1).collect()).unwrap();
        let g = PermGroup::new(n as usize, vec![shift, swap]).unwrap();
        assert_eq!(g.order(), 12000);
        assert!(g.is_regular());
    }

    fn arb_gens(n: usize) -> impl Strategy<Value = Vec<Perm>> {
        proptest::collection::vec(
            Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Perm::from_images(v).unwrap()),
            0..3,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn chain_order_matches_closure(gens in arb_gens(6)) {
            let g = PermGroup::new(6, gens.clone()).unwrap();
            let closure = subgroup_closure(6, &gens, 5000).unwrap();
            prop_assert_eq!(g.order(), closure.len() as u128);
            for x in closure.iter().take(40) {
                prop_assert!(g.contains(x).unwrap());
            }
            let els: Vec<_> = g.elements(5000).unwrap().collect();
            prop_assert_eq!(els.len(), closure.len());
            let set: HashSet<_> = els.iter().cloned().collect();
            prop_assert_eq!(set, closure.into_iter().collect::<HashSet<_>>());
        }

        #[test]
        fn membership_closed_under_products(gens in arb_gens(7), i in 0usize..50, j in 0usize..50) {
            let g = PermGroup::new(7, gens).unwrap();
            let els: Vec<_> = g.elements(10_000).unwrap().collect();
            let a = &els[i % els.len()];
            let b = &els[j % els.len()];
            prop_assert!(g.contains(&a.then(b)).unwrap());
            if g.is_regular() {
                prop_assert_eq!(g.order(), 7);
                prop_assert_eq!(g.orbits().num_cells(), 1);
            }
        }
    }
}
