use std::collections::HashMap;
use std::sync::OnceLock;

use super::aut::AutSet;
use super::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::perm_core::{BlockPartition, Perm};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Full multiplication tables are kept up to this order.
const TABLE_LIMIT: usize = 2048;

/// One conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub members: Vec<u32>,
    pub element_order: u64,
    /// Cycle type in the defining representation.
    pub cycle_type: Vec<usize>,
}

impl ConjClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self) -> u32 {
        self.members[0]
    }
}

/// A finite group realized on the index set `{0..n-1}`; index 0 is the identity.
pub struct IndexedGroup {
    spec: GroupSpec,
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    defining_gens: Vec<u32>,
    gens: Vec<u32>,
    /// `word_parent[x] = (p, j)` with `x = p * gens[j]`; root is `(0, u8::MAX)`.
    word_parent: Vec<(u32, u8)>,
    /// Elements in breadth-first order of the word tree (parents first).
    word_order: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    socle: Vec<u32>,
    in_socle: Vec<bool>,
    minimal_normal: usize,
    aut: OnceLock<AutSet>,
}

impl std::fmt::Debug for IndexedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IndexedGroup")
            .field("spec", &self.spec.to_string())
            .field("order", &self.order())
            .finish()
    }
}

impl IndexedGroup {
    pub fn build(spec: &GroupSpec) -> Result<IndexedGroup> {
        IndexedGroup::build_with_cap(spec, DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(spec: &GroupSpec, cap: usize) -> Result<IndexedGroup> {
        let generators = spec.generators()?;
        let degree = spec.degree();
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut i = 0;
        while i < elements.len() {
            for g in &generators {
                let p = elements[i].then(g);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(Error::ElementCapExceeded { cap });
                    }
                    index.insert(p.clone(), elements.len() as u32);
                    elements.push(p);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        let defining_gens: Vec<u32> = generators.iter().map(|g| index[g]).collect();
        let mut group = IndexedGroup {
            spec: spec.clone(),
            degree,
            elements,
            index,
            table: None,
            inv,
            gens: defining_gens.clone(),
            defining_gens,
            word_parent: Vec::new(),
            word_order: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            socle: Vec::new(),
            in_socle: Vec::new(),
            minimal_normal: 0,
            aut: OnceLock::new(),
        };
        if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = group.mult_slow(a as u32, b as u32);
                }
            }
            group.table = Some(table);
        }
        if group.gens.len() > 2 {
            if let Some(pair) = group.find_generating_pair() {
                group.gens = pair;
            }
        }
        let (parent, order) = group.bfs_tree(&group.gens.clone());
        group.word_parent = parent;
        group.word_order = order;
        group.compute_classes();
        group.compute_socle();
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Degree of the defining permutation representation.
    pub fn defining_degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of the product `i * j`.
    #[inline]
    pub fn mult(&self, i: u32, j: u32) -> u32 {
        match &self.table {
            Some(t) => t[i as usize * self.elements.len() + j as usize],
            None => self.mult_slow(i, j),
        }
    }

    fn mult_slow(&self, i: u32, j: u32) -> u32 {
        let p = self.elements[i as usize].then(&self.elements[j as usize]);
        self.index[&p]
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// `h^-1 x h`.
    pub fn conj(&self, x: u32, h: u32) -> u32 {
        self.mult(self.mult(self.inv(h), x), h)
    }

    pub fn element_order(&self, i: u32) -> u64 {
        self.elements[i as usize].order()
    }

    /// Generators used for automorphism search and isomorphism witnesses.
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    /// Generators of the defining representation (sorted), used for indexing.
    pub fn defining_generators(&self) -> &[u32] {
        &self.defining_gens
    }

    /// Path of generator positions from the identity to `x`: `x = gens[w0] * gens[w1] * ...`.
    pub fn word(&self, mut x: u32) -> Vec<u8> {
        let mut w = Vec::new();
        while x != 0 {
            let (p, j) = self.word_parent[x as usize];
            w.push(j);
            x = p;
        }
        w.reverse();
        w
    }

    /// Parent data of the word tree: `x = parent * generators()[j]`.
    pub(crate) fn word_tree(&self) -> &[(u32, u8)] {
        &self.word_parent
    }

    /// Elements ordered so that every parent precedes its children.
    pub(crate) fn word_order(&self) -> &[u32] {
        &self.word_order
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn socle(&self) -> &[u32] {
        &self.socle
    }

    pub fn in_socle(&self, x: u32) -> bool {
        self.in_socle[x as usize]
    }

    pub fn socle_index(&self) -> usize {
        self.order() / self.socle.len()
    }

    pub fn is_simple(&self) -> bool {
        self.socle.len() == self.order() && !self.is_abelian()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mult(a, b) == self.mult(b, a)))
    }

    /// Socle nonabelian with trivial centralizer in G.
    pub fn is_almost_simple(&self) -> bool {
        let soc_gens = self.subgroup_generators(&self.socle);
        let soc_abelian = soc_gens
            .iter()
            .all(|&a| soc_gens.iter().all(|&b| self.mult(a, b) == self.mult(b, a)));
        if soc_abelian {
            return false;
        }
        (1..self.order() as u32).all(|x| {
            soc_gens
                .iter()
                .any(|&s| self.mult(x, s) != self.mult(s, x))
        })
    }

    /// Center size; 1 for every centerless group.
    pub fn center_order(&self) -> usize {
        (0..self.order() as u32)
            .filter(|&x| {
                self.gens
                    .iter()
                    .all(|&g| self.mult(x, g) == self.mult(g, x))
            })
            .count()
    }

    /// Union of the classes meeting `seed`, sorted.
    pub fn normal_subset_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut hit = vec![false; self.classes.len()];
        for &x in seed {
            hit[self.class_of(x)] = true;
        }
        let mut out: Vec<u32> = self
            .classes
            .iter()
            .zip(&hit)
            .filter(|(_, &h)| h)
            .flat_map(|(c, _)| c.members.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether `set` is a union of conjugacy classes.
    pub fn is_normal_subset(&self, set: &[u32]) -> bool {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.normal_subset_closure(&sorted) == sorted
    }

    /// The automorphism group, computed on first use.
    pub fn automorphisms(&self) -> &AutSet {
        self.aut.get_or_init(|| AutSet::compute(self))
    }

    /// `|out(G)| = |aut(G)| / |Inn(G)|`.
    pub fn out_order(&self) -> usize {
        let aut = self.automorphisms();
        aut.len() / aut.inner_count()
    }

    /// Subgroup generated by `seed`, as a sorted index list.
    pub fn subgroup_closure(&self, seed: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            for &s in seed {
                let p = self.mult(out[i], s);
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    out.push(p);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A small generating set for the subgroup with the given elements.
    pub fn subgroup_generators(&self, subgroup: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut member = vec![false; self.order()];
        member[0] = true;
        for &x in subgroup {
            if member[x as usize] {
                continue;
            }
            gens.push(x);
            let current = self.subgroup_closure(&gens);
            for &y in &current {
                member[y as usize] = true;
            }
            if current.len() == subgroup.len() {
                break;
            }
        }
        gens
    }

    fn find_generating_pair(&self) -> Option<Vec<u32>> {
        let n = self.order();
        if n > 20_000 {
            return None;
        }
        let a = self.defining_gens[0];
        let mut candidates: Vec<u32> = (1..n as u32).collect();
        // Prefer elements of large order: fewer closures fail.
        candidates.sort_by_key(|&b| std::cmp::Reverse(self.element_order(b)));
        for b in candidates.into_iter().take(4 * n.min(500)) {
            if self.subgroup_closure(&[a, b]).len() == n {
                return Some(vec![a, b]);
            }
        }
        None
    }

    fn bfs_tree(&self, gens: &[u32]) -> (Vec<(u32, u8)>, Vec<u32>) {
        let n = self.order();
        let mut parent = vec![(u32::MAX, u8::MAX); n];
        parent[0] = (0, u8::MAX);
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (j, &s) in gens.iter().enumerate() {
                let y = self.mult(x, s);
                if parent[y as usize].0 == u32::MAX {
                    parent[y as usize] = (x, j as u8);
                    queue.push(y);
                }
            }
            i += 1;
        }
        debug_assert!(parent.iter().all(|p| p.0 != u32::MAX));
        (parent, queue)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            class_of[start as usize] = id;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &self.defining_gens {
                    let y = self.conj(x, s);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        raw.sort_by_key(|c| (c.len(), c[0]));
        let mut class_of = vec![0u32; n];
        let classes = raw
            .into_iter()
            .enumerate()
            .map(|(i, members)| {
                for &x in &members {
                    class_of[x as usize] = i as u32;
                }
                let rep = &self.elements[members[0] as usize];
                ConjClass {
                    element_order: rep.order(),
                    cycle_type: rep.cycle_type(),
                    members,
                }
            })
            .collect();
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Smallest normal closure of a nontrivial class. When several
    /// incomparable minimal ones exist the group is not almost simple and
    /// the product of all of them is stored.
    fn compute_socle(&mut self) {
        let mut closures: Vec<Vec<u32>> = self.classes[1..]
            .iter()
            .map(|c| self.normal_closure(&c.members))
            .collect();
        closures.sort_by_key(|c| c.len());
        closures.dedup();
        let minimal: Vec<&Vec<u32>> = closures
            .iter()
            .filter(|c| {
                !closures
                    .iter()
                    .any(|d| d.len() < c.len() && is_subset(d, c))
            })
            .collect();
        let socle = match minimal.len() {
            0 => vec![0],
            1 => minimal[0].clone(),
            _ => {
                let seed: Vec<u32> = minimal.iter().flat_map(|c| c.iter().copied()).collect();
                self.normal_closure(&seed)
            }
        };
        self.minimal_normal = minimal.len();
        let mut in_socle = vec![false; self.order()];
        for &x in &socle {
            in_socle[x as usize] = true;
        }
        self.socle = socle;
        self.in_socle = in_socle;
    }

    /// Normal subgroups containing the socle, smallest first (ties by elements).
    pub fn normal_subgroups_over_socle(&self) -> Vec<Vec<u32>> {
        let outside: Vec<&ConjClass> = self
            .classes
            .iter()
            .filter(|c| !self.in_socle(c.representative()))
            .collect();
        let mut found = vec![self.socle.clone()];
        for c in &outside {
            let mut seed = self.socle.clone();
            seed.extend_from_slice(&c.members);
            found.push(self.normal_closure(&seed));
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut seed = found[i].clone();
                seed.extend_from_slice(&found[j]);
                seed.sort_unstable();
                seed.dedup();
                let joined = self.normal_closure(&seed);
                if !found.contains(&joined) {
                    found.push(joined);
                }
            }
            i += 1;
        }
        found.sort();
        found.dedup();
        found.sort_by_key(|s| s.len());
        found
    }

    /// Right cosets `Hx` of a subgroup, ordered by smallest element.
    pub fn right_cosets(&self, subgroup: &[u32]) -> BlockPartition {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut cells = Vec::new();
        for x in 0..n as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut coset: Vec<u32> = subgroup.iter().map(|&h| self.mult(h, x)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y as usize] = true;
            }
            cells.push(coset);
        }
        BlockPartition::from_cells(n, cells).expect("cosets partition the group")
    }

    /// The subgroup with the given elements as a group in its own right,
    /// on the defining points.
    pub fn subgroup_spec(&self, subgroup: &[u32]) -> GroupSpec {
        GroupSpec::Raw {
            degree: self.degree,
            generators: self
                .subgroup_generators(subgroup)
                .into_iter()
                .map(|x| self.elements[x as usize].clone())
                .collect(),
        }
    }

    /// Number of distinct minimal normal subgroups.
    pub fn minimal_normal_count(&self) -> usize {
        self.minimal_normal
    }

    /// Subgroup generated by a normal set (hence normal).
    pub fn normal_closure(&self, normal_set: &[u32]) -> Vec<u32> {
        let mut closed = self.normal_subset_closure(normal_set);
        closed.retain(|&x| x != 0);
        self.subgroup_closure_incremental(&closed)
    }

    /// Closure of a possibly large seed, adding only seeds not yet generated.
    fn subgroup_closure_incremental(&self, seed: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut current = vec![0u32];
        for &x in seed {
            if member[x as usize] {
                continue;
            }
            gens.push(x);
            current = self.subgroup_closure(&gens);
            for &y in &current {
                member[y as usize] = true;
            }
        }
        current
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> IndexedGroup {
        IndexedGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(build("sym:3").order(), 6);
        assert_eq!(build("alt:5").order(), 60);
        assert_eq!(build("psl2:7").order(), 168);
        for q in [4u32, 5, 8, 9, 11, 13] {
            let g = build(&format!("psl2:{q}"));
            let expected = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(g.order() as u32, expected, "psl2 {q}");
        }
    }

    #[test]
    fn identity_and_inverse_laws() {
        let g = build("alt:5");
        for i in 0..g.order() as u32 {
            assert_eq!(g.mult(0, i), i);
            assert_eq!(g.mult(i, 0), i);
            assert_eq!(g.mult(i, g.inv(i)), 0);
        }
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn class_sizes() {
        let sizes: Vec<usize> = build("alt:5").classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        let sizes: Vec<usize> = build("sym:3").classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        let g = build("sym:5");
        assert_eq!(g.classes()[0].members, vec![0]);
        let total: usize = g.classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, 120);
    }

    #[test]
    fn socles() {
        let s5 = build("sym:5");
        assert_eq!(s5.socle().len(), 60);
        assert!(s5.socle().iter().all(|&x| s5.element(x).is_even()));
        assert_eq!(s5.socle_index(), 2);
        assert_eq!(build("alt:5").socle().len(), 60);
        assert_eq!(build("psl2:7").socle().len(), 168);
        assert!(build("alt:6").is_simple());
        assert!(!s5.is_simple());
        assert!(s5.is_almost_simple());
        assert_eq!(s5.minimal_normal_count(), 1);
    }

    #[test]
    fn normal_closure_of_transposition() {
        let g = build("sym:5");
        let t = g.index_of(&Perm::parse("(1 2)", 5).unwrap()).unwrap();
        let c = g.normal_subset_closure(&[t]);
        assert_eq!(c.len(), 10);
        assert_eq!(g.normal_subset_closure(&c), c);
        assert!(g.normal_subset_closure(&[]).is_empty());
        assert!(!g.is_normal_subset(&[t]));
        assert!(g.is_normal_subset(&c));
    }

    #[test]
    fn element_cap() {
        let r = IndexedGroup::build_with_cap(&GroupSpec::Sym(6), 100);
        assert!(matches!(r, Err(Error::ElementCapExceeded { cap: 100 })));
    }

    #[test]
    fn words_reach_elements() {
        let g = build("psl2:8");
        assert!(g.generators().len() <= 2);
        for x in [1u32, 17, 200, 503] {
            let w = g.word(x);
            let y = w.iter().fold(0, |acc, &j| g.mult(acc, g.generators()[j as usize]));
            assert_eq!(y, x);
        }
    }
}
