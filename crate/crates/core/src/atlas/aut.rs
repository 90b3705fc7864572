//! Automorphism groups by generator-image backtracking.
//!
//! An automorphism is stored as the tuple of images of the canonical
//! generators. The search fixes the image of the first generator to one
//! representative per admissible class, prunes the remaining images by
//! element order and class size of short words, and extends each survivor
//! over the word tree before checking it is a bijective homomorphism.
//! Composing the survivors with inner automorphisms from a transversal of
//! the representative's centralizer gives every automorphism exactly once.

use std::collections::HashMap;

use rayon::prelude::*;

use super::indexed::IndexedGroup;
use crate::perm_core::Perm;

pub struct AutSet {
    k: usize,
    images: Vec<u32>,
    lookup: HashMap<Vec<u32>, u32>,
    inner_of: HashMap<Vec<u32>, u32>,
    candidates_checked: u64,
}

impl std::fmt::Debug for AutSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutSet")
            .field("len", &self.len())
            .field("inner", &self.inner_count())
            .finish()
    }
}

/// Order and class size, the invariant compared during pruning.
type Profile = (u64, usize);

fn profile(g: &IndexedGroup, x: u32) -> Profile {
    (g.element_order(x), g.classes()[g.class_of(x)].len())
}

/// Short words in two generators whose profiles must be preserved.
fn pair_words(g: &IndexedGroup, a: u32, b: u32) -> [u32; 5] {
    let ab = g.mult(a, b);
    [
        ab,
        g.mult(a, g.inv(b)),
        g.mult(g.mult(g.inv(a), g.inv(b)), ab),
        g.mult(a, ab),
        g.mult(ab, b),
    ]
}

impl AutSet {
    pub fn compute(g: &IndexedGroup) -> AutSet {
        let gens = g.generators().to_vec();
        let k = gens.len();
        let n = g.order();

        let mut inner_of: HashMap<Vec<u32>, u32> = HashMap::with_capacity(n);
        for h in 0..n as u32 {
            let t: Vec<u32> = gens.iter().map(|&s| g.conj(s, h)).collect();
            inner_of.entry(t).or_insert(h);
        }

        if k == 0 {
            let mut lookup = HashMap::new();
            lookup.insert(Vec::new(), 0);
            return AutSet {
                k,
                images: Vec::new(),
                lookup,
                inner_of,
                candidates_checked: 0,
            };
        }

        let gen_profiles: Vec<Profile> = gens.iter().map(|&s| profile(g, s)).collect();
        let word_profiles: Vec<Vec<[Profile; 5]>> = (0..k)
            .map(|j| {
                (0..j)
                    .map(|i| pair_words(g, gens[i], gens[j]).map(|w| profile(g, w)))
                    .collect()
            })
            .collect();
        let candidates: Vec<Vec<u32>> = gen_profiles
            .iter()
            .enumerate()
            .map(|(j, p)| {
                g.classes()
                    .iter()
                    .filter(|c| (c.element_order, c.len()) == *p)
                    .flat_map(|c| {
                        if j == 0 {
                            vec![c.representative()]
                        } else {
                            c.members.clone()
                        }
                    })
                    .collect()
            })
            .collect();

        // Survivors with the first image fixed to a class representative.
        let firsts = candidates[0].clone();
        let results: Vec<(Vec<Vec<u32>>, u64)> = firsts
            .par_iter()
            .map(|&r| {
                let mut found = Vec::new();
                let mut checked = 0u64;
                let mut current = vec![r];
                search(g, &candidates, &word_profiles, &mut current, &mut found, &mut checked);
                (found, checked)
            })
            .collect();

        let mut tuples: Vec<Vec<u32>> = Vec::new();
        let mut candidates_checked = 0;
        for ((found, checked), &r) in results.into_iter().zip(&firsts) {
            candidates_checked += checked;
            if found.is_empty() {
                continue;
            }
            let transversal = conjugation_transversal(g, r);
            for phi in &found {
                for &h in &transversal {
                    tuples.push(phi.iter().map(|&x| g.conj(x, h)).collect());
                }
            }
        }
        tuples.sort_unstable();
        tuples.dedup();
        let identity = gens.clone();
        let pos = tuples
            .iter()
            .position(|t| *t == identity)
            .expect("identity automorphism found");
        let id = tuples.remove(pos);
        tuples.insert(0, id);

        let mut lookup = HashMap::with_capacity(tuples.len());
        let mut images = Vec::with_capacity(tuples.len() * k);
        for (i, t) in tuples.into_iter().enumerate() {
            images.extend_from_slice(&t);
            lookup.insert(t, i as u32);
        }
        AutSet {
            k,
            images,
            lookup,
            inner_of,
            candidates_checked,
        }
    }

    pub fn len(&self) -> usize {
        self.lookup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lookup.is_empty()
    }

    /// `|Inn(G)| = n / |Z(G)|`.
    pub fn inner_count(&self) -> usize {
        self.inner_of.len()
    }

    /// Candidate generator-image tuples that reached the pruning stage.
    pub fn candidates_checked(&self) -> u64 {
        self.candidates_checked
    }

    /// Images of the canonical generators under automorphism `i`.
    pub fn images(&self, i: usize) -> &[u32] {
        &self.images[i * self.k..(i + 1) * self.k]
    }

    pub fn index_of(&self, images: &[u32]) -> Option<usize> {
        self.lookup.get(images).map(|&i| i as usize)
    }

    /// The element `h` with automorphism `i` equal to `x -> h^-1 x h`, if inner.
    pub fn conjugating_element(&self, i: usize) -> Option<u32> {
        self.inner_of.get(self.images(i)).copied()
    }

    pub fn is_inner(&self, i: usize) -> bool {
        self.conjugating_element(i).is_some()
    }

    /// Image of `x` under automorphism `i`, evaluated along the word of `x`.
    pub fn apply(&self, g: &IndexedGroup, i: usize, x: u32) -> u32 {
        let imgs = self.images(i);
        g.word(x)
            .into_iter()
            .fold(0, |acc, j| g.mult(acc, imgs[j as usize]))
    }

    /// Full image table of automorphism `i`.
    pub fn table(&self, g: &IndexedGroup, i: usize) -> Vec<u32> {
        extend(g, self.images(i))
    }

    /// Automorphism `i` as a permutation of the element indices.
    pub fn vertex_perm(&self, g: &IndexedGroup, i: usize) -> Perm {
        Perm::from_images_unchecked(self.table(g, i))
    }

    /// Index of "first `i`, then `j`".
    pub fn compose(&self, g: &IndexedGroup, i: usize, j: usize) -> usize {
        let t: Vec<u32> = self
            .images(i)
            .iter()
            .map(|&x| self.apply(g, j, x))
            .collect();
        self.index_of(&t).expect("automorphisms closed under composition")
    }

    /// A generating set chosen greedily in list order.
    pub fn generating_set(&self, g: &IndexedGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.len()];
        member[0] = true;
        let mut members = vec![0usize];
        for i in 0..self.len() {
            if member[i] {
                continue;
            }
            gens.push(i);
            // Extend the closure with the new generator.
            let mut idx = 0;
            while idx < members.len() {
                for &s in &gens {
                    let c = self.compose(g, members[idx], s);
                    if !member[c] {
                        member[c] = true;
                        members.push(c);
                    }
                }
                idx += 1;
            }
            if members.len() == self.len() {
                break;
            }
        }
        gens
    }
}

fn search(
    g: &IndexedGroup,
    candidates: &[Vec<u32>],
    word_profiles: &[Vec<[Profile; 5]>],
    current: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
    checked: &mut u64,
) {
    let j = current.len();
    if j == candidates.len() {
        *checked += 1;
        let table = extend(g, current);
        if is_automorphism(g, current, &table) {
            found.push(current.clone());
        }
        return;
    }
    'cand: for &c in &candidates[j] {
        for (i, expected) in word_profiles[j].iter().enumerate() {
            let words = pair_words(g, current[i], c);
            for (w, e) in words.iter().zip(expected) {
                if profile(g, *w) != *e {
                    continue 'cand;
                }
            }
        }
        current.push(c);
        search(g, candidates, word_profiles, current, found, checked);
        current.pop();
    }
}

/// Extends generator images over the word tree.
pub(crate) fn extend(g: &IndexedGroup, images: &[u32]) -> Vec<u32> {
    let tree = g.word_tree();
    let mut table = vec![0u32; g.order()];
    for &x in g.word_order().iter().skip(1) {
        let (p, j) = tree[x as usize];
        table[x as usize] = g.mult(table[p as usize], images[j as usize]);
    }
    table
}

/// Bijective and compatible with right multiplication by every generator.
pub(crate) fn is_automorphism(g: &IndexedGroup, images: &[u32], table: &[u32]) -> bool {
    let n = g.order();
    let mut hit = vec![false; n];
    for &y in table {
        if std::mem::replace(&mut hit[y as usize], true) {
            return false;
        }
    }
    let gens = g.generators();
    (0..n as u32).all(|x| {
        gens.iter().zip(images).all(|(&s, &t)| {
            table[g.mult(x, s) as usize] == g.mult(table[x as usize], t)
        })
    })
}

/// For each `y` in the class of `r`, one `h` with `r^h = y`.
fn conjugation_transversal(g: &IndexedGroup, r: u32) -> Vec<u32> {
    let mut conj_by: HashMap<u32, u32> = HashMap::new();
    conj_by.insert(r, 0);
    let mut queue = vec![r];
    let mut i = 0;
    while i < queue.len() {
        let y = queue[i];
        let h = conj_by[&y];
        for &s in g.defining_generators() {
            let z = g.conj(y, s);
            if let std::collections::hash_map::Entry::Vacant(e) = conj_by.entry(z) {
                e.insert(g.mult(h, s));
                queue.push(z);
            }
        }
        i += 1;
    }
    queue.iter().map(|y| conj_by[y]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> IndexedGroup {
        IndexedGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn alt5_has_120() {
        let g = build("alt:5");
        let a = g.automorphisms();
        assert_eq!(a.len(), 120);
        assert_eq!(a.inner_count(), 60);
        assert_eq!(g.out_order(), 2);
        assert_eq!(a.images(0), g.generators());
    }

    #[test]
    fn sym5_all_inner() {
        let g = build("sym:5");
        let a = g.automorphisms();
        assert_eq!(a.len(), 120);
        assert_eq!(a.inner_count(), 120);
        assert!((0..a.len()).all(|i| a.is_inner(i)));
    }

    #[test]
    fn sym6_outer_automorphism_is_found() {
        let g = build("sym:6");
        let a = g.automorphisms();
        assert_eq!(a.len(), 1440);
        assert_eq!(a.inner_count(), 720);
        // An outer automorphism swaps transpositions with triple transpositions.
        let t = g.index_of(&Perm::parse("(1 2)", 6).unwrap()).unwrap();
        let outer = (0..a.len()).find(|&i| !a.is_inner(i)).unwrap();
        let img = a.apply(&g, outer, t);
        assert_eq!(g.element(img).cycle_type(), vec![2, 2, 2]);
    }

    #[test]
    fn every_member_is_a_homomorphism() {
        let g = build("psl2:7");
        let a = g.automorphisms();
        assert_eq!(a.len(), 336);
        for i in (0..a.len()).step_by(7) {
            let t = a.table(&g, i);
            for x in (0..168u32).step_by(5) {
                for y in (0..168u32).step_by(11) {
                    assert_eq!(t[g.mult(x, y) as usize], g.mult(t[x as usize], t[y as usize]));
                }
            }
        }
    }

    #[test]
    fn composition_and_generation() {
        let g = build("alt:5");
        let a = g.automorphisms();
        let gens = a.generating_set(&g);
        let perms: Vec<Perm> = gens.iter().map(|&i| a.vertex_perm(&g, i)).collect();
        assert_eq!(crate::PermGroup::new(60, perms).unwrap().order(), 120);
        let c = a.compose(&g, 5, 9);
        let x = 17;
        assert_eq!(a.apply(&g, c, x), a.apply(&g, 9, a.apply(&g, 5, x)));
    }
}
