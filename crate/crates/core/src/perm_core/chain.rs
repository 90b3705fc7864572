//! Stabilizer chains stored as Schreier vectors.
//!
//! Each level keeps its base point, the indices of the strong generators
//! that fix all earlier base points, and a Schreier vector labelling every
//! orbit point with the generator that first reached it. Transversal
//! elements are rebuilt on demand by walking the vector back to the base
//! point, so a level costs O(degree) words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Perm;

/// Degrees above this use the randomized construction.
pub const RANDOM_DEGREE_THRESHOLD: usize = 5000;

/// Consecutive trivial sifts required before the random construction stops.
const RANDOM_STOP_RUN: usize = 48;

const NOT_IN_ORBIT: i32 = -1;
const ROOT: i32 = -2;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<usize>,
    pub orbit: Vec<u32>,
    /// Strong-generator index that reached each point, `ROOT` or `NOT_IN_ORBIT`.
    edge: Vec<i32>,
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    degree: usize,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
}

impl Chain {
    pub fn build(degree: usize, gens: &[Perm], base_prefix: &[u32]) -> Chain {
        let mut chain = Chain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            chain.push_level(b);
        }
        for g in gens {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.strong_inv.push(g.inverse());
                chain.strong.push(g.clone());
            }
        }
        for idx in 0..chain.strong.len() {
            chain.ensure_moved_base(idx);
        }
        for l in 0..chain.levels.len() {
            chain.levels[l].gens = chain.gens_fixing_prefix(l);
            chain.recompute_orbit(l);
        }
        if degree > RANDOM_DEGREE_THRESHOLD {
            chain.complete_random(0x5eed_c4a1);
        } else {
            chain.complete_deterministic();
        }
        chain
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn in_orbit(&self, level: usize, point: u32) -> bool {
        self.levels[level].edge[point as usize] != NOT_IN_ORBIT
    }

    /// Sifts `h` from `start`; returns the level where it dropped out (or
    /// `levels.len()`) and the residue.
    pub fn sift_from(&self, mut h: Perm, start: usize) -> (usize, Perm) {
        for i in start..self.levels.len() {
            let b = h.apply(self.levels[i].base);
            if self.levels[i].edge[b as usize] == NOT_IN_ORBIT {
                return (i, h);
            }
            h = self.strip(i, h, b);
        }
        (self.levels.len(), h)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        let (j, r) = self.sift_from(p.clone(), 0);
        j == self.levels.len() && r.is_identity()
    }

    /// Transversal element mapping the base point of `level` to `point`.
    pub fn transversal(&self, level: usize, point: u32) -> Perm {
        let word = self.word_to(level, point);
        let mut images: Vec<u32> = (0..self.degree as u32).collect();
        for s in word {
            let g = &self.strong[s];
            for x in images.iter_mut() {
                *x = g.apply(*x);
            }
        }
        Perm::from_images_unchecked(images)
    }

    /// Generator indices `s_1..s_d` with `u_point = s_1 * ... * s_d`.
    fn word_to(&self, level: usize, mut point: u32) -> Vec<usize> {
        let lv = &self.levels[level];
        let mut word = Vec::new();
        loop {
            match lv.edge[point as usize] {
                ROOT => break,
                NOT_IN_ORBIT => panic!("point {point} not in basic orbit {level}"),
                s => {
                    word.push(s as usize);
                    point = self.strong_inv[s as usize].apply(point);
                }
            }
        }
        word.reverse();
        word
    }

    /// `h * u_b^-1` where `b = base^h`.
    fn strip(&self, level: usize, h: Perm, b: u32) -> Perm {
        let word = self.word_to(level, b);
        let mut images = h.into_images();
        for &s in word.iter().rev() {
            let inv = &self.strong_inv[s];
            for x in images.iter_mut() {
                *x = inv.apply(*x);
            }
        }
        Perm::from_images_unchecked(images)
    }

    fn push_level(&mut self, base: u32) {
        let mut edge = vec![NOT_IN_ORBIT; self.degree];
        edge[base as usize] = ROOT;
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            edge,
        });
    }

    fn gens_fixing_prefix(&self, level: usize) -> Vec<usize> {
        (0..self.strong.len())
            .filter(|&s| {
                self.levels[..level]
                    .iter()
                    .all(|l| self.strong[s].apply(l.base) == l.base)
            })
            .collect()
    }

    /// Appends a base point if strong generator `idx` fixes every current base point.
    fn ensure_moved_base(&mut self, idx: usize) -> bool {
        let g = &self.strong[idx];
        if self.levels.iter().all(|l| g.apply(l.base) == l.base) {
            let b = g.smallest_moved_point().expect("non-identity generator");
            self.push_level(b);
            true
        } else {
            false
        }
    }

    fn recompute_orbit(&mut self, level: usize) {
        let degree = self.degree;
        let lv = &mut self.levels[level];
        lv.edge = vec![NOT_IN_ORBIT; degree];
        lv.edge[lv.base as usize] = ROOT;
        lv.orbit = vec![lv.base];
        let mut i = 0;
        while i < lv.orbit.len() {
            let p = lv.orbit[i];
            for &s in &lv.gens {
                let q = self.strong[s].apply(p);
                if lv.edge[q as usize] == NOT_IN_ORBIT {
                    lv.edge[q as usize] = s as i32;
                    lv.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    /// Adds a sifting residue that dropped out at level `j`.
    fn add_residue(&mut self, j: usize, r: Perm, lowest: usize) {
        let idx = self.strong.len();
        self.strong_inv.push(r.inverse());
        self.strong.push(r);
        if j == self.levels.len() {
            let added = self.ensure_moved_base(idx);
            debug_assert!(added);
        }
        for l in lowest..=j {
            self.levels[l].gens.push(idx);
            self.recompute_orbit(l);
        }
    }

    fn complete_deterministic(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let cache_ok = self.levels[lvl].orbit.len() * self.degree <= 4_000_000;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            let cached: Option<Vec<Option<Perm>>> = cache_ok.then(|| {
                let mut c = vec![None; self.degree];
                for &p in &orbit {
                    c[p as usize] = Some(self.transversal(lvl, p));
                }
                c
            });
            let tr = |chain: &Chain, p: u32| -> Perm {
                match &cached {
                    Some(c) => c[p as usize].clone().expect("orbit point"),
                    None => chain.transversal(lvl, p),
                }
            };
            let mut restart = None;
            'outer: for &p in &orbit {
                let up = tr(self, p);
                for &s in &gens {
                    let ups = up.then(&self.strong[s]);
                    let q = ups.apply(self.levels[lvl].base);
                    let uq = tr(self, q);
                    if ups == uq {
                        continue;
                    }
                    let h = ups.then(&uq.inverse());
                    let (j, r) = self.sift_from(h, lvl + 1);
                    if j < self.levels.len() || !r.is_identity() {
                        self.add_residue(j, r, lvl + 1);
                        restart = Some(j);
                        break 'outer;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    fn complete_random(&mut self, seed: u64) {
        if self.strong.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<Perm> = Vec::new();
        while slots.len() < 10 {
            slots.extend(self.strong.iter().cloned());
        }
        slots.truncate(10.max(self.strong.len()));
        let mut acc = Perm::identity(self.degree);
        let next = |rng: &mut ChaCha8Rng, slots: &mut Vec<Perm>, acc: &mut Perm| {
            let k = slots.len();
            let a = rng.gen_range(0..k);
            let mut b = rng.gen_range(0..k);
            while b == a {
                b = rng.gen_range(0..k);
            }
            slots[a] = if rng.gen_bool(0.5) {
                slots[a].then(&slots[b])
            } else {
                slots[a].then(&slots[b].inverse())
            };
            *acc = acc.then(&slots[a]);
            acc.clone()
        };
        for _ in 0..40 {
            next(&mut rng, &mut slots, &mut acc);
        }
        let mut run = 0;
        while run < RANDOM_STOP_RUN {
            let g = next(&mut rng, &mut slots, &mut acc);
            let (j, r) = self.sift_from(g, 0);
            if j < self.levels.len() || !r.is_identity() {
                self.add_residue(j, r, 0);
                run = 0;
            } else {
                run += 1;
            }
        }
        // Every strong generator must sift through the finished chain.
        for s in self.strong.clone() {
            let (j, r) = self.sift_from(s, 0);
            if j < self.levels.len() || !r.is_identity() {
                self.add_residue(j, r, 0);
            }
        }
    }
}

/// Odometer over transversal index tuples, most significant at level 0.
pub(crate) struct ElementIter {
    transversals: Vec<Vec<Perm>>,
    idx: Vec<usize>,
    /// `partial[j] = t_j * t_{j-1} * ... * t_0` for the current prefix.
    partial: Vec<Perm>,
    done: bool,
    degree: usize,
}

impl ElementIter {
    pub fn new(chain: &Chain) -> Self {
        let transversals: Vec<Vec<Perm>> = (0..chain.levels.len())
            .map(|l| {
                chain.levels[l]
                    .orbit
                    .iter()
                    .map(|&p| chain.transversal(l, p))
                    .collect()
            })
            .collect();
        let k = transversals.len();
        let mut it = ElementIter {
            transversals,
            idx: vec![0; k],
            partial: Vec::with_capacity(k),
            done: false,
            degree: chain.degree,
        };
        it.rebuild_from(0);
        it
    }

    fn rebuild_from(&mut self, level: usize) {
        self.partial.truncate(level);
        for j in level..self.idx.len() {
            let t = &self.transversals[j][self.idx[j]];
            let p = match j {
                0 => t.clone(),
                _ => t.then(&self.partial[j - 1]),
            };
            self.partial.push(p);
        }
    }
}

impl Iterator for ElementIter {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let out = self
            .partial
            .last()
            .cloned()
            .unwrap_or_else(|| Perm::identity(self.degree));
        let mut j = self.idx.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            self.idx[j] += 1;
            if self.idx[j] < self.transversals[j].len() {
                self.rebuild_from(j);
                break;
            }
            self.idx[j] = 0;
        }
        Some(out)
    }
}
