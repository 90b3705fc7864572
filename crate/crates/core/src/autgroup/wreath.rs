use itertools::Itertools;
use num_bigint::BigUint;
use serde::Serialize;

use crate::atlas::IndexedGroup;
use crate::cayley::CayleyGraph;
use crate::perm_core::{BlockPartition, Perm};

/// `aut(Γ)` for a lexicographic product `Γ = Q[H]` with `H` complete or
/// empty on the cosets of a normal subgroup: every block carries its full
/// symmetric group and the blocks are permuted by `aut(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathCertificate {
    /// The normal subgroup whose cosets are the blocks.
    pub subgroup: Vec<u32>,
    pub blocks: BlockPartition,
    pub internally_complete: bool,
    /// Arcs of the quotient graph between block indices.
    pub quotient_arcs: Vec<(u32, u32)>,
    /// Automorphisms of the quotient, identity first.
    pub quotient_aut: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathSummary {
    pub cell: String,
    pub cells: usize,
    pub quotient_order: usize,
}

impl WreathCertificate {
    pub fn cell_size(&self) -> usize {
        self.subgroup.len()
    }

    pub fn num_cells(&self) -> usize {
        self.blocks.num_cells()
    }

    /// `(|L|!)^m * |aut(Q)|`.
    pub fn order(&self) -> BigUint {
        let f: BigUint = (1..=self.cell_size() as u64).map(BigUint::from).product();
        f.pow(self.num_cells() as u32) * BigUint::from(self.quotient_aut.len())
    }

    pub fn summary(&self) -> WreathSummary {
        WreathSummary {
            cell: format!("{}!", self.cell_size()),
            cells: self.num_cells(),
            quotient_order: self.quotient_aut.len(),
        }
    }

    /// Block preservation plus membership of the induced block permutation in `aut(Q)`.
    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.blocks.degree() {
            return false;
        }
        match self.blocks.induced_action(p) {
            Some(q) => self.quotient_aut.contains(&q),
            None => false,
        }
    }

    /// A transposition and a long cycle inside every block, plus a lift of
    /// each nontrivial quotient automorphism matching blocks in sorted order.
    pub fn generators(&self) -> Vec<Perm> {
        let n = self.blocks.degree();
        let mut gens = Vec::new();
        for cell in self.blocks.cells() {
            if cell.len() > 1 {
                gens.push(Perm::from_cycles(n, &[&cell[..2]]).expect("cell points"));
            }
            if cell.len() > 2 {
                gens.push(Perm::from_cycles(n, &[cell]).expect("cell points"));
            }
        }
        for q in self.quotient_aut.iter().skip(1) {
            let mut images = vec![0u32; n];
            for (i, cell) in self.blocks.cells().iter().enumerate() {
                let target = &self.blocks.cells()[q[i] as usize];
                for (&a, &b) in cell.iter().zip(target) {
                    images[a as usize] = b;
                }
            }
            gens.push(Perm::from_images(images).expect("blocks have equal size"));
        }
        gens
    }
}

/// The wreath structure of `gamma`, if some proper normal subgroup
/// containing the socle has cosets that are modules, each internally
/// complete or empty, with a quotient free of twins that would merge blocks.
/// Larger subgroups are preferred.
pub fn find_wreath(gamma: &CayleyGraph) -> Option<WreathCertificate> {
    let g = gamma.group();
    if g.is_simple() || gamma.is_empty_graph() || gamma.is_complete_graph() {
        return None;
    }
    let mut candidates = g.normal_subgroups_over_socle();
    candidates.retain(|l| l.len() < g.order());
    candidates.reverse();
    candidates
        .into_iter()
        .find_map(|l| wreath_for(gamma, g, l))
}

fn wreath_for(gamma: &CayleyGraph, g: &IndexedGroup, l: Vec<u32>) -> Option<WreathCertificate> {
    let inside = l.iter().filter(|&&x| gamma.in_connection(x)).count();
    let internally_complete = match inside {
        0 => false,
        k if k + 1 == l.len() => true,
        _ => return None,
    };
    let blocks = g.right_cosets(&l);
    for cell in blocks.cells() {
        if cell.contains(&0) {
            continue;
        }
        let hits = cell.iter().filter(|&&x| gamma.in_connection(x)).count();
        if hits != 0 && hits != cell.len() {
            return None;
        }
    }
    let m = blocks.num_cells();
    let reps: Vec<u32> = blocks.cells().iter().map(|c| c[0]).collect();
    let arc = |i: usize, j: usize| i != j && gamma.has_arc(reps[i], reps[j]);
    let mut quotient_arcs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if arc(i, j) {
                quotient_arcs.push((i as u32, j as u32));
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let twins = (0..m)
                .filter(|&k| k != i && k != j)
                .all(|k| arc(i, k) == arc(j, k) && arc(k, i) == arc(k, j));
            let joined = arc(i, j) && arc(j, i);
            let apart = !arc(i, j) && !arc(j, i);
            if twins && ((internally_complete && joined) || (!internally_complete && apart)) {
                return None;
            }
        }
    }
    let quotient_aut: Vec<Vec<u32>> = (0..m as u32)
        .permutations(m)
        .filter(|q| {
            (0..m).all(|i| (0..m).all(|j| arc(i, j) == arc(q[i] as usize, q[j] as usize)))
        })
        .collect();
    Some(WreathCertificate {
        subgroup: l,
        blocks,
        internally_complete,
        quotient_arcs,
        quotient_aut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{named_set, NamedSet};

    #[test]
    fn odd_permutations_of_sym5() {
        let g = IndexedGroup::build(&"sym:5".parse().unwrap()).unwrap();
        let odd = named_set(&g, NamedSet::Odd);
        let gamma = CayleyGraph::new(&g, &odd).unwrap();
        let w = find_wreath(&gamma).unwrap();
        assert_eq!(w.cell_size(), 60);
        assert_eq!(w.num_cells(), 2);
        assert!(!w.internally_complete);
        assert_eq!(w.quotient_aut.len(), 2);
        let f60: BigUint = (1..=60u64).map(BigUint::from).product();
        assert_eq!(w.order(), f60.pow(2) * 2u32);
        for p in w.generators() {
            assert!(w.contains(&p));
            assert!(gamma.is_automorphism(&p).unwrap());
        }
        assert_eq!(
            w.summary(),
            WreathSummary {
                cell: "60!".into(),
                cells: 2,
                quotient_order: 2
            }
        );
    }

    #[test]
    fn disjoint_complete_graphs() {
        let g = IndexedGroup::build(&"sym:5".parse().unwrap()).unwrap();
        let even: Vec<u32> = (1..120).filter(|&x| g.element(x).is_even()).collect();
        let gamma = CayleyGraph::new(&g, &even).unwrap();
        let w = find_wreath(&gamma).unwrap();
        assert!(w.internally_complete);
        assert!(w.quotient_arcs.is_empty());
        assert_eq!(w.quotient_aut.len(), 2);
    }

    #[test]
    fn no_wreath_for_transpositions() {
        let g = IndexedGroup::build(&"sym:5".parse().unwrap()).unwrap();
        let gamma = crate::cayley::transposition_graph(&g).unwrap();
        assert!(find_wreath(&gamma).is_none());
    }
}
