//! Automorphism groups of Cayley graphs by individualization and refinement.
//!
//! Colorings are refined by hashed in/out neighbour color multisets until
//! stable. The first path individualizes the smallest vertex of the smallest
//! non-singleton cell. For each level, deepest first, every vertex of the
//! target cell that is not already in the orbit of the path vertex (under
//! the known group with the path as base prefix) is tried; a subtree search
//! looks for a leaf matching the first leaf.

use crate::budget::{Budget, Deadline};
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

/// Largest graph the engine accepts.
pub const IR_MAX_VERTICES: usize = 2000;

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[derive(Clone)]
struct Node {
    colors: Vec<u32>,
    ncolors: usize,
    trace: u64,
}

impl Node {
    fn is_discrete(&self) -> bool {
        self.ncolors == self.colors.len()
    }

    /// Smallest non-singleton cell, ties to the smaller color.
    fn target_cell(&self) -> Option<(u32, Vec<u32>)> {
        let mut sizes = vec![0usize; self.ncolors];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        let c = (0..self.ncolors)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))? as u32;
        let cell = (0..self.colors.len() as u32)
            .filter(|&v| self.colors[v as usize] == c)
            .collect();
        Some((c, cell))
    }

    fn individualize(&self, v: u32) -> Node {
        let k = self.colors[v as usize];
        let colors = self
            .colors
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if c > k || (c == k && w as u32 != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        Node {
            colors,
            ncolors: self.ncolors + 1,
            trace: mix(self.trace ^ k as u64),
        }
    }
}

struct Engine<'a, 'g> {
    gamma: &'a CayleyGraph<'g>,
    directed: bool,
    nodes: u64,
    node_limit: u64,
    deadline: Deadline,
}

impl Engine<'_, '_> {
    fn refine(&self, node: &mut Node) {
        let n = node.colors.len();
        let g = self.gamma.group();
        loop {
            let salt = |c: u32| mix(c as u64 ^ 0x51ed_2701);
            let mut keyed: Vec<(u32, u64, u64, u32)> = (0..n as u32)
                .map(|v| {
                    let out = self
                        .gamma
                        .out_neighbors(v)
                        .fold(0u64, |h, w| h.wrapping_add(salt(node.colors[w as usize])));
                    let inn = if self.directed {
                        self.gamma
                            .connection()
                            .iter()
                            .map(|&x| g.mult(g.inv(x), v))
                            .fold(0u64, |h, w| h.wrapping_add(salt(node.colors[w as usize])))
                    } else {
                        0
                    };
                    (node.colors[v as usize], out, inn, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut colors = vec![0u32; n];
            let mut next = 0u32;
            let mut trace = node.trace;
            let mut run = 0u64;
            for i in 0..n {
                let (c, o, x, v) = keyed[i];
                if i > 0 {
                    let (pc, po, px, _) = keyed[i - 1];
                    if (pc, po, px) != (c, o, x) {
                        trace = mix(trace ^ mix(pc as u64 ^ po.rotate_left(17) ^ px.rotate_left(41)) ^ run);
                        next += 1;
                        run = 0;
                    }
                }
                run += 1;
                colors[v as usize] = next;
            }
            trace = mix(trace ^ run);
            let count = next as usize + 1;
            let changed = count != node.ncolors;
            node.colors = colors;
            node.ncolors = count;
            node.trace = trace;
            if !changed {
                return;
            }
        }
    }

    fn child(&self, node: &Node, v: u32) -> Node {
        let mut c = node.individualize(v);
        self.refine(&mut c);
        c
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::BudgetExceeded(format!(
                "refinement search exceeded {} nodes",
                self.node_limit
            )));
        }
        if self.nodes.is_multiple_of(1024) {
            self.deadline.check("refinement search")?;
        }
        Ok(())
    }

    /// A leaf below `node` equivalent to the first leaf, as an automorphism.
    fn search_leaf(&mut self, node: &Node, depth: usize, path: &[PathStep], leaf: &[u32]) -> Result<Option<Perm>> {
        self.tick()?;
        if node.is_discrete() {
            let mut by_color = vec![0u32; node.colors.len()];
            for (v, &c) in node.colors.iter().enumerate() {
                by_color[c as usize] = v as u32;
            }
            let images: Vec<u32> = leaf.iter().map(|&c| by_color[c as usize]).collect();
            let ok = self.gamma.preserves_arcs(|u| images[u as usize]);
            return Ok(ok.then(|| Perm::from_images(images).expect("bijection")));
        }
        let (c, cell) = node.target_cell().expect("non-discrete");
        if c != path[depth].color {
            return Ok(None);
        }
        for &u in &cell {
            let child = self.child(node, u);
            if child.trace != path[depth + 1].node.trace {
                continue;
            }
            if let Some(p) = self.search_leaf(&child, depth + 1, path, leaf)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

struct PathStep {
    node: Node,
    color: u32,
    cell: Vec<u32>,
    vertex: u32,
}

/// Result of a refinement search.
#[derive(Clone, Debug)]
pub struct IrOutcome {
    pub group: PermGroup,
    pub nodes: u64,
    /// Automorphisms found by the search, beyond the seed.
    pub found: usize,
}

/// The full automorphism group of `gamma`. `seed` must consist of
/// automorphisms; it is used only for orbit pruning.
pub fn ir_aut(gamma: &CayleyGraph, seed: &PermGroup, budget: &Budget) -> Result<PermGroup> {
    ir_search(gamma, seed.generators(), budget).map(|o| o.group)
}

pub fn ir_search(gamma: &CayleyGraph, seed: &[Perm], budget: &Budget) -> Result<IrOutcome> {
    let n = gamma.order();
    if n > IR_MAX_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "refinement engine limited to {IR_MAX_VERTICES} vertices, graph has {n}"
        )));
    }
    for p in seed {
        if !gamma.is_automorphism(p)? {
            return Err(Error::Inconsistent("seed element is not an automorphism".into()));
        }
    }
    let mut engine = Engine {
        gamma,
        directed: !gamma.is_inverse_closed(),
        nodes: 0,
        node_limit: budget.search_nodes,
        deadline: budget.deadline(),
    };

    let mut root = Node {
        colors: vec![0; n],
        ncolors: 1,
        trace: 0,
    };
    engine.refine(&mut root);
    let mut path: Vec<PathStep> = Vec::new();
    let mut node = root;
    while let Some((color, cell)) = node.target_cell() {
        let vertex = cell[0];
        let next = engine.child(&node, vertex);
        path.push(PathStep {
            node,
            color,
            cell,
            vertex,
        });
        node = next;
    }
    let leaf = node.colors.clone();
    let depth = path.len();
    path.push(PathStep {
        node,
        color: 0,
        cell: Vec::new(),
        vertex: 0,
    });
    let prefix: Vec<u32> = path[..depth].iter().map(|s| s.vertex).collect();

    let mut gens: Vec<Perm> = seed.iter().filter(|p| !p.is_identity()).cloned().collect();
    let mut group = PermGroup::with_base(n, gens.clone(), prefix.clone())?;
    let mut found = 0;
    for i in (0..depth).rev() {
        let cell = path[i].cell.clone();
        let mut in_orbit = orbit_mask(&group, i, n);
        for &w in &cell {
            if in_orbit[w as usize] {
                continue;
            }
            let child = engine.child(&path[i].node, w);
            if child.trace != path[i + 1].node.trace {
                continue;
            }
            if let Some(p) = engine.search_leaf(&child, i + 1, &path, &leaf)? {
                debug_assert_eq!(p.apply(path[i].vertex), w);
                gens.push(p);
                found += 1;
                group = PermGroup::with_base(n, gens.clone(), prefix.clone())?;
                in_orbit = orbit_mask(&group, i, n);
            }
        }
    }
    Ok(IrOutcome {
        group,
        nodes: engine.nodes,
        found,
    })
}

fn orbit_mask(group: &PermGroup, level: usize, n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &p in group.basic_orbit(level) {
        mask[p as usize] = true;
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{g_star, GroupSpec, IndexedGroup};

    fn cyclic(m: usize) -> IndexedGroup {
        let cycle: Vec<u32> = (0..m as u32).collect();
        let spec = GroupSpec::Raw {
            degree: m,
            generators: vec![Perm::from_cycles(m, &[&cycle]).unwrap()],
        };
        IndexedGroup::build(&spec).unwrap()
    }

    #[test]
    fn small_graphs() {
        let budget = Budget::default();
        let z4 = cyclic(4);
        let empty = CayleyGraph::new(&z4, &[]).unwrap();
        assert_eq!(ir_aut(&empty, &PermGroup::trivial(4), &budget).unwrap().order(), 24);

        let gen = z4.generators()[0];
        let c4 = CayleyGraph::new(&z4, &[gen]).unwrap();
        assert_eq!(ir_aut(&c4, &PermGroup::trivial(4), &budget).unwrap().order(), 4);

        let z5 = cyclic(5);
        let c5 = CayleyGraph::new(&z5, &[z5.generators()[0]]).unwrap();
        assert_eq!(ir_aut(&c5, &PermGroup::trivial(5), &budget).unwrap().order(), 5);

        // undirected 5-cycle
        let g = z5.generators()[0];
        let u5 = CayleyGraph::new(&z5, &[g, z5.inv(g)]).unwrap();
        assert_eq!(ir_aut(&u5, &PermGroup::trivial(5), &budget).unwrap().order(), 10);
    }

    #[test]
    fn alt5_involution_graph_without_seed() {
        let g = IndexedGroup::build(&"alt:5".parse().unwrap()).unwrap();
        let inv = g.classes().iter().find(|c| c.element_order == 2).unwrap();
        let gamma = CayleyGraph::new(&g, &inv.members).unwrap();
        let k = ir_aut(&gamma, &PermGroup::trivial(60), &Budget::default()).unwrap();
        assert_eq!(k.order(), 14400);
        let seeded = ir_aut(&gamma, &g_star(&g), &Budget::default()).unwrap();
        assert_eq!(seeded.order(), 14400);
    }

    #[test]
    fn node_budget() {
        let g = IndexedGroup::build(&"alt:5".parse().unwrap()).unwrap();
        let gamma = CayleyGraph::new(&g, &[]).unwrap();
        let tight = Budget {
            search_nodes: 5,
            ..Budget::default()
        };
        assert!(matches!(
            ir_aut(&gamma, &PermGroup::trivial(60), &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
