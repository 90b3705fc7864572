//! `K = aut(Γ)` for central Cayley graphs, the minimal block and the
//! normal/symmetric type of `K`.

mod refine;
mod wreath;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::{d2_contains, g_star, inversion_perm, right_mult, IndexedGroup};
use crate::budget::Budget;
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::perm_core::{BlockPartition, Perm, PermGroup};

pub use refine::{ir_aut, ir_search, IrOutcome, IR_MAX_VERTICES};
pub use wreath::{find_wreath, WreathCertificate, WreathSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    CompleteEmpty,
    SimpleD2Filter,
    SymmetricWreath,
    RefinementBacktrack,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::CompleteEmpty => "complete-empty",
            Strategy::SimpleD2Filter => "simple-d2-filter",
            Strategy::SymmetricWreath => "symmetric-wreath",
            Strategy::RefinementBacktrack => "refinement-backtrack",
        }
    }
}

/// How `K` is held.
#[derive(Clone, Debug)]
pub enum KStructure {
    /// `sym(G)`.
    Symmetric { degree: usize },
    Chain(PermGroup),
    Wreath(WreathCertificate),
}

/// Per-strategy evidence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificates {
    /// Candidates pushed through the arc test.
    pub candidates_tested: u64,
    pub candidates_passed: u64,
    /// Elements of the group the candidates stand for.
    pub elements_covered: u64,
    pub search_nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AutResult {
    pub structure: KStructure,
    pub strategy: Strategy,
    /// False when a budget stopped the search; `structure` is then a subgroup of `K`.
    pub exact: bool,
    pub certificates: Certificates,
}

impl AutResult {
    pub fn degree(&self) -> usize {
        match &self.structure {
            KStructure::Symmetric { degree } => *degree,
            KStructure::Chain(k) => k.degree(),
            KStructure::Wreath(w) => w.blocks.degree(),
        }
    }

    pub fn order(&self) -> BigUint {
        match &self.structure {
            KStructure::Symmetric { degree } => (1..=*degree as u64).map(BigUint::from).product(),
            KStructure::Chain(k) => BigUint::from(k.order()),
            KStructure::Wreath(w) => w.order(),
        }
    }

    /// The order when it is held by a stabilizer chain.
    pub fn chain_order(&self) -> Option<u128> {
        match &self.structure {
            KStructure::Chain(k) if k.order() < u128::MAX => Some(k.order()),
            _ => None,
        }
    }

    pub fn chain(&self) -> Option<&PermGroup> {
        match &self.structure {
            KStructure::Chain(k) => Some(k),
            _ => None,
        }
    }

    pub fn wreath(&self) -> Option<&WreathCertificate> {
        match &self.structure {
            KStructure::Wreath(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_symmetric_group(&self) -> bool {
        matches!(self.structure, KStructure::Symmetric { .. })
    }

    /// Exact membership in `K`.
    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree() {
            return false;
        }
        match &self.structure {
            KStructure::Symmetric { .. } => true,
            KStructure::Chain(k) => k.contains(p).unwrap_or(false),
            KStructure::Wreath(w) => w.contains(p),
        }
    }

    pub fn generators(&self) -> Vec<Perm> {
        match &self.structure {
            KStructure::Symmetric { degree } => {
                let n = *degree;
                if n < 2 {
                    return Vec::new();
                }
                let cycle: Vec<u32> = (0..n as u32).collect();
                vec![
                    Perm::from_cycles(n, &[&[0, 1]]).expect("degree at least 2"),
                    Perm::from_cycles(n, &[&cycle]).expect("degree at least 2"),
                ]
            }
            KStructure::Chain(k) => k.generators().to_vec(),
            KStructure::Wreath(w) => w.generators(),
        }
    }
}

/// `K = aut(Γ)` by the first applicable strategy.
pub fn aut_group(gamma: &CayleyGraph, budget: &Budget) -> Result<AutResult> {
    if !gamma.is_central() {
        return Err(Error::NotNormal);
    }
    let g = gamma.group();
    if gamma.is_empty_graph() || gamma.is_complete_graph() {
        return aut_group_with(gamma, Strategy::CompleteEmpty, budget);
    }
    if g.is_simple() {
        return aut_group_with(gamma, Strategy::SimpleD2Filter, budget);
    }
    if let Some(w) = find_wreath(gamma) {
        return Ok(wreath_result(w));
    }
    aut_group_with(gamma, Strategy::RefinementBacktrack, budget)
}

/// `K` by a chosen strategy, for cross-checks. Strategies that do not apply
/// return `UnsupportedGroup`.
pub fn aut_group_with(gamma: &CayleyGraph, strategy: Strategy, budget: &Budget) -> Result<AutResult> {
    let g = gamma.group();
    match strategy {
        Strategy::CompleteEmpty => {
            if !(gamma.is_empty_graph() || gamma.is_complete_graph()) {
                return Err(Error::UnsupportedGroup("graph is neither empty nor complete".into()));
            }
            Ok(AutResult {
                structure: KStructure::Symmetric { degree: g.order() },
                strategy,
                exact: true,
                certificates: Certificates::default(),
            })
        }
        Strategy::SimpleD2Filter => {
            if !g.is_simple() {
                return Err(Error::UnsupportedGroup(format!("{} is not simple", g.name())));
            }
            d2_filter(gamma)
        }
        Strategy::SymmetricWreath => find_wreath(gamma)
            .map(wreath_result)
            .ok_or_else(|| Error::UnsupportedGroup("no wreath decomposition".into())),
        Strategy::RefinementBacktrack => refinement(gamma, budget),
    }
}

fn wreath_result(w: WreathCertificate) -> AutResult {
    AutResult {
        structure: KStructure::Wreath(w),
        strategy: Strategy::SymmetricWreath,
        exact: true,
        certificates: Certificates::default(),
    }
}

/// Every element of `D(2,G)` is `sigma^e phi w_r`, and `w_r` is always an
/// automorphism, so testing the `2|aut(G)|` elements `sigma^e phi` that fix
/// the identity decides every element.
fn d2_filter(gamma: &CayleyGraph) -> Result<AutResult> {
    let g = gamma.group();
    let n = g.order();
    let aut = g.automorphisms();
    let passing: Vec<(u8, usize)> = (0..2u8)
        .flat_map(|e| (0..aut.len()).map(move |i| (e, i)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&(e, i)| {
            let table = aut.table(g, i);
            if e == 0 {
                gamma.preserves_arcs(|x| table[x as usize])
            } else {
                gamma.preserves_arcs(|x| table[g.inv(x) as usize])
            }
        })
        .collect();
    let sigma = inversion_perm(g);
    let mut gens: Vec<Perm> = g.generators().iter().map(|&s| right_mult(g, s)).collect();
    let mut k = PermGroup::with_base(n, gens.clone(), vec![0])?;
    for &(e, i) in &passing {
        let phi = aut.vertex_perm(g, i);
        let p = if e == 1 { sigma.then(&phi) } else { phi };
        if !k.contains(&p)? {
            gens.push(p);
            k = PermGroup::with_base(n, gens.clone(), vec![0])?;
        }
    }
    let expected = passing.len() as u128 * n as u128;
    if k.order() != expected {
        return Err(Error::Inconsistent(format!(
            "filtered group has order {} but {} elements passed",
            k.order(),
            expected
        )));
    }
    let tested = 2 * aut.len() as u64;
    Ok(AutResult {
        structure: KStructure::Chain(k),
        strategy: Strategy::SimpleD2Filter,
        exact: true,
        certificates: Certificates {
            candidates_tested: tested,
            candidates_passed: passing.len() as u64,
            elements_covered: tested * n as u64,
            search_nodes: 0,
            note: None,
        },
    })
}

fn refinement(gamma: &CayleyGraph, budget: &Budget) -> Result<AutResult> {
    let g = gamma.group();
    let seed = g_star(g);
    match ir_search(gamma, seed.generators(), budget) {
        Ok(o) => Ok(AutResult {
            structure: KStructure::Chain(o.group),
            strategy: Strategy::RefinementBacktrack,
            exact: true,
            certificates: Certificates {
                search_nodes: o.nodes,
                candidates_passed: o.found as u64,
                ..Certificates::default()
            },
        }),
        Err(Error::BudgetExceeded(msg)) => Ok(AutResult {
            structure: KStructure::Chain(seed),
            strategy: Strategy::RefinementBacktrack,
            exact: false,
            certificates: Certificates {
                note: Some(msg),
                ..Certificates::default()
            },
        }),
        Err(e) => Err(e),
    }
}

/// Whether every generator of `K` lies in `D(2,G)`.
pub fn generators_in_d2(k: &AutResult, g: &IndexedGroup) -> bool {
    k.generators().iter().all(|p| d2_contains(g, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeKind {
    NormalType,
    SymmetricType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTag {
    pub kind: TypeKind,
    /// The minimal block `L`, a normal subgroup containing the socle.
    pub block: Vec<u32>,
    /// Cosets of `L`.
    pub system: BlockPartition,
}

/// Intersection of the non-singleton blocks of `K` containing the identity,
/// among the normal subgroups containing the socle.
pub fn minimal_block(k: &AutResult, g: &IndexedGroup) -> Vec<u32> {
    let gens = k.generators();
    let mut block: Vec<u32> = (0..g.order() as u32).collect();
    for l in g.normal_subgroups_over_socle() {
        if l.len() < 2 {
            continue;
        }
        let cosets = g.right_cosets(&l);
        if gens.iter().all(|p| cosets.is_preserved_by(p)) {
            block.retain(|x| l.binary_search(x).is_ok());
        }
    }
    block
}

/// Symmetric type iff the kernel on the block system induces the full
/// symmetric group on a block. A group held by a chain has order below
/// `|L|!` for every nonabelian `L`, so it is of normal type.
pub fn classify_type(k: &AutResult, g: &IndexedGroup) -> Result<TypeTag> {
    let block = minimal_block(k, g);
    let system = g.right_cosets(&block);
    let cell: BigUint = (1..=block.len() as u64).map(BigUint::from).product();
    let kind = match &k.structure {
        KStructure::Symmetric { .. } => TypeKind::SymmetricType,
        KStructure::Wreath(w) => {
            if w.subgroup != block {
                return Err(Error::Inconsistent(
                    "wreath blocks differ from the minimal block".into(),
                ));
            }
            TypeKind::SymmetricType
        }
        KStructure::Chain(c) => {
            if c.order() == u128::MAX {
                return Err(Error::BudgetExceeded("group order overflows the chain".into()));
            }
            if BigUint::from(c.order()) < cell {
                TypeKind::NormalType
            } else {
                return Err(Error::Inconsistent(
                    "chain-held group as large as a block symmetric group".into(),
                ));
            }
        }
    };
    Ok(TypeTag {
        kind,
        block,
        system,
    })
}

/// For normal type: the stabilizer of the block `L`, restricted to `L` and
/// read through right translations of `L`, lies in `D(2,L)`.
pub fn block_action_in_d2(k: &AutResult, g: &IndexedGroup, tag: &TypeTag) -> Result<bool> {
    let chain = match k.chain() {
        Some(c) => c,
        None => return Ok(tag.kind == TypeKind::SymmetricType),
    };
    if tag.block.len() == g.order() {
        return Ok(generators_in_d2(k, g));
    }
    let n = g.order();
    let based = PermGroup::with_base(n, chain.generators().to_vec(), vec![0])?;
    let mut gens: Vec<Perm> = based
        .strong_generators()
        .iter()
        .filter(|p| p.apply(0) == 0)
        .cloned()
        .collect();
    let l_elems = &tag.block;
    let l = IndexedGroup::build(&g.subgroup_spec(l_elems))?;
    gens.extend(
        g.subgroup_generators(l_elems)
            .into_iter()
            .map(|s| right_mult(g, s)),
    );
    let to_local: Vec<u32> = l_elems
        .iter()
        .map(|&x| l.index_of(g.element(x)).expect("element of L"))
        .collect();
    let mut from_local = vec![0u32; l.order()];
    for (pos, &x) in l_elems.iter().enumerate() {
        from_local[to_local[pos] as usize] = x;
    }
    let pos_of = |x: u32| l_elems.binary_search(&x).expect("block preserved");
    for p in &gens {
        let images: Vec<u32> = (0..l.order() as u32)
            .map(|y| to_local[pos_of(p.apply(from_local[y as usize]))])
            .collect();
        let restricted = Perm::from_images(images)?;
        if !d2_contains(&l, &restricted) {
            return Ok(false);
        }
    }
    Ok(true)
}
