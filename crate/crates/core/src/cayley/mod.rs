//! Cayley graphs over an indexed group. Arcs are `(u, x*u)` for `x` in the
//! connection set; adjacency is a multiplication and a bit test.

mod connection;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atlas::IndexedGroup;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

pub use connection::{named_set, ConnectionSpec, NamedSet};

/// Seed for the sampled arc checks.
pub const SAMPLE_SEED: u64 = 0x5eed_ca11;

/// Witness checks are exhaustive up to this many vertices.
const FULL_CHECK_LIMIT: usize = 1000;

#[derive(Clone)]
pub struct CayleyGraph<'g> {
    group: &'g IndexedGroup,
    connection: FixedBitSet,
    members: Vec<u32>,
}

impl std::fmt::Debug for CayleyGraph<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CayleyGraph")
            .field("group", &self.group.name())
            .field("connection", &self.members)
            .finish()
    }
}

impl<'g> CayleyGraph<'g> {
    pub fn new(group: &'g IndexedGroup, x: &[u32]) -> Result<Self> {
        let n = group.order();
        let mut connection = FixedBitSet::with_capacity(n);
        for &s in x {
            if s as usize >= n {
                return Err(Error::Parse(format!("element index {s} out of range")));
            }
            if s == 0 {
                return Err(Error::IdentityInConnection);
            }
            connection.insert(s as usize);
        }
        let members = connection.ones().map(|i| i as u32).collect();
        Ok(CayleyGraph {
            group,
            connection,
            members,
        })
    }

    pub fn group(&self) -> &'g IndexedGroup {
        self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The connection set, sorted.
    pub fn connection(&self) -> &[u32] {
        &self.members
    }

    #[inline]
    pub fn in_connection(&self, x: u32) -> bool {
        self.connection.contains(x as usize)
    }

    #[inline]
    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.in_connection(self.group.mult(v, self.group.inv(u)))
    }

    pub fn out_neighbors(&self, u: u32) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().map(move |&x| self.group.mult(x, u))
    }

    pub fn in_neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.members
            .iter()
            .map(move |&x| self.group.mult(self.group.inv(x), v))
    }

    pub fn out_degree(&self) -> usize {
        self.members.len()
    }

    pub fn arc_count(&self) -> usize {
        self.order() * self.members.len()
    }

    pub fn is_central(&self) -> bool {
        self.group.is_normal_subset(&self.members)
    }

    /// `X = X^-1`, i.e. the graph is undirected.
    pub fn is_inverse_closed(&self) -> bool {
        self.members
            .iter()
            .all(|&x| self.in_connection(self.group.inv(x)))
    }

    pub fn is_empty_graph(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_complete_graph(&self) -> bool {
        self.members.len() + 1 == self.order()
    }

    /// Checks every arc; both graphs have `n |X|` arcs, so arcs mapping to
    /// arcs is enough.
    pub fn is_automorphism(&self, p: &Perm) -> Result<bool> {
        let n = self.order();
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: p.degree(),
            });
        }
        Ok(self.preserves_arcs(|u| p.apply(u)))
    }

    pub(crate) fn preserves_arcs(&self, f: impl Fn(u32) -> u32) -> bool {
        (0..self.order() as u32).all(|u| {
            let fu = f(u);
            let fui = self.group.inv(fu);
            self.out_neighbors(u)
                .all(|v| self.in_connection(self.group.mult(f(v), fui)))
        })
    }

    /// The Cayley representation of this graph induced by a regular
    /// subgroup `h` and the images `images[i]` in `G` of its generators,
    /// standing for the isomorphism `h.generators()[i] -> (images[i])_r`.
    pub fn associated_representation(
        &self,
        h: &PermGroup,
        images: &[u32],
    ) -> Result<Representation> {
        let f0 = equivariant_bijection(self.group, h, images)?;
        let mut connection: Vec<u32> = self.members.iter().map(|&x| f0[x as usize]).collect();
        connection.sort_unstable();
        let rep = Representation { f0, connection };
        if !rep.witness_holds(self) {
            return Err(Error::NotIsomorphism(
                "f_0 does not carry the graph onto its representation".into(),
            ));
        }
        Ok(rep)
    }
}

/// The bijection `f_0` with `f_0(0) = e` and `f_0(a^h) = f_0(a) f(h)`, where
/// `f` sends the `i`-th generator of `h` to right multiplication by `images[i]`.
/// Fails unless `h` is regular and `f` is an isomorphism onto `G_r`.
pub fn equivariant_bijection(g: &IndexedGroup, h: &PermGroup, images: &[u32]) -> Result<Vec<u32>> {
    let n = g.order();
    if h.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: h.degree(),
        });
    }
    if images.len() != h.generators().len() {
        return Err(Error::NotIsomorphism("one image per generator required".into()));
    }
    let mut f0 = vec![u32::MAX; n];
    let mut hit = vec![false; n];
    f0[0] = 0;
    hit[0] = true;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        let fa = f0[a as usize];
        for (s, &img) in h.generators().iter().zip(images) {
            let b = s.apply(a);
            let fb = g.mult(fa, img);
            match f0[b as usize] {
                u32::MAX => {
                    if hit[fb as usize] {
                        return Err(Error::NotIsomorphism("map is not injective".into()));
                    }
                    hit[fb as usize] = true;
                    f0[b as usize] = fb;
                    queue.push(b);
                }
                prev if prev != fb => {
                    return Err(Error::NotIsomorphism(
                        "generator images violate a relation".into(),
                    ))
                }
                _ => {}
            }
        }
        i += 1;
    }
    if queue.len() != n {
        return Err(Error::NotRegular);
    }
    Ok(f0)
}

/// A Cayley representation `cay(G, X')` together with the vertex bijection
/// `f_0` onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub f0: Vec<u32>,
    pub connection: Vec<u32>,
}

impl Representation {
    /// Arcs of `gamma` map to arcs of `cay(G, X')`: all of them for small
    /// graphs, a seeded one percent sample otherwise.
    pub fn witness_holds(&self, gamma: &CayleyGraph) -> bool {
        let g = gamma.group();
        let n = g.order();
        let target = match CayleyGraph::new(g, &self.connection) {
            Ok(t) => t,
            Err(_) => return false,
        };
        if target.out_degree() != gamma.out_degree() {
            return false;
        }
        let f = |u: u32| self.f0[u as usize];
        if n <= FULL_CHECK_LIMIT {
            return (0..n as u32).all(|u| gamma.out_neighbors(u).all(|v| target.has_arc(f(u), f(v))));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let samples = (gamma.arc_count() / 100).max(1);
        let k = gamma.out_degree();
        if k == 0 {
            return true;
        }
        (0..samples).all(|_| {
            let u = rng.gen_range(0..n as u32);
            let x = gamma.connection()[rng.gen_range(0..k)];
            target.has_arc(f(u), f(g.mult(x, u)))
        })
    }
}

/// Whether `x` is a union of conjugacy classes.
pub fn is_central(g: &IndexedGroup, x: &[u32]) -> bool {
    g.is_normal_subset(x)
}

/// Some automorphism `phi` with `x1^phi = x2`, by scanning the automorphism list.
pub fn cayley_isomorphic(g: &IndexedGroup, x1: &[u32], x2: &[u32]) -> Option<usize> {
    let mut target = x2.to_vec();
    target.sort_unstable();
    target.dedup();
    let mut source = x1.to_vec();
    source.sort_unstable();
    source.dedup();
    if source.len() != target.len() {
        return None;
    }
    let n = g.order();
    let mut mask = FixedBitSet::with_capacity(n);
    for &x in &target {
        mask.insert(x as usize);
    }
    let aut = g.automorphisms();
    (0..aut.len()).find(|&i| source.iter().all(|&x| mask.contains(aut.apply(g, i, x) as usize)))
}

/// All transpositions of the defining representation.
pub fn transpositions(g: &IndexedGroup) -> Vec<u32> {
    named_set(g, NamedSet::Transpositions)
}

/// The complete transposition graph over `g`.
pub fn transposition_graph(g: &IndexedGroup) -> Result<CayleyGraph<'_>> {
    let x = transpositions(g);
    if x.is_empty() {
        return Err(Error::UnsupportedGroup(format!(
            "{} contains no transpositions",
            g.name()
        )));
    }
    CayleyGraph::new(g, &x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{inversion_perm, left_mult, regular_actions, right_mult};

    fn build(s: &str) -> IndexedGroup {
        IndexedGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn construction() {
        let g = build("sym:5");
        let empty = CayleyGraph::new(&g, &[]).unwrap();
        assert_eq!(empty.arc_count(), 0);
        assert_eq!(CayleyGraph::new(&g, &[0, 3]).unwrap_err(), Error::IdentityInConnection);

        let gamma = transposition_graph(&g).unwrap();
        assert_eq!(gamma.out_degree(), 10);
        for u in 0..120 {
            assert_eq!(gamma.out_neighbors(u).count(), 10);
            let ins = (0..120).filter(|&v| gamma.has_arc(v, u)).count();
            assert_eq!(ins, 10);
        }
        for t in 1..120 {
            assert_eq!(gamma.has_arc(0, t), gamma.in_connection(t));
        }
        assert!(gamma.is_central() && gamma.is_inverse_closed());
    }

    #[test]
    fn centrality() {
        let g = build("sym:5");
        let t = transpositions(&g);
        assert!(is_central(&g, &t));
        assert!(!is_central(&g, &t[..1]));
        assert!(is_central(&g, &[]));
    }

    #[test]
    fn translations_and_inversion() {
        let g = build("alt:5");
        let five = g.classes().iter().find(|c| c.element_order == 5).unwrap();
        let gamma = CayleyGraph::new(&g, &five.members).unwrap();
        for &s in g.generators() {
            assert!(gamma.is_automorphism(&right_mult(&g, s)).unwrap());
            assert!(gamma.is_automorphism(&left_mult(&g, s)).unwrap());
        }
        assert!(gamma.is_inverse_closed());
        assert!(gamma.is_automorphism(&inversion_perm(&g)).unwrap());

        let p = build("psl2:7");
        let seven = p.classes().iter().find(|c| c.element_order == 7).unwrap();
        let gamma = CayleyGraph::new(&p, &seven.members).unwrap();
        assert!(!gamma.is_inverse_closed());
        assert!(!gamma.is_automorphism(&inversion_perm(&p)).unwrap());
        assert!(gamma.is_automorphism(&Perm::identity(3)).is_err());
    }

    #[test]
    fn representation_of_right_and_left_actions() {
        let g = build("psl2:7");
        let seven = g.classes().iter().find(|c| c.element_order == 7).unwrap();
        let gamma = CayleyGraph::new(&g, &seven.members).unwrap();
        let (gl, gr) = regular_actions(&g);

        let r = gamma.associated_representation(&gr, g.generators()).unwrap();
        assert_eq!(r.connection, gamma.connection());
        assert!(r.f0.iter().enumerate().all(|(i, &x)| i as u32 == x));
        assert_eq!(r, gamma.associated_representation(&gr, g.generators()).unwrap());

        let l = gamma.associated_representation(&gl, g.generators()).unwrap();
        let mut inv: Vec<u32> = gamma.connection().iter().map(|&x| g.inv(x)).collect();
        inv.sort_unstable();
        assert_eq!(l.connection, inv);
        assert!(l.f0.iter().enumerate().all(|(i, &x)| g.inv(i as u32) == x));
    }

    #[test]
    fn representation_rejects_bad_maps() {
        let g = build("alt:5");
        let gamma = CayleyGraph::new(&g, &[]).unwrap();
        let (_, gr) = regular_actions(&g);
        let swapped: Vec<u32> = g.generators().iter().rev().copied().collect();
        assert!(gamma.associated_representation(&gr, &swapped).is_err());
        let small = PermGroup::new(60, vec![right_mult(&g, g.generators()[0])]).unwrap();
        assert!(gamma
            .associated_representation(&small, &g.generators()[..1])
            .is_err());
    }

    #[test]
    fn isomorphic_connection_sets() {
        let g = build("alt:5");
        let fives: Vec<&Vec<u32>> = g
            .classes()
            .iter()
            .filter(|c| c.element_order == 5)
            .map(|c| &c.members)
            .collect();
        assert_eq!(cayley_isomorphic(&g, fives[0], fives[0]), Some(0));
        let phi = cayley_isomorphic(&g, fives[0], fives[1]).unwrap();
        assert!(!g.automorphisms().is_inner(phi));
        assert!(cayley_isomorphic(&g, fives[1], fives[0]).is_some());

        let s = build("sym:5");
        let t = transpositions(&s);
        let dbl = s
            .classes()
            .iter()
            .find(|c| c.cycle_type == vec![2, 2, 1])
            .unwrap();
        assert_eq!(cayley_isomorphic(&s, &t, &dbl.members), None);
    }
}
