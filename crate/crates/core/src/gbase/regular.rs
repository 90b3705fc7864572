use crate::atlas::{left_mult, right_mult, IndexedGroup};
use crate::cayley::equivariant_bijection;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

/// Regular subgroups handled element by element up to this degree.
pub const ELEMENTWISE_LIMIT: usize = 5000;

/// A regular subgroup `H` of `sym(G)` with an isomorphism onto `G_r`:
/// the `i`-th generator corresponds to right multiplication by `images[i]`.
#[derive(Clone, Debug)]
pub struct RegSubgroup {
    pub group: PermGroup,
    pub images: Vec<u32>,
    pub label: String,
    f0: Vec<u32>,
}

impl RegSubgroup {
    /// Checks that `group` is regular and the generator map extends to an
    /// isomorphism onto `G_r`.
    pub fn new(g: &IndexedGroup, group: PermGroup, images: Vec<u32>, label: &str) -> Result<Self> {
        let f0 = equivariant_bijection(g, &group, &images)?;
        Ok(RegSubgroup {
            group,
            images,
            label: label.to_string(),
            f0,
        })
    }

    pub fn right_regular(g: &IndexedGroup) -> Self {
        let gens = g.generators().iter().map(|&s| right_mult(g, s)).collect();
        let group = PermGroup::new(g.order(), gens).expect("degree n");
        RegSubgroup::new(g, group, g.generators().to_vec(), "G_r").expect("G_r is regular")
    }

    /// `G_l` with `g_l -> g_r`.
    pub fn left_regular(g: &IndexedGroup) -> Self {
        let gens = g.generators().iter().map(|&s| left_mult(g, s)).collect();
        let group = PermGroup::new(g.order(), gens).expect("degree n");
        RegSubgroup::new(g, group, g.generators().to_vec(), "G_l").expect("G_l is regular")
    }

    pub fn degree(&self) -> usize {
        self.f0.len()
    }

    pub fn generators(&self) -> &[Perm] {
        self.group.generators()
    }

    /// The bijection `f_0` with `f_0(0) = e` conjugating `H` onto `G_r`.
    pub fn f0(&self) -> &[u32] {
        &self.f0
    }

    /// Membership without a stabilizer chain: `p` is in `H` iff it acts as
    /// right multiplication by `f_0(0^p)` through `f_0`.
    pub fn contains(&self, g: &IndexedGroup, p: &Perm) -> bool {
        let n = self.degree();
        if p.degree() != n {
            return false;
        }
        let w = self.f0[p.apply(0) as usize];
        let inv = self.f0_inverse();
        (0..n as u32).all(|a| p.apply(a) == inv[g.mult(self.f0[a as usize], w) as usize])
    }

    pub fn f0_inverse(&self) -> Vec<u32> {
        let mut inv = vec![0u32; self.f0.len()];
        for (a, &x) in self.f0.iter().enumerate() {
            inv[x as usize] = a as u32;
        }
        inv
    }

    /// The element of `H` taking `0` to `point`.
    pub fn element_at(&self, g: &IndexedGroup, point: u32) -> Perm {
        let inv = self.f0_inverse();
        let w = self.f0[point as usize];
        Perm::from_images((0..self.degree() as u32).map(|a| inv[g.mult(self.f0[a as usize], w) as usize]).collect())
            .expect("regular action")
    }

    /// Same subgroup of `sym(G)`.
    pub fn same_group(&self, g: &IndexedGroup, other: &RegSubgroup) -> bool {
        other.generators().iter().all(|p| self.contains(g, p))
    }
}

/// Orders of `ab`, `ab^-1`, `[a,b]`, `a^2 b`, `ab^2`.
pub(crate) fn pair_profile(a: &Perm, b: &Perm) -> [u64; 5] {
    let ab = a.then(b);
    let ai = a.inverse();
    let bi = b.inverse();
    [
        ab.order(),
        a.then(&bi).order(),
        ai.then(&bi).then(&ab).order(),
        a.then(&ab).order(),
        ab.then(b).order(),
    ]
}

/// The same profile computed inside `G`.
pub(crate) fn group_pair_profile(g: &IndexedGroup, a: u32, b: u32) -> [u64; 5] {
    pair_profile(g.element(a), g.element(b))
}

/// Generator tuples of a regular subgroup matching the canonical generators
/// of `G`: an isomorphism `G -> H` given by images, if one exists.
pub fn find_isomorphism(g: &IndexedGroup, h: &PermGroup, label: &str) -> Result<Option<RegSubgroup>> {
    let n = g.order();
    if h.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: h.degree(),
        });
    }
    if n > ELEMENTWISE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "isomorphism search limited to degree {ELEMENTWISE_LIMIT}"
        )));
    }
    if h.order() != n as u128 || !h.is_transitive() {
        return Ok(None);
    }
    let based = PermGroup::with_base(n, h.generators().to_vec(), vec![0])?;
    let elements: Vec<Perm> = (0..n as u32)
        .map(|p| based.transversal_element(0, p).expect("transitive"))
        .collect();
    let orders: Vec<u64> = elements.iter().map(|p| p.order()).collect();
    let gens = g.generators();
    let by_position: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..n).filter(|&i| orders[i] == g.element_order(s)).collect())
        .collect();
    let profiles: Vec<Vec<[u64; 5]>> = (0..gens.len())
        .map(|j| (0..j).map(|i| group_pair_profile(g, gens[i], gens[j])).collect())
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    Ok(search_tuple(g, &elements, &by_position, &profiles, &mut chosen, label))
}

fn search_tuple(
    g: &IndexedGroup,
    elements: &[Perm],
    by_position: &[Vec<usize>],
    profiles: &[Vec<[u64; 5]>],
    chosen: &mut Vec<usize>,
    label: &str,
) -> Option<RegSubgroup> {
    let j = chosen.len();
    if j == by_position.len() {
        let gens: Vec<Perm> = chosen.iter().map(|&i| elements[i].clone()).collect();
        let group = PermGroup::new(g.order(), gens).ok()?;
        return RegSubgroup::new(g, group, g.generators().to_vec(), label).ok();
    }
    for &c in &by_position[j] {
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(i, &a)| pair_profile(&elements[a], &elements[c]) == profiles[j][i]);
        if !fits {
            continue;
        }
        chosen.push(c);
        if let Some(r) = search_tuple(g, elements, by_position, profiles, chosen, label) {
            return Some(r);
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> IndexedGroup {
        IndexedGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn standard_regular_subgroups() {
        let g = build("sym:4");
        let r = RegSubgroup::right_regular(&g);
        let l = RegSubgroup::left_regular(&g);
        assert!(r.f0().iter().enumerate().all(|(i, &x)| i as u32 == x));
        assert!(l.f0().iter().enumerate().all(|(i, &x)| g.inv(i as u32) == x));
        assert!(!r.same_group(&g, &l));
        assert!(r.same_group(&g, &r.clone()));
        for p in 0..24 {
            let e = l.element_at(&g, p);
            assert!(l.contains(&g, &e));
            assert_eq!(e.apply(0), p);
        }
    }

    #[test]
    fn isomorphism_search() {
        let g = build("alt:5");
        let gl = RegSubgroup::left_regular(&g);
        let found = find_isomorphism(&g, &gl.group, "found").unwrap().unwrap();
        assert!(found.same_group(&g, &gl));
        assert!(gl.same_group(&g, &found));

        // a regular group not isomorphic to alt 5: cyclic of order 60
        let cycle: Vec<u32> = (0..60).collect();
        let c60 = PermGroup::new(60, vec![Perm::from_cycles(60, &[&cycle]).unwrap()]).unwrap();
        assert!(find_isomorphism(&g, &c60, "x").unwrap().is_none());
        assert!(RegSubgroup::new(&g, c60, vec![g.generators()[0]], "x").is_err());
    }
}
