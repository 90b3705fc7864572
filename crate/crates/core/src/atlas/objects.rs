//! Permutations of the vertex set `G` built from the group structure.
//!
//! Conventions: `g_r: x -> x*g`, `g_l: x -> g^-1 * x`, `sigma: x -> x^-1`.
//! With points acted on from the right both `g -> g_r` and `g -> g_l` are
//! homomorphisms, and `sigma * z_r * sigma = z_l`.

use super::indexed::IndexedGroup;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

pub fn right_mult(g: &IndexedGroup, a: u32) -> Perm {
    let n = g.order() as u32;
    Perm::from_images_unchecked((0..n).map(|x| g.mult(x, a)).collect())
}

pub fn left_mult(g: &IndexedGroup, a: u32) -> Perm {
    let n = g.order() as u32;
    let ai = g.inv(a);
    Perm::from_images_unchecked((0..n).map(|x| g.mult(ai, x)).collect())
}

/// `g_l * h_r`: `x -> g^-1 x h`.
pub fn left_right(g: &IndexedGroup, a: u32, b: u32) -> Perm {
    let n = g.order() as u32;
    let ai = g.inv(a);
    Perm::from_images_unchecked((0..n).map(|x| g.mult(g.mult(ai, x), b)).collect())
}

/// `(G_l, G_r)` generated by the images of the canonical generators.
pub fn regular_actions(g: &IndexedGroup) -> (PermGroup, PermGroup) {
    let n = g.order();
    let gl = g.generators().iter().map(|&s| left_mult(g, s)).collect();
    let gr = g.generators().iter().map(|&s| right_mult(g, s)).collect();
    (
        PermGroup::new(n, gl).expect("degree n"),
        PermGroup::new(n, gr).expect("degree n"),
    )
}

/// `G* = <G_l, G_r>`.
pub fn g_star(g: &IndexedGroup) -> PermGroup {
    let n = g.order();
    let mut gens: Vec<Perm> = g.generators().iter().map(|&s| left_mult(g, s)).collect();
    gens.extend(g.generators().iter().map(|&s| right_mult(g, s)));
    PermGroup::new(n, gens).expect("degree n")
}

/// `sigma: x -> x^-1`.
pub fn inversion_perm(g: &IndexedGroup) -> Perm {
    let n = g.order() as u32;
    Perm::from_images_unchecked((0..n).map(|x| g.inv(x)).collect())
}

/// `D(2,G) = <sigma> ⋉ (aut(G) ⋉ G_r)`, generated by `sigma`, a generating
/// set of `aut(G)` acting on vertices, and the generators of `G_r`.
pub fn d2_group(g: &IndexedGroup) -> PermGroup {
    let n = g.order();
    let aut = g.automorphisms();
    let mut gens = vec![inversion_perm(g)];
    gens.extend(
        aut.generating_set(g)
            .into_iter()
            .map(|i| aut.vertex_perm(g, i)),
    );
    gens.extend(g.generators().iter().map(|&s| right_mult(g, s)));
    PermGroup::new(n, gens).expect("degree n")
}

/// `2 n |aut(G)|`, the order `d2_group` must have.
pub fn d2_expected_order(g: &IndexedGroup) -> u128 {
    2 * g.order() as u128 * g.automorphisms().len() as u128
}

/// `2 n^2 log2 n`.
pub fn d2_order_bound(n: usize) -> f64 {
    let n = n as f64;
    2.0 * n * n * n.log2()
}

/// Structural membership in `D(2,G)`: write `k = sigma^e * phi * w_r` with
/// `phi` fixing the identity and check `phi` is a listed automorphism.
pub fn d2_contains(g: &IndexedGroup, k: &Perm) -> bool {
    d2_decompose(g, k).is_some()
}

/// `(e, automorphism index, w)` with `k = sigma^e * phi * w_r`.
pub fn d2_decompose(g: &IndexedGroup, k: &Perm) -> Option<(u8, usize, u32)> {
    let n = g.order();
    if k.degree() != n {
        return None;
    }
    let aut = g.automorphisms();
    for e in 0..2u8 {
        // q = sigma^e * k
        let q = |x: u32| -> u32 {
            if e == 1 {
                k.apply(g.inv(x))
            } else {
                k.apply(x)
            }
        };
        let w = q(0);
        let wi = g.inv(w);
        let phi = |x: u32| g.mult(q(x), wi);
        let imgs: Vec<u32> = g.generators().iter().map(|&s| phi(s)).collect();
        if let Some(i) = aut.index_of(&imgs) {
            let table = aut.table(g, i);
            if (0..n as u32).all(|x| table[x as usize] == phi(x)) {
                return Some((e, i, w));
            }
        }
    }
    None
}

/// `{ g_l (g^tau)_r : g in G }`, generated from the canonical generators.
pub fn diagonal_subgroup(g: &IndexedGroup, tau: usize) -> PermGroup {
    let aut = g.automorphisms();
    let gens = g
        .generators()
        .iter()
        .map(|&s| left_right(g, s, aut.apply(g, tau, s)))
        .collect();
    PermGroup::new(g.order(), gens).expect("degree n")
}

/// Outcome of the involution search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgsInvolution {
    pub involution: u32,
    /// `|C_aut(t)|`.
    pub aut_centralizer: usize,
    /// `|C_aut(t) ∩ Inn|`.
    pub inner_centralizer: usize,
}

/// An involution `t` with `aut(G) = C_aut(t) Inn(G)`, checked through
/// `|C_aut(t)| * n / |C_aut(t) ∩ Inn| = |aut(G)|`.
pub fn fgs_involution(g: &IndexedGroup) -> Result<FgsInvolution> {
    if !g.is_simple() {
        return Err(Error::UnsupportedGroup(format!(
            "{} is not a nonabelian simple group",
            g.name()
        )));
    }
    let aut = g.automorphisms();
    let n = g.order();
    for class in g.classes().iter().filter(|c| c.element_order == 2) {
        let t = class.representative();
        let fixing: Vec<usize> = (0..aut.len()).filter(|&i| aut.apply(g, i, t) == t).collect();
        let inner = fixing.iter().filter(|&&i| aut.is_inner(i)).count();
        if fixing.len() * n == aut.len() * inner {
            return Ok(FgsInvolution {
                involution: t,
                aut_centralizer: fixing.len(),
                inner_centralizer: inner,
            });
        }
    }
    Err(Error::NoSuchInvolution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> IndexedGroup {
        IndexedGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_translations_are_trivial() {
        let g = build("sym:4");
        assert!(right_mult(&g, 0).is_identity());
        assert!(left_mult(&g, 0).is_identity());
    }

    #[test]
    fn sym3_regular_actions() {
        let g = build("sym:3");
        let (gl, gr) = regular_actions(&g);
        assert_eq!(gl.order(), 6);
        assert_eq!(gr.order(), 6);
        assert!(gl.is_regular() && gr.is_regular());
        assert_eq!(g_star(&g).order(), 36);
    }

    #[test]
    fn left_and_right_commute() {
        let g = build("alt:5");
        for &a in g.generators() {
            for &b in g.generators() {
                let l = left_mult(&g, a);
                let r = right_mult(&g, b);
                assert_eq!(l.then(&r), r.then(&l));
            }
        }
        // homomorphisms under left-to-right composition
        let (a, b) = (g.generators()[0], g.generators()[1]);
        assert_eq!(left_mult(&g, a).then(&left_mult(&g, b)), left_mult(&g, g.mult(a, b)));
        assert_eq!(right_mult(&g, a).then(&right_mult(&g, b)), right_mult(&g, g.mult(a, b)));
    }

    #[test]
    fn inversion_properties() {
        let g = build("sym:5");
        let s = inversion_perm(&g);
        assert_eq!(s.apply(0), 0);
        assert!(s.then(&s).is_identity());
        let a5 = build("alt:5");
        let s = inversion_perm(&a5);
        let z = a5.index_of(&Perm::parse("(1 2 3)", 5).unwrap()).unwrap();
        assert_eq!(s.then(&right_mult(&a5, z)).then(&s), left_mult(&a5, z));
    }

    #[test]
    fn d2_orders() {
        let g = build("alt:5");
        let d2 = d2_group(&g);
        assert_eq!(d2.order(), 14400);
        assert_eq!(d2_expected_order(&g), 14400);
        assert!(14400.0 <= d2_order_bound(60));
        let (gl, _) = regular_actions(&g);
        for p in gl.generators() {
            assert!(d2.contains(p).unwrap());
            assert!(d2_contains(&g, p));
        }
        assert_eq!(d2_group(&build("sym:5")).order(), 28800);
    }

    #[test]
    fn d2_structural_membership_matches_chain() {
        let g = build("alt:5");
        let d2 = d2_group(&g);
        for (i, p) in d2.elements(20_000).unwrap().enumerate() {
            if i % 37 == 0 {
                assert!(d2_contains(&g, &p));
            }
        }
        let (gl, gr) = regular_actions(&g);
        // A transposition of two vertices is not in D(2,G).
        let mut img: Vec<u32> = (0..60).collect();
        img.swap(3, 4);
        let bad = Perm::from_images(img).unwrap();
        assert!(!d2_contains(&g, &bad));
        assert!(!d2.contains(&bad).unwrap());
        assert!(d2_contains(&g, &gl.generators()[0].then(&gr.generators()[1])));
    }

    #[test]
    fn fgs_for_alt5() {
        let g = build("alt:5");
        let f = fgs_involution(&g).unwrap();
        assert_eq!(g.element_order(f.involution), 2);
        assert_eq!(f.aut_centralizer, 8);
        assert_eq!(f.inner_centralizer, 4);
        assert_eq!(f.aut_centralizer * 60 / f.inner_centralizer, 120);
    }

    #[test]
    fn diagonal_fixes_identity_for_trivial_tau() {
        let g = build("alt:5");
        let d = diagonal_subgroup(&g, 0);
        assert_eq!(d.order(), 60);
        assert!(d.generators().iter().all(|p| p.apply(0) == 0));
        assert!(!d.is_semiregular());
    }
}
