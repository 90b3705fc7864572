use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Builds `x` with `g^x = f(g)` for every generator `g` of `k`, where
/// `images[i] = f(k.generators()[i])` and both groups are semiregular.
///
/// Orbit representatives are the smallest points of each orbit, paired in
/// order; `x` sends `alpha_i^w` to `beta_i^{f(w)}`.
pub fn conjugator_from_isomorphism(k: &PermGroup, m: &PermGroup, images: &[Perm]) -> Result<Perm> {
    let n = k.degree();
    if m.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: m.degree(),
        });
    }
    if images.len() != k.generators().len() {
        return Err(Error::NotIsomorphism("one image per generator required".into()));
    }
    for img in images {
        if img.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: img.degree(),
            });
        }
        if !m.contains(img)? {
            return Err(Error::NotIsomorphism(format!("image {img} not in target group")));
        }
    }
    let k_orbits = k.orbits();
    let m_orbits = m.orbits();
    if k_orbits.num_cells() != m_orbits.num_cells() {
        return Err(Error::OrbitMismatch);
    }
    let mut x = vec![u32::MAX; n];
    let mut hit = vec![false; n];
    for (delta, lambda) in k_orbits.cells().iter().zip(m_orbits.cells()) {
        if delta.len() != lambda.len() {
            return Err(Error::OrbitMismatch);
        }
        let (alpha, beta) = (delta[0], lambda[0]);
        x[alpha as usize] = beta;
        let mut queue = vec![alpha];
        let mut i = 0;
        while i < queue.len() {
            let p = queue[i];
            let xp = x[p as usize];
            for (g, fg) in k.generators().iter().zip(images) {
                let q = g.apply(p);
                let target = fg.apply(xp);
                match x[q as usize] {
                    u32::MAX => {
                        x[q as usize] = target;
                        queue.push(q);
                    }
                    prev if prev != target => {
                        return Err(Error::NotIsomorphism(
                            "generator images violate a relation".into(),
                        ))
                    }
                    _ => {}
                }
            }
            i += 1;
        }
    }
    for &t in &x {
        if t == u32::MAX || std::mem::replace(&mut hit[t as usize], true) {
            return Err(Error::NotIsomorphism("induced point map is not a bijection".into()));
        }
    }
    let x = Perm::from_images(x)?;
    for (g, fg) in k.generators().iter().zip(images) {
        if &g.conjugate_by(&x) != fg {
            return Err(Error::NotIsomorphism("conjugation check failed".into()));
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn identity_map_on_cyclic() {
        let k = PermGroup::new(3, vec![p("(1 2 3)", 3)]).unwrap();
        let x = conjugator_from_isomorphism(&k, &k, &[p("(1 2 3)", 3)]).unwrap();
        assert_eq!(p("(1 2 3)", 3).conjugate_by(&x), p("(1 2 3)", 3));
    }

    #[test]
    fn double_transpositions() {
        let k = PermGroup::new(4, vec![p("(1 2)(3 4)", 4)]).unwrap();
        let m = PermGroup::new(4, vec![p("(1 3)(2 4)", 4)]).unwrap();
        let x = conjugator_from_isomorphism(&k, &m, &[p("(1 3)(2 4)", 4)]).unwrap();
        assert_eq!(p("(1 2)(3 4)", 4).conjugate_by(&x), p("(1 3)(2 4)", 4));
    }

    #[test]
    fn inversion_on_cyclic() {
        let k = PermGroup::new(3, vec![p("(1 2 3)", 3)]).unwrap();
        let x = conjugator_from_isomorphism(&k, &k, &[p("(1 3 2)", 3)]).unwrap();
        assert_eq!(p("(1 2 3)", 3).conjugate_by(&x), p("(1 3 2)", 3));
        assert_eq!(p("(1 2 3)", 3).conjugate_by(&p("(2 3)", 3)), p("(1 3 2)", 3));
    }

    #[test]
    fn orbit_mismatch() {
        let k = PermGroup::new(4, vec![p("(1 2)", 4)]).unwrap();
        let m = PermGroup::new(4, vec![p("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(
            conjugator_from_isomorphism(&k, &m, &[p("(1 2)(3 4)", 4)]),
            Err(Error::OrbitMismatch)
        );
    }

    #[test]
    fn not_an_isomorphism() {
        // C4 -> C4 sending the generator to an involution is not injective.
        let k = PermGroup::new(4, vec![p("(1 2 3 4)", 4)]).unwrap();
        let r = conjugator_from_isomorphism(&k, &k, &[p("(1 3)(2 4)", 4)]);
        assert!(matches!(r, Err(Error::NotIsomorphism(_))));
    }
}
