use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0..n-1}` stored as its image table.
///
/// Points are acted on from the right: `point^(p*q) = (point^p)^q`, so
/// [`Perm::then`] is the group product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from an image table, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("image table is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Permutation from disjoint or overlapping 0-based cycles, applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut p = Perm::identity(degree);
        for cycle in cycles {
            let mut c = Perm::identity(degree);
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::Parse(format!("point {} out of range", a.max(b) + 1)));
                }
                c.images[a as usize] = b;
            }
            let c = Perm::from_images(c.images)?;
            p = p.then(&c);
        }
        Ok(p)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    /// `self * other`: first `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[other.images[i] as usize] = other.images[x as usize];
        }
        Perm { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| i as u32 == x)
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Cycle lengths (including fixed points), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn is_even(&self) -> bool {
        let ct = self.cycle_type();
        ct.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Parses 1-based cycle notation such as `"(1 2)(3 4)"`; `"()"` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation string".into()));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let v: usize = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad point {s:?}")))?;
                    if v == 0 || v > degree {
                        return Err(Error::Parse(format!("point {v} outside 1..={degree}")));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if used[p] {
                    return Err(Error::Parse(format!("repeated point {} in {text:?}", p + 1)));
                }
                used[p] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm { images })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let p = Perm::parse("(1 2)(3 4)", 5).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2, 4]);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert!(Perm::parse("()", 3).unwrap().is_identity());
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn parse_rejects_repeats_and_range() {
        assert!(Perm::parse("(1 2)(2 3)", 4).is_err());
        assert!(Perm::parse("(1 1)", 4).is_err());
        assert!(Perm::parse("(1 5)", 4).is_err());
        assert!(Perm::parse("1 2", 4).is_err());
    }

    #[test]
    fn action_is_left_to_right() {
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        let ab = a.then(&b);
        // 0 -a-> 1 -b-> 2
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.apply(0), b.apply(a.apply(0)));
    }

    #[test]
    fn conjugation_matches_definition() {
        let g = Perm::parse("(1 2 3)", 3).unwrap();
        let x = Perm::parse("(2 3)", 3).unwrap();
        assert_eq!(g.conjugate_by(&x), x.inverse().then(&g).then(&x));
        assert_eq!(g.conjugate_by(&x).to_string(), "(1 3 2)");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_associativity(p in arb_perm(9), q in arb_perm(9), r in arb_perm(9)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
        }

        #[test]
        fn text_round_trip(p in arb_perm(12)) {
            prop_assert_eq!(Perm::parse(&p.to_string(), 12).unwrap(), p);
        }
    }
}
