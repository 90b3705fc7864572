use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm_core::Perm;

pub const SUPPORTED_PSL2_Q: [u32; 7] = [4, 5, 7, 8, 9, 11, 13];

/// Which group to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Psl2(u32),
    Raw { degree: usize, generators: Vec<Perm> },
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Sym(m) | GroupSpec::Alt(m) if m < 3 => {
                Err(Error::InvalidSpec(format!("sym/alt need m >= 3, got {m}")))
            }
            GroupSpec::Psl2(q) if !SUPPORTED_PSL2_Q.contains(&q) => Err(Error::InvalidSpec(
                format!("psl2 q must be one of {SUPPORTED_PSL2_Q:?}, got {q}"),
            )),
            GroupSpec::Raw { degree, ref generators } => {
                if generators.iter().any(|g| g.degree() != degree) {
                    return Err(Error::InvalidSpec("raw generators differ in degree".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Degree of the defining permutation representation.
    pub fn degree(&self) -> usize {
        match *self {
            GroupSpec::Sym(m) | GroupSpec::Alt(m) => m,
            GroupSpec::Psl2(q) => q as usize + 1,
            GroupSpec::Raw { degree, .. } => degree,
        }
    }

    /// Defining generators, sorted by image table.
    pub fn generators(&self) -> Result<Vec<Perm>> {
        self.validate()?;
        let mut gens = match self {
            GroupSpec::Sym(m) => {
                let m = *m;
                let cycle: Vec<u32> = (0..m as u32).collect();
                vec![
                    Perm::from_cycles(m, &[&[0, 1]])?,
                    Perm::from_cycles(m, &[&cycle])?,
                ]
            }
            GroupSpec::Alt(m) => {
                let m = *m;
                let long: Vec<u32> = if m % 2 == 1 {
                    (0..m as u32).collect()
                } else {
                    (1..m as u32).collect()
                };
                let mut v = vec![Perm::from_cycles(m, &[&[0, 1, 2]])?];
                if m > 3 {
                    v.push(Perm::from_cycles(m, &[&long])?);
                }
                v
            }
            GroupSpec::Psl2(q) => psl2_generators(*q),
            GroupSpec::Raw { generators, .. } => generators.clone(),
        };
        gens.retain(|g| !g.is_identity());
        gens.sort();
        gens.dedup();
        Ok(gens)
    }

    /// Reads one permutation per line (cycle notation, 1-based). The degree is
    /// the largest point mentioned.
    pub fn from_raw_file(path: &Path) -> Result<GroupSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
        GroupSpec::from_raw_text(&text)
    }

    pub fn from_raw_text(text: &str) -> Result<GroupSpec> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let degree = lines
            .iter()
            .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()))
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        let generators = lines
            .iter()
            .map(|l| Perm::parse(l, degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec::Raw { degree, generators })
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("expected <family>:<arg>, got {s:?}")))?;
        let int = |a: &str| {
            a.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidSpec(format!("bad parameter {a:?}")))
        };
        let spec = match family.trim() {
            "sym" => GroupSpec::Sym(int(arg)? as usize),
            "alt" => GroupSpec::Alt(int(arg)? as usize),
            "psl2" => GroupSpec::Psl2(int(arg)?),
            "raw" => GroupSpec::from_raw_file(Path::new(arg.trim()))?,
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(m) => write!(f, "sym:{m}"),
            GroupSpec::Alt(m) => write!(f, "alt:{m}"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Raw { degree, generators } => {
                write!(f, "raw[degree {degree}, {} generators]", generators.len())
            }
        }
    }
}

/// Arithmetic in GF(p^k) for the few small fields the psl2 family needs.
/// Elements are encoded as base-p digit strings of polynomial coefficients.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SmallField {
    p: u32,
    k: u32,
    /// Coefficients of the monic modulus below the leading term, low degree first.
    modulus: [u32; 3],
}

impl SmallField {
    pub fn new(q: u32) -> SmallField {
        match q {
            4 => SmallField { p: 2, k: 2, modulus: [1, 1, 0] },  // x^2 + x + 1
            8 => SmallField { p: 2, k: 3, modulus: [1, 1, 0] },  // x^3 + x + 1
            9 => SmallField { p: 3, k: 2, modulus: [1, 0, 0] },  // x^2 + 1
            p => SmallField { p, k: 1, modulus: [0, 0, 0] },
        }
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.k)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&d)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // Reduce with x^k = -(modulus).
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus.iter().take(k).enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + c * (self.p - m % self.p)) % self.p;
            }
        }
        self.encode(&prod[..k])
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        (1..self.size())
            .find(|&b| self.mul(a, b) == 1)
            .expect("field element invertible")
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        let q = self.size();
        (2..q)
            .find(|&w| {
                let mut x = 1;
                for e in 1..q - 1 {
                    x = self.mul(x, w);
                    if x == 1 && e < q - 1 {
                        return false;
                    }
                }
                true
            })
            .unwrap_or(1)
    }
}

/// Generators of PSL(2,q) acting on the projective line `{0..q-1} ∪ {∞ = q}`:
/// `z -> z+1`, `z -> -1/z`, and `z -> w^2 z` for a primitive `w`.
fn psl2_generators(q: u32) -> Vec<Perm> {
    let f = SmallField::new(q);
    let inf = q;
    let mobius = |a: u32, b: u32, c: u32, d: u32| -> Perm {
        let images = (0..=q)
            .map(|z| {
                if z == inf {
                    if c == 0 {
                        inf
                    } else {
                        f.mul(a, f.inv(c))
                    }
                } else {
                    let num = f.add(f.mul(a, z), b);
                    let den = f.add(f.mul(c, z), d);
                    if den == 0 {
                        inf
                    } else {
                        f.mul(num, f.inv(den))
                    }
                }
            })
            .collect();
        Perm::from_images(images).expect("Mobius map is a bijection")
    };
    let one = 1;
    let minus_one = f.neg(1);
    let w = f.primitive();
    let w2 = f.mul(w, w);
    let mut gens = vec![mobius(one, one, 0, one), mobius(0, minus_one, one, 0)];
    if q != 5 && q != 7 && q != 11 && q != 13 {
        gens.push(mobius(w2, 0, 0, one));
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("sym:5".parse::<GroupSpec>().unwrap(), GroupSpec::Sym(5));
        assert_eq!("alt:6".parse::<GroupSpec>().unwrap(), GroupSpec::Alt(6));
        assert_eq!("psl2:7".parse::<GroupSpec>().unwrap(), GroupSpec::Psl2(7));
        assert!("sym:2".parse::<GroupSpec>().is_err());
        assert!("psl2:6".parse::<GroupSpec>().is_err());
        assert!("foo:3".parse::<GroupSpec>().is_err());
        assert!("sym".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn raw_text() {
        let spec = GroupSpec::from_raw_text("(1 2)\n# comment\n(1 2 3 4 5)\n").unwrap();
        match spec {
            GroupSpec::Raw { degree, generators } => {
                assert_eq!(degree, 5);
                assert_eq!(generators.len(), 2);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn field_axioms_small() {
        for q in [4u32, 8, 9, 7] {
            let f = SmallField::new(q);
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            let w = f.primitive();
            let mut x = 1;
            let mut seen = std::collections::HashSet::new();
            for _ in 0..q - 1 {
                x = f.mul(x, w);
                seen.insert(x);
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }
}
