use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atlas::IndexedGroup;
use crate::error::{Error, Result};
use crate::perm_core::Perm;

/// Connection set as given on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ConnectionSpec {
    /// Elements in cycle notation, taken verbatim.
    Elements(Vec<String>),
    /// One element per class; the full classes are used.
    Classes(Vec<String>),
    Named(NamedSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedSet {
    Transpositions,
    Odd,
    Involutions,
}

impl ConnectionSpec {
    pub fn from_json(text: &str) -> Result<ConnectionSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("connection set: {e}")))
    }

    /// Element indices, sorted and deduplicated.
    pub fn resolve(&self, g: &IndexedGroup) -> Result<Vec<u32>> {
        let lookup = |s: &String| -> Result<u32> {
            let p = Perm::parse(s, g.defining_degree())?;
            g.index_of(&p)
                .ok_or_else(|| Error::Parse(format!("{s} is not an element of {}", g.name())))
        };
        let mut out = match self {
            ConnectionSpec::Elements(v) => v.iter().map(lookup).collect::<Result<Vec<_>>>()?,
            ConnectionSpec::Classes(v) => {
                let seed = v.iter().map(lookup).collect::<Result<Vec<_>>>()?;
                g.normal_subset_closure(&seed)
            }
            ConnectionSpec::Named(n) => named_set(g, *n),
        };
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for ConnectionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConnectionSpec::from_json(s)
    }
}

/// Elements of a named family, read off the defining representation.
pub fn named_set(g: &IndexedGroup, which: NamedSet) -> Vec<u32> {
    (1..g.order() as u32)
        .filter(|&i| {
            let p = g.element(i);
            match which {
                NamedSet::Transpositions => p.cycles().len() == 1 && p.cycles()[0].len() == 2,
                NamedSet::Odd => !p.is_even(),
                NamedSet::Involutions => p.order() == 2,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let g = IndexedGroup::build(&"sym:5".parse().unwrap()).unwrap();
        let e = ConnectionSpec::from_json(r#"{"elements": ["(1 2)"]}"#).unwrap();
        assert_eq!(e.resolve(&g).unwrap().len(), 1);
        let c: ConnectionSpec = r#"{"classes": ["(1 2)", "(1 2 3 4 5)"]}"#.parse().unwrap();
        assert_eq!(c.resolve(&g).unwrap().len(), 34);
        let n = ConnectionSpec::from_json(r#"{"named": "odd"}"#).unwrap();
        assert_eq!(n.resolve(&g).unwrap().len(), 60);
        let i = ConnectionSpec::from_json(r#"{"named": "involutions"}"#).unwrap();
        assert_eq!(i.resolve(&g).unwrap().len(), 25);
        assert!(ConnectionSpec::from_json(r#"{"named": "cubes"}"#).is_err());
        assert!(ConnectionSpec::from_json(r#"{"elements": ["(1 9)"]}"#)
            .unwrap()
            .resolve(&g)
            .is_err());
        let a = IndexedGroup::build(&"alt:5".parse().unwrap()).unwrap();
        assert!(ConnectionSpec::from_json(r#"{"elements": ["(1 2)"]}"#)
            .unwrap()
            .resolve(&a)
            .is_err());
    }
}
