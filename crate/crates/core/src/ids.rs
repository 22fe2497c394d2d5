//! Stable vertex and edge identifiers.
//!
//! Identifiers are opaque string tokens. They order "naturally": a shared
//! alphabetic prefix followed by a decimal suffix compares numerically, so
//! `v2 < v10`. Fresh ids minted by a graph never collide with ids the graph
//! has carried before.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn split_suffix(s: &str) -> (&str, Option<u64>) {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits > 18 {
        return (s, None);
    }
    let (head, tail) = s.split_at(s.len() - digits);
    (head, tail.parse().ok())
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (pa, na) = split_suffix(a);
    let (pb, nb) = split_suffix(b);
    pa.cmp(pb).then(na.cmp(&nb)).then_with(|| a.cmp(b))
}

/// Numeric suffix of an identifier, if it has one.
pub(crate) fn numeric_suffix(s: &str) -> Option<u64> {
    split_suffix(s).1
}

macro_rules! id_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(s: impl AsRef<str>) -> Self {
                Self(Arc::from(s.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                natural_cmp(&self.0, &other.0)
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(Arc::from(s))
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                String::deserialize(d).map(Self::from)
            }
        }
    };
}

id_type!(VertexId, "Identifier of a vertex, stable across moves.");
id_type!(EdgeId, "Identifier of an edge, stable across moves.");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut ids: Vec<VertexId> = ["v10", "v2", "a", "v1", "n3", "b"]
            .into_iter()
            .map(VertexId::from)
            .collect();
        ids.sort();
        let names: Vec<&str> = ids.iter().map(|v| v.as_str()).collect();
        assert_eq!(names, ["a", "b", "n3", "v1", "v2", "v10"]);
    }

    #[test]
    fn suffix() {
        assert_eq!(numeric_suffix("e17"), Some(17));
        assert_eq!(numeric_suffix("abc"), None);
        assert_eq!(numeric_suffix("7"), Some(7));
    }
}
