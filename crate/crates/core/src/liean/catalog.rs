use serde::{Deserialize, Serialize};

/// How a catalog entry's χ was obtained: read off an exceptional subscript,
/// −dim for a compact form, or dim − 2·dim(mcs) for a classical real form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Subscript,
    Compact,
    Mcs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFormRecord {
    pub name: String,
    pub dim: usize,
    pub chi: i64,
    /// Sorted (dim, χ) of the simple ideals.
    pub ideals: Vec<(usize, i64)>,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcs_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<RealFormRecord>,
}

const BUILTIN: &str = include_str!("../../data/catalog.json");

impl Catalog {
    pub fn builtin() -> Catalog {
        serde_json::from_str(BUILTIN).expect("shipped catalog parses")
    }

    pub fn lookup(&self, dim: usize, chi: i64, ideals: &[(usize, i64)]) -> Option<&RealFormRecord> {
        let mut fp = ideals.to_vec();
        fp.sort_unstable();
        self.entries.iter().find(|e| e.dim == dim && e.chi == chi && e.ideals == fp)
    }

    pub fn by_name(&self, name: &str) -> Option<&RealFormRecord> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_consistent() {
        let c = Catalog::builtin();
        let mut names: Vec<&str> = c.entries.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), c.entries.len(), "names are unique");
        for e in &c.entries {
            let mut sorted = e.ideals.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, e.ideals, "{}", e.name);
            assert_eq!(e.ideals.iter().map(|i| i.0).sum::<usize>(), e.dim, "{}", e.name);
            assert_eq!(e.ideals.iter().map(|i| i.1).sum::<i64>(), e.chi, "{}", e.name);
            assert_eq!((e.dim as i64 - e.chi).rem_euclid(2), 0, "{}", e.name);
            match e.source {
                Source::Compact => assert_eq!(e.chi, -(e.dim as i64)),
                Source::Mcs => assert_eq!(e.chi, e.dim as i64 - 2 * e.mcs_dim.unwrap() as i64, "{}", e.name),
                Source::Subscript => {
                    let sub: i64 = e.name.split(['(', ')']).nth(1).unwrap().parse().unwrap();
                    assert_eq!(sub, e.chi, "{}", e.name);
                }
            }
            for o in &c.entries {
                if o.name != e.name {
                    assert!((o.dim, o.chi, &o.ideals) != (e.dim, e.chi, &e.ideals), "{} vs {}", e.name, o.name);
                }
            }
        }
    }

    #[test]
    fn anchors() {
        let c = Catalog::builtin();
        assert_eq!(c.lookup(248, 8, &[(248, 8)]).unwrap().name, "e8(8)");
        assert_eq!(c.lookup(52, -20, &[(52, -20)]).unwrap().name, "f4(-20)");
        assert_eq!(c.lookup(66, -2, &[(66, -2)]).unwrap().name, "so(8,4)");
        assert_eq!(c.lookup(16, 0, &[(8, 0), (8, 0)]).unwrap().name, "su(2,1)xsu(2,1)");
        assert_eq!(c.lookup(16, 0, &[(16, 0)]).unwrap().name, "sl(3,C)");
        assert!(c.lookup(5, 1, &[(5, 1)]).is_none());
    }
}
