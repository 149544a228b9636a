use crate::error::{Error, Result};
use crate::grading::MultiDegree;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Key of one cohomology-table entry: multidegree, cohomological degree,
/// weight, and (for Tate-type tables) the Frobenius exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct TableKey {
    pub d: MultiDegree,
    pub c: i64,
    pub w: i64,
    pub e: Option<i64>,
}

/// Map `(multidegree, cohomological degree, weight, frobExp) -> dimension`.
/// Absent keys mean dimension zero; stored dimensions are strictly positive.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CohomologyTable {
    entries: BTreeMap<TableKey, u64>,
}

impl CohomologyTable {
    pub fn new() -> Self {
        CohomologyTable::default()
    }

    pub fn insert(&mut self, key: TableKey, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.entries.entry(key).or_insert(0) += dim;
    }

    pub fn dim(&self, key: &TableKey) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, &u64)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(k, &v)| if k.c % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn merge(&mut self, other: &CohomologyTable) {
        for (k, &v) in other.entries() {
            self.insert(k.clone(), v);
        }
    }

    /// Restriction to one multidegree.
    pub fn at(&self, d: &MultiDegree) -> CohomologyTable {
        let mut out = CohomologyTable::new();
        for (k, &v) in &self.entries {
            if &k.d == d {
                out.insert(k.clone(), v);
            }
        }
        out
    }

    /// True if every entry carries a Frobenius exponent.
    pub fn has_full_frob(&self) -> bool {
        self.entries.keys().all(|k| k.e.is_some())
    }

    pub fn num_colors(&self) -> Option<usize> {
        self.entries.keys().next().map(|k| k.d.num_colors())
    }

    /// TSV encoding: header `d1..dm c w e dim`, rows sorted lexicographically.
    /// Absent Frobenius exponents print as `-`.
    pub fn to_tsv(&self, m: usize) -> String {
        let mut out = String::new();
        for k in 1..=m {
            out.push_str(&format!("d{k}\t"));
        }
        out.push_str("c\tw\te\tdim\n");
        for (k, v) in &self.entries {
            for p in k.d.parts() {
                out.push_str(&format!("{p}\t"));
            }
            let e = match k.e {
                Some(e) => e.to_string(),
                None => "-".to_string(),
            };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", k.c, k.w, e, v));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty TSV".into()))?;
        let cols: Vec<&str> = header.split('\t').collect();
        let m = cols.iter().take_while(|c| c.starts_with('d')).count();
        if cols.len() != m + 4 || cols[m..] != ["c", "w", "e", "dim"] {
            return Err(Error::Parse(format!("bad TSV header {header:?}")));
        }
        let mut table = CohomologyTable::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != m + 4 {
                return Err(Error::Parse(format!("bad TSV row {line:?}")));
            }
            let parts = fields[..m]
                .iter()
                .map(|s| s.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(e.to_string()))?;
            let c: i64 = fields[m].parse().map_err(|_| Error::Parse(line.into()))?;
            let w: i64 = fields[m + 1]
                .parse()
                .map_err(|_| Error::Parse(line.into()))?;
            let e = if fields[m + 2] == "-" {
                None
            } else {
                Some(
                    fields[m + 2]
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(line.into()))?,
                )
            };
            let dim: u64 = fields[m + 3]
                .parse()
                .map_err(|_| Error::Parse(line.into()))?;
            table.insert(
                TableKey {
                    d: MultiDegree::new(parts),
                    c,
                    w,
                    e,
                },
                dim,
            );
        }
        Ok(table)
    }

    pub fn to_json(&self, m: usize) -> Result<String> {
        let doc = TableJson {
            m,
            entries: self
                .entries
                .iter()
                .map(|(k, &dim)| EntryJson {
                    d: k.d.parts().to_vec(),
                    c: k.c,
                    w: k.w,
                    e: k.e,
                    dim,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableJson = serde_json::from_str(text)?;
        let mut table = CohomologyTable::new();
        for e in doc.entries {
            if e.d.len() != doc.m {
                return Err(Error::Parse("entry arity differs from m".into()));
            }
            table.insert(
                TableKey {
                    d: MultiDegree::new(e.d),
                    c: e.c,
                    w: e.w,
                    e: e.e,
                },
                e.dim,
            );
        }
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    m: usize,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    d: Vec<u32>,
    c: i64,
    w: i64,
    e: Option<i64>,
    dim: u64,
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.num_colors().unwrap_or(1);
        write!(f, "{}", self.to_tsv(m))
    }
}

/// A cohomology table with the grading forgotten: the stable (limiting)
/// object, keyed by `(c, w, e)` only.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct StableTable {
    entries: BTreeMap<(i64, i64, Option<i64>), u64>,
}

impl StableTable {
    pub fn new() -> Self {
        StableTable::default()
    }

    pub fn insert(&mut self, c: i64, w: i64, e: Option<i64>, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.entries.entry((c, w, e)).or_insert(0) += dim;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64, Option<i64>), &u64)> {
        self.entries.iter()
    }

    pub fn dim(&self, c: i64, w: i64, e: Option<i64>) -> u64 {
        self.entries.get(&(c, w, e)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_full_frob(&self) -> bool {
        self.entries.keys().all(|k| k.2.is_some())
    }

    /// Forgets the grading of a table.
    pub fn from_table(t: &CohomologyTable) -> Self {
        let mut out = StableTable::new();
        for (k, &v) in t.entries() {
            out.insert(k.c, k.w, k.e, v);
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("c\tw\te\tdim\n");
        for (&(c, w, e), v) in &self.entries {
            let e = match e {
                Some(e) => e.to_string(),
                None => "-".to_string(),
            };
            out.push_str(&format!("{c}\t{w}\t{e}\t{v}\n"));
        }
        out
    }
}

impl fmt::Display for StableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_tsv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CohomologyTable {
        let mut t = CohomologyTable::new();
        t.insert(
            TableKey {
                d: MultiDegree::new(vec![3, 0]),
                c: 0,
                w: 0,
                e: Some(0),
            },
            1,
        );
        t.insert(
            TableKey {
                d: MultiDegree::new(vec![1, 2]),
                c: 3,
                w: 4,
                e: Some(-2),
            },
            5,
        );
        t.insert(
            TableKey {
                d: MultiDegree::new(vec![1, 1]),
                c: 1,
                w: 3,
                e: None,
            },
            2,
        );
        t
    }

    #[test]
    fn tsv_round_trip_is_bit_exact() {
        let t = sample();
        let tsv = t.to_tsv(2);
        let back = CohomologyTable::from_tsv(&tsv).unwrap();
        assert_eq!(t, back);
        assert_eq!(back.to_tsv(2), tsv);
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let js = t.to_json(2).unwrap();
        assert_eq!(CohomologyTable::from_json(&js).unwrap(), t);
    }

    #[test]
    fn euler_characteristic_signs() {
        let t = sample();
        // c=0 dim 1, c=3 dim 5, c=1 dim 2 -> 1 - 5 - 2.
        assert_eq!(t.euler_characteristic(), -6);
        assert_eq!(t.total_dim(), 8);
    }

    #[test]
    fn zero_dims_are_not_stored() {
        let mut t = CohomologyTable::new();
        t.insert(
            TableKey {
                d: MultiDegree::new(vec![1]),
                c: 0,
                w: 0,
                e: Some(0),
            },
            0,
        );
        assert!(t.is_empty());
    }
}
