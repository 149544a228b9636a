use serde::{Deserialize, Serialize};
use std::fmt;

/// An m-tuple of nonnegative integers indexing colored divisor classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiDegree {
    parts: Vec<u32>,
}

impl MultiDegree {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty(), "multidegree needs at least one color");
        MultiDegree { parts }
    }

    pub fn zero(m: usize) -> Self {
        Self::new(vec![0; m])
    }

    /// The unit vector with a single 1 in color `k` (0-based).
    pub fn unit(m: usize, k: usize) -> Self {
        let mut parts = vec![0; m];
        parts[k] += 1;
        Self::new(parts)
    }

    pub fn num_colors(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, k: usize) -> u32 {
        self.parts[k]
    }

    /// Sum of all parts.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.parts.len(), other.parts.len());
        Self::new(
            self.parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn bump(&self, k: usize) -> Self {
        let mut parts = self.parts.clone();
        parts[k] += 1;
        Self::new(parts)
    }

    pub fn scale(&self, n: u32) -> Self {
        Self::new(self.parts.iter().map(|&p| p * n).collect())
    }

    /// Componentwise comparison.
    pub fn leq(&self, other: &Self) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// All multidegrees with total degree at most `bound`, in lexicographic
    /// order.
    pub fn all_up_to_total(m: usize, bound: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        fn rec(m: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
            if i == m {
                out.push(MultiDegree::new(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(m, i + 1, left - v, cur, out);
            }
            cur[i] = 0;
        }
        rec(m, 0, bound, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All multidegrees componentwise at most `max`, in lexicographic order.
    pub fn all_below(max: &MultiDegree) -> Vec<MultiDegree> {
        let m = max.num_colors();
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        fn rec(max: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
            if i == max.len() {
                out.push(MultiDegree::new(cur.clone()));
                return;
            }
            for v in 0..=max[i] {
                cur[i] = v;
                rec(max, i + 1, cur, out);
            }
            cur[i] = 0;
        }
        rec(max.parts(), 0, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A color-count vector: per color either a finite bound `n_k >= 1` or
/// infinity. Parsed from strings like `2`, `1,3`, `inf`, `2,inf`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NSpec(pub Vec<Option<u32>>);

impl NSpec {
    pub fn finite(parts: Vec<u32>) -> Self {
        NSpec(parts.into_iter().map(Some).collect())
    }

    pub fn all_infinite(m: usize) -> Self {
        NSpec(vec![None; m])
    }

    pub fn num_colors(&self) -> usize {
        self.0.len()
    }

    pub fn is_all_finite(&self) -> bool {
        self.0.iter().all(|p| p.is_some())
    }

    pub fn is_all_infinite(&self) -> bool {
        self.0.iter().all(|p| p.is_none())
    }

    /// `|n|` when every color is finite.
    pub fn total(&self) -> Option<u32> {
        self.0.iter().map(|p| *p).sum()
    }

    pub fn parse(s: &str) -> crate::error::Result<Self> {
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.eq_ignore_ascii_case("inf") || tok == "∞" {
                parts.push(None);
            } else {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| crate::Error::Parse(format!("bad color count {tok:?}")))?;
                if v == 0 {
                    return Err(crate::Error::Parse("color counts must be >= 1".into()));
                }
                parts.push(Some(v));
            }
        }
        if parts.is_empty() {
            return Err(crate::Error::Parse("empty color-count vector".into()));
        }
        Ok(NSpec(parts))
    }
}

impl fmt::Display for NSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match p {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "inf")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_units() {
        let d = MultiDegree::new(vec![2, 0, 3]);
        assert_eq!(d.total(), 5);
        assert_eq!(MultiDegree::unit(3, 1).parts(), &[0, 1, 0]);
        assert!(MultiDegree::zero(3).leq(&d));
        assert!(!d.leq(&MultiDegree::zero(3)));
    }

    #[test]
    fn enumeration_counts() {
        // Number of monomials of total degree <= 6 in 2 variables.
        assert_eq!(MultiDegree::all_up_to_total(2, 6).len(), 28);
        assert_eq!(
            MultiDegree::all_below(&MultiDegree::new(vec![2, 3])).len(),
            12
        );
    }

    #[test]
    fn nspec_parsing() {
        assert_eq!(NSpec::parse("2").unwrap(), NSpec::finite(vec![2]));
        assert_eq!(
            NSpec::parse("1,inf").unwrap(),
            NSpec(vec![Some(1), None])
        );
        assert!(NSpec::parse("0").is_err());
        assert_eq!(NSpec::parse("inf").unwrap().total(), None);
        assert_eq!(NSpec::parse("1,3").unwrap().total(), Some(4));
    }
}
