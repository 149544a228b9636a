//! Small exact linear algebra over the rationals: sparse vectors, incremental
//! column spans with coordinate tracking, kernels and ranks. Everything is
//! deterministic; pivots are chosen as the smallest nonzero row index.

use crate::scalar::Rat;
use num::Zero;
use std::collections::BTreeMap;

/// Sparse column vector with exact rational entries; zero entries absent.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn axpy(dst: &mut SparseVec, factor: &Rat, src: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&row, val) in src {
        let entry = dst.entry(row).or_insert_with(Rat::zero);
        *entry += factor * val;
        if entry.is_zero() {
            dst.remove(&row);
        }
    }
}

/// Incrementally built column span. Tracks, for each pivot, the expression of
/// the reduced column over the independent vectors inserted so far, so that
/// membership queries can return exact coordinates.
pub struct Span {
    /// (pivot row, reduced column, coordinates over inserted vectors)
    pivots: Vec<(usize, SparseVec, Vec<Rat>)>,
    inserted: usize,
}

impl Default for Span {
    fn default() -> Self {
        Self::new()
    }
}

impl Span {
    pub fn new() -> Self {
        Span {
            pivots: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, Vec<Rat>) {
        let mut residual = v.clone();
        let mut coords = vec![Rat::zero(); self.inserted];
        for (prow, pcol, pcoords) in &self.pivots {
            if let Some(c) = residual.get(prow) {
                let factor = c / &pcol[prow];
                let neg = -&factor;
                axpy(&mut residual, &neg, pcol);
                for (i, pc) in pcoords.iter().enumerate() {
                    coords[i] += &factor * pc;
                }
            }
        }
        (residual, coords)
    }

    /// Inserts a vector; returns true if it was independent of the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let (residual, mut coords) = self.reduce_tracked(v);
        if residual.is_empty() {
            return false;
        }
        let pivot_row = *residual.keys().next().unwrap();
        // residual = v - sum coords_i * inserted_i, so as an expression over
        // inserted vectors (now including v itself) the pivot column is
        // v - sum(...): flip the accumulated signs and append 1 for v.
        for c in coords.iter_mut() {
            *c = -std::mem::take(c);
        }
        coords.push(Rat::from_integer(1.into()));
        self.inserted += 1;
        self.pivots.push((pivot_row, residual, coords));
        true
    }

    /// Exact coordinates of `v` over the (independent) inserted vectors, or
    /// `None` if `v` lies outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let (residual, coords) = self.reduce_tracked(v);
        if residual.is_empty() {
            Some(coords)
        } else {
            None
        }
    }
}

/// Rank of a set of columns.
pub fn rank_of_columns(cols: &[SparseVec]) -> usize {
    let mut span = Span::new();
    for c in cols {
        span.insert(c);
    }
    span.rank()
}

/// Kernel of the linear map whose `j`-th column is `cols[j]`, as vectors in
/// the source coordinates, plus the rank. Column elimination with history
/// tracking: a column reducing to zero yields a kernel element.
pub fn kernel_and_rank(cols: &[SparseVec]) -> (Vec<SparseVec>, usize) {
    // pivots: (pivot row, reduced column, history over source coords)
    let mut pivots: Vec<(usize, SparseVec, SparseVec)> = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut residual = col.clone();
        let mut hist: SparseVec = BTreeMap::new();
        hist.insert(j, Rat::from_integer(1.into()));
        for (prow, pcol, phist) in &pivots {
            if let Some(c) = residual.get(prow) {
                let factor = -(c / &pcol[prow]);
                axpy(&mut residual, &factor, pcol);
                axpy(&mut hist, &factor, phist);
            }
        }
        if residual.is_empty() {
            kernel.push(hist);
        } else {
            let prow = *residual.keys().next().unwrap();
            pivots.push((prow, residual, hist));
        }
    }
    (kernel, pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(r, v)| (r, rat(v))).collect()
    }

    #[test]
    fn span_rank_and_coords() {
        let mut span = Span::new();
        assert!(span.insert(&vec_of(&[(0, 1), (1, 2)])));
        assert!(span.insert(&vec_of(&[(1, 1)])));
        // Dependent: (0,1),(1,3) = first + second.
        assert!(!span.insert(&vec_of(&[(0, 1), (1, 3)])));
        assert_eq!(span.rank(), 2);
        let coords = span.coords(&vec_of(&[(0, 2), (1, 5)])).unwrap();
        // 2*(1,2) + 1*(0,1): coords (2, 1).
        assert_eq!(coords, vec![rat(2), rat(1)]);
        assert!(span.coords(&vec_of(&[(2, 1)])).is_none());
    }

    #[test]
    fn kernel_of_simple_map() {
        // Map with columns (1,0), (0,1), (1,1): kernel spanned by (1,1,-1).
        let cols = vec![vec_of(&[(0, 1)]), vec_of(&[(1, 1)]), vec_of(&[(0, 1), (1, 1)])];
        let (kernel, rank) = kernel_and_rank(&cols);
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
        let k = &kernel[0];
        // Verify it really is in the kernel: 1*c0 + 1*c1 - 1*c2 = 0 up to scale.
        let mut acc: SparseVec = BTreeMap::new();
        for (j, coeff) in k {
            axpy(&mut acc, coeff, &cols[*j]);
        }
        assert!(acc.is_empty());
    }

    #[test]
    fn zero_columns_are_kernel_elements() {
        let cols = vec![SparseVec::new(), vec_of(&[(0, 1)])];
        let (kernel, rank) = kernel_and_rank(&cols);
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], vec_of(&[(0, 1)]));
    }
}
