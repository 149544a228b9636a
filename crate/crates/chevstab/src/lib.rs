//! Exact-arithmetic engine for cohomology tables of generalized configuration
//! spaces `Z^n_d(X)`.
//!
//! The pipeline, bottom to top:
//!
//! - [`grading`], [`scalar`], [`series`], [`table`] — multidegrees, Laurent
//!   coefficients in `q`/`w`, truncated multivariate power series, and the
//!   shared cohomology-table format.
//! - [`space`] — finite models of the space `X`: a graded basis with weights
//!   and Frobenius exponents, a cup-product table on the compactly-supported
//!   reading, and point counts over finite fields.
//! - [`lmodel`] — the finite model with a single `|n|`-ary bracket whose
//!   Chevalley–Eilenberg complex computes the cohomology of `Z^n_d(X)`.
//! - [`ce`] — per-multidegree cochain complexes, exact cohomology,
//!   stabilization maps, and Koszul relative tensors over the free part.
//! - [`stab`] — slope calculus, stability-range verification, stable tables,
//!   and regrading.
//! - [`decat`] — Euler characteristics, plethystic exponentials, Poincaré and
//!   virtual Poincaré polynomials, densities and zeta values.
//! - [`arith`] — independent finite-field oracle: brute-force and
//!   Euler-product point counts, density ratios, Lefschetz cross-checks.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals,
//! point counts arbitrary-precision integers. No floating point anywhere.

pub mod arith;
pub mod ce;
pub mod decat;
pub mod error;
pub mod grading;
pub mod linalg;
pub mod lmodel;
pub mod scalar;
pub mod series;
pub mod space;
pub mod stab;
pub mod table;

pub use error::Error;
pub use grading::MultiDegree;
pub use scalar::{Laurent, Rat};
pub use series::TruncatedSeries;
pub use table::{CohomologyTable, StableTable, TableKey};

/// Runs `f` over `items` with the given parallel width, preserving input
/// order in the output. Width 1 runs inline; `None` uses the `CHEVSTAB_JOBS`
/// environment variable, falling back to the number of available cores.
pub fn par_map<T, U, F>(items: Vec<T>, jobs: Option<usize>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let width = jobs
        .or_else(|| {
            std::env::var("CHEVSTAB_JOBS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    if width == 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(width)
        .build()
        .expect("thread pool");
    pool.install(|| {
        use rayon::prelude::*;
        items.par_iter().map(&f).collect()
    })
}
