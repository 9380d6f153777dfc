//! Scalar abstraction over the two arithmetic modes: exact rationals
//! (`num::BigRational`) and double precision (`f64`).
//!
//! Everything downstream (configurations, polynomial systems, Jacobians)
//! is generic over [`Scalar`], so exact and floating computations share
//! one code path. Mode-specific machinery, notably rank/kernel
//! computation, hangs off the trait: exact elimination for rationals,
//! singular-value thresholding for floats.

use nalgebra::DMatrix;
use num::{BigRational, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rank and kernel of a matrix, in the matrix's own scalar type.
#[derive(Debug, Clone)]
pub struct RankInfo<S> {
    pub rank: usize,
    /// Basis of the right kernel; length is `cols - rank`.
    pub kernel: Vec<Vec<S>>,
    /// FLOAT mode only: some singular value sits within a factor of 10
    /// of the rank threshold, so the rank decision is tolerance-fragile.
    pub borderline: bool,
}

/// Arithmetic shared by the EXACT and FLOAT modes.
pub trait Scalar: Clone + PartialEq + PartialOrd + std::fmt::Debug + Signed + 'static {
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;
    fn from_int(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Canonical text form used by the export format and JSON reports.
    fn render(&self) -> String;

    /// Inverse of [`Scalar::render`]; also accepts plain integers.
    fn parse(text: &str) -> Result<Self>;

    /// Rank and right-kernel basis of a dense matrix given as rows, each
    /// of length `cols`. `tol` is the relative singular-value threshold
    /// and is ignored in EXACT mode.
    fn matrix_rank_kernel(rows: &[Vec<Self>], cols: usize, tol: f64) -> RankInfo<Self>;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_i64(v).unwrap()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn parse(text: &str) -> Result<Self> {
        text.parse::<BigRational>()
            .map_err(|e| Error::Parse(format!("bad rational {text:?}: {e}")))
    }

    fn matrix_rank_kernel(rows: &[Vec<Self>], cols: usize, _tol: f64) -> RankInfo<Self> {
        exact_rank_kernel(rows, cols)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        // {:?} prints the shortest digit string that round-trips.
        format!("{self:?}")
    }

    fn parse(text: &str) -> Result<Self> {
        text.parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad float {text:?}: {e}")))
    }

    fn matrix_rank_kernel(rows: &[Vec<Self>], cols: usize, tol: f64) -> RankInfo<Self> {
        float_rank_kernel(rows, cols, tol)
    }
}

/// Exact reduced row echelon form over the rationals: rank plus an exact
/// kernel basis read off the free columns.
fn exact_rank_kernel(rows: &[Vec<BigRational>], cols: usize) -> RankInfo<BigRational> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;

    for c in 0..cols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&factor * p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }

    let mut kernel = Vec::new();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    for &fc in &free_cols {
        let mut v = vec![BigRational::zero(); cols];
        v[fc] = BigRational::from_int(1);
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][fc].clone();
        }
        kernel.push(v);
    }

    RankInfo {
        rank: pivot_cols.len(),
        kernel,
        borderline: false,
    }
}

/// Numerical rank via SVD: singular values above `tol * sigma_max` count
/// toward the rank; trailing right-singular vectors span the kernel.
fn float_rank_kernel(rows: &[Vec<f64>], cols: usize, tol: f64) -> RankInfo<f64> {
    if rows.is_empty() || cols == 0 {
        return RankInfo {
            rank: 0,
            kernel: (0..cols)
                .map(|c| {
                    let mut v = vec![0.0; cols];
                    v[c] = 1.0;
                    v
                })
                .collect(),
            borderline: false,
        };
    }

    let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("svd requested v_t");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);

    if sigma_max == 0.0 {
        return RankInfo {
            rank: 0,
            kernel: (0..cols)
                .map(|c| {
                    let mut v = vec![0.0; cols];
                    v[c] = 1.0;
                    v
                })
                .collect(),
            borderline: false,
        };
    }

    let threshold = tol * sigma_max;
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > threshold)
        .count();
    let borderline = svd
        .singular_values
        .iter()
        .any(|&s| s > threshold / 10.0 && s < threshold * 10.0);

    // Rows rank..cols of V^T (when present) plus unit vectors for any
    // columns beyond the decomposition's size.
    let mut kernel = Vec::new();
    for i in rank..v_t.nrows() {
        kernel.push((0..cols).map(|j| v_t[(i, j)]).collect());
    }
    // Wide matrices with fewer rows than cols: V^T from the thin SVD has
    // min(rows, cols) rows, so complete the kernel by orthogonalizing
    // unit vectors against the known row space.
    if kernel.len() < cols - rank {
        let mut basis: Vec<Vec<f64>> = (0..v_t.nrows())
            .map(|i| (0..cols).map(|j| v_t[(i, j)]).collect())
            .collect();
        for c in 0..cols {
            if basis.len() == cols {
                break;
            }
            let mut v = vec![0.0; cols];
            v[c] = 1.0;
            for b in &basis {
                let dot: f64 = v.iter().zip(b).map(|(a, b)| a * b).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= dot * bi;
                }
            }
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-10 {
                for vi in v.iter_mut() {
                    *vi /= norm;
                }
                if basis.len() >= rank {
                    kernel.push(v.clone());
                }
                basis.push(v);
            }
        }
    }

    RankInfo {
        rank,
        kernel,
        borderline,
    }
}
