//! Point configurations on the unit sphere, classical generator
//! families, t-design verification through Weyl sums, and orbit distance
//! under the orthogonal group.

use nalgebra::DMatrix;
use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::moments::{enumerate_monomials, sphere_moment, Monomial};
use crate::scalar::Scalar;

/// Unit-norm slack accepted for FLOAT configurations.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Default residual tolerance for FLOAT design verification.
pub const DESIGN_TOL: f64 = 1e-9;

/// `n` points on `S^d` embedded in `R^{d+1}`, in one scalar mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration<S: Scalar> {
    dim_d: usize,
    points: Vec<Vec<S>>,
    labels: Option<Vec<String>>,
}

impl<S: Scalar> PointConfiguration<S> {
    /// Validates vector lengths and unit norms (exact equality in EXACT
    /// mode, within [`UNIT_NORM_TOL`] in FLOAT mode).
    pub fn new(dim_d: usize, points: Vec<Vec<S>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfiguration(
                "points: a configuration needs at least one point".into(),
            ));
        }
        let ambient = dim_d + 1;
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    context: "point vector length",
                    expected: ambient,
                    actual: p.len(),
                });
            }
            let norm2 = p
                .iter()
                .fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
            let dev = norm2 - S::one();
            let ok = if S::EXACT {
                dev.is_zero()
            } else {
                dev.abs().to_f64() <= UNIT_NORM_TOL
            };
            if !ok {
                return Err(Error::InvalidConfiguration(format!(
                    "points[{i}]: squared norm deviates from 1 by {:e}",
                    dev.to_f64()
                )));
            }
        }
        Ok(PointConfiguration {
            dim_d,
            points,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::SizeMismatch(format!(
                "labels: got {} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim_d(&self) -> usize {
        self.dim_d
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_d + 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Reorders points by `perm`: new index `i` takes old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.points.len() {
            return Err(Error::SizeMismatch(format!(
                "permutation: length {} for {} points",
                perm.len(),
                self.points.len()
            )));
        }
        let points = perm.iter().map(|&i| self.points[i].clone()).collect();
        let labels = self
            .labels
            .as_ref()
            .map(|ls| perm.iter().map(|&i| ls[i].clone()).collect());
        Ok(PointConfiguration {
            dim_d: self.dim_d,
            points,
            labels,
        })
    }

    pub fn to_float(&self) -> PointConfiguration<f64> {
        PointConfiguration {
            dim_d: self.dim_d,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|x| x.to_f64()).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Evaluates the monomial at point `i`.
    pub fn eval_monomial(&self, i: usize, alpha: &Monomial) -> S {
        eval_monomial(&self.points[i], alpha)
    }
}

pub(crate) fn eval_monomial<S: Scalar>(point: &[S], alpha: &Monomial) -> S {
    let mut acc = S::one();
    for (x, &e) in point.iter().zip(alpha.exponents()) {
        for _ in 0..e {
            acc = acc * x.clone();
        }
    }
    acc
}

/// A configuration in whichever scalar mode its source used.
#[derive(Debug, Clone)]
pub enum Configuration {
    Exact(PointConfiguration<BigRational>),
    Float(PointConfiguration<f64>),
}

impl Configuration {
    pub fn dim_d(&self) -> usize {
        match self {
            Configuration::Exact(c) => c.dim_d(),
            Configuration::Float(c) => c.dim_d(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Configuration::Exact(c) => c.len(),
            Configuration::Float(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_float(&self) -> PointConfiguration<f64> {
        match self {
            Configuration::Exact(c) => c.to_float(),
            Configuration::Float(c) => c.clone(),
        }
    }
}

/// Outcome of a strength-`t` verification.
#[derive(Debug, Clone)]
pub struct DesignReport<S: Scalar> {
    pub t: u32,
    /// Normalized Weyl residual per monomial of degree 1..t, in graded
    /// lex order.
    pub residuals: Vec<(Monomial, S)>,
    pub max_abs_residual: S,
    pub tolerance: f64,
    pub is_design: bool,
}

impl<S: Scalar> DesignReport<S> {
    pub fn verdict(&self) -> &'static str {
        if self.is_design {
            "IS_DESIGN"
        } else {
            "NOT_DESIGN"
        }
    }
}

/// Normalized Weyl residual: mean of the monomial over the configuration
/// minus its normalized sphere moment.
pub fn weyl_residual<S: Scalar>(x: &PointConfiguration<S>, alpha: &Monomial) -> Result<S> {
    if alpha.ambient_dim() != x.ambient_dim() {
        return Err(Error::DimensionMismatch {
            context: "weyl_residual",
            expected: x.ambient_dim(),
            actual: alpha.ambient_dim(),
        });
    }
    let sum = (0..x.len()).fold(S::zero(), |acc, i| acc + x.eval_monomial(i, alpha));
    let mean = sum / S::from_int(x.len() as i64);
    let moment = sphere_moment(alpha, x.ambient_dim())?;
    Ok(mean - S::from_rational(&moment))
}

/// Evaluates every Weyl residual of degree 1..t. The verdict is exact
/// vanishing in EXACT mode; `tolerance` applies only in FLOAT mode.
pub fn verify_design<S: Scalar>(
    x: &PointConfiguration<S>,
    t: u32,
    tolerance: f64,
) -> Result<DesignReport<S>> {
    let mut residuals = Vec::new();
    let mut max_abs = S::zero();
    for alpha in enumerate_monomials(x.ambient_dim(), t) {
        if alpha.is_constant() {
            continue;
        }
        let r = weyl_residual(x, &alpha)?;
        if r.abs() > max_abs {
            max_abs = r.abs();
        }
        residuals.push((alpha, r));
    }
    let is_design = if S::EXACT {
        max_abs.is_zero()
    } else {
        max_abs.to_f64() <= tolerance
    };
    Ok(DesignReport {
        t,
        residuals,
        max_abs_residual: max_abs,
        tolerance,
        is_design,
    })
}

/// Classical generator families used as the test corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Regular n-gon on `S^1`.
    Polygon(usize),
    /// Regular simplex: d+2 points on `S^d`.
    Simplex(usize),
    /// The 2(d+1) points `±e_i` on `S^d`, in EXACT mode.
    CrossPolytope(usize),
    /// The 2^{d+1} scaled sign vectors on `S^d`.
    Hypercube(usize),
    /// The 12 vertices of the regular icosahedron on `S^2`.
    Icosahedron,
}

/// Builds the named configuration with deterministic coordinates.
/// CROSS_POLYTOPE is exact; the other families are floating point.
pub fn generate(family: Family) -> Result<Configuration> {
    match family {
        Family::CrossPolytope(d) => {
            if d == 0 {
                return Err(Error::UnsupportedFamily("CROSS_POLYTOPE(0)".into()));
            }
            let ambient = d + 1;
            let mut points = Vec::with_capacity(2 * ambient);
            for i in 0..ambient {
                for sign in [1i64, -1] {
                    let mut p = vec![BigRational::from(BigInt::from(0)); ambient];
                    p[i] = BigRational::from(BigInt::from(sign));
                    points.push(p);
                }
            }
            Ok(Configuration::Exact(PointConfiguration::new(d, points)?))
        }
        Family::Polygon(n) => {
            if n == 0 {
                return Err(Error::UnsupportedFamily("POLYGON(0)".into()));
            }
            let points = (0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    renormalize(vec![theta.cos(), theta.sin()])
                })
                .collect();
            Ok(Configuration::Float(PointConfiguration::new(1, points)?))
        }
        Family::Simplex(d) => {
            if d == 0 {
                return Err(Error::UnsupportedFamily("SIMPLEX(0)".into()));
            }
            Ok(Configuration::Float(PointConfiguration::new(
                d,
                simplex_points(d),
            )?))
        }
        Family::Hypercube(d) => {
            if d == 0 {
                return Err(Error::UnsupportedFamily("HYPERCUBE(0)".into()));
            }
            let ambient = d + 1;
            let scale = 1.0 / (ambient as f64).sqrt();
            let points = (0..1usize << ambient)
                .map(|bits| {
                    (0..ambient)
                        .map(|j| if bits >> j & 1 == 0 { scale } else { -scale })
                        .collect()
                })
                .map(renormalize)
                .collect();
            Ok(Configuration::Float(PointConfiguration::new(d, points)?))
        }
        Family::Icosahedron => {
            let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
            let mut points = Vec::with_capacity(12);
            for &(a, b) in &[(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
                points.push(renormalize(vec![0.0, a, b]));
                points.push(renormalize(vec![a, b, 0.0]));
                points.push(renormalize(vec![b, 0.0, a]));
            }
            Ok(Configuration::Float(PointConfiguration::new(2, points)?))
        }
    }
}

fn renormalize(mut p: Vec<f64>) -> Vec<f64> {
    let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in p.iter_mut() {
        *x /= norm;
    }
    p
}

/// Regular simplex via the Helmert basis of the zero-sum hyperplane.
fn simplex_points(d: usize) -> Vec<Vec<f64>> {
    let m = d + 2;
    (0..m)
        .map(|i| {
            let p: Vec<f64> = (1..=d + 1)
                .map(|k| {
                    let s = (k as f64 * (k as f64 + 1.0)).sqrt();
                    if i < k {
                        1.0 / s
                    } else if i == k {
                        -(k as f64) / s
                    } else {
                        0.0
                    }
                })
                .collect();
            renormalize(p)
        })
        .collect()
}

/// Root-mean-square mismatch of the best orthogonal alignment sending
/// the points of `x` to the equally-labeled points of `y` (orthogonal
/// Procrustes, full `O(d+1)`). Always evaluated in double precision.
pub fn orbit_distance<S: Scalar, T: Scalar>(
    x: &PointConfiguration<S>,
    y: &PointConfiguration<T>,
) -> Result<f64> {
    if x.len() != y.len() || x.dim_d() != y.dim_d() {
        return Err(Error::SizeMismatch(format!(
            "orbit_distance: {}x{} vs {}x{} (points x ambient)",
            x.len(),
            x.ambient_dim(),
            y.len(),
            y.ambient_dim()
        )));
    }
    let n = x.len();
    let a = x.to_float();
    let b = y.to_float();
    let ambient = a.ambient_dim();
    // Cross-covariance M = sum_i w_i v_i^T; the best orthogonal map has
    // alignment score equal to the nuclear norm of M.
    let mut m = DMatrix::<f64>::zeros(ambient, ambient);
    for i in 0..n {
        for r in 0..ambient {
            for c in 0..ambient {
                m[(r, c)] += b.points()[i][r] * a.points()[i][c];
            }
        }
    }
    let nuclear: f64 = m.svd(false, false).singular_values.iter().sum();
    let sq_a: f64 = a.points().iter().flatten().map(|v| v * v).sum();
    let sq_b: f64 = b.points().iter().flatten().map(|v| v * v).sum();
    let resid2 = (sq_a + sq_b - 2.0 * nuclear).max(0.0);
    Ok((resid2 / n as f64).sqrt())
}
