//! Rigidity certification: rank analysis of the pinned Jacobian and
//! Gauss-Newton flex search along kernel directions.
//!
//! A full-rank Jacobian at the design's own assignment certifies that
//! the pinned assignment is an isolated root of the system, which is the
//! necessary condition rigidity imposes. A converged flex with pins
//! fixed refutes rigidity outright: an orthogonal map fixing a spanning
//! pin set is the identity, so a distinct nearby design in the pinned
//! slice cannot be an orthogonal image. When neither applies the verdict
//! stays INCONCLUSIVE.

use nalgebra::{DMatrix, DVector};

use crate::design::{orbit_distance, verify_design, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalar::{RankInfo, Scalar};
use crate::system::{build_system, select_pins, PolynomialSystem};

/// Default relative singular-value threshold for FLOAT rank decisions.
pub const RANK_TOL: f64 = 1e-8;

/// Gauss-Newton convergence threshold on the residual norm.
pub const GN_RESIDUAL_TOL: f64 = 1e-12;

/// Residual tolerance a flex witness must meet as a design.
pub const WITNESS_DESIGN_TOL: f64 = 1e-10;

/// Minimum coordinate deviation for a displacement to count as a flex.
pub const MIN_FLEX_DISPLACEMENT: f64 = 1e-6;

/// Default step schedule for flex searches.
pub const DEFAULT_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Default Gauss-Newton iteration cap.
pub const DEFAULT_MAX_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigidityStatus {
    /// The Jacobian has full column rank: the pinned assignment is an
    /// isolated root. Necessary for rigidity; the converse is not
    /// claimed.
    PinnedIsolatedCertified,
    /// A distinct nearby design with identical pins was constructed.
    NotRigidFlexFound,
    Inconclusive,
}

impl RigidityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RigidityStatus::PinnedIsolatedCertified => "PINNED_ISOLATED_CERTIFIED",
            RigidityStatus::NotRigidFlexFound => "NOT_RIGID_FLEX_FOUND",
            RigidityStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A second configuration witnessing non-rigidity.
#[derive(Debug, Clone)]
pub struct FlexWitness {
    /// Pinned-first configuration; pins equal the certified input's pins
    /// exactly.
    pub configuration: PointConfiguration<f64>,
    pub max_design_residual: f64,
    /// Maximum coordinate deviation from the input configuration.
    pub displacement: f64,
    pub orbit_distance: f64,
}

#[derive(Debug, Clone)]
pub struct RigidityCertificate {
    pub status: RigidityStatus,
    pub jacobian_rank: usize,
    pub kernel_dimension: usize,
    pub k: usize,
    pub rank_tolerance: f64,
    /// Maps pinned-first indices back to the input order.
    pub pin_permutation: Vec<usize>,
    pub witness: Option<FlexWitness>,
}

/// Outcome of one Gauss-Newton projection run.
#[derive(Debug, Clone)]
pub struct FlexResult {
    pub converged: bool,
    pub assignment: Vec<f64>,
    pub residual_norm: f64,
    /// Maximum coordinate deviation of the final assignment from the
    /// unperturbed starting assignment.
    pub displacement: f64,
    pub iterations: usize,
}

/// Rank and kernel basis of a dense matrix given as rows. EXACT mode
/// runs exact elimination; FLOAT mode thresholds singular values at
/// `tolerance` times the largest one.
pub fn matrix_rank<S: Scalar>(rows: &[Vec<S>], cols: usize, tolerance: f64) -> RankInfo<S> {
    S::matrix_rank_kernel(rows, cols, tolerance)
}

fn gauss_newton(
    system: &PolynomialSystem<f64>,
    start: &[f64],
    max_iterations: usize,
) -> (Vec<f64>, f64, usize, bool) {
    let mut x = start.to_vec();
    let mut norm = residual_norm(system, &x);
    for iter in 0..max_iterations {
        if norm <= GN_RESIDUAL_TOL {
            return (x, norm, iter, true);
        }
        let jac = system.jacobian(&x).expect("layout checked");
        let m = DMatrix::from_fn(system.num_equations(), system.k(), |i, j| jac[i][j]);
        let residuals = system.evaluate(&x).expect("layout checked");
        let r = DVector::from_fn(system.num_equations(), |i, _| -residuals[i]);
        let svd = m.svd(true, true);
        let Ok(step) = svd.solve(&r, 1e-12) else {
            return (x, norm, iter, false);
        };
        let step_norm = step.norm();
        for (xi, si) in x.iter_mut().zip(step.iter()) {
            *xi += si;
        }
        norm = residual_norm(system, &x);
        if step_norm < 1e-15 {
            break;
        }
    }
    (x, norm, max_iterations, norm <= GN_RESIDUAL_TOL)
}

fn residual_norm(system: &PolynomialSystem<f64>, x: &[f64]) -> f64 {
    system
        .evaluate(x)
        .expect("layout checked")
        .iter()
        .map(|r| r * r)
        .sum::<f64>()
        .sqrt()
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Runs the step schedule of Gauss-Newton projections from perturbed
/// starting points. Success means convergence to a root displaced from
/// the base assignment by at least [`MIN_FLEX_DISPLACEMENT`].
pub fn flex_search_system(
    system: &PolynomialSystem<f64>,
    base: &[f64],
    direction: &[f64],
    steps: &[f64],
    max_iterations: usize,
) -> Result<FlexResult> {
    if direction.len() != system.k() {
        return Err(Error::InvalidDirection(format!(
            "direction length {} does not match k = {}",
            direction.len(),
            system.k()
        )));
    }
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::InvalidDirection("zero direction".into()));
    }
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidDirection(format!(
            "direction must have unit norm, got {norm}"
        )));
    }

    let mut last = FlexResult {
        converged: false,
        assignment: base.to_vec(),
        residual_norm: residual_norm(system, base),
        displacement: 0.0,
        iterations: 0,
    };
    for &h in steps {
        let start: Vec<f64> = base.iter().zip(direction).map(|(b, d)| b + h * d).collect();
        let (x, rnorm, iterations, converged) = gauss_newton(system, &start, max_iterations);
        let displacement = max_deviation(&x, base);
        let result = FlexResult {
            converged,
            assignment: x,
            residual_norm: rnorm,
            displacement,
            iterations,
        };
        if converged && displacement >= MIN_FLEX_DISPLACEMENT {
            return Ok(result);
        }
        last = result;
    }
    Ok(last)
}

/// Convenience wrapper over [`flex_search_system`]: pins the
/// configuration, builds the strength-`t` system, and searches from the
/// configuration's own assignment. The direction is interpreted in the
/// pinned-first variable layout.
pub fn flex_search(
    x: &PointConfiguration<f64>,
    t: u32,
    direction: &[f64],
    steps: &[f64],
    max_iterations: usize,
) -> Result<FlexResult> {
    let (xp, _) = select_pins(x)?;
    let system = build_system(&xp, t)?;
    let base = system.assignment_from(&xp)?;
    flex_search_system(&system, &base, direction, steps, max_iterations)
}

/// Certifies the isolated-root condition at strength `t`, or refutes
/// rigidity with an explicit flex, or reports INCONCLUSIVE.
pub fn certify<S: Scalar>(
    x: &PointConfiguration<S>,
    t: u32,
    design_tolerance: f64,
    rank_tolerance: f64,
) -> Result<RigidityCertificate> {
    let report = verify_design(x, t, design_tolerance)?;
    if !report.is_design {
        return Err(Error::NotADesign {
            t: t as usize,
            residual: report.max_abs_residual.to_f64(),
            tolerance: design_tolerance,
        });
    }

    let (xp, perm) = select_pins(x)?;
    let system = build_system(&xp, t)?;
    let k = system.k();
    if k == 0 {
        // No variables: the empty assignment is trivially isolated.
        return Ok(RigidityCertificate {
            status: RigidityStatus::PinnedIsolatedCertified,
            jacobian_rank: 0,
            kernel_dimension: 0,
            k: 0,
            rank_tolerance,
            pin_permutation: perm,
            witness: None,
        });
    }

    let assignment = system.assignment_from(&xp)?;
    let jac = system.jacobian(&assignment)?;
    let info = matrix_rank(&jac, k, rank_tolerance);
    let kernel_dimension = k - info.rank;

    if info.rank == k {
        return Ok(RigidityCertificate {
            status: RigidityStatus::PinnedIsolatedCertified,
            jacobian_rank: info.rank,
            kernel_dimension,
            k,
            rank_tolerance,
            pin_permutation: perm,
            witness: None,
        });
    }

    // Rank decisions sitting near the threshold cannot support any
    // verdict.
    if !S::EXACT && info.borderline {
        return Ok(RigidityCertificate {
            status: RigidityStatus::Inconclusive,
            jacobian_rank: info.rank,
            kernel_dimension,
            k,
            rank_tolerance,
            pin_permutation: perm,
            witness: None,
        });
    }

    let fsystem = system.to_float();
    let fxp = xp.to_float();
    let base = fsystem.assignment_from(&fxp)?;
    let half_min_distance = min_pairwise_distance(&fxp) / 2.0;

    for kernel_vec in &info.kernel {
        let mut dir: Vec<f64> = kernel_vec.iter().map(|v| v.to_f64()).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        for d in dir.iter_mut() {
            *d /= norm;
        }
        for sign in [1.0, -1.0] {
            let signed: Vec<f64> = dir.iter().map(|d| sign * d).collect();
            let result = flex_search_system(
                &fsystem,
                &base,
                &signed,
                &DEFAULT_STEPS,
                DEFAULT_MAX_ITERATIONS,
            )?;
            if !result.converged || result.displacement < MIN_FLEX_DISPLACEMENT {
                continue;
            }
            if let Some(witness) = validate_witness(&fxp, &fsystem, &result, t, half_min_distance)?
            {
                return Ok(RigidityCertificate {
                    status: RigidityStatus::NotRigidFlexFound,
                    jacobian_rank: info.rank,
                    kernel_dimension,
                    k,
                    rank_tolerance,
                    pin_permutation: perm,
                    witness: Some(witness),
                });
            }
        }
    }

    Ok(RigidityCertificate {
        status: RigidityStatus::Inconclusive,
        jacobian_rank: info.rank,
        kernel_dimension,
        k,
        rank_tolerance,
        pin_permutation: perm,
        witness: None,
    })
}

fn min_pairwise_distance(x: &PointConfiguration<f64>) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let d = x.points()[i]
                .iter()
                .zip(&x.points()[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            best = best.min(d);
        }
    }
    best
}

fn validate_witness(
    xp: &PointConfiguration<f64>,
    system: &PolynomialSystem<f64>,
    result: &FlexResult,
    t: u32,
    half_min_distance: f64,
) -> Result<Option<FlexWitness>> {
    let ambient = xp.ambient_dim();
    let mut points: Vec<Vec<f64>> = xp.points()[..ambient].to_vec();
    for b in 0..system.num_free() {
        points.push(result.assignment[b * ambient..(b + 1) * ambient].to_vec());
    }
    let Ok(candidate) = PointConfiguration::new(xp.dim_d(), points) else {
        return Ok(None);
    };

    // Point identities must not swap: every point stays within half the
    // minimum pairwise distance of where it started.
    for (p, q) in xp.points().iter().zip(candidate.points()) {
        let moved = p
            .iter()
            .zip(q)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if moved > half_min_distance {
            return Ok(None);
        }
    }

    let report = verify_design(&candidate, t, WITNESS_DESIGN_TOL)?;
    if !report.is_design {
        return Ok(None);
    }
    let orbit = orbit_distance(xp, &candidate)?;
    if orbit <= 1e-7 {
        return Ok(None);
    }
    Ok(Some(FlexWitness {
        configuration: candidate,
        max_design_residual: report.max_abs_residual,
        displacement: result.displacement,
        orbit_distance: orbit,
    }))
}
