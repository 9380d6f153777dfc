//! The JSON configuration file format and JSON rendering of reports.
//!
//! A configuration document looks like
//!
//! ```json
//! {
//!   "dimension_d": 2,
//!   "mode": "exact",
//!   "points": [["1", "0", "0"], ["-1", "0", "0"]],
//!   "labels": ["a", "b"]
//! }
//! ```
//!
//! Exact-mode entries are rational strings `"p/q"` (or plain integers);
//! float-mode entries are JSON numbers. Mixing the two in one document
//! is rejected.

use num::BigRational;
use serde_json::{json, Map, Value};

use crate::bound::BoundReport;
use crate::design::{Configuration, DesignReport, PointConfiguration};
use crate::error::{Error, Result};
use crate::rigidity::{FlexResult, RigidityCertificate};
use crate::scalar::Scalar;

/// Parses a configuration document.
pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("document: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("document: expected a JSON object".into()))?;

    let dim_d = obj
        .get("dimension_d")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("dimension_d: expected a non-negative integer".into()))?
        as usize;
    let mode = obj
        .get("mode")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("mode: expected \"exact\" or \"float\"".into()))?;
    let rows = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("points: expected an array of arrays".into()))?;

    let labels = match obj.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(ls)) => {
            let mut out = Vec::with_capacity(ls.len());
            for (i, l) in ls.iter().enumerate() {
                out.push(
                    l.as_str()
                        .ok_or_else(|| Error::Parse(format!("labels[{i}]: expected a string")))?
                        .to_string(),
                );
            }
            Some(out)
        }
        Some(_) => return Err(Error::Parse("labels: expected an array of strings".into())),
    };

    let config = match mode {
        "exact" => {
            let points = parse_points(rows, |v, path| match v {
                Value::String(s) => BigRational::parse(s)
                    .map_err(|_| Error::Parse(format!("{path}: bad rational {s:?}"))),
                Value::Number(_) => Err(Error::Parse(format!(
                    "{path}: decimal entry in exact mode (use \"p/q\" strings)"
                ))),
                _ => Err(Error::Parse(format!("{path}: expected a rational string"))),
            })?;
            Configuration::Exact(PointConfiguration::new(dim_d, points)?)
        }
        "float" => {
            let points = parse_points(rows, |v, path| match v {
                Value::Number(x) => x
                    .as_f64()
                    .ok_or_else(|| Error::Parse(format!("{path}: non-finite number"))),
                Value::String(_) => Err(Error::Parse(format!(
                    "{path}: rational string in float mode (use numbers)"
                ))),
                _ => Err(Error::Parse(format!("{path}: expected a number"))),
            })?;
            Configuration::Float(PointConfiguration::new(dim_d, points)?)
        }
        other => {
            return Err(Error::Parse(format!(
                "mode: expected \"exact\" or \"float\", got {other:?}"
            )))
        }
    };

    match (config, labels) {
        (c, None) => Ok(c),
        (Configuration::Exact(c), Some(ls)) => Ok(Configuration::Exact(c.with_labels(ls)?)),
        (Configuration::Float(c), Some(ls)) => Ok(Configuration::Float(c.with_labels(ls)?)),
    }
}

fn parse_points<S>(
    rows: &[Value],
    parse_entry: impl Fn(&Value, &str) -> Result<S>,
) -> Result<Vec<Vec<S>>> {
    let mut points = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("points[{i}]: expected an array")))?;
        let mut point = Vec::with_capacity(entries.len());
        for (j, entry) in entries.iter().enumerate() {
            point.push(parse_entry(entry, &format!("points[{i}][{j}]"))?);
        }
        points.push(point);
    }
    Ok(points)
}

/// Renders a configuration back to the document format.
pub fn configuration_to_json(config: &Configuration) -> Value {
    let mut obj = Map::new();
    obj.insert("dimension_d".into(), json!(config.dim_d() as u64));
    match config {
        Configuration::Exact(c) => {
            obj.insert("mode".into(), json!("exact"));
            obj.insert(
                "points".into(),
                Value::Array(
                    c.points()
                        .iter()
                        .map(|p| Value::Array(p.iter().map(|v| json!(v.render())).collect()))
                        .collect(),
                ),
            );
            if let Some(ls) = c.labels() {
                obj.insert("labels".into(), json!(ls));
            }
        }
        Configuration::Float(c) => {
            obj.insert("mode".into(), json!("float"));
            obj.insert(
                "points".into(),
                Value::Array(
                    c.points()
                        .iter()
                        .map(|p| Value::Array(p.iter().map(|v| json!(v)).collect()))
                        .collect(),
                ),
            );
            if let Some(ls) = c.labels() {
                obj.insert("labels".into(), json!(ls));
            }
        }
    }
    Value::Object(obj)
}

fn float_config_to_json(c: &PointConfiguration<f64>) -> Value {
    configuration_to_json(&Configuration::Float(c.clone()))
}

/// Residual map keyed by comma-separated exponent tuples; exact
/// residuals render as rational strings, float residuals as numbers.
pub fn design_report_to_json<S: Scalar>(report: &DesignReport<S>) -> Value {
    let mut residuals = Map::new();
    for (alpha, r) in &report.residuals {
        let rendered = if S::EXACT {
            json!(r.render())
        } else {
            json!(r.to_f64())
        };
        residuals.insert(alpha.key(), rendered);
    }
    let max = if S::EXACT {
        json!(report.max_abs_residual.render())
    } else {
        json!(report.max_abs_residual.to_f64())
    };
    json!({
        "t": report.t,
        "verdict": report.verdict(),
        "max_abs_residual": max,
        "tolerance": report.tolerance,
        "residuals": Value::Object(residuals),
    })
}

pub fn certificate_to_json(cert: &RigidityCertificate) -> Value {
    let witness = cert.witness.as_ref().map(|w| {
        json!({
            "configuration": float_config_to_json(&w.configuration),
            "max_design_residual": w.max_design_residual,
            "displacement": w.displacement,
            "orbit_distance": w.orbit_distance,
        })
    });
    json!({
        "status": cert.status.as_str(),
        "jacobian_rank": cert.jacobian_rank,
        "kernel_dimension": cert.kernel_dimension,
        "k": cert.k,
        "rank_tolerance": cert.rank_tolerance,
        "pin_permutation": cert.pin_permutation,
        "witness": witness,
    })
}

pub fn flex_result_to_json(result: &FlexResult) -> Value {
    json!({
        "converged": result.converged,
        "residual_norm": result.residual_norm,
        "displacement": result.displacement,
        "iterations": result.iterations,
        "assignment": result.assignment,
    })
}

/// Big integers render as decimal strings; JSON numbers cannot hold them.
pub fn bound_report_to_json(report: &BoundReport) -> Value {
    json!({
        "t": report.t,
        "d": report.d,
        "n": report.n,
        "t_prime": report.t_prime,
        "k": report.k,
        "lhs": report.lhs.to_string(),
        "rhs": report.rhs.to_string(),
        "holds": report.holds,
    })
}

/// Converts a configuration to the requested mode. Float-to-exact takes
/// the exact binary value of each double; the unit-norm invariant is
/// re-validated and typically rejects irrational-coordinate inputs.
pub fn convert_mode(config: &Configuration, exact: bool) -> Result<Configuration> {
    match (config, exact) {
        (Configuration::Exact(_), true) | (Configuration::Float(_), false) => Ok(config.clone()),
        (Configuration::Exact(c), false) => Ok(Configuration::Float(c.to_float())),
        (Configuration::Float(c), true) => {
            let points = c
                .points()
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    p.iter()
                        .map(|&v| {
                            BigRational::from_float(v).ok_or_else(|| {
                                Error::Parse(format!("points[{i}]: non-finite coordinate"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let mut cfg = PointConfiguration::new(c.dim_d(), points)?;
            if let Some(ls) = c.labels() {
                cfg = cfg.with_labels(ls.to_vec())?;
            }
            Ok(Configuration::Exact(cfg))
        }
    }
}
