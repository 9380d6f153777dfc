//! The pinned polynomial system attached to a configuration: the first
//! d+1 points are held constant, each remaining point contributes a
//! block of d+1 unknowns, and the equations are the unit-norm conditions
//! `f_i` plus one design condition `g_s` per non-constant monomial of
//! degree at most t.
//!
//! Note two corrections to the printed source of the construction: the
//! sphere equation sums over all d+1 coordinates, and the integral term
//! of `g_s` carries the factor n (a sum over n points can only cancel
//! n times the mean).

use crate::design::{eval_monomial, PointConfiguration};
use crate::error::{Error, Result};
use crate::moments::{enumerate_monomials, sphere_moment, Monomial};
use crate::scalar::Scalar;

/// Threshold below which a FLOAT pivot residual counts as rank-neutral
/// during pin selection.
const PIN_PIVOT_TOL: f64 = 1e-10;

/// Reorders a configuration so the first d+1 points contain a maximal
/// spanning subset of span(X). EXACT mode picks the earliest point that
/// increases the current rank; FLOAT mode picks the largest projection
/// residual with index tie-break. Returns the reordered configuration
/// and the permutation (new index -> original index).
pub fn select_pins<S: Scalar>(
    x: &PointConfiguration<S>,
) -> Result<(PointConfiguration<S>, Vec<usize>)> {
    let ambient = x.ambient_dim();
    if x.len() < ambient {
        return Err(Error::SizeMismatch(format!(
            "select_pins: need at least {} points, got {}",
            ambient,
            x.len()
        )));
    }

    let mut basis: Vec<Vec<S>> = Vec::new();
    let mut selected: Vec<usize> = Vec::new();

    while selected.len() < ambient {
        let mut best: Option<(usize, Vec<S>, f64)> = None;
        for i in 0..x.len() {
            if selected.contains(&i) {
                continue;
            }
            let residual = project_out(&x.points()[i], &basis);
            let norm2 = residual
                .iter()
                .fold(S::zero(), |acc, v| acc + v.clone() * v.clone());
            if S::EXACT {
                if !norm2.is_zero() {
                    best = Some((i, residual, 0.0));
                    break; // earliest rank-increasing point
                }
            } else {
                let r = norm2.to_f64().sqrt();
                if r > PIN_PIVOT_TOL && best.as_ref().is_none_or(|(_, _, b)| r > *b) {
                    best = Some((i, residual, r));
                }
            }
        }
        match best {
            Some((i, residual, _)) => {
                selected.push(i);
                basis.push(residual);
            }
            None => break, // span(X) exhausted below full dimension
        }
    }

    // Fill remaining pin slots with the earliest unselected points.
    for i in 0..x.len() {
        if selected.len() == ambient {
            break;
        }
        if !selected.contains(&i) {
            selected.push(i);
        }
    }

    let mut perm = selected.clone();
    for i in 0..x.len() {
        if !selected.contains(&i) {
            perm.push(i);
        }
    }
    Ok((x.permuted(&perm)?, perm))
}

fn project_out<S: Scalar>(v: &[S], basis: &[Vec<S>]) -> Vec<S> {
    let mut r: Vec<S> = v.to_vec();
    for b in basis {
        let dot = r
            .iter()
            .zip(b)
            .fold(S::zero(), |acc, (a, c)| acc + a.clone() * c.clone());
        let norm2 = b
            .iter()
            .fold(S::zero(), |acc, c| acc + c.clone() * c.clone());
        let factor = dot / norm2;
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = ri.clone() - factor.clone() * bi.clone();
        }
    }
    r
}

/// The pinned system. Equations are ordered all `f` by point index, then
/// all `g` in graded lex monomial order; the constant monomial is
/// excluded (its equation is identically zero).
#[derive(Debug, Clone)]
pub struct PolynomialSystem<S: Scalar> {
    dim_d: usize,
    n: usize,
    t: u32,
    pinned: Vec<Vec<S>>,
    monomials: Vec<Monomial>,
    g_constants: Vec<S>,
}

impl<S: Scalar> PolynomialSystem<S> {
    pub fn dim_d(&self) -> usize {
        self.dim_d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn pinned(&self) -> &[Vec<S>] {
        &self.pinned
    }

    /// Monomials indexing the design equations, degree 1..=t.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn num_free(&self) -> usize {
        self.n - (self.dim_d + 1)
    }

    /// Variable count k = (d+1)(n-d-1).
    pub fn k(&self) -> usize {
        (self.dim_d + 1) * self.num_free()
    }

    pub fn num_sphere_equations(&self) -> usize {
        self.num_free()
    }

    pub fn num_design_equations(&self) -> usize {
        self.monomials.len()
    }

    pub fn num_equations(&self) -> usize {
        self.num_sphere_equations() + self.num_design_equations()
    }

    /// Maximum total degree t' = max(t, 2).
    pub fn max_degree(&self) -> u32 {
        self.t.max(2)
    }

    /// Variable names in layout order: `x_{i}_{j}` with a 1-based
    /// point index i in d+2..=n and coordinate j in 1..=d+1.
    pub fn variable_names(&self) -> Vec<String> {
        let ambient = self.dim_d + 1;
        (0..self.num_free())
            .flat_map(|b| (0..ambient).map(move |j| format!("x_{}_{}", b + self.dim_d + 2, j + 1)))
            .collect()
    }

    /// Flattens the non-pinned points of a configuration (which must
    /// already be in pinned-first order) into an assignment.
    pub fn assignment_from(&self, x: &PointConfiguration<S>) -> Result<Vec<S>> {
        if x.len() != self.n || x.dim_d() != self.dim_d {
            return Err(Error::SizeMismatch(format!(
                "assignment_from: configuration {}x{} does not match system n={} d={}",
                x.len(),
                x.dim_d(),
                self.n,
                self.dim_d
            )));
        }
        Ok(x.points()[self.dim_d + 1..]
            .iter()
            .flatten()
            .cloned()
            .collect())
    }

    fn check_layout(&self, assignment: &[S]) -> Result<()> {
        if assignment.len() != self.k() {
            return Err(Error::SizeMismatch(format!(
                "assignment length {} does not match k = {}",
                assignment.len(),
                self.k()
            )));
        }
        Ok(())
    }

    fn block<'a>(&self, assignment: &'a [S], b: usize) -> &'a [S] {
        let ambient = self.dim_d + 1;
        &assignment[b * ambient..(b + 1) * ambient]
    }

    /// Residual vector: all f values, then all g values.
    pub fn evaluate(&self, assignment: &[S]) -> Result<Vec<S>> {
        self.check_layout(assignment)?;
        let mut out = Vec::with_capacity(self.num_equations());
        for b in 0..self.num_free() {
            let norm2 = self
                .block(assignment, b)
                .iter()
                .fold(S::zero(), |acc, v| acc + v.clone() * v.clone());
            out.push(norm2 - S::one());
        }
        for (alpha, c) in self.monomials.iter().zip(&self.g_constants) {
            let sum = (0..self.num_free()).fold(c.clone(), |acc, b| {
                acc + eval_monomial(self.block(assignment, b), alpha)
            });
            out.push(sum);
        }
        Ok(out)
    }

    /// Analytic Jacobian, rows in `evaluate` order, columns in variable
    /// layout order.
    pub fn jacobian(&self, assignment: &[S]) -> Result<Vec<Vec<S>>> {
        self.check_layout(assignment)?;
        let ambient = self.dim_d + 1;
        let k = self.k();
        let mut rows = Vec::with_capacity(self.num_equations());
        for b in 0..self.num_free() {
            let mut row = vec![S::zero(); k];
            for (j, v) in self.block(assignment, b).iter().enumerate() {
                row[b * ambient + j] = S::from_int(2) * v.clone();
            }
            rows.push(row);
        }
        for alpha in &self.monomials {
            let mut row = vec![S::zero(); k];
            for b in 0..self.num_free() {
                let point = self.block(assignment, b);
                for (j, &e) in alpha.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let mut partial = S::from_int(e as i64);
                    for (jj, x) in point.iter().enumerate() {
                        let power = if jj == j {
                            alpha.exponents()[jj] - 1
                        } else {
                            alpha.exponents()[jj]
                        };
                        for _ in 0..power {
                            partial = partial * x.clone();
                        }
                    }
                    row[b * ambient + j] = partial;
                }
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Applies a block permutation to an assignment: new block `b` takes
    /// old block `tau[b]`.
    pub fn permute_assignment_blocks(&self, assignment: &[S], tau: &[usize]) -> Result<Vec<S>> {
        self.check_layout(assignment)?;
        if tau.len() != self.num_free() {
            return Err(Error::SizeMismatch(format!(
                "block permutation length {} for {} blocks",
                tau.len(),
                self.num_free()
            )));
        }
        let mut out = Vec::with_capacity(self.k());
        for &src in tau {
            out.extend_from_slice(self.block(assignment, src));
        }
        Ok(out)
    }

    pub fn to_float(&self) -> PolynomialSystem<f64> {
        PolynomialSystem {
            dim_d: self.dim_d,
            n: self.n,
            t: self.t,
            pinned: self
                .pinned
                .iter()
                .map(|p| p.iter().map(|v| v.to_f64()).collect())
                .collect(),
            monomials: self.monomials.clone(),
            g_constants: self.g_constants.iter().map(|v| v.to_f64()).collect(),
        }
    }
}

/// Builds the pinned system from a configuration already in pinned-first
/// order (see [`select_pins`]). The design property is not checked here;
/// the system is well defined either way.
pub fn build_system<S: Scalar>(x: &PointConfiguration<S>, t: u32) -> Result<PolynomialSystem<S>> {
    let ambient = x.ambient_dim();
    if x.len() < ambient {
        return Err(Error::SizeMismatch(format!(
            "build_system: need at least {} points, got {}",
            ambient,
            x.len()
        )));
    }
    let pinned: Vec<Vec<S>> = x.points()[..ambient].to_vec();
    let n = x.len();
    let mut monomials = Vec::new();
    let mut g_constants = Vec::new();
    for alpha in enumerate_monomials(ambient, t) {
        if alpha.is_constant() {
            continue;
        }
        let pin_sum = pinned
            .iter()
            .fold(S::zero(), |acc, p| acc + eval_monomial(p, &alpha));
        let moment = sphere_moment(&alpha, ambient)?;
        let c = pin_sum - S::from_int(n as i64) * S::from_rational(&moment);
        monomials.push(alpha);
        g_constants.push(c);
    }
    Ok(PolynomialSystem {
        dim_d: x.dim_d(),
        n,
        t,
        pinned,
        monomials,
        g_constants,
    })
}

// ---------------------------------------------------------------------
// Export / import text format
// ---------------------------------------------------------------------

/// One product of a coefficient and variable powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<S> {
    pub coeff: S,
    /// (variable index, exponent), exponents >= 1.
    pub powers: Vec<(usize, u32)>,
}

/// A polynomial in expanded form over a shared variable list.
#[derive(Debug, Clone, PartialEq)]
pub struct ExportedPolynomial<S> {
    pub terms: Vec<Term<S>>,
}

impl<S: Scalar> ExportedPolynomial<S> {
    pub fn evaluate(&self, assignment: &[S]) -> S {
        self.terms.iter().fold(S::zero(), |acc, term| {
            let mut v = term.coeff.clone();
            for &(var, e) in &term.powers {
                for _ in 0..e {
                    v = v * assignment[var].clone();
                }
            }
            acc + v
        })
    }
}

/// A system re-read from the text format.
#[derive(Debug, Clone)]
pub struct ImportedSystem<S> {
    pub variables: Vec<String>,
    pub polynomials: Vec<ExportedPolynomial<S>>,
}

impl<S: Scalar> ImportedSystem<S> {
    pub fn evaluate(&self, assignment: &[S]) -> Result<Vec<S>> {
        if assignment.len() != self.variables.len() {
            return Err(Error::SizeMismatch(format!(
                "assignment length {} for {} variables",
                assignment.len(),
                self.variables.len()
            )));
        }
        Ok(self
            .polynomials
            .iter()
            .map(|p| p.evaluate(assignment))
            .collect())
    }
}

impl<S: Scalar> PolynomialSystem<S> {
    fn exported_polynomials(&self) -> Vec<ExportedPolynomial<S>> {
        let ambient = self.dim_d + 1;
        let mut polys = Vec::with_capacity(self.num_equations());
        for b in 0..self.num_free() {
            let mut terms: Vec<Term<S>> = (0..ambient)
                .map(|j| Term {
                    coeff: S::one(),
                    powers: vec![(b * ambient + j, 2)],
                })
                .collect();
            terms.push(Term {
                coeff: -S::one(),
                powers: vec![],
            });
            polys.push(ExportedPolynomial { terms });
        }
        for (alpha, c) in self.monomials.iter().zip(&self.g_constants) {
            let mut terms = Vec::new();
            // Constant first, matching evaluate's summation order, so
            // FLOAT round trips reproduce residuals bit for bit.
            if !c.is_zero() {
                terms.push(Term {
                    coeff: c.clone(),
                    powers: vec![],
                });
            }
            for b in 0..self.num_free() {
                let powers: Vec<(usize, u32)> = alpha
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| (b * ambient + j, e))
                    .collect();
                terms.push(Term {
                    coeff: S::one(),
                    powers,
                });
            }
            if terms.is_empty() {
                terms.push(Term {
                    coeff: c.clone(),
                    powers: vec![],
                });
            }
            polys.push(ExportedPolynomial { terms });
        }
        polys
    }
}

fn render_term<S: Scalar>(term: &Term<S>, names: &[String], strip_sign: bool) -> String {
    let coeff = if strip_sign {
        term.coeff.abs()
    } else {
        term.coeff.clone()
    };
    let mut factors = Vec::new();
    if term.powers.is_empty() || coeff != S::one() {
        factors.push(coeff.render());
    }
    for &(var, e) in &term.powers {
        if e == 1 {
            factors.push(names[var].clone());
        } else {
            factors.push(format!("{}^{}", names[var], e));
        }
    }
    factors.join("*")
}

/// Renders the system in the plain-text exchange format: a `vars:`
/// header naming the variables in layout order, then one polynomial per
/// line, f equations first.
pub fn export_system<S: Scalar>(system: &PolynomialSystem<S>) -> String {
    let names = system.variable_names();
    let mut out = String::from("vars:");
    for name in &names {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for poly in system.exported_polynomials() {
        if poly.terms.is_empty() {
            out.push_str("0\n");
            continue;
        }
        let mut line = String::new();
        for (i, term) in poly.terms.iter().enumerate() {
            if i == 0 {
                line.push_str(&render_term(term, &names, false));
            } else if term.coeff < S::zero() {
                line.push_str(" - ");
                line.push_str(&render_term(term, &names, true));
            } else {
                line.push_str(" + ");
                line.push_str(&render_term(term, &names, false));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses the text format produced by [`export_system`].
pub fn import_system<S: Scalar>(text: &str) -> Result<ImportedSystem<S>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty system text".into()))?;
    let rest = header
        .strip_prefix("vars:")
        .ok_or_else(|| Error::Parse("first line must start with 'vars:'".into()))?;
    let variables: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    let index: std::collections::HashMap<&str, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, name)| (name.as_str(), i))
        .collect();

    let mut polynomials = Vec::new();
    for line in lines {
        polynomials.push(parse_polynomial(line, &index)?);
    }
    Ok(ImportedSystem {
        variables,
        polynomials,
    })
}

fn parse_polynomial<S: Scalar>(
    line: &str,
    index: &std::collections::HashMap<&str, usize>,
) -> Result<ExportedPolynomial<S>> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial line".into()));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut sign_negative = false;
    while i < tokens.len() {
        let term = parse_term::<S>(tokens[i], index)?;
        let term = if sign_negative {
            Term {
                coeff: -term.coeff,
                powers: term.powers,
            }
        } else {
            term
        };
        terms.push(term);
        i += 1;
        if i == tokens.len() {
            break;
        }
        sign_negative = match tokens[i] {
            "+" => false,
            "-" => true,
            other => {
                return Err(Error::Parse(format!(
                    "expected '+' or '-', found {other:?}"
                )))
            }
        };
        i += 1;
        if i == tokens.len() {
            return Err(Error::Parse("dangling operator at end of line".into()));
        }
    }
    Ok(ExportedPolynomial { terms })
}

fn parse_term<S: Scalar>(
    token: &str,
    index: &std::collections::HashMap<&str, usize>,
) -> Result<Term<S>> {
    let mut coeff = S::one();
    let mut powers: Vec<(usize, u32)> = Vec::new();
    for factor in token.split('*') {
        if let Some(var) = index.get(factor) {
            push_power(&mut powers, *var, 1);
        } else if let Some((name, exp)) = factor.split_once('^') {
            let var = index
                .get(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            let e: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?;
            push_power(&mut powers, *var, e);
        } else {
            coeff = coeff * S::parse(factor)?;
        }
    }
    Ok(Term { coeff, powers })
}

fn push_power(powers: &mut Vec<(usize, u32)>, var: usize, e: u32) {
    for entry in powers.iter_mut() {
        if entry.0 == var {
            entry.1 += e;
            return;
        }
    }
    powers.push((var, e));
}
