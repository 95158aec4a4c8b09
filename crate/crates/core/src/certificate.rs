//! Parametric Nullstellensatz certificates `scaling * a = sum g_i f_i` with
//! `a` a nonzero polynomial in the parameters alone.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{integer_gcd, integer_lcm, Integer, Rational};
use crate::error::{Error, Result};
use crate::groebner::{hnp_elimination_impl, Budget};
use crate::linalg::{Echelon, SparseRow};
use crate::monomial::{monomials_up_to, Monomial};
use crate::poly::{content, Degree, Polynomial};
use crate::sysio::{parse_polynomial, render_polynomial};
use crate::system::PolynomialSystem;
use crate::Answer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullstellensatzCertificate {
    /// Primitive, positive leading coefficient, parameters only.
    pub a: Polynomial<Integer>,
    pub g: Vec<Polynomial<Integer>>,
    /// Positive integer with `scaling * a = sum g_i f_i`.
    pub scaling: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    /// `max_i deg_y(g_i f_i)`.
    pub deg_y_max: Degree,
    /// `max(deg_x(a), max_i deg_x(g_i f_i))`.
    pub deg_x_max: Degree,
    /// `deg_y_max <= 2^k` and `deg_x_max <= k * 2^k`.
    pub within_degree_bounds: bool,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    a: String,
    g: Vec<String>,
    scaling: String,
}

impl NullstellensatzCertificate {
    /// Canonical certificate from rational cofactors: clear denominators,
    /// remove the common content, then split `sum g_i f_i` into a positive
    /// scaling times a primitive `a`.
    pub fn from_rational_cofactors(system: &PolynomialSystem, g: &[Polynomial<Rational>]) -> Result<Self> {
        let den = g
            .iter()
            .flat_map(|p| p.terms())
            .fold(Integer::one(), |acc, (_, c)| integer_lcm(&acc, c.denom()));
        let mut gi: Vec<Polynomial<Integer>> = g
            .iter()
            .map(|p| p.map_coeffs(|c| (c * Rational::from_integer(den.clone())).to_integer()))
            .collect();
        let common = gi
            .iter()
            .flat_map(|p| p.terms())
            .fold(Integer::zero(), |acc, (_, c)| integer_gcd(&acc, c));
        if !common.is_zero() && !common.is_one() {
            gi = gi.iter().map(|p| p.map_coeffs(|c| c / &common)).collect();
        }
        let combo = combination(&gi, &system.polys);
        if combo.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !combo.lives_in(system.x_block()) {
            return Err(Error::InvalidWitness("combination depends on the variables".into()));
        }
        let ct = content(&combo);
        if ct.is_negative() {
            gi = gi.iter().map(Polynomial::neg).collect();
        }
        let a = combo.map_coeffs(|c| c / &ct);
        Ok(Self { a, g: gi, scaling: ct.abs() })
    }

    pub fn to_json(&self, names: &[String]) -> String {
        let j = CertificateJson {
            a: render_polynomial(&self.a, names),
            g: self.g.iter().map(|p| render_polynomial(p, names)).collect(),
            scaling: self.scaling.to_string(),
        };
        serde_json::to_string_pretty(&j).expect("certificate is serialisable")
    }

    pub fn from_json(text: &str, names: &[String]) -> Result<Self> {
        let j: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("certificate JSON: {e}")))?;
        let integral = |s: &str| -> Result<Polynomial<Integer>> {
            let p = parse_polynomial(s, names)?;
            if p.terms().any(|(_, c)| !c.is_integer()) {
                return Err(Error::Config(format!("certificate polynomial `{s}` has non-integer coefficients")));
            }
            Ok(p.map_coeffs(|c| c.to_integer()))
        };
        let scaling: Integer = j
            .scaling
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("scaling `{}` is not an integer", j.scaling)))?;
        Ok(Self {
            a: integral(&j.a)?,
            g: j.g.iter().map(|s| integral(s)).collect::<Result<_>>()?,
            scaling,
        })
    }
}

fn combination(g: &[Polynomial<Integer>], f: &[Polynomial<Integer>]) -> Polynomial<Integer> {
    g.iter().zip(f).fold(Polynomial::zero(), |acc, (gi, fi)| acc.add(&gi.mul(fi)))
}

/// Check `scaling * a = sum g_i f_i` exactly and compare observed degrees
/// with `2^k` (in y) and `k * 2^k` (in x).
pub fn verify_certificate(system: &PolynomialSystem, cert: &NullstellensatzCertificate) -> Result<VerificationReport> {
    let k = system.k();
    if cert.g.len() != k {
        return Err(Error::DimensionMismatch(format!("{} cofactors for {k} equations", cert.g.len())));
    }
    let width = system.m() + system.n();
    if let Some(p) = std::iter::once(&cert.a).chain(&cert.g).find(|p| p.support_len() > width) {
        return Err(Error::DimensionMismatch(format!(
            "certificate uses variable index {} but the system has {width}",
            p.support_len() - 1
        )));
    }
    let (xb, yb) = (system.x_block(), system.y_block());
    let products: Vec<Polynomial<Integer>> = cert.g.iter().zip(&system.polys).map(|(g, f)| g.mul(f)).collect();
    let deg_y_max = products.iter().map(|p| p.block_degree(yb.clone())).max().unwrap_or(Degree::NegInfinity);
    let deg_x_max = products
        .iter()
        .map(|p| p.block_degree(xb.clone()))
        .chain(std::iter::once(cert.a.block_degree(xb.clone())))
        .max()
        .unwrap_or(Degree::NegInfinity);

    let sum = products.iter().fold(Polynomial::zero(), |acc, p| acc.add(p));
    let valid = !cert.a.is_zero()
        && cert.scaling.is_positive()
        && cert.a.lives_in(xb)
        && sum == cert.a.scale(&cert.scaling);

    let two_k = Integer::one() << k;
    let within = |d: Degree, bound: &Integer| d.finite().is_none_or(|d| Integer::from(d) <= *bound);
    let within_degree_bounds = within(deg_y_max, &two_k) && within(deg_x_max, &(&two_k * Integer::from(k)));
    Ok(VerificationReport { valid, deg_y_max, deg_x_max, within_degree_bounds })
}

/// Certificate from the cofactor-tracked elimination basis; `a` is the
/// elimination witness up to an integer factor.
pub fn find_certificate(system: &PolynomialSystem, budget: &Budget) -> Result<NullstellensatzCertificate> {
    let outcome = hnp_elimination_impl(system, budget, true)?;
    if outcome.answer == Answer::Sat {
        return Err(Error::Precondition("system is satisfiable, so no certificate exists".into()));
    }
    let m = system.m();
    let idx = outcome
        .basis
        .generators
        .iter()
        .position(|g| g.lives_in(0..m))
        .expect("unsatisfiable outcome has a parameter-only element");
    let rows = outcome.basis.cofactors.expect("cofactors were tracked");
    NullstellensatzCertificate::from_rational_cofactors(system, &rows[idx])
}

/// Search for a certificate with `deg_y(g_i f_i) <= d_y` and
/// `deg_x(g_i) <= d_x`, `deg_x(a) <= d_x`, by linear algebra over Q on the
/// unknown coefficients of the `g_i`.
pub fn bounded_degree_search(
    system: &PolynomialSystem,
    d_y: u64,
    d_x: u64,
    budget: &Budget,
) -> Result<Option<NullstellensatzCertificate>> {
    let (xb, yb) = (system.x_block(), system.y_block());
    let xmons = monomials_up_to(xb.clone(), d_x);

    // column -> (equation, multiplier monomial)
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for (i, f) in system.polys.iter().enumerate() {
        let Some(df) = f.block_degree(yb.clone()).finite() else { continue };
        if df > d_y {
            continue;
        }
        let ymons = monomials_up_to(yb.clone(), d_y - df);
        if columns.len() + ymons.len() * xmons.len() > budget.max_unknowns {
            return Err(Error::BudgetExceeded(format!(
                "bounded search at (d_y, d_x) = ({d_y}, {d_x}) needs more than {} unknowns",
                budget.max_unknowns
            )));
        }
        for ym in &ymons {
            for xm in &xmons {
                columns.push((i, ym.mul(xm)));
            }
        }
    }

    // rows: one per monomial of sum g_i f_i
    let mut rows: std::collections::BTreeMap<Monomial, SparseRow<Rational>> = Default::default();
    for (col, (i, mu)) in columns.iter().enumerate() {
        for (nu, c) in system.polys[*i].terms() {
            rows.entry(mu.mul(nu)).or_default().insert(col, Rational::from_integer(c.clone()));
        }
    }
    let is_a_row = |mono: &Monomial| mono.block_degree(yb.clone()) == 0 && mono.degree() <= d_x;

    let mut ech = Echelon::new();
    let mut a_rows = Vec::new();
    for (mono, row) in rows {
        if is_a_row(&mono) {
            a_rows.push(row);
        } else {
            ech.insert(row);
        }
    }
    let zero = Rational::zero();
    let kernel = ech.kernel(columns.len(), &Rational::one());
    let Some(v) = kernel
        .into_iter()
        .find(|v| a_rows.iter().any(|r| !crate::linalg::dot(r, v, &zero).is_zero()))
    else {
        return Ok(None);
    };

    let mut g = vec![Polynomial::<Rational>::zero(); system.k()];
    for (col, c) in &v {
        let (i, mu) = &columns[*col];
        g[*i].add_term(mu.clone(), c);
    }
    NullstellensatzCertificate::from_rational_cofactors(system, &g).map(Some)
}

/// Run [`bounded_degree_search`] on the schedule `d_y = 1, 2, 4, ..., 2^k`
/// with `d_x = k * d_y`, returning the first certificate found.
pub fn search_up_to_degree_bounds(
    system: &PolynomialSystem,
    budget: &Budget,
) -> Result<Option<NullstellensatzCertificate>> {
    let k = system.k() as u32;
    let top = 1u64.checked_shl(k).ok_or_else(|| Error::BudgetExceeded("2^k overflows".into()))?;
    let mut d_y = 1;
    loop {
        let d = d_y.min(top);
        if let Some(c) = bounded_degree_search(system, d, d * k as u64, budget)? {
            return Ok(Some(c));
        }
        if d == top {
            return Ok(None);
        }
        d_y *= 2;
    }
}
