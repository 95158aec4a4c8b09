//! Univariate machinery: resultants, discriminants, integral scaling,
//! primitive elements, and solution witnesses `beta_i = P_i(theta) / b`.

use serde::{Deserialize, Serialize};

use crate::arith::{integer_lcm, Coeff, ExactDiv, FieldCoeff, Integer, Rational, Unital};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::monomial::Monomial;
use crate::poly::{clear_rational, content, to_rational, Degree, Polynomial};
use crate::sysio::{parse_polynomial, render_polynomial};
use crate::system::{poly_lcm, specialize, PolynomialSystem, RationalFunction};

/// Dense univariate polynomial `c_0 + c_1 t + ... + c_N t^N`, no trailing
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivarPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Unital> UnivarPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn identity() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| R::from_integer(&Integer::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as u64 - 1),
        }
    }

    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&R::from_integer(&Integer::from(i))))
                .collect(),
        )
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add_ref(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub_ref(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(R::one()), |acc, _| acc.mul(self))
    }

    /// Read a polynomial that only involves variable `var`.
    pub fn from_polynomial(f: &Polynomial<R>, var: usize) -> Result<Self> {
        let mut coeffs = vec![R::zero(); f.degree_in(var).finite().map_or(0, |d| d as usize + 1)];
        for (m, c) in f.terms() {
            if m.iter().any(|(i, _)| i != var) {
                return Err(Error::DimensionMismatch(format!("polynomial is not univariate in index {var}")));
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_polynomial(&self, var: usize) -> Polynomial<R> {
        Polynomial::from_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::var_pow(var, i as u32), c.clone())),
        )
    }

    pub fn render(&self, name: &str) -> String
    where
        R: crate::sysio::RenderCoeff,
    {
        render_polynomial(&self.to_polynomial(0), &[name.to_string()])
    }
}

impl<R: Unital + FieldCoeff> UnivarPoly<R> {
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let lc_inv = d.lc().expect("division by zero polynomial").inv();
        let dd = d.deg();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.last().unwrap().mul_ref(&lc_inv);
            let shift = r.len() - 1 - dd;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].sub_ref(&k.mul_ref(c));
            }
            q[shift] = k;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn make_monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Monic greatest common divisor (Euclid).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.make_monic()
    }
}

/// Coefficients of `f` as a polynomial in `var`, each a polynomial in the
/// remaining indices.
pub fn coefficients_in<C: Unital>(f: &Polynomial<C>, var: usize) -> UnivarPoly<Polynomial<C>> {
    let n = f.degree_in(var).finite().map_or(0, |d| d as usize + 1);
    let mut coeffs = vec![Polynomial::zero(); n];
    for (m, c) in f.terms() {
        let e = m.exp(var) as usize;
        let rest = Monomial::from_exponents(
            m.exponents().iter().enumerate().map(|(i, &x)| if i == var { 0 } else { x }).collect(),
        );
        coeffs[e].add_term(rest, c);
    }
    UnivarPoly::new(coeffs)
}

pub fn from_coefficients<C: Unital>(u: &UnivarPoly<Polynomial<C>>, var: usize) -> Polynomial<C> {
    u.coeffs().iter().enumerate().fold(Polynomial::zero(), |acc, (i, c)| {
        acc.add(&c.mul_term(&Monomial::var_pow(var, i as u32), &C::one()))
    })
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant<R: ExactDiv>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg_ref()
    } else {
        d
    }
}

/// Sylvester resultant `lc(p)^{deg q} lc(q)^{deg p} prod (a_i - b_j)`.
pub fn resultant<R: ExactDiv>(p: &UnivarPoly<R>, q: &UnivarPoly<R>) -> Result<R> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (dp, dq) = (p.deg(), q.deg());
    let n = dp + dq;
    let mut rows = Vec::with_capacity(n);
    for i in 0..dq {
        let mut row = vec![R::zero(); n];
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..dp {
        let mut row = vec![R::zero(); n];
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss_determinant(rows))
}

/// `(-1)^{N(N-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant<R: ExactDiv>(p: &UnivarPoly<R>) -> Result<R> {
    let n = match p.degree() {
        Degree::NegInfinity => return Err(Error::ZeroPolynomial),
        Degree::Finite(0) => return Err(Error::ConstantPolynomial),
        Degree::Finite(n) => n,
    };
    let r = resultant(p, &p.derivative())?;
    let d = r.div_exact(p.lc().expect("nonzero"));
    Ok(if (n * (n - 1) / 2) % 2 == 1 { d.neg_ref() } else { d })
}

/// Integer-coefficient lcm of denominators: lcm of the integer contents
/// times the Q[x]-lcm of the primitive parts.
fn denominator_lcm(dens: &[&Polynomial<Rational>], budget: &Budget) -> Result<Polynomial<Rational>> {
    let mut int_part = Integer::one();
    let mut poly_part = Polynomial::<Rational>::one();
    for d in dens {
        let (_, di) = clear_rational(d);
        let ct = content(&di);
        int_part = integer_lcm(&int_part, &ct);
        let prim = to_rational(&di.map_coeffs(|c| c / &ct));
        poly_part = poly_lcm(&poly_part, &prim, budget)?;
    }
    let (_, pi) = clear_rational(&poly_part);
    let pi = pi.map_coeffs(|c| c / content(&pi));
    Ok(to_rational(&pi).scale(&Rational::from_integer(num_traits::Signed::abs(&int_part))))
}

/// For monic `f` with rational-function coefficients `c_0..c_N`, return
/// `(g, d)` with `g(t) = d^N f(t / d)` monic over Q[x]: roots scale by `d`.
pub fn make_integral(
    f: &[RationalFunction],
    budget: &Budget,
) -> Result<(UnivarPoly<Polynomial<Rational>>, Polynomial<Rational>)> {
    let Some(top) = f.iter().rposition(|c| !c.num.is_zero()) else {
        return Err(Error::ZeroPolynomial);
    };
    if f.iter().any(|c| c.den.is_zero()) {
        return Err(Error::ZeroDenominator);
    }
    if f[top].num != f[top].den {
        return Err(Error::NotMonic);
    }
    // move rational constants into integer numerator and denominator
    let f: Vec<RationalFunction> = f
        .iter()
        .map(|c| {
            let (ln, n) = clear_rational(&c.num);
            let (ld, d) = clear_rational(&c.den);
            RationalFunction {
                num: to_rational(&n).scale(&Rational::from_integer(ld)),
                den: to_rational(&d).scale(&Rational::from_integer(ln)),
            }
        })
        .collect();
    let dens: Vec<&Polynomial<Rational>> = f[..top].iter().filter(|c| !c.num.is_zero()).map(|c| &c.den).collect();
    let d = denominator_lcm(&dens, budget)?;
    let mut coeffs = Vec::with_capacity(top + 1);
    for (i, c) in f[..=top].iter().enumerate() {
        if i == top {
            coeffs.push(Polynomial::one());
            continue;
        }
        let scaled = c.num.mul(&d.pow((top - i) as u32));
        let g = scaled
            .div_exact_checked(&c.den)
            .ok_or_else(|| Error::Precondition("denominator does not divide the scaled numerator".into()))?;
        coeffs.push(g);
    }
    Ok((UnivarPoly::new(coeffs), d))
}

/// `Res_z(p(t - c z), q(z))` as a monic polynomial in `t`; its roots include
/// `a + c b` for all roots `a` of `p` and `b` of `q`.
pub fn minpoly_sum(p: &UnivarPoly<Rational>, q: &UnivarPoly<Rational>, c: &Integer) -> Result<UnivarPoly<Rational>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // t = index 0, z = index 1
    let shift = Polynomial::<Rational>::var(0).sub(&Polynomial::var(1).scale(&Rational::from_integer(c.clone())));
    let composed = p.coeffs().iter().enumerate().fold(Polynomial::zero(), |acc, (i, a)| {
        acc.add(&shift.pow(i as u32).scale(a))
    });
    let pz = coefficients_in(&composed, 1);
    let qz = UnivarPoly::new(q.coeffs().iter().map(|a| Polynomial::constant(a.clone())).collect());
    let r = resultant(&pz, &qz)?;
    Ok(UnivarPoly::from_polynomial(&r, 0)?.make_monic())
}

/// Least `c` in `1..=l^2 m^2 + 1` with `minpoly_sum(p, q, c)` squarefree of
/// degree `l m`. Shared roots between `p` and `q` make the full degree
/// unreachable and are reported as a degenerate compositum.
pub fn primitive_element(p: &UnivarPoly<Rational>, q: &UnivarPoly<Rational>) -> Result<(u64, UnivarPoly<Rational>)> {
    let (l, m) = match (p.degree(), q.degree()) {
        (Degree::Finite(l), Degree::Finite(m)) if l >= 1 && m >= 1 => (l, m),
        (Degree::NegInfinity, _) | (_, Degree::NegInfinity) => return Err(Error::ZeroPolynomial),
        _ => return Err(Error::ConstantPolynomial),
    };
    for (f, name) in [(p, "p"), (q, "q")] {
        if discriminant(f)?.is_zero() {
            return Err(Error::Precondition(format!("{name} has a repeated root")));
        }
    }
    let target = (l * m) as usize;
    if p.gcd(q).deg() >= 1 {
        return Err(Error::DegenerateCompositum { expected: target });
    }
    let bound = l * l * m * m + 1;
    for c in 1..=bound {
        let r = minpoly_sum(p, q, &Integer::from(c))?;
        if r.deg() == target && !discriminant(&r)?.is_zero() {
            return Ok((c, r));
        }
    }
    Err(Error::NoSeparableCandidate { bound })
}

/// A claimed solution `beta_i = P_i(x, theta) / b(x)` of a parametric system,
/// where `theta` is a root of `m(x, theta)`, monic in `theta`. Polynomials
/// use the parameters at indices `0..m` and `theta` at index `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionWitness {
    pub minpoly: Polynomial<Rational>,
    pub p: Vec<Polynomial<Integer>>,
    pub b: Polynomial<Integer>,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    #[serde(default = "default_theta")]
    var: String,
    m: String,
    p: Vec<String>,
    b: String,
}

fn default_theta() -> String {
    "t".to_string()
}

impl SolutionWitness {
    /// JSON `{"var": "t", "m": "...", "p": ["..."], "b": "..."}` with the
    /// polynomials written in the parameter names and `var`.
    pub fn from_json(text: &str, params: &[String]) -> Result<Self> {
        let j: WitnessJson = serde_json::from_str(text).map_err(|e| Error::Config(format!("witness JSON: {e}")))?;
        let mut names = params.to_vec();
        names.push(j.var.clone());
        let integral = |s: &str| -> Result<Polynomial<Integer>> {
            let p = parse_polynomial(s, &names)?;
            if p.terms().any(|(_, c)| !c.is_integer()) {
                return Err(Error::Config(format!("`{s}` must have integer coefficients")));
            }
            Ok(p.map_coeffs(|c| c.to_integer()))
        };
        Ok(Self {
            minpoly: parse_polynomial(&j.m, &names)?,
            p: j.p.iter().map(|s| integral(s)).collect::<Result<_>>()?,
            b: integral(&j.b)?,
        })
    }

    fn theta(&self, m: usize) -> usize {
        m
    }
}

/// Remainder of `g` modulo `m`, both in Q[x][theta] with `m` monic in theta.
fn rem_monic(g: &Polynomial<Rational>, m: &UnivarPoly<Polynomial<Rational>>, theta: usize) -> Polynomial<Rational> {
    let mut r = coefficients_in(g, theta);
    let n = m.deg();
    while !r.is_zero() && r.deg() >= n {
        let lead = r.lc().unwrap().clone();
        let shift = r.deg() - n;
        let mut sub = vec![Polynomial::zero(); shift];
        sub.extend(m.coeffs().iter().map(|c| c.mul(&lead)));
        r = r.sub(&UnivarPoly::new(sub));
    }
    from_coefficients(&r, theta)
}

/// `b^e f(x, P/b)` with `e = max(2, deg_y f)`, a polynomial in x and theta.
fn cleared_substitution(f: &Polynomial<Integer>, m: usize, w: &SolutionWitness) -> Polynomial<Integer> {
    let ys = m..f.support_len().max(m);
    let e = f.block_degree(ys.clone()).finite().unwrap_or(0).max(2);
    let mut out = Polynomial::zero();
    for (mono, c) in f.terms() {
        let yd = mono.block_degree(ys.clone());
        let mut t = Polynomial::term(mono.restrict(0..m), c.clone()).mul(&w.b.pow((e - yd) as u32));
        for (i, k) in mono.iter().filter(|&(i, _)| i >= m) {
            t = t.mul(&w.p[i - m].pow(k));
        }
        out = out.add(&t);
    }
    out
}

fn monic_minpoly(w: &SolutionWitness, m: usize) -> Result<UnivarPoly<Polynomial<Rational>>> {
    let theta = w.theta(m);
    if w.minpoly.support_len() > m + 1 {
        return Err(Error::DimensionMismatch("minimal polynomial uses unknown indices".into()));
    }
    let mp = coefficients_in(&w.minpoly, theta);
    if mp.deg() < 1 || mp.is_zero() {
        return Err(Error::ConstantPolynomial);
    }
    if !mp.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(mp)
}

fn validate_shape(s: &PolynomialSystem, w: &SolutionWitness) -> Result<()> {
    if w.p.len() != s.n() {
        return Err(Error::DimensionMismatch(format!("{} numerators for {} variables", w.p.len(), s.n())));
    }
    if w.b.is_zero() {
        return Err(Error::InvalidWitness("b is zero".into()));
    }
    if !w.b.lives_in(0..s.m()) {
        return Err(Error::InvalidWitness("b depends on theta".into()));
    }
    if w.p.iter().any(|p| p.support_len() > s.m() + 1) {
        return Err(Error::DimensionMismatch("numerator uses unknown indices".into()));
    }
    Ok(())
}

/// Every `g_i = b^{max(2, deg_y f_i)} f_i(P / b)` is divisible by `m` in
/// Q[x][theta].
pub fn check_witness(s: &PolynomialSystem, w: &SolutionWitness) -> Result<bool> {
    validate_shape(s, w)?;
    let mp = monic_minpoly(w, s.m())?;
    Ok(s.polys.iter().all(|f| {
        let g = to_rational(&cleared_substitution(f, s.m(), w));
        rem_monic(&g, &mp, s.m()).is_zero()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSpecialization {
    pub b_nonzero: bool,
    /// `m(alpha, theta)`, nonconstant since `m` is monic in theta.
    pub specialized_minpoly: UnivarPoly<Rational>,
    /// `P_i(alpha, theta) / b(alpha)` reduced modulo the specialised minpoly,
    /// when `b(alpha) != 0`.
    pub solution: Option<Vec<UnivarPoly<Rational>>>,
    /// Whether each `f_i(alpha, solution)` reduces to zero.
    pub verified: Option<bool>,
}

pub fn specialize_witness(s: &PolynomialSystem, w: &SolutionWitness, alpha: &[Integer]) -> Result<WitnessSpecialization> {
    if !check_witness(s, w)? {
        return Err(Error::InvalidWitness("divisibility check failed".into()));
    }
    let m = s.m();
    if alpha.len() != m {
        return Err(Error::WrongAlphaLength { expected: m, got: alpha.len() });
    }
    let at: Vec<(usize, Rational)> = alpha.iter().enumerate().map(|(i, a)| (i, Rational::from_integer(a.clone()))).collect();
    let spec = |p: &Polynomial<Rational>| -> Result<UnivarPoly<Rational>> {
        UnivarPoly::from_polynomial(&p.substitute(&at), m)
    };
    let mu = spec(&w.minpoly)?;
    let b_val = spec(&to_rational(&w.b))?.coeff(0);
    if b_val.is_zero() {
        return Ok(WitnessSpecialization { b_nonzero: false, specialized_minpoly: mu, solution: None, verified: None });
    }
    let inv = b_val.inv();
    let beta: Vec<UnivarPoly<Rational>> = w
        .p
        .iter()
        .map(|p| Ok(spec(&to_rational(p))?.scale(&inv).div_rem(&mu).1))
        .collect::<Result<_>>()?;
    let sa = s.specialize(alpha)?;
    let verified = sa.polys.iter().all(|f| {
        let mut acc = UnivarPoly::<Rational>::zero();
        for (mono, c) in f.terms() {
            let mut t = UnivarPoly::constant(Rational::from_integer(c.clone()));
            for (i, k) in mono.iter() {
                for _ in 0..k {
                    t = t.mul(&beta[i]).div_rem(&mu).1;
                }
            }
            acc = acc.add(&t);
        }
        acc.div_rem(&mu).1.is_zero()
    });
    Ok(WitnessSpecialization { b_nonzero: true, specialized_minpoly: mu, solution: Some(beta), verified: Some(verified) })
}

/// Convenience: specialise a parametric polynomial and read it as
/// univariate in variable `var` (after the parameters are removed).
pub fn specialize_univariate(f: &Polynomial<Integer>, m: usize, alpha: &[Integer], var: usize) -> Result<UnivarPoly<Integer>> {
    UnivarPoly::from_polynomial(&specialize(f, m, alpha)?, var)
}
