//! Parametric polynomials in Z[x][y] and the systems built from them.

use num_traits::One;

use crate::arith::{integer_lcm, Coeff, Integer, Rational, Unital};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, Budget, MonomialOrder};
use crate::monomial::Monomial;
use crate::poly::{clear_rational, to_rational, Degree, Polynomial};

/// A polynomial over the joint index space with the parameter/variable split
/// made explicit: parameters are `0..m`, variables `m..m+n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPolynomial {
    pub poly: Polynomial<Integer>,
    pub m: usize,
    pub n: usize,
}

impl ParamPolynomial {
    pub fn new(poly: Polynomial<Integer>, m: usize, n: usize) -> Result<Self> {
        if poly.support_len() > m + n {
            return Err(Error::DimensionMismatch(format!(
                "polynomial uses variable index {} but m + n = {}",
                poly.support_len() - 1,
                m + n
            )));
        }
        Ok(Self { poly, m, n })
    }

    pub fn deg_x(&self) -> Degree {
        self.poly.block_degree(0..self.m)
    }

    pub fn deg_y(&self) -> Degree {
        self.poly.block_degree(self.m..self.m + self.n)
    }

    /// Substitute `x_i := alpha_i`; the result is indexed by the variables
    /// alone (`y_j` becomes index `j`).
    pub fn specialize(&self, alpha: &[Integer]) -> Result<Polynomial<Integer>> {
        specialize(&self.poly, self.m, alpha)
    }
}

/// Substitute the first `m` indices by `alpha` and shift the rest down by `m`.
pub fn specialize(f: &Polynomial<Integer>, m: usize, alpha: &[Integer]) -> Result<Polynomial<Integer>> {
    if alpha.len() != m {
        return Err(Error::WrongAlphaLength { expected: m, got: alpha.len() });
    }
    let mut out = Polynomial::zero();
    for (mono, c) in f.terms() {
        let mut coeff = c.clone();
        for (i, e) in mono.iter().filter(|&(i, _)| i < m) {
            coeff *= alpha[i].pow(e);
        }
        let shifted: Vec<u32> = mono.exponents().iter().skip(m).copied().collect();
        out.add_term(Monomial::from_exponents(shifted), &coeff);
    }
    Ok(out)
}

/// An instance `S = {f_1, ..., f_k}` with named parameters and variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSystem<C: Coeff = Integer> {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub polys: Vec<Polynomial<C>>,
}

impl<C: Coeff> PolynomialSystem<C> {
    pub fn m(&self) -> usize {
        self.params.len()
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn k(&self) -> usize {
        self.polys.len()
    }

    /// `max(m, n, k)`.
    pub fn size(&self) -> usize {
        self.m().max(self.n()).max(self.k())
    }

    pub fn names(&self) -> Vec<String> {
        self.params.iter().chain(&self.vars).cloned().collect()
    }

    pub fn x_block(&self) -> std::ops::Range<usize> {
        0..self.m()
    }

    pub fn y_block(&self) -> std::ops::Range<usize> {
        self.m()..self.m() + self.n()
    }
}

impl PolynomialSystem<Integer> {
    pub fn param_polys(&self) -> Vec<ParamPolynomial> {
        self.polys
            .iter()
            .map(|p| ParamPolynomial { poly: p.clone(), m: self.m(), n: self.n() })
            .collect()
    }

    /// The specialised system `S_alpha`: no parameters, same variables.
    pub fn specialize(&self, alpha: &[Integer]) -> Result<PolynomialSystem<Integer>> {
        let polys = self
            .polys
            .iter()
            .map(|f| specialize(f, self.m(), alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolynomialSystem { params: Vec::new(), vars: self.vars.clone(), polys })
    }
}

impl PolynomialSystem<Rational> {
    /// Scale each polynomial by the lcm of its coefficient denominators.
    pub fn clear_denominators(&self) -> PolynomialSystem<Integer> {
        PolynomialSystem {
            params: self.params.clone(),
            vars: self.vars.clone(),
            polys: self.polys.iter().map(|p| clear_rational(p).1).collect(),
        }
    }
}

impl From<&PolynomialSystem<Integer>> for PolynomialSystem<Rational> {
    fn from(s: &PolynomialSystem<Integer>) -> Self {
        PolynomialSystem {
            params: s.params.clone(),
            vars: s.vars.clone(),
            polys: s.polys.iter().map(to_rational).collect(),
        }
    }
}

/// `num / den` with both in Q[x].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Polynomial<Rational>,
    pub den: Polynomial<Rational>,
}

impl RationalFunction {
    pub fn new(num: Polynomial<Rational>, den: Polynomial<Rational>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: Polynomial<Rational>) -> Self {
        Self { num, den: Polynomial::one() }
    }
}

/// Polynomial in y whose coefficients are rational functions of x. The
/// monomials use the joint index space; the coefficient for each monomial
/// may itself depend on x.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FractionPolynomial {
    pub terms: Vec<(Monomial, RationalFunction)>,
}

/// Least common multiple in Q[x_1..x_N] (monic under lex), computed as the
/// generator of `<a> ∩ <b>` = `<t·a, (1 - t)·b> ∩ Q[x]`.
pub fn poly_lcm(
    a: &Polynomial<Rational>,
    b: &Polynomial<Rational>,
    budget: &Budget,
) -> Result<Polynomial<Rational>> {
    if a.is_zero() || b.is_zero() {
        return Ok(Polynomial::zero());
    }
    if a.is_constant() {
        return Ok(b.make_monic());
    }
    if b.is_constant() {
        return Ok(a.make_monic());
    }
    if a.div_exact_checked(b).is_some() {
        return Ok(a.make_monic());
    }
    if b.div_exact_checked(a).is_some() {
        return Ok(b.make_monic());
    }
    let t = a.support_len().max(b.support_len());
    let tv = Polynomial::<Rational>::var(t);
    let gens = vec![tv.mul(a), Polynomial::one().sub(&tv).mul(b)];
    let gb = buchberger(&gens, &MonomialOrder::elimination(t), false, budget)?;
    let l = gb
        .generators
        .into_iter()
        .find(|g| g.lives_in(0..t))
        .expect("intersection of principal ideals is nonzero");
    Ok(l.make_monic())
}

/// Greatest common divisor in Q[x] via `a * b / lcm(a, b)` (monic, lex).
pub fn poly_gcd(
    a: &Polynomial<Rational>,
    b: &Polynomial<Rational>,
    budget: &Budget,
) -> Result<Polynomial<Rational>> {
    if a.is_zero() {
        return Ok(b.make_monic());
    }
    if b.is_zero() {
        return Ok(a.make_monic());
    }
    let l = poly_lcm(a, b, budget)?;
    let g = a.mul(b).div_exact_checked(&l).expect("lcm divides the product");
    Ok(g.make_monic())
}

/// Scale every polynomial by the lcm of its coefficient denominators (both
/// the polynomial denominators in x and the integer denominators), giving
/// coefficients in Z[x]. The zero set over the closure of Q(x) is unchanged
/// because each output is a nonzero multiple of its input.
pub fn clear_denominators(
    polys: &[FractionPolynomial],
    budget: &Budget,
) -> Result<Vec<Polynomial<Integer>>> {
    polys
        .iter()
        .map(|f| {
            let mut l = Polynomial::<Rational>::one();
            for (_, rf) in &f.terms {
                if rf.den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                l = poly_lcm(&l, &rf.den, budget)?;
            }
            let mut acc = Polynomial::<Rational>::zero();
            for (mono, rf) in &f.terms {
                let factor = l.div_exact_checked(&rf.den).expect("lcm is a multiple");
                let term = Polynomial::term(mono.clone(), <Rational as One>::one());
                acc = acc.add(&rf.num.mul(&factor).mul(&term));
            }
            Ok(clear_rational(&acc).1)
        })
        .collect()
}

/// The integral multiplier `u` with `clear(f) = u * f`, for checks.
pub fn integer_denominator_lcm(p: &Polynomial<Rational>) -> Integer {
    p.terms().fold(<Integer as One>::one(), |acc, (_, c)| integer_lcm(&acc, c.denom()))
}

impl<C: Unital> PolynomialSystem<C> {
    pub fn empty(params: Vec<String>, vars: Vec<String>) -> Self {
        Self { params, vars, polys: Vec::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(Integer::from(n))
    }

    fn xq() -> Polynomial<Rational> {
        Polynomial::var(0)
    }

    fn yz(e: u32) -> Monomial {
        Monomial::var_pow(1, e)
    }

    #[test]
    fn specialize_examples() {
        // f = x1*y1 + y2 with m = 1
        let f = Polynomial::<Integer>::from_terms([
            (Monomial::from_exponents(vec![1, 1]), Integer::from(1)),
            (Monomial::var(2), Integer::from(1)),
        ]);
        let s = specialize(&f, 1, &[Integer::from(3)]).unwrap();
        let expect = Polynomial::from_terms([
            (Monomial::var(0), Integer::from(3)),
            (Monomial::var(1), Integer::from(1)),
        ]);
        assert_eq!(s, expect);

        // (x^2 - x) * y at x = 1 vanishes
        let g = Polynomial::<Integer>::from_terms([
            (Monomial::from_exponents(vec![2, 1]), Integer::from(1)),
            (Monomial::from_exponents(vec![1, 1]), Integer::from(-1)),
        ]);
        assert!(specialize(&g, 1, &[Integer::from(1)]).unwrap().is_zero());

        assert!(matches!(
            specialize(&g, 1, &[]),
            Err(Error::WrongAlphaLength { expected: 1, got: 0 })
        ));
    }

    #[test]
    fn parameter_free_specialization_is_identity_up_to_shift() {
        let f = Polynomial::<Integer>::from_terms([(Monomial::var_pow(0, 2), Integer::from(1))]);
        assert_eq!(specialize(&f, 0, &[]).unwrap(), f);
    }

    #[test]
    fn clear_denominator_examples() {
        let b = Budget::default();
        let one_over = |d: Polynomial<Rational>| RationalFunction::new(Polynomial::one(), d).unwrap();
        // (1/x) y + 1 -> y + x
        let f = FractionPolynomial {
            terms: vec![
                (yz(1), one_over(xq())),
                (Monomial::one(), RationalFunction::from_poly(Polynomial::one())),
            ],
        };
        // (1/2) y^2 - 1 -> y^2 - 2
        let g = FractionPolynomial {
            terms: vec![
                (yz(2), RationalFunction::from_poly(Polynomial::constant(q(1) / q(2)))),
                (Monomial::one(), RationalFunction::from_poly(Polynomial::constant(q(-1)))),
            ],
        };
        // (1/x) y + (1/x^2) y^2 -> x y + y^2
        let h = FractionPolynomial {
            terms: vec![(yz(1), one_over(xq())), (yz(2), one_over(xq().pow(2)))],
        };
        let out = clear_denominators(&[f, g, h], &b).unwrap();
        let xi = Polynomial::<Integer>::var(0);
        let yi = Polynomial::<Integer>::var(1);
        assert_eq!(out[0], &yi + &xi);
        assert_eq!(out[1], &yi.pow(2) - &Polynomial::from_int(2));
        assert_eq!(out[2], &(&xi * &yi) + &yi.pow(2));

        let bad = FractionPolynomial {
            terms: vec![(yz(1), RationalFunction { num: Polynomial::one(), den: Polynomial::zero() })],
        };
        assert_eq!(clear_denominators(&[bad], &b), Err(Error::ZeroDenominator));
    }

    #[test]
    fn lcm_and_gcd_of_multivariate() {
        let b = Budget::default();
        let x = xq();
        let y = Polynomial::<Rational>::var(1);
        let a = &(&x - &y) * &(&x + &Polynomial::one());
        let c = &(&x - &y) * &y;
        let l = poly_lcm(&a, &c, &b).unwrap();
        let expect = (&(&(&x - &y) * &(&x + &Polynomial::one())) * &y).make_monic();
        assert_eq!(l, expect);
        let g = poly_gcd(&a, &c, &b).unwrap();
        assert_eq!(g, (&x - &y).make_monic());
    }
}
