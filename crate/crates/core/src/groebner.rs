//! Buchberger's algorithm over a coefficient field, with optional cofactor
//! tracking, plus the two decision oracles built on it: the unit-ideal test
//! (HN) and the elimination-ideal test for parametric systems (HNP).

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{Coeff, FieldCoeff, PrimeFieldElem, Rational};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{to_rational, Polynomial};
use crate::system::PolynomialSystem;
use crate::Answer;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Eliminates every variable with index `>= retained` (the y-block);
    /// grevlex inside each block.
    BlockElimination { retained: usize },
}

/// A monomial order, optionally applied after relabelling variables:
/// `permutation[k]` is the variable treated as the `k`-th one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub permutation: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        Self { kind: OrderKind::Lex, permutation: None }
    }

    pub fn grevlex() -> Self {
        Self { kind: OrderKind::GrevLex, permutation: None }
    }

    /// Block order eliminating the variables `retained..`.
    pub fn elimination(retained: usize) -> Self {
        Self { kind: OrderKind::BlockElimination { retained }, permutation: None }
    }

    pub fn with_permutation(mut self, permutation: Vec<usize>) -> Self {
        self.permutation = Some(permutation);
        self
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.permutation {
            None => self.cmp_plain(a, b),
            Some(perm) => {
                let mut rank = vec![usize::MAX; perm.iter().max().map_or(0, |m| m + 1)];
                for (k, &v) in perm.iter().enumerate() {
                    rank[v] = k;
                }
                let relabel = |m: &Monomial| {
                    m.remap(|i| rank.get(i).copied().filter(|&r| r != usize::MAX).unwrap_or(i))
                };
                self.cmp_plain(&relabel(a), &relabel(b))
            }
        }
    }

    fn cmp_plain(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.cmp_lex(b),
            OrderKind::GrevLex => a.cmp_grevlex(b),
            OrderKind::BlockElimination { retained } => {
                let hi = a.support_len().max(b.support_len()).max(retained);
                a.cmp_grevlex_block(b, retained..hi)
                    .then_with(|| a.cmp_grevlex_block(b, 0..retained))
            }
        }
    }
}

/// Resource caps. Exceeding one yields [`Error::BudgetExceeded`], never a
/// wrong answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_basis: usize,
    pub max_terms: usize,
    pub max_reductions: u64,
    /// Cap on the number of unknowns in linear-algebra searches.
    pub max_unknowns: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_basis: 2_000, max_terms: 50_000, max_reductions: 2_000_000, max_unknowns: 6_000 }
    }
}

/// Terms sorted descending under a fixed order.
#[derive(Clone, Debug)]
struct Sorted<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: FieldCoeff> Sorted<C> {
    fn from_poly(p: &Polynomial<C>, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, C)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self { terms }
    }

    fn to_poly(&self) -> Polynomial<C> {
        Polynomial::from_terms(self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &C {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&self, k: &C) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))).collect() }
    }

    /// `self - k * t * g`, merging two descending lists.
    fn sub_scaled(&self, k: &C, t: &Monomial, g: &Sorted<C>, order: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, c)| (m.mul(t), c.mul_ref(k))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, c.neg_ref()));
                }
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, c.neg_ref()));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap().clone();
                        let (_, cb) = b.next().unwrap();
                        let c = ca.sub_ref(&cb);
                        if !c.is_zero() {
                            out.push((m, c));
                        }
                    }
                },
            }
        }
        Self { terms: out }
    }
}

struct Elem<C> {
    poly: Sorted<C>,
    cof: Option<Vec<Polynomial<C>>>,
}

struct Engine<'a, C> {
    order: &'a MonomialOrder,
    budget: &'a Budget,
    reductions: u64,
    ngens: usize,
    _c: std::marker::PhantomData<C>,
}

impl<'a, C: FieldCoeff> Engine<'a, C> {
    fn tick(&mut self) -> Result<()> {
        self.reductions += 1;
        if self.reductions > self.budget.max_reductions {
            return Err(Error::BudgetExceeded(format!(
                "more than {} reduction steps",
                self.budget.max_reductions
            )));
        }
        Ok(())
    }

    fn check_terms(&self, p: &Sorted<C>) -> Result<()> {
        if p.terms.len() > self.budget.max_terms {
            return Err(Error::BudgetExceeded(format!(
                "intermediate polynomial with {} terms (cap {})",
                p.terms.len(),
                self.budget.max_terms
            )));
        }
        Ok(())
    }

    /// Full reduction of `f` (with cofactors `cof`) by the listed basis elements.
    fn reduce(
        &mut self,
        mut f: Sorted<C>,
        mut cof: Option<Vec<Polynomial<C>>>,
        basis: &[Elem<C>],
        active: &[usize],
    ) -> Result<(Sorted<C>, Option<Vec<Polynomial<C>>>)> {
        let mut rem: Vec<(Monomial, C)> = Vec::new();
        while !f.is_zero() {
            let (lm, lc) = (f.lm().clone(), f.lc().clone());
            let divisor = active.iter().copied().find(|&i| basis[i].poly.lm().divides(&lm));
            match divisor {
                Some(i) => {
                    self.tick()?;
                    let g = &basis[i];
                    let t = lm.div(g.poly.lm()).expect("divisibility checked");
                    let k = lc.div_ref(g.poly.lc());
                    f = f.sub_scaled(&k, &t, &g.poly, self.order);
                    self.check_terms(&f)?;
                    if let (Some(cf), Some(cg)) = (cof.as_mut(), g.cof.as_ref()) {
                        for (a, b) in cf.iter_mut().zip(cg) {
                            *a = a.sub(&b.mul_term(&t, &k));
                        }
                    }
                }
                None => {
                    let head = f.terms.remove(0);
                    rem.push(head);
                }
            }
        }
        Ok((Sorted { terms: rem }, cof))
    }

    fn monic(&self, e: Elem<C>) -> Elem<C> {
        let inv = e.poly.lc().inv();
        Elem {
            cof: e.cof.map(|v| v.iter().map(|p| p.scale(&inv)).collect()),
            poly: e.poly.scale(&inv),
        }
    }

    fn spoly(&mut self, a: &Elem<C>, b: &Elem<C>) -> Result<Elem<C>> {
        let l = a.poly.lm().lcm(b.poly.lm());
        let ta = l.div(a.poly.lm()).unwrap();
        let tb = l.div(b.poly.lm()).unwrap();
        // both monic: S = ta*a - tb*b
        let one = a.poly.lc().one_like();
        let zero = Sorted { terms: Vec::new() };
        let pa = zero.sub_scaled(&one.neg_ref(), &ta, &a.poly, self.order);
        let s = pa.sub_scaled(&one, &tb, &b.poly, self.order);
        let cof = match (&a.cof, &b.cof) {
            (Some(ca), Some(cb)) => Some(
                ca.iter()
                    .zip(cb)
                    .map(|(x, y)| x.mul_term(&ta, &one).sub(&y.mul_term(&tb, &one)))
                    .collect(),
            ),
            _ => None,
        };
        self.check_terms(&s)?;
        Ok(Elem { poly: s, cof })
    }
}

/// A reduced Groebner basis, sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Coeff> {
    pub generators: Vec<Polynomial<C>>,
    pub order: MonomialOrder,
    /// `generators[i] = sum_j cofactors[i][j] * input[j]` when tracked.
    pub cofactors: Option<Vec<Vec<Polynomial<C>>>>,
}

impl<C: FieldCoeff> GroebnerBasis<C> {
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| !g.is_zero() && g.is_constant())
    }

    pub fn leading_monomial(&self, i: usize) -> Monomial {
        let order = &self.order;
        self.generators[i]
            .leading_term_by(|a, b| order.cmp(a, b))
            .map(|(m, _)| m.clone())
            .expect("basis elements are nonzero")
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.generators.len();
        for i in 0..n {
            for j in i + 1..n {
                let s = s_polynomial(&self.generators[i], &self.generators[j], &self.order);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reducedness: monic, and no term of any element divisible by the
    /// leading monomial of another.
    pub fn is_reduced(&self) -> bool {
        let lms: Vec<Monomial> = (0..self.generators.len()).map(|i| self.leading_monomial(i)).collect();
        for (i, g) in self.generators.iter().enumerate() {
            let lc_is_one = g.coeff(&lms[i]).is_some_and(|c| c.is_one());
            if !lc_is_one {
                return false;
            }
            for (m, _) in g.terms() {
                if lms.iter().enumerate().any(|(j, l)| j != i && l.divides(m)) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the cofactor identity against the original generators.
    pub fn cofactor_identity_holds(&self, input: &[Polynomial<C>]) -> bool {
        let Some(cof) = &self.cofactors else { return false };
        self.generators.iter().zip(cof).all(|(g, row)| {
            let mut acc = Polynomial::zero();
            for (c, f) in row.iter().zip(input) {
                acc = acc.add(&c.mul(f));
            }
            &acc == g
        })
    }
}

pub fn s_polynomial<C: FieldCoeff>(
    a: &Polynomial<C>,
    b: &Polynomial<C>,
    order: &MonomialOrder,
) -> Polynomial<C> {
    let (la, ca) = a.leading_term_by(|x, y| order.cmp(x, y)).expect("nonzero");
    let (lb, cb) = b.leading_term_by(|x, y| order.cmp(x, y)).expect("nonzero");
    let l = la.lcm(lb);
    let ta = l.div(la).unwrap();
    let tb = l.div(lb).unwrap();
    a.mul_term(&ta, &ca.inv()).sub(&b.mul_term(&tb, &cb.inv()))
}

/// Remainder of `f` on division by the basis; no term of the result is
/// divisible by a leading monomial of `g`.
pub fn normal_form<C: FieldCoeff>(f: &Polynomial<C>, g: &GroebnerBasis<C>) -> Polynomial<C> {
    let basis: Vec<Elem<C>> = g
        .generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| Elem { poly: Sorted::from_poly(p, &g.order), cof: None })
        .collect();
    let active: Vec<usize> = (0..basis.len()).collect();
    let unlimited = Budget {
        max_basis: usize::MAX,
        max_terms: usize::MAX,
        max_reductions: u64::MAX,
        max_unknowns: usize::MAX,
    };
    let mut engine = Engine {
        order: &g.order,
        budget: &unlimited,
        reductions: 0,
        ngens: 0,
        _c: std::marker::PhantomData,
    };
    let (r, _) = engine
        .reduce(Sorted::from_poly(f, &g.order), None, &basis, &active)
        .expect("unlimited budget");
    r.to_poly()
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger<C: FieldCoeff>(
    gens: &[Polynomial<C>],
    order: &MonomialOrder,
    track_cofactors: bool,
    budget: &Budget,
) -> Result<GroebnerBasis<C>> {
    let ngens = gens.len();
    let mut engine: Engine<'_, C> =
        Engine { order, budget, reductions: 0, ngens, _c: std::marker::PhantomData };
    let unit_row = |j: usize, one: &C| -> Vec<Polynomial<C>> {
        (0..ngens)
            .map(|i| if i == j { Polynomial::constant(one.clone()) } else { Polynomial::zero() })
            .collect()
    };

    let mut basis: Vec<Elem<C>> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let poly = Sorted::from_poly(g, order);
        let cof = track_cofactors.then(|| unit_row(j, &poly.lc().one_like()));
        basis.push(engine.monic(Elem { poly, cof }));
    }

    // a constant generator settles everything
    if let Some(i) = basis.iter().position(|e| e.poly.lm().is_one()) {
        return Ok(unit_basis(basis.swap_remove(i), order));
    }

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].poly.lm().lcm(basis[b].poly.lm());
                let l2 = basis[c].poly.lm().lcm(basis[d].poly.lm());
                l1.degree()
                    .cmp(&l2.degree())
                    .then_with(|| order.cmp(&l1, &l2))
                    .then_with(|| (a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));

        let (li, lj) = (basis[i].poly.lm(), basis[j].poly.lm());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].poly.lm().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = engine.spoly(&basis[i], &basis[j])?;
        let active: Vec<usize> = (0..basis.len()).collect();
        let (r, cof) = engine.reduce(s.poly, s.cof, &basis, &active)?;
        if r.is_zero() {
            continue;
        }
        let e = engine.monic(Elem { poly: r, cof });
        if e.poly.lm().is_one() {
            return Ok(unit_basis(e, order));
        }
        basis.push(e);
        if basis.len() > budget.max_basis {
            return Err(Error::BudgetExceeded(format!(
                "basis grew beyond {} elements",
                budget.max_basis
            )));
        }
        let n = basis.len() - 1;
        for i in 0..n {
            pending.insert((i, n));
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by another's
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(basis[a].poly.lm(), basis[b].poly.lm()));
    let mut kept: Vec<usize> = Vec::new();
    for i in idx {
        if !kept.iter().any(|&k| basis[k].poly.lm().divides(basis[i].poly.lm())) {
            kept.push(i);
        }
    }

    // interreduce tails
    let mut taken: Vec<Option<Elem<C>>> = basis.into_iter().map(Some).collect();
    let mut reduced: Vec<Elem<C>> = kept.iter().map(|&k| taken[k].take().unwrap()).collect();
    for pos in 0..reduced.len() {
        let e = &reduced[pos];
        let head = Sorted { terms: vec![e.poly.terms[0].clone()] };
        let tail = Sorted { terms: e.poly.terms[1..].to_vec() };
        // reduce the tail with the head's cofactor share carried separately
        let others: Vec<usize> = (0..reduced.len()).filter(|&q| q != pos).collect();
        let cof = reduced[pos].cof.clone();
        // f = head + tail; reducing f's tail leaves the head untouched
        let (tail_r, cof_r) = engine.reduce(tail, cof, &reduced, &others)?;
        let mut terms = head.terms;
        terms.extend(tail_r.terms);
        reduced[pos] = Elem { poly: Sorted { terms }, cof: cof_r };
    }
    let _ = engine.ngens;

    let generators = reduced.iter().map(|e| e.poly.to_poly()).collect();
    let cofactors = if track_cofactors {
        Some(reduced.into_iter().map(|e| e.cof.unwrap()).collect())
    } else {
        None
    };
    Ok(GroebnerBasis { generators, order: order.clone(), cofactors })
}

fn unit_basis<C: FieldCoeff>(e: Elem<C>, order: &MonomialOrder) -> GroebnerBasis<C> {
    GroebnerBasis {
        generators: vec![e.poly.to_poly()],
        order: order.clone(),
        cofactors: e.cof.map(|c| vec![c]),
    }
}

/// Weak Nullstellensatz test: the system has a common zero over the
/// algebraic closure iff its ideal is proper.
pub fn hn_decide<C: FieldCoeff>(polys: &[Polynomial<C>], budget: &Budget) -> Result<Answer> {
    if polys.iter().all(Polynomial::is_zero) {
        return Ok(Answer::Sat);
    }
    let gb = buchberger(polys, &MonomialOrder::grevlex(), false, budget)?;
    Ok(if gb.is_unit_ideal() { Answer::Unsat } else { Answer::Sat })
}

/// Satisfiability over the prime field itself (points in `F_p^n`), decided
/// by adjoining the field equations `y^p = y` to the ideal. The powers
/// `y^p` are first reduced modulo a basis of the system by repeated
/// squaring so the added generators stay small.
pub fn hn_decide_fp_points(
    polys: &[Polynomial<PrimeFieldElem>],
    budget: &Budget,
) -> Result<Answer> {
    let Some(p) = polys.iter().flat_map(|f| f.terms()).map(|(_, c)| c.modulus()).next() else {
        return Ok(Answer::Sat);
    };
    let order = MonomialOrder::grevlex();
    let gb = buchberger(polys, &order, false, budget)?;
    if gb.is_unit_ideal() {
        return Ok(Answer::Unsat);
    }
    let nvars = polys.iter().map(Polynomial::support_len).max().unwrap_or(0);
    let one = PrimeFieldElem::new(1, p);
    let mut gens = gb.generators.clone();
    for v in 0..nvars {
        let y = Polynomial::term(Monomial::var(v), one);
        let yp = pow_mod_basis(&y, p, &gb);
        gens.push(yp.sub(&y));
    }
    let full = buchberger(&gens, &order, false, budget)?;
    Ok(if full.is_unit_ideal() { Answer::Unsat } else { Answer::Sat })
}

fn pow_mod_basis<C: FieldCoeff>(f: &Polynomial<C>, mut e: u64, gb: &GroebnerBasis<C>) -> Polynomial<C> {
    let mut base = gb.normal_form(f);
    let mut acc: Option<Polynomial<C>> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => gb.normal_form(&a.mul(&base)),
            });
        }
        e >>= 1;
        if e > 0 {
            base = gb.normal_form(&base.mul(&base));
        }
    }
    acc.unwrap_or_else(|| Polynomial::constant(f.terms().next().unwrap().1.one_like()))
}

#[derive(Clone, Debug)]
pub struct EliminationOutcome {
    pub answer: Answer,
    /// Nonzero element of the elimination ideal when unsatisfiable: the
    /// pure-parameter basis element with the smallest leading monomial.
    pub witness: Option<Polynomial<Rational>>,
    pub basis: GroebnerBasis<Rational>,
}

/// Deterministic HNP oracle: with the parameters treated as ordinary
/// variables, the system is satisfiable over the closure of Q(x) iff the
/// elimination ideal `I ∩ Q[x]` is zero.
pub fn hnp_decide_elimination(
    system: &PolynomialSystem,
    budget: &Budget,
) -> Result<EliminationOutcome> {
    hnp_elimination_impl(system, budget, false)
}

pub(crate) fn hnp_elimination_impl(
    system: &PolynomialSystem,
    budget: &Budget,
    track: bool,
) -> Result<EliminationOutcome> {
    let m = system.m();
    let gens: Vec<Polynomial<Rational>> = system.polys.iter().map(to_rational).collect();
    let basis = buchberger(&gens, &MonomialOrder::elimination(m), track, budget)?;
    let witness = basis.generators.iter().find(|g| g.lives_in(0..m)).cloned();
    let answer = if witness.is_some() { Answer::Unsat } else { Answer::Sat };
    Ok(EliminationOutcome { answer, witness, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Integer, PrimeField};
    use crate::sysio::parse_integral_system;

    fn q(n: i64) -> Rational {
        Rational::from_integer(Integer::from(n))
    }

    fn y() -> Polynomial<Rational> {
        Polynomial::var(0)
    }

    #[test]
    fn unit_ideal_from_two_univariates() {
        let gens = vec![&y() + &Polynomial::one(), &y().pow(2) + &Polynomial::one()];
        let gb = buchberger(&gens, &MonomialOrder::lex(), true, &Budget::default()).unwrap();
        assert_eq!(gb.generators, vec![Polynomial::one()]);
        assert!(gb.cofactor_identity_holds(&gens));
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let f = &y().pow(2) - &Polynomial::constant(q(2));
        let gb = buchberger(&[f.clone()], &MonomialOrder::lex(), false, &Budget::default()).unwrap();
        assert_eq!(gb.generators, vec![f]);
    }

    #[test]
    fn empty_input_gives_empty_basis() {
        let gb = buchberger::<Rational>(&[], &MonomialOrder::lex(), false, &Budget::default()).unwrap();
        assert!(gb.generators.is_empty());
        assert!(!gb.is_unit_ideal());
    }

    #[test]
    fn normal_form_examples() {
        let f = &y().pow(2) - &Polynomial::constant(q(2));
        let gb = buchberger(&[f.clone()], &MonomialOrder::lex(), false, &Budget::default()).unwrap();
        assert_eq!(gb.normal_form(&y().pow(2)), Polynomial::constant(q(2)));
        assert!(gb.normal_form(&f).is_zero());
    }

    #[test]
    fn hn_over_rationals_and_prime_fields() {
        let b = Budget::default();
        let unsat = vec![&y() + &Polynomial::one(), &y().pow(2) + &Polynomial::one()];
        assert_eq!(hn_decide(&unsat, &b).unwrap(), Answer::Unsat);
        let sat = vec![&y().pow(2) - &Polynomial::constant(q(2))];
        assert_eq!(hn_decide(&sat, &b).unwrap(), Answer::Sat);

        for (p, expect) in [(5, Answer::Sat), (7, Answer::Unsat)] {
            let f = PrimeField::new(p).unwrap();
            let g = Polynomial::from_terms([
                (Monomial::var_pow(0, 2), f.elem(1)),
                (Monomial::one(), f.elem(1)),
            ]);
            // -1 is a square mod 5 but not mod 7; over the closure there is
            // always a root
            assert_eq!(hn_decide_fp_points(&[g.clone()], &b).unwrap(), expect, "p = {p}");
            assert_eq!(hn_decide(&[g], &b).unwrap(), Answer::Sat);
        }
    }

    #[test]
    fn elimination_examples() {
        let b = Budget::default();
        let s = parse_integral_system("params x\nvars y\neq x*y - 1\n").unwrap();
        let out = hnp_decide_elimination(&s, &b).unwrap();
        assert_eq!(out.answer, Answer::Sat);
        assert!(out.witness.is_none());

        let s = parse_integral_system("params x\nvars y\neq y - x\neq y^2 - x\n").unwrap();
        let out = hnp_decide_elimination(&s, &b).unwrap();
        assert_eq!(out.answer, Answer::Unsat);
        let x = Polynomial::<Rational>::var(0);
        assert_eq!(out.witness.unwrap(), &x.pow(2) - &x);

        let s = parse_integral_system("params x\nvars y\neq y\n").unwrap();
        assert_eq!(hnp_decide_elimination(&s, &b).unwrap().answer, Answer::Sat);
    }

    #[test]
    fn budget_is_a_distinct_outcome() {
        let s = parse_integral_system(
            "params\nvars a b c\neq a^3 + b^3 + c^3 - 1\neq a^2*b - c\neq b^2*c + a - 2\n",
        )
        .unwrap();
        let gens: Vec<Polynomial<Rational>> = s.polys.iter().map(to_rational).collect();
        let tiny = Budget { max_basis: 100, max_terms: 100, max_reductions: 5, ..Budget::default() };
        let r = buchberger(&gens, &MonomialOrder::grevlex(), false, &tiny);
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn elimination_order_prefers_y_block() {
        let o = MonomialOrder::elimination(1);
        // y (index 1) beats any power of x (index 0)
        assert_eq!(o.cmp(&Monomial::var(1), &Monomial::var_pow(0, 9)), Ordering::Greater);
        let p = MonomialOrder::lex().with_permutation(vec![1, 0]);
        assert_eq!(p.cmp(&Monomial::var(1), &Monomial::var_pow(0, 9)), Ordering::Greater);
        assert_eq!(
            MonomialOrder::lex().cmp(&Monomial::var(1), &Monomial::var_pow(0, 9)),
            Ordering::Less
        );
    }
}
