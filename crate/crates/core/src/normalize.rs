//! Rewriting a system into one with combined degree at most 2 and
//! coefficients in {-1, 0, 1}.
//!
//! High-degree monomials are split by iterated squaring (`M = N^2 * R`) and
//! each intermediate product gets a fresh variable. Integer coefficients of
//! magnitude at least 2 are built from doubling chains `d_{i+1} = d_i + u*d_i`
//! with a fresh `u` pinned to 1.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::{Integer, Rational};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::sysio::render_polynomial;
use crate::system::PolynomialSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinitionKind {
    /// Product of two earlier variables.
    Product,
    /// The constant 1.
    One,
    /// Twice an earlier variable.
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Definition {
    pub name: String,
    /// Index in the joint space of the normalized system.
    pub index: usize,
    /// Position of the defining equation in the normalized system.
    pub equation: usize,
    pub kind: DefinitionKind,
    /// What the variable stands for, in the original variables.
    pub stands_for: String,
    #[serde(skip)]
    pub value: Polynomial<Integer>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationMap {
    pub definitions: Vec<Definition>,
    pub original: Shape,
    pub normalized: Shape,
}

impl NormalizationMap {
    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty()
    }

    /// Restrict a point of the normalized system to the original coordinates.
    pub fn project<T: Clone>(&self, point: &[T]) -> Vec<T> {
        point[..self.original.m + self.original.n].to_vec()
    }

    /// Extend a point of the original system by the values of the fresh
    /// variables.
    pub fn extend(&self, point: &[Rational]) -> Vec<Rational> {
        let mut out = point.to_vec();
        let lifted: Vec<Rational> = point.to_vec();
        for d in &self.definitions {
            let v = crate::poly::to_rational(&d.value).eval(&lifted);
            out.push(v);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map is serialisable")
    }
}

struct Builder {
    m: usize,
    base_names: Vec<String>,
    names: Vec<String>,
    used: HashSet<String>,
    /// Value of every joint index in the original variables.
    values: Vec<Polynomial<Integer>>,
    defs: Vec<(Polynomial<Integer>, DefinitionKind)>,
    atoms: HashMap<Monomial, usize>,
    one: Option<usize>,
    chains: HashMap<(usize, u32), usize>,
    counters: HashMap<&'static str, usize>,
}

impl Builder {
    fn fresh(&mut self, prefix: &'static str, value: Polynomial<Integer>, def: Polynomial<Integer>, kind: DefinitionKind) -> usize {
        let name = loop {
            let c = self.counters.entry(prefix).or_insert(0);
            *c += 1;
            let candidate = if prefix == "u" && *c == 1 { "u".to_string() } else { format!("{prefix}{c}") };
            if !self.used.contains(&candidate) {
                break candidate;
            }
        };
        self.used.insert(name.clone());
        let index = self.names.len();
        self.names.push(name);
        self.values.push(value);
        // the definition refers to `index`, so build it after pushing
        let v = Polynomial::<Integer>::var(index);
        self.defs.push((&v - &def, kind));
        index
    }

    /// Variable standing for the monomial `mono` (degree >= 1).
    fn atom(&mut self, mono: &Monomial) -> usize {
        if mono.degree() == 1 {
            return mono.iter().next().expect("degree one").0;
        }
        if let Some(&i) = self.atoms.get(mono) {
            return i;
        }
        let (a, b) = split(mono);
        let ia = self.atom(&a);
        let ib = self.atom(&b);
        let def = Polynomial::term(Monomial::var(ia).mul(&Monomial::var(ib)), Integer::one());
        let value = &self.values[ia] * &self.values[ib];
        let i = self.fresh("z", value, def, DefinitionKind::Product);
        self.atoms.insert(mono.clone(), i);
        i
    }

    /// A monomial of degree at most 2 equal to `mono` under the definitions.
    fn quadratic(&mut self, mono: &Monomial) -> Monomial {
        if mono.degree() <= 2 {
            return mono.clone();
        }
        let (a, b) = split(mono);
        let ia = self.atom(&a);
        let ib = self.atom(&b);
        Monomial::var(ia).mul(&Monomial::var(ib))
    }

    fn one(&mut self) -> usize {
        if let Some(u) = self.one {
            return u;
        }
        let u = self.fresh("u", Polynomial::one(), Polynomial::one(), DefinitionKind::One);
        self.one = Some(u);
        u
    }

    /// Variable equal to `2^i * p`.
    fn doubled(&mut self, p: usize, i: u32) -> usize {
        if i == 0 {
            return p;
        }
        if let Some(&d) = self.chains.get(&(p, i)) {
            return d;
        }
        let prev = self.doubled(p, i - 1);
        let u = self.one();
        let pv = Polynomial::<Integer>::var(prev);
        let def = &pv + &(&Polynomial::var(u) * &pv);
        let value = &self.values[prev] * &Polynomial::from_int(2);
        let d = self.fresh("w", value, def, DefinitionKind::Double);
        self.chains.insert((p, i), d);
        d
    }

    fn transform(&mut self, f: &Polynomial<Integer>) -> Polynomial<Integer> {
        let mut out = Polynomial::zero();
        for (mono, c) in f.terms() {
            let q = self.quadratic(mono);
            if c.abs() <= Integer::one() {
                out.add_term(q, c);
                continue;
            }
            let p = match q.degree() {
                0 => self.one(),
                1 => q.iter().next().expect("degree one").0,
                _ => self.atom(&q),
            };
            let sign = if c.is_negative() { -Integer::one() } else { Integer::one() };
            let mag = c.abs();
            for bit in 0..mag.bits() {
                if mag.bit(bit) {
                    let d = self.doubled(p, bit.to_u32().expect("coefficient bit length fits u32"));
                    out.add_term(Monomial::var(d), &sign);
                }
            }
        }
        out
    }
}

/// `M = A * B` with `A = N^2`, `B = R` where `M = N^2 * R` and `R` is
/// squarefree; when one side would be trivial the split peels off a square
/// root or a single variable instead.
fn split(mono: &Monomial) -> (Monomial, Monomial) {
    let half = Monomial::from_exponents(mono.exponents().iter().map(|e| e / 2).collect());
    let rest = Monomial::from_exponents(mono.exponents().iter().map(|e| e % 2).collect());
    if rest.is_one() {
        (half.clone(), half)
    } else if half.is_one() {
        let first = Monomial::var(mono.iter().next().expect("nonconstant").0);
        let other = mono.div(&first).expect("divides");
        (first, other)
    } else {
        (half.pow(2), rest)
    }
}

fn is_normal(f: &Polynomial<Integer>) -> bool {
    f.terms().all(|(m, c)| m.degree() <= 2 && c.abs() <= Integer::one())
}

/// Rewrite `s` into an equisatisfiable system of combined degree at most 2
/// with coefficients in {-1, 0, 1}. Fresh variables are appended after the
/// existing ones and their definitions come first.
pub fn normalize_system(s: &PolynomialSystem<Integer>) -> (PolynomialSystem<Integer>, NormalizationMap) {
    let original = Shape { m: s.m(), n: s.n(), k: s.k() };
    if s.polys.iter().all(is_normal) {
        let map = NormalizationMap { definitions: Vec::new(), original, normalized: original };
        return (s.clone(), map);
    }
    let names = s.names();
    let mut b = Builder {
        m: s.m(),
        base_names: names.clone(),
        used: names.iter().cloned().collect(),
        values: (0..names.len()).map(Polynomial::var).collect(),
        names,
        defs: Vec::new(),
        atoms: HashMap::new(),
        one: None,
        chains: HashMap::new(),
        counters: HashMap::new(),
    };
    let transformed: Vec<_> = s.polys.iter().map(|f| b.transform(f)).collect();

    let base = b.base_names.len();
    let definitions = b
        .defs
        .iter()
        .enumerate()
        .map(|(j, (_, kind))| Definition {
            name: b.names[base + j].clone(),
            index: base + j,
            equation: j,
            kind: kind.clone(),
            stands_for: render_polynomial(&b.values[base + j], &b.base_names),
            value: b.values[base + j].clone(),
        })
        .collect();
    let vars = b.names[b.m..].to_vec();
    let polys: Vec<_> = b.defs.into_iter().map(|(d, _)| d).chain(transformed).collect();
    let out = PolynomialSystem { params: s.params.clone(), vars, polys };
    let normalized = Shape { m: out.m(), n: out.n(), k: out.k() };
    (out, NormalizationMap { definitions, original, normalized })
}

/// `max(m, n, k)`.
pub fn size_measure<C: crate::arith::Coeff>(s: &PolynomialSystem<C>) -> usize {
    s.size()
}

/// Total bit length of the sparse encoding: coefficient bits plus exponent
/// bits over all terms.
pub fn bit_size(s: &PolynomialSystem<Integer>) -> u64 {
    s.polys
        .iter()
        .flat_map(|f| f.terms())
        .map(|(m, c)| {
            let exp_bits: u64 = m.iter().map(|(_, e)| 32 - e.leading_zeros() as u64).sum();
            c.bits().max(1) + exp_bits
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{hnp_decide_elimination, Budget};
    use crate::poly::to_rational;
    use crate::sysio::{parse_integral_system, render_system};
    use num_traits::Zero;
    use proptest::prelude::*;

    /// Replace each fresh variable by its definition, newest first, until
    /// only original variables remain.
    fn eliminate_fresh(f: &Polynomial<Integer>, out: &PolynomialSystem<Integer>, map: &NormalizationMap) -> Polynomial<Integer> {
        let mut g = f.clone();
        for d in map.definitions.iter().rev() {
            // definition equation is `v - rhs`
            let rhs = &Polynomial::var(d.index) - &out.polys[d.equation];
            g = g.compose(&[(d.index, rhs)]);
        }
        g
    }

    fn check_postconditions(s: &PolynomialSystem<Integer>) {
        let (out, map) = normalize_system(s);
        assert_eq!(out.m(), s.m());
        for f in &out.polys {
            assert!(f.degree().finite().unwrap_or(0) <= 2, "degree > 2 in {f:?}");
            assert!(f.terms().all(|(_, c)| c.abs() <= Integer::one()));
        }
        let defs = map.definitions.len();
        assert_eq!(out.k(), s.k() + defs);
        for (i, f) in s.polys.iter().enumerate() {
            assert_eq!(&eliminate_fresh(&out.polys[defs + i], &out, &map), f);
        }
        for d in &map.definitions {
            assert!(eliminate_fresh(&out.polys[d.equation], &out, &map).is_zero());
        }
        assert!(out.k() as u64 <= s.k() as u64 + bit_size(s));
    }

    #[test]
    fn fifth_power_by_iterated_squaring() {
        let s = parse_integral_system("params\nvars y\neq y^5 - 1").unwrap();
        let (out, map) = normalize_system(&s);
        assert_eq!(
            render_system(&out),
            "params\nvars y z1 z2\neq -y^2 + z1\neq -z1^2 + z2\neq y*z2 - 1\n"
        );
        // z2 * y = y^5 once the definitions are substituted back
        assert_eq!(eliminate_fresh(&out.polys[2], &out, &map), s.polys[0]);
        assert_eq!(size_measure(&out), 3);
        assert_eq!((map.normalized.n, map.normalized.k), (3, 3));
    }

    #[test]
    fn normal_input_is_a_fixed_point() {
        let s = parse_integral_system("params x\nvars y z\neq x*y - z\neq y^2 + z - 1").unwrap();
        let (out, map) = normalize_system(&s);
        assert_eq!(out, s);
        assert!(map.is_empty());
    }

    #[test]
    fn constants_by_doubling() {
        let s = parse_integral_system("params x\nvars y\neq 3*y - x").unwrap();
        let (out, map) = normalize_system(&s);
        check_postconditions(&s);
        assert_eq!(map.definitions.len(), 2);
        assert_eq!(map.definitions[0].kind, DefinitionKind::One);
        assert_eq!(map.definitions[1].stands_for, "2*y");
        assert_eq!(render_system(&out), "params x\nvars y u w1\neq u - 1\neq -y*u - y + w1\neq -x + y + w1\n");
    }

    #[test]
    fn shared_monomials_are_reused() {
        let s = parse_integral_system("params x\nvars y\neq x^2*y^2 - 1\neq x^2*y^2 + y^3").unwrap();
        let (out, map) = normalize_system(&s);
        check_postconditions(&s);
        let products = map.definitions.iter().filter(|d| d.kind == DefinitionKind::Product).count();
        // x*y, (x*y)^2 is degree 2 in atoms only once, y^2
        assert!(products <= 3, "{}", render_system(&out));
    }

    #[test]
    fn names_do_not_clash() {
        let s = parse_integral_system("params u\nvars z1 w1\neq 5*z1^3 - u*w1").unwrap();
        let (out, _) = normalize_system(&s);
        let mut names = out.names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), out.m() + out.n());
        check_postconditions(&s);
    }

    #[test]
    fn extension_of_a_solution_solves_the_normalized_system() {
        let s = parse_integral_system("params x\nvars y\neq 6*y^3 - 6*x^3").unwrap();
        let (out, map) = normalize_system(&s);
        let pt = vec![Rational::from_integer(3.into()), Rational::from_integer(3.into())];
        let ext = map.extend(&pt);
        for f in &out.polys {
            assert!(to_rational(f).eval(&ext).is_zero());
        }
        assert_eq!(map.project(&ext), pt);
    }

    #[test]
    fn size_examples() {
        let s = PolynomialSystem::<Integer> {
            params: vec!["x".into()],
            vars: vec!["a".into(), "b".into(), "c".into()],
            polys: vec![Polynomial::zero(), Polynomial::zero()],
        };
        assert_eq!(size_measure(&s), 3);
        let t = parse_integral_system("params x\nvars y\neq x*y").unwrap();
        assert_eq!(size_measure(&t), 1);
    }

    #[test]
    fn equisatisfiable_on_small_systems() {
        let b = Budget::default();
        for text in [
            "params x\nvars y\neq y^3 - x",
            "params x\nvars y\neq y - x\neq y^3 - x^3 - 2",
            "params x\nvars y\neq 2*y - 1\neq 2*y - x",
            "params x\nvars y\neq x*y^2 - 1\neq y - 3",
        ] {
            let s = parse_integral_system(text).unwrap();
            let (out, _) = normalize_system(&s);
            assert_eq!(
                hnp_decide_elimination(&s, &b).unwrap().answer,
                hnp_decide_elimination(&out, &b).unwrap().answer,
                "{text}"
            );
        }
    }

    fn arb_system() -> impl Strategy<Value = PolynomialSystem<Integer>> {
        let term = ((0u32..4, 0u32..5, 0u32..3), -40i64..40);
        let poly = proptest::collection::vec(term, 1..4).prop_map(|ts| {
            Polynomial::from_terms(ts.into_iter().map(|((a, b, c), k)| (Monomial::from_exponents(vec![a, b, c]), Integer::from(k))))
        });
        proptest::collection::vec(poly, 1..4).prop_map(|polys| PolynomialSystem {
            params: vec!["x".into()],
            vars: vec!["y".into(), "z".into()],
            polys,
        })
    }

    proptest! {
        #[test]
        fn postconditions_hold(s in arb_system()) {
            check_postconditions(&s);
        }

        #[test]
        fn extension_is_exact(s in arb_system(), pt in proptest::collection::vec(-5i64..5, 3)) {
            let (out, map) = normalize_system(&s);
            let p: Vec<Rational> = pt.into_iter().map(|v| Rational::from_integer(v.into())).collect();
            let ext = map.extend(&p);
            let defs = map.definitions.len();
            for (i, f) in s.polys.iter().enumerate() {
                prop_assert_eq!(to_rational(&out.polys[defs + i]).eval(&ext), to_rational(f).eval(&p));
            }
            for d in &map.definitions {
                prop_assert!(to_rational(&out.polys[d.equation]).eval(&ext).is_zero());
            }
        }
    }
}
