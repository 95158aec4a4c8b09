use std::cmp::Ordering;
use std::ops::Range;

/// Power product over a joint index space. Parameters occupy indices `0..m`,
/// variables `m..m+n`. Stored densely with trailing zeros trimmed, so equal
/// monomials have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u64,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, e: u32) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = e;
        Self::from_exponents(exps)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let degree = exps.iter().map(|&e| e as u64).sum();
        Self { exps, degree }
    }

    /// Exponent of variable `i` (zero when absent).
    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// One past the largest index with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn block_degree(&self, block: Range<usize>) -> u64 {
        block.map(|i| self.exp(i) as u64).sum()
    }

    /// Indices with nonzero exponent, paired with the exponent.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.exps.len().max(other.exps.len());
        let exps = (0..len).map(|i| self.exp(i) + other.exp(i)).collect();
        Self { exps, degree: self.degree + other.degree }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::from_exponents(self.exps.iter().map(|&x| x * e).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let exps = (0..self.exps.len()).map(|i| self.exp(i) - other.exp(i)).collect();
        Some(Self::from_exponents(exps))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let len = self.exps.len().max(other.exps.len());
        Self::from_exponents((0..len).map(|i| self.exp(i).max(other.exp(i))).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Restriction to the indices in `block`, keeping positions.
    pub fn restrict(&self, block: Range<usize>) -> Self {
        let exps = (0..self.exps.len())
            .map(|i| if block.contains(&i) { self.exp(i) } else { 0 })
            .collect();
        Self::from_exponents(exps)
    }

    /// Re-index variables through `map` (old index -> new index).
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut exps: Vec<u32> = Vec::new();
        for (i, e) in self.iter() {
            let j = map(i);
            if exps.len() <= j {
                exps.resize(j + 1, 0);
            }
            exps[j] += e;
        }
        Self::from_exponents(exps)
    }

    /// Lexicographic comparison with variable 0 most significant.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        let len = self.exps.len().max(other.exps.len());
        for i in 0..len {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Graded reverse lexicographic comparison restricted to `block`
    /// (variable `block.start` largest).
    pub fn cmp_grevlex_block(&self, other: &Self, block: Range<usize>) -> Ordering {
        let da = self.block_degree(block.clone());
        let db = other.block_degree(block.clone());
        if da != db {
            return da.cmp(&db);
        }
        for i in block.rev() {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                // smaller exponent in the last variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        let len = self.exps.len().max(other.exps.len());
        self.cmp_grevlex_block(other, 0..len)
    }
}

/// All monomials in the variables of `block` with total degree at most `d`,
/// in ascending canonical order.
pub fn monomials_up_to(block: Range<usize>, d: u64) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for v in block {
        let mut next = Vec::new();
        for m in &out {
            let room = d - m.degree();
            for e in 0..=room {
                next.push(m.mul(&Monomial::var_pow(v, e as u32)));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Canonical order: graded, ties broken lexicographically (x-block first
/// because parameters have the low indices).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn trimming_is_canonical() {
        assert_eq!(m(&[1, 0, 0]), m(&[1]));
        assert_eq!(m(&[0, 0]), Monomial::one());
        assert_eq!(m(&[2, 3]).degree(), 5);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 0, 4]);
        assert_eq!(a.lcm(&b), m(&[2, 1, 4]));
        assert!(m(&[1]).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.div(&m(&[1, 1])), Some(m(&[1])));
        assert!(m(&[0, 1]).is_coprime(&m(&[3])));
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(d + n, n)
        assert_eq!(monomials_up_to(0..2, 3).len(), 10);
        assert_eq!(monomials_up_to(1..4, 2).len(), 10);
        assert_eq!(monomials_up_to(0..0, 5), vec![Monomial::one()]);
        assert!(monomials_up_to(2..3, 4).iter().all(|m| m.exp(0) == 0 && m.degree() <= 4));
    }

    #[test]
    fn grevlex_examples() {
        // x^2 > x*y > y^2 with x first; x*y*z ... classic: x*z^2 < y^3 under grevlex
        assert_eq!(m(&[2]).cmp_grevlex(&m(&[1, 1])), Ordering::Greater);
        assert_eq!(m(&[1, 0, 2]).cmp_grevlex(&m(&[0, 3])), Ordering::Less);
        assert_eq!(m(&[1, 0, 2]).cmp_lex(&m(&[0, 3])), Ordering::Greater);
    }
}
