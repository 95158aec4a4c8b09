//! Sparse Gaussian elimination over a field.

use std::collections::BTreeMap;

use crate::arith::FieldCoeff;

/// Row as column index -> nonzero entry.
pub type SparseRow<C> = BTreeMap<usize, C>;

/// Reduced row echelon form, built incrementally.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    /// pivot column -> row with leading entry 1 at that column, and no
    /// entries at smaller columns.
    rows: BTreeMap<usize, SparseRow<C>>,
}

impl<C> Default for Echelon<C> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

fn sub_scaled<C: FieldCoeff>(row: &mut SparseRow<C>, other: &SparseRow<C>, k: &C) {
    for (&c, v) in other {
        let t = v.mul_ref(k);
        match row.get_mut(&c) {
            Some(e) => {
                *e = e.sub_ref(&t);
                if e.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, t.neg_ref());
            }
        }
    }
}

impl<C: FieldCoeff> Echelon<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduce `row` against the current pivots (forward only).
    pub fn reduce(&self, mut row: SparseRow<C>) -> SparseRow<C> {
        let mut from = 0;
        loop {
            let hit = row.range(from..).find(|(c, _)| self.rows.contains_key(c)).map(|(&c, v)| (c, v.clone()));
            let Some((c, k)) = hit else { return row };
            sub_scaled(&mut row, &self.rows[&c], &k);
            from = c + 1;
        }
    }

    /// Insert a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow<C>) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lc)) = row.iter().next() else { return false };
        let inv = lc.inv();
        let row: SparseRow<C> = row.iter().map(|(&c, v)| (c, v.mul_ref(&inv))).collect();
        self.rows.insert(lead, row);
        true
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow<C>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back-substitute so every pivot column is zero outside its own row.
    pub fn into_reduced(mut self) -> Self {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                if let Some(k) = row.get(&p).cloned() {
                    sub_scaled(row, &prow, &k);
                }
            }
        }
        self
    }

    /// Basis of the solutions of `A v = 0`, where the rows of `A` were
    /// inserted, over `ncols` unknowns. `one` fixes the field.
    pub fn kernel(self, ncols: usize, one: &C) -> Vec<SparseRow<C>> {
        let red = self.into_reduced();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !red.rows.contains_key(c)) {
            let mut v = SparseRow::new();
            v.insert(free, one.clone());
            for (&p, row) in &red.rows {
                if let Some(e) = row.get(&free) {
                    v.insert(p, e.neg_ref());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Kernel basis of the matrix with the given rows.
pub fn kernel_basis<C: FieldCoeff>(rows: Vec<SparseRow<C>>, ncols: usize, one: &C) -> Vec<SparseRow<C>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.kernel(ncols, one)
}

/// `sum_c row[c] * v[c]`.
pub fn dot<C: FieldCoeff>(row: &SparseRow<C>, v: &SparseRow<C>, zero: &C) -> C {
    let (small, large) = if row.len() <= v.len() { (row, v) } else { (v, row) };
    small
        .iter()
        .filter_map(|(c, a)| large.get(c).map(|b| a.mul_ref(b)))
        .fold(zero.clone(), |acc, t| acc.add_ref(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeFieldElem, Rational};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow<Rational> {
        entries.iter().filter(|(_, v)| *v != 0).map(|&(c, v)| (c, q(v))).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        // x + y + z = 0, x - z = 0 -> kernel spanned by (1, -2, 1)
        let k = kernel_basis(vec![row(&[(0, 1), (1, 1), (2, 1)]), row(&[(0, 1), (2, -1)])], 3, &q(1));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], row(&[(0, 1), (1, -2), (2, 1)]));
    }

    #[test]
    fn span_membership() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 2)]));
        e.insert(row(&[(1, 1), (2, 1)]));
        assert!(e.contains(row(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(row(&[(2, 1)])));
        assert_eq!(e.rank(), 2);
    }

    fn dense(r: &SparseRow<PrimeFieldElem>, n: usize, p: u64) -> Vec<u64> {
        (0..n).map(|c| r.get(&c).map_or(0, |e| e.value()) % p).collect()
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated_and_rank_nullity_holds(
            m in proptest::collection::vec(proptest::collection::vec(0u64..7, 5), 0..6)
        ) {
            let p = 7;
            let rows: Vec<SparseRow<PrimeFieldElem>> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, PrimeFieldElem::new(v, p))).collect())
                .collect();
            let mut e = Echelon::new();
            for r in rows.clone() {
                e.insert(r);
            }
            let rank = e.rank();
            let k = e.kernel(5, &PrimeFieldElem::new(1, p));
            prop_assert_eq!(rank + k.len(), 5);
            let zero = PrimeFieldElem::new(0, p);
            for v in &k {
                for r in &rows {
                    prop_assert_eq!(dot(r, v, &zero).value(), 0, "{:?} {:?}", dense(r, 5, p), dense(v, 5, p));
                }
            }
        }
    }
}
