//! Partitions, standard Young tableaux, the w <-> w*tab_lambda bijection and
//! the tableau-level ascent/descent classification that drives Specht-module
//! W-graph ideals.
//!
//! Boxes are 1-indexed (row, column). A tableau of shape lambda corresponds
//! to the permutation w with t = w * tab_lambda, where tab_lambda is the
//! standard tableau whose columns hold consecutive numbers.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::coxeter::{GenSet, Perm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("parts must be positive and weakly decreasing")]
    InvalidPartition,
    #[error("rows do not form a standard tableau of the given shape")]
    NotStandard,
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch { expected: Vec<usize>, got: Vec<usize> },
}

/// A partition of n: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.is_empty()
            || parts.contains(&0)
            || parts.windows(2).any(|w| w[0] < w[1])
        {
            return Err(TableauError::InvalidPartition);
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Number of standard tableaux by the hook length formula.
    pub fn hook_length_count(&self) -> u64 {
        let n = self.n();
        let conj = self.conjugate();
        // n! / prod(hooks), computed as an exact product of fractions.
        let mut hooks: Vec<u64> = Vec::with_capacity(n);
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 1..=len {
                let arm = len - j;
                let leg = conj.parts[j - 1] - (i + 1);
                hooks.push((arm + leg + 1) as u64);
            }
        }
        let mut num: u128 = 1;
        let mut denom: u128 = 1;
        for (k, h) in hooks.iter().enumerate() {
            num *= (k + 1) as u128;
            denom *= *h as u128;
            let g = gcd_u128(num, denom);
            num /= g;
            denom /= g;
        }
        debug_assert_eq!(denom, 1);
        num as u64
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The four-way classification of a generator index at a standard tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TabClass {
    StrongAsc,
    StrongDesc,
    WeakAsc,
    WeakDesc,
}

/// A standard tableau: rows and columns strictly increasing, entries
/// exactly 1..n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
    /// (row, col) of each value, 1-based, indexed by value-1.
    place: Vec<(u8, u8)>,
}

impl StandardTableau {
    pub fn new(shape: Partition, rows: Vec<Vec<u8>>) -> Result<Self, TableauError> {
        let got: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        if got != shape.parts() {
            return Err(TableauError::ShapeMismatch {
                expected: shape.parts().to_vec(),
                got,
            });
        }
        let n = shape.n();
        let mut place = vec![(0u8, 0u8); n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v as usize > n || v == 0 || place[v as usize - 1] != (0, 0) {
                    return Err(TableauError::NotStandard);
                }
                place[v as usize - 1] = (i as u8 + 1, j as u8 + 1);
            }
        }
        let t = StandardTableau { shape, rows, place };
        if !t.is_standard() {
            return Err(TableauError::NotStandard);
        }
        Ok(t)
    }

    fn is_standard(&self) -> bool {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if j + 1 < row.len() && row[j + 1] <= v {
                    return false;
                }
                if i + 1 < self.rows.len() && j < self.rows[i + 1].len() && self.rows[i + 1][j] <= v
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.place.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row - 1][col - 1] as usize
    }

    /// Row index of value v (1-based).
    pub fn row_of(&self, v: usize) -> usize {
        self.place[v - 1].0 as usize
    }

    /// Column index of value v (1-based).
    pub fn col_of(&self, v: usize) -> usize {
        self.place[v - 1].1 as usize
    }

    /// The classification of s_i at this tableau: same row is a weak ascent,
    /// same column a weak descent; otherwise compare columns.
    pub fn classify(&self, i: usize) -> TabClass {
        let (r1, c1) = (self.row_of(i), self.col_of(i));
        let (r2, c2) = (self.row_of(i + 1), self.col_of(i + 1));
        if r1 == r2 {
            TabClass::WeakAsc
        } else if c1 == c2 {
            TabClass::WeakDesc
        } else if c1 < c2 {
            TabClass::StrongAsc
        } else {
            TabClass::StrongDesc
        }
    }

    /// Swaps the values i and i+1, valid exactly when s_i is a strong ascent
    /// or strong descent.
    pub fn swap_values(&self, i: usize) -> StandardTableau {
        let mut rows = self.rows.clone();
        let (r1, c1) = self.place[i - 1];
        let (r2, c2) = self.place[i];
        rows[r1 as usize - 1][c1 as usize - 1] = i as u8 + 1;
        rows[r2 as usize - 1][c2 as usize - 1] = i as u8;
        let mut place = self.place.clone();
        place.swap(i - 1, i);
        StandardTableau {
            shape: self.shape.clone(),
            rows,
            place,
        }
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// tab_lambda: columns are runs of consecutive numbers (the <=_L minimum).
pub fn tab_lambda(shape: &Partition) -> StandardTableau {
    let conj = shape.conjugate();
    let mut rows: Vec<Vec<u8>> = shape.parts().iter().map(|&p| vec![0; p]).collect();
    let mut next = 1u8;
    for (j, &col_len) in conj.parts().iter().enumerate() {
        for row in rows.iter_mut().take(col_len) {
            row[j] = next;
            next += 1;
        }
    }
    StandardTableau::new(shape.clone(), rows).expect("tab_lambda is standard")
}

/// tab^lambda: rows are runs of consecutive numbers (the <=_L maximum).
pub fn tab_sup_lambda(shape: &Partition) -> StandardTableau {
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(shape.rows());
    let mut next = 1u8;
    for &p in shape.parts() {
        rows.push((next..next + p as u8).collect());
        next += p as u8;
    }
    StandardTableau::new(shape.clone(), rows).expect("tab_sup_lambda is standard")
}

/// The permutation w with t = w * tab_lambda.
pub fn word_of(t: &StandardTableau) -> Perm {
    let base = tab_lambda(t.shape());
    let n = t.n();
    let mut images = vec![0usize; n];
    for (i, row) in base.rows().iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            images[b as usize - 1] = t.rows()[i][j] as usize;
        }
    }
    Perm::from_images(&images).expect("tableau entries form a permutation")
}

/// The tableau w * tab_lambda (entrywise application of w); inverse of
/// [`word_of`]. Standard iff w lies in the Specht ideal of the shape.
pub fn tableau_of(w: &Perm, shape: &Partition) -> Result<StandardTableau, TableauError> {
    if w.n() != shape.n() {
        return Err(TableauError::ShapeMismatch {
            expected: vec![shape.n()],
            got: vec![w.n()],
        });
    }
    let base = tab_lambda(shape);
    let rows = base
        .rows()
        .iter()
        .map(|row| row.iter().map(|&b| w.image(b as usize) as u8).collect())
        .collect();
    StandardTableau::new(shape.clone(), rows)
}

/// v_lambda, defined by tab^lambda = v_lambda * tab_lambda.
pub fn v_lambda(shape: &Partition) -> Perm {
    word_of(&tab_sup_lambda(shape))
}

/// J_lambda: the s_i with i and i+1 in the same column of tab_lambda, so
/// that W_{J_lambda} is the column stabilizer of tab_lambda.
pub fn j_lambda(shape: &Partition) -> GenSet {
    let base = tab_lambda(shape);
    (1..shape.n())
        .filter(|&i| base.col_of(i) == base.col_of(i + 1))
        .collect()
}

/// Length of the tableau: l(word_of(t)).
pub fn tableau_length(t: &StandardTableau) -> usize {
    word_of(t).inversions()
}

/// All standard tableaux of the shape, ordered by (length, one-line word),
/// so indices are compatible with the Bruhat order as the q-table engine
/// requires. The first entry is tab_lambda, the last tab^lambda.
pub fn enumerate_syt(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.n();
    let parts = shape.parts().to_vec();
    let mut filled = vec![0usize; parts.len()];
    let mut rows: Vec<Vec<u8>> = parts.iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut out: Vec<StandardTableau> = Vec::new();

    fn place(
        v: usize,
        n: usize,
        parts: &[usize],
        filled: &mut [usize],
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<StandardTableau>,
        shape: &Partition,
    ) {
        if v > n {
            let t = StandardTableau::new(shape.clone(), rows.clone())
                .expect("construction places values in standard order");
            out.push(t);
            return;
        }
        for r in 0..parts.len() {
            if filled[r] < parts[r] && (r == 0 || filled[r - 1] > filled[r]) {
                rows[r].push(v as u8);
                filled[r] += 1;
                place(v + 1, n, parts, filled, rows, out, shape);
                filled[r] -= 1;
                rows[r].pop();
            }
        }
    }

    place(1, n, &parts, &mut filled, &mut rows, &mut out, shape);
    let mut keyed: Vec<(usize, Perm, StandardTableau)> = out
        .into_iter()
        .map(|t| {
            let w = word_of(&t);
            (w.inversions(), w, t)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, t)| t).collect()
}

/// Index of every tableau in the canonical enumeration order, keyed by its
/// permutation word.
pub fn syt_index(tableaux: &[StandardTableau]) -> HashMap<Perm, u32> {
    tableaux
        .iter()
        .enumerate()
        .map(|(i, t)| (word_of(t), i as u32))
        .collect()
}

/// All partitions of n in reverse-lexicographic order, as raw part lists.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{suffix_closure, CoxeterGroup, TypeA};

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn tab_lambda_examples() {
        let l = part(&[3, 3, 1]);
        let t = tab_lambda(&l);
        assert_eq!(t.rows(), &[vec![1, 4, 6], vec![2, 5, 7], vec![3]]);
        let t_sup = tab_sup_lambda(&l);
        assert_eq!(t_sup.rows(), &[vec![1, 2, 3], vec![4, 5, 6], vec![7]]);
        let row = part(&[4]);
        assert_eq!(tab_lambda(&row), tab_sup_lambda(&row));
    }

    #[test]
    fn v_lambda_examples() {
        assert_eq!(
            v_lambda(&part(&[3, 3, 1])).images(),
            vec![1, 4, 7, 2, 5, 3, 6]
        );
        assert_eq!(v_lambda(&part(&[5])).images(), vec![1, 2, 3, 4, 5]);
        assert_eq!(v_lambda(&part(&[1, 1, 1])).images(), vec![1, 2, 3]);
        // Cross-check the spec'd length of v_(3,3,1).
        assert_eq!(v_lambda(&part(&[3, 3, 1])).inversions(), 7);
    }

    #[test]
    fn j_lambda_examples() {
        assert_eq!(j_lambda(&part(&[3, 3, 1])), GenSet::from_indices(&[1, 2, 4, 6]));
        assert_eq!(j_lambda(&part(&[4])), GenSet::empty());
        assert_eq!(j_lambda(&part(&[1, 1, 1, 1])), GenSet::full(3));
    }

    #[test]
    fn word_of_round_trip() {
        let l = part(&[3, 3, 1]);
        let g = TypeA::new(7);
        assert_eq!(word_of(&tab_lambda(&l)), g.identity());
        assert_eq!(word_of(&tab_sup_lambda(&l)), v_lambda(&l));
        for t in enumerate_syt(&l) {
            let w = word_of(&t);
            assert_eq!(tableau_of(&w, &l).unwrap(), t);
        }
    }

    #[test]
    fn tableau_of_rejects_shape_mismatch() {
        let g = TypeA::new(4);
        assert!(matches!(
            tableau_of(&g.identity(), &part(&[3, 2])),
            Err(TableauError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_syt_counts() {
        assert_eq!(enumerate_syt(&part(&[3, 3, 1])).len(), 21);
        assert_eq!(enumerate_syt(&part(&[6])).len(), 1);
        assert_eq!(enumerate_syt(&part(&[2, 1])).len(), 2);
        for parts in [
            vec![5, 5, 3, 3],
            vec![4, 2],
            vec![2, 2, 2],
            vec![3, 1, 1, 1],
        ] {
            let l = part(&parts);
            assert_eq!(
                enumerate_syt(&l).len() as u64,
                l.hook_length_count(),
                "hook count mismatch for {l}"
            );
        }
    }

    #[test]
    fn enumeration_is_length_monotone_and_starts_at_tab_lambda() {
        let l = part(&[3, 2, 1]);
        let ts = enumerate_syt(&l);
        assert_eq!(ts[0], tab_lambda(&l));
        assert_eq!(*ts.last().unwrap(), tab_sup_lambda(&l));
        let lens: Vec<usize> = ts.iter().map(tableau_length).collect();
        assert!(lens.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn classify_examples() {
        let l = part(&[3, 3, 1]);
        let t1 = tab_lambda(&l);
        for i in [1, 2, 4, 6] {
            assert_eq!(t1.classify(i), TabClass::WeakDesc);
        }
        for i in [3, 5] {
            assert_eq!(t1.classify(i), TabClass::StrongAsc);
        }
        let row = tab_lambda(&part(&[5]));
        for i in 1..5 {
            assert_eq!(row.classify(i), TabClass::WeakAsc);
        }
    }

    #[test]
    fn classes_partition_generators() {
        for parts in [vec![3, 2], vec![2, 2, 1], vec![4, 1], vec![2, 1, 1, 1]] {
            let l = part(&parts);
            for t in enumerate_syt(&l) {
                for i in 1..l.n() {
                    // classify is total and single-valued by construction;
                    // check the defining conditions directly.
                    let same_row = t.row_of(i) == t.row_of(i + 1);
                    let same_col = t.col_of(i) == t.col_of(i + 1);
                    assert!(!(same_row && same_col));
                    match t.classify(i) {
                        TabClass::WeakAsc => assert!(same_row),
                        TabClass::WeakDesc => assert!(same_col),
                        TabClass::StrongAsc => {
                            assert!(!same_row && !same_col && t.col_of(i) < t.col_of(i + 1))
                        }
                        TabClass::StrongDesc => assert!(t.col_of(i) > t.col_of(i + 1)),
                    }
                }
            }
        }
    }

    #[test]
    fn tabincrease_exhaustive_small_n() {
        // l(s_i t) > l(t) iff col(i) < col(i+1), or equal columns with
        // row(i) < row(i+1).
        for n in 2..=6 {
            for parts in partitions_of(n) {
                let l = part(&parts);
                let g = TypeA::new(n);
                for t in enumerate_syt(&l) {
                    let w = word_of(&t);
                    for i in 1..n {
                        let lhs = g.length(&g.left_mul_gen(i, &w)) > g.length(&w);
                        let rhs = t.col_of(i) < t.col_of(i + 1)
                            || (t.col_of(i) == t.col_of(i + 1) && t.row_of(i) < t.row_of(i + 1));
                        assert_eq!(lhs, rhs, "tabincrease fails at {t:?}, i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn syt_equals_suffix_filter_below_v_lambda() {
        for n in 2..=5 {
            for parts in partitions_of(n) {
                let l = part(&parts);
                let g = TypeA::new(n);
                let v = v_lambda(&l);
                let mut ideal: Vec<_> = suffix_closure(&g, std::slice::from_ref(&v));
                ideal.sort_by_key(|w| (g.length(w), w.clone()));
                let mut words: Vec<_> = enumerate_syt(&l).iter().map(word_of).collect();
                words.sort_by_key(|w| (g.length(w), w.clone()));
                assert_eq!(ideal, words, "STD({l}) != suffix ideal of v_lambda");
                // And every member is <=_L v_lambda.
                for w in &words {
                    assert!(g.suffix_leq(w, &v));
                }
            }
        }
    }

}
