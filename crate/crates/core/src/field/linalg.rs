//! Gaussian elimination over any [`FieldOps`] field.
#![allow(clippy::needless_range_loop)]

use super::poly::FieldOps;

/// Rank of the matrix whose rows are given.
pub fn rank<F: FieldOps>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !field.is_zero(rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(rows[i][c]) {
                let factor = rows[i][c];
                for k in c..cols {
                    let t = field.mul(factor, rows[r][k]);
                    rows[i][k] = field.sub(rows[i][k], t);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert<F: FieldOps>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !field.is_zero(a[i][c]))?;
        a.swap(c, piv);
        let inv = field.inv(a[c][c]);
        for x in a[c].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..n {
            if i != c && !field.is_zero(a[i][c]) {
                let factor = a[i][c];
                for k in 0..2 * n {
                    let t = field.mul(factor, a[c][k]);
                    a[i][k] = field.sub(a[i][k], t);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Reduced row echelon basis of a subspace, used for membership tests.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
    width: usize,
}

impl<E: Copy + Eq + std::fmt::Debug> Echelon<E> {
    pub fn new<F: FieldOps<Elem = E>>(field: &F, width: usize) -> Self {
        let _ = field;
        Self {
            rows: Vec::new(),
            pivots: Vec::new(),
            width,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce<F: FieldOps<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if !field.is_zero(c) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains<F: FieldOps<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|&x| field.is_zero(x))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert<F: FieldOps<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut v = self.reduce(field, v);
        let Some(pc) = v.iter().position(|&x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(v[pc]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if !field.is_zero(c) {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::PrimeField;

    #[test]
    fn rank_over_gf3() {
        let f = PrimeField::new(3);
        let m = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        // row1 + row2 = (0, 0, 0) mod 3
        assert_eq!(rank(&f, m), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(5);
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert(&f, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s = (0..2).fold(0, |acc, k| f.add(acc, f.mul(m[i][k], inv[k][j])));
                assert_eq!(s, u32::from(i == j));
            }
        }
        assert!(invert(&f, &[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::new(2);
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(&f, &[1, 1, 0]));
        assert!(e.insert(&f, &[0, 1, 1]));
        assert!(!e.insert(&f, &[1, 0, 1]));
        assert!(e.contains(&f, &[1, 0, 1]));
        assert!(!e.contains(&f, &[1, 0, 0]));
        assert_eq!(e.dim(), 2);
    }
}
