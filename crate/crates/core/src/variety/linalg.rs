//! Fraction-free exact linear algebra over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Scales a rational row by the lcm of its denominators.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Row space of an integer matrix kept in fully reduced echelon form.
///
/// Pivots are the first nonzero column of each row; every pivot column is
/// zero in all other rows, pivot entries are positive and each row has
/// content 1. Rows are kept sorted by pivot column, so the state depends only
/// on the row space, not on insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigInt])> + '_ {
        self.rows.iter().map(|(p, r)| (*p, r.as_slice()))
    }

    fn reduce(&self, row: &mut Vec<BigInt>) {
        for (p, r) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let a = &r[*p];
            let b = row[*p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                *x = &*x * a - &b * y;
            }
            remove_content(row);
        }
    }

    /// True if `row` lies in the row space.
    pub fn contains(&self, row: &[BigInt]) -> bool {
        let mut row = row.to_vec();
        self.reduce(&mut row);
        row.iter().all(|x| x.is_zero())
    }

    /// Adds a row; returns true when the rank grew.
    pub fn insert(&mut self, row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.width, "row width");
        let mut row = row;
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if row[p].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let b = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                *x = &*x * &row[p] - &b * y;
            }
            remove_content(r);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, row));
        true
    }

    /// Basis of `{c : M c = 0}` indexed by the free columns: the vector for
    /// free column `f` has a 1 at `f`, zeros at the other free columns, and
    /// is supported otherwise on pivot columns left of `f`.
    pub fn kernel(&self) -> Vec<(usize, Vec<Rational>)> {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut out = Vec::new();
        for f in (0..self.width).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.width];
            v[f] = Rational::one();
            for (p, r) in &self.rows {
                if !r[f].is_zero() {
                    v[*p] = -Rational::new(r[f].clone(), r[*p].clone());
                }
            }
            out.push((f, v));
        }
        out
    }
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut e = Echelon::new(first.len());
    for r in rows {
        e.insert(integer_row(r));
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, rational};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    // cofactor expansion, independent of the elimination above
    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn kronecker_determinant() {
        let m = ints(&[&[1, 1, 1], &[1, 2, 5], &[1, 13, 34]]);
        assert_eq!(determinant(&m), BigInt::from(-15));
        assert_eq!(cofactor_det(&m), BigInt::from(-15));
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = ints(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 0]]);
        assert_eq!(determinant(&m), cofactor_det(&m));
        let singular = ints(&[&[1, 2], &[2, 4]]);
        assert!(determinant(&singular).is_zero());
    }

    #[test]
    fn echelon_is_order_independent() {
        let rows = ints(&[&[1, 2, 3, 4], &[2, 4, 7, 1], &[0, 0, 1, -7]]);
        let mut a = Echelon::new(4);
        let mut b = Echelon::new(4);
        for r in &rows {
            a.insert(r.clone());
        }
        for r in rows.iter().rev() {
            b.insert(r.clone());
        }
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&ints(&[&[3, 6, 10, 5]])[0]));
    }

    #[test]
    fn kernel_vectors_annihilate_rows() {
        let rows = ints(&[&[1, 1, 1], &[1, 2, 5]]);
        let mut e = Echelon::new(3);
        for r in &rows {
            e.insert(r.clone());
        }
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        let (f, v) = &k[0];
        assert_eq!(*f, 2);
        // hand solution: c0 + c1 + c2 = 0, c0 + 2c1 + 5c2 = 0, c2 = 1
        assert_eq!(v, &vec![rational(3), rational(-4), rational(1)]);
    }

    #[test]
    fn rational_rank() {
        let rows = vec![vec![ratio(1, 2), ratio(1, 3)], vec![rational(3), rational(2)]];
        assert_eq!(rank(&rows), 1);
        assert_eq!(integer_row(&rows[0]), vec![BigInt::from(3), BigInt::from(2)]);
    }
}
