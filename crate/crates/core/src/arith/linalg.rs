//! Dense linear algebra over an exact [`Field`].

use super::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns. Zero rows
/// are moved to the bottom.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Basis of the right kernel {x : m·x = 0}, one vector per free column,
/// normalized to have a 1 in that column.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = m.clone();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[r][fc]);
            }
            v
        })
        .collect()
}

/// Basis of the left kernel {y : y·m = 0}.
pub fn left_kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let rows = m.len();
    kernel(f, &transpose(m), rows)
}

pub fn transpose<E: Clone>(m: &Matrix<E>) -> Matrix<E> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = f.zero();
                    for k in 0..inner {
                        if !f.is_zero(&row[k]) && !f.is_zero(&b[k][j]) {
                            acc = f.add(&acc, &f.mul(&row[k], &b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|row| dot(f, row, v)).collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let id = identity(f, n);
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(&id)
        .map(|(r, e)| r.iter().chain(e).cloned().collect())
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else {
            return f.zero();
        };
        if pr != c {
            a.swap(pr, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[c][c]);
        let inv = f.inv(&a[c][c]).unwrap();
        for r in c + 1..n {
            if f.is_zero(&a[r][c]) {
                continue;
            }
            let factor = f.mul(&a[r][c], &inv);
            for k in c..n {
                let sub = f.mul(&factor, &a[c][k]);
                a[r][k] = f.sub(&a[r][k], &sub);
            }
        }
    }
    d
}

/// Solves x·m = b for a row vector x, if solvable.
pub fn solve_left<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    // Columns of mᵀ with b appended as the last column.
    let rows = m.len();
    let mt = transpose(m);
    let mut aug: Matrix<F::Elem> = mt
        .into_iter()
        .zip(b)
        .map(|(mut r, x)| {
            r.push(x.clone());
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.last() == Some(&rows) {
        return None;
    }
    let mut x = vec![f.zero(); rows];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][rows].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::{CycField, CycNum};
    use crate::arith::residue::ResidueField;

    #[test]
    fn kernel_and_rank_over_finite_field() {
        let f = ResidueField::prime_field(7);
        let e = |x: i64| f.from_i64(x);
        let m = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)]];
        assert_eq!(rank(&f, &m), 1);
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&f, &m, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn inverse_over_cyclotomic_field() {
        let f = CycField;
        let z = CycNum::zeta();
        let m = vec![
            vec![CycNum::one(), z.clone()],
            vec![z.pow(3), CycNum::from_int(2)],
        ];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(&f, 2));
        let d = det(&f, &m);
        assert_eq!(d, &CycNum::from_int(2) - &z.pow(4));
    }

    #[test]
    fn solve_left_consistency() {
        let f = ResidueField::prime_field(11);
        let e = |x: i64| f.from_i64(x);
        let m = vec![vec![e(1), e(0), e(1)], vec![e(0), e(1), e(1)]];
        let b = vec![e(3), e(4), e(7)];
        let x = solve_left(&f, &m, &b).unwrap();
        assert_eq!(x, vec![e(3), e(4)]);
        assert!(solve_left(&f, &m, &[e(3), e(4), e(8)]).is_none());
    }
}
