//! Integer matrix algorithms: row Hermite reduction with transform, integer
//! kernels, Smith normal form, and LLL reduction of a rational Gram matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Replace rows (i, j) by the unimodular combination that puts gcd(a, b) in
/// row i and 0 in row j, where a = m[i][c], b = m[j][c].
fn combine_rows(m: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, c: usize) {
    let a = m[i][c].clone();
    let b = m[j][c].clone();
    let e = a.extended_gcd(&b);
    let (g, x, y) = (e.gcd, e.x, e.y);
    let (ag, bg) = (&a / &g, &b / &g);
    for mat in [m, u] {
        let ri = mat[i].clone();
        let rj = mat[j].clone();
        for k in 0..ri.len() {
            mat[i][k] = &x * &ri[k] + &y * &rj[k];
            mat[j][k] = &ag * &rj[k] - &bg * &ri[k];
        }
    }
}

/// Row echelon form `H = U·A` with `U` unimodular. Returns `(H, U, pivots)`
/// where `pivots[r]` is the pivot column of row `r`; rows past
/// `pivots.len()` are zero.
pub fn row_hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut h = a.clone();
    let mut u = identity_int(n);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        for j in r + 1..n {
            if !h[j][c].is_zero() {
                combine_rows(&mut h, &mut u, r, j, c);
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for mat in [&mut h, &mut u] {
                for x in mat[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (h, u, pivots)
}

/// For an integer matrix `a` (n×k), returns a basis of {x ∈ ℤⁿ : x·a = 0}
/// and, when one exists, some x ∈ ℤⁿ with x·a = target.
pub fn solve_integer_affine(a: &IntMatrix, target: &[BigInt]) -> (Option<Vec<BigInt>>, IntMatrix) {
    let n = a.len();
    let (h, u, pivots) = row_hermite(a);
    let kernel: IntMatrix = u[pivots.len()..].to_vec();
    let k = target.len();
    let mut y = vec![BigInt::zero(); n];
    let mut ok = true;
    for (r, &c) in pivots.iter().enumerate() {
        let mut rest = target[c].clone();
        for (i, yi) in y.iter().enumerate().take(r) {
            rest -= yi * &h[i][c];
        }
        let (q, rem) = rest.div_rem(&h[r][c]);
        if !rem.is_zero() {
            ok = false;
            break;
        }
        y[r] = q;
    }
    if ok {
        for c in 0..k {
            let mut s = BigInt::zero();
            for (i, yi) in y.iter().enumerate().take(pivots.len()) {
                s += yi * &h[i][c];
            }
            if s != target[c] {
                ok = false;
                break;
            }
        }
    }
    let particular = ok.then(|| {
        (0..n)
            .map(|j| {
                let mut s = BigInt::zero();
                for (i, yi) in y.iter().enumerate() {
                    if !yi.is_zero() {
                        s += yi * &u[i][j];
                    }
                }
                s
            })
            .collect()
    });
    (particular, kernel)
}

/// Smith normal form `D = U·A·V` of a square or rectangular integer matrix.
/// The diagonal of `D` is non-negative with each entry dividing the next.
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity_int(rows);
    let mut v = identity_int(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                for (mat, from) in [(&mut d, t), (&mut u, t)] {
                    let src = mat[from].clone();
                    for (x, s) in mat[i].iter_mut().zip(&src) {
                        *x -= &q * s;
                    }
                }
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                for mat in [&mut d, &mut v] {
                    for row in mat.iter_mut() {
                        let s = row[t].clone();
                        row[j] -= &q * s;
                    }
                }
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any entry not divisible by the pivot into row t.
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        for mat in [&mut d, &mut u] {
                            let src = mat[i].clone();
                            for (x, s) in mat[t].iter_mut().zip(&src) {
                                *x += s;
                            }
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if t < rows && t < cols && d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -std::mem::take(x);
            }
            for x in u[t].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    Smith { d, u, v }
}

pub fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Gram matrix of the rows of `basis` (integer combinations) under `gram`.
pub fn transform_gram(gram: &[Vec<Rational>], basis: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = basis.len();
    let dim = gram.len();
    let tg: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            (0..dim)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..dim {
                        if !b[k].is_zero() && !gram[k][j].is_zero() {
                            s += Rational::from_integer(b[k].clone()) * &gram[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..dim {
                        if !basis[j][k].is_zero() && !tg[i][k].is_zero() {
                            s += &tg[i][k] * Rational::from_integer(basis[j][k].clone());
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// LLL reduction (δ = 3/4) of the lattice with positive-definite Gram matrix
/// `gram`, in exact rational arithmetic. Returns the unimodular transform `T`;
/// the reduced basis is `T·B` with Gram `T·G·Tᵀ`.
pub fn lll_gram(gram: &[Vec<Rational>]) -> IntMatrix {
    let n = gram.len();
    let mut t = identity_int(n);
    let mut g: Vec<Vec<Rational>> = gram.to_vec();
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let half = Rational::new(BigInt::one(), BigInt::from(2));

    let gso = |g: &Vec<Vec<Rational>>| -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let mut mu = vec![vec![Rational::zero(); n]; n];
        let mut bstar = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..i {
                let mut s = g[i][j].clone();
                for k in 0..j {
                    s -= &mu[j][k] * &mu[i][k] * &bstar[k];
                }
                mu[i][j] = s / &bstar[j];
            }
            let mut s = g[i][i].clone();
            for k in 0..i {
                s -= &mu[i][k] * &mu[i][k] * &bstar[k];
            }
            bstar[i] = s;
        }
        (mu, bstar)
    };

    // Row operation b_k ← b_k − q·b_j applied to T and G.
    let reduce = |t: &mut IntMatrix, g: &mut Vec<Vec<Rational>>, k: usize, j: usize, q: &BigInt| {
        let qr = Rational::from_integer(q.clone());
        let tj = t[j].clone();
        for (x, y) in t[k].iter_mut().zip(&tj) {
            *x -= q * y;
        }
        let gkj = g[k][j].clone();
        let gjj = g[j][j].clone();
        let row_j = g[j].clone();
        for (i, rj) in row_j.iter().enumerate() {
            if i == k {
                continue;
            }
            let nv = &g[k][i] - &qr * rj;
            g[k][i] = nv.clone();
            g[i][k] = nv;
        }
        g[k][k] = &g[k][k] - Rational::from_integer(BigInt::from(2)) * &qr * &gkj + &qr * &qr * &gjj;
    };

    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&g);
            let m = &mu[k][j];
            if m.abs() > half {
                let q = m.round().to_integer();
                reduce(&mut t, &mut g, k, j, &q);
            }
        }
        let (mu, bstar) = gso(&g);
        let lhs = &bstar[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            t.swap(k, k - 1);
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat_int;

    fn big(m: &[&[i64]]) -> IntMatrix {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_kernel_and_particular_solution() {
        // x·a = 3 where a = (2, 4, 6)ᵀ has no solution; = 4 does.
        let a = big(&[&[2], &[4], &[6]]);
        let (p, k) = solve_integer_affine(&a, &[BigInt::from(3)]);
        assert!(p.is_none());
        assert_eq!(k.len(), 2);
        let (p, _) = solve_integer_affine(&a, &[BigInt::from(4)]);
        let p = p.unwrap();
        let val: BigInt = p.iter().zip([2, 4, 6]).map(|(x, c)| x * c).sum();
        assert_eq!(val, BigInt::from(4));
        for row in &k {
            let v: BigInt = row.iter().zip([2, 4, 6]).map(|(x, c)| x * c).sum();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn smith_form_of_small_matrix() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(
            s.diagonal(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(int_mat_mul(&int_mat_mul(&s.u, &a), &s.v), s.d);
    }

    #[test]
    fn lll_reduces_skewed_basis() {
        // Z² with basis (1, 0), (100, 1): reduced basis has norms 1, 1.
        let g = vec![
            vec![rat_int(1), rat_int(100)],
            vec![rat_int(100), rat_int(10001)],
        ];
        let t = lll_gram(&g);
        let reduced = transform_gram(&g, &t);
        assert_eq!(reduced[0][0], rat_int(1));
        assert_eq!(reduced[1][1], rat_int(1));
    }
}
