//! Vectors of prescribed norm and pairings in a hyperbolic lattice.
//!
//! Fixing pairings with positive vectors leaves an affine sublattice
//! `x₀ + ℤᵏ·K` on which the form is negative definite; writing the norm
//! condition as `(z − w)·Q·(z − w)ᵀ = R` with `Q = −K·G·Kᵀ` reduces the search
//! to a Fincke–Pohst enumeration on the positive-definite form `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{row_times, IntVec, LatVec, Lattice};
use crate::arith::intmat::{lll_gram, solve_integer_affine, transform_gram, IntMatrix};
use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::{floor_sqrt, rat_int};
use crate::arith::{QField, Rational};
use crate::error::{internal, Error, Result};

/// Norm condition on the enumerated vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormBound {
    /// `⟨x, x⟩ = b`
    Equal(Rational),
    /// `⟨x, x⟩ ≥ b`
    AtLeast(Rational),
}

/// LLL preprocessing is applied above this rank.
const LLL_THRESHOLD: usize = 8;

/// All `x ∈ M` with `⟨h, x⟩ = a` and `⟨x, x⟩ = b`, sorted lexicographically.
pub fn enumerate_fixed_pairing(
    m: &Lattice,
    h: &LatVec,
    a: &Rational,
    b: &Rational,
) -> Result<Vec<LatVec>> {
    let h = m.to_primal(h)?;
    let hh = m.pair(&h.coords, &h.coords);
    if !hh.is_positive() {
        return Err(Error::Precondition("⟨h, h⟩ must be positive".into()));
    }
    let out = enumerate_fixed_pairings(m, &[(h.coords, a.clone())], &NormBound::Equal(b.clone()))?;
    Ok(out.iter().map(|v| LatVec::from_ints(v)).collect())
}

/// All `x ∈ M` with `⟨hⱼ, x⟩ = aⱼ` for every constraint and the given norm
/// condition, sorted lexicographically. The constraint vectors are in primal
/// coordinates and the orthogonal complement of their span must be negative
/// definite.
pub fn enumerate_fixed_pairings(
    m: &Lattice,
    constraints: &[(Vec<Rational>, Rational)],
    norm: &NormBound,
) -> Result<Vec<IntVec>> {
    let n = m.rank();
    let g = m.gram();

    // Integer system x·A = t encoding the pairing conditions.
    let mut a_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut targets = Vec::new();
    for (h, a) in constraints {
        if h.len() != n {
            return Err(Error::Dimension {
                what: "constraint vector".into(),
                expected: n,
                found: h.len(),
            });
        }
        let col: Vec<Rational> = (0..n)
            .map(|i| {
                let mut s = Rational::zero();
                for (j, hj) in h.iter().enumerate() {
                    if !hj.is_zero() {
                        s += &g[i][j] * hj;
                    }
                }
                s
            })
            .collect();
        let mut l = a.denom().clone();
        for c in &col {
            l = l.lcm(c.denom());
        }
        let lr = Rational::from_integer(l.clone());
        a_cols.push(col.iter().map(|c| (c * &lr).to_integer()).collect());
        targets.push((a * &lr).to_integer());
    }
    let a_mat: IntMatrix = (0..n)
        .map(|i| a_cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let (particular, kernel) = if constraints.is_empty() {
        (Some(vec![BigInt::zero(); n]), crate::arith::intmat::identity_int(n))
    } else {
        solve_integer_affine(&a_mat, &targets)
    };
    let Some(x0) = particular else {
        return Ok(vec![]);
    };
    let x0r: Vec<Rational> = x0.iter().map(|v| Rational::from_integer(v.clone())).collect();
    let c0 = m.pair(&x0r, &x0r);
    let (bound, exact) = match norm {
        NormBound::Equal(b) => (b, true),
        NormBound::AtLeast(b) => (b, false),
    };

    let k = kernel.len();
    if k == 0 {
        let ok = if exact { c0 == *bound } else { c0 >= *bound };
        return to_i64_rows(if ok { vec![x0] } else { vec![] });
    }

    // Q = −K·G·Kᵀ on the kernel coordinates z.
    let gk = transform_gram(g, &kernel);
    let q: Matrix<Rational> = gk.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let kr: Matrix<Rational> = kernel
        .iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect();
    let gx0 = row_times(&x0r, g);
    let v: Vec<Rational> = kr
        .iter()
        .map(|row| row.iter().zip(&gx0).map(|(a, b)| a * b).sum())
        .collect();
    let q_inv = linalg::inverse(&QField, &q)
        .ok_or_else(|| Error::Precondition("pairing constraints leave a degenerate complement".into()))?;
    let w = row_times(&v, &q_inv);
    let vw: Rational = v.iter().zip(&w).map(|(a, b)| a * b).sum();
    let r = c0 + vw - bound;
    if r.is_negative() {
        return Ok(vec![]);
    }

    // Optional reduction z = z'·T.
    let t = if k > LLL_THRESHOLD {
        if !is_positive_definite(&q) {
            return Err(Error::Precondition(
                "orthogonal complement of the constraints is not negative definite".into(),
            ));
        }
        lll_gram(&q)
    } else {
        crate::arith::intmat::identity_int(k)
    };
    let q_red = transform_gram(&q, &t);
    let tr: Matrix<Rational> = t
        .iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect();
    let t_inv = linalg::inverse(&QField, &tr).ok_or_else(|| internal!("LLL transform is singular"))?;
    let w_red = row_times(&w, &t_inv);

    let fp = FinckePohst::new(&q_red, w_red, r, exact)?;
    let zs = fp.run();

    let mut out: Vec<Vec<BigInt>> = zs
        .into_iter()
        .map(|zp| {
            let mut x = x0.clone();
            for (zi, trow) in zp.iter().zip(&t) {
                if zi.is_zero() {
                    continue;
                }
                for (l, tl) in trow.iter().enumerate() {
                    if tl.is_zero() {
                        continue;
                    }
                    let coef = zi * tl;
                    for (xj, kj) in x.iter_mut().zip(&kernel[l]) {
                        if !kj.is_zero() {
                            *xj += &coef * kj;
                        }
                    }
                }
            }
            x
        })
        .collect();
    out.sort();
    let mut rows = to_i64_rows(out)?;
    rows.sort();
    Ok(rows)
}

fn to_i64_rows(rows: Vec<Vec<BigInt>>) -> Result<Vec<IntVec>> {
    rows.into_iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_i64().ok_or_else(|| internal!("coordinate {v} overflows i64")))
                .collect()
        })
        .collect()
}

fn is_positive_definite(q: &Matrix<Rational>) -> bool {
    ldl(q).is_some()
}

/// `Q(y) = Σᵢ dᵢ·(yᵢ + Σ_{j>i} uᵢⱼ·yⱼ)²`; `None` unless every `dᵢ > 0`.
fn ldl(q: &Matrix<Rational>) -> Option<(Vec<Rational>, Matrix<Rational>)> {
    let k = q.len();
    let mut d = vec![Rational::zero(); k];
    let mut u = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        let mut di = q[i][i].clone();
        for l in 0..i {
            di -= &d[l] * &u[l][i] * &u[l][i];
        }
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..k {
            let mut s = q[i][j].clone();
            for l in 0..i {
                s -= &d[l] * &u[l][i] * &u[l][j];
            }
            u[i][j] = s / &di;
        }
        u[i][i] = Rational::one();
        d[i] = di;
    }
    Some((d, u))
}

/// Exact Fincke–Pohst enumeration of integer `z` with
/// `(z − w)·Q·(z − w)ᵀ ≤ R` (or `= R` when `exact`).
struct FinckePohst {
    d: Vec<Rational>,
    u: Matrix<Rational>,
    w: Vec<Rational>,
    r: Rational,
    exact: bool,
}

impl FinckePohst {
    fn new(q: &Matrix<Rational>, w: Vec<Rational>, r: Rational, exact: bool) -> Result<Self> {
        let (d, u) = ldl(q).ok_or_else(|| {
            Error::Precondition("orthogonal complement of the constraints is not negative definite".into())
        })?;
        Ok(FinckePohst { d, u, w, r, exact })
    }

    /// Integers `z` with `d·(z − c)² ≤ rem`, in increasing order.
    fn range(d: &Rational, c: &Rational, rem: &Rational) -> Vec<(BigInt, Rational)> {
        let s = floor_sqrt(&(rem / d));
        let lo: BigInt = c.floor().to_integer() - &s - 1;

        let hi: BigInt = c.ceil().to_integer() + &s + 1;
        let mut out = Vec::new();
        let mut z = lo;
        while z <= hi {
            let diff = Rational::from_integer(z.clone()) - c;
            let cost = d * &diff * &diff;
            if cost <= *rem {
                out.push((z.clone(), rem - cost));
            }
            z += 1;
        }
        out
    }

    fn center(&self, i: usize, z: &[BigInt]) -> Rational {
        let k = self.d.len();
        let mut c = self.w[i].clone();
        for j in i + 1..k {
            if self.u[i][j].is_zero() {
                continue;
            }
            let y = Rational::from_integer(z[j].clone()) - &self.w[j];
            c -= &self.u[i][j] * y;
        }
        c
    }

    fn descend(&self, i: usize, z: &mut Vec<BigInt>, rem: Rational, out: &mut Vec<Vec<BigInt>>) {
        let c = self.center(i, z);
        for (zi, next) in Self::range(&self.d[i], &c, &rem) {
            z[i] = zi;
            if i == 0 {
                if !self.exact || next.is_zero() {
                    out.push(z.clone());
                }
            } else {
                self.descend(i - 1, z, next, out);
            }
        }
        z[i] = BigInt::zero();
    }

    fn run(&self) -> Vec<Vec<BigInt>> {
        let k = self.d.len();
        let z = vec![BigInt::zero(); k];
        let top = self.center(k - 1, &z);
        let first = Self::range(&self.d[k - 1], &top, &self.r);
        // Independent subtrees per top-level value.
        let parts: Vec<Vec<Vec<BigInt>>> = first
            .into_par_iter()
            .map(|(zt, next)| {
                let mut z = vec![BigInt::zero(); k];
                z[k - 1] = zt;
                let mut out = Vec::new();
                if k == 1 {
                    if !self.exact || next.is_zero() {
                        out.push(z);
                    }
                } else {
                    self.descend(k - 2, &mut z, next, &mut out);
                }
                out
            })
            .collect();
        parts.into_iter().flatten().collect()
    }
}

/// Generator of the subgroup `{⟨h, x⟩ : x ∈ M}` of ℚ.
fn pairing_step(m: &Lattice, h: &[Rational]) -> Rational {
    let gh = row_times(h, m.gram());
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in &gh {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    Rational::new(num, den)
}

/// All `x ∈ L` with `⟨h, x⟩ > 0`, `⟨h₂, x⟩ < 0` and `⟨x, x⟩ = d`.
///
/// In the plane spanned by `h, h₂` the projection of `x` has norm at least
/// `d`, which bounds the pairs `(⟨h,x⟩, −⟨h₂,x⟩) = (α, β)` by
/// `⟨h₂,h₂⟩α² + 2⟨h,h₂⟩αβ + ⟨h,h⟩β² ≤ |d|·|det P|`.
pub fn enumerate_separating(l: &Lattice, h: &LatVec, h2: &LatVec, d: &Rational) -> Result<Vec<LatVec>> {
    if !d.is_negative() {
        return Err(Error::Input("norm must be negative".into()));
    }
    let h = l.to_primal(h)?.coords;
    let h2 = l.to_primal(h2)?.coords;
    let hh = l.pair(&h, &h);
    let h2h2 = l.pair(&h2, &h2);
    let hh2 = l.pair(&h, &h2);
    if !hh.is_positive() || h2h2.is_negative() || !hh2.is_positive() {
        return Err(Error::Precondition(
            "need ⟨h,h⟩ > 0, ⟨h₂,h₂⟩ ≥ 0 and ⟨h,h₂⟩ > 0".into(),
        ));
    }
    let det_p = &hh * &h2h2 - &hh2 * &hh2;
    if det_p.is_zero() {
        // h₂ is a positive multiple of h; the sign conditions contradict.
        return Ok(vec![]);
    }
    if det_p.is_positive() {
        return Err(Error::Precondition("lattice is not hyperbolic".into()));
    }
    let bound = -d * (-&det_p);
    let step_a = pairing_step(l, &h);
    let step_b = pairing_step(l, &h2);
    let quad = |a: &Rational, b: &Rational| &h2h2 * a * a + rat_int(2) * &hh2 * a * b + &hh * b * b;

    let mut out = Vec::new();
    let mut alpha = step_a.clone();
    while quad(&alpha, &step_b) <= bound {
        let mut beta = step_b.clone();
        while quad(&alpha, &beta) <= bound {
            let cons = vec![(h.clone(), alpha.clone()), (h2.clone(), -beta.clone())];
            out.extend(enumerate_fixed_pairings(l, &cons, &NormBound::Equal(d.clone()))?);
            beta += &step_b;
        }
        alpha += &step_a;
    }
    out.sort();
    out.dedup();
    Ok(out.iter().map(|v| LatVec::from_ints(v)).collect())
}

/// `v` is nef iff no `(−2)`-vector separates it from the ample class.
pub fn is_nef_class(l: &Lattice, ample: &LatVec, v: &LatVec) -> Result<bool> {
    Ok(enumerate_separating(l, ample, v, &rat_int(-2))?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ints_to_rats;
    use proptest::prelude::*;

    fn brute(l: &Lattice, cons: &[(Vec<i64>, i64)], norm: i64, exact: bool, boxr: i64) -> Vec<IntVec> {
        let n = l.rank();
        let mut out = Vec::new();
        let mut x = vec![-boxr; n];
        loop {
            let ok_c = cons.iter().all(|(h, a)| l.pair_int(h, &x) == *a);
            let nx = l.pair_int(&x, &x);
            if ok_c && (if exact { nx == norm } else { nx >= norm }) {
                out.push(x.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return out;
                }
                x[i] += 1;
                if x[i] > boxr {
                    x[i] = -boxr;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn diagonal_rank_two_example() {
        let l = Lattice::from_int_gram(&[vec![2, 0], vec![0, -2]]).unwrap();
        let got = enumerate_fixed_pairing(&l, &LatVec::from_ints(&[1, 0]), &rat_int(0), &rat_int(-2)).unwrap();
        assert_eq!(got, vec![LatVec::from_ints(&[0, -1]), LatVec::from_ints(&[0, 1])]);
    }

    #[test]
    fn nonpositive_h_is_rejected() {
        let l = Lattice::from_int_gram(&[vec![2, 0], vec![0, -2]]).unwrap();
        let r = enumerate_fixed_pairing(&l, &LatVec::from_ints(&[0, 1]), &rat_int(0), &rat_int(-2));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    fn brute_separating(l: &Lattice, h: &[i64], h2: &[i64], d: i64, boxr: i64) -> Vec<LatVec> {
        let mut out: Vec<LatVec> = brute(l, &[], d, true, boxr)
            .into_iter()
            .filter(|x| l.pair_int(h, x) > 0 && l.pair_int(h2, x) < 0)
            .map(|x| LatVec::from_ints(&x))
            .collect();
        out.sort_by(|a, b| a.to_ints().cmp(&b.to_ints()));
        out
    }

    #[test]
    fn separating_in_hyperbolic_plane_matches_brute_force() {
        // In U every (−2)-vector (a, b) has ab = −1, hence pairs to 0 with (1, 1).
        let u = Lattice::from_int_gram(&[vec![0, 1], vec![1, 0]]).unwrap();
        let got = enumerate_separating(&u, &LatVec::from_ints(&[1, 1]), &LatVec::from_ints(&[2, 1]), &rat_int(-2)).unwrap();
        assert_eq!(got, brute_separating(&u, &[1, 1], &[2, 1], -2, 10));
        assert!(got.is_empty());
    }

    #[test]
    fn separating_in_rank_three_matches_brute_force() {
        let l = Lattice::from_int_gram(&[vec![2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]]).unwrap();
        let (h, h2) = ([1, 0, 0], [3, 2, 2]);
        let got = enumerate_separating(&l, &LatVec::from_ints(&h), &LatVec::from_ints(&h2), &rat_int(-2)).unwrap();
        let want = brute_separating(&l, &h, &h2, -2, 10);
        assert_eq!(got, want);
        assert!(got.contains(&LatVec::from_ints(&[1, 1, 1])));
        assert!(!is_nef_class(&l, &LatVec::from_ints(&h), &LatVec::from_ints(&h2)).unwrap());
    }

    #[test]
    fn separating_with_equal_classes_is_empty() {
        let u = Lattice::from_int_gram(&[vec![0, 1], vec![1, 0]]).unwrap();
        let h = LatVec::from_ints(&[1, 1]);
        assert!(enumerate_separating(&u, &h, &h, &rat_int(-2)).unwrap().is_empty());
    }

    #[test]
    fn dual_lattice_enumeration_with_inequality() {
        // A₁ ⊕ ⟨−4⟩ ⊕ ⟨2⟩ dual: vectors with ⟨h,x⟩ = 1/2, ⟨x,x⟩ ≥ −2.
        let l = Lattice::from_int_gram(&[vec![2, 0, 0], vec![0, -4, 0], vec![0, 0, -2]]).unwrap();
        let dual = l.dual();
        let h = vec![rat_int(1), rat_int(0), rat_int(0)];
        let got = enumerate_fixed_pairings(
            &dual,
            &[(h, crate::arith::rational::rat(1, 2))],
            &NormBound::AtLeast(rat_int(-2)),
        )
        .unwrap();
        // Dual Gram diag(1/2, −1/4, −1/2); x₀ = 1, y²/4 + z²/2 ≤ 5/2.
        let mut want = Vec::new();
        for y in -6..=6i64 {
            for z in -6..=6i64 {
                if 2 * y * y + 4 * z * z <= 20 {
                    want.push(vec![1, y, z]);
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }

    fn hyperbolic_gram() -> impl Strategy<Value = Vec<Vec<i64>>> {
        // diag(2a, −2b, −2c, ...) perturbed by small off-diagonal terms in the
        // negative block keeps the signature (1, n−1) for these ranges.
        (2usize..=4, 1i64..=3, proptest::collection::vec(2i64..=4, 3), proptest::collection::vec(-1i64..=1, 3))
            .prop_map(|(n, a, negs, offs)| {
                let mut g = vec![vec![0i64; n]; n];
                g[0][0] = 2 * a;
                for i in 1..n {
                    g[i][i] = -2 * negs[i - 1];
                }
                for i in 1..n.saturating_sub(1) {
                    g[i][i + 1] = offs[i - 1];
                    g[i + 1][i] = offs[i - 1];
                }
                g[0][1] = offs[2];
                g[1][0] = offs[2];
                g
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn fixed_pairing_agrees_with_brute_force(
            g in hyperbolic_gram(),
            a in 0i64..=4,
            b in -6i64..=2,
        ) {
            let l = Lattice::from_int_gram(&g).unwrap();
            prop_assume!(l.is_hyperbolic());
            let n = l.rank();
            let mut h = vec![0i64; n];
            h[0] = 1;
            let hr = ints_to_rats(&h);
            prop_assume!(l.pair(&hr, &hr).is_positive());
            let got = enumerate_fixed_pairings(&l, &[(hr, rat_int(a))], &NormBound::Equal(rat_int(b))).unwrap();
            let want = brute(&l, &[(h.clone(), a)], b, true, 6);
            // Agreement inside the box; anything outside still satisfies the conditions.
            let in_box: Vec<IntVec> = got.iter().filter(|x| x.iter().all(|c| c.abs() <= 6)).cloned().collect();
            prop_assert_eq!(in_box, want);
            for x in &got {
                prop_assert_eq!(l.pair_int(x, x), b);
                prop_assert_eq!(l.pair_int(&h, x), a);
            }
        }
    }
}
