//! Discriminant groups `L∨/L` and their finite quadratic forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{ints_to_rats, row_times, Isometry, Lattice};
use crate::arith::intmat::{smith_normal_form, IntMatrix};
use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::rat_int;
use crate::arith::{QField, Rational};
use crate::error::{internal, Error, Result};

/// Matrix over `ℤ/m` acting on coordinate row vectors of the discriminant
/// group; entries in column `i` are reduced mod the order of generator `i`.
pub type DiscMatrix = Vec<Vec<i64>>;

/// Finite quadratic form on `disc(L)` with respect to chosen generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscForm {
    /// Lifts `sᵢ ∈ L∨` of the generators, in primal coordinates.
    pub generators: Vec<Vec<Rational>>,
    pub group_orders: Vec<u64>,
    /// `q(σᵢ) ∈ ℚ/2ℤ` on the diagonal, `b(σᵢ, σⱼ) ∈ ℚ/ℤ` off it, stored in
    /// `[0, 2)` and `[0, 1)`.
    pub value_matrix: Vec<Vec<Rational>>,
    /// `y ↦ y·coord_map` sends a dual vector in primal coordinates to its
    /// Smith coordinates (reduced mod `smith_orders`).
    coord_map: Matrix<Rational>,
    smith_orders: Vec<u64>,
    /// Smith coordinates to generator coordinates; `None` when the generators
    /// are the Smith generators themselves.
    to_gens: Option<Vec<Vec<i64>>>,
}

/// Reduce into `[0, m)`.
fn rat_mod(x: &Rational, m: i64) -> Rational {
    let m = rat_int(m);
    let q = (x / &m).floor();
    x - q * m
}

impl DiscForm {
    pub fn order(&self) -> u64 {
        self.group_orders.iter().product()
    }

    /// Smith coordinates of a dual vector given in primal coordinates.
    fn smith_coords(&self, y: &[Rational]) -> Result<Vec<i64>> {
        let u = row_times(y, &self.coord_map);
        u.iter()
            .zip(&self.smith_orders)
            .map(|(c, &d)| {
                if !c.is_integer() {
                    return Err(Error::Input("vector is not in the dual lattice".into()));
                }
                let v = c.to_integer().mod_floor(&BigInt::from(d));
                Ok(v.to_i64().unwrap())
            })
            .collect()
    }

    /// Coordinates of `y mod L` with respect to the generators.
    pub fn coords(&self, y: &[Rational]) -> Result<Vec<i64>> {
        let s = self.smith_coords(y)?;
        Ok(match &self.to_gens {
            None => s,
            Some(t) => {
                let m = self.group_orders[0] as i64;
                (0..self.group_orders.len())
                    .map(|j| {
                        let v: i64 = s.iter().zip(t).map(|(si, row)| si * row[j]).sum();
                        v.rem_euclid(m)
                    })
                    .collect()
            }
        })
    }

    /// `q(Σ cᵢσᵢ) ∈ [0, 2)`.
    pub fn q_value(&self, c: &[i64]) -> Rational {
        let r = c.len();
        let mut s = Rational::zero();
        for i in 0..r {
            s += rat_int(c[i] * c[i]) * &self.value_matrix[i][i];
            for j in i + 1..r {
                s += rat_int(2 * c[i] * c[j]) * &self.value_matrix[i][j];
            }
        }
        rat_mod(&s, 2)
    }
}

fn smith_lifts(l: &Lattice) -> Result<(Vec<Vec<Rational>>, Vec<u64>, Matrix<Rational>)> {
    let g = l
        .int_gram()
        .ok_or_else(|| Error::Precondition("discriminant form needs an integral lattice".into()))?;
    if !l.is_even() {
        return Err(Error::Precondition("discriminant form needs an even lattice".into()));
    }
    let gb: IntMatrix = g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let snf = smith_normal_form(&gb);
    let diag = snf.diagonal();
    let ur: Matrix<Rational> = snf
        .u
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let u_inv = linalg::inverse(&QField, &ur).ok_or_else(|| internal!("Smith transform is singular"))?;
    let mut lifts = Vec::new();
    let mut orders = Vec::new();
    let mut cols = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::Precondition("lattice is degenerate".into()));
        }
        if d.is_one() {
            continue;
        }
        let dr = Rational::from_integer(d.clone());
        lifts.push(ur[i].iter().map(|x| x / &dr).collect::<Vec<_>>());
        orders.push(d.to_u64().ok_or_else(|| internal!("discriminant order too large"))?);
        cols.push((i, dr));
    }
    let n = l.rank();
    let coord_map: Matrix<Rational> = (0..n)
        .map(|r| cols.iter().map(|(i, d)| &u_inv[r][*i] * d).collect())
        .collect();
    Ok((lifts, orders, coord_map))
}

fn value_matrix(l: &Lattice, gens: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let r = gens.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = l.pair(&gens[i], &gens[j]);
                    rat_mod(&v, if i == j { 2 } else { 1 })
                })
                .collect()
        })
        .collect()
}

/// Discriminant form with Smith-normal-form generators.
pub fn discriminant_form(l: &Lattice) -> Result<DiscForm> {
    let (generators, orders, coord_map) = smith_lifts(l)?;
    let value_matrix = value_matrix(l, &generators);
    Ok(DiscForm {
        generators,
        group_orders: orders.clone(),
        value_matrix,
        coord_map,
        smith_orders: orders,
        to_gens: None,
    })
}

/// Discriminant form with respect to the classes of the given dual vectors
/// (primal coordinates). The group must be `(ℤ/m)ʳ` and the lifts must
/// generate it.
pub fn discriminant_form_with_generators(l: &Lattice, lifts: &[Vec<Rational>]) -> Result<DiscForm> {
    let base = discriminant_form(l)?;
    let r = base.group_orders.len();
    if lifts.len() != r {
        return Err(Error::Dimension {
            what: "discriminant generators".into(),
            expected: r,
            found: lifts.len(),
        });
    }
    let m = base.group_orders.first().copied().unwrap_or(1);
    if base.group_orders.iter().any(|&d| d != m) {
        return Err(Error::Precondition("custom generators need a homogeneous group (ℤ/m)ʳ".into()));
    }
    let rows: Vec<Vec<i64>> = lifts.iter().map(|s| base.smith_coords(s)).collect::<Result<_>>()?;
    let inv = inverse_mod(&rows, m as i64)
        .ok_or_else(|| Error::Input("the given vectors do not generate the discriminant group".into()))?;
    let value_matrix = value_matrix(l, lifts);
    Ok(DiscForm {
        generators: lifts.to_vec(),
        group_orders: base.group_orders.clone(),
        value_matrix,
        coord_map: base.coord_map,
        smith_orders: base.smith_orders,
        to_gens: Some(inv),
    })
}

/// Inverse of a square integer matrix mod `m`, if it exists.
pub(crate) fn inverse_mod(a: &[Vec<i64>], m: i64) -> Option<Vec<Vec<i64>>> {
    let ar: Matrix<Rational> = a.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect();
    let det = linalg::det(&QField, &ar);
    let det_i = det.to_integer();
    let det_m = det_i.mod_floor(&BigInt::from(m)).to_i64()?;
    let e = BigInt::from(det_m).extended_gcd(&BigInt::from(m));
    if !e.gcd.is_one() {
        return None;
    }
    let det_inv = e.x.mod_floor(&BigInt::from(m)).to_i64()?;
    let inv = linalg::inverse(&QField, &ar)?;
    // adj = det·A⁻¹ is integral.
    Some(
        inv.iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let adj = (x * Rational::from_integer(det_i.clone())).to_integer();
                        (adj.mod_floor(&BigInt::from(m)).to_i64().unwrap() * det_inv).rem_euclid(m)
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Matrix of the automorphism of `disc(L)` induced by `g ∈ O(L)`: row `j` is
/// the coordinate vector of `σⱼ·g`.
pub fn induced_disc_action(l: &Lattice, d: &DiscForm, g: &Isometry) -> Result<DiscMatrix> {
    if !l.is_isometry(g) {
        return Err(Error::NotIsometry("matrix does not preserve the Gram matrix".into()));
    }
    let gr: Matrix<Rational> = g.matrix.iter().map(|r| ints_to_rats(r)).collect();
    d.generators.iter().map(|s| d.coords(&row_times(s, &gr))).collect()
}

pub(crate) fn disc_mat_mul(a: &DiscMatrix, b: &DiscMatrix, m: i64) -> DiscMatrix {
    let r = a.len();
    (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum::<i64>().rem_euclid(m)).collect())
        .collect()
}

/// All automorphisms of the form `(ℤ/m)ʳ → ℚ/2ℤ` given by `value_matrix`,
/// by exhaustive search (intended for `mʳ²` small).
pub fn orthogonal_group_mod(value_matrix: &[Vec<Rational>], m: i64) -> Vec<DiscMatrix> {
    isomorphisms_mod(value_matrix, value_matrix, m)
}

/// All `φ` with `q_b(σᵢ·φ) = q_a(σᵢ)` and `b_b(σᵢφ, σⱼφ) = b_a(σᵢ, σⱼ)`.
pub(crate) fn isomorphisms_mod(qa: &[Vec<Rational>], qb: &[Vec<Rational>], m: i64) -> Vec<DiscMatrix> {
    let r = qa.len();
    let eval = |c: &[i64], i: &[i64], same: bool| -> Rational {
        // b(c, i) for the form qb, or q(c) when same.
        let mut s = Rational::zero();
        for a in 0..r {
            for b in 0..r {
                let coef = if same { c[a] * c[b] } else { c[a] * i[b] };
                if coef != 0 {
                    s += rat_int(coef) * &qb[a][b];
                }
            }
        }
        s
    };
    // Candidate images of each generator: vectors with the right q-value.
    let all: Vec<Vec<i64>> = (0..(m as usize).pow(r as u32))
        .map(|mut k| {
            (0..r)
                .map(|_| {
                    let v = (k % m as usize) as i64;
                    k /= m as usize;
                    v
                })
                .collect()
        })
        .collect();
    let cands: Vec<Vec<&Vec<i64>>> = (0..r)
        .map(|i| {
            all.iter()
                .filter(|c| rat_mod(&eval(c, c, true), 2) == rat_mod(&qa[i][i], 2))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<&Vec<i64>> = Vec::new();
    fn rec<'a>(
        i: usize,
        r: usize,
        m: i64,
        cands: &[Vec<&'a Vec<i64>>],
        cur: &mut Vec<&'a Vec<i64>>,
        qa: &[Vec<Rational>],
        eval: &dyn Fn(&[i64], &[i64], bool) -> Rational,
        out: &mut Vec<DiscMatrix>,
    ) {
        if i == r {
            let mat: DiscMatrix = cur.iter().map(|v| (*v).clone()).collect();
            if inverse_mod(&mat, m).is_some() {
                out.push(mat);
            }
            return;
        }
        for c in &cands[i] {
            let ok = (0..i).all(|j| rat_mod(&eval(c, cur[j], false), 1) == rat_mod(&qa[i][j], 1));
            if ok {
                cur.push(c);
                rec(i + 1, r, m, cands, cur, qa, eval, out);
                cur.pop();
            }
        }
    }
    rec(0, r, m, &cands, &mut cur, qa, &eval, &mut out);
    out.sort();
    out
}

pub(crate) fn negate_form(q: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    q.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| rat_mod(&-x, if i == j { 2 } else { 1 }))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn unimodular_lattice_has_trivial_group() {
        let u = Lattice::from_int_gram(&[vec![0, 1], vec![1, 0]]).unwrap();
        let d = discriminant_form(&u).unwrap();
        assert_eq!(d.order(), 1);
        assert!(d.generators.is_empty());
    }

    #[test]
    fn diagonal_eight_form() {
        let t = Lattice::from_int_gram(&[vec![8, 0], vec![0, 8]]).unwrap();
        let lifts = vec![vec![rat(1, 8), rat_int(0)], vec![rat_int(0), rat(1, 8)]];
        let d = discriminant_form_with_generators(&t, &lifts).unwrap();
        assert_eq!(d.group_orders, vec![8, 8]);
        assert_eq!(d.value_matrix, vec![vec![rat(1, 8), rat_int(0)], vec![rat_int(0), rat(1, 8)]]);
        assert_eq!(orthogonal_group_mod(&d.value_matrix, 8).len(), 16);
        let swap = Isometry { matrix: vec![vec![0, 1], vec![1, 0]] };
        assert_eq!(induced_disc_action(&t, &d, &swap).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn odd_lattice_is_rejected() {
        let l = Lattice::from_int_gram(&[vec![1]]).unwrap();
        assert!(discriminant_form(&l).is_err());
    }

    #[test]
    fn a1_plus_a1_values() {
        let l = Lattice::from_int_gram(&[vec![-2, 0], vec![0, -2]]).unwrap();
        let d = discriminant_form(&l).unwrap();
        assert_eq!(d.order(), 4);
        for i in 0..2 {
            assert_eq!(d.value_matrix[i][i], rat(3, 2));
        }
        assert_eq!(d.q_value(&[1, 1]), rat_int(1));
    }
}
