//! Lattices with exact rational Gram matrices.
//!
//! Vectors are row vectors in the coordinates of the lattice basis; an
//! isometry `R` acts by `x ↦ x·R` and satisfies `R·G·Rᵀ = G`.

mod backtrack;
mod disc;
mod enumerate;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::{format_rational, parse_rational, rat_int};
use crate::arith::{QField, Rational};
use crate::error::{Error, Result};

pub use backtrack::{backtrack_stabilizer, close_group, BacktrackInput};
pub use disc::{
    discriminant_form, discriminant_form_with_generators, induced_disc_action, orthogonal_group_mod,
    DiscForm, DiscMatrix,
};
pub(crate) use disc::{disc_mat_mul, inverse_mod, isomorphisms_mod, negate_form};
pub use enumerate::{
    enumerate_fixed_pairing, enumerate_fixed_pairings, enumerate_separating, is_nef_class,
    NormBound,
};

/// Basis a coordinate vector refers to: the lattice basis or its dual basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisFlag {
    Primal,
    Dual,
}

/// A vector of `L ⊗ ℚ` in primal or dual coordinates; `x∨ = x·G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatVec {
    pub coords: Vec<Rational>,
    pub basis: BasisFlag,
}

impl LatVec {
    pub fn primal(coords: Vec<Rational>) -> Self {
        LatVec { coords, basis: BasisFlag::Primal }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::primal(coords.iter().map(|&c| rat_int(c)).collect())
    }

    /// Integer coordinates, if every coordinate is an integer that fits in `i64`.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
            .collect()
    }
}

/// Integral lattice vectors are handled as plain `i64` rows in hot loops.
pub type IntVec = Vec<i64>;

/// Integer matrix acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isometry {
    pub matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn identity(n: usize) -> Self {
        Isometry {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &[i64]) -> IntVec {
        let n = self.matrix.len();
        let mut out = vec![0i64; n];
        for (xi, row) in x.iter().zip(&self.matrix) {
            if *xi != 0 {
                for (o, r) in out.iter_mut().zip(row) {
                    *o += xi * r;
                }
            }
        }
        out
    }

    /// `self` followed by `other`: x ↦ (x·self)·other.
    pub fn then(&self, other: &Isometry) -> Isometry {
        Isometry { matrix: self.matrix.iter().map(|r| other.apply(r)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity(self.rank())
    }

    /// Inverse via exact rational inversion; `None` if not unimodular.
    pub fn inverse(&self) -> Option<Isometry> {
        let m: Matrix<Rational> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect();
        let inv = linalg::inverse(&QField, &m)?;
        let matrix = inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Isometry { matrix })
    }
}

/// Free ℤ-module with a nondegenerate symmetric rational Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Matrix<Rational>,
    int_gram: Option<Vec<Vec<i64>>>,
}

impl Lattice {
    pub fn new(gram: Matrix<Rational>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Input("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Input("Gram matrix is not symmetric".into()));
                }
            }
        }
        if n > 0 && linalg::det(&QField, &gram).is_zero() {
            return Err(Error::Input("Gram matrix is degenerate".into()));
        }
        let int_gram = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>();
        Ok(Lattice { gram, int_gram })
    }

    pub fn from_int_gram(gram: &[Vec<i64>]) -> Result<Self> {
        Self::new(gram.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn int_gram(&self) -> Option<&Vec<Vec<i64>>> {
        self.int_gram.as_ref()
    }

    pub fn det(&self) -> Rational {
        linalg::det(&QField, &self.gram)
    }

    pub fn is_integral(&self) -> bool {
        self.int_gram.is_some()
    }

    pub fn is_even(&self) -> bool {
        self.int_gram
            .as_ref()
            .is_some_and(|g| g.iter().enumerate().all(|(i, r)| r[i] % 2 == 0))
    }

    /// (positive, negative) inertia via an exact symmetric elimination.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.rank();
        let mut a = self.gram.clone();
        let (mut pos, mut neg) = (0, 0);
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(&first) = active.first() {
            // Pick a nonzero diagonal pivot, or create one from an off-diagonal pair.
            let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
            let p = match piv {
                Some(p) => p,
                None => {
                    let Some(j) = active.iter().copied().find(|&j| !a[first][j].is_zero()) else {
                        // Degenerate direction; cannot occur for a nondegenerate form.
                        active.retain(|&x| x != first);
                        continue;
                    };
                    // e_first ← e_first + e_j gives a[first][first] = 2·a[first][j] ≠ 0.
                    for k in 0..n {
                        let v = &a[first][k] + &a[j][k];
                        a[first][k] = v;
                    }
                    for k in 0..n {
                        let v = &a[k][first] + &a[k][j];
                        a[k][first] = v;
                    }
                    first
                }
            };
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&x| x != p);
            for &i in &active {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &d;
                for &k in &active {
                    let v = &a[i][k] - &f * &a[p][k];
                    a[i][k] = v;
                }
            }
        }
        (pos, neg)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature() == (1, self.rank() - 1)
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    s += xi * &self.gram[i][j] * yj;
                }
            }
        }
        s
    }

    /// Pairing of integer vectors; panics for non-integral lattices.
    pub fn pair_int(&self, x: &[i64], y: &[i64]) -> i64 {
        let g = self.int_gram.as_ref().expect("pair_int on a non-integral lattice");
        let mut s = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &g[i];
            let mut t = 0i64;
            for (j, &yj) in y.iter().enumerate() {
                t += row[j] * yj;
            }
            s += xi * t;
        }
        s
    }

    /// Pairing of two [`LatVec`]s, converting dual coordinates as needed.
    pub fn pair_vec(&self, x: &LatVec, y: &LatVec) -> Result<Rational> {
        let x = self.to_primal(x)?;
        let y = self.to_primal(y)?;
        Ok(self.pair(&x.coords, &y.coords))
    }

    pub fn to_primal(&self, v: &LatVec) -> Result<LatVec> {
        match v.basis {
            BasisFlag::Primal => Ok(v.clone()),
            BasisFlag::Dual => {
                let inv = self.gram_inverse();
                Ok(LatVec::primal(row_times(&v.coords, &inv)))
            }
        }
    }

    pub fn to_dual(&self, v: &LatVec) -> LatVec {
        match v.basis {
            BasisFlag::Dual => v.clone(),
            BasisFlag::Primal => LatVec {
                coords: row_times(&v.coords, &self.gram),
                basis: BasisFlag::Dual,
            },
        }
    }

    pub fn gram_inverse(&self) -> Matrix<Rational> {
        linalg::inverse(&QField, &self.gram).expect("nondegenerate Gram matrix")
    }

    /// The dual lattice `L∨` in the dual basis, with Gram matrix `G⁻¹`.
    pub fn dual(&self) -> Lattice {
        Lattice::new(self.gram_inverse()).expect("inverse of a nondegenerate form")
    }

    /// Checks `R·G·Rᵀ = G`.
    pub fn is_isometry(&self, r: &Isometry) -> bool {
        let n = self.rank();
        if r.rank() != n || r.matrix.iter().any(|row| row.len() != n) {
            return false;
        }
        let rows: Vec<Vec<Rational>> =
            r.matrix.iter().map(|row| row.iter().map(|&x| rat_int(x)).collect()).collect();
        (0..n).all(|i| (0..=i).all(|j| self.pair(&rows[i], &rows[j]) == self.gram[i][j]))
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let gram = j
            .gram
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(gram)
    }
}

/// JSON form of a lattice: Gram entries as `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub gram: Vec<Vec<String>>,
}

/// JSON form of a vector list.
pub fn vectors_to_json(vs: &[LatVec]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.coords.iter().map(format_rational).collect()).collect()
}

pub fn vectors_from_json(rows: &[Vec<String>]) -> Result<Vec<LatVec>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()
                .map(LatVec::primal)
        })
        .collect()
}

pub(crate) fn row_times(x: &[Rational], m: &Matrix<Rational>) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (xi, row) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *o += xi * r;
            }
        }
    }
    out
}

pub(crate) fn ints_to_rats(x: &[i64]) -> Vec<Rational> {
    x.iter().map(|&c| rat_int(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_of_small_forms() {
        let u = Lattice::from_int_gram(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.signature(), (1, 1));
        let d = Lattice::from_int_gram(&[vec![2, 0, 0], vec![0, -2, 0], vec![0, 0, -4]]).unwrap();
        assert_eq!(d.signature(), (1, 2));
        assert!(d.is_hyperbolic());
        assert!(Lattice::from_int_gram(&[vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::new(vec![
            vec![crate::arith::rational::rat(1, 2), rat_int(0)],
            vec![rat_int(0), rat_int(-3)],
        ])
        .unwrap();
        let j = serde_json::to_string(&l.to_json()).unwrap();
        assert!(j.contains("\"1/2\""));
        let back = Lattice::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn isometry_composition_and_inverse() {
        let l = Lattice::from_int_gram(&[vec![0, 1], vec![1, 0]]).unwrap();
        let swap = Isometry { matrix: vec![vec![0, 1], vec![1, 0]] };
        let neg = Isometry { matrix: vec![vec![-1, 0], vec![0, -1]] };
        assert!(l.is_isometry(&swap) && l.is_isometry(&neg));
        assert!(!l.is_isometry(&Isometry { matrix: vec![vec![1, 1], vec![0, 1]] }));
        assert!(swap.then(&swap).is_identity());
        assert_eq!(swap.then(&neg).inverse().unwrap(), neg.then(&swap));
    }
}
