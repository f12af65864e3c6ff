//! Lines in ℙ³ over an exact field.

use crate::arith::linalg::{self, Matrix};
use crate::arith::Field;
use crate::error::{Error, Result};

/// A line in ℙ³: the row-reduced echelon form of two defining linear
/// equations, with primal Plücker coordinates of its point span cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine<E> {
    echelon: Matrix<E>,
    points: Matrix<E>,
    pluecker: Vec<E>,
}

/// Index pairs `(i, j)` of the Plücker coordinates `p_ij`, in storage order.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn pluecker_of_points<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    PLUECKER_PAIRS
        .iter()
        .map(|&(i, j)| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i])))
        .collect()
}

/// Bilinear form whose vanishing means the two lines meet:
/// `p01q23 − p02q13 + p03q12 + p12q03 − p13q02 + p23q01`.
pub fn pluecker_pairing<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> F::Elem {
    let t = |a: usize, b: usize| f.mul(&p[a], &q[b]);
    let mut s = f.add(&t(0, 5), &t(5, 0));
    s = f.sub(&s, &t(1, 4));
    s = f.sub(&s, &t(4, 1));
    s = f.add(&s, &t(2, 3));
    f.add(&s, &t(3, 2))
}

/// The Plücker quadric `p01p23 − p02p13 + p03p12`; its polar form is
/// [`pluecker_pairing`], which stays meaningful in characteristic 2.
pub fn pluecker_quadric<F: Field>(f: &F, p: &[F::Elem]) -> F::Elem {
    let a = f.mul(&p[0], &p[5]);
    let b = f.mul(&p[1], &p[4]);
    let c = f.mul(&p[2], &p[3]);
    f.add(&f.sub(&a, &b), &c)
}

/// Normalize a nonzero projective vector so its first nonzero entry is 1.
pub fn normalize_point<F: Field>(f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|x| !f.is_zero(x))?;
    let inv = f.inv(lead)?;
    Some(v.iter().map(|x| f.mul(x, &inv)).collect())
}

impl<E: Clone + PartialEq> ProjLine<E> {
    /// The line cut out by the rows of `eqs` (a 2×4 or taller matrix of rank 2).
    pub fn from_equations<F: Field<Elem = E>>(f: &F, eqs: &Matrix<E>) -> Result<Self> {
        if eqs.iter().any(|r| r.len() != 4) {
            return Err(Error::Input("line equations need 4 coefficients".into()));
        }
        let mut m = eqs.clone();
        let piv = linalg::rref(f, &mut m);
        if piv.len() != 2 {
            return Err(Error::Dimension { what: "line equations rank".into(), expected: 2, found: piv.len() });
        }
        m.truncate(2);
        let pts = linalg::kernel(f, &m, 4);
        let pts = echelon_rows(f, &pts);
        let pluecker = pluecker_of_points(f, &pts[0], &pts[1]);
        Ok(ProjLine { echelon: m, points: pts, pluecker })
    }

    /// The line through two distinct points.
    pub fn through_points<F: Field<Elem = E>>(f: &F, a: &[E], b: &[E]) -> Result<Self> {
        let m = vec![a.to_vec(), b.to_vec()];
        if linalg::rank(f, &m) != 2 {
            return Err(Error::Input("points do not span a line".into()));
        }
        let eqs = linalg::kernel(f, &m, 4);
        Self::from_equations(f, &eqs)
    }

    /// The line with primal Plücker vector `p` (must lie on the Plücker quadric).
    pub fn from_pluecker<F: Field<Elem = E>>(f: &F, p: &[E]) -> Result<Self> {
        if !f.is_zero(&pluecker_quadric(f, p)) {
            return Err(Error::Input("vector is not on the Plücker quadric".into()));
        }
        // The antisymmetric matrix (p_ij) has the line's points as its rows.
        let mut m = vec![vec![f.zero(); 4]; 4];
        for (k, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
            m[i][j] = p[k].clone();
            m[j][i] = f.neg(&p[k]);
        }
        let pts = echelon_rows(f, &m);
        if pts.len() != 2 {
            return Err(Error::Input("Plücker vector does not define a line".into()));
        }
        Self::through_points(f, &pts[0], &pts[1])
    }

    pub fn echelon(&self) -> &Matrix<E> {
        &self.echelon
    }

    /// Canonical basis of the points on the line (reduced echelon rows).
    pub fn points(&self) -> &Matrix<E> {
        &self.points
    }

    pub fn pluecker(&self) -> &[E] {
        &self.pluecker
    }

    /// The point `s·P₀ + t·P₁`.
    pub fn point_at<F: Field<Elem = E>>(&self, f: &F, s: &E, t: &E) -> Vec<E> {
        (0..4)
            .map(|i| f.add(&f.mul(s, &self.points[0][i]), &f.mul(t, &self.points[1][i])))
            .collect()
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, f: &F, p: &[E]) -> bool {
        self.echelon.iter().all(|r| f.is_zero(&linalg::dot(f, r, p)))
    }

    /// Rank of the stacked 4×4 equation matrix: 2 equal, 3 coplanar, 4 skew.
    pub fn stacked_rank<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> usize {
        let m: Matrix<E> = self.echelon.iter().chain(&other.echelon).cloned().collect();
        linalg::rank(f, &m)
    }

    pub fn meets<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        f.is_zero(&pluecker_pairing(f, &self.pluecker, &other.pluecker))
    }

    /// The common point of two distinct coplanar lines.
    pub fn meet_point<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Option<Vec<E>> {
        if self.stacked_rank(f, other) != 3 {
            return None;
        }
        let m: Matrix<E> = self.echelon.iter().chain(&other.echelon).cloned().collect();
        let k = linalg::kernel(f, &m, 4);
        normalize_point(f, &k[0])
    }

    /// Image of the line under the point map `x ↦ M·x` (`M` invertible).
    pub fn transform<F: Field<Elem = E>>(&self, f: &F, m: &Matrix<E>) -> Result<Self> {
        let a = linalg::mat_vec(f, m, &self.points[0]);
        let b = linalg::mat_vec(f, m, &self.points[1]);
        Self::through_points(f, &a, &b)
    }

    /// Apply a coefficientwise map (e.g. a field automorphism or a
    /// reduction) to the defining equations.
    pub fn map_equations<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> Result<ProjLine<G::Elem>> {
        let eqs: Matrix<G::Elem> = self.echelon.iter().map(|r| r.iter().map(&phi).collect()).collect();
        ProjLine::from_equations(g, &eqs)
    }
}

/// Intersection number of two lines on a smooth surface:
/// `−2` if equal, `1` if distinct and coplanar, `0` if skew.
pub fn line_intersection_number<F: Field>(f: &F, a: &ProjLine<F::Elem>, b: &ProjLine<F::Elem>) -> i64 {
    match a.stacked_rank(f, b) {
        2 => -2,
        3 => 1,
        _ => 0,
    }
}

fn echelon_rows<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut m = m.clone();
    let r = linalg::rref(f, &mut m);
    m.truncate(r.len());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::residue::ResidueField;

    #[test]
    fn lines_over_small_prime_field() {
        let f = ResidueField::prime_field(7);
        let e = |x: i64| f.from_i64(x);
        // x₀ = x₁ = 0 and x₂ = x₃ = 0 are skew; x₀ = x₂ = 0 meets the first.
        let l1 = ProjLine::from_equations(&f, &vec![vec![e(1), e(0), e(0), e(0)], vec![e(0), e(1), e(0), e(0)]]).unwrap();
        let l2 = ProjLine::from_equations(&f, &vec![vec![e(0), e(0), e(1), e(0)], vec![e(0), e(0), e(0), e(1)]]).unwrap();
        let l3 = ProjLine::from_equations(&f, &vec![vec![e(1), e(0), e(0), e(0)], vec![e(0), e(0), e(1), e(0)]]).unwrap();
        assert_eq!(line_intersection_number(&f, &l1, &l1), -2);
        assert_eq!(line_intersection_number(&f, &l1, &l2), 0);
        assert_eq!(line_intersection_number(&f, &l1, &l3), 1);
        assert!(!l1.meets(&f, &l2));
        assert!(l1.meets(&f, &l3));
        assert_eq!(l1.meet_point(&f, &l3).unwrap(), vec![e(0), e(0), e(0), e(1)]);
        let back = ProjLine::from_pluecker(&f, l3.pluecker()).unwrap();
        assert_eq!(back, l3);
        // Plücker relation holds for every line.
        for l in [&l1, &l2, &l3] {
            assert!(f.is_zero(&pluecker_quadric(&f, l.pluecker())));
        }
    }

    #[test]
    fn echelon_form_is_canonical() {
        let f = ResidueField::prime_field(11);
        let e = |x: i64| f.from_i64(x);
        let a = ProjLine::from_equations(&f, &vec![vec![e(1), e(2), e(3), e(4)], vec![e(0), e(1), e(1), e(1)]]).unwrap();
        let b = ProjLine::from_equations(&f, &vec![vec![e(2), e(5), e(7), e(9)], vec![e(1), e(3), e(4), e(5)]]).unwrap();
        assert_eq!(a, b);
        let p = a.point_at(&f, &e(3), &e(5));
        assert!(a.contains_point(&f, &p));
    }
}
