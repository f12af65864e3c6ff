//! Lines meeting every member of a finite set of lines in ℙ³.

use crate::arith::linalg;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::fermat::{pluecker_pairing, pluecker_quadric, ProjLine};

/// Lines over the algebraic closure meeting all given lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonLines<E> {
    /// Finitely many, all defined over the base field.
    Finite(Vec<ProjLine<E>>),
    /// Two lines conjugate over a quadratic extension: the zeros of
    /// `a·s² + b·s·t + c·t²` on the pencil `s·u + t·v` of Plücker vectors.
    Conjugate { pencil: [Vec<E>; 2], quadratic: [E; 3] },
    /// A positive-dimensional family of the given dimension.
    Family { dimension: usize },
}

impl<E> CommonLines<E> {
    /// Number of common lines over the algebraic closure, `None` if infinite.
    pub fn count_over_closure(&self) -> Option<usize> {
        match self {
            CommonLines::Finite(v) => Some(v.len()),
            CommonLines::Conjugate { .. } => Some(2),
            CommonLines::Family { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count_over_closure() == Some(0)
    }
}

/// Incidence with `q` is the linear form `p ↦ ⟨p, q⟩` on Plücker vectors.
fn incidence_row<F: Field>(f: &F, q: &[F::Elem]) -> Vec<F::Elem> {
    vec![q[5].clone(), f.neg(&q[4]), q[3].clone(), q[2].clone(), f.neg(&q[1]), q[0].clone()]
}

/// Roots `(s : t)` of `a·s² + b·s·t + c·t²` over the field, or `None`
/// when they lie in a quadratic extension. Empty input form is excluded.
fn binary_quadratic_roots<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<Option<Vec<[F::Elem; 2]>>> {
    if f.is_zero(a) {
        // t·(b·s + c·t)
        let mut roots = vec![[f.one(), f.zero()]];
        if !f.is_zero(b) {
            roots.push([f.neg(c), b.clone()]);
        }
        return Ok(Some(roots));
    }
    let a_inv = f.inv(a).expect("nonzero");
    if f.characteristic() == 2 {
        if !f.is_zero(b) {
            return Err(Error::Unsupported("separable quadratics in characteristic 2".into()));
        }
        let r = f.sqrt(&f.mul(c, &a_inv)).ok_or_else(|| Error::Unsupported("square root in this field".into()))?;
        return Ok(Some(vec![[r, f.one()]]));
    }
    let four = f.from_i64(4);
    let disc = f.sub(&f.mul(b, b), &f.mul(&four, &f.mul(a, c)));
    let two_a_inv = f.inv(&f.mul(&f.from_i64(2), a)).expect("characteristic is not 2");
    if f.is_zero(&disc) {
        return Ok(Some(vec![[f.mul(&f.neg(b), &two_a_inv), f.one()]]));
    }
    match f.sqrt(&disc) {
        None => Ok(None),
        Some(r) => {
            let nb = f.neg(b);
            Ok(Some(vec![
                [f.mul(&f.add(&nb, &r), &two_a_inv), f.one()],
                [f.mul(&f.sub(&nb, &r), &two_a_inv), f.one()],
            ]))
        }
    }
}

/// All lines meeting each of `ms` (at least four lines).
pub fn common_intersecting_lines<F: Field>(f: &F, ms: &[ProjLine<F::Elem>]) -> Result<CommonLines<F::Elem>>
{
    if ms.len() < 4 {
        return Err(Error::Input("need at least four lines".into()));
    }
    let rows: Vec<Vec<F::Elem>> = ms.iter().map(|m| incidence_row(f, m.pluecker())).collect();
    let kernel = linalg::kernel(f, &rows, 6);
    let lines = match kernel.len() {
        0 => vec![],
        1 => {
            if f.is_zero(&pluecker_quadric(f, &kernel[0])) {
                vec![ProjLine::from_pluecker(f, &kernel[0])?]
            } else {
                vec![]
            }
        }
        2 => {
            let (u, v) = (&kernel[0], &kernel[1]);
            let a = pluecker_quadric(f, u);
            let b = pluecker_pairing(f, u, v);
            let c = pluecker_quadric(f, v);
            if f.is_zero(&a) && f.is_zero(&b) && f.is_zero(&c) {
                return Ok(CommonLines::Family { dimension: 1 });
            }
            match binary_quadratic_roots(f, &a, &b, &c)? {
                None => {
                    return Ok(CommonLines::Conjugate { pencil: [u.clone(), v.clone()], quadratic: [a, b, c] })
                }
                Some(roots) => roots
                    .iter()
                    .map(|[s, t]| {
                        let p: Vec<F::Elem> =
                            u.iter().zip(v).map(|(x, y)| f.add(&f.mul(s, x), &f.mul(t, y))).collect();
                        ProjLine::from_pluecker(f, &p)
                    })
                    .collect::<Result<Vec<_>>>()?,
            }
        }
        k => return Ok(CommonLines::Family { dimension: k - 2 }),
    };
    Ok(CommonLines::Finite(lines))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::residue::ResidueField;
    use crate::arith::{QField, Rational};
    use crate::arith::rational::rat_int;

    fn line_q(a: [i64; 4], b: [i64; 4]) -> ProjLine<Rational> {
        let r = |v: [i64; 4]| v.iter().map(|&x| rat_int(x)).collect::<Vec<_>>();
        ProjLine::through_points(&QField, &r(a), &r(b)).unwrap()
    }

    #[test]
    fn four_general_lines_have_two_transversals() {
        let f = QField;
        // Lines on the quadric x₀x₃ = x₁x₂ from one ruling; transversals form the
        // other ruling, so four of them have infinitely many common lines.
        let ruling = |a: i64, b: i64| line_q([a, 0, b, 0], [0, a, 0, b]);
        let ms: Vec<_> = [(1, 0), (0, 1), (1, 1), (1, 2)].iter().map(|&(a, b)| ruling(a, b)).collect();
        assert_eq!(common_intersecting_lines(&f, &ms).unwrap(), CommonLines::Family { dimension: 1 });

        let ms = vec![
            line_q([1, 0, 0, 0], [0, 1, 0, 0]),
            line_q([0, 0, 1, 0], [0, 0, 0, 1]),
            line_q([1, 0, 1, 0], [0, 1, 0, 1]),
            line_q([1, 0, 0, 1], [0, 1, 2, 0]),
        ];
        let res = common_intersecting_lines(&f, &ms).unwrap();
        let n = res.count_over_closure().unwrap();
        assert!(n <= 2);
        if let CommonLines::Finite(ls) = &res {
            for l in ls {
                assert!(ms.iter().all(|m| l.meets(&f, m)));
            }
        }
    }

    #[test]
    fn skew_pair_plus_missing_lines_has_none() {
        let f = QField;
        let l1 = line_q([1, 0, 0, 0], [0, 1, 0, 0]);
        let l2 = line_q([0, 0, 1, 0], [0, 0, 0, 1]);
        // Lines meeting l1 and l2 correspond to pairs of points; two more
        // general lines cut the family to at most two members, and a fifth
        // general line removes them.
        let ms = vec![
            l1,
            l2,
            line_q([1, 1, 1, 1], [1, 2, 3, 5]),
            line_q([1, -1, 2, 7], [3, 1, -4, 1]),
            line_q([2, 3, 5, 7], [11, -13, 17, 19]),
            line_q([1, 4, 9, 16], [1, 8, 27, 64]),
        ];
        assert!(common_intersecting_lines(&f, &ms).unwrap().is_empty());
    }

    #[test]
    fn plane_pencil_is_positive_dimensional() {
        // Four lines through (0:0:0:1) in the plane x₀ = 0.
        let f = ResidueField::prime_field(7);
        let e = |x: i64| f.from_i64(x);
        let p0 = vec![e(0), e(0), e(0), e(1)];
        let ms: Vec<ProjLine<_>> = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0], [0, 1, 3, 0]]
            .iter()
            .map(|q| ProjLine::through_points(&f, &p0, &q.iter().map(|&x| e(x)).collect::<Vec<_>>()).unwrap())
            .collect();
        let res = common_intersecting_lines(&f, &ms).unwrap();
        assert!(matches!(res, CommonLines::Family { .. }));
        // Brute force: every line through the point, or in the plane, meets all four.
        let through = ProjLine::through_points(&f, &p0, &[e(1), e(2), e(3), e(0)]).unwrap();
        let inside = ProjLine::through_points(&f, &[e(0), e(1), e(5), e(2)], &[e(0), e(3), e(0), e(1)]).unwrap();
        for l in [through, inside] {
            assert!(ms.iter().all(|m| l.meets(&f, m)));
        }
    }
}
