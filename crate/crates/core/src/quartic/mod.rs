//! The 56-line quartic: cubics through six lines of the Fermat quartic, the
//! derived quartic equation `Ψ`, its 56 lines and its automorphisms.

pub mod data;
mod incidence;

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub use incidence::{common_intersecting_lines, CommonLines};

use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::rat_int;
use crate::arith::{CycField, CycNum, Field};
use crate::error::{internal, Error, Result};
pub use crate::fermat::normalize_matrix as normalize_matrix_pub;
use crate::fermat::{normalize_matrix, FermatModel, LineTag, PeriodData, ProjLine};
use crate::lattice::{backtrack_stabilizer, enumerate_fixed_pairing, BacktrackInput, IntVec, Isometry, LatVec};
use crate::poly::{monomials_of_degree, reduce, MPoly, Monomial, MonomialOrdering};

pub type CycPoly = MPoly<CycNum>;

/// Lex `x₁ > x₂ > x₃ > x₄`, used for the reduction modulo the Fermat polynomial.
pub fn x_order() -> MonomialOrdering {
    MonomialOrdering::lex(4)
}

pub fn cyc(c: &data::CycInts) -> CycNum {
    CycNum::from_ints(*c)
}

/// `x₁⁴ + x₂⁴ + x₃⁴ + x₄⁴`.
pub fn fermat_polynomial() -> CycPoly {
    let f = CycField;
    let terms = (0..4).map(|i| (Monomial::var(i).mul(&Monomial::var(i)).mul(&Monomial::var(i)).mul(&Monomial::var(i)), f.one())).collect();
    MPoly::from_terms(&f, x_order(), terms)
}

pub fn reference_cubics() -> Vec<CycPoly> {
    let f = CycField;
    data::REFERENCE_CUBICS
        .iter()
        .map(|terms| {
            MPoly::from_terms(&f, x_order(), terms.iter().map(|(e, c)| (Monomial::from_exps(e), cyc(c))).collect())
        })
        .collect()
}

/// `y₁³y₂ + y₁y₂³ + y₃³y₄ + y₃y₄³ + (y₁y₄ + y₂y₃)(A(y₁y₃ + y₂y₄) + B(y₁y₂ − y₃y₄))`.
pub fn reference_psi() -> CycPoly {
    let f = CycField;
    let o = x_order();
    let y = |i: usize| MPoly::var(&f, o, i);
    let (a, b) = (cyc(&data::PSI_A), cyc(&data::PSI_B));
    let cubic_part = y(0)
        .pow(&f, 3)
        .mul(&f, &y(1))
        .add(&f, &y(0).mul(&f, &y(1).pow(&f, 3)))
        .add(&f, &y(2).pow(&f, 3).mul(&f, &y(3)))
        .add(&f, &y(2).mul(&f, &y(3).pow(&f, 3)));
    let l = y(0).mul(&f, &y(3)).add(&f, &y(1).mul(&f, &y(2)));
    let ra = y(0).mul(&f, &y(2)).add(&f, &y(1).mul(&f, &y(3))).scale(&f, &a);
    let rb = y(0).mul(&f, &y(1)).sub(&f, &y(2).mul(&f, &y(3))).scale(&f, &b);
    cubic_part.add(&f, &l.mul(&f, &ra.add(&f, &rb)))
}

/// Space of forms of one degree vanishing on a set of lines.
#[derive(Clone, Debug)]
pub struct LinSys {
    pub degree: u16,
    pub lines: Vec<ProjLine<CycNum>>,
    pub basis: Vec<CycPoly>,
    /// Coefficient matrix of the vanishing conditions; columns follow `monomials`.
    conditions: Matrix<CycNum>,
    monomials: Vec<Monomial>,
}

impl LinSys {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Does the form vanish on every line of the system?
    pub fn contains(&self, p: &CycPoly) -> bool {
        let f = CycField;
        if p.terms().iter().any(|(m, _)| m.degree() != self.degree as u32) {
            return false;
        }
        let v: Vec<CycNum> = self.monomials.iter().map(|m| p.coeff(&f, m)).collect();
        self.conditions.iter().all(|row| f.is_zero(&linalg::dot(&f, row, &v)))
    }

    /// Coordinates of `p` in the basis, if it belongs to the system.
    pub fn coordinates(&self, p: &CycPoly) -> Option<Vec<CycNum>> {
        if !self.contains(p) {
            return None;
        }
        let f = CycField;
        let rows: Matrix<CycNum> =
            self.basis.iter().map(|b| self.monomials.iter().map(|m| b.coeff(&f, m)).collect()).collect();
        let target: Vec<CycNum> = self.monomials.iter().map(|m| p.coeff(&f, m)).collect();
        linalg::solve_left(&f, &rows, &target)
    }
}

/// Coefficients `c_k` of `s^(d−k) t^k` in `m(s·P₀ + t·P₁)`.
fn restrict_monomial(m: &Monomial, p0: &[CycNum], p1: &[CycNum], d: usize) -> Vec<CycNum> {
    let f = CycField;
    // Product of linear binary forms (p0[i]·s + p1[i]·t) over the variables of m.
    let mut acc = vec![f.one()];
    for i in 0..4 {
        for _ in 0..m.exp(i) {
            let mut next = vec![f.zero(); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                next[k] = f.add(&next[k], &f.mul(a, &p0[i]));
                next[k + 1] = f.add(&next[k + 1], &f.mul(a, &p1[i]));
            }
            acc = next;
        }
    }
    debug_assert_eq!(acc.len(), d + 1);
    acc
}

/// Forms of degree `d` vanishing identically on every line.
pub fn forms_through_lines(lines: &[ProjLine<CycNum>], d: u16) -> LinSys {
    let f = CycField;
    let monomials = monomials_of_degree(4, d, &x_order());
    let mut conditions: Matrix<CycNum> = Vec::new();
    for l in lines {
        let (p0, p1) = (&l.points()[0], &l.points()[1]);
        let cols: Vec<Vec<CycNum>> = monomials.iter().map(|m| restrict_monomial(m, p0, p1, d as usize)).collect();
        for k in 0..=d as usize {
            conditions.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    let kernel = linalg::kernel(&f, &conditions, monomials.len());
    let basis = kernel
        .iter()
        .map(|v| MPoly::from_terms(&f, x_order(), monomials.iter().cloned().zip(v.iter().cloned()).collect()))
        .collect();
    LinSys { degree: d, lines: lines.to_vec(), basis, conditions, monomials }
}

/// Cubics through six lines; the space must have dimension 4.
pub fn cubics_through_lines(lines: &[ProjLine<CycNum>]) -> Result<LinSys> {
    if lines.len() != 6 {
        return Err(Error::Input("expected six lines".into()));
    }
    let sys = forms_through_lines(lines, 3);
    if sys.dimension() != 4 {
        return Err(Error::Dimension { what: "cubics through six lines".into(), expected: 4, found: sys.dimension() });
    }
    Ok(sys)
}

/// The six lines `ℓ₁, ℓ₂, m₁, …, m₄` of the seed configuration.
pub fn seed_lines() -> Result<Vec<ProjLine<CycNum>>> {
    crate::polarization::SEED_CONFIG[..6]
        .iter()
        .map(|&(i, mu, nu)| LineTag::new(i, mu, nu).map(crate::fermat::line_from_tag))
        .collect()
}

/// `ρ`: remainder modulo the Fermat polynomial under lex, leaving `x₁`-degree ≤ 3.
pub fn rho(g: &CycPoly) -> CycPoly {
    reduce(&CycField, &g.with_order(x_order()), &[fermat_polynomial()])
}

#[derive(Clone, Debug)]
pub struct PsiDerivation {
    /// Rows (monomials of degree 12 with `x₁`-degree ≤ 3) and columns (quartic monomials in `y`).
    pub matrix_shape: (usize, usize),
    pub kernel_dimension: usize,
    /// Kernel generator normalized so the `y₁³y₂` coefficient is 1.
    pub psi: CycPoly,
}

/// Solves for the quartic relation among four cubics on the Fermat quartic.
pub fn derive_psi(fs: &[CycPoly]) -> Result<PsiDerivation> {
    let f = CycField;
    if fs.len() != 4 {
        return Err(Error::Input("need four cubics".into()));
    }
    let ys = monomials_of_degree(4, 4, &x_order());
    let rows: Vec<Monomial> = monomials_of_degree(4, 12, &x_order()).into_iter().filter(|m| m.exp(0) <= 3).collect();
    let row_index: HashMap<Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let images: Vec<CycPoly> = ys.par_iter().map(|m| rho(&MPoly::from_terms(&f, x_order(), vec![(*m, f.one())]).substitute(&f, fs))).collect();
    let mut mat = vec![vec![f.zero(); ys.len()]; rows.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            let i = *row_index.get(m).ok_or_else(|| internal!("ρ left a term of x₁-degree ≥ 4"))?;
            mat[i][j] = c.clone();
        }
    }
    let kernel = linalg::kernel(&f, &mat, ys.len());
    if kernel.len() != 1 {
        return Err(Error::Dimension { what: "quartic relations".into(), expected: 1, found: kernel.len() });
    }
    let lead = Monomial::from_exps(&[3, 1, 0, 0]);
    let k = ys.iter().position(|m| *m == lead).unwrap();
    let scale = f.inv(&kernel[0][k]).ok_or_else(|| internal!("y₁³y₂ coefficient vanishes"))?;
    let psi = MPoly::from_terms(&f, x_order(), ys.iter().zip(&kernel[0]).map(|(m, c)| (*m, f.mul(c, &scale))).collect());
    Ok(PsiDerivation { matrix_shape: (rows.len(), ys.len()), kernel_dimension: kernel.len(), psi })
}

/// `Φ₅₆(x) = (f₁(x) : … : f₄(x))`.
pub fn phi56(fs: &[CycPoly], x: &[CycNum]) -> Vec<CycNum> {
    fs.iter().map(|p| p.eval(&CycField, x)).collect()
}

/// Does `Ψ` vanish identically on the line?
pub fn line_on_surface(psi: &CycPoly, l: &ProjLine<CycNum>) -> bool {
    let f = CycField;
    // A binary quartic vanishing at five points of ℙ¹ is zero.
    (0..5).all(|k| {
        let p = l.point_at(&f, &CycNum::one(), &CycNum::from_int(k));
        f.is_zero(&psi.eval(&f, &p))
    })
}

/// Are all entries in `ℤ[ζ, 1/3]`?
pub fn entries_in_z_zeta_third(l: &ProjLine<CycNum>) -> bool {
    l.echelon().iter().flatten().all(|x| {
        let mut d = x.denominator().clone();
        let three = BigInt::from(3);
        while (&d % &three).is_zero() {
            d /= &three;
        }
        d.is_one()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineSource {
    /// Image under `Φ₅₆` of the Fermat line with this index.
    FermatImage(usize),
    /// Unique common intersecting line of these already known lines.
    CommonIntersection(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct X56Line {
    pub class: IntVec,
    pub line: ProjLine<CycNum>,
    pub source: LineSource,
}

#[derive(Clone, Debug)]
pub struct X56Model {
    pub fs: Vec<CycPoly>,
    pub psi: CycPoly,
    pub h56: IntVec,
    /// Sorted classes `r` with `⟨r,r⟩ = −2`, `⟨r,h₅₆⟩ = 1`.
    pub f56: Vec<IntVec>,
    /// Lines in the order of `f56`.
    pub lines: Vec<X56Line>,
}

pub fn line_classes(model: &FermatModel, h: &[i64]) -> Result<Vec<IntVec>> {
    enumerate_fixed_pairing(&model.lattice, &LatVec::from_ints(h), &rat_int(1), &rat_int(-2))?
        .iter()
        .map(|v| v.to_ints().ok_or_else(|| internal!("non-integral line class")))
        .collect()
}

/// Coefficients of the binary form `F(s·P₀ + t·P₁)` for a polynomial `F`.
fn restrict_poly(p: &CycPoly, l: &ProjLine<CycNum>) -> Vec<CycNum> {
    let f = CycField;
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut acc = vec![f.zero(); d + 1];
    for (m, c) in p.terms() {
        let r = restrict_monomial(m, &l.points()[0], &l.points()[1], d);
        for (a, x) in acc.iter_mut().zip(r) {
            *a = f.add(a, &f.mul(c, &x));
        }
    }
    acc
}

/// Exact quotient of a binary form by `a·s + b·t`.
fn divide_binary(c: &[CycNum], a: &CycNum, b: &CycNum) -> Option<Vec<CycNum>> {
    let f = CycField;
    let d = c.len() - 1;
    if d == 0 {
        return None;
    }
    let mut q = Vec::with_capacity(d);
    if !a.is_zero() {
        let a_inv = f.inv(a).unwrap();
        for k in 0..d {
            let prev = if k == 0 { f.zero() } else { f.mul(b, &q[k - 1]) };
            q.push(f.mul(&f.sub(&c[k], &prev), &a_inv));
        }
        (c[d] == f.mul(b, &q[d - 1])).then_some(q)
    } else {
        if !c[0].is_zero() {
            return None;
        }
        let b_inv = f.inv(b).unwrap();
        Some(c[1..].iter().map(|x| f.mul(x, &b_inv)).collect())
    }
}

/// `Φ₅₆` at the point `(s₀ : t₀)` of a line not contained in the base
/// locus, after removing the common factor vanishing there.
fn phi56_limit(fs: &[CycPoly], l: &ProjLine<CycNum>, s0: &CycNum, t0: &CycNum) -> Option<Vec<CycNum>> {
    let f = CycField;
    let mut forms: Vec<Vec<CycNum>> = fs.iter().map(|p| restrict_poly(p, l)).collect();
    if forms.iter().all(|c| c.iter().all(|x| x.is_zero())) {
        return None;
    }
    // L = t₀·s − s₀·t vanishes at the point.
    let (a, b) = (t0.clone(), f.neg(s0));
    loop {
        let eval = |c: &[CycNum]| {
            let d = c.len() - 1;
            c.iter().enumerate().fold(f.zero(), |acc, (k, x)| {
                f.add(&acc, &f.mul(x, &f.mul(&f.pow(s0, (d - k) as u64), &f.pow(t0, k as u64))))
            })
        };
        let vals: Vec<CycNum> = forms.iter().map(|c| eval(c)).collect();
        if vals.iter().any(|v| !v.is_zero()) {
            return Some(vals);
        }
        forms = forms.iter().map(|c| divide_binary(c, &a, &b)).collect::<Option<_>>()?;
    }
}

fn fit_line(pts: &[Vec<CycNum>]) -> Result<ProjLine<CycNum>> {
    let f = CycField;
    if pts.len() < 4 || linalg::rank(&f, &pts.to_vec()) != 2 || linalg::rank(&f, &pts[..3].to_vec()) != 2 {
        return Err(internal!("image points do not determine a line"));
    }
    let second = pts[1..].iter().find(|p| linalg::rank(&f, &vec![pts[0].clone(), (*p).clone()]) == 2).unwrap();
    let img = ProjLine::through_points(&f, &pts[0], second)?;
    if !pts.iter().all(|p| img.contains_point(&f, p)) {
        return Err(internal!("image point off the fitted line"));
    }
    Ok(img)
}

/// Image of a Fermat line under `Φ₅₆`. Points are taken on the line itself
/// when the cubics do not all vanish there; otherwise the image of each
/// point where another Fermat line crosses is computed along that line.
fn image_line(model: &FermatModel, fs: &[CycPoly], idx: usize) -> Result<ProjLine<CycNum>> {
    let f = CycField;
    let l = &model.lines[idx];
    let mut pts: Vec<Vec<CycNum>> = Vec::new();
    if restrict_poly_nonzero(fs, l) {
        for k in 0..40i64 {
            let (s, t) = if k == 0 { (CycNum::zero(), CycNum::one()) } else { (CycNum::one(), CycNum::from_int(k - 1)) };
            if let Some(img) = phi56_limit(fs, l, &s, &t) {
                pts.push(img);
            }
            if pts.len() == 4 {
                break;
            }
        }
    } else {
        for (j, other) in model.lines.iter().enumerate() {
            if model.intersections[idx][j] != 1 || !restrict_poly_nonzero(fs, other) {
                continue;
            }
            let q = l.meet_point(&f, other).ok_or_else(|| internal!("crossing lines without a common point"))?;
            // Parameter of q on `other`: q = s·P₀ + t·P₁.
            let basis = other.points();
            let st = linalg::solve_left(&f, basis, &q).ok_or_else(|| internal!("point not on line"))?;
            if let Some(img) = phi56_limit(fs, other, &st[0], &st[1]) {
                if !pts.iter().any(|p| linalg::rank(&f, &vec![p.clone(), img.clone()]) == 1) {
                    pts.push(img);
                }
            }
        }
    }
    fit_line(&pts)
}

fn restrict_poly_nonzero(fs: &[CycPoly], l: &ProjLine<CycNum>) -> bool {
    fs.iter().any(|p| restrict_poly(p, l).iter().any(|x| !x.is_zero()))
}

/// The 56 lines: images of the shared Fermat lines, then the rest as unique
/// common intersecting lines, picking at each step the unknown class with
/// the most known neighbours.
pub fn lines_on_x56(model: &FermatModel, fs: &[CycPoly], psi: &CycPoly, h56: &[i64]) -> Result<X56Model> {
    let f = CycField;
    let f56 = line_classes(model, h56)?;
    let mut known: Vec<Option<X56Line>> = f56
        .par_iter()
        .map(|c| -> Result<Option<X56Line>> {
            match model.class_index(c) {
                Some(i) => {
                    let line = image_line(model, fs, i)?;
                    Ok(Some(X56Line { class: c.clone(), line, source: LineSource::FermatImage(i) }))
                }
                None => Ok(None),
            }
        })
        .collect::<Result<_>>()?;
    loop {
        let unknown: Vec<usize> = (0..f56.len()).filter(|&i| known[i].is_none()).collect();
        if unknown.is_empty() {
            break;
        }
        let neighbours = |i: usize| -> Vec<usize> {
            (0..f56.len()).filter(|&j| known[j].is_some() && model.pair(&f56[i], &f56[j]) == 1).collect()
        };
        let &next = unknown
            .iter()
            .max_by_key(|&&i| (neighbours(i).len(), std::cmp::Reverse(i)))
            .expect("nonempty");
        let nb = neighbours(next);
        let ms: Vec<ProjLine<CycNum>> = nb.iter().map(|&j| known[j].as_ref().unwrap().line.clone()).collect();
        let line = match common_intersecting_lines(&f, &ms)? {
            CommonLines::Finite(mut ls) if ls.len() == 1 => ls.pop().unwrap(),
            other => {
                return Err(Error::NotUnique(format!(
                    "class {:?} with {} known neighbours: {:?} common lines",
                    f56[next],
                    nb.len(),
                    other.count_over_closure()
                )))
            }
        };
        known[next] = Some(X56Line { class: f56[next].clone(), line, source: LineSource::CommonIntersection(nb) });
    }
    let lines: Vec<X56Line> = known.into_iter().map(|l| l.unwrap()).collect();
    let distinct: HashSet<&ProjLine<CycNum>> = lines.iter().map(|l| &l.line).collect();
    if distinct.len() != lines.len() {
        return Err(internal!("two classes produced the same line"));
    }
    if let Some(l) = lines.iter().find(|l| !line_on_surface(psi, &l.line)) {
        return Err(internal!("line for class {:?} is not on the surface", l.class));
    }
    Ok(X56Model { fs: fs.to_vec(), psi: psi.clone(), h56: h56.to_vec(), f56, lines })
}

impl X56Model {
    pub fn geometric_intersections(&self) -> Vec<Vec<i64>> {
        let f = CycField;
        let n = self.lines.len();
        (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| crate::fermat::line_intersection_number(&f, &self.lines[i].line, &self.lines[j].line)).collect())
            .collect()
    }

    pub fn line_index(&self, l: &ProjLine<CycNum>) -> Option<usize> {
        self.lines.iter().position(|x| x.line == *l)
    }

    /// Classes shared with the Fermat lines.
    pub fn shared_with_fermat(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.source, LineSource::FermatImage(_))).count()
    }
}

/// `y ↦ M·y` applied to a polynomial in `y`: `p(M·y)`.
pub fn compose_linear(p: &CycPoly, m: &Matrix<CycNum>) -> CycPoly {
    let f = CycField;
    let o = p.order();
    let subs: Vec<CycPoly> = m
        .iter()
        .map(|row| MPoly::from_terms(&f, o, row.iter().enumerate().map(|(j, c)| (Monomial::var(j), c.clone())).collect()))
        .collect();
    p.substitute(&f, &subs)
}

/// `c` with `p ∘ M = c·p`, if it exists.
pub fn preserves_up_to_scalar(p: &CycPoly, m: &Matrix<CycNum>) -> Option<CycNum> {
    let f = CycField;
    let q = compose_linear(p, m);
    let (lm, lc) = p.leading_term()?;
    let c = f.div(&q.coeff(&f, lm), lc);
    (q == p.scale(&f, &c) && !c.is_zero()).then_some(c)
}

/// Projective matrix `M` with `M·λᵢ = λ_{π(i)}` for all lines, unique up to scalar.
pub fn matrix_from_line_permutation(lines: &[ProjLine<CycNum>], perm: &[usize]) -> Result<Matrix<CycNum>> {
    let f = CycField;
    let mut rows: Matrix<CycNum> = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let target = &lines[perm[i]];
        for e in target.echelon() {
            for p in l.points() {
                // Σ_{a,b} e_a M_ab p_b
                rows.push((0..16).map(|k| f.mul(&e[k / 4], &p[k % 4])).collect());
            }
        }
    }
    let kernel = linalg::kernel(&f, &rows, 16);
    if kernel.len() != 1 {
        return Err(Error::Dimension { what: "projective matrix solutions".into(), expected: 1, found: kernel.len() });
    }
    let m: Matrix<CycNum> = (0..4).map(|a| kernel[0][4 * a..4 * a + 4].to_vec()).collect();
    Ok(normalize_matrix(&m))
}

/// Projective order (smallest `k` with `Mᵏ` scalar), up to `limit`.
pub fn projective_order(m: &Matrix<CycNum>, limit: usize) -> Option<usize> {
    let f = CycField;
    let id = linalg::identity(&f, 4);
    let mut acc = normalize_matrix(m);
    for k in 1..=limit {
        if acc == id {
            return Some(k);
        }
        acc = normalize_matrix(&linalg::mat_mul(&f, &acc, m));
    }
    None
}

/// Closure of projective matrices under multiplication.
pub fn close_projective(gens: &[Matrix<CycNum>]) -> Vec<Matrix<CycNum>> {
    let f = CycField;
    let id = linalg::identity(&f, 4);
    let gens: Vec<Matrix<CycNum>> = gens.iter().map(normalize_matrix).collect();
    let mut seen: HashSet<Matrix<CycNum>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = normalize_matrix(&linalg::mat_mul(&f, g, &m));
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|m| format!("{m:?}"));
    out
}

pub fn reference_gamma(g: &[[data::CycInts; 4]; 4]) -> Matrix<CycNum> {
    g.iter().map(|r| r.iter().map(cyc).collect()).collect()
}

pub fn reference_orbit_line(eqs: &[[data::CycInts; 4]; 2]) -> Result<ProjLine<CycNum>> {
    let m: Matrix<CycNum> = eqs.iter().map(|r| r.iter().map(cyc).collect()).collect();
    ProjLine::from_equations(&CycField, &m)
}

#[derive(Clone, Debug)]
pub struct AutX56 {
    /// The stabilizer of `h₅₆` in `O(S_X)`.
    pub stabilizer: Vec<Isometry>,
    /// Elements passing the period condition.
    pub isometries: Vec<Isometry>,
    /// Permutations of the 56 lines, aligned with `isometries`.
    pub perms: Vec<Vec<usize>>,
    /// Normalized projective matrices, aligned with `isometries`.
    pub matrices: Vec<Matrix<CycNum>>,
    /// Orbits on the 56 lines, sorted by size.
    pub orbits: Vec<Vec<usize>>,
}

/// Greedy choice of line classes forming a basis of `S_X ⊗ ℚ`.
pub fn spanning_subset(classes: &[IntVec]) -> Vec<usize> {
    let f = crate::arith::QField;
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Matrix<crate::arith::Rational> = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        rows.push(c.iter().map(|&x| rat_int(x)).collect());
        if linalg::rank(&f, &rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

pub fn aut_x56_group(model: &FermatModel, period: &PeriodData, x56: &X56Model) -> Result<AutX56> {
    let base = spanning_subset(&x56.f56);
    if base.len() != model.lattice.rank() {
        return Err(internal!("line classes do not span the lattice"));
    }
    let stabilizer = backtrack_stabilizer(&BacktrackInput {
        lattice: &model.lattice,
        classes: &x56.f56,
        base: &base,
        fixed: std::slice::from_ref(&x56.h56),
    })?;
    let mut isometries = Vec::new();
    for g in &stabilizer {
        if period.hodge_test(model, g)? {
            isometries.push(g.clone());
        }
    }
    let index: HashMap<&IntVec, usize> = x56.f56.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let perms: Vec<Vec<usize>> = isometries
        .iter()
        .map(|g| {
            x56.f56
                .iter()
                .map(|c| index.get(&g.apply(c)).copied().ok_or_else(|| internal!("isometry moves a line class off the set")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let lines: Vec<ProjLine<CycNum>> = x56.lines.iter().map(|l| l.line.clone()).collect();
    let matrices: Vec<Matrix<CycNum>> =
        perms.par_iter().map(|p| matrix_from_line_permutation(&lines, p)).collect::<Result<_>>()?;
    let mut orbit_of = vec![usize::MAX; lines.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..lines.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut orb: Vec<usize> = perms.iter().map(|p| p[start]).collect();
        orb.sort();
        orb.dedup();
        for &i in &orb {
            orbit_of[i] = orbits.len();
        }
        orbits.push(orb);
    }
    orbits.sort_by_key(|o| (o.len(), o[0]));
    Ok(AutX56 { stabilizer, isometries, perms, matrices, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_cubics_vanish_on_seed_lines() {
        let sys = cubics_through_lines(&seed_lines().unwrap()).unwrap();
        assert_eq!(sys.dimension(), 4);
        for p in reference_cubics() {
            assert!(sys.contains(&p));
            assert!(sys.coordinates(&p).is_some());
        }
        let f = CycField;
        let x1_cubed = MPoly::from_terms(&f, x_order(), vec![(Monomial::from_exps(&[3, 0, 0, 0]), f.one())]);
        assert!(!sys.contains(&x1_cubed));
    }

    #[test]
    fn psi_shape() {
        let psi = reference_psi();
        assert!(psi.is_homogeneous());
        assert_eq!(psi.total_degree(), Some(4));
        assert_eq!(psi.coeff(&CycField, &Monomial::from_exps(&[3, 1, 0, 0])), CycNum::one());
    }

    #[test]
    fn reference_gammas_preserve_psi() {
        let psi = reference_psi();
        for g in [&data::GAMMA1, &data::GAMMA2] {
            let m = reference_gamma(g);
            assert!(preserves_up_to_scalar(&psi, &m).is_some());
            assert_eq!(projective_order(&m, 10), Some(4));
        }
    }

    #[test]
    fn orbit_lines_lie_on_psi() {
        let psi = reference_psi();
        for (_, eqs) in &data::ORBIT_LINES {
            let l = reference_orbit_line(eqs).unwrap();
            assert!(line_on_surface(&psi, &l));
            assert!(entries_in_z_zeta_third(&l));
        }
    }
}
