//! Reductions of the 56-line quartic modulo primes of `ℤ[ζ]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{buchberger, buchberger_tracked, bad_primes_intersected, has_pure_powers, reduced_basis, TrackedSummary};
use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::rat_int;
use crate::arith::residue::{reduce_cyc, reduce_projective, split_prime, valuation};
use crate::arith::{CycField, CycNum, FFElem, Field, PrimeOfZZeta, Rational, ResidueField};
use crate::error::{internal, Error, Result};
use crate::fermat::{line_intersection_number, FermatModel, ProjLine};
use crate::lattice::{enumerate_fixed_pairings, LatVec, NormBound};
use crate::poly::{monomials_of_degree, MPoly, MonomialOrdering, OrderKind};
use crate::quartic::{cyc, data, common_intersecting_lines, CommonLines, CycPoly, X56Model};

pub type KPoly = MPoly<FFElem>;

/// Orderings for the tracked smoothness runs: degrevlex and lex in the
/// natural variable order, then permuted variants.
pub const SMOOTHNESS_ORDERINGS: [(OrderKind, [usize; 4]); 6] = [
    (OrderKind::DegRevLex, [0, 1, 2, 3]),
    (OrderKind::Lex, [0, 1, 2, 3]),
    (OrderKind::Lex, [2, 0, 3, 1]),
    (OrderKind::DegRevLex, [2, 0, 3, 1]),
    (OrderKind::DegRevLex, [1, 0, 2, 3]),
    (OrderKind::Lex, [1, 0, 2, 3]),
];

/// Primes whose reductions are audited line by line.
pub const SAMPLE_PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Singular points are searched exhaustively in `ℙ³(κ_P)` up to this field size.
const POINT_SEARCH_MAX_Q: u64 = 49;

/// Number of leading orderings used when a shorter certificate suffices.
pub const DEFAULT_SMOOTHNESS_RUNS: usize = 3;

pub fn smoothness_orderings() -> Vec<MonomialOrdering> {
    SMOOTHNESS_ORDERINGS
        .iter()
        .map(|(k, p)| MonomialOrdering::new(*k, p).expect("valid permutation"))
        .collect()
}

/// `ψ` followed by its four partial derivatives.
pub fn jacobian_generators<F: Field>(f: &F, psi: &MPoly<F::Elem>) -> Vec<MPoly<F::Elem>> {
    std::iter::once(psi.clone()).chain((0..4).map(|i| psi.derivative(f, i))).collect()
}

/// `p` restricted to the affine chart `y_i = 1`.
pub fn dehomogenize<F: Field>(f: &F, p: &MPoly<F::Elem>, i: usize) -> MPoly<F::Elem> {
    let o = p.order();
    let subs: Vec<MPoly<F::Elem>> =
        (0..4).map(|k| if k == i { MPoly::constant(f, o, f.one()) } else { MPoly::var(f, o, k) }).collect();
    p.substitute(f, &subs)
}

pub fn reduce_poly(p: &CycPoly, prime: &PrimeOfZZeta) -> Result<KPoly> {
    p.try_map_coeffs(&prime.residue_field(), |c| reduce_cyc(c, prime))
}

/// The prime over 3 at which `A` vanishes, and the other one.
pub fn primes_over_three() -> Result<(PrimeOfZZeta, PrimeOfZZeta)> {
    let a = cyc(&data::PSI_A);
    let three = split_prime(3)?;
    let (zero, other): (Vec<_>, Vec<_>) =
        three.into_iter().partition(|pr| reduce_cyc(&a, pr).map(|x| x == FFElem::constant(0)).unwrap_or(false));
    match (zero.as_slice(), other.as_slice()) {
        ([z], [o]) => Ok((z.clone(), o.clone())),
        _ => Err(internal!("expected exactly one prime over 3 with A ≡ 0")),
    }
}

/// `y₁³y₂ + y₁y₂³ + y₃³y₄ + y₃y₄³` over a residue field.
pub fn hermitian_quartic(field: &ResidueField, order: MonomialOrdering) -> KPoly {
    let v = |i| MPoly::var(field, order, i);
    let t = |a: usize, b: usize| v(a).pow(field, 3).mul(field, &v(b)).add(field, &v(a).mul(field, &v(b).pow(field, 3)));
    t(0, 1).add(field, &t(2, 3))
}

/// Coordinates of each entry in the basis `1, u, …` of `κ_P`.
pub fn point_coords(field: &ResidueField, p: &[FFElem]) -> Vec<Vec<u64>> {
    p.iter().map(|x| x.coords[..field.degree()].to_vec()).collect()
}

/// Hash of the reduced Gröbner basis as rendered text.
fn certificate_hash(field: &ResidueField, basis: &[KPoly]) -> String {
    let mut h = Sha256::new();
    for g in basis {
        h.update(g.render(field, &["y1", "y2", "y3", "y4"]).as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Normalized points of `ℙ³(κ)`: first nonzero coordinate equal to 1.
pub fn projective_points(field: &ResidueField) -> Vec<Vec<FFElem>> {
    let els = field.elements();
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        let total = (els.len() as u64).pow(free as u32);
        for mut k in 0..total {
            let mut p = vec![field.zero(); 4];
            p[lead] = field.one();
            for slot in p.iter_mut().skip(lead + 1) {
                *slot = els[(k % els.len() as u64) as usize];
                k /= els.len() as u64;
            }
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessCheck {
    pub prime: String,
    pub p: u64,
    pub residue_field_order: u64,
    /// Monic factor of `t⁴ + 1` defining `κ_P`, constant term first.
    pub local_factor: Vec<u64>,
    pub smooth: bool,
    /// Singular points over `κ_P`, when the field was small enough to search.
    pub singular_points: Vec<Vec<Vec<u64>>>,
    pub points_searched: bool,
    pub gb_certificate_hash: String,
    pub reduced_basis_size: usize,
}

/// Smoothness of `ψ mod P` by a direct degrevlex Gröbner basis over `κ_P`.
pub fn smoothness_at(psi: &CycPoly, prime: &PrimeOfZZeta) -> Result<SmoothnessCheck> {
    let field = prime.residue_field();
    let order = MonomialOrdering::degrevlex(4);
    let psi_p = reduce_poly(psi, prime)?.with_order(order);
    let gens = jacobian_generators(&field, &psi_p);
    let run = buchberger(&field, &gens, order);
    let red = reduced_basis(&field, &run.basis);
    let smooth = has_pure_powers(&red, 4);
    let q = field.order();
    let mut singular_points = Vec::new();
    let points_searched = !smooth && q <= POINT_SEARCH_MAX_Q;
    if points_searched {
        for pt in projective_points(&field) {
            if gens.iter().all(|g| field.is_zero(&g.eval(&field, &pt))) {
                singular_points.push(point_coords(&field, &pt));
            }
        }
        if singular_points.is_empty() {
            return Err(internal!("singular reduction at {} without κ_P-rational singular points", prime.label()));
        }
    }
    Ok(SmoothnessCheck {
        prime: prime.label(),
        p: prime.p,
        residue_field_order: q,
        local_factor: prime.local_factor.clone(),
        smooth,
        singular_points,
        points_searched,
        gb_certificate_hash: certificate_hash(&field, &red),
        reduced_basis_size: red.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessCertificate {
    /// Runs over `ℚ(ζ)`; each leading-term ideal contains a pure power of every variable.
    pub runs: Vec<TrackedSummary>,
    pub generic_smooth: bool,
    /// `S = P(gcds(C̃₁, …, C̃_N))`.
    pub bad_prime_bound: Vec<u64>,
    /// Direct checks at every prime over `p ∈ S`.
    pub per_prime: Vec<SmoothnessCheck>,
}

impl SmoothnessCertificate {
    /// Primes of `ℤ[ζ]` where the reduction is singular.
    pub fn singular_primes(&self) -> Vec<&SmoothnessCheck> {
        self.per_prime.iter().filter(|c| !c.smooth).collect()
    }
}

/// Tracked Buchberger runs on the Jacobian ideal, the bad-prime bound `S`
/// from the gcds of their `C̃` sets, and direct audits at primes over `S`.
/// More orderings can only shrink `S`.
pub fn reduction_smoothness(psi: &CycPoly, orders: &[MonomialOrdering]) -> Result<SmoothnessCertificate> {
    let gens = jacobian_generators(&CycField, psi);
    let runs = orders
        .par_iter()
        .map(|o| buchberger_tracked(&gens, *o))
        .collect::<Result<Vec<_>>>()?;
    let generic_smooth = runs.iter().all(|r| has_pure_powers(&r.basis, 4));
    if !generic_smooth {
        return Err(Error::Precondition("the generic fiber is not smooth".into()));
    }
    let ledgers: Vec<BTreeSet<BigInt>> = runs.iter().map(|r| r.c_tilde.clone()).collect();
    let bound = bad_primes_intersected(&ledgers)?;
    let primes: Vec<PrimeOfZZeta> =
        bound.iter().map(|&p| split_prime(p)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    let per_prime = primes.par_iter().map(|pr| smoothness_at(psi, pr)).collect::<Result<Vec<_>>>()?;
    Ok(SmoothnessCertificate {
        runs: runs.iter().map(|r| r.summary()).collect(),
        generic_smooth,
        bad_prime_bound: bound.into_iter().collect(),
        per_prime,
    })
}

/// `π`: a uniformizer at the prime.
fn uniformizer(prime: &PrimeOfZZeta) -> CycNum {
    if prime.ramification > 1 {
        &CycNum::one() - &CycNum::zeta()
    } else {
        CycNum::from_int(prime.p as i64)
    }
}

/// Rescale a nonzero vector by a power of `π` so its minimal valuation is 0.
fn make_primitive(v: &[CycNum], prime: &PrimeOfZZeta) -> Result<Vec<CycNum>> {
    let m = v
        .iter()
        .filter_map(|x| valuation(x, prime))
        .min()
        .ok_or_else(|| Error::Input("zero vector".into()))?;
    let pi = uniformizer(prime);
    let s = if m >= 0 { pi.inv().unwrap().pow(m as u32) } else { pi.pow((-m) as u32) };
    Ok(v.iter().map(|x| x * &s).collect())
}

/// Reduction of a line at `P`: row operations over `R_P` on its equations
/// until the reduced rows have rank 2, then echelon form over `κ_P`.
pub fn reduce_line(l: &ProjLine<CycNum>, prime: &PrimeOfZZeta) -> Result<ProjLine<FFElem>> {
    let field = prime.residue_field();
    let r1 = make_primitive(&l.echelon()[0], prime)?;
    let mut r2 = make_primitive(&l.echelon()[1], prime)?;
    let red = |r: &[CycNum]| r.iter().map(|x| reduce_cyc(x, prime)).collect::<Result<Vec<_>>>();
    for _ in 0..64 {
        let (a, b) = (red(&r1)?, red(&r2)?);
        if linalg::rank(&field, &vec![a.clone(), b.clone()]) == 2 {
            return ProjLine::from_equations(&field, &vec![a, b]);
        }
        // r̄₂ is a multiple of r̄₁; clear a unit entry of r₁ from r₂.
        let j = a.iter().position(|x| !field.is_zero(x)).expect("primitive row");
        let c = &r2[j] * &r1[j].inv().unwrap();
        let next: Vec<CycNum> = r2.iter().zip(&r1).map(|(x, y)| x - &(&c * y)).collect();
        r2 = make_primitive(&next, prime)?;
    }
    Err(internal!("line reduction did not terminate"))
}

/// The same reduction read off the primitive Plücker vector.
pub fn reduce_line_pluecker(l: &ProjLine<CycNum>, prime: &PrimeOfZZeta) -> Result<ProjLine<FFElem>> {
    let field = prime.residue_field();
    let p = reduce_projective(l.pluecker(), prime)?.ok_or_else(|| internal!("zero Plücker vector"))?;
    ProjLine::from_pluecker(&field, &p)
}

/// Reduction at the prime over 3 where `A ≡ 0`; entries may carry `1/3`.
pub fn char3_line_reduction(l: &ProjLine<CycNum>) -> Result<ProjLine<FFElem>> {
    let (p3, _) = primes_over_three()?;
    reduce_line(l, &p3)
}

/// Does `ψ` vanish on the line? Checked by substituting a parametrization.
pub fn vanishes_on_line<F: Field>(f: &F, psi: &MPoly<F::Elem>, l: &ProjLine<F::Elem>) -> bool {
    let o = MonomialOrdering::degrevlex(2);
    let (s, t) = (MPoly::var(f, o, 0), MPoly::var(f, o, 1));
    let subs: Vec<MPoly<F::Elem>> = (0..4)
        .map(|i| s.scale(f, &l.points()[0][i]).add(f, &t.scale(f, &l.points()[1][i])))
        .collect();
    psi.substitute(f, &subs).is_zero()
}

/// The vectors `r′ ∈ S_X∨` with `⟨r′,h₅₆⟩ = 1`, `⟨r′,r′⟩ ≥ −2` and
/// `⟨r′,[λ]⟩ ∈ {0,1}` for every line class, with their neighbor sets.
#[derive(Clone, Debug)]
pub struct DualCandidates {
    /// `r′` in rational coordinates of the basis of `S_X`.
    pub vectors: Vec<Vec<Rational>>,
    /// `Λ(r′)`: indices of lines with `⟨[λ], r′⟩ = 1`.
    pub neighbors: Vec<Vec<usize>>,
}

pub fn dual_line_candidates(model: &FermatModel, x56: &X56Model) -> Result<DualCandidates> {
    let dual = model.lattice.dual();
    let h = model.lattice.to_dual(&LatVec::from_ints(&x56.h56));
    // In dual coordinates y, ⟨y, λ⟩ = y·λ for λ ∈ S_X.
    let ys = enumerate_fixed_pairings(&dual, &[(h.coords.clone(), rat_int(1))], &NormBound::AtLeast(rat_int(-2)))?;
    let ginv = model.lattice.gram_inverse();
    let mut vectors = Vec::new();
    let mut neighbors = Vec::new();
    for y in ys {
        let pairings: Vec<i64> =
            x56.f56.iter().map(|c| c.iter().zip(&y).map(|(a, b)| a * b).sum()).collect();
        if pairings.iter().all(|&v| v == 0 || v == 1) {
            let r: Vec<Rational> = (0..ginv.len())
                .map(|j| y.iter().enumerate().map(|(i, &yi)| rat_int(yi) * &ginv[i][j]).sum())
                .collect();
            vectors.push(r);
            neighbors.push(pairings.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect());
        }
    }
    Ok(DualCandidates { vectors, neighbors })
}

#[derive(Clone, Debug, Serialize)]
pub struct LinesAudit {
    pub prime: String,
    pub reduced_lines_distinct: bool,
    pub reduced_lines_on_surface: bool,
    pub intersections_preserved: bool,
    /// Both reduction routes give the same line for every line.
    pub reduction_routes_agree: bool,
    pub cubics_independent: bool,
    /// Per `r′`: number of common intersecting lines of `Λ(r′) ⊗ κ_P`
    /// over the algebraic closure, `None` for infinitely many.
    pub common_line_counts: Vec<Option<usize>>,
    /// Common intersecting lines over `κ_P` lying on the surface (Plücker coordinates).
    pub extra_line_witnesses: Vec<Vec<Vec<u64>>>,
    /// 56 plus the distinct extra lines found on the surface.
    pub line_count: usize,
}

impl LinesAudit {
    /// All checks for a prime over `p > 3`.
    pub fn is_clean(&self) -> bool {
        self.reduced_lines_distinct
            && self.reduced_lines_on_surface
            && self.intersections_preserved
            && self.reduction_routes_agree
            && self.cubics_independent
            && self.common_line_counts.iter().all(|c| *c == Some(0))
            && self.line_count == 56
    }
}

/// Rank of the coefficient matrix of the cubics reduced at `P`.
fn cubics_rank(fs: &[CycPoly], prime: &PrimeOfZZeta) -> Result<usize> {
    let field = prime.residue_field();
    let o = MonomialOrdering::lex(4);
    let monos = monomials_of_degree(4, 3, &o);
    let rows: Matrix<FFElem> = fs
        .iter()
        .map(|p| {
            let q = reduce_poly(p, prime)?.with_order(o);
            Ok(monos.iter().map(|m| q.coeff(&field, m)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(linalg::rank(&field, &rows))
}

/// Reduce the 56 lines at `P` and look for further lines through the
/// common intersecting lines of each `Λ(r′)`.
pub fn reduction_lines_audit(x56: &X56Model, dual: &DualCandidates, prime: &PrimeOfZZeta) -> Result<LinesAudit> {
    let field = prime.residue_field();
    let psi_p = reduce_poly(&x56.psi, prime)?;
    let reduced = x56.lines.iter().map(|l| reduce_line(&l.line, prime)).collect::<Result<Vec<_>>>()?;
    let via_pluecker = x56.lines.iter().map(|l| reduce_line_pluecker(&l.line, prime)).collect::<Result<Vec<_>>>()?;
    let reduction_routes_agree = reduced == via_pluecker;
    let n = reduced.len();
    let distinct: BTreeSet<Vec<FFElem>> = reduced.iter().map(|l| l.echelon().concat()).collect();
    let on_surface = reduced.iter().all(|l| vanishes_on_line(&field, &psi_p, l));
    let geo = x56.geometric_intersections();
    let intersections_preserved =
        (0..n).all(|i| (0..n).all(|j| line_intersection_number(&field, &reduced[i], &reduced[j]) == geo[i][j]));

    let mut counts = Vec::new();
    let mut extra: Vec<ProjLine<FFElem>> = Vec::new();
    for nb in &dual.neighbors {
        let ms: Vec<ProjLine<FFElem>> = nb.iter().map(|&i| reduced[i].clone()).collect();
        let res = common_intersecting_lines(&field, &ms)?;
        counts.push(res.count_over_closure());
        if let CommonLines::Finite(ls) = res {
            for l in ls {
                if vanishes_on_line(&field, &psi_p, &l) && !reduced.contains(&l) && !extra.contains(&l) {
                    extra.push(l);
                }
            }
        }
    }
    Ok(LinesAudit {
        prime: prime.label(),
        reduced_lines_distinct: distinct.len() == n,
        reduced_lines_on_surface: on_surface,
        intersections_preserved,
        reduction_routes_agree,
        cubics_independent: cubics_rank(&x56.fs, prime)? == 4,
        common_line_counts: counts,
        extra_line_witnesses: extra.iter().map(|l| point_coords(&field, l.pluecker())).collect(),
        line_count: n + extra.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    Singular,
    Smooth,
    LinesOk,
    ExtraLines,
}

/// Everything checked at one prime.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub prime: String,
    pub p: u64,
    pub residue_field: String,
    pub local_factor: Vec<u64>,
    pub status: ReductionStatus,
    pub smooth: bool,
    /// `ψ mod P` is the Hermitian quartic `y₁³y₂ + y₁y₂³ + y₃³y₄ + y₃y₄³`.
    pub hermitian: bool,
    pub singular_points: Vec<Vec<Vec<u64>>>,
    pub line_count: Option<usize>,
    pub extra_line_witnesses: Vec<Vec<Vec<u64>>>,
    pub gb_certificate_hash: String,
    /// Rank of the form `Q_P` from the smoothness argument; not determined here.
    pub q_p_rank: Option<u8>,
    pub lines: Option<LinesAudit>,
}

/// Smoothness and, when smooth, the line audit at one prime.
pub fn audit_prime(x56: &X56Model, dual: &DualCandidates, prime: &PrimeOfZZeta) -> Result<ReductionReport> {
    let smooth = smoothness_at(&x56.psi, prime)?;
    let lines = if smooth.smooth && prime.p != 2 { Some(reduction_lines_audit(x56, dual, prime)?) } else { None };
    let status = match &lines {
        None if smooth.smooth => ReductionStatus::Smooth,
        None => ReductionStatus::Singular,
        Some(a) if a.line_count == 56 && a.common_line_counts.iter().all(|c| *c == Some(0)) => ReductionStatus::LinesOk,
        Some(_) => ReductionStatus::ExtraLines,
    };
    Ok(ReductionReport {
        prime: prime.label(),
        p: prime.p,
        residue_field: format!("F_{}", smooth.residue_field_order),
        local_factor: prime.local_factor.clone(),
        status,
        hermitian: reduce_poly(&x56.psi, prime)? == hermitian_quartic(&prime.residue_field(), x56.psi.order()),
        smooth: smooth.smooth,
        singular_points: smooth.singular_points,
        line_count: lines.as_ref().map(|a| a.line_count),
        extra_line_witnesses: lines.as_ref().map(|a| a.extra_line_witnesses.clone()).unwrap_or_default(),
        gb_certificate_hash: smooth.gb_certificate_hash,
        q_p_rank: None,
        lines,
    })
}

/// Audits at every prime over the given rational primes, in parallel.
pub fn audit_primes(x56: &X56Model, dual: &DualCandidates, ps: &[u64]) -> Result<Vec<ReductionReport>> {
    let primes: Vec<PrimeOfZZeta> =
        ps.iter().map(|&p| split_prime(p)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    primes.par_iter().map(|pr| audit_prime(x56, dual, pr)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::reference_psi;

    #[test]
    fn point_count_of_projective_space() {
        let f = ResidueField::prime_field(3);
        assert_eq!(projective_points(&f).len(), 40);
    }

    #[test]
    fn psi_reductions_at_two_and_three() {
        let psi = reference_psi();
        let (p3, p3b) = primes_over_three().unwrap();
        let f9 = p3.residue_field();
        let herm = hermitian_quartic(&f9, psi.order());
        assert_eq!(reduce_poly(&psi, &p3).unwrap(), herm);
        assert!(smoothness_at(&psi, &p3).unwrap().smooth);

        // (1 : 0 : √−1 : 0) is singular at P₂ and P′₃.
        let p2 = split_prime(2).unwrap().remove(0);
        for pr in [p2, p3b] {
            let c = smoothness_at(&psi, &pr).unwrap();
            assert!(!c.smooth);
            let field = pr.residue_field();
            let i = field.sqrt(&field.from_i64(-1)).unwrap();
            let want = point_coords(&field, &[field.one(), field.zero(), i, field.zero()]);
            let want_conj = point_coords(&field, &[field.one(), field.zero(), field.neg(&i), field.zero()]);
            assert!(c.singular_points.contains(&want) || c.singular_points.contains(&want_conj), "{}", pr.label());
        }
    }

    #[test]
    fn line_reduction_routes_agree_on_a_denominator() {
        // Equations (3, 1, 0, 0) and (1/3)(0, 0, 3, 1) + (1, 0, 0, 0): rows whose
        // reductions at a prime over 3 need rescaling.
        let f = CycField;
        let r = |v: [i64; 4], d: i64| v.iter().map(|&x| CycNum::from_rational(&crate::arith::rational::rat(x, d))).collect::<Vec<_>>();
        let l = ProjLine::from_equations(&f, &vec![r([3, 1, 0, 0], 1), r([3, 0, 3, 1], 3)]).unwrap();
        for pr in split_prime(3).unwrap().into_iter().chain(split_prime(5).unwrap()) {
            assert_eq!(reduce_line(&l, &pr).unwrap(), reduce_line_pluecker(&l, &pr).unwrap());
        }
    }
}
