//! Buchberger's algorithm with leading-coefficient tracking, bad-prime bounds
//! and the reductions of the 56-line quartic modulo primes of `ℤ[ζ]`.

mod primes;
pub mod reduction;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{CycField, CycNum, Field};
use crate::error::{Error, Result};
use crate::poly::{reduce, s_polynomial, MPoly, Monomial, MonomialOrdering};

pub use primes::{bad_primes_intersected, factor_small, gcds, prime_divisors};

/// Output of a Buchberger run over an arbitrary field.
#[derive(Clone, Debug)]
pub struct GbRun<E> {
    /// Monic Gröbner basis: the inputs followed by every inserted remainder.
    pub basis: Vec<MPoly<E>>,
    /// Leading coefficient of every polynomial inserted into the basis,
    /// recorded before normalization; inputs first.
    pub inserted_lcs: Vec<E>,
    /// Number of S-pairs actually reduced.
    pub pairs_reduced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Normal selection: lowest lcm degree, then the smaller lcm in the active
/// order, then indices. Deterministic for a fixed input list.
fn pair_cmp(order: &MonomialOrdering, a: &Pair, b: &Pair) -> Ordering {
    a.lcm
        .degree()
        .cmp(&b.lcm.degree())
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

/// Buchberger's algorithm with the product and chain criteria.
///
/// Inputs are converted to `order`; zero inputs are dropped. Every basis
/// element is stored monic, its original leading coefficient is recorded.
pub fn buchberger<F: Field>(f: &F, gens: &[MPoly<F::Elem>], order: MonomialOrdering) -> GbRun<F::Elem> {
    let mut basis: Vec<MPoly<F::Elem>> = Vec::new();
    let mut lcs = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pairs_reduced = 0;

    let insert = |p: MPoly<F::Elem>,
                  basis: &mut Vec<MPoly<F::Elem>>,
                  lcs: &mut Vec<F::Elem>,
                  pairs: &mut Vec<Pair>| {
        lcs.push(p.lc().expect("nonzero").clone());
        let p = p.monic(f);
        let lm = p.lm().unwrap();
        let t = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair { lcm: g.lm().unwrap().lcm(&lm), i, j: t });
        }
        basis.push(p);
    };

    for g in gens {
        let g = g.with_order(order);
        if !g.is_zero() {
            insert(g, &mut basis, &mut lcs, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| pair_cmp(&order, a.1, b.1))
            .unwrap();
        let pair = pairs.swap_remove(k);
        done.insert((pair.i, pair.j));
        let (lm_i, lm_j) = (basis[pair.i].lm().unwrap(), basis[pair.j].lm().unwrap());
        if lm_i.is_coprime(&lm_j) {
            continue;
        }
        if chain_criterion(&basis, &pairs, &done, &pair) {
            continue;
        }
        pairs_reduced += 1;
        let s = s_polynomial(f, &basis[pair.i], &basis[pair.j]);
        let r = reduce(f, &s, &basis);
        if !r.is_zero() {
            insert(r, &mut basis, &mut lcs, &mut pairs);
        }
    }
    GbRun { basis, inserted_lcs: lcs, pairs_reduced }
}

/// The pair `(i, j)` is redundant if some `k` has `LM(k) | lcm(i, j)` and
/// both `(i, k)` and `(k, j)` have already been treated.
fn chain_criterion<E>(basis: &[MPoly<E>], pending: &[Pair], done: &BTreeSet<(usize, usize)>, p: &Pair) -> bool
where
    E: Clone + PartialEq,
{
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let is_pending = |a: usize, b: usize| {
        let (a, b) = key(a, b);
        pending.iter().any(|q| q.i == a && q.j == b)
    };
    (0..basis.len()).any(|k| {
        k != p.i
            && k != p.j
            && basis[k].lm().unwrap().divides(&p.lcm)
            && done.contains(&key(p.i, k))
            && done.contains(&key(k, p.j))
            && !is_pending(p.i, k)
            && !is_pending(k, p.j)
    })
}

/// Every S-polynomial of the basis reduces to zero.
pub fn is_groebner_basis<F: Field>(f: &F, basis: &[MPoly<F::Elem>]) -> bool {
    let nz: Vec<MPoly<F::Elem>> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    (0..nz.len()).all(|j| (0..j).all(|i| reduce(f, &s_polynomial(f, &nz[i], &nz[j]), &nz).is_zero()))
}

/// Minimal generators of the leading-term ideal, sorted in the basis order.
pub fn leading_monomials<E: Clone + PartialEq>(basis: &[MPoly<E>]) -> Vec<Monomial> {
    let lms: Vec<Monomial> = basis.iter().filter_map(|g| g.lm()).collect();
    let mut out: Vec<Monomial> = Vec::new();
    for (k, m) in lms.iter().enumerate() {
        let redundant = lms
            .iter()
            .enumerate()
            .any(|(l, d)| d.divides(m) && (d != m || l < k));
        if !redundant {
            out.push(*m);
        }
    }
    if let Some(g) = basis.iter().find(|g| !g.is_zero()) {
        let o = g.order();
        out.sort_by(|a, b| o.cmp(b, a));
    }
    out
}

/// Reduced Gröbner basis of a Gröbner basis: minimal, monic, tail-reduced.
pub fn reduced_basis<F: Field>(f: &F, basis: &[MPoly<F::Elem>]) -> Vec<MPoly<F::Elem>> {
    let lms = leading_monomials(basis);
    let mut minimal: Vec<MPoly<F::Elem>> = lms
        .iter()
        .map(|m| basis.iter().find(|g| g.lm().as_ref() == Some(m)).unwrap().monic(f))
        .collect();
    for k in 0..minimal.len() {
        let others: Vec<MPoly<F::Elem>> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = MPoly::from_terms(f, g.order(), g.terms()[1..].to_vec());
        let tail = if others.is_empty() { tail } else { reduce(f, &tail, &others) };
        minimal[k] = MPoly::from_terms(f, g.order(), vec![(lm, lc)]).add(f, &tail);
    }
    minimal
}

/// Does the leading-term ideal contain a pure power of every variable among
/// the first `n`? For a homogeneous ideal this says its projective zero set
/// is empty.
pub fn has_pure_powers<E: Clone + PartialEq>(basis: &[MPoly<E>], n: usize) -> bool {
    let vars: BTreeSet<usize> = basis.iter().filter_map(|g| g.lm()).filter_map(|m| m.pure_power_var()).collect();
    (0..n).all(|i| vars.contains(&i))
}

/// Does the basis contain a nonzero constant?
pub fn contains_unit<E: Clone + PartialEq>(basis: &[MPoly<E>]) -> bool {
    basis.iter().any(|g| g.lm() == Some(Monomial::one()))
}

/// A Gröbner basis over `ℚ(ζ)` with the ledger of leading coefficients.
#[derive(Clone, Debug)]
pub struct TrackedGB {
    pub order: MonomialOrdering,
    pub basis: Vec<MPoly<CycNum>>,
    /// Distinct leading coefficients of inputs and inserted remainders.
    pub c: Vec<CycNum>,
    /// `{d(α)} ∪ {n(α)}` over `α ∈ C`, as positive integers.
    pub c_tilde: BTreeSet<BigInt>,
    pub pairs_reduced: usize,
}

/// Summary of a tracked run, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct TrackedSummary {
    pub order: String,
    pub basis_size: usize,
    pub leading_coefficients: usize,
    pub c_tilde_size: usize,
    /// Decimal digits of the largest element of `C̃`.
    pub largest_c_tilde_digits: usize,
    pub pairs_reduced: usize,
}

impl TrackedGB {
    pub fn summary(&self) -> TrackedSummary {
        TrackedSummary {
            order: self.order.tag(),
            basis_size: self.basis.len(),
            leading_coefficients: self.c.len(),
            c_tilde_size: self.c_tilde.len(),
            largest_c_tilde_digits: self.c_tilde.iter().map(|x| x.to_string().len()).max().unwrap_or(0),
            pairs_reduced: self.pairs_reduced,
        }
    }
}

/// Buchberger over `ℚ(ζ)` recording `C` and `C̃`. Inputs must have
/// coefficients in `ℤ[ζ]`.
pub fn buchberger_tracked(gens: &[MPoly<CycNum>], order: MonomialOrdering) -> Result<TrackedGB> {
    if gens.iter().any(|g| g.terms().iter().any(|(_, c)| !c.is_integral())) {
        return Err(Error::Input("generators must have coefficients in ℤ[ζ]".into()));
    }
    let run = buchberger(&CycField, gens, order);
    let mut c: Vec<CycNum> = Vec::new();
    for a in run.inserted_lcs {
        if !c.contains(&a) {
            c.push(a);
        }
    }
    let mut c_tilde = BTreeSet::new();
    for a in &c {
        let (d, n) = a.norm_and_denominator()?;
        c_tilde.insert(d.abs());
        c_tilde.insert(n.abs());
    }
    Ok(TrackedGB { order, basis: run.basis, c, c_tilde, pairs_reduced: run.pairs_reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat_int;
    use crate::arith::residue::ResidueField;
    use crate::arith::QField;
    use proptest::prelude::*;

    fn x(i: usize, o: MonomialOrdering) -> MPoly<crate::arith::Rational> {
        MPoly::var(&QField, o, i)
    }

    #[test]
    fn unit_ideal() {
        let o = MonomialOrdering::degrevlex(2);
        let one = MPoly::constant(&CycField, o, CycNum::one());
        let gb = buchberger_tracked(&[one], o).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(gb.c, vec![CycNum::one()]);
        assert_eq!(gb.c_tilde, [BigInt::from(1)].into_iter().collect());
    }

    #[test]
    fn twisted_cubic_basis() {
        // (y − x², z − x³) under lex z > y > x.
        let f = QField;
        let o = MonomialOrdering::new(crate::poly::OrderKind::Lex, &[2, 1, 0]).unwrap();
        let g1 = x(1, o).sub(&f, &x(0, o).pow(&f, 2));
        let g2 = x(2, o).sub(&f, &x(0, o).pow(&f, 3));
        let run = buchberger(&f, &[g1, g2], o);
        assert!(is_groebner_basis(&f, &run.basis));
        assert_eq!(reduced_basis(&f, &run.basis).len(), 2);

        // (x² + y² − 1, x − y) under lex x > y: reduced basis {x − y, y² − 1/2}.
        let o = MonomialOrdering::lex(2);
        let c = x(0, o).pow(&f, 2).add(&f, &x(1, o).pow(&f, 2)).sub(&f, &MPoly::constant(&f, o, rat_int(1)));
        let l = x(0, o).sub(&f, &x(1, o));
        let run = buchberger(&f, &[c, l], o);
        let red = reduced_basis(&f, &run.basis);
        let half = MPoly::constant(&f, o, crate::arith::rational::rat(1, 2));
        assert_eq!(red, vec![x(0, o).sub(&f, &x(1, o)), x(1, o).pow(&f, 2).sub(&f, &half)]);
    }

    #[test]
    fn pure_powers_and_units() {
        let f = ResidueField::prime_field(7);
        let o = MonomialOrdering::degrevlex(3);
        let v = |i| MPoly::var(&f, o, i);
        let gens = vec![v(0).pow(&f, 2), v(1).pow(&f, 3), v(2).mul(&f, &v(0))];
        let run = buchberger(&f, &gens, o);
        assert!(!has_pure_powers(&run.basis, 3));
        let gens = vec![v(0).pow(&f, 2), v(1).pow(&f, 3), v(2).pow(&f, 2)];
        assert!(has_pure_powers(&buchberger(&f, &gens, o).basis, 3));
        let one = MPoly::constant(&f, o, f.one());
        let run = buchberger(&f, &[v(0).sub(&f, &one), v(0)], o);
        assert!(contains_unit(&run.basis));
    }

    fn small_poly(f: &ResidueField, o: MonomialOrdering) -> impl Strategy<Value = MPoly<crate::arith::FFElem>> {
        let f = f.clone();
        proptest::collection::vec(((0u16..3, 0u16..3, 0u16..3), 0i64..11), 1..5).prop_map(move |ts| {
            let terms = ts.iter().map(|&((a, b, c), k)| (Monomial::from_exps(&[a, b, c]), f.from_i64(k))).collect();
            MPoly::from_terms(&f, o, terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn buchberger_output_is_a_groebner_basis_of_the_same_ideal(
            gens in proptest::collection::vec(small_poly(&ResidueField::prime_field(11), MonomialOrdering::degrevlex(3)), 1..4),
        ) {
            let f = ResidueField::prime_field(11);
            let o = MonomialOrdering::degrevlex(3);
            let run = buchberger(&f, &gens, o);
            prop_assert!(is_groebner_basis(&f, &run.basis));
            // Generators reduce to zero, and the basis lies in the ideal by construction.
            for g in &gens {
                prop_assert!(reduce(&f, g, &run.basis).is_zero());
            }
            let red = reduced_basis(&f, &run.basis);
            prop_assert!(is_groebner_basis(&f, &red));
            prop_assert_eq!(leading_monomials(&red), leading_monomials(&run.basis));
        }
    }
}
