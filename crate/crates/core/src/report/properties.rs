//! Randomized property checks shared by the integration tests and the
//! acceptance harness. Each check returns a one-line summary or the first
//! counterexample.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::rational::rat_int;
use crate::arith::residue::{reduce_cyc, split_prime};
use crate::arith::{CycField, CycNum, Field, PrimeOfZZeta};
use crate::fermat::{compose_perm, perm_to_isometry, AutGroup, FermatModel};
use crate::groebner::reduction::reduce_poly;
use crate::groebner::{buchberger, buchberger_tracked, gcds, is_groebner_basis, leading_monomials};
use crate::lattice::{close_group, enumerate_fixed_pairings, Lattice, NormBound};
use crate::poly::{reduce, s_polynomial, MPoly, Monomial, MonomialOrdering, OrderKind};

pub type Check = Result<String, String>;

fn random_cyc(rng: &mut ChaCha8Rng, r: i64) -> CycNum {
    CycNum::from_ints([rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)])
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> MonomialOrdering {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let kind = if rng.gen_bool(0.5) { OrderKind::Lex } else { OrderKind::DegRevLex };
    MonomialOrdering::new(kind, &perm).unwrap()
}

/// A nonzero polynomial in `n` variables over `ℤ[ζ]` with at most `terms` terms.
fn random_poly(rng: &mut ChaCha8Rng, o: MonomialOrdering, n: usize, max_deg: u16, terms: usize) -> MPoly<CycNum> {
    loop {
        let k = rng.gen_range(1..=terms);
        let ts: Vec<(Monomial, CycNum)> = (0..k)
            .map(|_| {
                let mut e = vec![0u16; n];
                let d = rng.gen_range(0..=max_deg);
                for _ in 0..d {
                    e[rng.gen_range(0..n)] += 1;
                }
                (Monomial::from_exps(&e), random_cyc(rng, 3))
            })
            .collect();
        let p = MPoly::from_terms(&CycField, o, ts);
        if !p.is_zero() {
            return p;
        }
    }
}

fn lc_is_unit(p: &MPoly<CycNum>, prime: &PrimeOfZZeta) -> bool {
    let field = prime.residue_field();
    reduce_cyc(p.lc().unwrap(), prime).map(|c| !field.is_zero(&c)).unwrap_or(false)
}

fn random_unit_poly(rng: &mut ChaCha8Rng, o: MonomialOrdering, prime: &PrimeOfZZeta) -> MPoly<CycNum> {
    loop {
        let p = random_poly(rng, o, 3, 3, 5);
        if lc_is_unit(&p, prime) {
            return p;
        }
    }
}

/// S-polynomials and division remainders commute with reduction at `P`
/// when the relevant leading coefficients are `P`-units.
pub fn lemma_commutation(seed: u64, instances: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes: Vec<PrimeOfZZeta> = [5u64, 7, 11].iter().map(|&p| split_prime(p).unwrap().remove(0)).collect();
    let f = CycField;
    for k in 0..instances {
        let prime = &primes[k % primes.len()];
        let field = prime.residue_field();
        let o = random_order(&mut rng, 3);
        let a = random_unit_poly(&mut rng, o, prime);
        let b = random_unit_poly(&mut rng, o, prime);
        let s = s_polynomial(&f, &a, &b);
        let (ar, br) = (reduce_poly(&a, prime).unwrap(), reduce_poly(&b, prime).unwrap());
        let lhs = reduce_poly(&s, prime).map_err(|e| format!("S not P-integral: {e}"))?;
        if lhs != s_polynomial(&field, &ar, &br) {
            return Err(format!("S-polynomial mismatch at {} (instance {k})", prime.label()));
        }
        let hs: Vec<MPoly<CycNum>> = (0..rng.gen_range(1..=3)).map(|_| random_unit_poly(&mut rng, o, prime)).collect();
        let g = random_poly(&mut rng, o, 3, 4, 6);
        let rem = reduce(&f, &g, &hs);
        let hs_p: Vec<_> = hs.iter().map(|h| reduce_poly(h, prime).unwrap()).collect();
        let lhs = reduce_poly(&rem, prime).map_err(|e| format!("remainder not P-integral: {e}"))?;
        if lhs != reduce(&field, &reduce_poly(&g, prime).unwrap(), &hs_p) {
            return Err(format!("remainder mismatch at {} (instance {k})", prime.label()));
        }
    }
    Ok(format!("{instances} instances at primes over 5, 7, 11"))
}

/// Tracked basis reduced at `P` versus a direct run over `κ_P`, for every
/// `P` over 5, 7, 11, 13 with `p ∉ P(C̃)`.
pub fn tracked_basis_oracle(seed: u64, ideals: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes: Vec<PrimeOfZZeta> = [5u64, 7, 11, 13].iter().flat_map(|&p| split_prime(p).unwrap()).collect();
    let mut comparisons = 0;
    let mut excluded = 0;
    for k in 0..ideals {
        let o = random_order(&mut rng, 3);
        let n_gens = rng.gen_range(2..=3);
        let gens: Vec<MPoly<CycNum>> = (0..n_gens).map(|_| random_poly(&mut rng, o, 3, 4, 3)).collect();
        let gb = buchberger_tracked(&gens, o).map_err(|e| e.to_string())?;
        if !is_groebner_basis(&CycField, &gb.basis) {
            return Err(format!("ideal {k}: tracked output is not a Gröbner basis"));
        }
        let mut compared_here = 0;
        for prime in &primes {
            let pb = BigInt::from(prime.p);
            if gb.c_tilde.iter().any(|t| (t % &pb).is_zero()) {
                excluded += 1;
                continue;
            }
            let field = prime.residue_field();
            let g_p: Vec<_> = gb.basis.iter().map(|g| reduce_poly(g, prime)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            if !is_groebner_basis(&field, &g_p) {
                return Err(format!("ideal {k}: G mod {} is not a Gröbner basis", prime.label()));
            }
            let gens_p: Vec<_> = gens.iter().map(|g| reduce_poly(g, prime).unwrap()).collect();
            let direct = buchberger(&field, &gens_p, o);
            if leading_monomials(&g_p) != leading_monomials(&direct.basis) {
                return Err(format!("ideal {k}: leading-term ideals differ at {}", prime.label()));
            }
            compared_here += 1;
        }
        if compared_here == 0 {
            return Err(format!("ideal {k}: no admissible prime"));
        }
        comparisons += compared_here;
    }
    Ok(format!("{ideals} ideals, {comparisons} prime comparisons, {excluded} excluded by C̃"))
}

fn trial_primes(n: &BigInt) -> BTreeSet<u64> {
    let mut n = n.abs();
    let mut out = BTreeSet::new();
    let mut d = 2u64;
    while n > BigInt::from(1) {
        let bd = BigInt::from(d);
        while (&n % &bd).is_zero() {
            out.insert(d);
            n /= &bd;
        }
        d += 1;
    }
    out
}

/// `P(T₁) ∩ ⋯ ∩ P(T_N) = P(gcds(T₁, …, T_N))` with naive factoring as oracle.
pub fn gcds_identity(seed: u64, trials: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    for k in 0..trials {
        let n_sets = rng.gen_range(1..=4);
        let sets: Vec<BTreeSet<BigInt>> = (0..n_sets)
            .map(|_| {
                (0..rng.gen_range(1..=5))
                    .map(|_| {
                        let mut x = BigInt::from(1);
                        for _ in 0..rng.gen_range(0..=4) {
                            x *= small[rng.gen_range(0..small.len())];
                        }
                        if rng.gen_bool(0.3) {
                            -x
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let mut lhs: Option<BTreeSet<u64>> = None;
        for t in &sets {
            let p: BTreeSet<u64> = t.iter().flat_map(trial_primes).collect();
            lhs = Some(match lhs {
                None => p,
                Some(acc) => acc.intersection(&p).copied().collect(),
            });
        }
        let g = gcds(&sets).map_err(|e| e.to_string())?;
        let rhs: BTreeSet<u64> = g.iter().flat_map(trial_primes).collect();
        if lhs.unwrap() != rhs {
            return Err(format!("trial {k}: {sets:?}"));
        }
        // The pruned gcds agree with the full product set.
        if sets.len() == 2 {
            let full: BTreeSet<u64> = sets[0]
                .iter()
                .flat_map(|a| sets[1].iter().map(move |b| a.gcd(b)))
                .flat_map(|x| trial_primes(&x))
                .collect();
            if full != rhs {
                return Err(format!("trial {k}: pruning changed the prime set"));
            }
        }
    }
    Ok(format!("{trials} random families"))
}

fn brute_force(l: &Lattice, h: &[i64], a: i64, norm: i64, exact: bool, r: i64) -> Vec<Vec<i64>> {
    let n = l.rank();
    let mut out = Vec::new();
    let mut x = vec![-r; n];
    loop {
        let nx = l.pair_int(&x, &x);
        if l.pair_int(h, &x) == a && (if exact { nx == norm } else { nx >= norm }) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            x[i] += 1;
            if x[i] > r {
                x[i] = -r;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Fixed-pairing enumeration versus a box search on random hyperbolic
/// lattices of rank 2 to 4.
pub fn enumeration_brute_force(seed: u64, trials: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let box_r = 5;
    let mut done = 0;
    while done < trials {
        let n = rng.gen_range(2..=4);
        let mut g = vec![vec![0i64; n]; n];
        g[0][0] = 2 * rng.gen_range(1..=3);
        for i in 1..n {
            g[i][i] = -2 * rng.gen_range(2..=4);
        }
        for i in 1..n - 1 {
            let o = rng.gen_range(-1..=1);
            g[i][i + 1] = o;
            g[i + 1][i] = o;
        }
        let o = rng.gen_range(-1..=1);
        g[0][1] = o;
        g[1][0] = o;
        let l = Lattice::from_int_gram(&g).map_err(|e| e.to_string())?;
        if !l.is_hyperbolic() {
            continue;
        }
        let mut h = vec![0i64; n];
        h[0] = 1;
        if l.pair_int(&h, &h) <= 0 {
            continue;
        }
        let a = rng.gen_range(0..=3);
        let (b, exact) = if rng.gen_bool(0.5) { (rng.gen_range(-6..=2), true) } else { (rng.gen_range(-4..=0), false) };
        let bound = if exact { NormBound::Equal(rat_int(b)) } else { NormBound::AtLeast(rat_int(b)) };
        let hr: Vec<_> = h.iter().map(|&x| rat_int(x)).collect();
        let got = enumerate_fixed_pairings(&l, &[(hr, rat_int(a))], &bound).map_err(|e| e.to_string())?;
        let want = brute_force(&l, &h, a, b, exact, box_r);
        let in_box: Vec<Vec<i64>> = got.iter().filter(|x| x.iter().all(|c| c.abs() <= box_r)).cloned().collect();
        if in_box != want {
            return Err(format!("gram {g:?}, a = {a}, b = {b}, exact = {exact}"));
        }
        done += 1;
    }
    Ok(format!("{trials} lattices of rank ≤ 4"))
}

/// The automorphism group of the Fermat quartic acting on `S_X`: closed
/// under composition and inverses, generated by its generators, and the
/// line permutation map is a homomorphism.
pub fn isometry_closure(model: &FermatModel, aut: &AutGroup, seed: u64, samples: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let set: HashSet<_> = aut.isometries.iter().cloned().collect();
    if set.len() != aut.isometries.len() {
        return Err("duplicate isometries".into());
    }
    if !aut.isometries.iter().all(|g| model.lattice.is_isometry(g)) {
        return Err("an element does not preserve the form".into());
    }
    let n = aut.isometries.len();
    for _ in 0..samples {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (a, b) = (&aut.isometries[i], &aut.isometries[j]);
        let ab = a.then(b);
        if !set.contains(&ab) {
            return Err(format!("product of elements {i}, {j} escapes the group"));
        }
        if perm_to_isometry(model, &compose_perm(&aut.perms[i], &aut.perms[j])) != ab {
            return Err(format!("permutation action is not a homomorphism at {i}, {j}"));
        }
        match a.inverse() {
            Some(inv) if set.contains(&inv) => {}
            _ => return Err(format!("inverse of element {i} missing")),
        }
    }
    // A small generating set recovers the whole group.
    let mut gens = Vec::new();
    let mut closure = close_group(&[aut.isometries[0].clone()]);
    while closure.len() < n {
        let g = aut.isometries.iter().find(|g| !closure.contains(g)).unwrap().clone();
        gens.push(g);
        closure = close_group(&gens);
    }
    if closure.iter().any(|g| !set.contains(g)) {
        return Err("closure leaves the group".into());
    }
    Ok(format!("group of order {n}: {samples} sampled products, {} generators", gens.len()))
}
