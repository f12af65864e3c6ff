//! Prime sets of integer ledgers: `P(T)` and the `gcds` intersection.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::residue::is_prime;
use crate::error::{Error, Result};

/// Trial division bound used before falling back to Pollard's rho.
const TRIAL_LIMIT: u64 = 100_000;

/// `{gcd(t₁, …, t_N) : tᵢ ∈ Tᵢ}`, built run by run. Entries equal to 1
/// carry no primes and are dropped as soon as they appear.
pub fn gcds(runs: &[BTreeSet<BigInt>]) -> Result<BTreeSet<BigInt>> {
    let (first, rest) = runs.split_first().ok_or_else(|| Error::Input("no runs".into()))?;
    if runs.iter().flatten().any(|t| t.is_zero()) {
        return Err(Error::Input("zero in an integer ledger".into()));
    }
    let mut acc: BTreeSet<BigInt> = first.iter().map(|t| t.abs()).filter(|t| !t.is_one()).collect();
    for t in rest {
        let mut next = BTreeSet::new();
        for a in &acc {
            for b in t {
                let g = a.gcd(b);
                if !g.is_one() {
                    next.insert(g);
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `P(T)`: primes dividing some element.
pub fn prime_divisors(t: &BTreeSet<BigInt>) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for x in t {
        out.extend(factor_small(x)?);
    }
    Ok(out)
}

/// `P(T₁) ∩ ⋯ ∩ P(T_N)`, computed as `P(gcds(T₁, …, T_N))` so that only the
/// gcds are ever factored.
pub fn bad_primes_intersected(runs: &[BTreeSet<BigInt>]) -> Result<BTreeSet<u64>> {
    prime_divisors(&gcds(runs)?)
}

/// Distinct prime divisors of a nonzero integer whose cofactor after trial
/// division fits in 64 bits.
pub fn factor_small(n: &BigInt) -> Result<BTreeSet<u64>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(Error::Input("cannot factor zero".into()));
    }
    let mut out = BTreeSet::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && !n.is_one() {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.insert(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Ok(out);
    }
    let small = n
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("cofactor with {} digits is too large to factor", n.to_string().len())))?;
    let mut stack = vec![small];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.insert(m);
            continue;
        }
        let f = pollard_rho(m);
        stack.push(f);
        stack.push(m / f);
    }
    Ok(out)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// A nontrivial factor of an odd composite `n` with no factor below the trial bound.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[i64]) -> BTreeSet<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(bad_primes_intersected(&[set(&[6]), set(&[10])]).unwrap(), [2].into_iter().collect());
        assert!(bad_primes_intersected(&[set(&[4]), set(&[9])]).unwrap().is_empty());
        assert!(bad_primes_intersected(&[]).is_err());
        assert!(gcds(&[set(&[0])]).is_err());
    }

    #[test]
    fn factoring() {
        let n = BigInt::from(2u64 * 3 * 3 * 1_000_003 * 999_983);
        assert_eq!(factor_small(&n).unwrap(), [2, 3, 999_983, 1_000_003].into_iter().collect());
        let rho = BigInt::from(1_000_003u64 * 1_000_033u64);
        assert_eq!(factor_small(&rho).unwrap(), [1_000_003, 1_000_033].into_iter().collect());
        // 2¹²⁷ − 1 is prime and exceeds 64 bits: refused rather than guessed.
        let m127 = (BigInt::from(1) << 127usize) - 1;
        assert!(matches!(factor_small(&m127), Err(Error::Unsupported(_))));
    }

    proptest! {
        #[test]
        fn gcds_primes_are_the_common_primes(
            t1 in proptest::collection::btree_set(1i64..5000, 1..6),
            t2 in proptest::collection::btree_set(1i64..5000, 1..6),
            t3 in proptest::collection::btree_set(1i64..5000, 1..6),
        ) {
            let runs: Vec<BTreeSet<BigInt>> = [t1, t2, t3].iter().map(|t| t.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let mut common = prime_divisors(&runs[0]).unwrap();
            for t in &runs[1..] {
                let p = prime_divisors(t).unwrap();
                common = common.intersection(&p).copied().collect();
            }
            prop_assert_eq!(bad_primes_intersected(&runs).unwrap(), common);
        }
    }
}
