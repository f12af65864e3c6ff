//! Primes of ℤ[ζ] and their residue fields.
//!
//! A prime P over p is recorded by a monic irreducible factor g of t⁴+1 over
//! 𝔽_p, and κ_P = 𝔽_p[u]/(g) with ζ ↦ u. Reduction of elements of the local
//! ring R_P goes through the unramified completion: ζ is sent to the Hensel
//! lift of u in (ℤ/p^N)[u]/(g), which makes the map exact for every
//! P-integral element, not only those with denominators prime to p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CycNum;
use super::field::Field;
use crate::error::{Error, Result};

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Square root modulo an odd prime (Tonelli–Shanks).
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// A prime of ℤ[ζ₈] lying over the rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeOfZZeta {
    pub p: u64,
    /// Monic factor of t⁴+1 over 𝔽_p, coefficients from the constant term up.
    pub local_factor: Vec<u64>,
    pub residue_degree: usize,
    pub ramification: usize,
}

impl PrimeOfZZeta {
    pub fn residue_field(&self) -> ResidueField {
        ResidueField::new(self.p, self.local_factor.clone())
    }

    pub fn label(&self) -> String {
        format!("P[{}; {}]", self.p, render_poly(&self.local_factor, "t"))
    }
}

impl fmt::Display for PrimeOfZZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn render_poly(c: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        parts.push(match (a, mono.is_empty()) {
            (_, true) => a.to_string(),
            (1, false) => mono,
            (_, false) => format!("{a}*{mono}"),
        });
    }
    parts.join("+")
}

/// All primes of ℤ[ζ₈] above `p`, ordered by their local factors.
pub fn split_prime(p: u64) -> Result<Vec<PrimeOfZZeta>> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if p == 2 {
        // t⁴ + 1 = (t + 1)⁴ over 𝔽₂: totally ramified.
        return Ok(vec![PrimeOfZZeta {
            p,
            local_factor: vec![1, 1],
            residue_degree: 1,
            ramification: 4,
        }]);
    }
    let neg = |x: u64| (p - x % p) % p;
    let mut factors: Vec<Vec<u64>> = match p % 8 {
        1 => {
            // A primitive 8th root of unity is c^((p-1)/8) for any non-residue c.
            let mut c = 2;
            while pow_mod(c, (p - 1) / 2, p) != p - 1 {
                c += 1;
            }
            let r = pow_mod(c, (p - 1) / 8, p);
            [1u64, 3, 5, 7]
                .iter()
                .map(|&k| vec![neg(pow_mod(r, k, p)), 1])
                .collect()
        }
        3 => {
            // s² = −2: t⁴+1 = (t² + st − 1)(t² − st − 1).
            let s = sqrt_mod_prime(p - 2, p).expect("-2 is a square mod p ≡ 3 (8)");
            vec![vec![p - 1, s, 1], vec![p - 1, neg(s), 1]]
        }
        5 => {
            // i² = −1: t⁴+1 = (t² − i)(t² + i).
            let i = sqrt_mod_prime(p - 1, p).expect("-1 is a square mod p ≡ 5 (8)");
            vec![vec![neg(i), 0, 1], vec![i, 0, 1]]
        }
        7 => {
            // s² = 2: t⁴+1 = (t² + st + 1)(t² − st + 1).
            let s = sqrt_mod_prime(2, p).expect("2 is a square mod p ≡ 7 (8)");
            vec![vec![1, s, 1], vec![1, neg(s), 1]]
        }
        _ => unreachable!(),
    };
    factors.sort();
    Ok(factors
        .into_iter()
        .map(|g| PrimeOfZZeta {
            p,
            residue_degree: g.len() - 1,
            local_factor: g,
            ramification: 1,
        })
        .collect())
}

/// Finite field 𝔽_p[u]/(g) for a monic irreducible g of degree ≤ 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueField {
    p: u64,
    modulus: Vec<u64>,
}

/// Element of a [`ResidueField`]: coordinates in 1, u, u², u³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FFElem {
    pub coords: [u64; 4],
}

impl ResidueField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        assert!(modulus.len() >= 2 && modulus.len() <= 5, "degree must be 1..=4");
        assert_eq!(*modulus.last().unwrap(), 1, "modulus must be monic");
        assert!(p < (1 << 31), "characteristic too large");
        ResidueField { p, modulus }
    }

    /// The prime field 𝔽_p.
    pub fn prime_field(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    /// The class of u (the image of ζ).
    pub fn generator(&self) -> FFElem {
        if self.degree() == 1 {
            FFElem::constant((self.p - self.modulus[0]) % self.p)
        } else {
            let mut c = [0; 4];
            c[1] = 1;
            FFElem { coords: c }
        }
    }

    pub fn from_coords(&self, c: &[u64]) -> FFElem {
        let mut out = [0; 4];
        for (i, &x) in c.iter().enumerate().take(self.degree()) {
            out[i] = x % self.p;
        }
        FFElem { coords: out }
    }

    /// Every element, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<FFElem> {
        let q = self.order();
        (0..q)
            .map(|mut k| {
                let mut c = [0; 4];
                for slot in c.iter_mut().take(self.degree()) {
                    *slot = k % self.p;
                    k /= self.p;
                }
                FFElem { coords: c }
            })
            .collect()
    }

    fn reduce_product(&self, prod: &mut [u64; 8]) -> FFElem {
        let d = self.degree();
        for k in (d..8).rev() {
            let c = prod[k] % self.p;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                let sub = c * self.modulus[i] % self.p;
                let slot = &mut prod[k - d + i];
                *slot = (*slot + self.p - sub) % self.p;
            }
        }
        let mut out = [0; 4];
        out[..d].copy_from_slice(&prod[..d]);
        for x in out.iter_mut() {
            *x %= self.p;
        }
        FFElem { coords: out }
    }
}

impl FFElem {
    pub fn constant(c: u64) -> Self {
        FFElem { coords: [c, 0, 0, 0] }
    }
}

impl Field for ResidueField {
    type Elem = FFElem;

    fn zero(&self) -> FFElem {
        FFElem::constant(0)
    }
    fn one(&self) -> FFElem {
        FFElem::constant(1)
    }
    fn from_i64(&self, n: i64) -> FFElem {
        FFElem::constant(n.rem_euclid(self.p as i64) as u64)
    }
    fn is_zero(&self, a: &FFElem) -> bool {
        a.coords == [0; 4]
    }
    fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = (a.coords[i] + b.coords[i]) % self.p;
        }
        FFElem { coords: c }
    }
    fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = (a.coords[i] + self.p - b.coords[i]) % self.p;
        }
        FFElem { coords: c }
    }
    fn neg(&self, a: &FFElem) -> FFElem {
        self.sub(&self.zero(), a)
    }
    fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let d = self.degree();
        if d == 1 {
            return FFElem::constant(a.coords[0] * b.coords[0] % self.p);
        }
        let mut prod = [0u64; 8];
        for i in 0..d {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a.coords[i] * b.coords[j]) % self.p;
            }
        }
        self.reduce_product(&mut prod)
    }
    fn inv(&self, a: &FFElem) -> Option<FFElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &FFElem) -> String {
        let coords = &a.coords[..self.degree()];
        if self.degree() == 1 {
            coords[0].to_string()
        } else {
            let s = render_poly(coords, "u");
            if s.is_empty() {
                "0".into()
            } else {
                s
            }
        }
    }
    fn sqrt(&self, a: &FFElem) -> Option<FFElem> {
        if self.is_zero(a) {
            return Some(*a);
        }
        let q = self.order();
        if self.p == 2 {
            return Some(self.pow(a, q / 2));
        }
        if self.pow(a, (q - 1) / 2) != self.one() {
            return None;
        }
        // Tonelli–Shanks in 𝔽_q.
        let mut t_exp = q - 1;
        let mut s = 0;
        while t_exp % 2 == 0 {
            t_exp /= 2;
            s += 1;
        }
        let minus_one = self.neg(&self.one());
        let z = self
            .elements()
            .into_iter()
            .find(|e| !self.is_zero(e) && self.pow(e, (q - 1) / 2) == minus_one)
            .expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow(&z, t_exp);
        let mut t = self.pow(a, t_exp);
        let mut r = self.pow(a, t_exp.div_ceil(2));
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut tt = t;
            while tt != one {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

/// (ℤ/p^N)[u]/(g) with g the integer lift of the local factor.
struct LocalRing {
    modulus: BigInt,
    g: Vec<BigInt>,
}

impl LocalRing {
    fn deg(&self) -> usize {
        self.g.len() - 1
    }

    fn reduce_coeffs(&self, v: &mut [BigInt]) {
        for c in v.iter_mut() {
            *c = c.mod_floor(&self.modulus);
        }
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.deg();
        let mut prod = vec![BigInt::zero(); 2 * d];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] += &a[i] * &b[j];
            }
        }
        for k in (d..2 * d).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                prod[k - d + i] -= &c * &self.g[i];
            }
        }
        prod.truncate(d);
        self.reduce_coeffs(&mut prod);
        prod
    }

    fn constant(&self, c: BigInt) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.deg()];
        v[0] = c.mod_floor(&self.modulus);
        v
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce_coeffs(&mut v);
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce_coeffs(&mut v);
        v
    }
}

/// Valuation of a nonzero rational integer at p.
fn vp(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Image of ζ in (ℤ/p^N)[u]/(g): the Hensel lift of u as a root of t⁴ + 1.
fn lifted_zeta(prime: &PrimeOfZZeta, precision: u32) -> (LocalRing, Vec<BigInt>) {
    let p = prime.p;
    let modulus = BigInt::from(p).pow(precision);
    let ring = LocalRing {
        modulus,
        g: prime.local_factor.iter().map(|&c| BigInt::from(c)).collect(),
    };
    let field = prime.residue_field();
    let d = ring.deg();
    let lift = |e: &FFElem| -> Vec<BigInt> { e.coords[..d].iter().map(|&c| BigInt::from(c)).collect() };
    let reduce = |v: &[BigInt]| -> FFElem {
        let c: Vec<u64> = v
            .iter()
            .map(|x| x.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect();
        field.from_coords(&c)
    };
    let inverse = |w: &[BigInt]| -> Vec<BigInt> {
        let w0 = field.inv(&reduce(w)).expect("unit");
        let mut v = lift(&w0);
        let two = ring.constant(BigInt::from(2));
        for _ in 0..=precision.ilog2() + 1 {
            let wv = ring.mul(w, &v);
            v = ring.mul(&v, &ring.sub(&two, &wv));
        }
        v
    };
    let mut theta = lift(&field.generator());
    let one = ring.constant(BigInt::one());
    let four = ring.constant(BigInt::from(4));
    for _ in 0..=precision.ilog2() + 1 {
        let t2 = ring.mul(&theta, &theta);
        let t3 = ring.mul(&t2, &theta);
        let t4 = ring.mul(&t3, &theta);
        let f = ring.add(&t4, &one);
        if f.iter().all(Zero::is_zero) {
            break;
        }
        let fp = ring.mul(&four, &t3);
        theta = ring.sub(&theta, &ring.mul(&f, &inverse(&fp)));
    }
    (ring, theta)
}

/// Coordinates of the image of an integral element Σ yₖζᵏ in (ℤ/p^N)[u]/(g).
fn local_image(prime: &PrimeOfZZeta, y: &[BigInt; 4], precision: u32) -> Vec<BigInt> {
    let (ring, theta) = lifted_zeta(prime, precision);
    let mut acc = ring.constant(BigInt::zero());
    let mut power = ring.constant(BigInt::one());
    for (k, c) in y.iter().enumerate() {
        if k > 0 {
            power = ring.mul(&power, &theta);
        }
        if !c.is_zero() {
            let term: Vec<BigInt> = power.iter().map(|x| x * c).collect();
            acc = ring.add(&acc, &term);
        }
    }
    acc
}

/// P-adic valuation of a nonzero element; `None` for zero.
pub fn valuation(x: &CycNum, prime: &PrimeOfZZeta) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = prime.p;
    let e_den = vp(x.denominator(), p) as i64;
    let y = x.numerators();
    let y_elem = x.scale_int(x.denominator());
    let norm_v = vp(&y_elem.norm().to_integer(), p) as i64;
    if prime.ramification > 1 {
        // Single prime over 2 with residue degree 1: v_P = v_2(N).
        return Some(norm_v - prime.ramification as i64 * e_den);
    }
    // v_P(y) ≤ v_p(N(y)) / f, so this precision sees the exact valuation.
    let precision = norm_v as u32 + 1;
    let img = local_image(prime, y, precision);
    let v_num = img
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| vp(c, p) as i64)
        .min()
        .unwrap_or(precision as i64);
    Some(v_num - e_den)
}

/// Reduction R_P → κ_P. Fails with [`Error::NotInLocalRing`] when `x` has
/// negative P-adic valuation.
pub fn reduce_cyc(x: &CycNum, prime: &PrimeOfZZeta) -> Result<FFElem> {
    let field = prime.residue_field();
    if x.is_zero() {
        return Ok(field.zero());
    }
    let p = prime.p;
    let not_local = || Error::NotInLocalRing {
        prime: prime.label(),
    };
    if prime.ramification > 1 {
        let v = valuation(x, prime).expect("nonzero");
        return match v {
            v if v < 0 => Err(not_local()),
            0 => Ok(field.one()),
            _ => Ok(field.zero()),
        };
    }
    let den = x.denominator();
    let e = vp(den, p);
    let pe = BigInt::from(p).pow(e);
    let unit_part = den / &pe;
    if e == 0 {
        // Fast path: reduce coordinates directly, ζ ↦ u.
        let u = field.generator();
        let pb = BigInt::from(p);
        let mut acc = field.zero();
        let mut power = field.one();
        for (k, c) in x.numerators().iter().enumerate() {
            if k > 0 {
                power = field.mul(&power, &u);
            }
            let c = c.mod_floor(&pb).to_u64().unwrap();
            acc = field.add(&acc, &field.mul(&power, &FFElem::constant(c)));
        }
        let d = unit_part.mod_floor(&pb).to_u64().unwrap();
        return Ok(field.mul(&acc, &field.inv(&FFElem::constant(d)).unwrap()));
    }
    let img = local_image(prime, x.numerators(), e + 1);
    if img.iter().any(|c| !(c % &pe).is_zero()) {
        return Err(not_local());
    }
    let pb = BigInt::from(p);
    let coords: Vec<u64> = img
        .iter()
        .map(|c| (c / &pe).mod_floor(&pb).to_u64().unwrap())
        .collect();
    let num = field.from_coords(&coords);
    let d = unit_part.mod_floor(&pb).to_u64().unwrap();
    Ok(field.mul(&num, &field.inv(&FFElem::constant(d)).unwrap()))
}

/// Reduces a vector of elements after scaling it by a common power of a local
/// uniformizer so that every entry is P-integral and at least one is a unit.
/// Returns `None` for the zero vector.
pub fn reduce_projective(xs: &[CycNum], prime: &PrimeOfZZeta) -> Result<Option<Vec<FFElem>>> {
    let min_v = xs.iter().filter_map(|x| valuation(x, prime)).min();
    let Some(m) = min_v else { return Ok(None) };
    let uniformizer = if prime.ramification > 1 {
        &CycNum::one() - &CycNum::zeta()
    } else {
        CycNum::from_int(prime.p as i64)
    };
    let scale = if m >= 0 {
        uniformizer.inv().unwrap().pow(m as u32)
    } else {
        uniformizer.pow((-m) as u32)
    };
    xs.iter()
        .map(|x| reduce_cyc(&(x * &scale), prime))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::coefficient_a;
    use crate::arith::rational::rat;

    #[test]
    fn splitting_of_small_primes() {
        let two = split_prime(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].residue_field().order(), 2);

        let three = split_prime(3).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.iter().all(|p| p.residue_field().order() == 9));

        let seventeen = split_prime(17).unwrap();
        assert_eq!(seventeen.len(), 4);
        assert!(seventeen.iter().all(|p| p.residue_field().order() == 17));

        assert!(split_prime(15).is_err());
        assert!(split_prime(1).is_err());
    }

    #[test]
    fn brute_force_roots_of_t4_plus_1_mod_17() {
        let roots: Vec<u64> = (0..17).filter(|t| (t * t * t * t + 1) % 17 == 0).collect();
        assert_eq!(roots.len(), 4);
        let mut from_split: Vec<u64> = split_prime(17)
            .unwrap()
            .iter()
            .map(|pr| (17 - pr.local_factor[0]) % 17)
            .collect();
        from_split.sort();
        assert_eq!(from_split, roots);
    }

    #[test]
    fn local_factors_divide_t4_plus_1() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 41, 73, 97, 101] {
            for prime in split_prime(p).unwrap() {
                let f = prime.residue_field();
                let u = f.generator();
                let u4 = f.pow(&u, 4);
                assert!(f.is_zero(&f.add(&u4, &f.one())), "p={p}");
                let e = prime.ramification * prime.residue_degree;
                assert_eq!(e * split_prime(p).unwrap().len(), 4);
            }
        }
    }

    #[test]
    fn reduction_of_a_at_small_primes() {
        let a = coefficient_a();
        let p2 = &split_prime(2).unwrap()[0];
        let f2 = p2.residue_field();
        assert_eq!(reduce_cyc(&a, p2).unwrap(), f2.one());

        let three = split_prime(3).unwrap();
        let zeros: Vec<bool> = three
            .iter()
            .map(|pr| pr.residue_field().is_zero(&reduce_cyc(&a, pr).unwrap()))
            .collect();
        assert_eq!(zeros.iter().filter(|z| **z).count(), 1);
        for pr in &three {
            let f = pr.residue_field();
            let r = reduce_cyc(&a, pr).unwrap();
            assert!(f.is_zero(&r) || f.is_one(&r));
        }
    }

    #[test]
    fn one_third_is_not_local_at_three() {
        let third = CycNum::from_rational(&rat(1, 3));
        for pr in split_prime(3).unwrap() {
            assert!(matches!(
                reduce_cyc(&third, &pr),
                Err(Error::NotInLocalRing { .. })
            ));
        }
    }

    #[test]
    fn true_localization_handles_p_denominators() {
        // A = (1 − √−2)² vanishes to order 2 at P₃, so A/3 is P₃-integral.
        let a = coefficient_a();
        let a3 = a.scale(&rat(1, 3));
        let three = split_prime(3).unwrap();
        let p3 = three
            .iter()
            .find(|pr| pr.residue_field().is_zero(&reduce_cyc(&a, pr).unwrap()))
            .unwrap();
        assert_eq!(valuation(&a, p3), Some(2));
        assert_eq!(valuation(&a3, p3), Some(1));
        assert!(reduce_cyc(&a3, p3).is_ok());
        let other = three.iter().find(|pr| *pr != p3).unwrap();
        assert_eq!(valuation(&a, other), Some(0));
        assert!(reduce_cyc(&a3, other).is_err());
    }

    #[test]
    fn finite_field_sqrt() {
        for prime in split_prime(3).unwrap().into_iter().chain(split_prime(13).unwrap()) {
            let f = prime.residue_field();
            for x in f.elements() {
                let sq = f.mul(&x, &x);
                let r = f.sqrt(&sq).unwrap();
                assert_eq!(f.mul(&r, &r), sq);
            }
        }
        let f2 = ResidueField::prime_field(2);
        assert_eq!(f2.sqrt(&f2.one()), Some(f2.one()));
    }
}
