//! Sparse multivariate polynomials over an exact field with a fixed
//! monomial ordering.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 6;

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exps(e: &[u16]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = [0; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Monomial(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; MAX_VARS];
        m[i] = 1;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// `o / self`, when `self | o`.
    pub fn quotient_of(&self, o: &Self) -> Option<Self> {
        if !self.divides(o) {
            return None;
        }
        let mut m = o.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(m))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = (*a).max(b);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a == 0 || b == 0)
    }

    /// Is this a power of a single variable (or 1)?
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.0[i] > 0).collect();
        match nz.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial ordering: a kind plus a variable priority list, most
/// significant variable first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrdering {
    pub kind: OrderKind,
    priority: [u8; MAX_VARS],
    nvars: u8,
}

impl MonomialOrdering {
    pub fn new(kind: OrderKind, priority: &[usize]) -> Result<Self> {
        let n = priority.len();
        let mut seen = [false; MAX_VARS];
        if n > MAX_VARS {
            return Err(Error::Input(format!("at most {MAX_VARS} variables")));
        }
        let mut p = [0u8; MAX_VARS];
        for (k, &v) in priority.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::Input("variable priority must be a permutation".into()));
            }
            seen[v] = true;
            p[k] = v as u8;
        }
        Ok(MonomialOrdering { kind, priority: p, nvars: n as u8 })
    }

    pub fn lex(n: usize) -> Self {
        Self::new(OrderKind::Lex, &(0..n).collect::<Vec<_>>()).expect("valid")
    }

    pub fn degrevlex(n: usize) -> Self {
        Self::new(OrderKind::DegRevLex, &(0..n).collect::<Vec<_>>()).expect("valid")
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn priority(&self) -> Vec<usize> {
        self.priority[..self.nvars()].iter().map(|&v| v as usize).collect()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let vars = &self.priority[..self.nvars()];
        match self.kind {
            OrderKind::Lex => {
                for &v in vars {
                    match a.0[v as usize].cmp(&b.0[v as usize]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in vars.iter().rev() {
                    match a.0[v as usize].cmp(&b.0[v as usize]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Stable text tag, e.g. `lex[0,1,2,3]`.
    pub fn tag(&self) -> String {
        let kind = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        };
        let p: Vec<String> = self.priority().iter().map(|v| v.to_string()).collect();
        format!("{kind}[{}]", p.join(","))
    }
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Polynomial with terms sorted strictly descending and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<E> {
    order: MonomialOrdering,
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone + PartialEq> MPoly<E> {
    pub fn zero(order: MonomialOrdering) -> Self {
        MPoly { order, terms: vec![] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<F: Field<Elem = E>>(f: &F, order: MonomialOrdering, mut terms: Vec<(Monomial, E)>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, E)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        MPoly { order, terms: out }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, order: MonomialOrdering, c: E) -> Self {
        Self::from_terms(f, order, vec![(Monomial::one(), c)])
    }

    pub fn var<F: Field<Elem = E>>(f: &F, order: MonomialOrdering, i: usize) -> Self {
        MPoly { order, terms: vec![(Monomial::var(i), f.one())] }
    }

    pub fn order(&self) -> MonomialOrdering {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lc(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, m: &Monomial) -> E {
        self.terms.iter().find(|(t, _)| t == m).map_or_else(|| f.zero(), |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// The same polynomial under another ordering.
    pub fn with_order(&self, order: MonomialOrdering) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { order, terms }
    }

    fn merge<F: Field<Elem = E>>(&self, f: &F, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.order, other.order);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0, c));
        }
        MPoly { order: self.order, terms: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.merge(f, other, false)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.merge(f, other, true)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        MPoly { order: self.order, terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.order);
        }
        MPoly { order: self.order, terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect() }
    }

    /// `c·m·self`; multiplication by a monomial preserves term order.
    pub fn mul_term<F: Field<Elem = E>>(&self, f: &F, m: &Monomial, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.order);
        }
        MPoly { order: self.order, terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect() }
    }

    /// `self − c·m·other`, fused to avoid building the intermediate product.
    pub fn sub_mul_term<F: Field<Elem = E>>(&self, f: &F, m: &Monomial, c: &E, other: &Self) -> Self {
        self.sub(f, &other.mul_term(f, m, c))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.mul(n), f.mul(a, b)));
            }
        }
        Self::from_terms(f, self.order, terms)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut acc = Self::constant(f, self.order, f.one());
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale(f, &f.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.0;
                let k = e[i];
                e[i] -= 1;
                (Monomial(e), f.mul(c, &f.from_i64(k as i64)))
            })
            .collect();
        Self::from_terms(f, self.order, terms)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, point: &[E]) -> E {
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                if m.0[i] > 0 {
                    t = f.mul(&t, &f.pow(x, m.0[i] as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitute `x_i ↦ subs[i]`; the result uses the ordering of `subs`.
    pub fn substitute<F: Field<Elem = E>>(&self, f: &F, subs: &[MPoly<E>]) -> MPoly<E> {
        let order = subs[0].order;
        let mut powers: Vec<Vec<MPoly<E>>> = subs.iter().map(|s| vec![MPoly::constant(f, order, f.one()), s.clone()]).collect();
        let mut acc = MPoly::zero(order);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(f, order, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.0[i] as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(f, &subs[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(f, &pw[e]);
                }
            }
            acc = acc.add(f, &t);
        }
        acc
    }

    /// Apply a coefficient map into another field.
    pub fn map_coeffs<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> MPoly<G::Elem> {
        let terms = self.terms.iter().map(|(m, c)| (*m, phi(c))).collect();
        MPoly::from_terms(g, self.order, terms)
    }

    /// Fallible variant of [`MPoly::map_coeffs`].
    pub fn try_map_coeffs<G: Field>(&self, g: &G, phi: impl Fn(&E) -> Result<G::Elem>) -> Result<MPoly<G::Elem>> {
        let terms = self.terms.iter().map(|(m, c)| Ok((*m, phi(c)?))).collect::<Result<_>>()?;
        Ok(MPoly::from_terms(g, self.order, terms))
    }

    /// Text form with the given variable names, terms in descending order.
    pub fn render<F: Field<Elem = E>>(&self, f: &F, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = (0..self.nvars())
                    .filter(|&i| m.0[i] > 0)
                    .map(|i| if m.0[i] == 1 { names[i].to_string() } else { format!("{}^{}", names[i], m.0[i]) })
                    .collect();
                if mono.is_empty() {
                    format!("({})", f.render(c))
                } else {
                    format!("({})*{}", f.render(c), mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// All monomials of degree `d` in `n` variables, descending under `order`.
pub fn monomials_of_degree(n: usize, d: u16, order: &MonomialOrdering) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u16, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(*cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, 0, d, &mut [0; MAX_VARS], &mut out);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Multivariate division: `f = Σ qᵢhᵢ + r` with no term of `r` divisible
/// by any `LT(hᵢ)`. Divisors are tried in list order.
pub fn divide<F: Field>(f: &F, p: &MPoly<F::Elem>, hs: &[MPoly<F::Elem>]) -> Result<(Vec<MPoly<F::Elem>>, MPoly<F::Elem>)> {
    if hs.is_empty() || hs.iter().any(|h| h.is_zero()) {
        return Err(Error::Input("divisors must be nonzero".into()));
    }
    let order = p.order;
    let lead: Vec<(Monomial, F::Elem)> =
        hs.iter().map(|h| (h.terms[0].0, f.inv(&h.terms[0].1).expect("nonzero"))).collect();
    let mut quotients: Vec<Vec<(Monomial, F::Elem)>> = vec![vec![]; hs.len()];
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while let Some((m, c)) = cur.terms.first().cloned() {
        match lead.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = lead[k].0.quotient_of(&m).unwrap();
                let coef = f.mul(&c, &lead[k].1);
                cur = cur.sub_mul_term(f, &q, &coef, &hs[k]);
                quotients[k].push((q, coef));
            }
            None => {
                rem.push((m, c));
                cur.terms.remove(0);
            }
        }
    }
    let qs = quotients.into_iter().map(|t| MPoly::from_terms(f, order, t)).collect();
    Ok((qs, MPoly { order, terms: rem }))
}

/// Remainder only; same algorithm as [`divide`].
pub fn reduce<F: Field>(f: &F, p: &MPoly<F::Elem>, hs: &[MPoly<F::Elem>]) -> MPoly<F::Elem> {
    let lead: Vec<(Monomial, F::Elem)> =
        hs.iter().filter(|h| !h.is_zero()).map(|h| (h.terms[0].0, f.inv(&h.terms[0].1).expect("nonzero"))).collect();
    let hs: Vec<&MPoly<F::Elem>> = hs.iter().filter(|h| !h.is_zero()).collect();
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while let Some((m, c)) = cur.terms.first().cloned() {
        match lead.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = lead[k].0.quotient_of(&m).unwrap();
                let coef = f.mul(&c, &lead[k].1);
                cur = cur.sub_mul_term(f, &q, &coef, hs[k]);
            }
            None => {
                rem.push((m, c));
                cur.terms.remove(0);
            }
        }
    }
    MPoly { order: p.order, terms: rem }
}

/// `S(f, g) = (L/LT(f))·f − (L/LT(g))·g` with `L = lcm(LM(f), LM(g))`.
pub fn s_polynomial<F: Field>(f: &F, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> MPoly<F::Elem> {
    let (ma, ca) = a.leading_term().expect("nonzero").clone();
    let (mb, cb) = b.leading_term().expect("nonzero").clone();
    let l = ma.lcm(&mb);
    let ta = ma.quotient_of(&l).unwrap();
    let tb = mb.quotient_of(&l).unwrap();
    let pa = a.mul_term(f, &ta, &f.inv(&ca).unwrap());
    let pb = b.mul_term(f, &tb, &f.inv(&cb).unwrap());
    pa.sub(f, &pb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{QField, Rational};
    use crate::arith::rational::rat_int;

    fn x(i: usize) -> MPoly<Rational> {
        MPoly::var(&QField, MonomialOrdering::lex(4), i)
    }

    #[test]
    fn orderings_compare_as_expected() {
        let lex = MonomialOrdering::lex(3);
        let drl = MonomialOrdering::degrevlex(3);
        let a = Monomial::from_exps(&[1, 0, 0]);
        let b = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(drl.cmp(&a, &b), Ordering::Less);
        // x·z² < y³? no: degrevlex looks at the last variable first.
        let c = Monomial::from_exps(&[1, 1, 1]);
        let d = Monomial::from_exps(&[0, 3, 0]);
        assert_eq!(drl.cmp(&c, &d), Ordering::Less);
        let perm = MonomialOrdering::new(OrderKind::Lex, &[2, 0, 1]).unwrap();
        assert_eq!(perm.cmp(&Monomial::var(2), &Monomial::var(0)), Ordering::Greater);
        assert_eq!(monomials_of_degree(4, 3, &lex).len(), 20);
        assert_eq!(monomials_of_degree(4, 4, &lex).len(), 35);
    }

    #[test]
    fn division_by_fermat_polynomial() {
        let f = QField;
        let fermat = (0..4).fold(MPoly::zero(MonomialOrdering::lex(4)), |acc, i| acc.add(&f, &x(i).pow(&f, 4)));
        let (q, r) = divide(&f, &x(0).pow(&f, 4), std::slice::from_ref(&fermat)).unwrap();
        let want = (1..4).fold(MPoly::zero(MonomialOrdering::lex(4)), |acc, i| acc.sub(&f, &x(i).pow(&f, 4)));
        assert_eq!(r, want);
        assert_eq!(q[0], MPoly::constant(&f, MonomialOrdering::lex(4), rat_int(1)));
        let (_, r) = divide(&f, &fermat, std::slice::from_ref(&fermat)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn s_polynomials() {
        let f = QField;
        let p = x(0).mul(&f, &x(1)).add(&f, &x(2));
        assert!(s_polynomial(&f, &p, &p).is_zero());
        let a = x(0).pow(&f, 2);
        let b = x(1).pow(&f, 2);
        let s = s_polynomial(&f, &a, &b);
        assert!(reduce(&f, &s, &[a, b]).is_zero());
    }

    #[test]
    fn substitution_and_derivative() {
        let f = QField;
        let p = x(0).pow(&f, 2).add(&f, &x(1));
        let q = p.substitute(&f, &[x(1), x(0), x(2), x(3)]);
        assert_eq!(q, x(1).pow(&f, 2).add(&f, &x(0)));
        assert_eq!(p.derivative(&f, 0), x(0).scale(&f, &rat_int(2)));
        assert_eq!(p.eval(&f, &[rat_int(3), rat_int(1), rat_int(0), rat_int(0)]), rat_int(10));
    }
}
