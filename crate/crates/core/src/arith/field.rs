use std::fmt::Debug;
use std::hash::Hash;

/// An exact field given as a context object; elements carry no reference to
/// their field, so algorithms take `&F` alongside the values.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Human-readable rendering of an element.
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a / b`; panics on division by zero.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A square root in the field, if one exists.
    fn sqrt(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }
}
