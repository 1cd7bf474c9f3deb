use std::fmt;

use thiserror::Error;

use super::moduli;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported extension degree {0} (need 1..=32)")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {degree}")]
    Reducible { degree: u32, modulus: u64 },
    #[error("{bits:#x} is not an element of GF(2^{degree})")]
    OutOfRange { degree: u32, bits: u64 },
    #[error("no element of order {order} in GF(2^{degree}); smallest degree that works is {minimal_degree}")]
    NoRootOfUnity { order: u64, degree: u32, minimal_degree: u32 },
    #[error("roots of unity of even order {0} do not exist in characteristic 2 beyond order 1")]
    EvenOrder(u64),
}

/// An element of GF(2^k) in the power basis; bit i is the coefficient of x^i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
    pub fn bits(self) -> u64 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{:x}}}", self.0)
    }
}

/// GF(2^k) for 1 ≤ k ≤ 32 with a fixed modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    degree: u32,
    modulus: u64,
}

impl FiniteField {
    /// The field with the shipped primitive modulus for `degree`.
    pub fn new(degree: u32) -> Result<Self, FieldError> {
        let modulus = moduli::modulus_for(degree).ok_or(FieldError::UnsupportedDegree(degree))?;
        Self::with_modulus(degree, modulus)
    }

    /// Checks irreducibility with Rabin's test before accepting the modulus.
    pub fn with_modulus(degree: u32, modulus: u64) -> Result<Self, FieldError> {
        if !(1..=32).contains(&degree) {
            return Err(FieldError::UnsupportedDegree(degree));
        }
        if gf2x::degree(modulus) != Some(degree) || !gf2x::is_irreducible(modulus) {
            return Err(FieldError::Reducible { degree, modulus });
        }
        Ok(FiniteField { degree, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }
    /// |F*| = 2^k − 1
    pub fn group_order(&self) -> u64 {
        self.size() - 1
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement, FieldError> {
        if bits >> self.degree != 0 {
            return Err(FieldError::OutOfRange { degree: self.degree, bits });
        }
        Ok(FieldElement(bits))
    }

    /// The class of x; a generator of F* because the shipped moduli are primitive.
    pub fn generator(&self) -> FieldElement {
        if self.degree == 1 {
            FieldElement::ONE
        } else {
            FieldElement(2)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(gf2x::mulmod(a.0, b.0, self.modulus, self.degree))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.group_order() - 1))
        }
    }

    /// The unique square root: e^(2^(k−1)).
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.degree {
            r = self.square(r);
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.group_order();
        let mut order = n;
        for p in prime_factors(n) {
            while order.is_multiple_of(p) && self.pow(a, order / p) == FieldElement::ONE {
                order /= p;
            }
        }
        Some(order)
    }

    /// An element of exact order `n`, namely g^((2^k − 1)/n).
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElement, FieldError> {
        if n == 0 || n.is_multiple_of(2) {
            return Err(FieldError::EvenOrder(n));
        }
        let q = self.group_order();
        if !q.is_multiple_of(n) {
            return Err(FieldError::NoRootOfUnity {
                order: n,
                degree: self.degree,
                minimal_degree: multiplicative_order_of_two(n),
            });
        }
        Ok(self.pow(self.generator(), q / n))
    }

    /// Absolute trace to GF(2); z² + z = c is solvable iff Tr(c) = 0.
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        let mut acc = a;
        let mut cur = a;
        for _ in 1..self.degree {
            cur = self.square(cur);
            acc = self.add(acc, cur);
        }
        acc
    }
}

/// Smallest k with 2^k ≡ 1 (mod n), for odd n.
pub fn multiplicative_order_of_two(n: u64) -> u32 {
    if n <= 1 {
        return 1;
    }
    let mut k = 1;
    let mut v = 2 % n;
    while v != 1 {
        v = (v * 2) % n;
        k += 1;
    }
    k
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomials over GF(2) packed into a u64.
pub mod gf2x {
    pub fn degree(a: u64) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(63 - a.leading_zeros())
        }
    }

    pub fn rem(mut a: u64, m: u64) -> u64 {
        let dm = degree(m).expect("nonzero modulus");
        while let Some(da) = degree(a) {
            if da < dm {
                break;
            }
            a ^= m << (da - dm);
        }
        a
    }

    /// a·b mod m where deg a, deg b < k = deg m ≤ 32.
    pub fn mulmod(a: u64, b: u64, m: u64, k: u32) -> u64 {
        let mut acc: u64 = 0;
        let mut x = a;
        let mut y = b;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if (x >> k) & 1 == 1 {
                x ^= m;
            }
        }
        acc
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }

    /// x^(2^e) mod m
    fn frobenius_power_of_x(e: u32, m: u64, k: u32) -> u64 {
        let mut r = rem(0b10, m);
        for _ in 0..e {
            r = mulmod(r, r, m, k);
        }
        r
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(m: u64) -> bool {
        let Some(k) = degree(m) else { return false };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = 0b10;
        if frobenius_power_of_x(k, m, k) != rem(x, m) {
            return false;
        }
        for q in super::prime_factors(k as u64) {
            let h = frobenius_power_of_x(k / q as u32, m, k) ^ x;
            if gcd(m, h) != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_sqrt_of_generator() {
        let f = FiniteField::new(2).unwrap();
        let w = f.generator();
        assert_eq!(f.sqrt(w), f.square(w));
    }

    #[test]
    fn sqrt_one_is_one() {
        for k in [1, 5, 17, 32] {
            let f = FiniteField::new(k).unwrap();
            assert_eq!(f.sqrt(FieldElement::ONE), FieldElement::ONE);
        }
    }

    #[test]
    fn roots_of_unity_small() {
        let f10 = FiniteField::new(10).unwrap();
        let z = f10.root_of_unity(11).unwrap();
        assert_eq!(f10.element_order(z), Some(11));
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.element_order(f4.root_of_unity(5).unwrap()), Some(5));
        let f3 = FiniteField::new(3).unwrap();
        assert_eq!(f3.element_order(f3.root_of_unity(7).unwrap()), Some(7));
    }

    #[test]
    fn missing_root_reports_minimal_degree() {
        let f = FiniteField::new(4).unwrap();
        match f.root_of_unity(11) {
            Err(FieldError::NoRootOfUnity { minimal_degree, .. }) => assert_eq!(minimal_degree, 10),
            other => panic!("{other:?}"),
        }
        let f6 = FiniteField::new(6).unwrap();
        assert!(f6.root_of_unity(7).is_ok());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^4 + 1 = (x + 1)^4
        assert!(FiniteField::with_modulus(4, 0b10001).is_err());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive
        assert!(FiniteField::with_modulus(4, 0b11111).is_ok());
    }

    #[test]
    fn inverse_round_trip() {
        let f = FiniteField::new(8).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
        assert_eq!(f.inv(FieldElement::ZERO), None);
    }
}
