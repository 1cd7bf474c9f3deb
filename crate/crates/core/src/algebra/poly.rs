use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, FiniteField};

/// Coefficient field plus an ordered list of variable names.
///
/// Geometric variables and parameters live side by side; the distinction only
/// matters to callers that specialize parameters.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FiniteField,
    names: Vec<String>,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: FiniteField, names: Vec<String>) -> Ring {
        Arc::new(PolyRing { field, names })
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }
    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }
    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over GF(2^k); zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }
    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, FieldElement::ONE)
    }
    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), FieldElement::ONE)
    }
    pub fn monomial(ring: &Ring, m: Monomial, c: FieldElement) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn field(&self) -> &FiniteField {
        self.ring.field()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    /// Value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::ZERO),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then_some(*c)
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = *self.ring.field();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let f = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(same_ring(&self.ring, &other.ring));
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(c);
        }
        let f = *self.field();
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(FieldElement::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Frobenius: (Σ c m)² = Σ c² m² in characteristic 2.
    pub fn square(&self) -> MultiPoly {
        let f = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().map(|e| 2 * e).collect()), f.square(*c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Formal partial derivative; exponents are read mod 2.
    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[var] % 2 == 1 {
                let mut e = m.0.clone();
                e[var] -= 1;
                out.add_term(Monomial(e), *c);
            }
        }
        out
    }

    /// Coefficients as polynomials in the remaining variables, indexed by power of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var] as usize;
            e[var] = 0;
            out[k].add_term(Monomial(e), *c);
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let f = self.field();
        let mut acc = FieldElement::ZERO;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    v = f.mul(v, f.pow(*x, *e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Replace selected variables by constants, keeping the ring.
    pub fn specialize(&self, values: &[Option<FieldElement>]) -> MultiPoly {
        let f = *self.field();
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut v = *c;
            for (i, val) in values.iter().enumerate() {
                if let Some(x) = val {
                    v = f.mul(v, f.pow(*x, e[i] as u64));
                    e[i] = 0;
                }
            }
            out.add_term(Monomial(e), v);
        }
        out
    }

    /// Largest monomial dividing every term (the zero polynomial gives 1).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.div(m), *c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), *c)).collect(),
        }
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.terms.values().next_back().copied()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &PolyRing, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, e) in m.0.iter().enumerate() {
        if *e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.names[i])?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order; non-unit coefficients as `{hex}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (m.is_one(), *c == FieldElement::ONE) {
                (true, _) => {
                    if *c == FieldElement::ONE {
                        f.write_str("1")?
                    } else {
                        write!(f, "{c}")?
                    }
                }
                (false, true) => write_monomial(f, &self.ring, m)?,
                (false, false) => {
                    write!(f, "{c}*")?;
                    write_monomial(f, &self.ring, m)?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Ring {
        PolyRing::new(FiniteField::new(1).unwrap(), names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn frobenius_on_binomial() {
        let r = ring(&["x", "y"]);
        let s = MultiPoly::var(&r, 0).add(&MultiPoly::var(&r, 1));
        let sq = s.mul(&s);
        assert_eq!(sq, MultiPoly::var(&r, 0).square().add(&MultiPoly::var(&r, 1).square()));
        assert_eq!(sq, s.square());
        assert_eq!(sq.to_string(), "x^2 + y^2");
    }

    #[test]
    fn char_two_cancellation() {
        let r = ring(&["x"]);
        let x = MultiPoly::var(&r, 0);
        assert!(x.add(&x).is_zero());
    }

    #[test]
    fn partial_kills_even_powers() {
        let r = ring(&["x", "y"]);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = x.pow(3).mul(&y).add(&x.pow(2));
        assert_eq!(p.partial(0), x.pow(2).mul(&y));
        assert_eq!(p.partial(1), x.pow(3));
    }

    #[test]
    fn display_order_is_graded_lex_descending() {
        let r = ring(&["t", "x", "y"]);
        let t = MultiPoly::var(&r, 0);
        let x = MultiPoly::var(&r, 1);
        let y = MultiPoly::var(&r, 2);
        let p = y.pow(2).add(&t.mul(&x.pow(4))).add(&x).add(&t.pow(7));
        assert_eq!(p.to_string(), "t^7 + t*x^4 + y^2 + x");
    }
}
