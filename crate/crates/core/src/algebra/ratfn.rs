use std::fmt;

use super::field::FieldElement;
use super::poly::{same_ring, MultiPoly, Ring};
use super::AlgebraError;

/// num/den with den ≠ 0. No gcd normalization beyond monomial content and
/// constant denominators; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::tidy(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.ring());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_poly(MultiPoly::zero(ring))
    }
    pub fn one(ring: &Ring) -> Self {
        Self::from_poly(MultiPoly::one(ring))
    }
    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        Self::from_poly(MultiPoly::constant(ring, c))
    }
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(ring, i))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }
    pub fn den(&self) -> &MultiPoly {
        &self.den
    }
    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    /// The polynomial value when the denominator is a constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let c = self.den.as_constant()?;
        let inv = self.num.field().inv(c)?;
        Some(self.num.scale(inv))
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        let p = self.as_poly()?;
        p.as_constant()
    }

    /// Cancel the common monomial factor, fold constant denominators into the
    /// numerator and make the denominator's leading coefficient 1.
    fn tidy(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            let one = MultiPoly::one(num.ring());
            return RationalFunction { num, den: one };
        }
        let (mut num, mut den) = (num, den);
        let g = {
            let a = num.monomial_content();
            let b = den.monomial_content();
            let e: Vec<u32> = a.exponents().iter().zip(b.exponents()).map(|(x, y)| *x.min(y)).collect();
            super::poly::Monomial::from_exponents(e)
        };
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        if let Some(lc) = den.leading_coefficient() {
            if lc != FieldElement::ONE {
                let inv = den.field().inv(lc).expect("nonzero leading coefficient");
                num = num.scale(inv);
                den = den.scale(inv);
            }
        }
        if num == den {
            let one = MultiPoly::one(num.ring());
            return RationalFunction { num: one.clone(), den: one };
        }
        RationalFunction { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(same_ring(self.ring(), other.ring()));
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::tidy(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::tidy(num, self.den.mul(&other.den))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring());
        }
        if self.den == other.num && !self.den.is_zero() {
            return Self::tidy(self.num.clone(), other.den.clone());
        }
        if other.den == self.num {
            return Self::tidy(other.num.clone(), self.den.clone());
        }
        Self::tidy(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        Self::tidy(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::tidy(self.num.scale(c), self.den.clone())
    }

    pub fn square(&self) -> Self {
        Self::tidy(self.num.square(), self.den.square())
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::tidy(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self::tidy(base.num.pow(k), base.den.pow(k)))
    }

    /// Cross-multiplied difference num·other.den − other.num·den.
    pub fn cross_difference(&self, other: &Self) -> MultiPoly {
        self.num.mul(&other.den).add(&other.num.mul(&self.den))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.cross_difference(other).is_zero()
    }

    /// ∂(p/q) = (p′q + pq′)/q² in characteristic 2.
    pub fn partial(&self, var: usize) -> Self {
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Self::tidy(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).add(&self.num.mul(&dd));
        Self::tidy(num, self.den.square())
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(&self, images: &[Option<RationalFunction>]) -> Result<Self, AlgebraError> {
        let n = self.num.substitute(images)?;
        let d = self.den.substitute(images)?;
        n.div(&d)
    }

    pub fn specialize(&self, values: &[Option<FieldElement>]) -> Result<Self, AlgebraError> {
        Self::new(self.num.specialize(values), self.den.specialize(values))
    }

    pub fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        let d = self.den.eval(point);
        let f = self.num.field();
        f.inv(d).map(|i| f.mul(self.num.eval(point), i))
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.num.uses_var(var) || self.den.uses_var(var)
    }
}

impl MultiPoly {
    /// Substitute rational images for variables; `None` keeps a variable.
    ///
    /// Uses one common denominator Π dᵢ^{deg_i}, so each term costs a product
    /// of cached powers.
    pub fn substitute(&self, images: &[Option<RationalFunction>]) -> Result<RationalFunction, AlgebraError> {
        let ring = self.ring().clone();
        let nv = ring.nvars();
        if images.len() != nv {
            return Err(AlgebraError::ArityMismatch { expected: nv, got: images.len() });
        }
        let degs: Vec<u32> = (0..nv).map(|i| if images[i].is_some() { self.degree_in(i) } else { 0 }).collect();
        let mut num_pows: Vec<Vec<MultiPoly>> = Vec::with_capacity(nv);
        let mut den_pows: Vec<Vec<MultiPoly>> = Vec::with_capacity(nv);
        for i in 0..nv {
            let (mut np, mut dp) = (vec![MultiPoly::one(&ring)], vec![MultiPoly::one(&ring)]);
            if let Some(img) = &images[i] {
                for k in 1..=degs[i] as usize {
                    np.push(np[k - 1].mul(img.num()));
                    dp.push(dp[k - 1].mul(img.den()));
                }
            }
            num_pows.push(np);
            den_pows.push(dp);
        }
        let mut total = MultiPoly::zero(&ring);
        for (m, c) in self.terms() {
            let mut kept = m.exponents().to_vec();
            let mut term = MultiPoly::constant(&ring, *c);
            for i in 0..nv {
                if images[i].is_some() {
                    let e = m.exponents()[i] as usize;
                    kept[i] = 0;
                    term = term.mul(&num_pows[i][e]);
                    let rest = degs[i] as usize - e;
                    if rest > 0 {
                        term = term.mul(&den_pows[i][rest]);
                    }
                }
            }
            let mono = super::poly::Monomial::from_exponents(kept);
            term = term.mul_monomial(&mono);
            total = total.add(&term);
        }
        let mut den = MultiPoly::one(&ring);
        for i in 0..nv {
            if images[i].is_some() && degs[i] > 0 {
                den = den.mul(&den_pows[i][degs[i] as usize]);
            }
        }
        RationalFunction::new(total, den)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}
