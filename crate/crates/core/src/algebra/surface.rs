use super::poly::MultiPoly;
use super::ratfn::RationalFunction;
use super::AlgebraError;

/// y² + g₀·y + R = 0 with g₀, R free of y.
///
/// Functions on the surface are reduced with y² ↦ g₀·y + R until they are
/// linear in y; over k(t, x) the classes 1, y are a basis, so a reduced
/// numerator is zero on the surface exactly when it is the zero polynomial.
#[derive(Clone, Debug)]
pub struct SurfaceEquation {
    poly: MultiPoly,
    y: usize,
    g0: MultiPoly,
    rest: MultiPoly,
}

impl SurfaceEquation {
    pub fn new(poly: MultiPoly, y: usize) -> Result<Self, AlgebraError> {
        let name = poly.ring().names()[y].clone();
        let coeffs = poly.coefficients_in(y);
        if coeffs.len() != 3 {
            return Err(AlgebraError::NotMonicQuadratic { var: name, detail: format!("degree {}", coeffs.len() - 1) });
        }
        if coeffs[2] != MultiPoly::one(poly.ring()) {
            return Err(AlgebraError::NotMonicQuadratic { var: name, detail: format!("leading coefficient {}", coeffs[2]) });
        }
        Ok(SurfaceEquation { g0: coeffs[1].clone(), rest: coeffs[0].clone(), poly, y })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }
    pub fn dependent(&self) -> usize {
        self.y
    }
    /// Coefficient of y.
    pub fn linear_coefficient(&self) -> &MultiPoly {
        &self.g0
    }
    pub fn constant_part(&self) -> &MultiPoly {
        &self.rest
    }

    /// Remainder of `p` modulo the equation, of degree ≤ 1 in y.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let mut c = p.coefficients_in(self.y);
        if c.len() <= 2 {
            return p.clone();
        }
        for j in (2..c.len()).rev() {
            if c[j].is_zero() {
                continue;
            }
            let top = std::mem::replace(&mut c[j], MultiPoly::zero(p.ring()));
            c[j - 1] = c[j - 1].add(&top.mul(&self.g0));
            c[j - 2] = c[j - 2].add(&top.mul(&self.rest));
        }
        let y = MultiPoly::var(p.ring(), self.y);
        c[0].add(&c[1].mul(&y))
    }

    pub fn vanishes(&self, f: &RationalFunction) -> bool {
        self.reduce(f.num()).is_zero()
    }

    pub fn agree(&self, a: &RationalFunction, b: &RationalFunction) -> bool {
        self.reduce(&a.cross_difference(b)).is_zero()
    }
}
