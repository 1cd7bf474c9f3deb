//! Rational vector fields in characteristic 2.
//!
//! A field is `f·(g₁ ∂/∂v₁ + g₂ ∂/∂v₂)` on k(v₁, v₂), optionally on a surface
//! y² + g₀y + R = 0 over k(v₁, v₂), in which case D(y) is forced by D(F) = 0.

use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteField, ParseError, PolyRing, RationalFunction, Ring, Scope, SurfaceEquation};

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the field differentiates nothing: D kills every coordinate")]
    Degenerate,
    #[error("the surface equation has no y-term, so D(y) is undetermined")]
    InseparableSurface,
    #[error("{0} is not substituted")]
    Unsubstituted(String),
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("odd self-intersection {0} cannot be halved")]
    OddSelfIntersection(i64),
}

#[derive(Clone, Debug)]
pub struct VectorField {
    ring: Ring,
    variables: Vec<usize>,
    coefficients: Vec<RationalFunction>,
    prefactor: RationalFunction,
    surface: Option<SurfaceEquation>,
    /// D(v) for every ring variable; None for variables D treats as constants.
    images: Vec<Option<RationalFunction>>,
}

impl VectorField {
    /// `variables[i]` is differentiated with coefficient `prefactor·coefficients[i]`.
    pub fn new(
        variables: Vec<usize>,
        coefficients: Vec<RationalFunction>,
        prefactor: RationalFunction,
        surface: Option<SurfaceEquation>,
    ) -> Result<Self, DerivationError> {
        let ring = prefactor.ring().clone();
        if variables.len() != coefficients.len() {
            return Err(AlgebraError::ArityMismatch { expected: variables.len(), got: coefficients.len() }.into());
        }
        let mut images: Vec<Option<RationalFunction>> = vec![None; ring.nvars()];
        for (v, c) in variables.iter().zip(&coefficients) {
            images[*v] = Some(prefactor.mul(c));
        }
        if let Some(s) = &surface {
            // D(F) = Σ D(v)·∂F/∂v + D(y)·g₀ = 0
            let f = RationalFunction::from_poly(s.poly().clone());
            let mut acc = RationalFunction::zero(&ring);
            for v in &variables {
                acc = acc.add(&images[*v].as_ref().expect("set above").mul(&f.partial(*v)));
            }
            let g0 = RationalFunction::from_poly(s.linear_coefficient().clone());
            if g0.is_zero() {
                return Err(DerivationError::InseparableSurface);
            }
            images[s.dependent()] = Some(acc.div(&g0)?);
        }
        Ok(VectorField { ring, variables, coefficients, prefactor, surface, images })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn variables(&self) -> &[usize] {
        &self.variables
    }
    pub fn coefficients(&self) -> &[RationalFunction] {
        &self.coefficients
    }
    pub fn prefactor(&self) -> &RationalFunction {
        &self.prefactor
    }
    pub fn surface(&self) -> Option<&SurfaceEquation> {
        self.surface.as_ref()
    }

    /// D(v) for a ring variable (zero for parameters).
    pub fn image(&self, var: usize) -> RationalFunction {
        self.images[var].clone().unwrap_or_else(|| RationalFunction::zero(&self.ring))
    }

    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero(&self.ring);
        for (v, img) in self.images.iter().enumerate() {
            if let Some(img) = img {
                let d = f.partial(v);
                if !d.is_zero() {
                    acc = acc.add(&img.mul(&d));
                }
            }
        }
        acc
    }

    /// Equality of functions, modulo the surface equation when there is one.
    pub fn same_function(&self, a: &RationalFunction, b: &RationalFunction) -> bool {
        match &self.surface {
            Some(s) => s.agree(a, b),
            None => a.equals(b),
        }
    }

    pub fn is_zero_function(&self, f: &RationalFunction) -> bool {
        match &self.surface {
            Some(s) => s.vanishes(f),
            None => f.is_zero(),
        }
    }

    /// D² = 0, D² = cD, or neither. D² − cD is again a derivation, so it is
    /// enough to test the coordinates.
    pub fn p_closed_type(&self) -> Result<PClosedType, DerivationError> {
        let firsts: Vec<RationalFunction> = self.variables.iter().map(|v| self.image(*v)).collect();
        let seconds: Vec<RationalFunction> = firsts.iter().map(|d| self.apply(d)).collect();
        if firsts.iter().all(|d| self.is_zero_function(d)) {
            return Err(DerivationError::Degenerate);
        }
        if seconds.iter().all(|d| self.is_zero_function(d)) {
            return Ok(PClosedType::Additive);
        }
        let pivot = firsts.iter().position(|d| !self.is_zero_function(d)).expect("checked above");
        let c = seconds[pivot].div(&firsts[pivot])?;
        let consistent = firsts.iter().zip(&seconds).all(|(d1, d2)| self.same_function(d2, &c.mul(d1)));
        Ok(if consistent { PClosedType::MultiplicativeLike(c) } else { PClosedType::NotPClosed })
    }

    pub fn verify_invariant(&self, f: &RationalFunction) -> bool {
        self.is_zero_function(&self.apply(f))
    }

    /// Substitutes `images[i]` for the variable `new_vars[i]` in `relation`
    /// and tests the result for zero on the source of D. Ring variables that
    /// are neither substituted nor differentiated (parameters) stay as they are.
    pub fn verify_relation(
        &self,
        substitutions: &[(usize, RationalFunction)],
        relation: &RationalFunction,
    ) -> Result<bool, DerivationError> {
        let mut slots: Vec<Option<RationalFunction>> = vec![None; self.ring.nvars()];
        for (v, img) in substitutions {
            slots[*v] = Some(img.clone());
        }
        for v in 0..self.ring.nvars() {
            if relation.uses_var(v) && slots[v].is_none() && self.images[v].is_some() {
                return Err(DerivationError::Unsubstituted(self.ring.names()[v].clone()));
            }
        }
        let value = relation.substitute(&slots)?;
        Ok(self.is_zero_function(&value))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let parts: Vec<String> =
            self.variables.iter().zip(&self.coefficients).map(|(v, c)| format!("({c}) d/d{}", names[*v])).collect();
        write!(f, "({}) * [{}]", self.prefactor, parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub enum PClosedType {
    Additive,
    MultiplicativeLike(RationalFunction),
    NotPClosed,
}

impl fmt::Display for PClosedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PClosedType::Additive => write!(f, "D^2 = 0"),
            PClosedType::MultiplicativeLike(c) => write!(f, "D^2 = ({c}) D"),
            PClosedType::NotPClosed => write!(f, "not 2-closed"),
        }
    }
}

/// Divisors on the blown-up surface, in the basis of named curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBookkeeping {
    pub curves: Vec<String>,
    /// Symmetric; None when only the scalar values below are known.
    pub intersections: Option<Vec<Vec<i64>>>,
    pub divisor: Vec<i64>,
    pub canonical: Vec<i64>,
    pub c2: i64,
    /// Stated ((D)², K·(D)), used when there is no matrix.
    pub claimed: Option<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RsDegree {
    pub divisor_square: i64,
    pub canonical_dot_divisor: i64,
    /// deg⟨D⟩ = c₂ + K·(D) + (D)².
    pub isolated_degree: i64,
}

impl DivisorBookkeeping {
    pub fn validate(&self) -> Result<(), DerivationError> {
        let n = self.curves.len();
        if self.divisor.len() != n || self.canonical.len() != n {
            return Err(DerivationError::Spec(format!("coefficient vectors must have {n} entries")));
        }
        if let Some(m) = &self.intersections {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(DerivationError::Spec("intersection matrix has the wrong shape".into()));
            }
            for i in 0..n {
                for j in 0..i {
                    if m[i][j] != m[j][i] {
                        return Err(DerivationError::Spec(format!("intersection matrix not symmetric at ({i},{j})")));
                    }
                }
            }
        } else if self.claimed.is_none() {
            return Err(DerivationError::Spec("need an intersection matrix or stated values".into()));
        }
        Ok(())
    }

    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Option<i64> {
        let m = self.intersections.as_ref()?;
        Some((0..a.len()).map(|i| (0..b.len()).map(|j| a[i] * m[i][j] * b[j]).sum::<i64>()).sum())
    }

    /// ((D)², K·(D)) from the matrix when present, else the stated values.
    pub fn numbers(&self) -> (i64, i64) {
        match (self.pairing(&self.divisor, &self.divisor), self.pairing(&self.canonical, &self.divisor)) {
            (Some(d2), Some(kd)) => (d2, kd),
            _ => self.claimed.expect("validated"),
        }
    }

    pub fn self_intersection(&self, curve: usize) -> Option<i64> {
        self.intersections.as_ref().map(|m| m[curve][curve])
    }
}

/// deg⟨D⟩ from c₂(Y) = deg⟨D⟩ − K_Y·(D) − (D)².
pub fn rs_deg_isolated(book: &DivisorBookkeeping) -> RsDegree {
    let (d2, kd) = book.numbers();
    RsDegree { divisor_square: d2, canonical_dot_divisor: kd, isolated_degree: book.c2 + kd + d2 }
}

/// Self-intersection of the image of C in Y^D for p = 2.
pub fn quotient_selfint(self_intersection: i64, integral: bool) -> Result<i64, DerivationError> {
    if integral {
        if self_intersection % 2 != 0 {
            return Err(DerivationError::OddSelfIntersection(self_intersection));
        }
        Ok(self_intersection / 2)
    } else {
        Ok(2 * self_intersection)
    }
}

// ---------------------------------------------------------------------------
// Spec files

pub const SPEC_FORMAT: &str = "derivation-spec";
pub const SPEC_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    format: String,
    version: u32,
    name: String,
    #[serde(default)]
    description: String,
    #[serde(default = "default_degree")]
    field_degree: u32,
    variables: Vec<String>,
    #[serde(default)]
    parameters: Vec<String>,
    #[serde(default)]
    surface: Option<SurfaceSpec>,
    #[serde(default)]
    definitions: Vec<(String, String)>,
    #[serde(default = "default_prefactor")]
    prefactor: String,
    coefficients: Vec<String>,
    #[serde(default)]
    expected: Option<ExpectedType>,
    #[serde(default)]
    invariants: Vec<String>,
    #[serde(default)]
    quotient: Option<QuotientSpec>,
    #[serde(default)]
    bookkeeping: Option<BookkeepingSpec>,
}

fn default_degree() -> u32 {
    1
}
fn default_prefactor() -> String {
    "1".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceSpec {
    equation: String,
    dependent: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "snake_case")]
enum ExpectedType {
    Additive,
    Multiplicative { c: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientSpec {
    substitutions: Vec<(String, String)>,
    relation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BookkeepingSpec {
    curves: Vec<String>,
    #[serde(default)]
    intersections: Option<Vec<Vec<i64>>>,
    divisor: Vec<i64>,
    canonical: Vec<i64>,
    c2: i64,
    #[serde(default)]
    divisor_square: Option<i64>,
    #[serde(default)]
    canonical_dot_divisor: Option<i64>,
    #[serde(default)]
    images: Vec<ImageClaim>,
}

/// Stated self-intersection of the image of a curve in the quotient.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ImageClaim {
    pub curve: String,
    pub integral: bool,
    pub self_intersection: i64,
}

#[derive(Clone, Debug)]
pub enum ExpectedClosure {
    Additive,
    Multiplicative(RationalFunction),
}

/// A parsed derivation spec: the field, what is claimed about it, and the
/// quotient data.
#[derive(Clone, Debug)]
pub struct DerivationSpec {
    pub name: String,
    pub description: String,
    pub field: VectorField,
    pub expected: Option<ExpectedClosure>,
    pub invariants: Vec<(String, RationalFunction)>,
    pub substitutions: Vec<(usize, RationalFunction)>,
    pub relation: Option<(String, RationalFunction)>,
    pub bookkeeping: Option<DivisorBookkeeping>,
    pub bookkeeping_claims: (Option<i64>, Option<i64>),
    pub images: Vec<ImageClaim>,
}

impl DerivationSpec {
    pub fn parse(text: &str) -> Result<Self, DerivationError> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| DerivationError::Spec(e.to_string()))?;
        if file.format != SPEC_FORMAT || file.version != SPEC_VERSION {
            return Err(DerivationError::Spec(format!("unsupported header {} v{}", file.format, file.version)));
        }
        let mut names: Vec<String> = file.variables.clone();
        let dependent = file.surface.as_ref().map(|s| s.dependent.clone());
        names.extend(dependent.iter().cloned());
        names.extend(file.parameters.iter().cloned());
        if let Some(q) = &file.quotient {
            names.extend(q.substitutions.iter().map(|(n, _)| n.clone()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(DerivationError::Spec(format!("name {n} declared twice")));
            }
        }
        let field = FiniteField::new(file.field_degree).map_err(AlgebraError::from)?;
        let ring = PolyRing::new(field, names);
        let mut scope = Scope::new(&ring);
        for (name, src) in &file.definitions {
            let value = scope.parse(src)?;
            scope.define(name, value);
        }
        let surface = match &file.surface {
            Some(s) => {
                let poly = scope.parse_poly(&s.equation)?;
                let y = ring.index_of(&s.dependent).expect("declared above");
                Some(SurfaceEquation::new(poly, y)?)
            }
            None => None,
        };
        let variables: Vec<usize> = file.variables.iter().map(|v| ring.index_of(v).expect("declared above")).collect();
        let coefficients = file.coefficients.iter().map(|c| scope.parse(c)).collect::<Result<Vec<_>, _>>()?;
        let prefactor = scope.parse(&file.prefactor)?;
        let vf = VectorField::new(variables, coefficients, prefactor, surface)?;
        let expected = match &file.expected {
            None => None,
            Some(ExpectedType::Additive) => Some(ExpectedClosure::Additive),
            Some(ExpectedType::Multiplicative { c }) => Some(ExpectedClosure::Multiplicative(scope.parse(c)?)),
        };
        let invariants =
            file.invariants.iter().map(|s| Ok((s.clone(), scope.parse(s)?))).collect::<Result<Vec<_>, DerivationError>>()?;
        let (substitutions, relation) = match &file.quotient {
            Some(q) => {
                let subs = q
                    .substitutions
                    .iter()
                    .map(|(n, s)| Ok((ring.index_of(n).expect("declared above"), scope.parse(s)?)))
                    .collect::<Result<Vec<_>, DerivationError>>()?;
                (subs, Some((q.relation.clone(), scope.parse(&q.relation)?)))
            }
            None => (Vec::new(), None),
        };
        let (bookkeeping, claims, images) = match file.bookkeeping {
            Some(b) => {
                let claimed = match (b.divisor_square, b.canonical_dot_divisor) {
                    (Some(d), Some(k)) => Some((d, k)),
                    _ => None,
                };
                let book = DivisorBookkeeping {
                    curves: b.curves,
                    intersections: b.intersections,
                    divisor: b.divisor,
                    canonical: b.canonical,
                    c2: b.c2,
                    claimed,
                };
                book.validate()?;
                for img in &b.images {
                    if !book.curves.contains(&img.curve) {
                        return Err(DerivationError::Spec(format!("image claim for unknown curve {}", img.curve)));
                    }
                }
                (Some(book), (b.divisor_square, b.canonical_dot_divisor), b.images)
            }
            None => (None, (None, None), Vec::new()),
        };
        Ok(DerivationSpec {
            name: file.name,
            description: file.description,
            field: vf,
            expected,
            invariants,
            substitutions,
            relation,
            bookkeeping,
            bookkeeping_claims: claims,
            images,
        })
    }

    /// Runs every check the spec file states.
    pub fn verify(&self) -> DerivationReport {
        let mut checks = Vec::new();
        let vf = &self.field;
        match vf.p_closed_type() {
            Ok(found) => {
                let (pass, detail) = match (&self.expected, &found) {
                    (None, _) => (true, format!("{found} (no stated value)")),
                    (Some(ExpectedClosure::Additive), PClosedType::Additive) => (true, found.to_string()),
                    (Some(ExpectedClosure::Multiplicative(c)), PClosedType::MultiplicativeLike(got)) => {
                        let ok = vf.same_function(c, got);
                        (ok, if ok { format!("D^2 = ({c}) D") } else { format!("expected D^2 = ({c}) D, found {found}") })
                    }
                    (Some(e), _) => (false, format!("expected {}, found {found}", expected_label(e))),
                };
                checks.push(Check::new("2-closed", pass, detail));
            }
            Err(e) => checks.push(Check::new("2-closed", false, e.to_string())),
        }
        for (src, f) in &self.invariants {
            let ok = vf.verify_invariant(f);
            let detail = if ok { "D(f) = 0".to_string() } else { format!("D(f) = {}", vf.apply(f)) };
            checks.push(Check::new(&format!("invariant {src}"), ok, detail));
        }
        if let Some((src, rel)) = &self.relation {
            match vf.verify_relation(&self.substitutions, rel) {
                Ok(ok) => checks.push(Check::new(&format!("relation {src}"), ok, String::new())),
                Err(e) => checks.push(Check::new(&format!("relation {src}"), false, e.to_string())),
            }
        }
        if let Some(book) = &self.bookkeeping {
            let rs = rs_deg_isolated(book);
            let (d2_claim, kd_claim) = self.bookkeeping_claims;
            let mut ok = rs.isolated_degree == 0;
            if let Some(d) = d2_claim {
                ok &= d == rs.divisor_square;
            }
            if let Some(k) = kd_claim {
                ok &= k == rs.canonical_dot_divisor;
            }
            let source = if book.intersections.is_some() { "matrix" } else { "stated" };
            checks.push(Check::new(
                "divisorial",
                ok,
                format!(
                    "({source}) (D)^2 = {}, K.(D) = {}, c2 = {}, deg<D> = {}",
                    rs.divisor_square, rs.canonical_dot_divisor, book.c2, rs.isolated_degree
                ),
            ));
            for img in &self.images {
                let i = book.curves.iter().position(|c| *c == img.curve).expect("validated");
                let name = format!("image of {}", img.curve);
                match book.self_intersection(i).map(|s| quotient_selfint(s, img.integral)) {
                    Some(Ok(v)) => checks.push(Check::new(
                        &name,
                        v == img.self_intersection,
                        format!("{v} (stated {})", img.self_intersection),
                    )),
                    Some(Err(e)) => checks.push(Check::new(&name, false, e.to_string())),
                    None => checks.push(Check::new(&name, false, "no intersection matrix".into())),
                }
            }
        }
        DerivationReport { name: self.name.clone(), checks }
    }
}

fn expected_label(e: &ExpectedClosure) -> String {
    match e {
        ExpectedClosure::Additive => "D^2 = 0".into(),
        ExpectedClosure::Multiplicative(c) => format!("D^2 = ({c}) D"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: String) -> Self {
        Check { name: name.to_string(), passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DerivationReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl DerivationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for DerivationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark} {}", c.name)?;
            } else {
                writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(names: &[&str]) -> Scope {
        let ring = PolyRing::new(FiniteField::new(1).unwrap(), names.iter().map(|s| s.to_string()).collect());
        Scope::new(&ring)
    }

    #[test]
    fn kills_u_in_the_plane() {
        let s = plane(&["t", "x"]);
        let d = VectorField::new(vec![0, 1], vec![s.parse("1").unwrap(), s.parse("t^2").unwrap()], s.parse("1").unwrap(), None)
            .unwrap();
        assert!(d.verify_invariant(&s.parse("x + t^3").unwrap()));
        assert!(!d.verify_invariant(&s.parse("x").unwrap()));
        assert!(matches!(d.p_closed_type().unwrap(), PClosedType::Additive));
    }

    #[test]
    fn multiplicative_constant() {
        let s = plane(&["t", "x", "a"]);
        let d = VectorField::new(
            vec![0, 1],
            vec![s.parse("t*(a*t+1)").unwrap(), s.parse("x+1").unwrap()],
            s.parse("1").unwrap(),
            None,
        )
        .unwrap();
        match d.p_closed_type().unwrap() {
            PClosedType::MultiplicativeLike(c) => assert!(c.equals(&s.parse("1").unwrap())),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn derivative_of_dependent_coordinate() {
        let mut s = plane(&["t", "x", "y"]);
        s.define("F", s.parse("y^2 + t^2*y + x^3").unwrap());
        let surf = SurfaceEquation::new(s.parse_poly("F").unwrap(), 2).unwrap();
        let d = VectorField::new(vec![0, 1], vec![s.parse("1").unwrap(), s.parse("t^2").unwrap()], s.parse("1").unwrap(), Some(surf))
            .unwrap();
        assert!(d.image(2).equals(&s.parse("x^2").unwrap()));
        assert!(d.verify_invariant(&s.parse("y + t*x^2").unwrap()));
    }

    #[test]
    fn degenerate_field() {
        let s = plane(&["t", "x"]);
        let d = VectorField::new(vec![0, 1], vec![s.parse("0").unwrap(), s.parse("0").unwrap()], s.parse("1").unwrap(), None)
            .unwrap();
        assert!(matches!(d.p_closed_type(), Err(DerivationError::Degenerate)));
    }

    #[test]
    fn selfint_parity() {
        assert_eq!(quotient_selfint(-4, true).unwrap(), -2);
        assert_eq!(quotient_selfint(-2, false).unwrap(), -4);
        assert!(quotient_selfint(-1, true).is_err());
    }

    #[test]
    fn zero_divisor_degree() {
        let book = DivisorBookkeeping {
            curves: vec!["C".into()],
            intersections: Some(vec![vec![-2]]),
            divisor: vec![0],
            canonical: vec![0],
            c2: 12,
            claimed: None,
        };
        assert_eq!(rs_deg_isolated(&book).isolated_degree, 12);
    }
}
