//! Explicit automorphisms of quasi-elliptic surfaces y² + g₀y = R(t, x).
//!
//! A [`Substitution`] records the pull-back images of t, x, y. Images have the
//! shape t ↦ Möbius(t), x ↦ d₁(t)x + d₂(t), y ↦ e₁(t,x)y + e₂(t,x); the affine
//! maps t ↦ c₁t + c₂ are the common case, the Möbius generalization is what
//! lets t ↦ 1/t through.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{
    AlgebraError, FieldElement, FiniteField, MultiPoly, ParseError, PolyRing, RationalFunction, Ring, Scope,
    SurfaceEquation,
};
use crate::derivation::Check;

pub const T: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;

/// Largest group [`identify_group`] will enumerate.
pub const CLOSURE_BUDGET: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    NotNormalForm(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("order exceeds {0}")]
    OrderExceeds(u64),
    #[error("closure exceeds {0} elements")]
    ClosureBudget(usize),
    #[error("spec: {0}")]
    Spec(String),
}

/// Ring with t, x, y in slots 0, 1, 2.
pub fn surface_ring(field: FiniteField) -> Ring {
    PolyRing::new(field, vec!["t".into(), "x".into(), "y".into()])
}

/// Split `f` as a·v + b with a, b free of `v`; `None` if `f` is not of that form.
fn linear_in(f: &RationalFunction, v: usize) -> Option<(RationalFunction, RationalFunction)> {
    if f.den().uses_var(v) {
        return None;
    }
    let c = f.num().coefficients_in(v);
    if c.len() > 2 {
        return None;
    }
    let den = f.den().clone();
    let part = |p: Option<&MultiPoly>| {
        RationalFunction::new(p.cloned().unwrap_or_else(|| MultiPoly::zero(f.ring())), den.clone()).expect("nonzero den")
    };
    Some((part(c.get(1)), part(c.first())))
}

#[derive(Clone, Debug)]
pub struct Substitution {
    t_map: RationalFunction,
    x_map: RationalFunction,
    y_map: RationalFunction,
}

impl Substitution {
    pub fn new(t_map: RationalFunction, x_map: RationalFunction, y_map: RationalFunction) -> Result<Self, AutError> {
        if t_map.uses_var(X) || t_map.uses_var(Y) {
            return Err(AutError::NotNormalForm(format!("t ↦ {t_map} involves x or y")));
        }
        if !t_map.uses_var(T) {
            return Err(AutError::NotNormalForm(format!("t ↦ {t_map} is constant")));
        }
        if x_map.uses_var(Y) {
            return Err(AutError::NotNormalForm(format!("x ↦ {x_map} involves y")));
        }
        match linear_in(&x_map, X) {
            Some((d1, _)) if d1.is_zero() => return Err(AutError::NotNormalForm("d1 = 0".into())),
            Some(_) => {}
            None => return Err(AutError::NotNormalForm(format!("x ↦ {x_map} is not affine in x"))),
        }
        match linear_in(&y_map, Y) {
            Some((e1, _)) if e1.is_zero() => return Err(AutError::NotNormalForm("e1 = 0".into())),
            Some(_) => {}
            None => return Err(AutError::NotNormalForm(format!("y ↦ {y_map} is not affine in y"))),
        }
        Ok(Substitution { t_map, x_map, y_map })
    }

    pub fn identity(ring: &Ring) -> Self {
        Substitution {
            t_map: RationalFunction::var(ring, T),
            x_map: RationalFunction::var(ring, X),
            y_map: RationalFunction::var(ring, Y),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.t_map.ring()
    }
    pub fn t_map(&self) -> &RationalFunction {
        &self.t_map
    }
    pub fn x_map(&self) -> &RationalFunction {
        &self.x_map
    }
    pub fn y_map(&self) -> &RationalFunction {
        &self.y_map
    }

    fn images(&self) -> Vec<Option<RationalFunction>> {
        let mut v = vec![None; self.ring().nvars()];
        v[T] = Some(self.t_map.clone());
        v[X] = Some(self.x_map.clone());
        v[Y] = Some(self.y_map.clone());
        v
    }

    /// Pull back a function: f ↦ f(t_map, x_map, y_map).
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, AutError> {
        Ok(f.substitute(&self.images())?)
    }

    pub fn is_identity(&self) -> bool {
        let ring = self.ring();
        self.t_map.equals(&RationalFunction::var(ring, T))
            && self.x_map.equals(&RationalFunction::var(ring, X))
            && self.y_map.equals(&RationalFunction::var(ring, Y))
    }

    pub fn same_as(&self, other: &Substitution) -> bool {
        self.t_map.equals(&other.t_map) && self.x_map.equals(&other.x_map) && self.y_map.equals(&other.y_map)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t ↦ {}, x ↦ {}, y ↦ {}", self.t_map, self.x_map, self.y_map)
    }
}

/// True iff F∘s vanishes on F = 0.
pub fn verify_automorphism(surface: &SurfaceEquation, s: &Substitution) -> Result<bool, AutError> {
    let f = RationalFunction::from_poly(surface.poly().clone());
    Ok(surface.vanishes(&s.apply(&f)?))
}

/// Composite whose images are those of `first` pulled back along `second`,
/// i.e. (first ∘ second)* v = second*(first* v).
pub fn compose(first: &Substitution, second: &Substitution) -> Result<Substitution, AutError> {
    Ok(Substitution {
        t_map: second.apply(&first.t_map)?,
        x_map: second.apply(&first.x_map)?,
        y_map: second.apply(&first.y_map)?,
    })
}

/// Coefficients (p, q, r, s) of t ↦ (p t + q)/(r t + s).
fn mobius(f: &RationalFunction) -> Option<[FieldElement; 4]> {
    let split = |p: &MultiPoly| -> Option<(FieldElement, FieldElement)> {
        let c = p.coefficients_in(T);
        if c.len() > 2 {
            return None;
        }
        let get = |i: usize| c.get(i).map_or(Some(FieldElement::ZERO), |q| q.as_constant());
        Some((get(1)?, get(0)?))
    };
    let (p, q) = split(f.num())?;
    let (r, s) = split(f.den())?;
    Some([p, q, r, s])
}

pub fn inverse(s: &Substitution) -> Result<Substitution, AutError> {
    let ring = s.ring().clone();
    let field = *ring.field();
    let [p, q, r, d] = mobius(&s.t_map).ok_or_else(|| AutError::NotInvertible(format!("t ↦ {}", s.t_map)))?;
    if field.add(field.mul(p, d), field.mul(q, r)).is_zero() {
        return Err(AutError::NotInvertible(format!("t ↦ {} is degenerate", s.t_map)));
    }
    let t = MultiPoly::var(&ring, T);
    let lin = |a: FieldElement, b: FieldElement| t.scale(a).add(&MultiPoly::constant(&ring, b));
    let t_inv = RationalFunction::new(lin(d, q), lin(r, p))?;

    let partial = Substitution {
        t_map: t_inv.clone(),
        x_map: RationalFunction::var(&ring, X),
        y_map: RationalFunction::var(&ring, Y),
    };
    let (d1, d2) = linear_in(&s.x_map, X).expect("checked at construction");
    let x = RationalFunction::var(&ring, X);
    let x_inv = x.add(&partial.apply(&d2)?).div(&partial.apply(&d1)?)?;

    let partial = Substitution { x_map: x_inv.clone(), ..partial };
    let (e1, e2) = linear_in(&s.y_map, Y).expect("checked at construction");
    let y = RationalFunction::var(&ring, Y);
    let y_inv = y.add(&partial.apply(&e2)?).div(&partial.apply(&e1)?)?;
    Substitution::new(t_inv, x_inv, y_inv)
}

pub fn element_order(s: &Substitution, max: u64) -> Result<u64, AutError> {
    let mut power = s.clone();
    for n in 1..=max {
        if power.is_identity() {
            return Ok(n);
        }
        power = compose(&power, s)?;
    }
    Err(AutError::OrderExceeds(max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogGroup {
    Trivial,
    Z2,
    Z2Squared,
    Z2Cubed,
    Z5,
    Z7,
    Z10,
    Z11,
    Z14,
    S3,
    S4,
    S5,
    Q8,
    Z5xS3,
}

impl CatalogGroup {
    pub const ALL: [CatalogGroup; 14] = [
        CatalogGroup::Trivial,
        CatalogGroup::Z2,
        CatalogGroup::Z2Squared,
        CatalogGroup::Z2Cubed,
        CatalogGroup::Z5,
        CatalogGroup::Z7,
        CatalogGroup::Z10,
        CatalogGroup::Z11,
        CatalogGroup::Z14,
        CatalogGroup::S3,
        CatalogGroup::S4,
        CatalogGroup::S5,
        CatalogGroup::Q8,
        CatalogGroup::Z5xS3,
    ];

    pub fn name(self) -> &'static str {
        use CatalogGroup::*;
        match self {
            Trivial => "1",
            Z2 => "Z/2",
            Z2Squared => "(Z/2)^2",
            Z2Cubed => "(Z/2)^3",
            Z5 => "Z/5",
            Z7 => "Z/7",
            Z10 => "Z/10",
            Z11 => "Z/11",
            Z14 => "Z/14",
            S3 => "S3",
            S4 => "S4",
            S5 => "S5",
            Q8 => "Q8",
            Z5xS3 => "Z/5xS3",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "trivial" || s == "{1}" {
            return Some(CatalogGroup::Trivial);
        }
        let alias = s.replace('×', "x").replace(' ', "");
        Self::ALL.into_iter().find(|g| g.name() == alias)
    }

    pub fn is_abelian(self) -> bool {
        !matches!(self, CatalogGroup::S3 | CatalogGroup::S4 | CatalogGroup::S5 | CatalogGroup::Q8 | CatalogGroup::Z5xS3)
    }

    /// Number of elements of each order.
    pub fn order_counts(self) -> BTreeMap<u64, usize> {
        use CatalogGroup::*;
        let pairs: &[(u64, usize)] = match self {
            Trivial => &[(1, 1)],
            Z2 => &[(1, 1), (2, 1)],
            Z2Squared => &[(1, 1), (2, 3)],
            Z2Cubed => &[(1, 1), (2, 7)],
            Z5 => &[(1, 1), (5, 4)],
            Z7 => &[(1, 1), (7, 6)],
            Z10 => &[(1, 1), (2, 1), (5, 4), (10, 4)],
            Z11 => &[(1, 1), (11, 10)],
            Z14 => &[(1, 1), (2, 1), (7, 6), (14, 6)],
            S3 => &[(1, 1), (2, 3), (3, 2)],
            S4 => &[(1, 1), (2, 9), (3, 8), (4, 6)],
            S5 => &[(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)],
            Q8 => &[(1, 1), (2, 1), (4, 6)],
            Z5xS3 => &[(1, 1), (2, 3), (3, 2), (5, 4), (10, 12), (15, 8)],
        };
        pairs.iter().copied().collect()
    }

    pub fn order(self) -> usize {
        self.order_counts().values().sum()
    }
}

impl fmt::Display for CatalogGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Invariants of a finite group and its catalog match, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: usize,
    pub abelian: bool,
    pub order_counts: BTreeMap<u64, usize>,
    pub name: Option<CatalogGroup>,
}

impl GroupStructure {
    pub fn from_invariants(order: usize, abelian: bool, order_counts: BTreeMap<u64, usize>) -> Self {
        let name = CatalogGroup::ALL
            .into_iter()
            .find(|g| g.order() == order && g.is_abelian() == abelian && g.order_counts() == order_counts);
        GroupStructure { order, abelian, order_counts, name }
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            Some(g) => write!(f, "{g}"),
            None => {
                let counts: Vec<String> = self.order_counts.iter().map(|(o, n)| format!("{n}x{o}")).collect();
                write!(
                    f,
                    "unknown group of order {} ({}, element orders {})",
                    self.order,
                    if self.abelian { "abelian" } else { "non-abelian" },
                    counts.join(" ")
                )
            }
        }
    }
}

/// All elements of the group generated by `generators`, identity first.
pub fn closure(ring: &Ring, generators: &[Substitution], budget: usize) -> Result<Vec<Substitution>, AutError> {
    let mut elements = vec![Substitution::identity(ring)];
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = compose(&current, g)?;
            if !elements.iter().any(|e| e.same_as(&next)) {
                if elements.len() == budget {
                    return Err(AutError::ClosureBudget(budget));
                }
                elements.push(next);
            }
        }
    }
    Ok(elements)
}

/// Multiplication table of a closed list: `table[i][j]` is the index of
/// compose(elements[i], elements[j]).
pub fn multiplication_table(elements: &[Substitution]) -> Result<Vec<Vec<usize>>, AutError> {
    let mut table = Vec::with_capacity(elements.len());
    for a in elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in elements {
            let ab = compose(a, b)?;
            let idx = elements
                .iter()
                .position(|e| e.same_as(&ab))
                .ok_or_else(|| AutError::Spec("element list is not closed".into()))?;
            row.push(idx);
        }
        table.push(row);
    }
    Ok(table)
}

/// Invariants from a Cayley table whose identity is element 0.
pub fn structure_from_table(table: &[Vec<usize>]) -> GroupStructure {
    let n = table.len();
    let abelian = (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]));
    let mut counts = BTreeMap::new();
    for i in 0..n {
        let (mut k, mut p) = (1u64, i);
        while p != 0 {
            p = table[p][i];
            k += 1;
        }
        *counts.entry(k).or_insert(0) += 1;
    }
    GroupStructure::from_invariants(n, abelian, counts)
}

pub fn identify_group(ring: &Ring, generators: &[Substitution]) -> Result<GroupStructure, AutError> {
    let elements = closure(ring, generators, CLOSURE_BUDGET)?;
    Ok(structure_from_table(&multiplication_table(&elements)?))
}

// ---------------------------------------------------------------------------
// Spec files

pub const SPEC_FORMAT: &str = "automorphism-spec";
pub const SPEC_VERSION: u32 = 1;
const MAX_RESAMPLES: usize = 500;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    format: String,
    version: u32,
    name: String,
    #[serde(default)]
    description: String,
    field_degree: u32,
    #[serde(default)]
    parameters: Vec<ParameterSpec>,
    #[serde(default)]
    constants: Vec<ConstantSpec>,
    surface: String,
    #[serde(default)]
    substitutions: Vec<SubstitutionSpec>,
    group: GroupSpec,
    #[serde(default = "default_trials")]
    trials: u32,
}

fn default_trials() -> u32 {
    3
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSpec {
    pub name: String,
    /// Expressions required to be nonzero at the sampled value.
    #[serde(default)]
    pub nonzero: Vec<String>,
    /// Expressions required to vanish.
    #[serde(default)]
    pub zero: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, untagged)]
pub enum ConstantSpec {
    /// A random primitive n-th root of unity.
    RootOfUnity { name: String, root_of_unity: u64 },
    /// A root of a polynomial in `z`; `index` picks from the roots sorted by
    /// bit pattern, otherwise a random root is taken.
    RootOf {
        name: String,
        root_of: String,
        #[serde(default)]
        index: Option<usize>,
    },
    Value { name: String, value: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionSpec {
    pub name: String,
    #[serde(default = "var_t")]
    pub t: String,
    #[serde(default = "var_x")]
    pub x: String,
    #[serde(default = "var_y")]
    pub y: String,
    #[serde(default)]
    pub order: Option<u64>,
}

fn var_t() -> String {
    "t".into()
}
fn var_x() -> String {
    "x".into()
}
fn var_y() -> String {
    "y".into()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    #[serde(default)]
    generators: Option<Vec<String>>,
    expected: String,
    /// Recorded but not machine-checked (e.g. when a generator has no formula).
    #[serde(default)]
    asserted: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AutomorphismSpec {
    pub name: String,
    pub description: String,
    pub field: FiniteField,
    pub parameters: Vec<ParameterSpec>,
    pub constants: Vec<ConstantSpec>,
    pub surface: String,
    pub substitutions: Vec<SubstitutionSpec>,
    pub generators: Vec<String>,
    pub expected: CatalogGroup,
    pub asserted: Option<String>,
    pub trials: u32,
}

/// One specialization: parameter and constant values, the surface and the
/// parsed substitutions.
pub struct Specialization {
    pub values: Vec<(String, FieldElement)>,
    pub ring: Ring,
    pub surface: SurfaceEquation,
    pub substitutions: Vec<(String, Substitution)>,
}

fn parse_equation(scope: &Scope, src: &str) -> Result<MultiPoly, AutError> {
    match src.split_once('=') {
        Some((lhs, rhs)) => Ok(scope.parse_poly(lhs)?.add(&scope.parse_poly(rhs)?)),
        None => Ok(scope.parse_poly(src)?),
    }
}

impl AutomorphismSpec {
    pub fn parse(text: &str) -> Result<Self, AutError> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| AutError::Spec(e.to_string()))?;
        if file.format != SPEC_FORMAT || file.version != SPEC_VERSION {
            return Err(AutError::Spec(format!("unsupported header {} v{}", file.format, file.version)));
        }
        if file.trials == 0 {
            return Err(AutError::Spec("trials must be positive".into()));
        }
        let field = FiniteField::new(file.field_degree).map_err(AlgebraError::from)?;
        let expected = CatalogGroup::from_name(&file.group.expected)
            .ok_or_else(|| AutError::Spec(format!("unknown group {}", file.group.expected)))?;
        let mut seen: Vec<&str> = vec!["t", "x", "y", "z"];
        let names = file
            .parameters
            .iter()
            .map(|p| p.name.as_str())
            .chain(file.constants.iter().map(ConstantSpec::name))
            .chain(file.substitutions.iter().map(|s| s.name.as_str()));
        for n in names {
            if seen.contains(&n) {
                return Err(AutError::Spec(format!("name {n} declared twice or reserved")));
            }
            seen.push(n);
        }
        let generators = file.group.generators.unwrap_or_else(|| file.substitutions.iter().map(|s| s.name.clone()).collect());
        for g in &generators {
            if !file.substitutions.iter().any(|s| &s.name == g) {
                return Err(AutError::Spec(format!("unknown generator {g}")));
            }
        }
        Ok(AutomorphismSpec {
            name: file.name,
            description: file.description,
            field,
            parameters: file.parameters,
            constants: file.constants,
            surface: file.surface,
            substitutions: file.substitutions,
            generators,
            expected,
            asserted: file.group.asserted,
            trials: file.trials,
        })
    }

    /// Draw parameter values and constants for `seed`, resampling until every
    /// condition holds and every auxiliary equation has the requested root.
    pub fn specialize(&self, seed: u64) -> Result<Specialization, AutError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = surface_ring(self.field);
        let aux = PolyRing::new(self.field, vec!["z".into()]);
        'attempt: for _ in 0..MAX_RESAMPLES {
            let mut scope = Scope::new(&ring);
            let mut aux_scope = Scope::new(&aux);
            let mut values = Vec::new();
            for p in &self.parameters {
                let candidates = self.admissible(p, &scope)?;
                let Some(&v) = candidates.choose(&mut rng) else {
                    return Err(AutError::Spec(format!("no admissible value for {} in GF(2^{})", p.name, self.field.degree())));
                };
                scope.constant(&p.name, v);
                aux_scope.constant(&p.name, v);
                values.push((p.name.clone(), v));
            }
            for c in &self.constants {
                let v = match c {
                    ConstantSpec::RootOfUnity { root_of_unity: n, .. } => {
                        let zeta = self.field.root_of_unity(*n).map_err(AlgebraError::from)?;
                        let units: Vec<u64> = (1..*n).filter(|k| gcd(*k, *n) == 1).collect();
                        let k = if units.is_empty() { 1 } else { *units.choose(&mut rng).expect("nonempty") };
                        self.field.pow(zeta, k)
                    }
                    ConstantSpec::RootOf { root_of, index, .. } => {
                        let poly = aux_scope.parse_poly(root_of)?;
                        let roots: Vec<FieldElement> = self.field.elements().filter(|e| poly.eval(&[*e]).is_zero()).collect();
                        let pick = match index {
                            Some(i) => roots.get(*i).copied(),
                            None => roots.choose(&mut rng).copied(),
                        };
                        match pick {
                            Some(r) => r,
                            None => continue 'attempt,
                        }
                    }
                    ConstantSpec::Value { value, .. } => match scope.parse(value) {
                        Ok(r) => r.as_constant().ok_or_else(|| AutError::Spec(format!("{value} is not a constant")))?,
                        Err(e) if e.msg.contains("division by zero") => continue 'attempt,
                        Err(e) => return Err(e.into()),
                    },
                };
                scope.constant(c.name(), v);
                aux_scope.constant(c.name(), v);
                values.push((c.name().to_string(), v));
            }
            let poly = parse_equation(&scope, &self.surface)?;
            let surface = SurfaceEquation::new(poly, Y)?;
            let mut subs = Vec::new();
            for s in &self.substitutions {
                let sub = Substitution::new(scope.parse(&s.t)?, scope.parse(&s.x)?, scope.parse(&s.y)?)?;
                subs.push((s.name.clone(), sub));
            }
            return Ok(Specialization { values, ring, surface, substitutions: subs });
        }
        Err(AutError::Spec(format!("no specialization found after {MAX_RESAMPLES} attempts")))
    }

    fn admissible(&self, p: &ParameterSpec, scope: &Scope) -> Result<Vec<FieldElement>, AutError> {
        let mut local = scope.clone();
        let mut out = Vec::new();
        for v in self.field.elements() {
            local.constant(&p.name, v);
            let eval = |src: &String| -> Result<Option<FieldElement>, AutError> {
                match local.parse(src) {
                    Ok(r) => Ok(Some(r.as_constant().ok_or_else(|| AutError::Spec(format!("{src} is not a constant")))?)),
                    Err(e) if e.msg.contains("division by zero") => Ok(None),
                    Err(e) => Err(e.into()),
                }
            };
            let mut ok = true;
            for src in &p.nonzero {
                ok &= matches!(eval(src)?, Some(c) if !c.is_zero());
            }
            for src in &p.zero {
                ok &= matches!(eval(src)?, Some(c) if c.is_zero());
            }
            if ok {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Run every check over `trials` specializations derived from `seed`.
    pub fn verify(&self, seed: u64, trials: Option<u32>) -> AutReport {
        let trials = trials.unwrap_or(self.trials).max(1);
        let mut checks = Vec::new();
        for trial in 0..trials {
            let trial_seed = seed.wrapping_add(trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            match self.specialize(trial_seed) {
                Ok(sp) => self.check_specialization(trial, &sp, &mut checks),
                Err(e) => checks.push(Check::new(&format!("trial {trial}: specialize"), false, e.to_string())),
            }
        }
        AutReport {
            name: self.name.clone(),
            expected: self.expected,
            asserted: self.asserted.clone(),
            trials,
            checks,
        }
    }

    fn check_specialization(&self, trial: u32, sp: &Specialization, checks: &mut Vec<Check>) {
        let values: Vec<String> = sp.values.iter().map(|(n, v)| format!("{n}={v}")).collect();
        let prefix = format!("trial {trial}");
        for ((name, sub), spec) in sp.substitutions.iter().zip(&self.substitutions) {
            match verify_automorphism(&sp.surface, sub) {
                Ok(ok) => checks.push(Check::new(&format!("{prefix}: {name} preserves the surface"), ok, values.join(" "))),
                Err(e) => checks.push(Check::new(&format!("{prefix}: {name} preserves the surface"), false, e.to_string())),
            }
            if let Some(want) = spec.order {
                let label = format!("{prefix}: order of {name}");
                match element_order(sub, CLOSURE_BUDGET as u64) {
                    Ok(n) => checks.push(Check::new(&label, n == want, format!("{n} (expected {want})"))),
                    Err(e) => checks.push(Check::new(&label, false, e.to_string())),
                }
            }
        }
        let gens: Vec<Substitution> = self
            .generators
            .iter()
            .map(|g| sp.substitutions.iter().find(|(n, _)| n == g).expect("validated in parse").1.clone())
            .collect();
        let label = format!("{prefix}: group");
        match identify_group(&sp.ring, &gens) {
            Ok(g) => checks.push(Check::new(&label, g.name == Some(self.expected), format!("{g} (expected {})", self.expected))),
            Err(e) => checks.push(Check::new(&label, false, e.to_string())),
        }
    }
}

impl ConstantSpec {
    pub fn name(&self) -> &str {
        match self {
            ConstantSpec::RootOfUnity { name, .. } | ConstantSpec::RootOf { name, .. } | ConstantSpec::Value { name, .. } => name,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AutReport {
    pub name: String,
    #[serde(serialize_with = "as_name")]
    pub expected: CatalogGroup,
    pub asserted: Option<String>,
    pub trials: u32,
    pub checks: Vec<Check>,
}

fn as_name<S: serde::Serializer>(g: &CatalogGroup, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(g.name())
}

impl AutReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for AutReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} (group {}, {} trials)", self.name, if self.passed() { "PASS" } else { "FAIL" }, self.expected, self.trials)?;
        if let Some(a) = &self.asserted {
            writeln!(f, "  note: full group {a} asserted, not machine-checked")?;
        }
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

/// Random affine substitution t ↦ c₁t + c₂, x ↦ d₁x + d₂(t), y ↦ e₁y + e₂(t, x)
/// with nonzero constants c₁, d₁, e₁ and low-degree polynomial d₂, e₂.
pub fn random_substitution(ring: &Ring, rng: &mut impl Rng) -> Substitution {
    let field = *ring.field();
    let nonzero = |rng: &mut dyn rand::RngCore| FieldElement(rng.gen_range(1..field.size()));
    let any = |rng: &mut dyn rand::RngCore| FieldElement(rng.gen_range(0..field.size()));
    let t = MultiPoly::var(ring, T);
    let x = MultiPoly::var(ring, X);
    let y = MultiPoly::var(ring, Y);
    let c = |v: FieldElement| MultiPoly::constant(ring, v);
    let t_map = t.scale(nonzero(rng)).add(&c(any(rng)));
    let d2 = t.scale(any(rng)).add(&c(any(rng)));
    let x_map = x.scale(nonzero(rng)).add(&d2);
    let e2 = x.mul(&t).scale(any(rng)).add(&t.square().scale(any(rng))).add(&c(any(rng)));
    let y_map = y.scale(nonzero(rng)).add(&e2);
    Substitution::new(
        RationalFunction::from_poly(t_map),
        RationalFunction::from_poly(x_map),
        RationalFunction::from_poly(y_map),
    )
    .expect("nonzero leading constants")
}
