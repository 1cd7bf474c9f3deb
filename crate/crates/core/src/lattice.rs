//! U ⊕ E8 with the hyperbolic plane in coordinates 0–1 and a negative-definite
//! E8 in coordinates 2–9.
//!
//! The E8 block uses simple roots α₀…α₇ with α₀–α₁–…–α₆ a chain and α₇
//! attached to α₄, so ⟨αᵢ, αᵢ⟩ = −2 and adjacent roots pair to 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::curvegraph::CurveGraph;

pub const AMBIENT_RANK: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("⟨δ, δ⟩ = {0}, a root must have norm −2")]
    NotARoot(i64),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("{vectors} vectors supplied for a graph with {vertices} vertices")]
    LengthMismatch { vertices: usize, vectors: usize },
}

pub const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

/// The Gram matrix of U ⊕ E8 in the fixed basis (e, f, α₀, …, α₇).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    matrix: [[i64; AMBIENT_RANK]; AMBIENT_RANK],
}

impl GramForm {
    pub fn u_plus_e8() -> Self {
        let mut m = [[0i64; AMBIENT_RANK]; AMBIENT_RANK];
        m[0][1] = 1;
        m[1][0] = 1;
        for i in 2..AMBIENT_RANK {
            m[i][i] = -2;
        }
        for (a, b) in E8_EDGES {
            m[a + 2][b + 2] = 1;
            m[b + 2][a + 2] = 1;
        }
        GramForm { matrix: m }
    }

    pub fn matrix(&self) -> &[[i64; AMBIENT_RANK]; AMBIENT_RANK] {
        &self.matrix
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.iter().map(|r| r.to_vec()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub [i64; AMBIENT_RANK]);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0; AMBIENT_RANK]);

    pub fn basis(i: usize) -> Self {
        let mut v = [0; AMBIENT_RANK];
        v[i] = 1;
        LatticeVector(v)
    }

    /// The image of the E8 simple root αᵢ.
    pub fn e8_root(i: usize) -> Self {
        Self::basis(i + 2)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.0;
        for (a, b) in v.iter_mut().zip(other.0) {
            *a += b;
        }
        LatticeVector(v)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.map(|a| a * k))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }
}

pub fn pairing(u: &LatticeVector, v: &LatticeVector) -> i64 {
    let g = GramForm::u_plus_e8();
    let mut s = 0;
    for i in 0..AMBIENT_RANK {
        if u.0[i] == 0 {
            continue;
        }
        for j in 0..AMBIENT_RANK {
            s += u.0[i] * g.matrix[i][j] * v.0[j];
        }
    }
    s
}

/// A vector of norm −2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootClass(LatticeVector);

impl RootClass {
    pub fn new(v: LatticeVector) -> Result<Self, LatticeError> {
        match pairing(&v, &v) {
            -2 => Ok(RootClass(v)),
            n => Err(LatticeError::NotARoot(n)),
        }
    }
    pub fn vector(&self) -> &LatticeVector {
        &self.0
    }
}

/// s_δ(x) = x + ⟨x, δ⟩δ
pub fn reflect(delta: &RootClass, x: &LatticeVector) -> LatticeVector {
    x.add(&delta.0.scale(pairing(x, &delta.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }
    pub fn is_negative_semidefinite(&self) -> bool {
        self.positive == 0
    }
}

fn check_symmetric(gram: &[Vec<i64>]) -> Result<(), LatticeError> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n {
            return Err(LatticeError::NotSquare);
        }
        for j in 0..i {
            if row[j] != gram[j][i] {
                return Err(LatticeError::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Inertia of a symmetric integer matrix by rational congruence diagonalization.
///
/// Pivots on a nonzero diagonal entry, preferring the largest denominator and
/// then the smallest index. When the remaining diagonal is zero but some
/// off-diagonal entry aᵢⱼ is not, eᵢ ↦ eᵢ + eⱼ makes the diagonal entry 2aᵢⱼ.
pub fn signature(gram: &[Vec<i64>]) -> Result<Inertia, LatticeError> {
    check_symmetric(gram)?;
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> =
        gram.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .max_by(|&i, &j| a[i][i].denom().cmp(a[j][j].denom()).then(j.cmp(&i)));
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                for &k in &active {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for &k in &active {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                continue;
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        let col: Vec<BigRational> = active.iter().map(|&i| a[i][p].clone() / &d).collect();
        for (ci, &i) in active.iter().enumerate() {
            if col[ci].is_zero() {
                continue;
            }
            for &k in &active {
                let delta = &col[ci] * &a[p][k];
                a[i][k] -= delta;
            }
        }
    }
    Ok(Inertia { positive: pos, negative: neg, zero: n - pos - neg })
}

/// Rank over ℚ.
pub fn rank(gram: &[Vec<i64>]) -> Result<usize, LatticeError> {
    signature(gram).map(|s| s.rank())
}

/// Exact determinant by fraction-free elimination (Bareiss).
pub fn determinant(gram: &[Vec<i64>]) -> BigInt {
    let n = gram.len();
    let mut m: Vec<Vec<BigInt>> = gram.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    m[n - 1][n - 1].clone() * sign
}

/// Whether `vectors` realize the dual graph: norms −2 and ⟨vᵢ, vⱼ⟩ = mᵢⱼ.
pub fn verify_embedding(graph: &CurveGraph, vectors: &[LatticeVector]) -> Result<bool, LatticeError> {
    if vectors.len() != graph.len() {
        return Err(LatticeError::LengthMismatch { vertices: graph.len(), vectors: vectors.len() });
    }
    for (i, u) in vectors.iter().enumerate() {
        if pairing(u, u) != -2 {
            return Ok(false);
        }
        for (j, v) in vectors.iter().enumerate().skip(i + 1) {
            if pairing(u, v) != graph.multiplicity(i, j) as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coefficients of the highest root of E8 on α₀…α₇; it pairs to −1 with α₀
/// and to 0 with the other simple roots.
pub const E8_HIGHEST_ROOT: [i64; 8] = [2, 3, 4, 5, 6, 4, 2, 3];

/// Ten roots realizing the T-shaped graph with arms 1, 2, 6 around α₄:
/// f − e, e − θ (θ the highest root) and the eight simple roots, in that order.
pub fn t237_roots() -> Vec<LatticeVector> {
    let e = LatticeVector::basis(0);
    let f = LatticeVector::basis(1);
    let mut theta = LatticeVector::ZERO;
    for (i, c) in E8_HIGHEST_ROOT.iter().enumerate() {
        theta = theta.add(&LatticeVector::e8_root(i).scale(*c));
    }
    let mut out = vec![f.sub(&e), e.sub(&theta)];
    out.extend((0..8).map(LatticeVector::e8_root));
    out
}
