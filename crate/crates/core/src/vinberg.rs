//! Parabolic subdiagrams and the finite-index criterion for the reflection
//! group of a set of (−2)-curves.
//!
//! A dual graph Γ that spans the rank-10 lattice and has no lines of
//! multiplicity ≥ 3 generates a finite-index reflection group exactly when
//! every connected parabolic subdiagram is a component of a parabolic
//! subdiagram of rank 8.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::curvegraph::{CurveGraph, DiagramClass, DynkinType, Subdiagram};
use crate::lattice::AMBIENT_RANK;

/// Graphs beyond this size are outside what exhaustive enumeration handles.
pub const ENUMERATION_CAP: usize = 24;
pub const MAXIMAL_RANK: usize = AMBIENT_RANK - 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VinbergError {
    #[error("graph has {0} vertices; enumeration is capped at {ENUMERATION_CAP}")]
    TooLarge(usize),
    #[error("{0:?} is not a connected parabolic subdiagram")]
    NotParabolic(Vec<usize>),
}

/// A connected affine subdiagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectedParabolic {
    pub sub: Subdiagram,
    pub kind: DynkinType,
    /// Vertices of `sub` and their neighbours.
    closure: u64,
}

impl ConnectedParabolic {
    pub fn rank(&self) -> usize {
        self.kind.rank
    }
    pub fn mask(&self) -> u64 {
        self.sub.mask()
    }
    /// Disjoint and joined by no edge.
    pub fn compatible(&self, other: &ConnectedParabolic) -> bool {
        self.closure & other.sub.mask() == 0
    }
}

/// Pairwise compatible connected parabolics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDiagram {
    pub components: Vec<ConnectedParabolic>,
}

impl ParabolicDiagram {
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank()).sum()
    }
    pub fn census_key(&self) -> CensusKey {
        CensusKey::new(self.components.iter().map(|c| c.kind).collect())
    }
    pub fn mask(&self) -> u64 {
        self.components.iter().fold(0, |m, c| m | c.mask())
    }
}

/// Multiset of affine component types, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CensusKey(pub Vec<DynkinType>);

impl CensusKey {
    pub fn new(mut types: Vec<DynkinType>) -> Self {
        types.sort_by(|a, b| b.cmp(a));
        CensusKey(types)
    }
}

impl fmt::Display for CensusKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| format!("~{t}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

pub type Census = BTreeMap<CensusKey, usize>;

fn closure_of(graph: &CurveGraph, mask: u64) -> u64 {
    let mut out = mask;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= graph.neighbors(v);
    }
    out
}

fn check_size(graph: &CurveGraph) -> Result<(), VinbergError> {
    if graph.len() > ENUMERATION_CAP {
        return Err(VinbergError::TooLarge(graph.len()));
    }
    Ok(())
}

/// All connected parabolic subdiagrams, sorted by vertex list.
///
/// Connected sets are grown one neighbour at a time. Only negative definite
/// sets are grown further: an indefinite set stays indefinite under
/// enlargement, and an affine set becomes indefinite.
pub fn enumerate_connected_parabolics(graph: &CurveGraph) -> Result<Vec<ConnectedParabolic>, VinbergError> {
    check_size(graph)?;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut frontier: Vec<u64> = (0..graph.len()).map(|v| 1u64 << v).collect();
    seen.extend(frontier.iter().copied());
    let mut found = Vec::new();
    while let Some(mask) = frontier.pop() {
        let mut boundary = closure_of(graph, mask) & !mask;
        while boundary != 0 {
            let w = boundary.trailing_zeros() as usize;
            boundary &= boundary - 1;
            let next = mask | (1 << w);
            if !seen.insert(next) {
                continue;
            }
            let sub = Subdiagram::from_mask(next);
            let inertia = graph.inertia_of(sub.vertices());
            if inertia.is_negative_definite() {
                frontier.push(next);
            } else if inertia.positive == 0 && inertia.zero == 1 {
                if let Ok(DiagramClass::Affine(kind)) = graph.classify(&sub) {
                    found.push(ConnectedParabolic { closure: closure_of(graph, next), sub, kind });
                }
            }
        }
    }
    found.sort_by(|a, b| a.sub.vertices().cmp(b.sub.vertices()));
    Ok(found)
}

/// Connected parabolics of a graph with the compatibility searches on top.
pub struct ParabolicIndex<'g> {
    graph: &'g CurveGraph,
    parabolics: Vec<ConnectedParabolic>,
}

impl<'g> ParabolicIndex<'g> {
    pub fn new(graph: &'g CurveGraph) -> Result<Self, VinbergError> {
        Ok(ParabolicIndex { graph, parabolics: enumerate_connected_parabolics(graph)? })
    }

    pub fn graph(&self) -> &CurveGraph {
        self.graph
    }
    pub fn parabolics(&self) -> &[ConnectedParabolic] {
        &self.parabolics
    }

    pub fn lookup(&self, sub: &Subdiagram) -> Option<&ConnectedParabolic> {
        self.parabolics.iter().find(|p| p.sub == *sub)
    }

    /// Whether `p` is one component of some rank-8 parabolic subdiagram.
    pub fn extends_to_rank8(&self, sub: &Subdiagram) -> Result<bool, VinbergError> {
        let p = self.lookup(sub).ok_or_else(|| VinbergError::NotParabolic(sub.vertices().to_vec()))?;
        Ok(self.completion(p).is_some())
    }

    /// A rank-8 parabolic containing `p`, if any.
    pub fn completion(&self, p: &ConnectedParabolic) -> Option<ParabolicDiagram> {
        let mut chosen = vec![p.clone()];
        self.complete(&mut chosen, 0, p.closure, MAXIMAL_RANK.checked_sub(p.rank())?).then_some(ParabolicDiagram { components: chosen })
    }

    fn complete(&self, chosen: &mut Vec<ConnectedParabolic>, from: usize, blocked: u64, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        for (i, q) in self.parabolics.iter().enumerate().skip(from) {
            if q.rank() > remaining || q.mask() & blocked != 0 {
                continue;
            }
            chosen.push(q.clone());
            if self.complete(chosen, i + 1, blocked | q.closure, remaining - q.rank()) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Every parabolic subdiagram of rank exactly 8.
    pub fn rank8_diagrams(&self) -> Vec<ParabolicDiagram> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.collect(&mut stack, 0, 0, MAXIMAL_RANK, &mut |c| {
            if c.iter().map(|p| p.rank()).sum::<usize>() == MAXIMAL_RANK {
                out.push(ParabolicDiagram { components: c.to_vec() });
            }
        });
        out
    }

    /// Parabolic subdiagrams to which no further connected parabolic can be
    /// added.
    pub fn maximal_by_inclusion(&self) -> Vec<ParabolicDiagram> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let parabolics = &self.parabolics;
        self.collect(&mut stack, 0, 0, usize::MAX, &mut |c| {
            if c.is_empty() {
                return;
            }
            let blocked = c.iter().fold(0, |m, p| m | p.closure);
            if parabolics.iter().all(|q| q.mask() & blocked != 0) {
                out.push(ParabolicDiagram { components: c.to_vec() });
            }
        });
        out
    }

    fn collect(
        &self,
        chosen: &mut Vec<ConnectedParabolic>,
        from: usize,
        blocked: u64,
        budget: usize,
        visit: &mut dyn FnMut(&[ConnectedParabolic]),
    ) {
        visit(chosen);
        for (i, q) in self.parabolics.iter().enumerate().skip(from) {
            if q.rank() > budget || q.mask() & blocked != 0 {
                continue;
            }
            chosen.push(q.clone());
            self.collect(chosen, i + 1, blocked | q.closure, budget - q.rank(), visit);
            chosen.pop();
        }
    }

    pub fn census(&self) -> Census {
        let mut census = Census::new();
        for d in self.rank8_diagrams() {
            *census.entry(d.census_key()).or_default() += 1;
        }
        census
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct VinbergReport {
    pub vertices: usize,
    pub gram_rank: usize,
    pub ambient_rank: usize,
    pub nondegenerate: bool,
    pub no_triple_lines: bool,
    pub triple_lines: Vec<(usize, usize)>,
    pub connected_parabolic_count: usize,
    /// Connected parabolics that are not a component of any rank-8 parabolic.
    pub failures: Vec<ConnectedParabolic>,
    pub verdict: Verdict,
}

impl VinbergReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn vinberg_check(graph: &CurveGraph, ambient_rank: usize) -> Result<VinbergReport, VinbergError> {
    let gram_rank = graph.inertia_of(&(0..graph.len()).collect::<Vec<_>>()).rank();
    let nondegenerate = gram_rank == ambient_rank;
    let triple_lines = graph.triple_lines();
    let no_triple_lines = triple_lines.is_empty();
    let index = ParabolicIndex::new(graph)?;
    let failures: Vec<ConnectedParabolic> =
        index.parabolics().iter().filter(|p| index.completion(p).is_none()).cloned().collect();
    let verdict = if nondegenerate && no_triple_lines && failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(VinbergReport {
        vertices: graph.len(),
        gram_rank,
        ambient_rank,
        nondegenerate,
        no_triple_lines,
        triple_lines,
        connected_parabolic_count: index.parabolics().len(),
        failures,
        verdict,
    })
}

pub fn maximal_parabolic_census(graph: &CurveGraph) -> Result<Census, VinbergError> {
    Ok(ParabolicIndex::new(graph)?.census())
}
