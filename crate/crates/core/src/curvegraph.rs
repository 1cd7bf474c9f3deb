//! Dual graphs of (−2)-curves.
//!
//! File format:
//! ```json
//! { "name": "...", "vertices": ["a", "b"], "edges": [[0, 1, 2]] }
//! ```
//! Indices are 0-based, each unordered pair is listed once and multiplicities
//! are ≥ 1. [`CurveGraph::to_json`] writes the canonical form: vertices in the
//! given order, edges as (i < j) sorted lexicographically, one per line.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Deserialize;
use thiserror::Error;

use crate::lattice::{self, Inertia, LatticeError};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} vertices exceeds the limit of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge {0:?} refers to a vertex outside 0..{1}")]
    IndexOutOfRange([u32; 3], usize),
    #[error("edge {0:?} is a loop")]
    Loop([u32; 3]),
    #[error("edge {0:?} has multiplicity 0")]
    ZeroMultiplicity([u32; 3]),
    #[error("pair ({0}, {1}) listed twice")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("subdiagram vertex {0} out of range or repeated")]
    BadSubset(usize),
    #[error("subdiagram is empty")]
    EmptySubdiagram,
    #[error("subdiagram {0:?} is not connected")]
    Disconnected(Vec<usize>),
    #[error("negative definite subdiagram {0:?} matches no Dynkin template")]
    TemplateMismatch(Vec<usize>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    name: String,
    vertices: Vec<String>,
    edges: Vec<[u32; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGraph {
    name: String,
    labels: Vec<String>,
    mult: Vec<Vec<u32>>,
    /// Bit j of adjacency[i] is set when mult[i][j] > 0.
    adjacency: Vec<u64>,
}

impl CurveGraph {
    pub fn new(name: &str, labels: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self, GraphError> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut mult = vec![vec![0u32; n]; n];
        for &(i, j, m) in edges {
            let raw = [i as u32, j as u32, m];
            if i >= n || j >= n {
                return Err(GraphError::IndexOutOfRange(raw, n));
            }
            if i == j {
                return Err(GraphError::Loop(raw));
            }
            if m == 0 {
                return Err(GraphError::ZeroMultiplicity(raw));
            }
            if mult[i][j] != 0 {
                return Err(GraphError::DuplicateEdge(i.min(j), i.max(j)));
            }
            mult[i][j] = m;
            mult[j][i] = m;
        }
        Ok(Self::from_matrix(name, labels, mult))
    }

    fn from_matrix(name: &str, labels: Vec<String>, mult: Vec<Vec<u32>>) -> Self {
        let adjacency = mult
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &m)| m > 0).fold(0u64, |acc, (j, _)| acc | (1 << j)))
            .collect();
        CurveGraph { name: name.to_string(), labels, mult, adjacency }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize, u32)> = file.edges.iter().map(|e| (e[0] as usize, e[1] as usize, e[2])).collect();
        Self::new(&file.name, file.vertices, &edges)
    }

    pub fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let mut out = String::from("{\n");
        out += &format!("  \"name\": {},\n", quote(&self.name));
        let labels: Vec<String> = self.labels.iter().map(|l| quote(l)).collect();
        out += &format!("  \"vertices\": [{}],\n", labels.join(", "));
        let edges: Vec<String> = self.edges().iter().map(|(i, j, m)| format!("    [{i}, {j}, {m}]")).collect();
        if edges.is_empty() {
            out += "  \"edges\": []\n";
        } else {
            out += &format!("  \"edges\": [\n{}\n  ]\n", edges.join(",\n"));
        }
        out += "}\n";
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[i][j]
    }
    pub fn neighbors(&self, i: usize) -> u64 {
        self.adjacency[i]
    }

    /// Edges (i, j, m) with i < j in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.mult[i][j] > 0 {
                    out.push((i, j, self.mult[i][j]));
                }
            }
        }
        out
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.induced_gram(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn induced_gram(&self, vertices: &[usize]) -> Vec<Vec<i64>> {
        vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| if i == j { -2 } else { self.mult[i][j] as i64 }).collect())
            .collect()
    }

    pub fn inertia_of(&self, vertices: &[usize]) -> Inertia {
        lattice::signature(&self.induced_gram(vertices)).expect("induced Gram matrices are symmetric")
    }

    /// The curve classes span a lattice of rank `ambient_rank`.
    pub fn is_nondegenerate(&self, ambient_rank: usize) -> bool {
        self.inertia_of(&(0..self.len()).collect::<Vec<_>>()).rank() == ambient_rank
    }

    pub fn has_triple_lines(&self) -> bool {
        self.mult.iter().flatten().any(|&m| m >= 3)
    }

    /// Vertex pairs joined by lines of multiplicity ≥ 3.
    pub fn triple_lines(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|e| e.2 >= 3).map(|(i, j, _)| (i, j)).collect()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn is_connected_mask(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adjacency[v] & mask & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == mask
    }

    /// Whether some edge joins the two vertex sets.
    pub fn sets_adjacent(&self, a: u64, b: u64) -> bool {
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adjacency[v] & b != 0 {
                return true;
            }
        }
        false
    }

    pub fn subdiagram(&self, vertices: &[usize]) -> Result<Subdiagram, GraphError> {
        Subdiagram::new(self, vertices)
    }

    pub fn subdiagram_by_labels(&self, labels: &[&str]) -> Result<Subdiagram, GraphError> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| GraphError::DuplicateLabel(l.to_string())))
            .collect::<Result<_, _>>()?;
        Subdiagram::new(self, &idx)
    }

    pub fn classify(&self, sub: &Subdiagram) -> Result<DiagramClass, GraphError> {
        if !self.is_connected_mask(sub.mask) {
            return Err(GraphError::Disconnected(sub.vertices.clone()));
        }
        let inertia = self.inertia_of(&sub.vertices);
        if inertia.is_negative_definite() {
            return finite_template(self, &sub.vertices)
                .map(DiagramClass::Finite)
                .ok_or_else(|| GraphError::TemplateMismatch(sub.vertices.clone()));
        }
        if inertia.positive == 0 && inertia.zero == 1 {
            if let Some(t) = affine_template(self, &sub.vertices) {
                return Ok(DiagramClass::Affine(t));
            }
        }
        Ok(DiagramClass::Indefinite { vertices: sub.len() })
    }

    /// A copy without the given vertex.
    pub fn without_vertex(&self, v: usize) -> CurveGraph {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != v).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mult = keep.iter().map(|&i| keep.iter().map(|&j| self.mult[i][j]).collect()).collect();
        Self::from_matrix(&format!("{}-minus-{}", self.name, self.labels[v]), labels, mult)
    }

    /// A copy with mult[i][j] replaced.
    pub fn with_multiplicity(&self, i: usize, j: usize, m: u32) -> CurveGraph {
        let mut mult = self.mult.clone();
        mult[i][j] = m;
        mult[j][i] = m;
        Self::from_matrix(&format!("{}-edge-{}-{}", self.name, self.labels[i], self.labels[j]), self.labels.clone(), mult)
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..n).all(|i| (0..n).all(|j| self.mult[i][j] == self.mult[perm[i]][perm[j]]))
    }

    pub fn symmetry_group(&self) -> SymmetryGroup {
        symmetry::compute(self)
    }
}

/// A vertex subset of a graph, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subdiagram {
    vertices: Vec<usize>,
    mask: u64,
}

impl Subdiagram {
    pub fn new(graph: &CurveGraph, vertices: &[usize]) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptySubdiagram);
        }
        let mut mask = 0u64;
        for &v in vertices {
            if v >= graph.len() || mask & (1 << v) != 0 {
                return Err(GraphError::BadSubset(v));
            }
            mask |= 1 << v;
        }
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut vertices = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            vertices.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        Subdiagram { vertices, mask }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
    pub fn mask(&self) -> u64 {
        self.mask
    }
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
    pub fn labels<'g>(&self, graph: &'g CurveGraph) -> Vec<&'g str> {
        self.vertices.iter().map(|&v| graph.label(v)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn a(rank: usize) -> Self {
        DynkinType { family: Family::A, rank }
    }
    pub fn d(rank: usize) -> Self {
        DynkinType { family: Family::D, rank }
    }
    pub fn e(rank: usize) -> Self {
        DynkinType { family: Family::E, rank }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}{}", self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramClass {
    Finite(DynkinType),
    /// Extended diagram; the rank is one less than the vertex count.
    Affine(DynkinType),
    Indefinite { vertices: usize },
}

impl DiagramClass {
    pub fn rank(&self) -> usize {
        match self {
            DiagramClass::Finite(t) | DiagramClass::Affine(t) => t.rank,
            DiagramClass::Indefinite { vertices } => *vertices,
        }
    }
    pub fn affine(&self) -> Option<DynkinType> {
        match self {
            DiagramClass::Affine(t) => Some(*t),
            _ => None,
        }
    }
}

impl fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramClass::Finite(t) => write!(f, "{t}"),
            DiagramClass::Affine(t) => write!(f, "~{t}"),
            DiagramClass::Indefinite { vertices } => write!(f, "indefinite({vertices})"),
        }
    }
}

struct Shape {
    degree: Vec<usize>,
    edges: usize,
    simple: bool,
}

fn shape(graph: &CurveGraph, vs: &[usize]) -> Shape {
    let mut degree = vec![0; vs.len()];
    let mut edges = 0;
    let mut simple = true;
    for (a, &i) in vs.iter().enumerate() {
        for (b, &j) in vs.iter().enumerate().skip(a + 1) {
            let m = graph.multiplicity(i, j);
            if m > 0 {
                degree[a] += 1;
                degree[b] += 1;
                edges += 1;
                simple &= m == 1;
            }
        }
    }
    Shape { degree, edges, simple }
}

/// Arm lengths (sorted) of a tree around local vertex `center`.
fn arms(graph: &CurveGraph, vs: &[usize], center: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for (b, &j) in vs.iter().enumerate() {
        if b == center || graph.multiplicity(vs[center], j) == 0 {
            continue;
        }
        let (mut prev, mut cur, mut len) = (center, b, 1);
        loop {
            let next = (0..vs.len()).find(|&c| c != prev && c != cur && graph.multiplicity(vs[cur], vs[c]) > 0);
            match next {
                Some(c) => {
                    prev = cur;
                    cur = c;
                    len += 1;
                }
                None => break,
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

fn finite_template(graph: &CurveGraph, vs: &[usize]) -> Option<DynkinType> {
    let n = vs.len();
    let s = shape(graph, vs);
    if !s.simple || s.edges + 1 != n {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&i| s.degree[i] >= 3).collect();
    match branches.as_slice() {
        [] => Some(DynkinType::a(n)),
        [c] if s.degree[*c] == 3 => match arms(graph, vs, *c).as_slice() {
            [1, 1, _] => Some(DynkinType::d(n)),
            [1, 2, 2] => Some(DynkinType::e(6)),
            [1, 2, 3] => Some(DynkinType::e(7)),
            [1, 2, 4] => Some(DynkinType::e(8)),
            _ => None,
        },
        _ => None,
    }
}

fn affine_template(graph: &CurveGraph, vs: &[usize]) -> Option<DynkinType> {
    let n = vs.len();
    if n == 2 {
        return (graph.multiplicity(vs[0], vs[1]) == 2).then_some(DynkinType::a(1));
    }
    let s = shape(graph, vs);
    if !s.simple {
        return None;
    }
    if s.edges == n && s.degree.iter().all(|&d| d == 2) {
        return Some(DynkinType::a(n - 1));
    }
    if s.edges + 1 != n {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&i| s.degree[i] >= 3).collect();
    match branches.as_slice() {
        [c] if s.degree[*c] == 4 && n == 5 => Some(DynkinType::d(4)),
        [c] if s.degree[*c] == 3 => match arms(graph, vs, *c).as_slice() {
            [2, 2, 2] => Some(DynkinType::e(6)),
            [1, 3, 3] => Some(DynkinType::e(7)),
            [1, 2, 5] => Some(DynkinType::e(8)),
            _ => None,
        },
        [b1, b2] if s.degree[*b1] == 3 && s.degree[*b2] == 3 => {
            let leaves = |c: usize| {
                (0..n).filter(|&l| s.degree[l] == 1 && graph.multiplicity(vs[c], vs[l]) > 0).count()
            };
            (leaves(*b1) == 2 && leaves(*b2) == 2).then_some(DynkinType::d(n - 1))
        }
        _ => None,
    }
}

/// Automorphisms of a graph preserving edge multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub order: BigUint,
    /// Each generator maps vertex i to generators[k][i].
    pub generators: Vec<Vec<usize>>,
}

mod symmetry {
    use super::*;

    /// A vertex colour with the sorted (multiplicity, colour) list of its neighbours.
    type Signature = (usize, Vec<(u32, usize)>);

    /// Colour refinement: start from one class and split by the multiset of
    /// (multiplicity, neighbour colour) until stable.
    pub(super) fn refine(graph: &CurveGraph) -> Vec<usize> {
        let n = graph.len();
        let mut colors = vec![0usize; n];
        let mut classes = 1;
        loop {
            let sigs: Vec<Signature> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u32, usize)> = (0..n)
                        .filter(|&u| graph.multiplicity(v, u) > 0)
                        .map(|u| (graph.multiplicity(v, u), colors[u]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut table: BTreeMap<&Signature, usize> = BTreeMap::new();
            for s in &sigs {
                let k = table.len();
                table.entry(s).or_insert(k);
            }
            let ranked: BTreeMap<_, usize> = table.keys().enumerate().map(|(r, k)| (*k, r)).collect();
            let next: Vec<usize> = sigs.iter().map(|s| ranked[s]).collect();
            let count = ranked.len();
            colors = next;
            if count == classes {
                return colors;
            }
            classes = count;
        }
    }

    struct Search<'a> {
        graph: &'a CurveGraph,
        colors: &'a [usize],
        order: Vec<usize>,
    }

    impl Search<'_> {
        fn extend(&self, perm: &mut [usize], used: &mut u64, depth: usize) -> bool {
            let Some(&v) = self.order.get(depth) else { return true };
            if perm[v] != usize::MAX {
                return self.extend(perm, used, depth + 1);
            }
            let n = self.graph.len();
            for w in 0..n {
                if *used & (1 << w) != 0 || self.colors[w] != self.colors[v] {
                    continue;
                }
                if !self.consistent(perm, v, w) {
                    continue;
                }
                perm[v] = w;
                *used |= 1 << w;
                if self.extend(perm, used, depth + 1) {
                    return true;
                }
                perm[v] = usize::MAX;
                *used &= !(1 << w);
            }
            false
        }

        fn consistent(&self, perm: &[usize], v: usize, w: usize) -> bool {
            (0..self.graph.len())
                .all(|u| perm[u] == usize::MAX || self.graph.multiplicity(v, u) == self.graph.multiplicity(w, perm[u]))
        }

        /// An automorphism fixing `fixed` pointwise and sending `v` to `w`.
        fn find(&self, fixed: &[usize], v: usize, w: usize) -> Option<Vec<usize>> {
            let n = self.graph.len();
            let mut perm = vec![usize::MAX; n];
            let mut used = 0u64;
            for &f in fixed {
                perm[f] = f;
                used |= 1 << f;
            }
            if self.colors[v] != self.colors[w] || used & (1 << w) != 0 || !self.consistent(&perm, v, w) {
                return None;
            }
            perm[v] = w;
            used |= 1 << w;
            self.extend(&mut perm, &mut used, 0).then_some(perm)
        }
    }

    /// Vertices in an order that keeps each new vertex adjacent to earlier
    /// ones where possible, so partial maps are checked early.
    fn search_order(graph: &CurveGraph, colors: &[usize]) -> Vec<usize> {
        let n = graph.len();
        let mut class_size = vec![0usize; n];
        for &c in colors {
            class_size[c] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let best = (0..n)
                .filter(|&v| placed & (1 << v) == 0)
                .max_by_key(|&v| {
                    let links = (graph.neighbors(v) & placed).count_ones();
                    (links, std::cmp::Reverse(class_size[colors[v]]), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            order.push(best);
            placed |= 1 << best;
        }
        order
    }

    fn orbit(start: usize, gens: &[Vec<usize>]) -> u64 {
        let mut seen = 1u64 << start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for g in gens {
                let w = g[v];
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Order and generators via a stabilizer chain along the search order;
    /// deepest stabilizers first so each orbit is computed with every
    /// generator that already fixes the prefix.
    pub(super) fn compute(graph: &CurveGraph) -> SymmetryGroup {
        let colors = refine(graph);
        let base = search_order(graph, &colors);
        let search = Search { graph, colors: &colors, order: base.clone() };
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut order = BigUint::from(1u32);
        for level in (0..base.len()).rev() {
            let v = base[level];
            let fixed = &base[..level];
            let mut orb = orbit(v, &gens);
            let mut rejected = 0u64;
            for w in 0..graph.len() {
                if orb & (1 << w) != 0 || rejected & (1 << w) != 0 || colors[w] != colors[v] || fixed.contains(&w) {
                    continue;
                }
                match search.find(fixed, v, w) {
                    Some(g) => {
                        gens.push(g);
                        orb = orbit(v, &gens);
                    }
                    None => rejected |= 1 << w,
                }
            }
            order *= BigUint::from(orb.count_ones());
        }
        gens.reverse();
        SymmetryGroup { order, generators: gens }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> CurveGraph {
        CurveGraph::new("t", (0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
    }

    fn class(g: &CurveGraph) -> DiagramClass {
        g.classify(&g.subdiagram(&(0..g.len()).collect::<Vec<_>>()).unwrap()).unwrap()
    }

    #[test]
    fn small_classifications() {
        assert_eq!(class(&graph(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)])), DiagramClass::Affine(DynkinType::a(2)));
        assert_eq!(class(&graph(2, &[(0, 1, 2)])), DiagramClass::Affine(DynkinType::a(1)));
        let star = graph(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]);
        assert_eq!(class(&star), DiagramClass::Affine(DynkinType::d(4)));
        assert_eq!(class(&graph(3, &[(0, 1, 1), (1, 2, 1)])), DiagramClass::Finite(DynkinType::a(3)));
        assert!(matches!(class(&graph(2, &[(0, 1, 3)])), DiagramClass::Indefinite { .. }));
        let d5 = graph(6, &[(0, 2, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1)]);
        assert_eq!(class(&d5), DiagramClass::Affine(DynkinType::d(5)));
    }

    #[test]
    fn disconnected_rejected() {
        let g = graph(3, &[(0, 1, 1)]);
        assert!(matches!(g.classify(&g.subdiagram(&[0, 2]).unwrap()), Err(GraphError::Disconnected(_))));
    }

    #[test]
    fn canonical_json_sorts_edges() {
        let text = r#"{"name":"x","vertices":["a","b","c"],"edges":[[2,1,1],[0,1,2]]}"#;
        let g = CurveGraph::from_json(text).unwrap();
        let canon = g.to_json();
        assert_eq!(canon, "{\n  \"name\": \"x\",\n  \"vertices\": [\"a\", \"b\", \"c\"],\n  \"edges\": [\n    [0, 1, 2],\n    [1, 2, 1]\n  ]\n}\n");
        assert_eq!(CurveGraph::from_json(&canon).unwrap().to_json(), canon);
    }

    #[test]
    fn malformed_files() {
        assert!(CurveGraph::from_json(r#"{"name":"x","vertices":["a"],"edges":[[0,0,1]]}"#).is_err());
        assert!(CurveGraph::from_json(r#"{"name":"x","vertices":["a","b"],"edges":[[0,1,0]]}"#).is_err());
        assert!(CurveGraph::from_json(r#"{"name":"x","vertices":["a","b"],"edges":[[0,1,1],[1,0,1]]}"#).is_err());
        assert!(CurveGraph::from_json(r#"{"name":"x","vertices":["a","b"],"edges":[[0,5,1]]}"#).is_err());
    }

    #[test]
    fn symmetric_groups_of_small_graphs() {
        let cycle = graph(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)]);
        assert_eq!(cycle.symmetry_group().order, BigUint::from(10u32));
        let empty = graph(6, &[]);
        assert_eq!(empty.symmetry_group().order, BigUint::from(720u32));
        let k4 = graph(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        let sym = k4.symmetry_group();
        assert_eq!(sym.order, BigUint::from(24u32));
        assert!(sym.generators.iter().all(|g| k4.is_automorphism(g)));
    }
}
