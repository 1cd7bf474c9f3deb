//! Slow, independent reference implementations used to cross-check the
//! library. Nothing here calls into the code it is compared against.
#![allow(dead_code)]

use enriques_core::corpus;
use enriques_core::curvegraph::CurveGraph;

pub fn corpus_graph(stem: &str) -> CurveGraph {
    let file = corpus::graph(stem).unwrap_or_else(|| panic!("no graph {stem}"));
    CurveGraph::from_json(file.text).unwrap()
}

pub fn all_graphs() -> Vec<(String, CurveGraph)> {
    corpus::GRAPHS.iter().map(|f| (f.stem().to_string(), CurveGraph::from_json(f.text).unwrap())).collect()
}

pub fn control_graphs() -> Vec<(String, CurveGraph)> {
    corpus::CONTROLS.iter().map(|f| (f.stem().to_string(), CurveGraph::from_json(f.text).unwrap())).collect()
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn masked_neg_gram(graph: &CurveGraph, mask: u32) -> Vec<Vec<i128>> {
    let vs: Vec<usize> = (0..graph.len()).filter(|&v| mask >> v & 1 == 1).collect();
    vs.iter()
        .map(|&i| {
            vs.iter()
                .map(|&j| if i == j { 2 } else { -(graph.multiplicity(i, j) as i128) })
                .collect()
        })
        .collect()
}

fn connected(graph: &CurveGraph, mask: u32) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in 0..graph.len() {
            if mask >> u & 1 == 1 && seen >> u & 1 == 0 && graph.multiplicity(v, u) > 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == mask
}

/// Every vertex set inducing a connected affine diagram, by checking all 2^n
/// subsets: the negated Gram matrix is singular while every maximal proper
/// principal submatrix is positive definite. Definiteness uses the nested
/// leading minors of each subset.
pub fn brute_force_connected_parabolics(graph: &CurveGraph) -> Vec<u32> {
    let n = graph.len();
    assert!(n <= 16, "oracle is exponential");
    let total = 1usize << n;
    let mut det = vec![0i128; total];
    let mut definite = vec![false; total];
    definite[0] = true;
    for mask in 1..total as u32 {
        det[mask as usize] = bareiss_det(masked_neg_gram(graph, mask));
        let top = 31 - mask.leading_zeros();
        definite[mask as usize] = det[mask as usize] > 0 && definite[(mask & !(1 << top)) as usize];
    }
    let mut out = Vec::new();
    for mask in 1..total as u32 {
        if det[mask as usize] != 0 || !connected(graph, mask) {
            continue;
        }
        let mut rest = mask;
        let mut ok = true;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            ok &= definite[(mask & !(1 << v)) as usize];
        }
        if ok {
            out.push(mask);
        }
    }
    out
}

/// Counts multiplicity-preserving vertex permutations by backtracking.
pub fn count_symmetries(graph: &CurveGraph) -> u64 {
    let n = graph.len();
    let degree: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            let mut d: Vec<u32> = (0..n).map(|u| graph.multiplicity(v, u)).filter(|&m| m > 0).collect();
            d.sort_unstable();
            d
        })
        .collect();
    fn extend(graph: &CurveGraph, degree: &[Vec<u32>], image: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let v = image.len();
        if v == graph.len() {
            return 1;
        }
        let mut count = 0;
        for w in 0..graph.len() {
            if used[w] || degree[v] != degree[w] {
                continue;
            }
            if (0..v).all(|u| graph.multiplicity(u, v) == graph.multiplicity(image[u], w)) {
                used[w] = true;
                image.push(w);
                count += extend(graph, degree, image, used);
                image.pop();
                used[w] = false;
            }
        }
        count
    }
    extend(graph, &degree, &mut Vec::new(), &mut vec![false; n])
}

/// Signs of the real spectrum of a symmetric integer matrix, from the
/// characteristic polynomial: its coefficients are signed sums of principal
/// minors and, all roots being real, Descartes' rule is exact.
pub fn inertia_by_descartes(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    // e[k] = sum of k x k principal minors; char poly = sum (-1)^k e[k] x^(n-k).
    let mut e = vec![0i128; n + 1];
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub: Vec<Vec<i128>> = vs.iter().map(|&i| vs.iter().map(|&j| m[i][j] as i128).collect()).collect();
        e[vs.len()] += bareiss_det(sub);
    }
    // Coefficient of x^(n-k), highest degree first.
    let coeffs: Vec<i128> = (0..=n).map(|k| if k % 2 == 0 { e[k] } else { -e[k] }).collect();
    let zero = coeffs.iter().rev().take_while(|&&c| c == 0).count();
    let changes = |cs: &[i128]| {
        let nz: Vec<i128> = cs.iter().copied().filter(|&c| c != 0).collect();
        nz.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count()
    };
    let positive = changes(&coeffs);
    // p(-x): flip the sign of odd powers of x.
    let mirrored: Vec<i128> = coeffs.iter().enumerate().map(|(k, &c)| if (n - k) % 2 == 1 { -c } else { c }).collect();
    let negative = changes(&mirrored);
    assert_eq!(positive + negative + zero, n);
    (positive, negative, zero)
}
