//! Edge-weighted directed multigraphs: Euler structure, spanning-tree
//! counts via the Laplacian determinant, and Eulerian-circuit counts.
//!
//! Circuits are counted up to rotation. For the weighted count the
//! all-copies permutation quotient `∏ w(e)!` is divided out; the division
//! is exact whenever some edge has weight 1 (which the counting engine
//! guarantees through augmentation) and is verified at runtime.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Expanded-edge cap for the brute-force circuit oracle.
pub const BRUTE_EULER_EDGE_CAP: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiEdge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub weight: BigUint,
}

/// Nodes in declaration order; zero-weight edges are dropped at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMultigraph {
    nodes: Vec<String>,
    edges: Vec<MultiEdge>,
}

impl WeightedMultigraph {
    pub fn new(nodes: &[&str], edges: &[(&str, &str, &str, u64)]) -> Result<WeightedMultigraph> {
        WeightedMultigraph::from_parts(
            nodes.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|(id, s, t, w)| {
                    (
                        id.to_string(),
                        s.to_string(),
                        t.to_string(),
                        BigUint::from(*w),
                    )
                })
                .collect(),
        )
    }

    pub fn from_parts(
        nodes: Vec<String>,
        edges: Vec<(String, String, String, BigUint)>,
    ) -> Result<WeightedMultigraph> {
        let mut node_idx = HashMap::with_capacity(nodes.len());
        for (i, name) in nodes.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
                return Err(Error::input(format!("bad node identifier {name:?}")));
            }
            if node_idx.insert(name.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate node {name:?}")));
            }
        }
        let mut seen_ids = HashMap::new();
        let mut resolved = Vec::with_capacity(edges.len());
        for (id, src, dst, weight) in edges {
            if weight.is_zero() {
                continue;
            }
            if seen_ids.insert(id.clone(), ()).is_some() {
                return Err(Error::input(format!("duplicate edge id {id:?}")));
            }
            let source = *node_idx
                .get(&src)
                .ok_or_else(|| Error::input(format!("edge {id:?}: unknown source {src:?}")))?;
            let target = *node_idx
                .get(&dst)
                .ok_or_else(|| Error::input(format!("edge {id:?}: unknown target {dst:?}")))?;
            resolved.push(MultiEdge {
                id,
                source,
                target,
                weight,
            });
        }
        Ok(WeightedMultigraph {
            nodes,
            edges: resolved,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    /// Weighted out-degree `d⁻(v)`.
    pub fn out_degree(&self, node: usize) -> BigUint {
        self.edges
            .iter()
            .filter(|e| e.source == node)
            .map(|e| e.weight.clone())
            .sum()
    }

    /// Weighted in-degree `d⁺(v)`.
    pub fn in_degree(&self, node: usize) -> BigUint {
        self.edges
            .iter()
            .filter(|e| e.target == node)
            .map(|e| e.weight.clone())
            .sum()
    }

    /// Nodes of positive (in+out) degree.
    pub fn support(&self) -> Vec<usize> {
        let mut touched = vec![false; self.nodes.len()];
        for e in &self.edges {
            touched[e.source] = true;
            touched[e.target] = true;
        }
        (0..self.nodes.len()).filter(|&i| touched[i]).collect()
    }

    /// Balanced degrees at every node and strongly connected support;
    /// degree-0 nodes are ignored and the empty-edge graph qualifies.
    pub fn is_eulerian_connected(&self) -> bool {
        for v in 0..self.nodes.len() {
            if self.in_degree(v) != self.out_degree(v) {
                return false;
            }
        }
        self.support_strongly_connected()
    }

    fn support_strongly_connected(&self) -> bool {
        let support = self.support();
        if support.is_empty() {
            return true;
        }
        let fwd = self.reach_from(support[0], false);
        let bwd = self.reach_from(support[0], true);
        support.iter().all(|&v| fwd[v] && bwd[v])
    }

    fn reach_from(&self, start: usize, reversed: bool) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let (from, to) = if reversed {
                    (e.target, e.source)
                } else {
                    (e.source, e.target)
                };
                if from == v && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// The out-degree Laplacian `D⁻ − A` over the positive-degree support,
    /// loops dropped; returns the support nodes and the matrix in that
    /// order. Every row sums to zero.
    pub fn support_laplacian(&self) -> (Vec<usize>, Vec<Vec<BigInt>>) {
        let support = self.support();
        let n = support.len();
        let pos: HashMap<usize, usize> = support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut lap = vec![vec![BigInt::zero(); n]; n];
        for e in &self.edges {
            if e.source == e.target {
                continue;
            }
            let s = pos[&e.source];
            let t = pos[&e.target];
            let w = BigInt::from(e.weight.clone());
            lap[s][s] += &w;
            lap[s][t] -= &w;
        }
        (support, lap)
    }

    /// Number of directed spanning trees of the positive-degree support
    /// oriented toward `root`, counting parallel copies by weight:
    /// the Laplacian minor determinant after loop removal, by fraction-free
    /// integer elimination.
    pub fn spanning_tree_count(&self, root: &str) -> Result<BigUint> {
        let root = self
            .node_index(root)
            .ok_or_else(|| Error::input(format!("unknown node {root:?}")))?;
        let (support, lap) = self.support_laplacian();
        if support.is_empty() {
            return Ok(BigUint::one());
        }
        let Some(root_pos) = support.iter().position(|&v| v == root) else {
            return Ok(BigUint::zero());
        };
        let n = support.len();
        let minor: Vec<Vec<BigInt>> = (0..n)
            .filter(|&i| i != root_pos)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != root_pos)
                    .map(|j| lap[i][j].clone())
                    .collect()
            })
            .collect();
        let det = bareiss_determinant(minor);
        if det.is_negative() {
            return Err(Error::internal(format!(
                "negative spanning-tree determinant {det}"
            )));
        }
        Ok(det.into_parts().1)
    }

    /// Weighted Euler-circuit count: `t(G̃) · ∏_v (d⁻(v)−1)! / ∏_e w(e)!`,
    /// with the factorial ratio evaluated as per-node binomial products so
    /// that nothing larger than the result is materialized.
    pub fn euler_count(&self) -> Result<BigUint> {
        if !self.is_eulerian_connected() {
            return Err(Error::structural(
                "euler_count requires a connected Eulerian multigraph",
            ));
        }
        if self.edges.is_empty() {
            return Ok(BigUint::one());
        }
        let support = self.support();
        let trees = self.spanning_tree_count(&self.nodes[support[0]].clone())?;
        let mut numerator = trees;
        let mut denominator = BigUint::one();
        for &v in &support {
            let weights: Vec<&BigUint> = self
                .edges
                .iter()
                .filter(|e| e.source == v)
                .map(|e| &e.weight)
                .collect();
            // (d−1)!/∏w! = multinomial(d; w…)/d
            let mut sum = BigUint::zero();
            for w in &weights {
                sum += *w;
                numerator *= binomial(&sum, w);
            }
            denominator *= sum;
        }
        let (quot, rem) = numerator.div_rem(&denominator);
        if !rem.is_zero() {
            return Err(Error::internal(format!(
                "non-exact circuit-count division {numerator}/{denominator}"
            )));
        }
        Ok(quot)
    }

    /// Brute-force oracle for [`euler_count`](Self::euler_count): expands
    /// weights into parallel copies, counts Eulerian circuits up to
    /// rotation (one representative per class: the rotation beginning with
    /// the first expanded copy), and divides by the copy-permutation
    /// quotient `∏ w(e)!`.
    pub fn brute_euler_count(&self) -> Result<BigUint> {
        if !self.is_eulerian_connected() {
            return Err(Error::structural(
                "brute_euler_count requires a connected Eulerian multigraph",
            ));
        }
        if self.edges.is_empty() {
            return Ok(BigUint::one());
        }
        let total: BigUint = self.edges.iter().map(|e| e.weight.clone()).sum();
        if total > BigUint::from(BRUTE_EULER_EDGE_CAP) {
            return Err(Error::size(format!(
                "brute_euler_count limited to {BRUTE_EULER_EDGE_CAP} expanded edges, got {total}"
            )));
        }
        // Expanded copies as (source, target), grouped per source node.
        let mut expanded: Vec<(usize, usize)> = Vec::new();
        for e in &self.edges {
            let mut w = e.weight.clone();
            while !w.is_zero() {
                expanded.push((e.source, e.target));
                w -= 1u32;
            }
        }
        let m = expanded.len();
        let mut used = vec![false; m];
        used[0] = true;
        let start = expanded[0].0;
        let mut classes = BigUint::zero();
        count_circuits(
            &expanded,
            &mut used,
            expanded[0].1,
            start,
            m - 1,
            &mut classes,
        );
        let mut quotient = BigUint::one();
        for e in &self.edges {
            quotient *= factorial(&e.weight);
        }
        let (count, rem) = classes.div_rem(&quotient);
        if !rem.is_zero() {
            return Err(Error::internal(format!(
                "non-exact rotation-class division {classes}/{quotient}"
            )));
        }
        Ok(count)
    }

    /// `N(G,u,v,n)`: paths of length `n` in the expanded graph, by dynamic
    /// programming over length layers with weight multiplicities.
    pub fn count_paths(&self, from: &str, to: &str, length: u64) -> Result<BigUint> {
        let from = self
            .node_index(from)
            .ok_or_else(|| Error::input(format!("unknown node {from:?}")))?;
        let to = self
            .node_index(to)
            .ok_or_else(|| Error::input(format!("unknown node {to:?}")))?;
        let mut current = vec![BigUint::zero(); self.nodes.len()];
        current[from] = BigUint::one();
        for _ in 0..length {
            let mut next = vec![BigUint::zero(); self.nodes.len()];
            for e in &self.edges {
                if !current[e.source].is_zero() {
                    let add = &current[e.source] * &e.weight;
                    next[e.target] += add;
                }
            }
            current = next;
        }
        Ok(current[to].clone())
    }
}

fn count_circuits(
    expanded: &[(usize, usize)],
    used: &mut [bool],
    at: usize,
    start: usize,
    remaining: usize,
    acc: &mut BigUint,
) {
    if remaining == 0 {
        if at == start {
            *acc += 1u32;
        }
        return;
    }
    for i in 0..expanded.len() {
        if !used[i] && expanded[i].0 == at {
            used[i] = true;
            count_circuits(expanded, used, expanded[i].1, start, remaining - 1, acc);
            used[i] = false;
        }
    }
}

/// Fraction-free (Bareiss) determinant over arbitrary-precision integers.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `C(n, k)` by the multiplicative formula on the smaller index.
pub fn binomial(n: &BigUint, k: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let other = n - k;
    let small = if k <= &other { k.clone() } else { other };
    let mut result = BigUint::one();
    let mut i = BigUint::one();
    let base = n - &small;
    while i <= small {
        result = result * (&base + &i) / &i;
        i += 1u32;
    }
    result
}

pub fn factorial(n: &BigUint) -> BigUint {
    let mut result = BigUint::one();
    let mut i = BigUint::from(2u32);
    while i <= *n {
        result *= &i;
        i += 1u32;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn three_cycle() -> WeightedMultigraph {
        WeightedMultigraph::new(
            &["u", "v", "w"],
            &[
                ("e1", "u", "v", 1),
                ("e2", "v", "w", 1),
                ("e3", "w", "u", 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eulerian_connected_checks() {
        assert!(three_cycle().is_eulerian_connected());
        let single = WeightedMultigraph::new(&["u", "v"], &[("e", "u", "v", 1)]).unwrap();
        assert!(!single.is_eulerian_connected());
        let disjoint = WeightedMultigraph::new(
            &["a", "b", "c", "d"],
            &[
                ("e1", "a", "b", 1),
                ("e2", "b", "a", 1),
                ("e3", "c", "d", 1),
                ("e4", "d", "c", 1),
            ],
        )
        .unwrap();
        assert!(!disjoint.is_eulerian_connected());
        let empty = WeightedMultigraph::new(&["a"], &[]).unwrap();
        assert!(empty.is_eulerian_connected());
    }

    #[test]
    fn spanning_trees_of_cycle_and_parallel_pair() {
        let g = three_cycle();
        for root in ["u", "v", "w"] {
            assert_eq!(g.spanning_tree_count(root).unwrap(), big(1));
        }
        let pair =
            WeightedMultigraph::new(&["u", "v"], &[("e1", "u", "v", 2), ("e2", "v", "u", 2)])
                .unwrap();
        // enumerating the expanded graph: two tree choices toward each root
        assert_eq!(pair.spanning_tree_count("u").unwrap(), big(2));
        assert_eq!(pair.spanning_tree_count("v").unwrap(), big(2));
    }

    #[test]
    fn spanning_trees_degenerate_cases() {
        let loops = WeightedMultigraph::new(&["u"], &[("l1", "u", "u", 2)]).unwrap();
        assert_eq!(loops.spanning_tree_count("u").unwrap(), big(1));
        let g = WeightedMultigraph::new(&["u", "v", "w"], &[("e", "u", "v", 1)]).unwrap();
        // w has degree zero and edges exist
        assert_eq!(g.spanning_tree_count("w").unwrap(), big(0));
    }

    #[test]
    fn euler_count_examples() {
        assert_eq!(three_cycle().euler_count().unwrap(), big(1));
        let loops =
            WeightedMultigraph::new(&["u"], &[("l1", "u", "u", 2), ("l2", "u", "u", 1)]).unwrap();
        assert_eq!(loops.euler_count().unwrap(), big(1));
        let three_loops = WeightedMultigraph::new(
            &["u"],
            &[
                ("l1", "u", "u", 1),
                ("l2", "u", "u", 1),
                ("l3", "u", "u", 1),
            ],
        )
        .unwrap();
        assert_eq!(three_loops.euler_count().unwrap(), big(2));
    }

    #[test]
    fn euler_count_requires_eulerian() {
        let single = WeightedMultigraph::new(&["u", "v"], &[("e", "u", "v", 1)]).unwrap();
        assert!(matches!(single.euler_count(), Err(Error::Structural(_))));
    }

    #[test]
    fn brute_matches_examples() {
        assert_eq!(three_cycle().brute_euler_count().unwrap(), big(1));
        let loops =
            WeightedMultigraph::new(&["u"], &[("l1", "u", "u", 2), ("l2", "u", "u", 1)]).unwrap();
        assert_eq!(loops.brute_euler_count().unwrap(), big(1));
        let three_loops = WeightedMultigraph::new(
            &["u"],
            &[
                ("l1", "u", "u", 1),
                ("l2", "u", "u", 1),
                ("l3", "u", "u", 1),
            ],
        )
        .unwrap();
        assert_eq!(three_loops.brute_euler_count().unwrap(), big(2));
    }

    #[test]
    fn brute_guard_trips() {
        let g = WeightedMultigraph::new(&["u", "v"], &[("e1", "u", "v", 7), ("e2", "v", "u", 7)])
            .unwrap();
        assert!(matches!(g.brute_euler_count(), Err(Error::Size(_))));
    }

    #[test]
    fn count_paths_examples() {
        let g = three_cycle();
        assert_eq!(g.count_paths("u", "u", 0).unwrap(), big(1));
        assert_eq!(g.count_paths("u", "v", 0).unwrap(), big(0));
        let single = WeightedMultigraph::new(&["u", "v"], &[("e", "u", "v", 3)]).unwrap();
        assert_eq!(single.count_paths("u", "v", 1).unwrap(), big(3));
        let pair =
            WeightedMultigraph::new(&["u", "v"], &[("e1", "u", "v", 2), ("e2", "v", "u", 2)])
                .unwrap();
        assert_eq!(pair.count_paths("u", "u", 4).unwrap(), big(16));
        assert!(matches!(g.count_paths("u", "zz", 1), Err(Error::Input(_))));
    }

    #[test]
    fn laplacian_rows_sum_to_zero_implicitly() {
        // out-degree equals the sum of outgoing weights by construction
        let g = WeightedMultigraph::new(
            &["a", "b", "c"],
            &[
                ("e1", "a", "b", 3),
                ("e2", "a", "c", 2),
                ("e3", "b", "a", 5),
            ],
        )
        .unwrap();
        assert_eq!(g.out_degree(0), big(5));
        assert_eq!(g.in_degree(0), big(5));
        assert_eq!(g.in_degree(2), big(2));
    }

    #[test]
    fn binomial_and_factorial_basics() {
        assert_eq!(binomial(&big(10), &big(3)), big(120));
        assert_eq!(binomial(&big(3), &big(10)), big(0));
        assert_eq!(binomial(&(big(1) << 64), &big(1)), big(1) << 64);
        assert_eq!(factorial(&big(5)), big(120));
        assert_eq!(factorial(&big(0)), big(1));
    }
}
