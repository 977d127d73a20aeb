//! Ground truth for ℓ-rankings: the fast verifier, the exhaustive oracle, and
//! exact computation of χ_ℓ by branch and bound on small instances.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("ranking colors {0} vertices but the graph has {1}")]
    UncoloredVertex(usize, usize),
    #[error("instance too large for the exhaustive oracle (n={0} > {1})")]
    InstanceTooLarge(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("search budget exhausted after {nodes} nodes (χ_ℓ ≥ {lower})")]
    BudgetExceeded {
        nodes: u64,
        lower: u32,
        upper: Option<u32>,
    },
}

/// A vertex coloring with its declared path-length parameter ℓ.
/// Colors are positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    colors: Vec<u32>,
    ell: usize,
    max_color: u32,
}

impl Ranking {
    /// Panics if any color is zero; rankings use colors {1, 2, ...}.
    pub fn new(colors: Vec<u32>, ell: usize) -> Self {
        assert!(
            colors.iter().all(|&c| c >= 1),
            "ranking colors must be positive"
        );
        let max_color = colors.iter().copied().max().unwrap_or(0);
        Ranking {
            colors,
            ell,
            max_color,
        }
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn max_color(&self) -> u32 {
        self.max_color
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn num_distinct_colors(&self) -> usize {
        let mut seen = vec![false; self.max_color as usize + 1];
        let mut count = 0;
        for &c in &self.colors {
            if !seen[c as usize] {
                seen[c as usize] = true;
                count += 1;
            }
        }
        count
    }

    /// The ranking restricted to an induced subgraph given by `vertices`
    /// (new index i gets the color of `vertices[i]`). Valid rankings stay
    /// valid under restriction: subgraphs have fewer paths.
    pub fn restricted(&self, vertices: &[usize]) -> Ranking {
        Ranking::new(
            vertices.iter().map(|&v| self.colors[v]).collect(),
            self.ell,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    EqualEndpointsNoLargerInterior,
}

/// A concrete witness: a path of length ≤ ℓ whose endpoint colors are equal
/// and are the maximum over the whole path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub witness_path: Vec<usize>,
    pub kind: ViolationKind,
}

impl Violation {
    /// Confirms this witness against a graph and ranking: a real path within
    /// the length bound, equal endpoint colors, no larger color anywhere.
    pub fn confirm(&self, g: &Graph, r: &Ranking) -> bool {
        let p = &self.witness_path;
        if p.len() < 2 || p.len() - 1 > r.ell() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return false;
            }
        }
        for &v in p {
            if !seen.insert(v) {
                return false;
            }
        }
        let c0 = r.color(p[0]);
        c0 == r.color(*p.last().unwrap()) && p.iter().all(|&v| r.color(v) <= c0)
    }
}

/// Decides whether `r` is an ℓ-ranking of `g`; on failure returns a witness.
///
/// For each start vertex u, the subgraph induced by `{w : φ(w) ≤ φ(u)}` is
/// explored to depth ℓ. Reaching any other vertex with color φ(u) yields a
/// violation, and the search path is itself a shortest witness. Restricting
/// to induced paths is justified because any violating path contains an
/// induced violating path over the same vertex set.
pub fn verify_ranking(g: &Graph, r: &Ranking) -> Result<Option<Violation>, VerifyError> {
    let n = g.vertex_count();
    if r.len() != n {
        return Err(VerifyError::UncoloredVertex(r.len(), n));
    }
    let ell = r.ell();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();

    for u in 0..n {
        let cu = r.color(u);
        dist[u] = 0;
        touched.push(u);
        queue.clear();
        queue.push_back(u);
        let mut found: Option<usize> = None;
        'bfs: while let Some(x) = queue.pop_front() {
            if dist[x] == ell {
                continue;
            }
            for &w in g.neighbors(x) {
                if r.color(w) > cu || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[x] + 1;
                parent[w] = x;
                touched.push(w);
                if r.color(w) == cu {
                    found = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if let Some(end) = found {
            let mut path = vec![end];
            let mut x = end;
            while x != u {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            for &v in &touched {
                dist[v] = usize::MAX;
            }
            return Ok(Some(Violation {
                witness_path: path,
                kind: ViolationKind::EqualEndpointsNoLargerInterior,
            }));
        }
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
    }
    Ok(None)
}

const ORACLE_DEFAULT_LIMIT: usize = 14;

/// Independent oracle: enumerates every simple path of length ≤ ℓ and checks
/// the definition directly. Guarded to small instances.
pub fn verify_ranking_oracle(g: &Graph, r: &Ranking) -> Result<Option<Violation>, VerifyError> {
    verify_ranking_oracle_with_limit(g, r, ORACLE_DEFAULT_LIMIT)
}

pub fn verify_ranking_oracle_with_limit(
    g: &Graph,
    r: &Ranking,
    max_n: usize,
) -> Result<Option<Violation>, VerifyError> {
    let n = g.vertex_count();
    if n > max_n {
        return Err(VerifyError::InstanceTooLarge(n, max_n));
    }
    if r.len() != n {
        return Err(VerifyError::UncoloredVertex(r.len(), n));
    }
    let ell = r.ell();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        path.clear();
        path.push(start);
        on_path[start] = true;
        if let Some(v) = oracle_dfs(g, r, ell, &mut path, &mut on_path) {
            return Ok(Some(v));
        }
        on_path[start] = false;
    }
    Ok(None)
}

fn oracle_dfs(
    g: &Graph,
    r: &Ranking,
    ell: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> Option<Violation> {
    if path.len() > 1 {
        let c0 = r.color(path[0]);
        let cend = r.color(*path.last().unwrap());
        if c0 == cend && path.iter().all(|&v| r.color(v) <= c0) {
            return Some(Violation {
                witness_path: path.clone(),
                kind: ViolationKind::EqualEndpointsNoLargerInterior,
            });
        }
    }
    if path.len() > ell {
        return None;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if on_path[w] {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        let hit = oracle_dfs(g, r, ell, path, on_path);
        on_path[w] = false;
        path.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Every induced path of length 1..=max_len, as vertex sequences, one
/// direction per start vertex. Exhaustive; intended for small instances.
pub fn enumerate_induced_paths(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn dfs(g: &Graph, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() >= 2 {
            out.push(path.clone());
        }
        if path.len() > max_len {
            return;
        }
        let last = *path.last().unwrap();
        'next: for &w in g.neighbors(last) {
            if path.contains(&w) {
                continue;
            }
            // induced: w may touch only the current last vertex
            for &x in path.iter().take(path.len() - 1) {
                if g.has_edge(x, w) {
                    continue 'next;
                }
            }
            path.push(w);
            dfs(g, max_len, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    for start in 0..g.vertex_count() {
        path.clear();
        path.push(start);
        dfs(g, max_len, &mut path, &mut out);
    }
    out
}

/// Greedy compaction of a valid ranking: in descending color order, each
/// vertex is lowered to the smallest color that keeps the ranking valid.
/// After a single-vertex change, any new violating walk passes through that
/// vertex, so the incremental check is complete; the result is valid
/// whenever the input is, and never uses more colors.
pub fn compact_ranking(g: &Graph, r: &Ranking) -> Ranking {
    let ell = r.ell();
    let mut colors: Vec<u32> = r.colors().to_vec();
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();

    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(colors[v]));
    for &v in &order {
        let orig = colors[v];
        for &c in palette.iter().take_while(|&&c| c < orig) {
            colors[v] = c;
            if creates_violation(g, &colors, ell, v) {
                colors[v] = orig;
            } else {
                break;
            }
        }
    }
    // order-preserving renumbering onto 1..=D
    let mut used: Vec<u32> = colors.clone();
    used.sort_unstable();
    used.dedup();
    let remapped = colors
        .iter()
        .map(|c| used.binary_search(c).unwrap() as u32 + 1)
        .collect();
    Ranking::new(remapped, ell)
}

/// Node budget for the exact search. Exceeding it aborts with the best bounds
/// found so far rather than returning a silently wrong answer.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub chi: u32,
    pub witness: Ranking,
    pub nodes: u64,
}

/// Minimum k such that `g` has a valid ℓ-ranking with colors {1..k}, plus a
/// witness, by iterative deepening on k.
///
/// Assignments follow a fixed order (descending degree, ties by index) and a
/// branch is pruned as soon as the fully-colored vertices contain a violating
/// path; such a violation can never be repaired by coloring more vertices.
pub fn exact_chi(g: &Graph, ell: usize, budget: SearchBudget) -> Result<ExactResult, ExactError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ExactResult {
            chi: 0,
            witness: Ranking::new(vec![], ell),
            nodes: 0,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut nodes = 0u64;
    for k in 1..=(n as u32) {
        let mut colors = vec![0u32; n];
        match search(g, ell, k, &order, 0, &mut colors, &mut nodes, budget.max_nodes) {
            SearchOutcome::Found => {
                let witness = Ranking::new(colors, ell);
                debug_assert_eq!(verify_ranking(g, &witness), Ok(None));
                return Ok(ExactResult {
                    chi: k,
                    witness,
                    nodes,
                });
            }
            SearchOutcome::Refuted => {}
            SearchOutcome::OutOfBudget => {
                return Err(ExactError::BudgetExceeded {
                    nodes,
                    lower: k,
                    upper: None,
                });
            }
        }
    }
    unreachable!("n distinct colors always rank a graph of n vertices");
}

enum SearchOutcome {
    Found,
    Refuted,
    OutOfBudget,
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    ell: usize,
    k: u32,
    order: &[usize],
    idx: usize,
    colors: &mut Vec<u32>,
    nodes: &mut u64,
    max_nodes: u64,
) -> SearchOutcome {
    if idx == order.len() {
        return SearchOutcome::Found;
    }
    let v = order[idx];
    for c in 1..=k {
        *nodes += 1;
        if *nodes > max_nodes {
            return SearchOutcome::OutOfBudget;
        }
        colors[v] = c;
        if !creates_violation(g, colors, ell, v) {
            match search(g, ell, k, order, idx + 1, colors, nodes, max_nodes) {
                SearchOutcome::Refuted => {}
                other => return other,
            }
        }
    }
    colors[v] = 0;
    SearchOutcome::Refuted
}

/// Whether the partial coloring (0 = uncolored) contains a violating walk
/// through `v` among the colored vertices.
///
/// For every candidate top color C ≥ φ(v) in use, a BFS from v over colored
/// vertices with φ ≤ C collects distances; two distinct C-colored vertices
/// with distance sum ≤ ℓ close a violating walk through v (walks with
/// distinct endpoints suffice to witness a broken ranking).
fn creates_violation(g: &Graph, colors: &[u32], ell: usize, v: usize) -> bool {
    let cv = colors[v];
    let mut candidates: Vec<u32> = colors
        .iter()
        .copied()
        .filter(|&c| c >= cv && c > 0)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for cap in candidates {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[v] = 0;
        queue.clear();
        queue.push_back(v);
        let mut best: usize = usize::MAX; // smallest distance to a cap-colored vertex
        let mut second: usize = usize::MAX;
        if colors[v] == cap {
            best = 0;
        }
        while let Some(x) = queue.pop_front() {
            if dist[x] == ell {
                continue;
            }
            for &w in g.neighbors(x) {
                if colors[w] == 0 || colors[w] > cap || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[x] + 1;
                if colors[w] == cap {
                    if dist[w] < best {
                        second = best;
                        best = dist[w];
                    } else if dist[w] < second {
                        second = dist[w];
                    }
                }
                queue.push_back(w);
            }
        }
        if second != usize::MAX && best + second <= ell {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranking(colors: &[u32], ell: usize) -> Ranking {
        Ranking::new(colors.to_vec(), ell)
    }

    #[test]
    fn p3_121_ok() {
        let g = Graph::path(3);
        let r = ranking(&[1, 2, 1], 2);
        assert_eq!(verify_ranking(&g, &r), Ok(None));
        assert_eq!(verify_ranking_oracle(&g, &r), Ok(None));
    }

    #[test]
    fn p2_equal_edge_violates() {
        let g = Graph::path(2);
        let r = ranking(&[1, 1], 1);
        let v = verify_ranking(&g, &r).unwrap().unwrap();
        assert!(v.confirm(&g, &r));
        assert_eq!(v.witness_path.len(), 2);
    }

    #[test]
    fn p4_1212_violates_at_ell2() {
        let g = Graph::path(4);
        let r = ranking(&[1, 2, 1, 2], 2);
        let v = verify_ranking(&g, &r).unwrap().unwrap();
        assert!(v.confirm(&g, &r));
        let o = verify_ranking_oracle(&g, &r).unwrap().unwrap();
        assert!(o.confirm(&g, &r));
    }

    #[test]
    fn single_vertex_and_distinct_clique_ok() {
        let g = Graph::new(1);
        assert_eq!(verify_ranking_oracle(&g, &ranking(&[5], 3)), Ok(None));
        let k3 = Graph::complete(3);
        assert_eq!(verify_ranking_oracle(&k3, &ranking(&[1, 2, 3], 3)), Ok(None));
    }

    #[test]
    fn uncolored_vertex_error() {
        let g = Graph::path(3);
        let r = ranking(&[1, 2], 2);
        assert_eq!(
            verify_ranking(&g, &r),
            Err(VerifyError::UncoloredVertex(2, 3))
        );
    }

    #[test]
    fn oracle_size_guard() {
        let g = Graph::path(20);
        let r = ranking(&vec![1; 20], 1);
        assert!(matches!(
            verify_ranking_oracle(&g, &r),
            Err(VerifyError::InstanceTooLarge(20, 14))
        ));
    }

    #[test]
    fn exact_chi_k1() {
        let g = Graph::new(1);
        let res = exact_chi(&g, 5, SearchBudget::default()).unwrap();
        assert_eq!(res.chi, 1);
    }

    #[test]
    fn exact_chi_star_ell2() {
        // K_{1,3}: leaves 1, center 2.
        let g = Graph::star(3);
        let res = exact_chi(&g, 2, SearchBudget::default()).unwrap();
        assert_eq!(res.chi, 2);
        assert_eq!(verify_ranking(&g, &res.witness), Ok(None));
    }

    #[test]
    fn exact_chi_p4_ell2_is_3() {
        // Both 2-colorings 1212/2121 violate; (1,2,1,3) verifies.
        let g = Graph::path(4);
        let res = exact_chi(&g, 2, SearchBudget::default()).unwrap();
        assert_eq!(res.chi, 3);
        assert_eq!(verify_ranking_oracle(&g, &res.witness), Ok(None));
    }

    #[test]
    fn exact_chi_budget_exceeded() {
        let g = Graph::cycle(8);
        let err = exact_chi(&g, 2, SearchBudget { max_nodes: 3 }).unwrap_err();
        assert!(matches!(err, ExactError::BudgetExceeded { .. }));
    }

    #[test]
    fn walk_injection_detected() {
        // A violating walk with distinct endpoints: x - c - y with
        // φ(x) = φ(y) = 2, φ(c) = 1 embedded in a larger graph.
        let mut g = Graph::path(5);
        g.add_edge(1, 3);
        let r = ranking(&[3, 2, 1, 2, 3], 2);
        let v = verify_ranking(&g, &r).unwrap();
        assert!(v.is_some());
        assert!(v.unwrap().confirm(&g, &r));
    }
}
