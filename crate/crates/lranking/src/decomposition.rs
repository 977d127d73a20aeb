//! Rooted tree and path decompositions: validation, edge-maximal completion,
//! weighted separators, layer restrictions, and instance generators.

use std::collections::HashMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Layering};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("decomposition is not valid for the graph: {0}")]
    InvalidDecomposition(String),
    #[error("vertex {0} occurs in no bag")]
    VertexNotInDecomposition(usize),
    #[error("layer index {0} out of range (layering has {1} layers)")]
    LayerOutOfRange(usize, usize),
    #[error("need at least t+1 = {0} vertices")]
    TooSmall(usize),
}

/// A tree decomposition on a rooted tree. Node ids are dense `0..node_count`;
/// bags are sorted vertex lists.
#[derive(Debug, Clone)]
pub struct RootedTreeDecomposition {
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl RootedTreeDecomposition {
    /// Builds from per-node bags and parent links; exactly one node (the root)
    /// has no parent. Panics if the parent links do not form a tree.
    pub fn new(mut bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Self {
        assert_eq!(bags.len(), parent.len());
        let mut root = None;
        let mut children = vec![Vec::new(); bags.len()];
        for (x, &p) in parent.iter().enumerate() {
            match p {
                None => {
                    assert!(root.is_none(), "two roots in tree decomposition");
                    root = Some(x);
                }
                Some(p) => {
                    assert!(p < bags.len());
                    children[p].push(x);
                }
            }
        }
        let root = root.expect("tree decomposition has no root");
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        let d = RootedTreeDecomposition {
            bags,
            parent,
            children,
            root,
        };
        assert_eq!(
            d.post_order().len(),
            d.node_count(),
            "parent links contain a cycle"
        );
        d
    }

    /// Single-bag decomposition.
    pub fn single_bag(bag: Vec<usize>) -> Self {
        Self::new(vec![bag], vec![None])
    }

    /// Builds from undirected tree edges, rooting at `root`.
    pub fn from_tree_edges(bags: Vec<Vec<usize>>, edges: &[(usize, usize)], root: usize) -> Self {
        let n = bags.len();
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    stack.push(y);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "tree edges are disconnected");
        Self::new(bags, parent)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn bag(&self, x: usize) -> &[usize] {
        &self.bags[x]
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    /// Max bag size minus one; 0 for an all-empty decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.node_count()];
        for &x in &self.pre_order() {
            if let Some(p) = self.parent[x] {
                depth[x] = depth[p] + 1;
            }
        }
        depth
    }

    pub fn pre_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            order.push(x);
            for &c in self.children[x].iter().rev() {
                stack.push(c);
            }
        }
        order
    }

    pub fn post_order(&self) -> Vec<usize> {
        let mut order = self.pre_order();
        order.reverse();
        order
    }

    /// Nodes with at least two children (the set Λ(T)).
    pub fn branching_nodes(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&x| self.children[x].len() >= 2)
            .collect()
    }

    /// The minimum-depth node whose bag contains `v` (x_T(v)); unique when the
    /// occurrence set is a connected subtree.
    pub fn min_depth_bag(&self, v: usize) -> Result<usize, DecompositionError> {
        let depth = self.depths();
        let mut best: Option<usize> = None;
        for x in 0..self.node_count() {
            if self.bags[x].binary_search(&v).is_ok()
                && best.is_none_or(|b| depth[x] < depth[b])
            {
                best = Some(x);
            }
        }
        best.ok_or(DecompositionError::VertexNotInDecomposition(v))
    }

    /// Bags intersected with `layer`; tree shape unchanged.
    pub fn layer_restriction(&self, layer: &[usize]) -> RootedTreeDecomposition {
        let keep: std::collections::HashSet<usize> = layer.iter().copied().collect();
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().copied().filter(|v| keep.contains(v)).collect())
            .collect();
        RootedTreeDecomposition {
            bags,
            parent: self.parent.clone(),
            children: self.children.clone(),
            root: self.root,
        }
    }

    /// Bags mapped through `relabel` (entries of `usize::MAX` drop a vertex).
    /// Used to carry a decomposition onto an induced subgraph.
    pub fn relabeled(&self, relabel: &[usize]) -> RootedTreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b
                    .iter()
                    .filter_map(|&v| {
                        let nv = relabel[v];
                        (nv != usize::MAX).then_some(nv)
                    })
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        RootedTreeDecomposition {
            bags,
            parent: self.parent.clone(),
            children: self.children.clone(),
            root: self.root,
        }
    }

    /// Re-roots the decomposition at `new_root`.
    pub fn rerooted(&self, new_root: usize) -> RootedTreeDecomposition {
        let mut edges = Vec::new();
        for (x, &p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                edges.push((x, p));
            }
        }
        Self::from_tree_edges(self.bags.clone(), &edges, new_root)
    }

    /// The subtree-induced decomposition on the nodes for which `keep` is
    /// true; the kept node set must contain `new_root` and be connected
    /// upward toward it. Returns the new decomposition and the mapping from
    /// new node ids to old ones.
    pub fn induced_on_nodes(
        &self,
        keep: &[bool],
        new_root: usize,
    ) -> (RootedTreeDecomposition, Vec<usize>) {
        assert!(keep[new_root]);
        let mut old_of = Vec::new();
        let mut new_of = vec![usize::MAX; self.node_count()];
        for &x in &self.pre_order() {
            if keep[x] {
                new_of[x] = old_of.len();
                old_of.push(x);
            }
        }
        let mut bags = Vec::with_capacity(old_of.len());
        let mut parent = vec![None; old_of.len()];
        for (nx, &x) in old_of.iter().enumerate() {
            bags.push(self.bags[x].clone());
            if x != new_root {
                let p = self.parent[x].expect("kept node set not connected to new root");
                assert!(keep[p], "kept node set not upward-closed toward root");
                parent[nx] = Some(new_of[p]);
            }
        }
        (RootedTreeDecomposition::new(bags, parent), old_of)
    }
}

/// A path decomposition: an ordered list of bags. Consecutive bags with empty
/// intersection are allowed and delimit independent stretches.
#[derive(Debug, Clone)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        PathDecomposition { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// As a rooted chain with bag 0 at the root.
    pub fn as_rooted(&self) -> RootedTreeDecomposition {
        let n = self.bags.len().max(1);
        let mut bags = self.bags.clone();
        if bags.is_empty() {
            bags.push(Vec::new());
        }
        let parent = (0..n).map(|i| if i == 0 { None } else { Some(i - 1) }).collect();
        RootedTreeDecomposition::new(bags, parent)
    }

    /// Checks the interval property and edge coverage for `g`.
    pub fn validate(&self, g: &Graph) -> DecompositionReport {
        self.as_rooted().validate(g, None)
    }
}

/// A structured finding from decomposition validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    BagVertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered { vertex: usize },
    DisconnectedOccurrence { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    WidthMismatch { expected: usize, actual: usize },
    SubsetInTooManyBags { subset: Vec<usize>, count: usize },
}

/// Validation outcome: `is_valid` iff `violations` is empty (ignoring the
/// simpleness findings, which only gate `is_simple_for`).
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub is_valid: bool,
    pub width: usize,
    pub is_simple_for: Option<usize>,
    pub violations: Vec<DecompositionViolation>,
}

impl RootedTreeDecomposition {
    /// Checks occurrence connectivity, vertex and edge coverage, and width.
    /// When `t` is supplied additionally decides the t-simple condition:
    /// width exactly `t` and every t-element vertex set in at most 2 bags.
    pub fn validate(&self, g: &Graph, t: Option<usize>) -> DecompositionReport {
        let n = g.vertex_count();
        let mut violations = Vec::new();

        let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    violations.push(DecompositionViolation::BagVertexOutOfRange {
                        node: x,
                        vertex: v,
                    });
                } else {
                    occurrences[v].push(x);
                }
            }
        }

        // Occurrence sets must be nonempty connected subtrees: exactly one
        // occurrence node may lack its parent in the set.
        let mut stamp = vec![usize::MAX; self.node_count()];
        for v in 0..n {
            if occurrences[v].is_empty() {
                violations.push(DecompositionViolation::VertexUncovered { vertex: v });
                continue;
            }
            for &x in &occurrences[v] {
                stamp[x] = v;
            }
            let tops = occurrences[v]
                .iter()
                .filter(|&&x| self.parent[x].is_none_or(|p| stamp[p] != v))
                .count();
            if tops != 1 {
                violations.push(DecompositionViolation::DisconnectedOccurrence { vertex: v });
            }
        }

        // Edge coverage via occurrence stamping.
        let mut edge_stamp = vec![usize::MAX; self.node_count()];
        for u in 0..n {
            for &x in &occurrences[u] {
                edge_stamp[x] = u;
            }
            for &v in g.neighbors(u) {
                if v < u {
                    continue;
                }
                if !occurrences[v].iter().any(|&x| edge_stamp[x] == u) {
                    violations.push(DecompositionViolation::EdgeUncovered { u, v });
                }
            }
        }

        let width = self.width();
        let mut is_simple_for = None;
        if let Some(t) = t {
            let mut simple_ok = true;
            if width != t {
                simple_ok = false;
                violations.push(DecompositionViolation::WidthMismatch {
                    expected: t,
                    actual: width,
                });
            } else if t >= 1 {
                for (subset, count) in t_subset_counts(&self.bags, t) {
                    if count > 2 {
                        simple_ok = false;
                        violations.push(DecompositionViolation::SubsetInTooManyBags {
                            subset,
                            count,
                        });
                    }
                }
            }
            if simple_ok {
                is_simple_for = Some(t);
            }
        }

        let is_valid = violations.iter().all(|v| {
            matches!(
                v,
                DecompositionViolation::WidthMismatch { .. }
                    | DecompositionViolation::SubsetInTooManyBags { .. }
            )
        });
        DecompositionReport {
            is_valid,
            width,
            is_simple_for,
            violations,
        }
    }
}

/// Occurrence counts of every t-element subset across bags of size t or t+1.
/// Bags larger than t+1 are skipped (a width check reports those separately).
fn t_subset_counts(bags: &[Vec<usize>], t: usize) -> HashMap<Vec<usize>, usize> {
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for bag in bags {
        if bag.len() == t {
            *counts.entry(bag.clone()).or_default() += 1;
        } else if bag.len() == t + 1 {
            for skip in 0..bag.len() {
                let mut sub = Vec::with_capacity(t);
                for (i, &v) in bag.iter().enumerate() {
                    if i != skip {
                        sub.push(v);
                    }
                }
                *counts.entry(sub).or_default() += 1;
            }
        }
    }
    counts
}

/// The supergraph of `g` in which every bag of `d` is a clique; `d` stays a
/// valid decomposition of the result.
pub fn make_edge_maximal(
    g: &Graph,
    d: &RootedTreeDecomposition,
) -> Result<Graph, DecompositionError> {
    let report = d.validate(g, None);
    if !report.is_valid {
        return Err(DecompositionError::InvalidDecomposition(format!(
            "{:?}",
            report.violations.first()
        )));
    }
    let mut h = g.clone();
    for bag in d.bags() {
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                h.add_edge(bag[i], bag[j]);
            }
        }
    }
    Ok(h)
}

/// Positive per-vertex weights.
#[derive(Debug, Clone)]
pub struct VertexWeights {
    weight: Vec<f64>,
}

impl VertexWeights {
    pub fn uniform(n: usize) -> Self {
        VertexWeights {
            weight: vec![1.0; n],
        }
    }

    pub fn from_vec(weight: Vec<f64>) -> Self {
        VertexWeights { weight }
    }

    pub fn get(&self, v: usize) -> f64 {
        self.weight[v]
    }

    pub fn set(&mut self, v: usize, w: f64) {
        self.weight[v] = w;
    }

    pub fn total(&self) -> f64 {
        self.weight.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }
}

/// Picks at most `c` tree nodes whose bags, removed from `g`, leave every
/// component with at most a 1/c fraction of the total weight.
///
/// Each vertex is charged to its minimum-depth bag; a single bottom-up pass
/// cuts at the deepest accumulation exceeding total/c. Every cut consumes
/// more than total/c of disjoint weight, so fewer than c nodes are cut.
pub fn weighted_separator(
    g: &Graph,
    d: &RootedTreeDecomposition,
    w: &VertexWeights,
    c: usize,
) -> Vec<usize> {
    assert!(c >= 2, "separator fraction c must be at least 2");
    let assignment = d.vertex_assignment(w.len());
    let mut node_weight = vec![0.0f64; d.node_count()];
    for v in 0..w.len() {
        if w.get(v) > 0.0 {
            if let Some(x) = assignment[v] {
                node_weight[x] += w.get(v);
            }
        }
    }
    let total: f64 = node_weight.iter().sum();
    let threshold = total / c as f64;

    let mut acc = node_weight;
    let mut cut = Vec::new();
    for &x in &d.post_order() {
        if acc[x] > threshold {
            cut.push(x);
            acc[x] = 0.0;
        }
        if let Some(p) = d.parent(x) {
            acc[p] += acc[x];
        }
    }
    cut.sort_unstable();
    debug_assert!(cut.len() <= c);
    debug_assert!(separator_components_light(g, d, w, &cut, threshold));
    cut
}

fn separator_components_light(
    g: &Graph,
    d: &RootedTreeDecomposition,
    w: &VertexWeights,
    cut: &[usize],
    threshold: f64,
) -> bool {
    let mut removed = vec![false; g.vertex_count()];
    for &x in cut {
        for &v in d.bag(x) {
            removed[v] = true;
        }
    }
    let mut seen = removed.clone();
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        let mut weight = 0.0;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            weight += w.get(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        // small tolerance for float accumulation order
        if weight > threshold * (1.0 + 1e-9) + 1e-9 {
            return false;
        }
    }
    true
}

impl RootedTreeDecomposition {
    /// Per-vertex occurrence lists: vertex -> nodes whose bag contains it.
    pub fn occurrence_index(&self, n: usize) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); n];
        for x in 0..self.node_count() {
            for &v in self.bag(x) {
                if v < n {
                    occ[v].push(x);
                }
            }
        }
        occ
    }

    /// Assignment of every covered vertex to its min-depth bag, in one pass.
    pub fn vertex_assignment(&self, n: usize) -> Vec<Option<usize>> {
        let depth = self.depths();
        let mut assigned: Vec<Option<usize>> = vec![None; n];
        for x in 0..self.node_count() {
            for &v in self.bag(x) {
                if v < n {
                    match assigned[v] {
                        None => assigned[v] = Some(x),
                        Some(cur) if depth[x] < depth[cur] => assigned[v] = Some(x),
                        _ => {}
                    }
                }
            }
        }
        assigned
    }
}

/// For each vertex `v` of layer `i`, the weight κ_v = t-1 + |H_v| where H_v is
/// the component of `h[{v} ∪ L_{i+1} ∪ … ∪ L_m]` containing `v`.
///
/// Components of the deeper layers are found once; each contributes its size
/// to every layer-i neighbor. The totals satisfy Σ κ_v ≤ t·|h| whenever `h`
/// is edge-maximal for a width-t decomposition rooted at the layering's L_0.
pub fn subtree_weights(
    h: &Graph,
    lay: &Layering,
    i: usize,
    t: usize,
) -> Result<VertexWeights, DecompositionError> {
    if i >= lay.num_layers() {
        return Err(DecompositionError::LayerOutOfRange(i, lay.num_layers()));
    }
    let n = h.vertex_count();
    let mut weights = VertexWeights::from_vec(vec![0.0; n]);
    for &v in lay.layer(i) {
        weights.set(v, (t as f64 - 1.0) + 1.0);
    }
    // Label components of the deeper layers.
    let mut comp = vec![usize::MAX; n];
    let mut comp_sizes = Vec::new();
    for start in 0..n {
        if lay.layer_of(start) <= i || comp[start] != usize::MAX {
            continue;
        }
        let id = comp_sizes.len();
        let mut size = 0usize;
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in h.neighbors(u) {
                if lay.layer_of(w) > i && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        comp_sizes.push(size);
    }
    // Each component adds its size to every layer-i neighbor, once.
    let mut last_seen = vec![usize::MAX; comp_sizes.len()];
    for &v in lay.layer(i) {
        for &w in h.neighbors(v) {
            let c = if lay.layer_of(w) > i { comp[w] } else { continue };
            if last_seen[c] != v {
                last_seen[c] = v;
                weights.set(v, weights.get(v) + comp_sizes[c] as f64);
            }
        }
    }
    Ok(weights)
}

/// Deterministic random n-vertex graph together with a t-simple tree
/// decomposition for which it is edge-maximal.
///
/// Growth: each new bag replaces one vertex of a randomly chosen existing bag
/// and attaches as its child. Attachments that would put a t-subset into a
/// third bag are rejected, which enforces the simpleness condition directly.
pub fn random_simple_ttree(
    n: usize,
    t: usize,
    seed: u64,
) -> Result<(Graph, RootedTreeDecomposition), DecompositionError> {
    assert!(t >= 1);
    if n < t + 1 {
        return Err(DecompositionError::TooSmall(t + 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let root_bag: Vec<usize> = (0..=t).collect();
    for i in 0..=t {
        for j in i + 1..=t {
            g.add_edge(i, j);
        }
    }
    let mut bags = vec![root_bag.clone()];
    let mut parent = vec![None];

    // Valid attachment points biject with t-subsets occurring in exactly one
    // bag, so sampling a uniform candidate subset is the same as rejection
    // sampling over (bag, slot) pairs, without the quadratic rejection cost.
    let mut candidates: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut cand_pos: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subset_count: HashMap<Vec<usize>, usize> = HashMap::new();
    let register_bag = |bag: &[usize],
                           x: usize,
                           candidates: &mut Vec<(Vec<usize>, usize)>,
                           cand_pos: &mut HashMap<Vec<usize>, usize>,
                           subset_count: &mut HashMap<Vec<usize>, usize>| {
        for skip in 0..bag.len() {
            let sub = leave_one_out(bag, skip);
            let count = subset_count.entry(sub.clone()).or_default();
            *count += 1;
            if *count == 1 {
                cand_pos.insert(sub.clone(), candidates.len());
                candidates.push((sub, x));
            } else if *count == 2 {
                if let Some(pos) = cand_pos.remove(&sub) {
                    let last = candidates.len() - 1;
                    candidates.swap(pos, last);
                    candidates.pop();
                    if pos < candidates.len() {
                        cand_pos.insert(candidates[pos].0.clone(), pos);
                    }
                }
            }
        }
    };
    register_bag(
        &root_bag,
        0,
        &mut candidates,
        &mut cand_pos,
        &mut subset_count,
    );

    for v in (t + 1)..n {
        let idx = rng.random_range(0..candidates.len());
        let (shared, x) = candidates[idx].clone();
        let mut bag = shared;
        let pos = bag.binary_search(&v).unwrap_err();
        bag.insert(pos, v);
        for &u in &bag {
            if u != v {
                g.add_edge(u, v);
            }
        }
        register_bag(
            &bag,
            bags.len(),
            &mut candidates,
            &mut cand_pos,
            &mut subset_count,
        );
        bags.push(bag);
        parent.push(Some(x));
    }

    Ok((g, RootedTreeDecomposition::new(bags, parent)))
}

fn leave_one_out(bag: &[usize], skip: usize) -> Vec<usize> {
    bag.iter()
        .enumerate()
        .filter_map(|(i, &v)| (i != skip).then_some(v))
        .collect()
}

/// Deterministic random edge-maximal instance on a width-w sliding-window
/// path decomposition.
pub fn random_path_instance(n: usize, w: usize, seed: u64) -> (Graph, PathDecomposition) {
    assert!(n >= w + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut current: Vec<usize> = (0..=w).collect();
    for i in 0..=w {
        for j in i + 1..=w {
            g.add_edge(current[i], current[j]);
        }
    }
    let mut bags = vec![current.clone()];
    for v in (w + 1)..n {
        let drop = rng.random_range(0..current.len());
        current.remove(drop);
        current.push(v);
        current.sort_unstable();
        for &u in &current {
            if u != v {
                g.add_edge(u, v);
            }
        }
        bags.push(current.clone());
    }
    (g, PathDecomposition::new(bags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs_layering;

    #[test]
    fn validate_single_bag() {
        let g = Graph::complete(4);
        let d = RootedTreeDecomposition::single_bag(vec![0, 1, 2, 3]);
        let report = d.validate(&g, None);
        assert!(report.is_valid);
        assert_eq!(report.width, 3);
    }

    #[test]
    fn validate_path_bags_simple() {
        // P_4 with bags {i, i+1}: valid, width 1, 1-simple.
        let g = Graph::path(4);
        let bags = vec![vec![0, 1], vec![1, 2], vec![2, 3]];
        let d = PathDecomposition::new(bags).as_rooted();
        let report = d.validate(&g, Some(1));
        assert!(report.is_valid);
        assert_eq!(report.width, 1);
        assert_eq!(report.is_simple_for, Some(1));
    }

    #[test]
    fn validate_missing_edge() {
        let g = Graph::path(3);
        let d = RootedTreeDecomposition::new(
            vec![vec![0, 1], vec![2]],
            vec![None, Some(0)],
        );
        let report = d.validate(&g, None);
        assert!(!report.is_valid);
        assert!(report
            .violations
            .contains(&DecompositionViolation::EdgeUncovered { u: 1, v: 2 }));
    }

    #[test]
    fn validate_disconnected_occurrence() {
        let g = Graph::new(2);
        let d = RootedTreeDecomposition::new(
            vec![vec![0], vec![1], vec![0]],
            vec![None, Some(0), Some(1)],
        );
        let report = d.validate(&g, None);
        assert!(!report.is_valid);
        assert!(report
            .violations
            .contains(&DecompositionViolation::DisconnectedOccurrence { vertex: 0 }));
    }

    #[test]
    fn edge_maximal_examples() {
        let g = Graph::new(3);
        let d = RootedTreeDecomposition::single_bag(vec![0, 1, 2]);
        let h = make_edge_maximal(&g, &d).unwrap();
        assert_eq!(h.edge_count(), 3);

        // Already maximal stays unchanged.
        let h2 = make_edge_maximal(&h, &d).unwrap();
        assert_eq!(h2, h);

        // Two bags {a,b,c},{b,c,d} on P_4 (path edges ab, bc, cd): total 5 edges.
        let p4 = Graph::path(4);
        let d = RootedTreeDecomposition::new(
            vec![vec![0, 1, 2], vec![1, 2, 3]],
            vec![None, Some(0)],
        );
        let h = make_edge_maximal(&p4, &d).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert!(h.has_edge(0, 2) && h.has_edge(1, 3) && h.has_edge(1, 2));
    }

    #[test]
    fn min_depth_bag_cases() {
        let d = RootedTreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            vec![None, Some(0), Some(1)],
        );
        assert_eq!(d.min_depth_bag(0), Ok(0));
        assert_eq!(d.min_depth_bag(1), Ok(0));
        assert_eq!(d.min_depth_bag(2), Ok(1));
        assert_eq!(
            d.min_depth_bag(9),
            Err(DecompositionError::VertexNotInDecomposition(9))
        );
    }

    #[test]
    fn branching_nodes_cases() {
        let path = RootedTreeDecomposition::new(
            vec![vec![], vec![], vec![]],
            vec![None, Some(0), Some(1)],
        );
        assert!(path.branching_nodes().is_empty());

        let star = RootedTreeDecomposition::new(
            vec![vec![], vec![], vec![], vec![]],
            vec![None, Some(0), Some(0), Some(0)],
        );
        assert_eq!(star.branching_nodes(), vec![0]);

        // Complete binary tree of height 2: internal nodes 0,1,2.
        let bin = RootedTreeDecomposition::new(
            vec![vec![]; 7],
            vec![None, Some(0), Some(0), Some(1), Some(1), Some(2), Some(2)],
        );
        assert_eq!(bin.branching_nodes(), vec![0, 1, 2]);
    }

    #[test]
    fn separator_single_bag() {
        let g = Graph::complete(3);
        let d = RootedTreeDecomposition::single_bag(vec![0, 1, 2]);
        let s = weighted_separator(&g, &d, &VertexWeights::uniform(3), 2);
        assert_eq!(s, vec![0]);
    }

    #[test]
    fn separator_p5_unit_weights() {
        // P_5 with chain bags {v_i, v_{i+1}}, c = 2: one bag suffices and both
        // remaining components weigh at most 2.5. Exhaustive cross-check.
        let g = Graph::path(5);
        let bags = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]];
        let d = PathDecomposition::new(bags).as_rooted();
        let w = VertexWeights::uniform(5);
        let s = weighted_separator(&g, &d, &w, 2);
        assert_eq!(s.len(), 1);
        // exhaustive: some single bag always works; ours must be one of them
        let mut feasible = Vec::new();
        for x in 0..d.node_count() {
            let bag = d.bag(x);
            let mut h = g.clone();
            let mut ok = true;
            let removed: Vec<bool> = (0..5).map(|v| bag.contains(&v)).collect();
            h = h; // silence unused-mut lint path
            let _ = &mut h;
            let mut seen = removed.clone();
            for start in 0..5 {
                if seen[start] {
                    continue;
                }
                let mut size = 0;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(u) = stack.pop() {
                    size += 1;
                    for &v in g.neighbors(u) {
                        if !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
                if size as f64 > 2.5 {
                    ok = false;
                }
            }
            if ok {
                feasible.push(x);
            }
        }
        assert!(feasible.contains(&s[0]));
    }

    #[test]
    fn layer_restriction_cases() {
        let d = RootedTreeDecomposition::new(
            vec![vec![0, 1, 2], vec![1, 2, 3]],
            vec![None, Some(0)],
        );
        let full = d.layer_restriction(&[0, 1, 2, 3]);
        assert_eq!(full.bags(), d.bags());
        let empty = d.layer_restriction(&[]);
        assert!(empty.bags().iter().all(|b| b.is_empty()));
        let part = d.layer_restriction(&[1, 3]);
        assert_eq!(part.bag(0), &[1]);
        assert_eq!(part.bag(1), &[1, 3]);
    }

    #[test]
    fn subtree_weights_p3() {
        // P_3 a-b-c rooted at a, t=1, layer 1 = {b}: κ_b = 0 + |{b,c}| = 2.
        let g = Graph::path(3);
        let lay = bfs_layering(&g, &[0]).unwrap();
        let w = subtree_weights(&g, &lay, 1, 1).unwrap();
        assert_eq!(w.get(1), 2.0);
        assert!(w.get(1) <= 1.0 * 3.0);
    }

    #[test]
    fn subtree_weights_last_layer() {
        let g = Graph::path(4);
        let lay = bfs_layering(&g, &[0]).unwrap();
        let t = 2;
        let w = subtree_weights(&g, &lay, 3, t).unwrap();
        assert_eq!(w.get(3), t as f64); // κ = t-1+1
    }

    #[test]
    fn subtree_weights_star() {
        // K_{1,3} rooted at center, t = 1, i = 1: each leaf κ = 1, Σ = 3 ≤ 4.
        let g = Graph::star(3);
        let lay = bfs_layering(&g, &[0]).unwrap();
        let w = subtree_weights(&g, &lay, 1, 1).unwrap();
        for v in 1..=3 {
            assert_eq!(w.get(v), 1.0);
        }
        assert!(w.total() <= 4.0);
    }

    #[test]
    fn random_ttree_tiny_is_clique() {
        let (g, d) = random_simple_ttree(3, 2, 7).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(d.node_count(), 1);
    }

    #[test]
    fn random_ttree_t1_is_path_collection() {
        let (g, d) = random_simple_ttree(30, 1, 42).unwrap();
        let report = d.validate(&g, Some(1));
        assert_eq!(report.is_simple_for, Some(1));
        // every vertex has degree <= 2 and the graph is acyclic & connected
        assert!((0..30).all(|v| g.degree(v) <= 2));
        assert_eq!(g.edge_count(), 29);
        assert!(g.is_connected());
    }

    #[test]
    fn random_ttree_validates_simple() {
        for t in 1..=3 {
            let (g, d) = random_simple_ttree(100, t, 5).unwrap();
            let report = d.validate(&g, Some(t));
            assert!(report.is_valid);
            assert_eq!(report.width, t);
            assert_eq!(report.is_simple_for, Some(t));
            // the generator output is edge-maximal
            let h = make_edge_maximal(&g, &d).unwrap();
            assert_eq!(h, g);
        }
    }

    #[test]
    fn random_ttree_deterministic() {
        let (g1, _) = random_simple_ttree(50, 2, 11).unwrap();
        let (g2, _) = random_simple_ttree(50, 2, 11).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn random_path_instance_valid() {
        let (g, pd) = random_path_instance(40, 2, 3);
        assert!(pd.validate(&g).is_valid);
        assert_eq!(pd.width(), 2);
        // edge-maximal by construction
        let rooted = pd.as_rooted();
        let h = make_edge_maximal(&g, &rooted).unwrap();
        assert_eq!(h, g);
    }
}
