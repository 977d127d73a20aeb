//! Simple undirected graphs, BFS layerings, graph powers, and strong products.
//!
//! Vertices are dense 0-based integers. Adjacency is kept as sorted neighbor
//! lists so every iteration order downstream is deterministic.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("root set is empty")]
    EmptyRoots,
    #[error("vertex {0} is unreachable from the given roots")]
    UnreachableVertex(usize),
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(usize),
    #[error("strong product requires at least 2 factors")]
    TooFewFactors,
    #[error("strong product factor {0} is empty")]
    EmptyFactor(usize),
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Path a_0 - a_1 - ... - a_{n-1}.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Star with the center at vertex 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Inserts the edge uv, ignoring duplicates. Panics on self-loops and
    /// out-of-range endpoints; graph construction bugs should fail loudly.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(
            u < self.adj.len() && v < self.adj.len(),
            "edge ({u},{v}) out of range for n={}",
            self.adj.len()
        );
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
            self.edge_count += 1;
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as ordered pairs (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// BFS distances from a set of sources; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// Largest pairwise distance; `None` if disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        let mut best = 0;
        for v in 0..n {
            let dist = self.distances_from(&[v]);
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }
}

/// A generalized BFS layering `L_0, ..., L_m`: every vertex of `L_i` is at
/// distance exactly `i` from the root set `L_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
}

impl Layering {
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Builds a layering directly from per-vertex layer indices. Debug-asserts
    /// the distance invariant is the caller's responsibility.
    pub(crate) fn from_layer_of(layer_of: Vec<usize>) -> Self {
        let m = layer_of.iter().copied().max().map_or(0, |x| x + 1);
        let mut layers = vec![Vec::new(); m];
        for (v, &i) in layer_of.iter().enumerate() {
            layers[i].push(v);
        }
        Layering { layers, layer_of }
    }
}

/// Partition of `V(g)` by distance from `roots`.
///
/// Errors if `roots` is empty or some vertex of `g` is unreachable from it;
/// callers are expected to split disconnected graphs into components first.
pub fn bfs_layering(g: &Graph, roots: &[usize]) -> Result<Layering, GraphError> {
    if roots.is_empty() {
        return Err(GraphError::EmptyRoots);
    }
    for &r in roots {
        if r >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(r));
        }
    }
    let dist = g.distances_from(roots);
    if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(GraphError::UnreachableVertex(v));
    }
    Ok(Layering::from_layer_of(dist))
}

/// The k-th power of `g`: same vertices, an edge wherever `1 <= d_g(u,v) <= k`.
pub fn graph_power(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "graph power requires k >= 1");
    let n = g.vertex_count();
    let mut out = Graph::new(n);
    for u in 0..n {
        // Bounded BFS to depth k from u.
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == k {
                continue;
            }
            for &w in g.neighbors(x) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
            }
        }
        for v in u + 1..n {
            if dist[v] != usize::MAX && dist[v] <= k {
                out.add_edge(u, v);
            }
        }
    }
    out
}

/// A vertex of a strong product: one coordinate per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductVertex {
    pub coords: Vec<usize>,
}

/// A materialized strong product together with the coordinate mapping.
///
/// Vertex `i` of `graph` corresponds to the mixed-radix decomposition of `i`
/// along the factor sizes, most significant coordinate first.
#[derive(Debug, Clone)]
pub struct StrongProduct {
    pub graph: Graph,
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl StrongProduct {
    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coords(&self, v: usize) -> ProductVertex {
        let mut coords = Vec::with_capacity(self.dims.len());
        for i in 0..self.dims.len() {
            coords.push(v / self.strides[i] % self.dims[i]);
        }
        ProductVertex { coords }
    }

    pub fn index_of(&self, coords: &[usize]) -> Option<usize> {
        if coords.len() != self.dims.len() {
            return None;
        }
        let mut idx = 0;
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.dims[i] {
                return None;
            }
            idx += c * self.strides[i];
        }
        Some(idx)
    }
}

/// The strong product of two or more factors: vertices are coordinate tuples,
/// and two distinct tuples are adjacent iff every coordinate pair is equal or
/// adjacent in its factor.
pub fn strong_product(factors: &[Graph]) -> Result<StrongProduct, GraphError> {
    if factors.len() < 2 {
        return Err(GraphError::TooFewFactors);
    }
    for (i, f) in factors.iter().enumerate() {
        if f.vertex_count() == 0 {
            return Err(GraphError::EmptyFactor(i));
        }
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.vertex_count()).collect();
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let n: usize = dims.iter().product();
    let mut graph = Graph::new(n);

    // For each vertex, enumerate all "equal or adjacent" moves per coordinate
    // and keep the lexicographically larger endpoints to add each edge once.
    let mut coords = vec![0usize; dims.len()];
    for u in 0..n {
        let mut options: Vec<Vec<usize>> = Vec::with_capacity(dims.len());
        for (i, &c) in coords.iter().enumerate() {
            let mut opts = Vec::with_capacity(factors[i].degree(c) + 1);
            opts.push(c);
            opts.extend_from_slice(factors[i].neighbors(c));
            options.push(opts);
        }
        let mut pick = vec![0usize; dims.len()];
        'outer: loop {
            let mut v = 0;
            for i in 0..dims.len() {
                v += options[i][pick[i]] * strides[i];
            }
            if v > u {
                graph.add_edge(u, v);
            }
            // mixed-radix increment over the option table
            for i in (0..dims.len()).rev() {
                pick[i] += 1;
                if pick[i] < options[i].len() {
                    continue 'outer;
                }
                pick[i] = 0;
            }
            break;
        }
        // advance coords
        for i in (0..dims.len()).rev() {
            coords[i] += 1;
            if coords[i] < dims[i] {
                break;
            }
            coords[i] = 0;
        }
    }

    Ok(StrongProduct {
        graph,
        dims,
        strides,
    })
}

/// Subgraph induced by `s`, relabeled to `0..s.len()`; the returned vector
/// maps each new index back to the original vertex.
pub fn induced_subgraph(g: &Graph, s: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    let mut to_new = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in s.iter().enumerate() {
        if old >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(old));
        }
        assert!(to_new[old] == usize::MAX, "duplicate vertex {old} in subset");
        to_new[old] = new;
    }
    let mut sub = Graph::new(s.len());
    for (new, &old) in s.iter().enumerate() {
        for &w in g.neighbors(old) {
            let nw = to_new[w];
            if nw != usize::MAX && nw > new {
                sub.add_edge(new, nw);
            }
        }
    }
    Ok((sub, s.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfs_layering_path_from_end() {
        let g = Graph::path(3);
        let lay = bfs_layering(&g, &[0]).unwrap();
        assert_eq!(lay.layers(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn bfs_layering_triangle() {
        let g = Graph::complete(3);
        let lay = bfs_layering(&g, &[0]).unwrap();
        assert_eq!(lay.layers(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn bfs_layering_star_from_leaf() {
        // K_{1,3} with center 0; root at leaf 1.
        let g = Graph::star(3);
        let lay = bfs_layering(&g, &[1]).unwrap();
        assert_eq!(lay.layers(), &[vec![1], vec![0], vec![2, 3]]);
    }

    #[test]
    fn bfs_layering_errors() {
        let g = Graph::path(3);
        assert_eq!(bfs_layering(&g, &[]), Err(GraphError::EmptyRoots));
        let mut h = Graph::new(4);
        h.add_edge(0, 1);
        assert_eq!(
            bfs_layering(&h, &[0]),
            Err(GraphError::UnreachableVertex(2))
        );
    }

    #[test]
    fn power_identity_and_c5() {
        let g = Graph::path(4);
        assert_eq!(graph_power(&g, 1), g);
        let c5 = Graph::cycle(5);
        let p2 = graph_power(&c5, 2);
        assert_eq!(p2.edge_count(), 10); // K_5
    }

    #[test]
    fn power_p4_k2() {
        // P_4 squared: {ab, bc, cd, ac, bd}
        let g = Graph::path(4);
        let p2 = graph_power(&g, 2);
        let mut expect = Graph::path(4);
        expect.add_edge(0, 2);
        expect.add_edge(1, 3);
        assert_eq!(p2, expect);
    }

    #[test]
    fn strong_product_k2_k2() {
        let p = strong_product(&[Graph::complete(2), Graph::complete(2)]).unwrap();
        assert_eq!(p.graph.vertex_count(), 4);
        assert_eq!(p.graph.edge_count(), 6); // K_4
    }

    #[test]
    fn strong_product_identity_factor() {
        let p = strong_product(&[Graph::path(3), Graph::complete(1)]).unwrap();
        assert_eq!(p.graph.vertex_count(), 3);
        assert_eq!(p.graph.edge_count(), 2);
    }

    #[test]
    fn strong_product_k3_p2_brute() {
        let p = strong_product(&[Graph::complete(3), Graph::path(2)]).unwrap();
        assert_eq!(p.graph.vertex_count(), 6);
        // Brute-force the definition independently.
        let k3 = Graph::complete(3);
        let p2 = Graph::path(2);
        let mut count = 0;
        for a1 in 0..3 {
            for a2 in 0..2 {
                for b1 in 0..3 {
                    for b2 in 0..2 {
                        if (a1, a2) >= (b1, b2) {
                            continue;
                        }
                        let ok1 = a1 == b1 || k3.has_edge(a1, b1);
                        let ok2 = a2 == b2 || p2.has_edge(a2, b2);
                        if ok1 && ok2 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(p.graph.edge_count(), count);
        assert_eq!(count, 15); // every pair is coordinate-compatible: K_6
    }

    #[test]
    fn strong_product_degree_formula() {
        let g1 = Graph::path(5);
        let g2 = Graph::cycle(4);
        let p = strong_product(&[g1.clone(), g2.clone()]).unwrap();
        for v in 0..p.graph.vertex_count() {
            let c = p.coords(v);
            let expect = (g1.degree(c.coords[0]) + 1) * (g2.degree(c.coords[1]) + 1) - 1;
            assert_eq!(p.graph.degree(v), expect);
        }
    }

    #[test]
    fn induced_identity_and_leaves() {
        let g = Graph::complete(3);
        let (sub, map) = induced_subgraph(&g, &[0, 1, 2]).unwrap();
        assert_eq!(sub, g);
        assert_eq!(map, vec![0, 1, 2]);

        let (sub, _) = induced_subgraph(&g, &[0, 1]).unwrap();
        assert_eq!(sub.edge_count(), 1);

        let star = Graph::star(3);
        let (sub, _) = induced_subgraph(&star, &[1, 2, 3]).unwrap();
        assert_eq!(sub.edge_count(), 0);

        assert!(matches!(
            induced_subgraph(&g, &[5]),
            Err(GraphError::UnknownVertex(5))
        ));
    }

    #[test]
    fn layering_edge_span_at_most_one() {
        let g = Graph::cycle(7);
        let lay = bfs_layering(&g, &[0, 3]).unwrap();
        for (u, v) in g.edges() {
            let du = lay.layer_of(u) as isize;
            let dv = lay.layer_of(v) as isize;
            assert!((du - dv).abs() <= 1);
        }
    }
}
