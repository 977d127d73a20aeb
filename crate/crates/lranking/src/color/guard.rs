//! Guard sets: small vertex sets of path-decomposed graphs closed under short
//! induced paths between their members.

use std::collections::HashMap;

use crate::color::ColorError;
use crate::decomposition::PathDecomposition;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardTag {
    EndpointBag,
    GreedyPath,
    Recursive(usize),
}

/// A set U with: (Z1) the first and last bags inside U, and (Z3) every
/// induced path of length ≤ ℓ with both endpoints in U lying entirely in U.
#[derive(Debug, Clone)]
pub struct GuardSet {
    vertices: Vec<usize>,
    tags: Vec<GuardTag>,
}

impl GuardSet {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn tag(&self, v: usize) -> Option<GuardTag> {
        self.vertices.binary_search(&v).ok().map(|i| self.tags[i])
    }
}

/// Worst-case guard size from the recurrence f(0) = 2, f(t) = ℓ+1 + ℓ·f(t-1),
/// which resolves to (3ℓ^{t+1} - ℓ^t - ℓ - 1)/(ℓ - 1) for ℓ ≥ 2 and 2t+2 for
/// ℓ = 1.
pub fn guard_size_bound(t: usize, ell: usize) -> u64 {
    let mut f = 2u64;
    for _ in 0..t {
        f = (ell as u64 + 1) + ell as u64 * f;
    }
    f
}

/// Guard set of an edge-maximal path-decomposed graph.
///
/// Follows the greedy-path recursion: walk from the first bag toward the last
/// picking the vertex of the current bag whose occurrence extends farthest;
/// if the walk is longer than ℓ or never reaches the last bag, the two end
/// bags alone suffice. Otherwise the walk's boundary bags split the bag list
/// into intervals, each of width one less after the walk vertices are
/// removed, and the construction recurses on every interval (including the
/// tail interval after the walk's last entry point, which the removed last
/// walk vertex dominates).
pub fn guard_set(g: &Graph, pd: &PathDecomposition, ell: usize) -> Result<GuardSet, ColorError> {
    assert!(ell >= 1);
    check_edge_maximal(g, pd.bags())?;
    let mut builder = Builder::default();
    build(pd.bags().to_vec(), ell, 0, &mut builder);
    Ok(builder.freeze())
}

#[derive(Default)]
struct Builder {
    tags: HashMap<usize, GuardTag>,
}

impl Builder {
    fn add(&mut self, v: usize, tag: GuardTag) {
        self.tags.entry(v).or_insert(tag);
    }

    fn add_bag(&mut self, bag: &[usize], tag: GuardTag) {
        for &v in bag {
            self.add(v, tag);
        }
    }

    fn freeze(self) -> GuardSet {
        let mut pairs: Vec<(usize, GuardTag)> = self.tags.into_iter().collect();
        pairs.sort_unstable_by_key(|&(v, _)| v);
        let (vertices, tags) = pairs.into_iter().unzip();
        GuardSet { vertices, tags }
    }
}

fn check_edge_maximal(g: &Graph, bags: &[Vec<usize>]) -> Result<(), ColorError> {
    for bag in bags {
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                if !g.has_edge(bag[i], bag[j]) {
                    return Err(ColorError::NotEdgeMaximal(bag[i], bag[j]));
                }
            }
        }
    }
    Ok(())
}

fn endpoint_tag(depth: usize) -> GuardTag {
    if depth == 0 {
        GuardTag::EndpointBag
    } else {
        GuardTag::Recursive(depth)
    }
}

fn path_tag(depth: usize) -> GuardTag {
    if depth == 0 {
        GuardTag::GreedyPath
    } else {
        GuardTag::Recursive(depth)
    }
}

fn build(bags: Vec<Vec<usize>>, ell: usize, depth: usize, out: &mut Builder) {
    if bags.is_empty() {
        return;
    }
    let first = 0;
    let last = bags.len() - 1;
    let max_size = bags.iter().map(|b| b.len()).max().unwrap_or(0);

    // Width 0: no non-trivial paths. ℓ = 1: only single-edge paths, whose
    // interiors are empty, so the end bags always satisfy (Z3).
    if max_size <= 1 || ell == 1 || bags[first].is_empty() {
        out.add_bag(&bags[first], endpoint_tag(depth));
        out.add_bag(&bags[last], endpoint_tag(depth));
        return;
    }

    // last occurrence index of each vertex
    let mut r: HashMap<usize, usize> = HashMap::new();
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            r.insert(v, i);
        }
    }
    let argmax = |bag: &[usize]| -> usize {
        *bag.iter()
            .max_by_key(|&&v| (r[&v], std::cmp::Reverse(v)))
            .unwrap()
    };

    // Greedy walk; a stall means the first and last bags are in different
    // components, and then only same-bag (clique) pairs need covering.
    let mut walk = vec![argmax(&bags[first])];
    loop {
        let cur = *walk.last().unwrap();
        if r[&cur] == last {
            break;
        }
        let next = argmax(&bags[r[&cur]]);
        if r[&next] <= r[&cur] {
            out.add_bag(&bags[first], endpoint_tag(depth));
            out.add_bag(&bags[last], endpoint_tag(depth));
            return;
        }
        walk.push(next);
    }
    let p = walk.len() - 1;
    if p > ell {
        // the walk is a shortest first-bag-to-last-bag path, so no path of
        // length ≤ ℓ crosses between the end bags
        out.add_bag(&bags[first], endpoint_tag(depth));
        out.add_bag(&bags[last], endpoint_tag(depth));
        return;
    }

    for &u in &walk {
        out.add(u, path_tag(depth));
    }

    // Interval boundaries: y_0 = first, y_i = r(walk[i-1]), plus the tail up
    // to the last bag. Walk vertex i ≥ 1 is removed from bags strictly after
    // its boundary bag y_i: keeping u_i inside B_{y_i} hands it to the
    // sub-recursions' end bags, which closes induced paths walking backward
    // from u_i into its interval. Every interval bag still loses a walk
    // vertex (the one entering it), so the width drops at each level. No
    // walk vertex other than u_{i-1}, u_i occurs inside interval i: a deeper
    // one reaching back would have had a larger last occurrence than the
    // greedy's pick at that step.
    let mut boundaries = Vec::with_capacity(p + 2);
    boundaries.push(first);
    for i in 1..=p {
        boundaries.push(r[&walk[i - 1]]);
    }
    boundaries.push(last);

    let removal_start: HashMap<usize, usize> = walk
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, if i == 0 { boundaries[0] } else { boundaries[i] + 1 }))
        .collect();

    for w in boundaries.windows(2) {
        let (a, b) = (w[0], w[1]);
        let sub: Vec<Vec<usize>> = (a..=b)
            .map(|j| {
                bags[j]
                    .iter()
                    .copied()
                    .filter(|v| removal_start.get(v).is_none_or(|&start| j < start))
                    .collect()
            })
            .collect();
        build(sub, ell, depth + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::random_path_instance;

    fn bags_graph(bags: Vec<Vec<usize>>, n: usize) -> (Graph, PathDecomposition) {
        let mut g = Graph::new(n);
        for bag in &bags {
            for i in 0..bag.len() {
                for j in i + 1..bag.len() {
                    g.add_edge(bag[i], bag[j]);
                }
            }
        }
        (g, PathDecomposition::new(bags))
    }

    use crate::verify::enumerate_induced_paths;

    fn check_z1_z3(g: &Graph, pd: &PathDecomposition, ell: usize, u: &GuardSet) {
        let first = pd.bag(0);
        let last = pd.bag(pd.num_bags() - 1);
        for &v in first.iter().chain(last.iter()) {
            assert!(u.contains(v), "(Z1) missing vertex {v}");
        }
        for path in enumerate_induced_paths(g, ell) {
            let a = path[0];
            let b = *path.last().unwrap();
            if u.contains(a) && u.contains(b) {
                for &w in &path[1..path.len() - 1] {
                    assert!(u.contains(w), "(Z3) interior {w} of {path:?} escapes U");
                }
            }
        }
    }

    #[test]
    fn disconnected_returns_end_bags() {
        let (g, pd) = bags_graph(vec![vec![0, 1], vec![2, 3]], 4);
        let u = guard_set(&g, &pd, 2).unwrap();
        assert_eq!(u.vertices(), &[0, 1, 2, 3]);
        assert_eq!(u.tag(0), Some(GuardTag::EndpointBag));
    }

    #[test]
    fn width_zero_small() {
        let (g, pd) = bags_graph(vec![vec![0], vec![1], vec![2]], 3);
        let u = guard_set(&g, &pd, 2).unwrap();
        assert!(u.len() <= 2);
        check_z1_z3(&g, &pd, 2, &u);
    }

    #[test]
    fn not_edge_maximal_rejected() {
        let g = Graph::new(3);
        let pd = PathDecomposition::new(vec![vec![0, 1, 2]]);
        assert!(matches!(
            guard_set(&g, &pd, 2),
            Err(ColorError::NotEdgeMaximal(_, _))
        ));
    }

    #[test]
    fn dominating_vertex_everywhere() {
        // A vertex in every bag forces the p = 0 case; the single-interval
        // recursion must still cover mid-decomposition guards.
        let bags = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
        ];
        let (g, pd) = bags_graph(bags, 6);
        for ell in 2..=3 {
            let u = guard_set(&g, &pd, ell).unwrap();
            check_z1_z3(&g, &pd, ell, &u);
        }
    }

    #[test]
    fn random_instances_z1_z3_and_size() {
        let mut count = 0;
        for w in 1..=2usize {
            for seed in 0..25u64 {
                let n = (w + 2) + (seed as usize % 9);
                let (g, pd) = random_path_instance(n, w, 1000 + seed);
                for ell in 1..=3 {
                    let u = guard_set(&g, &pd, ell).unwrap();
                    check_z1_z3(&g, &pd, ell, &u);
                    assert!(
                        (u.len() as u64) <= guard_size_bound(w, ell),
                        "guard too big: {} > {} (w={w}, ell={ell}, seed={seed})",
                        u.len(),
                        guard_size_bound(w, ell)
                    );
                    count += 1;
                }
            }
        }
        assert!(count >= 100);
    }
}
