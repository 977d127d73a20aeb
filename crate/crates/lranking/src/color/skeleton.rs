//! Skeletons: small induced subgraphs closed under short induced paths,
//! assembled from branching-node bags and per-segment guard sets, plus the
//! composition that extends a skeleton ranking to the whole graph.

use std::collections::HashSet;

use crate::color::guard::{guard_set, GuardSet};
use crate::color::pathwidth::rank_pathwidth;
use crate::color::ColorError;
use crate::decomposition::{PathDecomposition, RootedTreeDecomposition};
use crate::graph::{induced_subgraph, Graph};
use crate::verify::{verify_ranking, Ranking};

/// One branching-to-branching tree segment and the guard set built on it.
#[derive(Debug, Clone)]
pub struct SkeletonSegment {
    pub top: usize,
    pub bottom: usize,
    pub guard: GuardSet,
}

#[derive(Debug, Clone)]
pub struct Skeleton {
    vertices: Vec<usize>,
    anchors: Vec<usize>,
    segments: Vec<SkeletonSegment>,
}

impl Skeleton {
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

    /// The branching nodes anchoring the skeleton (tree endpoints stand in on
    /// a path-shaped tree).
    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    pub fn segments(&self) -> &[SkeletonSegment] {
        &self.segments
    }

    /// Materializes the induced subgraph Ĥ together with the vertex mapping.
    pub fn induced(&self, h: &Graph) -> (Graph, Vec<usize>) {
        induced_subgraph(h, &self.vertices).expect("skeleton vertices live in h")
    }
}

/// Builds the skeleton of `h` with respect to `d`: the union of all
/// branching-node bags plus a guard set per branching-free tree segment.
///
/// On a path-shaped tree (no branching nodes) the two chain endpoints act as
/// anchors, so the skeleton degenerates to a single guard set.
pub fn build_skeleton(
    h: &Graph,
    d: &RootedTreeDecomposition,
    ell: usize,
) -> Result<Skeleton, ColorError> {
    for bag in d.bags() {
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                if !h.has_edge(bag[i], bag[j]) {
                    return Err(ColorError::NotEdgeMaximal(bag[i], bag[j]));
                }
            }
        }
    }

    let real = d.branching_nodes();
    let anchors: Vec<usize> = if !real.is_empty() {
        real
    } else {
        // chain: the root and the single deepest node
        let mut leaf = d.root();
        while let Some(&c) = d.children(leaf).first() {
            leaf = c;
        }
        if leaf == d.root() {
            vec![d.root()]
        } else {
            vec![d.root(), leaf]
        }
    };

    let is_anchor: HashSet<usize> = anchors.iter().copied().collect();
    let mut vertices: HashSet<usize> = HashSet::new();
    for &x in &anchors {
        vertices.extend(d.bag(x).iter().copied());
    }

    // Segments: each anchor with an anchor strictly above it pairs with the
    // nearest one; the connecting path has no anchor in its interior.
    let mut segments = Vec::new();
    for &y in &anchors {
        let mut nodes = vec![y];
        let mut x = d.parent(y);
        let top = loop {
            match x {
                None => break None,
                Some(p) => {
                    nodes.push(p);
                    if is_anchor.contains(&p) {
                        break Some(p);
                    }
                    x = d.parent(p);
                }
            }
        };
        let Some(top) = top else { continue };
        nodes.reverse(); // top-down

        let mut region: Vec<usize> = nodes
            .iter()
            .flat_map(|&z| d.bag(z).iter().copied())
            .collect();
        region.sort_unstable();
        region.dedup();
        let (sub, map) = induced_subgraph(h, &region)?;
        let mut to_new = vec![usize::MAX; h.vertex_count()];
        for (new, &old) in map.iter().enumerate() {
            to_new[old] = new;
        }
        let sub_bags: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&z| d.bag(z).iter().map(|&v| to_new[v]).collect())
            .collect();
        let guard_local = guard_set(&sub, &PathDecomposition::new(sub_bags), ell)?;
        vertices.extend(guard_local.vertices().iter().map(|&v| map[v]));
        segments.push(SkeletonSegment {
            top,
            bottom: y,
            guard: guard_local,
        });
    }

    let mut vertices: Vec<usize> = vertices.into_iter().collect();
    vertices.sort_unstable();
    Ok(Skeleton {
        vertices,
        anchors,
        segments,
    })
}

/// Extends a ranking of the skeleton (all colors above the low band
/// (ℓ+1)·width + 1) to all of `h`: the rest is pathwidth-colored inside the
/// low band on the branching-free chains of the tree.
pub fn rank_via_skeleton(
    h: &Graph,
    d: &RootedTreeDecomposition,
    ell: usize,
    skeleton: &Skeleton,
    skeleton_ranking: &Ranking,
) -> Result<Ranking, ColorError> {
    if skeleton_ranking.ell() != ell {
        return Err(ColorError::MismatchedEll(skeleton_ranking.ell(), ell));
    }
    assert_eq!(skeleton_ranking.len(), skeleton.len());
    let band = ((ell + 1) * d.width() + 1) as u32;
    if skeleton_ranking.colors().iter().any(|&c| c <= band) {
        return Err(ColorError::BandCollision { band });
    }

    let n = h.vertex_count();
    let mut colors = vec![0u32; n];
    for (i, &v) in skeleton.vertices().iter().enumerate() {
        colors[v] = skeleton_ranking.color(i);
    }

    let residual: Vec<usize> = (0..n).filter(|&v| colors[v] == 0).collect();
    if !residual.is_empty() {
        let real_branching: HashSet<usize> = d.branching_nodes().into_iter().collect();
        let mut chain_bags: Vec<Vec<usize>> = Vec::new();
        let mut to_res = vec![usize::MAX; n];
        for (i, &v) in residual.iter().enumerate() {
            to_res[v] = i;
        }
        // chains of T - Λ(T), top-down within each chain
        for x in 0..d.node_count() {
            if real_branching.contains(&x) {
                continue;
            }
            let starts_chain = match d.parent(x) {
                None => true,
                Some(p) => real_branching.contains(&p),
            };
            if !starts_chain {
                continue;
            }
            let mut z = x;
            loop {
                chain_bags.push(
                    d.bag(z)
                        .iter()
                        .filter_map(|&v| (to_res[v] != usize::MAX).then_some(to_res[v]))
                        .collect(),
                );
                match d.children(z).first() {
                    Some(&c) if !real_branching.contains(&c) => z = c,
                    _ => break,
                }
            }
            chain_bags.push(Vec::new()); // chain delimiter
        }
        let (res_g, _) = induced_subgraph(h, &residual)?;
        let res_ranking = rank_pathwidth(&res_g, &PathDecomposition::new(chain_bags), ell)?;
        debug_assert!(res_ranking.max_color() <= band);
        for (i, &v) in residual.iter().enumerate() {
            colors[v] = res_ranking.color(i);
        }
    }

    let ranking = Ranking::new(colors, ell);
    match verify_ranking(h, &ranking).expect("all vertices colored") {
        None => Ok(ranking),
        Some(v) => Err(ColorError::VerificationFailed {
            witness: v.witness_path,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::guard::guard_size_bound;
    use crate::decomposition::{make_edge_maximal, random_simple_ttree};
    use crate::verify::enumerate_induced_paths;

    #[test]
    fn single_node_tree() {
        let h = Graph::complete(3);
        let d = RootedTreeDecomposition::single_bag(vec![0, 1, 2]);
        let s = build_skeleton(&h, &d, 2).unwrap();
        assert_eq!(s.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn path_shaped_tree_single_guard() {
        let (g, pd) = crate::decomposition::random_path_instance(10, 2, 4);
        let d = pd.as_rooted();
        let s = build_skeleton(&g, &d, 2).unwrap();
        assert_eq!(s.segments().len(), 1);
        // (Z1) on the single segment covers root and leaf bags
        for &v in d.bag(0).iter().chain(d.bag(d.node_count() - 1)) {
            assert!(s.contains(v));
        }
    }

    #[test]
    fn star_tree_segments_and_size() {
        // root bag with three leaf chains hanging off it
        let mut g = Graph::new(7);
        let bags = vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![1, 4],
            vec![4, 5],
            vec![1, 6],
        ];
        let parent = vec![None, Some(0), Some(1), Some(0), Some(3), Some(0)];
        for b in &bags {
            g.add_edge(b[0], b[1]);
        }
        let d = RootedTreeDecomposition::new(bags, parent);
        assert_eq!(d.branching_nodes(), vec![0]);
        let s = build_skeleton(&g, &d, 2).unwrap();
        for &v in d.bag(0) {
            assert!(s.contains(v));
        }
        assert!(s.len() as u64 <= 2 + s.segments().len() as u64 * guard_size_bound(1, 2));
    }

    #[test]
    fn skeleton_path_closure_on_random_ttrees() {
        // Lemma-style closure: induced paths of length ≤ ℓ with endpoints in
        // the skeleton stay inside it.
        for seed in 0..12u64 {
            for t in 1..=2usize {
                let (g, d) = random_simple_ttree(11, t, 300 + seed).unwrap();
                let h = make_edge_maximal(&g, &d).unwrap();
                for ell in 2..=3 {
                    let s = build_skeleton(&h, &d, ell).unwrap();
                    for path in enumerate_induced_paths(&h, ell) {
                        let a = path[0];
                        let b = *path.last().unwrap();
                        if s.contains(a) && s.contains(b) {
                            for &w in &path[1..path.len() - 1] {
                                assert!(
                                    s.contains(w),
                                    "closure broken: {path:?} (t={t}, ell={ell}, seed={seed})"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_via_skeleton_identity() {
        let h = Graph::complete(3);
        let d = RootedTreeDecomposition::single_bag(vec![0, 1, 2]);
        let s = build_skeleton(&h, &d, 2).unwrap();
        let band = (2 + 1) * 2 + 1;
        let skel_ranking = Ranking::new(vec![band + 1, band + 2, band + 3], 2);
        let r = rank_via_skeleton(&h, &d, 2, &s, &skel_ranking).unwrap();
        assert_eq!(r.colors(), skel_ranking.colors());
    }

    #[test]
    fn rank_via_skeleton_band_collision() {
        let h = Graph::complete(3);
        let d = RootedTreeDecomposition::single_bag(vec![0, 1, 2]);
        let s = build_skeleton(&h, &d, 2).unwrap();
        let bad = Ranking::new(vec![1, 2, 3], 2);
        assert!(matches!(
            rank_via_skeleton(&h, &d, 2, &s, &bad),
            Err(ColorError::BandCollision { .. })
        ));
    }

    #[test]
    fn rank_via_skeleton_composes() {
        for seed in 0..6u64 {
            let (g, d) = random_simple_ttree(40, 2, 70 + seed).unwrap();
            let h = make_edge_maximal(&g, &d).unwrap();
            let ell = 2;
            let s = build_skeleton(&h, &d, ell).unwrap();
            if s.len() == h.vertex_count() {
                continue; // nothing to compose on this draw
            }
            let band = ((ell + 1) * d.width() + 1) as u32;
            // distinct colors above the band always form a valid skeleton ranking
            let skel_ranking =
                Ranking::new((0..s.len() as u32).map(|i| band + 1 + i).collect(), ell);
            let r = rank_via_skeleton(&h, &d, ell, &s, &skel_ranking).unwrap();
            assert_eq!(r.len(), h.vertex_count());
        }
    }
}
