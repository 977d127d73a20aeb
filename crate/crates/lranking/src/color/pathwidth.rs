//! ℓ-ranking via pathwidth: peel a greedy path meeting every bag, give it the
//! top ℓ+1 colors cyclically, recurse on the residual decomposition.

use crate::color::ColorError;
use crate::decomposition::PathDecomposition;
use crate::graph::Graph;
use crate::verify::{verify_ranking, Ranking};

/// ℓ-ranking of `g` using at most (ℓ+1)·width(pd) + 1 colors.
///
/// Each peeling level colors its greedy paths with a band of ℓ+1 colors.
/// Cyclic repeats on one path are at index distance ≥ ℓ+1, and the greedy
/// path's farthest-reach optimality makes their graph distance exceed ℓ, so
/// no band-internal path can violate. The result is verified before return.
pub fn rank_pathwidth(
    g: &Graph,
    pd: &PathDecomposition,
    ell: usize,
) -> Result<Ranking, ColorError> {
    assert!(ell >= 1);
    let report = pd.validate(g);
    if !report.is_valid {
        return Err(ColorError::InvalidDecomposition(format!(
            "{:?}",
            report.violations.first()
        )));
    }
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    let mut bags: Vec<Vec<usize>> = pd.bags().to_vec();
    let period = (ell + 1) as u32;

    loop {
        let max_size = bags.iter().map(|b| b.len()).max().unwrap_or(0);
        if max_size <= 1 {
            // width 0: the remaining graph has no edges
            for c in colors.iter_mut() {
                if *c == 0 {
                    *c = 1;
                }
            }
            break;
        }
        let w = (max_size - 1) as u32;
        let base = period * (w - 1) + 1;

        let mut to_remove: Vec<usize> = Vec::new();
        for (lo, hi) in stretches(&bags) {
            let path = greedy_path(&bags, lo, hi);
            for (idx, &v) in path.iter().enumerate() {
                debug_assert_eq!(colors[v], 0);
                colors[v] = base + 1 + (idx as u32 % period);
                to_remove.push(v);
            }
        }
        let removed: std::collections::HashSet<usize> = to_remove.into_iter().collect();
        for bag in bags.iter_mut() {
            bag.retain(|v| !removed.contains(v));
        }
    }

    let ranking = Ranking::new(colors, ell);
    match verify_ranking(g, &ranking).expect("all vertices colored") {
        None => Ok(ranking),
        Some(v) => Err(ColorError::VerificationFailed {
            witness: v.witness_path,
        }),
    }
}

/// Maximal runs [lo, hi] of nonempty bags in which consecutive bags intersect.
fn stretches(bags: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..bags.len() {
        if bags[i].is_empty() {
            if let Some(s) = start.take() {
                out.push((s, i - 1));
            }
            continue;
        }
        match start {
            None => start = Some(i),
            Some(s) => {
                if intersects(&bags[i - 1], &bags[i]) {
                    // same stretch
                } else {
                    out.push((s, i - 1));
                    start = Some(i);
                }
            }
        }
    }
    if let Some(s) = start {
        out.push((s, bags.len() - 1));
    }
    out
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Greedy farthest-reach path from bag `lo` to bag `hi`: repeatedly pick the
/// vertex of the current bag whose occurrence extends farthest right. Visits
/// every bag of the stretch; reaches `hi` because consecutive bags intersect.
pub(crate) fn greedy_path(bags: &[Vec<usize>], lo: usize, hi: usize) -> Vec<usize> {
    let mut last_occurrence: std::collections::HashMap<usize, usize> =
        std::collections::HashMap::new();
    for i in lo..=hi {
        for &v in &bags[i] {
            last_occurrence.insert(v, i);
        }
    }
    let r = |v: usize| last_occurrence[&v];
    let argmax = |bag: &[usize]| -> usize {
        *bag.iter()
            .max_by_key(|&&v| (r(v), std::cmp::Reverse(v)))
            .expect("stretch bags are nonempty")
    };

    let mut path = vec![argmax(&bags[lo])];
    loop {
        let cur = *path.last().unwrap();
        if r(cur) == hi {
            break;
        }
        let next = argmax(&bags[r(cur)]);
        debug_assert!(r(next) > r(cur), "greedy path stalled inside a stretch");
        path.push(next);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::random_path_instance;
    use crate::verify::verify_ranking_oracle;

    #[test]
    fn edgeless_gets_one_color() {
        let g = Graph::new(5);
        let pd = PathDecomposition::new((0..5).map(|v| vec![v]).collect());
        let r = rank_pathwidth(&g, &pd, 2).unwrap();
        assert!(r.colors().iter().all(|&c| c == 1));
    }

    #[test]
    fn path_with_unit_bags() {
        let g = Graph::path(12);
        let bags = (0..11).map(|i| vec![i, i + 1]).collect();
        let pd = PathDecomposition::new(bags);
        for ell in 1..=3 {
            let r = rank_pathwidth(&g, &pd, ell).unwrap();
            assert!(r.max_color() <= (ell as u32 + 1) + 1);
            assert_eq!(verify_ranking_oracle(&g, &r), Ok(None));
        }
    }

    #[test]
    fn random_width2_instances() {
        for seed in 0..10 {
            let (g, pd) = random_path_instance(60, 2, seed);
            let r = rank_pathwidth(&g, &pd, 2).unwrap();
            assert!(r.max_color() <= 3 * 2 + 1);
        }
    }

    #[test]
    fn big_width2_instance() {
        let (g, pd) = random_path_instance(200, 2, 99);
        let r = rank_pathwidth(&g, &pd, 2).unwrap();
        assert!(r.max_color() <= 7);
    }

    #[test]
    fn disconnected_stretches() {
        // two disjoint triangles with a gap marker between their bags
        let mut g = Graph::new(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            g.add_edge(a, b);
        }
        let pd = PathDecomposition::new(vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let r = rank_pathwidth(&g, &pd, 2).unwrap();
        assert!(r.max_color() <= 7);
        assert_eq!(verify_ranking_oracle(&g, &r), Ok(None));
    }
}
