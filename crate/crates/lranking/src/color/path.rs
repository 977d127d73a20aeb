//! Ruler coloring of paths: an ℓ-ranking of P_n with ⌈log₂(ℓ+1)⌉ + 1 colors.

use crate::verify::Ranking;

/// ⌈log₂(ℓ+1)⌉, the saturation level of the ruler coloring; equals the bit
/// length of ℓ.
fn saturation(ell: usize) -> u32 {
    usize::BITS - ell.leading_zeros()
}

/// ℓ-ranking of the path on `n` vertices (vertex i adjacent to i+1).
///
/// Position i (1-based) gets min(ν₂(i), K) + 1 where ν₂ is the 2-adic
/// valuation and K = ⌈log₂(ℓ+1)⌉. Equal colors c ≤ K repeat only with a
/// strictly higher color in between; color K+1 repeats at distance
/// 2^K ≥ ℓ+1, beyond any path the ℓ-ranking condition inspects.
pub fn rank_path(n: usize, ell: usize) -> Ranking {
    assert!(ell >= 1);
    let k = saturation(ell);
    let colors = (1..=n)
        .map(|i| (i.trailing_zeros().min(k)) + 1)
        .collect();
    Ranking::new(colors, ell)
}

/// Ruler colors for explicit path positions 0..n in path order; used when a
/// path is embedded inside a larger graph.
pub fn rank_path_vertices(path_order: &[usize], n_total: usize, ell: usize) -> Vec<u32> {
    let k = saturation(ell);
    let mut colors = vec![0u32; n_total];
    for (idx, &v) in path_order.iter().enumerate() {
        colors[v] = ((idx + 1).trailing_zeros().min(k)) + 1;
    }
    colors
}

/// Exact number of distinct colors the ruler coloring uses on P_n:
/// min(⌈log₂(ℓ+1)⌉ + 1, ⌈log₂(n+1)⌉).
pub fn rank_path_expected_colors(n: usize, ell: usize) -> u32 {
    if n == 0 {
        return 0;
    }
    let full = saturation(ell) + 1;
    let cap = usize::BITS - n.leading_zeros(); // ⌈log₂(n+1)⌉ for n ≥ 1
    full.min(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::verify::{verify_ranking, verify_ranking_oracle};

    #[test]
    fn saturation_values() {
        assert_eq!(saturation(1), 1);
        assert_eq!(saturation(2), 2);
        assert_eq!(saturation(3), 2);
        assert_eq!(saturation(7), 3);
        assert_eq!(saturation(8), 4);
    }

    #[test]
    fn ell1_alternates() {
        let r = rank_path(4, 1);
        assert_eq!(r.colors(), &[1, 2, 1, 2]);
    }

    #[test]
    fn ell2_n5_ruler() {
        let r = rank_path(5, 2);
        assert_eq!(r.colors(), &[1, 2, 1, 3, 1]);
        let g = Graph::path(5);
        assert_eq!(verify_ranking_oracle(&g, &r), Ok(None));
    }

    #[test]
    fn ell7_n8_max_color() {
        let r = rank_path(8, 7);
        assert_eq!(r.max_color(), 4);
        let g = Graph::path(8);
        assert_eq!(verify_ranking_oracle(&g, &r), Ok(None));
    }

    #[test]
    fn valid_and_exact_color_count_sampled() {
        for &n in &[1usize, 2, 3, 7, 8, 17, 100, 1000] {
            for ell in 1..=9 {
                let r = rank_path(n, ell);
                let g = Graph::path(n);
                assert_eq!(verify_ranking(&g, &r), Ok(None), "n={n} ell={ell}");
                assert_eq!(
                    r.num_distinct_colors() as u32,
                    rank_path_expected_colors(n, ell),
                    "n={n} ell={ell}"
                );
            }
        }
    }
}
