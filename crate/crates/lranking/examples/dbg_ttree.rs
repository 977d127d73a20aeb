use lranking::decomposition::random_simple_ttree;
use lranking::color::rank_simple_ttree;

fn main() {
    for t in 2..=3usize {
        for seed in 0..4u64 {
            let (g, d) = random_simple_ttree(400, t, 40 + seed).unwrap();
            match rank_simple_ttree(&g, &d, 2) {
                Ok(r) => println!(
                    "t={t} seed={seed}: colors={} k={:.2} a={} restarts={} allowance={:.1}",
                    r.colors_used, r.k, r.a, r.restarts, r.a as f64 * r.k
                ),
                Err(e) => println!("t={t} seed={seed}: ERROR {e}"),
            }
        }
    }
}
