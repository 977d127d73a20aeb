use std::time::Instant;
use lranking::color::rank_simple_ttree;
use lranking::decomposition::random_simple_ttree;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let t: usize = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let seed: u64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(7);
    let (g, d) = random_simple_ttree(n, t, seed).unwrap();
    let t1 = Instant::now();
    let r = rank_simple_ttree(&g, &d, 2).unwrap();
    println!(
        "t={t} n={n}: colors={} a={} restarts={} k={:.2} color_time={:?}",
        r.colors_used, r.a, r.restarts, r.k, t1.elapsed()
    );
}
