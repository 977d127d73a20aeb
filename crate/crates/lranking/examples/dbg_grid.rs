use std::time::Instant;
use lranking::color::rank_simple_ttree;
use lranking::decomposition::random_simple_ttree;
use lranking::verify::verify_ranking;

fn main() {
    let ell = 2;
    for t in 1..=3usize {
        for n in [100usize, 1000, 10_000, 100_000] {
            let mut cols = Vec::new();
            for seed in 0..3u64 {
                let t0 = Instant::now();
                let (g, d) = random_simple_ttree(n, t, 7 + seed).unwrap();
                let gen_ms = t0.elapsed().as_millis();
                let t1 = Instant::now();
                let r = rank_simple_ttree(&g, &d, ell).unwrap();
                let col_ms = t1.elapsed().as_millis();
                let t2 = Instant::now();
                assert_eq!(verify_ranking(&g, &r.ranking), Ok(None));
                let ver_ms = t2.elapsed().as_millis();
                cols.push(r.colors_used);
                println!(
                    "t={t} n={n} seed={seed}: colors={} a={} restarts={} k={:.2} [gen {gen_ms}ms color {col_ms}ms verify {ver_ms}ms]",
                    r.colors_used, r.a, r.restarts, r.k
                );
            }
            cols.sort_unstable();
            println!("  t={t} n={n} median={}", cols[cols.len() / 2]);
        }
    }
}
