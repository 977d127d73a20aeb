use std::collections::{BTreeMap, HashSet};
use lranking::color::{rank_simple_ttree, BandKind};
use lranking::decomposition::random_simple_ttree;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let t: usize = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let (g, d) = random_simple_ttree(n, t, 7).unwrap();
    let r = rank_simple_ttree(&g, &d, 2).unwrap();
    // actual USED colors (pre-compression unavailable; reconstruct usage per band from ranking? use ledger spans)
    println!("colors={} a={} restarts={}", r.colors_used, r.a, r.restarts);
    let mut per_rung: BTreeMap<(u64, &str), HashSet<u64>> = BTreeMap::new();
    for b in &r.bands {
        let (cbits, kind) = match b.kind {
            BandKind::Top { c } => ((c * 100.0) as u64, "top"),
            BandKind::Layer { c, .. } => ((c * 100.0) as u64, "layer"),
            BandKind::Base { c } => ((c * 100.0) as u64, "base"),
        };
        let set = per_rung.entry((cbits, kind)).or_default();
        for v in b.lo..=b.hi {
            set.insert(v);
        }
    }
    for ((c, kind), slots) in &per_rung {
        println!("c={:.2} {kind}: {} slots", *c as f64 / 100.0, slots.len());
    }
}
