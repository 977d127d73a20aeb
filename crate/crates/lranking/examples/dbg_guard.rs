// debug harness
use lranking::decomposition::random_path_instance;
use lranking::color::{guard_set};
use lranking::verify::enumerate_induced_paths;

fn main() {
    'outer: for w in 1..=2usize {
        for seed in 0..25u64 {
            let n = (w + 2) + (seed as usize % 9);
            let (g, pd) = random_path_instance(n, w, 1000 + seed);
            for ell in 1..=3 {
                let u = guard_set(&g, &pd, ell).unwrap();
                for path in enumerate_induced_paths(&g, ell) {
                    let a = path[0];
                    let b = *path.last().unwrap();
                    if u.contains(a) && u.contains(b) {
                        for &x in &path[1..path.len()-1] {
                            if !u.contains(x) {
                                println!("VIOLATION w={w} seed={seed} n={n} ell={ell}");
                                println!("bags: {:?}", pd.bags());
                                println!("edges: {:?}", g.edges());
                                println!("U = {:?}", u.vertices());
                                println!("path = {:?}", path);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
}
