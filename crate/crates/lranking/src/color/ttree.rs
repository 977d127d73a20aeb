//! The simple-treewidth ℓ-ranking engine.
//!
//! Structure: blocks of ℓ+1 BFS layers are colored by a slack recursion that
//! splits the block graph at a weighted separator, colors each layer of the
//! separator's ancestral closure through its skeleton, and recurses on the
//! light remainder with a tightened budget. Vertices whose pending subtrees
//! are too heavy ("dangerous") are lifted into the top color band, as is the
//! root bag, whose colors thread through the block recursion as pins.
//!
//! Colors live in a budget of a·k values carved into bands along a global
//! budget ladder c₀ < c₁ < … < k. Band positions are canonical (a function
//! of ladder rung and layer index only), so parallel sub-instances reuse the
//! same color slots; where an instance outgrows its canonical slots it falls
//! back to packing under an inherited ceiling, which keeps it strictly below
//! every interface color pinned above it. `a` is adaptive: any overflow
//! restarts the whole coloring with `a` doubled. The final ranking is
//! compressed order-preservingly onto 1..=D (the ranking condition only sees
//! order and equality of colors) and verified before it is returned.

use std::collections::{HashMap, HashSet};

use crate::color::path::rank_path_vertices;
use crate::color::skeleton::{build_skeleton, rank_via_skeleton};
use crate::color::ColorError;
use crate::decomposition::{
    subtree_weights, weighted_separator, RootedTreeDecomposition, VertexWeights,
};
use crate::graph::{bfs_layering, induced_subgraph, Graph};
use crate::numerics::{iter_log, ln_iter_pow, solve_k, tower};
use crate::verify::{compact_ranking, verify_ranking, Ranking};

const MAX_RESTARTS: u32 = 16;

fn quantum_override() -> Option<u64> {
    std::env::var("LRANK_QUANTUM").ok()?.parse().ok()
}

/// Ceiling value meaning "no external color ceiling".
const NO_LIMIT: u64 = u64::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandKind {
    /// Root-bag pins and dangerous vertices above the rung floor.
    Top { c: f64 },
    /// One BFS layer of a separator closure.
    Layer { c: f64, layer: usize },
    /// Distinct-color base case at an exhausted budget.
    Base { c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandRecord {
    pub lo: u64,
    pub hi: u64,
    /// Id of the block invocation that allocated this band.
    pub block: usize,
    pub kind: BandKind,
}

impl BandRecord {
    pub fn c(&self) -> f64 {
        match self.kind {
            BandKind::Top { c } | BandKind::Layer { c, .. } | BandKind::Base { c } => c,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self.kind, BandKind::Top { .. })
    }
}

/// A ranking together with the run's budget bookkeeping.
#[derive(Debug, Clone)]
pub struct TtreeRanking {
    pub ranking: Ranking,
    /// Distinct colors used (= max color after compression).
    pub colors_used: u32,
    /// Yardstick k: solve_k(t, n) for t ≥ 2, and the closed-form value 2 for
    /// the path case t ≤ 1.
    pub k: f64,
    /// Realized band multiplier after restarts.
    pub a: u64,
    pub restarts: u32,
    /// Band allocations of the final attempt, in pre-compression color space.
    pub bands: Vec<BandRecord>,
}

/// ℓ-ranking of a graph that is edge-maximal with respect to a t-simple
/// rooted tree decomposition. Verified before return.
pub fn rank_simple_ttree(
    h: &Graph,
    d: &RootedTreeDecomposition,
    ell: usize,
) -> Result<TtreeRanking, ColorError> {
    assert!(ell >= 1);
    let t = d.width();
    let report = d.validate(h, Some(t));
    if !report.is_valid {
        return Err(ColorError::InvalidDecomposition(format!(
            "{:?}",
            report.violations.first()
        )));
    }
    if t >= 1 && report.is_simple_for != Some(t) {
        return Err(ColorError::NotSimple(t));
    }
    for bag in d.bags() {
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                if !h.has_edge(bag[i], bag[j]) {
                    return Err(ColorError::NotEdgeMaximal(bag[i], bag[j]));
                }
            }
        }
    }

    let n = h.vertex_count();
    let yardstick = if t >= 2 {
        solve_k(t, (n.max(1)) as f64)?.k
    } else {
        2.0 // the closed form 2·log n / log^{(1)} n
    };

    let a0 = ((ell + 2) * (t.max(1) + 2)) as u64;
    let mut a = a0;
    let mut restarts = 0u32;
    loop {
        match attempt_rank(h, d, ell, a) {
            Ok((ranking, bands)) => {
                let colors_used = ranking.max_color();
                if f64::from(colors_used) <= a as f64 * yardstick {
                    match verify_ranking(h, &ranking).expect("engine colors everything") {
                        None => {
                            return Ok(TtreeRanking {
                                colors_used,
                                ranking,
                                k: yardstick,
                                a,
                                restarts,
                                bands,
                            })
                        }
                        Some(v) => {
                            return Err(ColorError::VerificationFailed {
                                witness: v.witness_path,
                            })
                        }
                    }
                }
                // budget formally exceeded: widen the bands and retry
            }
            Err(ColorError::BandOverflow { .. }) => {}
            Err(e) => return Err(e),
        }
        restarts += 1;
        a *= 2;
        if restarts > MAX_RESTARTS {
            return Err(ColorError::BandOverflow { a });
        }
    }
}

/// One full coloring attempt at a fixed band multiplier; shared by the public
/// entry point and the nested skeleton recursions.
fn attempt_rank(
    h: &Graph,
    d: &RootedTreeDecomposition,
    ell: usize,
    a: u64,
) -> Result<(Ranking, Vec<BandRecord>), ColorError> {
    let n = h.vertex_count();
    if n == 0 {
        return Ok((Ranking::new(vec![], ell), vec![]));
    }
    let t = d.width();
    if t == 0 || h.edge_count() == 0 {
        return Ok((Ranking::new(vec![1; n], ell), vec![]));
    }
    if t == 1 && (0..n).all(|v| h.degree(v) <= 2) {
        // disjoint paths: ruler-color each one
        let mut colors = vec![0u32; n];
        for comp in h.connected_components() {
            let order = path_order(h, &comp);
            let c = rank_path_vertices(&order, n, ell);
            for &v in &order {
                colors[v] = c[v];
            }
        }
        return Ok((Ranking::new(colors, ell), vec![]));
    }

    let t_num = t.max(2);
    let mut engine = Engine::new(ell, t_num, n, a)?;

    let mut colors = vec![0u64; n];
    let idx = DecompIndex::new(d, n);
    for comp in h.connected_components() {
        let (gc, mapc) = induced_subgraph(h, &comp)?;
        let to_local = inverse_map(&comp, n);
        let dc = restrict_by_occupancy(d, &idx, &comp, &to_local)
            .expect("a nonempty component occupies some bag");
        let mut colors_c = vec![0u64; gc.vertex_count()];
        engine.color_blocks(&gc, &dc, 0, &[], NO_LIMIT, &mut colors_c)?;
        for (i, &v) in mapc.iter().enumerate() {
            colors[v] = colors_c[i];
        }
    }
    debug_assert!(colors.iter().all(|&c| c > 0));
    // verified greedy compaction; applied at every nesting level, so smaller
    // sub-rankings compound into narrower bands above
    let ranking = compact_ranking(h, &compress(&colors, ell));
    Ok((ranking, engine.ledger))
}

/// Order-preserving compression onto colors 1..=D.
fn compress(colors: &[u64], ell: usize) -> Ranking {
    let mut used: Vec<u64> = colors.to_vec();
    used.sort_unstable();
    used.dedup();
    let remap: Vec<u32> = colors
        .iter()
        .map(|c| used.binary_search(c).unwrap() as u32 + 1)
        .collect();
    Ranking::new(remap, ell)
}

/// Vertices of a path component in walk order.
fn path_order(h: &Graph, comp: &[usize]) -> Vec<usize> {
    if comp.len() == 1 {
        return comp.to_vec();
    }
    let start = *comp
        .iter()
        .find(|&&v| h.degree(v) <= 1)
        .expect("path component has an endpoint");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < comp.len() {
        let next = *h
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev)
            .expect("interior path vertex has a forward neighbor");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn inverse_map(verts: &[usize], n_old: usize) -> Vec<usize> {
    let mut to_new = vec![usize::MAX; n_old];
    for (i, &v) in verts.iter().enumerate() {
        to_new[v] = i;
    }
    to_new
}

/// Precomputed navigation data of one decomposition, shared by the
/// restriction calls of all its components.
struct DecompIndex {
    occ: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl DecompIndex {
    fn new(d: &RootedTreeDecomposition, n: usize) -> Self {
        DecompIndex {
            occ: d.occurrence_index(n),
            depth: d.depths(),
        }
    }
}

/// Tree restriction to the nodes whose bags meet `occupy` (a connected vertex
/// set), closed upward to their unique top node and re-rooted there; bags are
/// mapped through `relabel` (usize::MAX drops a vertex). The relabel domain
/// may be wider than `occupy`, which keeps interface vertices in the bags.
/// Cost is proportional to the restriction, not to the whole tree.
fn restrict_by_occupancy(
    d: &RootedTreeDecomposition,
    idx: &DecompIndex,
    occupy: &[usize],
    relabel: &[usize],
) -> Option<RootedTreeDecomposition> {
    let mut kept: HashSet<usize> = HashSet::new();
    for &v in occupy {
        kept.extend(idx.occ[v].iter().copied());
    }
    let top = kept.iter().copied().min_by_key(|&x| (idx.depth[x], x))?;
    let originals: Vec<usize> = kept.iter().copied().collect();
    for x in originals {
        let mut y = x;
        while y != top {
            match d.parent(y) {
                Some(p) => {
                    if !kept.insert(p) {
                        break;
                    }
                    y = p;
                }
                None => break,
            }
        }
    }
    let mut order: Vec<usize> = kept.into_iter().collect();
    order.sort_unstable_by_key(|&x| (idx.depth[x], x));
    let mut new_of: HashMap<usize, usize> = HashMap::new();
    for (i, &x) in order.iter().enumerate() {
        new_of.insert(x, i);
    }
    let mut bags = Vec::with_capacity(order.len());
    let mut parent = vec![None; order.len()];
    for (i, &x) in order.iter().enumerate() {
        bags.push(
            d.bag(x)
                .iter()
                .filter_map(|&v| {
                    let nv = relabel[v];
                    (nv != usize::MAX).then_some(nv)
                })
                .collect(),
        );
        if x != top {
            let p = d.parent(x).expect("kept non-top node has a parent");
            parent[i] = Some(new_of[&p]);
        }
    }
    Some(RootedTreeDecomposition::new(bags, parent))
}

/// New decomposition with a fresh root node holding `root_bag` above `d`.
fn attach_root(d: &RootedTreeDecomposition, root_bag: Vec<usize>) -> RootedTreeDecomposition {
    let mut bags = vec![root_bag];
    let mut parent: Vec<Option<usize>> = vec![None];
    for x in 0..d.node_count() {
        bags.push(d.bag(x).to_vec());
        parent.push(Some(match d.parent(x) {
            Some(p) => p + 1,
            None => 0,
        }));
    }
    RootedTreeDecomposition::new(bags, parent)
}

#[doc(hidden)]
fn overflow_note(site: &str, a: u64, have: u64, need: u64) {
    if std::env::var_os("LRANK_DEBUG_BANDS").is_some() {
        eprintln!("overflow at {site}: a={a} have={have} need={need}");
    }
}

struct Engine {
    ell: usize,
    t: usize,
    k: f64,
    a: u64,
    lnp_k: f64,
    /// Budget ladder c₀ < c₁ < …; the last rung is the one whose step would
    /// reach k.
    ladder: Vec<f64>,
    /// Canonical floor per rung (0 where the budget calculus has no room).
    floors: Vec<u64>,
    /// Canonical per-layer band size per rung (0 disables canonical slots).
    quanta: Vec<u64>,
    ledger: Vec<BandRecord>,
    next_block: usize,
}

impl Engine {
    fn new(ell: usize, t: usize, n: usize, a: u64) -> Result<Self, ColorError> {
        let c0 = base_budget(t)?;
        // Capacity-correct k: (log^{(t-2)} k)^k ≥ t·n·(log^{(t-2)} c₀)^{c₀},
        // so the total block weight t·n obeys the budget constraint at c₀.
        let target = (t as f64 * n as f64).ln() + ln_iter_pow(t - 2, c0)?;
        let mut lo = (c0 + 2.0).max(1.05 * tower(t - 2)? + 0.1);
        let mut hi = lo;
        while ln_iter_pow(t - 2, hi)? < target {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if ln_iter_pow(t - 2, mid)? >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let k = hi.max(c0 + 2.0);

        // Every rung keeps at least 0.7 budget units of band before k, so
        // even the deepest rung has canonical slots; tinier remainders are
        // colored at the last rung.
        let mut ladder = vec![c0];
        loop {
            let c = *ladder.last().unwrap();
            let next = c + step(t, c);
            if next > k - 1.7 {
                break;
            }
            ladder.push(next);
        }

        // Uniform anchor geometry: every rung owns a block of L·Q colors,
        // stacked top-down below a reserve for the top bands. The c-ladder
        // drives the weight thresholds; the anchors only have to be monotone
        // for the dominance arguments, so a roomy uniform quantum maximizes
        // slot sharing between parallel instances. Rungs whose anchor would
        // fall below 1 run in pure ceiling mode.
        let l_canon = (ell + 4) as u64;
        let cap = (a as f64 * k).floor().max(1.0) as u64;
        let quantum = quantum_override().unwrap_or((a / 4).max(4));
        let mut floors = vec![0u64; ladder.len()];
        let mut quanta = vec![0u64; ladder.len()];
        for r in 0..ladder.len() {
            let offset = 2 * quantum + (r as u64) * l_canon * quantum;
            if cap > offset + l_canon * quantum {
                floors[r] = cap - offset;
                quanta[r] = quantum;
            }
        }

        Ok(Engine {
            ell,
            t,
            k,
            a,
            lnp_k: ln_iter_pow(t - 2, k)?,
            ladder,
            floors,
            quanta,
            ledger: Vec::new(),
            next_block: 0,
        })
    }

    fn c_of(&self, rung: usize) -> f64 {
        self.ladder[rung.min(self.ladder.len() - 1)]
    }

    fn last_rung(&self, rung: usize) -> bool {
        rung + 1 >= self.ladder.len()
    }

    fn floor_of(&self, rung: usize) -> u64 {
        self.floors.get(rung).copied().unwrap_or(0)
    }

    fn quantum_of(&self, rung: usize) -> u64 {
        self.quanta.get(rung).copied().unwrap_or(0)
    }

    fn color_cap(&self) -> u64 {
        (self.a as f64 * self.k).floor().max(1.0) as u64
    }

    /// Highest color available to slack interiors at a rung under an external
    /// ceiling. The canonical floor applies whenever it is meaningful;
    /// outside the budget calculus' range the inherited ceiling alone bounds
    /// the interior, which is exactly the dominance the enclosing block
    /// needs.
    fn effective_top(&self, rung: usize, limit: u64) -> u64 {
        let f = self.floor_of(rung);
        if f >= 1 {
            f.min(limit)
        } else {
            limit
        }
    }

    fn lnp(&self, x: f64) -> Result<f64, ColorError> {
        Ok(ln_iter_pow(self.t - 2, x)?)
    }

    /// Heavy-subtree threshold of the block recursion at a rung:
    /// (log^{(t-2)} k)^k / (log^{(t-2)} (c+s))^{c+s}.
    fn n0_block(&self, rung: usize) -> Result<f64, ColorError> {
        let c = self.c_of(rung);
        let s = step(self.t, c);
        Ok((self.lnp_k - self.lnp(c + s)?).exp())
    }

    /// Heavy-component threshold of the slack recursion, one step deeper:
    /// (log^{(t-2)} k)^k / (log^{(t-2)} (c+s+s'))^{c+s+s'}, s' = step(c+s).
    /// The extra step is what leaves room below a vertex's color for the
    /// weight still hanging under it.
    fn n0_slack(&self, rung: usize) -> Result<f64, ColorError> {
        let c = self.c_of(rung);
        let s = step(self.t, c);
        let s2 = step(self.t, c + s);
        Ok((self.lnp_k - self.lnp(c + s + s2)?).exp())
    }

    /// Block recursion: color `h` (connected; the root bag of `d` is L_0 of
    /// the layering), honoring pinned colors on the root bag.
    fn color_blocks(
        &mut self,
        h: &Graph,
        d: &RootedTreeDecomposition,
        rung: usize,
        pinned: &[(usize, u64)],
        limit: u64,
        colors: &mut Vec<u64>,
    ) -> Result<(), ColorError> {
        let n = h.vertex_count();
        if n == 0 {
            return Ok(());
        }
        let block = self.next_block;
        self.next_block += 1;
        let idx = DecompIndex::new(d, n);
        let roots: Vec<usize> = d.bag(d.root()).to_vec();
        debug_assert!(!roots.is_empty());
        let lay = bfs_layering(h, &roots)?;
        let last_layer = lay.num_layers() - 1;
        let block_end = last_layer.min(self.ell + 1);

        // weights for the slack call on the first block
        let n0b = self.n0_block(rung)?;
        let kappa = if last_layer >= self.ell + 1 {
            Some(subtree_weights(h, &lay, self.ell + 1, self.t).expect("layer in range"))
        } else {
            None
        };

        let mut h0_verts: Vec<usize> =
            (0..=block_end).flat_map(|i| lay.layer(i).to_vec()).collect();
        h0_verts.sort_unstable();
        let to_h0 = inverse_map(&h0_verts, n);
        let (g0, map0) = induced_subgraph(h, &h0_verts)?;
        let d0 = restrict_by_occupancy(d, &idx, &h0_verts, &to_h0).expect("block is nonempty");
        let mut w0 = vec![1.0f64; h0_verts.len()];
        if let Some(kappa) = &kappa {
            for (i, &v) in h0_verts.iter().enumerate() {
                if lay.layer_of(v) == self.ell + 1 {
                    w0[i] = kappa.get(v).min(n0b);
                }
            }
        }
        let mut colors0 = vec![0u64; h0_verts.len()];
        self.slack(
            &g0,
            &d0,
            &VertexWeights::from_vec(w0),
            rung,
            limit,
            block,
            &mut colors0,
        )?;
        for (i, &v) in map0.iter().enumerate() {
            colors[v] = colors0[i];
        }

        // Top band: pins first, then the rest of the root bag, then the
        // dangerous vertices of layer ℓ+1, all distinct within this block and
        // above everything its slack interior used. Top-band vertices of
        // different blocks are at graph distance > ℓ from each other and from
        // the enclosing interiors, so no cross-block coordination is needed.
        let slack_top = self.effective_top(rung, limit);
        let alloc_base = (self.floor_of(rung) as i64).max(slack_top as i64).max(0);
        let cap = self.color_cap();
        let mut used: HashSet<u64> = HashSet::new();
        for &(v, col) in pinned {
            colors[v] = col;
            used.insert(col);
        }
        let pinned_set: HashSet<usize> = pinned.iter().map(|&(v, _)| v).collect();
        let mut next = alloc_base as u64 + 1;
        let mut top_hi = alloc_base as u64 + 1;
        let alloc = |used: &mut HashSet<u64>, next: &mut u64| -> Result<u64, ColorError> {
            while used.contains(next) {
                *next += 1;
            }
            if *next > cap {
                overflow_note("top-alloc", 0, *next, cap);
                return Err(ColorError::BandOverflow { a: cap });
            }
            used.insert(*next);
            Ok(*next)
        };
        for &v in &roots {
            if pinned_set.contains(&v) {
                continue;
            }
            let col = alloc(&mut used, &mut next)?;
            colors[v] = col;
            top_hi = top_hi.max(col);
        }
        if let Some(kappa) = &kappa {
            for &v in lay.layer(self.ell + 1) {
                if kappa.get(v) > n0b {
                    let col = alloc(&mut used, &mut next)?;
                    colors[v] = col;
                    top_hi = top_hi.max(col);
                }
            }
        }
        self.ledger.push(BandRecord {
            lo: alloc_base as u64 + 1,
            hi: top_hi,
            block,
            kind: BandKind::Top { c: self.c_of(rung) },
        });

        // Recurse on the components hanging below layer ℓ+1.
        if last_layer <= self.ell + 1 {
            return Ok(());
        }
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] || lay.layer_of(start) <= self.ell + 1 {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in h.neighbors(u) {
                    if !seen[w] && lay.layer_of(w) > self.ell + 1 {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            let mut cx: Vec<usize> = comp
                .iter()
                .flat_map(|&u| h.neighbors(u).iter().copied())
                .filter(|&w| lay.layer_of(w) == self.ell + 1)
                .collect();
            cx.sort_unstable();
            cx.dedup();
            debug_assert!(cx.len() <= self.t, "up-neighbour bound exceeded");
            debug_assert!(!cx.is_empty());

            let mut hx: Vec<usize> = comp.iter().chain(cx.iter()).copied().collect();
            hx.sort_unstable();
            let to_x = inverse_map(&hx, n);
            let (gx, mapx) = induced_subgraph(h, &hx)?;
            // Re-rooted subtree over the bags hitting X, with the interface
            // C_X kept in the bags and pinned on a fresh root above.
            let dx_inner =
                restrict_by_occupancy(d, &idx, &comp, &to_x).expect("component occupies bags");
            let dx = attach_root(&dx_inner, cx.iter().map(|&v| to_x[v]).collect());
            let pins: Vec<(usize, u64)> = cx.iter().map(|&v| (to_x[v], colors[v])).collect();
            let child_limit = pins.iter().map(|&(_, col)| col).min().unwrap() - 1;
            // The child's rung is decided by its actual pin colors: heavy
            // subtrees hang off top-band (dangerous) pins and stay at this
            // rung, reusing its band slots — same-slot vertices of different
            // generations are ≥ ℓ+1 apart and every crossing path meets a
            // top-band pin. Light interfaces force a descent below their
            // band.
            let mut child_rung = rung;
            while !self.last_rung(child_rung) && self.floor_of(child_rung) > child_limit {
                child_rung += 1;
            }
            let mut colors_x = vec![0u64; hx.len()];
            self.color_blocks(&gx, &dx, child_rung, &pins, child_limit, &mut colors_x)?;
            for (i, &v) in mapx.iter().enumerate() {
                colors[v] = colors_x[i];
            }
        }
        Ok(())
    }

    /// Slack recursion: colors all of `h` below the rung's effective top,
    /// separating heavy weight through tree bags and recursing on the light
    /// components one rung deeper.
    #[allow(clippy::too_many_arguments)]
    fn slack(
        &mut self,
        h: &Graph,
        d: &RootedTreeDecomposition,
        weights: &VertexWeights,
        rung: usize,
        limit: u64,
        block: usize,
        colors: &mut Vec<u64>,
    ) -> Result<(), ColorError> {
        let n = h.vertex_count();
        if n == 0 {
            return Ok(());
        }
        let idx = DecompIndex::new(d, n);
        let mut rung = rung;
        // drop to a rung whose canonical floor fits under the ceiling
        while !self.last_rung(rung) && self.floor_of(rung) > limit {
            rung += 1;
        }
        let st = loop {
            let total = weights.total();
            let n0 = self.n0_slack(rung)?;
            if total <= n0 {
                if self.last_rung(rung) {
                    return self.distinct_base(h, rung, limit, block, colors);
                }
                rung += 1;
                continue;
            }
            let c_sep = ((total / n0).ceil() as usize).clamp(2, 4 * n + 4);
            let st = weighted_separator(h, d, weights, c_sep);
            if st.iter().all(|&x| d.bag(x).is_empty()) {
                if self.last_rung(rung) {
                    return self.distinct_base(h, rung, limit, block, colors);
                }
                rung += 1;
                continue;
            }
            break st;
        };

        // ancestral closure of the separator
        let mut in_closure = vec![false; d.node_count()];
        for &x in &st {
            let mut y = x;
            loop {
                if in_closure[y] {
                    break;
                }
                in_closure[y] = true;
                match d.parent(y) {
                    Some(p) => y = p,
                    None => break,
                }
            }
        }
        let mut hprime: Vec<usize> = (0..d.node_count())
            .filter(|&x| in_closure[x])
            .flat_map(|x| d.bag(x).iter().copied())
            .collect();
        hprime.sort_unstable();
        hprime.dedup();
        debug_assert!(!hprime.is_empty());
        let in_hprime: HashSet<usize> = hprime.iter().copied().collect();

        let roots: Vec<usize> = d.bag(d.root()).to_vec();
        let lay = bfs_layering(h, &roots)?;
        let num_layers = lay.num_layers();
        let (closure_d, _) = d.induced_on_nodes(&in_closure, d.root());

        // Color each closure layer locally. Lower layer index = higher band;
        // any two equal-colored closure vertices are then in the same layer,
        // and a path dipping to an earlier layer meets a strictly larger
        // color. The light remainder gets whatever range is left below.
        let mut layer_local: Vec<(Vec<usize>, Vec<u64>)> = Vec::new();
        for i in 0..num_layers {
            let hi: Vec<usize> = lay
                .layer(i)
                .iter()
                .copied()
                .filter(|v| in_hprime.contains(v))
                .collect();
            if hi.is_empty() {
                layer_local.push((hi, Vec::new()));
                continue;
            }
            let local = self.color_layer(h, &closure_d, &hi, i)?;
            layer_local.push((hi, local));
        }

        // Canonical slots: layer i of this rung occupies
        // [floor - (i+1)·Q, floor - i·Q) in every instance, so parallel
        // sub-instances reuse the same colors. A prefix of layers is placed
        // canonically for as long as it fits; layers that outgrow their slot
        // (and everything below them, to keep the bands descending) pack
        // downward from the current bottom instead.
        let top0 = self.effective_top(rung, limit);
        let q = self.quantum_of(rung);
        let floor_r = self.floor_of(rung);
        let l_canon = (self.ell + 4) as u64;
        let use_canonical = q >= 1 && floor_r >= 1 && floor_r <= limit;

        let mut running = top0;
        let mut canonical_prefix = use_canonical;
        for (i, (hi, local)) in layer_local.iter().enumerate() {
            let q_i = local.iter().max().copied().unwrap_or(0);
            if canonical_prefix && ((i as u64) >= l_canon || q_i > q) {
                canonical_prefix = false;
            }
            if hi.is_empty() {
                if canonical_prefix {
                    running = floor_r - (i as u64 + 1) * q;
                }
                continue;
            }
            let lo;
            if canonical_prefix {
                lo = floor_r - (i as u64 + 1) * q;
            } else {
                if running < q_i + 1 {
                    overflow_note("layer-stack", self.a, running, q_i + 1);
                    return Err(ColorError::BandOverflow { a: self.a });
                }
                lo = running - q_i;
            }
            for (j, &v) in hi.iter().enumerate() {
                colors[v] = lo + local[j];
            }
            self.ledger.push(BandRecord {
                lo: lo + 1,
                hi: if canonical_prefix { lo + q } else { running },
                block,
                kind: BandKind::Layer {
                    c: self.c_of(rung),
                    layer: i,
                },
            });
            running = lo;
        }
        let light_limit = running;

        // light components one rung deeper
        let next_rung = (rung + 1).min(self.ladder.len() - 1);
        let mut seen: Vec<bool> = (0..n).map(|v| in_hprime.contains(&v)).collect();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in h.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            let to_local = inverse_map(&comp, n);
            let (gx, mapx) = induced_subgraph(h, &comp)?;
            let dx =
                restrict_by_occupancy(d, &idx, &comp, &to_local).expect("component occupies bags");
            let wx = VertexWeights::from_vec(comp.iter().map(|&v| weights.get(v)).collect());
            let mut colors_x = vec![0u64; comp.len()];
            self.slack(&gx, &dx, &wx, next_rung, light_limit, block, &mut colors_x)?;
            for (i, &v) in mapx.iter().enumerate() {
                colors[v] = colors_x[i];
            }
        }
        Ok(())
    }

    /// Distinct colors downward from the rung's effective top; always a valid
    /// ranking, used when the budget ladder is exhausted on a tiny remainder.
    fn distinct_base(
        &mut self,
        h: &Graph,
        rung: usize,
        limit: u64,
        block: usize,
        colors: &mut [u64],
    ) -> Result<(), ColorError> {
        let n = h.vertex_count() as u64;
        let top0 = self.effective_top(rung, limit);
        if top0 < n + 1 {
            overflow_note("distinct-base", self.a, top0, n);
            return Err(ColorError::BandOverflow { a: self.a });
        }
        for (i, col) in colors.iter_mut().enumerate() {
            *col = top0 - i as u64;
        }
        self.ledger.push(BandRecord {
            lo: top0 - n + 1,
            hi: top0,
            block,
            kind: BandKind::Base { c: self.c_of(rung) },
        });
        Ok(())
    }

    /// Colors one layer of the separator closure, locally with colors
    /// 1..=q_i: layer 0 is a clique inside the root bag and gets distinct
    /// colors; deeper layers go through their skeleton (recursively ranked)
    /// and a pathwidth coloring of the remainder.
    fn color_layer(
        &mut self,
        h: &Graph,
        closure_d: &RootedTreeDecomposition,
        hi: &[usize],
        layer: usize,
    ) -> Result<Vec<u64>, ColorError> {
        if layer == 0 {
            return Ok((1..=hi.len() as u64).collect());
        }
        let (gi, _) = induced_subgraph(h, hi)?;
        let to_new = inverse_map(hi, h.vertex_count());
        let d_i = closure_d.relabeled(&to_new);

        let skel = build_skeleton(&gi, &d_i, self.ell)?;
        if skel.len() >= gi.vertex_count() {
            // the skeleton did not shrink the layer; rank the layer directly
            // (it is strictly smaller than the enclosing slack instance)
            let (direct, _) = attempt_rank(&gi, &d_i, self.ell, self.a)?;
            if std::env::var_os("LRANK_DEBUG_LAYERS").is_some() {
                eprintln!(
                    "layer direct: |hi|={} q={}",
                    hi.len(),
                    direct.max_color()
                );
            }
            return Ok(direct.colors().iter().map(|&c| c as u64).collect());
        }
        let (skel_g, _) = skel.induced(&gi);
        let to_skel = inverse_map(skel.vertices(), gi.vertex_count());
        let skel_d = d_i.relabeled(&to_skel);
        let (skel_ranking, _) = attempt_rank(&skel_g, &skel_d, self.ell, self.a)?;
        let band = ((self.ell + 1) * d_i.width() + 1) as u32;
        let shifted = Ranking::new(
            skel_ranking.colors().iter().map(|&c| c + band).collect(),
            self.ell,
        );
        let local = rank_via_skeleton(&gi, &d_i, self.ell, &skel, &shifted)?;
        if std::env::var_os("LRANK_DEBUG_LAYERS").is_some() {
            eprintln!(
                "layer skel: |hi|={} |skel|={} skelD={} q={}",
                hi.len(),
                skel.len(),
                skel_ranking.max_color(),
                local.max_color()
            );
        }
        Ok(local.colors().iter().map(|&c| c as u64).collect())
    }
}

/// Initial budget c₀. For t = 2 the classical lower end τ(1) = e is usable
/// as-is; for larger t the τ(t-1) floor dwarfs any desk-scale k, so the
/// budget starts just above the domain boundary of log^{(t-2)} instead.
fn base_budget(t: usize) -> Result<f64, ColorError> {
    Ok(if t == 2 {
        std::f64::consts::E
    } else {
        (1.1 * tower(t - 3)?).max(2.0)
    })
}

/// Budget step s = log c / log^{(t-1)} c, with the iterated-log factor
/// clamped to ≥ 1 so the step stays positive below the τ scale.
fn step(t: usize, c: f64) -> f64 {
    let denom = iter_log(t - 1, c).unwrap_or(1.0).max(1.0);
    (c.ln() / denom).max(0.05)
}
