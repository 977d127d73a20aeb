//! Product composition: distance colorings of clique×path strips, the
//! ℓ-ranking of a strong product from an ℓ-ranking of one factor and a
//! distance-ℓ coloring of the other, and certificate-driven coloring of
//! graphs embedded in host ⊠ K_m ⊠ P products.

use crate::color::ttree::rank_simple_ttree;
use crate::color::ColorError;
use crate::decomposition::{make_edge_maximal, RootedTreeDecomposition};
use crate::graph::{induced_subgraph, Graph, StrongProduct};
use crate::verify::{verify_ranking, Ranking};

/// A distance-ℓ coloring: endpoints of every non-trivial path of length ≤ ℓ
/// receive different values. Values are 1-based.
#[derive(Debug, Clone)]
pub struct DistanceColoring {
    values: Vec<u32>,
    chi_bar: u32,
    ell: usize,
}

impl DistanceColoring {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, v: usize) -> u32 {
        self.values[v]
    }

    /// The number of values in use ("χ̄"): colors are {1, ..., chi_bar}.
    pub fn chi_bar(&self) -> u32 {
        self.chi_bar
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// ψ((a, i)) = m·(i mod (ℓ+1)) + a + 1 for K_m ⊠ P: a period of ℓ+1 along the
/// path stacked over the m clique rows, using exactly m(ℓ+1) values once the
/// path is long enough. Any two distinct vertices within product distance ℓ
/// differ in row or in path position mod ℓ+1, hence in value.
///
/// Vertex (a, i) sits at index a·path_len + i, matching
/// `strong_product(&[K_m, P_path_len])`.
pub fn distance_colour_clique_path(m: usize, path_len: usize, ell: usize) -> DistanceColoring {
    assert!(m >= 1 && ell >= 1);
    let mut values = Vec::with_capacity(m * path_len);
    for a in 0..m {
        for i in 0..path_len {
            values.push(clique_path_value(m, ell, a, i));
        }
    }
    DistanceColoring {
        values,
        chi_bar: (m * (ell + 1)) as u32,
        ell,
    }
}

pub(crate) fn clique_path_value(m: usize, ell: usize, a: usize, i: usize) -> u32 {
    (m * (i % (ell + 1)) + a + 1) as u32
}

/// ℓ-ranking of a two-factor strong product: φ(x, y) = χ̄·ρ(x) − ψ₀(y) with
/// ψ₀ zero-based. Uses at most χ̄·max(ρ) colors. Small products (≤ 1500
/// vertices) are verified before returning.
pub fn rank_product(
    prod: &StrongProduct,
    rho: &Ranking,
    psi: &DistanceColoring,
) -> Result<Ranking, ColorError> {
    if rho.ell() != psi.ell() {
        return Err(ColorError::MismatchedEll(rho.ell(), psi.ell()));
    }
    assert_eq!(prod.num_factors(), 2, "rank_product expects two factors");
    assert_eq!(prod.dims()[0], rho.len());
    assert_eq!(prod.dims()[1], psi.len());

    let n = prod.graph.vertex_count();
    let chi = psi.chi_bar();
    let mut colors = Vec::with_capacity(n);
    for v in 0..n {
        let c = prod.coords(v);
        colors.push(chi * rho.color(c.coords[0]) - (psi.value(c.coords[1]) - 1));
    }
    let ranking = Ranking::new(colors, rho.ell());
    if n <= 1500 {
        if let Some(v) = verify_ranking(&prod.graph, &ranking).expect("fully colored") {
            return Err(ColorError::VerificationFailed {
                witness: v.witness_path,
            });
        }
    }
    Ok(ranking)
}

/// An embedding of a target graph into host ⊠ K_m ⊠ P, with the host carrying
/// a (simple) tree decomposition and optionally an apex vertex that the
/// decomposition omits.
#[derive(Debug, Clone)]
pub struct ProductCertificate {
    pub host: Graph,
    pub host_decomposition: RootedTreeDecomposition,
    pub clique_size: usize,
    pub path_len: usize,
    pub apex: Option<usize>,
    /// target vertex v ↦ (host vertex, clique index, path index)
    pub embedding: Vec<(usize, usize, usize)>,
}

impl ProductCertificate {
    /// Checks that every target edge maps to an edge of host ⊠ K_m ⊠ P and
    /// that the embedding is injective and in range.
    pub fn validate(&self, target: &Graph) -> Result<(), ColorError> {
        assert_eq!(self.embedding.len(), target.vertex_count());
        let mut seen = std::collections::HashSet::new();
        for &(h, c, p) in &self.embedding {
            assert!(h < self.host.vertex_count(), "host vertex out of range");
            assert!(c < self.clique_size, "clique index out of range");
            assert!(p < self.path_len, "path index out of range");
            assert!(seen.insert((h, c, p)), "embedding is not injective");
        }
        for (u, v) in target.edges() {
            let (h1, _, p1) = self.embedding[u];
            let (h2, _, p2) = self.embedding[v];
            let host_ok = h1 == h2 || self.host.has_edge(h1, h2);
            let path_ok = p1.abs_diff(p2) <= 1;
            // distinct clique indices are always adjacent in K_m
            if !(host_ok && path_ok) {
                return Err(ColorError::InvalidCertificate(u, v));
            }
        }
        Ok(())
    }
}

/// Ranking of the certificate's host graph: the decomposition part is ranked
/// through the simple-treewidth engine (after internal edge-maximal
/// completion, valid by subgraph monotonicity) and the apex, if present, gets
/// the next color above everything, making it a unique maximum.
fn rank_host(cert: &ProductCertificate, ell: usize) -> Result<Ranking, ColorError> {
    let n = cert.host.vertex_count();
    let core: Vec<usize> = (0..n).filter(|&v| Some(v) != cert.apex).collect();
    let (core_g, core_map) = induced_subgraph(&cert.host, &core)?;
    let mut to_core = vec![usize::MAX; n];
    for (i, &v) in core_map.iter().enumerate() {
        to_core[v] = i;
    }
    let core_d = cert.host_decomposition.relabeled(&to_core);
    let completed = make_edge_maximal(&core_g, &core_d)
        .map_err(|e| ColorError::InvalidDecomposition(e.to_string()))?;
    let tr = rank_simple_ttree(&completed, &core_d, ell)?;

    let mut colors = vec![0u32; n];
    for (i, &v) in core_map.iter().enumerate() {
        colors[v] = tr.ranking.color(i);
    }
    if let Some(apex) = cert.apex {
        colors[apex] = tr.ranking.max_color() + 1;
    }
    Ok(Ranking::new(colors, ell))
}

/// ℓ-ranking of a target graph through its product certificate:
/// φ(v) = χ̄·ρ(host(v)) − ψ₀(clique(v), path(v)), verified on the target.
pub fn rank_certificate(
    cert: &ProductCertificate,
    target: &Graph,
    ell: usize,
) -> Result<Ranking, ColorError> {
    cert.validate(target)?;
    let rho = rank_host(cert, ell)?;
    let m = cert.clique_size;
    let chi_bar = (m * (ell + 1)) as u32;
    let colors = cert
        .embedding
        .iter()
        .map(|&(h, c, p)| chi_bar * rho.color(h) - (clique_path_value(m, ell, c, p) - 1))
        .collect();
    let ranking = Ranking::new(colors, ell);
    match verify_ranking(target, &ranking).expect("fully colored") {
        None => Ok(ranking),
        Some(v) => Err(ColorError::VerificationFailed {
            witness: v.witness_path,
        }),
    }
}
