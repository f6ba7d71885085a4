//! Inner normal fan combinatorics of a full-dimensional lattice polytope:
//! rays, maximal cones, primitive collections and the irrelevant ideal's
//! squarefree generators.

use super::{guard_rays, GeomError, LatticePolytope};
use crate::poly::ExponentVector;
use itertools::Itertools;

/// Normal-fan data of a full-dimensional polytope. Ray `i` is the primitive
/// inner normal of facet `i`; the maximal cone of a vertex is the set of
/// facets through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanData {
    pub rays: Vec<Vec<i64>>,
    /// one ray-index set per vertex, in vertex order
    pub maximal_cones: Vec<Vec<usize>>,
    pub primitive_collections: Vec<Vec<usize>>,
    /// squarefree 0/1 exponent vectors in `Z^r`, one per maximal cone,
    /// deduplicated: the generator for cone sigma is `prod_{i not in sigma} x_i`
    pub irrelevant_generators: Vec<ExponentVector>,
}

impl FanData {
    pub fn build(p: &LatticePolytope) -> Result<Self, GeomError> {
        Ok(FanData {
            rays: p.facets().iter().map(|f| f.normal.clone()).collect(),
            maximal_cones: (0..p.vertices().len()).map(|v| p.active_set(v)).collect(),
            primitive_collections: primitive_collections(p)?,
            irrelevant_generators: irrelevant_generators(p)?,
        })
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }
}

/// All minimal non-cone ray subsets: `C` does not span a cone of the fan but
/// every proper subset does. Deterministic order: by size, then
/// lexicographically.
pub fn primitive_collections(p: &LatticePolytope) -> Result<Vec<Vec<usize>>, GeomError> {
    guard_rays(p)?;
    let r = p.facets().len();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 2..=r {
        for cand in (0..r).combinations(size) {
            if super::rays_form_cone(p, &cand) {
                continue;
            }
            // minimal iff it contains no smaller non-cone subset; every
            // smaller non-cone subset contains a primitive collection
            if found.iter().any(|c| c.iter().all(|i| cand.contains(i))) {
                continue;
            }
            found.push(cand);
        }
    }
    Ok(found)
}

/// One squarefree generator per vertex: the product of the variables of the
/// facets *not* through that vertex.
pub fn irrelevant_generators(p: &LatticePolytope) -> Result<Vec<ExponentVector>, GeomError> {
    guard_rays(p)?;
    let r = p.facets().len();
    let mut gens: Vec<ExponentVector> = Vec::new();
    for v in 0..p.vertices().len() {
        let mut e = vec![1i64; r];
        for i in p.active_set(v) {
            e[i] = 0;
        }
        let g = ExponentVector::new(e);
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    Ok(gens)
}
