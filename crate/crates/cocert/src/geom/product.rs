//! Detection of coordinate-aligned products of full-dimensional simplices,
//! together with the affine normalization data (L, w) and the positive
//! kernel vector v used by the Cox-coordinate certificates.

use super::{GeomError, LatticePolytope};
use crate::linalg;
use crate::poly::{lex_cmp, ExponentVector};
use crate::rational::Integer;
use num::{Signed, Zero};
use thiserror::Error;

/// Why a polytope is not accepted as a product of simplices. Each variant
/// names the violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductRejection {
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("primitive collections do not partition the rays")]
    CollectionsNotPartition,
    #[error("collection {collection:?} spans dimension {actual}, expected {expected}")]
    RaySpanDimension {
        collection: Vec<usize>,
        expected: usize,
        actual: usize,
    },
    #[error("collection subspace dimensions do not sum to the ambient dimension")]
    SubspacesNotComplementary,
    #[error("collection subspaces are not coordinate-aligned blocks")]
    BlocksNotCoordinateAligned,
    #[error("projected factor for collection {collection:?} is not a full-dimensional simplex")]
    FactorNotSimplex { collection: Vec<usize> },
    #[error("vertex count {actual} differs from the product of factor sizes {expected}")]
    VertexCountMismatch { expected: usize, actual: usize },
    #[error("product of the factor simplices does not reconstruct the polytope")]
    ReconstructionMismatch,
    #[error("fan construction failed: {0}")]
    Geometry(String),
}

/// One simplex factor of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexFactor {
    /// facet indices of the ambient polytope forming this primitive collection
    pub rays: Vec<usize>,
    /// ambient coordinates the factor lives on
    pub coords: Vec<usize>,
    /// simplex vertices in factor coordinates, lexicographically sorted
    pub vertices: Vec<ExponentVector>,
    /// `opposite[t]` indexes the vertex off facet `rays[t]`
    pub opposite: Vec<usize>,
    /// dilation of the normalized image simplex
    pub dilation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexProductDecomposition {
    pub factors: Vec<SimplexFactor>,
    /// block-diagonal integer matrix of the normalizing map `p -> L p + w`
    pub l_matrix: Vec<Vec<i64>>,
    pub w_shift: Vec<i64>,
    /// positive integer kernel vector of the ray matrix, one entry per facet
    pub v: Vec<i64>,
}

/// Accepts `P` iff it is a coordinate-aligned product of full-dimensional
/// simplices; the primitive collections must partition the rays, each
/// collection must span a coordinate block of dimension one less than its
/// size, the blocks must fill the ambient space, and the vertex set must
/// reconstruct as the product of the factor simplices.
pub fn detect_simplex_product(
    p: &LatticePolytope,
) -> Result<SimplexProductDecomposition, ProductRejection> {
    if !p.is_full_dimensional() {
        return Err(ProductRejection::NotFullDimensional);
    }
    let n = p.ambient_dim();
    let r = p.facets().len();
    let collections = super::fan::primitive_collections(p)
        .map_err(|e| ProductRejection::Geometry(e.to_string()))?;

    let mut seen = vec![false; r];
    for c in &collections {
        for &i in c {
            if seen[i] {
                return Err(ProductRejection::CollectionsNotPartition);
            }
            seen[i] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(ProductRejection::CollectionsNotPartition);
    }

    let mut dim_sum = 0usize;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for c in &collections {
        let rows: Vec<Vec<Integer>> = c
            .iter()
            .map(|&i| p.facets()[i].normal.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        let rank = linalg::rank(&rows);
        if rank != c.len() - 1 {
            return Err(ProductRejection::RaySpanDimension {
                collection: c.clone(),
                expected: c.len() - 1,
                actual: rank,
            });
        }
        dim_sum += rank;
        let mut coords: Vec<usize> = (0..n)
            .filter(|&l| c.iter().any(|&i| p.facets()[i].normal[l] != 0))
            .collect();
        coords.sort_unstable();
        blocks.push(coords);
    }
    if dim_sum != n {
        return Err(ProductRejection::SubspacesNotComplementary);
    }
    let mut coord_seen = vec![false; n];
    for (c, coords) in collections.iter().zip(&blocks) {
        if coords.len() != c.len() - 1 {
            return Err(ProductRejection::BlocksNotCoordinateAligned);
        }
        for &l in coords {
            if coord_seen[l] {
                return Err(ProductRejection::BlocksNotCoordinateAligned);
            }
            coord_seen[l] = true;
        }
    }
    if !coord_seen.iter().all(|&s| s) {
        return Err(ProductRejection::BlocksNotCoordinateAligned);
    }

    // factor simplices as coordinate projections of the vertex set
    let mut factors: Vec<SimplexFactor> = Vec::new();
    for (c, coords) in collections.iter().zip(&blocks) {
        let mut verts: Vec<ExponentVector> = p
            .vertices()
            .iter()
            .map(|v| ExponentVector::new(coords.iter().map(|&l| v[l]).collect()))
            .collect();
        verts.sort_by(lex_cmp);
        verts.dedup();
        if verts.len() != c.len() {
            return Err(ProductRejection::FactorNotSimplex { collection: c.clone() });
        }
        let diffs: Vec<Vec<Integer>> = verts[1..]
            .iter()
            .map(|v| {
                v.entries()
                    .iter()
                    .zip(verts[0].entries())
                    .map(|(a, b)| Integer::from(*a) - Integer::from(*b))
                    .collect()
            })
            .collect();
        if linalg::rank(&diffs) != c.len() - 1 {
            return Err(ProductRejection::FactorNotSimplex { collection: c.clone() });
        }
        // each facet of the block misses exactly one factor vertex
        let mut opposite = Vec::with_capacity(c.len());
        for &i in c {
            let g: Vec<i64> = coords.iter().map(|&l| p.facets()[i].normal[l]).collect();
            let off = p.facets()[i].offset;
            let mut misses = verts.iter().enumerate().filter(|(_, v)| {
                let mut acc = off as i128;
                for (gl, vl) in g.iter().zip(v.entries()) {
                    acc += (*gl as i128) * (*vl as i128);
                }
                acc != 0
            });
            let first = misses.next();
            match (first, misses.next()) {
                (Some((idx, _)), None) => opposite.push(idx),
                _ => return Err(ProductRejection::FactorNotSimplex { collection: c.clone() }),
            }
        }
        factors.push(SimplexFactor {
            rays: c.clone(),
            coords: coords.clone(),
            vertices: verts,
            opposite,
            dilation: 0,
        });
    }

    let expected: usize = factors.iter().map(|f| f.vertices.len()).product();
    if expected != p.vertices().len() {
        return Err(ProductRejection::VertexCountMismatch {
            expected,
            actual: p.vertices().len(),
        });
    }

    // the product of the factors must give back exactly the vertex set
    let mut assembled: Vec<ExponentVector> = vec![ExponentVector::zeros(n)];
    for f in &factors {
        let mut next = Vec::with_capacity(assembled.len() * f.vertices.len());
        for partial in &assembled {
            for fv in &f.vertices {
                let mut entries = partial.entries().to_vec();
                for (&l, &x) in f.coords.iter().zip(fv.entries()) {
                    entries[l] = x;
                }
                next.push(ExponentVector::new(entries));
            }
        }
        assembled = next;
    }
    assembled.sort_by(lex_cmp);
    let mut p_vertices = p.vertices().to_vec();
    p_vertices.sort_by(lex_cmp);
    if assembled != p_vertices {
        return Err(ProductRejection::ReconstructionMismatch);
    }

    // kernel vector v and the normalizing map, block by block
    let mut v = vec![0i64; r];
    let mut l_matrix = vec![vec![0i64; n]; n];
    let mut w_shift = vec![0i64; n];
    for f in &mut factors {
        let m = f.rays.len();
        let nj = m - 1;
        let base_idx = f.opposite[m - 1];
        let base = f.vertices[base_idx].clone();
        let m_cols: Vec<Vec<Integer>> = (0..nj)
            .map(|t| {
                let a = &f.vertices[f.opposite[t]];
                a.entries()
                    .iter()
                    .zip(base.entries())
                    .map(|(x, b)| Integer::from(*x) - Integer::from(*b))
                    .collect()
            })
            .collect();
        // column-major assembly for the determinant
        let m_matrix: Vec<Vec<Integer>> = (0..nj)
            .map(|row| (0..nj).map(|col| m_cols[col][row].clone()).collect())
            .collect();
        let det = linalg::determinant(&m_matrix).abs();
        if det.is_zero() {
            return Err(ProductRejection::FactorNotSimplex { collection: f.rays.clone() });
        }

        let heights: Vec<Integer> = f
            .rays
            .iter()
            .zip(&f.opposite)
            .map(|(&i, &oi)| {
                let mut acc = Integer::from(p.facets()[i].offset);
                for (&l, x) in f.coords.iter().zip(
                    f.vertices[oi].entries().iter(),
                ) {
                    acc += Integer::from(p.facets()[i].normal[l]) * Integer::from(*x);
                }
                acc
            })
            .collect();
        let mut block_v: Vec<Integer> = Vec::with_capacity(m);
        for h in &heights {
            if !h.is_positive() || !(&det % h).is_zero() {
                return Err(ProductRejection::Geometry(
                    "facet height does not divide the factor volume".into(),
                ));
            }
            block_v.push(&det / h);
        }
        let block_v = linalg::primitive_vector(&block_v);

        // L block rows: v_i * (projected normal of ray i), base maps to 0
        for (t, (&i, vi)) in f.rays.iter().zip(&block_v).take(nj).enumerate() {
            let row_idx = f.coords[t];
            let mut shift_acc: i128 = 0;
            for (u, &l) in f.coords.iter().enumerate() {
                let entry = (to_i64(vi)? as i128) * (p.facets()[i].normal[l] as i128);
                l_matrix[row_idx][f.coords[u]] = i128_to_i64(entry)?;
                shift_acc += entry * (base[u] as i128);
            }
            w_shift[row_idx] = i128_to_i64(-shift_acc)?;
        }
        // dilation of the image simplex: v_i * height_i, equal across rays
        let dil = &block_v[0] * &heights[0];
        for (bv, h) in block_v.iter().zip(&heights) {
            if bv * h != dil {
                return Err(ProductRejection::Geometry(
                    "normalized factor is not a dilated standard simplex".into(),
                ));
            }
        }
        f.dilation = to_i64(&dil)?;
        for (&i, vi) in f.rays.iter().zip(&block_v) {
            v[i] = to_i64(vi)?;
        }
    }

    // kernel property in ambient coordinates
    for facet_row in 0..n {
        let mut acc: i128 = 0;
        for (i, f) in p.facets().iter().enumerate() {
            acc += (f.normal[facet_row] as i128) * (v[i] as i128);
        }
        if acc != 0 {
            return Err(ProductRejection::Geometry("kernel vector check failed".into()));
        }
    }

    Ok(SimplexProductDecomposition { factors, l_matrix, w_shift, v })
}

fn to_i64(x: &Integer) -> Result<i64, ProductRejection> {
    i64::try_from(x).map_err(|_| ProductRejection::Geometry("integer overflow".into()))
}

fn i128_to_i64(x: i128) -> Result<i64, ProductRejection> {
    i64::try_from(x).map_err(|_| ProductRejection::Geometry("integer overflow".into()))
}

/// Recomputes the positive kernel vector from a decomposition and checks it
/// against the polytope: per factor `j` and ray `i`, the entry is the factor
/// volume divided by the lattice height of the opposite vertex, normalized
/// to a primitive positive block.
pub fn kernel_positive_vector(
    p: &LatticePolytope,
    decomposition: &SimplexProductDecomposition,
) -> Result<Vec<i64>, GeomError> {
    let fresh = detect_simplex_product(p)
        .map_err(|e| GeomError::InconsistentDecomposition(e.to_string()))?;
    if fresh != *decomposition {
        return Err(GeomError::InconsistentDecomposition(
            "decomposition does not match the polytope".into(),
        ));
    }
    Ok(fresh.v.clone())
}

/// Saturated integer kernel basis of the ray generator matrix (the raw
/// utility behind the multihomogeneity weights).
pub fn ray_matrix_kernel_basis(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let n = p.ambient_dim();
    let rows: Vec<Vec<Integer>> = (0..n)
        .map(|l| p.facets().iter().map(|f| Integer::from(f.normal[l])).collect())
        .collect();
    linalg::integer_kernel_basis(&rows)
        .into_iter()
        .map(|v| v.iter().map(|x| i64::try_from(x).expect("small kernel entries")).collect())
        .collect()
}
