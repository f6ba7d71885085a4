//! Exact lattice-polytope combinatorics: hulls, faces, normal-fan data,
//! simplex-product detection and rational scaling.
//!
//! Hulls are computed by exhaustive candidate-hyperplane enumeration inside
//! the affine hull of the input. That is quadratic-ish and entirely exact,
//! which is the right trade at the instance sizes this crate targets
//! (ambient dimension <= 4, point counts in the dozens).

mod fan;
mod product;

pub use fan::{irrelevant_generators, primitive_collections, FanData};
pub use product::{
    detect_simplex_product, kernel_positive_vector, ray_matrix_kernel_basis, ProductRejection,
    SimplexFactor, SimplexProductDecomposition,
};

use crate::linalg;
use crate::poly::{lex_cmp, ExponentVector, SparsePoly};
use crate::rational::{Integer, Rational};
use itertools::Itertools;
use num::{One, Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

/// Enumeration guard for the exhaustive hull; generous multiples of the
/// documented design envelope (dim <= 4, <= 64 points).
const MAX_HULL_POINTS: usize = 512;
const MAX_HULL_DIM: usize = 6;
const MAX_RAYS_FOR_FAN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyInput,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation requires a full-dimensional polytope (dim {0} in ambient {1})")]
    NotFullDimensional(usize, usize),
    #[error("Minkowski power requires k >= 1")]
    KZero,
    #[error("scaling factor must be strictly positive")]
    NonpositiveScale,
    #[error("instance too large for the exhaustive hull ({0} points, dim {1})")]
    HullTooLarge(usize, usize),
    #[error("too many facets for fan operations ({0})")]
    TooManyRays(usize),
    #[error("exponent arithmetic overflow")]
    Overflow,
    #[error("simplex-product decomposition inconsistent with polytope: {0}")]
    InconsistentDecomposition(String),
    #[error("point not in the affine-hull lattice")]
    NotInLattice,
}

/// Deduplicated finite set of lattice points, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<ExponentVector>,
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = ExponentVector>) -> Result<Self, GeomError> {
        let mut pts: Vec<ExponentVector> = Vec::new();
        for p in points {
            if p.len() != dim {
                return Err(GeomError::DimensionMismatch(p.len(), dim));
            }
            pts.push(p);
        }
        pts.sort_by(lex_cmp);
        pts.dedup();
        Ok(PointSet { dim, points: pts })
    }

    pub fn from_support(f: &SparsePoly) -> Self {
        PointSet::new(f.dim(), f.support().cloned()).expect("support points have the ambient dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.points.binary_search_by(|q| lex_cmp(q, p)).is_ok()
    }

    pub fn as_hash_set(&self) -> HashSet<ExponentVector> {
        self.points.iter().cloned().collect()
    }

    /// Minkowski sum with another set.
    pub fn minkowski_sum(&self, other: &PointSet) -> Result<PointSet, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut acc: HashSet<ExponentVector> = HashSet::new();
        for a in &self.points {
            for b in &other.points {
                acc.insert(a.checked_add(b).map_err(|_| GeomError::Overflow)?);
            }
        }
        PointSet::new(self.dim, acc)
    }

    /// k-fold Minkowski sum `A + ... + A`, computed iteratively.
    pub fn minkowski_power(&self, k: usize) -> Result<PointSet, GeomError> {
        if k == 0 {
            return Err(GeomError::KZero);
        }
        if self.is_empty() {
            return Err(GeomError::EmptyInput);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.minkowski_sum(self)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Primitive inner normal in ambient coordinates.
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, p: &ExponentVector) -> i128 {
        let mut acc = self.offset as i128;
        for (n, e) in self.normal.iter().zip(p.entries()) {
            acc += (*n as i128) * (*e as i128);
        }
        acc
    }
}

/// Integer equation `normal . x = offset` valid on a polytope's affine hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullEquation {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Lattice polytope with an exact facet description inside its affine hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    poly_dim: usize,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
    /// incidence[v][i] says whether vertex v lies on facet i
    incidence: Vec<Vec<bool>>,
    equations: Vec<HullEquation>,
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the polytope itself (may be less than ambient).
    pub fn dim(&self) -> usize {
        self.poly_dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    /// Affine-hull equations (empty for full-dimensional polytopes).
    pub fn equations(&self) -> &[HullEquation] {
        &self.equations
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.poly_dim == self.ambient_dim
    }

    /// Facet indices through a vertex, i.e. the vertex's maximal normal cone.
    pub fn active_set(&self, vertex_idx: usize) -> Vec<usize> {
        self.incidence[vertex_idx]
            .iter()
            .enumerate()
            .filter_map(|(i, &on)| on.then_some(i))
            .collect()
    }

    /// Membership test for arbitrary lattice points.
    pub fn contains_lattice_point(&self, p: &ExponentVector) -> bool {
        p.len() == self.ambient_dim
            && self.equations.iter().all(|e| {
                let mut acc = -(e.offset as i128);
                for (n, x) in e.normal.iter().zip(p.entries()) {
                    acc += (*n as i128) * (*x as i128);
                }
                acc == 0
            })
            && self.facets.iter().all(|f| f.value(p) >= 0)
    }

    /// Constructs a polytope from externally supplied vertex and facet data,
    /// validating tightness and recomputing incidence. This is how fixtures
    /// pin the paper's facet ordering instead of the canonical one.
    pub fn from_parts(
        ambient_dim: usize,
        vertices: Vec<ExponentVector>,
        facets: Vec<Facet>,
    ) -> Result<Self, GeomError> {
        let vertex_set = PointSet::new(ambient_dim, vertices.clone())?;
        let hull = convex_hull(&vertex_set)?;
        if hull.vertices.len() != vertices.len() {
            return Err(GeomError::InconsistentDecomposition(
                "supplied vertex list contains non-extreme points".into(),
            ));
        }
        // the supplied facet list must cut out the same polytope
        if facets.len() != hull.facets.len() {
            return Err(GeomError::InconsistentDecomposition(
                "supplied facet list has the wrong cardinality".into(),
            ));
        }
        let mut canon: Vec<Facet> = facets.clone();
        canon.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
        if canon != hull.facets {
            return Err(GeomError::InconsistentDecomposition(
                "supplied facets do not match the hull".into(),
            ));
        }
        let incidence = vertices
            .iter()
            .map(|v| facets.iter().map(|f| f.value(v) == 0).collect())
            .collect();
        Ok(LatticePolytope {
            ambient_dim,
            poly_dim: hull.poly_dim,
            vertices,
            facets,
            incidence,
            equations: hull.equations,
        })
    }
}

/// Exact convex hull of a lattice point set.
pub fn convex_hull(a: &PointSet) -> Result<LatticePolytope, GeomError> {
    if a.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let n = a.dim();
    let pts = a.points();
    let base = &pts[0];

    // lattice basis of the affine hull
    let diffs: Vec<Vec<Integer>> = pts[1..]
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .zip(base.entries())
                .map(|(x, b)| Integer::from(*x) - Integer::from(*b))
                .collect()
        })
        .collect();
    let (basis, pivots) = linalg::row_echelon(diffs);
    let d = basis.len();
    if pts.len() > MAX_HULL_POINTS || d > MAX_HULL_DIM {
        return Err(GeomError::HullTooLarge(pts.len(), d));
    }

    // affine-hull equations: saturated kernel of the direction space
    let equations: Vec<HullEquation> = if d == n {
        Vec::new()
    } else {
        let dir_matrix: Vec<Vec<Integer>> = basis.clone();
        linalg::integer_kernel_basis(&dir_matrix)
            .into_iter()
            .map(|normal| {
                let off: Integer = normal
                    .iter()
                    .zip(base.entries())
                    .map(|(ni, bi)| ni * Integer::from(*bi))
                    .sum();
                Ok(HullEquation {
                    normal: normal
                        .iter()
                        .map(|x| i64::try_from(x).map_err(|_| GeomError::Overflow))
                        .collect::<Result<_, _>>()?,
                    offset: i64::try_from(&off).map_err(|_| GeomError::Overflow)?,
                })
            })
            .collect::<Result<_, _>>()?
    };

    if d == 0 {
        return Ok(LatticePolytope {
            ambient_dim: n,
            poly_dim: 0,
            vertices: vec![base.clone()],
            facets: Vec::new(),
            incidence: vec![Vec::new()],
            equations,
        });
    }

    // project every point to integer coordinates in the hull basis
    let proj: Vec<Vec<Integer>> = pts
        .iter()
        .map(|p| {
            let diff: Vec<Integer> = p
                .entries()
                .iter()
                .zip(base.entries())
                .map(|(x, b)| Integer::from(*x) - Integer::from(*b))
                .collect();
            linalg::solve_in_echelon(&basis, &pivots, &diff).ok_or(GeomError::NotInLattice)
        })
        .collect::<Result<_, _>>()?;

    // candidate facet hyperplanes from all d-subsets spanning dimension d-1
    let mut facet_keys: HashSet<(Vec<Integer>, Integer)> = HashSet::new();
    for subset in (0..pts.len()).combinations(d) {
        let rows: Vec<Vec<Integer>> = subset[1..]
            .iter()
            .map(|&i| {
                proj[i]
                    .iter()
                    .zip(&proj[subset[0]])
                    .map(|(x, y)| x - y)
                    .collect()
            })
            .collect();
        if linalg::rank(&rows) != d - 1 {
            continue;
        }
        let kernel = linalg::integer_kernel_basis(&rows);
        debug_assert_eq!(kernel.len(), 1);
        let mut normal = kernel.into_iter().next().unwrap();
        let mut offset: Integer = -normal
            .iter()
            .zip(&proj[subset[0]])
            .map(|(g, q)| g * q)
            .sum::<Integer>();
        let mut pos = false;
        let mut neg = false;
        for q in &proj {
            let v: Integer = normal.iter().zip(q).map(|(g, x)| g * x).sum::<Integer>() + &offset;
            if v.is_positive() {
                pos = true;
            } else if v.is_negative() {
                neg = true;
            }
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        if neg {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        facet_keys.insert((normal, offset));
    }

    // lift projected facet normals to primitive ambient normals
    let gram: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let dot: Integer = basis[i].iter().zip(&basis[j]).map(|(x, y)| x * y).sum();
                    Rational::from_integer(dot)
                })
                .collect()
        })
        .collect();

    let mut facets: Vec<Facet> = Vec::with_capacity(facet_keys.len());
    for (g, _off) in facet_keys {
        let rhs: Vec<Rational> = g.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let x = linalg::solve_rational_square(&gram, &rhs)
            .expect("hull basis Gram matrix is invertible");
        // ambient normal direction sum x_i * basis_i, cleared to a primitive
        // integer vector; the scaling is positive so the inequality side is
        // preserved
        let mut denom = Integer::one();
        for xi in &x {
            denom = num::integer::lcm(denom, xi.denom().clone());
        }
        let mut ambient: Vec<Integer> = vec![Integer::zero(); n];
        for (xi, brow) in x.iter().zip(&basis) {
            let c = xi.numer() * (&denom / xi.denom());
            for (amb, bi) in ambient.iter_mut().zip(brow) {
                *amb += &c * bi;
            }
        }
        let ambient = linalg::primitive_vector(&ambient);
        // the lifted normal is a positive multiple of the projected one on
        // the hull, so the facet points are exactly the minimizers
        let values: Vec<Integer> = pts
            .iter()
            .map(|p| {
                ambient
                    .iter()
                    .zip(p.entries())
                    .map(|(ni, xi)| ni * Integer::from(*xi))
                    .sum()
            })
            .collect();
        let min = values.iter().min().unwrap().clone();
        let normal_i64: Vec<i64> = ambient
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| GeomError::Overflow))
            .collect::<Result<_, _>>()?;
        facets.push(Facet {
            normal: normal_i64,
            offset: i64::try_from(&-min).map_err(|_| GeomError::Overflow)?,
        });
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
    facets.dedup();

    // vertices: points whose active facet normals span the hull directions
    let mut vertices: Vec<ExponentVector> = Vec::new();
    for p in pts.iter() {
        let active: Vec<Vec<Integer>> = facets
            .iter()
            .filter(|f| f.value(p) == 0)
            .map(|f| f.normal.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        if linalg::rank(&active) == d {
            vertices.push(p.clone());
        }
    }
    vertices.sort_by(lex_cmp);

    let incidence: Vec<Vec<bool>> = vertices
        .iter()
        .map(|v| facets.iter().map(|f| f.value(v) == 0).collect())
        .collect();

    debug_assert!(facets.iter().all(|f| {
        let tight = vertices.iter().filter(|v| f.value(v) == 0).count();
        tight >= d
    }));

    Ok(LatticePolytope {
        ambient_dim: n,
        poly_dim: d,
        vertices,
        facets,
        incidence,
        equations,
    })
}

/// Newton polytope `conv(supp(f))`.
pub fn newton_polytope(f: &SparsePoly) -> Result<LatticePolytope, GeomError> {
    if f.is_zero() {
        return Err(GeomError::EmptyInput);
    }
    convex_hull(&PointSet::from_support(f))
}

/// Does `P` equal `conv(A)` as a set?
pub fn hull_equals(p: &LatticePolytope, a: &PointSet) -> Result<bool, GeomError> {
    if p.ambient_dim() != a.dim() {
        return Err(GeomError::DimensionMismatch(p.ambient_dim(), a.dim()));
    }
    let hull = convex_hull(a)?;
    Ok(same_vertex_set(hull.vertices(), p.vertices()))
}

/// Order-insensitive vertex set comparison (fixture polytopes may carry a
/// non-canonical vertex order).
pub fn same_vertex_set(a: &[ExponentVector], b: &[ExponentVector]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(lex_cmp);
    b.sort_by(lex_cmp);
    a == b
}

/// A face described by its active facet set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub active: Vec<usize>,
}

impl Face {
    /// Decides membership of a lattice point in the face.
    pub fn contains(&self, p: &LatticePolytope, point: &ExponentVector) -> bool {
        if !p.contains_lattice_point(point) {
            return false;
        }
        self.active.iter().all(|&i| p.facets()[i].value(point) == 0)
    }
}

/// Active constraint set of the face of `P` minimizing the weight `w`.
pub fn face_of(p: &LatticePolytope, w: &[Rational]) -> Result<Face, GeomError> {
    if w.len() != p.ambient_dim() {
        return Err(GeomError::DimensionMismatch(w.len(), p.ambient_dim()));
    }
    let values: Vec<Rational> = p.vertices().iter().map(|v| v.weight(w)).collect();
    let min = values.iter().min().cloned().ok_or(GeomError::EmptyInput)?;
    let mut active: Option<Vec<usize>> = None;
    for (idx, val) in values.iter().enumerate() {
        if *val == min {
            let set = p.active_set(idx);
            active = Some(match active {
                None => set,
                Some(prev) => prev.into_iter().filter(|i| set.contains(i)).collect(),
            });
        }
    }
    Ok(Face { active: active.unwrap_or_default() })
}

/// All nonempty faces, each as its full active facet set, computed by closing
/// the vertex incidence sets under intersection. The empty active set (the
/// polytope itself) is always included.
pub fn enumerate_faces(p: &LatticePolytope) -> Vec<Face> {
    use std::collections::BTreeSet;
    let vertex_sets: Vec<BTreeSet<usize>> = (0..p.vertices().len())
        .map(|v| p.active_set(v).into_iter().collect())
        .collect();
    let mut closed: BTreeSet<BTreeSet<usize>> = vertex_sets.iter().cloned().collect();
    closed.insert(BTreeSet::new());
    loop {
        let snapshot: Vec<BTreeSet<usize>> = closed.iter().cloned().collect();
        let before = closed.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                closed.insert(snapshot[i].intersection(&snapshot[j]).copied().collect());
            }
        }
        if closed.len() == before {
            break;
        }
    }
    let mut faces: Vec<Face> = closed
        .into_iter()
        .map(|set| Face { active: set.into_iter().collect() })
        .collect();
    faces.sort_by(|a, b| a.active.len().cmp(&b.active.len()).then(a.active.cmp(&b.active)));
    faces
}

/// True iff the rays indexed by `I` span a cone of the normal fan, i.e. some
/// vertex lies on all the corresponding facets.
pub fn rays_form_cone(p: &LatticePolytope, rays: &[usize]) -> bool {
    (0..p.vertices().len()).any(|v| rays.iter().all(|&i| p.incidence()[v][i]))
}

/// Polytope with rational vertices, stored as a lattice polytope scaled by
/// `1/denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    pub denom: Integer,
    pub lattice: LatticePolytope,
}

impl RationalPolytope {
    pub fn from_lattice(p: LatticePolytope) -> Self {
        RationalPolytope { denom: Integer::one(), lattice: p }
    }

    /// Hull of a finite set of rational points.
    pub fn from_rational_points(dim: usize, pts: &[Vec<Rational>]) -> Result<Self, GeomError> {
        if pts.is_empty() {
            return Err(GeomError::EmptyInput);
        }
        let mut denom = Integer::one();
        for p in pts {
            if p.len() != dim {
                return Err(GeomError::DimensionMismatch(p.len(), dim));
            }
            for c in p {
                denom = num::integer::lcm(denom, c.denom().clone());
            }
        }
        let scaled: Vec<ExponentVector> = pts
            .iter()
            .map(|p| {
                let entries: Vec<i64> = p
                    .iter()
                    .map(|c| {
                        let v = c.numer() * (&denom / c.denom());
                        i64::try_from(&v).map_err(|_| GeomError::Overflow)
                    })
                    .collect::<Result<_, _>>()?;
                Ok(ExponentVector::new(entries))
            })
            .collect::<Result<_, GeomError>>()?;
        let hull = convex_hull(&PointSet::new(dim, scaled)?)?;
        Ok(RationalPolytope { denom, lattice: hull })
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let d = Rational::from_integer(self.denom.clone());
        self.lattice
            .vertices()
            .iter()
            .map(|v| {
                v.entries()
                    .iter()
                    .map(|&x| Rational::from_integer(Integer::from(x)) / &d)
                    .collect()
            })
            .collect()
    }
}

/// Scales a lattice polytope by a strictly positive rational. Vertices scale
/// pointwise; the facet description keeps the normals and scales offsets.
pub fn scale_polytope(q: &LatticePolytope, lambda: &Rational) -> Result<RationalPolytope, GeomError> {
    if !lambda.is_positive() {
        return Err(GeomError::NonpositiveScale);
    }
    let pts: Vec<Vec<Rational>> = q
        .vertices()
        .iter()
        .map(|v| {
            v.entries()
                .iter()
                .map(|&x| lambda * Rational::from_integer(Integer::from(x)))
                .collect()
        })
        .collect();
    RationalPolytope::from_rational_points(q.ambient_dim(), &pts)
}

/// True iff `P` lies in the relative interior of `Q`: every vertex of `P`
/// satisfies every facet inequality of `Q` strictly and lies exactly on
/// `Q`'s affine hull.
pub fn relint_contains(p: &RationalPolytope, q: &RationalPolytope) -> Result<bool, GeomError> {
    if p.lattice.ambient_dim() != q.lattice.ambient_dim() {
        return Err(GeomError::DimensionMismatch(
            p.lattice.ambient_dim(),
            q.lattice.ambient_dim(),
        ));
    }
    let qd = Rational::from_integer(q.denom.clone());
    for vtx in p.vertices() {
        for eq in q.lattice.equations() {
            let mut acc = Rational::zero();
            for (n, x) in eq.normal.iter().zip(&vtx) {
                acc += Rational::from_integer(Integer::from(*n)) * x;
            }
            if acc != Rational::from_integer(Integer::from(eq.offset)) / &qd {
                return Ok(false);
            }
        }
        for f in q.lattice.facets() {
            let mut acc = Rational::from_integer(Integer::from(f.offset)) / &qd;
            for (n, x) in f.normal.iter().zip(&vtx) {
                acc += Rational::from_integer(Integer::from(*n)) * x;
            }
            if !acc.is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lattice projection of a point set onto its affine hull: returns the
/// projected full-dimensional set together with the base point and basis
/// needed to lift back. Callers use this to reduce non-full-dimensional
/// inputs before fan operations.
pub fn project_to_affine_hull(a: &PointSet) -> Result<(PointSet, ExponentVector, Vec<Vec<i64>>), GeomError> {
    if a.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let base = a.points()[0].clone();
    let diffs: Vec<Vec<Integer>> = a.points()[1..]
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .zip(base.entries())
                .map(|(x, b)| Integer::from(*x) - Integer::from(*b))
                .collect()
        })
        .collect();
    let (basis, pivots) = linalg::row_echelon(diffs);
    let proj: Vec<ExponentVector> = a
        .points()
        .iter()
        .map(|p| {
            let diff: Vec<Integer> = p
                .entries()
                .iter()
                .zip(base.entries())
                .map(|(x, b)| Integer::from(*x) - Integer::from(*b))
                .collect();
            let q = linalg::solve_in_echelon(&basis, &pivots, &diff).ok_or(GeomError::NotInLattice)?;
            Ok(ExponentVector::new(
                q.iter()
                    .map(|x| i64::try_from(x).map_err(|_| GeomError::Overflow))
                    .collect::<Result<_, _>>()?,
            ))
        })
        .collect::<Result<_, GeomError>>()?;
    let basis_i64: Vec<Vec<i64>> = basis
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from(x).map_err(|_| GeomError::Overflow))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok((PointSet::new(basis.len(), proj)?, base, basis_i64))
}

pub(crate) fn guard_rays(p: &LatticePolytope) -> Result<(), GeomError> {
    if !p.is_full_dimensional() {
        return Err(GeomError::NotFullDimensional(p.dim(), p.ambient_dim()));
    }
    if p.facets().len() > MAX_RAYS_FOR_FAN {
        return Err(GeomError::TooManyRays(p.facets().len()));
    }
    Ok(())
}
