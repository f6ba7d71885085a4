//! Cox-coordinate certificates: homogenization into one variable per facet
//! normal, truncation compatibility checks, multihomogeneity reports, and
//! the primitive-collection / irrelevant-ideal power searches.

use crate::geom::{
    self, detect_simplex_product, FanData, GeomError, LatticePolytope, ProductRejection,
};
use crate::poly::{ExponentVector, PolyError, SparsePoly};
use crate::polya::{
    self, positive_rational_samples, CertKind, CertStatus, Certificate, CertifyError, SearchConfig,
    SearchMode, StepReport,
};
use crate::rational::Rational;
use num::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error("Cox constructions require a full-dimensional polytope")]
    NotFullDimensional,
    #[error("polytope is not a product of simplices: {0}")]
    SimplexProductRequired(ProductRejection),
    #[error("polynomial support is not contained in the polytope")]
    SupportOutsidePolytope,
    #[error("homogenization collided two exponents; the facet matrix is rank-deficient")]
    UnexpectedCollision,
    #[error("kernel vector must be strictly positive and lie in ker(F)")]
    InvalidKernelVector,
    #[error("active set {0:?} is not the active set of a nonempty face")]
    NotAFace(Vec<usize>),
    #[error("weight {weight:?} gives non-constant degree ({first} vs {second})")]
    NonConstantDegree { weight: Vec<i64>, first: i128, second: i128 },
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Everything the Cox-side certifiers need about a full-dimensional
/// polytope: its fan, the simplex-product decomposition when one exists, and
/// the positive kernel vector for the diagonal substitution.
#[derive(Debug, Clone)]
pub struct CoxContext {
    pub polytope: LatticePolytope,
    pub fan: FanData,
    pub decomposition: Option<geom::SimplexProductDecomposition>,
    /// why the polytope was not accepted as a product, when it was not
    pub rejection: Option<ProductRejection>,
    /// positive kernel vector of the ray matrix; from the decomposition or
    /// from the expert override
    pub v: Option<Vec<i64>>,
    expert_v: bool,
}

impl CoxContext {
    pub fn new(polytope: LatticePolytope) -> Result<Self, CoxError> {
        if !polytope.is_full_dimensional() {
            return Err(CoxError::NotFullDimensional);
        }
        let fan = FanData::build(&polytope)?;
        let (decomposition, rejection, v) = match detect_simplex_product(&polytope) {
            Ok(d) => {
                let v = d.v.clone();
                (Some(d), None, Some(v))
            }
            Err(r) => (None, Some(r), None),
        };
        Ok(CoxContext { polytope, fan, decomposition, rejection, v, expert_v: false })
    }

    /// Expert path: accept an arbitrary positive integer kernel vector and
    /// run the searches even when the polytope is not a simplex product.
    /// This exists to reproduce the documented counterexample behavior; a
    /// Certified outcome is still sound, but the theory no longer promises
    /// one exists.
    pub fn with_expert_kernel_vector(polytope: LatticePolytope, v: Vec<i64>) -> Result<Self, CoxError> {
        let mut ctx = CoxContext::new(polytope)?;
        if v.len() != ctx.fan.ray_count() || v.iter().any(|&x| x <= 0) {
            return Err(CoxError::InvalidKernelVector);
        }
        for row in 0..ctx.polytope.ambient_dim() {
            let mut acc: i128 = 0;
            for (i, f) in ctx.polytope.facets().iter().enumerate() {
                acc += (f.normal[row] as i128) * (v[i] as i128);
            }
            if acc != 0 {
                return Err(CoxError::InvalidKernelVector);
            }
        }
        ctx.v = Some(v);
        ctx.expert_v = true;
        Ok(ctx)
    }

    pub fn ray_count(&self) -> usize {
        self.fan.ray_count()
    }

    /// Offsets `b` of the facet description, in facet order.
    pub fn offsets(&self) -> Vec<i64> {
        self.polytope.facets().iter().map(|f| f.offset).collect()
    }
}

/// Cox homogenization `f_cox = sum c_a x^(F^T a + b)` in one variable per
/// facet. The exponent map is injective on the polytope, so the term count
/// is preserved.
pub fn cox_homogenize(f: &SparsePoly, ctx: &CoxContext) -> Result<SparsePoly, CoxError> {
    if !f.support().all(|a| ctx.polytope.contains_lattice_point(a)) {
        return Err(CoxError::SupportOutsidePolytope);
    }
    let rows: Vec<Vec<i64>> = ctx.polytope.facets().iter().map(|fc| fc.normal.clone()).collect();
    let shift = ExponentVector::new(ctx.offsets());
    let image = f.substitute_monomial_map(&rows, &shift)?;
    if image.num_terms() != f.num_terms() {
        return Err(CoxError::UnexpectedCollision);
    }
    Ok(image)
}

/// `f_cox(x^v)`: the homogenization followed by the diagonal substitution
/// `x_i -> x_i^{v_i}`, computed in one exponent map `a -> diag(v)(F^T a + b)`.
pub fn cox_homogenize_diagonal(f: &SparsePoly, ctx: &CoxContext, v: &[i64]) -> Result<SparsePoly, CoxError> {
    if !f.support().all(|a| ctx.polytope.contains_lattice_point(a)) {
        return Err(CoxError::SupportOutsidePolytope);
    }
    if v.len() != ctx.ray_count() {
        return Err(CoxError::InvalidKernelVector);
    }
    let rows: Vec<Vec<i64>> = ctx
        .polytope
        .facets()
        .iter()
        .zip(v)
        .map(|(fc, &vi)| fc.normal.iter().map(|&x| x * vi).collect())
        .collect();
    let shift = ExponentVector::new(
        ctx.polytope
            .facets()
            .iter()
            .zip(v)
            .map(|(fc, &vi)| fc.offset * vi)
            .collect(),
    );
    let image = f.substitute_monomial_map(&rows, &shift)?;
    if image.num_terms() != f.num_terms() {
        return Err(CoxError::UnexpectedCollision);
    }
    Ok(image)
}

/// Checks the truncation identity `f_cox(x_I) = x^b f^{G_I}(phi_{F^T}(x))`
/// at deterministic positive rational sample points. `I` must be the active
/// set of a nonempty face.
pub fn cox_truncation_check(
    f: &SparsePoly,
    ctx: &CoxContext,
    active: &[usize],
    samples: usize,
    seed: u64,
) -> Result<bool, CoxError> {
    let faces = geom::enumerate_faces(&ctx.polytope);
    if !faces.iter().any(|fc| fc.active == active) {
        return Err(CoxError::NotAFace(active.to_vec()));
    }
    let f_cox = cox_homogenize(f, ctx)?;
    let facets = ctx.polytope.facets();
    let face_truncation = f.truncate_where(|a| active.iter().all(|&i| facets[i].value(a) == 0));

    let r = ctx.ray_count();
    let mut points = vec![vec![Rational::one(); r]];
    points.extend(positive_rational_samples(seed, samples.saturating_sub(1), r));
    for x in &points {
        // left side: set the I coordinates to zero
        let lhs = f_cox
            .truncate_where(|e| active.iter().all(|&i| e[i] == 0))
            .evaluate(x)?;
        // right side: x^b * truncation evaluated through the monomial map
        let t: Vec<Rational> = (0..ctx.polytope.ambient_dim())
            .map(|l| {
                let mut acc = Rational::one();
                for (i, fc) in facets.iter().enumerate() {
                    let e = fc.normal[l];
                    if e != 0 {
                        acc *= x[i].pow(e as i32);
                    }
                }
                acc
            })
            .collect();
        let mut rhs = face_truncation.evaluate(&t)?;
        for (i, fc) in facets.iter().enumerate() {
            if fc.offset != 0 {
                rhs *= x[i].pow(fc.offset as i32);
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree of `p` under an integer weight vector, if constant across terms.
pub fn weight_degree(p: &SparsePoly, weight: &[i64]) -> Result<i128, (i128, i128)> {
    let mut terms = p.terms();
    let dot = |e: &ExponentVector| -> i128 {
        e.entries()
            .iter()
            .zip(weight)
            .map(|(&a, &w)| (a as i128) * (w as i128))
            .sum()
    };
    let Some((first, _)) = terms.next() else { return Ok(0) };
    let d0 = dot(first);
    for (e, _) in terms {
        let d = dot(e);
        if d != d0 {
            return Err((d0, d));
        }
    }
    Ok(d0)
}

/// For each integer basis vector of `ker(F)`, asserts the homogenization has
/// constant degree and that it equals `v . b`; a non-constant degree signals
/// a homogenization bug.
pub fn multihomogeneity_degrees(
    f_cox: &SparsePoly,
    ctx: &CoxContext,
) -> Result<Vec<(Vec<i64>, i128)>, CoxError> {
    let basis = geom::ray_matrix_kernel_basis(&ctx.polytope);
    let b = ctx.offsets();
    let mut out = Vec::with_capacity(basis.len());
    for w in basis {
        let degree = weight_degree(f_cox, &w)
            .map_err(|(first, second)| CoxError::NonConstantDegree { weight: w.clone(), first, second })?;
        let vb: i128 = w.iter().zip(&b).map(|(&x, &y)| (x as i128) * (y as i128)).sum();
        if degree != vb {
            return Err(CoxError::NonConstantDegree { weight: w.clone(), first: degree, second: vb });
        }
        out.push((w, degree));
    }
    Ok(out)
}

/// True iff every monomial of `f_cox` is divisible by some irrelevant-ideal
/// generator, which is what vanishing on the irrelevant locus requires.
pub fn irrelevant_membership_check(f_cox: &SparsePoly, ctx: &CoxContext) -> bool {
    f_cox.support().all(|e| {
        ctx.fan.irrelevant_generators.iter().any(|g| {
            g.entries()
                .iter()
                .zip(e.entries())
                .all(|(&gi, &ei)| gi == 0 || ei >= 1)
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxVariant {
    /// one multiplier per primitive collection, mixed exponents
    Primitive,
    /// single multiplier: the sum of the irrelevant-ideal generators
    Irrelevant,
}

/// Sum `sum_{i in C_j} x_i` for each primitive collection.
pub fn primitive_multipliers(ctx: &CoxContext) -> Result<Vec<SparsePoly>, CoxError> {
    let r = ctx.ray_count();
    ctx.fan
        .primitive_collections
        .iter()
        .map(|c| {
            SparsePoly::support_sum(r, c.iter().map(|&i| ExponentVector::unit(r, i)))
                .map_err(CoxError::from)
        })
        .collect()
}

/// Sum of the squarefree irrelevant-ideal generators.
pub fn irrelevant_multiplier(ctx: &CoxContext) -> Result<SparsePoly, CoxError> {
    SparsePoly::support_sum(ctx.ray_count(), ctx.fan.irrelevant_generators.iter().cloned())
        .map_err(CoxError::from)
}

/// Cox-coordinate certification. Refuses polytopes that are not simplex
/// products unless the context carries an expert kernel vector; checks the
/// Newton guard `Newt(f) = P`; then searches exponents for the chosen
/// multiplier family against `h = f_cox(x^v)`.
pub fn cox_certify(
    f: &SparsePoly,
    ctx: &CoxContext,
    variant: CoxVariant,
    cfg: &SearchConfig,
) -> Result<Certificate, CoxError> {
    cox_certify_traced(f, ctx, variant, cfg, |_, _| {})
}

pub fn cox_certify_traced(
    f: &SparsePoly,
    ctx: &CoxContext,
    variant: CoxVariant,
    cfg: &SearchConfig,
    mut on_step: impl FnMut(&StepReport, &SparsePoly),
) -> Result<Certificate, CoxError> {
    if f.is_zero() {
        return Err(CoxError::Certify(CertifyError::ZeroPolynomial));
    }
    let Some(v) = ctx.v.clone() else {
        let rejection = ctx
            .rejection
            .clone()
            .unwrap_or(ProductRejection::ReconstructionMismatch);
        return Err(CoxError::SimplexProductRequired(rejection));
    };

    let kind = match variant {
        CoxVariant::Primitive => CertKind::CoxPrimitive,
        CoxVariant::Irrelevant => CertKind::CoxIrrelevant,
    };

    // Newton guard as in the theorems: Newt(f) must equal the polytope.
    let newt = geom::newton_polytope(f)?;
    if !geom::same_vertex_set(newt.vertices(), ctx.polytope.vertices()) {
        return Ok(Certificate {
            status: CertStatus::RefutedNewton,
            kind,
            mode: SearchMode::Nonneg,
            multiplier: SparsePoly::zero(ctx.ray_count()),
            exponents: vec![0],
            k: 1,
            product_support_size: 0,
            offenders: Vec::new(),
            witness: None,
            product: None,
        });
    }

    let h = cox_homogenize_diagonal(f, ctx, &v)?;

    match variant {
        CoxVariant::Irrelevant => {
            let multiplier = irrelevant_multiplier(ctx)?;
            let mut search_cfg = cfg.clone();
            search_cfg.mode = SearchMode::Nonneg;
            search_cfg.k = 1;
            search_cfg.support_a = None;
            let mut cert =
                polya::certify_with_multiplier_traced(&h, &multiplier, &search_cfg, &mut on_step)?;
            cert.kind = kind;
            Ok(cert)
        }
        CoxVariant::Primitive => {
            let multipliers = primitive_multipliers(ctx)?;
            let diagonal = multipliers
                .iter()
                .try_fold(SparsePoly::one(ctx.ray_count()), |acc, m| acc.mul(m))?;
            let mut search_cfg = cfg.clone();
            search_cfg.mode = SearchMode::Nonneg;
            search_cfg.k = 1;
            search_cfg.support_a = None;
            let diag_cert =
                polya::certify_with_multiplier_traced(&h, &diagonal, &search_cfg, &mut on_step)?;
            if diag_cert.status != CertStatus::Certified {
                let n = diag_cert.exponents[0];
                let mut cert = diag_cert;
                cert.kind = kind;
                cert.multiplier = diagonal;
                cert.exponents = vec![n; multipliers.len()];
                return Ok(cert);
            }
            // axis refinement: shrink each exponent while the product stays
            // nonnegative; success is monotone upward in every coordinate, so
            // greedy per-axis descent is exact
            let n_star = diag_cert.exponents[0];
            let mut exponents = vec![n_star; multipliers.len()];
            for j in 0..multipliers.len() {
                while exponents[j] > 0 {
                    let mut trial = exponents.clone();
                    trial[j] -= 1;
                    let product = product_at(&h, &multipliers, &trial)?;
                    if product.coefficient_report(None).all_nonnegative {
                        exponents = trial;
                    } else {
                        break;
                    }
                }
            }
            let product = product_at(&h, &multipliers, &exponents)?;
            debug_assert!(product.coefficient_report(None).all_nonnegative);
            let multiplier = multipliers
                .iter()
                .zip(&exponents)
                .try_fold(SparsePoly::one(ctx.ray_count()), |acc, (m, &e)| {
                    acc.mul(&m.pow(e)?)
                })?;
            Ok(Certificate {
                status: CertStatus::Certified,
                kind,
                mode: SearchMode::Nonneg,
                multiplier,
                exponents,
                k: 1,
                product_support_size: product.num_terms(),
                offenders: Vec::new(),
                witness: None,
                product: cfg.emit_product.then_some(product),
            })
        }
    }
}

fn product_at(
    h: &SparsePoly,
    multipliers: &[SparsePoly],
    exponents: &[usize],
) -> Result<SparsePoly, PolyError> {
    let mut acc = h.clone();
    for (m, &e) in multipliers.iter().zip(exponents) {
        if e > 0 {
            acc = acc.mul(&m.pow(e)?)?;
        }
    }
    Ok(acc)
}

/// Re-derives `h = f_cox(x^v)` and the multiplier product from scratch and
/// re-checks a Certified Cox certificate, including the Newton guard.
pub fn verify_cox_certificate(
    f: &SparsePoly,
    ctx: &CoxContext,
    cert: &Certificate,
) -> Result<bool, CoxError> {
    if cert.status != CertStatus::Certified {
        return Err(CoxError::Certify(CertifyError::NotCertified));
    }
    let Some(v) = ctx.v.clone() else {
        return Err(CoxError::InvalidKernelVector);
    };
    let newt = geom::newton_polytope(f)?;
    if !geom::same_vertex_set(newt.vertices(), ctx.polytope.vertices()) {
        return Ok(false);
    }
    let h = cox_homogenize_diagonal(f, ctx, &v)?;
    let multipliers: Vec<SparsePoly> = match cert.kind {
        CertKind::CoxPrimitive => primitive_multipliers(ctx)?,
        CertKind::CoxIrrelevant => vec![irrelevant_multiplier(ctx)?],
        _ => return Err(CoxError::Certify(CertifyError::NotCertified)),
    };
    if multipliers.len() != cert.exponents.len() {
        return Ok(false);
    }
    let expected_multiplier = multipliers
        .iter()
        .zip(&cert.exponents)
        .try_fold(SparsePoly::one(ctx.ray_count()), |acc, (m, &e)| acc.mul(&m.pow(e)?))?;
    if expected_multiplier != cert.multiplier {
        return Ok(false);
    }
    let product = expected_multiplier.mul(&h)?;
    if product.num_terms() != cert.product_support_size {
        return Ok(false);
    }
    Ok(product.coefficient_report(None).all_nonnegative)
}

/// Degree report helper shared by the negative-regression tests: the weight
/// vectors of the primitive collections (0/1 indicators).
pub fn collection_indicator_weights(ctx: &CoxContext) -> Vec<Vec<i64>> {
    ctx.fan
        .primitive_collections
        .iter()
        .map(|c| {
            let mut w = vec![0i64; ctx.ray_count()];
            for &i in c {
                w[i] = 1;
            }
            w
        })
        .collect()
}
