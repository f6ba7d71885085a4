//! Multiplier-power copositivity certificates: the sparse and classical
//! searches, refutation prechecks, face diagnostics and certificate
//! verification.
//!
//! A search never claims non-copositivity from budget exhaustion; it reports
//! the offending monomials of the last step instead so persistent negative
//! families stay visible.

use crate::geom::{self, GeomError, PointSet};
use crate::poly::{power_multiply, ExponentVector, PolyError, SparsePoly};
use crate::rational::Rational;
use num::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("the zero polynomial admits no certificate")]
    ZeroPolynomial,
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("multiplier has a negative coefficient")]
    NegativeMultiplierCoefficient,
    #[error("support of f is not contained in the k-fold Minkowski power of A")]
    InconsistentSupport,
    #[error("classical certification requires a homogeneous polynomial with nonnegative exponents")]
    NonHomogeneous,
    #[error("certificate is not in Certified status")]
    NotCertified,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Theorem condition (iii): the product has no negative coefficient.
    Nonneg,
    /// Theorem condition (ii): every point of the expected support carries a
    /// strictly positive coefficient.
    StrictSupport,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n_max: usize,
    pub mode: SearchMode,
    pub emit_product: bool,
    pub k: usize,
    pub support_a: Option<PointSet>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_max: 64,
            mode: SearchMode::Nonneg,
            emit_product: false,
            k: 1,
            support_a: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    Certified,
    RefutedNewton,
    RefutedWitness,
    Unknown,
}

/// Which search produced a certificate; verification reconstructs the
/// expected support from this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Sparse,
    Classical,
    Custom,
    CoxPrimitive,
    CoxIrrelevant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// active facet set of the face whose truncation fails
    pub face_active: Vec<usize>,
    pub point: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub status: CertStatus,
    pub kind: CertKind,
    pub mode: SearchMode,
    pub multiplier: SparsePoly,
    /// one entry per multiplier; plain power searches carry a single N
    pub exponents: Vec<usize>,
    pub k: usize,
    pub product_support_size: usize,
    /// offending monomials at the final step (empty when Certified)
    pub offenders: Vec<(ExponentVector, Rational)>,
    pub witness: Option<Witness>,
    pub product: Option<SparsePoly>,
}

/// One step of a multiplier power search.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub n: usize,
    pub product_terms: usize,
    pub passed: bool,
    pub offenders: Vec<(ExponentVector, Rational)>,
}

/// Expected support for the strict mode, updated one Minkowski increment per
/// step.
struct RequiredSupport {
    current: HashSet<ExponentVector>,
    increment: Vec<ExponentVector>,
}

impl RequiredSupport {
    fn advance(&mut self) -> Result<(), PolyError> {
        let mut next = HashSet::with_capacity(self.current.len() * 2);
        for p in &self.current {
            for inc in &self.increment {
                next.insert(p.checked_add(inc)?);
            }
        }
        self.current = next;
        Ok(())
    }
}

struct SearchOutcome {
    certified_at: Option<usize>,
    product: SparsePoly,
    last_step: StepReport,
}

/// Core ascending power search; `on_step` observes every step, including the
/// passing one. Returns at the first passing step or at budget exhaustion.
fn power_search(
    f: &SparsePoly,
    g: &SparsePoly,
    n_max: usize,
    mode: SearchMode,
    mut required: Option<RequiredSupport>,
    mut on_step: impl FnMut(&StepReport, &SparsePoly),
) -> Result<SearchOutcome, CertifyError> {
    let mut stream = power_multiply(f, g, n_max)?;
    let mut n = 0usize;
    loop {
        let product = stream.next().expect("stream yields n_max + 1 items")?;
        let mut offenders: Vec<(ExponentVector, Rational)> = product
            .terms()
            .filter(|(_, c)| c.is_negative())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        let passed = match (mode, &required) {
            (SearchMode::Nonneg, _) => offenders.is_empty(),
            (SearchMode::StrictSupport, Some(req)) => {
                if offenders.is_empty() && product.num_terms() != req.current.len() {
                    let supp: HashSet<&ExponentVector> = product.support().collect();
                    let mut missing: Vec<(ExponentVector, Rational)> = req
                        .current
                        .iter()
                        .filter(|p| !supp.contains(*p))
                        .map(|p| (p.clone(), Rational::zero()))
                        .collect();
                    missing.sort_by(|a, b| crate::poly::grevlex_cmp(&a.0, &b.0));
                    offenders.extend(missing);
                }
                offenders.is_empty() && product.num_terms() == req.current.len()
            }
            (SearchMode::StrictSupport, None) => offenders.is_empty(),
        };
        let step = StepReport { n, product_terms: product.num_terms(), passed, offenders };
        on_step(&step, &product);
        if passed {
            return Ok(SearchOutcome { certified_at: Some(n), product, last_step: step });
        }
        if n == n_max {
            return Ok(SearchOutcome { certified_at: None, product, last_step: step });
        }
        n += 1;
        if let Some(req) = required.as_mut() {
            req.advance()?;
        }
    }
}

fn finish_certificate(
    kind: CertKind,
    cfg: &SearchConfig,
    g: SparsePoly,
    outcome: SearchOutcome,
) -> Certificate {
    let certified = outcome.certified_at.is_some();
    Certificate {
        status: if certified { CertStatus::Certified } else { CertStatus::Unknown },
        kind,
        mode: cfg.mode,
        multiplier: g,
        exponents: vec![outcome.certified_at.unwrap_or(cfg.n_max)],
        k: cfg.k,
        product_support_size: outcome.product.num_terms(),
        offenders: if certified { Vec::new() } else { outcome.last_step.offenders },
        witness: None,
        product: cfg.emit_product.then_some(outcome.product),
    }
}

fn refuted(kind: CertKind, cfg: &SearchConfig, g: SparsePoly, status: CertStatus, witness: Option<Witness>) -> Certificate {
    Certificate {
        status,
        kind,
        mode: cfg.mode,
        multiplier: g,
        exponents: vec![0],
        k: cfg.k,
        product_support_size: 0,
        offenders: Vec::new(),
        witness,
        product: None,
    }
}

fn required_for(mode: SearchMode, base: &PointSet, increment: &PointSet) -> Option<RequiredSupport> {
    match mode {
        SearchMode::Nonneg => None,
        SearchMode::StrictSupport => Some(RequiredSupport {
            current: base.as_hash_set(),
            increment: increment.points().to_vec(),
        }),
    }
}

/// The sparse certifier: Newton-polytope guard, vertex sign precheck, then
/// the ascending power search with multiplier `sum_{a in A} t^a`.
pub fn sparse_polya_certify(f: &SparsePoly, cfg: &SearchConfig) -> Result<Certificate, CertifyError> {
    sparse_polya_certify_traced(f, cfg, |_, _| {})
}

pub fn sparse_polya_certify_traced(
    f: &SparsePoly,
    cfg: &SearchConfig,
    on_step: impl FnMut(&StepReport, &SparsePoly),
) -> Result<Certificate, CertifyError> {
    if f.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let support_a = match &cfg.support_a {
        Some(a) => a.clone(),
        None => PointSet::from_support(f),
    };
    if support_a.is_empty() {
        return Err(CertifyError::InconsistentSupport);
    }
    let k_power = support_a.minkowski_power(cfg.k.max(1))?;
    if cfg.k == 0 {
        return Err(CertifyError::InconsistentSupport);
    }
    if !f.support().all(|e| k_power.contains(e)) {
        return Err(CertifyError::InconsistentSupport);
    }
    let g = SparsePoly::support_sum(f.dim(), support_a.points().iter().cloned())?;

    // Step 0: Newton guard. Newt(f) must equal conv(k . A), otherwise f is
    // not strictly A-copositive.
    let newt = geom::newton_polytope(f)?;
    if !geom::hull_equals(&newt, &k_power)? {
        return Ok(refuted(CertKind::Sparse, cfg, g, CertStatus::RefutedNewton, None));
    }

    // Step 1: a vertex of the Newton polytope with a nonpositive coefficient
    // is a single-term initial form, hence an explicit refutation witness.
    if let Some(w) = vertex_witness(f, &newt) {
        return Ok(refuted(CertKind::Sparse, cfg, g, CertStatus::RefutedWitness, Some(w)));
    }

    let required = required_for(cfg.mode, &k_power, &support_a);
    let outcome = power_search(f, &g, cfg.n_max, cfg.mode, required, on_step)?;
    Ok(finish_certificate(CertKind::Sparse, cfg, g, outcome))
}

fn vertex_witness(f: &SparsePoly, newt: &geom::LatticePolytope) -> Option<Witness> {
    for (idx, v) in newt.vertices().iter().enumerate() {
        if let Some(c) = f.coefficient(v) {
            if !c.is_positive() {
                return Some(Witness {
                    face_active: newt.active_set(idx),
                    point: vec![Rational::from_integer(1.into()); f.dim()],
                    value: c.clone(),
                });
            }
        }
    }
    None
}

/// Classical Polya certification: the sparse search specialized to
/// `A = {e_1, ..., e_n}` and `k = deg f`.
pub fn classical_polya_certify(f: &SparsePoly, cfg: &SearchConfig) -> Result<Certificate, CertifyError> {
    classical_polya_certify_traced(f, cfg, |_, _| {})
}

pub fn classical_polya_certify_traced(
    f: &SparsePoly,
    cfg: &SearchConfig,
    on_step: impl FnMut(&StepReport, &SparsePoly),
) -> Result<Certificate, CertifyError> {
    if f.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let Some(degree) = f.homogeneous_degree() else {
        return Err(CertifyError::NonHomogeneous);
    };
    if f.support().any(|e| e.entries().iter().any(|&x| x < 0)) || degree < 1 {
        return Err(CertifyError::NonHomogeneous);
    }
    let n = f.dim();
    let basis = PointSet::new(n, (0..n).map(|i| ExponentVector::unit(n, i)))?;
    let mut sub_cfg = cfg.clone();
    sub_cfg.k = degree as usize;
    sub_cfg.support_a = Some(basis);
    let mut cert = sparse_polya_certify_traced(f, &sub_cfg, on_step)?;
    cert.kind = CertKind::Classical;
    Ok(cert)
}

/// Power search with a caller-supplied multiplier. The Newton guard is the
/// caller's responsibility; the multiplier must have nonnegative
/// coefficients.
pub fn certify_with_multiplier(
    f: &SparsePoly,
    g: &SparsePoly,
    cfg: &SearchConfig,
) -> Result<Certificate, CertifyError> {
    certify_with_multiplier_traced(f, g, cfg, |_, _| {})
}

pub fn certify_with_multiplier_traced(
    f: &SparsePoly,
    g: &SparsePoly,
    cfg: &SearchConfig,
    on_step: impl FnMut(&StepReport, &SparsePoly),
) -> Result<Certificate, CertifyError> {
    if f.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if g.is_zero() {
        return Err(CertifyError::ZeroMultiplier);
    }
    if !g.coefficient_report(None).all_nonnegative {
        return Err(CertifyError::NegativeMultiplierCoefficient);
    }
    let f_support = PointSet::from_support(f);
    let g_support = PointSet::from_support(g);
    let required = required_for(cfg.mode, &f_support, &g_support);
    let outcome = power_search(f, g, cfg.n_max, cfg.mode, required, on_step)?;
    Ok(finish_certificate(CertKind::Custom, cfg, g.clone(), outcome))
}

/// Deterministic positive rational sample points with coordinates in
/// `[1/10, 10]`.
pub fn positive_rational_samples(seed: u64, count: usize, dim: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let p: i64 = rng.gen_range(1..=10);
                    let q: i64 = rng.gen_range(1..=10);
                    Rational::new(p.into(), q.into())
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct FaceDiagnostic {
    pub face_active: Vec<usize>,
    pub point: Vec<Rational>,
    pub value: Rational,
}

/// Evaluates every nonempty face truncation of `f` at the all-ones point and
/// at `samples_per_face` seeded positive rational points. Any value <= 0 is
/// a sound refutation witness of strict copositivity; all-positive output is
/// diagnostic only.
pub fn face_positivity_diagnostics(
    f: &SparsePoly,
    samples_per_face: usize,
    seed: u64,
) -> Result<Vec<FaceDiagnostic>, CertifyError> {
    if f.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let newt = geom::newton_polytope(f)?;
    let faces = geom::enumerate_faces(&newt);
    let mut points = vec![vec![Rational::from_integer(1.into()); f.dim()]];
    points.extend(positive_rational_samples(seed, samples_per_face, f.dim()));
    let mut out = Vec::with_capacity(faces.len() * points.len());
    for face in &faces {
        let truncation = f.truncate_where(|e| {
            face.active.iter().all(|&i| newt.facets()[i].value(e) == 0)
        });
        for point in &points {
            out.push(FaceDiagnostic {
                face_active: face.active.clone(),
                point: point.clone(),
                value: truncation.evaluate(point)?,
            });
        }
    }
    Ok(out)
}

/// Recomputes `multiplier^N . f` from scratch (binary exponentiation, a
/// route independent of the incremental search) and re-runs the coefficient
/// check and the Newton guard.
pub fn verify_certificate(f: &SparsePoly, cert: &Certificate) -> Result<bool, CertifyError> {
    if cert.status != CertStatus::Certified {
        return Err(CertifyError::NotCertified);
    }
    if cert.exponents.len() != 1 {
        // multi-exponent (Cox) certificates are verified by the cox module
        return Err(CertifyError::NotCertified);
    }
    let n = cert.exponents[0];
    let product = cert.multiplier.pow(n)?.mul(f)?;
    if product.num_terms() != cert.product_support_size {
        return Ok(false);
    }
    if let Some(p) = &cert.product {
        if *p != product {
            return Ok(false);
        }
    }
    let a_set = PointSet::from_support(&cert.multiplier);
    match cert.kind {
        CertKind::Sparse | CertKind::Classical => {
            let k_power = a_set.minkowski_power(cert.k)?;
            let newt = geom::newton_polytope(f)?;
            if !geom::hull_equals(&newt, &k_power)? {
                return Ok(false);
            }
            let ok = match cert.mode {
                SearchMode::Nonneg => product.coefficient_report(None).all_nonnegative,
                SearchMode::StrictSupport => {
                    let mut req = RequiredSupport {
                        current: k_power.as_hash_set(),
                        increment: a_set.points().to_vec(),
                    };
                    for _ in 0..n {
                        req.advance()?;
                    }
                    product
                        .coefficient_report(Some(&req.current))
                        .all_positive_on_required
                        .unwrap_or(false)
                }
            };
            Ok(ok)
        }
        CertKind::Custom => {
            let ok = match cert.mode {
                SearchMode::Nonneg => product.coefficient_report(None).all_nonnegative,
                SearchMode::StrictSupport => {
                    let mut req = RequiredSupport {
                        current: PointSet::from_support(f).as_hash_set(),
                        increment: a_set.points().to_vec(),
                    };
                    for _ in 0..n {
                        req.advance()?;
                    }
                    product
                        .coefficient_report(Some(&req.current))
                        .all_positive_on_required
                        .unwrap_or(false)
                }
            };
            Ok(ok)
        }
        CertKind::CoxPrimitive | CertKind::CoxIrrelevant => Err(CertifyError::NotCertified),
    }
}
