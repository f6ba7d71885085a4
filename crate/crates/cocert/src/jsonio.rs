//! JSON schemas for polynomials, point sets, polytopes, graphs and
//! certificates. Serialization is canonical: terms in the polynomial's
//! canonical order, coefficients as `p/q` strings, maps with sorted keys,
//! so identical inputs produce byte-identical outputs.

use crate::cox::{CoxContext, CoxVariant};
use crate::feynman::{FeynmanGraph, KinematicSpec, LinearForm, MassTag};
use crate::geom::{Facet, FanData, LatticePolytope, PointSet};
use crate::poly::{ExponentVector, SparsePoly};
use crate::polya::{CertKind, CertStatus, Certificate, SearchMode, Witness};
use crate::rational::{format_rational, parse_rational, Rational};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad input: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> JsonError {
    JsonError::Invalid(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

pub fn default_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn poly_to_json(f: &SparsePoly, vars: &[String]) -> PolyJson {
    PolyJson {
        vars: vars.to_vec(),
        terms: f
            .terms()
            .map(|(e, c)| TermJson { exp: e.entries().to_vec(), coef: format_rational(c) })
            .collect(),
    }
}

pub fn poly_from_json(json: &PolyJson) -> Result<SparsePoly, JsonError> {
    let dim = json.vars.len();
    let terms = json
        .terms
        .iter()
        .map(|t| {
            if t.exp.len() != dim {
                return Err(invalid(format!(
                    "term exponent has {} entries, expected {}",
                    t.exp.len(),
                    dim
                )));
            }
            let coef = parse_rational(&t.coef).map_err(|e| invalid(e.to_string()))?;
            Ok((ExponentVector::new(t.exp.clone()), coef))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    SparsePoly::from_terms(dim, terms).map_err(|e| invalid(e.to_string()))
}

pub fn parse_poly_str(s: &str) -> Result<(SparsePoly, Vec<String>), JsonError> {
    let json: PolyJson = serde_json::from_str(s)?;
    let poly = poly_from_json(&json)?;
    Ok((poly, json.vars))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetJson {
    pub points: Vec<Vec<i64>>,
}

pub fn point_set_to_json(a: &PointSet) -> PointSetJson {
    PointSetJson { points: a.points().iter().map(|p| p.entries().to_vec()).collect() }
}

pub fn point_set_from_json(json: &PointSetJson) -> Result<PointSet, JsonError> {
    let dim = json
        .points
        .first()
        .map(|p| p.len())
        .ok_or_else(|| invalid("point set must be nonempty"))?;
    PointSet::new(dim, json.points.iter().map(|p| ExponentVector::new(p.clone())))
        .map_err(|e| invalid(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<FacetJson>,
    /// dimension of the polytope itself (its ambient dimension is the
    /// length of the vertex vectors)
    pub dim: usize,
}

pub fn polytope_to_json(p: &LatticePolytope) -> PolytopeJson {
    PolytopeJson {
        vertices: p.vertices().iter().map(|v| v.entries().to_vec()).collect(),
        facets: p
            .facets()
            .iter()
            .map(|f| FacetJson { normal: f.normal.clone(), offset: f.offset })
            .collect(),
        dim: p.dim(),
    }
}

pub fn polytope_from_json(json: &PolytopeJson) -> Result<LatticePolytope, JsonError> {
    let ambient = json
        .vertices
        .first()
        .map(|v| v.len())
        .ok_or_else(|| invalid("polytope must have vertices"))?;
    LatticePolytope::from_parts(
        ambient,
        json.vertices.iter().map(|v| ExponentVector::new(v.clone())).collect(),
        json.facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: f.offset })
            .collect(),
    )
    .map_err(|e| invalid(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LegJson {
    pub vertex: usize,
    pub momentum: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KinematicsJson {
    pub momentum_conservation: bool,
    /// keys `"i,j"` with 1-based leg indices; values are linear-form strings
    pub k: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    /// `[u, v, mass]` with 1-based vertex indices; mass is a parameter
    /// name, `"0"`, or a rational literal
    pub internal_edges: Vec<(usize, usize, String)>,
    pub external_legs: Vec<LegJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kinematics: Option<KinematicsJson>,
}

pub fn graph_from_json(json: &GraphJson) -> Result<(FeynmanGraph, KinematicSpec), JsonError> {
    let edges = json
        .internal_edges
        .iter()
        .map(|(u, v, mass)| {
            if *u == 0 || *v == 0 {
                return Err(invalid("vertex indices are 1-based"));
            }
            let tag = if mass == "0" {
                MassTag::Zero
            } else if mass.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                MassTag::Symbol(mass.clone())
            } else {
                MassTag::Fixed(parse_rational(mass).map_err(|e| invalid(e.to_string()))?)
            };
            Ok((u - 1, v - 1, tag))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let legs = json
        .external_legs
        .iter()
        .map(|l| {
            if l.vertex == 0 {
                return Err(invalid("vertex indices are 1-based"));
            }
            Ok((l.vertex - 1, l.momentum.clone()))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let graph = FeynmanGraph::new(json.vertices, edges, legs).map_err(|e| invalid(e.to_string()))?;
    let kin = match &json.kinematics {
        None => KinematicSpec::default(),
        Some(k) => {
            let entries = k
                .k
                .iter()
                .map(|(key, value)| {
                    let (i, j) = key
                        .split_once(',')
                        .ok_or_else(|| invalid(format!("bad kinematic key `{key}`")))?;
                    let i: usize = i.trim().parse().map_err(|_| invalid(format!("bad kinematic key `{key}`")))?;
                    let j: usize = j.trim().parse().map_err(|_| invalid(format!("bad kinematic key `{key}`")))?;
                    if i == 0 || j == 0 {
                        return Err(invalid("momenta indices are 1-based"));
                    }
                    let form = crate::feynman::parse_linear_form(value)
                        .map_err(|e| invalid(e.to_string()))?;
                    Ok(((i, j), form))
                })
                .collect::<Result<Vec<_>, JsonError>>()?;
            KinematicSpec::new(k.momentum_conservation, entries).map_err(|e| invalid(e.to_string()))?
        }
    };
    Ok((graph, kin))
}

pub fn parse_graph_str(s: &str) -> Result<(FeynmanGraph, KinematicSpec), JsonError> {
    let json: GraphJson = serde_json::from_str(s)?;
    graph_from_json(&json)
}

/// Parametric polynomial rendering: linear-form coefficients as strings.
pub fn param_poly_to_json(f: &crate::feynman::ParamPoly, vars: &[String]) -> PolyJson {
    PolyJson {
        vars: vars.to_vec(),
        terms: f
            .terms()
            .map(|(e, form)| TermJson { exp: e.entries().to_vec(), coef: form.render() })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub face_active: Vec<usize>,
    pub point: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanJson {
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub primitive_collections: Vec<Vec<usize>>,
    pub irrelevant_generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoxContextJson {
    pub polytope: PolytopeJson,
    pub fan: FanJson,
    pub v: Vec<i64>,
}

pub fn cox_context_to_json(ctx: &CoxContext) -> Option<CoxContextJson> {
    Some(CoxContextJson {
        polytope: polytope_to_json(&ctx.polytope),
        fan: fan_to_json(&ctx.fan),
        v: ctx.v.clone()?,
    })
}

fn fan_to_json(fan: &FanData) -> FanJson {
    FanJson {
        rays: fan.rays.clone(),
        maximal_cones: fan.maximal_cones.clone(),
        primitive_collections: fan.primitive_collections.clone(),
        irrelevant_generators: fan
            .irrelevant_generators
            .iter()
            .map(|g| g.entries().to_vec())
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema_version: u32,
    pub input_sha256: String,
    pub status: String,
    pub kind: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub multiplier: PolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub exponents: Vec<usize>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<i64>>,
    pub product_terms: usize,
    pub offenders: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cox_context: Option<CoxContextJson>,
}

pub fn status_str(s: CertStatus) -> &'static str {
    match s {
        CertStatus::Certified => "certified",
        CertStatus::RefutedNewton => "refuted_newton",
        CertStatus::RefutedWitness => "refuted_witness",
        CertStatus::Unknown => "unknown",
    }
}

pub fn mode_str(m: SearchMode) -> &'static str {
    match m {
        SearchMode::Nonneg => "nonneg",
        SearchMode::StrictSupport => "strict_support",
    }
}

pub fn kind_str(k: CertKind) -> &'static str {
    match k {
        CertKind::Sparse => "sparse",
        CertKind::Classical => "classical",
        CertKind::Custom => "custom",
        CertKind::CoxPrimitive => "cox_primitive",
        CertKind::CoxIrrelevant => "cox_irrelevant",
    }
}

fn witness_to_json(w: &Witness) -> WitnessJson {
    WitnessJson {
        face_active: w.face_active.clone(),
        point: w.point.iter().map(format_rational).collect(),
        value: format_rational(&w.value),
    }
}

pub fn certificate_to_json(
    cert: &Certificate,
    input_sha256: &str,
    multiplier_vars: &[String],
    cox: Option<&CoxContext>,
) -> CertificateJson {
    let variant = match cert.kind {
        CertKind::CoxPrimitive => Some("primitive".to_string()),
        CertKind::CoxIrrelevant => Some("irrelevant".to_string()),
        _ => None,
    };
    CertificateJson {
        schema_version: 1,
        input_sha256: input_sha256.to_string(),
        status: status_str(cert.status).to_string(),
        kind: kind_str(cert.kind).to_string(),
        mode: mode_str(cert.mode).to_string(),
        variant,
        multiplier: poly_to_json(&cert.multiplier, multiplier_vars),
        n: (cert.exponents.len() == 1).then(|| cert.exponents[0]),
        exponents: cert.exponents.clone(),
        k: cert.k,
        v: cox.and_then(|c| c.v.clone()),
        product_terms: cert.product_support_size,
        offenders: cert
            .offenders
            .iter()
            .map(|(e, c)| TermJson { exp: e.entries().to_vec(), coef: format_rational(c) })
            .collect(),
        witness: cert.witness.as_ref().map(witness_to_json),
        cox_context: cox.and_then(cox_context_to_json),
    }
}

pub fn variant_from_str(s: &str) -> Option<CoxVariant> {
    match s {
        "primitive" => Some(CoxVariant::Primitive),
        "irrelevant" => Some(CoxVariant::Irrelevant),
        _ => None,
    }
}

/// Canonical pretty serialization with a trailing newline.
pub fn canonical_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Hash of the canonical serialization of a parsed input; formatting of the
/// input file does not matter, its mathematical content does.
pub fn sha256_hex<T: Serialize>(value: &T) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical_string(value).as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Renders an assignment file `{ "param": "p/q", ... }`.
pub fn parse_assignment_str(s: &str) -> Result<BTreeMap<String, Rational>, JsonError> {
    let raw: BTreeMap<String, String> = serde_json::from_str(s)?;
    raw.into_iter()
        .map(|(k, v)| Ok((k, parse_rational(&v).map_err(|e| invalid(e.to_string()))?)))
        .collect()
}

/// Renders a linear form table for reports.
pub fn linear_form_strings(forms: &[(ExponentVector, LinearForm)]) -> Vec<(Vec<i64>, String)> {
    forms
        .iter()
        .map(|(e, f)| (e.entries().to_vec(), f.render()))
        .collect()
}
