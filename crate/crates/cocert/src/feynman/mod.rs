//! Feynman graphs and their Symanzik polynomials: spanning-tree and
//! 2-forest enumeration, the parametric second Symanzik polynomial over a
//! kinematic substitution table, Euclidean-region feasibility, and the
//! convergence sufficient condition built on the sparse certifier.

pub mod kinematics;
pub mod region;

pub use kinematics::{parse_linear_form, KinematicSpec, KinematicsError, LinearForm};
pub use region::{fourier_motzkin, FmOutcome};

use crate::geom::{self, GeomError, PointSet, RationalPolytope};
use crate::poly::{grevlex_cmp, ExponentVector, PolyError, SparsePoly};
use crate::polya::{self, Certificate, CertifyError, SearchConfig};
use crate::rational::Rational;
use itertools::Itertools;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeynmanError {
    #[error("internal graph must be connected")]
    Disconnected,
    #[error("edge endpoint {0} out of range for {1} vertices")]
    BadVertex(usize, usize),
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("expected {0} edge variables, got {1}")]
    BadDimension(usize, usize),
    #[error("F-polynomial exponent |nu| - l*D/2 must be positive (got {0})")]
    NonpositiveExponent(String),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// Internal-edge mass annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MassTag {
    /// a named parameter `m_e`
    Symbol(String),
    /// massless edge: drops out of the mass sum
    Zero,
    /// fixed rational mass, folded into constants
    Fixed(Rational),
}

/// Multigraph with internal edges (carrying masses and one variable each)
/// and external legs attached to vertices. Vertices are 0-based internally.
#[derive(Debug, Clone)]
pub struct FeynmanGraph {
    pub vertex_count: usize,
    pub internal_edges: Vec<(usize, usize, MassTag)>,
    /// (vertex, momentum label); the 1-based position is the leg index
    pub external_legs: Vec<(usize, String)>,
}

impl FeynmanGraph {
    pub fn new(
        vertex_count: usize,
        internal_edges: Vec<(usize, usize, MassTag)>,
        external_legs: Vec<(usize, String)>,
    ) -> Result<Self, FeynmanError> {
        if vertex_count == 0 {
            return Err(FeynmanError::NoVertices);
        }
        for &(u, v, _) in &internal_edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(FeynmanError::BadVertex(u.max(v), vertex_count));
            }
        }
        for &(v, _) in &external_legs {
            if v >= vertex_count {
                return Err(FeynmanError::BadVertex(v, vertex_count));
            }
        }
        let graph = FeynmanGraph { vertex_count, internal_edges, external_legs };
        if !graph.is_connected() {
            return Err(FeynmanError::Disconnected);
        }
        Ok(graph)
    }

    pub fn edge_count(&self) -> usize {
        self.internal_edges.len()
    }

    /// `l = #edges - #vertices + 1` for a connected graph.
    pub fn loop_number(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.vertex_count);
        for &(u, v, _) in &self.internal_edges {
            dsu.union(u, v);
        }
        (1..self.vertex_count).all(|v| dsu.find(v) == dsu.find(0))
    }

    /// Names of the symbolic masses, in edge order without duplicates.
    pub fn mass_symbols(&self) -> BTreeSet<String> {
        self.internal_edges
            .iter()
            .filter_map(|(_, _, m)| match m {
                MassTag::Symbol(s) => Some(s.clone()),
                _ => None,
            })
            .collect()
    }

    /// All spanning trees as sorted edge-index sets, in lexicographic order.
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let take = self.vertex_count - 1;
        (0..self.edge_count())
            .combinations(take)
            .filter(|edges| self.is_spanning_forest(edges, 1))
            .collect()
    }

    /// All spanning 2-forests: edge subsets of size `#vertices - 2` that are
    /// acyclic (hence exactly two components). The piece containing vertex 0
    /// is `T1`.
    pub fn spanning_2forests(&self) -> Vec<TwoForest> {
        if self.vertex_count < 2 {
            return Vec::new();
        }
        let take = self.vertex_count - 2;
        (0..self.edge_count())
            .combinations(take)
            .filter(|edges| self.is_spanning_forest(edges, 2))
            .map(|edges| self.split_forest(&edges))
            .collect()
    }

    fn is_spanning_forest(&self, edges: &[usize], components: usize) -> bool {
        let mut dsu = Dsu::new(self.vertex_count);
        for &e in edges {
            let (u, v, _) = self.internal_edges[e];
            if !dsu.union(u, v) {
                return false; // cycle
            }
        }
        dsu.component_count() == components
    }

    fn split_forest(&self, edges: &[usize]) -> TwoForest {
        let mut dsu = Dsu::new(self.vertex_count);
        for &e in edges {
            let (u, v, _) = self.internal_edges[e];
            dsu.union(u, v);
        }
        let root0 = dsu.find(0);
        let mut t1_vertices = Vec::new();
        let mut t2_vertices = Vec::new();
        for v in 0..self.vertex_count {
            if dsu.find(v) == root0 {
                t1_vertices.push(v);
            } else {
                t2_vertices.push(v);
            }
        }
        let mut t1_edges = Vec::new();
        let mut t2_edges = Vec::new();
        for &e in edges {
            let (u, _, _) = self.internal_edges[e];
            if dsu.find(u) == root0 {
                t1_edges.push(e);
            } else {
                t2_edges.push(e);
            }
        }
        TwoForest { t1_vertices, t2_vertices, t1_edges, t2_edges }
    }

    /// First Symanzik polynomial `U = sum_T prod_{e not in T} x_e`.
    pub fn first_symanzik(&self) -> SparsePoly {
        let n = self.edge_count();
        let terms = self.spanning_trees().into_iter().map(|tree| {
            let mut exp = vec![1i64; n];
            for e in tree {
                exp[e] = 0;
            }
            (ExponentVector::new(exp), Rational::one())
        });
        SparsePoly::from_terms(n, terms.collect::<Vec<_>>()).expect("tree exponents have edge dimension")
    }

    /// Second Symanzik polynomial with kinematic products substituted from
    /// the table and masses per their tags; homogeneous of degree `l + 1`.
    pub fn second_symanzik(&self, kin: &KinematicSpec) -> Result<ParamPoly, FeynmanError> {
        kin.validate_conservation(self.external_legs.len())?;
        let n = self.edge_count();
        let mut acc: Vec<(ExponentVector, LinearForm)> = Vec::new();
        let mut push = |exp: ExponentVector, form: LinearForm| {
            if form.is_zero() {
                return;
            }
            match acc.iter_mut().find(|(e, _)| *e == exp) {
                Some((_, f)) => f.add_assign(&form),
                None => acc.push((exp, form)),
            }
        };

        // momenta part over 2-forests
        for forest in self.spanning_2forests() {
            let mut momenta = LinearForm::zero();
            for (i1, _) in self.external_legs.iter().enumerate() {
                if !forest.t1_vertices.contains(&self.external_legs[i1].0) {
                    continue;
                }
                for (i2, _) in self.external_legs.iter().enumerate() {
                    if !forest.t2_vertices.contains(&self.external_legs[i2].0) {
                        continue;
                    }
                    momenta.add_assign(kin.lookup(i1 + 1, i2 + 1)?);
                }
            }
            let mut exp = vec![1i64; n];
            for &e in forest.t1_edges.iter().chain(&forest.t2_edges) {
                exp[e] = 0;
            }
            push(ExponentVector::new(exp), momenta);
        }

        // mass part (sum_e m_e x_e) * U
        let u = self.first_symanzik();
        for (e, (_, _, tag)) in self.internal_edges.iter().enumerate() {
            let mass_form = match tag {
                MassTag::Zero => continue,
                MassTag::Symbol(s) => LinearForm::symbol(s),
                MassTag::Fixed(c) => LinearForm::constant(c.clone()),
            };
            for (uexp, _) in u.terms() {
                let mut exp = uexp.entries().to_vec();
                exp[e] += 1;
                push(ExponentVector::new(exp), mass_form.clone());
            }
        }

        acc.retain(|(_, f)| !f.is_zero());
        acc.sort_by(|a, b| grevlex_cmp(&a.0, &b.0));
        Ok(ParamPoly { dim: n, terms: acc })
    }
}

/// A spanning 2-forest, canonicalized so `T1` contains vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForest {
    pub t1_vertices: Vec<usize>,
    pub t2_vertices: Vec<usize>,
    pub t1_edges: Vec<usize>,
    pub t2_edges: Vec<usize>,
}

/// Polynomial whose coefficients are affine-linear forms in named kinematic
/// parameters; terms in canonical order, no identically-zero forms stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoly {
    dim: usize,
    terms: Vec<(ExponentVector, LinearForm)>,
}

impl ParamPoly {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &LinearForm)> {
        self.terms.iter().map(|(e, f)| (e, f))
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> Option<&LinearForm> {
        self.terms.iter().find(|(e, _)| e == exp).map(|(_, f)| f)
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.terms
            .iter()
            .flat_map(|(_, f)| f.parameters().map(str::to_string))
            .collect()
    }

    pub fn homogeneous_degree(&self) -> Option<i128> {
        let first = self.terms.first()?.0.total_degree();
        self.terms
            .iter()
            .all(|(e, _)| e.total_degree() == first)
            .then_some(first)
    }

    /// Exact substitution of all parameters; terms whose form evaluates to
    /// zero are dropped.
    pub fn instantiate(&self, assignment: &BTreeMap<String, Rational>) -> Result<SparsePoly, FeynmanError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, f)| Ok((e.clone(), f.evaluate(assignment)?)))
            .collect::<Result<Vec<_>, KinematicsError>>()?;
        Ok(SparsePoly::from_terms(self.dim, terms)?)
    }

    /// Support for generic parameter values.
    pub fn generic_support(&self) -> PointSet {
        PointSet::new(self.dim, self.terms.iter().map(|(e, _)| e.clone()))
            .expect("term exponents have the ambient dimension")
    }
}

/// Flags attached to each generic-support point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFlag {
    pub point: ExponentVector,
    /// lies in `A^1`: mass-type exponent `e_p + sum_{j not in T} e_j`, p in T
    pub in_a1: bool,
    /// lies in `A^2`: exponent `2 e_q + sum_{j not in T, j != q} e_j`, q not in T
    pub in_a2: bool,
    pub involves_mass: bool,
    pub is_vertex: bool,
}

/// Generic support of the second Symanzik polynomial together with the
/// structural flags used by the vertex lemma.
pub fn generic_support(
    graph: &FeynmanGraph,
    kin: &KinematicSpec,
) -> Result<(PointSet, Vec<SupportFlag>), FeynmanError> {
    let f = graph.second_symanzik(kin)?;
    let support = f.generic_support();
    let n = graph.edge_count();
    let masses = graph.mass_symbols();

    let mut a1: BTreeSet<ExponentVector> = BTreeSet::new();
    let mut a2: BTreeSet<ExponentVector> = BTreeSet::new();
    for tree in graph.spanning_trees() {
        let mut base = vec![1i64; n];
        for &e in &tree {
            base[e] = 0;
        }
        for p in 0..n {
            let mut exp = base.clone();
            exp[p] += 1;
            if tree.contains(&p) {
                a1.insert(ExponentVector::new(exp));
            } else {
                a2.insert(ExponentVector::new(exp));
            }
        }
    }

    let hull = geom::convex_hull(&support)?;
    let vertex_set: BTreeSet<&ExponentVector> = hull.vertices().iter().collect();
    let flags = support
        .points()
        .iter()
        .map(|p| SupportFlag {
            point: p.clone(),
            in_a1: a1.contains(p),
            in_a2: a2.contains(p),
            involves_mass: f
                .coefficient(p)
                .map(|form| form.involves_any(&masses))
                .unwrap_or(false),
            is_vertex: vertex_set.contains(p),
        })
        .collect();
    Ok((support, flags))
}

/// Outcome of the Euclidean-region feasibility check.
#[derive(Debug, Clone)]
pub enum RegionOutcome {
    /// Rational parameter values making every generic-support coefficient
    /// strictly positive.
    Nonempty { witness: BTreeMap<String, Rational> },
    /// A nonnegative combination of coefficient forms that is a nonpositive
    /// constant; the indices refer to `forms`.
    Empty {
        combination: Vec<(usize, Rational)>,
        constant: Rational,
    },
}

#[derive(Debug, Clone)]
pub struct RegionReport {
    /// the coefficient forms, in canonical term order
    pub forms: Vec<(ExponentVector, LinearForm)>,
    pub parameters: Vec<String>,
    pub outcome: RegionOutcome,
}

/// Decides strict feasibility of `{ coefficient_a(params) > 0 }` over the
/// generic support, via exact Fourier-Motzkin elimination.
pub fn euclidean_region_nonempty(
    graph: &FeynmanGraph,
    kin: &KinematicSpec,
) -> Result<RegionReport, FeynmanError> {
    let f = graph.second_symanzik(kin)?;
    let params: Vec<String> = f.parameters().into_iter().collect();
    let forms: Vec<(ExponentVector, LinearForm)> =
        f.terms().map(|(e, lf)| (e.clone(), lf.clone())).collect();
    let system: Vec<(Vec<Rational>, Rational)> = forms
        .iter()
        .map(|(_, lf)| {
            let coeffs = params
                .iter()
                .map(|p| lf.coeffs.get(p).cloned().unwrap_or_else(Rational::zero))
                .collect();
            (coeffs, lf.constant.clone())
        })
        .collect();
    let outcome = match fourier_motzkin(&system) {
        FmOutcome::Feasible(values) => RegionOutcome::Nonempty {
            witness: params.iter().cloned().zip(values).collect(),
        },
        FmOutcome::Infeasible { combination, constant } => {
            RegionOutcome::Empty { combination, constant }
        }
    };
    Ok(RegionReport { forms, parameters: params, outcome })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    /// both sufficient conditions hold: convergence is guaranteed
    Guaranteed,
    /// at least one condition failed or remained unknown
    NotDecided,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub certificate: Certificate,
    pub newton_containment: bool,
    pub verdict: ConvergenceVerdict,
}

/// The convergence sufficient condition: (i) the instantiated second
/// Symanzik polynomial is certified strictly copositive on its support, and
/// (ii) the shifted scaled Newton polytope of the numerator lies in the
/// relative interior of the Newton polytope of `F^(|nu| - l D/2)`.
pub fn convergence_check(
    graph: &FeynmanGraph,
    kin: &KinematicSpec,
    assignment: &BTreeMap<String, Rational>,
    nu: &[Rational],
    dim_d: &Rational,
    cfg: &SearchConfig,
) -> Result<ConvergenceReport, FeynmanError> {
    let n = graph.edge_count();
    if nu.len() != n {
        return Err(FeynmanError::BadDimension(n, nu.len()));
    }
    let ell = Rational::from_integer((graph.loop_number() as i64).into());
    let half = Rational::new(1.into(), 2.into());
    let nu_total: Rational = nu.iter().fold(Rational::zero(), |acc, x| acc + x);
    let f_exponent = &nu_total - &ell * dim_d * &half;
    if !f_exponent.is_positive() {
        return Err(FeynmanError::NonpositiveExponent(f_exponent.to_string()));
    }
    let u_exponent = &nu_total - (&ell + Rational::one()) * dim_d * &half;

    let f_poly = graph.second_symanzik(kin)?.instantiate(assignment)?;
    if f_poly.is_zero() {
        return Err(FeynmanError::Certify(CertifyError::ZeroPolynomial));
    }
    let certificate = polya::sparse_polya_certify(&f_poly, cfg)?;

    // condition (ii): Newt(x^nu * U^u_exponent) inside relint Newt(F^f_exponent)
    let u_newt = geom::newton_polytope(&graph.first_symanzik())?;
    let numerator_points: Vec<Vec<Rational>> = if u_exponent.is_zero() {
        vec![nu.to_vec()]
    } else {
        u_newt
            .vertices()
            .iter()
            .map(|w| {
                nu.iter()
                    .zip(w.entries())
                    .map(|(nui, &wi)| nui + &u_exponent * Rational::from_integer(wi.into()))
                    .collect()
            })
            .collect()
    };
    let numerator = RationalPolytope::from_rational_points(n, &numerator_points)?;
    let f_newt = geom::newton_polytope(&f_poly)?;
    let denominator = geom::scale_polytope(&f_newt, &f_exponent)?;
    let newton_containment = geom::relint_contains(&numerator, &denominator)?;

    let verdict = if certificate.status == polya::CertStatus::Certified && newton_containment {
        ConvergenceVerdict::Guaranteed
    } else {
        ConvergenceVerdict::NotDecided
    };
    Ok(ConvergenceReport { certificate, newton_containment, verdict })
}

/// Union-find over graph vertices.
struct Dsu {
    parent: Vec<usize>,
    components: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    fn component_count(&self) -> usize {
        self.components
    }
}
