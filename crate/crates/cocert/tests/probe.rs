// Temporary exploration harness: prints the quantities the fixed tests will
// freeze. Run with `cargo test -p cocert --test probe -- --nocapture`.

use cocert::cox::{self, CoxContext, CoxVariant};
use cocert::geom::{self, Facet, LatticePolytope};
use cocert::jsonio;
use cocert::polya::SearchConfig;
use cocert::{ExponentVector, SparsePoly};

fn fixture(name: &str) -> SparsePoly {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let s = std::fs::read_to_string(path).unwrap();
    jsonio::parse_poly_str(&s).unwrap().0
}

#[test]
fn probe_counterexample_cox() {
    // pentagon with the displayed facet ordering
    let pentagon = fixture("pentagon.json");
    let verts = vec![
        ExponentVector::new(vec![0, 0]),
        ExponentVector::new(vec![2, 0]),
        ExponentVector::new(vec![0, 2]),
        ExponentVector::new(vec![2, 1]),
        ExponentVector::new(vec![1, 2]),
    ];
    let facets = vec![
        Facet { normal: vec![1, 0], offset: 0 },
        Facet { normal: vec![0, 1], offset: 0 },
        Facet { normal: vec![-1, 0], offset: 2 },
        Facet { normal: vec![-1, -1], offset: 3 },
        Facet { normal: vec![0, -1], offset: 2 },
    ];
    let p = LatticePolytope::from_parts(2, verts, facets).unwrap();
    let ctx = CoxContext::with_expert_kernel_vector(p, vec![2, 2, 1, 1, 1]).unwrap();
    let f_cox = cox::cox_homogenize(&pentagon, &ctx).unwrap();
    println!("pentagon f_cox:");
    for (e, c) in f_cox.terms() {
        println!("  {:?} {c}", e.entries());
    }
    let cfg = SearchConfig { n_max: 12, ..Default::default() };
    let mut hits = Vec::new();
    let cert = cox::cox_certify_traced(&pentagon, &ctx, CoxVariant::Irrelevant, &cfg, |step, _| {
        let n = step.n as i64;
        let target: Vec<i64> = vec![n + 2, n + 2, n + 1, 1, 1];
        let hit = step
            .offenders
            .iter()
            .find(|(e, _)| e.entries() == target.as_slice())
            .map(|(_, c)| c.to_string());
        hits.push((step.n, hit));
    })
    .unwrap();
    println!("pentagon irrelevant expert: {:?}; offender hits {:?}", cert.status, hits);
    let mut hits2 = Vec::new();
    let cert2 = cox::cox_certify_traced(&pentagon, &ctx, CoxVariant::Primitive, &cfg, |step, _| {
        let n = step.n as i64;
        let target: Vec<i64> = vec![n + 2, n + 2, 2 * n + 1, n + 1, 1];
        let hit = step
            .offenders
            .iter()
            .find(|(e, _)| e.entries() == target.as_slice())
            .map(|(_, c)| c.to_string());
        hits2.push((step.n, hit));
    })
    .unwrap();
    println!("pentagon primitive expert: {:?}; diag offender hits {:?}", cert2.status, hits2);

    // quadrilateral with the displayed facet ordering, lambda = (1,1)
    let quad = fixture("quadrilateral.json");
    let qverts = vec![
        ExponentVector::new(vec![0, 0]),
        ExponentVector::new(vec![1, 0]),
        ExponentVector::new(vec![0, 2]),
        ExponentVector::new(vec![3, 2]),
    ];
    let qfacets = vec![
        Facet { normal: vec![1, 0], offset: 0 },
        Facet { normal: vec![0, 1], offset: 0 },
        Facet { normal: vec![-1, 1], offset: 1 },
        Facet { normal: vec![0, -1], offset: 2 },
    ];
    let q = LatticePolytope::from_parts(2, qverts, qfacets).unwrap();
    let qctx = CoxContext::with_expert_kernel_vector(q, vec![1, 2, 1, 3]).unwrap();
    let mut traces = Vec::new();
    let _ = cox::cox_certify_traced(
        &quad,
        &qctx,
        CoxVariant::Irrelevant,
        &SearchConfig { n_max: 8, ..Default::default() },
        |step, _| {
            traces.push((
                step.n,
                step.offenders
                    .iter()
                    .map(|(e, c)| (e.entries().to_vec(), c.to_string()))
                    .collect::<Vec<_>>(),
            ));
        },
    )
    .unwrap();
    for (m, offs) in &traces {
        if m % 2 == 0 && *m >= 2 {
            let nn = (m / 2) as i64;
            let target: Vec<i64> = vec![nn + 1, 2 * nn + 2, nn + 1, 3];
            let hit = offs.iter().find(|(e, _)| e == &target).map(|(_, c)| c.clone());
            println!("quad step {m} (N={nn}): target offender {:?}", hit);
        }
    }
}

#[test]
fn probe_prism_paper_order() {
    // prism with the displayed facet ordering: expect L = diag(2,1,1), w = 0,
    // v = (2,1,1,1,1)
    let verts = vec![
        ExponentVector::new(vec![0, 0, 0]),
        ExponentVector::new(vec![1, 0, 0]),
        ExponentVector::new(vec![0, 2, 0]),
        ExponentVector::new(vec![0, 0, 1]),
        ExponentVector::new(vec![1, 0, 1]),
        ExponentVector::new(vec![0, 2, 1]),
    ];
    let facets = vec![
        Facet { normal: vec![1, 0, 0], offset: 0 },
        Facet { normal: vec![0, 1, 0], offset: 0 },
        Facet { normal: vec![-2, -1, 0], offset: 2 },
        Facet { normal: vec![0, 0, 1], offset: 0 },
        Facet { normal: vec![0, 0, -1], offset: 1 },
    ];
    let p = LatticePolytope::from_parts(3, verts, facets).unwrap();
    let d = geom::detect_simplex_product(&p).unwrap();
    println!("paper-order prism: v {:?}", d.v);
    println!("L {:?}", d.l_matrix);
    println!("w {:?}", d.w_shift);
    println!("collections {:?}", d.factors.iter().map(|f| f.rays.clone()).collect::<Vec<_>>());
    for fac in &d.factors {
        println!(
            "  factor coords {:?} verts {:?} dilation {}",
            fac.coords,
            fac.vertices.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>(),
            fac.dilation
        );
    }
    // f_cox in the paper ordering
    let f = fixture("running_f_dehom.json");
    let ctx = CoxContext::new(p).unwrap();
    let f_cox = cox::cox_homogenize(&f, &ctx).unwrap();
    println!("paper-order f_cox:");
    for (e, c) in f_cox.terms() {
        println!("  {:?} {c}", e.entries());
    }
    println!("v from ctx: {:?}", ctx.v);
    println!("irrelevant membership: {}", cox::irrelevant_membership_check(&f_cox, &ctx));
    let degs = cox::multihomogeneity_degrees(&f_cox, &ctx).unwrap();
    println!("kernel degrees: {degs:?}");
    let cfg = SearchConfig { n_max: 45, ..Default::default() };
    let cert = cox::cox_certify(&f, &ctx, CoxVariant::Primitive, &cfg).unwrap();
    println!(
        "paper-order primitive: {:?} exps {:?} terms {} (collections {:?})",
        cert.status, cert.exponents, cert.product_support_size, ctx.fan.primitive_collections
    );
}

#[test]
fn probe_quad_degrees() {
    // quadrilateral h = f_cox(x^v) weight constancy
    let quad = fixture("quadrilateral.json");
    let qverts = vec![
        ExponentVector::new(vec![0, 0]),
        ExponentVector::new(vec![1, 0]),
        ExponentVector::new(vec![0, 2]),
        ExponentVector::new(vec![3, 2]),
    ];
    let qfacets = vec![
        Facet { normal: vec![1, 0], offset: 0 },
        Facet { normal: vec![0, 1], offset: 0 },
        Facet { normal: vec![-1, 1], offset: 1 },
        Facet { normal: vec![0, -1], offset: 2 },
    ];
    let q = LatticePolytope::from_parts(2, qverts, qfacets).unwrap();
    let qctx = CoxContext::with_expert_kernel_vector(q, vec![1, 2, 1, 3]).unwrap();
    let f_cox = cox::cox_homogenize(&quad, &qctx).unwrap();
    let h = cox::cox_homogenize_diagonal(&quad, &qctx, &[1, 2, 1, 3]).unwrap();
    println!("f_cox kernel degrees: {:?}", cox::multihomogeneity_degrees(&f_cox, &qctx));
    println!("h total degree: {:?}", cox::weight_degree(&h, &[1, 1, 1, 1]));
    println!("h (1,0,1,0): {:?}", cox::weight_degree(&h, &[1, 0, 1, 0]));
    println!("h (0,1,0,1): {:?}", cox::weight_degree(&h, &[0, 1, 0, 1]));
    println!("kernel basis: {:?}", geom::ray_matrix_kernel_basis(&qctx.polytope));
}
