// Temporary exploration for the graph-polynomial side.

use cocert::feynman::{self, RegionOutcome};
use cocert::jsonio;
use cocert::polya::{SearchConfig, SearchMode};
use cocert::rational::{parse_rational, rational_from_i64 as q};

fn graph(name: &str) -> (feynman::FeynmanGraph, feynman::KinematicSpec) {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let s = std::fs::read_to_string(path).unwrap();
    jsonio::parse_graph_str(&s).unwrap()
}

#[test]
fn probe_banana() {
    let (g, kin) = graph("banana.json");
    println!("loops {}", g.loop_number());
    let u = g.first_symanzik();
    for (e, c) in u.terms() {
        println!("U {:?} {c}", e.entries());
    }
    println!("trees: {:?}", g.spanning_trees());
    println!("2-forests: {:?}", g.spanning_2forests());
    let f = g.second_symanzik(&kin).unwrap();
    for (e, form) in f.terms() {
        println!("F {:?} [{}]", e.entries(), form.render());
    }
    let (support, flags) = feynman::generic_support(&g, &kin).unwrap();
    println!("generic support {} points", support.len());
    for fl in &flags {
        println!("  {:?} a1={} a2={} mass={} vertex={}", fl.point.entries(), fl.in_a1, fl.in_a2, fl.involves_mass, fl.is_vertex);
    }
    let (g0, kin0) = graph("banana_m3zero.json");
    let f0 = g0.second_symanzik(&kin0).unwrap();
    println!("m3=0 support {} points", f0.num_terms());
    for (e, form) in f0.terms() {
        println!("F0 {:?} [{}]", e.entries(), form.render());
    }
    match feynman::euclidean_region_nonempty(&g, &kin).unwrap().outcome {
        RegionOutcome::Nonempty { witness } => println!("banana region nonempty, witness {witness:?}"),
        RegionOutcome::Empty { .. } => println!("banana region EMPTY?!"),
    }

    // instantiation at the benchmark point
    let assignment = [
        ("m1".to_string(), q(1)),
        ("m2".to_string(), q(1)),
        ("m3".to_string(), q(1)),
        ("s".to_string(), parse_rational("897/100").unwrap()),
    ]
    .into_iter()
    .collect();
    let inst = f.instantiate(&assignment).unwrap();
    for (e, c) in inst.terms() {
        println!("inst {:?} {c}", e.entries());
    }

    // convergence with cheap positive s
    let cheap: std::collections::BTreeMap<String, cocert::Rational> = [
        ("m1".to_string(), q(1)),
        ("m2".to_string(), q(1)),
        ("m3".to_string(), q(1)),
        ("s".to_string(), q(-1)),
    ]
    .into_iter()
    .collect();
    let cfg = SearchConfig { n_max: 5, mode: SearchMode::StrictSupport, ..Default::default() };
    let rep = feynman::convergence_check(&g, &kin, &cheap, &[q(1), q(1), q(1)], &q(1), &cfg).unwrap();
    println!("convergence (s=-1, nu=1, D=1): cert {:?} containment {} verdict {:?}", rep.certificate.status, rep.newton_containment, rep.verdict);
    let rep2 = feynman::convergence_check(&g, &kin, &cheap, &[q(1), q(1), q(1)], &q(2), &cfg).unwrap();
    println!("convergence (s=-1, nu=1, D=2): cert {:?} containment {} verdict {:?}", rep2.certificate.status, rep2.newton_containment, rep2.verdict);
    let rep3 = feynman::convergence_check(&g, &kin, &cheap, &[q(2), q(0), q(1)], &q(2), &cfg).unwrap();
    println!("convergence (s=-1, nu=(2,0,1), D=2): cert {:?} containment {} verdict {:?}", rep3.certificate.status, rep3.newton_containment, rep3.verdict);
}

#[test]
fn probe_doublebox() {
    let (g, kin) = graph("doublebox.json");
    println!("loops {}", g.loop_number());
    let f = g.second_symanzik(&kin).unwrap();
    println!("F has {} terms, degree {:?}", f.num_terms(), f.homogeneous_degree());
    for (e, form) in f.terms() {
        println!("F {:?} [{}]", e.entries(), form.render());
    }
    match feynman::euclidean_region_nonempty(&g, &kin).unwrap().outcome {
        RegionOutcome::Nonempty { witness } => println!("doublebox region nonempty, witness {witness:?}"),
        RegionOutcome::Empty { .. } => println!("doublebox region EMPTY?!"),
    }

    let (g0, kin0) = graph("doublebox_m2zero.json");
    let report = feynman::euclidean_region_nonempty(&g0, &kin0).unwrap();
    match &report.outcome {
        RegionOutcome::Nonempty { witness } => println!("m2=0 region NONEMPTY?! {witness:?}"),
        RegionOutcome::Empty { combination, constant } => {
            println!("m2=0 region empty; constant {constant}");
            for (idx, mult) in combination {
                println!("  {} * [{}] ({:?})", mult, report.forms[*idx].1.render(), report.forms[*idx].0.entries());
            }
        }
    }
}

#[test]
fn probe_trees_oracle() {
    // Kirchhoff count via Bareiss on a couple of graphs
    let (g, _) = graph("doublebox.json");
    println!("doublebox trees: {}", g.spanning_trees().len());
    println!("doublebox 2-forests: {}", g.spanning_2forests().len());
}
