// Timing probe for the large power searches.

use cocert::feynman;
use cocert::jsonio;
use cocert::polya::{self, SearchConfig, SearchMode};
use cocert::rational::{parse_rational, rational_from_i64 as q};

#[test]
fn probe_banana_heavy() {
    let path = format!("{}/tests/fixtures/banana.json", env!("CARGO_MANIFEST_DIR"));
    let s = std::fs::read_to_string(path).unwrap();
    let (g, kin) = jsonio::parse_graph_str(&s).unwrap();
    let assignment = [
        ("m1".to_string(), q(1)),
        ("m2".to_string(), q(1)),
        ("m3".to_string(), q(1)),
        ("s".to_string(), parse_rational("897/100").unwrap()),
    ]
    .into_iter()
    .collect();
    let f = g.second_symanzik(&kin).unwrap().instantiate(&assignment).unwrap();

    for mode in [SearchMode::StrictSupport, SearchMode::Nonneg] {
        let start = std::time::Instant::now();
        let cfg = SearchConfig { n_max: 700, mode, ..Default::default() };
        let cert = polya::sparse_polya_certify(&f, &cfg).unwrap();
        println!(
            "sparse {mode:?}: {:?} N {:?} product terms {} in {:.1?}",
            cert.status,
            cert.exponents,
            cert.product_support_size,
            start.elapsed()
        );
    }
    for mode in [SearchMode::StrictSupport, SearchMode::Nonneg] {
        let start = std::time::Instant::now();
        let cfg = SearchConfig { n_max: 700, mode, ..Default::default() };
        let cert = polya::classical_polya_certify(&f, &cfg).unwrap();
        println!(
            "classical {mode:?}: {:?} N {:?} product terms {} in {:.1?}",
            cert.status,
            cert.exponents,
            cert.product_support_size,
            start.elapsed()
        );
    }
    let _ = feynman::FmOutcome::Feasible(vec![]);
}
