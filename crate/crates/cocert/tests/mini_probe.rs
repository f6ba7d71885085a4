use cocert::jsonio;
use cocert::polya::{self, SearchConfig, SearchMode};
use cocert::rational::{parse_rational, rational_from_i64 as q};

#[test]
fn mini_timing() {
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
    for nmax in [40usize, 80] {
        let start = std::time::Instant::now();
        let cfg = SearchConfig { n_max: nmax, mode: SearchMode::Nonneg, ..Default::default() };
        let cert = polya::sparse_polya_certify(&f, &cfg).unwrap();
        println!("nonneg nmax {nmax}: {:?} in {:.1?} ({} terms)", cert.status, start.elapsed(), cert.product_support_size);
        let start = std::time::Instant::now();
        let cfg = SearchConfig { n_max: nmax, mode: SearchMode::StrictSupport, ..Default::default() };
        let cert = polya::sparse_polya_certify(&f, &cfg).unwrap();
        println!("strict nmax {nmax}: {:?} in {:.1?}", cert.status, start.elapsed());
    }
}
