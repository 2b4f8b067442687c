use std::path::PathBuf;

use rootcloud_core::cy::{euler_cy3, euler_cy4, filter, poincare_cy3, poincare_cy4};
use rootcloud_core::ingest::{self, HodgeFile};
use rootcloud_core::{HodgeCY3, HodgeCY4, Predicate};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn threefold_sample_counts() {
    let f: HodgeFile<HodgeCY3> = ingest::parse(&data("cy3_sample.txt")).unwrap();
    let distinct = f.distinct();
    let mirror = filter(&distinct, Predicate::Cy3SelfMirror).unwrap();
    println!("cy3 raw={} distinct={} self_mirror={}", f.raw_count, f.distinct_count, mirror.len());
    assert_eq!((f.raw_count, f.distinct_count, mirror.len()), (646, 571, 16));
    for h in &distinct {
        assert_eq!(poincare_cy3(h).evaluate_int(&(-1).into()), euler_cy3(h).into());
    }
}

#[test]
fn fourfold_sample_counts() {
    let f: HodgeFile<HodgeCY4> = ingest::parse(&data("cy4_sample.txt")).unwrap();
    let distinct = f.distinct();
    let eq = filter(&distinct, Predicate::Cy4H11EqH31).unwrap();
    let chi0 = filter(&distinct, Predicate::Cy4ChiZero).unwrap();
    println!("cy4 raw={} distinct={} h11_eq_h31={} chi_zero={}", f.raw_count, f.distinct_count, eq.len(), chi0.len());
    assert_eq!((f.raw_count, f.distinct_count, eq.len(), chi0.len()), (764, 695, 80, 1));
    for h in &distinct {
        assert!(h.b4_is_admissible());
        assert_eq!(poincare_cy4(h).evaluate_int(&(-1).into()), euler_cy4(h).into());
    }
}
