use exotic_core::conormal::{rsk_table, RskConfig};
use exotic_core::golden::table2_rows;
use exotic_core::qprime::{count_t_prime, enumerate_t_prime};

#[test]
fn n2_matches_bundled_table() {
    let rows = rsk_table(2, &RskConfig::default()).unwrap();
    let golden = table2_rows().unwrap();
    assert_eq!(rows.len(), golden.len());
    for (r, g) in rows.iter().zip(&golden) {
        assert_eq!(r.param(), &g.param);
        assert_eq!(r.pair().bp, g.bp, "{}", g.param);
        assert_eq!(r.pair().tab.descents(), g.descents, "{}", g.param);
    }
}

#[test]
fn n2_table_is_seed_independent() {
    let a = rsk_table(2, &RskConfig::default()).unwrap();
    let cfg = RskConfig {
        seed: 99,
        ..RskConfig::default()
    };
    let b = rsk_table(2, &cfg).unwrap();
    let pairs = |rows: &[exotic_core::conormal::RskRow]| rows.iter().map(|r| r.pair().clone()).collect::<Vec<_>>();
    assert_eq!(pairs(&a), pairs(&b));
}

#[test]
fn bijective_up_to_n3() {
    for (n, size) in [(1, 3), (2, 21), (3, 215)] {
        assert_eq!(enumerate_t_prime(n).len(), size);
        assert!(count_t_prime(n).ok());
        let rows = rsk_table(n, &RskConfig::default()).unwrap();
        assert_eq!(rows.len(), size);
        for r in &rows {
            let total = 2 * n * n + n;
            assert_eq!(r.orbit_dim + r.conormal_dim, total, "{}", r.param());
            assert_eq!(r.z_dim + r.springer_dim, total, "{}", r.param());
        }
    }
}

#[test]
fn other_prime_gives_same_table() {
    let cfg = RskConfig {
        field: exotic_core::PrimeField::new(1_000_000_007).unwrap(),
        ..RskConfig::default()
    };
    let a = rsk_table(2, &cfg).unwrap();
    let b = rsk_table(2, &RskConfig::default()).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.pair(), y.pair());
    }
}
