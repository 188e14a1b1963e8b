use padic::Fp;
use polylog::{dilog_scan, g2_at_sixth_roots_mod_p, g_series_mod_p, primes_below, randomness_product, ScanConfig};

#[test]
fn sieve_small() {
    assert_eq!(primes_below(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    assert!(primes_below(2).is_empty());
}

#[test]
fn harmonic_form_matches_the_recursion() {
    for p in [7u64, 13, 19, 31, 37, 43, 61] {
        let g2 = g_series_mod_p(p, 2).unwrap();
        let f = Fp::new(p);
        for (z, v) in g2_at_sixth_roots_mod_p(p).unwrap() {
            let horner = g2.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, z), c));
            assert_eq!(v, horner, "p={p} z={z}");
        }
    }
}

#[test]
fn scan_to_one_hundred() {
    let r = dilog_scan(&ScanConfig { bound: 100, ..Default::default() }).unwrap();
    let primes: Vec<u64> = r.verdicts.iter().map(|(p, _)| *p).collect();
    assert_eq!(primes, vec![7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97]);
    assert!(r.vanishing.is_empty());
    assert!(r.verdicts.iter().all(|(_, v)| *v));
}

#[test]
fn scan_rejects_small_bounds() {
    assert!(dilog_scan(&ScanConfig { bound: 6, ..Default::default() }).is_err());
}

#[test]
fn parallelism_does_not_change_verdicts() {
    let one = dilog_scan(&ScanConfig { bound: 3000, jobs: Some(1), checkpoint: None }).unwrap();
    let four = dilog_scan(&ScanConfig { bound: 3000, jobs: Some(4), checkpoint: None }).unwrap();
    assert_eq!(one, four);
}

#[test]
fn interrupted_scan_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.txt");
    let cfg = |bound| ScanConfig { bound, jobs: Some(2), checkpoint: Some(path.clone()) };
    let first = dilog_scan(&cfg(2000)).unwrap();
    assert_eq!(first.resumed, 0);
    // simulate an interruption: keep only part of the file
    let text = std::fs::read_to_string(&path).unwrap();
    let kept: Vec<&str> = text.lines().take(40).collect();
    std::fs::write(&path, kept.join("\n") + "\n").unwrap();
    let resumed = dilog_scan(&cfg(4000)).unwrap();
    assert_eq!(resumed.resumed, 40);
    let fresh = dilog_scan(&ScanConfig { bound: 4000, ..Default::default() }).unwrap();
    assert_eq!(resumed.verdicts, fresh.verdicts);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), fresh.primes_checked);
}

#[test]
fn corrupt_checkpoint_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.txt");
    std::fs::write(&path, "7 nonzero\n13 maybe\n").unwrap();
    let err = dilog_scan(&ScanConfig { bound: 100, jobs: None, checkpoint: Some(path) }).unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
}

#[test]
fn randomness_product_values() {
    assert!((randomness_product(8) - 6.0 / 7.0).abs() < 1e-12);
    assert!((randomness_product(100_000) - 0.413).abs() < 0.0005);
}
