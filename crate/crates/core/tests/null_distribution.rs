use symtest::nulldist::{power_curve, simulate_null_from, PowerSpec};
use symtest::{p_value, run_test, sample_location, simulate_null, Family, Kind, NullTable, Sided, Variant};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn table_bytes_independent_of_worker_count() {
    let build = |threads| {
        pool(threads).install(|| {
            let mut t = simulate_null(Kind::Integral, 3, Variant::U, 40, 2000, 91).unwrap();
            t.created = 0;
            t.to_json().unwrap()
        })
    };
    let one = build(1);
    assert_eq!(one, build(4));
    assert_eq!(one, build(7));
}

#[test]
fn table_survives_disk_round_trip() {
    let dir = std::env::temp_dir().join(format!("symtest-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let table = simulate_null(Kind::Kolmogorov, 2, Variant::V, 30, 300, 5).unwrap();
    table.write(&path).unwrap();
    let back = NullTable::read(&path).unwrap();
    assert_eq!(back, table);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn kolmogorov_replicates_in_unit_interval() {
    let t = simulate_null(Kind::Kolmogorov, 2, Variant::U, 500, 1000, 12).unwrap();
    assert!(t.replicates.iter().all(|v| (0.0..=1.0).contains(v)));
}

#[test]
fn null_p_values_are_uniform() {
    let n = 30;
    let table = simulate_null(Kind::Integral, 2, Variant::U, n, 10_000, 1).unwrap();
    // a second, independent run plays the role of the observed statistics
    let observed = simulate_null(Kind::Integral, 2, Variant::U, n, 10_000, 2).unwrap();
    let mut ps: Vec<f64> = observed
        .replicates
        .iter()
        .map(|&value| {
            let stat = symtest::StatValue { kind: Kind::Integral, k: 2, variant: Variant::U, n, value };
            p_value(&table, &stat, Sided::Right).unwrap()
        })
        .collect();
    ps.sort_by(f64::total_cmp);
    let m = ps.len() as f64;
    let ks = ps
        .iter()
        .enumerate()
        .map(|(i, &p)| ((i + 1) as f64 / m - p).abs().max((p - i as f64 / m).abs()))
        .fold(0.0, f64::max);
    assert!(ks < 0.02, "KS distance {ks}");
}

#[test]
fn cube_transform_keeps_p_value() {
    let table = simulate_null(Kind::Integral, 2, Variant::U, 50, 1000, 3).unwrap();
    let sample = sample_location(Family::Logistic, 0.1, 50, 17);
    let cubed = sample.map(|x| x * x * x).unwrap();
    let a = run_test(&sample, Kind::Integral, 2, Variant::U, 0.05, Sided::Two, &table).unwrap();
    let b = run_test(&cubed, Kind::Integral, 2, Variant::U, 0.05, Sided::Two, &table).unwrap();
    assert_eq!(a.p_value, b.p_value);
    assert_eq!(a.statistic, b.statistic);
}

#[test]
fn decision_record_round_trips_through_json() {
    let table = simulate_null(Kind::Kolmogorov, 2, Variant::U, 25, 200, 8).unwrap();
    let sample = sample_location(Family::Normal, 0.0, 25, 4);
    let d = run_test(&sample, Kind::Kolmogorov, 2, Variant::U, 0.1, Sided::Two, &table).unwrap();
    let text = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<symtest::TestDecision>(&text).unwrap(), d);
    assert_eq!(d.sided, Sided::Right);
    assert_eq!(d.table_master_seed, 8);
}

#[test]
fn other_families_give_matching_null_tables() {
    let uniform = simulate_null(Kind::Kolmogorov, 2, Variant::U, 20, 500, 6).unwrap();
    for family in Family::SMOOTH {
        let other = simulate_null_from(family, Kind::Kolmogorov, 2, Variant::U, 20, 500, 6).unwrap();
        assert_eq!(other.replicates, uniform.replicates, "{family}");
    }
}

fn spec(family: Family, kind: Kind, n: usize, trials: usize) -> PowerSpec {
    PowerSpec {
        family,
        kind,
        k: 2,
        variant: Variant::U,
        n,
        trials,
        alpha: 0.05,
        sided: Sided::Two,
        master_seed: 2024,
    }
}

#[test]
fn unit_shift_is_detected_at_n200() {
    let s = spec(Family::Normal, Kind::Integral, 200, 500);
    let table = s.null_table(2000).unwrap();
    let curve = power_curve(&s, &[1.0], &table).unwrap();
    assert!(curve[0].rejection_rate > 0.9, "{curve:?}");
}

#[test]
fn power_curve_shape() {
    let s = spec(Family::Logistic, Kind::Integral, 100, 1000);
    let table = s.null_table(2000).unwrap();
    let thetas = [0.0, 0.1, 0.2, 0.3, 0.5];
    let curve = power_curve(&s, &thetas, &table).unwrap();

    let size = &curve[0];
    let se = (0.05f64 * 0.95 / s.trials as f64).sqrt();
    assert!((size.rejection_rate - 0.05).abs() <= 3.0 * se, "{size:?}");
    for w in curve.windows(2) {
        let slack = 2.0 * (w[0].std_error.powi(2) + w[1].std_error.powi(2)).sqrt();
        assert!(w[1].rejection_rate + slack >= w[0].rejection_rate, "{w:?}");
    }

    let bigger = PowerSpec { n: 400, ..s.clone() };
    let big_table = bigger.null_table(2000).unwrap();
    let small = power_curve(&s, &[0.15], &table).unwrap()[0];
    let large = power_curve(&bigger, &[0.15], &big_table).unwrap()[0];
    assert!(large.rejection_rate > small.rejection_rate, "{small:?} vs {large:?}");
}
