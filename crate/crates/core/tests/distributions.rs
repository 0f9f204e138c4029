use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symtest::distributions::fisher_information_numeric;
use symtest::{fisher_information, Family};

#[test]
fn cdf_inverts_quantile_on_fine_grid() {
    let points = 1_000_000;
    for family in Family::ALL {
        let worst = (1..points)
            .map(|i| {
                let u = i as f64 / points as f64;
                (family.cdf(family.quantile(u)) - u).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "{family}: {worst}");
    }
}

#[test]
fn sampler_histogram_chi_square() {
    // 20 equiprobable bins, 19 degrees of freedom; 50 sits far beyond the
    // 0.9999 quantile (about 46.8)
    let draws = 100_000;
    let bins = 20;
    for family in Family::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut counts = vec![0usize; bins];
        for _ in 0..draws {
            let u = family.cdf(family.sample(&mut rng));
            counts[((u * bins as f64) as usize).min(bins - 1)] += 1;
        }
        let expected = draws as f64 / bins as f64;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 50.0, "{family}: chi-square {chi2}");
    }
}

#[test]
fn fisher_constants_agree_with_quadrature() {
    for family in Family::SMOOTH {
        let exact = fisher_information(family).unwrap();
        let numeric = fisher_information_numeric(family).unwrap();
        assert!((exact - numeric).abs() / exact < 1e-6, "{family}: {exact} vs {numeric}");
    }
}
