#[path = "support/oracle.rs"]
mod oracle;

use qrm_core::approx::GaaVariant;
use qrm_core::crossings::bracket_limit;
use qrm_core::{
    crossing_count_certificate, exact_spectrum, find_crossings, gaa_pair, normalized_constraint, ModelParams,
};

const DELTAS: [f64; 5] = [0.5, 1.2, 2.5, 3.3, 4.7];

#[test]
fn crossing_count_law() {
    for &delta in &DELTAS {
        for n in 0..=6 {
            let c = crossing_count_certificate(n, delta, 1.0).unwrap();
            assert!(c.passes(), "delta={delta} n={n}: {c:?}");
        }
    }
}

#[test]
fn counts_match_exact_sturm_sequences() {
    for &delta in &DELTAS {
        let d = oracle::rational(delta);
        let d2 = d.clone() * d;
        for n in 0..=8 {
            let poly = oracle::constraint_poly_in_x(n, &d2);
            let expected = oracle::sturm_positive_roots(&poly);
            let found = find_crossings(n, delta, 1.0).unwrap().len();
            assert_eq!(found, expected, "delta={delta} n={n}");
        }
    }
}

#[test]
fn roots_are_sign_changes_of_the_exact_polynomial() {
    for &delta in &DELTAS {
        let d = oracle::rational(delta);
        let d2 = d.clone() * d;
        for n in 1..=6 {
            let poly = oracle::constraint_poly_in_x(n, &d2);
            let x_max = bracket_limit(n, delta);
            let sup = (0..=2048)
                .map(|i| {
                    let g = (x_max * i as f64 / 2048.0).sqrt();
                    normalized_constraint(n, &ModelParams { delta, omega: 1.0, g }).unwrap().abs()
                })
                .fold(1.0, f64::max);
            for point in find_crossings(n, delta, 1.0).unwrap() {
                let x = point.g_star * point.g_star;
                let lo = oracle::eval_f64(&poly, x * (1.0 - 1e-9));
                let hi = oracle::eval_f64(&poly, x * (1.0 + 1e-9));
                assert!(lo.signum() != hi.signum(), "delta={delta} n={n} g={}", point.g_star);
                assert!(point.residual < 1e-12 * sup, "residual {} vs scale {sup}", point.residual);
            }
        }
    }
}

#[test]
fn generalized_pairs_close_exactly_at_roots() {
    for &delta in &DELTAS {
        for n in 1..=6 {
            for point in find_crossings(n, delta, 1.0).unwrap() {
                let gap = gaa_pair(n, &point.params(), GaaVariant::K).unwrap().gap();
                assert!(gap.abs() < 1e-12 * delta, "delta={delta} n={n}: gap {gap}");
            }
        }
    }
}

#[test]
fn roots_coincide_with_exact_level_crossings() {
    for &delta in &[0.7, 1.2, 2.0] {
        for n in 1..=4 {
            for point in find_crossings(n, delta, 1.0).unwrap() {
                let levels = exact_spectrum(&point.params(), 2 * n + 6, 1e-12).unwrap().values();
                let close = levels.iter().filter(|e| (*e - point.energy).abs() < 1e-5).count();
                assert!(close >= 2, "delta={delta} n={n} g={}", point.g_star);
            }
        }
    }
}

#[test]
fn frequency_rescaling() {
    for n in 1..=5 {
        let unit = find_crossings(n, 1.2, 1.0).unwrap();
        let scaled = find_crossings(n, 3.0, 2.5).unwrap();
        assert_eq!(unit.len(), scaled.len());
        for (a, b) in unit.iter().zip(&scaled) {
            assert!((2.5 * a.g_star - b.g_star).abs() < 1e-12 * b.g_star);
        }
    }
}
