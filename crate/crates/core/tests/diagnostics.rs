mod common;

use common::*;

use swarmdim::diagnostics::{
    classify_dimension, cluster_decomposition, correlation_integral, estimate_correlation_dimension,
    euler_lagrange_check, radial_histogram, riesz_energy,
};
use swarmdim::minimize::{init_configuration, minimize, MinimizerSettings};
use swarmdim::potentials::PotentialSpec;

#[test]
fn circle_has_correlation_dimension_one() {
    let fit = estimate_correlation_dimension(&circle(1000, 1)).unwrap();
    assert!((fit.corr_dim - 1.0).abs() <= 0.15, "{fit:?}");
}

#[test]
fn disk_has_correlation_dimension_two() {
    let fit = estimate_correlation_dimension(&disk(1000, 2)).unwrap();
    assert!((fit.corr_dim - 2.0).abs() <= 0.2, "{fit:?}");
}

#[test]
fn tight_clusters_have_correlation_dimension_near_zero() {
    let fit = estimate_correlation_dimension(&point_clusters(1000, 1e-6, 3)).unwrap();
    assert!(fit.corr_dim <= 0.2, "{fit:?}");
}

#[test]
fn coincident_points_are_degenerate() {
    let c = config(2, vec![[0.3, 0.3, 0.0]; 20]);
    let fit = estimate_correlation_dimension(&c).unwrap();
    assert_eq!((fit.corr_dim, fit.fit_r2), (0.0, 1.0));
}

#[test]
fn correlation_dimension_ignores_rigid_motions() {
    let c = disk(300, 4);
    let moved = c
        .with_positions(c.positions().iter().map(|p| {
            let q = rotate(p, 2, [0.7, 0.0, 0.0]);
            [q[0] + 3.0, q[1] - 1.0, 0.0]
        }).collect())
        .unwrap();
    let a = estimate_correlation_dimension(&c).unwrap().corr_dim;
    let b = estimate_correlation_dimension(&moved).unwrap().corr_dim;
    assert!((a - b).abs() < 1e-10, "{a} vs {b}");
}

#[test]
fn correlation_integral_limits() {
    let c = disk(200, 5);
    let got = correlation_integral(&c, &[1e-9, 0.2, 0.5, 10.0]).unwrap();
    assert_eq!(got[0], 0.0);
    assert_eq!(got[3], 1.0);
    assert!(got.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn three_cluster_oracle() {
    let c = point_clusters(300, 1e-4, 6);
    let clusters = cluster_decomposition(&c, 0.01);
    assert_eq!(clusters.len(), 3);
    let mut all: Vec<usize> = clusters.iter().flat_map(|k| k.indices.clone()).collect();
    all.sort_unstable();
    assert_eq!(all, (0..300).collect::<Vec<_>>());
    for k in &clusters {
        assert!((k.mass - 1.0 / 3.0).abs() < 1e-12);
    }
    let two = config(1, vec![[0.0; 3], [5.0, 0.0, 0.0]]);
    assert_eq!(cluster_decomposition(&two, 1.0).len(), 2);
    assert_eq!(cluster_decomposition(&two, 10.0).len(), 1);
}

#[test]
fn classifier_on_synthetic_sets() {
    let dim_of = |c| classify_dimension(&c, None).unwrap().classified_dim;
    assert_eq!(dim_of(circle(600, 7)), Some(1));
    assert_eq!(dim_of(disk(600, 8)), Some(2));
    let report = classify_dimension(&point_clusters(600, 1e-6, 9), None).unwrap();
    assert_eq!((report.classified_dim, report.cluster_count), (Some(0), 3));
    let mut r = rng(10);
    let sphere: Vec<_> = (0..500)
        .map(|_| loop {
            let p = random_point(&mut r, 3, 1.0);
            let n = norm(&p);
            if n > 0.1 && n <= 1.0 {
                break [p[0] / n, p[1] / n, p[2] / n];
            }
        })
        .collect();
    assert_eq!(dim_of(config(3, sphere)), Some(2));
    let ball: Vec<_> = (0..500)
        .map(|_| loop {
            let p = random_point(&mut r, 3, 1.0);
            if norm(&p) <= 1.0 {
                break p;
            }
        })
        .collect();
    assert_eq!(dim_of(config(3, ball)), Some(3));
}

#[test]
fn small_configurations_are_not_classified() {
    let report = classify_dimension(&disk(9, 11), None).unwrap();
    assert!(report.classification_refused);
    assert_eq!(report.classified_dim, None);
    assert_eq!(report.radial_histogram.iter().map(|b| b.1).sum::<usize>(), 9);
}

#[test]
fn radial_histogram_of_a_sphere_has_one_bin() {
    let polygon = (0..100)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 100.0;
            [1.7 * t.cos(), 1.7 * t.sin(), 0.0]
        })
        .collect();
    let hist = radial_histogram(&config(2, polygon), 40);
    let occupied: Vec<_> = hist.iter().filter(|b| b.1 > 0).collect();
    assert_eq!(occupied.len(), 1);
    assert_eq!(occupied[0].1, 100);
}

#[test]
fn riesz_small_cases() {
    let pair = config(1, vec![[0.0; 3], [1.0, 0.0, 0.0]]);
    assert!((riesz_energy(&pair, 1.0) - 0.5).abs() < 1e-15);
    let c = random_configuration(&mut rng(13), 2, 25);
    let squares: f64 = c.masses().iter().map(|m| m * m).sum();
    assert!((riesz_energy(&c, 0.0) - (1.0 - squares)).abs() < 1e-14);
    let twins = config(1, vec![[0.5, 0.0, 0.0]; 2]);
    assert_eq!(riesz_energy(&twins, 1.0), f64::INFINITY);
}

#[test]
fn two_body_euler_lagrange() {
    let spec = PotentialSpec::power_law(2.0, 4.0);
    let pair = config(1, vec![[0.0; 3], [1.0, 0.0, 0.0]]);
    let el = euler_lagrange_check(&pair, &spec, 200, 1, None).unwrap();
    assert!((el.two_e + 0.125).abs() < 1e-15);
    for v in &el.v_values {
        assert!((v + 0.125).abs() < 1e-15);
    }
    assert!(el.per_component_stddev.iter().all(|&s| s == 0.0));
}

#[test]
fn euler_lagrange_report_ignores_translation() {
    let spec = PotentialSpec::power_law(1.5, 7.0);
    let init = init_configuration(80, 2, 1.0, 14, None).unwrap();
    let settings = MinimizerSettings {
        max_iters: 1500,
        ..Default::default()
    };
    let (end, _) = minimize(&init, &spec, &settings).unwrap();
    let moved = end
        .with_positions(end.positions().iter().map(|p| [p[0] + 2.0, p[1] - 0.5, 0.0]).collect())
        .unwrap();
    let a = euler_lagrange_check(&end, &spec, 400, 3, None).unwrap();
    let b = euler_lagrange_check(&moved, &spec, 400, 3, None).unwrap();
    assert_eq!(a.component_sizes, b.component_sizes);
    assert_eq!(a.off_support_violations, b.off_support_violations);
    for (x, y) in a.v_values.iter().zip(&b.v_values) {
        assert!((x - y).abs() < 1e-12);
    }
    assert!(a.max_relative_stddev < 1e-2, "{}", a.max_relative_stddev);
}
