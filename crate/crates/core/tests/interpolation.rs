mod common;

use feec_weights::interp::zero_norm;
use feec_weights::{
    build_complex, check_commuting, convergence_experiment, interpolate, BaryPolynomial, ExperimentConfig, FormField,
    Interpolator, PolyForm, Triangle, Q,
};
use num_bigint::BigInt;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn smooth() -> (FormField, FormField) {
    let cfg = ExperimentConfig::standard(2);
    (cfg.omega, cfg.d_omega)
}

#[test]
fn zero_norm_is_monotone_in_density() {
    let t = Triangle::unit_right();
    let (w, dw) = smooth();
    for f in [&w, &dw] {
        let mut prev = 0.0;
        for m in [1, 2, 3, 5, 8, 13, 20] {
            let n = zero_norm(f, &t, m, 12).unwrap();
            assert_eq!(n.density, m);
            assert!(n.value >= prev, "k={} m={m}: {} < {prev}", f.k(), n.value);
            prev = n.value;
        }
    }
}

#[test]
fn zero_norm_of_constants() {
    let t = Triangle::unit_right();
    let c = FormField::scalar(|_| -2.5);
    assert!((zero_norm(&c, &t, 3, 4).unwrap().value - 2.5).abs() < 1e-15);
    // a constant 1-form (a, b) gives |a| on horizontal edges, |b| on vertical ones and
    // |a - b|/√2 on the diagonals
    let v = zero_norm(&FormField::one_form(|_| [3.0, -1.0]), &t, 4, 4).unwrap().value;
    assert!((v - 3.0).abs() < 1e-12, "{v}");
    let v = zero_norm(&FormField::one_form(|_| [1.0, -2.0]), &t, 4, 4).unwrap().value;
    assert!((v - 3.0 / 2f64.sqrt()).abs() < 1e-12, "{v}");
    assert!(zero_norm(&FormField::two_form(|_| 1.0), &t, 3, 4).is_err());
}

#[test]
fn polynomial_targets_have_zero_residual() {
    // ω = 1 + 2x - y + x² lies in every space of degree ≥ 2, dω in degree ≥ 1
    let mut cfg = ExperimentConfig::standard(5);
    cfg.omega = FormField::scalar(|p| 1.0 + 2.0 * p[0] - p[1] + p[0] * p[0]);
    cfg.d_omega = FormField::one_form(|p| [2.0 + 2.0 * p[0], -1.0]);
    cfg.norm_density = 10;
    let table = convergence_experiment(&cfg).unwrap();
    for row in &table.rows {
        assert!(row.residual_norm < 1e-11, "r={} k={}: {}", row.r, row.k, row.residual_norm);
    }
    assert!(table.get(5, 0).is_some());
    assert!(table.get(4, 1).is_some());
}

#[test]
fn experiment_columns_follow_degree_convention() {
    let table = convergence_experiment(&ExperimentConfig::standard(4)).unwrap();
    let k0: Vec<u32> = table.column(0).iter().map(|r| r.r).collect();
    let k1: Vec<u32> = table.column(1).iter().map(|r| r.r).collect();
    assert_eq!(k0, vec![2, 3, 4]);
    assert_eq!(k1, vec![1, 2, 3]);
    let csv = table.to_csv();
    assert!(csv.starts_with("r,k,residual_norm,norm_reference\n"));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn projection_on_a_general_triangle() {
    let t = Triangle::figure();
    let mut rng = common::rng(7);
    for r in 2..=4 {
        let c = build_complex(&t, r).unwrap();
        for k in 0..3 {
            let pi = Interpolator::new(&c, k).unwrap();
            for _ in 0..10 {
                let w = common::form(&mut rng, k, r as u32 - k as u32);
                assert_eq!(pi.interpolate(&w).unwrap().to_form().unwrap(), w);
            }
        }
    }
}

#[test]
fn commuting_on_a_general_triangle() {
    let t = Triangle::figure();
    let mut rng = common::rng(8);
    for r in 2..=4 {
        for deg in [r as u32 - 1, r as u32 + 2] {
            let w = common::form(&mut rng, 0, deg);
            assert!(check_commuting(&w, &t, r).unwrap());
        }
    }
}

#[test]
fn interpolation_outside_the_space_matches_weights() {
    let t = Triangle::unit_right();
    let c = build_complex(&t, 3).unwrap();
    let w = PolyForm::one_form(BaryPolynomial::lambda(1).pow(4), BaryPolynomial::lambda(0).pow(3));
    let pi = Interpolator::new(&c, 1).unwrap();
    let p = pi.interpolate(&w).unwrap().to_form().unwrap();
    let lhs = feec_weights::weights::de_rham_cochain(&p, &c).unwrap();
    let rhs = feec_weights::weights::de_rham_cochain(&w, &c).unwrap();
    assert_eq!(lhs, rhs);
    assert_ne!(p, w);
}

#[test]
fn numeric_and_exact_interpolants_agree() {
    let t = Triangle::unit_right();
    let c = build_complex(&t, 4).unwrap();
    let w = PolyForm::scalar(BaryPolynomial::lambda(1).pow(6).scale(&q(3, 2)));
    let pi = Interpolator::new(&c, 0).unwrap();
    let exact = pi.interpolate(&w).unwrap().to_field();
    let numeric = pi.interpolate_numeric(&FormField::from_poly(&w, &t), 16).unwrap().to_field();
    for p in [[0.1, 0.2], [0.5, 0.25], [0.3, 0.6]] {
        assert!((exact.eval(p)[0] - numeric.eval(p)[0]).abs() < 1e-10);
    }
    assert!(interpolate(&w, &t, 1).is_err());
}
