use num_complex::Complex64;
use splitgen::coeffs::ratio;
use splitgen::conditions::Scheme;
use splitgen::lyndon::Word;
use splitgen::solver::{
    build_system, build_system_with_ties, expand_product, solve_newton, solve_newton_real,
    verify_order_approx, verify_order_exact, verify_order_numeric, Coef, Ladder, Op, Ties,
    TruncatedSeries, DEFAULT_STEPS,
};
use splitgen::witt::s_min;
use splitgen::Rational;

fn ruth_ladder() -> Ladder {
    Ladder::exact(&[
        (Op::A, 7, 24),
        (Op::B, 2, 3),
        (Op::A, 3, 4),
        (Op::B, -2, 3),
        (Op::A, -1, 24),
        (Op::B, 1, 1),
    ])
}

fn cubic_root_stage(tied: f64) -> f64 {
    // `tied` equal stages p and one stage 1 - tied·p with tied·p³ + (1 - tied·p)³ = 0
    1.0 / (tied - tied.powf(1.0 / 3.0))
}

#[test]
fn tilde_lowering_reproduces_the_six_factor_ladder() {
    let p: Vec<Coef> = [(7, 24), (3, 8), (3, 8), (-25, 24), (1, 1)]
        .iter()
        .map(|&(n, d)| Coef::Exact(ratio(n, d)))
        .collect();
    assert_eq!(Ladder::from_scheme(Scheme::NonsymmetricTilde, &p).unwrap(), ruth_ladder());
}

#[test]
fn six_factor_ladder_is_third_order() {
    // grade 3 already agrees with e^{x(A+B)}; the numeric fit confirms it
    // independently of the series code
    let l = ruth_ladder();
    let v = verify_order_exact(&l, 2).unwrap();
    assert!(v.ok);
    assert_eq!(v.first_defect_grade, None);
    let s = expand_product::<Rational>(&l, 3).unwrap();
    assert_eq!(s, TruncatedSeries::exp_sum(&[0, 1], 3));
    let v = verify_order_exact(&l, 3).unwrap();
    assert!(v.ok);
    assert_eq!(v.first_defect_grade, Some(4));
    assert!(!verify_order_exact(&l, 4).unwrap().ok);
    let fit = verify_order_numeric(&l, 4, 11, &DEFAULT_STEPS).unwrap();
    assert!((3.7..=4.3).contains(&fit.slope), "{fit:?}");
}

#[test]
fn strang_defect_is_reversal_invariant() {
    // a Lie element of degree n picks up (-1)^(n-1) under word reversal
    let v = verify_order_exact(&Ladder::strang(), 2).unwrap();
    assert!(v.ok);
    assert_eq!(v.first_defect_grade, Some(3));
    assert!(!v.defect.is_zero());
    assert_eq!(v.defect.reversed(), v.defect);
    assert_ne!(v.defect.reversed(), -&v.defect);
}

#[test]
fn trotter_numeric_and_exact() {
    let l = Ladder::first_order();
    assert!(!verify_order_exact(&l, 2).unwrap().ok);
    let fit = verify_order_numeric(&l, 4, 3, &DEFAULT_STEPS).unwrap();
    assert!((1.8..=2.2).contains(&fit.slope));
    let v = verify_order_exact(&l, 1).unwrap();
    assert_eq!(v.defect.coefficient(&Word::from(vec![0, 1])), ratio(1, 2));
}

#[test]
fn fourth_order_three_stage() {
    let sys = build_system(Scheme::Symmetric, 4, 3, true).unwrap();
    assert_eq!(sys.reduced_polys().unwrap().len(), 2);
    let sol = solve_newton_real(&sys, &[1.0, -1.0, 1.0], 1e-12, 100).unwrap();
    let p1 = cubic_root_stage(2.0);
    let v = sol.real_values();
    assert!((v[0] - p1).abs() < 1e-10 && (v[2] - p1).abs() < 1e-10);
    assert!((v[1] - (1.0 - 2.0 * p1)).abs() < 1e-10);
    let again: f64 = sys.residual(&sol.values).unwrap().iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(again < 1e-10);

    let ladder = Ladder::from_scheme(Scheme::Symmetric, &Ladder::coefs_from_complex(&sol.values)).unwrap();
    assert_eq!(ladder.len(), 7);
    let approx = verify_order_approx(&ladder, 4, 1e-12).unwrap();
    assert!(approx.ok, "{:?}", approx.defect_norms);
    assert_eq!(approx.first_defect_grade, Some(5));
    let fit = verify_order_numeric(&ladder, 4, 5, &DEFAULT_STEPS).unwrap();
    assert!((4.6..=5.4).contains(&fit.slope), "{fit:?}");
    assert!(fit.slope >= 4.0 + 0.6);
}

#[test]
fn fourth_order_five_stage_ansatz() {
    let ties = Ties::groups(&[0, 0, 1, 0, 0]).unwrap();
    let sys = build_system_with_ties(Scheme::Symmetric, 4, ties).unwrap();
    let sol = solve_newton_real(&sys, &[0.4, 0.4, -0.6, 0.4, 0.4], 1e-12, 100).unwrap();
    let p = cubic_root_stage(4.0);
    let v = sol.real_values();
    for j in [0, 1, 3, 4] {
        assert!((v[j] - p).abs() < 1e-10);
    }
    assert!((v[2] - (1.0 - 4.0 * p)).abs() < 1e-10);
    let ladder = Ladder::from_scheme(Scheme::Symmetric, &Ladder::coefs_from_complex(&sol.values)).unwrap();
    let fit = verify_order_numeric(&ladder, 4, 5, &DEFAULT_STEPS).unwrap();
    assert!((4.6..=5.4).contains(&fit.slope), "{fit:?}");
}

#[test]
fn system_sizes_match_parameter_counts() {
    let s = build_system(Scheme::Symmetric, 5, 5, true).unwrap();
    assert_eq!(s.equations.len() + 1, s_min(Scheme::Symmetric, 5).unwrap() as usize);
    assert_eq!(s.equations.len() + 1, 4);
    let n = build_system(Scheme::NonsymmetricComplex, 2, 2, false).unwrap();
    assert_eq!(n.reduced_polys().unwrap()[1].to_string(), "p1^2 + p2^2");
    let uniform = [0.2; 5];
    let r = build_system(Scheme::Symmetric, 3, 5, false).unwrap().residual_real(&uniform).unwrap();
    assert!(r[0].abs() < 1e-15);
    assert!((r[1] - 5.0 * 0.2f64.powi(3)).abs() < 1e-15);
}

#[test]
fn complex_third_order() {
    // four F_1 stages; third order forces complex p
    let sys = build_system(Scheme::NonsymmetricComplex, 3, 4, false).unwrap();
    assert_eq!(sys.equations.len() + 1, s_min(Scheme::NonsymmetricComplex, 3).unwrap() as usize);
    let start = [
        Complex64::new(0.3, 0.2),
        Complex64::new(0.2, -0.3),
        Complex64::new(0.2, 0.3),
        Complex64::new(0.3, -0.2),
    ];
    let sol = solve_newton(&sys, &start, 1e-12, 200).unwrap();
    assert!(!sol.is_real(1e-6));
    let half = 0.5 * (1.0 - 1.0 / 3f64.sqrt()) / 2.0;
    assert!(sol.values.iter().all(|z| (z.re - half).abs() < 1e-10 || (z.re - (0.5 - half)).abs() < 1e-10));
    let ladder = Ladder::from_scheme(Scheme::NonsymmetricComplex, &Ladder::coefs_from_complex(&sol.values)).unwrap();
    let v = verify_order_approx(&ladder, 3, 1e-10).unwrap();
    assert!(v.ok, "{:?}", v.defect_norms);
}
