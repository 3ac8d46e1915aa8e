use bazilevic_core::classes::{
    bazilevic_construct, decompose_pk, herglotz_polynomial, herglotz_to_series, in_named_subclass, in_p_rho, in_pk_rho,
    pk_combine, Atom, BazilevicParams, NamedClass,
};
use bazilevic_core::operator::{apply_operator, bernardi, bernardi_inverse, MultiplierTable};
use bazilevic_core::series::max_residual;
use bazilevic_core::theorems::{
    empirical_radius, extremal_hypothesis_function, radius_r1, sample_measure, sharp_radius_kernel,
    solve_bernardi_target, verify, ParamSource, TheoremId, VerifyConfig,
};
use bazilevic_core::{
    BernardiParams, ClassParams, Complex, DiskProbe, Error, HerglotzMeasure, MembershipReport, NormalizedSeries,
    OperatorParams, TruncatedSeries, Verdict,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[test]
fn series_json_round_trip_through_operator() {
    let f = TruncatedSeries::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.1, -0.2), c(1.0 / 3.0, 0.7)]).unwrap();
    let op = OperatorParams::new(2, 0.3, c(1.1, 0.4), c(0.7, 0.0)).unwrap();
    let g = apply_operator(&f, &op).unwrap();
    let text = serde_json::to_string(&g).unwrap();
    let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(back, g);
    let op_back: OperatorParams = serde_json::from_str(&serde_json::to_string(&op).unwrap()).unwrap();
    assert_eq!(op_back, op);
}

#[test]
fn malformed_json_is_rejected() {
    assert!(serde_json::from_str::<TruncatedSeries>(r#"{"order": 2, "coeffs": [[0, 0], [1, 0]]}"#).is_err());
    assert!(serde_json::from_str::<NormalizedSeries>(r#"{"order": 1, "coeffs": [[2, 0], [1, 0]]}"#).is_err());
    let cp: ClassParams = serde_json::from_str(r#"{"k": 3, "rho": 0.2, "theta": 1.5, "gamma": [0.5, 0]}"#).unwrap();
    assert_eq!(cp.exponent, 1.5);
}

#[test]
fn membership_report_json() {
    let p = herglotz_to_series(&HerglotzMeasure::point(0.0), 0.0, 64).unwrap();
    let rep = in_p_rho(&p, 0.0, &DiskProbe::new(vec![0.5], 256, 1e-6).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::to_value(rep).unwrap();
    assert_eq!(v["verdict"], "member");
    let back: MembershipReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn bernardi_round_trip_and_libera() {
    let f = TruncatedSeries::from_real(&[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
    let b = BernardiParams::new(1.0).unwrap();
    let g = bernardi(&f, &b).unwrap();
    // Libera: aₙ ↦ 2aₙ/(n+1).
    for n in 1..=4 {
        assert!((g.coeff(n).re - 2.0 * n as f64 / (n as f64 + 1.0)).abs() < 1e-15);
    }
    assert!(max_residual(&bernardi_inverse(&g, &b).unwrap(), &f).unwrap() < 1e-15);
}

#[test]
fn decomposition_of_sampled_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in [2.0, 3.0, 4.0] {
        for _ in 0..50 {
            let mu = sample_measure(&mut rng, k).unwrap();
            let (p1, p2) = decompose_pk(&mu, k, 0.3, 32).unwrap();
            let p = herglotz_to_series(&mu, 0.3, 32).unwrap();
            assert!(max_residual(&pk_combine(&p1, &p2, k).unwrap(), &p).unwrap() <= 1e-12);
        }
    }
}

#[test]
fn bazilevic_function_is_in_b1() {
    // f built from a starlike g and p ∈ P satisfies zf'(f/z)^{ϑ-1}/(g/z)^ϑ = p.
    let g = TruncatedSeries::from_real(&(0..=24).map(|n| n as f64).collect::<Vec<_>>()).unwrap();
    let p = herglotz_polynomial(&HerglotzMeasure::point(2.0), 0.0, 23).unwrap();
    let bp = BazilevicParams {
        exponent: 0.75,
        tau: 0.0,
        g: g.clone(),
        p: p.clone(),
    };
    let f = bazilevic_construct(&bp, 24).unwrap();
    let lhs = f
        .derivative()
        .multiply(&f.quotient_by_z().unwrap().power(-0.25).unwrap())
        .unwrap()
        .divide(&g.quotient_by_z().unwrap().power(0.75).unwrap())
        .unwrap();
    assert!(max_residual(&lhs, &p).unwrap() < 1e-10);
    let json = serde_json::to_string(&bp).unwrap();
    assert!(json.contains("\"theta\":0.75"));
}

#[test]
fn named_subclass_verdicts() {
    let probe = DiskProbe::default();
    let f = TruncatedSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
    let rep = in_named_subclass(&f, &NamedClass::M { rho: 0.0 }, &probe).unwrap();
    assert_eq!(rep.verdict, Verdict::Member);
    let f = TruncatedSeries::from_real(&[0.0, 1.0, 2.0]).unwrap();
    let rep = in_named_subclass(&f, &NamedClass::B4 { rho: 0.0 }, &probe).unwrap();
    assert_eq!(rep.verdict, Verdict::NonMember);
}

#[test]
fn extremal_function_radius_exceeds_formula() {
    // The kernel (1+z)/(1-z) as hypothesis function: the functional keeps
    // positive real part up to √(1+c²) - c with c = λγ/ϑ, above r₁.
    let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
    let op = OperatorParams::al_oboudi(0, 1.0);
    let f = extremal_hypothesis_function(&cp, &op, 512).unwrap();
    let probe = DiskProbe::new(vec![0.5, 0.9], 2048, 1e-6).unwrap();
    let r = empirical_radius(&f, &cp, &op, &probe).unwrap();
    let exact = sharp_radius_kernel(1.0, 1.0, 1.0).unwrap();
    assert!((r.r_empirical - (2f64.sqrt() - 1.0)).abs() < 1e-4);
    assert!((exact - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    assert_eq!(r.r_formula, radius_r1(1.0, 1.0, 1.0).unwrap());
    assert!(r.gap > 0.1);
}

#[test]
fn fixed_parameter_verification() {
    let cfg = VerifyConfig {
        trials: 20,
        seed: 3,
        params: ParamSource::Fixed {
            class: ClassParams::real(4.0, 0.25, 1.0, 2.0).unwrap(),
            operator: OperatorParams::new(1, 0.5, c(1.5, 0.2), c(1.0, 0.0)).unwrap(),
            sigma: 2.0,
            gamma1: None,
        },
        ..VerifyConfig::default()
    };
    for id in [TheoremId::T21, TheoremId::T22, TheoremId::T31, TheoremId::T41] {
        let rep = verify(id, &cfg).unwrap();
        assert_eq!(rep.failures, 0, "{id}");
        assert_eq!(rep.theorem, id);
    }
}

#[test]
fn invalid_inputs_surface_typed_errors() {
    assert!(matches!(
        MultiplierTable::new(&OperatorParams::al_oboudi(0, -1.0), 4),
        Err(Error::InvalidParameter(_))
    ));
    let not_a = TruncatedSeries::from_real(&[0.0, 2.0]).unwrap();
    assert!(matches!(
        apply_operator(&not_a, &OperatorParams::identity()),
        Err(Error::NotClassA(_))
    ));
    assert!(matches!(
        HerglotzMeasure::new(vec![Atom { theta: 0.0, w: 3.0 }]),
        Err(Error::InvalidMeasure(_))
    ));
    let q = NormalizedSeries::one(4);
    assert!(solve_bernardi_target(&q, 0.0, &OperatorParams::identity(), &BernardiParams { sigma: 0.0 }).is_err());
    assert_eq!(Error::GammaPole(c(-1.0, 0.0)).kind(), "gamma-pole");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn nonnegative_measures_give_pk_members(
        atoms in prop::collection::vec((0.0..std::f64::consts::TAU, 0.01f64..1.0), 1..=6),
        rho in 0.0f64..0.9,
        k in 2.0f64..6.0,
    ) {
        let s: f64 = atoms.iter().map(|a| a.1).sum();
        let mu = HerglotzMeasure { atoms: atoms.iter().map(|&(theta, w)| Atom { theta, w: 2.0 * w / s }).collect() };
        let p = herglotz_polynomial(&mu, rho, 48).unwrap();
        let rep = in_pk_rho(&p, k, rho, &DiskProbe::default()).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Member);
    }

    #[test]
    fn radius_formula_bounds(lg in 1e-6f64..20.0, theta in 0.1f64..5.0) {
        let r = radius_r1(lg, 1.0, theta).unwrap();
        prop_assert!(r > 0.0 && r < 1.0);
        prop_assert!(r < sharp_radius_kernel(lg, 1.0, theta).unwrap());
    }
}
