use cherednik::jacobi::JCParams;
use cherednik::modulation::{Exponent, Verdict};
use cherednik::uncertainty::{verify_witness, Classification, RegimeInput, WitnessConfig};

fn params() -> JCParams {
    JCParams::new(0.75, 0.25).unwrap()
}

fn two() -> Exponent {
    Exponent::Finite(2.0)
}

#[test]
fn heat_kernel_witness_is_finite_on_both_sides() {
    let input = RegimeInput::cowling_price(1.0, 0.1, two(), two());
    let r = verify_witness(&params(), &input, 0.15, &WitnessConfig::default()).unwrap();
    assert_eq!(r.classification, Classification::WitnessExists);
    let s = r.norm_sequences.unwrap();
    eprintln!("{s:#?}");
    assert_eq!(s.spatial_verdict, Verdict::Finite);
    assert_eq!(s.spectral_verdict, Verdict::Finite);
    assert!(s.spectral_cross_check < 1e-6);
}

#[test]
fn spectral_side_diverges_when_b_exceeds_t() {
    let input = RegimeInput::cowling_price(1.0, 0.3, two(), two());
    let r = verify_witness(&params(), &input, 0.2, &WitnessConfig::default()).unwrap();
    let s = r.norm_sequences.unwrap();
    eprintln!("{s:#?}");
    assert_eq!(s.spectral_verdict, Verdict::Divergent);
    assert!(s.spectral.windows(2).all(|w| w[1].norm > 2.0 * w[0].norm));
}

#[test]
fn spatial_side_diverges_beyond_the_interval() {
    let input = RegimeInput::cowling_price(1.0, 0.1, two(), two());
    let r = verify_witness(&params(), &input, 0.3, &WitnessConfig::default()).unwrap();
    let s = r.norm_sequences.unwrap();
    eprintln!("{s:#?}");
    assert_eq!(s.spatial_verdict, Verdict::Divergent);
    assert_eq!(s.spectral_verdict, Verdict::Finite);
}

#[test]
fn interval_endpoints_break_exactly_one_side() {
    let input = RegimeInput::cowling_price(1.0, 0.1, two(), two());
    let config = WitnessConfig::default();
    let at_b = verify_witness(&params(), &input, 0.1, &config).unwrap().norm_sequences.unwrap();
    eprintln!("{at_b:#?}");
    assert_eq!(at_b.spatial_verdict, Verdict::Finite);
    assert_ne!(at_b.spectral_verdict, Verdict::Finite);
    let at_top = verify_witness(&params(), &input, 0.25, &config).unwrap().norm_sequences.unwrap();
    eprintln!("{at_top:#?}");
    assert_ne!(at_top.spatial_verdict, Verdict::Finite);
    assert_eq!(at_top.spectral_verdict, Verdict::Finite);
}

#[test]
fn exponent_sign_predicts_verdict() {
    let config = WitnessConfig::default();
    for (a, b, t) in [(0.5, 0.2, 0.4), (0.5, 0.2, 0.6), (2.0, 0.05, 0.1), (2.0, 0.05, 0.03)] {
        let input = RegimeInput::cowling_price(a, b, two(), two());
        let s = verify_witness(&params(), &input, t, &config).unwrap().norm_sequences.unwrap();
        let spatial = if a - 1.0 / (4.0 * t) < 0.0 { Verdict::Finite } else { Verdict::Divergent };
        let spectral = if b - t < 0.0 { Verdict::Finite } else { Verdict::Divergent };
        assert_eq!(s.spatial_verdict, spatial, "a={a} b={b} t={t}: {s:#?}");
        assert_eq!(s.spectral_verdict, spectral, "a={a} b={b} t={t}: {s:#?}");
    }
}
