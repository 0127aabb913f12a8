//! Regime classification for the three uncertainty principles and a
//! numerical probe of the heat-kernel witness.

use cherednik::jacobi::JCParams;
use cherednik::modulation::Exponent;
use cherednik::uncertainty::{classify, verify_witness, RegimeInput, WitnessConfig};

fn main() -> cherednik::Result<()> {
    let two = Exponent::Finite(2.0);
    let inputs = [
        RegimeInput::cowling_price(1.0, 0.25, two, two),
        RegimeInput::cowling_price(1.0, 0.1, two, two),
        RegimeInput::hardy(1.0, 1.0),
        RegimeInput::hardy(1.0, 0.25),
        RegimeInput::hardy(1.0, 0.1),
        RegimeInput::morgan(1.0, 1.0, two, two, 3.0),
        RegimeInput::morgan(0.05, 0.05, two, two, 4.0),
    ];
    for input in &inputs {
        let r = classify(input)?;
        println!(
            "{:?} a={} b={}: {:?} (product {:.6}, threshold {:.6}) {}",
            input.principle, input.a, input.b, r.classification, r.product, r.threshold,
            r.witness_family.unwrap_or_default()
        );
    }

    let p = JCParams::new(0.75, 0.25)?;
    let r = verify_witness(&p, &inputs[1], 0.15, &WitnessConfig::default())?;
    let s = r.norm_sequences.expect("probe requested");
    println!("witness t = 0.15: spatial {:?}, spectral {:?}", s.spatial_verdict, s.spectral_verdict);
    println!("{}", r.verdict_notes);
    Ok(())
}
