//! Prints the asymptotic regime map over `(alpha, beta)` and the finite-size
//! condition report for one clustering instance.
//!
//!     cargo run --example regime_map

use planted::regimes::{asymptotic_regime_clustering, clustering_report, regime_boundaries, ConditionConstants, RegimeLabel};
use planted::PlantedParams;

fn glyph(l: RegimeLabel) -> char {
    match l {
        RegimeLabel::Impossible => '.',
        RegimeLabel::Hard => 'h',
        RegimeLabel::Easy => 'e',
        RegimeLabel::Simple => 'S',
        RegimeLabel::HighSnr => '+',
        RegimeLabel::Boundary => '|',
    }
}

fn main() -> planted::Result<()> {
    println!("beta (rows, top = 0.98) against alpha (columns, 0.02 .. 0.98)");
    println!("  . impossible   h hard   e easy   S simple");
    for b in (1..50).rev() {
        let beta = b as f64 / 50.0;
        let row: String = (1..50).map(|a| glyph(asymptotic_regime_clustering(a as f64 / 50.0, beta).unwrap())).collect();
        println!("{beta:5.2} {row}");
    }
    let [info, comp, count] = regime_boundaries(0.3);
    println!("\nboundaries at alpha = 0.3: information {info}, computational {comp:.2}, counting {count}");

    let params = PlantedParams::new(400, 5, 80, 0.9, 0.1)?;
    let report = clustering_report(&params, &ConditionConstants::default())?;
    println!("\n{report}");
    Ok(())
}
