//! Verify, orbit by orbit at n = 4, that the K-type spectra of the
//! unipotent representations match the regular-function spectra R(O, psi)
//! bijectively, and that the psi-families tile the spectrum of R(O).

use spin_orbits::orbits::enumerate_small_orbits;
use spin_orbits::spectra::{verify_matchup, Cutoff};

fn main() -> spin_orbits::Result<()> {
    let n = 4;
    for o in enumerate_small_orbits(n)? {
        let report = verify_matchup(&o.label, n, Cutoff::SumAbs(6))?;
        println!("{}:", o.label);
        for pair in &report.pairs {
            println!(
                "  {} <-> {}: {} K-types, matched: {}",
                pair.psi, pair.xi, pair.count, pair.matched
            );
        }
        println!(
            "  families disjoint: {}, union = spectrum of R(O): {}",
            report.families_disjoint, report.union_is_connected_spectrum
        );
    }
    Ok(())
}
