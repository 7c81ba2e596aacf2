//! The Levi-restriction step behind the Case 1 spectrum: for a dominant
//! integral weight, locate the sp(n-2)-fixed summand of the Pieri tensor
//! attached to each short Weyl element, and show that the ad h eigenvalue
//! separates the length-zero term from the three length-one terms.

use spin_orbits::spectra::bgg_case1_analysis;
use spin_orbits::Weight;

fn main() -> spin_orbits::Result<()> {
    for coords in [[3i64, 2, 1, 0], [4, 4, 2, -2], [2, 2, 2, 2]] {
        let lambda = Weight::integral(&coords);
        let rep = bgg_case1_analysis(&lambda, 4)?;
        println!("lambda = {lambda}");
        println!("  fixed Levi weight (w = e): {:?}", rep.fixed_weight);
        println!("  ad h eigenvalue: {}", rep.h_eigenvalue);
        println!("  -<wth> for w_0..w_3: {:?}", rep.wth_values);
        println!("  length-one values distinct from w_0: {}", rep.separated);
    }
    Ok(())
}
