//! Independent check of the spectra by induction: restrict each K-type of
//! Spin(4p) to Spin(2p) x Spin(2p), pair against the four sigma types
//! built from the half-spin representations, and compare the resulting 0/1
//! multiplicities with the psi-families of the model orbit.

use std::str::FromStr;

use spin_orbits::oracle::{branching_induction_oracle, SigmaType};
use spin_orbits::orbits::OrbitLabel;
use spin_orbits::spectra::{characters_of, regular_section_family};

fn main() -> spin_orbits::Result<()> {
    let p = 2;
    let orbit = OrbitLabel::from_str("3,2,2,1")?;
    let psis = characters_of(&orbit, 2 * p)?;
    let sigmas = [SigmaType::I, SigmaType::II, SigmaType::III, SigmaType::IV];

    for (sigma, cl) in sigmas.iter().zip(&psis) {
        let fam = regular_section_family(&orbit, 2 * p, cl.psi)?;
        let oracle = branching_induction_oracle(p, *sigma, 3, 200_000)?;
        let mut agree = true;
        let mut hits = 0usize;
        for (lambda, mult) in &oracle.entries {
            if *mult == 1 {
                hits += 1;
            }
            agree &= (*mult == 1) == fam.contains(lambda);
        }
        println!(
            "sigma {sigma} vs R({orbit}, {}): {hits} K-types, agree: {agree}",
            cl.psi
        );
    }
    Ok(())
}
