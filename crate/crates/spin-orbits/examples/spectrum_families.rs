//! Enumerate the K-type spectra R(O, psi) for the model orbit [3,2,2,1]
//! of so(8), and the matching unipotent K-structures Xi.

use std::str::FromStr;

use spin_orbits::orbits::OrbitLabel;
use spin_orbits::spectra::{
    characters_of, enumerate_family, regular_section_family, unipotent_modules, Cutoff,
};

fn main() -> spin_orbits::Result<()> {
    let n = 4;
    let orbit = OrbitLabel::from_str("3,2,2,1")?;
    let cutoff = Cutoff::SumAbs(3);

    for cl in characters_of(&orbit, n)? {
        let fam = regular_section_family(&orbit, n, cl.psi)?;
        let weights = enumerate_family(&fam, cutoff);
        println!("R({}, {}), sum |a_i| <= 3:", orbit, cl.psi);
        for w in &weights {
            println!("  {w}");
        }
    }

    println!();
    for (name, fam) in unipotent_modules(&orbit, n)? {
        let count = enumerate_family(&fam, cutoff).len();
        println!("{name}: {count} K-types up to the cutoff");
    }
    Ok(())
}
