//! Brute-force oracle: realize V(lambda) as explicit matrices, compute the
//! subspace fixed by the centralizer of a nilpotent representative, and
//! split it under the component group. The result is compared with the
//! closed-form spectrum families for a handful of weights.

use std::str::FromStr;

use spin_orbits::oracle::{build_irrep, invariant_dimension, Embedding};
use spin_orbits::orbits::OrbitLabel;
use spin_orbits::spectra::{characters_of, regular_section_family};
use spin_orbits::{Capacity, Weight};

fn main() -> spin_orbits::Result<()> {
    let n = 4;
    let caps = Capacity::default();
    let orbit = OrbitLabel::from_str("3,2,2,1")?;

    let lambda = Weight::integral(&[2, 1, 1, 0]);
    let rep = build_irrep(&lambda, n, Embedding::Standard, caps.d_mat)?;
    println!("V({lambda}) has dimension {}", rep.dim());

    for coords in [[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [2, 1, 1, 0]] {
        let lambda = Weight::integral(&coords);
        let inv = invariant_dimension(&orbit, n, &lambda, &caps)?;
        let split: Vec<String> = inv
            .character_split
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        println!(
            "{orbit} at {lambda}: fixed dim {} ({})",
            inv.fixed_dim,
            split.join(", ")
        );
        // cross-check against the closed-form family membership
        for cl in characters_of(&orbit, n)? {
            let fam = regular_section_family(&orbit, n, cl.psi)?;
            if fam.contains(&lambda) {
                println!("  families predict: {}", cl.psi);
            }
        }
    }
    Ok(())
}
