//! Decompose the tensor squares of the half-spin representations of so(2p)
//! and compare with the closed-form sum of fundamental representations.
//! For odd p the two printed formulas trade places; the character oracle
//! is authoritative.

use spin_orbits::spectra::pinrep_decomposition;

fn main() -> spin_orbits::Result<()> {
    for p in 2..=4usize {
        let rep = pinrep_decomposition(p, 200_000)?;
        println!("p = {p}");
        println!("  SPIN+ (x) SPIN+ = {:?}", rep.oracle_same);
        println!("  SPIN+ (x) SPIN- = {:?}", rep.oracle_mixed);
        println!(
            "  formulas agree: same {}, mixed {}, swapped-mod-sign {}",
            rep.same_agrees, rep.mixed_agrees, rep.swap_agrees_mod_last_sign
        );
    }
    Ok(())
}
