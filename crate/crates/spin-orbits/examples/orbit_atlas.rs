//! Print the atlas of small nilpotent orbits of so(2n) for a few ranks:
//! partition, case labels, dimension, component groups, and the
//! infinitesimal character of the attached unipotent representations.

use spin_orbits::orbits::{
    component_group, enumerate_small_orbits, infinitesimal_character, Ambient,
};

fn main() -> spin_orbits::Result<()> {
    for n in [3usize, 4, 5] {
        println!("== so({}) ==", 2 * n);
        for o in enumerate_small_orbits(n)? {
            let cases: Vec<String> = o.cases.iter().map(|c| c.to_string()).collect();
            let a_so = component_group(&o.label, Ambient::SO);
            let a_spin = component_group(&o.label, Ambient::Spin);
            println!(
                "  {:<16} {:<18} dim {:>3}  A_SO = {:<5} A_Spin = {:<5} lambda_O = {}",
                o.label.to_string(),
                cases.join(" "),
                o.dim,
                a_so.group_type.to_string(),
                a_spin.group_type.to_string(),
                infinitesimal_character(&o.label, n)?,
            );
        }
        println!();
    }
    Ok(())
}
