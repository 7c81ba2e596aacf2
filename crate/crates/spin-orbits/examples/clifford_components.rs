//! Component groups of orbit centralizers computed inside the Clifford
//! algebra: the blockwise Ep elements, their multiplication table, and the
//! theta path showing that -1 in Spin lies on the identity component of
//! the centralizer of the sl2 chain.

use std::str::FromStr;

use spin_orbits::clifford::{component_group_table, ep_commutation, theta_path_check};
use spin_orbits::orbits::OrbitLabel;

fn main() -> spin_orbits::Result<()> {
    let rel = ep_commutation(1, 0);
    println!(
        "Ep3^2 = {}, Ep1^2 = {}, anticommute: {}",
        rel.square_a, rel.square_b, rel.anticommute
    );

    let theta = theta_path_check(1);
    println!(
        "theta path: theta(0) = 1: {}, theta(2pi) = -1: {}",
        theta.at_zero_is_identity, theta.at_2pi_is_minus_identity
    );
    println!();

    for label in ["3,2,2,1", "3,1,1,1,1,1", "2,2,1,1,1,1"] {
        let orbit = OrbitLabel::from_str(label)?;
        let table = component_group_table(&orbit, 4)?;
        println!("{orbit}: A_Spin = {} of order {}", table.component_group, table.order);
        println!("  generators: {}", table.element_names.join(", "));
        for (i, row) in table.products.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                println!(
                    "  {} * {} = {}",
                    table.element_names[i], table.element_names[j], table.element_names[k]
                );
            }
        }
        println!();
    }
    Ok(())
}
