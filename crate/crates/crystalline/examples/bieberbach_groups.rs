//! Torsion-free crystallographic groups with prime holonomy: the lattice
//! splits off a trivial summand, and the cohomology is a two-term sum that
//! vanishes above the rank.
//!
//!     cargo run --example bieberbach_groups

use crystalline::cohomology::bieberbach_cohomology;
use crystalline::lattice::Lattice;

fn show(title: &str, nlat: &Lattice, kmax: usize) {
    let result = bieberbach_cohomology(nlat, kmax).unwrap();
    println!("{title}  (holonomy Z/{}, total rank {})", nlat.order(), nlat.n() + 1);
    for (k, g) in result.groups.iter().enumerate() {
        println!("  H^{k} = {}", g.render());
    }
    if let Some(z) = result.zero_from {
        println!("  zero for k >= {z}\n");
    }
}

fn main() {
    // the Klein bottle group: holonomy lattice is the sign representation
    show("Klein bottle", &Lattice::sign(), 4);

    // trivial holonomy lattice gives the 2-torus
    show("2-torus", &Lattice::trivial(1).lift_to(2).unwrap(), 3);

    // a rank-3 example: sign ⊕ sign at p = 2
    let nlat = Lattice::sign().direct_sum(&Lattice::sign()).unwrap();
    show("rank-3, holonomy Z/2", &nlat, 4);

    // an odd-prime example over the rank-2 augmentation ideal
    show(
        "rank-3, holonomy Z/3",
        &Lattice::augmentation_ideal(3).unwrap(),
        4,
    );
}
