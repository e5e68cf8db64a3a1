//! Gerbe groups of six-dimensional toroidal orbifolds: H^3 of the Borel
//! construction, computed from the lattice action.
//!
//!     cargo run --example gerbe_groups

use crystalline::catalog;
use crystalline::cohomology::gerbe_group;
use crystalline::lattice::Lattice;

fn main() {
    // the bare six-torus and the free involution quotient
    let (g, _) = gerbe_group(&Lattice::trivial(6), None);
    println!("T^6 (N = 1):           Gb = {}", g.render());

    let triv2 = Lattice::trivial(6).lift_to(2).unwrap();
    let (g, _) = gerbe_group(&triv2, None);
    println!("trivial action, N = 2: Gb = {}", g.render());

    // rank-6 assemblies from the orbifold table
    for expr in [
        "z7_6",
        "z8_6",
        "z12_4+z3_2",
        "z8_4+z2_1+trivial(1)",
        "z6_5+z2_1",
        "z12_6",
        "z8_5+z2_1",
    ] {
        let recipe = catalog::assemble(expr).unwrap();
        assert_eq!(recipe.lattice.n(), 6, "{expr} is not rank 6");
        let (g, status) = gerbe_group(&recipe.lattice, Some(&recipe));
        println!(
            "{expr:<22} Gb = {:<22} [{}]",
            g.render_primary(),
            status.label()
        );
        if let Some(reason) = status.reason() {
            println!("{:24}{reason}", "");
        }
    }
}
