//! Compute H^*(Z^n ⋊ Z/N, Z) for a few lattices and print the tables.
//!
//!     cargo run --example total_cohomology

use crystalline::catalog;
use crystalline::cohomology::total_cohomology;
use crystalline::lattice::Lattice;

fn show(title: &str, lattice: &Lattice, recipe: Option<&catalog::SumRecipe>, kmax: usize) {
    let result = total_cohomology(lattice, kmax, recipe);
    println!("{title}  (n = {}, N = {})", lattice.n(), lattice.order());
    for (k, g) in result.groups.iter().enumerate() {
        println!("  H^{k} = {}", g.render());
    }
    match result.status.reason() {
        None => println!("  status: proved"),
        Some(r) => println!("  status: conjectural — {r}"),
    }
    println!("  (2-periodic from degree {})\n", result.periodic_from);
}

fn main() {
    // the infinite dihedral group Z ⋊ Z/2
    show("sign", &Lattice::sign(), None, 5);

    // a faithful rank-3 action of Z/4 whose table is known
    let recipe = catalog::assemble("rho6").unwrap();
    show("rho6", &recipe.lattice.clone(), Some(&recipe), 6);

    // an order-4 lattice with no coverage: reported, but flagged
    let recipe = catalog::assemble("rho8").unwrap();
    show("rho8", &recipe.lattice.clone(), Some(&recipe), 5);

    // direct sums assemble in the catalog expression grammar
    let recipe = catalog::assemble("z8_4+z2_1+trivial(1)").unwrap();
    show("z8_4 + z2_1 + trivial(1)", &recipe.lattice.clone(), Some(&recipe), 4);
}
