//! Walk the catalog: the named matrices, their coverage, and the local
//! (r, s, t) decomposition at prime order.
//!
//!     cargo run --example catalog_tour

use crystalline::catalog;
use crystalline::lattice::{decompose_p_type, Lattice};

fn main() {
    println!("{:<8} {:>2} {:>3}  action", "name", "n", "N");
    for name in catalog::names() {
        let e = catalog::preset(name).unwrap();
        let action = match (&e.local_action, e.collapse_verified) {
            (catalog::LocalAction::Automatic, _) => "automatic (square-free)".to_string(),
            (catalog::LocalAction::Known(how), _) => format!("known: {how}"),
            (catalog::LocalAction::NotKnown, true) => "none; table computed directly".to_string(),
            (catalog::LocalAction::NotKnown, false) => "none known".to_string(),
        };
        println!(
            "{:<8} {:>2} {:>3}  {}{}",
            e.name,
            e.lattice.n(),
            e.lattice.order(),
            action,
            if e.orbifold_table { "  [orbifold table]" } else { "" }
        );
    }

    // every matrix is stored verbatim; companion forms transpose to the
    // augmentation-ideal form
    let z7 = catalog::preset("z7_6").unwrap();
    let ig7 = Lattice::augmentation_ideal(7).unwrap();
    assert_eq!(&z7.lattice.action().transpose(), ig7.action());
    println!("\nz7_6 is the transpose of ig(7): {}", z7.lattice.action());

    // local types at prime order
    println!();
    for (name, p) in [("ig5", 5u64), ("regular(3)", 3), ("trivial(4)", 2)] {
        let e = catalog::preset(name).unwrap();
        let l = if e.lattice.order() == 1 {
            e.lattice.lift_to(p).unwrap()
        } else {
            e.lattice
        };
        let d = decompose_p_type(&l).unwrap();
        println!("{name}: (r, s, t) = ({}, {}, {}) at p = {}", d.r, d.s, d.t, d.p);
    }

    // Sylow restriction exposes the local pieces of composite orders
    let z12 = catalog::preset("z12_4").unwrap().lattice;
    let at3 = z12.restrict_to_sylow(3).unwrap();
    let d = decompose_p_type(&at3).unwrap();
    println!(
        "z12_4 restricted to its 3-Sylow: order {}, (r, s, t) = ({}, {}, {})",
        at3.order(),
        d.r,
        d.s,
        d.t
    );
}
