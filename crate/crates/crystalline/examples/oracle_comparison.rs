//! Cross-check the degreewise formula against the brute-force twisted
//! resolution, degree by degree.
//!
//!     cargo run --example oracle_comparison

use crystalline::catalog::oracle_setup;
use crystalline::oracle::{compare, resolution_rank, twisted_resolution};

fn main() {
    for expr in ["sign", "ig3", "ig5", "rho4", "rho7", "z8_4"] {
        let setup = oracle_setup(expr, None).unwrap();
        let l = setup.tau.lattice();
        let report = compare(l, &setup.tau, 6).unwrap();
        println!("{expr} (n = {}, N = {}):", l.n(), l.order());
        for d in &report.degrees {
            println!(
                "  k={}: formula {:<14} resolution {:<14} {}",
                d.k,
                d.formula.render(),
                d.oracle.render(),
                if d.matched { "match" } else { "MISMATCH" }
            );
        }
        println!();
    }

    // the local data for the order-12 rank-4 lattice lives at each Sylow prime
    for p in [2u64, 3] {
        let setup = oracle_setup("z12_4", Some(p)).unwrap();
        let report = compare(setup.tau.lattice(), &setup.tau, 5).unwrap();
        println!(
            "z12_4 at p = {p}: {} (source restriction has order {})",
            if report.all_match() { "all degrees match" } else { "MISMATCH" },
            setup.source.order()
        );
    }

    // what the resolution looks like inside
    let setup = oracle_setup("ig3", None).unwrap();
    let res = twisted_resolution(setup.tau.lattice(), &setup.tau, 4).unwrap();
    println!("\nig3 resolution ranks:");
    for k in 0..=4 {
        println!(
            "  degree {k}: rank {} = {}",
            res.rank(k),
            resolution_rank(setup.tau.lattice().n(), k)
        );
    }
    println!(
        "vertical blocks augment to zero: {}",
        res.vertical_blocks_augment_to_zero()
    );
}
