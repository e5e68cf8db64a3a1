//! The eigenvalue test for six-dimensional actions: no eigenvalue 1, and
//! one exponent from each conjugate pair summing to zero mod N.  Passing it
//! means the torus quotient is a Calabi–Yau orbifold (it admits a crepant
//! resolution).
//!
//!     cargo run --example calabi_yau

use crystalline::catalog::{assemble, calabi_yau_check};
use crystalline::lattice::Lattice;
use crystalline::linalg::IntMatrix;

fn main() {
    for expr in [
        "z7_6",
        "z8_6",
        "z12_6",
        "z8_4+z2_1+trivial(1)",
        "z6_3+z6_3",
        "z3_2+z3_2+z3_2",
    ] {
        let lattice = assemble(expr).unwrap().lattice;
        let report = calabi_yau_check(&lattice).unwrap();
        println!(
            "{expr:<22} {}  exponents {:?}{}",
            if report.satisfied { "PASS" } else { "FAIL" },
            report.exponents,
            match report.selection {
                Some([a, b, c]) => format!("  selection {a}+{b}+{c} = 0 mod {}", lattice.order()),
                None => format!("  ({})", report.reason),
            }
        );
    }

    // the trivial torus fails: eigenvalue 1 everywhere
    let report = calabi_yau_check(&Lattice::trivial(6)).unwrap();
    println!("trivial(6)             FAIL  ({})", report.reason);

    // -I on Z^6: no eigenvalue 1, but every selection sums to an odd number
    let minus = Lattice::new(IntMatrix::identity(6).neg(), 2).unwrap();
    let report = calabi_yau_check(&minus).unwrap();
    println!("-I on Z^6              FAIL  ({})", report.reason);
}
