//! At prime order every lattice looks locally like a sum of three
//! indecomposables.  Read the multiplicities off low-degree cohomology and
//! check the model reproduces the coefficient page.
//!
//!     cargo run --example p_type_decomposition

use crystalline::cohomology::e2_page;
use crystalline::lattice::{decompose_p_type, Lattice};
use crystalline::linalg::IntMatrix;

fn main() {
    let p = 3u64;
    let model = Lattice::trivial(1)
        .lift_to(p)
        .unwrap()
        .direct_sum(&Lattice::regular(p))
        .unwrap()
        .direct_sum(&Lattice::augmentation_ideal(p).unwrap())
        .unwrap();

    // disguise the sum with a change of basis
    let basis = IntMatrix::from_rows(&[
        vec![1, 0, 1, 0, 0, 0],
        vec![0, 1, 0, 0, 1, 0],
        vec![0, 0, 1, 0, 0, 1],
        vec![0, 0, 0, 1, 0, 0],
        vec![-1, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
    ]);
    let inv = crystalline::linalg::inverse_unimodular(&basis).unwrap();
    let disguised = Lattice::new(basis.mul(model.action()).mul(&inv), p).unwrap();
    println!("disguised action: {}", disguised.action());

    let d = decompose_p_type(&disguised).unwrap();
    println!(
        "(r, s, t) = ({}, {}, {}) at p = {}  — rank {} = {} + {}·{} + {}·{}",
        d.r,
        d.s,
        d.t,
        d.p,
        d.rank(),
        d.r,
        d.s,
        p,
        d.t,
        p - 1
    );

    // the reconstruction has the same coefficient page, entry for entry
    let lhs = e2_page(&disguised, 6);
    let rhs = e2_page(&d.reconstruct(), 6);
    let mut agree = true;
    for k in 0..=6usize {
        for j in 0..=disguised.n().min(k) {
            agree &= lhs.entry(k - j, j) == rhs.entry(k - j, j);
        }
    }
    println!("page of the reconstruction agrees entrywise: {agree}");
    for k in 0..=4 {
        println!("  H^{k} = {}", lhs.antidiagonal(k).render());
    }
}
