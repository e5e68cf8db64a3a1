//! Run the compatibility verifier: the named actions pass, a deliberately
//! wrong one fails with a degree-1 witness, and actions round-trip through
//! their JSON form.
//!
//!     cargo run --example verify_actions

use crystalline::koszul::{
    tau_ig, tau_permutation, tau_preset, verify_compatibility, RingMatrix, TauAction, PRESET_NAMES,
};
use crystalline::lattice::Lattice;

fn main() {
    for name in PRESET_NAMES {
        let preset = tau_preset(name).unwrap();
        let l = preset.tau.lattice().clone();
        let report = verify_compatibility(&l, &preset.tau, l.n());
        println!(
            "{name:<14} {}  (degrees checked: {}{})",
            if report.pass { "PASS" } else { "FAIL" },
            report.degrees_checked,
            match (&preset.base_change, preset.local_prime) {
                (Some(_), Some(p)) => format!(", local at p = {p}, base change recorded"),
                (Some(_), None) => ", base change recorded".to_string(),
                _ => String::new(),
            }
        );
    }

    for order in 2..=8u64 {
        let tau = tau_ig(order).unwrap();
        let report = verify_compatibility(tau.lattice(), &tau, tau.lattice().n());
        println!("ig({order})          {}", if report.pass { "PASS" } else { "FAIL" });
    }

    let tau = tau_permutation(&[1, 2, 3, 0], 4).unwrap();
    let report = verify_compatibility(tau.lattice(), &tau, 4);
    println!("4-cycle        {}", if report.pass { "PASS" } else { "FAIL" });

    // the identity is not compatible with the sign action
    let sign = Lattice::sign();
    let bad = TauAction::new(sign.clone(), RingMatrix::identity(1, 1)).unwrap();
    let report = verify_compatibility(&sign, &bad, 1);
    let failure = report.failure.unwrap();
    println!("\nbad action on the sign lattice: FAIL at {:?}", failure.axiom);
    println!("witness: {}", failure.witness);

    // serialized form of an action, as the CLI consumes it
    let tau = tau_ig(3).unwrap();
    let rows = tau.to_rows_json().unwrap();
    println!(
        "\nig(3) as JSON rows:\n{}",
        serde_json::to_string_pretty(&rows).unwrap()
    );
    let back = TauAction::from_rows_json(tau.lattice().clone(), &rows).unwrap();
    assert_eq!(back.matrix(), tau.matrix());
}
