//! Print the page of coefficients H^i(Z/N, Λ^j(L*)) whose antidiagonals
//! assemble the cohomology of the semidirect product.
//!
//!     cargo run --example e2_page

use crystalline::catalog;
use crystalline::cohomology::e2_page;

fn main() {
    for name in ["ig3", "rho6"] {
        let entry = catalog::preset(name).unwrap();
        let kmax = entry.lattice.n() + 2;
        let page = e2_page(&entry.lattice, kmax);
        println!(
            "{name}: H^i(Z/{}, Λ^j(L*)), rows j = {}..0",
            page.order(),
            page.n()
        );
        for j in (0..=page.n()).rev() {
            print!("  j={j} |");
            for i in 0..=kmax {
                print!(" {:>9}", page.entry(i, j).render());
            }
            println!();
        }
        print!("       ");
        for i in 0..=kmax {
            print!(" {:>9}", format!("i={i}"));
        }
        println!("\n");
        for k in 0..=kmax {
            println!("  H^{k} = {}", page.antidiagonal(k).render());
        }
        println!();
    }
}
