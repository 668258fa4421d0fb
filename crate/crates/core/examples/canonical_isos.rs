//! Checks a few canonical isomorphisms for naturality and invertibility, and
//! shows the one unit map that is not invertible.

use cyclic_operads::isos::{
    associator, exchange, pre_lie_iso, pre_lie_right_unit, product_derivative, triangle_iso,
};
use cyclic_operads::zoo::{comm_species, cyclic_orders_species};
use cyclic_operads::{Bounds, Species};

fn main() {
    let (s, t) = (cyclic_orders_species(), comm_species());
    let e2 = Species::cardinality(2);
    let nat = Bounds::atoms(3, 3);
    for iso in [
        associator(&s, &t, &e2),
        exchange(&s),
        product_derivative(&s, &t),
        pre_lie_iso(&s, &t, &e2),
        triangle_iso(&s, &t, &e2),
    ] {
        let r = iso.check(&nat, &nat);
        println!(
            "{:<40} {}",
            iso.forward.name(),
            if r.passed() { "ok" } else { "FAILED" }
        );
    }
    // S★E1 is S with a chosen point, so this map forgets information.
    let rho = pre_lie_right_unit(&s);
    println!("{}", rho.check_bijective(&Bounds::atoms(3, 3)));
}
