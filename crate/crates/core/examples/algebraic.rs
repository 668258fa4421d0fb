//! The algebraic presentations of the cyclic orders: the multiplication on
//! the triangle product, its laws, and the exchange map it induces.

use cyclic_operads::algebraic::{check_algebraic_entries_only, check_d_axioms};
use cyclic_operads::labels::atom_pool;
use cyclic_operads::translations::{alg_eo_to_alg_exo, eo_componential_to_algebraic};
use cyclic_operads::zoo::cyclic_orders;
use cyclic_operads::{Bounds, FiniteSet};

fn main() {
    let a = eo_componential_to_algebraic(&cyclic_orders());
    let x = FiniteSet::new(atom_pool(2));
    for v in a.rho.source().eval(&x).iter().take(4) {
        println!("ρ {v} = {}", a.rho.apply(&x, v).expect("ρ is total"));
    }
    let b = Bounds::atoms(3, 3);
    print!("{}", check_algebraic_entries_only(&a, &b, true));
    print!("{}", check_d_axioms(&alg_eo_to_alg_exo(&a), &b));
}
