//! Rebuilds a species from its derivative and the exchange of the two stars.

use cyclic_operads::isos::exchange;
use cyclic_operads::labels::atom_pool;
use cyclic_operads::translations::{descent_counit, descent_integrate};
use cyclic_operads::zoo::{comm_species, cyclic_orders_species};
use cyclic_operads::{Bounds, FiniteSet, Species};

fn main() {
    for s in [
        Species::cardinality(2),
        comm_species(),
        cyclic_orders_species(),
    ] {
        let integrated = descent_integrate(&s.derivative(), &exchange(&s).forward);
        let counts: Vec<(usize, usize)> = (0..=4)
            .map(|n| {
                let x = FiniteSet::new(atom_pool(n));
                (integrated.count(&x), s.count(&x))
            })
            .collect();
        println!("{}: (classes, structures) by size {counts:?}", s.name());
        let x = FiniteSet::new(atom_pool(3));
        if let Some(class) = integrated.eval(&x).first() {
            println!("    a class on {x}: {class}");
        }
        let phi = descent_counit(&s, &integrated);
        println!(
            "    counit bijective: {}",
            phi.check_bijective(&Bounds::atoms(4, 4)).passed()
        );
    }
}
