//! Moves the cyclic orders between entries-only and exchangeable-output
//! form and checks that the round trip is an isomorphism.

use cyclic_operads::componential::{check_exchangeable_output, Operand};
use cyclic_operads::labels::atom_pool;
use cyclic_operads::translations::{check_eo_isomorphism, eo_to_exo, exo_to_eo, iso_cc};
use cyclic_operads::zoo::cyclic_orders;
use cyclic_operads::{Bounds, FiniteSet};

fn main() {
    let c = cyclic_orders();
    let o = eo_to_exo(&c);
    let b = Bounds::atoms(3, 3);
    println!("{}", check_exchangeable_output(&o, &b));

    // D_a on a rooted cyclic order over {a, b}: the root and `a` trade places.
    let x = FiniteSet::new(atom_pool(2));
    for f in o.carrier().eval(&x).iter() {
        let a = &atom_pool(1)[0];
        let moved = o
            .dact(a, &Operand::new(x.clone(), f.clone()))
            .expect("a ∈ X");
        println!("D_a {f} = {}", moved.value);
    }

    let cc = exo_to_eo(&o);
    print!("{}", check_eo_isomorphism(&iso_cc(&c, &cc), &cc, &c, &b));
}
