//! Builds species from the cardinality species and counts their structures.

use cyclic_operads::labels::atom_pool;
use cyclic_operads::species::check_functoriality;
use cyclic_operads::{Bounds, FiniteSet, Species};

fn main() {
    let e = Species::cardinality;
    let x = FiniteSet::new(atom_pool(3));
    let menu = [
        ("E1·E2", Species::product(&e(1), &e(2))),
        ("E1 + E3", Species::sum(vec![e(1), e(3)])),
        ("∂E3", e(3).derivative()),
        ("E3•", e(3).pointing()),
        (
            "E2∘(E1 + E2)",
            Species::substitution(&e(2), &Species::sum(vec![e(1), e(2)])),
        ),
    ];
    for (name, s) in &menu {
        println!("{name} on {x}: {} structures", s.count(&x));
        for f in s.eval(&x).iter().take(3) {
            println!("    {f}");
        }
    }
    let (_, s) = &menu[4];
    let report = check_functoriality(s, &Bounds::atoms(4, 4));
    println!("{report}");
}
