//! Runs the entries-only axioms and their derived laws on the zoo models,
//! then corrupts one composite and shows the witness.

use cyclic_operads::componential::{check_entries_only, check_entries_only_derived};
use cyclic_operads::zoo::{cyclic_orders, Signature, ZooModel};
use cyclic_operads::Bounds;

fn main() {
    for model in [
        ZooModel::Comm,
        ZooModel::CyclicOrders,
        ZooModel::FreeCyclic(Signature::ternary(4)),
    ] {
        let p = model.presentation().expect("zoo model");
        let b = Bounds::atoms(4, 4);
        let axioms = check_entries_only(&p, &b);
        let derived = check_entries_only_derived(&p, &Bounds::atoms(3, 3));
        println!(
            "{}: axioms {}, derived {}",
            model.name(),
            axioms.passed(),
            derived.passed()
        );
    }

    // Reverse every composite of two 3-cycles: associativity breaks.
    let honest = cyclic_orders();
    let inner = honest.clone();
    let broken = honest.with_compose(move |f, x, g, y| {
        let r = inner.compose(f, x, g, y)?;
        if f.set.len() == 3 && g.set.len() == 3 {
            let flipped = cyclic_orders().carrier.eval(&r.set);
            return Ok(flipped
                .iter()
                .find(|v| **v != r.value)
                .cloned()
                .unwrap_or(r.value));
        }
        Ok(r.value)
    });
    print!("{}", check_entries_only(&broken, &Bounds::atoms(5, 4)));
}
