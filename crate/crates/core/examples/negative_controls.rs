//! Runs the documented single-entry corruptions and prints which law caught each.

use cyclic_operads::controls::negative_controls;

fn main() {
    for control in negative_controls() {
        let report = control.run();
        let witness = report.violations().find(|v| v.law == control.law);
        println!(
            "{:<32} {:<28} {}",
            control.family,
            control.law,
            if control.detected(&report) {
                "caught"
            } else {
                "MISSED"
            }
        );
        if let Some(v) = witness {
            println!("    {}: {} ≠ {}", v.witness, v.lhs, v.rhs);
        }
    }
}
