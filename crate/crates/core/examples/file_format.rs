//! Exports a zoo model to the text format, reads it back and checks it.

use cyclic_operads::cli::{check_loaded, default_check_size, export_zoo};
use cyclic_operads::format::PresentationFile;
use cyclic_operads::zoo::ZooModel;

fn main() {
    let file = export_zoo(&ZooModel::CyclicOrders, 3).expect("export");
    let text = file.render();
    for line in text.lines().take(12) {
        println!("{line}");
    }
    println!("... {} lines", text.lines().count());

    let parsed = PresentationFile::parse(&text).expect("well formed");
    assert_eq!(parsed.render(), text);
    let loaded = parsed.load().expect("consistent");
    let bounds = parsed
        .bounds()
        .with_max_size(default_check_size(loaded.kind(), parsed.max_size));
    for report in check_loaded(&loaded, &bounds, true, false) {
        print!("{report}");
    }
}
