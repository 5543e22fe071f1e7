//! Loads a graph from the JSON input format and runs a CLI command in-process.
//!
//! `cargo run --example load_json -- crates/core/data/d4_hnn.json`

use std::path::PathBuf;

use kazhdan::input::load_file;
use kazhdan::invariants::delocalised_betti_table;
use kazhdan::rational::format;

fn main() -> kazhdan::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/klein_hnn.json"));
    let loaded = load_file(&path)?;
    let g = &loaded.graph;
    println!("{}: chi = {}", g.name(), format(&g.euler_characteristic()));
    match delocalised_betti_table(g, false) {
        Ok(report) => {
            for c in &report.classes {
                println!("  {:<8} {}", c.representative, format(&c.beta));
            }
        }
        Err(e) => println!("  {e}"),
    }

    let args = ["kazhdan", "kclass", path.to_str().expect("utf-8 path"), "--json"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = kazhdan::cli::run(args, &mut out, &mut err);
    print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    println!("exit code {code}");
    Ok(())
}
