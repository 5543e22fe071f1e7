//! The K-class of `p_1` for the bundled graphs and of `p_n` for a hand-made orbit complex.

use kazhdan::graph::{OrbitComplex, OrbitDatum};
use kazhdan::invariants::{kclass_general, kclass_p1};
use kazhdan::samples;

fn main() -> kazhdan::Result<()> {
    for g in samples::all() {
        match kclass_p1(&g, false) {
            Ok(k) => println!("{:<16} [p_1] = {}", g.name(), k.format(&g)),
            Err(e) => println!("{:<16} {e}", g.name()),
        }
    }

    // the Bass-Serre orbits of SL(2,Z) at every degree
    let g = samples::sl2z();
    let tree = g.bass_serre_complex();
    for n in 0..3 {
        println!("SL(2,Z) [p_{n}] = {}", kclass_general(&tree, n).format(&g));
    }

    // one free orbit of vertices: [p_0] = [rho_1]
    let point = OrbitComplex::new(
        &g,
        vec![OrbitDatum {
            dim: 0,
            vertex: 0,
            stabilizer: g.vertex_group(0).trivial_subgroup(),
        }],
        0,
    )?;
    println!("free point: [p_0] = {}", kclass_general(&point, 0).format(&g));
    Ok(())
}
