//! Euler characteristics, F_G and ranks of finite-index free subgroups.

use kazhdan::invariants::{fcal, l2_betti1, schreier_rank};
use kazhdan::rational::format;
use kazhdan::samples;

fn main() -> kazhdan::Result<()> {
    for g in samples::all() {
        let b = l2_betti1(&g);
        println!(
            "{:<16} chi = {:<6} beta_1 = {:<6} ({}) F_G = ({})Z",
            g.name(),
            format(&g.euler_characteristic()),
            format(&b.value),
            b.amenability,
            format(&fcal(&g)?.generator)
        );
    }
    let g = samples::sl2z();
    for j in [1, 6, 12, 24] {
        let r = schreier_rank(&g, j);
        println!("SL(2,Z), index {j:>2}: r = {}{}", format(&r.rank), if r.integral { "" } else { " (no such subgroup)" });
    }
    Ok(())
}
