//! Delocalised first l2-Betti numbers, with the vertex-local breakdown.

use kazhdan::invariants::delocalised_betti_table;
use kazhdan::rational::format;
use kazhdan::samples;

fn main() -> kazhdan::Result<()> {
    for g in [samples::sl2z(), samples::psl2z(), samples::klein_hnn(), samples::d4_hnn()] {
        let report = delocalised_betti_table(&g, false)?;
        println!("{} (F_G = ({})Z)", report.group, format(&report.fg_generator));
        for c in &report.classes {
            println!("  {:<8} order {:<2} beta = {:<6} {{{}}}", c.representative, c.element_order, format(&c.beta), c.members.join(", "));
            if c.attribution.len() > 1 {
                for a in &c.attribution {
                    println!("      {}:{{{}}} contributes {}", a.vertex, a.local_class.join(", "), format(&a.value));
                }
            }
        }
        println!("  sum = {}", format(&report.sum()));
    }

    let forced = delocalised_betti_table(&samples::infinite_dihedral(), true)?;
    println!("Z2 * Z2, forced: identity class {}", format(&forced.classes[0].beta));
    Ok(())
}
