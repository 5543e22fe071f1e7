//! Conjugacy classes of torsion elements and of finite subgroups.

use kazhdan::fusion::{element_fusion, subgroup_fusion};
use kazhdan::invariants::describe_subgroup;
use kazhdan::samples;

fn main() -> kazhdan::Result<()> {
    for g in samples::all() {
        let table = element_fusion(&g);
        println!("{}: {} torsion classes", g.name(), table.len());
        for c in table.classes() {
            let members: Vec<String> = c.members.iter().map(|&p| g.pair_label(p)).collect();
            println!("  order {:<2} {{{}}}", c.element_order, members.join(", "));
        }
    }

    let g = samples::d4_hnn();
    let keys: Vec<_> = g
        .vertex_group(0)
        .all_subgroups()?
        .into_iter()
        .map(|h| (0, h))
        .collect();
    let classes = subgroup_fusion(&g, &keys)?;
    println!("{}: {} subgroups in {} classes", g.name(), keys.len(), classes.classes().len());
    for c in classes.classes() {
        let members: Vec<String> = c.members.iter().map(|(v, h)| describe_subgroup(&g, *v, h)).collect();
        println!("  order {}: {}", c.order, members.join("  "));
    }
    Ok(())
}
