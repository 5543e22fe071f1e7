//! Conjugacy classes and the subgroup lattice of a few small groups.

use kazhdan::group::{FiniteGroup, GroupSpec};

fn main() -> kazhdan::Result<()> {
    let d4 = FiniteGroup::dihedral(4);
    println!("D4: order {}", d4.order());
    for c in d4.conjugacy_classes() {
        let names: Vec<String> = c.members.iter().map(|&x| d4.label(x)).collect();
        println!("  class of {:<5} {{{}}}", d4.label(c.representative), names.join(", "));
    }
    let subs = d4.all_subgroups()?;
    println!("  {} subgroups, orders {:?}", subs.len(), subs.iter().map(|h| h.order()).collect::<Vec<_>>());

    // same group from permutations of the square's corners
    let spec = GroupSpec::Perm {
        degree: 4,
        generators: vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]],
        labels: None,
    };
    let g = spec.build()?;
    println!("permutation D4: order {}, {} classes", g.order(), g.conjugacy_classes().len());

    for (name, g) in [("S4", FiniteGroup::symmetric(4)), ("Q8", FiniteGroup::quaternion())] {
        println!("{name}: {} classes, {} subgroups", g.conjugacy_classes().len(), g.all_subgroups()?.len());
    }

    let bad = GroupSpec::Table {
        table: vec![vec![0, 1], vec![1, 1]],
        labels: None,
    };
    println!("rejected: {}", bad.build().unwrap_err());
    Ok(())
}
