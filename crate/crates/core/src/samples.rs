//! The worked graphs of groups bundled with the crate.

use std::sync::Arc;

use crate::group::FiniteGroup;
use crate::graph::{GraphOfGroups, ValidatedGraph};

/// `SL(2,Z) = Z4 *_{Z2} Z6` with generators `s`, `t` and edge generator `u`.
pub fn sl2z() -> ValidatedGraph {
    GraphOfGroups::new("SL(2,Z)")
        .vertex("v1", Arc::new(FiniteGroup::cyclic_labelled(4, "s")))
        .vertex("v2", Arc::new(FiniteGroup::cyclic_labelled(6, "t")))
        .edge(
            "c",
            Arc::new(FiniteGroup::cyclic_labelled(2, "u")),
            "v1",
            "v2",
            vec![0, 2],
            vec![0, 3],
        )
        .validate()
        .expect("SL(2,Z) data is valid")
}

/// `PSL(2,Z) = Z2 * Z3`.
pub fn psl2z() -> ValidatedGraph {
    GraphOfGroups::new("PSL(2,Z)")
        .vertex("v1", Arc::new(FiniteGroup::cyclic_labelled(2, "a")))
        .vertex("v2", Arc::new(FiniteGroup::cyclic_labelled(3, "b")))
        .edge("c", Arc::new(FiniteGroup::cyclic(1)), "v1", "v2", vec![0], vec![0])
        .validate()
        .expect("PSL(2,Z) data is valid")
}

/// HNN extension of the Klein four group identifying `{e,a}` with `{e,b}`.
pub fn klein_hnn() -> ValidatedGraph {
    GraphOfGroups::new("Klein four HNN")
        .vertex("v", Arc::new(FiniteGroup::klein_four()))
        .edge(
            "t",
            Arc::new(FiniteGroup::cyclic_labelled(2, "x")),
            "v",
            "v",
            vec![0, 1],
            vec![0, 2],
        )
        .validate()
        .expect("Klein HNN data is valid")
}

/// HNN extension of `D4` identifying `{e,s}` with `{e,sr}`.
pub fn d4_hnn() -> ValidatedGraph {
    let d4 = FiniteGroup::dihedral(4);
    GraphOfGroups::new("D4 HNN")
        .vertex("v", Arc::new(d4))
        .edge(
            "t",
            Arc::new(FiniteGroup::cyclic_labelled(2, "x")),
            "v",
            "v",
            vec![0, 4],
            vec![0, 5],
        )
        .validate()
        .expect("D4 HNN data is valid")
}

/// `Z2 * Z2`, the infinite dihedral group.
pub fn infinite_dihedral() -> ValidatedGraph {
    GraphOfGroups::new("Z2 * Z2")
        .vertex("v1", Arc::new(FiniteGroup::cyclic_labelled(2, "a")))
        .vertex("v2", Arc::new(FiniteGroup::cyclic_labelled(2, "b")))
        .edge("c", Arc::new(FiniteGroup::cyclic(1)), "v1", "v2", vec![0], vec![0])
        .validate()
        .expect("Z2 * Z2 data is valid")
}

/// All bundled graphs, in a fixed order.
pub fn all() -> Vec<ValidatedGraph> {
    vec![sl2z(), psl2z(), klein_hnn(), d4_hnn(), infinite_dihedral()]
}
