//! Random one-edge graphs of finite groups for property and acceptance tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use kazhdan::graph::{GraphOfGroups, ValidatedGraph};
use kazhdan::group::FiniteGroup;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Groups of order at most 12.
pub fn catalogue() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=12).map(|n| (format!("C{n}"), FiniteGroup::cyclic(n))).collect();
    out.push(("V4".into(), FiniteGroup::klein_four()));
    out.push(("D3".into(), FiniteGroup::dihedral(3)));
    out.push(("D4".into(), FiniteGroup::dihedral(4)));
    out.push(("D5".into(), FiniteGroup::dihedral(5)));
    out.push(("D6".into(), FiniteGroup::dihedral(6)));
    out.push(("Q8".into(), FiniteGroup::quaternion()));
    out.push(("A4".into(), FiniteGroup::alternating4()));
    out.push((
        "C2xC4".into(),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
    ));
    out.push((
        "C2xC6".into(),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(6)),
    ));
    out.into_iter().map(|(n, g)| (n, Arc::new(g))).collect()
}

fn elements_of_order(g: &FiniteGroup, n: usize) -> Vec<usize> {
    g.elements().filter(|&x| g.element_order(x) == n).collect()
}

/// `[0, x, x^2, ...]`: the embedding of `C_n` sending the generator to `x`.
fn powers(g: &FiniteGroup, x: usize, n: usize) -> Vec<usize> {
    (0..n).map(|k| g.pow(x, k)).collect()
}

/// `F *_K L` with cyclic `K` proper in both factors and one index at least 3.
pub fn random_amalgam(rng: &mut impl Rng, cat: &[(String, Arc<FiniteGroup>)]) -> ValidatedGraph {
    loop {
        let (fname, f) = cat.choose(rng).unwrap();
        let (lname, l) = cat.choose(rng).unwrap();
        let orders: Vec<usize> = (1..=12)
            .filter(|&n| n < f.order() && n < l.order())
            .filter(|&n| f.order() / n >= 3 || l.order() / n >= 3)
            .filter(|&n| !elements_of_order(f, n).is_empty() && !elements_of_order(l, n).is_empty())
            .collect();
        let Some(&n) = orders.choose(rng) else { continue };
        let x = *elements_of_order(f, n).choose(rng).unwrap();
        let y = *elements_of_order(l, n).choose(rng).unwrap();
        return GraphOfGroups::new(format!("{fname} *_C{n} {lname}"))
            .vertex("F", f.clone())
            .vertex("L", l.clone())
            .edge("k", Arc::new(FiniteGroup::cyclic(n)), "F", "L", powers(f, x, n), powers(l, y, n))
            .validate()
            .expect("random amalgam is valid");
    }
}

/// HNN extension of `F` identifying two cyclic proper subgroups of equal order.
pub fn random_hnn(rng: &mut impl Rng, cat: &[(String, Arc<FiniteGroup>)]) -> ValidatedGraph {
    loop {
        let (fname, f) = cat.choose(rng).unwrap();
        let orders: Vec<usize> = (1..f.order())
            .filter(|&n| !elements_of_order(f, n).is_empty())
            .collect();
        let Some(&n) = orders.choose(rng) else { continue };
        let x = *elements_of_order(f, n).choose(rng).unwrap();
        let y = *elements_of_order(f, n).choose(rng).unwrap();
        return GraphOfGroups::new(format!("{fname} *_C{n}"))
            .vertex("F", f.clone())
            .edge("t", Arc::new(FiniteGroup::cyclic(n)), "F", "F", powers(f, x, n), powers(f, y, n))
            .validate()
            .expect("random HNN extension is valid");
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
