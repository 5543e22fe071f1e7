//! Averaging projections in the rational group ring and their traces.

use std::sync::Arc;

use kazhdan::fusion::element_fusion;
use kazhdan::rational::format;
use kazhdan::ring::GroupRingElement;
use kazhdan::samples;
use kazhdan::words::WordEngine;

fn main() -> kazhdan::Result<()> {
    let g = samples::sl2z();
    let engine = Arc::new(WordEngine::new(&g)?);
    let table = element_fusion(&g);

    let edge = g.edges()[0].alpha.image_subgroup();
    let rho_u = GroupRingElement::averaging_projection(&engine, 0, &edge)?;
    let rho_s = GroupRingElement::averaging_projection(&engine, 0, &g.vertex_group(0).whole())?;
    let rho_t = GroupRingElement::averaging_projection(&engine, 1, &g.vertex_group(1).whole())?;
    println!("rho_u = {rho_u}");
    println!("rho_u^2 = rho_u: {}", rho_u.multiply(&rho_u)? == rho_u);
    println!("rho_s rho_u = rho_s: {}", rho_s.multiply(&rho_u)? == rho_s);

    // a representative of [p_1]
    let p1 = rho_u.sub(&rho_s)?.sub(&rho_t)?;
    println!("canonical trace of p_1: {}", format(&p1.canonical_trace()));
    let profile = p1.trace_profile(&table, 6)?;
    for (c, q) in table.classes().iter().zip(&profile.by_class) {
        println!("  tau_<{}> = {}", g.pair_label(c.representative), format(q));
    }

    // s t has infinite order; its coefficient goes to no torsion class
    let st = engine.normalize(&[kazhdan::words::Letter::vertex(0, 1), kazhdan::words::Letter::vertex(1, 1)])?;
    let x = rho_s.add(&GroupRingElement::monomial(&engine, st, kazhdan::rational::ratio(2, 3)))?;
    let profile = x.trace_profile(&table, 6)?;
    println!("infinite-order part of rho_s + (2/3) st: {}", format(&profile.infinite_order));
    Ok(())
}
