//! Brute-force conjugator search checked against the fusion table.

use kazhdan::fusion::element_fusion;
use kazhdan::oracle::{are_conjugate, verify_fusion, ConjugacyVerdict, DEFAULT_DEPTH};
use kazhdan::samples;
use kazhdan::words::{Letter, WordEngine};

fn main() -> kazhdan::Result<()> {
    let g = samples::d4_hnn();
    let engine = WordEngine::new(&g)?;
    let s = engine.normalize(&[Letter::vertex(0, 4)])?;
    for target in [5, 6, 7, 1] {
        let h = engine.normalize(&[Letter::vertex(0, target)])?;
        match are_conjugate(&engine, &s, &h, 3)? {
            ConjugacyVerdict::Conjugate(w) => println!("s ~ {}: witness {}", engine.format(&h), engine.format(&w)),
            ConjugacyVerdict::NoWitnessWithinDepth(d) => println!("s, {}: no witness within {d}", engine.format(&h)),
        }
    }

    for g in samples::all() {
        let report = verify_fusion(&g, &element_fusion(&g), DEFAULT_DEPTH)?;
        println!(
            "{:<16} depth {}: {}/{} fused pairs certified, {} spurious of {} -> {}",
            g.name(),
            report.depth,
            report.certified,
            report.fused_pairs,
            report.spurious.len(),
            report.unfused_pairs,
            if report.passed { "PASS" } else { "FAIL" }
        );
    }

    // depth 0 only tries the identity
    let report = verify_fusion(&g, &element_fusion(&g), 0)?;
    println!("D4 HNN at depth 0: {}", if report.passed { "PASS" } else { "FAIL" });
    Ok(())
}
