//! chi(X,H) per conjugacy class of stabilizers and the induced K-class.

use kazhdan::fusion::element_fusion;
use kazhdan::invariants::{describe_subgroup, euler_cmb_decomposition, kclass_general};
use kazhdan::rational::format;
use kazhdan::samples;

fn main() -> kazhdan::Result<()> {
    for g in [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()] {
        let complex = g.bass_serre_complex();
        let d = euler_cmb_decomposition(&g, &complex)?;
        println!("{}", g.name());
        for e in &d.entries {
            let (v, h) = &e.class.canonical;
            println!("  <{}>: chi = {}", describe_subgroup(&g, *v, h), e.chi);
        }
        let induced = d.induced_kclass();
        println!("  induced: {}", induced.format(&g));
        let table = element_fusion(&g);
        let orbitwise = kclass_general(&complex, 0).trace_profile(&table);
        let traces: Vec<String> = induced.trace_profile(&table).iter().map(format).collect();
        println!("  traces {:?}, orbitwise agree: {}", traces, induced.trace_profile(&table) == orbitwise);
    }
    Ok(())
}
