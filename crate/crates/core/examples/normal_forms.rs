//! Normal forms in SL(2,Z) = Z4 *_Z2 Z6 and in the Klein four HNN extension.

use kazhdan::samples;
use kazhdan::words::{ElementKind, Letter, WordEngine};

fn main() -> kazhdan::Result<()> {
    let sl = WordEngine::new(&samples::sl2z())?;
    let s = Letter::vertex(0, 1);
    let t = Letter::vertex(1, 1);
    for word in [vec![s, s], vec![s, t, s, t], vec![t, s, t, t, t, t, t, s, s, s]] {
        let nf = sl.normalize(&word)?;
        let kind = match sl.classify(&nf, 8)? {
            ElementKind::Torsion { pair, .. } => format!("torsion, conjugate to {}", sl.graph().pair_label(pair)),
            ElementKind::InfiniteOrder => "infinite order".into(),
        };
        let shown: Vec<String> = word.iter().map(|l| sl.format_letter(l)).collect();
        println!("{:<28} = {:<16} {kind}", shown.join(" "), sl.format(&nf));
    }

    let klein = WordEngine::new(&samples::klein_hnn())?;
    let (a, tt, ti) = (Letter::vertex(0, 1), Letter::Stable(1), Letter::Stable(-1));
    for word in [vec![tt, a, ti], vec![tt, tt, a, ti, ti], vec![ti, a, tt], vec![a, tt, a]] {
        let nf = klein.normalize(&word)?;
        let shown: Vec<String> = word.iter().map(|l| klein.format_letter(l)).collect();
        println!("{:<20} = {}", shown.join(" "), klein.format(&nf));
    }
    let x = klein.normalize(&[a, tt])?;
    println!("(a t)^3 = {}", klein.format(&klein.power(&x, 3)));
    Ok(())
}
