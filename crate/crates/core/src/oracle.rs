//! Bounded conjugator search on one-edge graphs, used to check the fusion table
//! independently of how it was built.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fusion::TorsionClassTable;
use crate::graph::{ValidatedGraph, VertexElement};
use crate::words::{NormalForm, Syllable, WordEngine};

pub const DEFAULT_DEPTH: usize = 6;

/// Environment variable overriding [`DEFAULT_DEPTH`].
pub const DEPTH_ENV: &str = "KAZHDAN_ORACLE_DEPTH";

pub fn default_depth() -> usize {
    std::env::var(DEPTH_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEPTH)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugacyVerdict {
    /// `witness * g * witness^-1 = h`.
    Conjugate(NormalForm),
    NoWitnessWithinDepth(usize),
}

/// First `w` of syllable length at most `depth`, in enumeration order, with
/// `w g w^-1 = h`.
pub fn are_conjugate(engine: &WordEngine, g: &NormalForm, h: &NormalForm, depth: usize) -> Result<ConjugacyVerdict> {
    engine.check_form(g)?;
    engine.check_form(h)?;
    let found = engine.for_each_form(depth, |w| {
        if engine.conjugate(w, g) == *h {
            ControlFlow::Break(w.clone())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(match found {
        Some(w) => ConjugacyVerdict::Conjugate(w),
        None => ConjugacyVerdict::NoWitnessWithinDepth(depth),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub source: VertexElement,
    pub target: VertexElement,
    /// `witness * source * witness^-1 = target`.
    pub witness: Option<NormalForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerification {
    pub class_id: usize,
    pub pairs: Vec<PairVerdict>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionVerification {
    pub depth: usize,
    pub classes: Vec<ClassVerification>,
    /// Pairs in different classes with a conjugator inside the depth bound.
    pub spurious: Vec<PairVerdict>,
    pub fused_pairs: usize,
    pub certified: usize,
    pub unfused_pairs: usize,
    pub passed: bool,
}

/// Upper bound on the number of normal forms of syllable length at most
/// `depth`: heads times tails of length at most `depth`.
pub fn search_size(engine: &WordEngine, depth: usize) -> u128 {
    let alphabet = engine.next_syllables(None);
    let index: HashMap<Syllable, usize> = alphabet.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let next: Vec<Vec<usize>> = alphabet
        .iter()
        .map(|s| engine.next_syllables(Some(s)).iter().map(|t| index[t]).collect())
        .collect();
    let mut ending = vec![1u128; alphabet.len()];
    let mut tails = 1u128;
    for _ in 0..depth {
        tails += ending.iter().sum::<u128>();
        let mut step = vec![0u128; alphabet.len()];
        for (i, n) in ending.iter().enumerate() {
            for &j in &next[i] {
                step[j] += n;
            }
        }
        ending = step;
    }
    tails * engine.heads().len() as u128
}

/// For each source pair, the least witness reaching each target pair.
fn reach(engine: &WordEngine, sources: &[NormalForm], depth: usize) -> Vec<HashMap<NormalForm, NormalForm>> {
    let alphabet = engine.next_syllables(None);
    let followers: HashMap<Syllable, HashSet<Syllable>> = alphabet
        .iter()
        .map(|s| (*s, engine.next_syllables(Some(s)).into_iter().collect()))
        .collect();
    let mut out = vec![HashMap::new(); sources.len()];
    let mut tail = Vec::new();
    let current: Vec<NormalForm> = sources.to_vec();
    grow(engine, depth, &alphabet, &followers, &mut tail, &current, &mut out);
    out
}

/// Visits the tail `tail` (whose conjugates of the sources are `current`) and
/// then every tail obtained by prepending one syllable.
fn grow(
    engine: &WordEngine,
    depth: usize,
    alphabet: &[Syllable],
    followers: &HashMap<Syllable, HashSet<Syllable>>,
    tail: &mut Vec<Syllable>,
    current: &[NormalForm],
    out: &mut [HashMap<NormalForm, NormalForm>],
) {
    for (x, found) in current.iter().zip(out.iter_mut()) {
        // w x w^-1 lies in a vertex group only if x does, for w in a vertex group
        if engine.as_vertex_element(x).is_none() {
            continue;
        }
        for head in engine.heads() {
            let witness = NormalForm::from_parts(head, tail.clone());
            if witness.syllable_length() > depth {
                continue;
            }
            let image = engine.conjugate(&NormalForm::from_parts(head, Vec::new()), x);
            match found.get(&image) {
                Some(w) if *w <= witness => {}
                _ => {
                    found.insert(image, witness);
                }
            }
        }
    }
    if tail.len() == depth {
        return;
    }
    for s in alphabet {
        if let Some(first) = tail.first() {
            if !followers[s].contains(first) {
                continue;
            }
        }
        let letter = NormalForm::from_parts(0, vec![*s]);
        let next: Vec<NormalForm> = current.iter().map(|x| engine.conjugate(&letter, x)).collect();
        tail.insert(0, *s);
        grow(engine, depth, alphabet, followers, tail, &next, out);
        tail.remove(0);
    }
}

/// Certifies every fused pair by an explicit conjugator and searches for
/// conjugators between unfused pairs of equal order.
pub fn verify_fusion(graph: &ValidatedGraph, table: &TorsionClassTable, depth: usize) -> Result<FusionVerification> {
    let engine = WordEngine::new(graph)?;
    let pairs: Vec<VertexElement> = graph.pairs().collect();
    let forms = pairs
        .iter()
        .map(|&p| engine.from_pair(p))
        .collect::<Result<Vec<_>>>()?;
    let found = reach(&engine, &forms, depth);
    let witness = |i: usize, j: usize| found[i].get(&forms[j]).cloned();
    let class_of = |p: VertexElement| table.class_of(p);

    let mut by_class: BTreeMap<usize, Vec<PairVerdict>> = BTreeMap::new();
    let mut spurious = Vec::new();
    let (mut fused_pairs, mut certified, mut unfused_pairs) = (0, 0, 0);
    for i in 0..pairs.len() {
        let ci = class_of(pairs[i])?;
        by_class.entry(ci).or_default();
        for j in i + 1..pairs.len() {
            let cj = class_of(pairs[j])?;
            if ci == cj {
                fused_pairs += 1;
                let w = witness(i, j);
                certified += usize::from(w.is_some());
                by_class.entry(ci).or_default().push(PairVerdict {
                    source: pairs[i],
                    target: pairs[j],
                    witness: w,
                });
            } else if element_order(graph, pairs[i]) == element_order(graph, pairs[j]) {
                unfused_pairs += 1;
                if let Some((source, target, w)) = witness(i, j)
                    .map(|w| (i, j, w))
                    .or_else(|| witness(j, i).map(|w| (j, i, w)))
                {
                    spurious.push(PairVerdict {
                        source: pairs[source],
                        target: pairs[target],
                        witness: Some(w),
                    });
                }
            }
        }
    }
    let classes: Vec<ClassVerification> = by_class
        .into_iter()
        .map(|(class_id, pairs)| ClassVerification {
            class_id,
            passed: pairs.iter().all(|p| p.witness.is_some()),
            pairs,
        })
        .collect();
    Ok(FusionVerification {
        depth,
        passed: spurious.is_empty() && certified == fused_pairs,
        classes,
        spurious,
        fused_pairs,
        certified,
        unfused_pairs,
    })
}

fn element_order(graph: &ValidatedGraph, p: VertexElement) -> usize {
    graph.vertex_group(p.vertex).element_order(p.element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::element_fusion;
    use crate::samples;
    use crate::words::Letter;

    fn form(engine: &WordEngine, word: &[Letter]) -> NormalForm {
        engine.normalize(word).unwrap()
    }

    #[test]
    fn d4_reflections_by_t() {
        let eng = WordEngine::new(&samples::d4_hnn()).unwrap();
        let s = form(&eng, &[Letter::vertex(0, 4)]);
        let sr = form(&eng, &[Letter::vertex(0, 5)]);
        let t = form(&eng, &[Letter::Stable(1)]);
        assert_eq!(are_conjugate(&eng, &s, &sr, 6).unwrap(), ConjugacyVerdict::Conjugate(t.clone()));
        assert_eq!(eng.conjugate(&t, &s), sr);
    }

    #[test]
    fn sl2z_s_and_s3_have_no_witness() {
        let eng = WordEngine::new(&samples::sl2z()).unwrap();
        let s = form(&eng, &[Letter::vertex(0, 1)]);
        let s3 = form(&eng, &[Letter::vertex(0, 3)]);
        assert_eq!(are_conjugate(&eng, &s, &s3, 6).unwrap(), ConjugacyVerdict::NoWitnessWithinDepth(6));
        assert_eq!(are_conjugate(&eng, &s, &s, 0).unwrap(), ConjugacyVerdict::Conjugate(NormalForm::identity()));
    }

    #[test]
    fn klein_a_b_certified_by_t() {
        let g = samples::klein_hnn();
        let report = verify_fusion(&g, &element_fusion(&g), 2).unwrap();
        assert!(report.passed);
        let eng = WordEngine::new(&g).unwrap();
        let ab = report
            .classes
            .iter()
            .flat_map(|c| &c.pairs)
            .find(|p| p.source == VertexElement::new(0, 1) && p.target == VertexElement::new(0, 2))
            .unwrap();
        assert_eq!(ab.witness, Some(form(&eng, &[Letter::Stable(1)])));
    }

    #[test]
    fn bundled_examples_pass_at_default_depth() {
        for g in [samples::sl2z(), samples::psl2z(), samples::klein_hnn(), samples::d4_hnn(), samples::infinite_dihedral()] {
            let report = verify_fusion(&g, &element_fusion(&g), DEFAULT_DEPTH).unwrap();
            assert!(report.passed, "{}", g.name());
            assert_eq!(report.certified, report.fused_pairs);
        }
    }

    #[test]
    fn depth_zero_cannot_cross_the_stable_letter() {
        let g = samples::d4_hnn();
        let report = verify_fusion(&g, &element_fusion(&g), 0).unwrap();
        assert!(!report.passed);
        assert!(report.spurious.is_empty());
        // {r, r^3} needs a head, the reflections need t
        let failing: Vec<usize> = report.classes.iter().filter(|c| !c.passed).map(|c| c.pairs.len()).collect();
        assert_eq!(failing, vec![1, 6]);
        // sr^3 = r (t s t^-1) r^-1 has length 2
        assert!(!verify_fusion(&g, &element_fusion(&g), 1).unwrap().passed);
        assert!(verify_fusion(&g, &element_fusion(&g), 2).unwrap().passed);
        // the identity already merges the two names of u in SL(2,Z)
        let g = samples::sl2z();
        assert!(verify_fusion(&g, &element_fusion(&g), 0).unwrap().passed);
    }

    #[test]
    fn witnesses_agree_with_direct_search() {
        for g in [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()] {
            let eng = WordEngine::new(&g).unwrap();
            let report = verify_fusion(&g, &element_fusion(&g), 3).unwrap();
            for p in report.classes.iter().flat_map(|c| &c.pairs) {
                let a = eng.from_pair(p.source).unwrap();
                let b = eng.from_pair(p.target).unwrap();
                let direct = match are_conjugate(&eng, &a, &b, 3).unwrap() {
                    ConjugacyVerdict::Conjugate(w) => Some(w),
                    ConjugacyVerdict::NoWitnessWithinDepth(_) => None,
                };
                assert_eq!(p.witness, direct);
            }
        }
    }

    #[test]
    fn a_wrong_table_is_caught() {
        // fusing nothing but the identity class misses t a t^-1 = b
        let g = samples::klein_hnn();
        let local_only = crate::graph::GraphOfGroups::new("Klein alone")
            .vertex("v", std::sync::Arc::new(crate::group::FiniteGroup::klein_four()))
            .validate()
            .unwrap();
        let report = verify_fusion(&g, &element_fusion(&local_only), 2).unwrap();
        assert!(!report.passed);
        assert_eq!(report.spurious.len(), 1);
        assert_eq!(report.spurious[0].source, VertexElement::new(0, 1));
    }

    #[test]
    fn search_size_bounds_enumeration() {
        for g in [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()] {
            let eng = WordEngine::new(&g).unwrap();
            for d in 0..4 {
                let mut n = 0u128;
                eng.for_each_form::<()>(d, |_| {
                    n += 1;
                    ControlFlow::Continue(())
                });
                let bound = search_size(&eng, d);
                assert!(n <= bound && bound <= n * eng.heads().len() as u128 + 1, "{} {d}: {n} {bound}", g.name());
            }
        }
    }

    #[test]
    fn monotone_in_depth() {
        let g = samples::d4_hnn();
        let table = element_fusion(&g);
        let mut last = 0;
        for d in 0..4 {
            let r = verify_fusion(&g, &table, d).unwrap();
            assert!(r.certified >= last);
            last = r.certified;
        }
    }
}
