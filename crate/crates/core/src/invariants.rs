//! K-classes of Kazhdan projections and the numerical invariants read off them.
//!
//! For a proper cocompact action with orbit data `sigma`, the class of `p_n`
//! is `(-1)^n sum_sigma (-1)^|sigma| [rho_{G_sigma}]`. On a Bass–Serre tree
//! this gives `[p_1] = sum_e [rho_e] - sum_v [rho_v]`, and applying the trace
//! attached to a conjugacy class `C` gives the delocalised Betti number
//! `sum sign * |H ∩ C| / |H|`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{element_fusion, subgroup_fusion, SubgroupClass, SubgroupClassTable, TorsionClassTable};
use crate::graph::{Amenability, OrbitComplex, ValidatedGraph, VertexElement};
use crate::group::Subgroup;
use crate::rational::{int, zero, Rational};

/// `+[rho_H]` or `-[rho_H]` for a subgroup `H` of a vertex group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KTerm {
    pub sign: i8,
    pub vertex: usize,
    pub subgroup: Subgroup,
}

impl Ord for KTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.vertex, &self.subgroup, self.sign).cmp(&(other.vertex, &other.subgroup, other.sign))
    }
}

impl PartialOrd for KTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A signed multiset of averaging projections, kept sorted with opposite
/// terms on the same subgroup cancelled.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FormalKClass {
    terms: Vec<KTerm>,
}

impl FormalKClass {
    pub fn new(terms: impl IntoIterator<Item = KTerm>) -> Self {
        let mut net: BTreeMap<(usize, Subgroup), i64> = BTreeMap::new();
        for t in terms {
            assert!(t.sign == 1 || t.sign == -1, "sign must be +-1");
            *net.entry((t.vertex, t.subgroup)).or_default() += i64::from(t.sign);
        }
        let mut out = Vec::new();
        for ((vertex, subgroup), n) in net {
            let sign = if n > 0 { 1 } else { -1 };
            for _ in 0..n.abs() {
                out.push(KTerm {
                    sign,
                    vertex,
                    subgroup: subgroup.clone(),
                });
            }
        }
        out.sort();
        FormalKClass { terms: out }
    }

    pub fn terms(&self) -> &[KTerm] {
        &self.terms
    }

    pub fn negated(&self) -> Self {
        FormalKClass::new(self.terms.iter().map(|t| KTerm {
            sign: -t.sign,
            ..t.clone()
        }))
    }

    /// Replaces every subgroup by the canonical member of its conjugacy class
    /// (`[rho_H]` depends only on the class of `H`) and cancels again.
    pub fn modulo_conjugacy(&self, classes: &SubgroupClassTable) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let id = classes
                    .class_of(t.vertex, &t.subgroup)
                    .ok_or_else(|| Error::UnknownStabilizer(format!("{}", t.vertex)))?;
                let (vertex, subgroup) = classes.classes()[id].canonical.clone();
                Ok(KTerm {
                    sign: t.sign,
                    vertex,
                    subgroup,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalKClass::new(terms))
    }

    /// `sum sign * |H ∩ C| / |H|` for every torsion class `C`, indexed by class id.
    pub fn trace_profile(&self, table: &TorsionClassTable) -> Vec<Rational> {
        let mut out = vec![zero(); table.len()];
        for t in &self.terms {
            let weight = Rational::new(BigInt::from(t.sign), BigInt::from(t.subgroup.order()));
            for &h in t.subgroup.members() {
                let c = table.locate_class(t.vertex, h).expect("subgroup of a vertex group");
                out[c] += &weight;
            }
        }
        out
    }

    pub fn delocalised_trace(&self, table: &TorsionClassTable, class: usize) -> Rational {
        self.trace_profile(table).swap_remove(class)
    }

    /// The sum of coefficients of the represented group-ring element.
    pub fn augmentation(&self) -> i64 {
        self.terms.iter().map(|t| i64::from(t.sign)).sum()
    }

    pub fn format(&self, graph: &ValidatedGraph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                format!(
                    "{} [rho {}]",
                    if t.sign > 0 { "+" } else { "-" },
                    describe_subgroup(graph, t.vertex, &t.subgroup)
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `v1:{e,s^2}`-style description.
pub fn describe_subgroup(graph: &ValidatedGraph, vertex: usize, h: &Subgroup) -> String {
    let group = graph.vertex_group(vertex);
    let labels: Vec<String> = h.members().iter().map(|&x| group.label(x)).collect();
    format!("{}:{{{}}}", graph.vertices()[vertex].id, labels.join(","))
}

fn gate(graph: &ValidatedGraph, force: bool) -> Result<()> {
    if graph.amenability_gate() == Amenability::AmenableOrFinite && !force {
        return Err(Error::Amenable {
            chi: graph.euler_characteristic().to_string(),
        });
    }
    Ok(())
}

/// `[p_1] = sum_e [rho_{alpha(G_e)}] - sum_v [rho_{G_v}]`.
pub fn kclass_p1(graph: &ValidatedGraph, force: bool) -> Result<FormalKClass> {
    gate(graph, force)?;
    Ok(kclass_general(&graph.bass_serre_complex(), 1))
}

/// `[p_n] = (-1)^n sum_sigma (-1)^|sigma| [rho_sigma]`.
pub fn kclass_general(complex: &OrbitComplex, degree: usize) -> FormalKClass {
    FormalKClass::new(complex.orbits().iter().map(|o| KTerm {
        sign: if (o.dim + degree).is_multiple_of(2) { 1 } else { -1 },
        vertex: o.vertex,
        subgroup: o.stabilizer.clone(),
    }))
}

/// `F_G = (generator) Z`, the subgroup of `Q` generated by `1/|F|` over finite subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSubgroupOfQ {
    #[serde(with = "crate::rational::as_string")]
    pub generator: Rational,
}

impl RationalSubgroupOfQ {
    /// The subgroup generated by `1/n` for each `n`.
    pub fn generated_by_reciprocals(orders: impl IntoIterator<Item = usize>) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).collect();
        assert!(!orders.is_empty(), "at least one order");
        let lcm = orders.iter().fold(BigInt::one(), |acc, n| acc.lcm(n));
        let gcd = orders
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(&(&lcm / n)));
        RationalSubgroupOfQ {
            generator: Rational::new(gcd, lcm),
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        (q / &self.generator).is_integer()
    }
}

/// Every finite subgroup of `G` is conjugate into a vertex group, so the
/// subgroup orders of the vertex groups generate `F_G`.
pub fn fcal(graph: &ValidatedGraph) -> Result<RationalSubgroupOfQ> {
    let mut orders = Vec::new();
    for v in graph.vertices() {
        orders.extend(v.group.all_subgroups()?.iter().map(Subgroup::order));
    }
    orders.sort_unstable();
    orders.dedup();
    Ok(RationalSubgroupOfQ::generated_by_reciprocals(orders))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribution {
    pub vertex: String,
    /// Labels of the vertex-local conjugacy class.
    pub local_class: Vec<String>,
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub id: usize,
    #[serde(rename = "class")]
    pub representative: String,
    pub members: Vec<String>,
    pub element_order: usize,
    #[serde(with = "crate::rational::as_string")]
    pub beta: Rational,
    pub attribution: Vec<Attribution>,
    #[serde(rename = "in_FG")]
    pub in_fg: bool,
}

/// First delocalised l2-Betti numbers of every torsion class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub group: String,
    pub forced: bool,
    #[serde(with = "crate::rational::as_string")]
    pub fg_generator: Rational,
    pub classes: Vec<BettiEntry>,
}

impl BettiReport {
    pub fn beta_of(&self, class: usize) -> &Rational {
        &self.classes[class].beta
    }

    pub fn sum(&self) -> Rational {
        self.classes.iter().fold(zero(), |acc, c| acc + &c.beta)
    }
}

pub fn delocalised_betti_table(graph: &ValidatedGraph, force: bool) -> Result<BettiReport> {
    let kclass = kclass_p1(graph, force)?;
    let table = element_fusion(graph);
    let fg = fcal(graph)?;
    Ok(betti_report(graph, &kclass, &table, &fg, force))
}

pub(crate) fn betti_report(
    graph: &ValidatedGraph,
    kclass: &FormalKClass,
    table: &TorsionClassTable,
    fg: &RationalSubgroupOfQ,
    forced: bool,
) -> BettiReport {
    let profile = kclass.trace_profile(table);
    // attribution by vertex-local class of each element of each term
    let mut local_values = vec![zero(); table.local_classes().len()];
    for t in kclass.terms() {
        let weight = Rational::new(BigInt::from(t.sign), BigInt::from(t.subgroup.order()));
        for &h in t.subgroup.members() {
            local_values[table.local_class_of(VertexElement::new(t.vertex, h))] += &weight;
        }
    }
    let classes = table
        .classes()
        .iter()
        .map(|c| {
            let attribution = table
                .local_classes()
                .iter()
                .zip(&local_values)
                .filter(|(l, _)| l.class_id == c.id)
                .map(|(l, value)| Attribution {
                    vertex: graph.vertices()[l.vertex].id.clone(),
                    local_class: l
                        .members
                        .iter()
                        .map(|&m| graph.vertex_group(l.vertex).label(m))
                        .collect(),
                    value: value.clone(),
                })
                .collect();
            BettiEntry {
                id: c.id,
                representative: graph.pair_label(c.representative),
                members: c.members.iter().map(|&p| graph.pair_label(p)).collect(),
                element_order: c.element_order,
                in_fg: fg.contains(&profile[c.id]),
                beta: profile[c.id].clone(),
                attribution,
            }
        })
        .collect();
    BettiReport {
        group: graph.name().to_string(),
        forced,
        fg_generator: fg.generator.clone(),
        classes,
    }
}

/// `beta_1^(2)(G)` together with the amenability verdict. For amenable
/// inputs the value is `-chi(G)` and is not a Betti number of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L2Betti1 {
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
    pub amenability: Amenability,
}

pub fn l2_betti1(graph: &ValidatedGraph) -> L2Betti1 {
    let kclass = kclass_general(&graph.bass_serre_complex(), 1);
    let table = element_fusion(graph);
    L2Betti1 {
        value: kclass.delocalised_trace(&table, table.identity_class()),
        amenability: graph.amenability_gate(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchreierRank {
    pub index: u64,
    #[serde(with = "crate::rational::as_string")]
    pub rank: Rational,
    /// False when no free subgroup of this index can exist.
    pub integral: bool,
}

/// `r = j * beta_1^(2)(G) + 1`.
pub fn schreier_rank(graph: &ValidatedGraph, index: u64) -> SchreierRank {
    assert!(index >= 1, "index must be positive");
    let rank = int(index as i64) * l2_betti1(graph).value + int(1);
    SchreierRank {
        index,
        integral: rank.is_integer(),
        rank,
    }
}

/// `chi(X, H)` for one conjugacy class of stabilizers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerClassEntry {
    pub class: SubgroupClass,
    pub chi: i64,
}

#[derive(Debug, Clone)]
pub struct EulerDecomposition {
    pub entries: Vec<EulerClassEntry>,
    pub classes: SubgroupClassTable,
}

impl EulerDecomposition {
    /// `sum_<H> chi(X,H) [rho_H]`, using each class's canonical subgroup.
    pub fn induced_kclass(&self) -> FormalKClass {
        FormalKClass::new(self.entries.iter().flat_map(|e| {
            let (vertex, subgroup) = e.class.canonical.clone();
            let sign = if e.chi > 0 { 1 } else { -1 };
            (0..e.chi.unsigned_abs()).map(move |_| KTerm {
                sign,
                vertex,
                subgroup: subgroup.clone(),
            })
        }))
    }
}

/// Groups orbits by the conjugacy class of their stabilizer and sums
/// `(-1)^dim` within each class.
pub fn euler_cmb_decomposition(graph: &ValidatedGraph, complex: &OrbitComplex) -> Result<EulerDecomposition> {
    let stabs: Vec<(usize, Subgroup)> = complex
        .orbits()
        .iter()
        .map(|o| (o.vertex, o.stabilizer.clone()))
        .collect();
    let classes = subgroup_fusion(graph, &stabs)?;
    let mut chi = vec![0i64; classes.classes().len()];
    for o in complex.orbits() {
        let id = classes
            .class_of(o.vertex, &o.stabilizer)
            .expect("supplied stabilizers are classified");
        chi[id] += if o.dim % 2 == 0 { 1 } else { -1 };
    }
    let entries = classes
        .classes()
        .iter()
        .zip(chi)
        .map(|(c, chi)| EulerClassEntry {
            class: c.clone(),
            chi,
        })
        .collect();
    Ok(EulerDecomposition { entries, classes })
}

/// True when no element of the class fixes an edge of the tree.
pub fn fixes_no_edge(graph: &ValidatedGraph, table: &TorsionClassTable, class: usize) -> bool {
    graph.edges().iter().all(|e| {
        e.group.elements().all(|x| {
            table.locate_class(e.source, e.alpha.apply(x)).ok() != Some(class)
                && table.locate_class(e.target, e.beta.apply(x)).ok() != Some(class)
        })
    })
}

/// `beta` is positive, zero or negative.
pub fn sign_of(q: &Rational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrbitDatum;
    use crate::rational::ratio;
    use crate::samples;

    fn sub(members: &[usize]) -> Subgroup {
        Subgroup::from_sorted_unchecked(members.to_vec())
    }

    fn term(sign: i8, vertex: usize, members: &[usize]) -> KTerm {
        KTerm {
            sign,
            vertex,
            subgroup: sub(members),
        }
    }

    fn betti_by_label(report: &BettiReport) -> Vec<(String, Rational)> {
        report
            .classes
            .iter()
            .map(|c| (c.members.join("="), c.beta.clone()))
            .collect()
    }

    #[test]
    fn sl2z_kclass() {
        let g = samples::sl2z();
        let k = kclass_p1(&g, false).unwrap();
        assert_eq!(
            k,
            FormalKClass::new([term(1, 0, &[0, 2]), term(-1, 0, &[0, 1, 2, 3]), term(-1, 1, &[0, 1, 2, 3, 4, 5])])
        );
        assert_eq!(
            k.format(&g),
            "- [rho v1:{e,s,s^2,s^3}] + [rho v1:{e,s^2}] - [rho v2:{e,t,t^2,t^3,t^4,t^5}]"
        );
        assert_eq!(kclass_general(&g.bass_serre_complex(), 1), k);
    }

    #[test]
    fn general_degree_zero_flips_signs() {
        let g = samples::sl2z();
        let k0 = kclass_general(&g.bass_serre_complex(), 0);
        assert_eq!(k0, kclass_p1(&g, false).unwrap().negated());
        let point = OrbitComplex::new(
            &g,
            vec![OrbitDatum {
                dim: 0,
                vertex: 0,
                stabilizer: sub(&[0]),
            }],
            0,
        )
        .unwrap();
        assert_eq!(kclass_general(&point, 0), FormalKClass::new([term(1, 0, &[0])]));
    }

    #[test]
    fn cancellation() {
        let k = FormalKClass::new([term(1, 0, &[0, 2]), term(-1, 0, &[0, 2]), term(1, 0, &[0, 2]), term(1, 1, &[0])]);
        assert_eq!(k.terms(), &[term(1, 0, &[0, 2]), term(1, 1, &[0])]);
    }

    #[test]
    fn sl2z_table() {
        let report = delocalised_betti_table(&samples::sl2z(), false).unwrap();
        let expected = [
            ("v1:e=v2:e", ratio(1, 12)),
            ("v1:s", ratio(-1, 4)),
            ("v1:s^2=v2:t^3", ratio(1, 12)),
            ("v1:s^3", ratio(-1, 4)),
            ("v2:t", ratio(-1, 6)),
            ("v2:t^2", ratio(-1, 6)),
            ("v2:t^4", ratio(-1, 6)),
            ("v2:t^5", ratio(-1, 6)),
        ]
        .map(|(l, q)| (l.to_string(), q))
        .to_vec();
        assert_eq!(betti_by_label(&report), expected);
        assert_eq!(report.sum(), int(-1));
        assert_eq!(report.fg_generator, ratio(1, 12));
        assert!(report.classes.iter().all(|c| c.in_fg));
    }

    #[test]
    fn klein_table() {
        let report = delocalised_betti_table(&samples::klein_hnn(), false).unwrap();
        let expected = [("v:e", ratio(1, 4)), ("v:a=v:b", int(0)), ("v:ab", ratio(-1, 4))]
            .map(|(l, q)| (l.to_string(), q))
            .to_vec();
        assert_eq!(betti_by_label(&report), expected);
    }

    #[test]
    fn d4_table_and_local_attribution() {
        let report = delocalised_betti_table(&samples::d4_hnn(), false).unwrap();
        let expected = [
            ("v:e", ratio(3, 8)),
            ("v:r=v:r^3", ratio(-1, 4)),
            ("v:r^2", ratio(-1, 8)),
            ("v:s=v:sr=v:sr^2=v:sr^3", int(0)),
        ]
        .map(|(l, q)| (l.to_string(), q))
        .to_vec();
        assert_eq!(betti_by_label(&report), expected);
        let reflections = &report.classes[3].attribution;
        assert_eq!(reflections.len(), 2);
        assert_eq!(reflections[0].local_class, vec!["s", "sr^2"]);
        assert_eq!(reflections[0].value, ratio(1, 4));
        assert_eq!(reflections[1].local_class, vec!["sr", "sr^3"]);
        assert_eq!(reflections[1].value, ratio(-1, 4));
        for c in &report.classes {
            let total = c.attribution.iter().fold(zero(), |acc, a| acc + &a.value);
            assert_eq!(total, c.beta);
        }
    }

    #[test]
    fn amenable_inputs_are_refused_unless_forced() {
        let g = samples::infinite_dihedral();
        assert!(matches!(kclass_p1(&g, false), Err(Error::Amenable { .. })));
        assert!(matches!(delocalised_betti_table(&g, false), Err(Error::Amenable { .. })));
        let forced = delocalised_betti_table(&g, true).unwrap();
        assert!(forced.forced);
        assert_eq!(forced.classes[0].beta, int(0));
    }

    #[test]
    fn l2_betti_and_euler() {
        assert_eq!(l2_betti1(&samples::sl2z()).value, ratio(1, 12));
        assert_eq!(l2_betti1(&samples::klein_hnn()).value, ratio(1, 4));
        let point = crate::graph::GraphOfGroups::new("point")
            .vertex("v", std::sync::Arc::new(crate::group::FiniteGroup::cyclic(1)))
            .validate()
            .unwrap();
        let b = l2_betti1(&point);
        assert_eq!(b.value, int(-1));
        assert_eq!(b.amenability, Amenability::AmenableOrFinite);
        for g in samples::all() {
            assert_eq!(l2_betti1(&g).value, -g.euler_characteristic());
        }
    }

    #[test]
    fn schreier() {
        let r = schreier_rank(&samples::sl2z(), 12);
        assert_eq!((r.rank.clone(), r.integral), (int(2), true));
        let r = schreier_rank(&samples::klein_hnn(), 4);
        assert_eq!(r.rank, int(2));
        let r = schreier_rank(&samples::sl2z(), 5);
        assert_eq!(r.rank, ratio(17, 12));
        assert!(!r.integral);
    }

    #[test]
    fn fcal_generators() {
        assert_eq!(fcal(&samples::sl2z()).unwrap().generator, ratio(1, 12));
        assert_eq!(fcal(&samples::klein_hnn()).unwrap().generator, ratio(1, 4));
        let point = crate::graph::GraphOfGroups::new("point")
            .vertex("v", std::sync::Arc::new(crate::group::FiniteGroup::cyclic(1)))
            .validate()
            .unwrap();
        assert_eq!(fcal(&point).unwrap().generator, int(1));
        let fg = RationalSubgroupOfQ::generated_by_reciprocals([4, 6]);
        assert_eq!(fg.generator, ratio(1, 12));
        assert!(fg.contains(&ratio(-1, 4)));
        assert!(!fg.contains(&ratio(1, 24)));
    }

    #[test]
    fn euler_decompositions() {
        let g = samples::sl2z();
        let d = euler_cmb_decomposition(&g, &g.bass_serre_complex()).unwrap();
        let summary: Vec<(usize, i64)> = d.entries.iter().map(|e| (e.class.order, e.chi)).collect();
        assert_eq!(summary, vec![(4, 1), (2, -1), (6, 1)]);

        let k = samples::klein_hnn();
        let d = euler_cmb_decomposition(&k, &k.bass_serre_complex()).unwrap();
        let summary: Vec<(usize, i64)> = d.entries.iter().map(|e| (e.class.order, e.chi)).collect();
        assert_eq!(summary, vec![(2, -1), (4, 1)]);

        // one vertex orbit and one edge orbit with conjugate stabilizers cancel
        let c = OrbitComplex::new(
            &k,
            vec![
                OrbitDatum { dim: 0, vertex: 0, stabilizer: sub(&[0, 1]) },
                OrbitDatum { dim: 1, vertex: 0, stabilizer: sub(&[0, 2]) },
            ],
            1,
        )
        .unwrap();
        let d = euler_cmb_decomposition(&k, &c).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.entries[0].chi, 0);
        assert!(d.induced_kclass().terms().is_empty());
    }

    #[test]
    fn decomposition_matches_orbitwise_sum_under_traces() {
        for g in samples::all() {
            let complex = g.bass_serre_complex();
            let d = euler_cmb_decomposition(&g, &complex).unwrap();
            let orbitwise = kclass_general(&complex, 0);
            let table = element_fusion(&g);
            assert_eq!(d.induced_kclass().trace_profile(&table), orbitwise.trace_profile(&table));
            assert_eq!(orbitwise.modulo_conjugacy(&d.classes).unwrap(), d.induced_kclass());
        }
    }

    #[test]
    fn beta_convention_is_independent_of_edge_side() {
        for g in samples::all() {
            let table = element_fusion(&g);
            let alpha = kclass_general(&g.bass_serre_complex(), 1);
            let beta = kclass_general(&g.bass_serre_complex_beta(), 1);
            assert_eq!(alpha.trace_profile(&table), beta.trace_profile(&table));
        }
    }

    #[test]
    fn vertex_only_classes_are_negative_and_in_fg() {
        for g in [samples::sl2z(), samples::psl2z(), samples::klein_hnn(), samples::d4_hnn()] {
            let report = delocalised_betti_table(&g, false).unwrap();
            let table = element_fusion(&g);
            for c in table.classes() {
                if fixes_no_edge(&g, &table, c.id) {
                    assert_eq!(sign_of(report.beta_of(c.id)), Ordering::Less, "{}", g.name());
                    assert!(report.classes[c.id].in_fg);
                }
            }
        }
        let g = samples::sl2z();
        let table = element_fusion(&g);
        let vertex_only: Vec<usize> = (0..table.len()).filter(|&c| fixes_no_edge(&g, &table, c)).collect();
        assert_eq!(vertex_only.len(), 6);
    }
}
