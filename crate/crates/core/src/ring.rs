//! The rational group ring of a one-edge graph of groups.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fusion::TorsionClassTable;
use crate::group::Subgroup;
use crate::rational::{reciprocal, zero, Rational};
use crate::words::{ElementKind, NormalForm, WordEngine};

/// A finitely supported rational combination of group elements.
#[derive(Clone)]
pub struct GroupRingElement {
    engine: Arc<WordEngine>,
    terms: BTreeMap<NormalForm, Rational>,
}

/// Per-class delocalised traces of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceProfile {
    /// Indexed by torsion class id.
    pub by_class: Vec<Rational>,
    /// Sum of coefficients at elements of infinite order.
    pub infinite_order: Rational,
}

impl GroupRingElement {
    pub fn zero(engine: &Arc<WordEngine>) -> Self {
        GroupRingElement {
            engine: engine.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(engine: &Arc<WordEngine>) -> Self {
        Self::monomial(engine, NormalForm::identity(), crate::rational::one())
    }

    pub fn monomial(engine: &Arc<WordEngine>, g: NormalForm, coef: Rational) -> Self {
        let mut x = Self::zero(engine);
        x.add_term(g, coef);
        x
    }

    /// `(1/|H|) sum_{h in H} h` for a subgroup of the given vertex group.
    pub fn averaging_projection(engine: &Arc<WordEngine>, vertex: usize, h: &Subgroup) -> Result<Self> {
        if vertex >= engine.graph().vertices().len() {
            return Err(Error::InvalidSubgroup(format!("unknown vertex {vertex}")));
        }
        let h = Subgroup::new(engine.graph().vertex_group(vertex), h.members())?;
        let coef = reciprocal(h.order());
        let mut x = Self::zero(engine);
        for &m in h.members() {
            let nf = engine.from_pair(crate::graph::VertexElement::new(vertex, m))?;
            x.add_term(nf, coef.clone());
        }
        Ok(x)
    }

    pub fn engine(&self) -> &Arc<WordEngine> {
        &self.engine
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalForm, &Rational)> {
        self.terms.iter()
    }

    /// Number of group elements in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &NormalForm) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(zero)
    }

    pub fn add_term(&mut self, g: NormalForm, coef: Rational) {
        let slot = self.terms.entry(g).or_insert_with(zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn same_graph(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.engine, &other.engine) {
            Ok(())
        } else {
            Err(Error::MismatchedGraphs)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-crate::rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(&self.engine);
        if !q.is_zero() {
            out.terms = self.terms.iter().map(|(g, c)| (g.clone(), c * q)).collect();
        }
        out
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_graph(other)?;
        let mut out = Self::zero(&self.engine);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(self.engine.mul_unchecked(g, h), a * b);
            }
        }
        Ok(out)
    }

    /// `g -> g^-1` extended linearly.
    pub fn star(&self) -> Self {
        GroupRingElement {
            engine: self.engine.clone(),
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (self.engine.invert(g), c.clone()))
                .collect(),
        }
    }

    /// Coefficient at the identity.
    pub fn canonical_trace(&self) -> Rational {
        self.coefficient(&NormalForm::identity())
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> Rational {
        self.terms.values().fold(zero(), |acc, c| acc + c)
    }

    /// Sum of coefficients at elements conjugate into the given torsion class.
    /// Each support element is reduced by at most `depth` conjugation steps;
    /// anything still unresolved is reported as undecided.
    pub fn delocalised_trace(&self, table: &TorsionClassTable, class: usize, depth: usize) -> Result<Rational> {
        Ok(self
            .trace_profile(table, depth)?
            .by_class
            .get(class)
            .cloned()
            .unwrap_or_else(zero))
    }

    pub fn trace_profile(&self, table: &TorsionClassTable, depth: usize) -> Result<TraceProfile> {
        let mut by_class = vec![zero(); table.len()];
        let mut infinite_order = zero();
        for (g, c) in &self.terms {
            match self.engine.classify(g, depth)? {
                ElementKind::Torsion { pair, .. } => by_class[table.class_of(pair)?] += c,
                ElementKind::InfiniteOrder => infinite_order += c,
            }
        }
        Ok(TraceProfile {
            by_class,
            infinite_order,
        })
    }
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.engine, &other.engine) && self.terms == other.terms
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("({c}) {}", self.engine.format(g)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::element_fusion;
    use crate::rational::{int, ratio};
    use crate::samples;
    use crate::words::Letter;
    use proptest::prelude::*;

    fn engine(g: &crate::graph::ValidatedGraph) -> Arc<WordEngine> {
        Arc::new(WordEngine::new(g).unwrap())
    }

    fn sub(members: &[usize]) -> Subgroup {
        Subgroup::from_sorted_unchecked(members.to_vec())
    }

    #[test]
    fn sl2z_projections() {
        let eng = engine(&samples::sl2z());
        let rho_u = GroupRingElement::averaging_projection(&eng, 0, &sub(&[0, 2])).unwrap();
        assert_eq!(rho_u.to_string(), "(1/2) e + (1/2) u");
        let rho6 = GroupRingElement::averaging_projection(&eng, 1, &sub(&[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(rho6.len(), 6);
        assert!(rho6.terms().all(|(_, c)| *c == ratio(1, 6)));
        assert_eq!(rho6.canonical_trace(), ratio(1, 6));
        let trivial = GroupRingElement::averaging_projection(&eng, 1, &sub(&[0])).unwrap();
        assert_eq!(trivial, GroupRingElement::one(&eng));
        assert!(GroupRingElement::averaging_projection(&eng, 0, &sub(&[0, 1])).is_err());
    }

    #[test]
    fn projections_are_selfadjoint_idempotents() {
        let eng = engine(&samples::sl2z());
        let rho = GroupRingElement::averaging_projection(&eng, 0, &sub(&[0, 2])).unwrap();
        assert_eq!(rho.multiply(&rho).unwrap(), rho);
        assert_eq!(rho.star(), rho);
    }

    #[test]
    fn p1_representative_traces() {
        let g = samples::sl2z();
        let eng = engine(&g);
        let table = element_fusion(&g);
        let rho = |v, m: &[usize]| GroupRingElement::averaging_projection(&eng, v, &sub(m)).unwrap();
        let p = rho(0, &[0, 2])
            .sub(&rho(0, &[0, 1, 2, 3]))
            .unwrap()
            .sub(&rho(1, &[0, 1, 2, 3, 4, 5]))
            .unwrap();
        assert_eq!(p.canonical_trace(), ratio(1, 12));
        let u_class = table.locate_class(0, 2).unwrap();
        assert_eq!(p.delocalised_trace(&table, u_class, 6).unwrap(), ratio(1, 12));

        let rho2 = rho(0, &[0, 2]);
        assert_eq!(rho2.delocalised_trace(&table, u_class, 6).unwrap(), ratio(1, 2));
        let t_class = table.locate_class(1, 1).unwrap();
        assert_eq!(rho(0, &[0, 1, 2, 3]).delocalised_trace(&table, t_class, 6).unwrap(), zero());
    }

    #[test]
    fn undecided_membership_is_reported() {
        let g = samples::klein_hnn();
        let eng = engine(&g);
        let table = element_fusion(&g);
        let word = [Letter::Stable(1), Letter::Stable(1), Letter::vertex(0, 1), Letter::Stable(-1), Letter::Stable(-1)];
        let x = GroupRingElement::monomial(&eng, eng.normalize(&word).unwrap(), int(1));
        assert!(matches!(x.delocalised_trace(&table, 0, 0), Err(Error::Undecided(_))));
        let a_class = table.locate_class(0, 1).unwrap();
        assert_eq!(x.delocalised_trace(&table, a_class, 1).unwrap(), int(1));
    }

    #[test]
    fn mismatched_graphs_are_rejected() {
        let a = engine(&samples::sl2z());
        let b = engine(&samples::sl2z());
        let x = GroupRingElement::one(&a);
        let y = GroupRingElement::one(&b);
        assert_eq!(x.multiply(&y).unwrap_err(), Error::MismatchedGraphs);
        assert_eq!(x.add(&y).unwrap_err(), Error::MismatchedGraphs);
    }

    fn letters_for(g: &crate::graph::ValidatedGraph, hnn: bool, spec: &[(usize, usize, u8)]) -> Vec<Letter> {
        let orders: Vec<usize> = g.vertices().iter().map(|v| v.group.order()).collect();
        spec.iter()
            .map(|&(vx, e, pick)| {
                let vx = vx % orders.len();
                match pick {
                    0 if hnn => Letter::Stable(1),
                    1 if hnn => Letter::Stable(-1),
                    _ => Letter::vertex(vx, e % orders[vx]),
                }
            })
            .collect()
    }

    fn element_strategy() -> impl Strategy<Value = Vec<(Vec<(usize, usize, u8)>, i64, i64)>> {
        proptest::collection::vec(
            (proptest::collection::vec((0..2usize, 0..64usize, 0..4u8), 0..5), -6i64..6, 1i64..5),
            0..4,
        )
    }

    fn build(eng: &Arc<WordEngine>, spec: &[(Vec<(usize, usize, u8)>, i64, i64)]) -> GroupRingElement {
        let mut x = GroupRingElement::zero(eng);
        for (w, n, d) in spec {
            let letters = letters_for(eng.graph(), eng.is_hnn(), w);
            x.add_term(eng.normalize(&letters).unwrap(), ratio(*n, *d));
        }
        x
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(which in 0..3usize, a in element_strategy(), b in element_strategy(), c in element_strategy()) {
            let g = [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()][which].clone();
            let eng = engine(&g);
            let (x, y, z) = (build(&eng, &a), build(&eng, &b), build(&eng, &c));
            prop_assert_eq!(x.multiply(&y).unwrap().multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
            prop_assert_eq!(
                x.multiply(&y.add(&z).unwrap()).unwrap(),
                x.multiply(&y).unwrap().add(&x.multiply(&z).unwrap()).unwrap()
            );
            prop_assert_eq!(x.star().star(), x.clone());
            prop_assert_eq!(x.multiply(&y).unwrap().star(), y.star().multiply(&x.star()).unwrap());
            prop_assert_eq!(x.multiply(&y).unwrap().canonical_trace(), y.multiply(&x).unwrap().canonical_trace());
        }

        #[test]
        fn delocalised_traces_are_tracial_and_sum_to_augmentation(
            which in 0..3usize, a in element_strategy(), b in element_strategy(),
        ) {
            let g = [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()][which].clone();
            let eng = engine(&g);
            let table = element_fusion(&g);
            let (x, y) = (build(&eng, &a), build(&eng, &b));
            let xy = x.multiply(&y).unwrap().trace_profile(&table, 32).unwrap();
            let yx = y.multiply(&x).unwrap().trace_profile(&table, 32).unwrap();
            prop_assert_eq!(&xy.by_class, &yx.by_class);
            let px = x.trace_profile(&table, 32).unwrap();
            let total = px.by_class.iter().fold(px.infinite_order.clone(), |acc, q| acc + q);
            prop_assert_eq!(total, x.augmentation());
        }

        #[test]
        fn g_times_inverse_is_one(which in 0..3usize, w in proptest::collection::vec((0..2usize, 0..64usize, 0..4u8), 0..8)) {
            let g = [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()][which].clone();
            let eng = engine(&g);
            let nf = eng.normalize(&letters_for(&g, eng.is_hnn(), &w)).unwrap();
            let x = GroupRingElement::monomial(&eng, nf.clone(), int(1));
            let y = GroupRingElement::monomial(&eng, eng.invert(&nf), int(1));
            prop_assert_eq!(x.multiply(&y).unwrap(), GroupRingElement::one(&eng));
        }
    }

    #[test]
    fn every_bundled_projection_is_a_projection() {
        for g in samples::all() {
            let eng = engine(&g);
            for (v, vx) in g.vertices().iter().enumerate() {
                for h in vx.group.all_subgroups().unwrap() {
                    let rho = GroupRingElement::averaging_projection(&eng, v, &h).unwrap();
                    assert_eq!(rho.multiply(&rho).unwrap(), rho);
                    assert_eq!(rho.star(), rho);
                    assert_eq!(rho.canonical_trace(), reciprocal(h.order()));
                }
            }
        }
    }
}
