//! Normal forms for the fundamental group of a one-edge graph of groups.
//!
//! For an amalgam `A *_C B` an element is `c r1 r2 ... rk` where `c` lies in
//! the edge group and the `ri` are non-trivial right-coset representatives
//! alternating between the two factors. For an HNN extension
//! `<K, t | t alpha(x) t^-1 = beta(x)>` an element is
//! `g0 t^e1 r1 ... t^ek rk` where `ri` represents a right coset of
//! `alpha(E)` (after `t`) or `beta(E)` (after `t^-1`) and no pinch
//! `t alpha(x) t^-1`, `t^-1 beta(x) t` survives. Representatives are the
//! least element index in each coset.

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ValidatedGraph, VertexElement};
use crate::group::FiniteGroup;

/// A letter of a free word over the vertex groups and the stable letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    Vertex { vertex: usize, element: usize },
    /// `t` (`+1`) or `t^-1` (`-1`).
    Stable(i8),
}

impl Letter {
    pub fn vertex(vertex: usize, element: usize) -> Self {
        Letter::Vertex { vertex, element }
    }
}

/// One syllable after the head of a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Syllable {
    /// Amalgam: a non-trivial coset representative of the given vertex group.
    Coset { vertex: usize, rep: usize },
    /// HNN: `t^exp` followed by a coset representative.
    Stable { exp: i8, rep: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    /// Edge-group element (amalgam) or vertex-group element (HNN).
    head: usize,
    syllables: Vec<Syllable>,
}

impl NormalForm {
    /// Caller guarantees the parts form a canonical word.
    pub(crate) fn from_parts(head: usize, syllables: Vec<Syllable>) -> Self {
        NormalForm { head, syllables }
    }

    pub fn identity() -> Self {
        NormalForm {
            head: 0,
            syllables: Vec::new(),
        }
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.head == 0 && self.syllables.is_empty()
    }

    /// Number of stable letters (zero for amalgams).
    pub fn stable_length(&self) -> usize {
        self.syllables
            .iter()
            .filter(|s| matches!(s, Syllable::Stable { .. }))
            .count()
    }

    /// Amalgam: number of alternating factor syllables. HNN: number of stable
    /// letters plus one for a non-trivial head.
    pub fn syllable_length(&self) -> usize {
        match self.syllables.first() {
            Some(Syllable::Coset { .. }) => self.syllables.len(),
            Some(Syllable::Stable { .. }) => self.syllables.len() + usize::from(self.head != 0),
            None => usize::from(self.head != 0),
        }
    }
}

/// Enumeration order: syllable length, then head, then syllables.
impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllable_length()
            .cmp(&other.syllable_length())
            .then_with(|| self.head.cmp(&other.head))
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Classification of an element of the fundamental group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKind {
    /// Conjugate into a vertex group: `conjugator * x * conjugator^-1 = vertex element`.
    Torsion {
        pair: VertexElement,
        conjugator: NormalForm,
    },
    /// Cyclically reduced of positive length.
    InfiniteOrder,
}

/// `x = embed[c] * rep`, stored per element of the ambient group.
#[derive(Debug, Clone)]
struct Split {
    edge: Vec<usize>,
    rep: Vec<usize>,
}

impl Split {
    fn new(group: &FiniteGroup, embed: &[usize], preimage: &[Option<usize>]) -> Split {
        let n = group.order();
        let mut edge = vec![0; n];
        let mut rep = vec![0; n];
        for x in group.elements() {
            let r = embed.iter().map(|&c| group.mul(c, x)).min().expect("nonempty");
            let c = group.mul(x, group.inv(r));
            edge[x] = preimage[c].expect("coset representative differs by an edge element");
            rep[x] = r;
        }
        Split { edge, rep }
    }

    fn is_rep(&self, x: usize) -> bool {
        self.rep[x] == x
    }
}

#[derive(Debug, Clone)]
struct Factor {
    vertex: usize,
    group: Arc<FiniteGroup>,
    embed: Vec<usize>,
    split: Split,
}

#[derive(Debug, Clone)]
enum Shape {
    Amalgam {
        factors: [Factor; 2],
    },
    Hnn {
        vertex: usize,
        group: Arc<FiniteGroup>,
        alpha: Vec<usize>,
        beta: Vec<usize>,
        /// Right cosets of `alpha(E)`.
        split_a: Split,
        /// Right cosets of `beta(E)`.
        split_b: Split,
    },
}

/// Normal-form arithmetic for a validated one-edge graph of groups.
#[derive(Debug, Clone)]
pub struct WordEngine {
    graph: ValidatedGraph,
    edge_order: usize,
    shape: Shape,
}

impl WordEngine {
    pub fn new(graph: &ValidatedGraph) -> Result<Self> {
        if graph.edges().len() != 1 {
            return Err(Error::NotOneEdge {
                edges: graph.edges().len(),
            });
        }
        let e = &graph.edges()[0];
        let edge_order = e.group.order();
        let shape = if e.is_loop() {
            let group = graph.vertices()[e.source].group.clone();
            let alpha = e.alpha.image().to_vec();
            let beta = e.beta.image().to_vec();
            let split_a = Split::new(&group, &alpha, &e.alpha.preimage_table());
            let split_b = Split::new(&group, &beta, &e.beta.preimage_table());
            Shape::Hnn {
                vertex: e.source,
                group,
                alpha,
                beta,
                split_a,
                split_b,
            }
        } else {
            let factor = |vertex: usize, hom: &crate::group::GroupHom| {
                let group = graph.vertices()[vertex].group.clone();
                let embed = hom.image().to_vec();
                let split = Split::new(&group, &embed, &hom.preimage_table());
                Factor {
                    vertex,
                    group,
                    embed,
                    split,
                }
            };
            Shape::Amalgam {
                factors: [factor(e.source, &e.alpha), factor(e.target, &e.beta)],
            }
        };
        Ok(WordEngine {
            graph: graph.clone(),
            edge_order,
            shape,
        })
    }

    pub fn graph(&self) -> &ValidatedGraph {
        &self.graph
    }

    pub fn is_hnn(&self) -> bool {
        matches!(self.shape, Shape::Hnn { .. })
    }

    fn factor_index(&self, vertex: usize) -> Option<usize> {
        match &self.shape {
            Shape::Amalgam { factors } => factors.iter().position(|f| f.vertex == vertex),
            Shape::Hnn { .. } => None,
        }
    }

    pub fn check_letter(&self, letter: &Letter) -> Result<()> {
        match (*letter, &self.shape) {
            (Letter::Stable(e), Shape::Hnn { .. }) if e == 1 || e == -1 => Ok(()),
            (Letter::Stable(e), Shape::Hnn { .. }) => {
                Err(Error::InvalidWord(format!("stable letter exponent {e} is not +-1")))
            }
            (Letter::Stable(_), Shape::Amalgam { .. }) => {
                Err(Error::InvalidWord("amalgam words have no stable letter".into()))
            }
            (Letter::Vertex { vertex, element }, _) => {
                if vertex >= self.graph.vertices().len() {
                    return Err(Error::InvalidWord(format!("unknown vertex {vertex}")));
                }
                if element >= self.graph.vertex_group(vertex).order() {
                    return Err(Error::InvalidWord(format!(
                        "element {element} out of range for vertex {}",
                        self.graph.vertices()[vertex].id
                    )));
                }
                Ok(())
            }
        }
    }

    /// Left-multiplies a normal form by one letter.
    fn left_mul(&self, letter: Letter, nf: &mut NormalForm) {
        match &self.shape {
            Shape::Amalgam { factors } => {
                let Letter::Vertex { vertex, element } = letter else {
                    unreachable!("checked letter");
                };
                let fi = self.factor_index(vertex).expect("checked letter");
                let f = &factors[fi];
                let h = f.group.mul(element, f.embed[nf.head]);
                match nf.syllables.first().copied() {
                    Some(Syllable::Coset { vertex: v, rep }) if v == f.vertex => {
                        let y = f.group.mul(h, rep);
                        nf.head = f.split.edge[y];
                        let r = f.split.rep[y];
                        if r == 0 {
                            nf.syllables.remove(0);
                        } else {
                            nf.syllables[0] = Syllable::Coset { vertex: v, rep: r };
                        }
                    }
                    _ => {
                        nf.head = f.split.edge[h];
                        let r = f.split.rep[h];
                        if r != 0 {
                            nf.syllables.insert(0, Syllable::Coset { vertex: f.vertex, rep: r });
                        }
                    }
                }
            }
            Shape::Hnn {
                group,
                alpha,
                beta,
                split_a,
                split_b,
                ..
            } => match letter {
                Letter::Vertex { element, .. } => nf.head = group.mul(element, nf.head),
                Letter::Stable(exp) => {
                    // t alpha(x) = beta(x) t and t^-1 beta(x) = alpha(x) t^-1
                    let (split, into) = if exp > 0 { (split_a, beta) } else { (split_b, alpha) };
                    let x = split.edge[nf.head];
                    let r = split.rep[nf.head];
                    let moved = into[x];
                    match nf.syllables.first().copied() {
                        Some(Syllable::Stable { exp: next, rep }) if r == 0 && next == -exp => {
                            nf.syllables.remove(0);
                            nf.head = group.mul(moved, rep);
                        }
                        _ => {
                            nf.syllables.insert(0, Syllable::Stable { exp, rep: r });
                            nf.head = moved;
                        }
                    }
                }
            },
        }
    }

    pub fn normalize(&self, word: &[Letter]) -> Result<NormalForm> {
        for l in word {
            self.check_letter(l)?;
        }
        let mut nf = NormalForm::identity();
        for &l in word.iter().rev() {
            self.left_mul(l, &mut nf);
        }
        Ok(nf)
    }

    /// The normal form spelled back out as letters.
    pub fn letters(&self, nf: &NormalForm) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * nf.syllables.len() + 1);
        match &self.shape {
            Shape::Amalgam { factors } => {
                if nf.head != 0 {
                    out.push(Letter::vertex(factors[0].vertex, factors[0].embed[nf.head]));
                }
                for s in &nf.syllables {
                    if let Syllable::Coset { vertex, rep } = *s {
                        out.push(Letter::vertex(vertex, rep));
                    }
                }
            }
            Shape::Hnn { vertex, .. } => {
                if nf.head != 0 {
                    out.push(Letter::vertex(*vertex, nf.head));
                }
                for s in &nf.syllables {
                    if let Syllable::Stable { exp, rep } = *s {
                        out.push(Letter::Stable(exp));
                        if rep != 0 {
                            out.push(Letter::vertex(*vertex, rep));
                        }
                    }
                }
            }
        }
        out
    }

    /// Rejects forms that are not canonical for this graph.
    pub fn check_form(&self, nf: &NormalForm) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidWord(why));
        match &self.shape {
            Shape::Amalgam { factors } => {
                if nf.head >= self.edge_order {
                    return bad(format!("head {} out of range", nf.head));
                }
                let mut prev: Option<usize> = None;
                for s in &nf.syllables {
                    let Syllable::Coset { vertex, rep } = *s else {
                        return Err(Error::MismatchedGraphs);
                    };
                    let Some(fi) = self.factor_index(vertex) else {
                        return Err(Error::MismatchedGraphs);
                    };
                    let f = &factors[fi];
                    if rep == 0 || rep >= f.group.order() || !f.split.is_rep(rep) {
                        return bad(format!("{rep} is not a canonical coset representative"));
                    }
                    if prev == Some(fi) {
                        return bad("consecutive syllables from one factor".into());
                    }
                    prev = Some(fi);
                }
            }
            Shape::Hnn {
                group,
                split_a,
                split_b,
                ..
            } => {
                if nf.head >= group.order() {
                    return bad(format!("head {} out of range", nf.head));
                }
                for (i, s) in nf.syllables.iter().enumerate() {
                    let Syllable::Stable { exp, rep } = *s else {
                        return Err(Error::MismatchedGraphs);
                    };
                    let split = match exp {
                        1 => split_a,
                        -1 => split_b,
                        _ => return bad(format!("stable exponent {exp}")),
                    };
                    if rep >= group.order() || !split.is_rep(rep) {
                        return bad(format!("{rep} is not a canonical coset representative"));
                    }
                    if let Some(Syllable::Stable { exp: next, .. }) = nf.syllables.get(i + 1) {
                        if rep == 0 && *next == -exp {
                            return bad("pinch left in form".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
        self.check_form(x)?;
        self.check_form(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        let mut nf = y.clone();
        for l in self.letters(x).into_iter().rev() {
            self.left_mul(l, &mut nf);
        }
        nf
    }

    pub fn invert(&self, x: &NormalForm) -> NormalForm {
        let mut nf = NormalForm::identity();
        for l in self.letters(x) {
            let inv = match l {
                Letter::Vertex { vertex, element } => {
                    Letter::vertex(vertex, self.graph.vertex_group(vertex).inv(element))
                }
                Letter::Stable(e) => Letter::Stable(-e),
            };
            self.left_mul(inv, &mut nf);
        }
        nf
    }

    /// `w x w^-1`
    pub fn conjugate(&self, w: &NormalForm, x: &NormalForm) -> NormalForm {
        let wx = self.mul_unchecked(w, x);
        self.mul_unchecked(&wx, &self.invert(w))
    }

    pub fn power(&self, x: &NormalForm, k: usize) -> NormalForm {
        (0..k).fold(NormalForm::identity(), |acc, _| self.mul_unchecked(&acc, x))
    }

    pub fn from_pair(&self, p: VertexElement) -> Result<NormalForm> {
        self.normalize(&[Letter::vertex(p.vertex, p.element)])
    }

    /// The vertex-group element equal to `nf`, if any. In an amalgam, edge
    /// elements are reported in the first factor.
    pub fn as_vertex_element(&self, nf: &NormalForm) -> Option<VertexElement> {
        match &self.shape {
            Shape::Amalgam { factors } => match nf.syllables.as_slice() {
                [] => Some(VertexElement::new(factors[0].vertex, factors[0].embed[nf.head])),
                [Syllable::Coset { vertex, rep }] => {
                    let f = &factors[self.factor_index(*vertex)?];
                    Some(VertexElement::new(*vertex, f.group.mul(f.embed[nf.head], *rep)))
                }
                _ => None,
            },
            Shape::Hnn { vertex, .. } => {
                nf.syllables.is_empty().then(|| VertexElement::new(*vertex, nf.head))
            }
        }
    }

    /// Every pair naming the same group element as `nf`.
    pub fn vertex_pairs(&self, nf: &NormalForm) -> Vec<VertexElement> {
        let Some(p) = self.as_vertex_element(nf) else {
            return Vec::new();
        };
        match &self.shape {
            Shape::Amalgam { factors } if nf.syllables.is_empty() => vec![
                p,
                VertexElement::new(factors[1].vertex, factors[1].embed[nf.head]),
            ],
            _ => vec![p],
        }
    }

    /// Decides torsion by cyclic reduction, giving up after `max_steps`
    /// conjugation steps.
    pub fn classify(&self, x: &NormalForm, max_steps: usize) -> Result<ElementKind> {
        self.check_form(x)?;
        let mut y = x.clone();
        // total conjugator U with y = U^-1 x U
        let mut total = NormalForm::identity();
        let mut steps = 0;
        loop {
            if let Some(pair) = self.as_vertex_element(&y) {
                return Ok(ElementKind::Torsion {
                    pair,
                    conjugator: self.invert(&total),
                });
            }
            let step = match &self.shape {
                Shape::Amalgam { .. } => {
                    if y.syllables.len().is_multiple_of(2) {
                        return Ok(ElementKind::InfiniteOrder);
                    }
                    NormalForm {
                        head: y.head,
                        syllables: vec![y.syllables[0]],
                    }
                }
                Shape::Hnn {
                    group,
                    split_a,
                    split_b,
                    ..
                } => {
                    let (
                        Syllable::Stable { exp: first, .. },
                        Syllable::Stable { exp: last, rep: last_rep },
                    ) = (y.syllables[0], *y.syllables.last().expect("nonempty"))
                    else {
                        unreachable!("hnn forms carry stable syllables");
                    };
                    let middle = group.mul(last_rep, y.head);
                    let inside = if last > 0 {
                        split_a.rep[middle] == 0
                    } else {
                        split_b.rep[middle] == 0
                    };
                    if first != -last || !inside {
                        return Ok(ElementKind::InfiniteOrder);
                    }
                    NormalForm {
                        head: y.head,
                        syllables: vec![Syllable::Stable { exp: first, rep: 0 }],
                    }
                }
            };
            if steps == max_steps {
                return Err(Error::Undecided(format!(
                    "no vertex-group conjugate found within {max_steps} reduction steps"
                )));
            }
            steps += 1;
            y = self.mul_unchecked(&self.mul_unchecked(&self.invert(&step), &y), &step);
            total = self.mul_unchecked(&total, &step);
        }
    }

    /// Head values in enumeration order.
    pub(crate) fn heads(&self) -> std::ops::Range<usize> {
        match &self.shape {
            Shape::Amalgam { .. } => 0..self.edge_order,
            Shape::Hnn { group, .. } => 0..group.order(),
        }
    }

    /// Syllables that may follow `prev` in a normal form, in ascending order.
    pub(crate) fn next_syllables(&self, prev: Option<&Syllable>) -> Vec<Syllable> {
        let mut out = Vec::new();
        match &self.shape {
            Shape::Amalgam { factors } => {
                for f in factors {
                    if let Some(Syllable::Coset { vertex, .. }) = prev {
                        if *vertex == f.vertex {
                            continue;
                        }
                    }
                    out.extend(
                        f.group
                            .elements()
                            .filter(|&x| x != 0 && f.split.is_rep(x))
                            .map(|rep| Syllable::Coset { vertex: f.vertex, rep }),
                    );
                }
            }
            Shape::Hnn {
                group,
                split_a,
                split_b,
                ..
            } => {
                for (exp, split) in [(-1i8, split_b), (1, split_a)] {
                    for rep in group.elements().filter(|&x| split.is_rep(x)) {
                        if let Some(Syllable::Stable { exp: p, rep: 0 }) = prev {
                            if *p == -exp {
                                continue;
                            }
                        }
                        out.push(Syllable::Stable { exp, rep });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// All syllable sequences of exactly `len` syllables, lexicographically.
    pub(crate) fn tails(&self, len: usize) -> Vec<Vec<Syllable>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        self.extend_tails(len, &mut current, &mut out);
        out
    }

    fn extend_tails(&self, len: usize, current: &mut Vec<Syllable>, out: &mut Vec<Vec<Syllable>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for s in self.next_syllables(current.last()) {
            current.push(s);
            self.extend_tails(len, current, out);
            current.pop();
        }
    }

    /// Visits every normal form of syllable length at most `depth` in
    /// enumeration order, stopping early on `Break`.
    pub fn for_each_form<B>(
        &self,
        depth: usize,
        mut visit: impl FnMut(&NormalForm) -> ControlFlow<B>,
    ) -> Option<B> {
        let mut nf = NormalForm::identity();
        if let ControlFlow::Break(b) = visit(&nf) {
            return Some(b);
        }
        for level in 1..=depth {
            let trivial_tails = self.tails(level);
            let other_tails = match &self.shape {
                // head-only forms have length 1, alongside c r1
                Shape::Amalgam { .. } if level == 1 => {
                    let mut t = self.tails(0);
                    t.extend(self.tails(1));
                    t
                }
                Shape::Amalgam { .. } => trivial_tails.clone(),
                Shape::Hnn { .. } => self.tails(level - 1),
            };
            for head in self.heads() {
                let tails = if head == 0 { &trivial_tails } else { &other_tails };
                for tail in tails {
                    nf.head = head;
                    nf.syllables.clone_from(tail);
                    if nf.syllable_length() != level {
                        continue;
                    }
                    if let ControlFlow::Break(b) = visit(&nf) {
                        return Some(b);
                    }
                }
            }
        }
        None
    }

    pub fn format_letter(&self, l: &Letter) -> String {
        match *l {
            Letter::Vertex { vertex, element } => self.graph.vertex_group(vertex).label(element),
            Letter::Stable(1) => "t".into(),
            Letter::Stable(e) => format!("t^{e}"),
        }
    }

    /// Human-readable spelling; an amalgam head is shown with its edge-group label.
    pub fn format(&self, nf: &NormalForm) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut letters = self.letters(nf);
        if let Shape::Amalgam { .. } = self.shape {
            if nf.head != 0 {
                parts.push(self.graph.edges()[0].group.label(nf.head));
                letters.remove(0);
            }
        }
        parts.extend(letters.iter().map(|l| self.format_letter(l)));
        if parts.is_empty() {
            return "e".into();
        }
        parts.join(" ")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Vertex { vertex, element } => write!(f, "{vertex}:{element}"),
            Letter::Stable(e) => write!(f, "t^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn v(vertex: usize, element: usize) -> Letter {
        Letter::vertex(vertex, element)
    }

    const T: Letter = Letter::Stable(1);
    const TI: Letter = Letter::Stable(-1);

    #[test]
    fn sl2z_edge_identification() {
        let eng = WordEngine::new(&samples::sl2z()).unwrap();
        // s^2 (t^3)^-1 = u u^-1
        assert!(eng.normalize(&[v(0, 2), v(1, 3)]).unwrap().is_identity());
        let s = eng.normalize(&[v(0, 1)]).unwrap();
        let ss = eng.multiply(&s, &s).unwrap();
        assert_eq!(ss, eng.normalize(&[v(1, 3)]).unwrap());
        assert_eq!(ss.syllables(), &[]);
        assert_eq!(ss.head(), 1);
    }

    #[test]
    fn klein_britton_pinch() {
        let eng = WordEngine::new(&samples::klein_hnn()).unwrap();
        let b = eng.normalize(&[v(0, 2)]).unwrap();
        assert_eq!(eng.normalize(&[T, v(0, 1), TI]).unwrap(), b);
        let ta = eng.normalize(&[T, v(0, 1)]).unwrap();
        let ti = eng.normalize(&[TI]).unwrap();
        assert_eq!(eng.multiply(&ta, &ti).unwrap(), b);
    }

    #[test]
    fn empty_word_and_inverses() {
        for g in [samples::sl2z(), samples::klein_hnn()] {
            let eng = WordEngine::new(&g).unwrap();
            let id = eng.normalize(&[]).unwrap();
            assert!(id.is_identity());
            assert!(eng.invert(&id).is_identity());
        }
        let eng = WordEngine::new(&samples::klein_hnn()).unwrap();
        let t = eng.normalize(&[T]).unwrap();
        assert!(eng.multiply(&eng.invert(&t), &t).unwrap().is_identity());
    }

    #[test]
    fn rejects_multi_edge_and_mismatched_forms() {
        let z1 = Arc::new(FiniteGroup::cyclic(1));
        let g = crate::graph::GraphOfGroups::new("rose")
            .vertex("v", Arc::new(FiniteGroup::cyclic(2)))
            .edge("a", z1.clone(), "v", "v", vec![0], vec![0])
            .edge("b", z1, "v", "v", vec![0], vec![0])
            .validate()
            .unwrap();
        assert_eq!(WordEngine::new(&g).unwrap_err(), Error::NotOneEdge { edges: 2 });

        let amalgam = WordEngine::new(&samples::sl2z()).unwrap();
        let hnn = WordEngine::new(&samples::klein_hnn()).unwrap();
        let x = hnn.normalize(&[T]).unwrap();
        assert_eq!(amalgam.multiply(&x, &x).unwrap_err(), Error::MismatchedGraphs);
        assert!(amalgam.normalize(&[T]).is_err());
    }

    #[test]
    fn classify_torsion_and_infinite_order() {
        let eng = WordEngine::new(&samples::klein_hnn()).unwrap();
        // t a t^-1 is b; t^-1 a t is conjugate to a
        let x = eng.normalize(&[TI, v(0, 1), T]).unwrap();
        let ElementKind::Torsion { pair, conjugator } = eng.classify(&x, 6).unwrap() else {
            panic!("torsion expected");
        };
        assert_eq!(pair, VertexElement::new(0, 1));
        assert_eq!(eng.as_vertex_element(&eng.conjugate(&conjugator, &x)), Some(pair));
        let t = eng.normalize(&[T]).unwrap();
        assert_eq!(eng.classify(&t, 6).unwrap(), ElementKind::InfiniteOrder);
        let deep = eng.normalize(&[T, T, TI, v(0, 3), T, TI, TI]).unwrap();
        assert!(matches!(eng.classify(&deep, 0), Err(Error::Undecided(_))));
        assert!(matches!(eng.classify(&deep, 6), Ok(ElementKind::Torsion { .. })));

        let sl = WordEngine::new(&samples::sl2z()).unwrap();
        let st = sl.normalize(&[v(0, 1), v(1, 1)]).unwrap();
        assert_eq!(sl.classify(&st, 6).unwrap(), ElementKind::InfiniteOrder);
        let conj = sl.normalize(&[v(1, 1), v(0, 1), v(1, 5)]).unwrap();
        let ElementKind::Torsion { pair, .. } = sl.classify(&conj, 6).unwrap() else {
            panic!("torsion expected");
        };
        assert_eq!(pair, VertexElement::new(0, 1));
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        for g in [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()] {
            let eng = WordEngine::new(&g).unwrap();
            let mut all = Vec::new();
            eng.for_each_form::<()>(3, |nf| {
                all.push(nf.clone());
                ControlFlow::Continue(())
            });
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for nf in &all {
                eng.check_form(nf).unwrap();
                assert!(nf.syllable_length() <= 3);
                assert_eq!(&eng.normalize(&eng.letters(nf)).unwrap(), nf);
            }
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    /// Closing `{e}` under right multiplication by single letters, keeping
    /// forms of length at most `depth`, reaches exactly the enumerated set.
    #[test]
    fn enumeration_is_complete() {
        for (g, hnn) in [(samples::sl2z(), false), (samples::klein_hnn(), true), (samples::d4_hnn(), true)] {
            let eng = WordEngine::new(&g).unwrap();
            let mut letters: Vec<Letter> = g.pairs().map(|p| v(p.vertex, p.element)).collect();
            if hnn {
                letters.extend([T, TI]);
            }
            let depth = 3;
            let mut seen = HashSet::from([NormalForm::identity()]);
            let mut queue = VecDeque::from([NormalForm::identity()]);
            while let Some(x) = queue.pop_front() {
                for l in &letters {
                    let y = eng.mul_unchecked(&x, &eng.normalize(std::slice::from_ref(l)).unwrap());
                    if y.syllable_length() <= depth && seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            let mut enumerated = HashSet::new();
            eng.for_each_form::<()>(depth, |nf| {
                enumerated.insert(nf.clone());
                ControlFlow::Continue(())
            });
            assert_eq!(enumerated, seen, "{}", g.name());
        }
    }

    /// Free words of bounded length over the generators of the graph.
    fn word_strategy(hnn: bool, orders: Vec<usize>, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        let vertices = orders.len();
        let letter = (0..vertices, 0..64usize, 0..4u8).prop_map(move |(vx, e, pick)| {
            if hnn && pick == 0 {
                T
            } else if hnn && pick == 1 {
                TI
            } else {
                v(vx, e % orders[vx])
            }
        });
        proptest::collection::vec(letter, 0..=max_len)
    }

    fn engine_orders(g: &ValidatedGraph) -> Vec<usize> {
        g.vertices().iter().map(|v| v.group.order()).collect()
    }

    /// Reduces a word to the empty word using only the defining relations
    /// and length-non-increasing moves, exhaustively.
    fn reduces_to_identity(g: &ValidatedGraph, word: Vec<Letter>) -> bool {
        let e = &g.edges()[0];
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([word]);
        while let Some(w) = queue.pop_front() {
            if w.is_empty() {
                return true;
            }
            if !seen.insert(w.clone()) || seen.len() > 200_000 {
                continue;
            }
            let mut push = |x: Vec<Letter>| {
                if !seen.contains(&x) {
                    queue.push_back(x);
                }
            };
            for i in 0..w.len() {
                if let Letter::Vertex { vertex, element } = w[i] {
                    if element == 0 {
                        let mut x = w.clone();
                        x.remove(i);
                        push(x);
                    }
                    // transfer an edge element across an amalgam edge
                    if !e.is_loop() {
                        let (to, fmap, tmap) = if vertex == e.source {
                            (e.target, &e.alpha, &e.beta)
                        } else {
                            (e.source, &e.beta, &e.alpha)
                        };
                        if let Some(c) = fmap.image().iter().position(|&y| y == element) {
                            let mut x = w.clone();
                            x[i] = Letter::vertex(to, tmap.apply(c));
                            push(x);
                        }
                    }
                }
                if i + 1 < w.len() {
                    match (w[i], w[i + 1]) {
                        (
                            Letter::Vertex { vertex: a, element: x },
                            Letter::Vertex { vertex: b, element: y },
                        ) if a == b => {
                            let mut n = w.clone();
                            n[i] = Letter::vertex(a, g.vertex_group(a).mul(x, y));
                            n.remove(i + 1);
                            push(n);
                        }
                        (Letter::Stable(p), Letter::Stable(q)) if p == -q => {
                            let mut n = w.clone();
                            n.drain(i..i + 2);
                            push(n);
                        }
                        _ => {}
                    }
                }
                if i + 2 < w.len() {
                    if let (Letter::Stable(p), Letter::Vertex { vertex, element }, Letter::Stable(q)) =
                        (w[i], w[i + 1], w[i + 2])
                    {
                        if p == -q {
                            let (inside, out) = if p > 0 { (&e.alpha, &e.beta) } else { (&e.beta, &e.alpha) };
                            if let Some(c) = inside.image().iter().position(|&y| y == element) {
                                let mut n = w.clone();
                                n.splice(i..i + 3, [Letter::vertex(vertex, out.apply(c))]);
                                push(n);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn inverse_word(g: &ValidatedGraph, w: &[Letter]) -> Vec<Letter> {
        w.iter()
            .rev()
            .map(|l| match *l {
                Letter::Vertex { vertex, element } => Letter::vertex(vertex, g.vertex_group(vertex).inv(element)),
                Letter::Stable(e) => Letter::Stable(-e),
            })
            .collect()
    }

    fn free_syllables(w: &[Letter], hnn: bool) -> usize {
        if hnn {
            let stables = w.iter().filter(|l| matches!(l, Letter::Stable(_))).count();
            let runs = w
                .iter()
                .enumerate()
                .filter(|(i, l)| {
                    matches!(l, Letter::Vertex { .. })
                        && (*i == 0 || matches!(w[i - 1], Letter::Stable(_)))
                })
                .count();
            stables + runs
        } else {
            w.iter()
                .enumerate()
                .filter(|(i, l)| match (l, i.checked_sub(1).map(|j| w[j])) {
                    (Letter::Vertex { vertex, .. }, Some(Letter::Vertex { vertex: p, .. })) => *vertex != p,
                    _ => true,
                })
                .count()
        }
    }

    fn check_uniqueness(g: ValidatedGraph, hnn: bool) {
        let eng = WordEngine::new(&g).unwrap();
        let orders = engine_orders(&g);
        proptest!(ProptestConfig::with_cases(48), |(u in word_strategy(hnn, orders.clone(), 6), w in word_strategy(hnn, orders.clone(), 6))| {
            let nu = eng.normalize(&u).unwrap();
            let nw = eng.normalize(&w).unwrap();
            let mut probe = u.clone();
            probe.extend(inverse_word(&g, &w));
            prop_assert_eq!(nu == nw, reduces_to_identity(&g, probe));
            // u u^-1 always reduces
            let mut back = u.clone();
            back.extend(inverse_word(&g, &u));
            prop_assert!(reduces_to_identity(&g, back));
        });
    }

    #[test]
    fn uniqueness_matches_rewriting_sl2z() {
        check_uniqueness(samples::sl2z(), false);
    }

    #[test]
    fn uniqueness_matches_rewriting_klein() {
        check_uniqueness(samples::klein_hnn(), true);
    }

    #[test]
    fn uniqueness_matches_rewriting_d4() {
        check_uniqueness(samples::d4_hnn(), true);
    }

    #[test]
    fn equal_words_from_relations_share_a_form() {
        // Words built by inserting defining relations must normalize equally.
        let g = samples::d4_hnn();
        let eng = WordEngine::new(&g).unwrap();
        let base = vec![v(0, 1), T, v(0, 6), TI, v(0, 3)];
        let mut with_relation = base.clone();
        // insert t s t^-1 (sr)^-1 = e
        with_relation.splice(2..2, [T, v(0, 4), TI, v(0, 5)]);
        assert_eq!(eng.normalize(&base).unwrap(), eng.normalize(&with_relation).unwrap());
        let mut probe = base.clone();
        probe.extend(inverse_word(&g, &with_relation));
        assert!(reduces_to_identity(&g, probe));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn group_axioms_in_normal_forms(
            which in 0..4usize,
            a in proptest::collection::vec((0..2usize, 0..64usize, 0..4u8), 0..8),
            b in proptest::collection::vec((0..2usize, 0..64usize, 0..4u8), 0..8),
            c in proptest::collection::vec((0..2usize, 0..64usize, 0..4u8), 0..8),
        ) {
            let g = [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn(), samples::psl2z()][which].clone();
            let eng = WordEngine::new(&g).unwrap();
            let hnn = eng.is_hnn();
            let orders = engine_orders(&g);
            let word = |spec: &[(usize, usize, u8)]| -> Vec<Letter> {
                spec.iter().map(|&(vx, e, pick)| {
                    let vx = vx % orders.len();
                    if hnn && pick == 0 { T } else if hnn && pick == 1 { TI } else { v(vx, e % orders[vx]) }
                }).collect()
            };
            let (wa, wb, wc) = (word(&a), word(&b), word(&c));
            let (x, y, z) = (eng.normalize(&wa).unwrap(), eng.normalize(&wb).unwrap(), eng.normalize(&wc).unwrap());
            let xy_z = eng.multiply(&eng.multiply(&x, &y).unwrap(), &z).unwrap();
            let x_yz = eng.multiply(&x, &eng.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(xy_z, x_yz);
            prop_assert!(eng.multiply(&x, &eng.invert(&x)).unwrap().is_identity());
            prop_assert_eq!(eng.multiply(&x, &NormalForm::identity()).unwrap(), x.clone());
            prop_assert_eq!(eng.normalize(&eng.letters(&x)).unwrap(), x.clone());
            prop_assert!(x.syllable_length() <= free_syllables(&wa, hnn));
            let mut joined = wa.clone();
            joined.extend(wb.clone());
            prop_assert_eq!(eng.normalize(&joined).unwrap(), eng.multiply(&x, &y).unwrap());
        }

        #[test]
        fn reduced_forms_of_positive_length_have_infinite_order(
            which in 0..3usize,
            spec in proptest::collection::vec((0..2usize, 0..64usize, 0..4u8), 1..8),
        ) {
            let g = [samples::sl2z(), samples::klein_hnn(), samples::d4_hnn()][which].clone();
            let eng = WordEngine::new(&g).unwrap();
            let hnn = eng.is_hnn();
            let orders = engine_orders(&g);
            let w: Vec<Letter> = spec.iter().map(|&(vx, e, pick)| {
                let vx = vx % orders.len();
                if hnn && pick == 0 { T } else if hnn && pick == 1 { TI } else { v(vx, e % orders[vx]) }
            }).collect();
            let x = eng.normalize(&w).unwrap();
            match eng.classify(&x, 8).unwrap() {
                ElementKind::InfiniteOrder => {
                    for k in 1..=24 {
                        prop_assert!(!eng.power(&x, k).is_identity());
                    }
                }
                ElementKind::Torsion { pair, conjugator } => {
                    let c = eng.conjugate(&conjugator, &x);
                    prop_assert_eq!(eng.as_vertex_element(&c), Some(pair));
                    let order = g.vertex_group(pair.vertex).element_order(pair.element);
                    prop_assert!(eng.power(&x, order).is_identity());
                }
            }
        }
    }
}
