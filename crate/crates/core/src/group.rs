//! Finite groups given by multiplication tables over dense element indices.
//!
//! Element `0` is always the identity. Groups can be read from an explicit
//! Cayley table or closed up from permutation generators; in the latter case
//! elements are numbered in breadth-first discovery order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted by the builders unless overridden.
pub const DEFAULT_ORDER_CAP: usize = 5040;

/// Input description of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// `Z/n` with element `i` the `i`-th power of the generator.
    Cyclic {
        order: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<String>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Table { table, labels } => {
                FiniteGroup::from_table(table, labels.clone(), cap)
            }
            GroupSpec::Perm {
                degree,
                generators,
                labels,
            } => FiniteGroup::from_permutations(*degree, generators, labels.clone(), cap),
            GroupSpec::Cyclic { order, generator } => {
                if *order == 0 {
                    return Err(Error::NotAGroup("cyclic group of order 0".into()));
                }
                if *order > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                Ok(match generator {
                    Some(g) => FiniteGroup::cyclic_labelled(*order, g),
                    None => FiniteGroup::cyclic(*order),
                })
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("labels", &self.labels)
            .finish()
    }
}

/// One orbit of the conjugation action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > cap {
            return Err(Error::GroupTooLarge { cap });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("row {i} has entry {bad} out of range")));
            }
            mul.extend_from_slice(row);
        }
        for x in 0..n {
            if mul[x] != x || mul[x * n] != x {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        check_latin(&mul, n)?;
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x * n + y] == 0).expect("latin row"))
            .collect();
        let group = FiniteGroup {
            order: n,
            mul,
            inv,
            labels: None,
        };
        group.check_associative()?;
        group.with_labels(labels)
    }

    /// Closes the permutation generators (images of `0..degree`) under
    /// composition. The product `x * y` applies `x` first, then `y`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&p| p < degree && !std::mem::replace(&mut seen[p], true));
            if !ok {
                return Err(Error::NotAPermutation { index, degree });
            }
        }
        let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&p| y[p]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in generators {
                let next = compose(&current, g);
                if !index.contains_key(&next) {
                    if elements.len() == cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![0; n * n];
        let mut inv = vec![0; n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                let k = index[&compose(x, y)];
                mul[i * n + j] = k;
                if k == 0 {
                    inv[i] = j;
                }
            }
        }
        FiniteGroup {
            order: n,
            mul,
            inv,
            labels: None,
        }
        .with_labels(labels)
    }

    fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(labels) = &labels {
            if labels.len() != self.order {
                return Err(Error::NotAGroup(format!(
                    "{} labels for a group of order {}",
                    labels.len(),
                    self.order
                )));
            }
            let distinct: HashSet<&String> = labels.iter().collect();
            if distinct.len() != labels.len() {
                return Err(Error::NotAGroup("labels are not pairwise distinct".into()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Light's test over a generating set.
    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in self.generating_set() {
            for x in 0..n {
                let xa = self.mul(x, a);
                for y in 0..n {
                    if self.mul(xa, y) != self.mul(x, self.mul(a, y)) {
                        return Err(Error::NotAGroup(format!(
                            "non-associative: ({x}*{a})*{y} != {x}*({a}*{y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A greedy generating set: each element not yet reached is adjoined.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order];
        reached[0] = true;
        for x in 1..self.order {
            if !reached[x] {
                gens.push(x);
                reached = self.right_closure(&gens);
            }
        }
        gens
    }

    /// Everything reachable from the identity by right multiplication by `gens`.
    fn right_closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `k x k^-1`
    #[inline]
    pub fn conjugate(&self, k: usize, x: usize) -> usize {
        self.mul(self.mul(k, x), self.inv(k))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None if x == 0 => "e".to_string(),
            None => format!("g{x}"),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Conjugacy classes ordered by representative (the least index in each class).
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if assigned[x] {
                continue;
            }
            let mut members: Vec<usize> = self.elements().map(|k| self.conjugate(k, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                assigned[m] = true;
            }
            classes.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        classes
    }

    /// For each element, the index of its class in [`Self::conjugacy_classes`].
    pub fn class_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.order];
        for (i, c) in self.conjugacy_classes().iter().enumerate() {
            for &m in &c.members {
                map[m] = i;
            }
        }
        map
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let seen = self.right_closure(gens);
        Subgroup {
            members: self.elements().filter(|&x| seen[x]).collect(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// The full subgroup lattice, sorted by size and then member list.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.all_subgroups_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn all_subgroups_with_cap(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order > cap {
            return Err(Error::GroupTooLarge { cap });
        }
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for x in self.elements() {
            let h = self.generated_subgroup(&[x]);
            if seen.insert(h.members.clone()) {
                cyclic.push((x, h));
            }
        }
        // Each found subgroup is kept with a generating list so joins stay cheap.
        let mut found: Vec<(Vec<usize>, Subgroup)> =
            cyclic.iter().map(|(g, h)| (vec![*g], h.clone())).collect();
        let mut cursor = 0;
        while cursor < found.len() {
            let (gens, h) = found[cursor].clone();
            cursor += 1;
            for (g, c) in &cyclic {
                if h.contains(*g) || c.members.len() == 1 {
                    continue;
                }
                let mut joined_gens = gens.clone();
                joined_gens.push(*g);
                let joined = self.generated_subgroup(&joined_gens);
                if seen.insert(joined.members.clone()) {
                    found.push((joined_gens, joined));
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().map(|(_, h)| h).collect();
        all.sort_by(|a, b| {
            a.members
                .len()
                .cmp(&b.members.len())
                .then_with(|| a.members.cmp(&b.members))
        });
        Ok(all)
    }

    /// `k H k^-1`
    pub fn conjugate_subgroup(&self, k: usize, h: &Subgroup) -> Subgroup {
        let mut members: Vec<usize> = h.members.iter().map(|&x| self.conjugate(k, x)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    // Small catalogue used by examples and tests.

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(&table, None, usize::MAX).expect("cyclic table")
    }

    /// Cyclic group with labels `e, g, g^2, ...`.
    pub fn cyclic_labelled(n: usize, generator: &str) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}^{i}"),
            })
            .collect();
        FiniteGroup::cyclic(n).with_labels(Some(labels)).expect("distinct labels")
    }

    /// Dihedral group of order `2n`; element `a*n + i` is `s^a r^i`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let order = 2 * n;
        let decode = |x: usize| (x / n, x % n);
        let table: Vec<Vec<usize>> = (0..order)
            .map(|x| {
                (0..order)
                    .map(|y| {
                        let (a, i) = decode(x);
                        let (b, j) = decode(y);
                        // s^a r^i s^b r^j = s^(a+b) r^(j + (-1)^b i)
                        let k = if b == 0 { (i + j) % n } else { (j + n - i) % n };
                        ((a + b) % 2) * n + k
                    })
                    .collect()
            })
            .collect();
        let power = |base: &str, i: usize| match i {
            0 => String::new(),
            1 => base.to_string(),
            _ => format!("{base}^{i}"),
        };
        let labels = (0..order)
            .map(|x| {
                let (a, i) = decode(x);
                let l = format!("{}{}", if a == 1 { "s" } else { "" }, power("r", i));
                if l.is_empty() {
                    "e".to_string()
                } else {
                    l
                }
            })
            .collect();
        FiniteGroup::from_table(&table, Some(labels), usize::MAX).expect("dihedral table")
    }

    /// `V = {e, a, b, ab}`.
    pub fn klein_four() -> Self {
        let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
        FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], Some(labels), 4)
            .expect("klein four")
    }

    pub fn symmetric(n: usize) -> Self {
        assert!(n > 0);
        let mut gens = Vec::new();
        if n > 1 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::from_permutations(n, &gens, None, usize::MAX).expect("symmetric group")
    }

    pub fn alternating4() -> Self {
        FiniteGroup::from_permutations(
            4,
            &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]],
            None,
            usize::MAX,
        )
        .expect("A4")
    }

    pub fn quaternion() -> Self {
        // Elements +-1, +-i, +-j, +-k encoded as sign*4 + unit.
        let unit_mul = |u: usize, v: usize| -> (bool, usize) {
            // units 0=1, 1=i, 2=j, 3=k
            const TABLE: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            TABLE[u][v]
        };
        let table: Vec<Vec<usize>> = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (neg, u) = unit_mul(x % 4, y % 4);
                        let sign = (x / 4 + y / 4 + neg as usize) % 2;
                        sign * 4 + u
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].map(String::from).to_vec();
        FiniteGroup::from_table(&table, Some(labels), 8).expect("quaternion")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (xa, xb) = (x / b.order, x % b.order);
                        let (ya, yb) = (y / b.order, y % b.order);
                        a.mul(xa, ya) * b.order + b.mul(xb, yb)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table, None, usize::MAX).expect("direct product")
    }
}

fn check_latin(mul: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = mul[i * n + j];
            if seen[v] == i {
                return Err(Error::NotAGroup(format!("row {i} is not a bijection (repeats {v})")));
            }
            seen[v] = i;
        }
    }
    let mut seen = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..n {
            let v = mul[i * n + j];
            if seen[v] == j {
                return Err(Error::NotAGroup(format!(
                    "column {j} is not a bijection (repeats {v})"
                )));
            }
            seen[v] = j;
        }
    }
    Ok(())
}

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates closure, identity, inverses and Lagrange within `parent`.
    pub fn new(parent: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::InvalidSubgroup(format!("element {bad} out of range")));
        }
        if members.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("identity missing".into()));
        }
        let mut inside = vec![false; parent.order()];
        for &m in &members {
            inside[m] = true;
        }
        for &x in &members {
            if !inside[parent.inv(x)] {
                return Err(Error::InvalidSubgroup(format!("inverse of {x} missing")));
            }
            for &y in &members {
                if !inside[parent.mul(x, y)] {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed: {x}*{y} = {} missing",
                        parent.mul(x, y)
                    )));
                }
            }
        }
        if !parent.order().is_multiple_of(members.len()) {
            return Err(Error::InvalidSubgroup(format!(
                "order {} does not divide {}",
                members.len(),
                parent.order()
            )));
        }
        Ok(Subgroup { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Image under an element map; the result is sorted.
    pub fn map(&self, image: &[usize]) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&x| image[x]).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        Subgroup { members }
    }
}

/// A map between finite groups given by a full element-image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl GroupHom {
    /// Checks array shape and the homomorphism law.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::InvalidMap(format!(
                "image array has length {} but the source has order {}",
                image.len(),
                source.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= target.order()) {
            return Err(Error::InvalidMap(format!(
                "image {bad} out of range for target of order {}",
                target.order()
            )));
        }
        let hom = GroupHom {
            source,
            target,
            image,
        };
        hom.check_homomorphism()?;
        Ok(hom)
    }

    pub fn check_homomorphism(&self) -> Result<()> {
        if self.image[0] != 0 {
            return Err(Error::NotAHomomorphism { x: 0, y: 0 });
        }
        for x in self.source.elements() {
            for y in self.source.elements() {
                let lhs = self.image[self.source.mul(x, y)];
                let rhs = self.target.mul(self.image[x], self.image[y]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// The image of the whole source group.
    pub fn image_subgroup(&self) -> Subgroup {
        let mut members = self.image.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_sorted_unchecked(members)
    }

    /// Partial inverse on the image (only meaningful when injective).
    pub fn preimage_table(&self) -> Vec<Option<usize>> {
        let mut pre = vec![None; self.target.order()];
        for (x, &y) in self.image.iter().enumerate() {
            pre[y].get_or_insert(x);
        }
        pre
    }
}

/// Verifies the homomorphism law, then reports injectivity.
pub fn check_injective_hom(hom: &GroupHom) -> Result<bool> {
    hom.check_homomorphism()?;
    Ok(hom.is_injective())
}
