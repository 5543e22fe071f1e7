//! Conjugacy fusion of torsion elements and finite subgroups.
//!
//! Two vertex-group elements (or subgroups) are conjugate in the fundamental
//! group exactly when they are joined by a chain of local conjugations inside
//! a vertex group and identifications `alpha_e(x) ~ beta_e(x)` across edges.
//! Both partitions are computed as union-find closures of those relations.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ValidatedGraph, VertexElement};
use crate::group::Subgroup;

/// Disjoint sets with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns true if the sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    /// Groups `0..len` by root; each group sorted, groups ordered by least member.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_unstable_by_key(|g| g[0]);
        groups
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionClass {
    pub id: usize,
    pub representative: VertexElement,
    pub members: Vec<VertexElement>,
    pub element_order: usize,
}

/// A conjugacy class of one vertex group, tagged with its fused class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalClass {
    pub vertex: usize,
    pub representative: usize,
    pub members: Vec<usize>,
    pub class_id: usize,
}

/// Partition of all `(vertex, element)` pairs into conjugacy classes of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionClassTable {
    classes: Vec<TorsionClass>,
    offsets: Vec<usize>,
    index: Vec<usize>,
    local: Vec<LocalClass>,
}

impl TorsionClassTable {
    pub fn classes(&self) -> &[TorsionClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Vertex-local conjugacy classes, ordered by `(vertex, representative)`.
    pub fn local_classes(&self) -> &[LocalClass] {
        &self.local
    }

    pub fn locate_class(&self, vertex: usize, element: usize) -> Result<usize> {
        let unknown = Error::UnknownPair { vertex, element };
        let start = *self.offsets.get(vertex).ok_or(unknown.clone())?;
        let end = *self.offsets.get(vertex + 1).ok_or(unknown.clone())?;
        if start + element >= end {
            return Err(unknown);
        }
        Ok(self.index[start + element])
    }

    pub fn class_of(&self, p: VertexElement) -> Result<usize> {
        self.locate_class(p.vertex, p.element)
    }

    pub fn identity_class(&self) -> usize {
        self.index[0]
    }

    /// Index into [`Self::local_classes`] of the local class of `p`.
    pub fn local_class_of(&self, p: VertexElement) -> usize {
        self.local
            .iter()
            .position(|c| c.vertex == p.vertex && c.members.binary_search(&p.element).is_ok())
            .expect("every pair lies in a local class")
    }
}

/// Fuses local conjugacy classes across edge identifications.
pub fn element_fusion(graph: &ValidatedGraph) -> TorsionClassTable {
    let mut uf = UnionFind::new(graph.pair_count());
    let idx = |v: usize, x: usize| graph.pair_index(VertexElement::new(v, x)).expect("pair");
    let mut local_raw = Vec::new();
    for (v, vx) in graph.vertices().iter().enumerate() {
        for class in vx.group.conjugacy_classes() {
            for &m in &class.members {
                uf.union(idx(v, class.representative), idx(v, m));
            }
            local_raw.push((v, class));
        }
    }
    for e in graph.edges() {
        for x in e.group.elements() {
            uf.union(idx(e.source, e.alpha.apply(x)), idx(e.target, e.beta.apply(x)));
        }
    }
    build_table(graph, uf.groups(), local_raw)
}

fn build_table(
    graph: &ValidatedGraph,
    groups: Vec<Vec<usize>>,
    local_raw: Vec<(usize, crate::group::ConjugacyClass)>,
) -> TorsionClassTable {
    let mut index = vec![0; graph.pair_count()];
    let classes: Vec<TorsionClass> = groups
        .into_iter()
        .enumerate()
        .map(|(id, members)| {
            for &m in &members {
                index[m] = id;
            }
            let members: Vec<VertexElement> = members.into_iter().map(|i| graph.pair_at(i)).collect();
            let representative = members[0];
            TorsionClass {
                id,
                representative,
                element_order: graph
                    .vertex_group(representative.vertex)
                    .element_order(representative.element),
                members,
            }
        })
        .collect();
    let mut offsets: Vec<usize> = (0..graph.vertices().len())
        .map(|v| graph.pair_index(VertexElement::new(v, 0)).expect("vertex"))
        .collect();
    offsets.push(graph.pair_count());
    let local = local_raw
        .into_iter()
        .map(|(v, c)| LocalClass {
            vertex: v,
            representative: c.representative,
            class_id: index[offsets[v] + c.representative],
            members: c.members,
        })
        .collect();
    TorsionClassTable {
        classes,
        offsets,
        index,
        local,
    }
}

/// A vertex-group subgroup, keyed by vertex index and sorted members.
pub type SubgroupKey = (usize, Subgroup);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupClass {
    pub id: usize,
    /// Least key in the whole conjugacy class (not only among the supplied ones).
    pub canonical: SubgroupKey,
    /// The supplied subgroups in this class, sorted and deduplicated.
    pub members: Vec<SubgroupKey>,
    pub order: usize,
}

/// Fusion of a supplied list of subgroups, with lookups for anything reached
/// while saturating.
#[derive(Debug, Clone)]
pub struct SubgroupClassTable {
    classes: Vec<SubgroupClass>,
    lookup: HashMap<SubgroupKey, usize>,
}

impl SubgroupClassTable {
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    /// Class id of any subgroup met during saturation (in particular every supplied one).
    pub fn class_of(&self, vertex: usize, h: &Subgroup) -> Option<usize> {
        self.lookup.get(&(vertex, h.clone())).copied()
    }
}

/// Saturates the supplied subgroups under local conjugation and transfer
/// through edge groups, then groups them by conjugacy class.
pub fn subgroup_fusion(
    graph: &ValidatedGraph,
    stabilizers: &[SubgroupKey],
) -> Result<SubgroupClassTable> {
    for (v, h) in stabilizers {
        if *v >= graph.vertices().len() {
            return Err(Error::UnknownStabilizer(format!("{v}")));
        }
        Subgroup::new(graph.vertex_group(*v), h.members())?;
    }
    let mut nodes: Vec<SubgroupKey> = Vec::new();
    let mut ids: HashMap<SubgroupKey, usize> = HashMap::new();
    let mut uf = UnionFind::new(0);
    let mut queue = VecDeque::new();
    let mut intern = |key: SubgroupKey,
                      nodes: &mut Vec<SubgroupKey>,
                      uf: &mut UnionFind,
                      queue: &mut VecDeque<usize>|
     -> usize {
        if let Some(&i) = ids.get(&key) {
            return i;
        }
        let i = uf.push();
        ids.insert(key.clone(), i);
        nodes.push(key);
        queue.push_back(i);
        i
    };
    for key in stabilizers {
        intern(key.clone(), &mut nodes, &mut uf, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let (v, h) = nodes[i].clone();
        let group = graph.vertex_group(v);
        let mut neighbours = Vec::new();
        for k in group.elements() {
            neighbours.push((v, group.conjugate_subgroup(k, &h)));
        }
        for e in graph.edges() {
            for (from, to, into_from, into_to) in
                [(e.source, e.target, &e.alpha, &e.beta), (e.target, e.source, &e.beta, &e.alpha)]
            {
                if from != v || !h.is_subset_of(&into_from.image_subgroup()) {
                    continue;
                }
                let pre = into_from.preimage_table();
                let image: Vec<usize> = h
                    .members()
                    .iter()
                    .map(|&x| into_to.apply(pre[x].expect("inside the edge image")))
                    .collect();
                let mut image = image;
                image.sort_unstable();
                neighbours.push((to, Subgroup::from_sorted_unchecked(image)));
            }
        }
        for n in neighbours {
            let j = intern(n, &mut nodes, &mut uf, &mut queue);
            uf.union(i, j);
        }
    }

    // Canonical key per root: least key in the saturated class.
    let mut canonical: HashMap<usize, SubgroupKey> = HashMap::new();
    for (i, key) in nodes.iter().enumerate() {
        let r = uf.find(i);
        canonical
            .entry(r)
            .and_modify(|c| {
                if key < c {
                    *c = key.clone();
                }
            })
            .or_insert_with(|| key.clone());
    }
    let mut supplied: HashMap<usize, Vec<SubgroupKey>> = HashMap::new();
    for key in stabilizers {
        let r = uf.find(ids[key]);
        supplied.entry(r).or_default().push(key.clone());
    }
    let mut roots: Vec<usize> = supplied.keys().copied().collect();
    roots.sort_by(|a, b| canonical[a].cmp(&canonical[b]));
    let mut class_of_root = HashMap::new();
    let classes: Vec<SubgroupClass> = roots
        .iter()
        .enumerate()
        .map(|(id, r)| {
            class_of_root.insert(*r, id);
            let mut members = supplied[r].clone();
            members.sort();
            members.dedup();
            SubgroupClass {
                id,
                order: canonical[r].1.order(),
                canonical: canonical[r].clone(),
                members,
            }
        })
        .collect();
    let mut lookup = HashMap::new();
    for (key, &i) in &ids {
        if let Some(&id) = class_of_root.get(&uf.find(i)) {
            lookup.insert(key.clone(), id);
        }
    }
    Ok(SubgroupClassTable { classes, lookup })
}
