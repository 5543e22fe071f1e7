//! Finite graphs of finite groups and the quotient data of their Bass–Serre trees.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::rational::{reciprocal, zero, Rational};

#[derive(Debug, Clone)]
struct RawEdge {
    id: String,
    group: Arc<FiniteGroup>,
    source: String,
    target: String,
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

/// An unvalidated graph of groups. Loops (source = target) are HNN letters.
#[derive(Debug, Clone, Default)]
pub struct GraphOfGroups {
    name: String,
    vertices: Vec<(String, Arc<FiniteGroup>)>,
    edges: Vec<RawEdge>,
}

impl GraphOfGroups {
    pub fn new(name: impl Into<String>) -> Self {
        GraphOfGroups {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertex(mut self, id: impl Into<String>, group: Arc<FiniteGroup>) -> Self {
        self.vertices.push((id.into(), group));
        self
    }

    /// Adds an edge with full element-image arrays for both inclusions.
    pub fn edge(
        mut self,
        id: impl Into<String>,
        group: Arc<FiniteGroup>,
        source: impl Into<String>,
        target: impl Into<String>,
        alpha: Vec<usize>,
        beta: Vec<usize>,
    ) -> Self {
        self.edges.push(RawEdge {
            id: id.into(),
            group,
            source: source.into(),
            target: target.into(),
            alpha,
            beta,
        });
        self
    }

    pub fn validate(&self) -> Result<ValidatedGraph> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut by_id = HashMap::new();
        for (i, (id, _)) in self.vertices.iter().enumerate() {
            if by_id.insert(id.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {id:?}")));
            }
        }
        let mut edge_ids = HashMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for raw in &self.edges {
            if edge_ids.insert(raw.id.as_str(), ()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge id {:?}", raw.id)));
            }
            let lookup = |v: &str| {
                by_id.get(v).copied().ok_or_else(|| {
                    Error::InvalidGraph(format!("edge {:?} references unknown vertex {v:?}", raw.id))
                })
            };
            let source = lookup(&raw.source)?;
            let target = lookup(&raw.target)?;
            let map = |name: &str, v: usize, image: &[usize]| -> Result<GroupHom> {
                let located = |e: Error| match e {
                    Error::NotAHomomorphism { x, y } => Error::InvalidGraph(format!(
                        "edge {:?}: {name} is not a homomorphism (fails at {x}*{y})",
                        raw.id
                    )),
                    other => Error::InvalidGraph(format!("edge {:?}: {name}: {other}", raw.id)),
                };
                let hom = GroupHom::new(raw.group.clone(), self.vertices[v].1.clone(), image.to_vec())
                    .map_err(located)?;
                if !hom.is_injective() {
                    return Err(Error::NotInjective(format!(
                        "edge {:?}: {name} into vertex {:?}",
                        raw.id, self.vertices[v].0
                    )));
                }
                Ok(hom)
            };
            let alpha = map("alpha", source, &raw.alpha)?;
            let beta = map("beta", target, &raw.beta)?;
            edges.push(Edge {
                id: raw.id.clone(),
                group: raw.group.clone(),
                source,
                target,
                alpha,
                beta,
            });
        }
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|(id, group)| Vertex {
                id: id.clone(),
                group: group.clone(),
            })
            .collect();

        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        let mut total = 0;
        for v in &vertices {
            offsets.push(total);
            total += v.group.order();
        }
        offsets.push(total);

        let graph = ValidatedGraph {
            name: self.name.clone(),
            vertices,
            edges,
            offsets,
        };
        let unreached: Vec<&str> = graph
            .reachable_from(0)
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(i, _)| graph.vertices[i].id.as_str())
            .collect();
        if !unreached.is_empty() {
            return Err(Error::InvalidGraph(format!(
                "graph is disconnected; unreachable vertices: {}",
                unreached.join(", ")
            )));
        }
        Ok(graph)
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub id: String,
    pub group: Arc<FiniteGroup>,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub id: String,
    pub group: Arc<FiniteGroup>,
    pub source: usize,
    pub target: usize,
    pub alpha: GroupHom,
    pub beta: GroupHom,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A `(vertex index, element index)` pair naming a torsion element of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexElement {
    pub vertex: usize,
    pub element: usize,
}

impl VertexElement {
    pub fn new(vertex: usize, element: usize) -> Self {
        VertexElement { vertex, element }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Amenability {
    NonAmenable,
    AmenableOrFinite,
}

impl fmt::Display for Amenability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Amenability::NonAmenable => "non_amenable",
            Amenability::AmenableOrFinite => "amenable_or_finite",
        })
    }
}

/// A connected graph of groups whose edge maps are checked injective homomorphisms.
#[derive(Debug, Clone)]
pub struct ValidatedGraph {
    name: String,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
}

impl ValidatedGraph {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_group(&self, v: usize) -> &FiniteGroup {
        &self.vertices[v].group
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Total number of `(vertex, element)` pairs.
    pub fn pair_count(&self) -> usize {
        *self.offsets.last().expect("offsets")
    }

    pub fn pair_index(&self, p: VertexElement) -> Option<usize> {
        if p.vertex < self.vertices.len() && p.element < self.vertex_group(p.vertex).order() {
            Some(self.offsets[p.vertex] + p.element)
        } else {
            None
        }
    }

    pub fn pair_at(&self, index: usize) -> VertexElement {
        let vertex = self.offsets.partition_point(|&o| o <= index) - 1;
        VertexElement::new(vertex, index - self.offsets[vertex])
    }

    pub fn pairs(&self) -> impl Iterator<Item = VertexElement> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .flat_map(|(v, vx)| vx.group.elements().map(move |x| VertexElement::new(v, x)))
    }

    pub fn pair_label(&self, p: VertexElement) -> String {
        format!("{}:{}", self.vertices[p.vertex].id, self.vertex_group(p.vertex).label(p.element))
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(e.source, e.target), (e.target, e.source)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        seen
    }

    /// Edge indices of a breadth-first spanning tree rooted at the least vertex id.
    /// The remaining edges are the stable letters of the fundamental group.
    pub fn spanning_tree(&self) -> Vec<usize> {
        let root = (0..self.vertices.len())
            .min_by(|&a, &b| self.vertices[a].id.cmp(&self.vertices[b].id))
            .expect("nonempty");
        let mut seen = vec![false; self.vertices.len()];
        seen[root] = true;
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                let other = if e.source == v {
                    e.target
                } else if e.target == v {
                    e.source
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    tree.push(i);
                    queue.push_back(other);
                }
            }
        }
        tree.sort_unstable();
        tree
    }

    pub fn stable_letters(&self) -> Vec<usize> {
        let tree = self.spanning_tree();
        (0..self.edges.len()).filter(|i| !tree.contains(i)).collect()
    }

    /// `sum_v 1/|G_v| - sum_e 1/|G_e|`.
    pub fn euler_characteristic(&self) -> Rational {
        let mut chi = zero();
        for v in &self.vertices {
            chi += reciprocal(v.group.order());
        }
        for e in &self.edges {
            chi -= reciprocal(e.group.order());
        }
        chi
    }

    /// Negative Euler characteristic means non-amenable.
    pub fn amenability_gate(&self) -> Amenability {
        if self.euler_characteristic() < zero() {
            Amenability::NonAmenable
        } else {
            Amenability::AmenableOrFinite
        }
    }

    /// The quotient of the Bass–Serre tree: vertex orbits with full vertex
    /// groups, edge orbits with the alpha-image in the source vertex.
    pub fn bass_serre_complex(&self) -> OrbitComplex {
        let mut orbits: Vec<OrbitDatum> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vx)| OrbitDatum {
                dim: 0,
                vertex: v,
                stabilizer: vx.group.whole(),
            })
            .collect();
        orbits.extend(self.edges.iter().map(|e| OrbitDatum {
            dim: 1,
            vertex: e.source,
            stabilizer: e.alpha.image_subgroup(),
        }));
        OrbitComplex { orbits }
    }

    /// Same as [`Self::bass_serre_complex`] but edge stabilizers taken via beta.
    pub fn bass_serre_complex_beta(&self) -> OrbitComplex {
        let mut c = self.bass_serre_complex();
        for (datum, e) in c.orbits.iter_mut().filter(|d| d.dim == 1).zip(&self.edges) {
            datum.vertex = e.target;
            datum.stabilizer = e.beta.image_subgroup();
        }
        c
    }
}

/// One orbit of simplices: its dimension and stabilizer inside a vertex group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDatum {
    pub dim: usize,
    pub vertex: usize,
    pub stabilizer: Subgroup,
}

/// Quotient data of a proper cocompact model: a list of simplex orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitComplex {
    orbits: Vec<OrbitDatum>,
}

impl OrbitComplex {
    /// Checks that every stabilizer is a subgroup of its vertex group.
    pub fn new(graph: &ValidatedGraph, orbits: Vec<OrbitDatum>, max_dim: usize) -> Result<Self> {
        if orbits.is_empty() {
            return Err(Error::InvalidGraph("orbit complex is empty".into()));
        }
        for (i, o) in orbits.iter().enumerate() {
            if o.vertex >= graph.vertices().len() {
                return Err(Error::UnknownStabilizer(format!("orbit {i}: vertex {}", o.vertex)));
            }
            if o.dim > max_dim {
                return Err(Error::InvalidGraph(format!(
                    "orbit {i} has dimension {} above the declared {max_dim}",
                    o.dim
                )));
            }
            Subgroup::new(graph.vertex_group(o.vertex), o.stabilizer.members())
                .map_err(|e| Error::InvalidGraph(format!("orbit {i}: {e}")))?;
        }
        Ok(OrbitComplex { orbits })
    }

    pub fn orbits(&self) -> &[OrbitDatum] {
        &self.orbits
    }

    pub fn dimension(&self) -> usize {
        self.orbits.iter().map(|o| o.dim).max().unwrap_or(0)
    }
}
