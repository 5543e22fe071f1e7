//! The JSON input document.
//!
//! ```json
//! {
//!   "name": "SL(2,Z)",
//!   "groups": {
//!     "Z4": {"kind": "cyclic", "order": 4, "generator": "s"},
//!     "Z2": {"kind": "table", "table": [[0, 1], [1, 0]], "labels": ["e", "u"]}
//!   },
//!   "vertices": [{"id": "v1", "group": "Z4"}],
//!   "edges": [{"id": "c", "group": "Z2", "source": "v1", "target": "v2",
//!              "alpha": [0, 2], "beta": [0, 3]}],
//!   "orbits": [{"dim": 0, "vertex": "v1", "members": [0, 1, 2, 3]}],
//!   "elements": [{"name": "x", "terms": [{"word": [{"v": "v1", "e": 1}, {"t": 1}], "coef": "1/2"}]}]
//! }
//! ```
//!
//! `orbits` replaces the Bass–Serre orbit data for `kclass --degree` and
//! `eulercmb`. `elements` lists group-ring elements whose delocalised traces
//! `delocalised` reports (one-edge graphs only).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphOfGroups, OrbitComplex, OrbitDatum, ValidatedGraph};
use crate::group::{GroupSpec, Subgroup};
use crate::rational::Rational;
use crate::ring::GroupRingElement;
use crate::words::{Letter, WordEngine};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub groups: BTreeMap<String, GroupSpec>,
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<OrbitSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<ElementSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub group: String,
    pub source: String,
    pub target: String,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSpec {
    pub dim: usize,
    pub vertex: String,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    pub name: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub word: Vec<LetterSpec>,
    #[serde(with = "crate::rational::as_string")]
    pub coef: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LetterSpec {
    Vertex { v: String, e: usize },
    Stable { t: i8 },
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub document: InputDocument,
    pub graph: ValidatedGraph,
    /// The supplied orbits, or `None` when the Bass–Serre data is implied.
    pub orbits: Option<OrbitComplex>,
}

impl Loaded {
    /// Supplied orbits if any, else the Bass–Serre complex.
    pub fn complex(&self) -> OrbitComplex {
        self.orbits.clone().unwrap_or_else(|| self.graph.bass_serre_complex())
    }

    /// Builds the listed group-ring elements.
    pub fn elements(&self, engine: &Arc<WordEngine>) -> Result<Vec<(String, GroupRingElement)>> {
        self.document
            .elements
            .iter()
            .map(|el| {
                let mut x = GroupRingElement::zero(engine);
                for (i, term) in el.terms.iter().enumerate() {
                    let word = term
                        .word
                        .iter()
                        .map(|l| self.letter(l))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| Error::Input(format!("element \"{}\" term {i}: {e}", el.name)))?;
                    let nf = engine
                        .normalize(&word)
                        .map_err(|e| Error::Input(format!("element \"{}\" term {i}: {e}", el.name)))?;
                    x.add_term(nf, term.coef.clone());
                }
                Ok((el.name.clone(), x))
            })
            .collect()
    }

    fn letter(&self, l: &LetterSpec) -> Result<Letter> {
        match l {
            LetterSpec::Vertex { v, e } => {
                let vertex = self
                    .graph
                    .vertex_index(v)
                    .ok_or_else(|| Error::InvalidWord(format!("unknown vertex \"{v}\"")))?;
                Ok(Letter::vertex(vertex, *e))
            }
            LetterSpec::Stable { t } => Ok(Letter::Stable(*t)),
        }
    }
}

/// Parses JSON; syntax and schema errors carry line and column.
pub fn parse_document(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}

pub fn load(text: &str) -> Result<Loaded> {
    let document = parse_document(text)?;
    build(document)
}

pub fn load_file(path: &std::path::Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    load(&text)
}

pub fn build(document: InputDocument) -> Result<Loaded> {
    let mut groups = BTreeMap::new();
    for (name, spec) in &document.groups {
        let g = spec
            .build()
            .map_err(|e| Error::Input(format!("group \"{name}\": {e}")))?;
        groups.insert(name.as_str(), Arc::new(g));
    }
    let group = |name: &str, whose: &str| {
        groups
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidGraph(format!("{whose} refers to unknown group \"{name}\"")))
    };
    let mut builder = GraphOfGroups::new(document.name.clone());
    for v in &document.vertices {
        builder = builder.vertex(v.id.clone(), group(&v.group, &format!("vertex \"{}\"", v.id))?);
    }
    for e in &document.edges {
        builder = builder.edge(
            e.id.clone(),
            group(&e.group, &format!("edge \"{}\"", e.id))?,
            e.source.clone(),
            e.target.clone(),
            e.alpha.clone(),
            e.beta.clone(),
        );
    }
    let graph = builder.validate()?;
    let orbits = match &document.orbits {
        None => None,
        Some(specs) => {
            let mut data = Vec::with_capacity(specs.len());
            for (i, o) in specs.iter().enumerate() {
                let vertex = graph
                    .vertex_index(&o.vertex)
                    .ok_or_else(|| Error::UnknownStabilizer(format!("orbit {i}: \"{}\"", o.vertex)))?;
                let stabilizer = Subgroup::new(graph.vertex_group(vertex), &o.members)
                    .map_err(|e| Error::InvalidGraph(format!("orbit {i}: {e}")))?;
                data.push(OrbitDatum {
                    dim: o.dim,
                    vertex,
                    stabilizer,
                });
            }
            let max_dim = data.iter().map(|o| o.dim).max().unwrap_or(0);
            Some(OrbitComplex::new(&graph, data, max_dim)?)
        }
    };
    Ok(Loaded {
        document,
        graph,
        orbits,
    })
}
