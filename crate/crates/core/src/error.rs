use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group too large: order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },

    #[error("permutation generator {index} is not a bijection of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("not a homomorphism: image({x}*{y}) != image({x})*image({y})")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("edge map not injective: {0}")]
    NotInjective(String),

    #[error("graph invalid: {0}")]
    InvalidGraph(String),

    #[error("normal forms support one-edge graphs only (graph has {edges} edges)")]
    NotOneEdge { edges: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("elements belong to different graphs")]
    MismatchedGraphs,

    #[error("higher Kazhdan projection does not exist for amenable groups (chi = {chi})")]
    Amenable { chi: String },

    #[error("undecided membership: {0}")]
    Undecided(String),

    #[error("unknown pair: vertex {vertex}, element {element}")]
    UnknownPair { vertex: usize, element: usize },

    #[error("subgroup on vertex {0} is not contained in any listed vertex group")]
    UnknownStabilizer(String),

    #[error("input error: {0}")]
    Input(String),
}
