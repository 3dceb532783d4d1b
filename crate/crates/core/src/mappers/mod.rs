//! Node mappings between two trees.
//!
//! Three simplified built-in mappers live here, each in the style of a
//! well-known AST differencing algorithm: `gt` (greedy top-down identical
//! subtrees, then bottom-up by dice), `mtd` (prune identical subtrees, then
//! leaves by value similarity, then inner nodes) and `ijm` (the `gt` procedure
//! run per declaration after matching declarations by name). None of them is
//! a faithful port. Mappings computed elsewhere enter through
//! [`load_external_mappings`].

mod external;
mod leaf_first;
mod matching;
mod name_aware;
mod topdown;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ast::{Ast, NodeId};
use crate::error::{Error, SchemaError};

pub use external::{load_external_mappings, save_mappings, MappingDocument, PairRecord};
pub use leaf_first::map_leaf_first;
pub use matching::similarity;
pub use name_aware::map_name_aware;
pub use topdown::map_topdown_bottomup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMappingSet {
    algorithm: String,
    pairs: BTreeSet<(NodeId, NodeId)>,
    src_to_dst: Vec<Option<NodeId>>,
    dst_to_src: Vec<Option<NodeId>>,
}

impl NodeMappingSet {
    /// Validates injectivity and label equality.
    pub fn from_pairs(
        algorithm: impl Into<String>,
        src: &Ast,
        dst: &Ast,
        pairs: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, SchemaError> {
        let mut set = NodeMappingSet {
            algorithm: algorithm.into(),
            pairs: BTreeSet::new(),
            src_to_dst: vec![None; src.len()],
            dst_to_src: vec![None; dst.len()],
        };
        for (s, d) in pairs {
            if s >= src.len() {
                return Err(SchemaError::new(format!("unknown src node in pair ({}, {})", s, d)));
            }
            if d >= dst.len() {
                return Err(SchemaError::new(format!("unknown dst node in pair ({}, {})", s, d)));
            }
            if set.src_to_dst[s].is_some() {
                return Err(SchemaError::new(format!("src mapped twice: ({}, {})", s, d)));
            }
            if set.dst_to_src[d].is_some() {
                return Err(SchemaError::new(format!("dst mapped twice: ({}, {})", s, d)));
            }
            if src.label(s) != dst.label(d) {
                return Err(SchemaError::new(format!(
                    "label mismatch: ({}, {}) {} vs {}",
                    s,
                    d,
                    src.label(s),
                    dst.label(d)
                )));
            }
            set.src_to_dst[s] = Some(d);
            set.dst_to_src[d] = Some(s);
            set.pairs.insert((s, d));
        }
        Ok(set)
    }

    pub fn empty(algorithm: impl Into<String>, src: &Ast, dst: &Ast) -> Self {
        Self::from_pairs(algorithm, src, dst, []).expect("empty set is valid")
    }

    pub fn algorithm(&self) -> &str {
        &self.algorithm
    }

    pub fn with_algorithm(mut self, name: impl Into<String>) -> Self {
        self.algorithm = name.into();
        self
    }

    pub fn pairs(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn dst_of(&self, src: NodeId) -> Option<NodeId> {
        self.src_to_dst.get(src).copied().flatten()
    }

    pub fn src_of(&self, dst: NodeId) -> Option<NodeId> {
        self.dst_to_src.get(dst).copied().flatten()
    }

    pub fn contains(&self, src: NodeId, dst: NodeId) -> bool {
        self.dst_of(src) == Some(dst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapperConfig {
    pub min_subtree_height: usize,
    pub dice_threshold: f64,
    pub name_similarity_threshold: f64,
}

impl Default for MapperConfig {
    fn default() -> Self {
        MapperConfig {
            min_subtree_height: 2,
            dice_threshold: 0.5,
            name_similarity_threshold: 0.6,
        }
    }
}

impl MapperConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.min_subtree_height < 1 {
            return Err(Error::Config("min_subtree_height must be at least 1".into()));
        }
        for (name, v) in [
            ("dice_threshold", self.dice_threshold),
            ("name_similarity_threshold", self.name_similarity_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{} must lie in [0, 1], got {}", name, v)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Gt,
    Mtd,
    Ijm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Gt, Algorithm::Mtd, Algorithm::Ijm];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gt => "gt",
            Algorithm::Mtd => "mtd",
            Algorithm::Ijm => "ijm",
        }
    }

    pub fn run(self, src: &Ast, dst: &Ast, cfg: &MapperConfig) -> NodeMappingSet {
        match self {
            Algorithm::Gt => map_topdown_bottomup(src, dst, cfg),
            Algorithm::Mtd => map_leaf_first(src, dst, cfg),
            Algorithm::Ijm => map_name_aware(src, dst, cfg),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gt" => Ok(Algorithm::Gt),
            "mtd" => Ok(Algorithm::Mtd),
            "ijm" => Ok(Algorithm::Ijm),
            other => Err(format!("unknown algorithm `{}`", other)),
        }
    }
}
