use serde::{Deserialize, Serialize};

use crate::ast::Ast;
use crate::error::SchemaError;

use super::NodeMappingSet;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub src: usize,
    pub dst: usize,
}

/// `{format_version: 1, algorithm, pairs: [{src, dst}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingDocument {
    pub format_version: u32,
    pub algorithm: String,
    pub pairs: Vec<PairRecord>,
}

impl MappingDocument {
    pub fn from_set(set: &NodeMappingSet) -> Self {
        MappingDocument {
            format_version: FORMAT_VERSION,
            algorithm: set.algorithm().to_string(),
            pairs: set.pairs().iter().map(|&(src, dst)| PairRecord { src, dst }).collect(),
        }
    }
}

pub fn load_external_mappings(bytes: &[u8], src: &Ast, dst: &Ast) -> Result<NodeMappingSet, SchemaError> {
    let doc: MappingDocument =
        serde_json::from_slice(bytes).map_err(|e| SchemaError::new(format!("malformed mapping document: {}", e)))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(SchemaError::new(format!(
            "unsupported format_version {}",
            doc.format_version
        )));
    }
    NodeMappingSet::from_pairs(doc.algorithm, src, dst, doc.pairs.iter().map(|p| (p.src, p.dst)))
}

pub fn save_mappings(set: &NodeMappingSet) -> String {
    serde_json::to_string_pretty(&MappingDocument::from_set(set)).expect("serializable")
}
