use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::hardness::{ReductionConstants, Role};
use crate::{Item, KnapsackInstance, MisrInstance, Packing, Placement, Rect};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("expected a {expected} file, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("invalid generator parameters: {0}")]
    BadParams(String),
}

pub type Metadata = BTreeMap<String, serde_json::Value>;

/// An instance on disk. Rectangles are `[x1, y1, x2, y2]`, items `[w, h]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InstanceFile {
    Misr {
        rects: Vec<[i64; 4]>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        metadata: Metadata,
    },
    Gknap {
        n: i64,
        items: Vec<[i64; 2]>,
        rotations: bool,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        metadata: Metadata,
    },
}

/// SHA-256 of the compact JSON encoding, hex encoded.
pub fn content_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("plain data serializes");
    hex::encode(Sha256::digest(&bytes))
}

impl InstanceFile {
    pub fn from_misr(inst: &MisrInstance, metadata: Metadata) -> Self {
        InstanceFile::Misr { rects: inst.rects.iter().map(|r| [r.x1, r.y1, r.x2, r.y2]).collect(), metadata }
    }

    pub fn from_knapsack(inst: &KnapsackInstance, metadata: Metadata) -> Self {
        InstanceFile::Gknap {
            n: inst.n,
            items: inst.items.iter().map(|it| [it.w, it.h]).collect(),
            rotations: inst.rotations,
            metadata,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Misr { .. } => "misr",
            InstanceFile::Gknap { .. } => "gknap",
        }
    }

    pub fn metadata(&self) -> &Metadata {
        match self {
            InstanceFile::Misr { metadata, .. } | InstanceFile::Gknap { metadata, .. } => metadata,
        }
    }

    pub fn to_misr(&self) -> Result<MisrInstance, IoError> {
        match self {
            InstanceFile::Misr { rects, .. } => {
                let rects = rects.iter().map(|&[a, b, c, d]| Rect::new(a, b, c, d)).collect::<Result<_, _>>()?;
                Ok(MisrInstance::new(rects)?)
            }
            other => Err(IoError::WrongKind { expected: "misr", found: other.kind() }),
        }
    }

    pub fn to_knapsack(&self) -> Result<KnapsackInstance, IoError> {
        match self {
            InstanceFile::Gknap { n, items, rotations, .. } => {
                Ok(KnapsackInstance::new(*n, items.iter().map(|&[w, h]| Item::new(w, h)).collect(), *rotations)?)
            }
            other => Err(IoError::WrongKind { expected: "gknap", found: other.kind() }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn hash(&self) -> String {
        content_hash(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub item: usize,
    pub x: i64,
    pub y: i64,
    #[serde(default)]
    pub rotated: bool,
}

impl From<Placement> for PlacementRecord {
    fn from(p: Placement) -> Self {
        PlacementRecord { item: p.item, x: p.x, y: p.y, rotated: p.rotated }
    }
}

impl From<PlacementRecord> for Placement {
    fn from(p: PlacementRecord) -> Self {
        Placement { item: p.item, x: p.x, y: p.y, rotated: p.rotated }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GknapSolution {
    pub n: i64,
    pub placements: Vec<PlacementRecord>,
}

impl GknapSolution {
    pub fn from_packing(p: &Packing) -> Self {
        GknapSolution { n: p.n, placements: p.placements.iter().map(|&pl| pl.into()).collect() }
    }

    pub fn to_packing(&self) -> Packing {
        Packing { n: self.n, placements: self.placements.iter().map(|&p| p.into()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SolutionBody {
    Misr {
        selected: Vec<usize>,
    },
    Gknap(GknapSolution),
    /// The algorithm asserted that no solution of size k exists.
    OptBelowK {
        k: usize,
        sound: bool,
    },
}

/// How a solution was produced: algorithm name, parameter values and the
/// claims the algorithm makes about it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: String,
    #[serde(default)]
    pub knobs: Metadata,
    #[serde(default)]
    pub assertions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    /// [`content_hash`] of the instance file this solves.
    pub instance_hash: String,
    pub solution: SolutionBody,
    pub provenance: Provenance,
}

impl SolutionFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Output of the Multi-Subset Sum reduction: the source numbers, the
/// constructed instance (by hash), its constants and item roles, and
/// optionally the packing built from a known solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionFile {
    pub xs: Vec<u64>,
    pub t: u64,
    pub k: usize,
    pub instance: InstanceFile,
    pub instance_hash: String,
    pub constants: ReductionConstants,
    pub k_prime: usize,
    pub roles: Vec<Role>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packing: Option<GknapSolution>,
}

impl ReductionFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}
