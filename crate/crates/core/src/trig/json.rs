use std::path::Path;

use serde::{Deserialize, Serialize};

use super::TrigPoly;
use crate::group::{FiniteGroup, FiniteGroupJson, GroupModel, IrrepLabel};
use crate::linalg;
use crate::{Error, Result};

/// Cutoff used for continuous groups referenced by bare name.
pub const DEFAULT_TWO_J_MAX: u32 = 4;

/// A group given either by name (`"s3"`, `"su2"`, `"q8xq8"`) or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Inline(InlineGroup),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InlineGroup {
    Su2 { two_j_max: u32 },
    Torus { n_max: u32 },
    Product { left: Box<GroupSpec>, right: Box<GroupSpec> },
    Finite(FiniteGroupJson),
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<GroupModel> {
        match self {
            GroupSpec::Name(name) => GroupModel::named(name, DEFAULT_TWO_J_MAX),
            GroupSpec::Inline(InlineGroup::Su2 { two_j_max }) => Ok(GroupModel::su2(*two_j_max)),
            GroupSpec::Inline(InlineGroup::Torus { n_max }) => Ok(GroupModel::torus(*n_max)),
            GroupSpec::Inline(InlineGroup::Product { left, right }) => {
                Ok(GroupModel::product(left.resolve()?, right.resolve()?))
            }
            GroupSpec::Inline(InlineGroup::Finite(json)) => Ok(GroupModel::finite(FiniteGroup::from_json(json.clone())?)),
        }
    }

    /// Built-in finite groups are written by name, everything else inline.
    pub fn of(group: &GroupModel) -> GroupSpec {
        match group {
            GroupModel::Finite(g) => match FiniteGroup::builtin(g.name()) {
                Ok(builtin) if &builtin == g.as_ref() => GroupSpec::Name(g.name().to_string()),
                _ => GroupSpec::Inline(InlineGroup::Finite(g.to_json())),
            },
            GroupModel::Su2 { two_j_max } => GroupSpec::Inline(InlineGroup::Su2 { two_j_max: *two_j_max }),
            GroupModel::Torus { n_max } => GroupSpec::Inline(InlineGroup::Torus { n_max: *n_max }),
            GroupModel::Product(a, b) => GroupSpec::Inline(InlineGroup::Product {
                left: Box::new(GroupSpec::of(a)),
                right: Box::new(GroupSpec::of(b)),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffJson {
    #[serde(flatten)]
    pub label: IrrepLabel,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrigPolyJson {
    pub group: GroupSpec,
    pub coeffs: Vec<CoeffJson>,
}

impl TrigPoly {
    pub fn to_json(&self) -> TrigPolyJson {
        TrigPolyJson {
            group: GroupSpec::of(self.group()),
            coeffs: self
                .coeffs()
                .iter()
                .map(|(label, m)| CoeffJson { label: label.clone(), matrix: linalg::to_pairs(m) })
                .collect(),
        }
    }

    pub fn from_json(json: &TrigPolyJson) -> Result<Self> {
        let group = json.group.resolve()?;
        let blocks = json
            .coeffs
            .iter()
            .map(|c| Ok((c.label.clone(), linalg::from_pairs(&c.matrix)?)))
            .collect::<Result<Vec<_>>>()?;
        TrigPoly::new(&group, blocks)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("coefficient JSON is serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        TrigPoly::from_json(&serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        TrigPoly::from_json_str(&text).map_err(|e| match e {
            Error::Json(err) => Error::Parse(format!("{}: {err}", path.display())),
            other => other,
        })
    }
}
