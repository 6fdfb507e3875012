//! Group specifications (`kind:params` strings), Cayley-table files and
//! the fixed catalog used by sweeps.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("unknown group kind {0:?} (expected cyclic, dihedral, symmetric, quaternion, product, or a table file path)")]
    UnknownKind(String),
    #[error("bad parameter {token:?} in group spec {spec:?}")]
    BadParameter { spec: String, token: String },
    #[error("cannot read table file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed table file {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("table file {path} declares order {declared} but has {actual} rows")]
    OrderMismatch {
        path: PathBuf,
        declared: usize,
        actual: usize,
    },
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
}

/// On-disk Cayley table. `table[i][j]` is the index of `labels[i] * labels[j]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub name: String,
    pub order: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        TableFile {
            name: g.name().to_string(),
            order: g.order(),
            labels: g.labels().to_vec(),
            table: g.rows(),
        }
    }

    pub fn load(path: &Path) -> Result<FiniteGroup, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: TableFile = serde_json::from_str(&text).map_err(|source| SpecError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        if file.order != file.table.len() {
            return Err(SpecError::OrderMismatch {
                path: path.to_path_buf(),
                declared: file.order,
                actual: file.table.len(),
            });
        }
        Ok(FiniteGroup::from_table(file.name, file.labels, file.table)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, SpecError> {
        Ok(match self {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n)?,
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n)?,
            GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n)?,
            GroupSpec::Quaternion8 => FiniteGroup::quaternion8()?,
            GroupSpec::Product(a, b) => FiniteGroup::product(&a.build()?, &b.build()?)?,
            GroupSpec::Table(path) => TableFile::load(path)?,
        })
    }

    /// Group order without building the table (`None` for files).
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => Some(2 * n),
            GroupSpec::Symmetric(n) => Some((1..=*n).product()),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::Product(a, b) => Some(a.order()? * b.order()?),
            GroupSpec::Table(_) => None,
        }
    }

    fn parse_factor(spec: &str, tok: &str) -> Result<GroupSpec, SpecError> {
        if let Ok(n) = tok.parse::<usize>() {
            return Ok(GroupSpec::Cyclic(n));
        }
        match tok.parse::<GroupSpec>()? {
            GroupSpec::Table(_) | GroupSpec::Product(..) => Err(SpecError::BadParameter {
                spec: spec.to_string(),
                token: tok.to_string(),
            }),
            g => Ok(g),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some((kind, params)) = s.split_once(':') else {
            if Path::new(s).exists() || s.ends_with(".json") {
                return Ok(GroupSpec::Table(PathBuf::from(s)));
            }
            return Err(SpecError::UnknownKind(s.to_string()));
        };
        let bad = |token: &str| SpecError::BadParameter {
            spec: s.to_string(),
            token: token.to_string(),
        };
        let number = |token: &str| token.trim().parse::<usize>().map_err(|_| bad(token));
        match kind {
            "cyclic" => Ok(GroupSpec::Cyclic(number(params)?)),
            "dihedral" => Ok(GroupSpec::Dihedral(number(params)?)),
            "symmetric" => Ok(GroupSpec::Symmetric(number(params)?)),
            "quaternion" => match number(params)? {
                8 => Ok(GroupSpec::Quaternion8),
                _ => Err(bad(params)),
            },
            "product" => {
                let (a, b) = params.split_once(',').ok_or_else(|| bad(params))?;
                Ok(GroupSpec::Product(
                    Box::new(Self::parse_factor(s, a.trim())?),
                    Box::new(Self::parse_factor(s, b.trim())?),
                ))
            }
            _ if Path::new(s).exists() => Ok(GroupSpec::Table(PathBuf::from(s))),
            other => Err(SpecError::UnknownKind(other.to_string())),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Quaternion8 => f.write_str("quaternion:8"),
            GroupSpec::Product(a, b) => {
                let factor = |g: &GroupSpec| match g {
                    GroupSpec::Cyclic(n) => n.to_string(),
                    other => other.to_string(),
                };
                write!(f, "product:{},{}", factor(a), factor(b))
            }
            GroupSpec::Table(p) => write!(f, "{}", p.display()),
        }
    }
}

/// The fixed group catalog, restricted to orders `<= max_order`, in a
/// deterministic order (by group order, then by listing position).
pub fn catalog(max_order: usize) -> Vec<GroupSpec> {
    use GroupSpec::*;
    let p = |a: GroupSpec, b: GroupSpec| Product(Box::new(a), Box::new(b));
    let mut all: Vec<GroupSpec> = (1..=24).map(Cyclic).collect();
    all.extend((3..=12).map(Dihedral));
    all.extend([Symmetric(3), Symmetric(4), Quaternion8]);
    all.extend([
        p(Cyclic(2), Cyclic(2)),
        p(Cyclic(2), Cyclic(4)),
        p(Cyclic(3), Cyclic(3)),
        p(Cyclic(2), Cyclic(6)),
        p(Cyclic(2), Symmetric(3)),
        p(Cyclic(4), Cyclic(4)),
        p(Cyclic(2), Cyclic(8)),
        p(Cyclic(2), Dihedral(4)),
        p(Cyclic(2), Quaternion8),
        p(Cyclic(3), Symmetric(3)),
        p(Cyclic(3), Quaternion8),
    ]);
    let mut indexed: Vec<(usize, usize, GroupSpec)> = all
        .into_iter()
        .enumerate()
        .map(|(i, g)| (g.order().expect("catalog entries are not files"), i, g))
        .filter(|(n, _, _)| *n <= max_order)
        .collect();
    indexed.sort_by_key(|(n, i, _)| (*n, *i));
    indexed.into_iter().map(|(_, _, g)| g).collect()
}
