//! JSON file formats for root systems and paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::LambdaPath;
use crate::rational::{serde_rats, Rat, Vector};
use crate::root_system::{CartanMatrix, RootSystem};

/// `{"cartan_matrix": [[..]], "names": [..], "simple_roots": .., "simple_coroots": .., "rank_x": ..}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub cartan_matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_coroots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_x: Option<usize>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("system file: {e}")))
    }

    pub fn build(&self) -> Result<RootSystem> {
        let gcm = CartanMatrix::new(self.cartan_matrix.clone())?;
        let sys = match (&self.simple_roots, &self.simple_coroots) {
            (Some(r), Some(c)) => RootSystem::with_lattice(gcm, r.clone(), c.clone())?,
            (None, None) => RootSystem::from_gcm(gcm)?,
            _ => {
                return Err(Error::BadRootDatum(
                    "simple_roots and simple_coroots must be given together".into(),
                ))
            }
        };
        if let Some(k) = self.rank_x {
            if k != sys.dim() {
                return Err(Error::Dimension {
                    expected: sys.dim(),
                    got: k,
                });
            }
        }
        match &self.names {
            Some(n) => sys.with_names(n.clone()),
            None => Ok(sys),
        }
    }
}

/// A generator index written either as a number or as a numeric string.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum IndexRepr {
    Int(usize),
    Str(String),
}

impl IndexRepr {
    fn index(&self) -> Result<usize> {
        let i = match self {
            IndexRepr::Int(i) => *i,
            IndexRepr::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index {s:?}")))?,
        };
        if i == 0 {
            return Err(Error::Parse("generator indices are 1-based".into()));
        }
        Ok(i - 1)
    }
}

fn de_words<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<Vec<usize>>, D::Error> {
    let raw = Vec::<Vec<IndexRepr>>::deserialize(d)?;
    raw.iter()
        .map(|w| w.iter().map(IndexRepr::index).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()
        .map_err(serde::de::Error::custom)
}

fn ser_words<S: serde::Serializer>(w: &[Vec<usize>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let one_based: Vec<Vec<usize>> = w
        .iter()
        .map(|w| w.iter().map(|i| i + 1).collect())
        .collect();
    one_based.serialize(s)
}

/// `{"lambda": [..], "start": [..], "directions": [[..], ..], "breakpoints": [..]}`
///
/// Directions are 1-based words for the coset representatives `τ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub lambda: Vector,
    pub start: Vector,
    #[serde(serialize_with = "ser_words", deserialize_with = "de_words")]
    pub directions: Vec<Vec<usize>>,
    #[serde(with = "serde_rats")]
    pub breakpoints: Vec<Rat>,
}

impl PathFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("path file: {e}")))
    }

    pub fn build(&self, sys: &RootSystem) -> Result<LambdaPath> {
        let cosets = self
            .directions
            .iter()
            .map(|w| sys.normalize_word(w))
            .collect::<Result<Vec<_>>>()?;
        LambdaPath::new(
            sys,
            self.lambda.clone(),
            self.start.clone(),
            &cosets,
            self.breakpoints.clone(),
        )
    }

    pub fn from_path(path: &LambdaPath) -> Self {
        PathFile {
            lambda: path.shape().clone(),
            start: path.start().clone(),
            directions: path.cosets().iter().map(|w| w.word().to_vec()).collect(),
            breakpoints: path.breakpoints().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("path files serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn system_round_trip() {
        let f = SystemFile::parse(r#"{"cartan_matrix": [[2,-1],[-1,2]], "names": ["a1","a2"]}"#)
            .unwrap();
        let s = f.build().unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.names(), &["a1".to_string(), "a2".to_string()]);
        let bad = SystemFile::parse(r#"{"cartan_matrix": [[2,-1],[0,2]]}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::NotGcm { .. })));
        assert!(SystemFile::parse(r#"{"cartan": 1}"#).is_err());
        let lat = SystemFile::parse(
            r#"{"cartan_matrix": [[2]], "simple_roots": [[2, 0]], "simple_coroots": [[1, 0]], "rank_x": 2}"#,
        )
        .unwrap();
        assert_eq!(lat.build().unwrap().dim(), 2);
    }

    #[test]
    fn path_file_example() {
        let sys = SystemFile::parse(r#"{"cartan_matrix": [[2]]}"#)
            .unwrap()
            .build()
            .unwrap();
        let f = PathFile::parse(r#"{"lambda": ["1"], "start": ["0"], "directions": [["1"],[]], "breakpoints": ["0","1/2","1"]}"#)
            .unwrap();
        let p = f.build(&sys).unwrap();
        assert_eq!(p.eval(&frac(1, 2)).unwrap(), Vector(vec![frac(-1, 2)]));
        let back = PathFile::parse(&PathFile::from_path(&p).to_json()).unwrap();
        assert_eq!(back.build(&sys).unwrap(), p);
        let ints = PathFile::parse(
            r#"{"lambda": [1], "start": [0], "directions": [[1],[]], "breakpoints": [0,"1/2",1]}"#,
        )
        .unwrap();
        assert_eq!(ints, f);
        assert_eq!(f.breakpoints[2], rat(1));
        assert!(PathFile::parse(
            r#"{"lambda": ["1"], "start": ["0"], "directions": [[0]], "breakpoints": ["0","1"]}"#
        )
        .is_err());
    }
}
