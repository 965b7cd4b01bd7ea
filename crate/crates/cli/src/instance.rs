//! Instance files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "group": [4],
//!   "W": [[3], [0], [1]],
//!   "Q": "all",
//!   "tolerance": { "feasibility": 1e-9 }
//! }
//! ```
//!
//! `Q` is either the string `"all"` or a list of character labels. Coordinates
//! may be any integers; they are reduced modulo the cyclic orders when the
//! instance is built. `tolerance` is optional.

use std::fmt;

use anyhow::{anyhow, bail, Context};
use delsarte_core::{DelsarteInstance, DualElement, GroupElement, GroupSpec, Tolerances};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub group: Vec<i64>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<i64>>,
    #[serde(rename = "Q")]
    pub q: DualSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceOverrides>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DualSet {
    All,
    List(Vec<Vec<i64>>),
}

impl Serialize for DualSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DualSet::All => s.serialize_str("all"),
            DualSet::List(v) => v.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for DualSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = DualSet;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"all\" or a list of coordinate tuples")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<DualSet, E> {
                if v == "all" {
                    Ok(DualSet::All)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: de::SeqAccess<'de>>(self, mut seq: A) -> Result<DualSet, A::Error> {
                let mut out = Vec::new();
                while let Some(t) = seq.next_element::<Vec<i64>>()? {
                    out.push(t);
                }
                Ok(DualSet::List(out))
            }
        }
        d.deserialize_any(V)
    }
}

/// A JSON syntax or schema error with its position in the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| ParseError {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        if file.version != FORMAT_VERSION {
            return Err(ParseError {
                line: 1,
                column: 1,
                message: format!("unsupported version {} (expected {FORMAT_VERSION})", file.version),
            });
        }
        Ok(file)
    }

    pub fn read(path: &std::path::Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    /// Compact serialization used for digests.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("instance files serialize")
    }

    pub fn from_instance(inst: &DelsarteInstance, full_q: bool) -> Self {
        let coords = |c: &[u64]| c.iter().map(|&x| x as i64).collect::<Vec<_>>();
        InstanceFile {
            version: FORMAT_VERSION,
            group: inst.group().orders().iter().map(|&n| n as i64).collect(),
            w: inst.w().iter().map(|x| coords(x.coords())).collect(),
            q: if full_q { DualSet::All } else { DualSet::List(inst.q().iter().map(|y| coords(y.coords())).collect()) },
            tolerance: None,
        }
    }

    pub fn group_spec(&self) -> anyhow::Result<GroupSpec> {
        Ok(GroupSpec::new(&self.group)?)
    }

    pub fn to_instance(&self) -> anyhow::Result<DelsarteInstance> {
        let g = self.group_spec()?;
        let w = self
            .w
            .iter()
            .enumerate()
            .map(|(i, c)| g.element(c).with_context(|| format!("W[{i}]")))
            .collect::<anyhow::Result<Vec<GroupElement>>>()?;
        let q: Vec<DualElement> = match &self.q {
            DualSet::All => g.characters().collect(),
            DualSet::List(list) => list
                .iter()
                .enumerate()
                .map(|(i, c)| g.character(c).with_context(|| format!("Q[{i}]")))
                .collect::<anyhow::Result<_>>()?,
        };
        Ok(DelsarteInstance::new(&g, &w, &q)?)
    }

    /// Defaults, then the file's overrides, then `feasibility` from the command line.
    pub fn tolerances(&self, feasibility: Option<f64>) -> anyhow::Result<Tolerances> {
        let mut t = Tolerances::default();
        if let Some(o) = &self.tolerance {
            if let Some(p) = o.pivot {
                t.pivot = p;
            }
            if let Some(f) = o.feasibility {
                t.feasibility = f;
            }
        }
        if let Some(f) = feasibility {
            t.feasibility = f;
        }
        for v in [t.pivot, t.feasibility] {
            if !(v > 0.0 && v.is_finite()) {
                bail!("tolerances must be positive and finite, got {v}");
            }
        }
        Ok(t)
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: &str = r#"{"version": 1, "group": [4], "W": [[3], [0], [1]], "Q": "all"}"#;

    #[test]
    fn parses_and_reduces() {
        let f = InstanceFile::from_json(Z4).unwrap();
        assert_eq!(f.q, DualSet::All);
        let inst = f.to_instance().unwrap();
        assert_eq!(inst.w().len(), 3);
        assert_eq!(inst.q().len(), 4);

        let f = InstanceFile::from_json(r#"{"version":1,"group":[4],"W":[[-1],[4],[5]],"Q":[[0],[-1],[1]]}"#).unwrap();
        let inst = f.to_instance().unwrap();
        assert_eq!(inst.w(), InstanceFile::from_json(Z4).unwrap().to_instance().unwrap().w());
        assert_eq!(inst.q().len(), 3);
    }

    #[test]
    fn reports_positions() {
        let e = InstanceFile::from_json("{\"version\": 1,\n \"group\": [4],\n \"W\": [[0], [x]], \"Q\": \"all\"}")
            .unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 1);
        let e = InstanceFile::from_json(r#"{"version": 1, "group": [4], "W": [[0]], "Q": "some"}"#).unwrap_err();
        assert!(e.message.contains("all"), "{e}");
        assert!(InstanceFile::from_json(r#"{"version": 2, "group": [4], "W": [[0]], "Q": "all"}"#).is_err());
        assert!(InstanceFile::from_json(r#"{"version": 1, "group": [4], "W": [[0]], "Q": "all", "x": 1}"#).is_err());
    }

    #[test]
    fn semantic_errors() {
        let f = InstanceFile::from_json(r#"{"version":1,"group":[4],"W":[[1]],"Q":"all"}"#).unwrap();
        assert!(f.to_instance().is_err());
        let f = InstanceFile::from_json(r#"{"version":1,"group":[4],"W":[[0,1]],"Q":"all"}"#).unwrap();
        assert!(f.to_instance().is_err());
        let f = InstanceFile::from_json(r#"{"version":1,"group":[0],"W":[[0]],"Q":"all"}"#).unwrap();
        assert!(f.to_instance().is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let f = InstanceFile::from_json(
            r#"{"version":1,"group":[4],"W":[[0]],"Q":"all","tolerance":{"feasibility":1e-7}}"#,
        )
        .unwrap();
        assert_eq!(f.tolerances(None).unwrap().feasibility, 1e-7);
        assert_eq!(f.tolerances(Some(1e-6)).unwrap().feasibility, 1e-6);
        assert_eq!(f.tolerances(None).unwrap().pivot, 1e-9);
        assert!(f.tolerances(Some(-1.0)).is_err());
    }

    #[test]
    fn round_trip() {
        for text in [Z4, r#"{"version":1,"group":[2,3],"W":[[0,0]],"Q":[[0,0],[1,2]],"tolerance":{"pivot":1e-10}}"#] {
            let f = InstanceFile::from_json(text).unwrap();
            assert_eq!(InstanceFile::from_json(&f.to_json()).unwrap(), f);
        }
    }
}
