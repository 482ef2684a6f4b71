//! The JSON model/frame file format.
//!
//! ```json
//! {"states":["a","b"],"le":[["a","b"]],"le_closed":true,
//!  "r":[["a","b"]],"val":{"p":["b"]}}
//! ```
//!
//! `le_closed: true` asks for the reflexive-transitive closure of the given
//! pairs; otherwise `le` must already be a preorder. Valuations that are not
//! `le`-closed are rejected unless `val_upclose: true`.

use super::{Frame, Model};
use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModelFile {
    pub states: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub le_closed: bool,
    #[serde(default)]
    pub r: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub val: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub val_upclose: bool,
}

/// A model together with its external state names.
#[derive(Clone, Debug)]
pub struct NamedModel {
    pub model: Model,
    pub names: Vec<String>,
}

impl NamedModel {
    pub fn state_id(&self, name: &str) -> Result<usize, Error> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn frame(&self) -> &Frame {
        self.model.frame()
    }

    /// Names of the states in `set`, in state order.
    pub fn set_names(&self, set: u64) -> Vec<String> {
        (0..self.names.len())
            .filter(|&s| set >> s & 1 == 1)
            .map(|s| self.names[s].clone())
            .collect()
    }
}

pub fn parse_model(text: &str) -> Result<NamedModel, Error> {
    let file: ModelFile = serde_json::from_str(text)?;
    from_file(&file)
}

pub fn from_file(file: &ModelFile) -> Result<NamedModel, Error> {
    let n = file.states.len();
    if n == 0 {
        return Err(Error::EmptyStateSet);
    }
    if n > 64 {
        return Err(Error::BadModel("more than 64 states".into()));
    }
    let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, name) in file.states.iter().enumerate() {
        if ids.insert(name.as_str(), i).is_some() {
            return Err(Error::BadModel(format!("duplicate state {name:?}")));
        }
    }
    let lookup = |name: &str| -> Result<usize, Error> {
        ids.get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    };
    let mut le_pairs = Vec::new();
    for (a, b) in &file.le {
        le_pairs.push((lookup(a)?, lookup(b)?));
    }
    let mut r_pairs = Vec::new();
    for (a, b) in &file.r {
        r_pairs.push((lookup(a)?, lookup(b)?));
    }
    let frame = Frame::build(n, &le_pairs, &r_pairs, file.le_closed)?;
    let mut val: BTreeMap<String, u64> = BTreeMap::new();
    for (atom, states) in &file.val {
        let mut set = 0u64;
        for s in states {
            set |= 1 << lookup(s)?;
        }
        val.insert(atom.clone(), set);
    }
    let model = if file.val_upclose {
        Model::new_upclosed(frame, val)
    } else {
        Model::new(frame, val)?
    };
    Ok(NamedModel {
        model,
        names: file.states.clone(),
    })
}

pub fn to_file(nm: &NamedModel) -> ModelFile {
    let frame = nm.model.frame();
    let name = |i: usize| nm.names[i].clone();
    ModelFile {
        states: nm.names.clone(),
        le: frame.le().pairs().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
        le_closed: false,
        r: frame.r().pairs().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
        val: nm
            .model
            .val()
            .iter()
            .map(|(a, &set)| (a.clone(), nm.set_names(set)))
            .collect(),
        val_upclose: false,
    }
}

pub fn to_json(nm: &NamedModel) -> String {
    serde_json::to_string_pretty(&to_file(nm)).expect("model serialization cannot fail")
}

/// Default names `s0, s1, ..` for models born without any.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}
