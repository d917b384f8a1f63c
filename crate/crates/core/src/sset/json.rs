use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::complex::FiniteSimplicialSet;
use super::maps::SimplicialMap;
use super::simplex::{GenId, SimplexRef};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefJson {
    pub g: String,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    pub top_dim: usize,
    pub generators: Vec<Vec<String>>,
    pub faces: BTreeMap<String, Vec<RefJson>>,
}

impl FiniteSimplicialSet {
    pub fn ref_json(&self, r: &SimplexRef) -> RefJson {
        RefJson { g: self.label(r.gen).to_string(), word: r.word.clone() }
    }

    pub fn resolve_ref(&self, r: &RefJson) -> Result<SimplexRef> {
        self.parse_ref(&r.g, &r.word)
    }

    pub fn to_json(&self) -> SSetJson {
        let generators = (0..=self.top_dim()).map(|d| self.labels(d).to_vec()).collect();
        let faces =
            self.all_gens().filter(|g| g.dim > 0).map(|g| (self.label(g).to_string(), self.gen_faces(g).iter().map(|f| self.ref_json(f)).collect())).collect();
        SSetJson { top_dim: self.top_dim(), generators, faces }
    }

    pub fn from_json(j: &SSetJson) -> Result<Self> {
        if j.generators.len() > j.top_dim + 1 {
            return Err(Error::Malformed("more generator levels than top_dim".into()));
        }
        let mut labels = j.generators.clone();
        labels.resize(j.top_dim + 1, Vec::new());
        let mut where_: HashMap<&str, GenId> = HashMap::new();
        for (d, ls) in labels.iter().enumerate() {
            for (i, l) in ls.iter().enumerate() {
                if where_.insert(l.as_str(), GenId::new(d, i)).is_some() {
                    return Err(Error::Malformed(format!("label `{l}` used twice")));
                }
            }
        }
        let mut faces = vec![Vec::new(); labels.len()];
        for (d, ls) in labels.iter().enumerate().skip(1) {
            for l in ls {
                let fs = j.faces.get(l).ok_or_else(|| Error::Malformed(format!("no faces for `{l}`")))?;
                let refs = fs
                    .iter()
                    .map(|r| where_.get(r.g.as_str()).map(|&g| SimplexRef { gen: g, word: r.word.clone() }).ok_or_else(|| Error::UnknownLabel(r.g.clone())))
                    .collect::<Result<Vec<_>>>()?;
                faces[d].push(refs);
            }
        }
        for k in j.faces.keys() {
            if !where_.get(k.as_str()).is_some_and(|g| g.dim > 0) {
                return Err(Error::Malformed(format!("faces given for `{k}`, which is not a positive-dimensional generator")));
            }
        }
        FiniteSimplicialSet::from_indexed(labels, faces)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SSetJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }
}

impl SimplicialMap {
    pub fn to_json(&self, source: &FiniteSimplicialSet, target: &FiniteSimplicialSet) -> BTreeMap<String, RefJson> {
        source.all_gens().map(|g| (source.label(g).to_string(), target.ref_json(self.image_of_gen(g)))).collect()
    }

    pub fn from_json(j: &BTreeMap<String, RefJson>, source: &FiniteSimplicialSet, target: &FiniteSimplicialSet) -> Result<Self> {
        let mut images = Vec::new();
        for d in 0..=source.top_dim() {
            let mut v = Vec::new();
            for g in source.gens(d) {
                let r = j.get(source.label(g)).ok_or_else(|| Error::Malformed(format!("map misses `{}`", source.label(g))))?;
                v.push(target.resolve_ref(r)?);
            }
            images.push(v);
        }
        let m = SimplicialMap::new(images);
        m.validate(source, target)?;
        Ok(m)
    }
}
