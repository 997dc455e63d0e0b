use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LabelId, SimpleLabel, SmfcData, SmfcParts, TetKey, ThetaConvention, TET_EDGES};
use crate::error::{from_json_str, Error, Result};

pub const CATEGORY_FORMAT: &str = "smfc-category/1";

const EDGE_NAMES: [&str; 6] = ["01", "02", "03", "12", "13", "23"];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelEntry {
    name: String,
    source: String,
    target: String,
    dim: f64,
    dual: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmplitudeEntry {
    edges: BTreeMap<String, String>,
    value: [f64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ThetaTag {
    Unit,
    SqrtDims,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryFile {
    format: String,
    index_set: Vec<String>,
    labels: Vec<LabelEntry>,
    units: BTreeMap<String, String>,
    #[serde(default = "default_theta")]
    theta: ThetaTag,
    fusion: Vec<[String; 3]>,
    amplitude_plus: Vec<AmplitudeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    amplitude_minus: Option<Vec<AmplitudeEntry>>,
    #[serde(default)]
    unitary: bool,
}

fn default_theta() -> ThetaTag {
    ThetaTag::Unit
}

impl SmfcData {
    /// Parses an `smfc-category/1` document and validates its structure.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CategoryFile = from_json_str(text)?;
        file.into_data()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        SmfcData::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CategoryFile::from_data(self)).expect("serializable")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

impl CategoryFile {
    fn into_data(self) -> Result<SmfcData> {
        if self.format != CATEGORY_FORMAT {
            return Err(Error::Schema {
                pointer: "/format".into(),
                message: format!("expected \"{CATEGORY_FORMAT}\", found \"{}\"", self.format),
            });
        }
        let sector_of: HashMap<&str, usize> = self.index_set.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let label_of: HashMap<&str, LabelId> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.name.as_str(), i as LabelId))
            .collect();
        let sector = |s: &str, ctx: &str| {
            sector_of
                .get(s)
                .copied()
                .ok_or_else(|| Error::invalid(format!("{ctx}: unknown sector `{s}`")))
        };
        let label = |s: &str, ctx: &str| {
            label_of
                .get(s)
                .copied()
                .ok_or_else(|| Error::invalid(format!("{ctx}: unknown label `{s}`")))
        };

        let mut labels = Vec::with_capacity(self.labels.len());
        for l in &self.labels {
            let ctx = format!("label `{}`", l.name);
            let dual = label_of
                .get(l.dual.as_str())
                .copied()
                .ok_or_else(|| Error::invalid(format!("label `{}`: its dual `{}` is not a label", l.name, l.dual)))?;
            labels.push(SimpleLabel {
                name: l.name.clone(),
                source: sector(&l.source, &ctx)?,
                target: sector(&l.target, &ctx)?,
                dim: l.dim,
                dual,
            });
        }
        let mut units = Vec::with_capacity(self.index_set.len());
        for s in &self.index_set {
            let u = self
                .units
                .get(s)
                .ok_or_else(|| Error::invalid(format!("sector `{s}` has no unit")))?;
            units.push(label(u, &format!("unit of `{s}`"))?);
        }
        if let Some(extra) = self.units.keys().find(|k| !sector_of.contains_key(k.as_str())) {
            return Err(Error::invalid(format!("units: unknown sector `{extra}`")));
        }
        let fusion = self
            .fusion
            .iter()
            .map(|[a, b, c]| Ok([label(a, "fusion")?, label(b, "fusion")?, label(c, "fusion")?]))
            .collect::<Result<Vec<_>>>()?;
        let amplitudes = |entries: &[AmplitudeEntry], table: &str| -> Result<Vec<(TetKey, Complex64)>> {
            entries
                .iter()
                .enumerate()
                .map(|(n, e)| {
                    let ctx = format!("{table}[{n}]");
                    if e.edges.len() != 6 {
                        return Err(Error::invalid(format!("{ctx}: expected the six edges 01,02,03,12,13,23")));
                    }
                    let mut key = [0; 6];
                    for (slot, name) in EDGE_NAMES.iter().enumerate() {
                        let l = e
                            .edges
                            .get(*name)
                            .ok_or_else(|| Error::invalid(format!("{ctx}: missing edge {name}")))?;
                        key[slot] = label(l, &ctx)?;
                    }
                    Ok((key, Complex64::new(e.value[0], e.value[1])))
                })
                .collect()
        };
        let amplitude_plus = amplitudes(&self.amplitude_plus, "amplitude_plus")?;
        let amplitude_minus = self
            .amplitude_minus
            .as_deref()
            .map(|m| amplitudes(m, "amplitude_minus"))
            .transpose()?;
        SmfcData::new(SmfcParts {
            index_set: self.index_set,
            labels,
            units,
            theta: match self.theta {
                ThetaTag::Unit => ThetaConvention::Unit,
                ThetaTag::SqrtDims => ThetaConvention::SqrtDims,
            },
            fusion,
            amplitude_plus,
            amplitude_minus,
            unitary: self.unitary,
        })
    }

    fn from_data(cat: &SmfcData) -> Self {
        let name = |x: LabelId| cat.label(x).name.clone();
        let entries = |map: &HashMap<TetKey, Complex64>| {
            let mut keys: Vec<&TetKey> = map.keys().collect();
            keys.sort_unstable();
            keys.into_iter()
                .map(|k| AmplitudeEntry {
                    edges: EDGE_NAMES
                        .iter()
                        .zip(k)
                        .map(|(e, &x)| (e.to_string(), name(x)))
                        .collect(),
                    value: [map[k].re, map[k].im],
                })
                .collect::<Vec<_>>()
        };
        debug_assert_eq!(TET_EDGES.len(), EDGE_NAMES.len());
        CategoryFile {
            format: CATEGORY_FORMAT.to_string(),
            index_set: cat.index_set.clone(),
            labels: cat
                .labels
                .iter()
                .map(|l| LabelEntry {
                    name: l.name.clone(),
                    source: cat.index_set[l.source].clone(),
                    target: cat.index_set[l.target].clone(),
                    dim: l.dim,
                    dual: name(l.dual),
                })
                .collect(),
            units: cat
                .units
                .iter()
                .enumerate()
                .map(|(i, &u)| (cat.index_set[i].clone(), name(u)))
                .collect(),
            theta: match cat.theta {
                ThetaConvention::Unit => ThetaTag::Unit,
                ThetaConvention::SqrtDims => ThetaTag::SqrtDims,
            },
            fusion: cat.fusion.iter().map(|&[a, b, c]| [name(a), name(b), name(c)]).collect(),
            amplitude_plus: entries(&cat.plus),
            amplitude_minus: cat.minus.as_ref().map(entries),
            unitary: cat.unitary,
        }
    }
}
