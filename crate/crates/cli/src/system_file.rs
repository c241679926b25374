//! JSON system files.

use anyhow::{anyhow, bail, Context, Result};
use phgen::phsys::{ClassTag, Dae, PHSystem};
use phgen::{Field, Matrix, C64};
use serde::{Deserialize, Serialize};

/// A matrix entry: a plain number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

pub type Rows = Vec<Vec<Entry>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FileClass {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "sdH")]
    SdH,
    #[serde(rename = "dH")]
    DH,
    #[serde(rename = "dae")]
    Dae,
}

impl FileClass {
    fn tag(self) -> Option<ClassTag> {
        match self {
            FileClass::H => Some(ClassTag::H),
            FileClass::SdH => Some(ClassTag::SdH),
            FileClass::DH => Some(ClassTag::DH),
            FileClass::Dae => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub field: Field,
    pub class: FileClass,
    #[serde(rename = "E")]
    pub e: Rows,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Rows>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Rows>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Rows>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rows>,
    #[serde(rename = "B")]
    pub b: Rows,
}

/// What a file describes once decoded.
pub enum Loaded {
    Ph(PHSystem<f64>),
    Dae(Dae<f64>),
}

fn encode(m: &Matrix, field: Field) -> Rows {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    match field {
                        Field::Real => Entry::Real(z.re),
                        Field::Complex => Entry::Complex([z.re, z.im]),
                    }
                })
                .collect()
        })
        .collect()
}

fn decode(rows: &Rows, field: Field, key: &str) -> Result<Matrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        bail!("{key} must be a nonempty 2-D array");
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        bail!("{key} row {i} has {} entries, expected {cols}", rows[i].len());
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            let z = match entry {
                Entry::Real(x) => C64::new(x, 0.0),
                Entry::Complex([re, im]) => C64::new(re, im),
            };
            if !z.re.is_finite() || !z.im.is_finite() {
                bail!("{key}[{i}][{j}] is not finite");
            }
            if field == Field::Real && z.im != 0.0 {
                bail!("{key}[{i}][{j}] has an imaginary part but field is real");
            }
            data.push(z);
        }
    }
    Ok(Matrix::complex(rows.len(), cols, &data).with_field(field))
}

fn required<'a>(v: &'a Option<Rows>, key: &str, class: FileClass) -> Result<&'a Rows> {
    v.as_ref().ok_or_else(|| anyhow!("class {class:?} requires key {key}"))
}

fn forbid(v: &Option<Rows>, key: &str, class: FileClass) -> Result<()> {
    if v.is_some() {
        bail!("class {class:?} does not take key {key}");
    }
    Ok(())
}

impl SystemFile {
    pub fn from_ph(sys: &PHSystem<f64>) -> Self {
        let field = sys.field();
        let class = match sys.class {
            ClassTag::H => FileClass::H,
            ClassTag::SdH => FileClass::SdH,
            ClassTag::DH => FileClass::DH,
        };
        SystemFile {
            field,
            class,
            e: encode(&sys.e, field),
            j: Some(encode(&sys.j, field)),
            r: Some(encode(&sys.r, field)),
            q: Some(encode(&sys.q, field)),
            a: None,
            b: encode(&sys.b, field),
        }
    }

    pub fn from_dae(dae: &Dae<f64>) -> Self {
        let field = dae.field();
        SystemFile {
            field,
            class: FileClass::Dae,
            e: encode(&dae.e, field),
            j: None,
            r: None,
            q: None,
            a: Some(encode(&dae.a, field)),
            b: encode(&dae.b, field),
        }
    }

    /// Decodes and checks shapes. Class constraints are left to validation.
    pub fn load(&self) -> Result<Loaded> {
        let e = decode(&self.e, self.field, "E")?;
        let b = decode(&self.b, self.field, "B")?;
        match self.class.tag() {
            None => {
                for (v, k) in [(&self.j, "J"), (&self.r, "R"), (&self.q, "Q")] {
                    forbid(v, k, self.class)?;
                }
                let a = decode(required(&self.a, "A", self.class)?, self.field, "A")?;
                Ok(Loaded::Dae(Dae::new(e, a, b)?))
            }
            Some(tag) => {
                forbid(&self.a, "A", self.class)?;
                let j = decode(required(&self.j, "J", self.class)?, self.field, "J")?;
                let q = decode(required(&self.q, "Q", self.class)?, self.field, "Q")?;
                // A conservative file may omit R.
                let r = match (&self.r, tag) {
                    (None, ClassTag::H) => Matrix::zeros(e.rows(), e.rows()).with_field(self.field),
                    (r, _) => decode(required(r, "R", self.class)?, self.field, "R")?,
                };
                Ok(Loaded::Ph(PHSystem::new(e, j, r, q, b, tag)?))
            }
        }
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_entries_round_trip() {
        let text = r#"{"field":"complex","class":"dae","E":[[[1,2]]],"A":[[0]],"B":[[[0,-1]]]}"#;
        let f: SystemFile = serde_json::from_str(text).unwrap();
        let Loaded::Dae(d) = f.load().unwrap() else { panic!("expected dae") };
        assert_eq!(d.e.get(0, 0), C64::new(1.0, 2.0));
        assert_eq!(d.b.get(0, 0), C64::new(0.0, -1.0));
    }

    #[test]
    fn real_field_rejects_imaginary_parts() {
        let text = r#"{"field":"real","class":"dae","E":[[[1,2]]],"A":[[0]],"B":[[1]]}"#;
        let f: SystemFile = serde_json::from_str(text).unwrap();
        assert!(f.load().is_err());
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let text = r#"{"field":"real","class":"H","E":[[1,0],[0]],"J":[[0,0],[0,0]],"Q":[[1,0],[0,1]],"B":[[1],[0]]}"#;
        let f: SystemFile = serde_json::from_str(text).unwrap();
        assert!(f.load().is_err());
    }

    #[test]
    fn missing_keys_are_reported() {
        let text = r#"{"field":"real","class":"sdH","E":[[1]],"J":[[0]],"Q":[[1]],"B":[[1]]}"#;
        let f: SystemFile = serde_json::from_str(text).unwrap();
        let err = f.load().err().unwrap().to_string();
        assert!(err.contains("R"), "{err}");
    }
}
