//! Instance and report documents.
//!
//! Instances are UTF-8 JSON:
//!
//! ```json
//! {"dim":2,"body":{"kind":"vpolytope","generators":[[...],[...]]},"vectors":[[...]],"label":"..."}
//! ```
//!
//! with `"kind":"ellipsoid"` carrying `"shape"` instead of `"generators"`.
//! The canonical form is compact, keys in the order above, every float
//! written with 17 significant digits, and a trailing newline. Parsing then
//! re-serializing a canonical document reproduces it byte for byte.

use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use dratio_core::geometry::{Ellipsoid, SymmetricBody, VPolytope, Vector, VectorSet};
use dratio_core::linalg::Matrix;
use dratio_core::Instance;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    pub body: BodyFile,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BodyFile {
    Vpolytope { generators: Vec<Vec<f64>> },
    Ellipsoid { shape: Vec<Vec<f64>> },
}

fn rows_to_set(rows: &[Vec<f64>]) -> dratio_core::Result<VectorSet> {
    VectorSet::new(
        rows.iter()
            .map(|r| Vector::new(r.clone()))
            .collect::<dratio_core::Result<Vec<_>>>()?,
    )
}

fn set_to_rows(set: &VectorSet) -> Vec<Vec<f64>> {
    set.iter().map(|v| v.as_slice().to_vec()).collect()
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let body = match &inst.body {
            SymmetricBody::Polytope(p) => BodyFile::Vpolytope {
                generators: set_to_rows(p.generators()),
            },
            SymmetricBody::Ellipsoid(e) => {
                let s = e.shape();
                BodyFile::Ellipsoid {
                    shape: (0..s.nrows())
                        .map(|i| s.row(i).iter().copied().collect())
                        .collect(),
                }
            }
        };
        Self {
            dim: inst.dim(),
            body,
            vectors: set_to_rows(&inst.vectors),
            label: inst.label.clone(),
        }
    }

    /// Validates every construction invariant and builds the instance.
    pub fn to_instance(&self) -> Result<Instance> {
        let body: SymmetricBody = match &self.body {
            BodyFile::Vpolytope { generators } => {
                check_rows("generator", generators, self.dim)?;
                VPolytope::new(rows_to_set(generators)?)?.into()
            }
            BodyFile::Ellipsoid { shape } => {
                if shape.len() != self.dim {
                    bail!("shape has {} rows, expected {}", shape.len(), self.dim);
                }
                check_rows("shape row", shape, self.dim)?;
                let flat: Vec<f64> = shape.iter().flatten().copied().collect();
                Ellipsoid::new(Matrix::from_row_slice(self.dim, self.dim, &flat))?.into()
            }
        };
        check_rows("vector", &self.vectors, self.dim)?;
        Ok(Instance::new(
            body,
            rows_to_set(&self.vectors)?,
            self.label.clone(),
        )?)
    }
}

fn check_rows(what: &str, rows: &[Vec<f64>], dim: usize) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != dim {
            bail!("{what} {i} has {} coordinates, expected {dim}", r.len());
        }
    }
    Ok(())
}

/// JSON formatter writing floats with 17 significant digits.
#[derive(Debug, Default, Clone, Copy)]
pub struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes any document in canonical form, newline-terminated.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, CanonicalFormatter);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf)?)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).context("malformed instance document")?;
    file.to_instance()
}

pub fn serialize_instance(inst: &Instance) -> Result<String> {
    to_canonical_string(&InstanceFile::from_instance(inst))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("in {}", path.display()))
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    std::fs::write(path, serialize_instance(inst)?)
        .with_context(|| format!("writing {}", path.display()))
}

/// `name = value` lines for every field of a JSON object. Nested objects are
/// prefixed with their key, arrays of objects with their index; other arrays
/// are printed inline.
pub fn to_text<T: Serialize>(value: &T) -> Result<String> {
    let mut out = String::new();
    flatten_into(&mut out, "", &serde_json::to_value(value)?);
    Ok(out)
}

fn flatten_into(out: &mut String, prefix: &str, value: &serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into(out, &key, v);
            }
        }
        serde_json::Value::Null => {}
        serde_json::Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(out, &format!("{prefix}.{i}"), v);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(" = ");
            match other {
                serde_json::Value::String(s) => out.push_str(s),
                v => out.push_str(&v.to_string()),
            }
            out.push('\n');
        }
    }
}
