//! Report serialization: JSON (full records, round-trippable) and CSV
//! (flat summary rows). Field elements are encoded as lowercase 0x-prefixed
//! hex of the integer bit encoding, which is unambiguous given the pinned
//! reduction polynomial and generator recorded in the header.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::search::PBRecord;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Config(format!(
                "unknown report format '{s}' (expected json|csv)"
            ))),
        }
    }
}

/// The field model a report was produced under; enough to reproduce every
/// table in the file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldModel {
    pub n: u32,
    #[serde(with = "hex_u32")]
    pub reduction_poly: u32,
    #[serde(with = "hex_u32")]
    pub generator: u32,
}

impl FieldModel {
    pub fn of(field: &FieldSpec) -> Self {
        FieldModel {
            n: field.n(),
            reduction_poly: field.reduction_poly(),
            generator: field.generator().0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub field: FieldModel,
    pub rows: Vec<PBRecord>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Flat summary: a comment line with the field model, then one line per
    /// row. Valid sets are reduced to count plus sample; tags joined by ';'.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# field n={} reduction_poly={:#x} generator={:#x}\n",
            self.field.n, self.field.reduction_poly, self.field.generator
        );
        out.push_str("n,i,index,linearized,valid_count,sample_a_hex,theorem_tags\n");
        for r in &self.rows {
            let tags: Vec<&str> = r.theorem_tags.iter().map(|t| t.as_str()).collect();
            writeln!(
                out,
                "{},{},{},{},{},{:#x},{}",
                r.n,
                r.i,
                r.index,
                r.linearized,
                r.valid_count,
                r.a_sample,
                tags.join(";")
            )
            .expect("string write");
        }
        out
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => Ok(self.to_csv()),
        }
    }

    pub fn write(&self, path: &Path, format: ReportFormat) -> Result<()> {
        let body = self.render(format)?;
        std::fs::write(path, body).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let body = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&body)
    }
}

pub(crate) mod hex_u32 {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u32, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{v:#x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u32, D::Error> {
        let s = String::deserialize(d)?;
        parse_hex(&s).map_err(de::Error::custom)
    }

    pub fn parse_hex(s: &str) -> Result<u32, String> {
        s.strip_prefix("0x")
            .ok_or_else(|| format!("'{s}' lacks 0x prefix"))
            .and_then(|h| u32::from_str_radix(h, 16).map_err(|e| format!("'{s}': {e}")))
    }
}

pub(crate) mod hex_vec_opt {
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<u32>>, s: S) -> Result<S::Ok, S::Error> {
        let list = v.as_ref().expect("skipped when None");
        let mut seq = s.serialize_seq(Some(list.len()))?;
        for x in list {
            seq.serialize_element(&format!("{x:#x}"))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<u32>>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| super::hex_u32::parse_hex(s).map_err(de::Error::custom))
            .collect::<Result<Vec<u32>, _>>()
            .map(Some)
    }
}

/// Parses a lowercase 0x-prefixed hex field element, shared with the CLI.
pub fn parse_hex_element(s: &str) -> Result<u32> {
    hex_u32::parse_hex(s).map_err(Error::Config)
}
