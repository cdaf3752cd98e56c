//! `chp-pack/1` configuration files.
//!
//! Floats are written in scientific notation with 17 significant digits, so
//! reading a file back reproduces every coordinate bit for bit.

use std::io;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::builder::{PackingConfiguration, Provenance};
use crate::error::{Error, Result};
use crate::geometry::{Point2, PolygonSpec, Sides};

pub const SCHEMA_VERSION: &str = "chp-pack/1";

pub(crate) fn serialize_sides<S: Serializer>(sides: &Sides, s: S) -> Result<S::Ok, S::Error> {
    match sides {
        Sides::Regular(n) => s.serialize_u32(*n),
        Sides::Circle => s.serialize_str("circle"),
    }
}

fn deserialize_sides<'de, D: Deserializer<'de>>(d: D) -> Result<Sides, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(u32),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Int(n) => Sides::regular(n).map_err(serde::de::Error::custom),
        Raw::Str(s) if s == "circle" => Ok(Sides::Circle),
        Raw::Str(s) => Err(serde::de::Error::custom(format!("sigma must be an integer or \"circle\", got \"{s}\""))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFileV1 {
    pub schema_version: String,
    #[serde(serialize_with = "serialize_sides", deserialize_with = "deserialize_sides")]
    pub sigma: Sides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub n_disks: usize,
    pub diameter: f64,
    pub centers: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dna: Option<String>,
    pub provenance: Provenance,
}

impl From<&PackingConfiguration> for ConfigFileV1 {
    fn from(c: &PackingConfiguration) -> Self {
        ConfigFileV1 {
            schema_version: SCHEMA_VERSION.to_string(),
            sigma: c.sides(),
            k: c.k,
            n_disks: c.n_disks(),
            diameter: c.diameter,
            centers: c.centers.iter().map(|p| [p.x, p.y]).collect(),
            dna: c.dna.clone(),
            provenance: c.provenance.clone(),
        }
    }
}

impl ConfigFileV1 {
    pub fn into_configuration(self) -> PackingConfiguration {
        PackingConfiguration {
            spec: PolygonSpec::inner(self.sigma),
            centers: self.centers.iter().map(|&[x, y]| Point2::new(x, y)).collect(),
            diameter: self.diameter,
            k: self.k,
            dna: self.dna,
            provenance: self.provenance,
        }
    }

    fn check(&self) -> Result<()> {
        if self.n_disks != self.centers.len() {
            return Err(Error::Parse(format!(
                "field `n_disks`: {} does not match the {} entries of `centers`",
                self.n_disks,
                self.centers.len()
            )));
        }
        if !(self.diameter > 0.0 && self.diameter.is_finite()) {
            return Err(Error::Parse(format!("field `diameter`: must be positive, got {}", self.diameter)));
        }
        if let Some(i) = self.centers.iter().position(|c| !c.iter().all(|v| v.is_finite())) {
            return Err(Error::Parse(format!("field `centers[{i}]`: non-finite coordinate")));
        }
        Ok(())
    }
}

/// Pretty JSON with every float as `{:.16e}`.
struct ExactFloats(PrettyFormatter<'static>);

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes any value as pretty JSON with full-precision floats.
pub fn to_json_exact<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Parse(e.to_string()))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn write_config_string(config: &PackingConfiguration) -> Result<String> {
    to_json_exact(&ConfigFileV1::from(config))
}

pub fn read_config_str(text: &str) -> Result<ConfigFileV1> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let found = value.get("schema_version").and_then(|v| v.as_str()).unwrap_or("<missing>");
    if found != SCHEMA_VERSION {
        return Err(Error::SchemaMismatch { expected: SCHEMA_VERSION.into(), found: found.into() });
    }
    let file: ConfigFileV1 = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.check()?;
    Ok(file)
}

pub fn write_config(path: impl AsRef<std::path::Path>, config: &PackingConfiguration) -> Result<()> {
    std::fs::write(path, write_config_string(config)?)?;
    Ok(())
}

pub fn read_config(path: impl AsRef<std::path::Path>) -> Result<PackingConfiguration> {
    let text = std::fs::read_to_string(path)?;
    Ok(read_config_str(&text)?.into_configuration())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_chp;
    use crate::chp::{min_dna, solve_border};

    fn sample() -> PackingConfiguration {
        let b = solve_border(Sides::Regular(18), 3).unwrap();
        build_chp(Sides::Regular(18), 3, &min_dna(&b)).unwrap()
    }

    #[test]
    fn round_trip_is_bitwise() {
        let c = sample();
        let text = write_config_string(&c).unwrap();
        let back = read_config_str(&text).unwrap().into_configuration();
        assert_eq!(back.centers.len(), c.centers.len());
        for (a, b) in back.centers.iter().zip(&c.centers) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
        assert_eq!(back.diameter.to_bits(), c.diameter.to_bits());
        assert_eq!(back, c);
    }

    #[test]
    fn dna_is_optional_and_schema_is_checked() {
        let mut c = sample();
        c.dna = None;
        let text = write_config_string(&c).unwrap();
        assert!(!text.contains("\"dna\""));
        assert!(read_config_str(&text).is_ok());
        let wrong = text.replace("chp-pack/1", "chp-pack/0");
        assert!(matches!(read_config_str(&wrong), Err(Error::SchemaMismatch { .. })));
        let bad = text.replacen("\"n_disks\": 37", "\"n_disks\": 36", 1);
        assert!(matches!(read_config_str(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn circle_sigma_is_a_string() {
        let b = solve_border(Sides::Circle, 2).unwrap();
        let c = build_chp(Sides::Circle, 2, &min_dna(&b)).unwrap();
        let text = write_config_string(&c).unwrap();
        assert!(text.contains("\"sigma\": \"circle\""));
        assert_eq!(read_config_str(&text).unwrap().sigma, Sides::Circle);
    }
}
