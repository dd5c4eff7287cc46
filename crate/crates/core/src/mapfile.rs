//! JSON description of a rational map.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coeff::FieldSpec;
use crate::error::{Error, Result};
use crate::rees::RationalMap;

/// `{"field": "Q" | "Fp:p", "variables": [...], "source_ideal": [...], "forms": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub field: String,
    pub variables: Vec<String>,
    #[serde(default)]
    pub source_ideal: Vec<String>,
    pub forms: Vec<String>,
}

impl MapFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map files serialize")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    pub fn to_map(&self) -> Result<RationalMap> {
        self.to_map_over(self.field_spec()?)
    }

    /// Parses the map with coefficients in `field` instead of the declared field.
    pub fn to_map_over(&self, field: FieldSpec) -> Result<RationalMap> {
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let src: Vec<&str> = self.source_ideal.iter().map(String::as_str).collect();
        let forms: Vec<&str> = self.forms.iter().map(String::as_str).collect();
        RationalMap::parse(field, &vars, &src, &forms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = r#"{"field": "Fp:101", "variables": ["x","y","z"], "forms": ["y*z","x*z","x*y"]}"#;
        let m = MapFile::from_json(s).unwrap();
        assert!(m.source_ideal.is_empty());
        assert_eq!(MapFile::from_json(&m.to_json()).unwrap(), m);
        let f = m.to_map().unwrap();
        assert_eq!(f.field(), FieldSpec::Prime(101));
        assert_eq!(f.delta(), 2);
        assert_eq!(m.to_map_over(FieldSpec::Rationals).unwrap().field(), FieldSpec::Rationals);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(MapFile::from_json("{"), Err(Error::Input(_))));
        assert!(matches!(MapFile::from_json(r#"{"field":"Q","variables":["x"],"forms":[],"extra":1}"#), Err(Error::Input(_))));
        let m = MapFile::from_json(r#"{"field":"R","variables":["x"],"forms":["x"]}"#).unwrap();
        assert!(matches!(m.to_map(), Err(Error::InvalidField(_))));
        let m = MapFile::from_json(r#"{"field":"Q","variables":["x","y"],"forms":["x","w"]}"#).unwrap();
        assert!(matches!(m.to_map(), Err(Error::UnknownVariable(_))));
    }
}
