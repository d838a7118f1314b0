//! JSON description of an affine system, for the CLI and for tests.
//!
//! ```json
//! { "dim": 1, "c": 0.2, "offsets": [[0.0], [1.0], [4.0]] }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ifs::AffineIfs;
use crate::num::Real;

/// Serialized form of an [`AffineIfs`]. Numbers are parsed in `f64` and
/// converted to the working scalar type afterwards.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IfsConfig {
    pub dim: usize,
    pub c: f64,
    pub offsets: Vec<Vec<f64>>,
}

impl IfsConfig {
    /// Parse a config from JSON text. Syntax errors keep serde's
    /// line/column diagnostics; semantic errors come from system validation.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Validate and build the system this config describes.
    pub fn build<T: Real>(&self) -> Result<AffineIfs<T>> {
        let ratio =
            T::from_f64(self.c).ok_or_else(|| Error::InvalidRatio(format!("{}", self.c)))?;
        let offsets = self
            .offsets
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| {
                        T::from_f64(x).ok_or(Error::NonFinite {
                            what: "offset coordinate",
                        })
                    })
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<Vec<T>>>>()?;
        AffineIfs::new(self.dim, ratio, offsets)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let cfg =
            IfsConfig::from_json(r#"{ "dim": 1, "c": 0.2, "offsets": [[0.0], [1.0], [4.0]] }"#)
                .unwrap();
        let ifs: AffineIfs<f64> = cfg.build().unwrap();
        assert_eq!(ifs.map_count(), 3);
        assert_eq!(ifs.ratio(), 0.2);
    }

    #[test]
    fn syntax_errors_carry_location() {
        let err = IfsConfig::from_json("{ \"dim\": 1, ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn semantic_errors_surface_from_validation() {
        let cfg =
            IfsConfig::from_json(r#"{ "dim": 1, "c": 1.5, "offsets": [[0.0], [1.0]] }"#).unwrap();
        assert!(matches!(cfg.build::<f64>(), Err(Error::InvalidRatio(_))));

        let cfg =
            IfsConfig::from_json(r#"{ "dim": 2, "c": 0.5, "offsets": [[0.0], [1.0]] }"#).unwrap();
        assert!(matches!(
            cfg.build::<f64>(),
            Err(Error::OffsetDimension { .. })
        ));

        let cfg =
            IfsConfig::from_json(r#"{ "dim": 1, "c": 0.5, "offsets": [[0.0], [0.0]] }"#).unwrap();
        assert!(matches!(
            cfg.build::<f64>(),
            Err(Error::DuplicateOffset { .. })
        ));
    }

    #[test]
    fn round_trips_through_json() {
        let cfg = IfsConfig {
            dim: 2,
            c: 1.0 / 3.0,
            offsets: vec![vec![0.0, 0.0], vec![2.0, 0.0]],
        };
        let back = IfsConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back.c, cfg.c);
        assert_eq!(back.offsets, cfg.offsets);
    }
}
