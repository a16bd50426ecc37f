//! TOML description of a space and its metric. The schema is documented in
//! `docs/config.md`.

use std::path::Path as FsPath;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{InvariantVector, ReductiveModel, StructureConstants};
use crate::catalog::CatalogEntry;
use crate::error::{FinslerError, Result};
use crate::metrics::{EvalMode, PhiFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completion {
    /// Each listed `c^k_ij` also sets `c^k_ji = −c^k_ij`.
    #[default]
    Antisymmetric,
    /// Entries are stored exactly as listed.
    Explicit,
}

/// One structure constant `[e_i, e_j] ∋ c e_k`, indices starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricConfig {
    pub family: String,
    /// Ascending polynomial coefficients of φ for `family = "custom"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
}

impl MetricConfig {
    pub fn phi(&self) -> Result<PhiFamily> {
        match (self.family.as_str(), &self.coefficients) {
            ("custom", Some(c)) if !c.is_empty() => Ok(PhiFamily::polynomial(c)),
            ("custom", _) => Err(FinslerError::Config(
                "metric.family = \"custom\" needs a non-empty metric.coefficients".into(),
            )),
            (name, None) => PhiFamily::from_name(name),
            (name, Some(_)) => Err(FinslerError::Config(format!(
                "metric.coefficients only apply to the custom family, not `{name}`"
            ))),
        }
    }

    pub fn from_phi(phi: &PhiFamily) -> Result<Self> {
        match phi {
            PhiFamily::Custom(c) => match c.polynomial() {
                Some(p) => Ok(Self {
                    family: "custom".into(),
                    coefficients: Some(p.to_vec()),
                }),
                None => Err(FinslerError::Config(format!(
                    "custom profile `{}` has no polynomial form to serialize",
                    c.name()
                ))),
            },
            other => Ok(Self {
                family: other.name().to_string(),
                coefficients: None,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub dim_g: usize,
    #[serde(default)]
    pub h_dim: usize,
    #[serde(default)]
    pub completion: Completion,
    #[serde(default)]
    pub structure_constants: Vec<BracketEntry>,
    /// Row-major `n × n` matrix on m; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_product: Option<Vec<f64>>,
    /// Invariant vector in m-coordinates.
    pub v: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<EvalMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricConfig>,
}

impl SpaceConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| FinslerError::Config(e.to_string()))
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| FinslerError::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| FinslerError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn m_dim(&self) -> usize {
        self.dim_g.saturating_sub(self.h_dim)
    }

    /// Builds the model and its invariant vector.
    pub fn build(&self) -> Result<(ReductiveModel, InvariantVector)> {
        if self.h_dim > self.dim_g || self.dim_g == self.h_dim {
            return Err(FinslerError::Config(format!(
                "h_dim = {} leaves no room for m in dim_g = {}",
                self.h_dim, self.dim_g
            )));
        }
        let n = self.m_dim();
        let mut triples = Vec::with_capacity(self.structure_constants.len());
        for (idx, e) in self.structure_constants.iter().enumerate() {
            for (label, x) in [("i", e.i), ("j", e.j), ("k", e.k)] {
                if x == 0 || x > self.dim_g {
                    return Err(FinslerError::Config(format!(
                        "structure_constants[{idx}].{label} = {x} is outside 1..={}",
                        self.dim_g
                    )));
                }
            }
            triples.push((e.i - 1, e.j - 1, e.k - 1, e.c));
        }
        let sc = match self.completion {
            Completion::Antisymmetric => StructureConstants::from_triples(self.dim_g, &triples),
            Completion::Explicit => StructureConstants::from_explicit(self.dim_g, &triples),
        }
        .map_err(|e| FinslerError::Config(e.to_string()))?;
        let g = match &self.inner_product {
            None => DMatrix::identity(n, n),
            Some(flat) if flat.len() == n * n => DMatrix::from_row_slice(n, n, flat),
            Some(flat) => {
                return Err(FinslerError::Config(format!(
                    "inner_product has {} entries, expected {n} x {n} = {}",
                    flat.len(),
                    n * n
                )))
            }
        };
        if self.v.len() != n {
            return Err(FinslerError::Config(format!(
                "v has {} components, expected m_dim = {n}",
                self.v.len()
            )));
        }
        let model = ReductiveModel::new(sc, self.h_dim, g, &self.v)
            .map_err(|e| FinslerError::Config(e.to_string()))?;
        let v = model.invariant_vector();
        Ok((model, v))
    }

    /// The config that rebuilds a catalog entry.
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        let m = &entry.model;
        let n = m.m_dim();
        let structure_constants = m
            .structure()
            .nonzero()
            .filter(|&(i, j, _, _)| i < j)
            .map(|(i, j, k, c)| BracketEntry {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                c,
            })
            .collect();
        let g = m.inner_product();
        let identity = *g == DMatrix::identity(n, n);
        Self {
            dim_g: m.dim_g(),
            h_dim: m.h_dim(),
            completion: Completion::Antisymmetric,
            structure_constants,
            inner_product: (!identity).then(|| g.transpose().as_slice().to_vec()),
            v: entry.v.coords.as_slice().to_vec(),
            mode: None,
            metric: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const HEIS: &str = r#"
dim_g = 3
v = [0.5, 0.0, 0.0]
mode = "validated"

[[structure_constants]]
i = 1
j = 2
k = 3
c = 1.0

[metric]
family = "exponential"
"#;

    #[test]
    fn parse_and_build() {
        let cfg = SpaceConfig::from_toml_str(HEIS).unwrap();
        assert_eq!(cfg.mode, Some(EvalMode::Validated));
        let (m, v) = cfg.build().unwrap();
        assert_eq!(m.m_dim(), 3);
        assert_eq!(v.c, 0.5);
        assert_eq!(m.structure().get(1, 0, 2), -1.0);
        assert_eq!(cfg.metric.as_ref().unwrap().phi().unwrap().name(), "exponential");
    }

    #[test]
    fn round_trip_is_lossless() {
        let mut cfg = SpaceConfig::from_toml_str(HEIS).unwrap();
        cfg.inner_product = Some(vec![2.0, 0.1, 0.0, 0.1, 1.0, 0.0, 0.0, 0.0, 0.3 + 1e-17]);
        cfg.metric = Some(MetricConfig {
            family: "custom".into(),
            coefficients: Some(vec![1.0, 0.1, 0.1 + 0.2]),
        });
        let text = cfg.to_toml_string().unwrap();
        assert_eq!(SpaceConfig::from_toml_str(&text).unwrap(), cfg);
    }

    #[test]
    fn catalog_entries_round_trip() {
        for e in catalog::all() {
            let cfg = SpaceConfig::from_entry(&e);
            let back = SpaceConfig::from_toml_str(&cfg.to_toml_string().unwrap()).unwrap();
            let (m, v) = back.build().unwrap();
            assert_eq!(m.structure(), e.model.structure());
            assert_eq!(v.coords, e.v.coords);
        }
    }

    #[test]
    fn errors_are_config_errors() {
        let bad = [
            "dim_g = 3\nv = [0.5, 0.0]\n",
            "dim_g = 3\nv = [0.5, 0.0, 0.0]\ninner_product = [1.0]\n",
            "dim_g = 3\nv = [0.5, 0.0, 0.0]\n[[structure_constants]]\ni = 0\nj = 1\nk = 2\nc = 1.0\n",
            "dim_g = 3\nv = [0.5, 0.0, 0.0]\nbogus = 1\n",
            "dim_g = 3\nv = [0.5, 0.0, 0.0]\n[metric]\nfamily = \"custom\"\n",
            "dim_g = 3\nh_dim = 3\nv = []\n",
            "not toml at all [",
        ];
        for text in bad {
            let r = SpaceConfig::from_toml_str(text).and_then(|c| {
                c.build()?;
                c.metric.map(|m| m.phi()).transpose()?;
                Ok(())
            });
            assert!(matches!(r, Err(FinslerError::Config(_))), "{text}: {r:?}");
        }
    }
}
