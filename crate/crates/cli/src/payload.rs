//! JSON shapes printed by the CLI and served over HTTP.

use serde::{Deserialize, Serialize};

use cluster_core::arith::{parse_laurent, LaurentPolynomial, VariableTable};
use cluster_core::presets::Preset;
use cluster_core::quiver::{ExtendedExchangeMatrix, QuiverJson};
use cluster_core::seed::{PatternSummary, Seed};

use crate::CliError;

/// A seed together with where it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// 1-based mutation directions applied to the preset or loaded seed.
    #[serde(default)]
    pub walk: Vec<usize>,
    pub quiver: QuiverJson,
    /// One flag per row of the quiver.
    pub frozen: Vec<bool>,
    /// Names of the initial variables the cluster is written in.
    pub variables: Vec<String>,
    pub cluster: Vec<String>,
    /// For bound presets, the conventional name of each cluster entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identified: Option<Vec<Option<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub layout: Vec<(f64, f64)>,
}

impl SeedPayload {
    pub fn from_seed(seed: &Seed<LaurentPolynomial>, preset: Option<&Preset>, walk: &[usize]) -> Self {
        let b = seed.matrix();
        SeedPayload {
            preset: preset.map(|p| p.name.clone()),
            walk: walk.iter().map(|k| k + 1).collect(),
            quiver: b.to_json(seed.labels()),
            frozen: (0..b.m()).map(|i| i >= b.n()).collect(),
            variables: seed.cluster()[0].vars().names().to_vec(),
            cluster: seed.cluster().iter().map(|v| v.to_string()).collect(),
            identified: preset.and_then(|p| p.identify(seed.cluster())),
            layout: preset.map(|p| p.layout.clone()).unwrap_or_default(),
        }
    }

    /// Rebuilds the seed; cluster strings are parsed back over `variables`.
    pub fn to_seed(&self) -> Result<Seed<LaurentPolynomial>, CliError> {
        let usage = |e: String| CliError::Usage(format!("invalid seed JSON: {e}"));
        let (b, labels) = ExtendedExchangeMatrix::from_json(&self.quiver).map_err(|e| usage(e.to_string()))?;
        if self.variables.len() != b.m() || self.cluster.len() != b.m() {
            return Err(usage("variables and cluster must have one entry per row".into()));
        }
        let frozen = (0..b.m()).map(|i| i >= b.n());
        let table = VariableTable::new(self.variables.iter().cloned(), frozen).map_err(|e| usage(e.to_string()))?.shared();
        let cluster = self
            .cluster
            .iter()
            .map(|s| parse_laurent(s, &table).map_err(|e| usage(format!("`{s}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Seed::new(b, cluster, labels).map_err(|e| usage(e.to_string()))
    }
}

/// Accepts either a full [`SeedPayload`] or a bare quiver, which becomes an
/// initial seed in its labels.
pub fn load_seed(text: &str) -> Result<Seed<LaurentPolynomial>, CliError> {
    if let Ok(p) = serde_json::from_str::<SeedPayload>(text) {
        return p.to_seed();
    }
    let q: QuiverJson =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("expected seed or quiver JSON: {e}")))?;
    let (b, labels) = ExtendedExchangeMatrix::from_json(&q).map_err(|e| CliError::Usage(e.to_string()))?;
    Seed::initial(b, labels).map_err(|e| CliError::Usage(e.to_string()))
}

/// One recorded exchange, written out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationPayload {
    pub z: usize,
    pub z_prime: usize,
    /// `z * z' = M1 + M2` with variables written as `v{id}`.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternPayload {
    pub preset: String,
    pub closed: bool,
    pub seed_count: usize,
    /// Every value met; ids below index this list.
    pub variables: Vec<String>,
    pub frozen: Vec<usize>,
    pub cluster_variables: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
    pub relations: Vec<RelationPayload>,
}

impl PatternPayload {
    pub fn new(preset: &str, s: &PatternSummary<LaurentPolynomial>) -> Self {
        let mono = |m: &[(usize, u32)]| {
            if m.is_empty() {
                return "1".to_string();
            }
            m.iter()
                .map(|&(i, e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
                .collect::<Vec<_>>()
                .join("*")
        };
        PatternPayload {
            preset: preset.to_string(),
            closed: s.closed,
            seed_count: s.seed_count,
            variables: s.variables.iter().map(|v| v.to_string()).collect(),
            frozen: s.frozen.clone(),
            cluster_variables: s.cluster_variables.clone(),
            clusters: s.clusters.clone(),
            relations: s
                .relations
                .iter()
                .map(|r| RelationPayload {
                    z: r.z,
                    z_prime: r.z_prime,
                    text: format!("v{}*v{} = {} + {}", r.z, r.z_prime, mono(&r.m1), mono(&r.m2)),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cluster_core::presets::preset;

    #[test]
    fn seed_payload_round_trip() {
        let p = preset("b2").unwrap();
        let s = p.seed().unwrap().mutate_walk(&[0, 1, 0]).unwrap();
        let json = SeedPayload::from_seed(&s, Some(&p), &[0, 1, 0]);
        assert_eq!(json.walk, [1, 2, 1]);
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(load_seed(&text).unwrap(), s);
    }

    #[test]
    fn bare_quiver_loads_as_initial_seed() {
        let text = r#"{"n":2,"m":2,"d":[1,1],"entries":[[0,1],[-1,0]],"labels":["a","b"]}"#;
        let s = load_seed(text).unwrap();
        assert_eq!(s.cluster()[0].to_string(), "a");
        assert!(matches!(load_seed("{}"), Err(CliError::Usage(_))));
    }
}
