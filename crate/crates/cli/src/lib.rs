//! Command implementations behind the `cluster` binary and its HTTP API.
//!
//! Every command returns its output text and exit code instead of printing,
//! so the binary and the tests drive the same code.

pub mod payload;
pub mod server;

use std::sync::Arc;

use serde::Serialize;

use cluster_core::arith::{parse_polynomial, ArithError, Monomial, VariableTable};
use cluster_core::ideals::{self, IdealBasis, IdealError, MonomialOrder};
use cluster_core::presets::{self, PresetError};
use cluster_core::quiver::QuiverError;
use cluster_core::seed::{enumerate_pattern, SeedError};

use payload::{load_seed, PatternPayload, SeedPayload};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input: unknown preset, invalid vertex, malformed JSON or polynomial.
    Usage(String),
    /// The computation itself failed or ran out of budget.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl From<PresetError> for CliError {
    fn from(e: PresetError) -> Self {
        match &e {
            PresetError::Seed(s) => s.clone().into(),
            _ if e.is_usage() => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<SeedError> for CliError {
    fn from(e: SeedError) -> Self {
        match e {
            SeedError::Quiver(QuiverError::IndexOutOfRange { .. } | QuiverError::FrozenVertex { .. })
            | SeedError::InvalidBudget => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::Seed(s) => s.into(),
            IdealError::ReservedName(_) | IdealError::VariableMismatch | IdealError::Arith(ArithError::Parse(_)) => {
                CliError::Usage(e.to_string())
            }
            IdealError::Arith(ArithError::UnknownVariable(_) | ArithError::DuplicateVariable(_)) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

/// Text to print and the exit code to return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn json<T: Serialize>(value: &T, code: i32) -> Self {
        Output { text: serde_json::to_string_pretty(value).expect("serializable"), code }
    }
}

/// Parses a comma-separated 1-based walk into 0-based directions.
pub fn parse_walk(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(CliError::Usage(format!("walk entries are 1-based vertex numbers, got `{s}`"))),
        })
        .collect()
}

pub fn cmd_presets() -> Output {
    Output::json(&presets::catalog(), EXIT_OK)
}

/// Mutates a preset or a seed loaded from JSON text along `walk` (0-based).
pub fn cmd_mutate(preset: Option<&str>, file_text: Option<&str>, walk: &[usize]) -> Result<Output, CliError> {
    let (seed, p) = match (preset, file_text) {
        (Some(name), None) => {
            let p = presets::preset(name)?;
            (p.seed()?, Some(p))
        }
        (None, Some(text)) => (load_seed(text)?, None),
        _ => return Err(CliError::Usage("give exactly one of --preset and --file".into())),
    };
    let n = seed.rank();
    if let Some(&k) = walk.iter().find(|&&k| k >= n) {
        return Err(CliError::Usage(format!("vertex {} is not mutable (mutable vertices are 1..={n})", k + 1)));
    }
    let out = seed.mutate_walk(walk)?;
    Ok(Output::json(&SeedPayload::from_seed(&out, p.as_ref(), walk), EXIT_OK))
}

/// Exit code 1 when the pattern does not close within `budget` seeds.
pub fn cmd_enumerate(preset: &str, budget: usize) -> Result<Output, CliError> {
    let p = presets::preset(preset)?;
    let summary = enumerate_pattern(&p.seed()?, budget)?;
    let code = if summary.closed { EXIT_OK } else { EXIT_RUNTIME };
    Ok(Output::json(&PatternPayload::new(&p.name, &summary), code))
}

pub fn cmd_verify(model: &str, json: bool) -> Result<Output, CliError> {
    let report = presets::verify(model)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_RUNTIME };
    if json {
        Ok(Output::json(&report, code))
    } else {
        Ok(Output { text: report.to_string(), code })
    }
}

pub fn cmd_present(preset: &str, walk: &[usize]) -> Result<Output, CliError> {
    let p = presets::preset(preset)?;
    let seed = p.seed()?;
    if let Some(&k) = walk.iter().find(|&&k| k >= seed.rank()) {
        return Err(CliError::Usage(format!("vertex {} is not mutable", k + 1)));
    }
    Ok(Output::json(&ideals::present(&seed, walk)?, EXIT_OK))
}

/// Which ideal computation to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealTask {
    Groebner,
    Member(String),
    Saturate(String),
}

#[derive(Serialize)]
struct BasisJson {
    variables: Vec<String>,
    order: MonomialOrder,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct MemberJson {
    polynomial: String,
    member: bool,
    normal_form: String,
}

pub fn parse_order(text: &str) -> Result<MonomialOrder, CliError> {
    match text {
        "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(CliError::Usage(format!("unknown monomial order `{other}` (use degrevlex or lex)"))),
    }
}

/// `vars` is comma-separated; `gens` are separated by `;`.
pub fn cmd_ideal(vars: &str, gens: &str, order: MonomialOrder, task: &IdealTask) -> Result<Output, CliError> {
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let table: Arc<VariableTable> =
        VariableTable::plain(names).map_err(|e| CliError::Usage(e.to_string()))?.shared();
    let parse = |s: &str| parse_polynomial(s.trim(), &table).map_err(|e| CliError::Usage(format!("`{}`: {e}", s.trim())));
    let generators = gens.split(';').filter(|s| !s.trim().is_empty()).map(parse).collect::<Result<Vec<_>, _>>()?;
    let ideal = IdealBasis::new(&table, generators, order.clone())?;
    let basis_json = |i: &IdealBasis| -> Result<BasisJson, CliError> {
        Ok(BasisJson { variables: table.names().to_vec(), order: order.clone(), basis: i.groebner()?.render() })
    };
    match task {
        IdealTask::Groebner => Ok(Output::json(&basis_json(&ideal)?, EXIT_OK)),
        IdealTask::Member(f) => {
            let f = parse(f)?;
            let g = ideal.groebner()?;
            let json = MemberJson { polynomial: f.to_string(), member: g.contains(&f)?, normal_form: g.normal_form(&f)?.to_string() };
            Ok(Output::json(&json, EXIT_OK))
        }
        IdealTask::Saturate(m) => {
            let m = parse(m)?;
            let mono: Monomial = match (m.len(), m.terms().next()) {
                (1, Some((mono, c))) if c.is_one() => mono.clone(),
                _ => return Err(CliError::Usage(format!("`{m}` is not a monomial"))),
            };
            let j = ideals::saturate(&ideal, &mono)?;
            Ok(Output::json(&basis_json(&j)?, EXIT_OK))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walks() {
        assert_eq!(parse_walk("1, 2,1").unwrap(), [0, 1, 0]);
        assert!(parse_walk("").unwrap().is_empty());
        assert_eq!(parse_walk("0").unwrap_err().exit_code(), EXIT_USAGE);
        assert_eq!(parse_walk("a").unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn error_classes() {
        let e: CliError = SeedError::Quiver(QuiverError::FrozenVertex { k: 3 }).into();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e: CliError = IdealError::TooLarge("x".into()).into();
        assert_eq!(e.exit_code(), EXIT_RUNTIME);
        let e: CliError = PresetError::Unknown("x".into()).into();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }
}
