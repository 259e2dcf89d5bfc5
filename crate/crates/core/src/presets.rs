//! Named seeds shared by the CLI, the HTTP API and the tests, plus the
//! registry of model verifications behind `verify <model>`.
//!
//! Names carry their parameters after a colon: `rectangles:3,7`,
//! `quadric:5`, `two_by_n:3:2,2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, LaurentPolynomial, SparsePolynomial};
use crate::ideals::{self, IdealError};
use crate::models::{self, ModelError, ModelSeed, Report};
use crate::quiver::{self, ExtendedExchangeMatrix, QuiverError, SearchOutcome};
use crate::seed::{Seed, SeedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("unknown preset or model `{0}`")]
    Unknown(String),
    #[error("bad parameters for `{name}`: {reason}")]
    Params { name: String, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

impl PresetError {
    /// Whether the error comes from the request rather than the computation.
    pub fn is_usage(&self) -> bool {
        matches!(self, PresetError::Unknown(_) | PresetError::Params { .. } | PresetError::Model(ModelError::Argument(_)))
    }
}

/// One registry entry as listed by `presets` and `GET /api/presets`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetInfo {
    pub name: String,
    pub pattern: String,
    pub description: String,
    /// Whether `verify` accepts this name.
    pub verifiable: bool,
}

fn info(name: &str, pattern: &str, description: &str, verifiable: bool) -> PresetInfo {
    PresetInfo { name: name.into(), pattern: pattern.into(), description: description.into(), verifiable }
}

pub fn catalog() -> Vec<PresetInfo> {
    vec![
        info("a2", "a2", "type A2, one arrow x1 -> x2", false),
        info("a:4", "a:n", "type An, linearly oriented path", false),
        info("b2", "b2", "type B2 with B = [[0,1],[-2,0]], d = (2,1): z1 z3 = z2^2 + 1", true),
        info("markov", "markov", "the Markov quiver Q(2,2,2)", false),
        info("qabc:3,2,1", "qabc:a,b,c", "3-cycle with a, b, c arrows", true),
        info("rectangles:3,7", "rectangles:a,b", "rectangles seed of the Plücker ring (alias grassmannian:a,b)", true),
        info("quadric:5", "quadric:k", "seed for the quadric cone in dimension 2k", true),
        info("wiring:5", "wiring:k", "special wiring diagram seed of the base affine space (alias sl_k_base_affine:k)", true),
        info("sl5", "sl5", "wiring:5 with the catalog of 36 cluster variables", true),
        info("grid4", "grid4", "grid seed for 4x4 matrices with minors", true),
        info("two_by_n:3", "two_by_n:n[:parts]", "2x(n+1) matrices, blocks given by a composition of n+1", true),
        info("mat:2,5", "mat:a,b", "a x (b-a) matrices through the bordered Plücker ring", true),
        info("typeB:4", "typeB:n", "six exchange relation families of type Bn (verify only)", true),
        info("typeC:4", "typeC:n", "six exchange relation families of type Cn (verify only)", true),
        info("gr36", "gr36", "certificate for the long Plücker relation of Gr(3,6) (verify only)", true),
        info("presentation:b2", "presentation:b2", "exchange ideals and saturations along B2 walks (verify only)", true),
    ]
}

/// A resolved preset: a quiver with labels, drawing hints, and bindings to
/// polynomials in matrix entries when the seed comes from a model.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub matrix: ExtendedExchangeMatrix,
    pub labels: Vec<String>,
    pub layout: Vec<(f64, f64)>,
    pub model: Option<ModelSeed>,
}

impl Preset {
    fn bare(name: &str, matrix: ExtendedExchangeMatrix, labels: Vec<String>, layout: Vec<(f64, f64)>) -> Self {
        Preset { name: name.into(), matrix, labels, layout, model: None }
    }

    fn from_model(name: String, ms: ModelSeed) -> Self {
        Preset { name, matrix: ms.matrix.clone(), labels: ms.labels.clone(), layout: ms.layout.clone(), model: Some(ms) }
    }

    /// The seed with the labels as initial variables.
    pub fn seed(&self) -> Result<Seed<LaurentPolynomial>, SeedError> {
        Seed::initial(self.matrix.clone(), self.labels.clone())
    }

    /// Values in the initial labels turned into polynomials in matrix
    /// entries, when the preset is bound.
    pub fn bind(&self, values: &[LaurentPolynomial]) -> Option<Result<Vec<SparsePolynomial>, ArithError>> {
        let ms = self.model.as_ref()?;
        Some(values.iter().map(|v| bind_laurent(v, &ms.bindings)).collect())
    }
}

impl Preset {
    /// Polynomials with conventional names in the ambient ring of a bound
    /// preset: Plücker coordinates, flag minors or all minors.
    pub fn named_polynomials(&self) -> Result<Vec<(String, SparsePolynomial)>, PresetError> {
        let (head, params) = split(&self.name);
        let mut out = Vec::new();
        match head {
            "rectangles" | "mat" => {
                let v = ints(&self.name, params, 2)?;
                let (a, b) = (v[0], v[1]);
                let mat = if head == "mat" {
                    models::bordered_with_identity(&models::GenericMatrix::new(a, b - a))
                } else {
                    models::GenericMatrix::new(a, b).entries().clone()
                };
                let rows: Vec<usize> = (1..=a).collect();
                for j in models::subsets(b, a) {
                    out.push((models::subset_label(&j), models::minor_of(&mat, &rows, &j)?));
                }
            }
            "wiring" => {
                let k = ints(&self.name, params, 1)?[0];
                let g = models::GenericMatrix::new(k, k);
                for r in 1..k {
                    for j in models::subsets(k, r) {
                        out.push((models::subset_label(&j), g.flag_minor(&j)?));
                    }
                }
            }
            "grid4" => {
                let g = models::GenericMatrix::new(4, 4);
                let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<String>();
                for r in 1..=4 {
                    for rows in models::subsets(4, r) {
                        for cols in models::subsets(4, r) {
                            out.push((format!("D{}_{}", join(&rows), join(&cols)), g.minor(&rows, &cols)?));
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(out)
    }

    /// For presets with [`Preset::named_polynomials`], the name of each
    /// bound value, prefixed by `-` when only the negative matches. Values
    /// that do not bind to a polynomial, or match no name, stay `None`.
    pub fn identify(&self, values: &[LaurentPolynomial]) -> Option<Vec<Option<String>>> {
        let ms = self.model.as_ref()?;
        let names = self.named_polynomials().ok().filter(|n| !n.is_empty())?;
        Some(
            values
                .iter()
                .map(|v| {
                    let b = bind_laurent(v, &ms.bindings).ok()?;
                    names.iter().find_map(|(name, p)| {
                        models::sign_relation(&b, p).map(|s| if s < 0 { format!("-{name}") } else { name.clone() })
                    })
                })
                .collect(),
        )
    }
}

/// Substitutes `bindings` into a Laurent polynomial; the denominator must divide.
pub fn bind_laurent(v: &LaurentPolynomial, bindings: &[SparsePolynomial]) -> Result<SparsePolynomial, ArithError> {
    let num = v.numerator().substitute(bindings)?;
    let mut den = SparsePolynomial::one(bindings[0].vars());
    for (i, &e) in v.denominator().exponents().iter().enumerate() {
        if e > 0 {
            den = &den * &bindings[i].pow(e);
        }
    }
    num.exact_div(&den)
}

fn split(name: &str) -> (&str, Option<&str>) {
    match name.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (name, None),
    }
}

fn ints(name: &str, params: Option<&str>, count: usize) -> Result<Vec<usize>, PresetError> {
    let bad = |reason: String| PresetError::Params { name: name.into(), reason };
    let p = params.ok_or_else(|| bad(format!("expected {count} parameter(s)")))?;
    let v: Vec<usize> = p
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("`{s}` is not a nonnegative integer"))))
        .collect::<Result<_, _>>()?;
    if v.len() != count {
        return Err(bad(format!("expected {count} parameter(s), got {}", v.len())));
    }
    Ok(v)
}

fn two_by_n_params(name: &str, params: Option<&str>) -> Result<(usize, Vec<usize>), PresetError> {
    let bad = |reason: &str| PresetError::Params { name: name.into(), reason: reason.into() };
    let p = params.ok_or_else(|| bad("expected n"))?;
    let (n, parts) = match p.split_once(':') {
        Some((n, parts)) => (n, Some(parts)),
        None => (p, None),
    };
    let n: usize = n.trim().parse().map_err(|_| bad("n must be a positive integer"))?;
    let parts = match parts {
        Some(s) => s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad("parts must be integers"))).collect::<Result<_, _>>()?,
        None => vec![n + 1],
    };
    Ok((n, parts))
}

fn circle(count: usize, radius: f64) -> Vec<(f64, f64)> {
    (0..count)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / count as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

fn xs(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("x{i}")).collect()
}

pub fn preset(name: &str) -> Result<Preset, PresetError> {
    let (head, params) = split(name.trim());
    let p = match head {
        "a2" => Preset::bare("a2", ExtendedExchangeMatrix::from_arrows(2, 2, &[(0, 1, 1)])?, xs(2), vec![(0.0, 0.0), (40.0, 0.0)]),
        "b2" => Preset::bare(
            "b2",
            ExtendedExchangeMatrix::from_rows_with(&[vec![0, 1], vec![-2, 0]], 2, vec![2, 1])?,
            xs(2),
            vec![(0.0, 0.0), (40.0, 0.0)],
        ),
        "a" => {
            let n = ints(name, params, 1)?[0];
            if n == 0 {
                return Err(PresetError::Params { name: name.into(), reason: "n must be positive".into() });
            }
            let arrows: Vec<(usize, usize, i64)> = (1..n).map(|i| (i - 1, i, 1)).collect();
            let layout = (0..n).map(|i| (40.0 * i as f64, 0.0)).collect();
            Preset::bare(&format!("a:{n}"), ExtendedExchangeMatrix::from_arrows(n, n, &arrows)?, xs(n), layout)
        }
        "markov" => Preset::bare("markov", quiver::q_abc(2, 2, 2), xs(3), circle(3, 40.0)),
        "qabc" => {
            let v = ints(name, params, 3)?;
            let (a, b, c) = (v[0] as i64, v[1] as i64, v[2] as i64);
            Preset::bare(&format!("qabc:{a},{b},{c}"), quiver::q_abc(a, b, c), xs(3), circle(3, 40.0))
        }
        "rectangles" | "grassmannian" => {
            let v = ints(name, params, 2)?;
            Preset::from_model(format!("rectangles:{},{}", v[0], v[1]), models::rectangles_seed(v[0], v[1])?)
        }
        "quadric" => {
            let k = ints(name, params, 1)?[0];
            Preset::from_model(format!("quadric:{k}"), models::quadric_seed(k)?)
        }
        "wiring" | "sl_k_base_affine" => {
            let k = ints(name, params, 1)?[0];
            Preset::from_model(format!("wiring:{k}"), models::special_wiring_seed(k)?)
        }
        "sl5" => Preset::from_model("wiring:5".into(), models::special_wiring_seed(5)?),
        "grid4" => Preset::from_model("grid4".into(), models::grid_seed_k4()?),
        "two_by_n" => {
            let (n, parts) = two_by_n_params(name, params)?;
            let joined = parts.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            Preset::from_model(format!("two_by_n:{n}:{joined}"), models::two_by_n_seed(n, &parts)?)
        }
        "mat" => {
            let v = ints(name, params, 2)?;
            Preset::from_model(format!("mat:{},{}", v[0], v[1]), models::mat_seed(v[0], v[1])?)
        }
        _ => return Err(PresetError::Unknown(name.into())),
    };
    Ok(p)
}

/// Dependency-free Q(a,b,c) report: the criterion on `0 <= a,b,c <= 4`
/// against bounded searches.
pub fn qabc_report(search_depth: usize, node_budget: i64) -> Result<Report, PresetError> {
    let mut report = Report::new("Q(a,b,c) mutation-acyclicity");
    let mut formula_ok = true;
    for a in 0..=4i64 {
        for b in 0..=4i64 {
            for c in 0..=4i64 {
                let expect = !(a >= 2 && b >= 2 && c >= 2 && quiver::bbh_determinant(a, b, c) >= 0);
                formula_ok &= quiver::bbh_mutation_acyclic(a, b, c) == expect;
            }
        }
    }
    report.check("criterion on the grid 0..4", formula_ok, "125 triples");
    match quiver::search_acyclic_in_mutation_class(&quiver::q_abc(2, 2, 2), 6, node_budget)? {
        SearchOutcome::Exhausted { visited, depth_reached, budget_hit, .. } => report.check(
            "Markov quiver search to depth 6",
            !budget_hit,
            format!("exhausted after {visited} classes, last layer {depth_reached}"),
        ),
        SearchOutcome::Found { depth, .. } => report.check("Markov quiver search to depth 6", false, format!("found an acyclic quiver at depth {depth}")),
    }
    let mut found = 0;
    let mut total = 0;
    let mut contradictions = Vec::new();
    for a in 0..=3i64 {
        for b in 0..=3i64 {
            for c in 0..=3i64 {
                let outcome = quiver::search_acyclic_in_mutation_class(&quiver::q_abc(a, b, c), search_depth, node_budget)?;
                let hit = matches!(outcome, SearchOutcome::Found { .. });
                if quiver::bbh_mutation_acyclic(a, b, c) {
                    total += 1;
                    if hit {
                        found += 1;
                    }
                } else if hit {
                    contradictions.push(format!("({a},{b},{c})"));
                }
            }
        }
    }
    report.check(
        format!("acyclic representative found within depth {search_depth}"),
        found == total,
        format!("{found} of {total} criterion-acyclic triples"),
    );
    report.check("no acyclic representative for criterion-cyclic triples", contradictions.is_empty(), contradictions.join(" "));
    Ok(report)
}

/// Runs the verification registered under `name`.
pub fn verify(name: &str) -> Result<Report, PresetError> {
    let (head, params) = split(name.trim());
    let report = match head {
        "quadric" => models::quadric_check(ints(name, params, 1)?[0])?,
        "typeB" => models::type_b_identity_suite(ints(name, params, 1)?[0])?,
        "typeC" => models::type_c_identity_suite(ints(name, params, 1)?[0])?,
        "two_by_n" => {
            let (n, parts) = two_by_n_params(name, params)?;
            models::two_by_n_structure_check(n, &parts)?
        }
        "rectangles" | "grassmannian" => {
            let v = ints(name, params, 2)?;
            let (a, b) = (v[0], v[1]);
            let mut r = Report::new(format!("grassmannian:{a},{b}"));
            r.absorb(models::rectangles_label_check(a, b)?);
            let mut exchange = Report::new("initial exchanges");
            models::rectangles_seed(a, b)?.exchange_check(&mut exchange);
            r.absorb(exchange);
            r.absorb(models::muir_embedding_check(a, b)?);
            if a <= 3 && b <= 8 {
                r.absorb(models::cyclic_shift_check(a, b)?);
            } else {
                r.note("cyclic shift skipped beyond a <= 3, b <= 8");
            }
            let census = models::grassmannian_census(a, b, 5_000)?;
            if census.closed {
                r.check(
                    "enumeration meets every non-frozen Plücker coordinate",
                    census.plucker_found == census.plucker_total,
                    format!(
                        "{} cluster variables, {} of {} Plücker, {} non-Plücker",
                        census.cluster_variables,
                        census.plucker_found,
                        census.plucker_total,
                        census.non_plucker.len()
                    ),
                );
            } else {
                r.note(format!("enumeration did not close within 5000 seeds ({} cluster variables so far)", census.cluster_variables));
            }
            r
        }
        "wiring" | "sl_k_base_affine" => {
            let k = ints(name, params, 1)?[0];
            let mut r = Report::new(format!("sl_k_base_affine:{k}"));
            let mut exchange = Report::new("initial exchanges");
            models::special_wiring_seed(k)?.exchange_check(&mut exchange);
            r.absorb(exchange);
            r.absorb(models::omega_report(k)?);
            r
        }
        "sl5" => models::sl5_catalog_check()?,
        "grid4" => models::grid_seed_check()?,
        "mat" => {
            let v = ints(name, params, 2)?;
            models::mat_transport_check(v[0], v[1])?
        }
        "gr36" => ideals::gr36_certificate_check()?,
        "presentation" if params == Some("b2") => ideals::b2_presentation_report(200, 20240602)?,
        "qabc" => qabc_report(8, 200_000)?,
        "b2" => b2_pattern_report()?,
        _ => return Err(PresetError::Unknown(name.into())),
    };
    Ok(report)
}

/// The B2 pattern: six cluster variables, six clusters, and the nine
/// relations among consecutive variables.
pub fn b2_pattern_report() -> Result<Report, PresetError> {
    use crate::arith::parse_polynomial;
    use crate::seed::enumerate_pattern;
    let seed = preset("b2")?.seed()?;
    let summary = enumerate_pattern(&seed, 1_000)?;
    let mut r = Report::new("B2 pattern");
    r.check("closes", summary.closed, format!("{} seeds", summary.seed_count));
    r.check("six cluster variables", summary.cluster_variables.len() == 6, summary.cluster_variables.len().to_string());
    r.check("six clusters", summary.clusters.len() == 6, summary.clusters.len().to_string());
    let (vars, _) = ideals::exchange_ideal(&seed, &[0, 1, 0, 1])?;
    let ring = ideals::formal_ring(&vars)?;
    let relations = [
        "z1*z3 - z2^2 - 1",
        "z2*z4 - z3 - 1",
        "z3*z5 - z4^2 - 1",
        "z4*z6 - z5 - 1",
        "z5*z1 - z6^2 - 1",
        "z6*z2 - z1 - 1",
        "z1*z4 - z2 - z6",
        "z3*z6 - z4 - z2",
        "z5*z2 - z6 - z4",
    ];
    for rel in relations {
        let f = parse_polynomial(rel, &ring)?;
        r.check(format!("{rel} = 0"), ideals::vanishes_on(&f, &vars)?, "");
    }
    let distinct: std::collections::HashSet<String> = vars.values.iter().map(|v| v.to_string()).collect();
    r.check("z1..z6 are the six cluster variables", distinct.len() == 6, "");
    Ok(r)
}
