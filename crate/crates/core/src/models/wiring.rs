use std::collections::BTreeMap;

use super::minors::{subsets, GenericMatrix};
use super::{sign_relation, subset_label, ModelError, ModelSeed, Report};
use crate::arith::SparsePolynomial;
use crate::quiver::ExtendedExchangeMatrix;
use crate::seed::{enumerate_pattern, DEFAULT_SEED_BUDGET};

fn interval(a: usize, d: usize) -> Vec<usize> {
    (a..=d).collect()
}

/// Intervals `[a, d]` of length `1..k`, mutable ones first.
fn interval_order(k: usize) -> (Vec<(usize, usize)>, usize) {
    let mut mutable = Vec::new();
    let mut prefixes = Vec::new();
    let mut suffixes = Vec::new();
    for len in 1..k {
        for a in 1..=k + 1 - len {
            let d = a + len - 1;
            if a == 1 {
                prefixes.push((a, d));
            } else if d == k {
                suffixes.push((a, d));
            } else {
                mutable.push((a, d));
            }
        }
    }
    let n = mutable.len();
    mutable.extend(prefixes);
    mutable.extend(suffixes);
    (mutable, n)
}

/// The seed of the special wiring diagram for the base affine space of `SL_k`.
///
/// Vertices are the intervals `[a, d]` with `1 <= d - a + 1 <= k - 1`, bound to
/// the flag minors on those columns; prefixes and suffixes are frozen. Every
/// vertex `[a, d]` has arrows to `[a+1, d+1]`, `[a-1, d]` and `[a, d-1]`
/// whenever these are vertices.
pub fn special_wiring_seed(k: usize) -> Result<ModelSeed, ModelError> {
    if k < 3 {
        return Err(ModelError::Argument(format!("wiring seed needs k >= 3, got {k}")));
    }
    let (ivs, n) = interval_order(k);
    let pos: BTreeMap<(usize, usize), usize> = ivs.iter().enumerate().map(|(p, &iv)| (iv, p)).collect();
    let mut arrows = Vec::new();
    for &(a, d) in &ivs {
        let from = pos[&(a, d)];
        for to in [(a + 1, d + 1), (a.wrapping_sub(1), d), (a, d.wrapping_sub(1))] {
            if let Some(&t) = pos.get(&to) {
                arrows.push((from, t, 1));
            }
        }
    }
    let matrix = ExtendedExchangeMatrix::from_arrows(n, ivs.len(), &arrows)?;
    let g = GenericMatrix::new(k, k);
    let mut labels = Vec::new();
    let mut bindings = Vec::new();
    let mut layout = Vec::new();
    for &(a, d) in &ivs {
        labels.push(subset_label(&interval(a, d)));
        bindings.push(g.flag_minor(&interval(a, d))?);
        layout.push((30.0 * (a + d - 2) as f64, 20.0 * (d - a + 1) as f64 - 10.0));
    }
    Ok(ModelSeed { name: format!("wiring:{k}"), matrix, labels, bindings, layout })
}

fn union(base: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = base.iter().chain(extra).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// The element exchanged with `P_[b,c]` and the two sides of its exchange
/// relation `(P_[b,c] * Ω, M1 + M2)` in the flag minors of a generic matrix.
fn omega_parts(g: &GenericMatrix, b: usize, c: usize) -> Result<(SparsePolynomial, SparsePolynomial, SparsePolynomial), ModelError> {
    let p = |s: &[usize]| g.flag_minor(s);
    let (a, d) = (b - 1, c + 1);
    if b == c {
        let omega = p(&[a, d])?;
        let lhs = &p(&[b])? * &omega;
        let rhs = &(&p(&[a, b])? * &p(&[d])?) + &(&p(&[a])? * &p(&[b, d])?);
        return Ok((omega, lhs, rhs));
    }
    let j: Vec<usize> = (b + 1..c).collect();
    let omega = &(&p(&union(&j, &[b]))? * &p(&union(&j, &[a, c, d]))?) - &(&p(&union(&j, &[a]))? * &p(&union(&j, &[b, c, d]))?);
    let lhs = &p(&union(&j, &[b, c]))? * &omega;
    let rhs = &(&(&p(&union(&j, &[a, b, c]))? * &p(&union(&j, &[c, d]))?) * &p(&union(&j, &[b]))?)
        + &(&(&p(&union(&j, &[a, b]))? * &p(&union(&j, &[b, c, d]))?) * &p(&union(&j, &[c]))?);
    Ok((omega, lhs, rhs))
}

/// Checks the three-term identity for `Ω` at the mutable interval `[b, c]` and
/// that mutating the bound wiring seed there produces exactly `Ω`.
pub fn omega_identity_check(k: usize, b: usize, c: usize) -> Result<bool, ModelError> {
    if !(2 <= b && b <= c && c < k) {
        return Err(ModelError::Argument(format!("[{b},{c}] is not a mutable interval for k = {k}")));
    }
    let ms = special_wiring_seed(k)?;
    let g = GenericMatrix::new(k, k);
    let (omega, lhs, rhs) = omega_parts(&g, b, c)?;
    if lhs != rhs {
        return Ok(false);
    }
    let pos = ms.index_of(&subset_label(&interval(b, c))).expect("mutable interval is a vertex");
    let mutated = ms.bound_seed()?.mutate(pos)?;
    Ok(mutated.cluster()[pos] == omega)
}

/// [`omega_identity_check`] at every mutable interval.
pub fn omega_report(k: usize) -> Result<Report, ModelError> {
    let ms = special_wiring_seed(k)?;
    let g = GenericMatrix::new(k, k);
    let seed = ms.bound_seed()?;
    let mut report = Report::new(format!("exchange element Ω for k={k}"));
    let (ivs, n) = interval_order(k);
    for (pos, &(b, c)) in ivs.iter().enumerate().take(n) {
        let (omega, lhs, rhs) = omega_parts(&g, b, c)?;
        report.check(format!("identity at [{b},{c}]"), lhs == rhs, "");
        let mutated = seed.mutate(pos)?;
        report.check(format!("mutation at [{b},{c}] gives Ω"), mutated.cluster()[pos] == omega, "");
    }
    Ok(report)
}

fn g4(p: &dyn Fn(&[usize]) -> SparsePolynomial, a: usize, b: usize, c: usize, d: usize, j: &[usize]) -> SparsePolynomial {
    &(&p(&union(j, &[b])) * &p(&union(j, &[a, c, d]))) - &(&p(&union(j, &[a])) * &p(&union(j, &[b, c, d])))
}

/// The 14 cluster variables of the `SL_5` pattern that are not flag minors.
fn sl5_extra(g: &GenericMatrix) -> Vec<(String, SparsePolynomial)> {
    let p = |s: &[usize]| g.flag_minor(&union(s, &[])).expect("proper subset");
    let h = |a: usize, b: usize, c: usize, d: usize, e: usize| {
        &(&p(&[a, c]) * &p(&[b, d, e])) - &(&p(&[a, b]) * &p(&[c, d, e]))
    };
    let jf = |a: usize, b: usize, c: usize, d: usize, e: usize| {
        &(&p(&[b]) * &p(&[a, c, d, e])) - &(&p(&[a]) * &p(&[b, c, d, e]))
    };
    let mut out = Vec::new();
    for (a, b, c, d) in [(1, 2, 3, 4), (2, 3, 4, 5), (4, 5, 1, 2), (1, 3, 4, 5), (1, 2, 3, 5)] {
        out.push((format!("g({a},{b}|{c},{d})"), g4(&p, a, b, c, d, &[])));
    }
    for (a, b, c, d, j) in [(1, 2, 3, 4, 5), (2, 3, 4, 5, 1), (4, 5, 1, 2, 3), (1, 3, 4, 5, 2), (1, 2, 3, 5, 4)] {
        out.push((format!("g({a},{b}|{c},{d}|{j})"), g4(&p, a, b, c, d, &[j])));
    }
    out.push(("h(1,2,3|4,5)".into(), h(1, 2, 3, 4, 5)));
    out.push(("h(5,4,3|2,1)".into(), h(5, 4, 3, 2, 1)));
    out.push(("j(1,2|3,4,5)".into(), jf(1, 2, 3, 4, 5)));
    out.push(("j(5,4|3,2,1)".into(), jf(5, 4, 3, 2, 1)));
    out
}

/// Enumerates the bound pattern of `SL_5` and matches its cluster variables
/// against the mutable flag minors and the 14 listed polynomials.
pub fn sl5_catalog_check() -> Result<Report, ModelError> {
    let ms = special_wiring_seed(5)?;
    let g = GenericMatrix::new(5, 5);
    let summary = enumerate_pattern(&ms.bound_seed()?, DEFAULT_SEED_BUDGET)?;
    let mut report = Report::new("SL5 cluster variables");
    report.check("pattern closes", summary.closed, format!("{} seeds", summary.seed_count));
    report.check("frozen variables", summary.frozen.len() == 8, format!("{}", summary.frozen.len()));
    report.check(
        "cluster variables",
        summary.cluster_variables.len() == 36,
        format!("{}", summary.cluster_variables.len()),
    );

    let frozen_labels: Vec<&String> = ms.labels[ms.rank()..].iter().collect();
    let mut catalog: Vec<(String, SparsePolynomial)> = Vec::new();
    for r in 1..5 {
        for s in subsets(5, r) {
            let l = subset_label(&s);
            if !frozen_labels.contains(&&l) {
                catalog.push((l, g.flag_minor(&s)?));
            }
        }
    }
    let minors = catalog.len();
    catalog.extend(sl5_extra(&g));
    let values: Vec<&SparsePolynomial> = summary.cluster_variable_values().collect();
    let mut used = vec![false; values.len()];
    let mut missing = Vec::new();
    for (idx, (name, poly)) in catalog.iter().enumerate() {
        match values.iter().enumerate().find_map(|(i, v)| sign_relation(v, poly).map(|s| (i, s))) {
            Some((i, s)) => {
                used[i] = true;
                if s < 0 {
                    report.note(format!("{name} occurs with sign -1"));
                }
            }
            None => missing.push(name.clone()),
        }
        if idx + 1 == minors {
            report.check(
                "22 mutable flag minors occur",
                minors == 22 && missing.is_empty(),
                format!("{minors} minors, missing: {}", if missing.is_empty() { "none".into() } else { missing.join(", ") }),
            );
            missing.clear();
        }
    }
    report.check(
        "14 listed polynomials occur",
        missing.is_empty(),
        if missing.is_empty() { "all found".to_string() } else { format!("missing: {}", missing.join(", ")) },
    );
    let extra: Vec<String> = values.iter().zip(&used).filter(|(_, &u)| !u).map(|(v, _)| v.to_string()).collect();
    report.check(
        "no other cluster variables",
        extra.is_empty(),
        if extra.is_empty() { String::new() } else { format!("unmatched: {}", extra.join("; ")) },
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let s = special_wiring_seed(4).unwrap();
        assert_eq!((s.rank(), s.frozen_count()), (3, 6));
        let s = special_wiring_seed(5).unwrap();
        assert_eq!((s.rank(), s.frozen_count()), (6, 8));
        assert!(special_wiring_seed(2).is_err());
    }

    #[test]
    fn local_rule_around_an_interval() {
        // Around [3,4] for k = 6: Jab=[2,3], Jbcd=[3,5], Jc=[4,4] point in;
        // Jcd=[4,5], Jb=[3,3], Jabc=[2,4] point out.
        let s = special_wiring_seed(6).unwrap();
        let arrows = s.labeled_arrows();
        let has = |a: &str, b: &str| arrows.contains_key(&(a.to_string(), b.to_string()));
        for from in ["P23", "P345", "P4"] {
            assert!(has(from, "P34"), "{from} -> P34");
        }
        for to in ["P45", "P3", "P234"] {
            assert!(has("P34", to), "P34 -> {to}");
        }
    }

    #[test]
    fn omega_small() {
        assert!(omega_identity_check(3, 2, 2).unwrap());
        assert!(omega_identity_check(4, 2, 3).unwrap());
        assert!(omega_report(5).unwrap().passed());
        assert!(omega_identity_check(4, 1, 2).is_err());
    }

    #[test]
    fn initial_exchanges_are_polynomial() {
        let mut r = Report::new("x");
        special_wiring_seed(5).unwrap().exchange_check(&mut r);
        assert!(r.passed(), "{r}");
    }
}
