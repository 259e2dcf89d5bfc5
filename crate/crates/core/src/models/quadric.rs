use std::sync::Arc;

use super::{ModelError, ModelSeed, Report};
use crate::arith::{ArithError, SparsePolynomial, VariableTable};
use crate::quiver::ExtendedExchangeMatrix;
use crate::seed::{enumerate_pattern, ClusterValue};

fn ring(k: usize) -> Arc<VariableTable> {
    VariableTable::plain((1..=2 * k).map(|i| format!("x{i}"))).expect("distinct names").shared()
}

fn x(vars: &Arc<VariableTable>, i: usize) -> SparsePolynomial {
    SparsePolynomial::var(vars, i - 1)
}

/// `sum_{i=1}^{t} (-1)^{t-i} x_i x_{2k+1-i}` with the sign of the last term positive.
fn alternating(vars: &Arc<VariableTable>, k: usize, t: usize) -> SparsePolynomial {
    let mut acc = SparsePolynomial::zero(vars);
    for i in 1..=t {
        let term = &x(vars, i) * &x(vars, 2 * k + 1 - i);
        acc = if (t - i) % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `Q = sum_{i=1}^{k} (-1)^{i-1} x_i x_{2k+1-i}` over `x1..x{2k}`.
pub fn quadric_form(k: usize) -> SparsePolynomial {
    let vars = ring(k);
    let mut acc = SparsePolynomial::zero(&vars);
    for i in 1..=k {
        let term = &x(&vars, i) * &x(&vars, 2 * k + 1 - i);
        acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Membership of `f` in the principal ideal generated by `g`.
pub fn verify_modulo(f: &SparsePolynomial, g: &SparsePolynomial) -> Result<bool, ModelError> {
    if g.is_zero() {
        return Err(ArithError::DivisionByZero.into());
    }
    match f.exact_div(g) {
        Ok(_) => Ok(true),
        Err(ArithError::Inexact) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// The seed of the quadric cone in dimension `2k`.
///
/// Mutable `x2..x{k-1}`; frozen `x1, x{2k}, p1..p{k-3}, xk, x{k+1}` where
/// `p_s = sum_{i=1}^{s+1} (-1)^{s+1-i} x_i x_{2k+1-i}`. The arrows are
/// `x1, x{2k} -> x2`, then a zigzag `x_i -> p_{i-1} -> x_{i+1}` and finally
/// `x{k-1} -> xk, x{k+1}`.
pub fn quadric_seed(k: usize) -> Result<ModelSeed, ModelError> {
    if k < 3 {
        return Err(ModelError::Argument(format!("quadric needs k >= 3, got {k}")));
    }
    let vars = ring(k);
    let n = k - 2;
    let mut labels: Vec<String> = (2..k).map(|i| format!("x{i}")).collect();
    let mut bindings: Vec<SparsePolynomial> = (2..k).map(|i| x(&vars, i)).collect();
    let mut layout: Vec<(f64, f64)> = (2..k).map(|i| (48.0 * i as f64 - 64.0, 20.0)).collect();
    let pos_x1 = labels.len();
    labels.push("x1".into());
    bindings.push(x(&vars, 1));
    layout.push((0.0, 0.0));
    let pos_x2k = labels.len();
    labels.push(format!("x{}", 2 * k));
    bindings.push(x(&vars, 2 * k));
    layout.push((32.0, 0.0));
    let pos_p = labels.len();
    for s in 1..=k.saturating_sub(3) {
        labels.push(format!("p{s}"));
        bindings.push(alternating(&vars, k, s + 1));
        layout.push((32.0 * (s + 1) as f64, 0.0));
    }
    let pos_xk = labels.len();
    labels.push(format!("x{k}"));
    bindings.push(x(&vars, k));
    layout.push((32.0 * (k - 1) as f64, 0.0));
    labels.push(format!("x{}", k + 1));
    bindings.push(x(&vars, k + 1));
    layout.push((32.0 * k as f64, 0.0));

    // Mutable x_i sits at position i - 2.
    let mut arrows = vec![(pos_x1, 0, 1), (pos_x2k, 0, 1)];
    for i in 2..k - 1 {
        arrows.push((i - 2, pos_p + i - 2, 1));
        arrows.push((pos_p + i - 2, i - 1, 1));
    }
    arrows.push((n - 1, pos_xk, 1));
    arrows.push((n - 1, pos_xk + 1, 1));
    let matrix = ExtendedExchangeMatrix::from_arrows(n, labels.len(), &arrows)?;
    Ok(ModelSeed { name: format!("quadric:{k}"), matrix, labels, bindings, layout })
}

/// Checks every exchange relation of [`quadric_seed`] modulo `Q` and
/// enumerates the abstract pattern.
pub fn quadric_check(k: usize) -> Result<Report, ModelError> {
    let ms = quadric_seed(k)?;
    let q = quadric_form(k);
    let vars = q.vars().clone();
    let mut report = Report::new(format!("quadric k={k}"));
    report.check("Q lies in <Q>", verify_modulo(&q, &q)?, "");
    report.check("x1 does not lie in <Q>", !verify_modulo(&x(&vars, 1), &q)?, "");
    let seed = ms.bound_seed()?;
    for i in 2..k {
        let (m1, m2) = seed.exchange_monomials(i - 2)?;
        let residual = &(&x(&vars, i) * &x(&vars, 2 * k + 1 - i)) - &m1.try_add(&m2)?;
        let ok = verify_modulo(&residual, &q)?;
        let how = if residual.is_zero() {
            "exact".to_string()
        } else if residual == q {
            "differs by Q".to_string()
        } else if residual == -&q {
            "differs by -Q".to_string()
        } else {
            format!("residual {residual}")
        };
        report.check(format!("x{i}*x{} = {m1} + {m2} mod Q", 2 * k + 1 - i), ok, how);
    }
    let p_ok = (1..=k.saturating_sub(3)).all(|s| {
        let direct = alternating(&vars, k, s + 1);
        let idx = ms.index_of(&format!("p{s}")).expect("p label");
        ms.bindings[idx] == direct
    });
    report.check("frozen p_s bindings", p_ok, format!("{} of them", k.saturating_sub(3)));
    if k == 5 {
        let p1 = &(&x(&vars, 2) * &x(&vars, 9)) - &(&x(&vars, 1) * &x(&vars, 10));
        report.check("p1 = -x1*x10 + x2*x9", ms.bindings[ms.index_of("p1").unwrap()] == p1, "");
    }
    let summary = enumerate_pattern(&ms.laurent_seed()?, 1 << 16)?;
    let expect = 1usize << (k - 2);
    report.check(
        "clusters",
        summary.closed && summary.clusters.len() == expect,
        format!("{} clusters, closed = {}, expected {expect}", summary.clusters.len(), summary.closed),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_polynomial;

    #[test]
    fn k3_single_relation() {
        let ms = quadric_seed(3).unwrap();
        assert_eq!(ms.rank(), 1);
        let seed = ms.bound_seed().unwrap();
        let (m1, m2) = seed.exchange_monomials(0).unwrap();
        let vars = ms.ring().clone();
        let sum = m1.try_add(&m2).unwrap();
        assert_eq!(sum, parse_polynomial("x3*x4 + x1*x6", &vars).unwrap());
    }

    #[test]
    fn k5_matches_figure() {
        let ms = quadric_seed(5).unwrap();
        let arrows = ms.labeled_arrows();
        let names: Vec<(&str, &str)> = arrows.keys().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        for e in [("x1", "x2"), ("x10", "x2"), ("x2", "p1"), ("p1", "x3"), ("x3", "p2"), ("p2", "x4"), ("x4", "x5"), ("x4", "x6")] {
            assert!(names.contains(&e), "missing {e:?}");
        }
        assert_eq!(arrows.len(), 8);
        let p2 = &ms.bindings[ms.index_of("p2").unwrap()];
        assert_eq!(p2, &parse_polynomial("x1*x10 - x2*x9 + x3*x8", ms.ring()).unwrap());
    }

    #[test]
    fn checks_pass() {
        for k in 3..=6 {
            let r = quadric_check(k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn modulo_basics() {
        let q = quadric_form(5);
        assert!(verify_modulo(&q, &q).unwrap());
        let zero = SparsePolynomial::zero(q.vars());
        assert!(verify_modulo(&q, &zero).is_err());
        assert!(verify_modulo(&zero, &q).unwrap());
    }
}
