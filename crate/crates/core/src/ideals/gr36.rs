use std::collections::BTreeMap;

use super::IdealError;
use crate::arith::{parse_polynomial, ExactRational, Monomial, SparsePolynomial, VariableTable};
use crate::models::{rectangles_seed, sign_relation, subset_label, subsets, GenericMatrix, Report};
use crate::seed::enumerate_pattern;

const LONG: &str = "P135*P246 - P134*P256 - P136*P245 - P123*P456";

/// `(sign, multiplier, three-term relation)` with `P124 * LONG = sum sign * multiplier * relation`.
const PARTS: [(i64, &str, &str); 4] = [
    (1, "P246", "P124*P135 - P123*P145 - P125*P134"),
    (-1, "P134", "P124*P256 - P125*P246 + P126*P245"),
    (-1, "P245", "P124*P136 - P123*P146 - P126*P134"),
    (-1, "P123", "P124*P456 - P145*P246 + P146*P245"),
];

/// Whether `target` is a linear combination of `rows`, by comparing ranks
/// under exact Gaussian elimination.
pub fn in_linear_span(rows: &[Vec<ExactRational>], target: &[ExactRational]) -> bool {
    fn rank(mut m: Vec<Vec<ExactRational>>) -> usize {
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].recip().expect("nonzero pivot");
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] * &inv;
                    for k in c..cols {
                        let d = &f * &m[r][k];
                        m[i][k] -= &d;
                    }
                }
            }
            r += 1;
        }
        r
    }
    let base = rank(rows.to_vec());
    let mut with = rows.to_vec();
    with.push(target.to_vec());
    rank(with) == base
}

fn coefficient_vectors(polys: &[SparsePolynomial]) -> Vec<Vec<ExactRational>> {
    let mut basis: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let k = basis.len();
            basis.entry(m.clone()).or_insert(k);
        }
    }
    polys
        .iter()
        .map(|p| {
            let mut v = vec![ExactRational::zero(); basis.len()];
            for (m, c) in p.terms() {
                v[basis[m]] = c.clone();
            }
            v
        })
        .collect()
}

/// Checks the certificate that the long Plücker relation of `Gr(3,6)` times
/// `P124` lies in the exchange ideal, while the relation itself is not a
/// combination of the degree-two exchange relations.
///
/// The identity is checked formally in the 20 symbols `P_ijk`; the
/// three-term relations on a generic `3 × 6` matrix; and the exchange
/// relations are read off the enumerated rectangles pattern.
pub fn gr36_certificate_check() -> Result<Report, IdealError> {
    let sets = subsets(6, 3);
    let mut names: Vec<String> = sets.iter().map(|s| subset_label(s)).collect();
    let ring = VariableTable::plain(names.iter().cloned())?.shared();
    let p = |s: &str| parse_polynomial(s, &ring);
    let mut report = Report::new("Gr(3,6) certificate");

    let long = p(LONG)?;
    let lhs = &p("P124")? * &long;
    let mut rhs = SparsePolynomial::zero(&ring);
    for (sign, mult, rel) in PARTS {
        let term = (&p(mult)? * &p(rel)?).scale(&sign.into());
        rhs = &rhs + &term;
    }
    report.check("P124 times the long relation equals the displayed combination", lhs == rhs, format!("{} symbols", ring.len()));

    let g = GenericMatrix::new(3, 6);
    let values: Vec<SparsePolynomial> = sets.iter().map(|s| g.plucker(s)).collect::<Result<_, _>>()?;
    for (_, _, rel) in PARTS {
        let on_matrix = p(rel)?.substitute(&values)?;
        report.check(format!("{rel} vanishes on a generic 3x6 matrix"), on_matrix.is_zero(), "");
    }
    report.check("the long relation vanishes on a generic 3x6 matrix", long.substitute(&values)?.is_zero(), "");

    // Exchange relations of the rectangles pattern, written in symbols.
    let ms = rectangles_seed(3, 6).map_err(IdealError::from)?;
    let summary = enumerate_pattern(&ms.bound_seed()?, 1_000)?;
    report.check("pattern closes", summary.closed, format!("{} seeds", summary.seed_count));
    let mut symbol = Vec::with_capacity(summary.variables.len());
    let mut extra = 0;
    for v in &summary.variables {
        match values.iter().enumerate().find_map(|(k, w)| sign_relation(v, w).map(|s| (k, s))) {
            Some((k, s)) => symbol.push((k, s, 1u32)),
            None => {
                extra += 1;
                names.push(format!("X{extra}"));
                let degree = v.total_degree().unwrap_or(0) / 3;
                symbol.push((names.len() - 1, 1, degree));
            }
        }
    }
    let big = VariableTable::plain(names.iter().cloned())?.shared();
    let mono = |m: &[(usize, u32)]| -> SparsePolynomial {
        let mut e = vec![0u32; big.len()];
        let mut sign = 1i64;
        for &(id, x) in m {
            let (k, s, _) = symbol[id];
            e[k] += x;
            if s < 0 && x % 2 == 1 {
                sign = -sign;
            }
        }
        SparsePolynomial::monomial(&big, Monomial::from_exponents(e), sign.into())
    };
    let weight = |m: &[(usize, u32)]| -> u32 { m.iter().map(|&(id, x)| symbol[id].2 * x).sum() };
    let mut quadratic = Vec::new();
    let mut all = Vec::new();
    for r in &summary.relations {
        let rel = &(&mono(&[(r.z, 1), (r.z_prime, 1)]) - &mono(&r.m1)) - &mono(&r.m2);
        if weight(&[(r.z, 1), (r.z_prime, 1)]) == 2 {
            quadratic.push(rel.clone());
        }
        all.push(rel);
    }
    let widen: Vec<usize> = (0..ring.len()).collect();
    let long_big = long.remap(&big, &widen);
    let with_extra = quadratic
        .iter()
        .filter(|q| q.terms().any(|(m, _)| m.exponents()[ring.len()..].iter().any(|&e| e > 0)))
        .count();
    report.check(
        "degree-two exchange relations have three terms",
        quadratic.iter().all(|q| q.len() == 3),
        format!("{} of {} exchange relations have degree two", quadratic.len(), all.len()),
    );
    report.note(format!(
        "{extra} non-Plücker cluster variables; {with_extra} degree-two relations involve one of them"
    ));
    let key = parse_polynomial("P135*P246", &big)?;
    let key_mono = key.terms().next().expect("monomial").0.clone();
    report.check(
        "no exchange relation involves P135*P246",
        all.iter().all(|q| q.coefficient(&key_mono).is_zero()),
        "",
    );
    for (_, _, rel) in PARTS {
        let r = p(rel)?.remap(&big, &widen);
        report.check(format!("{rel} is an exchange relation"), all.iter().any(|q| sign_relation(q, &r).is_some()), "");
    }
    let mut stacked = quadratic.clone();
    stacked.push(long_big);
    let vectors = coefficient_vectors(&stacked);
    let (target, rows) = vectors.split_last().expect("nonempty");
    report.check(
        "the long relation is not a combination of the degree-two exchange relations",
        !in_linear_span(rows, target),
        format!("rank test over {} monomials", target.len()),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_membership() {
        let q = |v: &[i64]| v.iter().map(|&x| ExactRational::from_integer(x)).collect::<Vec<_>>();
        let rows = vec![q(&[1, 1, 0]), q(&[0, 1, 1])];
        assert!(in_linear_span(&rows, &q(&[1, 2, 1])));
        assert!(!in_linear_span(&rows, &q(&[1, 0, 0])));
        assert!(in_linear_span(&[], &q(&[0, 0])));
    }

    #[test]
    fn certificate_holds() {
        let r = gr36_certificate_check().unwrap();
        assert!(r.passed(), "{r}");
    }
}
