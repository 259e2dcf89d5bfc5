use super::minors::{subsets, GenericMatrix};
use super::{sign_relation, ModelError, ModelSeed, Report};
use crate::quiver::ExtendedExchangeMatrix;

/// `(rows, columns, x, y)` of the grid seed for `4 × 4` matrices; the first
/// nine are mutable.
const VERTICES: [(&str, &str, f64, f64); 16] = [
    ("134", "123", 40.0, 40.0),
    ("134", "134", 80.0, 40.0),
    ("123", "134", 120.0, 40.0),
    ("34", "13", 40.0, 20.0),
    ("13", "13", 80.0, 20.0),
    ("13", "34", 120.0, 20.0),
    ("3", "1", 40.0, 0.0),
    ("3", "3", 80.0, 0.0),
    ("1", "3", 120.0, 0.0),
    ("1234", "1234", 80.0, 60.0),
    ("234", "123", 0.0, 40.0),
    ("123", "234", 160.0, 40.0),
    ("34", "12", 0.0, 20.0),
    ("12", "34", 160.0, 20.0),
    ("4", "1", 0.0, 0.0),
    ("1", "4", 160.0, 0.0),
];

const ARROWS: [(usize, usize); 21] = [
    (9, 0),
    (9, 2),
    (0, 10),
    (0, 1),
    (2, 1),
    (2, 11),
    (12, 3),
    (4, 3),
    (4, 5),
    (13, 5),
    (6, 14),
    (6, 7),
    (8, 7),
    (8, 15),
    (3, 0),
    (3, 6),
    (1, 9),
    (1, 4),
    (7, 4),
    (5, 2),
    (5, 8),
];

fn digits(s: &str) -> Vec<usize> {
    s.bytes().map(|b| (b - b'0') as usize).collect()
}

/// The grid seed for the coordinate ring of `4 × 4` matrices, each vertex
/// bound to the minor `Δ_{I,J}` of a generic matrix, labeled `D{I}_{J}`.
pub fn grid_seed_k4() -> Result<ModelSeed, ModelError> {
    let arrows: Vec<(usize, usize, i64)> = ARROWS.iter().map(|&(a, b)| (a, b, 1)).collect();
    let matrix = ExtendedExchangeMatrix::from_arrows(9, 16, &arrows)?;
    let g = GenericMatrix::new(4, 4);
    let mut labels = Vec::new();
    let mut bindings = Vec::new();
    let mut layout = Vec::new();
    for (rows, cols, x, y) in VERTICES {
        labels.push(format!("D{rows}_{cols}"));
        bindings.push(g.minor(&digits(rows), &digits(cols))?);
        layout.push((x, y));
    }
    Ok(ModelSeed { name: "grid4".into(), matrix, labels, bindings, layout })
}

/// Vertex count, degrees of mutable vertices, and that each first-step
/// exchange `x x' = M1 + M2` has `x'` equal to a minor up to sign.
pub fn grid_seed_check() -> Result<Report, ModelError> {
    let ms = grid_seed_k4()?;
    let g = GenericMatrix::new(4, 4);
    let mut report = Report::new("grid seed for 4x4 matrices");
    report.check("vertices", ms.matrix.m() == 16, format!("{} vertices, {} frozen", ms.matrix.m(), ms.frozen_count()));
    let degrees: Vec<i64> = (0..ms.rank()).map(|k| ms.matrix.column(k).iter().map(|e| e.abs()).sum()).collect();
    report.check(
        "mutable degrees are 3 or 4",
        degrees.iter().all(|d| *d == 3 || *d == 4),
        format!("{degrees:?}"),
    );
    let mut minors = Vec::new();
    for r in 1..=4 {
        for rows in subsets(4, r) {
            for cols in subsets(4, r) {
                minors.push((rows.clone(), cols.clone(), g.minor(&rows, &cols)?));
            }
        }
    }
    let quotients = ms.exchange_check(&mut report);
    for (k, q) in quotients.into_iter().enumerate() {
        let Some(q) = q else { continue };
        let hit = minors.iter().find_map(|(r, c, m)| sign_relation(&q, m).map(|s| (r, c, s)));
        let name = format!("new variable at {} is a minor", ms.labels[k]);
        match hit {
            Some((r, c, s)) => {
                let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<String>();
                report.check(name, true, format!("{}Δ({},{})", if s < 0 { "-" } else { "" }, join(r), join(c)));
            }
            None => report.check(name, false, q.to_string()),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_checks() {
        let r = grid_seed_check().unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(grid_seed_k4().unwrap().frozen_count(), 7);
    }
}
