use std::collections::{BTreeMap, BTreeSet};

use super::minors::{minor_of, subsets, GenericMatrix, PolyMatrix};
use super::{sign_relation, subset_label, ModelError, ModelSeed, Report};
use crate::arith::SparsePolynomial;
use crate::quiver::ExtendedExchangeMatrix;
use crate::seed::enumerate_pattern;

/// A Young diagram `i × j` inside the `a × (b - a)` rectangle; any diagram
/// with `i = 0` or `j = 0` is the empty one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectLabel {
    pub i: usize,
    pub j: usize,
}

/// Labels of the vertical steps of the boundary path cut out by the
/// rectangle, steps numbered `1..=b` from the northeast corner.
pub fn rect_label(a: usize, b: usize, r: RectLabel) -> Result<Vec<usize>, ModelError> {
    if a == 0 || a >= b {
        return Err(ModelError::Argument(format!("need 0 < a < b, got a = {a}, b = {b}")));
    }
    let w = b - a;
    if r.i > a || r.j > w {
        return Err(ModelError::Argument(format!("rectangle {}x{} does not fit in {a}x{w}", r.i, r.j)));
    }
    let (i, j) = if r.i == 0 || r.j == 0 { (0, 0) } else { (r.i, r.j) };
    let mut out: Vec<usize> = (w - j + 1..=w - j + i).collect();
    out.extend(w + i + 1..=b);
    Ok(out)
}

fn check_ab(a: usize, b: usize) -> Result<(), ModelError> {
    if a < 2 || a >= b {
        return Err(ModelError::Argument(format!("rectangles seed needs 2 <= a < b, got a = {a}, b = {b}")));
    }
    Ok(())
}

/// Positions of the rectangles seed: mutable rectangles row by row, then the
/// empty rectangle, the right column and the bottom row.
fn rectangle_order(a: usize, b: usize) -> (Vec<RectLabel>, usize) {
    let w = b - a;
    let mut out = Vec::new();
    for i in 1..a {
        for j in 1..w {
            out.push(RectLabel { i, j });
        }
    }
    let n = out.len();
    out.push(RectLabel { i: 0, j: 0 });
    for i in 1..a {
        out.push(RectLabel { i, j: w });
    }
    for j in 1..=w {
        out.push(RectLabel { i: a, j });
    }
    (out, n)
}

/// The rectangles seed for the Plücker ring of `a × b` matrices.
///
/// An `i × j` rectangle has arrows to `i × (j+1)`, `(i+1) × j` and
/// `(i-1) × (j-1)`, and the empty rectangle points to `1 × 1`. Each vertex is
/// bound to `P_{J(r)}` of a generic `a × b` matrix.
pub fn rectangles_seed(a: usize, b: usize) -> Result<ModelSeed, ModelError> {
    check_ab(a, b)?;
    let g = GenericMatrix::new(a, b);
    rectangles_seed_over(a, b, g.entries())
}

/// The rectangles quiver bound to the maximal minors of `[z | I_a]` for a
/// generic `a × (b - a)` matrix `z`, so every binding is a minor of `z`.
pub fn mat_seed(a: usize, b: usize) -> Result<ModelSeed, ModelError> {
    check_ab(a, b)?;
    let z = GenericMatrix::new(a, b - a);
    let mut ms = rectangles_seed_over(a, b, &bordered_with_identity(&z))?;
    ms.name = format!("mat:{a},{b}");
    Ok(ms)
}

/// The rectangles quiver bound to the maximal minors of any `a × b` matrix.
pub(crate) fn rectangles_seed_over(a: usize, b: usize, mat: &PolyMatrix) -> Result<ModelSeed, ModelError> {
    check_ab(a, b)?;
    let w = b - a;
    let (rects, n) = rectangle_order(a, b);
    let pos: BTreeMap<RectLabel, usize> = rects.iter().enumerate().map(|(p, &r)| (r, p)).collect();
    let mut arrows = Vec::new();
    for i in 1..=a {
        for j in 1..=w {
            let from = pos[&RectLabel { i, j }];
            if j < w {
                arrows.push((from, pos[&RectLabel { i, j: j + 1 }], 1));
            }
            if i < a {
                arrows.push((from, pos[&RectLabel { i: i + 1, j }], 1));
            }
            if i >= 2 && j >= 2 {
                arrows.push((from, pos[&RectLabel { i: i - 1, j: j - 1 }], 1));
            }
        }
    }
    arrows.push((pos[&RectLabel { i: 0, j: 0 }], pos[&RectLabel { i: 1, j: 1 }], 1));
    let matrix = ExtendedExchangeMatrix::from_arrows(n, rects.len(), &arrows)?;
    let rows: Vec<usize> = (1..=a).collect();
    let mut labels = Vec::new();
    let mut bindings = Vec::new();
    let mut layout = Vec::new();
    for r in &rects {
        let j = rect_label(a, b, *r)?;
        labels.push(subset_label(&j));
        bindings.push(minor_of(mat, &rows, &j)?);
        layout.push((20.0 * r.j as f64, 20.0 * (a - r.i) as f64));
    }
    Ok(ModelSeed { name: format!("rectangles:{a},{b}"), matrix, labels, bindings, layout })
}

fn shift(set: &[usize], b: usize, by: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&x| (x - 1 + by) % b + 1).collect();
    out.sort_unstable();
    out
}

/// The mutation order of the cyclic-shift exercise: rows of mutable
/// rectangles from bottom to top, each from left to right (0-based positions).
pub fn cyclic_shift_order(a: usize, b: usize) -> Result<Vec<usize>, ModelError> {
    check_ab(a, b)?;
    let (rects, n) = rectangle_order(a, b);
    let mut order = Vec::with_capacity(n);
    for i in (1..a).rev() {
        for j in 1..b - a {
            order.push(rects.iter().position(|r| *r == RectLabel { i, j }).expect("mutable rectangle"));
        }
    }
    Ok(order)
}

/// Mutates the bound rectangles seed once at every mutable vertex in the
/// exercise order (bottom row to top row, each left to right) and compares
/// the result with the cyclically shifted seed `Σ^1`.
///
/// The reversed order is also run and its shift recorded as a note. Values
/// are matched up to sign; every sign other than `+1` is reported as a note.
pub fn cyclic_shift_check(a: usize, b: usize) -> Result<Report, ModelError> {
    check_ab(a, b)?;
    if a > 3 || b > 8 {
        return Err(ModelError::Argument("cyclic shift check is limited to a <= 3, b <= 8".into()));
    }
    let ms = rectangles_seed(a, b)?;
    let order = cyclic_shift_order(a, b)?;
    let mut report = Report::new(format!("cyclic shift of rectangles:{a},{b}"));
    report.check(
        "mutation order",
        true,
        order.iter().map(|&k| ms.labels[k].trim_start_matches('P').to_string()).collect::<Vec<_>>().join(", "),
    );
    let by = shift_after_walk(&ms, a, b, &order, &mut report)?;
    if let Some(by) = by {
        report.check(
            "result is the shift by 1",
            by == 1,
            if by == 1 { "labels J became J+1".to_string() } else { format!("labels J became J+{by} mod {b}") },
        );
    }
    let reversed: Vec<usize> = order.iter().rev().copied().collect();
    let mut scratch = Report::new("reversed");
    match shift_after_walk(&ms, a, b, &reversed, &mut scratch)? {
        Some(r) => report.note(format!("the reversed order yields the shift by {r}")),
        None => report.note("the reversed order yields no cyclic shift"),
    }
    Ok(report)
}

/// Mutates along `order` and finds `s` such that the result is the rectangles
/// seed with every label `J` replaced by `J + s mod b`, checking the quiver.
fn shift_after_walk(
    ms: &ModelSeed,
    a: usize,
    b: usize,
    order: &[usize],
    report: &mut Report,
) -> Result<Option<usize>, ModelError> {
    let g = GenericMatrix::new(a, b);
    let result = match ms.bound_seed()?.mutate_walk(order) {
        Ok(s) => s,
        Err(e) => {
            report.check("mutation sequence", false, e.to_string());
            return Ok(None);
        }
    };
    report.check("mutation sequence", true, "every exchange divided exactly");
    let n = ms.rank();
    let m = ms.matrix.m();
    let label_sets: Vec<Vec<usize>> = {
        let (rects, _) = rectangle_order(a, b);
        rects.iter().map(|r| rect_label(a, b, *r)).collect::<Result<_, _>>()?
    };
    // phi[x] = position w of the original seed whose shifted value sits at x.
    let mut found = None;
    let mut unmatched_plus_one = Vec::new();
    for by in 1..b {
        let shifted: Vec<SparsePolynomial> =
            label_sets.iter().map(|j| g.plucker(&shift(j, b, by))).collect::<Result<_, _>>()?;
        let mut phi = vec![usize::MAX; m];
        let mut signs = vec![0i8; m];
        let mut unmatched = Vec::new();
        for x in 0..m {
            let range = if x < n { 0..n } else { n..m };
            match range.clone().find_map(|w| sign_relation(&result.cluster()[x], &shifted[w]).map(|s| (w, s))) {
                Some((w, s)) => {
                    phi[x] = w;
                    signs[x] = s;
                }
                None => unmatched.push(ms.labels[x].clone()),
            }
        }
        let distinct: BTreeSet<usize> = phi.iter().copied().filter(|&w| w != usize::MAX).collect();
        if unmatched.is_empty() && distinct.len() == m {
            found = Some((by, phi, signs));
            break;
        }
        if by == 1 {
            unmatched_plus_one = unmatched;
        }
    }
    let Some((by, phi, signs)) = found else {
        report.check(
            "values are cyclically shifted Plücker coordinates",
            false,
            format!("no shift matches; against the shift by 1, unmatched: {}", unmatched_plus_one.join(", ")),
        );
        return Ok(None);
    };
    report.check("values are cyclically shifted Plücker coordinates", true, format!("{m} positions matched"));

    for x in 0..m {
        if signs[x] != 1 {
            report.note(format!(
                "position {} holds {} times P{:?}",
                ms.labels[x],
                signs[x],
                shift(&label_sets[phi[x]], b, by)
            ));
        }
    }
    let negatives = signs.iter().filter(|&&s| s != 1).count();
    report.check("signs", true, if negatives == 0 { "all +1".to_string() } else { format!("{negatives} flagged") });
    let mut diffs = Vec::new();
    for x in 0..m {
        for y in 0..n {
            if result.matrix().get(x, y) != ms.matrix.get(phi[x], phi[y]) {
                diffs.push(format!("({}, {})", ms.labels[x], ms.labels[y]));
            }
        }
    }
    report.check(
        "quiver equals the rectangles quiver after relabeling",
        diffs.is_empty(),
        if diffs.is_empty() { String::new() } else { format!("entries differ at {}", diffs.join(" ")) },
    );
    Ok(Some(by))
}

/// Deletes the bottom row of the rectangles quiver, freezes the new bottom
/// row, removes `b` from every label and compares with the quiver for
/// `(a - 1, b - 1)`. Also checks on bindings that `P_{I ∪ {b}}` specializes
/// to `P_I` when the last column is the last unit vector.
pub fn muir_embedding_check(a: usize, b: usize) -> Result<Report, ModelError> {
    check_ab(a, b)?;
    let mut report = Report::new(format!("Muir embedding rectangles:{a},{b} -> rectangles:{},{}", a - 1, b - 1));
    if a == 2 {
        report.check("skipped", true, "target has a = 1 and no mutable vertices");
        report.note("degenerate target, nothing to compare");
        return Ok(report);
    }
    let big = rectangles_seed(a, b)?;
    let small = rectangles_seed(a - 1, b - 1)?;
    let (rects, n) = rectangle_order(a, b);
    let strip = |l: &[usize]| -> Vec<usize> { l.iter().copied().filter(|&x| x != b).collect() };

    let mut keep = Vec::new();
    let mut new_frozen = Vec::new();
    for (p, r) in rects.iter().enumerate() {
        if r.i == a {
            continue;
        }
        keep.push(p);
        new_frozen.push(p >= n || r.i == a - 1);
    }
    let label_of = |p: usize| -> Result<String, ModelError> { Ok(subset_label(&strip(&rect_label(a, b, rects[p])?))) };
    let mut vertices: BTreeMap<String, bool> = BTreeMap::new();
    for (idx, &p) in keep.iter().enumerate() {
        vertices.insert(label_of(p)?, new_frozen[idx]);
    }
    let frozen_of: BTreeMap<usize, bool> = keep.iter().copied().zip(new_frozen.iter().copied()).collect();
    let mut arrows: BTreeMap<(String, String), i64> = BTreeMap::new();
    for (&x, &fx) in &frozen_of {
        for (&y, &fy) in &frozen_of {
            if y >= n || fx && fy {
                continue;
            }
            let e = big.matrix.get(x, y);
            if e > 0 {
                arrows.insert((label_of(x)?, label_of(y)?), e);
            } else if e < 0 && x >= n {
                arrows.insert((label_of(y)?, label_of(x)?), -e);
            }
        }
    }
    let expect_vertices: BTreeMap<String, bool> =
        small.labels.iter().enumerate().map(|(p, l)| (l.clone(), p >= small.rank())).collect();
    report.check(
        "vertices and frozen flags",
        vertices == expect_vertices,
        format!("{} vertices after surgery, {} expected", vertices.len(), expect_vertices.len()),
    );
    let expect_arrows = small.labeled_arrows();
    report.check(
        "arrows",
        arrows == expect_arrows,
        if arrows == expect_arrows { format!("{} arrows", arrows.len()) } else { arrow_diff(&arrows, &expect_arrows) },
    );

    // Bindings: z_{i,b} = [i = a], other bottom-row entries 0, top-left block generic.
    let gs = GenericMatrix::new(a - 1, b - 1);
    let gb = GenericMatrix::new(a, b);
    let zero = SparsePolynomial::zero(gs.vars());
    let one = SparsePolynomial::one(gs.vars());
    let mut values = Vec::with_capacity(a * b);
    for i in 1..=a {
        for j in 1..=b {
            values.push(if j == b {
                if i == a { one.clone() } else { zero.clone() }
            } else if i == a {
                zero.clone()
            } else {
                gs.entry(i, j).clone()
            });
        }
    }
    let mut bad = Vec::new();
    for &p in &keep {
        let l = rect_label(a, b, rects[p])?;
        let specialized = gb.plucker(&l)?.substitute(&values)?;
        if specialized != gs.plucker(&strip(&l))? {
            bad.push(subset_label(&l));
        }
    }
    report.check(
        "P_(I+b) specializes to P_I",
        bad.is_empty(),
        if bad.is_empty() { format!("{} labels", keep.len()) } else { bad.join(", ") },
    );
    Ok(report)
}

fn arrow_diff(got: &BTreeMap<(String, String), i64>, want: &BTreeMap<(String, String), i64>) -> String {
    let mut out = Vec::new();
    for (k, v) in got {
        if want.get(k) != Some(v) {
            out.push(format!("extra {}->{} x{v}", k.0, k.1));
        }
    }
    for (k, v) in want {
        if got.get(k) != Some(v) {
            out.push(format!("missing {}->{} x{v}", k.0, k.1));
        }
    }
    out.join("; ")
}

/// Row set `K` and column set `L` of the minor of an `a × (b - a)` matrix
/// corresponding to `P_J` of the matrix with an identity block appended on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatTransport {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `Δ_{K,L} = sign * P_J`, or `None` when they are not equal up to sign.
    pub sign: Option<i8>,
}

pub fn mat_transport(a: usize, b: usize, j: &[usize]) -> Result<MatTransport, ModelError> {
    check_ab(a, b)?;
    let z = GenericMatrix::new(a, b - a);
    mat_transport_with(&z, &bordered_with_identity(&z), a, b, j)
}

fn mat_transport_with(
    z: &GenericMatrix,
    bordered: &PolyMatrix,
    a: usize,
    b: usize,
    j: &[usize],
) -> Result<MatTransport, ModelError> {
    let w = b - a;
    if j.len() != a {
        return Err(ModelError::Argument(format!("{j:?} must have {a} elements")));
    }
    let rows: Vec<usize> = (w + 1..=b).filter(|x| !j.contains(x)).map(|x| x - w).collect();
    let cols: Vec<usize> = j.iter().copied().filter(|&x| x <= w).collect();
    let delta = z.minor(&rows, &cols)?;
    let p = minor_of(bordered, &(1..=a).collect::<Vec<_>>(), j)?;
    Ok(MatTransport { sign: sign_relation(&delta, &p), rows, cols })
}

/// `[z | I_a]` for the generic matrix `z`.
pub fn bordered_with_identity(z: &GenericMatrix) -> PolyMatrix {
    let a = z.rows();
    let one = SparsePolynomial::one(z.vars());
    let zero = SparsePolynomial::zero(z.vars());
    z.entries()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..a).map(|k| if k == i { one.clone() } else { zero.clone() }));
            r
        })
        .collect()
}

/// Runs [`mat_transport`] for every `a`-subset `J` of `1..=b`.
pub fn mat_transport_check(a: usize, b: usize) -> Result<Report, ModelError> {
    check_ab(a, b)?;
    let z = GenericMatrix::new(a, b - a);
    let bordered = bordered_with_identity(&z);
    let mut report = Report::new(format!("Mat transport a={a}, b={b}"));
    let mut signs = BTreeMap::new();
    let mut failures = Vec::new();
    let all = subsets(b, a);
    for j in &all {
        let t = mat_transport_with(&z, &bordered, a, b, j)?;
        match t.sign {
            Some(s) => *signs.entry(s).or_insert(0usize) += 1,
            None => failures.push(subset_label(j)),
        }
        if t.sign == Some(-1) {
            report.note(format!("{} = -Δ_{{{:?},{:?}}}", subset_label(j), t.rows, t.cols));
        }
    }
    report.check(
        "Δ_(K,L) = ±P_J for every J",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} subsets, {} with sign +1, {} with sign -1", all.len(), signs.get(&1).unwrap_or(&0), signs.get(&-1).unwrap_or(&0))
        } else {
            format!("mismatch at {}", failures.join(", "))
        },
    );
    Ok(report)
}

/// Census of a Grassmannian pattern enumerated from the bound rectangles seed.
#[derive(Clone, Debug)]
pub struct GrassmannianCensus {
    pub closed: bool,
    pub seeds: usize,
    pub clusters: usize,
    pub cluster_variables: usize,
    /// Non-frozen Plücker coordinates met, out of `plucker_total`.
    pub plucker_found: usize,
    pub plucker_total: usize,
    pub non_plucker: Vec<SparsePolynomial>,
    /// Labels of Plücker coordinates met with sign `-1`.
    pub negative: Vec<String>,
}

pub fn grassmannian_census(a: usize, b: usize, max_seeds: usize) -> Result<GrassmannianCensus, ModelError> {
    let ms = rectangles_seed(a, b)?;
    let g = GenericMatrix::new(a, b);
    let frozen: BTreeSet<Vec<usize>> = cyclic_intervals(a, b).into_iter().collect();
    let pluckers: Vec<(Vec<usize>, SparsePolynomial)> = subsets(b, a)
        .into_iter()
        .filter(|j| !frozen.contains(j))
        .map(|j| g.plucker(&j).map(|p| (j, p)))
        .collect::<Result<_, _>>()?;
    let summary = enumerate_pattern(&ms.bound_seed()?, max_seeds)?;
    let mut found = BTreeSet::new();
    let mut non_plucker = Vec::new();
    let mut negative = Vec::new();
    for v in summary.cluster_variable_values() {
        match pluckers.iter().find_map(|(j, p)| sign_relation(v, p).map(|s| (j, s))) {
            Some((j, s)) => {
                found.insert(j.clone());
                if s < 0 {
                    negative.push(subset_label(j));
                }
            }
            None => non_plucker.push(v.clone()),
        }
    }
    Ok(GrassmannianCensus {
        closed: summary.closed,
        seeds: summary.seed_count,
        clusters: summary.clusters.len(),
        cluster_variables: summary.cluster_variables.len(),
        plucker_found: found.len(),
        plucker_total: pluckers.len(),
        non_plucker,
        negative,
    })
}

/// The `b` cyclic intervals of length `a` in `1..=b`, each sorted.
pub fn cyclic_intervals(a: usize, b: usize) -> Vec<Vec<usize>> {
    (0..b)
        .map(|s| {
            let mut v: Vec<usize> = (0..a).map(|t| (s + t) % b + 1).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Verifies the frozen labels of the rectangles seed are the cyclic intervals
/// and that labels are pairwise distinct.
pub fn rectangles_label_check(a: usize, b: usize) -> Result<Report, ModelError> {
    let ms = rectangles_seed(a, b)?;
    let mut report = Report::new(format!("labels of rectangles:{a},{b}"));
    let distinct: BTreeSet<&String> = ms.labels.iter().collect();
    report.check("labels distinct", distinct.len() == ms.labels.len(), format!("{} labels", ms.labels.len()));
    let intervals: BTreeSet<String> = cyclic_intervals(a, b).iter().map(|v| subset_label(v)).collect();
    let frozen: BTreeSet<String> = ms.labels[ms.rank()..].iter().cloned().collect();
    report.check("frozen labels are the cyclic intervals", frozen == intervals, format!("{} frozen", frozen.len()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(a: usize, b: usize, i: usize, j: usize) -> Vec<usize> {
        rect_label(a, b, RectLabel { i, j }).unwrap()
    }

    #[test]
    fn labels_of_the_3_7_figure() {
        assert_eq!(lab(3, 7, 0, 0), vec![5, 6, 7]);
        assert_eq!(lab(3, 7, 1, 1), vec![4, 6, 7]);
        assert_eq!(lab(3, 7, 3, 4), vec![1, 2, 3]);
        assert_eq!(lab(3, 7, 2, 1), vec![4, 5, 7]);
        assert!(rect_label(3, 7, RectLabel { i: 4, j: 1 }).is_err());
    }

    #[test]
    fn seed_sizes() {
        let s = rectangles_seed(3, 7).unwrap();
        assert_eq!((s.rank(), s.frozen_count()), (6, 7));
        assert_eq!(rectangles_seed(2, 5).unwrap().rank(), 2);
        assert!(rectangles_seed(1, 4).is_err());
        let frozen: Vec<&str> = s.labels[6..].iter().map(|l| l.as_str()).collect();
        assert_eq!(frozen, ["P567", "P167", "P127", "P456", "P345", "P234", "P123"]);
    }

    #[test]
    fn initial_exchanges_are_polynomial() {
        for (a, b) in [(2, 5), (3, 6), (3, 7)] {
            let mut r = Report::new("x");
            let q = rectangles_seed(a, b).unwrap().exchange_check(&mut r);
            assert!(r.passed(), "{r}");
            assert!(q.iter().all(|q| q.is_some()));
        }
    }

    #[test]
    fn cyclic_shift_small() {
        let r = cyclic_shift_check(2, 4).unwrap();
        assert!(r.passed(), "{r}");
        // The exercise order lands on the shift by b - 1; its reverse on the shift by 1.
        for (a, b) in [(2, 5), (3, 6)] {
            let r = cyclic_shift_check(a, b).unwrap();
            let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
            assert_eq!(failed, ["result is the shift by 1"], "{r}");
            assert!(r.checks.iter().any(|c| c.detail == format!("labels J became J+{} mod {b}", b - 1)));
            assert!(r.notes.contains(&"the reversed order yields the shift by 1".to_string()), "{r}");
        }
    }

    #[test]
    fn muir_small() {
        assert!(muir_embedding_check(3, 6).unwrap().passed());
        let r = muir_embedding_check(2, 5).unwrap();
        assert!(r.passed() && !r.notes.is_empty());
    }

    #[test]
    fn transport_examples() {
        let t = mat_transport(2, 4, &[1, 2]).unwrap();
        assert_eq!((t.rows.clone(), t.cols.clone()), (vec![1, 2], vec![1, 2]));
        assert!(t.sign.is_some());
        let t = mat_transport(2, 4, &[3, 4]).unwrap();
        assert!(t.rows.is_empty() && t.cols.is_empty());
        assert_eq!(t.sign, Some(1));
        let t = mat_transport(2, 4, &[1, 3]).unwrap();
        assert_eq!((t.rows, t.cols), (vec![2], vec![1]));
        assert!(t.sign.is_some());
    }

    #[test]
    fn pentagon_census() {
        let c = grassmannian_census(2, 5, 1000).unwrap();
        assert!(c.closed);
        assert_eq!(c.cluster_variables, 5);
        assert_eq!(c.plucker_found, 5);
        assert!(c.non_plucker.is_empty());
        assert!(rectangles_label_check(3, 7).unwrap().passed());
    }
}
