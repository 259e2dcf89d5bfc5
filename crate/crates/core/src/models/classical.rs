use std::collections::{BTreeMap, HashSet};

use super::minors::{minor_of, GenericMatrix, PolyMatrix};
use super::rectangles::rectangles_seed_over;
use super::{subset_label, ModelError, ModelSeed, Report};
use crate::arith::SparsePolynomial;
use crate::quiver::ExtendedExchangeMatrix;
use crate::seed::{enumerate_pattern, DEFAULT_SEED_BUDGET};

/// Largest `n` accepted by the type B and C identity suites.
pub const MAX_SUITE_RANK: usize = 6;

type Poly = SparsePolynomial;

struct Family {
    name: &'static str,
    instances: usize,
    failures: Vec<String>,
}

impl Family {
    fn new(name: &'static str) -> Self {
        Family { name, instances: 0, failures: Vec::new() }
    }

    fn test(&mut self, lhs: Poly, rhs: Poly, at: impl FnOnce() -> String) {
        self.instances += 1;
        if lhs != rhs {
            self.failures.push(at());
        }
    }

    fn report(self, report: &mut Report) {
        let detail = if self.failures.is_empty() {
            format!("{} instances", self.instances)
        } else {
            format!("fails at {}", self.failures.join(", "))
        };
        report.check(self.name, self.failures.is_empty(), detail);
    }
}

/// The six families shared by both suites. `p(a, b)` and `bar(a, b)` are the
/// two kinds of functions, `w4(a)` and `w5(b)` the coefficients of the
/// fourth and fifth families, and `sixth(a, b)` the two sides of the last one.
fn run_suite(
    report: &mut Report,
    n: usize,
    p: &dyn Fn(usize, usize) -> Poly,
    bar: &dyn Fn(usize, usize) -> Poly,
    w4: &dyn Fn(usize) -> Poly,
    w5: &dyn Fn(usize) -> Poly,
    sixth: &dyn Fn(usize, usize) -> (Poly, Poly),
) {
    let top = n + 1;
    let mut f1 = Family::new("P_ac P_bd = P_ab P_cd + P_ad P_bc");
    let mut f2 = Family::new("P_a~c P_bd = P_a~b P_cd + P_a~d P_bc");
    let mut f3 = Family::new("P_a~c P_b~d = P_ab P_cd + P_a~d P_b~c");
    for a in 1..=top {
        for b in a + 1..=top {
            for c in b + 1..=top {
                for d in c + 1..=top {
                    let at = || format!("({a},{b},{c},{d})");
                    f1.test(&p(a, c) * &p(b, d), &(&p(a, b) * &p(c, d)) + &(&p(a, d) * &p(b, c)), at);
                    f2.test(&bar(a, c) * &p(b, d), &(&bar(a, b) * &p(c, d)) + &(&bar(a, d) * &p(b, c)), at);
                    f3.test(&bar(a, c) * &bar(b, d), &(&p(a, b) * &p(c, d)) + &(&bar(a, d) * &bar(b, c)), at);
                }
            }
        }
    }
    let mut f4 = Family::new("P_ac P_a~b = P_ab P_a~c + w(a) P_bc");
    let mut f5 = Family::new("P_a~b P_b~c = P_ab P_bc + w(b) P_a~c");
    for a in 1..=top {
        for b in a + 1..=top {
            for c in b + 1..=top {
                let at = || format!("({a},{b},{c})");
                f4.test(&p(a, c) * &bar(a, b), &(&p(a, b) * &bar(a, c)) + &(&w4(a) * &p(b, c)), at);
                f5.test(&bar(a, b) * &bar(b, c), &(&p(a, b) * &p(b, c)) + &(&w5(b) * &bar(a, c)), at);
            }
        }
    }
    let mut f6 = Family::new("sixth family");
    for a in 1..=top {
        for b in a + 1..=top {
            let (l, r) = sixth(a, b);
            f6.test(l, r, || format!("({a},{b})"));
        }
    }
    for f in [f1, f2, f3, f4, f5, f6] {
        f.report(report);
    }
}

fn check_suite_rank(n: usize) -> Result<(), ModelError> {
    if !(2..=MAX_SUITE_RANK).contains(&n) {
        return Err(ModelError::Argument(format!("identity suites need 2 <= n <= {MAX_SUITE_RANK}, got {n}")));
    }
    Ok(())
}

/// The type B identities in the Plücker ring of a generic `2 × (n+2)` matrix,
/// with `P_a~b = P_{a,n+2} P_{b,n+2} - P_ab`.
pub fn type_b_identity_suite(n: usize) -> Result<Report, ModelError> {
    check_suite_rank(n)?;
    let g = GenericMatrix::new(2, n + 2);
    let mut cache: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    for a in 1..=n + 2 {
        for b in a + 1..=n + 2 {
            cache.insert((a, b), g.plucker(&[a, b])?);
        }
    }
    let p = |a: usize, b: usize| cache[&(a, b)].clone();
    let last = |a: usize| p(a, n + 2);
    let bar = |a: usize, b: usize| &(&last(a) * &last(b)) - &p(a, b);
    let w = |a: usize| last(a).pow(2);
    let sixth = |a: usize, b: usize| (&last(a) * &last(b), &p(a, b) + &bar(a, b));
    let mut report = Report::new(format!("type B identities, n={n}"));
    run_suite(&mut report, n, &p, &bar, &w, &w, &sixth);
    Ok(report)
}

/// The type C identities over a generic `2 × (n+1)` matrix with
/// `P_ab = z1a z2b - z1b z2a` and `P_a~b = z1a z1b + z2a z2b`.
pub fn type_c_identity_suite(n: usize) -> Result<Report, ModelError> {
    check_suite_rank(n)?;
    let g = GenericMatrix::new(2, n + 1);
    let z = |i: usize, j: usize| g.entry(i, j);
    let p = |a: usize, b: usize| &(z(1, a) * z(2, b)) - &(z(1, b) * z(2, a));
    let bar = |a: usize, b: usize| &(z(1, a) * z(1, b)) + &(z(2, a) * z(2, b));
    let w = |a: usize| bar(a, a);
    let sixth = |a: usize, b: usize| (&bar(a, a) * &bar(b, b), &p(a, b).pow(2) + &bar(a, b).pow(2));
    let mut report = Report::new(format!("type C identities, n={n}"));
    run_suite(&mut report, n, &p, &bar, &w, &w, &sixth);
    Ok(report)
}

fn check_parts(n: usize, parts: &[usize]) -> Result<(), ModelError> {
    if n == 0 || parts.is_empty() || parts.iter().any(|&p| p == 0) || parts.iter().sum::<usize>() != n + 1 {
        return Err(ModelError::Argument(format!("{parts:?} is not a composition of {}", n + 1)));
    }
    Ok(())
}

fn entries_matrix(n: usize) -> GenericMatrix {
    GenericMatrix::with_names(2, n + 1, |i, j| format!("{}{j}", if i == 1 { 'a' } else { 'b' })).expect("distinct names")
}

/// One cluster structure on the polynomial ring of `2 × (n+1)` matrices with
/// entries `a_i` (top row) and `b_i` (bottom row), given a composition of
/// `n + 1` into consecutive column blocks.
///
/// Each block of width `s` carries the structure inherited from the
/// Grassmannian of 2-planes in `s + 2` space, after bordering the block with
/// `[1,0]` on the left and `[0,1]` on the right and dropping the frozen
/// variable that becomes 1.
pub fn two_by_n_seed(n: usize, parts: &[usize]) -> Result<ModelSeed, ModelError> {
    check_parts(n, parts)?;
    let g = entries_matrix(n);
    let one = Poly::one(g.vars());
    let zero = Poly::zero(g.vars());
    struct Piece {
        seed: ModelSeed,
        keep: Vec<usize>,
    }
    let mut pieces = Vec::new();
    let mut start = 1;
    for &s in parts {
        let mut top = vec![one.clone()];
        let mut bottom = vec![zero.clone()];
        for c in start..start + s {
            top.push(g.entry(1, c).clone());
            bottom.push(g.entry(2, c).clone());
        }
        top.push(zero.clone());
        bottom.push(one.clone());
        let bordered: PolyMatrix = vec![top, bottom];
        let mut seed = rectangles_seed_over(2, s + 2, &bordered)?;
        // Relabel by original columns: bordered index t+1 is column start+t-1.
        let col = |t: usize| start + t - 2;
        for l in seed.labels.iter_mut() {
            let set = parse_pair(l);
            *l = match (set[0], set[1]) {
                (1, y) if y == s + 2 => "one".into(),
                (1, y) => format!("b{}", col(y)),
                (x, y) if y == s + 2 => format!("a{}", col(x)),
                (x, y) => subset_label(&[col(x), col(y)]),
            };
        }
        let keep = (0..seed.labels.len()).filter(|&i| !seed.bindings[i].is_one()).collect();
        pieces.push(Piece { seed, keep });
        start += s;
    }

    let n_tot: usize = pieces.iter().map(|p| p.seed.rank()).sum();
    let mut mutable_rows = Vec::new();
    let mut frozen_rows = Vec::new();
    let mut col_offset = 0;
    for (pi, p) in pieces.iter().enumerate() {
        for &r in &p.keep {
            if r < p.seed.rank() {
                mutable_rows.push((pi, r, col_offset));
            } else {
                frozen_rows.push((pi, r, col_offset));
            }
        }
        col_offset += p.seed.rank();
    }
    let rows: Vec<(usize, usize, usize)> = mutable_rows.into_iter().chain(frozen_rows).collect();
    let m_tot = rows.len();
    let mut entries = vec![0i64; m_tot * n_tot];
    let mut labels = Vec::new();
    let mut bindings = Vec::new();
    let mut layout = Vec::new();
    for (gi, &(pi, r, off)) in rows.iter().enumerate() {
        let s = &pieces[pi].seed;
        for c in 0..s.rank() {
            entries[gi * n_tot + off + c] = s.matrix.get(r, c);
        }
        labels.push(s.labels[r].clone());
        bindings.push(s.bindings[r].clone());
        let (x, y) = s.layout[r];
        layout.push((x + 100.0 * pi as f64, y));
    }
    let matrix = ExtendedExchangeMatrix::new(n_tot, m_tot, entries, vec![1; n_tot])?;
    let name = format!("two_by_n:{n}:{}", parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+"));
    Ok(ModelSeed { name, matrix, labels, bindings, layout })
}

fn parse_pair(label: &str) -> [usize; 2] {
    let digits = label.trim_start_matches('P');
    if let Some((x, y)) = digits.split_once('_') {
        [x.parse().expect("index"), y.parse().expect("index")]
    } else {
        let b = digits.as_bytes();
        [(b[0] - b'0') as usize, digits[1..].parse().expect("index")]
    }
}

/// Verifies one of the structures of [`two_by_n_seed`]: the four families of
/// exchange relations inside each block, the rank and frozen counts, the
/// initial exchanges, and the full list of cluster and frozen variables
/// obtained by enumerating the bound pattern.
pub fn two_by_n_structure_check(n: usize, parts: &[usize]) -> Result<Report, ModelError> {
    check_parts(n, parts)?;
    let g = entries_matrix(n);
    let a = |i: usize| g.entry(1, i).clone();
    let b = |i: usize| g.entry(2, i).clone();
    let p = |i: usize, j: usize| &(&a(i) * &b(j)) - &(&a(j) * &b(i));
    let mut report = Report::new(format!("2x{} matrices, blocks {parts:?}", n + 1));

    let mut blocks = Vec::new();
    let mut start = 1;
    for &s in parts {
        blocks.push((start..start + s).collect::<Vec<usize>>());
        start += s;
    }
    let mut f1 = Family::new("a_i b_j = P_ij + a_j b_i");
    let mut f2 = Family::new("a_j P_ik = a_i P_jk + a_k P_ij");
    let mut f3 = Family::new("b_j P_ik = b_i P_jk + b_k P_ij");
    let mut f4 = Family::new("P_ik P_jl = P_ij P_kl + P_il P_jk");
    for blk in &blocks {
        for (x, &i) in blk.iter().enumerate() {
            for (y, &j) in blk.iter().enumerate().skip(x + 1) {
                f1.test(&a(i) * &b(j), &p(i, j) + &(&a(j) * &b(i)), || format!("({i},{j})"));
                for (z, &k) in blk.iter().enumerate().skip(y + 1) {
                    let at = || format!("({i},{j},{k})");
                    f2.test(&a(j) * &p(i, k), &(&a(i) * &p(j, k)) + &(&a(k) * &p(i, j)), at);
                    f3.test(&b(j) * &p(i, k), &(&b(i) * &p(j, k)) + &(&b(k) * &p(i, j)), at);
                    for &l in blk.iter().skip(z + 1) {
                        f4.test(&p(i, k) * &p(j, l), &(&p(i, j) * &p(k, l)) + &(&p(i, l) * &p(j, k)), || {
                            format!("({i},{j},{k},{l})")
                        });
                    }
                }
            }
        }
    }
    for f in [f1, f2, f3, f4] {
        f.report(&mut report);
    }

    let ms = two_by_n_seed(n, parts)?;
    let k = parts.len();
    report.check("rank", ms.rank() == n + 1 - k, format!("{} (expected {})", ms.rank(), n + 1 - k));
    report.check(
        "frozen variables",
        ms.frozen_count() == n + k + 1,
        format!("{} (expected {})", ms.frozen_count(), n + k + 1),
    );
    ms.exchange_check(&mut report);

    let summary = enumerate_pattern(&ms.bound_seed()?, DEFAULT_SEED_BUDGET)?;
    let mut expected: HashSet<Poly> = (1..=n + 1).flat_map(|i| [a(i), b(i)]).collect();
    for blk in &blocks {
        for (x, &i) in blk.iter().enumerate() {
            for &j in blk.iter().skip(x + 1) {
                expected.insert(p(i, j));
            }
        }
    }
    let got: HashSet<Poly> = summary.variables.iter().cloned().collect();
    report.check("pattern closes", summary.closed, format!("{} seeds", summary.seed_count));
    report.check(
        "variables are the entries and the block minors",
        got == expected,
        format!("{} variables, {} expected", got.len(), expected.len()),
    );

    if k == 1 {
        // Bordered 2 x (n+3) matrix: a_i = P_{i+1,n+3}, b_i = P_{1,i+1}, P_{1,n+3} = 1.
        let one = Poly::one(g.vars());
        let zero = Poly::zero(g.vars());
        let mut top = vec![one.clone()];
        let mut bottom = vec![zero.clone()];
        for i in 1..=n + 1 {
            top.push(a(i));
            bottom.push(b(i));
        }
        top.push(zero);
        bottom.push(one);
        let bordered: PolyMatrix = vec![top, bottom];
        let pl = |x: usize, y: usize| minor_of(&bordered, &[1, 2], &[x, y]);
        let mut ok = pl(1, n + 3)?.is_one();
        for i in 1..=n + 1 {
            ok &= pl(i + 1, n + 3)? == a(i) && pl(1, i + 1)? == b(i);
            for j in i + 1..=n + 1 {
                ok &= pl(i + 1, j + 1)? == p(i, j);
            }
        }
        report.check("bordered matrix identifies the ring with a Plücker quotient", ok, "");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_small() {
        for n in 2..=3 {
            let r = type_b_identity_suite(n).unwrap();
            assert!(r.passed(), "{r}");
            let r = type_c_identity_suite(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(type_b_identity_suite(7).is_err());
    }

    #[test]
    fn brahmagupta_instance() {
        let r = type_c_identity_suite(2).unwrap();
        assert!(r.checks.iter().any(|c| c.name == "sixth family" && c.passed && c.detail == "3 instances"));
    }

    #[test]
    fn rank_one_case() {
        let ms = two_by_n_seed(1, &[2]).unwrap();
        assert_eq!((ms.rank(), ms.frozen_count()), (1, 3));
        let r = two_by_n_structure_check(1, &[2]).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn split_structures() {
        let ms = two_by_n_seed(3, &[2, 2]).unwrap();
        assert_eq!((ms.rank(), ms.frozen_count()), (2, 6));
        for parts in [vec![4], vec![2, 2], vec![1, 3], vec![1, 1, 2]] {
            let r = two_by_n_structure_check(3, &parts).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(two_by_n_seed(3, &[2, 1]).is_err());
    }
}
