use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{member, saturate, IdealBasis, IdealError, MonomialOrder};
use crate::arith::{ExactRational, LaurentPolynomial, Monomial, SparsePolynomial, VariableTable};
use crate::models::Report;
use crate::quiver::ExtendedExchangeMatrix;
use crate::seed::{FormalRelation, FormalTree, FormalVariableSet, Seed};

/// Largest number of formal variables accepted by the saturation crosscheck.
pub const MAX_CROSSCHECK_VARIABLES: usize = 7;

pub fn formal_ring(vars: &FormalVariableSet) -> Result<Arc<VariableTable>, IdealError> {
    Ok(VariableTable::new(vars.names.iter().cloned(), vars.frozen.iter().copied())?.shared())
}

fn relation_poly(r: &FormalRelation, ring: &Arc<VariableTable>) -> SparsePolynomial {
    let mono = |m: &[(usize, u32)]| {
        let mut e = vec![0u32; ring.len()];
        for &(i, x) in m {
            e[i] += x;
        }
        SparsePolynomial::monomial(ring, Monomial::from_exponents(e), ExactRational::one())
    };
    let zz = &SparsePolynomial::var(ring, r.z) * &SparsePolynomial::var(ring, r.z_prime);
    &(&zz - &mono(&r.m1)) - &mono(&r.m2)
}

/// The formal variables `z_T` of the tree traced by `walks` (0-based
/// directions, all starting at `seed`) and the exchange ideal `I_T` generated
/// by `z z' - M1 - M2` over its edges.
pub fn exchange_ideal_tree(
    seed: &Seed<LaurentPolynomial>,
    walks: &[Vec<usize>],
) -> Result<(FormalVariableSet, IdealBasis), IdealError> {
    let tree = FormalTree::from_walks(seed, walks)?;
    let vars = tree.variables().clone();
    let ring = formal_ring(&vars)?;
    let gens = tree.relations().iter().map(|r| relation_poly(r, &ring)).collect();
    Ok((vars, IdealBasis::new(&ring, gens, MonomialOrder::DegRevLex)?))
}

pub fn exchange_ideal(
    seed: &Seed<LaurentPolynomial>,
    walk: &[usize],
) -> Result<(FormalVariableSet, IdealBasis), IdealError> {
    exchange_ideal_tree(seed, &[walk.to_vec()])
}

/// `M_T`: the product of the formal variables standing for mutable cluster variables.
pub fn mutable_product(vars: &FormalVariableSet) -> Monomial {
    let e = vars.frozen.iter().map(|&f| u32::from(!f)).collect();
    Monomial::from_exponents(e)
}

/// `(z_T, I_T, J_T)` with `J_T = (I_T : M_T^∞)`.
pub fn saturated_exchange_ideal(
    seed: &Seed<LaurentPolynomial>,
    walks: &[Vec<usize>],
) -> Result<(FormalVariableSet, IdealBasis, IdealBasis), IdealError> {
    let (vars, i_t) = exchange_ideal_tree(seed, walks)?;
    let j_t = saturate(&i_t, &mutable_product(&vars))?;
    Ok((vars, i_t, j_t))
}

/// Substitutes the cluster variables represented by `z_T` into `f`.
pub fn vanishes_on(f: &SparsePolynomial, vars: &FormalVariableSet) -> Result<bool, IdealError> {
    if f.vars().names() != vars.names.as_slice() {
        return Err(IdealError::VariableMismatch);
    }
    Ok(LaurentPolynomial::substitute_poly(f, &vars.values)?.is_zero())
}

pub fn vanishes_on_pattern(
    f: &SparsePolynomial,
    seed: &Seed<LaurentPolynomial>,
    walk: &[usize],
) -> Result<bool, IdealError> {
    let tree = FormalTree::from_walks(seed, &[walk.to_vec()])?;
    vanishes_on(f, tree.variables())
}

/// For every test polynomial, membership in `J_T` against vanishing on the
/// pattern. Test polynomials must be written over [`formal_ring`] of the walk.
pub fn clusterradical_crosscheck(
    seed: &Seed<LaurentPolynomial>,
    walk: &[usize],
    tests: &[SparsePolynomial],
) -> Result<Report, IdealError> {
    let (vars, i_t, j_t) = saturated_exchange_ideal(seed, &[walk.to_vec()])?;
    if vars.len() > MAX_CROSSCHECK_VARIABLES {
        return Err(IdealError::TooLarge(format!(
            "walk produces {} formal variables, at most {MAX_CROSSCHECK_VARIABLES} are supported",
            vars.len()
        )));
    }
    let walk_text = walk.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
    let mut report = Report::new(format!("saturation crosscheck along walk [{walk_text}]"));
    report.note(format!("J_T = {}", j_t.groebner()?.render().join(", ")));
    for g in i_t.generators() {
        let ok = member(g, &j_t)? && vanishes_on(g, &vars)?;
        report.check(format!("generator {g}"), ok, "");
    }
    let mut agree = 0;
    let mut relations = 0;
    for f in tests {
        let f = f.rebind(j_t.vars())?;
        let in_j = member(&f, &j_t)?;
        let zero = vanishes_on(&f, &vars)?;
        if in_j == zero {
            agree += 1;
            relations += usize::from(zero);
        } else {
            report.check(
                format!("witness {f}"),
                false,
                format!("member of J_T = {in_j}, vanishes on the pattern = {zero}"),
            );
        }
    }
    report.check(
        "membership in J_T agrees with vanishing",
        agree == tests.len(),
        format!("{agree} of {} test polynomials, {relations} of them relations", tests.len()),
    );
    Ok(report)
}

/// A random polynomial with at most `terms` terms of degree at most
/// `max_degree` and small integer coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(
    vars: &Arc<VariableTable>,
    max_degree: u32,
    terms: usize,
    rng: &mut R,
) -> SparsePolynomial {
    let n = vars.len();
    let mut out = SparsePolynomial::zero(vars);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        let t = SparsePolynomial::monomial(vars, Monomial::from_exponents(e), c.into());
        out = &out + &t;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalVariableJson {
    pub name: String,
    pub frozen: bool,
    /// The cluster variable it stands for, in the initial variables.
    pub value: String,
}

/// Generators and relations of the subalgebra `A_T` for one walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    /// 1-based mutation directions.
    pub walk: Vec<usize>,
    pub variables: Vec<FormalVariableJson>,
    pub saturating_monomial: String,
    pub exchange_ideal: Vec<String>,
    /// Reduced degrevlex basis of the saturation.
    pub saturated_ideal: Vec<String>,
}

pub fn present(seed: &Seed<LaurentPolynomial>, walk: &[usize]) -> Result<Presentation, IdealError> {
    let (vars, i_t, j_t) = saturated_exchange_ideal(seed, &[walk.to_vec()])?;
    let variables = (0..vars.len())
        .map(|i| FormalVariableJson {
            name: vars.names[i].clone(),
            frozen: vars.frozen[i],
            value: vars.values[i].to_string(),
        })
        .collect();
    let m = mutable_product(&vars);
    Ok(Presentation {
        walk: walk.iter().map(|k| k + 1).collect(),
        variables,
        saturating_monomial: if m.is_one() { "1".into() } else { m.render(&vars.names) },
        exchange_ideal: i_t.generators().iter().map(|g| g.to_string()).collect(),
        saturated_ideal: j_t.groebner()?.render(),
    })
}

/// The B2 seed `[[0, 1], [-2, 0]]` with symmetrizer `(2, 1)`.
pub fn b2_seed() -> Result<Seed<LaurentPolynomial>, IdealError> {
    let b = ExtendedExchangeMatrix::from_rows_with(&[vec![0, 1], vec![-2, 0]], 2, vec![2, 1])?;
    Ok(Seed::initial(b, vec!["x1".into(), "x2".into()])?)
}

/// Walks of the B2 fixtures, 0-based.
pub const B2_WALKS: [&[usize]; 3] = [&[0, 1], &[0, 1, 0], &[0, 1, 0, 1]];

/// `tests_per_walk` polynomials of degree at most 3 over `ring`: half are
/// random, half are `f - NF(f)` modulo `j`, which lie in `j` and keep degree.
pub fn crosscheck_samples<R: Rng + ?Sized>(
    ring: &Arc<VariableTable>,
    j: &IdealBasis,
    tests_per_walk: usize,
    rng: &mut R,
) -> Result<Vec<SparsePolynomial>, IdealError> {
    let g = j.groebner()?;
    (0..tests_per_walk)
        .map(|i| {
            let f = random_polynomial(ring, 3, 5, rng);
            if i % 2 == 0 {
                Ok(f)
            } else {
                let f = f.rebind(j.vars())?;
                Ok(&f - &g.normal_form(&f)?)
            }
        })
        .collect()
}

/// The B2 presentation fixtures: the worked membership example, the
/// one-step star whose exchange ideal holds every relation, and the
/// saturation crosscheck on every fixture walk.
pub fn b2_presentation_report(tests_per_walk: usize, rng_seed: u64) -> Result<Report, IdealError> {
    use crate::arith::parse_polynomial;
    use rand::SeedableRng;
    let seed = b2_seed()?;
    let mut report = Report::new("B2 presentation");

    let (vars, i, j) = saturated_exchange_ideal(&seed, &[vec![0, 1, 0]])?;
    let f = parse_polynomial("z1*z4^2 - z3 - z5 - 2", i.vars())?;
    let z3f = &SparsePolynomial::var(i.vars(), 2) * &f;
    report.check("f = z1*z4^2 - z3 - z5 - 2 is not in I_T", !member(&f, &i)?, "walk [1,2,1]");
    report.check("z3*f is in I_T", member(&z3f, &i)?, "");
    report.check("f is in J_T", member(&f, &j)?, "");
    report.check("f vanishes on the pattern", vanishes_on(&f, &vars)?, "");

    let (vars, i) = exchange_ideal(&seed, &[0, 1, 0, 1])?;
    let g = parse_polynomial("z1*z4 - z2 - z6", i.vars())?;
    report.check("z1*z4 - z2 - z6 vanishes on the 6-cycle", vanishes_on(&g, &vars)?, "");

    // Both one-step mutations from the acyclic initial seed.
    let (vars, star, star_j) = saturated_exchange_ideal(&seed, &[vec![0], vec![1]])?;
    let ring = formal_ring(&vars)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
    let samples = crosscheck_samples(&ring, &star_j, tests_per_walk, &mut rng)?;
    let mut relations = 0;
    let mut missing = Vec::new();
    for s in &samples {
        let s = s.rebind(star.vars())?;
        if vanishes_on(&s, &vars)? {
            relations += 1;
            if !member(&s, &star)? {
                missing.push(s.to_string());
            }
        }
    }
    report.check(
        "on the one-step star every vanishing polynomial lies in I_T",
        missing.is_empty(),
        if missing.is_empty() { format!("{relations} relations") } else { missing.join("; ") },
    );

    for walk in B2_WALKS {
        let (vars, _, j) = saturated_exchange_ideal(&seed, &[walk.to_vec()])?;
        let ring = formal_ring(&vars)?;
        let tests = crosscheck_samples(&ring, &j, tests_per_walk, &mut rng)?;
        report.absorb(clusterradical_crosscheck(&seed, walk, &tests)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b2() -> Seed<LaurentPolynomial> {
        b2_seed().unwrap()
    }

    fn poly(i: &IdealBasis, s: &str) -> SparsePolynomial {
        parse_polynomial(s, i.vars()).unwrap()
    }

    #[test]
    fn b2_two_edges() {
        let (vars, i) = exchange_ideal(&b2(), &[0, 1]).unwrap();
        assert_eq!(vars.names, ["z1", "z2", "z3", "z4"]);
        let gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, [poly(&i, "z1*z3 - z2^2 - 1").to_string(), poly(&i, "z2*z4 - z3 - 1").to_string()]);
        assert!(member(&poly(&i, "z1*z3 - z2^2 - 1"), &i).unwrap());
    }

    #[test]
    fn b2_three_edges_saturation() {
        let s = b2();
        let (vars, i, j) = saturated_exchange_ideal(&s, &[vec![0, 1, 0]]).unwrap();
        assert_eq!(vars.len(), 5);
        assert_eq!(i.generators().len(), 3);
        let f = poly(&i, "z1*z4^2 - z3 - z5 - 2");
        assert!(!member(&f, &i).unwrap());
        assert!(member(&(&SparsePolynomial::var(i.vars(), 2) * &f), &i).unwrap());
        assert!(member(&f, &j).unwrap());
        assert!(vanishes_on(&f, &vars).unwrap());
    }

    #[test]
    fn b2_vanishing() {
        let s = b2();
        let (vars, i) = exchange_ideal(&s, &[0, 1, 0, 1]).unwrap();
        assert_eq!(vars.len(), 6);
        assert!(vanishes_on(&poly(&i, "z1*z4 - z2 - z6"), &vars).unwrap());
        assert!(vanishes_on(&poly(&i, "z1*z3 - z2^2 - 1"), &vars).unwrap());
        assert!(!vanishes_on(&poly(&i, "z1 - z2"), &vars).unwrap());
        assert!(!member(&poly(&i, "z1*z4 - z2 - z6"), &i).unwrap());
        let (_, empty) = exchange_ideal(&s, &[]).unwrap();
        assert!(empty.generators().is_empty());
    }

    #[test]
    fn crosscheck_on_b2_walks() {
        let s = b2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for walk in [vec![0, 1], vec![0, 1, 0], vec![0, 1, 0, 1]] {
            let (vars, _, j) = saturated_exchange_ideal(&s, &[walk.clone()]).unwrap();
            let ring = formal_ring(&vars).unwrap();
            let mut tests: Vec<SparsePolynomial> = (0..10).map(|_| random_polynomial(&ring, 3, 4, &mut rng)).collect();
            for g in j.generators() {
                let h = random_polynomial(&ring, 1, 2, &mut rng);
                tests.push(&h * g);
            }
            let r = clusterradical_crosscheck(&s, &walk, &tests).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn b2_report_small() {
        let r = b2_presentation_report(12, 1).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn presentation_json() {
        let p = present(&b2(), &[0, 1, 0]).unwrap();
        assert_eq!(p.walk, [1, 2, 1]);
        assert_eq!(p.variables.len(), 5);
        assert_eq!(p.variables[2].value, "(x2^2 + 1)/(x1)");
        assert_eq!(p.saturating_monomial, "z1*z2*z3*z4*z5");
        assert_eq!(p.exchange_ideal.len(), 3);
        assert!(p.saturated_ideal.len() > 3);
    }
}
