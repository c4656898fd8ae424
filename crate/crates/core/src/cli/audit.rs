//! The combined audit report: both chart identities swept over all pairs
//! up to a height, the hyperbolic witness pair, the rational elements of the
//! monomial groups, and seeded random group-law checks.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{render, CommandResult, Format, Status};
use crate::circle::{self, CircleElement, Verdict};
use crate::error::Result;
use crate::exact_arith::text::{format_projective, parse_point};
use crate::hyperbolic::{self, HDeltaAudit, HyperbolicElement};
use crate::kfermat::{self, form_value, CyclotomicVector, MonomialMatrix, MonomialRecord, Permutation};
use crate::search::search_solutions;
use crate::{Cyclotomic, CyclotomicField, Point2, ProjectiveRational, Rational};

pub const DEFAULT_SEED: u64 = 1;
/// Height bound for the identity sweeps.
pub const IDENTITY_HEIGHT: u64 = 50;
const WITNESS_CAP: usize = 5;
const CIRCLE_LAW_SAMPLES: usize = 2_000;
const HYPER_LAW_SAMPLES: usize = 2_000;
const MONOMIAL_LAW_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentitySweep {
    pub height: u64,
    pub points: usize,
    pub pairs: usize,
    pub equal: usize,
    pub mismatch: usize,
    /// Pairs where a side is `0/0`.
    pub excluded: usize,
    pub left_matches_solver: usize,
    pub right_matches_solver: usize,
    /// The first few mismatching pairs, in full.
    pub mismatch_witnesses: Vec<Value>,
}

fn sweep<A: Serialize>(
    height: u64,
    points: &[Point2<Rational>],
    audit: impl Fn(&Point2<Rational>, &Point2<Rational>) -> Result<A>,
    view: impl Fn(&A) -> (Verdict, bool, bool),
) -> Result<IdentitySweep> {
    let mut s = IdentitySweep {
        height,
        points: points.len(),
        pairs: 0,
        equal: 0,
        mismatch: 0,
        excluded: 0,
        left_matches_solver: 0,
        right_matches_solver: 0,
        mismatch_witnesses: Vec::new(),
    };
    for p0 in points {
        for p in points {
            let a = audit(p0, p)?;
            let (verdict, left, right) = view(&a);
            s.pairs += 1;
            s.left_matches_solver += usize::from(left);
            s.right_matches_solver += usize::from(right);
            match verdict {
                Verdict::Equal => s.equal += 1,
                Verdict::Excluded => s.excluded += 1,
                Verdict::Mismatch => {
                    s.mismatch += 1;
                    if s.mismatch_witnesses.len() < WITNESS_CAP {
                        s.mismatch_witnesses.push(super::to_json(&a)?);
                    }
                }
            }
        }
    }
    Ok(s)
}

/// The circle chart identity over every ordered pair of rational circle
/// points of height at most `h`.
pub fn circle_identity_sweep(h: u64) -> Result<IdentitySweep> {
    let points: Vec<_> = search_solutions(2, h)?
        .solutions
        .into_iter()
        .map(|s| Point2::new(s[0].clone(), s[1].clone()))
        .collect();
    sweep(h, &points, circle::exy_audit, |a| {
        (a.verdict, a.left_matches_solver, a.right_matches_solver)
    })
}

/// The hyperbolic identity over every ordered pair of rational points of
/// `x² − y² = 1` of height at most `h`.
pub fn hyperbolic_identity_sweep(h: u64) -> Result<IdentitySweep> {
    let points = hyperbolic::hyperbola_points(h);
    sweep(h, &points, hyperbolic::hdeltaxy_audit, |a| {
        (a.verdict, a.left_matches_solver, a.right_matches_solver)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupFinding {
    pub k: u32,
    pub n: usize,
    pub order: u64,
    pub permutation_subgroup_order: u64,
    pub rational_exponents: Vec<u32>,
    pub closed_under_product: bool,
    pub closed_under_inverse: bool,
    /// Set when the rational elements are more than the permutation matrices.
    pub flagged: bool,
    /// A rational element that is not a permutation matrix.
    pub witness: Option<MonomialRecord>,
}

fn subgroup_finding(k: u32, n: usize) -> Result<SubgroupFinding> {
    let r = kfermat::rational_elements(k, n, kfermat::DEFAULT_ENUMERATION_LIMIT)?;
    Ok(SubgroupFinding {
        k,
        n,
        order: r.order,
        permutation_subgroup_order: r.permutation_subgroup_order,
        rational_exponents: r.rational_exponents,
        closed_under_product: r.closed_under_product,
        closed_under_inverse: r.closed_under_inverse,
        flagged: !r.equals_permutation_subgroup,
        witness: r
            .elements
            .iter()
            .find(|m| m.exponents().iter().any(|&l| l != 0))
            .map(MonomialMatrix::record),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawSweep {
    pub law: String,
    pub samples: usize,
    pub failures: usize,
    /// The first sampled inputs, so the effect of the seed is visible.
    pub first_inputs: Vec<String>,
    pub failure_witnesses: Vec<String>,
}

impl LawSweep {
    fn new(law: &str) -> Self {
        LawSweep {
            law: law.to_string(),
            samples: 0,
            failures: 0,
            first_inputs: Vec::new(),
            failure_witnesses: Vec::new(),
        }
    }

    fn record(&mut self, input: impl FnOnce() -> String, holds: bool) {
        self.samples += 1;
        let keep = self.first_inputs.len() < 3;
        if holds && !keep {
            return;
        }
        let text = input();
        if !holds {
            self.failures += 1;
            if self.failure_witnesses.len() < WITNESS_CAP {
                self.failure_witnesses.push(text.clone());
            }
        }
        if keep {
            self.first_inputs.push(text);
        }
    }
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=30).into())
}

fn rand_param(rng: &mut ChaCha8Rng, specials: &[ProjectiveRational]) -> ProjectiveRational {
    if rng.gen_ratio(1, 8) {
        specials.choose(rng).expect("nonempty").clone()
    } else {
        ProjectiveRational::Finite(rand_rational(rng))
    }
}

fn circle_laws(rng: &mut ChaCha8Rng) -> Vec<LawSweep> {
    let q = |n: i64| ProjectiveRational::Finite(Rational::from_integer(n.into()));
    let specials = [q(0), q(1), q(-1), ProjectiveRational::Infinity];
    let mut product = LawSweep::new("circle: compose(d1, d2) matches the matrix product L(d1)L(d2)");
    let mut inverse = LawSweep::new("circle: L(d)L(-d) = 1");
    let m = |d: &ProjectiveRational| circle::circle_to_matrix(&CircleElement::rotation(d.clone()));
    for _ in 0..CIRCLE_LAW_SAMPLES {
        let (d1, d2) = (rand_param(rng, &specials), rand_param(rng, &specials));
        let holds = m(&circle::circle_compose(&d1, &d2)) == &m(&d1) * &m(&d2);
        product.record(|| format!("({}, {})", format_projective(&d1), format_projective(&d2)), holds);
        let holds = circle::circle_compose(&d1, &d1.neg()) == ProjectiveRational::zero();
        inverse.record(|| format_projective(&d1), holds);
    }
    vec![product, inverse]
}

fn hyper_laws(rng: &mut ChaCha8Rng) -> Vec<LawSweep> {
    let specials = [ProjectiveRational::zero(), ProjectiveRational::Infinity];
    let mut product = LawSweep::new("hyperbola: compose(d1, d2) matches the matrix product, |d| != 1");
    let mut sampled = 0;
    while sampled < HYPER_LAW_SAMPLES {
        let (d1, d2) = (rand_param(rng, &specials), rand_param(rng, &specials));
        let (Ok(e1), Ok(e2)) = (
            HyperbolicElement::rotation(d1.clone()),
            HyperbolicElement::rotation(d2.clone()),
        ) else {
            continue;
        };
        sampled += 1;
        let holds = hyperbolic::hyper_compose(&d1, &d2)
            .and_then(HyperbolicElement::rotation)
            .is_ok_and(|e| e.to_matrix() == &e1.to_matrix() * &e2.to_matrix());
        product.record(|| format!("({}, {})", format_projective(&d1), format_projective(&d2)), holds);
    }
    vec![product]
}

fn rand_element(rng: &mut ChaCha8Rng, k: u32, n: usize) -> MonomialMatrix {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    let exps = (0..n).map(|_| rng.gen_range(0..i64::from(k))).collect();
    MonomialMatrix::new(k, Permutation::new(images).expect("shuffled"), exps).expect("valid element")
}

fn rand_vector(rng: &mut ChaCha8Rng, field: &std::sync::Arc<CyclotomicField>, n: usize) -> CyclotomicVector<Rational> {
    let components = (0..n)
        .map(|_| Cyclotomic::from_coeffs(field, (0..field.degree()).map(|_| rand_rational(rng)).collect()))
        .collect();
    CyclotomicVector::new(field, components).expect("one field")
}

fn monomial_laws(rng: &mut ChaCha8Rng) -> Result<Vec<LawSweep>> {
    let mut assoc = LawSweep::new("monomial: (ab)c = a(bc) and a a^-1 = 1");
    let mut action = LawSweep::new("monomial: (ab)v = a(bv)");
    let mut form = LawSweep::new("monomial: sum of v_i^k is invariant");
    for (k, n) in [(3u32, 2usize), (3, 3), (4, 3), (5, 2), (6, 2)] {
        let field = CyclotomicField::new(k)?;
        for _ in 0..MONOMIAL_LAW_SAMPLES {
            let (a, b, c) = (rand_element(rng, k, n), rand_element(rng, k, n), rand_element(rng, k, n));
            let label = || format!("k={k} a={:?} b={:?} c={:?}", a.record(), b.record(), c.record());
            let ab = a.mul(&b)?;
            let holds = ab.mul(&c)? == a.mul(&b.mul(&c)?)? && a.mul(&a.inverse())?.is_identity();
            assoc.record(label, holds);
            let v = rand_vector(rng, &field, n);
            action.record(|| format!("k={k} v={}", serde_json::to_string(&v).unwrap_or_default()), ab.act(&v)? == a.act(&b.act(&v)?)?);
            form.record(|| format!("k={k} v={}", serde_json::to_string(&v).unwrap_or_default()), form_value(&a.act(&v)?, k) == form_value(&v, k));
        }
    }
    Ok(vec![assoc, action, form])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub seed: u64,
    pub circle_identity: IdentitySweep,
    pub hyperbolic_witness: HDeltaAudit,
    pub hyperbolic_identity: IdentitySweep,
    pub rational_subgroups: Vec<SubgroupFinding>,
    pub group_laws: Vec<LawSweep>,
    pub findings: Vec<String>,
}

fn build_report(seed: u64, diagnostics: &mut Vec<String>) -> Result<AuditReport> {
    let mut timed = |label: &str, t: Instant| diagnostics.push(format!("{label}: {:.3} s", t.elapsed().as_secs_f64()));

    let t = Instant::now();
    let circle_identity = circle_identity_sweep(IDENTITY_HEIGHT)?;
    timed("circle identity sweep", t);

    let t = Instant::now();
    let from = parse_point("5/4,3/4")?;
    let to = parse_point("5/3,4/3")?;
    let hyperbolic_witness = hyperbolic::hdeltaxy_audit(&from, &to)?;
    let hyperbolic_identity = hyperbolic_identity_sweep(IDENTITY_HEIGHT)?;
    timed("hyperbolic identity sweep", t);

    let t = Instant::now();
    let rational_subgroups = (3..=8).map(|k| subgroup_finding(k, 2)).collect::<Result<Vec<_>>>()?;
    timed("rational subgroups", t);

    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut group_laws = circle_laws(&mut rng);
    group_laws.extend(hyper_laws(&mut rng));
    group_laws.extend(monomial_laws(&mut rng)?);
    timed("group-law sweeps", t);

    let side = |s: &circle::Side| s.value().map_or_else(|| "0/0".to_string(), format_projective);
    let flagged: Vec<String> = rational_subgroups
        .iter()
        .filter(|f| f.flagged)
        .map(|f| format!("k={} (order {} vs n! = {})", f.k, f.order, f.permutation_subgroup_order))
        .collect();
    let findings = vec![
        format!(
            "circle chart identity at height <= {}: {} equal, {} mismatches, {} excluded of {} pairs",
            circle_identity.height, circle_identity.equal, circle_identity.mismatch, circle_identity.excluded, circle_identity.pairs
        ),
        format!(
            "hyperbolic identity on ((5/4,3/4),(5/3,4/3)): right side {}, left side {}, solver {}",
            side(&hyperbolic_witness.right),
            side(&hyperbolic_witness.left),
            format_projective(&hyperbolic_witness.solver_delta)
        ),
        format!(
            "hyperbolic identity at height <= {}: right side matches the solver on {} of {} pairs, left side on {}",
            hyperbolic_identity.height,
            hyperbolic_identity.right_matches_solver,
            hyperbolic_identity.pairs,
            hyperbolic_identity.left_matches_solver
        ),
        format!(
            "rational elements of O_k(2) exceed the permutation matrices for {}",
            if flagged.is_empty() { "no k".to_string() } else { flagged.join(", ") }
        ),
        format!(
            "group laws: {} samples, {} failures",
            group_laws.iter().map(|l| l.samples).sum::<usize>(),
            group_laws.iter().map(|l| l.failures).sum::<usize>()
        ),
    ];
    Ok(AuditReport {
        seed,
        circle_identity,
        hyperbolic_witness,
        hyperbolic_identity,
        rational_subgroups,
        group_laws,
        findings,
    })
}

/// Runs every audit with the given seed. The payload depends only on the
/// seed; timings are reported in `diagnostics`.
pub fn run_audit_suite(seed: u64) -> CommandResult {
    let mut diagnostics = Vec::new();
    let report = match build_report(seed, &mut diagnostics) {
        Ok(r) => r,
        Err(e) => return CommandResult::failure(&e),
    };
    let failures: usize = report.group_laws.iter().map(|l| l.failures).sum();
    let payload = match super::to_json(&report) {
        Ok(p) => p,
        Err(e) => return CommandResult::failure(&e),
    };
    let status = if failures == 0 {
        Status::Success
    } else {
        diagnostics.push(format!("{failures} group-law failures"));
        Status::VerificationFailed
    };
    let output = render::render(&payload, None, Format::Json).unwrap_or_default();
    CommandResult {
        status,
        payload,
        diagnostics,
        output,
    }
}
