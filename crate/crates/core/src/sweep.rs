//! Seeded randomized suites checking the structural statements end to end.
//!
//! Each suite draws from its own ChaCha8 stream derived from the sweep seed,
//! so a suite's cases do not depend on which other suites run.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{diagonalize, make_diagonal_action, TameEndomorphism, WeightSystem};
use crate::algebra::field::gcd;
use crate::algebra::{Matrix, PrimeField, RingEndomorphism, Series, UniPoly};
use crate::error::{Error, Result};
use crate::fiber::{cosection_check, has_integral_point, section_through_fixed_point, special_fiber_presentation, Factor, StratifiedModel};
use crate::invariant::{quotient_presentation_to_degree, DEFAULT_RELATION_DEGREE};
use crate::motivic::{check_serre_theorem, check_volume_congruence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Serre,
    Volume,
    Diagonalize,
    Cosection,
    Section,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Serre, Suite::Volume, Suite::Diagonalize, Suite::Cosection, Suite::Section];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Serre => "serre",
            Suite::Volume => "volume",
            Suite::Diagonalize => "diagonalize",
            Suite::Cosection => "cosection",
            Suite::Section => "section",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

/// The generator for `suite` under the sweep seed `seed`.
pub fn suite_rng(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub passed: usize,
    /// The first few failing cases, for reproduction.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

const MAX_REPORTED_FAILURES: usize = 5;

/// A unit of `Z/r` (0 when `r = 1`).
fn random_unit(rng: &mut impl Rng, r: u64) -> u64 {
    loop {
        let l = rng.random_range(0..r);
        if gcd(l, r) == 1 {
            return l;
        }
    }
}

/// Factors with total coordinate count at most `max_coords`, using every kind.
fn random_factors(rng: &mut impl Rng, max_coords: usize) -> Vec<Factor> {
    let mut factors = Vec::new();
    let mut used = 0;
    for _ in 0..rng.random_range(1..=3) {
        let f = match rng.random_range(0..3) {
            0 => Factor::Affine(rng.random_range(0..=3)),
            1 => Factor::Torus(rng.random_range(1..=2)),
            _ => Factor::Projective(rng.random_range(1..=3)),
        };
        if used + f.coordinate_count() > max_coords {
            break;
        }
        used += f.coordinate_count();
        factors.push(f);
    }
    if factors.is_empty() {
        factors.push(Factor::Affine(1));
    }
    factors
}

fn random_model_with_order(rng: &mut impl Rng, r: u64) -> StratifiedModel {
    let factors = random_factors(rng, 8);
    let mut weights = vec![random_unit(rng, r)];
    for f in &factors {
        // half of the tori stay unobstructed
        let frozen = matches!(f, Factor::Torus(_)) && rng.random_bool(0.5);
        for _ in 0..f.coordinate_count() {
            weights.push(if frozen { 0 } else { rng.random_range(0..r) });
        }
    }
    let w = WeightSystem::new(r, weights).expect("weights reduced mod r");
    StratifiedModel::new(factors, w).expect("galois by construction")
}

/// A model with `r <= 12` and at most 8 coordinates.
pub fn random_model(rng: &mut impl Rng) -> StratifiedModel {
    let r = rng.random_range(1..=12);
    random_model_with_order(rng, r)
}

/// A model whose group order is `q` or `q^2` for `q` in {2, 3, 5, 7}; returns `(model, q)`.
pub fn random_q_group_model(rng: &mut impl Rng) -> (StratifiedModel, u64) {
    let q = *[2u64, 3, 5, 7].choose(rng).unwrap();
    let r = if rng.random_bool(0.5) { q } else { q * q };
    (random_model_with_order(rng, r), q)
}

/// A Galois weight system with `r <= max_r` and `1..=max_n` coordinates besides `t`.
pub fn random_weight_system(rng: &mut impl Rng, max_r: u64, max_n: usize) -> WeightSystem {
    let r = rng.random_range(1..=max_r);
    let n = rng.random_range(1..=max_n);
    let mut weights = vec![random_unit(rng, r)];
    weights.extend((0..n).map(|_| rng.random_range(0..r)));
    WeightSystem::galois(r, weights).expect("galois by construction")
}

const DIAGONALIZE_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// A diagonal action conjugated by a random substitution `phi`.
#[derive(Debug, Clone)]
pub struct ConjugatedAction {
    pub action: TameEndomorphism,
    pub weights: WeightSystem,
    /// Whether `phi` fixes `t`, so that `t` is itself an eigenparameter.
    pub fixes_t: bool,
}

fn random_series(rng: &mut impl Rng, ring: &std::sync::Arc<crate::algebra::TruncatedLocalRing>, linear: &[u64]) -> Series {
    let n = ring.nvars();
    let p = ring.field().modulus();
    let mut s = Series::linear(ring, linear);
    for _ in 0..rng.random_range(0..=4) {
        let mut e = vec![0u32; n];
        for _ in 0..rng.random_range(2..=3) {
            e[rng.random_range(0..n)] += 1;
        }
        let c = rng.random_range(1..p);
        s = &s + &Series::monomial(ring, crate::algebra::Monomial(e), c);
    }
    s
}

/// `alpha = phi^{-1} D phi` with `D` diagonal of order `r | p - 1`,
/// `n <= 4` coordinates besides `t` and truncation `N <= 6`.
pub fn random_conjugated_action(rng: &mut impl Rng) -> ConjugatedAction {
    let p = *DIAGONALIZE_PRIMES.choose(rng).unwrap();
    let divisors: Vec<u64> = (2..p).filter(|d| (p - 1).is_multiple_of(*d)).collect();
    let r = *divisors.choose(rng).unwrap();
    let n = rng.random_range(1..=4);
    let trunc = rng.random_range(2..=6);
    let weights = WeightSystem::new(r, (0..=n).map(|_| rng.random_range(0..r)).collect()).unwrap();
    let d = make_diagonal_action(&weights, p, trunc).expect("r divides p - 1");
    let ring = d.ring().clone();
    let field = ring.field();
    let fixes_t = rng.random_bool(0.5);
    let phi = loop {
        let rows: Vec<Vec<u64>> = (0..=n)
            .map(|i| {
                if i == 0 && fixes_t {
                    let mut e = vec![0; n + 1];
                    e[0] = 1;
                    e
                } else {
                    (0..=n).map(|_| rng.random_range(0..p)).collect()
                }
            })
            .collect();
        if Matrix::from_rows(field, &rows).inverse().is_none() {
            continue;
        }
        let images: Vec<Series> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if i == 0 && fixes_t {
                    Series::var(&ring, 0)
                } else {
                    random_series(rng, &ring, row)
                }
            })
            .collect();
        break RingEndomorphism::new(&ring, images).expect("no constant terms");
    };
    let phi_inv = phi.inverse().expect("invertible linear part");
    let alpha = phi_inv
        .compose(&d.endo().compose(&phi).expect("same ring"))
        .expect("same ring");
    ConjugatedAction {
        action: TameEndomorphism::new(alpha, r).unwrap(),
        weights,
        fixes_t,
    }
}

/// Runs `diagonalize` on a conjugated action and checks weights, eigen
/// equations, independence and (when applicable) the pinned uniformizer.
pub fn check_diagonalize_round_trip(case: &ConjugatedAction) -> std::result::Result<(), String> {
    let a = &case.action;
    let ring = a.ring();
    let field = a.field();
    let t = Series::var(ring, 0);
    let pinned = if case.fixes_t {
        vec![(t.clone(), case.weights.ell0())]
    } else {
        vec![]
    };
    let res = diagonalize(a, &pinned).map_err(|e| format!("diagonalize failed: {e}"))?;
    let mut got = res.weights.weights().to_vec();
    let mut want = case.weights.weights().to_vec();
    got.sort_unstable();
    want.sort_unstable();
    if got != want {
        return Err(format!("weights {got:?}, expected {want:?}"));
    }
    let mut sub = a.endo().substitution();
    for (y, &w) in res.parameters.iter().zip(res.weights.weights()) {
        let image = sub.apply(y).map_err(|e| e.to_string())?;
        if image != y.scale(field.pow(res.mu, w)) {
            return Err(format!("{y} is not an eigenvector of weight {w}"));
        }
    }
    let linear: Vec<Vec<u64>> = res.parameters.iter().map(Series::linear_part).collect();
    if crate::algebra::linalg::rank_of(field, &linear) != ring.nvars() {
        return Err("parameters are not a coordinate system".into());
    }
    if case.fixes_t && res.parameters[0] != t {
        return Err(format!("pinned t came back as {}", res.parameters[0]));
    }
    Ok(())
}

/// The wild example: `x -> x, y -> x + y` over `F_2` with `r = 2`.
pub fn wild_example() -> TameEndomorphism {
    let field = PrimeField::new(2).unwrap();
    let ring = crate::algebra::TruncatedLocalRing::new(field, vec!["x".into(), "y".into()], 4).unwrap();
    let x = Series::var(&ring, 0);
    let y = Series::var(&ring, 1);
    let endo = RingEndomorphism::new(&ring, vec![x.clone(), &x + &y]).unwrap();
    TameEndomorphism::new(endo, 2).unwrap()
}

fn random_poly(rng: &mut impl Rng, field: PrimeField) -> UniPoly {
    let len = rng.random_range(0..=4);
    UniPoly::new(field, (0..len).map(|_| rng.random_range(0..field.modulus())).collect())
}

/// Substitutes `substitutions` random tuples into the special-fiber
/// presentation of `w` over `F_p`.
pub fn check_cosections(
    rng: &mut impl Rng,
    w: &WeightSystem,
    field: PrimeField,
    substitutions: usize,
) -> std::result::Result<(), String> {
    let pres = special_fiber_presentation(w);
    let m = pres.variables.len().saturating_sub(1);
    for _ in 0..substitutions {
        let a: Vec<UniPoly> = (0..m).map(|_| random_poly(rng, field)).collect();
        match cosection_check(&pres, field, &a) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{w:?}: substitution {a:?} survives")),
            Err(e) => return Err(format!("{w:?}: {e}")),
        }
    }
    Ok(())
}

fn check_section(rng: &mut impl Rng, w: &WeightSystem) -> std::result::Result<(), String> {
    let field = PrimeField::new(*[2u64, 3, 5, 7, 11].choose(rng).unwrap()).unwrap();
    let pres = quotient_presentation_to_degree(w, DEFAULT_RELATION_DEGREE).map_err(|e| e.to_string())?;
    let zeros = w.coordinate_weights().iter().filter(|&&l| l == 0).count();
    let point: Vec<u64> = (0..zeros).map(|_| rng.random_range(0..field.modulus())).collect();
    section_through_fixed_point(&pres, field, &point)
        .map(|_| ())
        .map_err(|e| format!("{w:?} at {point:?}: {e}"))
}

fn run_suite(seed: u64, suite: Suite, trials: usize) -> SuiteReport {
    let mut rng = suite_rng(seed, suite);
    let mut passed = 0;
    let mut failures = Vec::new();
    let mut record = |outcome: std::result::Result<(), String>| match outcome {
        Ok(()) => passed += 1,
        Err(msg) => {
            if failures.len() < MAX_REPORTED_FAILURES {
                failures.push(msg);
            }
        }
    };
    match suite {
        Suite::Serre => {
            for _ in 0..trials {
                let m = random_model(&mut rng);
                let rep = check_serre_theorem(&m);
                let obstructed_ok = has_integral_point(&m) || rep.serre_lhs.0 == 0;
                record(if rep.pass && obstructed_ok {
                    Ok(())
                } else {
                    Err(format!("{} {:?}: {rep:?}", m.description(), m.weights()))
                });
            }
        }
        Suite::Volume => {
            for _ in 0..trials {
                let (m, q) = random_q_group_model(&mut rng);
                record(match check_volume_congruence(&m, q) {
                    Ok(rep) if rep.pass && (rep.has_integral_point || rep.s_x == 0) => Ok(()),
                    Ok(rep) => Err(format!("{} {:?}: {rep:?}", m.description(), m.weights())),
                    Err(e) => Err(e.to_string()),
                });
            }
        }
        Suite::Diagonalize => {
            record(match diagonalize(&wild_example(), &[]) {
                Err(Error::TameViolation { .. }) => Ok(()),
                other => Err(format!("wild example: {other:?}")),
            });
            for _ in 1..trials {
                let case = random_conjugated_action(&mut rng);
                record(check_diagonalize_round_trip(&case));
            }
        }
        Suite::Cosection => {
            for _ in 0..trials {
                let w = random_weight_system(&mut rng, 8, 3);
                let field = PrimeField::new(*[2u64, 3, 5, 7, 11, 13].choose(&mut rng).unwrap()).unwrap();
                record(check_cosections(&mut rng, &w, field, 20));
            }
        }
        Suite::Section => {
            for _ in 0..trials {
                let w = random_weight_system(&mut rng, 8, 3);
                record(check_section(&mut rng, &w));
            }
        }
    }
    SuiteReport {
        suite,
        trials,
        passed,
        failures,
    }
}

pub fn run_sweep(seed: u64, trials: usize, suites: &[Suite]) -> SweepReport {
    let suites: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(seed, s, trials)).collect();
    let pass = suites.iter().all(SuiteReport::pass);
    SweepReport { seed, suites, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_deterministic() {
        let a = run_sweep(7, 10, &Suite::ALL);
        let b = run_sweep(7, 10, &Suite::ALL);
        assert_eq!(a, b);
        assert!(a.pass, "{a:?}");
    }

    #[test]
    fn suite_streams_are_independent() {
        let alone = run_sweep(11, 8, &[Suite::Volume]);
        let together = run_sweep(11, 8, &[Suite::Serre, Suite::Volume]);
        assert_eq!(alone.suites[0], together.suites[1]);
    }

    #[test]
    fn generated_models_respect_bounds() {
        let mut rng = suite_rng(3, Suite::Serre);
        for _ in 0..200 {
            let m = random_model(&mut rng);
            assert!(m.r() <= 12 && m.weights().len() <= 9);
            let (m, q) = random_q_group_model(&mut rng);
            assert!(m.r() == q || m.r() == q * q);
        }
    }

    #[test]
    fn wild_example_is_rejected() {
        assert_eq!(
            diagonalize(&wild_example(), &[]).unwrap_err(),
            Error::TameViolation { p: 2, r: 2 }
        );
    }
}
