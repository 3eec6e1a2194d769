//! Exhaustive point counts over prime fields.
//!
//! These are deliberately naive: they serve as an independent check on
//! presentations and classes, not as a point-counting algorithm.

use serde::Serialize;

use crate::algebra::field::is_prime;
use crate::error::{Error, Result};
use crate::fiber::{Factor, StratifiedModel};
use crate::invariant::ToricPresentation;
use crate::motivic::class_of_special_fiber;

/// Search spaces above this many points are refused unless `g <= 4`.
pub const SEARCH_LIMIT: u64 = 10_000_000;
/// Hard cap applied even for few generators.
const HARD_LIMIT: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub counted: u64,
    pub predicted: Option<i128>,
    /// `None` when there is no prediction to compare against.
    pub matched: Option<bool>,
}

impl CountReport {
    pub fn new(q: u64, counted: u64, predicted: Option<i128>) -> Self {
        Self {
            q,
            counted,
            predicted,
            matched: predicted.map(|p| p == counted as i128),
        }
    }
}

fn require_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime { p: q })
    }
}

fn search_space(q: u64, g: usize) -> Result<u64> {
    let size = (q as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
    if (g > 4 && size > SEARCH_LIMIT as u128) || size > HARD_LIMIT as u128 {
        return Err(Error::TooLarge(format!("{q}^{g} points to enumerate")));
    }
    Ok(size as u64)
}

/// Visits every vector of `F_q^g` in lexicographic order.
fn for_each_point(q: u64, g: usize, mut visit: impl FnMut(&[u64])) {
    let mut v = vec![0u64; g];
    loop {
        visit(&v);
        let mut i = g;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Number of points of `F_q^g` satisfying every binomial relation.
pub fn count_points_presented(pres: &ToricPresentation, q: u64) -> Result<u64> {
    require_prime(q)?;
    let g = pres.generator_count();
    search_space(q, g)?;
    let rels: Vec<(&[u32], &[u32])> = pres
        .relations
        .iter()
        .map(|r| (r.lhs.as_slice(), r.rhs.as_slice()))
        .collect();
    let side = |v: &[u64], e: &[u32]| {
        v.iter()
            .zip(e)
            .fold(1u64, |acc, (&x, &k)| acc * pow_mod(x, k as u64, q) % q)
    };
    let mut count = 0;
    for_each_point(q, g, |v| {
        if rels.iter().all(|(l, r)| side(v, l) == side(v, r)) {
            count += 1;
        }
    });
    Ok(count)
}

/// `[Y_k]` evaluated at `L = q`.
pub fn count_points_stratified(m: &StratifiedModel, q: u64) -> Result<i128> {
    class_of_special_fiber(m).eval(q as i64)
}

/// Points of `P^n(F_q)` as normalized representatives (first nonzero entry 1).
fn projective_points(n: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for_each_point(q, n + 1, |v| {
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v.to_vec());
        }
    });
    out
}

/// Per-factor list of `(is_fixed, local fiber dimension)` over all `F_q`-points.
///
/// A point is fixed when every nonzero coordinate has the same weight (all
/// weight zero for affine and torus factors); its fiber dimension counts the
/// coordinates whose weight differs from that common value.
fn factor_point_data(f: Factor, weights: &[u64], q: u64) -> Result<Vec<(bool, usize)>> {
    let n = f.dim();
    let mut out = Vec::new();
    match f {
        Factor::Affine(_) | Factor::Torus(_) => {
            search_space(q, n)?;
            for_each_point(q, n, |v| {
                if matches!(f, Factor::Torus(_)) && v.contains(&0) {
                    return;
                }
                let fixed = v.iter().zip(weights).all(|(&x, &w)| x == 0 || w == 0);
                let moving = weights.iter().filter(|&&w| w != 0).count();
                out.push((fixed, moving));
            });
        }
        Factor::Projective(_) => {
            search_space(q, n + 1)?;
            for v in projective_points(n, q) {
                let mut support = v.iter().zip(weights).filter(|(&x, _)| x != 0).map(|(_, &w)| w);
                let c = support.next().expect("nonzero representative");
                let fixed = support.all(|w| w == c);
                let moving = weights.iter().filter(|&&w| w != c).count();
                out.push((fixed, moving));
            }
        }
    }
    Ok(out)
}

/// Brute-force counts `(#Y_k(F_q), #Y^G(F_q), sum over fixed points of q^m)`.
///
/// The last number is the point count of the special fiber of the weak Néron
/// model, one affine `m`-space over each fixed point.
pub fn brute_force_model_counts(m: &StratifiedModel, q: u64) -> Result<(u64, u64, u128)> {
    require_prime(q)?;
    let mut all: u64 = 1;
    let mut fixed: u64 = 1;
    // distribution of fiber dimension over fixed points of the product so far
    let mut fibers: Vec<u64> = vec![1];
    for (&f, weights) in m.factors().iter().zip(m.factor_weights()) {
        let data = factor_point_data(f, weights, q)?;
        all = all
            .checked_mul(data.len() as u64)
            .ok_or_else(|| Error::TooLarge("model point count".into()))?;
        let mut local: Vec<u64> = Vec::new();
        for &(is_fixed, dim) in &data {
            if is_fixed {
                if local.len() <= dim {
                    local.resize(dim + 1, 0);
                }
                local[dim] += 1;
            }
        }
        fixed *= local.iter().sum::<u64>();
        let mut next = vec![0u64; fibers.len() + local.len()];
        for (i, &a) in fibers.iter().enumerate() {
            for (j, &b) in local.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        fibers = next;
    }
    let mut neron: u128 = 0;
    for (d, &k) in fibers.iter().enumerate() {
        let qd = (q as u128)
            .checked_pow(d as u32)
            .ok_or_else(|| Error::TooLarge("fiber point count".into()))?;
        neron += k as u128 * qd;
    }
    Ok((all, fixed, neron))
}
