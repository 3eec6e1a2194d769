//! Tame cyclic actions on jet rings.
//!
//! A [`WeightSystem`] `(r; l_0, ..., l_n)` describes the diagonal action
//! `x_i -> mu^{l_i} x_i` of `Z/r` with `mu` a primitive `r`-th root of unity,
//! `x_0 = t` the uniformizer. [`diagonalize`] recovers such coordinates for an
//! arbitrary finite-order local endomorphism whose order is prime to the
//! characteristic: eigenspaces of the induced map on `m/m^2` are computed by
//! exact elimination, lifted to linear forms, and projected onto the right
//! character by Reynolds averaging
//!
//! ```text
//! x_i = (1/r) * sum_{j=0}^{r-1} mu^{-l_i j} alpha^j(x~_i)
//! ```
//!
//! One averaging pass is exact because `alpha^r = id` holds exactly in the
//! jet ring. The choice of lift only affects terms of degree >= 2.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::field::gcd;
use crate::algebra::linalg::rank_of;
use crate::algebra::{Matrix, PrimeField, RingEndomorphism, Series, TruncatedLocalRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightSystemRepr", into = "WeightSystemRepr")]
pub struct WeightSystem {
    r: u64,
    weights: Vec<u64>,
    galois: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightSystemRepr {
    r: u64,
    weights: Vec<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    galois: bool,
}

impl TryFrom<WeightSystemRepr> for WeightSystem {
    type Error = Error;
    fn try_from(w: WeightSystemRepr) -> Result<Self> {
        if w.galois {
            WeightSystem::galois(w.r, w.weights)
        } else {
            WeightSystem::new(w.r, w.weights)
        }
    }
}

impl From<WeightSystem> for WeightSystemRepr {
    fn from(w: WeightSystem) -> Self {
        WeightSystemRepr {
            r: w.r,
            weights: w.weights,
            galois: w.galois,
        }
    }
}

impl WeightSystem {
    /// `weights[0]` is the weight on `t`.
    pub fn new(r: u64, weights: Vec<u64>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidWeights("group order must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(Error::InvalidWeights("need at least the weight on t".into()));
        }
        if let Some(&bad) = weights.iter().find(|&&l| l >= r) {
            return Err(Error::InvalidWeights(format!("weight {bad} not in 0..{r}")));
        }
        Ok(Self {
            r,
            weights,
            galois: false,
        })
    }

    /// A weight system modelling a Galois base change: the weight on `t`
    /// must generate `Z/r`.
    pub fn galois(r: u64, weights: Vec<u64>) -> Result<Self> {
        let mut w = Self::new(r, weights)?;
        w.require_galois()?;
        w.galois = true;
        Ok(w)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn ell0(&self) -> u64 {
        self.weights[0]
    }

    /// Weights of the coordinates after `t`.
    pub fn coordinate_weights(&self) -> &[u64] {
        &self.weights[1..]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_galois(&self) -> bool {
        self.galois
    }

    pub fn has_galois_weights(&self) -> bool {
        gcd(self.ell0(), self.r) == 1
    }

    pub fn require_galois(&self) -> Result<()> {
        if self.has_galois_weights() {
            Ok(())
        } else {
            Err(Error::NotGaloisWeights {
                r: self.r,
                ell0: self.ell0(),
            })
        }
    }

    /// `sum l_i e_i mod r`.
    pub fn weighted_degree(&self, e: &[u32]) -> Result<u64> {
        if e.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                found: e.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(e)
            .fold(0, |acc, (&l, &k)| (acc + l * (k as u64 % self.r)) % self.r))
    }
}

/// A local endomorphism together with its claimed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameEndomorphism {
    endo: RingEndomorphism,
    r: u64,
}

impl TameEndomorphism {
    /// No checks beyond `r >= 1`; [`diagonalize`] and [`reynolds_project`]
    /// verify tameness and the order claim before relying on them.
    pub fn new(endo: RingEndomorphism, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("order must be positive".into()));
        }
        Ok(Self { endo, r })
    }

    pub fn endo(&self) -> &RingEndomorphism {
        &self.endo
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn ring(&self) -> &Arc<TruncatedLocalRing> {
        self.endo.ring()
    }

    pub fn field(&self) -> PrimeField {
        self.ring().field()
    }

    /// The primitive root of unity used for weights; fails on wild orders.
    pub fn mu(&self) -> Result<u64> {
        self.field().primitive_root_of_unity(self.r)
    }

    fn orbit(&self) -> Result<Orbit> {
        let mu = self.mu()?;
        let mut sub = self.endo.substitution();
        let mut step = |prev: &RingEndomorphism| -> Result<RingEndomorphism> {
            let images = prev.images().iter().map(|g| sub.apply(g)).collect::<Result<_>>()?;
            RingEndomorphism::new(self.ring(), images)
        };
        let mut powers = vec![RingEndomorphism::identity(self.ring())];
        for _ in 1..self.r {
            let next = step(powers.last().unwrap())?;
            powers.push(next);
        }
        if !step(powers.last().unwrap())?.is_identity() {
            return Err(Error::NotFiniteOrder { r: self.r });
        }
        Ok(Orbit {
            field: self.field(),
            r: self.r,
            mu,
            powers,
        })
    }
}

/// The powers `alpha^0, ..., alpha^{r-1}` of a verified finite-order map.
struct Orbit {
    field: PrimeField,
    r: u64,
    mu: u64,
    powers: Vec<RingEndomorphism>,
}

impl Orbit {
    fn project(&self, candidate: &Series, weight: u64) -> Result<Series> {
        let f = self.field;
        let mu_inv = f.inv(self.mu).expect("root of unity is nonzero");
        let step = f.pow(mu_inv, weight);
        let mut acc = Series::zero(candidate.ring());
        let mut coeff = 1;
        for power in &self.powers {
            acc = &acc + &power.apply(candidate)?.scale(coeff);
            coeff = f.mul(coeff, step);
        }
        let r_inv = f.inv(self.r % f.modulus()).expect("tame order is invertible");
        Ok(acc.scale(r_inv))
    }

    /// Averaging specialised to a linear lift: `alpha^j(sum c_i x_i)` is read
    /// off the cached images.
    fn project_linear(&self, ring: &Arc<TruncatedLocalRing>, coeffs: &[u64], weight: u64) -> Series {
        let f = self.field;
        let mu_inv = f.inv(self.mu).expect("root of unity is nonzero");
        let step = f.pow(mu_inv, weight);
        let mut acc = Series::zero(ring);
        let mut coeff = 1;
        for power in &self.powers {
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    acc = &acc + &power.images()[i].scale(f.mul(c, coeff));
                }
            }
            coeff = f.mul(coeff, step);
        }
        let r_inv = f.inv(self.r % f.modulus()).expect("tame order is invertible");
        acc.scale(r_inv)
    }
}

fn check_tame(a: &TameEndomorphism) -> Result<()> {
    let p = a.field().modulus();
    if a.r.is_multiple_of(p) {
        return Err(Error::TameViolation { p, r: a.r });
    }
    Ok(())
}

/// The diagonal action `x_i -> mu^{l_i} x_i` on `F_p[[t, x_1..x_n]]` truncated at `trunc`.
pub fn make_diagonal_action(w: &WeightSystem, p: u64, trunc: u32) -> Result<TameEndomorphism> {
    let field = PrimeField::new(p)?;
    let mu = field.primitive_root_of_unity(w.r())?;
    let ring = TruncatedLocalRing::standard(field, w.len() - 1, trunc)?;
    let scalars: Vec<u64> = w.weights().iter().map(|&l| field.pow(mu, l)).collect();
    TameEndomorphism::new(RingEndomorphism::diagonal(&ring, &scalars)?, w.r())
}

/// Matrix of the induced map on `m/m^2`; row `i` is the linear part of the image of `x_i`.
pub fn residual_linear_part(a: &TameEndomorphism) -> Matrix {
    Matrix::from_rows(a.field(), &a.endo.linear_matrix())
}

/// `(1/r) sum_j mu^{-weight j} alpha^j(candidate)`, the projection onto the
/// `mu^weight` eigenspace.
pub fn reynolds_project(a: &TameEndomorphism, candidate: &Series, weight: u64) -> Result<Series> {
    check_tame(a)?;
    if weight >= a.r {
        return Err(Error::InvalidWeights(format!("weight {weight} not in 0..{}", a.r)));
    }
    a.orbit()?.project(candidate, weight)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalizationResult {
    pub parameters: Vec<Series>,
    pub weights: WeightSystem,
    pub mu: u64,
}

/// Finds a regular system of parameters of exact eigenvectors.
///
/// `pinned` elements must already be exact eigenvectors of the stated
/// weights with independent linear parts; they are returned verbatim in the
/// first positions, the remaining parameters follow by ascending weight.
pub fn diagonalize(a: &TameEndomorphism, pinned: &[(Series, u64)]) -> Result<DiagonalizationResult> {
    check_tame(a)?;
    let orbit = a.orbit()?;
    let field = a.field();
    let ring = a.ring().clone();
    let n = ring.nvars();
    let mu = orbit.mu;

    // Left eigenvectors: v with v * M = lambda * v, i.e. kernels of M^T - lambda.
    let mt = residual_linear_part(a).transpose();
    let eigenspaces: Vec<Vec<Vec<u64>>> = (0..a.r)
        .map(|j| mt.shifted(field.pow(mu, j)).kernel())
        .collect();
    let total: usize = eigenspaces.iter().map(Vec::len).sum();
    if total != n {
        return Err(Error::NotDiagonalizable {
            found: total,
            expected: n,
        });
    }

    for (z, w) in pinned {
        if !crate::algebra::series::same_ring(z.ring(), &ring) {
            return Err(Error::DomainMismatch);
        }
        if *w >= a.r {
            return Err(Error::PinnedInconsistent(format!("weight {w} not in 0..{}", a.r)));
        }
        if z.constant_term() != 0 {
            return Err(Error::PinnedInconsistent(format!("{z} is not in the maximal ideal")));
        }
        if a.endo.apply(z)? != z.scale(field.pow(mu, *w)) {
            return Err(Error::PinnedInconsistent(format!(
                "{z} is not an eigenvector of weight {w}"
            )));
        }
    }
    let pinned_linear: Vec<Vec<u64>> = pinned.iter().map(|(z, _)| z.linear_part()).collect();
    if rank_of(field, &pinned_linear) != pinned.len() {
        return Err(Error::PinnedInconsistent(
            "pinned linear parts are not linearly independent".into(),
        ));
    }

    let mut parameters: Vec<Series> = pinned.iter().map(|(z, _)| z.clone()).collect();
    let mut weights: Vec<u64> = pinned.iter().map(|(_, w)| *w).collect();
    for (j, space) in eigenspaces.iter().enumerate() {
        let mut basis: Vec<Vec<u64>> = pinned
            .iter()
            .zip(&pinned_linear)
            .filter(|((_, w), _)| *w == j as u64)
            .map(|(_, v)| v.clone())
            .collect();
        for v in space {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if rank_of(field, &trial) > basis.len() {
                basis = trial;
                parameters.push(orbit.project_linear(&ring, v, j as u64));
                weights.push(j as u64);
            }
        }
    }
    if parameters.len() != n {
        // a pinned vector outside its claimed eigenspace would land here
        return Err(Error::NotDiagonalizable {
            found: parameters.len(),
            expected: n,
        });
    }
    Ok(DiagonalizationResult {
        parameters,
        weights: WeightSystem::new(a.r, weights)?,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn weight_system_validation() {
        assert!(WeightSystem::new(2, vec![1, 2]).is_err());
        assert!(WeightSystem::new(0, vec![0]).is_err());
        assert_eq!(
            WeightSystem::galois(2, vec![2 % 2, 1]),
            Err(Error::NotGaloisWeights { r: 2, ell0: 0 })
        );
        assert!(WeightSystem::galois(1, vec![0, 0]).is_ok());
        let w = WeightSystem::new(3, vec![1, 2]).unwrap();
        assert_eq!(w.weighted_degree(&[1, 1]), Ok(0));
        assert_eq!(w.weighted_degree(&[1]), Err(Error::LengthMismatch { expected: 2, found: 1 }));
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"r":3,"weights":[1,2]}"#);
        assert_eq!(serde_json::from_str::<WeightSystem>(&json).unwrap(), w);
        assert!(serde_json::from_str::<WeightSystem>(r#"{"r":3,"weights":[1,5]}"#).is_err());
        assert!(serde_json::from_str::<WeightSystem>(r#"{"r":3,"weights":[1],"x":1}"#).is_err());
    }

    #[test]
    fn diagonal_action_examples() {
        let a = make_diagonal_action(&WeightSystem::new(2, vec![1, 1]).unwrap(), 5, 4).unwrap();
        let imgs: Vec<_> = a.endo().images().iter().map(Series::to_terms).collect();
        assert_eq!(imgs, vec![vec![(vec![1, 0], 4)], vec![(vec![0, 1], 4)]]);

        let id = make_diagonal_action(&WeightSystem::new(1, vec![0]).unwrap(), 11, 3).unwrap();
        assert!(id.endo().is_identity());

        let b = make_diagonal_action(&WeightSystem::new(3, vec![1, 2]).unwrap(), 7, 4).unwrap();
        assert_eq!(b.endo().linear_matrix(), vec![vec![2, 0], vec![0, 4]]);
        assert!(b.endo().pow(3).is_identity());

        assert_eq!(
            make_diagonal_action(&WeightSystem::new(3, vec![1, 2]).unwrap(), 5, 4),
            Err(Error::NoSuchRoot { p: 5, r: 3 })
        );
    }

    #[test]
    fn residual_matrices() {
        let a = make_diagonal_action(&WeightSystem::new(2, vec![1, 1]).unwrap(), 5, 4).unwrap();
        assert_eq!(residual_linear_part(&a).to_rows(), vec![vec![4, 0], vec![0, 4]]);

        let r1 = TruncatedLocalRing::new(f(5), vec!["x".into()], 3).unwrap();
        let img = Series::from_terms(&r1, &[(vec![1], 1), (vec![2], 1)]).unwrap();
        let e = TameEndomorphism::new(RingEndomorphism::new(&r1, vec![img]).unwrap(), 2).unwrap();
        assert_eq!(residual_linear_part(&e).to_rows(), vec![vec![1]]);

        let r2 = TruncatedLocalRing::standard(f(3), 1, 3).unwrap();
        let shear = RingEndomorphism::new(
            &r2,
            vec![
                Series::var(&r2, 0),
                Series::from_terms(&r2, &[(vec![0, 1], 1), (vec![1, 0], 1)]).unwrap(),
            ],
        )
        .unwrap();
        let e = TameEndomorphism::new(shear, 7).unwrap();
        assert_eq!(residual_linear_part(&e).to_rows(), vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn diagonalize_already_diagonal() {
        let a = make_diagonal_action(&WeightSystem::new(2, vec![1, 1]).unwrap(), 5, 4).unwrap();
        let d = diagonalize(&a, &[]).unwrap();
        assert_eq!(d.weights.weights(), &[1, 1]);
        assert_eq!(d.parameters[0], Series::var(a.ring(), 0));
        assert_eq!(d.parameters[1], Series::var(a.ring(), 1));
    }

    #[test]
    fn diagonalize_swap() {
        let r2 = TruncatedLocalRing::standard(f(5), 1, 4).unwrap();
        let swap = RingEndomorphism::new(&r2, vec![Series::var(&r2, 1), Series::var(&r2, 0)]).unwrap();
        let a = TameEndomorphism::new(swap, 2).unwrap();
        let d = diagonalize(&a, &[]).unwrap();
        assert_eq!(d.weights.weights(), &[0, 1]);
        // linear parts proportional to x0 + x1 and x0 - x1
        let l0 = d.parameters[0].linear_part();
        let l1 = d.parameters[1].linear_part();
        assert_eq!(l0[0], l0[1]);
        assert_eq!(l1[0], f(5).neg(l1[1]));
        assert!(l0[0] != 0 && l1[0] != 0);
        for (x, w) in d.parameters.iter().zip(d.weights.weights()) {
            assert_eq!(a.endo().apply(x).unwrap(), x.scale(f(5).pow(d.mu, *w)));
        }
    }

    #[test]
    fn wild_example_rejected() {
        // x -> x, y -> x + y over F_2 has order 2 but is not diagonalizable.
        let r2 = TruncatedLocalRing::new(f(2), vec!["x".into(), "y".into()], 4).unwrap();
        let shear = RingEndomorphism::new(
            &r2,
            vec![
                Series::var(&r2, 0),
                &Series::var(&r2, 0) + &Series::var(&r2, 1),
            ],
        )
        .unwrap();
        assert!(shear.pow(2).is_identity());
        let a = TameEndomorphism::new(shear, 2).unwrap();
        assert_eq!(diagonalize(&a, &[]), Err(Error::TameViolation { p: 2, r: 2 }));
        let x = Series::var(&r2, 0);
        assert_eq!(reynolds_project(&a, &x, 1), Err(Error::TameViolation { p: 2, r: 2 }));

        // x -> x + x^2 over F_2 with claimed order 2
        let r1 = TruncatedLocalRing::new(f(2), vec!["x".into()], 4).unwrap();
        let img = Series::from_terms(&r1, &[(vec![1], 1), (vec![2], 1)]).unwrap();
        let b = TameEndomorphism::new(RingEndomorphism::new(&r1, vec![img]).unwrap(), 2).unwrap();
        assert_eq!(diagonalize(&b, &[]), Err(Error::TameViolation { p: 2, r: 2 }));
    }

    #[test]
    fn order_claim_checked() {
        let r1 = TruncatedLocalRing::new(f(5), vec!["x".into()], 4).unwrap();
        let img = Series::from_terms(&r1, &[(vec![1], 1), (vec![2], 1)]).unwrap();
        let a = TameEndomorphism::new(RingEndomorphism::new(&r1, vec![img]).unwrap(), 2).unwrap();
        assert_eq!(diagonalize(&a, &[]), Err(Error::NotFiniteOrder { r: 2 }));
    }

    #[test]
    fn reynolds_examples() {
        let r1 = TruncatedLocalRing::new(f(5), vec!["x".into()], 4).unwrap();
        let a = TameEndomorphism::new(RingEndomorphism::diagonal(&r1, &[4]).unwrap(), 2).unwrap();
        let x = Series::var(&r1, 0);
        let cand = &x + &x.pow(2);
        assert_eq!(reynolds_project(&a, &cand, 1).unwrap(), x);
        assert_eq!(reynolds_project(&a, &x, 1).unwrap(), x);
        assert!(reynolds_project(&a, &x.pow(2), 1).unwrap().is_zero());
        assert_eq!(reynolds_project(&a, &x.pow(2), 0).unwrap(), x.pow(2));
    }

    #[test]
    fn pinned_t_returned_verbatim() {
        let w = WeightSystem::new(4, vec![1, 3, 0]).unwrap();
        let a = make_diagonal_action(&w, 13, 4).unwrap();
        let t = Series::var(a.ring(), 0);
        let d = diagonalize(&a, &[(t.clone(), 1)]).unwrap();
        assert_eq!(d.parameters[0], t);
        assert_eq!(d.weights.weights()[0], 1);

        // wrong weight
        assert!(matches!(diagonalize(&a, &[(t.clone(), 2)]), Err(Error::PinnedInconsistent(_))));
        // not an eigenvector
        let bad = &t + &Series::var(a.ring(), 1);
        assert!(matches!(diagonalize(&a, &[(bad, 1)]), Err(Error::PinnedInconsistent(_))));
        // dependent linear parts
        let t2 = &t + &t.pow(2).scale(0);
        assert!(matches!(
            diagonalize(&a, &[(t.clone(), 1), (t2, 1)]),
            Err(Error::PinnedInconsistent(_))
        ));
    }
}
