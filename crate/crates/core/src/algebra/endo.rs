//! Local endomorphisms of jet rings, given by the images of the variables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::series::{same_ring, Monomial, Series, TruncatedLocalRing};
use crate::error::{Error, Result};

/// A ring endomorphism `x_i -> images[i]` preserving the maximal ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct RingEndomorphism {
    ring: Arc<TruncatedLocalRing>,
    images: Vec<Series>,
}

impl RingEndomorphism {
    pub fn new(ring: &Arc<TruncatedLocalRing>, images: Vec<Series>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::LengthMismatch {
                expected: ring.nvars(),
                found: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if !same_ring(img.ring(), ring) {
                return Err(Error::DomainMismatch);
            }
            if img.constant_term() != 0 {
                return Err(Error::InvalidEndomorphism(format!(
                    "image of {} has a nonzero constant term",
                    ring.vars()[i]
                )));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<TruncatedLocalRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| Series::var(ring, i)).collect();
        Self {
            ring: ring.clone(),
            images,
        }
    }

    /// `x_i -> scalars[i] * x_i`.
    pub fn diagonal(ring: &Arc<TruncatedLocalRing>, scalars: &[u64]) -> Result<Self> {
        let images = scalars
            .iter()
            .enumerate()
            .map(|(i, &c)| Series::var(ring, i).scale(c))
            .collect();
        Self::new(ring, images)
    }

    pub fn ring(&self) -> &Arc<TruncatedLocalRing> {
        &self.ring
    }

    pub fn images(&self) -> &[Series] {
        &self.images
    }

    /// Simultaneous substitution `a(x) -> a(images)`, truncated.
    pub fn apply(&self, a: &Series) -> Result<Series> {
        self.substitution().apply(a)
    }

    /// A reusable evaluator that memoises the images of monomials.
    pub fn substitution(&self) -> Substitution<'_> {
        Substitution {
            endo: self,
            cache: HashMap::new(),
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &RingEndomorphism) -> Result<RingEndomorphism> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::DomainMismatch);
        }
        let mut sub = self.substitution();
        let images = other
            .images
            .iter()
            .map(|img| sub.apply(img))
            .collect::<Result<Vec<_>>>()?;
        RingEndomorphism::new(&self.ring, images)
    }

    pub fn pow(&self, k: u64) -> RingEndomorphism {
        let mut acc = RingEndomorphism::identity(&self.ring);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same ring");
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == RingEndomorphism::identity(&self.ring)
    }

    /// Compositional inverse, defined when the linear part is invertible.
    ///
    /// Writes each image as `L_i + H_i` (linear plus higher order) and solves
    /// `psi = L^{-1}(x - H(psi))` by fixed-point iteration; each round fixes one
    /// more degree, so `trunc` rounds are exact.
    pub fn inverse(&self) -> Result<RingEndomorphism> {
        let field = self.ring.field();
        let n = self.ring.nvars();
        let lin = super::linalg::Matrix::from_rows(field, &self.linear_matrix());
        let lin_inv = lin
            .inverse()
            .ok_or_else(|| Error::InvalidEndomorphism("linear part is singular".into()))?;
        let higher: Vec<Series> = self
            .images
            .iter()
            .map(|img| img - &Series::linear(&self.ring, &img.linear_part()))
            .collect();
        let solve = |rhs: &[Series]| -> Vec<Series> {
            (0..n)
                .map(|j| {
                    (0..n).fold(Series::zero(&self.ring), |acc, i| {
                        &acc + &rhs[i].scale(lin_inv.get(j, i))
                    })
                })
                .collect()
        };
        let vars: Vec<Series> = (0..n).map(|i| Series::var(&self.ring, i)).collect();
        let mut psi = RingEndomorphism::new(&self.ring, solve(&vars))?;
        for _ in 0..self.ring.trunc() {
            let mut sub = psi.substitution();
            let rhs: Vec<Series> = (0..n)
                .map(|i| Ok(&vars[i] - &sub.apply(&higher[i])?))
                .collect::<Result<_>>()?;
            psi = RingEndomorphism::new(&self.ring, solve(&rhs))?;
        }
        Ok(psi)
    }

    /// Matrix of degree-one coefficients: row `i` holds the linear part of `images[i]`.
    pub fn linear_matrix(&self) -> Vec<Vec<u64>> {
        self.images.iter().map(Series::linear_part).collect()
    }
}

/// Evaluates a fixed endomorphism, caching `images^m` for every monomial
/// `m` seen so far.
pub struct Substitution<'a> {
    endo: &'a RingEndomorphism,
    cache: HashMap<Monomial, Series>,
}

impl Substitution<'_> {
    pub fn apply(&mut self, a: &Series) -> Result<Series> {
        if !same_ring(a.ring(), &self.endo.ring) {
            return Err(Error::DomainMismatch);
        }
        let f = a.field();
        let mut out = Series::zero(&self.endo.ring);
        for (m, c) in a.terms() {
            self.fill(m);
            for (mm, cc) in self.cache[m].terms() {
                out.add_term(mm.clone(), f.mul(c, cc));
            }
        }
        Ok(out)
    }

    fn fill(&mut self, m: &Monomial) {
        if self.cache.contains_key(m) {
            return;
        }
        let value = match m.0.iter().rposition(|&e| e > 0) {
            None => Series::one(&self.endo.ring),
            Some(i) => {
                let mut prev = m.clone();
                prev.0[i] -= 1;
                self.fill(&prev);
                &self.cache[&prev] * &self.endo.images[i]
            }
        };
        self.cache.insert(m.clone(), value);
    }
}

impl fmt::Debug for RingEndomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingEndomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Convenience wrapper mirroring the operation name.
pub fn apply_endomorphism(f: &RingEndomorphism, a: &Series) -> Result<Series> {
    f.apply(a)
}

pub fn compose_endomorphisms(f: &RingEndomorphism, g: &RingEndomorphism) -> Result<RingEndomorphism> {
    f.compose(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use proptest::prelude::*;

    fn ring1(p: u64, trunc: u32) -> Arc<TruncatedLocalRing> {
        TruncatedLocalRing::new(PrimeField::new(p).unwrap(), vec!["x".into()], trunc).unwrap()
    }

    fn x_plus_x2(r: &Arc<TruncatedLocalRing>) -> RingEndomorphism {
        let img = Series::from_terms(r, &[(vec![1], 1), (vec![2], 1)]).unwrap();
        RingEndomorphism::new(r, vec![img]).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let r = ring1(5, 4);
        let a = Series::from_terms(&r, &[(vec![0], 3), (vec![1], 2), (vec![3], 1)]).unwrap();
        assert_eq!(RingEndomorphism::identity(&r).apply(&a).unwrap(), a);
    }

    #[test]
    fn sign_flip_on_square() {
        let r = ring1(5, 4);
        let f = RingEndomorphism::diagonal(&r, &[4]).unwrap();
        let x2 = Series::var(&r, 0).pow(2);
        assert_eq!(f.apply(&x2).unwrap(), x2);
    }

    #[test]
    fn substitution_hand_expansion() {
        let r = ring1(5, 3);
        let f = x_plus_x2(&r);
        let out = f.apply(&Series::var(&r, 0).pow(2)).unwrap();
        assert_eq!(out.to_terms(), vec![(vec![2], 1), (vec![3], 2)]);
    }

    #[test]
    fn composition_examples() {
        let r = ring1(5, 3);
        let f = x_plus_x2(&r);
        assert_eq!(f.compose(&RingEndomorphism::identity(&r)).unwrap(), f);
        let sq = f.compose(&f).unwrap();
        assert_eq!(sq.images()[0].to_terms(), vec![(vec![1], 1), (vec![2], 2), (vec![3], 2)]);

        let r7 = ring1(7, 6);
        let mu = 2; // order 3 in F_7
        let g = RingEndomorphism::diagonal(&r7, &[mu]).unwrap();
        assert!(g.pow(3).is_identity());
        assert!(!g.pow(2).is_identity());
    }

    #[test]
    fn constant_term_rejected() {
        let r = ring1(5, 3);
        let bad = Series::from_terms(&r, &[(vec![0], 1), (vec![1], 1)]).unwrap();
        assert!(matches!(
            RingEndomorphism::new(&r, vec![bad]),
            Err(Error::InvalidEndomorphism(_))
        ));
    }

    #[test]
    fn foreign_ring_rejected() {
        let r = ring1(5, 3);
        let other = ring1(7, 3);
        let f = RingEndomorphism::identity(&r);
        assert_eq!(f.apply(&Series::var(&other, 0)), Err(Error::DomainMismatch));
        assert_eq!(
            f.compose(&RingEndomorphism::identity(&other)),
            Err(Error::DomainMismatch)
        );
    }

    fn arb_endo() -> impl Strategy<Value = (RingEndomorphism, Series, Series)> {
        let r = TruncatedLocalRing::standard(PrimeField::new(11).unwrap(), 1, 6).unwrap();
        let term = (prop::collection::vec(0u32..4, 2), 0i64..11);
        let img = prop::collection::vec((prop::collection::vec(0u32..3, 2), 0i64..11), 1..5);
        (
            img.clone(),
            img,
            prop::collection::vec(term.clone(), 0..6),
            prop::collection::vec(term, 0..6),
        )
            .prop_map(move |(i0, i1, a, b)| {
                let mk = |t: Vec<(Vec<u32>, i64)>| {
                    let s = Series::from_terms(&r, &t).unwrap();
                    &s - &Series::constant(&r, s.constant_term())
                };
                let f = RingEndomorphism::new(&r, vec![mk(i0), mk(i1)]).unwrap();
                (
                    f,
                    Series::from_terms(&r, &a).unwrap(),
                    Series::from_terms(&r, &b).unwrap(),
                )
            })
    }

    #[test]
    fn inverse_undoes_substitution() {
        let r = TruncatedLocalRing::standard(PrimeField::new(7).unwrap(), 1, 5).unwrap();
        let phi = RingEndomorphism::new(
            &r,
            vec![
                Series::from_terms(&r, &[(vec![1, 0], 2), (vec![0, 1], 1), (vec![1, 1], 3)]).unwrap(),
                Series::from_terms(&r, &[(vec![0, 1], 1), (vec![2, 0], 5), (vec![0, 3], 1)]).unwrap(),
            ],
        )
        .unwrap();
        let psi = phi.inverse().unwrap();
        assert!(psi.compose(&phi).unwrap().is_identity());
        assert!(phi.compose(&psi).unwrap().is_identity());
        let sing = RingEndomorphism::diagonal(&r, &[1, 0]).unwrap();
        assert!(matches!(sing.inverse(), Err(Error::InvalidEndomorphism(_))));
    }

    proptest! {
        #[test]
        fn apply_is_ring_hom((f, a, b) in arb_endo()) {
            prop_assert_eq!(f.apply(&(&a * &b)).unwrap(), &f.apply(&a).unwrap() * &f.apply(&b).unwrap());
            prop_assert_eq!(f.apply(&(&a + &b)).unwrap(), &f.apply(&a).unwrap() + &f.apply(&b).unwrap());
        }

        #[test]
        fn compose_matches_sequential_apply((f, a, _b) in arb_endo()) {
            let g = f.compose(&f).unwrap();
            prop_assert_eq!(g.apply(&a).unwrap(), f.apply(&f.apply(&a).unwrap()).unwrap());
        }
    }
}
