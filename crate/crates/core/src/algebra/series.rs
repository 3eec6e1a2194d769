//! Truncated power series rings `F_p[[x_0, ..., x_n]] / m^(N+1)` ("jet rings").
//!
//! Elements are sparse maps from exponent vectors to nonzero coefficients;
//! every stored term has total degree at most the truncation bound `N`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: u32 = 8;

/// An exponent vector.
///
/// Ordered by total degree first; within one degree, lexicographically
/// *descending*, so that powers of earlier variables come first:
/// `t^2 < t*x < x^2` and `t*x < t^3 < x^3`. Every sorted list in this crate
/// (polynomial terms, Hilbert bases, generator names) uses this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn zero(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `t, x` for a single coordinate, `t, x1, ..., xn` otherwise.
pub fn coordinate_names(n: usize) -> Vec<String> {
    let mut names = vec!["t".to_string()];
    if n == 1 {
        names.push("x".into());
    } else {
        names.extend((1..=n).map(|i| format!("x{i}")));
    }
    names
}

/// Formats `x^e` products over the given variable names, `1` for the empty product.
pub fn format_monomial(exps: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedLocalRing {
    field: PrimeField,
    vars: Vec<String>,
    trunc: u32,
}

impl TruncatedLocalRing {
    pub fn new(field: PrimeField, vars: Vec<String>, trunc: u32) -> Result<Arc<Self>> {
        if trunc < 2 {
            return Err(Error::InvalidInput(format!(
                "truncation degree must be at least 2, got {trunc}"
            )));
        }
        if vars.is_empty() {
            return Err(Error::InvalidInput("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("bad or duplicate variable name {v:?}")));
            }
        }
        Ok(Arc::new(Self { field, vars, trunc }))
    }

    /// Variables named by [`coordinate_names`] (`t` first, the uniformizer).
    pub fn standard(field: PrimeField, n: usize, trunc: u32) -> Result<Arc<Self>> {
        Self::new(field, coordinate_names(n), trunc)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field, different truncation.
    pub fn with_trunc(&self, trunc: u32) -> Result<Arc<Self>> {
        Self::new(self.field, self.vars.clone(), trunc)
    }
}

pub(crate) fn same_ring(a: &Arc<TruncatedLocalRing>, b: &Arc<TruncatedLocalRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An element of a [`TruncatedLocalRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    ring: Arc<TruncatedLocalRing>,
    terms: BTreeMap<Monomial, u64>,
}

impl Series {
    pub fn zero(ring: &Arc<TruncatedLocalRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<TruncatedLocalRing>, c: u64) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(Monomial::zero(ring.nvars()), c);
        s
    }

    pub fn one(ring: &Arc<TruncatedLocalRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<TruncatedLocalRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::unit(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &Arc<TruncatedLocalRing>, m: Monomial, c: u64) -> Self {
        assert_eq!(m.len(), ring.nvars(), "exponent vector length");
        let mut s = Self::zero(ring);
        s.add_term(m, c);
        s
    }

    /// The linear form `sum_j coeffs[j] * x_j`.
    pub fn linear(ring: &Arc<TruncatedLocalRing>, coeffs: &[u64]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        let mut s = Self::zero(ring);
        for (j, &c) in coeffs.iter().enumerate() {
            s.add_term(Monomial::unit(ring.nvars(), j), c);
        }
        s
    }

    /// Builds an element from `(exponents, coefficient)` pairs; coefficients are
    /// reduced mod p, terms above the truncation are dropped.
    pub fn from_terms(ring: &Arc<TruncatedLocalRing>, terms: &[(Vec<u32>, i64)]) -> Result<Self> {
        let mut s = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::LengthMismatch {
                    expected: ring.nvars(),
                    found: e.len(),
                });
            }
            s.add_term(Monomial(e.clone()), ring.field().from_i64(*c));
        }
        Ok(s)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u64) {
        let f = self.ring.field();
        let c = c % f.modulus();
        if c == 0 || m.degree() > self.ring.trunc() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<TruncatedLocalRing> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(&Monomial::zero(self.ring.nvars()))
    }

    /// Degree-one coefficients in variable order (the image in `m/m^2`).
    pub fn linear_part(&self) -> Vec<u64> {
        let n = self.ring.nvars();
        (0..n).map(|j| self.coeff(&Monomial::unit(n, j))).collect()
    }

    /// Lowest total degree present, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn scale(&self, c: u64) -> Series {
        let f = self.field();
        let mut out = Series::zero(&self.ring);
        for (m, v) in self.terms() {
            out.add_term(m.clone(), f.mul(v, c));
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Series {
        let mut acc = Series::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-reads this element in `target`, a ring with the same variables and
    /// field; terms above the target bound are discarded.
    pub fn truncate_into(&self, target: &Arc<TruncatedLocalRing>) -> Result<Series> {
        if target.vars() != self.ring.vars() || target.field() != self.field() {
            return Err(Error::DomainMismatch);
        }
        let mut out = Series::zero(target);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Sorted `(exponents, coefficient)` list, the JSON wire form.
    pub fn to_terms(&self) -> Vec<(Vec<u32>, u64)> {
        self.terms.iter().map(|(m, &c)| (m.0.clone(), c)).collect()
    }

    fn check_ring(&self, other: &Series) {
        assert!(same_ring(&self.ring, &other.ring), "operands live in different rings");
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mono = format_monomial(&m.0, self.ring.vars());
                match (c, mono.as_str()) {
                    (_, "1") => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        let f = self.field();
        let mut out = Series::zero(&self.ring);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), f.neg(c));
        }
        out
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.check_ring(rhs);
        let f = self.field();
        let n = self.ring.trunc();
        let mut out = Series::zero(&self.ring);
        for (ma, &ca) in &self.terms {
            let da = ma.degree();
            // Terms are sorted by degree, so the inner loop can stop early.
            for (mb, &cb) in &rhs.terms {
                if da + mb.degree() > n {
                    break;
                }
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, n: usize, trunc: u32) -> Arc<TruncatedLocalRing> {
        TruncatedLocalRing::standard(PrimeField::new(p).unwrap(), n, trunc).unwrap()
    }

    fn arb_series(ring: Arc<TruncatedLocalRing>) -> impl Strategy<Value = Series> {
        let nv = ring.nvars();
        let p = ring.field().modulus() as i64;
        prop::collection::vec((prop::collection::vec(0u32..4, nv), 0..p), 0..8).prop_map(
            move |terms| Series::from_terms(&ring, &terms).unwrap(),
        )
    }

    #[test]
    fn monomial_order() {
        let mut v = vec![
            Monomial(vec![0, 2]),
            Monomial(vec![1, 1]),
            Monomial(vec![2, 0]),
            Monomial(vec![0, 1]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Monomial(vec![0, 1]),
                Monomial(vec![2, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2])
            ]
        );
        let mut w = [Monomial(vec![0, 3]), Monomial(vec![3, 0]), Monomial(vec![1, 1])];
        w.sort();
        assert_eq!(w[0], Monomial(vec![1, 1]));
        assert_eq!(w[1], Monomial(vec![3, 0]));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let r = ring(5, 1, 3);
        let x = Series::var(&r, 1);
        assert!(x.pow(4).is_zero());
        let s = &x + &x.pow(2);
        // (x + x^2)^2 = x^2 + 2x^3 + x^4, truncated at 3
        assert_eq!(s.pow(2).to_terms(), vec![(vec![0, 2], 1), (vec![0, 3], 2)]);
    }

    #[test]
    fn display_form() {
        let r = ring(5, 1, 4);
        let s = Series::from_terms(&r, &[(vec![1, 0], -1), (vec![0, 2], 2), (vec![0, 0], 3)]).unwrap();
        assert_eq!(s.to_string(), "3 + 4*t + 2*x^2");
    }

    proptest! {
        #[test]
        fn ring_axioms(
            (a, b, c) in (arb_series(ring(7, 2, 5)), arb_series(ring(7, 2, 5)), arb_series(ring(7, 2, 5)))
        ) {
            // The three strategies build separate but equal rings.
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn truncation_coherence(a in arb_series(ring(11, 2, 7)), b in arb_series(ring(11, 2, 7)), n2 in 2u32..7) {
            let low = a.ring().with_trunc(n2).unwrap();
            let high_then_cut = (&a * &b).truncate_into(&low).unwrap();
            let cut_then_mul = &a.truncate_into(&low).unwrap() * &b.truncate_into(&low).unwrap();
            prop_assert_eq!(high_then_cut, cut_then_mul);
        }
    }
}
