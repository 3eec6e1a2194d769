//! Classes in the subring `Z[L]` of the Grothendieck ring of varieties.
//!
//! Every space produced here (models, fixed loci, special fibers of the weak
//! Néron model) is stratified by affine cells and split tori, so its class is
//! an integer polynomial in `L = [A^1]`. The full ring `K_0(Var_k)` is not
//! modelled. Both the Serre invariant (image in `Z[L]/(L-1)`) and the rational
//! volume (`chi_c`, with `chi_c(A^1) = 1`) are evaluation at `L = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::field::is_prime;
use crate::error::{Error, Result};
use crate::fiber::{fiber_dimension, fixed_locus, has_integral_point, ComponentPart, Factor, FixedComponent, StratifiedModel};

/// An element of `Z[L]`, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct MotivicClass {
    coeffs: Vec<i64>,
}

impl From<Vec<i64>> for MotivicClass {
    fn from(coeffs: Vec<i64>) -> Self {
        MotivicClass::new(coeffs)
    }
}

impl From<MotivicClass> for Vec<i64> {
    fn from(c: MotivicClass) -> Self {
        c.coeffs
    }
}

impl MotivicClass {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Self::new(vec![n])
    }

    /// `L^n = [A^n]`.
    pub fn lefschetz_power(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        Self { coeffs: c }
    }

    /// `(L - 1)^n = [G_m^n]`.
    pub fn torus(n: usize) -> Self {
        let base = Self::new(vec![-1, 1]);
        (0..n).fold(Self::one(), |acc, _| &acc * &base)
    }

    /// `1 + L + ... + L^n = [P^n]`.
    pub fn projective(n: usize) -> Self {
        Self::new(vec![1; n + 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `L = l`; fails with `TooLarge` on overflow.
    pub fn eval(&self, l: i64) -> Result<i128> {
        let overflow = || Error::TooLarge(format!("class {self} at L = {l}"));
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| {
            acc.checked_mul(l as i128)
                .and_then(|v| v.checked_add(c as i128))
                .ok_or_else(overflow)
        })
    }

    /// Image in `Z[L]/(L-1)`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

impl Add for &MotivicClass {
    type Output = MotivicClass;
    fn add(self, rhs: &MotivicClass) -> MotivicClass {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
        MotivicClass::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Neg for &MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        MotivicClass::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &MotivicClass {
    type Output = MotivicClass;
    fn sub(self, rhs: &MotivicClass) -> MotivicClass {
        self + &-rhs
    }
}

impl Mul for &MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: &MotivicClass) -> MotivicClass {
        if self.is_zero() || rhs.is_zero() {
            return MotivicClass::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        MotivicClass::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MotivicClass {
            type Output = MotivicClass;
            fn $m(self, rhs: MotivicClass) -> MotivicClass {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "L")?,
                (1, _) => write!(f, "{a}*L")?,
                (_, 1) => write!(f, "L^{i}")?,
                _ => write!(f, "{a}*L^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SerreInvariant(pub i64);

impl fmt::Display for SerreInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn factor_class(f: Factor) -> MotivicClass {
    match f {
        Factor::Affine(n) => MotivicClass::lefschetz_power(n),
        Factor::Torus(n) => MotivicClass::torus(n),
        Factor::Projective(n) => MotivicClass::projective(n),
    }
}

pub fn component_class(c: &FixedComponent) -> MotivicClass {
    c.parts.iter().fold(MotivicClass::one(), |acc, part| {
        let pc = match *part {
            ComponentPart::Affine { dim } => MotivicClass::lefschetz_power(dim),
            ComponentPart::Torus { dim } => MotivicClass::torus(dim),
            ComponentPart::Projective { multiplicity, .. } => MotivicClass::projective(multiplicity - 1),
        };
        &acc * &pc
    })
}

/// `[Y_k]`, the special fiber of the model itself.
pub fn class_of_special_fiber(m: &StratifiedModel) -> MotivicClass {
    m.factors()
        .iter()
        .fold(MotivicClass::one(), |acc, &f| &acc * &factor_class(f))
}

/// `[Y^G]`.
pub fn class_of_fixed_locus(m: &StratifiedModel) -> MotivicClass {
    fixed_locus(m)
        .components
        .iter()
        .fold(MotivicClass::zero(), |acc, c| &acc + &component_class(c))
}

/// `[Z_k]`: each fixed component contributes `L^m [component]`.
pub fn class_of_weak_neron_fiber(m: &StratifiedModel) -> MotivicClass {
    fixed_locus(m).components.iter().fold(MotivicClass::zero(), |acc, c| {
        let dim = fiber_dimension(m, c).expect("component of this model");
        &acc + &(&MotivicClass::lefschetz_power(dim) * &component_class(c))
    })
}

pub fn serre_invariant(c: &MotivicClass) -> SerreInvariant {
    SerreInvariant(c.at_one())
}

pub fn rational_volume(c: &MotivicClass) -> i64 {
    c.at_one()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub serre_lhs: SerreInvariant,
    pub serre_rhs: SerreInvariant,
    pub pass: bool,
}

/// Compares `S(X)` computed from `[Z_k]` with `[Y^G]` modulo `L - 1`.
pub fn check_serre_theorem(m: &StratifiedModel) -> SerreReport {
    let serre_lhs = serre_invariant(&class_of_weak_neron_fiber(m));
    let serre_rhs = serre_invariant(&class_of_fixed_locus(m));
    SerreReport {
        serre_lhs,
        serre_rhs,
        pass: serre_lhs == serre_rhs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub q: u64,
    #[serde(rename = "s_XL")]
    pub s_xl: i64,
    #[serde(rename = "s_X")]
    pub s_x: i64,
    pub difference_mod_q: u64,
    pub pass: bool,
    pub has_integral_point: bool,
}

/// `s(X_L) ≡ s(X) mod q` for a `q`-group action; `r` must be a power of `q`.
pub fn check_volume_congruence(m: &StratifiedModel, q: u64) -> Result<VolumeReport> {
    if !is_prime(q) {
        return Err(Error::NotPrime { p: q });
    }
    let mut r = m.r();
    while r > 1 && r.is_multiple_of(q) {
        r /= q;
    }
    if r != 1 || m.r() == 1 {
        return Err(Error::NotQGroup { r: m.r(), q });
    }
    let s_xl = rational_volume(&class_of_special_fiber(m));
    let s_x = rational_volume(&class_of_weak_neron_fiber(m));
    let difference_mod_q = (s_xl - s_x).rem_euclid(q as i64) as u64;
    Ok(VolumeReport {
        q,
        s_xl,
        s_x,
        difference_mod_q,
        pass: difference_mod_q == 0,
        has_integral_point: has_integral_point(m),
    })
}
