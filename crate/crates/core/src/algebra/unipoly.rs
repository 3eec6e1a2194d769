//! Dense univariate polynomials over `F_p`, used for `k[s]` and test coefficients.

use std::fmt;

use super::field::PrimeField;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>, // lowest degree first, no trailing zeros
}

impl UniPoly {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % field.modulus()).collect();
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::new(field, vec![])
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * var^k`.
    pub fn monomial(field: PrimeField, c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        UniPoly::new(f, v)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, v)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut acc = UniPoly::constant(self.field, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Renders with the given variable name, highest degree first: `3*s^2 + s + 1`.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.format("y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_format() {
        let f = PrimeField::new(5).unwrap();
        let a = UniPoly::new(f, vec![1, 1]); // 1 + y
        assert_eq!(a.pow(2).coeffs(), &[1, 2, 1]);
        assert_eq!(a.pow(5).coeffs(), &[1, 0, 0, 0, 0, 1]); // Frobenius
        assert_eq!(UniPoly::monomial(f, 3, 2).add(&a).format("s"), "3*s^2 + s + 1");
        assert!(UniPoly::new(f, vec![5, 10]).is_zero());
        assert_eq!(UniPoly::zero(f).format("s"), "0");
    }
}
