use super::{FinLattice, LatticeError};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer polynomial in λ; `coeffs[k]` is the coefficient of λ^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `∏ (λ − r)` over the given roots.
    pub fn from_roots(roots: impl IntoIterator<Item = i64>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| acc.mul(&IntPolynomial::new(vec![-r, 1])))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub(crate) fn add_term(&mut self, power: usize, c: i64) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, 0);
        }
        self.coeffs[power] += c;
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "−" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "−")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "λ")?;
                    if k > 1 {
                        write!(f, "{}", superscript(k))?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Values μ(bottom, x) of the Möbius function, one per element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusVector {
    pub values: Vec<i64>,
}

impl MobiusVector {
    /// Checks `Σ_{y ≤ x} μ(y) = [x = bottom]` for every `x`; returns the first offender.
    pub fn defining_sum_failure(&self, l: &FinLattice) -> Option<usize> {
        (0..l.len()).find(|&x| {
            let s: i64 = l.below(x).map(|y| self.values[y]).sum();
            s != i64::from(x == l.bottom())
        })
    }
}

impl FinLattice {
    pub fn mobius(&self) -> MobiusVector {
        let mut mu = vec![0i64; self.len()];
        for x in self.linear_extension() {
            mu[x] = if x == self.bottom() { 1 } else { -self.below(x).filter(|&y| y != x).map(|y| mu[y]).sum::<i64>() };
        }
        let v = MobiusVector { values: mu };
        assert_eq!(v.defining_sum_failure(self), None, "Möbius recursion violated its defining identity");
        v
    }

    /// `Σ_x μ(x) λ^{rank(top) − rank(x)}`; requires a graded lattice.
    pub fn characteristic_polynomial(&self) -> Result<IntPolynomial, LatticeError> {
        let rank = self.rank()?;
        let mu = self.mobius();
        let top = rank[self.top()];
        let mut p = IntPolynomial::zero();
        for x in 0..self.len() {
            p.add_term(top - rank[x], mu.values[x]);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    #[test]
    fn polynomial_basics() {
        let p = IntPolynomial::from_roots([1, 2]);
        assert_eq!(p.coeffs(), &[2, -3, 1]);
        assert_eq!(p.to_string(), "λ² − 3λ + 2");
        assert_eq!(p.eval(1), 0);
        assert_eq!(IntPolynomial::new(vec![0, 0]).degree(), None);
        assert_eq!(IntPolynomial::one().to_string(), "1");
        assert_eq!(IntPolynomial::new(vec![0, -1]).to_string(), "−λ");
    }

    #[test]
    fn one_element() {
        let l = FinLattice::new(FinPoset::chain(1)).unwrap();
        assert_eq!(l.mobius().values, vec![1]);
        assert_eq!(l.characteristic_polynomial().unwrap(), IntPolynomial::one());
    }

    #[test]
    fn square() {
        let l = FinLattice::new(FinPoset::boolean(2)).unwrap();
        assert_eq!(l.characteristic_polynomial().unwrap().coeffs(), &[1, -2, 1]);
    }

    #[test]
    fn chain_mobius() {
        let l = FinLattice::new(FinPoset::chain(4)).unwrap();
        assert_eq!(l.mobius().values, vec![1, -1, 0, 0]);
    }
}
