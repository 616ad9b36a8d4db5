//! Eventual polynomial fits of integer sequences.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactla::Rational;

/// Σ c_i k^i with exact rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coefficients: Vec<Rational>,
}

impl Polynomial {
    fn trimmed(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, k: i64) -> Rational {
        let x = Rational::from_integer(k.into());
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// Lagrange interpolation through the given points.
    pub fn interpolate(points: &[(i64, i64)]) -> Self {
        let mut total = vec![Rational::zero(); points.len()];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, &(xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * Rational::from_integer(xj.into());
                }
                basis = next;
                denom *= Rational::from_integer((xi - xj).into());
            }
            let scale = Rational::from_integer(yi.into()) / denom;
            for (t, b) in total.iter_mut().zip(&basis) {
                *t += b * &scale;
            }
        }
        Self::trimmed(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = d == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{d}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// The polynomial that eventually agrees with a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialFit {
    pub polynomial: Polynomial,
    /// Degree, `None` when the sequence is eventually zero.
    pub degree: Option<usize>,
    /// Earliest index from which every value lies on the polynomial.
    pub stabilization: usize,
    pub last: usize,
}

impl PolynomialFit {
    pub fn matched(&self) -> usize {
        self.last + 1 - self.stabilization
    }
}

/// Iterated forward differences; row r holds the r-th differences.
pub fn finite_differences(values: &[i64]) -> Vec<Vec<i64>> {
    let mut rows = vec![values.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let prev = rows.last().unwrap();
        rows.push(prev.windows(2).map(|w| w[1] - w[0]).collect());
    }
    rows
}

/// Fits the smallest degree d whose polynomial through the last d + 1
/// points also matches the point before them, then extends the agreement
/// backwards as far as it holds. `start` is the index of `values[0]`.
pub fn fit(start: usize, values: &[i64]) -> Option<PolynomialFit> {
    let len = values.len();
    let last = start + len - 1;
    for d in 0..len.saturating_sub(1) {
        let tail: Vec<(i64, i64)> = (len - d - 1..len)
            .map(|i| ((start + i) as i64, values[i]))
            .collect();
        let p = Polynomial::interpolate(&tail);
        let check = len - d - 2;
        if p.eval((start + check) as i64) != Rational::from_integer(values[check].into()) {
            continue;
        }
        let mut first = check;
        while first > 0 && p.eval((start + first - 1) as i64) == Rational::from_integer(values[first - 1].into()) {
            first -= 1;
        }
        return Some(PolynomialFit {
            degree: p.degree(),
            polynomial: p,
            stabilization: start + first,
            last,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn braid_sequence() {
        let f = fit(2, &[4, 10, 15, 20, 25]).unwrap();
        assert_eq!(f.degree, Some(1));
        assert_eq!(f.stabilization, 3);
        assert_eq!(f.polynomial.coefficients, vec![q(-5, 1), q(5, 1)]);
        assert_eq!(f.polynomial.to_string(), "5k - 5");
    }

    #[test]
    fn ceva_needs_k_five() {
        let f = fit(2, &[12, 40, 56, 64, 80, 96]).unwrap();
        assert_eq!(f.stabilization, 5);
        assert_eq!(f.polynomial.eval(10), q(144, 1));
    }

    #[test]
    fn free_group_cubic() {
        let vals: Vec<i64> = (2..=10)
            .map(|k| crate::alexander::free_group_chen(4, k) as i64)
            .collect();
        let f = fit(2, &vals).unwrap();
        assert_eq!(f.degree, Some(3));
        assert_eq!(f.stabilization, 2);
    }

    #[test]
    fn zero_sequence() {
        let f = fit(2, &[0, 0, 0]).unwrap();
        assert_eq!(f.degree, None);
        assert_eq!(f.polynomial.to_string(), "0");
    }

    #[test]
    fn differences() {
        let d = finite_differences(&[1, 4, 9, 16]);
        assert_eq!(d[2], vec![2, 2]);
        assert_eq!(d[3], vec![0]);
    }

    #[test]
    fn no_fit_for_short_noise() {
        assert!(fit(2, &[1, 5]).is_none());
        assert_eq!(fit(2, &[3, 3]).unwrap().degree, Some(0));
    }
}
