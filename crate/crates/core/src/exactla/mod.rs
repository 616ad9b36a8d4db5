//! Exact linear algebra over Q with a modular fast path.
//!
//! Ranks and kernels are computed either by exact elimination or modulo a
//! random prime above 2^31. The `Verify` strategy computes modularly and then
//! certifies: a kernel reconstructed from the modular data is checked exactly,
//! and since modular rank never exceeds rational rank, a verified kernel of
//! the modular nullity pins the rational rank.

mod dense;
mod field;
mod lift;
mod primes;
mod sparse;

use num_rational::BigRational;

pub use dense::{kernel_from_echelon, rref, Echelon};
pub use field::{Field, Qq, Zp};
pub use lift::{audit_stats, certified_kernel, AuditStats, PrimeSource, MAX_DENSE_ENTRIES};
pub use primes::{is_prime_u32_range, random_prime};
pub use sparse::{rank_fraction_free, rank_mod_p, SparseMatrix};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    /// Rank over F_p; `None` draws p from the seed.
    Modular(Option<u64>),
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankStrategy {
    pub mode: RankMode,
    pub seed: u64,
}

impl Default for RankStrategy {
    fn default() -> Self {
        RankStrategy {
            mode: RankMode::Verify,
            seed: 0,
        }
    }
}

impl RankStrategy {
    pub fn exact() -> Self {
        RankStrategy {
            mode: RankMode::Exact,
            seed: 0,
        }
    }

    pub fn modular(seed: u64) -> Self {
        RankStrategy {
            mode: RankMode::Modular(None),
            seed,
        }
    }

    pub fn verify(seed: u64) -> Self {
        RankStrategy {
            mode: RankMode::Verify,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let RankMode::Modular(Some(p)) = self.mode {
            if p <= 1 << 31 || p >= 1 << 32 || !is_prime_u32_range(p) {
                return Err(Error::Input(format!(
                    "modular rank needs a prime in (2^31, 2^32), got {p}"
                )));
            }
        }
        Ok(())
    }

    pub fn primes(&self) -> PrimeSource {
        let first = match self.mode {
            RankMode::Modular(p) => p,
            _ => None,
        };
        PrimeSource::new(self.seed, first)
    }
}

/// Rank over F_p for the first prime from `primes` that divides no denominator.
pub fn modular_rank(m: &SparseMatrix, primes: &mut PrimeSource) -> usize {
    loop {
        let f = Zp::new(primes.next_prime());
        if let Some(rows) = m.reduce_mod(&f) {
            return rank_mod_p(&f, rows, m.ncols());
        }
    }
}

pub fn rank(m: &SparseMatrix, strategy: RankStrategy) -> Result<usize> {
    strategy.validate()?;
    match strategy.mode {
        RankMode::Exact => Ok(rank_fraction_free(m.integer_rows(), m.ncols())),
        RankMode::Modular(_) => Ok(modular_rank(m, &mut strategy.primes())),
        RankMode::Verify => {
            let r = modular_rank(m, &mut strategy.primes());
            let exact = rank_fraction_free(m.integer_rows(), m.ncols());
            if exact == r {
                lift::note_certified();
            } else {
                lift::note_unlucky();
            }
            Ok(exact)
        }
    }
}

/// Exact kernel of sparse rational rows in free-variable normal form.
pub fn exact_kernel_of_rows(rows: &[Vec<(usize, Rational)>], ncols: usize) -> Result<Vec<Vec<Rational>>> {
    let ints: Vec<_> = rows.iter().map(|r| sparse::integerize(r)).collect();
    lift::exact_kernel(&ints, ncols)
}

/// Basis of the right null space in reduced row-echelon form.
pub fn kernel_basis(m: &SparseMatrix) -> Result<Vec<Vec<Rational>>> {
    let k = lift::exact_kernel(&m.integer_rows(), m.ncols())?;
    Ok(rref_canonical(&k))
}

/// Reduced row-echelon basis of the span of `vectors`.
pub fn rref_canonical(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = vectors.first().map_or(0, Vec::len);
    assert!(vectors.iter().all(|v| v.len() == ncols), "vectors of unequal length");
    rref(&Qq, vectors.to_vec(), ncols).rows
}

/// Solve for the coordinates of `v` in the span of an rref basis, or `None`
/// if `v` is not in the span.
pub fn coordinates_in(basis: &Echelon<Rational>, v: &[Rational]) -> Option<Vec<Rational>> {
    let coords: Vec<Rational> = basis.pivots.iter().map(|&p| v[p].clone()).collect();
    let mut residual = v.to_vec();
    for (row, c) in basis.rows.iter().zip(&coords) {
        if Qq.is_zero(c) {
            continue;
        }
        for (x, r) in residual.iter_mut().zip(row) {
            if !Qq.is_zero(r) {
                *x -= c * r;
            }
        }
    }
    residual.iter().all(|x| Qq.is_zero(x)).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn all_strategies() -> [RankStrategy; 3] {
        [RankStrategy::exact(), RankStrategy::modular(5), RankStrategy::verify(5)]
    }

    #[test]
    fn identity_and_zero() {
        for s in all_strategies() {
            assert_eq!(rank(&SparseMatrix::identity(3), s).unwrap(), 3);
            assert_eq!(rank(&SparseMatrix::zeros(4, 7), s).unwrap(), 0);
        }
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = SparseMatrix::from_i64(&[vec![1, 1, 1]]).unwrap();
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k, vec![vec![q(1), q(0), q(-1)], vec![q(0), q(1), q(-1)]]);
        assert!(kernel_basis(&SparseMatrix::identity(4)).unwrap().is_empty());
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(rref_canonical(&[vec![q(2), q(0), q(0)]]), vec![vec![q(1), q(0), q(0)]]);
        assert_eq!(
            rref_canonical(&[vec![q(1), q(1), q(0)], vec![q(0), q(0), q(0)]]),
            vec![vec![q(1), q(1), q(0)]]
        );
    }

    #[test]
    fn explicit_prime_must_be_large() {
        let s = RankStrategy {
            mode: RankMode::Modular(Some(101)),
            seed: 0,
        };
        assert!(rank(&SparseMatrix::identity(2), s).is_err());
        let s = RankStrategy {
            mode: RankMode::Modular(Some(2_147_483_659)),
            seed: 0,
        };
        assert_eq!(rank(&SparseMatrix::identity(2), s).unwrap(), 2);
    }

    #[test]
    fn coordinates_recover_combination() {
        let basis = rref(&Qq, vec![vec![q(1), q(0), q(2)], vec![q(0), q(1), q(3)]], 3);
        let v = vec![q(2), q(-1), q(1)];
        assert_eq!(coordinates_in(&basis, &v), Some(vec![q(2), q(-1)]));
        assert_eq!(coordinates_in(&basis, &[q(0), q(0), q(1)]), None);
    }
}
