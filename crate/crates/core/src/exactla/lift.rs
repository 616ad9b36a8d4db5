use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::dense::{kernel_from_echelon, rref, sparse_rref, Echelon};
use super::field::{Field, Qq, Zp};
use super::primes::{crt, random_prime, reconstruct, reconstruct_u64};
use super::sparse::integerize;
use crate::error::{Error, Result};

/// Largest dense working matrix (entries) the modular kernel will allocate.
pub const MAX_DENSE_ENTRIES: usize = 80_000_000;
/// Largest dense matrix (entries) handed to exact rational elimination.
pub const MAX_EXACT_ENTRIES: usize = 4_000_000;
const MAX_PRIMES: usize = 12;
/// Systems with at most one nonzero in this many entries are eliminated sparsely.
const SPARSE_RATIO: usize = 16;

static CERTIFIED: AtomicUsize = AtomicUsize::new(0);
static UNLUCKY: AtomicUsize = AtomicUsize::new(0);
static FALLBACKS: AtomicUsize = AtomicUsize::new(0);

/// Process-wide counters describing how modular results related to exact ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditStats {
    /// Kernels or ranks whose modular value was certified exactly.
    pub certified: usize,
    /// Primes whose modular rank disagreed with a later certified rank.
    pub unlucky_primes: usize,
    /// Computations that gave up on primes and ran exact elimination.
    pub exact_fallbacks: usize,
}

pub fn audit_stats() -> AuditStats {
    AuditStats {
        certified: CERTIFIED.load(Ordering::Relaxed),
        unlucky_primes: UNLUCKY.load(Ordering::Relaxed),
        exact_fallbacks: FALLBACKS.load(Ordering::Relaxed),
    }
}

pub(crate) fn note_certified() {
    CERTIFIED.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn note_unlucky() {
    UNLUCKY.fetch_add(1, Ordering::Relaxed);
}

/// Seeded stream of random primes above 2^31.
#[derive(Clone, Debug)]
pub struct PrimeSource {
    rng: ChaCha8Rng,
    first: Option<u64>,
}

impl PrimeSource {
    pub fn new(seed: u64, first: Option<u64>) -> Self {
        PrimeSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            first,
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        self.first.take().unwrap_or_else(|| random_prime(&mut self.rng))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Integer rows with an optional machine-word copy for fast dot products.
pub(crate) struct IntRows {
    pub big: Vec<Vec<(usize, BigInt)>>,
    pub small: Option<Vec<Vec<(usize, i64)>>>,
}

impl IntRows {
    pub fn new(rows: &[Vec<(usize, BigRational)>]) -> Self {
        let big: Vec<Vec<(usize, BigInt)>> = rows.iter().map(|r| integerize(r)).collect();
        let small = big
            .iter()
            .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
            .collect();
        IntRows { big, small }
    }

    pub fn reduce(&self, f: &Zp) -> Vec<Vec<(usize, u64)>> {
        match &self.small {
            Some(rows) => rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, f.from_i64(*v)))
                        .filter(|(_, v)| *v != 0)
                        .collect()
                })
                .collect(),
            None => self
                .big
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, f.from_bigint(v)))
                        .filter(|(_, v)| *v != 0)
                        .collect()
                })
                .collect(),
        }
    }

    /// Exact test that every row annihilates the integer vector `w`.
    fn annihilates(&self, w: &[BigInt]) -> bool {
        let w_small: Option<Vec<i64>> = w.iter().map(ToPrimitive::to_i64).collect();
        if let (Some(rows), Some(ws)) = (&self.small, &w_small) {
            let fast = rows.par_iter().try_for_each(|r| {
                let mut acc: i128 = 0;
                for (c, v) in r {
                    acc = acc.checked_add(*v as i128 * ws[*c] as i128).ok_or(None)?;
                }
                if acc == 0 {
                    Ok(())
                } else {
                    Err(Some(()))
                }
            });
            match fast {
                Ok(()) => return true,
                Err(Some(())) => return false,
                Err(None) => {}
            }
        }
        self.big.par_iter().all(|r| {
            r.iter()
                .fold(BigInt::zero(), |acc, (c, v)| acc + v * &w[*c])
                .is_zero()
        })
    }
}

/// Modular kernel in free-variable normal form together with the pivot set.
/// Tall systems are first compressed by a random sparse sketch; the sketch
/// kernel is accepted only if it is annihilated by every original row.
pub(crate) fn kernel_mod_p(
    f: &Zp,
    rows: &[Vec<(usize, u64)>],
    ncols: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Echelon<u64>> {
    let nnz: usize = rows.iter().map(Vec::len).sum();
    if nnz.saturating_mul(SPARSE_RATIO) <= rows.len().saturating_mul(ncols) {
        if let Some(e) = sparse_rref(f, rows.iter().cloned(), ncols, MAX_DENSE_ENTRIES) {
            return Ok(e);
        }
    }
    let sketch_rows = ncols + 16;
    if rows.len() > sketch_rows + sketch_rows / 4 {
        check_budget(sketch_rows, ncols)?;
        let mut dense = vec![vec![0u64; ncols]; sketch_rows];
        for r in rows {
            for _ in 0..3 {
                let target = rng.gen_range(0..sketch_rows);
                let coef = rng.gen_range(1..f.modulus());
                let drow = &mut dense[target];
                for (c, v) in r {
                    drow[*c] = f.add(&drow[*c], &f.mul(&coef, v));
                }
            }
        }
        let e = rref(f, dense, ncols);
        let kernel = kernel_from_echelon(f, &e);
        let ok = rows.par_iter().all(|r| {
            kernel.iter().all(|v| {
                r.iter()
                    .fold(0u64, |acc, (c, x)| f.add(&acc, &f.mul(x, &v[*c])))
                    == 0
            })
        });
        if ok {
            return Ok(e);
        }
    }
    check_budget(rows.len(), ncols)?;
    let mut dense = vec![vec![0u64; ncols]; rows.len()];
    for (d, r) in dense.iter_mut().zip(rows) {
        for (c, v) in r {
            d[*c] = *v;
        }
    }
    Ok(rref(f, dense, ncols))
}

fn check_budget(rows: usize, cols: usize) -> Result<()> {
    if rows.saturating_mul(cols) > MAX_DENSE_ENTRIES {
        return Err(Error::Resource(format!(
            "dense {rows}x{cols} elimination exceeds the {MAX_DENSE_ENTRIES}-entry budget"
        )));
    }
    Ok(())
}

struct Accumulator {
    pivots: Vec<usize>,
    free: Vec<usize>,
    modulus: BigInt,
    primes: usize,
    single: Option<u64>,
    residues: Vec<Vec<BigInt>>,
}

/// Basis of the right kernel over Q, in free-variable normal form, computed
/// by modular elimination, rational reconstruction across primes, and an
/// exact check that every reconstructed vector is annihilated by every row.
///
/// A verified basis is the exact kernel: the vectors are independent and
/// their number equals the modular nullity, which bounds the rational nullity
/// from above.
pub fn certified_kernel(
    rows: &[Vec<(usize, BigRational)>],
    ncols: usize,
    primes: &mut PrimeSource,
) -> Result<Vec<Vec<BigRational>>> {
    let ints = IntRows::new(rows);
    let mut acc: Option<Accumulator> = None;
    for _ in 0..MAX_PRIMES {
        let p = primes.next_prime();
        let f = Zp::new(p);
        let reduced = ints.reduce(&f);
        let e = kernel_mod_p(&f, &reduced, ncols, primes.rng())?;
        let kernel = kernel_from_echelon(&f, &e);
        let fresh = match &acc {
            None => true,
            Some(a) if a.pivots == e.pivots => false,
            Some(a) => {
                UNLUCKY.fetch_add(1, Ordering::Relaxed);
                let better = e.pivots.len() > a.pivots.len()
                    || (e.pivots.len() == a.pivots.len() && e.pivots < a.pivots);
                if !better {
                    continue;
                }
                true
            }
        };
        let entries: Vec<Vec<u64>> = kernel
            .iter()
            .map(|v| e.pivots.iter().map(|&pc| v[pc]).collect())
            .collect();
        if fresh {
            acc = Some(Accumulator {
                free: e.free_columns(),
                pivots: e.pivots.clone(),
                modulus: BigInt::from(p),
                primes: 1,
                single: Some(p),
                residues: entries
                    .iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
            });
        } else {
            let a = acc.as_mut().expect("accumulator present");
            let m = a.modulus.clone();
            a.residues
                .par_iter_mut()
                .zip(entries.par_iter())
                .for_each(|(old, new)| {
                    for (o, &n) in old.iter_mut().zip(new) {
                        *o = crt(o, &m, n, p);
                    }
                });
            a.modulus *= p;
            a.primes += 1;
            a.single = None;
        }
        let a = acc.as_ref().expect("accumulator present");
        if let Some(basis) = lift_and_check(a, ncols, &ints) {
            CERTIFIED.fetch_add(1, Ordering::Relaxed);
            return Ok(basis);
        }
    }
    FALLBACKS.fetch_add(1, Ordering::Relaxed);
    exact_kernel(&ints.big, ncols)
}

fn lift_and_check(a: &Accumulator, ncols: usize, ints: &IntRows) -> Option<Vec<Vec<BigRational>>> {
    let lifted: Option<Vec<Vec<BigRational>>> = a
        .residues
        .par_iter()
        .zip(a.free.par_iter())
        .map(|(res, &fc)| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::one();
            for (r, &pc) in res.iter().zip(&a.pivots) {
                if r.is_zero() {
                    continue;
                }
                v[pc] = match a.single {
                    Some(p) => {
                        let (n, d) = reconstruct_u64(r.to_u64()?, p)?;
                        BigRational::new(n.into(), d.into())
                    }
                    None => reconstruct(r, &a.modulus)?,
                };
            }
            Some(v)
        })
        .collect();
    let lifted = lifted?;
    let ok = lifted.par_iter().all(|v| {
        let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let w: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        ints.annihilates(&w)
    });
    ok.then_some(lifted)
}

/// Exact kernel by sparse rational Gauss-Jordan elimination.
pub(crate) fn exact_kernel(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Result<Vec<Vec<BigRational>>> {
    let e = exact_echelon(rows, ncols)?;
    Ok(kernel_from_echelon(&Qq, &e))
}

pub(crate) fn exact_echelon(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Result<Echelon<BigRational>> {
    let rationals = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, BigRational::from_integer(v.clone()))).collect());
    sparse_rref(&Qq, rationals, ncols, MAX_EXACT_ENTRIES).ok_or_else(|| {
        Error::Resource(format!(
            "exact elimination of {}x{ncols} exceeds the {MAX_EXACT_ENTRIES}-entry budget",
            rows.len()
        ))
    })
}
