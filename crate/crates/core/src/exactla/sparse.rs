use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Zp};
use crate::error::{Error, Result};

/// Row-major sparse matrix over Q. Each row holds `(col, value)` pairs sorted
/// by column with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, BigRational::one()));
        }
        m
    }

    /// Builds a matrix from sparse rows; duplicate columns within a row are summed.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, BigRational)>>) -> Result<Self> {
        let nrows = rows.len();
        let mut out = Vec::with_capacity(nrows);
        for (i, mut row) in rows.into_iter().enumerate() {
            if let Some(&(c, _)) = row.iter().find(|(c, _)| *c >= ncols) {
                return Err(Error::Dimension(format!(
                    "entry ({i}, {c}) outside a matrix with {ncols} columns"
                )));
            }
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, BigRational)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            out.push(merged);
        }
        Ok(SparseMatrix {
            nrows,
            ncols,
            rows: out,
        })
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged dense rows".into()));
        }
        Self::from_rows(
            ncols,
            rows.iter()
                .map(|r| r.iter().cloned().enumerate().collect())
                .collect(),
        )
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let dense: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, BigRational)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, BigRational)>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((i, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![BigRational::zero(); self.ncols];
                for (c, v) in row {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }

    /// Each row scaled by the lcm of its denominators.
    pub fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows.iter().map(|r| integerize(r)).collect()
    }

    /// Image modulo p, or `None` if p divides some denominator.
    pub fn reduce_mod(&self, f: &Zp) -> Option<Vec<Vec<(usize, u64)>>> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = Vec::with_capacity(row.len());
                for (c, v) in row {
                    let r = f.from_rational(v)?;
                    if r != 0 {
                        out.push((*c, r));
                    }
                }
                Some(out)
            })
            .collect()
    }
}

pub(crate) fn integerize(row: &[(usize, BigRational)]) -> Vec<(usize, BigInt)> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
        .collect()
}

/// Sparse elimination with Markowitz-style pivoting: the column with the
/// fewest nonzeros among the active rows (lowest index on ties), then the
/// shortest row in that column (lowest index on ties). `combine(target, pivot, c)`
/// must return a row with column `c` eliminated.
fn sparse_rank<E, C>(mut rows: Vec<Vec<(usize, E)>>, ncols: usize, combine: C) -> usize
where
    C: Fn(&[(usize, E)], &[(usize, E)], usize) -> Vec<(usize, E)>,
{
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].push(i);
            col_count[*c] += 1;
        }
    }
    let holds = |row: &[(usize, E)], c: usize| row.binary_search_by_key(&c, |(k, _)| *k).is_ok();
    let mut rank = 0;
    loop {
        let Some(c) = (0..ncols)
            .filter(|&c| col_count[c] > 0)
            .min_by_key(|&c| (col_count[c], c))
        else {
            break;
        };
        let mut cand: Vec<usize> = std::mem::take(&mut col_rows[c]);
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&i| alive[i] && holds(&rows[i], c));
        let piv = *cand
            .iter()
            .min_by_key(|&&i| (rows[i].len(), i))
            .expect("column count positive");
        alive[piv] = false;
        let prow = std::mem::take(&mut rows[piv]);
        for (k, _) in &prow {
            col_count[*k] -= 1;
        }
        for &t in cand.iter().filter(|&&t| t != piv) {
            let new = combine(&rows[t], &prow, c);
            for (k, _) in &rows[t] {
                col_count[*k] -= 1;
            }
            for (k, _) in &new {
                col_count[*k] += 1;
                if !holds(&rows[t], *k) {
                    col_rows[*k].push(t);
                }
            }
            rows[t] = new;
            if rows[t].is_empty() {
                alive[t] = false;
            }
        }
        rank += 1;
    }
    rank
}

fn merge_with<E: Clone>(
    a: &[(usize, E)],
    b: &[(usize, E)],
    fa: impl Fn(&E) -> E,
    fb: impl Fn(&E) -> E,
    both: impl Fn(&E, &E) -> E,
    is_zero: impl Fn(&E) -> bool,
) -> Vec<(usize, E)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, fa(&a[i - 1].1))
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, fb(&b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, both(&a[i - 1].1, &b[j - 1].1))
        };
        if !is_zero(&v) {
            out.push((c, v));
        }
    }
    out
}

/// Rank over F_p by sparse elimination.
pub fn rank_mod_p(f: &Zp, rows: Vec<Vec<(usize, u64)>>, ncols: usize) -> usize {
    sparse_rank(rows, ncols, |t, p, c| {
        let tc = t[t.binary_search_by_key(&c, |(k, _)| *k).unwrap()].1;
        let pc = p[p.binary_search_by_key(&c, |(k, _)| *k).unwrap()].1;
        let factor = f.mul(&tc, &f.inv(&pc));
        merge_with(
            t,
            p,
            |x| *x,
            |y| f.neg(&f.mul(&factor, y)),
            |x, y| f.sub_mul(x, &factor, y),
            |v| *v == 0,
        )
    })
}

/// Rank over Q by fraction-free elimination on integer rows. After each
/// combination `a·t − b·p` the row is divided by the gcd of its entries.
pub fn rank_fraction_free(rows: Vec<Vec<(usize, BigInt)>>, ncols: usize) -> usize {
    sparse_rank(rows, ncols, |t, p, c| {
        let tc = &t[t.binary_search_by_key(&c, |(k, _)| *k).unwrap()].1;
        let pc = &p[p.binary_search_by_key(&c, |(k, _)| *k).unwrap()].1;
        let g = tc.gcd(pc);
        let (a, b) = (pc / &g, tc / &g);
        let mut out = merge_with(
            t,
            p,
            |x| &a * x,
            |y| -(&b * y),
            |x, y| &a * x - &b * y,
            |v| v.is_zero(),
        );
        let content = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if !content.is_zero() && !content.is_one() {
            for (_, v) in out.iter_mut() {
                *v /= &content;
            }
        }
        if out.first().is_some_and(|(_, v)| v.is_negative()) {
            for (_, v) in out.iter_mut() {
                *v = -&*v;
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn construction_drops_zeros_and_merges() {
        let m = SparseMatrix::from_rows(3, vec![vec![(2, q(1)), (0, q(2)), (2, q(-1))]]).unwrap();
        assert_eq!(m.row(0), &[(0, q(2))]);
        assert_eq!(m.nnz(), 1);
        assert!(SparseMatrix::from_rows(2, vec![vec![(5, q(1))]]).is_err());
    }

    #[test]
    fn sparse_ranks_agree_on_small_matrix() {
        let m = SparseMatrix::from_i64(&[
            vec![1, 2, 3, 4],
            vec![2, 4, 6, 8],
            vec![0, 1, 0, 1],
            vec![1, 3, 3, 5],
        ])
        .unwrap();
        assert_eq!(rank_fraction_free(m.integer_rows(), 4), 2);
        let f = Zp::new(2_147_483_659);
        assert_eq!(rank_mod_p(&f, m.reduce_mod(&f).unwrap(), 4), 2);
    }

    #[test]
    fn small_prime_can_drop_rank() {
        let m = SparseMatrix::from_i64(&[vec![7, 0], vec![0, 1]]).unwrap();
        let f = Zp::new(7);
        assert_eq!(rank_mod_p(&f, m.reduce_mod(&f).unwrap(), 2), 1);
        assert_eq!(rank_fraction_free(m.integer_rows(), 2), 2);
    }

    #[test]
    fn transpose_roundtrip() {
        let m = SparseMatrix::from_i64(&[vec![1, 0, 2], vec![0, 3, 0]]).unwrap();
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(2, 0), q(2));
    }
}
