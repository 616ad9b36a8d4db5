use rayon::prelude::*;

use super::field::Field;

/// Reduced row-echelon form: nonzero rows only, each with a unit pivot.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

const PAR_WORK: usize = 1 << 14;

/// Gauss-Jordan elimination to reduced row-echelon form.
///
/// Pivots are taken in column order with the first nonzero row below the
/// current position, so the result depends only on the row space.
pub fn rref<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>, ncols: usize) -> Echelon<F::Elem> {
    debug_assert!(m.iter().all(|r| r.len() == ncols));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        if inv != f.one() {
            for x in m[r][c..].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let (head, tail) = m.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        let prow: &Vec<F::Elem> = prow;
        let support: Vec<usize> = (c..ncols).filter(|&j| !f.is_zero(&prow[j])).collect();
        let eliminate = |row: &mut Vec<F::Elem>| {
            if f.is_zero(&row[c]) {
                return;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = f.sub_mul(&row[j], &factor, &prow[j]);
            }
        };
        if (head.len() + rest.len()) * support.len() >= PAR_WORK {
            head.par_iter_mut().for_each(eliminate);
            rest.par_iter_mut().for_each(eliminate);
        } else {
            head.iter_mut().for_each(eliminate);
            rest.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

/// Reduced row-echelon form built by inserting sparse rows one at a time.
/// Stored rows stay sparse and fully reduced, so the work tracks the rank
/// rather than the number of rows. Returns `None` once the stored rows hold
/// more than `max_entries` nonzeros.
pub fn sparse_rref<F: Field>(
    f: &F,
    rows: impl IntoIterator<Item = Vec<(usize, F::Elem)>>,
    ncols: usize,
    max_entries: usize,
) -> Option<Echelon<F::Elem>> {
    let mut basis: Vec<Vec<(usize, F::Elem)>> = Vec::new();
    let mut pivot_row: Vec<Option<usize>> = vec![None; ncols];
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut stored = 0usize;
    let mut dense: Vec<F::Elem> = vec![f.zero(); ncols];
    for r in rows {
        if r.is_empty() {
            continue;
        }
        for (c, v) in r {
            dense[c] = f.add(&dense[c], &v);
        }
        for &c in &pivot_cols {
            if f.is_zero(&dense[c]) {
                continue;
            }
            let factor = dense[c].clone();
            for (j, b) in &basis[pivot_row[c].expect("pivot")] {
                dense[*j] = f.sub_mul(&dense[*j], &factor, b);
            }
        }
        let Some(lead) = dense.iter().position(|x| !f.is_zero(x)) else {
            continue;
        };
        let inv = f.inv(&dense[lead]);
        let new: Vec<(usize, F::Elem)> = dense
            .iter_mut()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(j, x)| (j, f.mul(&std::mem::replace(x, f.zero()), &inv)))
            .collect();
        for row in basis.iter_mut() {
            let Ok(at) = row.binary_search_by_key(&lead, |(j, _)| *j) else {
                continue;
            };
            let factor = row[at].1.clone();
            stored -= row.len();
            *row = merge_sub(f, row, &new, &factor);
            stored += row.len();
        }
        stored += new.len();
        if stored > max_entries {
            return None;
        }
        pivot_row[lead] = Some(basis.len());
        pivot_cols.push(lead);
        basis.push(new);
    }
    pivot_cols.sort_unstable();
    let mut out = Echelon {
        rows: Vec::with_capacity(pivot_cols.len()),
        pivots: Vec::with_capacity(pivot_cols.len()),
        ncols,
    };
    for c in pivot_cols {
        let mut d = vec![f.zero(); ncols];
        for (j, v) in std::mem::take(&mut basis[pivot_row[c].expect("pivot")]) {
            d[j] = v;
        }
        out.rows.push(d);
        out.pivots.push(c);
    }
    Some(out)
}

/// a − factor·b for sparse rows sorted by column.
fn merge_sub<F: Field>(
    f: &F,
    a: &[(usize, F::Elem)],
    b: &[(usize, F::Elem)],
    factor: &F::Elem,
) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.neg(&f.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let v = f.sub_mul(&a[i].1, factor, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Right kernel in free-variable normal form: one vector per free column `f`,
/// with a 1 at `f`, zeros at the other free columns, and the forced values at
/// the pivot columns. Determined by the row space alone.
pub fn kernel_from_echelon<F: Field>(f: &F, e: &Echelon<F::Elem>) -> Vec<Vec<F::Elem>> {
    e.free_columns()
        .into_iter()
        .map(|fc| {
            let mut v = vec![f.zero(); e.ncols];
            v[fc] = f.one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                if !f.is_zero(&row[fc]) {
                    v[pc] = f.neg(&row[fc]);
                }
            }
            v
        })
        .collect()
}
