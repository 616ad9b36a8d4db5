//! Torsion of B in low degrees and the comparison module B′ = ⊕ B(p).
//!
//! With M_m = B_{m+2} dual to the inverse-system level W_m, the elements of
//! M_s killed by every monomial of degree t − s form X_s, where X_t = 0 and
//!
//! ```text
//! X_s = {x ∈ W_s^* : D_l^T x ∈ X_{s+1} for every variable l}.
//! ```
//!
//! One descent from a top level t yields the truncated torsion for every
//! (k, d) with k − 2 + d = t.

use num_traits::Zero;
use serde::Serialize;

use crate::alexander::AlexanderModule;
use crate::error::{Error, Result};
use crate::exactla::{rref, Echelon, Qq, Rational};
use crate::resonance::{conjecture_rhs, HVector};

/// dim B′_k = Σ_r h_r · (k−1)·C(r+k−1, k).
pub fn bprime_hilbert(h: &HVector, k: usize) -> usize {
    conjecture_rhs(h, k)
}

/// dim {x ∈ B_k : x·S_d = 0} for d = 0..=window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Value {
    pub k: usize,
    pub window: usize,
    /// Index d holds the truncated torsion for the window d.
    pub values: Vec<usize>,
    pub value: usize,
    /// The last two windows (both at least 1) agree.
    pub stabilized: bool,
}

impl H0Value {
    fn from_values(k: usize, values: Vec<usize>) -> Result<Self> {
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invariant(
                "torsion-monotone",
                format!("truncated torsion in degree {k} decreased: {values:?}"),
            ));
        }
        let window = values.len() - 1;
        let stabilized = window >= 2 && values[window] == values[window - 1];
        Ok(H0Value {
            k,
            window,
            value: values[window],
            values,
            stabilized,
        })
    }
}

/// dim X_{top−j} for j = 1..=depth (index j − 1).
fn annihilator_chain(module: &mut AlexanderModule, top: usize, depth: usize) -> Result<Vec<usize>> {
    let sys = &mut module.system;
    sys.extend_to(top)?;
    let n = sys.nvars();
    let mut upper: Echelon<Rational> = rref(&Qq, Vec::new(), sys.level_dim(top));
    let mut out = Vec::with_capacity(depth);
    let bottom = top.saturating_sub(depth);
    for s in (bottom..top).rev() {
        let ws = sys.level_dim(s);
        let wu = sys.level_dim(s + 1);
        let mut is_pivot = vec![false; wu];
        for &p in &upper.pivots {
            is_pivot[p] = true;
        }
        let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
        if ws > 0 {
            for l in 0..n {
                let mut dt = vec![vec![Rational::zero(); ws]; wu];
                for (t, row) in sys.derivative(s + 1, l).iter().enumerate() {
                    for (u, c) in row {
                        dt[*u][t] = c.clone();
                    }
                }
                for u in (0..wu).filter(|&u| !is_pivot[u]) {
                    let mut r = dt[u].clone();
                    for (b, &p) in upper.rows.iter().zip(&upper.pivots) {
                        if b[u].is_zero() {
                            continue;
                        }
                        for (x, y) in r.iter_mut().zip(&dt[p]) {
                            if !y.is_zero() {
                                *x -= &b[u] * y;
                            }
                        }
                    }
                    let sparse: Vec<(usize, Rational)> = r
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    if !sparse.is_empty() {
                        rows.push(sparse);
                    }
                }
            }
        }
        let kernel = if ws == 0 { Vec::new() } else { sys.kernel(&rows, ws)? };
        upper = rref(&Qq, kernel, ws);
        out.push(upper.rank());
    }
    Ok(out)
}

/// Truncated torsion of B_k for windows d = 0..=window; extends the inverse
/// system to degree k + window.
pub fn h0_torsion(module: &mut AlexanderModule, k: usize, window: usize) -> Result<H0Value> {
    if k < 2 {
        return Err(Error::Input(format!("B starts in degree 2, got k = {k}")));
    }
    let mut values = vec![0];
    for d in 1..=window {
        let chain = annihilator_chain(module, k - 2 + d, d)?;
        values.push(chain[d - 1]);
    }
    H0Value::from_values(k, values)
}

/// Truncated torsion for k = 2..=kmax sharing one descent per top degree.
pub fn h0_table(module: &mut AlexanderModule, kmax: usize, window: usize) -> Result<Vec<H0Value>> {
    if kmax < 2 {
        return Ok(Vec::new());
    }
    let mut values: Vec<Vec<usize>> = (2..=kmax).map(|_| vec![0; window + 1]).collect();
    for top in 1..=kmax - 2 + window {
        let depth = window.min(top);
        let chain = annihilator_chain(module, top, depth)?;
        for (j, &dim) in chain.iter().enumerate() {
            let d = j + 1;
            let m = top - d;
            if m + 2 <= kmax {
                values[m][d] = dim;
            }
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(m, v)| H0Value::from_values(m + 2, v))
        .collect()
}

/// One degree of the sheaf-sequence bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionRow {
    pub k: usize,
    pub b: usize,
    pub bprime: usize,
    pub h0: usize,
    pub h0_stabilized: bool,
    /// dim B′_k − dim B_k + dim H⁰_k, meaningful only if B and B′ define the
    /// same sheaf.
    pub h1_inferred: i64,
    pub conjectural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub rows: Vec<TorsionRow>,
    /// False when some inferred H¹ is negative.
    pub consistent: bool,
}

impl TorsionReport {
    pub fn row(&self, k: usize) -> Option<&TorsionRow> {
        self.rows.iter().find(|r| r.k == k)
    }
}

/// Combines dim B_k, dim B′_k and H⁰_k (index 0 is k = 2).
pub fn sheaf_sequence_report(b_dims: &[usize], bprime_dims: &[usize], h0: &[H0Value]) -> Result<TorsionReport> {
    if b_dims.len() != bprime_dims.len() || b_dims.len() != h0.len() {
        return Err(Error::Dimension("degree ranges differ".into()));
    }
    let rows: Vec<TorsionRow> = b_dims
        .iter()
        .zip(bprime_dims)
        .zip(h0)
        .enumerate()
        .map(|(i, ((&b, &bp), h))| TorsionRow {
            k: i + 2,
            b,
            bprime: bp,
            h0: h.value,
            h0_stabilized: h.stabilized,
            h1_inferred: bp as i64 - b as i64 + h.value as i64,
            conjectural: true,
        })
        .collect();
    let consistent = rows.iter().all(|r| r.h1_inferred >= 0);
    Ok(TorsionReport { rows, consistent })
}

/// Full report for k = 2..=kmax.
pub fn torsion_report(module: &mut AlexanderModule, h: &HVector, kmax: usize, window: usize) -> Result<TorsionReport> {
    let b: Vec<usize> = (2..=kmax).map(|k| module.b_dim(k)).collect::<Result<_>>()?;
    let bp: Vec<usize> = (2..=kmax).map(|k| bprime_hilbert(h, k)).collect();
    let h0 = h0_table(module, kmax, window)?;
    sheaf_sequence_report(&b, &bp, &h0)
}
