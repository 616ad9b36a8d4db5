//! Hilbert functions of linearly presented modules via inverse systems.
//!
//! For a module M = S^g / (linear relations), the dual of M_m is the space
//! W_m of functionals on S_m ⊗ Q^g that vanish on the relations. W_1 is cut
//! out by the relations themselves; for m >= 2, W_m is the space of tuples
//! (c_l) in W_{m−1}^n with ∂_i c_j = ∂_j c_i, since a functional is determined
//! by its first derivatives in characteristic zero. Every level is stored
//! only through its derivative matrices D_l : W_m → W_{m−1}, read off from
//! the kernel vectors, so no polynomials are ever formed.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{certified_kernel, PrimeSource, RankMode, RankStrategy, Rational};

/// Sparse matrix rows `(col, value)`.
pub type SparseRows = Vec<Vec<(usize, Rational)>>;

/// A module generated in a single degree with relations linear in the variables.
#[derive(Clone, Debug)]
pub struct LinearPresentation {
    pub nvars: usize,
    pub ngens: usize,
    /// Each relation is Σ coef · x_var · gen.
    pub relations: Vec<Vec<(usize, usize, Rational)>>,
}

#[derive(Clone, Debug)]
pub struct InverseSystem {
    nvars: usize,
    dims: Vec<usize>,
    /// `deriv[m][l]` holds the rows of D_l : W_m → W_{m−1}.
    deriv: Vec<Vec<SparseRows>>,
    primes: PrimeSource,
    mode: RankMode,
}

impl InverseSystem {
    pub fn new(p: &LinearPresentation, strategy: RankStrategy) -> Result<Self> {
        strategy.validate()?;
        let mut sys = InverseSystem {
            nvars: p.nvars,
            dims: vec![p.ngens],
            deriv: vec![Vec::new()],
            primes: strategy.primes(),
            mode: strategy.mode,
        };
        let ncols = p.nvars * p.ngens;
        let rows: SparseRows = p
            .relations
            .iter()
            .map(|r| r.iter().map(|(l, g, c)| (l * p.ngens + g, c.clone())).collect())
            .filter(|r: &Vec<(usize, Rational)>| !r.is_empty())
            .collect();
        let kernel = sys.kernel(&rows, ncols)?;
        sys.push_level(kernel, p.ngens);
        Ok(sys)
    }

    /// Kernel of `rows` with the system's strategy, in free-variable normal form.
    pub fn kernel(&mut self, rows: &SparseRows, ncols: usize) -> Result<Vec<Vec<Rational>>> {
        let rows = merge_rows(rows);
        match self.mode {
            RankMode::Exact => crate::exactla::exact_kernel_of_rows(&rows, ncols),
            _ => certified_kernel(&rows, ncols, &mut self.primes),
        }
    }

    fn push_level(&mut self, kernel: Vec<Vec<Rational>>, prev: usize) {
        let mut d: Vec<SparseRows> = vec![vec![Vec::new(); prev]; self.nvars];
        for (u, v) in kernel.iter().enumerate() {
            for (idx, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    d[idx / prev][idx % prev].push((u, c.clone()));
                }
            }
        }
        self.dims.push(kernel.len());
        self.deriv.push(d);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Levels computed so far.
    pub fn computed(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn extend_to(&mut self, m: usize) -> Result<()> {
        while self.computed() < m {
            let level = self.computed() + 1;
            let prev = self.dims[level - 1];
            let n = self.nvars;
            let ncols = n * prev;
            if prev == 0 {
                self.push_level(Vec::new(), 0);
                continue;
            }
            let lower = &self.deriv[level - 1];
            let below = self.dims[level - 2];
            let mut rows: SparseRows = Vec::with_capacity(n * (n - 1) / 2 * below);
            for i in 0..n {
                for j in i + 1..n {
                    for s in 0..below {
                        let mut row: Vec<(usize, Rational)> = Vec::new();
                        for (t, c) in &lower[i][s] {
                            row.push((j * prev + t, c.clone()));
                        }
                        for (t, c) in &lower[j][s] {
                            row.push((i * prev + t, -c.clone()));
                        }
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
            let kernel = self.kernel(&rows, ncols)?;
            self.push_level(kernel, prev);
        }
        Ok(())
    }

    /// dim M_m = dim W_m.
    pub fn dim(&mut self, m: usize) -> Result<usize> {
        self.extend_to(m)?;
        Ok(self.dims[m])
    }

    /// dims W_0..W_m.
    pub fn dims(&mut self, m: usize) -> Result<Vec<usize>> {
        self.extend_to(m)?;
        Ok(self.dims[..=m].to_vec())
    }

    /// Rows of D_l : W_m → W_{m−1} (requires m <= computed()).
    pub fn derivative(&self, m: usize, l: usize) -> &SparseRows {
        &self.deriv[m][l]
    }

    pub fn level_dim(&self, m: usize) -> usize {
        self.dims[m]
    }

    pub fn primes_mut(&mut self) -> &mut PrimeSource {
        &mut self.primes
    }

    pub fn mode(&self) -> RankMode {
        self.mode
    }
}

fn merge_rows(rows: &SparseRows) -> SparseRows {
    rows.iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_by_key(|(c, _)| *c);
            let mut out: Vec<(usize, Rational)> = Vec::with_capacity(r.len());
            for (c, v) in r {
                match out.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => out.push((c, v)),
                }
            }
            out.retain(|(_, v)| !v.is_zero());
            out
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// Validates a presentation's indices.
pub fn check_presentation(p: &LinearPresentation) -> Result<()> {
    for r in &p.relations {
        if r.iter().any(|(l, g, _)| *l >= p.nvars || *g >= p.ngens) {
            return Err(Error::Dimension("relation index out of range".into()));
        }
    }
    Ok(())
}
