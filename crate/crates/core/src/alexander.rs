//! The linearized Alexander invariant B and Chen ranks.

use itertools::Itertools;
use num_traits::Zero;

use crate::combinatorics::{binomial, bits, subset_of, LineCombinatorics, Subset};
use crate::error::{Error, Result};
use crate::exactla::{rank, rref, Echelon, Qq, RankStrategy, Rational, SparseMatrix};
use crate::invsys::{InverseSystem, LinearPresentation};
use crate::osalgebra::{wedge, ExteriorElement};

/// A basis element (Y, j) of A_2: a flat and one of its non-minimal elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NbcPair {
    pub flat: Subset,
    pub index: usize,
}

pub fn nbc_basis_a2(lc: &LineCombinatorics) -> Vec<NbcPair> {
    lc.flats()
        .iter()
        .flat_map(|&y| {
            let min = y.trailing_zeros() as usize;
            bits(y)
                .filter(move |&j| j != min)
                .map(move |j| NbcPair { flat: y, index: j })
        })
        .collect()
}

/// α₂(Y, j) = e_j ∧ Σ_{i∈Y} e_i.
pub fn alpha2(pair: NbcPair) -> ExteriorElement {
    let mut sum = ExteriorElement::zero();
    for i in bits(pair.flat) {
        sum.add_term(1 << i, Rational::from_integer(1.into()));
    }
    wedge(&ExteriorElement::monomial(1 << pair.index), &sum)
}

/// Δ^lin = α₂ ⊗ id + δ₃: generators indexed by the monomials of E₂ (degree 2),
/// constant relation columns α₂(Y, j) (degree 2), and Koszul columns δ₃(e_abc)
/// with linear entries (degree 3).
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    pub n: usize,
    /// Monomials of E₂ in lexicographic order; generator g is `generators[g]`.
    pub generators: Vec<Subset>,
    pub generator_degrees: Vec<usize>,
    /// Degree-2 columns, entries over the generators.
    pub constant_columns: Vec<Vec<(usize, Rational)>>,
    /// Degree-3 columns, entries (variable, generator, coefficient).
    pub linear_columns: Vec<Vec<(usize, usize, Rational)>>,
}

impl GradedPresentation {
    fn generator_index(&self, s: Subset) -> usize {
        self.generators.binary_search_by_key(&bits(s).collect::<Vec<_>>(), |&g| bits(g).collect()).expect("E2 monomial")
    }
}

pub fn build_delta_lin(lc: &LineCombinatorics) -> GradedPresentation {
    let n = lc.n();
    let generators: Vec<Subset> = (0..n).combinations(2).map(subset_of).collect();
    let mut p = GradedPresentation {
        n,
        generator_degrees: vec![2; generators.len()],
        generators,
        constant_columns: Vec::new(),
        linear_columns: Vec::new(),
    };
    for pair in nbc_basis_a2(lc) {
        let col = alpha2(pair)
            .terms()
            .iter()
            .map(|(s, c)| (p.generator_index(*s), c.clone()))
            .collect();
        p.constant_columns.push(col);
    }
    for t in (0..n).combinations(3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let one = Rational::from_integer(1.into());
        p.linear_columns.push(vec![
            (a, p.generator_index(subset_of([b, c])), one.clone()),
            (b, p.generator_index(subset_of([a, c])), -one.clone()),
            (c, p.generator_index(subset_of([a, b])), one),
        ]);
    }
    p
}

fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    (0..n).combinations_with_replacement(d).collect()
}

/// The degree-k Macaulay matrix of the presentation: rows are relation
/// columns multiplied by monomials, columns are generator ⊗ degree-(k−2) monomials.
pub fn macaulay_matrix(p: &GradedPresentation, k: usize) -> Result<SparseMatrix> {
    if k < 2 {
        return Err(Error::Input(format!("B starts in degree 2, got k = {k}")));
    }
    let mons = monomials(p.n, k - 2);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let nm = mons.len();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for col in &p.constant_columns {
        for (mi, _) in mons.iter().enumerate() {
            rows.push(col.iter().map(|(g, c)| (g * nm + mi, c.clone())).collect());
        }
    }
    if k >= 3 {
        for col in &p.linear_columns {
            for m in monomials(p.n, k - 3) {
                let row = col
                    .iter()
                    .map(|(l, g, c)| {
                        let mut mm = m.clone();
                        mm.push(*l);
                        mm.sort_unstable();
                        (g * nm + index[&mm], c.clone())
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    SparseMatrix::from_rows(p.generators.len() * nm, rows)
}

/// dim B_k = C(n,2)·dim S_{k−2} − rank M_k.
pub fn hilbert_b(p: &GradedPresentation, k: usize, strategy: RankStrategy) -> Result<usize> {
    let m = macaulay_matrix(p, k)?;
    Ok(m.ncols() - rank(&m, strategy)?)
}

/// The quotient of the generators by the constant block: generators become
/// the complement coordinates of rref(α₂), leaving only linear relations.
pub fn reduce_presentation(p: &GradedPresentation) -> (LinearPresentation, Echelon<Rational>) {
    let ng = p.generators.len();
    let dense: Vec<Vec<Rational>> = p
        .constant_columns
        .iter()
        .map(|col| {
            let mut v = vec![Rational::zero(); ng];
            for (g, c) in col {
                v[*g] = c.clone();
            }
            v
        })
        .collect();
    let e = rref(&Qq, dense, ng);
    let free = e.free_columns();
    let mut pos = vec![None; ng];
    for (k, &f) in free.iter().enumerate() {
        pos[f] = Some(k);
    }
    let project = |g: usize| -> Vec<(usize, Rational)> {
        if let Some(k) = pos[g] {
            return vec![(k, Rational::from_integer(1.into()))];
        }
        let r = e.pivots.iter().position(|&pc| pc == g).expect("pivot generator");
        free.iter()
            .enumerate()
            .filter(|(_, &f)| !e.rows[r][f].is_zero())
            .map(|(k, &f)| (k, -e.rows[r][f].clone()))
            .collect()
    };
    let relations = p
        .linear_columns
        .iter()
        .map(|col| {
            col.iter()
                .flat_map(|(l, g, c)| project(*g).into_iter().map(move |(k, v)| (*l, k, c * v)))
                .collect()
        })
        .collect();
    (
        LinearPresentation {
            nvars: p.n,
            ngens: free.len(),
            relations,
        },
        e,
    )
}

/// θ_k for k = 1..=kmax; θ₁ = n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChenSequence {
    values: Vec<usize>,
}

impl ChenSequence {
    pub fn new(values: Vec<usize>) -> Self {
        ChenSequence { values }
    }

    pub fn theta(&self, k: usize) -> usize {
        self.values[k - 1]
    }

    pub fn kmax(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// B together with the inverse system of its reduced presentation, so that
/// torsion computations can reuse the derivative matrices.
#[derive(Clone, Debug)]
pub struct AlexanderModule {
    pub presentation: GradedPresentation,
    pub system: InverseSystem,
    pub alpha_rank: usize,
}

impl AlexanderModule {
    pub fn new(lc: &LineCombinatorics, strategy: RankStrategy) -> Result<Self> {
        let presentation = build_delta_lin(lc);
        let (reduced, e) = reduce_presentation(&presentation);
        let system = InverseSystem::new(&reduced, strategy)?;
        Ok(AlexanderModule {
            presentation,
            system,
            alpha_rank: e.rank(),
        })
    }

    /// dim B_k for k >= 2.
    pub fn b_dim(&mut self, k: usize) -> Result<usize> {
        if k < 2 {
            return Err(Error::Input(format!("B starts in degree 2, got k = {k}")));
        }
        self.system.dim(k - 2)
    }

    pub fn chen_ranks(&mut self, kmax: usize) -> Result<ChenSequence> {
        if kmax < 2 {
            return Err(Error::Input(format!("kmax must be at least 2, got {kmax}")));
        }
        let mut values = vec![self.presentation.n];
        for k in 2..=kmax {
            values.push(self.b_dim(k)?);
        }
        Ok(ChenSequence::new(values))
    }
}

pub fn chen_ranks(lc: &LineCombinatorics, kmax: usize, strategy: RankStrategy) -> Result<ChenSequence> {
    AlexanderModule::new(lc, strategy)?.chen_ranks(kmax)
}

/// θ_k(F_n) = (k−1)·C(k+n−2, k) for k >= 2; θ₁ = n.
pub fn free_group_chen(n: usize, k: usize) -> usize {
    match k {
        0 => 0,
        1 => n,
        _ => (k - 1) * binomial(k + n - 2, k),
    }
}
