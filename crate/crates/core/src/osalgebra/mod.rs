//! The Orlik-Solomon algebra A = E/I of a matroid.
//!
//! Each graded piece I_d is stored as a reduced row-echelon basis over the
//! monomials of E_d (ascending element lists, ordered lexicographically).
//! A_d is represented by the canonical complement: the monomials that are
//! not pivots of I_d.

mod exterior;

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::Zero;

pub use exterior::{boundary, boundary_of, wedge, wedge_sign, ExteriorElement};

use crate::combinatorics::{bits, binomial, size, subset_of, Matroid, Subset};
use crate::exactla::{rref, Echelon, Qq, Rational};

/// A subspace of E_d in canonical row-echelon form.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub degree: usize,
    pub basis: Echelon<Rational>,
}

impl GradedSubspace {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols
    }

    /// Reduces `v` modulo the span; returns the residual.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.rows.iter().zip(&self.basis.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Graded pieces of the Orlik-Solomon ideal and algebra up to the matroid rank.
#[derive(Clone, Debug)]
pub struct OsAlgebra {
    n: usize,
    top: usize,
    monomials: Vec<Vec<Subset>>,
    index: Vec<HashMap<Subset, usize>>,
    ideal: Vec<GradedSubspace>,
    complement: Vec<Vec<usize>>,
    comp_pos: Vec<Vec<Option<usize>>>,
}

impl OsAlgebra {
    /// Builds I_d and A_d for d = 0..=max(rank, min_degree) (capped at n).
    pub fn new(m: &Matroid, min_degree: usize) -> Self {
        let n = m.n();
        let top = m.rank().max(min_degree).min(n);
        let mut alg = OsAlgebra {
            n,
            top,
            monomials: Vec::new(),
            index: Vec::new(),
            ideal: Vec::new(),
            complement: Vec::new(),
            comp_pos: Vec::new(),
        };
        for d in 0..=top {
            let mons: Vec<Subset> = (0..n).combinations(d).map(subset_of).collect();
            let index = mons.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            alg.monomials.push(mons);
            alg.index.push(index);
        }
        for d in 0..=top {
            let piece = alg.generate_ideal(m, d);
            let mut is_pivot = vec![false; piece.ambient()];
            for &p in &piece.basis.pivots {
                is_pivot[p] = true;
            }
            let comp: Vec<usize> = (0..piece.ambient()).filter(|&i| !is_pivot[i]).collect();
            let mut pos = vec![None; piece.ambient()];
            for (k, &i) in comp.iter().enumerate() {
                pos[i] = Some(k);
            }
            alg.ideal.push(piece);
            alg.complement.push(comp);
            alg.comp_pos.push(pos);
        }
        alg
    }

    fn generate_ideal(&self, m: &Matroid, d: usize) -> GradedSubspace {
        let ambient = self.monomials[d].len();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        if d >= 2 {
            let mut seen = std::collections::HashSet::new();
            for &c in m.circuits() {
                let k = size(c);
                if k < 2 || k - 1 > d {
                    continue;
                }
                let dc = boundary(c);
                for t in (0..self.n).combinations(d + 1 - k) {
                    let t = subset_of(t);
                    if size(t & c) > 1 || !seen.insert((t, c)) {
                        continue;
                    }
                    let g = wedge(&ExteriorElement::monomial(t), &dc);
                    if !g.is_zero() {
                        rows.push(self.coords(d, &g));
                    }
                }
            }
        }
        GradedSubspace {
            degree: d,
            basis: rref(&Qq, rows, ambient),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest degree with stored pieces.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn monomials(&self, d: usize) -> &[Subset] {
        &self.monomials[d]
    }

    pub fn monomial_index(&self, d: usize, s: Subset) -> usize {
        self.index[d][&s]
    }

    pub fn ideal(&self, d: usize) -> &GradedSubspace {
        &self.ideal[d]
    }

    /// dim A_d; zero above the stored range.
    pub fn a_dim(&self, d: usize) -> usize {
        self.complement.get(d).map_or(0, Vec::len)
    }

    pub fn a_dims(&self) -> Vec<usize> {
        (0..=self.top).map(|d| self.a_dim(d)).collect()
    }

    /// Monomials spanning the canonical complement basis of A_d.
    pub fn a_basis(&self, d: usize) -> Vec<Subset> {
        self.complement[d].iter().map(|&i| self.monomials[d][i]).collect()
    }

    /// Coordinates of a homogeneous element over the monomials of E_d.
    pub fn coords(&self, d: usize, x: &ExteriorElement) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.monomials[d].len()];
        for (s, c) in x.terms() {
            v[self.index[d][s]] = c.clone();
        }
        v
    }

    /// Image in A_d (complement coordinates) of a vector over E_d.
    pub fn project(&self, d: usize, v: &[Rational]) -> Vec<Rational> {
        if d > self.top {
            return Vec::new();
        }
        let r = self.ideal[d].reduce(v);
        self.complement[d].iter().map(|&i| r[i].clone()).collect()
    }

    pub fn project_element(&self, x: &ExteriorElement) -> Vec<Rational> {
        match x.degree() {
            None => Vec::new(),
            Some(d) => self.project(d, &self.coords(d, x)),
        }
    }

    /// Matrix (rows: A_{p+1}, columns: A_p) of left multiplication by e_l.
    pub fn mult_matrix(&self, l: usize, p: usize) -> Vec<Vec<Rational>> {
        let rows = self.a_dim(p + 1);
        let cols = self.a_dim(p);
        let mut out = vec![vec![Rational::zero(); cols]; rows];
        if rows == 0 {
            return out;
        }
        for (j, &mi) in self.complement[p].iter().enumerate() {
            let m = self.monomials[p][mi];
            if m & (1 << l) != 0 {
                continue;
            }
            let sign = wedge_sign(1 << l, m);
            let mut v = vec![Rational::zero(); self.monomials[p + 1].len()];
            v[self.index[p + 1][&(m | (1 << l))]] = Rational::from_integer(sign.into());
            for (i, c) in self.project(p + 1, &v).into_iter().enumerate() {
                out[i][j] = c;
            }
        }
        out
    }

    /// Matrix (rows: A_2, columns: A_1 = E_1) of b ↦ a·b.
    pub fn multiplication_map(&self, a: &[Rational]) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.n]; self.a_dim(2)];
        for l in 0..self.n {
            if a[l].is_zero() {
                continue;
            }
            let ml = self.mult_matrix(l, 1);
            for (o, r) in out.iter_mut().zip(&ml) {
                for (x, y) in o.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x += &a[l] * y;
                    }
                }
            }
        }
        out
    }

    pub fn in_ideal(&self, x: &ExteriorElement) -> bool {
        match x.degree() {
            None => true,
            Some(d) if d <= self.top => self.ideal[d].contains(&self.coords(d, x)),
            Some(_) => true,
        }
    }

    /// True iff every pairwise wedge of the given degree-1 vectors lies in I_2.
    pub fn isotropic(&self, basis: &[Vec<Rational>]) -> bool {
        let elems: Vec<ExteriorElement> = basis.iter().map(|v| ExteriorElement::linear(v)).collect();
        elems
            .iter()
            .tuple_combinations()
            .all(|(a, b)| self.in_ideal(&wedge(a, b)))
    }
}

/// Number of nbc (no-broken-circuit) independent sets of size d.
pub fn nbc_count(m: &Matroid, d: usize) -> usize {
    let broken: Vec<Subset> = m
        .circuits()
        .iter()
        .map(|&c| c & !(1 << c.trailing_zeros()))
        .collect();
    (0..m.n())
        .combinations(d)
        .map(subset_of)
        .filter(|&s| m.is_independent(s) && !broken.iter().any(|&b| b & s == b))
        .count()
}

/// dim A_d computed as C(n, d) − dim I_d.
pub fn a_dims(m: &Matroid) -> Vec<usize> {
    let alg = OsAlgebra::new(m, 0);
    (0..=alg.top())
        .map(|d| binomial(m.n(), d) - alg.ideal(d).dim())
        .collect()
}

/// I_d as a canonical subspace of E_d.
pub fn os_ideal_piece(m: &Matroid, d: usize) -> GradedSubspace {
    OsAlgebra::new(m, d).ideal(d).clone()
}

/// Every element of a monomial support as a list, for display.
pub fn monomial_label(s: Subset) -> String {
    bits(s).map(|i| i.to_string()).collect::<Vec<_>>().join("")
}
