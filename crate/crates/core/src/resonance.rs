//! Components of the first resonance variety R¹(A).
//!
//! Local components come from flats of size at least three. Non-local
//! candidates come from neighborly partitions of sub-arrangements: the
//! vectors constant on blocks whose sums over every flat meeting two or more
//! blocks vanish. Nothing is reported unless the exact isotropy test
//! ∧²L ⊆ I₂ passes.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::alexander::ChenSequence;
use crate::combinatorics::{binomial, bits, format_subset, size, subset_of, LineCombinatorics, Subset};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, rref_canonical, RankStrategy, Rational, SparseMatrix};
use crate::osalgebra::OsAlgebra;

/// A partition of a ground set into disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    pub ground: Subset,
    /// Blocks ordered by their smallest element.
    pub blocks: Vec<Subset>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Subset>) -> Result<Self> {
        let mut ground = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::Validation("empty block".into()));
            }
            if ground & b != 0 {
                return Err(Error::Validation("blocks overlap".into()));
            }
            ground |= b;
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Partition { ground, blocks })
    }

    pub fn from_lists(lists: &[Vec<usize>]) -> Result<Self> {
        Self::new(lists.iter().map(|l| subset_of(l.iter().copied())).collect())
    }

    pub fn singletons(s: Subset) -> Self {
        Partition {
            ground: s,
            blocks: bits(s).map(|i| 1 << i).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Compact label such as `(05|13|24)`; elements are comma separated once
    /// any label has two digits.
    pub fn label(&self) -> String {
        let wide = self.ground >> 10 != 0;
        let blocks = self.blocks.iter().map(|&b| {
            let items = bits(b).map(|i| i.to_string());
            if wide {
                items.collect::<Vec<_>>().join(",")
            } else {
                items.collect::<String>()
            }
        });
        format!("({})", blocks.collect::<Vec<_>>().join("|"))
    }
}

/// Where a component came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentKind {
    Local { flat: Subset },
    Essential { subarrangement: Subset, partition: Partition },
}

/// A linear component L ⊆ Q^n of the (affine) resonance variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    /// Reduced row-echelon basis.
    pub basis: Vec<Vec<Rational>>,
    pub kind: ComponentKind,
    /// Set once ∧²L ⊆ I₂ has been checked exactly.
    pub verified: bool,
}

impl ResonanceComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn projective_dimension(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn is_local(&self) -> bool {
        matches!(self.kind, ComponentKind::Local { .. })
    }

    pub fn provenance(&self) -> String {
        match &self.kind {
            ComponentKind::Local { flat } => format!("flat {}", format_subset(*flat)),
            ComponentKind::Essential {
                subarrangement,
                partition,
            } => format!("partition {} of {}", partition.label(), format_subset(*subarrangement)),
        }
    }
}

/// h_r = number of components of projective dimension r.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HVector(pub BTreeMap<usize, usize>);

impl HVector {
    pub fn from_components(components: &[ResonanceComponent]) -> Self {
        let mut h = BTreeMap::new();
        for c in components {
            *h.entry(c.projective_dimension()).or_insert(0) += 1;
        }
        HVector(h)
    }

    pub fn get(&self, r: usize) -> usize {
        self.0.get(&r).copied().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.0.values().sum()
    }

    /// Largest projective dimension of a component (0 when there are none).
    pub fn max_dimension(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&r, &h)| (r, h))
    }
}

/// Search bounds for [`enumerate_components`].
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Largest sub-arrangement examined.
    pub max_subset: usize,
    /// Partitions with more blocks are audited but never reported.
    pub max_blocks: usize,
    /// Search nodes allowed per sub-arrangement.
    pub node_budget: usize,
    /// Total number of sub-arrangements allowed.
    pub subset_budget: usize,
}

impl SearchLimits {
    pub fn for_size(n: usize) -> Self {
        SearchLimits {
            max_subset: n,
            max_blocks: 5,
            node_budget: 200_000,
            subset_budget: 1 << 22,
        }
    }
}

/// Outcome of the component search.
#[derive(Clone, Debug)]
pub struct ResonanceResult {
    pub components: Vec<ResonanceComponent>,
    pub h: HVector,
    /// False when some limit cut the search.
    pub complete: bool,
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// dim ker(b ↦ a·b : A₁ → A₂) ≥ 2.
pub fn is_resonant(alg: &OsAlgebra, a: &[Rational]) -> Result<bool> {
    if a.len() != alg.n() {
        return Err(Error::Dimension(format!("vector of length {} for n = {}", a.len(), alg.n())));
    }
    if a.iter().all(Zero::is_zero) {
        return Err(Error::Validation("the zero vector has no projective class".into()));
    }
    let m = SparseMatrix::from_dense(&alg.multiplication_map(a))?;
    let r = rank(&m, RankStrategy::exact())?;
    Ok(alg.n() - r >= 2)
}

/// L_Y = {a : supp a ⊆ Y, Σ_Y a_i = 0} for each flat with |Y| ≥ 3.
pub fn local_components(lc: &LineCombinatorics) -> Vec<ResonanceComponent> {
    lc.multiple_flats()
        .map(|y| ResonanceComponent {
            basis: local_basis(lc.n(), y),
            kind: ComponentKind::Local { flat: y },
            verified: false,
        })
        .collect()
}

fn local_basis(n: usize, y: Subset) -> Vec<Vec<Rational>> {
    let elems: Vec<usize> = bits(y).collect();
    let last = *elems.last().expect("nonempty flat");
    elems[..elems.len() - 1]
        .iter()
        .map(|&i| {
            let mut v = vec![q(0); n];
            v[i] = q(1);
            v[last] = q(-1);
            v
        })
        .collect()
}

fn flat_condition(flats: &[Subset], p: &Partition, min_flat: usize) -> bool {
    flats.iter().filter(|&&y| size(y) >= min_flat).all(|&y| {
        let mu = size(y) - 1;
        p.blocks
            .iter()
            .all(|&b| size(y & b) < mu || y & !b == 0)
    })
}

/// μ(Y) ≤ |Y ∩ π| ⟹ Y ⊆ π for every induced flat Y and block π.
pub fn is_neighborly(lc: &LineCombinatorics, p: &Partition) -> bool {
    flat_condition(&lc.induced(p.ground), p, 2)
}

/// The neighborly condition restricted to induced flats with μ(Y) > 1.
pub fn is_almost_neighborly(lc: &LineCombinatorics, p: &Partition) -> bool {
    flat_condition(&lc.induced(p.ground), p, 3)
}

fn candidate_rows(lc: &LineCombinatorics, p: &Partition) -> Vec<Vec<(usize, Rational)>> {
    let n = lc.n();
    let mut rows: Vec<Vec<(usize, Rational)>> = (0..n)
        .filter(|&i| p.ground & (1 << i) == 0)
        .map(|i| vec![(i, q(1))])
        .collect();
    for &b in &p.blocks {
        for (i, j) in bits(b).tuple_windows() {
            rows.push(vec![(i, q(1)), (j, q(-1))]);
        }
    }
    for y in lc.induced(p.ground) {
        if !p.blocks.iter().any(|&b| y & !b == 0) {
            rows.push(bits(y).map(|i| (i, q(1))).collect());
        }
    }
    rows
}

/// Vectors supported on the partition's ground set, constant on blocks, with
/// vanishing sums over every induced flat not inside one block; `None` when
/// the space has dimension below two.
pub fn candidate_subspace(lc: &LineCombinatorics, p: &Partition) -> Result<Option<Vec<Vec<Rational>>>> {
    let m = SparseMatrix::from_rows(lc.n(), candidate_rows(lc, p))?;
    let k = kernel_basis(&m)?;
    Ok((k.len() >= 2).then_some(k))
}

/// N(L) = {v : v ∧ w ∈ I₂ for all w ∈ L}.
pub fn enlargement(alg: &OsAlgebra, basis: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let mut rows = Vec::new();
    for w in basis {
        rows.extend(alg.multiplication_map(w));
    }
    let m = SparseMatrix::from_dense(&rows)?;
    kernel_basis(&m)
}

fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        rref_canonical(vectors).len()
    }
}

fn contained(small: &[Vec<Rational>], big: &[Vec<Rational>]) -> bool {
    let mut all = big.to_vec();
    all.extend_from_slice(small);
    span_rank(&all) == big.len()
}

/// Subsets of {0..n−1} of the given size in increasing numeric order.
fn subsets_of_size(n: usize, k: usize) -> Vec<Subset> {
    (0..n).combinations(k).map(subset_of).collect()
}

struct Found {
    partition: Partition,
    overflow: bool,
}

/// Neighborly partitions of `s` with at least three blocks, found by
/// assigning union-find atoms of the induced doubles to blocks in canonical
/// order. Returns the partitions and whether the node budget ran out.
fn neighborly_partitions(lc: &LineCombinatorics, s: Subset, limits: &SearchLimits) -> (Vec<Found>, bool) {
    let flats = lc.induced(s);
    let elems: Vec<usize> = bits(s).collect();
    let mut parent: HashMap<usize, usize> = elems.iter().map(|&i| (i, i)).collect();
    fn find(parent: &mut HashMap<usize, usize>, i: usize) -> usize {
        let p = parent[&i];
        if p == i {
            return i;
        }
        let r = find(parent, p);
        parent.insert(i, r);
        r
    }
    for &y in flats.iter().filter(|&&y| size(y) == 2) {
        let mut it = bits(y);
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra.max(rb), ra.min(rb));
        }
    }
    let mut atoms: BTreeMap<usize, Subset> = BTreeMap::new();
    for &i in &elems {
        let r = find(&mut parent, i);
        *atoms.entry(r).or_insert(0) |= 1 << i;
    }
    let atoms: Vec<Subset> = atoms.into_values().collect();
    if atoms.len() < 3 {
        return (Vec::new(), false);
    }
    let multi: Vec<Subset> = flats.iter().copied().filter(|&y| size(y) >= 3).collect();

    struct Search<'a> {
        atoms: &'a [Subset],
        multi: &'a [Subset],
        flats: &'a [Subset],
        ground: Subset,
        blocks: Vec<Subset>,
        nodes: usize,
        budget: usize,
        max_blocks: usize,
        out: Vec<Found>,
        exhausted: bool,
    }

    impl Search<'_> {
        fn consistent(&self, assigned: Subset) -> bool {
            self.multi.iter().all(|&y| {
                self.blocks.iter().all(|&b| {
                    let inside = size(y & b);
                    inside < size(y) - 1 || y & assigned & !b == 0
                })
            })
        }

        fn go(&mut self, idx: usize, assigned: Subset) {
            if self.exhausted {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            if idx == self.atoms.len() {
                if self.blocks.len() >= 3 {
                    let p = Partition::new(self.blocks.clone()).expect("disjoint atoms");
                    debug_assert_eq!(p.ground, self.ground);
                    if flat_condition(self.flats, &p, 2) {
                        let overflow = p.len() > self.max_blocks;
                        self.out.push(Found { partition: p, overflow });
                    }
                }
                return;
            }
            let atom = self.atoms[idx];
            let now = assigned | atom;
            for b in 0..=self.blocks.len() {
                if b == self.blocks.len() {
                    self.blocks.push(atom);
                } else {
                    self.blocks[b] |= atom;
                }
                if self.consistent(now) {
                    self.go(idx + 1, now);
                }
                if b == self.blocks.len() - 1 && self.blocks[b] == atom {
                    self.blocks.pop();
                } else {
                    self.blocks[b] &= !atom;
                }
            }
        }
    }

    let mut search = Search {
        atoms: &atoms,
        multi: &multi,
        flats: &flats,
        ground: s,
        blocks: Vec::new(),
        nodes: 0,
        budget: limits.node_budget,
        max_blocks: limits.max_blocks,
        out: Vec::new(),
        exhausted: false,
    };
    search.go(0, 0);
    (search.out, search.exhausted)
}

struct Candidate {
    basis: Vec<Vec<Rational>>,
    subarrangement: Subset,
    partition: Partition,
    overflow: bool,
}

/// Enumerates components of R¹(A): local ones, then verified candidates from
/// neighborly partitions of sub-arrangements, closed under enlargement,
/// deduplicated, reduced to maximal elements and checked for disjointness.
pub fn enumerate_components(lc: &LineCombinatorics, alg: &OsAlgebra, limits: &SearchLimits) -> Result<ResonanceResult> {
    let n = lc.n();
    if alg.n() != n {
        return Err(Error::Dimension("algebra and combinatorics disagree on n".into()));
    }
    let mut complete = true;
    let mut cap = limits.max_subset.min(n);
    if cap < n {
        complete = false;
    }
    let mut total = 0usize;
    for k in 3..=cap {
        total = total.saturating_add(binomial(n, k));
        if total > limits.subset_budget {
            cap = k - 1;
            complete = false;
            break;
        }
    }

    let subsets: Vec<Subset> = (3..=cap).flat_map(|k| subsets_of_size(n, k)).collect();
    let per_subset: Vec<Result<(Vec<Candidate>, bool)>> = subsets
        .par_iter()
        .map(|&s| {
            let (found, exhausted) = neighborly_partitions(lc, s, limits);
            let mut cands = Vec::new();
            for f in found {
                if let Some(basis) = candidate_subspace(lc, &f.partition)? {
                    cands.push(Candidate {
                        basis,
                        subarrangement: s,
                        partition: f.partition,
                        overflow: f.overflow,
                    });
                }
            }
            Ok((cands, exhausted))
        })
        .collect();

    let mut unique: Vec<Candidate> = Vec::new();
    let mut seen: HashMap<Vec<Vec<Rational>>, usize> = HashMap::new();
    for r in per_subset {
        let (cands, exhausted) = r?;
        complete &= !exhausted;
        for c in cands {
            match seen.get(&c.basis) {
                Some(&i) => {
                    if unique[i].overflow && !c.overflow {
                        unique[i] = c;
                    }
                }
                None => {
                    seen.insert(c.basis.clone(), unique.len());
                    unique.push(c);
                }
            }
        }
    }

    let closed: Vec<Option<(Vec<Vec<Rational>>, Candidate)>> = unique
        .into_par_iter()
        .map(|c| {
            if !alg.isotropic(&c.basis) {
                return Ok(None);
            }
            let mut basis = c.basis.clone();
            loop {
                let bigger = enlargement(alg, &basis)?;
                if bigger.len() > basis.len() && alg.isotropic(&bigger) {
                    basis = bigger;
                } else {
                    break;
                }
            }
            Ok(Some((basis, c)))
        })
        .collect::<Result<_>>()?;

    let mut reported: Vec<ResonanceComponent> = local_components(lc)
        .into_iter()
        .map(|mut c| {
            c.verified = alg.isotropic(&c.basis);
            c
        })
        .collect();
    if let Some(bad) = reported.iter().find(|c| !c.verified) {
        return Err(Error::invariant(
            "local-isotropy",
            format!("local component of {} is not isotropic", bad.provenance()),
        ));
    }
    let mut overflow: Vec<Vec<Vec<Rational>>> = Vec::new();
    for (basis, c) in closed.into_iter().flatten() {
        if c.overflow {
            overflow.push(basis);
            continue;
        }
        let kind = reported
            .iter()
            .find(|r| r.is_local() && r.basis == basis)
            .map(|r| r.kind.clone())
            .unwrap_or(ComponentKind::Essential {
                subarrangement: c.subarrangement,
                partition: c.partition,
            });
        reported.push(ResonanceComponent {
            basis,
            kind,
            verified: true,
        });
    }

    let mut maximal: Vec<ResonanceComponent> = Vec::new();
    for c in reported {
        if maximal.iter().any(|m| m.basis == c.basis) {
            continue;
        }
        maximal.push(c);
    }
    let keep: Vec<bool> = (0..maximal.len())
        .map(|i| {
            !(0..maximal.len()).any(|j| {
                j != i && maximal[j].dim() > maximal[i].dim() && contained(&maximal[i].basis, &maximal[j].basis)
            })
        })
        .collect();
    let mut components: Vec<ResonanceComponent> = maximal
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    components.sort_by(|a, b| a.basis.cmp(&b.basis));

    for (a, b) in components.iter().tuple_combinations() {
        let mut all = a.basis.clone();
        all.extend_from_slice(&b.basis);
        if span_rank(&all) != a.dim() + b.dim() {
            return Err(Error::invariant(
                "resonance-disjointness",
                format!("components from {} and {} intersect", a.provenance(), b.provenance()),
            ));
        }
    }
    if overflow
        .iter()
        .any(|o| !components.iter().any(|c| contained(o, &c.basis)))
    {
        complete = false;
    }

    let h = HVector::from_components(&components);
    Ok(ResonanceResult { components, h, complete })
}

/// Partitions of the whole arrangement into at least three blocks, none a
/// singleton, that are almost neighborly but not neighborly. The flag is
/// false when the node budget ran out.
pub fn almost_neighborly_partitions(lc: &LineCombinatorics, node_budget: usize) -> (Vec<Partition>, bool) {
    let n = lc.n();
    let flats = lc.induced(lc.ground());
    let multi: Vec<Subset> = flats.iter().copied().filter(|&y| size(y) >= 3).collect();
    let mut blocks: Vec<Subset> = Vec::new();
    let mut out = Vec::new();
    let mut nodes = 0usize;

    fn go(
        i: usize,
        n: usize,
        lc: &LineCombinatorics,
        multi: &[Subset],
        blocks: &mut Vec<Subset>,
        out: &mut Vec<Partition>,
        nodes: &mut usize,
        budget: usize,
    ) -> bool {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        let assigned = if i >= 64 { u64::MAX } else { (1u64 << i) - 1 };
        let ok = multi.iter().all(|&y| {
            blocks
                .iter()
                .all(|&b| size(y & b) < size(y) - 1 || y & assigned & !b == 0)
        });
        if !ok {
            return true;
        }
        let singletons = blocks.iter().filter(|&&b| size(b) == 1).count();
        if singletons > n - i {
            return true;
        }
        if i == n {
            if blocks.len() >= 3 && singletons == 0 {
                let p = Partition::new(blocks.clone()).expect("disjoint blocks");
                if !is_neighborly(lc, &p) {
                    out.push(p);
                }
            }
            return true;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(1 << i);
            } else {
                blocks[b] |= 1 << i;
            }
            let cont = go(i + 1, n, lc, multi, blocks, out, nodes, budget);
            if blocks[b] == 1 << i {
                blocks.pop();
            } else {
                blocks[b] &= !(1 << i);
            }
            if !cont {
                return false;
            }
        }
        true
    }

    let complete = go(0, n, lc, &multi, &mut blocks, &mut out, &mut nodes, node_budget);
    out.sort();
    (out, complete)
}

/// (k−1)·C(r+k−1, k): the Hilbert function of B(p) for a component of
/// projective dimension r.
pub fn bp_hilbert(r: usize, k: usize) -> usize {
    (k - 1) * binomial(r + k - 1, k)
}

/// (k−1)·Σ_r h_r·C(r+k−1, k).
pub fn conjecture_rhs(h: &HVector, k: usize) -> usize {
    h.iter().map(|(r, c)| c * bp_hilbert(r, k)).sum()
}

/// One row of the comparison θ_k versus the conjectured value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub theta: usize,
    pub rhs: usize,
    pub difference: i64,
}

/// θ_k − conjecture_rhs(k) for each k; negative differences at or beyond the
/// stabilization index are a hard error.
pub fn lower_bound_check(
    theta: &ChenSequence,
    h: &HVector,
    ks: impl IntoIterator<Item = usize>,
    stabilization: Option<usize>,
) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for k in ks {
        if k < 2 || k > theta.kmax() {
            return Err(Error::Dimension(format!("θ_{k} not available")));
        }
        let t = theta.theta(k);
        let rhs = conjecture_rhs(h, k);
        let difference = t as i64 - rhs as i64;
        if difference < 0 && stabilization.is_some_and(|s| k >= s) {
            return Err(Error::invariant(
                "chen-lower-bound",
                format!("θ_{k} = {t} is below {rhs}"),
            ));
        }
        rows.push(BoundRow { k, theta: t, rhs, difference });
    }
    Ok(rows)
}

/// A random point Σ c_i b_i of a component, coefficients in [−50, 50].
pub fn sample_point(basis: &[Vec<Rational>], rng: &mut impl rand::Rng) -> Vec<Rational> {
    let n = basis.first().map_or(0, Vec::len);
    loop {
        let mut v = vec![q(0); n];
        for b in basis {
            let c = q(rng.gen_range(-50..=50));
            for (x, y) in v.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A random integer point of the hyperplane Σ a_i = 0 lying on no component,
/// or `None` when some component fills that hyperplane.
pub fn sample_off_components(
    n: usize,
    components: &[ResonanceComponent],
    rng: &mut impl rand::Rng,
) -> Option<Vec<Rational>> {
    if n < 2 || components.iter().any(|c| c.dim() + 1 >= n) {
        return None;
    }
    loop {
        let mut v: Vec<Rational> = (0..n - 1).map(|_| q(rng.gen_range(-50..=50))).collect();
        let s: Rational = v.iter().sum();
        v.push(-s);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        if !components.iter().any(|c| contained(std::slice::from_ref(&v), &c.basis)) {
            return Some(v);
        }
    }
}

/// Σ a_i = 0 for every basis vector.
pub fn in_sum_hyperplane(basis: &[Vec<Rational>]) -> bool {
    basis.iter().all(|v| v.iter().sum::<Rational>().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vecq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn run(a: &registry::Arrangement) -> ResonanceResult {
        let alg = OsAlgebra::new(&a.matroid, 2);
        enumerate_components(&a.lc, &alg, &SearchLimits::for_size(a.n())).unwrap()
    }

    #[test]
    fn braid_has_five_components() {
        let a = registry::braid();
        let r = run(&a);
        assert!(r.complete);
        assert_eq!(r.components.len(), 5);
        assert_eq!(r.h.get(1), 5);
        let ess: Vec<_> = r.components.iter().filter(|c| !c.is_local()).collect();
        assert_eq!(ess.len(), 1);
        let expected = rref_canonical(&[vecq(&[1, -1, 0, -1, 0, 1]), vecq(&[1, 0, -1, 0, -1, 1])]);
        assert_eq!(ess[0].basis, expected);
    }

    #[test]
    fn braid_local_component_equations() {
        let a = registry::braid();
        let locals = local_components(&a.lc);
        assert_eq!(locals.len(), 4);
        let y = subset_of([1, 4, 5]);
        let l = locals.iter().find(|c| c.kind == ComponentKind::Local { flat: y }).unwrap();
        assert_eq!(l.basis, local_basis(6, y));
        for v in &l.basis {
            assert!(v[0].is_zero() && v[2].is_zero() && v[3].is_zero());
            assert!((&v[1] + &v[4] + &v[5]).is_zero());
        }
    }

    #[test]
    fn neighborly_examples() {
        let braid = registry::braid();
        let p = Partition::from_lists(&[vec![0, 5], vec![1, 3], vec![2, 4]]).unwrap();
        assert!(is_neighborly(&braid.lc, &p));
        let q01 = Partition::from_lists(&[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert!(!is_almost_neighborly(&braid.lc, &q01));

        let dm = registry::deleted_maclane();
        let p = Partition::from_lists(&[vec![0, 6], vec![1, 3], vec![2, 7], vec![4, 5]]).unwrap();
        assert!(!is_neighborly(&dm.lc, &p));
        assert!(is_almost_neighborly(&dm.lc, &p));

        let ceva = registry::ceva3();
        let p = Partition::from_lists(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        assert!(is_neighborly(&ceva.lc, &p));
    }

    #[test]
    fn almost_neighborly_search() {
        let dm = registry::deleted_maclane();
        let (found, complete) = almost_neighborly_partitions(&dm.lc, 1_000_000);
        assert!(complete);
        let p = Partition::from_lists(&[vec![0, 6], vec![1, 3], vec![2, 7], vec![4, 5]]).unwrap();
        assert!(found.contains(&p));
        assert!(found.iter().all(|q| is_almost_neighborly(&dm.lc, q) && !is_neighborly(&dm.lc, q)));
        let (ceva, _) = almost_neighborly_partitions(&registry::ceva3().lc, 1_000_000);
        assert!(ceva.is_empty());
    }

    #[test]
    fn candidate_examples() {
        let braid = registry::braid();
        let p = Partition::from_lists(&[vec![0, 5], vec![1, 3], vec![2, 4]]).unwrap();
        let c = candidate_subspace(&braid.lc, &p).unwrap().unwrap();
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!((&v[0] + &v[1] + &v[2]).is_zero());
            assert_eq!(v[0], v[5]);
            assert_eq!(v[1], v[3]);
            assert_eq!(v[2], v[4]);
        }
        let single = Partition::singletons(subset_of([0, 1, 2]));
        let c = candidate_subspace(&braid.lc, &single).unwrap().unwrap();
        assert_eq!(c, local_basis(6, subset_of([0, 1, 2])));

        let ceva = registry::ceva3();
        let p = Partition::from_lists(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        assert_eq!(candidate_subspace(&ceva.lc, &p).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn resonance_membership() {
        let a = registry::braid();
        let alg = OsAlgebra::new(&a.matroid, 2);
        assert!(is_resonant(&alg, &vecq(&[1, -1, 0, -1, 0, 1])).unwrap());
        assert!(!is_resonant(&alg, &vecq(&[1, 1, 1, 1, 1, 1])).unwrap());
        let r = run(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let v = sample_off_components(6, &r.components, &mut rng).unwrap();
            assert!(!is_resonant(&alg, &v).unwrap());
        }
        assert!(is_resonant(&alg, &vecq(&[0; 6])).is_err());
        let pencil = registry::pencil(4).unwrap();
        assert!(sample_off_components(4, &run(&pencil).components, &mut rng).is_none());
    }

    #[test]
    fn pencils_have_one_component() {
        for m in 3..=5 {
            let r = run(&registry::pencil(m).unwrap());
            assert_eq!(r.components.len(), 1);
            assert_eq!(r.h.get(m - 2), 1);
        }
        let r = run(&registry::generic(4).unwrap());
        assert!(r.components.is_empty());
    }

    #[test]
    fn rhs_examples() {
        let h = HVector([(1, 5)].into_iter().collect());
        assert_eq!(conjecture_rhs(&h, 4), 15);
        let h = HVector([(1, 16)].into_iter().collect());
        assert_eq!(conjecture_rhs(&h, 5), 64);
        assert_eq!(conjecture_rhs(&HVector::default(), 7), 0);
        assert_eq!(bp_hilbert(1, 3), 2);
        assert_eq!(bp_hilbert(2, 2), 3);
    }

    #[test]
    fn lower_bound_allows_negative_before_stabilization() {
        let theta = ChenSequence::new(vec![9, 12, 40, 56, 64]);
        let h = HVector([(1, 16)].into_iter().collect());
        let rows = lower_bound_check(&theta, &h, 2..=5, Some(5)).unwrap();
        assert_eq!(rows[0].difference, -4);
        assert_eq!(rows[1].difference, 8);
        assert_eq!(rows[3].difference, 0);
        assert!(lower_bound_check(&theta, &h, 2..=5, Some(2)).is_err());
    }
}
