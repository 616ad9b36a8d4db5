use itertools::Itertools;

use super::{bits, format_subset, full, size, subset_of, Subset, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// The rank-2 flats of a central arrangement. Every pair of hyperplanes lies
/// in exactly one flat; pairs not covered by an explicit flat form implicit
/// double flats, which are stored explicitly after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineCombinatorics {
    n: usize,
    flats: Vec<Subset>,
}

impl LineCombinatorics {
    /// Validates the given flats and completes them with the implicit doubles.
    pub fn new(n: usize, flats: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::Validation(format!(
                "hyperplane count must be in 1..={MAX_ELEMENTS}, got {n}"
            )));
        }
        let mut explicit = Vec::with_capacity(flats.len());
        for (k, f) in flats.iter().enumerate() {
            if f.len() < 2 {
                return Err(Error::Validation(format!("flat {k} has fewer than 2 elements")));
            }
            if let Some(&bad) = f.iter().find(|&&i| i >= n) {
                return Err(Error::Validation(format!(
                    "flat {k} mentions hyperplane {bad} but n = {n}"
                )));
            }
            let s = subset_of(f.iter().copied());
            if size(s) != f.len() {
                return Err(Error::Validation(format!("flat {k} repeats an element")));
            }
            explicit.push(s);
        }
        for (a, b) in explicit.iter().tuple_combinations() {
            if size(a & b) >= 2 {
                return Err(Error::Validation(format!(
                    "flats {} and {} share more than one hyperplane",
                    format_subset(*a),
                    format_subset(*b)
                )));
            }
        }
        let mut all = explicit;
        for (i, j) in (0..n).tuple_combinations() {
            let pair = subset_of([i, j]);
            if !all.iter().any(|f| f & pair == pair) {
                all.push(pair);
            }
        }
        all.sort_unstable_by_key(|&f| (bits(f).collect::<Vec<_>>(), f));
        Ok(LineCombinatorics { n, flats: all })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All rank-2 flats, doubles included, sorted by their element lists.
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    /// Flats with at least three elements.
    pub fn multiple_flats(&self) -> impl Iterator<Item = Subset> + '_ {
        self.flats.iter().copied().filter(|&f| size(f) >= 3)
    }

    pub fn flat_of_pair(&self, i: usize, j: usize) -> Subset {
        let pair = subset_of([i, j]);
        *self
            .flats
            .iter()
            .find(|&&f| f & pair == pair)
            .expect("every pair lies in a flat")
    }

    /// Flats restricted to `s`, keeping those with at least two elements.
    pub fn induced(&self, s: Subset) -> Vec<Subset> {
        self.flats
            .iter()
            .map(|f| f & s)
            .filter(|f| size(*f) >= 2)
            .collect()
    }

    /// A single flat containing every hyperplane.
    pub fn is_pencil(&self) -> bool {
        self.n >= 3 && self.flats.len() == 1
    }

    /// All hyperplanes but one pass through a common flat, and n >= 3.
    pub fn is_near_pencil(&self) -> bool {
        self.n >= 4
            && self
                .multiple_flats()
                .any(|f| size(f) == self.n - 1)
    }

    /// Relabels hyperplane `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || perm.iter().copied().sorted().ne(0..self.n) {
            return Err(Error::Validation("not a permutation".into()));
        }
        let flats: Vec<Vec<usize>> = self
            .multiple_flats()
            .map(|f| bits(f).map(|i| perm[i]).sorted().collect())
            .collect();
        Self::new(self.n, &flats)
    }

    pub fn ground(&self) -> Subset {
        full(self.n)
    }
}

/// Möbius value of a rank-2 flat: |flat| − 1.
pub fn mobius(lc: &LineCombinatorics, flat: Subset) -> Result<usize> {
    if lc.flats.contains(&flat) {
        Ok(size(flat) - 1)
    } else {
        Err(Error::Validation(format!(
            "{} is not a flat of this arrangement",
            format_subset(flat)
        )))
    }
}

/// Sub-arrangements of size in `min_size..=max_size`, each with its induced
/// flats, in order of size and then lexicographic element lists.
pub fn subarrangements(
    lc: &LineCombinatorics,
    min_size: usize,
    max_size: usize,
) -> impl Iterator<Item = (Subset, Vec<Subset>)> + '_ {
    let top = max_size.min(lc.n);
    (min_size..=top).flat_map(move |k| {
        (0..lc.n).combinations(k).map(move |c| {
            let s = subset_of(c);
            (s, lc.induced(s))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn doubles_are_completed() {
        let lc = LineCombinatorics::new(4, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(lc.flats().len(), 4);
        assert_eq!(lc.flat_of_pair(0, 2), subset_of([0, 1, 2]));
        assert_eq!(lc.flat_of_pair(2, 3), subset_of([2, 3]));
    }

    #[test]
    fn overlapping_flats_rejected() {
        let err = LineCombinatorics::new(5, &[vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(matches!(err, Err(Error::Validation(_))));
        assert!(LineCombinatorics::new(3, &[vec![0, 5]]).is_err());
        assert!(LineCombinatorics::new(3, &[vec![1]]).is_err());
        assert!(LineCombinatorics::new(3, &[vec![1, 1, 2]]).is_err());
    }

    #[test]
    fn mobius_values() {
        let lc = LineCombinatorics::new(7, &[vec![0, 1, 2], vec![2, 3, 4, 5, 6]]).unwrap();
        assert_eq!(mobius(&lc, subset_of([0, 1, 2])).unwrap(), 2);
        assert_eq!(mobius(&lc, subset_of([0, 3])).unwrap(), 1);
        assert_eq!(mobius(&lc, subset_of([2, 3, 4, 5, 6])).unwrap(), 4);
        assert!(mobius(&lc, subset_of([0, 1])).is_err());
    }

    #[test]
    fn pairs_covered_once() {
        for a in registry::corpus() {
            let lc = &a.lc;
            let total: usize = lc.flats().iter().map(|&f| size(f) * (size(f) - 1) / 2).sum();
            assert_eq!(total, lc.n() * (lc.n() - 1) / 2, "{}", a.name);
        }
    }

    #[test]
    fn induced_flats() {
        let braid = registry::braid().lc;
        let s = subset_of([0, 1, 2]);
        assert_eq!(braid.induced(s), vec![s]);
        assert_eq!(braid.induced(braid.ground()), braid.flats().to_vec());
        let ceva = registry::ceva3().lc;
        let induced = ceva.induced(subset_of([0, 1, 3]));
        assert_eq!(induced, vec![subset_of([0, 1]), subset_of([0, 3]), subset_of([1, 3])]);
    }

    #[test]
    fn subarrangement_iteration() {
        let braid = registry::braid().lc;
        let all: Vec<_> = subarrangements(&braid, 3, 6).collect();
        assert_eq!(all.len(), 20 + 15 + 6 + 1);
        assert_eq!(all.last().unwrap().0, braid.ground());
    }

    #[test]
    fn pencil_shapes() {
        assert!(registry::pencil(4).unwrap().lc.is_pencil());
        assert!(!registry::pencil(4).unwrap().lc.is_near_pencil());
        assert!(registry::near_pencil(4).unwrap().lc.is_near_pencil());
        assert!(!registry::braid().lc.is_near_pencil());
    }
}
