use itertools::Itertools;

use super::{bits, full, size, subset_of, LineCombinatorics, Subset};
use crate::error::{Error, Result};

/// A matroid on {0..n−1} given by its circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    circuits: Vec<Subset>,
}

impl Matroid {
    /// Builds a matroid from its circuits; the rank is computed greedily.
    pub fn from_circuits(n: usize, mut circuits: Vec<Subset>) -> Result<Self> {
        if circuits.iter().any(|&c| c & !full(n) != 0 || c == 0) {
            return Err(Error::Validation("circuit outside the ground set".into()));
        }
        circuits.sort_unstable_by_key(|&c| (size(c), bits(c).collect::<Vec<_>>()));
        circuits.dedup();
        let mut m = Matroid {
            n,
            rank: 0,
            circuits,
        };
        m.rank = m.rank_of(full(n));
        Ok(m)
    }

    /// Rank-3 matroid of a line arrangement: collinear triples plus every
    /// 4-set containing none of them. A single flat holding all elements
    /// gives the rank-2 uniform matroid instead.
    pub fn from_line_combinatorics(lc: &LineCombinatorics) -> Self {
        let n = lc.n();
        let ground = full(n);
        let mut circuits = Vec::new();
        if lc.flats().len() == 1 && lc.flats()[0] == ground && n >= 3 {
            circuits.extend((0..n).combinations(3).map(subset_of));
        } else {
            let mut triples = Vec::new();
            for f in lc.multiple_flats() {
                triples.extend(bits(f).combinations(3).map(subset_of));
            }
            let dependent = |s: Subset| triples.iter().any(|&t| t & s == t);
            circuits.extend(triples.iter().copied());
            circuits.extend(
                (0..n)
                    .combinations(4)
                    .map(subset_of)
                    .filter(|&s| !dependent(s)),
            );
        }
        Matroid::from_circuits(n, circuits).expect("circuits inside ground set")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        !self.circuits.iter().any(|&c| c & s == c)
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        let mut basis: Subset = 0;
        for i in bits(s) {
            if self.is_independent(basis | (1 << i)) {
                basis |= 1 << i;
            }
        }
        size(basis)
    }

    /// Maximal rank-2 sets with at least two elements, i.e. the closures of pairs.
    pub fn rank2_flats(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = Vec::new();
        for (i, j) in (0..self.n).tuple_combinations() {
            let pair = subset_of([i, j]);
            if out.iter().any(|&f| f & pair == pair) {
                continue;
            }
            let closure = (0..self.n)
                .filter(|&k| self.rank_of(pair | (1 << k)) == 2)
                .fold(pair, |acc, k| acc | (1 << k));
            out.push(closure);
        }
        out.sort_unstable_by_key(|&f| bits(f).collect::<Vec<_>>());
        out
    }

    /// Rank-2 line combinatorics recovered from the matroid.
    pub fn line_combinatorics(&self) -> Result<LineCombinatorics> {
        let flats: Vec<Vec<usize>> = self
            .rank2_flats()
            .into_iter()
            .filter(|&f| size(f) >= 3)
            .map(|f| bits(f).collect())
            .collect();
        LineCombinatorics::new(self.n, &flats)
    }

    /// Checks the circuit axioms: no circuit contains another, and strong
    /// elimination holds for every pair of circuits sharing an element.
    pub fn check_circuit_axioms(&self) -> Result<()> {
        for (&a, &b) in self.circuits.iter().tuple_combinations() {
            if a & b == a || a & b == b {
                return Err(Error::invariant(
                    "circuit-axioms",
                    format!("circuit {a:#b} contains {b:#b} or vice versa"),
                ));
            }
            for e in bits(a & b) {
                let rest = (a | b) & !(1 << e);
                if !self.circuits.iter().any(|&c| c & rest == c) {
                    return Err(Error::invariant(
                        "circuit-axioms",
                        format!("elimination fails for {a:#b}, {b:#b} at {e}"),
                    ));
                }
            }
        }
        Ok(())
    }
}
