//! Arrangement combinatorics: rank-2 flats, matroids, graphs.

mod graph;
mod lines;
mod matroid;
mod normals;

pub use graph::{graphic, Graph};
pub use lines::{mobius, subarrangements, LineCombinatorics};
pub use matroid::Matroid;
pub use normals::{from_normals, matroid_from_normals};

/// A subset of {0..63} as a bitmask.
pub type Subset = u64;

pub const MAX_ELEMENTS: usize = 64;

pub fn bits(s: Subset) -> impl Iterator<Item = usize> + Clone {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn subset_of(items: impl IntoIterator<Item = usize>) -> Subset {
    items.into_iter().fold(0, |acc, i| acc | (1u64 << i))
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn full(n: usize) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn format_subset(s: Subset) -> String {
    let items: Vec<String> = bits(s).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
