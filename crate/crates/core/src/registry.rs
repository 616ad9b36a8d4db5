//! Built-in example arrangements.

use itertools::Itertools;

use crate::combinatorics::{bits, graphic, size, subset_of, Graph, LineCombinatorics, Matroid, Subset};
use crate::error::{Error, Result};

/// An arrangement ready for analysis.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub name: String,
    pub lc: LineCombinatorics,
    pub matroid: Matroid,
    pub graph: Option<Graph>,
}

impl Arrangement {
    pub fn from_lines(name: impl Into<String>, lc: LineCombinatorics) -> Self {
        let matroid = Matroid::from_line_combinatorics(&lc);
        Arrangement {
            name: name.into(),
            lc,
            matroid,
            graph: None,
        }
    }

    pub fn from_graph(name: impl Into<String>, g: Graph) -> Result<Self> {
        let (lc, matroid, _) = graphic(&g)?;
        Ok(Arrangement {
            name: name.into(),
            lc,
            matroid,
            graph: Some(g),
        })
    }

    pub fn n(&self) -> usize {
        self.lc.n()
    }

    /// Clique counts κ_s (index 0 is s = 1) for graphic arrangements.
    pub fn clique_counts(&self) -> Option<Vec<usize>> {
        self.graph.as_ref().map(Graph::clique_counts)
    }

    /// The same arrangement with hyperplane `i` renamed `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let lc = self.lc.permuted(perm)?;
        if self.graph.is_some() || self.matroid.rank() != 3 {
            let circuits: Vec<Subset> = self
                .matroid
                .circuits()
                .iter()
                .map(|&c| subset_of(bits(c).map(|i| perm[i])))
                .collect();
            let matroid = Matroid::from_circuits(self.n(), circuits)?;
            return Ok(Arrangement {
                name: self.name.clone(),
                lc,
                matroid,
                graph: None,
            });
        }
        Ok(Arrangement::from_lines(self.name.clone(), lc))
    }
}

/// Normals of the braid arrangement, ordered to match the fixed labels:
/// flats {0,1,2}, {0,3,4}, {1,4,5}, {2,3,5}.
pub fn braid_normals() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![1, -1, 0],
        vec![1, 0, -1],
        vec![0, 0, 1],
        vec![0, 1, -1],
    ]
}

pub fn braid() -> Arrangement {
    let lc = LineCombinatorics::new(6, &[vec![0, 1, 2], vec![0, 3, 4], vec![1, 4, 5], vec![2, 3, 5]])
        .expect("braid flats");
    Arrangement::from_lines("braid", lc)
}

/// Lines of the affine plane over Z/3 on points labelled 3r + c.
fn ag23_lines() -> Vec<Vec<usize>> {
    let mut lines = Vec::new();
    for slope in [None, Some(0usize), Some(1), Some(2)] {
        for offset in 0..3 {
            let mut pts: Vec<usize> = (0..3)
                .map(|t| match slope {
                    None => 3 * t + offset,
                    Some(m) => 3 * ((m * t + offset) % 3) + t,
                })
                .collect();
            pts.sort_unstable();
            lines.push(pts);
        }
    }
    lines.sort();
    lines
}

/// Ceva(3): the nine points of AG(2,3) as hyperplanes, its twelve lines as triple points.
pub fn ceva3() -> Arrangement {
    let lc = LineCombinatorics::new(9, &ag23_lines()).expect("AG(2,3) lines");
    Arrangement::from_lines("ceva3", lc)
}

/// Points of AG(2,3) other than the origin, in the fixed label order.
const MACLANE_POINTS: [(usize, usize); 8] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (0, 2),
    (1, 2),
    (2, 1),
    (2, 0),
    (2, 2),
];

fn maclane_lines() -> Vec<Vec<usize>> {
    let label = |(x, y): (usize, usize)| MACLANE_POINTS.iter().position(|&p| p == (x, y));
    let mut out: Vec<Vec<usize>> = ag23_lines()
        .into_iter()
        .filter(|l| !l.contains(&0))
        .map(|l| {
            let mut v: Vec<usize> = l
                .iter()
                .map(|&pt| label((pt / 3, pt % 3)).expect("nonzero point"))
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

/// The MacLane matroid ML8: AG(2,3) with one point deleted.
pub fn maclane() -> Arrangement {
    let lc = LineCombinatorics::new(8, &maclane_lines()).expect("ML8 lines");
    Arrangement::from_lines("maclane", lc)
}

/// ML8 with the triple point on the line x + y = 2 removed.
pub fn deleted_maclane() -> Arrangement {
    let removed = vec![2usize, 3, 6];
    let lines: Vec<Vec<usize>> = maclane_lines().into_iter().filter(|l| *l != removed).collect();
    let lc = LineCombinatorics::new(8, &lines).expect("deleted ML8 lines");
    Arrangement::from_lines("deleted-maclane", lc)
}

/// m lines through one point.
pub fn pencil(m: usize) -> Result<Arrangement> {
    if m < 3 {
        return Err(Error::Input(format!("pencil needs at least 3 lines, got {m}")));
    }
    let lc = LineCombinatorics::new(m, &[(0..m).collect()])?;
    Ok(Arrangement::from_lines(format!("pencil({m})"), lc))
}

/// m lines, all but the last through one point.
pub fn near_pencil(m: usize) -> Result<Arrangement> {
    if m < 4 {
        return Err(Error::Input(format!("near-pencil needs at least 4 lines, got {m}")));
    }
    let lc = LineCombinatorics::new(m, &[(0..m - 1).collect()])?;
    Ok(Arrangement::from_lines(format!("near-pencil({m})"), lc))
}

/// n lines in general position.
pub fn generic(n: usize) -> Result<Arrangement> {
    if n < 3 {
        return Err(Error::Input(format!("generic arrangement needs n >= 3, got {n}")));
    }
    let lc = LineCombinatorics::new(n, &[])?;
    Ok(Arrangement::from_lines(format!("generic({n})"), lc))
}

pub fn complete_graph(v: usize) -> Result<Arrangement> {
    if !(3..=11).contains(&v) {
        return Err(Error::Input(format!("complete-graph needs 3..=11 vertices, got {v}")));
    }
    Arrangement::from_graph(format!("complete-graph({v})"), Graph::complete(v)?)
}

/// Registry names with their parameter forms.
pub fn list_examples() -> Vec<&'static str> {
    vec![
        "braid",
        "ceva3",
        "maclane",
        "deleted-maclane",
        "pencil(m)",
        "near-pencil(m)",
        "generic(n)",
        "complete-graph(v)",
    ]
}

/// Looks up an example by name, e.g. `braid` or `pencil(5)`.
pub fn example(name: &str) -> Result<Arrangement> {
    let name = name.trim();
    let (base, arg) = match name.find('(') {
        Some(i) if name.ends_with(')') => {
            let inner = &name[i + 1..name.len() - 1];
            let v: usize = inner
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad parameter in example name {name:?}")))?;
            (&name[..i], Some(v))
        }
        _ => (name, None),
    };
    match (base, arg) {
        ("braid", None) => Ok(braid()),
        ("ceva3", None) => Ok(ceva3()),
        ("maclane", None) => Ok(maclane()),
        ("deleted-maclane", None) => Ok(deleted_maclane()),
        ("pencil", Some(m)) => pencil(m),
        ("near-pencil", Some(m)) => near_pencil(m),
        ("generic", Some(n)) => generic(n),
        ("complete-graph", Some(v)) => complete_graph(v),
        _ => Err(Error::Input(format!(
            "unknown example {name:?}; available: {}",
            list_examples().join(", ")
        ))),
    }
}

/// The arrangements exercised by the test suites.
pub fn corpus() -> Vec<Arrangement> {
    let mut out = vec![braid(), ceva3(), maclane(), deleted_maclane()];
    for m in 3..=5 {
        out.push(pencil(m).expect("pencil"));
    }
    for m in 4..=6 {
        out.push(near_pencil(m).expect("near-pencil"));
    }
    out.push(generic(4).expect("generic"));
    out.push(complete_graph(4).expect("K4"));
    out.push(complete_graph(5).expect("K5"));
    out
}

/// True when every multiple flat has exactly three elements.
pub fn only_triple_points(lc: &LineCombinatorics) -> bool {
    lc.multiple_flats().all(|f| size(f) == 3)
}

/// Triangles in the Ceva(3) sense: sets of three hyperplanes, pairwise in distinct flats.
pub fn transversal_triples(lc: &LineCombinatorics) -> usize {
    (0..lc.n())
        .tuple_combinations()
        .filter(|&(a, b, c)| lc.flat_of_pair(a, b) & (1 << c) == 0)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceva_has_twelve_lines() {
        let c = ceva3();
        assert_eq!(c.lc.multiple_flats().count(), 12);
        assert!(only_triple_points(&c.lc));
        assert_eq!(c.lc.flats().len(), 12);
        assert_eq!(transversal_triples(&c.lc), 84 - 12);
    }

    #[test]
    fn rows_columns_and_diagonals() {
        let lines = ag23_lines();
        for l in [[0, 1, 2], [0, 3, 6], [0, 4, 8], [2, 4, 6], [3, 4, 5]] {
            assert!(lines.contains(&l.to_vec()), "{l:?}");
        }
    }

    #[test]
    fn deleted_maclane_triples() {
        let d = deleted_maclane();
        let triples: Vec<Vec<usize>> = d.lc.multiple_flats().map(|f| bits(f).collect()).collect();
        let mut want = vec![
            vec![0, 3, 5],
            vec![0, 1, 7],
            vec![0, 2, 4],
            vec![3, 4, 7],
            vec![1, 2, 5],
            vec![1, 4, 6],
            vec![5, 6, 7],
        ];
        want.sort();
        assert_eq!(triples, want);
        assert_eq!(maclane().lc.multiple_flats().count(), 8);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(example("braid").unwrap().n(), 6);
        assert_eq!(example("pencil(5)").unwrap().n(), 5);
        assert_eq!(example("complete-graph(5)").unwrap().n(), 10);
        assert!(example("nope").is_err());
        assert!(example("pencil(x)").is_err());
        assert!(list_examples().contains(&"braid"));
    }

    #[test]
    fn braid_equals_k4_up_to_relabeling() {
        let k4 = complete_graph(4).unwrap().lc;
        let b = braid().lc;
        let found = (0..6).permutations(6).any(|p| b.permuted(&p).unwrap() == k4);
        assert!(found);
    }
}
