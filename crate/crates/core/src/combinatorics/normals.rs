use itertools::Itertools;

use super::{LineCombinatorics, Matroid, Subset};
use crate::error::{Error, Result};

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i128 {
    let (a, b, c) = (
        a.iter().map(|&x| x as i128).collect::<Vec<_>>(),
        b.iter().map(|&x| x as i128).collect::<Vec<_>>(),
        c.iter().map(|&x| x as i128).collect::<Vec<_>>(),
    );
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..3).tuple_combinations().all(|(i, j)| {
        a[i] as i128 * b[j] as i128 == a[j] as i128 * b[i] as i128
    })
}

fn check_normals(normals: &[Vec<i64>]) -> Result<()> {
    for (k, v) in normals.iter().enumerate() {
        if v.len() != 3 {
            return Err(Error::Validation(format!(
                "normal {k} has length {}; only rank-3 (length 3) normals are supported",
                v.len()
            )));
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::Validation(format!("normal {k} is zero")));
        }
    }
    for (i, j) in (0..normals.len()).tuple_combinations() {
        if proportional(&normals[i], &normals[j]) {
            return Err(Error::Validation(format!(
                "normals {i} and {j} are proportional (duplicate hyperplane)"
            )));
        }
    }
    if normals.is_empty() || normals.len() > super::MAX_ELEMENTS {
        return Err(Error::Validation("need between 1 and 64 normals".into()));
    }
    Ok(())
}

/// Rank-2 flats of a central arrangement in C^3 given by integer normals.
pub fn from_normals(normals: &[Vec<i64>]) -> Result<LineCombinatorics> {
    check_normals(normals)?;
    let n = normals.len();
    let mut flats: Vec<Vec<usize>> = Vec::new();
    for (i, j) in (0..n).tuple_combinations() {
        if flats.iter().any(|f| f.contains(&i) && f.contains(&j)) {
            continue;
        }
        let f: Vec<usize> = (0..n)
            .filter(|&k| det3(&normals[i], &normals[j], &normals[k]) == 0)
            .collect();
        if f.len() >= 3 {
            flats.push(f);
        }
    }
    LineCombinatorics::new(n, &flats)
}

/// Matroid of the normal vectors computed directly from determinants: the
/// circuits are the dependent triples and the 4-sets with no dependent triple.
pub fn matroid_from_normals(normals: &[Vec<i64>]) -> Result<Matroid> {
    check_normals(normals)?;
    let n = normals.len();
    let rank3 = (0..n)
        .tuple_combinations()
        .any(|(a, b, c)| det3(&normals[a], &normals[b], &normals[c]) != 0);
    let mut circuits: Vec<Subset> = Vec::new();
    let dep: Vec<Subset> = (0..n)
        .tuple_combinations()
        .filter(|&(a, b, c)| det3(&normals[a], &normals[b], &normals[c]) == 0)
        .map(|(a, b, c)| super::subset_of([a, b, c]))
        .collect();
    circuits.extend(dep.iter().copied());
    if rank3 {
        circuits.extend(
            (0..n)
                .combinations(4)
                .map(super::subset_of)
                .filter(|&s| !dep.iter().any(|&t| t & s == t)),
        );
    }
    Matroid::from_circuits(n, circuits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{size, subset_of};
    use crate::registry;

    #[test]
    fn braid_normals_give_four_triples() {
        let lc = from_normals(&registry::braid_normals()).unwrap();
        let triples: Vec<Subset> = lc.multiple_flats().collect();
        assert_eq!(
            triples,
            vec![
                subset_of([0, 1, 2]),
                subset_of([0, 3, 4]),
                subset_of([1, 4, 5]),
                subset_of([2, 3, 5])
            ]
        );
        assert_eq!(lc.flats().iter().filter(|&&f| size(f) == 2).count(), 3);
    }

    #[test]
    fn generic_and_pencil() {
        let g = from_normals(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(g.flats().len(), 3);
        assert_eq!(g.multiple_flats().count(), 0);
        let p = from_normals(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 2, 0]]).unwrap();
        assert_eq!(p.flats(), &[0b1111]);
    }

    #[test]
    fn bad_normals() {
        assert!(from_normals(&[vec![1, 0, 0], vec![2, 0, 0]]).is_err());
        assert!(from_normals(&[vec![1, 0]]).is_err());
        assert!(from_normals(&[vec![0, 0, 0]]).is_err());
    }
}
