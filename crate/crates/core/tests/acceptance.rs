//! Acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oschen::alexander::{build_delta_lin, chen_ranks, macaulay_matrix, AlexanderModule};
use oschen::exactla::{
    exact_kernel_of_rows, modular_rank, rank_fraction_free, rref_canonical, RankStrategy, Rational, SparseMatrix,
};
use oschen::linstrand::{aomoto_differential, betti_table, cross_check_chen, epy_exactness, StrandComplex};
use oschen::osalgebra::OsAlgebra;
use oschen::polyfit::fit;
use oschen::registry::{self, Arrangement};
use oschen::resonance::{
    enumerate_components, is_resonant, lower_bound_check, sample_off_components, sample_point, ComponentKind,
    Partition, ResonanceResult, SearchLimits,
};
use oschen::torsion::torsion_report;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn resonance(a: &Arrangement) -> Result<ResonanceResult, String> {
    let alg = OsAlgebra::new(&a.matroid, 2);
    enumerate_components(&a.lc, &alg, &SearchLimits::for_size(a.n())).map_err(err)
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:.2?}, limit {limit:?}");
    Ok(t)
}

/// Solution space of homogeneous linear equations given as coefficient rows.
fn solutions(n: usize, equations: &[Vec<(usize, i64)>]) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<(usize, Rational)>> = equations
        .iter()
        .map(|e| e.iter().map(|&(i, c)| (i, q(c))).collect())
        .collect();
    rref_canonical(&exact_kernel_of_rows(&rows, n).unwrap())
}

fn local_equations(flat: &[usize], n: usize) -> Vec<Vec<(usize, i64)>> {
    let mut eqs = vec![flat.iter().map(|&i| (i, 1)).collect::<Vec<_>>()];
    eqs.extend((0..n).filter(|i| !flat.contains(i)).map(|i| vec![(i, 1)]));
    eqs
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let theta = chen_ranks(&registry::braid().lc, 5, RankStrategy::default()).map_err(err)?;
    ensure!(theta.values() == [6, 4, 10, 15, 20], "theta = {:?}", theta.values());
    let tail: Vec<i64> = (2..=5).map(|k| theta.theta(k) as i64).collect();
    let f = fit(2, &tail).ok_or("no polynomial fit")?;
    ensure!(f.polynomial.coefficients == [q(-5), q(5)], "fit {}", f.polynomial);
    ensure!(f.stabilization == 3, "stabilization {}", f.stabilization);
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("theta = 6; 4, 10, 15, 20, fit {} from k = 3 ({t:.2?})", f.polynomial))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let res = resonance(&registry::braid())?;
    ensure!(res.components.len() == 5, "{} components", res.components.len());
    ensure!(
        res.components.iter().all(|c| c.projective_dimension() == 1),
        "some component is not a projective line"
    );
    let expected: BTreeSet<Vec<Vec<Rational>>> = [
        local_equations(&[1, 4, 5], 6),
        local_equations(&[2, 3, 5], 6),
        local_equations(&[0, 3, 4], 6),
        local_equations(&[0, 1, 2], 6),
        vec![
            vec![(0, 1), (1, 1), (2, 1)],
            vec![(0, 1), (5, -1)],
            vec![(1, 1), (3, -1)],
            vec![(2, 1), (4, -1)],
        ],
    ]
    .iter()
    .map(|e| solutions(6, e))
    .collect();
    let found: BTreeSet<Vec<Vec<Rational>>> = res.components.iter().map(|c| rref_canonical(&c.basis)).collect();
    ensure!(found == expected, "bases differ: {found:?}");
    let essential: Vec<_> = res.components.iter().filter(|c| !c.is_local()).collect();
    ensure!(essential.len() == 1, "{} essential components", essential.len());
    let span = rref_canonical(&[
        [1, -1, 0, -1, 0, 1].map(q).to_vec(),
        [1, 0, -1, 0, -1, 1].map(q).to_vec(),
    ]);
    ensure!(rref_canonical(&essential[0].basis) == span, "essential component differs");
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("5 projective lines, bases match, essential {} ({t:.2?})", essential[0].provenance()))
}

fn criterion_3() -> Outcome {
    let a = registry::braid();
    let b = betti_table(&a.matroid, 4, RankStrategy::default()).map_err(err)?;
    for (i, j, v) in [(1, 2, 4), (2, 3, 10), (3, 4, 15), (3, 5, 6)] {
        ensure!(b.get(i, j) == Some(v), "beta_({i},{j}) = {:?}, expected {v}", b.get(i, j));
    }
    let theta = chen_ranks(&a.lc, 5, RankStrategy::default()).map_err(err)?;
    let checked = cross_check_chen(&theta, &b, 5).map_err(err)?;
    ensure!(checked == 4, "cross-check covered {checked} degrees");
    Ok("beta_12 = 4, beta_23 = 10, beta_34 = 15, beta_35 = 6; theta_k = beta_(k-1,k) for k = 2..5".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let a = registry::deleted_maclane();
    let res = resonance(&a)?;
    let mut module = AlexanderModule::new(&a.lc, RankStrategy::default()).map_err(err)?;
    let theta = module.chen_ranks(8).map_err(err)?;
    for k in 4..=8 {
        ensure!(theta.theta(k) == 7 * (k - 1), "theta_{k} = {}", theta.theta(k));
    }
    let report = torsion_report(&mut module, &res.h, 4, 4).map_err(err)?;
    let col = |f: fn(&oschen::torsion::TorsionRow) -> i64| report.rows.iter().map(f).collect::<Vec<_>>();
    ensure!(col(|r| r.b as i64) == [7, 15, 21], "B = {:?}", col(|r| r.b as i64));
    ensure!(col(|r| r.bprime as i64) == [7, 14, 21], "B' = {:?}", col(|r| r.bprime as i64));
    ensure!(col(|r| r.h0 as i64) == [0, 1, 0], "H0 = {:?}", col(|r| r.h0 as i64));
    ensure!(col(|r| r.h1_inferred) == [0, 0, 0], "H1 = {:?}", col(|r| r.h1_inferred));
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("B = 7, 15, 21; B' = 7, 14, 21; H0 = 0, 1, 0; H1 = 0; theta = 7(k-1) on 4..8 ({t:.2?})"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let a = registry::ceva3();
    let strategy = RankStrategy::modular(0);
    let res = resonance(&a)?;
    let local = res.components.iter().filter(|c| c.is_local()).count();
    ensure!(res.components.len() == 16 && local == 12, "{} components, {local} local", res.components.len());
    let labels: BTreeSet<String> = res
        .components
        .iter()
        .filter_map(|c| match &c.kind {
            ComponentKind::Essential { partition, .. } => Some(partition.label()),
            ComponentKind::Local { .. } => None,
        })
        .collect();
    let expected: BTreeSet<String> = [
        [[0, 1, 2], [3, 4, 5], [6, 7, 8]],
        [[0, 3, 6], [1, 4, 7], [2, 5, 8]],
        [[0, 4, 8], [1, 5, 6], [2, 3, 7]],
        [[0, 5, 7], [1, 3, 8], [2, 4, 6]],
    ]
    .iter()
    .map(|p| Partition::from_lists(&p.map(|b| b.to_vec())).unwrap().label())
    .collect();
    ensure!(labels == expected, "essential partitions {labels:?}");

    let mut module = AlexanderModule::new(&a.lc, strategy).map_err(err)?;
    let theta = module.chen_ranks(10).map_err(err)?;
    let tail: Vec<i64> = (2..=10).map(|k| theta.theta(k) as i64).collect();
    let f = fit(2, &tail).ok_or("no polynomial fit")?;
    ensure!(f.stabilization == 5, "stabilization {}", f.stabilization);
    ensure!(f.polynomial.coefficients == [q(-16), q(16)], "fit {}", f.polynomial);

    let report = torsion_report(&mut module, &res.h, 5, 4).map_err(err)?;
    let b: Vec<usize> = report.rows.iter().map(|r| r.b).collect();
    let bp: Vec<usize> = report.rows.iter().map(|r| r.bprime).collect();
    ensure!(b == [12, 40, 56, 64], "B = {b:?}");
    ensure!(bp == [16, 32, 48, 64], "B' = {bp:?}");
    let h0 = |k| report.row(k).map(|r| r.h0);
    ensure!(h0(3) == Some(8) && h0(4) == Some(8), "H0_3 = {:?}, H0_4 = {:?}", h0(3), h0(4));
    let h1 = report.row(2).map(|r| r.h1_inferred);
    ensure!(h1 == Some(4), "H1_2 = {h1:?}");
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!("16 components (12 local), B and B' match, H0_3 = H0_4 = 8, H1_2 = 4, k0 = 5 ({t:.2?})"))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for v in [4, 5] {
        let a = registry::complete_graph(v).map_err(err)?;
        let kappa = a.clique_counts().ok_or("no clique counts")?;
        let (triangles, quads) = (kappa[1], kappa[2]);
        let theta = chen_ranks(&a.lc, 6, RankStrategy::default()).map_err(err)?;
        for k in 3..=6 {
            ensure!(
                theta.theta(k) == (k - 1) * (triangles + quads),
                "K{v}: theta_{k} = {}",
                theta.theta(k)
            );
        }
        if v == 5 {
            ensure!(triangles + quads == 15, "K5 gives {} (k-1)", triangles + quads);
        }
        let res = resonance(&a)?;
        ensure!(
            res.components.len() == triangles + quads,
            "K{v}: {} components for {triangles} triangles and {quads} quadrangles",
            res.components.len()
        );
        ensure!(res.h.iter().all(|(r, _)| r == 1), "K{v}: h = {:?}", res.h);
        notes.push(format!("K{v}: {}(k-1)", triangles + quads));
    }
    Ok(notes.join(", "))
}

struct CorpusRun {
    arrangement: Arrangement,
    res: ResonanceResult,
    rows: Vec<oschen::resonance::BoundRow>,
    stabilization: usize,
    degree: Option<usize>,
}

fn corpus_runs(kmax: usize) -> Result<Vec<CorpusRun>, String> {
    registry::corpus()
        .into_iter()
        .map(|a| {
            let theta = chen_ranks(&a.lc, kmax, RankStrategy::default()).map_err(err)?;
            let res = resonance(&a)?;
            let tail: Vec<i64> = (2..=kmax).map(|k| theta.theta(k) as i64).collect();
            let f = fit(2, &tail).ok_or_else(|| format!("{}: no fit", a.name))?;
            let rows = lower_bound_check(&theta, &res.h, 2..=kmax, Some(f.stabilization)).map_err(err)?;
            Ok(CorpusRun {
                arrangement: a,
                res,
                rows,
                stabilization: f.stabilization,
                degree: f.degree,
            })
        })
        .collect()
}

fn criterion_7(runs: &[CorpusRun]) -> Outcome {
    let equal = [
        "braid",
        "pencil(3)",
        "pencil(4)",
        "pencil(5)",
        "near-pencil(4)",
        "near-pencil(5)",
        "near-pencil(6)",
        "deleted-maclane",
        "complete-graph(4)",
        "complete-graph(5)",
        "ceva3",
    ];
    for run in runs {
        let name = &run.arrangement.name;
        for r in run.rows.iter().filter(|r| r.k >= run.stabilization) {
            ensure!(r.difference >= 0, "{name}: difference {} at k = {}", r.difference, r.k);
            if equal.contains(&name.as_str()) {
                ensure!(r.difference == 0, "{name}: difference {} at k = {}", r.difference, r.k);
            }
        }
    }
    let named: BTreeSet<&str> = runs.iter().map(|r| r.arrangement.name.as_str()).collect();
    ensure!(equal.iter().all(|e| named.contains(e)), "corpus lacks some of {equal:?}");
    Ok(format!("difference >= 0 on {} arrangements, equality on {}", runs.len(), equal.len()))
}

fn criterion_8(runs: &[CorpusRun]) -> Outcome {
    for run in runs {
        let dim = (run.res.h.count() > 0).then(|| run.res.h.max_dimension());
        ensure!(run.degree == dim, "{}: degree {:?}, dim R1 {dim:?}", run.arrangement.name, run.degree);
    }
    let p5 = runs
        .iter()
        .find(|r| r.arrangement.name == "pencil(5)")
        .ok_or("pencil(5) missing")?;
    ensure!(p5.degree == Some(3), "pencil(5) degree {:?}", p5.degree);
    Ok(format!("fitted degree = dim R1 on {} arrangements, pencil(5) cubic", runs.len()))
}

/// Largest side of a matrix whose rank is recomputed by fraction-free elimination.
const EXACT_SIDE: usize = 1000;

fn rank_agreement(m: &SparseMatrix, seed: u64) -> Result<bool, String> {
    if m.nrows().max(m.ncols()) > EXACT_SIDE {
        return Ok(false);
    }
    let exact = rank_fraction_free(m.integer_rows(), m.ncols());
    let modular = modular_rank(m, &mut RankStrategy::modular(seed).primes());
    ensure!(exact == modular, "{}x{}: exact {exact}, modular {modular}", m.nrows(), m.ncols());
    Ok(true)
}

fn criterion_9(runs: &[CorpusRun]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut matrices = 0;
    let mut strands = 0;
    for run in runs {
        let a = &run.arrangement;
        let name = &a.name;
        let alg = OsAlgebra::new(&a.matroid, a.matroid.rank().max(3));
        for j in 0..=6 {
            match StrandComplex::new(&alg, j) {
                Ok(s) => {
                    s.check_square_zero().map_err(|e| format!("{name}: {e}"))?;
                    for d in &s.differentials {
                        matrices += rank_agreement(d, j as u64).map_err(|e| format!("{name} strand {j}: {e}"))? as usize;
                    }
                    strands += 1;
                }
                Err(oschen::Error::Resource(_)) => break,
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
        for p in 0..alg.top() {
            for m in 0..=4usize.saturating_sub(p) {
                matrices += rank_agreement(&aomoto_differential(&alg, p, m).map_err(err)?, 7)
                    .map_err(|e| format!("{name} aomoto ({p},{m}): {e}"))? as usize;
            }
        }
        let pres = build_delta_lin(&a.lc);
        for k in 2..=4 {
            matrices += rank_agreement(&macaulay_matrix(&pres, k).map_err(err)?, 3)
                .map_err(|e| format!("{name} Macaulay {k}: {e}"))? as usize;
        }

        let comps = &run.res.components;
        for (i, c) in comps.iter().enumerate() {
            for d in &comps[i + 1..] {
                let mut joint = c.basis.clone();
                joint.extend(d.basis.iter().cloned());
                ensure!(
                    rref_canonical(&joint).len() == c.dim() + d.dim(),
                    "{name}: {} meets {}",
                    c.provenance(),
                    d.provenance()
                );
            }
        }
        let alg2 = OsAlgebra::new(&a.matroid, 2);
        for c in comps {
            for _ in 0..3 {
                let x = sample_point(&c.basis, &mut rng);
                ensure!(is_resonant(&alg2, &x).map_err(err)?, "{name}: point of {} not resonant", c.provenance());
                matrices += rank_agreement(&SparseMatrix::from_dense(&alg2.multiplication_map(&x)).map_err(err)?, 1)? as usize;
            }
        }
        for _ in 0..10 {
            let Some(x) = sample_off_components(a.n(), comps, &mut rng) else {
                break;
            };
            ensure!(!is_resonant(&alg2, &x).map_err(err)?, "{name}: off-component point {x:?} resonant");
        }
    }

    for name in ["braid", "pencil(3)", "pencil(4)", "pencil(5)", "ceva3"] {
        let a = registry::example(name).map_err(err)?;
        let r = epy_exactness(&a.matroid, 6, 0).map_err(err)?;
        ensure!(r.skipped.is_empty(), "{name}: EPY positions skipped {:?}", r.skipped);
        ensure!(r.exact, "{name}: EPY failures {:?}", r.failures);
    }

    let braid = registry::braid();
    let base = chen_ranks(&braid.lc, 6, RankStrategy::default()).map_err(err)?;
    for _ in 0..5 {
        let mut perm: Vec<usize> = (0..braid.n()).collect();
        perm.shuffle(&mut rng);
        let p = braid.permuted(&perm).map_err(err)?;
        let theta = chen_ranks(&p.lc, 6, RankStrategy::default()).map_err(err)?;
        ensure!(theta == base, "relabeling {perm:?} changed theta to {:?}", theta.values());
    }

    let exact = chen_ranks(&registry::ceva3().lc, 6, RankStrategy::exact()).map_err(err)?;
    let modular = chen_ranks(&registry::ceva3().lc, 6, RankStrategy::modular(5)).map_err(err)?;
    ensure!(exact == modular, "ceva3 theta differs between strategies");

    Ok(format!(
        "{strands} strands square to zero, {matrices} matrices (side <= {EXACT_SIDE}) rank-agree, EPY exact to degree 6, sampling and relabeling hold"
    ))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, outcome: Outcome| match outcome {
        Ok(note) => println!("criterion {n}: PASS  {note}"),
        Err(why) => {
            failed += 1;
            println!("criterion {n}: FAIL  {why}");
        }
    };
    report(1, criterion_1());
    report(2, criterion_2());
    report(3, criterion_3());
    report(4, criterion_4());
    report(5, criterion_5());
    report(6, criterion_6());
    match corpus_runs(8) {
        Ok(runs) => {
            report(7, criterion_7(&runs));
            report(8, criterion_8(&runs));
            report(9, criterion_9(&runs));
        }
        Err(why) => {
            for n in 7..=9 {
                report(n, Err(format!("corpus run failed: {why}")));
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
