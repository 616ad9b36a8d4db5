//! The full analysis of one arrangement and its deterministic report.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use crate::alexander::{AlexanderModule, ChenSequence};
use crate::combinatorics::{bits, Subset};
use crate::error::{Error, Result};
use crate::exactla::{audit_stats, RankMode, RankStrategy, Rational};
use crate::linstrand::{self, BettiTable, ComplexityReport, EpyReport};
use crate::osalgebra::OsAlgebra;
use crate::polyfit::{self, PolynomialFit};
use crate::registry::Arrangement;
use crate::resonance::{self, BoundRow, ComponentKind, Partition, ResonanceResult, SearchLimits};
use crate::torsion::{self, TorsionReport};

/// Node budget for the almost-neighborly partition search.
const ALMOST_NEIGHBORLY_NODES: usize = 2_000_000;

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub kmax: usize,
    pub imax: usize,
    pub strategy: RankStrategy,
    /// Largest sub-arrangement in the resonance search (default n).
    pub search_cap: Option<usize>,
    pub torsion_window: usize,
    pub epy_degree: usize,
    /// Adds wall-clock timing and audit counters to the report.
    pub timing: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            kmax: 10,
            imax: 6,
            strategy: RankStrategy::default(),
            search_cap: None,
            torsion_window: 4,
            epy_degree: 6,
            timing: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub arrangement: Arrangement,
    pub options: AnalysisOptions,
    pub theta: ChenSequence,
    pub resonance: ResonanceResult,
    pub fit: Option<PolynomialFit>,
    pub conjecture: Vec<BoundRow>,
    pub betti: BettiTable,
    pub chen_betti_degrees: usize,
    pub epy: EpyReport,
    pub torsion: TorsionReport,
    pub almost_neighborly: Vec<Partition>,
    pub almost_neighborly_complete: bool,
    pub complexity: ComplexityReport,
    pub elapsed_ms: u128,
}

impl AnalysisReport {
    pub fn stabilization(&self) -> Option<usize> {
        self.fit.as_ref().map(|f| f.stabilization)
    }

    /// Earliest k from which θ_k equals the conjectured value through kmax.
    pub fn equality_from(&self) -> Option<usize> {
        let mut from = None;
        for row in self.conjecture.iter().rev() {
            if row.difference != 0 {
                break;
            }
            from = Some(row.k);
        }
        from
    }
}

pub fn analyze(arrangement: &Arrangement, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    options.strategy.validate()?;
    if options.kmax < 3 {
        return Err(Error::Input(format!("kmax must be at least 3, got {}", options.kmax)));
    }
    let lc = &arrangement.lc;
    let matroid = &arrangement.matroid;
    let n = lc.n();

    let mut module = AlexanderModule::new(lc, options.strategy)?;
    let theta = module.chen_ranks(options.kmax)?;

    let alg = OsAlgebra::new(matroid, 2);
    let mut limits = SearchLimits::for_size(n);
    if let Some(cap) = options.search_cap {
        limits.max_subset = cap;
    }
    let resonance = resonance::enumerate_components(lc, &alg, &limits)?;

    let tail: Vec<i64> = (2..=options.kmax).map(|k| theta.theta(k) as i64).collect();
    let fit = polyfit::fit(2, &tail);
    let stabilization = fit.as_ref().map(|f| f.stabilization);
    let conjecture = resonance::lower_bound_check(&theta, &resonance.h, 2..=options.kmax, stabilization)?;

    let betti = linstrand::betti_table(matroid, options.imax, options.strategy)?;
    let chen_betti_degrees = linstrand::cross_check_chen(&theta, &betti, options.kmax)?;
    let epy = linstrand::epy_exactness(matroid, options.epy_degree, options.strategy.seed)?;

    let torsion = torsion::torsion_report(&mut module, &resonance.h, options.kmax, options.torsion_window)?;
    let (almost_neighborly, almost_neighborly_complete) =
        resonance::almost_neighborly_partitions(lc, ALMOST_NEIGHBORLY_NODES);

    let fitted_degree = fit.as_ref().and_then(|f| f.degree);
    let complexity = linstrand::complexity_report(lc, matroid, &resonance.h, fitted_degree)?;

    Ok(AnalysisReport {
        arrangement: arrangement.clone(),
        options: *options,
        theta,
        resonance,
        fit,
        conjecture,
        betti,
        chen_betti_degrees,
        epy,
        torsion,
        almost_neighborly,
        almost_neighborly_complete,
        complexity,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn list(s: Subset) -> Vec<usize> {
    bits(s).collect()
}

fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn mode_name(mode: RankMode) -> (&'static str, Option<u64>) {
    match mode {
        RankMode::Exact => ("exact", None),
        RankMode::Modular(p) => ("modular", p),
        RankMode::Verify => ("verify", None),
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        let a = &self.arrangement;
        let o = &self.options;
        let (mode, prime) = mode_name(o.strategy.mode);
        let mut input = json!({
            "name": a.name,
            "n": a.n(),
            "rank": a.matroid.rank(),
            "multiple_flats": a.lc.multiple_flats().map(list).collect::<Vec<_>>(),
        });
        if let Some(g) = &a.graph {
            input["graph"] = json!({
                "vertices": g.vertices(),
                "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
                "clique_counts": g.clique_counts(),
            });
        }

        let components: Vec<Value> = self
            .resonance
            .components
            .iter()
            .map(|c| {
                let mut v = json!({
                    "basis": c.basis.iter().map(|r| r.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "projective_dimension": c.projective_dimension(),
                    "verified": c.verified,
                });
                match &c.kind {
                    ComponentKind::Local { flat } => {
                        v["kind"] = json!("local");
                        v["flat"] = json!(list(*flat));
                    }
                    ComponentKind::Essential {
                        subarrangement,
                        partition,
                    } => {
                        v["kind"] = json!("essential");
                        v["subarrangement"] = json!(list(*subarrangement));
                        v["partition"] = json!(partition.label());
                    }
                }
                v
            })
            .collect();
        let h_vector: serde_json::Map<String, Value> = self
            .resonance
            .h
            .iter()
            .map(|(r, c)| (r.to_string(), json!(c)))
            .collect();

        let betti_entries: Vec<Value> = self
            .betti
            .entries
            .iter()
            .map(|(&(i, j), &b)| json!({"i": i, "j": j, "beta": b}))
            .collect();

        let fit = match &self.fit {
            Some(f) => json!({
                "coefficients": f.polynomial.coefficients.iter().map(rational).collect::<Vec<_>>(),
                "degree": f.degree,
                "display": f.polynomial.to_string(),
                "stabilization": f.stabilization,
                "last": f.last,
            }),
            None => Value::Null,
        };

        let mut report = json!({
            "input": input,
            "strategy": {
                "mode": mode,
                "prime": prime,
                "seed": o.strategy.seed,
                "kmax": o.kmax,
                "imax": o.imax,
                "search_cap": o.search_cap,
                "torsion_window": o.torsion_window,
                "epy_degree": o.epy_degree,
            },
            "theta": self.theta.values(),
            "resonance": {
                "components": components,
                "h_vector": h_vector,
                "complete": self.resonance.complete,
            },
            "conjecture": {
                "rows": self.conjecture,
                "equality_from": self.equality_from(),
            },
            "hilbert_polynomial": fit,
            "betti": {
                "entries": betti_entries,
                "missing": self.betti.missing.iter().map(|&(i, j)| json!({"i": i, "j": j})).collect::<Vec<_>>(),
                "regularity_certified": self.betti.regularity_certified,
                "explicit_checks": self.betti.explicit_checks,
                "chen_cross_check_degrees": self.chen_betti_degrees,
            },
            "epy": self.epy,
            "torsion": {
                "rows": self.torsion.rows,
                "consistent": self.torsion.consistent,
                "h1_note": "inferred from dim B' - dim B + dim H0, assuming B and B' define the same sheaf",
                "almost_neighborly_partitions": self.almost_neighborly.iter().map(Partition::label).collect::<Vec<_>>(),
                "almost_neighborly_search_complete": self.almost_neighborly_complete,
            },
            "complexity": self.complexity,
        });
        if o.timing {
            let s = audit_stats();
            report["timing"] = json!({
                "elapsed_ms": self.elapsed_ms as u64,
                "certified_kernels": s.certified,
                "unlucky_primes": s.unlucky_primes,
                "exact_fallbacks": s.exact_fallbacks,
            });
        }
        report
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let a = &self.arrangement;
        let _ = writeln!(s, "{}: n = {}, rank {}", a.name, a.n(), a.matroid.rank());
        let _ = writeln!(s, "theta_1..{}: {:?}", self.theta.kmax(), self.theta.values());
        match &self.fit {
            Some(f) => {
                let _ = writeln!(s, "Hilbert polynomial: {} for k >= {}", f.polynomial, f.stabilization);
            }
            None => {
                let _ = writeln!(s, "Hilbert polynomial: no fit");
            }
        }
        let _ = writeln!(
            s,
            "resonance: {} components, h = {:?}{}",
            self.resonance.components.len(),
            self.resonance.h.0,
            if self.resonance.complete { "" } else { " (search truncated)" }
        );
        for c in &self.resonance.components {
            let _ = writeln!(s, "  dim {} from {}", c.projective_dimension(), c.provenance());
        }
        let _ = writeln!(s, "k  theta  rhs  diff");
        for r in &self.conjecture {
            let _ = writeln!(s, "{:<2} {:>5} {:>4} {:>5}", r.k, r.theta, r.rhs, r.difference);
        }
        let _ = writeln!(s, "linear strand: {:?}", self.betti.linear_strand());
        let quad: Vec<String> = (1..=self.betti.imax)
            .map(|i| {
                self.betti
                    .get(i, i + 2)
                    .map_or_else(|| "?".to_string(), |b| b.to_string())
            })
            .collect();
        let _ = writeln!(s, "beta_(i,i+2): [{}]", quad.join(", "));
        let _ = writeln!(
            s,
            "EPY exact through degree {}: {}",
            self.epy.degree_bound, self.epy.exact
        );
        let _ = writeln!(s, "k  B  B'  H0  H1(inferred)");
        for r in &self.torsion.rows {
            let _ = writeln!(
                s,
                "{:<2} {:>3} {:>3} {:>3}{} {:>3}",
                r.k,
                r.b,
                r.bprime,
                r.h0,
                if r.h0_stabilized { " " } else { "*" },
                r.h1_inferred
            );
        }
        let _ = writeln!(
            s,
            "complexity: cx = {}, dim R1 = {:?}",
            self.complexity.cx, self.complexity.dim_r1
        );
        s
    }
}
