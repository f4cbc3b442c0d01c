use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use chaintree::complexity::fit_exponent;
use chaintree::kirchhoff_oracle::count_oracle_counted;
use chaintree::sweep::{exhaustive_specs, random_spec};
use chaintree::{
    count_with_details, expand_with_cap, recognize_chain, tau_complete_bipartite, ChainSpec, Graph,
    OracleError,
};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::input::{edge_cap, read_edge_list, resolve_spec};
use crate::{BenchArgs, CliError, FamilyChoice, GenerateArgs, Output, RecognizeArgs, SourceArgs, VerifyArgs};

/// Largest graph the oracle command accepts.
pub const ORACLE_MAX_VERTICES: usize = 3000;

/// Resolves `--spec` directly, or `--edges` through the recognizer.
fn source_spec(args: &SourceArgs) -> Result<ChainSpec, CliError> {
    match (&args.spec, &args.edges) {
        (Some(spec), _) => resolve_spec(spec),
        (None, Some(path)) => {
            let g = read_edge_list(path)?;
            recognize_chain(&g.graph).map_err(|e| CliError::Rejected(e.to_string()))
        }
        (None, None) => Err(CliError::Input("one of --spec or --edges is required".into())),
    }
}

pub fn count(args: &SourceArgs) -> Result<Output, CliError> {
    let spec = source_spec(args)?;
    let c = count_with_details(&spec).map_err(|e| CliError::Mismatch(format!("{spec}: {e}")))?;
    let tau = c.tau.to_string();
    let mut out = Output::new(format!("{tau}\n"), tau);
    out.ops = Some(c.ops);
    out.message = Some(format!("spec {spec}"));
    Ok(out)
}

pub fn oracle(args: &SourceArgs) -> Result<Output, CliError> {
    let graph = match (&args.spec, &args.edges) {
        (Some(spec), _) => {
            let spec = resolve_spec(spec)?;
            expand_with_cap(&spec, edge_cap()?).map_err(|e| CliError::Input(e.to_string()))?.to_graph()
        }
        (None, Some(path)) => read_edge_list(path)?.graph,
        (None, None) => return Err(CliError::Input("one of --spec or --edges is required".into())),
    };
    if graph.order() > ORACLE_MAX_VERTICES {
        return Err(CliError::Input(format!(
            "oracle is limited to {ORACLE_MAX_VERTICES} vertices, graph has {}",
            graph.order()
        )));
    }
    let (tau, ops) = match count_oracle_counted(&graph) {
        Ok(v) => v,
        Err(OracleError::Disconnected) => (BigUint::default(), 0),
        Err(e) => return Err(CliError::Mismatch(e.to_string())),
    };
    let tau = tau.to_string();
    let mut out = Output::new(format!("{tau}\n"), tau);
    out.ops = Some(ops);
    Ok(out)
}

#[derive(Debug)]
struct Case {
    spec: ChainSpec,
    counter: BigUint,
    oracle: BigUint,
    closed_form: Option<BigUint>,
}

impl Case {
    fn agrees(&self) -> bool {
        self.counter == self.oracle && self.closed_form.as_ref().is_none_or(|k| *k == self.counter)
    }
}

fn check_spec(spec: ChainSpec, cap: usize) -> Result<Case, CliError> {
    let graph = expand_with_cap(&spec, cap).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    let counter = count_with_details(&spec).map(|c| c.tau).unwrap_or_default();
    let oracle = count_oracle_counted(&graph.to_graph()).map(|(t, _)| t).unwrap_or_default();
    let closed_form = (spec.h() == 1).then(|| {
        let (m, n) = (spec.m()[0] as u32, spec.n()[0] as u32);
        tau_complete_bipartite(m, n)
    });
    Ok(Case { spec, counter, oracle, closed_form })
}

pub fn verify(args: &VerifyArgs) -> Result<Output, CliError> {
    if args.trials > 0 && args.max_vertices < 2 {
        return Err(CliError::Input("--max-vertices must be at least 2".into()));
    }
    let cap = edge_cap()?;
    let mut specs = exhaustive_specs(args.max_h, args.max_cell);
    let exhaustive = specs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    specs.extend((0..args.trials).map(|_| random_spec(&mut rng, args.max_vertices, args.max_vertices / 2)));

    let cases: Vec<Case> = specs
        .into_par_iter()
        .map(|s| check_spec(s, cap))
        .collect::<Result<_, _>>()?;

    let closed = cases.iter().filter(|c| c.closed_form.is_some()).count();
    let mut report = String::new();
    for c in cases.iter().filter(|c| !c.agrees()) {
        let _ = write!(report, "MISMATCH {}: counter={} oracle={}", c.spec, c.counter, c.oracle);
        if let Some(k) = &c.closed_form {
            let _ = write!(report, " closed_form={k}");
        }
        report.push('\n');
    }
    let mismatches = cases.iter().filter(|c| !c.agrees()).count();
    let summary = format!(
        "checked {} specs ({} exhaustive, {} random, {} against the closed form): {} mismatches",
        cases.len(),
        exhaustive,
        args.trials,
        closed,
        mismatches
    );
    if mismatches > 0 {
        return Err(CliError::Mismatch(format!("{report}{summary}")));
    }
    let mut out = Output::new(format!("{summary}\n"), cases.len().to_string());
    out.message = Some(summary);
    Ok(out)
}

pub fn recognize(args: &RecognizeArgs) -> Result<Output, CliError> {
    let g = read_edge_list(&args.file)?;
    let spec = recognize_chain(&g.graph).map_err(|e| CliError::Rejected(e.to_string()))?;
    let json = spec.to_json();
    Ok(Output::new(format!("{json}\n"), json))
}

pub fn generate(args: &GenerateArgs) -> Result<Output, CliError> {
    let spec = resolve_spec(&args.spec)?;
    let graph = expand_with_cap(&spec, edge_cap()?).map_err(|e| CliError::Input(e.to_string()))?;
    let text = graph.to_edge_list();
    let edges = graph.edges.len().to_string();
    if args.output == "-" {
        if args.json {
            return Err(CliError::Input("--json needs --output to name a file".into()));
        }
        return Ok(Output::new(text, edges));
    }
    fs::write(&args.output, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", args.output)))?;
    Ok(Output::new(String::new(), edges))
}

/// Benchmark families, indexed by total vertex count `n >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `(1,1; 2, n-4)`: one cycle, any size.
    Unicyclic,
    /// `h = n/4` cells of size 2 on each side; leftover vertices join the last V cell.
    Balanced,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Unicyclic => "unicyclic",
            Family::Balanced => "balanced",
        }
    }

    pub fn spec(self, n: usize) -> ChainSpec {
        assert!(n >= 5);
        match self {
            Family::Unicyclic => ChainSpec::new(vec![1, 1], vec![2, n - 4]).unwrap(),
            Family::Balanced => {
                let h = n / 4;
                let mut v = vec![2; h];
                v[h - 1] += n % 4;
                ChainSpec::new(vec![2; h], v).unwrap()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub algorithm: String,
    pub wall_ns: u64,
    pub ops: u64,
}

pub const CSV_HEADER: &str = "n,algorithm,wall_ns,ops";

pub fn parse_sizes(raw: &[String]) -> Result<Vec<usize>, CliError> {
    if raw.is_empty() {
        return Err(CliError::Input("empty size list".into()));
    }
    raw.iter()
        .map(|s| match s.trim().parse::<usize>() {
            Ok(n) if n >= 5 => Ok(n),
            _ => Err(CliError::Input(format!("invalid size {s:?}: sizes are integers >= 5"))),
        })
        .collect()
}

fn elapsed_ns(start: Instant) -> u64 {
    start.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

pub fn bench(args: &BenchArgs) -> Result<Output, CliError> {
    let sizes = parse_sizes(&args.sizes)?;
    if args.repetitions == 0 {
        return Err(CliError::Input("--repetitions must be at least 1".into()));
    }
    let families: &[Family] = match args.family {
        FamilyChoice::Unicyclic => &[Family::Unicyclic],
        FamilyChoice::Balanced => &[Family::Balanced],
        FamilyChoice::All => &[Family::Unicyclic, Family::Balanced],
    };

    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &family in families {
        let mut points = Vec::new();
        for &n in &sizes {
            let spec = family.spec(n);
            let mut tau = BigUint::default();
            for rep in 0..args.repetitions {
                let start = Instant::now();
                let c = count_with_details(&spec).map_err(|e| CliError::Mismatch(format!("{spec}: {e}")))?;
                rows.push(BenchRow {
                    n,
                    algorithm: format!("counter:{}", family.name()),
                    wall_ns: elapsed_ns(start),
                    ops: c.ops,
                });
                if rep == 0 {
                    points.push((n as f64, c.ops as f64));
                }
                tau = c.tau;
            }
            if n <= args.oracle_max {
                let graph: Graph = expand_with_cap(&spec, edge_cap()?)
                    .map_err(|e| CliError::Input(e.to_string()))?
                    .to_graph();
                for _ in 0..args.repetitions {
                    let start = Instant::now();
                    let (oracle, ops) =
                        count_oracle_counted(&graph).map_err(|e| CliError::Mismatch(format!("{spec}: {e}")))?;
                    rows.push(BenchRow {
                        n,
                        algorithm: format!("oracle:{}", family.name()),
                        wall_ns: elapsed_ns(start),
                        ops,
                    });
                    if oracle != tau {
                        return Err(CliError::Mismatch(format!(
                            "n={n} {}: counter={tau} oracle={oracle}",
                            family.name()
                        )));
                    }
                }
            }
        }
        let line = match fit_exponent(&points) {
            Some(k) => format!("counter:{} ops growth exponent {k:.3} over {} sizes", family.name(), points.len()),
            None => format!("counter:{} ops growth exponent n/a (need two distinct sizes)", family.name()),
        };
        summary.push(line);
    }

    let mut csv = format!("{CSV_HEADER}\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{}", r.n, r.algorithm, r.wall_ns, r.ops);
    }
    let mut plain = String::new();
    if args.csv == "-" {
        plain.push_str(&csv);
    } else {
        fs::write(&args.csv, &csv).map_err(|e| CliError::Input(format!("cannot write {}: {e}", args.csv)))?;
    }
    for line in &summary {
        let _ = writeln!(plain, "# {line}");
    }
    let mut out = Output::new(plain, rows.len().to_string());
    out.message = Some(summary.join("; "));
    Ok(out)
}
