//! Command-line front end: argument parsing and the commands, returning
//! output and exit code so that tests can drive them in process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};

use cloneforge::axioms::{check_axioms, check_properly_graded, AxiomLine, AxiomReport, Sampler, Status};
use cloneforge::cloning::CloningSystem;
use cloneforge::complexes::{
    betti, build_dlk, build_matching_complex, eta, homological_connectivity, nu, ComplexError, Field, SimplicialComplex,
    DEFAULT_BUDGET,
};
use cloneforge::forest::Forest;
use cloneforge::systems::SystemSpec;
use cloneforge::thompson;
use cloneforge::with_system;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default cap on `(g, h, k)` triples examined by `verify`.
pub const VERIFY_BUDGET: u64 = 50_000_000;

#[derive(Parser, Debug)]
#[command(name = "cloneforge", version, about = "Generalized Thompson groups from cloning systems")]
pub struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Size cap: simplices for complexes, checked triples for verify.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// trivial, symmetric, power:<m>, power-iota:<m>, borel:<ring>,
    /// abels:<ring>, bbar:<ring>, mock, loopbraid, pureloopbraid
    #[arg(long)]
    pub system: String,
    /// Ring for borel, abels and bbar when not given in --system: Z, Q,
    /// Z[1/p]:p, Fp:p.
    #[arg(long)]
    pub ring: Option<String>,
}

impl SystemArgs {
    fn spec(&self) -> Result<SystemSpec, String> {
        match &self.ring {
            Some(r) if !self.system.contains(':') => SystemSpec::parse(&format!("{}:{r}", self.system)),
            Some(_) => Err("ring given twice".into()),
            None => SystemSpec::parse(&self.system),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a forest word, or reduced form of a group element.
    Nf {
        /// Comma-separated caret indices.
        #[arg(long, conflicts_with_all = ["system", "element"])]
        forest: Option<String>,
        #[arg(long, requires = "element")]
        system: Option<String>,
        #[arg(long)]
        ring: Option<String>,
        /// `left_tree | mid | right_tree`.
        #[arg(long, requires = "system")]
        element: Option<String>,
    },
    /// Check the cloning axioms and proper grading.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Check via the defining relations of the presentation.
        #[arg(long)]
        relators: bool,
    },
    /// Reduced Betti numbers of matching complexes or descending links.
    Homology {
        /// Matching complexes of sL_n.
        #[arg(long, conflicts_with = "dlk")]
        matching: bool,
        /// Parallel edges for --matching.
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Descending links of --system.
        #[arg(long, requires = "system")]
        dlk: bool,
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        ring: Option<String>,
        /// A single n or an inclusive range a..b.
        #[arg(long)]
        n: String,
        /// Q, F2 or Fp:p; repeatable. Defaults to Q and F2.
        #[arg(long)]
        field: Vec<String>,
        /// Export the complex here (one file per n, suffixed for ranges).
        #[arg(long)]
        out: Option<String>,
    },
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        sys: SystemArgs,
        a: String,
        b: String,
    },
    /// Equality of two elements; exit 0 if equal, 1 if not.
    Eq {
        #[command(flatten)]
        sys: SystemArgs,
        a: String,
        b: String,
    },
    /// Inverse of an element.
    Inv {
        #[command(flatten)]
        sys: SystemArgs,
        a: String,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(msg: impl Into<String>) -> Outcome {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: EXIT_USAGE }
    }

    fn budget(msg: impl Into<String>) -> Outcome {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: EXIT_BUDGET }
    }
}

/// Parse arguments (including the program name) and run.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Nf { forest, system, ring, element } => match (forest, system, element) {
            (Some(f), _, _) => match f.parse::<Forest>() {
                Ok(f) => Outcome::ok(format!("{f}\n")),
                Err(e) => Outcome::usage(e.to_string()),
            },
            (None, Some(s), Some(el)) => {
                let args = SystemArgs { system: s.clone(), ring: ring.clone() };
                with_spec(&args, |spec| with_system!(spec, |sys| element_op(&sys, &[el.as_str()], Op::Nf)))
            }
            _ => Outcome::usage("nf needs --forest or --system with --element"),
        },
        Command::Verify { sys, nmax, relators } => {
            let budget = cli.budget.unwrap_or(VERIFY_BUDGET);
            let sampler = Sampler { seed: cli.seed, ..Sampler::default() };
            with_spec(sys, |spec| with_system!(spec, |s| verify(&s, *nmax, *relators, &sampler, budget)))
        }
        Command::Homology { matching, s, dlk, system, ring, n, field, out } => {
            let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
            let ns = match parse_range(n) {
                Ok(r) => r,
                Err(e) => return Outcome::usage(e),
            };
            let fields: Result<Vec<Field>, String> = if field.is_empty() {
                Ok(vec![Field::Q, Field::Fp(2)])
            } else {
                field.iter().map(|f| Field::parse(f)).collect()
            };
            let fields = match fields {
                Ok(f) => f,
                Err(e) => return Outcome::usage(e),
            };
            let req = HomologyRequest { ns, fields, out: out.clone(), seed: cli.seed };
            if *matching {
                if *s == 0 {
                    return Outcome::usage("--s must be positive");
                }
                homology(&req, &format!("matching s={s}"), |n| build_matching_complex(n, *s, budget), |n| Some(nu(n) - 1))
            } else if *dlk {
                let args = SystemArgs { system: system.clone().unwrap_or_default(), ring: ring.clone() };
                with_spec(&args, |spec| {
                    let bound = dlk_bound(spec);
                    with_system!(spec, |sys| homology(
                        &req,
                        &format!("dlk system={}", sys.name()),
                        |n| build_dlk(&sys, n, budget).map(|d| d.complex),
                        bound
                    ))
                })
            } else {
                Outcome::usage("homology needs --matching or --dlk")
            }
        }
        Command::Mul { sys, a, b } => {
            with_spec(sys, |spec| with_system!(spec, |s| element_op(&s, &[a.as_str(), b.as_str()], Op::Mul)))
        }
        Command::Eq { sys, a, b } => {
            with_spec(sys, |spec| with_system!(spec, |s| element_op(&s, &[a.as_str(), b.as_str()], Op::Eq)))
        }
        Command::Inv { sys, a } => with_spec(sys, |spec| with_system!(spec, |s| element_op(&s, &[a.as_str()], Op::Inv))),
    }
}

fn with_spec(args: &SystemArgs, f: impl FnOnce(&SystemSpec) -> Outcome) -> Outcome {
    match args.spec() {
        Ok(spec) => f(&spec),
        Err(e) => Outcome::usage(e),
    }
}

/// `a`, `a..b` or `a..=b`, inclusive.
pub fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad n {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a < 1 || a > b {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok((a..=b).collect())
}

enum Op {
    Nf,
    Mul,
    Eq,
    Inv,
}

fn element_op<S: CloningSystem>(sys: &S, inputs: &[&str], op: Op) -> Outcome {
    let mut els = Vec::new();
    for s in inputs {
        match thompson::parse(sys, s) {
            Ok(t) => els.push(t),
            Err(e) => return Outcome::usage(format!("{s:?}: {e}")),
        }
    }
    let show = |t: &thompson::Element<S::Elem>| format!("{}\n", thompson::format(sys, &thompson::reduce(sys, t)));
    match op {
        Op::Nf => Outcome::ok(show(&els[0])),
        Op::Inv => Outcome::ok(show(&thompson::inv(sys, &els[0]))),
        Op::Mul => Outcome::ok(show(&thompson::mul(sys, &els[0], &els[1]))),
        Op::Eq => match thompson::decide_eq(sys, &els[0], &els[1]) {
            Some(true) => Outcome::ok("true\n".into()),
            Some(false) => Outcome { stdout: "false\n".into(), stderr: String::new(), code: EXIT_FALSE },
            None => Outcome {
                stdout: "undecided\n".into(),
                stderr: "equality of the middle group elements could not be decided\n".into(),
                code: EXIT_FALSE,
            },
        },
    }
}

/// Triples `(g, h, k)` the element-wise checks would examine.
fn projected_verify_work<S: CloningSystem>(sys: &S, nmax: usize, sampler: &Sampler) -> u64 {
    (1..=nmax)
        .map(|n| {
            let size = match sys.order(n) {
                Some(o) if o <= cloneforge::axioms::EXHAUSTIVE_LIMIT => o as u64,
                _ => (sampler.samples + sys.generators(n).len() + 1) as u64,
            };
            size.saturating_mul(size).saturating_mul(n as u64)
        })
        .fold(0u64, u64::saturating_add)
}

fn verify<S: CloningSystem>(sys: &S, nmax: usize, relators: bool, sampler: &Sampler, budget: u64) -> Outcome {
    if nmax < 2 {
        return Outcome::usage("--nmax must be at least 2");
    }
    let presented = sys.presentation_checks(0).is_some();
    if relators && !presented {
        return Outcome::usage(format!("{} is not checked through a presentation", sys.name()));
    }
    let mut rep = if presented {
        let lines = sys.presentation_checks(nmax).expect("presented");
        AxiomReport { system: sys.name(), notes: vec!["checked on generators and defining relations".into()], lines }
    } else {
        let work = projected_verify_work(sys, nmax, sampler);
        if work > budget {
            return Outcome::budget(format!("projected {work} checks exceed budget {budget}"));
        }
        let mut rep = check_axioms(sys, nmax, sampler);
        rep.notes.retain(|n| !n.starts_with("system "));
        rep.lines.extend(check_properly_graded(sys, nmax).lines);
        rep
    };
    rep.notes.insert(0, format!("cloneforge verify system={} nmax={nmax} seed={}", sys.name(), sampler.seed));
    let failing = rep.lines.iter().filter(|l: &&AxiomLine| !l.info && matches!(l.status, Status::Fail | Status::Undecided)).count();
    let mut out = rep.to_tsv();
    let _ = writeln!(out, "# {}", if failing == 0 { "all checked axioms pass" } else { "some checks fail or are undecided" });
    Outcome { stdout: out, stderr: String::new(), code: if failing == 0 { EXIT_OK } else { EXIT_FALSE } }
}

struct HomologyRequest {
    ns: Vec<usize>,
    fields: Vec<Field>,
    out: Option<String>,
    seed: u64,
}

/// Connectivity the descending link is expected to have, where known.
fn dlk_bound(spec: &SystemSpec) -> impl Fn(usize) -> Option<isize> {
    let kind = match spec {
        SystemSpec::Trivial | SystemSpec::BBar(_) => 1,
        SystemSpec::Borel(_) => 2,
        _ => 0,
    };
    move |n| match kind {
        1 => Some(nu(n) - 1),
        2 => Some(eta(n - 1) - 1),
        _ => None,
    }
}

fn homology(
    req: &HomologyRequest,
    what: &str,
    build: impl Fn(usize) -> Result<SimplicialComplex, ComplexError>,
    bound: impl Fn(usize) -> Option<isize>,
) -> Outcome {
    let mut out = String::new();
    let _ = writeln!(out, "# cloneforge homology {what} seed={}", req.seed);
    let _ = writeln!(out, "# reduced Betti numbers; connectivity is certified homologically only");
    let cols: Vec<String> = req.fields.iter().map(|f| format!("rank_{}", f.name())).collect();
    let _ = writeln!(out, "n\tdim\t{}\tbound\twithin_bound", cols.join("\t"));
    let mut all_ok = true;
    for &n in &req.ns {
        let cx = match build(n) {
            Ok(c) => c,
            Err(e @ ComplexError::Budget { .. }) => return Outcome::budget(format!("n={n}: {e}")),
            Err(e) => return Outcome::usage(format!("n={n}: {e}")),
        };
        if let Some(path) = &req.out {
            let path = if req.ns.len() == 1 { path.clone() } else { format!("{path}.n{n}") };
            if let Err(e) = std::fs::write(&path, cx.export()) {
                return Outcome::usage(format!("cannot write {path}: {e}"));
            }
        }
        let ranks: Vec<Vec<usize>> = req.fields.iter().map(|&f| betti(&cx, f)).collect();
        let b = bound(n);
        let conn: Vec<isize> = ranks.iter().map(|r| homological_connectivity(r)).collect();
        let _ = writeln!(
            out,
            "# n={n} vertices={} simplices={:?} connectivity={}",
            cx.vertex_count(),
            cx.counts(),
            conn.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        if cx.dim() < 0 {
            let _ = writeln!(out, "{n}\t-1\t{}\t{}\t-", vec!["empty"; cols.len()].join("\t"), fmt_bound(b));
            continue;
        }
        for d in 0..=cx.dim() as usize {
            let vals: Vec<String> = ranks.iter().map(|r| r[d].to_string()).collect();
            let within = match b {
                Some(b) if (d as isize) <= b => {
                    let ok = ranks.iter().all(|r| r[d] == 0);
                    all_ok &= ok;
                    if ok { "yes" } else { "no" }
                }
                _ => "-",
            };
            let _ = writeln!(out, "{n}\t{d}\t{}\t{}\t{within}", vals.join("\t"), fmt_bound(b));
        }
    }
    Outcome { stdout: out, stderr: String::new(), code: if all_ok { EXIT_OK } else { EXIT_FALSE } }
}

fn fmt_bound(b: Option<isize>) -> String {
    b.map_or("-".into(), |b| b.to_string())
}

/// Size the global worker pool from `CLONEFORGE_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("CLONEFORGE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
