use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use happylab::checks::{run_suite, CheckConfig, CheckReport, Suite, Witness};
use happylab::format::{parse_hypergraph, parse_instance, write_hypergraph, write_instance};
use happylab::generators::{gen_gap_instance, reduce_hypmc};
use happylab::lp::{write_lp_format, Simplex};
use happylab::rational::parse_rational;
use happylab::relaxation::{build_lp, solve_relaxation};
use happylab::rounding::{solve_approx, RoundingMode};
use happylab::solvers::{solve_exact_with_budget, solve_greedy, DEFAULT_BUDGET};
use happylab::{Error, Instance, Objective, Rational};
use serde::Serialize;

use crate::report::{ratio, InstanceInfo, Rounding, RunReport, Value};
use crate::spec::GenSpec;
use crate::{Algo, CheckArgs, Failure, Format, GapTableArgs, GenerateArgs, ReduceArgs, SolveArgs, Source};

const BUDGET_VAR: &str = "HAPPYLAB_BUDGET";

/// Completion budget for brute force and hyperedge budget for Hyp-MC
/// enumeration. `HAPPYLAB_BUDGET = B` allows `B` completions and
/// `⌊log₂ B⌋` hyperedges (at most `B` subsets).
fn budgets() -> Result<(u64, usize), Failure> {
    match std::env::var(BUDGET_VAR) {
        Err(_) => Ok((DEFAULT_BUDGET, happylab::generators::DEFAULT_HYPEREDGE_BUDGET)),
        Ok(text) => {
            let b: u64 = text.trim().parse().map_err(|_| Failure::usage(format!("{BUDGET_VAR}: bad value '{text}'")))?;
            let hyperedges = if b == 0 { 0 } else { (u64::BITS - 1 - b.leading_zeros()) as usize };
            Ok((b, hyperedges))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::property(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, err: Error) -> Failure {
    let mut failure = Failure::from(err);
    failure.message = format!("{}: {}", path.display(), failure.message);
    failure
}

fn gen_spec(gen: Option<&str>, config: Option<&Path>) -> Result<GenSpec, Failure> {
    let from_config = config.map(|p| GenSpec::parse_config(&read(p)?).map_err(|e| in_file(p, e))).transpose()?;
    let from_flag = gen.map(GenSpec::parse).transpose()?;
    match (from_config, from_flag) {
        (Some(c), Some(f)) => Ok(c.merged(f)?),
        (Some(s), None) | (None, Some(s)) => Ok(s),
        (None, None) => Err(Failure::usage("need --input, --gen or --config")),
    }
}

fn load(source: &Source, seed: u64) -> Result<(Instance, String), Failure> {
    if let Some(path) = &source.input {
        let inst = parse_instance(&read(path)?).map_err(|e| in_file(path, e))?;
        return Ok((inst, format!("file:{}", path.display())));
    }
    let spec = gen_spec(source.gen.as_deref(), source.config.as_deref())?;
    let inst = spec.instance(seed)?;
    // random generators report the seed they actually used
    let mut described = spec.clone();
    if spec.name == "rand" {
        described.params.entry("seed".into()).or_insert_with(|| seed.to_string());
    }
    Ok((inst, described.to_string()))
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(|e| Failure::property(format!("stdout: {e}")))
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Exact => "exact",
        Algo::Greedy => "greedy",
        Algo::RoundRandom => "round-random",
        Algo::RoundDerand => "round-derand",
    }
}

pub fn solve(args: SolveArgs) -> Result<(), Failure> {
    let (inst, source) = load(&args.source, args.seed)?;
    let (budget, _) = budgets()?;
    let objective = args.problem;
    if let Some(path) = &args.export_lp {
        write(path, &write_lp_format(&build_lp(&inst, objective)?.program))?;
    }
    let started = Instant::now();
    let mut lp_value: Option<Rational> = None;
    let mut exact_value: Option<Rational> = None;
    let mut rounding = None;
    let (value, coloring) = match args.algo {
        Algo::Exact => {
            let sol = solve_exact_with_budget(&inst, objective, budget)?;
            exact_value = Some(sol.value.clone());
            (sol.value, sol.coloring)
        }
        Algo::Greedy => {
            let sol = solve_greedy(&inst, objective)?;
            (sol.value, sol.coloring)
        }
        Algo::RoundRandom | Algo::RoundDerand => {
            let mode = if args.algo == Algo::RoundRandom { RoundingMode::Random(args.seed) } else { RoundingMode::Derandomized };
            let run = solve_approx(&inst, objective, mode)?;
            lp_value = Some(run.lp_value.clone());
            rounding = Some(Rounding {
                theta: Value::from(&run.outcome.theta),
                fallback_label: run.outcome.fallback_label + 1,
                expected_value: run.distribution.as_ref().map(|d| Value::from(d.expected(objective))),
                cells: run.distribution.as_ref().map(|d| d.cells.len()),
            });
            (run.value(objective).clone(), run.outcome.coloring)
        }
    };
    if args.with_lp && lp_value.is_none() {
        lp_value = Some(solve_relaxation(&inst, objective, &Simplex::default())?.value().clone());
    }
    if args.with_exact && exact_value.is_none() {
        exact_value = Some(solve_exact_with_budget(&inst, objective, budget)?.value);
    }
    let elapsed = started.elapsed();

    let report = RunReport {
        instance: InstanceInfo {
            source,
            num_vertices: inst.num_vertices(),
            num_edges: inst.num_edges(),
            num_labels: inst.num_labels(),
            num_uncolored: inst.uncolored().count(),
            max_degree: inst.max_degree(),
        },
        problem: objective.name().to_string(),
        algorithm: algo_name(args.algo).to_string(),
        seed: args.seed,
        value: Value::from(&value),
        lp_value: lp_value.as_ref().map(Value::from),
        exact_value: exact_value.as_ref().map(Value::from),
        value_over_exact: ratio(Some(&value), exact_value.as_ref()),
        exact_over_lp: ratio(exact_value.as_ref(), lp_value.as_ref()),
        rounding,
        coloring: coloring.assignment().iter().map(|c| c + 1).collect(),
        elapsed_ms: args.timing.then_some(elapsed.as_secs_f64() * 1e3),
    };
    emit(&match args.format.format() {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    })
}

#[derive(Serialize)]
struct GapRow {
    k: usize,
    opt: Value,
    lp: Value,
    /// OPT / LP
    ratio: Option<Value>,
    /// `2/k` (MHV, upper) or `2 − 2/k` (MUHV with zero pair weight, lower)
    bound: Option<Value>,
    holds: bool,
}

pub fn gap_table(args: GapTableArgs) -> Result<(), Failure> {
    let parse = |s: &str, what: &str| parse_rational(s).ok_or_else(|| Failure::usage(format!("bad {what} '{s}'")));
    let (wt, wb) = (parse(&args.wt, "--wt")?, parse(&args.wb, "--wb")?);
    if args.k_min < 2 || args.k_min > args.k_max {
        return Err(Failure::usage("need 2 <= k-min <= k-max"));
    }
    let (budget, _) = budgets()?;
    let mut rows = Vec::new();
    for k in args.k_min..=args.k_max {
        let inst = gen_gap_instance(k, wt.clone(), wb.clone())?;
        let opt = solve_exact_with_budget(&inst, args.problem, budget)?.value;
        let lp = solve_relaxation(&inst, args.problem, &Simplex::default())?.value().clone();
        let two_over_k = Rational::new(2.into(), k.into());
        let bound = match args.problem {
            Objective::Mhv => Some(two_over_k),
            Objective::Muhv if num_traits::Zero::is_zero(&wb) => Some(Rational::from_integer(2.into()) - two_over_k),
            Objective::Muhv => None,
        };
        let r = (!num_traits::Zero::is_zero(&lp)).then(|| &opt / &lp);
        let holds = match (&r, &bound, args.problem) {
            (Some(r), Some(b), Objective::Mhv) => r <= b,
            (Some(r), Some(b), Objective::Muhv) => r >= b,
            _ => true,
        };
        rows.push(GapRow {
            k,
            opt: Value::from(&opt),
            lp: Value::from(&lp),
            ratio: r.as_ref().map(Value::from),
            bound: bound.as_ref().map(Value::from),
            holds,
        });
    }
    let dash = |v: &Option<Value>| v.as_ref().map_or("-".to_string(), |v| v.exact.clone());
    let text = match args.format.format() {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let mut out = String::from("k,opt,lp,ratio,bound,holds\n");
            for r in &rows {
                out += &format!("{},{},{},{},{},{}\n", r.k, r.opt.exact, r.lp.exact, dash(&r.ratio), dash(&r.bound), r.holds);
            }
            out
        }
        Format::Text => {
            let mut out = format!("{:>3}  {:>8}  {:>8}  {:>8}  {:>8}  holds\n", "k", "opt", "lp", "opt/lp", "bound");
            for r in &rows {
                out += &format!(
                    "{:>3}  {:>8}  {:>8}  {:>8}  {:>8}  {}\n",
                    r.k,
                    r.opt.exact,
                    r.lp.exact,
                    dash(&r.ratio),
                    dash(&r.bound),
                    if r.holds { "yes" } else { "NO" }
                );
            }
            out
        }
    };
    emit(&text)?;
    match rows.iter().find(|r| !r.holds) {
        Some(r) => Err(Failure::property(format!("gap bound fails at k = {}", r.k))),
        None => Ok(()),
    }
}

fn dump(report: &CheckReport, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::property(format!("{}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for (i, v) in report.violations.iter().enumerate() {
        let tag = v.trial.map_or_else(|| "exhaustive".to_string(), |t| format!("trial{t}"));
        let (ext, text) = match &v.witness {
            Witness::Graph(inst) => ("hg", write_instance(inst)),
            Witness::Hypergraph(h) => ("hh", write_hypergraph(h)),
        };
        let path = dir.join(format!("{}-{tag}-{i}.{ext}", report.suite));
        write(&path, &format!("# {}\n{text}", v.message.replace('\n', " ")))?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn check(args: CheckArgs) -> Result<(), Failure> {
    let suites: Vec<Suite> = if args.suite == "all" { Suite::ALL.to_vec() } else { vec![args.suite.parse()?] };
    let (budget, _) = budgets()?;
    let config = CheckConfig {
        trials: args.trials,
        seed: args.seed,
        exhaustive_max_n: args.exhaustive_n,
        budget,
        ..CheckConfig::default()
    };
    let mut failed = Vec::new();
    for suite in suites {
        let report = run_suite(suite, &config)?;
        if report.passed() {
            emit(&format!("{suite}: pass ({} trials, {} assertions)\n", report.trials, report.assertions))?;
            continue;
        }
        emit(&format!("{suite}: FAIL ({} violations)\n", report.violations.len()))?;
        for (v, path) in report.violations.iter().zip(dump(&report, &args.dump_dir)?) {
            emit(&format!("  {}  -> {}\n", v.message, path.display()))?;
        }
        failed.push(suite.name());
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::property(format!("property violations in {}", failed.join(", "))))
    }
}

pub fn reduce(args: ReduceArgs) -> Result<(), Failure> {
    let h = parse_hypergraph(&read(&args.input)?).map_err(|e| in_file(&args.input, e))?;
    let (inst, map) = reduce_hypmc(&h)?;
    write(&args.output, &write_instance(&inst))?;
    let map_path = args.map.unwrap_or_else(|| {
        let mut name = args.output.clone().into_os_string();
        name.push(".map");
        PathBuf::from(name)
    });
    let mut text = String::from("# hyperedge vertex\n");
    for (e, v) in map.hyperedge.iter().enumerate() {
        text += &format!("{} {}\n", e + 1, v + 1);
    }
    write(&map_path, &text)
}

pub fn generate(args: GenerateArgs) -> Result<(), Failure> {
    let spec = gen_spec(args.gen.as_deref(), args.config.as_deref())?;
    let text = if spec.is_hypergraph() {
        write_hypergraph(&spec.hypergraph(args.seed)?)
    } else {
        write_instance(&spec.instance(args.seed)?)
    };
    match &args.output {
        Some(path) => write(path, &text),
        None => emit(&text),
    }
}
