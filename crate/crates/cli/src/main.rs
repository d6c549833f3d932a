mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sepdim_core::enumerate::Caps;
use sepdim_core::formulas::{self, CrosscheckOptions, Status};
use sepdim_core::game::{conjecture_scan, fractional_sepdim, Reduction, ScanFamily};
use sepdim_core::graph::{generate, parse_graph, FamilySpec, Graph};
use sepdim_core::ordering::Mode;
use sepdim_core::rational::{fmt_pq, parse_rational, Rational};
use sepdim_core::strategies::{identities, strategy_suite, swaps, tree};

use report::{CapFlags, Format, GraphSummary, Rendered, RunReport};

const DEFAULT_BUDGET_SECS: u64 = 60;

#[derive(Parser, Debug)]
#[command(name = "sepdim", version, about = "Exact fractional separation dimension of small graphs")]
struct Cli {
    /// Worker threads for enumeration (falls back to SEPDIM_THREADS).
    #[arg(long, global = true, env = "SEPDIM_THREADS")]
    threads: Option<usize>,

    /// Emit the JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit a CSV table with a header row.
    #[arg(long, global = true)]
    csv: bool,

    #[command(flatten)]
    caps: CapArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CapArgs {
    /// Largest n for linear enumeration.
    #[arg(long, global = true, default_value_t = 10)]
    max_linear: usize,
    /// Largest n for circular enumeration.
    #[arg(long, global = true, default_value_t = 10)]
    max_circular: usize,
    /// Largest n for the pattern reduction.
    #[arg(long, global = true, default_value_t = 14)]
    max_patterns: usize,
    /// Branch-and-bound time budget in seconds.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_SECS)]
    budget: u64,
    /// Required to raise any cap or budget above its default.
    #[arg(long, global = true)]
    i_have_time: bool,
}

impl CapArgs {
    fn caps(&self) -> anyhow::Result<Caps> {
        let d = Caps::default();
        let raised = self.max_linear > d.linear
            || self.max_circular > d.circular
            || self.max_patterns > d.patterns
            || self.budget > DEFAULT_BUDGET_SECS;
        if raised && !self.i_have_time {
            bail!("raising caps or the budget above the defaults needs --i-have-time");
        }
        Ok(Caps {
            linear: self.max_linear,
            circular: self.max_circular,
            patterns: self.max_patterns,
        })
    }

    fn flags(&self) -> CapFlags {
        CapFlags {
            linear: self.max_linear,
            circular: self.max_circular,
            patterns: self.max_patterns,
            budget_secs: self.budget,
            i_have_time: self.i_have_time,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the separation game exactly.
    Solve {
        /// Family spec ("C:7", "K:3,3", "petersen", ...) or an edge-list file ("@path").
        source: String,
        #[arg(long, default_value = "linear")]
        mode: Mode,
        #[arg(long, default_value = "auto")]
        reduction: Reduction,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Seed for the randomized swap checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact values over all complete bipartite or tripartite shapes on n vertices.
    Scan {
        #[arg(long)]
        family: ScanFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "linear")]
        mode: Mode,
    },
    /// The randomized layout strategy on a tree.
    Tree {
        /// Tree source: family spec, "@path", or "random-tree:N" (uses --seed).
        source: String,
        /// Root vertex (default: the smallest-label centroid).
        #[arg(long)]
        root: Option<usize>,
        /// Probability of sending a child to the far side, as "p/q" or a decimal.
        #[arg(long, default_value = "3/4")]
        beta: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact per-class probabilities instead of sampling.
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Formulas,
    Identities,
    Strategies,
    Swaps,
    All,
}

fn load_graph(source: &str, seed: u64) -> anyhow::Result<(Graph, Option<FamilySpec>)> {
    if let Some(path) = source.strip_prefix('@') {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        return Ok((parse_graph(&text)?, None));
    }
    if let Some(n) = source.strip_prefix("random-tree:") {
        let n: usize = n.parse().context("random-tree:N needs an integer")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok((tree::random_tree(n, &mut rng), None));
    }
    let looks_like_file = Path::new(source).is_file()
        && (source.contains('/') || source.ends_with(".txt") || source.ends_with(".edges"));
    if looks_like_file {
        let text = std::fs::read_to_string(source)?;
        return Ok((parse_graph(&text)?, None));
    }
    let spec: FamilySpec = source.parse()?;
    Ok((generate(&spec)?, Some(spec)))
}

fn summary(source: &str, g: &Graph) -> GraphSummary {
    GraphSummary {
        source: source.to_string(),
        n: g.n(),
        edges: g.edges().len(),
        pairs: g.nonincident_pairs().len(),
    }
}

fn base_report(caps: &CapArgs) -> RunReport {
    RunReport {
        schema: 1,
        command: std::env::args().skip(1).collect(),
        graph: None,
        mode: None,
        reduction: None,
        result: Value::Null,
        status: "PASS",
        caps: caps.flags(),
        seed: None,
        timing_ms: 0,
    }
}

fn opt_pq(r: &Option<Rational>) -> String {
    r.as_ref().map(fmt_pq).unwrap_or_else(|| "-".into())
}

fn cmd_solve(cli: &Cli, source: &str, mode: Mode, reduction: Reduction) -> anyhow::Result<Rendered> {
    let caps = cli.caps.caps()?;
    let (g, spec) = load_graph(source, 0)?;
    let sol = fractional_sepdim(&g, mode, reduction, &caps)?;
    let known = spec.as_ref().and_then(|s| formulas::evaluate(s, mode));
    let oracle_match = known.as_ref().map(|k| k.value == sol.pi_f);
    let ok = sol.certified && oracle_match != Some(false);

    let name = match mode {
        Mode::Linear => "pi_f",
        Mode::Circular => "pi_f_circ",
    };
    let mut human = vec![
        format!("graph: {source} (n = {}, {} edges, {} nonincident pairs)", g.n(), g.edges().len(), g.nonincident_pairs().len()),
        format!("mode: {mode}, reduction: {}", sol.reduction),
        format!("{name} = {}", sol.pi_f),
    ];
    if sol.degenerate {
        human.push("no nonincident pairs: the value is 0 by convention".into());
    } else {
        human.push(format!("game value = {}", sol.value));
        human.push(format!(
            "certificate: {}",
            if sol.certified { "primal and dual strategies both attain the value" } else { "FAILED" }
        ));
        human.push(format!("ordering player ({} of {} rows):", sol.primal.len(), sol.rows));
        for (o, w) in &sol.primal {
            human.push(format!("  {w}  {o}"));
        }
        human.push("pair player (weight per class):".into());
        for c in sol.dual.iter().filter(|c| c.weight != Rational::from_integer(0.into())) {
            human.push(format!("  {}  {} ({} pairs)", c.weight, c.representative, c.size));
        }
    }
    if let Some(k) = &known {
        human.push(format!(
            "closed form ({}): {} {}",
            k.source,
            k.value,
            if oracle_match == Some(true) { "agrees" } else { "DISAGREES" }
        ));
    }

    let mut report = base_report(&cli.caps);
    report.graph = Some(summary(source, &g));
    report.mode = Some(mode.to_string());
    report.reduction = Some(sol.reduction.to_string());
    report.status = if ok { "PASS" } else { "FAIL" };
    report.result = json!({
        "solution": serde_json::to_value(&sol)?,
        "oracle": known.as_ref().map(|k| fmt_pq(&k.value)),
        "oracle_source": known.as_ref().map(|k| k.source),
        "oracle_match": oracle_match,
    });
    let csv_rows = vec![vec![
        source.to_string(),
        mode.to_string(),
        sol.reduction.to_string(),
        g.n().to_string(),
        g.edges().len().to_string(),
        g.nonincident_pairs().len().to_string(),
        fmt_pq(&sol.pi_f),
        sol.certified.to_string(),
        known.as_ref().map(|k| fmt_pq(&k.value)).unwrap_or_default(),
        report.status.to_string(),
    ]];
    Ok(Rendered {
        report,
        human,
        csv_header: vec!["source", "mode", "reduction", "n", "edges", "pairs", "pi_f", "certified", "oracle", "status"],
        csv_rows,
    })
}

struct SuiteRow {
    suite: &'static str,
    item: String,
    status: &'static str,
    detail: String,
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(cli: &Cli, suite: Suite, seed: u64) -> anyhow::Result<Rendered> {
    let caps = cli.caps.caps()?;
    let want = |s: Suite| suite == s || suite == Suite::All;
    let mut rows: Vec<SuiteRow> = Vec::new();
    let mut payload = serde_json::Map::new();

    if want(Suite::Identities) {
        let checks = identities::all_identities();
        for c in &checks {
            rows.push(SuiteRow {
                suite: "identities",
                item: format!("{} {}", c.family, c.params),
                status: pass(c.ok),
                detail: format!("{} = {}", c.lhs, c.rhs),
            });
        }
        payload.insert("identities".into(), serde_json::to_value(&checks)?);
    }
    if want(Suite::Strategies) {
        let checks = strategy_suite()?;
        for c in &checks {
            rows.push(SuiteRow {
                suite: "strategies",
                item: format!("{} {}", c.name, c.mode),
                status: pass(c.ok),
                detail: format!("min {} guarantee {} bound {}", opt_pq(&c.min), opt_pq(&c.guarantee), opt_pq(&c.bound)),
            });
        }
        payload.insert("strategies".into(), serde_json::to_value(&checks)?);
    }
    if want(Suite::Swaps) {
        let checks = swaps::all_swaps(seed);
        for c in &checks {
            rows.push(SuiteRow {
                suite: "swaps",
                item: c.family.clone(),
                status: pass(c.ok()),
                detail: match c.failures.first() {
                    Some(f) => f.clone(),
                    None => format!("{} moves", c.moves_checked),
                },
            });
        }
        payload.insert("swaps".into(), serde_json::to_value(&checks)?);
    }
    if want(Suite::Formulas) {
        let opts = CrosscheckOptions {
            caps,
            budget: Duration::from_secs(cli.caps.budget),
        };
        let checks = formulas::formula_suite(&opts)?;
        for c in &checks {
            rows.push(SuiteRow {
                suite: "formulas",
                item: format!("{} {}", c.family, c.mode),
                status: match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Partial => "PARTIAL",
                },
                detail: format!(
                    "oracle {} lp {} ordering bound {} pair bound {}",
                    opt_pq(&c.oracle),
                    opt_pq(&c.lp),
                    opt_pq(&c.ordering_bound),
                    opt_pq(&c.pair_bound)
                ),
            });
        }
        payload.insert("formulas".into(), serde_json::to_value(&checks)?);
    }

    let failed = rows.iter().filter(|r| r.status == "FAIL").count();
    let mut report = base_report(&cli.caps);
    report.status = pass(failed == 0);
    if want(Suite::Swaps) {
        report.seed = Some(seed);
    }
    report.result = Value::Object(payload);
    let mut human: Vec<String> = rows
        .iter()
        .map(|r| format!("{:<8} {:<10} {}: {}", r.status, r.suite, r.item, r.detail))
        .collect();
    human.push(format!("{} checks, {failed} failed", rows.len()));
    let csv_rows = rows
        .into_iter()
        .map(|r| vec![r.suite.to_string(), r.item, r.status.to_string(), r.detail])
        .collect();
    Ok(Rendered {
        report,
        human,
        csv_header: vec!["suite", "item", "status", "detail"],
        csv_rows,
    })
}

fn shape_name(parts: &[usize]) -> String {
    format!("K_{{{}}}", parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
}

fn cmd_scan(cli: &Cli, family: ScanFamily, n: usize, mode: Mode) -> anyhow::Result<Rendered> {
    let caps = cli.caps.caps()?;
    // An explicit --max-patterns above the default lets the scan go further.
    let cap = (caps.patterns > Caps::default().patterns).then_some(caps.patterns);
    let rows = conjecture_scan(n, family, mode, cap)?;
    let mut human = vec![format!("{family:?} shapes on {n} vertices, {mode}")];
    for r in &rows {
        human.push(format!(
            "{} {:<14} {}{}",
            if r.argmax { "*" } else { " " },
            shape_name(&r.parts),
            r.pi_f.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            r.skipped.as_ref().map(|s| format!(" (skipped: {s})")).unwrap_or_default()
        ));
    }
    let mut report = base_report(&cli.caps);
    report.mode = Some(mode.to_string());
    report.result = json!({ "family": format!("{family:?}").to_lowercase(), "n": n, "rows": serde_json::to_value(&rows)? });
    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+"),
                r.pi_f.as_ref().map(fmt_pq).unwrap_or_default(),
                r.argmax.to_string(),
                r.skipped.clone().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Rendered {
        report,
        human,
        csv_header: vec!["parts", "pi_f", "argmax", "skipped"],
        csv_rows,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_tree(
    cli: &Cli,
    source: &str,
    root: Option<usize>,
    beta: &str,
    samples: u64,
    seed: u64,
    exact: bool,
) -> anyhow::Result<Rendered> {
    let beta_q = parse_rational(beta)?;
    let beta_f = beta_q.to_f64().context("beta out of range")?;
    let (g, _) = load_graph(source, seed)?;
    let rep = tree::tree_report(&g, root, &beta_q)?;
    let mut report = base_report(&cli.caps);
    report.graph = Some(summary(source, &g));
    report.mode = Some("linear".into());
    if source.starts_with("random-tree:") || !exact {
        report.seed = Some(seed);
    }
    let mut human = vec![format!(
        "tree {source}: n = {}, {} nonincident pairs, root {}, beta = {}",
        g.n(),
        rep.classes.len(),
        rep.root,
        rep.beta
    )];

    // Classes by (type, root involvement).
    let mut groups: std::collections::BTreeMap<(u8, bool), (usize, String, Rational)> = Default::default();
    for c in &rep.classes {
        groups
            .entry((c.kind.number(), c.root_involved))
            .or_insert_with(|| (0, c.probability.to_string(), c.probability.eval(&beta_q)))
            .0 += 1;
    }
    let mut csv_rows = Vec::new();
    for ((kind, root_inv), (count, poly, value)) in &groups {
        human.push(format!(
            "  type {kind}{}: {count} pairs, probability {poly} = {value}",
            if *root_inv { " at root" } else { "" }
        ));
        csv_rows.push(vec![kind.to_string(), root_inv.to_string(), count.to_string(), poly.clone(), fmt_pq(value)]);
    }
    let bound = rep.guarantee.as_ref().map(|m| Rational::from_integer(1.into()) / m);
    match (&rep.guarantee, &bound) {
        (Some(m), Some(b)) => human.push(format!("min probability {m}, so pi_f <= {b}")),
        _ => human.push("no nonincident pairs".into()),
    }

    let mut result = json!({
        "root": rep.root,
        "beta": fmt_pq(&rep.beta),
        "classes": groups.iter().map(|((k, r), (c, p, v))| json!({
            "type": k, "root_involved": r, "pairs": c, "polynomial": p, "probability": fmt_pq(v),
        })).collect::<Vec<_>>(),
        "min_probability": rep.guarantee.as_ref().map(fmt_pq),
        "bound": bound.as_ref().map(fmt_pq),
    });
    let mut ok = true;
    if !exact {
        let t = tree::RootedTree::new(&g, Some(rep.root))?;
        let mc = tree::monte_carlo(&g, &t, beta_f, samples, seed)?;
        ok &= mc.property_failures == 0;
        let mut mc_json = json!({
            "approximate": true,
            "samples": mc.samples,
            "seed": mc.seed,
            "property_failures": mc.property_failures,
        });
        if let (Some((i, f, se)), Some(m)) = (mc.min_frequency(), &rep.guarantee) {
            let exact_min = m.to_f64().unwrap_or(f64::NAN);
            let within = f >= exact_min - 4.0 * se;
            ok &= within;
            human.push(format!(
                "Monte Carlo ({samples} samples, seed {seed}): min frequency {f:.5} +/- {se:.5} at {}; exact min {exact_min:.5}",
                rep.classes[i].pair
            ));
            mc_json["min_frequency"] = json!(f);
            mc_json["standard_error"] = json!(se);
            mc_json["argmin"] = json!(rep.classes[i].pair.to_string());
            mc_json["within_4_se"] = json!(within);
        }
        human.push(format!("descendant property failures: {}", mc.property_failures));
        result["monte_carlo"] = mc_json;
    }
    report.result = result;
    report.status = pass(ok);
    Ok(Rendered {
        report,
        human,
        csv_header: vec!["type", "root_involved", "pairs", "polynomial", "probability"],
        csv_rows,
    })
}

fn run(cli: &Cli) -> anyhow::Result<Rendered> {
    match &cli.command {
        Command::Solve { source, mode, reduction } => cmd_solve(cli, source, *mode, *reduction),
        Command::Verify { suite, seed } => cmd_verify(cli, *suite, *seed),
        Command::Scan { family, n, mode } => cmd_scan(cli, *family, *n, *mode),
        Command::Tree {
            source,
            root,
            beta,
            samples,
            seed,
            exact,
        } => cmd_tree(cli, source, *root, beta, *samples, *seed, *exact),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(mut r) => {
            r.report.timing_ms = start.elapsed().as_millis();
            if let Err(e) = r.emit(format) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if r.report.status == "PASS" {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
