//! Command-line front end: argument parsing, run configuration, and
//! deterministic JSON reports.
//!
//! Exit codes: 0 when every check of the invoked command passes, 1 for a
//! mathematical finding (a mismatch), 2 for usage and resource errors.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::division::{make_algebra, superinvolutions, AlgebraName};
use crate::dual_pairs::{build_row, factorize, find_row, minimal_corpus, verify_dual_pair, DualPairInstance, PairType};
use crate::error::{Error, Result};
use crate::graded::{spo_ambient, supercommutant};
use crate::invariants::{
    complexification_check, double_commutant_check, howe_decompose, pfaffian_gap, preset, wc_invariants, complexify,
    HCPair, PRESETS,
};
use crate::realizations::{crosscheck, parse_family, realize, Entries, FamilyTag};
use crate::wc::wc_algebra;

pub const SCHEMA: &str = "superpair-report/1";
pub const OUT_DIR_ENV: &str = "SUPERPAIR_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "superpair", version, about = "Exact computations with orthosymplectic dual pairs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalOpts {
    /// Report path; defaults to $SUPERPAIR_OUT_DIR/<command>.json, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Maximum number of unknowns in one linear solve.
    #[arg(long, global = true, default_value_t = crate::invariants::DEFAULT_GUARD, value_parser = clap::value_parser!(usize))]
    pub guard: usize,
    /// Seed recorded in the report; every computation here is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include wall-clock timings (reports are then no longer reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// The ten division superalgebras with dimensions and superinvolutions.
    ListAlgebras,
    /// Realize a family of Lie superalgebras as explicit matrices.
    Realize {
        #[arg(long)]
        family: String,
        /// Comma-separated parameters.
        #[arg(long, default_value = "")]
        params: String,
        /// Entry field: R, C, H, or Cc (C as base field).
        #[arg(long, default_value = "R")]
        field: String,
    },
    /// Check that a table row is a dual pair (mutual supercommutants).
    VerifyPair {
        /// TABLE:ROW or TABLE:ROW:U-SHAPE;W-SHAPE
        #[arg(long)]
        pair: String,
    },
    /// Run every row of the classification corpus.
    VerifyTables {
        /// Use the minimal-shape corpus (the only corpus shipped).
        #[arg(long)]
        minimal: bool,
    },
    /// Supercommutant of one member of a pair inside spo(E,B).
    Commutant {
        #[arg(long)]
        pair: String,
        /// g or g-prime
        #[arg(long, default_value = "g")]
        side: String,
    },
    /// Degree-bounded invariants of the Weyl-Clifford algebra.
    WcInvariants {
        /// A preset, `pfaffian`, or TABLE:ROW[:SHAPE].
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Compare invariants with the subalgebra generated by the partner.
    DoubleCommutant {
        /// A preset or TABLE:ROW[:SHAPE].
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Howe decomposition of S(C^{k|l} ⊗ C^{2n|1}) by degree.
    Howe {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Cross-check realizations against spans computed from forms, or the
    /// real-to-complex reduction of invariants.
    Crosscheck {
        /// A family name; omit to run every family at minimal parameters.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value = "R")]
        field: String,
        /// Compare real-pair and complex-pair invariants instead.
        #[arg(long)]
        complexification: bool,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ListAlgebras => "list-algebras",
            Command::Realize { .. } => "realize",
            Command::VerifyPair { .. } => "verify-pair",
            Command::VerifyTables { .. } => "verify-tables",
            Command::Commutant { .. } => "commutant",
            Command::WcInvariants { .. } => "wc-invariants",
            Command::DoubleCommutant { .. } => "double-commutant",
            Command::Howe { .. } => "howe",
            Command::Crosscheck { .. } => "crosscheck",
        }
    }
}

/// Result of one command before serialization.
pub struct Outcome {
    pub pass: bool,
    pub summary: String,
    pub results: Value,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: Value,
    pub pass: bool,
    pub summary: String,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Removes wall-clock fields so identical inputs give identical bytes.
fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("runtime_ms");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn parse_params(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad parameter `{t}`"))))
        .collect()
}

fn family_tag(family: &str, params: &str, field: &str) -> Result<FamilyTag> {
    let entries: Entries = field.parse()?;
    FamilyTag::new(parse_family(family, entries)?, parse_params(params)?)
}

/// TABLE:ROW or TABLE:ROW:U;W
fn row_instance(spec: &str) -> Result<DualPairInstance> {
    let mut it = spec.splitn(3, ':');
    let table = it.next().unwrap_or_default();
    let row: usize = it
        .next()
        .ok_or_else(|| Error::Parse(format!("pair `{spec}` needs TABLE:ROW")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad row in `{spec}`")))?;
    build_row(&find_row(table, row)?, it.next())
}

fn cmd_list_algebras() -> Outcome {
    let entries: Vec<Value> = AlgebraName::ALL
        .iter()
        .map(|&n| {
            let a = make_algebra(n);
            let invs: Vec<String> = superinvolutions(&a).iter().map(|s| s.tag.to_string()).collect();
            json!({
                "name": n.to_string(),
                "real_dim": a.real_dim(),
                "graded_dim": [a.even_dim(), a.dim() - a.even_dim()],
                "superinvolutions": invs,
                "algebra": a.to_json(),
            })
        })
        .collect();
    let dims: Vec<String> = AlgebraName::ALL.iter().map(|&n| make_algebra(n).real_dim().to_string()).collect();
    Outcome { pass: true, summary: format!("10 algebras, real dimensions {}", dims.join(",")), results: Value::Array(entries) }
}

fn cmd_realize(family: &str, params: &str, field: &str) -> Result<Outcome> {
    let tag = family_tag(family, params, field)?;
    let span = realize(&tag)?;
    let closed = span.is_bracket_closed();
    let (a, b) = span.graded_dim();
    Ok(Outcome {
        pass: closed,
        summary: format!("{tag}: graded dimension ({a}|{b}), bracket closed: {closed}"),
        results: json!({ "tag": tag.to_string(), "bracket_closed": closed, "span": span.to_json() }),
    })
}

fn pair_outcome(inst: &DualPairInstance, seed: u64) -> Result<(bool, Value)> {
    let rep = verify_dual_pair(inst)?;
    let mut v = to_value(&rep);
    let mut pass = rep.centralizer_ok;
    if inst.pair_type == PairType::I {
        let f = factorize(&inst.g, &inst.u_copy);
        let fv = match &f {
            Ok(r) => json!({
                "d_graded_dim": r.d_graded_dim(),
                "w_graded_dim": r.w_graded_dim(),
                "bijective": r.iso_witness.bijective,
                "division": crate::dual_pairs::looks_like_division(&r.d_basis, seed),
            }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        pass &= f.map(|r| r.iso_witness.bijective).unwrap_or(false);
        v["factorization"] = fv;
    }
    Ok((pass, v))
}

fn cmd_verify_pair(spec: &str, seed: u64) -> Result<Outcome> {
    let inst = row_instance(spec)?;
    let (pass, v) = pair_outcome(&inst, seed)?;
    Ok(Outcome { pass, summary: format!("{spec}: dual pair {}", if pass { "verified" } else { "NOT verified" }), results: v })
}

fn cmd_verify_tables(seed: u64) -> Result<Outcome> {
    let rows = minimal_corpus();
    type RowOutcome = (String, usize, Result<(bool, Value)>);
    let mut out: Vec<RowOutcome> = rows
        .par_iter()
        .map(|r| (r.table.clone(), r.row, build_row(r, None).and_then(|i| pair_outcome(&i, seed))))
        .collect();
    out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    let mut passed = 0;
    let mut results = Vec::new();
    for (t, r, res) in out {
        let (ok, v) = res?;
        passed += usize::from(ok);
        results.push(json!({ "table": t, "row": r, "pass": ok, "report": v }));
    }
    let n = results.len();
    Ok(Outcome { pass: passed == n, summary: format!("{passed}/{n} rows pass"), results: Value::Array(results) })
}

fn cmd_commutant(spec: &str, side: &str) -> Result<Outcome> {
    let inst = row_instance(spec)?;
    let (src, other) = match side {
        "g" => (&inst.g, &inst.g_prime),
        "g-prime" | "gprime" => (&inst.g_prime, &inst.g),
        _ => return Err(Error::InvalidParams(format!("side must be g or g-prime, got `{side}`"))),
    };
    let amb = spo_ambient(&inst.e)?;
    let c = supercommutant(src, &amb)?;
    let eq = c.span_eq(other);
    let (a, b) = c.graded_dim();
    Ok(Outcome {
        pass: eq,
        summary: format!("commutant of {side}: ({a}|{b}), equals partner: {eq}"),
        results: json!({ "side": side, "commutant": c.to_json(), "equals_partner": eq }),
    })
}

/// A preset (with its component representatives) or a table row (treated
/// as connected).
fn pair_and_reps(spec: &str) -> Result<(DualPairInstance, Vec<crate::wc::GroupElement>, String)> {
    if PRESETS.contains(&spec) {
        let p = preset(spec)?;
        Ok((p.instance, p.component_reps, p.description.to_string()))
    } else {
        Ok((row_instance(spec)?, Vec::new(), format!("row {spec}, identity component only")))
    }
}

fn cmd_wc_invariants(spec: &str, d: usize, guard: usize) -> Result<Outcome> {
    if spec == "pfaffian" {
        let r = pfaffian_gap(guard)?;
        return Ok(Outcome {
            pass: r.gap >= 1,
            summary: format!(
                "degree {}: {} algebra invariants vs {} group invariants (gap {})",
                r.degree, r.dim_algebra_invariants, r.dim_group_invariants, r.gap
            ),
            results: to_value(&r),
        });
    }
    let (inst, reps, desc) = pair_and_reps(spec)?;
    let inst = if inst.e.space.field == crate::FieldTag::R { complexify(&inst) } else { inst };
    let alg = wc_algebra(&inst.e)?;
    let inv = wc_invariants(&HCPair::new(inst.g.clone(), reps)?, &alg, d, guard)?;
    let dims: Vec<usize> = (0..=d).map(|k| inv.dim_upto(k)).collect();
    let basis: Vec<Value> = inv.elements(&alg).iter().map(|e| to_value(&e.to_json())).collect();
    Ok(Outcome {
        pass: true,
        summary: format!("{desc}: invariant dimensions by degree {dims:?}"),
        results: json!({ "pair": spec, "description": desc, "dims_by_degree": dims, "basis": basis }),
    })
}

fn cmd_double_commutant(spec: &str, d: usize, guard: usize) -> Result<Outcome> {
    let (inst, reps, desc) = pair_and_reps(spec)?;
    let r = double_commutant_check(&inst, reps, d, guard)?;
    let pass = r.all_equal();
    let mut v = to_value(&r);
    v["description"] = json!(desc);
    Ok(Outcome { pass, summary: format!("{desc}: invariants = generated for every degree ≤ {d}: {pass}"), results: v })
}

fn cmd_howe(n: usize, k: usize, l: usize, d: usize, guard: usize) -> Result<Outcome> {
    let r = howe_decompose(n, k, l, d, guard)?;
    let pass = r.all_pass();
    Ok(Outcome { pass, summary: format!("(n,k,l) = ({n},{k},{l}), degrees ≤ {d}: {}", if pass { "pass" } else { "FAIL" }), results: to_value(&r) })
}

fn cmd_crosscheck(family: Option<&str>, params: &str, field: &str, cx: bool, d: usize, guard: usize) -> Result<Outcome> {
    if cx {
        let r = complexification_check(d, guard)?;
        return Ok(Outcome {
            pass: r.spans_equal,
            summary: format!("real vs complex invariants by degree: {:?} vs {:?}", r.real_dims, r.complex_dims),
            results: to_value(&r),
        });
    }
    let tags = match family {
        Some(f) => vec![family_tag(f, params, field)?],
        None => FamilyTag::minimal_tags(),
    };
    let reports = tags.par_iter().map(crosscheck).collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().filter(|r| r.equal && r.bracket_closed).count();
    Ok(Outcome { pass: ok == reports.len(), summary: format!("{ok}/{} realizations match", reports.len()), results: to_value(&reports) })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if g.guard == 0 {
        return Err(Error::InvalidParams("--guard must be positive".into()));
    }
    let seed = g.seed.unwrap_or(0);
    match &cli.command {
        Command::ListAlgebras => Ok(cmd_list_algebras()),
        Command::Realize { family, params, field } => cmd_realize(family, params, field),
        Command::VerifyPair { pair } => cmd_verify_pair(pair, seed),
        Command::VerifyTables { .. } => cmd_verify_tables(seed),
        Command::Commutant { pair, side } => cmd_commutant(pair, side),
        Command::WcInvariants { pair, max_degree } => cmd_wc_invariants(pair, *max_degree, g.guard),
        Command::DoubleCommutant { pair, max_degree } => cmd_double_commutant(pair, *max_degree, g.guard),
        Command::Howe { n, k, l, max_degree } => cmd_howe(*n, *k, *l, *max_degree, g.guard),
        Command::Crosscheck { family, params, field, complexification, max_degree } => {
            cmd_crosscheck(family.as_deref(), params, field, *complexification, *max_degree, g.guard)
        }
    }
}

/// Builds the report for parsed arguments; `Err` means a usage or resource
/// error.
pub fn report(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| execute(cli))?;
    let mut results = outcome.results;
    if !cli.global.timing {
        strip_timings(&mut results);
    }
    let config = json!({ "guard": cli.global.guard, "seed": cli.global.seed, "arguments": to_value(&cli.command) });
    Ok(Report {
        schema: SCHEMA,
        command: cli.command.name().to_string(),
        config,
        pass: outcome.pass,
        summary: outcome.summary,
        results,
        timing_ms: cli.global.timing.then(|| start.elapsed().as_millis()),
    })
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    cli.global
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{}.json", cli.command.name()))))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let rep = match report(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = serde_json::to_string_pretty(&rep).expect("report serializes") + "\n";
    match destination(&cli) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    eprintln!("error: cannot create {}: {e}", dir.display());
                    return 2;
                }
            }
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            eprintln!("{} (report: {})", rep.summary, path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{}", rep.summary);
        }
    }
    if rep.pass {
        0
    } else {
        1
    }
}
