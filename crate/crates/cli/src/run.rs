//! Command dispatch. Every command fills a [`ReportDocument`]; text mode
//! prints a readable summary, JSON mode prints the document.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use monostab_core::closure::integral_closure_with;
use monostab_core::decomposition::{associated_primes, irreducible_decomposition, minimal_primes};
use monostab_core::resolution::{betti_table_with, depth_over};
use monostab_core::stability::{
    closure_depth_profile, compare_indices, depth_profile, first_increase, profile, profile_streaming,
    IndexComparison, Monotonicity, ProfileOptions,
};
use monostab_core::text::{parse_ideal, parse_ring};
use monostab_core::{Error, Field, Limits, MonomialIdeal, Result, Solver};
use serde_json::json;

use crate::args::{CheckKind, Cli, Command, Global, SolverArg};
use crate::report::{format_primes, prime_names, record_doc, ErrorDoc, Input, ReportDocument};
use crate::suite::{run_suite, SuiteConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

pub fn exit_code(e: &Error) -> u8 {
    if e.is_limit() {
        EXIT_LIMIT
    } else {
        EXIT_USAGE
    }
}

struct Ctx {
    limits: Limits,
    field: Field,
    solver: Solver,
    json: bool,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn context(g: &Global) -> Result<Ctx> {
    let mut limits = Limits::default();
    if let Some(v) = g.limit_lattice_generators {
        limits.lattice_generators = v;
    }
    if let Some(v) = g.limit_lattice_chains {
        limits.lattice_chains = v;
    }
    if let Some(v) = g.limit_lattice_elements {
        limits.lattice_elements = v;
    }
    if let Some(v) = g.limit_closure_box {
        limits.closure_box = v;
    }
    let field = match g.characteristic {
        0 => Field::Rational,
        p if is_prime(p) && p < (1 << 31) => Field::Prime(p),
        p => return Err(usage(format!("--char must be 0 or a prime below 2^31, got {p}"))),
    };
    let solver = match g.solver {
        SolverArg::Simplex => Solver::Simplex,
        SolverArg::FourierMotzkin => Solver::FourierMotzkin,
    };
    Ok(Ctx {
        limits,
        field,
        solver,
        json: g.json,
    })
}

fn usage(msg: String) -> Error {
    Error::Usage(msg)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ass => "ass",
        Command::Min => "min",
        Command::Decompose => "decompose",
        Command::Depth => "depth",
        Command::Betti => "betti",
        Command::Closure { .. } => "closure",
        Command::Colon { .. } => "colon",
        Command::Profile { .. } => "profile",
        Command::Check { which } => match which {
            CheckKind::Dim2 { .. } => "check dim2",
            CheckKind::Dim3 { .. } => "check dim3",
            CheckKind::Monotone { .. } => "check monotone",
        },
        Command::PaperSuite { .. } => "paper-suite",
    }
}

fn input_echo(cli: &Cli) -> Input {
    let g = &cli.global;
    let mut options = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        options.insert(k.to_string(), v);
    };
    if g.characteristic != 0 {
        put("char", g.characteristic.to_string());
    }
    if g.solver != SolverArg::Simplex {
        put("solver", "fourier-motzkin".into());
    }
    match &cli.command {
        Command::Closure { power } => put("power", power.to_string()),
        Command::Colon { by } => put("by", by.clone()),
        Command::Profile { horizon, closure } => {
            put("horizon", horizon.to_string());
            put("closure", closure.to_string());
        }
        Command::Check { which } => match which {
            CheckKind::Dim2 { horizon } | CheckKind::Dim3 { horizon } => put("horizon", horizon.to_string()),
            CheckKind::Monotone { horizon, on_closure } => {
                put("horizon", horizon.to_string());
                put("on_closure", on_closure.to_string());
            }
        },
        Command::PaperSuite { c, horizon } => {
            let cs: Vec<String> = c.iter().map(u64::to_string).collect();
            put("c", cs.join(","));
            if let Some(h) = horizon {
                put("horizon", h.to_string());
            }
        }
        _ => {}
    }
    Input {
        ring: g.ring.clone(),
        ideal: g.ideal.clone(),
        options,
    }
}

fn read_ideal(g: &Global) -> Result<MonomialIdeal> {
    let ring_text = g.ring.as_deref().ok_or_else(|| usage("--ring is required".into()))?;
    let ideal_text = g.ideal.as_deref().ok_or_else(|| usage("--ideal is required".into()))?;
    let ring = parse_ring(ring_text)?;
    parse_ideal(&ring, ideal_text)
}

/// Runs the command, writing all output to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> u8 {
    let start = Instant::now();
    let mut doc = ReportDocument::new(command_name(&cli.command), input_echo(cli));
    let mut text = String::new();
    let result = context(&cli.global).and_then(|ctx| {
        let mut go = || dispatch(cli, &ctx, &mut doc, &mut text, out);
        match cli.global.jobs {
            Some(0) => Err(usage("--jobs must be positive".into())),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| usage(format!("cannot start {n} workers: {e}")))?
                .install(go),
            None => go(),
        }
    });
    doc.timing.total_us = start.elapsed().as_micros() as u64;
    if cli.global.stable_output {
        doc.zero_timing();
    }
    let code = match &result {
        Ok(code) => *code,
        Err(e) => {
            doc.error = Some(ErrorDoc::from_error(e));
            exit_code(e)
        }
    };
    if cli.global.json {
        let _ = writeln!(out, "{}", doc.to_json());
    } else {
        let _ = out.write_all(text.as_bytes());
        if let Err(e) = &result {
            eprintln!("error: {e}");
        }
    }
    code
}

fn dispatch(
    cli: &Cli,
    ctx: &Ctx,
    doc: &mut ReportDocument,
    text: &mut String,
    out: &mut (dyn Write + Send),
) -> Result<u8> {
    use std::fmt::Write as _;
    if let Command::PaperSuite { c, horizon } = &cli.command {
        let cfg = SuiteConfig {
            c_values: c.clone(),
            horizon: *horizon,
            limits: ctx.limits,
        };
        let rows = run_suite(&cfg)?;
        let failed = rows.iter().filter(|r| !r.pass).count();
        for r in &rows {
            let param = r.parameter.map_or_else(|| "-".to_string(), |p| p.to_string());
            let _ = writeln!(
                text,
                "{:<4} {:<22} {:>3}  {}: expected {}, computed {}",
                if r.pass { "ok" } else { "FAIL" },
                r.family,
                param,
                r.claim,
                r.expected,
                r.computed
            );
        }
        let _ = writeln!(text, "{} rows, {} failed", rows.len(), failed);
        doc.result = json!({ "rows": rows.len(), "failed": failed });
        doc.suite = rows;
        return Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED });
    }

    let ideal = read_ideal(&cli.global)?;
    doc.set_ideal(&ideal);
    let ring = ideal.ring().clone();
    match &cli.command {
        Command::Ass | Command::Min => {
            let primes = if matches!(cli.command, Command::Ass) {
                associated_primes(&ideal)?
            } else {
                minimal_primes(&ideal)?
            };
            for p in &primes {
                let _ = writeln!(text, "{}", p.format(&ring));
            }
            doc.result = json!({ "primes": prime_names(&ring, &primes) });
        }
        Command::Decompose => {
            let comps: Vec<Vec<String>> = irreducible_decomposition(&ideal)?
                .iter()
                .map(|c| c.to_ideal(&ring).format_gens())
                .collect();
            for c in &comps {
                let _ = writeln!(text, "({})", c.join(", "));
            }
            doc.result = json!({ "components": comps });
        }
        Command::Depth => {
            let d = depth_over(&ideal, ctx.field, &ctx.limits)?;
            let _ = writeln!(text, "depth R/I = {d}");
            let _ = writeln!(text, "pd R/I = {}", ideal.nvars() - d);
            doc.result = json!({ "depth": d, "projective_dimension": ideal.nvars() - d });
        }
        Command::Betti => {
            let table = betti_table_with(&ideal, ctx.field, &ctx.limits)?;
            let totals = table.totals();
            let totals_text: Vec<String> = totals.iter().map(u64::to_string).collect();
            let _ = writeln!(text, "totals: {}", totals_text.join(" "));
            let mut entries = Vec::new();
            for ((i, m), b) in table.entries() {
                let _ = writeln!(text, "b({i}, {}) = {b}", ring.format_monomial(m));
                entries.push(json!({ "i": i, "multidegree": ring.format_monomial(m), "value": b }));
            }
            doc.result = json!({
                "totals": totals,
                "projective_dimension": table.projective_dimension(),
                "entries": entries,
            });
        }
        Command::Closure { power } => {
            let cl = integral_closure_with(&ideal, *power, &ctx.limits, ctx.solver)?;
            let _ = writeln!(text, "{cl}");
            doc.result = json!({ "power": power, "generators": cl.format_gens() });
        }
        Command::Colon { by } => {
            let divisor = parse_ideal(&ring, by)?;
            let q = match divisor.gens() {
                [m] => ideal.colon_monomial(m)?,
                _ => ideal.colon_ideal(&divisor)?,
            };
            let _ = writeln!(text, "{q}");
            doc.result = json!({ "by": divisor.format_gens(), "generators": q.format_gens() });
        }
        Command::Profile { horizon, closure } => {
            let mut opts = ProfileOptions::new(*horizon).with_closure(*closure).limits(ctx.limits);
            opts.solver = ctx.solver;
            opts.field = ctx.field;
            let mut last = Instant::now();
            let stream = !ctx.json;
            let mut records = Vec::new();
            let mut timings = Vec::new();
            let outcome = profile_streaming(&ideal, &opts, &mut |r| {
                timings.push(last.elapsed().as_micros() as u64);
                last = Instant::now();
                if stream {
                    let mut line = format!(
                        "n={:<3} gens={:<5} depth={}  Ass={}",
                        r.n,
                        r.generators,
                        r.depth,
                        format_primes(&ring, &r.ass)
                    );
                    if let (Some(d), Some(a)) = (r.closure_depth, &r.closure_ass) {
                        let _ = write!(line, "  closure: depth={d} Ass={}", format_primes(&ring, a));
                    }
                    if let Some(p) = r.strong_persistence_at_n {
                        let prev = if r.n == 1 { "I".to_string() } else { format!("I^{}", r.n) };
                        let _ = write!(line, "  I^{}:I={prev}: {}", r.n + 1, if p { "yes" } else { "no" });
                    }
                    let _ = writeln!(out, "{line}");
                    let _ = out.flush();
                }
                records.push(record_doc(&ring, r));
            });
            doc.horizon = Some(*horizon);
            doc.records = records;
            doc.timing.per_power_us = timings;
            let report = outcome?;
            doc.set_stability(&ring, &report);
            let certs = [
                ("astab", report.astab, &report.astab_cert),
                ("dstab", report.dstab, &report.dstab_cert),
                ("astab-bar", report.astabbar, &report.astabbar_cert),
            ];
            for (name, value, cert) in certs {
                if name == "astab-bar" && !closure {
                    continue;
                }
                match (value, cert) {
                    (Some(k), Some(c)) => {
                        let _ = writeln!(text, "{name} = {k} ({}: {})", c.level, c.reason);
                    }
                    _ => {
                        let _ = writeln!(text, "{name}: not settled within horizon {horizon}");
                    }
                }
            }
        }
        Command::Check { which } => return check(which, &ideal, ctx, doc, text),
        Command::PaperSuite { .. } => unreachable!("handled above"),
    }
    Ok(EXIT_OK)
}

fn check(which: &CheckKind, ideal: &MonomialIdeal, ctx: &Ctx, doc: &mut ReportDocument, text: &mut String) -> Result<u8> {
    use std::fmt::Write as _;
    let ring = ideal.ring().clone();
    match which {
        CheckKind::Dim2 { horizon } => {
            if ideal.nvars() != 2 {
                return Err(usage("check dim2 needs a ring with two variables".into()));
            }
            let opts = ProfileOptions::new(*horizon).with_closure(true).limits(ctx.limits);
            let report = profile(ideal, &opts)?;
            doc.set_stability(&ring, &report);
            let ok = report.astab == Some(1) && report.dstab == Some(1) && report.astabbar == Some(1);
            let _ = writeln!(text, "all indices 1: {}", if ok { "yes" } else { "no" });
            doc.result = json!({ "holds": ok });
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        CheckKind::Dim3 { horizon } => {
            if ideal.nvars() != 3 {
                return Err(usage("check dim3 needs a ring with three variables".into()));
            }
            let report = profile(ideal, &ProfileOptions::new(*horizon).limits(ctx.limits))?;
            doc.set_stability(&ring, &report);
            let verdict = compare_indices(&report);
            let (line, code) = match verdict {
                IndexComparison::Equal { index } => (format!("astab = dstab = {index}"), EXIT_OK),
                IndexComparison::Unequal { astab, dstab } => (format!("astab {astab} != dstab {dstab}"), EXIT_FAILED),
                IndexComparison::Inconclusive => (format!("inconclusive within horizon {horizon}"), EXIT_OK),
            };
            let _ = writeln!(text, "{line}");
            doc.result = serde_json::to_value(verdict).expect("verdict serializes");
            Ok(code)
        }
        CheckKind::Monotone { horizon, on_closure } => {
            if *horizon < 2 {
                return Err(usage("check monotone needs a horizon of at least 2".into()));
            }
            let depths = if *on_closure {
                closure_depth_profile(ideal, *horizon, &ctx.limits)?
            } else {
                depth_profile(ideal, *horizon, &ctx.limits)?
            };
            let verdict = first_increase(&depths);
            let shown: Vec<String> = depths.iter().map(usize::to_string).collect();
            let _ = writeln!(text, "depths: {}", shown.join(" "));
            let code = match verdict {
                Monotonicity::NonIncreasing => {
                    let _ = writeln!(text, "non-increasing");
                    EXIT_OK
                }
                Monotonicity::ViolationAt { n } => {
                    let _ = writeln!(text, "increase at n = {n}");
                    EXIT_FAILED
                }
            };
            let mut value = serde_json::to_value(verdict).expect("verdict serializes");
            value["depths"] = json!(depths);
            doc.result = value;
            Ok(code)
        }
    }
}
