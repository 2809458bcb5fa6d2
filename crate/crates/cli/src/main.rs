//! `esc`: solve, scan and check `4/n = 1/x + 1/y + 1/z`.
//!
//! Exit codes: 0 success / true, 1 negative result, 2 usage or internal error.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context};
use clap::{Parser, Subcommand, ValueEnum};
use erdos_straus::arith::{self, Natural};
use erdos_straus::equation::{self, EscTarget, UnitFractionTriple};
use erdos_straus::scanner::{self, Conjectures, ScanConfig, DEFAULT_BATCH_SIZE};
use erdos_straus::{oracle, type_a, type_b};

use output::*;

#[derive(Debug, Parser)]
#[command(name = "esc", version, about = "Erdős–Straus solutions for primes n ≡ 1 (mod 4)")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverChoice {
    A,
    B,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find solutions for n (closed form, or type A / type B parametrizations).
    Solve {
        n: Natural,
        #[arg(long = "type", value_enum, default_value = "both")]
        solver: SolverChoice,
        /// Report every solution in range instead of the first.
        #[arg(long)]
        all: bool,
        /// Largest b for the type-A search (default ⌈(2+K)/3⌉, exhaustive).
        #[arg(long)]
        b_max: Option<Natural>,
        /// Largest a for the type-B search.
        #[arg(long, default_value_t = type_b::DEFAULT_A_MAX)]
        a_max: Natural,
    },
    /// Check both parametric families over a range of n ≡ 1 (mod 4).
    Scan {
        #[arg(long)]
        from: Natural,
        #[arg(long)]
        to: Natural,
        #[arg(long, value_enum, default_value = "both")]
        conjecture: SolverChoice,
        /// Include composite n ≡ 1 (mod 4).
        #[arg(long)]
        composites: bool,
        #[arg(long, default_value_t = type_b::DEFAULT_A_MAX)]
        a_max: Natural,
        /// Report destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, env = "ESC_THREADS")]
        threads: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BATCH_SIZE)]
        batch_size: usize,
    },
    /// Check 4/n = 1/x + 1/y + 1/z exactly.
    Verify {
        n: Natural,
        x: Natural,
        y: Natural,
        z: Natural,
    },
    /// Enumerate every solution with x ≤ y ≤ z.
    Oracle {
        n: Natural,
        #[arg(long)]
        classify: bool,
        /// Stop after this many solutions.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Prime factorization.
    Factor { m: Natural },
    /// Closed-form solution for even n or n ≡ 3 (mod 4).
    ClosedForm { n: Natural },
}

enum Outcome {
    Positive,
    Negative,
}

struct Printer {
    json: bool,
    quiet: bool,
}

impl Printer {
    fn emit<T: serde::Serialize>(&self, doc: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        if self.quiet {
            return Ok(());
        }
        let mut out = io::stdout().lock();
        if self.json {
            serde_json::to_writer_pretty(&mut out, doc)?;
            writeln!(out)?;
        } else {
            write!(out, "{}", text())?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let printer = Printer {
        json: cli.json,
        quiet: cli.quiet,
    };
    match run(cli.command, &printer) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, p: &Printer) -> anyhow::Result<Outcome> {
    match command {
        Command::Solve {
            n,
            solver,
            all,
            b_max,
            a_max,
        } => solve(n, solver, all, b_max, a_max, p),
        Command::Scan {
            from,
            to,
            conjecture,
            composites,
            a_max,
            out,
            format,
            checkpoint,
            threads,
            batch_size,
        } => {
            let conjectures = match conjecture {
                SolverChoice::A => Conjectures::A,
                SolverChoice::B => Conjectures::B,
                SolverChoice::Both => Conjectures::BOTH,
            };
            let mut config = ScanConfig::new(from, to)
                .conjectures(conjectures)
                .include_composites(composites)
                .a_max(a_max)
                .batch_size(batch_size)
                .threads(threads);
            if let Some(path) = checkpoint {
                config = config.checkpoint(path);
            }
            scan(&config, out, format, p)
        }
        Command::Verify { n, x, y, z } => {
            let triple = UnitFractionTriple::new(x, y, z);
            let valid = equation::verify_triple(n, &triple)?;
            let classification = if valid {
                Some(equation::classify(n, &triple)?)
            } else {
                None
            };
            let doc = VerifyOutput {
                n,
                triple,
                valid,
                classification,
            };
            p.emit(&doc, || match classification {
                Some(c) => format!("4/{n} = 1/{x} + 1/{y} + 1/{z}: valid (type {})\n", c.kind),
                None => format!("4/{n} ≠ 1/{x} + 1/{y} + 1/{z}\n"),
            })?;
            Ok(if valid { Outcome::Positive } else { Outcome::Negative })
        }
        Command::Oracle { n, classify, cap } => {
            ensure!(n >= 2, "n must be at least 2");
            let sols = oracle::brute_force_solutions(n, cap)?;
            let solutions = sols
                .iter()
                .map(|t| {
                    Ok(OracleSolution {
                        triple: *t,
                        classification: if classify {
                            Some(equation::classify(n, t)?)
                        } else {
                            None
                        },
                    })
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let doc = OracleOutput {
                n,
                count: solutions.len(),
                solutions,
            };
            p.emit(&doc, || {
                let mut s = format!("{} solution(s) for n = {n}\n", doc.count);
                for sol in &doc.solutions {
                    s.push_str(&sol.triple.to_string());
                    if let Some(c) = sol.classification {
                        s.push_str(&format!("  type {} ({} multiple(s) of n)", c.kind, c.multiples_of_n));
                    }
                    s.push('\n');
                }
                s
            })?;
            Ok(if doc.count > 0 {
                Outcome::Positive
            } else {
                Outcome::Negative
            })
        }
        Command::Factor { m } => {
            let f = arith::factorize(m)?;
            let doc = FactorOutput {
                m,
                is_prime: arith::is_prime(m),
                factors: f
                    .factors()
                    .iter()
                    .map(|&(prime, exponent)| PrimePower { prime, exponent })
                    .collect(),
            };
            p.emit(&doc, || {
                let parts: Vec<String> = f
                    .factors()
                    .iter()
                    .flat_map(|&(q, e)| std::iter::repeat_n(q.to_string(), e as usize))
                    .collect();
                format!("{}\n", parts.join(" "))
            })?;
            Ok(Outcome::Positive)
        }
        Command::ClosedForm { n } => {
            ensure!(n >= 2, "n must be at least 2");
            match closed_form(n)? {
                Some(doc) => {
                    p.emit(&doc, || format!("{}\n", doc.triple))?;
                    Ok(Outcome::Positive)
                }
                None => {
                    if !p.quiet {
                        eprintln!("{n} ≡ 1 (mod 4) has no closed form; use `esc solve {n}`");
                    }
                    Ok(Outcome::Negative)
                }
            }
        }
    }
}

/// Closed-form triple for even `n` or `n ≡ 3 (mod 4)`, verified.
fn closed_form(n: Natural) -> anyhow::Result<Option<ClosedFormOutput>> {
    let (rule, triple) = if n % 2 == 0 {
        (ClosedFormRule::Even, equation::closed_form_even(n)?)
    } else if n % 4 == 3 {
        (ClosedFormRule::FourKMinusOne, equation::closed_form_4k_minus_1(n)?)
    } else {
        return Ok(None);
    };
    self_check(n, &triple)?;
    Ok(Some(ClosedFormOutput { n, rule, triple }))
}

fn self_check(n: Natural, t: &UnitFractionTriple) -> anyhow::Result<()> {
    if !equation::verify_triple(n, t)? {
        bail!("internal error: {t} does not solve 4/{n}");
    }
    Ok(())
}

fn solve(
    n: Natural,
    solver: SolverChoice,
    all: bool,
    b_max: Option<Natural>,
    a_max: Natural,
    p: &Printer,
) -> anyhow::Result<Outcome> {
    if n < 2 {
        bail!("n = {n} is out of range: the equation is posed for n ≥ 2");
    }
    let target = EscTarget::new(n)?;
    let mut doc = SolveOutput {
        n,
        is_prime: target.is_prime(),
        closed_form: None,
        type_a: None,
        type_b: None,
    };
    let Some(k) = target.k() else {
        let cf = closed_form(n)?.context("closed form exists for n ≢ 1 (mod 4)")?;
        doc.closed_form = Some(cf);
        p.emit(&doc, || format!("{}\n", doc.closed_form.as_ref().unwrap().triple))?;
        return Ok(Outcome::Positive);
    };

    if matches!(solver, SolverChoice::A | SolverChoice::Both) {
        let limit = type_a::b_limit(k);
        let b_max = b_max.unwrap_or(limit);
        let params = type_a::find_type_a(k, Some(b_max), !all)?;
        let solutions = params
            .into_iter()
            .map(|q| {
                let s = type_a::expand_type_a(n, q)?;
                self_check(n, &s.triple)?;
                Ok(s)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let verdict = if !solutions.is_empty() {
            SearchVerdict::Found
        } else if b_max >= limit {
            SearchVerdict::NoneExhaustive
        } else {
            SearchVerdict::NoneWithinBound
        };
        doc.type_a = Some(TypeAOutcome {
            verdict,
            b_max,
            solutions,
        });
    }
    if matches!(solver, SolverChoice::B | SolverChoice::Both) {
        let params = type_b::find_type_b(k, a_max, !all)?;
        let solutions = params
            .into_iter()
            .map(|q| {
                let s = type_b::expand_type_b(n, q)?;
                self_check(n, &s.triple)?;
                Ok(s)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let verdict = if solutions.is_empty() {
            SearchVerdict::NoneWithinBound
        } else {
            SearchVerdict::Found
        };
        doc.type_b = Some(TypeBOutcome {
            verdict,
            a_max,
            solutions,
        });
    }

    let found = doc.type_a.iter().any(|o| !o.solutions.is_empty())
        || doc.type_b.iter().any(|o| !o.solutions.is_empty());
    p.emit(&doc, || solve_text(&doc, k))?;
    Ok(if found {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn solve_text(doc: &SolveOutput, k: Natural) -> String {
    let mut s = format!(
        "n = {} = 1 + 4·{k}{}\n",
        doc.n,
        if doc.is_prime { " (prime)" } else { "" }
    );
    if let Some(a) = &doc.type_a {
        match a.verdict {
            SearchVerdict::Found => {
                for sol in &a.solutions {
                    let q = sol.params;
                    s.push_str(&format!(
                        "type A: b={} mu={} kappa={}  a={} d={}  {}\n",
                        q.b, q.mu, q.kappa, sol.a, sol.d, sol.triple
                    ));
                }
            }
            SearchVerdict::NoneExhaustive => s.push_str("type A: no S_A representation (exhaustive)\n"),
            SearchVerdict::NoneWithinBound => s.push_str(&format!(
                "type A: no S_A representation with b ≤ {}\n",
                a.b_max
            )),
        }
    }
    if let Some(b) = &doc.type_b {
        if b.solutions.is_empty() {
            s.push_str(&format!(
                "type B: no S_B representation with a ≤ {}\n",
                b.a_max
            ));
        }
        for sol in &b.solutions {
            let q = sol.params;
            let alt = sol.alt;
            s.push_str(&format!(
                "type B: a={} d={} mu={}  (lambda={} a1={} a2={} nu={})  {}\n",
                q.a, q.d, q.mu, alt.lambda, alt.a1, alt.a2, alt.nu, sol.triple
            ));
        }
    }
    s
}

fn scan(
    config: &ScanConfig,
    out: Option<PathBuf>,
    format: ReportFormat,
    p: &Printer,
) -> anyhow::Result<Outcome> {
    let report = scanner::scan(config)?;
    let write_report = |w: &mut dyn Write| -> anyhow::Result<()> {
        match format {
            ReportFormat::Json => {
                w.write_all(report.to_json().as_bytes())?;
                w.write_all(b"\n")?;
            }
            ReportFormat::Csv => report.write_csv(w)?,
        }
        Ok(())
    };
    match &out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_report(&mut w)?;
            w.flush()?;
            let summary = ScanSummary {
                lo: report.range.lo,
                hi: report.range.hi,
                records: report.records.len(),
                exceptions: report.exceptions.clone(),
                seconds: report.seconds,
                out: Some(path.display().to_string()),
            };
            p.emit(&summary, || {
                format!(
                    "scanned [{}, {}]: {} target(s), {} exception(s) in {:.2}s → {}\n",
                    summary.lo,
                    summary.hi,
                    summary.records,
                    summary.exceptions.len(),
                    summary.seconds,
                    path.display()
                )
            })?;
        }
        None if !p.quiet => write_report(&mut io::stdout().lock())?,
        None => {}
    }
    Ok(if report.exceptions.is_empty() {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}
