mod config;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use sbdw_core::coxeter::{CacheStatus, CoxeterElement, CoxeterError, CoxeterSystem};
use sbdw_core::geometry::base_point;
use sbdw_core::sbdw::conjectures::conjecture_scan;
use sbdw_core::sbdw::export::{off_string, svg_string, ExportError};
use sbdw_core::sbdw::report::{certify_regularity, JvSection, Report};
use sbdw_core::sbdw::theorems::theorem_suite;
use sbdw_core::sbdw::{build_and_verify, chain_names, jv_polynomial, Context, SbdwError, Triangulation};

use config::{ElementChoice, Flags, RunConfig, SLOW_GROUP_ORDER};

/// Invalid input from the user; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(name = "sbdw", version, about = "Noncrossing triangulations of Coxeter permutahedra, built and certified exactly")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Build the triangulation and write its cells.
    Build,
    /// Build and certify nondegeneracy, facet matching and volume.
    Verify,
    /// Search for a stability function and certify regularity.
    Regular,
    /// Run the six structural checks.
    Theorems,
    /// Run the lattice-theoretic evidence scans.
    Conjectures,
    /// Compare the chain enumeration polynomial with the degree product.
    Jv,
    /// Write the triangulation as an OFF file.
    ExportOff,
    /// Write an SVG picture of the cluster fan (rank 3 only).
    ExportSvg,
    /// Run everything and write the full JSON report.
    Report,
    /// Run the `commands` list from the config file.
    Run,
}

impl Command {
    fn parse(name: &str) -> Result<Command> {
        Ok(match name {
            "build" => Command::Build,
            "verify" => Command::Verify,
            "regular" => Command::Regular,
            "theorems" => Command::Theorems,
            "conjectures" => Command::Conjectures,
            "jv" => Command::Jv,
            "export-off" => Command::ExportOff,
            "export-svg" => Command::ExportSvg,
            "report" => Command::Report,
            other => return Err(UsageError(format!("unknown command '{other}' in config")).into()),
        })
    }

    fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Verify => "verify",
            Command::Regular => "regular",
            Command::Theorems => "theorems",
            Command::Conjectures => "conjectures",
            Command::Jv => "jv",
            Command::ExportOff => "export-off",
            Command::ExportSvg => "export-svg",
            Command::Report => "report",
            Command::Run => "run",
        }
    }
}

fn usage(e: impl fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

fn lift_coxeter(e: CoxeterError) -> anyhow::Error {
    match e {
        CoxeterError::InvalidInput(_) | CoxeterError::TooLarge(_) => usage(e),
        other => other.into(),
    }
}

fn lift_sbdw(e: SbdwError) -> anyhow::Error {
    match e {
        SbdwError::TooLarge { .. } => usage(format!("{e} (raise it with --suite-cap)")),
        other => other.into(),
    }
}

#[derive(Serialize)]
struct CellRecord {
    base: String,
    chain: Vec<String>,
    vertices: Vec<String>,
}

#[derive(Serialize)]
struct CellsFile {
    group: String,
    coxeter_element_word: String,
    base_point: Vec<String>,
    cells: Vec<CellRecord>,
}

struct Runner<'a> {
    cfg: &'a RunConfig,
    w: &'a CoxeterSystem,
}

impl Runner<'_> {
    fn stem(&self, c: &CoxeterElement) -> String {
        let label: String = self
            .w
            .label()
            .chars()
            .map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' })
            .collect();
        format!("{label}_{}", c.word_string())
    }

    fn write(&self, name: String, text: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.cfg.output_dir)
            .with_context(|| format!("creating {}", self.cfg.output_dir.display()))?;
        let path = self.cfg.output_dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    fn triangulate(&self, ctx: &Context) -> Result<Triangulation> {
        let y = base_point(self.w, self.cfg.base_point);
        build_and_verify(ctx, &y).map_err(lift_sbdw)
    }

    fn suites_fit(&self) -> bool {
        self.w.order() <= self.cfg.suite_cap
    }

    fn fill(&self, cmd: Command, ctx: &Context, report: &mut Report, tri: &Triangulation) -> Result<()> {
        let cap = self.cfg.suite_cap;
        let all = cmd == Command::Report;
        if cmd == Command::Regular || all {
            let out = certify_regularity(ctx, self.cfg.lp_attempts, self.cfg.lp_seed).map_err(lift_sbdw)?;
            report.certificates.regular = Some(out.section);
        }
        if cmd == Command::Theorems || (all && self.suites_fit()) {
            report.theorems = Some(theorem_suite(ctx, cap).map_err(lift_sbdw)?);
        }
        if cmd == Command::Conjectures || (all && self.suites_fit()) {
            report.conjectures = Some(conjecture_scan(ctx, tri, cap).map_err(lift_sbdw)?);
        }
        if cmd == Command::Jv || all {
            report.jv = Some(JvSection::from(&jv_polynomial(self.w, &ctx.chains)));
        }
        Ok(())
    }

    /// Runs one command for one Coxeter element; returns whether it passed.
    fn run_one(&self, cmd: Command, c: &CoxeterElement) -> Result<bool> {
        let w = self.w;
        let ctx = Context::new(w, c).map_err(lift_sbdw)?;
        let stem = self.stem(c);
        let head = format!("{} {} c={}", cmd.name(), w.label(), c.word_string());
        match cmd {
            Command::ExportSvg => {
                let svg = svg_string(&ctx).map_err(|e| match e {
                    ExportError::WrongRank(_) => usage(e),
                    other => other.into(),
                })?;
                let path = self.write(format!("{stem}.svg"), &svg)?;
                println!("{head}: wrote {}", path.display());
                return Ok(true);
            }
            Command::Jv => {
                let jv = JvSection::from(&jv_polynomial(w, &ctx.chains));
                let mut report = Report::new(&ctx, &self.triangulate(&ctx)?);
                report.jv = Some(jv.clone());
                let path = self.write(format!("{stem}.jv.json"), &report.to_json())?;
                println!(
                    "{head}: {} lhs={:?} rhs=[{}] -> {}",
                    verdict(jv.equal),
                    jv.lhs_coeffs,
                    jv.rhs_coeffs.join(", "),
                    path.display()
                );
                return Ok(jv.equal);
            }
            _ => {}
        }
        let tri = self.triangulate(&ctx)?;
        match cmd {
            Command::Build => {
                let file = CellsFile {
                    group: w.label().to_string(),
                    coxeter_element_word: c.word_string(),
                    base_point: tri.base_point.iter().map(|x| x.to_string()).collect(),
                    cells: tri
                        .cells
                        .iter()
                        .map(|cell| CellRecord {
                            base: w.word_string(cell.u),
                            chain: chain_names(w, &cell.chain),
                            vertices: cell.elements.iter().map(|&x| w.word_string(x)).collect(),
                        })
                        .collect(),
                };
                let text = serde_json::to_string_pretty(&file)?;
                let path = self.write(format!("{stem}.cells.json"), &text)?;
                println!("{head}: {} cells -> {}", tri.cells.len(), path.display());
                Ok(true)
            }
            Command::ExportOff => {
                let path = self.write(format!("{stem}.off"), &off_string(&tri))?;
                println!("{head}: wrote {}", path.display());
                Ok(true)
            }
            _ => {
                let mut report = Report::new(&ctx, &tri);
                if cmd == Command::Report && !self.suites_fit() {
                    eprintln!(
                        "note: |W| = {} exceeds the suite cap {}; theorems and conjectures skipped",
                        w.order(),
                        self.cfg.suite_cap
                    );
                }
                self.fill(cmd, &ctx, &mut report, &tri)?;
                let path = self.write(format!("{stem}.{}.json", cmd.name()), &report.to_json())?;
                let passed = report.passed();
                println!("{head}: {} cells={} {}-> {}", verdict(passed), report.cell_count, details(&report), path.display());
                Ok(passed)
            }
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn details(report: &Report) -> String {
    let mut out = String::new();
    if let Some(r) = &report.certificates.regular {
        match (&r.skipped, &r.epsilon) {
            (Some(why), _) => out.push_str(&format!("regular=skipped({why}) ")),
            (None, Some(eps)) => out.push_str(&format!("regular=PASS(epsilon={eps}) ")),
            (None, None) => out.push_str("regular=FAIL "),
        }
    }
    if let Some(t) = &report.theorems {
        let failed = t.checks.iter().filter(|k| !k.passed).count();
        out.push_str(&format!("theorems={}/{} ", t.checks.len() - failed, t.checks.len()));
    }
    if let Some(k) = &report.conjectures {
        let held = k.scans.iter().filter(|s| s.passed).count();
        out.push_str(&format!("conjecture_scans={held}/{} ", k.scans.len()));
    }
    if let Some(j) = &report.jv {
        out.push_str(&format!("jv={} ", verdict(j.equal)));
    }
    out
}

fn load_group(cfg: &RunConfig) -> Result<CoxeterSystem> {
    let (w, status) =
        CoxeterSystem::load_or_build(&cfg.group, cfg.size_cap, cfg.cache_dir.as_deref()).map_err(lift_coxeter)?;
    match status {
        CacheStatus::Hit => eprintln!("group table loaded from cache"),
        CacheStatus::Miss => eprintln!("group table built and cached"),
        CacheStatus::Disabled => {}
    }
    if w.order() > SLOW_GROUP_ORDER {
        eprintln!("warning: |W| = {} is large; expect a long run", w.order());
    }
    Ok(w)
}

fn elements(w: &CoxeterSystem, choice: &ElementChoice) -> Result<Vec<CoxeterElement>> {
    match choice {
        ElementChoice::All => Ok(w.standard_coxeter_elements()),
        ElementChoice::Word(word) => Ok(vec![w.coxeter_element(word).map_err(lift_coxeter)?]),
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    let commands = if cli.command == Command::Run {
        if cfg.commands.is_empty() {
            return Err(usage("`run` needs a config file with a `commands` list"));
        }
        cfg.commands.iter().map(|n| Command::parse(n)).collect::<Result<Vec<_>>>()?
    } else {
        vec![cli.command]
    };
    let w = load_group(&cfg)?;
    let cs = elements(&w, &cfg.coxeter_element)?;
    let runner = Runner { cfg: &cfg, w: &w };
    let mut all_passed = true;
    for cmd in commands {
        for c in &cs {
            all_passed &= runner.run_one(cmd, c)?;
        }
    }
    Ok(all_passed)
}

fn exit_code(result: Result<bool>) -> ExitCode {
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    exit_code(execute(&cli))
}
