//! Command-line surface.  Every subcommand is deterministic: identical
//! inputs produce byte-identical output.
//!
//! Exit codes: 0 on success (including conjectural results, which carry a
//! marker in the output), 1 on invalid input, 2 on internal inconsistency
//! (a failed `D² = 0` gate or an impossible decomposition).

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::catalog::{self, CatalogError, SumRecipe};
use crate::cohomology::{
    bieberbach_cohomology, e2_page, total_cohomology, CohomologyError, CohomologyResult, Status,
};
use crate::koszul::{tau_preset, verify_compatibility, KoszulError, TauAction, TauRowJson};
use crate::lattice::{decompose_p_type, Lattice, LatticeError};
use crate::oracle::{compare, OracleError};

#[derive(Parser)]
#[command(
    name = "crystalline",
    about = "Exact integral cohomology of crystallographic groups Z^n ⋊ Z/N",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total cohomology of L ⋊ Z/N through a degree bound
    Compute {
        #[command(flatten)]
        source: SourceArgs,
        /// highest degree (default: rank + 2, where the answer turns periodic)
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        json: bool,
        /// render torsion in prime-power form
        #[arg(long)]
        primary: bool,
    },
    /// The page of coefficients H^i(Z/N, Λ^j(L*))
    E2 {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// H^3 only: the gerbe group of the quotient orbifold
    Gerbe {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        primary: bool,
    },
    /// Check the compatible-action axioms for a preset or a user action
    Verify {
        /// named action (see `catalog list` and the presets)
        #[arg(long, conflicts_with_all = ["lattice", "tau"])]
        preset: Option<String>,
        /// lattice JSON file for a user-supplied action
        #[arg(long, requires = "tau")]
        lattice: Option<PathBuf>,
        /// action JSON file (rows of tau(a_i) = Σ c · x^e · a_gen)
        #[arg(long, requires = "lattice")]
        tau: Option<PathBuf>,
        /// highest Koszul degree to check (default: the rank)
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force resolution vs the degreewise formula, degree by degree
    Oracle {
        /// catalog expression with a known compatible action
        #[arg(long, conflicts_with_all = ["lattice", "tau"])]
        catalog: Option<String>,
        /// lattice JSON file for a user-supplied action
        #[arg(long, requires = "tau")]
        lattice: Option<PathBuf>,
        /// action JSON file
        #[arg(long, requires = "lattice")]
        tau: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        /// compare the Sylow-local data at this prime (z12_4 only)
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Local (r, s, t) type at a prime order
    Decompose {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology of the torsion-free group with holonomy lattice N ⊕ Z
    Bieberbach {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Browse the named lattices
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Eigenvalue test for six-dimensional orbifold actions
    CyCheck {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// All fixed names with rank, order and coverage
    List {
        #[arg(long)]
        json: bool,
    },
    /// One entry with its matrix in lattice JSON form
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// catalog name or direct-sum expression, e.g. "z8_4+z2_1+trivial(1)"
    #[arg(long, conflicts_with = "lattice")]
    catalog: Option<String>,
    /// lattice JSON file { "n": .., "N": .., "T": [[..]] }
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// restrict to the Sylow subgroup at this prime first
    #[arg(long)]
    prime: Option<u64>,
}

enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::InconsistentPType { .. } => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Koszul(KoszulError::ConjugationNotFound { .. }) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<KoszulError> for CliError {
    fn from(e: KoszulError) -> Self {
        match e {
            KoszulError::ConjugationNotFound { .. } => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::DifferentialSquare { .. } => CliError::Internal(e.to_string()),
            OracleError::IncompatibleTau { .. } => CliError::Input(e.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

struct Source {
    lattice: Lattice,
    recipe: Option<SumRecipe>,
    desc: String,
}

fn resolve_source(args: &SourceArgs) -> Result<Source, CliError> {
    let mut source = match (&args.catalog, &args.lattice) {
        (Some(expr), None) => {
            let recipe = catalog::assemble(expr)?;
            Source {
                lattice: recipe.lattice.clone(),
                desc: recipe.expression.clone(),
                recipe: Some(recipe),
            }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let lattice = Lattice::from_json_str(&text)?;
            Source {
                desc: lattice
                    .label()
                    .map(str::to_string)
                    .unwrap_or_else(|| path.display().to_string()),
                lattice,
                recipe: None,
            }
        }
        _ => {
            return Err(CliError::Input(
                "exactly one of --catalog or --lattice is required".into(),
            ))
        }
    };
    if let Some(p) = args.prime {
        source.lattice = source.lattice.restrict_to_sylow(p)?;
        source.desc = format!("{} at the {p}-Sylow subgroup", source.desc);
    }
    Ok(source)
}

// ---- JSON forms -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    k: usize,
    group: String,
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    degrees: Vec<DegreeJson>,
    status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    periodic_from: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    zero_from: Option<usize>,
}

impl ResultJson {
    fn new(result: &CohomologyResult, primary: bool) -> Self {
        ResultJson {
            degrees: result
                .groups
                .iter()
                .enumerate()
                .map(|(k, g)| DegreeJson {
                    k,
                    group: if primary { g.render_primary() } else { g.render() },
                })
                .collect(),
            status: result.status.label().to_string(),
            reason: result.status.reason().map(str::to_string),
            periodic_from: result.periodic_from,
            zero_from: result.zero_from,
        }
    }
}

#[derive(Serialize)]
struct E2EntryJson {
    i: usize,
    j: usize,
    group: String,
}

#[derive(Serialize)]
struct E2Json {
    n: usize,
    #[serde(rename = "N")]
    order: u64,
    kmax: usize,
    entries: Vec<E2EntryJson>,
}

#[derive(Serialize)]
struct VerifyJson {
    pass: bool,
    degrees_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    axiom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct CompareDegreeJson {
    k: usize,
    formula: String,
    oracle: String,
    #[serde(rename = "match")]
    matched: bool,
}

#[derive(Serialize)]
struct DecomposeJson {
    p: u64,
    r: usize,
    s: usize,
    t: usize,
    rank: usize,
}

#[derive(Serialize)]
struct GerbeJson {
    group: String,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct CatalogRowJson {
    name: String,
    n: usize,
    #[serde(rename = "N")]
    order: u64,
    action: String,
    orbifold_table: bool,
}

#[derive(Serialize)]
struct CyJson {
    satisfied: bool,
    exponents: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    selection: Option<[u64; 3]>,
    reason: String,
}

fn emit_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn status_line(status: &Status) -> String {
    match status.reason() {
        None => "status: proved".to_string(),
        Some(reason) => format!("status: conjectural ({reason})"),
    }
}

fn action_label(e: &catalog::CatalogEntry) -> String {
    match &e.local_action {
        catalog::LocalAction::Automatic => "automatic (square-free order)".to_string(),
        catalog::LocalAction::Known(how) => format!("known ({how})"),
        catalog::LocalAction::NotKnown if e.collapse_verified => {
            "none known; cohomology computed directly".to_string()
        }
        catalog::LocalAction::NotKnown => "none known".to_string(),
    }
}

// ---- entry point ----------------------------------------------------------

/// Runs the CLI on the given argv (including the program name); output and
/// errors go to the supplied writers.  Returns the process exit code.
pub fn run<I, W1, W2>(args: I, out: &mut W1, err: &mut W2) -> i32
where
    I: IntoIterator<Item = String>,
    W1: Write,
    W2: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            // clap prints --help/--version through the error path
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            source,
            kmax,
            json,
            primary,
        } => {
            let src = resolve_source(&source)?;
            let kmax = kmax.unwrap_or(src.lattice.n() + 2);
            let result = total_cohomology(&src.lattice, kmax, src.recipe.as_ref());
            if json {
                emit_json(out, &ResultJson::new(&result, primary))?;
            } else {
                writeln!(
                    out,
                    "H^*({} ⋊ Z/{}) for {}",
                    zn(src.lattice.n()),
                    src.lattice.order(),
                    src.desc
                )?;
                for (k, g) in result.groups.iter().enumerate() {
                    let shown = if primary { g.render_primary() } else { g.render() };
                    writeln!(out, "H^{k} = {shown}")?;
                }
                writeln!(out, "{}", status_line(&result.status))?;
                writeln!(
                    out,
                    "2-periodic in degrees k >= {} (rank {})",
                    result.periodic_from,
                    src.lattice.n()
                )?;
            }
            Ok(())
        }
        Command::E2 { source, kmax, json } => {
            let src = resolve_source(&source)?;
            let kmax = kmax.unwrap_or(src.lattice.n() + 2);
            let page = e2_page(&src.lattice, kmax);
            if json {
                let mut entries = Vec::new();
                for j in 0..=page.n().min(kmax) {
                    for i in 0..=kmax {
                        entries.push(E2EntryJson {
                            i,
                            j,
                            group: page.entry(i, j).render(),
                        });
                    }
                }
                emit_json(
                    out,
                    &E2Json {
                        n: page.n(),
                        order: page.order(),
                        kmax,
                        entries,
                    },
                )?;
            } else {
                writeln!(
                    out,
                    "H^i(Z/{}, Λ^j(L*)) for {} (rows j, columns i)",
                    page.order(),
                    src.desc
                )?;
                let jtop = page.n().min(kmax);
                let mut widths = vec![0usize; kmax + 1];
                for i in 0..=kmax {
                    for j in 0..=jtop {
                        widths[i] = widths[i].max(page.entry(i, j).render().len());
                    }
                }
                for j in (0..=jtop).rev() {
                    write!(out, "j={j} |")?;
                    for i in 0..=kmax {
                        write!(out, " {:>w$}", page.entry(i, j).render(), w = widths[i])?;
                    }
                    writeln!(out)?;
                }
                write!(out, "      ")?;
                for (i, w) in widths.iter().enumerate() {
                    write!(out, " {:>w$}", format!("i={i}"), w = *w)?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
        Command::Gerbe {
            source,
            json,
            primary,
        } => {
            let src = resolve_source(&source)?;
            let (group, status) = crate::cohomology::gerbe_group(&src.lattice, src.recipe.as_ref());
            let shown = if primary {
                group.render_primary()
            } else {
                group.render()
            };
            if json {
                emit_json(
                    out,
                    &GerbeJson {
                        group: shown,
                        status: status.label().to_string(),
                        reason: status.reason().map(str::to_string),
                    },
                )?;
            } else {
                writeln!(out, "Gb = H^3 = {shown}")?;
                writeln!(out, "{}", status_line(&status))?;
            }
            Ok(())
        }
        Command::Verify {
            preset,
            lattice,
            tau,
            jmax,
            json,
        } => {
            let (l, action, desc) = match (preset, lattice, tau) {
                (Some(name), None, None) => {
                    let p = tau_preset(&name)?;
                    let desc = match &p.base_change {
                        Some(_) => format!("{name} (on its adapted basis)"),
                        None => name.clone(),
                    };
                    (p.tau.lattice().clone(), p.tau, desc)
                }
                (None, Some(lpath), Some(tpath)) => {
                    let l = Lattice::from_json_str(&std::fs::read_to_string(&lpath)?)?;
                    let rows: Vec<TauRowJson> =
                        serde_json::from_str(&std::fs::read_to_string(&tpath)?)
                            .map_err(|e| CliError::Input(format!("bad action JSON: {e}")))?;
                    let action = TauAction::from_rows_json(l.clone(), &rows)?;
                    (l, action, format!("{}", tpath.display()))
                }
                _ => {
                    return Err(CliError::Input(
                        "either --preset or both --lattice and --tau are required".into(),
                    ))
                }
            };
            let jmax = jmax.unwrap_or(l.n());
            let report = verify_compatibility(&l, &action, jmax);
            if json {
                emit_json(
                    out,
                    &VerifyJson {
                        pass: report.pass,
                        degrees_checked: report.degrees_checked,
                        axiom: report.failure.as_ref().map(|f| format!("{:?}", f.axiom)),
                        witness: report.failure.as_ref().map(|f| f.witness.clone()),
                    },
                )?;
            } else if report.pass {
                writeln!(
                    out,
                    "PASS: {desc} is a compatible action (checked through degree {})",
                    report.degrees_checked
                )?;
            } else {
                let f = report.failure.as_ref().expect("failing report");
                writeln!(out, "FAIL: {desc} violates {:?}", f.axiom)?;
                writeln!(out, "witness: {}", f.witness)?;
            }
            Ok(())
        }
        Command::Oracle {
            catalog: expr,
            lattice,
            tau,
            kmax,
            prime,
            json,
        } => {
            let (l, action, desc) = match (expr, lattice, tau) {
                (Some(expr), None, None) => {
                    let setup = catalog::oracle_setup(&expr, prime)?;
                    (setup.tau.lattice().clone(), setup.tau, expr)
                }
                (None, Some(lpath), Some(tpath)) => {
                    let l = Lattice::from_json_str(&std::fs::read_to_string(&lpath)?)?;
                    let rows: Vec<TauRowJson> =
                        serde_json::from_str(&std::fs::read_to_string(&tpath)?)
                            .map_err(|e| CliError::Input(format!("bad action JSON: {e}")))?;
                    let action = TauAction::from_rows_json(l.clone(), &rows)?;
                    (l, action, lpath.display().to_string())
                }
                _ => {
                    return Err(CliError::Input(
                        "either --catalog or both --lattice and --tau are required".into(),
                    ))
                }
            };
            let report = compare(&l, &action, kmax)?;
            if json {
                let rows: Vec<CompareDegreeJson> = report
                    .degrees
                    .iter()
                    .map(|d| CompareDegreeJson {
                        k: d.k,
                        formula: d.formula.render(),
                        oracle: d.oracle.render(),
                        matched: d.matched,
                    })
                    .collect();
                emit_json(out, &rows)?;
            } else {
                writeln!(out, "resolution vs formula for {desc}, degrees 0..{kmax}")?;
                for d in &report.degrees {
                    if d.matched {
                        writeln!(out, "k={}: match  ({})", d.k, d.formula.render())?;
                    } else {
                        writeln!(
                            out,
                            "k={}: MISMATCH  formula {} vs resolution {}",
                            d.k,
                            d.formula.render(),
                            d.oracle.render()
                        )?;
                        for (i, j, g) in &d.breakdown {
                            writeln!(out, "    (i={i}, j={j}): {}", g.render())?;
                        }
                    }
                }
                writeln!(
                    out,
                    "{}",
                    if report.all_match() {
                        "all degrees match"
                    } else {
                        "MISMATCH FOUND"
                    }
                )?;
            }
            Ok(())
        }
        Command::Decompose { source, json } => {
            let src = resolve_source(&source)?;
            let d = decompose_p_type(&src.lattice)?;
            if json {
                emit_json(
                    out,
                    &DecomposeJson {
                        p: d.p,
                        r: d.r,
                        s: d.s,
                        t: d.t,
                        rank: d.rank(),
                    },
                )?;
            } else {
                writeln!(
                    out,
                    "{} at p = {}: trivial^{} ⊕ group-ring^{} ⊕ augmentation-ideal^{}  (r, s, t) = ({}, {}, {})",
                    src.desc, d.p, d.r, d.s, d.t, d.r, d.s, d.t
                )?;
            }
            Ok(())
        }
        Command::Bieberbach { source, kmax, json } => {
            let src = resolve_source(&source)?;
            let kmax = kmax.unwrap_or(src.lattice.n() + 2);
            let result = bieberbach_cohomology(&src.lattice, kmax)?;
            if json {
                emit_json(out, &ResultJson::new(&result, false))?;
            } else {
                writeln!(
                    out,
                    "torsion-free group over {} ⊕ Z (holonomy Z/{})",
                    src.desc,
                    src.lattice.order()
                )?;
                for (k, g) in result.groups.iter().enumerate() {
                    writeln!(out, "H^{k} = {}", g.render())?;
                }
                if let Some(z) = result.zero_from {
                    writeln!(out, "zero for k >= {z}")?;
                }
            }
            Ok(())
        }
        Command::Catalog { action } => match action {
            CatalogCommand::List { json } => {
                let rows: Vec<CatalogRowJson> = catalog::names()
                    .into_iter()
                    .map(|name| {
                        let e = catalog::preset(name).expect("fixed names resolve");
                        CatalogRowJson {
                            name: e.name.clone(),
                            n: e.lattice.n(),
                            order: e.lattice.order(),
                            action: action_label(&e),
                            orbifold_table: e.orbifold_table,
                        }
                    })
                    .collect();
                if json {
                    emit_json(out, &rows)?;
                } else {
                    writeln!(
                        out,
                        "{:<8} {:>2} {:>3}  {:<45} table",
                        "name", "n", "N", "compatible action"
                    )?;
                    for r in rows {
                        writeln!(
                            out,
                            "{:<8} {:>2} {:>3}  {:<45} {}",
                            r.name,
                            r.n,
                            r.order,
                            r.action,
                            if r.orbifold_table { "yes" } else { "" }
                        )?;
                    }
                    writeln!(
                        out,
                        "\nparameterized: trivial(n), regular(N), ig(N); sums: name(+name)*"
                    )?;
                }
                Ok(())
            }
            CatalogCommand::Show { name, json } => {
                let e = catalog::preset(&name)?;
                let lattice_json = e.lattice.to_json()?;
                if json {
                    #[derive(Serialize)]
                    struct ShowJson {
                        #[serde(flatten)]
                        lattice: crate::lattice::LatticeJson,
                        action: String,
                        orbifold_table: bool,
                        note: String,
                    }
                    emit_json(
                        out,
                        &ShowJson {
                            lattice: lattice_json,
                            action: action_label(&e),
                            orbifold_table: e.orbifold_table,
                            note: e.note.clone(),
                        },
                    )?;
                } else {
                    writeln!(out, "{}: {}", e.name, e.note)?;
                    writeln!(out, "n = {}, N = {}", e.lattice.n(), e.lattice.order())?;
                    writeln!(out, "T = {}", e.lattice.action())?;
                    writeln!(out, "compatible action: {}", action_label(&e))?;
                }
                Ok(())
            }
        },
        Command::CyCheck { source, json } => {
            let src = resolve_source(&source)?;
            let report = catalog::calabi_yau_check(&src.lattice)?;
            if json {
                emit_json(
                    out,
                    &CyJson {
                        satisfied: report.satisfied,
                        exponents: report.exponents.clone(),
                        selection: report.selection,
                        reason: report.reason.clone(),
                    },
                )?;
            } else {
                writeln!(
                    out,
                    "{}: {}",
                    if report.satisfied { "PASS" } else { "FAIL" },
                    report.reason
                )?;
                writeln!(out, "eigenvalue exponents: {:?}", report.exponents)?;
            }
            Ok(())
        }
    }
}

fn zn(n: usize) -> String {
    match n {
        0 => "0".to_string(),
        1 => "Z".to_string(),
        n => format!("Z^{n}"),
    }
}

/// Convenience used by tests and examples: run against string arguments and
/// capture stdout.
pub fn run_capture(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("crystalline".to_string()).chain(args.iter().map(|s| s.to_string())),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

/// Reads a lattice JSON file; shared by tests.
pub fn read_lattice(path: &Path) -> Result<Lattice, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    Lattice::from_json_str(&text).map_err(|e| e.to_string())
}
