use std::path::{Path, PathBuf};
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qhadr_core::adr::AdrModule;
use qhadr_core::basic::{BasicAlgebra, BasicError};
use qhadr_core::chain::{find_rejective_chain, verify_rejective_chain, verify_total_left_chain, ChainReport};
use qhadr_core::fuzz;
use qhadr_core::linalg::Prime;
use qhadr_core::presentation::{parse_presentation, Presentation};
use qhadr_core::qh::{check_strongly_qh, four_conditions_suite, OrderSpec, QhError};
use qhadr_core::report::{AlgebraDump, BasisReport, Envelope, GldimReport, StratifyReport};
use qhadr_core::{parse_module_file, DEFAULT_CAP, DEFAULT_GLDIM_CAP, DEFAULT_SEARCH_BOUND};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INVARIANT: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

/// ADR algebras of semilocal modules: stratification, rejective chains,
/// global dimension and quasi-hereditary checks over a prime field.
#[derive(Parser, Debug)]
#[command(name = "qhadr", version)]
struct Cli {
    /// Characteristic of the ground field.
    #[arg(long, global = true, default_value_t = 101)]
    prime: u64,
    /// Longest path length considered when completing the relations.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Left,
    Rejective,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, Loewy length and monomial basis of a bound quiver algebra.
    Basis { quiver: PathBuf },
    /// The catalog of Ã and its radical-layer stratification.
    Stratify { quiver: PathBuf, module: PathBuf },
    /// Verifies the chain induced by the stratification.
    Verify {
        quiver: PathBuf,
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Left)]
        mode: Mode,
        /// When the rejective check fails, search for another rejective chain.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: usize,
    },
    /// Global dimension of End(Ã) against n_M and 2(n_M - 1).
    Gldim {
        quiver: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GLDIM_CAP)]
        resolution_cap: usize,
    },
    /// The four equivalent conditions for the ADR algebra of the algebra itself.
    #[command(alias = "thm2")]
    FourConditions {
        quiver: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_GLDIM_CAP)]
        resolution_cap: usize,
    },
    /// Left- and right-strongly quasi-hereditary checks for a layered order.
    Qh {
        quiver: PathBuf,
        module: PathBuf,
        #[arg(long)]
        order: PathBuf,
    },
    /// Searches for a rejective chain of add Ã.
    SearchChain {
        quiver: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: usize,
    },
    /// Basis, Hom dimensions and multiplication table of End(Ã).
    Dump { quiver: PathBuf, module: PathBuf },
    /// Runs the invariant suites on random instances.
    Fuzz {
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Re-runs a single instance by its seed.
        #[arg(long)]
        replay: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

struct Ctx {
    prime: Prime,
    cap: usize,
    json: bool,
}

impl Ctx {
    fn presentation(&self, path: &Path) -> Result<Arc<Presentation>, Failure> {
        let text = read(path)?;
        parse_presentation(&text, self.prime, self.cap)
            .map(Arc::new)
            .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
    }

    fn adr(&self, quiver: &Path, module: &Path) -> Result<AdrModule, Failure> {
        let pres = self.presentation(quiver)?;
        let text = read(module)?;
        parse_module_file(&pres, &text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", module.display())))
    }

    fn algebra(&self, adr: &AdrModule) -> Result<BasicAlgebra, Failure> {
        BasicAlgebra::from_modules(adr.catalog()).map_err(basic_failure)
    }

    fn emit<T: Serialize>(&self, kind: &str, body: T, text: impl FnOnce(&T) -> String) {
        let out = if self.json { format!("{}\n", Envelope::new(kind, body).to_json()) } else { text(&body) };
        // a closed pipe downstream is not an error worth reporting
        let _ = std::io::stdout().lock().write_all(out.as_bytes());
    }
}

fn basic_failure(e: BasicError) -> Failure {
    match e {
        BasicError::CapExceeded { .. } => fail(EXIT_INVARIANT, e.to_string()),
        _ => fail(EXIT_CHECK_FAILED, e.to_string()),
    }
}

fn qh_failure(e: QhError) -> Failure {
    match e {
        QhError::EquivalenceViolation(_) => fail(EXIT_INVARIANT, e.to_string()),
        QhError::Basic(b) => basic_failure(b),
        QhError::OrderSyntax(_) | QhError::UnknownLabel(_) | QhError::NotAPartition(_) => {
            fail(EXIT_PARSE, e.to_string())
        }
        _ => fail(EXIT_CHECK_FAILED, e.to_string()),
    }
}

fn status(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(fail(EXIT_CHECK_FAILED, ""))
    }
}

fn chain_text(r: &ChainReport) -> String {
    let mut s = format!("{} chain of length {}: {}\n", r.kind, r.length, if r.ok() { "verified" } else { "FAILED" });
    for step in &r.steps {
        s.push_str(&format!(
            "  step {}: remove {{{}}} {}\n",
            step.step,
            step.removed.join(", "),
            if step.ok() { "ok" } else { "failed" }
        ));
        for a in &step.approximations {
            if !a.epic {
                s.push_str(&format!("    {}: no epic approximation by {{{}}}\n", a.object, a.target.join(", ")));
            }
        }
        for (side, ws) in [("left", &step.left), ("right", &step.right)] {
            for w in ws.iter() {
                for f in &w.failures {
                    s.push_str(&format!(
                        "    {side} {} -> {}: {} maps of rank {}, radical has dimension {}\n",
                        w.object, f.target, f.count, f.rank, f.radical
                    ));
                }
            }
        }
    }
    s
}

#[derive(Serialize)]
struct VerifyBody {
    mode: String,
    chain: ChainReport,
    ok: bool,
    search: Option<SearchBody>,
}

#[derive(Serialize)]
struct SearchBody {
    found: bool,
    order: Option<OrderSpec>,
    strongly_qh: Option<bool>,
}

fn search(adr: &AdrModule, alg: &BasicAlgebra, bound: usize) -> Result<SearchBody, Failure> {
    let chain = find_rejective_chain(alg, bound).map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?;
    let order = chain.map(|c| OrderSpec::from_chain(&adr.labels(), &c));
    let strongly_qh = match &order {
        Some(o) => {
            let (l, r) = check_strongly_qh(alg, o).map_err(qh_failure)?;
            Some(l.ok() && r.ok())
        }
        None => None,
    };
    Ok(SearchBody { found: order.is_some(), order, strongly_qh })
}

fn search_text(s: &SearchBody) -> String {
    match &s.order {
        Some(o) => format!(
            "rejective chain found\n{o}\nstrongly quasi-hereditary for this order: {}\n",
            s.strongly_qh.unwrap_or(false)
        ),
        None => "no rejective chain exists\n".into(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let prime = Prime::new(cli.prime).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let ctx = Ctx { prime, cap: cli.cap, json: cli.json };
    match cli.command {
        Command::Basis { quiver } => {
            let pres = ctx.presentation(&quiver)?;
            ctx.emit("basis", BasisReport::new(&pres), |r| {
                format!("dim A = {}, m = {}\nbasis: {}\n", r.dim, r.loewy_length, r.basis.join(" "))
            });
            Ok(())
        }
        Command::Stratify { quiver, module } => {
            let adr = ctx.adr(&quiver, &module)?;
            let report = StratifyReport::new(&adr).map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?;
            ctx.emit("stratify", report, |r| {
                let mut s = format!("|F| = {}\n", r.catalog.len());
                for c in &r.catalog {
                    s.push_str(&format!("  {} dims {:?} Loewy length {}\n", c.label, c.dims, c.loewy_length));
                }
                for (i, degree) in r.layers.iter().enumerate() {
                    for (j, layer) in degree.iter().enumerate() {
                        s.push_str(&format!("F_{{{i},{}}} = {{{}}}\n", j + 1, layer.join(", ")));
                    }
                }
                let ns: Vec<String> = r.n.iter().map(usize::to_string).collect();
                s.push_str(&format!("n_i = {}\nn_M = {}\n", ns.join(", "), r.n_m));
                s
            });
            Ok(())
        }
        Command::Verify { quiver, module, mode, search: do_search, bound } => {
            let adr = ctx.adr(&quiver, &module)?;
            let alg = ctx.algebra(&adr)?;
            let chain = adr.adr_chain().map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?;
            let report = match mode {
                Mode::Left => verify_total_left_chain(&alg, &chain).map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?,
                Mode::Rejective => verify_rejective_chain(&alg, &chain),
            };
            let verified = report.ok();
            let found = if !verified && do_search && mode == Mode::Rejective {
                Some(search(&adr, &alg, bound)?)
            } else {
                None
            };
            let ok = verified || found.as_ref().is_some_and(|s| s.found);
            let body = VerifyBody { mode: format!("{mode:?}").to_lowercase(), chain: report, ok, search: found };
            ctx.emit("verify", body, |b| {
                let mut s = chain_text(&b.chain);
                if let Some(f) = &b.search {
                    s.push_str(&search_text(f));
                }
                s
            });
            status(ok)
        }
        Command::Gldim { quiver, module, resolution_cap } => {
            let adr = ctx.adr(&quiver, &module)?;
            let alg = ctx.algebra(&adr)?;
            let gl = alg.global_dimension(resolution_cap).map_err(basic_failure)?;
            let n_m = adr.stratify().map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?.n_m();
            let report = GldimReport::new(gl, n_m);
            let within = report.gldim <= report.n_m;
            ctx.emit("gldim", report, |r| {
                format!(
                    "gl B = {}, n_M = {}, classical bound {}\ntight bound: {}\n",
                    r.gldim, r.n_m, r.classical_bound, r.tight
                )
            });
            if within {
                Ok(())
            } else {
                Err(fail(EXIT_INVARIANT, format!("gl B = {gl} exceeds n_M = {n_m}")))
            }
        }
        Command::FourConditions { quiver, bound, resolution_cap } => {
            let pres = ctx.presentation(&quiver)?;
            let report = four_conditions_suite(&pres, bound, resolution_cap).map_err(qh_failure)?;
            ctx.emit("four-conditions", report, |r| {
                let mut s = format!(
                    "(i)   strongly quasi-hereditary: {}\n(ii)  radical-layer chain rejective: {}\n\
                     (iii) gl B = 2: {} (gl B = {})\n(iv)  J(A) in add Ã: {}\n",
                    r.strongly_qh, r.layer_chain_rejective, r.gldim_two, r.global_dimension, r.radical_in_add
                );
                if let Some(d) = &r.radical_decomposition {
                    s.push_str(&format!("J(A) = {}\n", d.join(" + ")));
                }
                if let Some((l, d)) = &r.pd_witness {
                    s.push_str(&format!("pd of the simple B-module at {l}: {d}\n"));
                }
                if let Some(o) = &r.found_order {
                    s.push_str(&format!("{o}\n"));
                }
                if !r.layer_chain_rejective {
                    s.push_str(&chain_text(&r.layer_chain));
                }
                s
            });
            Ok(())
        }
        Command::Qh { quiver, module, order } => {
            let adr = ctx.adr(&quiver, &module)?;
            let alg = ctx.algebra(&adr)?;
            let order = OrderSpec::parse(&read(&order)?).map_err(qh_failure)?;
            let (left, right) = check_strongly_qh(&alg, &order).map_err(qh_failure)?;
            let ok = left.ok() && right.ok();
            #[derive(Serialize)]
            struct Body {
                left: qhadr_core::qh::QhCertificate,
                right: qhadr_core::qh::QhCertificate,
                left_strongly_qh: bool,
                strongly_qh: bool,
            }
            let body = Body { left_strongly_qh: left.ok(), strongly_qh: ok, left, right };
            ctx.emit("qh", body, |b| {
                let mut s = format!("{}\n", b.left.order);
                for (side, cert) in [("left", &b.left), ("right", &b.right)] {
                    for r in cert.records.iter().filter(|r| !r.ok()) {
                        s.push_str(&format!(
                            "  {side} {}: cokernel injective {}, socle {:?}\n",
                            r.label, r.cokernel_injective, r.cokernel_socle
                        ));
                    }
                }
                s.push_str(&format!(
                    "left-strongly quasi-hereditary: {}\nright-strongly quasi-hereditary: {}\nstrongly quasi-hereditary: {}\n",
                    b.left.ok(),
                    b.right.ok(),
                    b.strongly_qh
                ));
                s
            });
            status(ok)
        }
        Command::SearchChain { quiver, module, bound } => {
            let adr = ctx.adr(&quiver, &module)?;
            let alg = ctx.algebra(&adr)?;
            let body = search(&adr, &alg, bound)?;
            let found = body.found;
            ctx.emit("search-chain", body, search_text);
            status(found)
        }
        Command::Dump { quiver, module } => {
            let adr = ctx.adr(&quiver, &module)?;
            let alg = ctx.algebra(&adr)?;
            let ext = alg.ext_quiver();
            ctx.emit("algebra", AlgebraDump::new(&alg), |d| {
                let mut s = format!("dim B = {}\nvertices: {}\nHom dimensions (row = source):\n", d.dim, d.labels.join(", "));
                for row in &d.hom_dims {
                    let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                    s.push_str(&format!("  {}\n", cells.join(" ")));
                }
                let arrows: usize = ext.iter().flatten().sum();
                s.push_str(&format!("arrows in the quiver of B: {arrows}\n"));
                s
            });
            Ok(())
        }
        Command::Fuzz { count, replay } => {
            if let Some(seed) = replay {
                let r = fuzz::run_instance(seed);
                let ok = r.ok();
                ctx.emit("fuzz-instance", r, |r| {
                    let mut s = format!("seed {}\n{}catalog: {}\n", r.seed, r.presentation, r.catalog.join(", "));
                    for c in &r.checks {
                        let v = match c.passed {
                            Some(true) => "pass",
                            Some(false) => "FAIL",
                            None => "n/a",
                        };
                        s.push_str(&format!("  {v:4} {} {}\n", c.name, c.detail));
                    }
                    s
                });
                return status(ok);
            }
            let summary = fuzz::run(cli.seed, count);
            let ok = summary.ok();
            ctx.emit("fuzz", summary, |s| {
                let mut out = format!("seed {}, {} instances\n", s.seed, s.count);
                for t in &s.tallies {
                    out.push_str(&format!("  {:32} pass {:4} fail {:4} n/a {:4}\n", t.name, t.passed, t.failed, t.skipped));
                }
                out.push_str(&format!(
                    "four conditions: {} all true, {} all false\n",
                    s.four_conditions[0], s.four_conditions[1]
                ));
                for f in &s.failures {
                    out.push_str(&format!("  failing instance: replay with --replay {}\n", f.seed));
                }
                out
            });
            status(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
