//! Command-line front end. [`run`] parses arguments, dispatches, and returns a
//! [`Report`] whose status decides the exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::bimodule::{build_recollement, build_split_extension, verify_recollement_laws, FunctorKind, Recollement, SplitExtension};
use crate::error::{Error, Result};
use crate::exceptional::{
    check_recollement_theorem, check_split_theorem, enumerate_bricks, enumerate_ces, is_exceptional,
    is_exceptional_sequence, EnumerationConfig, ExceptionalReport, Implication, DEFAULT_MAX_N,
};
use crate::linalg::Field;
use crate::module::{
    brick_report, ext_dims, hom_dim, load_module, load_sequence, minimal_resolution, module_to_text, RightModule,
};
use crate::reproduce::{run_all, Fixtures};

#[derive(Debug, Parser)]
#[command(name = "exrep", version, about = "Hom, Ext and exceptional sequences over bound quiver algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Ground field: Q or F<p>
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Highest Ext degree listed
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Resolution steps before giving up on periodicity
    #[arg(long, global = true, default_value_t = crate::module::DEFAULT_STEPS)]
    pub steps: usize,
    /// Largest vertex dimension enumerated
    #[arg(long, global = true, default_value_t = 1)]
    pub dim_bound: usize,
    /// Largest number of candidate representations enumerated
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub budget: usize,
    /// Arrows generating the kernel of a split extension
    #[arg(long, global = true, value_delimiter = ',')]
    pub kernel_arrows: Vec<String>,
    /// Vertices whose idempotents sum to the recollement idempotent
    #[arg(long, global = true, value_delimiter = ',')]
    pub idempotent: Vec<String>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra summaries
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Module validation
    #[command(subcommand)]
    Module(ModuleCmd),
    /// dim Hom(M, N)
    Hom { algebra: PathBuf, m: String, n: String },
    /// dim Ext^n(M, N) for n up to --max-n
    Ext { algebra: PathBuf, m: String, n: String },
    /// Minimal projective resolution
    Resolve { algebra: PathBuf, m: String },
    /// Apply a split-extension functor to a module
    Tensor {
        algebra: PathBuf,
        m: String,
        /// tensor-up, tensor-down, hom-up, hom-down or tensor-q
        #[arg(long, default_value = "tensor-up")]
        functor: String,
    },
    /// Split extensions
    #[command(name = "split-ext", subcommand)]
    SplitExt(SplitCmd),
    /// Exceptionality checks
    #[command(subcommand)]
    Check(CheckCmd),
    /// Idempotent recollements
    #[command(subcommand)]
    Recollement(RecollementCmd),
    /// Brick and complete exceptional sequence enumeration
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Run the bundled reproduction suite
    #[command(name = "reproduce-paper")]
    ReproducePaper,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    Info { algebra: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ModuleCmd {
    Check { algebra: PathBuf, m: String },
}

#[derive(Debug, Subcommand)]
pub enum SplitCmd {
    Verify { algebra: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    /// Is the sequence file an exceptional sequence
    Seq { algebra: PathBuf, sequence: PathBuf },
    /// Hypotheses and conclusion of the split transfer theorem
    #[command(name = "thm-split")]
    ThmSplit { algebra: PathBuf, sequence: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum RecollementCmd {
    /// Apply one of the six functors
    Map {
        algebra: PathBuf,
        m: String,
        /// i^*, i_*, i^!, j_!, j^* or j_*
        #[arg(long)]
        functor: String,
    },
    /// Check the recollement identities on sample modules
    Laws { algebra: PathBuf },
    /// Hypotheses and conclusions of the recollement transfer theorem
    Thm { algebra: PathBuf, closed: PathBuf, open: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum EnumerateCmd {
    Bricks { algebra: PathBuf },
    Ces { algebra: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    HypothesisFailed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::HypothesisFailed => 2,
            Status::Error => 1,
        }
    }
}

/// The outcome of one invocation; `text` is rendered from `payload`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub status: Status,
    pub payload: Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    fn new(status: Status, payload: Value, text: String) -> Report {
        Report { status, payload, text }
    }

    fn error(e: &Error) -> Report {
        Report::new(Status::Error, json!({ "error": e.to_string() }), format!("error: {e}\n"))
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::HypothesisFailed
    }
}

fn load_algebra(path: &Path, opts: &Options) -> Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let a = Algebra::from_text(&text)?;
    match opts.field {
        Some(f) if f != a.field() => Ok(Arc::new(a.over_field(f)?)),
        _ => Ok(a),
    }
}

fn module(spec: &str, a: &Arc<Algebra>) -> Result<RightModule> {
    Ok(load_module(spec, a)?.module)
}

fn sequence(path: &Path, a: &Arc<Algebra>) -> Result<Vec<RightModule>> {
    Ok(load_sequence(path, a)?.into_iter().map(|m| m.module).collect())
}

fn vertex_indices(a: &Algebra, labels: &[String]) -> Result<Vec<usize>> {
    if labels.is_empty() {
        return Err(Error::input("--idempotent is required"));
    }
    labels
        .iter()
        .map(|l| a.vertex_index(l).ok_or_else(|| Error::input(format!("unknown vertex '{l}' in --idempotent"))))
        .collect()
}

fn split(path: &Path, opts: &Options) -> Result<SplitExtension> {
    if opts.kernel_arrows.is_empty() {
        return Err(Error::input("--kernel-arrows is required"));
    }
    let r = load_algebra(path, opts)?;
    for k in &opts.kernel_arrows {
        if !r.arrows().iter().any(|g| &g.0 == k) {
            return Err(Error::input(format!("unknown arrow '{k}' in --kernel-arrows")));
        }
    }
    let ks: Vec<&str> = opts.kernel_arrows.iter().map(String::as_str).collect();
    build_split_extension(&r, &ks)
}

fn recollement(path: &Path, opts: &Options) -> Result<Recollement> {
    let a = load_algebra(path, opts)?;
    let eps = vertex_indices(&a, &opts.idempotent)?;
    build_recollement(&a, &eps)
}

fn dims(m: &RightModule) -> String {
    format!("{:?}", m.dims())
}

fn exceptional_text(r: &ExceptionalReport) -> String {
    let mut s = format!(
        "{}: {} ({}{})\n",
        r.subject,
        if r.verdict { "yes" } else { "no" },
        r.certainty,
        if r.complete { ", complete" } else { "" }
    );
    for w in &r.witnesses {
        let _ = write!(s, "  witness {}", w.condition);
        if let Some(i) = w.i {
            let _ = write!(s, " i={i}");
        }
        if let Some(j) = w.j {
            let _ = write!(s, " j={j}");
        }
        if let Some(n) = w.n {
            let _ = write!(s, " n={n}");
        }
        let _ = writeln!(s, " dim={}", w.dim);
    }
    for img in &r.images {
        s.push_str(img);
    }
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn algebra_info(a: &Arc<Algebra>) -> Report {
    let n = a.vertex_count();
    let cartan: Vec<Vec<usize>> = (0..n).map(|u| (0..n).map(|v| a.block(u, v).len()).collect()).collect();
    let arrows: Vec<Value> = a
        .arrows()
        .iter()
        .map(|(l, s, t, _)| json!({ "label": l, "source": a.vertices()[*s], "target": a.vertices()[*t] }))
        .collect();
    let payload = json!({
        "name": a.name(),
        "field": a.field().to_string(),
        "vertices": a.vertices(),
        "dim": a.dim(),
        "basis": a.basis().iter().map(|b| b.label.clone()).collect::<Vec<_>>(),
        "arrows": arrows,
        "cartan": cartan,
        "nilpotency_index": a.nilpotency_index(),
        "diagnostics": a.axiom_diagnostics(),
    });
    let mut text = format!("algebra {} over {}, dimension {}\n", a.name(), a.field(), a.dim());
    let _ = writeln!(text, "vertices {}", a.vertices().join(" "));
    for (l, s, t, _) in a.arrows() {
        let _ = writeln!(text, "arrow {l} {} {}", a.vertices()[s], a.vertices()[t]);
    }
    let labels: Vec<&str> = a.basis().iter().map(|b| b.label.as_str()).collect();
    let _ = writeln!(text, "basis {}", labels.join(" "));
    let _ = writeln!(text, "cartan {cartan:?}");
    if let Some(k) = a.nilpotency_index() {
        let _ = writeln!(text, "radical nilpotency index {k}");
    }
    let diagnostics = a.axiom_diagnostics();
    let status = verdict(diagnostics.is_empty());
    for d in diagnostics {
        let _ = writeln!(text, "axiom violated: {d}");
    }
    Report::new(status, payload, text)
}

fn module_check(m: &RightModule, opts: &Options) -> Result<Report> {
    let brick = brick_report(m);
    let exc = is_exceptional(m, opts.max_n)?;
    let payload = json!({
        "dims": m.dims(),
        "dim": m.dim(),
        "end_dim": brick.end_dim,
        "brick": brick.is_brick,
        "exceptional": to_value(&exc),
    });
    let text = format!(
        "module {} of dimension {}\nend dim {} ({})\nexceptional: {}",
        dims(m),
        m.dim(),
        brick.end_dim,
        if brick.is_brick { "brick" } else { "not a brick" },
        exceptional_text(&exc)
    );
    Ok(Report::new(Status::Ok, payload, text))
}

fn resolve(m: &RightModule, opts: &Options) -> Result<Report> {
    let res = minimal_resolution(m, opts.steps)?;
    let a = m.algebra();
    let covers: Vec<Vec<&str>> = res
        .covers
        .iter()
        .map(|c| c.tops.iter().map(|&v| a.vertices()[v].as_str()).collect())
        .collect();
    let syzygies: Vec<&[usize]> = res.syzygies.iter().map(|s| s.dims()).collect();
    let payload = json!({ "covers": covers, "syzygy_dims": syzygies, "status": to_value(&res.status) });
    let mut text = String::new();
    for (k, c) in covers.iter().enumerate() {
        let _ = writeln!(text, "P_{k} = {}   Omega^{k} dims {:?}", c.iter().map(|v| format!("P({v})")).collect::<Vec<_>>().join(" + "), syzygies[k]);
    }
    let _ = writeln!(text, "status {:?}", res.status);
    Ok(Report::new(Status::Ok, payload, text))
}

fn image_report(kind: &str, m: &RightModule, image: &RightModule) -> Report {
    let blob = module_to_text("image", image);
    let payload = json!({ "functor": kind, "source_dims": m.dims(), "dims": image.dims(), "images": [blob] });
    let text = format!("{kind} sends {} to {}\n{blob}", dims(m), dims(image));
    Report::new(Status::Ok, payload, text)
}

fn dispatch(cmd: &Command, opts: &Options) -> Result<Report> {
    match cmd {
        Command::Algebra(AlgebraCmd::Info { algebra }) => Ok(algebra_info(&load_algebra(algebra, opts)?)),
        Command::Module(ModuleCmd::Check { algebra, m }) => {
            let a = load_algebra(algebra, opts)?;
            module_check(&module(m, &a)?, opts)
        }
        Command::Hom { algebra, m, n } => {
            let a = load_algebra(algebra, opts)?;
            let d = hom_dim(&module(m, &a)?, &module(n, &a)?)?;
            Ok(Report::new(Status::Ok, json!({ "hom_dim": d }), format!("dim Hom = {d}\n")))
        }
        Command::Ext { algebra, m, n } => {
            let a = load_algebra(algebra, opts)?;
            let table = ext_dims(&module(m, &a)?, &module(n, &a)?, opts.max_n)?;
            let mut text = String::new();
            for (k, d) in table.dims.iter().enumerate() {
                let _ = writeln!(text, "Ext^{k} = {d}");
            }
            let _ = writeln!(text, "certainty {:?}", table.certainty);
            Ok(Report::new(Status::Ok, to_value(&table), text))
        }
        Command::Resolve { algebra, m } => {
            let a = load_algebra(algebra, opts)?;
            resolve(&module(m, &a)?, opts)
        }
        Command::Tensor { algebra, m, functor } => {
            let se = split(algebra, opts)?;
            if functor == "tensor-q" {
                let x = module(m, &se.a)?;
                return Ok(image_report(functor, &x, &se.tensor_q(&x)?));
            }
            let kind = FunctorKind::parse(functor)
                .filter(|k| {
                    matches!(
                        k,
                        FunctorKind::TensorUpR | FunctorKind::TensorDownA | FunctorKind::HomUp | FunctorKind::HomDown
                    )
                })
                .ok_or_else(|| Error::input(format!("unknown split-extension functor '{functor}'")))?;
            let source = match kind {
                FunctorKind::TensorUpR | FunctorKind::HomUp => &se.a,
                _ => &se.r,
            };
            let x = module(m, source)?;
            Ok(image_report(kind.name(), &x, &se.apply(kind, &x)?))
        }
        Command::SplitExt(SplitCmd::Verify { algebra }) => match split(algebra, opts) {
            Err(Error::NotSplit(w)) => Ok(Report::new(
                Status::HypothesisFailed,
                json!({ "split": false, "witness": w }),
                format!("does not split: {w}\n"),
            )),
            Err(e) => Err(e),
            Ok(se) => {
                let projective = se.is_projective_left()?;
                let mult = se.left_multiplicities()?;
                let payload = json!({
                    "split": true,
                    "r": se.r.name(),
                    "a": se.a.name(),
                    "dim_r": se.r.dim(),
                    "dim_a": se.a.dim(),
                    "dim_q": se.dim_q(),
                    "left_projective": projective,
                    "left_multiplicities": mult,
                });
                let text = format!(
                    "{} = {} + Q with dim Q = {}\nR projective as a left A-module: {projective}\nmultiplicities {mult:?}\n",
                    se.r.name(),
                    se.a.name(),
                    se.dim_q()
                );
                Ok(Report::new(Status::Ok, payload, text))
            }
        },
        Command::Check(CheckCmd::Seq { algebra, sequence: path }) => {
            let a = load_algebra(algebra, opts)?;
            let r = is_exceptional_sequence(&sequence(path, &a)?, opts.max_n)?;
            Ok(Report::new(verdict(r.verdict), to_value(&r), exceptional_text(&r)))
        }
        Command::Check(CheckCmd::ThmSplit { algebra, sequence: path }) => {
            let se = split(algebra, opts)?;
            let r = check_split_theorem(&se, &sequence(path, &se.a)?, opts.max_n)?;
            let mut text = String::new();
            for h in &r.hypotheses {
                let _ = writeln!(text, "hypothesis ({}) {}: {}", h.id, h.statement, holds(h.holds));
                for w in &h.witnesses {
                    let _ = writeln!(text, "  witness i={:?} j={:?} n={:?} dim={}", w.i, w.j, w.n, w.dim);
                }
            }
            text.push_str(&exceptional_text(&r.conclusion));
            let _ = writeln!(text, "implication {:?}", r.implication);
            Ok(Report::new(verdict(r.implication == Implication::Confirmed), to_value(&r), text))
        }
        Command::Recollement(RecollementCmd::Map { algebra, m, functor }) => {
            let rec = recollement(algebra, opts)?;
            let kind = FunctorKind::parse(functor)
                .filter(|k| {
                    !matches!(
                        k,
                        FunctorKind::TensorUpR | FunctorKind::TensorDownA | FunctorKind::HomUp | FunctorKind::HomDown
                    )
                })
                .ok_or_else(|| Error::input(format!("unknown recollement functor '{functor}'")))?;
            let source = match kind {
                FunctorKind::IStar => &rec.bar,
                FunctorKind::JLower | FunctorKind::JStar => &rec.corner,
                _ => &rec.a,
            };
            let x = module(m, source)?;
            Ok(image_report(kind.name(), &x, &rec.apply(kind, &x)?))
        }
        Command::Recollement(RecollementCmd::Laws { algebra }) => {
            let rec = recollement(algebra, opts)?;
            let samples: Vec<RightModule> = (0..rec.a.vertex_count())
                .map(|v| RightModule::projective(rec.a.clone(), v))
                .collect::<Result<_>>()?;
            let r = verify_recollement_laws(&rec, &samples)?;
            let mut text = format!(
                "i^* exact: {}\ni^! exact: {}\nj_* = Hom(-, {})\n{} checks, {} failures\n",
                rec.i_upper_exact,
                rec.i_shriek_exact,
                r.j_star_bimodule,
                r.checks,
                r.failures.len()
            );
            for f in &r.failures {
                let _ = writeln!(text, "  {}: {}", f.law, f.detail);
            }
            let mut payload = to_value(&r);
            payload["i_upper_exact"] = json!(rec.i_upper_exact);
            payload["i_shriek_exact"] = json!(rec.i_shriek_exact);
            Ok(Report::new(verdict(r.holds()), payload, text))
        }
        Command::Recollement(RecollementCmd::Thm { algebra, closed, open }) => {
            let rec = recollement(algebra, opts)?;
            let xs = sequence(closed, &rec.bar)?;
            let ys = sequence(open, &rec.corner)?;
            let r = check_recollement_theorem(&rec, &xs, &ys, opts.max_n)?;
            let mut text = String::new();
            for h in &r.hypotheses {
                let _ = writeln!(text, "hypothesis {} ({}): {}", h.id, h.statement, holds(h.holds));
            }
            let _ = write!(text, "i_*: {}", exceptional_text(&r.closed));
            let _ = write!(text, "j_!: {}", exceptional_text(&r.open));
            for f in &r.identity_failures {
                let _ = writeln!(
                    text,
                    "Ext^{} identity fails for {} at position {}: {} vs {}",
                    f.n, f.functor, f.position, f.image_dim, f.original_dim
                );
            }
            let _ = writeln!(text, "implication {:?}", r.implication);
            let ok = r.implication == Implication::Confirmed && r.identity_failures.is_empty();
            Ok(Report::new(verdict(ok), to_value(&r), text))
        }
        Command::Enumerate(cmd) => {
            let (algebra, ces) = match cmd {
                EnumerateCmd::Bricks { algebra } => (algebra, false),
                EnumerateCmd::Ces { algebra } => (algebra, true),
            };
            // --field selects the enumeration field here, not the algebra's
            let a = load_algebra(algebra, &Options { field: None, ..opts.clone() })?;
            let cfg = EnumerationConfig {
                field: opts.field.unwrap_or(EnumerationConfig::default().field),
                dim_bound: opts.dim_bound,
                budget: opts.budget,
                max_n: opts.max_n,
            };
            if ces {
                enumerate_ces_report(&a, &cfg)
            } else {
                let found = enumerate_bricks(&a, &cfg)?;
                let list: Vec<Value> = found
                    .bricks
                    .iter()
                    .map(|m| json!({ "dims": m.dims(), "module": module_to_text("brick", m) }))
                    .collect();
                let mut text = format!("{} bricks\n", found.bricks.len());
                for m in &found.bricks {
                    text.push_str(&module_to_text("brick", m));
                }
                if !found.complete {
                    text.push_str("error: enumeration budget exhausted, list is partial\n");
                }
                let payload = json!({ "count": found.bricks.len(), "complete": found.complete, "bricks": list });
                let status = if found.complete { Status::Ok } else { Status::Error };
                Ok(Report::new(status, payload, text))
            }
        }
        Command::ReproducePaper => {
            let outcomes = run_all(&Fixtures::bundled());
            let text = crate::reproduce::render(&outcomes);
            let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
            let status = if failed.is_empty() { Status::Ok } else { Status::Error };
            Ok(Report::new(status, json!({ "criteria": outcomes, "failed": failed }), text))
        }
    }
}

fn holds(h: Option<bool>) -> &'static str {
    match h {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "undecided",
    }
}

fn enumerate_ces_report(a: &Arc<Algebra>, cfg: &EnumerationConfig) -> Result<Report> {
    let found = enumerate_ces(a, cfg)?;
    let modules: Vec<Value> = found
        .modules
        .iter()
        .map(|m| json!({ "dims": m.dims(), "module": module_to_text("m", m) }))
        .collect();
    let payload = json!({
        "count": found.sequences.len(),
        "complete": found.complete,
        "reverified": found.reverified,
        "modules": modules,
        "sequences": found.sequences,
    });
    let mut text = format!("{} complete exceptional sequences\n", found.sequences.len());
    for s in 0..found.sequences.len() {
        let seq = found.sequence(s);
        let _ = writeln!(text, "({})", seq.iter().map(dims).collect::<Vec<_>>().join(", "));
    }
    if !found.complete {
        text.push_str("error: enumeration budget exhausted, list is partial\n");
    }
    let status = if !found.complete || !found.reverified {
        Status::Error
    } else {
        Status::Ok
    };
    Ok(Report::new(status, payload, text))
}

/// Runs one invocation and writes its rendering to stdout or `--out`.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let report = execute(&cli);
    let rendered = report.render(cli.opts.json);
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{rendered}"),
    }
    report.status.exit_code()
}

/// Dispatches without printing.
pub fn execute(cli: &Cli) -> Report {
    dispatch(&cli.command, &cli.opts).unwrap_or_else(|e| Report::error(&e))
}
