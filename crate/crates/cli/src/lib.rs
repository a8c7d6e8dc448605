//! The `quiverhom` command line tool.
//!
//! [`run_command`] parses arguments, dispatches on the algebra's field and
//! returns the exit code with the full report.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use quiverhom::format::{
    serialize_algebra, serialize_module, AlgebraFile, FormatError, ModuleFile,
};
use quiverhom::homological::{
    bass_findim_zero, build_xi_window, complex_cohomology, ext_simple_dims, lemma23_sequence,
    minimal_resolution, GeneratorStrategy, Termination,
};
use quiverhom::linalg::{Field, FieldSpec, PrimeField, Rationals};
use quiverhom::rep::{hom_space, Alg, Representation};
use quiverhom::tilde::build_tilde;

/// Environment variable naming the field used when neither the command line
/// nor the algebra file names one.
pub const FIELD_ENV: &str = "QUIVERHOM_FIELD";

pub const DEFAULT_CUTOFF: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "quiverhom",
    version,
    about = "Homological invariants of bound quiver algebras"
)]
struct Cli {
    /// Algebra file. Commands taking a module default to the module's own reference.
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Field override: Q or GF(p).
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Greedy,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices, arrows, relations, basis and radical.
    Show,
    /// The indecomposable projective at a vertex, as a module file.
    Proj { vertex: String },
    /// The indecomposable injective at a vertex, as a module file.
    Inj { vertex: String },
    /// The simple module at a vertex, as a module file.
    Simple { vertex: String },
    /// Emit the algebra with a dual-numbers vertex attached at every vertex.
    Tilde,
    /// Emit the opposite algebra.
    Opposite,
    /// Minimal projective resolution with certificates.
    Resolve {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Projective dimension verdict.
    Pd {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Dimensions of Ext^k(M, S_v) from a non-minimal resolution.
    Ext {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        strategy: Strategy,
    },
    /// Whether every simple is a quotient of D(A).
    Bass,
    /// Exactness of the sequences 0 -> S_i + S_i~ -> e_i~ Ã -> S_i~ -> 0 and their duals.
    Lemma23 {
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Cohomology of the spliced complex of D(e_i~ Ã) over the opposite of Ã.
    Xi {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        window: usize,
    },
    /// Dimension of Hom(M, N).
    Hom {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Validate a module file.
    Verify {
        #[arg(long)]
        module: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    /// Exit code 1.
    Check(String),
    /// Exit code 2.
    Usage(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Relation { .. } => Failure::Check(format!("invalid module: {e}\n")),
            other => Failure::Usage(format!("error: {other}\n")),
        }
    }
}

type Outcome = Result<String, (String, Failure)>;

/// Runs one invocation. The first argument is the program name.
pub fn run_command<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli) {
        Ok(report) => (0, report),
        Err((partial, Failure::Check(msg))) => (1, partial + &msg),
        Err((partial, Failure::Usage(msg))) => (2, partial + &msg),
    }
}

fn usage(msg: impl Into<String>) -> (String, Failure) {
    (
        String::new(),
        Failure::Usage(format!("error: {}\n", msg.into())),
    )
}

fn read(path: &Path) -> Result<String, (String, Failure)> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: FormatError) -> (String, Failure) {
    let failure = match Failure::from(e) {
        Failure::Check(m) => Failure::Check(format!("{}: {m}", path.display())),
        Failure::Usage(m) => Failure::Usage(format!(
            "error: {}: {}",
            path.display(),
            m.trim_start_matches("error: ")
        )),
    };
    (String::new(), failure)
}

/// The algebra file for this invocation: `--algebra`, else the first module's reference.
fn algebra_path(cli: &Cli) -> Result<PathBuf, (String, Failure)> {
    if let Some(p) = &cli.algebra {
        return Ok(p.clone());
    }
    let module = match &cli.command {
        Command::Resolve { module, .. }
        | Command::Pd { module, .. }
        | Command::Ext { module, .. }
        | Command::Verify { module } => Some(module),
        Command::Hom { from, .. } => Some(from),
        _ => None,
    };
    let Some(module) = module else {
        return Err(usage("--algebra is required for this command"));
    };
    let file = ModuleFile::parse(&read(module)?).map_err(|e| located(module, e))?;
    match file.algebra {
        Some(rel) => Ok(module.parent().unwrap_or(Path::new("")).join(rel)),
        None => Err(usage(format!(
            "{} names no algebra; pass --algebra",
            module.display()
        ))),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let path = algebra_path(cli)?;
    let file = AlgebraFile::parse(&read(&path)?).map_err(|e| located(&path, e))?;
    let spec = match &cli.field {
        Some(s) => s.parse::<FieldSpec>().map_err(|e| usage(e.to_string()))?,
        None => match file.field_spec().map_err(|e| located(&path, e))? {
            Some(spec) => spec,
            None => match std::env::var(FIELD_ENV) {
                Ok(s) => s
                    .parse::<FieldSpec>()
                    .map_err(|e| usage(format!("{FIELD_ENV}: {e}")))?,
                Err(_) => FieldSpec::default(),
            },
        },
    };
    match spec {
        FieldSpec::Rationals => run(cli, &path, &file, Rationals),
        FieldSpec::PrimeField { characteristic } => {
            let f = PrimeField::new(characteristic).map_err(|e| usage(e.to_string()))?;
            run(cli, &path, &file, f)
        }
    }
}

fn vertex<F: Field>(alg: &Alg<F>, label: &str) -> Result<usize, (String, Failure)> {
    alg.quiver().vertex(label).map_err(|e| usage(e.to_string()))
}

fn load_module<F: Field>(
    alg: &Alg<F>,
    path: &Path,
) -> Result<Representation<F>, (String, Failure)> {
    let file = ModuleFile::parse(&read(path)?).map_err(|e| located(path, e))?;
    file.build(alg).map_err(|e| located(path, e))
}

fn dims_text<F: Field>(alg: &Alg<F>, dims: &[usize]) -> String {
    let parts: Vec<String> = alg
        .quiver()
        .vertices()
        .iter()
        .zip(dims)
        .map(|(v, d)| format!("{v}:{d}"))
        .collect();
    parts.join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run<F: Field>(cli: &Cli, path: &Path, file: &AlgebraFile, field: F) -> Outcome {
    let alg: Alg<F> = Arc::new(file.build(field).map_err(|e| located(path, e))?);
    let algebra_ref = path.file_name().map(|s| s.to_string_lossy().into_owned());
    let mut out = String::new();
    match &cli.command {
        Command::Show => show(&alg, &mut out),
        Command::Proj { vertex: v }
        | Command::Inj { vertex: v }
        | Command::Simple { vertex: v } => {
            let i = vertex(&alg, v)?;
            let (kind, m) = match &cli.command {
                Command::Proj { .. } => ("projective", Representation::projective(&alg, i)),
                Command::Inj { .. } => ("injective", Representation::injective(&alg, i)),
                _ => ("simple", Representation::simple(&alg, i)),
            };
            let m = m.map_err(|e| usage(e.to_string()))?;
            writeln!(out, "# {kind} at {v}: {}", dims_text(&alg, m.dims())).unwrap();
            out.push_str(&serialize_module(&m, algebra_ref.as_deref()));
        }
        Command::Tilde => {
            let t = build_tilde(alg.clone()).map_err(|e| usage(e.to_string()))?;
            out.push_str(&serialize_algebra(t.result()));
        }
        Command::Opposite => {
            let op = alg.opposite().map_err(|e| usage(e.to_string()))?;
            out.push_str(&serialize_algebra(&op));
        }
        Command::Resolve { module, cutoff } => {
            let m = load_module(&alg, module)?;
            let r = minimal_resolution(&m, *cutoff);
            writeln!(out, "module: {}", dims_text(&alg, m.dims())).unwrap();
            writeln!(out, "cutoff: {cutoff}").unwrap();
            for (k, step) in r.steps.iter().enumerate() {
                writeln!(
                    out,
                    "P_{k}: multiplicities [{}] dim {} | kernel {} | exact {} | minimal {}",
                    dims_text(&alg, &step.multiplicities),
                    step.projective.total_dim(),
                    dims_text(&alg, &step.syzygy_dims),
                    yes(step.exact),
                    yes(step.minimal),
                )
                .unwrap();
            }
            match r.termination {
                _ if m.is_zero() => writeln!(out, "termination: zero module").unwrap(),
                Termination::Finite(n) => writeln!(out, "termination: finite, pd = {n}").unwrap(),
                Termination::AtLeastCutoff(n) => {
                    writeln!(out, "termination: cutoff reached, pd >= {n}").unwrap()
                }
            }
            writeln!(out, "pd: {}", r.verdict()).unwrap();
            if !(r.all_exact() && r.all_minimal()) {
                return Err((out, Failure::Check("certificate failed\n".into())));
            }
        }
        Command::Pd { module, cutoff } => {
            let m = load_module(&alg, module)?;
            let r = minimal_resolution(&m, *cutoff);
            writeln!(out, "pd: {}", r.verdict()).unwrap();
            if !(r.all_exact() && r.all_minimal()) {
                return Err((out, Failure::Check("certificate failed\n".into())));
            }
        }
        Command::Ext {
            module,
            vertex: v,
            max,
            strategy,
        } => {
            let m = load_module(&alg, module)?;
            let i = vertex(&alg, v)?;
            let strategy = match strategy {
                Strategy::Greedy => GeneratorStrategy::Greedy,
                Strategy::Full => GeneratorStrategy::FullBasis,
            };
            let dims = ext_simple_dims(&m, *max, strategy);
            for (k, row) in dims.iter().enumerate() {
                writeln!(out, "Ext^{k}(M, S_{v}) = {}", row[i]).unwrap();
            }
        }
        Command::Bass => {
            let cert = bass_findim_zero(&alg).map_err(|e| usage(e.to_string()))?;
            for (v, d) in alg.quiver().vertices().iter().zip(&cert.hom_dims) {
                writeln!(out, "dim Hom(D(A), S_{v}) = {d}").unwrap();
            }
            writeln!(out, "verdict: {}", cert.verdict).unwrap();
        }
        Command::Lemma23 { vertex: v } => {
            let t = build_tilde(alg.clone()).map_err(|e| usage(e.to_string()))?;
            let op = t.opposite().map_err(|e| usage(e.to_string()))?;
            let vertices = match v {
                Some(label) => vec![vertex(&alg, label)?],
                None => (0..alg.num_vertices()).collect(),
            };
            let mut ok = true;
            for i in vertices {
                let l = lemma23_sequence(&t, &op, i).map_err(|e| usage(e.to_string()))?;
                let label = alg.quiver().vertex_label(i);
                writeln!(out, "vertex {label}:").unwrap();
                writeln!(out, "  middle: {}", dims_text(&op, l.middle_dims())).unwrap();
                for j in &l.dual_certificate.junctions {
                    writeln!(
                        out,
                        "  junction {}: kernel {} image {} exact {}",
                        j.position,
                        j.kernel_dims.iter().sum::<usize>(),
                        j.image_dims.iter().sum::<usize>(),
                        yes(j.exact)
                    )
                    .unwrap();
                }
                writeln!(out, "  exact: {}", yes(l.is_exact())).unwrap();
                ok &= l.is_exact();
            }
            if !ok {
                return Err((out, Failure::Check("sequence not exact\n".into())));
            }
        }
        Command::Xi { vertex: v, window } => {
            let i = vertex(&alg, v)?;
            let t = build_tilde(alg.clone()).map_err(|e| usage(e.to_string()))?;
            let op = t.opposite().map_err(|e| usage(e.to_string()))?;
            let c = build_xi_window(&t, &op, i, *window).map_err(|e| usage(e.to_string()))?;
            let ti = t.tilde_vertex(i);
            writeln!(out, "window: [{}, {}]", c.lo, c.hi).unwrap();
            let squares = c.squares_to_zero();
            writeln!(out, "d^2 = 0: {}", yes(squares)).unwrap();
            let mut ok = squares;
            for d in (c.lo + 1)..c.hi {
                let h = complex_cohomology(&c, d).map_err(|e| usage(e.to_string()))?;
                let mut expected = vec![0; op.num_vertices()];
                if d <= 0 {
                    expected[i] = 1;
                }
                if d == 0 {
                    expected[ti] = 1;
                }
                let matches = h.dims() == expected.as_slice();
                ok &= matches;
                writeln!(
                    out,
                    "H^{d}: {} | expected {}",
                    dims_text(&op, h.dims()),
                    yes(matches)
                )
                .unwrap();
            }
            if !ok {
                return Err((
                    out,
                    Failure::Check("cohomology differs from the expected table\n".into()),
                ));
            }
        }
        Command::Hom { from, to } => {
            let m = load_module(&alg, from)?;
            let n = load_module(&alg, to)?;
            let h = hom_space(&m, &n).map_err(|e| usage(e.to_string()))?;
            writeln!(out, "dim Hom = {}", h.dim()).unwrap();
        }
        Command::Verify { module } => {
            let m = load_module(&alg, module)?;
            writeln!(out, "valid: {}", dims_text(&alg, m.dims())).unwrap();
        }
    }
    Ok(out)
}

fn show<F: Field>(alg: &Alg<F>, out: &mut String) {
    let q = alg.quiver();
    writeln!(out, "field: {}", alg.field().spec()).unwrap();
    writeln!(out, "vertices: {}", q.vertices().join(" ")).unwrap();
    for a in q.arrows() {
        writeln!(
            out,
            "arrow {}: {} -> {}",
            a.name,
            q.vertex_label(a.source),
            q.vertex_label(a.target)
        )
        .unwrap();
    }
    for i in 0..alg.relations().len() {
        writeln!(
            out,
            "relation {i}: {}",
            quiverhom::format::relation_text(alg, i)
        )
        .unwrap();
    }
    writeln!(out, "dim: {}", alg.dim()).unwrap();
    writeln!(out, "radical dim: {}", alg.radical_basis().len()).unwrap();
    for (v, label) in q.vertices().iter().enumerate() {
        let p = Representation::projective(alg, v).expect("vertex in range");
        writeln!(out, "e_{label}A: {}", dims_text(alg, p.dims())).unwrap();
    }
    let names: Vec<String> = (0..alg.dim()).map(|i| alg.path_name(i)).collect();
    writeln!(out, "basis: {}", names.join(" ")).unwrap();
}
