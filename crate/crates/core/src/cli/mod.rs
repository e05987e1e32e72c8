//! Command-line front end: `check`, `builtin` and `emit`.
//!
//! Exit codes: 0 when every requested axiom holds, 1 on a violation, 2 on usage or input errors.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use format::{emit_algebra, parse_algebra, parse_algebra_str, AlgebraFile, Kind};

use crate::conecalc::{harmonic_basis, iota_expand, KernelMonomial, Side};
use crate::error::{Error, Result};
use crate::exactalg::rational::parse_rational;
use crate::pseudoalg::{
    build_cur, build_hd, build_wd, current_extend, jacobi_check, sd_closure_check, skew_check,
    ChiVector, LieStructure,
};
use crate::report::CheckReport;
use crate::vla::{borcherds_check, d1_bridge, jacobi_check_vla, skew_check_vla, VLAStructure};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axiom {
    Skew,
    Jacobi,
    Closure,
    #[value(name = "vla-skew")]
    VlaSkew,
    #[value(name = "vla-jacobi")]
    VlaJacobi,
    Borcherds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuiltinName {
    #[value(name = "Cur")]
    Cur,
    #[value(name = "W")]
    W,
    #[value(name = "S")]
    S,
    #[value(name = "H")]
    H,
}

impl std::str::FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Axiom as ValueEnum>::from_str(s, false)
            .map_err(|_| Error::Argument(format!("unknown axiom {s:?}")))
    }
}

impl std::str::FromStr for BuiltinName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <BuiltinName as ValueEnum>::from_str(s, false)
            .map_err(|_| Error::Argument(format!("unknown builtin {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Zw,
    Wz,
}

/// Options for `run_checks`.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Harmonic-degree window for the light-cone checkers.
    pub window: u32,
    /// Borcherds/Jacobi integer; the largest pole order when absent.
    pub l: Option<u32>,
    /// Kernel for the Borcherds identity.
    pub kernel: KernelMonomial,
    /// Degree bound for the closure check.
    pub degmax: u32,
}

impl CheckOptions {
    pub fn new(dim: usize) -> Self {
        CheckOptions {
            window: 4,
            l: None,
            kernel: KernelMonomial::one(dim.max(1)),
            degmax: 3,
        }
    }
}

fn inapplicable(axiom: Axiom, kind: Kind) -> Error {
    Error::Domain(format!("axiom {axiom:?} does not apply to a {kind:?} file").to_lowercase())
}

fn light_cone(obj: &AlgebraFile, axiom: Axiom) -> Result<VLAStructure> {
    match obj {
        AlgebraFile::Vla(s) => Ok(s.clone()),
        AlgebraFile::Pseudoalgebra(t, None) if t.dim() == 1 => d1_bridge(t),
        other => Err(inapplicable(axiom, other.kind())),
    }
}

/// Runs the requested axioms in order. Any error means the request itself was unusable.
pub fn run_checks(
    obj: &AlgebraFile,
    axioms: &[Axiom],
    opts: &CheckOptions,
) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::with_capacity(axioms.len());
    for &axiom in axioms {
        let report = match axiom {
            Axiom::Skew | Axiom::Jacobi => {
                let table = match obj {
                    AlgebraFile::Pseudoalgebra(t, _) => t.clone(),
                    AlgebraFile::Lie(g) => build_cur(g, 0)?,
                    AlgebraFile::Vla(_) => return Err(inapplicable(axiom, Kind::Vla)),
                };
                if axiom == Axiom::Skew {
                    skew_check(&table)
                } else {
                    jacobi_check(&table)
                }
            }
            Axiom::Closure => match obj {
                AlgebraFile::Pseudoalgebra(t, Some(chi)) if *t == build_wd(t.dim())? => {
                    sd_closure_check(t.dim(), chi, opts.degmax)?
                }
                other => return Err(inapplicable(axiom, other.kind())),
            },
            Axiom::VlaSkew => skew_check_vla(&light_cone(obj, axiom)?, opts.window)?,
            Axiom::VlaJacobi | Axiom::Borcherds => {
                let s = light_cone(obj, axiom)?;
                let l = opts.l.unwrap_or_else(|| s.max_pole_order());
                if axiom == Axiom::VlaJacobi {
                    jacobi_check_vla(&s, l, opts.window)?
                } else {
                    borcherds_check(&s, l, &opts.kernel, opts.window)?
                }
            }
        };
        reports.push(report);
    }
    Ok(reports)
}

/// Parses `"1,0"` or `"1/2,-3"` into a character vector.
pub fn parse_chi(text: &str) -> Result<ChiVector> {
    let values = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChiVector::new(values))
}

/// `sl2`, `abelian:N`, or the path of a Lie algebra file.
pub fn parse_lie(spec: &str) -> Result<LieStructure> {
    if spec == "sl2" {
        return Ok(LieStructure::sl2());
    }
    if let Some(n) = spec.strip_prefix("abelian:") {
        let n = n
            .parse()
            .map_err(|_| Error::Argument(format!("bad abelian rank {n:?}")))?;
        return LieStructure::abelian(n);
    }
    match parse_algebra(Path::new(spec))? {
        AlgebraFile::Lie(g) => Ok(g),
        _ => Err(Error::Argument(format!("{spec} is not a Lie algebra file"))),
    }
}

/// Parameters selecting a builtin family member.
#[derive(Args, Clone, Debug, Default)]
pub struct BuiltinParams {
    /// Number of variables D.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Character for S(D, χ), comma-separated rationals (zero when absent).
    #[arg(long)]
    pub chi: Option<String>,
    /// Extend to the current pseudoalgebra in this many variables.
    #[arg(long = "target-dim")]
    pub target_dim: Option<usize>,
    /// Lie algebra for Cur: `sl2`, `abelian:N` or a file.
    #[arg(long, default_value = "sl2")]
    pub lie: String,
}

/// Builds a named family member. `Cur` with `D = 0` is the Lie algebra itself.
pub fn build_builtin(name: BuiltinName, p: &BuiltinParams) -> Result<AlgebraFile> {
    let dim = p
        .dim
        .ok_or_else(|| Error::Argument("--dim is required for builtins".into()))?;
    if p.chi.is_some() && name != BuiltinName::S {
        return Err(Error::Argument("--chi only applies to S".into()));
    }
    let (table, chi) = match name {
        BuiltinName::Cur => {
            let g = parse_lie(&p.lie)?;
            if dim == 0 && p.target_dim.is_none() {
                return Ok(AlgebraFile::Lie(g));
            }
            (build_cur(&g, dim)?, None)
        }
        BuiltinName::W => (build_wd(dim)?, None),
        BuiltinName::H => (build_hd(dim)?, None),
        BuiltinName::S => {
            let chi = match &p.chi {
                Some(text) => parse_chi(text)?,
                None => ChiVector::zero(dim),
            };
            if chi.dim() != dim {
                return Err(Error::Argument(format!(
                    "--chi needs {dim} entries, got {}",
                    chi.dim()
                )));
            }
            (build_wd(dim)?, Some(chi))
        }
    };
    match p.target_dim {
        None => Ok(AlgebraFile::Pseudoalgebra(table, chi)),
        Some(_) if chi.is_some() => Err(Error::Argument("S cannot be current-extended".into())),
        Some(d) => Ok(AlgebraFile::Pseudoalgebra(current_extend(&table, d)?, None)),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "vlalg",
    version,
    about = "Exact checks for conformal and vertex Lie algebra data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check axioms on a definition file or a builtin (Cur, W, S, H).
    Check(CheckArgs),
    /// Write the definition file of a builtin.
    Builtin {
        name: BuiltinName,
        #[command(flatten)]
        params: BuiltinParams,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write generated data.
    #[command(subcommand)]
    Emit(EmitCommand),
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// A file path, or a builtin name when no such file exists.
    target: String,
    #[arg(long, value_delimiter = ',', required = true)]
    axioms: Vec<Axiom>,
    #[arg(long, default_value_t = 4)]
    window: u32,
    #[arg(long = "L")]
    l: Option<u32>,
    #[arg(long, default_value_t = 3)]
    degmax: u32,
    /// Borcherds kernel exponent of (z-w)².
    #[arg(long = "kernel-zw", default_value_t = 0, allow_hyphen_values = true)]
    kernel_zw: i64,
    /// Borcherds kernel exponent of z².
    #[arg(long = "kernel-z2", default_value_t = 0, allow_hyphen_values = true)]
    kernel_z2: i64,
    /// Borcherds kernel exponent of w².
    #[arg(long = "kernel-w2", default_value_t = 0, allow_hyphen_values = true)]
    kernel_w2: i64,
    /// Print the reports as JSON.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    params: BuiltinParams,
}

#[derive(Subcommand, Debug)]
enum EmitCommand {
    /// The echelon basis of harmonic polynomials of one degree.
    HarmonicBasis {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The ι-expansion of ((z-w)²)^{-k}.
    IotaExpansion {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        window: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The bracket table of a builtin.
    Bracket {
        name: BuiltinName,
        #[command(flatten)]
        params: BuiltinParams,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load_target(args: &CheckArgs) -> Result<AlgebraFile> {
    let path = Path::new(&args.target);
    if path.exists() {
        return parse_algebra(path);
    }
    match args.target.parse::<BuiltinName>() {
        Ok(name) => build_builtin(name, &args.params),
        Err(_) => Err(Error::Parse(format!(
            "no such file or builtin: {}",
            args.target
        ))),
    }
}

fn write_output(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Argument(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Argument(format!("cannot write output: {e}"))),
    }
}

fn run_check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let obj = load_target(args)?;
    let dim = match &obj {
        AlgebraFile::Lie(_) => 1,
        AlgebraFile::Pseudoalgebra(t, _) => t.dim(),
        AlgebraFile::Vla(s) => s.dim(),
    };
    let kernel = KernelMonomial {
        z2_pow: args.kernel_z2,
        w2_pow: args.kernel_w2,
        zw_pow: args.kernel_zw,
        ..KernelMonomial::one(dim.max(1))
    };
    let opts = CheckOptions {
        window: args.window,
        l: args.l,
        kernel,
        degmax: args.degmax,
    };
    let reports = run_checks(&obj, &args.axioms, &opts)?;
    let text = if args.json {
        serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
    } else {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    };
    write_output(&text, None, out)?;
    Ok(if reports.iter().all(CheckReport::passed) {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    })
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Check(args) => run_check(&args, out),
        Command::Builtin {
            name,
            params,
            output,
        }
        | Command::Emit(EmitCommand::Bracket {
            name,
            params,
            output,
        }) => {
            let obj = build_builtin(name, &params)?;
            write_output(&emit_algebra(&obj), output.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Emit(EmitCommand::HarmonicBasis {
            dim,
            degree,
            output,
        }) => {
            if dim == 0 {
                return Err(Error::Argument("harmonic bases need D >= 1".into()));
            }
            let text = format::emit_harmonic_basis(&harmonic_basis(dim, degree));
            write_output(&text, output.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Emit(EmitCommand::IotaExpansion {
            dim,
            k,
            side,
            window,
            output,
        }) => {
            let (side, label) = match side {
                SideArg::Zw => (Side::ZW, "zw"),
                SideArg::Wz => (Side::WZ, "wz"),
            };
            let series = iota_expand(dim, k, side, window)?;
            write_output(
                &format::emit_iota(&series, k, label, window),
                output.as_deref(),
                out,
            )?;
            Ok(EXIT_PASS)
        }
    }
}

/// Runs the command line and returns the exit code. Reports go to `out`, diagnostics to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_PASS;
        }
    };
    match run(cli, out) {
        Ok(code) => {
            if code == EXIT_VIOLATION {
                let _ = writeln!(err, "axiom violation");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
