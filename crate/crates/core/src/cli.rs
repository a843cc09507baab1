//! The `flagcone` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cone::{facets_from_rays, porta_ieq, porta_poi, rays_from_facets, verify_rank};
use crate::constructions::{glue, horizontal_double, limit_family_poset, random_graded_poset, GlueSpec};
use crate::error::Error;
use crate::expr::{construct, parse_intervals};
use crate::flag::{Basis, FlagVector, FlagVectorJson};
use crate::forms::{
    facet_theorem_candidates, graded_ijk_form, graded_inequality_lemma_form, ijk_form, inequality_lemma_form,
    LinearForm, LinearFormJson,
};
use crate::index::{ab_index, ce_index, ce_to_cd};
use crate::poset::{GradedPoset, IntervalCheck, PosetJson};
use crate::rational::format_q;
use crate::subset::{full, key, parse_key, MAX_N};
use crate::systems::{doubled_limit_l_vector, enumerate_even_systems, lambda_encode, limit_ell_vector, IntervalSystem};
use crate::transforms::{check_dehn_sommerville, convert};

#[derive(Parser, Debug)]
#[command(name = "flagcone", version, about = "Flag vectors, index polynomials and cones of Eulerian posets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, count and test graded posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Change the basis of a flag vector.
    Transform(TransformArgs),
    /// ab-, ce- or cd-index of a flag vector.
    Index(IndexArgs),
    /// Interval systems and their limit vectors.
    #[command(subcommand)]
    Systems(SystemsCmd),
    /// Build and evaluate linear inequalities.
    #[command(subcommand)]
    Ineq(IneqCmd),
    /// Cone computations in the even L-coordinates.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Glue two posets of equal rank along a set of ranks.
    Glue(GlueArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Porta,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
}

#[derive(Args, Debug)]
struct Source {
    /// Construction expression, e.g. "double(chain(4),[1,2],2)".
    #[arg(long, conflicts_with = "poset")]
    construct: Option<String>,
    /// Poset JSON file.
    #[arg(long)]
    poset: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Emit a poset as JSON, from an expression or at random.
    Build {
        #[command(flatten)]
        source: Source,
        /// Rank of a random graded poset (used when no source is given).
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Flag vector of a poset.
    Flag {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "F")]
        basis: String,
        #[command(flatten)]
        output: Output,
    },
    /// Eulerian, half-Eulerian and Dehn-Sommerville tests.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// Flag vector JSON file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    to: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct IndexArgs {
    #[command(flatten)]
    source: Source,
    /// Flag vector JSON file, as an alternative to a poset.
    #[arg(long, conflicts_with_all = ["construct", "poset"])]
    input: Option<PathBuf>,
    #[arg(long, value_parser = ["ab", "ce", "cd"], default_value = "cd")]
    alphabet: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum SystemsCmd {
    /// All even interval systems on [1,n] with their λ-sequences.
    Enum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Limit vector of a system, or the flag f-vector of P(n,I,N) with --N.
    Limit {
        #[arg(long)]
        n: usize,
        /// Interval list such as "{[1,2],[3,4]}".
        #[arg(long)]
        system: String,
        #[arg(long = "N")]
        copies: Option<usize>,
        /// Use the horizontal double of the poset.
        #[arg(long)]
        doubled: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormKind {
    Lemma,
    GradedLemma,
    Ijk,
    GradedIjk,
    Facets,
}

#[derive(Subcommand, Debug)]
enum IneqCmd {
    /// Construct a form (or, with --kind facets, every facet candidate).
    Make {
        #[arg(long, value_enum)]
        kind: FormKind,
        #[arg(long)]
        n: usize,
        /// The set V as comma-separated ranks (default [1,n]).
        #[arg(long)]
        v: Option<String>,
        /// The set T as comma-separated ranks (default empty).
        #[arg(long)]
        t: Option<String>,
        /// Indices "i,j,k".
        #[arg(long)]
        ijk: Option<String>,
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value = "F")]
        basis: String,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a form on a poset.
    Check {
        /// Linear form JSON file.
        #[arg(long)]
        form: PathBuf,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Compute the Eulerian cone at a rank and classify its facets.
    Verify {
        #[arg(long)]
        rank: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Convert {"rays": [...]} to {"facets": [...]} or back.
    Dual {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct GlueArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    /// Comma-separated ranks to identify; bottom and top are always glued.
    #[arg(long, default_value = "")]
    ranks: String,
    #[command(flatten)]
    output: Output,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "error": "usage", "message": m }),
            CliError::Domain(e) => json!({ "error": e.kind(), "message": e.to_string() }),
            CliError::Io(m) => json!({ "error": "io", "message": m }),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a command produces: one or more named text artifacts. A `None`
/// suffix is the primary output; others are written next to `--out`.
struct Artifacts(Vec<(Option<&'static str>, String)>);

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Domain(Error::Parse(format!("{}: {e}", path.display()))))
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    // temporary files are private; give the result ordinary permissions
    let perms = match std::fs::metadata(path) {
        Ok(m) => m.permissions(),
        Err(_) => default_permissions(tmp.as_file())?,
    };
    tmp.as_file().set_permissions(perms)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(unix)]
fn default_permissions(_: &std::fs::File) -> std::io::Result<std::fs::Permissions> {
    use std::os::unix::fs::PermissionsExt;
    Ok(std::fs::Permissions::from_mode(0o644))
}

#[cfg(not(unix))]
fn default_permissions(f: &std::fs::File) -> std::io::Result<std::fs::Permissions> {
    Ok(f.metadata()?.permissions())
}

fn load_poset(source: &Source) -> CliResult<GradedPoset> {
    match (&source.construct, &source.poset) {
        (Some(expr), _) => Ok(construct(expr)?),
        (None, Some(path)) => Ok(GradedPoset::from_json(&read_json::<PosetJson>(path)?)?),
        (None, None) => Err(CliError::Usage("one of --construct or --poset is required".into())),
    }
}

fn parse_basis(s: &str) -> CliResult<Basis> {
    s.parse().map_err(|_| CliError::Usage(format!("unknown basis {s:?}; expected F, H, ELL or L")))
}

fn parse_ranks(s: &str, n: usize) -> CliResult<u32> {
    Ok(parse_key(s, n)?)
}

fn check_json_or_csv(format: Format) -> CliResult<()> {
    if format == Format::Porta {
        return Err(CliError::Usage("--format porta is only available for cone commands".into()));
    }
    Ok(())
}

fn check_json(format: Format) -> CliResult<()> {
    if format != Format::Json {
        return Err(CliError::Usage("this command only writes JSON".into()));
    }
    Ok(())
}

fn flag_artifact(v: &FlagVector, format: Format) -> CliResult<Artifacts> {
    check_json_or_csv(format)?;
    let text = match format {
        Format::Csv => {
            let mut s = format!("set,{}\n", v.basis());
            for m in 0..=full(v.n()) {
                s.push_str(&format!("\"{{{}}}\",{}\n", key(m), format_q(v.get(m))));
            }
            s
        }
        _ => json_text(&to_value(&v.to_json())),
    };
    Ok(Artifacts(vec![(None, text)]))
}

fn interval_check_json(c: &IntervalCheck) -> Value {
    json!({ "holds": c.holds, "witness": c.witness.map(|(x, y)| vec![x, y]) })
}

fn poset_json(p: &GradedPoset, format: Format) -> CliResult<Artifacts> {
    check_json(format)?;
    Ok(Artifacts(vec![(None, json_text(&to_value(&p.to_json())))]))
}

fn run_poset(cmd: PosetCmd) -> CliResult<(Artifacts, Output)> {
    match cmd {
        PosetCmd::Build { source, rank, width, seed, output } => {
            let p = if source.construct.is_some() || source.poset.is_some() {
                load_poset(&source)?
            } else {
                let rank = rank.ok_or_else(|| CliError::Usage("give --construct, --poset or --rank".into()))?;
                if rank == 0 || rank > MAX_N + 1 || width == 0 {
                    return Err(CliError::Usage("random posets need 1 <= rank <= 21 and width >= 1".into()));
                }
                random_graded_poset(&mut ChaCha8Rng::seed_from_u64(seed), rank, width)
            };
            Ok((poset_json(&p, output.format)?, output))
        }
        PosetCmd::Flag { source, basis, output } => {
            let p = load_poset(&source)?;
            let v = convert(&p.flag_f_vector()?, parse_basis(&basis)?)?;
            Ok((flag_artifact(&v, output.format)?, output))
        }
        PosetCmd::Check { source, output } => {
            check_json(output.format)?;
            let p = load_poset(&source)?;
            let l = convert(&p.flag_f_vector()?, Basis::L)?;
            let ds = check_dehn_sommerville(&l)?;
            let v = json!({
                "rank": p.rank(),
                "elements": p.len(),
                "eulerian": interval_check_json(&p.is_eulerian()),
                "half_eulerian": interval_check_json(&p.is_half_eulerian()),
                "dehn_sommerville": { "holds": ds.holds, "witness": ds.witness.map(key) },
            });
            Ok((Artifacts(vec![(None, json_text(&v))]), output))
        }
    }
}

fn run_systems(cmd: SystemsCmd) -> CliResult<(Artifacts, Output)> {
    match cmd {
        SystemsCmd::Enum { n, output } => {
            check_json_or_csv(output.format)?;
            if n > 16 {
                return Err(CliError::Domain(Error::RankOverflow(n)));
            }
            let systems = enumerate_even_systems(n);
            let text = if output.format == Format::Csv {
                let mut s = String::from("lambda,intervals\n");
                for sys in &systems {
                    s.push_str(&format!("{},\"{}\"\n", lambda_encode(sys)?, sys));
                }
                s
            } else {
                let items: Vec<Value> = systems
                    .iter()
                    .map(|sys| {
                        let lambda = lambda_encode(sys).expect("enumerated systems are even");
                        json!({ "lambda": lambda.to_string(), "n": sys.n(), "intervals": to_value(&sys.to_json().intervals) })
                    })
                    .collect();
                json_text(&Value::Array(items))
            };
            Ok((Artifacts(vec![(None, text)]), output))
        }
        SystemsCmd::Limit { n, system, copies, doubled, output } => {
            let system = IntervalSystem::new(n, parse_intervals(&system)?)?;
            let v = match copies {
                None if doubled => doubled_limit_l_vector(&system),
                None => limit_ell_vector(&system),
                Some(k) => {
                    let p = limit_family_poset(&system, k)?;
                    let p = if doubled { horizontal_double(&p) } else { p };
                    p.flag_f_vector()?
                }
            };
            Ok((flag_artifact(&v, output.format)?, output))
        }
    }
}

fn form_artifact(forms: &[LinearForm], single: bool, format: Format) -> CliResult<Artifacts> {
    check_json_or_csv(format)?;
    let text = if format == Format::Csv {
        let mut s = String::from("form,basis,set,coefficient\n");
        for (i, f) in forms.iter().enumerate() {
            for (set, c) in f.coeffs() {
                s.push_str(&format!("{i},{},\"{{{}}}\",{}\n", f.basis(), key(*set), format_q(c)));
            }
        }
        s
    } else if single {
        json_text(&to_value(&forms[0].to_json()))
    } else {
        json_text(&Value::Array(forms.iter().map(|f| to_value(&f.to_json())).collect()))
    };
    Ok(Artifacts(vec![(None, text)]))
}

fn run_ineq(cmd: IneqCmd) -> CliResult<(Artifacts, Output)> {
    match cmd {
        IneqCmd::Make { kind, n, v, t, ijk, strict, basis, output } => {
            if n == 0 || n > MAX_N {
                return Err(CliError::Domain(Error::RankOverflow(n)));
            }
            let basis = parse_basis(&basis)?;
            let v = v.as_deref().map_or(Ok(full(n)), |s| parse_ranks(s, n))?;
            let t = t.as_deref().map_or(Ok(0), |s| parse_ranks(s, n))?;
            let triple = || -> CliResult<(usize, usize, usize)> {
                let s = ijk.as_deref().ok_or_else(|| CliError::Usage("--ijk i,j,k is required".into()))?;
                let parts: Vec<usize> = s
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| CliError::Usage(format!("bad --ijk {s:?}"))))
                    .collect::<CliResult<_>>()?;
                match parts[..] {
                    [i, j, k] => Ok((i, j, k)),
                    _ => Err(CliError::Usage(format!("--ijk needs three indices, got {s:?}"))),
                }
            };
            let forms = match kind {
                FormKind::Lemma => vec![inequality_lemma_form(n, v, t)?],
                FormKind::GradedLemma => vec![graded_inequality_lemma_form(n, v, t)?],
                FormKind::Ijk => {
                    let (i, j, k) = triple()?;
                    vec![ijk_form(n, i, j, k)?]
                }
                FormKind::GradedIjk => {
                    let (i, j, k) = triple()?;
                    vec![graded_ijk_form(n, i, j, k)?]
                }
                FormKind::Facets => facet_theorem_candidates(n, strict),
            };
            let forms: Vec<LinearForm> = forms.iter().map(|f| f.to_basis(basis)).collect::<Result<_, _>>()?;
            Ok((form_artifact(&forms, kind != FormKind::Facets, output.format)?, output))
        }
        IneqCmd::Check { form, source, output } => {
            check_json(output.format)?;
            let form = LinearForm::from_json(&read_json::<LinearFormJson>(&form)?)?;
            let p = load_poset(&source)?;
            let value = form.evaluate_poset(&p)?;
            let v = json!({
                "provenance": form.provenance().to_string(),
                "value": format_q(&value),
                "holds": !value.is_negative(),
            });
            Ok((Artifacts(vec![(None, json_text(&v))]), output))
        }
    }
}

fn int_rows(v: &Value, field: &str) -> CliResult<Vec<Vec<BigInt>>> {
    let bad = || CliError::Domain(Error::Parse(format!("\"{field}\" must be an array of integer arrays")));
    let rows = v.as_array().ok_or_else(bad)?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| match x {
                    Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
                    Value::String(s) => s.parse().map_err(|_| bad()),
                    _ => Err(bad()),
                })
                .collect()
        })
        .collect()
}

fn int_json(rows: &[Vec<BigInt>]) -> Value {
    use num_traits::ToPrimitive;
    Value::Array(
        rows.iter()
            .map(|r| {
                Value::Array(
                    r.iter().map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)).collect(),
                )
            })
            .collect(),
    )
}

fn run_cone(cmd: ConeCmd) -> CliResult<(Artifacts, Output)> {
    match cmd {
        ConeCmd::Verify { rank, output } => {
            if !(2..=8).contains(&rank) {
                return Err(CliError::Usage(format!("--rank must be between 2 and 8, got {rank}")));
            }
            let report = verify_rank(rank)?;
            let artifacts = match output.format {
                Format::Json => vec![(None, json_text(&report.to_json()))],
                Format::Porta => vec![
                    (Some("ieq"), porta_ieq(report.dim(), &report.cone.facets)),
                    (Some("poi"), porta_poi(report.dim(), &report.cone.rays)),
                ],
                Format::Csv => return Err(CliError::Usage("cone verify writes json or porta".into())),
            };
            Ok((Artifacts(artifacts), output))
        }
        ConeCmd::Dual { input, output } => {
            let v: Value = read_json(&input)?;
            let (rays, facets) = if let Some(r) = v.get("rays") {
                let rays = int_rows(r, "rays")?;
                let facets = facets_from_rays(&rays)?;
                (rays_from_facets(&facets)?, facets)
            } else if let Some(f) = v.get("facets") {
                let facets = int_rows(f, "facets")?;
                let rays = rays_from_facets(&facets)?;
                (rays.clone(), facets_from_rays(&rays)?)
            } else {
                return Err(CliError::Domain(Error::Parse("input needs a \"rays\" or \"facets\" field".into())));
            };
            let dim = rays.first().map_or(0, Vec::len);
            let artifacts = match output.format {
                Format::Json => vec![(None, json_text(&json!({ "dim": dim, "rays": int_json(&rays), "facets": int_json(&facets) })))],
                Format::Porta => vec![(Some("ieq"), porta_ieq(dim, &facets)), (Some("poi"), porta_poi(dim, &rays))],
                Format::Csv => return Err(CliError::Usage("cone dual writes json or porta".into())),
            };
            Ok((Artifacts(artifacts), output))
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<(Artifacts, Output)> {
    match cli.command {
        Command::Poset(cmd) => run_poset(cmd),
        Command::Transform(args) => {
            let v = FlagVector::from_json(&read_json::<FlagVectorJson>(&args.input)?)?;
            let out = convert(&v, parse_basis(&args.to)?)?;
            Ok((flag_artifact(&out, args.output.format)?, args.output))
        }
        Command::Index(args) => {
            check_json(args.output.format)?;
            let f = match &args.input {
                Some(path) => FlagVector::from_json(&read_json::<FlagVectorJson>(path)?)?,
                None => load_poset(&args.source)?.flag_f_vector()?,
            };
            let poly = match args.alphabet.as_str() {
                "ab" => ab_index(&convert(&f, Basis::H)?)?,
                "ce" => ce_index(&convert(&f, Basis::L)?)?,
                _ => ce_to_cd(&ce_index(&convert(&f, Basis::L)?)?)?,
            };
            Ok((Artifacts(vec![(None, json_text(&to_value(&poly.to_json())))]), args.output))
        }
        Command::Systems(cmd) => run_systems(cmd),
        Command::Ineq(cmd) => run_ineq(cmd),
        Command::Cone(cmd) => run_cone(cmd),
        Command::Glue(args) => {
            let left = construct(&args.left)?;
            let right = construct(&args.right)?;
            let ranks = if args.ranks.trim().is_empty() {
                Vec::new()
            } else {
                args.ranks
                    .split(',')
                    .map(|r| r.trim().parse().map_err(|_| CliError::Usage(format!("bad rank {r:?} in --ranks"))))
                    .collect::<CliResult<Vec<usize>>>()?
            };
            let p = glue(&GlueSpec { left, right, ranks, bijection: None })?;
            Ok((poset_json(&p, args.output.format)?, args.output))
        }
    }
}

fn emit(artifacts: Artifacts, output: &Output, stdout: &mut dyn Write) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    for (suffix, text) in artifacts.0 {
        match (&output.out, suffix) {
            (Some(path), None) => write_atomic(path, &text).map_err(io)?,
            (Some(path), Some(ext)) => {
                let mut p = path.clone().into_os_string();
                p.push(format!(".{ext}"));
                write_atomic(Path::new(&p), &text).map_err(io)?;
            }
            (None, _) => stdout.write_all(text.as_bytes()).map_err(io)?,
        }
    }
    Ok(())
}

/// Runs the command line with explicit streams; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = dispatch(cli).and_then(|(artifacts, output)| emit(artifacts, &output, stdout));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
