use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use opcat_core::fibration::{check_split_fibration, extract_operad, roundtrip_fibration, roundtrip_operad, SplitFibration};
use opcat_core::freemon::{adjunction_check, presentation_equal, Expr, MonPresentation, WordOutcome};
use opcat_core::grothendieck::grothendieck;
use opcat_core::io::{self, example, example_names, load, read_envelope, save, Artifact, Kind};
use opcat_core::nerve::{dec_nerve_iso, duskin_nerve};
use opcat_core::operad::CategoricalOperad;
use opcat_core::operadic::{para, to_simplicial, UnaryOperadic2Cat};
use opcat_core::simplicial::{decalage_top, TruncatedSimplicialSet};
use opcat_core::twocat::{Finite2Category, StrictMonCat};
use opcat_core::Error;

/// Finite operadic categories with their operads.
///
/// Exits with 1 on violations or a failed certificate, and with 2 when input
/// is unreadable or malformed.
#[derive(Parser)]
#[command(name = "opcat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the produced artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the validator for the file's kind and print the report.
    Validate {
        path: PathBuf,
        /// Fail with exit code 2 unless the file has this kind.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<Kind>,
    },
    /// Duskin nerve of a 2-category, or the assembled set of an operadic 2-category.
    Nerve { path: PathBuf },
    /// Upper décalage; for a 2-category, certified against the nerve of its lax slice sum.
    Dec { path: PathBuf },
    /// The operadic 2-category para(M) of a monoidal category.
    Para { path: PathBuf },
    /// Grothendieck construction of an operad over a base, as a split fibration.
    Groth { base: PathBuf, operad: PathBuf },
    /// The operad of a split fibration.
    Extract { fibration: PathBuf },
    /// Certify both round trips between operads and split fibrations.
    Roundtrip { base: PathBuf, operad: PathBuf },
    /// Certify sSet(X, ΨM) ≅ MonCat(Φtr3 X, M) by enumeration.
    Adjoint { sset: PathBuf, moncat: PathBuf },
    /// Emit a named fixture, or list the names.
    Examples { name: Option<String> },
    /// Write the JSON schema of every artifact kind into a directory.
    Schemas { dir: PathBuf },
    /// Decide equality of two terms in a presentation (terms as JSON or files).
    Wordeq {
        presentation: PathBuf,
        left: String,
        right: String,
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Core(Error::Json(_) | Error::Malformed(_) | Error::UnknownFixture { .. }) => 2,
            CliError::Core(_) | CliError::Failed(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_kind(s: &str) -> Result<Kind, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_file<T: Artifact>(path: &Path) -> CliResult<T> {
    Ok(load(&read(path)?)?)
}

fn term(p: &MonPresentation, arg: &str) -> CliResult<Expr> {
    let text = if Path::new(arg).is_file() { read(Path::new(arg))? } else { arg.to_string() };
    let e: Expr = serde_json::from_str(&text).map_err(Error::from)?;
    p.type_of(&e)?;
    Ok(e)
}

/// Output of one command: an artifact and summary lines.
struct Output {
    artifact: Option<String>,
    lines: Vec<String>,
}

impl Output {
    fn summary(lines: Vec<String>) -> Self {
        Output { artifact: None, lines }
    }

    fn artifact<T: Artifact>(x: &T, lines: Vec<String>) -> CliResult<Self> {
        Ok(Output {
            artifact: Some(save(x)?),
            lines,
        })
    }
}

fn sizes(x: &TruncatedSimplicialSet) -> String {
    x.sizes().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn run(command: Command) -> CliResult<Output> {
    match command {
        Command::Validate { path, kind } => {
            let text = read(&path)?;
            let env = read_envelope(&text)?;
            if let Some(k) = kind {
                if k != env.kind {
                    return Err(Error::Malformed(format!("expected kind {}, found {}", k.name(), env.kind.name())).into());
                }
            }
            let (kind, report) = io::validate_text(&text)?;
            if report.is_valid() {
                Ok(Output::summary(vec![format!("{}: valid", kind.name())]))
            } else {
                Err(CliError::Failed(format!("{}: {} violation(s)\n{report}", kind.name(), report.len())))
            }
        }
        Command::Nerve { path } => {
            let text = read(&path)?;
            let x = match read_envelope(&text)?.kind {
                Kind::Operadic => to_simplicial(&load::<UnaryOperadic2Cat>(&text)?)?,
                _ => duskin_nerve(&load::<Finite2Category>(&text)?)?,
            };
            let line = format!("levels {}", sizes(&x));
            Output::artifact(&x, vec![line])
        }
        Command::Dec { path } => {
            let text = read(&path)?;
            if read_envelope(&text)?.kind == Kind::SimplicialSet {
                let d = decalage_top(&load::<TruncatedSimplicialSet>(&text)?)?;
                let line = format!("levels {}", sizes(&d));
                return Output::artifact(&d, vec![line]);
            }
            let c = load::<Finite2Category>(&text)?;
            let iso = dec_nerve_iso(&c)?;
            let dec = iso.iso.map().source.clone();
            let line = format!("dec(nerve) ≅ nerve(lax slice sum): levels {}, certified", sizes(&dec));
            Output::artifact(&dec, vec![line])
        }
        Command::Para { path } => {
            let o = para(&load_file::<StrictMonCat>(&path)?)?;
            let line = format!("cells {:?}", o.sizes());
            Output::artifact(&o, vec![line])
        }
        Command::Groth { base, operad } => {
            let (base, p) = base_and_operad(&base, &operad)?;
            let g = grothendieck(&base, &p)?;
            let f = SplitFibration::from_grothendieck(&g);
            check_split_fibration(&f).into_result("split fibration")?;
            let lines = vec![
                format!("total cells {:?}", g.total.sizes()),
                format!("split fibration with {} canonical lifts: valid", f.lift.len()),
            ];
            Output::artifact(&f, lines)
        }
        Command::Extract { fibration } => {
            let f = load_file::<SplitFibration>(&fibration)?;
            let p = extract_operad(&f)?;
            let line = format!("operad with fiber sizes {:?}", p.fibers.iter().map(|c| c.objects).collect::<Vec<_>>());
            Output::artifact(&p, vec![line])
        }
        Command::Roundtrip { base, operad } => {
            let (base, p) = base_and_operad(&base, &operad)?;
            let a = roundtrip_operad(&base, &p)?;
            let f = SplitFibration::from_grothendieck(&grothendieck(&base, &p)?);
            let b = roundtrip_fibration(&f)?;
            Ok(Output::summary(vec![
                format!("{}: certified ({} cells)", a.what, a.cells),
                format!("{}: certified ({} cells)", b.what, b.cells),
            ]))
        }
        Command::Adjoint { sset, moncat } => {
            let x = load_file::<TruncatedSimplicialSet>(&sset)?;
            let m = load_file::<StrictMonCat>(&moncat)?;
            let c = adjunction_check(&x, &m)?;
            Ok(Output::summary(vec![format!("counts {} = {}, bijection certified", c.maps, c.functors)]))
        }
        Command::Schemas { dir } => {
            let mut lines = Vec::new();
            for (name, text) in io::all_schemas()? {
                let path = dir.join(format!("{name}.schema.json"));
                fs::write(&path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
                lines.push(path.display().to_string());
            }
            Ok(Output::summary(lines))
        }
        Command::Examples { name: None } => Ok(Output::summary(example_names().iter().map(|n| n.to_string()).collect())),
        Command::Examples { name: Some(n) } => Ok(Output {
            artifact: Some(example(&n)?),
            lines: vec![],
        }),
        Command::Wordeq {
            presentation,
            left,
            right,
            bound,
        } => {
            let p = load_file::<MonPresentation>(&presentation)?;
            let (a, b) = (term(&p, &left)?, term(&p, &right)?);
            let line = match presentation_equal(&p, &a, &b, bound)? {
                WordOutcome::Equal => "equal".to_string(),
                WordOutcome::Distinct => "distinct".to_string(),
                WordOutcome::Undecided { bound } => format!("undecided at bound {bound}"),
            };
            Ok(Output::summary(vec![line]))
        }
    }
}

fn base_and_operad(base: &Path, operad: &Path) -> CliResult<(UnaryOperadic2Cat, CategoricalOperad)> {
    let base = load_file::<UnaryOperadic2Cat>(base)?;
    let p = load_file::<CategoricalOperad>(operad)?;
    if p.base != base {
        return Err(Error::Precondition("the operad lives over a different base".into()).into());
    }
    Ok((base, p))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match (out.artifact, &cli.out) {
                (Some(a), Some(path)) => {
                    if let Err(source) = fs::write(path, a) {
                        eprintln!("{}", CliError::Io { path: path.clone(), source });
                        return ExitCode::from(2);
                    }
                    out.lines.iter().for_each(|l| println!("{l}"));
                }
                (Some(a), None) => {
                    print!("{a}");
                    out.lines.iter().for_each(|l| eprintln!("{l}"));
                }
                (None, _) => out.lines.iter().for_each(|l| println!("{l}")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Failed(msg) => println!("{msg}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.code())
        }
    }
}
