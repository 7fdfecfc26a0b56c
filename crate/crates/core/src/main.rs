//! Command-line driver: construction, verification, cohomology,
//! star-lifting, extension building, and the survey table.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or file error,
//! 3 resource guard.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modlie::algebra::{AlgebraDescription, ElementVector};
use modlie::cohomology::{delta_map, h2_basis, is_cocycle, DEFAULT_COHOMOLOGY_LIMIT};
use modlie::constructors::{construct, Family, DEFAULT_CONSTRUCT_LIMIT};
use modlie::error::{Error, Result};
use modlie::extensions::{build_extension, frobenius_extension, verify_extension_axioms};
use modlie::io::{parse_algebra, parse_cocycle, write_algebra, write_cocycle, CocycleDocument};
use modlie::report::{survey, SurveyOptions};
use modlie::restricted::{h2star_basis, star_extend, RestrictedTwoCochain};

#[derive(Parser)]
#[command(
    name = "modlie",
    about = "Restricted Lie algebras over GF(p): construction, second cohomology, and central extensions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a simple restricted Lie algebra and write its
    /// structure-constant file.
    Construct(ConstructArgs),
    /// Run verification gates on an algebra file.
    Verify(VerifyArgs),
    /// Compute dim H^2 and canonical cocycle representatives.
    H2(H2Args),
    /// Compute dim H^2_* and a verified basis of restricted cocycles.
    H2star(H2starArgs),
    /// Build a one-dimensional restricted central extension.
    Extend(ExtendArgs),
    /// Evaluate the Delta obstruction map of a two-cochain.
    DeltaMap(DeltaMapArgs),
    /// Survey all families at a prime, mirroring the H^2 = 0 and
    /// H^2 != 0 tables.
    Report(ReportArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// witt | special | hamiltonian | contact | sl | psl
    #[arg(long)]
    family: String,
    /// Family parameter: n for W/S/H/K, matrix size for sl/psl.
    #[arg(long)]
    n: usize,
    /// Field characteristic (prime, >= 5).
    #[arg(long)]
    p: u64,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Construction resource guard override.
    #[arg(long, default_value_t = DEFAULT_CONSTRUCT_LIMIT)]
    dim_limit: usize,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Comma-separated subset of jacobi,restricted,simple.
    #[arg(long, default_value = "jacobi,restricted,simple")]
    checks: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
}

#[derive(Args)]
struct H2Args {
    file: PathBuf,
    /// Write canonical representatives: FILE for one class, FILE.k for
    /// several.
    #[arg(long)]
    cocycles_out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_COHOMOLOGY_LIMIT)]
    dim_limit: usize,
}

#[derive(Args)]
struct H2starArgs {
    file: PathBuf,
    /// Directory for the basis cocycle files (frobenius_*.cocycle,
    /// lifted_*.cocycle).
    #[arg(long)]
    basis_out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_COHOMOLOGY_LIMIT)]
    dim_limit: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExtendArgs {
    file: PathBuf,
    /// Extend by the Frobenius cocycle (0, omega_i); 0-based basis index.
    #[arg(long, conflicts_with = "cocycle")]
    frobenius: Option<usize>,
    /// Extend by a cocycle file (kind phi or pair).
    #[arg(long)]
    cocycle: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DeltaMapArgs {
    file: PathBuf,
    #[arg(long)]
    cocycle: PathBuf,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    max_dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ResourceGuard(_) => ExitCode::from(3),
                Error::ExtensionAxiom(_) | Error::NotCocycle => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_algebra(path: &Path) -> Result<AlgebraDescription> {
    let text = std::fs::read_to_string(path)?;
    parse_algebra(&text)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => {
            let family = Family::parse(&args.family).ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown family {:?}", args.family),
            })?;
            let alg = construct(family, args.n, args.p, args.dim_limit)?;
            let text = write_algebra(&alg, &[]);
            match args.out {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    eprintln!(
                        "wrote {} (dim {}) to {}",
                        alg.name().unwrap_or("algebra"),
                        alg.dim(),
                        path.display()
                    );
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let alg = load_algebra(&args.file)?;
            let mut all_pass = true;
            for check in args.checks.split(',') {
                match check.trim() {
                    "jacobi" => match alg.jacobi_check() {
                        Ok(()) => println!("jacobi: pass"),
                        Err(v) => {
                            println!("jacobi: FAIL ({v})");
                            all_pass = false;
                        }
                    },
                    "restricted" => {
                        let r = alg.restrictedness_check(args.samples, args.seed);
                        println!("{r}");
                        all_pass &= r.passed();
                    }
                    "simple" => {
                        let r = alg.simplicity_check(5, args.seed);
                        println!("{r}");
                        all_pass &= r.is_simple();
                    }
                    other => {
                        return Err(Error::Parse {
                            line: 0,
                            message: format!("unknown check {other:?}"),
                        })
                    }
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::H2(args) => {
            let alg = load_algebra(&args.file)?;
            let report = h2_basis(&alg, args.dim_limit)?;
            println!(
                "algebra {} (p = {}, dim {})",
                alg.name().unwrap_or("?"),
                alg.p(),
                alg.dim()
            );
            println!("dim H1 = {}", report.h1_dim);
            println!("dim H2 = {}", report.h2_dim);
            if let Some(base) = args.cocycles_out {
                let paths: Vec<PathBuf> = if report.h2_reps.len() <= 1 {
                    vec![base.clone()]
                } else {
                    (0..report.h2_reps.len())
                        .map(|k| {
                            let mut s = base.as_os_str().to_os_string();
                            s.push(format!(".{k}"));
                            PathBuf::from(s)
                        })
                        .collect()
                };
                for (rep, path) in report.h2_reps.iter().zip(&paths) {
                    let doc = CocycleDocument::Phi(rep.clone());
                    let comment = format!(
                        "canonical H2 representative of {}",
                        alg.name().unwrap_or("algebra")
                    );
                    std::fs::write(path, write_cocycle(alg.field(), &doc, &[comment]))?;
                }
                if !report.h2_reps.is_empty() {
                    eprintln!("wrote {} cocycle file(s)", report.h2_reps.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::H2star(args) => {
            let alg = load_algebra(&args.file)?;
            let report = h2star_basis(&alg, args.dim_limit, args.seed)?;
            println!(
                "algebra {} (p = {}, dim {})",
                alg.name().unwrap_or("?"),
                alg.p(),
                alg.dim()
            );
            println!("dim H2 = {}", report.h2_dim);
            println!("dim H2* = {}", report.h2star_dim);
            if let Some(dir) = args.basis_out {
                std::fs::create_dir_all(&dir)?;
                for (k, rc) in report.basis.iter().enumerate() {
                    let (path, comment) = if k < report.frobenius_count {
                        (
                            dir.join(format!("frobenius_{k}.cocycle")),
                            format!("restricted cocycle (0, omega_{k})"),
                        )
                    } else {
                        (
                            dir.join(format!("lifted_{}.cocycle", k - report.frobenius_count)),
                            "lifted H2 representative with omega zero on basis vectors".to_string(),
                        )
                    };
                    let doc = CocycleDocument::Pair(rc.phi.clone(), rc.omega.base_values.clone());
                    std::fs::write(path, write_cocycle(alg.field(), &doc, &[comment]))?;
                }
                eprintln!(
                    "wrote {} basis cocycles to {}",
                    report.basis.len(),
                    dir.display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend(args) => {
            let alg = load_algebra(&args.file)?;
            let ext = match (args.frobenius, &args.cocycle) {
                (Some(i), None) => frobenius_extension(&alg, i)?,
                (None, Some(path)) => {
                    let (field, doc) = parse_cocycle(&std::fs::read_to_string(path)?)?;
                    if field != alg.field() {
                        return Err(Error::Parse {
                            line: 0,
                            message: "cocycle and algebra fields differ".into(),
                        });
                    }
                    let phi = doc.phi().clone();
                    let omega = star_extend(&alg, &phi, doc.omega_base(alg.dim()))?;
                    build_extension(&alg, &RestrictedTwoCochain { phi, omega })?
                }
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        message: "exactly one of --frobenius or --cocycle is required".into(),
                    })
                }
            };
            let provenance = vec![
                format!(
                    "one-dimensional restricted central extension of {}",
                    ext.provenance.source.name().unwrap_or("the source algebra")
                ),
                format!("provenance: {:?}", ext.provenance.kind),
                "central element: last basis vector".to_string(),
            ];
            std::fs::write(&args.out, write_algebra(&ext.algebra, &provenance))?;
            let report = verify_extension_axioms(&ext, 20, 0);
            println!("{report}");
            eprintln!(
                "wrote extension (dim {}) to {}",
                ext.algebra.dim(),
                args.out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::DeltaMap(args) => {
            let alg = load_algebra(&args.file)?;
            let (field, doc) = parse_cocycle(&std::fs::read_to_string(&args.cocycle)?)?;
            if field != alg.field() {
                return Err(Error::Parse {
                    line: 0,
                    message: "cocycle and algebra fields differ".into(),
                });
            }
            let phi = doc.phi();
            let cocycle = is_cocycle(&alg, phi)?;
            let d = alg.dim();
            let mut nonzero = 0usize;
            for g in 0..d {
                for h in 0..d {
                    let gv = ElementVector::basis(d, g);
                    let hv = ElementVector::basis(d, h);
                    if delta_map(&alg, phi, &gv, &hv)? != 0 {
                        nonzero += 1;
                    }
                }
            }
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(args.seed);
            let mut sample_nonzero = 0usize;
            for _ in 0..args.samples {
                let g = ElementVector::random(&mut rng, alg.field(), d);
                let h = ElementVector::random(&mut rng, alg.field(), d);
                if delta_map(&alg, phi, &g, &h)? != 0 {
                    sample_nonzero += 1;
                }
            }
            println!("phi is {} cocycle", if cocycle { "a" } else { "NOT a" });
            println!(
                "Delta map nonzero on {nonzero} of {} basis pairs and {sample_nonzero} of {} random pairs (seed {})",
                d * d,
                args.samples,
                args.seed
            );
            if cocycle && (nonzero > 0 || sample_nonzero > 0) {
                println!("Delta vanishing FAILED for a cocycle");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report(args) => {
            let opts = SurveyOptions {
                p: args.p,
                max_dim: args.max_dim,
                seed: args.seed,
            };
            let text = survey(&opts)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
