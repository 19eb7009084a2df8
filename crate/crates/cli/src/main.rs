mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coxred_core::coxdiagram::{delta3, parse_diagram, CoxeterDiagram};
use coxred_core::glue::{double, index_relation, recognize};
use coxred_core::groupengine::{GroupError, DEFAULT_CAP, DEFAULT_RELATOR_BUDGET};
use coxred_core::pipeline::{direct_homology, invariants, two_step_homology, Limits, PipelineError, Reduction};
use coxred_core::tensorid::davis_frame;
use coxred_core::vinberg::{cycle_field, VinbergLattice};

use report::{ErrorReport, Report};

#[derive(Parser)]
#[command(name = "coxred", version, about = "Finite representations of hyperbolic Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// `[m1,m2,...]` or `nodes=N; i-j:label; ...`
    #[arg(long)]
    diagram: Option<String>,
    /// Rational prime; the ideal above it is chosen deterministically.
    #[arg(long)]
    prime: Option<u32>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Largest group enumerated.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix and signature.
    Gram(Common),
    /// Vinberg lattice basis and Gram matrix.
    Lattice(Common),
    /// Reduction modulo a prime ideal and the image order.
    Reduce(Common),
    /// Torsion-freeness of the kernel.
    Torsion(Common),
    /// Euler characteristics and volume.
    Invariants(Common),
    /// First homology of the kernel.
    Homology(Common),
    /// Double the polyhedron across a face.
    Glue {
        #[command(flatten)]
        common: Common,
        /// One-based face index.
        #[arg(long)]
        face: usize,
    },
    /// The full pipeline on `[5,3,3,5]` modulo `sqrt 5`.
    Davis {
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

enum Failure {
    Usage(String),
    Pipeline(PipelineError),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        Failure::Pipeline(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Pipeline(e) if e.kind() == "ParseError" => 2,
            Failure::Pipeline(_) => 3,
        }
    }

    fn report(&self) -> ErrorReport {
        match self {
            Failure::Usage(m) => ErrorReport::new("UsageError", m.clone()),
            Failure::Pipeline(e) => e.into(),
        }
    }
}

fn diagram(c: &Common) -> Result<CoxeterDiagram, Failure> {
    let text = c.diagram.as_deref().ok_or_else(|| Failure::Usage("--diagram is required".into()))?;
    parse_diagram(text).map_err(|e| Failure::Pipeline(e.into()))
}

fn prime(c: &Common) -> Result<u32, Failure> {
    c.prime.ok_or_else(|| Failure::Usage("--prime is required".into()))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    Reduce,
    Torsion,
    Invariants,
    Homology,
}

/// Runs the pipeline up to `stage`, filling the report as it goes.
fn staged(command: &str, d: &CoxeterDiagram, p: u32, stage: Stage, limits: Limits) -> Result<Report, Failure> {
    let red = Reduction::new(d, p)?;
    let mut r = report::base(command, d, Some(red.lattice.field));
    r.lattice = Some(report::lattice(&red.lattice));
    r.prime = Some(report::prime(&red.prime));
    // only homology needs the order; elsewhere a huge image is reported as unknown
    let order = match red.image_order(limits.cap) {
        Ok(n) => Some(n),
        Err(PipelineError::Group(GroupError::CapExceeded(_))) if stage < Stage::Homology => None,
        Err(e) => return Err(e.into()),
    };
    r.reduction = Some(report::Reduction {
        dim: red.rep.dim(),
        radical_dim: red.rep.radical_basis.len(),
        form_class: red.form_class(limits.cap)?.map(|c| c.to_string()),
        image_order: order.map(|n| n as u64),
        cap: limits.cap as u64,
    });
    if stage >= Stage::Torsion {
        let t = red.torsion(limits.cap)?;
        r.torsion = Some(report::torsion(&t));
        if stage >= Stage::Invariants {
            r.invariants = Some(report::invariants(&invariants(d, order, Some(t.verdict))?));
        }
    }
    if stage >= Stage::Homology {
        let h = if *d == delta3() && p == 5 {
            let frame = davis_frame(&red.lattice, &red.prime, &red.rep).map_err(PipelineError::from)?;
            two_step_homology(d, &red.rep, &frame, limits)?
        } else {
            direct_homology(d, &red.rep, limits)?
        };
        r.homology = Some(report::homology(&h));
    }
    Ok(r)
}

fn run(command: Command) -> (Result<Report, Failure>, Option<PathBuf>) {
    let limits = |cap| Limits { cap, relator_budget: DEFAULT_RELATOR_BUDGET };
    let stage = |name: &str, c: &Common, s: Stage| -> Result<Report, Failure> {
        let d = diagram(c)?;
        staged(name, &d, prime(c)?, s, limits(c.cap))
    };
    match command {
        Command::Gram(c) => {
            let r = diagram(&c).map(|d| report::base("gram", &d, cycle_field(&d).ok()));
            (r, c.report)
        }
        Command::Lattice(c) => {
            let r = diagram(&c).and_then(|d| {
                let l = VinbergLattice::build(&d).map_err(PipelineError::from)?;
                let mut r = report::base("lattice", &d, Some(l.field));
                r.lattice = Some(report::lattice(&l));
                Ok(r)
            });
            (r, c.report)
        }
        Command::Reduce(c) => (stage("reduce", &c, Stage::Reduce), c.report),
        Command::Torsion(c) => (stage("torsion", &c, Stage::Torsion), c.report),
        Command::Invariants(c) => {
            let r = match c.prime {
                Some(_) => stage("invariants", &c, Stage::Invariants),
                None => diagram(&c).and_then(|d| {
                    let mut r = report::base("invariants", &d, cycle_field(&d).ok());
                    r.invariants = Some(report::invariants(&invariants(&d, None, None)?));
                    Ok(r)
                }),
            };
            (r, c.report)
        }
        Command::Homology(c) => (stage("homology", &c, Stage::Homology), c.report),
        Command::Glue { common, face } => {
            let r = diagram(&common).and_then(|d| {
                if face == 0 || face > d.node_count() {
                    return Err(Failure::Usage(format!("face {face} is not in 1..={}", d.node_count())));
                }
                let fs = double(&d, face - 1);
                let big = recognize(&fs).map_err(PipelineError::from)?;
                let ratio = index_relation(&big, &d).ok().map(|x| x.to_string());
                let mut r = report::base("glue", &d, cycle_field(&d).ok());
                r.glue = Some(report::glue(face - 1, &fs, &big, ratio));
                Ok(r)
            });
            (r, common.report)
        }
        Command::Davis { report, cap } => (staged("davis", &delta3(), 5, Stage::Homology, limits(cap)), report),
    }
}

fn emit(json: &str, path: Option<&PathBuf>) -> bool {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{json}");
    match path {
        Some(p) => match std::fs::write(p, format!("{json}\n")) {
            Ok(()) => true,
            Err(e) => {
                eprintln!("cannot write {}: {e}", p.display());
                false
            }
        },
        None => true,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, path) = run(cli.command);
    match result {
        Ok(r) => {
            let json = serde_json::to_string_pretty(&r).expect("report serialises");
            if emit(&json, path.as_ref()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let json = serde_json::to_string_pretty(&f.report()).expect("error serialises");
            emit(&json, path.as_ref());
            ExitCode::from(f.exit_code())
        }
    }
}
