use std::io::{self, Write};

use anyhow::{anyhow, Context};
use autplane::automorphisms::act_point;
use autplane::derivations::{
    brute_force_iterated_commutator, exp_apply_with_bound, homog_decompose, iterated_commutator_closed_form, Derivation,
};
use autplane::exactpoly::{parse_rat, BiPoly};
use autplane::grading::{MVec, NVec};
use autplane::lattice::GeneratorSpec;
use autplane::transitivity::{
    check_spec_with, obstruction_certificate, realize_root_with, verify_certificate_with_bound, witness_in_spec_with,
    Answer, Bounds, ClosureCertificate, TransitivityError, WitnessRequest,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::input::{read_json, read_source};
use crate::render;
use crate::{Cli, Command, Format, EXIT_DEGENERATE, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            error,
        }
    }
}

impl From<TransitivityError> for Failure {
    fn from(e: TransitivityError) -> Self {
        let code = match e {
            TransitivityError::DegenerateInput(_) => EXIT_DEGENERATE,
            TransitivityError::CriterionFails(_) | TransitivityError::CriterionHolds => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Failure { code, error: e.into() }
    }
}

type Outcome = Result<u8, Failure>;

/// Writes the result to stdout; a closed pipe is not an error.
fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Text => text().trim_end().to_string(),
    };
    match writeln!(io::stdout().lock(), "{body}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let bounds = Bounds {
        nilpotency: cli.bound,
        cone_search: cli.cone_bound,
    };
    match &cli.command {
        Command::Check { spec } => check(cli.format, spec, &bounds),
        Command::Witness { spec, points } => witness(cli.format, spec, points, &bounds),
        Command::RealizeRoot { spec, a } => realize(cli.format, spec, *a, &bounds),
        Command::Commutator {
            rho,
            r,
            eps,
            roots,
            random,
        } => {
            let input = match random {
                Some(k) => random_commutator(cli.seed, *k),
                None => CommutatorInput {
                    rho: rho.unwrap_or_else(|| infer_ray(roots)),
                    r: r.expect("required by the parser"),
                    eps: eps.expect("required by the parser"),
                    roots: roots.clone(),
                },
            };
            commutator(cli.format, &input)
        }
        Command::Exp { derivation, t, on } => exp(cli.format, derivation, t, on.as_deref(), cli.bound),
        Command::Decompose { derivation } => decompose(cli.format, derivation),
        Command::Obstruction { spec } => obstruction(cli.format, spec),
        Command::VerifyCert { cert } => verify_cert(cli.format, cert, cli.bound),
    }
}

fn check(format: Format, spec: &str, bounds: &Bounds) -> Outcome {
    let spec: GeneratorSpec = read_json(spec, "generator family")?;
    let verdict = check_spec_with(&spec, bounds)?;
    emit(format, &verdict, || render::verdict(&spec, &verdict))?;
    Ok(match verdict.answer {
        Answer::InfinitelyTransitive => EXIT_OK,
        Answer::NotTwoTransitive => EXIT_NEGATIVE,
    })
}

fn witness(format: Format, spec: &str, points: &str, bounds: &Bounds) -> Outcome {
    let spec: GeneratorSpec = read_json(spec, "generator family")?;
    let req: WitnessRequest = read_json(points, "points")?;
    let out = witness_in_spec_with(&spec, &req, bounds)?;
    let moved = req.fixed_points.iter().find(|p| act_point(&out.word, p) != **p);
    if let Some(p) = moved {
        return Err(anyhow!("self-check failed: the word moves the fixed point ({}, {})", p.0, p.1).into());
    }
    if act_point(&out.word, &req.from_point) != req.to_point {
        return Err(anyhow!("self-check failed: the word does not map the source point to the target").into());
    }
    emit(format, &out, || render::witness(&out))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
enum RealizeFailure {
    NotInCone { target: MVec },
    SearchBoundExceeded { bound: u64 },
}

fn realize(format: Format, spec: &str, a: i64, bounds: &Bounds) -> Outcome {
    let spec: GeneratorSpec = read_json(spec, "generator family")?;
    let target = MVec(a, -1);
    let (report, code) = match realize_root_with(&spec, target, bounds) {
        Ok(cert) => {
            emit(format, &cert, || render::certificate(&cert))?;
            return Ok(EXIT_OK);
        }
        Err(TransitivityError::NotInCone(target)) => (RealizeFailure::NotInCone { target }, EXIT_NEGATIVE),
        Err(TransitivityError::SearchBoundExceeded { bound }) => {
            (RealizeFailure::SearchBoundExceeded { bound }, EXIT_USAGE)
        }
        Err(e) => return Err(e.into()),
    };
    emit(format, &report, || match &report {
        RealizeFailure::NotInCone { target } => format!("not in cone: {target} is not a sum of the family's roots"),
        RealizeFailure::SearchBoundExceeded { bound } => {
            format!("search bound exceeded: no decomposition with at most {bound} summands; membership undecided")
        }
    })?;
    Ok(code)
}

struct CommutatorInput {
    rho: NVec,
    r: NVec,
    eps: MVec,
    roots: Vec<MVec>,
}

/// The ray whose roots have the shape of the first root, `(0,1)` by default.
fn infer_ray(roots: &[MVec]) -> NVec {
    match roots.first() {
        Some(e) if e.0 == -1 => NVec::RAY_X,
        _ => NVec::RAY_Y,
    }
}

fn random_ray(rng: &mut ChaCha8Rng) -> NVec {
    if rng.gen_bool(0.5) {
        NVec::RAY_X
    } else {
        NVec::RAY_Y
    }
}

fn random_root(rng: &mut ChaCha8Rng, rho: NVec) -> MVec {
    let c = rng.gen_range(0..=5);
    if rho == NVec::RAY_X {
        MVec(-1, c)
    } else {
        MVec(c, -1)
    }
}

fn random_commutator(seed: u64, k: usize) -> CommutatorInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = random_ray(&mut rng);
    let r = random_ray(&mut rng);
    let eps = random_root(&mut rng, r);
    let roots = (0..k).map(|_| random_root(&mut rng, rho)).collect();
    CommutatorInput { rho, r, eps, roots }
}

#[derive(Serialize)]
struct CommutatorReport {
    rho: NVec,
    r: NVec,
    eps: MVec,
    roots: Vec<MVec>,
    degree: MVec,
    /// Coefficients `f` of the closed form `χ^m ↦ ⟨f, m⟩ χ^{m+degree}`.
    linear: [String; 2],
    closed_form: Derivation,
    brute_force: Derivation,
    equal: bool,
}

fn commutator(format: Format, input: &CommutatorInput) -> Outcome {
    let closed = iterated_commutator_closed_form(input.rho, input.r, input.eps, &input.roots).context("closed form")?;
    let closed_form = closed.to_derivation().context("closed form")?;
    let brute_force =
        brute_force_iterated_commutator(input.rho, input.r, input.eps, &input.roots).context("nested brackets")?;
    let report = CommutatorReport {
        rho: input.rho,
        r: input.r,
        eps: input.eps,
        roots: input.roots.clone(),
        degree: closed.degree,
        linear: [closed.linear[0].to_string(), closed.linear[1].to_string()],
        equal: closed_form == brute_force,
        closed_form,
        brute_force,
    };
    emit(format, &report, || {
        let roots: Vec<String> = report.roots.iter().map(MVec::to_string).collect();
        format!(
            "rho {} r {} eps {} roots {}\ndegree {}\nclosed form:    {}\nnested bracket: {}\nequal: {}",
            report.rho,
            report.r,
            report.eps,
            roots.join(" "),
            report.degree,
            report.closed_form,
            report.brute_force,
            report.equal
        )
    })?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
#[serde(untagged)]
enum ExpReport {
    Image { input: BiPoly, image: BiPoly },
    Map { x: BiPoly, y: BiPoly },
}

/// Literal derivation text, or `-` for stdin.
fn parse_derivation(arg: &str) -> anyhow::Result<Derivation> {
    let text = if arg == "-" { read_source(arg)? } else { arg.to_string() };
    text.trim().parse().context("derivation")
}

fn exp(format: Format, derivation: &str, t: &str, on: Option<&str>, bound: u32) -> Outcome {
    let d = parse_derivation(derivation)?;
    let t = parse_rat(t).context("parameter t")?;
    let apply = |p: &BiPoly| exp_apply_with_bound(&d, &t, p, bound).context("exponential");
    let report = match on {
        Some(p) => {
            let input: BiPoly = p.parse().context("polynomial")?;
            let image = apply(&input)?;
            ExpReport::Image { input, image }
        }
        None => ExpReport::Map {
            x: apply(&BiPoly::x())?,
            y: apply(&BiPoly::y())?,
        },
    };
    emit(format, &report, || match &report {
        ExpReport::Image { image, .. } => image.to_string(),
        ExpReport::Map { x, y } => format!("x -> {x}\ny -> {y}"),
    })?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Piece {
    degree: MVec,
    piece: Derivation,
}

fn decompose(format: Format, derivation: &str) -> Outcome {
    let d = parse_derivation(derivation)?;
    let pieces: Vec<Piece> = homog_decompose(&d)
        .into_iter()
        .map(|(degree, piece)| Piece { degree, piece })
        .collect();
    emit(format, &pieces, || {
        pieces.iter().map(|p| format!("{}: {}\n", p.degree, p.piece)).collect()
    })?;
    Ok(EXIT_OK)
}

fn obstruction(format: Format, spec: &str) -> Outcome {
    let spec: GeneratorSpec = read_json(spec, "generator family")?;
    let obs = obstruction_certificate(&spec)?;
    emit(format, &obs, || render::obstruction(&obs))?;
    Ok(EXIT_OK)
}

fn verify_cert(format: Format, cert: &str, bound: u32) -> Outcome {
    let cert: ClosureCertificate = read_json(cert, "certificate")?;
    let verdict = verify_certificate_with_bound(&cert, bound);
    emit(format, &verdict, || render::cert_verdict(&cert, &verdict))?;
    Ok(if verdict.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
}
