use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spherefield::extactic::{
    check_hyperplane, enumerate_parallel, enumerate_pencil, extactic, multiplicity, Multiplicity, Pencil,
    PlaneSet, SubspaceBasis,
};
use spherefield::families::{
    classify, CubicKolmS12, CubicKolmS21, Family, FamilyRecord, LinearS12, LinearS21, NotMember,
    PseudoTypeNS21, QuadS12, QuadS21, TypeNS12,
};
use spherefield::integrability::{
    darboux_kernel, hamiltonian_solve, independence_rank, known_first_integrals, verify_first_integral,
    DarbouxProduct,
};
use spherefield::numeric::{conservation_report, integrate_rk4, sample_point};
use spherefield::rational::{fmt_rational, int, parse_rational};
use spherefield::suite::{property_suite, SUITES};
use spherefield::{CofactorResult, Error, Hypersurface, Poly, Rational, SurfaceKind, VectorField};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "spherefield", version, about = "Polynomial vector fields on S1xS2 and S2xS1 in R^4")]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and print it.
    Build(Box<BuildArgs>),
    /// Identify the family a field belongs to.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Decide invariance of the surface (or of `--poly`) and report the cofactor.
    Cofactor {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        surface: OptSurfaceArgs,
        /// Test this polynomial instead of the surface.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Lie derivative of a polynomial along the field.
    Lie {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        /// Number of times to apply the derivative.
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Polynomial Hamiltonian with zero constant term, if one exists.
    Hamiltonian {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Exponents making a product of invariant factors a first integral.
    Darboux {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated factors.
        #[arg(long)]
        factors: String,
    },
    /// Closed-form first integrals of the field's family.
    FirstIntegrals {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },
    /// Extactic polynomial over a subspace basis.
    Extactic {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated basis, e.g. "x1,x2,x3".
        #[arg(long)]
        basis: String,
        /// Report the multiplicity of this element of the span.
        #[arg(long)]
        plane: Option<String>,
    },
    /// Invariant hyperplanes.
    Hyperplanes(HyperplaneArgs),
    /// Integrate the field with fixed-step RK4 and write CSV.
    Simulate(SimulateArgs),
    /// Run the randomized property suites.
    Verify {
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Json)]
        format: VerifyFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Json,
    Table,
}

#[derive(Args)]
struct FieldArgs {
    /// Field as "P1; P2; P3; P4".
    #[arg(long, conflicts_with = "field_file", required_unless_present = "field_file")]
    field: Option<String>,
    /// File holding the field; `#` starts a comment.
    #[arg(long)]
    field_file: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    surface: SurfaceKind,
    #[arg(long)]
    param: String,
}

#[derive(Args)]
struct OptSurfaceArgs {
    #[arg(long)]
    surface: Option<SurfaceKind>,
    #[arg(long)]
    param: Option<String>,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    family: Family,
    /// Surface parameter a or b.
    #[arg(long)]
    param: String,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    k3: Option<String>,
    #[arg(long)]
    k4: Option<String>,
    #[arg(long)]
    k33: Option<String>,
    #[arg(long)]
    k44: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    /// Coefficient polynomial A of Type-n families.
    #[arg(long = "A")]
    a: Option<String>,
    #[arg(long = "B")]
    b: Option<String>,
    #[arg(long = "C")]
    cc: Option<String>,
    /// Print only the field text.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct HyperplaneArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Enumerate rational planes x4 = k.
    #[arg(long)]
    parallel: bool,
    /// Enumerate planes of a coordinate pencil (x1x2 or x3x4).
    #[arg(long)]
    pencil: Vec<String>,
    /// Check the plane a1 x1 + a2 x2 + a3 x3 = 0.
    #[arg(long)]
    check: Vec<String>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Starting angles θ,α,β in turns.
    #[arg(long)]
    angles: String,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 10.0)]
    t_end: f64,
    /// Extra columns, "name=poly,...".
    #[arg(long)]
    watch: Option<String>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failure kinds mapped to exit codes.
enum Failure {
    /// A well-formed question with a negative answer; the payload is still printed.
    Negative(Output),
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::RecordMismatch(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn negative(v: Value) -> Failure {
    Failure::Negative(Output::Json(v))
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    let mut stdout = io::stdout().lock();
    let code = match result {
        Ok(out) => {
            emit(&mut stdout, &out);
            0
        }
        Err(Failure::Negative(out)) => {
            emit(&mut stdout, &out);
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            3
        }
    };
    ExitCode::from(code)
}

fn emit(stdout: &mut impl Write, out: &Output) {
    let _ = match out {
        Output::Json(v) => {
            let text = serde_json::to_string_pretty(v).expect("json values serialize");
            writeln!(stdout, "{text}")
        }
        Output::Text(s) => stdout.write_all(s.as_bytes()),
    };
}

fn doc(command: &str, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("payload is an object");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    body
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.command {
        Command::Build(args) => build(*args),
        Command::Classify { field, surface } => cmd_classify(&read_field(&field)?, &surface.resolve()?),
        Command::Cofactor { field, surface, poly } => cmd_cofactor(&read_field(&field)?, surface, poly),
        Command::Lie { field, poly, order } => {
            let field = read_field(&field)?;
            let f = parse_poly(&poly)?;
            let lie = field.iterated_lie(&f, order);
            Ok(Output::Json(doc(
                "lie",
                json!({"poly": f.to_string(), "order": order, "lie": lie.to_string()}),
            )))
        }
        Command::Hamiltonian { field } => {
            let field = read_field(&field)?;
            let res = hamiltonian_solve(&field);
            let body = doc(
                "hamiltonian",
                json!({"exists": res.exists(), "hamiltonian": res.hamiltonian.as_ref().map(Poly::to_string)}),
            );
            if res.exists() {
                Ok(Output::Json(body))
            } else {
                Err(negative(body))
            }
        }
        Command::Darboux { field, factors } => cmd_darboux(&read_field(&field)?, &factors),
        Command::FirstIntegrals { field, surface, trials } => {
            cmd_first_integrals(&read_field(&field)?, &surface.resolve()?, trials, seed)
        }
        Command::Extactic { field, basis, plane } => cmd_extactic(&read_field(&field)?, &basis, plane),
        Command::Hyperplanes(args) => cmd_hyperplanes(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify { suite, instances, format } => cmd_verify(&suite, seed, instances, format),
    }
}

fn read_field(args: &FieldArgs) -> Result<VectorField, Failure> {
    let text = match (&args.field, &args.field_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => {
            let raw = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            strip_comments(&raw)
        }
        (None, None) => return Err(Failure::Usage("a field is required".into())),
    };
    Ok(VectorField::parse(&text)?)
}

fn strip_comments(raw: &str) -> String {
    raw.lines().map(|l| l.split_once('#').map_or(l, |(code, _)| code)).collect::<Vec<_>>().join(" ")
}

fn parse_q(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("--{name}: `{s}` is not a rational number")))
}

fn parse_poly(s: &str) -> Result<Poly, Failure> {
    Poly::parse(s).map_err(|e| Failure::Usage(e.to_string()))
}

impl SurfaceArgs {
    fn resolve(&self) -> Result<Hypersurface, Failure> {
        Ok(Hypersurface::new(self.surface, parse_q("param", &self.param)?)?)
    }
}

impl OptSurfaceArgs {
    fn resolve(&self) -> Result<Option<Hypersurface>, Failure> {
        match (self.surface, &self.param) {
            (Some(kind), Some(p)) => Ok(Some(Hypersurface::new(kind, parse_q("param", p)?)?)),
            (None, None) => Ok(None),
            _ => Err(Failure::Usage("--surface and --param go together".into())),
        }
    }
}

fn q(r: &Rational) -> Value {
    json!(fmt_rational(r))
}

fn record_json(rec: &FamilyRecord) -> Value {
    let params: serde_json::Map<String, Value> =
        rec.params().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({"family": rec.family().tag(), "params": params, "cofactor": rec.cofactor().to_string()})
}

fn build(a: BuildArgs) -> Outcome {
    let param = parse_q("param", &a.param)?;
    let scalar = |name: &str, v: &Option<String>| -> Result<Rational, Failure> {
        v.as_deref().map_or(Ok(int(0)), |s| parse_q(name, s))
    };
    let poly =
        |v: &Option<String>| -> Result<Poly, Failure> { v.as_deref().map_or(Ok(Poly::zero()), parse_poly) };
    let n = || a.n.ok_or_else(|| Failure::Usage(format!("--n is required for {}", a.family)));
    let rec = match a.family {
        Family::LinearS12 => FamilyRecord::LinearS12(LinearS12 {
            param,
            alpha: scalar("alpha", &a.alpha)?,
            beta: scalar("beta", &a.beta)?,
        }),
        Family::QuadS12 => FamilyRecord::QuadS12(QuadS12 {
            param,
            k3: scalar("k3", &a.k3)?,
            k4: scalar("k4", &a.k4)?,
            f: poly(&a.f)?,
            g: poly(&a.g)?,
        }),
        Family::CubicKolmS12 => FamilyRecord::CubicKolmS12(CubicKolmS12 {
            param,
            k33: scalar("k33", &a.k33)?,
            k44: scalar("k44", &a.k44)?,
            alpha: scalar("alpha", &a.alpha)?,
            beta: scalar("beta", &a.beta)?,
        }),
        Family::TypeNS12 => {
            FamilyRecord::TypeNS12(TypeNS12 { param, n: n()?, a: poly(&a.a)?, b: poly(&a.b)? })
        }
        Family::LinearS21 => FamilyRecord::LinearS21(LinearS21 {
            param,
            alpha: scalar("alpha", &a.alpha)?,
            beta: scalar("beta", &a.beta)?,
            gamma: scalar("gamma", &a.gamma)?,
        }),
        Family::QuadS21 => FamilyRecord::QuadS21(QuadS21 {
            param,
            c: scalar("c", &a.c)?,
            f: poly(&a.f)?,
            g: poly(&a.g)?,
            h: poly(&a.h)?,
        }),
        Family::CubicKolmS21 => FamilyRecord::CubicKolmS21(CubicKolmS21 {
            param,
            c: scalar("c", &a.c)?,
            alpha: scalar("alpha", &a.alpha)?,
            beta: scalar("beta", &a.beta)?,
            gamma: scalar("gamma", &a.gamma)?,
        }),
        Family::PseudoTypeNS21 => FamilyRecord::PseudoTypeNS21(PseudoTypeNS21 {
            param,
            n: n()?,
            a: poly(&a.a)?,
            b: poly(&a.b)?,
            c: poly(&a.cc)?,
        }),
    };
    let field = rec.build()?;
    if a.text {
        return Ok(Output::Text(format!("{field}\n")));
    }
    let mut body = record_json(&rec);
    body["field"] = json!(field.to_string());
    body["surface"] = json!(rec.family().surface_kind().tag());
    Ok(Output::Json(doc("build", body)))
}

fn cmd_classify(field: &VectorField, surface: &Hypersurface) -> Outcome {
    match classify(field, surface) {
        Ok(rec) => {
            let mut body = record_json(&rec);
            body["member"] = json!(true);
            Ok(Output::Json(doc("classify", body)))
        }
        Err(NotMember::ResidualMismatch(detail)) => Err(Failure::Internal(detail)),
        Err(reason) => {
            let kind = match &reason {
                NotMember::NotInvariant => "not-invariant",
                NotMember::UnsupportedShape(_) => "unsupported-shape",
                NotMember::ResidualMismatch(_) => unreachable!(),
            };
            Err(negative(doc(
                "classify",
                json!({"member": false, "reason": kind, "detail": reason.to_string()}),
            )))
        }
    }
}

fn cmd_cofactor(field: &VectorField, surface: OptSurfaceArgs, poly: Option<String>) -> Outcome {
    let f = match (poly, surface.resolve()?) {
        (Some(p), None) => parse_poly(&p)?,
        (None, Some(s)) => s.poly().clone(),
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --poly or --surface, not both".into())),
        (None, None) => return Err(Failure::Usage("--surface/--param or --poly is required".into())),
    };
    match spherefield::hypersurface::invariance_cofactor(field, &f)? {
        CofactorResult::Invariant { cofactor } => {
            Ok(Output::Json(doc("cofactor", json!({"invariant": true, "cofactor": cofactor.to_string()}))))
        }
        CofactorResult::NotInvariant { remainder } => {
            Err(negative(doc("cofactor", json!({"invariant": false, "remainder": remainder.to_string()}))))
        }
    }
}

fn cmd_darboux(field: &VectorField, factors: &str) -> Outcome {
    let factors: Vec<Poly> = factors.split(',').map(parse_poly).collect::<Result<_, _>>()?;
    let mut listed = Vec::new();
    let mut cofactors = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        match spherefield::hypersurface::invariance_cofactor(field, f)? {
            CofactorResult::Invariant { cofactor } => {
                listed.push(json!({"factor": f.to_string(), "cofactor": cofactor.to_string()}));
                cofactors.push(cofactor);
            }
            CofactorResult::NotInvariant { .. } => {
                return Err(negative(doc(
                    "darboux",
                    json!({"first_integral": false, "not_invariant": i, "factor": f.to_string()}),
                )));
            }
        }
    }
    let kernel = darboux_kernel(&cofactors)?;
    let Some(exponents) = kernel.first() else {
        return Err(negative(doc(
            "darboux",
            json!({"first_integral": false, "factors": listed, "exponents": null, "kernel_dimension": 0}),
        )));
    };
    let verified = verify_first_integral(field, &DarbouxProduct::from_exponents(&factors, exponents))?;
    if !verified {
        return Err(Failure::Internal("kernel vector does not give a first integral".into()));
    }
    let basis: Vec<Vec<Value>> = kernel.iter().map(|v| v.iter().map(q).collect()).collect();
    Ok(Output::Json(doc(
        "darboux",
        json!({
            "first_integral": true,
            "factors": listed,
            "exponents": exponents.iter().map(q).collect::<Vec<_>>(),
            "kernel_dimension": kernel.len(),
            "kernel": basis,
        }),
    )))
}

fn cmd_first_integrals(field: &VectorField, surface: &Hypersurface, trials: usize, seed: u64) -> Outcome {
    let rec = match classify(field, surface) {
        Ok(rec) => rec,
        Err(reason) => {
            return Err(negative(doc(
                "first-integrals",
                json!({"family": null, "integrals": [], "detail": reason.to_string()}),
            )))
        }
    };
    match known_first_integrals(field, &rec) {
        Ok(integrals) => {
            let rank = independence_rank(&integrals, surface, trials, seed);
            Ok(Output::Json(doc(
                "first-integrals",
                json!({
                    "family": rec.family().tag(),
                    "integrals": integrals.iter().map(Poly::to_string).collect::<Vec<_>>(),
                    "independence_rank": rank,
                    "trials": trials,
                    "seed": seed,
                }),
            )))
        }
        Err(Error::UnsupportedFamily(_)) => {
            Err(negative(doc("first-integrals", json!({"family": rec.family().tag(), "integrals": []}))))
        }
        Err(e) => Err(e.into()),
    }
}

fn multiplicity_json(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(k) => json!(k),
        Multiplicity::Infinite => json!("infinite"),
    }
}

fn cmd_extactic(field: &VectorField, basis: &str, plane: Option<String>) -> Outcome {
    let w = SubspaceBasis::parse(basis)?;
    let e = extactic(field, &w);
    let mut body = json!({
        "basis": w.elements().iter().map(Poly::to_string).collect::<Vec<_>>(),
        "extactic": e.to_string(),
        "identically_zero": e.is_zero(),
    });
    if let Some(p) = plane {
        let f = parse_poly(&p)?;
        body["plane"] = json!(f.to_string());
        body["multiplicity"] = multiplicity_json(multiplicity(field, &w, &f)?);
    }
    Ok(Output::Json(doc("extactic", body)))
}

fn cmd_hyperplanes(args: HyperplaneArgs) -> Outcome {
    let field = read_field(&args.field)?;
    if !args.parallel && args.pencil.is_empty() && args.check.is_empty() {
        return Err(Failure::Usage("choose at least one of --parallel, --pencil, --check".into()));
    }
    let mut body = json!({});
    if args.parallel {
        let report = enumerate_parallel(&field);
        body["parallel"] = match &report.planes {
            PlaneSet::AllInvariant => json!({"all_invariant": true, "planes": []}),
            PlaneSet::Planes(p) => json!({
                "all_invariant": false,
                "planes": p.iter().map(|(k, m)| json!({"k": q(k), "multiplicity": m})).collect::<Vec<_>>(),
            }),
        };
        body["parallel"]["indeterminate_candidates"] = json!(report.indeterminate);
    }
    if !args.pencil.is_empty() {
        let mut pencils = serde_json::Map::new();
        for tag in &args.pencil {
            let pencil: Pencil = tag.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let entry = match enumerate_pencil(&field, pencil) {
                PlaneSet::AllInvariant => json!({"all_invariant": true, "planes": []}),
                PlaneSet::Planes(p) => json!({
                    "all_invariant": false,
                    "planes": p
                        .iter()
                        .map(|((a, b), m)| json!({"ratio": [q(a), q(b)], "multiplicity": m}))
                        .collect::<Vec<_>>(),
                }),
            };
            pencils.insert(pencil.tag().to_string(), entry);
        }
        body["pencils"] = Value::Object(pencils);
    }
    if !args.check.is_empty() {
        let mut checked = Vec::new();
        for spec in &args.check {
            let coeffs: Vec<Rational> =
                spec.split(',').map(|s| parse_q("check", s)).collect::<Result<_, _>>()?;
            if coeffs.len() != 3 {
                return Err(Failure::Usage(format!("--check needs three coefficients, got `{spec}`")));
            }
            let plane = Poly::from_terms((0..3).map(|i| {
                let mut e = [0; 4];
                e[i] = 1;
                (spherefield::Monomial(e), coeffs[i].clone())
            }));
            let entry = match check_hyperplane(&field, &plane)? {
                CofactorResult::Invariant { cofactor } => json!({
                    "coefficients": coeffs.iter().map(q).collect::<Vec<_>>(),
                    "invariant": true,
                    "cofactor": cofactor.to_string(),
                }),
                CofactorResult::NotInvariant { .. } => json!({
                    "coefficients": coeffs.iter().map(q).collect::<Vec<_>>(),
                    "invariant": false,
                    "cofactor": null,
                }),
            };
            checked.push(entry);
        }
        body["meridians"] = json!(checked);
    }
    Ok(Output::Json(doc("hyperplanes", body)))
}

fn cmd_simulate(args: SimulateArgs) -> Outcome {
    let field = read_field(&args.field)?;
    let surface = args.surface.resolve()?;
    let angles: Vec<Rational> =
        args.angles.split(',').map(|s| parse_q("angles", s)).collect::<Result<_, _>>()?;
    let angles: [Rational; 3] =
        angles.try_into().map_err(|_| Failure::Usage("--angles needs three values θ,α,β".into()))?;
    let mut watch = Vec::new();
    if let Some(spec) = &args.watch {
        for item in spec.split(',') {
            let (name, p) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("--watch entry `{item}` is not name=poly")))?;
            watch.push((name.trim().to_string(), parse_poly(p)?));
        }
    }
    let x0 = sample_point(&surface, &angles);
    let traj = match integrate_rk4(&field, x0, args.dt, args.t_end) {
        Ok(t) => t,
        Err(Error::NonFinite { last_valid_index }) => {
            return Err(negative(doc(
                "simulate",
                json!({"completed": false, "last_valid_index": last_valid_index}),
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let compiled: Vec<_> = watch.iter().map(|(_, p)| spherefield::numeric::CompiledPoly::new(p)).collect();
    let mut csv = String::from("t,x1,x2,x3,x4");
    for (name, _) in &watch {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push('\n');
    for (t, x) in traj.times.iter().zip(&traj.states) {
        csv.push_str(&format!("{t:e},{:e},{:e},{:e},{:e}", x[0], x[1], x[2], x[3]));
        for c in &compiled {
            csv.push_str(&format!(",{:e}", c.eval(x)));
        }
        csv.push('\n');
    }
    match &args.output {
        None => Ok(Output::Text(csv)),
        Some(path) => {
            fs::write(path, csv)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            let report = conservation_report(&traj, &watch);
            let drifts: Vec<Value> = report
                .quantities
                .iter()
                .map(|d| json!({"name": d.name, "initial": d.initial, "max_drift": d.max_drift}))
                .collect();
            Ok(Output::Json(doc(
                "simulate",
                json!({"completed": true, "steps": traj.states.len() - 1, "output": path.display().to_string(), "drift": drifts}),
            )))
        }
    }
}

fn cmd_verify(suite: &str, seed: u64, instances: usize, format: VerifyFormat) -> Outcome {
    let names: Vec<&str> = suite.split(',').map(str::trim).collect();
    if let Some(bad) = names.iter().find(|n| **n != "all" && !SUITES.contains(n)) {
        return Err(Failure::Usage(format!("unknown suite `{bad}`; known: all, {}", SUITES.join(", "))));
    }
    let report = property_suite(&names, seed, instances)?;
    let ok = report.all_passed();
    let output = match format {
        VerifyFormat::Table => {
            let mut s = format!("{:<28} {:>9} {:>9}\n", "suite", "passed", "instances");
            for o in &report.suites {
                s.push_str(&format!("{:<28} {:>9} {:>9}\n", o.name, o.passed, o.instances));
                for c in &o.counterexamples {
                    s.push_str(&format!("  #{}: {}\n", c.index, c.detail));
                }
            }
            Output::Text(s)
        }
        VerifyFormat::Json => {
            let suites: Vec<Value> = report
                .suites
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "instances": o.instances,
                        "passed": o.passed,
                        "counterexamples": o.counterexamples.iter()
                            .map(|c| json!({"index": c.index, "detail": c.detail}))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            Output::Json(doc("verify", json!({"seed": seed, "all_passed": ok, "suites": suites})))
        }
    };
    if ok {
        Ok(output)
    } else {
        Err(Failure::Negative(output))
    }
}
