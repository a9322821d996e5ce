//! Command-line driver. Exit codes: 0 success, 1 a checked property
//! failed, 2 invalid input, 3 a resource cap was hit.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cubes::subdivide;
use crate::doc;
use crate::error::Error;
use crate::fixtures::{fixture, Fixture, FIXTURE_NAMES};
use crate::grid::{ProductComplex, ProductIsometry};
use crate::harness::{build_action, certify_discrete_norm, default_sample, nonnegative_sample, DEFAULT_POWER_CAP};
use crate::isometry::{
    axis_from, axis_of, classify, common_min_power, default_max_m, default_window, intersect, minset, translation_length,
    window_min,
};
use crate::median::{check_lemma_agree, factorize, subalgebra_closure, verify_median, Subalgebra};
use crate::wallspace::{cubulate_capped, DEFAULT_VERTEX_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cubecx", version, about = "CAT(0) cube complexes as median graphs")]
pub struct Cli {
    /// Write the result document here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Radius of brute-force verification windows (default: 2(|g| + k + diameter)).
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Bound for the power search (default: 2 lcm of the orders, at most 1024).
    #[arg(long = "max-m", global = true)]
    max_m: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Input document; `-` or absent reads standard input.
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Pick {
    /// Input action document.
    file: Option<PathBuf>,
    /// Only this generator (default: all, in name order).
    #[arg(short, long)]
    generator: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a wallspace document.
    Validate(Input),
    /// Build the dual cube complex of a wallspace.
    Cubulate {
        #[command(flatten)]
        input: Input,
        /// Cap on the number of vertices.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// Check that a graph document is a median graph.
    CheckMedian(Input),
    /// Induced and intrinsic walls of a subalgebra, and whether they agree.
    Walls {
        #[command(flatten)]
        input: Input,
        /// Replace the member list by its median closure.
        #[arg(long)]
        closure: bool,
    },
    /// Classify isometries as elliptic, inverting or loxodromic.
    Classify(Pick),
    /// Translation length and minset of isometries.
    Minset(Pick),
    /// A geodesic fundamental domain of an axis.
    Axis {
        #[command(flatten)]
        pick: Pick,
        /// Base point `vertex:x1,x2,...` in Min g (default: the minset witness).
        #[arg(long)]
        from: Option<String>,
    },
    /// First cubical subdivision of a graph or of an action.
    Subdivide(Input),
    /// Finest product decomposition of a median graph.
    Factorize(Input),
    /// Smallest m with Min g ∩ Min h^m nonempty.
    CommonPower {
        file: Option<PathBuf>,
        #[arg(long, default_value = "g")]
        g: String,
        #[arg(long, default_value = "h")]
        h: String,
    },
    /// Certify that translation length is a discrete norm on sampled words.
    NormCheck {
        file: Option<PathBuf>,
        /// Sample all words with exponents in [-bound, bound].
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Largest |m| in the homogeneity check.
        #[arg(long, default_value_t = DEFAULT_POWER_CAP)]
        power_cap: i64,
        /// Sample only words with nonnegative exponents.
        #[arg(long)]
        nonnegative: bool,
    },
    /// Emit a built-in fixture, or check it with --check.
    Fixture {
        /// Fixture name; `list` prints all names.
        name: String,
        #[arg(long)]
        check: bool,
    },
    /// Graphviz export of a graph, or of an action's finite factor with Min g marked.
    ExportDot(Pick),
}

/// A failure with its exit code and optional result document.
struct Failure {
    code: i32,
    message: String,
    doc: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::TooLarge { .. } | Error::NotFound(_) => EXIT_RESOURCE,
            Error::NotMedian { .. }
            | Error::Disconnected
            | Error::NotLoxodromic
            | Error::NotCommuting(_, _)
            | Error::NotFreeOnSample(_, _) => EXIT_PROPERTY,
            _ => EXIT_INPUT,
        };
        let doc = match &e {
            Error::NotMedian { triple, reason } => Some(json!({
                "median": false,
                "witness": [triple.0, triple.1, triple.2],
                "reason": reason,
            })),
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            doc,
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
        doc: None,
    }
}

/// Result document plus exit code (0, or 1 when a reported check failed).
struct Outcome {
    doc: Output,
    code: i32,
}

enum Output {
    Json(Value),
    Text(String),
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome {
            doc: Output::Json(v),
            code: EXIT_OK,
        }
    }

    fn checked(v: Value, passed: bool) -> Self {
        Outcome {
            doc: Output::Json(v),
            code: if passed { EXIT_OK } else { EXIT_PROPERTY },
        }
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Parse `argv` and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = execute(&cli);
    let (doc, code) = match result {
        Ok(o) => (Some(o.doc), o.code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            (f.doc.map(Output::Json), f.code)
        }
    };
    if let Some(doc) = doc {
        let text = match doc {
            Output::Json(v) => doc::to_canonical(&v),
            Output::Text(t) => t,
        };
        if let Err(e) = write_output(cli.output.as_deref(), &text) {
            eprintln!("error: cannot write output: {e}");
            return EXIT_INPUT;
        }
    }
    code
}

fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn read_text(path: Option<&Path>) -> std::result::Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| input_failure(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| input_failure(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_doc(path: Option<&Path>) -> std::result::Result<Value, Failure> {
    Ok(doc::parse(&read_text(path)?)?)
}

fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Validate(i) => {
            let w = doc::parse_wallspace(&read_doc(i.file.as_deref())?)?;
            Ok(Outcome::ok(json!({
                "valid": true,
                "wallspace": doc::wallspace_json(&w),
                "walls": w.walls().len(),
                "finite_separation": "by construction",
            })))
        }
        Command::Cubulate { input, cap } => {
            let w = doc::parse_wallspace(&read_doc(input.file.as_deref())?)?;
            let c = cubulate_capped(&w, *cap)?;
            Ok(Outcome::ok(doc::cubulation_json(&w, &c)))
        }
        Command::CheckMedian(i) => {
            let graph = doc::parse_graph(&read_doc(i.file.as_deref())?)?;
            match verify_median(&graph) {
                Ok(g) => Ok(Outcome::ok(doc::median_report_json(&g))),
                Err(Error::NotMedian { triple, reason }) => {
                    let name = |v: usize| graph.names[v].clone();
                    Ok(Outcome::checked(
                        json!({
                            "median": false,
                            "witness": [name(triple.0), name(triple.1), name(triple.2)],
                            "reason": reason,
                        }),
                        false,
                    ))
                }
                Err(Error::Disconnected) => Ok(Outcome::checked(
                    json!({"median": false, "reason": "graph is disconnected"}),
                    false,
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Walls { input, closure } => walls(input, *closure),
        Command::Classify(p) => classify_cmd(cli, p),
        Command::Minset(p) => minset_cmd(cli, p),
        Command::Axis { pick, from } => axis_cmd(pick, from.as_deref()),
        Command::Subdivide(i) => subdivide_cmd(i),
        Command::Factorize(i) => {
            let g = verify_median(&doc::parse_graph(&read_doc(i.file.as_deref())?)?)?;
            let factors: Vec<Value> = factorize(&g)
                .iter()
                .map(|f| {
                    json!({
                        "classes": f.classes,
                        "vertices": f.vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
                        "graph": doc::graph_json(&f.graph),
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({"basepoint": g.name(0), "factors": factors})))
        }
        Command::CommonPower { file, g, h } => {
            let (pc, gens) = read_action(file.as_deref())?;
            let gi = find_generator(&gens, g)?;
            let hi = find_generator(&gens, h)?;
            Ok(Outcome::ok(common_power_json(&pc, gi, hi, cli.max_m)?))
        }
        Command::NormCheck {
            file,
            bound,
            power_cap,
            nonnegative,
        } => {
            let (pc, gens) = read_action(file.as_deref())?;
            let action = build_action(pc, gens)?;
            let sample = if *nonnegative {
                nonnegative_sample(action.rank(), *bound)
            } else {
                default_sample(action.rank(), *bound)
            };
            let report = certify_discrete_norm(&action, &sample, *power_cap)?;
            eprint!("{}", report.summary());
            Ok(Outcome::checked(report.to_json(), report.passes()))
        }
        Command::Fixture { name, check } => fixture_cmd(cli, name, *check),
        Command::ExportDot(p) => {
            let v = read_doc(p.file.as_deref())?;
            if v.get("complex").is_some() {
                let (pc, gens) = doc::parse_action(&v)?;
                let marked = match &p.generator {
                    Some(n) => minset(&pc, find_generator(&gens, n)?).finite_part,
                    None => Vec::new(),
                };
                Ok(Outcome {
                    doc: Output::Text(crate::dot::to_dot(&pc.finite, &marked)),
                    code: EXIT_OK,
                })
            } else {
                let g = verify_median(&doc::parse_graph(&v)?)?;
                Ok(Outcome {
                    doc: Output::Text(crate::dot::to_dot(&g, &[])),
                    code: EXIT_OK,
                })
            }
        }
    }
}

fn read_action(path: Option<&Path>) -> std::result::Result<(ProductComplex, Vec<(String, ProductIsometry)>), Failure> {
    Ok(doc::parse_action(&read_doc(path)?)?)
}

fn find_generator<'a>(gens: &'a [(String, ProductIsometry)], name: &str) -> std::result::Result<&'a ProductIsometry, Failure> {
    gens.iter()
        .find(|(n, _)| n == name)
        .map(|(_, g)| g)
        .ok_or_else(|| input_failure(format!("no generator named `{name}`")))
}

fn picked(gens: Vec<(String, ProductIsometry)>, pick: &Pick) -> std::result::Result<Vec<(String, ProductIsometry)>, Failure> {
    match &pick.generator {
        Some(n) => Ok(vec![(n.clone(), find_generator(&gens, n)?.clone())]),
        None => Ok(gens),
    }
}

fn walls(input: &Input, closure: bool) -> CmdResult {
    let v = read_doc(input.file.as_deref())?;
    let graph_doc = match v.get("graph") {
        Some(Value::String(rel)) => {
            let base = input.file.as_deref().and_then(Path::parent).unwrap_or(Path::new("."));
            read_doc(Some(&base.join(rel)))?
        }
        Some(inline) => inline.clone(),
        None => return Err(input_failure("subalgebra document needs a `graph` field")),
    };
    let g = verify_median(&doc::parse_graph(&graph_doc)?)?;
    let members = doc::parse_members(&g, &v)?;
    let y = if closure {
        subalgebra_closure(&g, &members)?
    } else {
        Subalgebra::new(&g, &members)?
    };
    let verdict = check_lemma_agree(&y)?;
    let witness = verdict.witness.as_ref().map(|(origin, w)| {
        json!({
            "only_in": format!("{origin:?}").to_lowercase(),
            "wall": doc::walls_json(&g, std::slice::from_ref(w))[0],
        })
    });
    Ok(Outcome::checked(
        json!({
            "members": y.members().iter().map(|&m| g.name(m)).collect::<Vec<_>>(),
            "induced": doc::walls_json(&g, &verdict.induced),
            "intrinsic": doc::walls_json(&g, &verdict.intrinsic),
            "agree": verdict.holds,
            "witness": witness,
        }),
        verdict.holds,
    ))
}

fn window_for(cli: &Cli, pc: &ProductComplex, g: &ProductIsometry) -> i64 {
    cli.window.unwrap_or_else(|| default_window(pc, g))
}

/// Window cross-check of the closed-form norm and minset.
fn window_check(pc: &ProductComplex, g: &ProductIsometry, radius: i64) -> (bool, Value) {
    let m = minset(pc, g);
    let (best, at) = window_min(pc, g, radius);
    let mut expected = m.enumerate_window(radius);
    expected.sort();
    let mut at = at;
    at.sort();
    let ok = best == m.norm && at == expected;
    (ok, json!({"radius": radius, "window_min": doc::int(&best), "agrees": ok}))
}

fn classify_cmd(cli: &Cli, pick: &Pick) -> CmdResult {
    let (pc, gens) = read_action(pick.file.as_deref())?;
    let mut all_ok = true;
    let mut out = serde_json::Map::new();
    for (name, g) in picked(gens, pick)? {
        let c = classify(&pc, &g)?;
        let verified = c.verify(&pc, &g);
        let (window_ok, window) = window_check(&pc, &g, window_for(cli, &pc, &g));
        all_ok &= verified.is_ok() && window_ok;
        let mut record = doc::classification_json(&pc, &c);
        record["norm"] = doc::int(&translation_length(&pc, &g));
        record["witness_verified"] = json!(verified.is_ok());
        record["window"] = window;
        out.insert(name, record);
    }
    Ok(Outcome::checked(Value::Object(out), all_ok))
}

fn minset_cmd(cli: &Cli, pick: &Pick) -> CmdResult {
    let (pc, gens) = read_action(pick.file.as_deref())?;
    let mut all_ok = true;
    let mut out = serde_json::Map::new();
    for (name, g) in picked(gens, pick)? {
        let m = minset(&pc, &g);
        let (ok, window) = window_check(&pc, &g, window_for(cli, &pc, &g));
        all_ok &= ok;
        let mut record = doc::minset_json(&pc, &m);
        record["window"] = window;
        out.insert(name, record);
    }
    Ok(Outcome::checked(Value::Object(out), all_ok))
}

fn parse_from(pc: &ProductComplex, s: &str) -> std::result::Result<crate::grid::Point, Failure> {
    let (vertex, coords) = s.split_once(':').unwrap_or((s, ""));
    let finite = pc
        .finite
        .index_of(vertex)
        .ok_or_else(|| input_failure(format!("unknown vertex `{vertex}`")))?;
    let grid = coords
        .split(',')
        .filter(|c| !c.is_empty())
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| input_failure(format!("bad coordinate `{c}`"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if grid.len() != pc.grid_rank {
        return Err(input_failure(format!("expected {} grid coordinates", pc.grid_rank)));
    }
    Ok(crate::grid::Point { finite, grid })
}

fn axis_cmd(pick: &Pick, from: Option<&str>) -> CmdResult {
    let (pc, gens) = read_action(pick.file.as_deref())?;
    let mut all_ok = true;
    let mut out = serde_json::Map::new();
    for (name, g) in picked(gens, pick)? {
        let path = match from {
            Some(s) => axis_from(&pc, &g, &parse_from(&pc, s)?)?,
            None => axis_of(&pc, &g)?,
        };
        let verified = path.verify(&pc, &g, 3);
        all_ok &= verified.is_ok();
        let mut record = doc::axis_json(&pc, &path);
        record["length"] = json!(path.steps.len() - 1);
        record["verified_periods"] = json!(3);
        record["verified"] = json!(verified.is_ok());
        out.insert(name, record);
    }
    Ok(Outcome::checked(Value::Object(out), all_ok))
}

fn subdivide_cmd(input: &Input) -> CmdResult {
    let v = read_doc(input.file.as_deref())?;
    if v.get("complex").is_some() {
        let (pc, gens) = doc::parse_action(&v)?;
        let isos: Vec<ProductIsometry> = gens.iter().map(|(_, g)| g.clone()).collect();
        let sub = pc.subdivide(&isos)?;
        let named: Vec<(String, ProductIsometry)> = gens.iter().map(|(n, _)| n.clone()).zip(sub.isometries.clone()).collect();
        return Ok(Outcome::ok(doc::action_json(&sub.complex, &named)));
    }
    let g = verify_median(&doc::parse_graph(&v)?)?;
    let sub = subdivide(&g)?;
    Ok(Outcome::ok(json!({
        "graph": doc::graph_json(&sub.graph),
        "cubes": doc::cubes_json(&g, &sub.cubes),
        "counts_by_dim": sub.cubes.counts_by_dim(),
        "embedding": (0..g.len()).map(|v| json!([g.name(v), sub.graph.name(sub.embedding[v])])).collect::<Vec<_>>(),
    })))
}

fn common_power_json(
    pc: &ProductComplex,
    g: &ProductIsometry,
    h: &ProductIsometry,
    max_m: Option<u32>,
) -> std::result::Result<Value, Error> {
    let bound = max_m.unwrap_or_else(|| default_max_m(h));
    let r = common_min_power(pc, g, h, bound)?;
    Ok(json!({
        "m": r.m,
        "max_m": bound,
        "witness": doc::named_point(&pc.finite, &r.witness),
        "empty_below": r.empty_below,
    }))
}

fn fixture_cmd(cli: &Cli, name: &str, check: bool) -> CmdResult {
    if name == "list" {
        return Ok(Outcome::ok(json!(FIXTURE_NAMES)));
    }
    let f = fixture(name).ok_or_else(|| input_failure(format!("unknown fixture `{name}`; try `fixture list`")))?;
    if !check {
        return Ok(Outcome::ok(doc::action_json(&f.complex, &f.generators)));
    }
    if name == "paper-example" {
        let (report, ok) = check_example(cli, &f)?;
        return Ok(Outcome::checked(report, ok));
    }
    let mut all_ok = true;
    let mut out = serde_json::Map::new();
    for (n, g) in &f.generators {
        let c = classify(&f.complex, g)?;
        let verified = c.verify(&f.complex, g).is_ok();
        let (window_ok, window) = window_check(&f.complex, g, window_for(cli, &f.complex, g));
        all_ok &= verified && window_ok;
        out.insert(
            n.clone(),
            json!({"kind": c.kind(), "witness_verified": verified, "window": window}),
        );
    }
    Ok(Outcome::checked(Value::Object(out), all_ok))
}

/// The Example pipeline: both generators loxodromic, `Min g ∩ Min h = ∅`,
/// `Min g ∩ Min h² ≠ ∅`, common power 2, and the norm certificate.
fn check_example(cli: &Cli, f: &Fixture) -> std::result::Result<(Value, bool), Error> {
    let pc = &f.complex;
    let g = f.generator("g").unwrap();
    let h = f.generator("h").unwrap();
    let kinds = [classify(pc, g)?.kind(), classify(pc, h)?.kind()];
    let mg = minset(pc, g);
    let mh = minset(pc, h);
    let mh2 = minset(pc, &h.power(2));
    let first = intersect(&mg, &mh);
    let second = intersect(&mg, &mh2);
    let power = common_power_json(pc, g, h, cli.max_m)?;
    let action = build_action(pc.clone(), f.generators.clone())?;
    // g h⁻¹ has order two, so the sample is the cone of nonnegative words.
    let sample = nonnegative_sample(2, 3);
    let report = certify_discrete_norm(&action, &sample, DEFAULT_POWER_CAP)?;
    let names = |vs: &[usize]| -> Vec<&str> { vs.iter().map(|&v| pc.finite.name(v)).collect() };
    let claims = [
        ("g and h commute", g.commutes_with(h)?),
        ("g and h are loxodromic", kinds == ["loxodromic", "loxodromic"]),
        ("Min g is {00,11} x Z", names(&mg.finite_part) == ["00", "11"] && mg.grid_part.enumerate_box(3).len() == 7),
        ("Min h is {01,10} x Z", names(&mh.finite_part) == ["01", "10"] && mh.grid_part.enumerate_box(3).len() == 7),
        ("Min g and Min h are disjoint", first.is_none()),
        ("Min g meets Min h^2", second.is_some()),
        ("common power is 2", power["m"] == json!(2)),
        ("discrete norm certified", report.passes()),
    ];
    let ok = claims.iter().all(|(_, c)| *c);
    let doc = json!({
        "claims": claims.iter().map(|(c, v)| json!({"claim": c, "holds": v})).collect::<Vec<_>>(),
        "classification": {"g": kinds[0], "h": kinds[1]},
        "min_g": doc::minset_json(pc, &mg),
        "min_h": doc::minset_json(pc, &mh),
        "min_g_and_min_h": first.map(|p| doc::named_point(&pc.finite, &p)),
        "min_g_and_min_h2": second.map(|p| doc::named_point(&pc.finite, &p)),
        "common_power": power,
        "norm_check_passes": report.passes(),
        "holds": ok,
    });
    Ok((doc, ok))
}
