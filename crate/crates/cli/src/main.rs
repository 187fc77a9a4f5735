//! `realflow`: command-line front end for the realflow library.
//!
//! Exit status is 0 when every check passes, 1 when a mathematical check fails
//! (a witness is printed) and 2 on usage or configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use realflow::arrangement::Region;
use realflow::braid::{enumerate_sign_patterns, pattern_table, BraidType};
use realflow::certify::{certify, CertifyConfig, CertifyReport, FlowSource};
use realflow::charge::{
    charge_equivariance_check, hyperboloid_form, hyperboloid_param, kronecker_constant, level_form, rank2_charge,
};
use realflow::linalg::jacobi_eigen;
use realflow::render::{render_affine_rank3, render_hyperbolic_rank3, render_rank2, RenderOptions};
use realflow::{catalog, CoxeterSystem, Exec, Graph, GraphType};

const REPORT_SCHEMA: &str = "realflow.report.v1";

type BoxError = Box<dyn std::error::Error>;

#[derive(Parser, Debug)]
#[command(name = "realflow", version, about = "Real flows and central charges on Coxeter arrangements")]
struct Cli {
    /// Run every inner loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the type, Cartan matrix, determinant and adjugate of a graph.
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate the alcoves, walls and flats of a ball in the arrangement.
    Region {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check that a flow gives a real variation on a region.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// bruhat, random:<seed> or file:<path>
        #[arg(long, default_value = "bruhat")]
        flow: FlowSource,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on wall-vanishing residuals.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 8)]
        max_loop_len: usize,
        #[arg(long, default_value_t = 200)]
        max_walls: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the sign patterns for which a rank-two braid relation holds.
    BraidTable {
        #[arg(long = "type", default_value = "A2")]
        ty: BraidType,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the closed-form charge identities.
    ParamCheck {
        /// Edge multiplicity of the two-vertex graph K_m.
        #[arg(long, conflicts_with_all = ["catalog", "graph"])]
        m: Option<f64>,
        #[command(flatten)]
        graph: OptGraphArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Draw a rank-two level or a rank-three arrangement as SVG.
    Render {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Overlay a flow: bruhat, random:<seed> or file:<path>
        #[arg(long)]
        flow: Option<FlowSource>,
        /// Half-width of the plotted square (rank two).
        #[arg(long, default_value_t = 3.0)]
        x_range: f64,
        /// Height bound on the roots marked on the level (rank two).
        #[arg(long, default_value_t = 6)]
        root_radius: usize,
        #[arg(long)]
        svg: PathBuf,
        #[command(flatten)]
        style: StyleArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphArgs {
    /// Catalog name such as `A_tilde:2` or `K:3`.
    #[arg(long)]
    catalog: Option<String>,
    /// Graph description in JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptGraphArgs {
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StyleArgs {
    #[arg(long, default_value_t = 1000.0)]
    size: f64,
    #[arg(long, default_value_t = 1.5)]
    stroke_width: f64,
    #[arg(long)]
    wall_color: Option<String>,
    #[arg(long)]
    alcove_fill: Option<String>,
    #[arg(long)]
    arrow_color: Option<String>,
    #[arg(long)]
    level_color: Option<String>,
    #[arg(long)]
    cone_color: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    Rank2,
    Affine,
    Hyperbolic,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph, BoxError> {
        load_graph(self.catalog.as_deref(), self.graph.as_deref())
    }

    fn echo(&self) -> Value {
        json!({ "catalog": self.catalog, "graph_file": self.graph })
    }
}

fn load_graph(name: Option<&str>, file: Option<&Path>) -> Result<Graph, BoxError> {
    match (name, file) {
        (Some(name), _) => Ok(catalog::parse(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Ok(Graph::from_json_str(&text)?)
        }
        (None, None) => Err("a graph is required (--catalog or --graph)".into()),
    }
}

impl StyleArgs {
    fn options(&self) -> RenderOptions {
        let mut o = RenderOptions { size: self.size, stroke_width: self.stroke_width, ..Default::default() };
        let set = |slot: &mut String, v: &Option<String>| {
            if let Some(v) = v {
                slot.clone_from(v);
            }
        };
        set(&mut o.wall_color, &self.wall_color);
        set(&mut o.alcove_fill, &self.alcove_fill);
        set(&mut o.arrow_color, &self.arrow_color);
        set(&mut o.level_color, &self.level_color);
        set(&mut o.cone_color, &self.cone_color);
        o
    }
}

fn write_report(path: Option<&Path>, command: &str, config: Value, result: impl Serialize) -> Result<(), BoxError> {
    let Some(path) = path else { return Ok(()) };
    let doc = json!({
        "schema": REPORT_SCHEMA,
        "command": command,
        "config": config,
        "result": result,
    });
    std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(())
}

fn fmt_rows(rows: &[Vec<i64>]) -> String {
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            format!("  [{}]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_classify(graph: &GraphArgs, json_out: Option<&Path>, exec: Exec) -> Result<bool, BoxError> {
    let g = graph.load()?;
    let ty = g.classify_with(exec)?;
    let gcm = g.gcm();
    let adj = gcm.adjugate();
    println!("graph: {} ({} vertices)", g.name(), g.rank());
    println!("type: {ty}");
    println!("gcm:\n{}", fmt_rows(&gcm.matrix().rows()));
    println!("det: {}", gcm.det());
    println!("adjugate:\n{}", fmt_rows(&adj.rows()));
    if let GraphType::Affine { delta } = &ty {
        println!("delta: {delta:?}");
    }
    write_report(
        json_out,
        "classify",
        graph.echo(),
        json!({
            "graph": g.to_json(),
            "classification": ty,
            "gcm": gcm.matrix().rows(),
            "det": gcm.det(),
            "adjugate": adj.rows(),
        }),
    )?;
    Ok(true)
}

fn cmd_region(graph: &GraphArgs, radius: usize, json_out: Option<&Path>, exec: Exec) -> Result<bool, BoxError> {
    let region = Region::enumerate_with(CoxeterSystem::new(graph.load()?), radius, exec)?;
    let report = region.report();
    println!("graph: {} ({})", region.system().graph().name(), region.graph_type());
    println!("radius: {radius}");
    println!("alcoves: {}", region.len());
    println!("walls: {} ({} interior)", region.walls().len(), region.interior_walls().count());
    println!("flats: {} ({} complete)", region.flats().len(), region.complete_flats().count());
    write_report(json_out, "region", json!({ "graph": graph.echo(), "radius": radius }), report)?;
    Ok(true)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn print_certificate(rep: &CertifyReport) {
    println!("graph: {} ({}), radius {}", rep.graph, rep.graph_type, rep.radius);
    println!("alcoves: {}, interior walls: {}", rep.alcoves, rep.interior_walls);
    if let Some(p) = &rep.positivity {
        println!();
        println!("{:<24} {:>14}  result", "alcove", "min pairing");
        for a in &p.alcoves {
            let word = realflow::Word(a.word.clone()).to_string();
            println!("{word:<24} {:>14.6e}  {}", a.min_pairing, mark(a.pass));
        }
        println!();
    }
    let rows = [
        (
            "flats",
            format!("{} complete, {} invalid", rep.flow.complete_flats, rep.flow.invalid_flats.len()),
            rep.flow.pass,
        ),
        (
            "matsumoto",
            format!("{} elements, {} failures", rep.matsumoto.elements, rep.matsumoto.failures.len()),
            rep.matsumoto.pass,
        ),
        (
            "positivity",
            rep.positivity
                .as_ref()
                .map_or("skipped (flow invalid)".to_string(), |p| format!("min pairing {:.6e}", p.min_pairing)),
            rep.positivity.as_ref().is_some_and(|p| p.pass),
        ),
        (
            "wall vanishing",
            format!("{} walls, max residual {:.3e}", rep.walls.checked, rep.walls.max_residual),
            rep.walls.pass,
        ),
        ("loops", format!("{} loops of length <= {}", rep.loops.checked, rep.loops.max_len), rep.loops.pass),
    ];
    for (name, detail, ok) in rows {
        println!("{name:<16} {:<4}  {detail}", mark(ok));
    }
    println!("overall          {}", mark(rep.pass));
}

/// The first failure of each failing section, for stderr.
fn witness(rep: &CertifyReport) -> Value {
    let mut w = serde_json::Map::new();
    if let Some(f) = rep.flow.invalid_flats.first() {
        w.insert("flat".into(), json!(f));
    }
    if let Some(f) = rep.matsumoto.failures.first() {
        w.insert("matsumoto".into(), json!(f));
    }
    if let Some(f) = rep.positivity.as_ref().and_then(|p| p.failures().next()) {
        w.insert("positivity".into(), json!(f));
    }
    if let Some(f) = rep.walls.failures.first() {
        w.insert("wall".into(), json!(f));
    }
    if let Some(f) = rep.loops.failures.first() {
        w.insert("loop".into(), json!(f));
    }
    Value::Object(w)
}

#[allow(clippy::too_many_arguments)]
fn cmd_certify(
    graph: &GraphArgs,
    radius: usize,
    flow: &FlowSource,
    samples: usize,
    seed: u64,
    tol: f64,
    max_loop_len: usize,
    max_walls: usize,
    json_out: Option<&Path>,
    exec: Exec,
) -> Result<bool, BoxError> {
    if samples == 0 {
        return Err("--samples must be positive".into());
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err("--tol must be positive".into());
    }
    let region = Region::enumerate_with(CoxeterSystem::new(graph.load()?), radius, exec)?;
    let assignment = flow.build(&region)?;
    let cfg = CertifyConfig { samples, seed, tol, max_loop_len, max_walls, exec, ..Default::default() };
    let rep = certify(&assignment, &cfg)?;
    print_certificate(&rep);
    let config = json!({ "graph": graph.echo(), "radius": radius, "flow": flow, "certify": cfg });
    write_report(json_out, "certify", config, &rep)?;
    if !rep.pass {
        eprintln!("witness: {}", serde_json::to_string(&witness(&rep))?);
    }
    Ok(rep.pass)
}

fn cmd_braid_table(ty: BraidType, json_out: Option<&Path>) -> Result<bool, BoxError> {
    let patterns = enumerate_sign_patterns(ty);
    print!("{}", pattern_table(ty, &patterns));
    write_report(
        json_out,
        "braid_table",
        json!({ "type": ty }),
        json!({ "count": patterns.len(), "patterns": patterns }),
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct Rank2Check {
    m: f64,
    kappa: f64,
    trials: usize,
    max_residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct HyperboloidCheck {
    eigenvalues: Vec<f64>,
    scales: Vec<f64>,
    trials: usize,
    max_residual: f64,
    pass: bool,
}

fn check_rank2(m: f64, trials: usize, seed: u64, tol: f64) -> Result<Rank2Check, BoxError> {
    let kappa = kronecker_constant(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = rng.gen_range(-3.0..=3.0);
        let (z1, z2) = rank2_charge(m, x)?;
        worst = worst.max((z1 * z1 + m * z1 * z2 + z2 * z2 - 1.0).abs());
    }
    Ok(Rank2Check { m, kappa, trials, max_residual: worst, pass: worst < tol })
}

/// Scales are the square roots of the Cartan eigenvalue magnitudes, with the
/// single negative eigenvalue last.
fn check_hyperboloid(g: &Graph, trials: usize, seed: u64, tol: f64) -> Result<HyperboloidCheck, BoxError> {
    let rows: Vec<Vec<f64>> = g.gcm().matrix().rows().iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let (eig, _) = jacobi_eigen(&rows).ok_or("Cartan matrix did not diagonalize")?;
    let negative = eig.iter().filter(|&&e| e < 0.0).count();
    if negative != 1 {
        return Err(format!("hyperboloid check needs exactly one negative eigenvalue, found {negative}").into());
    }
    let scales: Vec<f64> = eig.iter().map(|e| e.abs().sqrt()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let sigma: Vec<f64> = (1..scales.len()).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let x = hyperboloid_param(&scales, &sigma)?;
        worst = worst.max((hyperboloid_form(&scales, &x) + 1.0).abs());
    }
    Ok(HyperboloidCheck { eigenvalues: eig, scales, trials, max_residual: worst, pass: worst < tol })
}

fn cmd_param_check(
    m: Option<f64>,
    graph: &OptGraphArgs,
    trials: usize,
    seed: u64,
    tol: f64,
    json_out: Option<&Path>,
) -> Result<bool, BoxError> {
    if let Some(m) = m {
        let r = check_rank2(m, trials, seed, tol)?;
        println!("K_{m}: kappa = {:.15}", r.kappa);
        println!(
            "Z1^2 + m Z1 Z2 + Z2^2 = 1 over {trials} points: max residual {:.3e} ({})",
            r.max_residual,
            mark(r.pass)
        );
        write_report(json_out, "param_check", json!({ "m": m, "trials": trials, "seed": seed, "tol": tol }), &r)?;
        return Ok(r.pass);
    }
    let g = load_graph(graph.catalog.as_deref(), graph.graph.as_deref())?;
    let ty = g.classify()?;
    if !ty.is_affine_or_hyperbolic() {
        return Err(format!("{} is {ty}; param-check needs --m or an affine or hyperbolic graph", g.name()).into());
    }
    let sys = CoxeterSystem::new(g.clone());
    let qf = level_form(&sys)?;
    let eq = charge_equivariance_check(&sys, &qf, trials, seed)?;
    println!("{} ({ty})", g.name());
    println!(
        "equivariance over {trials} trials: pairing {:.3e}, level {:.3e} ({})",
        eq.max_pairing_error,
        eq.max_level_error,
        mark(eq.pass)
    );
    let hyp = if ty == GraphType::Hyperbolic {
        let h = check_hyperboloid(&g, trials, seed, tol.max(1e-8))?;
        println!("hyperboloid identity: scales {:?}, max residual {:.3e} ({})", h.scales, h.max_residual, mark(h.pass));
        Some(h)
    } else {
        None
    };
    let pass = eq.pass && hyp.as_ref().is_none_or(|h| h.pass);
    let config = json!({ "graph": { "catalog": graph.catalog, "graph_file": graph.graph }, "trials": trials, "seed": seed, "tol": tol });
    write_report(json_out, "param_check", config, json!({ "equivariance": eq, "hyperboloid": hyp, "pass": pass }))?;
    Ok(pass)
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    kind: Kind,
    graph: &GraphArgs,
    radius: usize,
    flow: Option<&FlowSource>,
    x_range: f64,
    root_radius: usize,
    svg: &Path,
    style: &StyleArgs,
    exec: Exec,
) -> Result<bool, BoxError> {
    let g = graph.load()?;
    let opts = style.options();
    let sys = CoxeterSystem::new(g);
    let doc = match kind {
        Kind::Rank2 => {
            let r = render_rank2(&sys, x_range, root_radius, &opts)?;
            println!("level curve with {} root dots", r.dots);
            r.doc
        }
        Kind::Affine | Kind::Hyperbolic => {
            let region = Region::enumerate_with(sys, radius, exec)?;
            let assignment = flow.map(|f| f.build(&region)).transpose()?;
            if matches!(kind, Kind::Affine) {
                let r = render_affine_rank3(&region, assignment.as_ref(), &opts)?;
                println!("{} alcoves, {} arrows", r.polygons, r.arrows);
                r.doc
            } else {
                let r = render_hyperbolic_rank3(&region, assignment.as_ref(), &opts)?;
                println!("{} alcoves, {} geodesics, {} arrows", r.centres.len(), r.geodesics.len(), r.arrows);
                r.doc
            }
        }
    };
    doc.write(svg).map_err(|e| format!("cannot write {}: {e}", svg.display()))?;
    println!("wrote {}", svg.display());
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, BoxError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.cmd {
        Command::Classify { graph, json } => cmd_classify(&graph, json.as_deref(), exec),
        Command::Region { graph, radius, json } => cmd_region(&graph, radius, json.as_deref(), exec),
        Command::Certify { graph, radius, flow, samples, seed, tol, max_loop_len, max_walls, json } => {
            cmd_certify(&graph, radius, &flow, samples, seed, tol, max_loop_len, max_walls, json.as_deref(), exec)
        }
        Command::BraidTable { ty, json } => cmd_braid_table(ty, json.as_deref()),
        Command::ParamCheck { m, graph, trials, seed, tol, json } => {
            if m.is_none() && graph.catalog.is_none() && graph.graph.is_none() {
                return Err("param-check needs --m, --catalog or --graph".into());
            }
            cmd_param_check(m, &graph, trials, seed, tol, json.as_deref())
        }
        Command::Render { kind, graph, radius, flow, x_range, root_radius, svg, style } => {
            cmd_render(kind, &graph, radius, flow.as_ref(), x_range, root_radius, &svg, &style, exec)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
