//! `motivix`: decisions, convolution tables, motive accounting and the Fermat
//! sextic instance from the command line.
//!
//! Exit codes: 0 success or INDECOMPOSABLE, 2 SURVIVING_CANDIDATE or
//! UNDECIDED, 3 theorem hypothesis not met, 1 any other error.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use motivix::cmlat::{AbelianModel, Subset};
use motivix::corr::{conv_rosati, GridProjectors};
use motivix::decomp::{decide, probe_usability, probes_for, DecideMode, Status, Verdict};
use motivix::exact::{rat_to_string, Field, QuadInt};
use motivix::fermat::{
    build_c6_instance, coordinate_permutation, fermat_cubic_e, fermat_sextic, phi1, phi2, phi3, pullback,
    rep_membership, tau, weierstrass_e, CurveMorphism, Differential, PlaneCurve,
};
use motivix::json::{endo_json, quad_json, ModelFile};
use motivix::motcalc::{
    blowup_chain, ck_curve, ck_surface, cubic_rationality_ledger, hypersurface_ck, product_of_curves,
    projective_space, Center, MotiveExpr,
};
use motivix::{Error, Result};

use report::{apply_trace, digest, Report, Trace};

#[derive(Parser)]
#[command(name = "motivix", version, about = "Exact indecomposability checks for motives of C x C")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include wall-clock timing in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Prooftrace,
}

#[derive(Subcommand)]
enum Command {
    /// Decide indecomposability for a model file.
    Decide {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "prooftrace")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "steps")]
        trace: Trace,
        #[command(flatten)]
        out: Output,
    },
    /// Convolution values of every probe on every grid class.
    ConvTable {
        model: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Weight-graded motive dimensions.
    Motive {
        #[command(subcommand)]
        which: MotiveCmd,
    },
    /// The Fermat sextic computations.
    Fermat {
        #[command(subcommand)]
        which: FermatCmd,
    },
    /// Exponent and integrality queries on a model.
    Av {
        #[command(subcommand)]
        which: AvCmd,
    },
}

#[derive(Subcommand)]
enum MotiveCmd {
    Curve {
        #[arg(long)]
        g: u64,
        #[command(flatten)]
        out: Output,
    },
    Surface {
        #[arg(long)]
        b2: u64,
        #[arg(long)]
        rho: u64,
        #[arg(long, default_value_t = 0)]
        q: u64,
        #[command(flatten)]
        out: Output,
    },
    Product {
        #[arg(long)]
        g: u64,
        /// Do not refine the middle into the grid of transcendental blocks.
        #[arg(long)]
        unsplit: bool,
        #[command(flatten)]
        out: Output,
    },
    Hypersurface {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Blow up projective space (or a product of curves) along centres.
    Blowup {
        #[arg(long, default_value_t = 4)]
        ambient: u32,
        #[arg(long, default_value_t = 0)]
        points: usize,
        /// Genus of a curve centre; repeatable.
        #[arg(long = "curve")]
        curves: Vec<u64>,
        /// `b2,rho,q` of a surface centre; repeatable.
        #[arg(long = "surface", value_parser = parse_triple)]
        surfaces: Vec<(u64, u64, u64)>,
        /// Start from `M(C×C)` of this genus instead of projective space (ambient 2).
        #[arg(long)]
        product_genus: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Which surfaces of a resolution could carry the cubic's transcendental motive.
    CubicLedger {
        #[arg(long = "surface", value_parser = parse_triple)]
        surfaces: Vec<(u64, u64, u64)>,
        #[arg(long = "curve")]
        curves: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        points: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum FermatCmd {
    /// Pull back the invariant form of the target.
    Pullback {
        /// One of the three built-in maps.
        #[arg(long, conflicts_with = "morphism")]
        phi: Option<u8>,
        /// Precompose with a coordinate permutation, e.g. `2,1,3`.
        #[arg(long, value_parser = parse_perm)]
        sigma: Option<[usize; 3]>,
        /// JSON morphism file `{source, target, u, v}`.
        #[arg(long)]
        morphism: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Degrees of f1..f10.
    Degrees {
        #[command(flatten)]
        out: Output,
    },
    /// Assemble the g = 10 instance.
    Instance {
        #[arg(long)]
        decide: bool,
        #[arg(long, value_enum, default_value = "none")]
        trace: Trace,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum AvCmd {
    /// Exponents of atoms and of the given subsets (1-based, comma separated).
    Exponents {
        model: PathBuf,
        #[arg(long = "subset", value_parser = parse_subset)]
        subsets: Vec<Vec<usize>>,
        #[command(flatten)]
        out: Output,
    },
    /// Integrality of a matrix given as JSON rows of entries.
    Integral {
        model: PathBuf,
        #[arg(long)]
        endo: String,
        #[command(flatten)]
        out: Output,
    },
    /// The n_K >= 4 hypothesis.
    Hypothesis {
        model: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_triple(s: &str) -> std::result::Result<(u64, u64, u64), String> {
    let v: Vec<u64> = s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad number in {s:?}"))).collect::<std::result::Result<_, _>>()?;
    match v[..] {
        [a, b, c] => Ok((a, b, c)),
        [a, b] => Ok((a, b, 0)),
        _ => Err(format!("expected b2,rho[,q], got {s:?}")),
    }
}

fn parse_perm(s: &str) -> std::result::Result<[usize; 3], String> {
    let v: Vec<usize> = s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad index in {s:?}"))).collect::<std::result::Result<_, _>>()?;
    let mut sorted = v.clone();
    sorted.sort_unstable();
    if sorted != [1, 2, 3] {
        return Err(format!("{s:?} is not a permutation of 1,2,3"));
    }
    Ok([v[0], v[1], v[2]])
}

fn parse_subset(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad index in {s:?}"))).collect()
}

/// A command result: the JSON payload, its human rendering and the exit code.
struct Outcome {
    result: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Self {
        Outcome { result, text, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) => 3,
        _ => 1,
    }
}

fn read_model(path: &Path) -> Result<(AbelianModel, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Parse("model file is not UTF-8".into()))?;
    Ok((ModelFile::parse(&text)?.build()?, bytes))
}

fn dims_table(dims: &[u64]) -> String {
    let w: Vec<String> = (0..dims.len()).map(|k| format!("{k:>4}")).collect();
    let d: Vec<String> = dims.iter().map(|k| format!("{k:>4}")).collect();
    format!("weight {}\ndim    {}", w.join(""), d.join(""))
}

fn verdict_text(v: &Verdict, trace: Trace) -> String {
    let mode = match v.mode {
        DecideMode::Exhaustive => "exhaustive",
        DecideMode::Prooftrace => "prooftrace",
    };
    let mut out = format!("status: {}\nmode: {mode}\ng: {}\n", status_name(v.status), v.g);
    if let Some(s) = &v.stats {
        out.push_str(&format!(
            "candidates: {}\nsurvivors: {} ({} up to exchange)\n",
            s.nontrivial_candidates, s.survivors, s.survivor_orbits
        ));
    }
    if let Some(w) = &v.witness {
        out.push_str(&format!("witness: U={} V={} W={}\n", w.u, w.v, w.w));
    }
    if trace != Trace::None {
        for s in &v.steps {
            let probe = s.probe.map(|p| format!("[{p}] ")).unwrap_or_default();
            out.push_str(&format!("  {:?} {probe}{}\n", s.rule, s.note));
        }
    }
    out
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Indecomposable => "INDECOMPOSABLE",
        Status::SurvivingCandidate => "SURVIVING_CANDIDATE",
        Status::Undecided => "UNDECIDED",
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Indecomposable => 0,
        _ => 2,
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn cmd_decide(path: &Path, mode: Mode, trace: Trace) -> Result<(Outcome, Vec<u8>)> {
    let (m, bytes) = read_model(path)?;
    let mode = match mode {
        Mode::Exhaustive => DecideMode::Exhaustive,
        Mode::Prooftrace => DecideMode::Prooftrace,
    };
    let v = decide(&m, mode)?;
    let code = status_code(v.status);
    Ok((Outcome { result: apply_trace(to_value(&v), trace), text: verdict_text(&v, trace), code }, bytes))
}

fn fmt_quad(q: &QuadInt) -> String {
    if q.is_rational() {
        rat_to_string(&q.a)
    } else {
        format!("({q})")
    }
}

fn cmd_conv_table(path: &Path) -> Result<(Outcome, Vec<u8>)> {
    let (m, bytes) = read_model(path)?;
    let grids = GridProjectors::build(&m);
    let g = m.g();
    let mut rows = Vec::new();
    let mut text = String::from("probe  class  cell   value\n");
    for p in probes_for(&m) {
        let r = motivix::cmlat::rosati(&p.endo, &m);
        let usability = probe_usability(&m, &p)?;
        for (name, class) in [("theta", 0), ("a1", 1), ("a2", 2)] {
            for i in 0..g {
                for j in 0..g {
                    let x = match class {
                        0 => grids.theta(i, j),
                        1 => grids.a1(i, j),
                        _ => grids.a2(i, j),
                    };
                    let val = conv_rosati(&r, x);
                    let entries: Vec<String> = (0..g)
                        .flat_map(|a| (0..g).map(move |b| (a, b)))
                        .filter(|&(a, b)| !val[(a, b)].is_nil())
                        .map(|(a, b)| format!("{}*E({},{})", fmt_quad(&val[(a, b)]), a + 1, b + 1))
                        .collect();
                    let shown = if entries.is_empty() { "0".to_string() } else { entries.join(" + ") };
                    text.push_str(&format!("{:<6} {:<6} ({},{})  {}\n", p.label(), name, i + 1, j + 1, shown));
                    rows.push(json!({
                        "probe": p.label(),
                        "usability": usability,
                        "class": name,
                        "cell": [i + 1, j + 1],
                        "value": endo_json(&val),
                    }));
                }
            }
        }
    }
    Ok((Outcome::ok(json!({ "g": g, "rows": rows }), text), bytes))
}

fn motive_outcome(expr: &MotiveExpr, extra: Value, heading: &str) -> Outcome {
    let dims = expr.dims();
    let mut result = json!({ "expr": expr, "dims": dims, "total": expr.total_dim() });
    if let (Some(r), Value::Object(e)) = (result.as_object_mut(), extra) {
        r.extend(e);
    }
    Outcome::ok(result, format!("{heading}\n{}\n", dims_table(&dims)))
}

fn cmd_motive(which: &MotiveCmd) -> Result<Outcome> {
    Ok(match which {
        MotiveCmd::Curve { g, .. } => {
            let e = ck_curve(*g);
            motive_outcome(&e, json!({ "dim_h1": 2 * g }), &format!("M(C), genus {g}"))
        }
        MotiveCmd::Surface { b2, rho, q, .. } => {
            let e = ck_surface(*b2, *rho, *q)?;
            let tr = e.transcendental_dim();
            motive_outcome(&e, json!({ "dim_m2_tr": tr, "dim_m2_alg": rho }), &format!("M(S): M2_tr = {tr}"))
        }
        MotiveCmd::Product { g, unsplit, .. } => {
            let r = product_of_curves(*g, !unsplit);
            let text = format!(
                "M(CxC), genus {g}\n{}\nb2 = {}  NS = {}  M2_alg = {}  M2_tr = {}\n",
                dims_table(&r.dims),
                r.b2,
                r.ns_rank,
                r.dim_m2_alg,
                r.dim_m2_tr
            );
            Outcome::ok(to_value(&r), text)
        }
        MotiveCmd::Hypersurface { n, d, .. } => {
            let ck = hypersurface_ck(*n, *d)?;
            let check = ck.verify();
            let mut text = format!("hypersurface n = {n}, d = {d}, middle Betti {}\n", ck.middle_betti);
            let mut list = Vec::new();
            for (w, p) in ck.all() {
                let label = if w == *n { format!("pi_{w} = Delta - sum") } else { format!("pi_{w}") };
                text.push_str(&format!("  {label}: {p}\n"));
                list.push(json!({ "weight": w, "projector": p.to_string(), "middle": w == *n }));
            }
            text.push_str(&format!(
                "idempotent: {}  orthogonal: {}  sum = Delta: {}\n",
                check.idempotent, check.orthogonal, check.sums_to_diagonal
            ));
            Outcome::ok(json!({ "n": n, "d": d, "middle_betti": ck.middle_betti, "projectors": list, "verification": check }), text)
        }
        MotiveCmd::Blowup { ambient, points, curves, surfaces, product_genus, .. } => {
            let (start, ambient) = match product_genus {
                Some(g) => (product_of_curves(*g, true).expr, 2),
                None => (projective_space(*ambient), *ambient),
            };
            let mut centers = vec![Center::Point; *points];
            centers.extend(curves.iter().map(|&g| Center::Curve { g }));
            centers.extend(surfaces.iter().map(|&(b2, rho, q)| Center::Surface { b2, rho, q }));
            let r = blowup_chain(&start, ambient, &centers)?;
            let mut text = format!("start\n{}\n", dims_table(&r.start_dims));
            for part in &r.added {
                text.push_str(&format!("M{} ({} centre(s))\n{}\n", part.center_dim, part.count, dims_table(&part.dims)));
            }
            text.push_str(&format!("total\n{}\n", dims_table(&r.dims)));
            Outcome::ok(to_value(&r), text)
        }
        MotiveCmd::CubicLedger { surfaces, curves, points, .. } => {
            let l = cubic_rationality_ledger(surfaces, curves, *points)?;
            let mut text = format!("dim M4_tr(X) = {} (b4 = {}, rho2 = {})\n", l.dim_prim, l.b4, l.rho2);
            for s in &l.surfaces {
                text.push_str(&format!("  ({}, {}, {}): M2_tr = {}: {}\n", s.b2, s.rho, s.q, s.dim_tr, s.message));
            }
            text.push_str(&format!("{}\n", l.summary));
            Outcome::ok(to_value(&l), text)
        }
    })
}

fn motive_output(which: &MotiveCmd) -> &Output {
    match which {
        MotiveCmd::Curve { out, .. }
        | MotiveCmd::Surface { out, .. }
        | MotiveCmd::Product { out, .. }
        | MotiveCmd::Hypersurface { out, .. }
        | MotiveCmd::Blowup { out, .. }
        | MotiveCmd::CubicLedger { out, .. } => out,
    }
}

fn named_curve(name: &str, vars: (&str, &str)) -> Result<PlaneCurve> {
    Ok(match name {
        "C6" => fermat_sextic(),
        "E" => weierstrass_e(),
        "E'" => fermat_cubic_e(),
        eq => PlaneCurve::new(eq, vars.0, vars.1, eq)?,
    })
}

fn morphism_from_file(path: &Path) -> Result<(CurveMorphism, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_slice(&bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let field = |k: &str| {
        v.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("morphism file needs a string {k:?}")))
    };
    let source = named_curve(field("source")?, ("x", "y"))?;
    let target = named_curve(field("target")?, ("u", "v"))?;
    Ok((CurveMorphism::new("file", &source, &target, field("u")?, field("v")?)?, bytes))
}

fn cmd_fermat(which: &FermatCmd) -> Result<(Outcome, Vec<u8>)> {
    match which {
        FermatCmd::Pullback { phi, sigma, morphism, .. } => {
            let (base, bytes) = match (phi, morphism) {
                (_, Some(path)) => morphism_from_file(path)?,
                (Some(1), None) => (phi1(), b"phi1".to_vec()),
                (Some(2), None) => (phi2(), b"phi2".to_vec()),
                (Some(3), None) => (phi3(), b"phi3".to_vec()),
                (Some(k), None) => return Err(Error::InvalidInput(format!("--phi must be 1, 2 or 3, got {k}"))),
                (None, None) => return Err(Error::InvalidInput("give --phi or --morphism".into())),
            };
            let form_on_target: Differential = tau(&base);
            let f = match sigma {
                Some(s) => base.compose(&coordinate_permutation(*s)?)?,
                None => base,
            };
            let form = pullback(&f, &form_on_target)?;
            let rep = rep_membership(&form);
            let text = format!("{} * omega\nrepresentation: {rep:?}\n", form);
            Ok((Outcome::ok(json!({ "morphism": f.label, "form": form.to_string(), "rep": rep }), text), bytes))
        }
        FermatCmd::Degrees { .. } => {
            let inst = build_c6_instance()?;
            let degs: Vec<usize> = inst.report.morphisms.iter().map(|m| m.degree).collect();
            let mut text = degs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            text.push('\n');
            for m in &inst.report.degree_mismatches {
                text.push_str(&format!("note: {m}\n"));
            }
            let samples: Vec<Value> = inst
                .report
                .morphisms
                .iter()
                .map(|m| json!({ "index": m.index, "degree": m.degree, "reference": m.reference_degree, "oracle": m.degree_report }))
                .collect();
            let out = json!({ "degrees": degs, "mismatches": inst.report.degree_mismatches, "morphisms": samples });
            Ok((Outcome::ok(out, text), b"fermat-degrees".to_vec()))
        }
        FermatCmd::Instance { decide: run, trace, .. } => {
            let inst = build_c6_instance()?;
            let mut result = json!({ "instance": inst.report });
            let mut text = format!(
                "g = {}  exponents = {:?}\nfamily ranks = {:?}\ndim M2_tr = {}\n",
                inst.report.g, inst.report.exponents, inst.report.family_ranks, inst.report.dim_transcendental
            );
            for m in &inst.report.degree_mismatches {
                text.push_str(&format!("note: {m}\n"));
            }
            let mut code = 0;
            if *run {
                let v = decide(&inst.model, DecideMode::Prooftrace)?;
                code = status_code(v.status);
                text.push_str(&verdict_text(&v, *trace));
                result["verdict"] = apply_trace(to_value(&v), *trace);
            }
            Ok((Outcome { result, text, code }, b"fermat-instance".to_vec()))
        }
    }
}

fn fermat_output(which: &FermatCmd) -> &Output {
    match which {
        FermatCmd::Pullback { out, .. } | FermatCmd::Degrees { out } | FermatCmd::Instance { out, .. } => out,
    }
}

fn cmd_av(which: &AvCmd) -> Result<(Outcome, Vec<u8>)> {
    match which {
        AvCmd::Exponents { model, subsets, .. } => {
            let (m, bytes) = read_model(model)?;
            let g = m.g();
            let mut sets: Vec<Subset> = (0..g).map(Subset::singleton).collect();
            for s in subsets {
                if s.iter().any(|&i| i == 0 || i > g) {
                    return Err(Error::InvalidInput(format!("subset index out of 1..{g}")));
                }
                sets.push(Subset::from_indices(s.iter().map(|i| i - 1)));
            }
            let mut rows = Vec::new();
            let mut text = String::new();
            for k in sets {
                let n = m.exponent(k)?;
                text.push_str(&format!("n_{k} = {n}\n"));
                rows.push(json!({ "subset": k.iter().map(|i| i + 1).collect::<Vec<_>>(), "exponent": n }));
            }
            Ok((Outcome::ok(json!({ "exponents": rows }), text), bytes))
        }
        AvCmd::Integral { model, endo, .. } => {
            let (m, mut bytes) = read_model(model)?;
            bytes.extend_from_slice(endo.as_bytes());
            let v: Value = serde_json::from_str(endo).map_err(|e| Error::Parse(e.to_string()))?;
            let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be a JSON array of rows".into()))?;
            let parsed = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Parse("row must be an array".into()))?
                        .iter()
                        .map(|x| motivix::json::parse_quad(x, m.d()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let x = motivix::exact::Matrix::from_rows(parsed)?;
            let integral = m.is_integral(&x)?;
            let entries: Vec<Value> = x.entries().iter().map(quad_json).collect();
            Ok((Outcome::ok(json!({ "integral": integral, "entries": entries }), format!("integral: {integral}\n")), bytes))
        }
        AvCmd::Hypothesis { model, .. } => {
            let (m, bytes) = read_model(model)?;
            let h = m.theorem_hypothesis()?;
            let text = format!("hypothesis holds: {} subsets checked, minimum exponent {:?}\n", h.checked, h.min_exponent);
            Ok((Outcome::ok(to_value(&h), text), bytes))
        }
    }
}

fn av_output(which: &AvCmd) -> &Output {
    match which {
        AvCmd::Exponents { out, .. } | AvCmd::Integral { out, .. } | AvCmd::Hypothesis { out, .. } => out,
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("MOTIVIX_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidInput(format!("MOTIVIX_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<u8> {
    configure_threads()?;
    let start = Instant::now();
    let (outcome, input, out) = match &cli.command {
        Command::Decide { model, mode, trace, out } => {
            let (o, b) = cmd_decide(model, *mode, *trace)?;
            (o, b, out)
        }
        Command::ConvTable { model, out } => {
            let (o, b) = cmd_conv_table(model)?;
            (o, b, out)
        }
        Command::Motive { which } => (cmd_motive(which)?, Vec::new(), motive_output(which)),
        Command::Fermat { which } => {
            let (o, b) = cmd_fermat(which)?;
            (o, b, fermat_output(which))
        }
        Command::Av { which } => {
            let (o, b) = cmd_av(which)?;
            (o, b, av_output(which))
        }
    };
    let elapsed = start.elapsed();
    let args_blob = argv[1..].join("\u{0}");
    let report = Report {
        command: argv[1..].to_vec(),
        digest: digest(&[args_blob.as_bytes(), &input]),
        result: outcome.result,
        timing: out.timing.then_some(elapsed),
    };
    let json = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    let stdout = match &out.json {
        Some(p) if p.as_os_str() == "-" => json + "\n",
        Some(p) => {
            std::fs::write(p, json + "\n").map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            outcome.text
        }
        None => outcome.text,
    };
    emit(&stdout)?;
    Ok(outcome.code)
}

/// Writes to stdout; a closed pipe (`motivix … | head`) is not an error.
fn emit(text: &str) -> Result<()> {
    let mut lock = std::io::stdout().lock();
    match lock.write_all(text.as_bytes()).and_then(|_| lock.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::InvalidInput(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli, argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Hypothesis(_) = e {
                eprintln!("the theorem needs every proper exponent n_K to be at least 4");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
