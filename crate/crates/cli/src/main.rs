//! `realdp`: JSON reports for lattice, graph, coordinate and invariant computations.

mod input;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use realdp::confgraphs::{
    build_graph, colored_automorphisms, hexagon_isometry, petersen_figure_a, petersen_figure_b, ColoredIncidenceGraph,
    HexPattern,
};
use realdp::dp1::{
    a2_squared_example, euler_heuristic, expected_block_matrix, find_star_configurations, table8_certify, table8_group,
    BasePoint, DP1Surface,
};
use realdp::dp4::{default_ambient, enumerate_strongly_minimal, wall_characteristic, DP4RealForm, PencilSpec};
use realdp::exactnum::DEFAULT_CONDUCTOR;
use realdp::explicitlines::{
    count_real_lines, count_real_tritangents, cubic_coordinates, cubic_lines, dp2_example_lines_in, dp2_orbit_report,
    TwistedRealStructure,
};
use realdp::fixtures::expected;
use realdp::invforms::{invariant_subspace, is_invariant, same_span, BinaryForm, PointGroup2D};
use realdp::minimality::{
    find_contractible_set, fixed_sublattice_rank, invariant_rank, is_strongly_minimal, lefschetz_euler, ActionContext,
};
use realdp::picard::{tritangent_trios, LatticeClass, PicardLattice};
use realdp::tables::{reproduce_table_with, Check, DEFAULT_BUDGET};
use realdp::weyl::{
    classify_fingerprint, close_group, fingerprint, involution_frames, real_components, reflection_product, Isometry,
};
use realdp::{Matrix, Rational};

use input::{int_matrix, json_arg, rational_vector};

const SCHEMA_VERSION: &str = "1.0";
const CONDUCTOR_VAR: &str = "REALDP_CONDUCTOR";

/// Bad arguments or inputs the library rejects; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage<E: fmt::Display>(context: &str) -> impl Fn(E) -> UsageError + '_ {
    move |e| UsageError(format!("{context}: {e}"))
}

#[derive(Parser)]
#[command(name = "realdp", version, about = "Exact computations on real del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, exceptional classes or tritangent trios of the Picard lattice.
    Lattice {
        #[arg(long)]
        degree: i64,
        #[arg(long, value_parser = ["roots", "lines", "trios"], default_value = "lines")]
        what: String,
    },
    /// Fingerprints of products of k orthogonal reflections.
    Frames {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Fingerprint of the product of reflections in the given roots.
    ClassifyInvolution {
        #[arg(long)]
        degree: i64,
        /// JSON array of root vectors, inline or as a file.
        #[arg(long)]
        roots: String,
    },
    /// Invariant rank and contractible sets for a group given by matrix generators.
    Minimal {
        #[arg(long)]
        degree: i64,
        /// JSON array of integer matrices (rows act on column vectors), inline or as a file.
        #[arg(long)]
        generators: String,
        /// Index of the generator that is the real structure.
        #[arg(long)]
        sigma: Option<usize>,
    },
    /// Colored incidence graph of exceptional classes for degree 5 or 6.
    Graph {
        #[arg(long)]
        degree: i64,
        /// A named pattern (split, fig_a, fig_b, fig_c on degree 6; id, fig_a, fig_b on
        /// degree 5) or a JSON array of orthogonal roots.
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        dot: bool,
    },
    /// Degree 4: strongly minimal subgroups or the characteristic of a pencil.
    Dp4(Dp4Args),
    /// Real lines and tritangent planes on the Fermat or Clebsch cubic.
    Cubic(CubicArgs),
    /// Lines of the degree 2 example and their orbits.
    Dp2Example {
        #[arg(long)]
        orbits: bool,
    },
    /// Basis of invariant binary forms of a planar point group.
    Invariants {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
    },
    /// Degree 1: singular fibers and star configurations.
    Dp1 {
        #[command(subcommand)]
        command: Dp1Command,
    },
    /// Reproduce one of the classification tables 1 to 7.
    Table {
        #[arg(long)]
        id: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "dp4_mode")]
struct Dp4Mode {
    #[arg(long)]
    enumerate_minimal: bool,
    /// JSON array of [a, b] eigenvalue pairs; entries are integers or "p/q" strings.
    #[arg(long)]
    characteristic: Option<String>,
}

#[derive(Args)]
struct Dp4Args {
    #[arg(long, default_value = "q31_02")]
    form: String,
    #[command(flatten)]
    mode: Dp4Mode,
}

#[derive(Args)]
#[group(required = true, multiple = true, id = "cubic_counts")]
struct CubicCounts {
    #[arg(long)]
    count_real_lines: bool,
    #[arg(long)]
    count_real_tritangents: bool,
}

#[derive(Args)]
struct CubicArgs {
    #[arg(long, value_parser = ["fermat", "clebsch"])]
    model: String,
    #[arg(long, value_parser = ["id", "t12", "t1234"], default_value = "id")]
    twist: String,
    #[command(flatten)]
    counts: CubicCounts,
}

#[derive(Subcommand)]
enum Dp1Command {
    /// Fiber classification and the Euler characteristic test.
    Rationality {
        /// Coefficients of f4 from x^4 down to y^4, inline JSON or a file.
        #[arg(long)]
        f4: String,
        /// Coefficients of f6 from x^6 down to y^6.
        #[arg(long)]
        f6: String,
        /// Also certify against a group row: Z/2, Z/4, Z/6, (Z/2)^2, D_4, D_6.
        #[arg(long)]
        row: Option<String>,
    },
    /// Star configurations of an order 3 element of type A_2^2.
    Star {
        /// Integer matrix of the element; defaults to the built-in example.
        #[arg(long)]
        generator: Option<String>,
    },
}

#[derive(Serialize)]
struct Report {
    schema_version: &'static str,
    command: String,
    inputs: Value,
    results: Value,
    checks: Vec<Check>,
}

enum Output {
    Report(Report),
    Text(String),
}

fn report(command: &str, inputs: Value, results: Value, checks: Vec<Check>) -> Output {
    Output::Report(Report {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        inputs,
        results,
        checks,
    })
}

fn lattice(degree: i64) -> Result<PicardLattice, UsageError> {
    PicardLattice::new(degree).map_err(usage("--degree"))
}

fn conductor() -> Result<u32, UsageError> {
    match std::env::var(CONDUCTOR_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| UsageError(format!("{CONDUCTOR_VAR}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_CONDUCTOR),
    }
}

fn classes(v: &[LatticeClass]) -> Value {
    json!(v.iter().map(|c| &c.0).collect::<Vec<_>>())
}

fn roots_arg(lat: &PicardLattice, raw: &str) -> Result<Vec<LatticeClass>, UsageError> {
    let rows = int_matrix("roots", &json_arg("roots", raw)?)?;
    if rows.iter().any(|r| r.len() != lat.rank()) {
        return Err(UsageError(format!("--roots: vectors must have {} entries", lat.rank())));
    }
    Ok(rows.into_iter().map(LatticeClass).collect())
}

fn rational_matrix(m: &Matrix<Rational>) -> Value {
    json!(m.rows_vec().iter().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn run(cli: Cli) -> Result<Output, UsageError> {
    match cli.command {
        Command::Lattice { degree, what } => {
            let lat = lattice(degree)?;
            let inputs = json!({"degree": degree, "what": what});
            let (results, checks) = match what.as_str() {
                "roots" => {
                    let ok = lat.roots().iter().all(|s| lat.dot(&s.0, &s.0) == -2 && lat.k_dot(&s.0) == 0);
                    (classes(lat.roots()), vec![Check::new("s.s = -2 and s.K = 0", json!(true), json!(ok), "definition:root")])
                }
                "lines" => {
                    let ok = lat.lines().iter().all(|e| lat.dot(&e.0, &e.0) == -1 && lat.k_dot(&e.0) == -1);
                    (classes(lat.lines()), vec![Check::new("e.e = e.K = -1", json!(true), json!(ok), "definition:line")])
                }
                _ => {
                    let trios = tritangent_trios(&lat).map_err(usage("--what trios"))?;
                    let k = lat.canonical();
                    let ok = trios.iter().all(|t| t[0].add(&t[1]).add(&t[2]) == k.scale(-1));
                    let v: Vec<Value> = trios.iter().map(|t| classes(t)).collect();
                    (json!(v), vec![Check::new("trio sums to -K", json!(true), json!(ok), "definition:tritangent")])
                }
            };
            Ok(report("lattice", inputs, results, checks))
        }
        Command::Frames { degree, k, budget } => {
            let lat = lattice(degree)?;
            let fs = involution_frames(&lat, k, budget).map_err(usage("frames"))?;
            let expected_trace = lat.r() as i64 - 2 * k as i64;
            let traces: Vec<i64> = fs.fingerprints.iter().map(|f| f.trace_kperp).collect();
            let rows: Vec<Value> = fs
                .fingerprints
                .iter()
                .map(|f| json!({"class": classify_fingerprint(degree, f), "fingerprint": f}))
                .collect();
            let checks = vec![Check::new(
                "trace on K-perp is r - 2k",
                json!(vec![expected_trace; traces.len()]),
                json!(traces),
                "definition:frame",
            )];
            let results = json!({"frames_examined": fs.frames_examined, "exhaustive": fs.exhaustive, "elements": rows});
            Ok(report("frames", json!({"degree": degree, "k": k, "budget": budget}), results, checks))
        }
        Command::ClassifyInvolution { degree, roots } => {
            let lat = lattice(degree)?;
            let roots = roots_arg(&lat, &roots)?;
            let g = reflection_product(&lat, &roots).map_err(usage("--roots"))?;
            let fp = fingerprint(&lat, &g);
            let results = json!({
                "class": classify_fingerprint(degree, &fp),
                "fingerprint": fp,
                "lefschetz_euler": lefschetz_euler(&g),
                "real_components": real_components(&g),
            });
            let checks = vec![Check::new(
                "squares to the identity",
                json!(true),
                json!(g.compose(&g).is_identity()),
                "definition:involution",
            )];
            Ok(report("classify-involution", json!({"degree": degree, "roots": classes(&roots)}), results, checks))
        }
        Command::Minimal { degree, generators, sigma } => {
            let lat = lattice(degree)?;
            let raw = json_arg("generators", &generators)?;
            let mats = raw
                .as_array()
                .ok_or_else(|| UsageError("--generators: expected an array of matrices".into()))?
                .iter()
                .map(|m| int_matrix("generators", m))
                .collect::<Result<Vec<_>, _>>()?;
            let gens = mats
                .iter()
                .map(|m| Isometry::from_rows(&lat, m.clone()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage("--generators"))?;
            let sigma_el = match sigma {
                Some(i) => Some(gens.get(i).cloned().ok_or_else(|| UsageError(format!("--sigma {i}: no such generator")))?),
                None => None,
            };
            let group = close_group(&lat, &gens, 1_000_000).map_err(usage("--generators"))?;
            let order = group.order();
            let ctx = ActionContext::new(lat, group, sigma_el).map_err(usage("--sigma"))?;
            let rank = invariant_rank(&ctx).map_err(usage("rank"))?;
            let fixed = fixed_sublattice_rank(&ctx);
            let results = json!({
                "group_order": order,
                "rank": rank,
                "strongly_minimal": is_strongly_minimal(&ctx).map_err(usage("rank"))?,
                "contractible_set": find_contractible_set(&ctx).map(|v| classes(&v)),
            });
            let checks = vec![Check::new("character formula equals fixed sublattice rank", json!(fixed), json!(rank), "definition:invariant-rank")];
            Ok(report("minimal", json!({"degree": degree, "generators": mats, "sigma": sigma}), results, checks))
        }
        Command::Graph { degree, sigma, dot } => {
            let lat = lattice(degree)?;
            let graph = graph_for(&lat, degree, &sigma)?;
            if dot {
                return Ok(Output::Text(graph.to_dot()));
            }
            let aut = colored_automorphisms(&graph);
            let results = json!({
                "graph": graph,
                "real_vertices": graph.real_count(),
                "automorphism_order": aut.order(),
                "automorphism_generators": aut.generators,
            });
            Ok(report("graph", json!({"degree": degree, "sigma": sigma}), results, vec![]))
        }
        Command::Dp4(args) => dp4(args),
        Command::Cubic(args) => cubic(args),
        Command::Dp2Example { orbits } => {
            let lines = dp2_example_lines_in(conductor()?).map_err(usage(CONDUCTOR_VAR))?;
            let mut results = json!({"lines": lines.iter().map(|l| l.name.clone()).collect::<Vec<_>>()});
            if orbits {
                let reports = [1, -1]
                    .into_iter()
                    .map(|w| dp2_orbit_report(&lines, w))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(usage("orbits"))?;
                results["orbits"] = json!(reports);
            }
            let row = &expected().degree_two_forms[0];
            let checks = vec![Check::new("number of lines", json!(row.lines), json!(lines.len()), &row.source)];
            Ok(report("dp2-example", json!({"orbits": orbits}), results, checks))
        }
        Command::Invariants { group, degree } => {
            let g = PointGroup2D::parse(&group).ok_or_else(|| UsageError(format!("--group {group}: expected zN or dN")))?;
            let basis = invariant_subspace(&g, degree);
            let vectors: Vec<Vec<i64>> = basis.iter().map(|f| f.integer_coeffs().expect("bases are integral")).collect();
            let mut checks = vec![Check::new(
                "every basis form is invariant",
                json!(true),
                json!(basis.iter().all(|f| is_invariant(&g, f))),
                "definition:invariant",
            )];
            let key = group.to_lowercase();
            for fam in expected().invariant_families.iter().filter(|f| f.group == key && f.degree == degree) {
                let span: Vec<BinaryForm> = fam.span.iter().map(|c| BinaryForm::from_ints(c)).collect();
                checks.push(Check::new(
                    format!("span equals {}", fam.family),
                    json!(true),
                    json!(same_span(&span, &basis)),
                    &fam.source,
                ));
            }
            let results = json!({
                "group": g.name(),
                "dimension": basis.len(),
                "basis": vectors,
                "forms": basis.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            });
            Ok(report("invariants", json!({"group": group, "degree": degree}), results, checks))
        }
        Command::Dp1 { command } => dp1(command),
        Command::Table { id, budget } => {
            let t = reproduce_table_with(id, budget).map_err(usage("--id"))?;
            let results = json!({"title": t.title, "rows": t.rows});
            Ok(report("table", json!({"id": id, "budget": budget}), results, t.checks))
        }
    }
}

fn graph_for(lat: &PicardLattice, degree: i64, sigma: &str) -> Result<ColoredIncidenceGraph, UsageError> {
    let g = match (degree, sigma) {
        (5, "id") => build_graph(lat, &Isometry::identity(lat.rank())),
        (5, "fig_a") => petersen_figure_a(lat),
        (5, "fig_b") => petersen_figure_b(lat),
        (6, name) if HexPattern::parse(name).is_some() => {
            let p = HexPattern::parse(name).unwrap();
            let s = hexagon_isometry(lat, &p.sigma()).map_err(usage("--sigma"))?;
            build_graph(lat, &s)
        }
        _ => {
            let roots = roots_arg(lat, sigma)?;
            let s = reflection_product(lat, &roots).map_err(usage("--sigma"))?;
            build_graph(lat, &s)
        }
    };
    g.map_err(usage("--sigma"))
}

fn dp4(args: Dp4Args) -> Result<Output, UsageError> {
    if let Some(raw) = args.mode.characteristic {
        let v = json_arg("characteristic", &raw)?;
        let pairs = v
            .as_array()
            .ok_or_else(|| UsageError("--characteristic: expected an array of [a, b] pairs".into()))?
            .iter()
            .map(|p| {
                let q = rational_vector("characteristic", p)?;
                match q.as_slice() {
                    [a, b] => Ok((a.clone(), b.clone())),
                    _ => Err(UsageError("--characteristic: each entry must be a pair".into())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let spec = PencilSpec { real_eigen_pairs: pairs };
        let xi = wall_characteristic(&spec).map_err(usage("--characteristic"))?;
        let sum: u32 = xi.iter().sum();
        let checks = vec![Check::new(
            "entries sum to the number of real eigenvalues",
            json!(spec.real_eigen_pairs.len()),
            json!(sum),
            "definition:characteristic",
        )];
        return Ok(report("dp4", json!({"characteristic": v}), json!({"characteristic": xi}), checks));
    }
    let form = DP4RealForm::named(&args.form).map_err(usage("--form"))?;
    let reports = enumerate_strongly_minimal(&form, &default_ambient(&form)).map_err(usage("--form"))?;
    let results = json!({"form": form.label, "sigma": form.sigma.to_string(), "subgroups": reports});
    Ok(report("dp4", json!({"form": args.form, "enumerate_minimal": true}), results, vec![]))
}

fn cubic(args: CubicArgs) -> Result<Output, UsageError> {
    let lines = cubic_lines(&args.model, conductor()?).map_err(usage(CONDUCTOR_VAR))?;
    let rs = TwistedRealStructure::named(&args.twist, cubic_coordinates(&args.model)).map_err(usage("--twist"))?;
    let mut results = serde_json::Map::new();
    let mut checks = Vec::new();
    if args.counts.count_real_lines {
        let n = count_real_lines(&lines, &rs).map_err(usage("--twist"))?;
        results.insert("real_lines".into(), json!(n));
        if args.model == "clebsch" {
            if let Some(row) = expected().clebsch_twists.iter().find(|r| r.twist == args.twist) {
                checks.push(Check::new("real lines", json!(row.lines), json!(n), &row.source));
            }
        }
    }
    if args.counts.count_real_tritangents {
        let n = count_real_tritangents(&lines, &rs).map_err(usage("--twist"))?;
        results.insert("real_tritangents".into(), json!(n));
    }
    let inputs = json!({"model": args.model, "twist": args.twist});
    Ok(report("cubic", inputs, Value::Object(results), checks))
}

fn dp1(command: Dp1Command) -> Result<Output, UsageError> {
    match command {
        Dp1Command::Rationality { f4, f6, row } => {
            let c4 = rational_vector("f4", &json_arg("f4", &f4)?)?;
            let c6 = rational_vector("f6", &json_arg("f6", &f6)?)?;
            let s = DP1Surface::new(BinaryForm::from_rationals(&c4), BinaryForm::from_rationals(&c6)).map_err(usage("dp1"))?;
            let r = euler_heuristic(&s).map_err(usage("dp1"))?;
            let roots: Vec<Value> = r
                .fibers
                .iter()
                .map(|f| match &f.at {
                    BasePoint::Finite(iv) => json!({"lo": iv.lo.to_string(), "hi": iv.hi.to_string()}),
                    BasePoint::Infinity => json!("infinity"),
                })
                .collect();
            let kinds: Vec<String> = r.fibers.iter().map(|f| f.kind.to_string()).collect();
            let mut results = json!({
                "roots": roots,
                "kinds": kinds,
                "acnodes": r.acnodes,
                "crunodes": r.crunodes,
                "euler": r.euler,
                "verdict": r.verdict,
            });
            let mut checks = vec![Check::new(
                "euler is acnodes minus crunodes",
                json!(r.acnodes as i64 - r.crunodes as i64),
                json!(r.euler),
                "definition:euler",
            )];
            if let Some(name) = &row {
                let g = table8_group(name).ok_or_else(|| UsageError(format!("--row {name}: unknown group row")))?;
                let ok = table8_certify(&g, &s);
                results["certified"] = json!(ok);
                checks.push(Check::new("forms lie in the row's invariant families", json!(true), json!(ok), format!("table:8:{name}")));
            }
            let inputs = json!({"f4": s.f4().to_string(), "f6": s.f6().to_string(), "row": row});
            Ok(report("dp1 rationality", inputs, results, checks))
        }
        Dp1Command::Star { generator } => {
            let lat = lattice(1)?;
            let g = match &generator {
                Some(raw) => {
                    let rows = int_matrix("generator", &json_arg("generator", raw)?)?;
                    Isometry::from_rows(&lat, rows).map_err(usage("--generator"))?
                }
                None => a2_squared_example(&lat),
            };
            let r = find_star_configurations(&lat, &g).map_err(usage("--generator"))?;
            let results = json!({
                "fixed_classes": r.fixed_classes,
                "configurations": r.configurations.iter().map(|c| classes(&c.classes)).collect::<Vec<_>>(),
                "pairwise_asynchronized": r.pairwise_asynchronized,
                "block_matrix": rational_matrix(&r.block_matrix),
            });
            let checks = vec![
                Check::new("invariant exceptional classes", json!(12), json!(r.fixed_classes), "text:star:fixed-classes"),
                Check::new("configurations", json!(4), json!(r.configurations.len()), "text:star:configurations"),
                Check::new("pairwise asynchronized", json!(true), json!(r.pairwise_asynchronized), "text:star:asynchronized"),
                Check::new(
                    "block matrix",
                    rational_matrix(&expected_block_matrix()),
                    rational_matrix(&r.block_matrix),
                    "text:star:block-matrix",
                ),
            ];
            Ok(report("dp1 star", json!({"generator": g.rows()}), results, checks))
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Text(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            emit(&(serde_json::to_string_pretty(&r).expect("reports serialize") + "\n"));
            if r.checks.iter().all(|c| c.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
