use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use twohalf::closures::{
    cg_cut_from_direction, disjunctive_hull, facet_pair_closure, split_closure_family,
    two_halfspace_hull, verify_rank_ih, SplitDisjunction, SplitFamily,
};
use twohalf::corpus;
use twohalf::hull2d::{integer_feasible_2d, integer_hull_pointed_2d, Cone2};
use twohalf::io;
use twohalf::latfree::{classify_max_latfree_2d, helly_certificate, push_out, verify_2dih};
use twohalf::lattice::IntVec;
use twohalf::poly::{convex_hull_points, h_to_v_2d, is_feasible, HPoly, Halfspace, VPoly};
use twohalf::ratmath::{ceil_int, floor_int, format_rational, parse_rational, QVec, Rational};
use twohalf::Error;

#[derive(Parser)]
#[command(
    name = "twohalf",
    version,
    about = "Exact integer hulls and closures of rational polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(clap::Args)]
struct Input {
    /// Polyhedron document.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Verb {
    /// Integer hull of a planar polyhedron as a V-representation.
    Hull2d(Input),
    /// Integer hull of the intersection of two halfspaces.
    TwoHalfspace(Input),
    /// Intersection of the integer hulls of all facet pairs.
    FacetPairClosure(Input),
    /// Disjunctive hull for a single split.
    SplitHull {
        #[command(flatten)]
        input: Input,
        /// Split-family document holding exactly one split.
        #[arg(long)]
        splits: PathBuf,
    },
    /// Intersection of disjunctive hulls over a split family.
    SplitClosure {
        #[command(flatten)]
        input: Input,
        /// Use all primitive normals with entries in [-B, B].
        #[arg(long = "box", conflicts_with = "splits")]
        bound: Option<u32>,
        /// Split-family document.
        #[arg(long)]
        splits: Option<PathBuf>,
    },
    /// Chvátal–Gomory cut for an integer direction.
    CgCut {
        #[command(flatten)]
        input: Input,
        /// Comma-separated integers, e.g. "1,1".
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Rank-one split certificate for a planar simplicial cone.
    RankIh(Input),
    /// Classify a planar set (H- or V-document) as lattice-free or not.
    Classify(Input),
    /// Push the facets of a lattice-free quadrilateral outwards.
    PushOut(Input),
    /// At most four facets with no common integer point.
    Helly(Input),
    /// Compare the facet-pair closure with a brute-force integer hull.
    #[command(name = "verify-2dih")]
    Verify2dih(Input),
    /// Check the separating point of the fractional-apex cone.
    VerifyExample,
    /// Draw a planar polyhedron.
    Plot {
        #[command(flatten)]
        input: Input,
        /// "xmin,xmax,ymin,ymax".
        #[arg(long, default_value = "-5,5,-5,5", allow_hyphen_values = true)]
        viewport: String,
    },
    /// Emit a seeded corpus of random instances.
    GenCorpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = CorpusKind::Poly2d)]
        kind: CorpusKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusKind {
    Poly2d,
    Cone,
    Pair3,
    Pair4,
    Latfree,
}

/// An input error, tagged with the offending field.
struct Failure {
    field: String,
    error: Error,
}

fn fail(field: &str, error: Error) -> Failure {
    Failure {
        field: field.to_string(),
        error,
    }
}

trait Field<T> {
    fn field(self, name: &str) -> Result<T, Failure>;
}

impl<T> Field<T> for twohalf::Result<T> {
    fn field(self, name: &str) -> Result<T, Failure> {
        self.map_err(|e| fail(name, e))
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroDenominator | Error::Parse(_) => "parse",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::ZeroVector => "zero_vector",
        Error::NotLatticeSubspace(_) | Error::NotInSubspace => "subspace",
        Error::Infeasible => "infeasible",
        Error::IntegerFeasible => "integer_feasible",
        Error::EmptyIntegerHull => "empty_integer_hull",
        Error::LowerDimensional => "lower_dimensional",
        Error::Unbounded(_) => "unbounded",
        Error::Hypothesis(_) => "hypothesis",
        Error::InvalidInput(_) => "invalid_input",
    }
}

enum Document {
    Json(Value),
    Text(String),
}

struct Outcome {
    doc: Document,
    verified: bool,
}

fn ok(v: Value) -> Outcome {
    Outcome {
        doc: Document::Json(v),
        verified: true,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| {
        fail(
            "--input",
            Error::InvalidInput(format!("cannot read {}: {e}", path.display())),
        )
    })
}

fn load_poly(input: &Input) -> Result<HPoly, Failure> {
    io::parse_poly(&read(&input.input)?).field("input")
}

fn load_planar(input: &Input) -> Result<HPoly, Failure> {
    let p = load_poly(input)?;
    if p.dim() != 2 {
        return Err(fail(
            "dim",
            Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            },
        ));
    }
    Ok(p)
}

fn poly_value(p: &HPoly) -> Value {
    serde_json::to_value(io::poly_to_doc(p)).expect("serializable")
}

fn vpoly_value(v: &VPoly) -> Value {
    serde_json::to_value(io::vpoly_to_doc(v)).expect("serializable")
}

fn integer_hull_2d(p: &HPoly) -> twohalf::Result<VPoly> {
    if p.is_marked_empty() || !is_feasible(p) {
        return Ok(VPoly::empty(2));
    }
    let v = h_to_v_2d(p);
    if v.is_pointed() {
        return match integer_hull_pointed_2d(&v) {
            Err(Error::EmptyIntegerHull) => Ok(VPoly::empty(2)),
            r => r,
        };
    }
    let closure = facet_pair_closure(p)?;
    if closure.is_marked_empty() || !is_feasible(&closure) {
        return Ok(VPoly::empty(2));
    }
    Ok(h_to_v_2d(&closure))
}

fn vertices_csv(v: &VPoly) -> String {
    let mut s = String::from("x,y\n");
    for x in &v.vertices {
        let _ = writeln!(s, "{},{}", format_rational(&x[0]), format_rational(&x[1]));
    }
    s
}

fn parse_direction(s: &str, dim: usize) -> Result<IntVec, Failure> {
    let bad = |m: String| fail("--direction", Error::Parse(m));
    let entries = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| bad(format!("malformed integer {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != dim {
        return Err(fail(
            "--direction",
            Error::DimensionMismatch {
                expected: dim,
                found: entries.len(),
            },
        ));
    }
    Ok(IntVec(entries))
}

fn parse_viewport(s: &str) -> Result<[Rational; 4], Failure> {
    let vals = s
        .split(',')
        .map(|t| parse_rational(t).field("--viewport"))
        .collect::<Result<Vec<_>, _>>()?;
    let bad = || {
        fail(
            "--viewport",
            Error::Parse(format!(
                "expected xmin,xmax,ymin,ymax with min < max, got {s:?}"
            )),
        )
    };
    let [x0, x1, y0, y1]: [Rational; 4] = vals.try_into().map_err(|_| bad())?;
    if x0 >= x1 || y0 >= y1 {
        return Err(bad());
    }
    Ok([x0, x1, y0, y1])
}

fn cone_from_poly(p: &HPoly) -> Result<Cone2, Failure> {
    let v = h_to_v_2d(p);
    if p.halfspaces().len() != 2 || v.vertices.len() != 1 || v.rays.len() != 2 {
        return Err(fail(
            "halfspaces",
            Error::InvalidInput("expected two inequalities forming a pointed cone".into()),
        ));
    }
    Cone2::new(v.vertices[0].clone(), v.rays[0].clone(), v.rays[1].clone()).field("halfspaces")
}

/// Clipped polygon of `p` inside the viewport, in counterclockwise order,
/// with a flag per edge (to the next vertex) telling whether it lies on a
/// facet of `p`.
fn clipped_polygon(p: &HPoly, vp: &[Rational; 4]) -> Vec<(QVec, bool)> {
    if p.is_marked_empty() {
        return Vec::new();
    }
    let bounds = [
        ([1, 0], vp[1].clone()),
        ([-1, 0], -vp[0].clone()),
        ([0, 1], vp[3].clone()),
        ([0, -1], -vp[2].clone()),
    ];
    let mut clipped = p.clone();
    for (a, b) in bounds {
        clipped = clipped.with_halfspace(Halfspace::from_i64(&a, b));
    }
    if !is_feasible(&clipped) {
        return Vec::new();
    }
    let ring = convex_hull_points(&h_to_v_2d(&clipped).vertices);
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (u, w) = (&ring[i], &ring[(i + 1) % n]);
            let on_facet = n > 1
                && p.halfspaces()
                    .iter()
                    .any(|h| h.value(u) == *h.rhs() && h.value(w) == *h.rhs());
            (u.clone(), on_facet)
        })
        .collect()
}

fn plot_csv(ring: &[(QVec, bool)]) -> String {
    let mut s = String::from("x,y,edge_to_next\n");
    for (x, on_facet) in ring {
        let kind = if *on_facet { "facet" } else { "clipped" };
        let _ = writeln!(
            s,
            "{},{},{kind}",
            format_rational(&x[0]),
            format_rational(&x[1])
        );
    }
    s
}

fn plot_svg(p: &HPoly, ring: &[(QVec, bool)], vp: &[Rational; 4]) -> String {
    const SCALE: f64 = 40.0;
    const MARGIN: f64 = 20.0;
    let f = |r: &Rational| r.to_f64().unwrap_or(0.0);
    let (x0, x1, y0, y1) = (f(&vp[0]), f(&vp[1]), f(&vp[2]), f(&vp[3]));
    let tx = |x: f64| MARGIN + (x - x0) * SCALE;
    let ty = |y: f64| MARGIN + (y1 - y) * SCALE;
    let (w, h) = (
        (x1 - x0) * SCALE + 2.0 * MARGIN,
        (y1 - y0) * SCALE + 2.0 * MARGIN,
    );
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{w:.1}" height="{h:.1}" fill="white"/>"#
    );
    if ring.len() >= 3 {
        let pts: Vec<String> = ring
            .iter()
            .map(|(x, _)| format!("{:.3},{:.3}", tx(f(&x[0])), ty(f(&x[1]))))
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.5" stroke="none"/>"##,
            pts.join(" ")
        );
    }
    let n = ring.len();
    for i in 0..n {
        if n < 2 || (n == 2 && i == 1) {
            break;
        }
        let (u, on_facet) = &ring[i];
        let w = &ring[(i + 1) % n].0;
        let dash = if *on_facet {
            ""
        } else {
            r#" stroke-dasharray="6,4""#
        };
        let _ = writeln!(
            s,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#08519c" stroke-width="2"{dash}/>"##,
            tx(f(&u[0])),
            ty(f(&u[1])),
            tx(f(&w[0])),
            ty(f(&w[1]))
        );
    }
    let (gx0, gx1) = (ceil_int(&vp[0]), floor_int(&vp[1]));
    let (gy0, gy1) = (ceil_int(&vp[2]), floor_int(&vp[3]));
    let cells = (&gx1 - &gx0 + 1u32) * (&gy1 - &gy0 + 1u32);
    if cells <= 40_000u32.into() {
        let mut x = gx0.clone();
        while x <= gx1 {
            let mut y = gy0.clone();
            while y <= gy1 {
                let q = QVec::from_bigints(&[x.clone(), y.clone()]);
                let fill = if p.contains(&q) { "#d62728" } else { "#999999" };
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="2.5" fill="{fill}"/>"#,
                    tx(x.to_f64().unwrap_or(0.0)),
                    ty(y.to_f64().unwrap_or(0.0))
                );
                y += 1;
            }
            x += 1;
        }
    }
    s.push_str("</svg>\n");
    s
}

fn corpus_docs(kind: CorpusKind, seed: u64, count: usize) -> Value {
    let mut rng = corpus::rng(seed);
    let docs: Vec<Value> = (0..count)
        .map(|_| match kind {
            CorpusKind::Poly2d => poly_value(&corpus::random_poly_2d(&mut rng, 10, 4)),
            CorpusKind::Cone => poly_value(&corpus::random_cone_2d(&mut rng, 10, 10).to_hpoly()),
            CorpusKind::Pair3 | CorpusKind::Pair4 => {
                let n = if matches!(kind, CorpusKind::Pair3) {
                    3
                } else {
                    4
                };
                let (h1, h2) = corpus::random_halfspace_pair(&mut rng, n, 5);
                poly_value(&HPoly::new(n, vec![h1, h2]).expect("dims"))
            }
            CorpusKind::Latfree => loop {
                let p = corpus::random_lattice_free_candidate(&mut rng);
                if integer_feasible_2d(&p).is_none() {
                    break poly_value(&p);
                }
            },
        })
        .collect();
    json!({ "seed": seed, "instances": docs })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let json_only = |verb: &str| {
        if cli.format != Format::Json {
            Err(fail(
                "--format",
                Error::InvalidInput(format!("{verb} only writes json")),
            ))
        } else {
            Ok(())
        }
    };
    match &cli.verb {
        Verb::Hull2d(input) => {
            if cli.format == Format::Svg {
                return Err(fail(
                    "--format",
                    Error::InvalidInput("hull2d writes json or csv".into()),
                ));
            }
            let p = load_planar(input)?;
            let hull = integer_hull_2d(&p).field("input")?;
            Ok(match cli.format {
                Format::Csv => Outcome {
                    doc: Document::Text(vertices_csv(&hull)),
                    verified: true,
                },
                _ => ok(vpoly_value(&hull)),
            })
        }
        Verb::TwoHalfspace(input) => {
            json_only("two-halfspace")?;
            let p = load_poly(input)?;
            let [h1, h2] = p.halfspaces() else {
                return Err(fail(
                    "halfspaces",
                    Error::InvalidInput(format!(
                        "expected 2 halfspaces, found {}",
                        p.halfspaces().len()
                    )),
                ));
            };
            Ok(ok(poly_value(
                &two_halfspace_hull(h1, h2).field("halfspaces")?,
            )))
        }
        Verb::FacetPairClosure(input) => {
            json_only("facet-pair-closure")?;
            let p = load_poly(input)?;
            Ok(ok(poly_value(&facet_pair_closure(&p).field("input")?)))
        }
        Verb::SplitHull { input, splits } => {
            json_only("split-hull")?;
            let p = load_poly(input)?;
            let family = io::parse_split_family(&read(splits)?, &p).field("splits")?;
            let [d] = family.disjunctions() else {
                return Err(fail(
                    "splits",
                    Error::InvalidInput(format!(
                        "expected exactly one split, found {}",
                        family.len()
                    )),
                ));
            };
            Ok(ok(poly_value(&disjunctive_hull(&p, d).field("input")?)))
        }
        Verb::SplitClosure {
            input,
            bound,
            splits,
        } => {
            json_only("split-closure")?;
            let p = load_poly(input)?;
            let family = match (bound, splits) {
                (Some(b), _) => SplitFamily::box_generated(&p, *b).field("--box")?,
                (None, Some(path)) => io::parse_split_family(&read(path)?, &p).field("splits")?,
                (None, None) => {
                    return Err(fail(
                        "--box",
                        Error::InvalidInput("give --box B or --splits FILE".into()),
                    ))
                }
            };
            let closure = split_closure_family(&p, &family).field("input")?;
            Ok(ok(json!({
                "family_size": family.len(),
                "closure": poly_value(&closure),
            })))
        }
        Verb::CgCut { input, direction } => {
            json_only("cg-cut")?;
            let p = load_poly(input)?;
            let a = parse_direction(direction, p.dim())?;
            let cut = cg_cut_from_direction(&p, &a).field("--direction")?;
            Ok(ok(json!({
                "cut": cut.map(|h| json!({ "a": h.normal().0.iter().map(ToString::to_string).collect::<Vec<_>>(), "b": format_rational(h.rhs()) })),
            })))
        }
        Verb::RankIh(input) => {
            json_only("rank-ih")?;
            let cone = cone_from_poly(&load_planar(input)?)?;
            let cert = verify_rank_ih(&cone).field("input")?;
            Ok(Outcome {
                verified: cert.passed(),
                doc: Document::Json(io::rank_ih_to_json(&cert)),
            })
        }
        Verb::Classify(input) => {
            json_only("classify")?;
            let text = read(&input.input)?;
            let raw: Value = serde_json::from_str(&text)
                .map_err(|e| fail("input", Error::Parse(e.to_string())))?;
            let v = if raw.get("halfspaces").is_some() || raw.get("empty").is_some() {
                let p = io::parse_poly(&text).field("input")?;
                if p.is_marked_empty() || !is_feasible(&p) {
                    return Err(fail("input", Error::LowerDimensional));
                }
                h_to_v_2d(&p)
            } else {
                io::parse_vpoly(&text).field("input")?
            };
            let class = classify_max_latfree_2d(&v).field("input")?;
            Ok(ok(io::latfree_to_json(&class)))
        }
        Verb::PushOut(input) => {
            json_only("push-out")?;
            let p = load_planar(input)?;
            let trace = push_out(&p).field("halfspaces")?;
            Ok(Outcome {
                verified: trace.conclusion_holds,
                doc: Document::Json(io::push_out_to_json(&trace)),
            })
        }
        Verb::Helly(input) => {
            json_only("helly")?;
            let p = load_planar(input)?;
            let subset = helly_certificate(&p).field("halfspaces")?;
            Ok(ok(io::helly_to_json(&p, &subset)))
        }
        Verb::Verify2dih(input) => {
            json_only("verify-2dih")?;
            let p = load_planar(input)?;
            let holds = verify_2dih(&p).field("input")?;
            Ok(Outcome {
                verified: holds,
                doc: Document::Json(json!({ "holds": holds })),
            })
        }
        Verb::VerifyExample => {
            json_only("verify-example")?;
            let p = corpus::fractional_apex_cone();
            let z = corpus::separating_point();
            let closure = facet_pair_closure(&p).field("example")?;
            let split =
                SplitDisjunction::new(IntVec::from_i64(&[1, 0]), 0.into()).field("example")?;
            let split_hull = disjunctive_hull(&p, &split).field("example")?;
            let outside = !closure.contains(&z);
            let inside = split_hull.contains(&z);
            Ok(Outcome {
                verified: outside && inside,
                doc: Document::Json(json!({
                    "point": z.iter().map(format_rational).collect::<Vec<_>>(),
                    "outside_facet_pair_closure": outside,
                    "inside_split_hull": inside,
                    "facet_pair_closure": poly_value(&closure),
                    "split_hull": poly_value(&split_hull),
                })),
            })
        }
        Verb::Plot { input, viewport } => {
            let vp = parse_viewport(viewport)?;
            let p = load_planar(input)?;
            let ring = clipped_polygon(&p, &vp);
            let text = match cli.format {
                Format::Csv => plot_csv(&ring),
                Format::Svg => plot_svg(&p, &ring, &vp),
                Format::Json => {
                    return Err(fail(
                        "--format",
                        Error::InvalidInput("plot writes svg or csv".into()),
                    ))
                }
            };
            Ok(Outcome {
                doc: Document::Text(text),
                verified: true,
            })
        }
        Verb::GenCorpus { seed, count, kind } => {
            json_only("gen-corpus")?;
            Ok(ok(corpus_docs(*kind, *seed, *count)))
        }
    }
}

/// Writes to a sibling file first and renames it into place.
fn emit(path: Option<&Path>, body: &str) -> std::io::Result<()> {
    match path {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".partial");
            fs::write(&tmp, body)?;
            fs::rename(&tmp, path)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let body = match outcome.doc {
                Document::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
                Document::Text(t) => t,
            };
            if let Err(e) = emit(cli.output.as_deref(), &body) {
                eprintln!(
                    "{}",
                    json!({ "error": { "field": "--output", "kind": "io", "message": e.to_string() } })
                );
                return ExitCode::from(2);
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!(
                "{}",
                json!({ "error": { "field": f.field, "kind": kind(&f.error), "message": f.error.to_string() } })
            );
            ExitCode::from(2)
        }
    }
}
