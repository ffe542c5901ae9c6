//! `persson` — command-line front end for the exact-arithmetic toolkit for
//! moduli of Persson surfaces.
//!
//! All wire formats use exact rational strings ("±p/q" or "±p"); floating
//! point is rejected on input and never produced on output. Reports are
//! byte-identical across runs for identical inputs; `--with-meta` adds a
//! timestamped envelope outside the canonical body.
//!
//! Exit codes: 0 ok; 1 input error; 2 stability violation under `--strict`;
//! 3 search limit exceeded.

mod cache;
mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use persson::cover::{
    intermediate_census, persson_canonical, recovered_partition, valid_lift_assignments,
    zl_canonical, zl_dp2_split, BuildingData, BuildingDataJson,
};
use persson::degeneration::{classify_tiling, component_cover_profile, DegenerationType};
use persson::gf2::{
    partitions_into_parallel_pairs, persson_labels, stabilizer_of_label_set,
    stabilizer_of_partition, torelli_index, GroupElement,
};
use persson::invariants::{eigen_decomposition, standard_invariants, sum_triples};
use persson::lattice::{big_lambda, relabel_involution, Lattice};
use persson::polytope::{
    enumerate_tilings, PolytopeError, TilingClass, TilingJson, TilingOptions, Weight,
};
use persson::stability::{
    crossed_walls, is_git_semistable, is_log_canonical, same_chamber, walls_containing, EpsRat,
    GitVerdict, LcVerdict, Violation, Wall, WeightedArrangement,
};

use input::{parse_rational, parse_weight_list, ArrangementFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    SearchLimit(String),
}

impl From<PolytopeError> for CliError {
    fn from(e: PolytopeError) -> Self {
        match e {
            PolytopeError::SearchLimit(s) => CliError::SearchLimit(s),
            other => CliError::Input(other.to_string()),
        }
    }
}

// ---------------------------------------------------------------------------
// command line
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "persson",
    version,
    about = "Exact-arithmetic toolkit for moduli of Persson surfaces",
    long_about = "Numerical invariants, building data, stability, wall/chamber \
                  structure, matroid tilings, and stable-degeneration profiles of \
                  (Z/2Z)^4-covers of the plane branched along eight lines. \
                  All arithmetic is exact; no floating point anywhere."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Options shared by every command that writes a JSON document.
#[derive(Args)]
struct OutputOpts {
    /// Write the document here instead of stdout.
    #[arg(short, long, global = false)]
    output: Option<PathBuf>,
    /// Wrap the canonical body in an envelope carrying a timestamp and tool
    /// version. Without this flag the output is byte-identical across runs.
    #[arg(long)]
    with_meta: bool,
}

/// Selects the cover datum: a labeled arrangement file, or a bundled
/// canonical datum when no file is given.
#[derive(Args)]
struct DatumOpts {
    /// Arrangement file with labels; defaults to the canonical Persson datum.
    input: Option<PathBuf>,
    /// Use the canonical Z_L datum (the 32-to-1 cover) instead.
    #[arg(long, conflicts_with = "input")]
    zl: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Numerical invariants (K², χ(O), p_g, q, χ_top, h¹¹, signature) of the cover.
    Invariants {
        #[command(flatten)]
        datum: DatumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Character-eigenspace Hodge triples of the cover.
    Eigen {
        #[command(flatten)]
        datum: DatumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Solved line-bundle degrees of the building data.
    BuildingData {
        #[command(flatten)]
        datum: DatumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Enumerate the 112 étale lifts of the Persson datum to (Z/2Z)^5.
    Lift {
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Log-canonicity of the weighted arrangement.
    Stability {
        input: PathBuf,
        /// Exit with code 2 when the pair is not log canonical.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// GIT stability of the weighted arrangement.
    Git {
        input: PathBuf,
        /// Exit with code 2 unless the arrangement is properly stable.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Walls of the weight domain containing a given weight.
    Walls {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// One rational (uniform) or n comma-separated rationals.
        #[arg(long)]
        b: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Chamber comparison of two weights, with the walls met in between.
    Chambers {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Enumerate matroid tilings of the b-cut hypersimplex, up to symmetry.
    Tilings {
        #[command(flatten)]
        shape: TilingShape,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Classify tilings into degeneration types with cover profiles.
    Classify {
        #[command(flatten)]
        shape: TilingShape,
        /// Classify a single tiling from this JSON file instead of enumerating.
        #[arg(long, conflicts_with_all = ["d", "n", "b"])]
        tiling: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Census of the intermediate quotient surfaces of the cover.
    Intermediates {
        #[command(flatten)]
        datum: DatumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Fixed and anti-fixed lattices of the relabeling involution, or the
    /// invariants of an explicit lattice expression.
    Lattice {
        /// Lattice expression such as "U + U(2)^7 + E8(-2)^2".
        #[arg(long)]
        expr: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Label-set stabilizer, pair partitions, and lift counts.
    Group {
        #[command(flatten)]
        datum: DatumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Combinatorial degree of the period map on pair-swap groups.
    TorelliIndex {
        #[command(flatten)]
        datum: DatumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Full end-to-end report for an arrangement file.
    Report {
        input: PathBuf,
        /// Exit with code 2 on any stability violation.
        #[arg(long)]
        strict: bool,
        /// Also enumerate and classify the tilings for this weight.
        #[arg(long)]
        with_tilings: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Args)]
struct TilingShape {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// One rational (uniform) or n comma-separated rationals.
    #[arg(long, default_value = "1/2")]
    b: String,
    /// Abort the piece search beyond this pool size.
    #[arg(long)]
    max_pool: Option<usize>,
    /// Abort the covering search beyond this node count.
    #[arg(long)]
    max_nodes: Option<usize>,
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

fn emit(body: Value, out: &OutputOpts) -> Result<(), CliError> {
    let doc = if out.with_meta {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json!({
            "body": body,
            "meta": {
                "tool": "persson",
                "version": env!("CARGO_PKG_VERSION"),
                "unixTime": ts,
            }
        })
    } else {
        body
    };
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"));
    match &out.output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
    }
}

fn datum_of(opts: &DatumOpts) -> Result<BuildingData, CliError> {
    if opts.zl {
        return Ok(zl_canonical());
    }
    match &opts.input {
        None => Ok(persson_canonical()),
        Some(path) => ArrangementFile::load(path)?
            .building_data()?
            .ok_or_else(|| CliError::Input("arrangement file carries no labels".into())),
    }
}

fn labels_of(opts: &DatumOpts) -> Result<Vec<GroupElement>, CliError> {
    if opts.zl {
        return Err(CliError::Input(
            "group statistics are defined for the base labels, not the Z_L lift".into(),
        ));
    }
    match &opts.input {
        None => Ok(persson_labels()),
        Some(path) => ArrangementFile::load(path)?
            .label_elements()?
            .ok_or_else(|| CliError::Input("arrangement file carries no labels".into())),
    }
}

fn invariants_json(b: &BuildingData) -> Result<Value, CliError> {
    let inv = standard_invariants(b).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(json!({
        "kSquared": inv.k_squared,
        "chiO": inv.chi_oh,
        "pg": inv.p_g,
        "q": inv.q,
        "chiTop": inv.chi_top,
        "h11": inv.h11,
        "signature": [inv.signature.0, inv.signature.1],
    }))
}

fn eigen_json(b: &BuildingData) -> Result<Value, CliError> {
    let eigen = eigen_decomposition(b).map_err(|e| CliError::Input(e.to_string()))?;
    let triples: Vec<[i64; 3]> = eigen.iter().map(|(_, t)| *t).collect();
    let entries: Vec<Value> = eigen
        .iter()
        .map(|(c, t)| json!({"character": c.to_string(), "triple": t}))
        .collect();
    Ok(json!({
        "entries": entries,
        "sum": sum_triples(triples.iter()),
    }))
}

fn violations_json(vs: &[Violation]) -> Vec<Value> {
    vs.iter()
        .map(|v| {
            json!({
                "locus": v.locus,
                "attained": v.attained.to_string(),
                "bound": v.bound.to_string(),
            })
        })
        .collect()
}

fn wall_json(w: &Wall) -> Value {
    json!({"I": w.set, "k": w.k})
}

fn eps_weights(s: &str, n: usize) -> Result<Vec<EpsRat>, CliError> {
    Ok(parse_weight_list(s, n)?.into_iter().map(EpsRat::from_rat).collect())
}

fn tiling_classes(shape: &TilingShape) -> Result<(Weight, Vec<TilingClass>), CliError> {
    let b = Weight::new(parse_weight_list(&shape.b, shape.n)?).map_err(CliError::from)?;
    if let Some(classes) = cache::load(shape.d, shape.n, &b) {
        return Ok((b, classes));
    }
    let mut opts = TilingOptions::default();
    if let Some(p) = shape.max_pool {
        opts.max_pool = p;
    }
    if let Some(m) = shape.max_nodes {
        opts.max_nodes = m;
    }
    let classes = enumerate_tilings(shape.d, shape.n, &b, &opts)?;
    cache::store(shape.d, shape.n, &b, &classes);
    Ok((b, classes))
}

fn class_json(c: &TilingClass) -> Value {
    let t = TilingJson::from(&c.representative);
    json!({
        "orbit": c.orbit_size,
        "pieces": serde_json::to_value(&t.pieces).expect("serializable"),
    })
}

fn classification_json(dt: &DegenerationType) -> Result<Value, CliError> {
    let profile = component_cover_profile(dt, true).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(json!({
        "type": serde_json::to_value(dt.tag).expect("serializable"),
        "components": serde_json::to_value(&profile).expect("serializable"),
        "concurrency": dt.concurrency,
    }))
}

fn lattice_inv_json(l: &Lattice) -> Result<Value, CliError> {
    let inv = l.invariants().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(json!({
        "rank": inv.rank,
        "signature": [inv.signature.0, inv.signature.1],
        "even": inv.even,
        "determinant": inv.determinant.to_string(),
        "discriminantFactors": inv.discriminant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    }))
}

fn group_json(labels: &[GroupElement]) -> Result<Value, CliError> {
    let stab = stabilizer_of_label_set(labels).map_err(|e| CliError::Input(e.to_string()))?;
    let parts = partitions_into_parallel_pairs(labels).map_err(|e| CliError::Input(e.to_string()))?;
    let pstab = stabilizer_of_partition(&parts[0]).map_err(|e| CliError::Input(e.to_string()))?;
    let lifts = valid_lift_assignments().len();
    let indices: Vec<usize> = parts
        .iter()
        .map(|p| torelli_index(labels, p))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let index = indices[0];
    if indices.iter().any(|&i| i != index) {
        return Err(CliError::Input("torelli index differs between partitions".into()));
    }
    Ok(json!({
        "stabilizerOrder": stab.order(),
        "stabilizerStructure": stab.structure,
        "pairPartitions": parts.len(),
        "partitionStabilizerOrder": pstab.order(),
        "partitionStabilizerStructure": pstab.structure,
        "orbitStabilizerIdentity": stab.order() == pstab.order() * parts.len(),
        "liftCount": lifts,
        "torelliIndex": index,
    }))
}

fn stability_json(arr: &WeightedArrangement) -> (Value, bool) {
    let lc = is_log_canonical(arr);
    let git = is_git_semistable(arr);
    let ok = lc.verdict == LcVerdict::Lc && git.verdict == GitVerdict::Stable;
    let v = json!({
        "lc": lc.verdict == LcVerdict::Lc,
        "lcViolations": violations_json(&lc.violations),
        "git": match git.verdict {
            GitVerdict::Stable => "Stable",
            GitVerdict::Semistable => "Semistable",
            GitVerdict::Unstable => "Unstable",
        },
        "gitViolations": violations_json(&git.violations),
    });
    (v, ok)
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Invariants { datum, out } => {
            let b = datum_of(&datum)?;
            let mut v = invariants_json(&b)?;
            v["schema"] = json!("invariants/1");
            emit(v, &out)?;
            Ok(0)
        }
        Cmd::Eigen { datum, out } => {
            let b = datum_of(&datum)?;
            let mut v = eigen_json(&b)?;
            v["schema"] = json!("eigen/1");
            emit(v, &out)?;
            Ok(0)
        }
        Cmd::BuildingData { datum, out } => {
            let b = datum_of(&datum)?;
            let wire = BuildingDataJson::from(&b);
            let mut v = serde_json::to_value(&wire).expect("serializable");
            v["schema"] = json!("building-data/1");
            emit(v, &out)?;
            Ok(0)
        }
        Cmd::Lift { out } => {
            let lifts = valid_lift_assignments();
            let masks: Vec<u8> = lifts.iter().map(|(m, _)| *m).collect();
            let partitions: std::collections::BTreeSet<_> = lifts
                .iter()
                .filter_map(|(_, b)| recovered_partition(b))
                .map(|p| p.pairs().iter().map(|(a, b)| (a.bits(), b.bits())).collect::<Vec<_>>())
                .collect();
            emit(
                json!({
                    "schema": "lifts/1",
                    "count": lifts.len(),
                    "recoveredPartitions": partitions.len(),
                    "masks": masks,
                }),
                &out,
            )?;
            Ok(0)
        }
        Cmd::Stability { input, strict, out } => {
            let arr = ArrangementFile::load(&input)?.arrangement()?;
            let lc = is_log_canonical(&arr);
            emit(
                json!({
                    "schema": "stability/1",
                    "lc": lc.verdict == LcVerdict::Lc,
                    "violations": violations_json(&lc.violations),
                }),
                &out,
            )?;
            Ok(if strict && lc.verdict != LcVerdict::Lc { 2 } else { 0 })
        }
        Cmd::Git { input, strict, out } => {
            let arr = ArrangementFile::load(&input)?.arrangement()?;
            let git = is_git_semistable(&arr);
            let name = match git.verdict {
                GitVerdict::Stable => "Stable",
                GitVerdict::Semistable => "Semistable",
                GitVerdict::Unstable => "Unstable",
            };
            emit(
                json!({
                    "schema": "git/1",
                    "verdict": name,
                    "violations": violations_json(&git.violations),
                }),
                &out,
            )?;
            Ok(if strict && git.verdict != GitVerdict::Stable { 2 } else { 0 })
        }
        Cmd::Walls { d, n, b, out } => {
            let w = eps_weights(&b, n)?;
            let walls =
                walls_containing(&w, d).map_err(|e| CliError::Input(e.to_string()))?;
            emit(
                json!({
                    "schema": "walls/1",
                    "count": walls.len(),
                    "walls": walls.iter().map(wall_json).collect::<Vec<_>>(),
                }),
                &out,
            )?;
            Ok(0)
        }
        Cmd::Chambers { d, n, b1, b2, out } => {
            let w1 = eps_weights(&b1, n)?;
            let w2 = eps_weights(&b2, n)?;
            let seg =
                crossed_walls(&w1, &w2, d).map_err(|e| CliError::Input(e.to_string()))?;
            // off-wall endpoints admit a clean chamber comparison; endpoints
            // on a wall report null
            let same = same_chamber(&w1, &w2, d).ok();
            emit(
                json!({
                    "schema": "chambers/1",
                    "sameChamber": same,
                    "crossed": seg.crossed.iter().map(wall_json).collect::<Vec<_>>(),
                    "touched": seg.touched.len(),
                }),
                &out,
            )?;
            Ok(0)
        }
        Cmd::Tilings { shape, out } => {
            let (b, classes) = tiling_classes(&shape)?;
            emit(
                json!({
                    "schema": "tilings/1",
                    "d": shape.d,
                    "n": shape.n,
                    "b": b.entries().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
                }),
                &out,
            )?;
            Ok(0)
        }
        Cmd::Classify { shape, tiling, out } => {
            if let Some(path) = tiling {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                let wire: TilingJson = serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("invalid tiling JSON: {e}")))?;
                let t = wire.into_tiling().map_err(CliError::from)?;
                let dt = classify_tiling(&t).map_err(|e| CliError::Input(e.to_string()))?;
                let mut v = classification_json(&dt)?;
                v["schema"] = json!("classify/1");
                emit(v, &out)?;
                return Ok(0);
            }
            let (b, classes) = tiling_classes(&shape)?;
            let mut out_classes = Vec::new();
            for c in &classes {
                let dt = classify_tiling(&c.representative)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let mut v = classification_json(&dt)?;
                v["orbit"] = json!(c.orbit_size);
                out_classes.push(v);
            }
            emit(
                json!({
                    "schema": "classify/1",
                    "d": shape.d,
                    "n": shape.n,
                    "b": b.entries().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "classes": out_classes,
                }),
                &out,
            )?;
            Ok(0)
        }
        Cmd::Intermediates { datum, out } => {
            let b = datum_of(&datum)?;
            let census = intermediate_census(&b).map_err(|e| CliError::Input(e.to_string()))?;
            let census: BTreeMap<String, usize> =
                census.into_iter().map(|(k, v)| (format!("{k:?}"), v)).collect();
            let mut v = json!({
                "schema": "intermediates/1",
                "census": census,
            });
            if let Some((new, inherited)) = zl_dp2_split(&b) {
                v["dp2Split"] = json!({"new": new, "inherited": inherited});
            }
            emit(v, &out)?;
            Ok(0)
        }
        Cmd::Lattice { expr, out } => {
            if let Some(e) = expr {
                let l = Lattice::parse(&e).map_err(|err| CliError::Input(err.to_string()))?;
                let mut v = lattice_inv_json(&l)?;
                v["schema"] = json!("lattice/1");
                v["expr"] = json!(e);
                emit(v, &out)?;
                return Ok(0);
            }
            let lambda = big_lambda();
            let iota = relabel_involution();
            let (fixed, anti) = iota.fixed_and_antifixed(&lambda);
            let fixed_model = Lattice::parse("U(2)^7 + E8(-2)^2")
                .map_err(|err| CliError::Input(err.to_string()))?;
            let anti_model = Lattice::parse("U + U(2)^7 + E8(-2)^2")
                .map_err(|err| CliError::Input(err.to_string()))?;
            let fm = fixed.same_invariants(&fixed_model).map_err(|e| CliError::Input(e.to_string()))?;
            let am = anti.same_invariants(&anti_model).map_err(|e| CliError::Input(e.to_string()))?;
            emit(
                json!({
                    "schema": "lattice/1",
                    "ambient": lattice_inv_json(&lambda)?,
                    "fixed": {
                        "invariants": lattice_inv_json(&fixed)?,
                        "model": "U(2)^7 + E8(-2)^2",
                        "matchesModel": fm,
                    },
                    "antiFixed": {
                        "invariants": lattice_inv_json(&anti)?,
                        "model": "U + U(2)^7 + E8(-2)^2",
                        "matchesModel": am,
                    },
                }),
                &out,
            )?;
            Ok(0)
        }
        Cmd::Group { datum, out } => {
            let labels = labels_of(&datum)?;
            let mut v = group_json(&labels)?;
            v["schema"] = json!("group/1");
            emit(v, &out)?;
            Ok(0)
        }
        Cmd::TorelliIndex { datum, out } => {
            let labels = labels_of(&datum)?;
            let parts =
                partitions_into_parallel_pairs(&labels).map_err(|e| CliError::Input(e.to_string()))?;
            let indices: Vec<usize> = parts
                .iter()
                .map(|p| torelli_index(&labels, p))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Input(e.to_string()))?;
            let index = indices[0];
            if indices.iter().any(|&i| i != index) {
                return Err(CliError::Input("torelli index differs between partitions".into()));
            }
            emit(json!({"schema": "torelli/1", "index": index}), &out)?;
            Ok(0)
        }
        Cmd::Report { input, strict, with_tilings, out } => {
            let file = ArrangementFile::load(&input)?;
            let arr = file.arrangement()?;
            let (stab_json, stable) = stability_json(&arr);
            let mut body = json!({
                "schema": "report/1",
                "arrangement": {
                    "lines": file.line_count()?,
                    "distinctLines": arr.lines.len(),
                    "points": arr.points.len(),
                    "weights": arr.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                },
                "stability": stab_json,
            });
            if let Some(b) = file.building_data()? {
                body["invariants"] = invariants_json(&b)?;
                body["eigen"] = eigen_json(&b)?;
                body["buildingData"] = serde_json::to_value(BuildingDataJson::from(&b))
                    .expect("serializable");
                let census = intermediate_census(&b).map_err(|e| CliError::Input(e.to_string()))?;
                let census: BTreeMap<String, usize> =
                    census.into_iter().map(|(k, c)| (format!("{k:?}"), c)).collect();
                body["intermediates"] = json!(census);
                let labels = file.label_elements()?.expect("labels present");
                // group statistics exist only for the canonical label set;
                // other labelings simply omit the section
                if let Ok(g) = group_json(&labels) {
                    body["group"] = g;
                }
            }
            if with_tilings {
                let d = 3;
                let n = arr.lines.len();
                let b: Vec<persson::Rat> = arr
                    .weights
                    .iter()
                    .map(|w| {
                        parse_rational(&w.to_string())
                            .map_err(|_| CliError::Input("ε-weights have no tiling cut".into()))
                    })
                    .collect::<Result<_, _>>()?;
                let shape = TilingShape {
                    d,
                    n,
                    b: b.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","),
                    max_pool: None,
                    max_nodes: None,
                };
                let (_, classes) = tiling_classes(&shape)?;
                let mut out_classes = Vec::new();
                for c in &classes {
                    let dt = classify_tiling(&c.representative)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let mut v = classification_json(&dt)?;
                    v["orbit"] = json!(c.orbit_size);
                    out_classes.push(v);
                }
                body["tilings"] = json!(out_classes);
            }
            emit(body, &out)?;
            Ok(if strict && !stable { 2 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::SearchLimit(msg)) => {
            eprintln!("error: search limit exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
