//! Command-line front end for the quadratic-algebra workbench.
//!
//! Exit codes: 0 on success, 1 when a computation reaches a mathematical
//! failure verdict (an invalid normalizing sequence, a nonempty zero locus,
//! failing Ore data), 2 on usage or parse errors.

use clap::{Parser, Subcommand, ValueEnum};
use qp2::catalog;
use qp2::commalg::CommPoly;
use qp2::field::{Field, Scalar};
use qp2::gsca::{cv_regularity_check, CvOutcome, CvStage};
use qp2::linalg::Matrix;
use qp2::ncgroebner::{is_normalizing_sequence, NormalizingVerdict};
use qp2::ncpoly::NcPoly;
use qp2::parse::{parse_commpoly, parse_matrix, parse_ncpoly, parse_ncpoly_list, parse_scalar};
use qp2::pointscheme::{classify_cubic, multilinearize, PsError};
use qp2::quadalg::{ore_extension, OreData, OreValidation, QuadraticAlgebra};
use qp2::specfile::{parse_field_spec, parse_spec, AlgebraSpec};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

const FORMAT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "qp2",
    version,
    about = "Exact workbench for quadratic algebras on three generators: duals, twists, Ore extensions, point schemes, skew Clifford checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print generators, the reduced relation basis and its dimension.
    Describe {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Dimensions of the graded components 0..=max-degree (defaulting to
    /// the spec file's truncation option).
    Hilbert {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Koszul dual relations.
    Dual {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Twist by a graded automorphism (matrix rows `;`-separated).
    Twist {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        matrix: String,
    },
    /// Change of generators applied to the relation space.
    Subst {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        matrix: String,
    },
    /// Ore extension of the spec algebra; validates phi and delta first.
    Ore {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        phi: String,
        /// Comma-separated assignments, e.g. "x1=-1/2*x2^2,x2=x1^2".
        #[arg(long, default_value = "")]
        delta: String,
        #[arg(long, default_value = "z")]
        name: String,
    },
    /// Point scheme: the cubic divisor, optional classification, optional
    /// automorphism evaluation, optional linear-extension fit.
    PointScheme {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        classify: bool,
        /// Evaluate the automorphism at a point "a1,a2,a3".
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        fit_extension: bool,
    },
    /// Normalizing-sequence check for `;`-separated degree-2 elements.
    Normal {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        elements: String,
    },
    /// Skew Clifford regularity criterion with `;`-separated quadrics.
    Gsca {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        quadrics: String,
    },
    /// Classify a ternary cubic given as text in x, y, z.
    ClassifyCubic {
        #[arg(long)]
        poly: String,
        /// Field spec: `0`, `7`, or `0:t^2+1`.
        #[arg(long, default_value = "0")]
        field: String,
    },
    /// Catalog of named algebras.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the available entries and their parameters.
    List,
    /// Build an entry and print its relations and expected metadata.
    Build {
        #[arg(long)]
        name: String,
        /// Repeated `key=value` parameters (scalar expressions).
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, default_value = "0")]
        field: String,
        #[arg(long)]
        bypass_constraints: bool,
    },
}

struct Outcome {
    json: Value,
    human: String,
    code: u8,
}

fn ok(json: Value, human: String) -> Outcome {
    Outcome {
        json,
        human,
        code: 0,
    }
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult = Result<Outcome, CliError>;

fn field_json(field: &Field) -> Value {
    json!({
        "characteristic": field.characteristic(),
        "minpoly": field.minpoly().map(|m| render_minpoly(&m)),
    })
}

fn render_minpoly(coeffs: &[Scalar]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{}", k),
        };
        let cs = c.to_string();
        let term = if var.is_empty() {
            cs
        } else if cs == "1" {
            var
        } else if cs == "-1" {
            format!("-{}", var)
        } else {
            format!("{}*{}", cs, var)
        };
        parts.push(term);
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn relations_json(algebra: &QuadraticAlgebra) -> Value {
    Value::Array(
        algebra
            .relations()
            .iter()
            .map(|r| Value::String(r.to_string()))
            .collect(),
    )
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| Value::String(m.at(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn point_json(p: &[Scalar]) -> Value {
    Value::Array(p.iter().map(|c| Value::String(c.to_string())).collect())
}

fn algebra_summary(doc: &mut serde_json::Map<String, Value>, spec: &AlgebraSpec) {
    doc.insert("field".into(), field_json(&spec.field));
    doc.insert(
        "generators".into(),
        json!(spec.algebra.ctx().names().to_vec()),
    );
    doc.insert("relations".into(), relations_json(&spec.algebra));
}

fn base_doc(command: &str) -> serde_json::Map<String, Value> {
    let mut doc = serde_json::Map::new();
    doc.insert("format_version".into(), json!(FORMAT_VERSION));
    doc.insert("command".into(), json!(command));
    doc
}

fn load_spec(path: &PathBuf) -> Result<AlgebraSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(parse_spec(&text)?)
}

fn human_relations(algebra: &QuadraticAlgebra) -> String {
    algebra
        .relations()
        .iter()
        .map(|r| format!("  {}", r))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_describe(spec_path: &PathBuf) -> CliResult {
    let spec = load_spec(spec_path)?;
    let mut doc = base_doc("describe");
    algebra_summary(&mut doc, &spec);
    doc.insert("dim_relations".into(), json!(spec.algebra.dim_relations()));
    let human = format!(
        "generators: {}\nrelations (dim {}):\n{}",
        spec.algebra.ctx().names().join(", "),
        spec.algebra.dim_relations(),
        human_relations(&spec.algebra)
    );
    Ok(ok(Value::Object(doc), human))
}

fn cmd_hilbert(spec_path: &PathBuf, max_degree: Option<usize>) -> CliResult {
    let spec = load_spec(spec_path)?;
    let max_degree = max_degree.unwrap_or(spec.truncation);
    let dims = spec.algebra.hilbert(max_degree)?;
    let mut doc = base_doc("hilbert");
    algebra_summary(&mut doc, &spec);
    doc.insert("max_degree".into(), json!(max_degree));
    doc.insert("dimensions".into(), json!(dims));
    let human = dims
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    Ok(ok(Value::Object(doc), human))
}

fn cmd_dual(spec_path: &PathBuf) -> CliResult {
    let spec = load_spec(spec_path)?;
    let dual = spec.algebra.koszul_dual();
    let mut doc = base_doc("dual");
    algebra_summary(&mut doc, &spec);
    doc.insert(
        "dual_generators".into(),
        json!(dual.ctx().names().to_vec()),
    );
    doc.insert("dual_relations".into(), relations_json(&dual));
    let human = format!(
        "dual generators: {}\ndual relations (dim {}):\n{}",
        dual.ctx().names().join(", "),
        dual.dim_relations(),
        human_relations(&dual)
    );
    Ok(ok(Value::Object(doc), human))
}

fn cmd_map(spec_path: &PathBuf, matrix: &str, twist: bool) -> CliResult {
    let spec = load_spec(spec_path)?;
    let m = parse_matrix(matrix, &spec.field)?;
    let mapped = if twist {
        spec.algebra.twist(&m)?
    } else {
        spec.algebra.substitute_generators(&m)?
    };
    let mut doc = base_doc(if twist { "twist" } else { "subst" });
    algebra_summary(&mut doc, &spec);
    doc.insert("matrix".into(), matrix_json(&m));
    doc.insert("result_relations".into(), relations_json(&mapped));
    Ok(ok(
        Value::Object(doc),
        format!("result relations:\n{}", human_relations(&mapped)),
    ))
}

fn cmd_ore(spec_path: &PathBuf, phi: &str, delta: &str, name: &str) -> CliResult {
    let spec = load_spec(spec_path)?;
    let phi_m = parse_matrix(phi, &spec.field)?;
    let ctx = spec.algebra.ctx().clone();
    let mut delta_map: BTreeMap<String, NcPoly> = BTreeMap::new();
    for assign in delta.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((gen, expr)) = assign.split_once('=') else {
            return Err(CliError(format!("bad delta assignment `{}`", assign)));
        };
        delta_map.insert(gen.trim().to_string(), parse_ncpoly(expr.trim(), &ctx)?);
    }
    let deltas: Vec<NcPoly> = ctx
        .names()
        .iter()
        .map(|n| {
            delta_map
                .remove(n)
                .unwrap_or_else(|| NcPoly::zero(&ctx))
        })
        .collect();
    if let Some(unknown) = delta_map.keys().next() {
        return Err(CliError(format!("delta assigns unknown generator `{}`", unknown)));
    }
    let data = OreData::new(spec.algebra.clone(), phi_m, deltas)?;
    let mut doc = base_doc("ore");
    algebra_summary(&mut doc, &spec);
    match data.validate()? {
        OreValidation::Ok => {
            let ext = ore_extension(&data, name)?;
            doc.insert("valid".into(), json!(true));
            doc.insert(
                "extension_generators".into(),
                json!(ext.ctx().names().to_vec()),
            );
            doc.insert("extension_relations".into(), relations_json(&ext));
            Ok(ok(
                Value::Object(doc),
                format!(
                    "ore data valid\nextension relations:\n{}",
                    human_relations(&ext)
                ),
            ))
        }
        OreValidation::Fail { reason } => {
            doc.insert("valid".into(), json!(false));
            doc.insert("reason".into(), json!(reason.clone()));
            Ok(Outcome {
                json: Value::Object(doc),
                human: format!("ore data invalid: {}", reason),
                code: 1,
            })
        }
    }
}

fn cmd_point_scheme(
    spec_path: &PathBuf,
    classify: bool,
    sigma: &Option<String>,
    fit_extension: bool,
) -> CliResult {
    let spec = load_spec(spec_path)?;
    let sys = multilinearize(&spec.algebra);
    let cubic = sys.pointscheme_cubic()?.primitive_normalized();
    let mut doc = base_doc("point-scheme");
    algebra_summary(&mut doc, &spec);
    doc.insert("cubic".into(), json!(cubic.to_string()));
    let mut human = vec![format!("cubic: {}", cubic)];
    if classify {
        let class = classify_cubic(&cubic)?;
        doc.insert("class".into(), json!(class.tag()));
        human.push(format!("class: {}", class.tag()));
    }
    if let Some(point_src) = sigma {
        let coords: Result<Vec<Scalar>, _> = point_src
            .split(',')
            .map(|s| parse_scalar(s.trim(), &spec.field))
            .collect();
        let p = coords?;
        if p.len() != 3 {
            return Err(CliError("sigma expects three coordinates".into()));
        }
        let image = sys.sigma_eval(&p)?;
        doc.insert(
            "sigma".into(),
            json!({ "point": point_json(&p), "image": point_json(&image) }),
        );
        human.push(format!(
            "sigma({}) = ({})",
            point_src,
            image
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    if fit_extension {
        let samples = sys.sample_curve_points(10)?;
        if samples.len() < 5 {
            return Err(CliError(format!(
                "only {} rational sample points found; cannot attempt a fit",
                samples.len()
            )));
        }
        match sys.fit_projective_extension(&samples) {
            Ok(Some(t)) => {
                doc.insert(
                    "fit_extension".into(),
                    json!({ "found": true, "matrix": matrix_json(&t) }),
                );
                human.push("extension found".into());
            }
            Ok(None) => {
                doc.insert("fit_extension".into(), json!({ "found": false }));
                human.push("no linear extension of the automorphism exists".into());
            }
            Err(PsError::DegenerateSampleSet) => {
                return Err(CliError("sample set degenerate; need more points".into()))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(ok(Value::Object(doc), human.join("\n")))
}

fn cmd_normal(spec_path: &PathBuf, elements: &str) -> CliResult {
    let spec = load_spec(spec_path)?;
    let ctx = spec.algebra.ctx().clone();
    let seq = parse_ncpoly_list(elements, &ctx)?;
    let mut doc = base_doc("normal");
    algebra_summary(&mut doc, &spec);
    doc.insert(
        "elements".into(),
        json!(seq.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    );
    match is_normalizing_sequence(&ctx, spec.algebra.relations(), &seq)? {
        NormalizingVerdict::Valid { thetas } => {
            doc.insert("valid".into(), json!(true));
            doc.insert(
                "thetas".into(),
                Value::Array(thetas.iter().map(matrix_json).collect()),
            );
            Ok(ok(
                Value::Object(doc),
                "valid normalizing sequence".to_string(),
            ))
        }
        NormalizingVerdict::FailsAt { index } => {
            doc.insert("valid".into(), json!(false));
            doc.insert("failure_index".into(), json!(index));
            Ok(Outcome {
                json: Value::Object(doc),
                human: format!("not a normalizing sequence: fails at index {}", index),
                code: 1,
            })
        }
    }
}

fn cmd_gsca(spec_path: &PathBuf, quadrics: &str) -> CliResult {
    let spec = load_spec(spec_path)?;
    let ctx = spec.algebra.ctx().clone();
    let quads = parse_ncpoly_list(quadrics, &ctx)?;
    let mut doc = base_doc("gsca");
    algebra_summary(&mut doc, &spec);
    doc.insert(
        "quadrics".into(),
        json!(quads.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    );
    match cv_regularity_check(&spec.algebra, &quads, spec.power_bound)? {
        CvOutcome::Pass { dual } => {
            doc.insert("verdict".into(), json!("pass"));
            doc.insert(
                "dual_generators".into(),
                json!(dual.ctx().names().to_vec()),
            );
            doc.insert("dual_relations".into(), relations_json(&dual));
            Ok(ok(
                Value::Object(doc),
                format!(
                    "pass\nregular algebra relations:\n{}",
                    human_relations(&dual)
                ),
            ))
        }
        CvOutcome::Fail {
            stage,
            index,
            witness,
        } => {
            doc.insert("verdict".into(), json!("fail"));
            let stage_name = match stage {
                CvStage::NormalizingSequence => "normalizing-sequence",
                CvStage::EmptyLocus => "empty-locus",
            };
            doc.insert("stage".into(), json!(stage_name));
            let mut human = format!("fail at the {} stage", stage_name);
            if let Some(i) = index {
                doc.insert("failure_index".into(), json!(i));
                human.push_str(&format!(" (element {})", i));
            }
            if let Some((wfield, w)) = &witness {
                doc.insert(
                    "witness".into(),
                    json!({
                        "field": field_json(wfield),
                        "point": point_json(w),
                    }),
                );
                human.push_str(&format!(
                    "\nwitness zero: ({})",
                    w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                ));
            }
            Ok(Outcome {
                json: Value::Object(doc),
                human,
                code: 1,
            })
        }
        CvOutcome::Inconclusive => {
            doc.insert("verdict".into(), json!("inconclusive"));
            Ok(Outcome {
                json: Value::Object(doc),
                human: "inconclusive: the emptiness test exceeded the extension policy".into(),
                code: 1,
            })
        }
    }
}

fn cmd_classify_cubic(poly: &str, field_spec: &str) -> CliResult {
    let field = parse_field_spec(field_spec)?;
    let p: CommPoly = parse_commpoly(poly, &field)?;
    let class = classify_cubic(&p)?;
    let mut doc = base_doc("classify-cubic");
    doc.insert("field".into(), field_json(&field));
    doc.insert("poly".into(), json!(p.to_string()));
    doc.insert("class".into(), json!(class.tag()));
    Ok(ok(
        Value::Object(doc),
        format!("{}", class.tag()),
    ))
}

fn cmd_catalog_list() -> CliResult {
    let mut doc = base_doc("catalog-list");
    let entries = catalog::entries();
    doc.insert(
        "entries".into(),
        Value::Array(
            entries
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "params": e.params,
                        "summary": e.summary,
                    })
                })
                .collect(),
        ),
    );
    let human = entries
        .iter()
        .map(|e| {
            let params = if e.params.is_empty() {
                String::new()
            } else {
                format!("({})", e.params.join(", "))
            };
            format!("{}{}\n    {}", e.name, params, e.summary)
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(ok(Value::Object(doc), human))
}

fn cmd_catalog_build(
    name: &str,
    params: &[String],
    field_spec: &str,
    bypass: bool,
) -> CliResult {
    let field = parse_field_spec(field_spec)?;
    let mut map = BTreeMap::new();
    for kv in params {
        let Some((k, v)) = kv.split_once('=') else {
            return Err(CliError(format!("bad --param `{}` (expected key=value)", kv)));
        };
        map.insert(k.trim().to_string(), parse_scalar(v.trim(), &field)?);
    }
    let built = catalog::build(name, &map, &field, bypass)?;
    let mut doc = base_doc("catalog-build");
    doc.insert("name".into(), json!(name));
    doc.insert("field".into(), field_json(&field));
    doc.insert(
        "generators".into(),
        json!(built.algebra.ctx().names().to_vec()),
    );
    doc.insert("relations".into(), relations_json(&built.algebra));
    doc.insert(
        "expected".into(),
        json!({
            "cubic": built.expected.cubic.as_ref().map(|c| c.to_string()),
            "cubic_class": built.expected.cubic_class,
            "hilbert_prefix": built.expected.hilbert_prefix,
        }),
    );
    let human = format!(
        "generators: {}\nrelations:\n{}",
        built.algebra.ctx().names().join(", "),
        human_relations(&built.algebra)
    );
    Ok(ok(Value::Object(doc), human))
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Describe { spec } => cmd_describe(spec),
        Command::Hilbert { spec, max_degree } => cmd_hilbert(spec, *max_degree),
        Command::Dual { spec } => cmd_dual(spec),
        Command::Twist { spec, matrix } => cmd_map(spec, matrix, true),
        Command::Subst { spec, matrix } => cmd_map(spec, matrix, false),
        Command::Ore {
            spec,
            phi,
            delta,
            name,
        } => cmd_ore(spec, phi, delta, name),
        Command::PointScheme {
            spec,
            classify,
            sigma,
            fit_extension,
        } => cmd_point_scheme(spec, *classify, sigma, *fit_extension),
        Command::Normal { spec, elements } => cmd_normal(spec, elements),
        Command::Gsca { spec, quadrics } => cmd_gsca(spec, quadrics),
        Command::ClassifyCubic { poly, field } => cmd_classify_cubic(poly, field),
        Command::Catalog { sub } => match sub {
            CatalogCmd::List => cmd_catalog_list(),
            CatalogCmd::Build {
                name,
                params,
                field,
                bypass_constraints,
            } => cmd_catalog_build(name, params, field, *bypass_constraints),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Human => println!("{}", outcome.human),
                Format::Structured => {
                    println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap())
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(CliError(message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}
