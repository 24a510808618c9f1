mod args;
mod output;
mod target;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use feec_weights::weights::{condition_table, TABLE_BASES};
use feec_weights::{
    build_complex, convergence_experiment, cond2, format_rational, render_svg, space_dim, vandermonde, verify_all,
    DofComplex, ExperimentConfig, FormField, GammaSet, PolyForm, RationalMatrix, Triangle,
};
use serde_json::json;

use args::{parse_range, parse_triangle, DegreeRange};
use output::Sink;

#[derive(Parser, Debug)]
#[command(name = "feec-weights", version, about = "Weights as degrees of freedom for polynomial forms on a triangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Vertices as "x0,y0 x1,y1 x2,y2" with rational coordinates.
    #[arg(long, global = true, value_parser = parse_triangle)]
    triangle: Option<Triangle>,

    /// Output directory, created if missing. Results go to stdout without it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell counts against space dimensions.
    Dims {
        #[arg(long, value_parser = parse_range)]
        r: DegreeRange,
        #[arg(long)]
        gamma_file: Option<PathBuf>,
    },
    /// Exact unisolvence certificates, one report per degree.
    Certify {
        #[arg(long, value_parser = parse_range)]
        r: DegreeRange,
        #[arg(long)]
        gamma_file: Option<PathBuf>,
        /// Remove this edge (by index) from the complex before certifying.
        #[arg(long)]
        drop_edge: Option<usize>,
    },
    /// Condition numbers of the Vandermonde matrices, by polynomial degree.
    Cond {
        /// Polynomial degrees of the table rows.
        #[arg(long, value_parser = parse_range, default_value = "1..6")]
        r: DegreeRange,
        /// Largest sequence degree of the complexes used.
        #[arg(long, default_value_t = 6)]
        r_max: u32,
        /// Only this form degree.
        #[arg(long)]
        k: Option<usize>,
        /// Export the weight matrix of `--k` on the complex of degree `--r`.
        #[arg(long, requires = "k")]
        matrix: bool,
        /// Condition number of the identity, as a sanity check.
        #[arg(long)]
        self_test: bool,
    },
    /// Interpolation residuals of a target 0-form and its derivative.
    Interp {
        #[arg(long, default_value_t = 6)]
        r_max: u32,
        #[arg(long, default_value_t = 20)]
        quad_order: usize,
        #[arg(long, default_value_t = 40)]
        norm_density: u32,
        /// Polynomial target in x and y; the default is e^x sin(pi y).
        #[arg(long)]
        omega: Option<String>,
    },
    /// Cell diagrams.
    Cells {
        #[arg(long, value_parser = parse_range)]
        r: DegreeRange,
        #[arg(long)]
        gamma_file: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<feec_weights::Error> for Failure {
    fn from(e: feec_weights::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let tri = cli.triangle.clone().unwrap_or_else(Triangle::unit_right);
    let sink = Sink::new(cli.out.clone());
    match &cli.command {
        Command::Dims { r, gamma_file } => dims(&tri, r, gamma_file.as_ref(), cli.format, &sink),
        Command::Certify { r, gamma_file, drop_edge } => {
            certify(&tri, r, gamma_file.as_ref(), *drop_edge, cli.format, &sink)
        }
        Command::Cond { r, r_max, k, matrix, self_test } => {
            if *self_test {
                let c = cond2(&RationalMatrix::identity(4).to_f64());
                println!("{c:?}");
                return Ok(c == 1.0);
            }
            if *matrix {
                cond_matrix(&tri, r, k.expect("clap enforces --k"), cli.format, &sink)
            } else {
                cond(&tri, r, *r_max, *k, cli.format, &sink)
            }
        }
        Command::Interp { r_max, quad_order, norm_density, omega } => {
            interp(tri, *r_max, *quad_order, *norm_density, omega.as_deref(), cli.format, &sink)
        }
        Command::Cells { r, gamma_file } => {
            // diagrams default to the apex-up layout
            let tri = cli.triangle.clone().unwrap_or_else(Triangle::figure);
            cells(&tri, r, gamma_file.as_ref(), cli.format, &sink)
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Γ for each requested degree; a file applies to a single degree only.
fn gammas(r: &DegreeRange, gamma_file: Option<&PathBuf>, min: u32) -> Result<Vec<GammaSet>, Failure> {
    if *r.0.start() < min {
        return Err(usage(format!("degree must be at least {min}")));
    }
    match gamma_file {
        Some(path) => {
            let d = r.single().ok_or_else(|| usage("--gamma-file needs a single degree --r"))?;
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let g = GammaSet::parse(d as i64, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(vec![g])
        }
        None => r.iter().map(|d| GammaSet::recursive(d as i64).map_err(|e| usage(e.to_string()))).collect(),
    }
}

fn dims(tri: &Triangle, r: &DegreeRange, gamma_file: Option<&PathBuf>, fmt: Option<Format>, sink: &Sink) -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for g in gammas(r, gamma_file, 2)? {
        let d = g.degree();
        let dims = [0, 1, 2].map(|k| space_dim(d as i64, k).expect("degree checked"));
        let counts = match DofComplex::build(tri, &g) {
            Ok(c) => Some(c.counts()),
            Err(e) => {
                eprintln!("r = {d}: {e}");
                None
            }
        };
        let equal = counts == Some(dims);
        ok &= equal;
        rows.push((d, counts, dims, equal));
    }
    let text = match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("r,f0,f1,f2,dim0,dim1,dim2,equal\n");
            for (d, counts, dims, equal) in &rows {
                let c = counts.map(|c| c.map(|x| x.to_string())).unwrap_or_else(|| [""; 3].map(String::from));
                s.push_str(&format!("{d},{},{},{},{},{},{},{equal}\n", c[0], c[1], c[2], dims[0], dims[1], dims[2]));
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(d, counts, dims, equal)| json!({"r": d, "counts": counts, "dims": dims, "equal": equal}))
                .collect();
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Svg => return Err(usage("dims has no svg output")),
    };
    sink.emit(&format!("dims.{}", ext(fmt, Format::Csv)), &text)?;
    Ok(ok)
}

fn ext(fmt: Option<Format>, default: Format) -> &'static str {
    match fmt.unwrap_or(default) {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Svg => "svg",
    }
}

fn certify(
    tri: &Triangle,
    r: &DegreeRange,
    gamma_file: Option<&PathBuf>,
    drop_edge: Option<usize>,
    fmt: Option<Format>,
    sink: &Sink,
) -> Outcome {
    if fmt == Some(Format::Svg) || fmt == Some(Format::Csv) {
        return Err(usage("certify writes json reports"));
    }
    let mut ok = true;
    for g in gammas(r, gamma_file, 2)? {
        let d = g.degree();
        if let Some(i) = drop_edge {
            let c = DofComplex::build(tri, &g)?;
            if i >= c.edges().len() {
                return Err(usage(format!("edge {i} out of range, r = {d} has {}", c.edges().len())));
            }
            match c.without_edge(i) {
                Ok(_) => eprintln!("r = {d}: complex without edge {i} still builds"),
                Err(e) => eprintln!("r = {d}: {e}"),
            }
            ok = false;
            continue;
        }
        let rep = verify_all(tri, &g);
        let status = if rep.passed { "PASS" } else { "FAIL" };
        let summary = format!(
            "r = {d}: {status} counts {:?} dims {:?} ranks {:?} euler {}",
            rep.counts, rep.dims, rep.ranks, rep.euler
        );
        if sink.to_files() {
            println!("{summary}");
            sink.emit(&format!("certify_r{d}.json"), &(serde_json::to_string_pretty(&rep).expect("json") + "\n"))?;
        } else if fmt == Some(Format::Json) {
            sink.emit("", &(serde_json::to_string_pretty(&rep).expect("json") + "\n"))?;
        } else {
            println!("{summary}");
        }
        for e in &rep.errors {
            eprintln!("r = {d}: {e}");
        }
        ok &= rep.passed;
    }
    Ok(ok)
}

/// Shortest decimal that reads back to the same double.
fn float(x: f64) -> String {
    format!("{x:?}")
}

fn cond(tri: &Triangle, r: &DegreeRange, r_max: u32, k: Option<usize>, fmt: Option<Format>, sink: &Sink) -> Outcome {
    if *r.0.start() < 1 {
        return Err(usage("polynomial degrees start at 1"));
    }
    if let Some(k) = k.filter(|k| *k > 2) {
        return Err(usage(format!("no {k}-forms on a triangle")));
    }
    let rows = condition_table(tri, *r.0.end(), r_max, TABLE_BASES)?;
    let rows: Vec<_> = rows.into_iter().filter(|row| r.0.contains(&row.degree)).collect();
    let cols: Vec<usize> = k.map(|k| vec![k]).unwrap_or_else(|| vec![0, 1, 2]);
    let text = match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("r");
            for c in &cols {
                s.push_str(&format!(",k{c}"));
            }
            s.push('\n');
            for row in &rows {
                s.push_str(&row.degree.to_string());
                for &c in &cols {
                    s.push(',');
                    if let Some(v) = row.cond[c] {
                        s.push_str(&float(v));
                    }
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|row| {
                    let mut m = serde_json::Map::new();
                    m.insert("r".into(), json!(row.degree));
                    for &c in &cols {
                        m.insert(format!("k{c}"), json!(row.cond[c]));
                    }
                    serde_json::Value::Object(m)
                })
                .collect();
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Svg => return Err(usage("cond has no svg output")),
    };
    sink.emit(&format!("cond.{}", ext(fmt, Format::Csv)), &text)?;
    Ok(true)
}

fn cond_matrix(tri: &Triangle, r: &DegreeRange, k: usize, fmt: Option<Format>, sink: &Sink) -> Outcome {
    let d = r.single().ok_or_else(|| usage("--matrix needs a single degree --r"))?;
    if d < 2 || k > 2 {
        return Err(usage("--matrix needs --r at least 2 and --k at most 2"));
    }
    let c = build_complex(tri, d as i64)?;
    let m = vandermonde(&c, k, TABLE_BASES[k])?;
    let name = format!("vandermonde_r{d}_k{k}.{}", ext(fmt, Format::Csv));
    let text = match fmt.unwrap_or(Format::Csv) {
        Format::Csv => m.to_csv(),
        Format::Json => m.to_json() + "\n",
        Format::Svg => return Err(usage("matrices have no svg output")),
    };
    sink.emit(&name, &text)?;
    eprintln!("r = {d}, k = {k}: rank {} of {}, cond {}", m.rank(), m.entries.cols(), float(m.cond2()));
    Ok(m.is_square() && m.rank() == m.entries.cols())
}

fn interp(
    tri: Triangle,
    r_max: u32,
    quad_order: usize,
    norm_density: u32,
    omega: Option<&str>,
    fmt: Option<Format>,
    sink: &Sink,
) -> Outcome {
    if r_max < 2 {
        return Err(usage("--r-max must be at least 2"));
    }
    if norm_density < 1 || quad_order < 1 {
        return Err(usage("--norm-density and --quad-order must be positive"));
    }
    let mut cfg = ExperimentConfig::standard(r_max);
    if let Some(src) = omega {
        let p = target::parse_polynomial(src, &tri).map_err(|e| usage(format!("--omega: {e}")))?;
        let w = PolyForm::scalar(p);
        let dw = w.exterior_derivative(&tri)?;
        cfg.omega = FormField::from_poly(&w, &tri);
        cfg.d_omega = FormField::from_poly(&dw, &tri);
    }
    cfg.tri = tri;
    cfg.quad_order = quad_order;
    cfg.norm_density = norm_density;
    let table = convergence_experiment(&cfg).context("convergence experiment")?;
    match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            sink.emit("convergence.csv", &table.to_csv())?;
            if sink.to_files() {
                sink.emit("convergence.dat", &table.plot_data())?;
            }
        }
        Format::Json => sink.emit("convergence.json", &(serde_json::to_string_pretty(&table).expect("json") + "\n"))?,
        Format::Svg => return Err(usage("interp has no svg output")),
    }
    Ok(true)
}

fn cells(tri: &Triangle, r: &DegreeRange, gamma_file: Option<&PathBuf>, fmt: Option<Format>, sink: &Sink) -> Outcome {
    for g in gammas(r, gamma_file, 2)? {
        let d = g.degree();
        let c = DofComplex::build(tri, &g)?;
        match fmt.unwrap_or(Format::Svg) {
            Format::Svg => sink.emit(&format!("cells_r{d}.svg"), &render_svg(&c))?,
            Format::Json => {
                let bary = |p: &feec_weights::BaryPoint| p.lambdas().iter().map(format_rational).collect::<Vec<_>>();
                let faces: Vec<_> = c
                    .faces()
                    .iter()
                    .map(|f| {
                        json!({
                            "apex": bary(f.apex()),
                            "polygon": f.polygon().iter().map(bary).collect::<Vec<_>>(),
                            "area": format_rational(&f.area(tri)),
                        })
                    })
                    .collect();
                let edges: Vec<_> =
                    c.edges().iter().map(|s| json!({"tail": bary(&s.tail), "head": bary(&s.head)})).collect();
                let v = json!({
                    "r": d,
                    "triangle": tri.to_spec_string(),
                    "gamma": g.points().iter().map(bary).collect::<Vec<_>>(),
                    "vertices": c.vertices().iter().map(bary).collect::<Vec<_>>(),
                    "edges": edges,
                    "faces": faces,
                });
                sink.emit(&format!("cells_r{d}.json"), &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?
            }
            Format::Csv => return Err(usage("cells writes svg or json")),
        }
    }
    Ok(true)
}
