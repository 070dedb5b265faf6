//! Command-line front end: every computation in the crate behind one binary
//! with reproducible, header-stamped CSV/JSON output.
//!
//! Exit codes: 0 success, 2 configuration error, 3 tolerance violation,
//! 4 precision-floor abort.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::approx::{compare_truncations, make_bandlimited, GSpec};
use crate::basis::{pswf_eigenvalues, solve_method1, solve_method2_nystrom, PRECISION_FLOOR};
use crate::error::Error;
use crate::jacobi::WeightParams;
use crate::laplace::{kernel_k, KernelMethod, OperatorParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;
pub const EXIT_FLOOR: i32 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "goswf",
    version,
    about = "Generalized oblate spheroidal wave functions: spectra, eigenfunctions, and band-limited approximation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Jacobi weight exponent on (1-x).
    #[arg(long, global = true, default_value_t = 0.0)]
    pub alpha: f64,

    /// Jacobi weight exponent on (1+x).
    #[arg(long, global = true, default_value_t = 0.0)]
    pub beta: f64,

    /// Bandwidth parameter (c_tilde for pswf-check).
    #[arg(long, global = true, default_value_t = 1.0)]
    pub c: f64,

    /// Number of eigenpairs / expansion terms.
    #[arg(long, global = true, default_value_t = 10)]
    pub n_max: usize,

    /// Gauss-Jacobi quadrature order.
    #[arg(long, global = true, default_value_t = 40)]
    pub quad_order: usize,

    /// Jacobi-series truncation order for Method 1 (default: automatic).
    #[arg(long, global = true)]
    pub trunc_order: Option<usize>,

    /// Uniform evaluation grid size on [-1, 1].
    #[arg(long, global = true, default_value_t = 201)]
    pub grid_points: usize,

    /// Magnitude below which eigenvalues are flagged unresolvable.
    #[arg(long, global = true, default_value_t = PRECISION_FLOOR)]
    pub precision_floor: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed recorded in the output header (reserved for randomized checks).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues mu_n by both methods with their cross-method gap.
    Eigenvalues,
    /// Classical PSWF eigenvalue ladder (c_tilde/2pi) |mu~_n|^2.
    PswfCheck,
    /// Grid samples of the first n_max eigenfunctions.
    Eigenfunctions {
        /// Also emit Method-2 (Nystrom-interpolated) columns.
        #[arg(long)]
        both_methods: bool,
    },
    /// GOSWF vs Jacobi truncation errors for a band-limited test function.
    ApproxCompare,
    /// Direct-quadrature vs closed-form kernel agreement.
    KernelCheck,
    /// Eigenvalue derivative dmu_n/dc: both identity variants vs finite difference.
    DerivativeCheck,
}

/// A fully assembled output document: header metadata plus one or more named
/// tables, renderable as CSV or JSON.
struct Document {
    meta: Vec<(String, String)>,
    sections: Vec<Section>,
}

struct Section {
    name: String,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug)]
enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Flag(bool),
}

fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

impl Document {
    fn new(cli: &Cli, command: &str) -> Document {
        let meta = vec![
            ("tool".into(), "goswf".into()),
            ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ("command".into(), command.into()),
            ("alpha".into(), fmt_real(cli.alpha)),
            ("beta".into(), fmt_real(cli.beta)),
            ("c".into(), fmt_real(cli.c)),
            ("n_max".into(), cli.n_max.to_string()),
            ("quad_order".into(), cli.quad_order.to_string()),
            (
                "trunc_order".into(),
                cli.trunc_order.map_or("auto".into(), |t| t.to_string()),
            ),
            ("grid_points".into(), cli.grid_points.to_string()),
            ("precision_floor".into(), fmt_real(cli.precision_floor)),
            ("seed".into(), cli.seed.to_string()),
        ];
        Document {
            meta,
            sections: Vec::new(),
        }
    }

    fn add_meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    fn section(&mut self, name: &str, columns: &[&str]) -> &mut Section {
        self.sections.push(Section {
            name: name.into(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        });
        self.sections.last_mut().unwrap()
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k} = {v}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "# section = {}", s.name);
            let _ = writeln!(out, "{}", s.columns.join(","));
            for row in &s.rows {
                let line: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Int(v) => v.to_string(),
                        Cell::Real(v) => fmt_real(*v),
                        Cell::Text(v) => v.clone(),
                        Cell::Flag(v) => v.to_string(),
                    })
                    .collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
        }
        out
    }

    fn to_json(&self) -> String {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let sections: serde_json::Map<String, serde_json::Value> = self
            .sections
            .iter()
            .map(|s| {
                let rows: Vec<serde_json::Value> = s
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: serde_json::Map<String, serde_json::Value> = s
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(col, cell)| {
                                let v = match cell {
                                    Cell::Int(v) => json!(v),
                                    Cell::Real(v) => json!(v),
                                    Cell::Text(v) => json!(v),
                                    Cell::Flag(v) => json!(v),
                                };
                                (col.clone(), v)
                            })
                            .collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                (s.name.clone(), json!(rows))
            })
            .collect();
        let doc = json!({ "meta": meta, "sections": sections });
        serde_json::to_string_pretty(&doc).expect("json rendering is infallible here")
    }
}

impl Section {
    fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }
}

fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Contract(_) => EXIT_CONFIG,
        Error::Precision(_) => EXIT_FLOOR,
        Error::Internal(_) | Error::Io(_) => EXIT_CONFIG,
    }
}

/// Runs the parsed CLI, returning the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli) -> crate::Result<i32> {
    let weight = WeightParams::new(cli.alpha, cli.beta)?;
    if cli.grid_points < 2 {
        return Err(Error::Contract("grid_points must be at least 2".into()));
    }
    let (doc, code) = match &cli.command {
        Command::Eigenvalues => cmd_eigenvalues(cli, weight)?,
        Command::PswfCheck => cmd_pswf_check(cli)?,
        Command::Eigenfunctions { both_methods } => cmd_eigenfunctions(cli, weight, *both_methods)?,
        Command::ApproxCompare => cmd_approx_compare(cli, weight)?,
        Command::KernelCheck => cmd_kernel_check(cli, weight)?,
        Command::DerivativeCheck => cmd_derivative_check(cli, weight)?,
    };
    let body = match cli.format {
        OutputFormat::Csv => doc.to_csv(),
        OutputFormat::Json => doc.to_json(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(code)
}

fn grid(cli: &Cli) -> Vec<f64> {
    let n = cli.grid_points;
    (0..n)
        .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
        .collect()
}

fn cmd_eigenvalues(cli: &Cli, weight: WeightParams) -> crate::Result<(Document, i32)> {
    let op = OperatorParams::new(weight, cli.c, cli.quad_order)?;
    let basis = solve_method1(&op, cli.n_max, cli.trunc_order)?;
    let sys = solve_method2_nystrom(&op, cli.quad_order)?;
    let mut doc = Document::new(cli, "eigenvalues");
    doc.add_meta("resolved_trunc_order", basis.trunc_order.to_string());
    let sec = doc.section(
        "eigenvalues",
        &["n", "mu_method1", "mu_method2", "rel_diff", "below_floor"],
    );
    let mut tolerance_ok = true;
    for n in 0..cli.n_max {
        let m1 = basis.mu[n];
        let m2 = sys.mu[n];
        let rel = ((m1 - m2) / m1).abs();
        let below = m1.abs() < cli.precision_floor;
        if m1 >= 1e-10 && rel > 1e-8 {
            tolerance_ok = false;
        }
        sec.row(vec![
            Cell::Int(n as i64),
            Cell::Real(m1),
            Cell::Real(m2),
            Cell::Real(rel),
            Cell::Flag(below),
        ]);
    }
    Ok((doc, if tolerance_ok { EXIT_OK } else { EXIT_TOLERANCE }))
}

fn cmd_pswf_check(cli: &Cli) -> crate::Result<(Document, i32)> {
    let n_quad = cli
        .quad_order
        .max(((2.0 * std::f64::consts::E * cli.c).ceil() as usize + 1).max(40));
    let vals = pswf_eigenvalues(cli.c, cli.n_max, n_quad)?;
    let mut doc = Document::new(cli, "pswf-check");
    doc.add_meta("resolved_n_quad", n_quad.to_string());
    let sec = doc.section("pswf_eigenvalues", &["n", "lambda", "below_floor"]);
    for (n, &v) in vals.iter().enumerate() {
        sec.row(vec![
            Cell::Int(n as i64),
            Cell::Real(v),
            Cell::Flag(v.abs() < cli.precision_floor),
        ]);
    }
    Ok((doc, EXIT_OK))
}

fn cmd_eigenfunctions(
    cli: &Cli,
    weight: WeightParams,
    both_methods: bool,
) -> crate::Result<(Document, i32)> {
    let op = OperatorParams::new(weight, cli.c, cli.quad_order)?;
    let basis = solve_method1(&op, cli.n_max, cli.trunc_order)?;
    let sys = if both_methods {
        Some(solve_method2_nystrom(&op, cli.quad_order)?)
    } else {
        None
    };
    let mut doc = Document::new(cli, "eigenfunctions");
    doc.add_meta("resolved_trunc_order", basis.trunc_order.to_string());
    let mut columns: Vec<String> = vec!["x".into()];
    for n in 0..cli.n_max {
        columns.push(format!("psi_{n}"));
    }
    if both_methods {
        for n in 0..cli.n_max {
            columns.push(format!("psi_{n}_nystrom"));
        }
    }
    let col_refs: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();

    // sign alignment between the two methods, per function
    let mut signs = vec![1.0; cli.n_max];
    if let Some(sys) = &sys {
        for n in 0..cli.n_max {
            if basis.below_floor[n] {
                continue;
            }
            let x0 = 0.317;
            let v1 = basis.eval_psi(n, x0)?;
            let v2 = sys.eval_psi(n, x0)?;
            if (v1 - v2).abs() > (v1 + v2).abs() {
                signs[n] = -1.0;
            }
        }
    }

    let sec = doc.section("samples", &col_refs);
    for &x in &grid(cli) {
        let mut row = vec![Cell::Real(x)];
        for n in 0..cli.n_max {
            row.push(Cell::Real(basis.eval_psi(n, x)?));
        }
        if let Some(sys) = &sys {
            for n in 0..cli.n_max {
                if basis.below_floor[n] {
                    row.push(Cell::Text("nan".into()));
                } else {
                    row.push(Cell::Real(signs[n] * sys.eval_psi(n, x)?));
                }
            }
        }
        sec.row(row);
    }
    Ok((doc, EXIT_OK))
}

fn cmd_approx_compare(cli: &Cli, weight: WeightParams) -> crate::Result<(Document, i32)> {
    let op = OperatorParams::new(weight, cli.c, cli.quad_order)?;
    let basis = solve_method1(&op, cli.n_max, cli.trunc_order)?;
    let f = make_bandlimited(&op, &GSpec::Constant(1.0))?;
    let n_list: Vec<usize> = (1..=cli.n_max).collect();
    let report = compare_truncations(&f, &basis, &n_list)?;

    let mut doc = Document::new(cli, "approx-compare");
    doc.add_meta("resolved_trunc_order", basis.trunc_order.to_string());
    doc.add_meta("test_function", "F_c applied to g = 1");

    let sec = doc.section(
        "errors",
        &[
            "N",
            "goswf_err_l2",
            "jacobi_err_l2",
            "goswf_err_sup",
            "jacobi_err_sup",
        ],
    );
    for (i, &n) in report.n_values.iter().enumerate() {
        sec.row(vec![
            Cell::Int(n as i64),
            Cell::Real(report.goswf_err_l2[i]),
            Cell::Real(report.jacobi_err_l2[i]),
            Cell::Real(report.goswf_err_sup[i]),
            Cell::Real(report.jacobi_err_sup[i]),
        ]);
    }

    let sec = doc.section(
        "coefficients",
        &["n", "goswf_coeff", "jacobi_coeff", "coeff_bound"],
    );
    for n in 0..report.goswf_coeffs.len() {
        sec.row(vec![
            Cell::Int(n as i64),
            Cell::Real(report.goswf_coeffs[n]),
            Cell::Real(report.jacobi_coeffs[n]),
            Cell::Real(report.coeff_bound[n]),
        ]);
    }

    // grid samples at the largest requested truncation
    let big_n = cli.n_max;
    let sec = doc.section("grid", &["x", "f", "f_goswf", "f_jacobi"]);
    for &x in &grid(cli) {
        let fx = f.eval(x)?;
        let mut fg = 0.0;
        for k in 0..big_n {
            fg += report.goswf_coeffs[k] * basis.eval_psi(k, x)?;
        }
        let mut fj = 0.0;
        for k in 0..big_n {
            fj += report.jacobi_coeffs[k] * crate::jacobi::eval_normalized(&weight, k, x)?;
        }
        sec.row(vec![
            Cell::Real(x),
            Cell::Real(fx),
            Cell::Real(fg),
            Cell::Real(fj),
        ]);
    }
    Ok((doc, EXIT_OK))
}

fn cmd_kernel_check(cli: &Cli, weight: WeightParams) -> crate::Result<(Document, i32)> {
    let op = OperatorParams::new(weight, cli.c, cli.quad_order)?;
    let mut doc = Document::new(cli, "kernel-check");
    let sec = doc.section("kernel", &["x", "y", "direct", "whittaker", "rel_gap"]);
    let mut max_gap = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let x = -0.9 + 0.2 * i as f64;
            let y = -0.9 + 0.2 * j as f64;
            if x + y <= 0.0 {
                continue;
            }
            let d = kernel_k(&op, x, y, KernelMethod::Direct)?;
            let w = kernel_k(&op, x, y, KernelMethod::Whittaker)?;
            let gap = ((d - w) / d).abs();
            max_gap = max_gap.max(gap);
            sec.row(vec![
                Cell::Real(x),
                Cell::Real(y),
                Cell::Real(d),
                Cell::Real(w),
                Cell::Real(gap),
            ]);
        }
    }
    doc.add_meta("max_rel_gap", fmt_real(max_gap));
    Ok((doc, if max_gap <= 1e-10 { EXIT_OK } else { EXIT_TOLERANCE }))
}

fn cmd_derivative_check(cli: &Cli, weight: WeightParams) -> crate::Result<(Document, i32)> {
    let h = 1e-4;
    let op = OperatorParams::new(weight, cli.c, cli.quad_order)?;
    let op_p = OperatorParams::new(weight, cli.c + h, cli.quad_order)?;
    let op_m = OperatorParams::new(weight, cli.c - h, cli.quad_order)?;
    let basis = solve_method1(&op, cli.n_max, cli.trunc_order)?;
    let basis_p = solve_method1(&op_p, cli.n_max, cli.trunc_order)?;
    let basis_m = solve_method1(&op_m, cli.n_max, cli.trunc_order)?;

    let mut doc = Document::new(cli, "derivative-check");
    let sec = doc.section(
        "derivative",
        &["n", "mu", "variant_a", "variant_b", "finite_difference", "matching"],
    );
    let mut any_resolved = false;
    let mut all_exactly_one = true;
    for n in 0..cli.n_max {
        if basis.below_floor[n] {
            sec.row(vec![
                Cell::Int(n as i64),
                Cell::Real(basis.mu[n]),
                Cell::Text("nan".into()),
                Cell::Text("nan".into()),
                Cell::Text("nan".into()),
                Cell::Text("below_floor".into()),
            ]);
            continue;
        }
        any_resolved = true;
        let (va, vb) = basis.mu_derivative(n)?;
        let fd = (basis_p.mu[n] - basis_m.mu[n]) / (2.0 * h);
        let rel_a = ((va - fd) / fd).abs();
        let rel_b = ((vb - fd) / fd).abs();
        let matching = match (rel_a < 1e-4, rel_b < 1e-4) {
            (true, false) => "variant_a",
            (false, true) => "variant_b",
            (true, true) => "both",
            (false, false) => "neither",
        };
        if matching == "both" || matching == "neither" {
            all_exactly_one = false;
        }
        sec.row(vec![
            Cell::Int(n as i64),
            Cell::Real(basis.mu[n]),
            Cell::Real(va),
            Cell::Real(vb),
            Cell::Real(fd),
            Cell::Text(matching.into()),
        ]);
    }
    if !any_resolved {
        return Err(Error::Precision(
            "all requested eigenvalues are below the precision floor".into(),
        ));
    }
    Ok((
        doc,
        if all_exactly_one { EXIT_OK } else { EXIT_TOLERANCE },
    ))
}
