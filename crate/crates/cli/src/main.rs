//! `cphi` — command-line driver for the harmonic coefficient-pair toolkit.
//!
//! Subcommands map one-to-one onto the library surface: `eval`, `norm`,
//! `compose`, `kernel`, `poisson`, `opnorm`, `audit`, `recover`, and
//! `verify-all`. Series, symbols, boundary grids, and operators are read as
//! JSON (inline or from a file); symbols additionally accept the shorthand
//! `family:params`, e.g. `rotation:0.5`, `moebius:0.3+0.1i`, or
//! `affine:0.5,0.25`.
//!
//! Every run is deterministic. Output goes to stdout unless `--out` names a
//! file, in one of three encodings (`--format text|json|csv`). Floats are
//! printed in shortest round-trip form. Usage errors exit 2, numeric or
//! input failures print a diagnostic JSON object to stderr and exit 1, and
//! `verify-all` exits 1 when any asserted claim fails.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use cphi_core::kernels::{kernel_eval, kernel_norm_sq, kernel_series, kernel_tail_bound};
use cphi_core::operator::{audit_claims, norm_bounds_with, recover_symbol, POWER_ITERATIONS};
use cphi_core::parse::parse_complex;
use cphi_core::poisson::{herglotz_extend, poisson_extend, squared_bound_check};
use cphi_core::verify::run_all;
use cphi_core::{compose, integral_means, probe};
use cphi_core::{BlockOperator, BoundaryGrid, HarmonicSeries, KernelPoint, Symbol};

#[derive(Parser)]
#[command(
    name = "cphi",
    version,
    about = "Harmonic coefficient pairs, reproducing kernels, and composition operators on the unit disc"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormMethod {
    /// Coefficient norm: sqrt of the summed squared moduli.
    Coeff,
    /// sqrt of the sampled integral mean at --radius on --grid nodes.
    Quadrature,
    /// sqrt of the closed-form integral mean at --radius.
    Exact,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a stored series at a point.
    Eval {
        /// Series JSON (inline or a file path).
        #[arg(long)]
        series: String,
        /// Evaluation point, e.g. `0.3+0.2i`.
        #[arg(long)]
        point: String,
    },
    /// Norm of a series; with no --method, reports all three ways.
    Norm {
        #[arg(long)]
        series: String,
        #[arg(long, value_enum)]
        method: Option<NormMethod>,
        /// Circle radius for the integral-mean methods.
        #[arg(long, default_value_t = 0.9)]
        radius: f64,
        /// Quadrature node count.
        #[arg(long, default_value_t = 512)]
        grid: usize,
    },
    /// Compose a series with a symbol; prints the resulting series.
    Compose {
        /// Symbol JSON or `family:params` shorthand.
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        series: String,
        /// Truncation degree of the output (and of shorthand symbols).
        #[arg(long, default_value_t = 64)]
        degree: usize,
    },
    /// Reproducing kernel at a point: its series, norms, and tail bound.
    Kernel {
        /// Kernel point alpha inside the open disc.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 64)]
        degree: usize,
        /// Evaluate K_alpha at this point instead of printing the series.
        #[arg(long)]
        point: Option<String>,
    },
    /// Poisson or Herglotz extension of boundary data to r e^{i angle}.
    Poisson {
        /// Analytic-part boundary samples (real data with --herglotz).
        #[arg(long, required_unless_present = "series", conflicts_with = "series")]
        boundary: Option<String>,
        /// Co-analytic-part boundary samples; zeros when omitted.
        #[arg(long)]
        coboundary: Option<String>,
        /// Sample this series on the boundary instead of reading grids.
        #[arg(long)]
        series: Option<String>,
        /// Node count when sampling a series with --series.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 0.0)]
        angle: f64,
        /// Herglotz integral of real boundary data.
        #[arg(long, default_value_t = false)]
        herglotz: bool,
        /// Report the pointwise squared-bound check instead of the value.
        #[arg(long, default_value_t = false)]
        check_bound: bool,
    },
    /// Largest singular value of the truncated operator, with bounds.
    Opnorm {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 64)]
        degree: usize,
        /// Power-iteration convergence tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Probe-ratio and norm-bound audit of a symbol.
    Audit {
        #[arg(long)]
        symbol: String,
        /// Probe series: `1`, `z`, `z^2`, `zbar`, `z+zbar`, inline JSON, or
        /// a file. Repeatable; a standard set is used when omitted.
        #[arg(long = "probe")]
        probes: Vec<String>,
        #[arg(long, default_value_t = 64)]
        degree: usize,
    },
    /// Decide whether a block operator is a composition operator.
    Recover {
        /// Block operator JSON (inline or a file).
        #[arg(long, required_unless_present = "symbol", conflicts_with = "symbol")]
        operator: Option<String>,
        /// Build the operator section from this symbol instead.
        #[arg(long)]
        symbol: Option<String>,
        #[arg(long, default_value_t = 64)]
        degree: usize,
        /// Residual threshold for the composition verdict.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run the full claim-audit suite and print the traceability table.
    #[command(name = "verify-all")]
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let diag = serde_json::json!({ "error": format!("{err:#}") });
            eprintln!("{diag}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    let (body, code) = match cli.command {
        Cmd::Eval { series, point } => {
            let f = load_series(&series)?;
            let z = complex(&point)?;
            (render_value(f.eval(z), format), ExitCode::SUCCESS)
        }
        Cmd::Norm {
            series,
            method,
            radius,
            grid,
        } => {
            let f = load_series(&series)?;
            (render_norm(&f, method, radius, grid, format)?, ExitCode::SUCCESS)
        }
        Cmd::Compose {
            symbol,
            series,
            degree,
        } => {
            let s = load_symbol(&symbol, degree)?;
            let f = load_series(&series)?;
            let composed = compose::apply_truncated(&s, &f, degree)?;
            (render_series(&composed, format)?, ExitCode::SUCCESS)
        }
        Cmd::Kernel {
            alpha,
            degree,
            point,
        } => {
            let kp = KernelPoint::new(complex(&alpha)?)?;
            match point {
                Some(p) => (render_value(kernel_eval(&kp, complex(&p)?), format), ExitCode::SUCCESS),
                None => (render_kernel(&kp, degree, format)?, ExitCode::SUCCESS),
            }
        }
        Cmd::Poisson {
            boundary,
            coboundary,
            series,
            grid,
            radius,
            angle,
            herglotz,
            check_bound,
        } => {
            let (h, g) = match series {
                Some(spec) => {
                    let f = load_series(&spec)?;
                    BoundaryGrid::from_series_parts(&f, grid)?
                }
                None => {
                    let h = load_grid(boundary.as_deref().expect("required by clap"))?;
                    let g = match coboundary {
                        Some(spec) => load_grid(&spec)?,
                        None => BoundaryGrid::constant(Complex64::ZERO, h.len())?,
                    };
                    (h, g)
                }
            };
            let body = if check_bound {
                let check = squared_bound_check(&h, &g, radius, angle)?;
                match format {
                    Format::Text => format!(
                        "lhs {:?}\nrhs {:?}\nok {}\n",
                        check.lhs, check.rhs, check.ok
                    ),
                    Format::Json => pretty(&check)?,
                    Format::Csv => format!(
                        "lhs,rhs,ok\n{:?},{:?},{}\n",
                        check.lhs, check.rhs, check.ok
                    ),
                }
            } else if herglotz {
                let z = Complex64::from_polar(radius, angle);
                render_value(herglotz_extend(&h, z)?, format)
            } else {
                render_value(poisson_extend(&h, &g, radius, angle)?, format)
            };
            (body, ExitCode::SUCCESS)
        }
        Cmd::Opnorm {
            symbol,
            degree,
            tol,
        } => {
            let s = load_symbol(&symbol, degree)?;
            let report = norm_bounds_with(&s, degree, POWER_ITERATIONS, tol)?;
            let body = match format {
                Format::Text => format!(
                    "sigma_max {:?}\nbounds [{:?}, {:?}]\nupper_tight {:?}\nlower {:?}\n\
                     phi0_modulus {:?}\ndegree {}\nconverged {}\n",
                    report.sigma_max,
                    report.lower,
                    report.upper_loose,
                    report.upper_tight,
                    report.lower,
                    report.phi0_modulus,
                    report.degree,
                    report.converged
                ),
                Format::Json => pretty(&report)?,
                Format::Csv => format!(
                    "degree,phi0_modulus,lower,upper_tight,upper_loose,sigma_max,converged\n\
                     {},{:?},{:?},{:?},{:?},{:?},{}\n",
                    report.degree,
                    report.phi0_modulus,
                    report.lower,
                    report.upper_tight,
                    report.upper_loose,
                    report.sigma_max,
                    report.converged
                ),
            };
            (body, ExitCode::SUCCESS)
        }
        Cmd::Audit {
            symbol,
            probes,
            degree,
        } => {
            let s = load_symbol(&symbol, degree)?;
            let probe_series = if probes.is_empty() {
                probe::recovery_probes()
            } else {
                probes
                    .iter()
                    .map(|p| load_probe(p))
                    .collect::<Result<Vec<_>>>()?
            };
            let report = audit_claims(&s, &probe_series, degree);
            let body = match format {
                Format::Text => {
                    let mut t = String::new();
                    if report.ratios.len() == 1 {
                        t.push_str(&format!("ratio {:?}\n", report.ratios[0]));
                    } else {
                        t.push_str(&format!("ratios {}\n", float_list(&report.ratios)));
                    }
                    if let (Some(sigma), Some(lower), Some(loose)) =
                        (report.sigma_max, report.lower, report.upper_loose)
                    {
                        t.push_str(&format!("sigma_max {sigma:?}\n"));
                        t.push_str(&format!("bounds [{lower:?}, {loose:?}]\n"));
                    }
                    t.push_str(&format!("flags {}\n", display_flags(&report).join(", ")));
                    t
                }
                Format::Json => pretty(&report)?,
                Format::Csv => {
                    let mut t = String::from("probe,ratio\n");
                    for (i, ratio) in report.ratios.iter().enumerate() {
                        t.push_str(&format!("{i},{ratio:?}\n"));
                    }
                    t
                }
            };
            (body, ExitCode::SUCCESS)
        }
        Cmd::Recover {
            operator,
            symbol,
            degree,
            tol,
        } => {
            let op = match (operator, symbol) {
                (Some(spec), None) => {
                    serde_json::from_str::<BlockOperator>(&read_spec(&spec)?)
                        .context("parsing block operator JSON")?
                }
                (None, Some(spec)) => {
                    BlockOperator::from_symbol(&load_symbol(&spec, degree)?, degree)
                }
                _ => unreachable!("clap enforces exactly one source"),
            };
            let mut report = recover_symbol(&op, &probe::recovery_grid())?;
            report.is_composition = report.residual <= tol;
            let body = match format {
                Format::Text => {
                    let mut t = format!(
                        "is_composition {}\nresidual {:?}\n",
                        report.is_composition, report.residual
                    );
                    for (alpha, phi) in report.grid.iter().zip(&report.phi_samples) {
                        t.push_str(&format!(
                            "phi({}) = {}\n",
                            fmt_complex(*alpha),
                            fmt_complex(*phi)
                        ));
                    }
                    if !report.outside_disc.is_empty() {
                        t.push_str(&format!("outside_disc {:?}\n", report.outside_disc));
                    }
                    t
                }
                Format::Json => pretty(&report)?,
                Format::Csv => {
                    let mut t = String::from("alpha_re,alpha_im,phi_re,phi_im\n");
                    for (alpha, phi) in report.grid.iter().zip(&report.phi_samples) {
                        t.push_str(&format!(
                            "{:?},{:?},{:?},{:?}\n",
                            alpha.re, alpha.im, phi.re, phi.im
                        ));
                    }
                    t
                }
            };
            (body, ExitCode::SUCCESS)
        }
        Cmd::VerifyAll => {
            let report = run_all();
            let body = match format {
                Format::Text => report.to_text(),
                Format::Json => pretty(&report)?,
                Format::Csv => {
                    let mut t = String::from("claim,test,status,detail\n");
                    for row in &report.rows {
                        t.push_str(&format!(
                            "{},{},{},{}\n",
                            csv_field(&row.claim),
                            csv_field(&row.test),
                            row.status,
                            csv_field(&row.detail)
                        ));
                    }
                    t
                }
            };
            let code = if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            (body, code)
        }
    };
    emit(cli.out.as_deref(), &body)?;
    Ok(code)
}

// ---------------------------------------------------------------- inputs

/// Inline JSON passes through; anything else is read as a file path.
fn read_spec(spec: &str) -> Result<String> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(trimmed.to_string())
    } else {
        std::fs::read_to_string(trimmed).with_context(|| format!("reading {trimmed}"))
    }
}

fn load_series(spec: &str) -> Result<HarmonicSeries> {
    serde_json::from_str(&read_spec(spec)?).context("parsing series JSON")
}

fn load_grid(spec: &str) -> Result<BoundaryGrid> {
    serde_json::from_str(&read_spec(spec)?).context("parsing boundary grid JSON")
}

fn complex(text: &str) -> Result<Complex64> {
    Ok(parse_complex(text)?)
}

/// Symbols come as inline JSON, a `family:params` shorthand, or a file.
/// Shorthand symbols are truncated at `degree`.
fn load_symbol(spec: &str, degree: usize) -> Result<Symbol> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).context("parsing symbol JSON");
    }
    if let Some((family, params)) = trimmed.split_once(':') {
        let parts: Vec<&str> = params.split(',').collect();
        let arity = |n: usize| -> Result<()> {
            if parts.len() == n {
                Ok(())
            } else {
                bail!("{family} takes {n} parameter(s), got {}", parts.len())
            }
        };
        match family {
            "rotation" => {
                arity(1)?;
                let theta: f64 = parts[0]
                    .trim()
                    .parse()
                    .map_err(|_| anyhow!("rotation angle must be a real number"))?;
                return Ok(Symbol::rotation(theta, degree.max(1))?);
            }
            "monomial" => {
                arity(2)?;
                let alpha = complex(parts[0])?;
                let k: usize = parts[1]
                    .trim()
                    .parse()
                    .map_err(|_| anyhow!("monomial power must be a positive integer"))?;
                return Ok(Symbol::monomial(alpha, k, degree.max(k))?);
            }
            "moebius" => {
                arity(1)?;
                return Ok(Symbol::moebius(complex(parts[0])?, degree.max(1))?);
            }
            "affine" => {
                arity(2)?;
                return Ok(Symbol::affine(
                    complex(parts[0])?,
                    complex(parts[1])?,
                    degree.max(1),
                )?);
            }
            "general" => {
                let coeffs = parts
                    .iter()
                    .map(|p| complex(p))
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Symbol::general(coeffs)?);
            }
            _ => {}
        }
    }
    serde_json::from_str(&read_spec(trimmed)?).context("parsing symbol JSON")
}

fn load_probe(spec: &str) -> Result<HarmonicSeries> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let shorthand = match spec.trim() {
        "1" | "one" => Some(HarmonicSeries::analytic(vec![c(1.0)])),
        "z" => Some(HarmonicSeries::analytic(vec![c(0.0), c(1.0)])),
        "z^2" | "z2" => Some(HarmonicSeries::analytic(vec![c(0.0), c(0.0), c(1.0)])),
        "zbar" | "conj(z)" => Some(HarmonicSeries::coanalytic(vec![c(0.0), c(1.0)])),
        "z+zbar" => Some(HarmonicSeries::new(
            vec![c(0.0), c(1.0)],
            vec![c(0.0), c(1.0)],
        )),
        _ => None,
    };
    match shorthand {
        Some(series) => Ok(series?),
        None => load_series(spec),
    }
}

// --------------------------------------------------------------- outputs

fn emit(out: Option<&std::path::Path>, body: &str) -> Result<()> {
    let body = if body.ends_with('\n') {
        body.to_string()
    } else {
        format!("{body}\n")
    };
    match out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn fmt_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

fn float_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_value(v: Complex64, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", fmt_complex(v)),
        Format::Json => format!("{}\n", serde_json::json!({ "value": [v.re, v.im] })),
        Format::Csv => format!("re,im\n{:?},{:?}\n", v.re, v.im),
    }
}

fn render_series(f: &HarmonicSeries, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text | Format::Json => pretty(f)?,
        Format::Csv => {
            let mut t = String::from("n,a_re,a_im,b_re,b_im\n");
            for n in 0..=f.degree() {
                let a = f.coeff_a(n);
                let b = f.coeff_b(n);
                t.push_str(&format!(
                    "{n},{:?},{:?},{:?},{:?}\n",
                    a.re, a.im, b.re, b.im
                ));
            }
            t
        }
    })
}

fn render_kernel(kp: &KernelPoint, degree: usize, format: Format) -> Result<String> {
    let series = kernel_series(kp, degree);
    Ok(match format {
        Format::Text => format!(
            "norm_sq {:?}\nclosed_norm_sq {:?}\ntail_bound {:?}\nseries {}\n",
            series.norm_sq(),
            kernel_norm_sq(kp),
            kernel_tail_bound(kp, degree),
            serde_json::to_string(&series)?
        ),
        Format::Json => pretty(&serde_json::json!({
            "alpha": [kp.point().re, kp.point().im],
            "degree": degree,
            "norm_sq": series.norm_sq(),
            "closed_norm_sq": kernel_norm_sq(kp),
            "tail_bound": kernel_tail_bound(kp, degree),
            "series": serde_json::to_value(&series)?,
        }))?,
        Format::Csv => render_series(&series, Format::Csv)?,
    })
}

fn render_norm(
    f: &HarmonicSeries,
    method: Option<NormMethod>,
    radius: f64,
    grid: usize,
    format: Format,
) -> Result<String> {
    let compute = |m: NormMethod| -> Result<f64> {
        Ok(match m {
            NormMethod::Coeff => f.norm(),
            NormMethod::Quadrature => {
                integral_means::integral_mean_quadrature(f, radius, grid)?.sqrt()
            }
            NormMethod::Exact => integral_means::integral_mean_exact(f, radius).sqrt(),
        })
    };
    Ok(match method {
        Some(m) => {
            let value = compute(m)?;
            let name = match m {
                NormMethod::Coeff => "coeff",
                NormMethod::Quadrature => "quadrature",
                NormMethod::Exact => "exact",
            };
            match format {
                Format::Text => format!("{value:?}\n"),
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({ "method": name, "value": value })
                ),
                Format::Csv => format!("method,value\n{name},{value:?}\n"),
            }
        }
        None => {
            let coeff = compute(NormMethod::Coeff)?;
            let quadrature = compute(NormMethod::Quadrature)?;
            let exact = compute(NormMethod::Exact)?;
            match format {
                Format::Text => format!(
                    "coeff {coeff:?}\nquadrature {quadrature:?}\nexact {exact:?}\nradius {radius:?}\n"
                ),
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({
                        "coeff": coeff,
                        "quadrature": quadrature,
                        "exact": exact,
                        "radius": radius,
                        "grid": grid,
                    })
                ),
                Format::Csv => format!(
                    "method,value\ncoeff,{coeff:?}\nquadrature,{quadrature:?}\nexact,{exact:?}\n"
                ),
            }
        }
    })
}

/// Audit flags for the text report: the library's kebab-case flags in
/// SCREAMING_SNAKE, plus an explicit NON_ISOMETRY marker when the probe
/// ratios moved off 1.
fn display_flags(report: &cphi_core::AuditReport) -> Vec<String> {
    let mut flags: Vec<String> = report
        .flags
        .iter()
        .map(|f| f.replace('-', "_").to_uppercase())
        .collect();
    if !report.isometric_on_probes {
        flags.push("NON_ISOMETRY".to_string());
    }
    if flags.is_empty() {
        flags.push("NONE".to_string());
    }
    flags
}
