use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use hecke_zi::asymptotics::{
    main_term_first_moment_with, main_term_ratios, q_extrapolation, FirstMomentConstant, MainTermBreakdown, WeightFunction,
    WeightKind,
};
use hecke_zi::characters::{character_of_twist, quad_symbol, quad_symbol_naive};
use hecke_zi::gauss_sums::{gauss_sum_direct, gauss_sum_fast, gauss_sum_twisted, gauss_sum_twisted_direct};
use hecke_zi::harness::{
    report, sig12, sig12_complex, verify, Experiment, Manifest, OutputFormat, ReportParams, RunConfig, Suite, DEFAULT_MAX_NORM,
    DEFAULT_SEED, NATIVE_DIGITS,
};
use hecke_zi::lfunctions::{
    imprimitive_factor, l_value_direct, l_value_imprimitive_with, zeta_K, zeta_K_2, AfeOptions, LEvaluation,
};
use hecke_zi::moments::{double_dirichlet, exponent_fit, first_moment, ratios_moment, MomentReport, DEFAULT_MAX_X};
use hecke_zi::zi::GaussianInt;

const MANIFEST_NAME: &str = "hecke-zi-manifest.json";

/// A bad name or value on the command line; exits like a clap usage error.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| Usage(e.to_string()).into())
}

/// Quadratic characters, Gauss sums, Hecke L-values and moment experiments over Z[i].
///
/// Every flag can also be set through an environment variable with the `ZI_`
/// prefix, e.g. `ZI_THREADS=8` or `ZI_OUTPUT=json`.
#[derive(Parser, Debug)]
#[command(name = "hecke-zi", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in significant digits (15 or 16; computations are double precision)
    #[arg(long, global = true, env = "ZI_PRECISION", default_value_t = NATIVE_DIGITS)]
    precision: u32,
    /// Worker threads for moment sums [default: available parallelism]
    #[arg(long, global = true, env = "ZI_THREADS")]
    threads: Option<usize>,
    /// Seed for every randomized choice
    #[arg(long, global = true, env = "ZI_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format: text, json or csv
    #[arg(long, global = true, env = "ZI_OUTPUT", default_value = "text")]
    output: String,
    /// Directory for report files and the run manifest
    #[arg(long, global = true, env = "ZI_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Largest norm accepted without --force
    #[arg(long, global = true, env = "ZI_MAX_NORM", default_value_t = DEFAULT_MAX_NORM)]
    max_norm: u64,
    /// Largest X accepted without --force
    #[arg(long, global = true, env = "ZI_MAX_X", default_value_t = DEFAULT_MAX_X)]
    max_x: f64,
    /// Lift the norm and X caps
    #[arg(long, global = true, env = "ZI_FORCE")]
    force: bool,
}

#[derive(Args, Debug, Clone)]
struct WeightArg {
    /// Weight function: exp_decay, exp_both or bump
    #[arg(long, env = "ZI_WEIGHT", default_value = "exp_both")]
    weight: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quadratic residue symbol (a/n), fast and by Euler's criterion
    Symbol { a: String, n: String },
    /// Gauss sum g(r, n) directly and in closed form
    Gauss {
        r: String,
        n: String,
        /// Twisted sum g(r, ψ_j·(·/n)) with j = 1 or 2
        #[arg(long)]
        twisted: Option<u8>,
    },
    /// L(s, χ_m) for a twist m (imprimitive: Euler factors at 2 and m removed)
    Lvalue {
        #[arg(long, allow_hyphen_values = true)]
        twist: String,
        #[arg(long, allow_hyphen_values = true)]
        s_re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        s_im: f64,
        /// afe (anywhere) or direct (Re s > 1)
        #[arg(long, default_value = "afe")]
        method: String,
        /// Norm cutoff of the direct series
        #[arg(long, default_value_t = 200_000)]
        truncation: u64,
    },
    /// Dedekind zeta function of Q(i)
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s_re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        s_im: f64,
        /// Drop the Euler factor at 1+i
        #[arg(long)]
        remove_two: bool,
    },
    /// Predicted main terms; with --beta the ratios average, otherwise the first moment
    Mainterm {
        #[arg(long)]
        x: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "0.1")]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[command(flatten)]
        weight: WeightArg,
        /// Second-term constant of the first moment: beta_limit or as_printed
        #[arg(long, default_value = "beta_limit")]
        constant: String,
        /// Also print the α → 0 polynomial Q(log X)
        #[arg(long)]
        q_poly: bool,
    },
    /// First moment Σ L(1/2+α, χ_{(1+i)²n}) w(N(n)/X) against its main terms
    Moment {
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true, default_value = "0.1")]
        alpha: String,
        #[command(flatten)]
        weight: WeightArg,
        /// Comma-separated X values; fits the residual exponent
        #[arg(long, env = "ZI_X_GRID")]
        x_grid: Option<String>,
        /// Largest acceptable fitted exponent
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.75)]
        fit_bound: f64,
    },
    /// Ratios average Σ L(1/2+α)/L(1/2+β) w(N(n)/X) against its main terms
    Ratios {
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true, default_value = "0.25")]
        alpha: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0.3")]
        beta: String,
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long, env = "ZI_X_GRID")]
        x_grid: Option<String>,
        /// Largest acceptable fitted exponent [default: predicted exponent + 0.25]
        #[arg(long, allow_hyphen_values = true)]
        fit_bound: Option<f64>,
    },
    /// The two truncated expansions of the double Dirichlet series A(s, w)
    Mds {
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        s: String,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        w: String,
        #[arg(long, default_value_t = 2000)]
        cutoff: u64,
    },
    /// Run an invariant suite: symbols, gauss, lfunc, poisson, prop24, asymptotics or all
    Verify { suite: String },
    /// Run an X-grid experiment: thm11, thm12 or cor13
    Report {
        experiment: String,
        #[arg(long, env = "ZI_X_GRID")]
        x_grid: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, env = "ZI_WEIGHT")]
        weight: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        fit_bound: Option<f64>,
    },
}

/// A command's result in all three formats.
struct Rendered {
    text: String,
    json: Value,
    csv: String,
    ok: bool,
    files: Vec<(String, String)>,
    row_runtimes: Vec<f64>,
}

impl Rendered {
    fn new(text: String, json: Value, csv: String) -> Self {
        Rendered { text, json, csv, ok: true, files: Vec::new(), row_runtimes: Vec::new() }
    }
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().with_context(|| format!("not a number: {s:?}"))?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let im = |x: &str| -> Result<f64> {
        Ok(match x {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => x.parse().with_context(|| format!("not a complex number: {s:?}"))?,
        })
    };
    match split {
        Some(k) => {
            Ok(Complex64::new(body[..k].parse().with_context(|| format!("not a complex number: {s:?}"))?, im(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, im(body)?)),
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|x| x.trim().parse::<f64>().with_context(|| format!("bad X-grid entry {x:?}"))).collect()
}

fn parse_gaussian(s: &str) -> Result<GaussianInt> {
    Ok(s.parse::<GaussianInt>()?)
}

fn weight(name: &str) -> Result<WeightFunction> {
    Ok(WeightFunction::new(usage(name.parse::<WeightKind>())?))
}

fn norm_u64(z: &GaussianInt) -> u64 {
    z.norm().try_into().unwrap_or(u64::MAX)
}

fn c_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn symbol_cmd(cfg: &RunConfig, a: &str, n: &str) -> Result<Rendered> {
    let (a, n) = (parse_gaussian(a)?, parse_gaussian(n)?);
    cfg.check_norm("N(n)", norm_u64(&n))?;
    let fast = quad_symbol(&a, &n)?;
    let naive = quad_symbol_naive(&a, &n)?;
    let text = format!("({a}/{n}) = {fast}\nnaive = {naive}\n");
    let json = json!({ "a": a, "n": n, "symbol": fast, "naive": naive });
    let csv = format!("a,n,symbol,naive\n{a},{n},{fast},{naive}\n");
    let mut out = Rendered::new(text, json, csv);
    out.ok = fast == naive;
    Ok(out)
}

fn gauss_cmd(cfg: &RunConfig, r: &str, n: &str, twisted: Option<u8>) -> Result<Rendered> {
    let (r, n) = (parse_gaussian(r)?, parse_gaussian(n)?);
    cfg.check_norm("N(n)", norm_u64(&n).saturating_mul(if twisted.is_some() { 4 } else { 1 }))?;
    let (direct, fast, label) = match twisted {
        Some(j) => (gauss_sum_twisted_direct(&r, j, &n)?, gauss_sum_twisted(&r, j, &n)?, format!("g({r}, ψ_{j}·(·/{n}))")),
        None => (gauss_sum_direct(&r, &n)?, gauss_sum_fast(&r, &n)?, format!("g({r}, {n})")),
    };
    let diff = (direct - fast).norm();
    let text =
        format!("{label}\ndirect = {}\nfast = {}\ndifference = {}\n", sig12_complex(direct), sig12_complex(fast), sig12(diff));
    let json = json!({ "r": r, "n": n, "twisted": twisted, "direct": c_json(direct), "fast": c_json(fast), "difference": diff });
    let csv = format!(
        "r,n,twisted,direct_re,direct_im,fast_re,fast_im,difference\n{r},{n},{},{:e},{:e},{:e},{:e},{:e}\n",
        twisted.map(|j| j.to_string()).unwrap_or_default(),
        direct.re,
        direct.im,
        fast.re,
        fast.im,
        diff
    );
    Ok(Rendered::new(text, json, csv))
}

fn lvalue_cmd(cfg: &RunConfig, twist: &str, s: Complex64, method: &str, truncation: u64) -> Result<Rendered> {
    let m = parse_gaussian(twist)?;
    cfg.check_norm("N(m)", norm_u64(&m))?;
    let ev: LEvaluation = match method {
        "afe" => l_value_imprimitive_with(&m, s, AfeOptions::default())?,
        "direct" => {
            let ch = character_of_twist(&m)?;
            let mut ev = l_value_direct(&ch, s, truncation)?;
            let f = imprimitive_factor(&ch, &m, s)?;
            ev.value *= f;
            ev.est_error *= f.norm();
            ev
        }
        other => return Err(Usage(format!("unknown method '{other}' (afe, direct)")).into()),
    };
    let method_name = serde_json::to_value(ev.method)?.as_str().unwrap_or_default().to_string();
    let text = format!(
        "L({}, χ_{m}) = {}\nest_error = {}\ntruncation_norm = {}\nmethod = {method_name}\n",
        sig12_complex(s),
        sig12_complex(ev.value),
        sig12(ev.est_error),
        ev.truncation_norm
    );
    let json = json!({
        "twist": m, "s_re": s.re, "s_im": s.im,
        "value_re": ev.value.re, "value_im": ev.value.im,
        "est_error": ev.est_error, "truncation_norm": ev.truncation_norm, "method": method_name,
    });
    let csv = format!(
        "twist,s_re,s_im,value_re,value_im,est_error,truncation_norm,method\n{m},{},{},{:e},{:e},{:e},{},{method_name}\n",
        s.re, s.im, ev.value.re, ev.value.im, ev.est_error, ev.truncation_norm
    );
    Ok(Rendered::new(text, json, csv))
}

fn zeta_cmd(s: Complex64, remove_two: bool) -> Result<Rendered> {
    let v = if remove_two { zeta_K_2(s)? } else { zeta_K(s)? };
    let name = if remove_two { "ζ_K^(2)" } else { "ζ_K" };
    let text = format!("{name}({}) = {}\n", sig12_complex(s), sig12_complex(v));
    let json = json!({ "s_re": s.re, "s_im": s.im, "remove_two": remove_two, "value_re": v.re, "value_im": v.im });
    let csv = format!("s_re,s_im,remove_two,value_re,value_im\n{},{},{remove_two},{:e},{:e}\n", s.re, s.im, v.re, v.im);
    Ok(Rendered::new(text, json, csv))
}

fn mainterm_text(m: &MainTermBreakdown) -> String {
    format!(
        "term1 = {}\nterm2 = {}\ntotal = {}\nerror_exponent_bound = {}\n",
        sig12_complex(m.term1),
        sig12_complex(m.term2),
        sig12_complex(m.total()),
        sig12(m.error_exponent_bound)
    )
}

fn mainterm_cmd(x: f64, alpha: &str, beta: Option<&str>, w: &str, constant: &str, q: bool) -> Result<Rendered> {
    let alpha = parse_complex(alpha)?;
    let w = weight(w)?;
    let m = match beta {
        Some(b) => main_term_ratios(x, alpha, parse_complex(b)?, &w)?,
        None => main_term_first_moment_with(x, alpha, &w, usage(constant.parse::<FirstMomentConstant>())?)?,
    };
    let mut text = format!("X = {} alpha = {} weight = {}\n", sig12(x), sig12_complex(alpha), w.kind);
    text.push_str(&mainterm_text(&m));
    let mut json = serde_json::to_value(&m)?;
    let mut csv = format!(
        "X,alpha_re,alpha_im,term1_re,term1_im,term2_re,term2_im\n{x},{},{},{:e},{:e},{:e},{:e}\n",
        alpha.re, alpha.im, m.term1.re, m.term1.im, m.term2.re, m.term2.im
    );
    if q {
        let qe = q_extrapolation(x, &w, FirstMomentConstant::BetaLimit)?;
        let _ = writeln!(text, "Q(log X) = {}\nX·Q(log X) = {}", sig12(qe.value), sig12(x * qe.value));
        json["q_poly"] = serde_json::to_value(&qe)?;
        let _ = writeln!(csv, "# q_poly,{:e}", qe.value);
    }
    Ok(Rendered::new(text, json, csv))
}

fn moment_rows(rows: Vec<MomentReport>, fit_bound: f64) -> Result<Rendered> {
    let mut text = String::from("X lhs term1 term2 residual relative_residual n_count flagged\n");
    let mut csv = String::from("X,alpha_re,alpha_im,beta_re,beta_im,lhs_re,lhs_im,term1_re,term1_im,term2_re,term2_im,residual_re,residual_im,n_count,flagged\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{} {} {} {} {} {} {} {}",
            sig12(r.x),
            sig12_complex(r.lhs),
            sig12_complex(r.term1),
            sig12_complex(r.term2),
            sig12_complex(r.residual),
            sig12(r.relative_residual()),
            r.n_count,
            r.flagged
        );
        let beta = r.beta.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{},{}",
            r.x,
            r.alpha.re,
            r.alpha.im,
            beta.re,
            beta.im,
            r.lhs.re,
            r.lhs.im,
            r.term1.re,
            r.term1.im,
            r.term2.re,
            r.term2.im,
            r.residual.re,
            r.residual.im,
            r.n_count,
            r.flagged
        );
    }
    let mut json = json!({ "rows": rows });
    let mut ok = true;
    if rows.len() >= 4 {
        let (slope, r2) = exponent_fit(&rows)?;
        ok = slope <= fit_bound;
        let _ = writeln!(
            text,
            "fit slope={} r2={} bound={} {}",
            sig12(slope),
            sig12(r2),
            sig12(fit_bound),
            if ok { "PASS" } else { "FAIL" }
        );
        json["fit"] = json!({ "slope": slope, "r2": r2, "bound": fit_bound, "passed": ok });
    }
    let runtimes = rows.iter().map(|r| r.runtime_s).collect();
    let mut out = Rendered::new(text, json, csv);
    out.ok = ok;
    out.row_runtimes = runtimes;
    Ok(out)
}

fn grid_or_single(x: Option<f64>, grid: Option<&str>) -> Result<Vec<f64>> {
    match (x, grid) {
        (_, Some(g)) => parse_grid(g),
        (Some(x), None) => Ok(vec![x]),
        (None, None) => bail!("give --x or --x-grid"),
    }
}

fn verify_cmd(cfg: &RunConfig, suite: &str) -> Result<Rendered> {
    let suite: Suite = usage(suite.parse())?;
    let rep = verify(suite, cfg)?;
    let mut out = Rendered::new(rep.render_text(), serde_json::to_value(&rep)?, rep.to_csv());
    out.ok = rep.passed();
    Ok(out)
}

fn report_cmd(cfg: &RunConfig, experiment: &str, params: ReportParams) -> Result<Rendered> {
    let exp: Experiment = usage(experiment.parse())?;
    let rep = report(exp, cfg, &params)?;
    let name = exp.as_str();
    let json_text = serde_json::to_string_pretty(&rep)?;
    let mut out = Rendered::new(rep.render_text(), serde_json::to_value(&rep)?, rep.to_csv());
    out.ok = rep.passed();
    out.row_runtimes = rep.runtimes();
    out.files = vec![
        (format!("{name}.csv"), rep.to_csv()),
        (format!("{name}_residuals.csv"), rep.residual_csv()),
        (format!("{name}.json"), json_text + "\n"),
        (format!("{name}.txt"), rep.render_text()),
    ];
    Ok(out)
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let c = &cli.common;
    let threads = c.threads.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let cfg = RunConfig {
        precision_digits: c.precision,
        threads,
        seed: c.seed,
        output_format: usage(c.output.parse::<OutputFormat>())?,
        max_norm: c.max_norm,
        max_x: c.max_x,
        force: c.force,
    };
    cfg.validate()?;
    let opts = cfg.moment_options();
    let (label, rendered) = match &cli.command {
        Command::Symbol { a, n } => ("symbol", symbol_cmd(&cfg, a, n)?),
        Command::Gauss { r, n, twisted } => ("gauss", gauss_cmd(&cfg, r, n, *twisted)?),
        Command::Lvalue { twist, s_re, s_im, method, truncation } => {
            ("lvalue", lvalue_cmd(&cfg, twist, Complex64::new(*s_re, *s_im), method, *truncation)?)
        }
        Command::Zeta { s_re, s_im, remove_two } => ("zeta", zeta_cmd(Complex64::new(*s_re, *s_im), *remove_two)?),
        Command::Mainterm { x, alpha, beta, weight: w, constant, q_poly } => {
            ("mainterm", mainterm_cmd(*x, alpha, beta.as_deref(), &w.weight, constant, *q_poly)?)
        }
        Command::Moment { x, alpha, weight: w, x_grid, fit_bound } => {
            let (alpha, w) = (parse_complex(alpha)?, weight(&w.weight)?);
            let mut rows = Vec::new();
            for x in grid_or_single(*x, x_grid.as_deref())? {
                rows.push(first_moment(x, alpha, &w, &opts)?);
            }
            ("moment", moment_rows(rows, *fit_bound)?)
        }
        Command::Ratios { x, alpha, beta, weight: w, x_grid, fit_bound } => {
            let (alpha, beta, w) = (parse_complex(alpha)?, parse_complex(beta)?, weight(&w.weight)?);
            let mut rows = Vec::new();
            for x in grid_or_single(*x, x_grid.as_deref())? {
                rows.push(ratios_moment(x, alpha, beta, &w, &opts)?);
            }
            let bound = fit_bound.unwrap_or(hecke_zi::asymptotics::error_exponent(alpha, beta) + 0.25);
            ("ratios", moment_rows(rows, bound)?)
        }
        Command::Mds { s, w, cutoff } => {
            cfg.check_norm("cutoff", *cutoff)?;
            let d = double_dirichlet(parse_complex(s)?, parse_complex(w)?, *cutoff, &opts)?;
            let text = format!(
                "A(s, w) at s = {}, w = {}, cutoff {}\nvalA = {}\nvalB = {}\ndifference = {}\ntruncation_estimate = {}\n",
                sig12_complex(d.s),
                sig12_complex(d.w),
                d.cutoff,
                sig12_complex(d.val_a),
                sig12_complex(d.val_b),
                sig12(d.difference()),
                sig12(d.truncation_estimate())
            );
            let csv = format!(
                "s_re,s_im,w_re,w_im,cutoff,valA_re,valA_im,valB_re,valB_im,difference,truncation_estimate\n{},{},{},{},{},{:e},{:e},{:e},{:e},{:e},{:e}\n",
                d.s.re, d.s.im, d.w.re, d.w.im, d.cutoff, d.val_a.re, d.val_a.im, d.val_b.re, d.val_b.im, d.difference(), d.truncation_estimate()
            );
            let mut json = serde_json::to_value(d)?;
            json["difference"] = json!(d.difference());
            json["truncation_estimate"] = json!(d.truncation_estimate());
            ("mds", Rendered::new(text, json, csv))
        }
        Command::Verify { suite } => ("verify", verify_cmd(&cfg, suite)?),
        Command::Report { experiment, x_grid, alpha, beta, weight: w, fit_bound } => {
            let params = ReportParams {
                x_grid: x_grid.as_deref().map(parse_grid).transpose()?,
                alpha: alpha.as_deref().map(parse_complex).transpose()?,
                beta: beta.as_deref().map(parse_complex).transpose()?,
                weight: usage(w.as_deref().map(|s| s.parse::<WeightKind>()).transpose())?,
                fit_bound: *fit_bound,
            };
            ("report", report_cmd(&cfg, experiment, params)?)
        }
    };

    match cfg.output_format {
        OutputFormat::Text => print!("{}", rendered.text),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&rendered.json)?),
        OutputFormat::Csv => print!("{}", rendered.csv),
    }

    std::fs::create_dir_all(&c.out_dir).with_context(|| format!("creating {}", c.out_dir.display()))?;
    let mut manifest = Manifest::new(std::env::args().collect::<Vec<_>>().join(" "), &cfg);
    for (name, body) in &rendered.files {
        let path = c.out_dir.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        manifest.outputs.push(name.clone());
    }
    if manifest.outputs.is_empty() {
        manifest.outputs.push(format!("stdout ({label}, {})", cfg.output_format));
    }
    manifest.row_runtimes_s = rendered.row_runtimes;
    manifest.runtime_s = started.elapsed().as_secs_f64();
    let path = c.out_dir.join(MANIFEST_NAME);
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(rendered.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.25").unwrap(), Complex64::new(0.25, 0.0));
        assert_eq!(parse_complex("0.1+0.2i").unwrap(), Complex64::new(0.1, 0.2));
        assert_eq!(parse_complex("-1e-3-2i").unwrap(), Complex64::new(-1e-3, -2.0));
        assert_eq!(parse_complex("1e+2+i").unwrap(), Complex64::new(100.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert_eq!(parse_grid("1000, 2000,4000").unwrap(), vec![1000.0, 2000.0, 4000.0]);
        assert!(parse_grid("1000,x").is_err());
    }
}
