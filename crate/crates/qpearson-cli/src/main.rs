//! Command-line driver: suite execution, family classification, band
//! export, and regularity checks, with JSON reports on stdout (or
//! `--out`) and a human summary on stderr.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input
//! error.

mod family;
mod report_json;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qpearson::awops;
use qpearson::hahn::{self, HahnContext, HahnVerdict};
use qpearson::pearson;
use qpearson::poly::{parse_poly, Poly};
use qpearson::report::{Check, SuiteResult};
use qpearson::scalar::{parse_scalar_with, Mode, QContext, Scalar};
use qpearson::structure;
use qpearson::suites;

use family::Loaded;
use report_json::{ClassJson, ReportJson};

#[derive(Parser)]
#[command(name = "qpearson", version, about = "Exact divided-difference Pearson calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit the timestamp field (byte-identical reports for fixed config).
    #[arg(long, global = true)]
    no_timestamps: bool,
}

#[derive(Args, Clone)]
struct ModeArgs {
    /// Coefficient field: "symbolic" (exact in t) or "rational".
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Rational value of t = q^(1/2) (rational mode only), e.g. "1/2".
    #[arg(long)]
    t: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the eight operator identities on seeded random data.
    VerifyLemma25 {
        #[command(flatten)]
        mode: ModeArgs,
        /// Degree bound for the random polynomials.
        #[arg(long, default_value_t = 8)]
        deg_bound: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reproduce the class-two counterexample family end to end.
    SuiteProp41 {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long = "N", default_value_t = 40)]
        n: usize,
    },
    /// Verify the second-order structure relation of the counterexample.
    SuiteCor43 {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long = "N", default_value_t = 30)]
        n: usize,
    },
    /// Run the classical reference family through every pipeline.
    SuiteClassical {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long = "N", default_value_t = 40)]
        n: usize,
    },
    /// Verify the Hahn class-one family: structure relation, classifier
    /// branch, and Pearson equation.
    SuiteHahnProp66 {
        #[command(flatten)]
        mode: ModeArgs,
        /// Hahn q (rational mode only; symbolic mode sets q = t).
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value = "0")]
        omega: String,
        #[arg(long, default_value = "2")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long = "N", default_value_t = 40)]
        n: usize,
    },
    /// Extract the band of phi D_q P_n for a family file and classify
    /// through the normal-pair pipeline.
    Classify {
        #[arg(long)]
        family: PathBuf,
        /// Polynomial in x, or one of the named structural polynomials
        /// "U1", "U2".
        #[arg(long)]
        phi: String,
        #[arg(long = "N")]
        n: Option<usize>,
        /// Include the family's moment vector in the report.
        #[arg(long)]
        emit_moments: bool,
    },
    /// Dump the band of phi D_q P_n as JSON rows {n, offset, value}.
    Band {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Run the regularity criterion on a pair (phi, psi).
    Regularity {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long = "N", default_value_t = 50)]
        n: usize,
    },
    /// Classify a Hahn family satisfying the three-term structure
    /// relation at the point c.
    HahnClassify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        emit_moments: bool,
    },
}

fn aw_context(mode: &ModeArgs) -> Result<QContext, String> {
    match mode.mode.as_str() {
        "symbolic" => Ok(QContext::symbolic()),
        "rational" => {
            let text = mode
                .t
                .as_deref()
                .ok_or_else(|| "rational mode needs --t".to_string())?;
            let t = parse_scalar_with(text, Mode::Rational, None)
                .map_err(|e| format!("--t: {e}"))?;
            let t = t
                .as_bigrational()
                .ok_or_else(|| "--t must be rational".to_string())?
                .clone();
            QContext::rational(t).map_err(|e| format!("{e}"))
        }
        other => Err(format!("unknown mode {other:?}")),
    }
}

fn parse_phi(text: &str, ctx: &QContext) -> Result<Poly, String> {
    match text {
        "U1" => Ok(awops::u1(ctx)),
        "U2" => Ok(awops::u2(ctx)),
        _ => parse_poly(text, ctx).map_err(|e| format!("--phi: {e}")),
    }
}

fn base_config(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn mode_config(mode: &ModeArgs, n: usize) -> Vec<(&'static str, String)> {
    let mut v = vec![("mode", mode.mode.clone()), ("N", n.to_string())];
    if let Some(t) = &mode.t {
        v.push(("t", t.clone()));
    }
    v
}

fn run(cli: &Cli) -> Result<ReportJson, String> {
    let stamp = !cli.no_timestamps;
    match &cli.command {
        Command::VerifyLemma25 {
            mode,
            deg_bound,
            trials,
            seed,
        } => {
            let ctx = aw_context(mode)?;
            let result = suites::run_lemma_ops(*deg_bound, *trials, *seed, &ctx)
                .map_err(|e| format!("{e}"))?;
            let mut cfg = mode_config(mode, *deg_bound);
            cfg.push(("trials", trials.to_string()));
            cfg.push(("seed", seed.to_string()));
            cfg.push(("command", "verify-lemma25".to_string()));
            eprintln!("{result}");
            Ok(ReportJson::new(&result, base_config(&cfg), stamp))
        }
        Command::SuiteProp41 { mode, n } => {
            let ctx = aw_context(mode)?;
            let result = suites::run_prop41(*n, &ctx).map_err(|e| format!("{e}"))?;
            let mut cfg = mode_config(mode, *n);
            cfg.push(("command", "suite-prop41".to_string()));
            eprintln!("{result}");
            Ok(ReportJson::new(&result, base_config(&cfg), stamp))
        }
        Command::SuiteCor43 { mode, n } => {
            let ctx = aw_context(mode)?;
            let result = suites::run_cor43(*n, &ctx).map_err(|e| format!("{e}"))?;
            let mut cfg = mode_config(mode, *n);
            cfg.push(("command", "suite-cor43".to_string()));
            eprintln!("{result}");
            Ok(ReportJson::new(&result, base_config(&cfg), stamp))
        }
        Command::SuiteClassical { mode, n } => {
            let ctx = aw_context(mode)?;
            let result = suites::run_classical_reference(*n, &ctx).map_err(|e| format!("{e}"))?;
            let mut cfg = mode_config(mode, *n);
            cfg.push(("command", "suite-classical".to_string()));
            eprintln!("{result}");
            Ok(ReportJson::new(&result, base_config(&cfg), stamp))
        }
        Command::SuiteHahnProp66 {
            mode,
            q,
            omega,
            a,
            b,
            n,
        } => {
            let (ctx, scalar_mode) = match mode.mode.as_str() {
                "symbolic" => {
                    let m = Mode::Symbolic;
                    let w = parse_scalar_with(omega, m, Some(Scalar::generator()))
                        .map_err(|e| format!("--omega: {e}"))?;
                    (HahnContext::symbolic(w).map_err(|e| format!("{e}"))?, m)
                }
                "rational" => {
                    let m = Mode::Rational;
                    let qv = q
                        .as_deref()
                        .ok_or_else(|| "rational Hahn mode needs --q".to_string())?;
                    let qv = parse_scalar_with(qv, m, None).map_err(|e| format!("--q: {e}"))?;
                    let w = parse_scalar_with(omega, m, None)
                        .map_err(|e| format!("--omega: {e}"))?;
                    (HahnContext::new(qv, w).map_err(|e| format!("{e}"))?, m)
                }
                other => return Err(format!("unknown mode {other:?}")),
            };
            let t_atom = (scalar_mode == Mode::Symbolic).then(Scalar::generator);
            let av = parse_scalar_with(a, scalar_mode, t_atom.clone())
                .map_err(|e| format!("--a: {e}"))?;
            let bv =
                parse_scalar_with(b, scalar_mode, t_atom).map_err(|e| format!("--b: {e}"))?;
            let result =
                suites::run_hahn_class_one(&av, &bv, *n, &ctx).map_err(|e| format!("{e}"))?;
            let mut cfg = mode_config(mode, *n);
            cfg.push(("omega", omega.clone()));
            cfg.push(("a", a.clone()));
            cfg.push(("b", b.clone()));
            if let Some(qv) = q {
                cfg.push(("q", qv.clone()));
            }
            cfg.push(("command", "suite-hahn-prop66".to_string()));
            eprintln!("{result}");
            Ok(ReportJson::new(&result, base_config(&cfg), stamp))
        }
        Command::Classify {
            family: path,
            phi,
            n,
            emit_moments,
        } => {
            let file = read_family(path)?;
            let n = n.or(file.n).unwrap_or(40);
            let loaded = family::load(&file, n)?;
            let Loaded::AskeyWilson { ctx, fam } = loaded else {
                return Err("classify needs an Askey-Wilson family".to_string());
            };
            let phi = parse_phi(phi, &ctx)?;
            let band = structure::extract_band(&fam, &phi, n, &ctx)
                .map_err(|e| format!("{e}"))?;
            let u = fam.moments(fam.n_max()).map_err(|e| format!("{e}"))?;
            let out = structure::thm32_pipeline(&band, &fam, &u, n, &ctx)
                .map_err(|e| format!("{e}"))?;
            let mut result = SuiteResult::new("classify");
            result.push(match band.check_s_exact() {
                Ok(()) => Check::pass("band_s_exact"),
                Err(k) => Check::fail("band_s_exact", format!("lowest entry missing at n = {k}")),
            });
            result.push(out.pearson_residuals.to_check("pearson_on_moments"));
            result.push(out.normal_residuals.to_check("normal_equation_on_moments"));
            eprintln!("{result}");
            eprintln!("  class verdict: {:?}", out.class.verdict);
            let mut cfg = vec![
                ("family", path.display().to_string()),
                ("N", n.to_string()),
                ("command", "classify".to_string()),
            ];
            cfg.push(("phi", format!("{phi}")));
            let mut report = ReportJson::new(&result, base_config(&cfg), stamp).with_band(&band);
            report.class = Some(ClassJson {
                s: out.s,
                s_naive: out.class.s_naive,
                r_common: out.class.r_common,
                class: out.class.class,
                verdict: format!("{:?}", out.class.verdict),
            });
            if *emit_moments {
                report = report.with_moments(&u);
            }
            Ok(report)
        }
        Command::Band {
            family: path,
            phi,
            n,
        } => {
            let file = read_family(path)?;
            let n = n.or(file.n).unwrap_or(40);
            let loaded = family::load(&file, n)?;
            let Loaded::AskeyWilson { ctx, fam } = loaded else {
                return Err("band needs an Askey-Wilson family".to_string());
            };
            let phi = parse_phi(phi, &ctx)?;
            let band = structure::extract_band(&fam, &phi, n, &ctx)
                .map_err(|e| format!("{e}"))?;
            let mut result = SuiteResult::new("band");
            result.push(match band.check_s_exact() {
                Ok(()) => Check::pass("band_s_exact"),
                Err(k) => Check::fail("band_s_exact", format!("lowest entry missing at n = {k}")),
            });
            eprintln!("{result}");
            eprintln!("  s = {}, offsets = {:?}", band.s(), band.offsets());
            let cfg = vec![
                ("family", path.display().to_string()),
                ("N", n.to_string()),
                ("phi", format!("{phi}")),
                ("command", "band".to_string()),
            ];
            let mut report = ReportJson::new(&result, base_config(&cfg), stamp).with_band(&band);
            report.extra = Some(
                [("s".to_string(), band.s().to_string())]
                    .into_iter()
                    .collect(),
            );
            Ok(report)
        }
        Command::Regularity { mode, phi, psi, n } => {
            let ctx = aw_context(mode)?;
            let phi_p = parse_phi(phi, &ctx)?;
            let psi_p = parse_poly(psi, &ctx).map_err(|e| format!("--psi: {e}"))?;
            let rep = pearson::regularity_thm23(&phi_p, &psi_p, *n, &ctx)
                .map_err(|e| format!("{e}"))?;
            let mut result = SuiteResult::new("regularity");
            result.push(if rep.is_pass() {
                Check::pass_range("regularity_criterion", 0, *n as i64)
            } else {
                let f = &rep.failures[0];
                Check::fail_at(
                    "regularity_criterion",
                    0,
                    *n as i64,
                    f.n as i64,
                    f.reason.clone(),
                )
            });
            eprintln!("{result}");
            let mut cfg = mode_config(mode, *n);
            cfg.push(("phi", phi.clone()));
            cfg.push(("psi", psi.clone()));
            cfg.push(("command", "regularity".to_string()));
            Ok(ReportJson::new(&result, base_config(&cfg), stamp))
        }
        Command::HahnClassify {
            family: path,
            c,
            n,
            emit_moments,
        } => {
            let file = read_family(path)?;
            let n = n.or(file.n).unwrap_or(40);
            let loaded = family::load(&file, n)?;
            let Loaded::Hahn { ctx, fam } = loaded else {
                return Err("hahn-classify needs a Hahn family".to_string());
            };
            let t_atom = (ctx.mode() == Mode::Symbolic).then(Scalar::generator);
            let cv = parse_scalar_with(c, ctx.mode(), t_atom).map_err(|e| format!("--c: {e}"))?;
            let n_eff = n.min(fam.n_max().saturating_sub(2));
            let rep = hahn::thm65_classify(&fam, &cv, n_eff, &ctx)
                .map_err(|e| format!("{e}"))?;
            let mut result = SuiteResult::new("hahn-classify");
            result.push(rep.quad_residuals.to_check("classifier_equation_on_moments"));
            if let Some(dec) = &rep.decomposition {
                result.push(dec.v_pearson.to_check("decomposition_pearson"));
                result.push(dec.moment_identity.to_check("decomposition_moments"));
                result.push(dec.asc_recurrence.to_check("decomposition_recurrence"));
            }
            eprintln!("{result}");
            eprintln!("  verdict: {:?}", rep.verdict);
            let mut extra = BTreeMap::new();
            extra.insert(
                "verdict".to_string(),
                match rep.verdict {
                    HahnVerdict::Classical => "classical".to_string(),
                    HahnVerdict::SemiclassicalClassOne => "semiclassical-class-one".to_string(),
                },
            );
            extra.insert("test_value".to_string(), format!("{}", rep.test_value));
            extra.insert("test_target".to_string(), format!("{}", rep.test_target));
            extra.insert("b2".to_string(), format!("{}", rep.b2));
            extra.insert("lambda_sum".to_string(), format!("{}", rep.lambda_sum));
            extra.insert(
                "lambda_product".to_string(),
                format!("{}", rep.lambda_product),
            );
            extra.insert("condt".to_string(), rep.condt.to_string());
            if let Some(dec) = &rep.decomposition {
                extra.insert("r_plus_s".to_string(), format!("{}", dec.r_plus_s));
                extra.insert("r_times_s".to_string(), format!("{}", dec.r_times_s));
            }
            let cfg = vec![
                ("family", path.display().to_string()),
                ("c", c.clone()),
                ("N", n.to_string()),
                ("command", "hahn-classify".to_string()),
            ];
            let mut report = ReportJson::new(&result, base_config(&cfg), stamp);
            report.extra = Some(extra);
            if *emit_moments {
                let u = fam.moments(fam.n_max()).map_err(|e| format!("{e}"))?;
                report = report.with_moments(&u);
            }
            Ok(report)
        }
    }
}

fn read_family(path: &PathBuf) -> Result<family::FamilyFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed family file: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(report) => {
            let text = report.to_string_pretty();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
