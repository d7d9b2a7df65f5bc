//! Family file ingestion.
//!
//! A family file is JSON with scalar literals in the scalar grammar:
//!
//! ```json
//! {
//!   "mode": "symbolic" | "rational",
//!   "t": "1/2",                       // Askey-Wilson rational mode
//!   "operator": "aw" | "hahn",        // default "aw"
//!   "q": "1/4", "omega": "0",         // Hahn mode parameters
//!   "family": "prop41",               // registry name, or explicit:
//!   "B": ["0", "0", ...],
//!   "C": ["0", "(1+t)/2", ...],
//!   "params": { "a": "2", "b": "1", "r": "1", "s": "2" },
//!   "N": 40
//! }
//! ```
//!
//! Registry names: `prop41`, `q-hermite` (Askey-Wilson); `hahn-class1`
//! (params `a`, `b`), `al-salam-carlitz` (params `r`, `s`) (Hahn).

use std::collections::BTreeMap;

use serde::Deserialize;

use qpearson::hahn::{self, HahnContext};
use qpearson::opseq::OPSFamily;
use qpearson::scalar::{parse_scalar_with, Mode, QContext, Scalar};
use qpearson::suites;

#[derive(Debug, Deserialize)]
pub struct FamilyFile {
    pub mode: String,
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub operator: Option<String>,
    #[serde(default)]
    pub q: Option<String>,
    #[serde(default)]
    pub omega: Option<String>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(rename = "B", default)]
    pub b: Option<Vec<String>>,
    #[serde(rename = "C", default)]
    pub c: Option<Vec<String>>,
    #[serde(rename = "N", default)]
    pub n: Option<usize>,
}

pub enum Loaded {
    AskeyWilson { ctx: QContext, fam: OPSFamily },
    Hahn { ctx: HahnContext, fam: OPSFamily },
}

fn bad(msg: impl Into<String>) -> String {
    msg.into()
}

/// Parse and build the family described by a file, deep enough for a
/// depth-`n` run (the build itself goes `n + 8` levels so bands, moments,
/// and classifier residuals all fit).
pub fn load(file: &FamilyFile, n_default: usize) -> Result<Loaded, String> {
    let mode = match file.mode.as_str() {
        "symbolic" => Mode::Symbolic,
        "rational" => Mode::Rational,
        other => return Err(bad(format!("unknown mode {other:?}"))),
    };
    let n = file.n.unwrap_or(n_default);
    let depth = n + 8;
    let operator = file.operator.as_deref().unwrap_or("aw");
    match operator {
        "aw" => {
            let ctx = match mode {
                Mode::Symbolic => QContext::symbolic(),
                Mode::Rational => {
                    let text = file
                        .t
                        .as_deref()
                        .ok_or_else(|| bad("rational Askey-Wilson mode needs \"t\""))?;
                    let t = parse_scalar_with(text, Mode::Rational, None)
                        .map_err(|e| bad(format!("t: {e}")))?;
                    let t = t
                        .as_bigrational()
                        .ok_or_else(|| bad("t must be rational"))?
                        .clone();
                    QContext::rational(t).map_err(|e| bad(format!("{e}")))?
                }
            };
            let fam = build_aw_family(file, &ctx, depth)?;
            Ok(Loaded::AskeyWilson { ctx, fam })
        }
        "hahn" => {
            let ctx = match mode {
                Mode::Symbolic => {
                    let omega = scalar_field(file.omega.as_deref(), "omega", mode, None)?
                        .unwrap_or_else(|| Scalar::int(mode, 0));
                    HahnContext::symbolic(omega).map_err(|e| bad(format!("{e}")))?
                }
                Mode::Rational => {
                    let q = scalar_field(file.q.as_deref(), "q", mode, None)?
                        .ok_or_else(|| bad("rational Hahn mode needs \"q\""))?;
                    let omega = scalar_field(file.omega.as_deref(), "omega", mode, None)?
                        .unwrap_or_else(|| Scalar::int(mode, 0));
                    HahnContext::new(q, omega).map_err(|e| bad(format!("{e}")))?
                }
            };
            let fam = build_hahn_family(file, &ctx, depth)?;
            Ok(Loaded::Hahn { ctx, fam })
        }
        other => Err(bad(format!("unknown operator {other:?}"))),
    }
}

fn scalar_field(
    text: Option<&str>,
    name: &str,
    mode: Mode,
    t: Option<Scalar>,
) -> Result<Option<Scalar>, String> {
    match text {
        None => Ok(None),
        Some(s) => parse_scalar_with(s, mode, t)
            .map(Some)
            .map_err(|e| bad(format!("{name}: {e}"))),
    }
}

fn param(file: &FamilyFile, name: &str, mode: Mode, t: Option<Scalar>) -> Result<Scalar, String> {
    let text = file
        .params
        .get(name)
        .ok_or_else(|| bad(format!("family parameter {name:?} missing")))?;
    parse_scalar_with(text, mode, t).map_err(|e| bad(format!("param {name}: {e}")))
}

fn explicit_tables(
    file: &FamilyFile,
    mode: Mode,
    t: Option<Scalar>,
    depth: usize,
) -> Result<Option<OPSFamily>, String> {
    let (Some(b), Some(c)) = (&file.b, &file.c) else {
        return Ok(None);
    };
    if b.len() != c.len() {
        return Err(bad("B and C tables must have equal length"));
    }
    if b.len() <= depth {
        return Err(bad(format!(
            "explicit tables too short: need {} entries for this run, found {}",
            depth + 1,
            b.len()
        )));
    }
    let parse_all = |v: &[String], label: &str| {
        v.iter()
            .map(|s| parse_scalar_with(s, mode, t.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("{label}: {e}")))
    };
    let b = parse_all(b, "B")?;
    let c = parse_all(c, "C")?;
    OPSFamily::build("explicit", b, c)
        .map(Some)
        .map_err(|e| bad(format!("{e}")))
}

fn build_aw_family(file: &FamilyFile, ctx: &QContext, depth: usize) -> Result<OPSFamily, String> {
    if let Some(fam) = explicit_tables(file, ctx.mode(), Some(ctx.t()), depth)? {
        return Ok(fam);
    }
    match file.family.as_deref() {
        Some("prop41") => suites::prop41_family(ctx, depth).map_err(|e| bad(format!("{e}"))),
        Some("q-hermite") => {
            suites::q_hermite_family(ctx, depth).map_err(|e| bad(format!("{e}")))
        }
        Some(other) => Err(bad(format!("unknown Askey-Wilson family {other:?}"))),
        None => Err(bad("family file needs \"family\" or explicit B/C tables")),
    }
}

fn build_hahn_family(
    file: &FamilyFile,
    ctx: &HahnContext,
    depth: usize,
) -> Result<OPSFamily, String> {
    let t = match ctx.mode() {
        Mode::Symbolic => Some(Scalar::generator()),
        Mode::Rational => None,
    };
    if let Some(fam) = explicit_tables(file, ctx.mode(), t.clone(), depth)? {
        return Ok(fam);
    }
    match file.family.as_deref() {
        Some("hahn-class1") => {
            let a = param(file, "a", ctx.mode(), t.clone())?;
            let b = param(file, "b", ctx.mode(), t)?;
            hahn::class_one_family(&a, &b, depth, ctx).map_err(|e| bad(format!("{e}")))
        }
        Some("al-salam-carlitz") => {
            let r = param(file, "r", ctx.mode(), t.clone())?;
            let s = param(file, "s", ctx.mode(), t)?;
            hahn::al_salam_carlitz_family(&r, &s, depth, ctx).map_err(|e| bad(format!("{e}")))
        }
        Some(other) => Err(bad(format!("unknown Hahn family {other:?}"))),
        None => Err(bad("family file needs \"family\" or explicit B/C tables")),
    }
}
