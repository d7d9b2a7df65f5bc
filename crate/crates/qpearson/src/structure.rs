//! Banded structure relations `phi D_q P_n = sum_j a_{n,j} P_j` and their
//! constructive equivalence with Pearson-type equations.
//!
//! The band is extracted by exact basis expansion. From an `s`-exact band
//! (lowest entry `a_{n,n-s}` nonzero from `n = s` on) the dual-basis
//! construction produces, in two sign conventions:
//!
//! - `R_{n+s} = -h_n sum_j (a_{j,n}/h_j) P_j` with
//!   `D_q(phi P_n u) = R_{n+s} u`, giving the pair `psi = R_s`,
//!   `rho = alpha R_{s+1} - (x - alpha B_0) R_s` with
//!   `D_q(phi u) = psi u`, `S_q(phi u) = rho u`;
//! - `Q_{n+s} = +h_n sum_j (a_{j,n}/h_j) P_j` with
//!   `D_q(phi P_n u) = -Q_{n+s} u`, giving the Pearson equation
//!   `D_q((Q_{s+1} - (alpha x - B_0) Q_s) u) = S_q(Q_s u)` and from it the
//!   normal pair `(Phi, Psi)` whose gcd degree decides the class.
//!
//! Both conventions are kept (`R = -Q`), named per construction, so no
//! silent sign flips occur between the two pipelines.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;

use crate::awops::{self, OperatorTable};
use crate::error::{Error, Result};
use crate::linform::LinearForm;
use crate::opseq::OPSFamily;
use crate::pearson::{self, Admissibility, ClassReport, NormalPair, PearsonPair};
use crate::poly::Poly;
use crate::report::ResidualReport;
use crate::scalar::{QContext, Scalar};

/// Nonzero entries `a_{n,j}` of `phi D_q P_n = sum a_{n,j} P_j` for
/// `n <= n_max`, with the observed band depth `s = max(n - j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BandRelation {
    phi: Poly,
    s: usize,
    n_max: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl BandRelation {
    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    /// Largest `n - j` over the nonzero entries; 0 for an empty band.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, n: usize, j: usize) -> Option<&Scalar> {
        self.entries.get(&(n, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(n, j), v)| (n, j, v))
    }

    fn entries_map(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.entries
    }

    /// Distinct offsets `j - n` carrying nonzero entries.
    pub fn offsets(&self) -> BTreeSet<i64> {
        self.entries
            .keys()
            .map(|&(n, j)| j as i64 - n as i64)
            .collect()
    }

    /// `a_{n,n-s} != 0` for all `s <= n <= n_max`; returns the first
    /// offender otherwise.
    pub fn check_s_exact(&self) -> core::result::Result<(), usize> {
        for n in self.s..=self.n_max {
            if !self.entries.contains_key(&(n, n - self.s)) {
                return Err(n);
            }
        }
        Ok(())
    }
}

/// Expand `phi D_q P_n` in the monic basis for `n <= n_max` and record
/// the nonzero coefficients. Needs the family built past
/// `n_max + deg phi - 1`.
pub fn extract_band(
    fam: &OPSFamily,
    phi: &Poly,
    n_max: usize,
    ctx: &QContext,
) -> Result<BandRelation> {
    let mut entries = BTreeMap::new();
    let mut s = 0usize;
    for n in 0..=n_max {
        let lhs = phi.mul(&awops::dq(fam.p(n), ctx));
        if lhs.is_zero() {
            continue;
        }
        let v = fam.expand_in_basis(&lhs)?;
        for (j, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                if j < n {
                    s = s.max(n - j);
                }
                entries.insert((n, j), c);
            }
        }
    }
    Ok(BandRelation {
        phi: phi.clone(),
        s,
        n_max,
        entries,
    })
}

/// The companion band `phi S_q P_n = sum ~a_{n,j} P_j` plus the
/// verification of the linking relation
/// `~a_{n,n-s-1} = -alpha a_{n,n-s} C_{n-s} + a_{n-1,n-s-1} C_n` for
/// `n = s+1..=n_max`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqBand {
    pub entries: BTreeMap<(usize, usize), Scalar>,
    pub lowest_relation: ResidualReport,
}

pub fn sq_band(
    fam: &OPSFamily,
    band: &BandRelation,
    n_max: usize,
    ctx: &QContext,
) -> Result<SqBand> {
    let phi = band.phi();
    let s = band.s();
    let zero = Scalar::int(fam.mode(), 0);
    let mut entries = BTreeMap::new();
    for n in 0..=n_max {
        let lhs = phi.mul(&awops::sq(fam.p(n), ctx));
        if lhs.is_zero() {
            continue;
        }
        for (j, c) in fam.expand_in_basis(&lhs)?.into_iter().enumerate() {
            if !c.is_zero() {
                entries.insert((n, j), c);
            }
        }
    }
    let alpha = ctx.alpha();
    let get = |map: &BTreeMap<(usize, usize), Scalar>, n: usize, j: usize| {
        map.get(&(n, j)).cloned().unwrap_or_else(|| zero.clone())
    };
    let mut first_failure = None;
    for n in (s + 1)..=n_max {
        let lhs = get(&entries, n, n - s - 1);
        let rhs = &(-&(&(&alpha * &get(band.entries_map(), n, n - s)) * fam.c_n(n - s)))
            + &(&get(band.entries_map(), n - 1, n - s - 1) * fam.c_n(n));
        if lhs != rhs {
            first_failure = Some((
                n as i64,
                format!("~a_{{{n},{}}} = {lhs}, expected {rhs}", n - s - 1),
            ));
            break;
        }
    }
    Ok(SqBand {
        entries,
        lowest_relation: ResidualReport {
            lo: (s + 1) as i64,
            hi: n_max as i64,
            first_failure,
        },
    })
}

/// Result of fitting `a_{n,n-s} = (k_1 t^n + k_2 t^(-n)) C_{n-s+1}...C_n`
/// from `n = s, s+1` and checking the remaining band entries plus the
/// second-order difference equation
/// `y(n) - 2 alpha y(n-1) + y(n-2) = 0` for the normalized values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct K1K2Fit {
    pub k1: Scalar,
    pub k2: Scalar,
    pub fit: ResidualReport,
    pub difference_eq: ResidualReport,
}

pub fn fit_k1k2(band: &BandRelation, fam: &OPSFamily, ctx: &QContext) -> Result<K1K2Fit> {
    let s = band.s();
    if let Err(n) = band.check_s_exact() {
        return Err(Error::Precondition {
            msg: format!("band is not s-exact: a_{{{n},{}}} = 0", n - s),
        });
    }
    if band.n_max() < s + 2 {
        return Err(Error::Precondition {
            msg: "need band depth at least s + 2 to fit k1, k2".to_string(),
        });
    }
    // y(n) = a_{n,n-s} / (h_n / h_{n-s})
    let y = |n: usize| -> Result<Scalar> {
        let a = band.entry(n, n - s).expect("s-exact").clone();
        let prod = fam.h_n(n).try_div(fam.h_n(n - s))?;
        a.try_div(&prod)
    };
    let det = &ctx.t_pow(-1) - &ctx.t_pow(1);
    if det.is_zero() {
        return Err(Error::Degenerate {
            msg: "singular 2x2 solve for (k1, k2)".to_string(),
        });
    }
    let ys = y(s)?;
    let ys1 = y(s + 1)?;
    let si = s as i64;
    let k1 = (&(&ys * &ctx.t_pow(-si - 1)) - &(&ys1 * &ctx.t_pow(-si))).try_div(&det)?;
    let k2 = (&(&ys1 * &ctx.t_pow(si)) - &(&ys * &ctx.t_pow(si + 1))).try_div(&det)?;

    let mut fit_failure = None;
    let mut values = alloc::vec::Vec::new();
    for n in s..=band.n_max() {
        let yn = y(n)?;
        let ni = n as i64;
        let expected = &(&k1 * &ctx.t_pow(ni)) + &(&k2 * &ctx.t_pow(-ni));
        if yn != expected {
            fit_failure = Some((ni, format!("y({n}) = {yn}, expected {expected}")));
            break;
        }
        values.push(yn);
    }

    let two_alpha = &ctx.int(2) * &ctx.alpha();
    let mut de_failure = None;
    if fit_failure.is_none() {
        for n in (s + 2)..=band.n_max() {
            let i = n - s;
            let resid = &(&values[i] - &(&two_alpha * &values[i - 1])) + &values[i - 2];
            if !resid.is_zero() {
                de_failure = Some((n as i64, format!("difference equation residual {resid}")));
                break;
            }
        }
    }

    Ok(K1K2Fit {
        k1,
        k2,
        fit: ResidualReport {
            lo: s as i64,
            hi: band.n_max() as i64,
            first_failure: fit_failure,
        },
        difference_eq: ResidualReport {
            lo: (s + 2) as i64,
            hi: band.n_max() as i64,
            first_failure: de_failure,
        },
    })
}

/// Moment-route band and checks for the forward direction: given
/// `(phi, psi, rho)` with `D_q(phi u) = psi u`, `S_q(phi u) = rho u`, the
/// entries are `a_{n,j} = <u, phi P_j D_q P_n> / h_j`. Entries with
/// `j < n - s` (where `s = deg psi`) must vanish, and the lowest entry
/// has the closed form
///
/// - `-lc(psi) alpha_{n-s-1} h_n / (alpha h_{n-s})` when
///   `deg rho - 1 < deg psi`,
/// - `-(lc(rho) gamma_{n-s} + lc(psi) alpha_{n-s-1}) h_n / (alpha h_{n-s})`
///   when `deg rho - 1 = deg psi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Thm31Forward {
    pub s: usize,
    pub band: BTreeMap<(usize, usize), Scalar>,
    pub zeros_below: ResidualReport,
    pub lowest_formula: ResidualReport,
}

pub fn thm31_forward(
    fam: &OPSFamily,
    phi: &Poly,
    psi: &Poly,
    rho: &Poly,
    u: &LinearForm,
    n_max: usize,
    ctx: &QContext,
) -> Result<Thm31Forward> {
    if psi.is_zero() || rho.is_zero() {
        return Err(Error::Precondition {
            msg: "thm31_forward needs nonzero psi and rho".to_string(),
        });
    }
    let s = psi.deg0();
    if rho.deg0() > s + 1 {
        return Err(Error::Precondition {
            msg: "deg rho - 1 <= deg psi is required".to_string(),
        });
    }
    let dp = phi.deg0();
    let needed = (2 * n_max + 2 * dp).saturating_sub(2);
    if needed > u.valid_degree() {
        return Err(Error::DepthExceeded {
            needed,
            have: u.valid_degree(),
        });
    }

    let mut band = BTreeMap::new();
    let mut zero_failure = None;
    for n in 0..=n_max {
        let dqpn = awops::dq(fam.p(n), ctx);
        let base = phi.mul(&dqpn);
        if base.is_zero() {
            continue;
        }
        for j in 0..=(n + dp).saturating_sub(1) {
            let val = u.apply(&base.mul(fam.p(j)))?.try_div(fam.h_n(j))?;
            if !val.is_zero() {
                if j + s < n && zero_failure.is_none() {
                    zero_failure =
                        Some((n as i64, format!("a_{{{n},{j}}} = {val} below the band")));
                }
                band.insert((n, j), val);
            }
        }
    }

    // lowest-entry closed form
    let alpha = ctx.alpha();
    let lc_psi = psi.lc().expect("nonzero").clone();
    let lc_rho = rho.lc().expect("nonzero").clone();
    let rho_at_top = rho.deg0() == s + 1;
    let zero = Scalar::int(fam.mode(), 0);
    let mut lowest_failure = None;
    for n in s..=n_max {
        let m = (n - s) as i64;
        let combo = if rho_at_top {
            &(&lc_rho * &ctx.gamma_n(m)) + &(&lc_psi * &ctx.alpha_n(m - 1))
        } else {
            &lc_psi * &ctx.alpha_n(m - 1)
        };
        let expected = (-&(&combo * fam.h_n(n))).try_div(&(&alpha * fam.h_n(n - s)))?;
        let actual = band.get(&(n, n - s)).unwrap_or(&zero);
        if actual != &expected {
            lowest_failure = Some((
                n as i64,
                format!("a_{{{n},{}}} = {actual}, expected {expected}", n - s),
            ));
            break;
        }
    }

    Ok(Thm31Forward {
        s,
        band,
        zeros_below: ResidualReport {
            lo: 0,
            hi: n_max as i64,
            first_failure: zero_failure,
        },
        lowest_formula: ResidualReport {
            lo: s as i64,
            hi: n_max as i64,
            first_failure: lowest_failure,
        },
    })
}

/// `sign * h_n * sum_{j=max(0, n+1-deg phi)}^{n+s} (a_{j,n}/h_j) P_j`:
/// the dual-basis combination both reverse pipelines build.
fn dual_combination(band: &BandRelation, fam: &OPSFamily, n: usize, negate: bool) -> Result<Poly> {
    let s = band.s();
    let dp = band.phi().deg0();
    let lo = (n + 1).saturating_sub(dp);
    let mut acc = Poly::zero();
    for j in lo..=(n + s) {
        if let Some(a) = band.entry(j, n) {
            let coeff = a.try_div(fam.h_n(j))?;
            acc = acc.add(&fam.p(j).scale(&coeff));
        }
    }
    let scaled = acc.scale(fam.h_n(n));
    Ok(if negate { scaled.neg() } else { scaled })
}

/// Output of the reverse direction: the pair `(psi, rho)` with
/// `D_q(phi u) = psi u` and `S_q(phi u) = rho u` verified on moments, and
/// the admissibility decision for `(rho, psi)` (higher-degree element
/// first, which is the combination the construction actually needs).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Thm31Reverse {
    pub psi: Poly,
    pub rho: Poly,
    pub dq_residuals: ResidualReport,
    pub sq_residuals: ResidualReport,
    pub admissibility: Admissibility,
}

pub fn thm31_reverse(
    band: &BandRelation,
    fam: &OPSFamily,
    u: &LinearForm,
    n_max: usize,
    ctx: &QContext,
) -> Result<Thm31Reverse> {
    let s = band.s();
    if let Err(n) = band.check_s_exact() {
        return Err(Error::Precondition {
            msg: format!("band is not s-exact: a_{{{n},{}}} = 0", n - s),
        });
    }
    if band.n_max() < s + 1 {
        return Err(Error::Precondition {
            msg: "band rows up to s + 1 are needed".to_string(),
        });
    }
    // R_s and R_{s+1} in the negative sign convention
    let r_s = dual_combination(band, fam, 0, true)?;
    let r_s1 = dual_combination(band, fam, 1, true)?;
    if r_s.is_zero() {
        return Err(Error::Degenerate {
            msg: "R_s = 0 contradicts band exactness".to_string(),
        });
    }
    let psi = r_s.clone();
    // rho = alpha R_{s+1} - (x - alpha B_0) R_s
    let alpha = ctx.alpha();
    let x_minus_ab0 = Poly::from_coeffs(alloc::vec![
        -&(&alpha * fam.b_n(0)),
        Scalar::int(fam.mode(), 1)
    ]);
    let rho = r_s1.scale(&alpha).sub(&x_minus_ab0.mul(&r_s));
    if rho.is_zero() {
        return Err(Error::Degenerate {
            msg: "alpha R_{s+1} - (x - alpha B_0) R_s = 0 contradicts regularity".to_string(),
        });
    }

    let phi = band.phi();
    let table = OperatorTable::build(n_max, ctx);
    let one = ctx.int(1);
    let mut dq_failure = None;
    let mut sq_failure = None;
    for n in 0..=n_max {
        let xn = Poly::monomial(one.clone(), n);
        // <D_q(phi u) - psi u, x^n>
        let lhs = -&u.apply(&phi.mul(table.dq_pow(n)))?;
        let rhs = u.apply(&psi.mul(&xn))?;
        if dq_failure.is_none() && lhs != rhs {
            dq_failure = Some((n as i64, format!("residual {} at n = {n}", &lhs - &rhs)));
        }
        // <S_q(phi u) - rho u, x^n>
        let lhs = u.apply(&phi.mul(table.sq_pow(n)))?;
        let rhs = u.apply(&rho.mul(&xn))?;
        if sq_failure.is_none() && lhs != rhs {
            sq_failure = Some((n as i64, format!("residual {} at n = {n}", &lhs - &rhs)));
        }
        if dq_failure.is_some() && sq_failure.is_some() {
            break;
        }
    }

    let admissibility = pearson::admissible(&rho, &psi, n_max.max(50), ctx)?;
    Ok(Thm31Reverse {
        psi,
        rho,
        dq_residuals: ResidualReport {
            lo: 0,
            hi: n_max as i64,
            first_failure: dq_failure,
        },
        sq_residuals: ResidualReport {
            lo: 0,
            hi: n_max as i64,
            first_failure: sq_failure,
        },
        admissibility,
    })
}

/// Output of the class pipeline: the constructed `Q_s`, `Q_{s+1}`,
/// `R_{s+1} = Q_{s+1} - (alpha x - B_0) Q_s`, the Pearson equation
/// `D_q(R_{s+1} u) = S_q(Q_s u)` verified on moments, the normal pair
/// derived from it (also verified), and the class verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Thm32Output {
    pub s: usize,
    pub q_s: Poly,
    pub q_s1: Poly,
    pub r_s1: Poly,
    pub normal: NormalPair,
    pub pearson_residuals: ResidualReport,
    pub normal_residuals: ResidualReport,
    pub class: ClassReport,
}

pub fn thm32_pipeline(
    band: &BandRelation,
    fam: &OPSFamily,
    u: &LinearForm,
    n_max: usize,
    ctx: &QContext,
) -> Result<Thm32Output> {
    let s = band.s();
    if let Err(n) = band.check_s_exact() {
        return Err(Error::Precondition {
            msg: format!("band is not s-exact: a_{{{n},{}}} = 0", n - s),
        });
    }
    if band.n_max() < s + 1 {
        return Err(Error::Precondition {
            msg: "band rows up to s + 1 are needed".to_string(),
        });
    }
    // positive sign convention: D_q(phi P_n u) = -Q_{n+s} u
    let q_s = dual_combination(band, fam, 0, false)?;
    let q_s1 = dual_combination(band, fam, 1, false)?;
    if q_s.is_zero() {
        return Err(Error::Degenerate {
            msg: "Q_s = 0 contradicts band exactness".to_string(),
        });
    }
    let alpha = ctx.alpha();
    let ax_minus_b0 = Poly::from_coeffs(alloc::vec![-fam.b_n(0), alpha.clone()]);
    let r_s1 = q_s1.sub(&ax_minus_b0.mul(&q_s));

    let pair = PearsonPair {
        phi: r_s1.clone(),
        psi: q_s.clone(),
    };
    let pearson_residuals = pearson::verify_pearson(&pair, u, n_max, ctx)?;
    let normal = pearson::pearson_to_normal(&pair, ctx).map_err(|e| match e {
        Error::Degenerate { .. } => Error::Degenerate {
            msg: "Phi = 0 or Psi = 0: regularity contradiction".to_string(),
        },
        other => other,
    })?;
    let normal_residuals = pearson::verify_normal(&normal, u, n_max, ctx)?;
    let mut class = pearson::class_from_normal(&normal, s)?;
    class.s_naive = Some(pearson::naive_class(&pair));
    Ok(Thm32Output {
        s,
        q_s,
        q_s1,
        r_s1,
        normal,
        pearson_residuals,
        normal_residuals,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    /// B = 0, C_n = (1 - q^n)/4: the classical reference family.
    fn q_hermite(ctx: &QContext, n_max: usize) -> OPSFamily {
        let b = alloc::vec![ctx.int(0); n_max + 1];
        let c = (0..=n_max)
            .map(|n| {
                let qn = ctx.t_pow(2 * n as i64);
                &(&ctx.int(1) - &qn) * &ctx.ratio(1, 4)
            })
            .collect();
        OPSFamily::build("q-hermite", b, c).unwrap()
    }

    #[test]
    fn classical_band_is_pure_lowering() {
        let ctx = QContext::symbolic();
        let fam = q_hermite(&ctx, 14);
        let one = parse_poly("1", &ctx).unwrap();
        let band = extract_band(&fam, &one, 12, &ctx).unwrap();
        assert_eq!(band.s(), 1);
        let offsets = band.offsets();
        assert_eq!(offsets.len(), 1);
        assert!(offsets.contains(&-1));
        assert!(band.check_s_exact().is_ok());
        // D_q P_n = gamma_n P_{n-1} for this family
        for n in 1..=12usize {
            assert_eq!(band.entry(n, n - 1).unwrap(), &ctx.gamma_n(n as i64));
        }
    }

    #[test]
    fn zero_phi_gives_empty_band() {
        let ctx = QContext::symbolic();
        let fam = q_hermite(&ctx, 8);
        let band = extract_band(&fam, &Poly::zero(), 6, &ctx).unwrap();
        assert!(band.is_empty());
    }

    #[test]
    fn classical_k1k2_has_closed_form() {
        // y(n) = gamma_n / C_n = -4 t^{-n} / (t - 1/t): k1 = 0
        let ctx = QContext::symbolic();
        let fam = q_hermite(&ctx, 14);
        let one = parse_poly("1", &ctx).unwrap();
        let band = extract_band(&fam, &one, 12, &ctx).unwrap();
        let fit = fit_k1k2(&band, &fam, &ctx).unwrap();
        assert!(fit.fit.is_pass(), "{:?}", fit.fit);
        assert!(fit.difference_eq.is_pass());
        assert!(fit.k1.is_zero());
        let expected_k2 = (-&ctx.int(4))
            .try_div(&(&ctx.t_pow(1) - &ctx.t_pow(-1)))
            .unwrap();
        assert_eq!(fit.k2, expected_k2);
    }

    #[test]
    fn constant_sequence_fails_difference_equation() {
        // y(n) = 1 would need 2 alpha = 2, i.e. q = 1, which the context
        // excludes
        let ctx = QContext::symbolic();
        let one = ctx.int(1);
        let two_alpha = &ctx.int(2) * &ctx.alpha();
        let resid = &(&one - &two_alpha) + &one;
        assert!(!resid.is_zero());
    }

    #[test]
    fn classical_reverse_forward_and_class() {
        let ctx = QContext::symbolic();
        let fam = q_hermite(&ctx, 20);
        let u = fam.moments(20).unwrap();
        let one = parse_poly("1", &ctx).unwrap();
        let band = extract_band(&fam, &one, 10, &ctx).unwrap();
        let rev = thm31_reverse(&band, &fam, &u, 10, &ctx).unwrap();
        assert!(rev.dq_residuals.is_pass(), "{:?}", rev.dq_residuals);
        assert!(rev.sq_residuals.is_pass(), "{:?}", rev.sq_residuals);
        assert!(rev.admissibility.is_admissible());
        let fwd = thm31_forward(&fam, &one, &rev.psi, &rev.rho, &u, 8, &ctx).unwrap();
        assert!(fwd.zeros_below.is_pass());
        assert!(fwd.lowest_formula.is_pass(), "{:?}", fwd.lowest_formula);
        // entry-by-entry agreement between the two routes
        for (n, j, v) in band.entries() {
            if n <= 8 {
                assert_eq!(fwd.band.get(&(n, j)), Some(v), "entry ({n},{j})");
            }
        }
        let out = thm32_pipeline(&band, &fam, &u, 10, &ctx).unwrap();
        assert!(out.pearson_residuals.is_pass());
        assert!(out.normal_residuals.is_pass());
        assert_eq!(out.class.verdict, crate::pearson::Verdict::Classical);
        assert_eq!(out.class.r_common, 0);
    }
}
