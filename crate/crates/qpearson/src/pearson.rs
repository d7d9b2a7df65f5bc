//! Pearson equations for the Askey-Wilson operator pair.
//!
//! A Pearson pair `(phi, psi)` encodes `D_q(phi u) = S_q(psi u)`; with
//! `deg phi <= 2` and `deg psi = 1` this is the classical case, whose
//! solvability is decided by an explicit regularity criterion on the
//! coefficients. A normal pair `(Phi, Psi)` encodes the first-order form
//! `Phi D_q u = Psi S_q u`; the two shapes convert into each other through
//! the operator identities, and the degree of `gcd(Phi, Psi)` counts the
//! common zeros that determine the semiclassical class.
//!
//! Common zeros are counted as `deg gcd` over the algebraic closure
//! (multiplicity included): root isolation over `Q(t)` is not available
//! here, and the factor-out argument the class count rests on sees exactly
//! the gcd degree.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::awops::{self, OperatorTable};
use crate::error::{Error, Result};
use crate::linform::LinearForm;
use crate::poly::Poly;
use crate::report::ResidualReport;
use crate::scalar::{Mode, QContext};

/// `(phi, psi)` with `D_q(phi u) = S_q(psi u)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PearsonPair {
    pub phi: Poly,
    pub psi: Poly,
}

/// `(Phi, Psi)` with `Phi D_q u = Psi S_q u`; both nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalPair {
    pub phi: Poly,
    pub psi: Poly,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Classical,
    Semiclassical(usize),
    NotRegular,
    Inconclusive,
}

/// Classification output of the band pipeline. When produced from an
/// `s`-banded relation, `class = s - 1 - r_common`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassReport {
    /// Naive class `max(deg phi - 2, deg psi - 1)` of the generating
    /// Pearson pair, when one is known.
    pub s_naive: Option<i64>,
    /// `deg gcd(Phi, Psi)`.
    pub r_common: usize,
    pub class: usize,
    pub verdict: Verdict,
}

/// `max(deg phi - 2, deg psi - 1)`.
pub fn naive_class(pair: &PearsonPair) -> i64 {
    let p = pair.phi.deg0() as i64;
    let q = pair.psi.deg0() as i64;
    (p - 2).max(q - 1)
}

/// Check `<D_q(phi u) - S_q(psi u), x^n> = 0` for `n = 0..=n_max`,
/// i.e. `-<phi u, D_q x^n> = <psi u, S_q x^n>` exactly. Errors when the
/// moment vector is too shallow for the requested range.
pub fn verify_pearson(
    pair: &PearsonPair,
    u: &LinearForm,
    n_max: usize,
    ctx: &QContext,
) -> Result<ResidualReport> {
    let depth = u.valid_degree();
    let dp = pair.phi.deg0();
    let ds = pair.psi.deg0();
    let needed = (n_max + dp).saturating_sub(1).max(n_max + ds);
    if needed > depth {
        return Err(Error::DepthExceeded {
            needed,
            have: depth,
        });
    }
    let table = OperatorTable::build(n_max, ctx);
    let mut first_failure = None;
    for n in 0..=n_max {
        let lhs = -&u.apply(&pair.phi.mul(table.dq_pow(n)))?;
        let rhs = u.apply(&pair.psi.mul(table.sq_pow(n)))?;
        if lhs != rhs {
            first_failure = Some((n as i64, format!("residual {} at n = {n}", &lhs - &rhs)));
            break;
        }
    }
    Ok(ResidualReport {
        lo: 0,
        hi: n_max as i64,
        first_failure,
    })
}

/// One failing index of the regularity criterion, with the reason.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularityFailure {
    pub n: usize,
    pub reason: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularityReport {
    pub n_max: usize,
    pub failures: Vec<RegularityFailure>,
}

impl RegularityReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Regularity criterion for `phi = a x^2 + b x + c`, `psi = d x + e`: the
/// form solving the Pearson equation is regular iff for every `n`
///
/// `d_n = a gamma_n + d alpha_n != 0` and `phi^[n](-e_n/d_{2n}) != 0`,
///
/// where `e_n = b gamma_n + e alpha_n` and
///
/// `phi^[n](x) = (d (alpha^2 - 1) gamma_{2n} + a alpha_{2n})(x^2 - 1/2)
///             + (b alpha_n + e (alpha^2 - 1) gamma_n) x + c + a/2`.
///
/// Checked for `n <= n_max`; a vanishing `d_{2n}` makes the evaluation
/// point undefined and is itself a regularity failure at that `n`.
pub fn regularity_thm23(
    phi: &Poly,
    psi: &Poly,
    n_max: usize,
    ctx: &QContext,
) -> Result<RegularityReport> {
    if phi.deg0() > 2 || psi.deg0() > 1 {
        return Err(Error::Precondition {
            msg: "regularity criterion needs deg phi <= 2 and deg psi <= 1".to_string(),
        });
    }
    let zero = ctx.int(0);
    let cf = |p: &Poly, k: usize| p.coeff(k).cloned().unwrap_or_else(|| zero.clone());
    let (a, b, c) = (cf(phi, 2), cf(phi, 1), cf(phi, 0));
    let (d, e) = (cf(psi, 1), cf(psi, 0));
    let alpha = ctx.alpha();
    let a2m1 = &(&alpha * &alpha) - &ctx.int(1);
    let half = ctx.ratio(1, 2);

    let d_at = |n: i64| &(&a * &ctx.gamma_n(n)) + &(&d * &ctx.alpha_n(n));
    let e_at = |n: i64| &(&b * &ctx.gamma_n(n)) + &(&e * &ctx.alpha_n(n));

    let mut failures = Vec::new();
    for n in 0..=n_max {
        let ni = n as i64;
        let dn = d_at(ni);
        if dn.is_zero() {
            failures.push(RegularityFailure {
                n,
                reason: "d_n = 0".to_string(),
            });
            continue;
        }
        let d2n = d_at(2 * ni);
        if d2n.is_zero() {
            failures.push(RegularityFailure {
                n,
                reason: "d_{2n} = 0 (evaluation point undefined)".to_string(),
            });
            continue;
        }
        let point = (-&e_at(ni)).try_div(&d2n)?;
        let lead = &(&(&d * &a2m1) * &ctx.gamma_n(2 * ni)) + &(&a * &ctx.alpha_n(2 * ni));
        let lin = &(&b * &ctx.alpha_n(ni)) + &(&(&e * &a2m1) * &ctx.gamma_n(ni));
        let cst = &c + &(&a * &half);
        let value = &(&(&lead * &(&(&point * &point) - &half)) + &(&lin * &point)) + &cst;
        if value.is_zero() {
            failures.push(RegularityFailure {
                n,
                reason: "phi^[n] vanishes at -e_n/d_{2n}".to_string(),
            });
        }
    }
    Ok(RegularityReport { n_max, failures })
}

/// Admissibility decision for a pair taken positionally: with
/// `p = deg A`, `q = deg B`, the pair is admissible if `p - 1 != q`, or
/// if `lc(A) gamma_n + lc(B) alpha_{n-1} != 0` for every `n >= 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Admissibility {
    /// `scanned_to = None` means decided exactly (degree mismatch, or the
    /// symbolic monomial test); `Some(n)` is a rational-mode finite scan.
    Admissible { scanned_to: Option<usize> },
    InadmissibleAt(usize),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible { .. })
    }
}

/// Decide admissibility. In symbolic mode the quantifier over all `n` is
/// decided exactly: writing
/// `lc(A) gamma_n + lc(B) alpha_{n-1} = A0 t^n + B0 t^(-n)` with
/// `A0, B0` in `K`, a zero at `n` forces `t^(2n) = -B0/A0`, so the pair
/// is inadmissible iff `-B0/A0` is literally the monomial `t^(2n)` for
/// some `n >= 1`. In rational mode the combination is scanned for
/// `n <= n_max`.
pub fn admissible(a: &Poly, b: &Poly, n_max: usize, ctx: &QContext) -> Result<Admissibility> {
    if b.is_zero() {
        return Err(Error::Precondition {
            msg: "admissibility needs a nonzero second element".to_string(),
        });
    }
    if a.is_zero() || a.deg0() != b.deg0() + 1 {
        return Ok(Admissibility::Admissible { scanned_to: None });
    }
    let ap = a.lc().expect("nonzero").clone();
    let bq = b.lc().expect("nonzero").clone();
    match ctx.mode() {
        Mode::Symbolic => {
            // gamma_n = t (t^n - t^-n)/(t^2 - 1),
            // alpha_{n-1} = (t^n/t + t t^-n)/2
            let t = ctx.t();
            let t2m1 = &ctx.t_pow(2) - &ctx.int(1);
            let ga = (&ap * &t).try_div(&t2m1)?;
            let a0 = &ga + &bq.try_div(&(&ctx.int(2) * &t))?;
            let b0 = &(-&ga) + &(&bq * &t).try_div(&ctx.int(2))?;
            if a0.is_zero() {
                // combination is B0 t^-n; B0 = 0 too would force
                // lc(B) = 0, excluded above
                debug_assert!(!b0.is_zero());
                return Ok(Admissibility::Admissible { scanned_to: None });
            }
            let ratio = (-&b0).try_div(&a0)?;
            match ratio.as_t_power() {
                Some(k) if k >= 2 && k % 2 == 0 => {
                    Ok(Admissibility::InadmissibleAt((k / 2) as usize))
                }
                _ => Ok(Admissibility::Admissible { scanned_to: None }),
            }
        }
        Mode::Rational => {
            for n in 1..=n_max {
                let ni = n as i64;
                let combo = &(&ap * &ctx.gamma_n(ni)) + &(&bq * &ctx.alpha_n(ni - 1));
                if combo.is_zero() {
                    return Ok(Admissibility::InadmissibleAt(n));
                }
            }
            Ok(Admissibility::Admissible {
                scanned_to: Some(n_max),
            })
        }
    }
}

/// From `D_q(phi u) = psi u` and `S_q(phi u) = rho u` to the Pearson pair
/// `(rho - U_1 psi, alpha psi)`, per
/// `D_q((rho - U_1 psi) u) = alpha S_q(psi u)`. The `phi` of the triple
/// does not enter the derived pair. Errors if `psi = 0` (precondition) or
/// if the `phi`-part cancels to zero (degenerate pair).
pub fn triple_to_pearson(psi: &Poly, rho: &Poly, ctx: &QContext) -> Result<PearsonPair> {
    if psi.is_zero() {
        return Err(Error::Precondition {
            msg: "triple_to_pearson needs psi != 0".to_string(),
        });
    }
    let phi_part = rho.sub(&awops::u1(ctx).mul(psi));
    if phi_part.is_zero() {
        return Err(Error::Degenerate {
            msg: "rho = U_1 psi cancels the Pearson pair".to_string(),
        });
    }
    Ok(PearsonPair {
        phi: phi_part,
        psi: psi.scale(&ctx.alpha()),
    })
}

/// Pearson form to normal form:
/// `Phi = alpha S_q phi - U_1 D_q phi + (U_1^2 - alpha^2 U_2) D_q psi`,
/// `Psi = alpha S_q psi + U_1 D_q psi - D_q phi`.
pub fn pearson_to_normal(pair: &PearsonPair, ctx: &QContext) -> Result<NormalPair> {
    let alpha = ctx.alpha();
    let u1 = awops::u1(ctx);
    let u2 = awops::u2(ctx);
    let a2 = &alpha * &alpha;
    let u1sq_m_a2u2 = u1.mul(&u1).sub(&u2.scale(&a2));
    let dphi = awops::dq(&pair.phi, ctx);
    let dpsi = awops::dq(&pair.psi, ctx);
    let cap_phi = awops::sq(&pair.phi, ctx)
        .scale(&alpha)
        .sub(&u1.mul(&dphi))
        .add(&u1sq_m_a2u2.mul(&dpsi));
    let cap_psi = awops::sq(&pair.psi, ctx)
        .scale(&alpha)
        .add(&u1.mul(&dpsi))
        .sub(&dphi);
    if cap_phi.is_zero() || cap_psi.is_zero() {
        return Err(Error::Degenerate {
            msg: "normal pair degenerated to zero".to_string(),
        });
    }
    Ok(NormalPair {
        phi: cap_phi,
        psi: cap_psi,
    })
}

/// Normal form back to a Pearson pair:
/// `D_q((S_q Phi + U_2 D_q Psi) u) = S_q((S_q Psi + D_q Phi) u)`.
pub fn normal_to_pearson(np: &NormalPair, ctx: &QContext) -> Result<PearsonPair> {
    let u2 = awops::u2(ctx);
    let phi = awops::sq(&np.phi, ctx).add(&u2.mul(&awops::dq(&np.psi, ctx)));
    let psi = awops::sq(&np.psi, ctx).add(&awops::dq(&np.phi, ctx));
    if phi.is_zero() || psi.is_zero() {
        return Err(Error::Degenerate {
            msg: "Pearson pair degenerated to zero".to_string(),
        });
    }
    Ok(PearsonPair { phi, psi })
}

/// Class count from a normal pair produced by an `s`-banded relation:
/// `r = deg gcd(Phi, Psi)`, classical iff `r = s - 1`, otherwise
/// semiclassical of class `s - 1 - r`. `r > s - 1` contradicts the band
/// theorem and is reported as an upstream bug, not a verdict.
pub fn class_from_normal(np: &NormalPair, s: usize) -> Result<ClassReport> {
    if s == 0 {
        return Err(Error::Precondition {
            msg: "class_from_normal needs a band depth s >= 1".to_string(),
        });
    }
    let g = Poly::gcd(&np.phi, &np.psi);
    let r = g.deg0();
    if r > s - 1 {
        return Err(Error::TheoremViolation {
            msg: format!("gcd(Phi, Psi) has degree {r} > s - 1 = {}", s - 1),
        });
    }
    let class = s - 1 - r;
    Ok(ClassReport {
        s_naive: None,
        r_common: r,
        class,
        verdict: if class == 0 {
            Verdict::Classical
        } else {
            Verdict::Semiclassical(class)
        },
    })
}

/// Verify `Phi D_q u = Psi S_q u` on moments:
/// `-<u, D_q(Phi x^n)> = <u, S_q(Psi x^n)>` for `n = 0..=n_max`.
pub fn verify_normal(
    np: &NormalPair,
    u: &LinearForm,
    n_max: usize,
    ctx: &QContext,
) -> Result<ResidualReport> {
    let needed = n_max + np.phi.deg0().max(np.psi.deg0());
    if needed > u.valid_degree() {
        return Err(Error::DepthExceeded {
            needed,
            have: u.valid_degree(),
        });
    }
    let one = ctx.int(1);
    let mut first_failure = None;
    for n in 0..=n_max {
        let xn = Poly::monomial(one.clone(), n);
        let lhs = -&u.apply(&awops::dq(&np.phi.mul(&xn), ctx))?;
        let rhs = u.apply(&awops::sq(&np.psi.mul(&xn), ctx))?;
        if lhs != rhs {
            first_failure = Some((n as i64, format!("residual {} at n = {n}", &lhs - &rhs)));
            break;
        }
    }
    Ok(ResidualReport {
        lo: 0,
        hi: n_max as i64,
        first_failure,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::opseq;
    use crate::poly::parse_poly;

    /// Test-only moment solver: reading the Pearson equation on monomials
    /// gives a linear recursion for the moments whose top coefficient is
    /// `d_{n} = a gamma_n + d alpha_n`. Independent oracle for the
    /// regularity checks; solving the equation in general stays out of
    /// scope, this is pure finite linear algebra.
    pub(crate) fn moments_from_pearson(
        phi: &Poly,
        psi: &Poly,
        depth: usize,
        ctx: &QContext,
    ) -> Option<LinearForm> {
        let table = OperatorTable::build(depth, ctx);
        let mut m = alloc::vec![ctx.int(1)];
        for n in 0..depth {
            // the equation read on x^n involves moments up to n + 1, with
            // top coefficient a gamma_n + d alpha_n
            let comb = phi.mul(table.dq_pow(n)).add(&psi.mul(table.sq_pow(n)));
            if comb.deg0() != n + 1 {
                return None;
            }
            let mut acc = ctx.int(0);
            for (k, c) in comb.coeffs().iter().enumerate().take(n + 1) {
                acc = &acc + &(c * &m[k]);
            }
            let top = comb.lc().expect("degree n+1").clone();
            m.push((-&acc).try_div(&top).ok()?);
        }
        LinearForm::new(m).ok()
    }

    fn ctx() -> QContext {
        QContext::symbolic()
    }

    #[test]
    fn regularity_passes_for_unit_phi() {
        // phi = 1, psi = x: d_n = alpha_n != 0 and
        // phi^[n](0) = 1 - (alpha^2 - 1) gamma_{2n}/2 != 0
        let c = ctx();
        let phi = parse_poly("1", &c).unwrap();
        let psi = parse_poly("x", &c).unwrap();
        let rep = regularity_thm23(&phi, &psi, 30, &c).unwrap();
        assert!(rep.is_pass(), "{:?}", rep.failures);
        // brute-force oracle at t = 1/2: the induced moments admit a
        // Gram-Schmidt to depth 10
        let rc = QContext::rational_ratio(1, 2).unwrap();
        let phi_r = parse_poly("1", &rc).unwrap();
        let psi_r = parse_poly("x", &rc).unwrap();
        let u = moments_from_pearson(&phi_r, &psi_r, 21, &rc).unwrap();
        assert!(opseq::recurrence_from_moments(&u, 10).is_ok());
    }

    #[test]
    fn regularity_engineered_failure() {
        // d = -a gamma_5 / alpha_5 makes d_5 = 0
        let c = ctx();
        let phi = parse_poly("x^2", &c).unwrap();
        let d = (-&c.gamma_n(5)).try_div(&c.alpha_n(5)).unwrap();
        let psi = Poly::monomial(d, 1);
        let rep = regularity_thm23(&phi, &psi, 10, &c).unwrap();
        assert!(rep
            .failures
            .iter()
            .any(|f| f.n == 5 && f.reason == "d_n = 0"));
    }

    #[test]
    fn admissible_branch_on_degrees() {
        let c = ctx();
        // deg A = deg B = 1: p - 1 != q, admissible outright
        let a = parse_poly("x + 1", &c).unwrap();
        let b = parse_poly("x", &c).unwrap();
        assert!(admissible(&a, &b, 10, &c).unwrap().is_admissible());
    }

    #[test]
    fn admissible_engineered_failure() {
        // lc(A) gamma_n + lc(B) alpha_{n-1} = 0 at n = 4 when
        // lc(A) = alpha_3, lc(B) = -gamma_4
        let c = ctx();
        let a = Poly::monomial(c.alpha_n(3), 2);
        let b = Poly::monomial(-&c.gamma_n(4), 1);
        assert_eq!(
            admissible(&a, &b, 10, &c).unwrap(),
            Admissibility::InadmissibleAt(4)
        );
        // same decision from the rational-mode scan
        let rc = QContext::rational_ratio(1, 2).unwrap();
        let ar = Poly::monomial(rc.alpha_n(3), 2);
        let br = Poly::monomial(-&rc.gamma_n(4), 1);
        assert_eq!(
            admissible(&ar, &br, 10, &rc).unwrap(),
            Admissibility::InadmissibleAt(4)
        );
    }

    #[test]
    fn triple_to_pearson_degenerate() {
        let c = ctx();
        let psi = parse_poly("x", &c).unwrap();
        let rho = awops::u1(&c).mul(&psi);
        assert!(matches!(
            triple_to_pearson(&psi, &rho, &c),
            Err(Error::Degenerate { .. })
        ));
        assert!(matches!(
            triple_to_pearson(&Poly::zero(), &rho, &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn normal_pair_of_unit_phi_hand_expansion() {
        // pair (1, x): D_q 1 = 0, S_q 1 = 1, D_q x = 1, S_q x = alpha x;
        // Phi = alpha + (U_1^2 - alpha^2 U_2), Psi = alpha^2 x + U_1
        let c = ctx();
        let pair = PearsonPair {
            phi: parse_poly("1", &c).unwrap(),
            psi: parse_poly("x", &c).unwrap(),
        };
        let np = pearson_to_normal(&pair, &c).unwrap();
        let alpha = c.alpha();
        let u1 = awops::u1(&c);
        let u2 = awops::u2(&c);
        let expected_phi = Poly::constant(alpha.clone())
            .add(&u1.mul(&u1))
            .sub(&u2.scale(&(&alpha * &alpha)));
        let expected_psi = Poly::monomial(&alpha * &alpha, 1).add(&u1);
        assert_eq!(np.phi, expected_phi);
        assert_eq!(np.psi, expected_psi);
    }

    #[test]
    fn class_rule_arithmetic() {
        let c = ctx();
        // gcd of degree 1 with s = 3 gives class 1
        let g = parse_poly("x - 1", &c).unwrap();
        let np = NormalPair {
            phi: g.mul(&parse_poly("x^2 + 2", &c).unwrap()),
            psi: g.mul(&parse_poly("x + 3", &c).unwrap()),
        };
        let rep = class_from_normal(&np, 3).unwrap();
        assert_eq!(rep.r_common, 1);
        assert_eq!(rep.class, 1);
        assert_eq!(rep.verdict, Verdict::Semiclassical(1));
        // r = s - 1 is the classical branch
        let rep = class_from_normal(&np, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Classical);
        // r > s - 1 contradicts the theorem
        assert!(matches!(
            class_from_normal(&np, 1),
            Err(Error::TheoremViolation { .. })
        ));
    }

    #[test]
    fn pearson_scaling_invariance() {
        // scaling (phi, psi) together preserves the verdict
        let c = QContext::rational_ratio(1, 2).unwrap();
        let phi = parse_poly("1", &c).unwrap();
        let psi = parse_poly("x", &c).unwrap();
        let u = moments_from_pearson(&phi, &psi, 14, &c).unwrap();
        let pair = PearsonPair {
            phi: phi.clone(),
            psi: psi.clone(),
        };
        let r1 = verify_pearson(&pair, &u, 10, &c).unwrap();
        assert!(r1.is_pass());
        let lam = c.ratio(-7, 3);
        let scaled = PearsonPair {
            phi: phi.scale(&lam),
            psi: psi.scale(&lam),
        };
        assert!(verify_pearson(&scaled, &u, 10, &c).unwrap().is_pass());
        // a perturbed psi is caught with the first failing n reported
        let bad = psi.add(&Poly::constant(c.int(1)));
        let r = verify_pearson(&PearsonPair { phi, psi: bad }, &u, 10, &c).unwrap();
        assert!(!r.is_pass());
    }
}
