//! End-to-end verification suites composed from the other modules, with
//! golden expected values pinned as exact polynomial identities.
//!
//! The central object is the counterexample family `B_n = 0`,
//! `C_n = (1 - (-1)^n q^(n/2))(1 - (-1)^n q^((n-1)/2))/4`, which satisfies
//! a four-term `D_q` structure relation with `phi = U_2` yet is
//! semiclassical of class two, not classical; a second-order relation
//! with a degree-four `phi` follows. The classical reference is the
//! `B = 0`, `C_n = (1 - q^n)/4` family, whose `phi = 1` band feeds the
//! same pipelines and must come out classical. On the Hahn side the
//! suites pin the class-one family against its structure relation and
//! classifier branch, and the Al-Salam-Carlitz recurrences against the
//! regularity formulas.
//!
//! In symbolic mode every check is an identity in `t`; specializing any
//! passing symbolic run at a rational `t` must reproduce the rational
//! run check-for-check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::awops;
use crate::error::{Error, Result};
use crate::hahn::{self, HahnContext, HahnVerdict};
use crate::linform;
use crate::opseq::OPSFamily;
use crate::pearson::{self, PearsonPair, Verdict};
use crate::poly::Poly;
use crate::report::{Check, SuiteResult};
use crate::scalar::{QContext, Scalar};
use crate::structure;

/// `C_n = (1 - (-1)^n t^n)(1 - (-1)^n t^(n-1))/4` (with `t = q^(1/2)`);
/// `C_0 = 0` falls out of the formula.
pub fn prop41_c(ctx: &QContext, n: i64) -> Scalar {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let s = ctx.int(sign);
    let f1 = &ctx.int(1) - &(&s * &ctx.t_pow(n));
    let f2 = &ctx.int(1) - &(&s * &ctx.t_pow(n - 1));
    &(&f1 * &f2) * &ctx.ratio(1, 4)
}

/// `b_n = -(1 - (-1)^n t^n)((-1)^n - t^(-(n-1)))/2`.
pub fn prop41_b(ctx: &QContext, n: i64) -> Scalar {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let s = ctx.int(sign);
    let f1 = &ctx.int(1) - &(&s * &ctx.t_pow(n));
    let f2 = &s - &ctx.t_pow(-(n - 1));
    &(&f1 * &f2) * &ctx.ratio(-1, 2)
}

/// `a_n = (alpha^2 - 1) gamma_n`.
pub fn prop41_a(ctx: &QContext, n: i64) -> Scalar {
    let alpha = ctx.alpha();
    &(&(&alpha * &alpha) - &ctx.int(1)) * &ctx.gamma_n(n)
}

/// `c_n = b_{n+1} C_n - alpha b_n C_{n-1} - (alpha^2 - 1) gamma_n C_n`.
pub fn prop41_cc(ctx: &QContext, n: i64) -> Scalar {
    let t1 = &prop41_b(ctx, n + 1) * &prop41_c(ctx, n);
    let t2 = &(&ctx.alpha() * &prop41_b(ctx, n)) * &prop41_c(ctx, n - 1);
    let t3 = &prop41_a(ctx, n) * &prop41_c(ctx, n);
    &(&t1 - &t2) - &t3
}

/// `d_n = (b_{n-1} C_n - alpha b_n C_{n-1}) C_{n-2}`.
pub fn prop41_d(ctx: &QContext, n: i64) -> Scalar {
    let t1 = &prop41_b(ctx, n - 1) * &prop41_c(ctx, n);
    let t2 = &(&ctx.alpha() * &prop41_b(ctx, n)) * &prop41_c(ctx, n - 1);
    &(&t1 - &t2) * &prop41_c(ctx, n - 2)
}

/// The counterexample family, built to depth `n_max`.
pub fn prop41_family(ctx: &QContext, n_max: usize) -> Result<OPSFamily> {
    let b = alloc::vec![ctx.int(0); n_max + 1];
    let c = (0..=n_max).map(|n| prop41_c(ctx, n as i64)).collect();
    OPSFamily::build("prop41", b, c)
}

/// The classical reference family `B = 0`, `C_n = (1 - q^n)/4`.
pub fn q_hermite_family(ctx: &QContext, n_max: usize) -> Result<OPSFamily> {
    let b = alloc::vec![ctx.int(0); n_max + 1];
    let c = (0..=n_max)
        .map(|n| &(&ctx.int(1) - &ctx.t_pow(2 * n as i64)) * &ctx.ratio(1, 4))
        .collect();
    OPSFamily::build("q-hermite", b, c)
}

/// Golden closed forms of the counterexample pipeline, as polynomials
/// over the context's field (`q = t^2`):
///
/// - `Q_3 = (q-1) q^(-3/2) x (4x^2 - 3 - q)/4`
/// - `Q_4 = (q-1) q^(-2) (8x^4 - 8x^2 + 1 - q^2)/8`
/// - `R_4 = -(1 - q^(-1))^2 (4x^4 - (q+5) x^2 + q + 1)/8`
/// - `Phi = -(q-1)^2 q^(-3/2) (8q x^4 - 2(q^2+4q+1) x^2 + (q+1)^2)/16`
/// - `Psi = (q^(1/2) - q^(-1/2))(4q x^2 - 3q - 1) x / 4`
///
/// The Pearson pair of the statement is `(R_4, Q_3)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prop41Golden {
    pub q3: Poly,
    pub q4: Poly,
    pub r4: Poly,
    pub cap_phi: Poly,
    pub cap_psi: Poly,
}

impl Prop41Golden {
    pub fn pearson_pair(&self) -> PearsonPair {
        PearsonPair {
            phi: self.r4.clone(),
            psi: self.q3.clone(),
        }
    }
}

pub fn prop41_golden(ctx: &QContext) -> Prop41Golden {
    let q = ctx.q();
    let zero = ctx.int(0);
    // Q_3: scale (q-1) q^{-3/2}/4 times x (4x^2 - (3 + q))
    let s3 = &(&(&q - &ctx.int(1)) * &ctx.t_pow(-3)) * &ctx.ratio(1, 4);
    let q3 = Poly::from_coeffs(alloc::vec![
        zero.clone(),
        &(-&(&ctx.int(3) + &q)) * &s3,
        zero.clone(),
        &ctx.int(4) * &s3,
    ]);
    // Q_4: (q-1) q^{-2}/8 times (8x^4 - 8x^2 + 1 - q^2)
    let s4 = &(&(&q - &ctx.int(1)) * &ctx.t_pow(-4)) * &ctx.ratio(1, 8);
    let q4 = Poly::from_coeffs(alloc::vec![
        &(&ctx.int(1) - &(&q * &q)) * &s4,
        zero.clone(),
        &ctx.int(-8) * &s4,
        zero.clone(),
        &ctx.int(8) * &s4,
    ]);
    // R_4: -(1 - q^{-1})^2/8 times (4x^4 - (q+5)x^2 + q + 1)
    let one_m_qinv = &ctx.int(1) - &ctx.t_pow(-2);
    let sr = &(&one_m_qinv * &one_m_qinv) * &ctx.ratio(-1, 8);
    let r4 = Poly::from_coeffs(alloc::vec![
        &(&q + &ctx.int(1)) * &sr,
        zero.clone(),
        &(-&(&q + &ctx.int(5))) * &sr,
        zero.clone(),
        &ctx.int(4) * &sr,
    ]);
    // Phi: -(q-1)^2 q^{-3/2}/16 times (8q x^4 - 2(q^2+4q+1) x^2 + (q+1)^2)
    let qm1 = &q - &ctx.int(1);
    let sp = &(&(&qm1 * &qm1) * &ctx.t_pow(-3)) * &ctx.ratio(-1, 16);
    let mid = &(&(&q * &q) + &(&ctx.int(4) * &q)) + &ctx.int(1);
    let qp1 = &q + &ctx.int(1);
    let cap_phi = Poly::from_coeffs(alloc::vec![
        &(&qp1 * &qp1) * &sp,
        zero.clone(),
        &(&ctx.int(-2) * &mid) * &sp,
        zero.clone(),
        &(&ctx.int(8) * &q) * &sp,
    ]);
    // Psi: (t - 1/t)/4 times x (4q x^2 - 3q - 1)
    let ss = &(&ctx.t_pow(1) - &ctx.t_pow(-1)) * &ctx.ratio(1, 4);
    let cap_psi = Poly::from_coeffs(alloc::vec![
        zero.clone(),
        &(-&(&(&ctx.int(3) * &q) + &ctx.int(1))) * &ss,
        zero,
        &(&ctx.int(4) * &q) * &ss,
    ]);
    Prop41Golden {
        q3,
        q4,
        r4,
        cap_phi,
        cap_psi,
    }
}

fn eq_check<T: PartialEq + core::fmt::Display>(
    name: &str,
    lo: i64,
    hi: i64,
    mut pair_at: impl FnMut(i64) -> Result<(T, T)>,
) -> Result<Check> {
    for n in lo..=hi {
        let (lhs, rhs) = pair_at(n)?;
        if lhs != rhs {
            return Ok(Check::fail_at(
                name,
                lo,
                hi,
                n,
                format!("n = {n}: lhs = {lhs}, rhs = {rhs}"),
            ));
        }
    }
    Ok(Check::pass_range(name, lo, hi))
}

fn bool_check(name: &str, ok: bool, witness: impl Into<String>) -> Check {
    if ok {
        Check::pass(name)
    } else {
        Check::fail(name, witness)
    }
}

/// Full reproduction of the counterexample: recurrence pins, both
/// structure relations, band support and entries, the companion band
/// relation, the closed forms of `b_n` and `d_n`, the `(k_1, k_2)` fit
/// and its difference equation, the constructed `Q_3`, `Q_4`, `R_4`,
/// `Phi`, `Psi` against the golden forms, coprimality, the Pearson
/// equation on moments, and the class-two verdict.
pub fn run_prop41(n_max: usize, ctx: &QContext) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("prop41");
    let depth = n_max + 8;
    let fam = prop41_family(ctx, depth)?;
    let u = fam.moments(depth)?;
    let golden = prop41_golden(ctx);

    // pinned low-order recurrence coefficients:
    // C_1 = (1 + q^(1/2))/2, C_2 = (1-q)(1-q^(1/2))/4,
    // C_3 = (1+q)(1+q^(3/2))/4, C_4 = (1-q^2)(1-q^(3/2))/4
    let q = ctx.q();
    let pins = [
        (&(&ctx.int(1) + &ctx.t_pow(1)) * &ctx.ratio(1, 2), 1usize),
        (
            &(&(&ctx.int(1) - &q) * &(&ctx.int(1) - &ctx.t_pow(1))) * &ctx.ratio(1, 4),
            2,
        ),
        (
            &(&(&ctx.int(1) + &q) * &(&ctx.int(1) + &ctx.t_pow(3))) * &ctx.ratio(1, 4),
            3,
        ),
        (
            &(&(&ctx.int(1) - &(&q * &q)) * &(&ctx.int(1) - &ctx.t_pow(3))) * &ctx.ratio(1, 4),
            4,
        ),
    ];
    let pins_ok = pins.iter().all(|(expected, n)| fam.c_n(*n) == expected);
    out.push(bool_check(
        "recurrence_coefficient_pins",
        pins_ok,
        format!("C_1..C_4 = {}, {}, {}, {}", fam.c_n(1), fam.c_n(2), fam.c_n(3), fam.c_n(4)),
    ));

    // S_q P_n = alpha_n P_n + b_n C_{n-1} P_{n-2}
    out.push(eq_check("sq_structure", 1, n_max as i64, |n| {
        let nu = n as usize;
        let lhs = awops::sq(fam.p(nu), ctx);
        let mut rhs = fam.p(nu).scale(&ctx.alpha_n(n));
        if nu >= 2 {
            let coeff = &prop41_b(ctx, n) * fam.c_n(nu - 1);
            rhs = rhs.add(&fam.p(nu - 2).scale(&coeff));
        }
        Ok((lhs, rhs))
    })?);

    // U_2 D_q P_n = a_n P_{n+1} + c_n P_{n-1} + d_n P_{n-3}
    let u2 = awops::u2(ctx);
    out.push(eq_check("dq_structure", 1, n_max as i64, |n| {
        let nu = n as usize;
        let lhs = u2.mul(&awops::dq(fam.p(nu), ctx));
        let mut rhs = fam.p(nu + 1).scale(&prop41_a(ctx, n));
        rhs = rhs.add(&fam.p(nu - 1).scale(&prop41_cc(ctx, n)));
        if nu >= 3 {
            rhs = rhs.add(&fam.p(nu - 3).scale(&prop41_d(ctx, n)));
        }
        Ok((lhs, rhs))
    })?);

    // band support {+1, -1, -3}, s = 3, exactness, entry values
    let band = structure::extract_band(&fam, &u2, n_max, ctx)?;
    let offsets = band.offsets();
    out.push(bool_check(
        "band_support",
        offsets.iter().all(|o| [1, -1, -3].contains(o)) && band.s() == 3,
        format!("offsets {offsets:?}, s = {}", band.s()),
    ));
    out.push(bool_check(
        "band_lowest_nonzero",
        band.check_s_exact().is_ok(),
        format!("first missing lowest entry at n = {:?}", band.check_s_exact().err()),
    ));
    out.push(eq_check("band_raise_entries", 1, n_max as i64, |n| {
        let nu = n as usize;
        let zero = ctx.int(0);
        let actual = band.entry(nu, nu + 1).cloned().unwrap_or(zero);
        Ok((actual, prop41_a(ctx, n)))
    })?);
    out.push(eq_check("band_lowest_entries", 3, n_max as i64, |n| {
        let nu = n as usize;
        let zero = ctx.int(0);
        let actual = band.entry(nu, nu - 3).cloned().unwrap_or(zero);
        Ok((actual, prop41_d(ctx, n)))
    })?);

    // companion band U_2 S_q P_n: the two-term S_q structure spreads over
    // offsets {+2, 0, -2, -4} under U_2, the top entry carries
    // (alpha^2 - 1) alpha_n, and the lowest entry obeys the linking
    // relation with the D_q band
    let sqb = structure::sq_band(&fam, &band, n_max, ctx)?;
    let sq_offsets: alloc::collections::BTreeSet<i64> = sqb
        .entries
        .keys()
        .map(|&(n, j)| j as i64 - n as i64)
        .collect();
    out.push(bool_check(
        "sq_band_support",
        sq_offsets.iter().all(|o| [2, 0, -2, -4].contains(o)),
        format!("offsets {sq_offsets:?}"),
    ));
    out.push(sqb.lowest_relation.to_check("sq_band_lowest_relation"));
    let a2m1_top = &(&ctx.alpha() * &ctx.alpha()) - &ctx.int(1);
    out.push(eq_check("sq_band_top_entries", 0, n_max as i64, |n| {
        let nu = n as usize;
        let zero = ctx.int(0);
        let actual = sqb.entries.get(&(nu, nu + 2)).cloned().unwrap_or(zero);
        Ok((actual, &a2m1_top * &ctx.alpha_n(n)))
    })?);

    // b_n = 2 C_n q^{-(n-1)/2} and d_n = (q-1) q^{-n/2} C_n C_{n-1} C_{n-2}
    out.push(eq_check("b_closed_form", 1, n_max as i64, |n| {
        let expected = &(&ctx.int(2) * &prop41_c(ctx, n)) * &ctx.t_pow(-(n - 1));
        Ok((prop41_b(ctx, n), expected))
    })?);
    out.push(eq_check("d_closed_form", 2, n_max as i64, |n| {
        let prod = &(&prop41_c(ctx, n) * &prop41_c(ctx, n - 1)) * &prop41_c(ctx, n - 2);
        let expected = &(&(&q - &ctx.int(1)) * &ctx.t_pow(-n)) * &prod;
        Ok((prop41_d(ctx, n), expected))
    })?);

    // (k1, k2) fit of the lowest band entries and the difference equation
    let fit = structure::fit_k1k2(&band, &fam, ctx)?;
    out.push(fit.fit.to_check("k1k2_fit"));
    out.push(fit.difference_eq.to_check("difference_equation"));

    // class pipeline and golden polynomials
    let thm32 = structure::thm32_pipeline(&band, &fam, &u, n_max, ctx)?;
    out.push(bool_check(
        "q3_closed_form",
        thm32.q_s == golden.q3,
        format!("Q_3 = {}", thm32.q_s),
    ));
    out.push(bool_check(
        "q4_closed_form",
        thm32.q_s1 == golden.q4,
        format!("Q_4 = {}", thm32.q_s1),
    ));
    out.push(bool_check(
        "r4_closed_form",
        thm32.r_s1 == golden.r4,
        format!("R_4 = {}", thm32.r_s1),
    ));
    out.push(bool_check(
        "normal_pair_closed_form",
        thm32.normal.phi == golden.cap_phi && thm32.normal.psi == golden.cap_psi,
        format!("Phi = {}, Psi = {}", thm32.normal.phi, thm32.normal.psi),
    ));
    out.push(bool_check(
        "phi_psi_coprime",
        thm32.class.r_common == 0,
        format!("deg gcd = {}", thm32.class.r_common),
    ));
    out.push(thm32.pearson_residuals.to_check("pipeline_pearson_on_moments"));
    out.push(thm32.normal_residuals.to_check("normal_equation_on_moments"));
    out.push(bool_check(
        "class_verdict",
        thm32.class.verdict == Verdict::Semiclassical(2) && thm32.class.class == 2,
        format!("verdict {:?}", thm32.class.verdict),
    ));

    // the statement's Pearson pair on moments
    let stated = golden.pearson_pair();
    let rep = pearson::verify_pearson(&stated, &u, n_max, ctx)?;
    out.push(rep.to_check("pearson_on_moments"));

    Ok(out)
}

/// The second-order relation
/// `(alpha^2-1)^2 (x^2 - alpha^2)(1 - x^2) D_q^2 P_n` expanded over
/// `P_{n+2}, P_n, P_{n-2}, P_{n-4}, P_{n-6}` for `6 <= n <= n_max`: the
/// raising coefficient is `-(alpha^2-1)^2 gamma_n gamma_{n-1}`, the four
/// lowering coefficients `d_{n,1}..d_{n,4}` follow their elimination
/// formulas, `d_{n,4}` has a nonvanishing product closed form, and the
/// support stays confined to those five offsets.
pub fn run_cor43(n_max: usize, ctx: &QContext) -> Result<SuiteResult> {
    if n_max < 6 {
        return Err(Error::Precondition {
            msg: String::from("the second-order relation needs n_max >= 6"),
        });
    }
    let mut out = SuiteResult::new("cor43");
    let fam = prop41_family(ctx, n_max + 4)?;
    let alpha = ctx.alpha();
    let a2 = &alpha * &alpha;
    let a2m1 = &a2 - &ctx.int(1);
    let a2m1_sq = &a2m1 * &a2m1;
    // phi = (alpha^2-1)^2 (x^2 - alpha^2)(1 - x^2)
    let x2_m_a2 = Poly::from_coeffs(alloc::vec![-&a2, ctx.int(0), ctx.int(1)]);
    let one_m_x2 = Poly::from_coeffs(alloc::vec![ctx.int(1), ctx.int(0), ctx.int(-1)]);
    let phi = x2_m_a2.mul(&one_m_x2).scale(&a2m1_sq);

    let c = |n: i64| prop41_c(ctx, n);
    let b = |n: i64| prop41_b(ctx, n);
    let a = |n: i64| prop41_a(ctx, n);
    let cc = |n: i64| prop41_cc(ctx, n);
    let d = |n: i64| prop41_d(ctx, n);

    let d1 = |n: i64| {
        let an2m1 = &(&ctx.alpha_n(n) * &ctx.alpha_n(n)) - &ctx.int(1);
        let t1 = &(&a(n) * &cc(n + 1)) + &(&a(n - 1) * &cc(n));
        let t2 = &(&(&(&ctx.int(2) * &alpha) * &a2m1) * &an2m1)
            * &(&(&c(n + 1) + &c(n)) - &ctx.int(1));
        let t3 = &(&(&(&(&ctx.int(4) * &a2) * &a2m1) * &ctx.alpha_n(n - 1)) * &b(n)) * &c(n - 1);
        &(&t1 - &t2) - &t3
    };
    let d2 = |n: i64| {
        let an2m1 = &(&ctx.alpha_n(n) * &ctx.alpha_n(n)) - &ctx.int(1);
        let t1 = &(&(&a(n) * &d(n + 1)) + &(&cc(n) * &cc(n - 1))) + &(&a(n - 3) * &d(n));
        let t2 = &(&(&(&(&ctx.int(2) * &alpha) * &a2m1) * &an2m1) * &c(n)) * &c(n - 1);
        let t3a = &(&(&(&(&ctx.int(4) * &a2) * &a2m1) * &ctx.alpha_n(n - 1)) * &b(n)) * &c(n - 1);
        let t3 = &t3a * &(&(&c(n - 1) + &c(n - 2)) - &ctx.int(1));
        let t4 = &(&(&(&(&(&ctx.int(2) * &alpha) * &a2m1) * &b(n)) * &b(n - 2)) * &c(n - 1))
            * &c(n - 3);
        &(&(&t1 - &t2) - &t3) - &t4
    };
    let d3 = |n: i64| {
        let t1 = &(&cc(n) * &d(n - 1)) + &(&cc(n - 3) * &d(n));
        let t2a = &(&(&(&(&ctx.int(4) * &a2) * &a2m1) * &ctx.alpha_n(n - 1)) * &b(n)) * &c(n - 1);
        let t2 = &(&t2a * &c(n - 2)) * &c(n - 3);
        let t3a = &(&(&(&(&(&ctx.int(2) * &alpha) * &a2m1) * &b(n)) * &b(n - 2)) * &c(n - 1))
            * &c(n - 3);
        let t3 = &t3a * &(&(&c(n - 3) + &c(n - 4)) - &ctx.int(1));
        &(&t1 - &t2) - &t3
    };
    // substituting b_n = 2 C_n q^{-(n-1)/2} and
    // d_n = (q-1) q^{-n/2} C_n C_{n-1} C_{n-2} into the elimination
    // formula collapses the bracket to -4 (alpha^2 - 1) q^{-(2n-3)/2}
    let d4 = |n: i64| {
        let mut prod = &(&ctx.int(-4) * &a2m1) * &ctx.t_pow(-(2 * n - 3));
        for j in 0..=5 {
            prod = &prod * &c(n - j);
        }
        prod
    };

    out.push(eq_check("second_order_relation", 6, n_max as i64, |n| {
        let nu = n as usize;
        let lhs = phi.mul(&awops::dq(&awops::dq(fam.p(nu), ctx), ctx));
        let raise = &(-&a2m1_sq) * &(&ctx.gamma_n(n) * &ctx.gamma_n(n - 1));
        let rhs = fam
            .p(nu + 2)
            .scale(&raise)
            .add(&fam.p(nu).scale(&d1(n)))
            .add(&fam.p(nu - 2).scale(&d2(n)))
            .add(&fam.p(nu - 4).scale(&d3(n)))
            .add(&fam.p(nu - 6).scale(&d4(n)));
        Ok((lhs, rhs))
    })?);

    // d_{n,4} from the elimination equals the product closed form
    out.push(eq_check("d_n4_closed_form", 6, n_max as i64, |n| {
        let two_a = &ctx.int(2) * &alpha;
        let alt = &(&d(n) * &d(n - 3))
            - &(&(&(&(&(&two_a * &a2m1) * &b(n)) * &b(n - 2)) * &(&c(n - 1) * &c(n - 3)))
                * &(&c(n - 4) * &c(n - 5)));
        Ok((alt, d4(n)))
    })?);
    let mut nonzero = true;
    let mut witness = String::new();
    for n in 6..=(n_max as i64) {
        if d4(n).is_zero() {
            nonzero = false;
            witness = format!("d_{{{n},4}} = 0");
            break;
        }
    }
    out.push(bool_check("d_n4_nonzero", nonzero, witness));

    // support confined to offsets {+2, 0, -2, -4, -6}
    out.push(eq_check("support_offsets", 6, n_max as i64, |n| {
        let nu = n as usize;
        let lhs = phi.mul(&awops::dq(&awops::dq(fam.p(nu), ctx), ctx));
        let v = fam.expand_in_basis(&lhs)?;
        let bad = v.iter().enumerate().find(|(j, coeff)| {
            !coeff.is_zero() && ![2i64, 0, -2, -4, -6].contains(&(*j as i64 - n))
        });
        Ok((
            bad.map(|(j, _)| j as i64).unwrap_or(i64::MIN),
            i64::MIN,
        ))
    })?);

    Ok(out)
}

/// The classical reference chain: `phi = 1` band (pure lowering, s = 1),
/// reverse construction with verified equations and admissibility,
/// derived Pearson pair through the regularity criterion, and the
/// classical verdict from the class pipeline.
pub fn run_classical_reference(n_max: usize, ctx: &QContext) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("classical-reference");
    let depth = n_max + 8;
    let fam = q_hermite_family(ctx, depth)?;
    let u = fam.moments(depth)?;
    let one = Poly::constant(ctx.int(1));

    let band = structure::extract_band(&fam, &one, n_max, ctx)?;
    let offsets = band.offsets();
    out.push(bool_check(
        "band_support",
        offsets.len() == 1 && offsets.contains(&-1) && band.s() == 1,
        format!("offsets {offsets:?}, s = {}", band.s()),
    ));

    let rev = structure::thm31_reverse(&band, &fam, &u, n_max, ctx)?;
    out.push(rev.dq_residuals.to_check("reverse_dq_equation"));
    out.push(rev.sq_residuals.to_check("reverse_sq_equation"));
    out.push(bool_check(
        "admissible_pair",
        rev.admissibility.is_admissible(),
        format!("{:?}", rev.admissibility),
    ));

    // derived Pearson pair passes the regularity criterion
    let pair = pearson::triple_to_pearson(&rev.psi, &rev.rho, ctx)?;
    let reg = pearson::regularity_thm23(&pair.phi, &pair.psi, 50, ctx)?;
    out.push(bool_check(
        "regularity_criterion",
        reg.is_pass(),
        format!("failures {:?}", reg.failures),
    ));
    let rep = pearson::verify_pearson(&pair, &u, n_max.min(depth - 2), ctx)?;
    out.push(rep.to_check("derived_pearson_on_moments"));

    let fit = structure::fit_k1k2(&band, &fam, ctx)?;
    out.push(fit.fit.to_check("k1k2_fit"));
    out.push(fit.difference_eq.to_check("difference_equation"));

    let thm32 = structure::thm32_pipeline(&band, &fam, &u, n_max, ctx)?;
    out.push(thm32.pearson_residuals.to_check("pipeline_pearson_on_moments"));
    out.push(thm32.normal_residuals.to_check("normal_equation_on_moments"));
    out.push(bool_check(
        "class_verdict",
        thm32.class.verdict == Verdict::Classical && thm32.class.r_common == band.s() - 1,
        format!("verdict {:?}, r = {}", thm32.class.verdict, thm32.class.r_common),
    ));
    Ok(out)
}

/// The Hahn class-one suite: the structure relation with the stated
/// coefficients, the pinned `b_2`, `C_1`, `C_2`, the classifier branch
/// through the test-value inequality, and the Pearson-type equation on
/// moments.
pub fn run_hahn_class_one(
    a: &Scalar,
    b: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("hahn-class-one");
    let fam = hahn::class_one_family(a, b, n_max + 4, ctx)?;
    let c = ctx.x0();

    // stated coefficients
    let denom = &(&ctx.int(1) - (ctx.q())) * &(a + b);
    let mut a_n = Vec::new();
    let mut b_n = Vec::new();
    let mut c_n = Vec::new();
    for n in 0..=(n_max as i64) {
        let sign = if n % 2 == 0 { 0 } else { 2 };
        let an = (&ctx.int(sign) * b).try_div(&denom)?;
        let bn = &ctx.qbracket(n) - &an;
        let cn = &(-&c) * &bn;
        a_n.push(an);
        b_n.push(bn);
        c_n.push(cn);
    }
    let st = hahn::HahnStructure22 {
        c: c.clone(),
        a_n,
        b_n,
        c_n,
    };
    out.push(hahn::verify_22(&fam, &st, n_max, ctx)?.to_check("structure_relation"));

    // pins: b_2 = q + 1, C_1 = (a - b - (a+b) q) q, C_2 = (a+b)(1-q^2) q^2
    let q = ctx.q();
    let b2_expected = q + &ctx.int(1);
    let c1_expected = &(&(a - b) - &(&(a + b) * q)) * q;
    let q2 = ctx.q_pow(2);
    let c2_expected = &(&(a + b) * &(&ctx.int(1) - &q2)) * &q2;
    out.push(bool_check(
        "coefficient_pins",
        st.b_n[2] == b2_expected && fam.c_n(1) == &c1_expected && fam.c_n(2) == &c2_expected,
        format!("b_2 = {}, C_1 = {}, C_2 = {}", st.b_n[2], fam.c_n(1), fam.c_n(2)),
    ));

    // classifier: semiclassical branch through the test-value inequality
    let rep = hahn::thm65_classify(&fam, &c, n_max.min(fam.n_max() - 2), ctx)?;
    let tv_expected = &(&(b - a) + &(&(a + b) * q)) * &q2;
    let tt_expected = &(&(&(-b) - a) + &(&(a + b) * q)) * &q2;
    out.push(bool_check(
        "test_value_inequality",
        rep.test_value == tv_expected
            && rep.test_target == tt_expected
            && rep.test_value != rep.test_target,
        format!("test {} vs target {}", rep.test_value, rep.test_target),
    ));
    out.push(bool_check(
        "classifier_verdict",
        rep.verdict == HahnVerdict::SemiclassicalClassOne,
        format!("{:?}", rep.verdict),
    ));
    out.push(rep.quad_residuals.to_check("classifier_equation_on_moments"));

    // the proposition's Pearson-type equation
    let pe = hahn::verify_class_one_pearson(&fam, a, b, n_max.min(fam.n_max() - 2), ctx)?;
    out.push(pe.to_check("pearson_on_moments"));
    Ok(out)
}

/// The Al-Salam-Carlitz suite: regularity-formula reproduction of the
/// closed recurrence coefficients in the starred base, plus the classical
/// classifier branch.
pub fn run_hahn_asc(
    r: &Scalar,
    s: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("hahn-al-salam-carlitz");
    let x0 = ctx.x0();
    let rs = r * s;
    // phi = 1, psi = (x - r - s - w/(1-q)) / ((1/q - 1) r s), base 1/q
    let d = ctx
        .int(1)
        .try_div(&(&(&ctx.q().inv().expect("q != 0") - &ctx.int(1)) * &rs))?;
    let e = &(-&(&(r + s) + &x0)) * &d;
    let psi = Poly::from_coeffs(alloc::vec![e, d]);
    let phi = Poly::constant(ctx.int(1));
    let thm = hahn::thm64(&phi, &psi, n_max, &ctx.star())?;
    out.push(eq_check("thm64_b_closed_form", 0, n_max as i64, |n| {
        let expected = &x0 + &(&(r + s) * &ctx.q_pow(n));
        Ok((thm.b[n as usize].clone(), expected))
    })?);
    out.push(eq_check("thm64_c_closed_form", 1, n_max as i64, |n| {
        let expected = &(&(-&rs) * &(&ctx.int(1) - &ctx.q_pow(n))) * &ctx.q_pow(n - 1);
        Ok((thm.c[n as usize].clone(), expected))
    })?);

    // the recurrence from the regularity formulas builds the same family
    let fam = OPSFamily::build("al-salam-carlitz", thm.b.clone(), thm.c.clone())?;
    let direct = hahn::al_salam_carlitz_family(r, s, n_max, ctx)?;
    let agree = (0..=n_max).all(|n| fam.b_n(n) == direct.b_n(n) && fam.c_n(n) == direct.c_n(n));
    out.push(bool_check(
        "family_round_trip",
        agree,
        "thm64 output differs from the closed recurrence",
    ));

    // classifier lands in the classical branch
    let fam_deep = hahn::al_salam_carlitz_family(r, s, n_max + 4, ctx)?;
    let rep = hahn::thm65_classify(&fam_deep, &x0, n_max.min(fam_deep.n_max() - 2), ctx)?;
    out.push(bool_check(
        "classifier_verdict",
        rep.verdict == HahnVerdict::Classical,
        format!("{:?}", rep.verdict),
    ));
    out.push(rep.quad_residuals.to_check("classifier_equation_on_moments"));
    Ok(out)
}

/// The operator-identity suite (seeded random trials).
pub fn run_lemma_ops(
    deg_bound: usize,
    trials: u64,
    seed: u64,
    ctx: &QContext,
) -> Result<SuiteResult> {
    awops::verify_lemma25(deg_bound, trials, seed, ctx)
}

/// Check-for-check agreement of two suite runs (same check names in the
/// same order, same statuses).
pub fn results_agree(a: &SuiteResult, b: &SuiteResult) -> core::result::Result<(), String> {
    if a.checks.len() != b.checks.len() {
        return Err(format!(
            "check counts differ: {} vs {}",
            a.checks.len(),
            b.checks.len()
        ));
    }
    for (ca, cb) in a.checks.iter().zip(&b.checks) {
        if ca.name != cb.name {
            return Err(format!("check names differ: {} vs {}", ca.name, cb.name));
        }
        if ca.status != cb.status {
            return Err(format!("check {} disagrees between runs", ca.name));
        }
    }
    Ok(())
}

/// Convenience: the moments of a family at full cached depth.
pub fn family_moments(fam: &OPSFamily) -> Result<linform::LinearForm> {
    fam.moments(fam.n_max())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prop41_suite_small_symbolic() {
        let ctx = QContext::symbolic();
        let r = run_prop41(10, &ctx).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn prop41_suite_small_rational() {
        let ctx = QContext::rational_ratio(1, 2).unwrap();
        let r = run_prop41(10, &ctx).unwrap();
        assert!(r.pass(), "{r}");
        let sym = run_prop41(10, &QContext::symbolic()).unwrap();
        assert!(results_agree(&sym, &r).is_ok());
    }

    #[test]
    fn cor43_suite_small() {
        let ctx = QContext::symbolic();
        let r = run_cor43(10, &ctx).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn classical_suite_small() {
        let ctx = QContext::symbolic();
        let r = run_classical_reference(8, &ctx).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn hahn_class_one_suite_small() {
        let ctx = HahnContext::symbolic(Scalar::int(crate::scalar::Mode::Symbolic, 0)).unwrap();
        let a = ctx.int(2);
        let b = ctx.int(1);
        let r = run_hahn_class_one(&a, &b, 8, &ctx).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn hahn_asc_suite_small() {
        let ctx = HahnContext::symbolic(Scalar::ratio(crate::scalar::Mode::Symbolic, 1, 3).unwrap())
            .unwrap();
        let r = ctx.int(2);
        let s = ctx.ratio(-1, 2);
        let out = run_hahn_asc(&r, &s, 8, &ctx).unwrap();
        assert!(out.pass(), "{out}");
    }

    #[test]
    fn counterexample_moments_and_expansion_pins() {
        let ctx = QContext::symbolic();
        let fam = prop41_family(&ctx, 10).unwrap();
        let u = fam.moments(10).unwrap();
        // <u, x^2> = C_1 = (1 + q^(1/2))/2
        let x2 = Poly::monomial(ctx.int(1), 2);
        assert_eq!(&u.apply(&x2).unwrap(), fam.c_n(1));
        assert_eq!(
            fam.c_n(1),
            &(&(&ctx.int(1) + &ctx.t_pow(1)) * &ctx.ratio(1, 2))
        );
        // U_2 = (alpha^2 - 1) P_2 + c_1 P_0 in this basis
        let v = fam.expand_in_basis(&awops::u2(&ctx)).unwrap();
        let a2m1 = &(&ctx.alpha() * &ctx.alpha()) - &ctx.int(1);
        assert_eq!(v[2], a2m1);
        assert!(v[1].is_zero());
        assert_eq!(v[0], prop41_cc(&ctx, 1));
    }

    #[test]
    fn counterexample_recurrence_recovery_at_t_half() {
        // Gram-Schmidt on the moments at t = 1/2 recovers
        // C_2 = (1 - q)(1 - q^(1/2))/4 with q = 1/4
        let ctx = QContext::rational_ratio(1, 2).unwrap();
        let fam = prop41_family(&ctx, 11).unwrap();
        let u = fam.moments(11).unwrap();
        let (b, c) = crate::opseq::recurrence_from_moments(&u, 5).unwrap();
        assert_eq!(c[2], ctx.ratio(3, 32));
        for n in 0..=5 {
            assert!(b[n].is_zero());
            assert_eq!(&c[n], fam.c_n(n));
        }
    }

    #[test]
    fn statement_pair_is_admissible() {
        // the degree-4/degree-3 pair: leading terms give a combination
        // that never vanishes; the rational-mode scan to n = 200 is the
        // finite oracle for the symbolic monomial decision
        let ctx = QContext::symbolic();
        let g = prop41_golden(&ctx);
        let adm = pearson::admissible(&g.r4, &g.q3, 10, &ctx).unwrap();
        assert!(adm.is_admissible(), "{adm:?}");
        let rctx = QContext::rational_ratio(1, 2).unwrap();
        let gr = prop41_golden(&rctx);
        let adm = pearson::admissible(&gr.r4, &gr.q3, 200, &rctx).unwrap();
        assert!(adm.is_admissible(), "{adm:?}");
    }

    #[test]
    fn pearson_normal_round_trip_on_moments() {
        // pearson -> normal -> pearson is not the literal identity, but
        // the returned pair must verify on the same moments
        let ctx = QContext::symbolic();
        let fam = prop41_family(&ctx, 18).unwrap();
        let u = fam.moments(18).unwrap();
        let pair = prop41_golden(&ctx).pearson_pair();
        assert!(pearson::verify_pearson(&pair, &u, 10, &ctx)
            .unwrap()
            .is_pass());
        let np = pearson::pearson_to_normal(&pair, &ctx).unwrap();
        assert!(pearson::verify_normal(&np, &u, 10, &ctx).unwrap().is_pass());
        let back = pearson::normal_to_pearson(&np, &ctx).unwrap();
        assert!(pearson::verify_pearson(&back, &u, 10, &ctx)
            .unwrap()
            .is_pass());
    }

    #[test]
    fn golden_polys_specialize_consistently() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let sym = prop41_golden(&QContext::symbolic());
        let t0 = BigRational::new(BigInt::from(1), BigInt::from(2));
        let rat = prop41_golden(&QContext::rational(t0.clone()).unwrap());
        assert_eq!(sym.q3.specialize(&t0).unwrap(), rat.q3);
        assert_eq!(sym.q4.specialize(&t0).unwrap(), rat.q4);
        assert_eq!(sym.r4.specialize(&t0).unwrap(), rat.r4);
        assert_eq!(sym.cap_phi.specialize(&t0).unwrap(), rat.cap_phi);
        assert_eq!(sym.cap_psi.specialize(&t0).unwrap(), rat.cap_psi);
    }
}
