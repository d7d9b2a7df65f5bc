//! Hahn-operator calculus: `D_{q,w} f(x) = (f(qx+w) - f(x))/((q-1)x + w)`.
//!
//! The numerator always vanishes at the fixed point `x = w/(1-q)` of
//! `x -> qx + w`, so the division is exact. On forms the operator acts
//! through its star companion: `<D_{q,w} u, f> = -q^{-1} <u, D*_{q,w} f>`
//! with `D*_{q,w} = D_{1/q,-w/q}`. Contexts carry `(q, w)` as plain field
//! elements because the starred parameters `(1/q, -w/q)` are needed as
//! first-class contexts too.
//!
//! The classifier takes a family satisfying the structure relation
//! `(x - c) D_{q,w} P_n = a_n P_n + (b_n x + c_n) P_{n-1}` and decides
//! between the Al-Salam-Carlitz (classical) branch and the semiclassical
//! class-one branch through the conjugate-symmetric combination
//! `q (w + qc - l_+)(w + qc - l_-)`: sums and products of `l_+`, `l_-`
//! stay in `K`, so no square root is ever extracted. Under the extra
//! degeneracy condition on `(B_0, B_1, C_1, C_2, b_2, c)` one root equals
//! `c` exactly, the discriminant collapses to a perfect square, and the
//! form decomposes as `u = (x-c)^{-1} v + delta_c` with `v` an
//! Al-Salam-Carlitz form, all verified on moments.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linform::{self, LinearForm};
use crate::opseq::{self, OPSFamily};
use crate::poly::Poly;
use crate::report::ResidualReport;
use crate::scalar::{self, Mode, Scalar};

/// Fixed `(q, w)` for the Hahn operator. Excludes `q` in {0, 1, -1}, the
/// finitely checkable part of the root-of-unity condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HahnContext {
    q: Scalar,
    omega: Scalar,
}

impl HahnContext {
    pub fn new(q: Scalar, omega: Scalar) -> Result<HahnContext> {
        if q.mode() != omega.mode() {
            return Err(Error::ModeMismatch);
        }
        if q.is_zero() || q.is_one() || (-&q).is_one() {
            return Err(Error::InvalidContext {
                msg: "Hahn q must lie outside {0, 1, -1}".to_string(),
            });
        }
        Ok(HahnContext { q, omega })
    }

    /// Symbolic mode with `q = t`.
    pub fn symbolic(omega: Scalar) -> Result<HahnContext> {
        HahnContext::new(Scalar::generator(), omega)
    }

    pub fn rational(q: BigRational, omega: BigRational) -> Result<HahnContext> {
        HahnContext::new(
            Scalar::from_bigrational(Mode::Rational, q),
            Scalar::from_bigrational(Mode::Rational, omega),
        )
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn omega(&self) -> &Scalar {
        &self.omega
    }

    pub fn mode(&self) -> Mode {
        self.q.mode()
    }

    /// The starred parameters `(1/q, -w/q)`.
    pub fn star(&self) -> HahnContext {
        let qinv = self.q.inv().expect("q nonzero");
        HahnContext {
            omega: -&(&self.omega * &qinv),
            q: qinv,
        }
    }

    /// `[n]_q = (q^n - 1)/(q - 1)`, any integer `n`.
    pub fn qbracket(&self, n: i64) -> Scalar {
        scalar::qbracket(&self.q, n)
    }

    /// The lattice fixed point `w/(1 - q)`.
    pub fn x0(&self) -> Scalar {
        self.omega
            .try_div(&(&self.int(1) - &self.q))
            .expect("q != 1")
    }

    pub fn int(&self, k: i64) -> Scalar {
        Scalar::int(self.mode(), k)
    }

    pub fn ratio(&self, p: i64, q: i64) -> Scalar {
        Scalar::ratio(self.mode(), p, q).expect("nonzero literal denominator")
    }

    pub fn q_pow(&self, n: i64) -> Scalar {
        self.q.pow(n).expect("q nonzero")
    }
}

/// `D_{q,w} f`, exactly.
pub fn dqw(f: &Poly, ctx: &HahnContext) -> Poly {
    if f.deg0() == 0 {
        return Poly::zero();
    }
    let qm1 = ctx.q() - &ctx.int(1);
    let den = Poly::from_coeffs(alloc::vec![ctx.omega().clone(), qm1]);
    let numer = f.compose_linear(ctx.q(), ctx.omega()).sub(f);
    numer
        .exact_div(&den)
        .expect("the difference vanishes at the fixed point of x -> qx + w")
}

/// Transposed operator on forms: moments
/// `<D_{q,w} u, x^n> = -q^{-1} <u, D_{1/q,-w/q} x^n>`; valid to `N + 1`.
pub fn dqw_dual(u: &LinearForm, ctx: &HahnContext) -> LinearForm {
    let star = ctx.star();
    let minus_qinv = -&ctx.q().inv().expect("q nonzero");
    let n = u.valid_degree();
    let one = ctx.int(1);
    let mut out = Vec::with_capacity(n + 2);
    for k in 0..=(n + 1) {
        let img = dqw(&Poly::monomial(one.clone(), k), &star);
        let val = u.apply(&img).expect("deg D* x^k = k - 1 <= N");
        out.push(&minus_qinv * &val);
    }
    LinearForm::new(out).expect("nonempty")
}

/// Recurrence data produced by the regularity test: `B_0..B_{n_max}` and
/// `C_0..C_{n_max}` (`C_0 = 0`), ready to feed a family build.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Thm64Output {
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
}

/// Regularity test and recurrence formulas for the Hahn-Pearson equation
/// `D_{q,w}(phi u) = psi u` with `phi = a x^2 + b x + c`, `psi = d x + e`:
/// with `d_n = d q^n + a [n]_q` and `e_n = e q^n + (w d_n + b)[n]_q`, the
/// form is regular iff `d_n != 0` and `phi(-e_n/d_{2n}) != 0`; then
///
/// `B_n = w [n]_q + [n]_q e_{n-1}/d_{2n-2} - [n+1]_q e_n/d_{2n}`,
/// `C_{n+1} = -q^n [n+1]_q d_{n-1} / (d_{2n-1} d_{2n+1}) phi(-e_n/d_{2n})`.
///
/// Any vanishing `d_m` (`m <= 2 n_max`) or `phi`-value is a regularity
/// failure, returned as an error naming the witness index.
pub fn thm64(phi: &Poly, psi: &Poly, n_max: usize, ctx: &HahnContext) -> Result<Thm64Output> {
    if phi.deg0() > 2 || psi.deg0() > 1 {
        return Err(Error::Precondition {
            msg: "thm64 needs deg phi <= 2 and deg psi <= 1".to_string(),
        });
    }
    let zero = ctx.int(0);
    let cf = |p: &Poly, k: usize| p.coeff(k).cloned().unwrap_or_else(|| zero.clone());
    let (a, b) = (cf(phi, 2), cf(phi, 1));
    let (d, e) = (cf(psi, 1), cf(psi, 0));
    let w = ctx.omega().clone();

    let d_at = |n: i64| &(&d * &ctx.q_pow(n)) + &(&a * &ctx.qbracket(n));
    let e_at = |n: i64| &(&e * &ctx.q_pow(n)) + &(&(&(&w * &d_at(n)) + &b) * &ctx.qbracket(n));

    // the formulas below consume d_m up to m = 2 n_max; check them all
    for m in 0..=(2 * n_max as i64) {
        if d_at(m).is_zero() {
            return Err(Error::NotRegular { n: m as usize });
        }
    }
    let phi_at = |n: i64| -> Result<Scalar> {
        let point = (-&e_at(n)).try_div(&d_at(2 * n))?;
        Ok(phi.eval(&point))
    };
    for n in 0..=(n_max as i64) {
        if phi_at(n)?.is_zero() {
            return Err(Error::NotRegular { n: n as usize });
        }
    }

    let mut b_list = Vec::with_capacity(n_max + 1);
    let mut c_list = Vec::with_capacity(n_max + 1);
    c_list.push(zero.clone());
    for n in 0..=(n_max as i64) {
        let mut bn = &w * &ctx.qbracket(n);
        if n >= 1 {
            bn = &bn + &(&ctx.qbracket(n) * &e_at(n - 1).try_div(&d_at(2 * n - 2))?);
        }
        bn = &bn - &(&ctx.qbracket(n + 1) * &e_at(n).try_div(&d_at(2 * n))?);
        b_list.push(bn);
        if n as usize == n_max {
            break;
        }
        let cn1 = if n == 0 {
            // d_{-1} cancels against the numerator factor
            (-&phi_at(0)?).try_div(&d_at(1))?
        } else {
            let num = &(&(&ctx.q_pow(n) * &ctx.qbracket(n + 1)) * &d_at(n - 1)) * &phi_at(n)?;
            (-&num).try_div(&(&d_at(2 * n - 1) * &d_at(2 * n + 1)))?
        };
        c_list.push(cn1);
    }
    Ok(Thm64Output {
        b: b_list,
        c: c_list,
    })
}

/// Coefficients of the structure relation
/// `(x - c) D_{q,w} P_n = a_n P_n + (b_n x + c_n) P_{n-1}` (all `b_n`
/// nonzero). Index 0 entries are zero; the `n = 1` row has one degree of
/// freedom and is fixed by the convention `a_1 = 0, b_1 = 1, c_1 = -c`,
/// which satisfies both constraints the relation imposes there.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HahnStructure22 {
    pub c: Scalar,
    pub a_n: Vec<Scalar>,
    pub b_n: Vec<Scalar>,
    pub c_n: Vec<Scalar>,
}

/// Check the relation exactly for `1 <= n <= n_max`.
pub fn verify_22(
    fam: &OPSFamily,
    st: &HahnStructure22,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<ResidualReport> {
    if n_max > fam.n_max() || n_max + 1 > st.a_n.len() {
        return Err(Error::DepthExceeded {
            needed: n_max,
            have: fam.n_max().min(st.a_n.len().saturating_sub(1)),
        });
    }
    let x_minus_c = Poly::from_coeffs(alloc::vec![-&st.c, ctx.int(1)]);
    let mut first_failure = None;
    for n in 1..=n_max {
        let lhs = x_minus_c.mul(&dqw(fam.p(n), ctx));
        let bx_plus_c = Poly::from_coeffs(alloc::vec![st.c_n[n].clone(), st.b_n[n].clone()]);
        let rhs = fam
            .p(n)
            .scale(&st.a_n[n])
            .add(&bx_plus_c.mul(fam.p(n - 1)));
        if lhs != rhs {
            first_failure = Some((n as i64, format!("lhs = {lhs}, rhs = {rhs}")));
            break;
        }
    }
    Ok(ResidualReport {
        lo: 1,
        hi: n_max as i64,
        first_failure,
    })
}

/// Solve for the relation coefficients from the family itself. For
/// `n >= 2` the expansion of `(x - c) D_{q,w} P_n` pins `(a_n, b_n, c_n)`
/// uniquely; components below `P_{n-2}` must vanish and `b_n` must be
/// nonzero, otherwise the family does not satisfy the relation and the
/// offending `n` is reported.
pub fn extract_22(
    fam: &OPSFamily,
    c: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<HahnStructure22> {
    if n_max > fam.n_max() {
        return Err(Error::DepthExceeded {
            needed: n_max,
            have: fam.n_max(),
        });
    }
    let zero = ctx.int(0);
    let x_minus_c = Poly::from_coeffs(alloc::vec![-c, ctx.int(1)]);
    let mut a_n = alloc::vec![zero.clone(), zero.clone()];
    let mut b_n = alloc::vec![zero.clone(), ctx.int(1)];
    let mut c_n = alloc::vec![zero.clone(), -c];
    for n in 2..=n_max {
        let lhs = x_minus_c.mul(&dqw(fam.p(n), ctx));
        let v = fam.expand_in_basis(&lhs)?;
        for (j, coeff) in v.iter().enumerate().take(n - 2) {
            if !coeff.is_zero() {
                return Err(Error::Precondition {
                    msg: format!(
                        "family does not satisfy the structure relation: \
                         P_{j} component present at n = {n}"
                    ),
                });
            }
        }
        let bn = v[n - 2].try_div(fam.c_n(n - 1))?;
        if bn.is_zero() {
            return Err(Error::Precondition {
                msg: format!("b_{n} = 0 violates the relation hypothesis"),
            });
        }
        let cn = &v[n - 1] - &(&bn * fam.b_n(n - 1));
        let an = &v[n] - &bn;
        // reconstruction must be exact
        let bx_plus_c = Poly::from_coeffs(alloc::vec![cn.clone(), bn.clone()]);
        let rhs = fam.p(n).scale(&an).add(&bx_plus_c.mul(fam.p(n - 1)));
        if lhs != rhs {
            return Err(Error::Precondition {
                msg: format!("family does not satisfy the structure relation at n = {n}"),
            });
        }
        a_n.push(an);
        b_n.push(bn);
        c_n.push(cn);
    }
    Ok(HahnStructure22 {
        c: c.clone(),
        a_n,
        b_n,
        c_n,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HahnVerdict {
    /// `u` is `D_{1/q,-w/q}`-classical; the polynomials are
    /// Al-Salam-Carlitz.
    Classical,
    SemiclassicalClassOne,
}

/// Checks run on the decomposition `u = (x-c)^{-1} v + delta_c` with
/// `v = (x - c) u` an Al-Salam-Carlitz form: its first-order Pearson
/// equation, the moment identity itself, and the recovered recurrence of
/// `v` against the Al-Salam-Carlitz closed forms (everything through
/// `r + s` and `r s`, which stay in `K`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompositionReport {
    pub r_plus_s: Scalar,
    pub r_times_s: Scalar,
    pub v_pearson: ResidualReport,
    pub moment_identity: ResidualReport,
    pub asc_recurrence: ResidualReport,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Thm65Report {
    pub verdict: HahnVerdict,
    pub b2: Scalar,
    pub lambda_sum: Scalar,
    pub lambda_product: Scalar,
    /// `q (w + qc - l_+)(w + qc - l_-)`, expanded through sum/product.
    pub test_value: Scalar,
    /// `-C_2/b_2`; equality with `test_value` is the classical branch.
    pub test_target: Scalar,
    /// `D_{1/q,-w/q}((x-c) u) = -(q b_2/C_2)(x - l_+)(x - l_-) u`
    /// verified on moments.
    pub quad_residuals: ResidualReport,
    pub condt: bool,
    pub decomposition: Option<DecompositionReport>,
}

/// Classify a family satisfying the structure relation at the point `c`.
pub fn thm65_classify(
    fam: &OPSFamily,
    c: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<Thm65Report> {
    if fam.n_max() < n_max + 2 {
        return Err(Error::DepthExceeded {
            needed: n_max + 2,
            have: fam.n_max(),
        });
    }
    let st = extract_22(fam, c, n_max.max(3).min(fam.n_max()), ctx)?;
    let b2 = st.b_n[2].clone();
    if b2.is_zero() || fam.c_n(1).is_zero() {
        return Err(Error::Degenerate {
            msg: "b_2 = 0 or C_1 = 0: classifier input degenerate".to_string(),
        });
    }
    let q = ctx.q();
    let w = ctx.omega();
    let b0 = fam.b_n(0);
    let b1 = fam.b_n(1);
    let c1 = fam.c_n(1);
    let c2 = fam.c_n(2);

    // E = (c - B_0) C_2 / (b_2 C_1)
    let e = (&(c - b0) * c2).try_div(&(&b2 * c1))?;
    let lambda_sum = &(b0 + b1) + &e;
    let half = ctx.ratio(1, 2);
    let quarter = ctx.ratio(1, 4);
    let disc = {
        let base = &(b0 - b1) - &e;
        &(&base * &base) + &(&ctx.int(4) * c1)
    };
    let half_sum = &lambda_sum * &half;
    let lambda_product = &(&half_sum * &half_sum) - &(&disc * &quarter);

    // the quadratic -(q b_2 / C_2)(x^2 - sum x + prod)
    let scale = (-&(q * &b2)).try_div(c2)?;
    let quad = Poly::from_coeffs(alloc::vec![
        &lambda_product * &scale,
        &(-&lambda_sum) * &scale,
        scale.clone()
    ]);

    let u = fam.moments(fam.n_max())?;
    let x_minus_c = Poly::from_coeffs(alloc::vec![-c, ctx.int(1)]);
    let v = linform::mul_poly(&x_minus_c, &u)?;
    let quad_residuals = verify_hahn_pearson_on_moments(&v, &quad, &u, n_max, ctx)?;

    // q (w + qc - l_+)(w + qc - l_-) against -C_2/b_2
    let wqc = w + &(q * c);
    let test_value = q * &(&(&(&wqc * &wqc) - &(&wqc * &lambda_sum)) + &lambda_product);
    let test_target = (-c2).try_div(&b2)?;
    let verdict = if test_value == test_target {
        HahnVerdict::Classical
    } else {
        HahnVerdict::SemiclassicalClassOne
    };

    // condt: b_2 C_1^2 = (B_0 - c)(b_2 (B_1 - c) C_1 - (B_0 - c) C_2)
    let lhs = &b2 * &(c1 * c1);
    let rhs = &(b0 - c) * &(&(&(&b2 * &(b1 - c)) * c1) - &(&(b0 - c) * c2));
    let condt = lhs == rhs;

    let decomposition = if condt {
        // one root is c exactly; the discriminant collapses to
        // (2c - sum)^2, so everything stays in K
        let delta_sqrt = &(&ctx.int(2) * c) - &lambda_sum;
        debug_assert_eq!(disc, &delta_sqrt * &delta_sqrt);
        let x0 = ctx.x0();
        let r_plus_s = &(&lambda_sum - c) - &x0;
        let r_times_s = c2.try_div(&(&(q - &ctx.int(1)) * &b2))?;
        // psi = (x - (r+s) - x0)/((1/q - 1) r s); the prefactor equals
        // -q b_2 / C_2
        let d_coef = (-&(q * &b2)).try_div(c2)?;
        let e_coef = &(-&(&r_plus_s + &x0)) * &d_coef;
        let psi = Poly::from_coeffs(alloc::vec![e_coef, d_coef]);
        let v_pearson = verify_hahn_pearson_on_moments(&v, &psi, &v, n_max, ctx)?;

        // u = (x-c)^{-1} v + delta_c on the common moment range
        let recombined = linform::div_linear(c, &v).add(&linform::delta(c, u.valid_degree()));
        let moment_identity = match recombined.first_disagreement(&u) {
            None => ResidualReport {
                lo: 0,
                hi: u.valid_degree() as i64,
                first_failure: None,
            },
            Some(k) => ResidualReport {
                lo: 0,
                hi: u.valid_degree() as i64,
                first_failure: Some((
                    k as i64,
                    format!(
                        "moment {k}: {} != {}",
                        recombined.moments()[k],
                        u.moments()[k]
                    ),
                )),
            },
        };

        // recovered recurrence of v against the Al-Salam-Carlitz closed
        // forms B_n = x0 + (r+s) q^n, C_{n+1} = -rs (1 - q^{n+1}) q^n
        let depth = (v.valid_degree().saturating_sub(1) / 2).min(8);
        let asc_recurrence = match opseq::recurrence_from_moments(&v, depth) {
            Err(err) => ResidualReport {
                lo: 0,
                hi: depth as i64,
                first_failure: Some((0, format!("recurrence recovery failed: {err}"))),
            },
            Ok((bv, cv)) => {
                let mut fail = None;
                for n in 0..=depth {
                    let ni = n as i64;
                    let b_exp = &x0 + &(&r_plus_s * &ctx.q_pow(ni));
                    if bv[n] != b_exp {
                        fail = Some((ni, format!("B_{n} of v = {}, expected {b_exp}", bv[n])));
                        break;
                    }
                    if n >= 1 {
                        let c_exp = &(&(-&r_times_s) * &(&ctx.int(1) - &ctx.q_pow(ni)))
                            * &ctx.q_pow(ni - 1);
                        if cv[n] != c_exp {
                            fail = Some((ni, format!("C_{n} of v = {}, expected {c_exp}", cv[n])));
                            break;
                        }
                    }
                }
                ResidualReport {
                    lo: 0,
                    hi: depth as i64,
                    first_failure: fail,
                }
            }
        };

        Some(DecompositionReport {
            r_plus_s,
            r_times_s,
            v_pearson,
            moment_identity,
            asc_recurrence,
        })
    } else {
        None
    };

    Ok(Thm65Report {
        verdict,
        b2,
        lambda_sum,
        lambda_product,
        test_value,
        test_target,
        quad_residuals,
        condt,
        decomposition,
    })
}

/// Verify `D_{1/q,-w/q} v = rhs_poly u` on moments:
/// `-q <v, D_{q,w} x^n> = <u, rhs_poly x^n>` for `n = 0..=n_max`.
fn verify_hahn_pearson_on_moments(
    v: &LinearForm,
    rhs_poly: &Poly,
    u: &LinearForm,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<ResidualReport> {
    let needed = n_max + rhs_poly.deg0();
    if needed > u.valid_degree() || n_max.saturating_sub(1) > v.valid_degree() {
        return Err(Error::DepthExceeded {
            needed,
            have: u.valid_degree(),
        });
    }
    let q = ctx.q();
    let one = ctx.int(1);
    let mut first_failure = None;
    for n in 0..=n_max {
        let img = dqw(&Poly::monomial(one.clone(), n), ctx);
        let lhs = -&(q * &v.apply(&img)?);
        let rhs = u.apply(&rhs_poly.mul(&Poly::monomial(one.clone(), n)))?;
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

/// The class-one family `B_n = w/(1-q)`,
/// `C_n = (a + (-1)^n b - (a+b) q^n) q^n`; needs `a + b != 0`, `b != 0`,
/// and the parameter condition that every `C_n` is nonzero (the build
/// names the first violating index).
pub fn class_one_family(
    a: &Scalar,
    b: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<OPSFamily> {
    if (a + b).is_zero() || b.is_zero() {
        return Err(Error::Precondition {
            msg: "class-one family needs a + b != 0 and b != 0".to_string(),
        });
    }
    let x0 = ctx.x0();
    let b_list = alloc::vec![x0; n_max + 1];
    let c_list = (0..=n_max)
        .map(|n| {
            let ni = n as i64;
            let sign_b = if n % 2 == 0 { b.clone() } else { -b };
            let inner = &(a + &sign_b) - &(&(a + b) * &ctx.q_pow(ni));
            &inner * &ctx.q_pow(ni)
        })
        .collect();
    OPSFamily::build("hahn-class1", b_list, c_list)
}

/// Al-Salam-Carlitz recurrence `B_n = w/(1-q) + (r+s) q^n`,
/// `C_{n+1} = -rs (1 - q^{n+1}) q^n`; needs `r s != 0`.
pub fn al_salam_carlitz_family(
    r: &Scalar,
    s: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<OPSFamily> {
    if r.is_zero() || s.is_zero() {
        return Err(Error::Precondition {
            msg: "Al-Salam-Carlitz needs nonzero r and s".to_string(),
        });
    }
    let x0 = ctx.x0();
    let r_plus_s = r + s;
    let rs = r * s;
    let b_list = (0..=n_max)
        .map(|n| &x0 + &(&r_plus_s * &ctx.q_pow(n as i64)))
        .collect();
    let c_list = (0..=n_max)
        .map(|n| {
            if n == 0 {
                ctx.int(0)
            } else {
                let ni = n as i64;
                &(&(-&rs) * &(&ctx.int(1) - &ctx.q_pow(ni))) * &ctx.q_pow(ni - 1)
            }
        })
        .collect();
    OPSFamily::build("al-salam-carlitz", b_list, c_list)
}

/// The Pearson-type equation of the class-one family:
/// `D_{1/q,-w/q}((x - w/(1-q)) u)
///    = 1/((a+b)(q-1)) ((x - w/(1-q))^2/q + b - a + (a+b) q) u`
/// verified on moments for `n = 0..=n_max`.
pub fn verify_class_one_pearson(
    fam: &OPSFamily,
    a: &Scalar,
    b: &Scalar,
    n_max: usize,
    ctx: &HahnContext,
) -> Result<ResidualReport> {
    if (a + b).is_zero() {
        return Err(Error::Precondition {
            msg: "parameter condition a + b != 0 violated".to_string(),
        });
    }
    let x0 = ctx.x0();
    let u = fam.moments(fam.n_max())?;
    let x_minus_c = Poly::from_coeffs(alloc::vec![-&x0, ctx.int(1)]);
    let v = linform::mul_poly(&x_minus_c, &u)?;
    let qinv = ctx.q().inv().expect("q nonzero");
    let shift = &(b - a) + &(&(a + b) * ctx.q());
    let rhs = x_minus_c
        .mul(&x_minus_c)
        .scale(&qinv)
        .add(&Poly::constant(shift));
    let prefactor = ctx
        .int(1)
        .try_div(&(&(a + b) * &(ctx.q() - &ctx.int(1))))?;
    verify_hahn_pearson_on_moments(&v, &rhs.scale(&prefactor), &u, n_max, ctx)
}
