//! The exact coefficient field `K` and the `q`-contexts.
//!
//! `K` comes in two modes. Rational mode is plain arbitrary-precision
//! rationals. Symbolic mode is the field of rational functions in one
//! transcendental `t`; in Askey-Wilson contexts `t` stands for `q^(1/2)`
//! (so `q = t^2` and every half-power of `q` stays in the field), in Hahn
//! contexts `t` stands for `q` itself.
//!
//! Canonical form, both modes: reduced fraction, positive denominator
//! (positive leading coefficient in symbolic mode). Equality is plain
//! representation comparison.

pub(crate) mod tpoly;

use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};
use tpoly::TPoly;

/// Which field a scalar lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Arbitrary-precision rationals.
    Rational,
    /// Rational functions in the transcendental `t`.
    Symbolic,
}

/// Reduced fraction of integer polynomials in `t`.
///
/// Invariants: denominator nonzero with positive leading coefficient;
/// numerator and denominator share no polynomial factor and no integer
/// content.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct RatFunc {
    num: TPoly,
    den: TPoly,
}

impl RatFunc {
    fn reduced(num: TPoly, den: TPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num: TPoly::zero(),
                den: TPoly::one(),
            };
        }
        let g = TPoly::gcd(&num, &den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    fn zero() -> RatFunc {
        RatFunc {
            num: TPoly::zero(),
            den: TPoly::one(),
        }
    }

    fn generator() -> RatFunc {
        RatFunc {
            num: TPoly::monomial(BigInt::one(), 1),
            den: TPoly::one(),
        }
    }

    fn from_rational(r: &BigRational) -> RatFunc {
        RatFunc {
            num: TPoly::constant(r.numer().clone()),
            den: TPoly::constant(r.denom().clone()),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::reduced(self.num.add(&other.num), self.den.clone());
        }
        let g = TPoly::gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RatFunc::zero();
            }
            // dens coprime: the sum is already reduced
            return RatFunc {
                num,
                den: self.den.mul(&other.den),
            };
        }
        let bq = self.den.exact_div(&g);
        let dq = other.den.exact_div(&g);
        let num = self.num.mul(&dq).add(&other.num.mul(&bq));
        if num.is_zero() {
            return RatFunc::zero();
        }
        // only factors of g can survive into the numerator
        let h = TPoly::gcd(&num, &g);
        RatFunc {
            num: num.exact_div(&h),
            den: self.den.exact_div(&h).mul(&dq),
        }
    }

    fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // cross-reduce; the remaining product is reduced by coprimality
        let g1 = TPoly::gcd(&self.num, &other.den);
        let g2 = TPoly::gcd(&other.num, &self.den);
        RatFunc {
            num: self.num.exact_div(&g1).mul(&other.num.exact_div(&g2)),
            den: self.den.exact_div(&g2).mul(&other.den.exact_div(&g1)),
        }
    }

    fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { num, den })
    }

    fn pow(&self, e: i64) -> Result<RatFunc> {
        if e < 0 {
            if self.is_zero() {
                return Err(Error::ZeroToNegativePower);
            }
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = RatFunc {
            num: TPoly::one(),
            den: TPoly::one(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    fn eval(&self, t0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        Ok(self.num.eval(t0) / d)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    Rat(BigRational),
    Sym(RatFunc),
}

/// Element of the exact coefficient field `K`, in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar(Repr);

/// Arithmetic selector for [`arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: errors on mode mismatch and division by zero.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    if a.mode() != b.mode() {
        return Err(Error::ModeMismatch);
    }
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.try_div(b),
    }
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match &self.0 {
            Repr::Rat(_) => Mode::Rational,
            Repr::Sym(_) => Mode::Symbolic,
        }
    }

    pub fn int(mode: Mode, k: i64) -> Scalar {
        Scalar::from_bigint(mode, BigInt::from(k))
    }

    pub fn from_bigint(mode: Mode, k: BigInt) -> Scalar {
        match mode {
            Mode::Rational => Scalar(Repr::Rat(BigRational::from_integer(k))),
            Mode::Symbolic => Scalar(Repr::Sym(RatFunc {
                num: TPoly::constant(k),
                den: TPoly::one(),
            })),
        }
    }

    pub fn ratio(mode: Mode, p: i64, q: i64) -> Result<Scalar> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_bigrational(
            mode,
            BigRational::new(BigInt::from(p), BigInt::from(q)),
        ))
    }

    pub fn from_bigrational(mode: Mode, r: BigRational) -> Scalar {
        match mode {
            Mode::Rational => Scalar(Repr::Rat(r)),
            Mode::Symbolic => Scalar(Repr::Sym(RatFunc::from_rational(&r))),
        }
    }

    /// The transcendental `t` (symbolic mode only).
    pub fn generator() -> Scalar {
        Scalar(Repr::Sym(RatFunc::generator()))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_zero(),
            Repr::Sym(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_one(),
            Repr::Sym(f) => f.is_one(),
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar(Repr::Rat(r.recip())))
                }
            }
            Repr::Sym(f) => Ok(Scalar(Repr::Sym(f.inv()?))),
        }
    }

    /// Integer power, negative exponents allowed on nonzero scalars.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(r) => {
                if e < 0 {
                    if r.is_zero() {
                        return Err(Error::ZeroToNegativePower);
                    }
                    return Scalar(Repr::Rat(r.recip())).pow(-e);
                }
                let mut acc = BigRational::one();
                let mut base = r.clone();
                let mut e = e as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = base.clone() * &base;
                    }
                }
                Ok(Scalar(Repr::Rat(acc)))
            }
            Repr::Sym(f) => Ok(Scalar(Repr::Sym(f.pow(e)?))),
        }
    }

    /// Evaluate a symbolic scalar at `t = t0`, landing in rational mode.
    /// Rational scalars pass through unchanged.
    pub fn specialize(&self, t0: &BigRational) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(r) => Ok(Scalar(Repr::Rat(r.clone()))),
            Repr::Sym(f) => Ok(Scalar(Repr::Rat(f.eval(t0)?))),
        }
    }

    pub fn as_bigrational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Sym(_) => None,
        }
    }

    /// `Some(k)` iff the scalar is exactly the monomial `t^k`
    /// (coefficient one). Always `None` in rational mode.
    pub fn as_t_power(&self) -> Option<i64> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Sym(f) => {
                let (cn, kn) = f.num.as_monomial()?;
                let (cd, kd) = f.den.as_monomial()?;
                if cn == cd {
                    Some(kn as i64 - kd as i64)
                } else {
                    None
                }
            }
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        fr: impl Fn(&BigRational, &BigRational) -> BigRational,
        fs: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(fr(a, b))),
            (Repr::Sym(a), Repr::Sym(b)) => Scalar(Repr::Sym(fs(a, b))),
            _ => panic!("scalar mode mismatch (rational vs symbolic)"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, RatFunc::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b| a.add(&b.neg()))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, RatFunc::mul)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rat(r) => Scalar(Repr::Rat(-r)),
            Repr::Sym(f) => Scalar(Repr::Sym(f.neg())),
        }
    }
}

/// Canonical text form. Rational mode: `p/q` or `p`. Symbolic mode:
/// expanded numerator and denominator in decreasing degree, e.g.
/// `(-3*t^2 + 1)/(2*t)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Sym(rf) => {
                if rf.den.is_one() {
                    return write!(f, "{}", rf.num);
                }
                // numerator: parenthesize multi-term polynomials
                if rf.num.term_count() > 1 {
                    write!(f, "({})", rf.num)?;
                } else {
                    write!(f, "{}", rf.num)?;
                }
                write!(f, "/")?;
                // denominator: parenthesize anything that is not a bare
                // integer or a coefficient-one power of t
                let bare = rf.den.is_constant()
                    || (rf.den.term_count() == 1 && rf.den.lc().is_one());
                if bare {
                    write!(f, "{}", rf.den)
                } else {
                    write!(f, "({})", rf.den)
                }
            }
        }
    }
}

/// Fixed Askey-Wilson context: `t = q^(1/2)`, either the symbolic
/// generator or a supplied rational (so `q = t^2` is a rational square and
/// every `q^(n/2)` stays in the field).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QContext {
    t: Scalar,
}

impl QContext {
    /// Symbolic mode: `t` is transcendental, condition (wq)-style root-of-
    /// unity exclusions hold automatically.
    pub fn symbolic() -> QContext {
        QContext {
            t: Scalar::generator(),
        }
    }

    /// Rational mode. Requires `t` outside {0, 1, -1}, which is the
    /// finitely checkable part of the root-of-unity exclusion (a positive
    /// rational q != 1 is never a nontrivial root of unity).
    pub fn rational(t: BigRational) -> Result<QContext> {
        if t.is_zero() || t.clone().abs().is_one() {
            return Err(Error::InvalidContext {
                msg: "rational t must lie outside {0, 1, -1}".to_string(),
            });
        }
        Ok(QContext {
            t: Scalar(Repr::Rat(t)),
        })
    }

    pub fn rational_ratio(p: i64, q: i64) -> Result<QContext> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        QContext::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn mode(&self) -> Mode {
        self.t.mode()
    }

    pub fn t(&self) -> Scalar {
        self.t.clone()
    }

    /// `t^k`, any integer `k`.
    pub fn t_pow(&self, k: i64) -> Scalar {
        self.t.pow(k).expect("t is nonzero")
    }

    /// `q = t^2`.
    pub fn q(&self) -> Scalar {
        self.t_pow(2)
    }

    /// `alpha = alpha_1 = (t + 1/t)/2`.
    pub fn alpha(&self) -> Scalar {
        self.alpha_n(1)
    }

    /// `alpha_n = (q^(n/2) + q^(-n/2))/2 = (t^n + t^(-n))/2`; the formula
    /// extends to all integers, covering the convention `alpha_{-1} = alpha`.
    pub fn alpha_n(&self, n: i64) -> Scalar {
        let p = self.t_pow(n);
        let m = self.t_pow(-n);
        &(&p + &m) * &self.ratio(1, 2)
    }

    /// `gamma_n = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2))`; the formula
    /// extends to all integers and gives `gamma_{-1} = -1`, `gamma_0 = 0`.
    pub fn gamma_n(&self, n: i64) -> Scalar {
        if n == 0 {
            return self.int(0);
        }
        let num = &self.t_pow(n) - &self.t_pow(-n);
        let den = &self.t_pow(1) - &self.t_pow(-1);
        num.try_div(&den).expect("t != t^-1 since t is not a root of unity")
    }

    /// `[n]_q = (q^n - 1)/(q - 1)` with `q = t^2`, any integer `n`.
    pub fn qbracket(&self, n: i64) -> Scalar {
        crate::scalar::qbracket(&self.q(), n)
    }

    /// `(alpha_n, gamma_n, [n]_q)` in one call.
    pub fn coeff_symbols(&self, n: i64) -> (Scalar, Scalar, Scalar) {
        (self.alpha_n(n), self.gamma_n(n), self.qbracket(n))
    }

    pub fn int(&self, k: i64) -> Scalar {
        Scalar::int(self.mode(), k)
    }

    pub fn ratio(&self, p: i64, q: i64) -> Scalar {
        Scalar::ratio(self.mode(), p, q).expect("nonzero literal denominator")
    }

    /// Parse a scalar literal in this context.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        parse_scalar(text, self)
    }
}

/// `[n]_q = (q^n - 1)/(q - 1)` for an arbitrary nonzero scalar `q != 1`,
/// any integer `n` (negative included, e.g. `[-1]_q = -1/q`).
pub fn qbracket(q: &Scalar, n: i64) -> Scalar {
    if n == 0 {
        return Scalar::int(q.mode(), 0);
    }
    let one = Scalar::int(q.mode(), 1);
    let num = &q.pow(n).expect("q nonzero") - &one;
    let den = q - &one;
    num.try_div(&den).expect("q != 1")
}

/// Parse a scalar literal: integers, `p/q` rationals, the variable `t`,
/// operators `+ - * / ^` (integer exponents, negative allowed), and
/// parentheses. Round-trips with the canonical `Display` form.
pub fn parse_scalar(text: &str, ctx: &QContext) -> Result<Scalar> {
    crate::poly::parse::parse_scalar_literal(text, ctx.mode(), Some(ctx.t()))
}

/// Parse a scalar literal with an explicit mode and optional value for the
/// `t` atom (`None` makes `t` a parse error, e.g. Hahn rational mode).
pub fn parse_scalar_with(text: &str, mode: Mode, t: Option<Scalar>) -> Result<Scalar> {
    crate::poly::parse::parse_scalar_literal(text, mode, t)
}

/// Small pseudo-random scalar for identity trials: a rational with
/// numerator in [-4, 4] and denominator in [1, 4]; in symbolic mode,
/// multiplied by `t^e` with `e` in [-2, 2] half of the time.
pub fn sample_scalar<R: RngCore>(rng: &mut R, mode: Mode) -> Scalar {
    let p = (rng.next_u32() % 9) as i64 - 4;
    let q = (rng.next_u32() % 4) as i64 + 1;
    let base = Scalar::ratio(mode, p, q).expect("q >= 1");
    if mode == Mode::Symbolic && rng.next_u32().is_multiple_of(2) {
        let e = (rng.next_u32() % 5) as i64 - 2;
        &base * &Scalar::generator().pow(e).expect("t nonzero")
    } else {
        base
    }
}

/// Like [`sample_scalar`] but never zero.
pub fn sample_nonzero_scalar<R: RngCore>(rng: &mut R, mode: Mode) -> Scalar {
    loop {
        let s = sample_scalar(rng, mode);
        if !s.is_zero() {
            return s;
        }
    }
}
