//! Dense polynomials over `K` and the symmetric Laurent picture.
//!
//! The Askey-Wilson operators act on `f(x)` through `breve f` with
//! `breve f(e^(i theta)) = f(cos theta)`: substituting `x = (z + 1/z)/2`
//! turns a polynomial of degree `m` into a symmetric Laurent polynomial
//! `c_0 + sum c_k (z^k + z^(-k))`. Shifting `z -> a z` splits into a
//! symmetric and an antisymmetric part, and the antisymmetric part is
//! always exactly divisible by `z - 1/z` (telescoping), which is the whole
//! content of the divided-difference denominator. Conversion back uses
//! `z^k + z^(-k) = 2 T_k(x)` through the Chebyshev recurrence.

pub(crate) mod parse;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{Mode, QContext, Scalar};

/// Dense polynomial in `x` over `K`; index = power, trailing zeros
/// trimmed, zero polynomial = empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::from_coeffs(alloc::vec![c])
    }

    pub fn monomial(c: Scalar, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mode = c.mode();
        let mut coeffs = alloc::vec![Scalar::int(mode, 0); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The monic degree-one polynomial `x`.
    pub fn x(mode: Mode) -> Poly {
        Poly::monomial(Scalar::int(mode, 1), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.coeffs.get(k)
    }

    /// Coefficient of `x^k` as an owned scalar, zero past the degree.
    /// Panics on the zero polynomial (no mode to synthesize a zero from);
    /// use `coeff` there.
    pub fn coeff_or_zero(&self, k: usize) -> Scalar {
        match self.coeffs.get(k) {
            Some(c) => c.clone(),
            None => Scalar::int(self.mode().expect("nonzero polynomial"), 0),
        }
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn mode(&self) -> Option<Mode> {
        self.coeffs.first().map(Scalar::mode)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(Scalar::is_one)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out: Vec<Option<Scalar>> =
            alloc::vec![None; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = a * b;
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => &acc + &p,
                    None => p,
                });
            }
        }
        let mode = self.mode().expect("nonzero");
        Poly::from_coeffs(
            out.into_iter()
                .map(|c| c.unwrap_or_else(|| Scalar::int(mode, 0)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc: Option<Poly> = None;
        for _ in 0..e {
            acc = Some(match acc {
                Some(p) => p.mul(self),
                None => self.clone(),
            });
        }
        match acc {
            Some(p) => p,
            // x^0 = 1; an empty product has no mode, so default to the
            // base's mode when available, rational otherwise
            None => Poly::constant(Scalar::int(self.mode().unwrap_or(Mode::Rational), 1)),
        }
    }

    /// `f(a x + b)` by Horner evaluation in `K[x]`.
    pub fn compose_linear(&self, a: &Scalar, b: &Scalar) -> Poly {
        let Some(d) = self.degree() else {
            return Poly::zero();
        };
        let inner = Poly::from_coeffs(alloc::vec![b.clone(), a.clone()]);
        let mut acc = Poly::constant(self.coeffs[d].clone());
        for k in (0..d).rev() {
            acc = acc.mul(&inner);
            acc = acc.add(&Poly::constant(self.coeffs[k].clone()));
        }
        acc
    }

    pub fn eval(&self, x0: &Scalar) -> Scalar {
        let mut acc = Scalar::int(x0.mode(), 0);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x0) + c;
        }
        acc
    }

    /// Quotient and remainder; `g` must be nonzero.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lg = g.lc().expect("nonzero").clone();
        let mut rem = self.clone();
        let mut quot: Vec<Scalar> = Vec::new();
        let mode = match self.mode().or(g.mode()) {
            Some(m) => m,
            None => return Ok((Poly::zero(), Poly::zero())),
        };
        if self.deg0() >= dg && !self.is_zero() {
            quot = alloc::vec![Scalar::int(mode, 0); self.deg0() - dg + 1];
        }
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let qc = rem.lc().expect("nonzero").try_div(&lg)?;
            let k = dr - dg;
            rem = rem.sub(&g.mul(&Poly::monomial(qc.clone(), k)));
            quot[k] = qc;
            debug_assert!(rem.deg0() < dr || rem.is_zero());
        }
        Ok((Poly::from_coeffs(quot), rem))
    }

    /// Exact division: errors (carrying the remainder) unless `g | f`.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision {
                remainder: r.to_string(),
            })
        }
    }

    pub fn monic(&self) -> Result<Poly> {
        let lc = self.lc().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&lc.inv()?))
    }

    /// Monic greatest common divisor over `K` (Euclid; the coefficient
    /// field keeps every step exact). `gcd(0, 0) = 0`.
    pub fn gcd(f: &Poly, g: &Poly) -> Poly {
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("a nonzero")
        }
    }

    /// Evaluate every coefficient at `t = t0` (symbolic mode), landing in
    /// rational mode.
    pub fn specialize(&self, t0: &BigRational) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.specialize(t0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

/// Canonical text form: terms in decreasing degree, scalar coefficients
/// parenthesized, e.g. `(1/4)*x^2 + ((-t^2 - 1)/(2*t))*x`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else if k == 1 {
                write!(f, "({c})*x")?;
            } else {
                write!(f, "({c})*x^{k}")?;
            }
        }
        Ok(())
    }
}

/// Parse a polynomial literal in `x` (scalar grammar plus the atom `x`).
pub fn parse_poly(text: &str, ctx: &QContext) -> Result<Poly> {
    parse::parse_poly_literal(text, ctx.mode(), Some(ctx.t()))
}

/// Symmetric Laurent polynomial `c_0 + sum_{k>=1} c_k (z^k + z^(-k))`;
/// index = `k`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymLaurent {
    coeffs: Vec<Scalar>,
}

/// Antisymmetric Laurent polynomial `sum_{k>=1} d_k (z^k - z^(-k))`;
/// index `i` holds `d_{i+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntiLaurent {
    coeffs: Vec<Scalar>,
}

impl SymLaurent {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> SymLaurent {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        SymLaurent { coeffs }
    }

    pub fn zero() -> SymLaurent {
        SymLaurent { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Scalar) -> SymLaurent {
        if c.is_zero() {
            return SymLaurent::zero();
        }
        SymLaurent {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `breve f(a z)` split into its symmetric and antisymmetric parts
    /// under `z -> 1/z`: the `z^k` coefficient picks up `a^k`, so
    /// `S_k = c_k (a^k + a^(-k))/2` and `A_k = c_k (a^k - a^(-k))/2`.
    /// Requires `a != 0`.
    pub fn shift_z(&self, a: &Scalar) -> (SymLaurent, AntiLaurent) {
        let ainv = a.inv().expect("shift base must be nonzero");
        let mode = a.mode();
        let half = Scalar::ratio(mode, 1, 2).expect("2 != 0");
        let mut sym = Vec::with_capacity(self.coeffs.len());
        let mut anti = Vec::new();
        let mut apow = Scalar::int(mode, 1);
        let mut ainvpow = Scalar::int(mode, 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k == 0 {
                sym.push(c.clone());
                continue;
            }
            apow = &apow * a;
            ainvpow = &ainvpow * &ainv;
            sym.push(&(c * &(&apow + &ainvpow)) * &half);
            anti.push(&(c * &(&apow - &ainvpow)) * &half);
        }
        (
            SymLaurent::from_coeffs(sym),
            AntiLaurent::from_coeffs(anti),
        )
    }

    /// Multiply by `z - 1/z` (symmetric times antisymmetric-unit is
    /// antisymmetric); the round-trip partner of
    /// [`AntiLaurent::divide_antisym`].
    pub fn mul_antisym_unit(&self) -> AntiLaurent {
        if self.is_zero() {
            return AntiLaurent::from_coeffs(Vec::new());
        }
        let mode = self.coeffs[0].mode();
        let m = self.coeffs.len() - 1;
        let mut d = alloc::vec![Scalar::int(mode, 0); m + 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // e_k (z - 1/z) = o_{k+1} - o_{k-1}, the o_0 term vanishing
            d[k + 1] = &d[k + 1] + c;
            if k >= 2 {
                d[k - 1] = &d[k - 1] - c;
            }
        }
        // stored shifted: index i holds d_{i+1}
        AntiLaurent::from_coeffs(d.split_off(1))
    }
}

impl AntiLaurent {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> AntiLaurent {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        AntiLaurent { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient `d_k` of `z^k - z^(-k)`, `k >= 1`.
    pub fn d(&self, k: usize) -> Option<&Scalar> {
        debug_assert!(k >= 1);
        self.coeffs.get(k - 1)
    }

    pub fn scale(&self, c: &Scalar) -> AntiLaurent {
        if c.is_zero() {
            return AntiLaurent::from_coeffs(Vec::new());
        }
        AntiLaurent {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn sub(&self, other: &AntiLaurent) -> AntiLaurent {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        AntiLaurent::from_coeffs(out)
    }

    /// Exact division by `z - 1/z`, using the telescoping
    /// `(z^k - z^(-k))/(z - 1/z) = z^(k-1) + z^(k-3) + ... + z^(-(k-1))`.
    /// Antisymmetric input is always divisible.
    pub fn divide_antisym(&self) -> SymLaurent {
        if self.is_zero() {
            return SymLaurent::zero();
        }
        let mode = self.coeffs[0].mode();
        let m = self.coeffs.len();
        let mut c = alloc::vec![Scalar::int(mode, 0); m];
        for (i, dk) in self.coeffs.iter().enumerate() {
            if dk.is_zero() {
                continue;
            }
            let k = i + 1;
            // contributes to e_{k-1}, e_{k-3}, ...; the z^0 term appears
            // exactly once, matching e_0 = 1
            let mut j = k - 1;
            loop {
                c[j] = &c[j] + dk;
                if j < 2 {
                    break;
                }
                j -= 2;
            }
        }
        SymLaurent::from_coeffs(c)
    }
}

/// Substitute `x = (z + 1/z)/2`: iterated multiplication by `x` in the
/// `e_k = z^k + z^(-k)` basis (`x e_0 = e_1/2`, `x e_1 = e_2/2 + e_0`,
/// `x e_k = (e_{k+1} + e_{k-1})/2`).
pub fn to_symlaurent(f: &Poly) -> SymLaurent {
    let Some(d) = f.degree() else {
        return SymLaurent::zero();
    };
    let mode = f.mode().expect("nonzero");
    let zero = || Scalar::int(mode, 0);
    let half = Scalar::ratio(mode, 1, 2).expect("2 != 0");
    let mut out = alloc::vec![zero(); d + 1];
    // e-basis coefficients of x^k, k = 0 to start
    let mut cur = alloc::vec![Scalar::int(mode, 1)];
    for (k, fc) in f.coeffs().iter().enumerate() {
        if !fc.is_zero() {
            for (j, cj) in cur.iter().enumerate() {
                out[j] = &out[j] + &(fc * cj);
            }
        }
        if k == d {
            break;
        }
        let mut next = alloc::vec![zero(); cur.len() + 1];
        for (j, cj) in cur.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            match j {
                0 => next[1] = &next[1] + &(cj * &half),
                1 => {
                    next[2] = &next[2] + &(cj * &half);
                    next[0] = &next[0] + cj;
                }
                _ => {
                    next[j + 1] = &next[j + 1] + &(cj * &half);
                    next[j - 1] = &next[j - 1] + &(cj * &half);
                }
            }
        }
        cur = next;
    }
    SymLaurent::from_coeffs(out)
}

/// Convert back through `z^k + z^(-k) = 2 T_k(x)` with the Chebyshev
/// recurrence `U_{k+1} = 2x U_k - U_{k-1}`, `U_0 = 2`, `U_1 = 2x`
/// (writing `U_k` for `2 T_k`).
pub fn from_symlaurent(g: &SymLaurent) -> Poly {
    if g.is_zero() {
        return Poly::zero();
    }
    let mode = g.coeffs[0].mode();
    let two_x = Poly::monomial(Scalar::int(mode, 2), 1);
    let mut acc = Poly::constant(g.coeffs[0].clone());
    let mut prev = Poly::constant(Scalar::int(mode, 2)); // U_0
    let mut cur = two_x.clone(); // U_1
    for (k, c) in g.coeffs.iter().enumerate().skip(1) {
        if !c.is_zero() {
            acc = acc.add(&cur.scale(c));
        }
        if k + 1 < g.coeffs.len() {
            let next = two_x.mul(&cur).sub(&prev);
            prev = cur;
            cur = next;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QContext;

    fn ctx() -> QContext {
        QContext::symbolic()
    }

    fn p(ctx: &QContext, text: &str) -> Poly {
        parse_poly(text, ctx).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        let c = ctx();
        assert_eq!(p(&c, "(x+1)*(x-1)"), p(&c, "x^2-1"));
    }

    #[test]
    fn compose_linear_binomial() {
        // x^2 at (q x + w) -> q^2 x^2 + 2 q w x + w^2
        let c = ctx();
        let f = p(&c, "x^2");
        let q = c.parse_scalar("t^2").unwrap();
        let w = c.parse_scalar("1/3").unwrap();
        assert_eq!(
            f.compose_linear(&q, &w),
            p(&c, "t^4*x^2 + (2/3)*t^2*x + 1/9")
        );
    }

    #[test]
    fn exact_div_and_remainder() {
        let c = ctx();
        assert_eq!(
            p(&c, "x^2-1").exact_div(&p(&c, "x-1")).unwrap(),
            p(&c, "x+1")
        );
        assert!(matches!(
            p(&c, "x^2+1").exact_div(&p(&c, "x-1")),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn gcd_examples() {
        let c = ctx();
        assert_eq!(Poly::gcd(&p(&c, "x^2-1"), &p(&c, "x-1")), p(&c, "x-1"));
        assert_eq!(Poly::gcd(&p(&c, "x^2+1"), &p(&c, "x-1")), p(&c, "1"));
    }

    #[test]
    fn symlaurent_of_small_monomials() {
        let c = ctx();
        // x -> {c_1 = 1/2}
        let sx = to_symlaurent(&p(&c, "x"));
        assert_eq!(sx.coeffs(), &[c.int(0), c.ratio(1, 2)]);
        // x^2 -> {c_0 = 1/2, c_2 = 1/4}
        let sx2 = to_symlaurent(&p(&c, "x^2"));
        assert_eq!(sx2.coeffs(), &[c.ratio(1, 2), c.int(0), c.ratio(1, 4)]);
        assert_eq!(from_symlaurent(&sx2), p(&c, "x^2"));
    }

    #[test]
    fn shift_of_x_by_t() {
        // breve x (t z): symmetric coefficient (t + 1/t)/4 on e_1,
        // antisymmetric (t - 1/t)/4 on o_1
        let c = ctx();
        let g = to_symlaurent(&p(&c, "x"));
        let (s, a) = g.shift_z(&c.t());
        assert_eq!(s.coeffs()[1], c.parse_scalar("(t^2+1)/(4*t)").unwrap());
        assert_eq!(
            a.d(1).unwrap(),
            &c.parse_scalar("(t^2-1)/(4*t)").unwrap()
        );
    }

    #[test]
    fn shift_fixed_points() {
        let c = ctx();
        // constants are fixed by any shift
        let g = to_symlaurent(&p(&c, "7"));
        let (s, a) = g.shift_z(&c.t());
        assert_eq!(s, g);
        assert!(a.is_zero());
        // a = 1 fixes everything
        let g = to_symlaurent(&p(&c, "x^3 - 2*x"));
        let (s, a) = g.shift_z(&c.int(1));
        assert_eq!(s, g);
        assert!(a.is_zero());
    }

    #[test]
    fn divide_antisym_telescoping() {
        let c = ctx();
        let one = c.int(1);
        let zero = c.int(0);
        // d_1 = 1 -> e_0
        let g = AntiLaurent::from_coeffs(alloc::vec![one.clone()]);
        assert_eq!(g.divide_antisym().coeffs(), core::slice::from_ref(&one));
        // d_2 = 1 -> e_1
        let g = AntiLaurent::from_coeffs(alloc::vec![zero.clone(), one.clone()]);
        assert_eq!(g.divide_antisym().coeffs(), &[zero.clone(), one.clone()]);
        // d_3 = 1 -> e_2 + e_0 (z^2 + 1 + z^-2)
        let g = AntiLaurent::from_coeffs(alloc::vec![zero.clone(), zero.clone(), one.clone()]);
        assert_eq!(
            g.divide_antisym().coeffs(),
            &[one.clone(), zero.clone(), one.clone()]
        );
    }

    #[test]
    fn divide_antisym_round_trip() {
        let c = ctx();
        let f = p(&c, "x^5 - (1/3)*x^2 + t*x - 2");
        let (_, anti) = to_symlaurent(&f).shift_z(&c.t());
        let back = anti.divide_antisym().mul_antisym_unit();
        assert_eq!(back, anti);
    }

    #[test]
    fn display_round_trip() {
        let c = ctx();
        let f = p(&c, "(1/4)*x^2 + ((-t^2-1)/(2*t))*x");
        assert_eq!(p(&c, &alloc::format!("{f}")), f);
    }
}
