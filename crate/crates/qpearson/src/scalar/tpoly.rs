//! Integer-coefficient polynomials in the transcendental `t`.
//!
//! These are the numerators and denominators of symbolic-mode scalars.
//! The gcd is a primitive polynomial remainder sequence: every pseudo
//! remainder is stripped to its primitive part, which keeps coefficient
//! growth linear instead of exponential. Monomial denominators (the common
//! case: every `q^{n/2}` is `t^n`) short-circuit through the
//! content/valuation fast paths without entering the PRS loop at all.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::mem;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial over the integers; index = power of `t`, trailing
/// zeros trimmed, zero polynomial = empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        TPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        TPoly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Number of trailing zero coefficients (power of `t` dividing self);
    /// 0 for the zero polynomial.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// `self == c * t^k` for a single term.
    pub fn as_monomial(&self) -> Option<(BigInt, usize)> {
        let nonzero: Vec<usize> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        match nonzero.as_slice() {
            [k] => Some((self.coeffs[*k].clone(), *k)),
            _ => None,
        }
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        TPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(out)
    }

    pub fn mul_int(&self, c: &BigInt) -> TPoly {
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shl(&self, k: usize) -> TPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TPoly { coeffs }
    }

    /// Divide by `t^k`; requires valuation >= k.
    pub fn shr(&self, k: usize) -> TPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        debug_assert!(self.valuation() >= k);
        TPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Gcd of the coefficients (non-negative); 0 for the zero polynomial.
    /// Stops early once the running gcd reaches 1.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &BigInt) -> TPoly {
        debug_assert!(!c.is_zero());
        TPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        }
    }

    pub fn primitive_part(&self) -> TPoly {
        if self.is_zero() {
            return TPoly::zero();
        }
        let c = self.content();
        self.div_int_exact(&c)
    }

    fn normalize_sign(self) -> TPoly {
        if self.lc().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Exact division; panics in debug builds if the division leaves a
    /// remainder or a non-integer quotient coefficient. Callers divide by
    /// known divisors (gcds), where exactness is guaranteed.
    pub fn exact_div(&self, d: &TPoly) -> TPoly {
        debug_assert!(!d.is_zero());
        if self.is_zero() {
            return TPoly::zero();
        }
        if d.is_one() {
            return self.clone();
        }
        if let Some((c, k)) = d.as_monomial() {
            return self.shr(k).div_int_exact(&c);
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        debug_assert!(self.degree() >= dd);
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        let lcd = d.lc();
        for k in (0..quot.len()).rev() {
            let top = mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lcd);
            debug_assert!(r.is_zero(), "inexact TPoly division");
            for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                rem[k + j] -= &qc * dc;
            }
            quot[k] = qc;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact TPoly division");
        TPoly::from_coeffs(quot)
    }

    /// Pseudo-remainder: an associate of `self mod d` obtained by scaling
    /// by powers of `lc(d)` instead of dividing, so everything stays in
    /// `Z[t]`.
    fn pseudo_rem(&self, d: &TPoly) -> TPoly {
        debug_assert!(!d.is_zero());
        let dd = d.degree();
        if dd == 0 {
            return TPoly::zero();
        }
        let lcd = d.lc();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let lr = r.lc();
            r = r.mul_int(&lcd).sub(&d.mul_int(&lr).shl(k));
        }
        r
    }

    /// Full gcd in `Z[t]`: integer content gcd times the primitive
    /// polynomial gcd, leading coefficient positive.
    pub fn gcd(a: &TPoly, b: &TPoly) -> TPoly {
        if a.is_zero() {
            return b.clone().normalize_sign();
        }
        if b.is_zero() {
            return a.clone().normalize_sign();
        }
        let c = a.content().gcd(&b.content());
        let va = a.valuation();
        let vb = b.valuation();
        let v = va.min(vb);
        let pa = a.shr(va).primitive_part();
        let pb = b.shr(vb).primitive_part();
        let gp = if pa.is_constant() || pb.is_constant() {
            TPoly::one()
        } else {
            TPoly::primitive_gcd(pa, pb)
        };
        gp.shl(v).mul_int(&c)
    }

    /// Primitive PRS on two primitive, non-constant polynomials.
    fn primitive_gcd(mut f: TPoly, mut g: TPoly) -> TPoly {
        if f.degree() < g.degree() {
            mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            if g.is_constant() {
                // primitive constant = unit
                return TPoly::one();
            }
            let r = f.pseudo_rem(&g).primitive_part();
            f = g;
            g = r;
        }
        f.normalize_sign()
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, t0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t0 + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// More than one term, or any `t` at all: used by the scalar printer
    /// to decide parenthesization.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> TPoly {
        TPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_with_common_factor() {
        // (t^2 - 1) and (t - 1) share (t - 1)
        let g = TPoly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime() {
        let g = TPoly::gcd(&p(&[1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(g, p(&[1]));
    }

    #[test]
    fn gcd_contents_and_valuation() {
        // gcd(6t^2(t+1), 4t^3) = 2 t^2
        let a = p(&[0, 0, 6, 6]);
        let b = p(&[0, 0, 0, 4]);
        assert_eq!(TPoly::gcd(&a, &b), p(&[0, 0, 2]));
    }

    #[test]
    fn gcd_sign_normalized() {
        let g = TPoly::gcd(&p(&[1, -1]), &p(&[-1, 0, 1]));
        assert!(g.lc() > BigInt::zero());
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn exact_div_round_trip() {
        let a = p(&[2, 3, -1, 4]);
        let b = p(&[-1, 2, 5]);
        assert_eq!(a.mul(&b).exact_div(&b), a);
    }

    #[test]
    fn pseudo_rem_degree_drops() {
        let a = p(&[1, 1, 1, 1, 1]);
        let b = p(&[3, 0, 2]);
        let r = a.pseudo_rem(&b);
        assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(alloc::format!("{}", p(&[1, 0, -3])), "-3*t^2 + 1");
        assert_eq!(alloc::format!("{}", p(&[0, 2])), "2*t");
        assert_eq!(alloc::format!("{}", p(&[0, 0, 1])), "t^2");
        assert_eq!(alloc::format!("{}", p(&[-5])), "-5");
        assert_eq!(alloc::format!("{}", TPoly::zero()), "0");
    }
}
