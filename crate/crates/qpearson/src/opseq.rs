//! Orthogonal polynomial sequences from three-term recurrences.
//!
//! A family is the coefficient lists `B_n`, `C_n` (with `C_0 = 0` and
//! `C_n != 0` checked at build) plus the cached monic polynomials
//! `P_{n+1} = (x - B_n) P_n - C_n P_{n-1}` and norms
//! `h_n = <u, P_n^2> = C_1 ... C_n` under the normalization `u_0 = 1`.
//! Moments come from iterating multiplication by `x` in the `P`-basis;
//! Gram-Schmidt against a moment vector recovers `(B_n, C_n)` as a
//! round-trip consistency check.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linform::LinearForm;
use crate::poly::Poly;
use crate::scalar::{Mode, Scalar};

/// A monic orthogonal family built to a fixed depth.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OPSFamily {
    name: String,
    b: Vec<Scalar>,
    c: Vec<Scalar>,
    p: Vec<Poly>,
    h: Vec<Scalar>,
}

impl OPSFamily {
    /// Build from `B_0..B_N` and `C_0..C_N` (`C_0` must be zero). Caches
    /// `P_0..P_{N+1}` and `h_0..h_N`; errors on any vanishing `C_n`,
    /// naming the offending index.
    pub fn build(name: impl Into<String>, b: Vec<Scalar>, c: Vec<Scalar>) -> Result<OPSFamily> {
        if b.is_empty() || b.len() != c.len() {
            return Err(Error::Precondition {
                msg: String::from("B and C must be nonempty lists of equal length"),
            });
        }
        if !c[0].is_zero() {
            return Err(Error::Precondition {
                msg: String::from("C_0 must be zero"),
            });
        }
        for (n, cn) in c.iter().enumerate().skip(1) {
            if cn.is_zero() {
                return Err(Error::ZeroRecurrenceCoefficient { n });
            }
        }
        let mode = b[0].mode();
        let n_max = b.len() - 1;
        let one = Scalar::int(mode, 1);
        let mut p = Vec::with_capacity(n_max + 2);
        p.push(Poly::constant(one.clone()));
        let mut h = Vec::with_capacity(n_max + 1);
        h.push(one.clone());
        for n in 0..=n_max {
            let x_minus_b = Poly::from_coeffs(alloc::vec![-&b[n], one.clone()]);
            let mut next = x_minus_b.mul(&p[n]);
            if n >= 1 {
                next = next.sub(&p[n - 1].scale(&c[n]));
            }
            p.push(next);
            if n >= 1 {
                let hn = &h[n - 1] * &c[n];
                h.push(hn);
            }
        }
        Ok(OPSFamily {
            name: name.into(),
            b,
            c,
            p,
            h,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.b[0].mode()
    }

    /// Depth of the coefficient lists: `B_n`, `C_n`, `h_n` exist for
    /// `n <= n_max()`; polynomials one further.
    pub fn n_max(&self) -> usize {
        self.b.len() - 1
    }

    /// `P_n`, cached up to `n_max() + 1`.
    pub fn p(&self, n: usize) -> &Poly {
        &self.p[n]
    }

    pub fn b_n(&self, n: usize) -> &Scalar {
        &self.b[n]
    }

    pub fn c_n(&self, n: usize) -> &Scalar {
        &self.c[n]
    }

    /// `h_n = C_1 C_2 ... C_n`, with `h_0 = 1`.
    pub fn h_n(&self, n: usize) -> &Scalar {
        &self.h[n]
    }

    /// Moments of the normalized form (`u_0 = 1`, `<u, P_k> = 0` for
    /// `k >= 1`): iterate `x . (P-basis vector of x^m)` through the
    /// recurrence and read off the `P_0` component. Requires
    /// `depth <= n_max()`.
    pub fn moments(&self, depth: usize) -> Result<LinearForm> {
        if depth > self.n_max() {
            return Err(Error::DepthExceeded {
                needed: depth,
                have: self.n_max(),
            });
        }
        let mode = self.mode();
        let zero = || Scalar::int(mode, 0);
        let mut out = Vec::with_capacity(depth + 1);
        // v[k] = coefficient of P_k in the expansion of x^m
        let mut v = alloc::vec![Scalar::int(mode, 1)];
        out.push(v[0].clone());
        for m in 1..=depth {
            let mut next = alloc::vec![zero(); m + 1];
            for (k, slot) in next.iter_mut().enumerate() {
                // x P_k = P_{k+1} + B_k P_k + C_k P_{k-1}
                let mut acc = zero();
                if k >= 1 {
                    acc = &acc + &v[k - 1];
                }
                if k < v.len() {
                    acc = &acc + &(&self.b[k] * &v[k]);
                }
                if k + 1 < v.len() {
                    acc = &acc + &(&self.c[k + 1] * &v[k + 1]);
                }
                *slot = acc;
            }
            out.push(next[0].clone());
            v = next;
        }
        LinearForm::new(out)
    }

    /// Exact expansion `f = sum v_k P_k` by repeated leading-term
    /// elimination; requires `deg f <= n_max() + 1`.
    pub fn expand_in_basis(&self, f: &Poly) -> Result<Vec<Scalar>> {
        let deg = f.deg0();
        if deg >= self.p.len() {
            return Err(Error::DepthExceeded {
                needed: deg,
                have: self.p.len() - 1,
            });
        }
        let mode = self.mode();
        let mut v = alloc::vec![Scalar::int(mode, 0); deg + 1];
        let mut rest = f.clone();
        while let Some(d) = rest.degree() {
            let lc = rest.lc().expect("nonzero").clone();
            rest = rest.sub(&self.p[d].scale(&lc));
            debug_assert!(rest.deg0() < d || rest.is_zero());
            v[d] = lc;
        }
        Ok(v)
    }
}

/// Gram-Schmidt recovery of `(B_n, C_n)` from moments, normalized to
/// `u_0 = 1` internally being unnecessary: ratios cancel any scale.
/// Requires `u` valid to `2 n_max + 1`; errors with the offending `n`
/// when a norm vanishes (form not regular to the requested depth).
pub fn recurrence_from_moments(
    u: &LinearForm,
    n_max: usize,
) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if u.valid_degree() < 2 * n_max + 1 {
        return Err(Error::DepthExceeded {
            needed: 2 * n_max + 1,
            have: u.valid_degree(),
        });
    }
    let mode = u.mode();
    let one = Scalar::int(mode, 1);
    let x = Poly::x(mode);
    let mut b = Vec::with_capacity(n_max + 1);
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(Scalar::int(mode, 0));
    let mut p_prev = Poly::zero();
    let mut p_cur = Poly::constant(one);
    let mut h_prev: Option<Scalar> = None;
    for n in 0..=n_max {
        let p2 = p_cur.mul(&p_cur);
        let hn = u.apply(&p2)?;
        if hn.is_zero() {
            return Err(Error::NotRegular { n });
        }
        let bn = u.apply(&x.mul(&p2))?.try_div(&hn)?;
        if let Some(hp) = &h_prev {
            c.push(hn.try_div(hp)?);
        }
        b.push(bn.clone());
        let next = Poly::from_coeffs(alloc::vec![-&bn, Scalar::int(mode, 1)])
            .mul(&p_cur)
            .sub(&p_prev.scale(&c[n]));
        p_prev = p_cur;
        p_cur = next;
        h_prev = Some(hn);
    }
    Ok((b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linform;
    use crate::scalar::QContext;

    /// B = 0, C_n = n/2: a small test family.
    fn simple_family(ctx: &QContext, n_max: usize) -> OPSFamily {
        let b = alloc::vec![ctx.int(0); n_max + 1];
        let c = (0..=n_max).map(|n| ctx.ratio(n as i64, 2)).collect();
        OPSFamily::build("simple", b, c).unwrap()
    }

    #[test]
    fn recurrence_shape() {
        let ctx = QContext::symbolic();
        let fam = simple_family(&ctx, 6);
        // P_1 = x, P_2 = x^2 - C_1
        assert_eq!(fam.p(1), &Poly::x(ctx.mode()));
        let expected = Poly::from_coeffs(alloc::vec![-&ctx.ratio(1, 2), ctx.int(0), ctx.int(1)]);
        assert_eq!(fam.p(2), &expected);
        for n in 0..=7 {
            assert_eq!(fam.p(n).degree(), if n == 0 { Some(0) } else { Some(n) });
            assert!(fam.p(n).is_monic());
        }
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        let ctx = QContext::symbolic();
        let b = alloc::vec![ctx.int(0); 4];
        let mut c: Vec<Scalar> = (0..4).map(|n| ctx.int(n)).collect();
        c[2] = ctx.int(0);
        assert_eq!(
            OPSFamily::build("bad", b, c).unwrap_err(),
            Error::ZeroRecurrenceCoefficient { n: 2 }
        );
    }

    #[test]
    fn moments_by_brute_force_expansion() {
        // Independent oracle: expand x^n in the P-basis via
        // expand_in_basis and read the P_0 coefficient.
        let ctx = QContext::symbolic();
        let fam = simple_family(&ctx, 8);
        let u = fam.moments(8).unwrap();
        assert!(u.moments()[0].is_one());
        assert!(u.moments()[1].is_zero(), "u_1 = B_0 = 0");
        for n in 0..=8usize {
            let xn = Poly::monomial(ctx.int(1), n);
            let v = fam.expand_in_basis(&xn).unwrap();
            assert_eq!(&u.moments()[n], &v[0], "moment {n}");
        }
        // frozen values from the oracle: u_2 = C_1, u_3 = 0,
        // u_4 = C_1 (C_1 + C_2)
        let c1 = fam.c_n(1).clone();
        let c2 = fam.c_n(2).clone();
        assert_eq!(u.moments()[2], c1);
        assert!(u.moments()[3].is_zero());
        assert_eq!(u.moments()[4], &c1 * &(&c1 + &c2));
    }

    #[test]
    fn orthogonality_and_norms() {
        let ctx = QContext::symbolic();
        let fam = simple_family(&ctx, 8);
        let u = fam.moments(8).unwrap();
        for n in 0..=4usize {
            for m in 0..=4usize {
                let val = u.apply(&fam.p(n).mul(fam.p(m))).unwrap();
                if n == m {
                    assert_eq!(&val, fam.h_n(n));
                } else {
                    assert!(val.is_zero(), "<u, P_{n} P_{m}> != 0");
                }
            }
        }
    }

    #[test]
    fn expand_in_basis_examples() {
        let ctx = QContext::symbolic();
        let fam = simple_family(&ctx, 6);
        let v = fam.expand_in_basis(fam.p(3)).unwrap();
        assert!(v[3].is_one());
        assert!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
        let x2 = Poly::monomial(ctx.int(1), 2);
        let v = fam.expand_in_basis(&x2).unwrap();
        assert!(v[2].is_one());
        assert_eq!(&v[0], fam.c_n(1));
    }

    #[test]
    fn moment_round_trip() {
        let ctx = QContext::symbolic();
        let fam = simple_family(&ctx, 9);
        let u = fam.moments(9).unwrap();
        let (b, c) = recurrence_from_moments(&u, 4).unwrap();
        for n in 0..=4usize {
            assert_eq!(&b[n], fam.b_n(n));
            assert_eq!(&c[n], fam.c_n(n));
        }
    }

    #[test]
    fn delta_is_not_regular() {
        let ctx = QContext::symbolic();
        let u = linform::delta(&ctx.int(3), 9);
        assert_eq!(
            recurrence_from_moments(&u, 4).unwrap_err(),
            Error::NotRegular { n: 1 }
        );
    }
}
