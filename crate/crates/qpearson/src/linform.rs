//! Linear forms on polynomials as truncated moment sequences.
//!
//! A form is the vector `u_0..u_N` of its moments `<u, x^n>` together with
//! the valid degree `N`. Every operation tracks the exact valid degree of
//! its output (`f u`: `N - deg f`; `D_q u`: `N + 1` since `D_q` drops
//! degree; `S_q u`: `N`; `(x-c)^{-1} u`: `N + 1`), and evaluation past the
//! valid degree is rejected, never silently truncated. This truncated
//! duality is the computable surrogate for the weak-dual expansions the
//! operator calculus rests on.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::awops;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Mode, QContext, Scalar};

/// Truncated moment functional; invariant: at least one moment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    moments: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(moments: Vec<Scalar>) -> Result<LinearForm> {
        if moments.is_empty() {
            return Err(Error::Precondition {
                msg: alloc::string::String::from("a linear form needs at least the moment u_0"),
            });
        }
        Ok(LinearForm { moments })
    }

    pub fn valid_degree(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn mode(&self) -> Mode {
        self.moments[0].mode()
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.moments
    }

    pub fn moment(&self, n: usize) -> Result<&Scalar> {
        self.moments.get(n).ok_or(Error::DepthExceeded {
            needed: n,
            have: self.valid_degree(),
        })
    }

    /// `<u, f> = sum f_k u_k`; requires `deg f <= valid_degree`.
    pub fn apply(&self, f: &Poly) -> Result<Scalar> {
        if f.deg0() > self.valid_degree() && !f.is_zero() {
            return Err(Error::DepthExceeded {
                needed: f.deg0(),
                have: self.valid_degree(),
            });
        }
        let mut acc = Scalar::int(self.mode(), 0);
        for (k, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &self.moments[k]);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Scalar) -> LinearForm {
        LinearForm {
            moments: self.moments.iter().map(|m| m * c).collect(),
        }
    }

    /// Pointwise sum over the common valid range.
    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let n = self.moments.len().min(other.moments.len());
        LinearForm {
            moments: (0..n)
                .map(|i| &self.moments[i] + &other.moments[i])
                .collect(),
        }
    }

    /// Pointwise difference over the common valid range.
    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        let n = self.moments.len().min(other.moments.len());
        LinearForm {
            moments: (0..n)
                .map(|i| &self.moments[i] - &other.moments[i])
                .collect(),
        }
    }

    /// First index in the common valid range where the moments differ.
    pub fn first_disagreement(&self, other: &LinearForm) -> Option<usize> {
        let n = self.moments.len().min(other.moments.len());
        (0..n).find(|&i| self.moments[i] != other.moments[i])
    }

    pub fn truncate(&self, valid_degree: usize) -> LinearForm {
        let n = (valid_degree + 1).min(self.moments.len());
        LinearForm {
            moments: self.moments[..n].to_vec(),
        }
    }

    pub fn specialize(&self, t0: &BigRational) -> Result<LinearForm> {
        Ok(LinearForm {
            moments: self
                .moments
                .iter()
                .map(|m| m.specialize(t0))
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

/// Left multiplication `f u`: `<f u, x^n> = <u, f x^n>`; output valid to
/// `N - deg f`.
pub fn mul_poly(f: &Poly, u: &LinearForm) -> Result<LinearForm> {
    let n = u.valid_degree();
    let d = f.deg0();
    if f.is_zero() || d > n {
        if f.is_zero() {
            // zero polynomial: the zero form, full depth
            return LinearForm::new(alloc::vec![Scalar::int(u.mode(), 0); n + 1]);
        }
        return Err(Error::DepthExceeded { needed: d, have: n });
    }
    let mut out = Vec::with_capacity(n - d + 1);
    for k in 0..=(n - d) {
        let mut acc = Scalar::int(u.mode(), 0);
        for (j, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &u.moments[k + j]);
            }
        }
        out.push(acc);
    }
    LinearForm::new(out)
}

/// Division by `x - c`: `<(x-c)^{-1} u, f> = <u, (f(x) - f(c))/(x - c)>`.
/// Moments satisfy `v_{n+1} = c v_n + u_n` with `v_0 = 0`; valid to `N + 1`.
pub fn div_linear(c: &Scalar, u: &LinearForm) -> LinearForm {
    let mut out = Vec::with_capacity(u.moments.len() + 1);
    out.push(Scalar::int(u.mode(), 0));
    for n in 0..u.moments.len() {
        let prev = &out[n];
        out.push(&(c * prev) + &u.moments[n]);
    }
    LinearForm { moments: out }
}

/// Evaluation form `delta_c`: moments `c^n`, `n <= depth`.
pub fn delta(c: &Scalar, depth: usize) -> LinearForm {
    let mut out = Vec::with_capacity(depth + 1);
    let mut p = Scalar::int(c.mode(), 1);
    out.push(p.clone());
    for _ in 0..depth {
        p = &p * c;
        out.push(p.clone());
    }
    LinearForm { moments: out }
}

/// Transposed operator: `<D_q u, f> = -<u, D_q f>`. Valid to `N + 1`.
pub fn dq_form(u: &LinearForm, ctx: &QContext) -> LinearForm {
    debug_assert_eq!(u.mode(), ctx.mode());
    let n = u.valid_degree();
    let one = ctx.int(1);
    let mut out = Vec::with_capacity(n + 2);
    for k in 0..=(n + 1) {
        let img = awops::dq(&Poly::monomial(one.clone(), k), ctx);
        out.push(-&u.apply(&img).expect("deg D_q x^k = k - 1 <= N"));
    }
    LinearForm { moments: out }
}

/// Transposed operator: `<S_q u, f> = <u, S_q f>`. Valid to `N`.
pub fn sq_form(u: &LinearForm, ctx: &QContext) -> LinearForm {
    debug_assert_eq!(u.mode(), ctx.mode());
    let n = u.valid_degree();
    let one = ctx.int(1);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let img = awops::sq(&Poly::monomial(one.clone(), k), ctx);
        out.push(u.apply(&img).expect("deg S_q x^k = k <= N"));
    }
    LinearForm { moments: out }
}
