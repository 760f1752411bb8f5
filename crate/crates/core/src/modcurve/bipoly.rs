//! Polynomials in two variables, stored as polynomials in `y` with
//! coefficients in `Q[x]` or `Q_l[x]`, plus truncated l-adic power series.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{Padic, PadicPoly, QPoly, Rational};

/// `sum_k F_k(x) y^k` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBiPoly {
    coeffs: Vec<QPoly>,
}

impl QBiPoly {
    pub fn new(mut coeffs: Vec<QPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QBiPoly { coeffs }
    }

    /// Coefficient of `y^k`.
    pub fn coeff(&self, k: usize) -> QPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.eval(x);
        }
        acc
    }

    pub fn to_padic(&self, ell: u64, prec: u32) -> PadicBiPoly {
        PadicBiPoly {
            ell,
            coeffs: self.coeffs.iter().map(|c| PadicPoly::from_qpoly(c, ell, prec).coeffs().to_vec()).collect(),
        }
    }
}

/// `sum_k F_k(x) y^k` over Q_l, `coeffs[k][i]` the coefficient of `x^i y^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicBiPoly {
    pub ell: u64,
    pub coeffs: Vec<Vec<Padic>>,
}

impl PadicBiPoly {
    /// Coefficient list of `F_k`, empty when absent.
    pub fn row(&self, k: usize) -> &[Padic] {
        self.coeffs.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn f(&self, i: usize, k: usize) -> Padic {
        self.row(k).get(i).cloned().unwrap_or_else(|| Padic::exact_zero(self.ell))
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Divide every coefficient by `c`.
    pub fn scale_inv(&self, c: &Padic) -> crate::Result<Self> {
        let inv = c.inv()?;
        Ok(PadicBiPoly {
            ell: self.ell,
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|a| a.mul_ref(&inv)).collect()).collect(),
        })
    }
}

/// Truncated power series `sum a_i t^i` with l-adic coefficients.
pub type Series = Vec<Padic>;

pub fn series_add(a: &[Padic], b: &[Padic], ell: u64) -> Series {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add_ref(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => Padic::exact_zero(ell),
        })
        .collect()
}

pub fn series_mul(a: &[Padic], b: &[Padic], n: usize, ell: u64) -> Series {
    let mut out = vec![Padic::exact_zero(ell); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_exact_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_exact_zero() {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
    }
    out
}

/// Inverse of a series with invertible constant term, to `n` terms.
pub fn series_inv(a: &[Padic], n: usize, ell: u64) -> crate::Result<Series> {
    let inv0 = a[0].inv()?;
    let mut out = vec![Padic::exact_zero(ell); n];
    if n == 0 {
        return Ok(out);
    }
    out[0] = inv0.clone();
    for k in 1..n {
        let mut s = Padic::exact_zero(ell);
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            s = s.add_ref(&a[j].mul_ref(&out[k - j]));
        }
        out[k] = s.mul_ref(&inv0).neg_ref();
    }
    Ok(out)
}

/// `p(t^e)` for a coefficient list `p`.
pub fn spread(p: &[Padic], e: usize, n: usize, ell: u64) -> Series {
    let mut out = vec![Padic::exact_zero(ell); n];
    for (i, c) in p.iter().enumerate() {
        if i * e < n {
            out[i * e] = c.clone();
        }
    }
    out
}

/// Minimum over coefficients of the lower valuation bound (`i64::MAX` if all vanish exactly).
pub fn series_val_lower(a: &[Padic]) -> i64 {
    a.iter().map(|c| c.val_lower()).min().unwrap_or(i64::MAX)
}
