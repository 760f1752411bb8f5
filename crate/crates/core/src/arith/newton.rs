use serde::{Deserialize, Serialize};

use super::{qi, val_rat, Padic, QPoly, Rational};
use crate::error::{GfeError, Result};

/// Polynomial with truncated l-adic coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicPoly {
    ell: u64,
    coeffs: Vec<Padic>,
}

impl PadicPoly {
    pub fn new(ell: u64, mut coeffs: Vec<Padic>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        assert!(coeffs.iter().all(|c| c.ell() == ell));
        PadicPoly { ell, coeffs }
    }

    pub fn from_qpoly(f: &QPoly, ell: u64, prec: u32) -> Self {
        Self::new(ell, f.coeffs().iter().map(|c| Padic::from_rational(c, ell, prec)).collect())
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Padic) -> Padic {
        let mut acc = Padic::exact_zero(self.ell);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale_int(i as i64))
            .collect();
        Self::new(self.ell, cs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub slope: Rational,
    pub length: usize,
}

/// Lower convex hull of `(i, v(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    pub segments: Vec<Segment>,
    /// Multiplicity of the root 0 (number of vanishing low-order coefficients).
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Build from coefficient valuations; `None` marks an exactly zero coefficient.
    pub fn from_valuations(vals: &[Option<Rational>]) -> Self {
        let pts: Vec<(usize, Rational)> = vals
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.clone().map(|v| (i, v)))
            .collect();
        assert!(!pts.is_empty(), "zero polynomial has no Newton polygon");
        let zero_roots = pts[0].0;
        let mut hull: Vec<(usize, Rational)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let (i1, v1) = &hull[hull.len() - 2];
                let (i2, v2) = &hull[hull.len() - 1];
                // drop the middle point unless it lies strictly below the chord
                let lhs = (v2 - v1) * qi((p.0 - *i1) as i64);
                let rhs = (&p.1 - v1) * qi((*i2 - *i1) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                Segment { slope: (&w[1].1 - &w[0].1) / qi(len as i64), length: len }
            })
            .collect();
        NewtonPolygon { vertices: hull, segments, zero_roots }
    }

    /// Valuations of the nonzero roots with multiplicity (negated slopes).
    pub fn root_valuations(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for s in &self.segments {
            for _ in 0..s.length {
                out.push(-s.slope.clone());
            }
        }
        out.sort();
        out
    }

    pub fn degree_span(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

pub fn newton_polygon(f: &PadicPoly) -> Result<NewtonPolygon> {
    if f.coeffs.is_empty() {
        return Err(GfeError::PreconditionFailed("zero polynomial".into()));
    }
    let mut vals = Vec::with_capacity(f.coeffs.len());
    for c in &f.coeffs {
        vals.push(c.valuation()?.map(qi));
    }
    Ok(NewtonPolygon::from_valuations(&vals))
}

impl QPoly {
    /// Exact Newton polygon at `ell` (no precision loss).
    pub fn newton_polygon(&self, ell: u64) -> NewtonPolygon {
        let vals: Vec<Option<Rational>> = self.coeffs().iter().map(|c| val_rat(c, ell).map(qi)).collect();
        NewtonPolygon::from_valuations(&vals)
    }

    /// Exact Gauss valuation `min_i v(a_i) + i*rho`.
    pub fn gauss_valuation(&self, ell: u64, rho: &Rational) -> Rational {
        self.coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, c)| val_rat(c, ell).map(|v| qi(v) + rho * qi(i as i64)))
            .min()
            .expect("nonzero polynomial")
    }
}

/// `w_rho(f) = min_i (v(a_i) + i*rho)`.
pub fn gauss_valuation(f: &PadicPoly, rho: &Rational) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    let mut pending: Vec<Rational> = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        let shift = rho * qi(i as i64);
        match c.valuation() {
            Ok(None) => {}
            Ok(Some(v)) => {
                let w = qi(v) + shift;
                if best.as_ref().is_none_or(|b| &w < b) {
                    best = Some(w);
                }
            }
            Err(_) => pending.push(qi(c.val_lower()) + shift),
        }
    }
    let best = best.ok_or_else(|| GfeError::InsufficientPrecision("no coefficient has a known valuation".into()))?;
    if pending.iter().any(|lb| lb < &best) {
        return Err(GfeError::InsufficientPrecision("an undetermined coefficient may attain the minimum".into()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn pp(cs: &[i64], ell: u64) -> PadicPoly {
        PadicPoly::from_qpoly(&QPoly::from_i64s(cs), ell, 40)
    }

    #[test]
    fn single_slope_two_thirds() {
        let np = newton_polygon(&pp(&[-79, -40, -4, 4], 2)).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: q(2, 3), length: 3 }]);
        assert_eq!(np.root_valuations(), vec![q(-2, 3); 3]);
    }

    #[test]
    fn linear_and_zero_root() {
        let np = newton_polygon(&pp(&[-2, 1], 2)).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: q(-1, 1), length: 1 }]);
        let np = newton_polygon(&pp(&[0, -2, 1], 2)).unwrap();
        assert_eq!(np.zero_roots, 1);
        assert_eq!(np.root_valuations(), vec![q(1, 1)]);
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_valuation(&pp(&[2, 1], 2), &q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(gauss_valuation(&pp(&[2, 1], 2), &q(2, 1)).unwrap(), q(1, 1));
        assert_eq!(gauss_valuation(&pp(&[8, 2, 4], 2), &q(1, 2)).unwrap(), q(3, 2));
    }

    #[test]
    fn indeterminate_coefficient_is_reported() {
        let f = PadicPoly::new(2, vec![Padic::big_o(2, 3), Padic::from_i64(1, 2, 10)]);
        assert!(newton_polygon(&f).is_err());
        assert!(gauss_valuation(&f, &q(5, 1)).is_err());
        assert_eq!(gauss_valuation(&f, &q(1, 1)).unwrap(), q(1, 1));
    }
}
