//! Small-height points on the two twists of the non-split Cartan curve at 11,
//! given by a pair of cubics that must simultaneously take square values.

use num_integer::{Integer, Roots};
use rayon::prelude::*;

use crate::arith::{q, Rational};
use crate::error::{GfeError, Result};

/// `4x^3 - 4x^2 - 28x + 41`, ascending.
pub const XNS_F1: [i64; 4] = [41, -28, -4, 4];
/// `4x^3 + 7x^2 - 6x + 19`, ascending.
pub const XNS_G: [i64; 4] = [19, -6, 7, 4];

fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = n.sqrt();
        r * r == n
    }
}

/// `v^4 c(u/v) = v * C(u, v)` for a cubic `c`.
fn homog(c: &[i64; 4], u: i128, v: i128) -> i128 {
    let cs = c.map(i128::from);
    v * (cs[3] * u * u * u + cs[2] * u * u * v + cs[1] * u * v * v + cs[0] * v * v * v)
}

/// Points `x = u/v` of height at most `height` with `f1(x)` and `m * g(x)` both
/// rational squares, where `m = 1` for `d = -1` and `m = 3` for `d = -3`.
/// `None` stands for the common point at infinity.  Output is sorted.
pub fn xns_twist_point_search(d: i64, height: u64) -> Result<Vec<Option<Rational>>> {
    let m: i128 = match d {
        -1 => 1,
        -3 => 3,
        _ => return Err(GfeError::PreconditionFailed(format!("d = {d}; only -1 and -3 occur"))),
    };
    if height == 0 {
        return Err(GfeError::PreconditionFailed("height must be at least 1".into()));
    }
    let h = height as i128;
    let mut found: Vec<Rational> = (1..=h)
        .into_par_iter()
        .flat_map_iter(|v| {
            (-h..=h).filter_map(move |u| {
                (u.gcd(&v) == 1 && is_square(homog(&XNS_F1, u, v)) && is_square(m * homog(&XNS_G, u, v)))
                    .then(|| q(u as i64, v as i64))
            })
        })
        .collect();
    found.sort();
    let mut out = vec![None];
    out.extend(found.into_iter().map(Some));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qi, rational_sqrt, QPoly};

    #[test]
    fn d_minus_one() {
        let pts = xns_twist_point_search(-1, 10).unwrap();
        assert!(pts.contains(&Some(q(5, 4))));
        let x = q(5, 4);
        assert_eq!(QPoly::from_i64s(&XNS_F1).eval(&x), q(121, 16));
        assert_eq!(QPoly::from_i64s(&XNS_G).eval(&x), q(121, 4));
    }

    #[test]
    fn d_minus_three() {
        let pts = xns_twist_point_search(-3, 10).unwrap();
        assert!(pts.contains(&Some(qi(4))) && pts.contains(&Some(qi(-2))));
        for x in [qi(4), qi(-2)] {
            assert!(rational_sqrt(&QPoly::from_i64s(&XNS_F1).eval(&x)).is_some());
            assert!(rational_sqrt(&(qi(3) * QPoly::from_i64s(&XNS_G).eval(&x))).is_some());
        }
    }

    #[test]
    fn results_are_genuine() {
        for d in [-1, -3] {
            let m = if d == -1 { qi(1) } else { qi(3) };
            for x in xns_twist_point_search(d, 60).unwrap().into_iter().flatten() {
                assert!(rational_sqrt(&QPoly::from_i64s(&XNS_F1).eval(&x)).is_some());
                assert!(rational_sqrt(&(&m * QPoly::from_i64s(&XNS_G).eval(&x))).is_some());
            }
        }
        assert!(xns_twist_point_search(2, 10).is_err());
    }
}
