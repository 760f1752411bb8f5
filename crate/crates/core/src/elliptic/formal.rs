use super::WeierstrassModel;
use crate::arith::{qi, QPoly, Rational};

/// `w = -1/y` as a power series in `t = -x/y`, to `n` terms.
///
/// Solved by fixed-point iteration of
/// `w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3`.
pub fn formal_w(m: &WeierstrassModel, n: usize) -> QPoly {
    let [a1, a2, a3, a4, a6] = m.a_invariants();
    let t = QPoly::x();
    let t2 = t.pow(2);
    let t3 = t.pow(3);
    let lin = t.scale(&a1) + t2.scale(&a2);
    let quad = QPoly::constant(a3) + t.scale(&a4);
    let mut w = t3.truncate(n);
    // each pass fixes at least one more coefficient
    for _ in 0..n {
        let w2 = w.mul_trunc(&w, n);
        let w3 = w2.mul_trunc(&w, n);
        let next = (&t3 + &lin.mul_trunc(&w, n)) + quad.mul_trunc(&w2, n) + w3.scale(&a6);
        let next = next.truncate(n);
        if next == w {
            break;
        }
        w = next;
    }
    w
}

/// Invariant differential `dx / (2y + a1 x + a3)` as `omega(t) dt`, to `n` terms.
pub fn invariant_differential(m: &WeierstrassModel, n: usize) -> QPoly {
    let [a1, _, a3, _, _] = m.a_invariants();
    // w = t^3 W with W(0) = 1; x = t^-2 V, y = -t^-3 V where V = 1/W
    let w = formal_w(m, n + 3);
    let big_w = QPoly::new(w.coeffs().iter().skip(3).cloned().collect());
    let v = big_w.series_inverse(n + 1);
    let t = QPoly::x();
    // t^3 dx/dt = -2V + t V',  t^3 (2y + a1 x + a3) = -2V + a1 t V + a3 t^3
    let num = v.scale(&qi(-2)) + t.mul_trunc(&v.derivative(), n + 1);
    let den = v.scale(&qi(-2)) + t.mul_trunc(&v, n + 1).scale(&a1) + t.pow(3).scale(&a3);
    num.mul_trunc(&den.truncate(n + 1).series_inverse(n), n)
}

/// Formal-group logarithm modulo `t^n`, with exact rational coefficients.
pub fn formal_log(m: &WeierstrassModel, n: usize) -> QPoly {
    assert!(n >= 2, "formal_log needs at least two terms");
    invariant_differential(m, n - 1).integrate().truncate(n)
}

/// Coefficients of `log` as a list indexed by the power of `t`.
pub fn formal_log_coeffs(m: &WeierstrassModel, n: usize) -> Vec<Rational> {
    let f = formal_log(m, n);
    (0..n).map(|i| f.coeff(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::arith::{q, Padic, PadicPoly};
    use crate::elliptic::{point_add, EllPoint};

    fn x011() -> WeierstrassModel {
        WeierstrassModel::from_ints([0, -1, 1, -10, -20]).unwrap()
    }

    #[test]
    fn x011_logarithm() {
        let want = [qi(0), qi(1), qi(0), q(-1, 3), q(1, 2), q(-19, 5), qi(-1), q(5, 7), q(-27, 2)];
        assert_eq!(formal_log_coeffs(&x011(), 9), want);
    }

    #[test]
    fn short_models_have_odd_logarithm() {
        let m = WeierstrassModel::from_ints([0, 0, 0, 1, 0]).unwrap();
        let l = formal_log(&m, 12);
        for i in (0..12).step_by(2) {
            assert!(l.coeff(i).is_zero(), "t^{i}");
        }
        assert_eq!(l.coeff(1), qi(1));
        // omega = 1 + 2 a4 t^4 + ... for y^2 = x^3 + a4 x + a6
        assert_eq!(l.coeff(5), q(2, 5));
    }

    #[test]
    fn w_satisfies_its_equation() {
        let m = WeierstrassModel::from_ints([1, -1, 1, -3, 3]).unwrap();
        let n = 15;
        let w = formal_w(&m, n);
        let [a1, a2, a3, a4, a6] = m.a_invariants();
        let t = QPoly::x();
        let w2 = w.mul_trunc(&w, n);
        let rhs = t.pow(3)
            + (t.scale(&a1) + t.pow(2).scale(&a2)).mul_trunc(&w, n)
            + (QPoly::constant(a3) + t.scale(&a4)).mul_trunc(&w2, n)
            + w2.mul_trunc(&w, n).scale(&a6);
        assert_eq!(rhs.truncate(n), w);
    }

    fn point_at(m: &WeierstrassModel, t: &Padic, n: usize, prec: u32) -> EllPoint<Padic> {
        let ell = t.ell();
        let w = PadicPoly::from_qpoly(&formal_w(m, n), ell, prec).eval(t);
        let x = t.checked_div(&w).unwrap();
        let y = -w.inv().unwrap();
        EllPoint::Affine(x, y)
    }

    #[test]
    fn logarithm_is_additive_on_the_formal_group() {
        let m = x011();
        let ell = 5;
        let prec = 60;
        let n = 70;
        let log = PadicPoly::from_qpoly(&formal_log(&m, n), ell, prec + 10);
        let t1 = Padic::from_rational(&qi(5), ell, prec);
        let t2 = Padic::from_rational(&qi(-15), ell, prec);
        let p1 = point_at(&m, &t1, n, prec);
        let p2 = point_at(&m, &t2, n, prec);
        for (a, b) in [(&p1, &p1), (&p1, &p2)] {
            let s = point_add(&m, a, b);
            let t_of = |p: &EllPoint<Padic>| match p {
                EllPoint::Affine(x, y) => -x.checked_div(y).unwrap(),
                EllPoint::Infinity => unreachable!(),
            };
            let lhs = log.eval(&t_of(&s));
            let rhs = log.eval(&t_of(a)) + log.eval(&t_of(b));
            let diff = lhs - rhs;
            assert!(diff.val_lower() >= 40, "difference {diff:?}");
        }
    }
}
