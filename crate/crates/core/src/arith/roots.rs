use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{pow_big, qi, rat_pow, val_int, Padic, PadicPoly, Poly, QPoly, Rational};
use crate::error::{GfeError, Result};

/// Whether a unit known modulo `ell^prec` is an `e`-th power in Z_ell.
///
/// By Hensel's lemma for `x^e - u` it suffices to solve modulo `ell^(2 v(e) + 1)`.
pub fn is_power_unit(u: &BigInt, prec: u32, e: u32, ell: u64) -> Result<bool> {
    let ve = val_int(&BigInt::from(e), ell).unwrap_or(0) as u32;
    let k = 2 * ve + 1;
    if prec < k {
        return Err(GfeError::InsufficientPrecision(format!(
            "need {k} digits to decide an {e}-th power class, have {prec}"
        )));
    }
    let m = pow_big(ell, k);
    let target = u.mod_floor(&m);
    let mut x = BigInt::one();
    while x < m {
        if !(&x % ell).is_zero() && x.modpow(&BigInt::from(e), &m) == target {
            return Ok(true);
        }
        x += 1;
    }
    Ok(false)
}

/// Newton iteration from `x0` under the condition `v(f(x0)) > 2 v(f'(x0))`.
pub fn hensel_lift(f: &PadicPoly, x0: &Padic) -> Result<Padic> {
    let df = f.derivative();
    let fx = f.eval(x0);
    let dfx = df.eval(x0);
    let vd = match dfx.valuation() {
        Ok(Some(v)) => v,
        _ => return Err(GfeError::HenselConditionFailed),
    };
    if fx.val_lower() <= 2 * vd {
        return Err(GfeError::HenselConditionFailed);
    }
    let mut x = x0.clone();
    for _ in 0..200 {
        let fx = f.eval(&x);
        if fx.is_zero_at_prec() {
            break;
        }
        let d = df.eval(&x);
        x = &x - &fx.checked_div(&d)?;
    }
    let fx = f.eval(&x);
    let d = df.eval(&x).valuation()?.ok_or(GfeError::HenselConditionFailed)?;
    let guaranteed = fx.val_lower().saturating_sub(d);
    Ok(match x.abs_prec() {
        Some(a) if a > guaranteed => x.truncate_abs(guaranteed),
        _ => x,
    })
}

/// `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &QPoly) -> QPoly {
    let g = f.gcd(&f.derivative());
    f.div_rem(&g).0.monic()
}

fn content_val(h: &Poly<BigInt>, ell: u64) -> i64 {
    h.coeffs().iter().filter_map(|c| val_int(c, ell)).min().unwrap_or(0)
}

fn divide_out(h: &Poly<BigInt>, ell: u64, k: i64) -> Poly<BigInt> {
    let d = pow_big(ell, k as u32);
    h.map(|c| c / &d)
}

fn zl_roots_rec(h: &Poly<BigInt>, ell: u64, prec: u32, depth: u32) -> Vec<Padic> {
    let l = BigInt::from(ell);
    let dh = h.derivative();
    let mut out = Vec::new();
    if depth > 4 * prec + 64 {
        return out;
    }
    for r in 0..ell {
        let rb = BigInt::from(r);
        if !h.eval(&rb).mod_floor(&l).is_zero() {
            continue;
        }
        if !dh.eval(&rb).mod_floor(&l).is_zero() {
            let hp = PadicPoly::from_qpoly(&h.to_q(), ell, prec);
            if let Ok(root) = hensel_lift(&hp, &Padic::from_i64(r as i64, ell, prec)) {
                out.push(root);
            }
            continue;
        }
        if h.eval(&rb).is_zero() {
            out.push(Padic::from_i64(r as i64, ell, prec));
        }
        let sub = Poly::new(vec![rb.clone(), l.clone()]);
        let hr = h.compose(&sub);
        let hr = divide_out(&hr, ell, content_val(&hr, ell));
        for y in zl_roots_rec(&hr, ell, prec, depth + 1) {
            if y.is_exact_zero() {
                continue;
            }
            let x = &Padic::from_i64(r as i64, ell, prec + 1) + &(&y * &Padic::from_i64(ell as i64, ell, prec + 1));
            out.push(x);
        }
    }
    out
}

/// Distinct roots in Z_ell of a polynomial over Q.
pub fn padic_roots_in_zl(f: &QPoly, ell: u64, prec: u32) -> Vec<Padic> {
    let h = squarefree_part(f).primitive_integer();
    let h = divide_out(&h, ell, content_val(&h, ell));
    let mut roots = zl_roots_rec(&h, ell, prec + 8, 0);
    roots.iter_mut().for_each(|r| *r = r.truncate_abs(prec as i64));
    roots
}

/// Distinct roots in Q_ell of a nonzero polynomial over Q.
pub fn padic_roots(f: &QPoly, ell: u64, prec: u32) -> Vec<Padic> {
    let sf = squarefree_part(f);
    let np = sf.newton_polygon(ell);
    let mut out = Vec::new();
    let mut g = sf.clone();
    if np.zero_roots > 0 {
        out.push(Padic::exact_zero(ell));
        g = Poly::new(g.coeffs()[np.zero_roots..].to_vec());
    }
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let np = g.newton_polygon(ell);
    let minv = np.root_valuations().into_iter().min().unwrap_or_else(|| qi(0));
    let k: i64 = if minv < qi(0) { (-minv).ceil().to_integer().try_into().unwrap() } else { 0 };
    // x = ell^-k y moves every root into Z_ell
    let scaled = g.compose(&Poly::new(vec![Rational::zero(), rat_pow(ell, -k)]));
    for y in padic_roots_in_zl(&scaled, ell, prec + k as u32) {
        if y.is_exact_zero() {
            continue;
        }
        let x = &y * &Padic::from_rational(&rat_pow(ell, -k), ell, prec + k as u32 + 8);
        out.push(x);
    }
    out
}
