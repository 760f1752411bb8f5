use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, qbig, qi, Rational};
use crate::elliptic::WeierstrassModel;
use crate::error::{GfeError, Result};

/// `y^2 = x^3 + 3b x - 2a`, with `c4 = -144 b`, `c6 = 1728 a`, `disc = -1728 (a^2 + b^3)`.
pub fn frey_model(a: &BigInt, b: &BigInt) -> Result<WeierstrassModel> {
    let z = Rational::zero();
    WeierstrassModel::new([z.clone(), z.clone(), z, qbig(3 * b), qbig(-2 * a)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SolutionKind {
    Trivial,
    Catalan,
    NonTrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionTriple {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub p: u32,
}

impl SolutionTriple {
    pub fn new(a: i64, b: i64, c: i64, p: u32) -> Self {
        SolutionTriple { a: int(a), b: int(b), c: int(c), p }
    }

    pub fn holds(&self) -> bool {
        &self.a * &self.a + &self.b * &self.b * &self.b == Pow::pow(&self.c, self.p)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    pub fn kind(&self) -> SolutionKind {
        if self.a.is_zero() || self.b.is_zero() || self.c.is_zero() {
            SolutionKind::Trivial
        } else if self.a.abs() == int(3) && self.b == int(-2) && self.c.is_one() {
            SolutionKind::Catalan
        } else {
            SolutionKind::NonTrivial
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    B4Mod8,
    SixDividesC,
}

/// Local constraints every primitive solution with p >= 11 satisfies.
pub fn necessary_conditions(a: &BigInt, b: &BigInt, c: &BigInt, p: u32) -> Result<Vec<Violation>> {
    if p < 11 {
        return Err(GfeError::PreconditionFailed(format!("exponent {p} < 11")));
    }
    let _ = a;
    let mut out = Vec::new();
    if b.mod_floor(&int(8)) == int(4) {
        out.push(Violation::B4Mod8);
    }
    if !c.is_zero() && c.is_multiple_of(&int(6)) {
        out.push(Violation::SixDividesC);
    }
    Ok(out)
}

/// Exact `e`-th root of `n` (odd roots of negatives allowed), if one exists.
pub fn exact_root(n: &BigInt, e: u32) -> Option<BigInt> {
    if n.is_negative() {
        if e % 2 == 0 {
            return None;
        }
        return exact_root(&-n, e).map(|r| -r);
    }
    let r = n.nth_root(e);
    (Pow::pow(&r, e) == *n).then_some(r)
}

/// Coprime `(a, b, c)` with `j = (12b)^3 / c^p` and `12^3 - j = 12^3 a^2 / c^p`, with `a >= 0`.
pub fn good_j(j: &Rational, p: u32) -> Option<(BigInt, BigInt, BigInt)> {
    let r = j / qi(1728);
    // b^3 / c^p in lowest terms, denominator positive
    let (num, den) = (r.numer().clone(), r.denom().clone());
    for sign in [1i64, -1] {
        // c^p = sign * den, b^3 = sign * num
        let Some(c) = exact_root(&(&den * sign), p) else { continue };
        let Some(b) = exact_root(&(&num * sign), 3) else { continue };
        let a2 = &den * sign - &num * sign;
        if a2.is_negative() {
            continue;
        }
        let a = a2.sqrt();
        if &a * &a != a2 || !a.gcd(&b).gcd(&c).is_one() {
            continue;
        }
        return Some((a, b, c));
    }
    None
}

/// The identities listed as known solutions: `(a, b, c, n)` with `a^2 + b^3 = c^n`.
pub const KNOWN_IDENTITIES: [(i64, i64, i64, u32); 8] = [
    (13, 7, 2, 9),
    (71, -17, 2, 7),
    (21063928, -76271, 17, 7),
    (2213459, 1414, 65, 7),
    (15312283, 9262, 113, 7),
    (30042907, -96222, 43, 8),
    (1549034, -15613, -33, 8),
    (3, -2, 1, 7),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownCheck {
    pub triple: SolutionTriple,
    pub holds: bool,
    pub primitive: bool,
    pub kind: SolutionKind,
}

/// Check every listed identity exactly, plus the Catalan solution for several exponents.
pub fn verify_known_solutions() -> Vec<KnownCheck> {
    let mut out = Vec::new();
    for &(a, b, c, n) in &KNOWN_IDENTITIES {
        // -33^8 is written with the sign outside the power
        let t = if c < 0 && n % 2 == 0 {
            let t = SolutionTriple::new(a, b, -c, n);
            let holds = &t.a * &t.a + &t.b * &t.b * &t.b == -Pow::pow(&t.c, n);
            out.push(KnownCheck { primitive: t.is_primitive(), kind: t.kind(), holds, triple: SolutionTriple::new(a, b, c, n) });
            continue;
        } else {
            SolutionTriple::new(a, b, c, n)
        };
        out.push(KnownCheck { holds: t.holds(), primitive: t.is_primitive(), kind: t.kind(), triple: t });
    }
    for p in [11u32, 13, 17, 19, 23] {
        let t = SolutionTriple::new(3, -2, 1, p);
        out.push(KnownCheck { holds: t.holds(), primitive: t.is_primitive(), kind: t.kind(), triple: t });
    }
    out
}

/// All primitive solutions with `max(|a|, |b|) <= bound`, sorted by `(a, b)`.
///
/// For each `b` only the finitely many `c` with `|c^p - b^3| <= bound^2` can occur,
/// so the scan runs over `(b, c)` and tests `c^p - b^3` for being a square.
pub fn search_solutions(p: u32, bound: u64) -> Vec<SolutionTriple> {
    let bnd = bound as i128;
    let max_abs = bnd * bnd + bnd * bnd * bnd;
    let mut cmax: i128 = 0;
    while (cmax + 1).checked_pow(p).is_some_and(|v| v <= max_abs) {
        cmax += 1;
    }
    let powers: Vec<(i128, i128)> = (-cmax..=cmax).map(|c| (c, c.pow(p))).collect();
    let mut found: Vec<SolutionTriple> = (-bnd..=bnd)
        .into_par_iter()
        .flat_map_iter(|b| {
            let b3 = b * b * b;
            let mut local = Vec::new();
            for &(c, cp) in &powers {
                let a2 = cp - b3;
                if a2 < 0 || a2 > bnd * bnd {
                    continue;
                }
                let a = isqrt(a2);
                if a * a != a2 || gcd3(a, b, c) != 1 {
                    continue;
                }
                for s in if a == 0 { vec![0] } else { vec![-a, a] } {
                    local.push(SolutionTriple { a: int(s as i64), b: int(b as i64), c: int(c as i64), p });
                }
            }
            local
        })
        .collect();
    found.sort();
    found.dedup();
    found
}

/// Reference scan over every `(a, b)` with an exact p-th root test; slow, used as an oracle.
pub fn search_solutions_naive(p: u32, bound: u64) -> Vec<SolutionTriple> {
    let bnd = bound as i64;
    let mut out = Vec::new();
    for a in -bnd..=bnd {
        for b in -bnd..=bnd {
            let s = int(a) * int(a) + int(b) * int(b) * int(b);
            if let Some(c) = exact_root(&s, p) {
                let t = SolutionTriple { a: int(a), b: int(b), c, p };
                if t.is_primitive() {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out
}

fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    a.gcd(&b).gcd(&c)
}
