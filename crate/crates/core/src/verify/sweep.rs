//! Random lifts of table rows checked against Tate's algorithm and the j-disks.

use crate::arith::{int, qbig, Rational};
use crate::elliptic::tate_algorithm;
use crate::frey::{frey_model, TableRow};
use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub line: u8,
    pub a_classes: Vec<i64>,
    pub b_class: i64,
    pub samples: usize,
    pub conductor_misses: usize,
    pub disk_misses: usize,
    pub first_disk_miss: Option<(BigInt, BigInt)>,
    pub first_conductor_miss: Option<(BigInt, BigInt, i64)>,
}

/// Square root of `t` modulo `ell^n`, for `t` a unit square (`t = 1 mod 8` when `ell = 2`).
fn sqrt_mod(t: &BigInt, ell: u64, n: u32) -> BigInt {
    let m = Pow::pow(&int(ell as i64), n);
    let t = t.mod_floor(&m);
    if ell == 2 {
        let mut r = BigInt::one();
        for i in 3..n {
            let check = Pow::pow(&int(2), i + 1);
            if !(&r * &r - &t).mod_floor(&check).is_zero() {
                r += Pow::pow(&int(2), i - 1);
            }
        }
        return r.mod_floor(&m);
    }
    let e = int(ell as i64);
    let mut r = (1..ell as i64).map(int).find(|x| (x * x - &t).mod_floor(&e).is_zero()).expect("square residue");
    let mut k = 1;
    while k < n {
        // Newton step doubles the number of correct digits
        k = (2 * k).min(n);
        let mk = Pow::pow(&e, k);
        let inv = (int(2) * &r).modinv(&mk).expect("unit");
        r = (&r - (&r * &r - &t) * inv).mod_floor(&mk);
    }
    r
}

fn random_in_class(rng: &mut ChaCha8Rng, class: i64, modulus: i64, bits: u64) -> BigInt {
    let k = rng.gen_bigint(bits);
    k * modulus + class.rem_euclid(modulus)
}

/// A coprime pair in the row with `a^2 + b^3 != 0`; for the first line the
/// valuation of `a^2 + b^3` is made a positive multiple of `p`.
fn sample(rng: &mut ChaCha8Rng, row: &TableRow, p: u32) -> (BigInt, BigInt) {
    loop {
        let ac = row.a_classes[rng.gen_range(0..row.a_classes.len())];
        let b = random_in_class(rng, row.b_class, row.b_modulus, 40);
        let a = if row.line == 1 {
            let k: u32 = rng.gen_range(1..=2);
            let n = p * k + 12;
            let ell = int(row.ell as i64);
            let m = Pow::pow(&ell, n);
            let mut u = rng.gen_bigint(20);
            while (&u % &ell).is_zero() {
                u += 1;
            }
            let target = Pow::pow(&ell, p * k) * u - &b * &b * &b;
            let r = sqrt_mod(&target, row.ell, n);
            let want = ac.rem_euclid(row.a_modulus);
            let r = if r.mod_floor(&int(row.a_modulus)) == int(want) { r } else { (-r).mod_floor(&m) };
            r + m * rng.gen_bigint(20)
        } else {
            random_in_class(rng, ac, row.a_modulus, 40)
        };
        let s = &a * &a + &b * &b * &b;
        if s.is_zero() || !a.gcd(&b).is_one() {
            continue;
        }
        debug_assert!(row.matches(&a, &b));
        return (a, b);
    }
}

fn frey_j(a: &BigInt, b: &BigInt) -> Rational {
    let b3 = b * b * b;
    qbig(int(1728) * &b3) / qbig(a * a + b3)
}

/// Check `samples` random lifts of every possible row against Tate's algorithm
/// on each admissible twist and against the row's j-disk.
pub fn sweep(rows: &[TableRow], rng: &mut ChaCha8Rng, samples: usize) -> Vec<RowReport> {
    rows.iter()
        .filter(|r| !r.impossible)
        .map(|row| {
            let mut rep = RowReport {
                line: row.line,
                a_classes: row.a_classes.clone(),
                b_class: row.b_class,
                samples,
                conductor_misses: 0,
                disk_misses: 0,
                first_disk_miss: None,
                first_conductor_miss: None,
            };
            for i in 0..samples {
                let p = [11u32, 13, 17][i % 3];
                let (a, b) = sample(rng, row, p);
                let e = frey_model(&a, &b).expect("nonsingular");
                for &d in &row.d_set {
                    let t = e.quadratic_twist(d).expect("squarefree twist");
                    if tate_algorithm(&t, row.ell).conductor_exponent != row.v_n {
                        rep.conductor_misses += 1;
                        rep.first_conductor_miss.get_or_insert((a.clone(), b.clone(), d));
                    }
                }
                let j = frey_j(&a, &b);
                if !row.jdisk.with_exponent(p).contains(&j).expect("decidable") {
                    rep.disk_misses += 1;
                    rep.first_disk_miss.get_or_insert((a.clone(), b.clone()));
                }
            }
            rep
        })
        .collect()
}
