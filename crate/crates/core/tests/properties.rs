use std::collections::BTreeSet;

use gfe_core::arith::{
    is_prime, q, qi, rat_pow, square_class, val_rat, Padic, Poly, QPoly, Rational, SquareClass,
};
use gfe_core::elliptic::{point_add, point_mul, EllPoint, WeierstrassModel};
use gfe_core::frey::{classify, classify_2adic, classify_3adic, good_j, search_solutions, CurveMatch};
use gfe_core::galois::{embed_h8, SubgroupGL2};
use gfe_core::modcurve::{
    branch_series, elliptic_log_2adic, local_solubility, local_solubility_bruteforce, KernelPoint, PadicBiPoly,
    QBiPoly,
};
use gfe_core::twist::{derive_twist_table, fine_table, same_plan, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

const PRIMES: [u64; 3] = [2, 3, 13];

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| q(n, d))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    proptest::collection::vec(-60i64..60, 1..=max_deg + 1)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| QPoly::from_i64s(&v))
}

fn padic(x: &Rational, ell: u64) -> Padic {
    Padic::from_rational(x, ell, 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn padic_ring_axioms(x in rational(), y in rational(), z in rational(), i in 0usize..3) {
        let ell = PRIMES[i];
        let (a, b, c) = (padic(&x, ell), padic(&y, ell), padic(&z, ell));
        prop_assert!(a.add_ref(&b).add_ref(&c).sub_ref(&a.add_ref(&b.add_ref(&c))).is_zero_at_prec());
        prop_assert!(a.mul_ref(&b.add_ref(&c)).sub_ref(&a.mul_ref(&b).add_ref(&a.mul_ref(&c))).is_zero_at_prec());
    }

    #[test]
    fn padic_round_trip(x in rational(), i in 0usize..3, n in 5u32..40) {
        let ell = PRIMES[i];
        let p = Padic::from_rational(&x, ell, n);
        let back = p.to_rational();
        if let Some(v) = val_rat(&x, ell) {
            let diff = &back - &x;
            prop_assert!(val_rat(&diff, ell).map_or(true, |d| d >= v + n as i64));
        }
    }

    #[test]
    fn newton_polygon_of_product(f in small_poly(5), g in small_poly(5), i in 0usize..3) {
        let ell = PRIMES[i];
        let (nf, ng, nfg) = (f.newton_polygon(ell), g.newton_polygon(ell), (&f * &g).newton_polygon(ell));
        let mut merged = nf.root_valuations();
        merged.extend(ng.root_valuations());
        merged.sort();
        prop_assert_eq!(nfg.root_valuations(), merged);
        prop_assert_eq!(nfg.zero_roots, nf.zero_roots + ng.zero_roots);
    }

    #[test]
    fn gauss_valuation_is_multiplicative(f in small_poly(5), g in small_poly(5), i in 0usize..3, r in -6i64..6) {
        let ell = PRIMES[i];
        let rho = q(r, 2);
        prop_assert_eq!(
            (&f * &g).gauss_valuation(ell, &rho),
            f.gauss_valuation(ell, &rho) + g.gauss_valuation(ell, &rho)
        );
    }

    #[test]
    fn square_class_product_rule(u in 1i64..10_000, v in 1i64..10_000, i in 0usize..6) {
        let p = [3u64, 5, 7, 11, 13, 101][i];
        let (su, sv, suv) = (square_class(u, p), square_class(v, p), square_class(u * v, p));
        if su != SquareClass::Zero && sv != SquareClass::Zero {
            prop_assert_eq!(suv == SquareClass::Square, su == sv);
        }
    }

    #[test]
    fn twist_preserves_j(a4 in -50i64..50, a6 in -50i64..50, d in -30i64..30) {
        prop_assume!(d != 0 && gfe_core::arith::squarefree(d));
        let Ok(m) = WeierstrassModel::from_ints([0, 0, 0, a4, a6]) else { return Ok(()) };
        prop_assert_eq!(m.quadratic_twist(d).unwrap().j_invariant(), m.j_invariant());
    }

    #[test]
    fn group_law_associative(a in -4i64..5, b in -4i64..5, c in -4i64..5) {
        // rank-one curve y^2 = x^3 - 2 with generator (3, 5)
        let m = WeierstrassModel::from_ints([0, 0, 0, 0, -2]).unwrap();
        let p = EllPoint::Affine(qi(3), qi(5));
        let (pa, pb, pc) = (point_mul(&m, a, &p), point_mul(&m, b, &p), point_mul(&m, c, &p));
        let lhs = point_add(&m, &point_add(&m, &pa, &pb), &pc);
        let rhs = point_add(&m, &pa, &point_add(&m, &pb, &pc));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, point_mul(&m, a + b + c, &p));
    }

    #[test]
    fn classification_is_total(a in -100_000i64..100_000, b in -100_000i64..100_000) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assume!(a.gcd(&b) == BigInt::from(1));
        prop_assume!(&a * &a + &b * &b * &b != BigInt::from(0));
        prop_assert!(classify_2adic(&a, &b).is_ok());
        prop_assert!(classify_3adic(&a, &b).is_ok());
    }

    #[test]
    fn search_is_symmetric(p in 3u32..12, bound in 1u64..300) {
        let sols = search_solutions(p, bound);
        let set: BTreeSet<_> = sols.iter().map(|s| (s.a.clone(), s.b.clone(), s.c.clone())).collect();
        for (a, b, c) in &set {
            prop_assert!(set.contains(&(-a, b.clone(), c.clone())));
        }
    }

    #[test]
    fn log_is_additive(u in 0i64..1_000_000, v in 2i64..6, n in 1i64..=8) {
        // t = 2^v (2u + 1)
        let t = Padic::from_rational(&(rat_pow(2, v) * qi(2 * u + 1)), 2, 60);
        let p = KernelPoint::from_t(t).unwrap();
        let lp = elliptic_log_2adic(&p, 40).unwrap();
        let lnp = elliptic_log_2adic(&p.mul(n).unwrap(), 40).unwrap();
        prop_assert!(lnp.sub_ref(&lp.scale_int(n)).val_lower() >= 35);
    }

    #[test]
    fn doubling_raises_filtration(u in 0i64..1_000_000, v in 1i64..8) {
        let t = Padic::from_rational(&(rat_pow(2, v) * qi(2 * u + 1)), 2, 60);
        let p = KernelPoint::from_t(t).unwrap();
        prop_assert_eq!(p.mul(2).unwrap().filtration(), Some(v + 1));
    }

    #[test]
    fn branch_round_trip(e in 1usize..=2, gamma in 0i64..50, extra in proptest::collection::vec(-20i64..20, 8)) {
        // F = y^e + f11 x y - gamma'^e x + f20 x^2 + f12 x y^2 + f03 y^3 with an e-th power c
        let g = 2 * gamma + 1;
        let c = g.pow(e as u32);
        let mut rows: Vec<Vec<i64>> = vec![vec![0, -c, extra[0], extra[1]], vec![0, extra[2], extra[3]], vec![0, extra[4]], vec![extra[5]]];
        rows[e] = rows[e].iter().enumerate().map(|(i, &x)| if i == 0 { 1 } else { x }).collect();
        if e == 2 {
            rows[1][0] = 0;
        }
        let f: PadicBiPoly = QBiPoly::new(rows.iter().map(|r| QPoly::from_i64s(r)).collect()).to_padic(2, 120);
        let r = branch_series(&f, e, &qi(2), 24).unwrap();
        prop_assert_eq!(r.series.len(), e);
        prop_assert!(r.symmetric);
        prop_assert!(r.residual_valuation.map_or(true, |v| v >= qi(50)));
    }

    #[test]
    fn solubility_matches_oracle(cs in proptest::collection::vec(-200i64..200, 7), i in 0usize..3) {
        let ell = PRIMES[i];
        let f = Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        prop_assume!(cs[6] != 0);
        if let Ok(o) = local_solubility_bruteforce(&f, ell) {
            prop_assert_eq!(local_solubility(&f, ell), o);
        }
    }
}

#[test]
fn searched_solutions_match_a_curve() {
    for p in [7u32, 11, 13] {
        for s in search_solutions(p, 5000) {
            if s.c == BigInt::from(0) {
                continue;
            }
            let c = classify(&s.a, &s.b).unwrap();
            if let Some(m) = c.curve {
                assert_ne!(m, CurveMatch::Incompatible, "{s:?}");
            }
        }
    }
}

#[test]
fn good_j_consistent_with_row_disk() {
    for p in [7u32, 11, 13] {
        for s in search_solutions(p, 5000) {
            if s.c == BigInt::from(0) {
                continue;
            }
            let j = Rational::from_integer(BigInt::from(1728) * &s.b * &s.b * &s.b)
                / Rational::from_integer(num_traits::pow(s.c.clone(), p as usize));
            let (a, b, _) = good_j(&j, p).unwrap_or_else(|| panic!("{s:?}"));
            if let Some(row) = classify_2adic(&a, &b).unwrap().row() {
                assert!(row.jdisk.with_exponent(p).contains(&j).unwrap(), "{s:?} {}", row.jdisk);
            }
        }
    }
}

#[test]
fn fine_table_cycles_are_positive() {
    for p in (3..200u64).filter(|&p| is_prime(p)) {
        let t = fine_table(2, p).unwrap();
        let s = |a, b| t.sign(a, b).unwrap();
        let product = [s("288a1", "864a1"), s("864a1", "864b1"), s("864b1", "288a1")]
            .iter()
            .filter(|&&x| x == Sign::Minus)
            .count();
        assert_eq!(product % 2, 0, "p = {p}");
    }
}

#[test]
fn plan_depends_on_p_mod_24() {
    let primes: Vec<u64> = (17..400u64).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        for &p2 in primes.iter().filter(|&&p2| p2 > p && p2 % 24 == p % 24) {
            assert!(same_plan(&derive_twist_table(p).unwrap(), &derive_twist_table(p2).unwrap()), "{p} vs {p2}");
        }
    }
}

#[test]
fn quaternion_census() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        let h: SubgroupGL2 = embed_h8(p).unwrap();
        let census: Vec<(u64, usize)> = h.order_census().into_iter().collect();
        assert_eq!(census, vec![(1, 1), (2, 1), (4, 6)]);
    }
}
