use serde::{Deserialize, Serialize};

use super::{MatGL2, ENUMERATION_BOUND};
use crate::arith::{is_prime, legendre, mod_inverse, int, square_class, SquareClass};
use crate::error::{GfeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymplecticType {
    Symplectic,
    AntiSymplectic,
    /// Both kinds of isomorphism exist; only possible for an abelian image.
    Both,
    Undetermined,
}

impl SymplecticType {
    fn from_square(sq: bool) -> Self {
        if sq {
            SymplecticType::Symplectic
        } else {
            SymplecticType::AntiSymplectic
        }
    }
}

fn is_square_mod(x: i64, p: u64) -> bool {
    square_class(x, p) == SquareClass::Square
}

/// Type of the module map with matrix `m` in symplectic bases: symplectic iff det is a square.
pub fn symplectic_type_of_matrix(m: &MatGL2) -> SymplecticType {
    SymplecticType::from_square(is_square_mod(m.det() as i64, m.p))
}

/// Type of the isomorphism class containing `m` when the Galois image is `image`.
///
/// Other isomorphisms differ from `m` by an element of the centralizer of the
/// image; if that centralizer has non-square determinants the answer is `Both`.
pub fn iso_symplectic_type(m: &MatGL2, image: &[MatGL2]) -> Result<SymplecticType> {
    let p = m.p;
    if p > ENUMERATION_BOUND {
        return Err(GfeError::BruteForceBoundExceeded(p));
    }
    let mixed = MatGL2::all(p)
        .filter(|g| image.iter().all(|x| g.mul(x) == x.mul(g)))
        .any(|g| !is_square_mod(g.det() as i64, p));
    if mixed {
        let abelian = image.iter().all(|a| image.iter().all(|b| a.mul(b) == b.mul(a)));
        debug_assert!(abelian, "non-abelian image with non-scalar centralizer");
        return Ok(SymplecticType::Both);
    }
    Ok(symplectic_type_of_matrix(m))
}

/// Multiplicative-reduction criterion: symplectic iff `v_delta * v_delta2` is a square mod p.
pub fn ko_symplectic(v_delta: i64, v_delta2: i64, p: u64) -> Result<SymplecticType> {
    for v in [v_delta, v_delta2] {
        if v.rem_euclid(p as i64) == 0 {
            return Err(GfeError::PDividesValuation(v));
        }
    }
    let prod = (v_delta as i128 * v_delta2 as i128).rem_euclid(p as i128) as i64;
    Ok(SymplecticType::from_square(is_square_mod(prod, p)))
}

/// An isogeny of degree `n` prime to p scales the Weil pairing by n.
pub fn isogeny_symplectic_sign(n: u64, p: u64) -> Result<SymplecticType> {
    if n % p == 0 {
        return Err(GfeError::PreconditionFailed(format!("{p} divides the isogeny degree {n}")));
    }
    Ok(SymplecticType::from_square(legendre(n as i64, p) == 1))
}

/// Level-2 decision: symplectic if `(2/p) = 1`, otherwise same as the mod-3 type.
pub fn maincrit2(legendre_2: i32, mod3_symplectic: Option<bool>) -> SymplecticType {
    decide(legendre_2, mod3_symplectic)
}

/// Level-3 decision: symplectic if `(3/p) = 1`, otherwise same as the mod-5 type.
pub fn maincrit3(legendre_3: i32, mod5_symplectic: Option<bool>) -> SymplecticType {
    decide(legendre_3, mod5_symplectic)
}

fn decide(symbol: i32, small: Option<bool>) -> SymplecticType {
    match (symbol, small) {
        (1, _) => SymplecticType::Symplectic,
        (_, Some(b)) => SymplecticType::from_square(b),
        (_, None) => SymplecticType::Undetermined,
    }
}

/// Two Tate curves with `v(q_i) = e_i`, linked by `e2 = n e1 + p m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateParams {
    pub ell: u64,
    pub p: u64,
    pub e1: i64,
    pub e2: i64,
    pub n: u64,
    pub m: i64,
}

pub fn tate_module_matrix(ell: u64, p: u64, e1: i64, e2: i64) -> Result<TateParams> {
    let bad = |why: String| Err(GfeError::PreconditionFailed(why));
    if !is_prime(p) || !is_prime(ell) || ell == p {
        return bad(format!("need distinct primes, got ell={ell}, p={p}"));
    }
    if ell % p == 1 {
        return bad(format!("{ell} = 1 mod {p}"));
    }
    let pi = p as i64;
    if e1.rem_euclid(pi) == 0 || e2.rem_euclid(pi) == 0 {
        return bad(format!("{p} divides e1*e2"));
    }
    let inv = mod_inverse(&int(e1), &int(pi)).expect("e1 is a unit mod p");
    let inv: i64 = inv.try_into().expect("small");
    let n = (e2.rem_euclid(pi) * inv).rem_euclid(pi);
    let m = (e2 - n * e1) / pi;
    Ok(TateParams { ell, p, e1, e2, n: n as u64, m })
}

impl TateParams {
    pub fn intertwiner(&self) -> MatGL2 {
        MatGL2::diag(self.p, self.n as i64, 1).expect("n is a unit")
    }
}

/// Check `M A_1(r,s) = A_2(r,s) M` for every admissible action, where
/// `A_i(r,s) = [[r, e_i s], [0, 1]]` and `M = diag(n, 1)`.
pub fn tate_equivariance_check(t: &TateParams) -> bool {
    let p = t.p;
    let Some(m) = MatGL2::diag(p, t.n as i64, 1) else {
        return false;
    };
    (1..p).all(|r| {
        (0..p).all(|s| {
            let a1 = MatGL2::new(p, [r as i64, t.e1 * s as i64, 0, 1]).unwrap();
            let a2 = MatGL2::new(p, [r as i64, t.e2 * s as i64, 0, 1]).unwrap();
            m.mul(&a1) == a2.mul(&m)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{embed_h8, generate};

    #[test]
    fn matrix_types() {
        assert_eq!(symplectic_type_of_matrix(&MatGL2::identity(11)), SymplecticType::Symplectic);
        assert_eq!(symplectic_type_of_matrix(&MatGL2::diag(11, 2, 1).unwrap()), SymplecticType::AntiSymplectic);
        let n1 = MatGL2::new(7, [1, -1, 1, 1]).unwrap();
        assert_eq!(symplectic_type_of_matrix(&n1), SymplecticType::Symplectic);
    }

    #[test]
    fn ko_examples() {
        assert_eq!(ko_symplectic(3, -6, 11).unwrap(), SymplecticType::Symplectic);
        assert_eq!(ko_symplectic(3, -6, 7).unwrap(), SymplecticType::AntiSymplectic);
        assert_eq!(ko_symplectic(5, 5, 13).unwrap(), SymplecticType::Symplectic);
        assert!(matches!(ko_symplectic(22, 1, 11), Err(GfeError::PDividesValuation(22))));
    }

    #[test]
    fn isogeny_signs() {
        assert_eq!(isogeny_symplectic_sign(2, 11).unwrap(), SymplecticType::AntiSymplectic);
        assert_eq!(isogeny_symplectic_sign(3, 11).unwrap(), SymplecticType::Symplectic);
        assert_eq!(isogeny_symplectic_sign(1, 7).unwrap(), SymplecticType::Symplectic);
    }

    #[test]
    fn tate_examples() {
        let t = tate_module_matrix(2, 11, 3, 5).unwrap();
        assert_eq!((t.n, t.m), (9, -2));
        assert!(tate_equivariance_check(&t));
        let t = tate_module_matrix(3, 5, 2, 4).unwrap();
        assert_eq!((t.n, t.m), (2, 0));
        let t = tate_module_matrix(2, 7, 4, 4).unwrap();
        assert_eq!((t.n, t.m), (1, 0));
        assert!(tate_equivariance_check(&t));
        let bad = TateParams { n: 10, ..tate_module_matrix(2, 11, 3, 5).unwrap() };
        assert!(!tate_equivariance_check(&bad));
        assert!(tate_module_matrix(3, 2, 1, 1).is_err());
        assert!(tate_module_matrix(11, 5, 1, 2).is_err());
    }

    #[test]
    fn both_only_for_abelian_images() {
        let p = 7;
        let h = embed_h8(p).unwrap();
        let m = MatGL2::diag(p, 3, 1).unwrap();
        // the quaternion image has scalar centralizer, so the type is pinned by det
        assert_eq!(iso_symplectic_type(&m, &h.elements).unwrap(), SymplecticType::AntiSymplectic);
        let split = generate(p, &[MatGL2::diag(p, 3, 5).unwrap()]);
        assert_eq!(iso_symplectic_type(&m, &split).unwrap(), SymplecticType::Both);
    }

    #[test]
    fn decision_rules() {
        assert_eq!(maincrit2(1, Some(false)), SymplecticType::Symplectic);
        assert_eq!(maincrit2(-1, Some(false)), SymplecticType::AntiSymplectic);
        assert_eq!(maincrit3(-1, Some(true)), SymplecticType::Symplectic);
        assert_eq!(maincrit3(-1, None), SymplecticType::Undetermined);
    }
}
