//! Which twists `X_E(p)`, `X_E^-(p)` survive the local arguments at 2 and 3.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, legendre};
use crate::elliptic::{reference_curve, tate_algorithm};
use crate::error::{GfeError, Result};
use crate::galois::{isogeny_symplectic_sign, ko_symplectic, maincrit2, maincrit3, SymplecticType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of(t: SymplecticType) -> Option<Sign> {
        match t {
            SymplecticType::Symplectic => Some(Sign::Plus),
            SymplecticType::AntiSymplectic => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleTag {
    IsogenyTwist(String),
    KO2,
    KO3,
    MainCrit2,
    MainCrit3,
    CMReduction,
    Fine2,
    Fine3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPlanEntry {
    pub label: String,
    pub signs: Vec<Sign>,
    pub provenance: Vec<RuleTag>,
}

/// The seven curves whose twists of `X(p)` can carry primitive solutions.
pub const SEVEN: [&str; 7] = ["27a1", "54a1", "96a1", "288a1", "864a1", "864b1", "864c1"];

const P: &[Sign] = &[Sign::Plus];
const M: &[Sign] = &[Sign::Minus];
const PM: &[Sign] = &[Sign::Plus, Sign::Minus];
const NO: &[Sign] = &[];

/// Surviving signs per curve (in the order of [`SEVEN`]) for each `p mod 24`.
const TABLE: [(u64, [&[Sign]; 7]); 8] = [
    (1, [NO, P, P, NO, P, P, P]),
    (5, [P, M, P, NO, PM, PM, PM]),
    (7, [NO, M, P, P, P, P, P]),
    (11, [P, P, P, PM, P, P, P]),
    (13, [NO, NO, M, NO, P, P, P]),
    (17, [P, P, NO, NO, P, P, P]),
    (19, [NO, P, M, PM, PM, PM, PM]),
    (23, [P, NO, NO, P, P, P, P]),
];

fn check_p(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(GfeError::CompositeP(p));
    }
    if p < 11 {
        return Err(GfeError::PreconditionFailed(format!("p = {p} < 11")));
    }
    Ok(())
}

/// Static twist list for `p`, read off by `p mod 24`.
pub fn twist_table(p: u64) -> Result<Vec<TwistPlanEntry>> {
    check_p(p)?;
    let (_, row) = TABLE.iter().find(|(r, _)| *r == p % 24).expect("primes > 3 are units mod 24");
    Ok(SEVEN
        .iter()
        .zip(row.iter())
        .filter(|(_, s)| !s.is_empty())
        .map(|(l, s)| TwistPlanEntry { label: l.to_string(), signs: s.to_vec(), provenance: Vec::new() })
        .collect())
}

fn conductor_exponent(label: &str, ell: u64) -> u32 {
    tate_algorithm(&reference_curve(label).expect("registry curve").model, ell).conductor_exponent
}

fn min_disc_valuation(label: &str, ell: u64) -> i64 {
    tate_algorithm(&reference_curve(label).expect("registry curve").model, ell).v_min_disc as i64
}

/// Valuations of the minimal discriminant of a Frey twist with multiplicative
/// reduction, modulo p: `2^-6 3^3 d^6 c^p` at 2 and `2^6 3^-3 c^p` at 3.
const FREY_MULT_VAL: [(u64, i64); 2] = [(2, -6), (3, -3)];

const TWIST_PARAMS: [i64; 7] = [-1, 2, -2, 3, -3, 6, -6];

/// Recompute the twist list from the local rules.
pub fn derive_twist_table(p: u64) -> Result<Vec<TwistPlanEntry>> {
    check_p(p)?;
    let l2 = legendre(2, p);
    let l3 = legendre(3, p);
    let mut out = Vec::new();
    for label in SEVEN {
        let rec = reference_curve(label)?;
        let mut signs = vec![Sign::Plus, Sign::Minus];
        let mut prov = Vec::new();
        // multiplicative reduction at 2 or 3 pins the sign through the discriminant valuations
        for (ell, frey_v) in FREY_MULT_VAL {
            let r = tate_algorithm(&rec.model, ell);
            if r.conductor_exponent == 1 {
                let t = ko_symplectic(frey_v, min_disc_valuation(label, ell), p)?;
                signs.retain(|&s| Some(s) == Sign::of(t));
                prov.push(if ell == 2 { RuleTag::KO2 } else { RuleTag::KO3 });
            }
        }
        // an isogeny of non-square degree to a quadratic twist identifies X^- with X^+
        for (nb, deg) in &rec.isogeny_edges {
            let other = reference_curve(nb)?.model;
            let is_twist = TWIST_PARAMS.iter().any(|&d| rec.model.quadratic_twist(d).is_ok_and(|t| t.is_isomorphic(&other)));
            if is_twist && isogeny_symplectic_sign(*deg as u64, p)? == SymplecticType::AntiSymplectic {
                signs.retain(|&s| s == Sign::Plus);
                prov.push(RuleTag::IsogenyTwist(nb.clone()));
            }
        }
        if conductor_exponent(label, 2) == 5 {
            if maincrit2(l2, None) == SymplecticType::Symplectic {
                signs.retain(|&s| s == Sign::Plus);
                prov.push(RuleTag::MainCrit2);
            } else if signs.contains(&Sign::Minus) {
                prov.push(RuleTag::Fine2);
            }
        }
        if conductor_exponent(label, 3) == 3 {
            if maincrit3(l3, None) == SymplecticType::Symplectic {
                signs.retain(|&s| s == Sign::Plus);
                prov.push(RuleTag::MainCrit3);
            } else if signs.contains(&Sign::Minus) {
                prov.push(RuleTag::Fine3);
            }
        }
        // a CM curve whose order splits at p forces a split Cartan image, hence CM Frey curves only
        if let Some(d) = rec.cm {
            if legendre(d, p) == 1 {
                signs.clear();
                prov.push(RuleTag::CMReduction);
            }
        }
        // X^- of a curve with a non-square-degree isogeny is X^+ of the neighbour
        if signs.contains(&Sign::Minus) && rec.cm.is_none() {
            for (nb, deg) in &rec.isogeny_edges {
                if legendre(*deg as i64, p) == -1 {
                    prov.push(RuleTag::IsogenyTwist(nb.clone()));
                }
            }
        }
        if !signs.is_empty() {
            out.push(TwistPlanEntry { label: label.to_string(), signs, provenance: prov });
        }
    }
    Ok(out)
}

/// Compare two plans on labels and signs only.
pub fn same_plan(a: &[TwistPlanEntry], b: &[TwistPlanEntry]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.label == y.label && x.signs == y.signs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedIsoTable {
    pub side: u64,
    pub entries: Vec<(String, String, Sign)>,
}

const FINE2: [(&str, &str, Sign); 4] = [
    ("96a1", "864c1", Sign::Plus),
    ("288a1", "864a1", Sign::Minus),
    ("288a1", "864b1", Sign::Plus),
    ("864a1", "864b1", Sign::Minus),
];

const FINE3: [(&str, &str, Sign); 4] = [
    ("27a1", "864c1", Sign::Plus),
    ("27a1", "864b1", Sign::Minus),
    ("864b1", "864c1", Sign::Minus),
    ("54a1", "864a1", Sign::Minus),
];

/// Local isomorphism types of the p-torsion over `Q_2` (side 2) or `Q_3` (side 3).
pub fn fine_table(side: u64, p: u64) -> Result<SignedIsoTable> {
    let (data, min_p) = match side {
        2 => (&FINE2, 3),
        3 => (&FINE3, 5),
        _ => return Err(GfeError::PreconditionFailed(format!("side must be 2 or 3, got {side}"))),
    };
    if !is_prime(p) {
        return Err(GfeError::CompositeP(p));
    }
    if p < min_p {
        return Err(GfeError::PreconditionFailed(format!("p = {p} < {min_p}")));
    }
    let all_plus = legendre(side as i64, p) == 1;
    let entries = data
        .iter()
        .map(|&(a, b, s)| (a.to_string(), b.to_string(), if all_plus { Sign::Plus } else { s }))
        .collect();
    Ok(SignedIsoTable { side, entries })
}

impl SignedIsoTable {
    pub fn sign(&self, a: &str, b: &str) -> Option<Sign> {
        self.entries
            .iter()
            .find(|(x, y, _)| (x == a && y == b) || (x == b && y == a))
            .map(|e| e.2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(plan: &[TwistPlanEntry]) -> Vec<(String, String)> {
        plan.iter()
            .map(|e| (e.label.clone(), e.signs.iter().map(|s| s.symbol()).collect::<String>()))
            .collect()
    }

    fn expect(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn static_rows() {
        assert_eq!(
            signs(&twist_table(23).unwrap()),
            expect(&[("27a1", "+"), ("288a1", "+"), ("864a1", "+"), ("864b1", "+"), ("864c1", "+")])
        );
        assert_eq!(
            signs(&twist_table(29).unwrap()),
            expect(&[("27a1", "+"), ("54a1", "-"), ("96a1", "+"), ("864a1", "+-"), ("864b1", "+-"), ("864c1", "+-")])
        );
        assert_eq!(signs(&twist_table(11).unwrap()).len(), 7);
        assert!(matches!(twist_table(15), Err(GfeError::CompositeP(15))));
    }

    #[test]
    fn derived_matches_static() {
        for p in (11..200).filter(|&p| is_prime(p)) {
            assert!(same_plan(&derive_twist_table(p).unwrap(), &twist_table(p).unwrap()), "p = {p}");
        }
    }

    #[test]
    fn provenance() {
        let d = derive_twist_table(11).unwrap();
        let e54 = d.iter().find(|e| e.label == "54a1").unwrap();
        assert!(e54.provenance.contains(&RuleTag::KO2));
        let d = derive_twist_table(13).unwrap();
        let e96 = d.iter().find(|e| e.label == "96a1").unwrap();
        assert!(e96.provenance.contains(&RuleTag::IsogenyTwist("96a2".into())));
        let d = derive_twist_table(31).unwrap();
        assert!(d.iter().all(|e| e.label != "27a1"));
        // 27a3 is the -3 twist of 27a1; 288a2 is only a quartic twist of 288a1
        let d = derive_twist_table(29).unwrap();
        assert!(d[0].provenance.contains(&RuleTag::IsogenyTwist("27a3".into())));
        let d = derive_twist_table(19).unwrap();
        let e288 = d.iter().find(|e| e.label == "288a1").unwrap();
        assert_eq!(e288.signs, vec![Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn fine_tables() {
        let t = fine_table(2, 11).unwrap();
        assert_eq!(t.sign("288a1", "864a1"), Some(Sign::Minus));
        assert_eq!(t.sign("864b1", "288a1"), Some(Sign::Plus));
        assert_eq!(t.sign("864a1", "864b1"), Some(Sign::Minus));
        let t = fine_table(3, 7).unwrap();
        assert_eq!(t.sign("27a1", "864b1"), Some(Sign::Minus));
        assert_eq!(t.sign("54a1", "864a1"), Some(Sign::Minus));
        assert!(fine_table(2, 7).unwrap().entries.iter().all(|e| e.2 == Sign::Plus));
    }
}
