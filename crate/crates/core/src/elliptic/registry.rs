use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::WeierstrassModel;
use crate::error::{GfeError, Result};

/// Unverified label for the inertial field of a curve at a prime.
pub type InertialTag = String;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub label: String,
    pub model: WeierstrassModel,
    pub isogeny_edges: Vec<(String, u32)>,
    pub cm: Option<i64>,
    pub inertial_class_tags: BTreeMap<u64, InertialTag>,
}

/// Compact JSON form: `{label, a: [a1..a6], edges, cm, tags}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub label: String,
    pub a: [i64; 5],
    pub edges: Vec<(String, u32)>,
    pub cm: Option<i64>,
    pub tags: BTreeMap<u64, String>,
}

const CURVES: &[(&str, [i64; 5])] = &[
    ("27a1", [0, 0, 1, 0, -7]),
    ("27a2", [0, 0, 1, -270, -1708]),
    ("27a3", [0, 0, 1, 0, 0]),
    ("27a4", [0, 0, 1, -30, 63]),
    ("54a1", [1, -1, 0, 12, 8]),
    ("54a2", [1, -1, 0, -123, -667]),
    ("54a3", [1, -1, 0, -3, 3]),
    ("96a1", [0, 1, 0, -2, 0]),
    ("96a2", [0, 1, 0, -17, -33]),
    ("96a3", [0, 1, 0, -32, 60]),
    ("96a4", [0, 1, 0, 8, 8]),
    ("288a1", [0, 0, 0, 3, 0]),
    ("288a2", [0, 0, 0, -12, 0]),
    ("864a1", [0, 0, 0, -3, 6]),
    ("864b1", [0, 0, 0, -24, 48]),
    ("864c1", [0, 0, 0, 24, -16]),
    ("121a1", [1, 1, 1, -30, -76]),
    ("121b1", [0, -1, 1, -7, 10]),
    ("121c1", [1, 1, 0, -2, -7]),
    ("121d1", [0, -1, 1, -40, -221]),
];

const EDGES: &[(&str, &str, u32)] = &[
    ("27a2", "27a1", 3),
    ("27a1", "27a3", 3),
    ("27a3", "27a4", 3),
    ("54a2", "54a1", 3),
    ("54a1", "54a3", 3),
    ("96a2", "96a1", 2),
    ("96a3", "96a1", 2),
    ("96a1", "96a4", 2),
    ("288a1", "288a2", 2),
];

const CM: &[(&str, i64)] = &[("27a1", -3), ("288a1", -4)];

/// Curves sharing an inertial field at 2 or 3 carry the same tag; isogenous
/// curves inherit the tag of their class.
const TAGS: &[(&str, u64, &str)] = &[
    ("96", 2, "L2_96"),
    ("864c", 2, "L2_96"),
    ("288", 2, "L2_288"),
    ("864a", 2, "L2_288"),
    ("864b", 2, "L2_288"),
    ("27", 3, "L3_27"),
    ("864b", 3, "L3_27"),
    ("864c", 3, "L3_27"),
    ("54", 3, "L3_54"),
    ("864a", 3, "L3_54"),
];

/// The seven curves whose mod p representations the Frey curve can match.
pub const SEVEN_CURVES: [&str; 7] = ["27a1", "54a1", "96a1", "288a1", "864a1", "864b1", "864c1"];

fn isogeny_class(label: &str) -> &str {
    label.trim_end_matches(|c: char| c.is_ascii_digit())
}

pub fn registry_labels() -> Vec<&'static str> {
    CURVES.iter().map(|(l, _)| *l).collect()
}

/// Conductor encoded in a Cremona label.
pub fn label_conductor(label: &str) -> Option<u64> {
    let digits: String = label.chars().take_while(|c| c.is_ascii_digit()).collect();
    digits.parse().ok()
}

fn entry(label: &str) -> Option<CurveEntry> {
    let &(lab, a) = CURVES.iter().find(|(l, _)| *l == label)?;
    let edges = EDGES
        .iter()
        .filter_map(|&(x, y, d)| match (x == lab, y == lab) {
            (true, _) => Some((y.to_string(), d)),
            (_, true) => Some((x.to_string(), d)),
            _ => None,
        })
        .collect();
    let cm = CM.iter().find(|(l, _)| *l == lab).map(|&(_, d)| d);
    let class = isogeny_class(lab);
    let tags = TAGS.iter().filter(|(c, _, _)| *c == class).map(|&(_, p, t)| (p, t.to_string())).collect();
    Some(CurveEntry { label: lab.to_string(), a, edges, cm, tags })
}

impl CurveEntry {
    pub fn to_record(&self) -> Result<CurveRecord> {
        Ok(CurveRecord {
            label: self.label.clone(),
            model: WeierstrassModel::from_ints(self.a)?,
            isogeny_edges: self.edges.clone(),
            cm: self.cm,
            inertial_class_tags: self.tags.clone(),
        })
    }
}

pub fn reference_curve(label: &str) -> Result<CurveRecord> {
    entry(label).ok_or_else(|| GfeError::UnknownLabel(label.to_string()))?.to_record()
}

pub fn registry_entries() -> Vec<CurveEntry> {
    CURVES.iter().filter_map(|(l, _)| entry(l)).collect()
}

pub fn registry_to_json() -> String {
    serde_json::to_string_pretty(&registry_entries()).expect("registry serializes")
}

pub fn registry_from_json(s: &str) -> Result<Vec<CurveEntry>> {
    serde_json::from_str(s).map_err(|e| GfeError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, qi};
    use crate::elliptic::tate_algorithm;

    #[test]
    fn conductors_match_labels() {
        for label in registry_labels() {
            let rec = reference_curve(label).unwrap();
            assert!(rec.model.is_integral());
            let disc = rec.model.invariants().disc;
            let mut n: u64 = 1;
            for p in (2..200u64).filter(|&p| is_prime(p)) {
                let f = tate_algorithm(&rec.model, p).conductor_exponent;
                if f > 0 {
                    assert!(crate::arith::val_rat(&disc, p).unwrap() > 0);
                }
                n *= p.pow(f);
            }
            assert_eq!(Some(n), label_conductor(label), "{label}");
        }
    }

    #[test]
    fn lookups() {
        let r = reference_curve("54a1").unwrap();
        assert_eq!(r.model.a_invariants(), [1, -1, 0, 12, 8].map(qi));
        assert_eq!(reference_curve("27a1").unwrap().cm, Some(-3));
        assert_eq!(reference_curve("288a1").unwrap().cm, Some(-4));
        let mut e = reference_curve("96a1").unwrap().isogeny_edges;
        e.sort();
        assert_eq!(e, vec![("96a2".into(), 2), ("96a3".into(), 2), ("96a4".into(), 2)]);
        assert!(reference_curve("864a1").unwrap().isogeny_edges.is_empty());
        assert!(matches!(reference_curve("11a1"), Err(GfeError::UnknownLabel(_))));
    }

    #[test]
    fn isogenous_curves_share_j_behaviour() {
        // CM curves in an isogeny class of degree-3 edges: 27a3 has j = 0 too
        assert_eq!(reference_curve("27a3").unwrap().model.j_invariant(), qi(0));
        assert_eq!(reference_curve("288a2").unwrap().model.j_invariant(), qi(1728));
    }

    #[test]
    fn json_round_trip() {
        let s = registry_to_json();
        let back = registry_from_json(&s).unwrap();
        assert_eq!(back, registry_entries());
        assert_eq!(back.len(), 20);
    }
}
