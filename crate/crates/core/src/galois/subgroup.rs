use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MatGL2;
use crate::arith::{is_prime, square_class, SquareClass};
use crate::error::{GfeError, Result};

/// Largest p for which GL_2(F_p) is enumerated exhaustively.
pub const ENUMERATION_BOUND: u64 = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoTag {
    H8,
    Dic12,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupGL2 {
    pub p: u64,
    pub generators: Vec<MatGL2>,
    pub elements: Vec<MatGL2>,
    pub iso_tag: IsoTag,
}

/// Closure of a generating set under multiplication (finite, so inverses come for free).
pub fn generate(p: u64, gens: &[MatGL2]) -> Vec<MatGL2> {
    let mut seen: BTreeSet<MatGL2> = BTreeSet::new();
    let mut frontier = vec![MatGL2::identity(p)];
    seen.insert(MatGL2::identity(p));
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.mul(h);
            if seen.insert(gh) {
                frontier.push(gh);
            }
        }
    }
    seen.into_iter().collect()
}

impl SubgroupGL2 {
    pub fn from_generators(p: u64, generators: Vec<MatGL2>, iso_tag: IsoTag) -> Self {
        let elements = generate(p, &generators);
        SubgroupGL2 { p, generators, elements, iso_tag }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &MatGL2) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Multiset of element orders as `order -> count`.
    pub fn order_census(&self) -> BTreeMap<u64, usize> {
        let mut c = BTreeMap::new();
        for g in &self.elements {
            *c.entry(g.order()).or_insert(0) += 1;
        }
        c
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inv()) && self.elements.iter().all(|b| self.contains(&a.mul(b)))
        })
    }
}

fn check_prime(p: u64, min: u64) -> Result<()> {
    if p < min || !is_prime(p) {
        return Err(GfeError::PreconditionFailed(format!("need a prime p >= {min}, got {p}")));
    }
    Ok(())
}

/// Quaternion subgroup `<[[0,-1],[1,0]], [[a,b],[b,-a]]>` with the least `(a, b)`
/// satisfying `a^2 + b^2 = -1`.
pub fn embed_h8(p: u64) -> Result<SubgroupGL2> {
    check_prime(p, 3)?;
    let (a, b) = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| (a * a + b * b + 1) % p == 0)
        .ok_or_else(|| GfeError::NoSolution(format!("a^2 + b^2 = -1 mod {p}")))?;
    Ok(h8_from(p, a as i64, b as i64))
}

pub fn h8_from(p: u64, a: i64, b: i64) -> SubgroupGL2 {
    let g1 = MatGL2::new(p, [0, -1, 1, 0]).unwrap();
    let g2 = MatGL2::new(p, [a, b, b, -a]).unwrap();
    SubgroupGL2::from_generators(p, vec![g1, g2], IsoTag::H8)
}

/// Dicyclic subgroup `<[[a,b],[b,1-a]], [[0,-1],[1,0]]>` with the least `(a, b)`,
/// `b != 0`, satisfying `b^2 = -a^2 + a - 1`.
pub fn embed_dic12(p: u64) -> Result<SubgroupGL2> {
    check_prime(p, 5)?;
    let (a, b) = (0..p)
        .flat_map(|a| (1..p).map(move |b| (a, b)))
        .find(|&(a, b)| (b * b + a * a + 1 + p - a) % p == 0)
        .ok_or_else(|| GfeError::NoSolution(format!("b^2 = -a^2 + a - 1 mod {p}")))?;
    Ok(dic12_from(p, a as i64, b as i64))
}

pub fn dic12_from(p: u64, a: i64, b: i64) -> SubgroupGL2 {
    let g1 = MatGL2::new(p, [a, b, b, 1 - a]).unwrap();
    let g2 = MatGL2::new(p, [0, -1, 1, 0]).unwrap();
    SubgroupGL2::from_generators(p, vec![g1, g2], IsoTag::Dic12)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerData {
    pub normalizer: Vec<MatGL2>,
    pub centralizer: Vec<MatGL2>,
}

impl NormalizerData {
    /// `|N_G(H) / C(G)|`, the size of the induced automorphism group when C = C(G).
    pub fn quotient_order(&self, p: u64) -> usize {
        self.normalizer.len() / (p as usize - 1)
    }
}

/// Exact normalizer and centralizer of `h` by enumerating GL_2(F_p).
pub fn normalizer_and_centralizer(h: &SubgroupGL2) -> Result<NormalizerData> {
    let p = h.p;
    if p > ENUMERATION_BOUND {
        return Err(GfeError::BruteForceBoundExceeded(p));
    }
    let all: Vec<MatGL2> = MatGL2::all(p).collect();
    let classified: Vec<(MatGL2, bool, bool)> = all
        .par_iter()
        .filter_map(|g| {
            let normal = h.generators.iter().all(|x| h.contains(&g.conj(x)));
            if !normal {
                return None;
            }
            let central = h.generators.iter().all(|x| g.mul(x) == x.mul(g));
            Some((*g, normal, central))
        })
        .collect();
    Ok(NormalizerData {
        normalizer: classified.iter().map(|t| t.0).collect(),
        centralizer: classified.iter().filter(|t| t.2).map(|t| t.0).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetPattern {
    AllSquare,
    /// The square-determinant elements, an index-two subgroup of the normalizer.
    IndexTwoSquare(Vec<MatGL2>),
}

pub fn det_pattern(h: &SubgroupGL2) -> Result<DetPattern> {
    let nd = normalizer_and_centralizer(h)?;
    let squares: Vec<MatGL2> = nd
        .normalizer
        .iter()
        .filter(|m| square_class(m.det() as i64, h.p) == SquareClass::Square)
        .copied()
        .collect();
    if squares.len() == nd.normalizer.len() {
        Ok(DetPattern::AllSquare)
    } else {
        Ok(DetPattern::IndexTwoSquare(squares))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h8_small_primes() {
        let h3 = embed_h8(3).unwrap();
        assert_eq!(h3.order(), 8);
        // SL_2(F_3) has a unique subgroup of order 8: the elements of order 1, 2, 4
        let sl2: Vec<MatGL2> = MatGL2::all(3).filter(|m| m.det() == 1).collect();
        let mut q8: Vec<MatGL2> = sl2.into_iter().filter(|m| [1, 2, 4].contains(&m.order())).collect();
        q8.sort();
        assert_eq!(q8, h3.elements);
        let h5 = embed_h8(5).unwrap();
        assert!(h5.elements.iter().all(|m| m.det() == 1));
        let h11 = embed_h8(11).unwrap();
        let minus = MatGL2::scalar(11, 10);
        for g in &h11.generators {
            assert_eq!(g.mul(g), minus);
        }
    }

    #[test]
    fn dic12_census() {
        let d7 = embed_dic12(7).unwrap();
        let want: BTreeMap<u64, usize> = [(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)].into_iter().collect();
        assert_eq!(d7.order_census(), want);
        assert!(embed_dic12(13).unwrap().elements.iter().all(|m| m.det() == 1));
        assert_eq!(embed_dic12(5).unwrap().order(), 12);
    }

    #[test]
    fn normalizers() {
        let n = normalizer_and_centralizer(&embed_h8(5).unwrap()).unwrap();
        assert_eq!(n.normalizer.len(), 96);
        assert_eq!(n.centralizer.len(), 4);
        assert!(n.centralizer.iter().all(|m| m.is_scalar()));
        let n3 = normalizer_and_centralizer(&embed_h8(3).unwrap()).unwrap();
        assert_eq!(n3.normalizer.len(), 48);
        assert_eq!(n3.centralizer.len(), 2);
        let d = normalizer_and_centralizer(&embed_dic12(7).unwrap()).unwrap();
        assert_eq!(d.quotient_order(7), 12);
        assert!(matches!(normalizer_and_centralizer(&embed_h8(37).unwrap()), Err(GfeError::BruteForceBoundExceeded(37))));
    }

    #[test]
    fn determinant_patterns() {
        assert_eq!(det_pattern(&embed_h8(7).unwrap()).unwrap(), DetPattern::AllSquare);
        match det_pattern(&embed_h8(5).unwrap()).unwrap() {
            // A_4 part: 12 automorphisms times 4 scalars
            DetPattern::IndexTwoSquare(sq) => assert_eq!(sq.len(), 48),
            other => panic!("{other:?}"),
        }
        assert_eq!(det_pattern(&embed_dic12(11).unwrap()).unwrap(), DetPattern::AllSquare);
    }

    #[test]
    fn other_solutions_give_conjugate_subgroups() {
        for p in [5u64, 7, 11] {
            let base = embed_h8(p).unwrap();
            let all: Vec<MatGL2> = MatGL2::all(p).collect();
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    if (a * a + b * b + 1) % p as i64 != 0 {
                        continue;
                    }
                    let other = h8_from(p, a, b);
                    let conj = all.iter().any(|g| {
                        let mut c: Vec<MatGL2> = base.elements.iter().map(|x| g.conj(x)).collect();
                        c.sort();
                        c == other.elements
                    });
                    assert!(conj, "p={p} a={a} b={b}");
                }
            }
        }
    }
}
