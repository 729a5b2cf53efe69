//! Steiner triple systems, one-factorizations and near-one-factorizations
//! over `Z_v`. All constructions are deterministic.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{MstsError, Result};

/// An unordered pair stored as `(min, max)`.
pub type Pair = (u32, u32);

/// A 3-subset of points stored in ascending order.
pub type Triple = [u32; 3];

pub(crate) fn pair(a: u32, b: u32) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub(crate) fn triple(a: u32, b: u32, c: u32) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorizationKind {
    OneFactorization,
    NearOneFactorization,
}

/// A partition of the pairs of `Z_v` into (near-)one-factors.
///
/// For a near-one-factorization, factor `i` leaves point `i` isolated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub v: u32,
    pub kind: FactorizationKind,
    pub factors: Vec<Vec<Pair>>,
}

impl Factorization {
    /// The point missed by factor `i`, if any.
    pub fn isolated_point(&self, i: usize) -> Option<u32> {
        let covered: BTreeSet<u32> = self.factors[i].iter().flat_map(|&(a, b)| [a, b]).collect();
        (0..self.v).find(|p| !covered.contains(p))
    }
}

/// Rotational near-one-factorization of odd order `v`:
/// `F_i = {{i + j, i - j} : 1 <= j <= (v - 1) / 2}`.
///
/// `v = 1` yields a single empty factor.
pub fn near_one_factorization(v: u32) -> Result<Factorization> {
    if v % 2 == 0 {
        return Err(MstsError::InvalidParameters(format!(
            "near-one-factorization needs odd order, got {v}"
        )));
    }
    let factors = (0..v)
        .map(|i| {
            let mut f: Vec<Pair> = (1..=(v - 1) / 2)
                .map(|j| pair((i + j) % v, (i + v - j) % v))
                .collect();
            f.sort_unstable();
            f
        })
        .collect();
    Ok(Factorization {
        v,
        kind: FactorizationKind::NearOneFactorization,
        factors,
    })
}

/// One-factorization of `K_v` for even `v`: point `v - 1` is fixed and the
/// remaining points rotate through `Z_{v-1}`.
pub fn one_factorization(v: u32) -> Result<Factorization> {
    if v % 2 != 0 || v == 0 {
        return Err(MstsError::InvalidParameters(format!(
            "one-factorization needs positive even order, got {v}"
        )));
    }
    let rot = v - 1;
    let factors = (0..rot)
        .map(|r| {
            let mut f = vec![pair(r, rot)];
            f.extend((1..=(rot - 1) / 2).map(|j| pair((r + j) % rot, (r + rot - j) % rot)));
            f.sort_unstable();
            f
        })
        .collect();
    Ok(Factorization {
        v,
        kind: FactorizationKind::OneFactorization,
        factors,
    })
}

/// A set of triples on `Z_v` covering every pair exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleSystem {
    pub v: u32,
    pub triples: Vec<Triple>,
}

pub fn sts_admissible(v: u32) -> bool {
    v % 6 == 1 || v % 6 == 3
}

/// A Steiner triple system of order `v`, `v = 1 or 3 (mod 6)`.
///
/// Bose construction for `v = 3 (mod 6)`, Skolem construction for
/// `v = 1 (mod 6)`. Triples are returned sorted.
pub fn steiner_triple_system(v: u32) -> Result<TripleSystem> {
    let mut triples = match v % 6 {
        3 => bose(v),
        1 => skolem(v),
        r => {
            return Err(MstsError::InvalidParameters(format!(
                "STS({v}) requires v = 1 or 3 (mod 6), got v = {r} (mod 6)"
            )))
        }
    };
    triples.sort_unstable();
    Ok(TripleSystem { v, triples })
}

fn bose(v: u32) -> Vec<Triple> {
    // Idempotent commutative quasigroup on Z_q, q odd: x o y = (x + y) / 2.
    let q = v / 3;
    let half = (q + 1) / 2;
    let op = |x: u32, y: u32| ((x + y) * half) % q;
    let pt = |x: u32, i: u32| x + q * i;
    let mut out = Vec::with_capacity((v * (v - 1) / 6) as usize);
    for x in 0..q {
        out.push(triple(pt(x, 0), pt(x, 1), pt(x, 2)));
    }
    for i in 0..3 {
        for x in 0..q {
            for y in (x + 1)..q {
                out.push(triple(pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)));
            }
        }
    }
    out
}

fn skolem(v: u32) -> Vec<Triple> {
    if v == 1 {
        return Vec::new();
    }
    // Half-idempotent commutative quasigroup on Z_{2h}: the addition table
    // of Z_{2h} with symbols 2s -> s and 2s + 1 -> h + s.
    let q = (v - 1) / 3;
    let h = q / 2;
    let op = |x: u32, y: u32| {
        let s = (x + y) % q;
        if s % 2 == 0 {
            s / 2
        } else {
            h + (s - 1) / 2
        }
    };
    let inf = v - 1;
    let pt = |x: u32, i: u32| x + q * i;
    let mut out = Vec::with_capacity((v * (v - 1) / 6) as usize);
    for x in 0..h {
        out.push(triple(pt(x, 0), pt(x, 1), pt(x, 2)));
        for i in 0..3 {
            out.push(triple(inf, pt(x + h, i), pt(x, (i + 1) % 3)));
        }
    }
    for i in 0..3 {
        for x in 0..q {
            for y in (x + 1)..q {
                out.push(triple(pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Exact-once pair coverage, checked by counting every pair of `Z_v`.
    fn pair_counts<'a>(v: u32, pairs: impl Iterator<Item = &'a Pair>) -> HashMap<Pair, usize> {
        let mut counts = HashMap::new();
        for a in 0..v {
            for b in (a + 1)..v {
                counts.insert((a, b), 0);
            }
        }
        for &p in pairs {
            assert!(p.0 < p.1 && p.1 < v, "bad pair {p:?}");
            *counts.get_mut(&p).unwrap() += 1;
        }
        counts
    }

    fn assert_factorization(f: &Factorization) {
        let v = f.v;
        let counts = pair_counts(v, f.factors.iter().flatten());
        assert!(counts.values().all(|&c| c == 1), "v={v}: pairs not covered once");
        for factor in &f.factors {
            let pts: Vec<u32> = factor.iter().flat_map(|&(a, b)| [a, b]).collect();
            let uniq: BTreeSet<u32> = pts.iter().copied().collect();
            assert_eq!(uniq.len(), pts.len(), "v={v}: factor pairs overlap");
        }
    }

    #[test]
    fn near_one_factorization_small() {
        let f = near_one_factorization(3).unwrap();
        assert_eq!(f.factors, vec![vec![(1, 2)], vec![(0, 2)], vec![(0, 1)]]);
        let f = near_one_factorization(5).unwrap();
        assert_eq!(f.factors[0], vec![(1, 4), (2, 3)]);
        assert_eq!(f.isolated_point(2), Some(2));
        let f = near_one_factorization(1).unwrap();
        assert!(f.factors.iter().all(Vec::is_empty));
        assert!(near_one_factorization(4).is_err());
    }

    #[test]
    fn near_one_factorizations_up_to_99() {
        for v in (1..=99).step_by(2) {
            let f = near_one_factorization(v).unwrap();
            assert_eq!(f.factors.len(), v as usize);
            assert_factorization(&f);
            for (i, factor) in f.factors.iter().enumerate() {
                assert_eq!(factor.len(), ((v - 1) / 2) as usize);
                assert_eq!(f.isolated_point(i), Some(i as u32));
            }
        }
    }

    #[test]
    fn one_factorization_small() {
        assert_eq!(one_factorization(2).unwrap().factors, vec![vec![(0, 1)]]);
        let f = one_factorization(4).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|x| x.len() == 2));
        assert_factorization(&f);
        let f = one_factorization(16).unwrap();
        assert_eq!(f.factors.len(), 15);
        assert!(f.factors.iter().all(|x| x.len() == 8));
        assert!(one_factorization(5).is_err());
        assert!(one_factorization(0).is_err());
    }

    #[test]
    fn one_factorizations_up_to_100() {
        for v in (2..=100).step_by(2) {
            let f = one_factorization(v).unwrap();
            assert_eq!(f.factors.len(), (v - 1) as usize);
            assert!(f.factors.iter().all(|x| x.len() == (v / 2) as usize));
            assert_factorization(&f);
        }
    }

    #[test]
    fn sts_small() {
        assert_eq!(steiner_triple_system(3).unwrap().triples, vec![[0, 1, 2]]);
        assert_eq!(steiner_triple_system(7).unwrap().triples.len(), 7);
        assert_eq!(steiner_triple_system(9).unwrap().triples.len(), 12);
        assert!(steiner_triple_system(1).unwrap().triples.is_empty());
        let err = steiner_triple_system(5).unwrap_err();
        assert!(err.to_string().contains("1 or 3 (mod 6)"));
    }

    #[test]
    fn sts_valid_up_to_99() {
        for v in (1..=99).filter(|&v| sts_admissible(v)) {
            let s = steiner_triple_system(v).unwrap();
            assert_eq!(s.triples.len() as u32, v * (v - 1) / 6, "v={v}");
            let pairs: Vec<Pair> = s
                .triples
                .iter()
                .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
                .collect();
            let counts = pair_counts(v, pairs.iter());
            assert!(counts.values().all(|&c| c == 1), "STS({v}) invalid");
        }
    }

    #[test]
    fn constructions_are_deterministic() {
        assert_eq!(steiner_triple_system(31).unwrap(), steiner_triple_system(31).unwrap());
        assert_eq!(one_factorization(12).unwrap(), one_factorization(12).unwrap());
    }
}
