//! Construction-agnostic checks: necessary conditions, codeword counts,
//! brute-force exact-once coverage and minimum distance.
//!
//! Nothing here looks at how a design was built. A design is judged purely
//! by its alphabet and codeword set.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::classical::Pair;
use crate::error::{MstsError, Result};
use crate::model::{enumerate_weight2_words, Design, MixedAlphabet, SparseWord};
use crate::pairs_triples::PairsTriplesDesign;

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Verdicts for the five necessary conditions on
/// `MS(2,3, Z_2^n x Z_{k+1} x Z_{l+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub k: u64,
    pub l: u64,
    pub n: u64,
    /// `n - k` even.
    pub parity_n_k: bool,
    /// `n - l` even.
    pub parity_n_l: bool,
    /// `k` and `l` odd.
    pub k_l_odd: bool,
    /// `n >= k * l`.
    pub length_bound: bool,
    /// `k*l + (k+l)*n + C(n,2)` divisible by 3.
    pub divisibility: bool,
    /// Residues of `n` mod 6 allowed by conditions (1), (2), (3) and (5).
    pub residues: Vec<u64>,
    pub overall: bool,
}

impl ConditionReport {
    pub fn verdicts(&self) -> [bool; 5] {
        [
            self.parity_n_k,
            self.parity_n_l,
            self.k_l_odd,
            self.length_bound,
            self.divisibility,
        ]
    }
}

fn divisibility_holds(k: u64, l: u64, n: u64) -> bool {
    (k * l + (k + l) * n + binom2(n)) % 3 == 0
}

fn residue_conditions_hold(k: u64, l: u64, n: u64) -> bool {
    (n + k) % 2 == 0 && (n + l) % 2 == 0 && k % 2 == 1 && l % 2 == 1 && divisibility_holds(k, l, n)
}

fn residues_of(k: u64, l: u64) -> Vec<u64> {
    // All five quantities depend on n only through n mod 6 (and k, l mod 6),
    // so testing representatives 6..12 is exhaustive.
    (0..6)
        .filter(|&r| residue_conditions_hold(k, l, 6 + r))
        .collect()
}

pub fn check_necessary_conditions(k: u64, l: u64, n: u64) -> ConditionReport {
    let parity_n_k = (n + k) % 2 == 0;
    let parity_n_l = (n + l) % 2 == 0;
    let k_l_odd = k % 2 == 1 && l % 2 == 1;
    let length_bound = n >= k * l;
    let divisibility = divisibility_holds(k, l, n);
    ConditionReport {
        k,
        l,
        n,
        parity_n_k,
        parity_n_l,
        k_l_odd,
        length_bound,
        divisibility,
        residues: residues_of(k, l),
        overall: parity_n_k && parity_n_l && k_l_odd && length_bound && divisibility,
    }
}

/// Residues of `n` mod 6 for which conditions (1), (2), (3) and (5) can hold.
pub fn admissible_n_residues(k: u64, l: u64) -> Result<BTreeSet<u64>> {
    if k % 2 == 0 || l % 2 == 0 {
        return Err(MstsError::InvalidParameters(format!(
            "k and l must be odd, got k={k}, l={l}"
        )));
    }
    Ok(residues_of(k, l).into_iter().collect())
}

/// Smallest `n >= k * l` satisfying all five necessary conditions.
pub fn minimum_admissible_n(k: u64, l: u64) -> Option<u64> {
    let residues = admissible_n_residues(k, l).ok()?;
    (k * l..k * l + 6).find(|n| residues.contains(&(n % 6)))
}

/// `(k*l + (k+l)*n + C(n,2)) / 3`, the codeword count of any
/// `MS(2,3, Z_2^n x Z_{k+1} x Z_{l+1})`.
pub fn expected_count(k: u64, l: u64, n: u64) -> Result<u64> {
    let pairs = k * l + (k + l) * n + binom2(n);
    if pairs % 3 != 0 {
        return Err(MstsError::NotDivisible(pairs));
    }
    Ok(pairs / 3)
}

/// The shape of an alphabet as far as counting is concerned: the number of
/// binary coordinates and the group sizes of the non-binary ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum AlphabetShape {
    /// `Z_2^n`.
    Binary { n: u64 },
    /// `Z_2^n x Z_{r+1}`.
    OneGroup { n: u64, r: u64 },
    /// `Z_2^n x Z_{k+1} x Z_{l+1}`, non-binary coordinates in any position.
    TwoGroups { n: u64, k: u64, l: u64 },
}

impl AlphabetShape {
    pub fn recognize(alphabet: &MixedAlphabet) -> Option<Self> {
        let n = alphabet.sizes().iter().filter(|&&q| q == 2).count() as u64;
        let groups: Vec<u64> = alphabet
            .sizes()
            .iter()
            .filter(|&&q| q != 2)
            .map(|&q| u64::from(q) - 1)
            .collect();
        match groups[..] {
            [] => Some(Self::Binary { n }),
            [r] => Some(Self::OneGroup { n, r }),
            [k, l] => Some(Self::TwoGroups { n, k, l }),
            _ => None,
        }
    }

    pub fn expected_count(&self) -> Option<u64> {
        match *self {
            Self::Binary { n } => {
                let pairs = binom2(n);
                (pairs % 3 == 0).then_some(pairs / 3)
            }
            Self::OneGroup { n, r } => {
                let pairs = binom2(n) + r * n;
                (pairs % 3 == 0).then_some(pairs / 3)
            }
            Self::TwoGroups { n, k, l } => expected_count(k, l, n).ok(),
        }
    }
}

/// Two codewords closer than distance 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceViolation {
    pub first: SparseWord,
    pub second: SparseWord,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub accepted: bool,
    pub alphabet: Vec<u32>,
    pub shape: Option<AlphabetShape>,
    pub weight2_words: u64,
    pub coverage_ok: bool,
    pub uncovered: Vec<SparseWord>,
    pub multicovered: Vec<SparseWord>,
    /// True minimum pairwise distance when no violation was found, otherwise
    /// the distance of the first violating pair. `None` for fewer than two
    /// codewords.
    pub min_distance: Option<usize>,
    pub distance_violations: Vec<DistanceViolation>,
    /// `None` when the alphabet shape is not recognized or the count formula
    /// is not integral.
    pub count_expected: Option<u64>,
    pub count_actual: u64,
}

/// Brute-force check that `design` is a mixed Steiner triple system: every
/// weight-2 word covered exactly once and all codewords pairwise at distance
/// at least 3.
pub fn verify_msts(design: &Design) -> VerificationReport {
    let alphabet = design.alphabet();
    let mut coverage: HashMap<SparseWord, u32> = enumerate_weight2_words(alphabet)
        .map(|w| (w, 0))
        .collect();
    for cw in design.iter() {
        for sub in cw.sub_pairs() {
            // Codewords in a Design are valid, so every sub-pair is a key.
            if let Some(c) = coverage.get_mut(&sub) {
                *c += 1;
            }
        }
    }
    let mut uncovered = Vec::new();
    let mut multicovered = Vec::new();
    for word in enumerate_weight2_words(alphabet) {
        match coverage[&word] {
            0 => uncovered.push(word),
            1 => {}
            _ => multicovered.push(word),
        }
    }
    let coverage_ok = uncovered.is_empty() && multicovered.is_empty();

    let (min_distance, distance_violations) = min_distance_with_witness(design);

    let shape = AlphabetShape::recognize(alphabet);
    let count_expected = shape.as_ref().and_then(AlphabetShape::expected_count);
    let count_actual = design.len() as u64;
    let counts_ok = match (shape, count_expected) {
        (None, _) => true,
        (Some(_), Some(e)) => e == count_actual,
        (Some(_), None) => false,
    };

    VerificationReport {
        accepted: coverage_ok && distance_violations.is_empty() && counts_ok,
        alphabet: alphabet.sizes().to_vec(),
        shape,
        weight2_words: alphabet.weight2_count(),
        coverage_ok,
        uncovered,
        multicovered,
        min_distance,
        distance_violations,
        count_expected,
        count_actual,
    }
}

fn min_distance_with_witness(design: &Design) -> (Option<usize>, Vec<DistanceViolation>) {
    let words: Vec<&SparseWord> = design.iter().collect();
    let mut best: Option<usize> = None;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = a.distance(b);
            if d < 3 {
                return (
                    Some(d),
                    vec![DistanceViolation {
                        first: (*a).clone(),
                        second: (*b).clone(),
                        distance: d,
                    }],
                );
            }
            best = Some(best.map_or(d, |m| m.min(d)));
        }
    }
    (best, Vec::new())
}

/// Findings for a pairs-triples design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtdReport {
    pub accepted: bool,
    pub m: u32,
    pub r: u32,
    pub parameters_ok: bool,
    /// Indices (1-based) of factors that are not perfect matchings of `Z_m`.
    pub invalid_factors: Vec<usize>,
    /// Triples with repeated or out-of-range points.
    pub invalid_triples: Vec<[u32; 3]>,
    pub coverage_ok: bool,
    pub uncovered: Vec<Pair>,
    pub multicovered: Vec<Pair>,
    pub triples_expected: Option<u64>,
    pub triples_actual: u64,
}

pub fn verify_ptd(d: &PairsTriplesDesign) -> PtdReport {
    let m = d.m;
    let r = d.r;
    let parameters_ok =
        m % 2 == 0 && r % 2 == 1 && r < m && d.factors.len() == r as usize;

    let mut invalid_factors = Vec::new();
    let mut counts: HashMap<Pair, u32> = HashMap::new();
    for a in 0..m {
        for b in (a + 1)..m {
            counts.insert((a, b), 0);
        }
    }
    for (idx, factor) in d.factors.iter().enumerate() {
        let mut seen = vec![false; m as usize];
        let mut ok = factor.len() == (m / 2) as usize;
        for &(a, b) in factor {
            let (lo, hi) = (a.min(b), a.max(b));
            if hi >= m || lo == hi {
                ok = false;
                continue;
            }
            for p in [lo, hi] {
                if std::mem::replace(&mut seen[p as usize], true) {
                    ok = false;
                }
            }
            *counts.get_mut(&(lo, hi)).unwrap() += 1;
        }
        if !ok {
            invalid_factors.push(idx + 1);
        }
    }
    let mut invalid_triples = Vec::new();
    for t in &d.triples {
        let mut s = *t;
        s.sort_unstable();
        if s[2] >= m || s[0] == s[1] || s[1] == s[2] {
            invalid_triples.push(*t);
            continue;
        }
        for p in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
            *counts.get_mut(&p).unwrap() += 1;
        }
    }
    let mut uncovered = Vec::new();
    let mut multicovered = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            match counts[&(a, b)] {
                0 => uncovered.push((a, b)),
                1 => {}
                _ => multicovered.push((a, b)),
            }
        }
    }
    let coverage_ok = uncovered.is_empty() && multicovered.is_empty();
    let leave = binom2(u64::from(m)).checked_sub(u64::from(r) * u64::from(m) / 2);
    let triples_expected = leave.filter(|l| l % 3 == 0).map(|l| l / 3);
    let triples_actual = d.triples.len() as u64;
    PtdReport {
        accepted: parameters_ok
            && invalid_factors.is_empty()
            && invalid_triples.is_empty()
            && coverage_ok
            && triples_expected == Some(triples_actual),
        m,
        r,
        parameters_ok,
        invalid_factors,
        invalid_triples,
        coverage_ok,
        uncovered,
        multicovered,
        triples_expected,
        triples_actual,
    }
}

/// Findings for a dense code checked for the 1-perfect property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectCodeReport {
    pub perfect: bool,
    pub words_total: u64,
    pub codewords: u64,
    /// `1 + sum (q_i - 1)`.
    pub ball_size: u64,
    pub sphere_packing_ok: bool,
    /// Words at distance more than 1 from every codeword.
    pub uncovered: u64,
    /// Words within distance 1 of two or more codewords.
    pub multiply_covered: u64,
}

/// Largest alphabet [`verify_perfect_code`] will exhaust.
pub const PERFECT_CHECK_LIMIT: u64 = 1 << 22;

/// Exhaustively checks that every word of the alphabet lies within distance
/// 1 of exactly one codeword. Codewords are dense value vectors.
pub fn verify_perfect_code(alphabet: &MixedAlphabet, code: &[Vec<u32>]) -> Result<PerfectCodeReport> {
    let total = alphabet
        .word_count()
        .filter(|&t| t <= PERFECT_CHECK_LIMIT)
        .ok_or(MstsError::TooLarge {
            size: alphabet.word_count().unwrap_or(u64::MAX),
            limit: PERFECT_CHECK_LIMIT,
        })?;
    let sizes = alphabet.sizes();
    let mut strides = vec![1u64; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * u64::from(sizes[i + 1]);
    }
    let mut hits = vec![0u8; total as usize];
    for word in code {
        if word.len() != sizes.len() || word.iter().zip(sizes).any(|(&v, &q)| v >= q) {
            return Err(MstsError::InvalidWord(format!("{word:?} is not a word over {alphabet}")));
        }
        let rank: u64 = word.iter().zip(&strides).map(|(&v, &s)| u64::from(v) * s).sum();
        hits[rank as usize] = hits[rank as usize].saturating_add(1);
        for (i, (&v, &q)) in word.iter().zip(sizes).enumerate() {
            let base = rank - u64::from(v) * strides[i];
            for other in (0..q).filter(|&o| o != v) {
                let idx = (base + u64::from(other) * strides[i]) as usize;
                hits[idx] = hits[idx].saturating_add(1);
            }
        }
    }
    let uncovered = hits.iter().filter(|&&h| h == 0).count() as u64;
    let multiply_covered = hits.iter().filter(|&&h| h > 1).count() as u64;
    let ball_size = 1 + sizes.iter().map(|&q| u64::from(q) - 1).sum::<u64>();
    Ok(PerfectCodeReport {
        perfect: uncovered == 0 && multiply_covered == 0,
        words_total: total,
        codewords: code.len() as u64,
        ball_size,
        sphere_packing_ok: code.len() as u64 * ball_size == total,
        uncovered,
        multiply_covered,
    })
}
