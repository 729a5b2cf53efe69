//! Pairs-triples designs and their equivalence with group divisible designs
//! of type `1^m r^1`, i.e. mixed Steiner triple systems over
//! `Z_2^m x Z_{r+1}`.
//!
//! Points are `0..m`. Factors are indexed `T_1..T_r` in the block labels
//! `(m, i)` but stored 0-based in [`PairsTriplesDesign::factors`].

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::classical::{one_factorization, pair, steiner_triple_system, sts_admissible, triple, Pair, Triple};
use crate::error::{MstsError, Result};
use crate::exact_cover::{ExactCover, Solve};
use crate::model::{Design, MixedAlphabet, SparseWord};
use crate::verify::{verify_msts, verify_ptd};

/// `r` disjoint one-factors of `K_m` plus a set of triples covering every
/// remaining pair exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsTriplesDesign {
    pub m: u32,
    pub r: u32,
    pub factors: Vec<Vec<Pair>>,
    pub triples: Vec<Triple>,
}

impl PairsTriplesDesign {
    /// Canonical form: pairs as `(min, max)`, each factor sorted, triples
    /// sorted internally and as a list. Factor order is kept.
    pub fn normalized(mut self) -> Self {
        for f in &mut self.factors {
            for p in f.iter_mut() {
                *p = pair(p.0, p.1);
            }
            f.sort_unstable();
        }
        for t in &mut self.triples {
            *t = triple(t[0], t[1], t[2]);
        }
        self.triples.sort_unstable();
        self
    }

    /// Number of triples a valid design must have: `(C(m,2) - r*m/2) / 3`.
    pub fn triple_count(m: u32, r: u32) -> Option<u32> {
        let leave = (m * m.saturating_sub(1) / 2).checked_sub(r * m / 2)?;
        (leave % 3 == 0).then_some(leave / 3)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("PTD serialization cannot fail")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Whether an `(m, r)`-pairs-triples design exists.
pub fn ptd_exists(m: u32, r: u32) -> bool {
    if m % 2 != 0 || r % 2 != 1 || r < 1 || r + 1 > m {
        return false;
    }
    match m % 6 {
        0 => true,
        2 | 4 => r % 6 == (m - 1) % 6,
        _ => false,
    }
}

/// The GDD over `Z_2^m x Z_{r+1}`: `{(x,1),(y,1),(m,i)}` for `{x,y}` in
/// `T_i`, and `{(x,1),(y,1),(z,1)}` for each triple.
pub fn ptd_to_gdd(d: &PairsTriplesDesign) -> Result<Design> {
    let report = verify_ptd(d);
    if !report.accepted {
        return Err(MstsError::Contract(format!(
            "invalid ({}, {})-pairs-triples design",
            d.m, d.r
        )));
    }
    let mut sizes = vec![2; d.m as usize];
    sizes.push(d.r + 1);
    let mut design = Design::new(MixedAlphabet::new(sizes)?);
    for (idx, factor) in d.factors.iter().enumerate() {
        let label = idx as u32 + 1;
        for &(x, y) in factor {
            let (x, y) = pair(x, y);
            design.insert(SparseWord::from_sorted_unchecked(vec![(x, 1), (y, 1), (d.m, label)]))?;
        }
    }
    for t in &d.triples {
        let [a, b, c] = triple(t[0], t[1], t[2]);
        design.insert(SparseWord::from_sorted_unchecked(vec![(a, 1), (b, 1), (c, 1)]))?;
    }
    let mut meta = Map::new();
    meta.insert("construction".into(), Value::from("pairs-triples"));
    meta.insert("m".into(), Value::from(d.m));
    meta.insert("r".into(), Value::from(d.r));
    Ok(design.with_metadata(meta))
}

/// Inverse of [`ptd_to_gdd`]. The last coordinate is the group coordinate;
/// all others must be binary, and the design must verify.
pub fn gdd_to_ptd(g: &Design) -> Result<PairsTriplesDesign> {
    let sizes = g.alphabet().sizes();
    let Some((&group, binary)) = sizes.split_last() else {
        return Err(MstsError::Contract("empty alphabet".into()));
    };
    if binary.iter().any(|&q| q != 2) {
        return Err(MstsError::Contract(format!(
            "expected Z_2^m x Z_(r+1), got alphabet {}",
            g.alphabet()
        )));
    }
    let report = verify_msts(g);
    if !report.accepted {
        return Err(MstsError::Rejected(format!(
            "{} uncovered, {} multicovered, {} distance violations",
            report.uncovered.len(),
            report.multicovered.len(),
            report.distance_violations.len()
        )));
    }
    let m = binary.len() as u32;
    let r = group - 1;
    let mut factors = vec![Vec::new(); r as usize];
    let mut triples = Vec::new();
    for cw in g.iter() {
        match cw.entries() {
            &[(x, 1), (y, 1), (p, i)] if p == m => factors[(i - 1) as usize].push((x, y)),
            &[(a, 1), (b, 1), (c, 1)] => triples.push([a, b, c]),
            _ => {
                return Err(MstsError::Contract(format!(
                    "codeword {cw} is not a pairs-triples block"
                )))
            }
        }
    }
    Ok(PairsTriplesDesign {
        m,
        r,
        factors,
        triples,
    }
    .normalized())
}

/// `r = m - 1`: a one-factorization of `K_m` with no triples.
pub fn ptd_from_one_factorization(m: u32) -> Result<PairsTriplesDesign> {
    let f = one_factorization(m)?;
    Ok(PairsTriplesDesign {
        m,
        r: m - 1,
        factors: f.factors,
        triples: Vec::new(),
    }
    .normalized())
}

/// `r = 1`: an STS(m + 1) with point `m` as the group. `T_1` collects the
/// pairs that form a triple with `m`.
pub fn ptd_from_sts(m: u32) -> Result<PairsTriplesDesign> {
    if m % 2 != 0 || !sts_admissible(m + 1) {
        return Err(MstsError::InvalidParameters(format!(
            "need m even with m + 1 = 1 or 3 (mod 6), got m = {m}"
        )));
    }
    let sts = steiner_triple_system(m + 1)?;
    let mut factor = Vec::new();
    let mut triples = Vec::new();
    for t in sts.triples {
        if t[2] == m {
            factor.push((t[0], t[1]));
        } else {
            triples.push(t);
        }
    }
    Ok(PairsTriplesDesign {
        m,
        r: 1,
        factors: vec![factor],
        triples,
    }
    .normalized())
}

/// Result of a bounded [`ptd_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { design: PairsTriplesDesign, nodes: u64 },
    /// The node budget ran out before a design was found.
    Exhausted { nodes: u64 },
    /// The whole search tree was explored without a design.
    NoSolution { nodes: u64 },
}

/// Exact-cover search for an `(m, r)`-pairs-triples design.
///
/// Items are the pairs of `Z_m` plus one slot per (factor, point); options
/// are "pair `{a,b}` in factor `f`" and "triple `{a,b,c}`". The first factor
/// is fixed to `{0,1}, {2,3}, ...`, which loses no generality up to
/// relabelling points. Candidates are listed in lexicographic order and the
/// item with fewest remaining options is branched on first, ties to the
/// smallest item, so the search is deterministic.
pub fn ptd_search(m: u32, r: u32, budget: u64) -> Result<SearchOutcome> {
    if !ptd_exists(m, r) {
        return Err(MstsError::InvalidParameters(format!(
            "no ({m}, {r})-pairs-triples design exists"
        )));
    }
    let (mu, ru) = (m as usize, r as usize);
    let pair_item = |a: usize, b: usize| a * (2 * mu - a - 1) / 2 + (b - a - 1);
    let pair_items = mu * (mu - 1) / 2;
    let slot_item = |f: usize, p: usize| pair_items + f * mu + p;

    enum Choice {
        Matched(usize, u32, u32),
        Triple(Triple),
    }
    let mut ec = ExactCover::new(pair_items + ru * mu);
    let mut choices = Vec::new();
    let mut fixed = Vec::new();
    for f in 0..ru {
        for a in 0..mu {
            for b in (a + 1)..mu {
                let id = ec.add_option(&[pair_item(a, b), slot_item(f, a), slot_item(f, b)]);
                choices.push(Choice::Matched(f, a as u32, b as u32));
                if f == 0 && a % 2 == 0 && b == a + 1 {
                    fixed.push(id);
                }
            }
        }
    }
    for a in 0..mu {
        for b in (a + 1)..mu {
            for c in (b + 1)..mu {
                ec.add_option(&[pair_item(a, b), pair_item(a, c), pair_item(b, c)]);
                choices.push(Choice::Triple([a as u32, b as u32, c as u32]));
            }
        }
    }
    let mut chosen = Vec::new();
    for id in fixed {
        ec.preselect(id, &mut chosen);
    }
    let mut nodes = 0;
    Ok(match ec.solve(chosen, budget, &mut nodes) {
        Solve::Solution(ids) => {
            let mut factors = vec![Vec::new(); ru];
            let mut triples = Vec::new();
            for id in ids {
                match choices[id] {
                    Choice::Matched(f, a, b) => factors[f].push((a, b)),
                    Choice::Triple(t) => triples.push(t),
                }
            }
            SearchOutcome::Found {
                design: PairsTriplesDesign {
                    m,
                    r,
                    factors,
                    triples,
                }
                .normalized(),
                nodes,
            }
        }
        Solve::NoSolution => SearchOutcome::NoSolution { nodes },
        Solve::Exhausted => SearchOutcome::Exhausted { nodes },
    })
}
