//! Lengthening a system `MS(2,3, Z_2^n x Z_{k+1} x Z_{l+1})` by `m` binary
//! coordinates using an `(m, n+k+l)`-pairs-triples design.
//!
//! New coordinates occupy positions `n+2 .. n+m+1`; PTD point `a` maps to
//! position `n + 2 + a`. Factor `T_{i+1}` serves binary coordinate `i`,
//! `T_{n+j}` serves value `j` of coordinate `n`, and `T_{n+k+j}` serves value
//! `j` of coordinate `n + 1`.

use serde_json::{Map, Value};

use crate::error::{MstsError, Result};
use crate::model::{Design, MixedAlphabet, SparseWord};
use crate::pairs_triples::PairsTriplesDesign;

/// A validated pairing of a base system with a pairs-triples design.
#[derive(Debug, Clone)]
pub struct ExtensionPlan<'a> {
    base: &'a Design,
    ptd: &'a PairsTriplesDesign,
    n: u32,
    k: u32,
    l: u32,
}

impl<'a> ExtensionPlan<'a> {
    /// The base alphabet must be `n` binary coordinates followed by
    /// `Z_{k+1}` and `Z_{l+1}`, with `n`, `k`, `l` odd. The PTD must have
    /// `r = n + k + l` and `m > r`, `m` even.
    pub fn new(base: &'a Design, ptd: &'a PairsTriplesDesign) -> Result<Self> {
        let sizes = base.alphabet().sizes();
        if sizes.len() < 2 || sizes[..sizes.len() - 2].iter().any(|&q| q != 2) {
            return Err(MstsError::Contract(format!(
                "base alphabet {} is not Z_2^n x Z_(k+1) x Z_(l+1)",
                base.alphabet()
            )));
        }
        let n = (sizes.len() - 2) as u32;
        let k = sizes[sizes.len() - 2] - 1;
        let l = sizes[sizes.len() - 1] - 1;
        if n % 2 == 0 || k % 2 == 0 || l % 2 == 0 {
            return Err(MstsError::Contract(format!(
                "n, k, l must be odd, got n = {n}, k = {k}, l = {l}"
            )));
        }
        let r = n + k + l;
        if ptd.r != r || ptd.factors.len() != r as usize {
            return Err(MstsError::Contract(format!(
                "factor count mismatch: r = {} but n + k + l = {r}",
                ptd.r
            )));
        }
        if ptd.m % 2 != 0 {
            return Err(MstsError::Contract(format!("m = {} must be even", ptd.m)));
        }
        if ptd.m <= r {
            return Err(MstsError::Contract(format!(
                "need m > n + k + l, got m = {} and n + k + l = {r}",
                ptd.m
            )));
        }
        Ok(Self { base, ptd, n, k, l })
    }

    /// First coordinate index of the new binary block.
    pub fn offset(&self) -> u32 {
        self.n + 2
    }

    pub fn output_alphabet(&self) -> MixedAlphabet {
        let mut sizes = self.base.alphabet().sizes().to_vec();
        sizes.extend(std::iter::repeat(2).take(self.ptd.m as usize));
        MixedAlphabet::new(sizes).expect("sizes are at least 2")
    }

    /// Codeword count of the extended system.
    pub fn output_len(&self) -> usize {
        self.base.len() + (self.ptd.r * self.ptd.m / 2) as usize + self.ptd.triples.len()
    }
}

pub fn extend(plan: &ExtensionPlan<'_>) -> Result<Design> {
    let ExtensionPlan { base, ptd, n, k, l } = *plan;
    let off = plan.offset();
    let mut design = Design::new(plan.output_alphabet());
    for cw in base.iter() {
        design.insert(cw.clone())?;
    }
    let with_factor = |coord: (u32, u32), factor: &[(u32, u32)], design: &mut Design| -> Result<()> {
        for &(a, b) in factor {
            design.insert(SparseWord::new(vec![coord, (off + a, 1), (off + b, 1)])?)?;
        }
        Ok(())
    };
    for i in 0..n {
        with_factor((i, 1), &ptd.factors[i as usize], &mut design)?;
    }
    for j in 1..=k {
        with_factor((n, j), &ptd.factors[(n + j - 1) as usize], &mut design)?;
    }
    for j in 1..=l {
        with_factor((n + 1, j), &ptd.factors[(n + k + j - 1) as usize], &mut design)?;
    }
    for t in &ptd.triples {
        design.insert(SparseWord::new(t.iter().map(|&a| (off + a, 1)).collect())?)?;
    }
    let mut meta = Map::new();
    meta.insert("construction".into(), Value::from("recursive"));
    meta.insert("base".into(), Value::Object(base.metadata().clone()));
    meta.insert("m".into(), Value::from(ptd.m));
    Ok(design.with_metadata(meta))
}

/// Moves every binary coordinate ahead of the non-binary ones, keeping the
/// relative order within each group.
pub fn canonicalize_alphabet(d: &Design) -> Design {
    let sizes = d.alphabet().sizes();
    let order: Vec<usize> = (0..sizes.len())
        .filter(|&i| sizes[i] == 2)
        .chain((0..sizes.len()).filter(|&i| sizes[i] != 2))
        .collect();
    let mut new_pos = vec![0u32; sizes.len()];
    for (new, &old) in order.iter().enumerate() {
        new_pos[old] = new as u32;
    }
    let alphabet = MixedAlphabet::new(order.iter().map(|&i| sizes[i]).collect())
        .expect("permuted sizes are valid");
    let words = d.iter().map(|cw| {
        SparseWord::new(
            cw.entries()
                .iter()
                .map(|&(p, v)| (new_pos[p as usize], v))
                .collect(),
        )
        .expect("permutation keeps positions distinct")
    });
    Design::from_codewords(alphabet, words)
        .expect("permutation is a bijection on valid codewords")
        .with_metadata(d.metadata().clone())
}
