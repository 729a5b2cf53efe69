//! Shortest-length systems `MS(2,3, Z_2^n x Z_{k+1} x Z_{l+1})` with
//! `n = k * l`.
//!
//! The first `n` coordinates are the grid `Z_k x Z_l` flattened row-major;
//! coordinate `n` carries `Z_{k+1}` and coordinate `n + 1` carries
//! `Z_{l+1}`. The design is the union of four parts:
//!
//! * `C1` covers every pair `{(n,i), (n+1,j)}` through grid point `[i-1, j-1]`;
//! * `C2` and `C3` cover the remaining pairs `{[x,y], (n,i)}` and
//!   `{[x,y], (n+1,j)}` using near-one-factorizations of `Z_k` and `Z_l`;
//! * `C4` covers the grid pairs with distinct rows and distinct columns,
//!   six codewords per pair of triples from an STS(k) and an STS(l).

use serde_json::{Map, Value};

use crate::classical::{
    near_one_factorization, steiner_triple_system, Factorization, FactorizationKind, TripleSystem,
};
use crate::error::{MstsError, Result};
use crate::model::{Design, Grid, MixedAlphabet, SparseWord};

/// Parameters `k, l = 1 or 3 (mod 6)` of a shortest-length system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortestParams {
    k: u32,
    l: u32,
}

impl ShortestParams {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        let admissible = |v: u32| v % 6 == 1 || v % 6 == 3;
        if k % 6 == 5 && l % 6 == 5 {
            return Err(MstsError::InvalidParameters(format!(
                "k = {k} and l = {l} are both 5 (mod 6): no MSTS exists for any length"
            )));
        }
        if k % 2 == 0 || l % 2 == 0 {
            return Err(MstsError::InvalidParameters(format!(
                "k and l must be odd, got k = {k}, l = {l}"
            )));
        }
        if !admissible(k) || !admissible(l) {
            return Err(MstsError::Unsupported(format!(
                "k = {k}, l = {l}: the general construction needs k, l = 1 or 3 (mod 6)"
            )));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn n(&self) -> u32 {
        self.k * self.l
    }

    fn grid(&self) -> Grid {
        Grid::new(self.k, self.l)
    }

    pub fn alphabet(&self) -> MixedAlphabet {
        MixedAlphabet::mixed(self.n(), self.k, self.l).expect("k, l >= 1")
    }
}

/// `(k, l)` pairs for which the part builders accept input; unlike
/// [`ShortestParams::new`] this allows `5 (mod 6)`, since `C1`..`C3` do not
/// need a triple system.
#[derive(Debug, Clone, Copy)]
struct PartParams {
    k: u32,
    l: u32,
}

impl PartParams {
    fn odd(k: u32, l: u32) -> Result<Self> {
        if k % 2 == 0 || l % 2 == 0 {
            return Err(MstsError::InvalidParameters(format!(
                "k and l must be odd, got k = {k}, l = {l}"
            )));
        }
        Ok(Self { k, l })
    }

    fn n(&self) -> u32 {
        self.k * self.l
    }

    fn grid(&self) -> Grid {
        Grid::new(self.k, self.l)
    }
}

impl From<ShortestParams> for PartParams {
    fn from(p: ShortestParams) -> Self {
        Self { k: p.k, l: p.l }
    }
}

fn word(entries: Vec<(u32, u32)>) -> SparseWord {
    SparseWord::new(entries).expect("construction emits distinct nonzero positions")
}

pub fn build_c1(p: ShortestParams) -> Vec<SparseWord> {
    c1(p.into())
}

fn c1(p: PartParams) -> Vec<SparseWord> {
    let (n, grid) = (p.n(), p.grid());
    let mut out = Vec::with_capacity(n as usize);
    for i in 1..=p.k {
        for j in 1..=p.l {
            out.push(word(vec![(grid.flat(i - 1, j - 1), 1), (n, i), (n + 1, j)]));
        }
    }
    out
}

fn check_near_factorization(f: &Factorization, order: u32) -> Result<()> {
    if f.kind != FactorizationKind::NearOneFactorization || f.v != order || f.factors.len() != order as usize {
        return Err(MstsError::Contract(format!(
            "expected a near-one-factorization of Z_{order}, got {:?} of order {} with {} factors",
            f.kind,
            f.v,
            f.factors.len()
        )));
    }
    for (i, factor) in f.factors.iter().enumerate() {
        if f.isolated_point(i) != Some(i as u32)
            || factor.len() != ((order - 1) / 2) as usize
            || factor.iter().any(|&(a, b)| a == i as u32 || b == i as u32)
        {
            return Err(MstsError::Contract(format!(
                "factor {i} of the near-one-factorization does not isolate point {i}"
            )));
        }
    }
    Ok(())
}

/// `{[x,j], [y,j], (n,i)}` for `i` in `1..=k`, `j` in `Z_l`, `{x,y}` in `F_{i-1}`.
pub fn build_c2(p: ShortestParams, f: &Factorization) -> Result<Vec<SparseWord>> {
    c2(p.into(), f)
}

fn c2(p: PartParams, f: &Factorization) -> Result<Vec<SparseWord>> {
    check_near_factorization(f, p.k)?;
    let (n, grid) = (p.n(), p.grid());
    let mut out = Vec::new();
    for i in 1..=p.k {
        for j in 0..p.l {
            for &(x, y) in &f.factors[(i - 1) as usize] {
                out.push(word(vec![(grid.flat(x, j), 1), (grid.flat(y, j), 1), (n, i)]));
            }
        }
    }
    Ok(out)
}

/// `{[i,x], [i,y], (n+1,j)}` for `j` in `1..=l`, `i` in `Z_k`, `{x,y}` in `G_{j-1}`.
pub fn build_c3(p: ShortestParams, g: &Factorization) -> Result<Vec<SparseWord>> {
    c3(p.into(), g)
}

fn c3(p: PartParams, g: &Factorization) -> Result<Vec<SparseWord>> {
    check_near_factorization(g, p.l)?;
    let (n, grid) = (p.n(), p.grid());
    let mut out = Vec::new();
    for j in 1..=p.l {
        for i in 0..p.k {
            for &(x, y) in &g.factors[(j - 1) as usize] {
                out.push(word(vec![(grid.flat(i, x), 1), (grid.flat(i, y), 1), (n + 1, j)]));
            }
        }
    }
    Ok(out)
}

/// The six row/column pairings `{[i_a, j_s(a)]}` for every permutation `s`
/// of a column triple.
const PAIRINGS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn build_c4(p: ShortestParams, rows: &TripleSystem, cols: &TripleSystem) -> Result<Vec<SparseWord>> {
    for (sts, order) in [(rows, p.k), (cols, p.l)] {
        if sts.v != order || sts.triples.len() as u32 != order * (order - 1) / 6 {
            return Err(MstsError::Contract(format!(
                "expected an STS({order}), got {} triples on {} points",
                sts.triples.len(),
                sts.v
            )));
        }
    }
    let grid = p.grid();
    let mut out = Vec::with_capacity(6 * rows.triples.len() * cols.triples.len());
    for r in &rows.triples {
        for c in &cols.triples {
            for perm in PAIRINGS {
                out.push(word(
                    (0..3).map(|a| (grid.flat(r[a], c[perm[a]]), 1)).collect(),
                ));
            }
        }
    }
    Ok(out)
}

/// The four parts of a shortest-length system, kept apart for inspection.
#[derive(Debug, Clone)]
pub struct ShortestParts {
    pub c1: Vec<SparseWord>,
    pub c2: Vec<SparseWord>,
    pub c3: Vec<SparseWord>,
    pub c4: Vec<SparseWord>,
}

impl ShortestParts {
    pub fn len(&self) -> usize {
        self.c1.len() + self.c2.len() + self.c3.len() + self.c4.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn into_design(self, alphabet: MixedAlphabet) -> Result<Design> {
        Design::from_codewords(
            alphabet,
            self.c1.into_iter().chain(self.c2).chain(self.c3).chain(self.c4),
        )
    }
}

pub fn shortest_parts(p: ShortestParams) -> Result<ShortestParts> {
    let f = near_one_factorization(p.k)?;
    let g = near_one_factorization(p.l)?;
    let s1 = steiner_triple_system(p.k)?;
    let s2 = steiner_triple_system(p.l)?;
    Ok(ShortestParts {
        c1: build_c1(p),
        c2: build_c2(p, &f)?,
        c3: build_c3(p, &g)?,
        c4: build_c4(p, &s1, &s2)?,
    })
}

/// `MS(2,3, Z_2^{kl} x Z_{k+1} x Z_{l+1})` for `k, l = 1 or 3 (mod 6)`.
pub fn construct_shortest(k: u32, l: u32) -> Result<Design> {
    let p = ShortestParams::new(k, l)?;
    let design = shortest_parts(p)?.into_design(p.alphabet())?;
    let mut meta = Map::new();
    meta.insert("construction".into(), Value::from("shortest"));
    meta.insert("k".into(), Value::from(k));
    meta.insert("l".into(), Value::from(l));
    Ok(design.with_metadata(meta))
}

/// The replacement for `C4` at `k = 5`, `l = 3`, as `[row, col]` triples.
pub const EXAMPLE_5_3_C4: [[(u32, u32); 3]; 20] = [
    [(0, 0), (1, 1), (2, 2)],
    [(0, 0), (3, 1), (4, 2)],
    [(0, 0), (1, 2), (2, 1)],
    [(0, 0), (3, 2), (4, 1)],
    [(0, 1), (1, 2), (3, 0)],
    [(0, 1), (2, 0), (4, 2)],
    [(0, 1), (1, 0), (3, 2)],
    [(0, 1), (2, 2), (4, 0)],
    [(0, 2), (1, 1), (4, 0)],
    [(0, 2), (2, 0), (3, 1)],
    [(0, 2), (1, 0), (4, 1)],
    [(0, 2), (2, 1), (3, 0)],
    [(1, 0), (2, 1), (4, 2)],
    [(1, 0), (2, 2), (3, 1)],
    [(1, 1), (2, 0), (3, 2)],
    [(1, 1), (3, 0), (4, 2)],
    [(1, 2), (2, 0), (4, 1)],
    [(1, 2), (3, 1), (4, 0)],
    [(2, 1), (3, 2), (4, 0)],
    [(2, 2), (3, 0), (4, 1)],
];

/// Parts of the `k = 5`, `l = 3` system: generated `C1`..`C3` plus the fixed
/// 20-codeword replacement for `C4`.
pub fn example_5_3_parts() -> ShortestParts {
    let p = PartParams::odd(5, 3).expect("5 and 3 are odd");
    let grid = p.grid();
    let f = near_one_factorization(5).expect("5 is odd");
    let g = near_one_factorization(3).expect("3 is odd");
    let c4 = EXAMPLE_5_3_C4
        .iter()
        .map(|t| word(t.iter().map(|&(r, c)| (grid.flat(r, c), 1)).collect()))
        .collect();
    ShortestParts {
        c1: c1(p),
        c2: c2(p, &f).expect("rotational factorization is valid"),
        c3: c3(p, &g).expect("rotational factorization is valid"),
        c4,
    }
}

/// The 80-codeword `MS(2,3, Z_2^15 x Z_6 x Z_4)`.
pub fn embedded_example_5_3() -> Design {
    let design = example_5_3_parts()
        .into_design(MixedAlphabet::mixed(15, 5, 3).expect("valid alphabet"))
        .expect("example parts are disjoint and valid");
    let mut meta = Map::new();
    meta.insert("construction".into(), Value::from("example-5-3"));
    meta.insert("k".into(), Value::from(5));
    meta.insert("l".into(), Value::from(3));
    design.with_metadata(meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GridPoint;
    use std::collections::{BTreeSet, HashMap};

    /// Writes a codeword in the mixed grid notation: `[r,c]` points become
    /// binary entries at `r*l + c`, `(pos, val)` entries are taken as is.
    fn grid_word(l: u32, points: &[(u32, u32)], extra: &[(u32, u32)]) -> SparseWord {
        let g = Grid::new(u32::MAX, l);
        let mut e: Vec<_> = points
            .iter()
            .map(|&(r, c)| (g.flat_position(GridPoint::new(r, c)).unwrap(), 1))
            .collect();
        e.extend_from_slice(extra);
        SparseWord::new(e).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ShortestParams::new(3, 3).is_ok());
        assert!(ShortestParams::new(1, 7).is_ok());
        assert!(matches!(ShortestParams::new(5, 3), Err(MstsError::Unsupported(_))));
        assert!(matches!(ShortestParams::new(3, 11), Err(MstsError::Unsupported(_))));
        let err = ShortestParams::new(5, 5).unwrap_err();
        assert!(err.to_string().contains("5 (mod 6)"));
        assert!(matches!(ShortestParams::new(4, 3), Err(MstsError::InvalidParameters(_))));
    }

    #[test]
    fn c1_examples() {
        let parts = example_5_3_parts();
        assert!(parts.c1.contains(&grid_word(3, &[(0, 0)], &[(15, 1), (16, 1)])));
        assert!(parts.c1.contains(&grid_word(3, &[(4, 2)], &[(15, 5), (16, 3)])));
        let p = ShortestParams::new(1, 1).unwrap();
        assert_eq!(build_c1(p), vec![grid_word(1, &[(0, 0)], &[(1, 1), (2, 1)])]);
        assert_eq!(build_c1(ShortestParams::new(3, 3).unwrap()).len(), 9);
    }

    #[test]
    fn c2_c3_examples() {
        let parts = example_5_3_parts();
        assert!(parts.c2.contains(&grid_word(3, &[(1, 0), (4, 0)], &[(15, 1)])));
        assert!(parts.c2.contains(&grid_word(3, &[(2, 2), (3, 2)], &[(15, 1)])));
        assert!(parts.c3.contains(&grid_word(3, &[(0, 1), (0, 2)], &[(16, 1)])));
        assert!(parts.c3.contains(&grid_word(3, &[(4, 0), (4, 1)], &[(16, 3)])));

        let p = ShortestParams::new(1, 7).unwrap();
        assert!(build_c2(p, &near_one_factorization(1).unwrap()).unwrap().is_empty());
        let p = ShortestParams::new(7, 1).unwrap();
        assert!(build_c3(p, &near_one_factorization(1).unwrap()).unwrap().is_empty());

        let p = ShortestParams::new(3, 3).unwrap();
        let f = near_one_factorization(3).unwrap();
        assert_eq!(build_c2(p, &f).unwrap().len(), 9);
        assert_eq!(build_c3(p, &f).unwrap().len(), 9);
    }

    #[test]
    fn c2_rejects_wrong_factorization() {
        let p = ShortestParams::new(3, 3).unwrap();
        assert!(build_c2(p, &near_one_factorization(5).unwrap()).is_err());
        let of = crate::classical::one_factorization(4).unwrap();
        assert!(build_c2(p, &of).is_err());
        let mut f = near_one_factorization(3).unwrap();
        f.factors.swap(0, 1);
        assert!(build_c2(p, &f).is_err());
    }

    #[test]
    fn c4_counts() {
        let p = ShortestParams::new(3, 3).unwrap();
        let s3 = steiner_triple_system(3).unwrap();
        assert_eq!(build_c4(p, &s3, &s3).unwrap().len(), 6);
        let p = ShortestParams::new(7, 3).unwrap();
        let s7 = steiner_triple_system(7).unwrap();
        assert_eq!(build_c4(p, &s7, &s3).unwrap().len(), 42);
        assert!(build_c4(p, &s3, &s3).is_err());
    }

    #[test]
    fn c4_single_triple_pair_covers_cross_pairs_once() {
        let p = ShortestParams::new(3, 3).unwrap();
        let s3 = steiner_triple_system(3).unwrap();
        let words = build_c4(p, &s3, &s3).unwrap();
        let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
        for w in &words {
            let pos: Vec<u32> = w.positions().collect();
            for (a, b) in [(pos[0], pos[1]), (pos[0], pos[2]), (pos[1], pos[2])] {
                *counts.entry((a, b)).or_default() += 1;
            }
        }
        let mut expected = BTreeSet::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                for x in 0..3u32 {
                    for y in 0..3u32 {
                        if a != b && x != y {
                            let (p1, p2) = (a * 3 + x, b * 3 + y);
                            expected.insert((p1.min(p2), p1.max(p2)));
                        }
                    }
                }
            }
        }
        assert_eq!(expected.len(), 18);
        assert_eq!(counts.keys().copied().collect::<BTreeSet<_>>(), expected);
        assert!(counts.values().all(|&c| c == 1));
    }

    #[test]
    fn construct_counts() {
        assert_eq!(construct_shortest(3, 3).unwrap().len(), 33);
        assert_eq!(construct_shortest(7, 3).unwrap().len(), 147);
        let d = construct_shortest(1, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.alphabet().sizes(), &[2, 2, 2]);
        assert!(construct_shortest(5, 3).is_err());
    }

    #[test]
    fn example_contents() {
        let d = embedded_example_5_3();
        assert_eq!(d.len(), 80);
        assert!(d.contains(&grid_word(3, &[(0, 0), (1, 1), (2, 2)], &[])));
        assert!(d.contains(&grid_word(3, &[(2, 2), (3, 0), (4, 1)], &[])));
        let parts = example_5_3_parts();
        assert_eq!(
            [parts.c1.len(), parts.c2.len(), parts.c3.len(), parts.c4.len()],
            [15, 30, 15, 20]
        );
    }
}
