//! Mixed alphabets, sparse words, grid coordinates and designs.
//!
//! A word over `Z_{q_0} x ... x Z_{q_{n-1}}` is stored sparsely as its
//! nonzero entries `(position, value)` sorted by position. Values are labels
//! in `1..q_pos`; no arithmetic is performed on them here.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::{Map, Value};

use crate::error::{MstsError, Result};

/// Coordinate cardinalities `q_0, ..., q_{n-1}`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedAlphabet {
    sizes: Vec<u32>,
}

impl MixedAlphabet {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if let Some((pos, q)) = sizes.iter().enumerate().find(|(_, &q)| q < 2) {
            return Err(MstsError::InvalidAlphabet(format!(
                "coordinate {pos} has size {q}, expected at least 2"
            )));
        }
        Ok(Self { sizes })
    }

    /// `Z_2^n x Z_{k+1} x Z_{l+1}`, with the two non-binary coordinates at
    /// positions `n` and `n + 1`.
    pub fn mixed(n: u32, k: u32, l: u32) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(MstsError::InvalidAlphabet(format!(
                "group sizes must be positive, got k={k}, l={l}"
            )));
        }
        let mut sizes = vec![2; n as usize];
        sizes.push(k + 1);
        sizes.push(l + 1);
        Ok(Self { sizes })
    }

    /// `n` binary coordinates.
    pub fn binary(n: u32) -> Self {
        Self {
            sizes: vec![2; n as usize],
        }
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn size(&self, pos: u32) -> Option<u32> {
        self.sizes.get(pos as usize).copied()
    }

    /// Total number of words, `prod q_i`, or `None` on overflow.
    pub fn word_count(&self) -> Option<u64> {
        self.sizes
            .iter()
            .try_fold(1u64, |acc, &q| acc.checked_mul(u64::from(q)))
    }

    /// `sum_{i<j} (q_i - 1)(q_j - 1)`: the number of weight-2 words.
    pub fn weight2_count(&self) -> u64 {
        let mut total = 0u64;
        let mut prefix = 0u64;
        for &q in &self.sizes {
            let nz = u64::from(q - 1);
            total += prefix * nz;
            prefix += nz;
        }
        total
    }

    /// Checks that `word` is a valid word over this alphabet.
    pub fn validate(&self, word: &SparseWord) -> Result<()> {
        for &(pos, val) in word.entries() {
            let q = self.size(pos).ok_or_else(|| {
                MstsError::InvalidWord(format!(
                    "position {pos} out of range for alphabet of length {}",
                    self.len()
                ))
            })?;
            if val >= q {
                return Err(MstsError::InvalidWord(format!(
                    "value {val} at position {pos} exceeds {}",
                    q - 1
                )));
            }
        }
        Ok(())
    }

    /// Hamming distance between two words that must both be valid over
    /// this alphabet.
    pub fn distance(&self, u: &SparseWord, v: &SparseWord) -> Result<usize> {
        if self.validate(u).is_err() || self.validate(v).is_err() {
            return Err(MstsError::IncomparableWords);
        }
        Ok(u.distance(v))
    }
}

impl fmt::Display for MixedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut i = 0;
        let mut first = true;
        while i < self.sizes.len() {
            let q = self.sizes[i];
            let run = self.sizes[i..].iter().take_while(|&&s| s == q).count();
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{q}x{run}")?;
            } else {
                write!(f, "{q}")?;
            }
            i += run;
        }
        write!(f, "]")
    }
}

/// A word stored as its nonzero entries, sorted by strictly ascending position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SparseWord {
    entries: Vec<(u32, u32)>,
}

impl SparseWord {
    /// Builds a word from `(position, value)` pairs in any order.
    ///
    /// Zero values and repeated positions are rejected.
    pub fn new(mut entries: Vec<(u32, u32)>) -> Result<Self> {
        entries.sort_unstable();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(MstsError::InvalidWord(format!(
                    "position {} appears twice",
                    w[0].0
                )));
            }
        }
        if let Some(&(pos, _)) = entries.iter().find(|e| e.1 == 0) {
            return Err(MstsError::InvalidWord(format!(
                "zero value stored at position {pos}"
            )));
        }
        Ok(Self { entries })
    }

    /// Entries must already be sorted, distinct and nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        Self { entries }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    pub fn value_at(&self, pos: u32) -> u32 {
        self.entries
            .binary_search_by_key(&pos, |e| e.0)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn positions(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    /// Number of positions where the words differ, absent entries read as 0.
    pub fn distance(&self, other: &SparseWord) -> usize {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j, mut d) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    d += 1;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    d += 1;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        d += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        d + (a.len() - i) + (b.len() - j)
    }

    /// The three weight-2 words obtained by dropping one entry of a
    /// weight-3 word.
    pub fn sub_pairs(&self) -> impl Iterator<Item = SparseWord> + '_ {
        let e = &self.entries;
        let n = e.len();
        (0..n).flat_map(move |i| {
            ((i + 1)..n).map(move |j| SparseWord::from_sorted_unchecked(vec![e[i], e[j]]))
        })
    }
}

impl fmt::Display for SparseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({p},{v})")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SparseWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for &(p, v) in &self.entries {
            seq.serialize_element(&[p, v])?;
        }
        seq.end()
    }
}

/// Whether codeword `c` covers the weight-2 word `x`, i.e. `d(x, c) = 1`.
pub fn covers(c: &SparseWord, x: &SparseWord) -> Result<bool> {
    if c.weight() != 3 {
        return Err(MstsError::Contract(format!(
            "covering codeword must have weight 3, got {}",
            c.weight()
        )));
    }
    if x.weight() != 2 {
        return Err(MstsError::Contract(format!(
            "covered word must have weight 2, got {}",
            x.weight()
        )));
    }
    Ok(x.entries().iter().all(|&(p, v)| c.value_at(p) == v))
}

/// Every weight-2 word over `alphabet`, each exactly once, in lexicographic
/// order of `(pos_a, val_a, pos_b, val_b)`.
pub fn enumerate_weight2_words(alphabet: &MixedAlphabet) -> impl Iterator<Item = SparseWord> + '_ {
    let sizes = alphabet.sizes();
    let n = sizes.len() as u32;
    (0..n).flat_map(move |i| {
        (1..sizes[i as usize]).flat_map(move |a| {
            ((i + 1)..n).flat_map(move |j| {
                (1..sizes[j as usize])
                    .map(move |b| SparseWord::from_sorted_unchecked(vec![(i, a), (j, b)]))
            })
        })
    })
}

/// A point `[row, col]` of `Z_k x Z_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub row: u32,
    pub col: u32,
}

impl GridPoint {
    pub const fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.row, self.col)
    }
}

/// The `k x l` grid that indexes the first `k * l` binary coordinates,
/// flattened row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub rows: u32,
    pub cols: u32,
}

impl Grid {
    pub const fn new(rows: u32, cols: u32) -> Self {
        Self { rows, cols }
    }

    pub fn len(&self) -> u32 {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat_position(&self, p: GridPoint) -> Result<u32> {
        if p.row >= self.rows || p.col >= self.cols {
            return Err(MstsError::Contract(format!(
                "grid point {p} outside Z_{} x Z_{}",
                self.rows, self.cols
            )));
        }
        Ok(p.row * self.cols + p.col)
    }

    pub fn grid_point(&self, pos: u32) -> Result<GridPoint> {
        if pos >= self.len() {
            return Err(MstsError::Contract(format!(
                "position {pos} outside a grid of {} points",
                self.len()
            )));
        }
        Ok(GridPoint::new(pos / self.cols, pos % self.cols))
    }

    /// Row-major flattening for points already known to be in range.
    pub(crate) fn flat(&self, row: u32, col: u32) -> u32 {
        debug_assert!(row < self.rows && col < self.cols);
        row * self.cols + col
    }
}

/// A duplicate-free set of weight-3 codewords over an alphabet.
///
/// Metadata records provenance only; equality ignores it.
#[derive(Debug, Clone)]
pub struct Design {
    alphabet: MixedAlphabet,
    codewords: BTreeSet<SparseWord>,
    metadata: Map<String, Value>,
}

impl PartialEq for Design {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.codewords == other.codewords
    }
}

impl Eq for Design {}

impl Design {
    pub fn new(alphabet: MixedAlphabet) -> Self {
        Self {
            alphabet,
            codewords: BTreeSet::new(),
            metadata: Map::new(),
        }
    }

    pub fn from_codewords<I>(alphabet: MixedAlphabet, codewords: I) -> Result<Self>
    where
        I: IntoIterator<Item = SparseWord>,
    {
        let mut design = Self::new(alphabet);
        for cw in codewords {
            design.insert(cw)?;
        }
        Ok(design)
    }

    /// Adds a codeword; rejects words of the wrong weight, invalid words and
    /// duplicates.
    pub fn insert(&mut self, cw: SparseWord) -> Result<()> {
        if cw.weight() != 3 {
            return Err(MstsError::InvalidWord(format!(
                "codeword {cw} has weight {}, expected 3",
                cw.weight()
            )));
        }
        self.alphabet.validate(&cw)?;
        if self.codewords.contains(&cw) {
            return Err(MstsError::InvalidWord(format!("duplicate codeword {cw}")));
        }
        self.codewords.insert(cw);
        Ok(())
    }

    pub fn remove(&mut self, cw: &SparseWord) -> bool {
        self.codewords.remove(cw)
    }

    pub fn alphabet(&self) -> &MixedAlphabet {
        &self.alphabet
    }

    pub fn codewords(&self) -> &BTreeSet<SparseWord> {
        &self.codewords
    }

    pub fn contains(&self, cw: &SparseWord) -> bool {
        self.codewords.contains(cw)
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn metadata(&self) -> &Map<String, Value> {
        &self.metadata
    }

    pub fn metadata_mut(&mut self) -> &mut Map<String, Value> {
        &mut self.metadata
    }

    pub fn with_metadata(mut self, metadata: Map<String, Value>) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = &SparseWord> {
        self.codewords.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[(u32, u32)]) -> SparseWord {
        SparseWord::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(SparseWord::empty().distance(&SparseWord::empty()), 0);
        assert_eq!(
            w(&[(0, 1), (15, 1), (16, 1)]).distance(&w(&[(0, 1), (15, 1), (16, 2)])),
            1
        );
        assert_eq!(
            w(&[(0, 1), (15, 2), (16, 3)]).distance(&w(&[(1, 1), (15, 1), (16, 1)])),
            4
        );
    }

    #[test]
    fn distance_rejects_foreign_words() {
        let a = MixedAlphabet::mixed(15, 5, 3).unwrap();
        let ok = w(&[(0, 1), (15, 1), (16, 1)]);
        let bad = w(&[(0, 1), (15, 1), (17, 1)]);
        assert_eq!(a.distance(&ok, &ok), Ok(0));
        assert_eq!(a.distance(&ok, &bad), Err(MstsError::IncomparableWords));
        let big_value = w(&[(16, 4)]);
        assert!(a.distance(&ok, &big_value).is_err());
    }

    #[test]
    fn covers_examples() {
        let c = w(&[(0, 1), (15, 1), (16, 1)]);
        assert!(covers(&c, &w(&[(15, 1), (16, 1)])).unwrap());
        assert!(!covers(&c, &w(&[(15, 2), (16, 1)])).unwrap());
        let c = w(&[(0, 1), (1, 1), (2, 1)]);
        assert!(!covers(&c, &w(&[(0, 1), (3, 1)])).unwrap());
    }

    #[test]
    fn covers_rejects_wrong_weights() {
        let c = w(&[(0, 1), (1, 1), (2, 1)]);
        assert!(covers(&c, &c).is_err());
        assert!(covers(&w(&[(0, 1), (1, 1)]), &w(&[(0, 1), (1, 1)])).is_err());
    }

    #[test]
    fn sparse_word_rejects_bad_entries() {
        assert!(SparseWord::new(vec![(0, 0)]).is_err());
        assert!(SparseWord::new(vec![(3, 1), (3, 2)]).is_err());
        assert_eq!(
            SparseWord::new(vec![(5, 1), (2, 3)]).unwrap().entries(),
            &[(2, 3), (5, 1)]
        );
    }

    #[test]
    fn weight2_enumeration_counts() {
        let tiny = MixedAlphabet::new(vec![2, 2]).unwrap();
        let words: Vec<_> = enumerate_weight2_words(&tiny).collect();
        assert_eq!(words, vec![w(&[(0, 1), (1, 1)])]);

        let a = MixedAlphabet::mixed(9, 3, 3).unwrap();
        assert_eq!(enumerate_weight2_words(&a).count(), 99);
        assert_eq!(a.weight2_count(), 99);

        let a = MixedAlphabet::mixed(15, 5, 3).unwrap();
        assert_eq!(enumerate_weight2_words(&a).count(), 240);
        assert_eq!(a.weight2_count(), 240);
    }

    #[test]
    fn flat_position_examples() {
        let g = Grid::new(5, 3);
        assert_eq!(g.flat_position(GridPoint::new(0, 0)), Ok(0));
        assert_eq!(g.flat_position(GridPoint::new(4, 2)), Ok(14));
        assert_eq!(g.flat_position(GridPoint::new(2, 1)), Ok(7));
        assert!(g.flat_position(GridPoint::new(5, 0)).is_err());
        assert!(g.flat_position(GridPoint::new(0, 3)).is_err());
    }

    #[test]
    fn alphabet_rejects_unary_coordinates() {
        assert!(MixedAlphabet::new(vec![2, 1]).is_err());
        assert!(MixedAlphabet::mixed(3, 0, 1).is_err());
        let a = MixedAlphabet::mixed(3, 5, 3).unwrap();
        assert_eq!(a.sizes(), &[2, 2, 2, 6, 4]);
        assert_eq!(a.to_string(), "[2x3,6,4]");
    }

    #[test]
    fn design_rejects_duplicates_and_bad_weight() {
        let mut d = Design::new(MixedAlphabet::binary(3));
        d.insert(w(&[(0, 1), (1, 1), (2, 1)])).unwrap();
        assert!(d.insert(w(&[(0, 1), (1, 1), (2, 1)])).is_err());
        assert!(d.insert(w(&[(0, 1), (1, 1)])).is_err());
        assert!(d.insert(w(&[(0, 1), (1, 1), (3, 1)])).is_err());
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn design_equality_ignores_metadata() {
        let a = Design::from_codewords(MixedAlphabet::binary(3), [w(&[(0, 1), (1, 1), (2, 1)])])
            .unwrap();
        let mut meta = Map::new();
        meta.insert("construction".into(), Value::from("x"));
        let b = a.clone().with_metadata(meta);
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use std::collections::HashSet;

        fn word_over(sizes: Vec<u32>) -> impl Strategy<Value = SparseWord> {
            let per_coord: Vec<_> = sizes.into_iter().map(|q| 0..q).collect();
            per_coord.prop_map(|vals| {
                let entries = vals
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, v)| v != 0)
                    .map(|(p, v)| (p as u32, v))
                    .collect();
                SparseWord::new(entries).unwrap()
            })
        }

        fn alphabet_and_words() -> impl Strategy<Value = (Vec<u32>, SparseWord, SparseWord, SparseWord)> {
            prop::collection::vec(2u32..6, 1..10).prop_flat_map(|sizes| {
                (
                    Just(sizes.clone()),
                    word_over(sizes.clone()),
                    word_over(sizes.clone()),
                    word_over(sizes),
                )
            })
        }

        proptest! {
            #[test]
            fn distance_is_a_metric((_sizes, u, v, x) in alphabet_and_words()) {
                prop_assert_eq!(u.distance(&v), v.distance(&u));
                prop_assert_eq!(u.distance(&v) == 0, u == v);
                prop_assert!(u.distance(&x) <= u.distance(&v) + v.distance(&x));
            }

            #[test]
            fn covering_implies_distance_one((_sizes, u, v, _x) in alphabet_and_words()) {
                if u.weight() == 3 && v.weight() == 2 && covers(&u, &v).unwrap() {
                    prop_assert_eq!(u.distance(&v), 1);
                }
                if u.weight() == 3 && v.weight() == 2 && u.distance(&v) == 1 {
                    prop_assert!(covers(&u, &v).unwrap());
                }
            }

            #[test]
            fn weight2_enumeration_is_exact(sizes in prop::collection::vec(2u32..6, 0..=12)) {
                let a = MixedAlphabet::new(sizes.clone()).unwrap();
                let words: Vec<_> = enumerate_weight2_words(&a).collect();
                let unique: HashSet<_> = words.iter().cloned().collect();
                prop_assert_eq!(unique.len(), words.len());
                let mut closed = 0u64;
                for i in 0..sizes.len() {
                    for j in (i + 1)..sizes.len() {
                        closed += u64::from(sizes[i] - 1) * u64::from(sizes[j] - 1);
                    }
                }
                prop_assert_eq!(words.len() as u64, closed);
                for word in &words {
                    prop_assert_eq!(word.weight(), 2);
                    prop_assert!(a.validate(word).is_ok());
                }
            }

            #[test]
            fn flat_position_roundtrip(rows in 1u32..20, cols in 1u32..20, r in 0u32..20, c in 0u32..20) {
                let g = Grid::new(rows, cols);
                let p = GridPoint::new(r % rows, c % cols);
                let pos = g.flat_position(p).unwrap();
                prop_assert!(pos < rows * cols);
                prop_assert_eq!(g.grid_point(pos).unwrap(), p);
            }
        }
    }
}
