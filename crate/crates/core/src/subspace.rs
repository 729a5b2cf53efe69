//! Perfect mixed codes from a partition of the nonzero vectors of `F_2^N`
//! into two complementary coordinate subspaces and singletons.
//!
//! With `N = k' + l'`, the cells are every nonzero vector outside the two
//! subspaces (as singletons, in ascending order), then the nonzero vectors
//! of `span(e_0..e_{k'-1})`, then those of `span(e_{k'}..e_{N-1})`. A word
//! picks zero or one element from each cell; it is a codeword when the picks
//! XOR to zero. Its weight-3 codewords form an
//! `MS(2,3, Z_2^m x Z_{2^k'} x Z_{2^l'})` with `m = (2^k' - 1)(2^l' - 1)`.

use serde_json::{Map, Value};

use crate::error::{MstsError, Result};
use crate::model::{Design, MixedAlphabet, SparseWord};

/// An element of `F_2^N`, `N <= 16`, as a bit vector; addition is XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryFieldElement(pub u32);

impl std::ops::Add for BinaryFieldElement {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl BinaryFieldElement {
    pub const ZERO: Self = Self(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub const MAX_DIMENSION: u32 = 16;

/// Largest alphabet [`full_perfect_code`] will enumerate.
pub const FULL_CODE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Singleton(BinaryFieldElement),
    /// Nonzero vectors of the coordinate subspace spanned by
    /// `e_shift..e_{shift+dim-1}`.
    Subspace { shift: u32, dim: u32 },
}

impl Cell {
    /// Number of nonzero elements; the coordinate alphabet is one larger.
    pub fn size(&self) -> u32 {
        match self {
            Cell::Singleton(_) => 1,
            Cell::Subspace { dim, .. } => (1 << dim) - 1,
        }
    }

    /// Value-map inverse: the field element carried by `value` (0 maps to 0).
    pub fn element(&self, value: u32) -> BinaryFieldElement {
        match *self {
            _ if value == 0 => BinaryFieldElement::ZERO,
            Cell::Singleton(e) => e,
            Cell::Subspace { shift, .. } => BinaryFieldElement(value << shift),
        }
    }

    /// Value map for a nonzero element of this cell.
    pub fn value(&self, e: BinaryFieldElement) -> u32 {
        match *self {
            Cell::Singleton(_) => 1,
            Cell::Subspace { shift, .. } => e.0 >> shift,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePartition {
    kprime: u32,
    lprime: u32,
    cells: Vec<Cell>,
    /// Cell index of every vector; entry 0 is unused.
    cell_of: Vec<u32>,
}

/// The partition with subspaces `span(e_0..e_{k'-1})` and
/// `span(e_{k'}..e_{N-1})`.
pub fn complementary_partition(kprime: u32, lprime: u32) -> Result<SubspacePartition> {
    if kprime == 0 || lprime == 0 || kprime + lprime > MAX_DIMENSION {
        return Err(MstsError::InvalidParameters(format!(
            "need 1 <= k', 1 <= l', k' + l' <= {MAX_DIMENSION}; got k' = {kprime}, l' = {lprime}"
        )));
    }
    let dim = kprime + lprime;
    let low = (1u32 << kprime) - 1;
    let mut cells = Vec::new();
    let mut cell_of = vec![0u32; 1 << dim];
    for v in 1..(1u32 << dim) {
        if v & low != 0 && v & !low != 0 {
            cell_of[v as usize] = cells.len() as u32;
            cells.push(Cell::Singleton(BinaryFieldElement(v)));
        }
    }
    let first = cells.len() as u32;
    cells.push(Cell::Subspace {
        shift: 0,
        dim: kprime,
    });
    cells.push(Cell::Subspace {
        shift: kprime,
        dim: lprime,
    });
    for v in 1..(1u32 << dim) {
        if v & !low == 0 {
            cell_of[v as usize] = first;
        } else if v & low == 0 {
            cell_of[v as usize] = first + 1;
        }
    }
    Ok(SubspacePartition {
        kprime,
        lprime,
        cells,
        cell_of,
    })
}

impl SubspacePartition {
    pub fn dimension(&self) -> u32 {
        self.kprime + self.lprime
    }

    pub fn kprime(&self) -> u32 {
        self.kprime
    }

    pub fn lprime(&self) -> u32 {
        self.lprime
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of singleton cells, `(2^k' - 1)(2^l' - 1)`.
    pub fn singleton_count(&self) -> u32 {
        self.cells.len() as u32 - 2
    }

    pub fn cell_of(&self, e: BinaryFieldElement) -> Option<u32> {
        (!e.is_zero()).then(|| self.cell_of[e.0 as usize])
    }

    /// `Z_2^m x Z_{2^k'} x Z_{2^l'}`.
    pub fn alphabet(&self) -> MixedAlphabet {
        MixedAlphabet::new(self.cells.iter().map(|c| c.size() + 1).collect())
            .expect("cell sizes are at least 1")
    }

    fn metadata(&self) -> Map<String, Value> {
        let mut meta = Map::new();
        meta.insert("construction".into(), Value::from("subspace-partition"));
        meta.insert("kprime".into(), Value::from(self.kprime));
        meta.insert("lprime".into(), Value::from(self.lprime));
        meta
    }
}

/// All weight-3 codewords: three elements from distinct cells summing to 0.
pub fn weight3_codewords(p: &SubspacePartition) -> Design {
    let top = 1u32 << p.dimension();
    let mut design = Design::new(p.alphabet());
    for a in 1..top {
        for b in (a + 1)..top {
            let c = a ^ b;
            if c <= b {
                continue;
            }
            let cells = [a, b, c].map(|v| p.cell_of[v as usize]);
            if cells[0] == cells[1] || cells[0] == cells[2] || cells[1] == cells[2] {
                continue;
            }
            let entries = [a, b, c]
                .iter()
                .zip(cells)
                .map(|(&v, cell)| (cell, p.cells[cell as usize].value(BinaryFieldElement(v))))
                .collect();
            design
                .insert(SparseWord::new(entries).expect("distinct cells"))
                .expect("each triple is emitted once");
        }
    }
    design.with_metadata(p.metadata())
}

/// The full 1-perfect code as dense value vectors, in lexicographic order.
pub fn full_perfect_code(p: &SubspacePartition) -> Result<Vec<Vec<u32>>> {
    let alphabet = p.alphabet();
    let total = alphabet.word_count().unwrap_or(u64::MAX);
    if total > FULL_CODE_LIMIT {
        return Err(MstsError::TooLarge {
            size: total,
            limit: FULL_CODE_LIMIT,
        });
    }
    let sizes = alphabet.sizes();
    let mut word = vec![0u32; sizes.len()];
    let mut code = Vec::new();
    loop {
        let sum = word
            .iter()
            .zip(&p.cells)
            .fold(BinaryFieldElement::ZERO, |acc, (&v, cell)| acc + cell.element(v));
        if sum.is_zero() {
            code.push(word.clone());
        }
        // Odometer increment, last coordinate fastest.
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return Ok(code);
            }
            i -= 1;
            word[i] += 1;
            if word[i] < sizes[i] {
                break;
            }
            word[i] = 0;
        }
    }
}

/// Converts a dense word to its sparse form.
pub fn to_sparse(word: &[u32]) -> SparseWord {
    SparseWord::new(
        word.iter()
            .enumerate()
            .filter(|&(_, &v)| v != 0)
            .map(|(i, &v)| (i as u32, v))
            .collect(),
    )
    .expect("distinct positions")
}
