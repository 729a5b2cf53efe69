//! Dancing-links exact cover (Algorithm X) with the minimum-remaining-values
//! item choice and a node budget. Ties go to the lowest item index and
//! options are tried in insertion order, so the search is deterministic.

pub struct ExactCover {
    // Node arrays. Nodes 0..=items are the root and item headers.
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    /// Header node of each node's column.
    col: Vec<usize>,
    /// Option index of each non-header node.
    row: Vec<usize>,
    size: Vec<usize>,
    items: usize,
    options: usize,
}

/// Outcome of [`ExactCover::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Solution(Vec<usize>),
    NoSolution,
    Exhausted,
}

impl ExactCover {
    pub fn new(items: usize) -> Self {
        let n = items + 1;
        let mut ec = Self {
            left: (0..n).map(|i| if i == 0 { items } else { i - 1 }).collect(),
            right: (0..n).map(|i| if i == items { 0 } else { i + 1 }).collect(),
            up: (0..n).collect(),
            down: (0..n).collect(),
            col: (0..n).collect(),
            row: vec![usize::MAX; n],
            size: vec![0; n],
            items,
            options: 0,
        };
        if items == 0 {
            ec.left[0] = 0;
            ec.right[0] = 0;
        }
        ec
    }

    /// Adds an option covering the given 0-based items and returns its index.
    pub fn add_option(&mut self, items: &[usize]) -> usize {
        let id = self.options;
        self.options += 1;
        let first = self.left.len();
        for (k, &item) in items.iter().enumerate() {
            assert!(item < self.items, "item {item} out of range");
            let header = item + 1;
            let node = self.left.len();
            let prev = if k == 0 { node } else { node - 1 };
            self.left.push(prev);
            self.right.push(first);
            if k > 0 {
                self.right[prev] = node;
                self.left[first] = node;
            }
            let above = self.up[header];
            self.up.push(above);
            self.down.push(header);
            self.down[above] = node;
            self.up[header] = node;
            self.col.push(header);
            self.row.push(id);
            self.size[header] += 1;
        }
        id
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Selects an option up front, as if the search had chosen it.
    pub fn preselect(&mut self, option: usize, chosen: &mut Vec<usize>) {
        let node = self
            .row
            .iter()
            .position(|&r| r == option)
            .expect("option exists");
        let mut j = node;
        loop {
            self.cover(self.col[j]);
            j = self.right[j];
            if j == node {
                break;
            }
        }
        chosen.push(option);
    }

    /// Finds the first exact cover, spending at most `budget` option choices.
    /// `nodes` receives the number of choices made.
    pub fn solve(&mut self, mut chosen: Vec<usize>, budget: u64, nodes: &mut u64) -> Solve {
        match self.search(&mut chosen, budget, nodes) {
            Some(true) => Solve::Solution(chosen),
            Some(false) => Solve::NoSolution,
            None => Solve::Exhausted,
        }
    }

    fn search(&mut self, chosen: &mut Vec<usize>, budget: u64, nodes: &mut u64) -> Option<bool> {
        if self.right[0] == 0 {
            return Some(true);
        }
        let mut c = self.right[0];
        let mut best = c;
        while c != 0 {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        let c = best;
        if self.size[c] == 0 {
            return Some(false);
        }
        self.cover(c);
        let mut r = self.down[c];
        while r != c {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            chosen.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            let res = self.search(chosen, budget, nodes);
            if res != Some(false) {
                return res;
            }
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            chosen.pop();
            r = self.down[r];
        }
        self.uncover(c);
        Some(false)
    }
}
