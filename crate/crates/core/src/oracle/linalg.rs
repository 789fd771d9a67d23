//! Dense linear algebra over F2 on packed 64-bit rows.

/// A system `A x = b_k` for several right-hand sides at once. Rows are
/// equations; the first `unknowns` columns are coefficients and the remaining
/// columns hold the right-hand sides.
#[derive(Debug, Clone)]
pub struct LinearSystemF2 {
    words: usize,
    unknowns: usize,
    rhs: usize,
    rows: Vec<Vec<u64>>,
}

fn get(row: &[u64], c: usize) -> bool {
    row[c / 64] >> (c % 64) & 1 == 1
}

fn flip(row: &mut [u64], c: usize) {
    row[c / 64] ^= 1 << (c % 64);
}

impl LinearSystemF2 {
    pub fn new(equations: usize, unknowns: usize, rhs: usize) -> Self {
        let words = (unknowns + rhs).div_ceil(64).max(1);
        Self {
            words,
            unknowns,
            rhs,
            rows: vec![vec![0; words]; equations],
        }
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Toggles coefficient `(eq, var)`.
    pub fn flip_coeff(&mut self, eq: usize, var: usize) {
        assert!(var < self.unknowns);
        flip(&mut self.rows[eq], var);
    }

    /// Toggles entry `eq` of right-hand side `k`.
    pub fn flip_rhs(&mut self, eq: usize, k: usize) {
        assert!(k < self.rhs);
        flip(&mut self.rows[eq], self.unknowns + k);
    }

    /// Gauss-Jordan elimination on the coefficient block, pivoting on the
    /// lowest available column. Returns the pivot column of each leading row.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.unknowns {
            let Some(found) = (next..self.rows.len()).find(|&r| get(&self.rows[r], col)) else {
                continue;
            };
            self.rows.swap(next, found);
            let (head, tail) = self.rows.split_at_mut(next);
            let (pivot, tail) = tail.split_first_mut().expect("pivot row");
            let pivot = &*pivot;
            let start = col / 64;
            for row in head.iter_mut().chain(tail.iter_mut()) {
                if get(row, col) {
                    for w in start..self.words {
                        row[w] ^= pivot[w];
                    }
                }
            }
            pivots.push(col);
            next += 1;
            if next == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.eliminate().len()
    }

    /// One solution per right-hand side, or `None` where it is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(mut self) -> Vec<Option<Vec<bool>>> {
        let pivots = self.eliminate();
        let r = pivots.len();
        (0..self.rhs)
            .map(|k| {
                let c = self.unknowns + k;
                if self.rows[r..].iter().any(|row| get(row, c)) {
                    return None;
                }
                let mut x = vec![false; self.unknowns];
                for (row, &p) in self.rows[..r].iter().zip(&pivots) {
                    x[p] = get(row, c);
                }
                Some(x)
            })
            .collect()
    }
}

/// Rank of a list of packed rows, each `words` long.
pub fn rank_of_rows(rows: Vec<Vec<u64>>, columns: usize) -> usize {
    let mut sys = LinearSystemF2::new(0, columns, 0);
    sys.rows = rows;
    sys.rank()
}
