use std::fmt;

/// A row-stochastic matrix whose entries are dyadic rationals `count / 2^denom_log2`
/// sharing one denominator. Deterministic transition matrices use `denom_log2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicMatrix {
    denom_log2: u32,
    counts: Vec<Vec<u64>>,
}

impl DyadicMatrix {
    /// Panics if a row does not sum to `2^denom_log2`.
    pub fn new(denom_log2: u32, counts: Vec<Vec<u64>>) -> Self {
        assert!(denom_log2 < 64);
        let m = DyadicMatrix { denom_log2, counts };
        for (r, row) in m.counts.iter().enumerate() {
            assert_eq!(
                row.iter().sum::<u64>(),
                m.denominator(),
                "row {r} is not stochastic"
            );
        }
        m
    }

    /// Deterministic 0/1 matrix with a single 1 per row at `next[row]`.
    pub fn deterministic(next: &[u32]) -> Self {
        let size = next.len();
        let counts = next
            .iter()
            .map(|&t| {
                let mut row = vec![0u64; size];
                row[t as usize] = 1;
                row
            })
            .collect();
        DyadicMatrix {
            denom_log2: 0,
            counts,
        }
    }

    pub fn size(&self) -> usize {
        self.counts.len()
    }

    pub fn denom_log2(&self) -> u32 {
        self.denom_log2
    }

    pub fn denominator(&self) -> u64 {
        1u64 << self.denom_log2
    }

    pub fn count(&self, row: usize, col: usize) -> u64 {
        self.counts[row][col]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn probability(&self, row: usize, col: usize) -> f64 {
        self.counts[row][col] as f64 / self.denominator() as f64
    }

    /// Entries as an `f64` matrix.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.size())
            .map(|r| (0..self.size()).map(|c| self.probability(r, c)).collect())
            .collect()
    }

    /// Exact equality of the represented rationals.
    pub fn same_values(&self, other: &DyadicMatrix) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (a, b) = (self.denom_log2, other.denom_log2);
        let shift = a.max(b);
        self.counts.iter().zip(&other.counts).all(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .all(|(&x, &y)| (x as u128) << (shift - a) == (y as u128) << (shift - b))
        })
    }
}

impl fmt::Display for DyadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.counts {
            let cells: Vec<String> = row
                .iter()
                .map(|&c| {
                    if self.denom_log2 == 0 || c == 0 {
                        c.to_string()
                    } else {
                        format!("{c}/{}", self.denominator())
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
