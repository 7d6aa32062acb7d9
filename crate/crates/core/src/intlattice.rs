//! Sublattices of `Z^k` given by generators, with exact membership through a
//! row-style Hermite normal form.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    rank: usize,
    generators: Vec<Vec<i64>>,
    /// Non-zero rows in echelon form with positive pivots; entries above each
    /// pivot reduced into `[0, pivot)`.
    hnf: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl IntegerLattice {
    pub fn new(rank: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        for g in &generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: g.len(),
                });
            }
        }
        let mut rows: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..rank {
            // Fold every lower row into row `top` with unimodular 2x2 steps.
            for r in top + 1..rows.len() {
                if rows[r][col] == 0 {
                    continue;
                }
                let (a, b) = (rows[top][col], rows[r][col]);
                let (g, x, y) = ext_gcd(a, b);
                let (u, v) = (a / g, b / g);
                let new_top: Vec<i128> =
                    (0..rank).map(|c| x * rows[top][c] + y * rows[r][c]).collect();
                let new_r: Vec<i128> =
                    (0..rank).map(|c| -v * rows[top][c] + u * rows[r][c]).collect();
                rows[top] = new_top;
                rows[r] = new_r;
            }
            if top < rows.len() && rows[top][col] != 0 {
                if rows[top][col] < 0 {
                    rows[top].iter_mut().for_each(|x| *x = -*x);
                }
                let p = rows[top][col];
                for r in 0..top {
                    let q = rows[r][col].div_euclid(p);
                    if q != 0 {
                        for c in 0..rank {
                            rows[r][c] -= q * rows[top][c];
                        }
                    }
                }
                pivots.push(col);
                top += 1;
            }
        }
        rows.truncate(top);
        Ok(IntegerLattice {
            rank,
            generators,
            hnf: rows,
            pivots,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn hnf(&self) -> &[Vec<i128>] {
        &self.hnf
    }

    /// Rank of the sublattice itself.
    pub fn dimension(&self) -> usize {
        self.hnf.len()
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        Ok(self.contains_wide(&v.iter().map(|&x| x as i128).collect::<Vec<_>>()))
    }

    pub(crate) fn contains_wide(&self, v: &[i128]) -> bool {
        let mut w = v.to_vec();
        let mut row = 0;
        for col in 0..self.rank {
            if row < self.pivots.len() && self.pivots[row] == col {
                let p = self.hnf[row][col];
                if w[col] % p != 0 {
                    return false;
                }
                let q = w[col] / p;
                for c in col..self.rank {
                    w[c] -= q * self.hnf[row][c];
                }
                row += 1;
            } else if w[col] != 0 {
                return false;
            }
        }
        true
    }

    /// Non-negative generator of `(N : Z^k) = { r | r Z^k ⊆ N }`. Zero unless
    /// the lattice has full rank.
    pub fn residue_of_ambient(&self) -> u128 {
        if self.dimension() < self.rank {
            return 0;
        }
        let det: i128 = self.hnf.iter().enumerate().map(|(i, r)| r[i]).product();
        let det = det.unsigned_abs();
        let mut divisors: Vec<u128> = (1..)
            .take_while(|d: &u128| d * d <= det)
            .filter(|d| det % d == 0)
            .flat_map(|d| [d, det / d])
            .collect();
        divisors.sort_unstable();
        divisors.dedup();
        (0..self.rank).fold(1u128, |acc, j| {
            let t = divisors
                .iter()
                .copied()
                .find(|&t| {
                    let mut e = vec![0i128; self.rank];
                    e[j] = t as i128;
                    self.contains_wide(&e)
                })
                .expect("det * e_j lies in a full-rank lattice");
            acc / gcd(acc, t) * t
        })
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
