//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `U·M·W = D` with `U`, `W` unimodular and `D` diagonal, `d₁ | d₂ | ⋯`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
}

impl Smith {
    /// Diagonal entries, nonnegative.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    w: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.d.iter_mut().chain(self.w.iter_mut()) {
            r.swap(i, j);
        }
    }

    /// row_i -= q·row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.u] {
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
    }

    /// col_i -= q·col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.w] {
            for r in m.iter_mut() {
                let s = r[j].clone();
                r[i] -= q * &s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.d, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Deterministic pivoting: the smallest nonzero absolute value in the
/// remaining block, first in row-major order.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut s = Work {
        d: m.clone(),
        u: identity(rows),
        w: identity(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s.d[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| s.d[i][j].abs() < s.d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(s);
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..rows {
                let q = s.d[i][t].div_floor(&s.d[t][t]);
                if !q.is_zero() {
                    s.row_axpy(i, t, &q);
                }
                dirty |= !s.d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = s.d[t][j].div_floor(&s.d[t][t]);
                if !q.is_zero() {
                    s.col_axpy(j, t, &q);
                }
                dirty |= !s.d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold a row with a non-multiple into row t
            let piv = s.d[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.d[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => s.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if s.d[t][t].is_negative() {
            s.negate_row(t);
        }
    }
    finish(s)
}

fn finish(s: Work) -> Smith {
    Smith {
        u: s.u,
        d: s.d,
        w: s.w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &IntMatrix) -> BigInt {
        // Laplace expansion; test matrices are small
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let s = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                s * &m[0][j] * det(&minor)
            })
            .sum()
    }

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(matmul(&matmul(&s.u, m), &s.w), s.d);
        assert_eq!(det(&s.u).abs(), BigInt::one());
        assert_eq!(det(&s.w).abs(), BigInt::one());
        for (i, r) in s.d.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                assert!(i == j || x.is_zero());
            }
        }
        let inv = s.invariants();
        for pair in inv.windows(2) {
            assert!(pair[1].is_zero() || pair[1].is_multiple_of(&pair[0]) && !pair[0].is_zero());
        }
        s
    }

    #[test]
    fn examples() {
        let s = check(&int_matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(check(&int_matrix(&[vec![0]])).invariants(), vec![BigInt::zero()]);
        let s = check(&int_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(s.invariants(), vec![BigInt::one(); 3]);
    }

    #[test]
    fn rectangular() {
        let s = check(&int_matrix(&[vec![1], vec![-1]]));
        assert_eq!(s.invariants(), vec![BigInt::one()]);
        check(&int_matrix(&[vec![4, 6, 8], vec![6, 9, 12]]));
    }
}
