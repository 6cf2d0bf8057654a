//! Exact dense linear algebra over the scalar fields.
//!
//! Kernels over Q run fraction-free (Bareiss) on integer matrices obtained
//! by clearing row denominators; kernels over F_p use plain Gauss-Jordan.
//! Pivoting is deterministic: columns are scanned left to right and the
//! first row with a nonzero entry wins, so bases are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{FieldKind, Scalar};
use crate::Error;

/// Basis of the right nullspace of the matrix (rows of length `ncols`).
/// Each basis vector is scaled so its first nonzero entry is 1.
pub fn nullspace(field: FieldKind, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    match field {
        FieldKind::Rational => nullspace_q(rows, ncols),
        FieldKind::Prime(_) => nullspace_fp(field, rows, ncols),
    }
}

fn nullspace_fp(field: FieldKind, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inverse();
        for j in c..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let s = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    // Free columns parameterize the kernel; read dependencies off the RREF.
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivot_cols.binary_search(&c).is_ok();
    for free in 0..ncols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![Scalar::zero(field); ncols];
        v[free] = Scalar::one(field);
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            if ri < m.len() {
                v[pc] = -&m[ri][free];
            }
        }
        basis.push(normalize_first_one(v));
    }
    basis
}

/// Fraction-free kernel over Q. Row denominators are cleared up front; the
/// elimination then stays in integers with exact divisions (Bareiss).
fn nullspace_q(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for s in row {
                let r = s.as_rational().expect("rational matrix");
                lcm = lcm.lcm(r.denom());
            }
            row.iter()
                .map(|s| {
                    let r = s.as_rational().expect("rational matrix");
                    r.numer() * (&lcm / r.denom())
                })
                .collect()
        })
        .collect();
    let nrows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let pivot = m[r][c].clone();
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let t = &m[i][j] * &pivot - &m[i][c] * &m[r][j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division is exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        pivot_cols.push(c);
        pivot_rows.push(r);
        prev = pivot;
        r += 1;
        if r == nrows {
            break;
        }
    }
    // Back-substitute over Q for each free column.
    let rank = pivot_cols.len();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.binary_search(&free).is_ok() {
            continue;
        }
        let mut v: Vec<BigRational> = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for k in (0..rank).rev() {
            let (ri, ci) = (pivot_rows[k], pivot_cols[k]);
            // m[ri][ci] * v[ci] + sum_{j>ci} m[ri][j] * v[j] = 0
            let mut acc = BigRational::zero();
            for j in (ci + 1)..ncols {
                if !v[j].is_zero() && !m[ri][j].is_zero() {
                    acc += BigRational::from_integer(m[ri][j].clone()) * &v[j];
                }
            }
            v[ci] = -acc / BigRational::from_integer(m[ri][ci].clone());
        }
        basis.push(normalize_first_one(
            v.into_iter().map(Scalar::Q).collect::<Vec<_>>(),
        ));
    }
    basis
}

fn normalize_first_one(mut v: Vec<Scalar>) -> Vec<Scalar> {
    if let Some(first) = v.iter().find(|s| !s.is_zero()).cloned() {
        if !first.is_one() {
            let inv = first.inverse();
            for s in v.iter_mut() {
                *s = &*s * &inv;
            }
        }
    }
    v
}

/// Solves the square system `a * x = b` by Gaussian elimination with the
/// deterministic first-nonzero pivot rule. `Err(SingularMatrix)` when rank
/// deficient.
pub fn solve_square(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Vec<Scalar>, Error> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Err(Error::SingularMatrix);
        };
        m.swap(c, pr);
        let inv = m[c][c].inverse();
        for j in c..=n {
            m[c][j] = &m[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let s = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - &s;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_integer(FieldKind::Rational, v)
    }

    fn qr(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(FieldKind::Rational, n, d).unwrap()
    }

    #[test]
    fn nullspace_q_rank_one() {
        // Two proportional rows: kernel has dimension 2 and every basis
        // vector sums against (1,1,1) to zero.
        let rows = vec![vec![q(1), q(1), q(1)], vec![q(2), q(2), q(2)]];
        let basis = nullspace(FieldKind::Rational, &rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s = &(&v[0] + &v[1]) + &v[2];
            assert!(s.is_zero(), "vector in kernel");
            let first = v.iter().find(|x| !x.is_zero()).unwrap();
            assert!(first.is_one(), "normalized leading entry");
        }
    }

    #[test]
    fn nullspace_q_full_rank_is_trivial() {
        let rows = vec![
            vec![q(2), q(0), q(0)],
            vec![q(0), qr(1, 3), q(0)],
            vec![q(0), q(0), q(-5)],
        ];
        assert!(nullspace(FieldKind::Rational, &rows, 3).is_empty());
    }

    #[test]
    fn nullspace_q_rational_entries() {
        // x + y/2 = 0 has kernel (1, -2) after normalization.
        let rows = vec![vec![q(1), qr(1, 2)]];
        let basis = nullspace(FieldKind::Rational, &rows, 2);
        assert_eq!(basis, vec![vec![q(1), q(-2)]]);
    }

    #[test]
    fn nullspace_fp_matches_hand_computation() {
        let f = FieldKind::Prime(5);
        let s = |v: i64| Scalar::from_integer(f, v);
        // Row (1 2 3) over F5: kernel is 2-dimensional; verify membership.
        let rows = vec![vec![s(1), s(2), s(3)]];
        let basis = nullspace(f, &rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot = &(&(&v[0] * &s(1)) + &(&v[1] * &s(2))) + &(&v[2] * &s(3));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_square_exact() {
        // (2 1; 1 3) x = (5; 10) has x = (1, 3).
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![q(5), q(10)];
        assert_eq!(solve_square(&a, &b).unwrap(), vec![q(1), q(3)]);
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(solve_square(&sing, &b), Err(Error::SingularMatrix));
    }

    #[test]
    fn bareiss_kernel_matches_plain_gauss_seeded() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..30 {
            let nrows = 3 + (rng.next_u32() % 3) as usize;
            let ncols = 4 + (rng.next_u32() % 3) as usize;
            let rows: Vec<Vec<Scalar>> = (0..nrows)
                .map(|_| {
                    (0..ncols)
                        .map(|_| q((rng.next_u32() % 7) as i64 - 3))
                        .collect()
                })
                .collect();
            let basis = nullspace(FieldKind::Rational, &rows, ncols);
            // Every basis vector annihilates every row.
            for v in &basis {
                for row in &rows {
                    let mut acc = q(0);
                    for (a, b) in row.iter().zip(v) {
                        acc = &acc + &(a * b);
                    }
                    assert!(acc.is_zero());
                }
            }
            // Dimension check against a plain rational Gauss oracle.
            let rank = plain_rank(&rows, ncols);
            assert_eq!(basis.len(), ncols - rank);
        }
    }

    /// Test-side oracle: textbook Gaussian elimination over BigRational.
    fn plain_rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
        use num_rational::BigRational;
        use num_traits::Zero;
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.as_rational().unwrap().clone()).collect())
            .collect();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(pr) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            let piv = m[rank][c].clone();
            for j in c..ncols {
                let v = &m[rank][j] / &piv;
                m[rank][j] = v;
            }
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..ncols {
                        let v = &m[i][j] - &(&m[rank][j] * &f);
                        m[i][j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
