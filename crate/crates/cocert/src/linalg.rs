//! Small exact linear algebra over arbitrary-precision integers and
//! rationals. Everything here runs on tiny matrices (ambient dimension at
//! most a handful), so simplicity wins over asymptotics.

use crate::rational::{Integer, Rational};
use num::{One, Signed, Zero};

pub type IMatrix = Vec<Vec<Integer>>;


pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    num::integer::gcd(a.clone(), b.clone())
}

/// Divides by the gcd of the entries; zero vectors pass through unchanged.
pub fn primitive_vector(v: &[Integer]) -> Vec<Integer> {
    let mut g = Integer::zero();
    for x in v {
        g = gcd(&g, x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Integer row echelon form (pivot entries positive, entries below pivots
/// zero). Returns the echelon rows (zero rows dropped) and pivot columns.
/// The row space lattice is preserved exactly.
pub fn row_echelon(mut rows: IMatrix) -> (IMatrix, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        // eliminate within column `col` among rows top.. by gcd steps
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(top) {
                if !row[col].is_zero() {
                    best = match best {
                        Some(b) if rows[b][col].abs() <= row[col].abs() => Some(b),
                        _ => Some(i),
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = &rows[i][col] / &rows[top][col];
                if !q.is_zero() {
                    for c in 0..ncols {
                        let t = &rows[top][c] * &q;
                        rows[i][c] -= t;
                    }
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[top][col].is_negative() {
                    for c in 0..ncols {
                        rows[top][c] = -rows[top][c].clone();
                    }
                }
                pivots.push(col);
                top += 1;
                break;
            }
        }
    }
    rows.truncate(top);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Integer>]) -> usize {
    row_echelon(rows.to_vec()).0.len()
}

/// Expresses `target` in the echelon basis by back-substitution. Returns
/// `None` when `target` is not an integer combination of the basis rows.
pub fn solve_in_echelon(
    echelon: &[Vec<Integer>],
    pivots: &[usize],
    target: &[Integer],
) -> Option<Vec<Integer>> {
    let mut residue = target.to_vec();
    let mut coeffs = vec![Integer::zero(); echelon.len()];
    for (i, row) in echelon.iter().enumerate() {
        let p = pivots[i];
        if residue[p].is_zero() {
            continue;
        }
        let (q, r) = num::integer::div_rem(residue[p].clone(), row[p].clone());
        if !r.is_zero() {
            return None;
        }
        for c in 0..residue.len() {
            let t = &row[c] * &q;
            residue[c] -= t;
        }
        coeffs[i] = q;
    }
    residue.iter().all(|x| x.is_zero()).then_some(coeffs)
}

/// Basis of the saturated integer kernel lattice `{ v : M v = 0 }` of an
/// n x r matrix, via column reduction with a unimodular transform.
pub fn integer_kernel_basis(matrix: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    let nrows = matrix.len();
    let ncols = if nrows == 0 { 0 } else { matrix[0].len() };
    let mut m: IMatrix = matrix.to_vec();
    let mut u: IMatrix = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { Integer::one() } else { Integer::zero() })
                .collect()
        })
        .collect(); // u[col] is the col-th column of the unimodular transform

    let col_is_zero = |m: &IMatrix, c: usize| m.iter().all(|row| row[c].is_zero());
    let mut lead = 0usize;
    for row in 0..nrows {
        // find a column (>= lead) with nonzero entry in this row and reduce
        loop {
            let mut best: Option<usize> = None;
            for c in lead..ncols {
                if !m[row][c].is_zero() {
                    best = match best {
                        Some(b) if m[row][b].abs() <= m[row][c].abs() => Some(b),
                        _ => Some(c),
                    };
                }
            }
            let Some(b) = best else { break };
            for r in m.iter_mut() {
                r.swap(lead, b);
            }
            u.swap(lead, b);
            let mut done = true;
            for c in lead + 1..ncols {
                if m[row][c].is_zero() {
                    continue;
                }
                let q = &m[row][c] / &m[row][lead];
                if !q.is_zero() {
                    for r in m.iter_mut() {
                        let t = &r[lead] * &q;
                        r[c] -= t;
                    }
                    for x in 0..ncols {
                        let t = &u[lead][x] * &q;
                        u[c][x] -= t;
                    }
                }
                if !m[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                lead += 1;
                break;
            }
        }
        if lead >= ncols {
            break;
        }
    }
    let mut basis: Vec<Vec<Integer>> = (0..ncols)
        .filter(|&c| col_is_zero(&m, c))
        .map(|c| u[c].clone())
        .collect();
    for b in &mut basis {
        // normalize sign: first nonzero entry positive
        if let Some(first) = b.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in b.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    basis.sort();
    basis
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(matrix: &[Vec<Integer>]) -> Integer {
    let n = matrix.len();
    if n == 0 {
        return Integer::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Integer::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Solves the square rational system `A x = b` by Gaussian elimination.
/// Returns `None` for singular `A`.
pub fn solve_rational_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[i][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn echelon_and_solve() {
        let rows = vec![b(&[2, 0, 0]), b(&[0, 3, 0]), b(&[2, 3, 0])];
        let (ech, piv) = row_echelon(rows);
        assert_eq!(ech.len(), 2);
        let coeffs = solve_in_echelon(&ech, &piv, &b(&[4, 3, 0])).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert!(solve_in_echelon(&ech, &piv, &b(&[1, 0, 0])).is_none());
        assert!(solve_in_echelon(&ech, &piv, &b(&[0, 0, 1])).is_none());
    }

    #[test]
    fn kernel_of_ray_matrix() {
        // prism ray matrix: kernel spanned by (2,1,1,0,0) and (0,0,0,1,1)
        let f = vec![b(&[1, 0, -2, 0, 0]), b(&[0, 1, -1, 0, 0]), b(&[0, 0, 0, 1, -1])];
        let k = integer_kernel_basis(&f);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &f {
                let dot: Integer = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        // saturated: (2,1,1,0,0) must be reachable as an integer combination
        let (ech, piv) = row_echelon(k.clone());
        assert!(solve_in_echelon(&ech, &piv, &b(&[2, 1, 1, 0, 0])).is_some());
        assert!(solve_in_echelon(&ech, &piv, &b(&[0, 0, 0, 1, 1])).is_some());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[b(&[1, 0]), b(&[0, 2])]), Integer::from(2));
        assert_eq!(determinant(&[b(&[0, 1]), b(&[1, 0])]), Integer::from(-1));
        assert_eq!(
            determinant(&[b(&[2, 1, 3]), b(&[4, 2, 6]), b(&[1, 1, 1])]),
            Integer::from(0)
        );
    }

    #[test]
    fn rational_solve() {
        use crate::rational::rational_from_i64 as q;
        let a = vec![vec![q(2), q(0)], vec![q(1), q(3)]];
        let x = solve_rational_square(&a, &[q(4), q(5)]).unwrap();
        assert_eq!(x[0], q(2));
        assert_eq!(x[1], q(1));
    }
}
