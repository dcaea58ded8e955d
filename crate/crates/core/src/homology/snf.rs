//! Smith normal form over the integers with unimodular transforms.
//!
//! U·A·V = D with U, V unimodular (their inverses are tracked alongside),
//! D diagonal with the divisibility chain d₁ | d₂ | …. Arithmetic is
//! arbitrary precision throughout. Pivoting: smallest magnitude nonzero,
//! ties broken by lowest row then column index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::SparseIntMatrix;

pub struct SmithDecomposition {
    pub d: SparseIntMatrix,
    pub u: SparseIntMatrix,
    pub u_inv: SparseIntMatrix,
    pub v: SparseIntMatrix,
    pub v_inv: SparseIntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nontrivial elementary divisors d₁ | d₂ | … (all positive).
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }

    /// Solves A x = b exactly over ℤ; `None` when no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.u.mul_vec(b);
        let n = self.v.nrows();
        let mut y = vec![BigInt::zero(); n];
        for (i, ub_i) in ub.iter().enumerate() {
            if i < self.rank {
                let d = self.d.get(i, i);
                let (q, r) = ub_i.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub_i.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Saturated integer basis of ker A: the last (ncols − rank) columns of V.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.v.nrows();
        (self.rank..n)
            .map(|j| (0..n).map(|i| self.v.get(i, j)).collect())
            .collect()
    }
}

struct State {
    a: SparseIntMatrix,
    u: SparseIntMatrix,
    u_inv: SparseIntMatrix,
    v: SparseIntMatrix,
    v_inv: SparseIntMatrix,
}

impl State {
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.row_axpy(dst, src, c);
        self.u.row_axpy(dst, src, c);
        let neg = -c;
        self.u_inv.col_axpy(src, dst, &neg);
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.col_axpy(dst, src, c);
        self.v.col_axpy(dst, src, c);
        let neg = -c;
        self.v_inv.row_axpy(src, dst, &neg);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }
}

/// Division rounded to nearest (|remainder| ≤ |divisor|/2), for fast
/// magnitude reduction during elimination.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let two_r = r.abs() * BigInt::from(2);
    if two_r > b.abs() {
        if (r.sign() == b.sign()) || (a.sign() == b.sign() && !r.is_zero()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

pub fn smith_normal_form(a0: &SparseIntMatrix) -> SmithDecomposition {
    let (m, n) = (a0.nrows(), a0.ncols());
    let mut s = State {
        a: a0.clone(),
        u: SparseIntMatrix::identity(m),
        u_inv: SparseIntMatrix::identity(m),
        v: SparseIntMatrix::identity(n),
        v_inv: SparseIntMatrix::identity(n),
    };

    let kmax = m.min(n);
    let mut k = 0;
    while k < kmax {
        let Some((pr, pc)) = find_pivot(&s.a, k) else {
            break;
        };
        s.row_swap(k, pr);
        s.col_swap(k, pc);

        'reduce: loop {
            // clear column k with row operations
            loop {
                let pivot = s.a.get(k, k);
                let targets: Vec<usize> = s.a.col_rows(k).filter(|&r| r != k).collect();
                for r in targets {
                    let q = div_round(&s.a.get(r, k), &pivot);
                    if !q.is_zero() {
                        s.row_axpy(r, k, &(-q));
                    }
                }
                // remainders smaller than the pivot become the new pivot
                let best = s
                    .a
                    .col_rows(k)
                    .filter(|&r| r != k)
                    .min_by(|&r1, &r2| {
                        crate::matrix::abs_cmp(&s.a.get(r1, k), &s.a.get(r2, k))
                            .then(r1.cmp(&r2))
                    });
                match best {
                    Some(r) => s.row_swap(k, r),
                    None => break,
                }
            }
            // clear row k with column operations (does not refill column k:
            // column k's support is now {k})
            loop {
                let pivot = s.a.get(k, k);
                let targets: Vec<usize> =
                    s.a.row(k).map(|(c, _)| c).filter(|&c| c != k).collect();
                for c in targets {
                    let q = div_round(&s.a.get(k, c), &pivot);
                    if !q.is_zero() {
                        s.col_axpy(c, k, &(-q));
                    }
                }
                let best: Option<usize> = s
                    .a
                    .row(k)
                    .filter(|(c, _)| *c != k)
                    .min_by(|(c1, v1), (c2, v2)| {
                        crate::matrix::abs_cmp(v1, v2).then(c1.cmp(c2))
                    })
                    .map(|(c, _)| c);
                match best {
                    Some(c) => {
                        s.col_swap(k, c);
                        // the swap may reintroduce entries in column k
                        continue 'reduce;
                    }
                    None => break,
                }
            }

            // divisibility: every remaining entry must be divisible by the
            // pivot; fold an offending row into row k and continue.
            let pivot = s.a.get(k, k);
            let mut offender = None;
            'scan: for r in (k + 1)..m {
                for (c, v) in s.a.row(r) {
                    if c > k && !v.mod_floor(&pivot).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    s.row_axpy(k, r, &BigInt::one());
                }
                None => break,
            }
        }

        if s.a.get(k, k).is_negative() {
            s.negate_row(k);
        }
        k += 1;
    }

    SmithDecomposition {
        d: s.a,
        u: s.u,
        u_inv: s.u_inv,
        v: s.v,
        v_inv: s.v_inv,
        rank: k,
    }
}

fn find_pivot(a: &SparseIntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in k..a.nrows() {
        for (c, v) in a.row(r) {
            if c < k {
                continue;
            }
            let mag = v.abs();
            let better = match &best {
                None => true,
                Some((bm, br, bc)) => {
                    mag < *bm || (mag == *bm && (r, c) < (*br, *bc))
                }
            };
            if better {
                best = Some((mag, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> SparseIntMatrix {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        SparseIntMatrix::from_triplets(
            nr,
            nc,
            rows.iter().enumerate().flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(move |(j, &v)| (i, j, BigInt::from(v)))
            }),
        )
    }

    fn check_decomposition(a: &SparseIntMatrix, s: &SmithDecomposition) {
        // U A V = D
        let uav = s.u.mul(a).mul(&s.v);
        assert_eq!(uav, s.d, "U A V != D");
        // inverses really invert
        assert_eq!(
            s.u.mul(&s.u_inv),
            SparseIntMatrix::identity(a.nrows()),
            "U U^-1 != I"
        );
        assert_eq!(
            s.v_inv.mul(&s.v),
            SparseIntMatrix::identity(a.ncols()),
            "V^-1 V != I"
        );
        // D diagonal with divisibility chain
        for (r, c, v) in s.d.entries() {
            assert_eq!(r, c, "off-diagonal entry {v} at ({r},{c})");
        }
        let div = s.divisors();
        for w in div.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "divisibility chain broken: {} does not divide {}",
                w[0],
                w[1]
            );
        }
        for d in &div {
            assert!(d.is_positive());
        }
    }

    #[test]
    fn diag_2_3_normalizes_to_1_6() {
        let a = dense(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        check_decomposition(&a, &s);
        assert_eq!(s.divisors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let a = SparseIntMatrix::zeros(3, 2);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
        assert_eq!(s.u, SparseIntMatrix::identity(3));
        assert_eq!(s.v, SparseIntMatrix::identity(2));
    }

    #[test]
    fn sphere_boundary_rank_by_row_reduction_oracle() {
        // ∂_1 of the boundary of the 3-simplex: elementary divisors all 1,
        // rank 3 (brute-force rational row reduction oracle).
        let k = crate::complex::generators::sphere(2).unwrap();
        let a = k.boundary_matrix(1).unwrap().clone();
        let s = smith_normal_form(&a);
        check_decomposition(&a, &s);
        assert_eq!(s.rank, 3);
        assert!(s.divisors().iter().all(|d| d == &BigInt::one()));

        // oracle: Gaussian elimination over f64 rationals
        let mut m: Vec<Vec<f64>> = (0..a.nrows())
            .map(|r| (0..a.ncols()).map(|c| crate::matrix::bigint_to_f64(&a.get(r, c))).collect())
            .collect();
        let mut rank = 0;
        for col in 0..a.ncols() {
            if let Some(p) = (rank..a.nrows()).find(|&r| m[r][col].abs() > 1e-9) {
                m.swap(rank, p);
                let pv = m[rank][col];
                for r in 0..a.nrows() {
                    if r != rank && m[r][col].abs() > 1e-12 {
                        let f = m[r][col] / pv;
                        for c in 0..a.ncols() {
                            m[r][c] -= f * m[rank][c];
                        }
                    }
                }
                rank += 1;
            }
        }
        assert_eq!(s.rank, rank);
    }

    #[test]
    fn known_4x4_with_torsion() {
        let a = dense(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let s = smith_normal_form(&a);
        check_decomposition(&a, &s);
        assert_eq!(
            s.divisors(),
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(21)]
        );
    }

    #[test]
    fn solve_exact_system() {
        let a = dense(&[&[2, 4], &[0, 3]]);
        let s = smith_normal_form(&a);
        let b = vec![BigInt::from(6), BigInt::from(3)];
        let x = s.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // no integer solution for odd first component
        assert!(s.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_small_matrices_decompose(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let a = SparseIntMatrix::from_triplets(
                3,
                4,
                entries
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (i / 4, i % 4, BigInt::from(v))),
            );
            let s = smith_normal_form(&a);
            check_decomposition(&a, &s);
        }
    }
}
