//! Sparse floating-point kernels: CSR matrices, deterministic conjugate
//! gradients, and a dense Cholesky fallback for stubborn systems.
//!
//! All iteration orders are fixed, no threading, no reassociation: repeated
//! runs produce bit-identical results.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Csr {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<f64>,
}

impl Csr {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Csr {
            nrows,
            ncols,
            indptr: vec![0; nrows + 1],
            indices: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut rows: Vec<std::collections::BTreeMap<usize, f64>> =
            vec![std::collections::BTreeMap::new(); nrows];
        for &(r, c, v) in triplets {
            *rows[r].entry(c).or_insert(0.0) += v;
        }
        let mut indptr = Vec::with_capacity(nrows + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != 0.0 {
                    indices.push(c);
                    data.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Csr {
            nrows,
            ncols,
            indptr,
            indices,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn matvec(&self, x: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(x.len(), self.ncols);
        let mut y = DVector::zeros(self.nrows);
        for r in 0..self.nrows {
            let mut acc = 0.0;
            for i in self.indptr[r]..self.indptr[r + 1] {
                acc += self.data[i] * x[self.indices[i]];
            }
            y[r] = acc;
        }
        y
    }

    /// y = Aᵀ x without materializing the transpose.
    pub fn matvec_transpose(&self, x: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(x.len(), self.nrows);
        let mut y = DVector::zeros(self.ncols);
        for r in 0..self.nrows {
            let xr = x[r];
            if xr == 0.0 {
                continue;
            }
            for i in self.indptr[r]..self.indptr[r + 1] {
                y[self.indices[i]] += self.data[i] * xr;
            }
        }
        y
    }

    pub fn diagonal(&self) -> DVector<f64> {
        let n = self.nrows.min(self.ncols);
        let mut d = DVector::zeros(n);
        for r in 0..n {
            for i in self.indptr[r]..self.indptr[r + 1] {
                if self.indices[i] == r {
                    d[r] = self.data[i];
                }
            }
        }
        d
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.indptr[r]..self.indptr[r + 1]).map(move |i| (self.indices[i], self.data[i]))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for i in self.indptr[r]..self.indptr[r + 1] {
                m[(r, self.indices[i])] = self.data[i];
            }
        }
        m
    }
}

pub struct CgOutcome {
    pub x: DVector<f64>,
    pub rel_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Preconditioned conjugate gradients on a symmetric positive
/// (semi)definite operator. For consistent singular systems started at
/// zero the iterates remain in the range, so the returned solution has no
/// kernel component beyond roundoff.
pub fn conjugate_gradient<F>(
    apply: F,
    b: &DVector<f64>,
    precond_inv_diag: Option<&DVector<f64>>,
    rtol: f64,
    max_iters: usize,
) -> CgOutcome
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    let n = b.len();
    let bnorm = b.norm();
    if bnorm == 0.0 {
        return CgOutcome {
            x: DVector::zeros(n),
            rel_residual: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let precond = |r: &DVector<f64>| -> DVector<f64> {
        match precond_inv_diag {
            Some(d) => r.component_mul(d),
            None => r.clone(),
        }
    };
    let mut x = DVector::zeros(n);
    let mut r = b.clone();
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz = r.dot(&z);
    let mut best_rel = f64::INFINITY;
    for it in 0..max_iters {
        let ap = apply(&p);
        let pap = p.dot(&ap);
        if pap <= 0.0 || !pap.is_finite() {
            // numerically outside the positive cone: stop with what we have
            return CgOutcome {
                x,
                rel_residual: r.norm() / bnorm,
                iterations: it,
                converged: r.norm() / bnorm <= rtol,
            };
        }
        let alpha = rz / pap;
        x.axpy(alpha, &p, 1.0);
        r.axpy(-alpha, &ap, 1.0);
        let rel = r.norm() / bnorm;
        best_rel = best_rel.min(rel);
        if rel <= rtol {
            return CgOutcome {
                x,
                rel_residual: rel,
                iterations: it + 1,
                converged: true,
            };
        }
        z = precond(&r);
        let rz_new = r.dot(&z);
        let beta = rz_new / rz;
        rz = rz_new;
        p = &z + &p * beta;
    }
    let rel = r.norm() / bnorm;
    CgOutcome {
        x,
        rel_residual: rel,
        iterations: max_iters,
        converged: rel <= rtol,
    }
}

/// Dense SPD solve used as a fallback when CG stalls.
pub fn dense_spd_solve(m: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let chol = m
        .clone()
        .cholesky()
        .ok_or_else(|| Error::SingularMass("dense Cholesky factorization failed".into()))?;
    Ok(chol.solve(b))
}
