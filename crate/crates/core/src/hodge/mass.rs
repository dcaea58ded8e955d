//! Whitney-form mass matrices.
//!
//! For a top n-simplex with barycentric gradients g_a the inner product of
//! the Whitney forms attached to two k-faces A, B is
//!
//! ```text
//! ⟨W_A, W_B⟩_T = (k!)² Σ_{r,s} (−1)^{r+s} ∫_T λ_{a_r} λ_{b_s} · det G[A∖a_r, B∖b_s]
//! ```
//!
//! with G the Gram matrix of the gradients and
//! ∫_T λ_p λ_q = vol(T)(1+δ_pq)/((n+1)(n+2)). Degree 0 reduces to the
//! classical P1 mass matrix, degree n to the reciprocal volumes.

use nalgebra::DMatrix;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hodge::solvers::Csr;

/// All degrees at once; geometry per top simplex is factored once.
pub fn assemble_masses(k: &SimplicialComplex) -> Result<Vec<Csr>> {
    let n = k.dim();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|d| combinations(n + 1, d + 1)).collect();
    let mut triplets: Vec<Vec<(usize, usize, f64)>> = (0..=n).map(|_| Vec::new()).collect();

    for t in 0..k.simplex_count(n) {
        let tuple = k.simplex(n, t).to_vec();
        let corners = k.corner_matrix(t);
        let geo = SimplexGeometry::new(&corners)
            .ok_or_else(|| Error::SingularMass(format!("degenerate top simplex {tuple:?}")))?;

        for d in 0..=n {
            let faces = &subsets[d];
            // global indices of the faces of this top simplex
            let globals: Vec<usize> = faces
                .iter()
                .map(|f| {
                    let verts: Vec<usize> = f.iter().map(|&i| tuple[i]).collect();
                    k.index_of(d, &verts).expect("face present")
                })
                .collect();
            for (ai, a) in faces.iter().enumerate() {
                for (bi, b) in faces.iter().enumerate() {
                    if globals[bi] < globals[ai] {
                        continue; // symmetric; fill both below
                    }
                    let v = geo.whitney_inner(a, b, d);
                    if v != 0.0 {
                        triplets[d].push((globals[ai], globals[bi], v));
                        if globals[ai] != globals[bi] {
                            triplets[d].push((globals[bi], globals[ai], v));
                        }
                    }
                }
            }
        }
    }

    Ok((0..=n)
        .map(|d| Csr::from_triplets(k.simplex_count(d), k.simplex_count(d), &triplets[d]))
        .collect())
}

/// Diagonal (lumped) variant: the diagonal of the Whitney matrix.
pub fn lump(mass: &Csr) -> Csr {
    let d = mass.diagonal();
    let triplets: Vec<(usize, usize, f64)> =
        (0..d.len()).map(|i| (i, i, d[i])).collect();
    Csr::from_triplets(mass.nrows(), mass.ncols(), &triplets)
}

pub struct SimplexGeometry {
    /// Gram matrix of barycentric gradients, (n+1)×(n+1).
    grad_gram: DMatrix<f64>,
    pub volume: f64,
    n: usize,
}

impl SimplexGeometry {
    pub fn new(corners: &DMatrix<f64>) -> Option<Self> {
        let n = corners.nrows() - 1;
        let ambient = corners.ncols();
        let mut e = DMatrix::zeros(ambient, n);
        for i in 0..n {
            for j in 0..ambient {
                e[(j, i)] = corners[(i + 1, j)] - corners[(0, j)];
            }
        }
        let q = e.transpose() * &e;
        let det = q.determinant();
        if !(det.is_finite() && det > 1e-300) {
            return None;
        }
        let qinv = q.try_inverse()?;
        let volume = det.sqrt() / factorial(n);
        // gradients: g_i = E Q^{-1} e_i for i ≥ 1, g_0 = −Σ g_i;
        // their Gram matrix needs only Q^{-1}.
        let mut g = DMatrix::zeros(n + 1, n + 1);
        for i in 1..=n {
            for j in 1..=n {
                g[(i, j)] = qinv[(i - 1, j - 1)];
            }
        }
        for j in 1..=n {
            let s: f64 = (1..=n).map(|i| qinv[(i - 1, j - 1)]).sum();
            g[(0, j)] = -s;
            g[(j, 0)] = -s;
        }
        g[(0, 0)] = (1..=n)
            .map(|i| (1..=n).map(|j| qinv[(i - 1, j - 1)]).sum::<f64>())
            .sum();
        Some(SimplexGeometry {
            grad_gram: g,
            volume,
            n,
        })
    }

    pub fn gradient_gram(&self) -> &DMatrix<f64> {
        &self.grad_gram
    }

    /// ∫_T λ_p λ_q dV
    fn lambda_pair_integral(&self, p: usize, q: usize) -> f64 {
        let n1 = (self.n + 1) as f64;
        let factor = if p == q { 2.0 } else { 1.0 };
        self.volume * factor / (n1 * (n1 + 1.0))
    }

    /// ⟨W_A, W_B⟩ over this simplex for k-faces given by local index tuples.
    pub fn whitney_inner(&self, a: &[usize], b: &[usize], k: usize) -> f64 {
        let kf = factorial(k);
        let mut acc = 0.0;
        for (r, &ar) in a.iter().enumerate() {
            for (s, &bs) in b.iter().enumerate() {
                let det = self.minor_det(a, r, b, s, k);
                if det == 0.0 {
                    continue;
                }
                let sign = if (r + s) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * self.lambda_pair_integral(ar, bs) * det;
            }
        }
        kf * kf * acc
    }

    /// det of G restricted to rows A∖a_r, cols B∖b_s (k×k; empty det = 1).
    fn minor_det(&self, a: &[usize], skip_r: usize, b: &[usize], skip_s: usize, k: usize) -> f64 {
        if k == 0 {
            return 1.0;
        }
        let rows: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_r)
            .map(|(_, &v)| v)
            .collect();
        let cols: Vec<usize> = b
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_s)
            .map(|(_, &v)| v)
            .collect();
        match k {
            1 => self.grad_gram[(rows[0], cols[0])],
            2 => {
                let g = &self.grad_gram;
                g[(rows[0], cols[0])] * g[(rows[1], cols[1])]
                    - g[(rows[0], cols[1])] * g[(rows[1], cols[0])]
            }
            _ => {
                let m = DMatrix::from_fn(k, k, |i, j| self.grad_gram[(rows[i], cols[j])]);
                m.determinant()
            }
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product::<f64>().max(1.0)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
