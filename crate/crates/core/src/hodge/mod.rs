//! Discrete Hodge theory: inner products on cochains, codifferentials,
//! Laplacians, harmonic bases, Hodge decomposition, and the integral
//! harmonic lattice.
//!
//! The integral lattice in degree k is built directly from the integer
//! cocycle basis: θ_i = θ̂_i − d·corr_i with corr_i the least-squares
//! potential of the non-harmonic part of θ̂_i. Storing θ_i in exactly this
//! form makes evaluation on integer cycles exact up to roundoff (the
//! correction term dies on cycles by Stokes), while harmonicity is
//! certified a posteriori through the Laplacian residual and the spectral
//! gap estimate.
//!
//! Mass inverses are never formed; they are applied by conjugate-gradient
//! solves with a deterministic iteration order and a dense Cholesky
//! fallback.

pub mod mass;
pub mod solvers;

use std::sync::{Arc, OnceLock};

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::complex::{Cochain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::IntegerHomology;
use solvers::{conjugate_gradient, Csr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MassKind {
    Whitney,
    Lumped,
}

#[derive(Clone, Debug)]
pub struct HodgeOptions {
    pub mass: MassKind,
    /// minimal acceptable λ_next / λ_harmonic ratio
    pub rank_gap_threshold: f64,
    /// relative residual target for inner CG solves
    pub cg_rtol: f64,
    /// iteration cap as a multiple of the system size
    pub cg_max_factor: usize,
}

impl Default for HodgeOptions {
    fn default() -> Self {
        HodgeOptions {
            mass: MassKind::Whitney,
            rank_gap_threshold: 1e3,
            cg_rtol: 1e-13,
            cg_max_factor: 40,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DegreeDiagnostics {
    pub harmonic_dim: usize,
    pub mass_min_eig: f64,
    pub mass_max_eig: f64,
    /// max Laplacian residual over the lattice basis (≈ the numerically
    /// harmonic eigenvalue level)
    pub lattice_residual: f64,
    /// estimate of the smallest nonzero Laplacian eigenvalue
    pub lambda_next: f64,
    pub gap_ratio: f64,
    pub correction_residuals: Vec<f64>,
}

pub struct HodgeParts {
    pub harmonic: Cochain,
    pub exact: Cochain,
    pub coexact: Cochain,
}

pub struct HodgeStructure {
    complex: Arc<SimplicialComplex>,
    options: HodgeOptions,
    masses: Vec<Csr>,
    mass_inv_diag: Vec<DVector<f64>>,
    /// cobound[k] = d_k : C^k → C^{k+1} for k < n
    cobound: Vec<Csr>,
    /// diag of d_kᵀ M_{k+1} d_k, for preconditioning
    up_diag: Vec<DVector<f64>>,
    harmonic: Vec<DMatrix<f64>>,
    lattice: Vec<Vec<Cochain>>,
    corrections: Vec<Vec<Cochain>>,
    chol: Vec<OnceLock<Option<Cholesky<f64, Dyn>>>>,
    diagnostics: Vec<DegreeDiagnostics>,
    volume: f64,
}

impl HodgeStructure {
    pub fn build(homology: &IntegerHomology, options: HodgeOptions) -> Result<Self> {
        let complex = homology.complex().clone();
        let n = complex.dim();

        let whitney = mass::assemble_masses(&complex)?;
        let masses: Vec<Csr> = match options.mass {
            MassKind::Whitney => whitney,
            MassKind::Lumped => whitney.iter().map(mass::lump).collect(),
        };
        let mass_inv_diag: Vec<DVector<f64>> = masses
            .iter()
            .map(|m| {
                let d = m.diagonal();
                DVector::from_iterator(d.len(), d.iter().map(|&v| 1.0 / v))
            })
            .collect();

        let mut cobound = Vec::with_capacity(n);
        for k in 1..=n {
            let bd = complex.boundary_matrix(k)?;
            // d_{k-1} = ∂_k^T
            let triplets: Vec<(usize, usize, f64)> = bd
                .to_f64_triplets()
                .into_iter()
                .map(|(r, c, v)| (c, r, v))
                .collect();
            cobound.push(Csr::from_triplets(
                complex.simplex_count(k),
                complex.simplex_count(k - 1),
                &triplets,
            ));
        }

        // diag of the up-stiffness per degree k < n
        let mut up_diag = Vec::with_capacity(n);
        for k in 0..n {
            let d = &cobound[k];
            let m = &masses[k + 1];
            let nk = complex.simplex_count(k);
            let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nk];
            for r in 0..d.nrows() {
                for (c, v) in d.row(r) {
                    cols[c].push((r, v));
                }
            }
            let mut diag = DVector::zeros(nk);
            for (j, col) in cols.iter().enumerate() {
                let mut acc = 0.0;
                for &(r1, v1) in col {
                    for (c2, mv) in m.row(r1) {
                        if let Some(&(_, v2)) = col.iter().find(|&&(r2, _)| r2 == c2) {
                            acc += v1 * mv * v2;
                        }
                    }
                }
                diag[j] = acc;
            }
            up_diag.push(diag);
        }

        let mut h = HodgeStructure {
            complex: complex.clone(),
            options,
            masses,
            mass_inv_diag,
            cobound,
            up_diag,
            harmonic: vec![DMatrix::zeros(0, 0); n + 1],
            lattice: vec![Vec::new(); n + 1],
            corrections: vec![Vec::new(); n + 1],
            chol: (0..=n).map(|_| OnceLock::new()).collect(),
            diagnostics: Vec::new(),
            volume: complex.total_volume(),
        };

        // integral harmonic lattice and orthonormal harmonic basis
        for k in 0..=n {
            let coh = homology.cohomology(k)?;
            let mut lattice = Vec::with_capacity(coh.betti);
            let mut corrections = Vec::with_capacity(coh.betti);
            let mut corr_residuals = Vec::with_capacity(coh.betti);
            for theta_hat in &coh.free_cocycles {
                let t = theta_hat.to_real();
                if k == 0 {
                    // integer 0-cocycles are locally constant, already harmonic
                    lattice.push(t);
                    corrections.push(Cochain::zeros(0, 0));
                    corr_residuals.push(0.0);
                    continue;
                }
                let (corr, rel) = h.exact_potential_raw(k, &t.values)?;
                let theta = &t.values - h.coboundary_apply(k - 1, &corr);
                lattice.push(Cochain {
                    degree: k,
                    values: theta,
                });
                corrections.push(Cochain {
                    degree: k - 1,
                    values: corr,
                });
                corr_residuals.push(rel);
            }
            h.harmonic[k] = h.orthonormalize(k, &lattice)?;
            h.lattice[k] = lattice;
            h.corrections[k] = corrections;
            h.diagnostics.push(DegreeDiagnostics {
                harmonic_dim: coh.betti,
                mass_min_eig: 0.0,
                mass_max_eig: 0.0,
                lattice_residual: 0.0,
                lambda_next: 0.0,
                gap_ratio: f64::INFINITY,
                correction_residuals: corr_residuals,
            });
        }

        // spectral diagnostics and the rank-gap cross-check
        let mut mu = vec![f64::INFINITY; n + 1]; // smallest nonzero eig of δ_{k+1} d_k
        for k in 0..n {
            mu[k] = h.up_lambda_min(k)?;
        }
        for k in 0..=n {
            let (lo, hi) = h.mass_eig_estimates(k)?;
            let lattice_residual = {
                let mut worst: f64 = 0.0;
                for theta in &h.lattice[k] {
                    let l = h.laplace_apply(k, &theta.values)?;
                    let num = h.m_norm(k, &l);
                    let den = h.m_norm(k, &theta.values);
                    worst = worst.max(num / den);
                }
                worst
            };
            let lambda_next = {
                let up = mu[k];
                let down = if k > 0 { mu[k - 1] } else { f64::INFINITY };
                up.min(down)
            };
            let gap_ratio = if lattice_residual == 0.0 {
                f64::INFINITY
            } else {
                lambda_next / lattice_residual
            };
            let d = &mut h.diagnostics[k];
            d.mass_min_eig = lo;
            d.mass_max_eig = hi;
            d.lattice_residual = lattice_residual;
            d.lambda_next = lambda_next;
            d.gap_ratio = gap_ratio;
            if gap_ratio < h.options.rank_gap_threshold {
                return Err(Error::RankAmbiguous(format!(
                    "degree {k}: harmonic residual {lattice_residual:.3e} vs next eigenvalue \
                     {lambda_next:.3e} (ratio {gap_ratio:.1e} < {:.1e}); refine the mesh or \
                     adjust the threshold",
                    h.options.rank_gap_threshold
                )));
            }
        }

        Ok(h)
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn options(&self) -> &HodgeOptions {
        &self.options
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn diagnostics(&self, k: usize) -> &DegreeDiagnostics {
        &self.diagnostics[k]
    }

    pub fn mass(&self, k: usize) -> &Csr {
        &self.masses[k]
    }

    pub fn mass_apply(&self, k: usize, x: &DVector<f64>) -> DVector<f64> {
        self.masses[k].matvec(x)
    }

    /// M_k^{-1} x by preconditioned CG; dense Cholesky fallback.
    pub fn mass_solve(&self, k: usize, b: &DVector<f64>) -> Result<DVector<f64>> {
        let m = &self.masses[k];
        let out = conjugate_gradient(
            |x| m.matvec(x),
            b,
            Some(&self.mass_inv_diag[k]),
            self.options.cg_rtol,
            self.options.cg_max_factor * m.nrows().max(8),
        );
        if out.converged {
            return Ok(out.x);
        }
        let chol = self.chol[k].get_or_init(|| m.to_dense().cholesky());
        match chol {
            Some(c) => Ok(c.solve(b)),
            None => Err(Error::SingularMass(format!(
                "mass solve in degree {k} failed (CG residual {:.3e})",
                out.rel_residual
            ))),
        }
    }

    /// d_k x (zero-length output in the top degree).
    pub fn coboundary_apply(&self, k: usize, x: &DVector<f64>) -> DVector<f64> {
        if k >= self.dim() {
            return DVector::zeros(0);
        }
        self.cobound[k].matvec(x)
    }

    pub fn coboundary_transpose_apply(&self, k: usize, y: &DVector<f64>) -> DVector<f64> {
        if k >= self.dim() {
            return DVector::zeros(self.complex.simplex_count(self.dim()));
        }
        self.cobound[k].matvec_transpose(y)
    }

    /// δ_k x = M_{k-1}^{-1} d_{k-1}ᵀ M_k x (zero-length in degree 0).
    pub fn codifferential(&self, k: usize, x: &DVector<f64>) -> Result<DVector<f64>> {
        if k == 0 {
            return Ok(DVector::zeros(0));
        }
        let rhs = self.coboundary_transpose_apply(k - 1, &self.mass_apply(k, x));
        self.mass_solve(k - 1, &rhs)
    }

    /// L_k = δ_{k+1} d_k + d_{k-1} δ_k.
    pub fn laplace_apply(&self, k: usize, x: &DVector<f64>) -> Result<DVector<f64>> {
        let n = self.dim();
        let mut out = DVector::zeros(x.len());
        if k < n {
            let dx = self.coboundary_apply(k, x);
            out += self.codifferential(k + 1, &dx)?;
        }
        if k > 0 {
            let cx = self.codifferential(k, x)?;
            out += self.coboundary_apply(k - 1, &cx);
        }
        Ok(out)
    }

    /// d_kᵀ M_{k+1} d_k x — the Euclidean-symmetric up-stiffness.
    pub fn up_stiffness_apply(&self, k: usize, x: &DVector<f64>) -> DVector<f64> {
        if k >= self.dim() {
            return DVector::zeros(x.len());
        }
        let dx = self.cobound[k].matvec(x);
        self.cobound[k].matvec_transpose(&self.masses[k + 1].matvec(&dx))
    }

    pub fn inner(&self, k: usize, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x.dot(&self.mass_apply(k, y))
    }

    pub fn m_norm(&self, k: usize, x: &DVector<f64>) -> f64 {
        self.inner(k, x, x).max(0.0).sqrt()
    }

    pub fn harmonic_dim(&self, k: usize) -> usize {
        self.harmonic[k].ncols()
    }

    pub fn harmonic_basis(&self, k: usize) -> &DMatrix<f64> {
        &self.harmonic[k]
    }

    /// Integral harmonic lattice basis θ_i of degree k.
    pub fn lattice(&self, k: usize) -> &[Cochain] {
        &self.lattice[k]
    }

    /// The exact corrections: θ_i = θ̂_i − d corr_i.
    pub fn lattice_corrections(&self, k: usize) -> &[Cochain] {
        &self.corrections[k]
    }

    /// M-orthogonal projection onto the harmonic subspace.
    pub fn harmonic_projection(&self, k: usize, x: &DVector<f64>) -> DVector<f64> {
        let hb = &self.harmonic[k];
        if hb.ncols() == 0 {
            return DVector::zeros(x.len());
        }
        let coeffs = hb.transpose() * self.mass_apply(k, x);
        hb * coeffs
    }

    /// Least-squares potential: argmin_a ‖target − d_{k-1} a‖_M.
    pub fn exact_potential(&self, k: usize, target: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(self.exact_potential_raw(k, target)?.0)
    }

    fn exact_potential_raw(&self, k: usize, target: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
        assert!(k >= 1, "no potentials below degree 1");
        let rhs = self.coboundary_transpose_apply(k - 1, &self.mass_apply(k, target));
        let diag = &self.up_diag[k - 1];
        let inv_diag = DVector::from_iterator(
            diag.len(),
            diag.iter().map(|&v| if v > 0.0 { 1.0 / v } else { 1.0 }),
        );
        let out = conjugate_gradient(
            |x| self.up_stiffness_apply(k - 1, x),
            &rhs,
            Some(&inv_diag),
            self.options.cg_rtol,
            self.options.cg_max_factor * rhs.len().max(8),
        );
        if !out.converged {
            return Err(Error::SolverDiverged(format!(
                "potential solve in degree {k} stalled at relative residual {:.3e}",
                out.rel_residual
            )));
        }
        Ok((out.x, out.rel_residual))
    }

    /// Hodge decomposition c = harmonic + exact + coexact.
    pub fn decompose(&self, c: &Cochain) -> Result<HodgeParts> {
        let k = c.degree;
        let h = self.harmonic_projection(k, &c.values);
        let exact = if k == 0 {
            DVector::zeros(c.values.len())
        } else {
            let rest = &c.values - &h;
            let a = self.exact_potential(k, &rest)?;
            self.coboundary_apply(k - 1, &a)
        };
        let coexact = &c.values - &h - &exact;
        Ok(HodgeParts {
            harmonic: Cochain { degree: k, values: h },
            exact: Cochain {
                degree: k,
                values: exact,
            },
            coexact: Cochain {
                degree: k,
                values: coexact,
            },
        })
    }

    /// Projection onto the coexact subspace (removes harmonic and exact
    /// parts); used by the spectral estimators.
    pub fn coexact_projection(&self, k: usize, x: &DVector<f64>) -> Result<DVector<f64>> {
        let h = self.harmonic_projection(k, x);
        let rest = x - &h;
        if k == 0 {
            return Ok(rest);
        }
        let a = self.exact_potential(k, &rest)?;
        Ok(rest - self.coboundary_apply(k - 1, &a))
    }

    /// Smallest nonzero eigenvalue of δ_{k+1} d_k (inverse power iteration
    /// restricted to the coexact complement); ∞ when the complement is
    /// empty.
    fn up_lambda_min(&self, k: usize) -> Result<f64> {
        let nk = self.complex.simplex_count(k);
        // deterministic pseudo-random start
        let mut x = DVector::from_iterator(
            nk,
            (0..nk).map(|i| ((i.wrapping_mul(2654435761) + 12345) % 1000) as f64 / 1000.0 - 0.5),
        );
        x = self.coexact_projection(k, &x)?;
        let norm = self.m_norm(k, &x);
        if norm < 1e-12 {
            return Ok(f64::INFINITY);
        }
        x /= norm;
        let diag = &self.up_diag[k];
        let inv_diag = DVector::from_iterator(
            diag.len(),
            diag.iter().map(|&v| if v > 0.0 { 1.0 / v } else { 1.0 }),
        );
        let mut rayleigh = f64::INFINITY;
        for _ in 0..8 {
            let b = self.mass_apply(k, &x);
            let out = conjugate_gradient(
                |v| self.up_stiffness_apply(k, v),
                &b,
                Some(&inv_diag),
                1e-8,
                self.options.cg_max_factor * nk.max(8),
            );
            let mut y = self.coexact_projection(k, &out.x)?;
            let ny = self.m_norm(k, &y);
            if ny < 1e-300 {
                return Ok(f64::INFINITY);
            }
            y /= ny;
            let ay = self.up_stiffness_apply(k, &y);
            let new_rayleigh = y.dot(&ay) / self.inner(k, &y, &y);
            let done = (new_rayleigh - rayleigh).abs() <= 1e-3 * new_rayleigh.abs();
            rayleigh = new_rayleigh;
            x = y;
            if done {
                break;
            }
        }
        Ok(rayleigh)
    }

    fn mass_eig_estimates(&self, k: usize) -> Result<(f64, f64)> {
        let m = &self.masses[k];
        let n = m.nrows();
        let start = DVector::from_iterator(
            n,
            (0..n).map(|i| 1.0 + ((i.wrapping_mul(48271) + 7) % 97) as f64 / 97.0),
        );
        let mut x = start.clone();
        x /= x.norm();
        let mut hi = 0.0;
        for _ in 0..12 {
            let y = m.matvec(&x);
            hi = y.norm();
            x = y / hi;
        }
        let mut x = start;
        x /= x.norm();
        let mut lo_inv = 0.0;
        for _ in 0..12 {
            let y = self.mass_solve(k, &x)?;
            lo_inv = y.norm();
            x = y / lo_inv;
        }
        Ok((1.0 / lo_inv, hi))
    }

    fn orthonormalize(&self, k: usize, basis: &[Cochain]) -> Result<DMatrix<f64>> {
        let nk = self.complex.simplex_count(k);
        let b = basis.len();
        let mut out = DMatrix::zeros(nk, b);
        let mut cols: Vec<DVector<f64>> = Vec::with_capacity(b);
        for theta in basis {
            let mut v = theta.values.clone();
            // modified Gram–Schmidt in the M inner product, run twice
            for _ in 0..2 {
                for c in &cols {
                    let proj = self.inner(k, c, &v);
                    v -= c * proj;
                }
            }
            let norm = self.m_norm(k, &v);
            if norm < 1e-12 {
                return Err(Error::RankAmbiguous(format!(
                    "integral lattice basis numerically dependent in degree {k}"
                )));
            }
            v /= norm;
            cols.push(v);
        }
        for (j, c) in cols.iter().enumerate() {
            out.set_column(j, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generators;
    use num_traits::Zero;
    use rand::Rng;
    use rand::SeedableRng;

    fn setup(k: SimplicialComplex) -> (Arc<SimplicialComplex>, IntegerHomology, HodgeStructure) {
        let arc = Arc::new(k);
        let hom = IntegerHomology::new(arc.clone());
        let hodge = HodgeStructure::build(&hom, HodgeOptions::default()).unwrap();
        (arc, hom, hodge)
    }

    fn random_cochain(n: usize, degree: usize, seed: u64) -> Cochain {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Cochain {
            degree,
            values: DVector::from_iterator(n, (0..n).map(|_| rng.gen_range(-1.0..1.0))),
        }
    }

    #[test]
    fn harmonic_dims_match_betti() {
        let (_, _, h2) = setup(generators::flat_torus(2, 4).unwrap().0);
        assert_eq!(h2.harmonic_dim(0), 1);
        assert_eq!(h2.harmonic_dim(1), 2);
        assert_eq!(h2.harmonic_dim(2), 1);

        let (_, _, hs) = setup(generators::sphere(2).unwrap());
        assert_eq!(hs.harmonic_dim(1), 0);
        assert!(hs.lattice(1).is_empty());

        let (_, _, hg) = setup(generators::genus_surface(2, 0).unwrap());
        assert_eq!(hg.harmonic_dim(1), 4);
    }

    #[test]
    fn adjointness_of_d_and_codifferential() {
        let (k, _, h) = setup(generators::flat_torus(2, 3).unwrap().0);
        for deg in 0..2usize {
            let a = random_cochain(k.simplex_count(deg), deg, 11 + deg as u64);
            let b = random_cochain(k.simplex_count(deg + 1), deg + 1, 23 + deg as u64);
            let lhs = h.inner(deg + 1, &h.coboundary_apply(deg, &a.values), &b.values);
            let rhs = h.inner(deg, &a.values, &h.codifferential(deg + 1, &b.values).unwrap());
            let scale = lhs.abs().max(rhs.abs()).max(1e-30);
            assert!(
                (lhs - rhs).abs() / scale <= 1e-12,
                "adjointness violated in degree {deg}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn decomposition_is_orthogonal_and_reconstructs() {
        let (k, _, h) = setup(generators::flat_torus(2, 4).unwrap().0);
        let c = random_cochain(k.simplex_count(1), 1, 5);
        let parts = h.decompose(&c).unwrap();
        let r = &c.values - &parts.harmonic.values - &parts.exact.values - &parts.coexact.values;
        assert!(r.norm() <= 1e-10 * c.values.norm().max(1.0));
        let pairs = [
            (&parts.harmonic, &parts.exact),
            (&parts.harmonic, &parts.coexact),
            (&parts.exact, &parts.coexact),
        ];
        for (x, y) in pairs {
            let ip = h.inner(1, &x.values, &y.values);
            let scale = h.m_norm(1, &x.values) * h.m_norm(1, &y.values);
            assert!(
                ip.abs() <= 1e-10 * scale.max(1e-14),
                "parts not orthogonal: {ip}"
            );
        }
    }

    #[test]
    fn decompose_harmonic_vector_is_idempotent() {
        let (_, _, h) = setup(generators::flat_torus(2, 4).unwrap().0);
        let theta = h.lattice(1)[0].clone();
        let parts = h.decompose(&theta).unwrap();
        let scale = theta.values.norm();
        assert!(parts.exact.values.norm() <= 1e-8 * scale);
        assert!(parts.coexact.values.norm() <= 1e-8 * scale);
        assert!((&parts.harmonic.values - &theta.values).norm() <= 1e-8 * scale);
    }

    #[test]
    fn decompose_exact_vector() {
        let (k, _, h) = setup(generators::flat_torus(2, 4).unwrap().0);
        let a = random_cochain(k.simplex_count(0), 0, 9);
        let c = Cochain {
            degree: 1,
            values: h.coboundary_apply(0, &a.values),
        };
        let parts = h.decompose(&c).unwrap();
        let scale = c.values.norm();
        assert!(parts.harmonic.values.norm() <= 1e-10 * scale);
        assert!(parts.coexact.values.norm() <= 1e-8 * scale);
    }

    #[test]
    fn projection_is_m_selfadjoint_and_idempotent() {
        let (k, _, h) = setup(generators::genus_surface(1, 0).unwrap());
        let x = random_cochain(k.simplex_count(1), 1, 31);
        let y = random_cochain(k.simplex_count(1), 1, 37);
        let px = h.harmonic_projection(1, &x.values);
        let py = h.harmonic_projection(1, &y.values);
        let ppx = h.harmonic_projection(1, &px);
        assert!((&ppx - &px).norm() <= 1e-10 * px.norm().max(1e-14));
        let lhs = h.inner(1, &px, &y.values);
        let rhs = h.inner(1, &x.values, &py);
        assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1e-14));
    }

    #[test]
    fn lattice_is_harmonic_with_large_gap() {
        for k in [
            generators::flat_torus(2, 4).unwrap().0,
            generators::genus_surface(2, 0).unwrap(),
        ] {
            let (_, _, h) = setup(k);
            for deg in 0..=2usize {
                let d = h.diagnostics(deg);
                assert!(
                    d.gap_ratio >= 1e3,
                    "degree {deg} gap ratio {} too small",
                    d.gap_ratio
                );
                assert!(d.mass_min_eig > 0.0);
            }
        }
    }

    #[test]
    fn torus_lattice_evaluates_integrally_on_axis_loops() {
        let (k, markers) = generators::flat_torus(2, 8).unwrap();
        let arc = Arc::new(k);
        let hom = IntegerHomology::new(arc.clone())
            .with_preferred_dual_cycles(1, &markers.axis_loops)
            .unwrap();
        let h = HodgeStructure::build(&hom, HodgeOptions::default()).unwrap();
        let theta1 = &h.lattice(1)[0];
        let x = theta1.eval(&markers.axis_loops[0]);
        let y = theta1.eval(&markers.axis_loops[1]);
        assert!((x - 1.0).abs() <= 1e-8, "θ1(x-loop) = {x}");
        assert!(y.abs() <= 1e-8, "θ1(y-loop) = {y}");
        // single horizontal step pairs to 1/8 with the flat metric
        let step = markers.step_chain(h.complex(), &[0, 0], 0);
        let v = theta1.eval(&step);
        assert!((v - 0.125).abs() <= 1e-8, "θ1(step) = {v}");
    }

    #[test]
    fn integer_cocycle_vanishes_exactly_on_boundaries() {
        let (k, _) = generators::flat_torus(2, 4).unwrap();
        let arc = Arc::new(k);
        let hom = IntegerHomology::new(arc.clone());
        let coh = hom.cohomology(1).unwrap();
        let t = arc.simplex_chain(2, 0);
        let bd = arc.boundary(&t).unwrap();
        for theta_hat in &coh.free_cocycles {
            assert!(theta_hat.eval(&bd).is_zero());
        }
    }

    #[test]
    fn lumped_variant_keeps_harmonic_dimensions() {
        let (k, _) = generators::flat_torus(2, 4).unwrap();
        let arc = Arc::new(k);
        let hom = IntegerHomology::new(arc.clone());
        let opts = HodgeOptions {
            mass: MassKind::Lumped,
            ..Default::default()
        };
        let h = HodgeStructure::build(&hom, opts).unwrap();
        assert_eq!(h.harmonic_dim(1), 2);
    }
}
