//! Exact integer (co)homology with torsion, cup products, duality
//! pairings and dual homology bases.
//!
//! Everything here is arbitrary-precision integer arithmetic on top of
//! [`snf::smith_normal_form`]; floating point never enters. Homology in
//! degree k is presented as ker ∂_k / im ∂_{k+1}: the Smith form of ∂_k
//! yields a saturated kernel basis, the image is re-expressed in kernel
//! coordinates and reduced again, which produces Betti numbers, invariant
//! factors, integer representatives and a coordinate homomorphism in one
//! pass. Cohomology runs the same machinery on the transposed operators.

pub mod cup;
pub mod snf;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::{Chain, IntCochain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;
use snf::{smith_normal_form, SmithDecomposition};

/// Coordinates of a cycle class: free part in ℤ^b, torsion part in
/// ⊕ᵢ ℤ/dᵢ (entries reduced to [0, dᵢ)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCoords {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
    pub torsion_orders: Vec<BigInt>,
}

impl HomologyCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    /// Group law in ℤ^b ⊕ ⊕ᵢ ℤ/dᵢ.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.torsion_orders, other.torsion_orders);
        HomologyCoords {
            free: self
                .free
                .iter()
                .zip(&other.free)
                .map(|(a, b)| a + b)
                .collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(&self.torsion_orders)
                .map(|((a, b), d)| (a + b).mod_floor(d))
                .collect(),
            torsion_orders: self.torsion_orders.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        HomologyCoords {
            free: self.free.iter().map(|a| -a).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(a, d)| (-a).mod_floor(d))
                .collect(),
            torsion_orders: self.torsion_orders.clone(),
        }
    }
}

impl fmt::Display for HomologyCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|v| v.to_string()).collect();
        let tors: Vec<String> = self
            .torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(v, d)| format!("{v} mod {d}"))
            .collect();
        write!(f, "free [{}] torsion [{}]", free.join(", "), tors.join(", "))
    }
}

/// ker A / im B for integer matrices with A·B = 0.
struct KernelQuotient {
    /// SNF of A; kernel basis = last z columns of V_A.
    snf_a: SmithDecomposition,
    /// kernel dimension
    z: usize,
    /// SNF of the image matrix expressed in kernel coordinates.
    snf_b: SmithDecomposition,
    /// rank of the image
    s: usize,
    betti: usize,
    /// invariant factors > 1 with their positions in 0..s
    torsion: Vec<(usize, BigInt)>,
}

impl KernelQuotient {
    fn new(a: &SparseIntMatrix, b: &SparseIntMatrix) -> Self {
        let snf_a = smith_normal_form(a);
        let n = a.ncols();
        let z = n - snf_a.rank;

        // image of B in kernel coordinates: bottom z rows of V_A^{-1} B.
        let vinv_b = snf_a.v_inv.mul(b);
        let mut bk = SparseIntMatrix::zeros(z, b.ncols());
        for (r, c, v) in vinv_b.entries() {
            if r >= snf_a.rank {
                bk.set(r - snf_a.rank, c, v.clone());
            } else {
                debug_assert!(v.is_zero(), "image of B is not contained in ker A");
            }
        }
        let snf_b = smith_normal_form(&bk);
        let s = snf_b.rank;
        let betti = z - s;
        let torsion: Vec<(usize, BigInt)> = snf_b
            .divisors()
            .into_iter()
            .enumerate()
            .filter(|(_, d)| d > &BigInt::one())
            .collect();
        KernelQuotient {
            snf_a,
            z,
            snf_b,
            s,
            betti,
            torsion,
        }
    }

    fn orders(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|(_, d)| d.clone()).collect()
    }

    /// Kernel coordinates of c, or `None` when c ∉ ker A.
    fn kernel_coords(&self, c: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.snf_a.v_inv.mul_vec(c);
        if y[..self.snf_a.rank].iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(y[self.snf_a.rank..].to_vec())
    }

    fn class_coords(&self, c: &[BigInt]) -> Option<HomologyCoords> {
        let y = self.kernel_coords(c)?;
        let w = self.snf_b.u.mul_vec(&y);
        let free = w[self.s..].to_vec();
        let torsion = self
            .torsion
            .iter()
            .map(|(i, d)| w[*i].mod_floor(d))
            .collect();
        Some(HomologyCoords {
            free,
            torsion,
            torsion_orders: self.orders(),
        })
    }

    /// Element of the ambient module with the given kernel coordinates.
    fn from_kernel_coords(&self, ambient: usize, y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); ambient];
        for (j, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let col = self.snf_a.rank + j;
            for i in 0..ambient {
                let v = self.snf_a.v.get(i, col);
                if !v.is_zero() {
                    out[i] += v * c;
                }
            }
        }
        out
    }

    /// Representatives of the free part of the quotient: columns s..z of
    /// U_B^{-1} expressed in the ambient module.
    fn free_reps(&self, ambient: usize) -> Vec<Vec<BigInt>> {
        (self.s..self.z)
            .map(|j| {
                let col: Vec<BigInt> = (0..self.z).map(|i| self.snf_b.u_inv.get(i, j)).collect();
                self.from_kernel_coords(ambient, &col)
            })
            .collect()
    }

    fn torsion_reps(&self, ambient: usize) -> Vec<(Vec<BigInt>, BigInt)> {
        self.torsion
            .iter()
            .map(|(j, d)| {
                let col: Vec<BigInt> = (0..self.z).map(|i| self.snf_b.u_inv.get(i, *j)).collect();
                (self.from_kernel_coords(ambient, &col), d.clone())
            })
            .collect()
    }

    /// Solves B x = c for c in ker A with vanishing class; `None` when the
    /// class is nonzero.
    fn preimage(&self, c: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.kernel_coords(c)?;
        self.snf_b.solve(&y)
    }
}

/// Integer homology of one degree, with representatives and coordinates.
pub struct HomologyData {
    pub degree: usize,
    pub betti: usize,
    /// invariant factors > 1
    pub torsion: Vec<BigInt>,
    pub free_reps: Vec<Chain>,
    pub torsion_reps: Vec<(Chain, BigInt)>,
    kq: KernelQuotient,
    n_simplices: usize,
}

impl HomologyData {
    /// Coordinates of a cycle; `NotACycle` when ∂c ≠ 0.
    pub fn coordinates(&self, c: &Chain) -> Result<HomologyCoords> {
        assert_eq!(c.degree, self.degree, "degree mismatch");
        self.kq.class_coords(&c.coeffs).ok_or(Error::NotACycle)
    }
}

/// Integer cohomology of one degree.
pub struct CohomologyData {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    /// integer cocycles spanning H^k / torsion
    pub free_cocycles: Vec<IntCochain>,
    pub torsion_cocycles: Vec<(IntCochain, BigInt)>,
}

impl CohomologyData {
    /// Change of free basis so that evaluation against the given cycles is
    /// the identity matrix. Fails with `NotUnimodular` when the evaluation
    /// lattice is not invertible over ℤ.
    pub fn rebased(&self, dual_cycles: &[Chain]) -> Result<CohomologyData> {
        if dual_cycles.len() != self.betti {
            return Err(Error::DimensionMismatch(format!(
                "{} dual cycles for betti {}",
                dual_cycles.len(),
                self.betti
            )));
        }
        let b = self.betti;
        let mut eval = vec![vec![BigInt::zero(); b]; b];
        for (i, theta) in self.free_cocycles.iter().enumerate() {
            for (j, y) in dual_cycles.iter().enumerate() {
                eval[i][j] = theta.eval(y);
            }
        }
        let inv = invert_unimodular(&eval).ok_or(Error::NotUnimodular)?;
        let new_basis: Vec<IntCochain> = (0..b)
            .map(|a| {
                let mut acc = IntCochain::zero(self.degree, self.free_cocycles[0].values.len());
                for (c, theta) in self.free_cocycles.iter().enumerate() {
                    acc = acc.add(&theta.scale(&inv[a][c]));
                }
                acc
            })
            .collect();
        Ok(CohomologyData {
            degree: self.degree,
            betti: self.betti,
            torsion: self.torsion.clone(),
            free_cocycles: new_basis,
            torsion_cocycles: self.torsion_cocycles.clone(),
        })
    }
}

/// Determinant of a small dense integer matrix (Bareiss, fraction-free).
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_rem(&prev).0;
            }
        }
        for i in k + 1..n {
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a unimodular integer matrix; `None` if |det| ≠ 1.
pub fn invert_unimodular(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let det = int_det(m);
    if det.abs() != BigInt::one() {
        return None;
    }
    let sm = SparseIntMatrix::from_triplets(
        n,
        n,
        m.iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
    );
    let s = smith_normal_form(&sm);
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let col = s.solve(&e)?;
        for (i, value) in col.into_iter().enumerate() {
            inv[i][j] = value;
        }
    }
    Some(inv)
}

/// Lazy per-degree integer (co)homology of one complex.
pub struct IntegerHomology {
    complex: Arc<SimplicialComplex>,
    homology: Vec<OnceLock<Arc<HomologyData>>>,
    cohomology: Vec<OnceLock<Arc<CohomologyData>>>,
}

impl IntegerHomology {
    pub fn new(complex: Arc<SimplicialComplex>) -> Self {
        let n = complex.dim();
        IntegerHomology {
            complex,
            homology: (0..=n).map(|_| OnceLock::new()).collect(),
            cohomology: (0..=n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Pre-seeds the degree-k cohomology with a basis rebased against the
    /// given dual cycles (θ̂_i(Y_j) = δ_ij). Must be called before first use
    /// of that degree.
    pub fn with_preferred_dual_cycles(self, degree: usize, cycles: &[Chain]) -> Result<Self> {
        let data = self.cohomology(degree)?;
        let rebased = Arc::new(data.rebased(cycles)?);
        let n = self.complex.dim();
        let coh: Vec<OnceLock<Arc<CohomologyData>>> = (0..=n).map(|_| OnceLock::new()).collect();
        for (k, lock) in self.cohomology.iter().enumerate() {
            if k == degree {
                coh[k].set(rebased.clone()).ok();
            } else if let Some(v) = lock.get() {
                coh[k].set(v.clone()).ok();
            }
        }
        Ok(IntegerHomology {
            complex: self.complex,
            homology: self.homology,
            cohomology: coh,
        })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.complex.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                dim: self.complex.dim(),
            });
        }
        Ok(())
    }

    /// ∂_k, with the empty matrix at the ends of the complex.
    fn boundary_or_empty(&self, k: usize) -> SparseIntMatrix {
        let n = self.complex.dim();
        if k == 0 {
            SparseIntMatrix::zeros(0, self.complex.simplex_count(0))
        } else if k > n {
            SparseIntMatrix::zeros(self.complex.simplex_count(n), 0)
        } else {
            self.complex.boundary_matrix(k).expect("degree checked").clone()
        }
    }

    pub fn homology(&self, k: usize) -> Result<Arc<HomologyData>> {
        self.check_degree(k)?;
        Ok(self.homology[k]
            .get_or_init(|| {
                let a = self.boundary_or_empty(k);
                let b = self.boundary_or_empty(k + 1);
                let kq = KernelQuotient::new(&a, &b);
                let n_simplices = self.complex.simplex_count(k);
                let free_reps = kq
                    .free_reps(n_simplices)
                    .into_iter()
                    .map(|coeffs| Chain { degree: k, coeffs })
                    .collect();
                let torsion_reps = kq
                    .torsion_reps(n_simplices)
                    .into_iter()
                    .map(|(coeffs, d)| (Chain { degree: k, coeffs }, d))
                    .collect();
                Arc::new(HomologyData {
                    degree: k,
                    betti: kq.betti,
                    torsion: kq.orders(),
                    free_reps,
                    torsion_reps,
                    kq,
                    n_simplices,
                })
            })
            .clone())
    }

    pub fn cohomology(&self, k: usize) -> Result<Arc<CohomologyData>> {
        self.check_degree(k)?;
        Ok(self.cohomology[k]
            .get_or_init(|| {
                // cochain complex: A = d_k = ∂_{k+1}^T, B = d_{k-1} = ∂_k^T
                let a = self.boundary_or_empty(k + 1).transpose();
                let b = self.boundary_or_empty(k).transpose();
                let kq = KernelQuotient::new(&a, &b);
                let n_simplices = self.complex.simplex_count(k);
                let free_cocycles = kq
                    .free_reps(n_simplices)
                    .into_iter()
                    .map(|values| IntCochain { degree: k, values })
                    .collect();
                let torsion_cocycles = kq
                    .torsion_reps(n_simplices)
                    .into_iter()
                    .map(|(values, d)| (IntCochain { degree: k, values }, d))
                    .collect();
                Arc::new(CohomologyData {
                    degree: k,
                    betti: kq.betti,
                    torsion: kq.orders(),
                    free_cocycles,
                    torsion_cocycles,
                })
            })
            .clone())
    }

    /// Homology coordinates of a cycle.
    pub fn coordinates(&self, z: &Chain) -> Result<HomologyCoords> {
        self.homology(z.degree)?.coordinates(z)
    }

    /// A chain Γ with ∂Γ = z, or `NotABoundary` carrying the nonzero
    /// homology coordinates as the failure certificate.
    pub fn bounding_chain(&self, z: &Chain) -> Result<Chain> {
        let h = self.homology(z.degree)?;
        let coords = h.coordinates(z)?;
        if !coords.is_zero() {
            return Err(Error::NotABoundary { coords });
        }
        let x = h.kq.preimage(&z.coeffs).expect("zero class must bound");
        let gamma = Chain {
            degree: z.degree + 1,
            coeffs: x,
        };
        debug_assert!(
            z.degree + 1 > self.complex.dim()
                || self.complex.boundary(&gamma).unwrap().coeffs == z.coeffs
        );
        Ok(gamma)
    }

    /// Cycles Y_i with θ̂_j(Y_i) = δ_ij against the degree-k free cocycle
    /// basis; exact by construction.
    pub fn dual_homology_basis(&self, k: usize) -> Result<Vec<Chain>> {
        let hom = self.homology(k)?;
        let coh = self.cohomology(k)?;
        let b = hom.betti;
        if coh.betti != b {
            return Err(Error::NotUnimodular);
        }
        if b == 0 {
            return Ok(Vec::new());
        }
        // P[j][i] = θ̂_j(z_i)
        let p: Vec<Vec<BigInt>> = coh
            .free_cocycles
            .iter()
            .map(|t| hom.free_reps.iter().map(|z| t.eval(z)).collect())
            .collect();
        let c = invert_unimodular(&p).ok_or(Error::NotUnimodular)?;
        // Y_i = Σ_a C[a][i] z_a
        let mut out = Vec::with_capacity(b);
        for i in 0..b {
            let mut y = Chain {
                degree: k,
                coeffs: vec![BigInt::zero(); hom.n_simplices],
            };
            for (a, z) in hom.free_reps.iter().enumerate() {
                y = y.add(&z.scale(&c[a][i]));
            }
            out.push(y);
        }
        // exact Kronecker property
        for (i, y) in out.iter().enumerate() {
            for (j, t) in coh.free_cocycles.iter().enumerate() {
                let v = t.eval(y);
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                if v != expect {
                    return Err(Error::NotUnimodular);
                }
            }
        }
        Ok(out)
    }

    /// Integer cup-pairing matrix P_ab = (θ̂_a^{(p)} ⌣ θ̂_b^{(n−p)})([X]).
    pub fn pairing_matrix(&self, p: usize) -> Result<Vec<Vec<BigInt>>> {
        let n = self.complex.dim();
        self.check_degree(p)?;
        let cp = self.cohomology(p)?;
        let cq = self.cohomology(n - p)?;
        let fundamental = self.complex.fundamental_cycle();
        let mut out = vec![vec![BigInt::zero(); cq.betti]; cp.betti];
        for (a, ta) in cp.free_cocycles.iter().enumerate() {
            for (b, tb) in cq.free_cocycles.iter().enumerate() {
                let cup = cup::cup_product(&self.complex, ta, tb)?;
                out[a][b] = cup.eval(&fundamental);
            }
        }
        if cp.betti != cq.betti || (cp.betti > 0 && int_det(&out).abs() != BigInt::one()) {
            return Err(Error::SingularPairing);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generators;

    fn homology_of(k: &SimplicialComplex) -> IntegerHomology {
        IntegerHomology::new(Arc::new(k.clone()))
    }

    #[test]
    fn sphere_betti_numbers() {
        let k = generators::sphere(2).unwrap();
        let h = homology_of(&k);
        let b: Vec<usize> = (0..=2).map(|d| h.homology(d).unwrap().betti).collect();
        assert_eq!(b, vec![1, 0, 1]);
        for d in 0..=2 {
            assert!(h.homology(d).unwrap().torsion.is_empty());
        }
    }

    #[test]
    fn torus_betti_numbers() {
        let (k, _) = generators::flat_torus(2, 4).unwrap();
        let h = homology_of(&k);
        let b: Vec<usize> = (0..=2).map(|d| h.homology(d).unwrap().betti).collect();
        assert_eq!(b, vec![1, 2, 1]);
    }

    #[test]
    fn torus3_betti_numbers() {
        let (k, _) = generators::flat_torus(3, 3).unwrap();
        let h = homology_of(&k);
        let b: Vec<usize> = (0..=3).map(|d| h.homology(d).unwrap().betti).collect();
        assert_eq!(b, vec![1, 3, 3, 1]);
    }

    #[test]
    fn genus2_first_betti() {
        let k = generators::genus_surface(2, 0).unwrap();
        let h = homology_of(&k);
        assert_eq!(h.homology(1).unwrap().betti, 4);
        assert_eq!(h.homology(0).unwrap().betti, 1);
        assert_eq!(h.homology(2).unwrap().betti, 1);
    }

    #[test]
    fn projective3_torsion() {
        let k = generators::projective3().unwrap();
        let h = homology_of(&k);
        let h1 = h.homology(1).unwrap();
        assert_eq!(h1.betti, 0);
        assert_eq!(h1.torsion, vec![BigInt::from(2)]);
        let h2 = h.homology(2).unwrap();
        assert_eq!(h2.betti, 0);
        assert!(h2.torsion.is_empty());
        // universal coefficients: torsion(H^2) = torsion(H_1)
        let c2 = h.cohomology(2).unwrap();
        assert_eq!(c2.torsion, vec![BigInt::from(2)]);
        // orientable 3-manifold: b0 = b3 = 1
        assert_eq!(h.homology(0).unwrap().betti, 1);
        assert_eq!(h.homology(3).unwrap().betti, 1);
    }

    #[test]
    fn universal_coefficients_on_fixtures() {
        for k in [
            generators::sphere(2).unwrap(),
            generators::flat_torus(2, 3).unwrap().0,
            generators::genus_surface(2, 0).unwrap(),
        ] {
            let h = homology_of(&k);
            for d in 0..=k.dim() {
                let hom = h.homology(d).unwrap();
                let coh = h.cohomology(d).unwrap();
                assert_eq!(hom.betti, coh.betti, "free ranks differ in degree {d}");
                if d > 0 {
                    let prev = h.homology(d - 1).unwrap();
                    assert_eq!(coh.torsion, prev.torsion, "UC torsion mismatch in degree {d}");
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_sum() {
        let (k, _) = generators::flat_torus(3, 3).unwrap();
        let h = homology_of(&k);
        let alt: i64 = (0..=3)
            .map(|d| {
                let b = h.homology(d).unwrap().betti as i64;
                if d % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        assert_eq!(alt, k.euler_characteristic());
    }

    #[test]
    fn representatives_are_cycles() {
        let k = generators::genus_surface(2, 0).unwrap();
        let h = homology_of(&k);
        let h1 = h.homology(1).unwrap();
        for z in &h1.free_reps {
            assert!(k.is_cycle(z));
        }
        let kp = generators::projective3().unwrap();
        let hp = homology_of(&kp);
        for (z, d) in &hp.homology(1).unwrap().torsion_reps {
            assert!(kp.is_cycle(z));
            // d·z bounds
            let scaled = z.scale(d);
            assert!(hp.bounding_chain(&scaled).is_ok());
            // z itself does not
            assert!(matches!(
                hp.bounding_chain(z),
                Err(Error::NotABoundary { .. })
            ));
        }
    }

    #[test]
    fn coordinates_are_additive() {
        let (k, markers) = generators::flat_torus(2, 4).unwrap();
        let h = homology_of(&k);
        let a = &markers.axis_loops[0];
        let b = &markers.axis_loops[1];
        let ca = h.coordinates(a).unwrap();
        let cb = h.coordinates(b).unwrap();
        let cab = h.coordinates(&a.add(b)).unwrap();
        assert_eq!(ca.add(&cb), cab);
        // the two axis loops are independent generators
        assert_ne!(ca.free, cb.free);
        assert!(!ca.is_zero() && !cb.is_zero());
    }

    #[test]
    fn bounding_chain_for_vertex_difference() {
        let (k, markers) = generators::flat_torus(2, 4).unwrap();
        let h = homology_of(&k);
        let p = markers.grid_vertex(&[2, 1]);
        let q = markers.grid_vertex(&[0, 3]);
        let mut z = k.zero_chain(0);
        z.coeffs[p] = BigInt::one();
        z.coeffs[q] = -BigInt::one();
        let gamma = h.bounding_chain(&z).unwrap();
        assert_eq!(k.boundary(&gamma).unwrap().coeffs, z.coeffs);
        // zero cycle bounds with the zero chain
        let zero = k.zero_chain(0);
        let g0 = h.bounding_chain(&zero).unwrap();
        assert!(g0.is_zero());
    }

    #[test]
    fn axis_loop_is_not_a_boundary() {
        let (k, markers) = generators::flat_torus(2, 4).unwrap();
        let h = homology_of(&k);
        match h.bounding_chain(&markers.axis_loops[0]) {
            Err(Error::NotABoundary { coords }) => {
                assert!(!coords.is_zero());
                let ones: Vec<BigInt> = coords.free.iter().map(|v| v.abs()).collect();
                assert_eq!(ones.iter().filter(|v| **v == BigInt::one()).count(), 1);
                assert_eq!(ones.iter().filter(|v| v.is_zero()).count(), 1);
            }
            other => panic!("expected NotABoundary, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn dual_basis_torus_and_sphere() {
        let (k, _) = generators::flat_torus(2, 4).unwrap();
        let h = homology_of(&k);
        let ys = h.dual_homology_basis(1).unwrap();
        assert_eq!(ys.len(), 2);
        let coh = h.cohomology(1).unwrap();
        for (i, y) in ys.iter().enumerate() {
            for (j, t) in coh.free_cocycles.iter().enumerate() {
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(t.eval(y), expect);
            }
        }

        let s = generators::sphere(2).unwrap();
        let hs = homology_of(&s);
        let ys = hs.dual_homology_basis(2).unwrap();
        assert_eq!(ys.len(), 1);
        let t = &hs.cohomology(2).unwrap().free_cocycles[0];
        assert_eq!(t.eval(&ys[0]), BigInt::one());
    }

    #[test]
    fn genus2_dual_basis_identity_4x4() {
        let k = generators::genus_surface(2, 0).unwrap();
        let h = homology_of(&k);
        let ys = h.dual_homology_basis(1).unwrap();
        assert_eq!(ys.len(), 4);
        let coh = h.cohomology(1).unwrap();
        for (i, y) in ys.iter().enumerate() {
            for (j, t) in coh.free_cocycles.iter().enumerate() {
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(t.eval(y), expect);
            }
        }
    }

    #[test]
    fn rebased_cohomology_hits_axis_loops() {
        let (k, markers) = generators::flat_torus(2, 4).unwrap();
        let h = homology_of(&k)
            .with_preferred_dual_cycles(1, &markers.axis_loops)
            .unwrap();
        let coh = h.cohomology(1).unwrap();
        for (i, t) in coh.free_cocycles.iter().enumerate() {
            for (j, y) in markers.axis_loops.iter().enumerate() {
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(t.eval(y), expect);
            }
        }
    }

    #[test]
    fn int_det_and_inverse() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(int_det(&m), BigInt::one());
        let inv = invert_unimodular(&m).unwrap();
        assert_eq!(inv[0][0], BigInt::from(2));
        assert_eq!(inv[0][1], BigInt::from(-3));
        let nonuni = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert!(invert_unimodular(&nonuni).is_none());
    }
}
