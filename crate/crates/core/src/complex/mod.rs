//! Oriented finite simplicial complexes with piecewise-linear geometry,
//! integer chain algebra and boundary operators.
//!
//! A [`SimplicialComplex`] is a closed oriented pseudomanifold: every
//! (n−1)-simplex has exactly two top cofaces and the induced orientations
//! cancel. Simplices are stored as sorted vertex tuples in lexicographic
//! order, so index lookup is deterministic and boundary signs follow the
//! position-parity convention: omitting vertex `i` contributes `(−1)^i`.
//!
//! Geometry lives in per-top-simplex corner coordinates. For embedded
//! complexes these are just the vertex coordinates; identified complexes
//! (flat tori, identified polygons) carry explicit corners computed in the
//! covering space, so volumes and Gram matrices never see the
//! identification.

pub mod generators;
pub mod subdivision;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;

/// Raw ingredients of a complex. `periods` marks per-axis translation
/// identifications (coordinates are representatives in the fundamental
/// domain); `corners` carries explicit covering-space coordinates per top
/// simplex when the identification is not a global translation lattice.
#[derive(Clone, Debug, Default)]
pub struct ComplexSpec {
    pub top_simplices: Vec<Vec<usize>>,
    pub vertices: Vec<Vec<f64>>,
    pub periods: Option<Vec<f64>>,
    pub corners: Option<Vec<Vec<Vec<f64>>>>,
    pub orientations: Option<Vec<i8>>,
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    dim: usize,
    ambient: usize,
    vertices: Vec<Vec<f64>>,
    /// simplices[k] = sorted, duplicate-free list of sorted vertex tuples.
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// boundaries[k-1] = ∂_k : C_k -> C_{k-1}, for k = 1..=dim.
    boundaries: Vec<SparseIntMatrix>,
    top_orientations: Vec<i8>,
    /// Per top simplex: (n+1) corner coordinate rows in the covering space.
    corners: Option<Vec<Vec<Vec<f64>>>>,
    periods: Option<Vec<f64>>,
}

impl SimplicialComplex {
    /// Builds and validates a complex from its top simplices.
    ///
    /// All faces are enumerated, boundary matrices assembled, the closed
    /// pseudomanifold condition checked, and a consistent orientation
    /// assigned (or the provided one verified).
    pub fn build(spec: ComplexSpec) -> Result<Self> {
        let ComplexSpec {
            top_simplices,
            vertices,
            periods,
            corners,
            orientations,
        } = spec;

        if top_simplices.is_empty() {
            return Err(Error::EmptyInput("no top simplices".into()));
        }
        if vertices.is_empty() {
            return Err(Error::EmptyInput("no vertices".into()));
        }
        let ambient = vertices[0].len();
        if vertices.iter().any(|v| v.len() != ambient) {
            return Err(Error::InvalidComplex(
                "vertex coordinates have mixed ambient dimensions".into(),
            ));
        }
        let dim = top_simplices[0].len().saturating_sub(1);
        if dim == 0 {
            return Err(Error::InvalidComplex("top simplices must have dimension >= 1".into()));
        }

        let mut tops: Vec<Vec<usize>> = Vec::with_capacity(top_simplices.len());
        for t in &top_simplices {
            if t.len() != dim + 1 {
                return Err(Error::InvalidComplex(format!(
                    "top simplex {:?} does not have {} vertices",
                    t,
                    dim + 1
                )));
            }
            let mut s = t.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != dim + 1 {
                return Err(Error::InvalidComplex(format!("repeated vertex in simplex {:?}", t)));
            }
            if *s.last().unwrap() >= vertices.len() {
                return Err(Error::InvalidComplex(format!("vertex index out of range in {:?}", t)));
            }
            tops.push(s);
        }
        {
            let mut seen = BTreeSet::new();
            for t in &tops {
                if !seen.insert(t.clone()) {
                    return Err(Error::InvalidComplex(format!("duplicate top simplex {:?}", t)));
                }
            }
        }

        // Enumerate all faces, degree by degree.
        let mut face_sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for t in &tops {
            face_sets[dim].insert(t.clone());
        }
        for k in (1..=dim).rev() {
            let lower: Vec<Vec<usize>> = face_sets[k]
                .iter()
                .flat_map(|s| {
                    (0..s.len()).map(move |i| {
                        let mut f = s.clone();
                        f.remove(i);
                        f
                    })
                })
                .collect();
            face_sets[k - 1].extend(lower);
        }
        let simplices: Vec<Vec<Vec<usize>>> =
            face_sets.into_iter().map(|s| s.into_iter().collect()).collect();
        // Top simplices are re-sorted canonically; provided per-top data
        // (orientations, corners) must follow the same permutation.
        let input_pos: HashMap<&[usize], usize> =
            tops.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let canonical_to_input: Vec<usize> = simplices[dim]
            .iter()
            .map(|t| input_pos[t.as_slice()])
            .collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();

        // Boundary matrices.
        let mut boundaries = Vec::with_capacity(dim);
        for k in 1..=dim {
            let mut triplets = Vec::new();
            for (j, s) in simplices[k].iter().enumerate() {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    let fi = index[k - 1][&f];
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    triplets.push((fi, j, sign));
                }
            }
            boundaries.push(SparseIntMatrix::from_triplets(
                simplices[k - 1].len(),
                simplices[k].len(),
                triplets,
            ));
        }

        // Closed pseudomanifold: every ridge has exactly two top cofaces.
        // Record (coface, omitted position) pairs for the orientation pass.
        let n_ridges = simplices[dim - 1].len();
        let mut cofaces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_ridges];
        for (j, s) in simplices[dim].iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                cofaces[index[dim - 1][&f]].push((j, i));
            }
        }
        for (ri, cf) in cofaces.iter().enumerate() {
            if cf.len() != 2 {
                return Err(Error::NonManifold {
                    ridge: simplices[dim - 1][ri].clone(),
                    cofaces: cf.len(),
                });
            }
        }

        let top_orientations = match orientations {
            Some(provided) => {
                if provided.len() != tops.len() || provided.iter().any(|s| s.abs() != 1) {
                    return Err(Error::InvalidComplex("bad orientation vector".into()));
                }
                canonical_to_input.iter().map(|&i| provided[i]).collect()
            }
            None => orient_by_adjacency(tops.len(), &cofaces)?,
        };
        // Induced orientations of every ridge must cancel.
        for cf in &cofaces {
            let (j1, i1) = cf[0];
            let (j2, i2) = cf[1];
            let s1 = i32::from(top_orientations[j1]) * if i1 % 2 == 0 { 1 } else { -1 };
            let s2 = i32::from(top_orientations[j2]) * if i2 % 2 == 0 { 1 } else { -1 };
            if s1 + s2 != 0 {
                return Err(Error::NonOrientable);
            }
        }

        // Geometry: explicit corners wins, otherwise minimal-image lift for
        // periodic complexes, otherwise plain vertex coordinates.
        let corners = match (corners, &periods) {
            (Some(c), _) => {
                if c.len() != tops.len() || c.iter().any(|cs| cs.len() != dim + 1) {
                    return Err(Error::InvalidComplex("corner table shape mismatch".into()));
                }
                Some(canonical_to_input.iter().map(|&i| c[i].clone()).collect())
            }
            (None, Some(p)) => {
                if p.len() > ambient {
                    return Err(Error::InvalidComplex("more periods than coordinates".into()));
                }
                Some(lift_periodic_corners(&simplices[dim], &vertices, p))
            }
            (None, None) => None,
        };

        Ok(Self {
            dim,
            ambient,
            vertices,
            simplices,
            index,
            boundaries,
            top_orientations,
            corners,
            periods,
        })
    }

    /// Convenience constructor for plainly embedded complexes.
    pub fn from_tops(top_simplices: Vec<Vec<usize>>, vertices: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(ComplexSpec {
            top_simplices,
            vertices,
            ..Default::default()
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertex_coords(&self, v: usize) -> &[f64] {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        if k > self.dim {
            0
        } else {
            self.simplices[k].len()
        }
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        &self.simplices[k]
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[usize] {
        &self.simplices[k][i]
    }

    pub fn index_of(&self, k: usize, tuple: &[usize]) -> Option<usize> {
        self.index.get(k)?.get(tuple).copied()
    }

    pub fn top_orientations(&self) -> &[i8] {
        &self.top_orientations
    }

    pub fn periods(&self) -> Option<&[f64]> {
        self.periods.as_deref()
    }

    pub fn stored_corners(&self) -> Option<&Vec<Vec<Vec<f64>>>> {
        self.corners.as_ref()
    }

    /// ∂_k as an exact integer matrix (rows: (k−1)-simplices, cols: k-simplices).
    pub fn boundary_matrix(&self, k: usize) -> Result<&SparseIntMatrix> {
        if k == 0 || k > self.dim {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                dim: self.dim,
            });
        }
        Ok(&self.boundaries[k - 1])
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (k, s) in self.simplices.iter().enumerate() {
            let c = s.len() as i64;
            chi += if k % 2 == 0 { c } else { -c };
        }
        chi
    }

    /// The fundamental n-cycle: coefficient ±1 per top simplex following the
    /// stored orientation.
    pub fn fundamental_cycle(&self) -> Chain {
        Chain {
            degree: self.dim,
            coeffs: self
                .top_orientations
                .iter()
                .map(|&s| BigInt::from(s))
                .collect(),
        }
    }

    /// Same complex with every top orientation flipped.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        for s in &mut c.top_orientations {
            *s = -*s;
        }
        c
    }

    /// Corner coordinates of top simplex `t` as an (n+1)×N matrix, rows in
    /// the order of the sorted vertex tuple.
    pub fn corner_matrix(&self, t: usize) -> DMatrix<f64> {
        let tuple = &self.simplices[self.dim][t];
        let mut m = DMatrix::zeros(self.dim + 1, self.ambient);
        match &self.corners {
            Some(c) => {
                for (r, row) in c[t].iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        m[(r, j)] = *x;
                    }
                }
            }
            None => {
                for (r, &v) in tuple.iter().enumerate() {
                    for (j, x) in self.vertices[v].iter().enumerate() {
                        m[(r, j)] = *x;
                    }
                }
            }
        }
        m
    }

    pub fn zero_chain(&self, degree: usize) -> Chain {
        Chain {
            degree,
            coeffs: vec![BigInt::zero(); self.simplex_count(degree)],
        }
    }

    /// Chain supported on a single simplex.
    pub fn simplex_chain(&self, degree: usize, i: usize) -> Chain {
        let mut c = self.zero_chain(degree);
        c.coeffs[i] = BigInt::one();
        c
    }

    pub fn chain_from_terms(&self, degree: usize, terms: &[(Vec<usize>, BigInt)]) -> Result<Chain> {
        let mut c = self.zero_chain(degree);
        for (tuple, coeff) in terms {
            let mut t = tuple.clone();
            t.sort_unstable();
            let i = self
                .index_of(degree, &t)
                .ok_or_else(|| Error::Format(format!("simplex {:?} not in complex", tuple)))?;
            c.coeffs[i] += coeff;
        }
        Ok(c)
    }

    /// ∂c, exactly.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        if c.degree == 0 {
            return Err(Error::DegreeOutOfRange {
                degree: 0,
                dim: self.dim,
            });
        }
        let m = self.boundary_matrix(c.degree)?;
        Ok(Chain {
            degree: c.degree - 1,
            coeffs: m.mul_vec(&c.coeffs),
        })
    }

    pub fn is_cycle(&self, c: &Chain) -> bool {
        if c.degree == 0 {
            return true;
        }
        match self.boundary(c) {
            Ok(b) => b.is_zero(),
            Err(_) => false,
        }
    }

    /// Total unsigned PL volume.
    pub fn total_volume(&self) -> f64 {
        (0..self.simplex_count(self.dim))
            .map(|t| simplex_volume(&self.corner_matrix(t)))
            .sum()
    }
}

/// Orient by breadth-first propagation across ridges; fails on
/// inconsistent (non-orientable) adjacency.
fn orient_by_adjacency(n_tops: usize, cofaces: &[Vec<(usize, usize)>]) -> Result<Vec<i8>> {
    // adjacency: for each top simplex, (neighbor, parity factor) so that
    // sign(neighbor) = factor * sign(self).
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n_tops];
    for cf in cofaces {
        let (j1, i1) = cf[0];
        let (j2, i2) = cf[1];
        // s1*(-1)^{i1} + s2*(-1)^{i2} = 0  =>  s2 = -s1*(-1)^{i1+i2}
        let factor: i8 = if (i1 + i2) % 2 == 0 { -1 } else { 1 };
        adj[j1].push((j2, factor));
        adj[j2].push((j1, factor));
    }
    let mut signs = vec![0i8; n_tops];
    for start in 0..n_tops {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(j) = queue.pop_front() {
            for &(nb, f) in &adj[j] {
                let expect = signs[j] * f;
                if signs[nb] == 0 {
                    signs[nb] = expect;
                    queue.push_back(nb);
                } else if signs[nb] != expect {
                    return Err(Error::NonOrientable);
                }
            }
        }
    }
    Ok(signs)
}

/// Lift vertex coordinates per top simplex to the covering space of a
/// periodic complex: each coordinate difference from the first vertex is
/// wrapped to (−p/2, p/2]. Valid as long as every simplex fits in a box of
/// side ≤ p/2 per periodic axis, which the torus generator guarantees.
fn lift_periodic_corners(
    tops: &[Vec<usize>],
    vertices: &[Vec<f64>],
    periods: &[f64],
) -> Vec<Vec<Vec<f64>>> {
    tops.iter()
        .map(|tuple| {
            let base = &vertices[tuple[0]];
            tuple
                .iter()
                .map(|&v| {
                    let mut p = vertices[v].clone();
                    for (a, &period) in periods.iter().enumerate() {
                        let mut d = p[a] - base[a];
                        while d > period / 2.0 {
                            d -= period;
                        }
                        while d <= -period / 2.0 {
                            d += period;
                        }
                        p[a] = base[a] + d;
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// Unsigned volume of the simplex with corner rows `m`.
pub fn simplex_volume(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows() - 1;
    if n == 0 {
        return 1.0;
    }
    let mut e = DMatrix::zeros(m.ncols(), n);
    for i in 0..n {
        for j in 0..m.ncols() {
            e[(j, i)] = m[(i + 1, j)] - m[(0, j)];
        }
    }
    let q = e.transpose() * e;
    let det = q.determinant().max(0.0);
    det.sqrt() / factorial(n)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product::<f64>().max(1.0)
}

/// Integer chain: exact coefficient vector indexed by the k-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: Vec<BigInt>,
}

impl Chain {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "chain degree mismatch");
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        Chain {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Chain {
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Chain {
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn to_f64(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.coeffs.len(),
            self.coeffs.iter().map(crate::matrix::bigint_to_f64),
        )
    }

    /// Support as (simplex index, coefficient) pairs.
    pub fn terms(&self) -> Vec<(usize, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

/// Exact integer cochain (dual to integer chains).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntCochain {
    pub degree: usize,
    pub values: Vec<BigInt>,
}

impl IntCochain {
    pub fn zero(degree: usize, len: usize) -> Self {
        Self {
            degree,
            values: vec![BigInt::zero(); len],
        }
    }

    /// Exact evaluation on a chain of the same degree.
    pub fn eval(&self, chain: &Chain) -> BigInt {
        assert_eq!(self.degree, chain.degree, "cochain/chain degree mismatch");
        assert_eq!(self.values.len(), chain.coeffs.len());
        self.values
            .iter()
            .zip(&chain.coeffs)
            .map(|(v, c)| v * c)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self {
            degree: self.degree,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn to_real(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            values: DVector::from_iterator(
                self.values.len(),
                self.values.iter().map(crate::matrix::bigint_to_f64),
            ),
        }
    }

    /// Coboundary dc = c ∘ ∂ over the integers.
    pub fn coboundary(&self, complex: &SimplicialComplex) -> Result<IntCochain> {
        if self.degree >= complex.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree + 1,
                dim: complex.dim(),
            });
        }
        let bd = complex.boundary_matrix(self.degree + 1)?;
        Ok(IntCochain {
            degree: self.degree + 1,
            values: bd.mul_vec_transpose(&self.values),
        })
    }
}

/// Floating-point cochain used throughout the Hodge layer.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub values: DVector<f64>,
}

impl Cochain {
    pub fn zeros(degree: usize, len: usize) -> Self {
        Self {
            degree,
            values: DVector::zeros(len),
        }
    }

    pub fn eval(&self, chain: &Chain) -> f64 {
        assert_eq!(self.degree, chain.degree, "cochain/chain degree mismatch");
        self.values.dot(&chain.to_f64())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self {
            degree: self.degree,
            values: &self.values + &other.values,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self {
            degree: self.degree,
            values: &self.values - &other.values,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            degree: self.degree,
            values: &self.values * s,
        }
    }

    pub fn norm(&self) -> f64 {
        self.values.norm()
    }
}

/// Sorts a vertex tuple, returning the permutation sign; `None` when a
/// vertex repeats (degenerate simplex).
pub fn canonical_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = tuple.to_vec();
    let mut sign = 1i8;
    // insertion sort with transposition counting
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// Collects distinct sorted tuples and reports whether duplicates exist.
pub(crate) fn has_duplicate_tuples(tops: &[Vec<usize>]) -> bool {
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for t in tops {
        let mut s = t.clone();
        s.sort_unstable();
        *seen.entry(s).or_insert(0) += 1;
    }
    seen.values().any(|&c| c > 1)
}
