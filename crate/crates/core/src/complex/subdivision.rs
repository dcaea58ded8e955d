//! Barycentric subdivision with exact chain-level transfer maps.
//!
//! [`barycentric_subdivision`] produces the subdivided complex `K'` whose
//! vertices are the barycenters of all simplices of `K`, together with
//!
//! * the subdivision chain map `sd : C_*(K) → C_*(K')` (cone recursion,
//!   commutes with ∂ exactly over the integers),
//! * the projection `π_* : C_*(K') → C_*(K)` induced by sending each
//!   barycenter to the largest vertex of its simplex; `π_* ∘ sd = id`
//!   exactly, so `π^*` transports integer cocycles to `K'` within the same
//!   cohomology class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{canonical_with_sign, Chain, Cochain, ComplexSpec, IntCochain, SimplicialComplex};
use crate::error::Result;
use crate::matrix::SparseIntMatrix;

pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// chain_maps[k] : C_k(K) -> C_k(K'), columns indexed by K-simplices.
    chain_maps: Vec<SparseIntMatrix>,
    /// projections[k] : C_k(K') -> C_k(K).
    projections: Vec<SparseIntMatrix>,
}

impl Subdivision {
    pub fn chain_map(&self, k: usize) -> &SparseIntMatrix {
        &self.chain_maps[k]
    }

    pub fn projection(&self, k: usize) -> &SparseIntMatrix {
        &self.projections[k]
    }

    /// sd(c): the same chain seen on the subdivided complex.
    pub fn map_chain(&self, c: &Chain) -> Chain {
        Chain {
            degree: c.degree,
            coeffs: self.chain_maps[c.degree].mul_vec(&c.coeffs),
        }
    }

    /// Evaluation transfer: (pull_back c')(σ) = c'(sd σ).
    pub fn pull_back(&self, c: &IntCochain) -> IntCochain {
        IntCochain {
            degree: c.degree,
            values: self.chain_maps[c.degree].mul_vec_transpose(&c.values),
        }
    }

    pub fn pull_back_real(&self, c: &Cochain) -> Cochain {
        let m = &self.chain_maps[c.degree];
        let mut vals = nalgebra::DVector::zeros(m.ncols());
        for (r, c_, v) in m.entries() {
            vals[c_] += crate::matrix::bigint_to_f64(v) * c.values[r];
        }
        Cochain {
            degree: c.degree,
            values: vals,
        }
    }

    /// π^*: transports a K-cocycle to a K'-cocycle in the same class, with
    /// (π^*θ)(sd c) = θ(c) exactly.
    pub fn transport_cocycle(&self, theta: &IntCochain) -> IntCochain {
        IntCochain {
            degree: theta.degree,
            values: self.projections[theta.degree].mul_vec_transpose(&theta.values),
        }
    }
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<Subdivision> {
    let n = k.dim();

    // Vertex ids of K': barycenter of K-simplex (deg, i) -> offsets[deg] + i.
    let mut offsets = vec![0usize; n + 2];
    for d in 0..=n {
        offsets[d + 1] = offsets[d] + k.simplex_count(d);
    }
    let n_new_vertices = offsets[n + 1];

    let mut coords: Vec<Vec<f64>> = Vec::with_capacity(n_new_vertices);
    for d in 0..=n {
        for s in k.simplices(d) {
            let mut c = vec![0.0; k.ambient_dim()];
            for &v in s {
                for (j, x) in k.vertex_coords(v).iter().enumerate() {
                    c[j] += x;
                }
            }
            for x in &mut c {
                *x /= (d + 1) as f64;
            }
            coords.push(c);
        }
    }

    // sd on every simplex, memoized; terms are (sorted tuple of K' ids, ±1).
    let mut memo: Vec<Vec<Option<Vec<(Vec<usize>, BigInt)>>>> = (0..=n)
        .map(|d| vec![None; k.simplex_count(d)])
        .collect();
    for i in 0..k.simplex_count(0) {
        memo[0][i] = Some(vec![(vec![offsets[0] + i], BigInt::one())]);
    }
    for d in 1..=n {
        for i in 0..k.simplex_count(d) {
            let tuple = k.simplex(d, i).to_vec();
            let apex = offsets[d] + i;
            let mut acc: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
            for (pos, _) in tuple.iter().enumerate() {
                let mut face = tuple.clone();
                face.remove(pos);
                let fi = k.index_of(d - 1, &face).expect("face enumerated");
                let face_sign = if pos % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for (t, c) in memo[d - 1][fi].as_ref().expect("memo order").clone() {
                    let mut coned = Vec::with_capacity(t.len() + 1);
                    coned.push(apex);
                    coned.extend_from_slice(&t);
                    let (sorted, perm_sign) =
                        canonical_with_sign(&coned).expect("barycenter ids distinct");
                    let coeff = &face_sign * &c * BigInt::from(perm_sign);
                    let e = acc.entry(sorted).or_insert_with(BigInt::zero);
                    *e += coeff;
                }
            }
            memo[d][i] = Some(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }

    // Child top simplices, their orientations and corner geometry.
    let mut tops: Vec<Vec<usize>> = Vec::new();
    let mut orients: Vec<i8> = Vec::new();
    let mut corners: Vec<Vec<Vec<f64>>> = Vec::new();
    let has_geometry = k.stored_corners().is_some() || k.periods().is_some();
    for t in 0..k.simplex_count(n) {
        let parent_tuple = k.simplex(n, t).to_vec();
        let parent_corners = k.corner_matrix(t);
        let parent_sign = BigInt::from(k.top_orientations()[t]);
        for (child, coeff) in memo[n][t].as_ref().unwrap() {
            let c = coeff * &parent_sign;
            tops.push(child.clone());
            orients.push(if c > BigInt::zero() { 1 } else { -1 });
            if has_geometry {
                // corner row per child vertex = barycenter of its K-face in
                // the parent's covering-space frame.
                let rows = child
                    .iter()
                    .map(|&id| {
                        let (deg, idx) = locate(&offsets, id);
                        let face = k.simplex(deg, idx);
                        let mut c = vec![0.0; k.ambient_dim()];
                        for &v in face {
                            let pos = parent_tuple
                                .binary_search(&v)
                                .expect("flag face inside parent");
                            for j in 0..k.ambient_dim() {
                                c[j] += parent_corners[(pos, j)];
                            }
                        }
                        for x in &mut c {
                            *x /= face.len() as f64;
                        }
                        c
                    })
                    .collect();
                corners.push(rows);
            }
        }
    }

    let complex = SimplicialComplex::build(ComplexSpec {
        top_simplices: tops,
        vertices: coords,
        periods: None,
        corners: if has_geometry { Some(corners) } else { None },
        orientations: Some(orients),
    })?;

    // Assemble the transfer matrices against K''s canonical indexing.
    let mut chain_maps = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut m = SparseIntMatrix::zeros(complex.simplex_count(d), k.simplex_count(d));
        for i in 0..k.simplex_count(d) {
            for (t, c) in memo[d][i].as_ref().unwrap() {
                let j = complex
                    .index_of(d, t)
                    .expect("sd image simplex present in K'");
                m.set(j, i, c.clone());
            }
        }
        chain_maps.push(m);
    }

    let mut projections = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut m = SparseIntMatrix::zeros(k.simplex_count(d), complex.simplex_count(d));
        for (j, s) in complex.simplices(d).iter().enumerate() {
            let mapped: Vec<usize> = s
                .iter()
                .map(|&id| {
                    let (deg, idx) = locate(&offsets, id);
                    *k.simplex(deg, idx).last().expect("nonempty simplex")
                })
                .collect();
            if let Some((sorted, sign)) = canonical_with_sign(&mapped) {
                let i = k.index_of(d, &sorted).expect("projection image is a face");
                m.set(i, j, BigInt::from(sign));
            }
        }
        projections.push(m);
    }

    Ok(Subdivision {
        complex,
        chain_maps,
        projections,
    })
}

fn locate(offsets: &[usize], id: usize) -> (usize, usize) {
    let deg = offsets.partition_point(|&o| o <= id) - 1;
    (deg, id - offsets[deg])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generators;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn sphere_subdivision_counts() {
        let k = generators::sphere(2).unwrap();
        let sd = barycentric_subdivision(&k).unwrap();
        assert_eq!(sd.complex.simplex_count(2), 24);
        assert_eq!(sd.complex.euler_characteristic(), 2);
    }

    #[test]
    fn chain_map_commutes_with_boundary() {
        let k = generators::flat_torus(2, 3).unwrap().0;
        let sd = barycentric_subdivision(&k).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for degree in 1..=2usize {
            for _ in 0..5 {
                let mut c = k.zero_chain(degree);
                for x in &mut c.coeffs {
                    *x = BigInt::from(rng.gen_range(-3i64..=3));
                }
                let lhs = sd.map_chain(&k.boundary(&c).unwrap());
                let rhs = sd.complex.boundary(&sd.map_chain(&c)).unwrap();
                assert_eq!(lhs.coeffs, rhs.coeffs);
            }
        }
    }

    #[test]
    fn mapped_cycle_stays_cycle() {
        let (k, markers) = generators::flat_torus(2, 3).unwrap();
        let sd = barycentric_subdivision(&k).unwrap();
        for loop_ in &markers.axis_loops {
            let img = sd.map_chain(loop_);
            assert!(sd.complex.is_cycle(&img));
        }
    }

    #[test]
    fn projection_retracts_subdivision() {
        let k = generators::sphere(2).unwrap();
        let sd = barycentric_subdivision(&k).unwrap();
        for d in 0..=2usize {
            let composed = sd.projection(d).mul(sd.chain_map(d));
            assert_eq!(composed, SparseIntMatrix::identity(k.simplex_count(d)));
        }
    }

    #[test]
    fn fundamental_cycle_maps_to_fundamental_cycle() {
        let k = generators::flat_torus(2, 3).unwrap().0;
        let sd = barycentric_subdivision(&k).unwrap();
        let mapped = sd.map_chain(&k.fundamental_cycle());
        assert_eq!(mapped.coeffs, sd.complex.fundamental_cycle().coeffs);
    }

    #[test]
    fn transported_cocycle_is_closed_and_matches_evaluations() {
        let (k, markers) = generators::flat_torus(2, 3).unwrap();
        let sd = barycentric_subdivision(&k).unwrap();
        // an integer 1-cocycle: coboundary of a random 0-cochain plus nothing
        // fancy; closedness and evaluation transfer are what matter.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut f = IntCochain::zero(0, k.simplex_count(0));
        for v in &mut f.values {
            *v = BigInt::from(rng.gen_range(-2i64..=2));
        }
        let theta = f.coboundary(&k).unwrap();
        let transported = sd.transport_cocycle(&theta);
        assert!(transported
            .coboundary(&sd.complex)
            .unwrap()
            .values
            .iter()
            .all(|v| v.is_zero() || *v == BigInt::zero()));
        let loop_ = &markers.axis_loops[0];
        assert_eq!(theta.eval(loop_), transported.eval(&sd.map_chain(loop_)));
    }
}
