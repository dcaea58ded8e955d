//! Generators for the standard test manifolds.
//!
//! * `sphere(n)` — boundary of the standard (n+1)-simplex.
//! * `flat_torus(n, res)` — Kuhn triangulation of [0,1]^n with opposite
//!   faces identified; the metric is the flat one from the covering space.
//! * `genus_surface(g, res)` — regular 4g-gon with opposite sides
//!   identified by translation, fan-triangulated and refined until
//!   simplicial, then barycentrically refined `res` more times.
//! * `projective3()` — RP³ as the antipodal quotient of the subdivided
//!   16-cell boundary; the smallest torsion fixture (H₁ = ℤ/2).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::subdivision::barycentric_subdivision;
use crate::complex::{Chain, ComplexSpec, SimplicialComplex};
use crate::error::{Error, Result};

/// Boundary complex of the (n+1)-simplex, vertices on the standard basis
/// of ℝ^{n+2}.
pub fn sphere(n: usize) -> Result<SimplicialComplex> {
    if n < 1 {
        return Err(Error::InvalidComplex("sphere dimension must be >= 1".into()));
    }
    let nv = n + 2;
    let mut tops = Vec::new();
    for omit in 0..nv {
        let tuple: Vec<usize> = (0..nv).filter(|&v| v != omit).collect();
        tops.push(tuple);
    }
    let vertices: Vec<Vec<f64>> = (0..nv)
        .map(|i| (0..nv).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    SimplicialComplex::from_tops(tops, vertices)
}

/// Marked cycles of a generated flat torus: one axis loop per coordinate
/// direction, plus the grid layout needed to address vertices.
#[derive(Clone, Debug)]
pub struct TorusMarkers {
    pub n: usize,
    pub res: usize,
    pub axis_loops: Vec<Chain>,
}

impl TorusMarkers {
    /// Vertex id of the grid point with the given multi-index (entries
    /// taken modulo the resolution).
    pub fn grid_vertex(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.n);
        let mut id = 0usize;
        let mut stride = 1usize;
        for &c in coords {
            id += (c % self.res) * stride;
            stride *= self.res;
        }
        id
    }

    /// Single grid step from `from` one unit along `axis`, as a 1-chain
    /// whose boundary is (target − source).
    pub fn step_chain(&self, k: &SimplicialComplex, from: &[usize], axis: usize) -> Chain {
        let u = self.grid_vertex(from);
        let mut to = from.to_vec();
        to[axis] = (to[axis] + 1) % self.res;
        let v = self.grid_vertex(&to);
        let (tuple, coeff) = if u < v {
            (vec![u, v], BigInt::one())
        } else {
            (vec![v, u], -BigInt::one())
        };
        let mut c = k.zero_chain(1);
        let i = k.index_of(1, &tuple).expect("grid edge present");
        c.coeffs[i] = coeff;
        c
    }
}

/// Kuhn/Freudenthal triangulation of the flat n-torus at `res` subdivisions
/// per axis. Fails with `ResolutionTooSmall` when the identification would
/// produce duplicate or degenerate simplices (res ≤ 2).
pub fn flat_torus(n: usize, res: usize) -> Result<(SimplicialComplex, TorusMarkers)> {
    if n < 2 {
        return Err(Error::InvalidComplex("torus dimension must be >= 2".into()));
    }
    if res < 1 {
        return Err(Error::ResolutionTooSmall("resolution must be >= 1".into()));
    }

    let nv = res.pow(n as u32);
    let id_of = |grid: &[usize]| -> usize {
        let mut id = 0;
        let mut stride = 1;
        for &c in grid {
            id += (c % res) * stride;
            stride *= res;
        }
        id
    };

    let mut tops: Vec<Vec<usize>> = Vec::new();
    let mut corners: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut orientations: Vec<i8> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();

    let mut base = vec![0usize; n];
    loop {
        for perm in permutations(n) {
            // path simplex: base, then +e_{perm[0]}, +e_{perm[1]}, ...
            let mut pts = Vec::with_capacity(n + 1);
            let mut cur = base.clone();
            pts.push(cur.clone());
            for &axis in &perm {
                cur[axis] += 1;
                pts.push(cur.clone());
            }
            let mut pairs: Vec<(usize, Vec<f64>)> = pts
                .iter()
                .map(|g| {
                    (
                        id_of(g),
                        g.iter().map(|&x| x as f64 / res as f64).collect::<Vec<f64>>(),
                    )
                })
                .collect();
            pairs.sort_by_key(|(id, _)| *id);
            let tuple: Vec<usize> = pairs.iter().map(|(id, _)| *id).collect();
            if tuple.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::ResolutionTooSmall(format!(
                    "identification collapses a simplex at resolution {res}"
                )));
            }
            if !seen.insert(tuple.clone()) {
                return Err(Error::ResolutionTooSmall(format!(
                    "identification duplicates simplices at resolution {res}"
                )));
            }
            let corner_rows: Vec<Vec<f64>> = pairs.into_iter().map(|(_, c)| c).collect();
            orientations.push(lifted_orientation(&corner_rows));
            tops.push(tuple);
            corners.push(corner_rows);
        }
        // advance the cell multi-index
        let mut axis = 0;
        loop {
            if axis == n {
                break;
            }
            base[axis] += 1;
            if base[axis] < res {
                break;
            }
            base[axis] = 0;
            axis += 1;
        }
        if axis == n {
            break;
        }
    }

    let vertices: Vec<Vec<f64>> = (0..nv)
        .map(|id| {
            let mut g = id;
            (0..n)
                .map(|_| {
                    let c = g % res;
                    g /= res;
                    c as f64 / res as f64
                })
                .collect()
        })
        .collect();

    let complex = SimplicialComplex::build(ComplexSpec {
        top_simplices: tops,
        vertices,
        periods: Some(vec![1.0; n]),
        corners: Some(corners),
        orientations: Some(orientations),
    })?;

    let mut axis_loops = Vec::with_capacity(n);
    for axis in 0..n {
        let mut c = complex.zero_chain(1);
        for j in 0..res {
            let mut from = vec![0usize; n];
            from[axis] = j;
            let mut to = vec![0usize; n];
            to[axis] = (j + 1) % res;
            let (u, v) = (id_of(&from), id_of(&to));
            let (tuple, coeff) = if u < v {
                (vec![u, v], BigInt::one())
            } else {
                (vec![v, u], -BigInt::one())
            };
            let i = complex.index_of(1, &tuple).expect("axis edge present");
            c.coeffs[i] += coeff;
        }
        axis_loops.push(c);
    }

    Ok((
        complex,
        TorusMarkers {
            n,
            res,
            axis_loops,
        },
    ))
}

fn lifted_orientation(corner_rows: &[Vec<f64>]) -> i8 {
    let n = corner_rows.len() - 1;
    let mut e = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            e[(j, i)] = corner_rows[i + 1][j] - corner_rows[0][j];
        }
    }
    if e.determinant() >= 0.0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Closed oriented genus-g surface: regular 4g-gon, opposite sides glued by
/// translation, triangulated as a fan and twice barycentrically refined
/// before gluing (so the quotient is simplicial), then refined `res` more
/// times. Euler characteristic 2 − 2g.
pub fn genus_surface(g: usize, res: usize) -> Result<SimplicialComplex> {
    if g == 0 {
        return Err(Error::InvalidComplex("genus must be >= 1".into()));
    }
    let m = 4 * g;
    let poly: Vec<[f64; 2]> = (0..m)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            [a.cos(), a.sin()]
        })
        .collect();

    // fan from the center
    let mut coords: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    coords.extend(poly.iter().copied());
    let mut tris: Vec<[usize; 3]> = (0..m).map(|i| [0, 1 + i, 1 + (i + 1) % m]).collect();

    for _ in 0..2 {
        let (t2, c2) = subdivide_triangle_soup(&tris, &coords);
        tris = t2;
        coords = c2;
    }

    // Union-find over vertex ids for the boundary identification.
    let mut parent: Vec<usize> = (0..coords.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    };

    // locate boundary vertices on polygon sides
    let side_of = |p: &[f64; 2]| -> Option<(usize, f64)> {
        for i in 0..m {
            let a = poly[i];
            let b = poly[(i + 1) % m];
            let d = [b[0] - a[0], b[1] - a[1]];
            let len2 = d[0] * d[0] + d[1] * d[1];
            let t = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2;
            if !(-1e-9..=1.0 + 1e-9).contains(&t) {
                continue;
            }
            let proj = [a[0] + t * d[0], a[1] + t * d[1]];
            let dist2 = (p[0] - proj[0]).powi(2) + (p[1] - proj[1]).powi(2);
            if dist2 < 1e-18 {
                return Some((i, t.clamp(0.0, 1.0)));
            }
        }
        None
    };
    let locate_vertex = |target: [f64; 2], coords: &[[f64; 2]]| -> usize {
        coords
            .iter()
            .position(|c| (c[0] - target[0]).powi(2) + (c[1] - target[1]).powi(2) < 1e-18)
            .expect("identified boundary vertex exists")
    };

    for (v, p) in coords.iter().enumerate() {
        if let Some((side, t)) = side_of(p) {
            let partner_side = (side + 2 * g) % m;
            let a = poly[partner_side];
            let b = poly[(partner_side + 1) % m];
            let s = 1.0 - t;
            let target = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
            let w = locate_vertex(target, &coords);
            union(&mut parent, v, w);
        }
    }

    // compact relabeling
    let mut rep_to_new: BTreeMap<usize, usize> = BTreeMap::new();
    let mut new_coords: Vec<Vec<f64>> = Vec::new();
    let mut new_id = vec![usize::MAX; coords.len()];
    for v in 0..coords.len() {
        let r = find(&mut parent, v);
        let id = *rep_to_new.entry(r).or_insert_with(|| {
            new_coords.push(coords[r].to_vec());
            new_coords.len() - 1
        });
        new_id[v] = id;
    }

    let mut tops: Vec<Vec<usize>> = Vec::new();
    let mut corners: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut orientations: Vec<i8> = Vec::new();
    for t in &tris {
        let mapped = [new_id[t[0]], new_id[t[1]], new_id[t[2]]];
        let mut order = [0usize, 1, 2];
        order.sort_by_key(|&i| mapped[i]);
        let tuple: Vec<usize> = order.iter().map(|&i| mapped[i]).collect();
        if tuple.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(
                "polygon identification collapsed a triangle".into(),
            ));
        }
        let rows: Vec<Vec<f64>> = order.iter().map(|&i| coords[t[i]].to_vec()).collect();
        orientations.push(lifted_orientation(&rows));
        tops.push(tuple);
        corners.push(rows);
    }
    if crate::complex::has_duplicate_tuples(&tops) {
        return Err(Error::InvalidComplex(
            "polygon identification duplicated a triangle".into(),
        ));
    }

    let mut complex = SimplicialComplex::build(ComplexSpec {
        top_simplices: tops,
        vertices: new_coords,
        periods: None,
        corners: Some(corners),
        orientations: Some(orientations),
    })?;
    for _ in 0..res {
        complex = barycentric_subdivision(&complex)?.complex;
    }
    Ok(complex)
}

fn subdivide_triangle_soup(
    tris: &[[usize; 3]],
    coords: &[[f64; 2]],
) -> (Vec<[usize; 3]>, Vec<[f64; 2]>) {
    let mut coords2: Vec<[f64; 2]> = coords.to_vec();
    let mut midpoint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut mid = |a: usize, b: usize, coords2: &mut Vec<[f64; 2]>| -> usize {
        let key = if a < b { (a, b) } else { (b, a) };
        *midpoint.entry(key).or_insert_with(|| {
            coords2.push([
                (coords2[key.0][0] + coords2[key.1][0]) / 2.0,
                (coords2[key.0][1] + coords2[key.1][1]) / 2.0,
            ]);
            coords2.len() - 1
        })
    };
    let mut out = Vec::with_capacity(tris.len() * 6);
    for t in tris {
        let bary = {
            coords2.push([
                (coords[t[0]][0] + coords[t[1]][0] + coords[t[2]][0]) / 3.0,
                (coords[t[0]][1] + coords[t[1]][1] + coords[t[2]][1]) / 3.0,
            ]);
            coords2.len() - 1
        };
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            let m = mid(t[a], t[b], &mut coords2);
            out.push([t[a], m, bary]);
            out.push([t[b], m, bary]);
        }
    }
    (out, coords2)
}

/// RP³: antipodal quotient of the barycentric subdivision of the 16-cell
/// boundary. 192 tetrahedra; H₁ = ℤ/2 makes it the torsion fixture.
pub fn projective3() -> Result<SimplicialComplex> {
    // 16-cell boundary: vertices ±e_a, one tetrahedron per sign pattern.
    let mut tops = Vec::new();
    for signs in 0..16usize {
        let tuple: Vec<usize> = (0..4)
            .map(|a| if signs >> a & 1 == 0 { a } else { 4 + a })
            .collect();
        let (sorted, _) = crate::complex::canonical_with_sign(&tuple).unwrap();
        tops.push(sorted);
    }
    let vertices: Vec<Vec<f64>> = (0..8)
        .map(|i| {
            let mut v = vec![0.0; 4];
            v[i % 4] = if i < 4 { 1.0 } else { -1.0 };
            v
        })
        .collect();
    let cell16 = SimplicialComplex::from_tops(tops, vertices)?;
    let sd = barycentric_subdivision(&cell16)?;
    let k1 = sd.complex;

    // antipode of a barycenter vertex: negate every coordinate and find the
    // matching vertex (barycenters of antipodal faces).
    let antipode: Vec<usize> = (0..k1.simplex_count(0))
        .map(|v| {
            let target: Vec<f64> = k1.vertex_coords(v).iter().map(|x| -x).collect();
            (0..k1.simplex_count(0))
                .find(|&w| {
                    k1.vertex_coords(w)
                        .iter()
                        .zip(&target)
                        .all(|(a, b)| (a - b).abs() < 1e-9)
                })
                .expect("antipodal barycenter exists")
        })
        .collect();

    let mut rep_to_new: BTreeMap<usize, usize> = BTreeMap::new();
    let mut new_coords: Vec<Vec<f64>> = Vec::new();
    let mut class = vec![usize::MAX; k1.simplex_count(0)];
    for v in 0..k1.simplex_count(0) {
        let r = v.min(antipode[v]);
        let id = *rep_to_new.entry(r).or_insert_with(|| {
            new_coords.push(k1.vertex_coords(r).to_vec());
            new_coords.len() - 1
        });
        class[v] = id;
    }

    let mut chosen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for t in 0..k1.simplex_count(3) {
        let mapped: Vec<usize> = k1.simplex(3, t).iter().map(|&v| class[v]).collect();
        let (sorted, _) = crate::complex::canonical_with_sign(&mapped)
            .ok_or_else(|| Error::InvalidComplex("antipodal quotient collapsed a simplex".into()))?;
        chosen.entry(sorted).or_insert(t);
    }

    let mut tops = Vec::new();
    let mut corners = Vec::new();
    for (tuple, &t) in &chosen {
        // corner rows ordered by the class tuple, coordinates from the
        // chosen preimage tetrahedron.
        let pre = k1.simplex(3, t);
        let rows: Vec<Vec<f64>> = tuple
            .iter()
            .map(|&cls| {
                let &v = pre.iter().find(|&&v| class[v] == cls).expect("class member");
                k1.vertex_coords(v).to_vec()
            })
            .collect();
        tops.push(tuple.clone());
        corners.push(rows);
    }

    SimplicialComplex::build(ComplexSpec {
        top_simplices: tops,
        vertices: new_coords,
        periods: None,
        corners: Some(corners),
        orientations: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_2_4_counts() {
        let (k, _) = flat_torus(2, 4).unwrap();
        assert_eq!(k.simplex_count(0), 16);
        assert_eq!(k.simplex_count(1), 48);
        assert_eq!(k.simplex_count(2), 32);
        assert_eq!(k.euler_characteristic(), 0);
        // consistent orientation: every top simplex is positively oriented
        // in the covering space, and the fundamental cycle is closed.
        for t in 0..k.simplex_count(2) {
            let m = k.corner_matrix(t);
            let rows: Vec<Vec<f64>> = (0..3).map(|r| vec![m[(r, 0)], m[(r, 1)]]).collect();
            assert_eq!(k.top_orientations()[t], lifted_orientation(&rows));
        }
        assert!(k.boundary(&k.fundamental_cycle()).unwrap().is_zero());
    }

    #[test]
    fn torus_3_3_counts_by_enumeration() {
        let (k, _) = flat_torus(3, 3).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(k.simplex_count(3), 6 * 27);
        // independent enumeration oracle: count distinct edges of all tets
        let mut edges = BTreeSet::new();
        for t in k.simplices(3) {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    edges.insert((t[i], t[j]));
                }
            }
        }
        assert_eq!(k.simplex_count(1), edges.len());
    }

    #[test]
    fn torus_resolution_too_small() {
        assert!(matches!(flat_torus(2, 1), Err(Error::ResolutionTooSmall(_))));
        // res 2 identifies distinct Kuhn simplices to the same vertex tuple
        assert!(matches!(flat_torus(2, 2), Err(Error::ResolutionTooSmall(_))));
    }

    #[test]
    fn torus_axis_loops_are_cycles() {
        let (k, markers) = flat_torus(2, 4).unwrap();
        for l in &markers.axis_loops {
            assert!(k.is_cycle(l));
        }
        let (k3, markers3) = flat_torus(3, 3).unwrap();
        for l in &markers3.axis_loops {
            assert!(k3.is_cycle(l));
        }
    }

    #[test]
    fn genus_surfaces_have_expected_chi() {
        let k1 = genus_surface(1, 0).unwrap();
        assert_eq!(k1.euler_characteristic(), 0);
        let k2 = genus_surface(2, 0).unwrap();
        assert_eq!(k2.euler_characteristic(), -2);
        let k2r = genus_surface(2, 1).unwrap();
        assert_eq!(k2r.euler_characteristic(), -2);
        let k3 = genus_surface(3, 0).unwrap();
        assert_eq!(k3.euler_characteristic(), -4);
    }

    #[test]
    fn projective3_is_valid_and_small() {
        let k = projective3().unwrap();
        assert_eq!(k.dim(), 3);
        assert_eq!(k.simplex_count(3), 192);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn sphere_3_counts() {
        let k = sphere(3).unwrap();
        assert_eq!(k.simplex_count(0), 5);
        assert_eq!(k.simplex_count(3), 5);
        assert_eq!(k.euler_characteristic(), 0);
    }
}
