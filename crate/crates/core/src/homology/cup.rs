//! Simplicial cup product (front-face/back-face on the sorted vertex
//! order) and the induced duality pairing evaluated on the fundamental
//! cycle.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{IntCochain, SimplicialComplex};
use crate::error::{Error, Result};

/// (a ⌣ b)([v_0..v_{p+q}]) = a([v_0..v_p]) · b([v_p..v_{p+q}]).
pub fn cup_product(
    k: &SimplicialComplex,
    a: &IntCochain,
    b: &IntCochain,
) -> Result<IntCochain> {
    let (p, q) = (a.degree, b.degree);
    if p + q > k.dim() {
        return Err(Error::DegreeOverflow(format!(
            "{} + {} > {}",
            p,
            q,
            k.dim()
        )));
    }
    let deg = p + q;
    let mut values = vec![BigInt::zero(); k.simplex_count(deg)];
    for (i, s) in k.simplices(deg).iter().enumerate() {
        let front = &s[..=p];
        let back = &s[p..];
        let fi = k.index_of(p, front).expect("front face present");
        let bi = k.index_of(q, back).expect("back face present");
        let va = &a.values[fi];
        if va.is_zero() {
            continue;
        }
        let vb = &b.values[bi];
        if vb.is_zero() {
            continue;
        }
        values[i] = va * vb;
    }
    Ok(IntCochain { degree: deg, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generators;
    use crate::homology::IntegerHomology;
    use num_bigint::BigInt;
    use num_traits::One;
    use rand::Rng;
    use rand::SeedableRng;
    use std::sync::Arc;

    #[test]
    fn unit_cochain_is_cup_identity() {
        let (k, _) = generators::flat_torus(2, 3).unwrap();
        let one = IntCochain {
            degree: 0,
            values: vec![BigInt::one(); k.simplex_count(0)],
        };
        let h = IntegerHomology::new(Arc::new(k.clone()));
        let theta = &h.cohomology(1).unwrap().free_cocycles[0];
        let cup = cup_product(&k, &one, theta).unwrap();
        assert_eq!(cup.values, theta.values);
        let cup_right = cup_product(&k, theta, &one).unwrap();
        assert_eq!(cup_right.values, theta.values);
    }

    #[test]
    fn torus_generators_pair_antisymmetrically() {
        let (k, markers) = generators::flat_torus(2, 4).unwrap();
        let h = IntegerHomology::new(Arc::new(k.clone()))
            .with_preferred_dual_cycles(1, &markers.axis_loops)
            .unwrap();
        let coh = h.cohomology(1).unwrap();
        let (u, v) = (&coh.free_cocycles[0], &coh.free_cocycles[1]);
        let f = k.fundamental_cycle();
        let uv = cup_product(&k, u, v).unwrap().eval(&f);
        let vu = cup_product(&k, v, u).unwrap().eval(&f);
        assert_eq!(uv.magnitude(), BigInt::one().magnitude());
        assert_eq!(uv, -vu);
        let uu = cup_product(&k, u, u).unwrap().eval(&f);
        assert!(uu.is_zero());
    }

    #[test]
    fn leibniz_rule_exact_on_random_cochains() {
        let (k, _) = generators::flat_torus(2, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = IntCochain {
                degree: 0,
                values: (0..k.simplex_count(0))
                    .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                    .collect(),
            };
            let b = IntCochain {
                degree: 1,
                values: (0..k.simplex_count(1))
                    .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                    .collect(),
            };
            // d(a ⌣ b) = da ⌣ b + (−1)^0 a ⌣ db
            let lhs = cup_product(&k, &a, &b).unwrap().coboundary(&k).unwrap();
            let da_b = cup_product(&k, &a.coboundary(&k).unwrap(), &b).unwrap();
            let a_db = cup_product(&k, &a, &b.coboundary(&k).unwrap()).unwrap();
            let rhs = da_b.add(&a_db);
            assert_eq!(lhs.values, rhs.values);
        }
    }

    #[test]
    fn degree_overflow_rejected() {
        let (k, _) = generators::flat_torus(2, 3).unwrap();
        let a = IntCochain::zero(1, k.simplex_count(1));
        let b = IntCochain::zero(2, k.simplex_count(2));
        assert!(matches!(
            cup_product(&k, &a, &b),
            Err(Error::DegreeOverflow(_))
        ));
    }

    #[test]
    fn pairing_matrix_torus_and_sphere() {
        let (k, _) = generators::flat_torus(2, 4).unwrap();
        let h = IntegerHomology::new(Arc::new(k));
        let p = h.pairing_matrix(1).unwrap();
        let det = crate::homology::int_det(&p);
        assert_eq!(det.magnitude(), BigInt::one().magnitude());
        // diagonal vanishes: x ⌣ x = 0 at class level on a surface
        assert!(p[0][0].is_zero());
        assert!(p[1][1].is_zero());

        let s = generators::sphere(2).unwrap();
        let hs = IntegerHomology::new(Arc::new(s));
        let p0 = hs.pairing_matrix(0).unwrap();
        assert_eq!(p0.len(), 1);
        assert_eq!(p0[0][0].magnitude(), BigInt::one().magnitude());
    }

    #[test]
    fn genus2_pairing_unimodular() {
        let k = generators::genus_surface(2, 0).unwrap();
        let h = IntegerHomology::new(Arc::new(k));
        let p = h.pairing_matrix(1).unwrap();
        assert_eq!(p.len(), 4);
        let det = crate::homology::int_det(&p);
        assert_eq!(det.magnitude(), BigInt::one().magnitude());
    }

    #[test]
    fn leibniz_sign_in_odd_degree() {
        // d(a ⌣ b) = da ⌣ b − a ⌣ db for deg a = 1 on a 3-complex
        let (k, _) = generators::flat_torus(3, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let a = IntCochain {
            degree: 1,
            values: (0..k.simplex_count(1))
                .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                .collect(),
        };
        let b = IntCochain {
            degree: 1,
            values: (0..k.simplex_count(1))
                .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                .collect(),
        };
        let lhs = cup_product(&k, &a, &b).unwrap().coboundary(&k).unwrap();
        let da_b = cup_product(&k, &a.coboundary(&k).unwrap(), &b).unwrap();
        let a_db = cup_product(&k, &a, &b.coboundary(&k).unwrap()).unwrap();
        let rhs = da_b.add(&a_db.scale(&BigInt::from(-1)));
        assert_eq!(lhs.values, rhs.values);
    }
}
