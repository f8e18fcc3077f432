//! The absorbing-angle predicate. An angle at the origin with legs `a`, `b`
//! is absorbing when the two-edge star is a Steiner minimal tree of
//! `{o, a, b}`. Two exact routes are provided: the primary one measures the
//! distance between the exposed dual faces of `a` and `-b` (absorbing iff
//! it is at most one, a closed condition), and an independent oracle
//! minimizes `‖x‖ + ‖x-a‖ + ‖x-b‖` directly as one LP.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{det2, lp_solve, sign, LpProblem, Rat, Vector};
use crate::norm::PolytopalNorm;

/// An angle at the origin given by two nonzero legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleQuery {
    a: Vector,
    b: Vector,
}

impl AngleQuery {
    pub fn new(a: Vector, b: Vector) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroVector("angle leg a"));
        }
        if b.is_zero() {
            return Err(Error::ZeroVector("angle leg b"));
        }
        a.check_dim(b.dim())?;
        Ok(AngleQuery { a, b })
    }

    pub fn a(&self) -> &Vector {
        &self.a
    }

    pub fn b(&self) -> &Vector {
        &self.b
    }

    fn check(&self, norm: &PolytopalNorm) -> Result<()> {
        self.a.check_dim(norm.dim())?;
        Ok(())
    }
}

/// Dual witnesses for an absorbing angle: unit dual vectors tight on the
/// normalized legs whose sum has dual norm at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbingCertificate {
    pub a_star: Vector,
    pub b_star: Vector,
}

impl AbsorbingCertificate {
    /// Re-checks all four defining conditions against the norm.
    pub fn verify(&self, norm: &PolytopalNorm, q: &AngleQuery) -> Result<bool> {
        let a_hat = norm.normalize(&q.a)?;
        let b_hat = norm.normalize(&q.b)?;
        Ok(norm.dual_eval(&self.a_star)? == Rat::one()
            && norm.dual_eval(&self.b_star)? == Rat::one()
            && self.a_star.dot(&a_hat) == Rat::one()
            && self.b_star.dot(&b_hat) == Rat::one()
            && norm.dual_eval(&(&self.a_star + &self.b_star))? <= Rat::one())
    }
}

/// Full result of the face-distance route: the exact distance between the
/// dual faces, the verdict, and witnesses when absorbing.
#[derive(Clone, Debug)]
pub struct AbsorbingReport {
    pub absorbing: bool,
    pub face_distance: Rat,
    pub certificate: Option<AbsorbingCertificate>,
}

/// Evaluates the face-distance condition once, returning distance, verdict,
/// and certificate together. Scaling-invariant in both legs.
pub fn absorbing_report(norm: &PolytopalNorm, q: &AngleQuery) -> Result<AbsorbingReport> {
    q.check(norm)?;
    let f = norm.dual_vectors(&q.a)?;
    let g = norm.dual_vectors(&-&q.b)?;
    let (distance, p_opt, q_opt) = norm.dual_ball().face_distance_witness(&f, &g)?;
    let absorbing = distance <= Rat::one();
    let certificate = absorbing.then(|| AbsorbingCertificate {
        a_star: p_opt,
        b_star: -&q_opt,
    });
    Ok(AbsorbingReport {
        absorbing,
        face_distance: distance,
        certificate,
    })
}

/// True iff the exposed dual faces of `a` and `-b` are at dual distance at
/// most one.
pub fn is_absorbing(norm: &PolytopalNorm, q: &AngleQuery) -> Result<bool> {
    q.check(norm)?;
    let f = norm.dual_vectors(&q.a)?;
    let g = norm.dual_vectors(&-&q.b)?;
    Ok(norm.dual_face_distance(&f, &g)? <= Rat::one())
}

/// Witnesses for an absorbing angle, or `None` when the angle is not
/// absorbing.
pub fn absorbing_certificate(
    norm: &PolytopalNorm,
    q: &AngleQuery,
) -> Result<Option<AbsorbingCertificate>> {
    Ok(absorbing_report(norm, q)?.certificate)
}

/// Independent route: minimizes `x ↦ ‖x‖ + ‖x-a‖ + ‖x-b‖` as one LP and
/// reports whether the minimum equals `‖a‖ + ‖b‖` (i.e. is attained at the
/// origin). Shares nothing with the face-distance path beyond the solver.
pub fn absorbing_oracle(norm: &PolytopalNorm, q: &AngleQuery) -> Result<bool> {
    let value = fermat_value(norm, &[Vector::zeros(norm.dim()), q.a.clone(), q.b.clone()])?;
    let star = norm.eval(&q.a)? + norm.eval(&q.b)?;
    debug_assert!(value <= star);
    Ok(value == star)
}

/// Exact minimum of `x ↦ Σ_i ‖x - c_i‖` over all of space, via one LP with
/// an epigraph variable per summand.
pub fn fermat_value(norm: &PolytopalNorm, centers: &[Vector]) -> Result<Rat> {
    let d = norm.dim();
    for c in centers {
        c.check_dim(d)?;
    }
    let k = centers.len();
    // Variables: x (d coords), then t_1..t_k.
    let mut objective = vec![Rat::zero(); d + k];
    for t in objective.iter_mut().skip(d) {
        *t = Rat::one();
    }
    let mut lp = LpProblem::new(Vector::new(objective));
    for (i, c) in centers.iter().enumerate() {
        for u in norm.dual_ball().vertices() {
            // ⟨u, x - c⟩ ≤ t_i
            let mut row = vec![Rat::zero(); d + k];
            row[..d].clone_from_slice(u.coords());
            row[d + i] = -Rat::one();
            lp.add_le(Vector::new(row), u.dot(c));
        }
    }
    let sol = lp_solve(&lp)?;
    Ok(sol.expect_optimal().1.clone())
}

/// Containment of plane angles: true iff the closed convex cone spanned by
/// the inner legs lies inside the outer angle. The outer angle must be
/// convex (span less than a straight angle) or straight; for a straight
/// outer angle the legs of the inner angle must lie in one common closed
/// half-plane bounded by the outer line.
pub fn angle_contains(outer: &AngleQuery, inner: &AngleQuery) -> Result<bool> {
    if outer.a.dim() != 2 || inner.a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: outer.a.dim().max(inner.a.dim()),
        });
    }
    let (u, v) = (&outer.a, &outer.b);
    let d = det2(u, v);
    if d.is_zero() {
        if u.dot(v) > Rat::zero() {
            // Outer is a single ray: both inner legs must lie on it.
            return Ok(on_ray(u, &inner.a) && on_ray(u, &inner.b));
        }
        // Straight outer angle: inner legs on one common side of the line.
        let s1 = sign(&det2(u, &inner.a));
        let s2 = sign(&det2(u, &inner.b));
        return Ok(s1 * s2 >= 0);
    }
    Ok(in_cone(u, v, &d, &inner.a) && in_cone(u, v, &d, &inner.b))
}

fn in_cone(u: &Vector, v: &Vector, d: &Rat, w: &Vector) -> bool {
    // w = α u + β v with α = det(w,v)/d, β = det(u,w)/d; need both ≥ 0.
    let alpha = det2(w, v) / d;
    let beta = det2(u, w) / d;
    !alpha.is_negative() && !beta.is_negative()
}

fn on_ray(u: &Vector, w: &Vector) -> bool {
    det2(u, w).is_zero() && u.dot(w) > Rat::zero()
}

use num::traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, rat_int};
    use crate::testutil;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn q(a: &[i64], b: &[i64]) -> AngleQuery {
        AngleQuery::new(v(a), v(b)).unwrap()
    }

    #[test]
    fn linf_absorbing_and_not() {
        let linf = testutil::linf_space(2);
        // dual faces of (1,1) and -(−1,1)=(1,−1) share the cross vertex (1,0)
        assert!(is_absorbing(&linf, &q(&[1, 1], &[-1, 1])).unwrap());
        // dual faces {(1,0)} and {(0,-1)} at l1 distance 2
        assert!(!is_absorbing(&linf, &q(&[1, 0], &[0, 1])).unwrap());
        let report = absorbing_report(&linf, &q(&[1, 0], &[0, 1])).unwrap();
        assert_eq!(report.face_distance, rat_int(2));
        assert!(report.certificate.is_none());
    }

    #[test]
    fn straight_angle_is_absorbing() {
        let hex = testutil::hexagon_space();
        let query = q(&[2, 1], &[-2, -1]);
        assert!(is_absorbing(&hex, &query).unwrap());
        let cert = absorbing_certificate(&hex, &query).unwrap().unwrap();
        assert!(cert.verify(&hex, &query).unwrap());
        // opposite duals sum to something of dual norm ≤ 1 (here exactly o)
        assert!(hex
            .dual_eval(&(&cert.a_star + &cert.b_star))
            .unwrap()
            <= Rat::one());
    }

    #[test]
    fn oracle_values_on_linf_and_l1() {
        let linf = testutil::linf_space(2);
        // optimum 3/2 < 2 at x = (1/2, 1/2)
        assert!(!absorbing_oracle(&linf, &q(&[1, 0], &[0, 1])).unwrap());
        let value = fermat_value(
            &linf,
            &[Vector::zeros(2), v(&[1, 0]), v(&[0, 1])],
        )
        .unwrap();
        assert_eq!(value, rat(3, 2));

        let l1 = testutil::l1_space(2);
        assert!(absorbing_oracle(&l1, &q(&[1, 0], &[0, 1])).unwrap());
        assert!(absorbing_oracle(&l1, &q(&[1, 0], &[-1, 0])).unwrap());
    }

    #[test]
    fn certificate_from_lp_witness_verifies() {
        let linf = testutil::linf_space(2);
        let query = q(&[1, 1], &[-1, 1]);
        let cert = absorbing_certificate(&linf, &query).unwrap().unwrap();
        assert!(cert.verify(&linf, &query).unwrap());
    }

    #[test]
    fn hexagon_has_absorbing_non_straight_example() {
        // Adjacent hexagon vertices: absorbing with face distance exactly 1.
        let hex = testutil::hexagon_space();
        let report = absorbing_report(&hex, &q(&[1, 0], &[1, 1])).unwrap();
        assert!(report.absorbing);
        assert_eq!(report.face_distance, rat_int(1));
        let cert = report.certificate.unwrap();
        assert!(cert.verify(&hex, &q(&[1, 0], &[1, 1])).unwrap());
    }

    #[test]
    fn zero_leg_rejected() {
        assert!(AngleQuery::new(v(&[0, 0]), v(&[1, 0])).is_err());
        assert!(AngleQuery::new(v(&[1, 0]), v(&[0, 0])).is_err());
    }

    #[test]
    fn routes_agree_on_random_queries() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..60 {
            let norm = testutil::random_norm(&mut rng, 2);
            let a = testutil::random_nonzero_vector(&mut rng, 2);
            let b = testutil::random_nonzero_vector(&mut rng, 2);
            let query = AngleQuery::new(a, b).unwrap();
            assert_eq!(
                is_absorbing(&norm, &query).unwrap(),
                absorbing_oracle(&norm, &query).unwrap()
            );
        }
    }

    #[test]
    fn ray_invariance_and_symmetry() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for _ in 0..40 {
            let norm = testutil::random_norm(&mut rng, 2);
            let a = testutil::random_nonzero_vector(&mut rng, 2);
            let b = testutil::random_nonzero_vector(&mut rng, 2);
            let lam = rat_int(rng.gen_range(1..=5));
            let mu = rat(rng.gen_range(1..=5), rng.gen_range(1..=3));
            let base = is_absorbing(&norm, &AngleQuery::new(a.clone(), b.clone()).unwrap()).unwrap();
            let scaled = is_absorbing(
                &norm,
                &AngleQuery::new(a.scale(&lam), b.scale(&mu)).unwrap(),
            )
            .unwrap();
            assert_eq!(base, scaled);
            let swapped =
                is_absorbing(&norm, &AngleQuery::new(b.clone(), a.clone()).unwrap()).unwrap();
            assert_eq!(base, swapped);
            let negated =
                is_absorbing(&norm, &AngleQuery::new(-&a, -&b).unwrap()).unwrap();
            assert_eq!(base, negated);
        }
    }

    #[test]
    fn containment_basics() {
        let outer = q(&[1, 0], &[0, 1]);
        assert!(angle_contains(&outer, &outer).unwrap());
        assert!(angle_contains(&outer, &q(&[1, 1], &[1, 2])).unwrap());
        assert!(!angle_contains(&q(&[1, 0], &[1, 1]), &q(&[0, 1], &[1, 0])).unwrap());
        // straight outer: same closed half-plane
        let straight = q(&[1, 0], &[-1, 0]);
        assert!(angle_contains(&straight, &q(&[1, 1], &[-1, 2])).unwrap());
        assert!(!angle_contains(&straight, &q(&[1, 1], &[1, -1])).unwrap());
        // 3D rejected
        let bad = AngleQuery::new(v(&[1, 0, 0]), v(&[0, 1, 0])).unwrap();
        assert!(angle_contains(&bad, &bad).is_err());
    }

    #[test]
    fn containment_monotonicity() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let mut tested = 0;
        while tested < 30 {
            let norm = testutil::random_norm(&mut rng, 2);
            let a = testutil::random_nonzero_vector(&mut rng, 2);
            let b = testutil::random_nonzero_vector(&mut rng, 2);
            if det2(&a, &b).is_zero() {
                continue;
            }
            let inner = AngleQuery::new(a.clone(), b.clone()).unwrap();
            if !is_absorbing(&norm, &inner).unwrap() {
                continue;
            }
            // widen: u = a - q b, v = b - t a with small nonneg q, t (qt < 1)
            let qq = rat(rng.gen_range(0..=1), 2);
            let tt = rat(rng.gen_range(0..=1), 2);
            let u = &a - &b.scale(&qq);
            let w = &b - &a.scale(&tt);
            if u.is_zero() || w.is_zero() {
                continue;
            }
            let outer = AngleQuery::new(u, w).unwrap();
            assert!(angle_contains(&outer, &inner).unwrap());
            assert!(is_absorbing(&norm, &outer).unwrap());
            tested += 1;
        }
    }
}
