//! Antipodal pairs and the Steiner-antipodality decision. Two unit vectors
//! are antipodal when their distance is exactly two (equivalently they lie
//! on distinct parallel supporting hyperplanes). A norm is Steiner antipodal
//! when every absorbing angle between unit vectors is antipodal; for a
//! polytopal ball that holds iff every pair of disjoint faces of the dual
//! ball lies at dual distance strictly greater than one. The CL-space test
//! (`B = conv(F ∪ -F)` for every facet `F`) is a vertex-coverage scan.

use num::traits::One;
use rayon::prelude::*;

use crate::error::Result;
use crate::exactgeom::{rat_int, Rat, Vector};
use crate::norm::PolytopalNorm;
use crate::polytope::Face;

/// True iff the normalized vectors are at norm distance exactly two.
pub fn is_antipodal(norm: &PolytopalNorm, a: &Vector, b: &Vector) -> Result<bool> {
    let a_hat = norm.normalize(a)?;
    let b_hat = norm.normalize(b)?;
    Ok(norm.eval(&(&a_hat - &b_hat))? == rat_int(2))
}

/// A pair of disjoint dual faces at distance at most one, witnessing a
/// non-antipodal absorbing angle. The exposing directions are the faces'
/// supporting functionals: the angle between `functional(F)` and
/// `-functional(G)` is absorbing and not antipodal.
#[derive(Clone, Debug)]
pub struct SteinerAntipodalWitness {
    pub face_a: Face,
    pub face_b: Face,
    pub distance: Rat,
}

impl SteinerAntipodalWitness {
    /// Legs of the witnessed absorbing, non-antipodal angle.
    pub fn angle_legs(&self) -> (Vector, Vector) {
        (
            self.face_a.supporting_functional().clone(),
            -self.face_b.supporting_functional(),
        )
    }
}

/// Outcome of the disjoint-face scan.
#[derive(Clone, Debug)]
pub struct SteinerAntipodalResult {
    pub steiner_antipodal: bool,
    pub witness: Option<SteinerAntipodalWitness>,
}

/// Scans all unordered pairs of disjoint faces of the dual ball. Returns
/// true iff every pair is at distance strictly greater than one; otherwise
/// returns the lexicographically first offending pair. Pairs at distance
/// exactly one count against the norm (they expose an absorbing angle that
/// is not antipodal). Face pairs are checked in parallel.
pub fn is_steiner_antipodal(norm: &PolytopalNorm) -> Result<SteinerAntipodalResult> {
    let dual = norm.dual_ball();
    let faces = dual.faces();
    let mut pairs = Vec::new();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if dual.faces_disjoint(&faces[i], &faces[j])? {
                pairs.push((i, j));
            }
        }
    }
    let one = Rat::one();
    let witness = pairs
        .par_iter()
        .find_first(|(i, j)| {
            let d = dual
                .face_distance(&faces[*i], &faces[*j])
                .expect("faces of the dual ball");
            d <= one
        })
        .map(|&(i, j)| {
            let distance = dual.face_distance(&faces[i], &faces[j]).unwrap();
            SteinerAntipodalWitness {
                face_a: faces[i].clone(),
                face_b: faces[j].clone(),
                distance,
            }
        });
    Ok(SteinerAntipodalResult {
        steiner_antipodal: witness.is_none(),
        witness,
    })
}

/// On failure, the offending facet index and an uncovered vertex index.
#[derive(Clone, Debug)]
pub struct ClWitness {
    pub facet_index: usize,
    pub vertex_index: usize,
}

/// Outcome of the CL-space scan.
#[derive(Clone, Debug)]
pub struct ClResult {
    pub cl_space: bool,
    pub witness: Option<ClWitness>,
}

/// True iff for every facet `F` of the ball, every vertex lies in `F ∪ -F`,
/// decided by exact tightness (`⟨u_F, v⟩ = ±1`). This is equivalent to
/// `B = conv(F ∪ -F)` since the extreme points of that hull lie in `F ∪ -F`.
pub fn is_cl_space(norm: &PolytopalNorm) -> ClResult {
    let ball = norm.ball();
    let one = Rat::one();
    for (fi, u) in ball.facets().iter().enumerate() {
        for (vi, v) in ball.vertices().iter().enumerate() {
            let val = u.dot(v);
            if val != one && val != -&one {
                return ClResult {
                    cl_space: false,
                    witness: Some(ClWitness {
                        facet_index: fi,
                        vertex_index: vi,
                    }),
                };
            }
        }
    }
    ClResult {
        cl_space: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::{is_absorbing, AngleQuery};
    use crate::exactgeom::rat_int;
    use crate::testutil;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn antipodal_examples() {
        let linf = testutil::linf_space(2);
        assert!(is_antipodal(&linf, &v(&[1, 1]), &v(&[1, -1])).unwrap());
        assert!(!is_antipodal(&linf, &v(&[1, 0]), &v(&[0, 1])).unwrap());
        let hex = testutil::hexagon_space();
        assert!(is_antipodal(&hex, &v(&[2, 1]), &v(&[-2, -1])).unwrap());
    }

    #[test]
    fn l1_and_linf_are_steiner_antipodal() {
        for norm in [testutil::l1_space(2), testutil::linf_space(2)] {
            let res = is_steiner_antipodal(&norm).unwrap();
            assert!(res.steiner_antipodal, "witness: {:?}", res.witness);
        }
    }

    #[test]
    fn hexagon_is_not_steiner_antipodal() {
        // The dual hexagon's edge vectors are themselves dual vertices, so
        // adjacent dual vertices are disjoint faces at distance exactly 1.
        let hex = testutil::hexagon_space();
        let res = is_steiner_antipodal(&hex).unwrap();
        assert!(!res.steiner_antipodal);
        let w = res.witness.unwrap();
        assert_eq!(w.distance, rat_int(1));
        // The witness angle is absorbing but not antipodal.
        let (a, b) = w.angle_legs();
        let q = AngleQuery::new(a.clone(), b.clone()).unwrap();
        assert!(is_absorbing(&hex, &q).unwrap());
        assert!(!is_antipodal(&hex, &a, &b).unwrap());
    }

    #[test]
    fn antipodal_implies_absorbing_randomized() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        for _ in 0..40 {
            let norm = testutil::random_norm(&mut rng, 2);
            let (a, b) = testutil::random_antipodal_pair(&mut rng, &norm);
            assert!(is_antipodal(&norm, &a, &b).unwrap());
            let q = AngleQuery::new(a, b).unwrap();
            assert!(is_absorbing(&norm, &q).unwrap());
        }
    }

    #[test]
    fn scan_coherent_with_absorbing_iff_antipodal() {
        // On a Steiner antipodal norm, absorbing pairs must be antipodal;
        // on a non Steiner antipodal norm the witness breaks that.
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let octagon = PolytopalNorm::from_ball_vertices(&[
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            Vector::new(vec![crate::exactgeom::rat(3, 4), crate::exactgeom::rat(3, 4)]),
            Vector::new(vec![crate::exactgeom::rat(-3, 4), crate::exactgeom::rat(-3, 4)]),
            Vector::new(vec![crate::exactgeom::rat(3, 4), crate::exactgeom::rat(-3, 4)]),
            Vector::new(vec![crate::exactgeom::rat(-3, 4), crate::exactgeom::rat(3, 4)]),
        ])
        .unwrap();
        let res = is_steiner_antipodal(&octagon).unwrap();
        if let Some(w) = &res.witness {
            let (a, b) = w.angle_legs();
            let q = AngleQuery::new(a.clone(), b.clone()).unwrap();
            assert!(is_absorbing(&octagon, &q).unwrap());
            assert!(!is_antipodal(&octagon, &a, &b).unwrap());
        }
        for _ in 0..60 {
            let a = testutil::random_unit_vector(&mut rng, &octagon);
            let b = testutil::random_unit_vector(&mut rng, &octagon);
            if a == b {
                continue;
            }
            let q = AngleQuery::new(a.clone(), b.clone()).unwrap();
            if res.steiner_antipodal && is_absorbing(&octagon, &q).unwrap() {
                assert!(is_antipodal(&octagon, &a, &b).unwrap());
            }
        }
    }

    #[test]
    fn cl_space_examples() {
        assert!(is_cl_space(&testutil::l1_space(2)).cl_space);
        assert!(is_cl_space(&testutil::l1_space(3)).cl_space);
        assert!(is_cl_space(&testutil::linf_space(3)).cl_space);
        // The hexagon is not CL: conv(edge ∪ -edge) is a parallelogram that
        // misses two vertices.
        let res = is_cl_space(&testutil::hexagon_space());
        assert!(!res.cl_space);
        assert!(res.witness.is_some());
    }

    #[test]
    fn cl_implies_steiner_antipodal_on_small_balls() {
        for norm in [
            testutil::l1_space(2),
            testutil::linf_space(2),
            testutil::l1_space(3),
            testutil::linf_space(3),
        ] {
            if is_cl_space(&norm).cl_space {
                assert!(is_steiner_antipodal(&norm).unwrap().steiner_antipodal);
            }
        }
    }

    #[test]
    fn cl_disjoint_primal_faces_at_distance_two() {
        // In a CL-space, disjoint faces of the primal ball are at distance
        // exactly 2 (measured in the gauge of the ball itself).
        for norm in [testutil::l1_space(2), testutil::linf_space(2), testutil::l1_space(3)] {
            let ball = norm.ball();
            let faces = ball.faces();
            for i in 0..faces.len() {
                for j in i + 1..faces.len() {
                    if ball.faces_disjoint(&faces[i], &faces[j]).unwrap() {
                        assert_eq!(
                            ball.face_distance(&faces[i], &faces[j]).unwrap(),
                            rat_int(2)
                        );
                    }
                }
            }
        }
    }
}
