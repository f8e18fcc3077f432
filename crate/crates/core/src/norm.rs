//! Polytopal norms: a primal unit ball paired with its polar dual ball.
//! Norm evaluation is a maximum of finitely many linear functionals (the
//! dual ball's vertices), so every value is an exact rational and unit
//! vectors of rational points are themselves rational.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{Rat, Vector};
use crate::polytope::{Face, Polytope};

/// A norm on `R^d` whose unit ball is a centrally symmetric polytope `B`.
/// The dual ball `B*` is always derived from `B` by polarity, never supplied
/// independently, so the pair cannot fall out of sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalNorm {
    ball: Polytope,
    dual_ball: Polytope,
}

impl PolytopalNorm {
    pub fn new(ball: Polytope) -> Self {
        let dual_ball = ball.polar_dual();
        PolytopalNorm { ball, dual_ball }
    }

    pub fn from_ball_vertices(points: &[Vector]) -> Result<Self> {
        Ok(Self::new(Polytope::from_vertices(points)?))
    }

    pub fn dim(&self) -> usize {
        self.ball.dim()
    }

    pub fn ball(&self) -> &Polytope {
        &self.ball
    }

    pub fn dual_ball(&self) -> &Polytope {
        &self.dual_ball
    }

    /// `‖x‖`: maximum of `⟨u, x⟩` over the vertices `u` of the dual ball
    /// (equivalently the facet functionals of the ball).
    pub fn eval(&self, x: &Vector) -> Result<Rat> {
        self.ball.gauge(x)
    }

    /// `‖x‖*`, the dual norm: roles of the two balls exchanged.
    pub fn dual_eval(&self, x: &Vector) -> Result<Rat> {
        self.dual_ball.gauge(x)
    }

    /// `(1/‖x‖)·x`, exactly rational; the result has norm exactly one.
    pub fn normalize(&self, x: &Vector) -> Result<Vector> {
        let n = self.eval(x)?;
        if n.is_zero() {
            return Err(Error::ZeroVector("normalize"));
        }
        Ok(x.scale(&(Rat::one() / n)))
    }

    /// The set of dual unit vectors attaining `⟨x*, x⟩ = ‖x‖`: the exposed
    /// face of the dual ball in direction `x`. Scale invariant in `x`.
    pub fn dual_vectors(&self, x: &Vector) -> Result<Face> {
        if x.is_zero() {
            return Err(Error::ZeroVector("dual_vectors"));
        }
        self.dual_ball.exposed_face(x)
    }

    /// True iff only one hyperplane supports the ball at `v/‖v‖`, i.e. the
    /// dual face is a single point.
    pub fn is_regular_direction(&self, v: &Vector) -> Result<bool> {
        Ok(self.dual_vectors(v)?.is_vertex())
    }

    /// Exact dual-norm distance between two faces of the dual ball, per the
    /// gauge of the dual ball itself.
    pub fn dual_face_distance(&self, f: &Face, g: &Face) -> Result<Rat> {
        self.dual_ball.face_distance(f, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, rat_int};
    use crate::testutil;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn l1_and_linf_evaluation() {
        let l1 = testutil::l1_space(2);
        assert_eq!(l1.eval(&v(&[3, -4])).unwrap(), rat_int(7));
        let linf = testutil::linf_space(2);
        assert_eq!(linf.eval(&v(&[3, -4])).unwrap(), rat_int(4));
        assert_eq!(l1.eval(&Vector::zeros(2)).unwrap(), rat_int(0));
    }

    #[test]
    fn dual_norm_is_the_other_side() {
        let l1 = testutil::l1_space(2);
        assert_eq!(l1.dual_eval(&v(&[3, -4])).unwrap(), rat_int(4));
        assert_eq!(l1.dual_eval(&Vector::zeros(2)).unwrap(), rat_int(0));
        // duality pairing bound instance
        let x = v(&[1, 1]);
        let y = v(&[1, 0]);
        let pair = x.dot(&y);
        assert!(pair <= l1.eval(&x).unwrap() * l1.dual_eval(&y).unwrap());
    }

    #[test]
    fn hexagon_norm_value() {
        let hex = testutil::hexagon_space();
        assert_eq!(hex.eval(&v(&[1, -1])).unwrap(), rat_int(2));
        assert_eq!(hex.eval(&v(&[1, 1])).unwrap(), rat_int(1));
    }

    #[test]
    fn normalization() {
        let l1 = testutil::l1_space(2);
        let u = l1.normalize(&v(&[3, -4])).unwrap();
        assert_eq!(u, Vector::new(vec![rat(3, 7), rat(-4, 7)]));
        assert_eq!(l1.eval(&u).unwrap(), rat_int(1));
        let linf = testutil::linf_space(2);
        let u = linf.normalize(&v(&[3, -4])).unwrap();
        assert_eq!(u, Vector::new(vec![rat(3, 4), rat_int(-1)]));
        // unit input is a fixed point
        assert_eq!(linf.normalize(&u).unwrap(), u);
        assert!(l1.normalize(&Vector::zeros(2)).is_err());
    }

    #[test]
    fn dual_vectors_of_linf() {
        let linf = testutil::linf_space(2);
        // dual ball is the l1 cross-polytope
        let f = linf.dual_vectors(&v(&[1, 1])).unwrap();
        assert_eq!(f.vertex_indices().len(), 2);
        let verts: Vec<&Vector> = f
            .vertex_indices()
            .iter()
            .map(|&i| &linf.dual_ball().vertices()[i])
            .collect();
        assert_eq!(verts, vec![&v(&[0, 1]), &v(&[1, 0])]);
        let f = linf.dual_vectors(&v(&[1, 0])).unwrap();
        assert!(f.is_vertex());
        // homogeneity of the dual face
        let g = linf.dual_vectors(&v(&[2, 0])).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn regular_directions() {
        let linf = testutil::linf_space(2);
        // (1,0) hits the square's facet x=1 in its relative interior: one
        // supporting line, dual face is the single cross vertex (1,0).
        assert!(linf.is_regular_direction(&v(&[1, 0])).unwrap());
        assert!(linf
            .is_regular_direction(&Vector::new(vec![rat_int(1), rat(1, 2)]))
            .unwrap());
        // (1,1) is a square corner: many supporting lines.
        assert!(!linf.is_regular_direction(&v(&[1, 1])).unwrap());
        let l1 = testutil::l1_space(2);
        // (1,0) is a vertex of the cross-polytope ball: dual face is an edge.
        assert!(!l1.is_regular_direction(&v(&[1, 0])).unwrap());
        assert!(l1.is_regular_direction(&v(&[1, 1])).unwrap());
    }
}
