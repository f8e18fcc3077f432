//! Constructors for ℓ₁-sums, ℓ∞-sums, Hanner spaces built from composition
//! expressions over the one-dimensional space `R`, and the family of balls
//! obtained by projecting a (d+1)-cube along its main diagonal (the rhombic
//! dodecahedron at d = 3).

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{self, rat_int, Rat, Vector};
use crate::norm::PolytopalNorm;
use crate::polytope::{Polytope, DIMENSION_CAP};

/// Composition expression: leaves are copies of `R`, internal nodes are
/// ℓ₁- or ℓ∞-sums. Parsed from the grammar `R`, `(E +1 E)`, `(E +inf E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HannerExpr {
    Leaf,
    Sum1(Box<HannerExpr>, Box<HannerExpr>),
    SumInf(Box<HannerExpr>, Box<HannerExpr>),
}

impl HannerExpr {
    pub fn dim(&self) -> usize {
        match self {
            HannerExpr::Leaf => 1,
            HannerExpr::Sum1(a, b) | HannerExpr::SumInf(a, b) => a.dim() + b.dim(),
        }
    }

    pub fn parse(input: &str) -> Result<Self> {
        let mut p = Parser {
            rest: input.trim(),
        };
        let expr = p.expr()?;
        if !p.rest.trim().is_empty() {
            return Err(Error::Parse(format!(
                "trailing input after expression: {:?}",
                p.rest
            )));
        }
        Ok(expr)
    }
}

impl std::fmt::Display for HannerExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HannerExpr::Leaf => write!(f, "R"),
            HannerExpr::Sum1(a, b) => write!(f, "({a} +1 {b})"),
            HannerExpr::SumInf(a, b) => write!(f, "({a} +inf {b})"),
        }
    }
}

struct Parser<'a> {
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if let Some(rest) = self.rest.strip_prefix(token) {
            self.rest = rest;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {token:?} at {:?}",
                self.rest
            )))
        }
    }

    fn expr(&mut self) -> Result<HannerExpr> {
        self.skip_ws();
        if self.rest.starts_with('R') {
            self.rest = &self.rest[1..];
            return Ok(HannerExpr::Leaf);
        }
        self.eat("(")?;
        let left = self.expr()?;
        self.skip_ws();
        let op_inf = if self.rest.starts_with("+inf") {
            self.rest = &self.rest["+inf".len()..];
            true
        } else if self.rest.starts_with("+1") {
            self.rest = &self.rest["+1".len()..];
            false
        } else {
            return Err(Error::Parse(format!(
                "expected \"+1\" or \"+inf\" at {:?}",
                self.rest
            )));
        };
        let right = self.expr()?;
        self.eat(")")?;
        Ok(if op_inf {
            HannerExpr::SumInf(Box::new(left), Box::new(right))
        } else {
            HannerExpr::Sum1(Box::new(left), Box::new(right))
        })
    }
}

fn embed_left(v: &Vector, total: usize) -> Vector {
    let mut coords = v.coords().to_vec();
    coords.resize(total, Rat::zero());
    Vector::new(coords)
}

fn embed_right(v: &Vector, offset: usize) -> Vector {
    let mut coords = vec![Rat::zero(); offset];
    coords.extend_from_slice(v.coords());
    Vector::new(coords)
}

/// ℓ₁-sum: the ball is the convex hull of the two balls embedded in
/// complementary coordinate blocks; the norm adds block norms.
pub fn l1_sum(m: &PolytopalNorm, n: &PolytopalNorm) -> Result<PolytopalNorm> {
    let total = m.dim() + n.dim();
    if total > DIMENSION_CAP {
        return Err(Error::DimensionCap(total, DIMENSION_CAP));
    }
    let mut pts = Vec::new();
    for v in m.ball().vertices() {
        pts.push(embed_left(v, total));
    }
    for v in n.ball().vertices() {
        pts.push(embed_right(v, m.dim()));
    }
    PolytopalNorm::from_ball_vertices(&pts)
}

/// ℓ∞-sum: the ball is the Cartesian product of the two balls; the norm is
/// the maximum of block norms.
pub fn linf_sum(m: &PolytopalNorm, n: &PolytopalNorm) -> Result<PolytopalNorm> {
    let total = m.dim() + n.dim();
    if total > DIMENSION_CAP {
        return Err(Error::DimensionCap(total, DIMENSION_CAP));
    }
    let mut pts = Vec::new();
    for v in m.ball().vertices() {
        for w in n.ball().vertices() {
            let mut coords = v.coords().to_vec();
            coords.extend_from_slice(w.coords());
            pts.push(Vector::new(coords));
        }
    }
    PolytopalNorm::from_ball_vertices(&pts)
}

/// The one-dimensional space `R` with ball `[-1, 1]`.
pub fn line_space() -> PolytopalNorm {
    PolytopalNorm::from_ball_vertices(&[Vector::from_ints(&[1]), Vector::from_ints(&[-1])])
        .expect("interval is valid")
}

/// Folds an expression into its Hanner space. Dimension capped at six.
pub fn build_hanner(expr: &HannerExpr) -> Result<PolytopalNorm> {
    if expr.dim() > DIMENSION_CAP {
        return Err(Error::DimensionCap(expr.dim(), DIMENSION_CAP));
    }
    match expr {
        HannerExpr::Leaf => Ok(line_space()),
        HannerExpr::Sum1(a, b) => l1_sum(&build_hanner(a)?, &build_hanner(b)?),
        HannerExpr::SumInf(a, b) => linf_sum(&build_hanner(a)?, &build_hanner(b)?),
    }
}

/// All Hanner expressions with exactly `leaves` leaves (every binary tree
/// shape, every sum-type assignment), in a fixed deterministic order.
pub fn enumerate_expressions(leaves: usize) -> Vec<HannerExpr> {
    if leaves == 0 {
        return Vec::new();
    }
    if leaves == 1 {
        return vec![HannerExpr::Leaf];
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        let right = leaves - left;
        for l in enumerate_expressions(left) {
            for r in enumerate_expressions(right) {
                out.push(HannerExpr::Sum1(Box::new(l.clone()), Box::new(r.clone())));
                out.push(HannerExpr::SumInf(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// The unit ball obtained by projecting the (d+1)-cube orthogonally along
/// its main diagonal, expressed in rational coordinates over the basis
/// `e_i - e_{i+1}` of the diagonal's orthogonal complement. At d = 3 this is
/// the rhombic dodecahedron with `2^{d+1} - 2` vertices. Supports
/// `2 ≤ d ≤ 5`.
pub fn rhombic_dodecahedron(d: usize) -> Result<PolytopalNorm> {
    if !(2..=5).contains(&d) {
        return Err(Error::InvalidInput(format!(
            "rhombic family supports 2 <= d <= 5, got {d}"
        )));
    }
    // Basis f_i = e_i - e_{i+1} of the complement of (1,...,1) in R^{d+1}.
    // For a cube vertex x, the projection has f-coordinates G^{-1} F^T x
    // where G = F^T F is the tridiagonal Gram matrix (F^T annihilates the
    // diagonal direction, so projecting first is unnecessary).
    let gram: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        rat_int(2)
                    } else if i.abs_diff(j) == 1 {
                        rat_int(-1)
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    let gram_inv = exactgeom::invert(&gram).expect("Gram matrix of a basis");

    let mut pts = Vec::new();
    for mask in 0..(1u32 << (d + 1)) {
        let x: Vec<Rat> = (0..=d)
            .map(|i| {
                if mask & (1 << i) == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                }
            })
            .collect();
        // F^T x: component i is x_i - x_{i+1}.
        let ftx: Vec<Rat> = (0..d).map(|i| &x[i] - &x[i + 1]).collect();
        if ftx.iter().all(|c| c.is_zero()) {
            continue; // the two diagonal vertices project to the origin
        }
        let coords: Vec<Rat> = (0..d)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, f) in ftx.iter().enumerate() {
                    if !gram_inv[i][j].is_zero() && !f.is_zero() {
                        acc += &gram_inv[i][j] * f;
                    }
                }
                acc
            })
            .collect();
        pts.push(Vector::new(coords));
    }
    debug_assert_eq!(pts.len(), (1 << (d + 1)) - 2);
    PolytopalNorm::from_ball_vertices(&pts)
}

/// True iff every vertex coordinate lies in `{0, 1, -1}`.
pub fn has_zero_one_vertices(ball: &Polytope) -> bool {
    let one = Rat::one();
    ball.vertices().iter().all(|v| {
        v.coords()
            .iter()
            .all(|c| c.is_zero() || *c == one || *c == -&one)
    })
}
