//! Test support: canonical example spaces, independent brute-force oracles,
//! and seeded random generators. The oracles deliberately avoid the
//! production code paths they are used to check (the hull oracle enumerates
//! hyperplanes through vertex subsets instead of running double description;
//! the LP oracle enumerates basic solutions instead of pivoting).

use num::traits::{One, Zero};
use rand::Rng;

use crate::exactgeom::{self, rat_int, Rat, Vector};
use crate::norm::PolytopalNorm;
use crate::polytope::Polytope;
use crate::{LpProblem, Relation};

/// `ℓ₁^d`: the cross-polytope ball.
pub fn l1_space(dim: usize) -> PolytopalNorm {
    let mut pts = Vec::new();
    for i in 0..dim {
        let mut a = vec![0i64; dim];
        a[i] = 1;
        pts.push(Vector::from_ints(&a));
        a[i] = -1;
        pts.push(Vector::from_ints(&a));
    }
    PolytopalNorm::from_ball_vertices(&pts).expect("cross-polytope is valid")
}

/// `ℓ∞^d`: the hypercube ball.
pub fn linf_space(dim: usize) -> PolytopalNorm {
    let mut pts = Vec::new();
    for mask in 0..(1u32 << dim) {
        let coords: Vec<i64> = (0..dim)
            .map(|i| if mask & (1 << i) == 0 { 1 } else { -1 })
            .collect();
        pts.push(Vector::from_ints(&coords));
    }
    PolytopalNorm::from_ball_vertices(&pts).expect("hypercube is valid")
}

/// The affine regular hexagon ball `conv{±(1,0), ±(0,1), ±(1,1)}`.
pub fn hexagon_space() -> PolytopalNorm {
    PolytopalNorm::from_ball_vertices(&[
        Vector::from_ints(&[1, 0]),
        Vector::from_ints(&[-1, 0]),
        Vector::from_ints(&[0, 1]),
        Vector::from_ints(&[0, -1]),
        Vector::from_ints(&[1, 1]),
        Vector::from_ints(&[-1, -1]),
    ])
    .expect("hexagon is valid")
}

// ---------------------------------------------------------------------------
// Brute-force oracles.
// ---------------------------------------------------------------------------

/// Facet functionals of `conv(points)` by enumerating hyperplanes through
/// d-subsets (pairs in 2D, triples in 3D) and keeping the valid sides.
/// Quadratic-to-cubic; only for small oracle comparisons. Assumes the origin
/// is interior so every facet can be scaled to `⟨u, x⟩ = 1`.
pub fn brute_force_facets(points: &[Vector]) -> Vec<Vector> {
    let dim = points[0].dim();
    assert!(dim == 2 || dim == 3, "oracle supports 2D and 3D only");
    let n = points.len();
    let mut facets: Vec<Vector> = Vec::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    if dim == 2 {
        for i in 0..n {
            for j in i + 1..n {
                subsets.push(vec![i, j]);
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    subsets.push(vec![i, j, k]);
                }
            }
        }
    }
    for s in subsets {
        let m: Vec<Vec<Rat>> = s.iter().map(|&i| points[i].coords().to_vec()).collect();
        let rhs = vec![Rat::one(); dim];
        let Some(u) = exactgeom::solve_square(&m, &rhs) else {
            continue;
        };
        let u = Vector::new(u);
        if points.iter().all(|p| u.dot(p) <= Rat::one()) && !facets.contains(&u) {
            facets.push(u);
        }
    }
    facets.sort();
    facets
}

/// Exact LP value by enumerating basic solutions: every subset of
/// `num_vars` constraints treated as tight. Only meaningful for problems
/// known to be feasible and bounded (the optimum then sits at a vertex of
/// the feasible set). Returns the minimum objective over feasible basic
/// points.
pub fn brute_force_lp_value(p: &LpProblem) -> Option<Rat> {
    let n = p.num_vars();
    let cons = p.constraints();
    let m = cons.len();
    if m < n {
        return None;
    }
    let mut best: Option<Rat> = None;
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let mat: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| cons[i].0.coords().to_vec())
            .collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| cons[i].2.clone()).collect();
        if let Some(x) = exactgeom::solve_square(&mat, &rhs) {
            let x = Vector::new(x);
            let feasible = cons.iter().all(|(normal, rel, b)| {
                let lhs = normal.dot(&x);
                match rel {
                    Relation::Le => lhs <= *b,
                    Relation::Eq => lhs == *b,
                }
            });
            if feasible {
                let val = p.objective().dot(&x);
                best = match best {
                    None => Some(val),
                    Some(b) if val < b => Some(val),
                    other => other,
                };
            }
        }
        // next n-subset of 0..m in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if subset[i] != i + m - n {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `min{λ ≥ 0 : x ∈ λ·B}` as an LP over convex-combination weights of the
/// ball's vertices. An independent route to the norm value that never looks
/// at the dual ball.
pub fn norm_by_scaling_lp(ball: &Polytope, x: &Vector) -> Rat {
    let verts = ball.vertices();
    let k = verts.len();
    let d = ball.dim();
    // variables: mu_1..mu_k >= 0; minimize sum mu_i subject to sum mu_i v_i = x.
    let mut lp = LpProblem::new(Vector::new(vec![Rat::one(); k]));
    for j in 0..d {
        let row: Vec<Rat> = verts.iter().map(|v| v[j].clone()).collect();
        lp.add_eq(Vector::new(row), x[j].clone());
    }
    for i in 0..k {
        let mut row = vec![Rat::zero(); k];
        row[i] = -Rat::one();
        lp.add_le(Vector::new(row), Rat::zero());
    }
    let sol = crate::lp_solve(&lp).expect("well-formed LP");
    sol.expect_optimal().1.clone()
}

/// Minimum spanning tree length of `points` under `norm` (Prim's scan).
pub fn mst_length(norm: &PolytopalNorm, points: &[Vector]) -> Rat {
    let n = points.len();
    if n <= 1 {
        return Rat::zero();
    }
    let mut in_tree = vec![false; n];
    in_tree[0] = true;
    let mut dist: Vec<Option<Rat>> = (0..n)
        .map(|i| {
            if i == 0 {
                None
            } else {
                Some(norm.eval(&(&points[i] - &points[0])).unwrap())
            }
        })
        .collect();
    let mut total = Rat::zero();
    for _ in 1..n {
        let (next, d) = dist
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.as_ref().map(|d| (i, d.clone())))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("some vertex outside the tree");
        total += d;
        in_tree[next] = true;
        dist[next] = None;
        for i in 0..n {
            if !in_tree[i] {
                let nd = norm.eval(&(&points[i] - &points[next])).unwrap();
                if dist[i].as_ref().is_none_or(|old| nd < *old) {
                    dist[i] = Some(nd);
                }
            }
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Seeded random generation.
// ---------------------------------------------------------------------------

/// Small random rational with numerator in `[-bound, bound]` and denominator
/// in `[1, den_bound]`.
pub fn random_rat<R: Rng>(rng: &mut R, bound: i64, den_bound: i64) -> Rat {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=den_bound);
    Rat::new(num.into(), den.into())
}

/// Random nonzero vector with small rational coordinates.
pub fn random_nonzero_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let coords: Vec<Rat> = (0..dim).map(|_| random_rat(rng, 3, 2)).collect();
        let v = Vector::new(coords);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random centrally symmetric polytopal norm: a handful of small rational
/// points plus their negations. Retries until full-dimensional.
pub fn random_norm<R: Rng>(rng: &mut R, dim: usize) -> PolytopalNorm {
    loop {
        let k = rng.gen_range(dim..=dim + 3);
        let mut pts = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let p = random_nonzero_vector(rng, dim);
            pts.push(p.clone());
            pts.push(-&p);
        }
        if exactgeom::rank(&pts) < dim {
            continue;
        }
        if let Ok(norm) = PolytopalNorm::from_ball_vertices(&pts) {
            return norm;
        }
    }
}

/// Random unit vector of `norm`: a random nonzero point, normalized exactly.
pub fn random_unit_vector<R: Rng>(rng: &mut R, norm: &PolytopalNorm) -> Vector {
    let x = random_nonzero_vector(rng, norm.dim());
    norm.normalize(&x).expect("nonzero")
}

/// Random antipodal unit pair: a random direction exposes a face `F` of the
/// ball; random rational convex combinations of `F` and `-F` are antipodal
/// (the exposing functional separates them at width two).
pub fn random_antipodal_pair<R: Rng>(rng: &mut R, norm: &PolytopalNorm) -> (Vector, Vector) {
    let dir = random_nonzero_vector(rng, norm.dim());
    let face = norm.ball().exposed_face(&dir).expect("nonzero direction");
    let verts: Vec<&Vector> = face
        .vertex_indices()
        .iter()
        .map(|&i| &norm.ball().vertices()[i])
        .collect();
    let a = random_convex_combination(rng, &verts);
    let neg: Vec<Vector> = verts.iter().map(|v| -*v).collect();
    let neg_refs: Vec<&Vector> = neg.iter().collect();
    let b = random_convex_combination(rng, &neg_refs);
    (a, b)
}

fn random_convex_combination<R: Rng>(rng: &mut R, points: &[&Vector]) -> Vector {
    let weights: Vec<Rat> = points
        .iter()
        .map(|_| rat_int(rng.gen_range(1..=4)))
        .collect();
    let total: Rat = weights.iter().fold(Rat::zero(), |a, w| a + w);
    let mut out = Vector::zeros(points[0].dim());
    for (p, w) in points.iter().zip(&weights) {
        out = &out + &p.scale(&(w / &total));
    }
    out
}

/// Random feasible bounded LP for oracle comparison: random `≤` rows that
/// all admit the origin, plus a box keeping the problem bounded.
pub fn random_feasible_lp<R: Rng>(rng: &mut R, dim: usize) -> LpProblem {
    let mut lp = LpProblem::new(random_nonzero_vector(rng, dim));
    let rows = rng.gen_range(dim..=dim + 3);
    for _ in 0..rows {
        let normal = random_nonzero_vector(rng, dim);
        let rhs = Rat::new(rng.gen_range(0..=4).into(), 1.into());
        lp.add_le(normal, rhs);
    }
    for i in 0..dim {
        let mut row = vec![Rat::zero(); dim];
        row[i] = Rat::one();
        lp.add_le(Vector::new(row.clone()), rat_int(5));
        row[i] = -Rat::one();
        lp.add_le(Vector::new(row), rat_int(5));
    }
    lp
}
