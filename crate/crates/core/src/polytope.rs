//! Centrally symmetric convex polytopes with synchronized V- and
//! H-representations, polar duality, the full proper face lattice, and exact
//! face-to-face distances in the polytope's own gauge.
//!
//! The V-to-H conversion runs an incremental double description on the
//! homogenization of the polar body. Dimensions are capped at six, so the
//! exponential parts (ray adjacency, lattice closure) stay at desk scale.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{self, lp_solve, LpProblem, Rat, Vector};

/// Hard cap on the ambient dimension; face-lattice and Steiner-topology
/// enumeration are exponential beyond desk scale.
pub const DIMENSION_CAP: usize = 6;

/// A face of a polytope, identified by its (sorted) vertex-index set and a
/// supporting functional that is tight exactly on those vertices.
#[derive(Clone, Debug)]
pub struct Face {
    owner: u64,
    vertex_indices: Vec<usize>,
    functional: Vector,
    face_dim: usize,
}

impl Face {
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    pub fn supporting_functional(&self) -> &Vector {
        &self.functional
    }

    pub fn face_dim(&self) -> usize {
        self.face_dim
    }

    /// Fingerprint of the polytope this face belongs to.
    pub fn owner(&self) -> u64 {
        self.owner
    }

    pub fn is_vertex(&self) -> bool {
        self.vertex_indices.len() == 1
    }
}

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner && self.vertex_indices == other.vertex_indices
    }
}

impl Eq for Face {}

/// Centrally symmetric convex polytope with the origin strictly interior.
/// Facets are stored as functionals `u` with `⟨u, x⟩ ≤ 1`; the vertex list is
/// irredundant. The proper face lattice is computed once at construction.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Vector>,
    faces: Vec<Face>,
    face_index: HashMap<Vec<usize>, usize>,
    fingerprint: u64,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Builds the polytope spanned by `points`: deduplicates, checks central
    /// symmetry and full dimension, converts to an irredundant H-rep, prunes
    /// non-extreme points, and computes the face lattice.
    pub fn from_vertices(points: &[Vector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("no points given".into()));
        }
        let dim = points[0].dim();
        if dim == 0 {
            return Err(Error::InvalidInput("zero-dimensional points".into()));
        }
        if dim > DIMENSION_CAP {
            return Err(Error::DimensionCap(dim, DIMENSION_CAP));
        }
        for p in points {
            p.check_dim(dim)?;
        }

        let mut dedup: Vec<Vector> = Vec::new();
        {
            let mut seen = HashSet::new();
            for p in points {
                if seen.insert(p.clone()) {
                    dedup.push(p.clone());
                }
            }
        }
        let point_set: HashSet<&Vector> = dedup.iter().collect();
        for p in &dedup {
            if p.is_zero() {
                return Err(Error::DegenerateBall(
                    "the origin cannot be a vertex".into(),
                ));
            }
            if !point_set.contains(&-p) {
                return Err(Error::NotSymmetric);
            }
        }
        if exactgeom::rank(&dedup) < dim {
            return Err(Error::DegenerateBall(
                "points do not span the space".into(),
            ));
        }

        let facets = polar_vertex_enumeration(&dedup, dim)?;

        // A point is extreme iff its tight facet normals span the space.
        let mut vertices = Vec::new();
        for p in &dedup {
            let mut tight = Vec::new();
            for u in &facets {
                let val = u.dot(p);
                if val > Rat::one() {
                    return Err(Error::DegenerateBall(
                        "internal hull inconsistency".into(),
                    ));
                }
                if val == Rat::one() {
                    tight.push(u.clone());
                }
            }
            if exactgeom::rank(&tight) == dim {
                vertices.push(p.clone());
            }
        }
        vertices.sort();
        let mut facets = facets;
        facets.sort();
        Ok(Self::from_reps(dim, vertices, facets))
    }

    /// Assembles a polytope from matching V- and H-representations. Both are
    /// assumed canonical (what `from_vertices` or `polar_dual` produce).
    fn from_reps(dim: usize, vertices: Vec<Vector>, facets: Vec<Vector>) -> Self {
        let fingerprint = fingerprint(dim, &vertices);
        let (faces, face_index) = build_face_lattice(dim, &vertices, &facets, fingerprint);
        Polytope {
            dim,
            vertices,
            facets,
            faces,
            face_index,
            fingerprint,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Facet functionals `u` with `⟨u, x⟩ ≤ 1`, tight on each facet.
    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    /// All nonempty proper faces, sorted by (dimension, vertex indices).
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Index of an exact vertex, if present.
    pub fn vertex_index(&self, v: &Vector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// The polar body: vertices and facets swap roles. Exact involution.
    pub fn polar_dual(&self) -> Polytope {
        Polytope::from_reps(self.dim, self.facets.clone(), self.vertices.clone())
    }

    /// Gauge of the polytope: the smallest `λ ≥ 0` with `x ∈ λ·P`, evaluated
    /// as the maximum of the facet functionals.
    pub fn gauge(&self, x: &Vector) -> Result<Rat> {
        x.check_dim(self.dim)?;
        let mut best = Rat::zero();
        for u in &self.facets {
            let v = u.dot(x);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Membership test `x ∈ P`.
    pub fn contains(&self, x: &Vector) -> Result<bool> {
        Ok(self.gauge(x)? <= Rat::one())
    }

    /// The face where `x ↦ ⟨a, x⟩` attains its maximum over the polytope,
    /// with the stored canonical functional. Rejects `a = o`.
    pub fn exposed_face(&self, a: &Vector) -> Result<Face> {
        a.check_dim(self.dim)?;
        if a.is_zero() {
            return Err(Error::ZeroVector("exposed_face direction"));
        }
        let values: Vec<Rat> = self.vertices.iter().map(|v| a.dot(v)).collect();
        let max = values.iter().max().expect("nonempty vertex set").clone();
        debug_assert!(max.is_positive());
        let tight: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == max)
            .map(|(i, _)| i)
            .collect();
        let idx = self
            .face_index
            .get(&tight)
            .copied()
            .expect("tight set of a functional is a face");
        Ok(self.faces[idx].clone())
    }

    /// Looks up the canonical face for a vertex-index set.
    pub fn face_by_vertex_set(&self, indices: &[usize]) -> Option<&Face> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.face_index.get(&key).map(|&i| &self.faces[i])
    }

    /// The face with vertex set `-S` for a face with vertex set `S`.
    pub fn opposite_face(&self, face: &Face) -> Result<Face> {
        self.check_owns(face)?;
        let mut indices: Vec<usize> = face
            .vertex_indices
            .iter()
            .map(|&i| {
                self.vertex_index(&-&self.vertices[i])
                    .expect("centrally symmetric vertex set")
            })
            .collect();
        indices.sort_unstable();
        let idx = self.face_index[&indices];
        Ok(self.faces[idx].clone())
    }

    fn check_owns(&self, face: &Face) -> Result<()> {
        if face.owner != self.fingerprint {
            return Err(Error::ForeignFace);
        }
        Ok(())
    }

    /// Combinatorial disjointness: faces of a polytope intersect in a face,
    /// which is nonempty iff it contains a common vertex.
    pub fn faces_disjoint(&self, f: &Face, g: &Face) -> Result<bool> {
        self.check_owns(f)?;
        self.check_owns(g)?;
        Ok(!index_sets_intersect(&f.vertex_indices, &g.vertex_indices))
    }

    /// Exact minimum of `gauge(p - q)` over `p ∈ F`, `q ∈ G`. For the dual
    /// ball of a norm this is the dual-norm distance between dual faces.
    pub fn face_distance(&self, f: &Face, g: &Face) -> Result<Rat> {
        Ok(self.face_distance_witness(f, g)?.0)
    }

    /// As [`face_distance`](Self::face_distance), also returning an optimal
    /// pair `(p, q)`.
    pub fn face_distance_witness(&self, f: &Face, g: &Face) -> Result<(Rat, Vector, Vector)> {
        self.check_owns(f)?;
        self.check_owns(g)?;
        if index_sets_intersect(&f.vertex_indices, &g.vertex_indices) {
            let common = f
                .vertex_indices
                .iter()
                .find(|i| g.vertex_indices.binary_search(i).is_ok())
                .unwrap();
            let p = self.vertices[*common].clone();
            return Ok((Rat::zero(), p.clone(), p));
        }
        let d = self.dim;
        // Variables: p (d), q (d), t. Minimize t subject to
        //   p, q in the polytope,  ⟨a_F, p⟩ = 1,  ⟨a_G, q⟩ = 1,
        //   ⟨u, p - q⟩ ≤ t for every facet functional u (the gauge epigraph).
        let mut objective = vec![Rat::zero(); 2 * d + 1];
        objective[2 * d] = Rat::one();
        let mut lp = LpProblem::new(Vector::new(objective));
        for u in &self.facets {
            let mut row = vec![Rat::zero(); 2 * d + 1];
            row[..d].clone_from_slice(u.coords());
            lp.add_le(Vector::new(row), Rat::one());
            let mut row = vec![Rat::zero(); 2 * d + 1];
            row[d..2 * d].clone_from_slice(u.coords());
            lp.add_le(Vector::new(row), Rat::one());
            let mut row = vec![Rat::zero(); 2 * d + 1];
            for j in 0..d {
                row[j] = u[j].clone();
                row[d + j] = -&u[j];
            }
            row[2 * d] = -Rat::one();
            lp.add_le(Vector::new(row), Rat::zero());
        }
        let mut row = vec![Rat::zero(); 2 * d + 1];
        row[..d].clone_from_slice(f.functional.coords());
        lp.add_eq(Vector::new(row), Rat::one());
        let mut row = vec![Rat::zero(); 2 * d + 1];
        row[d..2 * d].clone_from_slice(g.functional.coords());
        lp.add_eq(Vector::new(row), Rat::one());

        let sol = lp_solve(&lp)?;
        let (point, value) = sol.expect_optimal();
        let p = Vector::new(point.coords()[..d].to_vec());
        let q = Vector::new(point.coords()[d..2 * d].to_vec());
        Ok((value.clone(), p, q))
    }

    /// Construction-time invariants, used by tests: double-description
    /// consistency and facet tightness counts.
    pub fn validate(&self) -> Result<()> {
        for v in &self.vertices {
            for u in &self.facets {
                if u.dot(v) > Rat::one() {
                    return Err(Error::DegenerateBall("vertex violates a facet".into()));
                }
            }
        }
        for u in &self.facets {
            let tight: Vec<Vector> = self
                .vertices
                .iter()
                .filter(|v| u.dot(v) == Rat::one())
                .cloned()
                .collect();
            if tight.len() < self.dim || affine_rank(&tight) != self.dim - 1 {
                return Err(Error::DegenerateBall(
                    "facet not tight on a spanning vertex set".into(),
                ));
            }
        }
        Ok(())
    }
}

fn index_sets_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[Vector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vector> = points[1..].iter().map(|p| p - &points[0]).collect();
    exactgeom::rank(&diffs)
}

fn fingerprint(dim: usize, vertices: &[Vector]) -> u64 {
    let mut h = DefaultHasher::new();
    dim.hash(&mut h);
    for v in vertices {
        for c in v.coords() {
            c.hash(&mut h);
        }
    }
    h.finish()
}

// ---------------------------------------------------------------------------
// Double description: vertex enumeration of the polar body.
// ---------------------------------------------------------------------------

/// Vertices of `Q = {y : ⟨p, y⟩ ≤ 1 for all input points p}`, which are the
/// facet functionals of the hull of the points. Requires a symmetric,
/// spanning point set (which makes the homogenization cone pointed).
fn polar_vertex_enumeration(points: &[Vector], dim: usize) -> Result<Vec<Vector>> {
    // Homogenize: C = {(t, y) : ⟨p_i, y⟩ - t ≤ 0}. Rows b_i = (-1, p_i).
    let rows: Vec<Vector> = points
        .iter()
        .map(|p| {
            let mut c = Vec::with_capacity(dim + 1);
            c.push(-Rat::one());
            c.extend_from_slice(p.coords());
            Vector::new(c)
        })
        .collect();

    // Initial simplicial cone: a spanning subset of d points плюс the negation
    // of the first, whose homogenized rows are linearly independent.
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vector> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if basis_idx.len() == dim {
            break;
        }
        chosen.push(p.clone());
        if exactgeom::rank(&chosen) == basis_idx.len() + 1 {
            basis_idx.push(i);
        } else {
            chosen.pop();
        }
    }
    debug_assert_eq!(basis_idx.len(), dim);
    let neg_first = -&points[basis_idx[0]];
    let extra = points
        .iter()
        .position(|p| *p == neg_first)
        .expect("symmetric point set");
    basis_idx.push(extra);

    let matrix: Vec<Vec<Rat>> = basis_idx
        .iter()
        .map(|&i| rows[i].coords().to_vec())
        .collect();
    let inv = exactgeom::invert(&matrix).expect("initial rows are independent");
    let mut rays: Vec<Ray> = (0..dim + 1)
        .map(|col| {
            let coords: Vec<Rat> = (0..dim + 1).map(|r| -&inv[r][col]).collect();
            let mut zero_set: HashSet<usize> = basis_idx.iter().copied().collect();
            zero_set.remove(&basis_idx[col]);
            Ray::new(Vector::new(coords), zero_set)
        })
        .collect();

    let in_basis: HashSet<usize> = basis_idx.iter().copied().collect();
    for (i, row) in rows.iter().enumerate() {
        if in_basis.contains(&i) {
            continue;
        }
        insert_constraint(&mut rays, row, i, dim);
    }

    let mut out = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = &ray.coords[0];
        if !t.is_positive() {
            return Err(Error::DegenerateBall(
                "polar body is unbounded; origin not strictly interior".into(),
            ));
        }
        let coords: Vec<Rat> = ray.coords.coords()[1..].iter().map(|c| c / t).collect();
        out.push(Vector::new(coords));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

struct Ray {
    coords: Vector,
    zero_set: HashSet<usize>,
}

impl Ray {
    fn new(coords: Vector, zero_set: HashSet<usize>) -> Self {
        Ray {
            coords: canonical_ray(coords),
            zero_set,
        }
    }
}

/// Scales a ray to primitive integer coordinates, preserving orientation.
fn canonical_ray(v: Vector) -> Vector {
    use num::bigint::BigInt;
    use num::Integer;
    let mut lcm = BigInt::one();
    for c in v.coords() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.coords().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    if gcd.is_zero() {
        return v;
    }
    Vector::new(
        ints.into_iter()
            .map(|i| Rat::from_integer(i / &gcd))
            .collect(),
    )
}

fn insert_constraint(rays: &mut Vec<Ray>, row: &Vector, row_idx: usize, dim: usize) {
    let signs: Vec<Rat> = rays.iter().map(|r| row.dot(&r.coords)).collect();
    if signs.iter().all(|s| !s.is_positive()) {
        for (ray, s) in rays.iter_mut().zip(&signs) {
            if s.is_zero() {
                ray.zero_set.insert(row_idx);
            }
        }
        return;
    }
    let mut next: Vec<Ray> = Vec::new();
    let mut negatives: Vec<usize> = Vec::new();
    let mut positives: Vec<usize> = Vec::new();
    for (i, s) in signs.iter().enumerate() {
        match exactgeom::sign(s) {
            -1 => negatives.push(i),
            1 => positives.push(i),
            _ => {}
        }
    }
    for (p, n) in positives
        .iter()
        .flat_map(|&p| negatives.iter().map(move |&n| (p, n)))
    {
        let common: HashSet<usize> = rays[p]
            .zero_set
            .intersection(&rays[n].zero_set)
            .copied()
            .collect();
        if common.len() + 2 < dim + 1 {
            continue;
        }
        let adjacent = rays.iter().enumerate().all(|(k, other)| {
            k == p || k == n || !common.is_subset(&other.zero_set)
        });
        if !adjacent {
            continue;
        }
        // New ray: (b·r_p) r_n - (b·r_n) r_p, tight at `common` plus the new row.
        let coords = &rays[n].coords.scale(&signs[p]) - &rays[p].coords.scale(&signs[n]);
        let mut zero_set = common;
        zero_set.insert(row_idx);
        next.push(Ray::new(coords, zero_set));
    }
    let mut kept: Vec<Ray> = Vec::new();
    for (i, ray) in rays.drain(..).enumerate() {
        match exactgeom::sign(&signs[i]) {
            1 => {}
            0 => {
                let mut ray = ray;
                ray.zero_set.insert(row_idx);
                kept.push(ray);
            }
            _ => kept.push(ray),
        }
    }
    kept.extend(next);
    *rays = kept;
}

// ---------------------------------------------------------------------------
// Face lattice.
// ---------------------------------------------------------------------------

/// All nonempty proper faces as closure of the facet vertex sets under
/// intersection. Each face gets the averaged functional of every facet
/// containing it, which is tight exactly on the face.
fn build_face_lattice(
    dim: usize,
    vertices: &[Vector],
    facets: &[Vector],
    owner: u64,
) -> (Vec<Face>, HashMap<Vec<usize>, usize>) {
    let facet_sets: Vec<Vec<usize>> = facets
        .iter()
        .map(|u| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| u.dot(v) == Rat::one())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for s in &facet_sets {
        if seen.insert(s.clone()) {
            frontier.push(s.clone());
        }
    }
    let mut all: Vec<Vec<usize>> = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for fs in &facet_sets {
                let inter = sorted_intersection(s, fs);
                if !inter.is_empty() && seen.insert(inter.clone()) {
                    next.push(inter.clone());
                    all.push(inter);
                }
            }
        }
        frontier = next;
    }

    let mut faces: Vec<Face> = all
        .into_iter()
        .map(|indices| {
            let containing: Vec<&Vector> = facet_sets
                .iter()
                .zip(facets)
                .filter(|(fs, _)| is_subset(&indices, fs))
                .map(|(_, u)| u)
                .collect();
            debug_assert!(!containing.is_empty());
            let mut sum = Vector::zeros(dim);
            for u in &containing {
                sum = &sum + u;
            }
            let functional = sum.scale(&Rat::new(1.into(), (containing.len() as i64).into()));
            let pts: Vec<Vector> = indices.iter().map(|&i| vertices[i].clone()).collect();
            let face_dim = affine_rank(&pts);
            Face {
                owner,
                vertex_indices: indices,
                functional,
                face_dim,
            }
        })
        .collect();
    faces.sort_by(|a, b| {
        (a.face_dim, &a.vertex_indices).cmp(&(b.face_dim, &b.vertex_indices))
    });
    let face_index = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.vertex_indices.clone(), i))
        .collect();
    (faces, face_index)
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat_int;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn cross_2d() -> Polytope {
        Polytope::from_vertices(&[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]).unwrap()
    }

    fn square_2d() -> Polytope {
        Polytope::from_vertices(&[v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])]).unwrap()
    }

    fn hexagon() -> Polytope {
        Polytope::from_vertices(&[
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            v(&[1, 1]),
            v(&[-1, -1]),
        ])
        .unwrap()
    }

    #[test]
    fn cross_polytope_has_four_diagonal_facets() {
        let p = cross_2d();
        assert_eq!(p.vertices().len(), 4);
        let expected = vec![v(&[-1, -1]), v(&[-1, 1]), v(&[1, -1]), v(&[1, 1])];
        assert_eq!(p.facets(), &expected[..]);
        p.validate().unwrap();
    }

    #[test]
    fn square_has_axis_facets() {
        let p = square_2d();
        assert_eq!(p.vertices().len(), 4);
        let expected = vec![v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0])];
        assert_eq!(p.facets(), &expected[..]);
    }

    #[test]
    fn hexagon_hull_from_spanning_set() {
        let p = hexagon();
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 6);
        // Facets derived by brute-force pair enumeration: ±(1,0), ±(0,1), ±(1,-1).
        let expected = vec![
            v(&[-1, 0]),
            v(&[-1, 1]),
            v(&[0, -1]),
            v(&[0, 1]),
            v(&[1, -1]),
            v(&[1, 0]),
        ];
        assert_eq!(p.facets(), &expected[..]);
        p.validate().unwrap();
    }

    #[test]
    fn redundant_points_are_pruned() {
        let p = Polytope::from_vertices(&[
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            Vector::new(vec![crate::exactgeom::rat(1, 2), crate::exactgeom::rat(1, 2)]),
            Vector::new(vec![crate::exactgeom::rat(-1, 2), crate::exactgeom::rat(-1, 2)]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let r = Polytope::from_vertices(&[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])]);
        assert!(matches!(r, Err(Error::NotSymmetric)));
    }

    #[test]
    fn flat_input_rejected() {
        let r = Polytope::from_vertices(&[v(&[1, 0]), v(&[-1, 0])]);
        assert!(matches!(r, Err(Error::DegenerateBall(_))));
    }

    #[test]
    fn l1_linf_duality() {
        let cross = cross_2d();
        let square = square_2d();
        assert_eq!(cross.polar_dual(), square);
        assert_eq!(square.polar_dual(), cross);
    }

    #[test]
    fn polar_is_involution() {
        for p in [cross_2d(), square_2d(), hexagon()] {
            assert_eq!(p.polar_dual().polar_dual(), p);
        }
    }

    #[test]
    fn hexagon_dual_matches_direct_enumeration() {
        let dual = hexagon().polar_dual();
        let expected = Polytope::from_vertices(&[
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            v(&[1, -1]),
            v(&[-1, 1]),
        ])
        .unwrap();
        assert_eq!(dual, expected);
    }

    #[test]
    fn face_lattice_counts() {
        assert_eq!(square_2d().faces().len(), 8);
        let cube: Vec<Vector> = (0..8)
            .map(|i| {
                v(&[
                    if i & 1 == 0 { 1 } else { -1 },
                    if i & 2 == 0 { 1 } else { -1 },
                    if i & 4 == 0 { 1 } else { -1 },
                ])
            })
            .collect();
        let cube = Polytope::from_vertices(&cube).unwrap();
        assert_eq!(cube.faces().len(), 26);
        let by_dim = |d: usize| cube.faces().iter().filter(|f| f.face_dim() == d).count();
        assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (8, 12, 6));
    }

    #[test]
    fn exposed_faces_of_cross_and_square() {
        let cross = cross_2d();
        let f = cross.exposed_face(&v(&[1, 1])).unwrap();
        let verts: Vec<&Vector> = f
            .vertex_indices()
            .iter()
            .map(|&i| &cross.vertices()[i])
            .collect();
        assert_eq!(verts, vec![&v(&[0, 1]), &v(&[1, 0])]);

        let square = square_2d();
        let f = square.exposed_face(&v(&[1, 0])).unwrap();
        assert_eq!(f.vertex_indices().len(), 2);
        assert_eq!(f.face_dim(), 1);
        let f = square.exposed_face(&v(&[1, 1])).unwrap();
        assert_eq!(f.vertex_indices().len(), 1);
        assert_eq!(square.vertices()[f.vertex_indices()[0]], v(&[1, 1]));
        assert!(square.exposed_face(&v(&[0, 0])).is_err());
    }

    #[test]
    fn exposed_face_scale_invariant_and_canonical() {
        let p = hexagon();
        for a in [v(&[1, 1]), v(&[2, -1]), v(&[0, 5])] {
            let f1 = p.exposed_face(&a).unwrap();
            let f2 = p.exposed_face(&a.scale(&crate::exactgeom::rat(7, 3))).unwrap();
            assert_eq!(f1, f2);
            let f3 = p.exposed_face(f1.supporting_functional()).unwrap();
            assert_eq!(f1, f3);
        }
    }

    #[test]
    fn disjointness_is_combinatorial() {
        let square = square_2d();
        let left = square.exposed_face(&v(&[-1, 0])).unwrap();
        let right = square.exposed_face(&v(&[1, 0])).unwrap();
        assert!(square.faces_disjoint(&left, &right).unwrap());
        let corner = square.exposed_face(&v(&[1, 1])).unwrap();
        assert!(!square.faces_disjoint(&right, &corner).unwrap());

        let cross = cross_2d();
        let e1 = cross.exposed_face(&v(&[1, 1])).unwrap();
        let e2 = cross.exposed_face(&v(&[1, -1])).unwrap();
        assert!(!cross.faces_disjoint(&e1, &e2).unwrap());
        assert!(cross.faces_disjoint(&e1, &left).is_err());
    }

    #[test]
    fn face_distances_on_the_l1_square() {
        // Dual ball of linf is the cross-polytope; distances in its gauge are l1.
        let cross = cross_2d();
        let f = cross.exposed_face(&v(&[1, 0])).unwrap();
        let g = cross.exposed_face(&v(&[0, -1])).unwrap();
        assert_eq!(cross.face_distance(&f, &g).unwrap(), rat_int(2));
        let negf = cross.exposed_face(&v(&[-1, 0])).unwrap();
        assert_eq!(cross.face_distance(&f, &negf).unwrap(), rat_int(2));
        let touching = cross.exposed_face(&v(&[1, 1])).unwrap();
        assert_eq!(cross.face_distance(&f, &touching).unwrap(), rat_int(0));
    }

    #[test]
    fn face_distance_symmetry_and_zero_iff_meeting() {
        let p = hexagon();
        let faces = p.faces();
        for f in faces.iter().take(8) {
            for g in faces.iter().take(8) {
                let d1 = p.face_distance(f, g).unwrap();
                let d2 = p.face_distance(g, f).unwrap();
                assert_eq!(d1, d2);
                let disjoint = p.faces_disjoint(f, g).unwrap();
                assert_eq!(d1.is_zero(), !disjoint);
            }
        }
    }

    #[test]
    fn opposite_face_negates_vertices() {
        let p = hexagon();
        let f = p.exposed_face(&v(&[1, 0])).unwrap();
        let g = p.opposite_face(&f).unwrap();
        let h = p.exposed_face(&v(&[-1, 0])).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn dimension_cap_enforced() {
        let pts: Vec<Vector> = (0..7)
            .flat_map(|i| {
                let mut a = [0i64; 7];
                a[i] = 1;
                let mut b = [0i64; 7];
                b[i] = -1;
                [v(&a), v(&b)]
            })
            .collect();
        assert!(matches!(
            Polytope::from_vertices(&pts),
            Err(Error::DimensionCap(7, 6))
        ));
    }
}
