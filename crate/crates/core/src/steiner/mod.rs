//! Exact Steiner minimal trees at desk scale. A tree's length is the sum of
//! edge norms; for a fixed topology the optimal Steiner positions are one LP
//! (an epigraph variable per edge bounded below by every facet functional of
//! the difference), and the global optimum is the minimum over all full
//! topologies, which coincident optimal positions extend to every topology.

mod improve;
mod topology;

pub use improve::{improve_tree, ImproveOptions};
pub use topology::{brute_force_full_topologies, enumerate_topologies, SteinerTopology};

use num::traits::{One, Zero};
use rayon::prelude::*;

use crate::angles::{is_absorbing, AngleQuery};
use crate::antipodality::is_steiner_antipodal;
use crate::error::{Error, Result};
use crate::exactgeom::{lp_solve, rat_int, LpProblem, Rat, Vector};
use crate::norm::PolytopalNorm;

/// Terminal limit for exhaustive topology enumeration (945 topologies).
pub const EXACT_TERMINAL_LIMIT: usize = 7;

/// A Steiner tree problem instance.
#[derive(Clone, Debug)]
pub struct Instance {
    norm: PolytopalNorm,
    terminals: Vec<Vector>,
}

impl Instance {
    pub fn new(norm: PolytopalNorm, terminals: Vec<Vector>) -> Result<Self> {
        if terminals.is_empty() {
            return Err(Error::InvalidInput("at least one terminal required".into()));
        }
        for t in &terminals {
            t.check_dim(norm.dim())?;
        }
        for i in 0..terminals.len() {
            for j in i + 1..terminals.len() {
                if terminals[i] == terminals[j] {
                    return Err(Error::InvalidInput(format!(
                        "terminals {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Instance { norm, terminals })
    }

    pub fn norm(&self) -> &PolytopalNorm {
        &self.norm
    }

    pub fn terminals(&self) -> &[Vector] {
        &self.terminals
    }
}

/// How strong an optimality claim a result carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimalityLevel {
    /// Minimum over every topology (full enumeration ran).
    ExactGlobal,
    /// Exact minimum for the stated topology only.
    ExactForTopology,
    /// Best tree found by local search; no optimality claim.
    Heuristic,
}

impl OptimalityLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            OptimalityLevel::ExactGlobal => "ExactGlobal",
            OptimalityLevel::ExactForTopology => "ExactForTopology",
            OptimalityLevel::Heuristic => "Heuristic",
        }
    }
}

/// An optimized Steiner tree: topology, Steiner positions, exact length.
#[derive(Clone, Debug)]
pub struct SteinerTreeResult {
    pub topology: SteinerTopology,
    pub steiner_positions: Vec<Vector>,
    pub length: Rat,
    pub level: OptimalityLevel,
}

impl SteinerTreeResult {
    /// Positions of all slots: terminals first, then Steiner points.
    pub fn slot_positions(&self, terminals: &[Vector]) -> Vec<Vector> {
        let mut all = terminals.to_vec();
        all.extend(self.steiner_positions.iter().cloned());
        all
    }
}

/// Exact total edge length of an explicit tree. Errors on a dangling edge
/// index.
pub fn tree_length(
    norm: &PolytopalNorm,
    positions: &[Vector],
    edges: &[(usize, usize)],
) -> Result<Rat> {
    let mut total = Rat::zero();
    for &(a, b) in edges {
        if a >= positions.len() || b >= positions.len() {
            return Err(Error::InvalidInput(format!(
                "edge ({a},{b}) references a missing slot"
            )));
        }
        total += norm.eval(&(&positions[a] - &positions[b]))?;
    }
    Ok(total)
}

/// Exact minimum length over Steiner positions for one topology, as one LP.
pub fn optimize_topology(
    norm: &PolytopalNorm,
    terminals: &[Vector],
    topo: &SteinerTopology,
) -> Result<SteinerTreeResult> {
    if terminals.len() != topo.terminal_count() {
        return Err(Error::InvalidInput(format!(
            "topology expects {} terminals, got {}",
            topo.terminal_count(),
            terminals.len()
        )));
    }
    let (steiner_positions, length) =
        optimize_positions(norm, terminals, topo.steiner_count(), topo.edges())?;
    Ok(SteinerTreeResult {
        topology: topo.clone(),
        steiner_positions,
        length,
        level: OptimalityLevel::ExactForTopology,
    })
}

/// LP core shared by `optimize_topology` and the local search: positions for
/// `m` Steiner slots minimizing the total edge length of `edges` (slots
/// `0..n` are the fixed terminals). Returns the Steiner positions and the
/// exact length recomputed from them.
pub(crate) fn optimize_positions(
    norm: &PolytopalNorm,
    terminals: &[Vector],
    m: usize,
    edges: &[(usize, usize)],
) -> Result<(Vec<Vector>, Rat)> {
    let n = terminals.len();
    let d = norm.dim();
    // Edges between two terminals have a fixed length; only edges touching a
    // Steiner slot enter the LP.
    let free_edges: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| a >= n || b >= n)
        .collect();
    if free_edges.is_empty() {
        let length = tree_length(norm, terminals, edges)?;
        return Ok((vec![Vector::zeros(d); m], length));
    }
    let vars = m * d + free_edges.len();
    let mut objective = vec![Rat::zero(); vars];
    for t in objective.iter_mut().skip(m * d) {
        *t = Rat::one();
    }
    let mut lp = LpProblem::new(Vector::new(objective));
    for (e, &(a, b)) in free_edges.iter().enumerate() {
        for u in norm.dual_ball().vertices() {
            // ⟨u, pos_a⟩ - ⟨u, pos_b⟩ ≤ t_e, constants moved to the rhs
            let mut row = vec![Rat::zero(); vars];
            let mut rhs = Rat::zero();
            if a >= n {
                let block = (a - n) * d;
                for j in 0..d {
                    row[block + j] += &u[j];
                }
            } else {
                rhs -= u.dot(&terminals[a]);
            }
            if b >= n {
                let block = (b - n) * d;
                for j in 0..d {
                    row[block + j] -= &u[j];
                }
            } else {
                rhs += u.dot(&terminals[b]);
            }
            row[m * d + e] = -Rat::one();
            lp.add_le(Vector::new(row), rhs);
        }
    }
    let sol = lp_solve(&lp)?;
    let point = sol.expect_optimal().0;
    let steiner_positions: Vec<Vector> = (0..m)
        .map(|s| Vector::new(point.coords()[s * d..(s + 1) * d].to_vec()))
        .collect();
    let mut all = terminals.to_vec();
    all.extend(steiner_positions.iter().cloned());
    let length = tree_length(norm, &all, edges)?;
    Ok((steiner_positions, length))
}

/// Exact Steiner minimal tree by full topology enumeration; `n ≤ 7`.
/// Topologies are optimized in parallel; ties break to the first topology
/// in canonical enumeration order.
pub fn exact_smt(inst: &Instance) -> Result<SteinerTreeResult> {
    let n = inst.terminals.len();
    if n == 1 {
        return Ok(SteinerTreeResult {
            topology: SteinerTopology::single_terminal(),
            steiner_positions: Vec::new(),
            length: Rat::zero(),
            level: OptimalityLevel::ExactGlobal,
        });
    }
    if n > EXACT_TERMINAL_LIMIT {
        return Err(Error::SizeLimit {
            got: n,
            limit: EXACT_TERMINAL_LIMIT,
        });
    }
    let topologies = enumerate_topologies(n)?;
    let results: Vec<SteinerTreeResult> = topologies
        .par_iter()
        .map(|t| optimize_topology(&inst.norm, &inst.terminals, t))
        .collect::<Result<_>>()?;
    let best = results
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.length.cmp(&b.length).then(i.cmp(j)))
        .map(|(_, r)| r)
        .expect("at least one topology");
    Ok(SteinerTreeResult {
        level: OptimalityLevel::ExactGlobal,
        ..best
    })
}

/// Verdict of comparing a star against the exact SMT of its terminal set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarVerdict {
    /// The star length equals the SMT length: the star is itself an SMT.
    Equal,
    /// The SMT is strictly shorter than the star.
    StrictlyWorse,
}

/// Star-vs-SMT comparison with the witness tree.
#[derive(Clone, Debug)]
pub struct StarComparison {
    pub verdict: StarVerdict,
    pub star_length: Rat,
    pub smt: SteinerTreeResult,
}

/// Compares the star joining `center` to every leaf against the exact SMT
/// of the leaves (optionally including the center as a terminal). At most
/// six leaves in exact mode.
pub fn star_is_smt(
    norm: &PolytopalNorm,
    center: &Vector,
    leaves: &[Vector],
    include_center_as_terminal: bool,
) -> Result<StarComparison> {
    if leaves.len() > 6 {
        return Err(Error::SizeLimit {
            got: leaves.len(),
            limit: 6,
        });
    }
    let mut star_length = Rat::zero();
    for leaf in leaves {
        star_length += norm.eval(&(leaf - center))?;
    }
    let mut terminals = Vec::with_capacity(leaves.len() + 1);
    if include_center_as_terminal {
        terminals.push(center.clone());
    }
    terminals.extend(leaves.iter().cloned());
    let inst = Instance::new(norm.clone(), terminals)?;
    let smt = exact_smt(&inst)?;
    debug_assert!(smt.length <= star_length);
    let verdict = if smt.length == star_length {
        StarVerdict::Equal
    } else {
        StarVerdict::StrictlyWorse
    };
    Ok(StarComparison {
        verdict,
        star_length,
        smt,
    })
}

/// Report for the four-condition theorem chain on a set of unit vectors:
/// (1) all angles at the origin absorbing, (2) all pairwise distances two,
/// (3) the star is an SMT of the leaves, (4) the star is an SMT of the
/// leaves plus the origin. The implications (2)⇒(3)⇒(4)⇒(1) must always
/// hold; all four are equivalent exactly when the norm is Steiner antipodal.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub k: usize,
    pub all_angles_absorbing: bool,
    pub all_pairwise_distance_two: bool,
    pub star_smt_of_leaves: bool,
    pub star_smt_with_origin: bool,
    pub steiner_antipodal: bool,
    /// Names of violated implications, e.g. "(2)=>(3)". Empty when sound.
    pub implication_violations: Vec<String>,
    /// When the norm is Steiner antipodal: whether all four agree.
    pub equivalence_holds: Option<bool>,
}

impl ChainReport {
    pub fn conditions(&self) -> [bool; 4] {
        [
            self.all_angles_absorbing,
            self.all_pairwise_distance_two,
            self.star_smt_of_leaves,
            self.star_smt_with_origin,
        ]
    }

    pub fn ok(&self) -> bool {
        self.implication_violations.is_empty() && self.equivalence_holds != Some(false)
    }
}

/// Evaluates the theorem-chain conditions for unit vectors `points`.
/// `k = 1` is trivially consistent (no pairs; any single edge is an SMT).
pub fn verify_theorem_chain(norm: &PolytopalNorm, points: &[Vector]) -> Result<ChainReport> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    for p in points {
        if norm.eval(p)? != Rat::one() {
            return Err(Error::InvalidInput(format!(
                "point {p} is not a unit vector"
            )));
        }
    }
    let k = points.len();
    if k > 6 {
        return Err(Error::SizeLimit { got: k, limit: 6 });
    }
    let origin = Vector::zeros(norm.dim());
    let two = rat_int(2);
    let mut all_absorbing = true;
    let mut all_two = true;
    for i in 0..k {
        for j in i + 1..k {
            let q = AngleQuery::new(points[i].clone(), points[j].clone())?;
            if !is_absorbing(norm, &q)? {
                all_absorbing = false;
            }
            if norm.eval(&(&points[i] - &points[j]))? != two {
                all_two = false;
            }
        }
    }
    let (cond3, cond4) = if k == 1 {
        (true, true)
    } else {
        (
            star_is_smt(norm, &origin, points, false)?.verdict == StarVerdict::Equal,
            star_is_smt(norm, &origin, points, true)?.verdict == StarVerdict::Equal,
        )
    };
    let mut violations = Vec::new();
    if all_two && !cond3 {
        violations.push("(2)=>(3)".to_string());
    }
    if cond3 && !cond4 {
        violations.push("(3)=>(4)".to_string());
    }
    if cond4 && !all_absorbing {
        violations.push("(4)=>(1)".to_string());
    }
    let sa = is_steiner_antipodal(norm)?.steiner_antipodal;
    let equivalence_holds = sa.then(|| {
        let c = [all_absorbing, all_two, cond3, cond4];
        c.iter().all(|&x| x == c[0])
    });
    Ok(ChainReport {
        k,
        all_angles_absorbing: all_absorbing,
        all_pairwise_distance_two: all_two,
        star_smt_of_leaves: cond3,
        star_smt_with_origin: cond4,
        steiner_antipodal: sa,
        implication_violations: violations,
        equivalence_holds,
    })
}

/// Report for the planar biconditional: in a Minkowski plane the star from
/// the origin is an SMT of `{o, p_1..p_k}` iff all angles at the origin are
/// absorbing.
#[derive(Clone, Debug)]
pub struct PlaneReport {
    pub all_angles_absorbing: bool,
    pub star_is_smt: bool,
    pub star_length: Rat,
    pub smt_length: Rat,
}

impl PlaneReport {
    pub fn agree(&self) -> bool {
        self.all_angles_absorbing == self.star_is_smt
    }
}

/// Checks the planar star characterization on nonzero points; dimension
/// must be two, at most six points.
pub fn verify_plane_theorem(norm: &PolytopalNorm, points: &[Vector]) -> Result<PlaneReport> {
    if norm.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: norm.dim(),
        });
    }
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    if points.len() > 6 {
        return Err(Error::SizeLimit {
            got: points.len(),
            limit: 6,
        });
    }
    for p in points {
        if p.is_zero() {
            return Err(Error::ZeroVector("plane theorem point"));
        }
    }
    let mut all_absorbing = true;
    'outer: for i in 0..points.len() {
        for j in i + 1..points.len() {
            let q = AngleQuery::new(points[i].clone(), points[j].clone())?;
            if !is_absorbing(norm, &q)? {
                all_absorbing = false;
                break 'outer;
            }
        }
    }
    let origin = Vector::zeros(2);
    let cmp = star_is_smt(norm, &origin, points, true)?;
    Ok(PlaneReport {
        all_angles_absorbing: all_absorbing,
        star_is_smt: cmp.verdict == StarVerdict::Equal,
        star_length: cmp.star_length,
        smt_length: cmp.smt.length,
    })
}
