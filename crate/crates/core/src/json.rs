//! JSON wire formats. Rationals travel as strings ("p/q", or "p" when the
//! denominator is one) so no value is ever rounded; a display option can
//! render decimals for humans without touching stored data.

use serde::{Deserialize, Serialize};

use crate::antipodality::{ClResult, SteinerAntipodalResult};
use crate::error::{Error, Result};
use crate::exactgeom::{parse_rat, rat_to_f64, Rat, Vector};
use crate::norm::PolytopalNorm;
use crate::polytope::{Face, Polytope};
use crate::steiner::SteinerTreeResult;

/// How to render rationals in outgoing JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NumberFormat {
    #[default]
    Exact,
    Float,
}

impl NumberFormat {
    pub fn render(&self, r: &Rat) -> String {
        match self {
            NumberFormat::Exact => r.to_string(),
            NumberFormat::Float => format!("{}", rat_to_f64(r)),
        }
    }

    pub fn render_vector(&self, v: &Vector) -> Vec<String> {
        v.coords().iter().map(|c| self.render(c)).collect()
    }
}

/// A ball on the wire: `{"dim": d, "vertices": [["1","0"], ...]}`, with the
/// H-representation added under "facets" on request. A norm is specified
/// solely by its ball's vertices; the dual is always derived.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<String>>>,
}

impl BallJson {
    pub fn from_polytope(p: &Polytope, include_facets: bool, fmt: NumberFormat) -> Self {
        BallJson {
            dim: p.dim(),
            vertices: p.vertices().iter().map(|v| fmt.render_vector(v)).collect(),
            facets: include_facets
                .then(|| p.facets().iter().map(|u| fmt.render_vector(u)).collect()),
        }
    }

    /// Rebuilds the polytope from the vertex list; any "facets" field is
    /// ignored and recomputed, so inconsistent pairs cannot be injected.
    pub fn to_polytope(&self) -> Result<Polytope> {
        let vertices = parse_points(&self.vertices)?;
        for v in &vertices {
            v.check_dim(self.dim)?;
        }
        Polytope::from_vertices(&vertices)
    }

    pub fn to_norm(&self) -> Result<PolytopalNorm> {
        Ok(PolytopalNorm::new(self.to_polytope()?))
    }
}

/// Parses a list of coordinate-string vectors.
pub fn parse_points(points: &[Vec<String>]) -> Result<Vec<Vector>> {
    points
        .iter()
        .map(|coords| {
            if coords.is_empty() {
                return Err(Error::Parse("empty coordinate list".into()));
            }
            Ok(Vector::new(
                coords.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?,
            ))
        })
        .collect()
}

/// Points file: a bare JSON list of coordinate-string vectors.
pub fn points_from_json(text: &str) -> Result<Vec<Vector>> {
    let raw: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("points JSON: {e}")))?;
    parse_points(&raw)
}

pub fn points_to_json(points: &[Vector], fmt: NumberFormat) -> Vec<Vec<String>> {
    points.iter().map(|p| fmt.render_vector(p)).collect()
}

/// A face on the wire: sorted vertex indices plus the vertex coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceJson {
    pub vertex_indices: Vec<usize>,
    pub vertices: Vec<Vec<String>>,
}

impl FaceJson {
    pub fn new(p: &Polytope, face: &Face, fmt: NumberFormat) -> Self {
        FaceJson {
            vertex_indices: face.vertex_indices().to_vec(),
            vertices: face
                .vertex_indices()
                .iter()
                .map(|&i| fmt.render_vector(&p.vertices()[i]))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateJson {
    pub a_star: Vec<String>,
    pub b_star: Vec<String>,
}

/// Output of the `absorbing` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AbsorbingJson {
    pub absorbing: bool,
    pub certificate: Option<CertificateJson>,
    pub face_distance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SteinerAntipodalWitnessJson {
    pub face_a: FaceJson,
    pub face_b: FaceJson,
    pub distance: String,
}

/// Output of the `steiner-antipodal` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SteinerAntipodalJson {
    pub steiner_antipodal: bool,
    pub witness: Option<SteinerAntipodalWitnessJson>,
}

impl SteinerAntipodalJson {
    pub fn new(norm: &PolytopalNorm, res: &SteinerAntipodalResult, fmt: NumberFormat) -> Self {
        SteinerAntipodalJson {
            steiner_antipodal: res.steiner_antipodal,
            witness: res.witness.as_ref().map(|w| SteinerAntipodalWitnessJson {
                face_a: FaceJson::new(norm.dual_ball(), &w.face_a, fmt),
                face_b: FaceJson::new(norm.dual_ball(), &w.face_b, fmt),
                distance: fmt.render(&w.distance),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClWitnessJson {
    pub facet: Vec<String>,
    pub vertex: Vec<String>,
}

/// Output of the `cl-check` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClJson {
    pub cl_space: bool,
    pub witness: Option<ClWitnessJson>,
}

impl ClJson {
    pub fn new(norm: &PolytopalNorm, res: &ClResult, fmt: NumberFormat) -> Self {
        ClJson {
            cl_space: res.cl_space,
            witness: res.witness.as_ref().map(|w| ClWitnessJson {
                facet: fmt.render_vector(&norm.ball().facets()[w.facet_index]),
                vertex: fmt.render_vector(&norm.ball().vertices()[w.vertex_index]),
            }),
        }
    }
}

/// A Steiner tree result on the wire: level, exact length, Steiner
/// positions, and the edge list over slots (terminals first).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SteinerTreeJson {
    pub level: String,
    pub length: String,
    pub terminal_count: usize,
    pub steiner_positions: Vec<Vec<String>>,
    pub edges: Vec<(usize, usize)>,
}

impl SteinerTreeJson {
    pub fn new(res: &SteinerTreeResult, fmt: NumberFormat) -> Self {
        SteinerTreeJson {
            level: res.level.as_str().to_string(),
            length: fmt.render(&res.length),
            terminal_count: res.topology.terminal_count(),
            steiner_positions: res
                .steiner_positions
                .iter()
                .map(|p| fmt.render_vector(p))
                .collect(),
            edges: res.topology.edges().to_vec(),
        }
    }
}

/// Output of the `counterexample rhombic` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CounterexampleJson {
    pub star_length: String,
    pub found_length: String,
    pub tree: SteinerTreeJson,
}

/// Output of `verify chain`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainReportJson {
    pub k: usize,
    pub all_angles_absorbing: bool,
    pub all_pairwise_distance_two: bool,
    pub star_smt_of_leaves: bool,
    pub star_smt_with_origin: bool,
    pub steiner_antipodal: bool,
    pub implication_violations: Vec<String>,
    pub equivalence_holds: Option<bool>,
    pub ok: bool,
}

/// Output of `verify plane`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PlaneReportJson {
    pub all_angles_absorbing: bool,
    pub star_is_smt: bool,
    pub star_length: String,
    pub smt_length: String,
    pub agree: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil;

    #[test]
    fn ball_round_trip_is_identity() {
        let hex = testutil::hexagon_space();
        let json = BallJson::from_polytope(hex.ball(), true, NumberFormat::Exact);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: BallJson = serde_json::from_str(&text).unwrap();
        let rebuilt = parsed.to_polytope().unwrap();
        assert_eq!(&rebuilt, hex.ball());
    }

    #[test]
    fn fractional_coordinates_survive() {
        let ball = Polytope::from_vertices(&[
            Vector::new(vec![crate::exactgeom::rat(1, 3), crate::exactgeom::rat(0, 1)]),
            Vector::new(vec![crate::exactgeom::rat(-1, 3), crate::exactgeom::rat(0, 1)]),
            Vector::new(vec![crate::exactgeom::rat(0, 1), crate::exactgeom::rat(2, 7)]),
            Vector::new(vec![crate::exactgeom::rat(0, 1), crate::exactgeom::rat(-2, 7)]),
        ])
        .unwrap();
        let json = BallJson::from_polytope(&ball, false, NumberFormat::Exact);
        assert!(json.vertices.iter().flatten().any(|s| s == "1/3"));
        let rebuilt = json.to_polytope().unwrap();
        assert_eq!(rebuilt, ball);
    }

    #[test]
    fn user_supplied_facets_are_ignored() {
        let mut json =
            BallJson::from_polytope(testutil::l1_space(2).ball(), false, NumberFormat::Exact);
        json.facets = Some(vec![vec!["9".into(), "9".into()]]);
        let rebuilt = json.to_polytope().unwrap();
        assert_eq!(&rebuilt, testutil::l1_space(2).ball());
    }

    #[test]
    fn float_format_renders_decimals() {
        let fmt = NumberFormat::Float;
        assert_eq!(fmt.render(&crate::exactgeom::rat(1, 2)), "0.5");
        assert_eq!(fmt.render(&crate::exactgeom::rat(-3, 4)), "-0.75");
    }

    #[test]
    fn bad_points_are_rejected() {
        assert!(points_from_json("[[\"1/0\"]]").is_err());
        assert!(points_from_json("[[]]").is_err());
        assert!(points_from_json("not json").is_err());
        let pts = points_from_json("[[\"1\",\"-1/2\"]]").unwrap();
        assert_eq!(pts[0][1], crate::exactgeom::rat(-1, 2));
    }
}
