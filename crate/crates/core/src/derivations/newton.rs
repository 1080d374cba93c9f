use serde::{Deserialize, Serialize};

use super::{homog_decompose, Derivation, DerivationError};
use crate::grading::MVec;

/// Convex hull of the support `S(d)` of a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    /// Ascending.
    pub support: Vec<MVec>,
    /// Counterclockwise, starting from the smallest vertex. A segment has two
    /// vertices and a point one.
    pub hull_vertices: Vec<MVec>,
    pub edges: Vec<(MVec, MVec)>,
}

fn cross(o: MVec, a: MVec, b: MVec) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Andrew's monotone chain on sorted distinct points; collinear points are
/// dropped from the hull.
fn convex_hull(points: &[MVec]) -> Vec<MVec> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    let mut lower: Vec<MVec> = Vec::new();
    for &p in points {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<MVec> = Vec::new();
    for &p in points.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl NewtonPolygon {
    /// Faces: every vertex, then every edge, each listed with the support
    /// points lying on it.
    pub fn faces(&self) -> Vec<Vec<MVec>> {
        let mut out: Vec<Vec<MVec>> = self.hull_vertices.iter().map(|v| vec![*v]).collect();
        for &(a, b) in &self.edges {
            out.push(
                self.support
                    .iter()
                    .copied()
                    .filter(|&p| {
                        cross(a, b, p) == 0 && (p.0 - a.0) * (p.0 - b.0) <= 0 && (p.1 - a.1) * (p.1 - b.1) <= 0
                    })
                    .collect(),
            );
        }
        out
    }
}

pub fn newton_polygon(d: &Derivation) -> Result<NewtonPolygon, DerivationError> {
    let support: Vec<MVec> = homog_decompose(d).into_iter().map(|(e, _)| e).collect();
    if support.is_empty() {
        return Err(DerivationError::ZeroDerivation);
    }
    let hull_vertices = convex_hull(&support);
    let edges = match hull_vertices.len() {
        1 => Vec::new(),
        2 => vec![(hull_vertices[0], hull_vertices[1])],
        n => (0..n).map(|i| (hull_vertices[i], hull_vertices[(i + 1) % n])).collect(),
    };
    Ok(NewtonPolygon {
        support,
        hull_vertices,
        edges,
    })
}

/// `d_τ`: the sum of the homogeneous pieces of `d` whose degrees lie in `face`.
pub fn face_sum(d: &Derivation, face: &[MVec]) -> Derivation {
    homog_decompose(d)
        .into_iter()
        .filter(|(e, _)| face.contains(e))
        .fold(Derivation::zero(), |acc, (_, p)| &acc + &p)
}
