use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::ClosureCertificate;
use super::criterion::{certify_k, plan_machinery};
use super::{Bounds, TransitivityError};
use crate::automorphisms::{act_point, AutWord, ElementaryAut, Letter, Point, PointJson};
use crate::exactpoly::{hermite_interpolate, rat, HermiteConstraint, Rat, UniPoly};
use crate::lattice::{span_index, GeneratorSpec, SpanIndex};

/// Move `from_point` to `to_point` while fixing `fixed_points`, using
/// shears `(x + α y^t, y)` and maps `(x, y + S(x))` with `x^s | S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawRequest", into = "RawRequest")]
pub struct WitnessRequest {
    pub fixed_points: Vec<Point>,
    pub from_point: Point,
    pub to_point: Point,
    pub t: u32,
    pub s: u32,
}

#[derive(Serialize, Deserialize)]
struct RawRequest {
    #[serde(default)]
    fixed: Vec<PointJson>,
    from: PointJson,
    to: PointJson,
    #[serde(default = "one")]
    t: u32,
    #[serde(default = "one")]
    s: u32,
}

fn one() -> u32 {
    1
}

impl From<RawRequest> for WitnessRequest {
    fn from(r: RawRequest) -> Self {
        WitnessRequest {
            fixed_points: r.fixed.into_iter().map(Point::from).collect(),
            from_point: r.from.into(),
            to_point: r.to.into(),
            t: r.t,
            s: r.s,
        }
    }
}

impl From<WitnessRequest> for RawRequest {
    fn from(r: WitnessRequest) -> Self {
        RawRequest {
            fixed: r.fixed_points.iter().map(PointJson::from).collect(),
            from: (&r.from_point).into(),
            to: (&r.to_point).into(),
            t: r.t,
            s: r.s,
        }
    }
}

impl WitnessRequest {
    pub fn new(fixed_points: Vec<Point>, from_point: Point, to_point: Point, t: u32, s: u32) -> Self {
        WitnessRequest {
            fixed_points,
            from_point,
            to_point,
            t,
            s,
        }
    }
}

/// Candidates tried for each scalar before reporting a step failure; every
/// choice excludes only finitely many values.
const SCALAR_SEARCH_LIMIT: i64 = 100_000;

fn pow(r: &Rat, e: u32) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * r)
}

fn is_origin(p: &Point) -> bool {
    p.0.is_zero() && p.1.is_zero()
}

fn push_shear(word: &mut Vec<Letter>, aut: ElementaryAut) {
    let trivial = match &aut {
        ElementaryAut::Hshear { alpha, .. } => alpha.is_zero(),
        ElementaryAut::Kshear { beta, .. } => beta.is_zero(),
        ElementaryAut::HPoly(p) | ElementaryAut::KPoly(p) => p.is_zero(),
    };
    if !trivial {
        word.push(Letter::new(aut));
    }
}

fn first_scalar(start: i64, step: u8, ok: impl Fn(&Rat) -> bool) -> Result<Rat, TransitivityError> {
    (start..=SCALAR_SEARCH_LIMIT)
        .map(rat)
        .find(|a| ok(a))
        .ok_or(TransitivityError::StepFailure { step })
}

/// Whether some shear `(x + α y^t, y)` separates `p` and `q` in `x`.
fn separable(p: &Point, q: &Point, t: u32) -> bool {
    p.0 != q.0 || pow(&p.1, t) != pow(&q.1, t)
}

/// A word `g` in `H_t` and `K_s` letters such that `x(g.p) ≠ 0` for every
/// `p` in `nonzero` and `x(g.p) ≠ x(g.q)` for every listed pair.
///
/// A single shear `(x + α y^t, y)` suffices unless a pair shares `x` and
/// `y^t` (possible for even `t`, with `y(q) = -y(p)`); such pairs are first
/// moved off the axis `x = 0` by a shear and then apart in `y` by
/// `(x, y + γ x^s)`.
fn separating_word(
    points: &[Point],
    nonzero: &[usize],
    pairs: &[(usize, usize)],
    t: u32,
    s: u32,
    step: u8,
) -> Result<AutWord, TransitivityError> {
    let mut letters = Vec::new();
    let mut pts = points.to_vec();
    if pairs.iter().any(|&(i, j)| !separable(&pts[i], &pts[j], t)) {
        let alpha0 = first_scalar(0, step, |a| pts.iter().all(|p| !(&p.0 + a * pow(&p.1, t)).is_zero()))?;
        let h = ElementaryAut::Hshear { a: t, alpha: alpha0 };
        pts = pts.iter().map(|p| h.act(p)).collect();
        let gamma = first_scalar(1, step, |g| {
            let k = ElementaryAut::Kshear { b: s, beta: g.clone() };
            pairs
                .iter()
                .all(|&(i, j)| separable(&k.act(&pts[i]), &k.act(&pts[j]), t))
        })?;
        let k = ElementaryAut::Kshear { b: s, beta: gamma };
        pts = pts.iter().map(|p| k.act(p)).collect();
        push_shear(&mut letters, k);
        push_shear(&mut letters, h);
    }
    let x_after = |p: &Point, a: &Rat| &p.0 + a * pow(&p.1, t);
    let alpha = first_scalar(0, step, |a| {
        nonzero.iter().all(|&i| !x_after(&pts[i], a).is_zero())
            && pairs.iter().all(|&(i, j)| x_after(&pts[i], a) != x_after(&pts[j], a))
    })?;
    let mut word = Vec::new();
    push_shear(&mut word, ElementaryAut::Hshear { a: t, alpha });
    word.extend(letters);
    Ok(AutWord { letters: word })
}

/// `S` with `x^s | S` and `S(node) = value` at the given distinct nonzero
/// nodes.
fn interpolate_divisible(s: u32, nodes: &[(Rat, Rat)], step: u8) -> Result<UniPoly, TransitivityError> {
    let mut constraints: Vec<HermiteConstraint> = (0..s)
        .map(|k| HermiteConstraint::new(Rat::zero(), k, Rat::zero()))
        .collect();
    constraints.extend(
        nodes
            .iter()
            .map(|(x, v)| HermiteConstraint::new(x.clone(), 0, v.clone())),
    );
    hermite_interpolate(&constraints).map_err(|_| TransitivityError::StepFailure { step })
}

fn validate(req: &WitnessRequest) -> Result<(), TransitivityError> {
    if req.t == 0 || req.s == 0 {
        return Err(TransitivityError::BadDegrees(format!(
            "t and s must be positive, got t = {}, s = {}",
            req.t, req.s
        )));
    }
    let all: Vec<&Point> = req
        .fixed_points
        .iter()
        .chain([&req.from_point, &req.to_point])
        .collect();
    if all.iter().any(|p| is_origin(p)) {
        return Err(TransitivityError::DegenerateInput(
            "the origin is not allowed".to_string(),
        ));
    }
    let fixed: BTreeSet<&Point> = req.fixed_points.iter().collect();
    if fixed.len() != req.fixed_points.len() {
        return Err(TransitivityError::DegenerateInput("fixed points repeat".to_string()));
    }
    if fixed.contains(&req.from_point) || fixed.contains(&req.to_point) {
        return Err(TransitivityError::DegenerateInput(
            "a fixed point coincides with the moved point or its image".to_string(),
        ));
    }
    Ok(())
}

/// A word fixing every `fixed_points` entry and sending `from_point` to
/// `to_point`, assembled as `g3⁻¹ g4⁻¹ g5 g4 g3 g1⁻¹ g2 g1`.
///
/// - `g1` makes `x(g1.P)` nonzero and different from every `x(g1.P_i)`.
/// - `g2 = (x, y + R(x))` with `x^s | R`, `R(x(g1.P_i)) = 0` and
///   `R(x(g1.P)) = y(g1.Q) - y(g1.P)`; set `P0 = g1⁻¹ g2 g1.P`.
/// - `g3` makes the `x`-coordinates of `P_i`, `P0`, `Q` distinct and nonzero.
/// - `g4 = (x, y + S(x))` with `x^s | S`, moving every `g3.P_i` to `y = 0`
///   and both `g3.P0`, `g3.Q` to `y = 1`.
/// - `g5 = (x + β y^t, y)` with `β = x(g4 g3.Q) - x(g4 g3.P0)`, which fixes
///   the line `y = 0`.
///
/// All scalars are the least admissible nonnegative integers.
pub fn build_witness(req: &WitnessRequest) -> Result<AutWord, TransitivityError> {
    validate(req)?;
    let (t, s) = (req.t, req.s);
    let (p, q) = (&req.from_point, &req.to_point);
    if p == q {
        return Ok(AutWord::identity());
    }
    let m = req.fixed_points.len();

    let mut pts = req.fixed_points.clone();
    pts.push(p.clone());
    let pairs: Vec<(usize, usize)> = (0..m).map(|i| (i, m)).collect();
    let g1 = separating_word(&pts, &[m], &pairs, t, s, 1)?;
    let g1p = act_point(&g1, p);
    let g1q = act_point(&g1, q);
    let mut nodes: BTreeMap<Rat, Rat> = BTreeMap::new();
    for pi in &req.fixed_points {
        let x = act_point(&g1, pi).0;
        if !x.is_zero() {
            nodes.insert(x, Rat::zero());
        }
    }
    nodes.insert(g1p.0.clone(), &g1q.1 - &g1p.1);
    let r = interpolate_divisible(s, &nodes.into_iter().collect::<Vec<_>>(), 2)?;
    let mut g2 = Vec::new();
    push_shear(&mut g2, ElementaryAut::KPoly(r));
    let conj = g1.inverse().then_after(&AutWord { letters: g2 }).then_after(&g1);
    let p0 = act_point(&conj, p);

    let word = if p0 == *q {
        conj
    } else {
        let mut pts = req.fixed_points.clone();
        pts.push(p0.clone());
        pts.push(q.clone());
        let all: Vec<usize> = (0..m + 2).collect();
        let pairs: Vec<(usize, usize)> = (0..m + 2).flat_map(|i| (i + 1..m + 2).map(move |j| (i, j))).collect();
        let g3 = separating_word(&pts, &all, &pairs, t, s, 3)?;
        let moved: Vec<Point> = pts.iter().map(|pt| act_point(&g3, pt)).collect();
        let mut nodes: Vec<(Rat, Rat)> = moved[..m].iter().map(|(x, y)| (x.clone(), -y)).collect();
        for (x, y) in &moved[m..] {
            nodes.push((x.clone(), Rat::one() - y));
        }
        let sp = interpolate_divisible(s, &nodes, 3)?;
        let g4 = AutWord::single(ElementaryAut::KPoly(sp));
        let inner = g4.then_after(&g3);
        let p0b = act_point(&inner, &p0);
        let qb = act_point(&inner, q);
        if p0b.1.is_zero() || p0b.1 != qb.1 {
            return Err(TransitivityError::StepFailure { step: 4 });
        }
        let beta = (&qb.0 - &p0b.0) / pow(&p0b.1, t);
        let mut g5 = Vec::new();
        push_shear(&mut g5, ElementaryAut::Hshear { a: t, alpha: beta });
        inner
            .inverse()
            .then_after(&AutWord { letters: g5 })
            .then_after(&inner)
            .then_after(&conj)
    };
    let fixes = req.fixed_points.iter().all(|pi| act_point(&word, pi) == *pi);
    if !fixes || act_point(&word, p) != *q {
        return Err(TransitivityError::StepFailure { step: 5 });
    }
    Ok(word)
}

/// Degrees of all monomials added by K-letters of `w`.
pub fn k_letter_degrees(w: &AutWord) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for l in &w.letters {
        if l.aut.is_k_type() {
            let shift = l.aut.shift();
            for (k, c) in shift.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.insert(k as u64);
                }
            }
        }
    }
    out
}

/// A witness word over a generator family, with a closure certificate for
/// each `K_n` whose monomials it uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecWitness {
    pub word: AutWord,
    pub t: u32,
    pub s: u32,
    pub certificates: BTreeMap<u64, ClosureCertificate>,
}

pub fn witness_in_spec(spec: &GeneratorSpec, req: &WitnessRequest) -> Result<SpecWitness, TransitivityError> {
    witness_in_spec_with(spec, req, &Bounds::default())
}

/// Runs [`build_witness`] with `t` the least H-degree of the family and `s`
/// the threshold above which every `K_n` is certified; the request's own `t`
/// and `s` are ignored.
pub fn witness_in_spec_with(
    spec: &GeneratorSpec,
    req: &WitnessRequest,
    bounds: &Bounds,
) -> Result<SpecWitness, TransitivityError> {
    if span_index(spec) != SpanIndex::Index(1) {
        return Err(TransitivityError::CriterionFails(format!(
            "the roots of {spec} do not span the lattice"
        )));
    }
    let plan = plan_machinery(spec, bounds)?;
    let s = u32::try_from(plan.threshold)
        .map_err(|_| TransitivityError::UnsupportedSpec("threshold too large".to_string()))?;
    let req = WitnessRequest {
        t: plan.h_degree,
        s,
        ..req.clone()
    };
    let word = build_witness(&req)?;
    let certificates = k_letter_degrees(&word)
        .into_iter()
        .map(|n| certify_k(spec, plan.route, n, bounds).map(|c| (n, c)))
        .collect::<Result<_, _>>()?;
    Ok(SpecWitness {
        word,
        t: plan.h_degree,
        s,
        certificates,
    })
}
