//! The marked surface of a graded (skew-)gentle algebra.
//!
//! Vertices of the quiver are arcs. An ordinary arc has two ends, a special
//! arc has one end on the boundary and one at an orbifold point. Ends sharing
//! a marked point form a fan, ordered so that consecutive ends are joined by
//! an arrow; an arrow into an arc and an arrow out of it sit at the same end
//! exactly when they compose to a nonzero path.
//!
//! Boundary components are the orbits of "follow the arc to its other end,
//! then turn to the next end of the fan" (wrapping past the last end means
//! walking along the boundary). Cutting each orbit at those boundary passages
//! gives the polygons of the dissection, one red point each.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentation::{validate, AlgebraClass, Presentation};

/// An arc end: `(vertex, slot)`. Ordinary arcs use slots 0 and 1; a special
/// arc has its marked end in slot 0 and its orbifold end in slot 1.
pub type End = (usize, u8);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub id: usize,
    pub ends: Vec<End>,
    /// `arrows[i]` joins `ends[i]` to `ends[i + 1]`.
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Corner {
    Arrow {
        arrow: usize,
        degree: i64,
    },
    /// The turn around the orbifold point of a special arc.
    Orbifold {
        arrow: usize,
    },
}

/// One traversal of an arc; `forward` runs from slot 0 to slot 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Side {
    pub arc: usize,
    pub forward: bool,
}

impl Side {
    pub fn opposite(self) -> Side {
        Side {
            arc: self.arc,
            forward: !self.forward,
        }
    }
}

/// A polygon of the dissection: its arc sides in order, with `corners[i]`
/// between `sides[i]` and `sides[i + 1]`. The red boundary segment closes it
/// from the last side back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polygon {
    pub id: usize,
    pub boundary: usize,
    pub sides: Vec<Side>,
    pub corners: Vec<Corner>,
    /// Fan whose boundary passage precedes the first side.
    pub opening_fan: usize,
    /// Fan whose boundary passage follows the last side.
    pub closing_fan: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    /// 1-based.
    pub id: usize,
    /// Fans met along the component, in order.
    pub black_points: Vec<usize>,
    /// Polygons whose red point lies on the component, in order.
    pub red_points: Vec<usize>,
    pub winding: i64,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub arc_names: Vec<String>,
    pub fans: Vec<Fan>,
    pub polygons: Vec<Polygon>,
    pub boundaries: Vec<BoundaryComponent>,
    pub genus: usize,
    pub orbifold_count: usize,
    pub euler_characteristic: i64,
    pub black_count: usize,
    pub red_count: usize,
}

impl SurfaceModel {
    pub fn m_values(&self) -> Vec<i64> {
        self.boundaries.iter().map(|b| b.m).collect()
    }

    pub fn windings(&self) -> Vec<i64> {
        self.boundaries.iter().map(|b| b.winding).collect()
    }

    pub fn side_name(&self, s: Side) -> String {
        format!(
            "{}{}",
            self.arc_names[s.arc],
            if s.forward { "+" } else { "-" }
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "orbifolds": self.orbifold_count,
            "euler_characteristic": self.euler_characteristic,
            "black_points": self.black_count,
            "red_points": self.red_count,
            "boundaries": self.boundaries.iter().map(|b| json!({
                "id": b.id,
                "black_points": b.black_points.len(),
                "red_points": b.red_points.len(),
                "winding": b.winding,
                "m": b.m,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Splits the arrows at each ordinary vertex over its two ends.
/// Returns `(slot at source, slot at target)` per arrow.
fn assign_ends(p: &Presentation) -> Result<(Vec<u8>, Vec<u8>)> {
    let na = p.arrows().len();
    let mut out_slot = vec![0u8; na];
    let mut in_slot = vec![0u8; na];
    for v in 0..p.vertices().len() {
        let ins = p.ordinary_in(v);
        let outs = p.ordinary_out(v);
        if p.special_at(v).is_some() {
            continue;
        }
        // nodes: ins first, then outs; constraint (x, y, same)
        let k = ins.len() + outs.len();
        let mut cons = Vec::new();
        if ins.len() == 2 {
            cons.push((0, 1, false));
        }
        if outs.len() == 2 {
            cons.push((ins.len(), ins.len() + 1, false));
        }
        for (i, &a) in ins.iter().enumerate() {
            for (j, &b) in outs.iter().enumerate() {
                cons.push((i, ins.len() + j, !p.is_relation(a, b)));
            }
        }
        let mut slot: Vec<Option<u8>> = vec![None; k];
        if k > 0 {
            slot[0] = Some(0);
        }
        // propagate until stable; components without a seed get slot 0
        loop {
            let mut changed = false;
            for &(x, y, same) in &cons {
                let flip = |s: u8| if same { s } else { 1 - s };
                match (slot[x], slot[y]) {
                    (Some(s), None) => {
                        slot[y] = Some(flip(s));
                        changed = true;
                    }
                    (None, Some(s)) => {
                        slot[x] = Some(flip(s));
                        changed = true;
                    }
                    (Some(s), Some(t)) if flip(s) != t => {
                        return Err(Error::InternalInconsistency(format!(
                            "arrows at vertex {} do not split over two ends",
                            p.vertices()[v]
                        )));
                    }
                    _ => {}
                }
            }
            if !changed {
                match slot.iter().position(|s| s.is_none()) {
                    Some(i) => slot[i] = Some(0),
                    None => break,
                }
            }
        }
        for (i, &a) in ins.iter().enumerate() {
            in_slot[a] = slot[i].unwrap();
        }
        for (j, &b) in outs.iter().enumerate() {
            out_slot[b] = slot[ins.len() + j].unwrap();
        }
    }
    Ok((out_slot, in_slot))
}

fn assemble_fans(p: &Presentation) -> Result<Vec<Fan>> {
    let (out_slot, in_slot) = assign_ends(p)?;
    let n = p.vertices().len();
    let mut next: HashMap<End, (usize, End)> = HashMap::new();
    let mut has_prev: HashMap<End, bool> = HashMap::new();
    for a in p.ordinary_arrows() {
        let from = (p.src(a), out_slot[a]);
        let to = (p.tgt(a), in_slot[a]);
        if next.insert(from, (a, to)).is_some() || has_prev.insert(to, true).is_some() {
            return Err(Error::InternalInconsistency(format!(
                "two arrows share an end at arrow {}",
                p.arrows()[a].id
            )));
        }
    }
    let mut fans = Vec::new();
    let mut placed = 0;
    for v in 0..n {
        let slots: &[u8] = if p.special_at(v).is_some() {
            &[0]
        } else {
            &[0, 1]
        };
        for &s in slots {
            let start = (v, s);
            if has_prev.contains_key(&start) {
                continue;
            }
            let mut fan = Fan {
                id: fans.len(),
                ends: vec![start],
                arrows: Vec::new(),
            };
            let mut cur = start;
            while let Some(&(a, to)) = next.get(&cur) {
                fan.arrows.push(a);
                fan.ends.push(to);
                cur = to;
            }
            placed += fan.ends.len();
            fans.push(fan);
        }
    }
    let marked_ends = 2 * n - p.orbifold_count();
    if placed != marked_ends {
        return Err(Error::InternalInconsistency(
            "fans close up into a cycle".into(),
        ));
    }
    Ok(fans)
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Corner(Corner),
    Gap(usize),
}

pub fn build_surface(p: &Presentation) -> Result<SurfaceModel> {
    let report = validate(p);
    if !report.is_admissible()
        || report.algebra_class == AlgebraClass::Invalid
        || !report.smooth_proper
        || !report.connected
    {
        return Err(Error::InvalidInput(
            "surface model needs a connected, smooth-proper (skew-)gentle presentation".into(),
        ));
    }
    let n = p.vertices().len();
    let fans = assemble_fans(p)?;
    let mut place: HashMap<End, (usize, usize)> = HashMap::new();
    for f in &fans {
        for (i, e) in f.ends.iter().enumerate() {
            place.insert(*e, (f.id, i));
        }
    }
    let is_special = |v: usize| p.special_at(v).is_some();

    // departure ends, in a fixed order
    let all_ends: Vec<End> = (0..n).flat_map(|v| [(v, 0u8), (v, 1u8)]).collect();
    let mut done: HashMap<End, bool> = HashMap::new();
    let mut faces: Vec<Vec<(Side, Step)>> = Vec::new();
    for &start in &all_ends {
        if done.contains_key(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut h = start;
        while done.insert(h, true).is_none() {
            let (v, s) = h;
            let side = Side {
                arc: v,
                forward: s == 0,
            };
            let t = (v, 1 - s);
            let (step, next) = if is_special(v) && t.1 == 1 {
                let arrow = p.special_at(v).unwrap();
                (Step::Corner(Corner::Orbifold { arrow }), t)
            } else {
                let (fid, i) = place[&t];
                let fan = &fans[fid];
                if i + 1 < fan.ends.len() {
                    let a = fan.arrows[i];
                    (
                        Step::Corner(Corner::Arrow {
                            arrow: a,
                            degree: p.degree(a),
                        }),
                        fan.ends[i + 1],
                    )
                } else {
                    (Step::Gap(fid), fan.ends[0])
                }
            };
            face.push((side, step));
            h = next;
        }
        faces.push(face);
    }

    let mut polygons = Vec::new();
    let mut boundaries = Vec::new();
    for (k, face) in faces.iter().enumerate() {
        let id = k + 1;
        let Some(last_gap) = face.iter().rposition(|(_, s)| matches!(s, Step::Gap(_))) else {
            return Err(Error::InternalInconsistency(format!(
                "boundary component {id} carries no marked point"
            )));
        };
        let mut rotated = face[last_gap + 1..].to_vec();
        rotated.extend_from_slice(&face[..=last_gap]);
        let Step::Gap(mut opening) = face[last_gap].1 else {
            unreachable!()
        };
        let mut comp = BoundaryComponent {
            id,
            black_points: Vec::new(),
            red_points: Vec::new(),
            winding: 0,
            m: 0,
        };
        let mut sides = Vec::new();
        let mut corners = Vec::new();
        for (side, step) in rotated {
            sides.push(side);
            match step {
                Step::Corner(c) => corners.push(c),
                Step::Gap(fid) => {
                    comp.red_points.push(polygons.len());
                    comp.black_points.push(fid);
                    polygons.push(Polygon {
                        id: polygons.len(),
                        boundary: id,
                        sides: std::mem::take(&mut sides),
                        corners: std::mem::take(&mut corners),
                        opening_fan: opening,
                        closing_fan: fid,
                    });
                    opening = fid;
                }
            }
        }
        boundaries.push(comp);
    }

    let black_count = fans.len();
    let red_count = polygons.len();
    let orbifold_count = p.orbifold_count();
    let euler = red_count as i64 + orbifold_count as i64 - n as i64;
    let b = boundaries.len() as i64;
    let twice_genus = 2 - b - euler;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::InternalInconsistency(format!(
            "Euler characteristic {euler} with {b} boundary components gives no genus"
        )));
    }
    let mut model = SurfaceModel {
        arc_names: p.vertices().to_vec(),
        fans,
        polygons,
        boundaries,
        genus: (twice_genus / 2) as usize,
        orbifold_count,
        euler_characteristic: euler,
        black_count,
        red_count,
    };
    let w = boundary_windings(p, &model)?;
    for (c, w) in model.boundaries.iter_mut().zip(w) {
        c.winding = w;
        c.m = w + 2;
    }
    Ok(model)
}

fn fan_weight(p: &Presentation, fan: &Fan) -> i64 {
    1 - fan.arrows.iter().map(|&a| p.degree(a)).sum::<i64>()
}

fn corner_weight(p: &Presentation, c: &Corner) -> i64 {
    match *c {
        Corner::Arrow { arrow, .. } => p.degree(arrow) - 1,
        Corner::Orbifold { .. } => 0,
    }
}

/// Winding number of each boundary component, in id order.
///
/// Each boundary passage at a fan contributes `1 - (sum of the fan's arrow
/// degrees)`, each arrow corner turned along the way `degree - 1`, and the
/// turn at an orbifold point nothing. The sum over all components is checked
/// against `4 - 4g - 2b - #O`.
pub fn boundary_windings(p: &Presentation, model: &SurfaceModel) -> Result<Vec<i64>> {
    if model.arc_names.as_slice() != p.vertices() {
        return Err(Error::InvalidInput(
            "surface model was built from a different presentation".into(),
        ));
    }
    let mut out = vec![0i64; model.boundaries.len()];
    for poly in &model.polygons {
        let w: i64 = fan_weight(p, &model.fans[poly.closing_fan])
            + poly
                .corners
                .iter()
                .map(|c| corner_weight(p, c))
                .sum::<i64>();
        out[poly.boundary - 1] += w;
    }
    let g = model.genus as i64;
    let b = model.boundaries.len() as i64;
    let expected = 4 - 4 * g - 2 * b - model.orbifold_count as i64;
    let total: i64 = out.iter().sum();
    if total != expected {
        return Err(Error::InternalInconsistency(format!(
            "boundary windings sum to {total}, expected {expected}"
        )));
    }
    Ok(out)
}

/// `2 - sum of m over J`: the winding of the simple closed curve cutting off
/// the boundary components in `J` (1-based ids). An orbifold point is taken
/// to lie outside `J`.
pub fn scc_winding_genus0(model: &SurfaceModel, subset: &[usize]) -> Result<i64> {
    if model.genus != 0 {
        return Err(Error::GenusError(model.genus));
    }
    let mut total = 0;
    let mut seen = vec![false; model.boundaries.len()];
    for &j in subset {
        if j == 0 || j > model.boundaries.len() {
            return Err(Error::UnknownBoundary(j));
        }
        if !std::mem::replace(&mut seen[j - 1], true) {
            total += model.boundaries[j - 1].m;
        }
    }
    Ok(2 - total)
}

fn parse_crossing(model: &SurfaceModel, token: &str) -> Result<Vec<Side>> {
    let arc = |name: &str| model.arc_names.iter().position(|a| a == name);
    if let Some(v) = arc(token) {
        return Ok(vec![
            Side {
                arc: v,
                forward: true,
            },
            Side {
                arc: v,
                forward: false,
            },
        ]);
    }
    for (suffix, forward) in [('+', true), ('-', false)] {
        if let Some(v) = token.strip_suffix(suffix).and_then(arc) {
            return Ok(vec![Side { arc: v, forward }]);
        }
    }
    Err(Error::InvalidCurve(format!("unknown arc '{token}'")))
}

/// Signed contribution of the segment entering `poly` through side index
/// `a` and leaving through side index `b`.
fn segment(poly: &Polygon, a: usize, b: usize) -> i64 {
    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let turned: i64 = poly.corners[lo..hi]
        .iter()
        .map(|c| match *c {
            Corner::Arrow { degree, .. } => degree - 1,
            Corner::Orbifold { .. } => 0,
        })
        .sum();
    sign * (1 + turned)
}

/// Winding number of a closed curve given by its cyclic sequence of arc
/// crossings.
///
/// Each crossing names the side through which the curve leaves the current
/// polygon: `v+` for the traversal of arc `v` from its first end, `v-` for
/// the other one. A bare `v` lets the side be chosen so that consecutive
/// crossings share a polygon. Inside a polygon the curve separates a run of
/// corners from the red boundary segment and contributes
/// `±(1 + sum over those arrow corners of (degree - 1))`, positive when it
/// runs along the polygon's side order.
pub fn winding_of_curve(model: &SurfaceModel, curve: &[String]) -> Result<i64> {
    if curve.is_empty() {
        return Err(Error::InvalidCurve(
            "a curve needs at least one crossing".into(),
        ));
    }
    let mut location: HashMap<Side, (usize, usize)> = HashMap::new();
    for poly in &model.polygons {
        for (i, s) in poly.sides.iter().enumerate() {
            location.insert(*s, (poly.id, i));
        }
    }
    let options: Vec<Vec<Side>> = curve
        .iter()
        .map(|t| parse_crossing(model, t))
        .collect::<Result<_>>()?;
    // the segment after crossing `x` and before crossing `y`
    let seg = |x: Side, y: Side| -> Option<i64> {
        let (pa, a) = location[&x.opposite()];
        let (pb, b) = location[&y];
        (pa == pb && a != b).then(|| segment(&model.polygons[pa], a, b))
    };
    let k = options.len();
    let mut choice = vec![0usize; k];
    let mut i = 0usize;
    // backtracking over the bare crossings
    loop {
        let pick = |j: usize| options[j][choice[j]];
        let ok = (i == 0 || seg(pick(i - 1), pick(i)).is_some())
            && (i + 1 < k || seg(pick(k - 1), pick(0)).is_some());
        if ok {
            if i + 1 == k {
                break;
            }
            i += 1;
            choice[i] = 0;
            continue;
        }
        loop {
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            if i == 0 {
                return Err(Error::InvalidCurve(
                    "consecutive crossings share no polygon".into(),
                ));
            }
            i -= 1;
        }
    }
    let sides: Vec<Side> = (0..k).map(|i| options[i][choice[i]]).collect();
    Ok((0..k)
        .map(|i| seg(sides[i], sides[(i + 1) % k]).unwrap())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{fixture, parse, FixtureParams};

    fn model(name: &str, params: FixtureParams) -> (Presentation, SurfaceModel) {
        let p = fixture(name, &params).unwrap();
        let m = build_surface(&p).unwrap();
        (p, m)
    }

    fn sorted(mut v: Vec<i64>) -> Vec<i64> {
        v.sort();
        v
    }

    fn curve(tokens: &str) -> Vec<String> {
        tokens.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn a2_is_a_disk() {
        let (_, m) = model("A_n", FixtureParams::n(2));
        assert_eq!((m.genus, m.boundaries.len()), (0, 1));
        assert_eq!(
            (m.black_count, m.red_count, m.euler_characteristic),
            (3, 3, 1)
        );
        assert_eq!(m.windings(), vec![2]);
    }

    #[test]
    fn e1_windings() {
        let (_, m) = model("E1", FixtureParams::default());
        assert_eq!((m.genus, m.boundaries.len()), (0, 3));
        assert_eq!(sorted(m.windings()), vec![-4, 1, 1]);
    }

    #[test]
    fn e1_figure_eight() {
        let (p, m) = model("E1", FixtureParams::default());
        // alpha, then delta and theta, then gamma, then beta and theta backwards
        assert_eq!(winding_of_curve(&m, &curve("1+ 2+ 4- 3-")).unwrap(), 0);
        assert_eq!(winding_of_curve(&m, &curve("1 2 4 3")).unwrap(), 0);
        assert_eq!(winding_of_curve(&m, &curve("1+ 2+")).unwrap().abs(), 1);
        let deg = |a: &str| p.degree(p.arrow_index(a).unwrap());
        let by_hand = (1 - deg("beta") - deg("theta"))
            + (-deg("gamma"))
            + (deg("delta") + deg("theta") - 1)
            + deg("alpha");
        assert_eq!(by_hand, 0);
    }

    #[test]
    fn kronecker_annulus() {
        let doc = r#"{"vertices":["1","2"],"arrows":[
            {"id":"a","source":"1","target":"2","degree":3},
            {"id":"b","source":"1","target":"2","degree":-1}]}"#;
        let p = parse(doc).unwrap();
        let m = build_surface(&p).unwrap();
        assert_eq!((m.genus, m.boundaries.len()), (0, 2));
        assert_eq!(sorted(m.windings()), vec![-4, 4]);
        // core curve: the two-path law |a| - |b|
        let w = winding_of_curve(&m, &curve("1 2")).unwrap();
        assert_eq!(w.abs(), 4);
    }

    #[test]
    fn lambda_sweep_small() {
        for (r, n, mm) in [(1, 2, 0), (2, 5, 3), (1, 4, 1)] {
            let (_, m) = model("Lambda", FixtureParams::lambda(r, n, mm));
            assert_eq!((m.genus, m.boundaries.len()), (0, 2));
            let mut counts: Vec<usize> =
                m.boundaries.iter().map(|b| b.black_points.len()).collect();
            counts.sort();
            let mut want = vec![mm + r, n - r];
            want.sort();
            assert_eq!(counts, want, "Lambda({r},{n},{mm})");
            assert_eq!(sorted(m.windings()), vec![-(r as i64), r as i64]);
        }
    }

    #[test]
    fn torus_has_genus_one() {
        let (_, m) = model("Torus", FixtureParams::default());
        assert_eq!((m.genus, m.boundaries.len()), (1, 1));
        assert_eq!(m.m_values(), vec![0]);
    }

    #[test]
    fn orbifold_loop_has_winding_one() {
        let (_, m) = model("S2", FixtureParams::n(2));
        assert_eq!((m.genus, m.boundaries.len(), m.orbifold_count), (0, 1, 2));
        assert_eq!(m.windings(), vec![0]);
        assert_eq!(winding_of_curve(&m, &curve("1+")).unwrap().abs(), 1);
    }

    #[test]
    fn scc_windings() {
        let (_, m) = model("E1", FixtureParams::default());
        let big = m.boundaries.iter().find(|b| b.winding == -4).unwrap().id;
        let small: Vec<usize> = m
            .boundaries
            .iter()
            .filter(|b| b.id != big)
            .map(|b| b.id)
            .collect();
        assert_eq!(scc_winding_genus0(&m, &small[..1]).unwrap(), -1);
        assert_eq!(scc_winding_genus0(&m, &small).unwrap(), -4);
        assert_eq!(scc_winding_genus0(&m, &[]).unwrap(), 2);
        assert!(matches!(
            scc_winding_genus0(&m, &[4]),
            Err(Error::UnknownBoundary(4))
        ));
        let (_, t) = model("Torus", FixtureParams::default());
        assert!(matches!(
            scc_winding_genus0(&t, &[1]),
            Err(Error::GenusError(1))
        ));
    }

    #[test]
    fn bad_curves() {
        let (_, m) = model("E1", FixtureParams::default());
        assert!(matches!(
            winding_of_curve(&m, &curve("1 4")),
            Err(Error::InvalidCurve(_))
        ));
        assert!(matches!(
            winding_of_curve(&m, &curve("9")),
            Err(Error::InvalidCurve(_))
        ));
        assert!(matches!(
            winding_of_curve(&m, &[]),
            Err(Error::InvalidCurve(_))
        ));
    }

    #[test]
    fn rejects_non_smooth() {
        let p = fixture("E2", &FixtureParams::default()).unwrap();
        assert!(matches!(build_surface(&p), Err(Error::InvalidInput(_))));
    }
}
