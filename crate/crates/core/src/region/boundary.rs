//! Boundary decomposition of bounded regions into arcs and segments.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Circle, ComplexPoint, Curve, Region, RegionAtom, DEGENERACY_TOL};
use crate::error::{Error, Result};

/// Membership slack used when deciding whether a piece of a curve lies on ∂R.
const PIECE_TOL: f64 = 1e-10;

/// One arc or segment of a region boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryPiece {
    /// Arc of `circle` for angles in `[angle_start, angle_end]`.
    /// `orientation` is +1 when the region lies inside the circle, −1 outside.
    Arc {
        center: ComplexPoint,
        radius: f64,
        angle_start: f64,
        angle_end: f64,
        orientation: i8,
    },
    Segment {
        p0: ComplexPoint,
        p1: ComplexPoint,
    },
}

impl BoundaryPiece {
    pub fn length(&self) -> f64 {
        match *self {
            BoundaryPiece::Arc { radius, angle_start, angle_end, .. } => radius * (angle_end - angle_start),
            BoundaryPiece::Segment { p0, p1 } => (p1 - p0).norm(),
        }
    }

    /// Point at parameter `t ∈ [0, 1]`, uniform in arc length.
    pub fn point_at(&self, t: f64) -> ComplexPoint {
        match *self {
            BoundaryPiece::Arc { center, radius, angle_start, angle_end, .. } => {
                center + Complex64::from_polar(radius, angle_start + t * (angle_end - angle_start))
            }
            BoundaryPiece::Segment { p0, p1 } => p0 + (p1 - p0) * t,
        }
    }

    pub fn start(&self) -> ComplexPoint {
        self.point_at(0.0)
    }

    pub fn end(&self) -> ComplexPoint {
        self.point_at(1.0)
    }

    pub fn is_closed_loop(&self) -> bool {
        matches!(*self, BoundaryPiece::Arc { angle_start, angle_end, .. } if angle_end - angle_start >= TAU - 1e-15)
    }

    /// Nearest point of the piece to `z`.
    pub fn project(&self, z: ComplexPoint) -> ComplexPoint {
        match *self {
            BoundaryPiece::Arc { center, radius, angle_start, angle_end, .. } => {
                let d = z - center;
                if d.norm() == 0.0 {
                    return self.start();
                }
                let angle = d.im.atan2(d.re);
                if let Some(a) = angle_in_range(angle, angle_start, angle_end) {
                    return center + Complex64::from_polar(radius, a);
                }
                let (s, e) = (self.start(), self.end());
                if (z - s).norm() <= (z - e).norm() {
                    s
                } else {
                    e
                }
            }
            BoundaryPiece::Segment { p0, p1 } => {
                let d = p1 - p0;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return p0;
                }
                let t = ((z - p0) * d.conj()).re / len2;
                p0 + d * t.clamp(0.0, 1.0)
            }
        }
    }

    pub fn min_re(&self) -> f64 {
        match *self {
            BoundaryPiece::Arc { center, radius, angle_start, angle_end, .. } => {
                let ends = self.start().re.min(self.end().re);
                if angle_in_range(PI, angle_start, angle_end).is_some() {
                    ends.min(center.re - radius)
                } else {
                    ends
                }
            }
            BoundaryPiece::Segment { p0, p1 } => p0.re.min(p1.re),
        }
    }

    pub fn max_re(&self) -> f64 {
        match *self {
            BoundaryPiece::Arc { center, radius, angle_start, angle_end, .. } => {
                let ends = self.start().re.max(self.end().re);
                if angle_in_range(0.0, angle_start, angle_end).is_some() {
                    ends.max(center.re + radius)
                } else {
                    ends
                }
            }
            BoundaryPiece::Segment { p0, p1 } => p0.re.max(p1.re),
        }
    }

    /// Largest distance from `anchor` to a point of the piece.
    pub fn farthest_distance(&self, anchor: ComplexPoint) -> f64 {
        match *self {
            BoundaryPiece::Arc { center, radius, angle_start, angle_end, .. } => {
                match super::farthest_point_on_circle(center, radius, anchor, Some((angle_start, angle_end))) {
                    Ok(p) => (p - anchor).norm(),
                    Err(_) => radius,
                }
            }
            BoundaryPiece::Segment { p0, p1 } => (p0 - anchor).norm().max((p1 - anchor).norm()),
        }
    }
}

/// If `angle` (mod 2π) falls in `[start, end]`, return its representative there.
pub(crate) fn angle_in_range(angle: f64, start: f64, end: f64) -> Option<f64> {
    let shifted = start + (angle - start).rem_euclid(TAU);
    if shifted <= end {
        Some(shifted)
    } else if (shifted - TAU - start).abs() <= 1e-15 {
        Some(start)
    } else {
        None
    }
}

/// Deterministic boundary samples with the covering radius they guarantee.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySamples {
    pub points: Vec<ComplexPoint>,
    /// Every boundary point lies within this Euclidean distance of a sample.
    pub covering_radius: f64,
}

fn circle_circle(a: &Circle, b: &Circle) -> Vec<ComplexPoint> {
    let delta = b.center - a.center;
    let d = delta.norm();
    if d <= DEGENERACY_TOL {
        return Vec::new();
    }
    let u = delta / d;
    let (r1, r2) = (a.radius, b.radius);
    if (d - (r1 + r2)).abs() <= DEGENERACY_TOL {
        return vec![a.center + u * r1];
    }
    if (d - (r1 - r2).abs()).abs() <= DEGENERACY_TOL {
        let dir = if r1 >= r2 { u } else { -u };
        return vec![a.center + dir * r1];
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    // Radical line: the chord sits at distance `along` from a's center.
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let half = (r1 * r1 - along * along).max(0.0).sqrt();
    let foot = a.center + u * along;
    let normal = u * Complex64::i();
    vec![foot + normal * half, foot - normal * half]
}

fn circle_line(c: &Circle, x: f64) -> Vec<ComplexPoint> {
    let dx = x - c.center.re;
    if (dx.abs() - c.radius).abs() <= DEGENERACY_TOL {
        return vec![Complex64::new(x, c.center.im)];
    }
    if dx.abs() > c.radius {
        return Vec::new();
    }
    let h = (c.radius * c.radius - dx * dx).sqrt();
    vec![Complex64::new(x, c.center.im + h), Complex64::new(x, c.center.im - h)]
}

fn curve_intersections(a: &Curve, b: &Curve) -> Vec<ComplexPoint> {
    match (a, b) {
        (Curve::Circle(p), Curve::Circle(q)) => circle_circle(p, q),
        (Curve::Circle(p), Curve::VLine(x)) | (Curve::VLine(x), Curve::Circle(p)) => circle_line(p, *x),
        (Curve::VLine(_), Curve::VLine(_)) => Vec::new(),
    }
}

fn sort_dedup(values: &mut Vec<f64>, tol: f64) {
    values.sort_by(f64::total_cmp);
    values.dedup_by(|b, a| (*b - *a).abs() <= tol);
}

impl Region {
    /// Decompose ∂R into arcs and segments meeting only at endpoints.
    pub fn boundary_pieces(&self) -> Result<Vec<BoundaryPiece>> {
        if self.atoms.len() > 3 {
            return Err(Error::TooManyAtoms(self.atoms.len()));
        }
        let Some(enclosing) = self.smallest_disk() else {
            return Err(Error::UnboundedRegion("region has no disk atom".into()));
        };
        let curves: Vec<Curve> = self.curves().collect();
        let mut pieces = Vec::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            if curves[..i].iter().any(|c| c.same_as(&curves[i])) {
                continue;
            }
            let others: Vec<usize> = (0..curves.len()).filter(|&j| j != i && !curves[j].same_as(&curves[i])).collect();
            let inside_others = |z: ComplexPoint| {
                (0..self.atoms.len()).filter(|&j| j != i).all(|j| self.atoms[j].contains(z, PIECE_TOL))
            };
            let hits: Vec<ComplexPoint> =
                others.iter().flat_map(|&j| curve_intersections(&curves[i], &curves[j])).collect();
            match curves[i] {
                Curve::Circle(circle) => {
                    let orientation = if matches!(atom, RegionAtom::Disk(_)) { 1 } else { -1 };
                    let mut angles: Vec<f64> = hits
                        .iter()
                        .map(|p| {
                            let d = p - circle.center;
                            d.im.atan2(d.re)
                        })
                        .collect();
                    sort_dedup(&mut angles, 1e-13);
                    let mut arcs: Vec<(f64, f64)> = Vec::new();
                    if angles.is_empty() {
                        if inside_others(circle.point_at_angle(0.0)) {
                            arcs.push((-PI, PI));
                        }
                    } else {
                        let n = angles.len();
                        for k in 0..n {
                            let start = angles[k];
                            let end = if k + 1 < n { angles[k + 1] } else { angles[0] + TAU };
                            if end - start <= 1e-15 {
                                continue;
                            }
                            if inside_others(circle.point_at_angle(0.5 * (start + end))) {
                                arcs.push((start, end));
                            }
                        }
                        merge_arcs(&mut arcs);
                    }
                    pieces.extend(arcs.into_iter().map(|(angle_start, angle_end)| BoundaryPiece::Arc {
                        center: circle.center,
                        radius: circle.radius,
                        angle_start,
                        angle_end,
                        orientation,
                    }));
                }
                Curve::VLine(x) => {
                    let margin = enclosing.radius + 1.0;
                    let mut ys: Vec<f64> = hits.iter().map(|p| p.im).collect();
                    ys.push(enclosing.center.im - margin);
                    ys.push(enclosing.center.im + margin);
                    sort_dedup(&mut ys, 1e-13);
                    let mut segments: Vec<(f64, f64)> = Vec::new();
                    for w in ys.windows(2) {
                        if inside_others(Complex64::new(x, 0.5 * (w[0] + w[1]))) {
                            match segments.last_mut() {
                                Some(last) if (last.1 - w[0]).abs() <= 1e-15 => last.1 = w[1],
                                _ => segments.push((w[0], w[1])),
                            }
                        }
                    }
                    pieces.extend(segments.into_iter().map(|(y0, y1)| BoundaryPiece::Segment {
                        p0: Complex64::new(x, y0),
                        p1: Complex64::new(x, y1),
                    }));
                }
            }
        }
        if pieces.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(pieces)
    }

    /// The single point of a zero-area region such as a tangency of two atoms.
    ///
    /// [`Region::boundary_pieces`] reports these as empty; callers that can work
    /// with a point domain use this to tell "one point" from "no points".
    pub fn degenerate_point(&self) -> Option<ComplexPoint> {
        let curves: Vec<Curve> = self.curves().collect();
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i + 1..] {
                if let Some(z) = curve_intersections(a, b).into_iter().find(|z| self.contains(*z, PIECE_TOL)) {
                    return Some(z);
                }
            }
        }
        None
    }

    /// Points on ∂R spaced at most `eps` apart along each piece.
    pub fn sample_boundary(&self, eps: f64) -> Result<BoundarySamples> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
        }
        if !self.bounded() {
            return Err(Error::UnboundedRegion("sampling needs a disk atom to bound the region".into()));
        }
        let pieces = self.boundary_pieces()?;
        sample_pieces(&pieces, eps)
    }
}

/// Samples for an explicit list of pieces; see [`Region::sample_boundary`].
pub fn sample_pieces(pieces: &[BoundaryPiece], eps: f64) -> Result<BoundarySamples> {
    let mut points = Vec::new();
    let mut covering: f64 = 0.0;
    let mut corners: Vec<ComplexPoint> = Vec::new();
    let mut push_corner = |points: &mut Vec<ComplexPoint>, z: ComplexPoint| {
        if !corners.iter().any(|c| (c - z).norm() <= 1e-12) {
            corners.push(z);
            points.push(z);
        }
    };
    for piece in pieces {
        let len = piece.length();
        if piece.is_closed_loop() {
            let n = ((len / eps).ceil() as usize).max(3);
            points.extend((0..n).map(|k| piece.point_at(k as f64 / n as f64)));
            covering = covering.max(0.5 * len / n as f64);
        } else {
            // Corners are shared between pieces and emitted once.
            let n = ((len / eps).ceil() as usize).max(1);
            push_corner(&mut points, piece.start());
            points.extend((1..n).map(|k| piece.point_at(k as f64 / n as f64)));
            push_corner(&mut points, piece.end());
            covering = covering.max(0.5 * len / n as f64);
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    Ok(BoundarySamples { points, covering_radius: covering })
}

fn merge_arcs(arcs: &mut Vec<(f64, f64)>) {
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(arcs.len());
    for &(s, e) in arcs.iter() {
        match merged.last_mut() {
            Some(last) if (last.1 - s).abs() <= 1e-13 => last.1 = e,
            _ => merged.push((s, e)),
        }
    }
    if merged.len() > 1 {
        let last = *merged.last().unwrap();
        let first = merged[0];
        if (last.1 - (first.0 + TAU)).abs() <= 1e-13 {
            merged[0] = (last.0, first.1 + TAU);
            merged.pop();
        }
    }
    if merged.len() == 1 && merged[0].1 - merged[0].0 >= TAU - 1e-13 {
        merged[0] = (-PI, PI);
    }
    *arcs = merged;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_atoms_give_a_degenerate_point() {
        // S_1 ∩ L_1 is the single point 1.
        let r = Region::new(vec![RegionAtom::half_plane(1.0), RegionAtom::disk(0.0, 1.0)]).unwrap();
        assert_eq!(r.boundary_pieces(), Err(Error::EmptyRegion));
        assert_eq!(r.degenerate_point(), Some(Complex64::new(1.0, 0.0)));
        let empty = Region::new(vec![RegionAtom::half_plane(2.0), RegionAtom::disk(0.0, 1.0)]).unwrap();
        assert_eq!(empty.degenerate_point(), None);
    }
    use approx::assert_abs_diff_eq;

    fn lens(alpha: f64, mu: f64, l: f64) -> Region {
        // Resolvent region of L_l ∩ S_mu, written out by hand.
        let o_mu = 1.0 / (2.0 * (1.0 + alpha * mu));
        let d = 1.0 - alpha * alpha * l * l;
        let lip = if d > 0.0 {
            RegionAtom::disk(1.0 / d, alpha * l / d)
        } else {
            RegionAtom::disk_exterior(1.0 / d, alpha * l / -d)
        };
        Region::new(vec![RegionAtom::disk(o_mu, o_mu), lip]).unwrap()
    }

    #[test]
    fn full_circle_is_one_arc() {
        let pieces = Region::from(RegionAtom::disk(0.5, 0.5)).boundary_pieces().unwrap();
        assert_eq!(pieces.len(), 1);
        match pieces[0] {
            BoundaryPiece::Arc { radius, angle_start, angle_end, orientation, .. } => {
                assert_eq!(radius, 0.5);
                assert_eq!(angle_start, -PI);
                assert_eq!(angle_end, PI);
                assert_eq!(orientation, 1);
            }
            _ => panic!("expected arc"),
        }
    }

    fn corners(pieces: &[BoundaryPiece]) -> Vec<ComplexPoint> {
        pieces.iter().flat_map(|p| [p.start(), p.end()]).collect()
    }

    #[test]
    fn strongly_monotone_lipschitz_lens_corners() {
        for &(alpha, mu, l) in &[(1.0, 0.5, 3.0), (1.0, 0.2, 0.5), (0.4, 1.0, 1.7)] {
            let pieces = lens(alpha, mu, l).boundary_pieces().unwrap();
            assert_eq!(pieces.len(), 2, "two arcs for alpha={alpha} mu={mu} L={l}");
            let denom = alpha * alpha * l * l + 2.0 * alpha * mu + 1.0;
            let expect_re = (1.0 + alpha * mu) / denom;
            let expect_im = alpha * (l * l - mu * mu).sqrt() / denom;
            for p in corners(&pieces) {
                assert_abs_diff_eq!(p.re, expect_re, epsilon = 1e-12);
                assert_abs_diff_eq!(p.im.abs(), expect_im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn monotone_lipschitz_lens_corners() {
        let alpha = 1.0;
        let l = 0.5;
        let region = Region::new(vec![RegionAtom::disk(0.5, 0.5), RegionAtom::disk(4.0 / 3.0, 2.0 / 3.0)]).unwrap();
        let pieces = region.boundary_pieces().unwrap();
        assert_eq!(pieces.len(), 2);
        let s = 1.0 / (1.0 + alpha * alpha * l * l);
        for p in corners(&pieces) {
            assert_abs_diff_eq!(p.re, s, epsilon = 1e-12);
            assert_abs_diff_eq!(p.im.abs(), s * alpha * l, epsilon = 1e-12);
        }
    }

    #[test]
    fn half_disk_has_arc_and_segment() {
        let region = Region::new(vec![RegionAtom::disk(0.5, 0.5), RegionAtom::half_plane(0.5)]).unwrap();
        let pieces = region.boundary_pieces().unwrap();
        assert_eq!(pieces.len(), 2);
        let seg = pieces.iter().find(|p| matches!(p, BoundaryPiece::Segment { .. })).unwrap();
        assert_abs_diff_eq!(seg.length(), 1.0, epsilon = 1e-12);
        let arc = pieces.iter().find(|p| matches!(p, BoundaryPiece::Arc { .. })).unwrap();
        assert_abs_diff_eq!(arc.length(), PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn errors() {
        let hp = Region::from(RegionAtom::half_plane(0.0));
        assert!(matches!(hp.boundary_pieces(), Err(Error::UnboundedRegion(_))));
        let disjoint = Region::new(vec![RegionAtom::disk(0.0, 1.0), RegionAtom::disk(5.0, 1.0)]).unwrap();
        assert_eq!(disjoint.boundary_pieces(), Err(Error::EmptyRegion));
        let four = Region::new(vec![RegionAtom::disk(0.0, 1.0); 4]).unwrap();
        assert_eq!(four.boundary_pieces(), Err(Error::TooManyAtoms(4)));
        // C_1 ∩ S_1 is the single point {1}.
        let point = Region::new(vec![RegionAtom::disk(0.5, 0.5), RegionAtom::half_plane(1.0)]).unwrap();
        assert_eq!(point.boundary_pieces(), Err(Error::EmptyRegion));
    }

    #[test]
    fn duplicate_atoms_are_merged() {
        let r = Region::new(vec![RegionAtom::disk(0.5, 0.5), RegionAtom::disk(0.5, 0.5)]).unwrap();
        assert_eq!(r.boundary_pieces().unwrap().len(), 1);
    }

    #[test]
    fn sample_unit_circle() {
        let s = Region::from(RegionAtom::disk(0.0, 1.0)).sample_boundary(PI / 2.0).unwrap();
        assert!(s.points.len() >= 4);
        assert!(s.covering_radius <= PI / 2.0);
        for p in &s.points {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn sample_count_for_eps_one_over_120() {
        let s = Region::from(RegionAtom::disk(0.5, 0.5)).sample_boundary(1.0 / 120.0).unwrap();
        // ⌈π / (1/120)⌉ = ⌈376.99…⌉
        assert!(s.points.len() >= 377);
        assert!(s.covering_radius <= 0.5 / 120.0 + 1e-15);
    }

    #[test]
    fn lens_samples_stay_on_boundary() {
        let region = lens(1.0, 0.5, 3.0);
        let s = region.sample_boundary(0.01).unwrap();
        let pieces = region.boundary_pieces().unwrap();
        let on_arc = |z: ComplexPoint| {
            region.atoms().iter().any(|a| a.boundary_distance(z) <= 1e-12) && region.contains(z, 1e-12)
        };
        assert!(s.points.iter().all(|&z| on_arc(z)));
        for piece in &pieces {
            assert!(s.points.iter().any(|p| (p - piece.point_at(0.5)).norm() <= 0.005 + 1e-12));
        }
        // no duplicated corner points
        for (i, a) in s.points.iter().enumerate() {
            for b in &s.points[i + 1..] {
                assert!((a - b).norm() > 1e-12);
            }
        }
    }

    #[test]
    fn sampling_unbounded_is_an_error() {
        let r = Region::new(vec![RegionAtom::half_plane(0.0), RegionAtom::disk_exterior(0.0, 1.0)]).unwrap();
        assert!(matches!(r.sample_boundary(0.1), Err(Error::UnboundedRegion(_))));
    }

    #[test]
    fn projection_onto_arc_clips_to_endpoints() {
        let arc = BoundaryPiece::Arc {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
            angle_start: 0.0,
            angle_end: PI / 2.0,
            orientation: 1,
        };
        let p = arc.project(Complex64::new(2.0, 2.0));
        assert_abs_diff_eq!(p.re, 2f64.sqrt() / 2.0, epsilon = 1e-15);
        let q = arc.project(Complex64::new(-1.0, -0.1));
        assert_abs_diff_eq!(q.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.im, 1.0, epsilon = 1e-15);
        let seg = BoundaryPiece::Segment { p0: Complex64::new(0.0, -1.0), p1: Complex64::new(0.0, 1.0) };
        assert_eq!(seg.project(Complex64::new(3.0, 0.25)), Complex64::new(0.0, 0.25));
        assert_eq!(seg.project(Complex64::new(3.0, 7.0)), Complex64::new(0.0, 1.0));
    }
}
