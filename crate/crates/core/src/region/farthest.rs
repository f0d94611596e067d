use std::f64::consts::PI;

use num_complex::Complex64;

use super::boundary::angle_in_range;
use super::ComplexPoint;
use crate::error::{Error, Result};

/// Point of a circle (or of the arc `[start, end]` of it) farthest from `anchor`.
///
/// The distance `|P − anchor|` grows with the angle between `P − center` and
/// `anchor − center`, so on a restricted arc the maximizer is the antipode of
/// the anchor direction when the arc contains it and otherwise the arc
/// endpoint with the larger angular distance.
pub fn farthest_point_on_circle(
    center: ComplexPoint,
    radius: f64,
    anchor: ComplexPoint,
    feasible_arc: Option<(f64, f64)>,
) -> Result<ComplexPoint> {
    let d = anchor - center;
    if d.norm() == 0.0 {
        return Err(Error::AmbiguousArgmax);
    }
    let antipode = d.im.atan2(d.re) + PI;
    let at = |a: f64| center + Complex64::from_polar(radius, a);
    let Some((start, end)) = feasible_arc else {
        return Ok(at(antipode));
    };
    if let Some(a) = angle_in_range(antipode, start, end) {
        return Ok(at(a));
    }
    let (p, q) = (at(start), at(end));
    Ok(if (p - anchor).norm() >= (q - anchor).norm() { p } else { q })
}
