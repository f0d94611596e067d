//! Right- and left-arc properties.
//!
//! `Arc⁺(z, z̄)` is the circular arc of radius `|z|` from `z` through `|z|` to
//! `z̄`; `Arc⁻(z, z̄) = −Arc⁺(−z, −z̄)` passes through `−|z|` instead. Real
//! centered atoms are certified exactly; anything else goes through a sampling
//! refuter that can only prove the property false.

use num_complex::Complex64;

use super::{ComplexPoint, Region, RegionAtom};

pub const DEFAULT_ARC_SAMPLES: usize = 720;
pub const DEFAULT_ARC_THETAS: usize = 65;

const ARC_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcSide {
    Right,
    Left,
}

impl RegionAtom {
    /// Exact certificate: moving `z` along its arc toward the positive (resp.
    /// negative) real axis never leaves the atom.
    fn arc_certified(&self, side: ArcSide) -> bool {
        match (*self, side) {
            (RegionAtom::Disk(c), ArcSide::Right) => c.center.im == 0.0 && c.center.re >= 0.0,
            (RegionAtom::Disk(c), ArcSide::Left) => c.center.im == 0.0 && c.center.re <= 0.0,
            (RegionAtom::DiskExterior(c), ArcSide::Right) => c.center.im == 0.0 && c.center.re <= 0.0,
            (RegionAtom::DiskExterior(c), ArcSide::Left) => c.center.im == 0.0 && c.center.re >= 0.0,
            (RegionAtom::HalfPlane { .. }, ArcSide::Right) => true,
            (RegionAtom::HalfPlaneLeft { .. }, ArcSide::Left) => true,
            _ => false,
        }
    }
}

fn arc_point(z: ComplexPoint, theta: f64, side: ArcSide) -> ComplexPoint {
    match side {
        ArcSide::Right => Complex64::from_polar(z.norm(), (1.0 - 2.0 * theta) * z.arg()),
        ArcSide::Left => {
            let w = -z;
            -Complex64::from_polar(w.norm(), (1.0 - 2.0 * theta) * w.arg())
        }
    }
}

impl Region {
    pub fn has_right_arc_property(&self, n_samples: usize) -> bool {
        self.has_arc_property_on(ArcSide::Right, n_samples, DEFAULT_ARC_THETAS)
    }

    pub fn has_left_arc_property(&self, n_samples: usize) -> bool {
        self.has_arc_property_on(ArcSide::Left, n_samples, DEFAULT_ARC_THETAS)
    }

    /// Right- or left-arc property, with default sampling density.
    pub fn has_arc_property(&self) -> bool {
        self.has_right_arc_property(DEFAULT_ARC_SAMPLES) || self.has_left_arc_property(DEFAULT_ARC_SAMPLES)
    }

    /// Whether the property on `side` is certified exactly (no sampling involved).
    pub fn arc_property_certified(&self, side: ArcSide) -> bool {
        self.atoms.iter().all(|a| a.arc_certified(side))
    }

    pub fn has_arc_property_on(&self, side: ArcSide, n_samples: usize, n_thetas: usize) -> bool {
        if self.arc_property_certified(side) {
            return true;
        }
        let probe = if self.bounded() {
            self.clone()
        } else {
            // Arcs keep |z| fixed, so a large centered disk does not change the answer.
            let reach = self
                .atoms
                .iter()
                .map(|a| match *a {
                    RegionAtom::Disk(c) | RegionAtom::DiskExterior(c) => c.sup_modulus(),
                    RegionAtom::HalfPlane { a } | RegionAtom::HalfPlaneLeft { a } => a.abs(),
                })
                .fold(1.0, f64::max);
            self.intersect(&Region::from(RegionAtom::disk(0.0, 100.0 * reach)))
        };
        let Ok(pieces) = probe.boundary_pieces() else {
            return false;
        };
        let total: f64 = pieces.iter().map(|p| p.length()).sum();
        let n = n_samples.max(2);
        let n_thetas = n_thetas.max(2);
        let points = pieces.iter().flat_map(|piece| {
            let k = ((n as f64 * piece.length() / total).ceil() as usize).max(2);
            (0..=k).map(move |i| piece.point_at(i as f64 / k as f64))
        });
        for z in points {
            for j in 0..n_thetas {
                let theta = j as f64 / (n_thetas - 1) as f64;
                if !self.contains(arc_point(z, theta, side), ARC_TOL) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn averaged_disk_is_certified() {
        let theta = 0.4;
        let r = Region::from(RegionAtom::disk(1.0 - theta, theta));
        assert!(r.arc_property_certified(ArcSide::Right));
        assert!(r.has_right_arc_property(DEFAULT_ARC_SAMPLES));
    }

    #[test]
    fn half_plane_is_certified() {
        for mu in [0.0, 0.5, 3.0] {
            assert!(Region::from(RegionAtom::half_plane(mu)).has_right_arc_property(DEFAULT_ARC_SAMPLES));
        }
    }

    #[test]
    fn reflected_half_disk_has_no_arc_property() {
        // 1·{1} − 1·(C_1 ∩ S_1/2)
        let c = Region::new(vec![RegionAtom::disk(0.5, 0.5), RegionAtom::half_plane(0.5)]).unwrap();
        let k = c.reflect_affine(1.0, 1.0).unwrap();
        assert!(!k.has_right_arc_property(DEFAULT_ARC_SAMPLES));
        assert!(!k.has_left_arc_property(DEFAULT_ARC_SAMPLES));
        assert!(!k.has_arc_property());
    }

    #[test]
    fn lens_of_right_centered_disks_is_certified() {
        let k = Region::new(vec![RegionAtom::disk(0.5, 0.5), RegionAtom::disk(0.0, 0.5f64.sqrt())]).unwrap();
        assert!(k.arc_property_certified(ArcSide::Right));
    }

    #[test]
    fn left_disk_has_left_property_only() {
        let r = Region::from(RegionAtom::disk(-1.0, 0.5));
        assert!(r.has_left_arc_property(DEFAULT_ARC_SAMPLES));
        assert!(!r.has_right_arc_property(DEFAULT_ARC_SAMPLES));
    }

    #[test]
    fn sampler_accepts_uncertified_but_valid_region() {
        // The exterior atom is centered right of 0 (not certifiable) but never binds.
        let r = Region::new(vec![RegionAtom::disk(0.0, 1.0), RegionAtom::disk_exterior(5.0, 1.0)]).unwrap();
        assert!(!r.arc_property_certified(ArcSide::Right));
        assert!(r.has_right_arc_property(DEFAULT_ARC_SAMPLES));
    }
}
