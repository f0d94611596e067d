//! Inversive geometry of SRG regions.
//!
//! A [`Region`] is a finite intersection of [`RegionAtom`]s: closed disks,
//! closed disk exteriors and vertical half-planes. Regions are closed under
//! positive scaling, real translation and the inversion `z ↦ 1/z`, which is
//! all that is needed to move between an operator class, `I + αA` and the
//! resolvent `(I + αA)⁻¹`. The point at infinity is never represented.

mod arc_property;
mod boundary;
mod farthest;

pub use arc_property::{ArcSide, DEFAULT_ARC_SAMPLES, DEFAULT_ARC_THETAS};
pub use boundary::{sample_pieces, BoundaryPiece, BoundarySamples};
pub use farthest::farthest_point_on_circle;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite point of the complex plane.
pub type ComplexPoint = Complex64;

/// Classification tolerance for tangency and for the `|c| = r` inversion case.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Circle with a center and a positive radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: ComplexPoint,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: ComplexPoint, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn real(center: f64, radius: f64) -> Self {
        Self::new(Complex64::new(center, 0.0), radius)
    }

    /// Largest modulus attained on the closed disk.
    pub fn sup_modulus(&self) -> f64 {
        self.center.norm() + self.radius
    }

    pub fn point_at_angle(&self, angle: f64) -> ComplexPoint {
        self.center + Complex64::from_polar(self.radius, angle)
    }

    fn same_as(&self, other: &Circle) -> bool {
        (self.center - other.center).norm() <= DEGENERACY_TOL && (self.radius - other.radius).abs() <= DEGENERACY_TOL
    }
}

/// One closed constraint of a region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionAtom {
    /// `{ |z − c| ≤ r }`
    Disk(Circle),
    /// `{ |z − c| ≥ r }`
    DiskExterior(Circle),
    /// `{ Re z ≥ a }`
    HalfPlane { a: f64 },
    /// `{ Re z ≤ a }`; only produced by [`Region::scale_reflecting`].
    HalfPlaneLeft { a: f64 },
}

impl RegionAtom {
    pub fn disk(center: f64, radius: f64) -> Self {
        Self::Disk(Circle::real(center, radius))
    }

    pub fn disk_exterior(center: f64, radius: f64) -> Self {
        Self::DiskExterior(Circle::real(center, radius))
    }

    pub fn half_plane(a: f64) -> Self {
        Self::HalfPlane { a }
    }

    pub fn contains(&self, z: ComplexPoint, tol: f64) -> bool {
        match *self {
            RegionAtom::Disk(c) => (z - c.center).norm() <= c.radius + tol,
            RegionAtom::DiskExterior(c) => (z - c.center).norm() >= c.radius - tol,
            RegionAtom::HalfPlane { a } => z.re >= a - tol,
            RegionAtom::HalfPlaneLeft { a } => z.re <= a + tol,
        }
    }

    /// Distance from `z` to the curve bounding this atom.
    pub fn boundary_distance(&self, z: ComplexPoint) -> f64 {
        match *self {
            RegionAtom::Disk(c) | RegionAtom::DiskExterior(c) => ((z - c.center).norm() - c.radius).abs(),
            RegionAtom::HalfPlane { a } | RegionAtom::HalfPlaneLeft { a } => (z.re - a).abs(),
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = match *self {
            RegionAtom::Disk(c) | RegionAtom::DiskExterior(c) => {
                if !(c.radius > 0.0) {
                    return Err(Error::InvalidParameter(format!("radius must be positive, got {}", c.radius)));
                }
                c.center.re.is_finite() && c.center.im.is_finite() && c.radius.is_finite()
            }
            RegionAtom::HalfPlane { a } | RegionAtom::HalfPlaneLeft { a } => a.is_finite(),
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidParameter("region atom has non-finite parameters".into()))
        }
    }

    fn translate(&self, shift: f64) -> Self {
        let d = Complex64::new(shift, 0.0);
        match *self {
            RegionAtom::Disk(c) => RegionAtom::Disk(Circle::new(c.center + d, c.radius)),
            RegionAtom::DiskExterior(c) => RegionAtom::DiskExterior(Circle::new(c.center + d, c.radius)),
            RegionAtom::HalfPlane { a } => RegionAtom::HalfPlane { a: a + shift },
            RegionAtom::HalfPlaneLeft { a } => RegionAtom::HalfPlaneLeft { a: a + shift },
        }
    }

    fn scale(&self, factor: f64, reflecting: bool) -> Result<Self> {
        Ok(match *self {
            RegionAtom::Disk(c) => RegionAtom::Disk(Circle::new(c.center * factor, c.radius * factor.abs())),
            RegionAtom::DiskExterior(c) => {
                RegionAtom::DiskExterior(Circle::new(c.center * factor, c.radius * factor.abs()))
            }
            RegionAtom::HalfPlane { a } if factor > 0.0 => RegionAtom::HalfPlane { a: a * factor },
            RegionAtom::HalfPlaneLeft { a } if factor > 0.0 => RegionAtom::HalfPlaneLeft { a: a * factor },
            RegionAtom::HalfPlane { a } if reflecting => RegionAtom::HalfPlaneLeft { a: a * factor },
            RegionAtom::HalfPlaneLeft { a } => RegionAtom::HalfPlane { a: a * factor },
            RegionAtom::HalfPlane { .. } => return Err(Error::UnsupportedOrientation),
        })
    }

    /// Image under `z ↦ 1/z`, by generalized-circle inversion.
    fn invert(&self) -> Result<Self> {
        match *self {
            RegionAtom::Disk(c) | RegionAtom::DiskExterior(c) => {
                let exterior = matches!(self, RegionAtom::DiskExterior(_));
                let m = c.center.norm();
                let r = c.radius;
                if (m - r).abs() <= DEGENERACY_TOL {
                    // 0 lies on the circle: the image of the circle is a vertical line.
                    if c.center.im.abs() > DEGENERACY_TOL {
                        return Err(Error::UnsupportedInversion(
                            "circle through 0 with a non-real center maps to a non-vertical line".into(),
                        ));
                    }
                    let line = 1.0 / (2.0 * c.center.re);
                    // For c > 0 the disk maps to Re w ≥ 1/(2c); for c < 0 to Re w ≤ 1/(2c).
                    let right = (c.center.re > 0.0) != exterior;
                    return Ok(if right {
                        RegionAtom::HalfPlane { a: line }
                    } else {
                        RegionAtom::HalfPlaneLeft { a: line }
                    });
                }
                let denom = m * m - r * r;
                let image = Circle::new(c.center.conj() / denom, r / denom.abs());
                // 0 outside the circle: disk ↦ disk. 0 inside: disk ↦ exterior.
                let zero_outside = denom > 0.0;
                Ok(if zero_outside != exterior { RegionAtom::Disk(image) } else { RegionAtom::DiskExterior(image) })
            }
            RegionAtom::HalfPlane { a } => {
                if a > 0.0 {
                    Ok(RegionAtom::disk(1.0 / (2.0 * a), 1.0 / (2.0 * a)))
                } else {
                    Err(Error::UnsupportedInversion(format!("half-plane Re z ≥ {a} contains 0; its image contains ∞")))
                }
            }
            RegionAtom::HalfPlaneLeft { a } => {
                if a < 0.0 {
                    Ok(RegionAtom::disk(1.0 / (2.0 * a), -1.0 / (2.0 * a)))
                } else {
                    Err(Error::UnsupportedInversion(format!("half-plane Re z ≤ {a} contains 0; its image contains ∞")))
                }
            }
        }
    }

    fn curve(&self) -> Curve {
        match *self {
            RegionAtom::Disk(c) | RegionAtom::DiskExterior(c) => Curve::Circle(c),
            RegionAtom::HalfPlane { a } | RegionAtom::HalfPlaneLeft { a } => Curve::VLine(a),
        }
    }

    /// Lower bound on `Re z` over the atom, if the atom is bounded on the left.
    fn min_re(&self) -> Option<f64> {
        match *self {
            RegionAtom::Disk(c) => Some(c.center.re - c.radius),
            RegionAtom::HalfPlane { a } => Some(a),
            _ => None,
        }
    }

    fn is_real_centered(&self) -> bool {
        match *self {
            RegionAtom::Disk(c) | RegionAtom::DiskExterior(c) => c.center.im == 0.0,
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Curve {
    Circle(Circle),
    VLine(f64),
}

impl Curve {
    fn same_as(&self, other: &Curve) -> bool {
        match (self, other) {
            (Curve::Circle(a), Curve::Circle(b)) => a.same_as(b),
            (Curve::VLine(a), Curve::VLine(b)) => (a - b).abs() <= DEGENERACY_TOL,
            _ => false,
        }
    }
}

/// Intersection of finitely many atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<RegionAtom>", into = "Vec<RegionAtom>")]
pub struct Region {
    atoms: Vec<RegionAtom>,
}

impl TryFrom<Vec<RegionAtom>> for Region {
    type Error = Error;

    fn try_from(atoms: Vec<RegionAtom>) -> Result<Self> {
        Region::new(atoms)
    }
}

impl From<Region> for Vec<RegionAtom> {
    fn from(region: Region) -> Self {
        region.atoms
    }
}

impl From<RegionAtom> for Region {
    fn from(atom: RegionAtom) -> Self {
        Region { atoms: vec![atom] }
    }
}

impl Region {
    pub fn new(atoms: Vec<RegionAtom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidParameter("a region needs at least one atom".into()));
        }
        for atom in &atoms {
            atom.validate()?;
        }
        Ok(Region { atoms })
    }

    pub fn atoms(&self) -> &[RegionAtom] {
        &self.atoms
    }

    /// True iff at least one atom is a disk.
    pub fn bounded(&self) -> bool {
        self.atoms.iter().any(|a| matches!(a, RegionAtom::Disk(_)))
    }

    pub fn intersect(&self, other: &Region) -> Region {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Region { atoms }
    }

    pub fn contains(&self, z: ComplexPoint, tol: f64) -> bool {
        self.atoms.iter().all(|a| a.contains(z, tol))
    }

    pub fn translate(&self, shift: f64) -> Region {
        Region { atoms: self.atoms.iter().map(|a| a.translate(shift)).collect() }
    }

    /// `a · region` for `a > 0`, or for `a < 0` when the region has no half-plane atom.
    pub fn scale(&self, factor: f64) -> Result<Region> {
        self.scale_impl(factor, false)
    }

    /// `a · region` for any nonzero `a`; right half-planes reflect to left half-planes.
    pub fn scale_reflecting(&self, factor: f64) -> Result<Region> {
        self.scale_impl(factor, true)
    }

    fn scale_impl(&self, factor: f64, reflecting: bool) -> Result<Region> {
        if factor == 0.0 || !factor.is_finite() {
            return Err(Error::ZeroScale(factor));
        }
        let atoms = self.atoms.iter().map(|a| a.scale(factor, reflecting)).collect::<Result<_>>()?;
        Ok(Region { atoms })
    }

    /// Image under `z ↦ 1/z`, atom by atom.
    pub fn invert(&self) -> Result<Region> {
        let atoms = self.atoms.iter().map(RegionAtom::invert).collect::<Result<_>>()?;
        Ok(Region { atoms })
    }

    /// `{ k − a·z : z ∈ region }`, the shape of `(2 − λ/(1−s))·I − α·C`.
    pub fn reflect_affine(&self, offset: f64, factor: f64) -> Result<Region> {
        Ok(self.scale_reflecting(-factor)?.translate(offset))
    }

    /// The disk atom of smallest radius; the region lies inside it.
    pub fn smallest_disk(&self) -> Option<Circle> {
        self.atoms
            .iter()
            .filter_map(|a| match a {
                RegionAtom::Disk(c) => Some(*c),
                _ => None,
            })
            .min_by(|a, b| a.radius.total_cmp(&b.radius))
    }

    pub fn is_real_symmetric(&self) -> bool {
        self.atoms.iter().all(RegionAtom::is_real_centered)
    }

    /// Whether every point has `Re z ≥ −tol`, i.e. the region describes a monotone class.
    pub fn within_right_half_plane(&self, tol: f64) -> bool {
        if self.atoms.iter().filter_map(RegionAtom::min_re).any(|m| m >= -tol) {
            return true;
        }
        match self.boundary_pieces() {
            Ok(pieces) => pieces.iter().map(BoundaryPiece::min_re).fold(f64::INFINITY, f64::min) >= -tol,
            Err(_) => false,
        }
    }

    pub(crate) fn curves(&self) -> impl Iterator<Item = Curve> + '_ {
        self.atoms.iter().map(RegionAtom::curve)
    }
}
