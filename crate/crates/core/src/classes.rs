//! Operator classes and their SRG regions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::region::{Region, RegionAtom};
use crate::symbol::DysParams;

/// One defining property of an operator class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawClassAtom")]
pub enum ClassAtom {
    Monotone,
    StronglyMonotone {
        mu: f64,
    },
    Cocoercive {
        beta: f64,
    },
    Lipschitz {
        #[serde(rename = "L")]
        lip: f64,
    },
    Averaged {
        theta: f64,
    },
    /// `center·I + 𝓛_radius`, whose SRG is `Disk(center, radius)`.
    ShiftedLipschitzBall {
        center: f64,
        radius: f64,
    },
}

/// Flat wire form; serde's internally tagged enums silently accept extra keys on
/// unit variants, so unknown or misplaced fields are rejected here instead.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassAtom {
    kind: String,
    mu: Option<f64>,
    beta: Option<f64>,
    #[serde(rename = "L")]
    lip: Option<f64>,
    theta: Option<f64>,
    center: Option<f64>,
    radius: Option<f64>,
}

impl TryFrom<RawClassAtom> for ClassAtom {
    type Error = String;

    fn try_from(r: RawClassAtom) -> std::result::Result<Self, String> {
        let given = [
            ("mu", r.mu),
            ("beta", r.beta),
            ("L", r.lip),
            ("theta", r.theta),
            ("center", r.center),
            ("radius", r.radius),
        ];
        let expected: &[&str] = match r.kind.as_str() {
            "monotone" => &[],
            "strongly_monotone" => &["mu"],
            "cocoercive" => &["beta"],
            "lipschitz" => &["L"],
            "averaged" => &["theta"],
            "shifted_lipschitz_ball" => &["center", "radius"],
            other => return Err(format!("unknown class kind `{other}`")),
        };
        for (name, value) in given {
            match (expected.contains(&name), value) {
                (true, None) => return Err(format!("`{}` needs field `{name}`", r.kind)),
                (false, Some(_)) => return Err(format!("`{}` does not take field `{name}`", r.kind)),
                _ => {}
            }
        }
        let v = |x: Option<f64>| x.unwrap_or_default();
        Ok(match r.kind.as_str() {
            "monotone" => ClassAtom::Monotone,
            "strongly_monotone" => ClassAtom::StronglyMonotone { mu: v(r.mu) },
            "cocoercive" => ClassAtom::Cocoercive { beta: v(r.beta) },
            "lipschitz" => ClassAtom::Lipschitz { lip: v(r.lip) },
            "averaged" => ClassAtom::Averaged { theta: v(r.theta) },
            _ => ClassAtom::ShiftedLipschitzBall { center: v(r.center), radius: v(r.radius) },
        })
    }
}

impl ClassAtom {
    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidClass(format!("{name} must be a positive finite real, got {v}")))
            }
        };
        match *self {
            ClassAtom::Monotone => Ok(()),
            ClassAtom::StronglyMonotone { mu } => positive("mu", mu),
            ClassAtom::Cocoercive { beta } => positive("beta", beta),
            ClassAtom::Lipschitz { lip } => positive("L", lip),
            ClassAtom::Averaged { theta } => {
                if theta > 0.0 && theta < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidClass(format!("theta must lie in (0, 1), got {theta}")))
                }
            }
            ClassAtom::ShiftedLipschitzBall { center, radius } => {
                if !center.is_finite() {
                    return Err(Error::InvalidClass(format!("ball center must be finite, got {center}")));
                }
                positive("ball radius", radius)
            }
        }
    }

    pub fn srg(&self) -> RegionAtom {
        match *self {
            ClassAtom::Monotone => RegionAtom::half_plane(0.0),
            ClassAtom::StronglyMonotone { mu } => RegionAtom::half_plane(mu),
            ClassAtom::Cocoercive { beta } => RegionAtom::disk(1.0 / (2.0 * beta), 1.0 / (2.0 * beta)),
            ClassAtom::Lipschitz { lip } => RegionAtom::disk(0.0, lip),
            ClassAtom::Averaged { theta } => RegionAtom::disk(1.0 - theta, theta),
            ClassAtom::ShiftedLipschitzBall { center, radius } => RegionAtom::disk(center, radius),
        }
    }
}

/// Intersection of class atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ClassAtom>", into = "Vec<ClassAtom>")]
pub struct OperatorClassSpec {
    atoms: Vec<ClassAtom>,
}

impl TryFrom<Vec<ClassAtom>> for OperatorClassSpec {
    type Error = Error;

    fn try_from(atoms: Vec<ClassAtom>) -> Result<Self> {
        OperatorClassSpec::new(atoms)
    }
}

impl From<OperatorClassSpec> for Vec<ClassAtom> {
    fn from(spec: OperatorClassSpec) -> Self {
        spec.atoms
    }
}

impl OperatorClassSpec {
    pub fn new(atoms: Vec<ClassAtom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidClass("a class needs at least one atom".into()));
        }
        for a in &atoms {
            a.validate()?;
        }
        let spec = OperatorClassSpec { atoms };
        if let (Some(mu), Some(lip)) = (spec.strong_monotonicity(), spec.lipschitz()) {
            if mu > lip {
                return Err(Error::InvalidClass(format!("mu = {mu} exceeds L = {lip}")));
            }
        }
        if let (Some(mu), Some(beta)) = (spec.strong_monotonicity(), spec.cocoercivity()) {
            if mu > 1.0 / beta {
                return Err(Error::InvalidClass(format!("mu = {mu} exceeds 1/beta = {}", 1.0 / beta)));
            }
        }
        Ok(spec)
    }

    pub fn monotone() -> Self {
        Self { atoms: vec![ClassAtom::Monotone] }
    }

    pub fn strongly_monotone(mu: f64) -> Result<Self> {
        Self::new(vec![ClassAtom::StronglyMonotone { mu }])
    }

    pub fn cocoercive(beta: f64) -> Result<Self> {
        Self::new(vec![ClassAtom::Cocoercive { beta }])
    }

    pub fn lipschitz_class(lip: f64) -> Result<Self> {
        Self::new(vec![ClassAtom::Lipschitz { lip }])
    }

    pub fn atoms(&self) -> &[ClassAtom] {
        &self.atoms
    }

    pub fn and(&self, atom: ClassAtom) -> Result<Self> {
        let mut atoms = self.atoms.clone();
        atoms.push(atom);
        Self::new(atoms)
    }

    pub fn has_monotone(&self) -> bool {
        self.atoms.iter().any(|a| matches!(a, ClassAtom::Monotone))
    }

    /// Strongest strong-monotonicity parameter among the atoms.
    pub fn strong_monotonicity(&self) -> Option<f64> {
        self.atoms
            .iter()
            .filter_map(|a| match a {
                ClassAtom::StronglyMonotone { mu } => Some(*mu),
                _ => None,
            })
            .reduce(f64::max)
    }

    /// Smallest Lipschitz constant among the atoms.
    pub fn lipschitz(&self) -> Option<f64> {
        self.atoms
            .iter()
            .filter_map(|a| match a {
                ClassAtom::Lipschitz { lip } => Some(*lip),
                _ => None,
            })
            .reduce(f64::min)
    }

    /// Largest cocoercivity parameter among the atoms.
    pub fn cocoercivity(&self) -> Option<f64> {
        self.atoms
            .iter()
            .filter_map(|a| match a {
                ClassAtom::Cocoercive { beta } => Some(*beta),
                _ => None,
            })
            .reduce(f64::max)
    }

    pub fn srg(&self) -> Region {
        Region::new(self.atoms.iter().map(ClassAtom::srg).collect()).expect("validated atoms give valid regions")
    }

    /// SRG of `J_{αA} = (I + αA)⁻¹` for every `A` in the class.
    pub fn resolvent_srg(&self, alpha: f64) -> Result<Region> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        self.srg().scale(alpha)?.translate(1.0).invert()
    }
}

/// Applicability of the tight-symbol theorem to a triple of classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreflightReport {
    /// `I + αA` has the right-arc property.
    pub resolvent_a_right_arc: bool,
    /// Both `A` and `B` are monotone.
    pub a_b_monotone: bool,
    /// `(2 − λ/(1−s))·I − α·C` has an arc property.
    pub c_arc_property: bool,
    /// The arc verdict for C came from an exact certificate rather than sampling.
    pub c_arc_certified: bool,
    /// The resolvent regions of A and B and the region of C are bounded.
    pub search_bounded: bool,
    /// All three hypotheses hold, so the maximum modulus of the symbol is tight.
    pub applicable: bool,
    /// Without the arc property on C, an enlarged class C′ must be used.
    pub needs_enlargement: bool,
}

/// Check the hypotheses that make `sup |ζ − s|` over the class regions tight.
pub fn dys_preflight(
    a: &OperatorClassSpec,
    b: &OperatorClassSpec,
    c: &OperatorClassSpec,
    params: &DysParams,
) -> Result<PreflightReport> {
    params.validate()?;
    if params.s == 1.0 {
        return Err(Error::InvalidShift);
    }
    let alpha = params.alpha;
    let shifted_a = a.srg().scale(alpha)?.translate(1.0);
    let resolvent_a_right_arc = shifted_a.has_right_arc_property(crate::region::DEFAULT_ARC_SAMPLES);
    let a_b_monotone = a.srg().within_right_half_plane(1e-12) && b.srg().within_right_half_plane(1e-12);

    let k = 2.0 - params.lambda / (1.0 - params.s);
    let c_image = c.srg().reflect_affine(k, alpha)?;
    let c_arc_certified = c_image.arc_property_certified(crate::region::ArcSide::Right)
        || c_image.arc_property_certified(crate::region::ArcSide::Left);
    let c_arc_property = c_arc_certified || c_image.has_arc_property();

    let search_bounded = a.resolvent_srg(alpha).map(|r| r.bounded()).unwrap_or(false)
        && b.resolvent_srg(alpha).map(|r| r.bounded()).unwrap_or(false)
        && c.srg().bounded();

    let applicable = resolvent_a_right_arc && a_b_monotone && c_arc_property;
    Ok(PreflightReport {
        resolvent_a_right_arc,
        a_b_monotone,
        c_arc_property,
        c_arc_certified,
        search_bounded,
        applicable,
        needs_enlargement: !c_arc_property,
    })
}

/// How to enlarge C into a class C′ ⊇ C whose reflected region is a real-centered disk.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum Enlargement {
    /// Smallest real-centered disk containing `srg(C)`.
    #[default]
    DiskHull,
    /// `α⁻¹((2 − λ)I + 𝓛_R)` for cocoercive, strongly monotone C (s = 0).
    Thm33,
    /// `α⁻¹((2 − θ⁻¹)I + 𝓛_R)` for monotone Lipschitz C with λ = 1,
    /// where `mu` is the strong monotonicity of A (or B).
    Thm41 { mu: f64 },
}

fn precondition(ok: bool, inequality: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(inequality.to_string()))
    }
}

/// Enlarge C so that `(2 − λ/(1−s))·I − α·C′` has an arc property.
pub fn enlarge_c(c: &OperatorClassSpec, params: &DysParams, mode: Enlargement) -> Result<OperatorClassSpec> {
    params.validate()?;
    let alpha = params.alpha;
    match mode {
        Enlargement::DiskHull => {
            let (center, radius) = disk_hull(&c.srg())?;
            OperatorClassSpec::new(vec![ClassAtom::ShiftedLipschitzBall { center, radius }])
        }
        Enlargement::Thm33 => {
            let lambda = params.lambda;
            let beta = c.cocoercivity().ok_or_else(|| Error::Precondition("C must be cocoercive (beta_C)".into()))?;
            let mu = c
                .strong_monotonicity()
                .ok_or_else(|| Error::Precondition("C must be strongly monotone (mu_C)".into()))?;
            precondition(params.s == 0.0, "s = 0")?;
            precondition(alpha < 4.0 * beta, "alpha < 4 beta_C")?;
            precondition(lambda < 2.0 - alpha / (2.0 * beta), "lambda < 2 - alpha/(2 beta_C)")?;
            precondition(mu <= 1.0 / beta, "mu_C <= 1/beta_C")?;
            let eta = alpha / (2.0 * beta * (2.0 - lambda));
            let r2 = (2.0 - lambda) * (2.0 - lambda - 2.0 * (1.0 - eta) * alpha * mu);
            precondition(r2 > 0.0, "R^2 = (2 - lambda)(2 - lambda - 2(1 - eta) alpha mu_C) > 0")?;
            OperatorClassSpec::new(vec![ClassAtom::ShiftedLipschitzBall {
                center: (2.0 - lambda) / alpha,
                radius: r2.sqrt() / alpha,
            }])
        }
        Enlargement::Thm41 { mu } => {
            let lip = c.lipschitz().ok_or_else(|| Error::Precondition("C must be Lipschitz (L_C)".into()))?;
            precondition(c.has_monotone() || c.strong_monotonicity().is_some(), "C monotone")?;
            precondition(mu > 0.0 && mu.is_finite(), "mu > 0")?;
            precondition(params.lambda == 1.0, "lambda = 1")?;
            precondition(alpha < 2.0 * mu / (lip * lip), "alpha < 2 mu / L_C^2")?;
            let theta = 2.0 / (4.0 - alpha * lip * lip / mu);
            let shift = 2.0 - 1.0 / theta;
            let radius = (shift * shift + alpha * alpha * lip * lip).sqrt();
            OperatorClassSpec::new(vec![ClassAtom::ShiftedLipschitzBall {
                center: shift / alpha,
                radius: radius / alpha,
            }])
        }
    }
}

/// Center and radius of the smallest real-centered disk containing a bounded region.
pub fn disk_hull(region: &Region) -> Result<(f64, f64)> {
    let pieces = region.boundary_pieces()?;
    let reach = |x: f64| {
        let anchor = num_complex::Complex64::new(x, 0.0);
        pieces.iter().map(|p| p.farthest_distance(anchor)).fold(0.0, f64::max)
    };
    // The reach is convex in the center, so golden-section search is exact up to tolerance.
    let mut lo = pieces.iter().map(|p| p.min_re()).fold(f64::INFINITY, f64::min);
    let mut hi = pieces.iter().map(|p| p.max_re()).fold(f64::NEG_INFINITY, f64::max);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (reach(x1), reach(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = reach(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = reach(x2);
        }
    }
    let center = 0.5 * (lo + hi);
    let radius = reach(center);
    Ok((center, radius * (1.0 + 1e-14) + 1e-15))
}
