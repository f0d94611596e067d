//! Independent checks on concrete 2×2 linear operators.
//!
//! A point `z` of an SRG is realized as the scaled rotation `[re, −im; im, re]`.
//! These matrices form a commutative ring isomorphic to ℂ, so the DYS matrix
//! built from realized resolvents is itself the realization of `ζ_DYS` and its
//! operator norm equals `|ζ|`. Class membership is checked with matrix
//! inequalities, not with the region geometry it is meant to confirm.

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{ClassAtom, OperatorClassSpec};
use crate::error::{Error, Result};
use crate::region::{BoundaryPiece, ComplexPoint};
use crate::search::{search_regions_for, SearchDomain};
use crate::symbol::DysParams;

/// A real 2×2 matrix; serialized row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct Mat2(pub Matrix2<f64>);

impl From<[[f64; 2]; 2]> for Mat2 {
    fn from(r: [[f64; 2]; 2]) -> Self {
        Mat2(Matrix2::new(r[0][0], r[0][1], r[1][0], r[1][1]))
    }
}

impl From<Mat2> for [[f64; 2]; 2] {
    fn from(m: Mat2) -> Self {
        [[m.0[(0, 0)], m.0[(0, 1)]], [m.0[(1, 0)], m.0[(1, 1)]]]
    }
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2(Matrix2::identity())
    }

    pub fn scaled_identity(c: f64) -> Self {
        Mat2(Matrix2::identity() * c)
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        (*self).into()
    }

    pub fn is_scaled_rotation(&self, tol: f64) -> bool {
        let m = &self.0;
        (m[(0, 0)] - m[(1, 1)]).abs() <= tol && (m[(0, 1)] + m[(1, 0)]).abs() <= tol
    }

    /// The complex number of a scaled rotation (read off the first column).
    pub fn as_complex(&self) -> ComplexPoint {
        ComplexPoint::new(self.0[(0, 0)], self.0[(1, 0)])
    }

    /// Largest singular value in closed form:
    /// `σ₁ = (√((a+d)² + (c−b)²) + √((a−d)² + (b+c)²)) / 2`.
    pub fn norm2(&self) -> f64 {
        let (a, b, c, d) = (self.0[(0, 0)], self.0[(0, 1)], self.0[(1, 0)], self.0[(1, 1)]);
        0.5 * ((a + d).hypot(c - b) + (a - d).hypot(b + c))
    }

    /// Smallest eigenvalue of the symmetric part `(M + Mᵀ)/2`.
    pub fn min_sym_eigenvalue(&self) -> f64 {
        sym_min_eig(&(0.5 * (self.0 + self.0.transpose())))
    }

    pub fn try_inverse(&self) -> Option<Mat2> {
        self.0.try_inverse().map(Mat2)
    }
}

fn sym_min_eig(s: &Matrix2<f64>) -> f64 {
    let (a, b, d) = (s[(0, 0)], 0.5 * (s[(0, 1)] + s[(1, 0)]), s[(1, 1)]);
    0.5 * (a + d) - (0.5 * (a - d)).hypot(b)
}

impl std::ops::Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2(self.0 * rhs.0)
    }
}

impl std::ops::Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2(rhs.0 * self)
    }
}

/// `z ↦ [re, −im; im, re]`.
pub fn realize(z: ComplexPoint) -> Mat2 {
    Mat2(Matrix2::new(z.re, -z.im, z.im, z.re))
}

/// The operator `A = α⁻¹(J⁻¹ − I)` whose resolvent `J_{αA}` is `realize(z_j)`.
pub fn operator_from_resolvent_point(z_j: ComplexPoint, alpha: f64) -> Result<Mat2> {
    let j_inv = realize(z_j).try_inverse().ok_or(Error::SingularResolvent)?;
    Ok((1.0 / alpha) * (j_inv - Mat2::identity()))
}

/// Resolvent `(I + αA)⁻¹` of a linear operator.
pub fn resolvent(a: &Mat2, alpha: f64) -> Result<Mat2> {
    (Mat2::identity() + alpha * *a).try_inverse().ok_or(Error::SingularResolvent)
}

/// Whether a linear operator satisfies one class atom, up to `tol`.
pub fn atom_membership(m: &Mat2, atom: &ClassAtom, tol: f64) -> bool {
    match *atom {
        ClassAtom::Monotone => m.min_sym_eigenvalue() >= -tol,
        ClassAtom::StronglyMonotone { mu } => m.min_sym_eigenvalue() >= mu - tol,
        ClassAtom::Lipschitz { lip } => m.norm2() <= lip + tol,
        ClassAtom::Cocoercive { beta } => {
            // ⟨x, Mx⟩ ≥ β‖Mx‖²  ⇔  sym(M) − βMᵀM ⪰ 0
            let s = 0.5 * (m.0 + m.0.transpose()) - beta * m.0.transpose() * m.0;
            sym_min_eig(&s) >= -tol
        }
        ClassAtom::Averaged { theta } => (*m - Mat2::scaled_identity(1.0 - theta)).norm2() <= theta + tol,
        ClassAtom::ShiftedLipschitzBall { center, radius } => {
            (*m - Mat2::scaled_identity(center)).norm2() <= radius + tol
        }
    }
}

pub fn class_membership(m: &Mat2, spec: &OperatorClassSpec, tol: f64) -> bool {
    spec.atoms().iter().all(|a| atom_membership(m, a, tol))
}

/// `T = I − λJ_B + λJ_A(2J_B − I − αCJ_B)`.
pub fn dys_matrix(ja: &Mat2, jb: &Mat2, c: &Mat2, alpha: f64, lambda: f64) -> Mat2 {
    let i = Mat2::identity();
    i - lambda * *jb + lambda * (*ja * (2.0 * *jb - i - alpha * (*c * *jb)))
}

/// What a verification run asserts about `T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `‖T‖ ≤ ρ` and `‖T^k x‖ ≤ ρ^k ‖x‖`.
    Contraction { rho: f64 },
    /// `‖T − (1−θ)I‖ ≤ θ` (λ must be 1).
    Averagedness { theta: f64 },
}

impl Claim {
    fn center_radius(&self) -> (f64, f64) {
        match *self {
            Claim::Contraction { rho } => (0.0, rho),
            Claim::Averagedness { theta } => (1.0 - theta, theta),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// The realized operator falls outside its declared class.
    Membership { operator: char },
    /// `‖T − cI‖` exceeds the claimed radius.
    Norm { value: f64 },
    /// An iterate grew faster than `ρ^k`.
    Iteration { start: usize, step: usize, ratio: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Trial index, or `None` for an explicit probe.
    pub trial: Option<usize>,
    pub z: [ComplexPoint; 3],
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub trials: usize,
    pub probes: usize,
    pub seed: u64,
    /// Largest `‖T − cI‖` seen.
    pub max_norm: f64,
    pub membership_failures: usize,
    pub norm_violations: usize,
    pub iteration_violations: usize,
    /// The first few counterexamples in trial order.
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub n_trials: usize,
    pub seed: u64,
    /// Boundary triples checked in addition to the random ones (e.g. a search argmax).
    pub probes: Vec<[ComplexPoint; 3]>,
    pub tol: f64,
    pub iteration_starts: usize,
    pub iteration_steps: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_trials: 1000,
            seed: 0,
            probes: Vec::new(),
            tol: 1e-9,
            iteration_starts: 10,
            iteration_steps: 100,
        }
    }
}

const MAX_COUNTEREXAMPLES: usize = 5;

/// Uniform (in arc length) random point of a boundary decomposition.
pub fn random_boundary_point(pieces: &[BoundaryPiece], rng: &mut impl Rng) -> ComplexPoint {
    let total: f64 = pieces.iter().map(BoundaryPiece::length).sum();
    if !(total > 0.0) {
        return pieces[0].start();
    }
    let mut u = rng.random_range(0.0..total);
    for p in pieces {
        let len = p.length();
        if u <= len {
            return p.point_at(if len > 0.0 { u / len } else { 0.0 });
        }
        u -= len;
    }
    let last = pieces.last().expect("nonempty boundary");
    last.end()
}

struct TrialOutcome {
    norm: f64,
    violations: Vec<Violation>,
}

fn check_triple(
    z: [ComplexPoint; 3],
    specs: [&OperatorClassSpec; 3],
    p: &DysParams,
    claim: &Claim,
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> TrialOutcome {
    let mut violations = Vec::new();
    let (ja, jb, c) = (realize(z[0]), realize(z[1]), realize(z[2]));
    let ops = [operator_from_resolvent_point(z[0], p.alpha), operator_from_resolvent_point(z[1], p.alpha), Ok(c)];
    for (k, op) in ops.iter().enumerate() {
        // Entries of A scale like 1/|z_J|; scale the slack with the quadratic forms involved.
        let ok = match op {
            Ok(m) => class_membership(m, specs[k], opts.tol * m.norm2().powi(2).max(1.0)),
            Err(_) => false,
        };
        if !ok {
            violations.push(Violation::Membership { operator: ['A', 'B', 'C'][k] });
        }
    }
    let t = dys_matrix(&ja, &jb, &c, p.alpha, p.lambda);
    let (center, radius) = claim.center_radius();
    let norm = (t - Mat2::scaled_identity(center)).norm2();
    if norm > radius + opts.tol {
        violations.push(Violation::Norm { value: norm });
    }
    if let Claim::Contraction { rho } = *claim {
        let rate = rho + opts.tol;
        'starts: for s in 0..opts.iteration_starts {
            let x0 = nalgebra::Vector2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let n0 = x0.norm();
            let mut x = x0;
            for k in 1..=opts.iteration_steps {
                x = t.0 * x;
                let bound = rate.powi(k as i32) * n0;
                if x.norm() > bound {
                    violations.push(Violation::Iteration { start: s, step: k, ratio: x.norm() / n0 });
                    break 'starts;
                }
            }
        }
    }
    TrialOutcome { norm, violations }
}

/// Realize random boundary triples of the three search regions and test `claim` on each.
pub fn verify_claim(
    a: &OperatorClassSpec,
    b: &OperatorClassSpec,
    c: &OperatorClassSpec,
    params: &DysParams,
    claim: Claim,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    params.validate()?;
    if let Claim::Averagedness { theta } = claim {
        if params.lambda != 1.0 {
            return Err(Error::Precondition("lambda = 1".into()));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidParameter(format!("theta must lie in (0, 1), got {theta}")));
        }
    }
    let [ra, rb, rc] = search_regions_for(a, b, c, params.alpha)?;
    let domain = SearchDomain::new([&ra, &rb, &rc])?;
    let specs = [a, b, c];

    let run_trial = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(i as u64);
        let z = [0, 1, 2].map(|k| random_boundary_point(&domain.pieces[k], &mut rng));
        (Some(i), z, check_triple(z, specs, params, &claim, opts, &mut rng))
    };
    let run_probe = |(i, z): (usize, &[ComplexPoint; 3])| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(u64::MAX - i as u64);
        (None, *z, check_triple(*z, specs, params, &claim, opts, &mut rng))
    };
    let mut outcomes: Vec<_> = opts.probes.par_iter().enumerate().map(run_probe).collect();
    outcomes.extend((0..opts.n_trials).into_par_iter().map(run_trial).collect::<Vec<_>>());

    let mut report = VerificationReport {
        claim,
        trials: opts.n_trials,
        probes: opts.probes.len(),
        seed: opts.seed,
        max_norm: 0.0,
        membership_failures: 0,
        norm_violations: 0,
        iteration_violations: 0,
        counterexamples: Vec::new(),
        passed: true,
    };
    for (trial, z, out) in outcomes {
        report.max_norm = report.max_norm.max(out.norm);
        for v in out.violations {
            match v {
                Violation::Membership { .. } => report.membership_failures += 1,
                Violation::Norm { .. } => report.norm_violations += 1,
                Violation::Iteration { .. } => report.iteration_violations += 1,
            }
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                report.counterexamples.push(Counterexample { trial, z, violation: v });
            }
        }
    }
    report.passed = report.membership_failures + report.norm_violations + report.iteration_violations == 0;
    Ok(report)
}

pub fn verify_contraction(
    a: &OperatorClassSpec,
    b: &OperatorClassSpec,
    c: &OperatorClassSpec,
    params: &DysParams,
    rho: f64,
    n_trials: usize,
    rng_seed: u64,
) -> Result<VerificationReport> {
    let opts = VerifyOptions { n_trials, seed: rng_seed, ..VerifyOptions::default() };
    verify_claim(a, b, c, params, Claim::Contraction { rho }, &opts)
}

pub fn verify_averagedness(
    a: &OperatorClassSpec,
    b: &OperatorClassSpec,
    c: &OperatorClassSpec,
    alpha: f64,
    theta: f64,
    n_trials: usize,
    rng_seed: u64,
) -> Result<VerificationReport> {
    let params = DysParams::new(alpha, 1.0)?;
    let opts = VerifyOptions { n_trials, seed: rng_seed, ..VerifyOptions::default() };
    verify_claim(a, b, c, &params, Claim::Averagedness { theta }, &opts)
}
