//! Maximum of `|ζ − s|` over a product of three region boundaries.
//!
//! The maximum modulus of a polynomial over a compact product is attained on
//! the product of boundaries, so the search never looks at interiors. The
//! pipeline is: exhaustive ε-grid → projected gradient ascent from the best
//! grid candidates → Lipschitz certificate `grid_best + L·r` built from grid
//! values only, so it stays valid even if every ascent stalls.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::OperatorClassSpec;
use crate::error::{Error, Result};
use crate::region::{sample_pieces, BoundaryPiece, Circle, ComplexPoint, Region};
use crate::symbol::{grad_shifted_modulus_sq, lipschitz_bound, zeta, DysParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    /// Boundary sample spacing.
    pub eps_grid: f64,
    pub ascent_step: f64,
    pub ascent_shrink: f64,
    pub max_iters: usize,
    /// Stop once an accepted step improves `|ζ − s|²` by less than this.
    pub stop_tol: f64,
    /// Number of grid candidates the ascent starts from.
    pub top_k: usize,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            eps_grid: 1.0 / 120.0,
            ascent_step: 1e-2,
            ascent_shrink: 0.5,
            max_iters: 500,
            stop_tol: 1e-12,
            top_k: 64,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        pos("eps_grid", self.eps_grid)?;
        pos("ascent_step", self.ascent_step)?;
        pos("stop_tol", self.stop_tol)?;
        if !(self.ascent_shrink > 0.0 && self.ascent_shrink < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "ascent_shrink must lie in (0, 1), got {}",
                self.ascent_shrink
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_point: [ComplexPoint; 3],
    pub grid_best_value: f64,
    pub grid_best_point: [ComplexPoint; 3],
    /// `grid_best_value + lipschitz_constant · covering_radius`.
    pub certified_upper: f64,
    pub lipschitz_constant: f64,
    /// Product-metric covering radius `√(r_A² + r_B² + r_C²)` of the grid.
    pub covering_radius: f64,
    pub per_boundary_covering: [f64; 3],
    pub enclosures: [Circle; 3],
    pub grid_sizes: [usize; 3],
    pub ascent_starts: usize,
    pub evaluations: u64,
}

/// Search domain: boundary decompositions of the three regions plus their enclosing disks.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchDomain {
    pub pieces: [Vec<BoundaryPiece>; 3],
    pub enclosures: [Circle; 3],
}

impl SearchDomain {
    pub fn new(regions: [&Region; 3]) -> Result<Self> {
        let mut pieces: [Vec<BoundaryPiece>; 3] = Default::default();
        let mut enclosures = [Circle::real(0.0, 0.0); 3];
        for (k, region) in regions.iter().enumerate() {
            enclosures[k] = region.smallest_disk().ok_or_else(|| {
                Error::UnboundedRegion(format!(
                    "region {} has no disk atom; add a bounding atom or enlarge the class",
                    ["A", "B", "C"][k]
                ))
            })?;
            pieces[k] = match region.boundary_pieces() {
                Err(Error::EmptyRegion) => match region.degenerate_point() {
                    Some(z) => vec![BoundaryPiece::Segment { p0: z, p1: z }],
                    None => return Err(Error::EmptyRegion),
                },
                other => other?,
            };
        }
        Ok(SearchDomain { pieces, enclosures })
    }

    fn project(&self, k: usize, z: ComplexPoint) -> ComplexPoint {
        project_to_pieces(&self.pieces[k], z)
    }
}

/// Nearest point of a boundary decomposition; ties go to the earlier piece.
pub fn project_to_pieces(pieces: &[BoundaryPiece], z: ComplexPoint) -> ComplexPoint {
    let mut best = z;
    let mut best_d = f64::INFINITY;
    for p in pieces {
        let q = p.project(z);
        let d = (q - z).norm_sqr();
        if d < best_d {
            best_d = d;
            best = q;
        }
    }
    best
}

/// Grid candidate ordered by value, ties broken toward the lexicographically smaller index.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Candidate {
    value_sq: f64,
    idx: [usize; 3],
}

impl Eq for Candidate {}

impl Ord for Candidate {
    /// `Greater` means "better".
    fn cmp(&self, other: &Self) -> Ordering {
        self.value_sq.total_cmp(&other.value_sq).then_with(|| other.idx.cmp(&self.idx))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Keeps the `k` best candidates seen.
struct TopK {
    k: usize,
    heap: BinaryHeap<std::cmp::Reverse<Candidate>>,
}

impl TopK {
    fn new(k: usize) -> Self {
        TopK { k, heap: BinaryHeap::with_capacity(k + 1) }
    }

    fn push(&mut self, c: Candidate) {
        if self.heap.len() < self.k {
            self.heap.push(std::cmp::Reverse(c));
        } else if let Some(worst) = self.heap.peek() {
            if c > worst.0 {
                self.heap.pop();
                self.heap.push(std::cmp::Reverse(c));
            }
        }
    }

    fn merge(mut self, other: TopK) -> TopK {
        for c in other.heap {
            self.push(c.0);
        }
        self
    }

    /// Best first.
    fn into_sorted(self) -> Vec<Candidate> {
        let mut v: Vec<Candidate> = self.heap.into_iter().map(|r| r.0).collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

/// Exhaustive grid scan. Returns the best candidates (best first), one per
/// `(i, j)` pair of A/B samples, so multistart seeds are spread out; the
/// first entry is the exact grid maximum.
fn grid_scan(boundaries: [&[ComplexPoint]; 3], p: &DysParams, k: usize, parallel: bool) -> Vec<Candidate> {
    let [pa, pb, pc] = boundaries;
    let l = p.lambda;
    let row = |i: usize| {
        let mut top = TopK::new(k.max(1));
        let za = pa[i];
        for (j, &zb) in pb.iter().enumerate() {
            // ζ − s = (u + 2v) − αv·z_C with u = 1 − λz_A − λz_B − s, v = λz_Az_B.
            let v = l * za * zb;
            let base = 1.0 - l * za - l * zb - p.s + 2.0 * v;
            let slope = p.alpha * v;
            let mut best = Candidate { value_sq: f64::NEG_INFINITY, idx: [i, j, 0] };
            for (m, &zc) in pc.iter().enumerate() {
                let value_sq = (base - slope * zc).norm_sqr();
                if value_sq > best.value_sq {
                    best = Candidate { value_sq, idx: [i, j, m] };
                }
            }
            top.push(best);
        }
        top
    };
    let top = if parallel {
        (0..pa.len()).into_par_iter().map(row).reduce(|| TopK::new(k.max(1)), TopK::merge)
    } else {
        (0..pa.len()).map(row).fold(TopK::new(k.max(1)), TopK::merge)
    };
    top.into_sorted()
}

/// Maximum of `|ζ − s|` over the Cartesian product of three point sets.
pub fn grid_evaluate(boundaries: [&[ComplexPoint]; 3], params: &DysParams) -> Result<(f64, [ComplexPoint; 3])> {
    params.validate()?;
    if boundaries.iter().any(|b| b.is_empty()) {
        return Err(Error::Precondition("every boundary needs at least one sample".into()));
    }
    let best = grid_scan(boundaries, params, 1, true)[0];
    let point = [0, 1, 2].map(|k| boundaries[k][best.idx[k]]);
    Ok((best.value_sq.sqrt(), point))
}

fn value_sq(z: &[ComplexPoint; 3], p: &DysParams) -> f64 {
    (zeta(z[0], z[1], z[2], p) - p.s).norm_sqr()
}

/// Projected gradient ascent on `|ζ − s|²`; never returns a worse point than `start`.
pub fn ascend(
    start: [ComplexPoint; 3],
    domain: &SearchDomain,
    params: &DysParams,
    config: &SearchConfig,
) -> (f64, [ComplexPoint; 3]) {
    let (value, point, _) = ascend_counting(start, domain, params, config);
    (value, point)
}

fn ascend_counting(
    start: [ComplexPoint; 3],
    domain: &SearchDomain,
    p: &DysParams,
    config: &SearchConfig,
) -> (f64, [ComplexPoint; 3], u64) {
    let mut x = start;
    let mut f = value_sq(&x, p);
    let mut evals = 1u64;
    let mut step = config.ascent_step;
    let max_step = config.ascent_step * 1e3;
    let min_step = config.ascent_step * 1e-14;
    for _ in 0..config.max_iters {
        let g = grad_shifted_modulus_sq(x[0], x[1], x[2], p);
        if g.iter().all(|d| d.norm_sqr() == 0.0) {
            break;
        }
        let mut accepted = None;
        while step >= min_step {
            let y = [0, 1, 2].map(|k| domain.project(k, x[k] + step * g[k]));
            let fy = value_sq(&y, p);
            evals += 1;
            if fy >= f {
                accepted = Some((y, fy));
                break;
            }
            step *= config.ascent_shrink;
        }
        let Some((y, fy)) = accepted else { break };
        let gain = fy - f;
        x = y;
        f = fy;
        if gain < config.stop_tol {
            break;
        }
        step = (step / config.ascent_shrink).min(max_step);
    }
    (f.sqrt(), x, evals)
}

/// Full search over explicit regions (resolvent regions of A and B, region of C).
pub fn search_regions(regions: [&Region; 3], params: &DysParams, config: &SearchConfig) -> Result<SearchResult> {
    params.validate()?;
    config.validate()?;
    let domain = SearchDomain::new(regions)?;
    let mut samples = Vec::with_capacity(3);
    for pieces in &domain.pieces {
        samples.push(sample_pieces(pieces, config.eps_grid)?);
    }
    let boundaries = [&samples[0].points[..], &samples[1].points[..], &samples[2].points[..]];
    let grid_sizes = boundaries.map(<[ComplexPoint]>::len);

    let candidates = grid_scan(boundaries, params, config.top_k.max(1), config.parallel);
    let grid_best = candidates[0];
    let grid_best_point = [0, 1, 2].map(|k| boundaries[k][grid_best.idx[k]]);
    let grid_best_value = grid_best.value_sq.sqrt();

    let starts: Vec<[ComplexPoint; 3]> =
        candidates.iter().take(config.top_k).map(|c| [0, 1, 2].map(|k| boundaries[k][c.idx[k]])).collect();
    let run = |s: &[ComplexPoint; 3]| ascend_counting(*s, &domain, params, config);
    let runs: Vec<(f64, [ComplexPoint; 3], u64)> =
        if config.parallel { starts.par_iter().map(run).collect() } else { starts.iter().map(run).collect() };

    // Ties keep the earlier start, so the reduction is schedule-independent.
    let mut best_value = grid_best_value;
    let mut best_point = grid_best_point;
    for (v, x, _) in &runs {
        if *v > best_value {
            best_value = *v;
            best_point = *x;
        }
    }

    let per_boundary_covering = [samples[0].covering_radius, samples[1].covering_radius, samples[2].covering_radius];
    let covering_radius = per_boundary_covering.iter().map(|r| r * r).sum::<f64>().sqrt();
    let lipschitz_constant = lipschitz_bound(&domain.enclosures, params);
    let grid_evals: u64 = grid_sizes.iter().map(|&n| n as u64).product();
    Ok(SearchResult {
        best_value,
        best_point,
        grid_best_value,
        grid_best_point,
        certified_upper: grid_best_value + lipschitz_constant * covering_radius,
        lipschitz_constant,
        covering_radius,
        per_boundary_covering,
        enclosures: domain.enclosures,
        grid_sizes,
        ascent_starts: starts.len(),
        evaluations: grid_evals + runs.iter().map(|r| r.2).sum::<u64>(),
    })
}

/// The three search regions for a class triple: `srg(J_{αA})`, `srg(J_{αB})`, `srg(C)`.
pub fn search_regions_for(
    a: &OperatorClassSpec,
    b: &OperatorClassSpec,
    c: &OperatorClassSpec,
    alpha: f64,
) -> Result<[Region; 3]> {
    Ok([a.resolvent_srg(alpha)?, b.resolvent_srg(alpha)?, c.srg()])
}

pub fn search(
    a: &OperatorClassSpec,
    b: &OperatorClassSpec,
    c: &OperatorClassSpec,
    params: &DysParams,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let [ra, rb, rc] = search_regions_for(a, b, c, params.alpha)?;
    search_regions([&ra, &rb, &rc], params, config)
}
