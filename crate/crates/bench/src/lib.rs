//! Shared instances for the benchmarks under `benches/`.

use srg_core::classes::{ClassAtom, OperatorClassSpec};
use srg_core::DysParams;

pub struct Instance {
    pub a: OperatorClassSpec,
    pub b: OperatorClassSpec,
    pub c: OperatorClassSpec,
    pub params: DysParams,
}

fn spec(atoms: Vec<ClassAtom>) -> OperatorClassSpec {
    OperatorClassSpec::new(atoms).expect("valid class")
}

/// Monotone A, monotone ½-Lipschitz B, C ∈ 𝒞₁ ∩ 𝒮_{1/2}; α = λ = 1.
pub fn half_disk() -> Instance {
    Instance {
        a: OperatorClassSpec::monotone(),
        b: spec(vec![ClassAtom::Monotone, ClassAtom::Lipschitz { lip: 0.5 }]),
        c: spec(vec![ClassAtom::Cocoercive { beta: 1.0 }, ClassAtom::StronglyMonotone { mu: 0.5 }]),
        params: DysParams::new(1.0, 1.0).expect("valid params"),
    }
}

/// Strongly monotone Lipschitz A, monotone B, 1-cocoercive C; all parameters 1.
pub fn all_ones() -> Instance {
    Instance {
        a: spec(vec![ClassAtom::StronglyMonotone { mu: 1.0 }, ClassAtom::Lipschitz { lip: 1.0 }]),
        b: OperatorClassSpec::monotone(),
        c: OperatorClassSpec::cocoercive(1.0).expect("valid class"),
        params: DysParams::new(1.0, 1.0).expect("valid params"),
    }
}
