//! Rational decomposition of cyclic permutation representations and the
//! per-orbit splitting criterion.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coherent::CoherentPartition;
use crate::holonomy::HolonomyAction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("cycle length {length} does not divide the group order {order}")]
    CycleLength { length: usize, order: usize },
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Real summands of the `Q`-irreducible representation on which a generator
/// acts with order `e`.
pub fn real_splits(e: usize) -> usize {
    if e <= 2 {
        1
    } else {
        euler_phi(e) / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RepPart {
    pub e: usize,
    pub m: usize,
    pub dim: usize,
    pub splits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicRepDecomposition {
    pub stabilizer_order: usize,
    /// Cycle lengths, descending, fixed points included.
    pub cycle_type: Vec<usize>,
    pub parts: Vec<RepPart>,
}

/// Decompose the permutation representation of `Z/n` whose generator has the
/// given cycle lengths.
pub fn decompose_cyclic_perm_rep(n: usize, cycles: &[usize]) -> Result<CyclicRepDecomposition, RepError> {
    if n == 0 {
        return Err(RepError::ZeroOrder);
    }
    if let Some(&length) = cycles.iter().find(|&&l| l == 0 || !n.is_multiple_of(l)) {
        return Err(RepError::CycleLength { length, order: n });
    }
    let parts = (1..=n)
        .filter(|e| n.is_multiple_of(*e))
        .filter_map(|e| {
            let m = cycles.iter().filter(|&&l| l % e == 0).count();
            (m > 0).then(|| RepPart { e, m, dim: euler_phi(e), splits: real_splits(e) })
        })
        .collect();
    let mut cycle_type = cycles.to_vec();
    cycle_type.sort_unstable_by(|a, b| b.cmp(a));
    Ok(CyclicRepDecomposition { stabilizer_order: n, cycle_type, parts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Realizability {
    Guaranteed,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitVerdict {
    pub orbit_index: usize,
    /// Component index of the representative.
    pub rep: usize,
    pub orbit: Vec<usize>,
    pub c: u8,
    pub decomposition: Option<CyclicRepDecomposition>,
    /// `None` when undecided.
    pub pass: Option<bool>,
    pub failing_part: Option<RepPart>,
    pub reason: String,
}

impl OrbitVerdict {
    pub fn to_json(&self, part: &CoherentPartition) -> Value {
        let pass = match self.pass {
            Some(b) => Value::Bool(b),
            None => Value::String("undecided".into()),
        };
        json!({
            "rep": part.name(self.rep),
            "orbit": self.orbit.iter().map(|&i| part.name(i)).collect::<Vec<_>>(),
            "size": part.component(self.rep).len(),
            "c": self.c,
            "stabilizer_order": self.decomposition.as_ref().map(|d| d.stabilizer_order),
            "cycle_type": self.decomposition.as_ref().map(|d| d.cycle_type.clone()),
            "parts": self.decomposition.as_ref().map(|d| d.parts.clone()).unwrap_or_default(),
            "pass": pass,
            "failing_part": self.failing_part,
            "reason": self.reason,
        })
    }
}

/// Verdict for orbit `i` evaluated at `component` (any member of the orbit)
/// using stabilizer generator `generator` (an element index), or the
/// default choices when `None`.
pub fn orbit_verdict_at(
    action: &HolonomyAction,
    part: &CoherentPartition,
    i: usize,
    component: Option<usize>,
    generator: Option<usize>,
) -> OrbitVerdict {
    let orbit = action.orbits()[i].clone();
    let rep = component.unwrap_or(orbit[0]);
    let c = action.c_value(i);
    let stab: Vec<usize> =
        (0..action.order()).filter(|&e| action.component_action(e).apply(rep) == rep).collect();
    let n = stab.len();
    let gen = generator.or_else(|| {
        if component.is_none() {
            action.stabilizer(i).generator
        } else {
            stab.iter().copied().find(|&e| action.elements()[e].order() == n)
        }
    });
    let base = OrbitVerdict {
        orbit_index: i,
        rep,
        orbit,
        c,
        decomposition: None,
        pass: None,
        failing_part: None,
        reason: String::new(),
    };
    let Some(gen) = gen else {
        return OrbitVerdict {
            reason: format!("unsupported stabilizer: non-cyclic of order {n}"),
            ..base
        };
    };
    let h = &action.elements()[gen];
    let comp = part.component(rep);
    let cycles: Vec<usize> =
        h.all_cycles().into_iter().filter(|cyc| comp.contains(&cyc[0])).map(|cyc| cyc.len()).collect();
    let d = decompose_cyclic_perm_rep(n, &cycles).expect("cycle lengths divide the element order");
    let failing = d.parts.iter().copied().find(|p| p.m * p.splits <= c as usize);
    let reason = match failing {
        None => format!("every part has m·r > {c}"),
        Some(p) => format!("part e={} has m·r = {}·{} ≤ c = {c}", p.e, p.m, p.splits),
    };
    OrbitVerdict { decomposition: Some(d), pass: Some(failing.is_none()), failing_part: failing, reason, ..base }
}

pub fn orbit_verdict(action: &HolonomyAction, part: &CoherentPartition, i: usize) -> OrbitVerdict {
    orbit_verdict_at(action, part, i, None, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub orbits: Vec<OrbitVerdict>,
    pub realizability: Realizability,
}

impl Decision {
    pub fn to_json(&self, part: &CoherentPartition) -> Value {
        json!({
            "verdict": self.verdict,
            "orbits": self.orbits.iter().map(|o| o.to_json(part)).collect::<Vec<_>>(),
            "realizability": self.realizability,
        })
    }
}

pub fn decide(action: &HolonomyAction, part: &CoherentPartition) -> Decision {
    let orbits: Vec<OrbitVerdict> =
        (0..action.orbits().len()).into_par_iter().map(|i| orbit_verdict(action, part, i)).collect();
    let verdict = if orbits.iter().any(|o| o.pass == Some(false)) {
        Verdict::No
    } else if orbits.iter().any(|o| o.pass.is_none()) {
        Verdict::Undecided
    } else {
        Verdict::Yes
    };
    let realizability = if action.is_cyclic() { Realizability::Guaranteed } else { Realizability::Unknown };
    Decision { verdict, orbits, realizability }
}

/// Direct trivial-holonomy criterion: every component needs at least two
/// vertices, three if it is complete.
pub fn trivial_holonomy_check(part: &CoherentPartition) -> Verdict {
    let ok = (0..part.len()).all(|i| {
        let size = part.component(i).len();
        let c = if part.has_loop(i) { 2 } else { 1 };
        size > c
    });
    if ok {
        Verdict::Yes
    } else {
        Verdict::No
    }
}
