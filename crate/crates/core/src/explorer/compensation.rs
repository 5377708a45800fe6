use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::event::{EventName, Label};
use crate::semantics::Semantics;
use crate::store::Configuration;

use super::{build_lts, ExploreError, Lts, Trace};

/// Picks the paths whose forward part performs the `through` events in
/// this order, possibly with other labels in between.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaultSelector {
    pub through: Vec<EventName>,
}

impl FaultSelector {
    pub fn any() -> Self {
        FaultSelector::default()
    }

    pub fn through<'a>(events: impl IntoIterator<Item = &'a str>) -> Self {
        FaultSelector {
            through: events
                .into_iter()
                .map(|e| EventName::parse(e).expect("valid event name"))
                .collect(),
        }
    }
}

/// A compensation activated by a transaction ending in `!` or `?`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompensationPhase {
    /// The activated compensation with the stores of the ending step.
    pub activated: Configuration,
    /// Observable traces of the compensation run on its own.
    pub traces: BTreeSet<Trace>,
}

/// Every compensation activated along a selected path. Each is explored
/// separately, so events of processes running alongside the compensation
/// do not appear in its traces.
pub fn compensation_phases(
    sem: &Semantics,
    lts: &Lts,
    selector: &FaultSelector,
) -> Result<Vec<CompensationPhase>, ExploreError> {
    let goal = selector.through.len();
    let start = (lts.initial, 0usize);
    let mut seen: HashSet<(usize, usize)> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut activated: BTreeSet<Configuration> = BTreeSet::new();
    while let Some((s, k)) = queue.pop_front() {
        for e in lts.outgoing(s) {
            if let (Some(comp), true) = (&e.activated, k == goal) {
                let target = &lts.states[e.dst];
                activated.insert(Configuration {
                    proc: comp.clone().into(),
                    sigma: target.sigma.clone(),
                    rho: target.rho.clone(),
                });
            }
            let advance = matches!(&e.label, Label::Observable(n) if k < goal && *n == selector.through[k]);
            let next = (e.dst, k + usize::from(advance));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut phases = Vec::new();
    for c in activated {
        let sub = build_lts(sem, c.clone(), lts.bounds)?;
        let traces = sub
            .traces(true)
            .into_iter()
            .map(|t| Trace::new(t.observable(), t.marker))
            .collect();
        phases.push(CompensationPhase { activated: c, traces });
    }
    Ok(phases)
}

/// The first compensation trace, in trace order, over all selected paths.
pub fn compensation_trace(sem: &Semantics, lts: &Lts, selector: &FaultSelector) -> Result<Trace, ExploreError> {
    compensation_phases(sem, lts, selector)?
        .into_iter()
        .flat_map(|p| p.traces)
        .min()
        .ok_or(ExploreError::NoMatchingPath)
}
