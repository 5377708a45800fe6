//! Bounded exploration of the transition relation: labelled transition
//! systems, trace sets, deadlocks and compensation phases.

mod compensation;
mod lts;
mod traces;


use std::fmt;

use thiserror::Error;

use crate::event::Label;
use crate::semantics::StepError;

pub use compensation::{compensation_phases, compensation_trace, CompensationPhase, FaultSelector};
pub use lts::{build_lts, Lts, LtsEdge};
pub use traces::{find_deadlocks, traces, Deadlock, Marker, Trace};

/// Exploration budget. Depth counts every step, `τ` included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_depth: 64,
            max_states: 100_000,
        }
    }
}

impl Bounds {
    pub fn depth(max_depth: usize) -> Self {
        Bounds {
            max_depth,
            ..Bounds::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    /// A step failed; `path` is the label sequence that reached the state.
    #[error("{error} (after {})", PathDisplay(.path))]
    Step { error: StepError, path: Vec<Label> },
    #[error("no path through a transaction fault matches the selector")]
    NoMatchingPath,
}

struct PathDisplay<'a>(&'a [Label]);

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<initial state>");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
