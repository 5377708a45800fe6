//! An interpreter and bounded state-space explorer for a compensating
//! process calculus with process variables.

pub mod event;
pub mod explorer;
pub mod expr;
pub mod parser;
pub mod process;
pub mod semantics;
pub mod store;

pub use event::{compose_terminal, EventName, Label, TerminalEvent};
pub use explorer::{build_lts, find_deadlocks, traces, Bounds, Lts, Marker, Trace};
pub use parser::{parse_model, parse_process, ModelDefinition};
pub use process::{CompProc, Process, StdProc};
pub use semantics::{EngineOptions, FaultLabelMode, Semantics, Transition, UnassignedVarMode};
pub use store::{Configuration, GlobalStore, LocalStore};
