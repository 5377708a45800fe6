//! Local (data) and global (process-variable) stores, and configurations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::process::{Process, StdProc};

/// Data-variable store σ. Ordered map, so equality and hashing do not
/// depend on insertion order. Copies share the map until one is changed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalStore(Arc<BTreeMap<String, i64>>);

impl LocalStore {
    pub fn get(&self, var: &str) -> Option<i64> {
        self.0.get(var).copied()
    }

    pub fn set(&mut self, var: &str, value: i64) {
        Arc::make_mut(&mut self.0).insert(var.to_string(), value);
    }

    pub fn with(&self, var: &str, value: i64) -> LocalStore {
        let mut out = self.clone();
        out.set(var, value);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &i64)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, i64)> for LocalStore {
    fn from_iter<T: IntoIterator<Item = (String, i64)>>(iter: T) -> Self {
        LocalStore(Arc::new(iter.into_iter().collect()))
    }
}

impl fmt::Display for LocalStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}

/// Process-variable store ρ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobalStore(Arc<BTreeMap<String, StdProc>>);

impl GlobalStore {
    pub fn get(&self, var: &str) -> Option<&StdProc> {
        self.0.get(var)
    }

    pub fn set(&mut self, var: &str, value: StdProc) {
        Arc::make_mut(&mut self.0).insert(var.to_string(), value);
    }

    pub fn contains(&self, var: &str) -> bool {
        self.0.contains_key(var)
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &StdProc)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, StdProc)> for GlobalStore {
    fn from_iter<T: IntoIterator<Item = (String, StdProc)>>(iter: T) -> Self {
        GlobalStore(Arc::new(iter.into_iter().collect()))
    }
}

impl fmt::Display for GlobalStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:={v}")?;
        }
        f.write_str("}")
    }
}

/// `((p, σ), ρ)`: a process term with its two stores.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub proc: Process,
    pub sigma: LocalStore,
    pub rho: GlobalStore,
}

impl Configuration {
    pub fn new(proc: impl Into<Process>) -> Self {
        Configuration {
            proc: proc.into(),
            sigma: LocalStore::default(),
            rho: GlobalStore::default(),
        }
    }

    pub fn with_sigma(mut self, sigma: LocalStore) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_rho(mut self, rho: GlobalStore) -> Self {
        self.rho = rho;
        self
    }

    pub fn is_nil(&self) -> bool {
        matches!(self.proc, Process::Std(StdProc::Nil))
    }

    /// The process followed by σ and ρ when they are not empty.
    pub fn brief(&self) -> String {
        let mut s = self.proc.to_string();
        if !self.sigma.is_empty() {
            s.push_str(&format!(" σ{}", self.sigma));
        }
        if !self.rho.is_empty() {
            s.push_str(&format!(" ρ{}", self.rho));
        }
        s
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), {})", self.proc, self.sigma, self.rho)
    }
}
