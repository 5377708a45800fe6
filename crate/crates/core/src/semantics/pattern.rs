//! Event patterns: an event whose input fields may still be waiting for a
//! value, either from a synchronising output or from the channel domain.

use std::sync::Arc;

use crate::event::{Component, EventName, Label};
use crate::process::{EventSet, RenamingRelation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Field {
    Val(i64),
    /// Pending input; all listed variables receive the eventual value.
    Bind(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Pattern {
    pub parts: Arc<[String]>,
    pub fields: Vec<Field>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Membership {
    Yes,
    No,
    /// Decided only once pending inputs have values.
    Depends,
}

enum PComp<'a> {
    Atom(&'a str),
    Int(i64),
    Pending,
}

impl Pattern {
    pub fn concrete(name: &EventName) -> Pattern {
        Pattern {
            parts: name.parts.clone(),
            fields: name.data.iter().map(|&v| Field::Val(v)).collect(),
        }
    }

    pub fn is_pending(&self) -> bool {
        self.fields.iter().any(|f| matches!(f, Field::Bind(_)))
    }

    pub fn channel(&self) -> EventName {
        EventName {
            parts: self.parts.clone(),
            data: Vec::new(),
        }
    }

    pub fn pending_count(&self) -> usize {
        self.fields.iter().filter(|f| matches!(f, Field::Bind(_))).count()
    }

    /// The label of a fully resolved pattern.
    pub fn to_name(&self) -> Option<EventName> {
        let data = self
            .fields
            .iter()
            .map(|f| match f {
                Field::Val(v) => Some(*v),
                Field::Bind(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(EventName {
            parts: self.parts.clone(),
            data,
        })
    }

    fn comps(&self) -> impl Iterator<Item = PComp<'_>> {
        self.parts.iter().map(|p| PComp::Atom(p.as_str())).chain(self.fields.iter().map(|f| match f {
            Field::Val(v) => PComp::Int(*v),
            Field::Bind(_) => PComp::Pending,
        }))
    }

    fn len(&self) -> usize {
        self.parts.len() + self.fields.len()
    }

    /// Does `prefix` cover this pattern?
    pub fn covered_by(&self, prefix: &EventName) -> Membership {
        if prefix.len() > self.len() {
            return Membership::No;
        }
        let mut pending = false;
        for (want, have) in prefix.components().zip(self.comps()) {
            match (want, have) {
                (_, PComp::Pending) => pending = true,
                (Component::Atom(a), PComp::Atom(b)) if a == b => {}
                (Component::Int(a), PComp::Int(b)) if a == b => {}
                _ => return Membership::No,
            }
        }
        if pending {
            Membership::Depends
        } else {
            Membership::Yes
        }
    }

    pub fn member_of(&self, set: &EventSet) -> Membership {
        let mut out = Membership::No;
        for e in set {
            match self.covered_by(e) {
                Membership::Yes => return Membership::Yes,
                Membership::Depends => out = Membership::Depends,
                Membership::No => {}
            }
        }
        out
    }

    /// Replaces the covered prefix `from` by `to`.
    pub fn rename_prefix(&self, from: &EventName, to: &EventName) -> Pattern {
        let mut parts = to.parts.to_vec();
        let mut fields: Vec<Field> = to.data.iter().map(|&v| Field::Val(v)).collect();
        let skip = from.len();
        let mut idx = 0;
        for p in self.parts.iter() {
            if idx >= skip {
                parts.push(p.clone());
            }
            idx += 1;
        }
        for f in &self.fields {
            if idx >= skip {
                fields.push(f.clone());
            }
            idx += 1;
        }
        Pattern { parts: parts.into(), fields }
    }

    /// All concrete instances for a domain, with the input bindings each
    /// one implies.
    pub fn instances(&self, domain: &[i64]) -> Vec<(Pattern, Vec<(String, i64)>)> {
        let mut out = vec![(
            Pattern {
                parts: self.parts.clone(),
                fields: Vec::new(),
            },
            Vec::new(),
        )];
        for f in &self.fields {
            match f {
                Field::Val(v) => {
                    for (p, _) in &mut out {
                        p.fields.push(Field::Val(*v));
                    }
                }
                Field::Bind(vars) => {
                    let mut next = Vec::with_capacity(out.len() * domain.len());
                    for (p, binds) in &out {
                        for &v in domain {
                            let mut p2 = p.clone();
                            p2.fields.push(Field::Val(v));
                            let mut b2 = binds.clone();
                            b2.extend(vars.iter().map(|x| (x.clone(), v)));
                            next.push((p2, b2));
                        }
                    }
                    out = next;
                }
            }
        }
        out
    }
}

/// Handshake of two synchronising patterns. Returns the agreed pattern and
/// the bindings the handshake resolved.
pub(crate) fn unify(a: &Pattern, b: &Pattern) -> Option<(Pattern, Vec<(String, i64)>)> {
    if a.parts != b.parts || a.fields.len() != b.fields.len() {
        return None;
    }
    let mut binds = Vec::new();
    let mut fields = Vec::with_capacity(a.fields.len());
    for (x, y) in a.fields.iter().zip(&b.fields) {
        let f = match (x, y) {
            (Field::Val(u), Field::Val(v)) => {
                if u != v {
                    return None;
                }
                Field::Val(*u)
            }
            (Field::Val(v), Field::Bind(vars)) | (Field::Bind(vars), Field::Val(v)) => {
                binds.extend(vars.iter().map(|var| (var.clone(), *v)));
                Field::Val(*v)
            }
            (Field::Bind(u), Field::Bind(v)) => {
                let mut all = u.clone();
                all.extend(v.iter().cloned());
                Field::Bind(all)
            }
        };
        fields.push(f);
    }
    Some((
        Pattern {
            parts: a.parts.clone(),
            fields,
        },
        binds,
    ))
}

/// Relational renaming of a concrete label. Observable events not covered
/// by any source keep their name; `τ` and terminal events pass through.
pub fn apply_renaming(label: &Label, r: &RenamingRelation) -> Vec<Label> {
    match label {
        Label::Observable(name) => {
            let mut out: Vec<Label> = r
                .pairs()
                .filter(|(from, _)| from.covers(name))
                .map(|(from, to)| Label::Observable(name.replace_prefix(from, to)))
                .collect();
            if out.is_empty() {
                out.push(label.clone());
            }
            out.sort();
            out.dedup();
            out
        }
        _ => vec![label.clone()],
    }
}
