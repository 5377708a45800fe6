//! Identifiers of the inference rules, one per rule. Every transition
//! records the identifiers of the rules in its derivation.

/// `(identifier, conclusion shape)` for every rule the engine implements.
pub const RULES: &[(&str, &str)] = &[
    // standard processes
    ("skip", "SKIP -✓-> STOP"),
    ("throw", "THROW -!-> STOP"),
    ("yield", "YIELD -ω-> STOP, ω ∈ {?, ✓}"),
    ("emit", "EMIT(ω) -ω-> STOP"),
    ("atom", "a -a-> SKIP"),
    ("atom-interrupt-before", "a -?-> STOP (interruptible atoms)"),
    ("atom-interrupt-after", "a -a-> STOP (interruptible atoms)"),
    ("prefix", "a -> p -a-> p"),
    ("seq-step", "p;q -a-> p';q"),
    ("seq-done", "p;q -τ-> q when p -✓->"),
    ("seq-abort", "p;q -ω-> p' when p -ω-> p', ω ∈ {!, ?}"),
    ("ext-left", "p [] q -a-> p' (a observable or terminal)"),
    ("ext-right", "p [] q -b-> q'"),
    ("ext-tau-left", "p [] q -τ-> p' [] q"),
    ("ext-tau-right", "p [] q -τ-> p [] q'"),
    ("int-left", "p |~| q -τ-> p"),
    ("int-right", "p |~| q -τ-> q"),
    ("handler-step", "p [> q -a-> p' [> q"),
    ("handler-catch", "p [> q -τ-> q when p -!->"),
    ("handler-end", "p [> q -ω-> p' when p -ω-> p', ω ∈ {✓, ?}"),
    ("par-left", "p ||A q -b-> p' ||A q, b ∉ A"),
    ("par-right", "p ||A q -c-> p ||A q', c ∉ A"),
    ("par-sync", "p ||A q -a-> p' ||A q', a ∈ A"),
    ("par-term", "p ||A q -ω&ω'-> p' ||A q', a side that is STOP dropped"),
    ("txn-step", "[pp] -a-> [pp']"),
    ("txn-fault", "[pp] -!-> p (τ when faults are contained)"),
    ("txn-yield", "[pp] -?-> p (τ when faults are contained)"),
    ("txn-done", "[pp] -✓-> STOP"),
    ("hide-pass", "p \\ A -b-> p' \\ A, b ∉ A"),
    ("hide-hidden", "p \\ A -τ-> p' \\ A when p -a->, a ∈ A"),
    ("hide-term", "p \\ A -ω-> STOP"),
    ("rename-map", "p [[R]] -b-> p' [[R]] when p -a->, a R b"),
    ("rename-tau", "p [[R]] -τ-> p' [[R]]"),
    ("rename-term", "p [[R]] -ω-> STOP"),
    ("if-true", "If true Then p Else q -τ-> p"),
    ("if-false", "If false Then p Else q -τ-> q"),
    ("while-unfold", "While b Do p -τ-> If b Then (p; While b Do p) Else SKIP"),
    ("named", "N -τ-> p when N = p"),
    ("assign", "X := p -τ-> SKIP, ρ[X ↦ p]"),
    ("var-retrieve", "X -τ-> ρ(X)"),
    ("aux-step", "<p, q> -a-> <p', q>"),
    ("aux-end", "<p, q> -ω-> q"),
    // compensable processes
    ("pair-step", "p / q -a-> p' / q"),
    ("pair-done", "p / q -✓-> q"),
    ("pair-abort", "p / q -ω-> SKIP, ω ∈ {!, ?}"),
    ("varpair-step", "p / X -a-> p' / X"),
    ("varpair-done", "p / X -✓-> X"),
    ("varpair-abort", "p / X -ω-> SKIP, ω ∈ {!, ?}"),
    ("cseq-step", "pp;qq -a-> pp';qq"),
    ("cseq-done", "pp;qq -τ-> <qq, p> when pp -✓-> p"),
    ("cseq-abort", "pp;qq -ω-> p when pp -ω-> p, ω ∈ {!, ?}"),
    ("caux-step", "<qq, p> -a-> <qq', p>"),
    ("caux-end", "<qq, p> -ω-> q;p when qq -ω-> q"),
    ("cext-left", "pp [] qq -a-> pp'"),
    ("cext-right", "pp [] qq -b-> qq'"),
    ("cext-tau-left", "pp [] qq -τ-> pp' [] qq"),
    ("cext-tau-right", "pp [] qq -τ-> pp [] qq'"),
    ("cext-term-left", "pp [] qq -ω-> p"),
    ("cext-term-right", "pp [] qq -ω'-> q"),
    ("cint-left", "pp |~| qq -τ-> pp"),
    ("cint-right", "pp |~| qq -τ-> qq"),
    ("cpar-left", "pp ||A qq -b-> pp' ||A qq, b ∉ A"),
    ("cpar-right", "pp ||A qq -c-> pp ||A qq', c ∉ A"),
    ("cpar-sync", "pp ||A qq -a-> pp' ||A qq', a ∈ A"),
    ("cpar-term", "pp ||A qq -ω&ω'-> p ||A q"),
    ("spec-left", "pp <> qq -a-> pp' <> qq"),
    ("spec-right", "pp <> qq -b-> pp <> qq'"),
    ("spec-fail", "pp <> qq -ω&ω'-> <EMIT(ω&ω'), p || q>, ω, ω' ∈ {!, ?}"),
    ("spec-left-wins", "pp <> qq -✓-> <q, p> when pp -✓-> p, qq -ω-> q"),
    ("spec-right-wins", "pp <> qq -✓-> <p, q> when qq -✓-> q, pp -ω-> p"),
    ("spec-both", "pp <> qq -✓-> <q, p> [] <p, q>"),
    ("chide-pass", "pp \\ A -b-> pp' \\ A, b ∉ A"),
    ("chide-hidden", "pp \\ A -τ-> pp' \\ A, a ∈ A"),
    ("chide-term", "pp \\ A -ω-> p \\ A"),
    ("crename-map", "pp [[R]] -b-> pp' [[R]]"),
    ("crename-tau", "pp [[R]] -τ-> pp' [[R]]"),
    ("crename-term", "pp [[R]] -ω-> p [[R]]"),
    ("cif-true", "If true Then pp Else qq -τ-> pp"),
    ("cif-false", "If false Then pp Else qq -τ-> qq"),
    ("cwhile-unfold", "While b Do pp -τ-> If b Then (pp; While b Do pp) Else SKIPP"),
    ("cnamed", "NN -τ-> pp when NN = pp"),
];

pub fn is_rule(id: &str) -> bool {
    RULES.iter().any(|(r, _)| *r == id)
}
