//! The right-greedy, pattern-avoiding stack-sorting pass.
//!
//! One pass moves the input left to right through a single stack. Before the
//! next input element `x` is pushed, the machine pops the current top as long
//! as the stack *with `x` placed on top*, read top-to-bottom, would contain
//! some pattern of the forbidden set `T`; then `x` is pushed. When the input
//! is exhausted the stack drains to the output. West's classical map is the
//! special case `T = {21}` (the stack must increase top to bottom).
//!
//! A freshly pushed element is the topmost letter of any new top-to-bottom
//! occurrence, so push legality only needs to examine subsequences that start
//! at the new top; the rest of the stack was already legal. For `T = {21}`
//! this collapses to comparing against the top, and for `T = {123, 132}` to
//! asking whether at least two stacked elements exceed the incoming one.

use std::fmt;
use std::str::FromStr;

use crate::perm::{Element, Pattern, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineError {
    /// The forbidden set must contain at least one pattern.
    EmptySet,
    /// A length-1 pattern would forbid every push and the pass could never
    /// consume its input.
    UnsortablePattern,
    /// Text that could not be parsed as a pattern set.
    Parse(String),
}

impl fmt::Display for MachineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineError::EmptySet => write!(f, "pattern set must be nonempty"),
            MachineError::UnsortablePattern => {
                write!(
                    f,
                    "a length-1 pattern forbids every push; the machine could never run"
                )
            }
            MachineError::Parse(s) => write!(f, "cannot parse pattern set from {s:?}"),
        }
    }
}

impl std::error::Error for MachineError {}

impl From<PermError> for MachineError {
    fn from(e: PermError) -> Self {
        MachineError::Parse(e.to_string())
    }
}

/// How push legality is decided for this particular set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// `{21}`: the stack must increase top to bottom, so `x` may land only on
    /// a larger top.
    Increasing,
    /// `{123, 132}`: an element may have at most one larger element below it,
    /// so `x` may be pushed once fewer than two stacked elements exceed it.
    AtMostOneLarger,
    /// Anything else: search for an occurrence starting at the new top.
    Generic,
}

/// The finite set `T` of forbidden top-to-bottom stack patterns.
#[derive(Clone, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
    kind: Kind,
}

impl PatternSet {
    /// Deduplicates and canonically orders the patterns. Rejects the empty
    /// set and any pattern of length 1.
    pub fn new(mut patterns: Vec<Pattern>) -> Result<Self, MachineError> {
        patterns.sort_by(|a, b| {
            (a.len(), a.as_permutation().elements()).cmp(&(b.len(), b.as_permutation().elements()))
        });
        patterns.dedup();
        if patterns.is_empty() {
            return Err(MachineError::EmptySet);
        }
        if patterns.iter().any(|p| p.len() == 1) {
            return Err(MachineError::UnsortablePattern);
        }
        let kind = Self::classify(&patterns);
        Ok(PatternSet { patterns, kind })
    }

    fn classify(patterns: &[Pattern]) -> Kind {
        let shapes: Vec<&[Element]> = patterns
            .iter()
            .map(|p| p.as_permutation().elements())
            .collect();
        if shapes == [&[2, 1][..]] {
            Kind::Increasing
        } else if shapes == [&[1, 2, 3][..], &[1, 3, 2][..]] {
            Kind::AtMostOneLarger
        } else {
            Kind::Generic
        }
    }

    /// `{21}`, the classical increasing-stack set.
    pub fn west() -> Self {
        "21".parse().expect("21 is a valid pattern set")
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.patterns {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet({self})")
    }
}

impl FromStr for PatternSet {
    type Err = MachineError;

    /// Parses comma-joined compact patterns, e.g. `"123,132"` or `"21"`.
    fn from_str(s: &str) -> Result<Self, MachineError> {
        let patterns = s
            .split(',')
            .map(|t| t.trim().parse::<Pattern>())
            .collect::<Result<Vec<_>, _>>()?;
        PatternSet::new(patterns)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackAction {
    Push,
    Pop,
}

impl fmt::Display for StackAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackAction::Push => write!(f, "push"),
            StackAction::Pop => write!(f, "pop"),
        }
    }
}

/// One push or pop, with the stack contents (top to bottom) after it fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: usize,
    pub action: StackAction,
    pub element: Element,
    pub stack_after: Vec<Element>,
}

/// The full event log of one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineTrace {
    pub events: Vec<TraceEvent>,
}

impl MachineTrace {
    /// The sequence of stack snapshots, one per event, top to bottom.
    pub fn stack_states(&self) -> Vec<Vec<Element>> {
        self.events.iter().map(|e| e.stack_after.clone()).collect()
    }
}

impl fmt::Display for MachineTrace {
    /// Line-oriented records `step action element stack`, the stack printed
    /// top-to-bottom comma-separated and `-` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            write!(f, "{} {} {} ", e.step, e.action, e.element)?;
            if e.stack_after.is_empty() {
                writeln!(f, "-")?;
            } else {
                let joined: Vec<String> = e.stack_after.iter().map(|v| v.to_string()).collect();
                writeln!(f, "{}", joined.join(","))?;
            }
        }
        Ok(())
    }
}

/// Stack cell carrying the largest and second-largest value at or below it,
/// so the `{123,132}` and `{21}` pop tests run in constant time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StackEntry {
    value: Element,
    max1: Element,
    max2: Element,
}

pub(crate) type Stack = Vec<StackEntry>;

fn push_entry(stack: &mut Stack, v: Element) {
    let (max1, max2) = match stack.last() {
        None => (v, 0),
        Some(top) => {
            if v > top.max1 {
                (v, top.max1)
            } else if v > top.max2 {
                (top.max1, v)
            } else {
                (top.max1, top.max2)
            }
        }
    };
    stack.push(StackEntry {
        value: v,
        max1,
        max2,
    });
}

/// Would the stack with `x` on top, read top-to-bottom, contain a forbidden
/// pattern? Only occurrences starting at `x` can be new.
fn push_blocked(stack: &Stack, x: Element, t: &PatternSet) -> bool {
    match t.kind {
        Kind::Increasing => stack.last().is_some_and(|top| top.value < x),
        Kind::AtMostOneLarger => stack.last().is_some_and(|top| top.max2 > x),
        Kind::Generic => t.patterns.iter().any(|p| {
            let pat = p.as_permutation().elements();
            let mut chosen = vec![x];
            occurs_below(stack, stack.len(), &mut chosen, pat)
        }),
    }
}

/// Extends a partial occurrence downward through `stack[..upper]`, keeping the
/// chosen values order-isomorphic to the matched pattern prefix.
fn occurs_below(stack: &Stack, upper: usize, chosen: &mut Vec<Element>, pat: &[Element]) -> bool {
    let j = chosen.len();
    if j == pat.len() {
        return true;
    }
    if upper < pat.len() - j {
        return false;
    }
    for idx in (0..upper).rev() {
        let v = stack[idx].value;
        let ok = chosen
            .iter()
            .zip(pat.iter())
            .all(|(&c, &pk)| (c < v) == (pk < pat[j]));
        if ok {
            chosen.push(v);
            if occurs_below(stack, idx, chosen, pat) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn record(
    trace: &mut Option<&mut Vec<TraceEvent>>,
    action: StackAction,
    element: Element,
    stack: &Stack,
) {
    if let Some(events) = trace.as_deref_mut() {
        let stack_after: Vec<Element> = stack.iter().rev().map(|e| e.value).collect();
        events.push(TraceEvent {
            step: events.len() + 1,
            action,
            element,
            stack_after,
        });
    }
}

fn run_pass(
    input: &[Element],
    t: &PatternSet,
    out: &mut Vec<Element>,
    stack: &mut Stack,
    mut trace: Option<&mut Vec<TraceEvent>>,
) {
    out.clear();
    stack.clear();
    for &x in input {
        while !stack.is_empty() && push_blocked(stack, x, t) {
            let popped = stack.pop().expect("stack checked nonempty");
            out.push(popped.value);
            record(&mut trace, StackAction::Pop, popped.value, stack);
        }
        push_entry(stack, x);
        record(&mut trace, StackAction::Push, x, stack);
    }
    while let Some(popped) = stack.pop() {
        out.push(popped.value);
        record(&mut trace, StackAction::Pop, popped.value, stack);
    }
}

/// Buffer-reusing pass for enumeration loops; no tracing cost.
pub(crate) fn apply_into(
    input: &[Element],
    t: &PatternSet,
    out: &mut Vec<Element>,
    stack: &mut Stack,
) {
    run_pass(input, t, out, stack, None);
}

/// One pass of the map `s_T`. The empty permutation passes through vacuously.
pub fn apply(pi: &Permutation, t: &PatternSet) -> Permutation {
    let mut out = Vec::with_capacity(pi.len());
    let mut stack = Stack::with_capacity(pi.len());
    run_pass(pi.elements(), t, &mut out, &mut stack, None);
    Permutation::from_vec_unchecked(out)
}

/// As [`apply`], also reconstructing every intermediate state.
pub fn apply_traced(pi: &Permutation, t: &PatternSet) -> (Permutation, MachineTrace) {
    let mut out = Vec::with_capacity(pi.len());
    let mut stack = Stack::with_capacity(pi.len());
    let mut events = Vec::with_capacity(2 * pi.len());
    run_pass(pi.elements(), t, &mut out, &mut stack, Some(&mut events));
    (
        Permutation::from_vec_unchecked(out),
        MachineTrace { events },
    )
}

/// West's deterministic stack-sorting map: one pass with `T = {21}`.
pub fn classical_sort_pass(pi: &Permutation) -> Permutation {
    apply(pi, &PatternSet::west())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_set_validation() {
        assert!("".parse::<PatternSet>().is_err());
        assert_eq!(
            "1".parse::<PatternSet>().err(),
            Some(MachineError::UnsortablePattern)
        );
        assert_eq!(ps("132,123,123").patterns().len(), 2);
        assert_eq!(ps("132,123").to_string(), "123,132");
        assert_eq!(ps("21").to_string(), "21");
    }

    #[test]
    fn west_map_golden_2143() {
        assert_eq!(apply(&p("2143"), &ps("21")), p("1234"));
        assert_eq!(classical_sort_pass(&p("2143")), p("1234"));
    }

    #[test]
    fn west_trace_walks_the_expected_states() {
        let (out, trace) = apply_traced(&p("2143"), &ps("21"));
        assert_eq!(out, p("1234"));
        assert_eq!(trace.events.len(), 8, "2n events for n = 4");
        let states: Vec<Vec<Element>> = trace.stack_states();
        let expected: Vec<Vec<Element>> = vec![
            vec![2],
            vec![1, 2],
            vec![2],
            vec![],
            vec![4],
            vec![3, 4],
            vec![4],
            vec![],
        ];
        assert_eq!(states, expected);
    }

    #[test]
    fn generalized_map_golden_52431() {
        assert_eq!(apply(&p("52431"), &ps("123,132")), p("43215"));
    }

    #[test]
    fn generalized_trace_pops_4_before_pushing_3() {
        let (out, trace) = apply_traced(&p("52431"), &ps("123,132"));
        assert_eq!(out, p("43215"));
        assert_eq!(trace.events.len(), 10);
        // Fifth event: 4 leaves the stack so that 3 can land on 2,5.
        assert_eq!(trace.events[3].action, StackAction::Pop);
        assert_eq!(trace.events[3].element, 4);
        assert_eq!(trace.events[4].action, StackAction::Push);
        assert_eq!(trace.events[4].element, 3);
        assert_eq!(trace.events[4].stack_after, vec![3, 2, 5]);
    }

    #[test]
    fn single_element_passes_through() {
        for t in ["21", "123,132", "123,213", "231,321"] {
            assert_eq!(apply(&p("1"), &ps(t)), p("1"));
        }
        let empty = Permutation::new(vec![]).unwrap();
        assert_eq!(apply(&empty, &ps("21")), empty);
    }

    #[test]
    fn hand_simulated_values() {
        assert_eq!(apply(&p("43215"), &ps("123,132")), p("32514"));
        assert_eq!(classical_sort_pass(&p("231")), p("213"));
        assert_eq!(classical_sort_pass(&p("12345")), p("12345"));
    }

    #[test]
    fn trace_length_is_always_2n() {
        for q in symmetric_group(5) {
            let (_, trace) = apply_traced(&q, &ps("123,132"));
            assert_eq!(trace.events.len(), 10);
        }
    }

    #[test]
    fn trace_serialization_is_line_oriented() {
        let (_, trace) = apply_traced(&p("21"), &ps("21"));
        let text = trace.to_string();
        assert_eq!(text, "1 push 2 2\n2 push 1 1,2\n3 pop 1 2\n4 pop 2 -\n");
    }
}
