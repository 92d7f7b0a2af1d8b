//! Permutations of distinct positive integers, reduction, and pattern containment.
//!
//! Positions are 1-based throughout. A permutation is *standard* when its
//! element set is exactly `{1..n}`; non-standard permutations (for example
//! `5 7 8 1 6`) are first-class values so that reduction has something to do.

use std::fmt;
use std::str::FromStr;

/// Element type. Values fit comfortably; positions up to `u32::MAX` are far
/// beyond the exhaustive-search scales this crate targets.
pub type Element = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    /// The operation needs at least one element.
    Empty,
    /// An element appeared twice.
    Duplicate(Element),
    /// Elements must be positive integers.
    NonPositive,
    /// `index_of` was asked for a value that does not occur.
    NotFound(Element),
    /// A pattern must be a standard permutation.
    NotStandard,
    /// Text that could not be parsed as a permutation.
    Parse(String),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::Empty => write!(f, "permutation must be nonempty"),
            PermError::Duplicate(v) => write!(f, "duplicate element {v}"),
            PermError::NonPositive => write!(f, "elements must be positive integers"),
            PermError::NotFound(v) => write!(f, "element {v} does not occur"),
            PermError::NotStandard => write!(f, "pattern must use exactly the values 1..=k"),
            PermError::Parse(s) => write!(f, "cannot parse permutation from {s:?}"),
        }
    }
}

impl std::error::Error for PermError {}

/// A sequence of distinct positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    elems: Vec<Element>,
}

impl Permutation {
    /// Builds a permutation, rejecting zero and duplicate elements.
    pub fn new(elems: Vec<Element>) -> Result<Self, PermError> {
        if elems.contains(&0) {
            return Err(PermError::NonPositive);
        }
        let mut sorted = elems.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(PermError::Duplicate(w[0]));
            }
        }
        Ok(Permutation { elems })
    }

    /// Internal constructor for values already known to be valid.
    pub(crate) fn from_vec_unchecked(elems: Vec<Element>) -> Self {
        debug_assert!(Permutation::new(elems.clone()).is_ok());
        Permutation { elems }
    }

    /// The identity permutation `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            elems: (1..=n as Element).collect(),
        }
    }

    /// The reverse identity `n n-1 ... 1`.
    pub fn reverse_identity(n: usize) -> Self {
        Permutation {
            elems: (1..=n as Element).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    /// 1-based position access. Panics when `i` is out of `1..=n`.
    pub fn at(&self, i: usize) -> Element {
        assert!(
            (1..=self.elems.len()).contains(&i),
            "position {i} out of range 1..={}",
            self.elems.len()
        );
        self.elems[i - 1]
    }

    /// Position access with the index reduced modulo `n` into `1..=n`, so
    /// `at_wrapped(0) == at(n)` and `at_wrapped(n + 1) == at(1)`.
    pub fn at_wrapped(&self, i: i64) -> Element {
        let n = self.elems.len() as i64;
        assert!(n > 0, "wrapped access on empty permutation");
        let j = i.rem_euclid(n);
        let j = if j == 0 { n } else { j };
        self.elems[(j - 1) as usize]
    }

    /// True when the element set is exactly `{1..n}`.
    pub fn is_standard(&self) -> bool {
        let n = self.elems.len() as Element;
        self.elems.iter().all(|&v| v <= n)
    }

    /// Positionwise rank replacement: the unique standard permutation
    /// order-isomorphic to `self` (e.g. `5 7 8 1 6` reduces to `2 4 5 1 3`).
    pub fn reduce(&self) -> Result<Permutation, PermError> {
        if self.elems.is_empty() {
            return Err(PermError::Empty);
        }
        let mut order: Vec<usize> = (0..self.elems.len()).collect();
        order.sort_unstable_by_key(|&i| self.elems[i]);
        let mut out = vec![0 as Element; self.elems.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as Element + 1;
        }
        Ok(Permutation { elems: out })
    }

    /// True when some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Pattern) -> bool {
        let pat = pattern.as_permutation().elements();
        if pat.len() > self.elems.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(pat.len());
        contains_from(&self.elems, pat, &mut chosen, 0)
    }

    pub fn avoids(&self, pattern: &Pattern) -> bool {
        !self.contains(pattern)
    }

    /// 1-based position of the value `v`.
    pub fn index_of(&self, v: Element) -> Result<usize, PermError> {
        self.elems
            .iter()
            .position(|&x| x == v)
            .map(|p| p + 1)
            .ok_or(PermError::NotFound(v))
    }

    pub fn reverse(&self) -> Permutation {
        Permutation {
            elems: self.elems.iter().rev().copied().collect(),
        }
    }

    /// Concatenation; fails when the two element sets overlap.
    pub fn concat(&self, other: &Permutation) -> Result<Permutation, PermError> {
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        Permutation::new(elems)
    }

    /// True when `at(i)` is the minimum of the prefix ending at `i`.
    pub fn is_ltr_min(&self, i: usize) -> bool {
        let v = self.at(i);
        self.elems[..i].iter().all(|&x| x >= v)
    }

    /// 1-based positions of all left-to-right minima.
    pub fn ltr_min_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut min = Element::MAX;
        for (i, &v) in self.elems.iter().enumerate() {
            if v < min {
                min = v;
                out.push(i + 1);
            }
        }
        out
    }

    /// Number of positions `i` with `at(i) > at(i+1)`.
    pub fn descent_count(&self) -> usize {
        self.elems.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// 1-based inclusive window `[lo, hi]` as a new permutation; an inverted
    /// window (`lo > hi`) yields the empty permutation.
    pub fn window(&self, lo: usize, hi: usize) -> Permutation {
        if lo > hi {
            return Permutation { elems: Vec::new() };
        }
        assert!(lo >= 1 && hi <= self.elems.len(), "window out of range");
        Permutation {
            elems: self.elems[lo - 1..hi].to_vec(),
        }
    }
}

fn contains_from(
    values: &[Element],
    pat: &[Element],
    chosen: &mut Vec<Element>,
    start: usize,
) -> bool {
    let j = chosen.len();
    if j == pat.len() {
        return true;
    }
    // Not enough values left to finish the pattern.
    let last_start = values.len() - (pat.len() - j);
    for p in start..=last_start {
        let v = values[p];
        let ok = chosen
            .iter()
            .zip(pat.iter())
            .all(|(&c, &pk)| (c < v) == (pk < pat[j]));
        if ok {
            chosen.push(v);
            if contains_from(values, pat, chosen, p + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

impl fmt::Display for Permutation {
    /// Emits the comma-separated form, e.g. `5,2,4,3,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.elems {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts the comma-separated form (`5,2,4,3,1`) and, for all-digit
    /// strings without zeros, the compact form (`52431`). An all-digit string
    /// that fails as a compact permutation (say `11`) is read as one element.
    /// The compact form wins ties: a one-element permutation whose value has
    /// several distinct nonzero digits (say `12`) cannot be written without a
    /// comma, but no length-1 value past 9 ever prints from this crate.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Parse(s.to_string()));
        }
        if s.contains(',') {
            let elems = s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Element>()
                        .map_err(|_| PermError::Parse(s.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Permutation::new(elems);
        }
        if !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(PermError::Parse(s.to_string()));
        }
        if !s.contains('0') {
            let digits: Vec<Element> = s.bytes().map(|b| (b - b'0') as Element).collect();
            if let Ok(p) = Permutation::new(digits) {
                return Ok(p);
            }
        }
        let v = s
            .parse::<Element>()
            .map_err(|_| PermError::Parse(s.to_string()))?;
        Permutation::new(vec![v])
    }
}

/// A standard permutation used as a containment target.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Permutation);

impl Pattern {
    pub fn new(p: Permutation) -> Result<Self, PermError> {
        if p.is_empty() {
            return Err(PermError::Empty);
        }
        if !p.is_standard() {
            return Err(PermError::NotStandard);
        }
        Ok(Pattern(p))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }
}

impl fmt::Display for Pattern {
    /// Patterns print compactly (`132`) when every value is a single digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in self.0.elements() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        Pattern::new(s.parse::<Permutation>()?)
    }
}

/// Advances `values` to its lexicographic successor; false when it was the
/// last arrangement.
pub(crate) fn next_permutation(values: &mut [Element]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Iterator over all of `S_n` in lexicographic order.
pub struct SymmetricGroup {
    state: Option<Vec<Element>>,
}

impl Iterator for SymmetricGroup {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let state = self.state.as_mut()?;
        let item = Permutation::from_vec_unchecked(state.clone());
        if !next_permutation(state) {
            self.state = None;
        }
        Some(item)
    }
}

/// All permutations of `{1..n}` in lexicographic order. `n = 0` yields nothing.
pub fn symmetric_group(n: usize) -> SymmetricGroup {
    SymmetricGroup {
        state: if n == 0 {
            None
        } else {
            Some((1..=n as Element).collect())
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Permutation::new(vec![1, 0, 2]), Err(PermError::NonPositive));
        assert_eq!(
            Permutation::new(vec![3, 1, 3]),
            Err(PermError::Duplicate(3))
        );
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn reduce_matches_known_values() {
        assert_eq!(p("57816").reduce().unwrap(), p("24513"));
        assert_eq!(p("48917").reduce().unwrap(), p("24513"));
        assert_eq!(p("12345").reduce().unwrap(), p("12345"));
        // Oracle-derived: ranks of 9,1,5 are 3,1,2.
        assert_eq!(p("9,1,5").reduce().unwrap(), p("312"));
        assert_eq!(
            Permutation::new(vec![]).unwrap().reduce(),
            Err(PermError::Empty)
        );
    }

    #[test]
    fn reduce_is_idempotent_for_small_n() {
        for n in 1..=7 {
            for q in symmetric_group(n) {
                let r = q.reduce().unwrap();
                assert_eq!(r, q, "standard permutations are fixed by reduction");
                assert_eq!(r.reduce().unwrap(), r);
            }
        }
    }

    #[test]
    fn containment_known_cases() {
        assert!(p("24513").contains(&pat("132")));
        assert!(p("24513").avoids(&pat("321")));
        assert!(p("12").avoids(&pat("123")), "pattern longer than host");
    }

    #[test]
    fn index_of_reads_positions() {
        assert_eq!(p("24513").index_of(1).unwrap(), 4);
        assert_eq!(p("4235167").index_of(1).unwrap(), 5);
        assert_eq!(p("43215").index_of(5).unwrap(), 5);
        assert_eq!(p("43215").index_of(9), Err(PermError::NotFound(9)));
    }

    #[test]
    fn reverse_and_concat() {
        assert_eq!(p("123").reverse(), p("321"));
        assert_eq!(p("321").reverse().reverse(), p("321"));
        let gamma5 = p("32145");
        let six = Permutation::new(vec![6]).unwrap();
        assert_eq!(gamma5.concat(&six).unwrap(), p("321456"));
        assert!(p("12").concat(&p("21")).is_err(), "overlapping values");
    }

    #[test]
    fn ltr_minima_by_prefix_scan() {
        // 2 is a prefix minimum at position 1, and 1 takes over at position 4.
        assert_eq!(p("24513").ltr_min_positions(), vec![1, 4]);
        assert_eq!(p("321").ltr_min_positions(), vec![1, 2, 3]);
        assert!(p("24513").is_ltr_min(4));
        assert!(!p("24513").is_ltr_min(2));
    }

    #[test]
    fn descent_count_counts_drops() {
        assert_eq!(p("12345").descent_count(), 0);
        assert_eq!(p("54321").descent_count(), 4);
        assert_eq!(p("24513").descent_count(), 1);
    }

    #[test]
    fn wrapped_access_reduces_modulo_n() {
        let q = p("24513");
        assert_eq!(q.at_wrapped(6), 2);
        assert_eq!(q.at_wrapped(0), 3);
        assert_eq!(q.at_wrapped(-1), 1);
        assert_eq!(q.at_wrapped(5), 3);
    }

    #[test]
    fn parsing_both_forms_round_trips() {
        assert_eq!(p("52431").elements(), &[5, 2, 4, 3, 1]);
        assert_eq!(p("5,2,4,3,1"), p("52431"));
        assert_eq!(p("10").elements(), &[10]);
        assert_eq!(p("11").elements(), &[11]);
        assert_eq!(p("11,12,7,5,8,4,3,6,2,9,1,10").len(), 12);
        assert!("".parse::<Permutation>().is_err());
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        for s in ["52431", "10,2,9", "7"] {
            let q = p(s);
            assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        }
    }

    #[test]
    fn pattern_requires_standard() {
        assert!(Pattern::new(p("132")).is_ok());
        assert!(Pattern::new(p("57816")).is_err());
        assert!("1".parse::<Pattern>().is_ok());
    }

    #[test]
    fn symmetric_group_is_lexicographic_and_complete() {
        let all: Vec<_> = symmetric_group(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], p("123"));
        assert_eq!(all[5], p("321"));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(symmetric_group(0).count(), 0);
        assert_eq!(symmetric_group(6).count(), 720);
    }
}
