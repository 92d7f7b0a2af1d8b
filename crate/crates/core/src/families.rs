//! Constructive families: the extremal permutations `gamma(n)`, their derived
//! reversed slices `delta(n)`, and the minimally-sorted set.
//!
//! `gamma(n)` for odd `n >= 5` is
//! `((n+1)/2, 2, 3, ..., (n-1)/2, (n+3)/2, ..., n-2, 1, n-1, n)`, and for even
//! `n >= 6` it is `gamma(n-1)` with `n` appended. Its orbit under the
//! `{123,132}`-avoiding pass attains the maximum tail length over `S_n`.

use std::fmt;

use crate::dynamics::{ord_census, permutations_where, DynamicsError, EnumerationOptions};
use crate::machine::PatternSet;
use crate::perm::{Element, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// The family is defined from length 5 upward.
    TooShort { n: usize },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::TooShort { n } => {
                write!(f, "family member undefined for n = {n}; needs n >= 5")
            }
        }
    }
}

impl std::error::Error for FamilyError {}

/// The pattern set `{123,132}` that the minimally-sorted notion refers to.
pub fn berlow_patterns() -> PatternSet {
    "123,132".parse().expect("valid pattern set")
}

/// The extremal permutation of length `n >= 5`.
pub fn gamma(n: usize) -> Result<Permutation, FamilyError> {
    if n < 5 {
        return Err(FamilyError::TooShort { n });
    }
    if n.is_multiple_of(2) {
        let mut elems = gamma(n - 1)?.elements().to_vec();
        elems.push(n as Element);
        return Ok(Permutation::from_vec_unchecked(elems));
    }
    let n_e = n as Element;
    let mut elems: Vec<Element> = Vec::with_capacity(n);
    elems.push(n_e.div_ceil(2));
    elems.extend(2..=(n_e - 1) / 2);
    elems.extend((n_e + 3) / 2..=n_e - 2);
    elems.push(1);
    elems.push(n_e - 1);
    elems.push(n_e);
    debug_assert_eq!(elems.len(), n);
    Ok(Permutation::from_vec_unchecked(elems))
}

/// The reversed interior slice of `gamma(n)`: positions `2..=n-3` for odd `n`
/// and `2..=n-4` for even `n`, reversed. Generally not standard.
pub fn delta(n: usize) -> Result<Permutation, FamilyError> {
    let g = gamma(n)?;
    let hi = if n % 2 == 1 { n - 3 } else { n - 4 };
    Ok(g.window(2, hi).reverse())
}

/// Largest tail length over `S_n` together with how many permutations attain
/// it, under `{123,132}`.
pub fn minimally_sorted_count(
    n: usize,
    opts: &EnumerationOptions,
) -> Result<(usize, u64), DynamicsError> {
    let census = ord_census(n, &berlow_patterns(), opts)?;
    let max = census.max_ord();
    Ok((max, census.count_with_ord(max)))
}

/// The minimally-sorted set: all permutations of `S_n` attaining `ord(S_n)`
/// under `{123,132}`, in lexicographic order.
pub fn minimally_sorted_set(
    n: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<Permutation>, DynamicsError> {
    let t = berlow_patterns();
    let max = ord_census(n, &t, opts)?.max_ord();
    permutations_where(n, &t, opts, |ord| ord == max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ord_of;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_matches_the_table() {
        assert_eq!(gamma(5).unwrap(), p("32145"));
        assert_eq!(gamma(6).unwrap(), p("321456"));
        assert_eq!(gamma(7).unwrap(), p("4235167"));
        assert_eq!(gamma(8).unwrap(), p("42351678"));
        assert_eq!(gamma(9).unwrap(), p("523467189"));
        assert_eq!(gamma(4), Err(FamilyError::TooShort { n: 4 }));
    }

    #[test]
    fn gamma_is_standard_up_to_20() {
        for n in 5..=20 {
            let g = gamma(n).unwrap();
            assert_eq!(g.len(), n);
            assert!(g.is_standard(), "gamma({n}) must be standard");
        }
    }

    #[test]
    fn delta_is_the_reversed_slice() {
        assert_eq!(delta(7).unwrap(), p("532"));
        assert_eq!(delta(9).unwrap(), p("76432"));
        assert_eq!(delta(6).unwrap(), p("2"));
        assert_eq!(delta(5).unwrap(), p("2"));
        assert_eq!(delta(8).unwrap(), p("532"));
        assert_eq!(delta(3), Err(FamilyError::TooShort { n: 3 }));
    }

    #[test]
    fn gamma_attains_the_maximum_tail() {
        let t = berlow_patterns();
        let opts = EnumerationOptions::default();
        for n in 5..=9 {
            let (max, _) = minimally_sorted_count(n, &opts).unwrap();
            assert_eq!(ord_of(&gamma(n).unwrap(), &t), max);
            assert_eq!(max, 2 * ((n - 1) / 2));
        }
    }

    #[test]
    fn minimally_sorted_members_all_attain_the_maximum() {
        let t = berlow_patterns();
        let opts = EnumerationOptions::default();
        let set = minimally_sorted_set(5, &opts).unwrap();
        let (max, count) = minimally_sorted_count(5, &opts).unwrap();
        assert_eq!(set.len() as u64, count);
        assert!(set.contains(&gamma(5).unwrap()));
        assert!(set.iter().all(|q| ord_of(q, &t) == max));
        let mut sorted = set.clone();
        sorted.sort();
        assert_eq!(set, sorted, "lexicographic order");
    }
}
