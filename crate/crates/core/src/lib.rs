//! Generalized pattern-avoiding stack-sorting on permutations.
//!
//! One pass of the map `s_T` feeds a permutation left to right through a
//! single stack that must avoid, top to bottom, every pattern of the finite
//! set `T`; pushing is preferred and the stack drains when the input ends.
//! West's classical stack-sorting map is `T = {21}`.
//!
//! The crate provides the permutation groundwork ([`perm`]), the machine
//! itself with optional event tracing ([`machine`]), the valley/half-
//! decreasing structure theory ([`structure`]), orbit dynamics and parallel
//! exhaustive scans of symmetric groups ([`dynamics`]), the extremal
//! `gamma`/`delta` families ([`families`]), and closed-form counting helpers
//! ([`counting`]).

pub mod counting;
pub mod dynamics;
pub mod families;
pub mod machine;
pub mod perm;
pub mod structure;

pub use dynamics::{
    orbit, orbit_two_pointer, ord_census, ord_of, ord_of_sn, periodic_points,
    periodic_points_generic, sortable_count, sortable_set, DynamicsError, EnumerationOptions,
    OrbitSummary, OrdCensus, DEFAULT_CEILING,
};
pub use families::{
    berlow_patterns, delta, gamma, minimally_sorted_count, minimally_sorted_set, FamilyError,
};
pub use machine::{
    apply, apply_traced, classical_sort_pass, MachineError, MachineTrace, PatternSet, StackAction,
    TraceEvent,
};
pub use perm::{symmetric_group, Element, Pattern, PermError, Permutation};
pub use structure::{
    decompose, is_half_decreasing, is_small, is_valley, small_threshold, valley_boundary,
    ValleyDecomposition,
};
