//! Exact closed-form counts used as enumeration cross-checks.

/// Binomial coefficient with exact `u128` arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// The n-th Catalan number `C(2n, n) / (n + 1)`, counting the permutations
/// sorted by a single classical pass.
pub fn catalan(n: u64) -> u64 {
    (binomial(2 * n, n) / (n as u128 + 1)) as u64
}

/// Zeilberger's count of 2-stack-sortable permutations of length `n`:
/// `2 C(3n, n) / ((n + 1)(2n + 1))`.
pub fn two_stack_sortable_count(n: u64) -> u64 {
    (2 * binomial(3 * n, n) / ((n as u128 + 1) * (2 * n as u128 + 1))) as u64
}

/// `n!` as `u64`; callers stay well inside range (20! < 2^64).
pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(24, 8), 735471);
        assert_eq!(binomial(4, 7), 0);
    }

    #[test]
    fn catalan_prefix() {
        let want = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(catalan(n as u64), w);
        }
    }

    #[test]
    fn two_stack_counts_divide_exactly() {
        let want = [1u64, 2, 6, 22, 91, 408, 1938, 9614];
        for (i, &w) in want.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(two_stack_sortable_count(n), w);
            assert_eq!(
                2 * binomial(3 * n, n) % ((n as u128 + 1) * (2 * n as u128 + 1)),
                0,
                "formula divides exactly"
            );
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(11), 39_916_800);
    }
}
