//! Lexicographic enumeration of unordered basis pairs `(i, j)`, `i <= j`,
//! shared by structure-constant tables and the `Delta_ij` cocycle basis.
//!
//! Indices are 0-based internally; the documented external ordering for an
//! n-dimensional algebra is `(1,1), (1,2), ..., (1,n), (2,2), ..., (n,n)`.

/// Number of unordered pairs, `n(n+1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of the pair `(i, j)` (0-based, any order) in the enumeration.
pub fn pair_pos(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    debug_assert!(j < n);
    // pairs with first index < i, then offset within row i
    i * n - i * (i + 1) / 2 + i + (j - i)
}

/// All pairs `(i, j)`, `i <= j`, in enumeration order (0-based).
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}
