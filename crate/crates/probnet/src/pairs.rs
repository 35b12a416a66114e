//! Bijection between unordered node pairs (i, j), i < j, and the
//! lexicographic linear index t in 0..N with N = n(n-1)/2.
//!
//! Everything here is 0-based. The classical textbook formula for this
//! ordering is 1-based; ours is that formula shifted by one in both node
//! labels and the resulting index.

use crate::error::{Error, Result};

/// N = n(n-1)/2, the number of unordered pairs.
pub fn num_pairs(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("n = {n}, need n >= 2")));
    }
    Ok(n * (n - 1) / 2)
}

/// Lexicographic index of the pair (i, j), i < j < n:
/// t = i*n - i(i+1)/2 + (j - i - 1).
pub fn pair_to_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i >= j || j >= n {
        return Err(Error::InvalidPair(format!(
            "(i, j) = ({i}, {j}) with n = {n}, need i < j < n"
        )));
    }
    Ok(i * n - i * (i + 1) / 2 + (j - i - 1))
}

/// Inverse of [`pair_to_index`]: the unique (i, j), i < j, at linear index t.
pub fn index_to_pair(t: usize, n: usize) -> Result<(usize, usize)> {
    let total = num_pairs(n)?;
    if t >= total {
        return Err(Error::InvalidIndex(format!(
            "t = {t} out of range for n = {n} (N = {total})"
        )));
    }
    // Row i owns indices [offset(i), offset(i+1)) with offset(i) = i*n - i(i+1)/2.
    // Binary search for the greatest i with offset(i) <= t.
    let offset = |i: usize| i * n - i * (i + 1) / 2;
    let (mut lo, mut hi) = (0usize, n - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if offset(mid) <= t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let i = lo;
    let j = t - offset(i) + i + 1;
    Ok((i, j))
}

/// Number of ordered pairs (i, j), i != j, used by the directed extension.
pub fn num_ordered_pairs(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("n = {n}, need n >= 2")));
    }
    Ok(n * (n - 1))
}

/// Row-major index of the ordered pair (i, j), i != j, skipping the diagonal.
pub fn ordered_pair_to_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidPair(format!(
            "ordered (i, j) = ({i}, {j}) with n = {n}, need i != j, both < n"
        )));
    }
    Ok(i * (n - 1) + if j > i { j - 1 } else { j })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn num_pairs_examples() {
        assert_eq!(num_pairs(2).unwrap(), 1);
        assert_eq!(num_pairs(4).unwrap(), 6);
        assert_eq!(num_pairs(100).unwrap(), 4950);
        assert!(matches!(num_pairs(1), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn index_examples_n4() {
        // Oracle: explicit lexicographic enumeration of the 6 pairs of n = 4.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (t, &(i, j)) in pairs.iter().enumerate() {
            assert_eq!(pair_to_index(i, j, 4).unwrap(), t);
            assert_eq!(index_to_pair(t, 4).unwrap(), (i, j));
        }
        assert_eq!(pair_to_index(1, 2, 4).unwrap(), 3);
        assert_eq!(pair_to_index(2, 3, 4).unwrap(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(pair_to_index(2, 2, 4), Err(Error::InvalidPair(_))));
        assert!(matches!(pair_to_index(3, 1, 4), Err(Error::InvalidPair(_))));
        assert!(matches!(pair_to_index(0, 4, 4), Err(Error::InvalidPair(_))));
        assert!(matches!(index_to_pair(6, 4), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn bijection_exhaustive() {
        // Both directions, every n up to 200 as the module contract states.
        for n in 2..=200 {
            let total = num_pairs(n).unwrap();
            let mut t_expected = 0usize;
            for i in 0..n {
                for j in (i + 1)..n {
                    let t = pair_to_index(i, j, n).unwrap();
                    assert_eq!(t, t_expected, "ordering broken at ({i},{j}) n={n}");
                    assert_eq!(index_to_pair(t, n).unwrap(), (i, j));
                    t_expected += 1;
                }
            }
            assert_eq!(t_expected, total);
        }
    }

    #[test]
    fn ordered_enumeration() {
        assert_eq!(num_ordered_pairs(2).unwrap(), 2);
        // n = 3 row-major without diagonal: (0,1) (0,2) (1,0) (1,2) (2,0) (2,1).
        let expect = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        for (t, &(i, j)) in expect.iter().enumerate() {
            assert_eq!(ordered_pair_to_index(i, j, 3).unwrap(), t);
        }
        assert!(ordered_pair_to_index(1, 1, 3).is_err());
    }
}
