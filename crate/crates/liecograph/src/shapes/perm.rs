//! Permutations and Koszul signs.

use alloc::vec::Vec;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            return out;
        }
    }
}

/// Advances `v` to the next lexicographic permutation; false when wrapped.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; perm.len()];
    for (i, p) in perm.iter().enumerate() {
        inv[*p] = i;
    }
    inv
}

/// Parity of the Koszul sign for moving the item at position `i` to
/// position `perm[i]`, where items carry the given degrees.
///
/// Counts inverted pairs whose degrees are both odd.
pub fn koszul_parity(perm: &[usize], degrees: &[i32]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        if degrees[i] % 2 == 0 {
            continue;
        }
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && degrees[j] % 2 != 0 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Applies `perm` to a sequence: the item at position `i` moves to `perm[i]`.
pub fn permute<T: Clone>(items: &[T], perm: &[usize]) -> Vec<T> {
    let mut out: Vec<Option<T>> = alloc::vec![None; items.len()];
    for (i, item) in items.iter().enumerate() {
        out[perm[i]] = Some(item.clone());
    }
    out.into_iter().map(|x| x.expect("perm is a bijection")).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn koszul_swap() {
        assert!(koszul_parity(&[1, 0], &[1, 1]));
        assert!(!koszul_parity(&[1, 0], &[1, 2]));
        // moving an odd item past two odd items is even
        assert!(!koszul_parity(&[2, 0, 1], &[1, 1, 1]));
    }

    #[test]
    fn permute_moves_items() {
        assert_eq!(permute(&['a', 'b', 'c'], &[2, 0, 1]), vec!['b', 'c', 'a']);
        assert_eq!(inverse(&[2, 0, 1]), vec![1, 2, 0]);
    }
}
