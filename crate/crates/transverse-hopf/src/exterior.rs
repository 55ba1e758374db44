//! Sign bookkeeping for products of anticommuting generators.

use alloc::vec::Vec;

/// Merges two strictly increasing lists of odd generators.
///
/// Returns `None` when a generator repeats, otherwise the merged list and
/// `true` when the reordering is odd.
pub fn merge_odd<T: Ord + Clone>(a: &[T], b: &[T]) -> Option<(Vec<T>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                odd ^= (a.len() - i) % 2 == 1;
                out.push(b[j].clone());
                j += 1;
            }
            core::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, odd))
}

/// Sorts a list of odd generators, returning `None` on a repeat and
/// otherwise the parity of the sorting permutation.
pub fn sort_odd<T: Ord + Clone>(v: &[T]) -> Option<(Vec<T>, bool)> {
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    let mut odd = false;
    for x in v {
        let (merged, o) = merge_odd(&out, core::slice::from_ref(x))?;
        odd ^= o;
        out = merged;
    }
    Some((out, odd))
}
