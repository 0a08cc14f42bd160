//! Small combinatorics helpers shared by verification and census loops.

/// Binomial coefficient as u128; saturates are not expected at the sizes
/// used here (n <= 64 in every caller).
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The `rank`-th k-subset of [0, n) in lexicographic order.
pub(crate) fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut v = 0;
    for remaining in (1..=k).rev() {
        loop {
            let with_v = binomial(n - 1 - v, remaining - 1);
            if rank < with_v {
                out.push(v);
                v += 1;
                break;
            }
            rank -= with_v;
            v += 1;
        }
    }
    out
}

/// Calls `f` on every k-subset of [0, n) in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
