//! Binomials, subset and permutation enumeration.

use alloc::vec::Vec;

/// Largest player count the binomial arithmetic supports without overflow.
pub const MAX_PLAYERS: usize = 60;

/// `binom(m, r)`, zero whenever `r < 0` or `r > m` (and for negative `m`).
pub fn binom(m: i64, r: i64) -> u64 {
    if m < 0 || r < 0 || r > m {
        return 0;
    }
    let r = r.min(m - r) as u128;
    let m = m as u128;
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (m - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All `r`-subsets of `0..n` as sorted index vectors, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, r: usize) -> Self {
        let current = (r <= n).then(|| (0..r).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let r = out.len();
        let mut next = out.clone();
        let mut i = r;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Groups of size `1..=k` drawn from `0..n`: by size, then lexicographically.
pub fn groups_up_to(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=k.min(n)).flat_map(move |size| Combinations::new(n, size))
}

/// Rearranges `perm` into the next permutation in lexicographic order.
/// Returns `false` (leaving `perm` sorted ascending) after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(pivot) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        perm.reverse();
        return false;
    };
    let successor = perm.iter().rposition(|&v| v > perm[pivot]).unwrap();
    perm.swap(pivot, successor);
    perm[pivot + 1..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Odometer over `radices[0] x ... x radices[m-1]`, last digit fastest.
#[derive(Debug, Clone)]
pub struct MixedRadix {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Self {
        let current = radices.iter().all(|&r| r > 0).then(|| alloc::vec![0; radices.len()]);
        Self { radices, current }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.radices[i] {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}
